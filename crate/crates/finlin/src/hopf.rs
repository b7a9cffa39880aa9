//! Finite-dimensional Hopf algebras and the categorical Radford package:
//! rigid duals through the antipode, integrals and the modular function,
//! the distinguished group-like, the distinguished invertible object D as
//! the Nakayama image of the unit, the quadruple-dual theorem, the
//! Nakayama-versus-Serre comparison for the regular module category,
//! unimodularity and the symmetric-Frobenius criterion, and the adjoint
//! exchange for restriction along a Hopf subalgebra.

use crate::algebra::{Algebra, AlgebraMorphism};
use crate::error::FinlinError;
use crate::exact::{Field, Matrix};
use crate::frobenius;
use crate::functor::{eval_lex, eval_rex, LexRep, RexRep};
use crate::modrep::{module_iso, IsoOutcome, LeftModule, SearchConfig};
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct HopfAlgebra {
    algebra: Arc<Algebra>,
    comult: Matrix,       // (n*n) x n, column j = Delta(e_j), lexicographic
    counit: Matrix,       // 1 x n
    antipode: Matrix,     // n x n
    antipode_inv: Matrix, // n x n
    label: String,
}

/// Which side a rigid dual is taken on: the right dual twists by S, the
/// left dual by S^{-1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualSide {
    Right,
    Left,
}

impl HopfAlgebra {
    pub fn new(
        algebra: Arc<Algebra>,
        comult: Matrix,
        counit: Matrix,
        antipode: Matrix,
        label: impl Into<String>,
    ) -> Result<HopfAlgebra, FinlinError> {
        let n = algebra.dim();
        if comult.rows() != n * n || comult.cols() != n {
            return Err(FinlinError::DimensionMismatch("comultiplication tensor shape".into()));
        }
        if counit.rows() != 1 || counit.cols() != n {
            return Err(FinlinError::DimensionMismatch("counit shape".into()));
        }
        if antipode.rows() != n || antipode.cols() != n {
            return Err(FinlinError::DimensionMismatch("antipode shape".into()));
        }
        let antipode_inv = antipode
            .inverse()
            .ok_or_else(|| FinlinError::Semantic("antipode is not invertible".into()))?;
        let h = HopfAlgebra { algebra, comult, counit, antipode, antipode_inv, label: label.into() };
        let report = h.validate();
        if let Some(v) = report.first() {
            return Err(FinlinError::Semantic(format!(
                "Hopf algebra {:?} invalid: {v} ({} violations)",
                h.label,
                report.len()
            )));
        }
        Ok(h)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn comult(&self) -> &Matrix {
        &self.comult
    }

    pub fn counit(&self) -> &Matrix {
        &self.counit
    }

    pub fn antipode(&self) -> &Matrix {
        &self.antipode
    }

    pub fn antipode_inv(&self) -> &Matrix {
        &self.antipode_inv
    }

    /// All violated Hopf identities, named.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let n = self.dim();
        let field = self.field();
        let id = Matrix::identity(field, n);
        // coassociativity
        let lhs = self.comult.kronecker(&id).expect("field").mul(&self.comult).expect("dims");
        let rhs = id.kronecker(&self.comult).expect("field").mul(&self.comult).expect("dims");
        if lhs != rhs {
            out.push("coassociativity fails".to_string());
        }
        // counit laws
        let l = self.counit.kronecker(&id).expect("field").mul(&self.comult).expect("dims");
        let r = id.kronecker(&self.counit).expect("field").mul(&self.comult).expect("dims");
        if l != id {
            out.push("left counit law fails".to_string());
        }
        if r != id {
            out.push("right counit law fails".to_string());
        }
        // Delta and epsilon are algebra morphisms
        let unit = self.algebra.unit_vector();
        let delta_unit = self.comult.mul(&unit).expect("dims");
        if delta_unit != unit.kronecker(&unit).expect("field") {
            out.push("Delta(1) != 1 (x) 1".to_string());
        }
        let eps_unit = self.counit.mul(&unit).expect("dims");
        if !eps_unit.at(0, 0).is_one() {
            out.push("epsilon(1) != 1".to_string());
        }
        for i in 0..n {
            for j in 0..n {
                let prod = Matrix::col(field, self.algebra.structure_tensor()[i][j].clone());
                let d_prod = self.comult.mul(&prod).expect("dims");
                let di = self.comult.column(i);
                let dj = self.comult.column(j);
                let want = tensor_square_multiply(&self.algebra, &di, &dj);
                if d_prod != want {
                    out.push(format!("Delta not multiplicative at (e{i}, e{j})"));
                }
                let e_prod = self.counit.mul(&prod).expect("dims");
                let want = self.counit.at(0, i).mul(self.counit.at(0, j));
                if *e_prod.at(0, 0) != want {
                    out.push(format!("epsilon not multiplicative at (e{i}, e{j})"));
                }
            }
        }
        // antipode axioms: m (S (x) id) Delta = u eps = m (id (x) S) Delta
        let mult_map = multiplication_map(&self.algebra);
        let s_tensor_id = self.antipode.kronecker(&id).expect("field");
        let id_tensor_s = id.kronecker(&self.antipode).expect("field");
        let left = mult_map.mul(&s_tensor_id).expect("dims").mul(&self.comult).expect("dims");
        let right = mult_map.mul(&id_tensor_s).expect("dims").mul(&self.comult).expect("dims");
        let u_eps = unit.mul(&self.counit).expect("dims");
        if left != u_eps {
            out.push("antipode axiom m(S (x) id)Delta = u eps fails".to_string());
        }
        if right != u_eps {
            out.push("antipode axiom m(id (x) S)Delta = u eps fails".to_string());
        }
        out
    }

    /// S is an anti-homomorphism; a consequence of the axioms, checked
    /// independently.
    pub fn antipode_is_antihom(&self) -> bool {
        let n = self.dim();
        let field = self.field();
        for i in 0..n {
            for j in 0..n {
                let prod = Matrix::col(field, self.algebra.structure_tensor()[i][j].clone());
                let lhs = self.antipode.mul(&prod).expect("dims");
                let rhs = self
                    .algebra
                    .multiply(&self.antipode.column(j), &self.antipode.column(i));
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// The trivial module k_epsilon.
    pub fn trivial_module(&self) -> LeftModule {
        let field = self.field();
        let action = (0..self.dim())
            .map(|i| Matrix::from_fn(field, 1, 1, |_, _| self.counit.at(0, i).clone()))
            .collect();
        LeftModule::new(self.algebra.clone(), 1, action, "k_eps").expect("counit is a character")
    }

    /// The one-dimensional module on which h acts by the character chi.
    pub fn character_module(&self, chi: &Matrix, label: &str) -> Result<LeftModule, FinlinError> {
        let field = self.field();
        let action = (0..self.dim())
            .map(|i| Matrix::from_fn(field, 1, 1, |_, _| chi.at(0, i).clone()))
            .collect();
        LeftModule::new(self.algebra.clone(), 1, action, label)
    }

    /// Rigid dual of a module: the right dual acts through S, the left dual
    /// through S^{-1}. Both (co)evaluations are verified H-linear.
    pub fn rigid_dual(&self, m: &LeftModule, side: DualSide) -> Result<LeftModule, FinlinError> {
        let s = match side {
            DualSide::Right => &self.antipode,
            DualSide::Left => &self.antipode_inv,
        };
        let field = self.field();
        let n = self.dim();
        let action: Vec<Matrix> = (0..n)
            .map(|i| {
                let mut acted = Matrix::zero(field, m.dim(), m.dim());
                for k in 0..n {
                    if s.at(k, i).is_zero() {
                        continue;
                    }
                    acted = acted.add(&m.action(k).scale(s.at(k, i))).expect("shape");
                }
                acted.transpose()
            })
            .collect();
        let tag = match side {
            DualSide::Right => "^v",
            DualSide::Left => "v^",
        };
        let dual = LeftModule::new(self.algebra.clone(), m.dim(), action, format!("{}{}", m.label(), tag))?;
        self.verify_duality_maps(m, &dual, side)?;
        Ok(dual)
    }

    /// Twist of a module by an algebra endomorphism of H (e.g. S^2).
    pub fn twist_module(&self, m: &LeftModule, twist: &Matrix, label: &str) -> Result<LeftModule, FinlinError> {
        let field = self.field();
        let n = self.dim();
        let action: Vec<Matrix> = (0..n)
            .map(|i| {
                let mut acted = Matrix::zero(field, m.dim(), m.dim());
                for k in 0..n {
                    if twist.at(k, i).is_zero() {
                        continue;
                    }
                    acted = acted.add(&m.action(k).scale(twist.at(k, i))).expect("shape");
                }
                acted
            })
            .collect();
        LeftModule::new(self.algebra.clone(), m.dim(), action, label)
    }

    /// Tensor product of modules through the comultiplication.
    pub fn tensor_modules(&self, m: &LeftModule, n: &LeftModule) -> Result<LeftModule, FinlinError> {
        let field = self.field();
        let nn = self.dim();
        let dim = m.dim() * n.dim();
        let mut action = Vec::with_capacity(nn);
        for i in 0..nn {
            let mut mat = Matrix::zero(field, dim, dim);
            for j in 0..nn {
                for k in 0..nn {
                    let c = self.comult.at(j * nn + k, i);
                    if c.is_zero() {
                        continue;
                    }
                    let kron = m.action(j).kronecker(n.action(k))?;
                    mat = mat.add(&kron.scale(c))?;
                }
            }
            action.push(mat);
        }
        LeftModule::new(
            self.algebra.clone(),
            dim,
            action,
            format!("{}(x){}", m.label(), n.label()),
        )
    }

    fn verify_duality_maps(
        &self,
        m: &LeftModule,
        dual: &LeftModule,
        side: DualSide,
    ) -> Result<(), FinlinError> {
        let field = self.field();
        let d = m.dim();
        // Right dual: ev: m^v (x) m -> k and coev: k -> m (x) m^v.
        // Left dual: ev: m (x) v^m -> k and coev: k -> v^m (x) m.
        let (pair, copair) = match side {
            DualSide::Right => {
                (self.tensor_modules(dual, m)?, self.tensor_modules(m, dual)?)
            }
            DualSide::Left => {
                (self.tensor_modules(m, dual)?, self.tensor_modules(dual, m)?)
            }
        };
        let mut ev = Matrix::zero(field, 1, d * d);
        for i in 0..d {
            ev.set(0, i * d + i, field.one());
        }
        let mut coev = Matrix::zero(field, d * d, 1);
        for i in 0..d {
            coev.set(i * d + i, 0, field.one());
        }
        for i in 0..self.dim() {
            let eps = self.counit.at(0, i);
            if ev.mul(pair.action(i))? != ev.scale(eps) {
                return Err(FinlinError::Semantic(format!(
                    "evaluation not H-linear for {} ({side:?} dual)",
                    m.label()
                )));
            }
            if copair.action(i).mul(&coev)? != coev.scale(eps) {
                return Err(FinlinError::Semantic(format!(
                    "coevaluation not H-linear for {} ({side:?} dual)",
                    m.label()
                )));
            }
        }
        // vector-space zigzags
        let id = Matrix::identity(field, d);
        let z1 = id.kronecker(&ev)?.mul(&coev.kronecker(&id)?)?;
        let z2 = ev.kronecker(&id)?.mul(&id.kronecker(&coev)?)?;
        if !z1.is_identity() || !z2.is_identity() {
            return Err(FinlinError::Semantic("zigzag identities fail".into()));
        }
        Ok(())
    }
}

/// Multiplication of two elements of `H (x) H` given in lexicographic
/// coordinates.
fn tensor_square_multiply(a: &Algebra, u: &Matrix, v: &Matrix) -> Matrix {
    let n = a.dim();
    let field = a.field();
    let mut out = Matrix::zero(field, n * n, 1);
    for i1 in 0..n {
        for j1 in 0..n {
            let cu = u.at(i1 * n + j1, 0);
            if cu.is_zero() {
                continue;
            }
            for i2 in 0..n {
                for j2 in 0..n {
                    let cv = v.at(i2 * n + j2, 0);
                    if cv.is_zero() {
                        continue;
                    }
                    let c = cu.mul(cv);
                    for k1 in 0..n {
                        let s1 = a.structure_constant(i1, i2, k1);
                        if s1.is_zero() {
                            continue;
                        }
                        for k2 in 0..n {
                            let s2 = a.structure_constant(j1, j2, k2);
                            if s2.is_zero() {
                                continue;
                            }
                            let idx = k1 * n + k2;
                            let cur = out.at(idx, 0).add(&c.mul(s1).mul(s2));
                            out.set(idx, 0, cur);
                        }
                    }
                }
            }
        }
    }
    out
}

/// The multiplication map `H (x) H -> H` as a matrix.
fn multiplication_map(a: &Algebra) -> Matrix {
    let n = a.dim();
    Matrix::from_fn(a.field(), n, n * n, |k, ij| {
        a.structure_constant(ij / n, ij % n, k).clone()
    })
}

/// Integrals, modular function and distinguished group-like.
#[derive(Debug, Clone)]
pub struct ModularData {
    /// Left integral in H: `h L = eps(h) L`.
    pub left_integral: Matrix,
    /// Right integral functional on H: `(lambda (x) id) Delta = lambda(.) 1`.
    pub right_integral_functional: Matrix,
    /// Modular function: `L h = alpha(h) L`; an algebra character.
    pub modular_function: Matrix,
    /// Distinguished group-like of H: `(id (x) lambda) Delta = lambda(.) g`.
    pub distinguished_grouplike: Matrix,
}

pub fn modular_data(h: &HopfAlgebra) -> Result<ModularData, FinlinError> {
    let n = h.dim();
    let field = h.field();
    // left integral: (L_i - eps(e_i) I) x = 0 for all i
    let mut rows = Matrix::zero(field, 0, n);
    for i in 0..n {
        let block = h
            .algebra()
            .left_mult(i)
            .sub(&Matrix::identity(field, n).scale(h.counit().at(0, i)))?;
        rows = rows.vstack(&block)?;
    }
    let kernel = rows.kernel_basis();
    if kernel.len() != 1 {
        return Err(FinlinError::Semantic(format!(
            "left integral space has dimension {}, expected 1",
            kernel.len()
        )));
    }
    let lambda_elem = kernel[0].clone();
    // modular function: L e_i = alpha_i L
    let mut alpha = Matrix::zero(field, 1, n);
    let pivot = (0..n).find(|&r| !lambda_elem.at(r, 0).is_zero()).expect("nonzero integral");
    let pinv = lambda_elem.at(pivot, 0).inv().expect("nonzero");
    for i in 0..n {
        let moved = h.algebra().right_mult(i).mul(&lambda_elem)?;
        let a_i = moved.at(pivot, 0).mul(&pinv);
        if moved != lambda_elem.scale(&a_i) {
            return Err(FinlinError::Semantic(
                "integral is not an eigenvector of right multiplication".into(),
            ));
        }
        alpha.set(0, i, a_i);
    }
    // right integral functional: sum lambda(x_(1)) x_(2) = lambda(x) 1
    // unknowns lambda in H^v; for each basis x: rows over target H
    let unit = h.algebra().unit_vector();
    let mut sys = Matrix::zero(field, 0, n);
    for x in 0..n {
        let dx = h.comult().column(x);
        // row block: for each target coordinate t: sum_i dx[(i,t)] lambda_i - delta...
        let mut block = Matrix::zero(field, n, n);
        for t in 0..n {
            for i in 0..n {
                block.set(t, i, dx.at(i * n + t, 0).clone());
            }
            // subtract lambda(x) * unit[t]: lambda(x) = lambda_x
            let cur = block.at(t, x).sub(unit.at(t, 0));
            block.set(t, x, cur);
        }
        sys = sys.vstack(&block)?;
    }
    let lker = sys.kernel_basis();
    if lker.len() != 1 {
        return Err(FinlinError::Semantic(format!(
            "right integral functional space has dimension {}, expected 1",
            lker.len()
        )));
    }
    let lam = lker[0].transpose(); // 1 x n
    // distinguished group-like: (id (x) lambda) Delta(x) = lambda(x) g
    let mut g: Option<Matrix> = None;
    let mut vals = Vec::with_capacity(n);
    for x in 0..n {
        let dx = h.comult().column(x);
        let mut v = Matrix::zero(field, n, 1);
        for i in 0..n {
            for j in 0..n {
                let c = dx.at(i * n + j, 0).mul(lam.at(0, j));
                if !c.is_zero() {
                    let cur = v.at(i, 0).add(&c);
                    v.set(i, 0, cur);
                }
            }
        }
        vals.push(v);
    }
    for (x, v) in vals.iter().enumerate() {
        let lx = lam.at(0, x);
        if !lx.is_zero() {
            g = Some(v.scale(&lx.inv().expect("nonzero")));
            break;
        }
    }
    let g = g.ok_or_else(|| FinlinError::Semantic("right integral functional is zero".into()))?;
    for (x, v) in vals.iter().enumerate() {
        if *v != g.scale(lam.at(0, x)) {
            return Err(FinlinError::Semantic(
                "distinguished group-like relation fails".into(),
            ));
        }
    }
    let data = ModularData {
        left_integral: lambda_elem,
        right_integral_functional: lam,
        modular_function: alpha,
        distinguished_grouplike: g,
    };
    verify_modular_invariants(h, &data)?;
    Ok(data)
}

fn verify_modular_invariants(h: &HopfAlgebra, d: &ModularData) -> Result<(), FinlinError> {
    let n = h.dim();
    let field = h.field();
    // alpha is an algebra character
    let a = &d.modular_function;
    let unit = h.algebra().unit_vector();
    let a_unit = a.mul(&unit)?;
    if !a_unit.at(0, 0).is_one() {
        return Err(FinlinError::Semantic("modular function alpha(1) != 1".into()));
    }
    for i in 0..n {
        for j in 0..n {
            let prod = Matrix::col(field, h.algebra().structure_tensor()[i][j].clone());
            let lhs = a.mul(&prod)?;
            if *lhs.at(0, 0) != a.at(0, i).mul(a.at(0, j)) {
                return Err(FinlinError::Semantic("modular function is not multiplicative".into()));
            }
        }
    }
    // g is group-like, eps(g) = 1, g invertible
    let g = &d.distinguished_grouplike;
    let dg = h.comult().mul(g)?;
    if dg != g.kronecker(g)? {
        return Err(FinlinError::Semantic("distinguished element is not group-like".into()));
    }
    let eg = h.counit().mul(g)?;
    if !eg.at(0, 0).is_one() {
        return Err(FinlinError::Semantic("eps(g) != 1".into()));
    }
    if h.algebra().left_mult_by(g).inverse().is_none() {
        return Err(FinlinError::Semantic("distinguished group-like is not invertible".into()));
    }
    Ok(())
}

/// The distinguished invertible object `D = pihat(1) = Hom_H(H^v, k_eps)`,
/// with its character and the recorded alpha-orientation.
#[derive(Debug, Clone)]
pub struct DistinguishedObject {
    pub module: LeftModule,
    pub inverse: LeftModule,
    pub character: Matrix, // 1 x n
    pub matches_alpha: bool,
    pub matches_alpha_inverse: bool,
}

pub fn distinguished_object(h: &HopfAlgebra) -> Result<DistinguishedObject, FinlinError> {
    let pihat = LexRep::nakayama(h.algebra().clone());
    let ev = eval_lex(&pihat, &h.trivial_module())?;
    if ev.module.dim() != 1 {
        return Err(FinlinError::Semantic(format!(
            "pihat(1) has dimension {}, expected 1",
            ev.module.dim()
        )));
    }
    let field = h.field();
    let n = h.dim();
    let character =
        Matrix::from_fn(field, 1, n, |_, i| ev.module.action(i).at(0, 0).clone());
    let md = modular_data(h)?;
    let alpha = md.modular_function.clone();
    let alpha_inv = alpha.mul(&h.antipode().clone())?;
    let matches_alpha = character == alpha;
    let matches_alpha_inverse = character == alpha_inv;
    // D^{-1}: the character composed with S (convolution inverse)
    let inv_char = character.mul(h.antipode())?;
    let inverse = h.character_module(&inv_char, "D_inv")?;
    let module = h.character_module(&character, "D")?;
    // sanity: D (x) D^{-1} has character eps
    let prod = h.tensor_modules(&module, &inverse)?;
    for i in 0..n {
        if *prod.action(i).at(0, 0) != *h.counit().at(0, i) {
            return Err(FinlinError::Semantic("D (x) D^{-1} is not trivial".into()));
        }
    }
    Ok(DistinguishedObject { module, inverse, character, matches_alpha, matches_alpha_inverse })
}

/// Radford check: the Hopf-level S^4 formula on every basis element, and
/// the categorical quadruple-dual isomorphism on the given test modules.
#[derive(Debug)]
pub struct RadfordReport {
    pub hopf_level_ok: bool,
    pub hopf_failures: Vec<usize>,
    pub categorical: Vec<(String, IsoOutcome<LeftModule>)>,
}

impl RadfordReport {
    pub fn all_witnessed(&self) -> bool {
        self.hopf_level_ok && self.categorical.iter().all(|(_, o)| o.is_witnessed())
    }
}

pub fn radford_check(
    h: &HopfAlgebra,
    test_modules: &[LeftModule],
    cfg: &SearchConfig,
) -> Result<RadfordReport, FinlinError> {
    let md = modular_data(h)?;
    let n = h.dim();
    let field = h.field();
    let alpha = &md.modular_function;
    let alpha_inv = alpha.mul(h.antipode())?;
    let g = &md.distinguished_grouplike;
    let g_inv = h.antipode().mul(g)?; // S(g) = g^{-1} for group-likes
    let s2 = h.antipode().mul(h.antipode())?;
    let s4 = s2.mul(&s2)?;
    let mut failures = Vec::new();
    for x in 0..n {
        // w = alpha -> x <- alpha^{-1} = sum alpha_inv(x_(1)) x_(2) alpha(x_(3))
        let dx = h.comult().column(x);
        // first apply (alpha_inv (x) id): y = sum alpha_inv(x1) x2
        let mut y = Matrix::zero(field, n, 1);
        for i in 0..n {
            for j in 0..n {
                let c = dx.at(i * n + j, 0).mul(alpha_inv.at(0, i));
                if !c.is_zero() {
                    let cur = y.at(j, 0).add(&c);
                    y.set(j, 0, cur);
                }
            }
        }
        // then (id (x) alpha) on Delta(y)
        let dy = h.comult().mul(&y)?;
        let mut w = Matrix::zero(field, n, 1);
        for i in 0..n {
            for j in 0..n {
                let c = dy.at(i * n + j, 0).mul(alpha.at(0, j));
                if !c.is_zero() {
                    let cur = w.at(i, 0).add(&c);
                    w.set(i, 0, cur);
                }
            }
        }
        let conj = h.algebra().multiply(g, &h.algebra().multiply(&w, &g_inv));
        if conj != s4.column(x) {
            failures.push(x);
        }
    }
    let dist = distinguished_object(h)?;
    let mut categorical = Vec::new();
    for m in test_modules {
        let mut quad = m.clone();
        for _ in 0..4 {
            quad = h.rigid_dual(&quad, DualSide::Right)?;
        }
        let conj = h.tensor_modules(&dist.module, &h.tensor_modules(m, &dist.inverse)?)?;
        let out = module_iso(&quad, &conj, cfg)?;
        categorical.push((m.label().to_string(), out));
    }
    Ok(RadfordReport { hopf_level_ok: failures.is_empty(), hopf_failures: failures, categorical })
}

/// Nakayama versus relative Serre for the regular module category:
/// `pihat(m) = D (x) vv^m` and `pitilde(m) = Dt (x) m^vv`, with
/// `D (x) vv^Dt` trivial.
#[derive(Debug)]
pub struct SerreReport {
    pub pihat_items: Vec<(String, IsoOutcome<LeftModule>)>,
    pub pitilde_items: Vec<(String, IsoOutcome<LeftModule>)>,
    pub d_inverse_ok: bool,
}

impl SerreReport {
    pub fn all_witnessed(&self) -> bool {
        self.d_inverse_ok
            && self.pihat_items.iter().all(|(_, o)| o.is_witnessed())
            && self.pitilde_items.iter().all(|(_, o)| o.is_witnessed())
    }
}

pub fn nakayama_vs_serre_check(
    h: &HopfAlgebra,
    test_modules: &[LeftModule],
    cfg: &SearchConfig,
) -> Result<SerreReport, FinlinError> {
    let dist = distinguished_object(h)?;
    let (pitilde, pihat) = crate::functor::nakayama_reps(h.algebra());
    let s2 = h.antipode().mul(h.antipode())?;
    let s2_inv = h.antipode_inv().mul(h.antipode_inv())?;
    // Dt := pitilde(1)
    let dt_ev = eval_rex(&pitilde, &h.trivial_module())?;
    if dt_ev.module.dim() != 1 {
        return Err(FinlinError::Semantic("pitilde(1) is not one-dimensional".into()));
    }
    let dt_char = Matrix::from_fn(h.field(), 1, h.dim(), |_, i| {
        dt_ev.module.action(i).at(0, 0).clone()
    });
    let dt = h.character_module(&dt_char, "Dt")?;
    // D (x) vv^Dt trivial; for a character, the S^{-2} twist is itself
    let dt_twist = h.twist_module(&dt, &s2_inv, "vv^Dt")?;
    let prod = h.tensor_modules(&dist.module, &dt_twist)?;
    let d_inverse_ok = (0..h.dim()).all(|i| *prod.action(i).at(0, 0) == *h.counit().at(0, i));
    let mut pihat_items = Vec::new();
    let mut pitilde_items = Vec::new();
    for m in test_modules {
        let hat = eval_lex(&pihat, m)?.module;
        let left_twist = h.twist_module(m, &s2_inv, &format!("vv^{}", m.label()))?;
        let want = h.tensor_modules(&dist.module, &left_twist)?;
        pihat_items.push((m.label().to_string(), module_iso(&hat, &want, cfg)?));
        let tilde = eval_rex(&pitilde, m)?.module;
        let right_twist = h.twist_module(m, &s2, &format!("{}^vv", m.label()))?;
        let want = h.tensor_modules(&dt, &right_twist)?;
        pitilde_items.push((m.label().to_string(), module_iso(&tilde, &want, cfg)?));
    }
    Ok(SerreReport { pihat_items, pitilde_items, d_inverse_ok })
}

/// Unimodularity and the symmetric-Frobenius criterion.
#[derive(Debug)]
pub struct UnimodularReport {
    pub unimodular: bool,
    pub s2_inner: Option<Matrix>,
    pub predicted_symmetric: bool,
    pub detected_symmetric: bool,
    pub inconclusive: Vec<String>,
}

impl UnimodularReport {
    pub fn consistent(&self) -> bool {
        self.predicted_symmetric == self.detected_symmetric
    }
}

pub fn unimodular_frobenius_report(
    h: &HopfAlgebra,
    cfg: &SearchConfig,
) -> Result<UnimodularReport, FinlinError> {
    let md = modular_data(h)?;
    let unimodular = md.modular_function == h.counit().clone();
    // S^2 inner: u invertible with S^2(x) u = u x for all x
    let field = h.field();
    let n = h.dim();
    let s2 = h.antipode().mul(h.antipode())?;
    let mut rows = Matrix::zero(field, 0, n);
    for i in 0..n {
        let lhs = h.algebra().left_mult_by(&s2.column(i));
        let block = lhs.sub(h.algebra().right_mult(i))?;
        rows = rows.vstack(&block)?;
    }
    let kernel = rows.kernel_basis();
    let mut inconclusive = Vec::new();
    let mut s2_inner = None;
    if !kernel.is_empty() {
        // search kernel span for an invertible element; grid over small sets
        let k = kernel.len();
        let pts: u64 = match field {
            Field::Rationals => n as u64 + 1,
            Field::Prime(p) => p,
        };
        let total = (0..k).try_fold(1u64, |acc, _| acc.checked_mul(pts));
        if total.map(|t| t <= cfg.budget).unwrap_or(false) {
            let mut idx = vec![0u64; k];
            'outer: loop {
                if idx.iter().any(|&c| c != 0) {
                    let mut u = Matrix::zero(field, n, 1);
                    for (c, b) in idx.iter().zip(&kernel) {
                        if *c != 0 {
                            u = u.add(&b.scale(&field.from_i64(*c as i64)))?;
                        }
                    }
                    if h.algebra().left_mult_by(&u).inverse().is_some() {
                        s2_inner = Some(u);
                        break 'outer;
                    }
                }
                let mut pos = 0;
                loop {
                    if pos == k {
                        break 'outer;
                    }
                    idx[pos] += 1;
                    if idx[pos] < pts {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
            }
        } else {
            inconclusive.push("S^2-inner search space too large for the budget".into());
        }
    }
    let predicted = unimodular && s2_inner.is_some();
    let classification = frobenius::classify(h.algebra(), cfg)?;
    inconclusive.extend(classification.inconclusive.clone());
    Ok(UnimodularReport {
        unimodular,
        s2_inner,
        predicted_symmetric: predicted,
        detected_symmetric: classification.is_symmetric(),
        inconclusive,
    })
}

/// Checks that an algebra map K -> H is a morphism of Hopf algebras.
pub fn verify_hopf_morphism(
    sub: &HopfAlgebra,
    big: &HopfAlgebra,
    embedding: &AlgebraMorphism,
) -> Result<(), FinlinError> {
    embedding.verify()?;
    let iota = &embedding.matrix;
    // Delta_H o iota = (iota (x) iota) o Delta_K
    let lhs = big.comult().mul(iota)?;
    let rhs = iota.kronecker(iota)?.mul(sub.comult())?;
    if lhs != rhs {
        return Err(FinlinError::Semantic("embedding does not intertwine comultiplications".into()));
    }
    if big.counit().mul(iota)? != *sub.counit() {
        return Err(FinlinError::Semantic("embedding does not intertwine counits".into()));
    }
    if big.antipode().mul(iota)? != iota.mul(sub.antipode())? {
        return Err(FinlinError::Semantic("embedding does not intertwine antipodes".into()));
    }
    Ok(())
}

/// Adjoint-exchange check for restriction along a Hopf subalgebra:
/// coinduction(m) = D_H^{-1} (x) induction(D_K (x) m) for K-modules m.
#[derive(Debug)]
pub struct RestrictionReport {
    pub items: Vec<(String, IsoOutcome<LeftModule>)>,
}

impl RestrictionReport {
    pub fn all_witnessed(&self) -> bool {
        self.items.iter().all(|(_, o)| o.is_witnessed())
    }
}

pub fn restriction_adjoint_check(
    sub: &HopfAlgebra,
    big: &HopfAlgebra,
    embedding: &AlgebraMorphism,
    test_modules: &[LeftModule],
    cfg: &SearchConfig,
) -> Result<RestrictionReport, FinlinError> {
    verify_hopf_morphism(sub, big, embedding)?;
    let k_alg = sub.algebra().clone();
    let h_alg = big.algebra().clone();
    let field = big.field();
    let nh = h_alg.dim();
    // H as a K-module through the embedding must be projective
    let k_action: Vec<Matrix> =
        (0..k_alg.dim()).map(|i| h_alg.left_mult_by(&embedding.matrix.column(i))).collect();
    let h_as_k = LeftModule::new(k_alg.clone(), nh, k_action.clone(), "H|K")?;
    if !frobenius::projectivity(&h_as_k)?.projective {
        return Err(FinlinError::Precondition("H is not projective over the image of K".into()));
    }
    // induction: H as an H-K-bimodule
    let h_left: Vec<Matrix> = (0..nh).map(|i| h_alg.left_mult(i).clone()).collect();
    let k_right: Vec<Matrix> =
        (0..k_alg.dim()).map(|i| h_alg.right_mult_by(&embedding.matrix.column(i))).collect();
    let ind_bim = crate::modrep::Bimodule::new(
        h_alg.clone(),
        k_alg.clone(),
        nh,
        h_left.clone(),
        k_right,
        "H_HK",
    )?;
    let induction = RexRep::new(ind_bim);
    // coinduction: H as a K-H-bimodule
    let h_right: Vec<Matrix> = (0..nh).map(|i| h_alg.right_mult(i).clone()).collect();
    let coind_bim = crate::modrep::Bimodule::new(
        k_alg.clone(),
        h_alg.clone(),
        nh,
        k_action,
        h_right,
        "H_KH",
    )?;
    let coinduction = LexRep::new(coind_bim);
    let d_k = distinguished_object(sub)?;
    let d_h = distinguished_object(big)?;
    let _ = field;
    let mut items = Vec::new();
    for m in test_modules {
        let lhs = eval_lex(&coinduction, m)?.module;
        let shifted = sub.tensor_modules(&d_k.module, m)?;
        let ind = eval_rex(&induction, &shifted)?.module;
        let rhs = big.tensor_modules(&d_h.inverse, &ind)?;
        items.push((m.label().to_string(), module_iso(&lhs, &rhs, cfg)?));
    }
    Ok(RestrictionReport { items })
}

/// Standard Hopf algebra constructors for the corpus.
pub mod standard {
    use super::*;
    use crate::algebra::standard::group_algebra;

    /// Group algebra with `Delta g = g (x) g`, `S g = g^{-1}`.
    pub fn group_hopf(field: Field, table: &[Vec<usize>], label: &str) -> Result<HopfAlgebra, FinlinError> {
        let a = Arc::new(group_algebra(field, table)?.with_label(label));
        let n = a.dim();
        let mut comult = Matrix::zero(field, n * n, n);
        for i in 0..n {
            comult.set(i * n + i, i, field.one());
        }
        let counit = Matrix::from_fn(field, 1, n, |_, _| field.one());
        let mut antipode = Matrix::zero(field, n, n);
        for i in 0..n {
            let inv = (0..n).find(|&j| table[i][j] == 0).ok_or_else(|| {
                FinlinError::Semantic(format!("group element {i} has no inverse"))
            })?;
            antipode.set(inv, i, field.one());
        }
        HopfAlgebra::new(a, comult, counit, antipode, label)
    }

    /// The Taft algebra T_n(omega): generators g, x with g^n = 1, x^n = 0,
    /// x g = omega g x; `Delta g = g (x) g`, `Delta x = x (x) 1 + g (x) x`,
    /// `S g = g^{-1}`, `S x = -g^{-1} x`. Basis `g^i x^j` at index `i*n+j`.
    /// Needs omega a primitive n-th root of unity; n = 2, omega = -1 is the
    /// Sweedler algebra.
    pub fn taft(field: Field, n: usize, omega: i64, label: &str) -> Result<HopfAlgebra, FinlinError> {
        assert!(n >= 2);
        let dim = n * n;
        let om = field.from_i64(omega);
        // check omega is a primitive n-th root of unity
        let mut p = field.one();
        for k in 1..=n {
            p = p.mul(&om);
            if k < n && p.is_one() {
                return Err(FinlinError::Semantic(format!("omega^{k} = 1, not primitive")));
            }
        }
        if !p.is_one() {
            return Err(FinlinError::Semantic("omega is not an n-th root of unity".into()));
        }
        let zero = field.zero();
        let mut mult = vec![vec![vec![zero; dim]; dim]; dim];
        let mut om_pows = vec![field.one()];
        for _ in 1..(n * n + 1) {
            let last = om_pows.last().unwrap().clone();
            om_pows.push(last.mul(&om));
        }
        for i1 in 0..n {
            for j1 in 0..n {
                for i2 in 0..n {
                    for j2 in 0..n {
                        if j1 + j2 >= n {
                            continue; // x^n = 0
                        }
                        // (g^i1 x^j1)(g^i2 x^j2) = omega^{j1*i2} g^{i1+i2} x^{j1+j2}
                        let coeff = om_pows[(j1 * i2) % n].clone();
                        mult[i1 * n + j1][i2 * n + j2][((i1 + i2) % n) * n + (j1 + j2)] = coeff;
                    }
                }
            }
        }
        let mut unit = vec![field.zero(); dim];
        unit[0] = field.one();
        let a = Arc::new(Algebra::new(field, dim, mult, unit, label)?);
        // comultiplication: Delta(g^i x^j) = (g (x) g)^i (x (x) 1 + g (x) x)^j
        // computed by multiplying in H (x) H
        let mut comult = Matrix::zero(field, dim * dim, dim);
        let tensor_unit = {
            let mut v = Matrix::zero(field, dim * dim, 1);
            v.set(0, 0, field.one());
            v
        };
        let dg = {
            // g (x) g at index (g, g) = (1*n+0, 1*n+0)
            let mut v = Matrix::zero(field, dim * dim, 1);
            v.set(n * dim + n, 0, field.one());
            v
        };
        let dxv = {
            // x (x) 1 + g (x) x: x = index 1, g = index n
            let mut v = Matrix::zero(field, dim * dim, 1);
            v.set(dim, 0, field.one()); // x (x) 1 at (1, 0)
            v.set(n * dim + 1, 0, field.one()); // g (x) x at (n, 1)
            v
        };
        for i in 0..n {
            for j in 0..n {
                let mut acc = tensor_unit.clone();
                for _ in 0..i {
                    acc = tensor_square_multiply(&a, &acc, &dg);
                }
                for _ in 0..j {
                    acc = tensor_square_multiply(&a, &acc, &dxv);
                }
                for r in 0..dim * dim {
                    comult.set(r, i * n + j, acc.at(r, 0).clone());
                }
            }
        }
        let counit = Matrix::from_fn(field, 1, dim, |_, c| {
            if c % n == 0 {
                field.one()
            } else {
                field.zero()
            }
        });
        // antipode: S(g^i x^j) = S(x)^j S(g)^i with S(g) = g^{n-1},
        // S(x) = -g^{n-1} x; computed by multiplying in H
        let mut antipode = Matrix::zero(field, dim, dim);
        let sg = {
            let mut v = Matrix::zero(field, dim, 1);
            v.set((n - 1) * n, 0, field.one());
            v
        };
        let sx = {
            let mut v = Matrix::zero(field, dim, 1);
            v.set((n - 1) * n + 1, 0, field.one().neg());
            v
        };
        for i in 0..n {
            for j in 0..n {
                let mut acc = a.unit_vector();
                for _ in 0..j {
                    acc = a.multiply(&acc, &sx);
                }
                for _ in 0..i {
                    acc = a.multiply(&acc, &sg);
                }
                for r in 0..dim {
                    antipode.set(r, i * n + j, acc.at(r, 0).clone());
                }
            }
        }
        HopfAlgebra::new(a, comult, counit, antipode, label)
    }

    /// Sweedler's 4-dimensional Hopf algebra.
    pub fn sweedler(field: Field) -> Result<HopfAlgebra, FinlinError> {
        taft(field, 2, -1, "H4")
    }
}

#[cfg(test)]
mod tests {
    use super::standard::*;
    use super::*;
    use crate::algebra::standard::cyclic_table;

    fn q() -> Field {
        Field::Rationals
    }

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    fn kc2() -> HopfAlgebra {
        group_hopf(q(), &cyclic_table(2), "kC2").unwrap()
    }

    fn h4() -> HopfAlgebra {
        sweedler(q()).unwrap()
    }

    fn t3() -> HopfAlgebra {
        taft(Field::Prime(7), 3, 2, "T3").unwrap()
    }

    fn sign_module(h: &HopfAlgebra) -> LeftModule {
        // kC2 sign: g -> -1
        let f = h.field();
        let chi = Matrix::from_fn(f, 1, 2, |_, i| if i == 0 { f.one() } else { f.from_i64(-1) });
        h.character_module(&chi, "sign").unwrap()
    }

    #[test]
    fn corpus_hopf_algebras_validate() {
        for h in [kc2(), group_hopf(q(), &cyclic_table(3), "kC3").unwrap(), h4(), t3()] {
            assert!(h.validate().is_empty(), "{}", h.label());
            assert!(h.antipode_is_antihom(), "{}", h.label());
        }
    }

    #[test]
    fn sweedler_antipode_has_order_4() {
        let h = h4();
        let s2 = h.antipode().mul(h.antipode()).unwrap();
        assert!(!s2.is_identity());
        assert!(s2.mul(&s2).unwrap().is_identity());
    }

    #[test]
    fn modular_data_kc2() {
        let h = kc2();
        let md = modular_data(&h).unwrap();
        // L proportional to 1 + g
        let l = &md.left_integral;
        assert_eq!(l.at(0, 0), l.at(1, 0));
        assert!(!l.at(0, 0).is_zero());
        assert_eq!(md.modular_function, h.counit().clone());
        // g = 1
        assert_eq!(md.distinguished_grouplike, h.algebra().unit_vector());
    }

    #[test]
    fn modular_data_sweedler() {
        let h = h4();
        let md = modular_data(&h).unwrap();
        // basis 1, x, g, gx (g^i x^j at i*2+j): Lambda prop to x + gx
        let l = &md.left_integral;
        assert!(l.at(0, 0).is_zero() && l.at(2, 0).is_zero());
        assert_eq!(l.at(1, 0), l.at(3, 0));
        // alpha(g) = -1, alpha(x) = 0
        let f = q();
        assert_eq!(*md.modular_function.at(0, 2), f.from_i64(-1));
        assert!(md.modular_function.at(0, 1).is_zero());
        assert!(md.modular_function.at(0, 0).is_one());
    }

    #[test]
    fn taft_modular_function_has_order_3() {
        let h = t3();
        let md = modular_data(&h).unwrap();
        let f = Field::Prime(7);
        // alpha(g) is a primitive cube root of unity
        let ag = md.modular_function.at(0, 3).clone(); // g at index 1*3+0
        assert!(!ag.is_one());
        assert!(ag.mul(&ag).mul(&ag).is_one());
        let _ = f;
    }

    #[test]
    fn rigid_duals_and_double_dual_twist() {
        let h = h4();
        let reg = LeftModule::regular(h.algebra().clone());
        let dd = h.rigid_dual(&h.rigid_dual(&reg, DualSide::Right).unwrap(), DualSide::Right).unwrap();
        let s2 = h.antipode().mul(h.antipode()).unwrap();
        let twisted = h.twist_module(&reg, &s2, "reg_s2").unwrap();
        assert_eq!(dd.actions(), twisted.actions(), "double dual is the S^2 twist entrywise");
        // kC2 sign module is self-dual
        let h2 = kc2();
        let sgn = sign_module(&h2);
        let dual = h2.rigid_dual(&sgn, DualSide::Right).unwrap();
        assert_eq!(dual.actions(), sgn.actions());
    }

    #[test]
    fn tensor_with_trivial_and_duality_homs() {
        let h = kc2();
        let sgn = sign_module(&h);
        let triv = h.trivial_module();
        let t = h.tensor_modules(&sgn, &triv).unwrap();
        assert_eq!(t.actions(), sgn.actions());
        let ss = h.tensor_modules(&sgn, &sgn).unwrap();
        assert_eq!(ss.actions(), triv.actions(), "sign (x) sign = trivial");
        // dim Hom(a (x) m, m') = dim Hom(m, v^a (x) m')
        let a = LeftModule::regular(h.algebra().clone());
        let lhs = crate::modrep::hom_basis(&h.tensor_modules(&a, &sgn).unwrap(), &triv).unwrap();
        let va = h.rigid_dual(&a, DualSide::Left).unwrap();
        let rhs = crate::modrep::hom_basis(&sgn, &h.tensor_modules(&va, &triv).unwrap()).unwrap();
        assert_eq!(lhs.dim(), rhs.dim());
        // right-side analogue: dim Hom(m (x) a, m') = dim Hom(m, m' (x) a^v)
        let lhs = crate::modrep::hom_basis(&h.tensor_modules(&sgn, &a).unwrap(), &triv).unwrap();
        let av = h.rigid_dual(&a, DualSide::Right).unwrap();
        let rhs = crate::modrep::hom_basis(&sgn, &h.tensor_modules(&triv, &av).unwrap()).unwrap();
        assert_eq!(lhs.dim(), rhs.dim());
    }

    #[test]
    fn distinguished_objects() {
        let h = kc2();
        let d = distinguished_object(&h).unwrap();
        assert_eq!(d.character, h.counit().clone(), "kC2 is unimodular: D trivial");
        let h = h4();
        let d = distinguished_object(&h).unwrap();
        // D is the sign module: g acts by -1, x by 0
        assert_eq!(*d.character.at(0, 2), q().from_i64(-1));
        assert!(d.character.at(0, 1).is_zero());
        assert!(d.matches_alpha || d.matches_alpha_inverse);
    }

    #[test]
    fn radford_kc2_trivial() {
        let h = kc2();
        let mods = vec![h.trivial_module(), sign_module(&h), LeftModule::regular(h.algebra().clone())];
        let r = radford_check(&h, &mods, &cfg()).unwrap();
        assert!(r.all_witnessed());
    }

    #[test]
    fn radford_sweedler() {
        let h = h4();
        let f = q();
        let sgn_chi = Matrix::from_fn(f, 1, 4, |_, i| match i {
            0 => f.one(),
            2 => f.from_i64(-1),
            _ => f.zero(),
        });
        let mods = vec![
            h.trivial_module(),
            h.character_module(&sgn_chi, "sign").unwrap(),
            LeftModule::regular(h.algebra().clone()),
        ];
        let r = radford_check(&h, &mods, &cfg()).unwrap();
        assert!(r.hopf_level_ok, "failures: {:?}", r.hopf_failures);
        assert!(r.all_witnessed());
    }

    #[test]
    fn radford_taft_s4_nontrivial() {
        let h = t3();
        let s2 = h.antipode().mul(h.antipode()).unwrap();
        let s4 = s2.mul(&s2).unwrap();
        assert!(!s4.is_identity(), "Taft S^4 is conjugation by the order-3 group-like");
        let mods = vec![h.trivial_module(), LeftModule::regular(h.algebra().clone())];
        let r = radford_check(&h, &mods, &cfg()).unwrap();
        assert!(r.hopf_level_ok, "failures: {:?}", r.hopf_failures);
        assert!(r.all_witnessed());
    }

    #[test]
    fn serre_comparison() {
        for h in [kc2(), h4()] {
            let mods = vec![h.trivial_module(), LeftModule::regular(h.algebra().clone())];
            let r = nakayama_vs_serre_check(&h, &mods, &cfg()).unwrap();
            assert!(r.all_witnessed(), "{}", h.label());
        }
    }

    #[test]
    fn unimodular_reports() {
        let r = unimodular_frobenius_report(&kc2(), &cfg()).unwrap();
        assert!(r.unimodular && r.s2_inner.is_some() && r.predicted_symmetric && r.detected_symmetric);
        let r = unimodular_frobenius_report(&h4(), &cfg()).unwrap();
        assert!(!r.unimodular);
        assert!(r.s2_inner.is_some(), "S^2 is conjugation by g");
        assert!(!r.predicted_symmetric && !r.detected_symmetric && r.consistent());
    }

    #[test]
    fn restriction_kc2_in_sweedler() {
        let big = h4();
        let sub = kc2();
        let f = q();
        // embedding g -> g: basis of kC2 is (1, g); of H4 is (1, x, g, gx)
        let mut m = Matrix::zero(f, 4, 2);
        m.set(0, 0, f.one());
        m.set(2, 1, f.one());
        let emb = AlgebraMorphism::new(sub.algebra().clone(), big.algebra().clone(), m).unwrap();
        let mods = vec![sub.trivial_module(), sign_module(&sub), LeftModule::regular(sub.algebra().clone())];
        let r = restriction_adjoint_check(&sub, &big, &emb, &mods, &cfg()).unwrap();
        assert!(r.all_witnessed());
    }

    #[test]
    fn restriction_identity_embedding() {
        let h = kc2();
        let emb = AlgebraMorphism::new(
            h.algebra().clone(),
            h.algebra().clone(),
            Matrix::identity(q(), 2),
        )
        .unwrap();
        let mods = vec![h.trivial_module(), sign_module(&h)];
        let r = restriction_adjoint_check(&h, &h, &emb, &mods, &cfg()).unwrap();
        assert!(r.all_witnessed());
    }
}
