//! Projectivity and injectivity tests, the self-injective / Frobenius /
//! symmetric-Frobenius classification, Frobenius forms, and the Nakayama
//! automorphism with its twisted-bimodule verification.

use crate::algebra::{Algebra, AlgebraMorphism};
use crate::error::FinlinError;
use crate::exact::{solve_linear, Matrix};
use crate::modrep::{
    module_iso, Bimodule, IsoOutcome, LeftModule, Morphism, RightModule, SearchConfig,
};
use std::sync::Arc;

/// Result of the projectivity test: a section of the free cover, when one
/// exists.
#[derive(Debug, Clone)]
pub struct Projectivity {
    pub projective: bool,
    pub section: Option<Morphism<LeftModule>>,
}

/// Tests projectivity of a left module by building the free cover
/// `A^{dim m} -> m` (the i-th free generator goes to the i-th basis vector)
/// and solving for a module-morphism section.
pub fn projectivity(m: &LeftModule) -> Result<Projectivity, FinlinError> {
    let a = m.algebra().clone();
    let d = m.dim();
    if d == 0 {
        let zero = LeftModule::new(a.clone(), 0, vec![Matrix::zero(m.field(), 0, 0); a.dim()], "0")?;
        let section = Morphism::new(zero.clone(), free_module(&a, 0), Matrix::zero(m.field(), 0, 0))?;
        return Ok(Projectivity { projective: true, section: Some(section) });
    }
    let free = free_module(&a, d);
    // cover: free -> m, (a_1, ..., a_d) -> sum rho(a_i) x_i.
    // column (i-th summand, basis e_j of A) maps to rho(e_j) x_i.
    let field = m.field();
    let n = a.dim();
    let mut cover = Matrix::zero(field, d, d * n);
    for i in 0..d {
        for j in 0..n {
            for r in 0..d {
                cover.set(r, i * n + j, m.action(j).at(r, i).clone());
            }
        }
    }
    // section s: m -> free with cover s = id and s an A-module map.
    // unknowns: vec(s), s is (d*n) x d.
    let rows_dim = d * n;
    let id_free = Matrix::identity(field, rows_dim);
    let id_m = Matrix::identity(field, d);
    let mut system: Option<Matrix> = None;
    let mut rhs: Option<Matrix> = None;
    // intertwining for generators: s rho_m(g) - rho_free(g) s = 0
    for &g in a.generator_indices() {
        let block = id_free
            .kronecker(&m.action(g).transpose())
            .expect("field")
            .sub(&free.action(g).kronecker(&id_m).expect("field"))
            .expect("shape");
        let zero = Matrix::zero(field, block.rows(), 1);
        system = Some(match system {
            None => block,
            Some(s) => s.vstack(&block).expect("cols"),
        });
        rhs = Some(match rhs {
            None => zero,
            Some(r) => r.vstack(&zero).expect("cols"),
        });
    }
    // cover * s = id: vec(cover * s) = (cover (x) I_d) vec(s)
    let cover_block = cover.kronecker(&id_m).expect("field");
    let id_vec = Matrix::identity(field, d).vectorize();
    let system = match system {
        None => cover_block,
        Some(s) => s.vstack(&cover_block).expect("cols"),
    };
    let rhs = match rhs {
        None => id_vec,
        Some(r) => r.vstack(&id_vec).expect("cols"),
    };
    let sol = solve_linear(&system, &rhs)?;
    match sol.particular {
        Some(v) => {
            let s = Matrix::from_vec(field, rows_dim, d, &v);
            let section = Morphism::new(m.clone(), free, s)?;
            Ok(Projectivity { projective: true, section: Some(section) })
        }
        None => Ok(Projectivity { projective: false, section: None }),
    }
}

/// Free left module `A^k` (block-diagonal regular actions).
pub fn free_module(a: &Arc<Algebra>, k: usize) -> LeftModule {
    let mut m = LeftModule::new(
        a.clone(),
        0,
        vec![Matrix::zero(a.field(), 0, 0); a.dim()],
        format!("{}^0", a.label()),
    )
    .expect("zero module");
    for _ in 0..k {
        m = m.direct_sum(&LeftModule::regular(a.clone())).expect("same algebra");
    }
    m.with_label(format!("{}^{k}", a.label()))
}

/// Injectivity via duality: m is injective iff its dual right module is
/// projective, tested on the opposite algebra.
pub fn injectivity(m: &LeftModule) -> Result<bool, FinlinError> {
    let dual = m.dual();
    Ok(right_projectivity(&dual)?.projective)
}

/// Projectivity of a right module: same matrices read as a left module over
/// the opposite algebra.
pub fn right_projectivity(m: &RightModule) -> Result<Projectivity, FinlinError> {
    let aop = Arc::new(m.algebra().opposite());
    let as_left = LeftModule::new(aop, m.dim(), m.actions().to_vec(), m.label().to_string())?;
    projectivity(&as_left)
}

/// The classification record. Invariants: a symmetric witness implies a
/// Frobenius form implies self-injectivity, and the Nakayama automorphism is
/// present exactly when a form is.
#[derive(Debug, Clone)]
pub struct FrobeniusClassification {
    pub self_injective: bool,
    pub frobenius_form: Option<Morphism<LeftModule>>,
    pub symmetric_witness: Option<Morphism<Bimodule>>,
    pub nakayama_automorphism: Option<AlgebraMorphism>,
    pub inconclusive: Vec<String>,
}

impl FrobeniusClassification {
    pub fn is_frobenius(&self) -> bool {
        self.frobenius_form.is_some()
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric_witness.is_some()
    }
}

/// The co-regular left module `A^v` ( (a.f)(x) = f(x a) ).
pub fn coregular_left_module(a: &Arc<Algebra>) -> LeftModule {
    Bimodule::coregular(a.clone()).as_left_module().with_label(format!("{}^v", a.label()))
}

/// Classifies an algebra: self-injectivity, Frobenius form, symmetric
/// Frobenius witness, Nakayama automorphism. Searches are seeded; genuinely
/// exhausted searches are reported in `inconclusive` rather than guessed.
pub fn classify(a: &Arc<Algebra>, cfg: &SearchConfig) -> Result<FrobeniusClassification, FinlinError> {
    let mut inconclusive = Vec::new();
    let self_injective = injectivity(&LeftModule::regular(a.clone()))?;
    let regular = LeftModule::regular(a.clone());
    let coreg = coregular_left_module(a);
    let frobenius_form = match module_iso(&regular, &coreg, cfg)? {
        IsoOutcome::Witnessed { forward, .. } => Some(forward),
        IsoOutcome::Refuted(_) => None,
        IsoOutcome::Inconclusive(why) => {
            inconclusive.push(format!("frobenius form search: {why}"));
            None
        }
    };
    let symmetric_witness = match module_iso(&Bimodule::regular(a.clone()), &Bimodule::coregular(a.clone()), cfg)? {
        IsoOutcome::Witnessed { forward, .. } => Some(forward),
        IsoOutcome::Refuted(_) => None,
        IsoOutcome::Inconclusive(why) => {
            inconclusive.push(format!("symmetric witness search: {why}"));
            None
        }
    };
    // a bimodule witness is in particular a left-module isomorphism, so a
    // symmetric witness guarantees a Frobenius form even if the one-sided
    // search came up inconclusive
    let frobenius_form = match (frobenius_form, &symmetric_witness) {
        (None, Some(sym)) => Some(Morphism::new(
            regular.clone(),
            coreg.clone(),
            sym.matrix.clone(),
        )?),
        (form, _) => form,
    };
    let nakayama_automorphism = match &frobenius_form {
        Some(form) => Some(nakayama_automorphism(a, &form.matrix)?),
        None => None,
    };
    debug_assert!(symmetric_witness.is_none() || frobenius_form.is_some());
    debug_assert!(frobenius_form.is_none() || self_injective);
    Ok(FrobeniusClassification {
        self_injective,
        frobenius_form,
        symmetric_witness,
        nakayama_automorphism,
        inconclusive,
    })
}

/// Gram matrix of the Frobenius pairing `kappa(x, y) = phi(y)(x)`, i.e.
/// `K[i][j] = kappa(e_i, e_j)`, for a left-module isomorphism
/// `phi: A -> A^v`. With this convention `kappa(x a, y) = kappa(x, a y)`.
pub fn gram_matrix(form: &Matrix) -> Matrix {
    // phi(e_j) is column j; its value on e_i is coordinate i.
    form.clone()
}

/// Solves `K nu = K^T` for the Nakayama automorphism and verifies that it is
/// a unital algebra automorphism with `kappa(a, nu(b)) = kappa(b, a)`.
pub fn nakayama_automorphism(
    a: &Arc<Algebra>,
    form: &Matrix,
) -> Result<AlgebraMorphism, FinlinError> {
    let k = gram_matrix(form);
    let kinv = k
        .inverse()
        .ok_or_else(|| FinlinError::Precondition("Frobenius form is not invertible".into()))?;
    let nu = kinv.mul(&k.transpose())?;
    // kappa(e_i, nu(e_j)) = kappa(e_j, e_i) holds by construction; verify.
    if k.mul(&nu)? != k.transpose() {
        return Err(FinlinError::Semantic("Nakayama automorphism does not solve K nu = K^T".into()));
    }
    if nu.inverse().is_none() {
        return Err(FinlinError::Semantic("Nakayama automorphism is singular".into()));
    }
    AlgebraMorphism::new(a.clone(), a.clone(), nu)
}

/// The twisted bimodule `1_A_nu`: regular left action, right action
/// precomposed with nu.
pub fn twisted_bimodule(a: &Arc<Algebra>, nu: &AlgebraMorphism) -> Result<Bimodule, FinlinError> {
    let right: Vec<Matrix> = (0..a.dim())
        .map(|i| a.right_mult_by(&nu.matrix.column(i)))
        .collect();
    let left: Vec<Matrix> = (0..a.dim()).map(|i| a.left_mult(i).clone()).collect();
    Bimodule::new(a.clone(), a.clone(), a.dim(), left, right, format!("{}_nu-twist", a.label()))
}

/// Report of the Nakayama-twist verification: `A^v = 1_A_nu` as bimodules,
/// witnessed by the Frobenius form itself.
#[derive(Debug, Clone)]
pub struct TwistReport {
    pub witness: Morphism<Bimodule>,
    pub nu_is_identity: bool,
}

/// Verifies that the co-regular bimodule is the nu-twist of the regular one:
/// the map `x -> kappa(-, x)` (the form itself) is the witness.
pub fn verify_nakayama_twist(
    a: &Arc<Algebra>,
    form: &Matrix,
    nu: &AlgebraMorphism,
) -> Result<TwistReport, FinlinError> {
    let twisted = twisted_bimodule(a, nu)?;
    let coreg = Bimodule::coregular(a.clone());
    let witness = Morphism::new(twisted, coreg, form.clone())?;
    if witness.matrix.inverse().is_none() {
        return Err(FinlinError::Semantic("twist witness not invertible".into()));
    }
    Ok(TwistReport { witness, nu_is_identity: nu.is_identity() })
}

/// Decides whether nu is inner: searches for an invertible u with
/// `nu(x) = u^{-1} x u`, i.e. `u nu(x) = x u` for all basis x.
pub fn is_inner(a: &Arc<Algebra>, nu: &AlgebraMorphism, cfg: &SearchConfig) -> Result<Option<Matrix>, FinlinError> {
    // Solve the linear system u nu(e_i) - e_i u = 0; search the solution
    // space for an invertible element.
    let field = a.field();
    let n = a.dim();
    let mut system: Option<Matrix> = None;
    for i in 0..n {
        // u * nu(e_i): right multiplication of u by nu(e_i): R_{nu(e_i)} u
        let r = a.right_mult_by(&nu.matrix.column(i));
        let l = a.left_mult(i);
        let block = r.sub(l)?;
        system = Some(match system {
            None => block,
            Some(s) => s.vstack(&block)?,
        });
    }
    let sys = system.expect("n >= 1");
    let kernel = sys.kernel_basis();
    if kernel.is_empty() {
        return Ok(None);
    }
    // search span for invertible u
    let basis: Vec<Matrix> = kernel.iter().map(|v| Matrix::from_vec(field, n, 1, v)).collect();
    // try singles, then small grid over a fixed range
    let pts: i64 = (n as i64) + 1;
    let k = basis.len();
    let mut idx = vec![0i64; k];
    let total = (pts as u64).checked_pow(k as u32);
    let budget_ok = total.map(|t| t <= cfg.budget).unwrap_or(false);
    if budget_ok {
        loop {
            if idx.iter().any(|&c| c != 0) {
                let mut u = Matrix::zero(field, n, 1);
                for (c, b) in idx.iter().zip(&basis) {
                    if *c != 0 {
                        u = u.add(&b.scale(&field.from_i64(*c)))?;
                    }
                }
                if a.left_mult_by(&u).inverse().is_some() {
                    return Ok(Some(u));
                }
            }
            let mut pos = 0;
            loop {
                if pos == k {
                    return Ok(None);
                }
                idx[pos] += 1;
                if idx[pos] < pts {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }
    Err(FinlinError::Precondition(format!(
        "inner-automorphism search space too large ({k} parameters)"
    )))
}
