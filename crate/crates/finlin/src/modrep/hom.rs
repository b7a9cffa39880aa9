//! Intertwiner spaces. The solver works uniformly over left modules, right
//! modules and bimodules through [`ModuleLike`]: a homomorphism is a matrix
//! X with `X S = T X` for every action matrix pair (S on the source, T on
//! the target). Conditions are generated only for algebra generators; the
//! law for products and linear combinations follows.

use super::{Bimodule, LeftModule, RightModule};
use crate::algebra::same_algebra;
use crate::error::FinlinError;
use crate::exact::{Field, Matrix, Scalar};

pub trait ModuleLike: Clone + std::fmt::Debug {
    fn dim(&self) -> usize;
    fn base_field(&self) -> Field;
    fn check_compatible(a: &Self, b: &Self) -> Result<(), FinlinError>;
    /// Action matrix pairs for a generating set of the acting algebra(s).
    fn gen_pairs(a: &Self, b: &Self) -> Vec<(Matrix, Matrix)>;
    /// Action matrix pairs for every basis element; used for verification.
    fn full_pairs(a: &Self, b: &Self) -> Vec<(Matrix, Matrix)>;
    fn describe(&self) -> String;
}

impl ModuleLike for LeftModule {
    fn dim(&self) -> usize {
        self.dim()
    }

    fn base_field(&self) -> Field {
        self.field()
    }

    fn check_compatible(a: &Self, b: &Self) -> Result<(), FinlinError> {
        if !same_algebra(a.algebra(), b.algebra()) {
            return Err(FinlinError::AlgebraMismatch(format!(
                "{} vs {}",
                a.algebra().label(),
                b.algebra().label()
            )));
        }
        Ok(())
    }

    fn gen_pairs(a: &Self, b: &Self) -> Vec<(Matrix, Matrix)> {
        a.algebra()
            .generator_indices()
            .iter()
            .map(|&g| (a.action(g).clone(), b.action(g).clone()))
            .collect()
    }

    fn full_pairs(a: &Self, b: &Self) -> Vec<(Matrix, Matrix)> {
        (0..a.algebra().dim()).map(|i| (a.action(i).clone(), b.action(i).clone())).collect()
    }

    fn describe(&self) -> String {
        format!("left module {}", self.label())
    }
}

impl ModuleLike for RightModule {
    fn dim(&self) -> usize {
        self.dim()
    }

    fn base_field(&self) -> Field {
        self.field()
    }

    fn check_compatible(a: &Self, b: &Self) -> Result<(), FinlinError> {
        if !same_algebra(a.algebra(), b.algebra()) {
            return Err(FinlinError::AlgebraMismatch(format!(
                "{} vs {}",
                a.algebra().label(),
                b.algebra().label()
            )));
        }
        Ok(())
    }

    fn gen_pairs(a: &Self, b: &Self) -> Vec<(Matrix, Matrix)> {
        a.algebra()
            .generator_indices()
            .iter()
            .map(|&g| (a.action(g).clone(), b.action(g).clone()))
            .collect()
    }

    fn full_pairs(a: &Self, b: &Self) -> Vec<(Matrix, Matrix)> {
        (0..a.algebra().dim()).map(|i| (a.action(i).clone(), b.action(i).clone())).collect()
    }

    fn describe(&self) -> String {
        format!("right module {}", self.label())
    }
}

impl ModuleLike for Bimodule {
    fn dim(&self) -> usize {
        self.dim()
    }

    fn base_field(&self) -> Field {
        self.field()
    }

    fn check_compatible(a: &Self, b: &Self) -> Result<(), FinlinError> {
        if !same_algebra(a.left_algebra(), b.left_algebra())
            || !same_algebra(a.right_algebra(), b.right_algebra())
        {
            return Err(FinlinError::AlgebraMismatch(format!(
                "bimodule {} vs {}",
                a.label(),
                b.label()
            )));
        }
        Ok(())
    }

    fn gen_pairs(a: &Self, b: &Self) -> Vec<(Matrix, Matrix)> {
        let mut pairs: Vec<(Matrix, Matrix)> = a
            .left_algebra()
            .generator_indices()
            .iter()
            .map(|&g| (a.left_action(g).clone(), b.left_action(g).clone()))
            .collect();
        pairs.extend(
            a.right_algebra()
                .generator_indices()
                .iter()
                .map(|&g| (a.right_action(g).clone(), b.right_action(g).clone())),
        );
        pairs
    }

    fn full_pairs(a: &Self, b: &Self) -> Vec<(Matrix, Matrix)> {
        let mut pairs: Vec<(Matrix, Matrix)> = (0..a.left_algebra().dim())
            .map(|i| (a.left_action(i).clone(), b.left_action(i).clone()))
            .collect();
        pairs.extend(
            (0..a.right_algebra().dim())
                .map(|i| (a.right_action(i).clone(), b.right_action(i).clone())),
        );
        pairs
    }

    fn describe(&self) -> String {
        format!("bimodule {}", self.label())
    }
}

/// A basis of an intertwiner space in deterministic order, with enough
/// structure to re-coordinatize elements exactly (the kernel basis has unit
/// entries on its free columns).
#[derive(Debug, Clone)]
pub struct HomSpace {
    basis: Vec<Matrix>,
    free_cols: Vec<usize>,
    src_dim: usize,
    tgt_dim: usize,
    field: Field,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn src_dim(&self) -> usize {
        self.src_dim
    }

    pub fn tgt_dim(&self) -> usize {
        self.tgt_dim
    }

    /// Linear combination of basis elements.
    pub fn combination(&self, coeffs: &[Scalar]) -> Matrix {
        assert_eq!(coeffs.len(), self.basis.len());
        let mut m = Matrix::zero(self.field, self.tgt_dim, self.src_dim);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            m = m.add(&b.scale(c)).expect("same shape");
        }
        m
    }

    /// Exact coordinates of a matrix in this basis, or `None` if it is not
    /// in the span. Reads off the free columns and verifies reconstruction.
    pub fn coords(&self, x: &Matrix) -> Option<Vec<Scalar>> {
        if x.rows() != self.tgt_dim || x.cols() != self.src_dim {
            return None;
        }
        let v = x.vectorize();
        let coeffs: Vec<Scalar> = self.free_cols.iter().map(|&c| v.at(c, 0).clone()).collect();
        if self.combination(&coeffs) == *x {
            Some(coeffs)
        } else {
            None
        }
    }
}

/// Basis of the space of homomorphisms from `src` to `tgt`, deterministic
/// order (reduced echelon, free columns ascending).
pub fn hom_basis<M: ModuleLike>(src: &M, tgt: &M) -> Result<HomSpace, FinlinError> {
    M::check_compatible(src, tgt)?;
    let field = src.base_field();
    let (s, t) = (src.dim(), tgt.dim());
    let pairs = M::gen_pairs(src, tgt);
    let unknowns = t * s;
    if unknowns == 0 {
        return Ok(HomSpace { basis: vec![], free_cols: vec![], src_dim: s, tgt_dim: t, field });
    }
    let id_t = Matrix::identity(field, t);
    let id_s = Matrix::identity(field, s);
    let mut rows: Option<Matrix> = None;
    for (sm, tm) in &pairs {
        // vec(X S - T X) = (I_t (x) S^T - T (x) I_s) vec(X)
        let block = id_t
            .kronecker(&sm.transpose())
            .expect("field")
            .sub(&tm.kronecker(&id_s).expect("field"))
            .expect("shape");
        rows = Some(match rows {
            None => block,
            Some(r) => r.vstack(&block).expect("same cols"),
        });
    }
    let system = rows.unwrap_or_else(|| Matrix::zero(field, 0, unknowns));
    let (rref, pivots) = system.rref();
    let free: Vec<usize> = (0..unknowns).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &fc in &free {
        let mut v = Matrix::zero(field, unknowns, 1);
        v.set(fc, 0, field.one());
        for (r, &pc) in pivots.iter().enumerate() {
            v.set(pc, 0, rref.at(r, fc).neg());
        }
        basis.push(Matrix::from_vec(field, t, s, &v));
    }
    let space = HomSpace { basis, free_cols: free, src_dim: s, tgt_dim: t, field };
    debug_assert!(space.basis.iter().all(|b| {
        M::full_pairs(src, tgt)
            .iter()
            .all(|(sm, tm)| b.mul(sm).unwrap() == tm.mul(b).unwrap())
    }));
    Ok(space)
}

/// A module homomorphism carrying its endpoints; construction verifies the
/// intertwining relation against every action matrix.
#[derive(Debug, Clone)]
pub struct Morphism<M: ModuleLike> {
    pub source: M,
    pub target: M,
    pub matrix: Matrix,
}

impl<M: ModuleLike> Morphism<M> {
    pub fn new(source: M, target: M, matrix: Matrix) -> Result<Morphism<M>, FinlinError> {
        let m = Morphism { source, target, matrix };
        m.verify()?;
        Ok(m)
    }

    pub fn identity(module: M) -> Morphism<M> {
        let matrix = Matrix::identity(module.base_field(), module.dim());
        Morphism { source: module.clone(), target: module, matrix }
    }

    /// Exact intertwining check against every basis action matrix.
    pub fn verify(&self) -> Result<(), FinlinError> {
        M::check_compatible(&self.source, &self.target)?;
        if self.matrix.rows() != self.target.dim() || self.matrix.cols() != self.source.dim() {
            return Err(FinlinError::DimensionMismatch(format!(
                "morphism matrix {}x{} between dims {} -> {}",
                self.matrix.rows(),
                self.matrix.cols(),
                self.source.dim(),
                self.target.dim()
            )));
        }
        for (s, t) in M::full_pairs(&self.source, &self.target) {
            if self.matrix.mul(&s).expect("dims") != t.mul(&self.matrix).expect("dims") {
                return Err(FinlinError::Semantic(format!(
                    "matrix does not intertwine {} -> {}",
                    self.source.describe(),
                    self.target.describe()
                )));
            }
        }
        Ok(())
    }

    pub fn compose(&self, inner: &Morphism<M>) -> Result<Morphism<M>, FinlinError> {
        Morphism::new(
            inner.source.clone(),
            self.target.clone(),
            self.matrix.mul(&inner.matrix)?,
        )
    }

    pub fn is_invertible(&self) -> bool {
        self.matrix.inverse().is_some()
    }

    pub fn inverse(&self) -> Option<Morphism<M>> {
        let inv = self.matrix.inverse()?;
        Some(Morphism { source: self.target.clone(), target: self.source.clone(), matrix: inv })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::standard::*;
    use crate::modrep::LeftModule;
    use std::sync::Arc;

    fn q() -> Field {
        Field::Rationals
    }

    /// The 2-dimensional simple module of M_2(k): column vectors.
    fn m2_simple(a: &Arc<crate::algebra::Algebra>) -> LeftModule {
        let f = a.field();
        // E_{rs} acts on k^2 by the matrix unit itself
        let action = (0..2)
            .flat_map(|r| {
                (0..2).map(move |s| {
                    Matrix::from_fn(f, 2, 2, move |i, j| {
                        if i == r && j == s {
                            f.one()
                        } else {
                            f.zero()
                        }
                    })
                })
            })
            .collect();
        LeftModule::new(a.clone(), 2, action, "S").unwrap()
    }

    #[test]
    fn hom_from_regular_has_dim_of_target() {
        // Hom_A(A, M) = M for the regular module (free module check)
        for alg in [matrix_algebra(q(), 2), upper_triangular(q(), 2), truncated_polynomial(q(), 3)] {
            let a = Arc::new(alg);
            let reg = LeftModule::regular(a.clone());
            let h = hom_basis(&reg, &reg).unwrap();
            assert_eq!(h.dim(), a.dim());
        }
        let a = Arc::new(matrix_algebra(q(), 2));
        let reg = LeftModule::regular(a.clone());
        let s = m2_simple(&a);
        assert_eq!(hom_basis(&reg, &s).unwrap().dim(), s.dim());
    }

    #[test]
    fn endomorphisms_of_m2_simple_are_scalars() {
        let a = Arc::new(matrix_algebra(q(), 2));
        let s = m2_simple(&a);
        let h = hom_basis(&s, &s).unwrap();
        assert_eq!(h.dim(), 1);
        // brute-force oracle: solve the full intertwining system over all
        // basis elements, not just generators
        let field = q();
        let id2 = Matrix::identity(field, 2);
        let mut sys: Option<Matrix> = None;
        for i in 0..4 {
            let block = id2
                .kronecker(&s.action(i).transpose())
                .unwrap()
                .sub(&s.action(i).kronecker(&id2).unwrap())
                .unwrap();
            sys = Some(match sys {
                None => block,
                Some(r) => r.vstack(&block).unwrap(),
            });
        }
        assert_eq!(sys.unwrap().kernel_basis().len(), 1);
    }

    #[test]
    fn ut2_hom_between_projectives() {
        // UT2 basis: E00, E01, E11. Projective left modules P1 = A e00,
        // P2 = A e11. P1 is spanned by E00 (dim 1), P2 by {E01, E11} (dim 2).
        let a = Arc::new(upper_triangular(q(), 2));
        let f = q();
        // P1: 1-dim, E00 acts by 1, E01 and E11 act by 0
        let p1 = LeftModule::new(
            a.clone(),
            1,
            vec![
                Matrix::identity(f, 1),
                Matrix::zero(f, 1, 1),
                Matrix::zero(f, 1, 1),
            ],
            "P1",
        )
        .unwrap();
        // P2: basis {E01, E11}: E00*E01 = E01; E01*E11 = E01; E11*E11 = E11
        let e00 = Matrix::from_rows(f, vec![vec![f.one(), f.zero()], vec![f.zero(), f.zero()]]);
        let e01 = Matrix::from_rows(f, vec![vec![f.zero(), f.one()], vec![f.zero(), f.zero()]]);
        let e11 = Matrix::from_rows(f, vec![vec![f.zero(), f.zero()], vec![f.zero(), f.one()]]);
        let p2 = LeftModule::new(a.clone(), 2, vec![e00, e01, e11], "P2").unwrap();
        // Hand enumeration: Hom(P1, P2) = e00 * P2 = span{E01}: dim 1.
        assert_eq!(hom_basis(&p1, &p2).unwrap().dim(), 1);
        // Hom(P2, P1) = 0: any map sends E11-eigenspace into e11*P1 = 0 and
        // E00-eigenspace into a space killed by E01; enumerating paths gives 0.
        assert_eq!(hom_basis(&p2, &p1).unwrap().dim(), 0);
    }

    #[test]
    fn coords_round_trip() {
        let a = Arc::new(matrix_algebra(q(), 2));
        let reg = LeftModule::regular(a.clone());
        let h = hom_basis(&reg, &reg).unwrap();
        let mut coeffs = vec![q().zero(); h.dim()];
        coeffs[0] = q().from_i64(3);
        coeffs[2] = q().from_i64(-2);
        let m = h.combination(&coeffs);
        assert_eq!(h.coords(&m).unwrap(), coeffs);
        // identity endomorphism lies in the span; a non-intertwiner does not
        assert!(h.coords(&Matrix::identity(q(), 4)).is_some());
        let mut bad = Matrix::zero(q(), 4, 4);
        bad.set(0, 1, q().one());
        assert!(h.coords(&bad).is_none());
    }

    #[test]
    fn zero_dim_modules_are_legal() {
        let a = Arc::new(matrix_algebra(q(), 2));
        let zero = LeftModule::new(a.clone(), 0, vec![Matrix::zero(q(), 0, 0); 4], "0").unwrap();
        let reg = LeftModule::regular(a);
        assert_eq!(hom_basis(&zero, &reg).unwrap().dim(), 0);
        assert_eq!(hom_basis(&reg, &zero).unwrap().dim(), 0);
        let id = Morphism::identity(zero);
        assert!(id.verify().is_ok());
    }

    #[test]
    fn morphism_rejects_non_intertwiner() {
        let a = Arc::new(upper_triangular(q(), 2));
        let reg = LeftModule::regular(a);
        let mut m = Matrix::zero(q(), 3, 3);
        m.set(0, 1, q().one());
        assert!(Morphism::new(reg.clone(), reg, m).is_err());
    }
}
