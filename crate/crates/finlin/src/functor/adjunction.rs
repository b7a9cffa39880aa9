//! The canonical hom-set bijection of the tensor-hom adjunction
//! `G = N (x)_A -  -|  F = Hom_B(N, -)`, realized as an explicit matrix
//! between computed hom spaces, natural in both arguments.

use super::eval::{eval_lex, eval_lex_morphism, eval_rex, eval_rex_morphism, LexEval, RexEval};
use super::{right_adjoint, RexRep};
use crate::error::FinlinError;
use crate::exact::Matrix;
use crate::modrep::{hom_basis, HomSpace, LeftModule, Morphism};

/// The bijection `Hom_B(G(x), y) -> Hom_A(x, F(y))` at one pair `(x, y)`,
/// with everything needed to evaluate naturality squares.
pub struct AdjunctionData {
    pub g_eval: RexEval,
    pub f_eval: LexEval,
    /// Basis of `Hom_B(G(x), y)`.
    pub lhs: HomSpace,
    /// Basis of `Hom_A(x, F(y))`.
    pub rhs: HomSpace,
    /// Coordinates of the bijection, `rhs.dim() x lhs.dim()`; invertible.
    pub matrix: Matrix,
}

/// Computes the adjunction bijection `phi -> (m -> (n -> phi([n (x) m])))`.
pub fn adjunction_bijection(
    g: &RexRep,
    x: &LeftModule,
    y: &LeftModule,
) -> Result<AdjunctionData, FinlinError> {
    let f = right_adjoint(g);
    let g_eval = eval_rex(g, x)?;
    let f_eval = eval_lex(&f, y)?;
    let lhs = hom_basis(&g_eval.module, y)?;
    let rhs = hom_basis(x, &f_eval.module)?;
    let field = x.field();
    let dn = g.bimodule().dim();
    let dx = x.dim();
    let mut matrix = Matrix::zero(field, rhs.dim(), lhs.dim());
    for (i, phi) in lhs.basis().iter().enumerate() {
        // phi: carrier of N (x)_A x -> y. Build phi_hat: x -> Hom_B(N, y).
        let through = phi.mul(&g_eval.tensor.projection)?; // y <- N (x) x raw
        let mut phi_hat = Matrix::zero(field, f_eval.hom.dim(), dx);
        for m in 0..dx {
            // the map n -> phi([n (x) e_m]) as a matrix y.dim x dn
            let d_m = Matrix::from_fn(field, y.dim(), dn, |r, n| {
                through.at(r, n * dx + m).clone()
            });
            let coords = f_eval.hom.coords(&d_m).ok_or_else(|| {
                FinlinError::Semantic("adjunct image is not a module morphism".into())
            })?;
            for (j, c) in coords.into_iter().enumerate() {
                phi_hat.set(j, m, c);
            }
        }
        let coords = rhs
            .coords(&phi_hat)
            .ok_or_else(|| FinlinError::Semantic("adjunct is not an intertwiner".into()))?;
        for (j, c) in coords.into_iter().enumerate() {
            matrix.set(j, i, c);
        }
    }
    Ok(AdjunctionData { g_eval, f_eval, lhs, rhs, matrix })
}

/// Verifies both naturality squares of the adjunction bijection against a
/// morphism `u: x' -> x` and a morphism `v: y -> y'`:
/// `Phi(phi o G(u)) = Phi(phi) o u` and `Phi(v o phi) = F(v) o Phi(phi)`.
pub fn adjunction_naturality(
    g: &RexRep,
    u: &Morphism<LeftModule>,
    v: &Morphism<LeftModule>,
) -> Result<bool, FinlinError> {
    let f = right_adjoint(g);
    let x_acc = &u.target;
    let x_src = &u.source;
    let y_src = &v.source;
    let y_tgt = &v.target;
    let base = adjunction_bijection(g, x_acc, y_src)?;
    let left = adjunction_bijection(g, x_src, y_src)?;
    let down = adjunction_bijection(g, x_acc, y_tgt)?;
    let gu = eval_rex_morphism(g, u, &left.g_eval, &base.g_eval)?;
    let fv = eval_lex_morphism(&f, v, &base.f_eval, &down.f_eval)?;
    for phi_mat in base.lhs.basis() {
        let phi = Morphism::new(base.g_eval.module.clone(), y_src.clone(), phi_mat.clone())?;
        let phi_hat = base.rhs.combination(&base.matrix.column_coords(base.lhs.coords(phi_mat).unwrap()));
        // square in x: Phi(phi o G(u)) = Phi(phi) o u
        let pre = phi.matrix.mul(&gu.matrix)?;
        let lhs_coords = left.lhs.coords(&pre).ok_or_else(|| {
            FinlinError::Semantic("precomposed morphism left the hom space".into())
        })?;
        let lhs_hat = left.rhs.combination(&left.matrix.column_coords(lhs_coords));
        let rhs_hat = phi_hat.mul(&u.matrix)?;
        if lhs_hat != rhs_hat {
            return Ok(false);
        }
        // square in y: Phi(v o phi) = F(v) o Phi(phi)
        let post = v.matrix.mul(&phi.matrix)?;
        let lhs_coords = down.lhs.coords(&post).ok_or_else(|| {
            FinlinError::Semantic("postcomposed morphism left the hom space".into())
        })?;
        let lhs_hat = down.rhs.combination(&down.matrix.column_coords(lhs_coords));
        let rhs_hat = fv.matrix.mul(&phi_hat)?;
        if lhs_hat != rhs_hat {
            return Ok(false);
        }
    }
    Ok(true)
}

trait ColumnCoords {
    fn column_coords(&self, coords: Vec<crate::exact::Scalar>) -> Vec<crate::exact::Scalar>;
}

impl ColumnCoords for Matrix {
    /// Applies the bijection matrix to a coordinate vector.
    fn column_coords(&self, coords: Vec<crate::exact::Scalar>) -> Vec<crate::exact::Scalar> {
        let field = self.field();
        let v = Matrix::col(field, coords);
        let out = self.mul(&v).expect("coordinate shapes");
        (0..out.rows()).map(|i| out.at(i, 0).clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::standard::*;
    use crate::exact::Field;
    use std::sync::Arc;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn bijection_is_invertible_for_nakayama() {
        for alg in [truncated_polynomial(q(), 2), upper_triangular(q(), 2), matrix_algebra(q(), 2)] {
            let a = Arc::new(alg);
            let g = RexRep::nakayama(a.clone());
            let x = LeftModule::regular(a.clone());
            let data = adjunction_bijection(&g, &x, &x).unwrap();
            assert_eq!(data.lhs.dim(), data.rhs.dim());
            assert!(data.matrix.inverse().is_some(), "{}", a.label());
        }
    }

    #[test]
    fn naturality_squares_hold() {
        let a = Arc::new(truncated_polynomial(q(), 2));
        let g = RexRep::nakayama(a.clone());
        let x = LeftModule::regular(a.clone());
        let h = hom_basis(&x, &x).unwrap();
        let u = Morphism::new(x.clone(), x.clone(), h.basis()[1].clone()).unwrap();
        let v = Morphism::new(x.clone(), x.clone(), h.basis()[0].clone()).unwrap();
        assert!(adjunction_naturality(&g, &u, &v).unwrap());
    }
}
