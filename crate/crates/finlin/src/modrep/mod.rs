//! Modules, bimodules and their morphisms: intertwiner spaces, duals,
//! tensor products over an algebra, direct sums, and the (co)regular
//! bimodules. Zero-dimensional modules are legal everywhere; they show up
//! as kernels and cokernels.

pub mod hom;
pub mod iso;
pub mod tensor;

pub use hom::{hom_basis, HomSpace, Morphism};
pub use iso::{module_iso, IsoOutcome, SearchConfig};
pub use tensor::{tensor_bi_bi, tensor_bi_left, tensor_right_bi, tensor_right_left, TensorSpace};

use crate::algebra::{same_algebra, Algebra};
use crate::error::FinlinError;
use crate::exact::{Field, Matrix};
use std::fmt;
use std::sync::Arc;

/// A finite-dimensional left module given by one action matrix per algebra
/// basis element: `rho(e_i) rho(e_j) = sum_k c[i][j][k] rho(e_k)`.
#[derive(Clone, PartialEq)]
pub struct LeftModule {
    algebra: Arc<Algebra>,
    dim: usize,
    action: Vec<Matrix>,
    label: String,
}

/// A right module; the composition law is reversed:
/// `rho(e_i) rho(e_j) = sum_k c[j][i][k] rho(e_k)`.
#[derive(Clone, PartialEq)]
pub struct RightModule {
    algebra: Arc<Algebra>,
    dim: usize,
    action: Vec<Matrix>,
    label: String,
}

/// A B-A-bimodule: a left B-action and a right A-action that commute.
#[derive(Clone, PartialEq)]
pub struct Bimodule {
    left_algebra: Arc<Algebra>,
    right_algebra: Arc<Algebra>,
    dim: usize,
    left_action: Vec<Matrix>,
    right_action: Vec<Matrix>,
    label: String,
}

impl fmt::Debug for LeftModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LeftModule({}, dim {} over {:?})", self.label, self.dim, self.algebra)
    }
}
impl fmt::Debug for RightModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RightModule({}, dim {} over {:?})", self.label, self.dim, self.algebra)
    }
}
impl fmt::Debug for Bimodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Bimodule({}, dim {}, {:?}-{:?})",
            self.label, self.dim, self.left_algebra, self.right_algebra
        )
    }
}

fn check_action_shapes(
    algebra: &Algebra,
    dim: usize,
    action: &[Matrix],
) -> Result<(), FinlinError> {
    if action.len() != algebra.dim() {
        return Err(FinlinError::DimensionMismatch(format!(
            "need {} action matrices, got {}",
            algebra.dim(),
            action.len()
        )));
    }
    for m in action {
        if m.rows() != dim || m.cols() != dim {
            return Err(FinlinError::DimensionMismatch(format!(
                "action matrix is {}x{}, module dim is {dim}",
                m.rows(),
                m.cols()
            )));
        }
        if m.field() != algebra.field() {
            return Err(FinlinError::FieldMismatch(
                algebra.field().to_string(),
                m.field().to_string(),
            ));
        }
    }
    Ok(())
}

/// rho(x) for an element x in coordinates.
fn action_of(field: Field, action: &[Matrix], dim: usize, x: &Matrix) -> Matrix {
    let mut m = Matrix::zero(field, dim, dim);
    for (i, a) in action.iter().enumerate() {
        if x.at(i, 0).is_zero() {
            continue;
        }
        m = m.add(&a.scale(x.at(i, 0))).expect("same shape");
    }
    m
}

fn check_module_law(
    algebra: &Algebra,
    dim: usize,
    action: &[Matrix],
    opposite_composition: bool,
    what: &str,
) -> Result<(), FinlinError> {
    let f = algebra.field();
    let unit = action_of(f, action, dim, &algebra.unit_vector());
    if !unit.is_identity() {
        return Err(FinlinError::Semantic(format!("{what}: unit does not act as identity")));
    }
    for i in 0..algebra.dim() {
        for j in 0..algebra.dim() {
            let lhs = action[i].mul(&action[j]).expect("square");
            let coeffs = if opposite_composition {
                algebra.structure_tensor()[j][i].clone()
            } else {
                algebra.structure_tensor()[i][j].clone()
            };
            let rhs = action_of(f, action, dim, &Matrix::col(f, coeffs));
            if lhs != rhs {
                return Err(FinlinError::Semantic(format!(
                    "{what}: action law fails at basis pair ({i}, {j})"
                )));
            }
        }
    }
    Ok(())
}

impl LeftModule {
    pub fn new(
        algebra: Arc<Algebra>,
        dim: usize,
        action: Vec<Matrix>,
        label: impl Into<String>,
    ) -> Result<LeftModule, FinlinError> {
        check_action_shapes(&algebra, dim, &action)?;
        check_module_law(&algebra, dim, &action, false, "left module")?;
        Ok(LeftModule { algebra, dim, action, label: label.into() })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.action[i]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    pub fn action_of(&self, x: &Matrix) -> Matrix {
        action_of(self.field(), &self.action, self.dim, x)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> LeftModule {
        self.label = label.into();
        self
    }

    /// The regular left module of an algebra.
    pub fn regular(algebra: Arc<Algebra>) -> LeftModule {
        let action = (0..algebra.dim()).map(|i| algebra.left_mult(i).clone()).collect();
        let dim = algebra.dim();
        let label = format!("{}_regular", algebra.label());
        LeftModule { algebra, dim, action, label }
    }

    /// Dual module: a right module on the dual space, `(f . a)(x) = f(a x)`.
    pub fn dual(&self) -> RightModule {
        RightModule {
            algebra: self.algebra.clone(),
            dim: self.dim,
            action: self.action.iter().map(Matrix::transpose).collect(),
            label: format!("{}^v", self.label),
        }
    }

    pub fn direct_sum(&self, other: &LeftModule) -> Result<LeftModule, FinlinError> {
        if !same_algebra(&self.algebra, &other.algebra) {
            return Err(FinlinError::AlgebraMismatch("direct sum".into()));
        }
        Ok(LeftModule {
            algebra: self.algebra.clone(),
            dim: self.dim + other.dim,
            action: self
                .action
                .iter()
                .zip(&other.action)
                .map(|(a, b)| a.block_diag(b))
                .collect(),
            label: format!("{}(+){}", self.label, other.label),
        })
    }

    /// Tensor with a plain vector space of dimension `v` (trivial action on
    /// the second tensorand, lexicographic flattening).
    pub fn tensor_space(&self, v: usize) -> LeftModule {
        let id = Matrix::identity(self.field(), v);
        LeftModule {
            algebra: self.algebra.clone(),
            dim: self.dim * v,
            action: self.action.iter().map(|a| a.kronecker(&id).expect("same field")).collect(),
            label: format!("{}(x)k^{v}", self.label),
        }
    }

    /// Outer tensor with a right module over B, giving an A-B-bimodule.
    pub fn tensor_right(&self, n: &RightModule) -> Result<Bimodule, FinlinError> {
        if self.field() != n.field() {
            return Err(FinlinError::FieldMismatch(self.field().to_string(), n.field().to_string()));
        }
        let idm = Matrix::identity(self.field(), self.dim);
        let idn = Matrix::identity(self.field(), n.dim);
        Ok(Bimodule {
            left_algebra: self.algebra.clone(),
            right_algebra: n.algebra.clone(),
            dim: self.dim * n.dim,
            left_action: self.action.iter().map(|a| a.kronecker(&idn).expect("field")).collect(),
            right_action: n.action.iter().map(|b| idm.kronecker(b).expect("field")).collect(),
            label: format!("{}(x){}", self.label, n.label),
        })
    }

}

impl RightModule {
    pub fn new(
        algebra: Arc<Algebra>,
        dim: usize,
        action: Vec<Matrix>,
        label: impl Into<String>,
    ) -> Result<RightModule, FinlinError> {
        check_action_shapes(&algebra, dim, &action)?;
        check_module_law(&algebra, dim, &action, true, "right module")?;
        Ok(RightModule { algebra, dim, action, label: label.into() })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.action[i]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    pub fn with_label(mut self, label: impl Into<String>) -> RightModule {
        self.label = label.into();
        self
    }

    /// The regular right module of an algebra.
    pub fn regular(algebra: Arc<Algebra>) -> RightModule {
        let action = (0..algebra.dim()).map(|i| algebra.right_mult(i).clone()).collect();
        let dim = algebra.dim();
        let label = format!("{}_regular_r", algebra.label());
        RightModule { algebra, dim, action, label }
    }

    /// Dual module: a left module, `(a . f)(x) = f(x a)`.
    pub fn dual(&self) -> LeftModule {
        LeftModule {
            algebra: self.algebra.clone(),
            dim: self.dim,
            action: self.action.iter().map(Matrix::transpose).collect(),
            label: format!("{}^v", self.label),
        }
    }

    pub fn direct_sum(&self, other: &RightModule) -> Result<RightModule, FinlinError> {
        if !same_algebra(&self.algebra, &other.algebra) {
            return Err(FinlinError::AlgebraMismatch("direct sum".into()));
        }
        Ok(RightModule {
            algebra: self.algebra.clone(),
            dim: self.dim + other.dim,
            action: self
                .action
                .iter()
                .zip(&other.action)
                .map(|(a, b)| a.block_diag(b))
                .collect(),
            label: format!("{}(+){}", self.label, other.label),
        })
    }

}

impl Bimodule {
    pub fn new(
        left_algebra: Arc<Algebra>,
        right_algebra: Arc<Algebra>,
        dim: usize,
        left_action: Vec<Matrix>,
        right_action: Vec<Matrix>,
        label: impl Into<String>,
    ) -> Result<Bimodule, FinlinError> {
        check_action_shapes(&left_algebra, dim, &left_action)?;
        check_action_shapes(&right_algebra, dim, &right_action)?;
        check_module_law(&left_algebra, dim, &left_action, false, "bimodule left action")?;
        check_module_law(&right_algebra, dim, &right_action, true, "bimodule right action")?;
        for (i, l) in left_action.iter().enumerate() {
            for (j, r) in right_action.iter().enumerate() {
                if l.mul(r).expect("square") != r.mul(l).expect("square") {
                    return Err(FinlinError::Semantic(format!(
                        "bimodule actions do not commute at (left e{i}, right e{j})"
                    )));
                }
            }
        }
        Ok(Bimodule {
            left_algebra,
            right_algebra,
            dim,
            left_action,
            right_action,
            label: label.into(),
        })
    }

    pub fn left_algebra(&self) -> &Arc<Algebra> {
        &self.left_algebra
    }

    pub fn right_algebra(&self) -> &Arc<Algebra> {
        &self.right_algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.left_algebra.field()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn left_action(&self, i: usize) -> &Matrix {
        &self.left_action[i]
    }

    pub fn right_action(&self, i: usize) -> &Matrix {
        &self.right_action[i]
    }

    pub fn left_actions(&self) -> &[Matrix] {
        &self.left_action
    }

    pub fn right_actions(&self) -> &[Matrix] {
        &self.right_action
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Bimodule {
        self.label = label.into();
        self
    }

    /// Forgets the right action.
    pub fn as_left_module(&self) -> LeftModule {
        LeftModule {
            algebra: self.left_algebra.clone(),
            dim: self.dim,
            action: self.left_action.clone(),
            label: self.label.clone(),
        }
    }

    /// Forgets the left action.
    pub fn as_right_module(&self) -> RightModule {
        RightModule {
            algebra: self.right_algebra.clone(),
            dim: self.dim,
            action: self.right_action.clone(),
            label: self.label.clone(),
        }
    }

    /// The regular bimodule `_A A_A`.
    pub fn regular(algebra: Arc<Algebra>) -> Bimodule {
        let left = (0..algebra.dim()).map(|i| algebra.left_mult(i).clone()).collect();
        let right = (0..algebra.dim()).map(|i| algebra.right_mult(i).clone()).collect();
        let dim = algebra.dim();
        let label = format!("{}_bimod", algebra.label());
        Bimodule {
            left_algebra: algebra.clone(),
            right_algebra: algebra,
            dim,
            left_action: left,
            right_action: right,
            label,
        }
    }

    /// The co-regular bimodule `A^v`: actions are the duals of the regular
    /// ones, `(a.f)(x) = f(x a)` and `(f.a)(x) = f(a x)`.
    pub fn coregular(algebra: Arc<Algebra>) -> Bimodule {
        let left = (0..algebra.dim()).map(|i| algebra.right_mult(i).transpose()).collect();
        let right = (0..algebra.dim()).map(|i| algebra.left_mult(i).transpose()).collect();
        let dim = algebra.dim();
        let label = format!("{}^v_bimod", algebra.label());
        Bimodule {
            left_algebra: algebra.clone(),
            right_algebra: algebra,
            dim,
            left_action: left,
            right_action: right,
            label,
        }
    }

    /// Dual bimodule: B-A becomes A-B, actions transposed and swapped.
    pub fn dual(&self) -> Bimodule {
        Bimodule {
            left_algebra: self.right_algebra.clone(),
            right_algebra: self.left_algebra.clone(),
            dim: self.dim,
            left_action: self.right_action.iter().map(Matrix::transpose).collect(),
            right_action: self.left_action.iter().map(Matrix::transpose).collect(),
            label: format!("{}^v", self.label),
        }
    }

    pub fn direct_sum(&self, other: &Bimodule) -> Result<Bimodule, FinlinError> {
        if !same_algebra(&self.left_algebra, &other.left_algebra)
            || !same_algebra(&self.right_algebra, &other.right_algebra)
        {
            return Err(FinlinError::AlgebraMismatch("direct sum".into()));
        }
        Ok(Bimodule {
            left_algebra: self.left_algebra.clone(),
            right_algebra: self.right_algebra.clone(),
            dim: self.dim + other.dim,
            left_action: self
                .left_action
                .iter()
                .zip(&other.left_action)
                .map(|(a, b)| a.block_diag(b))
                .collect(),
            right_action: self
                .right_action
                .iter()
                .zip(&other.right_action)
                .map(|(a, b)| a.block_diag(b))
                .collect(),
            label: format!("{}(+){}", self.label, other.label),
        })
    }

    /// Flattens a B-A-bimodule into a left module over `B (x) A^op`.
    /// The caller supplies the tensor algebra so that handles stay shared.
    pub fn flatten(&self, tensor_algebra: &Arc<Algebra>) -> Result<LeftModule, FinlinError> {
        let nb = self.left_algebra.dim();
        let na = self.right_algebra.dim();
        if tensor_algebra.dim() != nb * na {
            return Err(FinlinError::DimensionMismatch("flatten: tensor algebra dimension".into()));
        }
        let mut action = Vec::with_capacity(nb * na);
        for i in 0..nb {
            for j in 0..na {
                action.push(
                    self.left_action[i].mul(&self.right_action[j]).expect("commuting actions"),
                );
            }
        }
        LeftModule::new(
            tensor_algebra.clone(),
            self.dim,
            action,
            format!("{}_flat", self.label),
        )
    }

}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::standard::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn regular_module_validates_and_dual_round_trips() {
        for a in [matrix_algebra(q(), 2), upper_triangular(q(), 2), truncated_polynomial(q(), 3)] {
            let a = Arc::new(a);
            let m = LeftModule::regular(a.clone());
            assert!(LeftModule::new(a.clone(), m.dim(), m.actions().to_vec(), "check").is_ok());
            let d = m.dual();
            assert!(RightModule::new(a.clone(), d.dim(), d.actions().to_vec(), "check").is_ok());
            let dd = d.dual();
            assert_eq!(dd.actions(), m.actions(), "double dual is the identity entrywise");
            assert_eq!(dd.dim(), m.dim());
        }
    }

    #[test]
    fn dual_of_regular_is_coregular_transposes() {
        let a = Arc::new(upper_triangular(q(), 2));
        let m = LeftModule::regular(a.clone());
        let d = m.dual();
        for i in 0..a.dim() {
            assert_eq!(d.action(i), &a.left_mult(i).transpose());
        }
    }

    #[test]
    fn regular_and_coregular_bimodules_validate() {
        for alg in [matrix_algebra(q(), 2), upper_triangular(q(), 2), base_field(q())] {
            let a = Arc::new(alg);
            let r = Bimodule::regular(a.clone());
            let c = Bimodule::coregular(a.clone());
            for b in [&r, &c] {
                assert!(Bimodule::new(
                    a.clone(),
                    a.clone(),
                    b.dim(),
                    b.left_actions().to_vec(),
                    b.right_actions().to_vec(),
                    "check"
                )
                .is_ok());
            }
            assert_eq!(c.dual().left_actions(), r.left_actions());
            assert_eq!(c.dual().right_actions(), r.right_actions());
        }
    }

    #[test]
    fn base_field_bimodules_are_trivial() {
        let k = Arc::new(base_field(q()));
        let r = Bimodule::regular(k.clone());
        let c = Bimodule::coregular(k);
        assert_eq!(r.dim(), 1);
        assert_eq!(r.left_actions(), c.left_actions());
        assert_eq!(r.right_actions(), c.right_actions());
    }

    #[test]
    fn direct_sum_with_zero_module() {
        let a = Arc::new(matrix_algebra(q(), 2));
        let m = LeftModule::regular(a.clone());
        let zero = LeftModule::new(a.clone(), 0, vec![Matrix::zero(q(), 0, 0); 4], "0").unwrap();
        let s = m.direct_sum(&zero).unwrap();
        assert_eq!(s.dim(), m.dim());
        assert_eq!(s.actions(), m.actions());
    }

    #[test]
    fn tensor_space_dims() {
        let a = Arc::new(truncated_polynomial(q(), 2));
        let m = LeftModule::regular(a);
        assert_eq!(m.tensor_space(3).dim(), 6);
        assert!(LeftModule::new(
            m.algebra().clone(),
            6,
            m.tensor_space(3).actions().to_vec(),
            "check"
        )
        .is_ok());
    }

    #[test]
    fn bad_action_rejected() {
        let a = Arc::new(matrix_algebra(q(), 2));
        let mut action: Vec<Matrix> = (0..4).map(|i| a.left_mult(i).clone()).collect();
        action[1] = Matrix::zero(q(), 4, 4);
        assert!(LeftModule::new(a, 4, action, "bad").is_err());
    }

    #[test]
    fn flatten_regular_bimodule() {
        let a = Arc::new(matrix_algebra(q(), 2));
        let t = Arc::new(a.tensor(&a.opposite()).unwrap());
        let r = Bimodule::regular(a.clone());
        let flat = r.flatten(&t).unwrap();
        assert_eq!(flat.dim(), 4);
    }
}
