//! Tensor products over an algebra, computed as cokernels:
//! `m (x)_A n = (m (x) n) / span{ x.a (x) y - x (x) a.y }`.
//! Relations are generated from a generating set of the middle algebra;
//! relations for products follow by telescoping.

use super::{Bimodule, LeftModule, RightModule};
use crate::algebra::{same_algebra, Algebra};
use crate::error::FinlinError;
use crate::exact::{Field, Matrix, RowSpan, Scalar};

/// A quotient of `m (x)_k n` with a chosen section: `projection * lift = id`.
/// The projection matrix realizes the canonical map from `m (x) n`.
#[derive(Debug, Clone)]
pub struct TensorSpace {
    pub dim: usize,
    pub projection: Matrix, // dim x (dm*dn)
    pub lift: Matrix,       // (dm*dn) x dim
}

impl TensorSpace {
    /// Pushes an outer action matrix on `m (x) n` down to the quotient.
    pub fn descend(&self, outer: &Matrix) -> Matrix {
        self.projection.mul(outer).expect("dims").mul(&self.lift).expect("dims")
    }
}

/// Core construction: quotient of the `dm * dn`-dimensional space by the
/// balancing relations of the middle algebra. `right_on_m[i]` is the matrix
/// of `x -> x . e_i` on m, `left_on_n[i]` of `y -> e_i . y` on n.
pub fn tensor_core(
    field: Field,
    middle: &Algebra,
    right_on_m: &[Matrix],
    dm: usize,
    left_on_n: &[Matrix],
    dn: usize,
) -> TensorSpace {
    let total = dm * dn;
    let id_m = Matrix::identity(field, dm);
    let id_n = Matrix::identity(field, dn);
    let mut span = RowSpan::new(field, total);
    for &g in middle.generator_indices() {
        let rel = right_on_m[g]
            .kronecker(&id_n)
            .expect("field")
            .sub(&id_m.kronecker(&left_on_n[g]).expect("field"))
            .expect("shape");
        // every column is one balancing relation
        for j in 0..total {
            let col: Vec<Scalar> = (0..total).map(|i| rel.at(i, j).clone()).collect();
            if col.iter().all(Scalar::is_zero) {
                continue;
            }
            span.insert(col);
        }
    }
    let free = span.free_columns();
    let dim = free.len();
    let mut projection = Matrix::zero(field, dim, total);
    for j in 0..total {
        let mut v = vec![field.zero(); total];
        v[j] = field.one();
        span.reduce(&mut v);
        for (r, &fc) in free.iter().enumerate() {
            projection.set(r, j, v[fc].clone());
        }
    }
    let mut lift = Matrix::zero(field, total, dim);
    for (r, &fc) in free.iter().enumerate() {
        lift.set(fc, r, field.one());
    }
    debug_assert!(projection.mul(&lift).expect("dims").is_identity());
    TensorSpace { dim, projection, lift }
}

/// `m (x)_A n` for a right module and a left module: a plain vector space.
pub fn tensor_right_left(
    m: &RightModule,
    n: &LeftModule,
) -> Result<TensorSpace, FinlinError> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(FinlinError::AlgebraMismatch("tensor over algebra".into()));
    }
    Ok(tensor_core(m.field(), m.algebra(), m.actions(), m.dim(), n.actions(), n.dim()))
}

/// `x (x)_A n` for an X-A-bimodule and a left A-module: a left X-module.
pub fn tensor_bi_left(
    x: &Bimodule,
    n: &LeftModule,
) -> Result<(LeftModule, TensorSpace), FinlinError> {
    if !same_algebra(x.right_algebra(), n.algebra()) {
        return Err(FinlinError::AlgebraMismatch("tensor over algebra".into()));
    }
    let ts = tensor_core(x.field(), x.right_algebra(), x.right_actions(), x.dim(), n.actions(), n.dim());
    let id_n = Matrix::identity(x.field(), n.dim());
    let action: Vec<Matrix> = x
        .left_actions()
        .iter()
        .map(|l| ts.descend(&l.kronecker(&id_n).expect("field")))
        .collect();
    let module = LeftModule::new(
        x.left_algebra().clone(),
        ts.dim,
        action,
        format!("{}(x)_{}{}", x.label(), x.right_algebra().label(), n.label()),
    )?;
    Ok((module, ts))
}

/// `m (x)_A y` for a right A-module and an A-Y-bimodule: a right Y-module.
pub fn tensor_right_bi(
    m: &RightModule,
    y: &Bimodule,
) -> Result<(RightModule, TensorSpace), FinlinError> {
    if !same_algebra(m.algebra(), y.left_algebra()) {
        return Err(FinlinError::AlgebraMismatch("tensor over algebra".into()));
    }
    let ts = tensor_core(m.field(), m.algebra(), m.actions(), m.dim(), y.left_actions(), y.dim());
    let id_m = Matrix::identity(m.field(), m.dim());
    let action: Vec<Matrix> = y
        .right_actions()
        .iter()
        .map(|r| ts.descend(&id_m.kronecker(r).expect("field")))
        .collect();
    let module = RightModule::new(
        y.right_algebra().clone(),
        ts.dim,
        action,
        format!("{}(x)_{}{}", m.label(), m.algebra().label(), y.label()),
    )?;
    Ok((module, ts))
}

/// `x (x)_A y` for an X-A-bimodule and an A-Y-bimodule: an X-Y-bimodule.
pub fn tensor_bi_bi(x: &Bimodule, y: &Bimodule) -> Result<(Bimodule, TensorSpace), FinlinError> {
    if !same_algebra(x.right_algebra(), y.left_algebra()) {
        return Err(FinlinError::AlgebraMismatch(format!(
            "tensor over algebra: {} vs {}",
            x.right_algebra().label(),
            y.left_algebra().label()
        )));
    }
    let ts = tensor_core(x.field(), x.right_algebra(), x.right_actions(), x.dim(), y.left_actions(), y.dim());
    let id_y = Matrix::identity(x.field(), y.dim());
    let id_x = Matrix::identity(x.field(), x.dim());
    let left: Vec<Matrix> = x
        .left_actions()
        .iter()
        .map(|l| ts.descend(&l.kronecker(&id_y).expect("field")))
        .collect();
    let right: Vec<Matrix> = y
        .right_actions()
        .iter()
        .map(|r| ts.descend(&id_x.kronecker(r).expect("field")))
        .collect();
    let module = Bimodule::new(
        x.left_algebra().clone(),
        y.right_algebra().clone(),
        ts.dim,
        left,
        right,
        format!("{}(x)_{}{}", x.label(), x.right_algebra().label(), y.label()),
    )?;
    Ok((module, ts))
}
