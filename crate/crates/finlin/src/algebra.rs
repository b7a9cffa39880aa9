//! Finite-dimensional unital associative algebras presented by structure
//! constants, with validation and the canonical constructions used throughout
//! the crate (opposite algebra, tensor product, standard example families).

use crate::error::FinlinError;
use crate::exact::{Field, Matrix, RowSpan, Scalar};
use std::fmt;
use std::sync::Arc;

/// A finite-dimensional unital associative algebra over an exact field,
/// presented by structure constants: `e_i * e_j = sum_k c[i][j][k] e_k`.
#[derive(Clone)]
pub struct Algebra {
    field: Field,
    dim: usize,
    mult: Vec<Vec<Vec<Scalar>>>,
    unit: Vec<Scalar>,
    label: String,
    left_mult: Vec<Matrix>,  // L_i : x -> e_i * x
    right_mult: Vec<Matrix>, // R_i : x -> x * e_i
    generators: Vec<usize>,  // basis indices generating A as a unital algebra
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.dim == other.dim
            && self.mult == other.mult
            && self.unit == other.unit
    }
}
impl Eq for Algebra {}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({}, dim {}, over {})", self.label, self.dim, self.field)
    }
}

/// One violated structure identity, with the indices that witness it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Shape(String),
    Associativity { i: usize, j: usize, k: usize },
    UnitLeft { j: usize },
    UnitRight { j: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape(s) => write!(f, "shape: {s}"),
            Violation::Associativity { i, j, k } => {
                write!(f, "(e{i}*e{j})*e{k} != e{i}*(e{j}*e{k})")
            }
            Violation::UnitLeft { j } => write!(f, "1*e{j} != e{j}"),
            Violation::UnitRight { j } => write!(f, "e{j}*1 != e{j}"),
        }
    }
}

impl Algebra {
    /// Builds and fully validates an algebra. The unit is given as a
    /// coefficient vector of `1_A` in the chosen basis.
    pub fn new(
        field: Field,
        dim: usize,
        mult: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
        label: impl Into<String>,
    ) -> Result<Algebra, FinlinError> {
        let a = Algebra::assemble(field, dim, mult, unit, label)?;
        let report = a.validate();
        if let Some(v) = report.first() {
            return Err(FinlinError::Semantic(format!(
                "algebra {:?} invalid: {} ({} violations total)",
                a.label,
                v,
                report.len()
            )));
        }
        Ok(a)
    }

    /// Builds without running the full associativity scan. Used for internal
    /// constructions whose validity follows from the construction (opposite,
    /// tensor products); shape and unit laws are still checked.
    pub fn new_unchecked(
        field: Field,
        dim: usize,
        mult: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
        label: impl Into<String>,
    ) -> Result<Algebra, FinlinError> {
        let a = Algebra::assemble(field, dim, mult, unit, label)?;
        if let Some(v) = a.validate_units().first() {
            return Err(FinlinError::Semantic(format!("algebra {:?} invalid: {v}", a.label)));
        }
        Ok(a)
    }

    fn assemble(
        field: Field,
        dim: usize,
        mult: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
        label: impl Into<String>,
    ) -> Result<Algebra, FinlinError> {
        field.validate()?;
        if mult.len() != dim
            || mult.iter().any(|m| m.len() != dim || m.iter().any(|r| r.len() != dim))
        {
            return Err(FinlinError::DimensionMismatch(format!(
                "structure tensor must be {dim}x{dim}x{dim}"
            )));
        }
        if unit.len() != dim {
            return Err(FinlinError::DimensionMismatch(format!("unit vector must have length {dim}")));
        }
        for e in mult.iter().flatten().flatten().chain(unit.iter()) {
            if e.field() != field {
                return Err(FinlinError::FieldMismatch(field.to_string(), e.field().to_string()));
            }
        }
        let left_mult = (0..dim)
            .map(|i| Matrix::from_fn(field, dim, dim, |k, j| mult[i][j][k].clone()))
            .collect::<Vec<_>>();
        let right_mult = (0..dim)
            .map(|i| Matrix::from_fn(field, dim, dim, |k, j| mult[j][i][k].clone()))
            .collect::<Vec<_>>();
        let mut a = Algebra {
            field,
            dim,
            mult,
            unit,
            label: label.into(),
            left_mult,
            right_mult,
            generators: Vec::new(),
        };
        a.generators = a.compute_generators();
        Ok(a)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.mult[i][j][k]
    }

    pub fn structure_tensor(&self) -> &Vec<Vec<Vec<Scalar>>> {
        &self.mult
    }

    pub fn unit_vector(&self) -> Matrix {
        Matrix::col(self.field, self.unit.clone())
    }

    /// Matrix of left multiplication by `e_i`.
    pub fn left_mult(&self, i: usize) -> &Matrix {
        &self.left_mult[i]
    }

    /// Matrix of right multiplication by `e_i`.
    pub fn right_mult(&self, i: usize) -> &Matrix {
        &self.right_mult[i]
    }

    /// Matrix of left multiplication by an element given in coordinates.
    pub fn left_mult_by(&self, x: &Matrix) -> Matrix {
        let mut m = Matrix::zero(self.field, self.dim, self.dim);
        for i in 0..self.dim {
            if x.at(i, 0).is_zero() {
                continue;
            }
            m = m.add(&self.left_mult[i].scale(x.at(i, 0))).expect("same shape");
        }
        m
    }

    pub fn right_mult_by(&self, x: &Matrix) -> Matrix {
        let mut m = Matrix::zero(self.field, self.dim, self.dim);
        for i in 0..self.dim {
            if x.at(i, 0).is_zero() {
                continue;
            }
            m = m.add(&self.right_mult[i].scale(x.at(i, 0))).expect("same shape");
        }
        m
    }

    /// Product of two elements in coordinates.
    pub fn multiply(&self, x: &Matrix, y: &Matrix) -> Matrix {
        self.left_mult_by(x).mul(y).expect("dimension")
    }

    /// Indices of a generating set (unit excluded); every basis element is a
    /// polynomial in these. Used to cut intertwiner systems down to
    /// generator conditions.
    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    fn compute_generators(&self) -> Vec<usize> {
        let mut span = RowSpan::new(self.field, self.dim);
        let mut elements: Vec<Matrix> = Vec::new();
        let mut gens = Vec::new();
        let unit = self.unit_vector();
        span.insert(col_to_vec(&unit));
        elements.push(unit);
        while span.rank() < self.dim {
            let next = (0..self.dim)
                .find(|&i| {
                    let mut v = vec![self.field.zero(); self.dim];
                    v[i] = self.field.one();
                    !span.contains(&v)
                })
                .expect("span is proper, some basis vector is missing");
            gens.push(next);
            let mut e = Matrix::zero(self.field, self.dim, 1);
            e.set(next, 0, self.field.one());
            // close under multiplication
            let mut worklist = vec![e.clone()];
            elements.push(e);
            while let Some(x) = worklist.pop() {
                let mut new_items = Vec::new();
                for y in &elements {
                    for prod in [self.multiply(&x, y), self.multiply(y, &x)] {
                        if span.insert(col_to_vec(&prod)) {
                            new_items.push(prod);
                        }
                    }
                }
                for n in new_items {
                    worklist.push(n.clone());
                    elements.push(n);
                }
            }
        }
        gens
    }

    /// Full validation: returns every violated identity with its indices.
    /// Associativity is checked as multiplicativity of the left regular
    /// representation: column k of `L_i L_j - L_{e_i e_j}` witnesses the
    /// triple `(e_i e_j) e_k != e_i (e_j e_k)`.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = self.validate_units();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let lhs = self.left_mult[i].mul(&self.left_mult[j]).expect("square");
                let rhs = self.left_mult_by(&Matrix::col(self.field, self.mult[i][j].clone()));
                if lhs != rhs {
                    for k in 0..self.dim {
                        if lhs.column(k) != rhs.column(k) {
                            out.push(Violation::Associativity { i, j, k });
                        }
                    }
                }
            }
        }
        out
    }

    fn validate_units(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let u = self.unit_vector();
        let lu = self.left_mult_by(&u);
        let ru = self.right_mult_by(&u);
        for j in 0..self.dim {
            if !(0..self.dim).all(|k| {
                let expect = if k == j { self.field.one() } else { self.field.zero() };
                *lu.at(k, j) == expect
            }) {
                out.push(Violation::UnitLeft { j });
            }
            if !(0..self.dim).all(|k| {
                let expect = if k == j { self.field.one() } else { self.field.zero() };
                *ru.at(k, j) == expect
            }) {
                out.push(Violation::UnitRight { j });
            }
        }
        out
    }

    /// The opposite algebra: `mult_op[i][j][k] = mult[j][i][k]`.
    pub fn opposite(&self) -> Algebra {
        let mult = (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.mult[j][i].clone()).collect())
            .collect();
        Algebra::new_unchecked(self.field, self.dim, mult, self.unit.clone(), format!("{}^op", self.label))
            .expect("opposite of a valid algebra is valid")
    }

    /// Tensor product algebra with lexicographic basis `e_i (x) f_j`.
    pub fn tensor(&self, other: &Algebra) -> Result<Algebra, FinlinError> {
        if self.field != other.field {
            return Err(FinlinError::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        let (n, m) = (self.dim, other.dim);
        let dim = n * m;
        let zero = self.field.zero();
        let mut mult = vec![vec![vec![zero; dim]; dim]; dim];
        #[allow(clippy::needless_range_loop)]
        for i1 in 0..n {
            for j1 in 0..m {
                for i2 in 0..n {
                    for j2 in 0..m {
                        let a = i1 * m + j1;
                        let b = i2 * m + j2;
                        for k1 in 0..n {
                            let c1 = &self.mult[i1][i2][k1];
                            if c1.is_zero() {
                                continue;
                            }
                            for k2 in 0..m {
                                let c2 = &other.mult[j1][j2][k2];
                                if c2.is_zero() {
                                    continue;
                                }
                                mult[a][b][k1 * m + k2] = c1.mul(c2);
                            }
                        }
                    }
                }
            }
        }
        let mut unit = vec![self.field.zero(); dim];
        #[allow(clippy::needless_range_loop)]
        for i in 0..n {
            for j in 0..m {
                unit[i * m + j] = self.unit[i].mul(&other.unit[j]);
            }
        }
        Algebra::new_unchecked(
            self.field,
            dim,
            mult,
            unit,
            format!("{}(x){}", self.label, other.label),
        )
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.mult[i][j] == self.mult[j][i]))
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Algebra {
        self.label = label.into();
        self
    }
}

fn col_to_vec(m: &Matrix) -> Vec<Scalar> {
    (0..m.rows()).map(|i| m.at(i, 0).clone()).collect()
}

/// Pointer-or-structural equality for shared algebra handles.
pub fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A linear map between algebras that is checked to preserve unit and
/// multiplication. Houses Nakayama automorphisms and Hopf embeddings.
#[derive(Debug, Clone)]
pub struct AlgebraMorphism {
    pub source: Arc<Algebra>,
    pub target: Arc<Algebra>,
    pub matrix: Matrix,
}

impl AlgebraMorphism {
    pub fn new(
        source: Arc<Algebra>,
        target: Arc<Algebra>,
        matrix: Matrix,
    ) -> Result<AlgebraMorphism, FinlinError> {
        let m = AlgebraMorphism { source, target, matrix };
        m.verify()?;
        Ok(m)
    }

    /// Exact check that the map is a unital algebra morphism.
    pub fn verify(&self) -> Result<(), FinlinError> {
        if self.matrix.rows() != self.target.dim() || self.matrix.cols() != self.source.dim() {
            return Err(FinlinError::DimensionMismatch("algebra morphism matrix".into()));
        }
        let u = self.matrix.mul(&self.source.unit_vector()).expect("dims checked");
        if u != self.target.unit_vector() {
            return Err(FinlinError::Semantic("algebra morphism does not preserve the unit".into()));
        }
        let f = self.source.field();
        for i in 0..self.source.dim() {
            for j in 0..self.source.dim() {
                let prod = Matrix::col(f, self.source.structure_tensor()[i][j].clone());
                let lhs = self.matrix.mul(&prod).expect("dims");
                let rhs = self
                    .target
                    .multiply(&self.matrix.column(i), &self.matrix.column(j));
                if lhs != rhs {
                    return Err(FinlinError::Semantic(format!(
                        "algebra morphism not multiplicative at (e{i}, e{j})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }
}

/// Standard example families. Each constructor returns a validated algebra.
pub mod standard {
    use super::*;

    /// Full matrix algebra M_n(k) with basis the matrix units E_{rs},
    /// ordered lexicographically: index(r,s) = r*n + s.
    pub fn matrix_algebra(field: Field, n: usize) -> Algebra {
        assert!(n >= 1);
        let dim = n * n;
        let zero = field.zero();
        let mut mult = vec![vec![vec![zero; dim]; dim]; dim];
        for r in 0..n {
            for s in 0..n {
                for t in 0..n {
                    for u in 0..n {
                        if s == t {
                            mult[r * n + s][t * n + u][r * n + u] = field.one();
                        }
                    }
                }
            }
        }
        let mut unit = vec![field.zero(); dim];
        for r in 0..n {
            unit[r * n + r] = field.one();
        }
        Algebra::new(field, dim, mult, unit, format!("M{n}")).expect("matrix units are associative")
    }

    /// Truncated polynomial algebra k[x]/(x^n) with basis 1, x, ..., x^{n-1}.
    pub fn truncated_polynomial(field: Field, n: usize) -> Algebra {
        assert!(n >= 1);
        let zero = field.zero();
        let mut mult = vec![vec![vec![zero; n]; n]; n];
        #[allow(clippy::needless_range_loop)]
        for i in 0..n {
            for j in 0..n {
                if i + j < n {
                    mult[i][j][i + j] = field.one();
                }
            }
        }
        let mut unit = vec![field.zero(); n];
        unit[0] = field.one();
        Algebra::new(field, n, mult, unit, format!("k[x]/(x^{n})")).expect("truncation is associative")
    }

    /// Upper triangular n x n matrices; basis the matrix units E_{rs} with
    /// r <= s, ordered lexicographically in (r, s).
    pub fn upper_triangular(field: Field, n: usize) -> Algebra {
        assert!(n >= 1);
        let mut idx = Vec::new();
        for r in 0..n {
            for s in r..n {
                idx.push((r, s));
            }
        }
        let dim = idx.len();
        let zero = field.zero();
        let mut mult = vec![vec![vec![zero; dim]; dim]; dim];
        for (a, &(r, s)) in idx.iter().enumerate() {
            for (b, &(t, u)) in idx.iter().enumerate() {
                if s == t {
                    let k = idx.iter().position(|&p| p == (r, u)).expect("r <= s = t <= u");
                    mult[a][b][k] = field.one();
                }
            }
        }
        let mut unit = vec![field.zero(); dim];
        for (a, &(r, s)) in idx.iter().enumerate() {
            if r == s {
                unit[a] = field.one();
            }
        }
        Algebra::new(field, dim, mult, unit, format!("UT{n}")).expect("matrix units are associative")
    }

    /// Group algebra from a multiplication table: `table[i][j] = k` means
    /// g_i g_j = g_k. The table must be a Latin square whose element 0 is the
    /// identity.
    pub fn group_algebra(field: Field, table: &[Vec<usize>]) -> Result<Algebra, FinlinError> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n) {
            return Err(FinlinError::Semantic("group table must be square and nonempty".into()));
        }
        for (i, row) in table.iter().enumerate() {
            let mut seen = vec![false; n];
            for &v in row {
                if v >= n {
                    return Err(FinlinError::Semantic(format!("group table entry {v} out of range")));
                }
                seen[v] = true;
            }
            if seen.iter().any(|s| !s) {
                return Err(FinlinError::Semantic(format!("group table row {i} is not a permutation")));
            }
            if table[i][0] != i || table[0][i] != i {
                return Err(FinlinError::Semantic("group table element 0 must be the identity".into()));
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for row in table {
                seen[row[j]] = true;
            }
            if seen.iter().any(|s| !s) {
                return Err(FinlinError::Semantic(format!("group table column {j} is not a permutation")));
            }
        }
        let zero = field.zero();
        let mut mult = vec![vec![vec![zero; n]; n]; n];
        #[allow(clippy::needless_range_loop)]
        for i in 0..n {
            for j in 0..n {
                mult[i][j][table[i][j]] = field.one();
            }
        }
        let mut unit = vec![field.zero(); n];
        unit[0] = field.one();
        Algebra::new(field, n, mult, unit, format!("k[G{n}]"))
    }

    /// Cyclic group table of order n.
    pub fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
        (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect()
    }

    /// The base field as a 1-dimensional algebra.
    pub fn base_field(field: Field) -> Algebra {
        truncated_polynomial(field, 1).with_label("k")
    }
}

#[cfg(test)]
mod tests {
    use super::standard::*;
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn base_field_validates() {
        let k = base_field(q());
        assert!(k.validate().is_empty());
        assert_eq!(k.dim(), 1);
    }

    #[test]
    fn matrix_algebra_validates_and_matches_units() {
        let a = matrix_algebra(q(), 2);
        assert!(a.validate().is_empty());
        // E01 * E10 = E00, E10 * E01 = E11, E01 * E01 = 0
        let e01 = 1;
        let e10 = 2;
        assert!(a.structure_constant(e01, e10, 0).is_one());
        assert!(a.structure_constant(e10, e01, 3).is_one());
        assert!((0..4).all(|k| a.structure_constant(e01, e01, k).is_zero()));
        assert!(!a.is_commutative());
    }

    #[test]
    fn perturbed_table_reports_violation() {
        let a = matrix_algebra(q(), 2);
        let mut mult = a.structure_tensor().clone();
        mult[1][2][1] = q().one(); // corrupt E01*E10
        let bad = Algebra::assemble(q(), 4, mult, vec![q().one(), q().zero(), q().zero(), q().one()], "bad")
            .unwrap();
        let report = bad.validate();
        assert!(!report.is_empty());
        assert!(report.iter().any(|v| matches!(v, Violation::Associativity { .. })));
        // The strict constructor refuses it.
        assert!(Algebra::new(q(), 4, bad.structure_tensor().clone(), vec![
            q().one(), q().zero(), q().zero(), q().one()
        ], "bad").is_err());
    }

    #[test]
    fn opposite_involution_and_commutative_fixed_point() {
        let d = truncated_polynomial(q(), 2);
        assert_eq!(d.opposite().structure_tensor(), d.structure_tensor());
        let a = upper_triangular(q(), 2);
        let aop = a.opposite();
        assert!(aop.validate().is_empty());
        assert_eq!(aop.opposite().structure_tensor(), a.structure_tensor());
    }

    #[test]
    fn m2_opposite_iso_via_transpose() {
        // transpose is an isomorphism M2 -> M2^op: (AB)^T = B^T A^T
        let a = Arc::new(matrix_algebra(q(), 2));
        let aop = Arc::new(a.opposite());
        let n = 2;
        // E_{rs} -> E_{sr}: permutation on indices r*n+s -> s*n+r
        let mut m = Matrix::zero(q(), 4, 4);
        for r in 0..n {
            for s in 0..n {
                m.set(s * n + r, r * n + s, q().one());
            }
        }
        let phi = AlgebraMorphism::new(a, aop, m);
        assert!(phi.is_ok());
    }

    #[test]
    fn tensor_algebra_unit_and_dims() {
        let a = matrix_algebra(q(), 2);
        let k = base_field(q());
        let t = k.tensor(&a).unwrap();
        assert_eq!(t.dim(), 4);
        // k (x) A = A up to relabeling: structure constants agree
        assert_eq!(t.structure_tensor(), a.structure_tensor());
        let big = a.tensor(&a.opposite()).unwrap();
        assert_eq!(big.dim(), 16);
        assert!(big.validate().is_empty());
    }

    #[test]
    fn group_algebra_c2_and_bad_tables() {
        let c2 = group_algebra(q(), &cyclic_table(2)).unwrap();
        assert!(c2.validate().is_empty());
        assert!(c2.structure_constant(1, 1, 0).is_one());
        // permutation matrices: each left-multiplication matrix is a permutation
        for i in 0..2 {
            let l = c2.left_mult(i);
            for j in 0..2 {
                let ones = (0..2).filter(|&k| l.at(k, j).is_one()).count();
                let zeros = (0..2).filter(|&k| l.at(k, j).is_zero()).count();
                assert_eq!((ones, zeros), (1, 1));
            }
        }
        assert!(group_algebra(q(), &[vec![0, 1], vec![1, 1]]).is_err());
        assert!(group_algebra(q(), &[vec![1, 0], vec![0, 1]]).is_err());
    }

    #[test]
    fn upper_triangular_dim_and_noncommutativity() {
        let u = upper_triangular(q(), 2);
        assert_eq!(u.dim(), 3);
        assert!(u.validate().is_empty());
        assert!(!u.is_commutative());
    }

    #[test]
    fn generators_generate() {
        for a in [matrix_algebra(q(), 3), upper_triangular(q(), 3), truncated_polynomial(q(), 4)] {
            let gens = a.generator_indices();
            assert!(!gens.is_empty());
            assert!(gens.len() < a.dim(), "generating set should beat the basis for {a:?}");
        }
    }

    #[test]
    fn opposite_of_valid_validates() {
        for a in [matrix_algebra(q(), 2), upper_triangular(q(), 2), truncated_polynomial(q(), 3)] {
            assert!(a.validate().is_empty());
            assert!(a.opposite().validate().is_empty());
        }
    }
}
