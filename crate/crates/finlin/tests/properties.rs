//! Property tests for the library's structural invariants: exact solver identities,
//! Kronecker algebra, duality exactness, free-module hom counts, and the
//! unit constraint of the tensor over an algebra.

use finlin::algebra::standard::*;
use finlin::exact::{solve_linear, Field, Matrix};
use finlin::modrep::{
    hom_basis, module_iso, tensor_bi_left, Bimodule, LeftModule, Morphism, SearchConfig,
};
use proptest::prelude::*;
use std::sync::Arc;

fn q() -> Field {
    Field::Rationals
}

fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(-4i64..=4, rows * cols).prop_map(move |v| {
        let f = Field::Rationals;
        Matrix::from_fn(f, rows, cols, |i, j| f.from_i64(v[i * cols + j]))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn solve_returns_exact_solutions(a in small_matrix(4, 5), x0 in small_matrix(5, 1)) {
        let b = a.mul(&x0).unwrap();
        let sol = solve_linear(&a, &b).unwrap();
        let xp = sol.particular.expect("constructed to be consistent");
        prop_assert_eq!(a.mul(&xp).unwrap(), b);
        for k in &sol.kernel_basis {
            prop_assert!(a.mul(k).unwrap().is_zero());
        }
        // rank-nullity
        prop_assert_eq!(a.rank() + sol.kernel_basis.len(), a.cols());
    }

    #[test]
    fn kronecker_is_associative_and_bilinear(
        a in small_matrix(2, 2),
        b in small_matrix(2, 3),
        c in small_matrix(3, 2),
        d in small_matrix(2, 3),
    ) {
        let left = a.kronecker(&b).unwrap().kronecker(&c).unwrap();
        let right = a.kronecker(&b.kronecker(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        // bilinearity in the second argument
        let sum = a.kronecker(&b.add(&d).unwrap()).unwrap();
        let split = a.kronecker(&b).unwrap().add(&a.kronecker(&d).unwrap()).unwrap();
        prop_assert_eq!(sum, split);
        // mixed-product property against multiplication:
        // (a (x) b)(c' (x) e) = ac' (x) be with compatible shapes
        let c_sq = Matrix::from_fn(q(), 2, 2, |i, j| c.at(j, i).clone());
        let e = d.transpose(); // 3 x 2
        let m1 = a.kronecker(&b).unwrap().mul(&c_sq.kronecker(&e).unwrap()).unwrap();
        let m2 = a.mul(&c_sq).unwrap().kronecker(&b.mul(&e).unwrap()).unwrap();
        prop_assert_eq!(m1, m2);
    }

    #[test]
    fn fp_matrix_inverse_round_trip(v in proptest::collection::vec(0i64..7, 9)) {
        let f = Field::Prime(7);
        let m = Matrix::from_fn(f, 3, 3, |i, j| f.from_i64(v[i * 3 + j]));
        if let Some(inv) = m.inverse() {
            prop_assert!(m.mul(&inv).unwrap().is_identity());
            prop_assert!(inv.mul(&m).unwrap().is_identity());
            prop_assert!(!m.determinant().is_zero());
        } else {
            prop_assert!(m.determinant().is_zero());
        }
    }
}

/// dim ker(f^T on duals) = dim coker(f) for morphisms between corpus
/// modules (duality exactness at the level of dimensions).
#[test]
fn duality_exactness_dimensions() {
    let a = Arc::new(upper_triangular(q(), 2));
    let reg = LeftModule::regular(a.clone());
    let co = Bimodule::coregular(a.clone()).as_left_module();
    for (src, tgt) in [(&reg, &co), (&co, &reg), (&reg, &reg)] {
        let homs = hom_basis(src, tgt).unwrap();
        for b in homs.basis() {
            let coker = tgt.dim() - b.rank();
            let ker_dual = b.transpose().kernel_basis().len();
            assert_eq!(coker, ker_dual);
        }
    }
}

/// Free-module Yoneda check: hom_basis(A, m) has dim m for every corpus
/// module, and A (x)_A m = m with witness.
#[test]
fn free_module_hom_and_tensor_unit() {
    let algebras: Vec<Arc<finlin::algebra::Algebra>> = vec![
        Arc::new(matrix_algebra(q(), 2)),
        Arc::new(upper_triangular(q(), 2)),
        Arc::new(truncated_polynomial(q(), 3)),
        Arc::new(group_algebra(q(), &cyclic_table(3)).unwrap()),
    ];
    for a in algebras {
        let reg = LeftModule::regular(a.clone());
        let co = Bimodule::coregular(a.clone()).as_left_module();
        for m in [&reg, &co] {
            assert_eq!(hom_basis(&reg, m).unwrap().dim(), m.dim(), "{}", a.label());
            let (t, _) = tensor_bi_left(&Bimodule::regular(a.clone()), m).unwrap();
            let out = module_iso(&t, m, &SearchConfig::default()).unwrap();
            assert!(out.is_witnessed(), "A (x)_A m = m over {}", a.label());
        }
    }
}

/// Hom between space-tensored modules: dim Hom(m (x) v, m' (x) v') =
/// (dim v)(dim v') dim Hom(m, m').
#[test]
fn hom_of_space_tensors() {
    let a = Arc::new(truncated_polynomial(q(), 2));
    let m = LeftModule::regular(a.clone());
    let k = LeftModule::new(
        a.clone(),
        1,
        vec![Matrix::identity(q(), 1), Matrix::zero(q(), 1, 1)],
        "k",
    )
    .unwrap();
    let base = hom_basis(&m, &k).unwrap().dim();
    for (v, w) in [(2usize, 3usize), (1, 4), (3, 2)] {
        let lhs = hom_basis(&m.tensor_space(v), &k.tensor_space(w)).unwrap().dim();
        assert_eq!(lhs, v * w * base);
    }
}

/// Every morphism produced by hom_basis intertwines exactly; spot-check by
/// wrapping basis elements in verified morphisms.
#[test]
fn hom_basis_elements_are_morphisms() {
    let a = Arc::new(matrix_algebra(q(), 2));
    let reg = LeftModule::regular(a.clone());
    let co = Bimodule::coregular(a).as_left_module();
    let h = hom_basis(&reg, &co).unwrap();
    for b in h.basis() {
        assert!(Morphism::new(reg.clone(), co.clone(), b.clone()).is_ok());
    }
}

/// Lex evaluation at the co-regular bimodule recovers the defining
/// bimodule, for a sample of corpus representations.
#[test]
fn lex_reps_recover_defining_bimodule() {
    use finlin::functor::{eval_lex_bimodule, LexRep};
    for alg in [matrix_algebra(q(), 2), truncated_polynomial(q(), 2), upper_triangular(q(), 2)] {
        let a = Arc::new(alg);
        for f in [LexRep::identity(a.clone()), LexRep::nakayama(a.clone())] {
            let (fav, _) = eval_lex_bimodule(&f, &Bimodule::coregular(a.clone())).unwrap();
            let out = module_iso(&fav.dual(), f.bimodule(), &SearchConfig::default()).unwrap();
            assert!(out.is_witnessed(), "{}", a.label());
        }
    }
}
