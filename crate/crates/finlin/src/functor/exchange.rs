//! Canonical comparison isomorphisms for the functor calculus: currying of
//! composed hom functors, associativity of composed tensor functors, the
//! exchange isomorphism between the lex Nakayama functor and double left
//! adjoints, and its coherence under composition. Every map here is built
//! from explicit formulas on the computed carriers; nothing is searched.

use super::eval::{eval_lex, eval_rex, LexEval, RexEval};
use super::{compose_lex, double_left_adjoint, LexRep, RexRep};
use crate::error::FinlinError;
use crate::exact::Matrix;
use crate::modrep::{tensor_bi_bi, Bimodule, LeftModule, Morphism};

/// Currying `F2(F1(x)) -> (F2 o F1)(x)`: the canonical isomorphism
/// `Hom_B(M2, Hom_A(M1, x)) = Hom_A(M1 (x)_B M2, x)`, `psi -> (m (x) n ->
/// psi(n)(m))`, expressed between the computed carriers.
pub struct CurryIso {
    pub inner_ev: LexEval,
    pub outer_ev: LexEval,
    pub composed: LexRep,
    pub composed_ev: LexEval,
    pub map: Morphism<LeftModule>,
}

pub fn curry_iso(outer: &LexRep, inner: &LexRep, x: &LeftModule) -> Result<CurryIso, FinlinError> {
    let inner_ev = eval_lex(inner, x)?;
    let outer_ev = eval_lex(outer, &inner_ev.module)?;
    let (w, ts) = tensor_bi_bi(inner.bimodule(), outer.bimodule())?;
    let composed = LexRep::new(w);
    let composed_ev = eval_lex(&composed, x)?;
    let field = x.field();
    let dm1 = inner.bimodule().dim();
    let dm2 = outer.bimodule().dim();
    let mut map = Matrix::zero(field, composed_ev.hom.dim(), outer_ev.hom.dim());
    for (j, psi) in outer_ev.hom.basis().iter().enumerate() {
        // psi: h1-carrier <- M2 coordinates, entries psi[l][n]
        // big: x <- M1 (x) M2 raw, column (m, n) = sum_l psi[l][n] phi_l(:, m)
        let mut big = Matrix::zero(field, x.dim(), dm1 * dm2);
        for n in 0..dm2 {
            for (l, phi) in inner_ev.hom.basis().iter().enumerate() {
                let c = psi.at(l, n);
                if c.is_zero() {
                    continue;
                }
                for m in 0..dm1 {
                    for r in 0..x.dim() {
                        let v = big.at(r, m * dm2 + n).add(&phi.at(r, m).mul(c));
                        big.set(r, m * dm2 + n, v);
                    }
                }
            }
        }
        let h = big.mul(&ts.lift)?;
        let coords = composed_ev
            .hom
            .coords(&h)
            .ok_or_else(|| FinlinError::Semantic("curried map not a module morphism".into()))?;
        for (i, c) in coords.into_iter().enumerate() {
            map.set(i, j, c);
        }
    }
    let map = Morphism::new(outer_ev.module.clone(), composed_ev.module.clone(), map)?;
    if map.matrix.inverse().is_none() {
        return Err(FinlinError::Semantic("curry comparison is not invertible".into()));
    }
    Ok(CurryIso { inner_ev, outer_ev, composed, composed_ev, map })
}

/// Associativity `G2(G1(x)) -> (G2 o G1)(x)`: `n2 (x) [n1 (x) m] ->
/// [n2 (x) n1] (x) m` through the quotient carriers.
pub struct RexAssocIso {
    pub inner_ev: RexEval,
    pub outer_ev: RexEval,
    pub composed: RexRep,
    pub composed_ev: RexEval,
    pub map: Morphism<LeftModule>,
}

pub fn rex_assoc_iso(
    outer: &RexRep,
    inner: &RexRep,
    x: &LeftModule,
) -> Result<RexAssocIso, FinlinError> {
    let inner_ev = eval_rex(inner, x)?;
    let outer_ev = eval_rex(outer, &inner_ev.module)?;
    let (n21, ts_n) = tensor_bi_bi(outer.bimodule(), inner.bimodule())?;
    let composed = RexRep::new(n21);
    let composed_ev = eval_rex(&composed, x)?;
    let field = x.field();
    let dn2 = outer.bimodule().dim();
    let dx = x.dim();
    // Q2 --L2--> N2 (x) Q1 --I (x) L1--> N2 (x) N1 (x) x
    //   --P_N (x) I--> N21 (x) x --P_c--> Qc
    let step1 = Matrix::identity(field, dn2)
        .kronecker(&inner_ev.tensor.lift)?
        .mul(&outer_ev.tensor.lift)?;
    let step2 = ts_n.projection.kronecker(&Matrix::identity(field, dx))?.mul(&step1)?;
    let mat = composed_ev.tensor.projection.mul(&step2)?;
    let map = Morphism::new(outer_ev.module.clone(), composed_ev.module.clone(), mat)?;
    if map.matrix.inverse().is_none() {
        return Err(FinlinError::Semantic("rex associativity comparison is not invertible".into()));
    }
    Ok(RexAssocIso { inner_ev, outer_ev, composed, composed_ev, map })
}

/// The canonical exchange isomorphism at one object:
/// `F^lla(pihat_A(x)) -> Hom_A(M (x)_B B^v, x)`, where the target carrier is
/// the evaluation of the composed representation `pihat_B o F`. On
/// generators: `zeta (x) psi -> (w -> psi(a -> zeta(a.w)))`.
pub struct ExchangeWitness {
    pub pihat_ev: LexEval,
    pub dla: RexRep,
    pub rhs_ev: RexEval,
    pub composed: LexRep,
    pub composed_ev: LexEval,
    pub map: Morphism<LeftModule>,
}

pub fn exchange_witness(f: &LexRep, x: &LeftModule) -> Result<ExchangeWitness, FinlinError> {
    let a = f.source().clone();
    let b = f.target().clone();
    let pihat_a = LexRep::nakayama(a.clone());
    let pihat_ev = eval_lex(&pihat_a, x)?;
    let dla = double_left_adjoint(f)?;
    let rhs_ev = eval_rex(&dla, &pihat_ev.module)?;
    let composed = compose_lex(&LexRep::nakayama(b.clone()), f)?;
    let composed_ev = eval_lex(&composed, x)?;
    // W = M (x)_B B^v is the defining bimodule of both `composed` and the
    // dual of dla's; its left A-action drives the pairing below.
    let w = composed.bimodule();
    let dw = w.dim();
    let h4 = pihat_ev.hom.dim();
    let field = x.field();
    let na = a.dim();
    let mut mat = Matrix::zero(field, composed_ev.hom.dim(), rhs_ev.module.dim());
    for r in 0..rhs_ev.module.dim() {
        // lift carrier basis vector r to coordinates on W^v (x) H4
        let lifted = rhs_ev.tensor.lift.column(r);
        // h_r : W -> x
        let mut h = Matrix::zero(field, x.dim(), dw);
        for u in 0..dw {
            for v in 0..h4 {
                let c = lifted.at(u * h4 + v, 0);
                if c.is_zero() {
                    continue;
                }
                let psi = &pihat_ev.hom.basis()[v];
                // column wi of h_{u,v}: sum_a psi(:, a) * (lambda^W_a)[u][wi]
                for wi in 0..dw {
                    for ai in 0..na {
                        let coef = w.left_action(ai).at(u, wi).mul(c);
                        if coef.is_zero() {
                            continue;
                        }
                        for row in 0..x.dim() {
                            let val = h.at(row, wi).add(&psi.at(row, ai).mul(&coef));
                            h.set(row, wi, val);
                        }
                    }
                }
            }
        }
        let coords = composed_ev
            .hom
            .coords(&h)
            .ok_or_else(|| FinlinError::Semantic("exchange image is not a module morphism".into()))?;
        for (i, cc) in coords.into_iter().enumerate() {
            mat.set(i, r, cc);
        }
    }
    let map = Morphism::new(rhs_ev.module.clone(), composed_ev.module.clone(), mat)?;
    if map.matrix.inverse().is_none() {
        return Err(FinlinError::Semantic("exchange comparison is not invertible".into()));
    }
    Ok(ExchangeWitness { pihat_ev, dla, rhs_ev, composed, composed_ev, map })
}

/// Canonical middle-associativity on defining bimodules:
/// `(x (x)_B y) (x)_C z  ->  x (x)_B (y (x)_C z)`.
pub struct TensorAssoc {
    pub left: Bimodule,
    pub right: Bimodule,
    pub iso: Morphism<Bimodule>,
}

pub fn tensor_assoc(x: &Bimodule, y: &Bimodule, z: &Bimodule) -> Result<TensorAssoc, FinlinError> {
    let (xy, ts_xy) = tensor_bi_bi(x, y)?;
    let (left, ts_l) = tensor_bi_bi(&xy, z)?;
    let (yz, ts_yz) = tensor_bi_bi(y, z)?;
    let (right, ts_r) = tensor_bi_bi(x, &yz)?;
    let field = x.field();
    let step1 = ts_xy.lift.kronecker(&Matrix::identity(field, z.dim()))?.mul(&ts_l.lift)?;
    let step2 = Matrix::identity(field, x.dim()).kronecker(&ts_yz.projection)?.mul(&step1)?;
    let mat = ts_r.projection.mul(&step2)?;
    let iso = Morphism::new(left.clone(), right.clone(), mat)?;
    if iso.matrix.inverse().is_none() {
        return Err(FinlinError::Semantic("tensor associativity is not invertible".into()));
    }
    Ok(TensorAssoc { left, right, iso })
}

/// The canonical comparison `(F2)^lla o (F1)^lla -> (F2 o F1)^lla` on
/// defining bimodules: `W2^v (x)_B W1^v -> W12^v` with
/// `zeta2 (x) zeta1 -> (w12 -> zeta1(m1 (x) (b -> zeta2((b.m2) (x) xi))))`.
pub fn dla_compose_iso(f2: &LexRep, f1: &LexRep) -> Result<Morphism<Bimodule>, FinlinError> {
    let b = f1.target().clone();
    let c = f2.target().clone();
    let field = f1.bimodule().field();
    let m1 = f1.bimodule();
    let m2 = f2.bimodule();
    let (w1, ts_w1) = tensor_bi_bi(m1, &Bimodule::coregular(b.clone()))?;
    let (w2, ts_w2) = tensor_bi_bi(m2, &Bimodule::coregular(c.clone()))?;
    let (m12, ts_m12) = tensor_bi_bi(m1, m2)?;
    let (w12, ts_w12) = tensor_bi_bi(&m12, &Bimodule::coregular(c.clone()))?;
    let n2 = w2.dual();
    let n1 = w1.dual();
    let (n21, ts_n21) = tensor_bi_bi(&n2, &n1)?;
    let n12 = w12.dual();
    let (dm1, dm2) = (m1.dim(), m2.dim());
    let (nb, nc) = (b.dim(), c.dim());
    // total raw lift: W12 carrier -> M1 (x) M2 (x) C^v coordinates
    let raw_lift = ts_m12
        .lift
        .kronecker(&Matrix::identity(field, nc))?
        .mul(&ts_w12.lift)?;
    let mut raw_map = Matrix::zero(field, w12.dim(), w2.dim() * w1.dim());
    for u2 in 0..w2.dim() {
        // Beta[b][(m2, xi)] = (P_W2 (lambda^{M2}_b (x) I))[u2][(m2, xi)]
        let mut beta = Matrix::zero(field, nb, dm2 * nc);
        for bi in 0..nb {
            let lam = m2.left_action(bi).kronecker(&Matrix::identity(field, nc))?;
            let row = ts_w2.projection.mul(&lam)?;
            for col in 0..dm2 * nc {
                beta.set(bi, col, row.at(u2, col).clone());
            }
        }
        for u1 in 0..w1.dim() {
            // row of P_W1 at u1, reshaped as dm1 x nb
            let mut p1row = Matrix::zero(field, dm1, nb);
            for m in 0..dm1 {
                for bi in 0..nb {
                    p1row.set(m, bi, ts_w1.projection.at(u1, m * nb + bi).clone());
                }
            }
            // r over raw (m1, m2, xi): (dm1 x (dm2*nc)) flattened row-major
            let r = p1row.mul(&beta)?;
            let r_flat = r.vectorize(); // length dm1*dm2*nc, row-major = raw index
            // eta over W12 carrier: eta[w] = r . raw_lift(:, w)
            let eta = r_flat.transpose().mul(&raw_lift)?;
            for w in 0..w12.dim() {
                raw_map.set(w, u2 * w1.dim() + u1, eta.at(0, w).clone());
            }
        }
    }
    let mat = raw_map.mul(&ts_n21.lift)?;
    let iso = Morphism::new(n21, n12, mat)?;
    if iso.matrix.inverse().is_none() {
        return Err(FinlinError::Semantic("double-left-adjoint comparison is not invertible".into()));
    }
    Ok(iso)
}

/// Coherence of the exchange isomorphism under composition: the direct
/// witness for `F2 o F1` equals the composite of the witnesses for F2 and
/// F1, up to the canonical middle-associativity identifications. Everything
/// is compared as exact matrices between deterministic carriers at the
/// object x.
pub fn verify_exchange_coherence(
    f2: &LexRep,
    f1: &LexRep,
    x: &LeftModule,
) -> Result<bool, FinlinError> {
    use super::eval::{eval_lex as ev_lex, eval_rex as ev_rex, eval_rex_morphism};
    let a = f1.source().clone();
    let f12 = compose_lex(f2, f1)?;
    // shared carriers
    let pihat_a = LexRep::nakayama(a.clone());
    let z_ev = ev_lex(&pihat_a, x)?;
    let d1 = double_left_adjoint(f1)?;
    let d2 = double_left_adjoint(f2)?;
    let d12 = double_left_adjoint(&f12)?;
    let a_ev = ev_rex(&d1, &z_ev.module)?;
    let b_ev = ev_rex(&d2, &a_ev.module)?;
    let direct_ev = ev_rex(&d12, &z_ev.module)?;
    // domain-side canonical map iota_x : F2^lla F1^lla pihat(x) -> F12^lla pihat(x)
    let assoc = rex_assoc_iso(&d2, &d1, &z_ev.module)?;
    let iota_bim = dla_compose_iso(f2, f1)?;
    let comp_ev = assoc.composed_ev;
    let idz = Matrix::identity(x.field(), z_ev.module.dim());
    let iota_at_z = direct_ev
        .tensor
        .projection
        .mul(&iota_bim.matrix.kronecker(&idz)?)?
        .mul(&comp_ev.tensor.lift)?;
    let iota_x = iota_at_z.mul(&assoc.map.matrix)?;
    // direct witness
    let theta12 = exchange_witness(&f12, x)?;
    let lhs = theta12.map.matrix.mul(&iota_x)?;
    // composed chain
    let theta1 = exchange_witness(f1, x)?;
    if theta1.rhs_ev.module.actions() != a_ev.module.actions() {
        return Err(FinlinError::Semantic("carrier mismatch in coherence chain".into()));
    }
    let c_ev = ev_rex(&d2, &theta1.composed_ev.module)?;
    let c1 = eval_rex_morphism(&d2, &theta1.map, &b_ev, &c_ev)?;
    let curry1 = curry_iso(&LexRep::nakayama(f1.target().clone()), f1, x)?;
    let curry1_inv = curry1
        .map
        .inverse()
        .ok_or_else(|| FinlinError::Semantic("curry comparison not invertible".into()))?;
    let e_ev = ev_rex(&d2, &curry1.outer_ev.module)?;
    let c2 = eval_rex_morphism(&d2, &curry1_inv, &c_ev, &e_ev)?;
    let y = curry1.inner_ev.module.clone();
    let theta2 = exchange_witness(f2, &y)?;
    let curry2 = curry_iso(&theta2.composed, f1, x)?;
    let coreg_c = Bimodule::coregular(f2.target().clone());
    let ta = tensor_assoc(f1.bimodule(), f2.bimodule(), &coreg_c)?;
    let hom_alpha = hom_precompose(&curry2.composed_ev, &theta12.composed_ev, &ta.iso.matrix, x.dim())?;
    let rhs = hom_alpha
        .mul(&curry2.map.matrix)?
        .mul(&theta2.map.matrix)?
        .mul(&c2.matrix)?
        .mul(&c1.matrix)?;
    Ok(lhs == rhs)
}

/// Induced map on lex evaluations from a morphism of defining bimodules
/// (contravariant: `Hom(alpha, x)`).
pub fn hom_precompose(
    source_rep_ev: &LexEval,
    target_rep_ev: &LexEval,
    alpha: &Matrix,
    x_dim: usize,
) -> Result<Matrix, FinlinError> {
    let _ = x_dim;
    let mut mat = Matrix::zero(
        alpha.field(),
        target_rep_ev.hom.dim(),
        source_rep_ev.hom.dim(),
    );
    for (i, phi) in source_rep_ev.hom.basis().iter().enumerate() {
        let moved = phi.mul(alpha)?;
        let coords = target_rep_ev
            .hom
            .coords(&moved)
            .ok_or_else(|| FinlinError::Semantic("precomposed map leaves the hom space".into()))?;
        for (j, c) in coords.into_iter().enumerate() {
            mat.set(j, i, c);
        }
    }
    Ok(mat)
}
