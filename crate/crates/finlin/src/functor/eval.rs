//! Evaluation of functor representations on modules and morphisms, with
//! deterministic carriers: a lex evaluation carries the computed hom basis,
//! a rex evaluation the tensor quotient with projection and lift. These
//! carriers are what natural-isomorphism witnesses are expressed against.

use super::{LexRep, Pipeline, Rep, RexRep};
use crate::algebra::same_algebra;
use crate::error::FinlinError;
use crate::exact::Matrix;
use crate::modrep::{hom_basis, tensor_bi_left, Bimodule, HomSpace, LeftModule, Morphism, TensorSpace};

/// Carrier of `Hom_A(M, x)` with its chosen basis.
#[derive(Debug, Clone)]
pub struct LexEval {
    pub module: LeftModule,
    pub hom: HomSpace,
}

/// Carrier of `N (x)_A x` with its projection and lift.
#[derive(Debug, Clone)]
pub struct RexEval {
    pub module: LeftModule,
    pub tensor: TensorSpace,
}

/// Evaluates a left exact representation on a left module.
pub fn eval_lex(f: &LexRep, x: &LeftModule) -> Result<LexEval, FinlinError> {
    if !same_algebra(f.source(), x.algebra()) {
        return Err(FinlinError::AlgebraMismatch(format!(
            "eval_lex: functor over {}, module over {}",
            f.source().label(),
            x.algebra().label()
        )));
    }
    let m_left = f.bimodule().as_left_module();
    let hom = hom_basis(&m_left, x)?;
    let b = f.target();
    let dim = hom.dim();
    let mut action = Vec::with_capacity(b.dim());
    for bi in 0..b.dim() {
        // (b . phi) = phi o (right action of b on M)
        let rb = f.bimodule().right_action(bi);
        let mut mat = Matrix::zero(x.field(), dim, dim);
        for (i, phi) in hom.basis().iter().enumerate() {
            let moved = phi.mul(rb)?;
            let coords = hom.coords(&moved).ok_or_else(|| {
                FinlinError::Semantic("hom space is not stable under the module action".into())
            })?;
            for (j, c) in coords.into_iter().enumerate() {
                mat.set(j, i, c);
            }
        }
        action.push(mat);
    }
    let module = LeftModule::new(
        b.clone(),
        dim,
        action,
        format!("Hom({},{})", f.bimodule().label(), x.label()),
    )?;
    Ok(LexEval { module, hom })
}

/// Evaluates a lex representation on a morphism: post-composition in the
/// chosen bases.
pub fn eval_lex_morphism(
    _f: &LexRep,
    u: &Morphism<LeftModule>,
    ev_src: &LexEval,
    ev_tgt: &LexEval,
) -> Result<Morphism<LeftModule>, FinlinError> {
    let mut mat = Matrix::zero(u.matrix.field(), ev_tgt.hom.dim(), ev_src.hom.dim());
    for (i, phi) in ev_src.hom.basis().iter().enumerate() {
        let moved = u.matrix.mul(phi)?;
        let coords = ev_tgt
            .hom
            .coords(&moved)
            .ok_or_else(|| FinlinError::Semantic("image not in target hom space".into()))?;
        for (j, c) in coords.into_iter().enumerate() {
            mat.set(j, i, c);
        }
    }
    Morphism::new(ev_src.module.clone(), ev_tgt.module.clone(), mat)
}

/// Evaluates a lex representation at a bimodule, installing the right
/// action by functoriality (the right multiplications are module maps).
pub fn eval_lex_bimodule(f: &LexRep, x: &Bimodule) -> Result<(Bimodule, LexEval), FinlinError> {
    let ev = eval_lex(f, &x.as_left_module())?;
    let c = x.right_algebra();
    let mut right = Vec::with_capacity(c.dim());
    for ci in 0..c.dim() {
        let rc = x.right_action(ci);
        let mut mat = Matrix::zero(x.field(), ev.hom.dim(), ev.hom.dim());
        for (i, phi) in ev.hom.basis().iter().enumerate() {
            let moved = rc.mul(phi)?;
            let coords = ev
                .hom
                .coords(&moved)
                .ok_or_else(|| FinlinError::Semantic("right action does not preserve hom space".into()))?;
            for (j, cc) in coords.into_iter().enumerate() {
                mat.set(j, i, cc);
            }
        }
        right.push(mat);
    }
    let bim = Bimodule::new(
        f.target().clone(),
        c.clone(),
        ev.hom.dim(),
        ev.module.actions().to_vec(),
        right,
        format!("Hom({},{})", f.bimodule().label(), x.label()),
    )?;
    Ok((bim, ev))
}

/// Evaluates a right exact representation on a left module.
pub fn eval_rex(g: &RexRep, x: &LeftModule) -> Result<RexEval, FinlinError> {
    if !same_algebra(g.source(), x.algebra()) {
        return Err(FinlinError::AlgebraMismatch(format!(
            "eval_rex: functor over {}, module over {}",
            g.source().label(),
            x.algebra().label()
        )));
    }
    let (module, tensor) = tensor_bi_left(g.bimodule(), x)?;
    Ok(RexEval { module, tensor })
}

/// Evaluates a rex representation on a morphism: `id_N (x) u` descended to
/// the quotients.
pub fn eval_rex_morphism(
    g: &RexRep,
    u: &Morphism<LeftModule>,
    ev_src: &RexEval,
    ev_tgt: &RexEval,
) -> Result<Morphism<LeftModule>, FinlinError> {
    let idn = Matrix::identity(u.matrix.field(), g.bimodule().dim());
    let outer = idn.kronecker(&u.matrix)?;
    let mat = ev_tgt.tensor.projection.mul(&outer)?.mul(&ev_src.tensor.lift)?;
    Morphism::new(ev_src.module.clone(), ev_tgt.module.clone(), mat)
}

/// Evaluates a rex representation at a bimodule, installing the right
/// action by functoriality.
pub fn eval_rex_bimodule(g: &RexRep, x: &Bimodule) -> Result<(Bimodule, RexEval), FinlinError> {
    let ev = eval_rex(g, &x.as_left_module())?;
    let c = x.right_algebra();
    let idn = Matrix::identity(x.field(), g.bimodule().dim());
    let mut right = Vec::with_capacity(c.dim());
    for ci in 0..c.dim() {
        let outer = idn.kronecker(x.right_action(ci))?;
        right.push(ev.tensor.descend(&outer));
    }
    let bim = Bimodule::new(
        g.target().clone(),
        c.clone(),
        ev.module.dim(),
        ev.module.actions().to_vec(),
        right,
        format!("{}(x){}", g.bimodule().label(), x.label()),
    )?;
    Ok((bim, ev))
}

/// One evaluated stage of a pipeline.
#[derive(Debug, Clone)]
pub enum StageEval {
    Lex(LexEval),
    Rex(RexEval),
}

impl StageEval {
    pub fn module(&self) -> &LeftModule {
        match self {
            StageEval::Lex(e) => &e.module,
            StageEval::Rex(e) => &e.module,
        }
    }
}

/// A pipeline evaluated at one object, keeping every intermediate carrier.
#[derive(Debug, Clone)]
pub struct PipelineEval {
    pub module: LeftModule,
    pub stages: Vec<StageEval>,
}

pub fn eval_pipeline(p: &Pipeline, x: &LeftModule) -> Result<PipelineEval, FinlinError> {
    let mut cur = x.clone();
    let mut stages = Vec::with_capacity(p.stages.len());
    for rep in &p.stages {
        let stage = match rep {
            Rep::Lex(f) => {
                let ev = eval_lex(f, &cur)?;
                cur = ev.module.clone();
                StageEval::Lex(ev)
            }
            Rep::Rex(g) => {
                let ev = eval_rex(g, &cur)?;
                cur = ev.module.clone();
                StageEval::Rex(ev)
            }
        };
        stages.push(stage);
    }
    Ok(PipelineEval { module: cur, stages })
}

pub fn eval_pipeline_morphism(
    p: &Pipeline,
    u: &Morphism<LeftModule>,
    src_ev: &PipelineEval,
    tgt_ev: &PipelineEval,
) -> Result<Morphism<LeftModule>, FinlinError> {
    let mut cur = u.clone();
    for ((rep, sev), tev) in p.stages.iter().zip(&src_ev.stages).zip(&tgt_ev.stages) {
        cur = match (rep, sev, tev) {
            (Rep::Lex(f), StageEval::Lex(se), StageEval::Lex(te)) => {
                eval_lex_morphism(f, &cur, se, te)?
            }
            (Rep::Rex(g), StageEval::Rex(se), StageEval::Rex(te)) => {
                eval_rex_morphism(g, &cur, se, te)?
            }
            _ => return Err(FinlinError::Precondition("stage evals do not match pipeline".into())),
        };
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::standard::*;
    use crate::exact::Field;
    use crate::functor::{compose_lex, compose_rex, LexRep, RexRep};
    use crate::modrep::{module_iso, SearchConfig};
    use std::sync::Arc;

    fn q() -> Field {
        Field::Rationals
    }

    fn m2_simple(a: &Arc<crate::algebra::Algebra>) -> LeftModule {
        let f = a.field();
        let action: Vec<Matrix> = (0..2)
            .flat_map(|r| {
                (0..2).map(move |s| {
                    Matrix::from_fn(f, 2, 2, move |i, j| if i == r && j == s { f.one() } else { f.zero() })
                })
            })
            .collect();
        LeftModule::new(a.clone(), 2, action, "S").unwrap()
    }

    #[test]
    fn identity_lex_rep_acts_as_identity() {
        for alg in [matrix_algebra(q(), 2), upper_triangular(q(), 2)] {
            let a = Arc::new(alg);
            let id = LexRep::identity(a.clone());
            for x in [LeftModule::regular(a.clone())] {
                let ev = eval_lex(&id, &x).unwrap();
                assert_eq!(ev.module.dim(), x.dim());
                let out = module_iso(&ev.module, &x, &SearchConfig::default()).unwrap();
                assert!(out.is_witnessed());
            }
        }
    }

    #[test]
    fn identity_rex_rep_acts_as_identity() {
        let a = Arc::new(upper_triangular(q(), 2));
        let id = RexRep::identity(a.clone());
        let x = LeftModule::regular(a);
        let ev = eval_rex(&id, &x).unwrap();
        assert_eq!(ev.module.dim(), x.dim());
        let out = module_iso(&ev.module, &x, &SearchConfig::default()).unwrap();
        assert!(out.is_witnessed());
    }

    #[test]
    fn lex_eval_at_coregular_recovers_defining_bimodule() {
        // (F(A^v))^v = M for F = Hom_A(M, -)
        let a = Arc::new(matrix_algebra(q(), 2));
        let s = m2_simple(&a);
        let m = s.tensor_right(&s.dual()).unwrap(); // A-A bimodule S (x) S^v
        let f = LexRep::new(m.clone());
        let coreg = Bimodule::coregular(a.clone());
        let (fav, _) = eval_lex_bimodule(&f, &coreg).unwrap();
        let out = module_iso(&fav.dual(), &m, &SearchConfig::default()).unwrap();
        assert!(out.is_witnessed());
    }

    #[test]
    fn rex_eval_at_regular_recovers_defining_bimodule() {
        // G(A) = N as B-A-bimodules for G = N (x)_A -
        let a = Arc::new(upper_triangular(q(), 2));
        let n = Bimodule::coregular(a.clone());
        let g = RexRep::new(n.clone());
        let (ga, _) = eval_rex_bimodule(&g, &Bimodule::regular(a)).unwrap();
        let out = module_iso(&ga, &n, &SearchConfig::default()).unwrap();
        assert!(out.is_witnessed());
    }

    #[test]
    fn hom_dimension_matches_direct_computation() {
        let a = Arc::new(matrix_algebra(q(), 2));
        let s = m2_simple(&a);
        let m = s.tensor_right(&s.dual()).unwrap();
        let f = LexRep::new(m);
        let x = LeftModule::regular(a.clone());
        let ev = eval_lex(&f, &x).unwrap();
        // dim Hom(S (x) S^v-as-bimodule's left part, A): left part is S (+) S
        let direct = hom_basis(&f.bimodule().as_left_module(), &x).unwrap();
        assert_eq!(ev.module.dim(), direct.dim());
    }

    #[test]
    fn composition_matches_pointwise_evaluation_lex() {
        // dim eval(compose(f2, f1), x) = dim eval(f2, eval(f1, x))
        let a = Arc::new(truncated_polynomial(q(), 2));
        let f1 = LexRep::nakayama(a.clone());
        let f2 = LexRep::nakayama(a.clone());
        let comp = compose_lex(&f2, &f1).unwrap();
        let x = LeftModule::regular(a.clone());
        let ev1 = eval_lex(&f1, &x).unwrap();
        let ev2 = eval_lex(&f2, &ev1.module).unwrap();
        let evc = eval_lex(&comp, &x).unwrap();
        assert_eq!(ev2.module.dim(), evc.module.dim());
        let out = module_iso(&ev2.module, &evc.module, &SearchConfig::default()).unwrap();
        assert!(out.is_witnessed());
    }

    #[test]
    fn composition_matches_pointwise_evaluation_rex() {
        let a = Arc::new(upper_triangular(q(), 2));
        let g1 = RexRep::nakayama(a.clone());
        let g2 = RexRep::nakayama(a.clone());
        let comp = compose_rex(&g2, &g1).unwrap();
        let x = LeftModule::regular(a.clone());
        let ev1 = eval_rex(&g1, &x).unwrap();
        let ev2 = eval_rex(&g2, &ev1.module).unwrap();
        let evc = eval_rex(&comp, &x).unwrap();
        let out = module_iso(&ev2.module, &evc.module, &SearchConfig::default()).unwrap();
        assert!(out.is_witnessed(), "{:?} vs {:?}", ev2.module.dim(), evc.module.dim());
    }

    #[test]
    fn functoriality_on_composable_morphisms() {
        let a = Arc::new(upper_triangular(q(), 2));
        let f = LexRep::nakayama(a.clone());
        let x = LeftModule::regular(a.clone());
        let h = hom_basis(&x, &x).unwrap();
        // u, v: two endomorphisms of the regular module
        let u = Morphism::new(x.clone(), x.clone(), h.basis()[0].clone()).unwrap();
        let v = Morphism::new(x.clone(), x.clone(), h.basis()[1].clone()).unwrap();
        let ev = eval_lex(&f, &x).unwrap();
        let fu = eval_lex_morphism(&f, &u, &ev, &ev).unwrap();
        let fv = eval_lex_morphism(&f, &v, &ev, &ev).unwrap();
        let uv = v.compose(&u).unwrap();
        let fuv = eval_lex_morphism(&f, &uv, &ev, &ev).unwrap();
        assert_eq!(fuv.matrix, fv.matrix.mul(&fu.matrix).unwrap());
    }

    #[test]
    fn nakayama_on_ut2_changes_projective_dims() {
        // rex Nakayama of UT2 applied to P1 has the dimension of the
        // corresponding injective; the explicit cokernel A^v (x)_A P1.
        let a = Arc::new(upper_triangular(q(), 2));
        let f = q();
        let p1 = LeftModule::new(
            a.clone(),
            1,
            vec![Matrix::identity(f, 1), Matrix::zero(f, 1, 1), Matrix::zero(f, 1, 1)],
            "P1",
        )
        .unwrap();
        let nak = RexRep::nakayama(a.clone());
        let ev = eval_rex(&nak, &p1).unwrap();
        // A^v (x)_A P1 = A^v e0 = (e0 A)^v, and e0 A = span{E00, E01}: the
        // corresponding injective has dimension 2
        assert_eq!(ev.module.dim(), 2);
        let id_ev = eval_rex(&RexRep::identity(a.clone()), &p1).unwrap();
        assert_eq!(id_ev.module.dim(), 1);
        // pi-tilde is not the identity on UT2: it moves P1
        let out = module_iso(&ev.module, &p1, &SearchConfig::default()).unwrap();
        assert!(out.is_refuted());
    }

    #[test]
    fn pipeline_eval_runs_mixed_chains() {
        let a = Arc::new(truncated_polynomial(q(), 2));
        let p = Pipeline::new(vec![
            Rep::Lex(LexRep::nakayama(a.clone())),
            Rep::Rex(RexRep::nakayama(a.clone())),
        ])
        .unwrap();
        let x = LeftModule::regular(a.clone());
        let ev = eval_pipeline(&p, &x).unwrap();
        assert_eq!(ev.module.dim(), 2);
        assert_eq!(ev.stages.len(), 2);
    }
}
