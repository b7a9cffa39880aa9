//! Functor representations by bimodules. A left exact functor
//! `A-Mod -> B-Mod` is `Hom_A(M, -)` for an A-B-bimodule M; a right exact
//! one is `N (x)_A -` for a B-A-bimodule N. The bimodule IS the functor:
//! translation, composition, adjoints and Nakayama functors are bimodule
//! operations, and natural-isomorphism questions become decidable.

pub mod adjunction;
pub mod eval;
pub mod exchange;
pub mod natiso;

pub use eval::{
    eval_lex, eval_lex_bimodule, eval_lex_morphism, eval_pipeline, eval_pipeline_morphism,
    eval_rex, eval_rex_bimodule, eval_rex_morphism, LexEval, PipelineEval, RexEval,
};
pub use adjunction::{adjunction_bijection, adjunction_naturality, AdjunctionData};
pub use natiso::{natural_family, natural_iso_reps, NatOutcome};

use crate::algebra::{same_algebra, Algebra};
use crate::error::FinlinError;
use crate::frobenius::right_projectivity;
use crate::modrep::{tensor_bi_bi, Bimodule};
use std::sync::Arc;

/// Left exact functor `Hom_A(M, -) : A-Mod -> B-Mod`, M an A-B-bimodule.
/// The left B-action on the hom space is `(b.f)(x) = f(x.b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LexRep {
    bimodule: Bimodule,
}

/// Right exact functor `N (x)_A - : A-Mod -> B-Mod`, N a B-A-bimodule.
#[derive(Debug, Clone, PartialEq)]
pub struct RexRep {
    bimodule: Bimodule,
}

impl LexRep {
    pub fn new(bimodule: Bimodule) -> LexRep {
        LexRep { bimodule }
    }

    /// Source algebra A (the bimodule's left algebra).
    pub fn source(&self) -> &Arc<Algebra> {
        self.bimodule.left_algebra()
    }

    /// Target algebra B (the bimodule's right algebra).
    pub fn target(&self) -> &Arc<Algebra> {
        self.bimodule.right_algebra()
    }

    pub fn bimodule(&self) -> &Bimodule {
        &self.bimodule
    }

    /// The identity functor `Hom_A(A, -)`.
    pub fn identity(a: Arc<Algebra>) -> LexRep {
        LexRep::new(Bimodule::regular(a))
    }

    /// The left exact Nakayama functor `Hom_A(A^v, -)`.
    pub fn nakayama(a: Arc<Algebra>) -> LexRep {
        LexRep::new(Bimodule::coregular(a))
    }
}

impl RexRep {
    pub fn new(bimodule: Bimodule) -> RexRep {
        RexRep { bimodule }
    }

    /// Source algebra A (the bimodule's right algebra).
    pub fn source(&self) -> &Arc<Algebra> {
        self.bimodule.right_algebra()
    }

    /// Target algebra B (the bimodule's left algebra).
    pub fn target(&self) -> &Arc<Algebra> {
        self.bimodule.left_algebra()
    }

    pub fn bimodule(&self) -> &Bimodule {
        &self.bimodule
    }

    /// The identity functor `A (x)_A -`.
    pub fn identity(a: Arc<Algebra>) -> RexRep {
        RexRep::new(Bimodule::regular(a))
    }

    /// The right exact Nakayama functor `A^v (x)_A -`.
    pub fn nakayama(a: Arc<Algebra>) -> RexRep {
        RexRep::new(Bimodule::coregular(a))
    }
}

/// Both Nakayama representations of an algebra.
pub fn nakayama_reps(a: &Arc<Algebra>) -> (RexRep, LexRep) {
    (RexRep::nakayama(a.clone()), LexRep::nakayama(a.clone()))
}

/// Translation from left exact to right exact functors: `Lex{M} -> Rex{M^v}`.
/// Involutive entrywise under the fixed dual-basis convention.
pub fn translate_lex_to_rex(f: &LexRep) -> RexRep {
    RexRep::new(f.bimodule.dual())
}

/// Translation from right exact to left exact functors: `Rex{N} -> Lex{N^v}`.
pub fn translate_rex_to_lex(g: &RexRep) -> LexRep {
    LexRep::new(g.bimodule.dual())
}

/// The Eilenberg-Watts dictionary on objects of the Deligne product,
/// realized as B-A-bimodules.
pub fn phi_lex(x: &Bimodule) -> LexRep {
    LexRep::new(x.dual())
}

pub fn phi_rex(x: &Bimodule) -> RexRep {
    RexRep::new(x.clone())
}

pub fn psi_lex(f: &LexRep) -> Bimodule {
    f.bimodule.dual()
}

pub fn psi_rex(g: &RexRep) -> Bimodule {
    g.bimodule.clone()
}

/// Composition of left exact representations:
/// `Lex{M2: B-C} after Lex{M1: A-B} = Lex{M1 (x)_B M2 : A-C}`.
pub fn compose_lex(outer: &LexRep, inner: &LexRep) -> Result<LexRep, FinlinError> {
    if !same_algebra(inner.target(), outer.source()) {
        return Err(FinlinError::AlgebraMismatch("lex composition".into()));
    }
    let (bim, _) = tensor_bi_bi(inner.bimodule(), outer.bimodule())?;
    Ok(LexRep::new(bim))
}

/// Composition of right exact representations:
/// `Rex{N2: C-B} after Rex{N1: B-A} = Rex{N2 (x)_B N1 : C-A}`.
pub fn compose_rex(outer: &RexRep, inner: &RexRep) -> Result<RexRep, FinlinError> {
    if !same_algebra(inner.target(), outer.source()) {
        return Err(FinlinError::AlgebraMismatch("rex composition".into()));
    }
    let (bim, _) = tensor_bi_bi(outer.bimodule(), inner.bimodule())?;
    Ok(RexRep::new(bim))
}

/// Left adjoint of `Hom_A(M, -)` is `M (x)_B - : B-Mod -> A-Mod`:
/// the same bimodule reinterpreted.
pub fn left_adjoint(f: &LexRep) -> RexRep {
    RexRep::new(f.bimodule.clone())
}

/// Right adjoint of `N (x)_A -` is `Hom_B(N, -) : B-Mod -> A-Mod`.
pub fn right_adjoint(g: &RexRep) -> LexRep {
    LexRep::new(g.bimodule.clone())
}

/// Double left adjoint of a left exact functor. Requires the defining
/// bimodule to be projective as a right module over the target algebra;
/// otherwise the left adjoint is not left exact and the construction is
/// refused.
pub fn double_left_adjoint(f: &LexRep) -> Result<RexRep, FinlinError> {
    let as_right = f.bimodule.as_right_module();
    if !right_projectivity(&as_right)?.projective {
        return Err(FinlinError::Precondition(format!(
            "defining bimodule {} is not projective as a right {}-module; the left adjoint is not left exact",
            f.bimodule.label(),
            f.target().label()
        )));
    }
    let coreg = Bimodule::coregular(f.target().clone());
    let (w, _) = tensor_bi_bi(f.bimodule(), &coreg)?;
    Ok(RexRep::new(w.dual()))
}

/// Double right adjoint of a right exact functor, dual to
/// [`double_left_adjoint`]: requires N injective as a left module over the
/// target (equivalently N^v right-projective over it).
pub fn double_right_adjoint(g: &RexRep) -> Result<LexRep, FinlinError> {
    let dual_rep = translate_rex_to_lex(g);
    // g = Rex{N: B-A}; its right adjoint is Lex{N}; the double right adjoint
    // exists and is right exact iff Lex{N}'s left adjoint chain dualizes,
    // i.e. N^v is projective as a right B-module.
    let as_right = dual_rep.bimodule().as_right_module();
    if !right_projectivity(&as_right)?.projective {
        return Err(FinlinError::Precondition(format!(
            "dual of defining bimodule {} is not projective as a right {}-module",
            g.bimodule.label(),
            g.target().label()
        )));
    }
    let coreg = Bimodule::coregular(g.target().clone());
    let (w, _) = tensor_bi_bi(dual_rep.bimodule(), &coreg)?;
    Ok(LexRep::new(w.dual()))
}

/// A functor representation of either exactness class.
#[derive(Debug, Clone)]
pub enum Rep {
    Lex(LexRep),
    Rex(RexRep),
}

impl Rep {
    pub fn source(&self) -> &Arc<Algebra> {
        match self {
            Rep::Lex(f) => f.source(),
            Rep::Rex(g) => g.source(),
        }
    }

    pub fn target(&self) -> &Arc<Algebra> {
        match self {
            Rep::Lex(f) => f.target(),
            Rep::Rex(g) => g.target(),
        }
    }
}

/// A composable chain of representations; `stages[0]` is applied first.
/// Mixed chains (rex after lex) are kept as evaluation pipelines and
/// compared pointwise, never normalized to a single bimodule.
#[derive(Debug, Clone)]
pub struct Pipeline {
    pub stages: Vec<Rep>,
}

impl Pipeline {
    pub fn new(stages: Vec<Rep>) -> Result<Pipeline, FinlinError> {
        if stages.is_empty() {
            return Err(FinlinError::Precondition("pipeline needs at least one stage".into()));
        }
        for w in stages.windows(2) {
            if !same_algebra(w[0].target(), w[1].source()) {
                return Err(FinlinError::AlgebraMismatch("pipeline stages do not compose".into()));
            }
        }
        Ok(Pipeline { stages })
    }

    pub fn lex(f: LexRep) -> Pipeline {
        Pipeline { stages: vec![Rep::Lex(f)] }
    }

    pub fn rex(g: RexRep) -> Pipeline {
        Pipeline { stages: vec![Rep::Rex(g)] }
    }

    pub fn source(&self) -> &Arc<Algebra> {
        self.stages.first().expect("nonempty").source()
    }

    pub fn target(&self) -> &Arc<Algebra> {
        self.stages.last().expect("nonempty").target()
    }
}
