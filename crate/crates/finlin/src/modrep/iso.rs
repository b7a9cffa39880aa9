//! Decision procedure for module isomorphism: compute the hom space, then
//! search its span for an invertible element. Over Q a full grid scan of
//! degree+1 points per coordinate gives an exact refutation certificate
//! (the determinant polynomial has total degree <= dim); over a small F_p
//! an exhaustive grid is a genuine refutation. Searches are seeded and
//! reproducible; an exhausted budget is reported as inconclusive, never
//! guessed either way.

use super::hom::{hom_basis, HomSpace, ModuleLike, Morphism};
use crate::error::FinlinError;
use crate::exact::{Field, Matrix, Scalar};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy)]
pub struct SearchConfig {
    pub seed: u64,
    pub budget: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { seed: 0, budget: 1_000_000 }
    }
}

impl SearchConfig {
    pub fn with_seed(seed: u64) -> SearchConfig {
        SearchConfig { seed, ..Default::default() }
    }
}

/// Outcome of an isomorphism search. A witness always carries its exact
/// inverse; refutations carry the reason.
#[derive(Debug, Clone)]
pub enum IsoOutcome<M: ModuleLike> {
    Witnessed { forward: Morphism<M>, inverse: Morphism<M> },
    Refuted(String),
    Inconclusive(String),
}

impl<M: ModuleLike> IsoOutcome<M> {
    pub fn is_witnessed(&self) -> bool {
        matches!(self, IsoOutcome::Witnessed { .. })
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, IsoOutcome::Refuted(_))
    }

    pub fn witness(self) -> Option<(Morphism<M>, Morphism<M>)> {
        match self {
            IsoOutcome::Witnessed { forward, inverse } => Some((forward, inverse)),
            _ => None,
        }
    }
}

/// Decides whether two modules are isomorphic.
pub fn module_iso<M: ModuleLike>(
    src: &M,
    tgt: &M,
    cfg: &SearchConfig,
) -> Result<IsoOutcome<M>, FinlinError> {
    M::check_compatible(src, tgt)?;
    if src.dim() != tgt.dim() {
        return Ok(IsoOutcome::Refuted(format!(
            "dimensions differ: {} vs {}",
            src.dim(),
            tgt.dim()
        )));
    }
    if src.dim() == 0 {
        let fwd = Morphism::new(src.clone(), tgt.clone(), Matrix::zero(src.base_field(), 0, 0))?;
        let inv = Morphism::new(tgt.clone(), src.clone(), Matrix::zero(src.base_field(), 0, 0))?;
        return Ok(IsoOutcome::Witnessed { forward: fwd, inverse: inv });
    }
    let space = hom_basis(src, tgt)?;
    if space.dim() == 0 {
        return Ok(IsoOutcome::Refuted("hom space is zero".into()));
    }
    match invertible_in_span(&space, cfg) {
        SpanSearch::Found(matrix, inverse) => {
            let forward = Morphism::new(src.clone(), tgt.clone(), matrix)?;
            let inverse = Morphism::new(tgt.clone(), src.clone(), inverse)?;
            Ok(IsoOutcome::Witnessed { forward, inverse })
        }
        SpanSearch::NoneInSpan => Ok(IsoOutcome::Refuted(
            "no invertible element in the hom space (exhaustive certificate)".into(),
        )),
        SpanSearch::BudgetExhausted(tried) => Ok(IsoOutcome::Inconclusive(format!(
            "no invertible combination found after {tried} trials"
        ))),
    }
}

pub(crate) enum SpanSearch {
    Found(Matrix, Matrix),
    NoneInSpan,
    BudgetExhausted(u64),
}

/// Searches the span of a hom space for an invertible element.
pub(crate) fn invertible_in_span(space: &HomSpace, cfg: &SearchConfig) -> SpanSearch {
    let field = space.field();
    let k = space.dim();
    let d = space.tgt_dim();
    debug_assert_eq!(space.tgt_dim(), space.src_dim());
    if k == 0 {
        return SpanSearch::NoneInSpan;
    }
    // cheap deterministic pre-pass: single basis elements
    for i in 0..k {
        let mut coeffs = vec![field.zero(); k];
        coeffs[i] = field.one();
        if let Some(found) = try_coeffs(space, &coeffs) {
            return found;
        }
    }
    // exhaustive grid when affordable; over Q an all-singular grid of
    // (d+1)^k points certifies that the determinant polynomial vanishes
    let grid_points: u64 = match field {
        Field::Rationals => (d as u64) + 1,
        Field::Prime(p) => p,
    };
    let grid_size = checked_pow(grid_points, k as u32);
    if let Some(total) = grid_size {
        if total <= cfg.budget {
            let mut idx = vec![0u64; k];
            loop {
                let coeffs: Vec<Scalar> =
                    idx.iter().map(|&i| field.from_i64(i as i64)).collect();
                if coeffs.iter().any(|c| !c.is_zero()) {
                    if let Some(found) = try_coeffs(space, &coeffs) {
                        return found;
                    }
                }
                // odometer increment
                let mut pos = 0;
                loop {
                    if pos == k {
                        return SpanSearch::NoneInSpan;
                    }
                    idx[pos] += 1;
                    if idx[pos] < grid_points {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
            }
        }
    }
    // randomized seeded search with growing coefficient range
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let trials = cfg.budget.min(4096);
    for t in 0..trials {
        let range = 1 + (t / 16) as i64;
        let coeffs: Vec<Scalar> = (0..k)
            .map(|_| field.from_i64(rng.random_range(-range..=range)))
            .collect();
        if coeffs.iter().all(|c| c.is_zero()) {
            continue;
        }
        if let Some(found) = try_coeffs(space, &coeffs) {
            return found;
        }
    }
    SpanSearch::BudgetExhausted(trials)
}

fn try_coeffs(space: &HomSpace, coeffs: &[Scalar]) -> Option<SpanSearch> {
    let m = space.combination(coeffs);
    m.inverse().map(|inv| SpanSearch::Found(m, inv))
}

fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}
