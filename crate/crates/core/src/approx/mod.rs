//! Approximation algorithms for weighted FVS in tournaments.
//!
//! [`seven_thirds_fvs`] runs two stages: [`iterative_rounding`] removes every
//! vertex whose LP value reaches 3/7 until none is left (the residual is then
//! T7-free), and [`layers_fvs`] covers the residual with weight at most 7/9 of
//! its total. [`three_approx`] is the local-ratio baseline.

mod cdz;
mod layers;
mod rounding;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::detect::{self, all_triangles, find_triangle};
use crate::lp::LpError;
use crate::tournament::{Rational, Tournament, TournamentError, VertexSet, Weights};

pub use cdz::{cdz_t5free_fvs, cdz_unchecked};
pub use layers::{layers_fvs, split_weight_bounded, LayerDecomposition};
pub use rounding::{iterative_rounding, rounding_threshold, RoundingStep, StageOne};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApproxError {
    #[error("input is not T5-free: {witness} induces a member of T5")]
    NotT5Free { witness: VertexSet },
    #[error("input is not T7-free: {witness} induces a member of T7")]
    NotT7Free { witness: VertexSet },
    #[error("vertex {vertex} lies on no directed triangle")]
    TriangleFreeVertex { vertex: usize },
    #[error("basic optimum of the triangle LP on a T5-free input is fractional: {detail}")]
    IntegralityFailure { detail: String },
    #[error("no pivot in layer U_{layer} covers half the weight of the next layer")]
    PivotNotFound { layer: usize },
    #[error("layer U_{layer} is not T5-free: {witness} induces a member of T5")]
    LayerNotT5Free { layer: usize, witness: VertexSet },
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Input(#[from] TournamentError),
}

impl ApproxError {
    /// Errors that can only fire if a proven guarantee or the solver is broken.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(
            self,
            ApproxError::IntegralityFailure { .. }
                | ApproxError::PivotNotFound { .. }
                | ApproxError::LayerNotT5Free { .. }
                | ApproxError::Lp(LpError::Unbounded)
        )
    }
}

/// Which step of an algorithm put a vertex into the solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Stage {
    #[serde(rename = "rounding")]
    Rounding,
    #[serde(rename = "layers_S")]
    LayersS,
    #[serde(rename = "layers_parity")]
    LayersParity,
    #[serde(rename = "layers_cdz")]
    LayersCdz,
    #[serde(rename = "baseline")]
    Baseline,
    #[serde(rename = "exact")]
    Exact,
}

impl Stage {
    pub fn as_str(self) -> &'static str {
        match self {
            Stage::Rounding => "rounding",
            Stage::LayersS => "layers_S",
            Stage::LayersParity => "layers_parity",
            Stage::LayersCdz => "layers_cdz",
            Stage::Baseline => "baseline",
            Stage::Exact => "exact",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A feedback vertex set with its weight and provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FvsResult {
    pub fvs: VertexSet,
    pub weight: Rational,
    pub stage_tags: BTreeMap<usize, Stage>,
    /// Per-iteration log of the rounding stage (empty for other algorithms).
    pub trace: Vec<RoundingStep>,
    /// Times the layering stalled and restarted on the unreached remainder.
    pub stall_restarts: usize,
}

impl FvsResult {
    pub fn tagged(fvs: VertexSet, w: &Weights, stage: Stage) -> Self {
        let stage_tags = fvs.iter().map(|v| (v, stage)).collect();
        FvsResult {
            weight: w.sum(&fvs),
            fvs,
            stage_tags,
            trace: Vec::new(),
            stall_restarts: 0,
        }
    }
}

/// `s` is an FVS iff `t - s` is transitive, iff `s` meets every triangle.
pub fn verify_fvs(t: &Tournament, s: &VertexSet) -> bool {
    let rest = VertexSet::full(t.n()).difference(s);
    let (sub, _) = t.induced(&rest);
    let acyclic = detect::is_transitive(&sub);
    debug_assert_eq!(
        acyclic,
        all_triangles(t).iter().all(|tri| !tri.is_disjoint(s))
    );
    acyclic
}

/// Local-ratio 3-approximation.
///
/// While the positive-weight vertices span a triangle, the least such
/// triangle has its minimum residual weight subtracted from all three
/// vertices. Vertices reaching zero are collected in order; the collected set
/// is then pruned in reverse order of collection, dropping every vertex the
/// rest of the set does not need.
pub fn three_approx(t: &Tournament, w: &Weights) -> Result<FvsResult, TournamentError> {
    w.check_len(t.n())?;
    let n = t.n();
    let mut residual: Vec<Rational> = w.as_slice().to_vec();
    let mut collected: Vec<usize> = (0..n).filter(|&v| residual[v].is_zero()).collect();
    loop {
        let positive: VertexSet = (0..n).filter(|&v| residual[v].is_positive()).collect();
        let (sub, ids) = t.induced(&positive);
        let Some(tri) = find_triangle(&sub) else { break };
        let tri = tri.lift(&ids);
        let delta = tri.iter().map(|v| residual[v].clone()).min().expect("triangle");
        for v in tri.iter() {
            residual[v] -= &delta;
            if residual[v].is_zero() {
                collected.push(v);
            }
        }
    }
    let mut fvs: VertexSet = collected.iter().copied().collect();
    for &v in collected.iter().rev() {
        let without = fvs.difference(&VertexSet::singleton(v));
        if verify_fvs(t, &without) {
            fvs = without;
        }
    }
    Ok(FvsResult::tagged(fvs, w, Stage::Baseline))
}

/// Everything [`seven_thirds_fvs`] computed along the way.
#[derive(Debug, Clone)]
pub struct SevenThirdsRun {
    pub result: FvsResult,
    pub stage_one: StageOne,
    /// Layering of the residual, ids local to `stage_one.residual`.
    pub layers: Option<(FvsResult, LayerDecomposition)>,
}

/// Iterative rounding followed by the layering stage on the residual.
pub fn seven_thirds_fvs(t: &Tournament, w: &Weights) -> Result<FvsResult, ApproxError> {
    Ok(seven_thirds_run(t, w)?.result)
}

pub fn seven_thirds_run(t: &Tournament, w: &Weights) -> Result<SevenThirdsRun, ApproxError> {
    let stage_one = iterative_rounding(t, w)?;
    let mut stage_tags: BTreeMap<usize, Stage> =
        stage_one.fvs.iter().map(|v| (v, Stage::Rounding)).collect();
    let mut fvs = stage_one.fvs.clone();
    let mut stall_restarts = 0;
    let layers = if stage_one.residual.is_empty() {
        None
    } else {
        let (second, decomposition) = layers_fvs(&stage_one.residual, &stage_one.residual_weights)?;
        let ids = stage_one.residual_ids.as_slice();
        fvs = fvs.union(&second.fvs.lift(ids));
        stage_tags.extend(second.stage_tags.iter().map(|(&v, &s)| (ids[v], s)));
        stall_restarts = second.stall_restarts;
        Some((second, decomposition))
    };
    let result = FvsResult {
        weight: w.sum(&fvs),
        fvs,
        stage_tags,
        trace: stage_one.trace.clone(),
        stall_restarts,
    };
    Ok(SevenThirdsRun {
        result,
        stage_one,
        layers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{random_tournament, random_weights};
    use crate::oracle::exact_min_fvs;
    use crate::tournament::integer;

    fn three_cycle() -> Tournament {
        Tournament::from_fn(3, |u, v| (u, v) != (0, 2))
    }

    #[test]
    fn verify_examples() {
        let c3 = three_cycle();
        assert!(verify_fvs(&c3, &VertexSet::full(3)));
        assert!(!verify_fvs(&c3, &VertexSet::empty()));
        assert!(verify_fvs(&c3, &VertexSet::from([1])));
    }

    #[test]
    fn three_approx_examples() {
        let tt = Tournament::transitive(5);
        assert!(three_approx(&tt, &Weights::unit(5)).unwrap().fvs.is_empty());
        let r = three_approx(&three_cycle(), &Weights::unit(3)).unwrap();
        assert_eq!(r.fvs, VertexSet::from([0]));
        assert_eq!(r.weight, integer(1));
        assert_eq!(r.stage_tags[&0], Stage::Baseline);
    }

    #[test]
    fn three_approx_within_three_of_oracle() {
        for seed in 0..80 {
            let n = 3 + seed as usize % 10;
            let t = random_tournament(n, seed);
            let w = if seed % 2 == 0 {
                Weights::unit(n)
            } else {
                random_weights(n, 10, seed)
            };
            let r = three_approx(&t, &w).unwrap();
            assert!(verify_fvs(&t, &r.fvs));
            let opt = exact_min_fvs(&t, &w).unwrap().optimum;
            assert!(r.weight <= integer(3) * opt);
        }
    }

    #[test]
    fn seven_thirds_examples() {
        let tt = Tournament::transitive(6);
        let r = seven_thirds_fvs(&tt, &random_weights(6, 5, 1)).unwrap();
        assert!(r.fvs.is_empty());
        assert_eq!(r.weight, integer(0));

        let c3 = three_cycle();
        let r = seven_thirds_fvs(&c3, &Weights::unit(3)).unwrap();
        assert!(verify_fvs(&c3, &r.fvs));
        assert!(r.weight <= crate::tournament::rational(7, 3));
    }

    #[test]
    fn seven_thirds_random_ratio() {
        for seed in 0..40 {
            let n = 4 + seed as usize % 8;
            let t = random_tournament(n, seed + 500);
            let w = random_weights(n, 10, seed);
            let r = seven_thirds_fvs(&t, &w).unwrap();
            assert!(verify_fvs(&t, &r.fvs));
            assert_eq!(r.weight, w.sum(&r.fvs));
            let opt = exact_min_fvs(&t, &w).unwrap().optimum;
            assert!(integer(3) * &r.weight <= integer(7) * opt, "seed {seed}");
            let tagged: VertexSet = r.stage_tags.keys().copied().collect();
            assert_eq!(tagged, r.fvs);
        }
    }

    #[test]
    fn invariant_classification() {
        assert!(ApproxError::PivotNotFound { layer: 3 }.is_invariant_violation());
        assert!(!ApproxError::NotT5Free { witness: VertexSet::full(5) }.is_invariant_violation());
    }
}
