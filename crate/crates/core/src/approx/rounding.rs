//! First stage: iterative rounding of the triangle + T7 relaxation.

use num_traits::Zero;

use crate::lp::{solve_fvs_lp, LpSolution};
use crate::tournament::{rational, Rational, Tournament, VertexSet, Weights};

use super::ApproxError;

/// Vertices whose LP value reaches this are rounded into the solution.
pub fn rounding_threshold() -> Rational {
    rational(3, 7)
}

/// One round: the LP value before rounding, what was rounded and pruned, and
/// the LP value of what remained. Vertex ids are those of the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundingStep {
    pub iteration: usize,
    pub lp_value: Rational,
    pub rounded: VertexSet,
    /// Vertices dropped afterwards because they left every triangle.
    pub pruned: VertexSet,
    pub residual_lp_value: Rational,
    /// Weight of everything rounded so far, this round included.
    pub accumulated_weight: Rational,
}

#[derive(Debug, Clone)]
pub struct StageOne {
    pub fvs: VertexSet,
    /// Remaining tournament, relabelled; `residual_ids[i]` is the input id of vertex `i`.
    pub residual: Tournament,
    pub residual_ids: VertexSet,
    pub residual_weights: Weights,
    /// LP optimum of the input.
    pub initial_lp_value: Rational,
    /// Final LP optimum on the residual (absent when the residual is empty).
    pub residual_lp: Option<LpSolution>,
    pub trace: Vec<RoundingStep>,
}

impl StageOne {
    /// `w(F) <= 7/3 (OPT(T) - OPT(T'))` after every round.
    pub fn rounding_ledger_holds(&self) -> bool {
        let seven = Rational::from_integer(7.into());
        let three = Rational::from_integer(3.into());
        self.trace.iter().all(|step| {
            &three * &step.accumulated_weight <= &seven * (&self.initial_lp_value - &step.residual_lp_value)
        })
    }

    /// Every residual coordinate stays below the rounding threshold.
    pub fn residual_below_threshold(&self) -> bool {
        let threshold = rounding_threshold();
        self.residual_lp
            .as_ref()
            .is_none_or(|sol| sol.primal.iter().all(|x| *x < threshold))
    }
}

/// Repeatedly solves the relaxation with T7 rows, moves every vertex with
/// `x*_v >= 3/7` into the solution, and drops vertices left on no triangle,
/// until nothing reaches the threshold or nothing remains.
///
/// Vertices on no triangle are dropped before the first solve as well; they
/// appear in no row, so the LP value is unchanged, and the residual always
/// consists of triangle vertices only.
pub fn iterative_rounding(t: &Tournament, w: &Weights) -> Result<StageOne, ApproxError> {
    w.check_len(t.n())?;
    let threshold = rounding_threshold();
    let mut current = t.cyclic_vertices();
    let mut fvs = VertexSet::empty();
    let mut trace: Vec<RoundingStep> = Vec::new();
    let mut initial_lp_value = None;
    let residual_lp = loop {
        if current.is_empty() {
            break None;
        }
        let (sub, ids) = t.induced(&current);
        let sol = solve_fvs_lp(&sub, &w.restrict(&ids), true)?;
        initial_lp_value.get_or_insert_with(|| sol.value.clone());
        if let Some(last) = trace.last_mut() {
            last.residual_lp_value = sol.value.clone();
        }
        let rounded = sol.at_least(&threshold).lift(&ids);
        if rounded.is_empty() {
            break Some(sol);
        }
        fvs = fvs.union(&rounded);
        let remaining = current.difference(&rounded);
        let (rest, rest_ids) = t.induced(&remaining);
        let keep = rest.cyclic_vertices().lift(&rest_ids);
        trace.push(RoundingStep {
            iteration: trace.len() + 1,
            lp_value: sol.value.clone(),
            pruned: remaining.difference(&keep),
            rounded,
            residual_lp_value: Rational::zero(),
            accumulated_weight: w.sum(&fvs),
        });
        current = keep;
    };
    let (residual, ids) = t.induced(&current);
    Ok(StageOne {
        fvs,
        residual_weights: w.restrict(&ids),
        residual,
        residual_ids: VertexSet::new(ids),
        initial_lp_value: initial_lp_value.unwrap_or_else(Rational::zero),
        residual_lp,
        trace,
    })
}
