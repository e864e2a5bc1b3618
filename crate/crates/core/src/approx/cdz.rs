//! Exact minimum-weight FVS on T5-free tournaments.
//!
//! On T5-free tournaments the triangle covering polyhedron is integral (min
//! FVS weight equals max fractional triangle packing for every weighting), so
//! a basic optimum of the triangle-only LP is a 0/1 vector and its support is
//! an optimal FVS.

use itertools::Itertools;

use crate::detect::find_t5_subtournament;
use crate::lp::solve_fvs_lp;
use crate::tournament::{Tournament, Weights};

use super::{ApproxError, FvsResult, Stage};

pub fn cdz_t5free_fvs(t: &Tournament, w: &Weights) -> Result<FvsResult, ApproxError> {
    w.check_len(t.n())?;
    if let Some(witness) = find_t5_subtournament(t) {
        return Err(ApproxError::NotT5Free { witness });
    }
    cdz_unchecked(t, w)
}

/// Same as [`cdz_t5free_fvs`] without the T5 scan; a fractional optimum is
/// reported as [`ApproxError::IntegralityFailure`].
pub fn cdz_unchecked(t: &Tournament, w: &Weights) -> Result<FvsResult, ApproxError> {
    w.check_len(t.n())?;
    let sol = solve_fvs_lp(t, w, false)?;
    if !sol.is_integral() {
        return Err(ApproxError::IntegralityFailure {
            detail: sol.primal.iter().map(ToString::to_string).join(" "),
        });
    }
    let fvs = sol.at_least(&crate::tournament::integer(1));
    let result = FvsResult::tagged(fvs, w, Stage::Exact);
    debug_assert_eq!(result.weight, sol.value);
    Ok(result)
}
