//! Minimum-weight feedback vertex set in tournaments.
//!
//! The crate provides the two-stage 7/3-approximation (iterative LP rounding
//! over triangle and order-7 constraints, followed by a layering stage for
//! the remaining tournament), the classic local-ratio 3-approximation, an
//! exact branch-and-bound oracle, an exact rational simplex, and the
//! enumeration tools used to audit every guarantee on small instances.
//!
//! Vertices are dense `usize` ids. Weights are exact non-negative rationals;
//! no floating point enters any solver.

pub mod approx;
pub mod detect;
pub mod enumerate;
pub mod generate;
pub mod io;
pub mod lp;
pub mod oracle;
pub mod par;
pub mod tournament;

pub use approx::{
    cdz_t5free_fvs, iterative_rounding, layers_fvs, seven_thirds_fvs, three_approx, verify_fvs,
    ApproxError, FvsResult, LayerDecomposition, Stage, StageOne,
};
pub use detect::LayerSequence;
pub use enumerate::{canonical_form, enumerate_family, CanonicalForm, FamilyEnumeration};
pub use lp::{simplex_solve, solve_fvs_lp, CoverModel, LpError, LpSolution};
pub use io::{parse_tournament, write_tournament, ParseError, ResultDocument};
pub use oracle::{approximation_ratio, exact_min_fvs, max_fractional_packing, OracleResult};
pub use par::Execution;
pub use tournament::{Rational, Tournament, TournamentError, VertexSet, Weights};
