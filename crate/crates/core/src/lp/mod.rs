//! The covering relaxation over triangles and T7 subsets, solved exactly.

mod simplex;

use itertools::Itertools;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::detect::{self, arcs_subset_in_family, Family};
use crate::par::{self, Execution};
use crate::tournament::{integer, Rational, Tournament, VertexSet, Weights};

use simplex::DualTableau;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("row {0} has an empty support")]
    EmptyRow(usize),
    #[error("row {row} mentions variable {vertex}, model has {n}")]
    RowOutOfRange { row: usize, vertex: usize, n: usize },
    #[error("row {0} has a non-positive right-hand side")]
    NonPositiveRhs(usize),
    #[error("objective has {got} coefficients, model has {n} variables")]
    ObjectiveLength { n: usize, got: usize },
    #[error("objective coefficient of variable {0} is negative")]
    NegativeWeight(usize),
    #[error("packing dual is unbounded, so the covering model is infeasible")]
    Unbounded,
}

/// `support . x >= rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoverRow {
    pub support: VertexSet,
    pub rhs: Rational,
}

impl CoverRow {
    pub fn new(support: VertexSet, rhs: Rational) -> Self {
        CoverRow { support, rhs }
    }

    pub fn lhs(&self, x: &[Rational]) -> Rational {
        self.support.iter().fold(Rational::zero(), |acc, v| acc + &x[v])
    }

    pub fn is_violated(&self, x: &[Rational]) -> bool {
        self.lhs(x) < self.rhs
    }
}

/// `min objective . x` subject to covering rows and `x >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverModel {
    pub n: usize,
    pub rows: Vec<CoverRow>,
    pub objective: Vec<Rational>,
}

impl CoverModel {
    pub fn new(objective: &Weights) -> Self {
        CoverModel {
            n: objective.len(),
            rows: Vec::new(),
            objective: objective.as_slice().to_vec(),
        }
    }

    pub fn push(&mut self, support: VertexSet, rhs: Rational) {
        self.rows.push(CoverRow::new(support, rhs));
    }

    pub fn validate(&self) -> Result<(), LpError> {
        if self.objective.len() != self.n {
            return Err(LpError::ObjectiveLength {
                n: self.n,
                got: self.objective.len(),
            });
        }
        if let Some(v) = self.objective.iter().position(|c| c.is_negative()) {
            return Err(LpError::NegativeWeight(v));
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row.support.is_empty() {
                return Err(LpError::EmptyRow(i));
            }
            if let Some(v) = row.support.max_id().filter(|&v| v >= self.n) {
                return Err(LpError::RowOutOfRange {
                    row: i,
                    vertex: v,
                    n: self.n,
                });
            }
            if !row.rhs.is_positive() {
                return Err(LpError::NonPositiveRhs(i));
            }
        }
        Ok(())
    }
}

/// An optimal basic solution with its packing dual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub primal: Vec<Rational>,
    /// The rows the dual refers to: the whole model for [`simplex_solve`],
    /// the generated rows for [`solve_fvs_lp`] (every other row has dual 0).
    pub rows: Vec<CoverRow>,
    pub dual: Vec<Rational>,
    pub value: Rational,
    /// Indices into `rows` held tight by the final basis.
    pub tight_rows: Vec<usize>,
    /// Variables held at zero by the final basis.
    pub zero_vars: Vec<usize>,
    pub pivots: usize,
}

/// Outcome of [`LpSolution::audit`]; every flag is an exact check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LpAudit {
    pub primal_feasible: bool,
    pub dual_feasible: bool,
    pub strong_duality: bool,
    pub complementary_slackness: bool,
    pub basic: bool,
}

impl LpAudit {
    pub fn is_sound(&self) -> bool {
        self.primal_feasible
            && self.dual_feasible
            && self.strong_duality
            && self.complementary_slackness
            && self.basic
    }
}

impl LpSolution {
    fn from_tableau(tableau: &DualTableau, rows: Vec<CoverRow>) -> Self {
        let (tight_rows, zero_vars) = tableau.basis_description();
        LpSolution {
            primal: tableau.primal(),
            dual: tableau.dual(),
            value: tableau.value().clone(),
            rows,
            tight_rows,
            zero_vars,
            pivots: tableau.pivots,
        }
    }

    pub fn dual_value(&self) -> Rational {
        self.rows
            .iter()
            .zip(&self.dual)
            .fold(Rational::zero(), |acc, (r, y)| acc + &r.rhs * y)
    }

    pub fn primal_value(&self, objective: &[Rational]) -> Rational {
        objective
            .iter()
            .zip(&self.primal)
            .fold(Rational::zero(), |acc, (w, x)| acc + w * x)
    }

    /// Packing load `sum_{r ∋ v} y_r` on each variable.
    pub fn dual_load(&self) -> Vec<Rational> {
        let mut load = vec![Rational::zero(); self.primal.len()];
        for (row, y) in self.rows.iter().zip(&self.dual) {
            for v in row.support.iter() {
                load[v] += y;
            }
        }
        load
    }

    /// Exact certificate checks against `objective`, over the rows in `self.rows`.
    pub fn audit(&self, objective: &[Rational]) -> LpAudit {
        let load = self.dual_load();
        let primal_feasible = self.primal.iter().all(|x| !x.is_negative())
            && self.rows.iter().all(|r| !r.is_violated(&self.primal));
        let dual_feasible = self.dual.iter().all(|y| !y.is_negative())
            && load.iter().zip(objective).all(|(l, w)| l <= w);
        let primal_value = self.primal_value(objective);
        let strong_duality = primal_value == self.value && self.dual_value() == self.value;
        let complementary_slackness = self
            .primal
            .iter()
            .zip(load.iter().zip(objective))
            .all(|(x, (l, w))| x.is_zero() || l == w)
            && self
                .rows
                .iter()
                .zip(&self.dual)
                .all(|(r, y)| y.is_zero() || r.lhs(&self.primal) == r.rhs);
        LpAudit {
            primal_feasible,
            dual_feasible,
            strong_duality,
            complementary_slackness,
            basic: self.is_basic(),
        }
    }

    /// The basis names `n` constraints that are tight at `primal` and
    /// linearly independent, so `primal` is a vertex.
    pub fn is_basic(&self) -> bool {
        let n = self.primal.len();
        if self.tight_rows.len() + self.zero_vars.len() != n {
            return false;
        }
        let tight_ok = self
            .tight_rows
            .iter()
            .all(|&r| self.rows[r].lhs(&self.primal) == self.rows[r].rhs);
        let zero_ok = self.zero_vars.iter().all(|&v| self.primal[v].is_zero());
        let mut matrix: Vec<Vec<Rational>> = self
            .tight_rows
            .iter()
            .map(|&r| {
                (0..n)
                    .map(|v| integer(i64::from(self.rows[r].support.contains(v))))
                    .collect()
            })
            .collect();
        matrix.extend(
            self.zero_vars
                .iter()
                .map(|&z| (0..n).map(|v| integer(i64::from(v == z))).collect()),
        );
        tight_ok && zero_ok && rank(matrix) == n
    }

    /// True when every coordinate of the primal is 0 or 1.
    pub fn is_integral(&self) -> bool {
        self.primal.iter().all(|x| x.is_zero() || *x == integer(1))
    }

    /// `{v : x_v >= threshold}`.
    pub fn at_least(&self, threshold: &Rational) -> VertexSet {
        VertexSet::new(
            self.primal
                .iter()
                .enumerate()
                .filter(|(_, x)| *x >= threshold)
                .map(|(v, _)| v)
                .collect(),
        )
    }
}

fn rank(mut m: Vec<Vec<Rational>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let f = &row[c] / &pivot;
                for (e, p) in row.iter_mut().zip(&pivot_row) {
                    *e -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Optimal basic solution of `model`, materialized in full.
pub fn simplex_solve(model: &CoverModel) -> Result<LpSolution, LpError> {
    model.validate()?;
    let mut tableau = DualTableau::new(&model.objective);
    for row in &model.rows {
        tableau.add_row(&row.support, &row.rhs);
    }
    tableau.optimize()?;
    Ok(LpSolution::from_tableau(&tableau, model.rows.clone()))
}

/// One row `x(R) >= 1` per directed triangle, then, with `with_t7`, one row
/// `x(Q) >= 3` per 7-subset inducing a member of T7.
pub fn build_fvs_model(t: &Tournament, w: &Weights, with_t7: bool) -> CoverModel {
    let mut model = CoverModel::new(w);
    for tri in detect::all_triangles(t) {
        model.push(tri, integer(1));
    }
    if with_t7 && t.n() >= 7 {
        let arc = |u: usize, v: usize| t.has_arc(u, v);
        for q in (0..t.n()).combinations(7) {
            if arcs_subset_in_family(&arc, &q, Family::T7) {
                model.push(VertexSet::new(q), integer(3));
            }
        }
    }
    model
}

/// Lexicographically first violated triangle row, else (with `with_t7`) the
/// first violated T7 row. `None` certifies `x` feasible for the full model.
pub fn separate_with(
    t: &Tournament,
    x: &[Rational],
    with_t7: bool,
    exec: Execution,
) -> Option<CoverRow> {
    let one = integer(1);
    if let Some(tri) = detect::all_triangles(t)
        .into_iter()
        .find(|tri| tri.iter().fold(Rational::zero(), |acc, v| acc + &x[v]) < one)
    {
        return Some(CoverRow::new(tri, one));
    }
    let n = t.n();
    if !with_t7 || n < 7 {
        return None;
    }
    let three = integer(3);
    let arc = |u: usize, v: usize| t.has_arc(u, v);
    par::find_map_first(exec, 0..n - 6, |first| {
        (first + 1..n).combinations(6).find_map(|rest| {
            let mut q = Vec::with_capacity(7);
            q.push(first);
            q.extend(rest);
            let sum = q.iter().fold(Rational::zero(), |acc, &v| acc + &x[v]);
            (sum < three && arcs_subset_in_family(&arc, &q, Family::T7)).then(|| VertexSet::new(q))
        })
    })
    .map(|q| CoverRow::new(q, three))
}

pub fn separate(t: &Tournament, x: &[Rational]) -> Option<CoverRow> {
    separate_with(t, x, true, Execution::default())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RowGeneration {
    /// Add the first violated row, re-optimize, repeat.
    #[default]
    Lazy,
    /// Materialize every row up front.
    Full,
}

/// Optimal basic solution of the covering relaxation of `(t, w)` over all
/// triangle rows and, with `with_t7`, all T7 rows.
pub fn solve_fvs_lp(t: &Tournament, w: &Weights, with_t7: bool) -> Result<LpSolution, LpError> {
    solve_fvs_lp_with(t, w, with_t7, RowGeneration::Lazy, Execution::default())
}

pub fn solve_fvs_lp_with(
    t: &Tournament,
    w: &Weights,
    with_t7: bool,
    mode: RowGeneration,
    exec: Execution,
) -> Result<LpSolution, LpError> {
    let objective = CoverModel::new(w);
    objective.validate()?;
    if w.len() != t.n() {
        return Err(LpError::ObjectiveLength {
            n: t.n(),
            got: w.len(),
        });
    }
    match mode {
        RowGeneration::Full => simplex_solve(&build_fvs_model(t, w, with_t7)),
        RowGeneration::Lazy => {
            let mut tableau = DualTableau::new(w.as_slice());
            let mut rows = Vec::new();
            loop {
                tableau.optimize()?;
                match separate_with(t, &tableau.primal(), with_t7, exec) {
                    Some(row) => {
                        tableau.add_row(&row.support, &row.rhs);
                        rows.push(row);
                    }
                    None => return Ok(LpSolution::from_tableau(&tableau, rows)),
                }
            }
        }
    }
}
