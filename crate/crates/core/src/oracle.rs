//! Exact references for auditing the approximations.

use num_traits::Zero;
use thiserror::Error;

use crate::approx::three_approx;
use crate::detect::all_triangles;
use crate::lp::{solve_fvs_lp, LpError};
use crate::tournament::{Rational, Tournament, TournamentError, VertexSet, Weights};

pub const DEFAULT_ORACLE_CAP: usize = 18;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("order {got} exceeds the oracle cap {cap}")]
    TooLarge { cap: usize, got: usize },
    #[error(transparent)]
    Input(#[from] TournamentError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub optimum: Rational,
    pub witness: VertexSet,
    pub nodes_explored: u64,
}

pub fn exact_min_fvs(t: &Tournament, w: &Weights) -> Result<OracleResult, OracleError> {
    exact_min_fvs_with_cap(t, w, Some(DEFAULT_ORACLE_CAP))
}

/// Minimum-weight FVS by branching on triangles.
///
/// At each node the least triangle avoiding the current partial solution is
/// taken; branch `i` puts its `i`-th free vertex into the solution and marks
/// the earlier ones as kept, so no set is visited twice. Nodes are pruned
/// when the partial weight plus a disjoint-triangle bound reaches the
/// incumbent, which starts from the local-ratio 3-approximation.
pub fn exact_min_fvs_with_cap(
    t: &Tournament,
    w: &Weights,
    cap: Option<usize>,
) -> Result<OracleResult, OracleError> {
    w.check_len(t.n())?;
    if let Some(cap) = cap.filter(|&c| t.n() > c) {
        return Err(OracleError::TooLarge { cap, got: t.n() });
    }
    let start = three_approx(t, w)?;
    let mut search = Search {
        t,
        w,
        best: start.weight,
        best_set: start.fvs,
        nodes: 0,
    };
    let n = t.n();
    search.branch(&mut vec![false; n], &mut vec![false; n], Rational::zero());
    Ok(OracleResult {
        optimum: search.best,
        witness: search.best_set,
        nodes_explored: search.nodes,
    })
}

struct Search<'a> {
    t: &'a Tournament,
    w: &'a Weights,
    best: Rational,
    best_set: VertexSet,
    nodes: u64,
}

impl Search<'_> {
    fn remaining(&self, chosen: &[bool]) -> (Tournament, Vec<usize>) {
        let rest: VertexSet = (0..self.t.n()).filter(|&v| !chosen[v]).collect();
        self.t.induced(&rest)
    }

    /// Lower bound from greedily packed vertex-disjoint triangles; `None`
    /// when some triangle has only kept vertices.
    fn packing_bound(&self, triangles: &[VertexSet], kept: &[bool]) -> Option<Rational> {
        let mut used = vec![false; self.t.n()];
        let mut bound = Rational::zero();
        for tri in triangles {
            let cheapest = tri.iter().filter(|&v| !kept[v]).map(|v| self.w.get(v)).min()?;
            if tri.iter().all(|v| !used[v]) {
                tri.iter().for_each(|v| used[v] = true);
                bound += cheapest;
            }
        }
        Some(bound)
    }

    fn branch(&mut self, chosen: &mut Vec<bool>, kept: &mut Vec<bool>, weight: Rational) {
        self.nodes += 1;
        if weight >= self.best {
            return;
        }
        let (rest, ids) = self.remaining(chosen);
        let triangles: Vec<VertexSet> = all_triangles(&rest).iter().map(|r| r.lift(&ids)).collect();
        let Some(first) = triangles.first() else {
            self.best = weight;
            self.best_set = (0..chosen.len()).filter(|&v| chosen[v]).collect();
            return;
        };
        match self.packing_bound(&triangles, kept) {
            Some(bound) if &weight + &bound < self.best => {}
            _ => return,
        }
        let free: Vec<usize> = first.iter().filter(|&v| !kept[v]).collect();
        for (i, &v) in free.iter().enumerate() {
            chosen[v] = true;
            for &u in &free[..i] {
                kept[u] = true;
            }
            let next = &weight + self.w.get(v);
            self.branch(chosen, kept, next);
            chosen[v] = false;
            for &u in &free[..i] {
                kept[u] = false;
            }
        }
    }
}

/// Value of the best fractional triangle packing under `w`, read from the
/// dual of the triangle-only covering LP.
pub fn max_fractional_packing(t: &Tournament, w: &Weights) -> Result<Rational, LpError> {
    Ok(solve_fvs_lp(t, w, false)?.dual_value())
}

/// `found / optimum`, taken as 1 when both are 0 and undefined when only
/// the optimum is 0.
pub fn approximation_ratio(found: &Rational, optimum: &Rational) -> Option<Rational> {
    match (found.is_zero(), optimum.is_zero()) {
        (true, true) => Some(Rational::from_integer(1.into())),
        (false, true) => None,
        _ => Some(found / optimum),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::verify_fvs;
    use crate::generate::{paley_tournament, random_tournament, random_weights};
    use crate::tournament::integer;
    use itertools::Itertools;

    /// Minimum over all 2^n subsets.
    fn brute_force(t: &Tournament, w: &Weights) -> Rational {
        (0..t.n())
            .powerset()
            .map(VertexSet::new)
            .filter(|s| verify_fvs(t, s))
            .map(|s| w.sum(&s))
            .min()
            .unwrap()
    }

    #[test]
    fn oracle_examples() {
        let tt = Tournament::transitive(6);
        let r = exact_min_fvs(&tt, &Weights::unit(6)).unwrap();
        assert_eq!(r.optimum, integer(0));
        assert!(r.witness.is_empty());
        let c3 = Tournament::from_fn(3, |u, v| (u, v) != (0, 2));
        assert_eq!(exact_min_fvs(&c3, &Weights::unit(3)).unwrap().optimum, integer(1));
        // The largest transitive subtournament of Paley-7 has 3 vertices.
        let p7 = paley_tournament(7).unwrap();
        assert_eq!(exact_min_fvs(&p7, &Weights::unit(7)).unwrap().optimum, integer(4));
        assert!(matches!(
            exact_min_fvs(&Tournament::transitive(19), &Weights::unit(19)),
            Err(OracleError::TooLarge { cap: 18, got: 19 })
        ));
        assert!(exact_min_fvs_with_cap(&Tournament::transitive(19), &Weights::unit(19), None).is_ok());
    }

    #[test]
    fn oracle_matches_brute_force() {
        for seed in 0..60 {
            let n = 3 + seed as usize % 8;
            let t = random_tournament(n, seed);
            let w = random_weights(n, 6, seed ^ 0xabc);
            let r = exact_min_fvs(&t, &w).unwrap();
            assert_eq!(r.optimum, brute_force(&t, &w), "seed {seed}");
            assert!(verify_fvs(&t, &r.witness));
            assert_eq!(w.sum(&r.witness), r.optimum);
        }
    }

    #[test]
    fn ratio_convention() {
        assert_eq!(approximation_ratio(&integer(0), &integer(0)), Some(integer(1)));
        assert_eq!(approximation_ratio(&integer(2), &integer(0)), None);
        assert_eq!(
            approximation_ratio(&integer(2), &integer(3)),
            Some(crate::tournament::rational(2, 3))
        );
    }

    #[test]
    fn packing_examples() {
        assert_eq!(
            max_fractional_packing(&Tournament::transitive(5), &Weights::unit(5)).unwrap(),
            integer(0)
        );
        let c3 = Tournament::from_fn(3, |u, v| (u, v) != (0, 2));
        assert_eq!(max_fractional_packing(&c3, &Weights::unit(3)).unwrap(), integer(1));
        for seed in 0..30 {
            let t = random_tournament(8, seed);
            let w = random_weights(8, 9, seed);
            let pack = max_fractional_packing(&t, &w).unwrap();
            assert!(pack <= exact_min_fvs(&t, &w).unwrap().optimum);
        }
    }
}
