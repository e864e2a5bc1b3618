//! Triangles, transitive subtournaments, the forbidden families T5 and T7,
//! 2-in-domination and distance layers.
//!
//! Every search returns the lexicographically least witness.

use itertools::Itertools;
use thiserror::Error;

use crate::par::{self, Execution};
use crate::tournament::{Tournament, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DetectError {
    #[error("expected a tournament on {expected} vertices, got {got}")]
    WrongOrder { expected: usize, got: usize },
    #[error("order {got} exceeds the cap of {cap}")]
    OrderCap { cap: usize, got: usize },
}

/// The two forbidden families.
///
/// T5: 5-vertex tournaments without a transitive 4-subtournament.
/// T7: 7-vertex tournaments without a transitive 5-subtournament.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    T5,
    T7,
}

impl Family {
    pub fn order(self) -> usize {
        match self {
            Family::T5 => 5,
            Family::T7 => 7,
        }
    }

    /// Order of the transitive subtournament whose absence defines the family.
    pub fn forbidden_transitive(self) -> usize {
        match self {
            Family::T5 => 4,
            Family::T7 => 5,
        }
    }

    /// Minimum FVS size of every member.
    pub fn min_fvs_size(self) -> usize {
        self.order() - self.forbidden_transitive() + 1
    }
}

/// Whether `subset` induces an acyclic subtournament under `arc`, decided by
/// pairwise-distinct internal out-degrees.
pub(crate) fn arcs_subset_is_transitive(arc: &impl Fn(usize, usize) -> bool, subset: &[usize]) -> bool {
    let k = subset.len();
    let mut seen = [false; 64];
    debug_assert!(k <= 64);
    for &u in subset {
        let d = subset.iter().filter(|&&v| v != u && arc(u, v)).count();
        if seen[d] {
            return false;
        }
        seen[d] = true;
    }
    true
}

pub(crate) fn arcs_subset_in_family(arc: &impl Fn(usize, usize) -> bool, subset: &[usize], family: Family) -> bool {
    debug_assert_eq!(subset.len(), family.order());
    !subset
        .iter()
        .copied()
        .combinations(family.forbidden_transitive())
        .any(|sub| arcs_subset_is_transitive(arc, &sub))
}

pub fn subset_is_transitive(t: &Tournament, subset: &[usize]) -> bool {
    arcs_subset_is_transitive(&|u, v| t.has_arc(u, v), subset)
}

/// No directed cycle; checked as pairwise-distinct out-degrees.
pub fn is_transitive(t: &Tournament) -> bool {
    let all: Vec<usize> = (0..t.n()).collect();
    let distinct = subset_is_transitive(t, &all);
    debug_assert_eq!(distinct, find_triangle(t).is_none());
    distinct
}

fn is_triangle(t: &Tournament, a: usize, b: usize, c: usize) -> bool {
    (t.has_arc(a, b) && t.has_arc(b, c) && t.has_arc(c, a))
        || (t.has_arc(a, c) && t.has_arc(c, b) && t.has_arc(b, a))
}

pub fn find_triangle(t: &Tournament) -> Option<VertexSet> {
    let n = t.n();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if is_triangle(t, a, b, c) {
                    return Some(VertexSet::from([a, b, c]));
                }
            }
        }
    }
    None
}

/// Vertex sets of all directed triangles, lexicographically ordered.
pub fn all_triangles(t: &Tournament) -> Vec<VertexSet> {
    let n = t.n();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if is_triangle(t, a, b, c) {
                    out.push(VertexSet::from([a, b, c]));
                }
            }
        }
    }
    out
}

/// Least `k`-subset inducing a transitive subtournament.
pub fn find_transitive_subtournament(t: &Tournament, k: usize) -> Option<VertexSet> {
    if k > t.n() {
        return None;
    }
    (0..t.n())
        .combinations(k)
        .find(|s| subset_is_transitive(t, s))
        .map(VertexSet::new)
}

pub fn has_transitive_subtournament(t: &Tournament, k: usize) -> bool {
    find_transitive_subtournament(t, k).is_some()
}

pub fn in_family(t: &Tournament, family: Family) -> Result<bool, DetectError> {
    if t.n() != family.order() {
        return Err(DetectError::WrongOrder {
            expected: family.order(),
            got: t.n(),
        });
    }
    Ok(!has_transitive_subtournament(t, family.forbidden_transitive()))
}

pub fn in_t5(t: &Tournament) -> Result<bool, DetectError> {
    in_family(t, Family::T5)
}

pub fn in_t7(t: &Tournament) -> Result<bool, DetectError> {
    in_family(t, Family::T7)
}

/// Least subset of `t` inducing a member of `family`.
pub fn find_family_subtournament_with(
    t: &Tournament,
    family: Family,
    exec: Execution,
) -> Option<VertexSet> {
    let n = t.n();
    let k = family.order();
    if n < k {
        return None;
    }
    let arc = |u: usize, v: usize| t.has_arc(u, v);
    // Splitting on the least element keeps the global lexicographic order.
    par::find_map_first(exec, 0..n - k + 1, |first| {
        (first + 1..n).combinations(k - 1).find_map(|rest| {
            let mut subset = Vec::with_capacity(k);
            subset.push(first);
            subset.extend(rest);
            arcs_subset_in_family(&arc, &subset, family).then(|| VertexSet::new(subset))
        })
    })
}

pub fn find_t5_subtournament(t: &Tournament) -> Option<VertexSet> {
    find_family_subtournament_with(t, Family::T5, Execution::default())
}

/// Least 7-subset inducing a member of T7; `None` means `t` is T7-free.
pub fn find_t7_subtournament(t: &Tournament) -> Option<VertexSet> {
    find_family_subtournament_with(t, Family::T7, Execution::default())
}

/// Does `z_set` 2-in-dominate `s`? Returns the least dominating `Z'`
/// (smaller sizes first, then lexicographic): every `v` in `s` has an arc
/// into some member of `Z'`.
pub fn two_in_dominates(t: &Tournament, z_set: &VertexSet, s: &VertexSet) -> Option<VertexSet> {
    if s.is_empty() {
        return Some(VertexSet::empty());
    }
    let dominated_by = |zs: &[usize]| s.iter().all(|v| zs.iter().any(|&z| t.has_arc(v, z)));
    let candidates = z_set.as_slice();
    if let Some(&z) = candidates.iter().find(|&&z| dominated_by(&[z])) {
        return Some(VertexSet::singleton(z));
    }
    candidates
        .iter()
        .copied()
        .tuple_combinations()
        .find(|&(a, b)| dominated_by(&[a, b]))
        .map(|(a, b)| VertexSet::from([a, b]))
}

/// `V_1(z) = {z}`, `V_{l+1}(z)` = vertices outside earlier layers with an arc
/// into `V_l(z)`; i.e. layer `l` holds the vertices whose shortest path to
/// `z` has length `l - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerSequence {
    pub root: usize,
    pub layers: Vec<VertexSet>,
    /// Vertices with no directed path to the root.
    pub unreachable: VertexSet,
}

impl LayerSequence {
    /// `V_l(z)` with the 1-based index used in the literature; empty past the end.
    pub fn layer(&self, index: usize) -> VertexSet {
        self.layers
            .get(index.wrapping_sub(1))
            .cloned()
            .unwrap_or_default()
    }
}

pub fn layer_sequence(t: &Tournament, z: usize) -> LayerSequence {
    assert!(z < t.n(), "root {z} out of range");
    let mut seen = VertexSet::singleton(z);
    let mut layers = vec![VertexSet::singleton(z)];
    loop {
        let next = t
            .in_neighbours(layers.last().expect("nonempty"))
            .difference(&seen);
        if next.is_empty() {
            break;
        }
        seen = seen.union(&next);
        layers.push(next);
    }
    let unreachable = VertexSet::full(t.n()).difference(&seen);
    LayerSequence {
        root: z,
        layers,
        unreachable,
    }
}

/// Vertex of minimum in-degree, least id on ties.
pub fn min_in_degree_vertex(t: &Tournament) -> Option<usize> {
    (0..t.n()).min_by_key(|&v| (t.in_degree(v), v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{paley_tournament, random_tournament};

    fn three_cycle() -> Tournament {
        Tournament::from_fn(3, |u, v| (u, v) != (0, 2))
    }

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn transitivity_examples() {
        assert!(!is_transitive(&three_cycle()));
        assert!(is_transitive(&Tournament::transitive(5)));
        let p7 = paley_tournament(7).unwrap();
        assert!(!is_transitive(&p7));
        assert!(is_transitive(&Tournament::transitive(0)));
    }

    #[test]
    fn triangle_examples() {
        assert_eq!(find_triangle(&Tournament::transitive(6)), None);
        assert_eq!(find_triangle(&three_cycle()), Some(VertexSet::from([0, 1, 2])));
        assert!(all_triangles(&Tournament::transitive(4)).is_empty());
        assert_eq!(all_triangles(&three_cycle()), vec![VertexSet::from([0, 1, 2])]);

        // Paley-7 triangle count by an independent scan over all C(7,3) triples.
        let p7 = paley_tournament(7).unwrap();
        let mut brute = Vec::new();
        for a in 0..7 {
            for b in 0..7 {
                for c in 0..7 {
                    if a < b && a < c && b != c && p7.has_arc(a, b) && p7.has_arc(b, c) && p7.has_arc(c, a) {
                        brute.push(VertexSet::from([a, b, c]));
                    }
                }
            }
        }
        brute.sort();
        assert_eq!(brute.len(), 14);
        let tri = all_triangles(&p7);
        assert_eq!(tri, brute);
        assert_eq!(find_triangle(&p7), Some(brute[0].clone()));
    }

    #[test]
    fn triangle_count_matches_transitive_triples_on_order_five() {
        for seed in 0..40 {
            let t = random_tournament(5, seed);
            let transitive_triples = (0..5)
                .combinations(3)
                .filter(|s| subset_is_transitive(&t, s))
                .count();
            assert_eq!(all_triangles(&t).len(), binom(5, 3) - transitive_triples);
            // Score formula: transitive triples = sum of C(out-degree, 2).
            let by_scores: usize = t.out_degrees().iter().map(|&d| binom(d, 2)).sum();
            assert_eq!(transitive_triples, by_scores);
        }
    }

    #[test]
    fn transitive_subtournament_examples() {
        let p7 = paley_tournament(7).unwrap();
        for k in 0..=2 {
            assert!(has_transitive_subtournament(&p7, k));
            assert!(has_transitive_subtournament(&three_cycle(), k));
        }
        assert!(!has_transitive_subtournament(&three_cycle(), 3));
        assert_eq!((0..7).combinations(5).count(), 21);
        assert!(!has_transitive_subtournament(&p7, 5));
        assert!(has_transitive_subtournament(&p7, 3));
        assert!(!has_transitive_subtournament(&p7, 8));
    }

    #[test]
    fn family_membership() {
        assert_eq!(in_t5(&Tournament::transitive(5)), Ok(false));
        let p7 = paley_tournament(7).unwrap();
        assert_eq!(in_t7(&p7), Ok(true));
        assert_eq!(
            in_t5(&p7),
            Err(DetectError::WrongOrder { expected: 5, got: 7 })
        );
        // Paley-7 minus a vertex has no transitive 4-subset, so adding a
        // dominated apex still leaves no transitive 5-subset.
        let apexed = Tournament::from_fn(7, |u, v| if v == 6 { true } else { p7.has_arc(u, v) });
        assert_eq!(in_t7(&apexed), Ok(true));
        assert_eq!(find_t7_subtournament(&p7), Some(VertexSet::full(7)));
        assert_eq!(find_t7_subtournament(&apexed), Some(VertexSet::full(7)));
        // One reversed arc in TT7 leaves {1, ..., 5} transitive.
        let flipped = Tournament::from_fn(7, |u, v| (u, v) != (0, 6));
        assert_eq!(in_t7(&flipped), Ok(false));
        assert_eq!(find_t7_subtournament(&flipped), None);
        assert_eq!(find_t7_subtournament(&three_cycle()), None);
        assert_eq!(find_t7_subtournament(&Tournament::transitive(9)), None);
        assert_eq!(Family::T5.min_fvs_size(), 2);
        assert_eq!(Family::T7.min_fvs_size(), 3);
    }

    #[test]
    fn family_search_modes_agree() {
        for seed in 0..10 {
            let t = random_tournament(9, seed);
            for fam in [Family::T5, Family::T7] {
                assert_eq!(
                    find_family_subtournament_with(&t, fam, Execution::Sequential),
                    find_family_subtournament_with(&t, fam, Execution::Parallel)
                );
            }
        }
    }

    #[test]
    fn two_in_domination() {
        let t = random_tournament(8, 3);
        assert_eq!(
            two_in_dominates(&t, &VertexSet::from([0]), &VertexSet::empty()),
            Some(VertexSet::empty())
        );
        let beaters = t.in_neighbours_of(0);
        if !beaters.is_empty() {
            assert_eq!(
                two_in_dominates(&t, &VertexSet::from([0]), &beaters),
                Some(VertexSet::from([0]))
            );
        }
        // Brute force over every split of random instances.
        for seed in 0..30 {
            let t = random_tournament(9, seed);
            let z_set = VertexSet::from([0, 1, 2, 3]);
            let s = VertexSet::from([4, 5, 6, 7, 8]);
            let dominated = |zs: &[usize]| s.iter().all(|v| zs.iter().any(|&z| t.has_arc(v, z)));
            let mut expected = None;
            'outer: for size in 1..=2 {
                for zs in z_set.iter().combinations(size) {
                    if dominated(&zs) {
                        expected = Some(VertexSet::new(zs));
                        break 'outer;
                    }
                }
            }
            assert_eq!(two_in_dominates(&t, &z_set, &s), expected);
        }
    }

    #[test]
    fn layer_examples() {
        let c3 = three_cycle();
        let seq = layer_sequence(&c3, 0);
        assert_eq!(
            seq.layers,
            vec![VertexSet::from([0]), VertexSet::from([2]), VertexSet::from([1])]
        );
        assert!(seq.unreachable.is_empty());

        let seq = layer_sequence(&Tournament::transitive(3), 0);
        assert_eq!(seq.layers, vec![VertexSet::from([0])]);
        assert_eq!(seq.unreachable, VertexSet::from([1, 2]));

        let p7 = paley_tournament(7).unwrap();
        let seq = layer_sequence(&p7, 0);
        assert_eq!(
            seq.layers,
            vec![
                VertexSet::from([0]),
                VertexSet::from([3, 5, 6]),
                VertexSet::from([1, 2, 4])
            ]
        );
        assert_eq!(seq.layer(2), VertexSet::from([3, 5, 6]));
        assert!(seq.layer(9).is_empty());
    }

    /// Reverse-arc BFS distance, independent of `layer_sequence`.
    fn bfs_distances(t: &Tournament, z: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; t.n()];
        dist[z] = Some(0);
        let mut queue = std::collections::VecDeque::from([z]);
        while let Some(u) = queue.pop_front() {
            for v in 0..t.n() {
                if dist[v].is_none() && t.has_arc(v, u) {
                    dist[v] = Some(dist[u].unwrap() + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    #[test]
    fn layers_match_bfs() {
        for seed in 0..30 {
            let t = random_tournament(10, seed);
            for z in 0..10 {
                let seq = layer_sequence(&t, z);
                let dist = bfs_distances(&t, z);
                for (v, d) in dist.iter().enumerate() {
                    match *d {
                        Some(d) => assert!(seq.layer(d + 1).contains(v)),
                        None => assert!(seq.unreachable.contains(v)),
                    }
                }
            }
        }
    }
}
