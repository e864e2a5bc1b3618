//! Tournaments, vertex weights and vertex sets.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact arbitrary-precision rational, always kept in lowest terms.
pub type Rational = num_rational::BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TournamentError {
    #[error("arc table has {got} entries, expected {expected}")]
    TableSize { expected: usize, got: usize },
    #[error("vertex {0} has a loop")]
    Loop(usize),
    #[error("pair ({0}, {1}) is not oriented exactly once")]
    NotAntisymmetric(usize, usize),
    #[error("{0} weights given for {1} vertices")]
    WeightCount(usize, usize),
    #[error("weight of vertex {vertex} is negative ({value})")]
    NegativeWeight { vertex: usize, value: Rational },
    #[error("vertex {vertex} out of range for order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not 3 mod 4, quadratic residues do not give a tournament")]
    NotThreeModFour(u64),
}

/// Sorted, duplicate-free set of vertex ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(mut ids: Vec<usize>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        VertexSet(ids)
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub fn full(n: usize) -> Self {
        VertexSet((0..n).collect())
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(vec![v])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn max_id(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn insert(&mut self, v: usize) {
        if let Err(pos) = self.0.binary_search(&v) {
            self.0.insert(pos, v);
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::new(self.0.iter().chain(other.0.iter()).copied().collect())
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| !other.contains(v)).collect())
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| other.contains(v)).collect())
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| !other.contains(v))
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    /// Translates local ids through `ids` (local id `i` becomes `ids[i]`).
    pub fn lift(&self, ids: &[usize]) -> VertexSet {
        VertexSet::new(self.iter().map(|v| ids[v]).collect())
    }

    pub fn check_range(&self, n: usize) -> Result<(), TournamentError> {
        match self.max_id() {
            Some(v) if v >= n => Err(TournamentError::VertexOutOfRange { vertex: v, n }),
            _ => Ok(()),
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(ids: Vec<usize>) -> Self {
        VertexSet::new(ids)
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(ids: [usize; N]) -> Self {
        VertexSet::new(ids.to_vec())
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// One non-negative rational weight per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weights(Vec<Rational>);

impl Weights {
    pub fn new(values: Vec<Rational>) -> Result<Self, TournamentError> {
        if let Some((vertex, value)) = values.iter().enumerate().find(|(_, w)| w.is_negative()) {
            return Err(TournamentError::NegativeWeight {
                vertex,
                value: value.clone(),
            });
        }
        Ok(Weights(values))
    }

    pub fn unit(n: usize) -> Self {
        Weights(vec![integer(1); n])
    }

    pub fn from_integers(values: &[u64]) -> Self {
        Weights(
            values
                .iter()
                .map(|&v| Rational::from_integer(BigInt::from(v)))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: usize) -> &Rational {
        &self.0[v]
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn sum(&self, set: &VertexSet) -> Rational {
        set.iter().fold(Rational::zero(), |acc, v| acc + &self.0[v])
    }

    pub fn total(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, w| acc + w)
    }

    /// Weights of the vertices `ids`, in that order.
    pub fn restrict(&self, ids: &[usize]) -> Weights {
        Weights(ids.iter().map(|&v| self.0[v].clone()).collect())
    }

    pub fn check_len(&self, n: usize) -> Result<(), TournamentError> {
        if self.0.len() != n {
            return Err(TournamentError::WeightCount(self.0.len(), n));
        }
        Ok(())
    }
}

/// An orientation of the complete graph on `n` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    /// Row-major: `arcs[u * n + v]` iff `u -> v`.
    arcs: Vec<bool>,
}

impl Tournament {
    /// Builds a tournament from `beats(u, v)`, consulted once per pair `u < v`.
    pub fn from_fn(n: usize, mut beats: impl FnMut(usize, usize) -> bool) -> Self {
        let mut arcs = vec![false; n * n];
        for u in 0..n {
            for v in u + 1..n {
                if beats(u, v) {
                    arcs[u * n + v] = true;
                } else {
                    arcs[v * n + u] = true;
                }
            }
        }
        Tournament { n, arcs }
    }

    pub fn from_arcs(n: usize, arcs: Vec<bool>) -> Result<Self, TournamentError> {
        if arcs.len() != n * n {
            return Err(TournamentError::TableSize {
                expected: n * n,
                got: arcs.len(),
            });
        }
        for u in 0..n {
            if arcs[u * n + u] {
                return Err(TournamentError::Loop(u));
            }
            for v in u + 1..n {
                if arcs[u * n + v] == arcs[v * n + u] {
                    return Err(TournamentError::NotAntisymmetric(u, v));
                }
            }
        }
        Ok(Tournament { n, arcs })
    }

    /// `0 -> 1 -> ... -> n-1` with every arc pointing forward.
    pub fn transitive(n: usize) -> Self {
        Tournament::from_fn(n, |_, _| true)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs[u * self.n + v]
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.arcs[u * self.n..(u + 1) * self.n]
            .iter()
            .filter(|&&a| a)
            .count()
    }

    pub fn in_degree(&self, u: usize) -> usize {
        if self.n == 0 {
            return 0;
        }
        self.n - 1 - self.out_degree(u)
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        (0..self.n).map(|u| self.out_degree(u)).collect()
    }

    pub fn out_neighbours(&self, u: usize) -> VertexSet {
        VertexSet((0..self.n).filter(|&v| self.has_arc(u, v)).collect())
    }

    /// `{v | v -> u}`.
    pub fn in_neighbours_of(&self, u: usize) -> VertexSet {
        VertexSet((0..self.n).filter(|&v| self.has_arc(v, u)).collect())
    }

    /// Vertices outside `s` with an arc into some member of `s`.
    pub fn in_neighbours(&self, s: &VertexSet) -> VertexSet {
        VertexSet(
            (0..self.n)
                .filter(|&v| !s.contains(v) && s.iter().any(|u| self.has_arc(v, u)))
                .collect(),
        )
    }

    /// The subtournament on `s`, relabelled `0..|s|` in increasing id order,
    /// together with the map from new ids back to ids of `self`.
    pub fn induced(&self, s: &VertexSet) -> (Tournament, Vec<usize>) {
        let ids = s.as_slice().to_vec();
        let k = ids.len();
        let mut arcs = vec![false; k * k];
        for (i, &u) in ids.iter().enumerate() {
            for (j, &v) in ids.iter().enumerate() {
                arcs[i * k + j] = self.has_arc(u, v);
            }
        }
        (Tournament { n: k, arcs }, ids)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Tournament {
        let n = self.n;
        let mut arcs = vec![false; n * n];
        for u in 0..n {
            for v in 0..n {
                arcs[perm[u] * n + perm[v]] = self.has_arc(u, v);
            }
        }
        Tournament { n, arcs }
    }

    /// Strongly connected components in topological order of the
    /// condensation: every arc between two components points from the
    /// earlier one to the later one.
    ///
    /// Uses Landau's score criterion: after sorting by decreasing out-degree,
    /// a prefix of `k` vertices is a union of leading components exactly when
    /// its score sum is `k(k-1)/2 + k(n-k)`.
    pub fn scc_decomposition(&self) -> Vec<VertexSet> {
        let n = self.n;
        let scores = self.out_degrees();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(scores[v]), v));
        let mut components = Vec::new();
        let mut start = 0;
        let mut prefix_sum = 0;
        for (k, &v) in order.iter().enumerate() {
            prefix_sum += scores[v];
            let size = k + 1;
            if prefix_sum == size * (size - 1) / 2 + size * (n - size) {
                components.push(VertexSet::new(order[start..size].to_vec()));
                start = size;
            }
        }
        components
    }

    /// Vertices lying on at least one directed triangle.
    pub fn cyclic_vertices(&self) -> VertexSet {
        self.scc_decomposition()
            .into_iter()
            .filter(|c| c.len() >= 3)
            .flat_map(VertexSet::into_vec)
            .collect()
    }

    /// Row `u`, as the characters used by the text format.
    pub(crate) fn row_string(&self, u: usize) -> String {
        (0..self.n)
            .map(|v| match (u == v, self.has_arc(u, v)) {
                (true, _) => '-',
                (false, true) => '1',
                (false, false) => '0',
            })
            .collect()
    }
}
