//! Dense exact simplex for covering LPs, run on the packing dual.
//!
//! The covering problem `min w.x, A x >= b, x >= 0` is solved through its
//! dual `max b.y, A^T y + s = w, y, s >= 0`. Non-negative weights make the
//! all-slack basis feasible, so no phase one is needed. The covering optimum
//! is read off the simplex multipliers, and it is a vertex of the covering
//! polyhedron: every basic `y_r` marks a tight row, every basic slack `s_v`
//! marks `x_v = 0`, and the basis matrix is nonsingular.
//!
//! Pivoting follows Bland's rule (least entering index, least leaving basic
//! index on ratio ties), which terminates under degeneracy. Adding a covering
//! row adds a dual column whose tableau column is `B^-1 a`; the current basis
//! stays feasible, so lazily generated rows warm-start the next solve.

use num_traits::{One, Signed, Zero};

use crate::tournament::{Rational, VertexSet};

use super::LpError;

pub(crate) struct DualTableau {
    n: usize,
    /// `n` rows, one per vertex constraint; columns: slacks `0..n`, then one per covering row.
    table: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    /// `c_j - pi A_j`; positive entries may enter.
    reduced: Vec<Rational>,
    value: Rational,
    pub(crate) pivots: usize,
}

impl DualTableau {
    pub(crate) fn new(weights: &[Rational]) -> Self {
        let n = weights.len();
        let table = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        DualTableau {
            n,
            table,
            rhs: weights.to_vec(),
            basis: (0..n).collect(),
            reduced: vec![Rational::zero(); n],
            value: Rational::zero(),
            pivots: 0,
        }
    }

    /// Current covering point: `x_v = -reduced cost of slack v`.
    pub(crate) fn primal(&self) -> Vec<Rational> {
        self.reduced[..self.n].iter().map(|d| -d).collect()
    }

    pub(crate) fn column_count(&self) -> usize {
        self.reduced.len() - self.n
    }

    /// Appends the dual column of covering row `support . x >= rhs`.
    pub(crate) fn add_row(&mut self, support: &VertexSet, rhs: &Rational) {
        let mut reduced = rhs.clone();
        for v in support.iter() {
            reduced += &self.reduced[v];
        }
        for i in 0..self.n {
            let entry = support
                .iter()
                .fold(Rational::zero(), |acc, v| acc + &self.table[i][v]);
            self.table[i].push(entry);
        }
        self.reduced.push(reduced);
    }

    pub(crate) fn optimize(&mut self) -> Result<(), LpError> {
        while let Some(enter) = self.reduced.iter().position(|d| d.is_positive()) {
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.n {
                let a = &self.table[i][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((r, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*r]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let (row, _) = leave.ok_or(LpError::Unbounded)?;
            self.pivot(row, enter);
        }
        Ok(())
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.table[row][col].recip();
        for entry in self.table[row].iter_mut() {
            *entry *= &inv;
        }
        self.rhs[row] *= &inv;
        let pivot_row = self.table[row].clone();
        let pivot_rhs = self.rhs[row].clone();
        for i in 0..self.n {
            if i == row || self.table[i][col].is_zero() {
                continue;
            }
            let factor = self.table[i][col].clone();
            for (entry, p) in self.table[i].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *entry -= &factor * p;
                }
            }
            self.rhs[i] -= &factor * &pivot_rhs;
        }
        let factor = self.reduced[col].clone();
        for (entry, p) in self.reduced.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *entry -= &factor * p;
            }
        }
        self.value += &factor * &pivot_rhs;
        self.basis[row] = col;
        self.pivots += 1;
    }

    pub(crate) fn value(&self) -> &Rational {
        &self.value
    }

    /// Packing values, one per covering row in insertion order.
    pub(crate) fn dual(&self) -> Vec<Rational> {
        let mut y = vec![Rational::zero(); self.column_count()];
        for (i, &b) in self.basis.iter().enumerate() {
            if b >= self.n {
                y[b - self.n] = self.rhs[i].clone();
            }
        }
        y
    }

    /// Basic dual columns, split into covering rows forced tight and
    /// vertices forced to zero.
    pub(crate) fn basis_description(&self) -> (Vec<usize>, Vec<usize>) {
        let mut tight = Vec::new();
        let mut zero = Vec::new();
        for &b in &self.basis {
            if b >= self.n {
                tight.push(b - self.n);
            } else {
                zero.push(b);
            }
        }
        tight.sort_unstable();
        zero.sort_unstable();
        (tight, zero)
    }
}
