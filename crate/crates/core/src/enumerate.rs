//! Canonical forms of small tournaments and isomorphism-class enumeration.
//!
//! A tournament of order `k` is encoded as a `k(k-1)/2`-bit arc code: pair
//! `(i, j)`, `i < j`, in lexicographic order, most significant bit first, bit
//! set iff `i -> j`. The canonical form is the least code over all `k!`
//! relabellings.

use std::collections::HashSet;

use itertools::Itertools;

use crate::detect::DetectError;
use crate::par::{self, Execution};
use crate::tournament::Tournament;

pub const CANONICAL_ORDER_CAP: usize = 8;
pub const ENUMERATION_ORDER_CAP: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub order: usize,
    pub code: u64,
}

impl CanonicalForm {
    pub fn to_tournament(&self) -> Tournament {
        decode(self.order, self.code)
    }
}

fn pair_count(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

/// Arc code under the labelling `perm`: position `i` holds vertex `perm[i]`.
fn code_under(k: usize, beats: impl Fn(usize, usize) -> bool, perm: &[usize]) -> u64 {
    let mut code = 0u64;
    for i in 0..k {
        for j in i + 1..k {
            code = (code << 1) | u64::from(beats(perm[i], perm[j]));
        }
    }
    code
}

pub fn encode(t: &Tournament) -> u64 {
    let identity: Vec<usize> = (0..t.n()).collect();
    code_under(t.n(), |u, v| t.has_arc(u, v), &identity)
}

pub fn decode(k: usize, code: u64) -> Tournament {
    let bits = pair_count(k);
    let mut idx = 0;
    Tournament::from_fn(k, |_, _| {
        idx += 1;
        (code >> (bits - idx)) & 1 == 1
    })
}

pub fn canonical_form(t: &Tournament) -> Result<CanonicalForm, DetectError> {
    let k = t.n();
    if k > CANONICAL_ORDER_CAP {
        return Err(DetectError::OrderCap {
            cap: CANONICAL_ORDER_CAP,
            got: k,
        });
    }
    let code = (0..k)
        .permutations(k)
        .map(|perm| code_under(k, |u, v| t.has_arc(u, v), &perm))
        .min()
        .unwrap_or(0);
    Ok(CanonicalForm { order: k, code })
}

/// Isomorphism classes of order-`order` tournaments with no transitive
/// subtournament on `forbidden_transitive` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyEnumeration {
    pub order: usize,
    pub forbidden_transitive: usize,
    /// Labelled tournaments that passed the filter.
    pub labelled: usize,
    /// One canonical form per class, ascending by code.
    pub classes: Vec<CanonicalForm>,
}

impl FamilyEnumeration {
    pub fn count(&self) -> usize {
        self.classes.len()
    }

    pub fn representatives(&self) -> Vec<Tournament> {
        self.classes.iter().map(CanonicalForm::to_tournament).collect()
    }
}

/// Per-vertex out-neighbourhood bitmasks of a labelled code.
fn out_masks(k: usize, code: u64) -> [u8; 8] {
    let bits = pair_count(k);
    let mut out = [0u8; 8];
    let mut idx = 0;
    for i in 0..k {
        for j in i + 1..k {
            idx += 1;
            if (code >> (bits - idx)) & 1 == 1 {
                out[i] |= 1 << j;
            } else {
                out[j] |= 1 << i;
            }
        }
    }
    out
}

fn mask_is_transitive(out: &[u8; 8], subset: u8) -> bool {
    let mut seen = 0u16;
    let mut rest = subset;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let d = (out[v] & subset).count_ones();
        if seen & (1 << d) != 0 {
            return false;
        }
        seen |= 1 << d;
    }
    true
}

const CHUNK_BITS: usize = 14;

pub fn enumerate_family(order: usize, forbidden_transitive: usize) -> Result<FamilyEnumeration, DetectError> {
    enumerate_family_with(order, forbidden_transitive, Execution::default())
}

/// Scans all `2^(k(k-1)/2)` labelled tournaments, keeps those without a
/// transitive `forbidden_transitive`-subset and merges them into classes.
///
/// The filter runs in parallel chunks; deduplication walks the survivors in
/// code order, and each newly found class inserts its whole orbit, so every
/// later relabelling is recognised by a set lookup.
pub fn enumerate_family_with(
    order: usize,
    forbidden_transitive: usize,
    exec: Execution,
) -> Result<FamilyEnumeration, DetectError> {
    if order > ENUMERATION_ORDER_CAP {
        return Err(DetectError::OrderCap {
            cap: ENUMERATION_ORDER_CAP,
            got: order,
        });
    }
    let k = order;
    let bits = pair_count(k);
    let subsets: Vec<u8> = if forbidden_transitive > k {
        Vec::new()
    } else {
        (0..k)
            .combinations(forbidden_transitive)
            .map(|s| s.iter().fold(0u8, |m, &v| m | (1 << v)))
            .collect()
    };
    let keep = |code: u64| {
        let out = out_masks(k, code);
        !subsets.iter().any(|&s| mask_is_transitive(&out, s))
    };

    let total: u64 = 1 << bits;
    let chunk_bits = CHUNK_BITS.min(bits);
    let chunks = (total >> chunk_bits) as usize;
    let survivors: Vec<u64> = par::map_range(exec, 0..chunks, |c| {
        let start = (c as u64) << chunk_bits;
        (start..start + (1u64 << chunk_bits))
            .filter(|&code| keep(code))
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect();

    let perms: Vec<Vec<usize>> = (0..k).permutations(k).collect();
    let mut seen: HashSet<u64> = HashSet::new();
    let mut classes = Vec::new();
    for &code in &survivors {
        if seen.contains(&code) {
            continue;
        }
        let out = out_masks(k, code);
        let beats = |u: usize, v: usize| out[u] >> v & 1 == 1;
        let mut least = u64::MAX;
        for perm in &perms {
            let c = code_under(k, beats, perm);
            least = least.min(c);
            seen.insert(c);
        }
        classes.push(CanonicalForm { order: k, code: least });
    }
    classes.sort();
    Ok(FamilyEnumeration {
        order,
        forbidden_transitive,
        labelled: survivors.len(),
        classes,
    })
}
