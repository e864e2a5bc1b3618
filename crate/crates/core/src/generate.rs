//! Instance generators.
//!
//! All randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64`, so a `(n, seed)` pair names the same tournament on every
//! platform. Pairs are oriented in row-major order `(0,1), (0,2), ..., (1,2), ...`,
//! one fair coin each, `true` meaning the lower id beats the higher.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::detect::{arcs_subset_in_family, Family};
use crate::tournament::{Tournament, TournamentError, Weights};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// SplitMix64 finalizer applied to `seed + index`; independent per-trial seeds.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn random_tournament(n: usize, seed: u64) -> Tournament {
    let mut rng = rng(seed);
    Tournament::from_fn(n, |_, _| rng.gen::<bool>())
}

/// Integer weights drawn uniformly from `0..=max`.
pub fn random_weights(n: usize, max: u64, seed: u64) -> Weights {
    let mut rng = rng(seed);
    let values: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=max)).collect();
    Weights::from_integers(&values)
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Paley tournament on `q` vertices: `u -> v` iff `v - u` is a nonzero
/// square mod `q`. Requires `q` prime with `q = 3 (mod 4)`.
pub fn paley_tournament(q: u64) -> Result<Tournament, TournamentError> {
    if !is_prime(q) {
        return Err(TournamentError::NotPrime(q));
    }
    if q % 4 != 3 {
        return Err(TournamentError::NotThreeModFour(q));
    }
    let mut residue = vec![false; q as usize];
    for x in 1..q {
        residue[(x * x % q) as usize] = true;
    }
    let n = q as usize;
    Ok(Tournament::from_fn(n, |u, v| residue[(v + n - u) % n]))
}

/// Random tournament containing no member of `family`.
///
/// Vertices are added one at a time around a hidden random ranking, each
/// arc flipped against the ranking with an instance-wide probability; a new
/// vertex's arcs are redrawn until no forbidden subtournament through it
/// appears. The flip rate is drawn from `0.05..max_flip`, so callers can
/// trade cycle density for generation speed.
pub fn random_free_tournament(n: usize, family: Family, seed: u64, max_flip: f64) -> Tournament {
    let mut rng = rng(seed);
    let k = family.order();
    'attempt: loop {
        let flip = rng.gen_range(0.05..max_flip.max(0.06));
        let rank: Vec<u64> = (0..n).map(|_| rng.gen()).collect();
        let mut beats = vec![vec![false; n]; n];
        for v in 0..n {
            let mut placed = false;
            for _ in 0..200 {
                for u in 0..v {
                    let forward = rank[u] < rank[v];
                    let u_beats_v = forward ^ rng.gen_bool(flip);
                    beats[u][v] = u_beats_v;
                    beats[v][u] = !u_beats_v;
                }
                let arc = |a: usize, b: usize| beats[a][b];
                let clean = v + 1 < k
                    || (0..v).combinations(k - 1).all(|mut rest| {
                        rest.push(v);
                        !arcs_subset_in_family(&arc, &rest, family)
                    });
                if clean {
                    placed = true;
                    break;
                }
            }
            if !placed {
                continue 'attempt;
            }
        }
        return Tournament::from_fn(n, |u, v| beats[u][v]);
    }
}
