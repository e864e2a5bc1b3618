//! Second stage: the layering algorithm for T7-free tournaments.
//!
//! Starting from a minimum in-degree vertex `z_1`, the vertex set is peeled
//! into layers `U_1 = {z_1}`, `U_2 = N(z_1)`, then alternately
//! `U_{2k+1} = N(U_{2k}) ∩ W` and `U' = N(U_{2k+1}) ∩ W`, where `N` takes
//! in-neighbours and `W` is the unassigned remainder. `U'` is split by a
//! pivot `z_{2k+1}` in `U_{2k+1}` whose in-neighbours carry at least half of
//! `w(U')`: those go to `U_{2k+2}`, the rest to `S_{2k+2}`.
//!
//! Arcs only run backwards between adjacent layers, so any triangle avoiding
//! `S` lies within one layer or across two adjacent ones. Keeping one parity
//! class (covered exactly per layer, each layer being T5-free) and
//! discarding the other plus `S` gives an FVS of weight at most `7/9 w(V)`.
//!
//! When `N(U_{2k}) ∩ W` is empty but `W` is not, nothing in `W` has an arc
//! into any layer. The layering restarts on `T[W]` and the results are
//! merged; every triangle crossing into `W` then uses a vertex of `S`.

use std::collections::BTreeMap;

use crate::detect::{find_t5_subtournament, find_t7_subtournament, min_in_degree_vertex};
use crate::tournament::{integer, Tournament, VertexSet, Weights};

use super::cdz::cdz_unchecked;
use super::{ApproxError, FvsResult, Stage};

/// Layers, split-off sets and pivots of one layering pass, plus the passes
/// restarted on stalled remainders. Ids are those of the `layers_fvs` input.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LayerDecomposition {
    pub ground: VertexSet,
    /// Vertices of `ground` on no triangle of `T[ground]`; never in the FVS.
    pub unlayered: VertexSet,
    /// `U_1, U_2, ..., U_{2k}`.
    pub layers: Vec<VertexSet>,
    /// `S_2, S_4, ..., S_{2k}` (`S_2` is always empty).
    pub s_parts: Vec<VertexSet>,
    /// `z_1, z_3, ..., z_{2k-1}`.
    pub pivots: Vec<usize>,
    pub restarts: Vec<LayerDecomposition>,
    /// Whether the even class `L_0` was kept, i.e. `w(L_0) >= w(L_1)`.
    pub kept_even: bool,
    /// Exact FVS of each kept layer, keyed by 1-based layer index.
    pub layer_fvs: BTreeMap<usize, VertexSet>,
}

impl LayerDecomposition {
    /// `L_0`: union of the even layers `U_2, U_4, ...`.
    pub fn l0(&self) -> VertexSet {
        self.parity_class(true)
    }

    /// `L_1`: union of the odd layers `U_1, U_3, ...`.
    pub fn l1(&self) -> VertexSet {
        self.parity_class(false)
    }

    fn parity_class(&self, even: bool) -> VertexSet {
        self.layers
            .iter()
            .enumerate()
            .filter(|(i, _)| ((i + 1) % 2 == 0) == even)
            .flat_map(|(_, l)| l.iter())
            .collect()
    }

    pub fn s(&self) -> VertexSet {
        self.s_parts.iter().flat_map(VertexSet::iter).collect()
    }

    /// `U_i` with the 1-based index.
    pub fn layer(&self, index: usize) -> &VertexSet {
        &self.layers[index - 1]
    }

    /// This pass and all restarted passes, depth first.
    pub fn passes(&self) -> Vec<&LayerDecomposition> {
        let mut out = vec![self];
        for r in &self.restarts {
            out.extend(r.passes());
        }
        out
    }

    pub fn stall_count(&self) -> usize {
        self.passes().len() - 1
    }
}

/// FVS of a T7-free tournament whose vertices all lie on triangles, of
/// weight at most `7/9 w(V)`.
pub fn layers_fvs(t: &Tournament, w: &Weights) -> Result<(FvsResult, LayerDecomposition), ApproxError> {
    w.check_len(t.n())?;
    if let Some(witness) = find_t7_subtournament(t) {
        return Err(ApproxError::NotT7Free { witness });
    }
    let cyclic = t.cyclic_vertices();
    if let Some(vertex) = (0..t.n()).find(|&v| !cyclic.contains(v)) {
        return Err(ApproxError::TriangleFreeVertex { vertex });
    }
    let mut tags = BTreeMap::new();
    let decomposition = decompose(t, w, VertexSet::full(t.n()), &mut tags)?;
    let fvs: VertexSet = tags.keys().copied().collect();
    let result = FvsResult {
        weight: w.sum(&fvs),
        fvs,
        stage_tags: tags,
        trace: Vec::new(),
        stall_restarts: decomposition.stall_count(),
    };
    Ok((result, decomposition))
}

fn decompose(
    t: &Tournament,
    w: &Weights,
    ground: VertexSet,
    tags: &mut BTreeMap<usize, Stage>,
) -> Result<LayerDecomposition, ApproxError> {
    let (sub, ids) = t.induced(&ground);
    let cyclic = sub.cyclic_vertices().lift(&ids);
    let mut dec = LayerDecomposition {
        unlayered: ground.difference(&cyclic),
        ground,
        ..Default::default()
    };
    if cyclic.is_empty() {
        return Ok(dec);
    }
    let (core, core_ids) = t.induced(&cyclic);
    let z1 = core_ids[min_in_degree_vertex(&core).expect("nonempty")];

    let first = VertexSet::singleton(z1);
    let second = t.in_neighbours(&first).intersection(&cyclic);
    let mut remaining = cyclic.difference(&first).difference(&second);
    dec.layers = vec![first, second];
    dec.s_parts = vec![VertexSet::empty()];
    dec.pivots = vec![z1];

    while !remaining.is_empty() {
        let odd = t
            .in_neighbours(dec.layers.last().expect("even layer"))
            .intersection(&remaining);
        if odd.is_empty() {
            let stalled = std::mem::take(&mut remaining);
            dec.restarts.push(decompose(t, w, stalled, tags)?);
            break;
        }
        remaining = remaining.difference(&odd);
        let next = t.in_neighbours(&odd).intersection(&remaining);
        remaining = remaining.difference(&next);

        let next_weight = w.sum(&next);
        let pivot = if next.is_empty() {
            odd.iter().next()
        } else {
            odd.iter().find(|&z| {
                let covered = next.intersection(&t.in_neighbours_of(z));
                integer(2) * w.sum(&covered) >= next_weight
            })
        };
        let Some(z) = pivot else {
            return Err(ApproxError::PivotNotFound {
                layer: dec.layers.len() + 1,
            });
        };
        let even = next.intersection(&t.in_neighbours_of(z));
        let split = next.difference(&even);
        dec.layers.push(odd);
        dec.layers.push(even);
        dec.s_parts.push(split);
        dec.pivots.push(z);
    }

    let (l0, l1) = (dec.l0(), dec.l1());
    dec.kept_even = w.sum(&l0) >= w.sum(&l1);
    for v in dec.s().iter() {
        tags.insert(v, Stage::LayersS);
    }
    for v in (if dec.kept_even { &l1 } else { &l0 }).iter() {
        tags.insert(v, Stage::LayersParity);
    }
    let first_kept = if dec.kept_even { 2 } else { 1 };
    for index in (first_kept..=dec.layers.len()).step_by(2) {
        let layer = dec.layer(index).clone();
        let (sub, ids) = t.induced(&layer);
        let local_w = w.restrict(&ids);
        if let Some(witness) = find_t5_subtournament(&sub) {
            return Err(ApproxError::LayerNotT5Free {
                layer: index,
                witness: witness.lift(&ids),
            });
        }
        let exact = cdz_unchecked(&sub, &local_w)?;
        let chosen = exact.fvs.lift(&ids);
        for v in chosen.iter() {
            tags.insert(v, Stage::LayersCdz);
        }
        dec.layer_fvs.insert(index, chosen);
    }
    Ok(dec)
}

/// `w(S) <= w(L_0)` in every pass.
pub fn split_weight_bounded(dec: &LayerDecomposition, w: &Weights) -> bool {
    dec.passes().iter().all(|p| w.sum(&p.s()) <= w.sum(&p.l0()))
}
