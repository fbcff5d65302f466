//! Linked linear series of both types.

use std::collections::BTreeMap;

use crate::curve_model::CurveBundle;
use crate::degree_graph::{self, Multidegree};
use crate::error::{precondition, Error, Result};
use crate::exactlinalg::{Rational, Subspace};

use super::eht::EhtSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// Indexed by `V(G_I)`.
    I,
    /// Indexed by `bar-G_II`.
    II,
}

/// Subspaces `V_w` in the common ambient of the bundle (see
/// [`CurveBundle::layout_q`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkedSeries {
    pub bundle: CurveBundle,
    pub variant: Variant,
    pub spaces: BTreeMap<Multidegree, Subspace>,
}

pub fn index_set(bundle: &CurveBundle, variant: Variant) -> Vec<Multidegree> {
    match variant {
        Variant::I => degree_graph::enumerate_gi(&bundle.cfg),
        Variant::II => degree_graph::enumerate_bar_gii(&bundle.cfg),
    }
}

impl LinkedSeries {
    pub fn new(bundle: CurveBundle, variant: Variant, spaces: BTreeMap<Multidegree, Subspace>) -> Result<Self> {
        let idx = index_set(&bundle, variant);
        let amb = bundle.layout_q().dim();
        for w in &idx {
            match spaces.get(w) {
                None => return Err(Error::Schema(format!("missing multidegree {w:?}"))),
                Some(s) if s.ambient() != amb => {
                    return Err(Error::Schema(format!("space at {w:?} has the wrong ambient dimension")))
                }
                _ => {}
            }
        }
        if spaces.len() != idx.len() {
            return Err(Error::Schema("unexpected multidegrees in series".into()));
        }
        Ok(LinkedSeries { bundle, variant, spaces })
    }

    pub fn k(&self) -> usize {
        self.bundle.cfg.k
    }

    pub fn space(&self, w: &[i64]) -> &Subspace {
        &self.spaces[w]
    }
}

/// Zeroes the components flagged in `mask`.
pub fn zero_components(bundle: &CurveBundle, vec: &[Rational], mask: &[bool]) -> Vec<Rational> {
    let lay = bundle.layout_q();
    let mut out = vec.to_vec();
    for (v, &z) in mask.iter().enumerate() {
        if z {
            for c in lay.component(v) {
                out[c] = Rational::from_integer(0.into());
            }
        }
    }
    out
}

/// Path map inside `bar-G_II` for a vertex multiset.
pub fn path_map_q(bundle: &CurveBundle, vec: &[Rational], multiset: &[usize]) -> Vec<Rational> {
    let mask: Vec<bool> = multiset.iter().map(|&c| c > 0).collect();
    zero_components(bundle, vec, &mask)
}

pub fn map_subspace(bundle: &CurveBundle, s: &Subspace, mask: &[bool]) -> Subspace {
    Subspace::from_vectors(s.ambient(), s.basis().iter().map(|v| zero_components(bundle, v, mask)).collect())
}

/// Directed edges `(w, w', mask)` of the relevant graph, `mask` marking zeroed components.
pub fn graph_edges(bundle: &CurveBundle, variant: Variant) -> Vec<(Multidegree, Multidegree, Vec<bool>)> {
    let cfg = &bundle.cfg;
    let n = cfg.n();
    let mut out = Vec::new();
    match variant {
        Variant::II => {
            for w in degree_graph::enumerate_bar_gii(cfg) {
                for u in 0..n {
                    let w2 = degree_graph::step_ii(cfg, &w, u);
                    if degree_graph::in_bar_gii(cfg, &w2) {
                        let mask = (0..n).map(|x| x == u).collect();
                        out.push((w.clone(), w2, mask));
                    }
                }
            }
        }
        Variant::I => {
            for w in degree_graph::enumerate_gi(cfg) {
                for (e, ed) in cfg.graph.edges().iter().enumerate() {
                    for v in [ed.tail, ed.head] {
                        let w2 = degree_graph::step_i(cfg, &w, e, v);
                        if degree_graph::is_vertex_gi(cfg, &w2) {
                            let mask = (0..n).map(|x| cfg.graph.same_side(e, v, x)).collect();
                            out.push((w.clone(), w2, mask));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Dimensions, containment in `H^0(E_w)`, and `f_ε(V_w) ⊆ V_{w'}` on every edge.
pub fn check_linked(ls: &LinkedSeries) -> Result<bool> {
    let k = ls.k();
    for (w, s) in &ls.spaces {
        if s.dim() != k {
            return precondition(format!("space at {w:?} has dimension {} not k = {k}", s.dim()));
        }
        if !ls.bundle.global_sections_q(w)?.contains_subspace(s) {
            return Ok(false);
        }
    }
    for (w, w2, mask) in graph_edges(&ls.bundle, ls.variant) {
        let img = map_subspace(&ls.bundle, &ls.spaces[&w], &mask);
        if !ls.spaces[&w2].contains_subspace(&img) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `V^v` = restriction of `V_{w_v}` to `Y_v`.
pub fn forgetful_to_eht(ls: &LinkedSeries) -> Result<EhtSeries> {
    let lay = ls.bundle.layout_q();
    let spaces = (0..ls.bundle.n())
        .map(|v| ls.spaces[&degree_graph::extremal_vertex(&ls.bundle.cfg, v)].project(lay.component(v)))
        .collect();
    EhtSeries::new(ls.bundle.clone(), spaces)
}

/// `V_w` for any `w ∈ V(G_II)`, in reduced coordinates: the image of the
/// space at the nearest vertex of `bar-G_II` along the minimal path.
pub fn extend_from_bar(ls: &LinkedSeries, w: &[i64]) -> Result<Subspace> {
    if ls.variant != Variant::II {
        return precondition("extension needs a type-II series");
    }
    let b = &ls.bundle;
    let path = degree_graph::nearest_bar_vertex(&b.cfg, w)?;
    let start = &path.start;
    let dim = b.layout_g(w)?.dim();
    let mut vecs = Vec::new();
    for v in ls.spaces[start].basis() {
        let g = b
            .q_to_g(start, v)?
            .ok_or_else(|| Error::Internal("stored section is not divisible".into()))?;
        vecs.push(b.map_vector_along(start, &g, &path.vertices)?);
    }
    let out = Subspace::from_vectors(dim, vecs);
    if out.dim() != ls.k() {
        return Err(Error::Internal(format!("extension to {w:?} lost dimension")));
    }
    Ok(out)
}

/// Linkage in reduced coordinates across an arbitrary finite window of `V(G_II)`.
pub fn check_linked_window(bundle: &CurveBundle, spaces: &BTreeMap<Multidegree, Subspace>) -> Result<bool> {
    for (w, s) in spaces {
        for u in 0..bundle.n() {
            let w2 = degree_graph::step_ii(&bundle.cfg, w, u);
            let Some(t) = spaces.get(&w2) else { continue };
            for v in s.basis() {
                if !t.contains(&bundle.map_vector_along(w, v, &[u])?) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The type-II series generated by `(w_i, s_i)`: `V_w = span f_{P(w_i, w)}(s_i)`.
pub fn from_generators(bundle: &CurveBundle, gens: &[(Multidegree, Vec<Rational>)]) -> Result<LinkedSeries> {
    let mut spaces = BTreeMap::new();
    let amb = bundle.layout_q().dim();
    let n = bundle.n();
    for w in degree_graph::enumerate_bar_gii(&bundle.cfg) {
        let mut vecs = Vec::new();
        for (wi, si) in gens {
            let p = degree_graph::minimal_path_ii(&bundle.cfg, wi, &w)?;
            vecs.push(path_map_q(bundle, si, &p.multiset(n)));
        }
        let s = Subspace::from_vectors(amb, vecs);
        if s.dim() != bundle.cfg.k {
            return precondition(format!("generators span {} dimensions at {w:?}", s.dim()));
        }
        spaces.insert(w, s);
    }
    LinkedSeries::new(bundle.clone(), Variant::II, spaces)
}
