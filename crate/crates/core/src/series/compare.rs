//! From EHT data to a type-I linked series by shrinking kernels.

use std::collections::BTreeMap;

use crate::degree_graph::{self, Multidegree};
use crate::error::{precondition, Error, Result};
use crate::exactlinalg::{MatQ, Subspace};

use super::eht::{check_eht_kernel, check_eht_kernel_unchecked, kernel_at, EhtSeries};
use super::linked::{check_linked, forgetful_to_eht, map_subspace, LinkedSeries, Variant};

/// Deterministic choices made while shrinking.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TieBreak {
    /// Visit edges in reverse id order.
    pub reverse_edges: bool,
    /// Drop the lowest rather than the highest echelon pivot.
    pub drop_lowest: bool,
}

pub fn eht_to_linked(s: &EhtSeries) -> Result<LinkedSeries> {
    eht_to_linked_with(s, TieBreak::default())
}

pub fn eht_to_linked_with(s: &EhtSeries, tb: TieBreak) -> Result<LinkedSeries> {
    if !check_eht_kernel(s)? {
        return precondition("input is not an EHT limit series");
    }
    build(s, tb)
}

/// As [`eht_to_linked_with`] but without requiring condition (I).
pub fn eht_to_linked_unchecked(s: &EhtSeries, tb: TieBreak) -> Result<LinkedSeries> {
    if !check_eht_kernel_unchecked(s)? {
        return precondition("kernel dimensions drop below k");
    }
    build(s, tb)
}

fn build(s: &EhtSeries, tb: TieBreak) -> Result<LinkedSeries> {
    let b = &s.bundle;
    let cfg = &b.cfg;
    let k = s.k();
    let mut spaces: BTreeMap<Multidegree, Subspace> = BTreeMap::new();
    for w in degree_graph::enumerate_gi(cfg) {
        spaces.insert(w.clone(), kernel_at(s, &w)?);
    }
    let mut edges: Vec<usize> = (0..cfg.graph.num_edges()).collect();
    if tb.reverse_edges {
        edges.reverse();
    }
    let n = b.n();
    for e in edges {
        let ed = &cfg.graph.edges()[e];
        let (v1, v2) = (ed.tail, ed.head);
        let at = |a: i64| degree_graph::gi_chain_point(cfg, v1, v2, a);
        let side1: Vec<bool> = (0..n).map(|u| cfg.graph.same_side(e, v1, u)).collect();
        let side2: Vec<bool> = side1.iter().map(|x| !x).collect();
        loop {
            let Some(a) = (1..cfg.b).rev().find(|&a| spaces[&at(a)].dim() > k) else { break };
            let w = at(a);
            let cur = spaces[&w].clone();
            // From a+1 the step zeroes v2's side; from a-1 it zeroes v1's side.
            let from_next = map_subspace(b, &spaces[&at(a + 1)], &side2);
            let from_prev = map_subspace(b, &spaces[&at(a - 1)], &side1);
            let reduced = shrink(s, &cur, e, &w, &from_next, &from_prev, &side2, tb)?;
            debug_assert_eq!(reduced.dim() + 1, cur.dim());
            spaces.insert(w, reduced);
        }
    }
    let out = LinkedSeries::new(b.clone(), Variant::I, spaces)?;
    if !check_linked(&out)? || forgetful_to_eht(&out)?.spaces != s.spaces {
        return Err(Error::Internal("kernel reduction did not produce a linked preimage".into()));
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn shrink(
    s: &EhtSeries,
    cur: &Subspace,
    e: usize,
    w: &[i64],
    from_next: &Subspace,
    from_prev: &Subspace,
    side2: &[bool],
    tb: TieBreak,
) -> Result<Subspace> {
    let b = &s.bundle;
    let head = b.cfg.graph.edges()[e].head;
    let t = b.t(w, e, head)?.max(0) as usize;
    let lay = b.layout_q();
    let value = MatQ::from_rows_with_cols(
        (0..b.r()).map(|j| b.taylor_row_q(&lay, e, head, j, t)).collect(),
        lay.dim(),
    );
    let fiber = cur.map(&value);
    if !fiber.is_zero() {
        // Some section is nonvanishing at the node: keep those whose value lies in a hyperplane.
        let h = hyperplane_containing(&fiber, &Subspace::zero(fiber.ambient()), tb);
        return Ok(cur.preimage_within(&value, &h));
    }
    let restrict = |x: &Subspace| map_subspace(b, x, side2);
    let full = restrict(cur);
    let sub = restrict(from_next);
    if sub.dim() < full.dim() {
        let h = hyperplane_containing(&full, &sub, tb);
        let mask_matrix = zero_mask_matrix(b, side2);
        return Ok(cur.preimage_within(&mask_matrix, &h));
    }
    let need = from_next.sum(from_prev);
    if need.dim() < cur.dim() {
        return Ok(hyperplane_containing(cur, &need, tb));
    }
    Err(Error::Internal("no admissible codimension-one subspace".into()))
}

fn zero_mask_matrix(b: &crate::curve_model::CurveBundle, mask: &[bool]) -> MatQ {
    let lay = b.layout_q();
    let mut m = MatQ::identity(lay.dim());
    for (v, &z) in mask.iter().enumerate() {
        if z {
            for c in lay.component(v) {
                m[(c, c)] = num::Zero::zero();
            }
        }
    }
    m
}

/// A codimension-one subspace of `x` containing `y` (which must be proper).
pub fn hyperplane_containing(x: &Subspace, y: &Subspace, tb: TieBreak) -> Subspace {
    let mut comp = y.extension_from(x.basis());
    assert!(!comp.is_empty(), "subspace is not proper");
    if tb.drop_lowest {
        comp.remove(0);
    } else {
        comp.pop();
    }
    let mut vs = y.basis().to_vec();
    vs.extend(comp);
    Subspace::from_vectors(x.ambient(), vs)
}
