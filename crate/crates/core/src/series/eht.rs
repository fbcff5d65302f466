//! Eisenbud–Harris–Teixidor limit series: per-component section spaces
//! glued at the nodes.

use std::collections::BTreeMap;

use crate::curve_model::CurveBundle;
use crate::degree_graph::{self, DegreeConfig, DualGraph, Multidegree};
use crate::error::{precondition, Error, Result};
use crate::exactlinalg::{combine, MatQ, Rational, Subspace};

use super::vanishing::{vanishing_sequence, ComponentSpace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhtSeries {
    pub bundle: CurveBundle,
    /// `V^v` in the coefficient coordinates of `⊕_j O(c_{v,j})`.
    pub spaces: Vec<Subspace>,
}

impl EhtSeries {
    pub fn new(bundle: CurveBundle, spaces: Vec<Subspace>) -> Result<Self> {
        if spaces.len() != bundle.n() {
            return Err(Error::Schema("one space per vertex required".into()));
        }
        let k = bundle.cfg.k;
        for (v, sp) in spaces.iter().enumerate() {
            let amb = component_space(&bundle, v).dim();
            if sp.ambient() != amb {
                return Err(Error::Schema(format!("space at vertex {v} has ambient {} not {amb}", sp.ambient())));
            }
            if sp.dim() != k {
                return precondition(format!("space at vertex {v} has dimension {} not k = {k}", sp.dim()));
            }
        }
        Ok(EhtSeries { bundle, spaces })
    }

    pub fn k(&self) -> usize {
        self.bundle.cfg.k
    }

    pub fn cfg(&self) -> &DegreeConfig {
        &self.bundle.cfg
    }

    pub fn component(&self, v: usize) -> ComponentSpace {
        component_space(&self.bundle, v)
    }

    fn require_condition_i(&self) -> Result<()> {
        if self.bundle.condition_i_holds() {
            Ok(())
        } else {
            precondition("bundle violates condition (I): some split degree exceeds b")
        }
    }
}

pub fn component_space(bundle: &CurveBundle, v: usize) -> ComponentSpace {
    ComponentSpace::new(bundle.splits[v].clone())
}

/// `V^v(w)`: sections of `V^v` vanishing to order `t_(e,v)(w)` at each node.
pub fn twisted_space(s: &EhtSeries, w: &[i64], v: usize) -> Result<Subspace> {
    let b = &s.bundle;
    let mut conds = Vec::new();
    for &(e, _) in b.cfg.graph.incident(v) {
        let t = b.t(w, e, v)?;
        if t < 0 {
            return precondition("negative twist outside bar-G_II");
        }
        conds.push((b.node(e, v), t as usize));
    }
    Ok(s.component(v).vanishing_subspace(&s.spaces[v], &conds))
}

/// Basis of `⊕_v V^v(w)` inside the common ambient.
fn direct_sum_basis(s: &EhtSeries, w: &[i64]) -> Result<Vec<Vec<Rational>>> {
    let lay = s.bundle.layout_q();
    let mut basis = Vec::new();
    for v in 0..s.bundle.n() {
        let range = lay.component(v);
        for vec in twisted_space(s, w, v)?.basis() {
            let mut full = vec![Rational::from_integer(0.into()); lay.dim()];
            full[range.clone()].clone_from_slice(vec);
            basis.push(full);
        }
    }
    Ok(basis)
}

/// Kernel of `⊕_v V^v(w) → ⊕_e (node fibers)`, in the common ambient.
pub fn kernel_at(s: &EhtSeries, w: &[i64]) -> Result<Subspace> {
    let dim = s.bundle.layout_q().dim();
    let basis = direct_sum_basis(s, w)?;
    if basis.is_empty() {
        return Ok(Subspace::zero(dim));
    }
    let g = MatQ::from_rows_with_cols(s.bundle.gluing_rows_q(w)?, dim);
    let m = g.mul(&MatQ::from_rows(basis.clone()).transpose());
    let coeffs = m.kernel();
    Ok(Subspace::from_vectors(dim, coeffs.basis().iter().map(|c| combine(&basis, c, dim)).collect()))
}

/// Kernel dimensions over `bar-G_II`.
pub fn kernel_dimension_table(s: &EhtSeries) -> Result<BTreeMap<Multidegree, usize>> {
    degree_graph::enumerate_bar_gii(s.cfg())
        .into_iter()
        .map(|w| Ok((w.clone(), kernel_at(s, &w)?.dim())))
        .collect()
}

/// Kernel dimension at least `k` on every `w ∈ V(G_I)`.
pub fn check_eht_kernel(s: &EhtSeries) -> Result<bool> {
    s.require_condition_i()?;
    check_eht_kernel_unchecked(s)
}

pub fn check_eht_kernel_unchecked(s: &EhtSeries) -> Result<bool> {
    for w in degree_graph::enumerate_gi(s.cfg()) {
        if kernel_at(s, &w)?.dim() < s.k() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The same test over all of `bar-G_II`.
pub fn check_eht_kernel_bar(s: &EhtSeries) -> Result<bool> {
    Ok(kernel_dimension_table(s)?.values().all(|&d| d >= s.k()))
}

/// Vanishing sequences of both sides of edge `e`: `(tail, head)`.
pub fn edge_sequences(s: &EhtSeries, e: usize) -> (Vec<usize>, Vec<usize>) {
    let b = &s.bundle;
    let ed = &b.cfg.graph.edges()[e];
    let a = vanishing_sequence(&s.component(ed.tail), &s.spaces[ed.tail], b.node(e, ed.tail));
    let a2 = vanishing_sequence(&s.component(ed.head), &s.spaces[ed.head], b.node(e, ed.head));
    (a, a2)
}

/// Leading coefficients at order `a` of sections of `V^v` vanishing to order `a` at `(e, v)`.
pub fn leading_space(s: &EhtSeries, e: usize, v: usize, a: usize) -> Subspace {
    let comp = s.component(v);
    let p = s.bundle.node(e, v);
    let sub = comp.vanishing_subspace(&s.spaces[v], &[(p, a)]);
    sub.map(&comp.leading_map(p, a))
}

/// Complementarity of vanishing sequences plus the node gluing condition,
/// checked one edge at a time.
pub fn check_eht_direct(s: &EhtSeries) -> Result<bool> {
    s.require_condition_i()?;
    Ok(check_eht_direct_unchecked(s))
}

pub fn check_eht_direct_unchecked(s: &EhtSeries) -> bool {
    let k = s.k();
    let b = s.cfg().b;
    for (e, ed) in s.cfg().graph.edges().iter().enumerate() {
        let (a, a2) = edge_sequences(s, e);
        if (0..k).any(|i| ((a[i] + a2[k - 1 - i]) as i64) < b) {
            return false;
        }
        let mut values: Vec<usize> = a.clone();
        values.dedup();
        for &x in &values {
            if x as i64 > b {
                continue;
            }
            let y = (b - x as i64) as usize;
            let need = (0..k).filter(|&i| a[i] == x && a2[k - 1 - i] == y).count();
            if need == 0 {
                continue;
            }
            let left = leading_space(s, e, ed.tail, x).map(&s.bundle.gluings[e]);
            let right = leading_space(s, e, ed.head, y);
            if left.intersection(&right).dim() < need {
                return false;
            }
        }
    }
    true
}

/// Equality `a_i + a'_{k+1-i} = b` everywhere, on top of the EHT conditions.
pub fn check_refined(s: &EhtSeries) -> Result<bool> {
    s.require_condition_i()?;
    Ok(check_refined_unchecked(s))
}

pub fn check_refined_unchecked(s: &EhtSeries) -> bool {
    if !check_eht_direct_unchecked(s) {
        return false;
    }
    let k = s.k();
    let b = s.cfg().b;
    (0..s.cfg().graph.num_edges()).all(|e| {
        let (a, a2) = edge_sequences(s, e);
        (0..k).all(|i| (a[i] + a2[k - 1 - i]) as i64 == b)
    })
}

/// Restriction to the connected subcurve on `vertices`.
pub fn restrict(s: &EhtSeries, vertices: &[usize]) -> Result<EhtSeries> {
    let b = &s.bundle;
    let g = &b.cfg.graph;
    let mut keep: Vec<usize> = vertices.to_vec();
    keep.sort_unstable();
    keep.dedup();
    let vs = keep.iter().map(|&v| (g.vertices()[v].id.clone(), g.vertices()[v].genus)).collect();
    let kept_edges: Vec<usize> = (0..g.num_edges())
        .filter(|&e| keep.contains(&g.edges()[e].tail) && keep.contains(&g.edges()[e].head))
        .collect();
    let es = kept_edges
        .iter()
        .map(|&e| {
            let ed = &g.edges()[e];
            (ed.id.clone(), g.vertices()[ed.tail].id.clone(), g.vertices()[ed.head].id.clone())
        })
        .collect();
    let sub = DualGraph::new(vs, es)?;
    let r = b.cfg.r;
    let dv: Vec<i64> = keep.iter().map(|&v| b.cfg.dv[v]).collect();
    let d = dv.iter().sum::<i64>() - sub.num_edges() as i64 * r * b.cfg.b;
    let cfg = DegreeConfig::new(sub, r, d, b.cfg.k, b.cfg.b, dv)?;
    // Vertex and edge orders are preserved because both lists stay sorted by id.
    let bundle = CurveBundle::new(
        cfg,
        keep.iter().map(|&v| b.splits[v].clone()).collect(),
        kept_edges.iter().map(|&e| b.nodes[e].clone()).collect(),
        kept_edges.iter().map(|&e| b.gluings[e].clone()).collect(),
    )?;
    EhtSeries::new(bundle, keep.iter().map(|&v| s.spaces[v].clone()).collect())
}
