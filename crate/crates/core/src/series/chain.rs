//! Chains of components: adapted bases glued across the nodes, and the
//! constrained witnesses they produce.
//!
//! Components are visited from the leaf with the smallest id. On `Y_i`, `P_i`
//! is the node towards `Y_{i-1}` and `Q_i` the node towards `Y_{i+1}`. A
//! thread is one section per component with exact orders `(α_i, β_i)` at
//! `(P_i, Q_i)` and `α_{i+1} = b - β_i`; the whole thread is a single kernel
//! vector in the multidegree whose twists are the `β_i`.
//!
//! On each component threads are ordered by `α` ascending, then `β`
//! descending; ties go to the thread whose order sequence is smaller, then
//! to the normalized leading coefficient at the left node.

use crate::degree_graph::{self, Multidegree};
use crate::error::{precondition, Error, Result};
use crate::exactlinalg::{MatQ, Rational, Subspace};
use crate::genericity::{rado, sample_generic};

use super::adapted::{adaptable, is_adapted_basis};
use super::eht::{check_refined_unchecked, kernel_at, twisted_space, EhtSeries};
use super::vanishing::vanishing_sequence;
use super::witness::{verify_constrained_witness, Witness};

/// Components along the chain and the edges between consecutive ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainShape {
    pub order: Vec<usize>,
    pub edges: Vec<usize>,
}

pub fn chain_shape(s: &EhtSeries) -> Result<ChainShape> {
    let g = &s.cfg().graph;
    let Some(order) = g.chain_order() else {
        return precondition("dual graph is not a chain");
    };
    let edges = order.windows(2).map(|p| g.adjacent(p[0], p[1]).expect("consecutive")).collect();
    Ok(ChainShape { order, edges })
}

impl ChainShape {
    fn len(&self) -> usize {
        self.order.len()
    }

    /// `P_i`, absent on the first component.
    pub fn p<'a>(&self, s: &'a EhtSeries, i: usize) -> Option<&'a Rational> {
        (i > 0).then(|| s.bundle.node(self.edges[i - 1], self.order[i]))
    }

    /// `Q_i`, absent on the last component.
    pub fn q<'a>(&self, s: &'a EhtSeries, i: usize) -> Option<&'a Rational> {
        (i + 1 < self.len()).then(|| s.bundle.node(self.edges[i], self.order[i]))
    }
}

/// Refined, and adaptable on every interior component.
pub fn chain_adaptable(s: &EhtSeries) -> Result<bool> {
    let sh = chain_shape(s)?;
    if !check_refined_unchecked(s) {
        return Ok(false);
    }
    for i in 1..sh.len().saturating_sub(1) {
        let v = sh.order[i];
        if !adaptable(&s.component(v), &s.spaces[v], sh.p(s, i).unwrap(), sh.q(s, i).unwrap()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Output of [`chain_global_bases`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainBases {
    pub shape: ChainShape,
    /// `bases[i][j]` = `s^i_j`, in the coordinates of component `order[i]`.
    pub bases: Vec<Vec<Vec<Rational>>>,
    /// `sigma[i][j]`: `s^i_j` glues to `s^{i+1}_{sigma[i][j]}`.
    pub sigma: Vec<Vec<usize>>,
    /// One kernel vector per thread, listed in the order of `bases[0]`.
    pub witness: Witness,
}

/// Per-component orders `(α_i, β_i)`; placeholders are 0 on the chain ends.
type Thread = Vec<(usize, usize)>;

fn bidegrees(s: &EhtSeries, sh: &ChainShape) -> Vec<Vec<(usize, usize)>> {
    let k = s.k();
    (0..sh.len())
        .map(|i| {
            let v = sh.order[i];
            let comp = s.component(v);
            let sp = sh.p(s, i).map(|p| vanishing_sequence(&comp, &s.spaces[v], p)).unwrap_or_else(|| vec![0; k]);
            let sq = sh.q(s, i).map(|q| vanishing_sequence(&comp, &s.spaces[v], q)).unwrap_or_else(|| vec![0; k]);
            let mut m: Vec<(usize, usize)> = (0..k).map(|j| (sp[j], sq[k - 1 - j])).collect();
            m.sort();
            m
        })
        .collect()
}

/// All ways to split the per-component bidegree multisets into `k` threads.
fn thread_matchings(b: usize, multisets: &[Vec<(usize, usize)>], k: usize) -> Vec<Vec<Thread>> {
    fn extend(
        b: usize,
        left: &mut Vec<Vec<(usize, usize)>>,
        cur: &mut Thread,
        done: &mut Vec<Thread>,
        k: usize,
        out: &mut Vec<Vec<Thread>>,
    ) {
        let i = cur.len();
        if i == left.len() {
            let t = std::mem::take(cur);
            done.push(t.clone());
            if done.len() == k {
                let mut m = done.clone();
                m.sort();
                if !out.contains(&m) {
                    out.push(m);
                }
            } else {
                let mut fresh = Vec::new();
                extend(b, left, &mut fresh, done, k, out);
            }
            done.pop();
            *cur = t;
            return;
        }
        let mut tried = Vec::new();
        for idx in 0..left[i].len() {
            let pair = left[i][idx];
            if tried.contains(&pair) {
                continue;
            }
            if i > 0 && pair.0 + cur[i - 1].1 != b {
                continue;
            }
            tried.push(pair);
            left[i].remove(idx);
            cur.push(pair);
            extend(b, left, cur, done, k, out);
            cur.pop();
            left[i].insert(idx, pair);
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut left = multisets.to_vec();
    extend(b, &mut left, &mut Vec::new(), &mut Vec::new(), k, &mut out);
    out
}

fn thread_multidegree(s: &EhtSeries, sh: &ChainShape, t: &Thread) -> Multidegree {
    let cfg = s.cfg();
    let mut tails = vec![0i64; cfg.graph.num_edges()];
    for (i, &e) in sh.edges.iter().enumerate() {
        let beta = t[i].1 as i64;
        tails[e] = if cfg.graph.edges()[e].tail == sh.order[i] { beta } else { cfg.b - beta };
    }
    degree_graph::from_tail_twists(cfg, &tails)
}

/// Taylor coefficients of order `m` at `(e, v)`, as a map on the common ambient.
fn leading_matrix(s: &EhtSeries, e: usize, v: usize, m: usize) -> MatQ {
    let lay = s.bundle.layout_q();
    MatQ::from_rows_with_cols((0..s.bundle.r()).map(|j| s.bundle.taylor_row_q(&lay, e, v, j, m)).collect(), lay.dim())
}

/// The functionals whose nonvanishing means exact orders along the thread.
fn exactness_maps(s: &EhtSeries, sh: &ChainShape, t: &Thread) -> Vec<MatQ> {
    let mut out = Vec::new();
    for i in 0..sh.len() {
        let v = sh.order[i];
        if i > 0 {
            out.push(leading_matrix(s, sh.edges[i - 1], v, t[i].0));
        }
        if i + 1 < sh.len() {
            out.push(leading_matrix(s, sh.edges[i], v, t[i].1));
        }
    }
    out
}

fn normalized(v: Vec<Rational>) -> Vec<Rational> {
    match v.iter().find(|x| !num::Zero::is_zero(*x)).cloned() {
        Some(lead) => v.into_iter().map(|x| x / &lead).collect(),
        None => v,
    }
}

/// Builds threads, checks exact orders and per-component independence,
/// then picks a generic point.
pub fn chain_global_bases(s: &EhtSeries, seed: u64) -> Result<ChainBases> {
    if !chain_adaptable(s)? {
        return precondition("series is not chain adaptable");
    }
    let sh = chain_shape(s)?;
    let k = s.k();
    let lay = s.bundle.layout_q();
    let mult = bidegrees(s, &sh);
    for m in thread_matchings(s.cfg().b.max(0) as usize, &mult, k) {
        let ws: Vec<Multidegree> = m.iter().map(|t| thread_multidegree(s, &sh, t)).collect();
        if ws.iter().any(|w| !degree_graph::in_bar_gii(s.cfg(), w)) {
            continue;
        }
        let kers: Vec<Subspace> = ws.iter().map(|w| kernel_at(s, w)).collect::<Result<_>>()?;
        if kers.iter().any(|x| x.dim() != k) {
            continue;
        }
        let maps: Vec<Vec<MatQ>> = m.iter().map(|t| exactness_maps(s, &sh, t)).collect();
        if kers.iter().zip(&maps).any(|(x, ms)| ms.iter().any(|f| x.map(f).is_zero())) {
            continue;
        }
        let independent = sh.order.iter().all(|&v| {
            let sets: Vec<Subspace> = kers.iter().map(|x| x.project(lay.component(v))).collect();
            rado(&sets)
        });
        if !independent {
            continue;
        }
        let picked = sample_generic(&kers, seed, |pick| {
            let exact = pick.iter().zip(&maps).all(|(x, ms)| ms.iter().all(|f| f.mul_vec(x).iter().any(|c| !num::Zero::is_zero(c))));
            let wit: Witness = ws.iter().cloned().zip(pick.iter().cloned()).collect();
            exact && verify_constrained_witness(s, &wit).unwrap_or(false)
        });
        let Some(pick) = picked else { continue };
        let out = assemble(s, &sh, &m, ws, pick);
        if verify_chain_bases(s, &out) {
            return Ok(out);
        }
    }
    Err(Error::Internal("no thread decomposition realizes the chain bases".into()))
}

fn assemble(s: &EhtSeries, sh: &ChainShape, m: &[Thread], ws: Vec<Multidegree>, pick: Vec<Vec<Rational>>) -> ChainBases {
    let lay = s.bundle.layout_q();
    let k = m.len();
    let n = sh.len();
    // positions[i][slot] = thread index.
    let mut positions: Vec<Vec<usize>> = Vec::with_capacity(n);
    for i in 0..n {
        let v = sh.order[i];
        let side = if i > 0 { Some((sh.edges[i - 1], m.iter().map(|t| t[i].0).collect::<Vec<_>>())) } else { None };
        let lead = |j: usize| -> Vec<Rational> {
            let f = match &side {
                Some((e, a)) => leading_matrix(s, *e, v, a[j]),
                None if n > 1 => leading_matrix(s, sh.edges[0], v, m[j][0].1),
                None => MatQ::identity(lay.dim()),
            };
            normalized(f.mul_vec(&pick[j]))
        };
        let mut idx: Vec<usize> = (0..k).collect();
        idx.sort_by(|&x, &y| {
            let (ax, bx) = m[x][i];
            let (ay, by) = m[y][i];
            ax.cmp(&ay).then(by.cmp(&bx)).then_with(|| m[x].cmp(&m[y])).then_with(|| lead(x).cmp(&lead(y)))
        });
        positions.push(idx);
    }
    let bases = (0..n)
        .map(|i| positions[i].iter().map(|&t| pick[t][lay.component(sh.order[i])].to_vec()).collect())
        .collect();
    let sigma = (0..n.saturating_sub(1))
        .map(|i| positions[i].iter().map(|t| positions[i + 1].iter().position(|u| u == t).unwrap()).collect())
        .collect();
    let witness = positions[0].iter().map(|&t| (ws[t].clone(), pick[t].clone())).collect();
    ChainBases { shape: sh.clone(), bases, sigma, witness }
}

/// Each `s^i` is adapted (one-sided on the ends) and `σ` matches gluings.
pub fn verify_chain_bases(s: &EhtSeries, cb: &ChainBases) -> bool {
    let sh = &cb.shape;
    let n = sh.len();
    let k = s.k();
    for i in 0..n {
        let v = sh.order[i];
        let comp = s.component(v);
        let basis = &cb.bases[i];
        if basis.len() != k || Subspace::from_vectors(comp.dim(), basis.clone()) != s.spaces[v] {
            return false;
        }
        match (sh.p(s, i), sh.q(s, i)) {
            (Some(p), Some(q)) => {
                if !is_adapted_basis(&comp, &s.spaces[v], p, q, basis) {
                    return false;
                }
            }
            (Some(p), None) => {
                let seq = vanishing_sequence(&comp, &s.spaces[v], p);
                if (0..k).any(|j| comp.order_at(&basis[j], p) != Some(seq[j])) {
                    return false;
                }
            }
            (None, Some(q)) => {
                let seq = vanishing_sequence(&comp, &s.spaces[v], q);
                if (0..k).any(|j| comp.order_at(&basis[j], q) != Some(seq[k - 1 - j])) {
                    return false;
                }
            }
            (None, None) => {}
        }
    }
    let b = s.cfg().b;
    for i in 0..n.saturating_sub(1) {
        let e = sh.edges[i];
        let (v, u) = (sh.order[i], sh.order[i + 1]);
        let (cv, cu) = (s.component(v), s.component(u));
        let (q, p) = (sh.q(s, i).unwrap(), sh.p(s, i + 1).unwrap());
        for j in 0..k {
            let left = &cb.bases[i][j];
            let right = &cb.bases[i + 1][cb.sigma[i][j]];
            let (Some(beta), Some(alpha)) = (cv.order_at(left, q), cu.order_at(right, p)) else { return false };
            if (alpha + beta) as i64 != b {
                return false;
            }
            let lv = cv.leading_map(q, beta).mul_vec(left);
            let lu = cu.leading_map(p, alpha).mul_vec(right);
            let phi = &s.bundle.gluings[e];
            let ok = if s.cfg().graph.edges()[e].tail == v { phi.mul_vec(&lv) == lu } else { phi.mul_vec(&lu) == lv };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// `Σ_i dim V^i(w)` against `k + Σ (m_i + 1 - ℓ_i)`.
pub fn dimension_identity(s: &EhtSeries, w: &[i64]) -> Result<(usize, i64)> {
    let sh = chain_shape(s)?;
    let k = s.k();
    let mut lhs = 0;
    for &v in &sh.order {
        lhs += twisted_space(s, w, v)?.dim();
    }
    let mut rhs = k as i64;
    for (i, &e) in sh.edges.iter().enumerate() {
        let v = sh.order[i];
        let a = vanishing_sequence(&s.component(v), &s.spaces[v], s.bundle.node(e, v));
        let beta = s.bundle.t(w, e, v)?.max(0) as usize;
        let ell = a.iter().position(|&x| x >= beta).map(|p| p + 1).unwrap_or(k + 1);
        let m = a.iter().rposition(|&x| x <= beta).map(|p| p + 1).unwrap_or(0);
        rhs += m as i64 + 1 - ell as i64;
    }
    Ok((lhs, rhs))
}

/// Witness from the chain bases, with the dimension identity checked at every `w_i`.
pub fn constrained_witness_from_chain(s: &EhtSeries, seed: u64) -> Result<Witness> {
    let cb = chain_global_bases(s, seed)?;
    if !verify_constrained_witness(s, &cb.witness)? {
        return Err(Error::Internal("chain witness rejected".into()));
    }
    for (w, _) in &cb.witness {
        let (lhs, rhs) = dimension_identity(s, w)?;
        if lhs as i64 != rhs {
            return Err(Error::Internal(format!("dimension count fails at {w:?}: {lhs} vs {rhs}")));
        }
    }
    Ok(cb.witness)
}
