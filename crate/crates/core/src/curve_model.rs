//! Split vector bundles on trees of rational curves, their global sections
//! in every multidegree, and the twist maps between them.
//!
//! A section of `E_w` on `Y_v` is stored in reduced form: polynomials
//! `g_{v,j}` of degree at most `c_{v,j} - T_v(w)`, where `T_v(w)` is the sum of
//! the twists `t_(e,v)(w)` over edges at `v`. The honest section is
//! `q_{v,j} = g_{v,j} · Π_e (x - p_{e,v})^{t_(e,v)(w)}`. Inside `bar-G_II` all
//! twists are non-negative and the `q` form gives one common ambient space.

use std::ops::Range;

use num::{One, Signed, Zero};

use crate::degree_graph::{self, DegreeConfig, Multidegree};
use crate::error::{precondition, Error, Result};
use crate::exactlinalg::rational::binomial;
use crate::exactlinalg::{MatQ, Poly, Rational, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveBundle {
    pub cfg: DegreeConfig,
    /// Split degrees `c_{v,j}`.
    pub splits: Vec<Vec<i64>>,
    /// Node coordinates `(p_{e,tail}, p_{e,head})` per edge.
    pub nodes: Vec<(Rational, Rational)>,
    /// Gluing `φ_e`, from the tail fiber to the head fiber.
    pub gluings: Vec<MatQ>,
}

/// Offsets of the `(v, j)` coefficient blocks in a coordinate vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    starts: Vec<Vec<usize>>,
    sizes: Vec<Vec<usize>>,
    dim: usize,
}

impl Layout {
    fn new(sizes: Vec<Vec<usize>>) -> Self {
        let mut starts = Vec::new();
        let mut at = 0;
        for row in &sizes {
            let mut s = Vec::new();
            for &k in row {
                s.push(at);
                at += k;
            }
            starts.push(s);
        }
        Layout { starts, sizes, dim: at }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn block(&self, v: usize, j: usize) -> Range<usize> {
        self.starts[v][j]..self.starts[v][j] + self.sizes[v][j]
    }

    /// All coordinates belonging to component `v`.
    pub fn component(&self, v: usize) -> Range<usize> {
        let r = self.sizes[v].len();
        self.starts[v][0]..self.starts[v][r - 1] + self.sizes[v][r - 1]
    }

    pub fn block_size(&self, v: usize, j: usize) -> usize {
        self.sizes[v][j]
    }
}

/// A global section of `E_w`, in reduced form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionTuple {
    pub w: Multidegree,
    /// `g[v][j]`.
    pub g: Vec<Vec<Poly>>,
}

impl CurveBundle {
    pub fn new(
        cfg: DegreeConfig,
        splits: Vec<Vec<i64>>,
        nodes: Vec<(Rational, Rational)>,
        gluings: Vec<MatQ>,
    ) -> Result<Self> {
        let n = cfg.n();
        let r = cfg.r as usize;
        if splits.len() != n || splits.iter().any(|s| s.len() != r) {
            return Err(Error::Schema("every vertex needs r split degrees".into()));
        }
        for (v, s) in splits.iter().enumerate() {
            if s.iter().sum::<i64>() != cfg.dv[v] {
                return precondition(format!("split degrees at vertex {v} do not sum to d_v"));
            }
        }
        let m = cfg.graph.num_edges();
        if nodes.len() != m || gluings.len() != m {
            return Err(Error::Schema("every edge needs node coordinates and a gluing".into()));
        }
        for (e, phi) in gluings.iter().enumerate() {
            if phi.rows() != r || phi.cols() != r || !phi.is_invertible() {
                return precondition(format!("gluing on edge {e} is not an invertible r×r matrix"));
            }
        }
        let b = CurveBundle { cfg, splits, nodes, gluings };
        for v in 0..n {
            let ps: Vec<&Rational> = b.cfg.graph.incident(v).iter().map(|&(e, _)| b.node(e, v)).collect();
            for i in 0..ps.len() {
                for j in 0..i {
                    if ps[i] == ps[j] {
                        return precondition(format!("repeated node coordinate on vertex {v}"));
                    }
                }
            }
        }
        Ok(b)
    }

    pub fn r(&self) -> usize {
        self.cfg.r as usize
    }

    pub fn n(&self) -> usize {
        self.cfg.n()
    }

    /// Node coordinate of edge `e` on the component `v`.
    pub fn node(&self, e: usize, v: usize) -> &Rational {
        let ed = &self.cfg.graph.edges()[e];
        if v == ed.tail {
            &self.nodes[e].0
        } else {
            assert_eq!(v, ed.head, "edge does not touch vertex");
            &self.nodes[e].1
        }
    }

    pub fn max_split(&self) -> i64 {
        self.splits.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Twist at `(e, v)` for multidegree `w`.
    pub fn t(&self, w: &[i64], e: usize, v: usize) -> Result<i64> {
        degree_graph::t_value(&self.cfg, w, e, v)
    }

    /// `T_v(w)`.
    pub fn total_twist(&self, w: &[i64], v: usize) -> Result<i64> {
        let mut s = 0;
        for &(e, _) in self.cfg.graph.incident(v) {
            s += self.t(w, e, v)?;
        }
        Ok(s)
    }

    pub fn layout_g(&self, w: &[i64]) -> Result<Layout> {
        self.cfg.validate(w)?;
        let mut sizes = Vec::new();
        for v in 0..self.n() {
            let tv = self.total_twist(w, v)?;
            sizes.push(self.splits[v].iter().map(|&c| (c - tv + 1).max(0) as usize).collect());
        }
        Ok(Layout::new(sizes))
    }

    /// The ambient layout shared by all multidegrees in `bar-G_II`.
    pub fn layout_q(&self) -> Layout {
        Layout::new(
            self.splits.iter().map(|s| s.iter().map(|&c| (c + 1).max(0) as usize).collect()).collect(),
        )
    }

    /// Linear functional for coordinate `j` of the node value at `(e, v)`, reduced form.
    pub fn div_eval_row_g(&self, w: &[i64], lay: &Layout, e: usize, v: usize, j: usize) -> Result<Vec<Rational>> {
        let p = self.node(e, v);
        let mut factor = Rational::one();
        for &(e2, _) in self.cfg.graph.incident(v) {
            if e2 == e {
                continue;
            }
            let diff = p - self.node(e2, v);
            let t = self.t(w, e2, v)?;
            factor *= if t >= 0 {
                num::pow(diff, t as usize)
            } else {
                num::pow(Rational::one() / diff, (-t) as usize)
            };
        }
        let mut row = vec![Rational::zero(); lay.dim()];
        let mut pw = factor;
        for c in lay.block(v, j) {
            row[c] = pw.clone();
            pw *= p;
        }
        Ok(row)
    }

    /// Linear functional: Taylor coefficient of order `m` at `(e, v)` of `q_{v,j}`.
    pub fn taylor_row_q(&self, lay: &Layout, e: usize, v: usize, j: usize, m: usize) -> Vec<Rational> {
        let p = self.node(e, v);
        let mut row = vec![Rational::zero(); lay.dim()];
        for (n, c) in lay.block(v, j).enumerate() {
            if n >= m {
                row[c] = Rational::from_integer(binomial(n, m)) * num::pow(p.clone(), n - m);
            }
        }
        row
    }

    /// Gluing rows `φ_e · (tail value) − (head value)` over an arbitrary row builder.
    fn gluing_rows(&self, dim: usize, eval: &dyn Fn(usize, usize, usize) -> Result<Vec<Rational>>) -> Result<Vec<Vec<Rational>>> {
        let r = self.r();
        let mut rows = Vec::new();
        for (e, ed) in self.cfg.graph.edges().iter().enumerate() {
            let tails: Vec<Vec<Rational>> = (0..r).map(|j| eval(e, ed.tail, j)).collect::<Result<_>>()?;
            for i in 0..r {
                let mut row = eval(e, ed.head, i)?;
                for x in row.iter_mut() {
                    *x = -x.clone();
                }
                for (j, tj) in tails.iter().enumerate() {
                    let f = &self.gluings[e][(i, j)];
                    if f.is_zero() {
                        continue;
                    }
                    for (x, y) in row.iter_mut().zip(tj) {
                        *x += f * y;
                    }
                }
                debug_assert_eq!(row.len(), dim);
                rows.push(row);
            }
        }
        Ok(rows)
    }

    /// `H^0(E_w)` in reduced coordinates, for any `w ∈ V(G_II)`.
    pub fn global_sections(&self, w: &[i64]) -> Result<Subspace> {
        let lay = self.layout_g(w)?;
        let rows = self.gluing_rows(lay.dim(), &|e, v, j| self.div_eval_row_g(w, &lay, e, v, j))?;
        Ok(MatQ::from_rows_with_cols(rows, lay.dim()).kernel())
    }

    /// Node-divisibility rows for `w ∈ bar-G_II` in the common ambient.
    pub fn divisibility_rows_q(&self, w: &[i64]) -> Result<Vec<Vec<Rational>>> {
        let lay = self.layout_q();
        let mut rows = Vec::new();
        for v in 0..self.n() {
            for &(e, _) in self.cfg.graph.incident(v) {
                let t = self.t(w, e, v)?;
                if t < 0 {
                    return precondition("multidegree outside bar-G_II");
                }
                for j in 0..self.r() {
                    for m in 0..(t as usize).min(lay.block_size(v, j)) {
                        rows.push(self.taylor_row_q(&lay, e, v, j, m));
                    }
                }
            }
        }
        Ok(rows)
    }

    /// Gluing rows for `w ∈ bar-G_II` in the common ambient.
    pub fn gluing_rows_q(&self, w: &[i64]) -> Result<Vec<Vec<Rational>>> {
        let lay = self.layout_q();
        let ts = degree_graph::t_values(&self.cfg, w)?;
        let g = &self.cfg.graph;
        self.gluing_rows(lay.dim(), &|e, v, j| {
            let t = if g.edges()[e].tail == v { ts[e].0 } else { ts[e].1 };
            Ok(self.taylor_row_q(&lay, e, v, j, t.max(0) as usize))
        })
    }

    /// `H^0(E_w)` inside the common ambient, for `w ∈ bar-G_II`.
    pub fn global_sections_q(&self, w: &[i64]) -> Result<Subspace> {
        if !degree_graph::in_bar_gii(&self.cfg, w) {
            return precondition(format!("{w:?} is not in bar-G_II"));
        }
        let mut rows = self.divisibility_rows_q(w)?;
        rows.extend(self.gluing_rows_q(w)?);
        Ok(MatQ::from_rows_with_cols(rows, self.layout_q().dim()).kernel())
    }

    /// Reduced coordinates to the common ambient (requires non-negative twists).
    pub fn g_to_q(&self, w: &[i64], vec: &[Rational]) -> Result<Vec<Rational>> {
        let s = self.section_from_vector(w, vec)?;
        let lay = self.layout_q();
        let mut out = vec![Rational::zero(); lay.dim()];
        for v in 0..self.n() {
            let fac = self.twist_factor(w, v)?;
            for j in 0..self.r() {
                let q = &s.g[v][j] * &fac;
                let blk = lay.block(v, j);
                if q.degree().is_some_and(|d| d >= blk.len()) {
                    return Err(Error::Internal("section exceeds its degree bound".into()));
                }
                for (c, x) in blk.zip(q.coeffs()) {
                    out[c] = x.clone();
                }
            }
        }
        Ok(out)
    }

    /// Inverse of [`g_to_q`](Self::g_to_q); `None` if some `q` is not divisible.
    pub fn q_to_g(&self, w: &[i64], vec: &[Rational]) -> Result<Option<Vec<Rational>>> {
        let lay_q = self.layout_q();
        let lay = self.layout_g(w)?;
        let mut out = vec![Rational::zero(); lay.dim()];
        for v in 0..self.n() {
            let fac = self.twist_factor(w, v)?;
            for j in 0..self.r() {
                let q = Poly::new(vec[lay_q.block(v, j)].to_vec());
                let Some(g) = q.div_exact(&fac) else { return Ok(None) };
                let blk = lay.block(v, j);
                if g.degree().is_some_and(|d| d >= blk.len()) {
                    return Ok(None);
                }
                for (c, x) in blk.zip(g.coeffs()) {
                    out[c] = x.clone();
                }
            }
        }
        Ok(Some(out))
    }

    /// `Π_e (x - p_{e,v})^{t_(e,v)(w)}`; errors on negative twists.
    pub fn twist_factor(&self, w: &[i64], v: usize) -> Result<Poly> {
        let mut fac = Poly::one();
        for &(e, _) in self.cfg.graph.incident(v) {
            let t = self.t(w, e, v)?;
            if t < 0 {
                return precondition("negative twist has no polynomial form");
            }
            fac = &fac * &Poly::linear_power(self.node(e, v), t as usize);
        }
        Ok(fac)
    }

    pub fn section_from_vector(&self, w: &[i64], vec: &[Rational]) -> Result<SectionTuple> {
        let lay = self.layout_g(w)?;
        if vec.len() != lay.dim() {
            return Err(Error::Schema("coordinate vector has the wrong length".into()));
        }
        let g = (0..self.n())
            .map(|v| (0..self.r()).map(|j| Poly::new(vec[lay.block(v, j)].to_vec())).collect())
            .collect();
        Ok(SectionTuple { w: w.to_vec(), g })
    }

    pub fn section_to_vector(&self, s: &SectionTuple) -> Result<Vec<Rational>> {
        let lay = self.layout_g(&s.w)?;
        let mut out = vec![Rational::zero(); lay.dim()];
        for v in 0..self.n() {
            for j in 0..self.r() {
                let blk = lay.block(v, j);
                if s.g[v][j].degree().is_some_and(|d| d >= blk.len()) {
                    return precondition("section exceeds its degree bound");
                }
                for (c, x) in blk.zip(s.g[v][j].coeffs()) {
                    out[c] = x.clone();
                }
            }
        }
        Ok(out)
    }

    /// Degree bounds and gluing conditions.
    pub fn is_valid_section(&self, s: &SectionTuple) -> bool {
        match self.section_to_vector(s) {
            Ok(vec) => self.global_sections(&s.w).map(|h| h.contains(&vec)).unwrap_or(false),
            Err(_) => false,
        }
    }

    /// One type-II twist at `v0`: zero on `Y_{v0}`, the honest sections elsewhere unchanged.
    pub fn apply_twist(&self, s: &SectionTuple, v0: usize) -> Result<SectionTuple> {
        let w2 = degree_graph::step_ii(&self.cfg, &s.w, v0);
        let mut g = s.g.clone();
        g[v0] = vec![Poly::zero(); self.r()];
        for &(e, u) in self.cfg.graph.incident(v0) {
            let lin = Poly::linear_power(self.node(e, u), 1);
            for p in g[u].iter_mut() {
                *p = &*p * &lin;
            }
        }
        let out = SectionTuple { w: w2, g };
        debug_assert!(self.is_valid_section(&out) || !self.is_valid_section(s));
        Ok(out)
    }

    pub fn apply_path(&self, s: &SectionTuple, path: &[usize]) -> Result<SectionTuple> {
        let mut cur = s.clone();
        for &v in path {
            cur = self.apply_twist(&cur, v)?;
        }
        Ok(cur)
    }

    /// Type-I step `(e, v)`, realised as type-II twists at every vertex on `v`'s side.
    pub fn apply_type_i(&self, s: &SectionTuple, e: usize, v: usize) -> Result<SectionTuple> {
        self.apply_path(s, &degree_graph::PathI::step_as_type_ii(&self.cfg, e, v))
    }

    /// Path map on reduced coordinate vectors.
    pub fn map_vector_along(&self, w: &[i64], vec: &[Rational], path: &[usize]) -> Result<Vec<Rational>> {
        let s = self.section_from_vector(w, vec)?;
        self.section_to_vector(&self.apply_path(&s, path)?)
    }

    /// Split-bundle form of `H^0(E_{w_v}|_{Y_v}(-(b+1) p)) = 0` at every node.
    pub fn condition_i_holds(&self) -> bool {
        self.max_split() <= self.cfg.b
    }

    /// Whether `H^0(E_{w_v}) → H^0(Y_v, ·)` is injective.
    pub fn restriction_injective(&self, v: usize) -> Result<bool> {
        let wv = degree_graph::extremal_vertex(&self.cfg, v);
        let h = self.global_sections(&wv)?;
        let lay = self.layout_g(&wv)?;
        Ok(h.project(lay.component(v)).dim() == h.dim())
    }

    /// Multidegree and gluing scalars of the determinant line bundle.
    pub fn determinant_data(&self) -> (Vec<i64>, Vec<Rational>) {
        (
            self.splits.iter().map(|s| s.iter().sum()).collect(),
            self.gluings.iter().map(MatQ::det).collect(),
        )
    }

    /// Euler characteristic `d + r(1 - g)` of `E_w` for any `w`.
    pub fn euler_characteristic(&self) -> i64 {
        self.cfg.d + self.cfg.r * (1 - self.cfg.graph.total_genus() as i64)
    }
}

/// Same determinant up to rescaling each component's trivialization.
///
/// On a tree, rescaling factors `λ_v` can absorb any ratio of gluing
/// scalars, so only the multidegrees can differ; the factors are still
/// solved for explicitly.
pub fn same_determinant_class(a: &CurveBundle, b: &CurveBundle) -> bool {
    if a.cfg.graph != b.cfg.graph {
        return false;
    }
    let (da, sa) = a.determinant_data();
    let (db, sb) = b.determinant_data();
    if da != db {
        return false;
    }
    // Solve sb_e = sa_e · λ_head / λ_tail by propagation from vertex 0.
    let g = &a.cfg.graph;
    let mut lambda: Vec<Option<Rational>> = vec![None; g.num_vertices()];
    lambda[0] = Some(Rational::one());
    let mut stack = vec![0];
    while let Some(u) = stack.pop() {
        for &(e, x) in g.incident(u) {
            if lambda[x].is_some() {
                continue;
            }
            let ratio = &sb[e] / &sa[e];
            let lu = lambda[u].clone().unwrap();
            lambda[x] = Some(if g.edges()[e].tail == u { lu * ratio } else { lu / ratio });
            stack.push(x);
        }
    }
    g.edges().iter().enumerate().all(|(e, ed)| {
        let (lt, lh) = (lambda[ed.tail].as_ref().unwrap(), lambda[ed.head].as_ref().unwrap());
        &sa[e] * lh / lt == sb[e]
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StabilityMode {
    /// Positive weights per vertex summing to one.
    Polarization(Vec<Rational>),
    /// Comparison against constant-rank subsheaves only.
    ConstantRank,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsheafData {
    pub ranks: Vec<i64>,
    pub chi: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabilityVerdict {
    Stable,
    Boundary,
    Violating,
}

/// Compares the slope of one subsheaf with that of `E`.
pub fn stability_inequality(
    bundle: &CurveBundle,
    sub: &SubsheafData,
    mode: &StabilityMode,
) -> Result<StabilityVerdict> {
    let n = bundle.n();
    if sub.ranks.len() != n {
        return Err(Error::Schema("subsheaf ranks must be given per vertex".into()));
    }
    let denom = match mode {
        StabilityMode::Polarization(ws) => {
            if ws.len() != n {
                return Err(Error::Schema("one weight per vertex required".into()));
            }
            if ws.iter().any(|x| !x.is_positive()) || ws.iter().sum::<Rational>() != Rational::one() {
                return precondition("polarization weights must be positive and sum to 1");
            }
            ws.iter().zip(&sub.ranks).map(|(w, &r)| w * Rational::from_integer(r.into())).sum()
        }
        StabilityMode::ConstantRank => {
            if sub.ranks.windows(2).any(|p| p[0] != p[1]) {
                return precondition("subsheaf rank is not constant");
            }
            Rational::from_integer(sub.ranks[0].into())
        }
    };
    if denom.is_zero() {
        return precondition("zero denominator in slope");
    }
    let lhs = Rational::from_integer(sub.chi.into()) / denom;
    let rhs = Rational::new(bundle.euler_characteristic().into(), bundle.cfg.r.into());
    Ok(match lhs.cmp(&rhs) {
        std::cmp::Ordering::Less => StabilityVerdict::Stable,
        std::cmp::Ordering::Equal => StabilityVerdict::Boundary,
        std::cmp::Ordering::Greater => StabilityVerdict::Violating,
    })
}

/// One step of enlarging `b`: `b + 1`, with `d_v + r` at every vertex but `v0`.
///
/// Each component other than `v0` has its bundle twisted up at the node
/// pointing towards `v0`; gluing scalars absorb the changed normalizations.
pub fn increase_b_step(bundle: &CurveBundle, v0: usize) -> Result<CurveBundle> {
    let cfg = &bundle.cfg;
    let g = &cfg.graph;
    let dv: Vec<i64> = (0..cfg.n()).map(|v| if v == v0 { cfg.dv[v] } else { cfg.dv[v] + cfg.r }).collect();
    let new_cfg = DegreeConfig::new(g.clone(), cfg.r, cfg.d, cfg.k, cfg.b + 1, dv)?;
    let toward = toward_edges(bundle, v0);
    let splits = (0..cfg.n())
        .map(|v| bundle.splits[v].iter().map(|c| if v == v0 { *c } else { c + 1 }).collect())
        .collect();
    // DivEval at (e, v) picks up (p_e - p_{toward(v)}) when e is not the toward edge.
    let lam = |e: usize, v: usize| -> Rational {
        match toward[v] {
            Some(e0) if e0 != e => bundle.node(e, v) - bundle.node(e0, v),
            _ => Rational::one(),
        }
    };
    let gluings = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, ed)| bundle.gluings[e].scale(&(lam(e, ed.head) / lam(e, ed.tail))))
        .collect();
    CurveBundle::new(new_cfg, splits, bundle.nodes.clone(), gluings)
}

/// For each vertex, the edge on its path towards `v0` (none at `v0`).
pub fn toward_edges(bundle: &CurveBundle, v0: usize) -> Vec<Option<usize>> {
    let g = &bundle.cfg.graph;
    let mut out = vec![None; g.num_vertices()];
    let mut seen = vec![false; g.num_vertices()];
    seen[v0] = true;
    let mut stack = vec![v0];
    while let Some(u) = stack.pop() {
        for &(e, x) in g.incident(u) {
            if !seen[x] {
                seen[x] = true;
                out[x] = Some(e);
                stack.push(x);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree_graph::DualGraph;
    use crate::exactlinalg::{int, rat};

    fn one_component(c: i64) -> CurveBundle {
        let cfg = DegreeConfig::new(DualGraph::chain(1), 1, c, 1, 0, vec![c]).unwrap();
        CurveBundle::new(cfg, vec![vec![c]], vec![], vec![]).unwrap()
    }

    fn two_components(phi: Rational) -> CurveBundle {
        let cfg = DegreeConfig::new(DualGraph::chain(2), 1, 1, 1, 1, vec![1, 1]).unwrap();
        CurveBundle::new(cfg, vec![vec![1], vec![1]], vec![(int(0), int(2))], vec![MatQ::from_rows(vec![vec![phi]])])
            .unwrap()
    }

    #[test]
    fn sections_of_o2() {
        assert_eq!(one_component(2).global_sections(&[2]).unwrap().dim(), 3);
    }

    #[test]
    fn two_components_riemann_roch() {
        for phi in [int(1), int(-3), rat(2, 7)] {
            let b = two_components(phi);
            for w in degree_graph::enumerate_bar_gii(&b.cfg) {
                assert_eq!(b.global_sections(&w).unwrap().dim(), 2);
                assert_eq!(b.global_sections_q(&w).unwrap().dim(), 2);
            }
        }
    }

    #[test]
    fn degree_one_one_has_three_sections() {
        for phi in [int(1), int(4)] {
            let cfg = DegreeConfig::new(DualGraph::chain(2), 1, 2, 1, 0, vec![1, 1]).unwrap();
            let b = CurveBundle::new(cfg, vec![vec![1], vec![1]], vec![(int(0), int(1))], vec![MatQ::from_rows(vec![vec![phi]])])
                .unwrap();
            assert_eq!(b.global_sections(&[1, 1]).unwrap().dim(), 3);
        }
    }

    #[test]
    fn q_and_g_forms_agree() {
        let b = two_components(int(5));
        for w in degree_graph::enumerate_bar_gii(&b.cfg) {
            let h = b.global_sections(&w).unwrap();
            let imgs = h.basis().iter().map(|v| b.g_to_q(&w, v).unwrap()).collect();
            assert_eq!(Subspace::from_vectors(b.layout_q().dim(), imgs), b.global_sections_q(&w).unwrap());
        }
    }

    #[test]
    fn condition_i_examples() {
        let cfg = DegreeConfig::new(DualGraph::chain(2), 1, 1, 1, 1, vec![1, 1]).unwrap();
        let ok = CurveBundle::new(cfg, vec![vec![1], vec![1]], vec![(int(0), int(0))], vec![MatQ::identity(1)]).unwrap();
        assert!(ok.condition_i_holds());
        let cfg = DegreeConfig::new(DualGraph::chain(2), 1, 2, 1, 1, vec![2, 1]).unwrap();
        let bad = CurveBundle::new(cfg, vec![vec![2], vec![1]], vec![(int(0), int(0))], vec![MatQ::identity(1)]).unwrap();
        assert!(!bad.condition_i_holds());
    }

    #[test]
    fn determinant_of_rank_two() {
        let cfg = DegreeConfig::new(DualGraph::chain(2), 2, 2, 1, 1, vec![2, 2]).unwrap();
        let phi = MatQ::from_i64(&[&[1, 2], &[3, 4]]);
        let b = CurveBundle::new(cfg, vec![vec![1, 1], vec![0, 2]], vec![(int(0), int(1))], vec![phi]).unwrap();
        let (deg, sc) = b.determinant_data();
        assert_eq!(deg, vec![2, 2]);
        assert_eq!(sc, vec![int(-2)]);
        let mut c = b.clone();
        c.gluings[0] = c.gluings[0].scale(&int(3));
        assert!(same_determinant_class(&b, &c));
    }

    #[test]
    fn stability_examples() {
        let cfg = DegreeConfig::new(DualGraph::chain(1), 2, 0, 1, 0, vec![0]).unwrap();
        let b = CurveBundle::new(cfg, vec![vec![0, 0]], vec![], vec![]).unwrap();
        assert_eq!(b.euler_characteristic(), 2);
        let line = SubsheafData { ranks: vec![1], chi: 2 };
        assert_eq!(stability_inequality(&b, &line, &StabilityMode::ConstantRank).unwrap(), StabilityVerdict::Violating);
        let all = SubsheafData { ranks: vec![2], chi: 2 };
        assert_eq!(stability_inequality(&b, &all, &StabilityMode::ConstantRank).unwrap(), StabilityVerdict::Boundary);
        let bad_weights = StabilityMode::Polarization(vec![rat(1, 2)]);
        assert!(stability_inequality(&b, &all, &bad_weights).is_err());
        let weights = StabilityMode::Polarization(vec![int(1)]);
        assert_eq!(stability_inequality(&b, &all, &weights).unwrap(), StabilityVerdict::Boundary);
    }
}
