//! Vanishing loci of maps of free modules over `Q[t]`, and their use for
//! one-parameter families of gluings.
//!
//! For `f : Q[t]^n → Q[t]^m`, `V_k(f)` is cut out by the `(n + 1 - k)`-minors.
//! `Q[t]` is a principal ideal domain, so the locus is recorded by the monic
//! gcd of those minors; the zero polynomial means the whole line.

use num::Zero;

use crate::curve_model::CurveBundle;
use crate::degree_graph;
use crate::error::{precondition, Error, Result};
use crate::exactlinalg::polymatrix::gcd_all;
use crate::exactlinalg::{int, MatQ, Poly, PolyMatrix, Rational, Subspace};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VanishingLocus {
    /// Monic, or zero for the whole line; `1` is the empty locus.
    pub generator: Poly,
}

impl VanishingLocus {
    pub fn whole() -> Self {
        VanishingLocus { generator: Poly::zero() }
    }

    pub fn empty() -> Self {
        VanishingLocus { generator: Poly::one() }
    }

    pub fn is_whole(&self) -> bool {
        self.generator.is_zero()
    }

    pub fn is_empty(&self) -> bool {
        self.generator.degree() == Some(0)
    }

    pub fn contains_point(&self, t: &Rational) -> bool {
        self.generator.eval(t).is_zero()
    }

    /// Multiplicity of `t` in the generator (`usize::MAX` for the whole line).
    pub fn multiplicity(&self, t: &Rational) -> usize {
        self.generator.order_at(t).unwrap_or(usize::MAX)
    }

    /// Containment of closed subschemes: `other ⊆ self` iff `self.generator | other.generator`.
    pub fn contains(&self, other: &VanishingLocus) -> bool {
        other.generator.divides(&self.generator)
    }
}

pub fn vanishing_locus(f: &PolyMatrix, k: usize) -> VanishingLocus {
    let n = f.cols();
    if k > n {
        return VanishingLocus::empty();
    }
    VanishingLocus { generator: gcd_all(&f.minors(n + 1 - k)) }
}

/// All `V_k` for `k = 0..=cols + 1`.
pub fn vanishing_chain(f: &PolyMatrix) -> Vec<VanishingLocus> {
    (0..=f.cols() + 1).map(|k| vanishing_locus(f, k)).collect()
}

/// Rank over `Q(t)`.
pub fn generic_rank(f: &PolyMatrix) -> usize {
    (1..=f.rows().min(f.cols())).rev().find(|&s| f.minors(s).iter().any(|m| !m.is_zero())).unwrap_or(0)
}

/// `V_k(f ⊕ I_m) = V_k(f)` for every `k ≤ cols(f)`.
pub fn direct_sum_invariance(f: &PolyMatrix, m: usize) -> bool {
    let g = f.block_diag(&PolyMatrix::identity(m));
    (0..=f.cols()).all(|k| vanishing_locus(f, k) == vanishing_locus(&g, k))
}

/// Rational roots of the nonzero polynomials given, together with `0, ±1, 2, 7`.
pub fn sample_points(polys: &[Poly]) -> Vec<Rational> {
    let mut pts: Vec<Rational> = [0, 1, -1, 2, 7].iter().map(|&x| int(x)).collect();
    for p in polys {
        pts.extend(p.rational_roots());
    }
    pts.sort();
    pts.dedup();
    pts
}

/// Kernel of `f(t)` at a rational point.
pub fn kernel_at_point(f: &PolyMatrix, t: &Rational) -> Subspace {
    f.eval(t).kernel()
}

/// `V_k(f) ⊆ V_k(f')` given `f' ∘ g = h ∘ f` with `g` injective on `ker f`
/// at every sampled point. The hypotheses are checked; failures are
/// precondition errors.
pub fn inclusion_check(f: &PolyMatrix, f2: &PolyMatrix, g: &PolyMatrix, h: &PolyMatrix, k: usize) -> Result<bool> {
    if f2.mul(g) != h.mul(f) {
        return precondition("the square does not commute");
    }
    let (a, b) = (vanishing_locus(f, k), vanishing_locus(f2, k));
    for t in sample_points(&[a.generator.clone(), b.generator.clone()]) {
        let ker = kernel_at_point(f, &t);
        if ker.map(&g.eval(&t)).dim() != ker.dim() {
            return precondition(format!("g is not injective on the kernel at t = {t}"));
        }
    }
    Ok(a.generator.divides(&b.generator) || b.is_whole())
}

/// `(splitting data)` for a constant embedding `K ↪ F`: the projection
/// `F → F/K` and a retraction `F → K`, read off a complement of `K`.
fn split_constant(iota: &MatQ) -> Result<(MatQ, MatQ)> {
    let s = iota.rows();
    let k = iota.cols();
    if iota.rank() != k {
        return precondition("K must embed as a subbundle");
    }
    let kspace = Subspace::from_vectors(s, (0..k).map(|j| iota.col(j)).collect());
    let comp = kspace.complement_in(&Subspace::full(s));
    let mut cols: Vec<Vec<Rational>> = (0..k).map(|j| iota.col(j)).collect();
    cols.extend(comp);
    let inv = MatQ::from_cols(&cols, s).inverse().expect("basis");
    let rows = inv.to_rows();
    let retract = MatQ::from_rows_with_cols(rows[..k].to_vec(), s);
    let project = MatQ::from_rows_with_cols(rows[k..].to_vec(), s);
    Ok((project, retract))
}

/// The map `E_1 ⊕ E_2 → F_1/K ⊕ F_2/K ⊕ K` induced by `f_1` and `-f_2`,
/// whose kernel is the fibered product of the kernels of `f'_i : E_i → F_i/K`.
pub fn fibered_product_map(f1: &PolyMatrix, f2: &PolyMatrix, iota1: &MatQ, iota2: &MatQ) -> Result<PolyMatrix> {
    if iota1.cols() != iota2.cols() || iota1.rows() != f1.rows() || iota2.rows() != f2.rows() {
        return Err(Error::Schema("embedding shapes do not match".into()));
    }
    let k = iota1.cols();
    let (p1, r1) = split_constant(iota1)?;
    let (p2, r2) = split_constant(iota2)?;
    let q1 = PolyMatrix::from_constant(&p1).mul(f1);
    let q2 = PolyMatrix::from_constant(&p2).mul(f2);
    let k1 = PolyMatrix::from_constant(&r1).mul(f1);
    let k2 = PolyMatrix::from_constant(&r2.scale(&int(-1))).mul(f2);
    let (n1, n2) = (f1.cols(), f2.cols());
    let mut g = PolyMatrix::zeros(q1.rows() + q2.rows() + k, n1 + n2);
    g.set_block(0, 0, &q1);
    g.set_block(q1.rows(), n1, &q2);
    g.set_block(q1.rows() + q2.rows(), 0, &k1);
    g.set_block(q1.rows() + q2.rows(), n1, &k2);
    Ok(g)
}

/// Whether `Z = (z) ⊆ V_{m_1 + m_2 - k}(f)`. Hypothesis (I) is checked on
/// the quotient maps; hypothesis (II) is checked by comparing every vanishing
/// locus of `f` with that of the fibered-product map (when `f` is omitted
/// that map is used directly).
pub fn fibered_product_bound(
    f: Option<&PolyMatrix>,
    f1: &PolyMatrix,
    f2: &PolyMatrix,
    iota1: &MatQ,
    iota2: &MatQ,
    m1: usize,
    m2: usize,
    z: &Poly,
) -> Result<bool> {
    let k = iota1.cols();
    let zl = VanishingLocus { generator: if z.is_zero() { Poly::zero() } else { z.monic() } };
    for (fi, iota, m) in [(f1, iota1, m1), (f2, iota2, m2)] {
        let (p, _) = split_constant(iota)?;
        let quotient = PolyMatrix::from_constant(&p).mul(fi);
        if !vanishing_locus(&quotient, m).contains(&zl) {
            return precondition("Z is not contained in the vanishing locus of a quotient map");
        }
    }
    let g = fibered_product_map(f1, f2, iota1, iota2)?;
    let target = match f {
        Some(f) => {
            let top = f.cols().max(g.cols()) + 1;
            if (0..=top).any(|j| vanishing_locus(f, j) != vanishing_locus(&g, j)) {
                return precondition("kernel of f does not match the fibered product");
            }
            f
        }
        None => &g,
    };
    let idx = (m1 + m2).checked_sub(k).ok_or_else(|| Error::Precondition("m1 + m2 < k".into()))?;
    Ok(vanishing_locus(target, idx).contains(&zl))
}

/// A bundle whose gluing matrices depend polynomially on `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingFamily {
    /// Carries the graph, degrees, splits and nodes; its gluings are ignored.
    pub bundle: CurveBundle,
    pub gluings: Vec<PolyMatrix>,
}

impl GluingFamily {
    pub fn new(bundle: CurveBundle, gluings: Vec<PolyMatrix>) -> Result<Self> {
        let r = bundle.r();
        if gluings.len() != bundle.cfg.graph.num_edges() || gluings.iter().any(|g| g.rows() != r || g.cols() != r) {
            return Err(Error::Schema("one r x r gluing per edge is required".into()));
        }
        if gluings.iter().any(|g| g.det().is_zero()) {
            return precondition("gluing is not invertible at the generic point");
        }
        Ok(GluingFamily { bundle, gluings })
    }

    pub fn constant(bundle: CurveBundle) -> Self {
        let gluings = bundle.gluings.iter().map(PolyMatrix::from_constant).collect();
        GluingFamily { bundle, gluings }
    }

    /// The fiber at `t`, if the gluings are invertible there.
    pub fn at(&self, t: &Rational) -> Result<CurveBundle> {
        let b = &self.bundle;
        CurveBundle::new(b.cfg.clone(), b.splits.clone(), b.nodes.clone(), self.gluings.iter().map(|g| g.eval(t)).collect())
    }

    fn det_product(&self) -> Poly {
        self.gluings.iter().fold(Poly::one(), |acc, g| &acc * &g.det())
    }
}

/// The matrix over `Q[t]` whose kernel at each point is the kernel of
/// `⊕_v V^v(w) → ⊕_e (node fibers)`. `bases[v]` has one column per section
/// of `V^v`, in the coordinates of the component's coefficient blocks.
pub fn family_matrix(fam: &GluingFamily, bases: &[PolyMatrix], w: &[i64]) -> Result<PolyMatrix> {
    let b = &fam.bundle;
    let lay = b.layout_q();
    if bases.len() != b.n() {
        return Err(Error::Schema("one basis per component is required".into()));
    }
    for (v, bm) in bases.iter().enumerate() {
        if bm.rows() != lay.component(v).len() {
            return Err(Error::Schema(format!("basis at vertex {v} has the wrong number of rows")));
        }
    }
    let to_poly = |row: Vec<Rational>| row.into_iter().map(Poly::constant).collect::<Vec<_>>();
    let mut rows: Vec<Vec<Poly>> = b.divisibility_rows_q(w)?.into_iter().map(to_poly).collect();
    let ts = degree_graph::t_values(&b.cfg, w)?;
    let r = b.r();
    for (e, ed) in b.cfg.graph.edges().iter().enumerate() {
        let tails: Vec<Vec<Rational>> =
            (0..r).map(|j| b.taylor_row_q(&lay, e, ed.tail, j, ts[e].0.max(0) as usize)).collect();
        for i in 0..r {
            let mut row: Vec<Poly> = b
                .taylor_row_q(&lay, e, ed.head, i, ts[e].1.max(0) as usize)
                .into_iter()
                .map(|x| Poly::constant(-x))
                .collect();
            for (j, tj) in tails.iter().enumerate() {
                let phi = &fam.gluings[e][(i, j)];
                for (x, y) in row.iter_mut().zip(tj) {
                    if !y.is_zero() {
                        *x = &*x + &phi.scale(y);
                    }
                }
            }
            rows.push(row);
        }
    }
    let relations = PolyMatrix::from_rows(rows, lay.dim());
    let total: usize = bases.iter().map(PolyMatrix::cols).sum();
    let mut embed = PolyMatrix::zeros(lay.dim(), total);
    let mut col = 0;
    for (v, bm) in bases.iter().enumerate() {
        embed.set_block(lay.component(v).start, col, bm);
        col += bm.cols();
    }
    Ok(relations.mul(&embed))
}

pub fn family_vanishing_locus(fam: &GluingFamily, bases: &[PolyMatrix], w: &[i64], k: usize) -> Result<VanishingLocus> {
    Ok(vanishing_locus(&family_matrix(fam, bases, w)?, k))
}

/// A basis over `Q[t]` of `ker f ∩ Q[t]^n`, from Cramer's rule over `Q(t)`
/// followed by saturation at every rational root of the pivot minor.
pub fn kernel_over_qt(f: &PolyMatrix) -> PolyMatrix {
    let n = f.cols();
    let rho = generic_rank(f);
    let (rows, cols) = nonzero_minor(f, rho);
    let base = f.select(&rows, &cols);
    let det = base.det();
    let mut vecs: Vec<Vec<Poly>> = Vec::new();
    for j in (0..n).filter(|j| !cols.contains(j)) {
        let mut v = vec![Poly::zero(); n];
        v[j] = det.clone();
        for (pos, &c) in cols.iter().enumerate() {
            let mut m = base.clone();
            for (ri, &r) in rows.iter().enumerate() {
                m[(ri, pos)] = -&f[(r, j)];
            }
            v[c] = m.det();
        }
        vecs.push(v);
    }
    for tau in det.rational_roots() {
        saturate_at(&mut vecs, &tau);
    }
    let mut out = PolyMatrix::zeros(n, vecs.len());
    for (c, v) in vecs.iter().enumerate() {
        for (r, p) in v.iter().enumerate() {
            out[(r, c)] = p.clone();
        }
    }
    out
}

fn nonzero_minor(f: &PolyMatrix, s: usize) -> (Vec<usize>, Vec<usize>) {
    use crate::exactlinalg::polymatrix::combinations;
    for r in combinations(f.rows(), s) {
        for c in combinations(f.cols(), s) {
            if !f.select(&r, &c).det().is_zero() {
                return (r, c);
            }
        }
    }
    (Vec::new(), Vec::new())
}

/// While the vectors are dependent at `tau`, divide a dependent combination by `t - tau`.
fn saturate_at(vecs: &mut [Vec<Poly>], tau: &Rational) {
    if vecs.is_empty() {
        return;
    }
    let n = vecs[0].len();
    let lin = Poly::linear_power(tau, 1);
    loop {
        let at: Vec<Vec<Rational>> = vecs.iter().map(|v| v.iter().map(|p| p.eval(tau)).collect()).collect();
        let m = MatQ::from_cols(&at, n);
        let rel = m.kernel();
        let Some(c) = rel.basis().first() else { return };
        let pivot = c.iter().rposition(|x| !x.is_zero()).expect("nonzero relation");
        let mut comb = vec![Poly::zero(); n];
        for (ci, v) in c.iter().zip(vecs.iter()) {
            if ci.is_zero() {
                continue;
            }
            for (a, p) in comb.iter_mut().zip(v) {
                *a = &*a + &p.scale(ci);
            }
        }
        vecs[pivot] = comb.iter().map(|p| p.div_exact(&lin).expect("combination vanishes at tau")).collect();
    }
}

/// Pointwise subbundle test: at each sample and at the generic point, the
/// sections in `v` (columns, in the common ambient) are global sections of
/// the fiber in multidegree `w` and stay independent.
pub fn subbundle_pointwise_check(fam: &GluingFamily, w: &[i64], v: &PolyMatrix, samples: &[Rational]) -> Result<bool> {
    if generic_rank(v) != v.cols() {
        return Ok(false);
    }
    let dets = fam.det_product();
    for t in samples {
        if dets.eval(t).is_zero() {
            continue;
        }
        let fiber = fam.at(t)?;
        let h0 = fiber.global_sections_q(w)?;
        let m = v.eval(t);
        let cols: Vec<Vec<Rational>> = (0..m.cols()).map(|j| m.col(j)).collect();
        if cols.iter().any(|c| !h0.contains(c)) || m.rank() != v.cols() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Two components with `O(1)` each, `b = 1`, and one section per component:
/// `x - t^2` on the first and `1` on the second, with constant gluing.
/// A glued section exists only when `x - t^2` vanishes at the node, that is
/// at `t = 0`, with multiplicity two.
pub fn degenerating_family() -> (GluingFamily, Vec<PolyMatrix>) {
    let cfg = degree_graph::DegreeConfig::new(degree_graph::DualGraph::chain(2), 1, 1, 1, 1, vec![1, 1])
        .expect("valid config");
    let bundle = CurveBundle::new(cfg, vec![vec![1], vec![1]], vec![(int(0), int(0))], vec![MatQ::identity(1)])
        .expect("valid bundle");
    let fam = GluingFamily::constant(bundle);
    let s1 = PolyMatrix::from_rows(vec![vec![Poly::from_i64(&[0, 0, -1])], vec![Poly::one()]], 1);
    let s2 = PolyMatrix::from_rows(vec![vec![Poly::one()], vec![Poly::zero()]], 1);
    (fam, vec![s1, s2])
}
