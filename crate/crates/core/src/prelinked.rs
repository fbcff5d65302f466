//! Prelinked Grassmannians over `Q`: a directed graph with a copy of `Q^d`
//! at each vertex and a matrix on each edge; points are choices of
//! `r`-dimensional subspaces carried into each other by the edge maps.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num::{One, Zero};
use rand::Rng;

use crate::error::{precondition, Error, Result};
use crate::exactlinalg::{MatQ, Rational, Subspace};
use crate::genericity::{multisets, rado, sample_generic, SearchOptions, Verdict};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrelinkedData {
    pub vertices: Vec<String>,
    pub d: usize,
    /// `(tail, head, f_e)`; `f_e` acts on column vectors.
    pub edges: Vec<(usize, usize, MatQ)>,
}

/// One subspace `F_v` per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrelinkedPoint {
    pub spaces: Vec<Subspace>,
}

/// Generators `(v_i, s_i)` with `s_i ∈ F_{v_i}`.
pub type PointWitness = Vec<(usize, Vec<Rational>)>;

impl PrelinkedData {
    pub fn new(vertices: Vec<String>, d: usize, edges: Vec<(usize, usize, MatQ)>) -> Result<Self> {
        let n = vertices.len();
        for (t, h, m) in &edges {
            if *t >= n || *h >= n {
                return Err(Error::Schema("edge endpoint out of range".into()));
            }
            if m.rows() != d || m.cols() != d {
                return Err(Error::Schema(format!("edge map must be {d}x{d}")));
            }
        }
        let data = PrelinkedData { vertices, d, edges };
        if !(0..n).all(|v| data.reachable_from(v).len() == n) {
            return precondition("graph is not connected by directed paths");
        }
        Ok(data)
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    fn out_edges(&self, v: usize) -> impl Iterator<Item = &(usize, usize, MatQ)> {
        self.edges.iter().filter(move |(t, _, _)| *t == v)
    }

    fn reachable_from(&self, v: usize) -> BTreeSet<usize> {
        self.shortest_maps(v).into_keys().collect()
    }

    /// For each vertex reachable from `v`, the length and map of one shortest path
    /// (first found in edge order).
    pub fn shortest_maps(&self, v: usize) -> BTreeMap<usize, (usize, MatQ)> {
        let mut out = BTreeMap::new();
        out.insert(v, (0, MatQ::identity(self.d)));
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            let (len, m) = out[&u].clone();
            for (_, h, f) in self.out_edges(u) {
                if !out.contains_key(h) {
                    out.insert(*h, (len + 1, f.mul(&m)));
                    queue.push_back(*h);
                }
            }
        }
        out
    }

    /// Length of the longest simple directed cycle.
    pub fn longest_simple_cycle(&self) -> usize {
        fn dfs(data: &PrelinkedData, start: usize, u: usize, on: &mut Vec<bool>, len: usize, best: &mut usize) {
            for (_, h, _) in data.out_edges(u) {
                if *h == start {
                    *best = (*best).max(len + 1);
                } else if *h > start && !on[*h] {
                    on[*h] = true;
                    dfs(data, start, *h, on, len + 1, best);
                    on[*h] = false;
                }
            }
        }
        let mut best = 0;
        for s in 0..self.n() {
            let mut on = vec![false; self.n()];
            on[s] = true;
            dfs(self, s, s, &mut on, 0, &mut best);
        }
        best
    }

    pub fn default_path_bound(&self) -> usize {
        2 * self.n() + self.longest_simple_cycle()
    }
}

/// Scalar class of a matrix: `None` for zero, else the matrix scaled so that
/// its first nonzero entry is one.
fn class(m: &MatQ) -> Option<Vec<Vec<Rational>>> {
    let rows = m.to_rows();
    let lead = rows.iter().flatten().find(|x| !x.is_zero())?.clone();
    Some(rows.into_iter().map(|r| r.into_iter().map(|x| x / &lead).collect()).collect())
}

/// Condition (I) for all paths of length at most `max_path_len`: every path
/// map is a multiple of the shortest-path map with the same endpoints, and
/// shortest paths agree up to nonzero scalars. Empty paths count, so loops
/// must be multiples of the identity.
pub fn check_condition_i(data: &PrelinkedData, max_path_len: usize) -> bool {
    for v in 0..data.n() {
        // Breadth-first over (head, class of path map); a class already seen
        // at a head cannot produce anything new.
        let mut minimal: BTreeMap<usize, (usize, Option<Vec<Vec<Rational>>>)> = BTreeMap::new();
        let mut seen: BTreeSet<(usize, Option<Vec<Vec<Rational>>>)> = BTreeSet::new();
        let id = MatQ::identity(data.d);
        let mut layer = vec![(v, id.clone())];
        minimal.insert(v, (0, class(&id)));
        seen.insert((v, class(&id)));
        for len in 1..=max_path_len {
            let mut next = Vec::new();
            for (u, m) in &layer {
                for (_, h, f) in data.out_edges(*u) {
                    let fm = f.mul(m);
                    let c = class(&fm);
                    match minimal.get(h) {
                        None => {
                            minimal.insert(*h, (len, c.clone()));
                        }
                        Some((l, mc)) => {
                            let ok = if *l == len { *mc == c } else { c.is_none() || *mc == c };
                            if !ok {
                                return false;
                            }
                        }
                    }
                    if seen.insert((*h, c)) {
                        next.push((*h, fm));
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            layer = next;
        }
    }
    true
}

fn check_shape(data: &PrelinkedData, p: &PrelinkedPoint) -> Result<usize> {
    if p.spaces.len() != data.n() {
        return Err(Error::Schema("point has the wrong number of subspaces".into()));
    }
    let r = p.spaces.first().map_or(0, |s| s.dim());
    if p.spaces.iter().any(|s| s.ambient() != data.d || s.dim() != r) {
        return Err(Error::Schema("subspaces must all have the same dimension in Q^d".into()));
    }
    Ok(r)
}

/// `f_e(F_tail) ⊆ F_head` on every edge.
pub fn is_linked_point(data: &PrelinkedData, p: &PrelinkedPoint) -> Result<bool> {
    check_shape(data, p)?;
    Ok(data.edges.iter().all(|(t, h, f)| p.spaces[*h].contains_subspace(&p.spaces[*t].map(f))))
}

/// `f_{P(u, target)}(F_u)` for every `u`, along shortest paths.
pub fn images_in(data: &PrelinkedData, p: &PrelinkedPoint, target: usize) -> Vec<Subspace> {
    (0..data.n())
        .map(|u| {
            let (_, m) = &data.shortest_maps(u)[&target];
            p.spaces[u].map(m)
        })
        .collect()
}

pub fn verify_point_witness(data: &PrelinkedData, p: &PrelinkedPoint, wit: &PointWitness) -> bool {
    let r = p.spaces.first().map_or(0, |s| s.dim());
    if wit.len() != r || wit.iter().any(|(u, s)| !p.spaces[*u].contains(s)) {
        return false;
    }
    let maps: Vec<_> = wit.iter().map(|(u, _)| data.shortest_maps(*u)).collect();
    (0..data.n()).all(|v| {
        let imgs = wit.iter().zip(&maps).map(|((_, s), m)| m[&v].1.mul_vec(s)).collect();
        Subspace::from_vectors(data.d, imgs) == p.spaces[v]
    })
}

/// Existential search over vertex multisets, decided per support by Rado's
/// criterion and completed by a generic choice.
pub fn is_simple_point(data: &PrelinkedData, p: &PrelinkedPoint, opts: SearchOptions) -> Result<Verdict<PointWitness>> {
    let r = check_shape(data, p)?;
    if !is_linked_point(data, p)? {
        return precondition("point is not linked");
    }
    let n = data.n();
    let maps: Vec<_> = (0..n).map(|u| data.shortest_maps(u)).collect();
    // images[u][v] = f_{P(u, v)}(F_u)
    let images: Vec<Vec<Subspace>> =
        (0..n).map(|u| (0..n).map(|v| p.spaces[u].map(&maps[u][&v].1)).collect()).collect();
    for (count, support) in multisets(n, r).enumerate() {
        if count >= opts.budget {
            return Ok(Verdict::Undecided);
        }
        if !(0..n).all(|v| rado(&support.iter().map(|&u| images[u][v].clone()).collect::<Vec<_>>())) {
            continue;
        }
        let sources: Vec<Subspace> = support.iter().map(|&u| p.spaces[u].clone()).collect();
        let picked = sample_generic(&sources, opts.seed, |pick| {
            let wit: PointWitness = support.iter().copied().zip(pick.iter().cloned()).collect();
            verify_point_witness(data, p, &wit)
        });
        if let Some(pick) = picked {
            return Ok(Verdict::Found(support.into_iter().zip(pick).collect()));
        }
    }
    Ok(Verdict::Refuted)
}

/// Coordinates of `x` in the basis `basis ++ comp` of `Q^d`.
fn split_coords(basis: &[Vec<Rational>], comp: &[Vec<Rational>], x: &[Rational]) -> Vec<Rational> {
    let d = x.len();
    let cols: Vec<Vec<Rational>> = basis.iter().chain(comp).cloned().collect();
    MatQ::from_cols(&cols, d).solve(x).expect("basis of the ambient space")
}

/// Dimension of the space of first-order deformations: tuples
/// `h_v ∈ Hom(F_v, E_v/F_v)` with `f_e ∘ h_v ≡ h_{v'} ∘ f_e (mod F_{v'})`.
pub fn tangent_dimension(data: &PrelinkedData, p: &PrelinkedPoint) -> Result<usize> {
    let r = check_shape(data, p)?;
    if !is_linked_point(data, p)? {
        return precondition("point is not linked");
    }
    let d = data.d;
    let q = d - r;
    let n = data.n();
    let comps: Vec<Vec<Vec<Rational>>> = p.spaces.iter().map(|s| s.complement_in(&Subspace::full(d))).collect();
    // Unknown x[v][c][a]: coefficient of complement vector c in h_v(b_a).
    let var = |v: usize, c: usize, a: usize| v * r * q + c * r + a;
    let nvars = n * r * q;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (t, h, f) in &data.edges {
        let (bt, bh) = (p.spaces[*t].basis(), p.spaces[*h].basis());
        // f_e on complement vectors of the tail, in the (F_h, C_h) basis.
        let fc: Vec<Vec<Rational>> = comps[*t].iter().map(|c| split_coords(bh, &comps[*h], &f.mul_vec(c))).collect();
        for (a, b) in bt.iter().enumerate() {
            let y = split_coords(bh, &comps[*h], &f.mul_vec(b));
            debug_assert!(y[r..].iter().all(|x| x.is_zero()));
            for c2 in 0..q {
                let mut row = vec![Rational::zero(); nvars];
                for c in 0..q {
                    row[var(*t, c, a)] += &fc[c][r + c2];
                }
                for (beta, yb) in y[..r].iter().enumerate() {
                    row[var(*h, c2, beta)] -= yb;
                }
                rows.push(row);
            }
        }
    }
    Ok(nvars - MatQ::from_rows_with_cols(rows, nvars).rank())
}

/// Multiplies `f_e` by a nonzero scalar.
pub fn rescale_edge(data: &PrelinkedData, e: usize, s: &Rational) -> PrelinkedData {
    let mut out = data.clone();
    out.edges[e].2 = out.edges[e].2.scale(s);
    out
}

/// Example data: four vertices, a hub `v1` joined both ways to `v2, v3, v4`
/// by diagonal projections, and a linked point that is not simple.
pub fn example_a6() -> (PrelinkedData, PrelinkedPoint) {
    let diag = |a: i64, b: i64, c: i64| MatQ::from_i64(&[&[a, 0, 0], &[0, b, 0], &[0, 0, c]]);
    let edges = vec![
        (0, 1, diag(0, 0, 1)),
        (1, 0, diag(1, 1, 0)),
        (0, 2, diag(0, 1, 0)),
        (2, 0, diag(1, 0, 1)),
        (0, 3, diag(1, 0, 0)),
        (3, 0, diag(0, 1, 1)),
    ];
    let names = (1..=4).map(|i| format!("v{i}")).collect();
    let data = PrelinkedData::new(names, 3, edges).expect("valid example");
    let span = |vs: &[[i64; 3]]| {
        Subspace::from_vectors(3, vs.iter().map(|v| v.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect())
    };
    let point = PrelinkedPoint {
        spaces: vec![
            span(&[[1, 1, 0], [1, 0, 1]]),
            span(&[[1, 1, 0], [0, 0, 1]]),
            span(&[[0, 1, 0], [1, 0, 1]]),
            span(&[[1, 0, 0], [0, 1, -1]]),
        ],
    };
    (data, point)
}

/// Random data and simple points obtained by transporting generators.
pub mod random {
    use super::*;

    fn random_matrix(rng: &mut impl Rng, d: usize) -> MatQ {
        MatQ::from_rows((0..d).map(|_| (0..d).map(|_| Rational::from_integer(rng.gen_range(-3..=3).into())).collect()).collect())
    }

    pub fn random_invertible(rng: &mut impl Rng, d: usize) -> MatQ {
        loop {
            let m = random_matrix(rng, d);
            if m.is_invertible() {
                return m;
            }
        }
    }

    /// A chain `0 - 1 - … - (n-1)` with edges both ways. With `exact`, the two
    /// maps across each link are `Q diag(I_m, 0) P^-1` and `P diag(0, I_{d-m}) Q^-1`,
    /// so back-and-forth compositions vanish; otherwise they are mutually inverse.
    pub fn chain_data(rng: &mut impl Rng, n: usize, d: usize, exact: bool) -> PrelinkedData {
        let mut edges = Vec::new();
        for i in 0..n.saturating_sub(1) {
            let p = random_invertible(rng, d);
            let q = random_invertible(rng, d);
            let (pi, qi) = (p.inverse().unwrap(), q.inverse().unwrap());
            if exact {
                let m = rng.gen_range(1..d);
                let mut lo = MatQ::zeros(d, d);
                let mut hi = MatQ::zeros(d, d);
                for j in 0..d {
                    if j < m {
                        lo[(j, j)] = Rational::one();
                    } else {
                        hi[(j, j)] = Rational::one();
                    }
                }
                edges.push((i, i + 1, q.mul(&lo).mul(&pi)));
                edges.push((i + 1, i, p.mul(&hi).mul(&qi)));
            } else {
                edges.push((i, i + 1, q.mul(&pi)));
                edges.push((i + 1, i, p.mul(&qi)));
            }
        }
        let names = (0..n).map(|i| format!("u{i}")).collect();
        PrelinkedData::new(names, d, edges).expect("chain is strongly connected")
    }

    /// Transports `r` random generators from random vertices; retries until
    /// every transported span has dimension `r`.
    pub fn simple_point(rng: &mut impl Rng, r: usize, d: usize) -> (PrelinkedData, PrelinkedPoint, PointWitness) {
        loop {
            let n = rng.gen_range(2..=4);
            let exact = rng.gen_bool(0.7);
            let data = chain_data(rng, n, d, exact);
            let wit: PointWitness = (0..r)
                .map(|_| {
                    let u = rng.gen_range(0..n);
                    (u, (0..d).map(|_| Rational::from_integer(rng.gen_range(-3..=3).into())).collect())
                })
                .collect();
            let maps: Vec<_> = wit.iter().map(|(u, _)| data.shortest_maps(*u)).collect();
            let spaces: Vec<Subspace> = (0..n)
                .map(|v| Subspace::from_vectors(d, wit.iter().zip(&maps).map(|((_, s), m)| m[&v].1.mul_vec(s)).collect()))
                .collect();
            if spaces.iter().all(|s| s.dim() == r) {
                return (data, PrelinkedPoint { spaces }, wit);
            }
        }
    }
}
