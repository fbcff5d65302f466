//! Named built-in fixtures.

use crate::curve_model::CurveBundle;
use crate::degree_graph::{DegreeConfig, DualGraph, Multidegree};
use crate::exactlinalg::{int, MatQ, Rational, Subspace};
use crate::series::linked::from_generators;
use crate::series::{EhtSeries, LinkedSeries};

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

/// Three lines in a chain, rank one, `d = 2`, `b = 1`, `d_v = (1, 2, 1)`.
pub fn bad_compare_bundle() -> CurveBundle {
    let cfg = DegreeConfig::new(DualGraph::chain(3), 1, 2, 2, 1, vec![1, 2, 1]).expect("valid config");
    CurveBundle::new(
        cfg,
        vec![vec![1], vec![2], vec![1]],
        vec![(int(0), int(0)), (int(1), int(0))],
        vec![MatQ::from_i64(&[&[1]]), MatQ::from_i64(&[&[1]])],
    )
    .expect("valid bundle")
}

/// `V^1`, `V^3` full and `V^2 = ⟨x² - x, 1 + x + x²⟩`.
pub fn bad_compare_eht() -> EhtSeries {
    let b = bad_compare_bundle();
    EhtSeries::new(
        b,
        vec![
            Subspace::full(2),
            Subspace::from_vectors(3, vec![ints(&[0, -1, 1]), ints(&[1, 1, 1])]),
            Subspace::full(2),
        ],
    )
    .expect("valid series")
}

/// `s_1` at `(1,0,1)`, in the common coordinates.
pub fn bad_compare_s1() -> (Multidegree, Vec<Rational>) {
    (vec![1, 0, 1], ints(&[-1, 0, 0, -1, 1, 1, 0]))
}

/// `s_2` at `(0,2,0)`.
pub fn bad_compare_s2() -> (Multidegree, Vec<Rational>) {
    (vec![0, 2, 0], ints(&[0, 1, 1, 1, 1, 0, 3]))
}

/// The sections `x_1` and `x_3` supported on a single end component at `(1,0,1)`.
pub fn bad_compare_x1() -> Vec<Rational> {
    ints(&[0, 1, 0, 0, 0, 0, 0])
}

pub fn bad_compare_x3() -> Vec<Rational> {
    ints(&[0, 0, 0, 0, 0, 0, 1])
}

/// Linked series generated by `s_1 + c·x_1` and `s_2`.
pub fn bad_compare_linked(c: i64) -> LinkedSeries {
    let (w1, mut s1) = bad_compare_s1();
    for (a, x) in s1.iter_mut().zip(bad_compare_x1()) {
        *a += int(c) * x;
    }
    from_generators(&bad_compare_bundle(), &[(w1, s1), bad_compare_s2()]).expect("generators span k")
}


/// A chain of `n` components, vertex `i` carrying `P = 0` towards `i - 1`
/// and `Q = 1` towards `i + 1`.
pub fn chain_bundle(r: i64, k: usize, b: i64, splits: Vec<Vec<i64>>, gluings: Vec<MatQ>) -> crate::Result<CurveBundle> {
    let n = splits.len();
    let dv: Vec<i64> = splits.iter().map(|s| s.iter().sum()).collect();
    let d = dv.iter().sum::<i64>() - (n as i64 - 1) * r * b;
    let cfg = DegreeConfig::new(DualGraph::chain(n), r, d, k, b, dv)?;
    CurveBundle::new(cfg, splits, vec![(int(1), int(0)); n - 1], gluings)
}

fn component_vector(splits: &[i64], polys: &[Vec<i64>]) -> Vec<Rational> {
    let mut out = Vec::new();
    for (c, p) in splits.iter().zip(polys) {
        let mut block = vec![int(0); (*c + 1) as usize];
        for (i, x) in p.iter().enumerate() {
            block[i] = int(*x);
        }
        out.extend(block);
    }
    out
}

fn span_of(splits: &[i64], sections: &[Vec<Vec<i64>>]) -> Subspace {
    let dim = splits.iter().map(|c| (c + 1) as usize).sum();
    Subspace::from_vectors(dim, sections.iter().map(|s| component_vector(splits, s)).collect())
}

fn direct_sum_chain(b: i64, splits: Vec<Vec<i64>>, secs: &[[Vec<i64>; 2]]) -> EhtSeries {
    let n = splits.len();
    let bundle = chain_bundle(2, 2, b, splits.clone(), vec![MatQ::identity(2); n - 1]).expect("valid bundle");
    let spaces = splits
        .iter()
        .zip(secs)
        .map(|(s, [a, c])| span_of(s, &[vec![a.clone(), vec![0]], vec![vec![0], c.clone()]]))
        .collect();
    EhtSeries::new(bundle, spaces).expect("valid series")
}

/// Rank two, `b = 1`: one thread per coordinate, and the two threads trade
/// places once along the chain.
pub fn chain_single_swap() -> EhtSeries {
    direct_sum_chain(
        1,
        vec![vec![1, 0], vec![0, 1], vec![1, 2], vec![1, 0]],
        &[
            [vec![-1, 1], vec![1]],
            [vec![1], vec![0, 1]],
            [vec![0, 1], vec![0, -1, 1]],
            [vec![0, 1], vec![1]],
        ],
    )
}

/// As [`chain_single_swap`] but the threads trade places twice, so both
/// end components see them in the same order.
pub fn chain_double_swap() -> EhtSeries {
    direct_sum_chain(
        1,
        vec![vec![1, 0], vec![0, 1], vec![1, 2], vec![1, 0], vec![2, 1], vec![0, 1]],
        &[
            [vec![-1, 1], vec![1]],
            [vec![1], vec![0, 1]],
            [vec![0, 1], vec![0, -1, 1]],
            [vec![0, 1], vec![1]],
            [vec![0, -1, 1], vec![0, 1]],
            [vec![1], vec![0, 1]],
        ],
    )
}

/// Rank two, three components: the threads tie on the first component and
/// the tie order disagrees with the order on the second one.
pub fn chain_tie_swap() -> EhtSeries {
    direct_sum_chain(
        1,
        vec![vec![0, 0], vec![2, 1], vec![0, 1]],
        &[[vec![1], vec![1]], [vec![0, -1, 1], vec![0, 1]], [vec![1], vec![0, 1]]],
    )
}

/// Three lines of degree one with full section spaces, `b = 1`.
pub fn chain_full_interior() -> EhtSeries {
    let one = MatQ::identity(1);
    let b = chain_bundle(1, 2, 1, vec![vec![1]; 3], vec![one.clone(), one]).expect("valid bundle");
    EhtSeries::new(b, vec![Subspace::full(2); 3]).expect("valid series")
}

/// The bad-compare bundle with interior space `⟨x - x², 1 - 2x + 2x²⟩`.
pub fn chain_non_adaptable_interior() -> EhtSeries {
    let b = bad_compare_bundle();
    EhtSeries::new(
        b,
        vec![
            Subspace::full(2),
            Subspace::from_vectors(3, vec![ints(&[0, 1, -1]), ints(&[1, -2, 2])]),
            Subspace::full(2),
        ],
    )
    .expect("valid series")
}

pub mod random {
    //! Seeded generators for property suites.

    use rand::seq::SliceRandom;
    use rand::Rng;

    use super::{chain_bundle, component_vector};
    use crate::exactlinalg::{int, MatQ, Poly, Rational, Subspace};
    use crate::series::EhtSeries;

    fn coeffs(p: &Poly, len: usize) -> Vec<i64> {
        let mut out = vec![0; len];
        for (i, c) in p.coeffs().iter().enumerate() {
            out[i] = crate::exactlinalg::rational::to_i64(c).expect("integer coefficient");
        }
        out
    }

    /// `c · x^a (x - 1)^b`, plus a random multiple of `x^{a+1}(x-1)^{b+1}` when it fits.
    fn exact_order_poly(rng: &mut impl Rng, deg: i64, a: usize, b: usize) -> Poly {
        let base = Poly::linear_power(&int(0), a) * Poly::linear_power(&int(1), b);
        let mut p = base.scale(&int(*[-2, -1, 1, 2, 3].choose(rng).unwrap()));
        if (a + b + 2) as i64 <= deg && rng.gen_bool(0.5) {
            let extra = Poly::linear_power(&int(0), a + 1) * Poly::linear_power(&int(1), b + 1);
            p = p + extra.scale(&int(rng.gen_range(-2..=2)));
        }
        p
    }

    /// Chain-adaptable series of rank one: `k` threads with anti-monotone orders.
    pub fn chain_adaptable_rank_one(rng: &mut impl Rng, n: usize, k: usize, b: i64) -> EhtSeries {
        assert!(b + 1 >= k as i64);
        // betas[i][j]: order at Q_i of thread j, increasing in j.
        let betas: Vec<Vec<usize>> = (0..n - 1)
            .map(|_| {
                let mut pool: Vec<usize> = (0..=b as usize).collect();
                pool.shuffle(rng);
                let mut v = pool[..k].to_vec();
                v.sort_unstable_by(|x, y| y.cmp(x));
                v
            })
            .collect();
        // Thread j: α rank j and β rank k-1-j, so betas are stored in decreasing order.
        let order = |i: usize, j: usize| -> (usize, usize) {
            let a = if i == 0 { 0 } else { b as usize - betas[i - 1][j] };
            let q = if i + 1 == n { 0 } else { betas[i][j] };
            (a, q)
        };
        let mut splits = Vec::new();
        let mut spaces = Vec::new();
        for i in 0..n {
            let need = (0..k).map(|j| order(i, j)).map(|(a, q)| a + q).max().unwrap_or(0) as i64;
            let deg = need.max(k as i64 - 1) + rng.gen_range(0..=1);
            splits.push(vec![deg]);
            let vs: Vec<Vec<Rational>> = (0..k)
                .map(|j| {
                    let (a, q) = order(i, j);
                    let p = exact_order_poly(rng, deg, a, q);
                    component_vector(&[deg], &[coeffs(&p, deg as usize + 1)])
                })
                .collect();
            spaces.push(Subspace::from_vectors(deg as usize + 1, vs));
        }
        let gluings = (0..n - 1).map(|_| MatQ::from_i64(&[&[*[1, 2, -1, 3].choose(rng).unwrap()]])).collect();
        let bundle = chain_bundle(1, k, b, splits, gluings).expect("valid bundle");
        EhtSeries::new(bundle, spaces).expect("valid series")
    }

    fn random_gluing(rng: &mut impl Rng, r: usize) -> MatQ {
        loop {
            let m = match rng.gen_range(0..3) {
                0 => MatQ::identity(r),
                1 if r == 2 => MatQ::from_i64(&[&[0, 1], &[1, 0]]),
                _ => MatQ::from_rows((0..r).map(|_| (0..r).map(|_| int(rng.gen_range(-2..=2))).collect()).collect()),
            };
            if m.is_invertible() {
                return m;
            }
        }
    }

    fn random_section(rng: &mut impl Rng, splits: &[i64]) -> Vec<Rational> {
        let polys: Vec<Vec<i64>> = splits
            .iter()
            .map(|&c| {
                if rng.gen_bool(0.25) {
                    return vec![0; c as usize + 1];
                }
                let a = rng.gen_range(0..=c as usize);
                let q = rng.gen_range(0..=(c as usize - a));
                let p = exact_order_poly(rng, c, a, q);
                coeffs(&p, c as usize + 1)
            })
            .collect();
        component_vector(splits, &polys)
    }

    /// Random EHT candidates on chains satisfying condition (I): split degrees at most `b`.
    pub fn eht_candidate(rng: &mut impl Rng, n: usize, r: usize, k: usize, b: i64) -> EhtSeries {
        loop {
            let splits: Vec<Vec<i64>> = (0..n).map(|_| (0..r).map(|_| rng.gen_range(0..=b)).collect()).collect();
            let gluings = (0..n - 1).map(|_| random_gluing(rng, r)).collect();
            let Ok(bundle) = chain_bundle(r as i64, k, b, splits.clone(), gluings) else { continue };
            let mut spaces = Vec::new();
            for s in &splits {
                let dim: usize = s.iter().map(|c| (c + 1) as usize).sum();
                if dim < k {
                    break;
                }
                let sp = if rng.gen_bool(0.15) && dim == k {
                    Subspace::full(dim)
                } else {
                    Subspace::from_vectors(dim, (0..k).map(|_| random_section(rng, s)).collect())
                };
                if sp.dim() != k {
                    break;
                }
                spaces.push(sp);
            }
            if spaces.len() == n {
                return EhtSeries::new(bundle, spaces).expect("dimensions checked");
            }
        }
    }

    /// Refined candidates: rank-one threads on bundles respecting condition (I).
    pub fn refined_candidate(rng: &mut impl Rng, n: usize, k: usize, b: i64) -> EhtSeries {
        loop {
            let s = chain_adaptable_rank_one(rng, n, k, b);
            if s.bundle.condition_i_holds() {
                return s;
            }
        }
    }
}
