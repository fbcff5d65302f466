//! Acceptance suite: one line per criterion, exact arithmetic throughout.
//!
//! Runs without the libtest harness so every line is printed whether the
//! criterion passes or not; the process exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};

use rand::seq::SliceRandom;
use rand::Rng;

use lls_core::degree_graph::{
    self, enumerate_bar_gii, enumerate_gi, extremal_vertex, in_bar_gii, is_vertex_gi, minimal_path_ii,
    reorder_path_within_bar, step_i, step_ii, DegreeConfig, DualGraph, Multidegree,
};
use lls_core::detloci::{
    degenerating_family, direct_sum_invariance, family_matrix, family_vanishing_locus, kernel_at_point,
    vanishing_chain, vanishing_locus,
};
use lls_core::exactlinalg::{int, rat};
use lls_core::fixtures::{self, random as rfix};
use lls_core::genericity::{rng, SearchOptions};
use lls_core::json;
use lls_core::prelinked::{
    self, example_a6, images_in, is_linked_point, is_simple_point, tangent_dimension, verify_point_witness,
};
use lls_core::report::{self, fixture_document, Options, COMMANDS, FIXTURE_NAMES};
use lls_core::series::adapted::{adaptable, adapted_basis, is_adapted_basis};
use lls_core::series::chain::{chain_adaptable, chain_global_bases, constrained_witness_from_chain, dimension_identity};
use lls_core::series::eht::{check_eht_direct, check_eht_kernel, check_refined, kernel_at};
use lls_core::series::linked::{check_linked, check_linked_window, extend_from_bar, forgetful_to_eht, from_generators};
use lls_core::series::witness::{check_constrained, verify_constrained_witness};
use lls_core::series::{eht_to_linked, eht_to_linked_with, ComponentSpace, EhtSeries, TieBreak};
use lls_core::{Poly, PolyMatrix, Rational, Subspace};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn criterion_1() -> Outcome {
    let (data, point) = example_a6();
    ensure!(is_linked_point(&data, &point).unwrap(), "point is not linked");
    let simple = is_simple_point(&data, &point, SearchOptions::default()).unwrap();
    ensure!(simple.label() == "false", "simple verdict is {}", simple.label());
    let images = images_in(&data, &point, 0);
    let lines = &images[1..];
    ensure!(lines.iter().all(|l| l.dim() == 1), "images are not lines");
    ensure!(lines[0] != lines[1] && lines[0] != lines[2] && lines[1] != lines[2], "images coincide");
    Ok("linked, not simple, three distinct image lines".into())
}

fn criterion_2() -> Outcome {
    let (a, b) = (fixtures::bad_compare_linked(0), fixtures::bad_compare_linked(1));
    ensure!(a != b, "the two series coincide");
    ensure!(check_linked(&a).unwrap() && check_linked(&b).unwrap(), "a series fails check_linked");
    ensure!(forgetful_to_eht(&a).unwrap() == forgetful_to_eht(&b).unwrap(), "forgetful images differ");
    ensure!(a.space(&[1, 0, 1]) != b.space(&[1, 0, 1]), "V_(1,0,1) agree");
    for w in [[1, 1, 0], [0, 1, 1], [0, 2, 0]] {
        ensure!(a.space(&w) == b.space(&w), "V_{w:?} differ");
    }
    Ok("two linked series, same EHT image, differ only at (1,0,1)".into())
}

fn criterion_3() -> Outcome {
    let mut r = rng(3);
    let (mut total, mut passing, mut refined) = (0, 0, 0);
    let mut cases: Vec<EhtSeries> = Vec::new();
    for _ in 0..200 {
        let n = r.gen_range(2..=3);
        let rk = r.gen_range(1..=2);
        let k = r.gen_range(1..=2);
        let b = r.gen_range(1..=2);
        cases.push(rfix::eht_candidate(&mut r, n, rk, k, b));
    }
    for _ in 0..60 {
        let n = r.gen_range(2..=3);
        let k = r.gen_range(1..=2);
        let b = r.gen_range(1..=2).max(k as i64 - 1);
        cases.push(rfix::refined_candidate(&mut r, n, k, b));
    }
    for s in &cases {
        total += 1;
        let (direct, kernel) = (check_eht_direct(s).unwrap(), check_eht_kernel(s).unwrap());
        ensure!(direct == kernel, "direct {direct} vs kernel {kernel} on instance {total}");
        if !direct {
            continue;
        }
        passing += 1;
        for v in 0..s.cfg().n() {
            let dim = kernel_at(s, &extremal_vertex(s.cfg(), v)).unwrap().dim();
            ensure!(dim == s.k(), "kernel dimension {dim} at w_{v}");
        }
        if check_refined(s).unwrap() {
            refined += 1;
            for w in enumerate_gi(s.cfg()) {
                ensure!(kernel_at(s, &w).unwrap().dim() == s.k(), "refined kernel dimension off at {w:?}");
            }
        }
    }
    ensure!(passing > 0 && passing < total, "degenerate sample: {passing}/{total} pass");
    Ok(format!("{total} candidates agree; {passing} EHT, {refined} refined"))
}

fn random_poly_in(rng: &mut impl Rng, d: i64, p: &Rational, q: &Rational) -> Poly {
    let a = rng.gen_range(0..=d as usize);
    let b = rng.gen_range(0..=(d as usize - a));
    let c = int(*[-2, -1, 1, 2].choose(rng).unwrap());
    (Poly::linear_power(p, a) * Poly::linear_power(q, b)).scale(&c)
}

fn criterion_4() -> Outcome {
    let mut r = rng(4);
    let points = [int(0), int(1), int(-1), int(2), rat(1, 2), int(3)];
    let (mut yes, mut no) = (0, 0);
    for i in 0..240 {
        let d = r.gen_range(1..=5i64);
        let k = r.gen_range(1..=3usize.min(d as usize + 1));
        let space = ComponentSpace::line(d);
        let p = points.choose(&mut r).unwrap().clone();
        let q = loop {
            let q = points.choose(&mut r).unwrap().clone();
            if q != p {
                break q;
            }
        };
        let v = loop {
            let gens: Vec<Vec<Rational>> = (0..k)
                .map(|_| {
                    let terms = if r.gen_bool(0.5) { 1 } else { 2 };
                    let poly = (0..terms).fold(Poly::zero(), |acc, _| &acc + &random_poly_in(&mut r, d, &p, &q));
                    space.from_polys(&[poly])
                })
                .collect();
            let s = Subspace::from_vectors(space.dim(), gens);
            if s.dim() == k {
                break s;
            }
        };
        let criterion = adaptable(&space, &v, &p, &q);
        match adapted_basis(&space, &v, &p, &q) {
            Some(basis) => {
                ensure!(criterion, "basis found but equality fails (instance {i})");
                ensure!(is_adapted_basis(&space, &v, &p, &q, &basis), "returned basis rejected (instance {i})");
                yes += 1;
            }
            None => {
                ensure!(!criterion, "equality holds but no basis (instance {i})");
                no += 1;
            }
        }
    }
    ensure!(yes > 0 && no > 0, "one-sided sample: {yes} adaptable, {no} not");
    Ok(format!("{} instances; {yes} adapted bases verified, {no} correctly refused", yes + no))
}

fn tie_breaks() -> Vec<TieBreak> {
    let mut out = Vec::new();
    for reverse_edges in [false, true] {
        for drop_lowest in [false, true] {
            out.push(TieBreak { reverse_edges, drop_lowest });
        }
    }
    out
}

fn criterion_5() -> Outcome {
    let mut r = rng(5);
    let count = 110;
    for i in 0..count {
        let n = r.gen_range(2..=3);
        let k = r.gen_range(1..=2);
        let b = r.gen_range(1..=2).max(k as i64 - 1);
        let s = rfix::refined_candidate(&mut r, n, k, b);
        ensure!(check_refined(&s).unwrap(), "fixture {i} is not refined");
        let ls = eht_to_linked(&s).unwrap();
        ensure!(check_linked(&ls).unwrap(), "preimage {i} is not linked");
        ensure!(forgetful_to_eht(&ls).unwrap() == s, "round trip {i} changes the series");
        for tb in tie_breaks() {
            ensure!(eht_to_linked_with(&s, tb).unwrap() == ls, "tie-break {tb:?} changes preimage {i}");
        }
    }
    Ok(format!("{count} refined round trips, unique under 4 tie-breaks"))
}

fn criterion_6() -> Outcome {
    let mut r = rng(6);
    let mut cases: Vec<(String, EhtSeries)> = Vec::new();
    for i in 0..20 {
        let n = r.gen_range(2..=4);
        let k = r.gen_range(1..=2);
        let b = r.gen_range(1..=2).max(k as i64 - 1);
        cases.push((format!("random-{i}"), rfix::chain_adaptable_rank_one(&mut r, n, k, b)));
    }
    cases.push(("chain-full-interior".into(), fixtures::chain_full_interior()));
    cases.push(("chain-tie-swap".into(), fixtures::chain_tie_swap()));
    cases.push(("chain-single-swap".into(), fixtures::chain_single_swap()));
    cases.push(("chain-double-swap".into(), fixtures::chain_double_swap()));
    let mut failures = Vec::new();
    let mut swaps = 0;
    for (name, s) in &cases {
        ensure!(chain_adaptable(s).unwrap(), "{name} is not chain-adaptable");
        let constrained = check_constrained(s, SearchOptions::default()).unwrap();
        let cb = match chain_global_bases(s, 1) {
            Ok(cb) => cb,
            Err(e) => {
                failures.push(format!("{name} (no chain bases: {e}; exhaustive search: {})", constrained.label()));
                continue;
            }
        };
        if cb.sigma.iter().any(|p| p.iter().enumerate().any(|(j, &x)| j != x)) {
            swaps += 1;
        }
        let accepted = verify_constrained_witness(s, &cb.witness).unwrap() && constrained.holds();
        let identity = cb.witness.iter().all(|(w, _)| {
            let (lhs, rhs) = dimension_identity(s, w).unwrap();
            lhs as i64 == rhs
        });
        if accepted && identity {
            ensure!(constrained_witness_from_chain(s, 1).is_ok(), "{name}: chain witness rejected");
        } else {
            failures.push(format!("{name} (witness accepted: {accepted}, dimension identity: {identity})"));
        }
    }
    ensure!(swaps > 0, "no fixture needs a nontrivial permutation");
    ensure!(
        failures.is_empty(),
        "{} of {} chain-adaptable fixtures are not constrained: {}",
        failures.len(),
        cases.len(),
        failures.join("; ")
    );
    Ok(format!("{} fixtures constrained, {swaps} with a nontrivial permutation", cases.len()))
}

fn criterion_7() -> Outcome {
    let mut r = rng(7);
    let mut count = 0;
    for (rk, d) in [(1, 2), (1, 3), (2, 3), (2, 4)] {
        for _ in 0..13 {
            let (data, point, wit) = prelinked::random::simple_point(&mut r, rk, d);
            ensure!(verify_point_witness(&data, &point, &wit), "constructed witness rejected");
            ensure!(is_linked_point(&data, &point).unwrap(), "constructed point is not linked");
            let t = tangent_dimension(&data, &point).unwrap();
            ensure!(t == rk * (d - rk), "tangent dimension {t} at (r, d) = ({rk}, {d})");
            count += 1;
        }
    }
    let (data, point) = example_a6();
    let t = tangent_dimension(&data, &point).unwrap();
    ensure!(t == 2 && t >= 2, "tangent dimension at the non-simple example is {t}");
    Ok(format!("{count} simple points have tangent dimension r(d-r); non-simple example: {t}"))
}

/// Labeled trees on `n` vertices from Prüfer sequences.
fn labeled_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    if n == 1 {
        return vec![Vec::new()];
    }
    if n == 2 {
        return vec![vec![(0, 1)]];
    }
    let mut out = Vec::new();
    let total = n.pow(n as u32 - 2);
    for code in 0..total {
        let mut seq = Vec::new();
        let mut c = code;
        for _ in 0..n - 2 {
            seq.push(c % n);
            c /= n;
        }
        out.push(prufer_edges(&seq, n));
    }
    out
}

fn prufer_edges(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::new();
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

fn graph_from(n: usize, edges: &[(usize, usize)], flips: usize) -> DualGraph {
    let vs = (0..n).map(|i| (format!("v{i}"), 0)).collect();
    let es = edges
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| {
            let (t, h) = if flips >> i & 1 == 1 { (b, a) } else { (a, b) };
            (format!("e{i}"), format!("v{t}"), format!("v{h}"))
        })
        .collect();
    DualGraph::new(vs, es).unwrap()
}

fn config_on(g: DualGraph, r: i64, b: i64) -> DegreeConfig {
    let dv: Vec<i64> = (0..g.num_vertices()).map(|v| r * b * g.valence(v).max(1) as i64).collect();
    let d = dv.iter().sum::<i64>() - g.num_edges() as i64 * r * b;
    DegreeConfig::new(g, r, d, 1, b, dv).unwrap()
}

fn criterion_8() -> Outcome {
    let mut r = rng(8);
    let mut series = 0;
    let mut outside = 0;
    while series < 100 {
        let n = r.gen_range(2..=3);
        let rk = r.gen_range(1..=2);
        let k = r.gen_range(1..=2);
        let b = r.gen_range(1..=2);
        let bundle = rfix::eht_candidate(&mut r, n, rk, k, b).bundle;
        let bar = enumerate_bar_gii(&bundle.cfg);
        let gens: Vec<(Multidegree, Vec<Rational>)> = (0..k)
            .map(|_| {
                let w = bar.choose(&mut r).unwrap().clone();
                let h0 = bundle.global_sections_q(&w).unwrap();
                let s = lls_core::genericity::random_element(&h0, &mut r, 3);
                (w, s)
            })
            .collect();
        let Ok(ls) = from_generators(&bundle, &gens) else { continue };
        let mut window = BTreeMap::new();
        for w in &bar {
            let ext = extend_from_bar(&ls, w).unwrap();
            let own: Vec<Vec<Rational>> =
                ls.space(w).basis().iter().map(|x| bundle.q_to_g(w, x).unwrap().unwrap()).collect();
            let own = Subspace::from_vectors(ext.ambient(), own);
            ensure!(ext == own, "extension changes V_{w:?} (series {series})");
            window.insert(w.clone(), ext);
            for u in 0..n {
                let w2 = step_ii(&bundle.cfg, w, u);
                if !in_bar_gii(&bundle.cfg, &w2) && !window.contains_key(&w2) {
                    window.insert(w2.clone(), extend_from_bar(&ls, &w2).unwrap());
                    outside += 1;
                }
            }
        }
        ensure!(check_linked_window(&bundle, &window).unwrap(), "extended window is not linked (series {series})");
        series += 1;
    }
    let mut paths = 0;
    let mut nontrivial = 0;
    while paths < 100 {
        let n: usize = r.gen_range(2..=5);
        let seq: Vec<usize> = (0..n.saturating_sub(2)).map(|_| r.gen_range(0..n)).collect();
        let edges = if n == 2 { vec![(0, 1)] } else { prufer_edges(&seq, n) };
        let g = graph_from(n, &edges, r.gen_range(0..1 << (n - 1)));
        let cfg = config_on(g, r.gen_range(1..=2), r.gen_range(1..=2));
        let bar = enumerate_bar_gii(&cfg);
        let (w, w2) = (bar.choose(&mut r).unwrap(), bar.choose(&mut r).unwrap());
        let p = minimal_path_ii(&cfg, w, w2).unwrap();
        let q = reorder_path_within_bar(&cfg, &p).unwrap();
        ensure!(q.multiset(n) == p.multiset(n), "reordering changed the multiset");
        ensure!(q.trace(&cfg).iter().all(|x| in_bar_gii(&cfg, x)), "reordered path leaves the window");
        ensure!(&q.end(&cfg) == w2, "reordered path ends elsewhere");
        if !q.vertices.is_empty() {
            nontrivial += 1;
        }
        paths += 1;
    }
    Ok(format!("{series} type-II series restrict to themselves ({outside} outside spaces); {paths} paths reordered ({nontrivial} nonempty)"))
}

/// Endpoint of a multiset of type-II steps.
fn end_ii(cfg: &DegreeConfig, w: &[i64], m: &[usize]) -> Multidegree {
    let mut out = w.to_vec();
    for (u, &c) in m.iter().enumerate() {
        for _ in 0..c {
            out = step_ii(cfg, &out, u);
        }
    }
    out
}

fn all_vectors(len: usize, bound: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out.into_iter().flat_map(|v| (0..=bound).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

fn bfs<F: Fn(&Multidegree) -> Vec<Multidegree>>(start: &Multidegree, depth: usize, next: F) -> BTreeMap<Multidegree, usize> {
    let mut dist = BTreeMap::from([(start.clone(), 0)]);
    let mut frontier = vec![start.clone()];
    for d in 1..=depth {
        let mut nf = Vec::new();
        for w in &frontier {
            for x in next(w) {
                if !dist.contains_key(&x) {
                    dist.insert(x.clone(), d);
                    nf.push(x);
                }
            }
        }
        frontier = nf;
    }
    dist
}

fn criterion_9() -> Outcome {
    let mut configs = 0;
    let mut comparisons = 0u64;
    for n in 1..=4 {
        for tree in labeled_trees(n) {
            for flips in 0..1usize << tree.len() {
                for rk in 1..=2 {
                    for b in 0..=2 {
                        let cfg = config_on(graph_from(n, &tree, flips), rk, b);
                        configs += 1;
                        comparisons += check_gii(&cfg)? + check_gi(&cfg)?;
                    }
                }
            }
        }
    }
    Ok(format!("{configs} configurations, {comparisons} endpoint comparisons"))
}

fn check_gii(cfg: &DegreeConfig) -> Result<u64, String> {
    let n = cfg.n();
    let w0 = extremal_vertex(cfg, 0);
    let ms = all_vectors(n, 2);
    let ends: Vec<Multidegree> = ms.iter().map(|m| end_ii(cfg, &w0, m)).collect();
    let mut count = 0;
    for i in 0..ms.len() {
        for j in 0..ms.len() {
            let diff: Vec<i64> = (0..n).map(|v| ms[i][v] as i64 - ms[j][v] as i64).collect();
            let rule = diff.iter().all(|&x| x == diff[0]);
            ensure!((ends[i] == ends[j]) == rule, "type-II rule fails for {:?} vs {:?}", ms[i], ms[j]);
            count += 1;
        }
    }
    let dist = bfs(&w0, 2 * n, |w| (0..n).map(|u| step_ii(cfg, w, u)).collect());
    for (w, d) in &dist {
        let p = minimal_path_ii(cfg, &w0, w).map_err(|e| e.to_string())?;
        ensure!(p.vertices.len() == *d, "minimal path to {w:?} has length {} not {d}", p.vertices.len());
    }
    Ok(count)
}

fn check_gi(cfg: &DegreeConfig) -> Result<u64, String> {
    let g = &cfg.graph;
    let steps: Vec<(usize, usize)> =
        g.edges().iter().enumerate().flat_map(|(e, ed)| [(e, ed.tail), (e, ed.head)]).collect();
    let w0 = extremal_vertex(cfg, 0);
    let ms = all_vectors(steps.len(), 1);
    let ends: Vec<Multidegree> = ms
        .iter()
        .map(|m| {
            let mut w = w0.clone();
            for (s, &c) in steps.iter().zip(m) {
                for _ in 0..c {
                    w = step_i(cfg, &w, s.0, s.1);
                }
            }
            w
        })
        .collect();
    let net = |m: &[usize]| -> Vec<i64> { (0..g.num_edges()).map(|e| m[2 * e] as i64 - m[2 * e + 1] as i64).collect() };
    let mut count = 0;
    for i in 0..ms.len() {
        for j in 0..ms.len() {
            ensure!((ends[i] == ends[j]) == (net(&ms[i]) == net(&ms[j])), "type-I rule fails for {:?} vs {:?}", ms[i], ms[j]);
            count += 1;
        }
    }
    // Inside V(G_I) the distance is the total change of tail twists.
    let dist = bfs(&w0, (g.num_edges() + 1) * (cfg.b as usize + 1), |w| {
        steps.iter().map(|&(e, v)| step_i(cfg, w, e, v)).filter(|x| is_vertex_gi(cfg, x)).collect()
    });
    let t0 = degree_graph::t_values(cfg, &w0).unwrap();
    for w in enumerate_gi(cfg) {
        let t = degree_graph::t_values(cfg, &w).unwrap();
        let expect: i64 = t.iter().zip(&t0).map(|(a, b)| (a.0 - b.0).abs()).sum();
        ensure!(dist.get(&w) == Some(&(expect as usize)), "G_I distance to {w:?} is {:?}, expected {expect}", dist.get(&w));
    }
    Ok(count)
}

fn random_polymatrix(r: &mut impl Rng) -> PolyMatrix {
    let rows = r.gen_range(1..=3);
    let cols = r.gen_range(1..=3);
    if r.gen_bool(0.5) {
        // U · diag((t - a)^e) · V with constant U, V.
        let m = rows.min(cols);
        let roots = [int(0), int(1), int(-2), rat(1, 2)];
        let diag: Vec<Poly> = (0..m)
            .map(|_| {
                let e = r.gen_range(0..=2);
                if r.gen_bool(0.15) {
                    Poly::zero()
                } else {
                    Poly::linear_power(roots.choose(r).unwrap(), e)
                }
            })
            .collect();
        let mut d = PolyMatrix::zeros(rows, cols);
        for (i, p) in diag.into_iter().enumerate() {
            d[(i, i)] = p;
        }
        let u = PolyMatrix::from_constant(&prelinked::random::random_invertible(r, rows));
        let v = PolyMatrix::from_constant(&prelinked::random::random_invertible(r, cols));
        return u.mul(&d).mul(&v);
    }
    let entries = (0..rows)
        .map(|_| (0..cols).map(|_| Poly::from_i64(&(0..r.gen_range(0..=3)).map(|_| r.gen_range(-2..=2)).collect::<Vec<_>>())).collect())
        .collect();
    PolyMatrix::from_rows(entries, cols)
}

fn criterion_10() -> Outcome {
    let mut r = rng(10);
    let off_root = [rat(1, 3), rat(-7, 4), rat(2, 5), int(11), rat(5, 6)];
    let mut samples = 0;
    for i in 0..50 {
        let f = random_polymatrix(&mut r);
        let chain = vanishing_chain(&f);
        for k in 0..chain.len() - 1 {
            ensure!(chain[k + 1].generator.divides(&chain[k].generator), "g_{} does not divide g_{k} (matrix {i})", k + 1);
        }
        for m in 1..=2 {
            ensure!(direct_sum_invariance(&f, m), "direct sum with I_{m} changes a locus (matrix {i})");
        }
        let mut pts: Vec<Rational> = chain.iter().flat_map(|l| l.generator.rational_roots()).collect();
        pts.extend(off_root.iter().filter(|t| chain.iter().all(|l| l.is_whole() || !l.contains_point(t))).cloned());
        pts.sort();
        pts.dedup();
        for t in &pts {
            let dim = kernel_at_point(&f, t).dim();
            for (k, l) in chain.iter().enumerate() {
                ensure!(l.contains_point(t) == (dim >= k), "V_{k} support disagrees at t = {t} (matrix {i})");
            }
            samples += 1;
        }
    }
    let (fam, bases) = degenerating_family();
    let w = [0, 1];
    let loc = family_vanishing_locus(&fam, &bases, &w, 1).unwrap();
    ensure!(!loc.generator.is_zero() && !loc.is_empty(), "family locus is trivial");
    ensure!(loc.generator.rational_roots() == vec![int(0)], "family locus is not supported at 0");
    ensure!(loc.generator.degree() == Some(loc.multiplicity(&int(0))), "family locus has other support");
    // Oracle: the only 2-minor, expanded by hand.
    let m = family_matrix(&fam, &bases, &w).unwrap();
    let det = &(&m[(0, 0)] * &m[(1, 1)]) - &(&m[(0, 1)] * &m[(1, 0)]);
    let oracle = det.order_at(&int(0)).unwrap();
    ensure!(loc.multiplicity(&int(0)) == oracle, "multiplicity {} vs oracle {oracle}", loc.multiplicity(&int(0)));
    ensure!(vanishing_locus(&m, 1) == loc, "family locus differs from the matrix locus");
    Ok(format!("50 matrices, {samples} sample points; family locus t^{oracle}"))
}

fn criterion_11() -> Outcome {
    let opts = Options { rho: Some((0, 1, 2, 2)), ..Options::default() };
    let mut runs = 0;
    for name in FIXTURE_NAMES {
        let doc = fixture_document(name).unwrap();
        let text = json::to_canonical(&doc);
        ensure!(json::to_canonical(&json::parse_document(&text).unwrap()) == text, "{name} does not round-trip");
        for cmd in COMMANDS.iter().filter(|c| **c != "fixtures") {
            let once = || match report::run(cmd, &doc, &opts) {
                Ok(out) => json::to_canonical(&report::report_value(cmd, name, &opts, &out)),
                Err(e) => json::to_canonical(&report::error_value(cmd, name, &e)),
            };
            ensure!(once() == once(), "{cmd} on {name} is not deterministic");
            runs += 1;
        }
    }
    Ok(format!("{runs} command/fixture pairs byte-identical across two runs"))
}

fn main() {
    let criteria: [(usize, fn() -> Outcome); 11] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
    ];
    let only: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for (n, f) in criteria {
        if only.is_some_and(|o| o != n) {
            continue;
        }
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match result {
            Ok(detail) => println!("criterion {n}: PASS ({detail})"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n}: FAIL ({detail})");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
