//! Simple and constrained loci: witness search and verification.

use crate::degree_graph::{self, Multidegree};
use crate::error::Result;
use crate::exactlinalg::{Rational, Subspace};
use crate::genericity::{multiset_count, multisets, rado, sample_generic, SearchOptions, Verdict};

use super::eht::{kernel_at, EhtSeries};
use super::linked::{map_subspace, path_map_q, LinkedSeries, Variant};

/// Generators `(w_i, s_i)`.
pub type Witness = Vec<(Multidegree, Vec<Rational>)>;

fn path_mask(ls_cfg: &crate::degree_graph::DegreeConfig, from: &[i64], to: &[i64]) -> Result<Vec<bool>> {
    let p = degree_graph::minimal_path_ii(ls_cfg, from, to)?;
    Ok(p.multiset(ls_cfg.n()).iter().map(|&c| c > 0).collect())
}

/// Every `V_w` has the images of the generators as a basis.
pub fn verify_simple_witness(ls: &LinkedSeries, gens: &Witness) -> Result<bool> {
    if gens.len() != ls.k() {
        return Ok(false);
    }
    let cfg = &ls.bundle.cfg;
    for (wi, si) in gens {
        if !ls.spaces.get(wi).is_some_and(|s| s.contains(si)) {
            return Ok(false);
        }
    }
    for (w, vw) in &ls.spaces {
        let mut imgs = Vec::new();
        for (wi, si) in gens {
            let p = degree_graph::minimal_path_ii(cfg, wi, w)?;
            imgs.push(path_map_q(&ls.bundle, si, &p.multiset(cfg.n())));
        }
        let span = Subspace::from_vectors(vw.ambient(), imgs);
        if span != *vw {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Searches multisets of `bar-G_II` for generators; exact per support.
pub fn check_simple(ls: &LinkedSeries, opts: SearchOptions) -> Result<Verdict<Witness>> {
    if ls.variant != Variant::II {
        return crate::error::precondition("simplicity is defined for type-II series");
    }
    let cfg = &ls.bundle.cfg;
    let bar: Vec<Multidegree> = ls.spaces.keys().cloned().collect();
    let k = ls.k();
    // images[i][j]: f_{P(bar_i, bar_j)}(V_{bar_i}).
    let mut images = Vec::with_capacity(bar.len());
    for wi in &bar {
        let mut row = Vec::with_capacity(bar.len());
        for w in &bar {
            row.push(map_subspace(&ls.bundle, &ls.spaces[wi], &path_mask(cfg, wi, w)?));
        }
        images.push(row);
    }
    let total = multiset_count(bar.len(), k);
    for (count, support) in multisets(bar.len(), k).enumerate() {
        if count >= opts.budget {
            return Ok(Verdict::Undecided);
        }
        let ok = (0..bar.len()).all(|j| {
            let sets: Vec<Subspace> = support.iter().map(|&i| images[i][j].clone()).collect();
            rado(&sets)
        });
        if !ok {
            continue;
        }
        let sources: Vec<Subspace> = support.iter().map(|&i| ls.spaces[&bar[i]].clone()).collect();
        let picked = sample_generic(&sources, opts.seed, |pick| {
            let gens: Witness = support.iter().zip(pick).map(|(&i, s)| (bar[i].clone(), s.clone())).collect();
            verify_simple_witness(ls, &gens).unwrap_or(false)
        });
        if let Some(pick) = picked {
            return Ok(Verdict::Found(support.iter().zip(pick).map(|(&i, s)| (bar[i].clone(), s)).collect()));
        }
    }
    debug_assert!(total <= opts.budget);
    Ok(Verdict::Refuted)
}

/// Exact kernel dimension `k` at each `w_i`, and bases in every `V^v`.
pub fn verify_constrained_witness(s: &EhtSeries, wit: &Witness) -> Result<bool> {
    let k = s.k();
    if wit.len() != k {
        return Ok(false);
    }
    for (w, v) in wit {
        if !degree_graph::in_bar_gii(s.cfg(), w) {
            return Ok(false);
        }
        let ker = kernel_at(s, w)?;
        if ker.dim() != k || !ker.contains(v) {
            return Ok(false);
        }
    }
    let lay = s.bundle.layout_q();
    for v in 0..s.bundle.n() {
        let range = lay.component(v);
        let imgs: Vec<Vec<Rational>> = wit.iter().map(|(_, x)| x[range.clone()].to_vec()).collect();
        if Subspace::from_vectors(range.len(), imgs) != s.spaces[v] {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn check_constrained(s: &EhtSeries, opts: SearchOptions) -> Result<Verdict<Witness>> {
    let k = s.k();
    let lay = s.bundle.layout_q();
    let mut pool: Vec<(Multidegree, Subspace)> = Vec::new();
    for w in degree_graph::enumerate_bar_gii(s.cfg()) {
        let ker = kernel_at(s, &w)?;
        if ker.dim() == k {
            pool.push((w, ker));
        }
    }
    let n = s.bundle.n();
    let proj: Vec<Vec<Subspace>> =
        pool.iter().map(|(_, ker)| (0..n).map(|v| ker.project(lay.component(v))).collect()).collect();
    for (count, support) in multisets(pool.len(), k).enumerate() {
        if count >= opts.budget {
            return Ok(Verdict::Undecided);
        }
        let ok = (0..n).all(|v| {
            let sets: Vec<Subspace> = support.iter().map(|&i| proj[i][v].clone()).collect();
            rado(&sets)
        });
        if !ok {
            continue;
        }
        let sources: Vec<Subspace> = support.iter().map(|&i| pool[i].1.clone()).collect();
        let picked = sample_generic(&sources, opts.seed, |pick| {
            let wit: Witness = support.iter().zip(pick).map(|(&i, x)| (pool[i].0.clone(), x.clone())).collect();
            verify_constrained_witness(s, &wit).unwrap_or(false)
        });
        if let Some(pick) = picked {
            return Ok(Verdict::Found(support.iter().zip(pick).map(|(&i, x)| (pool[i].0.clone(), x)).collect()));
        }
    }
    Ok(Verdict::Refuted)
}
