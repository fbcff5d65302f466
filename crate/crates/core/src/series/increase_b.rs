//! Enlarging `b` and `d_•` without changing the underlying data.
//!
//! A target `(b', d'_•)` is reached by single steps: `b + 1`, and `d_v + r`
//! at every vertex except one vertex `v0`. Multidegrees in `G_II` are the
//! same before and after; only the extremal multidegrees and the window
//! `bar-G_II` move.

use std::collections::BTreeMap;

use crate::curve_model::{increase_b_step, toward_edges, CurveBundle};
use crate::degree_graph;
use crate::error::{precondition, Error, Result};
use crate::exactlinalg::{Poly, Subspace};

use super::eht::EhtSeries;
use super::linked::{LinkedSeries, Variant};

/// The vertices `v0` of a sequence of single steps from the bundle's
/// configuration to `(b2, dv2)`.
pub fn plan_steps(bundle: &CurveBundle, b2: i64, dv2: &[i64]) -> Result<Vec<usize>> {
    let cfg = &bundle.cfg;
    let n = cfg.n();
    if dv2.len() != n {
        return precondition("target degrees have the wrong length");
    }
    if b2 < cfg.b {
        return precondition("b can only increase");
    }
    let edges = cfg.graph.num_edges() as i64;
    if dv2.iter().sum::<i64>() - edges * cfg.r * b2 != cfg.d {
        return precondition("target degrees do not sum to d");
    }
    for v in 0..n {
        let (lo, hi) = (cfg.dv[v], cfg.dv[v] + cfg.r * (b2 - cfg.b));
        if (dv2[v] - lo).rem_euclid(cfg.r) != 0 || dv2[v] < lo || dv2[v] > hi {
            return precondition(format!("target degree at vertex {v} is out of range"));
        }
    }
    let mut dv = cfg.dv.clone();
    let mut b = cfg.b;
    let mut steps = Vec::new();
    while b < b2 {
        let v0 = (0..n)
            .find(|&v| dv2[v] < dv[v] + cfg.r * (b2 - b))
            .ok_or_else(|| Error::Internal("no admissible step vertex".into()))?;
        for (v, x) in dv.iter_mut().enumerate() {
            if v != v0 {
                *x += cfg.r;
            }
        }
        b += 1;
        steps.push(v0);
    }
    debug_assert_eq!(dv, dv2);
    Ok(steps)
}

pub fn increase_b_bundle(bundle: &CurveBundle, b2: i64, dv2: &[i64]) -> Result<CurveBundle> {
    plan_steps(bundle, b2, dv2)?.into_iter().try_fold(bundle.clone(), |acc, v0| increase_b_step(&acc, v0))
}

/// One step on EHT data: `V^v · (x - p)` with `p` the node towards `v0`.
pub fn increase_b_eht_step(s: &EhtSeries, v0: usize) -> Result<EhtSeries> {
    let nb = increase_b_step(&s.bundle, v0)?;
    let toward = toward_edges(&s.bundle, v0);
    let mut spaces = Vec::with_capacity(s.spaces.len());
    for (v, sp) in s.spaces.iter().enumerate() {
        let Some(e) = toward[v] else {
            spaces.push(sp.clone());
            continue;
        };
        let (old, new) = (s.component(v), super::eht::component_space(&nb, v));
        let fac = Poly::linear_power(s.bundle.node(e, v), 1);
        let vecs = sp
            .basis()
            .iter()
            .map(|x| new.from_polys(&old.polys(x).iter().map(|p| p * &fac).collect::<Vec<_>>()))
            .collect();
        spaces.push(Subspace::from_vectors(new.dim(), vecs));
    }
    EhtSeries::new(nb, spaces)
}

pub fn increase_b_eht(s: &EhtSeries, b2: i64, dv2: &[i64]) -> Result<EhtSeries> {
    plan_steps(&s.bundle, b2, dv2)?.into_iter().try_fold(s.clone(), |acc, v0| increase_b_eht_step(&acc, v0))
}

/// One step on a type-II series. Reduced coordinates do not change, so the
/// new window is filled by extending the old series.
pub fn increase_b_linked_step(ls: &LinkedSeries, v0: usize) -> Result<LinkedSeries> {
    if ls.variant != Variant::II {
        return precondition("only type-II series are re-indexed");
    }
    let nb = increase_b_step(&ls.bundle, v0)?;
    let amb = nb.layout_q().dim();
    let mut spaces = BTreeMap::new();
    for w in degree_graph::enumerate_bar_gii(&nb.cfg) {
        let old = super::linked::extend_from_bar(ls, &w)?;
        let vecs = old.basis().iter().map(|g| nb.g_to_q(&w, g)).collect::<Result<Vec<_>>>()?;
        spaces.insert(w, Subspace::from_vectors(amb, vecs));
    }
    LinkedSeries::new(nb, Variant::II, spaces)
}

pub fn increase_b_linked(ls: &LinkedSeries, b2: i64, dv2: &[i64]) -> Result<LinkedSeries> {
    plan_steps(&ls.bundle, b2, dv2)?.into_iter().try_fold(ls.clone(), |acc, v0| increase_b_linked_step(&acc, v0))
}

/// A target `(b', d'_•)` at which condition (I) holds: with `N` one more
/// than the largest split degree, `b' = b + |V|(N - b - 1)` and
/// `d'_v = d_v + r|E|(N - b - 1)`.
pub fn condition_i_target(bundle: &CurveBundle) -> (i64, Vec<i64>) {
    let cfg = &bundle.cfg;
    let big_n = bundle.max_split() + 1;
    if cfg.b + 1 >= big_n {
        return (cfg.b, cfg.dv.clone());
    }
    let m = big_n - cfg.b - 1;
    let nv = cfg.n() as i64;
    let ne = cfg.graph.num_edges() as i64;
    (cfg.b + nv * m, cfg.dv.iter().map(|d| d + cfg.r * ne * m).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::series::eht::{check_eht_kernel_unchecked, check_refined_unchecked};
    use crate::series::linked::{check_linked, forgetful_to_eht};

    #[test]
    fn same_b_is_identity() {
        let ls = fixtures::bad_compare_linked(0);
        let dv = ls.bundle.cfg.dv.clone();
        assert!(plan_steps(&ls.bundle, 1, &dv).unwrap().is_empty());
        assert_eq!(increase_b_linked(&ls, 1, &dv).unwrap(), ls);
    }

    #[test]
    fn hypotheses_are_enforced() {
        let b = fixtures::bad_compare_bundle();
        assert!(plan_steps(&b, 2, &[3, 2, 1]).is_err());
        assert!(plan_steps(&b, 2, &[1, 2, 1]).is_err());
        assert!(plan_steps(&b, 0, &[1, 2, 1]).is_err());
    }

    #[test]
    fn single_step_on_the_example() {
        for c in [0, 1] {
            let ls = fixtures::bad_compare_linked(c);
            let big = increase_b_linked(&ls, 2, &[2, 2, 2]).unwrap();
            assert_eq!(big.bundle.cfg.b, 2);
            assert!(big.bundle.condition_i_holds());
            assert!(check_linked(&big).unwrap());
            let eht = increase_b_eht(&forgetful_to_eht(&ls).unwrap(), 2, &[2, 2, 2]).unwrap();
            assert_eq!(forgetful_to_eht(&big).unwrap(), eht);
            assert!(check_eht_kernel_unchecked(&eht).unwrap());
            assert!(check_refined_unchecked(&eht));
            // The old window sits inside the new one with the same spaces.
            for (w, s) in &ls.spaces {
                let g: Vec<_> = s.basis().iter().map(|x| ls.bundle.q_to_g(w, x).unwrap().unwrap()).collect();
                let lifted: Vec<_> = g.iter().map(|x| big.bundle.g_to_q(w, x).unwrap()).collect();
                assert_eq!(Subspace::from_vectors(big.bundle.layout_q().dim(), lifted), big.spaces[w]);
            }
        }
    }

    #[test]
    fn target_realizes_condition_i() {
        let b = fixtures::bad_compare_bundle();
        assert!(!b.condition_i_holds());
        let (b2, dv2) = condition_i_target(&b);
        assert_eq!((b2, dv2.clone()), (4, vec![3, 4, 3]));
        assert!(increase_b_bundle(&b, b2, &dv2).unwrap().condition_i_holds());
        let ls = increase_b_linked(&fixtures::bad_compare_linked(1), b2, &dv2).unwrap();
        assert!(check_linked(&ls).unwrap());
    }
}
