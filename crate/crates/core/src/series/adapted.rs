//! Bases adapted to two points at once.
//!
//! With `a_1 ≤ … ≤ a_k` the vanishing sequence at `P` and `a'_1 ≤ … ≤ a'_k`
//! the one at `Q`, `dim V(-aP-bQ)` is at least the number of `i` with
//! `a_i ≥ a` and `a'_{k+1-i} ≥ b`. A basis with `ord_P s_i = a_i` and
//! `ord_Q s_i = a'_{k+1-i}` exists exactly when all of these are equalities.

use crate::exactlinalg::{Rational, Subspace};

use super::vanishing::{vanishing_sequence, ComponentSpace};

/// `V(-aP-bQ)`.
pub fn twisted(space: &ComponentSpace, v: &Subspace, p: &Rational, q: &Rational, a: usize, b: usize) -> Subspace {
    if p == q {
        return space.vanishing_subspace(v, &[(p, a.max(b))]);
    }
    space.vanishing_subspace(v, &[(p, a), (q, b)])
}

/// Right-hand side of the inequality.
pub fn expected_count(seq_p: &[usize], seq_q: &[usize], a: usize, b: usize) -> usize {
    let k = seq_p.len();
    (0..k).filter(|&i| seq_p[i] >= a && seq_q[k - 1 - i] >= b).count()
}

fn box_bound(space: &ComponentSpace) -> usize {
    (space.max_degree() + 1).max(0) as usize
}

pub fn adaptable(space: &ComponentSpace, v: &Subspace, p: &Rational, q: &Rational) -> bool {
    let sp = vanishing_sequence(space, v, p);
    let sq = vanishing_sequence(space, v, q);
    let top = box_bound(space);
    (0..=top).all(|a| (0..=top).all(|b| twisted(space, v, p, q, a, b).dim() == expected_count(&sp, &sq, a, b)))
}

/// Descending induction over `(a, b)`, taking at each step a complement of
/// `V(-(a+1)P-bQ) + V(-aP-(b+1)Q)` inside `V(-aP-bQ)`.
pub fn adapted_basis(space: &ComponentSpace, v: &Subspace, p: &Rational, q: &Rational) -> Option<Vec<Vec<Rational>>> {
    let top = box_bound(space);
    let amb = v.ambient();
    let mut chosen: Vec<Vec<Rational>> = Vec::new();
    for a in (0..=top).rev() {
        for b in (0..=top).rev() {
            let here = twisted(space, v, p, q, a, b);
            let below = twisted(space, v, p, q, a + 1, b).sum(&twisted(space, v, p, q, a, b + 1));
            chosen.extend(below.extension_from(here.basis()));
        }
    }
    if chosen.len() != v.dim() || Subspace::from_vectors(amb, chosen.clone()).dim() != v.dim() {
        return None;
    }
    let key = |s: &Vec<Rational>| {
        let op = space.order_at(s, p).unwrap_or(usize::MAX);
        let oq = space.order_at(s, q).unwrap_or(usize::MAX);
        (op, std::cmp::Reverse(oq))
    };
    chosen.sort_by_key(key);
    is_adapted_basis(space, v, p, q, &chosen).then_some(chosen)
}

/// Independent checker: a basis of `V` with the prescribed orders at both points.
pub fn is_adapted_basis(space: &ComponentSpace, v: &Subspace, p: &Rational, q: &Rational, basis: &[Vec<Rational>]) -> bool {
    let k = v.dim();
    if basis.len() != k || basis.iter().any(|s| !v.contains(s)) {
        return false;
    }
    if Subspace::from_vectors(v.ambient(), basis.to_vec()).dim() != k {
        return false;
    }
    let sp = vanishing_sequence(space, v, p);
    let sq = vanishing_sequence(space, v, q);
    (0..k).all(|i| space.order_at(&basis[i], p) == Some(sp[i]) && space.order_at(&basis[i], q) == Some(sq[k - 1 - i]))
}
