//! Existence of generic choices, decided exactly, then materialized by
//! seeded random sampling.
//!
//! Given subspaces `U_1, …, U_k`, vectors `u_i ∈ U_i` that are linearly
//! independent exist iff `dim Σ_{i∈I} U_i ≥ |I|` for every subset `I`
//! (Rado's theorem for linear matroids). When the `u_i` are images of
//! free choices `s_i`, independence is a nonempty Zariski-open condition in
//! the `s_i`, and finitely many such conditions hold simultaneously for a
//! random integer choice with high probability.

use num::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactlinalg::{combine, Rational, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of candidate supports examined.
    pub budget: usize,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: 20_000, seed: 7 }
    }
}

/// Outcome of an existential search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W> {
    Found(W),
    /// The full search space was examined.
    Refuted,
    /// The budget ran out first.
    Undecided,
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Found(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Found(_) => "true",
            Verdict::Refuted => "false",
            Verdict::Undecided => "undecided within budget",
        }
    }
}

/// Whether independent `u_i ∈ sets[i]` exist.
pub fn rado(sets: &[Subspace]) -> bool {
    let k = sets.len();
    if k == 0 {
        return true;
    }
    if k > 20 {
        panic!("too many sets for subset enumeration");
    }
    let amb = sets[0].ambient();
    for mask in 1u32..(1 << k) {
        let mut sum = Subspace::zero(amb);
        for (i, s) in sets.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sum = sum.sum(s);
            }
        }
        if sum.dim() < mask.count_ones() as usize {
            return false;
        }
    }
    true
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random integer combination of the basis of `s`, coefficients in `[-bound, bound]`.
pub fn random_element(s: &Subspace, rng: &mut impl Rng, bound: i64) -> Vec<Rational> {
    let cs: Vec<Rational> = (0..s.dim())
        .map(|_| Rational::from_integer(BigInt::from(rng.gen_range(-bound..=bound))))
        .collect();
    combine(s.basis(), &cs, s.ambient())
}

/// Samples one element per source until `accept` holds, widening the range on failure.
pub fn sample_generic(
    sources: &[Subspace],
    seed: u64,
    mut accept: impl FnMut(&[Vec<Rational>]) -> bool,
) -> Option<Vec<Vec<Rational>>> {
    let mut r = rng(seed);
    for attempt in 0..64 {
        let bound = 3 + 4 * attempt as i64;
        let pick: Vec<Vec<Rational>> = sources.iter().map(|s| random_element(s, &mut r, bound)).collect();
        if accept(&pick) {
            return Some(pick);
        }
    }
    None
}

/// Multisets of size `k` from `0..n` in lexicographic order.
pub fn multisets(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = if n == 0 && k > 0 { None } else { Some(vec![0; k]) };
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if next[i] + 1 < n {
                let val = next[i] + 1;
                for x in next[i..].iter_mut() {
                    *x = val;
                }
                cur = Some(next);
                break;
            }
        }
        Some(out)
    })
}

/// `C(n + k - 1, k)`, saturating.
pub fn multiset_count(n: usize, k: usize) -> usize {
    if n == 0 {
        return usize::from(k == 0);
    }
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (n as u128 + i) / (i + 1);
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}
