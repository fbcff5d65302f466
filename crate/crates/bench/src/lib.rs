//! Deterministic inputs for the benchmarks in `benches/`.

use lls_core::exactlinalg::int;
use lls_core::genericity::rng;
use lls_core::{MatQ, Poly, PolyMatrix};
use rand::Rng;

/// An `n × m` integer matrix with entries in `[-5, 5]`.
pub fn integer_matrix(seed: u64, n: usize, m: usize) -> MatQ {
    let mut r = rng(seed);
    MatQ::from_rows((0..n).map(|_| (0..m).map(|_| int(r.gen_range(-5..=5))).collect()).collect())
}

/// A square matrix over `Q[t]` with entries of degree at most 2.
pub fn poly_matrix(seed: u64, n: usize) -> PolyMatrix {
    let mut r = rng(seed);
    let rows = (0..n)
        .map(|_| (0..n).map(|_| Poly::from_i64(&[r.gen_range(-2..=2), r.gen_range(-2..=2), r.gen_range(-1..=1)])).collect())
        .collect();
    PolyMatrix::from_rows(rows, n)
}
