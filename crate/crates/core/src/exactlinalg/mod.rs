//! Exact arithmetic over the rationals: polynomials, matrices, subspaces, flags.

pub mod flag;
pub mod matrix;
pub mod poly;
pub mod polymatrix;
pub mod rational;
pub mod subspace;

pub use flag::{flag_compatible_basis, is_flag_compatible, Flag};
pub use matrix::MatQ;
pub use poly::Poly;
pub use polymatrix::{combinations, gcd_all, PolyMatrix};
pub use rational::{format_rational, int, parse_rational, rat, Rational};
pub use subspace::{combine, dot, is_zero_vec, Subspace};

/// All `size × size` minors of `m`.
pub fn minors(m: &PolyMatrix, size: usize) -> Vec<Poly> {
    m.minors(size)
}

pub fn kernel(m: &MatQ) -> Subspace {
    m.kernel()
}

pub fn rank(m: &MatQ) -> usize {
    m.rank()
}

pub fn echelonize(m: &MatQ) -> MatQ {
    m.echelonize()
}
