//! Orders of vanishing on a single rational component.

use num::Zero;

use crate::exactlinalg::rational::binomial;
use crate::exactlinalg::{MatQ, Poly, Rational, Subspace};

/// Sections of `⊕_j O(c_j)` on one component, as concatenated coefficient
/// blocks of lengths `c_j + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentSpace {
    pub splits: Vec<i64>,
}

impl ComponentSpace {
    pub fn new(splits: Vec<i64>) -> Self {
        ComponentSpace { splits }
    }

    pub fn line(c: i64) -> Self {
        ComponentSpace { splits: vec![c] }
    }

    pub fn dim(&self) -> usize {
        self.splits.iter().map(|&c| (c + 1).max(0) as usize).sum()
    }

    pub fn rank(&self) -> usize {
        self.splits.len()
    }

    pub fn block(&self, j: usize) -> std::ops::Range<usize> {
        let start: usize = self.splits[..j].iter().map(|&c| (c + 1).max(0) as usize).sum();
        start..start + (self.splits[j] + 1).max(0) as usize
    }

    pub fn max_degree(&self) -> i64 {
        self.splits.iter().copied().max().unwrap_or(0)
    }

    pub fn polys(&self, v: &[Rational]) -> Vec<Poly> {
        (0..self.rank()).map(|j| Poly::new(v[self.block(j)].to_vec())).collect()
    }

    pub fn from_polys(&self, ps: &[Poly]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (j, p) in ps.iter().enumerate() {
            for (c, x) in self.block(j).zip(p.coeffs()) {
                out[c] = x.clone();
            }
        }
        out
    }

    /// Row functional: Taylor coefficient of order `m` at `p` in coordinate `j`.
    pub fn taylor_row(&self, p: &Rational, j: usize, m: usize) -> Vec<Rational> {
        let mut row = vec![Rational::zero(); self.dim()];
        for (n, c) in self.block(j).enumerate() {
            if n >= m {
                row[c] = Rational::from_integer(binomial(n, m)) * num::pow(p.clone(), n - m);
            }
        }
        row
    }

    /// The `r` functionals reading the order-`m` Taylor coefficients at `p`.
    pub fn leading_map(&self, p: &Rational, m: usize) -> MatQ {
        MatQ::from_rows_with_cols((0..self.rank()).map(|j| self.taylor_row(p, j, m)).collect(), self.dim())
    }

    /// Rows cutting out `ord_p ≥ a`.
    pub fn order_rows(&self, p: &Rational, a: usize) -> Vec<Vec<Rational>> {
        let mut rows = Vec::new();
        for j in 0..self.rank() {
            let len = self.block(j).len();
            for m in 0..a.min(len) {
                rows.push(self.taylor_row(p, j, m));
            }
        }
        rows
    }

    /// `V(-Σ a_i p_i)`.
    pub fn vanishing_subspace(&self, v: &Subspace, conds: &[(&Rational, usize)]) -> Subspace {
        let mut rows = Vec::new();
        for &(p, a) in conds {
            rows.extend(self.order_rows(p, a));
        }
        if rows.is_empty() {
            return v.clone();
        }
        let cut = MatQ::from_rows_with_cols(rows, self.dim()).kernel();
        v.intersection(&cut)
    }

    /// Order of vanishing of a vector of polynomials (minimum over coordinates).
    pub fn order_at(&self, v: &[Rational], p: &Rational) -> Option<usize> {
        self.polys(v).iter().filter_map(|q| q.order_at(p)).min()
    }
}

/// Vanishing sequence `a_1 ≤ … ≤ a_k` of `V` at `p`.
pub fn vanishing_sequence(space: &ComponentSpace, v: &Subspace, p: &Rational) -> Vec<usize> {
    let top = (space.max_degree() + 1).max(0) as usize;
    let dims: Vec<usize> = (0..=top + 1).map(|a| space.vanishing_subspace(v, &[(p, a)]).dim()).collect();
    let mut seq = Vec::with_capacity(v.dim());
    for a in 0..=top {
        for _ in 0..dims[a] - dims[a + 1] {
            seq.push(a);
        }
    }
    seq
}
