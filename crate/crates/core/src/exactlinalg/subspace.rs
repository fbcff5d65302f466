//! Linear subspaces of `Q^n` in canonical reduced echelon form.

use num::Zero;

use super::matrix::MatQ;
use super::rational::Rational;

/// A subspace of `Q^ambient`. The basis is the list of nonzero rows of the
/// reduced row echelon form, so structural equality is subspace equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_vectors(ambient, MatQ::identity(ambient).to_rows())
    }

    pub fn from_vectors(ambient: usize, vectors: Vec<Vec<Rational>>) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        let m = MatQ::from_rows_with_cols(vectors, ambient);
        assert_eq!(m.cols(), ambient, "vector length differs from ambient dimension");
        let (e, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| e.row(i).to_vec()).collect();
        Subspace { ambient, basis }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Pivot column of each basis row.
    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|r| r.iter().position(|x| !x.is_zero()).unwrap())
            .collect()
    }

    /// Matrix whose rows are the basis vectors.
    pub fn basis_matrix(&self) -> MatQ {
        MatQ::from_rows_with_cols(self.basis.clone(), self.ambient)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut r = v.to_vec();
        for (row, p) in self.basis.iter().zip(self.pivots()) {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                *x -= &f * y;
            }
        }
        r.iter().all(Zero::is_zero)
    }

    pub fn contains_subspace(&self, o: &Subspace) -> bool {
        o.basis.iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots().iter().map(|&p| v[p].clone()).collect())
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        assert_eq!(self.ambient, o.ambient);
        let mut vs = self.basis.clone();
        vs.extend(o.basis.iter().cloned());
        Subspace::from_vectors(self.ambient, vs)
    }

    pub fn intersection(&self, o: &Subspace) -> Subspace {
        assert_eq!(self.ambient, o.ambient);
        if self.is_zero() || o.is_zero() {
            return Subspace::zero(self.ambient);
        }
        // Solve a·A = b·B via the kernel of [A; -B]^T.
        let a = self.basis_matrix();
        let b = o.basis_matrix().scale(&-Rational::from_integer(1.into()));
        let k = a.vstack(&b).transpose().kernel();
        let n = self.dim();
        let vs = k
            .basis
            .iter()
            .map(|c| combine(&self.basis, &c[..n], self.ambient))
            .collect();
        Subspace::from_vectors(self.ambient, vs)
    }

    /// Vectors orthogonal to the subspace under the standard pairing.
    pub fn annihilator(&self) -> Subspace {
        if self.is_zero() {
            return Subspace::full(self.ambient);
        }
        self.basis_matrix().kernel()
    }

    /// Image under `m` (columns act on column vectors).
    pub fn map(&self, m: &MatQ) -> Subspace {
        assert_eq!(m.cols(), self.ambient);
        Subspace::from_vectors(m.rows(), self.basis.iter().map(|v| m.mul_vec(v)).collect())
    }

    /// `{ x in self : m x in target }`.
    pub fn preimage_within(&self, m: &MatQ, target: &Subspace) -> Subspace {
        assert_eq!(m.rows(), target.ambient);
        if self.is_zero() {
            return self.clone();
        }
        let ann = target.annihilator();
        let images: Vec<Vec<Rational>> = self.basis.iter().map(|v| m.mul_vec(v)).collect();
        // Constraint matrix: rows = annihilator vectors, cols = basis coefficients.
        let rows: Vec<Vec<Rational>> = ann
            .basis
            .iter()
            .map(|a| images.iter().map(|im| dot(a, im)).collect())
            .collect();
        let coeffs = MatQ::from_rows_with_cols(rows, self.dim()).kernel();
        let vs = coeffs.basis.iter().map(|c| combine(&self.basis, c, self.ambient)).collect();
        Subspace::from_vectors(self.ambient, vs)
    }

    /// Vectors from `candidates` (in order) that extend `self` to a basis of
    /// `self + span(candidates)`.
    pub fn extension_from(&self, candidates: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
        let mut cur = self.clone();
        let mut out = Vec::new();
        for c in candidates {
            if !cur.contains(c) {
                cur = cur.sum(&Subspace::from_vectors(self.ambient, vec![c.clone()]));
                out.push(c.clone());
            }
        }
        out
    }

    /// A complement of `self` inside `sup`, as a list of vectors.
    pub fn complement_in(&self, sup: &Subspace) -> Vec<Vec<Rational>> {
        self.extension_from(&sup.basis)
    }

    /// Coordinate projection onto the index range `range`.
    pub fn project(&self, range: std::ops::Range<usize>) -> Subspace {
        let n = range.len();
        Subspace::from_vectors(n, self.basis.iter().map(|v| v[range.clone()].to_vec()).collect())
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `Σ c_i v_i`.
pub fn combine(vs: &[Vec<Rational>], cs: &[Rational], ambient: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); ambient];
    for (v, c) in vs.iter().zip(cs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o += c * x;
        }
    }
    out
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Rank of a list of vectors.
pub fn rank_of(ambient: usize, vs: &[Vec<Rational>]) -> usize {
    Subspace::from_vectors(ambient, vs.to_vec()).dim()
}
