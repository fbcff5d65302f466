//! Matrices over `Q[t]`.

use num::One;

use super::matrix::MatQ;
use super::poly::Poly;
use super::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, entries: vec![Poly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Poly::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>, cols: usize) -> Self {
        let cols = rows.first().map_or(cols, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        let n = rows.len();
        PolyMatrix { rows: n, cols, entries: rows.into_iter().flatten().collect() }
    }

    pub fn from_constant(m: &MatQ) -> Self {
        let mut p = Self::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                p[(i, j)] = Poly::constant(m[(i, j)].clone());
            }
        }
        p
    }

    pub fn diag(entries: &[Poly]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn to_rows(&self) -> Vec<Vec<Poly>> {
        (0..self.rows)
            .map(|i| self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn eval(&self, t: &Rational) -> MatQ {
        let mut m = MatQ::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].eval(t);
            }
        }
        m
    }

    pub fn mul(&self, o: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out = PolyMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = Poly::zero();
                for k in 0..self.cols {
                    acc = &acc + &(&self[(i, k)] * &o[(k, j)]);
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = PolyMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn block_diag(&self, o: &PolyMatrix) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(self.rows + o.rows, self.cols + o.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, o);
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &PolyMatrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
    }

    /// Submatrix on the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let data = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| self[(i, j)].clone()).collect())
            .collect();
        PolyMatrix::from_rows(data, cols.len())
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn det(&self) -> Poly {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Poly::one();
        }
        let mut m = self.to_rows();
        let mut sign = Rational::one();
        let mut prev = Poly::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return Poly::zero();
                };
                m.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
            }
            prev = m[k][k].clone();
        }
        m[n - 1][n - 1].scale(&sign)
    }

    /// All `size × size` minors; empty when `size` exceeds either dimension.
    pub fn minors(&self, size: usize) -> Vec<Poly> {
        if size > self.rows || size > self.cols {
            return Vec::new();
        }
        let rs = combinations(self.rows, size);
        let cs = combinations(self.cols, size);
        let mut out = Vec::with_capacity(rs.len() * cs.len());
        for r in &rs {
            for c in &cs {
                out.push(self.select(r, c).det());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }
}

/// Monic gcd of a list; zero for an empty list or all-zero input.
pub fn gcd_all(ps: &[Poly]) -> Poly {
    let mut g = Poly::zero();
    for p in ps {
        g = g.gcd(p);
        if g.degree() == Some(0) {
            break;
        }
    }
    g
}

/// Increasing `k`-subsets of `0..n`.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

impl std::ops::Index<(usize, usize)> for PolyMatrix {
    type Output = Poly;
    fn index(&self, (i, j): (usize, usize)) -> &Poly {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for PolyMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Poly {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.entries[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::rational::int;

    #[test]
    fn minors_of_diag() {
        let m = PolyMatrix::diag(&[Poly::x(), Poly::x()]);
        assert_eq!(m.minors(2), vec![Poly::from_i64(&[0, 0, 1])]);
        assert!(m.minors(3).is_empty());
        assert_eq!(m.minors(1).len(), 4);
    }

    #[test]
    fn bareiss_matches_evaluation() {
        let m = PolyMatrix::from_rows(
            vec![
                vec![Poly::from_i64(&[0, 1]), Poly::from_i64(&[1]), Poly::zero()],
                vec![Poly::from_i64(&[2]), Poly::from_i64(&[1, 1]), Poly::from_i64(&[0, 0, 1])],
                vec![Poly::zero(), Poly::from_i64(&[3]), Poly::from_i64(&[1, 0, 1])],
            ],
            3,
        );
        let d = m.det();
        for t in -3..4 {
            let t = int(t);
            assert_eq!(d.eval(&t), m.eval(&t).det());
        }
    }

    #[test]
    fn combination_counts() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }
}
