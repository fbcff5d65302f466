//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, Integer, One, Signed, Zero};

use super::rational::{binomial, int, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Poly::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn from_i64(cs: &[i64]) -> Self {
        Poly::new(cs.iter().map(|&c| int(c)).collect())
    }

    /// `(x - p)^n`.
    pub fn linear_power(p: &Rational, n: usize) -> Self {
        let base = Poly::new(vec![-p.clone(), Rational::one()]);
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = &acc * &base;
        }
        acc
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the end.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(&(Rational::one() / l)),
        }
    }

    /// Coefficient of `(x - p)^m` in the expansion of `self` around `p`.
    pub fn taylor_coeff(&self, p: &Rational, m: usize) -> Rational {
        let mut acc = Rational::zero();
        for (n, c) in self.coeffs.iter().enumerate().skip(m) {
            if c.is_zero() {
                continue;
            }
            let b = Rational::from_integer(binomial(n, m));
            acc += c * b * num::pow(p.clone(), n - m);
        }
        acc
    }

    /// Order of vanishing at `p`; `None` for the zero polynomial.
    pub fn order_at(&self, p: &Rational) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        (0..self.coeffs.len()).find(|&m| !self.taylor_coeff(p, m).is_zero())
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dl = d.leading().expect("division by the zero polynomial").clone();
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] / &dl;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    /// Exact quotient, if `d` divides `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    /// Monic gcd; the gcd of two zeros is zero.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// All rational roots, without multiplicity, in increasing order.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut roots = Vec::new();
        let mut p = self.clone();
        if p.coeff(0).is_zero() {
            roots.push(Rational::zero());
            let k = p.coeffs.iter().position(|c| !c.is_zero()).unwrap();
            p = Poly::new(p.coeffs[k..].to_vec());
        }
        if p.degree() == Some(0) {
            return roots;
        }
        // Clear denominators to an integer polynomial.
        let l = p
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = p
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .collect();
        let a0 = ints[0].abs();
        let an = ints.last().unwrap().abs();
        let dn = divisors(&a0);
        let dd = divisors(&an);
        let mut cands = Vec::new();
        for n in &dn {
            for d in &dd {
                let q = Rational::new(n.clone(), d.clone());
                cands.push(q.clone());
                cands.push(-q);
            }
        }
        cands.sort();
        cands.dedup();
        for c in cands {
            if p.eval(&c).is_zero() {
                roots.push(c);
            }
        }
        roots.sort();
        roots
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= *n {
        if (n % &i).is_zero() {
            out.push(i.clone());
            let j = n / &i;
            if j != i {
                out.push(j);
            }
        }
        i += 1;
    }
    out
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::rational::rat;

    #[test]
    fn degree_sentinel_and_trim() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::from_i64(&[1, 2, 0, 0]).degree(), Some(1));
    }

    #[test]
    fn division_and_gcd() {
        let a = Poly::from_i64(&[-1, 0, 1]); // x^2 - 1
        let b = Poly::from_i64(&[1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, Poly::from_i64(&[-1, 1]));
        assert!(r.is_zero());
        let g = Poly::from_i64(&[0, 0, 2]).gcd(&Poly::from_i64(&[0, 3]));
        assert_eq!(g, Poly::x());
        assert!(Poly::zero().gcd(&Poly::zero()).is_zero());
    }

    #[test]
    fn taylor_and_order() {
        // x^2 - x = (x-1) + (x-1)^2 around 1
        let p = Poly::from_i64(&[0, -1, 1]);
        assert_eq!(p.taylor_coeff(&int(1), 0), int(0));
        assert_eq!(p.taylor_coeff(&int(1), 1), int(1));
        assert_eq!(p.taylor_coeff(&int(1), 2), int(1));
        assert_eq!(p.order_at(&int(0)), Some(1));
        assert_eq!(Poly::linear_power(&rat(1, 2), 3).order_at(&rat(1, 2)), Some(3));
        assert_eq!(Poly::zero().order_at(&int(0)), None);
    }

    #[test]
    fn rational_roots_found() {
        // (2x - 1)(x + 3) x
        let p = &(&Poly::from_i64(&[-1, 2]) * &Poly::from_i64(&[3, 1])) * &Poly::x();
        assert_eq!(p.rational_roots(), vec![int(-3), int(0), rat(1, 2)]);
        assert!(Poly::from_i64(&[1, 0, 1]).rational_roots().is_empty());
    }
}
