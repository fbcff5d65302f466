//! Complete flags and bases compatible with two flags at once.

use crate::error::{precondition, Result};

use super::rational::Rational;
use super::subspace::Subspace;

/// A complete flag `0 = U_0 ⊂ U_1 ⊂ … ⊂ U_d = Q^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flag {
    members: Vec<Subspace>,
}

impl Flag {
    pub fn new(members: Vec<Subspace>) -> Result<Self> {
        let Some(d) = members.len().checked_sub(1) else {
            return precondition("a flag needs at least U_0");
        };
        for (i, m) in members.iter().enumerate() {
            if m.ambient() != d || m.dim() != i {
                return precondition(format!("flag member {i} has the wrong dimension"));
            }
            if i > 0 && !m.contains_subspace(&members[i - 1]) {
                return precondition(format!("flag member {} not contained in {i}", i - 1));
            }
        }
        Ok(Flag { members })
    }

    /// The flag spanned by successive prefixes of a basis.
    pub fn from_basis(basis: &[Vec<Rational>]) -> Result<Self> {
        let d = basis.len();
        let members = (0..=d).map(|i| Subspace::from_vectors(d, basis[..i].to_vec())).collect();
        Flag::new(members)
    }

    pub fn ambient(&self) -> usize {
        self.members.len() - 1
    }

    pub fn members(&self) -> &[Subspace] {
        &self.members
    }
}

/// A basis in which every member of both flags is spanned by a subset.
///
/// Peels off the hyperplane `U_{d-1}`: restricting `W_•` to it gives a
/// flag once the unique index where the restriction stalls is dropped, the
/// recursion handles the hyperplane, and one vector of `W_{i0+1}` outside it
/// completes the basis.
pub fn flag_compatible_basis(u: &Flag, w: &Flag) -> Result<Vec<Vec<Rational>>> {
    if u.ambient() != w.ambient() {
        return precondition("flags live in different dimensions");
    }
    Ok(fcb(u.members(), w.members()))
}

fn fcb(u: &[Subspace], w: &[Subspace]) -> Vec<Vec<Rational>> {
    let d = u.len() - 1;
    if d == 0 {
        return Vec::new();
    }
    let top = &u[d - 1];
    let cut: Vec<Subspace> = w.iter().map(|wi| wi.intersection(top)).collect();
    let i0 = (0..d)
        .find(|&i| cut[i].dim() == cut[i + 1].dim())
        .expect("a restricted flag always stalls once");
    let w_restricted: Vec<Subspace> = (0..d)
        .map(|i| if i <= i0 { cut[i].clone() } else { cut[i + 1].clone() })
        .collect();
    let mut basis = fcb(&u[..d], &w_restricted);
    let extra = w[i0 + 1]
        .basis()
        .iter()
        .find(|v| !top.contains(v))
        .expect("W_{i0+1} is not inside the hyperplane")
        .clone();
    basis.push(extra);
    basis
}

/// Independent check: each flag member is spanned by the basis vectors it contains.
pub fn is_flag_compatible(basis: &[Vec<Rational>], flags: &[&Flag]) -> bool {
    let Some(f0) = flags.first() else { return true };
    let d = f0.ambient();
    if basis.len() != d || Subspace::from_vectors(d, basis.to_vec()).dim() != d {
        return false;
    }
    flags.iter().all(|f| {
        f.members().iter().all(|m| {
            let inside: Vec<Vec<Rational>> =
                basis.iter().filter(|v| m.contains(v)).cloned().collect();
            Subspace::from_vectors(d, inside) == *m
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::rational::int;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn one_dimensional() {
        let f = Flag::from_basis(&[v(&[1])]).unwrap();
        let b = flag_compatible_basis(&f, &f).unwrap();
        assert_eq!(b.len(), 1);
        assert!(is_flag_compatible(&b, &[&f, &f]));
    }

    #[test]
    fn two_lines_in_the_plane() {
        let u = Flag::from_basis(&[v(&[1, 0]), v(&[0, 1])]).unwrap();
        let w = Flag::from_basis(&[v(&[1, 1]), v(&[0, 1])]).unwrap();
        let b = flag_compatible_basis(&u, &w).unwrap();
        assert!(is_flag_compatible(&b, &[&u, &w]));
        let lines: Vec<Subspace> = b.iter().map(|x| Subspace::from_vectors(2, vec![x.clone()])).collect();
        assert!(lines.contains(&Subspace::from_vectors(2, vec![v(&[1, 0])])));
        assert!(lines.contains(&Subspace::from_vectors(2, vec![v(&[1, 1])])));
    }

    #[test]
    fn rejects_bad_flags() {
        let s = Subspace::full(2);
        assert!(Flag::new(vec![Subspace::zero(2), s.clone(), s]).is_err());
    }
}
