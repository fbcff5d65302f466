//! Property tests across modules. Random structures are drawn from seeded
//! generators so every shrunk case can be replayed from its seed.

use proptest::prelude::*;
use rand::Rng;

use crate::detloci::{direct_sum_invariance, vanishing_chain};
use crate::exactlinalg::{flag_compatible_basis, int, is_flag_compatible, is_zero_vec, Flag};
use crate::fixtures::random as rfix;
use crate::genericity::rng;
use crate::prelinked::{self, is_linked_point, rescale_edge, tangent_dimension};
use crate::series::adapted::{adaptable, adapted_basis, is_adapted_basis};
use crate::series::eht::{check_eht_direct_unchecked, check_eht_kernel_unchecked, check_refined_unchecked, restrict};
use crate::series::ComponentSpace;
use crate::{json, MatQ, Poly, PolyMatrix, Rational, Subspace};

fn small_matrix() -> impl Strategy<Value = MatQ> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(n, m)| {
        proptest::collection::vec(proptest::collection::vec(-3i64..=3, m), n).prop_map(move |rows| {
            MatQ::from_rows_with_cols(rows.into_iter().map(|r| r.into_iter().map(int).collect()).collect(), m)
        })
    })
}

fn random_invertible(seed: u64, d: usize) -> MatQ {
    prelinked::random::random_invertible(&mut rng(seed), d)
}

fn poly_matrix(seed: u64) -> PolyMatrix {
    let mut r = rng(seed);
    let (n, m) = (r.gen_range(1..=3), r.gen_range(1..=3));
    let rows = (0..n)
        .map(|_| (0..m).map(|_| Poly::from_i64(&[r.gen_range(-2..=2), r.gen_range(-2..=2), r.gen_range(-1..=1)])).collect())
        .collect();
    PolyMatrix::from_rows(rows, m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_nullity(m in small_matrix()) {
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.dim(), m.cols());
        for v in k.basis() {
            prop_assert!(is_zero_vec(&m.mul_vec(v)));
        }
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn flags_have_compatible_bases(seed in any::<u64>(), d in 1usize..=5) {
        let (a, b) = (random_invertible(seed, d), random_invertible(seed ^ 0x5eed, d));
        let cols = |m: &MatQ| (0..d).map(|j| m.col(j)).collect::<Vec<_>>();
        let (u, w) = (Flag::from_basis(&cols(&a)).unwrap(), Flag::from_basis(&cols(&b)).unwrap());
        let basis = flag_compatible_basis(&u, &w).unwrap();
        prop_assert!(is_flag_compatible(&basis, &[&u, &w]));
    }

    #[test]
    fn direct_and_kernel_checks_agree(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (n, rk, k, b) = (r.gen_range(2..=3), r.gen_range(1..=2), r.gen_range(1..=2), r.gen_range(1..=2));
        let s = rfix::eht_candidate(&mut r, n, rk, k, b);
        prop_assert_eq!(check_eht_direct_unchecked(&s), check_eht_kernel_unchecked(&s).unwrap());
    }

    #[test]
    fn adapted_iff_adaptable(seed in any::<u64>(), d in 1i64..=5) {
        let mut r = rng(seed);
        let space = ComponentSpace::line(d);
        let k = r.gen_range(1..=3usize.min(d as usize + 1));
        let (p, q) = (int(0), int(r.gen_range(1..=3)));
        let gens = (0..k)
            .map(|_| {
                let a = r.gen_range(0..=d as usize);
                let b = r.gen_range(0..=d as usize - a);
                let mut poly = Poly::linear_power(&p, a) * Poly::linear_power(&q, b);
                if r.gen_bool(0.4) {
                    poly = &poly + &Poly::from_i64(&[r.gen_range(-2..=2), r.gen_range(-2..=2)]);
                }
                space.from_polys(&[poly])
            })
            .collect();
        let v = Subspace::from_vectors(space.dim(), gens);
        match adapted_basis(&space, &v, &p, &q) {
            Some(basis) => prop_assert!(adaptable(&space, &v, &p, &q) && is_adapted_basis(&space, &v, &p, &q, &basis)),
            None => prop_assert!(!adaptable(&space, &v, &p, &q)),
        }
    }

    #[test]
    fn restriction_keeps_refined_series_refined(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = r.gen_range(1..=2);
        let s = rfix::refined_candidate(&mut r, 3, k, 2);
        let all: Vec<usize> = (0..3).collect();
        prop_assert_eq!(&restrict(&s, &all).unwrap(), &s);
        let order = s.cfg().graph.chain_order().unwrap();
        for part in [&order[..2], &order[1..]] {
            let sub = restrict(&s, part).unwrap();
            prop_assert!(check_refined_unchecked(&sub));
            prop_assert!(check_eht_kernel_unchecked(&sub).unwrap());
        }
    }

    #[test]
    fn loci_ignore_direct_sums_and_constant_operations(seed in any::<u64>(), m in 1usize..=2) {
        let f = poly_matrix(seed);
        prop_assert!(direct_sum_invariance(&f, m));
        let u = PolyMatrix::from_constant(&random_invertible(seed ^ 1, f.rows()));
        let v = PolyMatrix::from_constant(&random_invertible(seed ^ 2, f.cols()));
        prop_assert_eq!(vanishing_chain(&u.mul(&f).mul(&v)), vanishing_chain(&f));
        // An elementary operation with a polynomial entry is unimodular too.
        if f.cols() >= 2 {
            let mut e = PolyMatrix::identity(f.cols());
            e[(0, 1)] = Poly::from_i64(&[1, -2, 1]);
            prop_assert_eq!(vanishing_chain(&f.mul(&e)), vanishing_chain(&f));
        }
    }

    #[test]
    fn loci_form_a_divisibility_chain(seed in any::<u64>()) {
        let chain = vanishing_chain(&poly_matrix(seed));
        for pair in chain.windows(2) {
            prop_assert!(pair[1].generator.divides(&pair[0].generator));
            prop_assert!(pair[0].contains(&pair[1]));
        }
    }

    #[test]
    fn rescaling_edges_preserves_points(seed in any::<u64>(), num in 1i64..=5, den in 1i64..=4, neg in any::<bool>()) {
        let mut r = rng(seed);
        let (rk, d) = [(1, 2), (1, 3), (2, 3)][r.gen_range(0..3)];
        let (data, point, _) = prelinked::random::simple_point(&mut r, rk, d);
        let e = r.gen_range(0..data.edges.len());
        let s = Rational::new(if neg { -num } else { num }.into(), den.into());
        let scaled = rescale_edge(&data, e, &s);
        prop_assert_eq!(is_linked_point(&scaled, &point).unwrap(), is_linked_point(&data, &point).unwrap());
        prop_assert_eq!(tangent_dimension(&scaled, &point).unwrap(), tangent_dimension(&data, &point).unwrap());
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (n, rk, k, b) = (r.gen_range(2..=3), r.gen_range(1..=2), r.gen_range(1..=2), r.gen_range(1..=2));
        let s = rfix::eht_candidate(&mut r, n, rk, k, b);
        let text = json::to_canonical(&json::eht_document(&s));
        let back = json::eht_from_document(&json::parse_document(&text).unwrap()).unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(json::to_canonical(&json::eht_document(&back)), text);
    }
}
