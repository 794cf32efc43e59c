use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;
use viennot_core::characters::{
    class_size, dim_irreducible, irreducible_character, mn_character, strata_degree, SkewRShape,
};
use viennot_core::cyclotomic::{CyclotomicNumber, Rational};
use viennot_core::orbit::{group_matrix, multiply, toeplitz_compare, MonomialKey};
use viennot_core::partition::{Partition, RPartition};
use viennot_core::perm::{ColoredPermutation, Permutation, RookPlacement};
use viennot_core::shadow::{iterated_shadows, schensted_insert, shadow_lines, shadow_monomial};
use viennot_core::stats::{colored_statistic, lis};

fn permutation(max_n: usize) -> impl Strategy<Value = Permutation> {
    (0..=max_n)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn colored(max_n: usize, max_r: usize) -> impl Strategy<Value = ColoredPermutation> {
    (permutation(max_n), 1..=max_r)
        .prop_flat_map(|(sigma, r)| {
            let n = sigma.n();
            (Just(sigma), proptest::collection::vec(0..r, n), Just(r))
        })
        .prop_map(|(sigma, kappa, r)| ColoredPermutation::new(sigma, kappa, r).unwrap())
}

/// Shadow set by peeling minimal points: each round the points with nothing
/// strictly south-west of them form one line; its corners join the set.
fn shadow_set_by_peeling(points: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
    let mut rest: Vec<(usize, usize)> = points.to_vec();
    let mut corners = BTreeSet::new();
    while !rest.is_empty() {
        let mut minimal: Vec<(usize, usize)> =
            rest.iter().copied().filter(|&(x, y)| !rest.iter().any(|&(a, b)| a < x && b < y)).collect();
        minimal.sort_unstable();
        for pair in minimal.windows(2) {
            corners.insert((pair[1].0, pair[0].1));
        }
        rest.retain(|p| !minimal.contains(p));
    }
    corners
}

fn monomial(max_var: usize) -> impl Strategy<Value = MonomialKey> {
    proptest::collection::btree_map((1..=max_var, 1..=max_var), 1u32..4, 0..5)
        .prop_map(|exponents| MonomialKey { exponents })
}

fn cyclotomic(r: usize) -> impl Strategy<Value = CyclotomicNumber> {
    let d = viennot_core::cyclotomic::totient(r);
    proptest::collection::vec((-20i64..=20, 1i64..=9), d).prop_map(move |pairs| {
        let coords = pairs.into_iter().map(|(a, b)| Rational::new(BigInt::from(a), BigInt::from(b))).collect();
        CyclotomicNumber::from_coords(r, coords).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn shadows_iterate_to_schensted(w in permutation(12)) {
        let t = iterated_shadows(&w.points());
        prop_assert!(t.is_standard_pair());
        prop_assert_eq!(t, schensted_insert(&w));
    }

    #[test]
    fn shadow_set_matches_peeling(w in permutation(10)) {
        let d = shadow_lines(&w.points());
        let got: BTreeSet<_> = d.shadow_set.points().iter().copied().collect();
        prop_assert_eq!(got, shadow_set_by_peeling(w.points().points()));
        prop_assert_eq!(d.shadow_set.len(), w.n() - lis(&w));
    }

    #[test]
    fn shadow_set_of_partial_placements(points in proptest::collection::btree_map(1usize..12, 1usize..12, 0..8)) {
        // keys are distinct rows; drop repeated columns
        let mut cols = BTreeSet::new();
        let pts: Vec<(usize, usize)> = points.into_iter().filter(|&(_, y)| cols.insert(y)).collect();
        let rook = RookPlacement::new(pts.clone()).unwrap();
        let got: BTreeSet<_> = shadow_lines(&rook).shadow_set.points().iter().copied().collect();
        prop_assert_eq!(got, shadow_set_by_peeling(&pts));
    }

    #[test]
    fn monomial_degree_law(w in colored(8, 4)) {
        let m = shadow_monomial(&w);
        prop_assert_eq!(m.degree() as usize, w.r() * w.n() - colored_statistic(&w));
    }

    #[test]
    fn group_laws(u in colored(6, 4)) {
        let r = u.r();
        let n = u.n();
        let id = ColoredPermutation::identity(n, r);
        prop_assert_eq!(u.then(&u.inverse()), id.clone());
        prop_assert_eq!(u.inverse().then(&u), id);
        let uu = u.then(&u);
        prop_assert_eq!(group_matrix(&uu), &group_matrix(&u) * &group_matrix(&u));
        // conjugation preserves cycle type
        let v = ColoredPermutation::new(u.sigma().inverse(), u.kappa().iter().rev().copied().collect(), r).unwrap();
        prop_assert_eq!(v.inverse().then(&u).then(&v).cycle_type(), u.cycle_type());
    }

    #[test]
    fn parse_round_trip(w in colored(9, 5)) {
        let s = w.to_string();
        prop_assert_eq!(ColoredPermutation::parse(&s, Some(w.r())).unwrap(), w);
    }

    #[test]
    fn field_inverse_r2(x in cyclotomic(2)) {
        prop_assume!(!x.is_zero());
        prop_assert!((&x * &x.inv().unwrap()).is_one());
    }

    #[test]
    fn field_inverse_r3(x in cyclotomic(3)) {
        prop_assume!(!x.is_zero());
        prop_assert!((&x * &x.inv().unwrap()).is_one());
    }

    #[test]
    fn field_inverse_r4(x in cyclotomic(4)) {
        prop_assume!(!x.is_zero());
        prop_assert!((&x * &x.inv().unwrap()).is_one());
    }

    #[test]
    fn field_inverse_r6(x in cyclotomic(6), y in cyclotomic(6), z in cyclotomic(6)) {
        prop_assume!(!x.is_zero());
        prop_assert!((&x * &x.inv().unwrap()).is_one());
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
    }

    #[test]
    fn toeplitz_is_a_monomial_order(a in monomial(4), b in monomial(4), c in monomial(4)) {
        let one = MonomialKey::default();
        prop_assert_ne!(toeplitz_compare(&one, &a), Ordering::Greater);
        prop_assert_eq!(toeplitz_compare(&a, &b), toeplitz_compare(&b, &a).reverse());
        prop_assert_eq!(toeplitz_compare(&a, &b) == Ordering::Equal, a == b);
        prop_assert_eq!(toeplitz_compare(&multiply(&a, &c), &multiply(&b, &c)), toeplitz_compare(&a, &b));
        if toeplitz_compare(&a, &b) != Ordering::Greater && toeplitz_compare(&b, &c) != Ordering::Greater {
            prop_assert_ne!(toeplitz_compare(&a, &c), Ordering::Greater);
        }
    }

    #[test]
    fn character_ignores_cycle_order(seed in any::<u64>(), idx in 0usize..1000) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let labels = RPartition::all(5, 3);
        let lambda = &labels[idx % labels.len()];
        let mu = &labels[(idx / 7 + seed as usize) % labels.len()];
        let mut cycles = mu.cycles();
        let base = irreducible_character(lambda, mu).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        cycles.shuffle(&mut rng);
        prop_assert_eq!(mn_character(&SkewRShape::straight(lambda.clone()), &cycles).unwrap(), base);
    }
}

#[test]
fn dimension_sum_of_squares() {
    for n in 0..=6 {
        for r in 1..=4 {
            let total: BigUint = RPartition::all(n, r).iter().map(|l| dim_irreducible(l).pow(2)).sum();
            assert_eq!(total, viennot_core::group_order(n, r), "n={n}, r={r}");
        }
    }
}

#[test]
fn dual_preserves_dimension() {
    for n in 0..=6 {
        for r in 1..=4 {
            for l in RPartition::all(n, r) {
                assert_eq!(dim_irreducible(&l), dim_irreducible(&l.dual()), "{l}");
            }
        }
    }
}

/// Standard tableaux of an r-shape by removing the largest entry, which
/// sits in a corner of some component.
fn count_syt(shape: &RPartition) -> BigUint {
    if shape.size() == 0 {
        return BigUint::from(1u32);
    }
    let mut total = BigUint::from(0u32);
    for (c, p) in shape.components().iter().enumerate() {
        for row in p.corners() {
            let mut parts = p.parts().to_vec();
            parts[row] -= 1;
            let mut comps = shape.components().to_vec();
            comps[c] = Partition::from_unsorted(parts);
            total += count_syt(&RPartition::new(comps).unwrap());
        }
    }
    total
}

#[test]
fn dimension_counts_tableaux() {
    for n in 0..=5 {
        for r in 1..=3 {
            for l in RPartition::all(n, r) {
                assert_eq!(dim_irreducible(&l), count_syt(&l), "{l}");
            }
        }
    }
    let big = RPartition::from_parts(&[&[2, 1], &[4, 2]]);
    assert_eq!(dim_irreducible(&big), count_syt(&big));
}

#[test]
fn strata_partition_the_labels() {
    for n in 0..=5 {
        for r in 1..=3 {
            let labels = RPartition::all(n, r);
            let mut seen = 0;
            for k in 0..=r * n {
                seen += viennot_core::strata(n, r, k).len();
            }
            assert_eq!(seen, labels.len());
            assert!(labels.iter().all(|l| strata_degree(l) <= r * n));
        }
    }
}

#[test]
fn class_sizes_sum_to_group_order() {
    for n in 0..=6 {
        for r in 1..=4 {
            let total: BigUint = RPartition::all(n, r).iter().map(class_size).sum();
            assert_eq!(total, viennot_core::group_order(n, r));
        }
    }
}
