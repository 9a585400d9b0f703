use num::traits::ToPrimitive;
use proptest::prelude::*;

use veronese_blocks::confblocks::{rank, SL2WeightVector};
use veronese_blocks::core::{
    basis_len, ceil_big, fcurve_from_profile, rat, rat_int, symmetric_basis, FCurve, Rational,
};
use veronese_blocks::veronese::{intersect, on_wall, phi, sigma, WeightData};

fn rational() -> impl Strategy<Value = Rational> {
    (-200i64..200, 1i64..50).prop_map(|(p, q)| rat(p, q))
}

/// Allowable weight data with d >= 2, built so the identity
/// (d-1)*gamma + sum(a) = d+1 holds exactly: the weights are a random
/// positive vector rescaled to the exact target sum, with n large enough
/// that every entry stays below 1.
fn allowable() -> impl Strategy<Value = WeightData> {
    (2i64..=5, (0i64..12, 2i64..=12), 0usize..4, proptest::collection::vec(100i64..200, 24))
        .prop_map(|(d, (gp, gq), extra, xs)| {
            let gamma = rat(gp % gq, gq);
            let target = rat_int(d + 1) - rat_int(d - 1) * &gamma;
            let n = 2 * ceil_big(&target).to_usize().unwrap() + extra;
            let xs = &xs[..n];
            let total: i64 = xs.iter().sum();
            let weights: Vec<Rational> = xs
                .iter()
                .map(|&x| &target * rat_int(x) / rat_int(total))
                .collect();
            WeightData::new(d, gamma, weights).expect("constructed to be allowable")
        })
}

fn subset_of(n: usize, mask: u64) -> Vec<usize> {
    (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect()
}

/// A partition of 1..=n into four nonempty parts driven by a list of part
/// indices; returns None when some part comes out empty.
fn partition_from(n: usize, picks: &[usize]) -> Option<[Vec<usize>; 4]> {
    let mut parts: [Vec<usize>; 4] = Default::default();
    for label in 1..=n {
        parts[picks[(label - 1) % picks.len()] % 4].push(label);
    }
    if parts.iter().any(|p| p.is_empty()) {
        None
    } else {
        Some(parts)
    }
}

proptest! {
    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        if a != rat_int(0) {
            prop_assert_eq!(&a * (rat_int(1) / &a), rat_int(1));
        }
    }

    #[test]
    fn rational_normalization_idempotent(p in -200i64..200, q in 1i64..50, s in 1i64..20) {
        prop_assert_eq!(rat(p * s, q * s), rat(p, q));
    }

    #[test]
    fn profile_is_order_free(parts in proptest::array::uniform4(1usize..8), a in 0usize..4, b in 0usize..4) {
        let n: usize = parts.iter().sum();
        let mut swapped = parts;
        swapped.swap(a, b);
        prop_assert_eq!(
            fcurve_from_profile(n, parts).unwrap(),
            fcurve_from_profile(n, swapped).unwrap()
        );
    }

    #[test]
    fn basis_length_formula(n in 4usize..40) {
        prop_assert_eq!(symmetric_basis(n).unwrap().len(), n / 2 - 1);
        prop_assert_eq!(basis_len(n), n / 2 - 1);
    }

    #[test]
    fn sigma_stays_in_range(w in allowable(), mask in any::<u64>()) {
        let labels = subset_of(w.n(), mask);
        let s = sigma(&labels, &w);
        prop_assert!(0 <= s && s <= w.d());
    }

    #[test]
    fn sigma_is_monotone(w in allowable(), mask in any::<u64>(), extra in any::<u64>()) {
        let small = subset_of(w.n(), mask);
        let big = subset_of(w.n(), mask | extra);
        prop_assert!(sigma(&small, &w) <= sigma(&big, &w));
    }

    #[test]
    fn phi_increment_matches_weights(w in allowable(), mask in any::<u64>()) {
        // phi(J) - phi(empty) = w_J / (1 - gamma), exactly
        let labels = subset_of(w.n(), mask);
        let lhs = phi(&labels, &w) - phi(&[], &w);
        let rhs = w.subset_weight(&labels) / (rat_int(1) - w.gamma());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn intersect_is_part_symmetric_off_walls(
        w in allowable(),
        picks in proptest::collection::vec(0usize..4, 24),
        order in prop_oneof![Just([3usize, 0, 1, 2]), Just([1, 0, 3, 2]), Just([2, 3, 1, 0])],
    ) {
        let n = w.n();
        let parts = match partition_from(n, &picks) {
            Some(p) => p,
            None => return Ok(()),
        };
        for i in 0..4 {
            prop_assume!(!on_wall(&parts[i], &w));
            for j in i + 1..4 {
                let mut union = parts[i].clone();
                union.extend_from_slice(&parts[j]);
                prop_assume!(!on_wall(&union, &w));
            }
        }
        let f = FCurve::new(n, parts).unwrap();
        let g = f.permuted(order);
        prop_assert_eq!(intersect(&f, &w).unwrap(), intersect(&g, &w).unwrap());
    }

    #[test]
    fn rank_is_permutation_invariant(
        ell in 1i64..6,
        weights in proptest::collection::vec(0i64..6, 0..9),
        rot in 0usize..8,
    ) {
        let weights: Vec<i64> = weights.into_iter().map(|k| k % (ell + 1)).collect();
        let v = SL2WeightVector::new(ell, weights.clone()).unwrap();
        let mut shuffled = weights;
        if !shuffled.is_empty() {
            let steps = rot % shuffled.len();
            shuffled.rotate_left(steps);
            shuffled.reverse();
        }
        let u = SL2WeightVector::new(ell, shuffled).unwrap();
        prop_assert_eq!(rank(&v), rank(&u));
    }

    #[test]
    fn odd_total_forces_rank_zero(
        ell in 1i64..6,
        weights in proptest::collection::vec(0i64..6, 1..9),
    ) {
        let weights: Vec<i64> = weights.into_iter().map(|k| k % (ell + 1)).collect();
        let v = SL2WeightVector::new(ell, weights).unwrap();
        prop_assume!(v.total() % 2 == 1);
        prop_assert_eq!(rank(&v), 0u32.into());
    }
}
