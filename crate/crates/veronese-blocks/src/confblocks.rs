//! sl2 conformal-block ranks and the F-curve intersection numbers they
//! determine.
//!
//! Ranks are fusion-path counts: r(k_1..k_n) is the number of walks
//! 0 -> mu_1 -> ... -> mu_n = 0 through the level-ell weight strip in which
//! every step (mu_{i-1}, k_i, mu_i) is an admissible sl2 triple. On top of
//! the path count sit the Pascal-type recurrence for weight-1 vectors, a
//! subset criterion deciding rank positivity without counting, closed-form
//! zero patterns for constant-weight vectors, and the intersection numbers
//! of the omega_1 and k = ell divisor families with symmetric basis
//! curves.

use num::bigint::BigUint;
use num::traits::{One, Zero};

use crate::core::fcurve_from_profile;
use crate::{Error, Result};

/// A level together with sl2 weights k_1..k_n, each k_i standing for the
/// multiple k_i * omega_1 of the fundamental weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SL2WeightVector {
    level: i64,
    weights: Vec<i64>,
}

impl SL2WeightVector {
    pub fn new(level: i64, weights: Vec<i64>) -> Result<SL2WeightVector> {
        if level < 1 {
            return Err(Error::OutOfRange(format!(
                "level must be at least 1, got {level}"
            )));
        }
        for (i, &k) in weights.iter().enumerate() {
            if k < 0 || k > level {
                return Err(Error::OutOfRange(format!(
                    "weight k_{} = {k} outside 0..={level}",
                    i + 1
                )));
            }
        }
        Ok(SL2WeightVector { level, weights })
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    /// Lambda = sum of the weights.
    pub fn total(&self) -> i64 {
        self.weights.iter().sum()
    }
}

fn fusion3_unchecked(a: i64, b: i64, c: i64, ell: i64) -> bool {
    (a + b + c) % 2 == 0 && (a - b).abs() <= c && c <= a + b && a + b + c <= 2 * ell
}

/// The level-ell sl2 three-point rank: 1 iff a+b+c is even, the triangle
/// inequality holds, and a+b+c <= 2*ell.
pub fn fusion3(a: i64, b: i64, c: i64, ell: i64) -> Result<bool> {
    if ell < 1 {
        return Err(Error::OutOfRange(format!(
            "level must be at least 1, got {ell}"
        )));
    }
    for w in [a, b, c] {
        if w < 0 || w > ell {
            return Err(Error::OutOfRange(format!("weight {w} outside 0..={ell}")));
        }
    }
    Ok(fusion3_unchecked(a, b, c, ell))
}

/// Number of fusion paths from 0 back to 0 threading the weights in order.
/// Invariant under permutation of the weights; the empty vector has rank 1.
pub fn rank(v: &SL2WeightVector) -> BigUint {
    let ell = v.level;
    let dim = ell as usize + 1;
    let mut state = vec![BigUint::zero(); dim];
    state[0] = BigUint::one();
    for &k in &v.weights {
        let mut next = vec![BigUint::zero(); dim];
        for (mu, count) in state.iter().enumerate() {
            if count.is_zero() {
                continue;
            }
            for (nu, slot) in next.iter_mut().enumerate() {
                if fusion3_unchecked(mu as i64, k, nu as i64, ell) {
                    *slot += count;
                }
            }
        }
        state = next;
    }
    std::mem::take(&mut state[0])
}

/// Rank by walking every fusion path one at a time. Independent of the
/// dynamic program in `rank`; limited to n <= 12 because the path count
/// itself can be exponential.
pub fn rank_by_enumeration(v: &SL2WeightVector) -> Result<BigUint> {
    if v.n() > 12 {
        return Err(Error::OutOfRange(format!(
            "path enumeration handles n <= 12, got n = {}",
            v.n()
        )));
    }
    fn walk(mu: i64, rest: &[i64], ell: i64, count: &mut BigUint) {
        match rest.split_first() {
            None => {
                if mu == 0 {
                    *count += 1u32;
                }
            }
            Some((&k, tail)) => {
                for nu in 0..=ell {
                    if fusion3_unchecked(mu, k, nu, ell) {
                        walk(nu, tail, ell, count);
                    }
                }
            }
        }
    }
    let mut count = BigUint::zero();
    walk(0, &v.weights, v.level, &mut count);
    Ok(count)
}

/// r(k^reps, t): the rank of reps copies of k followed by a single t.
pub fn rank_pow(ell: i64, k: i64, reps: usize, t: i64) -> Result<BigUint> {
    let mut weights = vec![k; reps];
    weights.push(t);
    Ok(rank(&SL2WeightVector::new(ell, weights)?))
}

/// r(1^j, t) by the in-strip recurrence
/// r(1^j, t) = r(1^{j-1}, t-1) + r(1^{j-1}, t+1), truncated at the strip
/// boundaries 0 and ell, starting from the delta row r(1^0, t) = [t = 0].
/// Agrees with `rank` on the corresponding vector; in particular
/// r(1^j, j) = 1 for j <= ell.
pub fn rank_recurrence(ell: i64, j: i64, t: i64) -> Result<BigUint> {
    if ell < 1 {
        return Err(Error::OutOfRange(format!(
            "level must be at least 1, got {ell}"
        )));
    }
    if j < 0 {
        return Err(Error::OutOfRange(format!("need j >= 0, got j = {j}")));
    }
    if t < 0 || t > ell {
        return Err(Error::OutOfRange(format!("weight {t} outside 0..={ell}")));
    }
    let dim = ell as usize + 1;
    let mut row = vec![BigUint::zero(); dim];
    row[0] = BigUint::one();
    for _ in 0..j {
        let mut next = vec![BigUint::zero(); dim];
        for (s, slot) in next.iter_mut().enumerate() {
            if s > 0 {
                *slot += &row[s - 1];
            }
            if s + 1 < dim {
                *slot += &row[s + 1];
            }
        }
        row = next;
    }
    Ok(std::mem::take(&mut row[t as usize]))
}

/// Rank positivity without path counting: the rank is nonzero iff Lambda
/// is even and, for every subset I with n - |I| odd,
/// Lambda - (n-1)*ell <= sum over I of (2k_i - ell). Only the minimizing
/// subset is examined: all strictly negative contributions, with one
/// element dropped or added when that set has the wrong parity.
pub fn nonzero_criterion(v: &SL2WeightVector) -> bool {
    if v.total() % 2 != 0 {
        return false;
    }
    let n = v.n() as i64;
    if n == 0 {
        return true;
    }
    let ell = v.level;
    let base = v.total() - (n - 1) * ell;
    let contrib: Vec<i64> = v.weights.iter().map(|&k| 2 * k - ell).collect();
    let neg: Vec<i64> = contrib.iter().copied().filter(|&c| c < 0).collect();
    let nonneg_min = contrib.iter().copied().filter(|&c| c >= 0).min();
    let neg_sum: i64 = neg.iter().sum();
    let need_odd = (n - 1) % 2 == 1;
    let min_rhs = if (neg.len() % 2 == 1) == need_odd {
        neg_sum
    } else {
        let drop_one = neg.iter().max().map(|&c| neg_sum - c);
        let add_one = nonneg_min.map(|c| neg_sum + c);
        match (drop_one, add_one) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => unreachable!("n >= 1 leaves at least one adjustment"),
        }
    };
    base <= min_rhs
}

/// The same criterion checked against every subset directly; n <= 20.
pub fn nonzero_criterion_brute(v: &SL2WeightVector) -> Result<bool> {
    let n = v.n();
    if n > 20 {
        return Err(Error::OutOfRange(format!(
            "subset brute force handles n <= 20, got n = {n}"
        )));
    }
    if v.total() % 2 != 0 {
        return Ok(false);
    }
    let ell = v.level;
    let base = v.total() - (n as i64 - 1) * ell;
    for mask in 0u32..(1 << n) {
        if (n as u32 - mask.count_ones()) % 2 != 1 {
            continue;
        }
        let rhs: i64 = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| 2 * v.weights[i] - ell)
            .sum();
        if base > rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Zero test for constant-weight vectors r(k^i, t) with 1 < k < ell, by
/// parity and the closed-form bounds; multiplied through by k (or by
/// ell - k) so every comparison stays in integers. For i <= 1 the bounds
/// misfire (they predict zero for the empty product at t = 0, whose rank
/// is 1), so those cases are answered by the rank itself.
pub fn zero_criterion_kpattern(ell: i64, k: i64, i: i64, t: i64) -> Result<bool> {
    if k <= 1 || k >= ell {
        return Err(Error::OutOfRange(format!(
            "the pattern criterion assumes 1 < k < ell, got k = {k}, ell = {ell}"
        )));
    }
    if t < 0 || t > ell {
        return Err(Error::OutOfRange(format!("weight {t} outside 0..={ell}")));
    }
    if i < 0 {
        return Err(Error::OutOfRange(format!("need i >= 0, got i = {i}")));
    }
    if i <= 1 {
        return Ok(rank_pow(ell, k, i as usize, t)?.is_zero());
    }
    if (k * i + t) % 2 == 1 {
        return Ok(true);
    }
    let zero = if 2 * k <= ell {
        i * k < t || i * k < 2 * k - t
    } else {
        let m = ell - k;
        if i % 2 == 0 {
            i * m < t || i * m < 2 * m - t
        } else {
            i * m < ell - t || i * m < 2 * m - (ell - t)
        }
    };
    Ok(zero)
}

/// The critical level Lambda/2 - 1; defined only for even total weight.
pub fn critical_level(v: &SL2WeightVector) -> Result<i64> {
    let lambda = v.total();
    if lambda % 2 != 0 {
        return Err(Error::OddTotal {
            lambda: lambda as u64,
        });
    }
    Ok(lambda / 2 - 1)
}

/// True when the divisor attached to the vector is trivial because the
/// level exceeds the critical level.
pub fn is_trivial(v: &SL2WeightVector) -> Result<bool> {
    Ok(v.level() > critical_level(v)?)
}

/// Intersection of the level-ell divisor with all weights omega_1 on
/// n = 2g+2 points against the basis curve F_{1,1,i,2g-i}:
/// r(1^i, ell) * r(1^{2g-i}, ell).
pub fn cb_intersect_omega1(ell: i64, g: i64, i: i64) -> Result<BigUint> {
    if ell < 1 || ell > g {
        return Err(Error::OutOfRange(format!(
            "need 1 <= ell <= g, got ell = {ell}, g = {g}"
        )));
    }
    if i < 1 || i > g {
        return Err(Error::OutOfRange(format!(
            "need 1 <= i <= g, got i = {i}, g = {g}"
        )));
    }
    Ok(rank_pow(ell, 1, i as usize, ell)? * rank_pow(ell, 1, (2 * g - i) as usize, ell)?)
}

/// Intersection of the level-ell divisor with all weights ell * omega_1 on
/// even n points against F_{1,1,i,n-i-2}:
/// ell * r(ell^{n-i-2}, ell) * r(ell^i, ell).
pub fn cb_intersect_kequalsell(ell: i64, n: i64, i: i64) -> Result<BigUint> {
    if ell < 1 {
        return Err(Error::OutOfRange(format!(
            "level must be at least 1, got {ell}"
        )));
    }
    if n % 2 != 0 {
        return Err(Error::OutOfRange(format!("need even n, got n = {n}")));
    }
    if i < 1 || i > n / 2 - 1 {
        return Err(Error::OutOfRange(format!(
            "need 1 <= i <= n/2 - 1, got i = {i}, n = {n}"
        )));
    }
    let product = rank_pow(ell, ell, (n - i - 2) as usize, ell)? * rank_pow(ell, ell, i as usize, ell)?;
    Ok(BigUint::from(ell as u64) * product)
}

/// Sufficient (not necessary) test for a nonzero 4-point degree at level
/// ell: the total weight is even, exceeds 2*ell, and stays below
/// 2*ell + 2 + 2*min(w).
pub fn deg4_nonzero_sufficient(w: [i64; 4], ell: i64) -> Result<bool> {
    if ell < 1 {
        return Err(Error::OutOfRange(format!(
            "level must be at least 1, got {ell}"
        )));
    }
    for wi in w {
        if wi < 0 || wi > ell {
            return Err(Error::OutOfRange(format!("weight {wi} outside 0..={ell}")));
        }
    }
    let sum: i64 = w.iter().sum();
    let min = *w.iter().min().expect("four weights");
    Ok(sum % 2 == 0 && sum > 2 * ell && sum < 2 * ell + 2 + 2 * min)
}

/// Whether the symmetric divisor for weight k*omega_1^n at level ell kills
/// the F-curve with the given profile: with the three smallest parts a, b,
/// c, the intersection vanishes iff k*(a+b+c) <= ell + 1. Proven only
/// under the hypotheses checked here; each violation is reported by name.
pub fn fcurve_zero_criterion(ell: i64, k: i64, n: usize, profile: [usize; 4]) -> Result<bool> {
    if k <= 1 {
        return Err(Error::Hypotheses(format!("need k > 1, got k = {k}")));
    }
    if 4 * k >= 3 * ell {
        return Err(Error::Hypotheses(format!(
            "need 4k < 3*ell, got k = {k}, ell = {ell}; beyond this range the cutoff \
             can fail, e.g. at level 4 with weight 3 on 8 points the divisor kills \
             F(2,2,2,2) even though the cutoff predicts otherwise"
        )));
    }
    if n % 2 != 0 {
        return Err(Error::Hypotheses(format!("need even n, got n = {n}")));
    }
    if ell > k * (n as i64) / 2 - 1 {
        return Err(Error::Hypotheses(format!(
            "need ell <= k*n/2 - 1 (else the divisor is trivial), got ell = {ell}, \
             k = {k}, n = {n}"
        )));
    }
    let sorted = fcurve_from_profile(n, profile)?.profile();
    let small_three = (sorted[0] + sorted[1] + sorted[2]) as i64;
    Ok(k * small_three <= ell + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vector(ell: i64, weights: &[i64]) -> SL2WeightVector {
        SL2WeightVector::new(ell, weights.to_vec()).unwrap()
    }

    fn each_vector(ell: i64, n: usize, mut visit: impl FnMut(&SL2WeightVector)) {
        let mut weights = vec![0i64; n];
        loop {
            visit(&vector(ell, &weights));
            let mut pos = n;
            while pos > 0 {
                if weights[pos - 1] < ell {
                    weights[pos - 1] += 1;
                    weights[pos..].iter_mut().for_each(|w| *w = 0);
                    break;
                }
                pos -= 1;
            }
            if pos == 0 {
                break;
            }
        }
    }

    #[test]
    fn fusion3_basic_facts() {
        for ell in 1..=5 {
            for t in 1..=ell {
                assert!(fusion3(1, t, t - 1, ell).unwrap());
                assert!(!fusion3(1, t, t, ell).unwrap());
            }
            for k in 0..=ell {
                assert!(fusion3(k, k, 0, ell).unwrap());
            }
        }
        assert!(!fusion3(2, 2, 2, 2).unwrap());
        assert!(fusion3(2, 2, 2, 3).unwrap());
        assert!(fusion3(6, 2, 2, 5).is_err());
    }

    #[test]
    fn rank_spot_values() {
        assert_eq!(rank(&vector(3, &[1, 1, 1, 3])), 1u32.into());
        assert_eq!(rank(&vector(2, &[1, 1, 1, 2])), 0u32.into());
        assert_eq!(rank(&vector(2, &[1, 1, 1, 1])), 2u32.into());
        assert_eq!(rank(&vector(1, &[])), 1u32.into());
        assert_eq!(rank(&vector(2, &[2, 2, 1, 1])), 1u32.into());
    }

    #[test]
    fn rank_is_order_invariant() {
        let base = rank(&vector(3, &[1, 2, 2, 3, 1, 3]));
        assert_eq!(rank(&vector(3, &[3, 3, 2, 2, 1, 1])), base);
        assert_eq!(rank(&vector(3, &[2, 1, 3, 1, 3, 2])), base);
    }

    #[test]
    fn enumeration_agrees_with_dp() {
        for ell in 1..=3 {
            for n in 0..=5 {
                each_vector(ell, n, |v| {
                    assert_eq!(rank_by_enumeration(v).unwrap(), rank(v), "{v:?}");
                });
            }
        }
        assert!(rank_by_enumeration(&vector(1, &[1; 13])).is_err());
    }

    #[test]
    fn recurrence_matches_rank_and_seeds() {
        assert_eq!(rank_recurrence(2, 4, 0).unwrap(), 2u32.into());
        assert_eq!(rank_recurrence(1, 5, 1).unwrap(), 1u32.into());
        assert_eq!(rank_recurrence(3, 2, 2).unwrap(), 1u32.into());
        assert!(rank_recurrence(3, 2, 4).is_err());
        for ell in 1..=4 {
            for j in 0..=ell {
                assert_eq!(rank_recurrence(ell, j, j).unwrap(), 1u32.into());
            }
            for j in 0..=14 {
                for t in 0..=ell {
                    assert_eq!(
                        rank_recurrence(ell, j, t).unwrap(),
                        rank_pow(ell, 1, j as usize, t).unwrap(),
                        "ell = {ell}, j = {j}, t = {t}"
                    );
                }
            }
        }
    }

    #[test]
    fn nonzero_criterion_matches_rank_and_brute() {
        for ell in 1..=3 {
            for n in 0..=6 {
                each_vector(ell, n, |v| {
                    let expected = !rank(v).is_zero();
                    assert_eq!(nonzero_criterion(v), expected, "{v:?}");
                    assert_eq!(nonzero_criterion_brute(v).unwrap(), expected, "{v:?}");
                });
            }
        }
    }

    #[test]
    fn nonzero_criterion_spot_cases() {
        assert!(!nonzero_criterion(&vector(3, &[1, 1, 1, 2])));
        for ell in 1..=4 {
            for k in 0..=ell {
                assert!(nonzero_criterion(&vector(ell, &[k, k])));
            }
        }
        let v = vector(2, &[2, 2, 1, 1]);
        assert!(nonzero_criterion(&v));
        assert_eq!(rank(&v), 1u32.into());
    }

    #[test]
    fn zero_pattern_matches_rank() {
        for ell in 2..=5 {
            for k in 2..ell {
                for i in 0..=10 {
                    for t in 0..=ell {
                        assert_eq!(
                            zero_criterion_kpattern(ell, k, i, t).unwrap(),
                            rank_pow(ell, k, i as usize, t).unwrap().is_zero(),
                            "ell = {ell}, k = {k}, i = {i}, t = {t}"
                        );
                    }
                }
            }
        }
        assert!(zero_criterion_kpattern(4, 2, 1, 1).unwrap());
        assert!(!zero_criterion_kpattern(4, 2, 0, 0).unwrap());
        assert!(!zero_criterion_kpattern(5, 2, 1, 2).unwrap());
        assert!(zero_criterion_kpattern(3, 1, 2, 1).is_err());
        assert!(zero_criterion_kpattern(3, 3, 2, 1).is_err());
    }

    #[test]
    fn critical_level_and_triviality() {
        for g in 1..=6 {
            let v = vector(1, &vec![1; 2 * g as usize + 2]);
            assert_eq!(critical_level(&v).unwrap(), g);
        }
        assert_eq!(critical_level(&vector(2, &[2, 2, 2, 2])).unwrap(), 3);
        let v = vector(5, &[1; 8]);
        assert_eq!(critical_level(&v).unwrap(), 3);
        assert!(is_trivial(&v).unwrap());
        assert!(!is_trivial(&vector(2, &[2, 2, 2, 2])).unwrap());
        assert_eq!(
            critical_level(&vector(2, &[1, 1, 1])),
            Err(Error::OddTotal { lambda: 3 })
        );
    }

    #[test]
    fn omega1_intersections() {
        assert_eq!(cb_intersect_omega1(1, 3, 1).unwrap(), 1u32.into());
        assert_eq!(cb_intersect_omega1(2, 3, 1).unwrap(), 0u32.into());
        assert_eq!(cb_intersect_omega1(3, 3, 3).unwrap(), 1u32.into());
        assert!(cb_intersect_omega1(4, 3, 1).is_err());
        assert!(cb_intersect_omega1(1, 3, 4).is_err());
    }

    #[test]
    fn kequalsell_intersections() {
        assert_eq!(cb_intersect_kequalsell(2, 8, 1).unwrap(), 2u32.into());
        assert_eq!(cb_intersect_kequalsell(3, 8, 2).unwrap(), 0u32.into());
        assert_eq!(cb_intersect_kequalsell(1, 6, 1).unwrap(), 1u32.into());
        assert!(cb_intersect_kequalsell(2, 7, 1).is_err());
        assert!(cb_intersect_kequalsell(2, 8, 4).is_err());
    }

    #[test]
    fn constant_ell_vectors_vanish_at_interior_weights() {
        for ell in 2..=4 {
            for j in 0..=8 {
                for t in 1..ell {
                    assert_eq!(rank_pow(ell, ell, j, t).unwrap(), 0u32.into());
                }
            }
        }
    }

    #[test]
    fn level_shadow_identity() {
        // r(ell^t, ell) at level ell equals r(1^t, 1) at level 1
        for ell in 1..=4 {
            for t in 0..=10 {
                assert_eq!(
                    rank_pow(ell, ell, t, ell).unwrap(),
                    rank_pow(1, 1, t, 1).unwrap(),
                    "ell = {ell}, t = {t}"
                );
            }
        }
    }

    #[test]
    fn deg4_sufficient_cases() {
        for ell in 1..=5 {
            assert!(deg4_nonzero_sufficient([ell; 4], ell).unwrap());
            assert!(!deg4_nonzero_sufficient([0, 0, ell, ell], ell).unwrap());
            assert!(!deg4_nonzero_sufficient([0, ell, ell, ell], ell).unwrap());
        }
        assert!(deg4_nonzero_sufficient([1, 2, 2, 3], 3).unwrap());
        assert!(deg4_nonzero_sufficient([6, 1, 1, 1], 5).is_err());
    }

    #[test]
    fn fcurve_criterion_and_hypotheses() {
        assert!(fcurve_zero_criterion(7, 2, 10, [1, 1, 1, 7]).unwrap());
        assert!(!fcurve_zero_criterion(7, 2, 10, [2, 2, 3, 3]).unwrap());
        let err = fcurve_zero_criterion(4, 3, 8, [2, 2, 2, 2]).unwrap_err();
        assert!(matches!(err, Error::Hypotheses(_)));
        assert!(err.to_string().contains("F(2,2,2,2)"));
        assert!(matches!(
            fcurve_zero_criterion(7, 1, 10, [1, 1, 1, 7]),
            Err(Error::Hypotheses(_))
        ));
        assert!(matches!(
            fcurve_zero_criterion(7, 2, 9, [1, 1, 1, 6]),
            Err(Error::Hypotheses(_))
        ));
        assert!(matches!(
            fcurve_zero_criterion(8, 2, 8, [1, 1, 1, 5]),
            Err(Error::Hypotheses(_))
        ));
        assert!(fcurve_zero_criterion(7, 2, 10, [1, 1, 1, 6]).is_err());
    }
}
