//! Runnable checks of the claims connecting the two divisor families:
//! exact nonnegative decompositions, monotonicity and determinant
//! inequalities, zero-set comparisons, the k = ell proportionality, and
//! independence of intersection numbers from the choice of semistable
//! degree distribution on walls.
//!
//! Every `check_*` returns a [`CheckReport`] rather than a bare boolean:
//! a failing claim is the most valuable output this crate can produce, so
//! failures carry a concrete witness. Precondition violations are ordinary
//! errors; a computation that contradicts a claimed identity surfaces as
//! [`Error::Falsified`] or as a report with `pass == false`.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::traits::Zero;

use crate::confblocks::{cb_intersect_kequalsell, cb_intersect_omega1, rank_pow};
use crate::core::{rat, rat_int, FCurve, IntersectionVector, Rational};
use crate::veronese::{
    intersect_with_degrees, jensen_closed_form, jensen_vector, on_wall, LegDegrees, WeightData,
};
use crate::{Error, Result};

/// Outcome of one verification run: what was checked, whether it held,
/// and a witness plus free-form details when it did not (or when the
/// details are worth reporting anyway).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub pass: bool,
    pub checked: u64,
    pub witness: Option<String>,
    pub details: BTreeMap<String, String>,
}

impl CheckReport {
    fn new(name: &str) -> CheckReport {
        CheckReport {
            name: name.to_string(),
            pass: true,
            checked: 0,
            witness: None,
            details: BTreeMap::new(),
        }
    }

    fn fail(&mut self, witness: String) {
        if self.pass {
            self.pass = false;
            self.witness = Some(witness);
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} ({} cases)",
            self.name,
            if self.pass { "pass" } else { "FAIL" },
            self.checked
        )?;
        if let Some(w) = &self.witness {
            write!(f, "; witness: {w}")?;
        }
        for (k, v) in &self.details {
            write!(f, "; {k} = {v}")?;
        }
        Ok(())
    }
}

/// An exact expression of the level-ell conformal-block vector as a
/// nonnegative combination of the standard-linearization vectors for
/// levels ell, ell+2, ..., <= g.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionResult {
    pub ell: i64,
    pub g: i64,
    pub coefficients: BTreeMap<i64, Rational>,
    pub residual: IntersectionVector,
}

fn uint_to_rational(u: num::BigUint) -> Rational {
    Rational::from(BigInt::from(u))
}

/// Intersection vector of the conformal-block divisor for level ell with
/// all weights omega_1 on n = 2g+2 points, against the basis F_1..F_g.
pub fn cb_vector(ell: i64, g: i64) -> Result<IntersectionVector> {
    let values = (1..=g)
        .map(|i| Ok(uint_to_rational(cb_intersect_omega1(ell, g, i)?)))
        .collect::<Result<Vec<_>>>()?;
    IntersectionVector::new((2 * g + 2) as usize, values)
}

/// Expresses cb_vector(ell, g) in the standard-linearization vectors of
/// levels ell' = ell, ell+2, ..., <= g by back-substitution on the
/// coordinates j = ell, ell+2, ... (the system is triangular there with
/// diagonal 1/(ell'+1)). Nonzero off-parity targets, a nonzero residual,
/// a negative coefficient, or a nonpositive leading coefficient are each
/// reported as a falsification.
pub fn poscomb_decompose(ell: i64, g: i64) -> Result<DecompositionResult> {
    if ell < 1 || ell > g {
        return Err(Error::OutOfRange(format!(
            "need 1 <= ell <= g, got ell = {ell}, g = {g}"
        )));
    }
    let target = cb_vector(ell, g)?;
    for j in 1..=g {
        if j % 2 != ell % 2 && !target.value(j as usize).is_zero() {
            return Err(Error::Falsified {
                claim: format!(
                    "off-parity intersections vanish for ell = {ell}, g = {g}"
                ),
                witness: format!("j = {j}: value {}", target.value(j as usize)),
            });
        }
    }

    let mut coefficients: BTreeMap<i64, Rational> = BTreeMap::new();
    let mut lp = ell;
    while lp <= g {
        let mut acc = target.value(lp as usize).clone();
        for (&prev, c) in &coefficients {
            acc -= c * rat(1, prev + 1);
        }
        coefficients.insert(lp, acc * rat_int(lp + 1));
        lp += 2;
    }

    for (&lp, c) in &coefficients {
        if c < &rat_int(0) {
            return Err(Error::Falsified {
                claim: format!(
                    "decomposition coefficients are nonnegative for ell = {ell}, g = {g}"
                ),
                witness: format!("coefficient of level {lp} is {c}"),
            });
        }
    }
    if coefficients[&ell] <= rat_int(0) {
        return Err(Error::Falsified {
            claim: format!(
                "leading decomposition coefficient is positive for ell = {ell}, g = {g}"
            ),
            witness: format!("coefficient of level {ell} is {}", coefficients[&ell]),
        });
    }

    let mut residual_values = Vec::with_capacity(g as usize);
    for j in 1..=g {
        let mut r = target.value(j as usize).clone();
        for (&lp, c) in &coefficients {
            r -= c * jensen_closed_form(lp, g, j)?;
        }
        residual_values.push(r);
    }
    if let Some(j) = residual_values.iter().position(|r| !r.is_zero()) {
        return Err(Error::Falsified {
            claim: format!("decomposition is exact for ell = {ell}, g = {g}"),
            witness: format!("residual at j = {}: {}", j + 1, residual_values[j]),
        });
    }
    Ok(DecompositionResult {
        ell,
        g,
        coefficients,
        residual: IntersectionVector::new((2 * g + 2) as usize, residual_values)?,
    })
}

/// The conformal-block intersection numbers are nondecreasing along
/// i = ell, ell+2, ..., g and vanish at off-parity i.
pub fn check_increasing(ell: i64, g: i64) -> Result<CheckReport> {
    if ell < 1 || ell > g {
        return Err(Error::OutOfRange(format!(
            "need 1 <= ell <= g, got ell = {ell}, g = {g}"
        )));
    }
    let mut report = CheckReport::new("increasing");
    report.details.insert("ell".into(), ell.to_string());
    report.details.insert("g".into(), g.to_string());
    for i in 1..=g {
        if i % 2 != ell % 2 {
            report.checked += 1;
            let v = cb_intersect_omega1(ell, g, i)?;
            if !v.is_zero() {
                report.fail(format!("off-parity i = {i} gives {v}, expected 0"));
            }
        }
    }
    let mut i = ell;
    while i + 2 <= g {
        report.checked += 1;
        let lo = cb_intersect_omega1(ell, g, i)?;
        let hi = cb_intersect_omega1(ell, g, i + 2)?;
        if lo > hi {
            report.fail(format!("value at i = {i} is {lo} > {hi} at i = {}", i + 2));
        }
        i += 2;
    }
    Ok(report)
}

/// All two-by-two minors of the table r(1^i, j) with rows and columns of
/// matching parity have nonnegative determinant: for i1 < i2 <= imax and
/// j1 < j2 <= ell with i1, i2, j1, j2 all congruent mod 2,
/// r(1^i1, j1) r(1^i2, j2) >= r(1^i1, j2) r(1^i2, j1).
pub fn check_determinant_lemma(ell: i64, imax: i64) -> Result<CheckReport> {
    if ell < 1 {
        return Err(Error::OutOfRange(format!(
            "level must be at least 1, got {ell}"
        )));
    }
    if imax < 2 {
        return Err(Error::OutOfRange(format!(
            "need imax >= 2, got imax = {imax}"
        )));
    }
    let mut report = CheckReport::new("determinant-lemma");
    report.details.insert("ell".into(), ell.to_string());
    report.details.insert("imax".into(), imax.to_string());

    // rows of r(1^i, t) for i = 0..=imax, built by the strip recurrence
    let dim = ell as usize + 1;
    let mut rows = Vec::with_capacity(imax as usize + 1);
    let mut row = vec![num::BigUint::zero(); dim];
    row[0] = num::BigUint::from(1u32);
    rows.push(row.clone());
    for _ in 0..imax {
        let mut next = vec![num::BigUint::zero(); dim];
        for (t, slot) in next.iter_mut().enumerate() {
            if t > 0 {
                *slot += &row[t - 1];
            }
            if t + 1 < dim {
                *slot += &row[t + 1];
            }
        }
        rows.push(next.clone());
        row = next;
    }

    for i1 in 0..imax {
        for i2 in (i1 + 2..=imax).step_by(2) {
            for j1 in 0..ell {
                if j1 % 2 != i1 % 2 {
                    continue;
                }
                for j2 in ((j1 + 2)..=ell).step_by(2) {
                    report.checked += 1;
                    let lhs = &rows[i1 as usize][j1 as usize] * &rows[i2 as usize][j2 as usize];
                    let rhs = &rows[i1 as usize][j2 as usize] * &rows[i2 as usize][j1 as usize];
                    if lhs < rhs {
                        report.fail(format!(
                            "i1 = {i1}, i2 = {i2}, j1 = {j1}, j2 = {j2}: {lhs} < {rhs}"
                        ));
                    }
                }
            }
        }
    }
    Ok(report)
}

/// The conformal-block vector and the standard-linearization vector have
/// the same zero set on the basis curves, and the former decomposes as a
/// nonnegative combination with strictly positive coefficient on level
/// ell. Requires d = g+1-ell >= 2.
pub fn check_same_face(ell: i64, g: i64) -> Result<CheckReport> {
    if ell < 1 || ell > g {
        return Err(Error::OutOfRange(format!(
            "need 1 <= ell <= g, got ell = {ell}, g = {g}"
        )));
    }
    if g + 1 - ell == 1 {
        return Err(Error::DegreeOne);
    }
    let mut report = CheckReport::new("same-face");
    report.details.insert("ell".into(), ell.to_string());
    report.details.insert("g".into(), g.to_string());

    let cb = cb_vector(ell, g)?;
    let jensen = jensen_vector(ell, g)?;
    report.checked += g as u64;
    if cb.zero_set() != jensen.zero_set() {
        report.fail(format!(
            "zero sets differ: conformal blocks {:?} vs linearization {:?}",
            cb.zero_set(),
            jensen.zero_set()
        ));
    }
    report
        .details
        .insert("zero_set".into(), format!("{:?}", jensen.zero_set()));

    report.checked += 1;
    match poscomb_decompose(ell, g) {
        Ok(decomp) => {
            let rendered: Vec<String> = decomp
                .coefficients
                .iter()
                .map(|(lp, c)| format!("{lp}: {c}"))
                .collect();
            report
                .details
                .insert("coefficients".into(), rendered.join(", "));
        }
        Err(Error::Falsified { claim, witness }) => {
            report.fail(format!("{claim}; {witness}"));
        }
        Err(e) => return Err(e),
    }
    Ok(report)
}

/// Whether the conformal-block vector is an exact scalar multiple of the
/// standard-linearization vector. Proportionality is expected exactly for
/// ell <= 2, and vacuously whenever at most one coordinate is active
/// (g < ell + 2); the report fails if the computed relationship deviates
/// from that.
pub fn check_proportionality(ell: i64, g: i64) -> Result<CheckReport> {
    if ell < 1 || ell > g {
        return Err(Error::OutOfRange(format!(
            "need 1 <= ell <= g, got ell = {ell}, g = {g}"
        )));
    }
    let mut report = CheckReport::new("proportionality");
    report.details.insert("ell".into(), ell.to_string());
    report.details.insert("g".into(), g.to_string());

    let cb = cb_vector(ell, g)?;
    let jensen = jensen_vector(ell, g)?;
    let mut ratio: Option<Rational> = None;
    let mut proportional = true;
    for j in 1..=g as usize {
        report.checked += 1;
        let (x, y) = (cb.value(j), jensen.value(j));
        match (&x.is_zero(), &y.is_zero()) {
            (true, true) => {}
            (false, false) => {
                let r = x / y;
                match &ratio {
                    None => ratio = Some(r),
                    Some(prev) if *prev == r => {}
                    Some(prev) => {
                        proportional = false;
                        report.details.insert(
                            "ratio_conflict".into(),
                            format!("j gives {r}, earlier {prev}"),
                        );
                    }
                }
            }
            _ => proportional = false,
        }
    }
    report
        .details
        .insert("proportional".into(), proportional.to_string());
    if let Some(r) = &ratio {
        if proportional {
            report.details.insert("ratio".into(), r.to_string());
        }
    }
    let expected = ell <= 2 || g < ell + 2;
    if proportional != expected {
        report.fail(format!(
            "proportionality is {proportional}, expected {expected} for ell = {ell}, g = {g}"
        ));
    }
    Ok(report)
}

/// The intersection numbers of the all-ell-weights divisor equal ell times
/// the level-1 all-omega_1 numbers, and the underlying rank identity
/// r(ell^t, ell) = r_1(1^t, 1) holds for every t used.
pub fn check_kequalsell(ell: i64, n: i64) -> Result<CheckReport> {
    if ell < 1 {
        return Err(Error::OutOfRange(format!(
            "level must be at least 1, got {ell}"
        )));
    }
    if n % 2 != 0 {
        return Err(Error::OutOfRange(format!("need even n, got n = {n}")));
    }
    if n < 6 {
        return Err(Error::NTooSmall {
            what: "check_kequalsell",
            n: n as usize,
            min: 6,
        });
    }
    let mut report = CheckReport::new("k-equals-ell");
    report.details.insert("ell".into(), ell.to_string());
    report.details.insert("n".into(), n.to_string());

    let g = n / 2 - 1;
    for i in 1..=g {
        report.checked += 1;
        let lhs = cb_intersect_kequalsell(ell, n, i)?;
        let rhs = num::BigUint::from(ell as u64) * cb_intersect_omega1(1, g, i)?;
        if lhs != rhs {
            report.fail(format!("i = {i}: {lhs} != ell * level-1 value {rhs}"));
        }
    }
    for t in 0..=(n - 2) as usize {
        report.checked += 1;
        let lhs = rank_pow(ell, ell, t, ell)?;
        let rhs = rank_pow(1, 1, t, 1)?;
        if lhs != rhs {
            report.fail(format!(
                "rank identity fails at t = {t}: r(ell^t, ell) = {lhs}, r_1(1^t, 1) = {rhs}"
            ));
        }
    }
    Ok(report)
}

fn each_partition4(n: usize, cap: u64, visit: &mut impl FnMut(&[Vec<usize>; 4]) -> bool) {
    fn go(
        label: usize,
        n: usize,
        blocks: &mut [Vec<usize>; 4],
        used: usize,
        left: &mut u64,
        visit: &mut impl FnMut(&[Vec<usize>; 4]) -> bool,
    ) -> bool {
        if label > n {
            if used == 4 {
                if *left == 0 {
                    return false;
                }
                *left -= 1;
                return visit(blocks);
            }
            return true;
        }
        if n - label + 1 < 4 - used {
            return true;
        }
        let limit = (used + 1).min(4);
        for b in 0..limit {
            blocks[b].push(label);
            let keep = go(label + 1, n, blocks, used.max(b + 1), left, visit);
            blocks[b].pop();
            if !keep {
                return false;
            }
        }
        true
    }
    let mut blocks: [Vec<usize>; 4] = Default::default();
    let mut left = cap;
    go(1, n, &mut blocks, 0, &mut left, visit);
}

/// On walls (integer phi on a part or a pair), the degree of a leg is not
/// unique; the intersection number must not depend on the choice. For each
/// partition touching a wall this recomputes the formula under every
/// admissible +1 bump of wall legs and wall pairs, and under every
/// reordering of the four parts, and demands the same value. Scans at
/// most `max_curves` partitions.
pub fn check_wall_independence(w: &WeightData, max_curves: u64) -> Result<CheckReport> {
    if w.d() == 1 {
        return Err(Error::DegreeOne);
    }
    if w.n() < 5 {
        return Err(Error::NTooSmall {
            what: "check_wall_independence",
            n: w.n(),
            min: 5,
        });
    }
    let mut report = CheckReport::new("wall-independence");
    let n = w.n();
    let d = w.d();
    let mut scanned = 0u64;
    let mut on_walls = 0u64;
    let mut failure: Option<String> = None;

    each_partition4(n, max_curves, &mut |blocks| {
        scanned += 1;
        let wall_legs: Vec<usize> = (0..4).filter(|&i| on_wall(&blocks[i], w)).collect();
        let wall_pairs: Vec<usize> = (0..3)
            .filter(|&i| {
                let mut union = blocks[i].clone();
                union.extend_from_slice(&blocks[3]);
                on_wall(&union, w)
            })
            .collect();
        if wall_legs.is_empty() && wall_pairs.is_empty() {
            return true;
        }
        on_walls += 1;
        let f = FCurve::new(n, blocks.clone()).expect("blocks partition 1..=n");
        let legs = LegDegrees::new(&f, w).expect("matching n");
        let base = intersect_with_degrees(&f, w, &legs);

        for lmask in 0u32..(1 << wall_legs.len()) {
            for pmask in 0u32..(1 << wall_pairs.len()) {
                if lmask == 0 && pmask == 0 {
                    continue;
                }
                let mut s = legs.sigma();
                for (bit, &i) in wall_legs.iter().enumerate() {
                    if lmask & (1 << bit) != 0 {
                        s[i] += 1;
                    }
                }
                let mut p = legs.pair_sigma();
                for (bit, &i) in wall_pairs.iter().enumerate() {
                    if pmask & (1 << bit) != 0 {
                        p[i] += 1;
                    }
                }
                if s.iter().sum::<i64>() > d || p.iter().any(|&pi| pi > d) {
                    continue;
                }
                let bumped = LegDegrees::from_degrees(d, s, p);
                report.checked += 1;
                let val = intersect_with_degrees(&f, w, &bumped);
                if val != base {
                    failure = Some(format!(
                        "{f}: bumped legs {lmask:#b} pairs {pmask:#b} gave {val}, canonical {base}"
                    ));
                    return false;
                }
            }
        }

        for order in [[1, 2, 3, 0], [2, 3, 0, 1], [3, 0, 1, 2], [1, 0, 3, 2]] {
            let rotated = f.permuted(order);
            let rlegs = LegDegrees::new(&rotated, w).expect("matching n");
            report.checked += 1;
            let val = intersect_with_degrees(&rotated, w, &rlegs);
            if val != base {
                failure = Some(format!(
                    "{f}: part order {order:?} gave {val}, canonical {base}"
                ));
                return false;
            }
        }
        true
    });

    report.details.insert("curves_scanned".into(), scanned.to_string());
    report.details.insert("curves_on_walls".into(), on_walls.to_string());
    if let Some(witness) = failure {
        report.fail(witness);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::veronese::standard_weights;

    #[test]
    fn cb_vector_spot_values() {
        let v = cb_vector(1, 3).unwrap();
        assert_eq!(v.values(), &[rat_int(1), rat_int(0), rat_int(1)]);
        let v = cb_vector(2, 4).unwrap();
        assert_eq!(
            v.values(),
            &[rat_int(0), rat_int(4), rat_int(0), rat_int(4)]
        );
    }

    #[test]
    fn poscomb_known_decompositions() {
        let d = poscomb_decompose(1, 3).unwrap();
        let expect: Vec<(i64, Rational)> = vec![(1, rat_int(2)), (3, rat_int(0))];
        assert_eq!(
            d.coefficients.clone().into_iter().collect::<Vec<_>>(),
            expect
        );
        assert!(d.residual.values().iter().all(|r| r.is_zero()));

        let d = poscomb_decompose(2, 4).unwrap();
        let expect: Vec<(i64, Rational)> = vec![(2, rat_int(12)), (4, rat_int(0))];
        assert_eq!(d.coefficients.into_iter().collect::<Vec<_>>(), expect);

        // single-candidate case: coefficient (ell+1) * t_g
        let d = poscomb_decompose(4, 4).unwrap();
        assert_eq!(
            d.coefficients.into_iter().collect::<Vec<_>>(),
            vec![(4, rat_int(5))]
        );
    }

    #[test]
    fn poscomb_telescoping_oracle() {
        // consecutive triangular equations differ by one candidate, so
        // c_j = (j+1) (t_j - t_{j-2}) with t_{ell-2} read as 0
        for g in 1..=7i64 {
            for ell in 1..=g {
                let d = poscomb_decompose(ell, g).unwrap();
                let t = cb_vector(ell, g).unwrap();
                let mut j = ell;
                while j <= g {
                    let above = if j - 2 >= 1 {
                        t.value((j - 2) as usize).clone()
                    } else {
                        rat_int(0)
                    };
                    let expect = (t.value(j as usize) - above) * rat_int(j + 1);
                    assert_eq!(d.coefficients[&j], expect, "ell = {ell}, g = {g}, j = {j}");
                    j += 2;
                }
            }
        }
    }

    #[test]
    fn increasing_holds() {
        assert!(check_increasing(1, 5).unwrap().pass);
        assert!(check_increasing(2, 6).unwrap().pass);
        let vacuous = check_increasing(4, 4).unwrap();
        assert!(vacuous.pass);
        assert!(check_increasing(6, 5).is_err());
    }

    #[test]
    fn determinants_nonnegative() {
        assert!(check_determinant_lemma(3, 12).unwrap().pass);
        assert!(check_determinant_lemma(1, 10).unwrap().pass);
        assert!(check_determinant_lemma(0, 10).is_err());
        assert!(check_determinant_lemma(3, 1).is_err());
    }

    #[test]
    fn same_face_cases() {
        assert!(check_same_face(2, 3).unwrap().pass);
        assert!(check_same_face(1, 2).unwrap().pass);
        assert!(check_same_face(3, 5).unwrap().pass);
        assert_eq!(check_same_face(3, 3), Err(Error::DegreeOne));
    }

    #[test]
    fn proportionality_cases() {
        let r = check_proportionality(1, 3).unwrap();
        assert!(r.pass);
        assert_eq!(r.details["ratio"], "2");
        let r = check_proportionality(2, 4).unwrap();
        assert!(r.pass);
        assert_eq!(r.details["ratio"], "12");
        let r = check_proportionality(3, 5).unwrap();
        assert!(r.pass);
        assert_eq!(r.details["proportional"], "false");
        // single active coordinate: proportional no matter the level
        let r = check_proportionality(3, 3).unwrap();
        assert!(r.pass);
        assert_eq!(r.details["proportional"], "true");
    }

    #[test]
    fn kequalsell_cases() {
        assert!(check_kequalsell(2, 8).unwrap().pass);
        assert!(check_kequalsell(1, 10).unwrap().pass);
        assert!(check_kequalsell(4, 12).unwrap().pass);
        assert!(check_kequalsell(2, 7).is_err());
        assert!(check_kequalsell(2, 4).is_err());
    }

    #[test]
    fn wall_independence_standard_cases() {
        // walls are present when g and ell share parity
        let w = standard_weights(1, 3).unwrap();
        let r = check_wall_independence(&w, 10_000).unwrap();
        assert!(r.pass);
        assert!(r.checked > 0);

        let w = standard_weights(2, 4).unwrap();
        let r = check_wall_independence(&w, 10_000).unwrap();
        assert!(r.pass);
        assert!(r.checked > 0);

        // no integer phi anywhere: vacuous pass
        let w = WeightData::new(2, rat(1, 7), vec![rat(10, 21); 6]).unwrap();
        let r = check_wall_independence(&w, 10_000).unwrap();
        assert!(r.pass);
        assert_eq!(r.checked, 0);

        assert!(check_wall_independence(&standard_weights(3, 3).unwrap(), 10).is_err());
    }

    #[test]
    fn partition_enumeration_counts() {
        let mut count = 0u64;
        each_partition4(6, u64::MAX, &mut |_| {
            count += 1;
            true
        });
        assert_eq!(count, 65); // Stirling number S(6, 4)
        let mut capped = 0u64;
        each_partition4(8, 10, &mut |_| {
            capped += 1;
            true
        });
        assert_eq!(capped, 10);
    }
}
