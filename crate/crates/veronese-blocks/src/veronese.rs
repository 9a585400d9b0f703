//! Veronese quotient linearizations and their divisor numerics: the degree
//! functions phi and sigma, contraction predicates, the exact F-curve
//! intersection formula, and symmetric divisor classes in the boundary
//! basis.
//!
//! A linearization is a degree d, a swap parameter gamma, and marked-point
//! weights a_1..a_n tied together by the allowability identity
//! (d-1)*gamma + sum(a_i) = d+1. Everything downstream is a pure function
//! of that data.

use num::bigint::BigInt;
use num::traits::{ToPrimitive, Zero};

use crate::core::{
    ceil_big, rat, rat_int, FCurve, IntersectionVector, Rational, SymmetricDivisorClass,
    SymmetricFCurve,
};
use crate::{Error, Result};

/// An allowable linearization (d, gamma, a_1..a_n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightData {
    d: i64,
    gamma: Rational,
    weights: Vec<Rational>,
    total: Rational,
}

impl WeightData {
    /// Checks d >= 1, 0 <= gamma < 1, 0 < a_i < 1, and the exact identity
    /// (d-1)*gamma + sum(a_i) = d+1.
    pub fn new(d: i64, gamma: Rational, weights: Vec<Rational>) -> Result<WeightData> {
        if d < 1 {
            return Err(Error::OutOfRange(format!(
                "degree d must be at least 1, got {d}"
            )));
        }
        if gamma < rat_int(0) || gamma >= rat_int(1) {
            return Err(Error::NotAllowable(format!(
                "gamma must satisfy 0 <= gamma < 1, got {gamma}"
            )));
        }
        for (i, a) in weights.iter().enumerate() {
            if *a <= rat_int(0) || *a >= rat_int(1) {
                return Err(Error::NotAllowable(format!(
                    "weight a_{} = {a} outside (0, 1)",
                    i + 1
                )));
            }
        }
        let total: Rational = weights.iter().sum();
        let lhs = rat_int(d - 1) * &gamma + &total;
        if lhs != rat_int(d + 1) {
            return Err(Error::NotAllowable(format!(
                "(d-1)*gamma + sum(a) = {lhs}, need d+1 = {}",
                d + 1
            )));
        }
        Ok(WeightData {
            d,
            gamma,
            weights,
            total,
        })
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// w = sum of all weights.
    pub fn total_weight(&self) -> &Rational {
        &self.total
    }

    /// w_J = sum of weights over a set of 1-based labels.
    pub fn subset_weight(&self, labels: &[usize]) -> Rational {
        let mut sum = Rational::zero();
        for &i in labels {
            assert!(i >= 1 && i <= self.n(), "label {i} outside 1..={}", self.n());
            sum += &self.weights[i - 1];
        }
        sum
    }
}

/// The linearization (d, gamma, a) = (g+1-ell, (ell-1)/(ell+1),
/// (1/(ell+1))^(2g+2)) on 2g+2 points, for 1 <= ell <= g.
pub fn standard_weights(ell: i64, g: i64) -> Result<WeightData> {
    if ell < 1 || ell > g {
        return Err(Error::OutOfRange(format!(
            "standard weights need 1 <= ell <= g, got ell = {ell}, g = {g}"
        )));
    }
    let n = 2 * g + 2;
    WeightData::new(
        g + 1 - ell,
        rat(ell - 1, ell + 1),
        vec![rat(1, ell + 1); n as usize],
    )
}

/// phi(J) = (w_J - 1)/(1 - gamma).
pub fn phi(labels: &[usize], w: &WeightData) -> Rational {
    (w.subset_weight(labels) - rat_int(1)) / (rat_int(1) - w.gamma())
}

/// Degree of the leg over J: 0 when w_J < 1, d when w_J > w - 1, and
/// ceil(phi(J)) in between. The clamp below is exactly that three-way
/// split (phi < 0, phi > d-1, and 0 < phi < d-1 respectively) and extends
/// the middle branch continuously to the two boundary weights w_J = 1 and
/// w_J = w - 1, which the three-way split leaves unassigned.
pub fn sigma(labels: &[usize], w: &WeightData) -> i64 {
    let c = ceil_big(&phi(labels, w));
    c.max(BigInt::zero())
        .min(BigInt::from(w.d()))
        .to_i64()
        .expect("sigma lies in 0..=d")
}

/// True when J sits on a wall: 1 <= w_J <= w - 1 and phi(J) is an integer,
/// so the semistable degree of the leg over J is not unique.
pub fn on_wall(labels: &[usize], w: &WeightData) -> bool {
    let wj = w.subset_weight(labels);
    wj >= rat_int(1) && wj <= w.total_weight() - rat_int(1) && phi(labels, w).is_integer()
}

/// Leg and pair degrees entering the intersection formula: sigma of each
/// part, sigma of each union A_i u A_4, the spine degree b, and the
/// connecting degrees c_i4.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LegDegrees {
    sigma: [i64; 4],
    pair_sigma: [i64; 3],
    b: i64,
    c: [i64; 3],
}

impl LegDegrees {
    pub fn new(f: &FCurve, w: &WeightData) -> Result<LegDegrees> {
        if f.n() != w.n() {
            return Err(Error::SizeMismatch(format!(
                "F-curve on {} points paired with weights on {} points",
                f.n(),
                w.n()
            )));
        }
        let parts = f.parts();
        let leg = [
            sigma(&parts[0], w),
            sigma(&parts[1], w),
            sigma(&parts[2], w),
            sigma(&parts[3], w),
        ];
        let mut pair = [0i64; 3];
        for i in 0..3 {
            let mut union = parts[i].clone();
            union.extend_from_slice(&parts[3]);
            pair[i] = sigma(&union, w);
        }
        Ok(Self::from_degrees(w.d(), leg, pair))
    }

    /// Assembles b and c from explicitly chosen leg and pair degrees; used
    /// to recompute intersections under alternative semistable degree
    /// distributions on walls.
    pub(crate) fn from_degrees(d: i64, sigma: [i64; 4], pair_sigma: [i64; 3]) -> LegDegrees {
        let b = d - sigma.iter().sum::<i64>();
        let mut c = [0i64; 3];
        for i in 0..3 {
            c[i] = pair_sigma[i] - sigma[i] - sigma[3];
        }
        LegDegrees {
            sigma,
            pair_sigma,
            b,
            c,
        }
    }

    pub fn sigma(&self) -> [i64; 4] {
        self.sigma
    }

    pub fn pair_sigma(&self) -> [i64; 3] {
        self.pair_sigma
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn c(&self) -> [i64; 3] {
        self.c
    }
}

/// True when the linearization contracts the F-curve: sum of the four leg
/// degrees equals d.
pub fn veronese_contracts(f: &FCurve, w: &WeightData) -> Result<bool> {
    let legs = LegDegrees::new(f, w)?;
    Ok(legs.sigma().iter().sum::<i64>() == w.d())
}

/// True when the Hassett space for these weights contracts the F-curve:
/// some leg's complement has total weight at most 1.
pub fn hassett_contracts(f: &FCurve, w: &WeightData) -> Result<bool> {
    if f.n() != w.n() {
        return Err(Error::SizeMismatch(format!(
            "F-curve on {} points paired with weights on {} points",
            f.n(),
            w.n()
        )));
    }
    Ok(f.parts()
        .iter()
        .any(|part| w.total_weight() - w.subset_weight(part) <= rat_int(1)))
}

/// Intersection number of the divisor attached to an allowable
/// linearization with an F-curve. Requires d >= 2 and n >= 5.
pub fn intersect(f: &FCurve, w: &WeightData) -> Result<Rational> {
    if f.n() != w.n() {
        return Err(Error::SizeMismatch(format!(
            "F-curve on {} points paired with weights on {} points",
            f.n(),
            w.n()
        )));
    }
    if f.n() < 5 {
        return Err(Error::NTooSmall {
            what: "intersect",
            n: f.n(),
            min: 5,
        });
    }
    if w.d() == 1 {
        return Err(Error::DegreeOne);
    }
    let legs = LegDegrees::new(f, w)?;
    Ok(intersect_with_degrees(f, w, &legs))
}

/// Intersection via a symmetric profile, evaluated on a concrete
/// representative.
pub fn intersect_symmetric(f: &SymmetricFCurve, w: &WeightData) -> Result<Rational> {
    intersect(&f.representative(), w)
}

/// The four-term intersection formula, with the degrees supplied by the
/// caller. No algebraic simplification: the terms are evaluated exactly
/// as grouped,
///
///   (sum c_i4^2) w/(2d)
///   + (w_A4 - (w/d) s4) b
///   + sum_i ((w/d)(s_i + s4) - w_Ai - w_A4) c_i4
///   - (1+gamma)/(2d) (sum_i s_i (d - s_i) - sum_i p_i (d - p_i))
///
/// writing s for leg degrees and p for pair degrees.
pub(crate) fn intersect_with_degrees(f: &FCurve, w: &WeightData, legs: &LegDegrees) -> Rational {
    let d_int = w.d();
    let d = rat_int(d_int);
    let total = w.total_weight();
    let parts = f.parts();
    let wa: Vec<Rational> = parts.iter().map(|p| w.subset_weight(p)).collect();
    let s = legs.sigma();
    let p = legs.pair_sigma();
    let c = legs.c();

    let sum_c_sq: i64 = c.iter().map(|&ci| ci * ci).sum();
    let term1 = rat_int(sum_c_sq) * total / (rat_int(2) * &d);

    let term2 = (&wa[3] - total / &d * rat_int(s[3])) * rat_int(legs.b());

    let mut term3 = Rational::zero();
    for i in 0..3 {
        term3 += (total / &d * rat_int(s[i] + s[3]) - &wa[i] - &wa[3]) * rat_int(c[i]);
    }

    let leg_sum: i64 = s.iter().map(|&si| si * (d_int - si)).sum();
    let pair_sum: i64 = p.iter().map(|&pi| pi * (d_int - pi)).sum();
    let term4 =
        (rat_int(1) + w.gamma()) / (rat_int(2) * &d) * rat_int(leg_sum - pair_sum);

    term1 + term2 + term3 - term4
}

/// Closed form for the intersection of the standard linearization's divisor
/// with the basis curve F_{1,1,i,2g-i}: 1/(ell+1) when i and ell have the
/// same parity and i >= ell, else 0.
pub fn jensen_closed_form(ell: i64, g: i64, i: i64) -> Result<Rational> {
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
    if i % 2 == ell % 2 && i >= ell {
        Ok(rat(1, ell + 1))
    } else {
        Ok(rat_int(0))
    }
}

/// The closed-form intersection vector (F_1..F_g) of the standard
/// linearization's divisor on 2g+2 points.
pub fn jensen_vector(ell: i64, g: i64) -> Result<IntersectionVector> {
    let values = (1..=g)
        .map(|i| jensen_closed_form(ell, g, i))
        .collect::<Result<Vec<_>>>()?;
    IntersectionVector::new((2 * g + 2) as usize, values)
}

/// Class of a symmetric divisor in the boundary basis B_2..B_{g+1}, from
/// its intersection vector against F_1..F_g. The a_g term is halved when
/// n is even.
pub fn symmetric_class(a: &IntersectionVector) -> Result<SymmetricDivisorClass> {
    let n = a.n();
    if n < 5 {
        return Err(Error::NTooSmall {
            what: "symmetric_class",
            n,
            min: 5,
        });
    }
    let g = a.len();
    let nm1 = rat_int(n as i64 - 1);
    let mut coeffs = Vec::with_capacity(g);
    for r in 1..=g {
        let tri = rat_int((r * (r + 1)) as i64) / &nm1;
        let mut br = Rational::zero();
        for j in 1..r {
            br += (&tri - rat_int((r - j) as i64)) * a.value(j);
        }
        if n % 2 == 1 {
            for j in r..=g {
                br += &tri * a.value(j);
            }
        } else {
            for j in r..g {
                br += &tri * a.value(j);
            }
            br += &tri / rat_int(2) * a.value(g);
        }
        coeffs.push(br);
    }
    SymmetricDivisorClass::new(n, coeffs)
}

fn ceil_plus(x: &Rational) -> BigInt {
    ceil_big(x).max(BigInt::zero())
}

fn floor_plus(x: &Rational) -> BigInt {
    x.floor().to_integer().max(BigInt::zero())
}

/// Closed form for the boundary-basis class of the standard
/// linearization's divisor on n = 2g+2 points:
/// b_r = ((r(r+1)/(n-1)) (g-ell+1)/2 - ceil+((r-ell+1)/2) floor+((r-ell+1)/2)) / (ell+1)
/// where ceil+ and floor+ are the nonnegative parts.
pub fn jensen_app_class(ell: i64, g: i64) -> Result<SymmetricDivisorClass> {
    if ell < 1 || ell > g {
        return Err(Error::OutOfRange(format!(
            "need 1 <= ell <= g, got ell = {ell}, g = {g}"
        )));
    }
    let n = 2 * g + 2;
    let nm1 = rat_int(n - 1);
    let mut coeffs = Vec::with_capacity(g as usize);
    for r in 1..=g {
        let tri = rat_int(r * (r + 1)) / &nm1;
        let x = rat(r - ell + 1, 2);
        let pos = Rational::from(ceil_plus(&x) * floor_plus(&x));
        coeffs.push((tri * rat(g - ell + 1, 2) - pos) / rat_int(ell + 1));
    }
    SymmetricDivisorClass::new(n as usize, coeffs)
}
