use num::bigint::BigInt;
use num::traits::{Signed, Zero};

/// Arbitrary-precision rational. All arithmetic in the crate is exact.
pub type Rational = num::rational::BigRational;

/// p/q as a `Rational`. Panics if q = 0.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// n as a `Rational`.
pub fn rat_int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Exact ceiling of a rational as a `BigInt`.
pub fn ceil_big(r: &Rational) -> BigInt {
    let (quot, rem) = (r.numer() / r.denom(), r.numer() % r.denom());
    if rem.is_zero() || r.is_negative() {
        quot
    } else {
        quot + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceil_matches_integer_cases() {
        assert_eq!(ceil_big(&rat(7, 2)), BigInt::from(4));
        assert_eq!(ceil_big(&rat(-7, 2)), BigInt::from(-3));
        assert_eq!(ceil_big(&rat(6, 2)), BigInt::from(3));
        assert_eq!(ceil_big(&rat(-6, 2)), BigInt::from(-3));
        assert_eq!(ceil_big(&rat(0, 5)), BigInt::from(0));
        assert_eq!(ceil_big(&rat(1, 1000)), BigInt::from(1));
        assert_eq!(ceil_big(&rat(-1, 1000)), BigInt::from(0));
    }
}
