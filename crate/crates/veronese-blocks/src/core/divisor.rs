use std::fmt;

use num::traits::Zero;

use super::fcurve::basis_len;
use super::rational::Rational;
use crate::{Error, Result};

/// Intersection numbers of a symmetric divisor with the basis curves
/// F_1..F_g, g = floor(n/2) - 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionVector {
    n: usize,
    values: Vec<Rational>,
}

impl IntersectionVector {
    pub fn new(n: usize, values: Vec<Rational>) -> Result<IntersectionVector> {
        if n < 4 {
            return Err(Error::NTooSmall {
                what: "IntersectionVector",
                n,
                min: 4,
            });
        }
        if values.len() != basis_len(n) {
            return Err(Error::SizeMismatch(format!(
                "intersection vector for n = {n} needs {} entries, got {}",
                basis_len(n),
                values.len()
            )));
        }
        Ok(IntersectionVector { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value against F_j, 1-based j in 1..=g.
    pub fn value(&self, j: usize) -> &Rational {
        &self.values[j - 1]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Indices j with zero intersection.
    pub fn zero_set(&self) -> Vec<usize> {
        (1..=self.len())
            .filter(|&j| self.value(j).is_zero())
            .collect()
    }
}

impl fmt::Display for IntersectionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (j, v) in self.values.iter().enumerate() {
            if j > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// A symmetric divisor class written in the boundary basis B_2..B_{g+1};
/// coefficient r (1-based) multiplies B_{r+1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricDivisorClass {
    n: usize,
    coeffs: Vec<Rational>,
}

impl SymmetricDivisorClass {
    pub fn new(n: usize, coeffs: Vec<Rational>) -> Result<SymmetricDivisorClass> {
        if n < 4 {
            return Err(Error::NTooSmall {
                what: "SymmetricDivisorClass",
                n,
                min: 4,
            });
        }
        if coeffs.len() != basis_len(n) {
            return Err(Error::SizeMismatch(format!(
                "divisor class for n = {n} needs {} coefficients, got {}",
                basis_len(n),
                coeffs.len()
            )));
        }
        Ok(SymmetricDivisorClass { n, coeffs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of B_{r+1}, 1-based r in 1..=g.
    pub fn coeff(&self, r: usize) -> &Rational {
        &self.coeffs[r - 1]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }
}

impl fmt::Display for SymmetricDivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (r, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            write!(f, "({c})*B_{}", r + 2)?;
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}
