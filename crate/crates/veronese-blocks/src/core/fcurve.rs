use std::fmt;

use crate::{Error, Result};

/// Number of symmetric basis curves (and boundary basis divisors) for n
/// marked points: g = floor(n/2) - 1.
pub fn basis_len(n: usize) -> usize {
    n / 2 - 1
}

/// An F-curve F(A1, A2, A3, A4): an ordered partition of {1..n} into four
/// nonempty parts. The numerical class depends only on the parts, not their
/// order, but several formulas single out the last part, so the order is
/// kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FCurve {
    n: usize,
    parts: [Vec<usize>; 4],
}

impl FCurve {
    /// Validates that the four parts are nonempty, disjoint, and cover
    /// {1..n}. Labels are 1-based; each part is stored sorted.
    pub fn new(n: usize, parts: [Vec<usize>; 4]) -> Result<FCurve> {
        let mut seen = vec![false; n + 1];
        let mut total = 0usize;
        for part in &parts {
            if part.is_empty() {
                return Err(Error::InvalidPartition(format!(
                    "empty part in F-curve partition of {{1..{n}}}"
                )));
            }
            for &label in part {
                if label == 0 || label > n {
                    return Err(Error::InvalidPartition(format!(
                        "label {label} outside {{1..{n}}}"
                    )));
                }
                if seen[label] {
                    return Err(Error::InvalidPartition(format!(
                        "label {label} appears twice"
                    )));
                }
                seen[label] = true;
            }
            total += part.len();
        }
        if total != n {
            return Err(Error::InvalidPartition(format!(
                "parts cover {total} of {n} labels"
            )));
        }
        let mut parts = parts;
        for part in &mut parts {
            part.sort_unstable();
        }
        Ok(FCurve { n, parts })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[Vec<usize>; 4] {
        &self.parts
    }

    /// Part sizes in nondecreasing order.
    pub fn profile(&self) -> [usize; 4] {
        let mut sizes = [0usize; 4];
        for (size, part) in sizes.iter_mut().zip(&self.parts) {
            *size = part.len();
        }
        sizes.sort_unstable();
        sizes
    }

    /// Same partition with the parts reordered. `order` must be a
    /// permutation of 0..4.
    pub fn permuted(&self, order: [usize; 4]) -> FCurve {
        let mut hit = [false; 4];
        for &i in &order {
            hit[i] = true;
        }
        assert!(hit.iter().all(|&h| h), "order must be a permutation of 0..4");
        FCurve {
            n: self.n,
            parts: order.map(|i| self.parts[i].clone()),
        }
    }
}

impl fmt::Display for FCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F(")?;
        for (i, part) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, label) in part.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{label}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, ")")
    }
}

/// The numerical class of an F-curve on the symmetric quotient: only the
/// multiset of part sizes. Stored in nondecreasing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SymmetricFCurve {
    n: usize,
    profile: [usize; 4],
}

impl SymmetricFCurve {
    pub fn new(n: usize, profile: [usize; 4]) -> Result<SymmetricFCurve> {
        if profile.contains(&0) || profile.iter().sum::<usize>() != n {
            return Err(Error::InvalidProfile {
                n,
                profile: profile.to_vec(),
            });
        }
        let mut profile = profile;
        profile.sort_unstable();
        Ok(SymmetricFCurve { n, profile })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn profile(&self) -> [usize; 4] {
        self.profile
    }

    /// A concrete representative with consecutive label blocks:
    /// A1 = {1..n1}, A2 = {n1+1..n1+n2}, and so on.
    pub fn representative(&self) -> FCurve {
        let mut parts: [Vec<usize>; 4] = Default::default();
        let mut next = 1usize;
        for (part, &size) in parts.iter_mut().zip(&self.profile) {
            part.extend(next..next + size);
            next += size;
        }
        FCurve {
            n: self.n,
            parts,
        }
    }
}

impl fmt::Display for SymmetricFCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.profile;
        write!(f, "F_{{{a},{b},{c},{d}}}")
    }
}

/// The symmetric F-curve with the given part sizes, normalized.
pub fn fcurve_from_profile(n: usize, profile: [usize; 4]) -> Result<SymmetricFCurve> {
    SymmetricFCurve::new(n, profile)
}

/// The basis curves F_1..F_g, where F_j has profile {1, 1, j, n-j-2} and
/// g = floor(n/2) - 1.
pub fn symmetric_basis(n: usize) -> Result<Vec<SymmetricFCurve>> {
    if n < 4 {
        return Err(Error::NTooSmall {
            what: "symmetric_basis",
            n,
            min: 4,
        });
    }
    (1..=basis_len(n))
        .map(|j| SymmetricFCurve::new(n, [1, 1, j, n - j - 2]))
        .collect()
}
