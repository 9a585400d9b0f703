//! Shared building blocks:
//!
//! - [`Rational`] plus small constructors; every scalar in the crate is one,
//! - [`FCurve`] (an ordered partition of the marked points into four parts)
//!   and [`SymmetricFCurve`] (just the multiset of part sizes),
//! - the symmetric basis curves F_j = F_{1,1,j,n-j-2},
//! - containers for intersection vectors against that basis and for divisor
//!   classes in the boundary basis B_2..B_{g+1}.

mod divisor;
mod fcurve;
mod rational;

pub use divisor::{IntersectionVector, SymmetricDivisorClass};
pub use fcurve::{basis_len, fcurve_from_profile, symmetric_basis, FCurve, SymmetricFCurve};
pub use rational::{ceil_big, rat, rat_int, Rational};
