//! Exact intersection theory for two families of semi-ample divisors on the
//! moduli space of stable n-pointed rational curves:
//!
//! - [`veronese`]: divisors pulled back from GIT quotients of pointed
//!   degree-d curves, determined by an allowable weight datum
//!   (gamma, a_1..a_n). Leg-degree functions, contraction predicates, the
//!   full F-curve intersection formula, and boundary-basis classes.
//! - [`confblocks`]: sl2 conformal-block ranks at level l computed by fusion
//!   path counting, vanishing criteria, and F-curve intersection numbers for
//!   the omega_1^n and l*omega_1^n weight families.
//! - [`verify`]: executable cross-checks connecting the two families
//!   (nonnegative cone decompositions, monotonicity, determinant
//!   inequalities, wall independence), each reported with a witness.
//! - [`core`]: rationals, F-curves, and the symmetric basis containers the
//!   other modules share.
//!
//! Everything is exact: scalars are arbitrary-precision rationals, ranks are
//! arbitrary-precision integers, and no floating point appears anywhere.
//! All types are immutable values and all operations are pure functions, so
//! the whole API is safe to drive from any number of threads.

pub mod confblocks;
pub mod core;
mod error;
pub mod veronese;
pub mod verify;

pub use error::{Error, Result};
