//! Exact algebra for the equivariant genus-0 Gromov–Witten potential of local
//! `P(1,2)` (the weighted blowup of `[C^2/Z_3]`) and for the change-of-variable
//! identities relating it to the potentials of `[C^2/Z_3]` and of the `A_2`
//! resolution.
//!
//! Everything here is exact: scalars live in `Q(ζ_12)` ([`Cyclo`]), equivariant
//! coefficients are rational functions of the torus weights `t1, t2`
//! ([`RatFun`]), and potentials are truncated multivariate power series
//! ([`Series`]). The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod cyclotomic;
mod error;
pub mod localization;
pub mod pcrc;
pub mod potentials;
pub mod ratfun;
pub mod rational;
pub mod report;
pub mod series;
pub mod verify;

pub use cyclotomic::Cyclo;
pub use error::{Error, Result};
pub use ratfun::{Poly2, RatFun};
pub use rational::Rational;
pub use series::{Image, Series, Var, VarSet};
