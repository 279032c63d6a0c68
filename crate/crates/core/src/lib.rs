//! Exact Ramanujan sums and sums of products of Ramanujan sums.
//!
//! The crate evaluates c_n(k), the functions E_G, R_G, R, g_r and T_a of
//! several variables, and the average-order constant α_r. Every quantity
//! has a slow definitional route alongside the fast multiplicative one, so
//! the two can be checked against each other (see [`verify`]).

pub mod arith;
pub mod asymptotics;
pub mod congruences;
pub mod error;
pub mod even;
pub mod ramanujan;
pub mod sums;
pub mod verify;

pub use arith::{ExactRational, FactoredNat, ModuliTuple};
pub use congruences::{CountStrategy, IntPolynomial, PolySystem, RootCount};
pub use error::{Error, Result};
pub use even::{FourierCoefficients, SEvenFunction};
pub use sums::{PrimePowerProfile, Route, ShiftVector};
