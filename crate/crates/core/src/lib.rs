//! Binomial coefficients modulo a prime via base-`p` digits, and executable
//! checks of every step of an elementary proof of Lucas' theorem.
//!
//! Everything here is `no_std` (with `alloc`): numbers are either word-sized
//! residues or [`num_bigint::BigUint`] values. IO, threads, process exit codes
//! and environment handling live in the `lucaskit` crate.
//!
//! ```
//! use lucaskit_core::{lucas, PrimeModulus};
//!
//! let p = PrimeModulus::new(7).unwrap();
//! let r = lucas::lucas_binom_str("10", "3", p).unwrap();
//! assert_eq!(r.value(), 1); // C(10, 3) = 120 = 17 * 7 + 1
//! ```

#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod error;
pub mod exact;
pub mod lucas;
pub mod polymod;
mod prime;
pub mod qfactor;
pub mod radix;
pub mod verify;

pub use error::{Error, Result};
pub use prime::{CompositeWitness, PrimeModulus, Residue};

/// Arbitrary-precision natural number used for operands and exact oracles.
pub type ExactNat = num_bigint::BigUint;
