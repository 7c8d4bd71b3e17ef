//! Exact-arithmetic verification engine for the critical parameter of the
//! Joseph ideal over the classical complex Lie algebras.
//!
//! The crate builds concrete index realizations of `so(n)`, `sp(2n)` and
//! `sl(n)`, constructs the special rank-6 tensors whose two inequivalent
//! reductions modulo the quadratic ideal pin the unique value of the ideal
//! parameter, and cross-checks the surrounding representation theory
//! (Cartan projections, Hom-space dimensions via Klimyk's formula, and the
//! differential-operator realization of the critical `sl(n)` quotient).
//!
//! Everything is computed over arbitrary-precision rationals; there is no
//! floating point and no tolerance anywhere. The crate is `no_std`
//! (with `alloc`); IO, the CLI and report formats live in the companion
//! `joseph-cli` crate.
#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod ideal;
pub mod lie;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod rep;
pub mod tensor;
pub mod weyl;

pub use rational::Rational;
pub use tensor::{DenseTensor, SlotPermutation, Variance};
