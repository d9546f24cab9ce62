//! Exact-arithmetic kernel for verifying supercongruences of the
//! Catalan-Larcombe-French numbers.
//!
//! Everything in this crate is computed over arbitrary-precision integers and
//! rationals; there is no floating point and no tolerance anywhere. The crate
//! splits into four layers:
//!
//! - [`arith`]: big integers/rationals, prime-power moduli, canonical
//!   residues, modular inversion, and p-adic valuations.
//! - [`sequences`]: the named sequences (CLF numbers `P_n` in several closed
//!   forms, Zagier's `S_n`, Bernoulli `B_n`, Euler `E_n`, harmonic sums) with
//!   append-only memoization.
//! - [`identity`]: exact rational identities checked pointwise over a range.
//! - [`congruence`]: a registry of supercongruence checks, each an exact
//!   `lhs(p) ≡ rhs(p) (mod p^e)` claim, with a verifier that reports both
//!   residues and the p-adic valuation of the difference.
//!
//! The crate is `no_std` (with `alloc`); all IO, parallel sweeping, and file
//! formats live in the companion CLI crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod arith;
pub mod congruence;
pub mod identity;
pub mod sequences;

pub use arith::{Integer, Rational};
