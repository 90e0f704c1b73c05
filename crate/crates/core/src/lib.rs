//! Entanglement of two exchange-coupled spin-1/2 particles in a magnetic field
//! that differs between the two sites.
//!
//! The pair Hamiltonian is
//!
//! ```text
//! H = J σ₁·σ₂ + (B + b) σ₁ᶻ + (B − b) σ₂ᶻ
//! ```
//!
//! with `b` the inhomogeneity. Everything downstream is expressed through
//! `δ = b/J` and `ξ = √(1 + δ²) ≥ 1`.
//!
//! The crate is split into:
//!
//! * [`qmat`]: dense complex matrices, a cyclic Jacobi Hermitian eigensolver,
//!   spectral matrix functions, Kronecker products and partial traces.
//! * [`model`]: the pair Hamiltonian, its closed-form spectrum and the
//!   zero-temperature phase classification.
//! * [`entanglement`]: Wootters concurrence (general and X-state forms),
//!   pure-state concurrence and entanglement of formation.
//! * [`thermal`]: Gibbs states, closed-form thermal concurrence, the
//!   independent spectral oracle and threshold temperatures.
//! * [`chain`]: open/periodic chains of up to 8 sites, used to compare
//!   pairwise concurrence against the pair model with an effective `ξ`.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod chain;
pub mod entanglement;
mod error;
pub mod model;
pub mod qmat;
pub mod thermal;

pub use error::{Error, Result};

pub use num_complex::Complex64;
