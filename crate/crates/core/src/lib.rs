//! Exact computations with weight modules over rank ≤ 2 semisimple Lie algebras.
//!
//! The crate builds concrete admissible weight modules (parabolically induced
//! modules, simple highest weight modules, the cuspidal `sl(2)` family, duals
//! and twists), and computes — weight block by weight block, entirely over the
//! rationals — their nilradical (co)homology, Dirac operators and Dirac
//! cohomology, spin and Dirac indices, and Euler-Poincaré pairings.
//!
//! Everything is exact: scalars are arbitrary-precision rationals, kernels and
//! images come from deterministic Gaussian elimination, and each weight block
//! is a finite-dimensional computation in its own right (windows only select
//! which blocks get enumerated, they never truncate a block).
//!
//! Module map:
//!
//! * [`rootdata`] — root systems, Weyl groups, weights, parabolic data
//!   for types `A1`, `A1xA1`, `A2`, `B2`.
//! * [`liestruct`] — Chevalley basis with integer structure constants,
//!   brackets, PBW normal forms, the transpose anti-involution, and the
//!   conjugation expansion used by twisting.
//! * [`spinor`] — the spin module `∧u ⊗ C_{ρ(ū)}` with its Clifford action.
//! * [`wmod`] — weight-module constructors behind a uniform block-matrix
//!   interface.
//! * [`cohomology`] — Chevalley-Eilenberg complexes per weight block and the
//!   Dirac operators `C`, `C⁻`, `D = C + C⁻`.
//! * [`index`] — virtual characters, spin/Dirac indices, the index pairing.
//! * [`eppair`] — Euler-Poincaré pairings via the reduction formulas, and the
//!   pairing-equality verification harness.
//! * [`config`], [`exec`], [`report`] — the config-driven CLI front end.

pub mod cohomology;
pub mod config;
pub mod eppair;
pub mod error;
pub mod exec;
pub mod index;
pub mod liestruct;
pub mod matrix;
pub mod rational;
pub mod report;
pub mod rootdata;
pub mod spinor;
pub mod wmod;

pub use error::{Error, Result};
pub use rational::Q;
