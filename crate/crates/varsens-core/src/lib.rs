//! Variance-based global sensitivity analysis of expensive black-box responses.
//!
//! The crate covers the probabilistic workflow end to end:
//!
//! * [`design`] — uncertain parameter spaces, Latin hypercube designs and the
//!   coordinate transforms (unit ↔ physical ↔ standard Gaussian) used for
//!   preprocessing,
//! * [`surrogate`] — Gaussian process regression with a constant mean and a
//!   squared-exponential kernel, hyperparameters by maximum likelihood,
//! * [`sobol`] — first- and total-order Sobol' indices by pick-freeze Monte
//!   Carlo, with bootstrap and surrogate-uncertainty intervals, plus a
//!   low-dimensional quadrature oracle,
//! * [`model`] — the evaluable-model interface, analytic benchmark functions
//!   and a thick-walled-cylinder stand-in for a pressurized part.
//!
//! Everything is `no_std` (with `alloc`): all operations are pure functions
//! of their inputs and an explicit 64-bit seed, so results are reproducible
//! bit for bit. File formats, persistence and the command-line pipeline live
//! in the companion `varsens` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod design;
pub mod linalg;
pub mod model;
pub mod rng;
pub mod sobol;
pub mod surrogate;

mod float;
mod optim;

#[cfg(feature = "testutil")]
pub mod testutil;
