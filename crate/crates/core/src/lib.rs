//! Numerical laboratory for entanglement monogamy in cavity-reservoir systems.
//!
//! The crate is layered bottom-up:
//!
//! - [`tensor`]: dense complex matrices, qubit registers, partial traces and
//!   a Jacobi eigen-solver for Hermitian matrices up to 256 dimensions.
//! - [`model`]: the evolved cavity-reservoir states, W states and the
//!   single-pair damping map.
//! - [`measures`]: squared concurrences, linear-entropy tangles, residual
//!   entanglement and the pure three-tangle, plus closed forms.
//! - [`roof`]: a seeded convex-roof optimizer producing upper bounds for
//!   mixed-state tangles.
//! - [`audit`]: trajectories, plateau analytics, extremum search and the
//!   monogamy audits.
//!
//! ```
//! use monogamy_lab::model::{evolved_two_pair_state, InitialPairState};
//! use monogamy_lab::measures::residual_two_qubit;
//!
//! let init = InitialPairState::from_real(1.0 / 10f64.sqrt())?;
//! let state = evolved_two_pair_state(&init, std::f64::consts::LN_2)?;
//! let m = residual_two_qubit(&state, ("c1", "r1"))?;
//! assert!((m - 0.36).abs() < 1e-9);
//! # Ok::<(), monogamy_lab::Error>(())
//! ```

pub mod audit;
mod error;
pub mod measures;
pub mod model;
pub mod roof;
pub mod tensor;
pub mod tolerances;

pub use error::{Error, Result};
pub use num_complex::Complex64;
