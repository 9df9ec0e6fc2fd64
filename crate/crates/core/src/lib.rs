//! Arrival-time laboratory for a free particle on a line (units with ħ = m = 1).
//!
//! The crate is organised around four layers:
//!
//! * [`repspace`]: the spatial lattice, wave functions, and the chain of
//!   representations position ↔ momentum ↔ pseudoenergy ↔ pseudotime.
//! * [`propagate`]: free evolution, evolution generated by the pseudoenergy
//!   `sgn(p) p²/2`, and Strang-split evolution with a complex absorbing screen.
//! * [`arrival`]: the pseudotime spectral density, the incoherent
//!   right/left-mover POVM density, the classical comparison formula and the
//!   probability current.
//! * [`experiments`]: packet constructors and the numerical experiments built
//!   on top of the above (odd packets, θ-step states, covariance residuals,
//!   Bohmian trajectories).

// `!(x > 0.0)` is deliberate throughout: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arrival;
pub mod error;
pub mod experiments;
pub mod propagate;
pub mod repspace;

pub use error::{Error, Result};
pub use num_complex::Complex64;
