//! Lattices, wave functions and the representation chain x ↔ p ↔ ξ ↔ θ.

mod fourier;
mod grid;
mod pseudo;
mod wavefunction;

pub use fourier::{spectral_derivative, to_momentum, to_position, Spectral};
pub use grid::{SpatialGrid, ThetaGrid};
pub use pseudo::{
    nonuniform_sum, pseudoenergy, pseudotime_amplitude, theta_step_resolution, theta_step_state, to_pseudoenergy,
    PseudoSamples, StepResolution, STEP_MASS_REQUIRED,
};
pub use wavefunction::{Representation, WaveFunction};

pub(crate) use pseudo::pseudo_from_momentum;
