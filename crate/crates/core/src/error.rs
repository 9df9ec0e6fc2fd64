use thiserror::Error;

use crate::repspace::Representation;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("expected a wave function in the {expected} representation, got {found}")]
    Representation {
        expected: Representation,
        found: Representation,
    },

    #[error("invalid input: {0}")]
    Input(String),

    #[error(
        "grid holds only {:.2}% of the step-state mass (need {:.0}%): momentum cutoff {cutoff:.4}, \
         about {needed:.4} required",
        held * 100.0,
        required * 100.0
    )]
    Resolution {
        held: f64,
        required: f64,
        cutoff: f64,
        needed: f64,
    },

    #[error("unresolvable packet: {0}")]
    Unresolvable(String),

    #[error("amplitudes became non-finite at step {step} (t = {time})")]
    NumericalBlowup { step: usize, time: f64 },

    #[error("arrival time is undefined for zero momentum")]
    UndefinedArrival,

    #[error("trajectory reached a node (|psi|^2 = {density:e}) at x = {position}, t = {time}")]
    NodeProximity { position: f64, time: f64, density: f64 },

    #[error("shift {shift} exceeds the axis window of width {width}")]
    Window { shift: f64, width: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}
