use crate::arrival::{kijowski_with, ArrivalDistribution};
use crate::error::{input, Error, Result};
use crate::propagate::{free_evolve, pseudoenergy_evolve};
use crate::repspace::{Spectral, ThetaGrid, WaveFunction};

/// L¹ residuals of the time-shift law for the pseudotime density `D`.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceResiduals {
    /// `‖D(e^{-isΞ}ψ) - D(ψ)(· + s)‖₁`
    pub xi: f64,
    /// `‖D(e^{-isH}ψ) - D(ψ)(· + s)‖₁`
    pub h: f64,
    pub shifted: ArrivalDistribution,
    pub pseudo: ArrivalDistribution,
    pub free: ArrivalDistribution,
}

/// Evolving by `s` should move every arrival `s` earlier: the reference
/// `D(ψ)(θ + s)` is evaluated directly on the shifted axis, so no
/// interpolation enters the residuals.
pub fn covariance_test(psi: &WaveFunction, s: f64, tg: &ThetaGrid) -> Result<CovarianceResiduals> {
    if s == 0.0 || !s.is_finite() {
        return Err(input(format!("shift must be finite and non-zero, got {s}")));
    }
    if s.abs() >= tg.width() {
        return Err(Error::Window {
            shift: s,
            width: tg.width(),
        });
    }
    let spectral = Spectral::new(*psi.grid());
    let shifted = kijowski_with(&spectral, psi, &tg.shifted(s))?;
    let pseudo = kijowski_with(&spectral, &pseudoenergy_evolve(psi, s), tg)?;
    let free = kijowski_with(&spectral, &free_evolve(psi, s), tg)?;
    Ok(CovarianceResiduals {
        xi: pseudo.l1_distance(&shifted)?,
        h: free.l1_distance(&shifted)?,
        shifted,
        pseudo,
        free,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::{make_packet, PacketSpec};
    use crate::repspace::SpatialGrid;

    #[test]
    fn shift_must_be_nonzero_and_inside_window() {
        let g = SpatialGrid::new(512, -40.0, 80.0 / 512.0).unwrap();
        let psi = make_packet(&PacketSpec::gaussian(-10.0, 1.0, 3.0), &g).unwrap();
        let tg = ThetaGrid::spanning(0.0, 6.0, 61).unwrap();
        assert!(matches!(covariance_test(&psi, 0.0, &tg), Err(Error::Input(_))));
        assert!(matches!(covariance_test(&psi, 7.0, &tg), Err(Error::Window { .. })));
    }
}
