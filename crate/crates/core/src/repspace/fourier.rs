use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::{Representation, SpatialGrid, WaveFunction};
use crate::error::Result;

/// Cached FFT plans and phase tables for the unitary transform
/// `ψ̃(p) = (2π)^{-1/2} ∫ ψ(x) e^{-ipx} dx` on one grid.
#[derive(Clone)]
pub struct Spectral {
    grid: SpatialGrid,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    // dx/√(2π)·e^{-i p_k x_min}
    to_p: Vec<Complex64>,
    // dp/√(2π)·e^{+i p_k x_min}
    to_x: Vec<Complex64>,
}

impl Spectral {
    pub fn new(grid: SpatialGrid) -> Self {
        let mut planner = FftPlanner::new();
        let n = grid.n();
        let forward = planner.plan_fft_forward(n);
        let inverse = planner.plan_fft_inverse(n);
        let root = (2.0 * PI).sqrt();
        let (to_p, to_x) = grid
            .momenta()
            .map(|p| {
                let phase = Complex64::from_polar(1.0, -p * grid.x_min());
                (phase * (grid.dx() / root), phase.conj() * (grid.dp() / root))
            })
            .unzip();
        Self {
            grid,
            forward,
            inverse,
            to_p,
            to_x,
        }
    }

    pub fn grid(&self) -> &SpatialGrid {
        &self.grid
    }

    // FFT bin q holds signed index q (q <= n/2) or q - n; slot k holds k + 1 - n/2.
    fn shift(&self) -> usize {
        (self.grid.n() / 2 + 1) % self.grid.n()
    }

    /// Position samples → momentum samples, in place.
    pub fn forward(&self, buf: &mut [Complex64]) {
        self.forward.process(buf);
        buf.rotate_left(self.shift());
        buf.iter_mut().zip(&self.to_p).for_each(|(a, f)| *a *= f);
    }

    /// Momentum samples → position samples, in place.
    pub fn inverse(&self, buf: &mut [Complex64]) {
        buf.iter_mut().zip(&self.to_x).for_each(|(a, f)| *a *= f);
        buf.rotate_right(self.shift());
        self.inverse.process(buf);
    }

    pub fn to_momentum(&self, psi: &WaveFunction) -> Result<WaveFunction> {
        psi.expect_rep(Representation::Position)?;
        let mut amp = psi.amplitudes().to_vec();
        self.forward(&mut amp);
        Ok(psi.with_amplitudes(Representation::Momentum, amp))
    }

    pub fn to_position(&self, psi: &WaveFunction) -> Result<WaveFunction> {
        psi.expect_rep(Representation::Momentum)?;
        let mut amp = psi.amplitudes().to_vec();
        self.inverse(&mut amp);
        Ok(psi.with_amplitudes(Representation::Position, amp))
    }

    /// Momentum amplitudes of `psi`, whichever representation it is stored in.
    pub fn momentum_amplitudes(&self, psi: &WaveFunction) -> Vec<Complex64> {
        let mut amp = psi.amplitudes().to_vec();
        if psi.rep() == Representation::Position {
            self.forward(&mut amp);
        }
        amp
    }

    /// Position amplitudes of `psi`, whichever representation it is stored in.
    pub fn position_amplitudes(&self, psi: &WaveFunction) -> Vec<Complex64> {
        let mut amp = psi.amplitudes().to_vec();
        if psi.rep() == Representation::Momentum {
            self.inverse(&mut amp);
        }
        amp
    }

    /// `(ψ, ∂ψ/∂x)` on the position lattice. The unpaired Nyquist bin is
    /// dropped from the derivative so that real states have real derivatives.
    pub fn with_derivative(&self, psi: &WaveFunction) -> (Vec<Complex64>, Vec<Complex64>) {
        let momentum = self.momentum_amplitudes(psi);
        let nyquist = self.grid.n() - 1;
        let mut deriv: Vec<Complex64> = momentum
            .iter()
            .enumerate()
            .map(|(k, a)| {
                if k == nyquist {
                    Complex64::new(0.0, 0.0)
                } else {
                    a * Complex64::new(0.0, self.grid.p(k))
                }
            })
            .collect();
        self.inverse(&mut deriv);
        let mut value = momentum;
        self.inverse(&mut value);
        (value, deriv)
    }
}

pub fn to_momentum(psi: &WaveFunction) -> Result<WaveFunction> {
    Spectral::new(*psi.grid()).to_momentum(psi)
}

pub fn to_position(psi: &WaveFunction) -> Result<WaveFunction> {
    Spectral::new(*psi.grid()).to_position(psi)
}

/// `∂ψ/∂x` on the position lattice by spectral differentiation.
pub fn spectral_derivative(psi: &WaveFunction) -> Vec<Complex64> {
    Spectral::new(*psi.grid()).with_derivative(psi).1
}
