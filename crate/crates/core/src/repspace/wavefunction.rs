use std::fmt;

use num_complex::Complex64;

use super::SpatialGrid;
use crate::error::{input, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    Position,
    Momentum,
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Representation::Position => f.write_str("position"),
            Representation::Momentum => f.write_str("momentum"),
        }
    }
}

/// Sampled amplitude on a [`SpatialGrid`], tagged with its representation.
///
/// Position amplitudes are indexed like `grid.x(j)`, momentum amplitudes like
/// `grid.p(k)`. The norm is `Σ|amp|²·dx` or `Σ|amp|²·dp` respectively.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveFunction {
    grid: SpatialGrid,
    rep: Representation,
    amp: Vec<Complex64>,
}

impl WaveFunction {
    pub fn new(grid: SpatialGrid, rep: Representation, amp: Vec<Complex64>) -> Result<Self> {
        if amp.len() != grid.n() {
            return Err(input(format!(
                "amplitude vector has {} samples, grid has {}",
                amp.len(),
                grid.n()
            )));
        }
        Ok(Self { grid, rep, amp })
    }

    pub fn position(grid: SpatialGrid, amp: Vec<Complex64>) -> Result<Self> {
        Self::new(grid, Representation::Position, amp)
    }

    pub fn momentum(grid: SpatialGrid, amp: Vec<Complex64>) -> Result<Self> {
        Self::new(grid, Representation::Momentum, amp)
    }

    /// Samples `f(x_j)` on the grid.
    pub fn from_fn(grid: SpatialGrid, f: impl Fn(f64) -> Complex64) -> Self {
        let amp = grid.positions().map(f).collect();
        Self {
            grid,
            rep: Representation::Position,
            amp,
        }
    }

    pub fn grid(&self) -> &SpatialGrid {
        &self.grid
    }

    pub fn rep(&self) -> Representation {
        self.rep
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amp
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amp
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amp
    }

    /// Lattice measure of one sample: `dx` or `dp`.
    pub fn measure(&self) -> f64 {
        match self.rep {
            Representation::Position => self.grid.dx(),
            Representation::Momentum => self.grid.dp(),
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp.iter().map(|a| a.norm_sqr()).sum::<f64>() * self.measure()
    }

    pub fn normalize(&mut self) -> Result<()> {
        let norm = self.norm_sqr();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(input(format!("cannot normalize a state of norm {norm}")));
        }
        let scale = norm.sqrt().recip();
        self.amp.iter_mut().for_each(|a| *a *= scale);
        Ok(())
    }

    pub fn normalized(mut self) -> Result<Self> {
        self.normalize()?;
        Ok(self)
    }

    /// `⟨self|other⟩` with the lattice measure.
    pub fn inner(&self, other: &WaveFunction) -> Result<Complex64> {
        self.check_compatible(other)?;
        let sum: Complex64 = self.amp.iter().zip(&other.amp).map(|(a, b)| a.conj() * b).sum();
        Ok(sum * self.measure())
    }

    /// `‖self - other‖` with the lattice measure.
    pub fn distance(&self, other: &WaveFunction) -> Result<f64> {
        self.check_compatible(other)?;
        let sum: f64 = self.amp.iter().zip(&other.amp).map(|(a, b)| (a - b).norm_sqr()).sum();
        Ok((sum * self.measure()).sqrt())
    }

    pub fn expect_rep(&self, rep: Representation) -> Result<()> {
        if self.rep != rep {
            return Err(Error::Representation {
                expected: rep,
                found: self.rep,
            });
        }
        Ok(())
    }

    fn check_compatible(&self, other: &WaveFunction) -> Result<()> {
        other.expect_rep(self.rep)?;
        if self.grid != other.grid {
            return Err(input("wave functions live on different grids"));
        }
        Ok(())
    }

    pub fn is_finite(&self) -> bool {
        self.amp.iter().all(|a| a.re.is_finite() && a.im.is_finite())
    }

    pub(crate) fn with_amplitudes(&self, rep: Representation, amp: Vec<Complex64>) -> Self {
        Self {
            grid: self.grid,
            rep,
            amp,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_and_inner_product() {
        let g = SpatialGrid::new(64, -8.0, 0.25).unwrap();
        let psi = WaveFunction::from_fn(g, |x| Complex64::new((-x * x).exp(), 0.3 * x))
            .normalized()
            .unwrap();
        assert!((psi.norm_sqr() - 1.0).abs() <= 1e-12);
        assert!((psi.inner(&psi).unwrap().re - 1.0).abs() <= 1e-12);
        assert_eq!(psi.distance(&psi).unwrap(), 0.0);
    }

    #[test]
    fn zero_state_cannot_be_normalized() {
        let g = SpatialGrid::new(8, 0.0, 1.0).unwrap();
        let mut psi = WaveFunction::position(g, vec![Complex64::new(0.0, 0.0); 8]).unwrap();
        assert!(psi.normalize().is_err());
    }

    #[test]
    fn length_mismatch() {
        let g = SpatialGrid::new(8, 0.0, 1.0).unwrap();
        assert!(WaveFunction::position(g, vec![Complex64::new(0.0, 0.0); 7]).is_err());
    }
}
