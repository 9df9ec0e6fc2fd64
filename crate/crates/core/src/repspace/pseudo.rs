use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{Representation, SpatialGrid, Spectral, ThetaGrid, WaveFunction};
use crate::error::{input, Error, Result};

/// Fraction of the ideal step-state mass a grid must hold.
pub const STEP_MASS_REQUIRED: f64 = 0.99;

// θ samples per recurrence block; phases are re-seeded with exp() at each block start.
const BLOCK: usize = 128;

/// `ξ = sgn(p)·p²/2`.
pub fn pseudoenergy(p: f64) -> f64 {
    0.5 * p * p.abs()
}

/// Nonuniform samples of a state in the pseudoenergy representation.
///
/// `amp[k] = ψ̃(p_k)/√|p_k|` and `weight[k] = |p_k|·dp = dξ`, so that
/// `Σ weight·|amp|²` reproduces the momentum-space norm. The `p = 0` bin is
/// left out and its mass kept in [`PseudoSamples::excluded_mass`].
#[derive(Debug, Clone, PartialEq)]
pub struct PseudoSamples {
    xi: Vec<f64>,
    weight: Vec<f64>,
    amp: Vec<Complex64>,
    excluded_mass: f64,
}

impl PseudoSamples {
    pub fn new(xi: Vec<f64>, weight: Vec<f64>, amp: Vec<Complex64>) -> Result<Self> {
        if xi.len() != weight.len() || xi.len() != amp.len() {
            return Err(input("pseudoenergy sample vectors differ in length"));
        }
        Ok(Self {
            xi,
            weight,
            amp,
            excluded_mass: 0.0,
        })
    }

    pub fn xi(&self) -> &[f64] {
        &self.xi
    }

    pub fn weights(&self) -> &[f64] {
        &self.weight
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amp
    }

    pub fn len(&self) -> usize {
        self.xi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xi.is_empty()
    }

    /// Momentum-space mass of the discarded `p = 0` bin.
    pub fn excluded_mass(&self) -> f64 {
        self.excluded_mass
    }

    pub fn norm_sqr(&self) -> f64 {
        self.weight.iter().zip(&self.amp).map(|(w, a)| w * a.norm_sqr()).sum()
    }
}

pub fn to_pseudoenergy(psi: &WaveFunction) -> Result<PseudoSamples> {
    psi.expect_rep(Representation::Momentum)?;
    Ok(pseudo_from_momentum(psi.grid(), psi.amplitudes()))
}

pub(crate) fn pseudo_from_momentum(grid: &SpatialGrid, momentum: &[Complex64]) -> PseudoSamples {
    let n = grid.n();
    let zero = grid.zero_momentum_slot();
    let dp = grid.dp();
    let mut xi = Vec::with_capacity(n - 1);
    let mut weight = Vec::with_capacity(n - 1);
    let mut amp = Vec::with_capacity(n - 1);
    for (k, a) in momentum.iter().enumerate() {
        if k == zero {
            continue;
        }
        let p = grid.p(k);
        xi.push(pseudoenergy(p));
        weight.push(p.abs() * dp);
        amp.push(a / p.abs().sqrt());
    }
    PseudoSamples {
        xi,
        weight,
        amp,
        excluded_mass: momentum[zero].norm_sqr() * dp,
    }
}

/// `out[l] = Σ_k coef[k]·exp(-i θ_l ξ[k])` by direct summation, O(len·m).
///
/// Within a block of θ samples the phase is advanced by repeated
/// multiplication with `exp(-i dθ ξ)`; every block starts from a fresh `exp`.
pub fn nonuniform_sum(xi: &[f64], coef: &[Complex64], tg: &ThetaGrid) -> Vec<Complex64> {
    let terms: Vec<(f64, Complex64)> = xi
        .iter()
        .zip(coef)
        .filter(|(_, c)| c.re != 0.0 || c.im != 0.0)
        .map(|(&x, &c)| (x, c))
        .collect();
    let steps: Vec<Complex64> = terms
        .iter()
        .map(|(x, _)| Complex64::from_polar(1.0, -tg.dtheta() * x))
        .collect();
    let mut out = vec![Complex64::new(0.0, 0.0); tg.len()];
    out.par_chunks_mut(BLOCK).enumerate().for_each(|(b, chunk)| {
        let theta0 = tg.theta(b * BLOCK);
        for ((x, c), step) in terms.iter().zip(&steps) {
            let mut z = c * Complex64::from_polar(1.0, -theta0 * x);
            for slot in chunk.iter_mut() {
                *slot += z;
                z *= step;
            }
        }
    });
    out
}

/// Spectral amplitude of the pseudotime operator,
/// `φ̂(θ) = (2π)^{-1/2} Σ_k w_k e^{-iθξ_k} φ(ξ_k)`.
pub fn pseudotime_amplitude(ps: &PseudoSamples, tg: &ThetaGrid) -> Result<Vec<Complex64>> {
    if ps.is_empty() {
        return Err(input("no pseudoenergy samples"));
    }
    let norm = (2.0 * PI).sqrt().recip();
    let coef: Vec<Complex64> = ps.weight.iter().zip(&ps.amp).map(|(w, a)| a * (w * norm)).collect();
    Ok(nonuniform_sum(&ps.xi, &coef, tg))
}

/// How well a grid represents the indicator of `[θ₁, θ₂]` in pseudotime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepResolution {
    /// Largest |p| kept. Components with larger |p| would leave the box
    /// (|x| ≈ (θ + t)|p|) before `t` reaches `max(|θ₁|, |θ₂|)`.
    pub cutoff: f64,
    /// Kept mass over the ideal mass `θ₂ - θ₁`.
    pub held: f64,
    /// Cutoff that would hold [`STEP_MASS_REQUIRED`] of the mass.
    pub needed: f64,
}

/// Ideal pseudoenergy amplitude of the step, `(e^{iθ₂ξ} - e^{iθ₁ξ})/(iξ√(2π))`.
fn step_amplitude(theta1: f64, theta2: f64, xi: f64) -> Complex64 {
    let width = theta2 - theta1;
    let half = 0.5 * width * xi;
    let sinc = if half == 0.0 { 1.0 } else { half.sin() / half };
    Complex64::from_polar(width * sinc, 0.5 * (theta1 + theta2) * xi) / (2.0 * PI).sqrt()
}

fn step_momentum(theta1: f64, theta2: f64, g: &SpatialGrid) -> (Vec<Complex64>, StepResolution) {
    let horizon = 2.0 * theta1.abs().max(theta2.abs());
    let cutoff = g.p_max().min(0.5 * g.length() / horizon);
    let amp: Vec<Complex64> = g
        .momenta()
        .map(|p| {
            if p == 0.0 || p.abs() > cutoff {
                Complex64::new(0.0, 0.0)
            } else {
                step_amplitude(theta1, theta2, pseudoenergy(p)) * p.abs().sqrt()
            }
        })
        .collect();
    let width = theta2 - theta1;
    let held = amp.iter().map(|a| a.norm_sqr()).sum::<f64>() * g.dp() / width;
    // Ideal mass beyond |ξ| > Ξ is about 2/(πΞ) per unit width.
    let xi_needed = 2.0 / (PI * (1.0 - STEP_MASS_REQUIRED) * width);
    let resolution = StepResolution {
        cutoff,
        held,
        needed: (2.0 * xi_needed).sqrt(),
    };
    (amp, resolution)
}

pub fn theta_step_resolution(theta1: f64, theta2: f64, g: &SpatialGrid) -> Result<StepResolution> {
    check_interval(theta1, theta2)?;
    Ok(step_momentum(theta1, theta2, g).1)
}

fn check_interval(theta1: f64, theta2: f64) -> Result<()> {
    if !(theta1.is_finite() && theta2.is_finite() && theta1 < theta2) {
        return Err(input(format!(
            "step interval [{theta1}, {theta2}] must satisfy theta1 < theta2"
        )));
    }
    Ok(())
}

/// Normalized state whose pseudotime amplitude is the indicator of `[θ₁, θ₂]`,
/// band-limited to the momenta the grid can carry up to `t ≈ max|θ|`.
pub fn theta_step_state(theta1: f64, theta2: f64, g: &SpatialGrid) -> Result<WaveFunction> {
    check_interval(theta1, theta2)?;
    let (mut amp, res) = step_momentum(theta1, theta2, g);
    if res.held < STEP_MASS_REQUIRED {
        return Err(Error::Resolution {
            held: res.held,
            required: STEP_MASS_REQUIRED,
            cutoff: res.cutoff,
            needed: res.needed,
        });
    }
    Spectral::new(*g).inverse(&mut amp);
    WaveFunction::position(*g, amp)?.normalized()
}
