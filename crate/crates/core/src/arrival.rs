//! Arrival-time distributions: the pseudotime spectral density, the
//! right/left-mover POVM density, absorption densities, and the classical
//! formula `θ = -x/|p|` they are compared against.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{input, Error, Result};
use crate::repspace::{nonuniform_sum, pseudo_from_momentum, pseudotime_amplitude, Spectral, ThetaGrid, WaveFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistributionKind {
    ThetaSpectral,
    Povm,
    CapAbsorption,
    Classical,
}

/// Density samples on a time-like axis with per-sample quadrature weights.
///
/// Sample `i` owns the bin `[e_i, e_i + weights[i])`, where the first edge is
/// `axis[0] + spacing/2 - weights[0]`. Uniform weights give bins centred on
/// the samples; trapezoid weights give half bins at both ends.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrivalDistribution {
    pub kind: DistributionKind,
    pub axis: Vec<f64>,
    pub density: Vec<f64>,
    pub weights: Vec<f64>,
    pub spacing: f64,
}

impl ArrivalDistribution {
    pub fn new(kind: DistributionKind, axis: Vec<f64>, density: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if axis.len() != density.len() || axis.len() != weights.len() {
            return Err(input("axis, density and weights differ in length"));
        }
        if axis.len() < 2 {
            return Err(input("a distribution needs at least two samples"));
        }
        let spacing = axis[1] - axis[0];
        if !(spacing > 0.0) {
            return Err(input("distribution axis must be increasing"));
        }
        Ok(Self {
            kind,
            axis,
            density,
            weights,
            spacing,
        })
    }

    /// Rectangle-rule distribution on a [`ThetaGrid`].
    pub fn on_grid(kind: DistributionKind, tg: &ThetaGrid, density: Vec<f64>) -> Result<Self> {
        Self::new(kind, tg.values(), density, vec![tg.dtheta(); tg.len()])
    }

    pub fn len(&self) -> usize {
        self.axis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axis.is_empty()
    }

    pub fn mass(&self) -> f64 {
        self.density.iter().zip(&self.weights).map(|(d, w)| d * w).sum()
    }

    fn first_edge(&self) -> f64 {
        self.axis[0] + 0.5 * self.spacing - self.weights[0]
    }

    /// Probability of arrival in `[t0, t1]`, with partial end bins.
    pub fn window_probability(&self, t0: f64, t1: f64) -> Result<f64> {
        if !(t0 < t1) {
            return Err(input(format!("window [{t0}, {t1}] is empty")));
        }
        let mut lo = self.first_edge();
        let mut total = 0.0;
        for (d, w) in self.density.iter().zip(&self.weights) {
            let hi = lo + w;
            let overlap = hi.min(t1) - lo.max(t0);
            if overlap > 0.0 {
                total += d * overlap;
            }
            lo = hi;
        }
        Ok(total)
    }

    /// `Σ |a - b|·w` over a common axis.
    pub fn l1_distance(&self, other: &ArrivalDistribution) -> Result<f64> {
        if self.len() != other.len() {
            return Err(input("distributions have different lengths"));
        }
        Ok(self
            .density
            .iter()
            .zip(&other.density)
            .zip(&self.weights)
            .map(|((a, b), w)| (a - b).abs() * w)
            .sum())
    }

    pub fn argmax(&self) -> usize {
        self.density
            .iter()
            .enumerate()
            .fold(
                (0, f64::NEG_INFINITY),
                |best, (i, &d)| if d > best.1 { (i, d) } else { best },
            )
            .0
    }
}

/// Free-standing form of [`ArrivalDistribution::window_probability`].
pub fn window_probability(d: &ArrivalDistribution, t0: f64, t1: f64) -> Result<f64> {
    d.window_probability(t0, t1)
}

/// `|φ̂(θ)|²`, the spectral density of the pseudotime operator.
pub fn kijowski_theta_density(psi: &WaveFunction, tg: &ThetaGrid) -> Result<ArrivalDistribution> {
    let spectral = Spectral::new(*psi.grid());
    kijowski_with(&spectral, psi, tg)
}

pub(crate) fn kijowski_with(spectral: &Spectral, psi: &WaveFunction, tg: &ThetaGrid) -> Result<ArrivalDistribution> {
    let momentum = spectral.momentum_amplitudes(psi);
    let ps = pseudo_from_momentum(psi.grid(), &momentum);
    let amp = pseudotime_amplitude(&ps, tg)?;
    let density = amp.iter().map(|a| a.norm_sqr()).collect();
    ArrivalDistribution::on_grid(DistributionKind::ThetaSpectral, tg, density)
}

/// Right- and left-mover arrival amplitudes
/// `A±(t) = (2π)^{-1/2} ∫₀^∞ √p e^{-ip²t/2} ψ̃(±p) dp`.
pub fn povm_amplitudes(psi: &WaveFunction, tg: &ThetaGrid) -> (Vec<Complex64>, Vec<Complex64>) {
    let grid = *psi.grid();
    let momentum = Spectral::new(grid).momentum_amplitudes(psi);
    let norm = grid.dp() / (2.0 * PI).sqrt();
    let zero = grid.zero_momentum_slot();
    let mut xi = Vec::new();
    let mut right = Vec::new();
    let mut left = Vec::new();
    for (k, a) in momentum.iter().enumerate().skip(zero + 1) {
        let p = grid.p(k);
        xi.push(0.5 * p * p);
        right.push(a * (p.sqrt() * norm));
        let mirrored = grid
            .mirror_momentum_slot(k)
            .map_or(Complex64::new(0.0, 0.0), |m| momentum[m]);
        left.push(mirrored * (p.sqrt() * norm));
    }
    (nonuniform_sum(&xi, &right, tg), nonuniform_sum(&xi, &left, tg))
}

/// Incoherent right/left-mover density `|A₊(t)|² + |A₋(t)|²`, both branches
/// carrying the physical phase `e^{-ip²t/2}`.
pub fn povm_density(psi: &WaveFunction, tg: &ThetaGrid) -> Result<ArrivalDistribution> {
    let (plus, minus) = povm_amplitudes(psi, tg);
    let density = plus
        .iter()
        .zip(&minus)
        .map(|(a, b)| a.norm_sqr() + b.norm_sqr())
        .collect();
    ArrivalDistribution::on_grid(DistributionKind::Povm, tg, density)
}

/// Symmetric θ window holding at least `target` of the spectral mass, found
/// by doubling the half-width from `initial`.
pub fn auto_theta_grid(psi: &WaveFunction, dtheta: f64, initial: f64, target: f64) -> Result<ThetaGrid> {
    if !(dtheta > 0.0 && initial > 0.0) {
        return Err(input("auto window needs positive spacing and initial width"));
    }
    let spectral = Spectral::new(*psi.grid());
    let mut half = initial;
    for _ in 0..16 {
        let m = (2.0 * half / dtheta).round() as usize + 1;
        let tg = ThetaGrid::new(m, -half, dtheta)?;
        if kijowski_with(&spectral, psi, &tg)?.mass() >= target {
            return Ok(tg);
        }
        half *= 2.0;
    }
    Err(input(format!(
        "no window up to |θ| = {half} holds {target} of the spectral mass"
    )))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalArrival {
    /// Classical pseudotime `-x/|p|`.
    pub theta: f64,
    /// Time at which the trajectory actually reaches the origin, if it does.
    pub true_arrival: Option<f64>,
    pub false_flag: bool,
}

pub fn classical_toa(x: f64, p: f64) -> Result<ClassicalArrival> {
    if p == 0.0 {
        return Err(Error::UndefinedArrival);
    }
    if !(x.is_finite() && p.is_finite()) {
        return Err(input("classical phase-space point must be finite"));
    }
    let theta = -x / p.abs() + 0.0;
    let t = -x / p + 0.0;
    let true_arrival = (t >= 0.0).then_some(t);
    Ok(ClassicalArrival {
        theta,
        true_arrival,
        false_flag: true_arrival != Some(theta),
    })
}

/// `J = Im(ψ* ∂ψ/∂x)` at every lattice point.
pub fn current_field(psi: &WaveFunction) -> Vec<f64> {
    current_field_with(&Spectral::new(*psi.grid()), psi)
}

pub(crate) fn current_field_with(spectral: &Spectral, psi: &WaveFunction) -> Vec<f64> {
    let (value, deriv) = spectral.with_derivative(psi);
    value.iter().zip(&deriv).map(|(v, d)| (v.conj() * d).im).collect()
}

pub(crate) fn interpolate(grid: &crate::repspace::SpatialGrid, field: &[f64], x: f64) -> Result<f64> {
    let (j, frac) = grid
        .locate(x)
        .ok_or_else(|| input(format!("probe x = {x} lies outside the grid")))?;
    Ok(field[j] * (1.0 - frac) + field[j + 1] * frac)
}

/// Probability current at `x_probe`, linearly interpolated between lattice points.
pub fn probability_current(psi: &WaveFunction, x_probe: f64) -> Result<f64> {
    let grid = *psi.grid();
    grid.locate(x_probe)
        .ok_or_else(|| input(format!("probe x = {x_probe} lies outside the grid")))?;
    interpolate(&grid, &current_field(psi), x_probe)
}

/// `ψ(x)` at an arbitrary point by band-limited (trigonometric) interpolation.
pub fn evaluate_at(psi: &WaveFunction, x: f64) -> Complex64 {
    let grid = *psi.grid();
    let momentum = Spectral::new(grid).momentum_amplitudes(psi);
    let sum: Complex64 = momentum
        .iter()
        .enumerate()
        .map(|(k, a)| a * Complex64::from_polar(1.0, grid.p(k) * x))
        .sum();
    sum * (grid.dp() / (2.0 * PI).sqrt())
}
