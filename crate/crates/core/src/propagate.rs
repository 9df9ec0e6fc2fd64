//! Time evolution: free, pseudoenergy-generated, and with a complex absorbing
//! screen `H = p²/2 - iV(x)`.

use num_complex::Complex64;

use crate::arrival::{ArrivalDistribution, DistributionKind};
use crate::error::{input, Error, Result};
use crate::repspace::{pseudoenergy, Representation, Spectral, WaveFunction};

/// Largest allowed `V₀·dt` for one absorbing step.
pub const MAX_STEP_DAMPING: f64 = 5.0;

fn evolve_in_momentum(psi: &WaveFunction, phase: impl Fn(f64) -> f64) -> WaveFunction {
    let grid = *psi.grid();
    let spectral = Spectral::new(grid);
    let mut amp = spectral.momentum_amplitudes(psi);
    for (k, a) in amp.iter_mut().enumerate() {
        *a *= Complex64::from_polar(1.0, -phase(grid.p(k)));
    }
    if psi.rep() == Representation::Position {
        spectral.inverse(&mut amp);
    }
    psi.with_amplitudes(psi.rep(), amp)
}

/// `ψ̃_t(p) = e^{-ip²t/2} ψ̃(p)`; the result keeps the input representation.
pub fn free_evolve(psi: &WaveFunction, t: f64) -> WaveFunction {
    evolve_in_momentum(psi, |p| 0.5 * p * p * t)
}

/// `ψ̃_t(p) = e^{-i sgn(p) p² t/2} ψ̃(p)`, the flow generated by the pseudoenergy.
pub fn pseudoenergy_evolve(psi: &WaveFunction, t: f64) -> WaveFunction {
    evolve_in_momentum(psi, |p| pseudoenergy(p) * t)
}

/// Freely evolved copies of `psi` at each of `times`, produced lazily.
pub fn free_snapshots<'a>(psi: &WaveFunction, times: &'a [f64]) -> impl Iterator<Item = (f64, WaveFunction)> + 'a {
    let grid = *psi.grid();
    let spectral = Spectral::new(grid);
    let initial = spectral.momentum_amplitudes(psi);
    let template = psi.with_amplitudes(Representation::Position, Vec::new());
    times.iter().map(move |&t| {
        let mut amp: Vec<Complex64> = initial
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let p = grid.p(k);
                a * Complex64::from_polar(1.0, -0.5 * p * p * t)
            })
            .collect();
        spectral.inverse(&mut amp);
        (t, template.with_amplitudes(Representation::Position, amp))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbsorberProfile {
    Rectangular,
    Gaussian,
}

/// Imaginary screen potential `-iV(x)`, even about `x_center`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbsorberSpec {
    pub x_center: f64,
    pub half_width: f64,
    pub strength: f64,
    pub profile: AbsorberProfile,
}

impl AbsorberSpec {
    pub fn new(x_center: f64, half_width: f64, strength: f64, profile: AbsorberProfile) -> Result<Self> {
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(input(format!("absorber half-width must be positive, got {half_width}")));
        }
        if !(strength.is_finite() && strength >= 0.0) {
            return Err(input(format!("absorber strength must be non-negative, got {strength}")));
        }
        if !x_center.is_finite() {
            return Err(input("absorber centre must be finite"));
        }
        Ok(Self {
            x_center,
            half_width,
            strength,
            profile,
        })
    }

    pub fn gaussian(half_width: f64, strength: f64) -> Result<Self> {
        Self::new(0.0, half_width, strength, AbsorberProfile::Gaussian)
    }

    /// Same geometry with the strength switched off.
    pub fn off(&self) -> Self {
        Self { strength: 0.0, ..*self }
    }

    pub fn potential(&self, x: f64) -> f64 {
        let d = x - self.x_center;
        match self.profile {
            AbsorberProfile::Gaussian => self.strength * (-d * d / (2.0 * self.half_width * self.half_width)).exp(),
            AbsorberProfile::Rectangular => {
                if d.abs() <= self.half_width {
                    self.strength
                } else {
                    0.0
                }
            }
        }
    }
}

/// Norm history of an absorbing run, sampled at every step.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionRecord {
    pub times: Vec<f64>,
    pub norms: Vec<f64>,
    /// `-dN/dt` by centred differences (one-sided at the ends).
    pub absorbed_density: Vec<f64>,
    pub dt: f64,
}

impl EvolutionRecord {
    fn from_norms(norms: Vec<f64>, dt: f64) -> Self {
        let times = (0..norms.len()).map(|i| i as f64 * dt).collect();
        let absorbed_density = rate_of_loss(&norms, dt);
        Self {
            times,
            norms,
            absorbed_density,
            dt,
        }
    }

    pub fn final_norm(&self) -> f64 {
        *self.norms.last().expect("record is never empty")
    }

    pub fn absorbed_mass(&self) -> f64 {
        self.norms[0] - self.final_norm()
    }

    /// Norm lost between the samples nearest to `t0` and `t1`.
    pub fn absorbed_between(&self, t0: f64, t1: f64) -> f64 {
        let index = |t: f64| ((t / self.dt).round().max(0.0) as usize).min(self.norms.len() - 1);
        self.norms[index(t0)] - self.norms[index(t1)]
    }

    /// Trapezoid quadrature of the absorbed density.
    pub fn integrated_absorption(&self) -> f64 {
        trapezoid_weights(self.norms.len(), self.dt)
            .iter()
            .zip(&self.absorbed_density)
            .map(|(w, a)| w * a)
            .sum()
    }
}

fn rate_of_loss(norms: &[f64], dt: f64) -> Vec<f64> {
    let m = norms.len();
    if m < 2 {
        return vec![0.0; m];
    }
    (0..m)
        .map(|i| {
            if i == 0 {
                (norms[0] - norms[1]) / dt
            } else if i == m - 1 {
                (norms[m - 2] - norms[m - 1]) / dt
            } else {
                (norms[i - 1] - norms[i + 1]) / (2.0 * dt)
            }
        })
        .collect()
}

fn trapezoid_weights(m: usize, dt: f64) -> Vec<f64> {
    let mut w = vec![dt; m];
    if m > 0 {
        w[0] = 0.5 * dt;
        w[m - 1] = 0.5 * dt;
    }
    w
}

/// Strang-split evolution under `p²/2 - iV(x)`, see [`cap_evolve_with`].
pub fn cap_evolve(
    psi: &WaveFunction,
    t_total: f64,
    dt: f64,
    absorber: &AbsorberSpec,
) -> Result<(WaveFunction, EvolutionRecord)> {
    cap_evolve_with(psi, t_total, dt, absorber, |_, _, _| {})
}

/// Strang-split evolution under `p²/2 - iV(x)`:
/// `ψ ← e^{-V dt/2} F⁻¹ e^{-ip²dt/2} F e^{-V dt/2} ψ`.
///
/// The step count is `round(t_total/dt)` and the step is adjusted so the run
/// ends exactly at `t_total`. `observe(step, t, ψ)` sees the initial state and
/// the state after every step.
pub fn cap_evolve_with(
    psi: &WaveFunction,
    t_total: f64,
    dt: f64,
    absorber: &AbsorberSpec,
    mut observe: impl FnMut(usize, f64, &WaveFunction),
) -> Result<(WaveFunction, EvolutionRecord)> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(input(format!("time step must be positive, got {dt}")));
    }
    if !(t_total.is_finite() && t_total > 0.0) {
        return Err(input(format!("total time must be positive, got {t_total}")));
    }
    if dt > t_total * (1.0 + 1e-12) {
        return Err(input(format!("time step {dt} exceeds total time {t_total}")));
    }
    if absorber.strength * dt > MAX_STEP_DAMPING {
        return Err(input(format!(
            "V0·dt = {} exceeds the stable limit {MAX_STEP_DAMPING}",
            absorber.strength * dt
        )));
    }
    let steps = ((t_total / dt).round() as usize).max(1);
    let dt = t_total / steps as f64;

    let grid = *psi.grid();
    let spectral = Spectral::new(grid);
    let half: Vec<f64> = grid
        .positions()
        .map(|x| (-0.5 * dt * absorber.potential(x)).exp())
        .collect();
    let kinetic: Vec<Complex64> = grid
        .momenta()
        .map(|p| Complex64::from_polar(1.0, -0.5 * p * p * dt))
        .collect();

    let mut state = psi.with_amplitudes(Representation::Position, spectral.position_amplitudes(psi));
    let mut norms = Vec::with_capacity(steps + 1);
    norms.push(state.norm_sqr());
    observe(0, 0.0, &state);
    for step in 1..=steps {
        let amp = state.amplitudes_mut();
        amp.iter_mut().zip(&half).for_each(|(a, h)| *a *= *h);
        spectral.forward(amp);
        amp.iter_mut().zip(&kinetic).for_each(|(a, k)| *a *= k);
        spectral.inverse(amp);
        amp.iter_mut().zip(&half).for_each(|(a, h)| *a *= *h);
        let norm = state.norm_sqr();
        let t = step as f64 * dt;
        if !norm.is_finite() || !state.is_finite() {
            return Err(Error::NumericalBlowup { step, time: t });
        }
        norms.push(norm);
        observe(step, t, &state);
    }
    let state = if psi.rep() == Representation::Momentum {
        spectral.to_momentum(&state)?
    } else {
        state
    };
    Ok((state, EvolutionRecord::from_norms(norms, dt)))
}

/// Absorption-time density `-dN/dt`, clamped at zero, with trapezoid weights.
pub fn absorption_density(rec: &EvolutionRecord) -> Result<ArrivalDistribution> {
    let m = rec.norms.len();
    if m < 3 || rec.times.len() != m || rec.absorbed_density.len() != m {
        return Err(input(format!("absorption density needs at least 3 samples, got {m}")));
    }
    let density = rec.absorbed_density.iter().map(|a| a.max(0.0)).collect();
    ArrivalDistribution::new(
        DistributionKind::CapAbsorption,
        rec.times.clone(),
        density,
        trapezoid_weights(m, rec.dt),
    )
}

impl EvolutionRecord {
    /// Builds a record from an externally sampled norm history (uniform `dt`).
    pub fn from_samples(norms: Vec<f64>, dt: f64) -> Result<Self> {
        if norms.is_empty() || !(dt > 0.0) {
            return Err(input("record needs samples and a positive step"));
        }
        Ok(Self::from_norms(norms, dt))
    }
}
