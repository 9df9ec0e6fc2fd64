use num_complex::Complex64;

use crate::error::{input, Error, Result};
use crate::repspace::{theta_step_state, SpatialGrid, Spectral, WaveFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PacketKind {
    Gaussian,
    OddPair,
    SymmetricPair,
    ThetaStep,
}

impl PacketKind {
    pub fn name(&self) -> &'static str {
        match self {
            PacketKind::Gaussian => "gaussian",
            PacketKind::OddPair => "odd",
            PacketKind::SymmetricPair => "symmetric",
            PacketKind::ThetaStep => "theta-step",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "gaussian" => Some(PacketKind::Gaussian),
            "odd" | "odd_pair" | "odd-pair" => Some(PacketKind::OddPair),
            "symmetric" | "symmetric_pair" | "symmetric-pair" => Some(PacketKind::SymmetricPair),
            "theta-step" | "theta_step" => Some(PacketKind::ThetaStep),
            _ => None,
        }
    }
}

/// Initial packet description. `h(x) = e^{-(x-a)²/(4σ²)} e^{ip₀x}` is the
/// building block; pairs combine `h(x)` with its mirror image `h(-x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PacketSpec {
    pub kind: PacketKind,
    pub center: f64,
    pub width: f64,
    pub momentum: f64,
    pub theta: (f64, f64),
}

impl PacketSpec {
    pub fn gaussian(center: f64, width: f64, momentum: f64) -> Self {
        Self {
            kind: PacketKind::Gaussian,
            center,
            width,
            momentum,
            theta: (2.0, 2.1),
        }
    }

    pub fn odd(center: f64, width: f64, momentum: f64) -> Self {
        Self {
            kind: PacketKind::OddPair,
            ..Self::gaussian(center, width, momentum)
        }
    }

    pub fn symmetric(center: f64, width: f64, momentum: f64) -> Self {
        Self {
            kind: PacketKind::SymmetricPair,
            ..Self::gaussian(center, width, momentum)
        }
    }

    pub fn theta_step(theta1: f64, theta2: f64) -> Self {
        Self {
            kind: PacketKind::ThetaStep,
            theta: (theta1, theta2),
            ..Self::default()
        }
    }

    pub fn validate(&self, g: &SpatialGrid) -> Result<()> {
        if self.kind == PacketKind::ThetaStep {
            return Ok(());
        }
        if !(self.width.is_finite() && self.width > 0.0) {
            return Err(input("width must be positive"));
        }
        if !(self.center.is_finite() && self.momentum.is_finite()) {
            return Err(input("packet centre and momentum must be finite"));
        }
        if self.width <= 2.0 * g.dx() {
            return Err(Error::Unresolvable(format!(
                "width {} is not above two grid spacings ({})",
                self.width,
                2.0 * g.dx()
            )));
        }
        if matches!(self.kind, PacketKind::OddPair | PacketKind::SymmetricPair) && self.center.abs() <= 4.0 * self.width
        {
            return Err(Error::Unresolvable(format!(
                "lobes at ±{} overlap at the origin for width {}",
                self.center.abs(),
                self.width
            )));
        }
        Ok(())
    }
}

impl Default for PacketSpec {
    /// Odd pair with a lobe at x = -10, width 1, aimed at the origin with p₀ = 3.
    fn default() -> Self {
        Self::odd(-10.0, 1.0, 3.0)
    }
}

fn lobe(x: f64, a: f64, sigma: f64, p0: f64) -> Complex64 {
    Complex64::from_polar((-(x - a) * (x - a) / (4.0 * sigma * sigma)).exp(), p0 * x)
}

pub fn make_packet(spec: &PacketSpec, g: &SpatialGrid) -> Result<WaveFunction> {
    spec.validate(g)?;
    let PacketSpec {
        center: a,
        width: s,
        momentum: p0,
        ..
    } = *spec;
    match spec.kind {
        PacketKind::Gaussian => WaveFunction::from_fn(*g, |x| lobe(x, a, s, p0)).normalized(),
        PacketKind::OddPair => WaveFunction::from_fn(*g, |x| lobe(x, a, s, p0) - lobe(-x, a, s, p0)).normalized(),
        PacketKind::SymmetricPair => WaveFunction::from_fn(*g, |x| lobe(x, a, s, p0) + lobe(-x, a, s, p0)).normalized(),
        PacketKind::ThetaStep => theta_step_state(spec.theta.0, spec.theta.1, g),
    }
}

/// One term `weight·h(x; a, σ, p₀)` of a Gaussian superposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianComponent {
    pub center: f64,
    pub width: f64,
    pub momentum: f64,
    pub weight: Complex64,
}

pub fn gaussian_superposition(g: &SpatialGrid, parts: &[GaussianComponent]) -> Result<WaveFunction> {
    if parts.is_empty() {
        return Err(input("superposition needs at least one component"));
    }
    for c in parts {
        PacketSpec::gaussian(c.center, c.width, c.momentum).validate(g)?;
    }
    WaveFunction::from_fn(*g, |x| {
        parts
            .iter()
            .map(|c| c.weight * lobe(x, c.center, c.width, c.momentum))
            .sum()
    })
    .normalized()
}

/// Removes every component with `p <= 0` and renormalizes.
pub fn project_positive_momentum(psi: &WaveFunction) -> Result<WaveFunction> {
    let grid = *psi.grid();
    let spectral = Spectral::new(grid);
    let mut amp = spectral.momentum_amplitudes(psi);
    for (k, a) in amp.iter_mut().enumerate() {
        if grid.p(k) <= 0.0 {
            *a = Complex64::new(0.0, 0.0);
        }
    }
    let momentum = WaveFunction::momentum(grid, amp)?.normalized()?;
    match psi.rep() {
        crate::repspace::Representation::Momentum => Ok(momentum),
        crate::repspace::Representation::Position => spectral.to_position(&momentum),
    }
}

/// Mean momentum `Σ p|ψ̃(p)|² dp / ‖ψ̃‖²`.
pub fn mean_momentum(psi: &WaveFunction) -> f64 {
    let grid = *psi.grid();
    let amp = Spectral::new(grid).momentum_amplitudes(psi);
    let (first, zeroth) = amp.iter().enumerate().fold((0.0, 0.0), |(m1, m0), (k, a)| {
        (m1 + grid.p(k) * a.norm_sqr(), m0 + a.norm_sqr())
    });
    first / zeroth
}

/// Momentum-space mass carried by `p < 0`.
pub fn negative_momentum_mass(psi: &WaveFunction) -> f64 {
    let grid = *psi.grid();
    let amp = Spectral::new(grid).momentum_amplitudes(psi);
    amp.iter()
        .enumerate()
        .filter(|(k, _)| grid.p(*k) < 0.0)
        .map(|(_, a)| a.norm_sqr())
        .sum::<f64>()
        * grid.dp()
}
