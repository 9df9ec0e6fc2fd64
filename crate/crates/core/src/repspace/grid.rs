use std::f64::consts::PI;

use crate::error::{input, Result};

/// Uniform periodic lattice `x_j = x_min + j·dx`, `j = 0..n`, together with its
/// conjugate momentum lattice.
///
/// Momenta are stored in ascending order, `p_k = (k + 1 - n/2)·dp` for
/// `k = 0..n`, so they span `(-π/dx, π/dx]` and the zero bin sits at index
/// `n/2 - 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpatialGrid {
    n: usize,
    x_min: f64,
    dx: f64,
}

impl SpatialGrid {
    pub fn new(n: usize, x_min: f64, dx: f64) -> Result<Self> {
        if n < 8 || !n.is_power_of_two() {
            return Err(input(format!("sample count must be a power of two >= 8, got {n}")));
        }
        if !(dx.is_finite() && dx > 0.0) {
            return Err(input(format!("grid spacing must be positive and finite, got {dx}")));
        }
        if !x_min.is_finite() {
            return Err(input("grid origin must be finite"));
        }
        Ok(Self { n, x_min, dx })
    }

    /// Grid of `n` points covering `[x_min, x_max)`.
    pub fn spanning(n: usize, x_min: f64, x_max: f64) -> Result<Self> {
        Self::new(n, x_min, (x_max - x_min) / n as f64)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn length(&self) -> f64 {
        self.n as f64 * self.dx
    }

    pub fn dp(&self) -> f64 {
        2.0 * PI / (self.n as f64 * self.dx)
    }

    pub fn p_max(&self) -> f64 {
        PI / self.dx
    }

    pub fn x(&self, j: usize) -> f64 {
        self.x_min + j as f64 * self.dx
    }

    /// Signed frequency index of momentum slot `k`.
    pub fn momentum_index(&self, k: usize) -> i64 {
        k as i64 + 1 - (self.n / 2) as i64
    }

    pub fn p(&self, k: usize) -> f64 {
        self.momentum_index(k) as f64 * self.dp()
    }

    /// Slot of the `p = 0` bin.
    pub fn zero_momentum_slot(&self) -> usize {
        self.n / 2 - 1
    }

    /// Slot holding `-p_k`, if it lies on the lattice (the Nyquist bin has no partner).
    pub fn mirror_momentum_slot(&self, k: usize) -> Option<usize> {
        let mirrored = 2 * self.zero_momentum_slot() as i64 - k as i64;
        (0..self.n as i64).contains(&mirrored).then_some(mirrored as usize)
    }

    pub fn positions(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.n).map(|j| self.x(j))
    }

    pub fn momenta(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.n).map(|k| self.p(k))
    }

    /// Fractional lattice coordinate of `x`, if it lies within `[x_0, x_{n-1}]`.
    pub fn locate(&self, x: f64) -> Option<(usize, f64)> {
        let s = (x - self.x_min) / self.dx;
        if !(s >= 0.0 && s <= (self.n - 1) as f64) {
            return None;
        }
        let j = (s.floor() as usize).min(self.n - 2);
        Some((j, s - j as f64))
    }
}

impl Default for SpatialGrid {
    /// 4096 points on `[-40, 40)`.
    fn default() -> Self {
        Self {
            n: 4096,
            x_min: -40.0,
            dx: 80.0 / 4096.0,
        }
    }
}

/// Uniform axis of pseudotime (or laboratory time) samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaGrid {
    m: usize,
    theta_min: f64,
    dtheta: f64,
}

impl ThetaGrid {
    pub fn new(m: usize, theta_min: f64, dtheta: f64) -> Result<Self> {
        if m < 2 {
            return Err(input(format!("theta grid needs at least 2 samples, got {m}")));
        }
        if !(dtheta.is_finite() && dtheta > 0.0) {
            return Err(input(format!("theta spacing must be positive, got {dtheta}")));
        }
        if !theta_min.is_finite() {
            return Err(input("theta origin must be finite"));
        }
        Ok(Self { m, theta_min, dtheta })
    }

    /// `m` samples from `theta_min` to `theta_max` inclusive.
    pub fn spanning(theta_min: f64, theta_max: f64, m: usize) -> Result<Self> {
        if !(theta_max > theta_min) {
            return Err(input(format!("theta window [{theta_min}, {theta_max}] is empty")));
        }
        if m < 2 {
            return Err(input(format!("theta grid needs at least 2 samples, got {m}")));
        }
        Self::new(m, theta_min, (theta_max - theta_min) / (m - 1) as f64)
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn theta_min(&self) -> f64 {
        self.theta_min
    }

    pub fn theta_max(&self) -> f64 {
        self.theta(self.m - 1)
    }

    pub fn dtheta(&self) -> f64 {
        self.dtheta
    }

    pub fn theta(&self, l: usize) -> f64 {
        self.theta_min + l as f64 * self.dtheta
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.m).map(|l| self.theta(l)).collect()
    }

    /// Same spacing and length, origin moved by `shift`.
    pub fn shifted(&self, shift: f64) -> Self {
        Self {
            theta_min: self.theta_min + shift,
            ..*self
        }
    }

    pub fn width(&self) -> f64 {
        (self.m - 1) as f64 * self.dtheta
    }
}
