#![allow(dead_code)]

use std::f64::consts::PI;

use arrival_core::repspace::{SpatialGrid, WaveFunction};
use arrival_core::Complex64;
use rand::Rng;

/// `ψ̃(p_k) = (2π)^{-1/2} Σ_j ψ_j e^{-i p_k x_j} dx` summed term by term, with
/// the lattice momenta written out here rather than taken from the grid.
pub fn naive_momentum(g: &SpatialGrid, psi: &[Complex64]) -> Vec<Complex64> {
    let n = g.n();
    let dp = 2.0 * PI / (n as f64 * g.dx());
    (0..n)
        .map(|k| {
            let p = (k as f64 + 1.0 - (n / 2) as f64) * dp;
            let mut sum = Complex64::new(0.0, 0.0);
            for (j, a) in psi.iter().enumerate() {
                let x = g.x_min() + j as f64 * g.dx();
                sum += a * Complex64::from_polar(1.0, -p * x);
            }
            sum * g.dx() / (2.0 * PI).sqrt()
        })
        .collect()
}

pub fn naive_position(g: &SpatialGrid, phi: &[Complex64]) -> Vec<Complex64> {
    let n = g.n();
    let dp = 2.0 * PI / (n as f64 * g.dx());
    (0..n)
        .map(|j| {
            let x = g.x_min() + j as f64 * g.dx();
            let mut sum = Complex64::new(0.0, 0.0);
            for (k, a) in phi.iter().enumerate() {
                let p = (k as f64 + 1.0 - (n / 2) as f64) * dp;
                sum += a * Complex64::from_polar(1.0, p * x);
            }
            sum * dp / (2.0 * PI).sqrt()
        })
        .collect()
}

pub fn random_amplitudes(rng: &mut impl Rng, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

pub fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Neumaier-compensated complex sum.
pub fn compensated_sum(terms: impl IntoIterator<Item = Complex64>) -> Complex64 {
    fn add(sum: &mut f64, comp: &mut f64, x: f64) {
        let t = *sum + x;
        if sum.abs() >= x.abs() {
            *comp += (*sum - t) + x;
        } else {
            *comp += (x - t) + *sum;
        }
        *sum = t;
    }
    let (mut re, mut re_c, mut im, mut im_c) = (0.0, 0.0, 0.0, 0.0);
    for z in terms {
        add(&mut re, &mut re_c, z.re);
        add(&mut im, &mut im_c, z.im);
    }
    Complex64::new(re + re_c, im + im_c)
}

/// Closed-form free evolution of `(2πσ²)^{-1/4} e^{-(x-a)²/(4σ²)} e^{ip₀x}`.
pub fn free_gaussian(x: f64, t: f64, a: f64, sigma: f64, p0: f64) -> Complex64 {
    let s2 = sigma * sigma;
    let st = Complex64::new(s2, 0.5 * t);
    let d = x - a - p0 * t;
    let n = (2.0 * PI * s2).powf(-0.25);
    (Complex64::new(s2, 0.0) / st).sqrt()
        * n
        * (-(d * d) / (4.0 * st)).exp()
        * Complex64::from_polar(1.0, p0 * x - 0.5 * p0 * p0 * t)
}

pub fn gaussian_state(g: SpatialGrid, a: f64, sigma: f64, p0: f64) -> WaveFunction {
    WaveFunction::from_fn(g, |x| free_gaussian(x, 0.0, a, sigma, p0))
}
