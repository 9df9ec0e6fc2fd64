//! Pass/fail bookkeeping and independent oracles for the acceptance gate.

use std::f64::consts::PI;
use std::time::Duration;

use arrival_core::repspace::SpatialGrid;
use arrival_core::Complex64;

/// Prints one line per check and keeps the tally.
#[derive(Debug, Default)]
pub struct Gate {
    pub passed: usize,
    pub failed: Vec<String>,
}

impl Gate {
    pub fn check(&mut self, id: &str, ok: bool, detail: String) {
        println!("{} {id}: {detail}", if ok { "PASS" } else { "FAIL" });
        if ok {
            self.passed += 1;
        } else {
            self.failed.push(id.to_string());
        }
    }

    pub fn runtime(&mut self, id: &str, elapsed: Duration, limit: Duration) {
        self.check(
            &format!("{id} runtime"),
            elapsed < limit,
            format!("{:.2} s (limit {} s)", elapsed.as_secs_f64(), limit.as_secs()),
        );
    }

    /// Prints the tally; true if nothing failed.
    pub fn finish(&self) -> bool {
        println!("acceptance: {} passed, {} failed", self.passed, self.failed.len());
        if !self.failed.is_empty() {
            println!("failed: {}", self.failed.join(", "));
        }
        self.failed.is_empty()
    }
}

/// Term-by-term `(2π)^{-1/2} Σ_j ψ_j e^{-ip_k x_j} dx` with `p_k = (k + 1 - n/2)·2π/L`.
pub fn naive_momentum(g: &SpatialGrid, psi: &[Complex64]) -> Vec<Complex64> {
    let n = g.n();
    let dp = 2.0 * PI / (n as f64 * g.dx());
    (0..n)
        .map(|k| {
            let p = (k as f64 + 1.0 - (n / 2) as f64) * dp;
            psi.iter()
                .enumerate()
                .map(|(j, a)| a * Complex64::from_polar(1.0, -p * (g.x_min() + j as f64 * g.dx())))
                .sum::<Complex64>()
                * g.dx()
                / (2.0 * PI).sqrt()
        })
        .collect()
}

/// Closed-form free evolution of `(2πσ²)^{-1/4} e^{-(x-a)²/(4σ²)} e^{ip₀x}`.
pub fn free_gaussian(x: f64, t: f64, a: f64, sigma: f64, p0: f64) -> Complex64 {
    let s2 = sigma * sigma;
    let st = Complex64::new(s2, 0.5 * t);
    let d = x - a - p0 * t;
    (Complex64::new(s2, 0.0) / st).sqrt()
        * (2.0 * PI * s2).powf(-0.25)
        * (-(d * d) / (4.0 * st)).exp()
        * Complex64::from_polar(1.0, p0 * x - 0.5 * p0 * p0 * t)
}
