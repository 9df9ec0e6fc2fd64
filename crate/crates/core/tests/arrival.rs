mod common;

use std::f64::consts::PI;

use arrival_core::arrival::{
    auto_theta_grid, kijowski_theta_density, povm_amplitudes, povm_density, probability_current,
};
use arrival_core::experiments::{false_time_fraction, make_packet, project_positive_momentum, PacketSpec};
use arrival_core::repspace::{
    pseudotime_amplitude, theta_step_state, to_momentum, to_pseudoenergy, SpatialGrid, ThetaGrid,
};
use arrival_core::Complex64;
use common::{compensated_sum, gaussian_state, naive_momentum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn grid() -> SpatialGrid {
    SpatialGrid::spanning(1024, -40.0, 40.0).unwrap()
}

#[test]
fn pseudotime_amplitude_matches_compensated_sum() {
    let g = SpatialGrid::spanning(256, -20.0, 20.0).unwrap();
    let psi = gaussian_state(g, -4.0, 1.0, 1.5);
    let tg = ThetaGrid::spanning(-3.0, 9.0, 301).unwrap();
    let fast = pseudotime_amplitude(&to_pseudoenergy(&to_momentum(&psi).unwrap()).unwrap(), &tg).unwrap();

    let phi = naive_momentum(&g, psi.amplitudes());
    let dp = 2.0 * PI / g.length();
    for (l, theta) in tg.values().into_iter().enumerate() {
        let slow = compensated_sum((0..g.n()).filter_map(|k| {
            let p = (k as f64 + 1.0 - (g.n() / 2) as f64) * dp;
            if p == 0.0 {
                return None;
            }
            let xi = p.signum() * p * p / 2.0;
            let w = p.abs() * dp;
            Some(phi[k] / p.abs().sqrt() * w * Complex64::from_polar(1.0, -theta * xi))
        })) / (2.0 * PI).sqrt();
        assert!((fast[l] - slow).norm() < 1e-10, "θ = {theta}");
    }
}

fn momentum_quadrature(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    // Composite Simpson.
    let m = 20000;
    let h = (hi - lo) / m as f64;
    let mut s = f(lo) + f(hi);
    for i in 1..m {
        s += f(lo + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

#[test]
fn right_mover_arrives_at_flight_time() {
    let (a, sigma, p0) = (-10.0, 1.0, 4.0);
    let psi = gaussian_state(grid(), a, sigma, p0);
    let tg = ThetaGrid::spanning(-2.0, 12.0, 2801).unwrap();
    let d = kijowski_theta_density(&psi, &tg).unwrap();
    assert!((d.mass() - 1.0).abs() < 1e-6, "mass {}", d.mass());

    // ⟨Θ⟩ = -a⟨1/p⟩ for a real envelope centred at a.
    let sp = 1.0 / (2.0 * sigma);
    let rho = |p: f64| (-(p - p0).powi(2) / (2.0 * sp * sp)).exp() / (2.0 * PI * sp * sp).sqrt();
    let expected = -a * momentum_quadrature(|p| rho(p) / p, p0 - 12.0 * sp, p0 + 12.0 * sp);
    let mean: f64 = d.axis.iter().zip(&d.density).map(|(t, v)| t * v).sum::<f64>() * tg.dtheta();
    assert!((mean - expected).abs() < 1e-4 * expected, "{mean} vs {expected}");

    // The peak sits within one arrival-time spread of the classical time.
    let peak = d.axis[d.argmax()];
    let spread = a.abs() * sp / (p0 * p0);
    assert!((peak - a.abs() / p0).abs() < spread, "peak {peak}");
}

#[test]
fn povm_equals_spectral_density_for_right_movers() {
    let psi = project_positive_momentum(&gaussian_state(grid(), -8.0, 1.0, 1.0)).unwrap();
    let tg = ThetaGrid::spanning(-5.0, 20.0, 1001).unwrap();
    let theta = kijowski_theta_density(&psi, &tg).unwrap();
    let povm = povm_density(&psi, &tg).unwrap();
    for (a, b) in theta.density.iter().zip(&povm.density) {
        assert!((a - b).abs() < 1e-10);
    }
}

#[test]
fn odd_packet_branches_have_equal_weight() {
    let psi = make_packet(&PacketSpec::default(), &SpatialGrid::default()).unwrap();
    let tg = ThetaGrid::spanning(-10.0, 10.0, 501).unwrap();
    let (plus, minus) = povm_amplitudes(&psi, &tg);
    let povm = povm_density(&psi, &tg).unwrap();
    for ((a, b), v) in plus.iter().zip(&minus).zip(&povm.density) {
        assert!((a.norm() - b.norm()).abs() < 1e-10);
        assert!((v - 2.0 * a.norm_sqr()).abs() < 1e-10);
    }
    let theta = kijowski_theta_density(&psi, &tg).unwrap();
    assert!(theta.l1_distance(&povm).unwrap() > 0.1);
}

#[test]
fn current_of_modulated_envelope() {
    let (a, sigma, p0) = (-3.0, 1.2, 2.5);
    let psi = gaussian_state(grid(), a, sigma, p0);
    for x in [a, a + 0.53, a - 1.1] {
        let envelope = (2.0 * PI * sigma * sigma).powf(-0.5) * (-(x - a).powi(2) / (2.0 * sigma * sigma)).exp();
        let j = probability_current(&psi, x).unwrap();
        assert!((j - p0 * envelope).abs() < 0.01 * p0 * envelope, "x = {x}");
    }
    assert!(probability_current(&psi, 100.0).is_err());
}

#[test]
fn odd_packet_has_no_current_at_node() {
    let psi = make_packet(&PacketSpec::default(), &SpatialGrid::default()).unwrap();
    assert!(probability_current(&psi, 0.0).unwrap().abs() < 1e-12);
}

#[test]
fn step_state_fills_its_window() {
    let g = SpatialGrid::spanning(8192, -160.0, 160.0).unwrap();
    let psi = theta_step_state(2.0, 2.5, &g).unwrap();
    let tg = ThetaGrid::spanning(1.5, 3.0, 1501).unwrap();
    let d = kijowski_theta_density(&psi, &tg).unwrap();
    assert!(d.window_probability(2.0, 2.5).unwrap() >= 0.95);
}

#[test]
fn auto_window_holds_target_mass() {
    let psi = gaussian_state(grid(), -10.0, 1.0, 3.0);
    let tg = auto_theta_grid(&psi, 0.01, 1.0, 0.999).unwrap();
    assert!(kijowski_theta_density(&psi, &tg).unwrap().mass() >= 0.999);
    assert!(tg.theta_max() >= 10.0 / 3.0);
}

#[test]
fn half_of_a_left_side_ensemble_gets_a_false_time() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let points: Vec<(f64, f64)> = (0..10_000)
        .map(|_| {
            let x = -rng.gen_range(0.1..20.0);
            let speed = rng.gen_range(0.5..5.0);
            (x, if rng.gen_bool(0.5) { speed } else { -speed })
        })
        .collect();
    let fraction = false_time_fraction(&points).unwrap();
    assert!((fraction - 0.5).abs() <= 0.02, "{fraction}");
}
