//! Acceptance gate: one line per criterion and sub-check, then a tally.
//! Exits non-zero if any line fails.

use std::fs;
use std::path::Path;
use std::time::{Duration, Instant};

use arrival_cli::{build_report, RunConfig};
use arrival_core::experiments::{
    bohmian_trajectories, covariance_test, false_time_fraction, make_packet, ordering_preserved, peak_detect,
    OddExperiment, PacketSpec, ThetaStepExperiment,
};
use arrival_core::propagate::{cap_evolve, free_snapshots, AbsorberSpec};
use arrival_core::repspace::{to_momentum, to_position, SpatialGrid, ThetaGrid, WaveFunction};
use arrival_core::Complex64;
use arrival_validation::{free_gaussian, naive_momentum, Gate};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn random_state(rng: &mut impl Rng, g: SpatialGrid) -> WaveFunction {
    let amp = (0..g.n())
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    WaveFunction::position(g, amp).unwrap().normalized().unwrap()
}

fn criterion_1(gate: &mut Gate) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let g = SpatialGrid::new(64, -6.4, 0.2).unwrap();
    let mut oracle = 0.0f64;
    for _ in 0..100 {
        let psi = random_state(&mut rng, g);
        let fast = to_momentum(&psi).unwrap();
        let slow = naive_momentum(&g, psi.amplitudes());
        for (a, b) in fast.amplitudes().iter().zip(&slow) {
            oracle = oracle.max((a - b).norm());
        }
    }
    gate.check(
        "1a transform vs quadratic oracle (n=64)",
        oracle <= 1e-10,
        format!("max deviation {oracle:.3e} (<= 1e-10)"),
    );

    let g = SpatialGrid::new(256, -20.0, 40.0 / 256.0).unwrap();
    let mut drift = 0.0f64;
    for _ in 0..1000 {
        let psi = random_state(&mut rng, g);
        let phi = to_momentum(&psi).unwrap();
        drift = drift.max((phi.norm_sqr() - 1.0).abs());
        drift = drift.max(to_position(&phi).unwrap().distance(&psi).unwrap());
    }
    gate.check(
        "1b unitarity over 1000 states",
        drift <= 1e-12,
        format!("max drift {drift:.3e} (<= 1e-12)"),
    );
    gate.runtime("1", start.elapsed(), secs(10));
}

fn criterion_2(gate: &mut Gate) {
    let start = Instant::now();
    let config = RunConfig::from_pairs(&[("experiment".into(), "covariance".into())]).unwrap();
    assert_eq!(config.samples, 100);
    let report = build_report(&config).unwrap();
    let xi = report.get("max_sample_residual_xi").unwrap();
    let h = report.get("max_positive_residual_h").unwrap();
    gate.check(
        "2a pseudoenergy covariance, 100 random packets",
        xi <= 1e-8,
        format!("max residual {xi:.3e} (<= 1e-8)"),
    );
    gate.check(
        "2b free covariance, 100 random p>0 packets",
        h <= 1e-8,
        format!("max residual {h:.3e} (<= 1e-8)"),
    );
    gate.runtime("2", start.elapsed(), secs(60));
}

fn criterion_3(gate: &mut Gate) {
    let start = Instant::now();
    let psi = make_packet(&PacketSpec::default(), &SpatialGrid::default()).unwrap();
    let tg = ThetaGrid::spanning(-10.0, 10.0, 2001).unwrap();
    let r = covariance_test(&psi, 1.0, &tg).unwrap();
    gate.check(
        "3 free covariance fails for mixed-sign packet, s=1",
        r.h > 0.05,
        format!("residual_h {:.6e} (> 0.05)", r.h),
    );
    gate.runtime("3", start.elapsed(), secs(10));
}

fn criterion_4(gate: &mut Gate) {
    let start = Instant::now();
    let report = OddExperiment::default().run().unwrap();
    let theta = report.distribution("theta").unwrap();
    let povm = report.distribution("povm").unwrap();
    let theta_peaks = peak_detect(theta).len();
    let povm_peaks = peak_detect(povm).len();
    gate.check(
        "4a theta-density peaks",
        theta_peaks == 2,
        format!("{theta_peaks} (== 2)"),
    );
    gate.check("4b POVM-density peaks", povm_peaks == 2, format!("{povm_peaks} (== 2)"));
    let l1 = theta.l1_distance(povm).unwrap();
    gate.check("4c L1(theta, POVM)", l1 > 0.1, format!("{l1:.6e} (> 0.1)"));
    let j = report.get("max_current_at_0").unwrap();
    gate.check("4d max |J(0,t)|", j <= 1e-10, format!("{j:.3e} (<= 1e-10)"));
    let absorbed = report.get("cap_absorbed_mass").unwrap();
    gate.check(
        "4e CAP absorbed mass",
        absorbed <= 1e-4,
        format!("{absorbed:.6e} (<= 1e-4)"),
    );
    gate.runtime("4", start.elapsed(), secs(300));
}

fn criterion_5(gate: &mut Gate) {
    let start = Instant::now();
    let exp = ThetaStepExperiment::default();
    assert_eq!(
        (exp.theta1, exp.theta2, exp.far_radius, exp.delta),
        (2.0, 2.1, 2.0, 0.5)
    );
    let report = exp.run().unwrap();
    let far = report.get("far_fraction_last").unwrap();
    gate.check(
        "5a far fraction as t -> theta1",
        far >= 0.4,
        format!("{far:.6e} (>= 0.4)"),
    );
    let tail = report.get("tail_increasing_final_decade").unwrap();
    gate.check(
        "5b tail |psi(0.003)| strictly increasing over final decade",
        tail == 1.0,
        format!("{} samples", report.get("tail_final_decade_samples").unwrap()),
    );
    let pre = report.get("pre_window_probability").unwrap();
    gate.check(
        "5c spectral probability of [theta1-0.5, theta1]",
        pre <= 1e-3,
        format!("{pre:.6e} (<= 1e-3)"),
    );
    let cap = report.get("cap_pre_window_absorbed").unwrap();
    gate.check(
        "5d CAP absorption in same window",
        cap > 10.0 * pre,
        format!("{cap:.6e} (> 10 x {pre:.3e})"),
    );
    gate.runtime("5", start.elapsed(), secs(300));
}

fn criterion_6(gate: &mut Gate) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let points: Vec<(f64, f64)> = (0..10_000)
        .map(|_| {
            let x = -rng.gen_range(0.1..20.0);
            let speed = rng.gen_range(0.5..5.0);
            (x, if rng.gen_bool(0.5) { speed } else { -speed })
        })
        .collect();
    let fraction = false_time_fraction(&points).unwrap();
    gate.check(
        "6 false-time fraction, 10^4 classical samples",
        (fraction - 0.5).abs() <= 0.02,
        format!("{fraction:.4} (0.50 +/- 0.02)"),
    );
    gate.runtime("6", start.elapsed(), secs(1));
}

fn criterion_7(gate: &mut Gate) {
    let start = Instant::now();
    let g = SpatialGrid::spanning(1024, -40.0, 40.0).unwrap();
    let (a, sigma, p0, t) = (-5.0, 1.0, 2.0, 2.0);
    let psi = WaveFunction::from_fn(g, |x| free_gaussian(x, 0.0, a, sigma, p0));
    let exact = WaveFunction::from_fn(g, |x| free_gaussian(x, t, a, sigma, p0));
    let off = AbsorberSpec::gaussian(1.0, 0.0).unwrap();
    let error = |dt: f64| cap_evolve(&psi, t, dt, &off).unwrap().0.distance(&exact).unwrap();
    let (coarse, fine) = (error(0.02), error(0.01));
    let ratio = coarse / fine;
    gate.check(
        "7 CAP error ratio under dt halving, V0=0",
        (ratio - 4.0).abs() <= 0.8,
        format!("errors {coarse:.3e} -> {fine:.3e}, ratio {ratio:.3} (4 +/- 20%)"),
    );

    // With the screen on, the splitting error is visible; measured against a fine step.
    let screen = AbsorberSpec::gaussian(1.0, 1.0).unwrap();
    let reference = cap_evolve(&psi, t, 1e-4, &screen).unwrap().0;
    let error = |dt: f64| {
        cap_evolve(&psi, t, dt, &screen)
            .unwrap()
            .0
            .distance(&reference)
            .unwrap()
    };
    let (coarse, fine) = (error(0.02), error(0.01));
    let ratio = coarse / fine;
    gate.check(
        "7 supplementary: same ratio with V0=1 against dt=1e-4",
        (ratio - 4.0).abs() <= 0.8,
        format!("errors {coarse:.3e} -> {fine:.3e}, ratio {ratio:.3} (4 +/- 20%)"),
    );
    gate.runtime("7", start.elapsed(), secs(30));
}

fn criterion_8(gate: &mut Gate) {
    let start = Instant::now();
    let g = SpatialGrid::default();
    let spec = PacketSpec::default();
    let psi = make_packet(&spec, &g).unwrap();
    let times: Vec<f64> = (0..=1334).map(|i| i as f64 * 0.005).collect();
    let starts: Vec<f64> = (0..9).map(|i| -12.0 + 0.5 * i as f64).collect();
    let traj = bohmian_trajectories(free_snapshots(&psi, &times), &starts).unwrap();
    let closest = traj.iter().map(|t| t.min_abs_position()).fold(f64::INFINITY, f64::min);
    let complete = traj.iter().all(|t| t.stopped.is_none());
    gate.check(
        "8a odd packet: min_t |x(t)| over all trajectories",
        closest > 0.01 && complete,
        format!(
            "{closest:.4} (> 0.01), {} of {} integrated to the end",
            traj.iter().filter(|t| t.stopped.is_none()).count(),
            traj.len()
        ),
    );
    gate.check(
        "8a ordering preserved",
        ordering_preserved(&traj),
        String::from("no crossings"),
    );

    let centre = make_packet(&PacketSpec::gaussian(spec.center, spec.width, spec.momentum), &g).unwrap();
    let traj = bohmian_trajectories(free_snapshots(&centre, &times[..1001]), &[spec.center]).unwrap();
    let worst = traj[0]
        .times
        .iter()
        .zip(&traj[0].positions)
        .map(|(t, x)| {
            let expected = spec.center + spec.momentum * t;
            (x - expected).abs() / expected.abs().max(1.0)
        })
        .fold(0.0, f64::max);
    gate.check(
        "8b Gaussian centre follows a + p0 t",
        worst <= 0.01,
        format!("worst relative deviation {worst:.3e} (<= 1%)"),
    );
    gate.runtime("8", start.elapsed(), secs(60));
}

fn csv_files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "csv"))
        .map(|p| {
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                fs::read(&p).unwrap(),
            )
        })
        .collect();
    files.sort();
    files
}

fn criterion_9(gate: &mut Gate) {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for run in ["a", "b"] {
        let out = dir.path().join(run);
        let config = RunConfig::from_pairs(&[
            ("experiment".into(), "odd".into()),
            ("out".into(), out.display().to_string()),
        ])
        .unwrap();
        arrival_cli::run(&config).unwrap();
        outputs.push(csv_files(&out));
    }
    let same = !outputs[0].is_empty() && outputs[0] == outputs[1];
    gate.check(
        "9 identical config gives byte-identical CSVs",
        same,
        format!("{} files compared", outputs[0].len()),
    );
}

fn main() {
    let mut gate = Gate::default();
    criterion_1(&mut gate);
    criterion_2(&mut gate);
    criterion_3(&mut gate);
    criterion_4(&mut gate);
    criterion_5(&mut gate);
    criterion_6(&mut gate);
    criterion_7(&mut gate);
    criterion_8(&mut gate);
    criterion_9(&mut gate);
    if !gate.finish() {
        std::process::exit(1);
    }
}
