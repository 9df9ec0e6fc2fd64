use std::f64::consts::PI;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use arrival_core::experiments::{
    approach_times, arrival_report, covariance_report, evolve_report, gaussian_superposition, make_packet,
    ExperimentReport, GaussianComponent, OddExperiment, OddThresholds, Series, SymmetricExperiment,
    ThetaStepExperiment, ThetaStepThresholds,
};
use arrival_core::propagate::AbsorberSpec;
use arrival_core::repspace::{SpatialGrid, ThetaGrid, WaveFunction};
use arrival_core::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{ExperimentKind, RunConfig};
use crate::error::CliError;

pub struct RunOutcome {
    pub report: ExperimentReport,
    pub files: Vec<PathBuf>,
}

impl RunOutcome {
    pub fn passed(&self) -> bool {
        self.report.all_passed()
    }
}

/// `count` normalized superpositions of one to three Gaussians, reproducible
/// from `seed`.
pub fn random_packets(grid: &SpatialGrid, count: usize, seed: u64) -> Result<Vec<WaveFunction>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let parts: Vec<GaussianComponent> = (0..rng.gen_range(1..=3))
                .map(|_| GaussianComponent {
                    center: rng.gen_range(-15.0..15.0),
                    width: rng.gen_range(0.8..2.0),
                    momentum: rng.gen_range(-4.0..4.0),
                    weight: Complex64::from_polar(rng.gen_range(0.1..1.0), rng.gen_range(0.0..2.0 * PI)),
                })
                .collect();
            Ok(gaussian_superposition(grid, &parts)?)
        })
        .collect()
}

pub fn build_report(c: &RunConfig) -> Result<ExperimentReport, CliError> {
    let grid = SpatialGrid::new(c.n, c.x_min, c.dx)?;
    let theta = ThetaGrid::spanning(c.theta_min, c.theta_max, c.theta_samples)?;
    let absorber = AbsorberSpec::new(c.absorber_center, c.half_width, c.v0, c.profile)?;
    let report = match c.experiment {
        ExperimentKind::Odd => OddExperiment {
            grid,
            packet: c.packet_spec(),
            absorber,
            theta,
            t_total: c.t_total,
            dt: c.dt,
            stride: c.stride,
            peak_window: c.peak_window,
            thresholds: OddThresholds {
                theta_peaks: c.peak_count,
                povm_l1_min: c.povm_l1_min,
                current_max: c.current_max,
                absorbed_max: c.absorbed_max,
                peak_mass_min: c.peak_mass_min,
            },
        }
        .run()?,
        ExperimentKind::Symmetric => SymmetricExperiment {
            grid,
            packet: c.packet_spec(),
            absorber,
            theta,
            t_total: c.t_total,
            dt: c.dt,
            stride: c.stride,
            current_max: c.current_max,
        }
        .run()?,
        ExperimentKind::ThetaStep => ThetaStepExperiment {
            grid,
            theta1: c.theta1,
            theta2: c.theta2,
            far_radius: c.far_radius,
            probe_x: c.probe_x,
            times: approach_times(c.theta1),
            delta: c.delta,
            theta,
            absorber,
            dt: c.dt,
            thresholds: ThetaStepThresholds {
                far_min: c.far_min,
                window_min: c.window_min,
                pre_window_max: c.pre_window_max,
                cap_ratio_min: c.cap_ratio_min,
            },
        }
        .run()?,
        ExperimentKind::Covariance => {
            let psi = make_packet(&c.packet_spec(), &grid)?;
            let samples = random_packets(&grid, c.samples, c.seed)?;
            covariance_report(&psi, c.shift, &theta, &samples)?
        }
        ExperimentKind::Evolve => {
            let psi = make_packet(&c.packet_spec(), &grid)?;
            evolve_report(&psi, &absorber, c.t_total, c.dt)?
        }
        ExperimentKind::Arrival => {
            let psi = make_packet(&c.packet_spec(), &grid)?;
            arrival_report(&psi, &theta)?
        }
    };
    Ok(report)
}

/// Header row, then one row per sample in 17-significant-digit scientific notation.
pub fn csv_text(series: &Series) -> String {
    let mut s = series.columns.join(",");
    s.push('\n');
    for row in &series.rows {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

/// Runs the configured experiment and writes one CSV per series plus
/// `summary.txt` and `manifest.txt` into `c.out`.
pub fn run(c: &RunConfig) -> Result<RunOutcome, CliError> {
    let start = Instant::now();
    let report = build_report(c)?;
    fs::create_dir_all(&c.out).map_err(|e| CliError::io(&c.out, e))?;
    let mut files = Vec::new();
    for series in &report.series {
        let path = c.out.join(format!("{}.csv", series.name));
        write(&path, &csv_text(series))?;
        files.push(path);
    }
    let path = c.out.join("summary.txt");
    write(&path, &report.summary())?;
    files.push(path);

    let mut manifest = String::new();
    let _ = writeln!(manifest, "# arrival-cli {}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(manifest, "# wall_time_seconds = {:.3}", start.elapsed().as_secs_f64());
    manifest.push_str(&c.manifest());
    let path = c.out.join("manifest.txt");
    write(&path, &manifest)?;
    files.push(path);
    Ok(RunOutcome { report, files })
}
