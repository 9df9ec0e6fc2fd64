use crate::arrival::{
    current_field_with, interpolate, kijowski_with, povm_density, ArrivalDistribution, DistributionKind,
};
use crate::error::{input, Result};
use crate::experiments::{
    make_packet, peak_detect, Basis, ExperimentReport, PacketKind, PacketSpec, Series, Threshold,
};
use crate::propagate::{absorption_density, cap_evolve, free_snapshots, AbsorberSpec, EvolutionRecord};
use crate::repspace::{SpatialGrid, Spectral, ThetaGrid, WaveFunction};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OddThresholds {
    pub theta_peaks: usize,
    pub povm_l1_min: f64,
    pub current_max: f64,
    pub absorbed_max: f64,
    pub peak_mass_min: f64,
}

impl Default for OddThresholds {
    fn default() -> Self {
        Self {
            theta_peaks: 2,
            povm_l1_min: 0.1,
            current_max: 1e-10,
            absorbed_max: 1e-4,
            peak_mass_min: 0.9,
        }
    }
}

/// Odd packet `h(x) - h(-x)` watched by a screen at the origin: the
/// pseudotime density, the POVM density, the current through the node, and
/// the norm absorbed by an even complex potential.
#[derive(Debug, Clone, PartialEq)]
pub struct OddExperiment {
    pub grid: SpatialGrid,
    pub packet: PacketSpec,
    pub absorber: AbsorberSpec,
    pub theta: ThetaGrid,
    pub t_total: f64,
    pub dt: f64,
    /// Record every `stride`-th step in the current and comparison series.
    pub stride: usize,
    /// Half-width of the θ window around each detected peak.
    pub peak_window: f64,
    pub thresholds: OddThresholds,
}

impl Default for OddExperiment {
    fn default() -> Self {
        let packet = PacketSpec::default();
        Self {
            grid: SpatialGrid::default(),
            packet,
            absorber: AbsorberSpec::gaussian(0.02, 0.2).expect("valid absorber"),
            theta: ThetaGrid::spanning(-10.0, 10.0, 2001).expect("valid theta grid"),
            t_total: covering_time(&packet),
            dt: 1e-3,
            stride: 10,
            peak_window: 2.0,
            thresholds: OddThresholds::default(),
        }
    }
}

/// Twice the classical flight time `|a|/|p₀|`, so both lobes pass the origin.
pub fn covering_time(packet: &PacketSpec) -> f64 {
    2.0 * packet.center.abs() / packet.momentum.abs()
}

pub(crate) fn current_at(spectral: &Spectral, psi: &WaveFunction, x: f64) -> Result<f64> {
    interpolate(spectral.grid(), &current_field_with(spectral, psi), x)
}

pub(crate) fn cap_series(rec: &EvolutionRecord) -> Series {
    let mut s = Series::new("cap_norm", &["t", "N", "absorbed_density"]);
    for ((t, n), a) in rec.times.iter().zip(&rec.norms).zip(&rec.absorbed_density) {
        s.push(vec![*t, *n, *a]);
    }
    s
}

impl OddExperiment {
    pub fn run(&self) -> Result<ExperimentReport> {
        if self.packet.kind != PacketKind::OddPair {
            return Err(input("the odd experiment needs an odd packet"));
        }
        if self.absorber.x_center != 0.0 {
            return Err(input("the odd experiment needs a screen centred at the origin"));
        }
        if self.stride == 0 {
            return Err(input("stride must be at least 1"));
        }
        let psi = make_packet(&self.packet, &self.grid)?;
        let spectral = Spectral::new(self.grid);
        let steps = ((self.t_total / self.dt).round() as usize).max(1);
        let samples = steps / self.stride + 1;
        let time_axis = ThetaGrid::new(samples, 0.0, self.t_total / steps as f64 * self.stride as f64)?;
        let times = time_axis.values();

        let (densities, evolved) = rayon::join(
            || -> Result<_> {
                Ok((
                    kijowski_with(&spectral, &psi, &self.theta)?,
                    povm_density(&psi, &self.theta)?,
                    kijowski_with(&spectral, &psi, &time_axis)?,
                    povm_density(&psi, &time_axis)?,
                ))
            },
            || -> Result<_> {
                let (_, record) = cap_evolve(&psi, self.t_total, self.dt, &self.absorber)?;
                let mut current = Series::new("current_at_0", &["t", "current"]);
                for (t, snap) in free_snapshots(&psi, &times) {
                    current.push(vec![t, current_at(&spectral, &snap, 0.0)?]);
                }
                Ok((record, current))
            },
        );
        let (theta, povm, theta_t, povm_t) = densities?;
        let (record, current) = evolved?;

        let absorbed = absorption_density(&record)?;
        let absorbed_t = ArrivalDistribution::on_grid(
            DistributionKind::CapAbsorption,
            &time_axis,
            absorbed.density.iter().step_by(self.stride).copied().collect(),
        )?;

        let th = &self.thresholds;
        let mut report = ExperimentReport::new("odd");
        let theta_peaks = peak_detect(&theta);
        report.metric(
            "theta_peak_count",
            theta_peaks.len() as f64,
            Threshold::Equals(th.theta_peaks as f64),
            Basis::Published,
        );
        for (i, p) in theta_peaks.iter().enumerate() {
            report.record(&format!("theta_peak_{i}_location"), p.location);
        }
        let mut peak_mass = 0.0;
        for p in &theta_peaks {
            peak_mass += theta.window_probability(p.location - self.peak_window, p.location + self.peak_window)?;
        }
        report.metric(
            "theta_peak_window_mass",
            peak_mass,
            Threshold::AtLeast(th.peak_mass_min),
            Basis::Derived,
        );
        report.record("theta_mass", theta.mass());

        let povm_peaks = peak_detect(&povm);
        report.record("povm_peak_count", povm_peaks.len() as f64);
        report.record("povm_mass", povm.mass());
        report.metric(
            "l1_theta_povm",
            theta.l1_distance(&povm)?,
            Threshold::Above(th.povm_l1_min),
            Basis::Derived,
        );

        let max_current = current.rows.iter().map(|r| r[1].abs()).fold(0.0, f64::max);
        report.metric(
            "max_current_at_0",
            max_current,
            Threshold::AtMost(th.current_max),
            Basis::Construction,
        );
        report.metric(
            "cap_absorbed_mass",
            record.absorbed_mass(),
            Threshold::AtMost(th.absorbed_max),
            Basis::Published,
        );
        report.record(
            "cap_balance_error",
            (record.final_norm() + record.integrated_absorption() - record.norms[0]).abs(),
        );
        report.record("l1_theta_cap", theta_t.l1_distance(&absorbed_t)?);
        report.record("l1_povm_cap", povm_t.l1_distance(&absorbed_t)?);

        // Same screen, one lobe only: what the absorber does without the mirror image.
        let lobe = PacketSpec::gaussian(self.packet.center, self.packet.width, self.packet.momentum);
        let single = make_packet(&lobe, &self.grid)?;
        let (_, single_record) = cap_evolve(&single, self.t_total, self.dt, &self.absorber)?;
        report.record("single_lobe_absorbed_mass", single_record.absorbed_mass());

        report
            .series
            .push(Series::from_distribution("theta_density", "theta", &theta));
        report
            .series
            .push(Series::from_distribution("povm_density", "t", &povm));
        report.series.push(current);
        report.series.push(cap_series(&record));
        report.distributions.push(("theta".into(), theta));
        report.distributions.push(("povm".into(), povm));
        report.distributions.push(("cap".into(), absorbed));
        Ok(report)
    }
}

/// Runs [`OddExperiment`] on the default grid with the given pieces.
pub fn run_odd_experiment(
    spec: &PacketSpec,
    absorber: &AbsorberSpec,
    tg: &ThetaGrid,
    t_total: f64,
    dt: f64,
) -> Result<ExperimentReport> {
    OddExperiment {
        packet: *spec,
        absorber: *absorber,
        theta: *tg,
        t_total,
        dt,
        ..OddExperiment::default()
    }
    .run()
}
