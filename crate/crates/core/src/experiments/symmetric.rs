use crate::arrival::kijowski_with;
use crate::error::{input, Result};
use crate::experiments::odd::{cap_series, covering_time, current_at};
use crate::experiments::{make_packet, Basis, ExperimentReport, PacketKind, PacketSpec, Series, Threshold};
use crate::propagate::{cap_evolve_with, free_evolve, AbsorberSpec};
use crate::repspace::{SpatialGrid, Spectral, ThetaGrid, WaveFunction};

/// Even packet `h(x) + h(-x)` against the same screen as the odd one. The
/// two lobes interfere constructively at the origin, so the screen absorbs
/// and the absorbed state drifts away from the free one.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricExperiment {
    pub grid: SpatialGrid,
    pub packet: PacketSpec,
    pub absorber: AbsorberSpec,
    pub theta: ThetaGrid,
    pub t_total: f64,
    pub dt: f64,
    pub stride: usize,
    pub current_max: f64,
}

impl Default for SymmetricExperiment {
    fn default() -> Self {
        let packet = PacketSpec::symmetric(-10.0, 1.0, 3.0);
        Self {
            grid: SpatialGrid::default(),
            packet,
            absorber: AbsorberSpec::gaussian(0.02, 0.2).expect("valid absorber"),
            theta: ThetaGrid::spanning(-10.0, 10.0, 2001).expect("valid theta grid"),
            t_total: covering_time(&packet),
            dt: 1e-3,
            stride: 10,
            current_max: 1e-10,
        }
    }
}

/// `1 - |⟨a|b⟩|/(‖a‖‖b‖)`: zero when the states differ only by norm and phase.
fn shape_distortion(a: &WaveFunction, b: &WaveFunction) -> Result<f64> {
    let denom = (a.norm_sqr() * b.norm_sqr()).sqrt();
    if denom == 0.0 {
        return Ok(0.0);
    }
    Ok((1.0 - a.inner(b)?.norm() / denom).max(0.0))
}

impl SymmetricExperiment {
    pub fn run(&self) -> Result<ExperimentReport> {
        if self.packet.kind != PacketKind::SymmetricPair {
            return Err(input("the symmetric experiment needs a symmetric packet"));
        }
        if self.stride == 0 {
            return Err(input("stride must be at least 1"));
        }
        let psi = make_packet(&self.packet, &self.grid)?;
        let spectral = Spectral::new(self.grid);
        let theta = kijowski_with(&spectral, &psi, &self.theta)?;

        let mut current = Series::new("current_at_0", &["t", "current"]);
        let mut distortion = Series::new("shape_distortion", &["t", "distortion"]);
        let mut failure = None;
        let (_, record) = cap_evolve_with(&psi, self.t_total, self.dt, &self.absorber, |step, t, state| {
            if step % self.stride != 0 || failure.is_some() {
                return;
            }
            let free = free_evolve(&psi, t);
            let row = current_at(&spectral, &free, 0.0).and_then(|j| Ok((j, shape_distortion(&free, state)?)));
            match row {
                Ok((j, d)) => {
                    current.push(vec![t, j]);
                    distortion.push(vec![t, d]);
                }
                Err(e) => failure = Some(e),
            }
        })?;
        if let Some(e) = failure {
            return Err(e);
        }

        let mut report = ExperimentReport::new("symmetric");
        let max_current = current.rows.iter().map(|r| r[1].abs()).fold(0.0, f64::max);
        report.metric(
            "max_current_at_0",
            max_current,
            Threshold::AtMost(self.current_max),
            Basis::Construction,
        );
        report.record("cap_absorbed_mass", record.absorbed_mass());
        report.record(
            "max_shape_distortion",
            distortion.rows.iter().map(|r| r[1]).fold(0.0, f64::max),
        );
        report.record("theta_mass", theta.mass());

        report.series.push(cap_series(&record));
        report.series.push(current);
        report.series.push(distortion);
        report
            .series
            .push(Series::from_distribution("theta_density", "theta", &theta));
        report.distributions.push(("theta".into(), theta));
        Ok(report)
    }
}
