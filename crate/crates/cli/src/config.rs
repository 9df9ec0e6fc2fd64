//! Flat `key = value` run configuration.
//!
//! Keys match the long command-line flags. Defaults depend on the experiment,
//! and a few are derived from other keys (the θ-step window from `theta1`,
//! `theta2` and `delta`; the run time of the pair experiments from the packet)
//! unless given explicitly. [`RunConfig::manifest`] writes every resolved value,
//! so parsing a manifest reproduces the run.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use arrival_core::experiments::{PacketKind, PacketSpec};
use arrival_core::propagate::AbsorberProfile;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    Odd,
    Symmetric,
    ThetaStep,
    Covariance,
    Evolve,
    Arrival,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 6] = [
        ExperimentKind::Odd,
        ExperimentKind::Symmetric,
        ExperimentKind::ThetaStep,
        ExperimentKind::Covariance,
        ExperimentKind::Evolve,
        ExperimentKind::Arrival,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Odd => "odd",
            ExperimentKind::Symmetric => "symmetric",
            ExperimentKind::ThetaStep => "theta-step",
            ExperimentKind::Covariance => "covariance",
            ExperimentKind::Evolve => "evolve",
            ExperimentKind::Arrival => "arrival",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown experiment `{s}`"))
    }
}

pub const KEYS: &[&str] = &[
    "experiment",
    "out",
    "n",
    "x-min",
    "dx",
    "packet",
    "center",
    "width",
    "momentum",
    "theta-min",
    "theta-max",
    "theta-samples",
    "v0",
    "half-width",
    "absorber-center",
    "profile",
    "dt",
    "t-total",
    "stride",
    "theta1",
    "theta2",
    "far-radius",
    "probe-x",
    "delta",
    "shift",
    "samples",
    "seed",
    "peak-window",
    "peak-count",
    "peak-mass-min",
    "povm-l1-min",
    "current-max",
    "absorbed-max",
    "far-min",
    "window-min",
    "pre-window-max",
    "cap-ratio-min",
];

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub experiment: ExperimentKind,
    pub out: PathBuf,
    pub n: usize,
    pub x_min: f64,
    pub dx: f64,
    pub packet: PacketKind,
    pub center: f64,
    pub width: f64,
    pub momentum: f64,
    pub theta_min: f64,
    pub theta_max: f64,
    pub theta_samples: usize,
    pub v0: f64,
    pub half_width: f64,
    pub absorber_center: f64,
    pub profile: AbsorberProfile,
    pub dt: f64,
    pub t_total: f64,
    pub stride: usize,
    pub theta1: f64,
    pub theta2: f64,
    pub far_radius: f64,
    pub probe_x: f64,
    pub delta: f64,
    pub shift: f64,
    pub samples: usize,
    pub seed: u64,
    pub peak_window: f64,
    pub peak_count: usize,
    pub peak_mass_min: f64,
    pub povm_l1_min: f64,
    pub current_max: f64,
    pub absorbed_max: f64,
    pub far_min: f64,
    pub window_min: f64,
    pub pre_window_max: f64,
    pub cap_ratio_min: f64,
}

fn profile_name(p: AbsorberProfile) -> &'static str {
    match p {
        AbsorberProfile::Gaussian => "gaussian",
        AbsorberProfile::Rectangular => "rectangular",
    }
}

impl RunConfig {
    /// Defaults for `experiment` before any key is applied.
    pub fn defaults(experiment: ExperimentKind) -> Self {
        let mut c = RunConfig {
            experiment,
            out: PathBuf::from("results"),
            n: 4096,
            x_min: -40.0,
            dx: 80.0 / 4096.0,
            packet: PacketKind::OddPair,
            center: -10.0,
            width: 1.0,
            momentum: 3.0,
            theta_min: -10.0,
            theta_max: 10.0,
            theta_samples: 2001,
            v0: 0.2,
            half_width: 0.02,
            absorber_center: 0.0,
            profile: AbsorberProfile::Gaussian,
            dt: 1e-3,
            t_total: 20.0 / 3.0,
            stride: 10,
            theta1: 2.0,
            theta2: 2.1,
            far_radius: 2.0,
            probe_x: 0.003,
            delta: 0.5,
            shift: 1.0,
            samples: 100,
            seed: 7,
            peak_window: 2.0,
            peak_count: 2,
            peak_mass_min: 0.9,
            povm_l1_min: 0.1,
            current_max: 1e-10,
            absorbed_max: 1e-4,
            far_min: 0.4,
            window_min: 0.95,
            pre_window_max: 1e-3,
            cap_ratio_min: 10.0,
        };
        match experiment {
            ExperimentKind::Symmetric => c.packet = PacketKind::SymmetricPair,
            ExperimentKind::ThetaStep => {
                c.packet = PacketKind::ThetaStep;
                c.n = 16384;
                c.x_min = -320.0;
                c.dx = 640.0 / 16384.0;
                c.v0 = 1.0;
                c.half_width = 0.1;
            }
            ExperimentKind::Evolve | ExperimentKind::Arrival => c.packet = PacketKind::Gaussian,
            ExperimentKind::Odd | ExperimentKind::Covariance => {}
        }
        c
    }

    /// Resolves raw key/value pairs, later pairs overriding earlier ones.
    pub fn from_pairs(pairs: &[(String, String)]) -> Result<Self, CliError> {
        let mut map = BTreeMap::new();
        for (k, v) in pairs {
            if !KEYS.contains(&k.as_str()) {
                return Err(CliError::UnknownKey(k.clone()));
            }
            map.insert(k.as_str(), v.as_str());
        }
        let experiment = match map.get("experiment") {
            Some(v) => v.parse().map_err(|m| CliError::field("experiment", m))?,
            None => ExperimentKind::Odd,
        };
        let mut c = Self::defaults(experiment);
        for (&k, &v) in &map {
            c.set(k, v)?;
        }
        if c.experiment == ExperimentKind::ThetaStep {
            let dtheta = 1e-4;
            let lo = c.theta1 - c.delta - 0.1;
            if !map.contains_key("theta-min") {
                c.theta_min = lo;
            }
            if !map.contains_key("theta-max") {
                c.theta_max = c.theta2 + 0.1;
            }
            if !map.contains_key("theta-samples") {
                c.theta_samples = ((c.theta_max - c.theta_min) / dtheta).round() as usize + 1;
            }
            if !map.contains_key("t-total") {
                c.t_total = c.theta1;
            }
        } else if matches!(c.experiment, ExperimentKind::Odd | ExperimentKind::Symmetric)
            && !map.contains_key("t-total")
            && c.momentum != 0.0
        {
            c.t_total = 2.0 * c.center.abs() / c.momentum.abs();
        }
        c.validate()?;
        Ok(c)
    }

    pub fn parse_str(text: &str) -> Result<Self, CliError> {
        Self::from_pairs(&parse_pairs(text)?)
    }

    pub fn parse_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse_str(&text)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        fn num<T: FromStr>(key: &str, value: &str) -> Result<T, CliError> {
            value
                .parse()
                .map_err(|_| CliError::field(key, format!("cannot parse `{value}`")))
        }
        match key {
            "experiment" => {}
            "out" => self.out = PathBuf::from(value),
            "n" => self.n = num(key, value)?,
            "x-min" => self.x_min = num(key, value)?,
            "dx" => self.dx = num(key, value)?,
            "packet" => {
                self.packet = PacketKind::parse(value)
                    .ok_or_else(|| CliError::field(key, format!("unknown packet kind `{value}`")))?
            }
            "center" => self.center = num(key, value)?,
            "width" => self.width = num(key, value)?,
            "momentum" => self.momentum = num(key, value)?,
            "theta-min" => self.theta_min = num(key, value)?,
            "theta-max" => self.theta_max = num(key, value)?,
            "theta-samples" => self.theta_samples = num(key, value)?,
            "v0" => self.v0 = num(key, value)?,
            "half-width" => self.half_width = num(key, value)?,
            "absorber-center" => self.absorber_center = num(key, value)?,
            "profile" => {
                self.profile = match value {
                    "gaussian" => AbsorberProfile::Gaussian,
                    "rectangular" => AbsorberProfile::Rectangular,
                    _ => return Err(CliError::field(key, format!("unknown profile `{value}`"))),
                }
            }
            "dt" => self.dt = num(key, value)?,
            "t-total" => self.t_total = num(key, value)?,
            "stride" => self.stride = num(key, value)?,
            "theta1" => self.theta1 = num(key, value)?,
            "theta2" => self.theta2 = num(key, value)?,
            "far-radius" => self.far_radius = num(key, value)?,
            "probe-x" => self.probe_x = num(key, value)?,
            "delta" => self.delta = num(key, value)?,
            "shift" => self.shift = num(key, value)?,
            "samples" => self.samples = num(key, value)?,
            "seed" => self.seed = num(key, value)?,
            "peak-window" => self.peak_window = num(key, value)?,
            "peak-count" => self.peak_count = num(key, value)?,
            "peak-mass-min" => self.peak_mass_min = num(key, value)?,
            "povm-l1-min" => self.povm_l1_min = num(key, value)?,
            "current-max" => self.current_max = num(key, value)?,
            "absorbed-max" => self.absorbed_max = num(key, value)?,
            "far-min" => self.far_min = num(key, value)?,
            "window-min" => self.window_min = num(key, value)?,
            "pre-window-max" => self.pre_window_max = num(key, value)?,
            "cap-ratio-min" => self.cap_ratio_min = num(key, value)?,
            _ => return Err(CliError::UnknownKey(key.to_string())),
        }
        Ok(())
    }

    fn reals(&self) -> [(&'static str, f64); 29] {
        [
            ("x-min", self.x_min),
            ("dx", self.dx),
            ("center", self.center),
            ("width", self.width),
            ("momentum", self.momentum),
            ("theta-min", self.theta_min),
            ("theta-max", self.theta_max),
            ("v0", self.v0),
            ("half-width", self.half_width),
            ("absorber-center", self.absorber_center),
            ("dt", self.dt),
            ("t-total", self.t_total),
            ("theta1", self.theta1),
            ("theta2", self.theta2),
            ("far-radius", self.far_radius),
            ("probe-x", self.probe_x),
            ("delta", self.delta),
            ("shift", self.shift),
            ("peak-window", self.peak_window),
            ("peak-mass-min", self.peak_mass_min),
            ("povm-l1-min", self.povm_l1_min),
            ("current-max", self.current_max),
            ("absorbed-max", self.absorbed_max),
            ("far-min", self.far_min),
            ("window-min", self.window_min),
            ("pre-window-max", self.pre_window_max),
            ("cap-ratio-min", self.cap_ratio_min),
            ("n", self.n as f64),
            ("theta-samples", self.theta_samples as f64),
        ]
    }

    pub fn validate(&self) -> Result<(), CliError> {
        for (key, v) in self.reals() {
            if !v.is_finite() {
                return Err(CliError::field(key, format!("{key} must be finite")));
            }
        }
        let positive = [
            ("dx", self.dx),
            ("dt", self.dt),
            ("t-total", self.t_total),
            ("far-radius", self.far_radius),
            ("delta", self.delta),
            ("peak-window", self.peak_window),
        ];
        for (key, v) in positive {
            if !(v > 0.0) {
                return Err(CliError::field(key, format!("{key} must be positive")));
            }
        }
        if self.packet != PacketKind::ThetaStep && !(self.width > 0.0) {
            return Err(CliError::field("width", "width must be positive"));
        }
        if self.n < 8 || !self.n.is_power_of_two() {
            return Err(CliError::field("n", "n must be a power of two, at least 8"));
        }
        if self.v0 < 0.0 {
            return Err(CliError::field("v0", "v0 must not be negative"));
        }
        if !(self.half_width > 0.0) {
            return Err(CliError::field("half-width", "half-width must be positive"));
        }
        if self.theta_samples < 2 {
            return Err(CliError::field("theta-samples", "theta-samples must be at least 2"));
        }
        if !(self.theta_max > self.theta_min) {
            return Err(CliError::field("theta-max", "theta-max must exceed theta-min"));
        }
        if !(self.theta2 > self.theta1) {
            return Err(CliError::field("theta2", "theta2 must exceed theta1"));
        }
        if self.stride == 0 {
            return Err(CliError::field("stride", "stride must be at least 1"));
        }
        let required = match self.experiment {
            ExperimentKind::Odd => Some(PacketKind::OddPair),
            ExperimentKind::Symmetric => Some(PacketKind::SymmetricPair),
            ExperimentKind::ThetaStep => Some(PacketKind::ThetaStep),
            _ => None,
        };
        if let Some(kind) = required {
            if self.packet != kind {
                return Err(CliError::field(
                    "packet",
                    format!("experiment {} needs packet {}", self.experiment, kind.name()),
                ));
            }
        }
        Ok(())
    }

    pub fn packet_spec(&self) -> PacketSpec {
        PacketSpec {
            kind: self.packet,
            center: self.center,
            width: self.width,
            momentum: self.momentum,
            theta: (self.theta1, self.theta2),
        }
    }

    /// Every resolved key in `KEYS` order; floats use the shortest exact form.
    pub fn manifest(&self) -> String {
        let mut s = String::new();
        let reals: BTreeMap<&str, f64> = self.reals().into_iter().collect();
        for &key in KEYS {
            let value = match key {
                "experiment" => self.experiment.name().to_string(),
                "out" => self.out.display().to_string(),
                "n" => self.n.to_string(),
                "theta-samples" => self.theta_samples.to_string(),
                "packet" => self.packet.name().to_string(),
                "profile" => profile_name(self.profile).to_string(),
                "stride" => self.stride.to_string(),
                "samples" => self.samples.to_string(),
                "seed" => self.seed.to_string(),
                "peak-count" => self.peak_count.to_string(),
                other => format!("{:?}", reals[other]),
            };
            let _ = writeln!(s, "{key} = {value}");
        }
        s
    }
}

/// Splits `key = value` lines; blank lines and `#` comments are skipped.
pub fn parse_pairs(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| CliError::Syntax {
            line: i + 1,
            text: raw.to_string(),
        })?;
        pairs.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        let c = RunConfig::parse_str("").unwrap();
        assert_eq!(c, RunConfig::defaults(ExperimentKind::Odd));
        assert!(c.manifest().contains("width = 1.0"));
    }

    #[test]
    fn odd_selector() {
        let c = RunConfig::parse_str("experiment = odd\nwidth = 1\n").unwrap();
        assert_eq!(c.experiment, ExperimentKind::Odd);
        assert_eq!(c.packet, PacketKind::OddPair);
        assert_eq!(c.width, 1.0);
    }

    #[test]
    fn negative_width_names_field() {
        let err = RunConfig::parse_str("width = -1").unwrap_err();
        assert!(err.to_string().contains("width must be positive"), "{err}");
    }

    #[test]
    fn unknown_key_is_named() {
        let err = RunConfig::parse_str("colour = blue").unwrap_err();
        assert!(err.to_string().contains("colour"), "{err}");
    }

    #[test]
    fn manifest_round_trips() {
        for kind in ExperimentKind::ALL {
            let c = RunConfig::parse_str(&format!("experiment = {kind}\nv0 = 0.30000000000000004\n")).unwrap();
            assert_eq!(RunConfig::parse_str(&c.manifest()).unwrap(), c);
        }
    }

    #[test]
    fn theta_step_window_follows_interval() {
        let c = RunConfig::parse_str("experiment = theta-step\ntheta1 = 3\ntheta2 = 3.2").unwrap();
        assert_eq!(c.theta_min, 3.0 - 0.5 - 0.1);
        assert!((c.theta_max - 3.3).abs() < 1e-12);
        assert_eq!(c.t_total, 3.0);
        assert_eq!(c.n, 16384);
    }

    #[test]
    fn comments_and_syntax() {
        assert!(RunConfig::parse_str("# note\n\nn = 1024 # smaller\n").is_ok());
        assert!(matches!(
            RunConfig::parse_str("n 1024"),
            Err(CliError::Syntax { line: 1, .. })
        ));
    }
}
