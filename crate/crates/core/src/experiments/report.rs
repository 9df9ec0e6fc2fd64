use std::fmt;

use crate::arrival::ArrivalDistribution;

/// Acceptance condition attached to a metric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Threshold {
    AtMost(f64),
    AtLeast(f64),
    Above(f64),
    Equals(f64),
    /// Recorded only.
    None,
}

impl Threshold {
    pub fn accepts(&self, value: f64) -> Option<bool> {
        match *self {
            Threshold::AtMost(t) => Some(value <= t),
            Threshold::AtLeast(t) => Some(value >= t),
            Threshold::Above(t) => Some(value > t),
            Threshold::Equals(t) => Some(value == t),
            Threshold::None => None,
        }
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::AtMost(t) => write!(f, "<= {t:e}"),
            Threshold::AtLeast(t) => write!(f, ">= {t:e}"),
            Threshold::Above(t) => write!(f, "> {t:e}"),
            Threshold::Equals(t) => write!(f, "== {t}"),
            Threshold::None => f.write_str("(recorded)"),
        }
    }
}

/// Where a threshold comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// Holds by construction or symmetry.
    Construction,
    /// Set from an independent computation or a calibration run.
    Derived,
    /// Qualitative published claim turned into a number.
    Published,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::Construction => "construction",
            Basis::Derived => "derived",
            Basis::Published => "published",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Metric {
    pub name: String,
    pub value: f64,
    pub threshold: Threshold,
    pub basis: Basis,
}

impl Metric {
    pub fn passed(&self) -> Option<bool> {
        self.threshold.accepts(self.value)
    }
}

/// Tabular data bound for one CSV file.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Series {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn from_distribution(name: &str, axis: &str, d: &ArrivalDistribution) -> Self {
        let mut s = Self::new(name, &[axis, "density"]);
        for (a, v) in d.axis.iter().zip(&d.density) {
            s.push(vec![*a, *v]);
        }
        s
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExperimentReport {
    pub name: String,
    pub metrics: Vec<Metric>,
    pub series: Vec<Series>,
    pub distributions: Vec<(String, ArrivalDistribution)>,
}

impl ExperimentReport {
    pub fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            ..Self::default()
        }
    }

    pub fn metric(&mut self, name: &str, value: f64, threshold: Threshold, basis: Basis) {
        self.metrics.push(Metric {
            name: name.to_string(),
            value,
            threshold,
            basis,
        });
    }

    pub fn record(&mut self, name: &str, value: f64) {
        self.metric(name, value, Threshold::None, Basis::Derived);
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.metrics.iter().find(|m| m.name == name).map(|m| m.value)
    }

    pub fn series(&self, name: &str) -> Option<&Series> {
        self.series.iter().find(|s| s.name == name)
    }

    pub fn distribution(&self, name: &str) -> Option<&ArrivalDistribution> {
        self.distributions.iter().find(|(n, _)| n == name).map(|(_, d)| d)
    }

    pub fn all_passed(&self) -> bool {
        self.metrics.iter().all(|m| m.passed().unwrap_or(true))
    }

    /// One line per metric: status, name, value, threshold, basis.
    pub fn summary(&self) -> String {
        let mut out = format!("experiment {}\n", self.name);
        for m in &self.metrics {
            let status = match m.passed() {
                Some(true) => "PASS",
                Some(false) => "FAIL",
                None => "INFO",
            };
            out.push_str(&format!(
                "{status} {} = {:.6e} [{}; {}]\n",
                m.name, m.value, m.threshold, m.basis
            ));
        }
        out.push_str(if self.all_passed() {
            "overall PASS\n"
        } else {
            "overall FAIL\n"
        });
        out
    }
}
