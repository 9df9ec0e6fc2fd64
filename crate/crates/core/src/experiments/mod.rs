//! Packets, the numerical experiments built on them, and their reports.

mod bohm;
mod classical;
mod covariance;
mod generic;
mod odd;
mod packet;
mod peaks;
mod report;
mod symmetric;
mod theta_step;

pub use bohm::{bohmian_trajectories, ordering_preserved, Trajectory, NODE_GUARD};
pub use classical::false_time_fraction;
pub use covariance::{covariance_test, CovarianceResiduals};
pub use generic::{
    arrival_report, covariance_report, evolve_report, COVARIANCE_FAILURE, COVARIANCE_TOLERANCE, FREE_NORM_TOLERANCE,
};
pub use odd::{covering_time, run_odd_experiment, OddExperiment, OddThresholds};
pub use packet::{
    gaussian_superposition, make_packet, mean_momentum, negative_momentum_mass, project_positive_momentum,
    GaussianComponent, PacketKind, PacketSpec,
};
pub use peaks::{peak_detect, Peak, PEAK_FLOOR, PEAK_MERGE_BINS};
pub use report::{Basis, ExperimentReport, Metric, Series, Threshold};
pub use symmetric::SymmetricExperiment;
pub use theta_step::{
    approach_times, run_theta_step_experiment, step_window, ThetaStepExperiment, ThetaStepThresholds,
};
