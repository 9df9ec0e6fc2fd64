use crate::arrival::interpolate;
use crate::error::{input, Error, Result};
use crate::repspace::{SpatialGrid, Spectral, WaveFunction};

/// Densities below this stop a trajectory.
pub const NODE_GUARD: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub start: f64,
    pub times: Vec<f64>,
    pub positions: Vec<f64>,
    /// Why integration stopped early, if it did.
    pub stopped: Option<Error>,
}

impl Trajectory {
    pub fn min_abs_position(&self) -> f64 {
        self.positions.iter().map(|x| x.abs()).fold(f64::INFINITY, f64::min)
    }

    pub fn last(&self) -> f64 {
        *self.positions.last().expect("trajectory holds its start")
    }
}

struct Field {
    time: f64,
    density: Vec<f64>,
    current: Vec<f64>,
}

impl Field {
    fn new(spectral: &Spectral, time: f64, psi: &WaveFunction) -> Self {
        let (value, deriv) = spectral.with_derivative(psi);
        let density = value.iter().map(|v| v.norm_sqr()).collect();
        let current = value.iter().zip(&deriv).map(|(v, d)| (v.conj() * d).im).collect();
        Self { time, density, current }
    }
}

/// Velocity `J/|ψ|²` at `x`, with `J` and `|ψ|²` interpolated linearly in
/// space and time between two snapshots (`w` is the weight of `b`).
fn velocity(grid: &SpatialGrid, a: &Field, b: &Field, w: f64, x: f64) -> Result<(f64, f64)> {
    let rho = (1.0 - w) * interpolate(grid, &a.density, x)? + w * interpolate(grid, &b.density, x)?;
    let j = (1.0 - w) * interpolate(grid, &a.current, x)? + w * interpolate(grid, &b.current, x)?;
    Ok((j / rho, rho))
}

/// Integrates `dx/dt = J/|ψ|²` through a sequence of snapshots with the
/// midpoint rule, one step per snapshot interval.
///
/// Snapshots must share a grid and come in increasing time order. A
/// trajectory that meets `|ψ|² < 1e-12` or leaves the grid is truncated and
/// the reason stored in [`Trajectory::stopped`].
pub fn bohmian_trajectories<I>(snapshots: I, starts: &[f64]) -> Result<Vec<Trajectory>>
where
    I: IntoIterator<Item = (f64, WaveFunction)>,
{
    let mut iter = snapshots.into_iter();
    let (t0, psi0) = iter.next().ok_or_else(|| input("no snapshots"))?;
    let grid = *psi0.grid();
    let spectral = Spectral::new(grid);
    let mut prev = Field::new(&spectral, t0, &psi0);
    let mut trajectories: Vec<Trajectory> = starts
        .iter()
        .map(|&x| Trajectory {
            start: x,
            times: vec![t0],
            positions: vec![x],
            stopped: None,
        })
        .collect();
    for (t, psi) in iter {
        if psi.grid() != &grid {
            return Err(input("snapshots live on different grids"));
        }
        let h = t - prev.time;
        if !(h > 0.0) {
            return Err(input("snapshot times must increase"));
        }
        let next = Field::new(&spectral, t, &psi);
        for tr in trajectories.iter_mut().filter(|tr| tr.stopped.is_none()) {
            let x = tr.last();
            let step = velocity(&grid, &prev, &next, 0.0, x).and_then(|(v, rho)| {
                if !(rho >= NODE_GUARD) {
                    return Err(Error::NodeProximity {
                        position: x,
                        time: prev.time,
                        density: rho,
                    });
                }
                let mid = x + 0.5 * h * v;
                let (v_mid, rho_mid) = velocity(&grid, &prev, &next, 0.5, mid)?;
                if !(rho_mid >= NODE_GUARD) {
                    return Err(Error::NodeProximity {
                        position: mid,
                        time: prev.time + 0.5 * h,
                        density: rho_mid,
                    });
                }
                Ok(x + h * v_mid)
            });
            match step {
                Ok(x_new) => {
                    tr.times.push(t);
                    tr.positions.push(x_new);
                }
                Err(e) => tr.stopped = Some(e),
            }
        }
        prev = next;
    }
    Ok(trajectories)
}

/// True if the trajectories keep their initial ordering at every common step.
pub fn ordering_preserved(trajectories: &[Trajectory]) -> bool {
    let mut sorted: Vec<&Trajectory> = trajectories.iter().collect();
    sorted.sort_by(|a, b| a.start.total_cmp(&b.start));
    let steps = sorted.iter().map(|t| t.positions.len()).min().unwrap_or(0);
    (0..steps).all(|i| sorted.windows(2).all(|w| w[0].positions[i] < w[1].positions[i]))
}
