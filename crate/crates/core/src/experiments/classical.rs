use crate::arrival::classical_toa;
use crate::error::Result;

/// Fraction of classical phase-space points `(x, p)` whose pseudotime
/// `-x/|p|` differs from the time they actually reach the origin.
pub fn false_time_fraction(points: &[(f64, f64)]) -> Result<f64> {
    let mut flagged = 0usize;
    for &(x, p) in points {
        if classical_toa(x, p)?.false_flag {
            flagged += 1;
        }
    }
    Ok(flagged as f64 / points.len().max(1) as f64)
}
