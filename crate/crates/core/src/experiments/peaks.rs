use crate::arrival::ArrivalDistribution;

/// Peaks must exceed this fraction of the global maximum.
pub const PEAK_FLOOR: f64 = 0.05;
/// Candidates closer than this many bins are merged.
pub const PEAK_MERGE_BINS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub location: f64,
    pub height: f64,
    pub index: usize,
}

/// Interior local maxima above 5% of the global maximum, merged within 3 bins.
pub fn peak_detect(d: &ArrivalDistribution) -> Vec<Peak> {
    let v = &d.density;
    let top = v.iter().copied().fold(0.0, f64::max);
    if v.len() < 3 || top <= 0.0 {
        return Vec::new();
    }
    let floor = PEAK_FLOOR * top;
    let mut peaks: Vec<Peak> = Vec::new();
    for i in 1..v.len() - 1 {
        if v[i] > v[i - 1] && v[i] >= v[i + 1] && v[i] >= floor {
            let candidate = Peak {
                location: d.axis[i],
                height: v[i],
                index: i,
            };
            match peaks.last_mut() {
                Some(last) if i - last.index <= PEAK_MERGE_BINS => {
                    if candidate.height > last.height {
                        *last = candidate;
                    }
                }
                _ => peaks.push(candidate),
            }
        }
    }
    peaks
}
