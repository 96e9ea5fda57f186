//! Frequency estimate from a sampled oscillation.

use crate::error::{Error, Result};

/// Angular frequency of `values(t)` from its zero crossings.
///
/// Each crossing is located by linear interpolation between neighbouring
/// samples; consecutive crossings of a sinusoid are half a period apart, so
/// the estimate is `π (m − 1) / (t_last − t_first)` over `m` crossings.
pub fn zero_crossing_frequency(times: &[f64], values: &[f64]) -> Result<f64> {
    if times.len() != values.len() {
        return Err(Error::domain("times and values differ in length"));
    }
    let mut crossings = Vec::new();
    for k in 1..values.len() {
        let (a, b) = (values[k - 1], values[k]);
        if a == 0.0 {
            if crossings.last() != Some(&times[k - 1]) {
                crossings.push(times[k - 1]);
            }
        } else if a * b < 0.0 {
            let frac = a / (a - b);
            crossings.push(times[k - 1] + frac * (times[k] - times[k - 1]));
        }
    }
    if crossings.len() < 2 {
        return Err(Error::domain(format!(
            "need at least two zero crossings to fit a frequency, found {}",
            crossings.len()
        )));
    }
    let span = crossings[crossings.len() - 1] - crossings[0];
    Ok(std::f64::consts::PI * (crossings.len() - 1) as f64 / span)
}
