//! Front position, speed and leading-edge decay measurements.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::{ceil, ln, sqrt};
use crate::model::{FrontTrace, Grid1D, ScalarField};
use crate::solver::Trajectory;

/// Default level for speed measurements.
pub const DEFAULT_LEVEL: f64 = 0.5;
/// Default fraction of final samples used by [`front_speed`].
pub const DEFAULT_FIT_WINDOW: f64 = 0.5;
/// Default `rho` band for [`decay_rate`].
pub const DEFAULT_DECAY_BAND: (f64, f64) = (1e-8, 1e-3);

const MIN_FIT_SAMPLES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Direction {
    /// `values[i] >= level > values[i + 1]`.
    Down,
    /// Either sign change of `values - level`.
    Any,
}

/// Rightmost crossing of `level`, linearly interpolated between the bracketing nodes.
pub(crate) fn rightmost_crossing(
    grid: &Grid1D,
    values: &[f64],
    level: f64,
    direction: Direction,
    usable: impl Fn(usize) -> bool,
) -> Option<f64> {
    (0..values.len().saturating_sub(1)).rev().find_map(|i| {
        if !(usable(i) && usable(i + 1)) {
            return None;
        }
        let (a, b) = (values[i] - level, values[i + 1] - level);
        let hit = match direction {
            Direction::Down => a >= 0.0 && b < 0.0,
            Direction::Any => (a >= 0.0 && b < 0.0) || (a <= 0.0 && b > 0.0),
        };
        hit.then(|| grid.x(i) + a / (a - b) * grid.dx())
    })
}

/// Rightmost downward crossing of `level` by linear interpolation.
pub fn front_position(field: &ScalarField, level: f64) -> Result<f64> {
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::NonpositiveParameter {
            name: "level",
            value: level,
        });
    }
    rightmost_crossing(&field.grid, &field.values, level, Direction::Down, |_| true)
        .ok_or(Error::NoCrossing { level })
}

/// Front positions of every snapshot that crosses `level`.
pub fn trace_front(trajectory: &Trajectory, level: f64) -> Result<FrontTrace> {
    let samples = trajectory
        .snapshots
        .iter()
        .filter_map(|s| front_position(s, level).ok().map(|x| (s.time, x)))
        .collect();
    FrontTrace::new(level, samples)
}

/// Ordinary least-squares line through `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    /// Standard error of the slope.
    pub slope_stderr: f64,
    pub n: usize,
}

pub fn linear_fit(points: &[(f64, f64)]) -> Result<LineFit> {
    let n = points.len();
    if n < 3 {
        return Err(Error::InsufficientSamples {
            needed: 3,
            found: n,
        });
    }
    let nf = n as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / nf;
    let my = points.iter().map(|p| p.1).sum::<f64>() / nf;
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for &(x, y) in points {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if !(sxx > 0.0) {
        return Err(Error::InvalidConfig("abscissae are all equal"));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = points
        .iter()
        .map(|&(x, y)| {
            let e = y - (intercept + slope * x);
            e * e
        })
        .sum();
    Ok(LineFit {
        slope,
        intercept,
        slope_stderr: sqrt(ssr / (nf - 2.0) / sxx),
        n,
    })
}

/// Least-squares speed over the last `fit_window` fraction of the trace.
///
/// Returns `(speed, stderr)`.
pub fn front_speed(trace: &FrontTrace, fit_window: f64) -> Result<(f64, f64)> {
    if !(fit_window > 0.0 && fit_window <= 1.0) {
        return Err(Error::NonpositiveParameter {
            name: "fit_window",
            value: fit_window,
        });
    }
    let samples = trace.samples();
    let take = (ceil(fit_window * samples.len() as f64) as usize).min(samples.len());
    if take < MIN_FIT_SAMPLES {
        return Err(Error::InsufficientSamples {
            needed: MIN_FIT_SAMPLES,
            found: take,
        });
    }
    let fit = linear_fit(&samples[samples.len() - take..])?;
    Ok((fit.slope, fit.slope_stderr))
}

/// Fits the speed and stores it on the trace.
pub fn fit_trace(trace: &mut FrontTrace, fit_window: f64) -> Result<(f64, f64)> {
    let (v, se) = front_speed(trace, fit_window)?;
    trace.fitted_speed = Some(v);
    trace.fit_stderr = Some(se);
    Ok((v, se))
}

/// `-(slope of ln rho against x)` over nodes with `rho` in `[rho_lo, rho_hi]`.
pub fn decay_rate(field: &ScalarField, rho_lo: f64, rho_hi: f64) -> Result<f64> {
    if !(rho_lo > 0.0 && rho_hi > rho_lo) {
        return Err(Error::InvalidConfig("decay band needs 0 < rho_lo < rho_hi"));
    }
    let points: Vec<(f64, f64)> = field
        .values
        .iter()
        .enumerate()
        .filter(|(_, &r)| r >= rho_lo && r <= rho_hi)
        .map(|(i, &r)| (field.grid.x(i), ln(r)))
        .collect();
    if points.len() < MIN_FIT_SAMPLES {
        return Err(Error::InsufficientSamples {
            needed: MIN_FIT_SAMPLES,
            found: points.len(),
        });
    }
    Ok(-linear_fit(&points)?.slope)
}
