use core::fmt;

/// Errors raised by parameter validation, closed-form evaluation, the solver and measurements.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Grid bounds or point count rejected by [`crate::make_grid`].
    InvalidBounds { x_min: f64, x_max: f64, n: usize },
    /// A parameter that must be strictly positive (or finite) was not.
    NonpositiveParameter { name: &'static str, value: f64 },
    /// `t <= 0` where the action is singular.
    NonpositiveTime { t: f64 },
    /// `beta <= U`: the spatial slope of the oscillator-type action would be imaginary.
    InvalidBeta { beta: f64, u: f64 },
    /// `v^2 < 4 D U`: no real traveling action exists at this speed.
    SubcriticalSpeed { v: f64, v_min: f64 },
    /// The explicit update produced a NaN or a value outside `[-0.5, 1.5]`.
    Instability { time: f64, node: usize, value: f64 },
    /// The field never crosses the requested level.
    NoCrossing { level: f64 },
    /// Not enough samples for a fit or measurement.
    InsufficientSamples { needed: usize, found: usize },
    /// Not enough time snapshots for a centered time derivative.
    InsufficientSnapshots { needed: usize, found: usize },
    /// A list that must be strictly decreasing was not.
    Ordering,
    /// Inconsistent solver configuration or mismatched inputs.
    InvalidConfig(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidBounds { x_min, x_max, n } => write!(
                f,
                "invalid grid bounds: need x_max > x_min and n >= 3 (got [{x_min}, {x_max}], n = {n})"
            ),
            Error::NonpositiveParameter { name, value } => {
                write!(f, "parameter `{name}` must be positive and finite (got {value})")
            }
            Error::NonpositiveTime { t } => write!(f, "time must be positive (got {t})"),
            Error::InvalidBeta { beta, u } => {
                write!(f, "beta must exceed U for a real slope (beta = {beta}, U = {u})")
            }
            Error::SubcriticalSpeed { v, v_min } => {
                write!(f, "speed {v} is below the minimal speed {v_min} = sqrt(4DU)")
            }
            Error::Instability { time, node, value } => {
                write!(f, "explicit update unstable at t = {time}, node {node}: value {value}")
            }
            Error::NoCrossing { level } => write!(f, "field never crosses level {level}"),
            Error::InsufficientSamples { needed, found } => {
                write!(f, "insufficient samples: need {needed}, found {found}")
            }
            Error::InsufficientSnapshots { needed, found } => {
                write!(f, "insufficient snapshots: need {needed}, found {found}")
            }
            Error::Ordering => write!(f, "epsilon values must be strictly decreasing"),
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
