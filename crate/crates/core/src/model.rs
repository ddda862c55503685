//! Domain types shared by every other module.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::{sqrt, tanh};

/// Upper tolerance on `rho` for the discrete maximum principle.
pub const TOL_MAX_PRINCIPLE: f64 = 1e-9;

/// Floor applied before taking `-eps * ln(rho)`.
pub const RHO_FLOOR: f64 = 1e-290;

fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::NonpositiveParameter { name, value })
    }
}

/// Diffusion constant `D` and reaction rate `U` of `rho_t = D rho_xx + U rho (1 - rho)`.
///
/// `D` must be positive. `U` only has to be finite: a negative rate is representable so
/// the action-matching audit can talk about it, but every front-speed operation calls
/// [`PhysicalParams::require_reaction`] first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    d: f64,
    u: f64,
}

impl PhysicalParams {
    pub fn new(d: f64, u: f64) -> Result<Self> {
        positive("D", d)?;
        if !u.is_finite() {
            return Err(Error::NonpositiveParameter {
                name: "U",
                value: u,
            });
        }
        Ok(Self { d, u })
    }

    /// `D = U = 1`, the dimensionless equation.
    pub fn unit() -> Self {
        Self { d: 1.0, u: 1.0 }
    }

    #[inline]
    pub fn d(&self) -> f64 {
        self.d
    }

    #[inline]
    pub fn u(&self) -> f64 {
        self.u
    }

    /// Rejects `U <= 0`.
    pub fn require_reaction(&self) -> Result<()> {
        positive("U", self.u).map(|_| ())
    }

    /// Mass constant `m = 1/(2D)` of the quantum-mechanical reading of `H(p) = D p^2 + U`.
    pub fn mass(&self) -> f64 {
        1.0 / (2.0 * self.d)
    }

    /// Hamiltonian `H(p) = D p^2 + U`.
    pub fn hamiltonian(&self, p: f64) -> f64 {
        self.d * p * p + self.u
    }
}

/// Hyperbolic scale factor `eps` in `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ScalingParam(f64);

impl ScalingParam {
    pub fn new(epsilon: f64) -> Result<Self> {
        if epsilon.is_finite() && epsilon > 0.0 && epsilon <= 1.0 {
            Ok(Self(epsilon))
        } else {
            Err(Error::NonpositiveParameter {
                name: "epsilon",
                value: epsilon,
            })
        }
    }

    pub const fn one() -> Self {
        Self(1.0)
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

/// Uniform 1D mesh.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    x_min: f64,
    x_max: f64,
    n: usize,
    dx: f64,
}

/// Uniform grid with `n` nodes on `[x_min, x_max]`.
pub fn make_grid(x_min: f64, x_max: f64, n: usize) -> Result<Grid1D> {
    if !(x_min.is_finite() && x_max.is_finite()) || x_max <= x_min || n < 3 {
        return Err(Error::InvalidBounds { x_min, x_max, n });
    }
    Ok(Grid1D {
        x_min,
        x_max,
        n,
        dx: (x_max - x_min) / (n - 1) as f64,
    })
}

impl Grid1D {
    /// Grid with spacing as close to `dx` as an integer node count allows.
    pub fn with_spacing(x_min: f64, x_max: f64, dx: f64) -> Result<Self> {
        positive("dx", dx)?;
        let cells = crate::math::floor((x_max - x_min) / dx + 0.5);
        if !(cells >= 2.0) {
            return Err(Error::InvalidBounds { x_min, x_max, n: 0 });
        }
        make_grid(x_min, x_max, cells as usize + 1)
    }

    #[inline]
    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    #[inline]
    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn dx(&self) -> f64 {
        self.dx
    }

    #[inline]
    pub fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.dx
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.x(i))
    }
}

/// The field `rho` (or `rho^eps`) on a grid at time `time`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    pub grid: Grid1D,
    pub values: Vec<f64>,
    pub time: f64,
}

impl ScalarField {
    pub fn new(grid: Grid1D, values: Vec<f64>, time: f64) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidConfig("field length does not match grid"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidConfig("field values must be finite"));
        }
        Ok(Self { grid, values, time })
    }

    pub fn from_fn(grid: Grid1D, time: f64, f: impl Fn(f64) -> f64) -> Self {
        let values = grid.nodes().map(f).collect();
        Self { grid, values, time }
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// True when every value lies in `[-tol, 1 + tol]`.
    pub fn within_unit_interval(&self, tol: f64) -> bool {
        self.values.iter().all(|&v| v >= -tol && v <= 1.0 + tol)
    }
}

/// `G^eps = -eps ln(rho^eps)` on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ActionField {
    pub grid: Grid1D,
    pub values: Vec<f64>,
    pub epsilon: ScalingParam,
    pub time: f64,
    /// Nodes where `rho < RHO_FLOOR` and the floor was used instead.
    pub floor_applied: Vec<bool>,
}

impl ActionField {
    /// Wraps closed-form samples (no floor involved).
    pub fn from_values(grid: Grid1D, values: Vec<f64>, epsilon: ScalingParam, time: f64) -> Self {
        let floor_applied = alloc::vec![false; values.len()];
        Self {
            grid,
            values,
            epsilon,
            time,
            floor_applied,
        }
    }

    /// `rho = exp(-G/eps)` at node `i`.
    pub fn rho(&self, i: usize) -> f64 {
        crate::math::exp(-self.values[i] / self.epsilon.get())
    }
}

/// Frame moving at speed `v`: `z = x - v t - origin`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TravelingFrame {
    pub v: f64,
    pub origin: f64,
}

impl TravelingFrame {
    pub fn new(v: f64, origin: f64) -> Result<Self> {
        if !v.is_finite() || !origin.is_finite() {
            return Err(Error::InvalidConfig(
                "frame speed and origin must be finite",
            ));
        }
        Ok(Self { v, origin })
    }

    #[inline]
    pub fn z(&self, x: f64, t: f64) -> f64 {
        x - self.v * t - self.origin
    }
}

/// `(x, t) -> (x~, t~) = (sqrt(U/D) x / eps, U t / eps)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessMap {
    epsilon: ScalingParam,
    params: PhysicalParams,
    x_scale: f64,
    t_scale: f64,
}

impl DimensionlessMap {
    pub fn new(epsilon: ScalingParam, params: PhysicalParams) -> Result<Self> {
        params.require_reaction()?;
        let eps = epsilon.get();
        Ok(Self {
            epsilon,
            params,
            x_scale: sqrt(params.u() / params.d()) / eps,
            t_scale: params.u() / eps,
        })
    }

    pub fn epsilon(&self) -> ScalingParam {
        self.epsilon
    }

    pub fn params(&self) -> PhysicalParams {
        self.params
    }

    /// Factor `x~ / x`.
    pub fn x_scale(&self) -> f64 {
        self.x_scale
    }

    /// Factor `t~ / t`.
    pub fn t_scale(&self) -> f64 {
        self.t_scale
    }

    pub fn to_dimensionless(&self, x: f64, t: f64) -> (f64, f64) {
        (self.x_scale * x, self.t_scale * t)
    }

    pub fn from_dimensionless(&self, x_tilde: f64, t_tilde: f64) -> (f64, f64) {
        (x_tilde / self.x_scale, t_tilde / self.t_scale)
    }
}

/// Free-function form of [`DimensionlessMap::to_dimensionless`].
pub fn to_dimensionless(map: &DimensionlessMap, x: f64, t: f64) -> (f64, f64) {
    map.to_dimensionless(x, t)
}

/// Which root of `D p^2 - v p + U = 0` a traveling action uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

/// The closed-form actions of the Hamilton-Jacobi limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ActionVariant {
    /// `x^2/(4 D t) - U t`.
    G1,
    /// `W(x) - beta t` with `W' = sqrt((beta - U)/D)`.
    G2 { beta: f64 },
    /// `p (x - v t)` with `p` a root of `D p^2 - v p + U = 0`.
    G3 { v: f64, branch: Branch },
    /// `sqrt(2U/(3D)) (x - sqrt(D U) t)`, the kink's action as usually printed.
    Gaz,
}

/// A validated closed-form action with value and analytic partial derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActionFunctionalSpec {
    variant: ActionVariant,
    params: PhysicalParams,
    /// `dG/dx` for the linear variants; unused for `G1`.
    slope: f64,
    /// `-dG/dt` for the linear variants; unused for `G1`.
    rate: f64,
}

impl ActionFunctionalSpec {
    pub fn new(variant: ActionVariant, params: PhysicalParams) -> Result<Self> {
        let (slope, rate) = match variant {
            ActionVariant::G1 => (0.0, 0.0),
            ActionVariant::G2 { beta } => {
                if !beta.is_finite() || beta <= params.u() {
                    return Err(Error::InvalidBeta {
                        beta,
                        u: params.u(),
                    });
                }
                (sqrt((beta - params.u()) / params.d()), beta)
            }
            ActionVariant::G3 { v, branch } => {
                let roots = crate::exact::momentum_roots(v, params)?;
                let p = match branch {
                    Branch::Plus => roots.p_plus,
                    Branch::Minus => roots.p_minus,
                };
                (p, p * v)
            }
            ActionVariant::Gaz => {
                params.require_reaction()?;
                let slope = sqrt(2.0 * params.u() / (3.0 * params.d()));
                (slope, slope * sqrt(params.d() * params.u()))
            }
        };
        Ok(Self {
            variant,
            params,
            slope,
            rate,
        })
    }

    pub fn variant(&self) -> ActionVariant {
        self.variant
    }

    pub fn params(&self) -> PhysicalParams {
        self.params
    }

    /// Constant `dG/dx` of a linear variant, `None` for `G1`.
    pub fn slope(&self) -> Option<f64> {
        match self.variant {
            ActionVariant::G1 => None,
            _ => Some(self.slope),
        }
    }

    /// Constant `-dG/dt` of a linear variant, `None` for `G1`.
    pub fn time_coefficient(&self) -> Option<f64> {
        match self.variant {
            ActionVariant::G1 => None,
            _ => Some(self.rate),
        }
    }

    fn check_time(&self, t: f64) -> Result<()> {
        if matches!(self.variant, ActionVariant::G1) && !(t > 0.0) {
            return Err(Error::NonpositiveTime { t });
        }
        Ok(())
    }

    pub fn value(&self, x: f64, t: f64) -> Result<f64> {
        self.check_time(t)?;
        Ok(match self.variant {
            ActionVariant::G1 => {
                let (d, u) = (self.params.d(), self.params.u());
                x * x / (4.0 * d * t) - u * t
            }
            _ => self.slope * x - self.rate * t,
        })
    }

    /// `(dG/dx, dG/dt)`.
    pub fn partials(&self, x: f64, t: f64) -> Result<(f64, f64)> {
        self.check_time(t)?;
        Ok(match self.variant {
            ActionVariant::G1 => {
                let (d, u) = (self.params.d(), self.params.u());
                (x / (2.0 * d * t), -x * x / (4.0 * d * t * t) - u)
            }
            _ => (self.slope, -self.rate),
        })
    }
}

/// Constants of the power-law ansatz `G = c x^a t^b - alpha t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnsatzParams {
    pub c: f64,
    pub a: f64,
    pub b: f64,
    pub alpha: f64,
}

impl AnsatzParams {
    /// `(c, a, b, alpha) = (1/(4D), 2, -1, U)`, which reproduces `G1`.
    pub fn solved(params: PhysicalParams) -> Self {
        Self {
            c: 1.0 / (4.0 * params.d()),
            a: 2.0,
            b: -1.0,
            alpha: params.u(),
        }
    }
}

/// Front positions `x*(t)` at a fixed level, plus the fitted speed once measured.
#[derive(Debug, Clone, PartialEq)]
pub struct FrontTrace {
    pub level: f64,
    samples: Vec<(f64, f64)>,
    pub fitted_speed: Option<f64>,
    pub fit_stderr: Option<f64>,
}

impl FrontTrace {
    pub fn new(level: f64, samples: Vec<(f64, f64)>) -> Result<Self> {
        if !(level > 0.0 && level < 1.0) {
            return Err(Error::NonpositiveParameter {
                name: "level",
                value: level,
            });
        }
        if samples.windows(2).any(|w| !(w[1].0 > w[0].0)) {
            return Err(Error::InvalidConfig(
                "front samples must be strictly increasing in t",
            ));
        }
        Ok(Self {
            level,
            samples,
            fitted_speed: None,
            fit_stderr: None,
        })
    }

    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }
}

/// Roots of `D p^2 - v p + U = 0`, ordered.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumRoots {
    pub p_minus: f64,
    pub p_plus: f64,
}

/// `rho(z) = (1 - tanh(z / sqrt(24)))^2 / 4`, shared by the IC builder and [`crate::exact`].
#[inline]
pub(crate) fn az_rho(z: f64) -> f64 {
    let one_minus = 1.0 - tanh(z / sqrt(24.0));
    0.25 * one_minus * one_minus
}
