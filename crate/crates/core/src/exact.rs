//! Closed-form solutions and their analytic residuals.
//!
//! Everything here is evaluated from hand-derived formulas. Finite differences only appear
//! in the tests, as an oracle for the derivatives.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::{ln, powf, sqrt, tanh};
use crate::model::{
    az_rho, ActionFunctionalSpec, ActionVariant, AnsatzParams, Branch, DimensionlessMap,
    MomentumRoots, PhysicalParams, ScalingParam,
};

/// Dimensionless speed `5/sqrt(6)` at which the kink solves the traveling ODE.
pub fn az_speed() -> f64 {
    5.0 / sqrt(6.0)
}

/// Leading-edge decay rate `sqrt(2/3)` of the kink in dimensionless units.
pub fn az_decay_rate() -> f64 {
    sqrt(2.0 / 3.0)
}

/// The Ablowitz-Zeppetella kink `(1 - tanh(z/sqrt(24)))^2 / 4`.
pub fn az_profile(z: f64) -> f64 {
    az_rho(z)
}

/// `(rho', rho'')` of [`az_profile`].
///
/// With `s = z/sqrt(24)`, `t = tanh s` and `q = sech^2 s = (1 - t)(1 + t)`:
/// `rho' = -(1 - t) q / (2 sqrt(24))` and `rho'' = (q^2 + 2 t q (1 - t)) / 48`.
pub fn az_profile_derivs(z: f64) -> (f64, f64) {
    let k = sqrt(24.0);
    let t = tanh(z / k);
    let one_minus = 1.0 - t;
    let q = one_minus * (1.0 + t);
    let d1 = -one_minus * q / (2.0 * k);
    let d2 = (q * q + 2.0 * t * q * one_minus) / 48.0;
    (d1, d2)
}

/// `-d ln(rho)/dz = 2 (1 + tanh(z/sqrt(24))) / sqrt(24)`, exact even deep in the tail.
pub fn az_log_decay(z: f64) -> f64 {
    let k = sqrt(24.0);
    2.0 * (1.0 + tanh(z / k)) / k
}

/// `rho'' + v rho' + rho (1 - rho)` for the kink at speed `v`.
pub fn traveling_ode_residual(v: f64, z: f64) -> f64 {
    let rho = az_profile(z);
    let (d1, d2) = az_profile_derivs(z);
    d2 + v * d1 + rho * (1.0 - rho)
}

pub fn g1(x: f64, t: f64, params: PhysicalParams) -> Result<f64> {
    ActionFunctionalSpec::new(ActionVariant::G1, params)?.value(x, t)
}

pub fn g2(x: f64, t: f64, beta: f64, params: PhysicalParams) -> Result<f64> {
    ActionFunctionalSpec::new(ActionVariant::G2 { beta }, params)?.value(x, t)
}

pub fn g3(x: f64, t: f64, v: f64, branch: Branch, params: PhysicalParams) -> Result<f64> {
    ActionFunctionalSpec::new(ActionVariant::G3 { v, branch }, params)?.value(x, t)
}

pub fn g_az(x: f64, t: f64, params: PhysicalParams) -> Result<f64> {
    ActionFunctionalSpec::new(ActionVariant::Gaz, params)?.value(x, t)
}

/// `dG/dt + D (dG/dx)^2 + U` from the analytic partials.
pub fn hj_residual_analytic(spec: &ActionFunctionalSpec, x: f64, t: f64) -> Result<f64> {
    let (gx, gt) = spec.partials(x, t)?;
    let p = spec.params();
    Ok(gt + p.d() * gx * gx + p.u())
}

/// Residual of the power-law ansatz substituted into the Hamilton-Jacobi equation:
/// `b c x^a t^(b-1) - alpha + D c^2 a^2 x^(2(a-1)) t^(2b) + U`.
pub fn ansatz_residual(ap: &AnsatzParams, params: PhysicalParams, x: f64, t: f64) -> f64 {
    let time_term = (ap.b * ap.c) * (powf(x, ap.a) * powf(t, ap.b - 1.0));
    let grad_term = (params.d() * ap.c * ap.c * ap.a * ap.a)
        * (powf(x, 2.0 * (ap.a - 1.0)) * powf(t, 2.0 * ap.b));
    time_term + grad_term + (params.u() - ap.alpha)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnsatzReport {
    pub max_residual: f64,
    /// `(x, t)` where the largest residual occurred.
    pub worst_point: (f64, f64),
    pub samples: usize,
}

/// Evaluates [`ansatz_residual`] on the tensor product `xs x ts`.
pub fn verify_ansatz(
    ap: &AnsatzParams,
    params: PhysicalParams,
    xs: &[f64],
    ts: &[f64],
) -> AnsatzReport {
    let mut report = AnsatzReport {
        max_residual: 0.0,
        worst_point: (f64::NAN, f64::NAN),
        samples: 0,
    };
    for &x in xs {
        for &t in ts {
            let r = ansatz_residual(ap, params, x, t).abs();
            report.samples += 1;
            if !(r <= report.max_residual) {
                report.max_residual = r;
                report.worst_point = (x, t);
            }
        }
    }
    report
}

/// `n` evenly spaced points on `[lo, hi]`.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => alloc::vec![lo],
        _ => {
            let h = (hi - lo) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { hi } else { lo + i as f64 * h })
                .collect()
        }
    }
}

/// Roots of `D p^2 - v p + U = 0` by the cancellation-free quadratic formula.
///
/// A discriminant within rounding of zero (as at a computed `v = 2 sqrt(DU)`) is treated as
/// exactly zero, giving the double root.
pub fn momentum_roots(v: f64, params: PhysicalParams) -> Result<MomentumRoots> {
    let (d, u) = (params.d(), params.u());
    if !v.is_finite() {
        return Err(Error::NonpositiveParameter {
            name: "v",
            value: v,
        });
    }
    let four_du = 4.0 * d * u;
    let mut disc = v * v - four_du;
    if disc.abs() <= 8.0 * f64::EPSILON * (v * v).max(four_du.abs()) {
        disc = 0.0;
    } else if disc < 0.0 {
        return Err(Error::SubcriticalSpeed {
            v,
            v_min: sqrt(four_du.max(0.0)),
        });
    }
    let root = sqrt(disc);
    let q = 0.5 * (v + if v >= 0.0 { root } else { -root });
    let (r1, r2) = if q == 0.0 { (0.0, 0.0) } else { (q / d, u / q) };
    Ok(MomentumRoots {
        p_minus: r1.min(r2),
        p_plus: r1.max(r2),
    })
}

/// Minimal front speed `sqrt(4 D U)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinFrontSpeed {
    pub v: f64,
    /// `U = 0`: no reaction, the "front" does not move.
    pub degenerate: bool,
}

pub fn min_front_speed(params: PhysicalParams) -> Result<MinFrontSpeed> {
    let u = params.u();
    if u < 0.0 {
        return Err(Error::NonpositiveParameter {
            name: "U",
            value: u,
        });
    }
    Ok(MinFrontSpeed {
        v: sqrt(4.0 * params.d() * u),
        degenerate: u == 0.0,
    })
}

/// Linear action `G = a x - b t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearAction {
    pub a: f64,
    pub b: f64,
}

impl LinearAction {
    pub fn value(&self, x: f64, t: f64) -> f64 {
        self.a * x - self.b * t
    }

    /// `-b + D a^2 + U`.
    pub fn hj_residual(&self, params: PhysicalParams) -> f64 {
        -self.b + params.hamiltonian(self.a)
    }
}

/// Action implied by a leading edge `rho ~ exp(-lambda z~)`, `z~ = x~ - v~ t~`.
///
/// Substituting the dimensionless map into `rho = exp(-G/eps)` gives
/// `G = lambda sqrt(U/D) x - lambda v~ U t`; `eps` cancels.
pub fn derive_action_from_asymptotics(
    decay: f64,
    speed: f64,
    params: PhysicalParams,
    epsilon: ScalingParam,
) -> Result<LinearAction> {
    if !(decay > 0.0 && decay.is_finite()) {
        return Err(Error::NonpositiveParameter {
            name: "lambda",
            value: decay,
        });
    }
    if !(speed > 0.0 && speed.is_finite()) {
        return Err(Error::NonpositiveParameter {
            name: "v",
            value: speed,
        });
    }
    let map = DimensionlessMap::new(epsilon, params)?;
    let eps = epsilon.get();
    // G = eps * decay * (x~ - v~ t~)
    Ok(LinearAction {
        a: eps * decay * map.x_scale(),
        b: eps * decay * speed * map.t_scale(),
    })
}

/// Side-by-side comparison of the kink's printed action with `G2` and the asymptotic oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GazAudit {
    pub params: PhysicalParams,
    /// `beta = sqrt(2/3) U`, the matching value usually quoted.
    pub paper_beta: f64,
    /// `paper_beta - U`; negative means the `G2` slope is imaginary there.
    pub beta_minus_u: f64,
    pub paper_beta_valid: bool,
    /// `beta` solving `sqrt((beta - U)/D) = sqrt(2U/(3D))`, i.e. `5U/3`.
    pub slope_matching_beta: f64,
    /// Time coefficient of `G2` at `slope_matching_beta` (equal to that beta).
    pub g2_time_coefficient: f64,
    /// Spatial slope and time coefficient of the printed kink action.
    pub printed: LinearAction,
    /// Same pair derived from `rho ~ exp(-sqrt(2/3) z~)` at `v~ = 5/sqrt(6)`.
    pub derived: LinearAction,
    /// `G2(slope_matching_beta)` and the printed action share the time coefficient.
    pub time_coefficients_match: bool,
    /// Hamilton-Jacobi residual of the printed action (constant in `x`, `t`).
    pub printed_hj_residual: f64,
    /// Hamilton-Jacobi residual of the derived action.
    pub derived_hj_residual: f64,
    /// `m = 1/(2D)`.
    pub mass: f64,
}

/// Solves the slope-matching condition between the kink's action and `G2` and audits the
/// alternatives.
pub fn g2_matching_beta(params: PhysicalParams) -> Result<GazAudit> {
    params.require_reaction()?;
    let u = params.u();
    let gaz = ActionFunctionalSpec::new(ActionVariant::Gaz, params)?;
    let printed = LinearAction {
        a: gaz.slope().unwrap_or(f64::NAN),
        b: gaz.time_coefficient().unwrap_or(f64::NAN),
    };
    // sqrt((beta - U)/D) = sqrt(2U/(3D))  =>  beta = U + 2U/3; D cancels.
    let slope_matching_beta = u + 2.0 * u / 3.0;
    let g2 = ActionFunctionalSpec::new(
        ActionVariant::G2 {
            beta: slope_matching_beta,
        },
        params,
    )?;
    let g2_time_coefficient = g2.time_coefficient().unwrap_or(f64::NAN);
    let derived =
        derive_action_from_asymptotics(az_decay_rate(), az_speed(), params, ScalingParam::one())?;
    let paper_beta = sqrt(2.0 / 3.0) * u;
    let tol = 1e-12 * g2_time_coefficient.abs().max(1.0);
    Ok(GazAudit {
        params,
        paper_beta,
        beta_minus_u: paper_beta - u,
        paper_beta_valid: paper_beta > u,
        slope_matching_beta,
        g2_time_coefficient,
        printed,
        derived,
        time_coefficients_match: (g2_time_coefficient - printed.b).abs() <= tol,
        printed_hj_residual: printed.hj_residual(params),
        derived_hj_residual: derived.hj_residual(params),
        mass: params.mass(),
    })
}

/// `-(d/dz) ln(rho)` by the log of the profile itself; loses accuracy in the far tail.
pub fn az_log_decay_numeric(z: f64, h: f64) -> f64 {
    -(ln(az_profile(z + h)) - ln(az_profile(z - h))) / (2.0 * h)
}
