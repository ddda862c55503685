use fkpp_core::exact::g2_matching_beta;
use fkpp_core::PhysicalParams;
use serde::Serialize;

use crate::error::LabResult;

#[derive(Debug, Clone, Serialize)]
#[allow(non_snake_case)]
pub struct GazReport {
    #[serde(rename = "D")]
    pub d: f64,
    #[serde(rename = "U")]
    pub u: f64,
    pub paper_beta: f64,
    #[serde(rename = "beta_minus_U")]
    pub beta_minus_u: f64,
    pub paper_beta_valid: bool,
    pub slope_matching_beta: f64,
    pub g2_time_coefficient: f64,
    pub derived_A: f64,
    pub derived_B: f64,
    pub printed_A: f64,
    pub printed_B: f64,
    pub time_coefficients_match: bool,
    pub printed_hj_residual: f64,
    pub derived_hj_residual: f64,
    pub mass: f64,
    /// Sign and algebra checks: paper_beta < U, slope-matching beta = 5U/3 = derived B,
    /// derived A = printed A.
    pub checks_pass: bool,
}

pub fn gaz_report(d: f64, u: f64) -> LabResult<GazReport> {
    let a = g2_matching_beta(PhysicalParams::new(d, u)?)?;
    let close = |x: f64, y: f64| (x - y).abs() <= 1e-12 * y.abs().max(1.0);
    let checks_pass = a.beta_minus_u < 0.0
        && close(a.slope_matching_beta, 5.0 * u / 3.0)
        && close(a.derived.b, a.slope_matching_beta)
        && close(a.derived.a, a.printed.a);
    Ok(GazReport {
        d,
        u,
        paper_beta: a.paper_beta,
        beta_minus_u: a.beta_minus_u,
        paper_beta_valid: a.paper_beta_valid,
        slope_matching_beta: a.slope_matching_beta,
        g2_time_coefficient: a.g2_time_coefficient,
        derived_A: a.derived.a,
        derived_B: a.derived.b,
        printed_A: a.printed.a,
        printed_B: a.printed.b,
        time_coefficients_match: a.time_coefficients_match,
        printed_hj_residual: a.printed_hj_residual,
        derived_hj_residual: a.derived_hj_residual,
        mass: a.mass,
        checks_pass,
    })
}
