//! Log-transform analysis of simulated fields.
//!
//! With `rho^eps = exp(-G/eps)` the scaled equation becomes
//! `G_t = eps D G_xx - D G_x^2 - U (1 - exp(-G/eps))`, which reduces to the Hamilton-Jacobi
//! equation `G_t + D G_x^2 + U = 0` as `eps -> 0`. This module builds `G^eps` from solver
//! output, evaluates both residuals with finite differences and runs the `eps` sweep.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::front::{rightmost_crossing, Direction};
use crate::math::{exp, ln, sqrt};
use crate::model::{ActionField, Grid1D, PhysicalParams, ScalarField, ScalingParam, RHO_FLOOR};
use crate::solver::{simulate, InitialCondition, SolverConfig};

/// Closed interval of `rho` values used to select nodes for residual statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhoBand {
    pub lo: f64,
    pub hi: f64,
}

impl RhoBand {
    /// The exponentially small tail where the Hamilton-Jacobi limit applies.
    pub const LEADING_EDGE: RhoBand = RhoBand {
        lo: 1e-12,
        hi: 1e-2,
    };
    /// Everything above the tail cut-off.
    pub const RESOLVED: RhoBand = RhoBand {
        lo: 1e-12,
        hi: f64::INFINITY,
    };

    pub fn contains(&self, rho: f64) -> bool {
        rho >= self.lo && rho <= self.hi
    }
}

/// `G_i = -eps ln(max(rho_i, RHO_FLOOR))`.
pub fn action_from_field(field: &ScalarField, epsilon: ScalingParam) -> ActionField {
    let eps = epsilon.get();
    let mut floor_applied = Vec::with_capacity(field.values.len());
    let values = field
        .values
        .iter()
        .map(|&rho| {
            let floored = !(rho >= RHO_FLOOR);
            floor_applied.push(floored);
            -eps * ln(if floored { RHO_FLOOR } else { rho })
        })
        .collect();
    ActionField {
        grid: field.grid,
        values,
        epsilon,
        time: field.time,
        floor_applied,
    }
}

/// A residual evaluated at the interior nodes of one time level.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualField {
    pub grid: Grid1D,
    pub time: f64,
    pub values: Vec<f64>,
    /// `false` at boundary nodes and wherever the stencil touches a floored value.
    pub valid: Vec<bool>,
    /// `rho = exp(-G/eps)` at the central time level, for band selection.
    pub rho: Vec<f64>,
}

impl ResidualField {
    fn selected(&self, band: RhoBand) -> impl Iterator<Item = f64> + '_ {
        (0..self.values.len())
            .filter(move |&i| self.valid[i] && band.contains(self.rho[i]))
            .map(move |i| self.values[i].abs())
    }

    pub fn count_in(&self, band: RhoBand) -> usize {
        self.selected(band).count()
    }

    pub fn max_abs_in(&self, band: RhoBand) -> Option<f64> {
        self.selected(band).reduce(f64::max)
    }

    pub fn median_abs_in(&self, band: RhoBand) -> Option<f64> {
        median(self.selected(band).collect())
    }
}

pub(crate) fn median(mut v: Vec<f64>) -> Option<f64> {
    if v.is_empty() {
        return None;
    }
    v.sort_by(f64::total_cmp);
    let n = v.len();
    Some(if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    })
}

/// Derivatives of `G` on the interior of the middle snapshot of a three-level window.
struct Stencil<'a> {
    prev: &'a ActionField,
    mid: &'a ActionField,
    next: &'a ActionField,
}

impl Stencil<'_> {
    fn usable(&self, i: usize) -> bool {
        let n = self.mid.values.len();
        if i == 0 || i + 1 >= n {
            return false;
        }
        !(self.mid.floor_applied[i - 1]
            || self.mid.floor_applied[i]
            || self.mid.floor_applied[i + 1]
            || self.prev.floor_applied[i]
            || self.next.floor_applied[i])
    }

    /// `(G, G_t, G_x, G_xx)` at node `i`; `G_t` uses the three-point formula for uneven steps.
    fn derivs(&self, i: usize) -> (f64, f64, f64, f64) {
        let g = &self.mid.values;
        let dx = self.mid.grid.dx();
        let h1 = self.mid.time - self.prev.time;
        let h2 = self.next.time - self.mid.time;
        let gt = -h2 / (h1 * (h1 + h2)) * self.prev.values[i]
            + (h2 - h1) / (h1 * h2) * g[i]
            + h1 / (h2 * (h1 + h2)) * self.next.values[i];
        let gx = (g[i + 1] - g[i - 1]) / (2.0 * dx);
        let gxx = (g[i + 1] - 2.0 * g[i] + g[i - 1]) / (dx * dx);
        (g[i], gt, gx, gxx)
    }
}

fn residual_fields(
    actions: &[ActionField],
    f: impl Fn(f64, f64, f64, f64, f64) -> f64,
) -> Result<Vec<ResidualField>> {
    if actions.len() < 3 {
        return Err(Error::InsufficientSnapshots {
            needed: 3,
            found: actions.len(),
        });
    }
    let grid = actions[0].grid;
    let eps = actions[0].epsilon;
    if actions.iter().any(|a| a.grid != grid || a.epsilon != eps) {
        return Err(Error::InvalidConfig(
            "actions must share one grid and epsilon",
        ));
    }
    if actions.windows(2).any(|w| !(w[1].time > w[0].time)) {
        return Err(Error::InvalidConfig(
            "action snapshots must be strictly increasing in time",
        ));
    }
    let out = actions
        .windows(3)
        .map(|w| {
            let st = Stencil {
                prev: &w[0],
                mid: &w[1],
                next: &w[2],
            };
            let n = grid.len();
            let mut values = alloc::vec![0.0; n];
            let mut valid = alloc::vec![false; n];
            for i in 0..n {
                if st.usable(i) {
                    let (g, gt, gx, gxx) = st.derivs(i);
                    values[i] = f(eps.get(), g, gt, gx, gxx);
                    valid[i] = true;
                }
            }
            let rho = (0..n).map(|i| w[1].rho(i)).collect();
            ResidualField {
                grid,
                time: w[1].time,
                values,
                valid,
                rho,
            }
        })
        .collect();
    Ok(out)
}

/// `G_t - eps D G_xx + D G_x^2 + U (1 - exp(-G/eps))`, one field per interior time level.
pub fn g_equation_residual(
    actions: &[ActionField],
    params: PhysicalParams,
) -> Result<Vec<ResidualField>> {
    let (d, u) = (params.d(), params.u());
    residual_fields(actions, |eps, g, gt, gx, gxx| {
        gt - eps * d * gxx + d * gx * gx + u * (1.0 - exp(-g / eps))
    })
}

/// `G_t + D G_x^2 + U`, one field per interior time level.
pub fn hj_limit_residual(
    actions: &[ActionField],
    params: PhysicalParams,
) -> Result<Vec<ResidualField>> {
    let (d, u) = (params.d(), params.u());
    residual_fields(actions, |_, _, gt, gx, _| gt + d * gx * gx + u)
}

/// Rightmost crossing of `g_level` over non-floored nodes.
pub fn level_crossing(action: &ActionField, g_level: f64) -> Result<f64> {
    rightmost_crossing(&action.grid, &action.values, g_level, Direction::Any, |i| {
        !action.floor_applied[i]
    })
    .ok_or(Error::NoCrossing { level: g_level })
}

/// Rightmost zero crossing of the action.
pub fn zero_level(action: &ActionField) -> Result<f64> {
    level_crossing(action, 0.0)
}

/// Fixed numerical setup shared by every row of an `eps` sweep.
///
/// Lengths are measured in units of `eps` so each row resolves the same number of nodes per
/// front width; the domain's right end sits where `G1(x, t*) = tail_depth * eps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSetup {
    pub params: PhysicalParams,
    /// Reference time `t*`.
    pub t_star: f64,
    /// Grid spacing is `eps / cells_per_eps`.
    pub cells_per_eps: f64,
    /// Width of the tanh initial step, in grid cells.
    pub ic_width_cells: f64,
    /// Domain extends `behind * eps` to the left of the initial step.
    pub behind: f64,
    pub tail_depth: f64,
    /// Snapshot spacing for the time derivative, as a fraction of `t*`.
    pub time_window: f64,
    pub safety: f64,
}

impl SweepSetup {
    pub fn new(params: PhysicalParams) -> Self {
        Self {
            params,
            t_star: 1.0,
            cells_per_eps: 20.0,
            ic_width_cells: 5.0,
            behind: 20.0,
            tail_depth: 60.0,
            time_window: 0.01,
            safety: 0.9,
        }
    }

    /// Solver configuration and initial condition for one row.
    pub fn row_problem(&self, epsilon: ScalingParam) -> Result<(SolverConfig, InitialCondition)> {
        self.params.require_reaction()?;
        if !(self.t_star > 0.0) {
            return Err(Error::NonpositiveParameter {
                name: "t_star",
                value: self.t_star,
            });
        }
        let eps = epsilon.get();
        let (d, u) = (self.params.d(), self.params.u());
        let dx = eps / self.cells_per_eps;
        let x_right = sqrt(4.0 * d * self.t_star * (u * self.t_star + self.tail_depth * eps));
        let grid = Grid1D::with_spacing(-self.behind * eps, x_right, dx)?;
        let window = self.time_window * self.t_star;
        let config = SolverConfig::new(self.params, epsilon, grid, self.t_star + window)?
            .with_output_every(window)
            .with_safety(self.safety);
        let ic = InitialCondition::SmoothStep {
            x0: 0.0,
            width: self.ic_width_cells * grid.dx(),
        };
        Ok((config, ic))
    }
}

/// One row of the sweep table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub epsilon: f64,
    /// Where `G^eps = eps ln 2` (i.e. `rho = 1/2`) at `t*`.
    pub front_position: f64,
    /// `|front_position - 2 sqrt(DU) t*|`.
    pub front_error: f64,
    pub hj_residual_median: f64,
    pub g_eq_residual_median: f64,
    pub leading_edge_nodes: usize,
    pub dx: f64,
    pub dt: f64,
    pub steps: usize,
}

/// Simulates one `eps` and measures the row.
pub fn sweep_row(epsilon: ScalingParam, setup: &SweepSetup) -> Result<SweepRow> {
    let (config, ic) = setup.row_problem(epsilon)?;
    let traj = simulate(&ic, &config)?;
    let k = traj
        .snapshots
        .iter()
        .position(|s| (s.time - setup.t_star).abs() <= 1e-9 * setup.t_star)
        .ok_or(Error::InvalidConfig("no snapshot at t*"))?;
    if k == 0 || k + 1 >= traj.snapshots.len() {
        return Err(Error::InsufficientSnapshots {
            needed: 3,
            found: traj.snapshots.len(),
        });
    }
    let actions: Vec<ActionField> = traj.snapshots[k - 1..=k + 1]
        .iter()
        .map(|s| action_from_field(s, epsilon))
        .collect();
    let eps = epsilon.get();
    let front = level_crossing(&actions[1], eps * ln(2.0))?;
    let v_min = 2.0 * sqrt(setup.params.d() * setup.params.u());
    let hj = hj_limit_residual(&actions, setup.params)?.remove(0);
    let geq = g_equation_residual(&actions, setup.params)?.remove(0);
    let edge = RhoBand::LEADING_EDGE;
    Ok(SweepRow {
        epsilon: eps,
        front_position: front,
        front_error: (front - v_min * setup.t_star).abs(),
        hj_residual_median: hj.median_abs_in(edge).ok_or(Error::InsufficientSamples {
            needed: 1,
            found: 0,
        })?,
        g_eq_residual_median: geq.median_abs_in(RhoBand::RESOLVED).ok_or(
            Error::InsufficientSamples {
                needed: 1,
                found: 0,
            },
        )?,
        leading_edge_nodes: hj.count_in(edge),
        dx: config.grid.dx(),
        dt: traj.dt,
        steps: traj.steps,
    })
}

/// Checks that `eps_list` is non-empty, strictly decreasing and inside `(0, 1]`.
pub fn validate_eps_list(eps_list: &[f64]) -> Result<Vec<ScalingParam>> {
    if eps_list.is_empty() {
        return Err(Error::InsufficientSamples {
            needed: 1,
            found: 0,
        });
    }
    if eps_list.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::Ordering);
    }
    eps_list.iter().map(|&e| ScalingParam::new(e)).collect()
}

/// Rows keyed by `eps`, in the order requested. Rows fail independently.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub rows: Vec<(f64, Result<SweepRow>)>,
}

impl SweepTable {
    pub fn from_rows(rows: Vec<(f64, Result<SweepRow>)>) -> Self {
        Self { rows }
    }

    pub fn all_ok(&self) -> bool {
        self.rows.iter().all(|(_, r)| r.is_ok())
    }

    /// `Some(true)` when the statistic strictly decreases along the table; `None` when
    /// there are fewer than two rows or a row failed.
    pub fn decreasing(&self, stat: impl Fn(&SweepRow) -> f64) -> Option<bool> {
        if self.rows.len() < 2 || !self.all_ok() {
            return None;
        }
        let vals: Vec<f64> = self
            .rows
            .iter()
            .filter_map(|(_, r)| r.as_ref().ok())
            .map(&stat)
            .collect();
        Some(vals.windows(2).all(|w| w[1] < w[0]))
    }

    pub fn front_error_decreasing(&self) -> Option<bool> {
        self.decreasing(|r| r.front_error)
    }

    pub fn hj_residual_decreasing(&self) -> Option<bool> {
        self.decreasing(|r| r.hj_residual_median)
    }

    pub fn g_eq_residual_decreasing(&self) -> Option<bool> {
        self.decreasing(|r| r.g_eq_residual_median)
    }
}

/// Runs [`sweep_row`] for every `eps`, sequentially.
pub fn epsilon_sweep(eps_list: &[f64], setup: &SweepSetup) -> Result<SweepTable> {
    let eps = validate_eps_list(eps_list)?;
    Ok(SweepTable::from_rows(
        eps.into_iter()
            .map(|e| (e.get(), sweep_row(e, setup)))
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::g1;
    use crate::model::{make_grid, ActionFunctionalSpec, ActionVariant, Branch};

    fn sampled(spec: &ActionFunctionalSpec, grid: Grid1D, t: f64) -> ActionField {
        let values = grid.nodes().map(|x| spec.value(x, t).unwrap()).collect();
        ActionField::from_values(grid, values, ScalingParam::one(), t)
    }

    #[test]
    fn transform_examples() {
        let grid = make_grid(0.0, 2.0, 3).unwrap();
        let f = ScalarField::new(grid, alloc::vec![exp(-5.0), 1.0, 0.0], 0.0).unwrap();
        let a = action_from_field(&f, ScalingParam::one());
        assert!((a.values[0] - 5.0).abs() < 1e-15);
        assert_eq!(a.values[1], 0.0);
        let half = ScalingParam::new(0.5).unwrap();
        let a = action_from_field(&f, half);
        assert_eq!(a.floor_applied, [false, false, true]);
        assert_eq!(a.values[2], -0.5 * ln(RHO_FLOOR));
    }

    #[test]
    fn transform_round_trip() {
        let grid = make_grid(0.0, 100.0, 1001).unwrap();
        let f = ScalarField::from_fn(grid, 0.0, |x| exp(-7.0 * x));
        for eps in [1.0, 0.3, 0.05] {
            let a = action_from_field(&f, ScalingParam::new(eps).unwrap());
            for i in 0..grid.len() {
                if !a.floor_applied[i] {
                    let rho = f.values[i];
                    let rel = (a.rho(i) - rho).abs() / rho;
                    // exp amplifies the rounding of G by |ln rho|
                    let bound = if rho >= 1e-250 {
                        1e-13
                    } else {
                        4.0 * f64::EPSILON * ln(rho).abs()
                    };
                    assert!(rel <= bound, "eps = {eps}, rho = {rho:e}: {rel:e}");
                }
            }
        }
    }

    #[test]
    fn constant_action_residual() {
        let grid = make_grid(0.0, 1.0, 11).unwrap();
        let eps = ScalingParam::new(0.3).unwrap();
        let c = 0.7;
        let acts: Vec<ActionField> = (0..3)
            .map(|k| ActionField::from_values(grid, alloc::vec![c; 11], eps, k as f64 * 0.1))
            .collect();
        let p = PhysicalParams::unit();
        let r = &g_equation_residual(&acts, p).unwrap()[0];
        for i in 1..10 {
            assert!((r.values[i] - (1.0 - exp(-c / 0.3))).abs() < 1e-15);
        }
        assert!(!r.valid[0] && !r.valid[10]);

        let zero: Vec<ActionField> = (0..3)
            .map(|k| ActionField::from_values(grid, alloc::vec![0.0; 11], eps, k as f64))
            .collect();
        let r = &hj_limit_residual(&zero, p).unwrap()[0];
        assert!(r.values[1..10].iter().all(|&v| v == 1.0));
        assert!(matches!(
            hj_limit_residual(&zero[..2], p),
            Err(Error::InsufficientSnapshots { .. })
        ));
    }

    #[test]
    fn linear_actions_recover_analytic_residual() {
        let p = PhysicalParams::new(1.3, 0.7).unwrap();
        let grid = make_grid(-3.0, 3.0, 61).unwrap();
        let vmin = 2.0 * sqrt(p.d() * p.u());
        for variant in [
            ActionVariant::G2 { beta: 2.0 },
            ActionVariant::G3 {
                v: 1.3 * vmin,
                branch: Branch::Minus,
            },
            ActionVariant::Gaz,
        ] {
            let spec = ActionFunctionalSpec::new(variant, p).unwrap();
            let acts: Vec<ActionField> = [0.9, 1.0, 1.1]
                .iter()
                .map(|&t| sampled(&spec, grid, t))
                .collect();
            let r = &hj_limit_residual(&acts, p).unwrap()[0];
            let analytic = crate::exact::hj_residual_analytic(&spec, 0.0, 1.0).unwrap();
            for i in 1..60 {
                assert!((r.values[i] - analytic).abs() <= 1e-12, "{variant:?}");
            }
        }
    }

    #[test]
    fn g2_in_g_equation() {
        // linear G2 with beta = 2 at D = U = 1: residual is U (1 - e^{-G/eps}) - U = -U e^{-G/eps}
        let p = PhysicalParams::unit();
        let spec = ActionFunctionalSpec::new(ActionVariant::G2 { beta: 2.0 }, p).unwrap();
        let grid = make_grid(0.0, 40.0, 401).unwrap();
        let eps = ScalingParam::new(0.2).unwrap();
        let acts: Vec<ActionField> = [0.9, 1.0, 1.1]
            .iter()
            .map(|&t| {
                let mut a = sampled(&spec, grid, t);
                a.epsilon = eps;
                a
            })
            .collect();
        let r = &g_equation_residual(&acts, p).unwrap()[0];
        for i in 1..400 {
            let g = acts[1].values[i];
            assert!((r.values[i] + exp(-g / 0.2)).abs() < 1e-12);
            if g > 30.0 * 0.2 {
                assert!(r.values[i].abs() < 1e-12);
            }
        }
    }

    #[test]
    fn g1_grid_residual_converges_quadratically() {
        let p = PhysicalParams::unit();
        let spec = ActionFunctionalSpec::new(ActionVariant::G1, p).unwrap();
        let mut errs = Vec::new();
        for n in [101, 201, 401] {
            let grid = make_grid(0.0, 4.0, n).unwrap();
            let h = grid.dx();
            let acts: Vec<ActionField> = [1.5 - h, 1.5, 1.5 + h]
                .iter()
                .map(|&t| sampled(&spec, grid, t))
                .collect();
            let r = &hj_limit_residual(&acts, p).unwrap()[0];
            errs.push(
                r.max_abs_in(RhoBand {
                    lo: 0.0,
                    hi: f64::INFINITY,
                })
                .unwrap(),
            );
        }
        assert!(
            errs[0] / errs[1] > 3.5 && errs[1] / errs[2] > 3.5,
            "{errs:?}"
        );
        // C dx^2 with C ~ |G_ttt| / 6 = x^2 / (4 t^4) / ... bounded here
        assert!(errs[2] < 1e-3);
    }

    #[test]
    fn zero_level_examples() {
        let p = PhysicalParams::unit();
        let grid = make_grid(0.0, 10.0, 1001).unwrap();
        let vals: Vec<f64> = grid.nodes().map(|x| g1(x, 1.0, p).unwrap()).collect();
        let a = ActionField::from_values(grid, vals, ScalingParam::one(), 1.0);
        assert!((zero_level(&a).unwrap() - 2.0).abs() <= grid.dx());

        let g3 = ActionFunctionalSpec::new(
            ActionVariant::G3 {
                v: 2.0,
                branch: Branch::Plus,
            },
            p,
        )
        .unwrap();
        let a = sampled(&g3, grid, 3.0);
        assert!((zero_level(&a).unwrap() - 6.0).abs() <= grid.dx());

        let pos =
            ActionField::from_values(grid, alloc::vec![1.0; grid.len()], ScalingParam::one(), 0.0);
        assert!(matches!(zero_level(&pos), Err(Error::NoCrossing { .. })));
    }

    #[test]
    fn eps_list_validation() {
        assert!(validate_eps_list(&[0.4, 0.2, 0.1]).is_ok());
        assert!(matches!(
            validate_eps_list(&[0.1, 0.2]),
            Err(Error::Ordering)
        ));
        assert!(validate_eps_list(&[1.5]).is_err());
        assert!(validate_eps_list(&[]).is_err());
    }

    #[test]
    fn single_row_sweep_has_no_trend() {
        let setup = SweepSetup::new(PhysicalParams::unit());
        let t = epsilon_sweep(&[1.0], &setup).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert!(t.rows[0].1.is_ok(), "{:?}", t.rows[0].1);
        assert_eq!(t.front_error_decreasing(), None);
    }

    #[test]
    fn median_helper() {
        assert_eq!(median(alloc::vec![3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(alloc::vec![4.0, 1.0, 2.0, 3.0]), Some(2.5));
        assert_eq!(median(Vec::new()), None);
    }
}
