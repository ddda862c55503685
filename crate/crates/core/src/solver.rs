//! Explicit finite-difference integration of `rho_t = eps D rho_xx + (U/eps) rho (1 - rho)`.
//!
//! `eps = 1` is the original equation; `D = U = eps = 1` is the dimensionless form whose
//! traveling reduction the kink solves. Forward Euler in time, second-order central
//! differences in space. Under [`stable_dt`] the update is monotone, so values stay in
//! `[0, 1]` for data in `[0, 1]` with compatible boundary values.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::front;
use crate::math::{ceil, exp, floor, tanh};
use crate::model::{az_rho, Grid1D, PhysicalParams, ScalarField, ScalingParam};

/// Boundary treatment at one end of the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Boundary {
    /// Node held at a fixed value.
    Dirichlet(f64),
    /// Zero flux, mirror ghost node.
    Neumann,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryConditions {
    pub left: Boundary,
    pub right: Boundary,
}

impl Default for BoundaryConditions {
    /// Invaded state on the left, empty state on the right.
    fn default() -> Self {
        Self {
            left: Boundary::Dirichlet(1.0),
            right: Boundary::Dirichlet(0.0),
        }
    }
}

impl BoundaryConditions {
    pub fn dirichlet(left: f64, right: f64) -> Self {
        Self {
            left: Boundary::Dirichlet(left),
            right: Boundary::Dirichlet(right),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TimeStep {
    /// Use [`stable_dt`].
    Auto,
    Fixed(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub params: PhysicalParams,
    pub epsilon: ScalingParam,
    pub grid: Grid1D,
    pub t_end: f64,
    pub dt: TimeStep,
    /// CFL safety factor in `(0, 1]`.
    pub safety: f64,
    pub bc: BoundaryConditions,
    /// Snapshot cadence in time units.
    pub output_every: f64,
    /// Test hook: `false` turns the equation into a per-node logistic ODE.
    pub diffusion: bool,
}

impl SolverConfig {
    /// Auto time step, safety 0.9, Dirichlet 1/0, one snapshot at `t_end`.
    pub fn new(
        params: PhysicalParams,
        epsilon: ScalingParam,
        grid: Grid1D,
        t_end: f64,
    ) -> Result<Self> {
        let cfg = Self {
            params,
            epsilon,
            grid,
            t_end,
            dt: TimeStep::Auto,
            safety: 0.9,
            bc: BoundaryConditions::default(),
            output_every: t_end,
            diffusion: true,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_output_every(mut self, every: f64) -> Self {
        self.output_every = every;
        self
    }

    pub fn with_dt(mut self, dt: TimeStep) -> Self {
        self.dt = dt;
        self
    }

    pub fn with_safety(mut self, safety: f64) -> Self {
        self.safety = safety;
        self
    }

    pub fn with_bc(mut self, bc: BoundaryConditions) -> Self {
        self.bc = bc;
        self
    }

    pub fn without_diffusion(mut self) -> Self {
        self.diffusion = false;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_end > 0.0 && self.t_end.is_finite()) {
            return Err(Error::NonpositiveParameter {
                name: "t_end",
                value: self.t_end,
            });
        }
        if !(self.output_every > 0.0 && self.output_every.is_finite()) {
            return Err(Error::NonpositiveParameter {
                name: "output_every",
                value: self.output_every,
            });
        }
        if !(self.safety > 0.0 && self.safety <= 1.0) {
            return Err(Error::InvalidConfig("safety must lie in (0, 1]"));
        }
        if let TimeStep::Fixed(dt) = self.dt {
            if !(dt > 0.0 && dt.is_finite()) {
                return Err(Error::NonpositiveParameter {
                    name: "dt",
                    value: dt,
                });
            }
        }
        Ok(())
    }

    /// Effective diffusion coefficient `eps D` (zero when the hook disables diffusion).
    pub fn diffusion_coefficient(&self) -> f64 {
        if self.diffusion {
            self.epsilon.get() * self.params.d()
        } else {
            0.0
        }
    }

    /// Effective reaction rate `U / eps`.
    pub fn reaction_rate(&self) -> f64 {
        self.params.u() / self.epsilon.get()
    }
}

/// `safety * min(dx^2 / (2 eps D), eps / (4 |U|))`; a vanishing term imposes no bound.
pub fn stable_dt(config: &SolverConfig) -> Result<f64> {
    config.validate()?;
    let dx = config.grid.dx();
    let diff = config.diffusion_coefficient();
    let react = config.reaction_rate().abs();
    let diffusion_bound = if diff > 0.0 {
        dx * dx / (2.0 * diff)
    } else {
        f64::INFINITY
    };
    let reaction_bound = if react > 0.0 {
        1.0 / (4.0 * react)
    } else {
        f64::INFINITY
    };
    let bound = diffusion_bound.min(reaction_bound);
    if !bound.is_finite() {
        return Err(Error::InvalidConfig(
            "neither diffusion nor reaction bounds the time step",
        ));
    }
    Ok(config.safety * bound)
}

/// Initial data. Every variant produces values in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialCondition {
    /// `1` for `x <= x0`, `0` otherwise.
    Step { x0: f64 },
    /// `min(1, exp(-lambda (x - x0)))`.
    ExpTail { x0: f64, lambda: f64 },
    /// The kink evaluated at the dimensionless coordinate of `x - x0`.
    AzProfile { x0: f64 },
    /// `(1 - tanh((x - x0)/width)) / 2`.
    SmoothStep { x0: f64, width: f64 },
}

impl InitialCondition {
    pub fn sample(
        &self,
        grid: Grid1D,
        params: PhysicalParams,
        epsilon: ScalingParam,
    ) -> Result<ScalarField> {
        let field = match *self {
            InitialCondition::Step { x0 } => {
                ScalarField::from_fn(grid, 0.0, |x| if x <= x0 { 1.0 } else { 0.0 })
            }
            InitialCondition::ExpTail { x0, lambda } => {
                if !(lambda > 0.0 && lambda.is_finite()) {
                    return Err(Error::NonpositiveParameter {
                        name: "lambda",
                        value: lambda,
                    });
                }
                ScalarField::from_fn(grid, 0.0, |x| exp(-lambda * (x - x0)).min(1.0))
            }
            InitialCondition::AzProfile { x0 } => {
                let map = crate::model::DimensionlessMap::new(epsilon, params)?;
                let k = map.x_scale();
                ScalarField::from_fn(grid, 0.0, |x| az_rho(k * (x - x0)))
            }
            InitialCondition::SmoothStep { x0, width } => {
                if !(width > 0.0 && width.is_finite()) {
                    return Err(Error::NonpositiveParameter {
                        name: "width",
                        value: width,
                    });
                }
                ScalarField::from_fn(grid, 0.0, |x| 0.5 * (1.0 - tanh((x - x0) / width)))
            }
        };
        Ok(field)
    }
}

/// Snapshots of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    /// Strictly increasing in time, the first at `t = 0`.
    pub snapshots: Vec<ScalarField>,
    pub config: SolverConfig,
    /// Time step used for full output intervals.
    pub dt: f64,
    pub steps: usize,
    /// The level-0.5 front came within `10 dx` of the right boundary.
    pub front_hit_boundary: bool,
}

impl Trajectory {
    pub fn last(&self) -> &ScalarField {
        // simulate always pushes the initial snapshot
        self.snapshots
            .last()
            .expect("trajectory has at least one snapshot")
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.snapshots.iter().map(|s| s.time)
    }
}

fn apply_dirichlet(values: &mut [f64], bc: &BoundaryConditions) {
    let n = values.len();
    if let Boundary::Dirichlet(v) = bc.left {
        values[0] = v;
    }
    if let Boundary::Dirichlet(v) = bc.right {
        values[n - 1] = v;
    }
}

/// One forward-Euler step from `src` into `dst`.
fn advance(src: &[f64], dst: &mut [f64], config: &SolverConfig, dt: f64) {
    let n = src.len();
    let dx = config.grid.dx();
    let r = dt * config.diffusion_coefficient() / (dx * dx);
    let h = dt * config.reaction_rate();
    for i in 1..n - 1 {
        let u = src[i];
        dst[i] = u + r * (src[i - 1] - 2.0 * u + src[i + 1]) + h * u * (1.0 - u);
    }
    let edge = |u: f64, inner: f64| u + 2.0 * r * (inner - u) + h * u * (1.0 - u);
    dst[0] = match config.bc.left {
        Boundary::Dirichlet(v) => v,
        Boundary::Neumann => edge(src[0], src[1]),
    };
    dst[n - 1] = match config.bc.right {
        Boundary::Dirichlet(v) => v,
        Boundary::Neumann => edge(src[n - 1], src[n - 2]),
    };
}

fn check_stable(values: &[f64], time: f64) -> Result<()> {
    match values.iter().position(|v| !(*v >= -0.5 && *v <= 1.5)) {
        Some(node) => Err(Error::Instability {
            time,
            node,
            value: values[node],
        }),
        None => Ok(()),
    }
}

/// Advances `field` by one step of size `dt`.
pub fn step_explicit(field: &ScalarField, config: &SolverConfig, dt: f64) -> Result<ScalarField> {
    if field.grid != config.grid || field.values.len() != config.grid.len() {
        return Err(Error::InvalidConfig("field is not on the solver grid"));
    }
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::NonpositiveParameter {
            name: "dt",
            value: dt,
        });
    }
    let mut next = alloc::vec![0.0; field.values.len()];
    advance(&field.values, &mut next, config, dt);
    check_stable(&next, field.time + dt)?;
    Ok(ScalarField {
        grid: field.grid,
        values: next,
        time: field.time + dt,
    })
}

/// Integrates from `ic` to `config.t_end`, keeping a snapshot every `config.output_every`.
///
/// Each output interval is split into equal steps no larger than the chosen `dt`, so
/// snapshot times are exact multiples of the cadence; a trailing partial interval ends
/// exactly at `t_end`.
pub fn simulate(ic: &InitialCondition, config: &SolverConfig) -> Result<Trajectory> {
    config.validate()?;
    let dt_max = match config.dt {
        TimeStep::Auto => stable_dt(config)?,
        TimeStep::Fixed(dt) => dt,
    };
    let mut field = ic.sample(config.grid, config.params, config.epsilon)?;
    apply_dirichlet(&mut field.values, &config.bc);

    let every = config.output_every;
    let full = floor(config.t_end / every + 1e-9) as usize;
    let mut targets: Vec<f64> = (1..=full).map(|k| k as f64 * every).collect();
    let covered = full as f64 * every;
    if config.t_end - covered > 1e-9 * config.t_end {
        targets.push(config.t_end);
    }

    let mut snapshots = Vec::with_capacity(targets.len() + 1);
    snapshots.push(field.clone());
    let mut current = field.values;
    let mut scratch = current.clone();
    let mut t = 0.0;
    let mut steps = 0;
    let mut dt_main = dt_max;
    for (k, &target) in targets.iter().enumerate() {
        let span = target - t;
        let m = (ceil(span / dt_max - 1e-9) as usize).max(1);
        let h = span / m as f64;
        if k == 0 {
            dt_main = h;
        }
        for j in 0..m {
            advance(&current, &mut scratch, config, h);
            core::mem::swap(&mut current, &mut scratch);
            check_stable(&current, t + (j + 1) as f64 * h)?;
        }
        steps += m;
        t = target;
        snapshots.push(ScalarField {
            grid: config.grid,
            values: current.clone(),
            time: target,
        });
    }

    let limit = config.grid.x_max() - 10.0 * config.grid.dx();
    let front_hit_boundary = snapshots
        .iter()
        .filter_map(|s| front::front_position(s, 0.5).ok())
        .any(|x| x > limit);
    Ok(Trajectory {
        snapshots,
        config: config.clone(),
        dt: dt_main,
        steps,
        front_hit_boundary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::make_grid;

    fn unit_config(grid: Grid1D, t_end: f64) -> SolverConfig {
        SolverConfig::new(PhysicalParams::unit(), ScalingParam::one(), grid, t_end).unwrap()
    }

    #[test]
    fn stable_dt_examples() {
        let grid = make_grid(0.0, 10.0, 101).unwrap();
        let cfg = unit_config(grid, 1.0);
        assert!((stable_dt(&cfg).unwrap() - 0.0045).abs() < 1e-15);

        let cfg = SolverConfig::new(
            PhysicalParams::unit(),
            ScalingParam::new(0.1).unwrap(),
            grid,
            1.0,
        )
        .unwrap();
        assert!((stable_dt(&cfg).unwrap() - 0.0225).abs() < 1e-15);

        let cfg = SolverConfig::new(
            PhysicalParams::new(1.0, 0.0).unwrap(),
            ScalingParam::one(),
            grid,
            1.0,
        )
        .unwrap();
        assert!((stable_dt(&cfg).unwrap() - 0.9 * 0.005).abs() < 1e-15);

        let cfg = SolverConfig::new(
            PhysicalParams::new(1.0, 0.0).unwrap(),
            ScalingParam::one(),
            grid,
            1.0,
        )
        .unwrap()
        .without_diffusion();
        assert!(stable_dt(&cfg).is_err());
    }

    #[test]
    fn config_validation() {
        let grid = make_grid(0.0, 1.0, 11).unwrap();
        let p = PhysicalParams::unit();
        assert!(SolverConfig::new(p, ScalingParam::one(), grid, 0.0).is_err());
        let cfg = unit_config(grid, 1.0).with_output_every(0.0);
        assert!(cfg.validate().is_err());
        let cfg = unit_config(grid, 1.0).with_safety(1.5);
        assert!(stable_dt(&cfg).is_err());
    }

    #[test]
    fn equilibria_are_fixed_points() {
        let grid = make_grid(0.0, 10.0, 101).unwrap();
        let cfg = unit_config(grid, 1.0).with_bc(BoundaryConditions::dirichlet(0.0, 0.0));
        let zero = ScalarField::from_fn(grid, 0.0, |_| 0.0);
        let dt = stable_dt(&cfg).unwrap();
        assert_eq!(step_explicit(&zero, &cfg, dt).unwrap().values, zero.values);

        let cfg = cfg.with_bc(BoundaryConditions::dirichlet(1.0, 1.0));
        let one = ScalarField::from_fn(grid, 0.0, |_| 1.0);
        assert_eq!(step_explicit(&one, &cfg, dt).unwrap().values, one.values);

        let cfg = cfg.with_bc(BoundaryConditions {
            left: Boundary::Neumann,
            right: Boundary::Neumann,
        });
        assert_eq!(step_explicit(&one, &cfg, dt).unwrap().values, one.values);
    }

    #[test]
    fn constant_interior_grows_logistically() {
        let grid = make_grid(0.0, 1.0, 21).unwrap();
        for d in [0.1, 1.0, 3.0] {
            let cfg = SolverConfig::new(
                PhysicalParams::new(d, 1.0).unwrap(),
                ScalingParam::one(),
                grid,
                1.0,
            )
            .unwrap()
            .with_bc(BoundaryConditions::dirichlet(0.5, 0.5));
            let f = ScalarField::from_fn(grid, 0.0, |_| 0.5);
            let dt = stable_dt(&cfg).unwrap();
            let next = step_explicit(&f, &cfg, dt).unwrap();
            for &v in &next.values[1..20] {
                assert!((v - (0.5 + dt * 0.25)).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn instability_is_reported() {
        let grid = make_grid(0.0, 1.0, 21).unwrap();
        let cfg = unit_config(grid, 1.0);
        let f = ScalarField::from_fn(grid, 0.0, |x| if x < 0.5 { 1.0 } else { 0.0 });
        // r = 2.0, far beyond the explicit limit
        let err = step_explicit(&f, &cfg, 2.0 * grid.dx() * grid.dx()).unwrap_err();
        assert!(matches!(err, Error::Instability { .. }));
        let cfg = cfg.with_dt(TimeStep::Fixed(0.05));
        assert!(matches!(
            simulate(&InitialCondition::Step { x0: 0.5 }, &cfg),
            Err(Error::Instability { .. })
        ));
    }

    #[test]
    fn snapshot_schedule() {
        let grid = make_grid(0.0, 20.0, 201).unwrap();
        let cfg = unit_config(grid, 2.5).with_output_every(1.0);
        let traj = simulate(&InitialCondition::Step { x0: 5.0 }, &cfg).unwrap();
        let times: Vec<f64> = traj.times().collect();
        assert_eq!(times, [0.0, 1.0, 2.0, 2.5]);
        assert!(traj.dt <= stable_dt(&cfg).unwrap());
        assert!(!traj.front_hit_boundary);
    }

    #[test]
    fn initial_conditions() {
        let grid = make_grid(-5.0, 5.0, 101).unwrap();
        let p = PhysicalParams::unit();
        let eps = ScalingParam::one();
        let step = InitialCondition::Step { x0: 0.0 }
            .sample(grid, p, eps)
            .unwrap();
        assert_eq!(step.values[50], 1.0);
        assert_eq!(step.values[51], 0.0);
        let tail = InitialCondition::ExpTail {
            x0: 0.0,
            lambda: 1.0,
        }
        .sample(grid, p, eps)
        .unwrap();
        assert_eq!(tail.values[10], 1.0);
        assert!((tail.values[60] - exp(-1.0)).abs() < 1e-15);
        let az = InitialCondition::AzProfile { x0: 1.0 }
            .sample(grid, p, eps)
            .unwrap();
        assert!((az.values[60] - 0.25).abs() < 1e-15);
        // dimensional: x~ = sqrt(U/D) x / eps
        let p4 = PhysicalParams::new(4.0, 1.0).unwrap();
        let az = InitialCondition::AzProfile { x0: 0.0 }
            .sample(grid, p4, eps)
            .unwrap();
        assert!((az.values[70] - az_rho(1.0)).abs() < 1e-15);
        for f in [step, tail, az] {
            assert!(f.within_unit_interval(0.0));
        }
        assert!(InitialCondition::ExpTail {
            x0: 0.0,
            lambda: 0.0
        }
        .sample(grid, p, eps)
        .is_err());
    }
}
