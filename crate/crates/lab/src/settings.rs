//! Effective simulation settings: flags over config file over defaults.

use std::path::{Path, PathBuf};

use fkpp_core::exact::az_decay_rate;
use fkpp_core::solver::{InitialCondition, SolverConfig};
use fkpp_core::{Grid1D, PhysicalParams, ScalingParam};
use serde::{Deserialize, Serialize};

use crate::cli::{FrontSpeedArgs, IcKind, SimArgs};
use crate::error::{LabError, LabResult};

/// Keys accepted in a `--config` TOML file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub ic: Option<IcKind>,
    pub dimensionless: Option<bool>,
    #[serde(rename = "D")]
    pub d: Option<f64>,
    #[serde(rename = "U")]
    pub u: Option<f64>,
    pub eps: Option<f64>,
    pub t_end: Option<f64>,
    pub x_min: Option<f64>,
    pub x_max: Option<f64>,
    pub dx: Option<f64>,
    pub x0: Option<f64>,
    pub lambda: Option<f64>,
    pub output_every: Option<f64>,
    pub safety: Option<f64>,
    pub seed: Option<u64>,
    pub out_dir: Option<PathBuf>,
    pub level: Option<f64>,
    pub fit_window: Option<f64>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> LabResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| LabError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        toml::from_str(&text).map_err(|e| LabError::Config {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
    }
}

/// Fully resolved settings, echoed into metadata.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimSettings {
    pub ic: IcKind,
    pub dimensionless: bool,
    #[serde(rename = "D")]
    pub d: f64,
    #[serde(rename = "U")]
    pub u: f64,
    pub eps: f64,
    pub t_end: f64,
    pub x_min: f64,
    pub x_max: f64,
    pub dx: f64,
    pub x0: f64,
    pub lambda: Option<f64>,
    pub output_every: f64,
    pub safety: f64,
    pub seed: u64,
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasureSettings {
    pub level: f64,
    pub fit_window: f64,
}

/// How `output_every` defaults when neither flag nor file sets it.
#[derive(Debug, Clone, Copy)]
pub enum OutputDefault {
    Every(f64),
    /// `t_end / n`.
    Samples(f64),
}

fn load_file(path: Option<&PathBuf>) -> LabResult<ConfigFile> {
    path.map_or_else(|| Ok(ConfigFile::default()), |p| ConfigFile::load(p))
}

fn positive(name: &str, value: f64) -> LabResult<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(LabError::Validation(format!(
            "--{name} must be positive and finite, got {value}"
        )))
    }
}

impl SimSettings {
    pub fn resolve(args: &SimArgs, file: &ConfigFile, output: OutputDefault) -> LabResult<Self> {
        let dimensionless = args.dimensionless || file.dimensionless.unwrap_or(false);
        let d = args.d.or(file.d);
        let u = args.u.or(file.u);
        let eps = args.eps.or(file.eps);
        if dimensionless {
            for (name, v) in [("D", d), ("U", u), ("eps", eps)] {
                if v.is_some_and(|v| v != 1.0) {
                    return Err(LabError::Validation(format!(
                        "--{name} does not apply with --dimensionless (fixed to 1)"
                    )));
                }
            }
        }
        let t_end = positive("t-end", args.t_end.or(file.t_end).unwrap_or(50.0))?;
        let output_every = match args.output_every.or(file.output_every) {
            Some(v) => v,
            None => match output {
                OutputDefault::Every(v) => v.min(t_end),
                OutputDefault::Samples(n) => t_end / n,
            },
        };
        let settings = Self {
            ic: args.ic.or(file.ic).unwrap_or(IcKind::Step),
            dimensionless,
            d: d.unwrap_or(1.0),
            u: u.unwrap_or(1.0),
            eps: eps.unwrap_or(1.0),
            t_end,
            x_min: args.x_min.or(file.x_min).unwrap_or(0.0),
            x_max: args.x_max.or(file.x_max).unwrap_or(200.0),
            dx: positive("dx", args.dx.or(file.dx).unwrap_or(0.1))?,
            x0: args.x0.or(file.x0).unwrap_or(10.0),
            lambda: None,
            output_every: positive("output-every", output_every)?,
            safety: args.safety.or(file.safety).unwrap_or(0.9),
            seed: args.seed.or(file.seed).unwrap_or(0),
            out_dir: args.out_dir.clone().or_else(|| file.out_dir.clone()),
        };
        let lambda = match settings.ic {
            IcKind::ExpTail => Some(match args.lambda.or(file.lambda) {
                Some(l) => positive("lambda", l)?,
                None => az_decay_rate() * settings.x_scale()?,
            }),
            _ => None,
        };
        Ok(Self { lambda, ..settings })
    }

    pub fn from_args(args: &SimArgs, output: OutputDefault) -> LabResult<Self> {
        Self::resolve(args, &load_file(args.config.as_ref())?, output)
    }

    pub fn params(&self) -> LabResult<PhysicalParams> {
        Ok(PhysicalParams::new(self.d, self.u)?)
    }

    pub fn epsilon(&self) -> LabResult<ScalingParam> {
        Ok(ScalingParam::new(self.eps)?)
    }

    /// Ratio of dimensionless to simulation length units.
    fn x_scale(&self) -> LabResult<f64> {
        let map = fkpp_core::DimensionlessMap::new(self.epsilon()?, self.params()?)?;
        Ok(map.x_scale())
    }

    pub fn solver_config(&self) -> LabResult<SolverConfig> {
        let grid = Grid1D::with_spacing(self.x_min, self.x_max, self.dx)?;
        let config = SolverConfig::new(self.params()?, self.epsilon()?, grid, self.t_end)?
            .with_output_every(self.output_every)
            .with_safety(self.safety);
        config.validate()?;
        Ok(config)
    }

    pub fn initial_condition(&self) -> InitialCondition {
        match self.ic {
            IcKind::Step => InitialCondition::Step { x0: self.x0 },
            IcKind::Az => InitialCondition::AzProfile { x0: self.x0 },
            IcKind::ExpTail => InitialCondition::ExpTail {
                x0: self.x0,
                lambda: self.lambda.unwrap_or(f64::NAN),
            },
        }
    }

    /// Asymptotic speed selected by the initial condition.
    pub fn theoretical_speed(&self) -> LabResult<f64> {
        let p = self.params()?;
        p.require_reaction()?;
        let (d, u, eps) = (p.d(), p.u(), self.eps);
        let v_min = 2.0 * (d * u).sqrt();
        Ok(match self.ic {
            IcKind::Step => v_min,
            IcKind::Az => fkpp_core::exact::az_speed() * (d * u).sqrt(),
            IcKind::ExpTail => {
                // rho_t = eps D rho_xx + (U/eps) rho (1 - rho) with tail exp(-lambda x)
                let lambda = self.lambda.unwrap_or(f64::NAN);
                if lambda * eps < (u / d).sqrt() {
                    eps * d * lambda + u / (eps * lambda)
                } else {
                    v_min
                }
            }
        })
    }
}

impl MeasureSettings {
    pub fn from_args(args: &FrontSpeedArgs) -> LabResult<Self> {
        let file = load_file(args.sim.config.as_ref())?;
        let level = args
            .level
            .or(file.level)
            .unwrap_or(fkpp_core::front::DEFAULT_LEVEL);
        if !(level > 0.0 && level < 1.0) {
            return Err(LabError::Validation(format!(
                "--level must lie in (0, 1), got {level}"
            )));
        }
        let fit_window = args
            .fit_window
            .or(file.fit_window)
            .unwrap_or(fkpp_core::front::DEFAULT_FIT_WINDOW);
        if !(fit_window > 0.0 && fit_window <= 1.0) {
            return Err(LabError::Validation(format!(
                "--fit-window must lie in (0, 1], got {fit_window}"
            )));
        }
        Ok(Self { level, fit_window })
    }
}
