use std::time::Instant;

use fkpp_core::front::{decay_rate, fit_trace, trace_front, DEFAULT_DECAY_BAND};
use fkpp_core::solver::{simulate, stable_dt, Trajectory};
use serde::Serialize;

use crate::error::LabResult;
use crate::output::{json_string, Artifacts, CsvTable, DEFAULT_OUT_DIR};
use crate::settings::{MeasureSettings, SimSettings};

#[derive(Debug, Clone, Serialize)]
pub struct SimMetadata {
    pub command: &'static str,
    pub coordinates: &'static str,
    pub config: SimSettings,
    pub nodes: usize,
    pub grid_dx: f64,
    pub stable_dt: f64,
    pub dt: f64,
    pub steps: usize,
    pub snapshots: usize,
    pub wall_clock_s: f64,
    pub front_hit_boundary: bool,
    pub seed: u64,
}

pub struct SimRun {
    pub trajectory: Trajectory,
    pub metadata: SimMetadata,
}

pub fn run_simulation(settings: &SimSettings, command: &'static str) -> LabResult<SimRun> {
    let config = settings.solver_config()?;
    let ic = settings.initial_condition();
    let start = Instant::now();
    let trajectory = simulate(&ic, &config)?;
    let metadata = SimMetadata {
        command,
        coordinates: if settings.dimensionless {
            "dimensionless"
        } else {
            "dimensional"
        },
        config: settings.clone(),
        nodes: config.grid.len(),
        grid_dx: config.grid.dx(),
        stable_dt: stable_dt(&config)?,
        dt: trajectory.dt,
        steps: trajectory.steps,
        snapshots: trajectory.snapshots.len(),
        wall_clock_s: start.elapsed().as_secs_f64(),
        front_hit_boundary: trajectory.front_hit_boundary,
        seed: settings.seed,
    };
    Ok(SimRun {
        trajectory,
        metadata,
    })
}

/// Columns `t, x, rho`, one row per node per snapshot.
pub fn trajectory_csv(trajectory: &Trajectory) -> LabResult<Vec<u8>> {
    let mut table = CsvTable::new(&["t", "x", "rho"])?;
    for snap in &trajectory.snapshots {
        for (x, &rho) in snap.grid.nodes().zip(&snap.values) {
            table.row(&[snap.time, x, rho])?;
        }
    }
    table.into_bytes()
}

pub fn cmd_simulate(settings: &SimSettings) -> LabResult<(SimMetadata, Artifacts)> {
    let mut settings = settings.clone();
    let out_dir = settings
        .out_dir
        .get_or_insert_with(|| DEFAULT_OUT_DIR.into())
        .clone();
    let run = run_simulation(&settings, "simulate")?;
    let mut artifacts = Artifacts::default();
    artifacts.add(
        out_dir.join("trajectory.csv"),
        trajectory_csv(&run.trajectory)?,
    );
    artifacts.add(out_dir.join("metadata.json"), json_string(&run.metadata)?);
    Ok((run.metadata, artifacts))
}

#[derive(Debug, Clone, Serialize)]
pub struct FrontSpeedReport {
    pub v_hat: f64,
    pub stderr: f64,
    pub v_theory: f64,
    pub rel_error: f64,
    /// Leading-edge decay rate of the final profile, when the tail is resolved.
    pub decay_rate: Option<f64>,
    pub level: f64,
    pub fit_window: f64,
    pub samples: usize,
    pub front_hit_boundary: bool,
    pub metadata: SimMetadata,
}

pub fn cmd_front_speed(
    settings: &SimSettings,
    measure: &MeasureSettings,
) -> LabResult<(FrontSpeedReport, Artifacts)> {
    let v_theory = settings.theoretical_speed()?;
    let run = run_simulation(settings, "front-speed")?;
    let mut trace = trace_front(&run.trajectory, measure.level)?;
    let (v_hat, stderr) = fit_trace(&mut trace, measure.fit_window)?;
    let (lo, hi) = DEFAULT_DECAY_BAND;
    let report = FrontSpeedReport {
        v_hat,
        stderr,
        v_theory,
        rel_error: (v_hat - v_theory).abs() / v_theory,
        decay_rate: decay_rate(run.trajectory.last(), lo, hi).ok(),
        level: measure.level,
        fit_window: measure.fit_window,
        samples: trace.samples().len(),
        front_hit_boundary: run.trajectory.front_hit_boundary,
        metadata: run.metadata,
    };
    let mut artifacts = Artifacts::default();
    if let Some(out_dir) = &settings.out_dir {
        let mut table = CsvTable::new(&["t", "x_front"])?;
        for &(t, x) in trace.samples() {
            table.row(&[t, x])?;
        }
        artifacts.add(out_dir.join("front_trace.csv"), table.into_bytes()?);
        artifacts.add(out_dir.join("front_speed.json"), json_string(&report)?);
    }
    Ok((report, artifacts))
}
