use fkpp_core::scaling::{sweep_row, validate_eps_list, SweepRow, SweepSetup, SweepTable};
use fkpp_core::PhysicalParams;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cli::SweepArgs;
use crate::error::{LabError, LabResult};
use crate::output::{json_string, worker_pool, Artifacts, CsvTable};

#[derive(Debug, Clone, Serialize)]
pub struct SweepVerdict {
    pub rows: usize,
    /// `true`/`false`, or `"n/a"` with fewer than two successful rows.
    pub front_error_decreasing: Value,
    pub hj_residual_decreasing: Value,
    /// Reported only; not part of `monotone`.
    pub g_eq_residual_decreasing: Value,
    pub monotone: Value,
    pub failures: Vec<Value>,
    pub table: Vec<Value>,
    pub setup: Value,
}

fn verdict(v: Option<bool>) -> Value {
    v.map_or_else(|| json!("n/a"), Value::Bool)
}

fn row_json(eps: f64, row: &SweepRow) -> Value {
    json!({
        "epsilon": eps,
        "front_position": row.front_position,
        "front_error": row.front_error,
        "hj_residual_median": row.hj_residual_median,
        "g_eq_residual_median": row.g_eq_residual_median,
        "leading_edge_nodes": row.leading_edge_nodes,
        "dx": row.dx,
        "dt": row.dt,
        "steps": row.steps,
    })
}

pub fn setup_from_args(args: &SweepArgs) -> LabResult<SweepSetup> {
    let mut setup = SweepSetup::new(PhysicalParams::new(args.d, args.u)?);
    if !(args.t_star > 0.0 && args.cells_per_eps >= 2.0) {
        return Err(LabError::Validation(
            "--t-star must be positive and --cells-per-eps at least 2".into(),
        ));
    }
    setup.t_star = args.t_star;
    setup.cells_per_eps = args.cells_per_eps;
    setup.params.require_reaction()?;
    Ok(setup)
}

/// Rows run concurrently; the table keeps the requested order.
pub fn run_sweep(eps_list: &[f64], setup: &SweepSetup) -> LabResult<SweepTable> {
    let eps = validate_eps_list(eps_list)?;
    let rows = worker_pool()?.install(|| {
        eps.par_iter()
            .map(|&e| (e.get(), sweep_row(e, setup)))
            .collect()
    });
    Ok(SweepTable::from_rows(rows))
}

pub fn sweep_verdict(table: &SweepTable, setup: &SweepSetup) -> SweepVerdict {
    let front = table.front_error_decreasing();
    let hj = table.hj_residual_decreasing();
    let monotone = match (front, hj) {
        (Some(a), Some(b)) => Some(a && b),
        _ => None,
    };
    SweepVerdict {
        rows: table.rows.len(),
        front_error_decreasing: verdict(front),
        hj_residual_decreasing: verdict(hj),
        g_eq_residual_decreasing: verdict(table.g_eq_residual_decreasing()),
        monotone: verdict(monotone),
        failures: table
            .rows
            .iter()
            .filter_map(|(eps, r)| {
                r.as_ref()
                    .err()
                    .map(|e| json!({"epsilon": eps, "error": e.to_string()}))
            })
            .collect(),
        table: table
            .rows
            .iter()
            .filter_map(|(eps, r)| r.as_ref().ok().map(|row| row_json(*eps, row)))
            .collect(),
        setup: json!({
            "D": setup.params.d(),
            "U": setup.params.u(),
            "t_star": setup.t_star,
            "cells_per_eps": setup.cells_per_eps,
            "ic_width_cells": setup.ic_width_cells,
            "behind": setup.behind,
            "tail_depth": setup.tail_depth,
            "time_window": setup.time_window,
            "safety": setup.safety,
        }),
    }
}

/// Columns `epsilon, front_error, hj_residual_median, g_eq_residual_median`; failed rows are NaN.
pub fn sweep_csv(table: &SweepTable) -> LabResult<Vec<u8>> {
    let mut csv = CsvTable::new(&[
        "epsilon",
        "front_error",
        "hj_residual_median",
        "g_eq_residual_median",
    ])?;
    for (eps, row) in &table.rows {
        match row {
            Ok(r) => csv.row(&[
                *eps,
                r.front_error,
                r.hj_residual_median,
                r.g_eq_residual_median,
            ])?,
            Err(_) => csv.row(&[*eps, f64::NAN, f64::NAN, f64::NAN])?,
        }
    }
    csv.into_bytes()
}

pub fn cmd_sweep(args: &SweepArgs) -> LabResult<(SweepVerdict, Artifacts)> {
    let setup = setup_from_args(args)?;
    let table = run_sweep(&args.eps, &setup)?;
    let verdict = sweep_verdict(&table, &setup);
    let mut artifacts = Artifacts::default();
    artifacts.add(args.out_dir.join("sweep.csv"), sweep_csv(&table)?);
    artifacts.add(args.out_dir.join("verdict.json"), json_string(&verdict)?);
    Ok((verdict, artifacts))
}
