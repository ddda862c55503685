//! One PASS/FAIL line per acceptance criterion; exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use fkpp_core::exact::{az_decay_rate, az_speed};
use fkpp_core::scaling::SweepSetup;
use fkpp_core::PhysicalParams;
use fkpp_lab::cli::{IcKind, SimArgs};
use fkpp_lab::commands::simulate::{cmd_front_speed, run_simulation};
use fkpp_lab::commands::sweep::{run_sweep, sweep_verdict};
use fkpp_lab::commands::{gaz, verify};
use fkpp_lab::settings::{ConfigFile, MeasureSettings, OutputDefault, SimSettings};

struct Outcome {
    pass: bool,
    detail: String,
}

fn sim(args: SimArgs) -> SimSettings {
    SimSettings::resolve(&args, &ConfigFile::default(), OutputDefault::Samples(100.0)).unwrap()
}

fn measure() -> MeasureSettings {
    MeasureSettings {
        level: 0.5,
        fit_window: 0.5,
    }
}

fn check(report: &verify::VerifyReport, name: &str) -> Outcome {
    let c = report.check(name).unwrap();
    Outcome {
        pass: c.pass,
        detail: format!(
            "{name}: max {:.3e} (tol {:.0e})",
            c.max_residual, c.tolerance
        ),
    }
}

fn joined(outcomes: Vec<Outcome>) -> Outcome {
    Outcome {
        pass: outcomes.iter().all(|o| o.pass),
        detail: outcomes
            .into_iter()
            .map(|o| o.detail)
            .collect::<Vec<_>>()
            .join("; "),
    }
}

fn az_run() -> (f64, Option<f64>, bool) {
    let settings = sim(SimArgs {
        ic: Some(IcKind::Az),
        dimensionless: true,
        t_end: Some(40.0),
        dx: Some(0.05),
        x_min: Some(-20.0),
        x_max: Some(200.0),
        x0: Some(0.0),
        output_every: Some(0.2),
        ..SimArgs::default()
    });
    let (r, _) = cmd_front_speed(&settings, &measure()).unwrap();
    (r.v_hat, r.decay_rate, r.front_hit_boundary)
}

fn criterion_2() -> Outcome {
    let (v, _, hit) = az_run();
    let rel = (v - az_speed()).abs() / az_speed();
    Outcome {
        pass: rel <= 0.01 && !hit,
        detail: format!(
            "v_hat = {v:.6} vs 5/sqrt(6) = {:.6}, rel error {rel:.2e} (tol 1e-2)",
            az_speed()
        ),
    }
}

fn criterion_3() -> Outcome {
    let settings = sim(SimArgs {
        ic: Some(IcKind::Step),
        d: Some(1.0),
        u: Some(1.0),
        t_end: Some(100.0),
        x_min: Some(0.0),
        x_max: Some(400.0),
        dx: Some(0.1),
        x0: Some(10.0),
        output_every: Some(0.5),
        ..SimArgs::default()
    });
    let (r, _) = cmd_front_speed(&settings, &measure()).unwrap();
    Outcome {
        pass: r.rel_error <= 0.03 && !r.front_hit_boundary,
        detail: format!(
            "v_hat = {:.6} vs 2, rel error {:.2e} (tol 3e-2)",
            r.v_hat, r.rel_error
        ),
    }
}

fn criterion_4() -> Outcome {
    let (_, lambda, _) = az_run();
    match lambda {
        Some(l) => {
            let rel = (l - az_decay_rate()).abs() / az_decay_rate();
            Outcome {
                pass: rel <= 0.02,
                detail: format!(
                    "decay rate {l:.6} vs sqrt(2/3) = {:.6}, rel error {rel:.2e} (tol 2e-2)",
                    az_decay_rate()
                ),
            }
        }
        None => Outcome {
            pass: false,
            detail: "decay rate not measurable".into(),
        },
    }
}

fn criterion_8() -> Outcome {
    let setup = SweepSetup::new(PhysicalParams::unit());
    let table = run_sweep(&[0.4, 0.2, 0.1, 0.05], &setup).unwrap();
    let verdict = sweep_verdict(&table, &setup);
    let rows: Vec<String> = table
        .rows
        .iter()
        .map(|(eps, r)| match r {
            Ok(r) => format!(
                "eps {eps}: err {:.4}, hj {:.3e}",
                r.front_error, r.hj_residual_median
            ),
            Err(e) => format!("eps {eps}: {e}"),
        })
        .collect();
    Outcome {
        pass: table.front_error_decreasing() == Some(true)
            && table.hj_residual_decreasing() == Some(true),
        detail: format!("monotone = {}; {}", verdict.monotone, rows.join(", ")),
    }
}

fn criterion_9() -> Outcome {
    let x0 = 10.025;
    let settings = sim(SimArgs {
        ic: Some(IcKind::Step),
        u: Some(0.0),
        t_end: Some(4.0),
        x_min: Some(0.0),
        x_max: Some(20.0),
        dx: Some(0.05),
        x0: Some(x0),
        output_every: Some(1.0),
        ..SimArgs::default()
    });
    let run = run_simulation(&settings, "acceptance").unwrap();
    let mut worst = 0.0f64;
    for snap in &run.trajectory.snapshots[1..] {
        for (x, v) in snap.grid.nodes().zip(&snap.values) {
            let exact = 0.5 * libm::erfc((x - x0) / (2.0 * snap.time.sqrt()));
            worst = worst.max((v - exact).abs());
        }
    }
    Outcome {
        pass: worst <= 2e-3,
        detail: format!("max-norm error {worst:.3e} at dx = 0.05 (tol 2e-3)"),
    }
}

fn criterion_10() -> Outcome {
    let r = gaz::gaz_report(1.0, 1.0).unwrap();
    let close = |a: f64, b: f64| (a - b).abs() <= 5e-7;
    let pass = r.checks_pass
        && r.beta_minus_u < 0.0
        && close(r.paper_beta, 0.816497)
        && close(r.slope_matching_beta, 1.666667)
        && close(r.derived_A, 0.816497)
        && close(r.derived_B, 1.666667)
        && close(r.printed_A, 0.816497)
        && close(r.printed_B, 0.816497);
    Outcome {
        pass,
        detail: format!(
            "paper_beta - U = {:.6}, slope-matching beta = {:.6}, derived (A, B) = ({:.6}, {:.6}), printed (A, B) = ({:.6}, {:.6})",
            r.beta_minus_u, r.slope_matching_beta, r.derived_A, r.derived_B, r.printed_A, r.printed_B
        ),
    }
}

type Criterion<'a> = (&'static str, Duration, Box<dyn Fn() -> Outcome + 'a>);

fn main() {
    let report = verify::verify_report(0).unwrap();
    let criteria: Vec<Criterion> = vec![
        (
            "1 AZ exactness",
            Duration::from_secs(1),
            Box::new(|| check(&report, "az_ode_residual")),
        ),
        (
            "2 AZ traveling speed",
            Duration::from_secs(120),
            Box::new(criterion_2),
        ),
        (
            "3 pulled-front speed",
            Duration::from_secs(300),
            Box::new(criterion_3),
        ),
        (
            "4 leading-edge decay",
            Duration::from_secs(120),
            Box::new(criterion_4),
        ),
        (
            "5 HJ analytic residuals",
            Duration::from_secs(1),
            Box::new(|| {
                joined(
                    ["hj_residual_g1", "hj_residual_g2", "hj_residual_g3"]
                        .map(|n| check(&report, n))
                        .into(),
                )
            }),
        ),
        (
            "6 double root",
            Duration::from_secs(1),
            Box::new(|| check(&report, "momentum_double_root")),
        ),
        (
            "7 ansatz verification",
            Duration::from_secs(1),
            Box::new(|| check(&report, "ansatz_residual")),
        ),
        (
            "8 eps-convergence",
            Duration::from_secs(600),
            Box::new(criterion_8),
        ),
        (
            "9 heat-equation oracle",
            Duration::from_secs(30),
            Box::new(criterion_9),
        ),
        (
            "10 G_AZ audit",
            Duration::from_secs(1),
            Box::new(criterion_10),
        ),
    ];
    let mut failed = 0;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let pass = outcome.pass && elapsed <= budget;
        failed += usize::from(!pass);
        println!(
            "{} criterion {name}: {} [{:.2}s, budget {}s]",
            if pass { "PASS" } else { "FAIL" },
            outcome.detail,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
