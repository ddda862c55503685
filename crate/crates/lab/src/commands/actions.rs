use fkpp_core::exact::linspace;
use fkpp_core::{ActionFunctionalSpec, ActionVariant, Branch, PhysicalParams};

use crate::cli::{ActionsArgs, BranchArg, Variant};
use crate::error::{LabError, LabResult};
use crate::output::{Artifacts, CsvTable};

fn spec_for(
    variant: Variant,
    args: &ActionsArgs,
    params: PhysicalParams,
) -> LabResult<ActionFunctionalSpec> {
    let missing =
        |flag: &str| LabError::Validation(format!("--{flag} is required for {variant:?}"));
    let v = match variant {
        Variant::G1 => ActionVariant::G1,
        Variant::G2 => ActionVariant::G2 {
            beta: args.beta.ok_or_else(|| missing("beta"))?,
        },
        Variant::G3 => ActionVariant::G3 {
            v: args.v.ok_or_else(|| missing("v"))?,
            branch: match args.branch {
                BranchArg::Plus => Branch::Plus,
                BranchArg::Minus => Branch::Minus,
            },
        },
        Variant::Gaz => ActionVariant::Gaz,
    };
    Ok(ActionFunctionalSpec::new(v, params)?)
}

/// Columns `x, t, G` for one action; times outer, positions inner.
pub fn action_table(
    spec: &ActionFunctionalSpec,
    xs: &[f64],
    ts: &[f64],
) -> LabResult<Vec<[f64; 3]>> {
    let mut rows = Vec::with_capacity(xs.len() * ts.len());
    for &t in ts {
        for &x in xs {
            rows.push([x, t, spec.value(x, t)?]);
        }
    }
    Ok(rows)
}

pub fn file_name(variant: Variant) -> String {
    format!("actions_{}.csv", format!("{variant:?}").to_lowercase())
}

/// Every variant is validated and tabulated before anything is written.
pub fn cmd_actions(args: &ActionsArgs) -> LabResult<Artifacts> {
    if args.nx < 2 || !(args.x_max > args.x_min) {
        return Err(LabError::Validation(
            "need --nx >= 2 and --x-max > --x-min".into(),
        ));
    }
    let params = PhysicalParams::new(args.d, args.u)?;
    let xs = linspace(args.x_min, args.x_max, args.nx);
    let mut artifacts = Artifacts::default();
    for &variant in &args.variant {
        let spec = spec_for(variant, args, params)?;
        let mut csv = CsvTable::new(&["x", "t", "G"])?;
        for row in action_table(&spec, &xs, &args.t)? {
            csv.row(&row)?;
        }
        artifacts.add(args.out_dir.join(file_name(variant)), csv.into_bytes()?);
    }
    Ok(artifacts)
}
