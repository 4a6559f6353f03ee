use std::fs;
use std::io::Write;
use std::path::Path;

use bicov::compare::{compare_on_rho_grid_with, parse_rho_grid, rows_to_csv, CompareOptions};
use bicov::descriptor::LatentDescriptor;
use bicov::flexibility::d_index_numeric_detail;
use bicov::points::PointSet;
use bicov::validity::{bound_curve, gram_psd_check, matern_colocated_bound, WITNESS_POINTS};
use bicov::{
    colocated, d_index_closed, dtilde_closed, dtilde_numeric, BivariateModel, CrossCorrelation, Error,
    LmcRoot, ModelDescriptor, NumericGrid, QuadratureSettings, UnivariateCorrelation,
};
use serde::Serialize;

use crate::args::{
    BoundArgs, CompareArgs, DtildeArgs, Format, IndexArgs, Method, Output, Root, ValidateArgs,
};
use crate::error::CliError;
use crate::report::{
    BoundReport, CompareReport, CompareRowReport, IndexReport, PointSetReport, ValidateReport,
};

type Result<T> = std::result::Result<T, CliError>;

const BOUND_SLACK: f64 = 1e-12;

fn read_descriptor(path: &Path) -> Result<ModelDescriptor> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Parse { path: path.into(), source })
}

fn emit(output: &Output, default: Format, csv: impl FnOnce() -> String, json: &impl Serialize) -> Result<()> {
    let text = match output.format.unwrap_or(default) {
        Format::Csv => csv(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(json).expect("report serializes");
            s.push('\n');
            s
        }
    };
    match &output.path {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io { path: path.clone(), source }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io { path: "<stdout>".into(), source })
        }
    }
}

fn closed_form_bound(model: &BivariateModel) -> Option<f64> {
    match model {
        BivariateModel::Matern(m) => matern_colocated_bound(m.alpha(), m.nu()).ok(),
        BivariateModel::Lmc(_) => None,
    }
}

pub fn validate(args: &ValidateArgs) -> Result<()> {
    let descriptor = read_descriptor(&args.model)?;
    let model = descriptor.into_model()?;
    let extent = 10.0 / model.min_rate();
    let dim = usize::from(args.dim);
    let sets = [
        (format!("uniform_{dim}d"), PointSet::uniform(args.points, dim, extent, args.seed)?),
        ("grid_1d".to_string(), PointSet::grid_1d(WITNESS_POINTS, 0.0, extent)?),
    ];
    let mut reports = Vec::with_capacity(sets.len());
    for (name, points) in &sets {
        let r = gram_psd_check(&model, points, args.tol)?;
        reports.push(PointSetReport {
            point_set: name.clone(),
            n_points: r.n_points,
            dimension: r.dimension,
            min_eigenvalue: r.min_eigenvalue,
            max_eigenvalue: r.max_eigenvalue,
            psd: r.psd,
        });
    }
    let rho12 = colocated(&model);
    let bound = closed_form_bound(&model);
    let within_bound = bound.map(|b| rho12.abs() <= b + BOUND_SLACK);
    let psd = reports.iter().all(|r| r.psd);
    let report = ValidateReport {
        model_type: model.type_name().to_string(),
        model: descriptor,
        rho12,
        closed_form_bound: bound,
        within_bound,
        seed: args.seed,
        tolerance: args.tol,
        reports,
        psd,
    };
    emit(&args.output, Format::Json, || report.to_csv(), &report)?;
    if !psd {
        let worst = report.reports.iter().map(|r| r.min_eigenvalue).fold(f64::INFINITY, f64::min);
        return Err(CliError::Rejected(format!("Gram matrix is not PSD (min eigenvalue {worst:e})")));
    }
    if args.strict && within_bound == Some(false) {
        return Err(CliError::Model(Error::Bound { rho: rho12, bound: bound.unwrap_or(f64::NAN) }));
    }
    Ok(())
}

pub fn bound(args: &BoundArgs) -> Result<()> {
    let curve = bound_curve(args.alpha11, args.alpha22, args.steps)?;
    emit(&args.output, Format::Csv, || curve.to_csv(), &BoundReport::from(&curve))
}

/// Closed value, or `None` when `Both` was asked for and no closed form exists.
fn closed_value(method: Method, f: impl FnOnce() -> bicov::Result<f64>) -> Result<Option<f64>> {
    match method {
        Method::Numeric => Ok(None),
        Method::Closed => Ok(Some(f()?)),
        Method::Both => match f() {
            Ok(v) => Ok(Some(v)),
            Err(Error::Unsupported(_)) => Ok(None),
            Err(e) => Err(e.into()),
        },
    }
}

fn diff(closed: Option<f64>, numeric: Option<f64>) -> Option<f64> {
    Some((closed? - numeric?).abs())
}

pub fn dindex(args: &IndexArgs) -> Result<()> {
    let model = read_descriptor(&args.model)?.into_model()?;
    let closed = closed_value(args.method, || d_index_closed(&model, args.triple))?;
    let numeric = if args.method == Method::Closed {
        None
    } else {
        let grid = NumericGrid { t_max: args.tmax, n_points: args.grid, ..NumericGrid::default() };
        Some(d_index_numeric_detail(&model, args.triple, grid)?)
    };
    let report = IndexReport {
        index: "D".into(),
        triple: args.triple.to_string(),
        closed,
        numeric: numeric.map(|n| n.value),
        abs_diff: diff(closed, numeric.map(|n| n.value)),
        argmax_t: numeric.map(|n| n.argmax_t),
    };
    emit(&args.output, Format::Json, || report.to_csv(), &report)
}

pub fn dtilde(args: &DtildeArgs) -> Result<()> {
    let model = read_descriptor(&args.model)?.into_model()?;
    let closed = closed_value(args.method, || dtilde_closed(&model, args.triple))?;
    let numeric = if args.method == Method::Closed {
        None
    } else {
        let quad = QuadratureSettings { t_max: args.tmax, abs_tol: args.abstol };
        Some(dtilde_numeric(&model, args.triple, quad)?)
    };
    let report = IndexReport {
        index: "Dtilde".into(),
        triple: args.triple.to_string(),
        closed,
        numeric,
        abs_diff: diff(closed, numeric),
        argmax_t: None,
    };
    emit(&args.output, Format::Json, || report.to_csv(), &report)
}

fn lmc_latents(d: ModelDescriptor) -> Result<[UnivariateCorrelation; 2]> {
    let latents: [LatentDescriptor; 2] = match d {
        ModelDescriptor::Lmc { latents, .. } | ModelDescriptor::LmcConstrained { latents, .. } => latents,
        ModelDescriptor::BivariateMatern { .. } => {
            return Err(Error::Domain("--lmc expects an lmc or lmc_constrained descriptor".into()).into())
        }
    };
    let [l1, l2] = latents;
    Ok([l1.into_correlation()?, l2.into_correlation()?])
}

fn exp_alphas(d: ModelDescriptor) -> Result<[f64; 3]> {
    match d {
        ModelDescriptor::BivariateMatern { alpha, nu, .. } if nu.iter().all(|&v| v == 0.5) => Ok(alpha),
        _ => {
            Err(Error::Domain("--exp expects a bivariate_matern descriptor with nu = [0.5, 0.5, 0.5]".into())
                .into())
        }
    }
}

pub fn compare(args: &CompareArgs) -> Result<()> {
    let latents = lmc_latents(read_descriptor(&args.lmc)?)?;
    let alphas = exp_alphas(read_descriptor(&args.exp)?)?;
    let grid = parse_rho_grid(&args.rho_grid)?;
    let root = match args.root {
        Root::Plus => LmcRoot::Plus,
        Root::Minus => LmcRoot::Minus,
    };
    let opts = CompareOptions { root, ..CompareOptions::default() };
    let rows = compare_on_rho_grid_with(latents, alphas, &grid, args.triple, opts)?;
    let report = CompareReport {
        triple: args.triple.to_string(),
        root: format!("{:?}", args.root).to_lowercase(),
        rows: rows.iter().map(CompareRowReport::from).collect(),
    };
    emit(&args.output, Format::Csv, || rows_to_csv(&rows), &report)
}
