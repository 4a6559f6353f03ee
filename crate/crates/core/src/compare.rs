//! LMC versus bivariate exponential at matched colocated correlation.
//!
//! For every `ρ12` on a grid, a constrained LMC with latents `(R1, R2)` and a
//! bivariate exponential with rates `(α11, α22, α12)` are both set to
//! colocated coefficient `ρ12`, and both flexibility indices are evaluated
//! for the same triple. The default pairing matches the LMC latent rates
//! with the exponential marginal rates, so the two models differ only in
//! their cross structure.

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::flexibility::{
    d_index_closed, d_index_numeric, dtilde_closed, dtilde_numeric, IndexTriple, NumericGrid,
    QuadratureSettings,
};
use crate::format::sig10;
use crate::models::{BivariateMaternModel, BivariateModel, LmcModel, UnivariateCorrelation};
use crate::validity::matern_colocated_bound;

pub use crate::models::LmcRoot;

/// Both indices for both models at one colocated coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub rho12: f64,
    pub d_lmc: f64,
    pub d_exp: f64,
    pub dtilde_lmc: f64,
    pub dtilde_exp: f64,
    pub triple: IndexTriple,
}

/// Numeric fallbacks and root choice for [`compare_on_rho_grid_with`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CompareOptions {
    pub root: LmcRoot,
    pub grid: NumericGrid,
    pub quad: QuadratureSettings,
}

/// Exponential latents with rates 1 and 2.
pub fn default_lmc_latents() -> [UnivariateCorrelation; 2] {
    [UnivariateCorrelation::Exponential { rate: 1.0 }, UnivariateCorrelation::Exponential { rate: 2.0 }]
}

/// Marginal rates `(1, 2)` matched to the default latents; the cross rate
/// is their geometric mean.
pub fn default_exp_alphas() -> [f64; 3] {
    [1.0, 2.0, std::f64::consts::SQRT_2]
}

pub fn compare_on_rho_grid(
    lmc_latents: [UnivariateCorrelation; 2],
    exp_alphas: [f64; 3],
    rho_grid: &[f64],
    triple: IndexTriple,
) -> Result<Vec<ComparisonRow>> {
    compare_on_rho_grid_with(lmc_latents, exp_alphas, rho_grid, triple, CompareOptions::default())
}

/// One row per grid value, in grid order.
///
/// Fails with [`Error::Bound`] when `ρ12` exceeds the closed-form validity
/// bound of the exponential model. Scale triples outside the closed-form
/// regime are not checked.
pub fn compare_on_rho_grid_with(
    lmc_latents: [UnivariateCorrelation; 2],
    exp_alphas: [f64; 3],
    rho_grid: &[f64],
    triple: IndexTriple,
    opts: CompareOptions,
) -> Result<Vec<ComparisonRow>> {
    let bound = match matern_colocated_bound(exp_alphas, [0.5; 3]) {
        Ok(b) => Some(b),
        Err(Error::Unsupported(_)) => None,
        Err(e) => return Err(e),
    };
    rho_grid
        .iter()
        .map(|&rho| {
            if !(0.0..1.0).contains(&rho) {
                return domain(format!("comparison grid values must lie in [0, 1), got {rho}"));
            }
            if let Some(bound) = bound {
                if rho > bound {
                    return Err(Error::Bound { rho, bound });
                }
            }
            let [r1, r2] = lmc_latents;
            let lmc: BivariateModel = LmcModel::constrained_from_rho(rho, r1, r2, opts.root)?.into();
            let exp: BivariateModel = BivariateMaternModel::exponential(rho, exp_alphas)?.into();
            Ok(ComparisonRow {
                rho12: rho,
                d_lmc: d_auto(&lmc, triple, opts.grid)?,
                d_exp: d_auto(&exp, triple, opts.grid)?,
                dtilde_lmc: dtilde_auto(&lmc, triple, opts.quad)?,
                dtilde_exp: dtilde_auto(&exp, triple, opts.quad)?,
                triple,
            })
        })
        .collect()
}

fn d_auto(model: &BivariateModel, triple: IndexTriple, grid: NumericGrid) -> Result<f64> {
    match d_index_closed(model, triple) {
        Err(Error::Unsupported(_)) => d_index_numeric(model, triple, grid),
        other => other,
    }
}

fn dtilde_auto(model: &BivariateModel, triple: IndexTriple, quad: QuadratureSettings) -> Result<f64> {
    match dtilde_closed(model, triple) {
        Err(Error::Unsupported(_)) => dtilde_numeric(model, triple, quad),
        other => other,
    }
}

/// True iff every row with `ρ12 >= rho_threshold` has both LMC indices
/// strictly below the exponential ones. Vacuously true for an empty slice.
pub fn dominance_check(rows: &[ComparisonRow], rho_threshold: f64) -> bool {
    rows.iter().filter(|r| r.rho12 >= rho_threshold).all(|r| r.d_lmc < r.d_exp && r.dtilde_lmc < r.dtilde_exp)
}

/// CSV with header `rho12,d_lmc,d_exp,dtilde_lmc,dtilde_exp`.
pub fn rows_to_csv(rows: &[ComparisonRow]) -> String {
    let mut out = String::from("rho12,d_lmc,d_exp,dtilde_lmc,dtilde_exp\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            sig10(r.rho12),
            sig10(r.d_lmc),
            sig10(r.d_exp),
            sig10(r.dtilde_lmc),
            sig10(r.dtilde_exp)
        ));
    }
    out
}

/// Parses `start:stop:step` into `start + k step` for all `k` with the value
/// not past `stop` (up to rounding), or an explicit list `v1,v2,...`.
pub fn parse_rho_grid(spec: &str) -> Result<Vec<f64>> {
    if spec.contains(',') {
        return spec
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Domain(format!("bad number {s:?} in grid {spec:?}")))
            })
            .collect();
    }
    let parts: Vec<&str> = spec.split(':').collect();
    let [start, stop, step] = parts.as_slice() else {
        return domain(format!("grid must look like start:stop:step, got {spec:?}"));
    };
    let num = |s: &str| {
        s.trim().parse::<f64>().map_err(|_| Error::Domain(format!("bad number {s:?} in grid {spec:?}")))
    };
    let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
    if !(step > 0.0) || !start.is_finite() || !stop.is_finite() || stop < start {
        return domain(format!("grid needs finite start <= stop and step > 0, got {spec:?}"));
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    if n > 1_000_000 {
        return domain(format!("grid {spec:?} has too many points"));
    }
    Ok((0..=n).map(|k| start + k as f64 * step).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flexibility::g_closed;

    const T: IndexTriple = IndexTriple::MARGINALS;

    #[test]
    fn row_at_099() {
        let rows = compare_on_rho_grid(default_lmc_latents(), default_exp_alphas(), &[0.99], T).unwrap();
        let r = rows[0];
        assert!((r.d_lmc - 0.035_266_8).abs() < 1e-6);
        assert!((r.d_exp - 0.25).abs() < 1e-12);
        assert!((r.dtilde_exp - 0.5).abs() < 1e-15);
        assert_eq!(r.triple, T);
    }

    #[test]
    fn row_at_zero_matches_both_models() {
        let rows = compare_on_rho_grid(default_lmc_latents(), default_exp_alphas(), &[0.0], T).unwrap();
        let r = rows[0];
        assert!((r.d_lmc - 0.25).abs() < 1e-15);
        assert!((r.d_exp - 0.25).abs() < 1e-15);
        assert!(!dominance_check(&rows, 0.0));
    }

    #[test]
    fn dtilde_lmc_vanishes_near_one() {
        let grid = [0.9, 0.99, 0.999, 0.999_999];
        let rows = compare_on_rho_grid(default_lmc_latents(), default_exp_alphas(), &grid, T).unwrap();
        for w in rows.windows(2) {
            assert!(w[1].dtilde_lmc < w[0].dtilde_lmc);
            assert_eq!(w[1].dtilde_exp, 0.5);
        }
        assert!(rows.last().unwrap().dtilde_lmc < 1e-3);
    }

    #[test]
    fn lmc_index_scales_with_sqrt_one_minus_rho2() {
        let grid = parse_rho_grid("0:0.99:0.01").unwrap();
        let rows = compare_on_rho_grid(default_lmc_latents(), default_exp_alphas(), &grid, T).unwrap();
        let k = g_closed(1.0, 2.0, 1.0).unwrap().value;
        for r in &rows {
            assert!((r.d_lmc - k * (1.0 - r.rho12 * r.rho12).sqrt()).abs() < 1e-9);
            assert_eq!(r.d_exp, rows[0].d_exp);
            assert_eq!(r.dtilde_exp, rows[0].dtilde_exp);
        }
    }

    #[test]
    fn minus_root_gives_same_marginal_indices() {
        let grid = [0.3, 0.8, 0.95];
        let plus = compare_on_rho_grid(default_lmc_latents(), default_exp_alphas(), &grid, T).unwrap();
        let opts = CompareOptions { root: LmcRoot::Minus, ..Default::default() };
        let minus =
            compare_on_rho_grid_with(default_lmc_latents(), default_exp_alphas(), &grid, T, opts).unwrap();
        for (p, m) in plus.iter().zip(&minus) {
            assert!((p.d_lmc - m.d_lmc).abs() < 1e-12);
            assert!((p.dtilde_lmc - m.dtilde_lmc).abs() < 1e-12);
        }
    }

    #[test]
    fn bound_error_inside_closed_regime() {
        // bound 0.25 / 2 = 0.125
        let err = compare_on_rho_grid(default_lmc_latents(), [1.0, 2.0, 0.5], &[0.1, 0.2], T).unwrap_err();
        assert!(matches!(err, Error::Bound { rho, .. } if rho == 0.2));
        assert!(compare_on_rho_grid(default_lmc_latents(), default_exp_alphas(), &[1.0], T).is_err());
        assert!(compare_on_rho_grid(default_lmc_latents(), default_exp_alphas(), &[-0.1], T).is_err());
    }

    #[test]
    fn numeric_fallback_for_matern_latents() {
        let latents = [
            UnivariateCorrelation::matern(1.0, 1.5).unwrap(),
            UnivariateCorrelation::exponential(2.0).unwrap(),
        ];
        let rows = compare_on_rho_grid(latents, default_exp_alphas(), &[0.5], T).unwrap();
        assert!(rows[0].d_lmc > 0.0 && rows[0].d_lmc.is_finite());
    }

    #[test]
    fn dominance_examples() {
        let grid = [0.95, 0.97, 0.99, 0.999];
        let rows = compare_on_rho_grid(default_lmc_latents(), default_exp_alphas(), &grid, T).unwrap();
        assert!(dominance_check(&rows, 0.95));
        assert!(dominance_check(&rows, 0.9999));
        assert!(dominance_check(&[], 0.5));
    }

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_rho_grid("0:0.3:0.1").unwrap().len(), 4);
        assert_eq!(parse_rho_grid("0.5:0.5:0.1").unwrap(), vec![0.5]);
        assert!(parse_rho_grid("0:1").is_err());
        assert!(parse_rho_grid("0:1:0").is_err());
        assert!(parse_rho_grid("1:0:0.1").is_err());
        assert!(parse_rho_grid("a:1:0.1").is_err());
        assert_eq!(parse_rho_grid("0.95, 0.999").unwrap(), vec![0.95, 0.999]);
        assert!(parse_rho_grid("0.95,x").is_err());
    }

    #[test]
    fn csv_header_and_rows() {
        let rows = compare_on_rho_grid(default_lmc_latents(), default_exp_alphas(), &[0.0, 0.5], T).unwrap();
        let csv = rows_to_csv(&rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "rho12,d_lmc,d_exp,dtilde_lmc,dtilde_exp");
        assert_eq!(lines[1], "0,0.25,0.25,0.5,0.5");
        assert_eq!(lines.len(), 3);
    }
}
