//! Colocated-correlation bounds for the bivariate Matérn model and a
//! Gram-matrix positive-semidefiniteness witness.
//!
//! The closed-form bound `|ρ12| <= α12² / (α11 α22)` holds for constant
//! smoothness with `α12 < min(α11, α22)`. It is the exact condition for
//! planar (d = 2) sites; on a line the admissible range is wider (the
//! square root of that ratio), in R³ narrower. The PSD check reports
//! whatever the given sites witness.

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::format::sig10;
use crate::models::{cross_covariance_matrix, BivariateMaternModel, CrossCorrelation};
use crate::points::PointSet;

/// Default relative eigenvalue tolerance of [`gram_psd_check`].
pub const DEFAULT_PSD_TOL: f64 = 1e-10;
/// Number of sites in the default 1-d violation-witness grid.
pub const WITNESS_POINTS: usize = 200;
/// Final bracket width of [`empirical_rho_bound`].
pub const RHO_BISECTION_WIDTH: f64 = 1e-3;

const PARAM_REL_TOL: f64 = 1e-12;

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= PARAM_REL_TOL * a.abs().max(b.abs())
}

/// Upper bound on `|ρ12|` for the bivariate Matérn with `alpha = (α11, α22, α12)`.
///
/// Covers constant smoothness with either `α12 < min(α11, α22)` or the
/// separable case `α11 = α22 = α12`; anything else is [`Error::Unsupported`].
pub fn matern_colocated_bound(alpha: [f64; 3], nu: [f64; 3]) -> Result<f64> {
    if alpha.iter().chain(&nu).any(|v| !(*v > 0.0 && v.is_finite())) {
        return domain("scale and smoothness parameters must be positive and finite");
    }
    let [a11, a22, a12] = alpha;
    let constant_nu = close(nu[0], nu[1]) && close(nu[0], nu[2]);
    if !constant_nu {
        return Err(Error::Unsupported(format!("no closed-form bound for non-constant smoothness {nu:?}")));
    }
    if close(a11, a22) && close(a11, a12) {
        return Ok(1.0);
    }
    if a12 < a11.min(a22) {
        return Ok(a12 * a12 / (a11 * a22));
    }
    Err(Error::Unsupported(format!(
        "no closed-form bound for alpha12 = {a12} >= min(alpha11, alpha22) = {}",
        a11.min(a22)
    )))
}

/// Sampled bound curve `α12 ↦ α12² / (α11 α22)` over `(0, min(α11, α22))`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCurve {
    pub alpha11: f64,
    pub alpha22: f64,
    /// `(α12, bound)` pairs in increasing `α12`.
    pub samples: Vec<(f64, f64)>,
}

impl BoundCurve {
    /// CSV with header `alpha12,bound`, LF line endings, 10 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("alpha12,bound\n");
        for &(a12, b) in &self.samples {
            out.push_str(&format!("{},{}\n", sig10(a12), sig10(b)));
        }
        out
    }
}

/// `steps` equally spaced `α12 = m k / (steps + 1)`, `k = 1..=steps`, with `m = min(α11, α22)`.
pub fn bound_curve(alpha11: f64, alpha22: f64, steps: usize) -> Result<BoundCurve> {
    if steps < 2 {
        return domain(format!("bound curve needs at least 2 steps, got {steps}"));
    }
    let m = alpha11.min(alpha22);
    let samples = (1..=steps)
        .map(|k| {
            let a12 = m * k as f64 / (steps + 1) as f64;
            matern_colocated_bound([alpha11, alpha22, a12], [0.5; 3]).map(|b| (a12, b))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundCurve { alpha11, alpha22, samples })
}

/// Eigenvalue summary of a `2n x 2n` Gram matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PsdReport {
    pub n_points: usize,
    pub dimension: usize,
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
    pub psd: bool,
    pub tolerance: f64,
}

impl PsdReport {
    /// `min >= -tol * max(1, |max|)`.
    pub fn verdict(min_eigenvalue: f64, max_eigenvalue: f64, tolerance: f64) -> bool {
        min_eigenvalue >= -tolerance * max_eigenvalue.abs().max(1.0)
    }
}

/// Builds the Gram matrix of `model` on `points` (using the model's own
/// variances) and checks it for positive semidefiniteness.
pub fn gram_psd_check<M: CrossCorrelation + ?Sized>(
    model: &M,
    points: &PointSet,
    tolerance: f64,
) -> Result<PsdReport> {
    if !(tolerance > 0.0) {
        return domain(format!("tolerance must be positive, got {tolerance}"));
    }
    let gram = cross_covariance_matrix(model, points, model.variances())?;
    let eig = gram.symmetric_eigenvalues();
    let (min, max) =
        eig.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    Ok(PsdReport {
        n_points: points.len(),
        dimension: points.dim(),
        min_eigenvalue: min,
        max_eigenvalue: max,
        psd: PsdReport::verdict(min, max, tolerance),
        tolerance,
    })
}

/// 200 equally spaced sites on `[0, 10 / min(α)]` in d = 1.
pub fn default_witness_grid(alpha: [f64; 3]) -> Result<PointSet> {
    let min = alpha.iter().copied().fold(f64::INFINITY, f64::min);
    if !(min > 0.0 && min.is_finite()) {
        return domain("scale parameters must be positive and finite");
    }
    PointSet::grid_1d(WITNESS_POINTS, 0.0, 10.0 / min)
}

/// Largest `ρ12` in `[0, 1]` (to within `RHO_BISECTION_WIDTH`) whose unit
/// variance bivariate Matérn Gram matrix on `points` passes the PSD check.
///
/// A finite site set only yields necessary conditions, so this is an upper
/// approximation of the true bound that shrinks as sites are added.
pub fn empirical_rho_bound(alpha: [f64; 3], nu: [f64; 3], points: &PointSet, tolerance: f64) -> Result<f64> {
    let psd_at = |rho: f64| -> Result<bool> {
        let model = BivariateMaternModel::new([1.0, 1.0], rho, alpha, nu)?;
        Ok(gram_psd_check(&model, points, tolerance)?.psd)
    };
    if psd_at(1.0)? {
        return Ok(1.0);
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    while hi - lo > RHO_BISECTION_WIDTH {
        let mid = 0.5 * (lo + hi);
        if psd_at(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}
