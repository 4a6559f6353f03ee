//! Flexibility indices of a bivariate correlation model.
//!
//! For an [`IndexTriple`] `(i, k, j)` both indices compare the marginal
//! correlation `R_ii` with the entry `R_kj`:
//!
//! * `D = sup_{t > 0} |R_ii(t) - R_kj(t)|`
//! * `D-tilde = |∫_0^∞ (R_ii(t) - R_kj(t)) dt|`
//!
//! Each index has a closed form for the models where one is known and a
//! numerical route (grid search plus golden-section refinement for `D`,
//! adaptive quadrature for `D-tilde`) that works for every model.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::models::{BivariateMaternModel, BivariateModel, Component, CrossCorrelation, LmcModel};
use crate::optimize::golden_section_max;
use crate::quadrature::{integrate, QuadLimits};
use crate::specfun::gamma;

/// `(i, k, j)`: the index compares `R_ii` against `R_kj`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IndexTriple {
    pub i: Component,
    pub k: Component,
    pub j: Component,
}

impl IndexTriple {
    pub fn new(i: usize, k: usize, j: usize) -> Result<Self> {
        Ok(Self { i: Component::try_from(i)?, k: Component::try_from(k)?, j: Component::try_from(j)? })
    }

    /// `R_11` against `R_22`.
    pub const MARGINALS: Self = Self { i: Component::One, k: Component::Two, j: Component::Two };

    /// The triple with the two compared entries swapped where that is
    /// again of the form `(i, k, j)`: `(i,j,j) <-> (j,i,i)` and
    /// `(i,j,i) <-> (i,i,j)`.
    pub fn mirrored(self) -> Self {
        let Self { i, k, j } = self;
        if k == j && i != j {
            Self { i: j, k: i, j: i }
        } else if k != j && i == j {
            Self { i, k: i, j: k }
        } else if k != j && i == k {
            Self { i, k: j, j: i }
        } else {
            self
        }
    }

    /// True when both sides are the same entry.
    pub fn is_trivial(self) -> bool {
        self.k == self.i && self.j == self.i
    }

    /// Triple compares the two marginals.
    pub fn is_marginal_pair(self) -> bool {
        self.k == self.j && self.i != self.j
    }

    /// `R_ii(t) - R_kj(t)`.
    pub fn difference<M: CrossCorrelation + ?Sized>(&self, model: &M, t: f64) -> f64 {
        model.correlation(self.i, self.i, t) - model.correlation(self.k, self.j, t)
    }
}

impl fmt::Display for IndexTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.i, self.k, self.j)
    }
}

impl FromStr for IndexTriple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let parse = |p: &str| {
            p.parse::<usize>().map_err(|_| Error::Domain(format!("bad index triple component {p:?}")))
        };
        match parts.as_slice() {
            [i, k, j] => Self::new(parse(i)?, parse(k)?, parse(j)?),
            _ => domain(format!("index triple must look like i,k,j, got {s:?}")),
        }
    }
}

impl Serialize for IndexTriple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Which case of the piecewise solution produced a [`GSolution`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GBranch {
    /// `a = b`.
    EqualRates,
    /// `b < a`; maximum is the larger of `-f(t*)` and `1 - ρ`.
    BLessA,
    /// `b > a`, `log ρ + log(b/a) > 0`; maximum at the stationary point.
    Interior,
    /// Maximum `1 - ρ` at the origin (`ρ <= 0`, or `b > a` with `log ρ + log(b/a) <= 0`).
    Boundary,
}

/// `G(a, b, ρ) = max_{t >= 0} |e^{-at} - ρ e^{-bt}|` with its maximizer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GSolution {
    pub value: f64,
    pub argmax_t: f64,
    pub branch: GBranch,
}

/// `f(t, a, b, ρ) = e^{-at} - ρ e^{-bt}`.
pub fn g_objective(t: f64, a: f64, b: f64, rho: f64) -> f64 {
    (-a * t).exp() - rho * (-b * t).exp()
}

/// Closed-form `G(a, b, ρ)`.
pub fn g_closed(a: f64, b: f64, rho: f64) -> Result<GSolution> {
    if !(a > 0.0 && a.is_finite() && b > 0.0 && b.is_finite()) {
        return domain(format!("G needs positive rates, got a = {a}, b = {b}"));
    }
    if !(-1.0..=1.0).contains(&rho) {
        return domain(format!("G needs rho in [-1, 1], got {rho}"));
    }
    let at_origin = 1.0 - rho;
    let origin = |branch| GSolution { value: at_origin, argmax_t: 0.0, branch };
    if rho <= 0.0 {
        return Ok(origin(GBranch::Boundary));
    }
    if a == b {
        return Ok(origin(GBranch::EqualRates));
    }
    // log ρ + log(b/a), with log(b/a) = log1p((b-a)/a) for nearby rates
    let slope = rho.ln() + ((b - a) / a).ln_1p();
    let t_star = slope / (b - a);
    if b < a {
        let dip = -g_objective(t_star, a, b, rho);
        return Ok(if dip > at_origin {
            GSolution { value: dip, argmax_t: t_star, branch: GBranch::BLessA }
        } else {
            GSolution { value: at_origin, argmax_t: 0.0, branch: GBranch::BLessA }
        });
    }
    if slope > 0.0 {
        Ok(GSolution { value: g_objective(t_star, a, b, rho), argmax_t: t_star, branch: GBranch::Interior })
    } else {
        Ok(origin(GBranch::Boundary))
    }
}

/// Grid settings for [`d_index_numeric`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericGrid {
    /// Search horizon; `None` means `50 / (smallest rate in the model)`.
    pub t_max: Option<f64>,
    pub n_points: usize,
    /// Golden-section bracket width in `t`.
    pub refine_tol: f64,
}

impl Default for NumericGrid {
    fn default() -> Self {
        Self { t_max: None, n_points: 100_000, refine_tol: 1e-10 }
    }
}

/// Numeric `D` with the lag at which it is attained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NumericMax {
    pub value: f64,
    pub argmax_t: f64,
}

/// `D` by grid search over `[0, t_max]` with golden-section refinement.
///
/// `t = 0` stands for the `t -> 0+` limit, which is part of the supremum.
pub fn d_index_numeric<M: CrossCorrelation + ?Sized>(
    model: &M,
    triple: IndexTriple,
    grid: NumericGrid,
) -> Result<f64> {
    d_index_numeric_detail(model, triple, grid).map(|m| m.value)
}

pub fn d_index_numeric_detail<M: CrossCorrelation + ?Sized>(
    model: &M,
    triple: IndexTriple,
    grid: NumericGrid,
) -> Result<NumericMax> {
    let t_max = grid.t_max.unwrap_or(50.0 / model.min_rate());
    if !(t_max > 0.0 && t_max.is_finite()) {
        return domain(format!("t_max must be positive and finite, got {t_max}"));
    }
    if grid.n_points < 2 {
        return domain(format!("grid needs at least 2 points, got {}", grid.n_points));
    }
    if !(grid.refine_tol > 0.0) {
        return domain(format!("refine_tol must be positive, got {}", grid.refine_tol));
    }
    let gap = |t: f64| triple.difference(model, t).abs();
    let h = t_max / (grid.n_points - 1) as f64;
    let (mut best_k, mut best) = (0usize, gap(0.0));
    for k in 1..grid.n_points {
        let v = gap(k as f64 * h);
        if v > best {
            best = v;
            best_k = k;
        }
    }
    let centre = best_k as f64 * h;
    let lo = (centre - h).max(0.0);
    let hi = (centre + h).min(t_max);
    let (t_ref, v_ref) = golden_section_max(gap, lo, hi, grid.refine_tol);
    Ok(if v_ref > best {
        NumericMax { value: v_ref, argmax_t: t_ref }
    } else {
        NumericMax { value: best, argmax_t: centre }
    })
}

/// Closed-form `D`.
///
/// * bivariate exponential (all `ν = 1/2`), any triple: `G(α_ii, α_kj, ρ_kj)`;
/// * LMC with exponential latents, marginal triples `(1,2,2)`/`(2,1,1)`:
///   `|a11² - a21²| G(α, β, 1)`, which is `|2a² - 1| G(α, β, 1) = √(1-ρ12²) G(α, β, 1)`
///   in the constrained case.
///
/// Everything else is [`Error::Unsupported`].
pub fn d_index_closed(model: &BivariateModel, triple: IndexTriple) -> Result<f64> {
    match model {
        BivariateModel::Matern(m) => d_closed_exponential(m, triple),
        BivariateModel::Lmc(m) => d_closed_lmc(m, triple),
    }
}

fn d_closed_exponential(m: &BivariateMaternModel, triple: IndexTriple) -> Result<f64> {
    if !m.is_exponential() {
        return Err(Error::Unsupported("closed-form D needs all smoothness parameters equal to 1/2".into()));
    }
    let a = m.kernel(triple.i, triple.i).rate();
    let b = m.kernel(triple.k, triple.j).rate();
    let rho = if triple.k == triple.j { 1.0 } else { m.rho12() };
    Ok(g_closed(a, b, rho)?.value)
}

fn d_closed_lmc(m: &LmcModel, triple: IndexTriple) -> Result<f64> {
    let [r1, r2] = m.latents();
    if !(r1.is_exponential() && r2.is_exponential()) {
        return Err(Error::Unsupported("closed-form D for the LMC needs exponential latents".into()));
    }
    if triple.is_trivial() {
        return Ok(0.0);
    }
    if !triple.is_marginal_pair() {
        return Err(Error::Unsupported(format!(
            "closed-form D for the LMC covers the marginal triples (1,2,2) and (2,1,1), got ({triple})"
        )));
    }
    let k = g_closed(r1.rate(), r2.rate(), 1.0)?.value;
    Ok(k * lmc_marginal_weight(m))
}

/// `|a11² - a21²|`, the common factor of `R_11 - R_22 = (a11² - a21²)(R_1 - R_2)`.
fn lmc_marginal_weight(m: &LmcModel) -> f64 {
    match m.constrained_a() {
        Some(a) => (2.0 * a * a - 1.0).abs(),
        None => {
            let a = m.loadings();
            (a[0][0] * a[0][0] - a[1][0] * a[1][0]).abs()
        }
    }
}

/// Quadrature settings for [`dtilde_numeric`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSettings {
    /// Upper integration limit; `None` means `100 / (smallest rate in the model)`.
    pub t_max: Option<f64>,
    pub abs_tol: f64,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self { t_max: None, abs_tol: 1e-10 }
    }
}

/// `D-tilde` by adaptive quadrature of `R_ii - R_kj` over `[0, t_max]`.
/// The absolute value is applied to the integral, not the integrand.
pub fn dtilde_numeric<M: CrossCorrelation + ?Sized>(
    model: &M,
    triple: IndexTriple,
    quad: QuadratureSettings,
) -> Result<f64> {
    let t_max = quad.t_max.unwrap_or(100.0 / model.min_rate());
    if !(t_max > 0.0 && t_max.is_finite()) {
        return domain(format!("t_max must be positive and finite, got {t_max}"));
    }
    let limits = QuadLimits { abs_tol: quad.abs_tol, ..QuadLimits::default() };
    let r = integrate(|t| triple.difference(model, t), 0.0, t_max, limits)?;
    Ok(r.value.abs())
}

/// Closed-form `D-tilde`.
///
/// The integral is linear in the model entries, so every triple has a
/// closed form built from [`integral_matern`]:
///
/// * bivariate exponential: `|1/α_ii - ρ_kj/α_kj|`, e.g. `|1/α11 - ρ12/α12|` for `(1,1,2)`;
/// * bivariate Matérn: `|√π (Γ(ν_ii+½)/(α_ii Γ(ν_ii)) - ρ_kj Γ(ν_kj+½)/(α_kj Γ(ν_kj)))|`;
/// * LMC: `|Σ_m (a_im² - a_km a_jm) I_m|` with `I_m = ∫ R_m`; for the
///   constrained model with exponential latents and triple `(1,2,2)` this is
///   `√(1-ρ12²) |1/α - 1/β|`.
pub fn dtilde_closed(model: &BivariateModel, triple: IndexTriple) -> Result<f64> {
    match model {
        BivariateModel::Matern(m) if m.is_exponential() => Ok(dtilde_exponential_form(m, triple)),
        BivariateModel::Matern(m) => dtilde_matern_form(m, triple),
        BivariateModel::Lmc(m) => dtilde_lmc_form(m, triple),
    }
}

fn rho_of(m: &BivariateMaternModel, k: Component, j: Component) -> f64 {
    if k == j {
        1.0
    } else {
        m.rho12()
    }
}

/// `|1/α_ii - ρ_kj/α_kj|`, valid when both entries are exponential.
pub fn dtilde_exponential_form(m: &BivariateMaternModel, triple: IndexTriple) -> f64 {
    let a = m.kernel(triple.i, triple.i).rate();
    let b = m.kernel(triple.k, triple.j).rate();
    (1.0 / a - rho_of(m, triple.k, triple.j) / b).abs()
}

/// Gamma-ratio form; reduces to [`dtilde_exponential_form`] at `ν = 1/2`.
pub fn dtilde_matern_form(m: &BivariateMaternModel, triple: IndexTriple) -> Result<f64> {
    let lhs = m.kernel(triple.i, triple.i);
    let rhs = m.kernel(triple.k, triple.j);
    let gamma_ratio = |nu: f64| -> Result<f64> { Ok(gamma(nu + 0.5)? / gamma(nu)?) };
    let left = gamma_ratio(lhs.effective_smoothness())? / lhs.rate();
    let right = rho_of(m, triple.k, triple.j) * gamma_ratio(rhs.effective_smoothness())? / rhs.rate();
    Ok((PI.sqrt() * (left - right)).abs())
}

fn dtilde_lmc_form(m: &LmcModel, triple: IndexTriple) -> Result<f64> {
    if triple.is_trivial() {
        return Ok(0.0);
    }
    let [r1, r2] = m.latents();
    let integrals = [
        integral_matern(r1.rate(), r1.effective_smoothness())?,
        integral_matern(r2.rate(), r2.effective_smoothness())?,
    ];
    if triple.is_marginal_pair() {
        return Ok(lmc_marginal_weight(m) * (integrals[0] - integrals[1]).abs());
    }
    let a = m.loadings();
    let (i, k, j) = (triple.i.index(), triple.k.index(), triple.j.index());
    let total: f64 = (0..2).map(|l| (a[i][l] * a[i][l] - a[k][l] * a[j][l]) * integrals[l]).sum();
    Ok(total.abs())
}

/// `∫_0^∞ M(t; α, ν) dt = √π Γ(ν+½) / (α Γ(ν))` for the normalized Matérn.
pub fn integral_matern(alpha: f64, nu: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return domain(format!("rate must be positive, got {alpha}"));
    }
    if !(nu > 0.0 && nu <= 10.0) {
        return domain(format!("smoothness must lie in (0, 10], got {nu}"));
    }
    Ok(PI.sqrt() * gamma(nu + 0.5)? / (alpha * gamma(nu)?))
}

pub(crate) fn integral_matern_unchecked(alpha: f64, nu: f64) -> f64 {
    integral_matern(alpha, nu).unwrap_or(f64::NAN)
}
