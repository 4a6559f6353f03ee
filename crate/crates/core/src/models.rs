//! Univariate correlation kernels and the two bivariate model families.
//!
//! All rates are inverse distances: the exponential kernel is `exp(-rate * t)`.

use std::fmt;

use nalgebra::DMatrix;

use crate::error::{domain, Error, Result};
use crate::points::PointSet;
use crate::specfun::matern_radial;

/// Isotropic univariate correlation `R(t)` with `R(0) = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UnivariateCorrelation {
    Exponential {
        rate: f64,
    },
    /// Normalized Matérn `(2^{1-nu}/Γ(nu)) (rate t)^nu 𝒦_nu(rate t)`.
    Matern {
        rate: f64,
        nu: f64,
    },
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        domain(format!("{name} must be positive and finite, got {v}"))
    }
}

impl UnivariateCorrelation {
    pub fn exponential(rate: f64) -> Result<Self> {
        check_positive("rate", rate)?;
        Ok(Self::Exponential { rate })
    }

    pub fn matern(rate: f64, nu: f64) -> Result<Self> {
        check_positive("rate", rate)?;
        check_positive("smoothness", nu)?;
        if nu > 10.0 {
            return domain(format!("Matérn smoothness above 10 is not supported, got {nu}"));
        }
        Ok(Self::Matern { rate, nu })
    }

    pub fn rate(&self) -> f64 {
        match *self {
            Self::Exponential { rate } | Self::Matern { rate, .. } => rate,
        }
    }

    /// Smoothness parameter; `None` for the exponential kernel.
    pub fn smoothness(&self) -> Option<f64> {
        match *self {
            Self::Exponential { .. } => None,
            Self::Matern { nu, .. } => Some(nu),
        }
    }

    /// Smoothness with the exponential kernel read as Matérn(1/2).
    pub fn effective_smoothness(&self) -> f64 {
        self.smoothness().unwrap_or(0.5)
    }

    pub fn is_exponential(&self) -> bool {
        self.effective_smoothness() == 0.5
    }

    /// `R(t)` for `t >= 0`; no argument check.
    #[inline]
    pub fn at(&self, t: f64) -> f64 {
        match *self {
            Self::Exponential { rate } => (-rate * t).exp(),
            Self::Matern { rate, nu } => matern_radial(nu, rate * t),
        }
    }

    /// `∫_0^∞ R(t) dt`.
    pub fn integral(&self) -> f64 {
        crate::flexibility::integral_matern_unchecked(self.rate(), self.effective_smoothness())
    }
}

/// Evaluates a univariate correlation at distance `t >= 0`.
pub fn eval_univariate(corr: &UnivariateCorrelation, t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return domain(format!("distance must be nonnegative, got {t}"));
    }
    Ok(corr.at(t))
}

/// Field component, 1 or 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Component {
    One,
    Two,
}

impl Component {
    pub fn index(self) -> usize {
        match self {
            Self::One => 0,
            Self::Two => 1,
        }
    }
}

impl TryFrom<usize> for Component {
    type Error = Error;

    fn try_from(i: usize) -> Result<Self> {
        match i {
            1 => Ok(Self::One),
            2 => Ok(Self::Two),
            other => Err(Error::Index(other)),
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index() + 1)
    }
}

/// A bivariate isotropic correlation structure `R_ij(t)`.
pub trait CrossCorrelation {
    /// `R_ij(t)` for `t >= 0`. Symmetric in `(i, j)`.
    fn correlation(&self, i: Component, j: Component, t: f64) -> f64;

    /// Colocated correlation `R_12(0)`.
    fn colocated(&self) -> f64 {
        self.correlation(Component::One, Component::Two, 0.0)
    }

    /// Marginal variances `(σ_1², σ_2²)`.
    fn variances(&self) -> [f64; 2];

    /// Smallest decay rate among all entries; sets numeric horizons.
    fn min_rate(&self) -> f64;
}

/// Bivariate Matérn model: `C_ij(t) = σ_i σ_j ρ_ij M(t; α_ij, ν_ij)` with `ρ_ii = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BivariateMaternModel {
    sigma2: [f64; 2],
    rho12: f64,
    alpha: [f64; 3],
    nu: [f64; 3],
}

impl BivariateMaternModel {
    /// `alpha = (α11, α22, α12)`, `nu = (ν11, ν22, ν12)`.
    pub fn new(sigma2: [f64; 2], rho12: f64, alpha: [f64; 3], nu: [f64; 3]) -> Result<Self> {
        for s in sigma2 {
            check_positive("variance", s)?;
        }
        if !(-1.0..=1.0).contains(&rho12) {
            return domain(format!("rho12 must lie in [-1, 1], got {rho12}"));
        }
        for a in alpha {
            check_positive("scale", a)?;
        }
        for v in nu {
            check_positive("smoothness", v)?;
            if v > 10.0 {
                return domain(format!("Matérn smoothness above 10 is not supported, got {v}"));
            }
        }
        Ok(Self { sigma2, rho12, alpha, nu })
    }

    /// The bivariate exponential model (all smoothness parameters 1/2) with unit variances.
    pub fn exponential(rho12: f64, alpha: [f64; 3]) -> Result<Self> {
        Self::new([1.0, 1.0], rho12, alpha, [0.5; 3])
    }

    pub fn with_rho12(&self, rho12: f64) -> Result<Self> {
        Self::new(self.sigma2, rho12, self.alpha, self.nu)
    }

    pub fn sigma2(&self) -> [f64; 2] {
        self.sigma2
    }

    pub fn rho12(&self) -> f64 {
        self.rho12
    }

    pub fn alpha(&self) -> [f64; 3] {
        self.alpha
    }

    pub fn nu(&self) -> [f64; 3] {
        self.nu
    }

    pub fn is_exponential(&self) -> bool {
        self.nu.iter().all(|&v| v == 0.5)
    }

    fn slot(i: Component, j: Component) -> usize {
        match (i, j) {
            (Component::One, Component::One) => 0,
            (Component::Two, Component::Two) => 1,
            _ => 2,
        }
    }

    /// The unit-variance kernel of entry `(i, j)`, without the `ρ` factor.
    pub fn kernel(&self, i: Component, j: Component) -> UnivariateCorrelation {
        let k = Self::slot(i, j);
        if self.nu[k] == 0.5 {
            UnivariateCorrelation::Exponential { rate: self.alpha[k] }
        } else {
            UnivariateCorrelation::Matern { rate: self.alpha[k], nu: self.nu[k] }
        }
    }
}

impl CrossCorrelation for BivariateMaternModel {
    fn correlation(&self, i: Component, j: Component, t: f64) -> f64 {
        let r = self.kernel(i, j).at(t);
        if i == j {
            r
        } else {
            self.rho12 * r
        }
    }

    fn colocated(&self) -> f64 {
        self.rho12
    }

    fn variances(&self) -> [f64; 2] {
        self.sigma2
    }

    fn min_rate(&self) -> f64 {
        self.alpha.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Which root of `2a√(1-a²) = ρ` to use when building a constrained LMC from `ρ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LmcRoot {
    /// `a = [(1 + √(1-ρ²))/2]^{1/2} >= 1/√2`
    #[default]
    Plus,
    /// `a = [(1 - √(1-ρ²))/2]^{1/2} <= 1/√2`
    Minus,
}

/// Linear model of coregionalization with unit marginal variances:
/// `R_11 = a11² R1 + a12² R2`, `R_22 = a21² R1 + a22² R2`,
/// `R_12 = a11 a21 R1 + a12 a22 R2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LmcModel {
    a: [[f64; 2]; 2],
    latents: [UnivariateCorrelation; 2],
    constrained_a: Option<f64>,
}

const LMC_TOL: f64 = 1e-12;

impl LmcModel {
    /// General LMC. Rows of `a` must have unit norm and `a` must have rank 2.
    pub fn new(a: [[f64; 2]; 2], latents: [UnivariateCorrelation; 2]) -> Result<Self> {
        if a.iter().flatten().any(|v| !v.is_finite()) {
            return domain("LMC loadings must be finite");
        }
        for (r, row) in a.iter().enumerate() {
            let norm = row[0] * row[0] + row[1] * row[1];
            if (norm - 1.0).abs() > LMC_TOL {
                return domain(format!(
                    "LMC row {} has squared norm {norm}; unit marginal variance needs 1",
                    r + 1
                ));
            }
        }
        let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
        if det.abs() <= LMC_TOL {
            return domain(format!("LMC loading matrix must have rank 2 (det = {det})"));
        }
        Ok(Self { a, latents, constrained_a: None })
    }

    /// The `a12 = a21` case, `A = [[a, √(1-a²)], [√(1-a²), a]]`.
    pub fn constrained(a: f64, r1: UnivariateCorrelation, r2: UnivariateCorrelation) -> Result<Self> {
        if !(0.0..=1.0).contains(&a) {
            return domain(format!("constrained LMC needs a in [0, 1], got {a}"));
        }
        let s = (1.0 - a * a).sqrt();
        Ok(Self { a: [[a, s], [s, a]], latents: [r1, r2], constrained_a: Some(a) })
    }

    /// Constrained LMC whose colocated coefficient equals `rho` in `[0, 1]`.
    pub fn constrained_from_rho(
        rho: f64,
        r1: UnivariateCorrelation,
        r2: UnivariateCorrelation,
        root: LmcRoot,
    ) -> Result<Self> {
        if !(0.0..=1.0).contains(&rho) {
            return domain(format!("constrained LMC needs rho12 in [0, 1], got {rho}"));
        }
        let disc = (1.0 - rho * rho).sqrt();
        let a = match root {
            LmcRoot::Plus => (0.5 * (1.0 + disc)).sqrt(),
            LmcRoot::Minus => (0.5 * (1.0 - disc)).sqrt(),
        };
        Self::constrained(a, r1, r2)
    }

    pub fn loadings(&self) -> [[f64; 2]; 2] {
        self.a
    }

    pub fn latents(&self) -> [UnivariateCorrelation; 2] {
        self.latents
    }

    pub fn constrained_a(&self) -> Option<f64> {
        self.constrained_a
    }
}

impl CrossCorrelation for LmcModel {
    fn correlation(&self, i: Component, j: Component, t: f64) -> f64 {
        let r1 = self.latents[0].at(t);
        let r2 = self.latents[1].at(t);
        if let Some(a) = self.constrained_a {
            let a2 = a * a;
            return match (i, j) {
                (Component::One, Component::One) => a2 * r1 + (1.0 - a2) * r2,
                (Component::Two, Component::Two) => (1.0 - a2) * r1 + a2 * r2,
                _ => a * (1.0 - a2).sqrt() * (r1 + r2),
            };
        }
        let (p, q) = (self.a[i.index()], self.a[j.index()]);
        p[0] * q[0] * r1 + p[1] * q[1] * r2
    }

    fn colocated(&self) -> f64 {
        match self.constrained_a {
            Some(a) => 2.0 * a * (1.0 - a * a).sqrt(),
            None => self.a[0][0] * self.a[1][0] + self.a[0][1] * self.a[1][1],
        }
    }

    fn variances(&self) -> [f64; 2] {
        [1.0, 1.0]
    }

    fn min_rate(&self) -> f64 {
        self.latents[0].rate().min(self.latents[1].rate())
    }
}

/// Either model family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BivariateModel {
    Matern(BivariateMaternModel),
    Lmc(LmcModel),
}

impl BivariateModel {
    pub fn type_name(&self) -> &'static str {
        match self {
            Self::Matern(_) => "bivariate_matern",
            Self::Lmc(m) if m.constrained_a().is_some() => "lmc_constrained",
            Self::Lmc(_) => "lmc",
        }
    }
}

impl From<BivariateMaternModel> for BivariateModel {
    fn from(m: BivariateMaternModel) -> Self {
        Self::Matern(m)
    }
}

impl From<LmcModel> for BivariateModel {
    fn from(m: LmcModel) -> Self {
        Self::Lmc(m)
    }
}

impl CrossCorrelation for BivariateModel {
    fn correlation(&self, i: Component, j: Component, t: f64) -> f64 {
        match self {
            Self::Matern(m) => m.correlation(i, j, t),
            Self::Lmc(m) => m.correlation(i, j, t),
        }
    }

    fn colocated(&self) -> f64 {
        match self {
            Self::Matern(m) => m.colocated(),
            Self::Lmc(m) => m.colocated(),
        }
    }

    fn variances(&self) -> [f64; 2] {
        match self {
            Self::Matern(m) => m.variances(),
            Self::Lmc(m) => m.variances(),
        }
    }

    fn min_rate(&self) -> f64 {
        match self {
            Self::Matern(m) => m.min_rate(),
            Self::Lmc(m) => m.min_rate(),
        }
    }
}

/// `R_ij(t)` with 1-based component indices.
pub fn eval_cross<M: CrossCorrelation + ?Sized>(model: &M, i: usize, j: usize, t: f64) -> Result<f64> {
    let (i, j) = (Component::try_from(i)?, Component::try_from(j)?);
    if !(t >= 0.0) {
        return domain(format!("distance must be nonnegative, got {t}"));
    }
    Ok(model.correlation(i, j, t))
}

pub fn build_constrained_lmc(
    a: f64,
    r1: UnivariateCorrelation,
    r2: UnivariateCorrelation,
) -> Result<LmcModel> {
    LmcModel::constrained(a, r1, r2)
}

pub fn colocated<M: CrossCorrelation + ?Sized>(model: &M) -> f64 {
    model.colocated()
}

/// The `2n x 2n` covariance of both components at all sites.
///
/// Rows `0..n` hold component 1, rows `n..2n` component 2. Only the upper
/// triangle is evaluated; the lower triangle is a copy, so the result is
/// exactly symmetric.
pub fn cross_covariance_matrix<M: CrossCorrelation + ?Sized>(
    model: &M,
    points: &PointSet,
    sigma2: [f64; 2],
) -> Result<DMatrix<f64>> {
    for s in sigma2 {
        check_positive("variance", s)?;
    }
    let n = points.len();
    if n == 0 {
        return Err(Error::Dimension("empty point set".into()));
    }
    let cross_scale = (sigma2[0] * sigma2[1]).sqrt();
    let mut c = DMatrix::<f64>::zeros(2 * n, 2 * n);
    for p in 0..n {
        for q in p..n {
            let t = points.distance(p, q);
            let c11 = sigma2[0] * model.correlation(Component::One, Component::One, t);
            let c22 = sigma2[1] * model.correlation(Component::Two, Component::Two, t);
            let c12 = cross_scale * model.correlation(Component::One, Component::Two, t);
            c[(p, q)] = c11;
            c[(q, p)] = c11;
            c[(n + p, n + q)] = c22;
            c[(n + q, n + p)] = c22;
            c[(p, n + q)] = c12;
            c[(n + q, p)] = c12;
            c[(q, n + p)] = c12;
            c[(n + p, q)] = c12;
        }
    }
    Ok(c)
}
