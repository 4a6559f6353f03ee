//! JSON model descriptors.
//!
//! ```json
//! { "type": "bivariate_matern", "sigma2": [1, 1], "rho12": 0.5, "alpha": [5, 5, 4], "nu": [0.5, 0.5, 0.5] }
//! { "type": "lmc", "A": [[0.6, 0.8], [0.8, 0.6]], "latents": [{"kind": "exponential", "rate": 1}, {"kind": "matern", "rate": 2, "nu": 1.5}] }
//! { "type": "lmc_constrained", "a": 0.9, "latents": [ ... ] }
//! ```

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::models::{BivariateMaternModel, BivariateModel, LmcModel, UnivariateCorrelation};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum LatentDescriptor {
    Exponential { rate: f64 },
    Matern { rate: f64, nu: f64 },
}

impl LatentDescriptor {
    pub fn into_correlation(self) -> Result<UnivariateCorrelation> {
        match self {
            Self::Exponential { rate } => UnivariateCorrelation::exponential(rate),
            Self::Matern { rate, nu } => UnivariateCorrelation::matern(rate, nu),
        }
    }
}

impl From<UnivariateCorrelation> for LatentDescriptor {
    fn from(c: UnivariateCorrelation) -> Self {
        match c {
            UnivariateCorrelation::Exponential { rate } => Self::Exponential { rate },
            UnivariateCorrelation::Matern { rate, nu } => Self::Matern { rate, nu },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelDescriptor {
    BivariateMatern {
        sigma2: [f64; 2],
        rho12: f64,
        alpha: [f64; 3],
        nu: [f64; 3],
    },
    Lmc {
        #[serde(rename = "A")]
        a: [[f64; 2]; 2],
        latents: [LatentDescriptor; 2],
    },
    LmcConstrained {
        a: f64,
        latents: [LatentDescriptor; 2],
    },
}

impl ModelDescriptor {
    /// Validates the parameters and builds the model.
    pub fn into_model(self) -> Result<BivariateModel> {
        Ok(match self {
            Self::BivariateMatern { sigma2, rho12, alpha, nu } => {
                BivariateMaternModel::new(sigma2, rho12, alpha, nu)?.into()
            }
            Self::Lmc { a, latents: [l1, l2] } => {
                LmcModel::new(a, [l1.into_correlation()?, l2.into_correlation()?])?.into()
            }
            Self::LmcConstrained { a, latents: [l1, l2] } => {
                LmcModel::constrained(a, l1.into_correlation()?, l2.into_correlation()?)?.into()
            }
        })
    }
}

impl From<&BivariateModel> for ModelDescriptor {
    fn from(m: &BivariateModel) -> Self {
        match m {
            BivariateModel::Matern(m) => {
                Self::BivariateMatern { sigma2: m.sigma2(), rho12: m.rho12(), alpha: m.alpha(), nu: m.nu() }
            }
            BivariateModel::Lmc(m) => {
                let [l1, l2] = m.latents();
                let latents = [l1.into(), l2.into()];
                match m.constrained_a() {
                    Some(a) => Self::LmcConstrained { a, latents },
                    None => Self::Lmc { a: m.loadings(), latents },
                }
            }
        }
    }
}
