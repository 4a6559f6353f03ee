//! Output records. Each derives `Deserialize` with unknown fields denied so
//! emitted JSON can be checked against the same schema.

use bicov::format::sig10;
use bicov::validity::BoundCurve;
use bicov::{ComparisonRow, ModelDescriptor};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSetReport {
    pub point_set: String,
    pub n_points: usize,
    pub dimension: usize,
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
    pub psd: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValidateReport {
    pub model_type: String,
    pub model: ModelDescriptor,
    pub rho12: f64,
    /// `None` when no closed-form bound covers the model.
    pub closed_form_bound: Option<f64>,
    pub within_bound: Option<bool>,
    pub seed: u64,
    pub tolerance: f64,
    pub reports: Vec<PointSetReport>,
    pub psd: bool,
}

impl ValidateReport {
    pub fn to_csv(&self) -> String {
        let mut out = format!("# seed={}\n", self.seed);
        out.push_str("point_set,n_points,dimension,min_eigenvalue,max_eigenvalue,psd\n");
        for r in &self.reports {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.point_set,
                r.n_points,
                r.dimension,
                sig10(r.min_eigenvalue),
                sig10(r.max_eigenvalue),
                r.psd
            ));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundSample {
    pub alpha12: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundReport {
    pub alpha11: f64,
    pub alpha22: f64,
    pub samples: Vec<BoundSample>,
}

impl From<&BoundCurve> for BoundReport {
    fn from(c: &BoundCurve) -> Self {
        Self {
            alpha11: c.alpha11,
            alpha22: c.alpha22,
            samples: c.samples.iter().map(|&(alpha12, bound)| BoundSample { alpha12, bound }).collect(),
        }
    }
}

/// Result of `dindex` or `dtilde`. Absent fields were not requested.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndexReport {
    pub index: String,
    pub triple: String,
    pub closed: Option<f64>,
    pub numeric: Option<f64>,
    pub abs_diff: Option<f64>,
    /// Lag attaining the numeric supremum (`dindex` only).
    pub argmax_t: Option<f64>,
}

impl IndexReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("quantity,value\n");
        let fields = [
            ("closed", self.closed),
            ("numeric", self.numeric),
            ("abs_diff", self.abs_diff),
            ("argmax_t", self.argmax_t),
        ];
        for (name, v) in fields {
            if let Some(v) = v {
                out.push_str(&format!("{name},{}\n", sig10(v)));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompareRowReport {
    pub rho12: f64,
    pub d_lmc: f64,
    pub d_exp: f64,
    pub dtilde_lmc: f64,
    pub dtilde_exp: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompareReport {
    pub triple: String,
    pub root: String,
    pub rows: Vec<CompareRowReport>,
}

impl From<&ComparisonRow> for CompareRowReport {
    fn from(r: &ComparisonRow) -> Self {
        Self {
            rho12: r.rho12,
            d_lmc: r.d_lmc,
            d_exp: r.d_exp,
            dtilde_lmc: r.dtilde_lmc,
            dtilde_exp: r.dtilde_exp,
        }
    }
}
