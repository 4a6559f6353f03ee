//! Globally adaptive Gauss–Kronrod (7/15) quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{domain, Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
// Gauss weights at XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

/// Limits for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadLimits {
    /// Target bound on the summed error estimate.
    pub abs_tol: f64,
    /// Maximum bisection depth of any subinterval.
    pub max_depth: u32,
    /// Maximum number of live subintervals.
    pub max_intervals: usize,
}

impl Default for QuadLimits {
    fn default() -> Self {
        Self { abs_tol: 1e-10, max_depth: 60, max_intervals: 20_000 }
    }
}

/// Integral estimate with its error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_err: f64,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    err: f64,
    depth: u32,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err.total_cmp(&other.err) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn kronrod15<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, depth: u32) -> Segment {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for k in 0..7 {
        let dx = half * XGK[k];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[k] * pair;
        if k % 2 == 1 {
            gauss += WG[k / 2] * pair;
        }
    }
    Segment { lo, hi, value: kronrod * half, err: ((kronrod - gauss) * half).abs(), depth }
}

/// `∫_lo^hi f(t) dt`, bisecting the worst subinterval until the summed
/// error estimate drops below `limits.abs_tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, limits: QuadLimits) -> Result<QuadResult> {
    if !(lo.is_finite() && hi.is_finite()) || hi < lo {
        return domain(format!("integration bounds must be finite with lo <= hi, got [{lo}, {hi}]"));
    }
    if !(limits.abs_tol > 0.0) {
        return domain(format!("abs_tol must be positive, got {}", limits.abs_tol));
    }
    if lo == hi {
        return Ok(QuadResult { value: 0.0, abs_err: 0.0, intervals: 1 });
    }
    let mut heap = BinaryHeap::new();
    let first = kronrod15(&f, lo, hi, 0);
    let mut total_err = first.err;
    heap.push(first);
    while total_err > limits.abs_tol {
        if heap.len() >= limits.max_intervals {
            return Err(Error::NonConvergence(format!(
                "{} subintervals used, error estimate {total_err:e}",
                heap.len()
            )));
        }
        let worst = heap.pop().expect("heap is never empty");
        if worst.depth >= limits.max_depth {
            return Err(Error::NonConvergence(format!(
                "depth limit {} reached on [{}, {}], error estimate {total_err:e}",
                limits.max_depth, worst.lo, worst.hi
            )));
        }
        let mid = 0.5 * (worst.lo + worst.hi);
        let left = kronrod15(&f, worst.lo, mid, worst.depth + 1);
        let right = kronrod15(&f, mid, worst.hi, worst.depth + 1);
        if !(left.value.is_finite() && right.value.is_finite()) {
            return Err(Error::NonConvergence(format!(
                "non-finite integrand on [{}, {}]",
                worst.lo, worst.hi
            )));
        }
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
    }
    // resum to avoid drift from the running updates
    let intervals = heap.len();
    let (value, abs_err) = heap.into_iter().fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.err));
    Ok(QuadResult { value, abs_err, intervals })
}
