//! Site configurations in R^d, d in {1, 2, 3}.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// A non-empty set of sites stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    dim: usize,
    coords: Vec<f64>,
}

impl PointSet {
    pub const MAX_DIM: usize = 3;

    pub fn new(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if !(1..=Self::MAX_DIM).contains(&dim) {
            return Err(Error::Dimension(format!("dimension must be 1, 2 or 3, got {dim}")));
        }
        if coords.is_empty() {
            return Err(Error::Dimension("empty point set".into()));
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(Error::Dimension(format!(
                "{} coordinates do not split into points of dimension {dim}",
                coords.len()
            )));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::Domain("point coordinates must be finite".into()));
        }
        Ok(Self { dim, coords })
    }

    pub fn from_points<P: AsRef<[f64]>>(points: &[P]) -> Result<Self> {
        let first = points.first().ok_or_else(|| Error::Dimension("empty point set".into()))?;
        let dim = first.as_ref().len();
        if points.iter().any(|p| p.as_ref().len() != dim) {
            return Err(Error::Dimension("points have mixed dimensions".into()));
        }
        Self::new(dim, points.iter().flat_map(|p| p.as_ref().iter().copied()).collect())
    }

    /// `n` equally spaced points on `[lo, hi]` in d = 1.
    pub fn grid_1d(n: usize, lo: f64, hi: f64) -> Result<Self> {
        let coords = match n {
            0 => Vec::new(),
            1 => vec![lo],
            _ => {
                let step = (hi - lo) / (n - 1) as f64;
                (0..n).map(|k| lo + k as f64 * step).collect()
            }
        };
        Self::new(1, coords)
    }

    /// Regular `side^dim` lattice on `[0, extent]^dim`.
    pub fn lattice(side: usize, dim: usize, extent: f64) -> Result<Self> {
        let axis: Vec<f64> = match side {
            0 => Vec::new(),
            1 => vec![0.0],
            _ => (0..side).map(|k| extent * k as f64 / (side - 1) as f64).collect(),
        };
        let n = side.pow(dim as u32);
        let mut coords = Vec::with_capacity(n * dim);
        for idx in 0..n {
            let mut rem = idx;
            for _ in 0..dim {
                coords.push(axis[rem % side]);
                rem /= side;
            }
        }
        Self::new(dim, coords)
    }

    /// `n` points drawn uniformly on `[0, extent]^dim` from a seeded ChaCha8 stream.
    pub fn uniform(n: usize, dim: usize, extent: f64, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coords = (0..n * dim).map(|_| rng.random::<f64>() * extent).collect();
        Self::new(dim, coords)
    }

    /// Same sites with extra zero coordinates appended up to `dim`.
    pub fn embed(&self, dim: usize) -> Result<Self> {
        if dim < self.dim {
            return Err(Error::Dimension(format!("cannot embed d = {} into d = {dim}", self.dim)));
        }
        let mut coords = Vec::with_capacity(self.len() * dim);
        for p in self.iter() {
            coords.extend_from_slice(p);
            coords.extend(std::iter::repeat_n(0.0, dim - self.dim));
        }
        Self::new(dim, coords)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.dim)
    }

    /// Euclidean distance between sites `i` and `j`.
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.point(i).iter().zip(self.point(j)).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_sets() {
        assert!(matches!(PointSet::new(2, vec![]), Err(Error::Dimension(_))));
        assert!(matches!(PointSet::new(4, vec![0.0; 4]), Err(Error::Dimension(_))));
        assert!(matches!(PointSet::new(2, vec![0.0; 3]), Err(Error::Dimension(_))));
        assert!(matches!(PointSet::new(1, vec![f64::NAN]), Err(Error::Domain(_))));
        assert!(PointSet::from_points(&[vec![0.0, 1.0], vec![2.0]]).is_err());
        let empty: [[f64; 2]; 0] = [];
        assert!(PointSet::from_points(&empty).is_err());
    }

    #[test]
    fn grid_and_lattice() {
        let g = PointSet::grid_1d(5, 0.0, 2.0).unwrap();
        assert_eq!(g.len(), 5);
        assert_eq!(g.point(4), &[2.0]);
        assert_eq!(g.distance(0, 3), 1.5);
        let l = PointSet::lattice(3, 2, 1.0).unwrap();
        assert_eq!(l.len(), 9);
        assert_eq!(l.distance(0, 8), 2f64.sqrt());
    }

    #[test]
    fn uniform_is_seeded() {
        let a = PointSet::uniform(10, 2, 3.0, 99).unwrap();
        let b = PointSet::uniform(10, 2, 3.0, 99).unwrap();
        let c = PointSet::uniform(10, 2, 3.0, 100).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(a.iter().flatten().all(|&x| (0.0..3.0).contains(&x)));
    }

    #[test]
    fn embedding_preserves_distances() {
        let g = PointSet::grid_1d(4, 0.0, 1.0).unwrap();
        let e = g.embed(3).unwrap();
        assert_eq!(e.dim(), 3);
        assert_eq!(e.distance(1, 3), g.distance(1, 3));
    }
}
