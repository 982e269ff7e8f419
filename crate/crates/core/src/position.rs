use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A candidate solution: one wolf's coordinates.
///
/// Always non-empty and finite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct PositionVector(Vec<f64>);

impl PositionVector {
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::EmptyPosition);
        }
        if let Some((index, &value)) = components.iter().enumerate().find(|(_, c)| !c.is_finite()) {
            return Err(Error::NonFiniteComponent { index, value });
        }
        Ok(Self(components))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl TryFrom<Vec<f64>> for PositionVector {
    type Error = Error;

    fn try_from(value: Vec<f64>) -> Result<Self> {
        Self::new(value)
    }
}

impl From<PositionVector> for Vec<f64> {
    fn from(p: PositionVector) -> Self {
        p.0
    }
}

impl AsRef<[f64]> for PositionVector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// Per-dimension box constraints with `lower[d] < upper[d]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                found: upper.len(),
            });
        }
        if lower.is_empty() {
            return Err(Error::EmptyPosition);
        }
        for (dim, (&lo, &hi)) in lower.iter().zip(&upper).enumerate() {
            // also rejects NaN
            if !lo.is_finite() || !hi.is_finite() || lo >= hi {
                return Err(Error::InvalidBounds { dim, lower: lo, upper: hi });
            }
        }
        Ok(Self { lower, upper })
    }

    /// The same interval on every dimension.
    pub fn uniform(dim: usize, lower: f64, upper: f64) -> Result<Self> {
        Self::new(vec![lower; dim], vec![upper; dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&c, (&lo, &hi))| lo <= c && c <= hi)
    }

    /// Clamps every component onto the nearer bound, in place.
    pub fn clamp_in_place(&self, x: &mut [f64]) {
        debug_assert_eq!(x.len(), self.dim());
        for (c, (&lo, &hi)) in x.iter_mut().zip(self.lower.iter().zip(&self.upper)) {
            // NaN-free input assumed; `clamp` keeps in-bounds values bit-identical.
            *c = c.clamp(lo, hi);
        }
    }
}

/// Clamps each out-of-range component to the nearer bound.
pub fn clamp_to_bounds(x: &PositionVector, bounds: &Bounds) -> Result<PositionVector> {
    if x.dim() != bounds.dim() {
        return Err(Error::DimensionMismatch {
            expected: bounds.dim(),
            found: x.dim(),
        });
    }
    let mut out = x.as_slice().to_vec();
    bounds.clamp_in_place(&mut out);
    Ok(PositionVector(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pv(v: &[f64]) -> PositionVector {
        PositionVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn clamp_examples() {
        let b = Bounds::uniform(2, -100.0, 100.0).unwrap();
        assert_eq!(clamp_to_bounds(&pv(&[150.0, 0.0]), &b).unwrap(), pv(&[100.0, 0.0]));
        assert_eq!(clamp_to_bounds(&pv(&[5.0, -5.0]), &b).unwrap(), pv(&[5.0, -5.0]));
        assert_eq!(clamp_to_bounds(&pv(&[-200.0, 200.0]), &b).unwrap(), pv(&[-100.0, 100.0]));
    }

    #[test]
    fn clamp_dimension_mismatch() {
        let b = Bounds::uniform(3, -1.0, 1.0).unwrap();
        assert_eq!(
            clamp_to_bounds(&pv(&[0.0, 0.0]), &b),
            Err(Error::DimensionMismatch { expected: 3, found: 2 })
        );
    }

    #[test]
    fn rejects_bad_vectors_and_bounds() {
        assert_eq!(PositionVector::new(vec![]), Err(Error::EmptyPosition));
        assert!(matches!(
            PositionVector::new(vec![1.0, f64::NAN]),
            Err(Error::NonFiniteComponent { index: 1, .. })
        ));
        assert!(PositionVector::new(vec![f64::INFINITY]).is_err());
        assert!(matches!(
            Bounds::new(vec![0.0, 1.0], vec![1.0, 1.0]),
            Err(Error::InvalidBounds { dim: 1, .. })
        ));
        assert!(Bounds::new(vec![0.0], vec![1.0, 2.0]).is_err());
    }

    proptest! {
        #[test]
        fn clamp_is_idempotent_and_contained(xs in prop::collection::vec(-1e6f64..1e6, 1..12)) {
            let b = Bounds::uniform(xs.len(), -100.0, 100.0).unwrap();
            let x = PositionVector::new(xs.clone()).unwrap();
            let once = clamp_to_bounds(&x, &b).unwrap();
            let twice = clamp_to_bounds(&once, &b).unwrap();
            prop_assert_eq!(&once, &twice);
            prop_assert!(b.contains(once.as_slice()));
            for (orig, c) in xs.iter().zip(once.as_slice()) {
                if (-100.0..=100.0).contains(orig) {
                    prop_assert_eq!(orig, c);
                }
            }
        }
    }
}
