use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::cyc::Cyc;
use super::matrix::Matrix;
use super::rational::{serde_rational, Rational};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// A matrix-valued function on a finite probability space: one matrix per
/// point, with positive rational weights summing to one.
#[derive(Clone, Debug)]
pub struct FnMatrix<S> {
    weights: Vec<Rational>,
    fibers: Vec<Matrix<S>>,
}

/// Checks that the weights are positive and sum to one.
pub fn validate_weights(weights: &[Rational]) -> Result<()> {
    if weights.is_empty() {
        return Err(Error::Parse("empty point set".into()));
    }
    if weights.iter().any(|w| !w.is_positive()) {
        return Err(Error::Parse("point weights must be positive".into()));
    }
    let total: Rational = weights.iter().sum();
    if !total.is_one() {
        return Err(Error::Parse(format!("point weights sum to {total}, not 1")));
    }
    Ok(())
}

impl<S: Scalar> FnMatrix<S> {
    pub fn new(weights: Vec<Rational>, fibers: Vec<Matrix<S>>) -> Result<Self> {
        validate_weights(&weights)?;
        if weights.len() != fibers.len() {
            return Err(Error::ShapeMismatch("one matrix per point required".into()));
        }
        let (r, c) = (fibers[0].rows(), fibers[0].cols());
        if fibers.iter().any(|f| f.rows() != r || f.cols() != c) {
            return Err(Error::ShapeMismatch("fibers differ in shape".into()));
        }
        Ok(FnMatrix { weights, fibers })
    }

    /// Constant function on a single point.
    pub fn constant(m: Matrix<S>) -> Self {
        FnMatrix { weights: vec![Rational::one()], fibers: vec![m] }
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn fibers(&self) -> &[Matrix<S>] {
        &self.fibers
    }

    /// `(tr ⊗ ∫_X)` of the function.
    pub fn integrate_ntrace(&self) -> S {
        self.weights
            .iter()
            .zip(&self.fibers)
            .fold(S::zero(), |acc, (w, m)| acc.add(&S::from_rational(w).mul(&m.ntrace())))
    }

    /// Pointwise product.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.weights != rhs.weights {
            return Err(Error::ShapeMismatch("functions on different point sets".into()));
        }
        let fibers = self.fibers.iter().zip(&rhs.fibers).map(|(a, b)| a.try_mul(b)).collect::<Result<_>>()?;
        Ok(FnMatrix { weights: self.weights.clone(), fibers })
    }

    pub fn to_float(&self) -> FnMatrix<num_complex::Complex64> {
        FnMatrix { weights: self.weights.clone(), fibers: self.fibers.iter().map(Matrix::to_float).collect() }
    }
}

#[derive(Serialize, Deserialize)]
struct PointRepr {
    #[serde(with = "serde_rational")]
    weight: Rational,
    matrix: Matrix<Cyc>,
}

#[derive(Serialize, Deserialize)]
struct FnMatrixRepr {
    points: Vec<PointRepr>,
}

impl Serialize for FnMatrix<Cyc> {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        FnMatrixRepr {
            points: self
                .weights
                .iter()
                .zip(&self.fibers)
                .map(|(w, m)| PointRepr { weight: w.clone(), matrix: m.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FnMatrix<Cyc> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = FnMatrixRepr::deserialize(d)?;
        let (weights, fibers) = repr.points.into_iter().map(|p| (p.weight, p.matrix)).unzip();
        FnMatrix::new(weights, fibers).map_err(serde::de::Error::custom)
    }
}

impl<S> FnMatrix<S> {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty() || self.weights.iter().all(Zero::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn integrates_weighted_traces() {
        let f =
            FnMatrix::new(vec![rat(1, 4), rat(3, 4)], vec![Matrix::<Cyc>::identity(2), Matrix::zeros(2, 2)]).unwrap();
        assert_eq!(f.integrate_ntrace(), Cyc::rational(rat(1, 4)));
        let js = serde_json::to_string(&f).unwrap();
        let back: FnMatrix<Cyc> = serde_json::from_str(&js).unwrap();
        assert_eq!(back.integrate_ntrace(), f.integrate_ntrace());
    }

    #[test]
    fn rejects_bad_weights() {
        let m = Matrix::<Cyc>::identity(1);
        assert!(FnMatrix::new(vec![rat(1, 2)], vec![m.clone()]).is_err());
        assert!(FnMatrix::new(vec![rat(3, 2), rat(-1, 2)], vec![m.clone(), m]).is_err());
    }
}
