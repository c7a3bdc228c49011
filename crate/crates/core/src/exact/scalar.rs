//! The scalar abstraction shared by exact and floating matrices.

use num_complex::Complex64;
use num_traits::Zero;
use serde_json::{json, Value};

use super::cyc::Cyc;
use super::rational::{to_f64, Rational};
use crate::error::{Error, Result};

/// Field operations plus the comparisons needed by the certification code.
///
/// Tolerance arguments are ignored by exact scalars.
pub trait Scalar: Clone + std::fmt::Debug + Send + Sync + 'static {
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_cyc(c: &Cyc) -> Self;
    fn from_rational(q: &Rational) -> Self {
        Self::from_cyc(&Cyc::rational(q.clone()))
    }
    fn root_of_unity(n: usize, k: i64) -> Self {
        Self::from_cyc(&Cyc::root_of_unity(n, k))
    }

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    fn inv(&self) -> Result<Self>;

    fn is_zero_tol(&self, tol: f64) -> bool;
    fn approx_eq(&self, rhs: &Self, tol: f64) -> bool {
        self.sub(rhs).is_zero_tol(tol)
    }
    fn magnitude(&self) -> f64;
    fn to_complex(&self) -> Complex64;

    /// The value as an integer, if it is one (within `tol` for floats).
    fn to_integer(&self, tol: f64) -> Option<i64>;

    fn to_json(&self) -> Value;
}

impl Scalar for Cyc {
    const EXACT: bool = true;

    fn zero() -> Self {
        Cyc::zero()
    }
    fn one() -> Self {
        Cyc::one()
    }
    fn from_cyc(c: &Cyc) -> Self {
        c.clone()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        Cyc::conj(self)
    }
    fn inv(&self) -> Result<Self> {
        Cyc::inv(self)
    }
    fn is_zero_tol(&self, _tol: f64) -> bool {
        self.is_zero()
    }
    fn approx_eq(&self, rhs: &Self, _tol: f64) -> bool {
        self == rhs
    }
    fn magnitude(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            self.to_complex().norm()
        }
    }
    fn to_complex(&self) -> Complex64 {
        Cyc::to_complex(self)
    }
    fn to_integer(&self, _tol: f64) -> Option<i64> {
        use num_traits::ToPrimitive;
        let q = self.as_rational()?;
        if q.is_integer() {
            q.to_integer().to_i64()
        } else {
            None
        }
    }
    fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("cyclotomic serialization")
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_cyc(c: &Cyc) -> Self {
        c.to_complex()
    }
    fn from_rational(q: &Rational) -> Self {
        Complex64::new(to_f64(q), 0.0)
    }
    fn root_of_unity(n: usize, k: i64) -> Self {
        let k = k.rem_euclid(n as i64);
        Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / n as f64)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(Error::DivisionByZero)
        } else {
            Ok(Complex64::inv(self))
        }
    }
    fn is_zero_tol(&self, tol: f64) -> bool {
        self.norm() <= tol
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
    fn to_integer(&self, tol: f64) -> Option<i64> {
        let r = self.re.round();
        if (self.re - r).abs() <= tol && self.im.abs() <= tol {
            Some(r as i64)
        } else {
            None
        }
    }
    fn to_json(&self) -> Value {
        json!({ "re": self.re, "im": self.im })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_roots_match_exact() {
        for n in 1..=12 {
            for k in -3..15 {
                let e = <Cyc as Scalar>::root_of_unity(n, k).to_complex();
                let f = <Complex64 as Scalar>::root_of_unity(n, k);
                assert!((e - f).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn integer_extraction() {
        assert_eq!(Cyc::integer(3).to_integer(0.0), Some(3));
        assert_eq!(Scalar::to_integer(&Cyc::root_of_unity(4, 2), 0.0), Some(-1));
        assert_eq!(Scalar::to_integer(&Cyc::root_of_unity(4, 1), 0.0), None);
        assert_eq!(Complex64::new(2.0 + 1e-12, 0.0).to_integer(1e-9), Some(2));
        assert_eq!(Complex64::new(2.5, 0.0).to_integer(1e-9), None);
    }
}
