//! Elements of cyclotomic fields Q(ζ_n).
//!
//! A value is stored as `Σ c_a ζ_n^a` with `n` coefficients, i.e. modulo
//! `x^n - 1`. Arithmetic works directly on that representation; equality,
//! zero tests and inversion reduce modulo the n-th cyclotomic polynomial,
//! which makes them exact. Operands of different orders are lifted to the
//! least common multiple.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::{self, cyclotomic};
use super::rational::{format_rational, int, parse_rational, to_f64, Rational};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct Cyc {
    order: usize,
    coeffs: Vec<Rational>,
}

impl Cyc {
    pub fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    pub fn rational(q: Rational) -> Self {
        Cyc { order: 1, coeffs: vec![q] }
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(int(n))
    }

    /// ζ_n^k for any integer k.
    pub fn root_of_unity(n: usize, k: i64) -> Self {
        assert!(n >= 1, "root of unity of order 0");
        let mut coeffs = vec![Rational::zero(); n];
        coeffs[k.rem_euclid(n as i64) as usize] = Rational::one();
        Cyc { order: n, coeffs }
    }

    /// Builds `Σ coeffs[a] ζ_n^a` where `n = coeffs.len()`.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Parse("cyclotomic value needs at least one coefficient".into()));
        }
        Ok(Cyc { order: coeffs.len(), coeffs })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// The same value written over ζ_m, for m a multiple of the order.
    pub fn lift(&self, m: usize) -> Cyc {
        assert!(m.is_multiple_of(self.order), "cannot lift order {} to {m}", self.order);
        if m == self.order {
            return self.clone();
        }
        let step = m / self.order;
        let mut coeffs = vec![Rational::zero(); m];
        for (a, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[a * step] = c.clone();
            }
        }
        Cyc { order: m, coeffs }
    }

    fn common(&self, other: &Cyc) -> (Cyc, Cyc) {
        let m = self.order.lcm(&other.order);
        (self.lift(m), other.lift(m))
    }

    /// Coefficients modulo Φ_n in the power basis 1, ζ, …, ζ^{φ(n)-1}.
    pub fn reduced(&self) -> Vec<Rational> {
        let m = cyclotomic(self.order);
        let dm = m.len() - 1;
        let (mut p, d) = integer_form(&self.coeffs);
        for top in (dm..p.len()).rev() {
            if p[top].is_zero() {
                continue;
            }
            let coef = std::mem::take(&mut p[top]);
            for (i, &c) in m.iter().enumerate().take(dm) {
                if c != 0 {
                    p[top - dm + i] -= &coef * c;
                }
            }
        }
        p.truncate(dm);
        p.into_iter().map(|c| if c.is_zero() { Rational::zero() } else { Rational::new(c, d.clone()) }).collect()
    }

    pub fn is_zero(&self) -> bool {
        if self.coeffs.iter().all(Zero::is_zero) {
            return true;
        }
        self.reduced().iter().all(Zero::is_zero)
    }

    /// `Some(q)` when the value is the rational number q.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.order == 1 {
            return Some(self.coeffs[0].clone());
        }
        let red = self.reduced();
        if red.iter().skip(1).all(Zero::is_zero) {
            Some(red.first().cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    pub fn conj(&self) -> Cyc {
        let n = self.order;
        let mut coeffs = vec![Rational::zero(); n];
        for (a, c) in self.coeffs.iter().enumerate() {
            coeffs[(n - a) % n] = c.clone();
        }
        Cyc { order: n, coeffs }
    }

    pub fn scale(&self, q: &Rational) -> Cyc {
        Cyc { order: self.order, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    pub fn inv(&self) -> Result<Cyc> {
        let n = self.order;
        let red = self.reduced();
        if red.iter().all(Zero::is_zero) {
            return Err(Error::DivisionByZero);
        }
        let m: poly::Poly = cyclotomic(n).into_iter().map(int).collect();
        let inv = poly::inverse_mod(&red, &m).ok_or(Error::DivisionByZero)?;
        let mut coeffs = vec![Rational::zero(); n];
        for (i, c) in inv.into_iter().enumerate() {
            coeffs[i] = c;
        }
        Ok(Cyc { order: n, coeffs })
    }

    pub fn pow(&self, mut e: u64) -> Cyc {
        let mut base = self.clone();
        let mut acc = Cyc::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn to_complex(&self) -> Complex64 {
        let n = self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(a, c)| Complex64::from_polar(to_f64(c), std::f64::consts::TAU * a as f64 / n))
            .sum()
    }

    /// Canonical representative: order 1 when rational, otherwise the
    /// reduced coefficients padded to the stored order.
    pub fn canonical(&self) -> Cyc {
        if let Some(q) = self.as_rational() {
            return Cyc::rational(q);
        }
        let mut coeffs = self.reduced();
        coeffs.resize(self.order, Rational::zero());
        Cyc { order: self.order, coeffs }
    }
}

impl PartialEq for Cyc {
    fn eq(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }
}

impl Eq for Cyc {}

impl Default for Cyc {
    fn default() -> Self {
        Cyc::zero()
    }
}

impl From<Rational> for Cyc {
    fn from(q: Rational) -> Self {
        Cyc::rational(q)
    }
}

impl From<i64> for Cyc {
    fn from(n: i64) -> Self {
        Cyc::integer(n)
    }
}

impl<'a> Add<&'a Cyc> for &'a Cyc {
    type Output = Cyc;
    fn add(self, rhs: &Cyc) -> Cyc {
        let (mut a, b) = self.common(rhs);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs) {
            *x += y;
        }
        a
    }
}

impl<'a> Sub<&'a Cyc> for &'a Cyc {
    type Output = Cyc;
    fn sub(self, rhs: &Cyc) -> Cyc {
        let (mut a, b) = self.common(rhs);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs) {
            *x -= y;
        }
        a
    }
}

/// Numerators over the lcm of the denominators.
fn integer_form(coeffs: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let d = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let nums = coeffs.iter().map(|c| c.numer() * (&d / c.denom())).collect();
    (nums, d)
}

impl<'a> Mul<&'a Cyc> for &'a Cyc {
    type Output = Cyc;
    fn mul(self, rhs: &Cyc) -> Cyc {
        if self.order == 1 {
            return rhs.scale(&self.coeffs[0]);
        }
        if rhs.order == 1 {
            return self.scale(&rhs.coeffs[0]);
        }
        let (a, b) = self.common(rhs);
        let n = a.order;
        // convolve integer numerators over a common denominator, normalizing once
        let (na, da) = integer_form(&a.coeffs);
        let (nb, db) = integer_form(&b.coeffs);
        let mut acc = vec![BigInt::zero(); n];
        for (i, x) in na.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in nb.iter().enumerate() {
                if !y.is_zero() {
                    acc[(i + j) % n] += x * y;
                }
            }
        }
        let d = da * db;
        let coeffs =
            acc.into_iter().map(|c| if c.is_zero() { Rational::zero() } else { Rational::new(c, d.clone()) }).collect();
        Cyc { order: n, coeffs }
    }
}

impl Neg for &Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        Cyc { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyc> for Cyc {
            type Output = Cyc;
            fn $m(self, rhs: Cyc) -> Cyc {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        -&self
    }
}

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.canonical();
        if c.order == 1 {
            return write!(f, "{}", format_rational(&c.coeffs[0]));
        }
        let mut first = true;
        for (a, q) in c.coeffs.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match a {
                0 => write!(f, "{}", format_rational(q))?,
                _ => write!(f, "{}*z{}^{}", format_rational(q), c.order, a)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct CycRepr {
    order: usize,
    coeffs: Vec<String>,
}

impl Serialize for Cyc {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let c = self.canonical();
        CycRepr { order: c.order, coeffs: c.coeffs.iter().map(format_rational).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Full(CycRepr),
            Str(String),
            Int(i64),
        }
        match Raw::deserialize(d)? {
            Raw::Full(r) => {
                if r.order == 0 || r.coeffs.len() > r.order {
                    return Err(D::Error::custom(format!("order {} with {} coefficients", r.order, r.coeffs.len())));
                }
                let mut coeffs =
                    r.coeffs.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>().map_err(D::Error::custom)?;
                coeffs.resize(r.order, Rational::zero());
                Ok(Cyc { order: r.order, coeffs })
            }
            Raw::Str(s) => parse_rational(&s).map(Cyc::rational).map_err(D::Error::custom),
            Raw::Int(n) => Ok(Cyc::integer(n)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    fn z(n: usize, k: i64) -> Cyc {
        Cyc::root_of_unity(n, k)
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        assert_eq!(&z(4, 1) * &z(4, 1), Cyc::integer(-1));
    }

    #[test]
    fn geometric_sum_vanishes() {
        let s = (0..5).fold(Cyc::zero(), |acc, a| &acc + &z(5, a));
        assert!(s.is_zero());
        assert_eq!(s, Cyc::zero());
    }

    #[test]
    fn zeta6_plus_conjugate_is_one() {
        let a = z(6, 1);
        assert_eq!(&a + &a.conj(), Cyc::one());
    }

    #[test]
    fn mixed_orders_lift() {
        // ζ_4 · ζ_6 = ζ_12^5
        assert_eq!(&z(4, 1) * &z(6, 1), z(12, 5));
        // ζ_2 = -1 inside any even order
        assert_eq!(z(2, 1), z(8, 4));
        assert_eq!(z(3, 1).lift(6), z(6, 2));
    }

    #[test]
    fn inverse() {
        let a = &Cyc::integer(2) + &z(7, 3);
        let b = a.inv().unwrap();
        assert_eq!(&a * &b, Cyc::one());
        assert_eq!(Cyc::zero().inv().unwrap_err(), Error::DivisionByZero);
        let zero_in_disguise = (0..3).fold(Cyc::zero(), |acc, k| &acc + &z(3, k));
        assert_eq!(zero_in_disguise.inv().unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn sqrt3_from_zeta12() {
        let s = &z(12, 1) + &z(12, -1);
        assert_eq!(&s * &s, Cyc::integer(3));
        assert!(s.as_rational().is_none());
    }

    #[test]
    fn rationality_and_complex_value() {
        let c = &z(5, 1) + &z(5, 4);
        assert!(c.as_rational().is_none());
        assert!((c.to_complex().re - 2.0 * (std::f64::consts::TAU / 5.0).cos()).abs() < 1e-12);
        assert_eq!((&z(3, 1) + &z(3, 2)).as_rational(), Some(int(-1)));
    }

    #[test]
    fn serde_roundtrip_and_shorthand() {
        let a = &z(5, 2).scale(&rat(1, 3)) + &Cyc::integer(1);
        let js = serde_json::to_string(&a).unwrap();
        let b: Cyc = serde_json::from_str(&js).unwrap();
        assert_eq!(a, b);
        let half: Cyc = serde_json::from_str("\"1/2\"").unwrap();
        assert_eq!(half, Cyc::rational(rat(1, 2)));
        assert_eq!(serde_json::to_string(&half).unwrap(), r#"{"order":1,"coeffs":["1/2"]}"#);
        assert!(serde_json::from_str::<Cyc>(r#"{"order":0,"coeffs":[]}"#).is_err());
    }
}
