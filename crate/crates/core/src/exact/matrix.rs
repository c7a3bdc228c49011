//! Dense matrices over a [`Scalar`]: products, adjoints, traces, rank, and
//! the spectral analysis of finite-order unitaries.

use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::cyc::Cyc;
use super::rational::{rat, Rational};
use super::scalar::Scalar;
use crate::error::{Error, Result};

pub type ExactMatrix = Matrix<Cyc>;
pub type FloatMatrix = Matrix<Complex64>;

/// Default floating tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn new(rows: usize, cols: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!("{rows}x{cols} matrix from {} entries", data.len())));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { S::one() } else { S::zero() })
    }

    pub fn diag(entries: &[S]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |r, c| if r == c { entries[r].clone() } else { S::zero() })
    }

    /// Single-entry matrix unit E_{r,c}.
    pub fn unit(n: usize, r: usize, c: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(r, c)] = S::one();
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn to_float(&self) -> FloatMatrix {
        self.map(|x| x.to_complex())
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!("{}x{} times {}x{}", self.rows, self.cols, rhs.rows, rhs.cols)));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero_tol(0.0) {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.data[k * rhs.cols + j];
                    let slot = &mut out.data[i * rhs.cols + j];
                    *slot = slot.add(&a.mul(b));
                }
            }
        }
        Ok(out)
    }

    fn zip(&self, rhs: &Self, f: impl Fn(&S, &S) -> S) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::ShapeMismatch(format!("{}x{} vs {}x{}", self.rows, self.cols, rhs.rows, rhs.cols)));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.zip(rhs, S::add)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip(rhs, S::sub)
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|x| x.mul(s))
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    /// Entrywise complex conjugate (no transpose).
    pub fn conj(&self) -> Self {
        self.map(S::conj)
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, i| acc.add(&self[(i, i)]))
    }

    /// Normalized trace, `trace / rows`.
    pub fn ntrace(&self) -> S {
        self.trace().mul(&S::from_rational(&rat(1, self.rows as i64)))
    }

    pub fn kron(&self, rhs: &Self) -> Self {
        Self::from_fn(self.rows * rhs.rows, self.cols * rhs.cols, |r, c| {
            self[(r / rhs.rows, c / rhs.cols)].mul(&rhs[(r % rhs.rows, c % rhs.cols)])
        })
    }

    pub fn pow(&self, e: u64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    /// Block-diagonal sum.
    pub fn block_diag(blocks: &[Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out[(r0 + r, c0 + c)] = b[(r, c)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn approx_eq(&self, rhs: &Self, tol: f64) -> bool {
        self.rows == rhs.rows
            && self.cols == rhs.cols
            && self.data.iter().zip(&rhs.data).all(|(a, b)| a.approx_eq(b, tol))
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.data.iter().all(|x| x.is_zero_tol(tol))
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self[(r, c)].is_zero_tol(tol)))
    }

    pub fn is_self_adjoint(&self, tol: f64) -> bool {
        self.is_square() && self.approx_eq(&self.adjoint(), tol)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.is_square()
            && (self * &self.adjoint()).approx_eq(&Self::identity(self.rows), tol)
            && (&self.adjoint() * self).approx_eq(&Self::identity(self.rows), tol)
    }

    pub fn commutes_with(&self, rhs: &Self, tol: f64) -> bool {
        (self * rhs).approx_eq(&(rhs * self), tol)
    }

    pub fn max_magnitude(&self) -> f64 {
        self.data.iter().map(S::magnitude).fold(0.0, f64::max)
    }

    /// `M = M*` and `M² = M`.
    pub fn is_projection(&self, tol: f64) -> bool {
        self.is_self_adjoint(tol) && (self * self).approx_eq(self, tol)
    }

    /// Rank by Gaussian elimination with partial pivoting. In float mode
    /// entries below `tol · rows · max|entry|` count as zero.
    pub fn rank(&self, tol: f64) -> usize {
        let threshold = tol * self.rows.max(1) as f64 * self.max_magnitude();
        let mut m = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let pivot = (rank..rows).filter(|&r| !m[r * cols + col].is_zero_tol(threshold)).max_by(|&a, &b| {
                m[a * cols + col]
                    .magnitude()
                    .partial_cmp(&m[b * cols + col].magnitude())
                    .unwrap_or(std::cmp::Ordering::Equal)
                    .then(b.cmp(&a))
            });
            let Some(p) = pivot else { continue };
            for c in 0..cols {
                m.swap(p * cols + c, rank * cols + c);
            }
            let inv = m[rank * cols + col].inv().expect("pivot is nonzero");
            for r in rank + 1..rows {
                let factor = m[r * cols + col].mul(&inv);
                if factor.is_zero_tol(0.0) {
                    continue;
                }
                for c in col..cols {
                    let v = m[r * cols + c].sub(&factor.mul(&m[rank * cols + c]));
                    m[r * cols + c] = v;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Rank of a projection, cross-checked against its trace.
    pub fn projection_rank(&self, tol: f64) -> Result<usize> {
        if !self.is_projection(tol) {
            return Err(Error::Inconsistent("matrix is not a projection".into()));
        }
        let by_elim = self.rank(tol);
        let by_trace = self
            .trace()
            .to_integer(tol * self.rows.max(1) as f64)
            .ok_or_else(|| Error::Inconsistent("projection trace is not an integer".into()))?;
        if by_trace != by_elim as i64 {
            return Err(Error::Inconsistent(format!("projection trace {by_trace} but elimination rank {by_elim}")));
        }
        Ok(by_elim)
    }

    /// U^0, …, U^{k-1}, after checking that U is unitary with U^k = 1.
    pub fn finite_order_powers(&self, k: usize, tol: f64) -> Result<Vec<Self>> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("finite-order check of a non-square matrix".into()));
        }
        if k == 0 {
            return Err(Error::NotFiniteOrder { k });
        }
        if !self.is_unitary(tol) {
            return Err(Error::NotUnitary);
        }
        let mut powers = vec![Self::identity(self.rows)];
        for b in 1..=k {
            let next = &powers[b - 1] * self;
            if b == k {
                if !next.approx_eq(&Self::identity(self.rows), tol) {
                    return Err(Error::NotFiniteOrder { k });
                }
            } else {
                powers.push(next);
            }
        }
        Ok(powers)
    }

    /// The spectral idempotents `(1/k) Σ_b ζ_k^{-ab} U^b`, a = 0..k-1.
    pub fn spectral_idempotents(&self, k: usize, tol: f64) -> Result<Vec<Self>> {
        let powers = self.finite_order_powers(k, tol)?;
        Ok(fourier_combinations(&powers, k, -1))
    }

    /// Multiplicity of each eigenvalue ζ_k^a of a unitary with U^k = 1.
    pub fn spectral_multiplicities(&self, k: usize, tol: f64) -> Result<Vec<usize>> {
        let idem = self.spectral_idempotents(k, tol)?;
        let mut out = Vec::with_capacity(k);
        for p in &idem {
            let m = p
                .trace()
                .to_integer(tol * self.rows.max(1) as f64)
                .ok_or_else(|| Error::Inconsistent(format!("spectral trace {:?} is not an integer", p.trace())))?;
            if m < 0 {
                return Err(Error::Inconsistent(format!("negative multiplicity {m}")));
            }
            out.push(m as usize);
        }
        Ok(out)
    }
}

/// `(1/k) Σ_b ζ_k^{sign·a·b} P_b` for a = 0..k-1.
pub(crate) fn fourier_combinations<S: Scalar>(powers: &[Matrix<S>], k: usize, sign: i64) -> Vec<Matrix<S>> {
    let inv_k = S::from_rational(&Rational::new(1.into(), (k as i64).into()));
    (0..k)
        .map(|a| {
            let mut acc = Matrix::zeros(powers[0].rows, powers[0].cols);
            for (b, p) in powers.iter().enumerate() {
                let w = S::root_of_unity(k, sign * (a * b) as i64);
                acc = acc.try_add(&p.scale(&w)).expect("equal shapes");
            }
            acc.scale(&inv_k)
        })
        .collect()
}

impl<S> std::ops::Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (r, c): (usize, usize)) -> &S {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl<S> std::ops::IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut S {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        &mut self.data[r * self.cols + c]
    }
}

/// Panics on shape mismatch; use [`Matrix::try_mul`] for checked products.
impl<S: Scalar> Mul for &Matrix<S> {
    type Output = Matrix<S>;
    fn mul(self, rhs: &Matrix<S>) -> Matrix<S> {
        self.try_mul(rhs).expect("matrix shapes")
    }
}

impl<S: Scalar> PartialEq for Matrix<S> {
    /// Exact entrywise equality (zero tolerance).
    fn eq(&self, other: &Self) -> bool {
        self.approx_eq(other, 0.0)
    }
}

impl Serialize for Matrix<Cyc> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        let rows: Vec<&[Cyc]> = self.data.chunks(self.cols.max(1)).take(self.rows).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix<Cyc> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Cyc>>::deserialize(d)?;
        Matrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Cyc {
        Cyc::rational(rat(n, d))
    }

    fn z(n: usize, k: i64) -> Cyc {
        Cyc::root_of_unity(n, k)
    }

    fn ints(rows: &[&[i64]]) -> ExactMatrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Cyc::integer(x)).collect()).collect()).unwrap()
    }

    /// Generator of the regular representation of Z_k (cyclic shift).
    fn shift(k: usize) -> ExactMatrix {
        Matrix::from_fn(k, k, |r, c| if r == (c + 1) % k { Cyc::one() } else { Cyc::zero() })
    }

    #[test]
    fn ntrace_of_identity_is_one() {
        for k in 1..6 {
            assert_eq!(ExactMatrix::identity(k).ntrace(), Cyc::one());
        }
    }

    #[test]
    fn adjoint_is_involutive() {
        let m = Matrix::from_rows(vec![vec![z(5, 1), q(1, 2)], vec![z(3, 2), Cyc::integer(-4)]]).unwrap();
        assert_eq!(m.adjoint().adjoint(), m);
        assert_eq!(m.adjoint()[(0, 1)], z(3, 1));
    }

    #[test]
    fn projection_examples() {
        let half = Matrix::from_rows(vec![vec![q(1, 2), q(1, 2)], vec![q(1, 2), q(1, 2)]]).unwrap();
        assert!(half.is_projection(0.0));
        assert!(!ints(&[&[1, 1], &[0, 0]]).is_projection(0.0));
        // (1/3) Σ_a U^a for the Z_3 shift is J_3 / 3
        let u = shift(3);
        let p = (0..3u64).fold(ExactMatrix::zeros(3, 3), |acc, a| acc.try_add(&u.pow(a).unwrap()).unwrap());
        let p = p.scale(&q(1, 3));
        assert!(p.is_projection(0.0));
        assert_eq!(p, Matrix::from_fn(3, 3, |_, _| q(1, 3)));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::from_fn(4, 4, |_, _| Cyc::one()).rank(0.0), 1);
        assert_eq!(ExactMatrix::identity(5).rank(0.0), 5);
        let fourier = Matrix::from_fn(3, 3, |a, b| z(3, (a * b) as i64));
        assert_eq!(fourier.rank(0.0), 3);
        assert_eq!(fourier.to_float().rank(DEFAULT_TOL), 3);
        // rows (1, ζ_3) and (ζ_3, ζ_3^2) are proportional
        let singular = Matrix::from_rows(vec![vec![Cyc::one(), z(3, 1)], vec![z(3, 1), z(3, 2)]]).unwrap();
        assert_eq!(singular.rank(0.0), 1);
        assert_eq!(singular.to_float().rank(DEFAULT_TOL), 1);
        assert_eq!(ExactMatrix::zeros(2, 3).rank(0.0), 0);
    }

    #[test]
    fn projection_rank_cross_check() {
        let p = Matrix::from_fn(3, 3, |_, _| q(1, 3));
        assert_eq!(p.projection_rank(0.0).unwrap(), 1);
        assert!(matches!(ints(&[&[1, 1], &[0, 0]]).projection_rank(0.0), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn spectral_examples() {
        assert_eq!(ExactMatrix::identity(2).spectral_multiplicities(2, 0.0).unwrap(), vec![2, 0]);
        let d = ExactMatrix::diag(&[Cyc::one(), z(3, 1), z(3, 2)]);
        assert_eq!(d.spectral_multiplicities(3, 0.0).unwrap(), vec![1, 1, 1]);
        for k in 1..=6 {
            assert_eq!(shift(k).spectral_multiplicities(k, 0.0).unwrap(), vec![1; k]);
        }
        assert_eq!(shift(4).spectral_multiplicities(2, 0.0).unwrap_err(), Error::NotFiniteOrder { k: 2 });
        assert_eq!(ints(&[&[2, 0], &[0, 1]]).spectral_multiplicities(1, 0.0).unwrap_err(), Error::NotUnitary);
    }

    #[test]
    fn spectral_idempotents_resolve_identity() {
        let u = ExactMatrix::diag(&[z(4, 1), z(4, 1), Cyc::integer(-1), Cyc::one()]);
        let idem = u.spectral_idempotents(4, 0.0).unwrap();
        let sum = idem.iter().fold(ExactMatrix::zeros(4, 4), |acc, p| acc.try_add(p).unwrap());
        assert_eq!(sum, ExactMatrix::identity(4));
        for (a, p) in idem.iter().enumerate() {
            assert!(p.is_projection(0.0));
            for (b, r) in idem.iter().enumerate() {
                if a != b {
                    assert!((p * r).is_zero(0.0));
                }
            }
        }
    }

    #[test]
    fn kron_and_trace() {
        let a = ints(&[&[1, 2], &[3, 4]]);
        let b = ExactMatrix::identity(2);
        let k = a.kron(&b);
        assert_eq!(k.rows(), 4);
        assert_eq!(k.trace(), Cyc::integer(10));
        assert_eq!(k[(2, 0)], Cyc::integer(3));
        assert!(a.try_mul(&ExactMatrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn serde_nested_arrays() {
        let m = Matrix::from_rows(vec![vec![z(4, 1), q(1, 2)]]).unwrap();
        let js = serde_json::to_string(&m).unwrap();
        let back: ExactMatrix = serde_json::from_str(&js).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<ExactMatrix>(r#"[["1"],["1","2"]]"#).is_err());
    }
}
