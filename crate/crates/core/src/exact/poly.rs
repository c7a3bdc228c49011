//! Dense univariate polynomials over Q, lowest degree first, and the
//! cyclotomic polynomials used to canonicalize [`Cyc`](super::Cyc) values.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::Rational;

pub type Poly = Vec<Rational>;

pub fn trim(p: &mut Poly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn degree(p: &Poly) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

pub fn sub(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// Quotient and remainder of `a` by a nonzero `b`.
pub fn divrem(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead = b[db].clone();
    let mut rem = a.clone();
    trim(&mut rem);
    let mut quot = vec![Rational::zero(); rem.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let coef = &rem[dr] / &lead;
        let shift = dr - db;
        for (i, c) in b.iter().enumerate().take(db + 1) {
            if !c.is_zero() {
                rem[shift + i] -= &coef * c;
            }
        }
        quot[shift] = coef;
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

/// Remainder of `a` modulo the monic integer polynomial `m`, in place.
/// The result has length at most `deg m`.
pub fn reduce_monic(a: &mut Poly, m: &[i64]) {
    let dm = m.len() - 1;
    for top in (dm..a.len()).rev() {
        if a[top].is_zero() {
            continue;
        }
        let coef = std::mem::replace(&mut a[top], Rational::zero());
        let shift = top - dm;
        for (i, &c) in m.iter().enumerate().take(dm) {
            if c != 0 {
                a[shift + i] -= &coef * Rational::from_integer(c.into());
            }
        }
    }
    a.truncate(dm);
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm, if
/// `gcd(a, m) = 1`.
pub fn inverse_mod(a: &Poly, m: &Poly) -> Option<Poly> {
    let (mut r0, mut r1) = (m.clone(), a.clone());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1): (Poly, Poly) = (Vec::new(), vec![Rational::one()]);
    while degree(&r1).is_some() {
        let (q, r) = divrem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r0 is the gcd; a unit iff it is a nonzero constant
    if degree(&r0) != Some(0) {
        return None;
    }
    let c = r0[0].clone();
    let mut inv: Poly = s0.into_iter().map(|x| x / &c).collect();
    let (_, rem) = divrem(&inv, m);
    inv = rem;
    Some(inv)
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Integer coefficients of the n-th cyclotomic polynomial, lowest degree
/// first. Computed by exact division of `x^n - 1` by the lower-order
/// cyclotomic factors, and memoized.
pub fn cyclotomic(n: usize) -> Vec<i64> {
    assert!(n >= 1);
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in divisors(n) {
        if d < n {
            num = exact_div_monic(&num, &cyclotomic(d));
        }
    }
    cache.lock().unwrap().insert(n, num.clone());
    num
}

fn exact_div_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    let mut quot = vec![0i64; a.len() - db];
    for top in (db..a.len()).rev() {
        let c = rem[top];
        if c == 0 {
            continue;
        }
        quot[top - db] = c;
        for (i, &bi) in b.iter().enumerate() {
            rem[top - db + i] -= c * bi;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

/// Euler's totient, the degree of the n-th cyclotomic polynomial.
pub fn totient(n: usize) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}
