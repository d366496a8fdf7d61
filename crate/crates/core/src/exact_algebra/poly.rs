//! Dense univariate polynomials, lowest degree first.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub(crate) type QPoly = Vec<Rational>;

/// Φₙ with integer coefficients, lowest degree first.
pub fn cyclotomic_polynomial(n: usize) -> Vec<BigInt> {
    assert!(n > 0, "cyclotomic polynomial of order 0");
    let mut memo = HashMap::new();
    cyclotomic_memo(n, &mut memo)
}

fn cyclotomic_memo(n: usize, memo: &mut HashMap<usize, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    // x^n − 1
    let mut num = vec![BigInt::zero(); n + 1];
    num[0] = -BigInt::one();
    num[n] = BigInt::one();
    for d in (1..n).filter(|d| n % d == 0) {
        let phi_d = cyclotomic_memo(d, memo);
        num = exact_div_monic(&num, &phi_d);
    }
    memo.insert(n, num.clone());
    num
}

/// Quotient of `a` by monic `b`; panics if the division leaves a remainder.
fn exact_div_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    debug_assert!(b[db].is_one());
    let mut rem = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let c = rem[i + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    assert!(
        rem.iter().all(|c| c.is_zero()),
        "inexact cyclotomic division"
    );
    q
}

pub(crate) fn trim(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn mul(a: &[Rational], b: &[Rational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    trim(&mut out);
    out
}

fn sub(a: &[Rational], b: &[Rational]) -> QPoly {
    let len = a.len().max(b.len());
    let mut out: QPoly = (0..len)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub(crate) fn divrem(a: &[Rational], b: &[Rational]) -> (QPoly, QPoly) {
    let mut b = b.to_vec();
    trim(&mut b);
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut q = vec![Rational::zero(); rem.len() - db];
    for i in (0..q.len()).rev() {
        let c = &rem[i + db] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    trim(&mut q);
    trim(&mut rem);
    (q, rem)
}

/// `(g, s)` with `s·a ≡ g (mod b)` and `g = gcd(a, b)` normalized monic.
pub(crate) fn ext_gcd_left(a: &[Rational], b: &[Rational]) -> (QPoly, QPoly) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1): (QPoly, QPoly) = (vec![Rational::one()], Vec::new());
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s);
    }
    if let Some(lead) = r0.last().cloned() {
        let inv = lead.recip();
        for c in r0.iter_mut().chain(s0.iter_mut()) {
            *c *= &inv;
        }
    }
    (r0, s0)
}

/// `a/b`, or just `a` when the denominator is 1.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub(crate) fn is_negative(r: &Rational) -> bool {
    r.is_negative()
}
