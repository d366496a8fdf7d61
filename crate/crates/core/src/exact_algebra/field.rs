//! Coefficient fields: Q, Q(ζ_N) and F_q.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::{self, cyclotomic_polynomial, fmt_rational, QPoly, Rational};
use crate::error::{Error, Result};
use crate::numtheory::is_prime;

/// A field with explicit element operations. Elements carry no context of
/// their own; the field value supplies it.
pub trait Field: Clone + fmt::Debug + PartialEq {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_integer(&self, v: i64) -> Self::Elem;
    fn characteristic(&self) -> u64;
    fn render(&self, a: &Self::Elem) -> String;
    fn name(&self) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn from_integer(&self, v: i64) -> Rational {
        Rational::from_integer(BigInt::from(v))
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn render(&self, a: &Rational) -> String {
        fmt_rational(a)
    }
    fn name(&self) -> String {
        "Q".into()
    }
}

/// The prime field F_q; elements are residues in `[0, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    q: u64,
}

impl PrimeField {
    pub fn new(q: u64) -> Result<Self> {
        if !is_prime(q) || q > u32::MAX as u64 {
            return Err(Error::NotPrime(q));
        }
        Ok(PrimeField { q })
    }

    pub fn order(&self) -> u64 {
        self.q
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.q
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.q
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.q - a % self.q) % self.q
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.q
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (a % self.q != 0).then(|| self.pow(a, self.q - 2))
    }
    fn from_integer(&self, v: i64) -> u64 {
        v.rem_euclid(self.q as i64) as u64
    }
    fn characteristic(&self) -> u64 {
        self.q
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn name(&self) -> String {
        format!("F_{}", self.q)
    }
}

/// Q(ζ_N), realized as Q[x]/(Φ_N).
#[derive(Debug, Clone)]
pub struct CyclotomicField {
    order: usize,
    // Φ_N as rationals, lowest degree first
    modulus: Arc<QPoly>,
}

impl PartialEq for CyclotomicField {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
    }
}

impl CyclotomicField {
    pub fn new(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroModulus);
        }
        let modulus = cyclotomic_polynomial(order)
            .into_iter()
            .map(Rational::from_integer)
            .collect();
        Ok(CyclotomicField {
            order,
            modulus: Arc::new(modulus),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    fn reduce(&self, p: QPoly) -> CycloNumber {
        let (_, mut rem) = poly::divrem(&p, &self.modulus);
        rem.resize(self.degree(), Rational::zero());
        CycloNumber {
            field: self.clone(),
            coeffs: rem,
        }
    }

    pub fn from_rational(&self, r: Rational) -> CycloNumber {
        self.reduce(vec![r])
    }

    /// ζ_N^j for any integer `j`.
    pub fn zeta_pow(&self, j: i64) -> CycloNumber {
        let e = j.rem_euclid(self.order as i64) as usize;
        let mut p = vec![Rational::zero(); e + 1];
        p[e] = Rational::one();
        self.reduce(p)
    }

    pub fn zeta(&self) -> CycloNumber {
        self.zeta_pow(1)
    }

    pub fn from_coeffs(&self, coeffs: Vec<Rational>) -> CycloNumber {
        self.reduce(coeffs)
    }
}

/// An element of Q(ζ_N): coefficients on 1, ζ, …, ζ^{d−1} with
/// `d = deg Φ_N`, always fully reduced.
#[derive(Clone)]
pub struct CycloNumber {
    field: CyclotomicField,
    coeffs: Vec<Rational>,
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coeffs == other.coeffs
    }
}

impl Eq for CycloNumber {}

impl CycloNumber {
    pub fn field(&self) -> &CyclotomicField {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.field.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The rational value, when the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        self.coeffs[1..]
            .iter()
            .all(|c| c.is_zero())
            .then(|| self.coeffs[0].clone())
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(
            self.field.order, other.field.order,
            "mixing Q(ζ_N) of different orders"
        );
    }

    /// Multiplicative inverse via the extended Euclidean algorithm with Φ_N.
    pub fn inv(&self) -> Result<CycloNumber> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, s) = poly::ext_gcd_left(&self.coeffs, &self.field.modulus);
        debug_assert_eq!(g, vec![Rational::one()], "Φ_N is irreducible");
        Ok(self.field.reduce(s))
    }
}

/// `z⁻¹` in Q(ζ_N); fails on zero.
pub fn cyclo_invert(z: &CycloNumber) -> Result<CycloNumber> {
    z.inv()
}

impl Add for &CycloNumber {
    type Output = CycloNumber;
    fn add(self, rhs: &CycloNumber) -> CycloNumber {
        self.check_same(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycloNumber {
            field: self.field.clone(),
            coeffs,
        }
    }
}

impl Sub for &CycloNumber {
    type Output = CycloNumber;
    fn sub(self, rhs: &CycloNumber) -> CycloNumber {
        self.check_same(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CycloNumber {
            field: self.field.clone(),
            coeffs,
        }
    }
}

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &CycloNumber {
    type Output = CycloNumber;
    fn mul(self, rhs: &CycloNumber) -> CycloNumber {
        self.check_same(rhs);
        self.field.reduce(poly::mul(&self.coeffs, &rhs.coeffs))
    }
}

/// Polynomial in ζ, ascending powers: `2/3 - 1/3*ζ + ζ^2`.
impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = poly::is_negative(c);
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mag_s = fmt_rational(&mag);
            match (j, mag.is_one()) {
                (0, _) => f.write_str(&mag_s)?,
                (1, true) => f.write_str("ζ")?,
                (1, false) => write!(f, "{mag_s}*ζ")?,
                (_, true) => write!(f, "ζ^{j}")?,
                (_, false) => write!(f, "{mag_s}*ζ^{j}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]_{}", self, self.field.order)
    }
}

impl Field for CyclotomicField {
    type Elem = CycloNumber;

    fn zero(&self) -> CycloNumber {
        CycloNumber {
            field: self.clone(),
            coeffs: vec![Rational::zero(); self.degree()],
        }
    }
    fn one(&self) -> CycloNumber {
        self.from_rational(Rational::one())
    }
    fn add(&self, a: &CycloNumber, b: &CycloNumber) -> CycloNumber {
        a + b
    }
    fn neg(&self, a: &CycloNumber) -> CycloNumber {
        -a
    }
    fn mul(&self, a: &CycloNumber, b: &CycloNumber) -> CycloNumber {
        a * b
    }
    fn inv(&self, a: &CycloNumber) -> Option<CycloNumber> {
        a.inv().ok()
    }
    fn from_integer(&self, v: i64) -> CycloNumber {
        self.from_rational(Rational::from_integer(BigInt::from(v)))
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn render(&self, a: &CycloNumber) -> String {
        a.to_string()
    }
    fn name(&self) -> String {
        format!("Q(ζ_{})", self.order)
    }
    fn is_zero(&self, a: &CycloNumber) -> bool {
        a.is_zero()
    }
}
