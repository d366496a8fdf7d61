//! The group ring Z₂[Cₙ] = Z₂[x]/(xⁿ − 1).
//!
//! An element is stored as its support: the set of exponents `e` whose
//! coefficient on `g^e` is 1, packed into a bitset of length `n`. Addition is
//! symmetric difference, multiplication is cyclic convolution mod 2, and
//! squaring is the Frobenius map `g^e ↦ g^{2e}`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};

use crate::bits::BitVec;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Element {
    modulus: usize,
    bits: BitVec,
}

impl Gf2Element {
    /// Builds an element from a list of exponents. Exponents are reduced
    /// mod `n`; an exponent listed an even number of times cancels.
    pub fn new(n: usize, exponents: impl IntoIterator<Item = i64>) -> Result<Self> {
        let mut out = Self::zero(n)?;
        for e in exponents {
            out.bits.toggle(e.rem_euclid(n as i64) as usize);
        }
        Ok(out)
    }

    /// Same as [`Gf2Element::new`] for exponents that are already unsigned.
    pub fn from_exponents(n: usize, exponents: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut out = Self::zero(n)?;
        for e in exponents {
            out.bits.toggle(e % n);
        }
        Ok(out)
    }

    pub fn zero(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroModulus);
        }
        Ok(Gf2Element {
            modulus: n,
            bits: BitVec::zeros(n),
        })
    }

    pub fn one(n: usize) -> Result<Self> {
        let mut out = Self::zero(n)?;
        out.bits.set(0, true);
        Ok(out)
    }

    /// Element whose support is the low `n` bits of `mask` (requires `n ≤ 64`).
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroModulus);
        }
        if n > 64 {
            return Err(Error::OutOfRange {
                value: n as u64,
                reason: "bit mask form needs n ≤ 64".into(),
            });
        }
        Ok(Gf2Element {
            modulus: n,
            bits: BitVec::from_u64(n, mask),
        })
    }

    /// The support as a bit mask, when `n ≤ 64`.
    pub fn to_mask(&self) -> Option<u64> {
        self.bits.as_u64()
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    /// Sorted exponents with coefficient 1.
    pub fn support(&self) -> Vec<usize> {
        self.bits.ones().collect()
    }

    pub fn exponents(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn weight(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn contains(&self, e: usize) -> bool {
        e < self.modulus && self.bits.get(e)
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.bits.get(0) && self.weight() == 1
    }

    pub fn is_trivial(&self) -> bool {
        self.is_zero() || self.is_one()
    }

    fn check_modulus(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_modulus(other)?;
        let mut out = self.clone();
        out.bits.xor_assign(&other.bits);
        Ok(out)
    }

    /// Cyclic convolution mod 2. Iterates over the sparser operand and XORs
    /// rotations of the denser one.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_modulus(other)?;
        let (sparse, dense) = if self.weight() <= other.weight() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = BitVec::zeros(self.modulus);
        for e in sparse.bits.ones() {
            out.xor_rotated(&dense.bits, e);
        }
        Ok(Gf2Element {
            modulus: self.modulus,
            bits: out,
        })
    }

    /// Frobenius squaring: every exponent doubles mod n, colliding pairs cancel.
    pub fn square(&self) -> Self {
        let n = self.modulus;
        let mut out = BitVec::zeros(n);
        for e in self.bits.ones() {
            out.toggle((2 * e) % n);
        }
        Gf2Element {
            modulus: n,
            bits: out,
        }
    }

    pub fn is_idempotent(&self) -> bool {
        self.square() == *self
    }

    /// `1 + self`.
    pub fn complement_one(&self) -> Self {
        let mut out = self.clone();
        out.bits.toggle(0);
        out
    }

    /// Brace notation `{e1,e2,…}@n`, used for diagnostics.
    pub fn notation(&self) -> String {
        let exps: Vec<String> = self.exponents().map(|e| e.to_string()).collect();
        format!("{{{}}}@{}", exps.join(","), self.modulus)
    }

    /// Parses the canonical textual form (`0`, `1`, `g`, `g^e`, joined by `+`).
    /// Repeated terms cancel as in [`Gf2Element::new`].
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let err = |reason: &str| Error::Parse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(err("empty input"));
        }
        if trimmed == "0" {
            return Self::zero(n);
        }
        let mut exps = Vec::new();
        for term in trimmed.split('+') {
            let term = term.trim();
            let e = match term {
                "1" => 0,
                "g" => 1,
                t => {
                    let rest = t
                        .strip_prefix("g^")
                        .ok_or_else(|| err(&format!("bad term {t:?}")))?;
                    rest.trim()
                        .parse::<i64>()
                        .map_err(|_| err(&format!("bad exponent in {t:?}")))?
                }
            };
            exps.push(e);
        }
        Self::new(n, exps)
    }
}

impl fmt::Display for Gf2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for e in self.exponents() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match e {
                0 => f.write_str("1")?,
                1 => f.write_str("g")?,
                _ => write!(f, "g^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Gf2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.notation())
    }
}

/// Canonical order: modulus, then support size, then the ascending exponent
/// list compared lexicographically.
impl Ord for Gf2Element {
    fn cmp(&self, other: &Self) -> Ordering {
        self.modulus
            .cmp(&other.modulus)
            .then_with(|| self.weight().cmp(&other.weight()))
            .then_with(|| self.exponents().cmp(other.exponents()))
    }
}

impl PartialOrd for Gf2Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Panics on modulus mismatch; use [`Gf2Element::checked_add`] otherwise.
impl Add for &Gf2Element {
    type Output = Gf2Element;
    fn add(self, rhs: &Gf2Element) -> Gf2Element {
        self.checked_add(rhs).expect("modulus mismatch in add")
    }
}

/// Panics on modulus mismatch; use [`Gf2Element::checked_mul`] otherwise.
impl Mul for &Gf2Element {
    type Output = Gf2Element;
    fn mul(self, rhs: &Gf2Element) -> Gf2Element {
        self.checked_mul(rhs).expect("modulus mismatch in mul")
    }
}
