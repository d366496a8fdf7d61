use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A finite abelian group `C_n` or `C_m × C_n`. Elements are indexed
/// `0..order()`; the product element `(k, j)` has index `k·n + j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AbGroup {
    Cyclic(usize),
    Product(usize, usize),
}

impl AbGroup {
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroModulus);
        }
        Ok(AbGroup::Cyclic(n))
    }

    pub fn product(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::ZeroModulus);
        }
        Ok(AbGroup::Product(m, n))
    }

    pub fn order(&self) -> usize {
        match *self {
            AbGroup::Cyclic(n) => n,
            AbGroup::Product(m, n) => m * n,
        }
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        match *self {
            AbGroup::Cyclic(n) => n,
            AbGroup::Product(m, n) => m.lcm(&n),
        }
    }

    /// Index of `(k, j)`; for a cyclic group `k` is ignored.
    pub fn index(&self, k: usize, j: usize) -> usize {
        match *self {
            AbGroup::Cyclic(n) => j % n,
            AbGroup::Product(m, n) => (k % m) * n + j % n,
        }
    }

    pub fn coords(&self, i: usize) -> (usize, usize) {
        match *self {
            AbGroup::Cyclic(_) => (0, i),
            AbGroup::Product(_, n) => (i / n, i % n),
        }
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        match *self {
            AbGroup::Cyclic(n) => (a + b) % n,
            AbGroup::Product(m, n) => {
                let ((ak, aj), (bk, bj)) = (self.coords(a), self.coords(b));
                ((ak + bk) % m) * n + (aj + bj) % n
            }
        }
    }

    pub fn inverse(&self, a: usize) -> usize {
        match *self {
            AbGroup::Cyclic(n) => (n - a % n) % n,
            AbGroup::Product(m, n) => {
                let (k, j) = self.coords(a);
                ((m - k) % m) * n + (n - j) % n
            }
        }
    }

    /// Exponent `e` with `χ_c(g_i) = ζ_N^e`, `N` = [`AbGroup::exponent`].
    /// Characters share the element indexing: character `(a, b)` sends
    /// `(k, j)` to `ζ_m^{ak} ζ_n^{bj}`.
    pub fn character_exponent(&self, c: usize, i: usize) -> usize {
        match *self {
            AbGroup::Cyclic(n) => (c * i) % n,
            AbGroup::Product(m, n) => {
                let big = self.exponent();
                let ((a, b), (k, j)) = (self.coords(c), self.coords(i));
                ((a * k % m) * (big / m) + (b * j % n) * (big / n)) % big
            }
        }
    }

    /// The unique subgroup of order `d` of a cyclic group, as indices.
    pub fn cyclic_subgroup(&self, d: usize) -> Result<Vec<usize>> {
        match *self {
            AbGroup::Cyclic(n) if d > 0 && n % d == 0 => Ok((0..d).map(|i| i * (n / d)).collect()),
            AbGroup::Cyclic(n) => Err(Error::Hypothesis(format!("{d} does not divide {n}"))),
            AbGroup::Product(..) => Err(Error::Hypothesis(
                "subgroup lookup needs a cyclic group".into(),
            )),
        }
    }

    pub fn label(&self, i: usize) -> String {
        match *self {
            AbGroup::Cyclic(_) => match i {
                0 => "1".into(),
                1 => "g".into(),
                _ => format!("g^{i}"),
            },
            AbGroup::Product(..) => {
                let (k, j) = self.coords(i);
                format!("({k},{j})")
            }
        }
    }
}

impl fmt::Display for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbGroup::Cyclic(n) => write!(f, "cyclic:{n}"),
            AbGroup::Product(m, n) => write!(f, "product:{m}x{n}"),
        }
    }
}

impl FromStr for AbGroup {
    type Err = Error;

    /// `cyclic:N` or `product:MxN`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            text: s.to_string(),
            reason: "expected cyclic:N or product:MxN".into(),
        };
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "cyclic" => AbGroup::cyclic(rest.parse().map_err(|_| bad())?),
            "product" => {
                let (m, n) = rest.split_once('x').ok_or_else(bad)?;
                AbGroup::product(m.parse().map_err(|_| bad())?, n.parse().map_err(|_| bad())?)
            }
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_indexing_is_bijective() {
        let g = AbGroup::product(2, 4).unwrap();
        let mut seen = vec![false; 8];
        for k in 0..2 {
            for j in 0..4 {
                let i = g.index(k, j);
                assert_eq!(i, k * 4 + j);
                assert_eq!(g.coords(i), (k, j));
                seen[i] = true;
            }
        }
        assert!(seen.into_iter().all(|s| s));
        assert_eq!(g.exponent(), 4);
    }

    #[test]
    fn op_and_inverse() {
        for g in [
            AbGroup::Cyclic(6),
            AbGroup::Product(2, 2),
            AbGroup::Product(3, 4),
        ] {
            for a in 0..g.order() {
                assert_eq!(g.op(a, g.inverse(a)), 0);
                for b in 0..g.order() {
                    assert_eq!(g.op(a, b), g.op(b, a));
                }
            }
        }
    }

    #[test]
    fn characters_are_homomorphisms() {
        for g in [
            AbGroup::Cyclic(5),
            AbGroup::Product(2, 2),
            AbGroup::Product(2, 4),
            AbGroup::Product(3, 3),
        ] {
            let big = g.exponent();
            for c in 0..g.order() {
                for a in 0..g.order() {
                    for b in 0..g.order() {
                        let lhs = g.character_exponent(c, g.op(a, b));
                        let rhs = (g.character_exponent(c, a) + g.character_exponent(c, b)) % big;
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn parse_descriptors() {
        assert_eq!("cyclic:3".parse::<AbGroup>().unwrap(), AbGroup::Cyclic(3));
        assert_eq!(
            "product:2x4".parse::<AbGroup>().unwrap(),
            AbGroup::Product(2, 4)
        );
        assert!("cyclic:0".parse::<AbGroup>().is_err());
        assert!("torus:3".parse::<AbGroup>().is_err());
        assert_eq!(AbGroup::Product(2, 2).to_string(), "product:2x2");
    }

    #[test]
    fn cyclic_subgroups() {
        assert_eq!(AbGroup::Cyclic(4).cyclic_subgroup(2).unwrap(), vec![0, 2]);
        assert!(AbGroup::Cyclic(4).cyclic_subgroup(3).is_err());
    }
}
