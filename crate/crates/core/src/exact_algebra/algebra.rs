use std::collections::BTreeMap;
use std::fmt;

use super::field::Field;
use super::group::AbGroup;
use crate::error::{Error, Result};

/// An element `Σ r_i g_i` of the group algebra `F[G]`. Zero coefficients
/// are never stored.
#[derive(Clone)]
pub struct AlgElement<F: Field> {
    group: AbGroup,
    field: F,
    coeffs: BTreeMap<usize, F::Elem>,
}

impl<F: Field> PartialEq for AlgElement<F> {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.field == other.field && self.coeffs == other.coeffs
    }
}

impl<F: Field> AlgElement<F> {
    pub fn zero(group: AbGroup, field: F) -> Self {
        AlgElement {
            group,
            field,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(group: AbGroup, field: F) -> Self {
        let one = field.one();
        Self::monomial(group, field, 0, one)
    }

    pub fn monomial(group: AbGroup, field: F, index: usize, coeff: F::Elem) -> Self {
        let mut out = Self::zero(group, field);
        out.set(index, coeff);
        out
    }

    /// From a dense coefficient list indexed by group element.
    pub fn from_dense(group: AbGroup, field: F, coeffs: Vec<F::Elem>) -> Result<Self> {
        if coeffs.len() != group.order() {
            return Err(Error::OutOfRange {
                value: coeffs.len() as u64,
                reason: format!("expected {} coefficients", group.order()),
            });
        }
        let mut out = Self::zero(group, field);
        for (i, c) in coeffs.into_iter().enumerate() {
            out.set(i, c);
        }
        Ok(out)
    }

    /// Sum of the listed group elements, each with coefficient `c`.
    pub fn uniform(group: AbGroup, field: F, indices: &[usize], c: F::Elem) -> Self {
        let mut out = Self::zero(group, field);
        for &i in indices {
            let cur = out.coeff(i);
            let next = out.field.add(&cur, &c);
            out.set(i, next);
        }
        out
    }

    fn set(&mut self, index: usize, c: F::Elem) {
        assert!(index < self.group.order(), "group index out of range");
        if self.field.is_zero(&c) {
            self.coeffs.remove(&index);
        } else {
            self.coeffs.insert(index, c);
        }
    }

    pub fn group(&self) -> AbGroup {
        self.group
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeff(&self, index: usize) -> F::Elem {
        self.coeffs
            .get(&index)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn dense(&self) -> Vec<F::Elem> {
        (0..self.group.order()).map(|i| self.coeff(i)).collect()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &F::Elem)> {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0) == Some(&self.field.one())
    }

    pub fn is_trivial(&self) -> bool {
        self.is_zero() || self.is_one()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.group != other.group {
            return Err(Error::Hypothesis(format!(
                "group mismatch: {} vs {}",
                self.group, other.group
            )));
        }
        if self.field != other.field {
            return Err(Error::Hypothesis(format!(
                "field mismatch: {} vs {}",
                self.field.name(),
                other.field.name()
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (&i, c) in &other.coeffs {
            let next = out.field.add(&out.coeff(i), c);
            out.set(i, next);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.group, self.field.clone());
        for (&i, c) in &self.coeffs {
            out.coeffs.insert(i, self.field.neg(c));
        }
        out
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let mut out = Self::zero(self.group, self.field.clone());
        for (&i, c) in &self.coeffs {
            out.set(i, self.field.mul(s, c));
        }
        out
    }

    /// Convolution over the group operation.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut acc: Vec<Option<F::Elem>> = vec![None; self.group.order()];
        for (&i, a) in &self.coeffs {
            for (&j, b) in &other.coeffs {
                let k = self.group.op(i, j);
                let prod = self.field.mul(a, b);
                acc[k] = Some(match acc[k].take() {
                    Some(cur) => self.field.add(&cur, &prod),
                    None => prod,
                });
            }
        }
        let mut out = Self::zero(self.group, self.field.clone());
        for (k, c) in acc.into_iter().enumerate() {
            if let Some(c) = c {
                out.set(k, c);
            }
        }
        Ok(out)
    }

    pub fn square(&self) -> Self {
        self.checked_mul(self).expect("same group and field")
    }

    pub fn is_idempotent(&self) -> bool {
        self.square() == *self
    }
}

impl<F: Field> fmt::Display for AlgElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (&i, c)) in self.coeffs.iter().enumerate() {
            let c = self.field.render(c);
            let compound = c
                .chars()
                .skip(1)
                .any(|ch| ch == ' ' || ch == '+' || ch == '-');
            let (neg, mag) = match c.strip_prefix('-') {
                Some(rest) if !compound => (true, rest.to_string()),
                _ if compound => (false, format!("({c})")),
                _ => (false, c),
            };
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match (i, mag.as_str()) {
                (0, m) => f.write_str(m)?,
                (_, "1") => f.write_str(&self.group.label(i))?,
                (_, m) => write!(f, "{m}*{}", self.group.label(i))?,
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for AlgElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}[{}]", self, self.field.name(), self.group)
    }
}

#[cfg(test)]
mod tests {
    use super::super::field::{PrimeField, RationalField};
    use super::*;

    #[test]
    fn cyclic_convolution_over_q() {
        let g = AbGroup::Cyclic(3);
        let k = RationalField;
        let a = AlgElement::from_dense(
            g,
            k,
            vec![k.from_integer(1), k.from_integer(2), k.from_integer(0)],
        )
        .unwrap();
        let b = AlgElement::monomial(g, k, 2, k.from_integer(3));
        // (1 + 2g)·3g² = 3g² + 6
        let prod = a.checked_mul(&b).unwrap();
        assert_eq!(
            prod.dense(),
            vec![k.from_integer(6), k.from_integer(0), k.from_integer(3)]
        );
        assert!(AlgElement::one(g, k).is_idempotent());
        assert!(a.checked_sub(&a).unwrap().is_zero());
    }

    #[test]
    fn subgroup_sum_over_f5() {
        let g = AbGroup::Cyclic(4);
        let f = PrimeField::new(5).unwrap();
        let h = g.cyclic_subgroup(2).unwrap();
        let sigma = AlgElement::uniform(g, f, &h, 1);
        assert_eq!(sigma.square(), sigma.scale(&2));
        assert_eq!(sigma.to_string(), "1 + g^2");
    }

    #[test]
    fn mismatched_operands_rejected() {
        let a = AlgElement::one(AbGroup::Cyclic(3), RationalField);
        let b = AlgElement::one(AbGroup::Cyclic(4), RationalField);
        assert!(a.checked_add(&b).is_err());
        assert!(a.checked_mul(&b).is_err());
        assert!(AlgElement::from_dense(AbGroup::Cyclic(3), RationalField, vec![]).is_err());
    }
}
