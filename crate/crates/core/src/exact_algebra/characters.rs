//! Idempotents of `Q(ζ_N)[G]` for finite abelian `G` with exponent `N`.
//!
//! The primitive idempotents are `e_c = |G|⁻¹ Σ_g χ_c(g⁻¹)·g`, one per
//! character. They are orthogonal and sum to 1, so the idempotents of the
//! algebra are exactly the `2^|G|` subset sums, and an element `α` is
//! determined by its character values `χ_c(α)`.

use num_bigint::BigInt;

use super::algebra::AlgElement;
use super::field::{CycloNumber, CyclotomicField, Field};
use super::group::AbGroup;
use super::poly::Rational;
use crate::error::{Error, Result};
use crate::s_classify::WitnessLaw;

/// Witness for an idempotent of a group algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgWitness<F: Field> {
    pub beta: AlgElement<F>,
    pub law: WitnessLaw,
}

/// Character table data for one group, with coefficients in `Q(ζ_N)`.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    group: AbGroup,
    field: CyclotomicField,
    // zeta_powers[e] = ζ_N^e
    zeta_powers: Vec<CycloNumber>,
    primitive: Vec<AlgElement<CyclotomicField>>,
}

impl CharacterTable {
    pub fn new(group: AbGroup) -> Result<Self> {
        let field = CyclotomicField::new(group.exponent())?;
        let zeta_powers: Vec<CycloNumber> = (0..field.order() as i64)
            .map(|e| field.zeta_pow(e))
            .collect();
        let order = group.order();
        let inv_order =
            field.from_rational(Rational::new(BigInt::from(1), BigInt::from(order as u64)));
        let primitive = (0..order)
            .map(|c| {
                let coeffs = (0..order)
                    .map(|i| {
                        &inv_order * &zeta_powers[group.character_exponent(c, group.inverse(i))]
                    })
                    .collect();
                AlgElement::from_dense(group, field.clone(), coeffs)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CharacterTable {
            group,
            field,
            zeta_powers,
            primitive,
        })
    }

    pub fn group(&self) -> AbGroup {
        self.group
    }

    pub fn field(&self) -> &CyclotomicField {
        &self.field
    }

    pub fn primitive_idempotents(&self) -> &[AlgElement<CyclotomicField>] {
        &self.primitive
    }

    fn check_element(&self, alpha: &AlgElement<CyclotomicField>) -> Result<()> {
        if alpha.group() != self.group || *alpha.field() != self.field {
            return Err(Error::Hypothesis(format!(
                "element is not in {}[{}]",
                self.field.name(),
                self.group
            )));
        }
        Ok(())
    }

    fn check_mask(&self, mask: &[usize]) -> Result<()> {
        match mask.iter().find(|&&c| c >= self.group.order()) {
            Some(&c) => Err(Error::OutOfRange {
                value: c as u64,
                reason: "character index".into(),
            }),
            None => Ok(()),
        }
    }

    /// Sum of the primitive idempotents whose characters are in `mask`.
    pub fn idempotent_from_mask(&self, mask: &[usize]) -> Result<AlgElement<CyclotomicField>> {
        self.check_mask(mask)?;
        let mut out = AlgElement::zero(self.group, self.field.clone());
        for &c in mask {
            out = out.checked_add(&self.primitive[c])?;
        }
        Ok(out)
    }

    /// `χ_c(α)` for every character `c`.
    pub fn character_values(
        &self,
        alpha: &AlgElement<CyclotomicField>,
    ) -> Result<Vec<CycloNumber>> {
        self.check_element(alpha)?;
        Ok((0..self.group.order())
            .map(|c| {
                alpha.terms().fold(self.field.zero(), |acc, (i, a)| {
                    &acc + &(a * &self.zeta_powers[self.group.character_exponent(c, i)])
                })
            })
            .collect())
    }

    /// Inverse of [`CharacterTable::character_values`]: `Σ_c v_c·e_c`.
    pub fn from_character_values(
        &self,
        values: &[CycloNumber],
    ) -> Result<AlgElement<CyclotomicField>> {
        if values.len() != self.group.order() {
            return Err(Error::OutOfRange {
                value: values.len() as u64,
                reason: "one value per character".into(),
            });
        }
        let mut out = AlgElement::zero(self.group, self.field.clone());
        for (e, v) in self.primitive.iter().zip(values) {
            out = out.checked_add(&e.scale(v))?;
        }
        Ok(out)
    }

    /// The characters on which an idempotent takes the value 1.
    pub fn character_mask(&self, alpha: &AlgElement<CyclotomicField>) -> Result<Vec<usize>> {
        let values = self.character_values(alpha)?;
        let (zero, one) = (self.field.zero(), self.field.one());
        let mut mask = Vec::new();
        for (c, v) in values.iter().enumerate() {
            if *v == one {
                mask.push(c);
            } else if *v != zero {
                return Err(Error::NotIdempotent(alpha.to_string()));
            }
        }
        Ok(mask)
    }

    /// All 2^|G| idempotents in mask order (bit `c` of the mask selects `e_c`).
    pub fn all_idempotents(&self) -> Result<Vec<AlgElement<CyclotomicField>>> {
        let order = self.group.order();
        if order >= 32 {
            return Err(Error::CensusCap {
                n: order,
                cosets: order,
                cap: 31,
            });
        }
        (0u32..1 << order)
            .map(|bits| {
                let mask: Vec<usize> = (0..order).filter(|c| bits >> c & 1 == 1).collect();
                self.idempotent_from_mask(&mask)
            })
            .collect()
    }

    /// Every `β` with `β² = α` and `αβ = β`, other than `α` itself.
    ///
    /// In character coordinates such `β` is `±1` on the mask of `α` and 0
    /// elsewhere; the `2^|mask| − 1` sign patterns other than all-plus are
    /// returned in ascending order of the set of negated characters. Each
    /// is re-checked by direct products.
    pub fn co_idempotents(
        &self,
        alpha: &AlgElement<CyclotomicField>,
    ) -> Result<Vec<AlgElement<CyclotomicField>>> {
        let mask = self.character_mask(alpha)?;
        if mask.len() >= 32 {
            return Err(Error::CensusCap {
                n: mask.len(),
                cosets: mask.len(),
                cap: 31,
            });
        }
        let mut out = Vec::with_capacity((1 << mask.len()) - 1);
        for signs in 1u32..1 << mask.len() {
            let mut beta = AlgElement::zero(self.group, self.field.clone());
            for (bit, &c) in mask.iter().enumerate() {
                let e = &self.primitive[c];
                beta = if signs >> bit & 1 == 1 {
                    beta.checked_sub(e)?
                } else {
                    beta.checked_add(e)?
                };
            }
            if beta.square() != *alpha || alpha.checked_mul(&beta)? != beta {
                return Err(Error::ConstructionFailed(format!(
                    "sign pattern {signs:b} fails for {alpha}"
                )));
            }
            out.push(beta);
        }
        Ok(out)
    }
}

/// `primitive_idempotents` for a group, over `Q(ζ_N)`.
pub fn primitive_idempotents(group: AbGroup) -> Result<Vec<AlgElement<CyclotomicField>>> {
    Ok(CharacterTable::new(group)?.primitive)
}

pub fn idempotent_from_mask(group: AbGroup, mask: &[usize]) -> Result<AlgElement<CyclotomicField>> {
    CharacterTable::new(group)?.idempotent_from_mask(mask)
}

pub fn co_idempotents(
    alpha: &AlgElement<CyclotomicField>,
) -> Result<Vec<AlgElement<CyclotomicField>>> {
    CharacterTable::new(alpha.group())?.co_idempotents(alpha)
}

/// `β = −α` for a nontrivial idempotent over a field of characteristic 0:
/// `β² = α` and `αβ = −α² = β`.
pub fn negation_witness<F: Field>(alpha: &AlgElement<F>) -> Result<AlgWitness<F>> {
    if alpha.field().characteristic() != 0 {
        return Err(Error::Hypothesis(format!(
            "negation witness needs characteristic 0, got {}",
            alpha.field().name()
        )));
    }
    if !alpha.is_idempotent() {
        return Err(Error::NotIdempotent(alpha.to_string()));
    }
    if alpha.is_trivial() {
        return Err(Error::Hypothesis(format!(
            "{alpha} is a trivial idempotent"
        )));
    }
    let beta = alpha.neg();
    let one = AlgElement::one(alpha.group(), alpha.field().clone());
    let ok = beta.square() == *alpha
        && alpha.checked_mul(&beta)? == beta
        && !beta.is_zero()
        && beta != one
        && beta != *alpha;
    if !ok {
        return Err(Error::InvalidWitness(format!("−α fails for {alpha}")));
    }
    Ok(AlgWitness {
        beta,
        law: WitnessLaw::AbsorbWitness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::field::RationalField;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn trivial_group() {
        let t = CharacterTable::new(AbGroup::Cyclic(1)).unwrap();
        assert_eq!(t.primitive_idempotents().len(), 1);
        assert!(t.primitive_idempotents()[0].is_one());
    }

    #[test]
    fn cyclic3_principal_idempotent() {
        let es = primitive_idempotents(AbGroup::Cyclic(3)).unwrap();
        let k = es[0].field().clone();
        let third = k.from_rational(q(1, 3));
        assert_eq!(es[0].dense(), vec![third.clone(), third.clone(), third]);
        assert!(es[0].is_idempotent());
    }

    #[test]
    fn klein_group_idempotents() {
        let es = primitive_idempotents(AbGroup::Product(2, 2)).unwrap();
        assert_eq!(es.len(), 4);
        for e in &es {
            for c in e.dense() {
                let r = c.as_rational().unwrap();
                assert!(r == q(1, 4) || r == q(-1, 4), "{r}");
            }
        }
        for (i, a) in es.iter().enumerate() {
            for (j, b) in es.iter().enumerate() {
                let p = a.checked_mul(b).unwrap();
                if i == j {
                    assert_eq!(p, *a);
                } else {
                    assert!(p.is_zero());
                }
            }
        }
    }

    fn small_groups() -> Vec<AbGroup> {
        let mut gs: Vec<AbGroup> = (1..=12).map(AbGroup::Cyclic).collect();
        for m in 2..=6 {
            for n in 2..=12 / m {
                gs.push(AbGroup::Product(m, n));
            }
        }
        gs
    }

    #[test]
    fn orthogonality() {
        for g in small_groups() {
            let t = CharacterTable::new(g).unwrap();
            let es = t.primitive_idempotents();
            let mut sum = AlgElement::zero(g, t.field().clone());
            for (i, a) in es.iter().enumerate() {
                sum = sum.checked_add(a).unwrap();
                for (j, b) in es.iter().enumerate() {
                    let p = a.checked_mul(b).unwrap();
                    if i == j {
                        assert_eq!(&p, a, "{g} e_{i}");
                    } else {
                        assert!(p.is_zero(), "{g} e_{i} e_{j}");
                    }
                }
            }
            assert!(sum.is_one(), "{g}");
        }
    }

    #[test]
    fn every_nontrivial_idempotent_has_negation_witness() {
        let groups = [1, 2, 3, 4, 5]
            .map(AbGroup::Cyclic)
            .into_iter()
            .chain([AbGroup::Product(2, 2), AbGroup::Product(2, 4)]);
        for g in groups {
            let t = CharacterTable::new(g).unwrap();
            let all = t.all_idempotents().unwrap();
            let nontrivial: Vec<_> = all.iter().filter(|a| !a.is_trivial()).collect();
            assert_eq!(nontrivial.len(), (1usize << g.order()) - 2, "{g}");
            for a in nontrivial {
                let w = negation_witness(a).unwrap();
                assert_eq!(w.beta.square(), *a);
                assert_eq!(a.checked_mul(&w.beta).unwrap(), w.beta);
                let mask = t.character_mask(a).unwrap();
                assert_eq!(t.co_idempotents(a).unwrap().len(), (1 << mask.len()) - 1);
            }
        }
    }

    #[test]
    fn mask_examples() {
        let t = CharacterTable::new(AbGroup::Cyclic(3)).unwrap();
        let a1 = t.idempotent_from_mask(&[1, 2]).unwrap();
        let k = t.field();
        let want = vec![
            k.from_rational(q(2, 3)),
            k.from_rational(q(-1, 3)),
            k.from_rational(q(-1, 3)),
        ];
        assert_eq!(a1.dense(), want);
        assert_eq!(a1.to_string(), "2/3 - 1/3*g - 1/3*g^2");
        assert!(t.idempotent_from_mask(&[]).unwrap().is_zero());
        assert!(t.idempotent_from_mask(&[0, 1, 2]).unwrap().is_one());
        let all = t.all_idempotents().unwrap();
        assert_eq!(all.len(), 8);
        assert_eq!(all.iter().filter(|a| !a.is_trivial()).count(), 6);
        assert!(t.idempotent_from_mask(&[3]).is_err());
    }

    #[test]
    fn negation_examples() {
        let t = CharacterTable::new(AbGroup::Cyclic(3)).unwrap();
        let a1 = t.idempotent_from_mask(&[1, 2]).unwrap();
        let w = negation_witness(&a1).unwrap();
        let k = t.field();
        assert_eq!(
            w.beta.dense(),
            vec![
                k.from_rational(q(-2, 3)),
                k.from_rational(q(1, 3)),
                k.from_rational(q(1, 3))
            ]
        );
        assert_eq!(w.law, WitnessLaw::AbsorbWitness);
        for e in t.primitive_idempotents() {
            assert!(negation_witness(e).is_ok());
        }
        let klein = CharacterTable::new(AbGroup::Product(2, 2)).unwrap();
        assert!(negation_witness(&klein.idempotent_from_mask(&[0]).unwrap()).is_ok());
        assert!(negation_witness(&AlgElement::one(AbGroup::Cyclic(3), RationalField)).is_err());
        let not_idem = AlgElement::monomial(AbGroup::Cyclic(3), RationalField, 1, q(1, 1));
        assert!(matches!(
            negation_witness(&not_idem),
            Err(Error::NotIdempotent(_))
        ));
    }

    #[test]
    fn co_idempotent_examples() {
        let t = CharacterTable::new(AbGroup::Cyclic(3)).unwrap();
        let a1 = t.idempotent_from_mask(&[1, 2]).unwrap();
        let cos = t.co_idempotents(&a1).unwrap();
        assert_eq!(cos.len(), 3);
        assert!(cos.contains(&a1.neg()));
        assert!(!cos.contains(&a1));

        let e1 = t.primitive_idempotents()[1].clone();
        assert_eq!(t.co_idempotents(&e1).unwrap(), vec![e1.neg()]);

        let c2 = CharacterTable::new(AbGroup::Cyclic(2)).unwrap();
        let one = AlgElement::one(AbGroup::Cyclic(2), c2.field().clone());
        let cos = c2.co_idempotents(&one).unwrap();
        // ±g and −1
        let k = c2.field();
        let g = AlgElement::monomial(AbGroup::Cyclic(2), k.clone(), 1, k.one());
        assert_eq!(cos.len(), 3);
        assert!(cos.contains(&g) && cos.contains(&g.neg()) && cos.contains(&one.neg()));
    }

    #[test]
    fn character_round_trip() {
        let t = CharacterTable::new(AbGroup::Cyclic(4)).unwrap();
        let k = t.field().clone();
        let a = AlgElement::from_dense(
            AbGroup::Cyclic(4),
            k.clone(),
            vec![
                k.from_rational(q(1, 2)),
                k.zeta(),
                k.zero(),
                k.from_rational(q(-3, 5)),
            ],
        )
        .unwrap();
        let v = t.character_values(&a).unwrap();
        assert_eq!(t.from_character_values(&v).unwrap(), a);
        assert!(matches!(t.character_mask(&a), Err(Error::NotIdempotent(_))));
    }
}
