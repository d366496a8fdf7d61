//! Idempotents `α = p⁻¹ Σ_{x∈H} x` for a subgroup `H` of prime order `p`,
//! with the candidate witnesses attached to three hypotheses on `p`.

use std::fmt;

use super::algebra::AlgElement;
use super::field::Field;
use super::group::AbGroup;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubgroupCase {
    /// `p³ = p⁻¹`, i.e. `p⁴ = 1`; witness `p·σ`.
    FourthPowerOne,
    /// `p = p⁻¹`, i.e. `p² = 1`; witness `σ`.
    SquareOne,
    /// `p = 2`; witness `(1 + g^{n/2}) − α`.
    PrimeTwo,
}

impl SubgroupCase {
    pub fn from_number(c: u8) -> Option<Self> {
        match c {
            1 => Some(SubgroupCase::FourthPowerOne),
            2 => Some(SubgroupCase::SquareOne),
            3 => Some(SubgroupCase::PrimeTwo),
            _ => None,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            SubgroupCase::FourthPowerOne => 1,
            SubgroupCase::SquareOne => 2,
            SubgroupCase::PrimeTwo => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Requirement {
    AlphaNontrivialIdempotent,
    BetaSquaresToAlpha,
    AlphaAbsorbsBeta,
    BetaOutsideTrivial,
}

impl Requirement {
    pub const ALL: [Requirement; 4] = [
        Requirement::AlphaNontrivialIdempotent,
        Requirement::BetaSquaresToAlpha,
        Requirement::AlphaAbsorbsBeta,
        Requirement::BetaOutsideTrivial,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Requirement::AlphaNontrivialIdempotent => "alpha_nontrivial_idempotent",
            Requirement::BetaSquaresToAlpha => "beta_squared_eq_alpha",
            Requirement::AlphaAbsorbsBeta => "alpha_beta_eq_beta",
            Requirement::BetaOutsideTrivial => "beta_not_in_0_1_alpha",
        }
    }
}

impl fmt::Display for Requirement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone)]
pub struct SubgroupPair<F: Field> {
    pub alpha: AlgElement<F>,
    pub beta: AlgElement<F>,
    pub case: SubgroupCase,
    pub checks: Vec<(Requirement, bool)>,
}

impl<F: Field> SubgroupPair<F> {
    /// True only when every requirement holds.
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn failed(&self) -> Vec<Requirement> {
        self.checks
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(r, _)| *r)
            .collect()
    }
}

/// Builds `α = p⁻¹·σ` with `σ = Σ_{x∈H} x` in `F[C_n]` and the witness the
/// chosen case prescribes, then reports which witness requirements hold.
/// Hypothesis violations (`p ∤ n`, `p` not a unit, case condition false)
/// are errors; a failed requirement is reported, never asserted away.
pub fn subgroup_idempotent_pair<F: Field>(
    field: &F,
    n: usize,
    p: u64,
    case: SubgroupCase,
) -> Result<SubgroupPair<F>> {
    let group = AbGroup::cyclic(n)?;
    if !crate::numtheory::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n as u64 % p != 0 {
        return Err(Error::Hypothesis(format!("{p} does not divide {n}")));
    }
    let p_elem = field.from_integer(p as i64);
    let p_inv = field
        .inv(&p_elem)
        .ok_or_else(|| Error::Hypothesis(format!("{p} is not a unit in {}", field.name())))?;
    let one = field.one();
    let holds = match case {
        SubgroupCase::FourthPowerOne => field.pow(&p_elem, 4) == one,
        SubgroupCase::SquareOne => field.pow(&p_elem, 2) == one,
        SubgroupCase::PrimeTwo => p == 2,
    };
    if !holds {
        return Err(Error::Hypothesis(format!(
            "case {} condition fails for p = {p} in {}",
            case.number(),
            field.name()
        )));
    }

    let h = group.cyclic_subgroup(p as usize)?;
    let sigma = AlgElement::uniform(group, field.clone(), &h, field.one());
    let alpha = sigma.scale(&p_inv);
    let beta = match case {
        SubgroupCase::FourthPowerOne => sigma.scale(&p_elem),
        SubgroupCase::SquareOne => sigma.clone(),
        SubgroupCase::PrimeTwo => {
            let mut base = AlgElement::one(group, field.clone());
            base = base.checked_add(&AlgElement::monomial(
                group,
                field.clone(),
                n / 2,
                field.one(),
            ))?;
            base.checked_sub(&alpha)?
        }
    };

    let unit = AlgElement::one(group, field.clone());
    let checks = vec![
        (
            Requirement::AlphaNontrivialIdempotent,
            alpha.is_idempotent() && !alpha.is_trivial(),
        ),
        (Requirement::BetaSquaresToAlpha, beta.square() == alpha),
        (
            Requirement::AlphaAbsorbsBeta,
            alpha.checked_mul(&beta)? == beta,
        ),
        (
            Requirement::BetaOutsideTrivial,
            !beta.is_zero() && beta != unit && beta != alpha,
        ),
    ];
    Ok(SubgroupPair {
        alpha,
        beta,
        case,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::field::{PrimeField, RationalField};

    #[test]
    fn case_one_over_f5() {
        let f = PrimeField::new(5).unwrap();
        let r = subgroup_idempotent_pair(&f, 4, 2, SubgroupCase::FourthPowerOne).unwrap();
        assert_eq!(r.alpha.dense(), vec![3, 0, 3, 0]);
        assert_eq!(r.beta.dense(), vec![2, 0, 2, 0]);
        assert!(r.is_valid(), "{:?}", r.checks);
    }

    #[test]
    fn case_two_over_f3() {
        let f = PrimeField::new(3).unwrap();
        let r = subgroup_idempotent_pair(&f, 4, 2, SubgroupCase::SquareOne).unwrap();
        assert_eq!(r.alpha.dense(), vec![2, 0, 2, 0]);
        assert_eq!(r.beta.dense(), vec![1, 0, 1, 0]);
        assert!(r.is_valid());
    }

    #[test]
    fn case_three_over_q_is_invalid() {
        let r = subgroup_idempotent_pair(&RationalField, 4, 2, SubgroupCase::PrimeTwo).unwrap();
        assert_eq!(r.beta, r.alpha);
        assert!(!r.is_valid());
        assert_eq!(r.failed(), vec![Requirement::BetaOutsideTrivial]);
    }

    #[test]
    fn hypothesis_violations() {
        let f5 = PrimeField::new(5).unwrap();
        // 2² = 4 ≠ 1 in F_5
        assert!(matches!(
            subgroup_idempotent_pair(&f5, 4, 2, SubgroupCase::SquareOne),
            Err(Error::Hypothesis(_))
        ));
        // 3 ∤ 4
        assert!(subgroup_idempotent_pair(&f5, 4, 3, SubgroupCase::FourthPowerOne).is_err());
        // 2 is not a unit in F_2
        let f2 = PrimeField::new(2).unwrap();
        assert!(subgroup_idempotent_pair(&f2, 4, 2, SubgroupCase::PrimeTwo).is_err());
        // case 1 over Q needs 2⁴ = 1
        assert!(
            subgroup_idempotent_pair(&RationalField, 4, 2, SubgroupCase::FourthPowerOne).is_err()
        );
        assert!(subgroup_idempotent_pair(&RationalField, 6, 3, SubgroupCase::PrimeTwo).is_err());
    }
}
