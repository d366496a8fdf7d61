//! Explicit S-idempotents of Z₂[C_{2p}].
//!
//! For a Mersenne prime `p = 2^k − 1` and odd `l < p`, the basic element
//! `α = g^{2l} + g^{4l} + … + g^{2^k l}` is an S-idempotent with witness
//! `β = Σ g^{t_i}`, where `t_1 = l` and, for `i ≥ 2`, `x_i ≡ 2^i·l (mod 2p)`
//! and `t_i` is `x_i/2` or `x_i/2 + p`, whichever is odd. Sums of distinct
//! basic pairs are again pairs, and together with their complements they
//! account for every nontrivial idempotent of the ring.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf2_ring::Gf2Element;
use crate::idem_enum::{enumerate_idempotents, CENSUS_CAP_LOG2};
use crate::numtheory::{cyclotomic_cosets, is_prime, mersenne_exponent, MersenneWitness};
use crate::s_classify::{check_witness, transfer_complement, SWitness, WitnessLaw, WitnessMethod};

/// Parameters of one basic pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicSpec {
    pub p: u64,
    pub k: u32,
    pub l: u64,
    /// `(p − 1) / k`
    pub m: u64,
    /// `x_2 … x_k`
    pub x: Vec<u64>,
    /// `t_1 … t_k`
    pub t: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicPair {
    pub alpha: Gf2Element,
    pub beta: Gf2Element,
    pub spec: BasicSpec,
}

/// An idempotent together with a witness satisfying `β² = α`, `αβ = β`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SPair {
    pub alpha: Gf2Element,
    pub beta: Gf2Element,
}

fn mersenne(p: u64) -> Result<MersenneWitness> {
    mersenne_exponent(p).ok_or(Error::NotMersenne(p))
}

fn verify_absorbing(alpha: &Gf2Element, beta: &Gf2Element) -> Result<()> {
    if beta.square() != *alpha {
        return Err(Error::ConstructionFailed(format!(
            "β² ≠ α for α = {}",
            alpha.notation()
        )));
    }
    if alpha * beta != *beta {
        return Err(Error::ConstructionFailed(format!(
            "αβ ≠ β for α = {}",
            alpha.notation()
        )));
    }
    Ok(())
}

/// Derives `x_i` and `t_i` for odd `l` modulo `2p`.
pub fn basic_spec(p: u64, l: u64) -> Result<BasicSpec> {
    let w = mersenne(p)?;
    if l % 2 == 0 || l == 0 || l >= p {
        return Err(Error::OutOfRange {
            value: l,
            reason: format!("l must be odd with 0 < l < {p}"),
        });
    }
    let n = 2 * p;
    let mut x = Vec::with_capacity(w.k as usize - 1);
    let mut t = vec![l];
    let mut power = (2 * l) % n;
    for _ in 2..=w.k {
        power = (2 * power) % n;
        let half = power / 2;
        x.push(power);
        t.push(if half % 2 == 1 { half } else { half + p });
    }
    Ok(BasicSpec {
        p,
        k: w.k,
        l,
        m: w.orbit_count(),
        x,
        t,
    })
}

/// The basic pair for `(p, l)`, checked before returning.
pub fn basic_pair(p: u64, l: u64) -> Result<BasicPair> {
    let spec = basic_spec(p, l)?;
    let n = 2 * p as usize;
    let mut orbit = Vec::with_capacity(spec.k as usize);
    let mut e = l as usize;
    for _ in 0..spec.k {
        e = (2 * e) % n;
        orbit.push(e);
    }
    let alpha = Gf2Element::from_exponents(n, orbit)?;
    if alpha.weight() != spec.k as usize {
        return Err(Error::ConstructionFailed(format!(
            "orbit of l = {l} has repeated exponents"
        )));
    }
    let beta = Gf2Element::from_exponents(n, spec.t.iter().map(|&t| t as usize))?;
    verify_absorbing(&alpha, &beta)?;
    Ok(BasicPair { alpha, beta, spec })
}

/// One basic pair per class of odd generators, ordered by class leader.
pub fn enumerate_basic_pairs(p: u64) -> Result<Vec<BasicPair>> {
    let w = mersenne(p)?;
    let pairs = cyclotomic_cosets(2 * p as usize, true)
        .into_iter()
        .map(|c| basic_pair(p, c.leader as u64))
        .collect::<Result<Vec<_>>>()?;
    debug_assert_eq!(pairs.len() as u64, w.orbit_count());
    Ok(pairs)
}

/// Sum of distinct basic pairs for one `p`. Besides `β² = α` and
/// `αβ = β`, checks that the cross terms `Σ_{i≠j} α_i β_j` vanish.
pub fn sum_pair(pairs: &[&BasicPair]) -> Result<SPair> {
    let first = pairs
        .first()
        .ok_or_else(|| Error::InvalidPairs("empty selection".into()))?;
    let p = first.spec.p;
    let mut seen = HashSet::new();
    for bp in pairs {
        if bp.spec.p != p {
            return Err(Error::InvalidPairs(format!(
                "mixed p: {} and {}",
                p, bp.spec.p
            )));
        }
        if !seen.insert(&bp.alpha) {
            return Err(Error::InvalidPairs(format!(
                "duplicate pair for l = {}",
                bp.spec.l
            )));
        }
    }
    let n = first.alpha.modulus();
    let mut alpha = Gf2Element::zero(n)?;
    let mut beta = Gf2Element::zero(n)?;
    for bp in pairs {
        alpha = &alpha + &bp.alpha;
        beta = &beta + &bp.beta;
    }
    // Σ_{i≠j} α_i β_j grouped by i: α_i · (β − β_i)
    let mut cross = Gf2Element::zero(n)?;
    for bp in pairs {
        cross = &cross + &(&bp.alpha * &(&beta + &bp.beta));
    }
    if !cross.is_zero() {
        return Err(Error::ConstructionFailed(format!(
            "cross terms sum to {}",
            cross.notation()
        )));
    }
    verify_absorbing(&alpha, &beta)?;
    Ok(SPair { alpha, beta })
}

/// The pair at group order `2q` for an odd prime `q`: α is every nonzero
/// even exponent, β every odd exponent except `q`.
pub fn theorem_1_3_pair(q: u64) -> Result<SPair> {
    if q == 2 || !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let n = 2 * q as usize;
    let alpha = Gf2Element::from_exponents(n, (2..n).step_by(2))?;
    let beta = Gf2Element::from_exponents(n, (1..n).step_by(2).filter(|&e| e != q as usize))?;
    verify_absorbing(&alpha, &beta)?;
    Ok(SPair { alpha, beta })
}

/// `2(2^m − 1)` with `m = (p − 1)/k`.
pub fn s_count_formula(p: u64) -> Result<BigUint> {
    let w = mersenne(p)?;
    let m = w.orbit_count();
    let pow = BigUint::one() << m as usize;
    Ok((pow - BigUint::one()) * 2u32)
}

/// `2·Σ_{j=1..m} C(m, j)`, the subset count the closed form abbreviates.
pub fn s_count_binomial(m: u64) -> BigUint {
    let mut total = BigUint::zero();
    let mut c = BigUint::one();
    for j in 1..=m {
        c = c * (m - j + 1) / j;
        total += &c;
    }
    total * 2u32
}

/// Constructs witnesses for the explicit families at modulus `n`.
#[derive(Debug, Clone)]
pub struct WitnessBuilder {
    n: usize,
    basic: Vec<BasicPair>,
    even_all: Option<SPair>,
}

impl WitnessBuilder {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroModulus);
        }
        let mut builder = WitnessBuilder {
            n,
            basic: Vec::new(),
            even_all: None,
        };
        if n % 2 == 0 && n >= 6 {
            let q = (n / 2) as u64;
            if mersenne_exponent(q).is_some() {
                builder.basic = enumerate_basic_pairs(q)?;
            }
            if is_prime(q) {
                builder.even_all = Some(theorem_1_3_pair(q)?);
            }
        }
        Ok(builder)
    }

    fn basic_decomposition(&self, x: &Gf2Element) -> Option<Vec<&BasicPair>> {
        if self.basic.is_empty() || x.is_zero() {
            return None;
        }
        let mut chosen = Vec::new();
        let mut covered = 0;
        for bp in &self.basic {
            let first = bp.alpha.exponents().next()?;
            if x.contains(first) {
                chosen.push(bp);
                covered += bp.alpha.weight();
            }
        }
        let sum = chosen
            .iter()
            .fold(Gf2Element::zero(self.n).ok()?, |acc, bp| &acc + &bp.alpha);
        (covered == x.weight() && sum == *x).then_some(chosen)
    }

    fn direct(&self, x: &Gf2Element) -> Option<Gf2Element> {
        if let Some(chosen) = self.basic_decomposition(x) {
            let beta = chosen
                .iter()
                .fold(Gf2Element::zero(self.n).ok()?, |acc, bp| &acc + &bp.beta);
            return Some(beta);
        }
        match &self.even_all {
            Some(pair) if pair.alpha == *x => Some(pair.beta.clone()),
            _ => None,
        }
    }

    /// A constructed witness for `x` or `1 + x`, re-verified through
    /// [`check_witness`]; `None` if `x` is outside every family.
    pub fn construct(&self, x: &Gf2Element) -> Result<Option<SWitness>> {
        if x.modulus() != self.n {
            return Err(Error::ModulusMismatch(x.modulus(), self.n));
        }
        if let Some(beta) = self.direct(x) {
            let w = check_witness(x, &beta)?.ok_or_else(|| {
                Error::ConstructionFailed(format!("built witness fails for {}", x.notation()))
            })?;
            return Ok(Some(w.with_method(WitnessMethod::Constructed)));
        }
        let x1 = x.complement_one();
        if let Some(beta) = self.direct(&x1) {
            let w = check_witness(&x1, &beta)?
                .ok_or_else(|| {
                    Error::ConstructionFailed(format!("built witness fails for {}", x1.notation()))
                })?
                .with_method(WitnessMethod::Constructed);
            return transfer_complement(&x1, &w).map(Some);
        }
        Ok(None)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CensusFailure {
    CountMismatch { expected: BigUint, found: usize },
    UnexpectedIdempotent(Gf2Element),
    MissingFamilyMember(Gf2Element),
    WitnessFailed(Gf2Element),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub p: u64,
    pub k: u32,
    pub m: u64,
    pub expected: BigUint,
    pub nontrivial: usize,
    pub family_size: usize,
    pub witnesses_verified: usize,
    pub failures: Vec<CensusFailure>,
}

impl CensusReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that the nontrivial idempotents of Z₂[C_{2p}] are exactly the
/// nonempty subset sums of basic α's together with their complements, that
/// their number is `2(2^m − 1)`, and that each carries a verified witness.
pub fn verify_census(p: u64) -> Result<CensusReport> {
    let w = mersenne(p)?;
    let m = w.orbit_count();
    let n = 2 * p as usize;
    if m + 1 > CENSUS_CAP_LOG2 as u64 {
        return Err(Error::CensusCap {
            n,
            cosets: m as usize + 1,
            cap: CENSUS_CAP_LOG2,
        });
    }
    let expected = s_count_formula(p)?;
    let pairs = enumerate_basic_pairs(p)?;
    let idempotents: Vec<Gf2Element> = enumerate_idempotents(n)?
        .into_iter()
        .filter(|x| !x.is_trivial())
        .collect();

    let mut failures = Vec::new();
    if BigUint::from(idempotents.len()) != expected {
        failures.push(CensusFailure::CountMismatch {
            expected: expected.clone(),
            found: idempotents.len(),
        });
    }

    let built: Vec<std::result::Result<[(Gf2Element, SWitness); 2], CensusFailure>> = (1u64..1
        << m)
        .into_par_iter()
        .map(|mask| {
            let chosen: Vec<&BasicPair> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, bp)| bp)
                .collect();
            let sum = sum_pair(&chosen).map_err(|_| {
                let alpha = chosen
                    .iter()
                    .fold(Gf2Element::zero(n).expect("n ≥ 1"), |a, bp| {
                        &a + &bp.alpha
                    });
                CensusFailure::WitnessFailed(alpha)
            })?;
            let witness = match check_witness(&sum.alpha, &sum.beta) {
                Ok(Some(w)) if w.law == WitnessLaw::AbsorbWitness => {
                    w.with_method(WitnessMethod::Constructed)
                }
                _ => return Err(CensusFailure::WitnessFailed(sum.alpha)),
            };
            let complement = transfer_complement(&sum.alpha, &witness)
                .map_err(|_| CensusFailure::WitnessFailed(sum.alpha.complement_one()))?;
            Ok([
                (sum.alpha.complement_one(), complement),
                (sum.alpha, witness),
            ])
        })
        .collect();

    let mut family = HashSet::new();
    let mut witnesses_verified = 0;
    for item in built {
        match item {
            Ok(entries) => {
                for (x, _) in entries {
                    witnesses_verified += 1;
                    family.insert(x);
                }
            }
            Err(f) => failures.push(f),
        }
    }
    let found: HashSet<&Gf2Element> = idempotents.iter().collect();
    for x in &idempotents {
        if !family.contains(x) {
            failures.push(CensusFailure::UnexpectedIdempotent(x.clone()));
        }
    }
    let mut missing: Vec<&Gf2Element> = family.iter().filter(|x| !found.contains(x)).collect();
    missing.sort();
    failures.extend(
        missing
            .into_iter()
            .map(|x| CensusFailure::MissingFamilyMember(x.clone())),
    );

    Ok(CensusReport {
        p,
        k: w.k,
        m,
        expected,
        nontrivial: idempotents.len(),
        family_size: family.len(),
        witnesses_verified,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(n: usize, exps: &[usize]) -> Gf2Element {
        Gf2Element::from_exponents(n, exps.iter().copied()).unwrap()
    }

    #[test]
    fn basic_pair_examples() {
        let bp = basic_pair(31, 1).unwrap();
        assert_eq!(bp.alpha, el(62, &[2, 4, 8, 16, 32]));
        assert_eq!(bp.beta, el(62, &[1, 33, 35, 39, 47]));
        assert_eq!(bp.spec.x, vec![4, 8, 16, 32]);
        assert_eq!(bp.spec.t, vec![1, 33, 35, 39, 47]);
        assert_eq!(bp.spec.m, 6);

        let bp = basic_pair(3, 1).unwrap();
        assert_eq!((bp.alpha, bp.beta), (el(6, &[2, 4]), el(6, &[1, 5])));

        let bp = basic_pair(7, 3).unwrap();
        assert_eq!(
            (bp.alpha.clone(), bp.beta.clone()),
            (el(14, &[6, 10, 12]), el(14, &[3, 5, 13]))
        );
        assert_eq!(bp.spec.x, vec![12, 10]);
        assert_eq!(bp.spec.t, vec![3, 13, 5]);
    }

    #[test]
    fn basic_pair_rejects_bad_input() {
        assert_eq!(basic_pair(5, 1), Err(Error::NotMersenne(5)));
        assert!(matches!(basic_pair(7, 2), Err(Error::OutOfRange { .. })));
        assert!(matches!(basic_pair(7, 9), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn same_class_gives_same_alpha() {
        assert_eq!(
            basic_pair(7, 3).unwrap().alpha,
            basic_pair(7, 5).unwrap().alpha
        );
    }

    #[test]
    fn enumerate_examples() {
        let pairs = enumerate_basic_pairs(7).unwrap();
        assert_eq!(pairs.len(), 2);
        assert_eq!(
            (pairs[0].alpha.clone(), pairs[0].beta.clone()),
            (el(14, &[2, 4, 8]), el(14, &[1, 9, 11]))
        );
        assert_eq!(
            (pairs[1].alpha.clone(), pairs[1].beta.clone()),
            (el(14, &[6, 10, 12]), el(14, &[3, 5, 13]))
        );
        assert_eq!(enumerate_basic_pairs(3).unwrap().len(), 1);

        let pairs = enumerate_basic_pairs(31).unwrap();
        assert_eq!(pairs.len(), 6);
        let mut union = Gf2Element::zero(62).unwrap();
        for bp in &pairs {
            assert_eq!(bp.alpha.weight(), 5);
            union = &union + &bp.alpha;
        }
        assert_eq!(
            union,
            Gf2Element::from_exponents(62, (2..62).step_by(2)).unwrap()
        );
        assert_eq!(union.weight(), 30);
    }

    #[test]
    fn sum_pair_examples() {
        let pairs = enumerate_basic_pairs(7).unwrap();
        let s = sum_pair(&[&pairs[0], &pairs[1]]).unwrap();
        assert_eq!(s.alpha, el(14, &[2, 4, 6, 8, 10, 12]));
        assert_eq!(s.beta, el(14, &[1, 3, 5, 9, 11, 13]));
        assert_eq!(s, theorem_1_3_pair(7).unwrap());

        let single = sum_pair(&[&pairs[1]]).unwrap();
        assert_eq!(
            (single.alpha, single.beta),
            (pairs[1].alpha.clone(), pairs[1].beta.clone())
        );

        assert!(matches!(sum_pair(&[]), Err(Error::InvalidPairs(_))));
        assert!(matches!(
            sum_pair(&[&pairs[0], &pairs[0]]),
            Err(Error::InvalidPairs(_))
        ));
        let other = basic_pair(3, 1).unwrap();
        assert!(matches!(
            sum_pair(&[&pairs[0], &other]),
            Err(Error::InvalidPairs(_))
        ));
    }

    #[test]
    fn cross_terms_vanish_pairwise_at_31() {
        let pairs = enumerate_basic_pairs(31).unwrap();
        for i in 0..pairs.len() {
            for j in i + 1..pairs.len() {
                let cross =
                    &(&pairs[i].alpha * &pairs[j].beta) + &(&pairs[j].alpha * &pairs[i].beta);
                assert!(
                    cross.is_zero(),
                    "l={} l={}",
                    pairs[i].spec.l,
                    pairs[j].spec.l
                );
            }
        }
    }

    #[test]
    fn theorem_1_3_examples() {
        let s = theorem_1_3_pair(5).unwrap();
        assert_eq!(
            (s.alpha, s.beta),
            (el(10, &[2, 4, 6, 8]), el(10, &[1, 3, 7, 9]))
        );
        let s = theorem_1_3_pair(3).unwrap();
        let bp = basic_pair(3, 1).unwrap();
        assert_eq!((s.alpha, s.beta), (bp.alpha, bp.beta));
        assert_eq!(theorem_1_3_pair(9), Err(Error::NotPrime(9)));
        assert_eq!(theorem_1_3_pair(2), Err(Error::NotPrime(2)));
    }

    #[test]
    fn count_formula_examples() {
        assert_eq!(s_count_formula(3).unwrap(), BigUint::from(2u32));
        assert_eq!(s_count_formula(7).unwrap(), BigUint::from(6u32));
        assert_eq!(s_count_formula(31).unwrap(), BigUint::from(126u32));
        assert_eq!(s_count_formula(127).unwrap(), BigUint::from(524286u32));
        for p in [3u64, 7, 31, 127, 8191] {
            let m = mersenne_exponent(p).unwrap().orbit_count();
            assert_eq!(s_count_formula(p).unwrap(), s_count_binomial(m));
        }
        assert_eq!(s_count_formula(11), Err(Error::NotMersenne(11)));
    }

    #[test]
    fn census_examples() {
        for (p, count) in [(3u64, 2usize), (7, 6), (31, 126)] {
            let r = verify_census(p).unwrap();
            assert!(r.passed(), "p={p}: {:?}", r.failures);
            assert_eq!(r.nontrivial, count);
            assert_eq!(r.family_size, count);
            assert_eq!(r.witnesses_verified, count);
        }
        assert!(matches!(verify_census(8191), Err(Error::CensusCap { .. })));
    }

    #[test]
    fn builder_covers_both_families() {
        let b = WitnessBuilder::new(14).unwrap();
        let w = b.construct(&el(14, &[0, 6, 10, 12])).unwrap().unwrap();
        assert_eq!(w.law, WitnessLaw::AbsorbIdempotent);
        assert_eq!(w.beta, el(14, &[0, 3, 5, 13]));

        // 10 = 2·5 with 5 not Mersenne: only the all-even family applies
        let b = WitnessBuilder::new(10).unwrap();
        assert!(b.construct(&el(10, &[2, 4, 6, 8])).unwrap().is_some());
        assert!(b.construct(&el(10, &[0, 2, 4, 6, 8])).unwrap().is_some());
        assert!(b.construct(&el(10, &[0])).unwrap().is_none());
    }
}
