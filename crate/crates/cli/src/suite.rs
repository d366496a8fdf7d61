//! The `paper` verification suite: twelve acceptance criteria, each with a time limit.
//!
//! Every criterion re-checks library output against an oracle that does
//! not share code with the routine under test (naive parity convolution,
//! trial division, direct subset sums).

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sidem_core::constructions::{
    basic_pair, enumerate_basic_pairs, s_count_formula, sum_pair, theorem_1_3_pair, verify_census,
};
use sidem_core::exact_algebra::{
    negation_witness, parse_rational, subgroup_idempotent_pair, AbGroup, CharacterTable,
    CyclotomicField, PrimeField, RationalField, Requirement, SubgroupCase,
};
use sidem_core::idem_enum::{
    brute_force_idempotents, enumerate_idempotents, hensel_lift, lift_to_even,
};
use sidem_core::numtheory::{fermat_divisibility, lucas_lehmer, odd_part};
use sidem_core::s_classify::{
    check_witness, classify, search_witness, transfer_complement, SquareRootSolver, WitnessLaw,
    WitnessMethod, DEFAULT_KERNEL_CAP,
};
use sidem_core::Gf2Element;

pub const DEFAULT_SEED: u64 = 20240917;

#[derive(Debug, Clone, Copy)]
pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub limit: Duration,
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

pub const CRITERIA: [Criterion; 12] = [
    Criterion {
        id: 1,
        name: "census_p3",
        limit: secs(1),
    },
    Criterion {
        id: 2,
        name: "census_p7",
        limit: secs(1),
    },
    Criterion {
        id: 3,
        name: "census_p31",
        limit: secs(10),
    },
    Criterion {
        id: 4,
        name: "basic_pair_p31_l1",
        limit: secs(1),
    },
    Criterion {
        id: 5,
        name: "odd_modulus_no_s",
        limit: secs(30),
    },
    Criterion {
        id: 6,
        name: "enumeration_oracles",
        limit: secs(60),
    },
    Criterion {
        id: 7,
        name: "all_even_pairs_q_le_101",
        limit: secs(10),
    },
    Criterion {
        id: 8,
        name: "subset_sums_and_complements",
        limit: secs(10),
    },
    Criterion {
        id: 9,
        name: "cyclic3_over_q_zeta3",
        limit: secs(1),
    },
    Criterion {
        id: 10,
        name: "klein_group_negation",
        limit: secs(1),
    },
    Criterion {
        id: 11,
        name: "subgroup_sum_cases",
        limit: secs(1),
    },
    Criterion {
        id: 12,
        name: "mersenne_number_theory",
        limit: secs(5),
    },
];

#[derive(Debug, Clone)]
pub struct Outcome {
    pub criterion: Criterion,
    /// All mathematical checks held.
    pub holds: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl Outcome {
    pub fn within_limit(&self) -> bool {
        self.elapsed <= self.criterion.limit
    }

    pub fn passed(&self) -> bool {
        self.holds && self.within_limit()
    }

    /// Check name used in certificates, e.g. `criterion_03_census_p31`.
    pub fn check_name(&self) -> String {
        format!("criterion_{:02}_{}", self.criterion.id, self.criterion.name)
    }

    pub fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let time = if self.within_limit() {
            ""
        } else {
            " OVER TIME LIMIT"
        };
        format!(
            "[{status}] criterion {}: {} ({:.3} s, limit {} s{time}): {}",
            self.criterion.id,
            self.criterion.name,
            self.elapsed.as_secs_f64(),
            self.criterion.limit.as_secs(),
            self.detail
        )
    }
}

pub fn run_paper_suite(seed: u64) -> Vec<Outcome> {
    CRITERIA.iter().map(|c| run_criterion(c, seed)).collect()
}

pub fn run_criterion(criterion: &Criterion, seed: u64) -> Outcome {
    let start = Instant::now();
    let result = match criterion.id {
        1 => census_small(3, 2),
        2 => census_p7(),
        3 => census_p31(),
        4 => basic_pair_fixture(),
        5 => odd_moduli(seed),
        6 => enumeration_oracles(),
        7 => all_even_pairs(),
        8 => subset_sums(),
        9 => cyclic3(),
        10 => klein(),
        11 => subgroup_cases(),
        12 => number_theory(),
        _ => Err(format!("no criterion {}", criterion.id)),
    };
    let elapsed = start.elapsed();
    let (holds, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Outcome {
        criterion: *criterion,
        holds,
        detail,
        elapsed,
    }
}

/// Census of Z₂[C₂₅₄]: 2(2¹⁸ − 1) nontrivial idempotents, every one with a
/// verified constructed witness.
pub fn stretch_census_p127() -> Result<String, String> {
    let report = verify_census(127).map_err(|e| e.to_string())?;
    ensure(report.passed(), || {
        format!(
            "census failures: {:?}",
            report.failures.iter().take(3).collect::<Vec<_>>()
        )
    })?;
    Ok(format!(
        "{} nontrivial = {}, {} witnesses verified",
        report.nontrivial, report.expected, report.witnesses_verified
    ))
}

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: sidem_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Parity convolution in Z₂[Cₙ] on raw supports.
fn naive_mul(n: usize, a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut parity = vec![false; n];
    for &i in a {
        for &j in b {
            parity[(i + j) % n] ^= true;
        }
    }
    (0..n).filter(|&k| parity[k]).collect()
}

fn naive_add(n: usize, a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut parity = vec![false; n];
    for &i in a.iter().chain(b) {
        parity[i] ^= true;
    }
    (0..n).filter(|&k| parity[k]).collect()
}

/// Checks `β² = x`, the stated law and `β ∉ {0, 1, x}` by naive convolution.
fn naive_witness(n: usize, x: &[usize], beta: &[usize], law: WitnessLaw) -> Result<(), String> {
    let xb = naive_mul(n, x, beta);
    let law_holds = match law {
        WitnessLaw::AbsorbWitness => xb == beta,
        WitnessLaw::AbsorbIdempotent => xb == x,
    };
    ensure(naive_mul(n, x, x) == x, || {
        format!("{x:?} is not idempotent mod {n}")
    })?;
    ensure(naive_mul(n, beta, beta) == x, || {
        format!("β² ≠ x for x = {x:?}, β = {beta:?}")
    })?;
    ensure(law_holds, || {
        format!("{law} fails for x = {x:?}, β = {beta:?}")
    })?;
    ensure(!beta.is_empty() && beta != [0] && beta != x, || {
        format!("β = {beta:?} is trivial or equals x")
    })
}

fn census_small(p: u64, expected: usize) -> Check {
    let n = 2 * p as usize;
    let report = lib(classify(n, DEFAULT_KERNEL_CAP))?;
    let formula = lib(s_count_formula(p))?;
    ensure(report.nontrivial == expected, || {
        format!("{} nontrivial, want {expected}", report.nontrivial)
    })?;
    ensure(report.s_count == expected, || {
        format!("{} S, want {expected}", report.s_count)
    })?;
    ensure(formula == expected.into(), || {
        format!("formula gives {formula}")
    })?;
    for e in &report.entries {
        let w = e
            .witness()
            .ok_or_else(|| format!("{} has no witness", e.idempotent))?;
        naive_witness(n, &e.idempotent.support(), &w.beta.support(), w.law)?;
    }
    Ok(format!(
        "{} nontrivial, all S, formula {formula}",
        report.nontrivial
    ))
}

fn census_p7() -> Check {
    let head = census_small(7, 6)?;
    let solver = lib(SquareRootSolver::new(14))?;
    ensure(solver.kernel_dim() == 7, || {
        format!("kernel dim {}", solver.kernel_dim())
    })?;
    for x in lib(enumerate_idempotents(14))?
        .iter()
        .filter(|x| !x.is_trivial())
    {
        let w = lib(search_witness(x, 7))?
            .ok_or_else(|| format!("exhaustive search finds no witness for {x}"))?;
        naive_witness(14, &x.support(), &w.beta.support(), w.law)?;
    }
    Ok(format!(
        "{head}; exhaustive search over 2^7 roots confirms all 6"
    ))
}

fn census_p31() -> Check {
    let n = 62;
    let report = lib(classify(n, DEFAULT_KERNEL_CAP))?;
    ensure(report.nontrivial == 126, || {
        format!("{} nontrivial, want 126", report.nontrivial)
    })?;
    ensure(lib(s_count_formula(31))? == 126u32.into(), || {
        "formula is not 126".into()
    })?;
    for e in &report.entries {
        let w = e
            .witness()
            .ok_or_else(|| format!("{} is not S", e.idempotent))?;
        ensure(w.method == WitnessMethod::Constructed, || {
            format!("{} witness was searched", e.idempotent)
        })?;
        naive_witness(n, &e.idempotent.support(), &w.beta.support(), w.law)?;
    }
    let alphas: Vec<Vec<usize>> = lib(enumerate_basic_pairs(31))?
        .iter()
        .map(|bp| bp.alpha.support())
        .collect();
    ensure(alphas.len() == 6, || {
        format!("{} basic pairs", alphas.len())
    })?;
    let mut family = BTreeSet::new();
    for mask in 1u32..1 << alphas.len() {
        let sum = alphas
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold(Vec::new(), |acc, (_, a)| naive_add(n, &acc, a));
        family.insert(naive_add(n, &sum, &[0]));
        family.insert(sum);
    }
    let found: BTreeSet<Vec<usize>> = report
        .entries
        .iter()
        .map(|e| e.idempotent.support())
        .collect();
    ensure(found == family, || {
        format!(
            "census differs from subset-sum family ({} vs {})",
            found.len(),
            family.len()
        )
    })?;
    Ok("126 nontrivial, all S by construction, equal to subset sums and complements".into())
}

fn basic_pair_fixture() -> Check {
    let bp = lib(basic_pair(31, 1))?;
    let (a, b) = (bp.alpha.support(), bp.beta.support());
    ensure(a == [2, 4, 8, 16, 32], || format!("α = {a:?}"))?;
    ensure(b == [1, 33, 35, 39, 47], || format!("β = {b:?}"))?;
    naive_witness(62, &a, &b, WitnessLaw::AbsorbWitness)?;
    Ok(format!(
        "α = {}, β = {}",
        bp.alpha.notation(),
        bp.beta.notation()
    ))
}

fn odd_moduli(seed: u64) -> Check {
    for n in [3, 5, 7, 9, 11, 13, 15] {
        let report = lib(classify(n, DEFAULT_KERNEL_CAP))?;
        ensure(report.nontrivial >= 2, || {
            format!("n = {n}: {} nontrivial", report.nontrivial)
        })?;
        ensure(
            report.s_count == 0 && report.not_s_count == report.nontrivial,
            || {
                format!(
                    "n = {n}: {} S, {} undecided",
                    report.s_count, report.inconclusive_count
                )
            },
        )?;
        // the square-root kernel is trivial, so the unique root is the only candidate
        let solver = lib(SquareRootSolver::new(n))?;
        for x in lib(enumerate_idempotents(n))?
            .iter()
            .filter(|x| !x.is_trivial())
        {
            let root = lib(solver.roots(x))?.ok_or_else(|| format!("{x} has no root"))?;
            ensure(root.dim() == 0 && root.particular == *x, || {
                format!("n = {n}: {x} has another square root")
            })?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = 0;
    for n in (1..=101).step_by(2) {
        let solver = lib(SquareRootSolver::new(n))?;
        ensure(solver.kernel_dim() == 0, || {
            format!("n = {n}: kernel dim {}", solver.kernel_dim())
        })?;
        for _ in 0..1000 {
            let y = lib(Gf2Element::from_exponents(
                n,
                (0..n).filter(|_| rng.gen::<bool>()),
            ))?;
            let x = Gf2Element::from_exponents(n, naive_mul(n, &y.support(), &y.support()))
                .expect("n ≥ 1");
            let root = lib(solver.roots(&x))?.ok_or_else(|| format!("n = {n}: {x} has no root"))?;
            ensure(root.dim() == 0 && root.particular == y, || {
                format!("n = {n}: root of {x} is not unique")
            })?;
            samples += 1;
        }
    }
    Ok(format!(
        "no S for n in 3..15 odd; {samples} random square roots unique for odd n ≤ 101"
    ))
}

fn enumeration_oracles() -> Check {
    let mut lifts = 0;
    for n in 1..=16 {
        let fast: BTreeSet<Gf2Element> = lib(enumerate_idempotents(n))?.into_iter().collect();
        let brute: BTreeSet<Gf2Element> = lib(brute_force_idempotents(n))?.into_iter().collect();
        ensure(fast == brute, || {
            format!("n = {n}: {} vs {} idempotents", fast.len(), brute.len())
        })?;
        let (a, m) = odd_part(n);
        if a > 0 {
            for e in lib(enumerate_idempotents(m))? {
                let (h, s) = (lib(hensel_lift(&e, n))?, lib(lift_to_even(&e, n))?);
                ensure(h == s, || format!("n = {n}: lifts of {e} disagree"))?;
                lifts += 1;
            }
        }
    }
    Ok(format!(
        "coset enumeration equals brute force for n ≤ 16; {lifts} lifts agree"
    ))
}

fn is_prime_trial(u: u64) -> bool {
    u >= 2 && (2..).take_while(|d| d * d <= u).all(|d| u % d != 0)
}

fn all_even_pairs() -> Check {
    let primes: Vec<u64> = (3..=101).filter(|&q| is_prime_trial(q)).collect();
    for &q in &primes {
        let pair = lib(theorem_1_3_pair(q))?;
        let n = 2 * q as usize;
        let (a, b) = (pair.alpha.support(), pair.beta.support());
        ensure(a == (2..n).step_by(2).collect::<Vec<_>>(), || {
            format!("q = {q}: α = {a:?}")
        })?;
        naive_witness(n, &a, &b, WitnessLaw::AbsorbWitness).map_err(|e| format!("q = {q}: {e}"))?;
    }
    Ok(format!("{} odd primes q ≤ 101 pass", primes.len()))
}

fn subset_sums() -> Check {
    let mut total = 0;
    for p in [3u64, 7, 31] {
        let n = 2 * p as usize;
        let pairs = lib(enumerate_basic_pairs(p))?;
        let m = pairs.len();
        for mask in 1u32..1 << m {
            let chosen: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, bp)| bp)
                .collect();
            let sp = lib(sum_pair(&chosen))?;
            let mut cross = Vec::new();
            for (i, ai) in chosen.iter().enumerate() {
                for (j, bj) in chosen.iter().enumerate() {
                    if i != j {
                        cross = naive_add(
                            n,
                            &cross,
                            &naive_mul(n, &ai.alpha.support(), &bj.beta.support()),
                        );
                    }
                }
            }
            ensure(cross.is_empty(), || {
                format!("p = {p}, mask {mask:b}: cross terms {cross:?}")
            })?;
            naive_witness(
                n,
                &sp.alpha.support(),
                &sp.beta.support(),
                WitnessLaw::AbsorbWitness,
            )?;
            let w = lib(check_witness(&sp.alpha, &sp.beta))?
                .ok_or("sum pair rejected by check_witness")?;
            let c = lib(transfer_complement(&sp.alpha, &w))?;
            let x1 = naive_add(n, &sp.alpha.support(), &[0]);
            ensure(
                c.beta.support() == naive_add(n, &sp.beta.support(), &[0]),
                || "complement witness is not 1 + β".into(),
            )?;
            naive_witness(n, &x1, &c.beta.support(), c.law)?;
            ensure(c.law == WitnessLaw::AbsorbIdempotent, || {
                format!("complement law {}", c.law)
            })?;
            total += 1;
        }
    }
    Ok(format!(
        "{total} subset sums (1 + 3 + 63) and their complements verified"
    ))
}

fn cyclic3() -> Check {
    let table = lib(CharacterTable::new(AbGroup::Cyclic(3)))?;
    let k: CyclotomicField = table.field().clone();
    let q = |s: &str| k.from_rational(parse_rational(s).expect("literal"));
    let all = lib(table.all_idempotents())?;
    let nontrivial: Vec<_> = all.iter().filter(|a| !a.is_trivial()).collect();
    ensure(nontrivial.len() == 6, || {
        format!("{} nontrivial", nontrivial.len())
    })?;
    let a1 = lib(table.idempotent_from_mask(&[1, 2]))?;
    ensure(a1.dense() == vec![q("2/3"), q("-1/3"), q("-1/3")], || {
        format!("mask {{1,2}} gives {a1}")
    })?;
    let cos = lib(table.co_idempotents(&a1))?;
    let minus = vec![q("-2/3"), q("1/3"), q("1/3")];
    ensure(cos.len() == 3, || format!("{} co-idempotents", cos.len()))?;
    ensure(cos.iter().any(|b| b.dense() == minus), || {
        "−α₁ missing from co-idempotents".into()
    })?;
    for a in &nontrivial {
        let w = lib(negation_witness(a))?;
        ensure(
            w.beta.square() == **a && lib(a.checked_mul(&w.beta))? == w.beta,
            || format!("−α fails for {a}"),
        )?;
    }
    Ok(format!(
        "6 nontrivial; α₁ = {a1}; 3 co-idempotents; 6 negation witnesses"
    ))
}

fn klein() -> Check {
    let table = lib(CharacterTable::new(AbGroup::Product(2, 2)))?;
    let all = lib(table.all_idempotents())?;
    let nontrivial: Vec<_> = all.iter().filter(|a| !a.is_trivial()).collect();
    ensure(nontrivial.len() == 14, || {
        format!("{} nontrivial", nontrivial.len())
    })?;
    for a in &nontrivial {
        let w = lib(negation_witness(a))?;
        ensure(
            w.beta.square() == **a && lib(a.checked_mul(&w.beta))? == w.beta,
            || format!("−α fails for {a}"),
        )?;
        ensure(!w.beta.is_trivial() && w.beta != **a, || {
            format!("−α trivial for {a}")
        })?;
    }
    Ok("14 nontrivial idempotents, all with verified negation witnesses".into())
}

fn subgroup_cases() -> Check {
    let f5 = lib(PrimeField::new(5))?;
    let c1 = lib(subgroup_idempotent_pair(
        &f5,
        4,
        2,
        SubgroupCase::FourthPowerOne,
    ))?;
    ensure(
        c1.alpha.dense() == [3, 0, 3, 0] && c1.beta.dense() == [2, 0, 2, 0],
        || "case 1 elements differ".into(),
    )?;
    ensure(c1.is_valid(), || format!("case 1 fails {:?}", c1.failed()))?;
    let f3 = lib(PrimeField::new(3))?;
    let c2 = lib(subgroup_idempotent_pair(&f3, 4, 2, SubgroupCase::SquareOne))?;
    ensure(
        c2.alpha.dense() == [2, 0, 2, 0] && c2.beta.dense() == [1, 0, 1, 0],
        || "case 2 elements differ".into(),
    )?;
    ensure(c2.is_valid(), || format!("case 2 fails {:?}", c2.failed()))?;
    let c3 = lib(subgroup_idempotent_pair(
        &RationalField,
        4,
        2,
        SubgroupCase::PrimeTwo,
    ))?;
    ensure(c3.beta == c3.alpha, || {
        format!("case 3 β = {} differs from α", c3.beta)
    })?;
    ensure(c3.failed() == [Requirement::BetaOutsideTrivial], || {
        format!("case 3 failures {:?}", c3.failed())
    })?;
    Ok(format!(
        "case 1 over F_5 and case 2 over F_3 valid; case 3 over Q INVALID ({})",
        Requirement::BetaOutsideTrivial
    ))
}

fn number_theory() -> Check {
    for k in 2..=31u32 {
        let ll = lib(lucas_lehmer(k))?;
        let td = is_prime_trial((1u64 << k) - 1);
        ensure(ll == td, || {
            format!("k = {k}: Lucas-Lehmer {ll}, trial division {td}")
        })?;
    }
    let primes: Vec<u64> = (2..=97).filter(|&k| is_prime_trial(k)).collect();
    for &k in &primes {
        ensure(lib(fermat_divisibility(k))?, || format!("k = {k} fails"))?;
    }
    Ok(format!(
        "Lucas-Lehmer agrees for k ≤ 31; divisibility holds for {} primes ≤ 97",
        primes.len()
    ))
}
