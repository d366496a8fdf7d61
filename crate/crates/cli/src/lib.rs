//! `sidem`: constructions, censuses and witness certificates for
//! S-idempotents in Z₂[Cₙ] and in group algebras of finite abelian groups.
//!
//! Exit codes: 0 when every check passes, 2 when a mathematical check
//! fails, 1 on usage errors.

pub mod certificate;
pub mod suite;

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sidem_core::constructions::{
    basic_pair, s_count_formula, sum_pair, theorem_1_3_pair, verify_census, CensusFailure,
};
use sidem_core::exact_algebra::{
    negation_witness, subgroup_idempotent_pair, AbGroup, CharacterTable, Field, PrimeField,
    RationalField, SubgroupCase,
};
use sidem_core::idem_enum::{
    brute_force_idempotents, coset_count, enumerate_idempotents, BRUTE_FORCE_CAP,
};
use sidem_core::numtheory::{
    cyclotomic_cosets, fermat_divisibility, is_prime, lucas_lehmer, mersenne_exponent,
};
use sidem_core::s_classify::{
    check_witness, classify, transfer_complement, SquareRootSolver, Verdict, DEFAULT_KERNEL_CAP,
};
use sidem_core::{Error, Gf2Element};

use certificate::{Certificate, CoeffCodec, Descriptor, ElementRecord, Entry};

/// Largest group order accepted by `char0`.
pub const CHAR0_ORDER_CAP: usize = 8;
/// Largest group order for which `char0` lists co-idempotents.
pub const CO_IDEMPOTENT_ORDER_CAP: usize = 4;

#[derive(Debug, Parser)]
#[command(
    name = "sidem",
    version,
    about = "S-idempotents in group rings: constructions, censuses, certificates"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteName {
    Paper,
}

#[derive(Debug, Clone, Copy)]
enum FieldArg {
    Rational,
    Prime(u64),
}

fn parse_field_arg(s: &str) -> Result<FieldArg, String> {
    match s {
        "rational" | "Q" => Ok(FieldArg::Rational),
        _ => {
            let q = s.strip_prefix("F_").unwrap_or(s);
            q.parse()
                .map(FieldArg::Prime)
                .map_err(|_| format!("expected `rational` or a prime q, got {s:?}"))
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify every nontrivial idempotent of Z2[C_n] as S or not.
    Classify {
        #[arg(long)]
        n: usize,
        /// Largest square-root kernel dimension searched exhaustively.
        #[arg(long, default_value_t = DEFAULT_KERNEL_CAP)]
        kernel_cap: usize,
    },
    /// List all idempotents of Z2[C_n] in canonical order.
    Enumerate {
        #[arg(long)]
        n: usize,
    },
    /// Basic pair (alpha, beta) in Z2[C_2p] for a Mersenne prime p and odd l < p.
    Construct {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        l: u64,
    },
    /// Sum of basic pairs for a comma-separated list of l values.
    Sum {
        #[arg(long)]
        p: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        l: Vec<u64>,
    },
    /// Pair in Z2[C_2q] built from all even exponents, q an odd prime.
    Theorem13 {
        #[arg(long)]
        q: u64,
    },
    /// Census of Z2[C_2p] against the constructed family, p a Mersenne prime.
    Census {
        #[arg(long)]
        p: u64,
    },
    /// 2-cyclotomic cosets modulo n.
    Cosets {
        #[arg(long)]
        n: usize,
        /// For even n: classes of odd residues under their even orbits.
        #[arg(long)]
        odd_only: bool,
    },
    /// Mersenne data for p: exponent, Lucas-Lehmer, orbit count, S-count.
    Mersenne {
        #[arg(long)]
        p: u64,
    },
    /// Idempotents of Q(zeta_N)[G] with negation witnesses.
    Char0 {
        /// cyclic:N or product:MxN
        #[arg(long)]
        group: AbGroup,
    },
    /// Subgroup-sum idempotent with the witness prescribed by a case (1, 2 or 3).
    Theorem23 {
        /// `rational` or a prime q for F_q.
        #[arg(long, value_parser = parse_field_arg)]
        field: FieldArg,
        #[arg(long, default_value = "cyclic:4")]
        group: AbGroup,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        case: u8,
    },
    /// Run a named verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteName,
        /// Seed for the randomized checks.
        #[arg(long, default_value_t = suite::DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ConstructionFailed(_) | Error::InvalidWitness(_) | Error::NotIdempotent(_) => {
                Failure::Math(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CmdResult = Result<Certificate, Failure>;

/// Runs one invocation. `argv[0]` is the program name.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let target: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let echo: Vec<String> = argv
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let result = match cli.command {
        Command::Classify { n, kernel_cap } => cmd_classify(echo, n, kernel_cap),
        Command::Enumerate { n } => cmd_enumerate(echo, n),
        Command::Construct { p, l } => cmd_construct(echo, p, l),
        Command::Sum { p, l } => cmd_sum(echo, p, &l),
        Command::Theorem13 { q } => cmd_even_pair(echo, q),
        Command::Census { p } => cmd_census(echo, p),
        Command::Cosets { n, odd_only } => cmd_cosets(echo, n, odd_only),
        Command::Mersenne { p } => cmd_mersenne(echo, p),
        Command::Char0 { group } => cmd_char0(echo, group),
        Command::Theorem23 {
            field,
            group,
            p,
            case,
        } => cmd_subgroup(echo, field, group, p, case),
        Command::Verify { suite, seed } => cmd_verify(echo, suite, seed),
    };
    match result {
        Ok(cert) => {
            let rendered = match cli.format {
                Format::Json => cert.to_json() + "\n",
                Format::Table => render_table(&cert),
                Format::Csv => render_csv(&cert),
            };
            if out.write_all(rendered.as_bytes()).is_err() {
                return 1;
            }
            if cert.passed() {
                0
            } else {
                2
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Math(msg)) => {
            let _ = writeln!(err, "check failed: {msg}");
            2
        }
    }
}

fn gf2_entry(x: &Gf2Element, verdict: &Verdict) -> Entry {
    let (is_s, label, witness, law, method) = match verdict {
        Verdict::S(w) => (
            true,
            "S",
            Some(ElementRecord::gf2(&w.beta)),
            Some(w.law.as_str().to_string()),
            Some(w.method.as_str().to_string()),
        ),
        Verdict::NotS => (false, "NOT_S", None, None, None),
        Verdict::Inconclusive { .. } => (false, "INCONCLUSIVE", None, None, None),
    };
    let mut entry = Entry {
        idempotent: ElementRecord::gf2(x),
        is_s,
        verdict: label.to_string(),
        witness,
        law,
        method,
        extra: Default::default(),
    };
    if let Verdict::Inconclusive { kernel_dim } = verdict {
        entry.extra.insert("kernel_dim".into(), json!(kernel_dim));
    }
    entry
}

fn cmd_classify(echo: Vec<String>, n: usize, kernel_cap: usize) -> CmdResult {
    let report = classify(n, kernel_cap)?;
    let mut cert = Certificate::new(echo, Descriptor::Gf2Cyclic { modulus: n });
    let solver = SquareRootSolver::new(n)?;
    cert.summarize("modulus", n);
    cert.summarize("kernel_cap", kernel_cap);
    cert.summarize("kernel_dim", solver.kernel_dim());
    cert.summarize("total", report.total);
    cert.summarize("nontrivial", report.nontrivial);
    cert.summarize("s_count", report.s_count);
    cert.summarize("not_s_count", report.not_s_count);
    cert.summarize("inconclusive_count", report.inconclusive_count);
    let mut bad = Vec::new();
    for e in &report.entries {
        if let Verdict::S(w) = &e.verdict {
            if check_witness(&e.idempotent, &w.beta)?.map(|c| c.law) != Some(w.law) {
                bad.push(e.idempotent.notation());
            }
        }
        cert.entries.push(gf2_entry(&e.idempotent, &e.verdict));
    }
    cert.check(
        "witnesses_reverify",
        bad.is_empty(),
        (!bad.is_empty()).then(|| bad.join(" ")),
    );
    if n % 2 == 1 {
        cert.check("odd_modulus_has_no_s", report.s_count == 0, None);
    } else if let Some(w) = mersenne_exponent((n / 2) as u64) {
        let formula = s_count_formula(w.p)?;
        let ok = formula == report.nontrivial.into() && report.s_count == report.nontrivial;
        cert.summarize("s_count_formula", formula.to_string());
        cert.check(
            "mersenne_count_formula",
            ok,
            Some(format!("2(2^{} - 1) = {formula}", w.orbit_count())),
        );
    }
    Ok(cert)
}

fn cmd_enumerate(echo: Vec<String>, n: usize) -> CmdResult {
    let all = enumerate_idempotents(n)?;
    let mut cert = Certificate::new(echo, Descriptor::Gf2Cyclic { modulus: n });
    let cosets = coset_count(n);
    cert.summarize("modulus", n);
    cert.summarize("total", all.len());
    cert.summarize("cosets", cosets);
    cert.check(
        "all_idempotent",
        all.iter().all(Gf2Element::is_idempotent),
        None,
    );
    cert.check("count_is_two_to_cosets", all.len() == 1 << cosets, None);
    if n <= BRUTE_FORCE_CAP {
        let brute: BTreeSet<Gf2Element> = brute_force_idempotents(n)?.into_iter().collect();
        let fast: BTreeSet<Gf2Element> = all.iter().cloned().collect();
        cert.check("brute_force_agrees", brute == fast, None);
    }
    for x in &all {
        cert.entries.push(Entry {
            idempotent: ElementRecord::gf2(x),
            is_s: false,
            verdict: if x.is_trivial() {
                "TRIVIAL"
            } else {
                "UNCLASSIFIED"
            }
            .into(),
            witness: None,
            law: None,
            method: None,
            extra: Default::default(),
        });
    }
    Ok(cert)
}

/// Records `(alpha, beta)` and the complement pair, with their checks.
fn pair_certificate(echo: Vec<String>, alpha: &Gf2Element, beta: &Gf2Element) -> CmdResult {
    let n = alpha.modulus();
    let mut cert = Certificate::new(echo, Descriptor::Gf2Cyclic { modulus: n });
    cert.check(
        "alpha_idempotent",
        alpha.is_idempotent() && !alpha.is_trivial(),
        None,
    );
    cert.check("beta_squared_eq_alpha", beta.square() == *alpha, None);
    cert.check("alpha_beta_eq_beta", alpha * beta == *beta, None);
    cert.check(
        "beta_not_in_0_1_alpha",
        !beta.is_trivial() && beta != alpha,
        None,
    );
    let Some(w) = check_witness(alpha, beta)? else {
        cert.entries.push(Entry {
            idempotent: ElementRecord::gf2(alpha),
            is_s: false,
            verdict: "INVALID".into(),
            witness: Some(ElementRecord::gf2(beta)),
            law: None,
            method: None,
            extra: Default::default(),
        });
        return Ok(cert);
    };
    let w = w.with_method(sidem_core::s_classify::WitnessMethod::Constructed);
    cert.entries.push(gf2_entry(alpha, &Verdict::S(w.clone())));
    match transfer_complement(alpha, &w) {
        Ok(c) => {
            cert.entries
                .push(gf2_entry(&alpha.complement_one(), &Verdict::S(c)));
            cert.check("complement_transfer", true, None);
        }
        Err(e) => cert.check("complement_transfer", false, Some(e.to_string())),
    }
    cert.summarize("alpha", alpha.notation());
    cert.summarize("beta", beta.notation());
    Ok(cert)
}

fn cmd_construct(echo: Vec<String>, p: u64, l: u64) -> CmdResult {
    let bp = basic_pair(p, l)?;
    let mut cert = pair_certificate(echo, &bp.alpha, &bp.beta)?;
    let s = &bp.spec;
    cert.summarize("p", s.p);
    cert.summarize("k", s.k);
    cert.summarize("l", s.l);
    cert.summarize("m", s.m);
    cert.summarize("x", s.x.clone());
    cert.summarize("t", s.t.clone());
    Ok(cert)
}

fn cmd_sum(echo: Vec<String>, p: u64, ls: &[u64]) -> CmdResult {
    let pairs = ls
        .iter()
        .map(|&l| basic_pair(p, l))
        .collect::<Result<Vec<_>, _>>()?;
    let refs: Vec<_> = pairs.iter().collect();
    match sum_pair(&refs) {
        Ok(sp) => {
            let mut cert = pair_certificate(echo, &sp.alpha, &sp.beta)?;
            cert.check("cross_terms_zero", true, None);
            cert.summarize("p", p);
            cert.summarize("l", ls.to_vec());
            Ok(cert)
        }
        Err(Error::ConstructionFailed(msg)) => {
            let mut cert = Certificate::new(
                echo,
                Descriptor::Gf2Cyclic {
                    modulus: 2 * p as usize,
                },
            );
            cert.check("cross_terms_zero", false, Some(msg));
            Ok(cert)
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_even_pair(echo: Vec<String>, q: u64) -> CmdResult {
    let pair = theorem_1_3_pair(q)?;
    let mut cert = pair_certificate(echo, &pair.alpha, &pair.beta)?;
    cert.summarize("q", q);
    Ok(cert)
}

fn cmd_census(echo: Vec<String>, p: u64) -> CmdResult {
    let report = verify_census(p)?;
    let mut cert = Certificate::new(
        echo,
        Descriptor::Gf2Cyclic {
            modulus: 2 * p as usize,
        },
    );
    cert.summarize("p", report.p);
    cert.summarize("k", report.k);
    cert.summarize("m", report.m);
    cert.summarize("expected", report.expected.to_string());
    cert.summarize("nontrivial", report.nontrivial);
    cert.summarize("family_size", report.family_size);
    cert.summarize("witnesses_verified", report.witnesses_verified);
    let count = report.failures.iter().find_map(|f| match f {
        CensusFailure::CountMismatch { expected, found } => {
            Some(format!("expected {expected}, found {found}"))
        }
        _ => None,
    });
    let family: Vec<String> = report
        .failures
        .iter()
        .filter_map(|f| match f {
            CensusFailure::UnexpectedIdempotent(x) => Some(format!("unexpected {}", x.notation())),
            CensusFailure::MissingFamilyMember(x) => Some(format!("missing {}", x.notation())),
            _ => None,
        })
        .collect();
    let witness: Vec<String> = report
        .failures
        .iter()
        .filter_map(|f| match f {
            CensusFailure::WitnessFailed(x) => Some(x.notation()),
            _ => None,
        })
        .collect();
    cert.check("count_matches_formula", count.is_none(), count);
    cert.check(
        "family_equality",
        family.is_empty(),
        (!family.is_empty()).then(|| family.join("; ")),
    );
    cert.check(
        "witnesses_verified",
        witness.is_empty(),
        (!witness.is_empty()).then(|| witness.join(" ")),
    );
    Ok(cert)
}

fn cmd_cosets(echo: Vec<String>, n: usize, odd_only: bool) -> CmdResult {
    if n == 0 {
        return Err(Error::ZeroModulus.into());
    }
    let cosets = cyclotomic_cosets(n, odd_only);
    let mut cert = Certificate::new(echo, Descriptor::Residues { modulus: n });
    let listed: Vec<Value> = cosets
        .iter()
        .map(|c| json!({"leader": c.leader, "members": c.members}))
        .collect();
    let mut seen = BTreeSet::new();
    let disjoint = cosets
        .iter()
        .flat_map(|c| c.members.iter())
        .all(|&r| seen.insert(r));
    cert.summarize("modulus", n);
    cert.summarize("odd_only", odd_only);
    cert.summarize("count", cosets.len());
    cert.summarize("cosets", listed);
    cert.check("disjoint", disjoint, None);
    if !odd_only || n % 2 == 1 {
        cert.check("covers_residues", seen.len() == n, None);
    }
    Ok(cert)
}

fn cmd_mersenne(echo: Vec<String>, p: u64) -> CmdResult {
    let mut cert = Certificate::new(echo, Descriptor::Integer { value: p });
    cert.summarize("p", p);
    cert.summarize("is_prime", is_prime(p));
    let witness = mersenne_exponent(p);
    cert.summarize("is_mersenne", witness.is_some());
    if p >= 3 && (p + 1).is_power_of_two() {
        let k = (p + 1).trailing_zeros();
        let ll = lucas_lehmer(k)?;
        cert.summarize("k", k);
        cert.summarize("lucas_lehmer", ll);
        cert.check("lucas_lehmer_agrees", ll == is_prime(p), None);
    }
    if let Some(w) = witness {
        cert.summarize("orbit_count", w.orbit_count());
        cert.summarize("s_count_formula", s_count_formula(p)?.to_string());
        cert.check(
            "k_divides_p_minus_1",
            fermat_divisibility(w.k as u64)? && (p - 1) % w.k as u64 == 0,
            None,
        );
    }
    Ok(cert)
}

fn cmd_char0(echo: Vec<String>, group: AbGroup) -> CmdResult {
    if group.order() > CHAR0_ORDER_CAP {
        return Err(Failure::Usage(format!(
            "group order {} exceeds the char0 cap of {CHAR0_ORDER_CAP}",
            group.order()
        )));
    }
    let table = CharacterTable::new(group)?;
    let field = table.field().clone();
    let mut cert = Certificate::new(
        echo,
        Descriptor::GroupAlgebra {
            group: group.to_string(),
            field: field.name(),
        },
    );
    let es = table.primitive_idempotents();
    let mut orthogonal = true;
    let mut sum = sidem_core::exact_algebra::AlgElement::zero(group, field.clone());
    for (i, a) in es.iter().enumerate() {
        sum = sum.checked_add(a)?;
        for (j, b) in es.iter().enumerate() {
            let p = a.checked_mul(b)?;
            orthogonal &= if i == j { p == *a } else { p.is_zero() };
        }
    }
    cert.check("orthogonality", orthogonal, None);
    cert.check("sum_is_one", sum.is_one(), None);

    let order = group.order();
    let list_co = order <= CO_IDEMPOTENT_ORDER_CAP;
    let mut nontrivial = 0usize;
    let (mut masks_ok, mut co_ok, mut witness_ok) = (true, true, true);
    for (bits, a) in table.all_idempotents()?.iter().enumerate() {
        if a.is_trivial() {
            continue;
        }
        nontrivial += 1;
        let mask = table.character_mask(a)?;
        masks_ok &= mask
            == (0..order)
                .filter(|c| bits >> c & 1 == 1)
                .collect::<Vec<_>>();
        let mut entry = match negation_witness(a) {
            Ok(w) => Entry {
                idempotent: ElementRecord::alg(a),
                is_s: true,
                verdict: "S".into(),
                witness: Some(ElementRecord::alg(&w.beta)),
                law: Some(w.law.as_str().into()),
                method: Some("CONSTRUCTED".into()),
                extra: Default::default(),
            },
            Err(_) => {
                witness_ok = false;
                Entry {
                    idempotent: ElementRecord::alg(a),
                    is_s: false,
                    verdict: "NOT_S".into(),
                    witness: None,
                    law: None,
                    method: None,
                    extra: Default::default(),
                }
            }
        };
        entry.extra.insert("mask".into(), json!(mask));
        if list_co {
            let co = table.co_idempotents(a)?;
            co_ok &= co.len() == (1 << mask.len()) - 1;
            entry.extra.insert("co_idempotents".into(), json!(co.len()));
        }
        cert.entries.push(entry);
    }
    cert.summarize("group", group.to_string());
    cert.summarize("field", field.name());
    cert.summarize("order", order);
    cert.summarize("exponent", group.exponent());
    cert.summarize("nontrivial", nontrivial);
    cert.check(
        "nontrivial_count",
        nontrivial == (1 << order) - 2,
        Some(format!("2^{order} - 2")),
    );
    cert.check("character_masks", masks_ok, None);
    cert.check("negation_witnesses_verify", witness_ok, None);
    if list_co {
        cert.check("co_idempotent_counts", co_ok, None);
    }
    Ok(cert)
}

fn cmd_subgroup(echo: Vec<String>, field: FieldArg, group: AbGroup, p: u64, case: u8) -> CmdResult {
    let AbGroup::Cyclic(n) = group else {
        return Err(Failure::Usage("theorem23 needs a cyclic group".into()));
    };
    let case =
        SubgroupCase::from_number(case).ok_or_else(|| Failure::Usage(format!("no case {case}")))?;
    match field {
        FieldArg::Rational => subgroup_certificate(echo, RationalField, n, p, case),
        FieldArg::Prime(q) => subgroup_certificate(echo, PrimeField::new(q)?, n, p, case),
    }
}

fn subgroup_certificate<F: CoeffCodec>(
    echo: Vec<String>,
    field: F,
    n: usize,
    p: u64,
    case: SubgroupCase,
) -> CmdResult {
    let pair = subgroup_idempotent_pair(&field, n, p, case)?;
    let mut cert = Certificate::new(
        echo,
        Descriptor::GroupAlgebra {
            group: AbGroup::Cyclic(n).to_string(),
            field: field.name(),
        },
    );
    let valid = pair.is_valid();
    cert.entries.push(Entry {
        idempotent: ElementRecord::alg(&pair.alpha),
        is_s: valid,
        verdict: if valid { "S" } else { "INVALID" }.into(),
        witness: Some(ElementRecord::alg(&pair.beta)),
        law: valid.then(|| "ABSORB_WITNESS".into()),
        method: Some("CONSTRUCTED".into()),
        extra: Default::default(),
    });
    cert.summarize("case", case.number());
    cert.summarize("p", p);
    cert.summarize("alpha", pair.alpha.to_string());
    cert.summarize("beta", pair.beta.to_string());
    cert.summarize("valid", valid);
    for (req, ok) in &pair.checks {
        cert.check(req.as_str(), *ok, None);
    }
    Ok(cert)
}

fn cmd_verify(echo: Vec<String>, suite: SuiteName, seed: u64) -> CmdResult {
    let SuiteName::Paper = suite;
    let mut cert = Certificate::new(
        echo,
        Descriptor::Suite {
            name: "paper".into(),
        },
    );
    let outcomes = suite::run_paper_suite(seed);
    cert.summarize("seed", seed);
    cert.summarize("criteria", outcomes.len());
    cert.summarize("passed", outcomes.iter().filter(|o| o.passed()).count());
    for o in &outcomes {
        let detail = if o.within_limit() {
            o.detail.clone()
        } else {
            format!(
                "{} (over the {} s limit)",
                o.detail,
                o.criterion.limit.as_secs()
            )
        };
        cert.check(&o.check_name(), o.passed(), Some(detail));
    }
    Ok(cert)
}

fn entry_cell(r: &ElementRecord, descriptor: &Descriptor) -> String {
    match (descriptor, &r.support) {
        (Descriptor::Gf2Cyclic { modulus }, Some(s)) => {
            let inner: Vec<String> = s.iter().map(|e| e.to_string()).collect();
            format!("{{{}}}@{modulus}", inner.join(","))
        }
        _ => r.text.clone(),
    }
}

fn value_cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render_table(cert: &Certificate) -> String {
    let mut s = String::new();
    let header = match &cert.descriptor {
        Descriptor::Gf2Cyclic { modulus } => format!("Z2[C_{modulus}]"),
        Descriptor::GroupAlgebra { group, field } => format!("{field}[{group}]"),
        Descriptor::Residues { modulus } => format!("Z/{modulus}"),
        Descriptor::Integer { value } => format!("{value}"),
        Descriptor::Suite { name } => format!("suite {name}"),
    };
    s.push_str(&format!("sidem {}  ({header})\n", cert.command.join(" ")));
    if !cert.entries.is_empty() {
        let extra_keys: Vec<String> = cert.entries[0].extra.keys().cloned().collect();
        let mut rows = vec![["#", "idempotent", "verdict", "witness", "law", "method"]
            .iter()
            .map(|h| h.to_string())
            .chain(extra_keys.iter().cloned())
            .collect::<Vec<_>>()];
        for (i, e) in cert.entries.iter().enumerate() {
            let mut row = vec![
                (i + 1).to_string(),
                entry_cell(&e.idempotent, &cert.descriptor),
                e.verdict.clone(),
                e.witness
                    .as_ref()
                    .map(|w| entry_cell(w, &cert.descriptor))
                    .unwrap_or_else(|| "-".into()),
                e.law.clone().unwrap_or_else(|| "-".into()),
                e.method.clone().unwrap_or_else(|| "-".into()),
            ];
            row.extend(
                extra_keys
                    .iter()
                    .map(|k| e.extra.get(k).map(value_cell).unwrap_or_else(|| "-".into())),
            );
            rows.push(row);
        }
        let widths: Vec<usize> = (0..rows[0].len())
            .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
            .collect();
        for row in &rows {
            let cells: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(cell, w)| format!("{cell}{}", " ".repeat(w - cell.chars().count())))
                .collect();
            s.push_str(cells.join("  ").trim_end());
            s.push('\n');
        }
    }
    if !cert.summary.is_empty() {
        s.push_str("summary:\n");
        for (k, v) in &cert.summary {
            s.push_str(&format!("  {k}: {}\n", value_cell(v)));
        }
    }
    s.push_str("checks:\n");
    for c in &cert.checks {
        let status = if c.pass { "PASS" } else { "FAIL" };
        match &c.detail {
            Some(d) => s.push_str(&format!("  [{status}] {}: {d}\n", c.name)),
            None => s.push_str(&format!("  [{status}] {}\n", c.name)),
        }
    }
    s
}

fn render_csv(cert: &Certificate) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    if cert.entries.is_empty() {
        w.write_record(["section", "name", "value"])
            .expect("in-memory write");
        for (k, v) in &cert.summary {
            w.write_record(["summary", k, &value_cell(v)])
                .expect("in-memory write");
        }
        for c in &cert.checks {
            w.write_record(["check", &c.name, if c.pass { "pass" } else { "fail" }])
                .expect("in-memory write");
        }
    } else {
        w.write_record([
            "index",
            "idempotent",
            "is_s",
            "verdict",
            "witness",
            "law",
            "method",
        ])
        .expect("in-memory write");
        for (i, e) in cert.entries.iter().enumerate() {
            w.write_record([
                (i + 1).to_string(),
                e.idempotent.text.clone(),
                e.is_s.to_string(),
                e.verdict.clone(),
                e.witness
                    .as_ref()
                    .map(|x| x.text.clone())
                    .unwrap_or_default(),
                e.law.clone().unwrap_or_default(),
                e.method.clone().unwrap_or_default(),
            ])
            .expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("sidem").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn field_argument() {
        assert!(matches!(
            parse_field_arg("rational"),
            Ok(FieldArg::Rational)
        ));
        assert!(matches!(parse_field_arg("5"), Ok(FieldArg::Prime(5))));
        assert!(matches!(parse_field_arg("F_3"), Ok(FieldArg::Prime(3))));
        assert!(parse_field_arg("reals").is_err());
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_str(&["classify"]).0, 1);
        assert_eq!(run_str(&["classify", "--n", "6", "--bogus"]).0, 1);
        assert_eq!(run_str(&["frobnicate"]).0, 1);
        let (code, _, err) = run_str(&["classify", "--n", "16382"]);
        assert_eq!(code, 1);
        assert!(err.contains("cap"), "{err}");
        let (code, _, err) = run_str(&["char0", "--group", "cyclic:9"]);
        assert_eq!(code, 1);
        assert!(err.contains("cap of 8"), "{err}");
        assert_eq!(run_str(&["construct", "--p", "15", "--l", "1"]).0, 1);
        assert_eq!(run_str(&["theorem23", "--field", "5", "--case", "2"]).0, 1);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_str(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("classify"));
    }

    #[test]
    fn csv_output() {
        let (code, out, _) = run_str(&["classify", "--n", "6", "--format", "csv"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "index,idempotent,is_s,verdict,witness,law,method");
        assert_eq!(lines.len(), 3);
        let (_, out, _) = run_str(&["mersenne", "--p", "31", "--format", "csv"]);
        assert!(out.contains("summary,orbit_count,6"));
    }
}
