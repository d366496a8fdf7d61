//! Versioned JSON certificates and their re-verification.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use sidem_core::exact_algebra::{
    fmt_rational, parse_rational, AbGroup, AlgElement, CyclotomicField, Field, PrimeField,
    RationalField,
};
use sidem_core::s_classify::WitnessLaw;
use sidem_core::Gf2Element;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Descriptor {
    /// Z₂[Cₙ]
    Gf2Cyclic {
        modulus: usize,
    },
    /// F[G] with `field` one of `Q`, `F_q`, `Q(ζ_N)`.
    GroupAlgebra {
        group: String,
        field: String,
    },
    /// Residues mod `modulus`.
    Residues {
        modulus: usize,
    },
    Integer {
        value: u64,
    },
    Suite {
        name: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ElementRecord {
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support: Option<Vec<usize>>,
    /// One entry per group element; each coefficient is a list of rationals
    /// (a single value over Q or F_q, the ζ-basis over Q(ζ_N)).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<Vec<String>>>,
}

impl ElementRecord {
    pub fn gf2(x: &Gf2Element) -> Self {
        ElementRecord {
            text: x.to_string(),
            support: Some(x.support()),
            coefficients: None,
        }
    }

    pub fn alg<F: CoeffCodec>(x: &AlgElement<F>) -> Self {
        let field = x.field();
        ElementRecord {
            text: x.to_string(),
            support: None,
            coefficients: Some(x.dense().iter().map(|c| field.encode(c)).collect()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub idempotent: ElementRecord,
    pub is_s: bool,
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<ElementRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub law: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub extra: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub command: Vec<String>,
    pub descriptor: Descriptor,
    pub entries: Vec<Entry>,
    pub summary: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
}

impl Certificate {
    pub fn new(command: Vec<String>, descriptor: Descriptor) -> Self {
        Certificate {
            schema_version: SCHEMA_VERSION,
            command,
            descriptor,
            entries: Vec::new(),
            summary: BTreeMap::new(),
            checks: Vec::new(),
        }
    }

    pub fn summarize(&mut self, key: &str, value: impl Into<Value>) {
        self.summary.insert(key.to_string(), value.into());
    }

    pub fn check(&mut self, name: &str, pass: bool, detail: Option<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            pass,
            detail,
        });
    }

    /// True when every recorded check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        let cert: Certificate = serde_json::from_str(text).map_err(|e| e.to_string())?;
        if cert.schema_version != SCHEMA_VERSION {
            return Err(format!(
                "unsupported schema version {}",
                cert.schema_version
            ));
        }
        Ok(cert)
    }

    /// Rebuilds every element from its serialized form and re-checks each
    /// S entry: `β² = x`, the recorded absorption law, and `β ∉ {0, 1, x}`.
    /// Returns the number of witnesses verified.
    pub fn reverify(&self) -> Result<usize, String> {
        match &self.descriptor {
            Descriptor::Gf2Cyclic { modulus } => self.reverify_gf2(*modulus),
            Descriptor::GroupAlgebra { group, field } => {
                let group: AbGroup = group.parse().map_err(|e| format!("{e}"))?;
                match parse_field(field)? {
                    AnyField::Rational(f) => self.reverify_alg(group, f),
                    AnyField::Prime(f) => self.reverify_alg(group, f),
                    AnyField::Cyclotomic(f) => self.reverify_alg(group, f),
                }
            }
            _ if self.entries.is_empty() => Ok(0),
            d => Err(format!("descriptor {d:?} carries no entries")),
        }
    }

    fn reverify_gf2(&self, n: usize) -> Result<usize, String> {
        let build = |r: &ElementRecord| -> Result<Gf2Element, String> {
            let support = r.support.as_ref().ok_or("missing support")?;
            let x = Gf2Element::from_exponents(n, support.iter().copied())
                .map_err(|e| e.to_string())?;
            if x.support() != *support || x.to_string() != r.text {
                return Err(format!("support and text disagree for {}", r.text));
            }
            Ok(x)
        };
        let mut verified = 0;
        for e in &self.entries {
            let x = build(&e.idempotent)?;
            if !x.is_idempotent() {
                return Err(format!("{x} is not idempotent"));
            }
            if !e.is_s {
                continue;
            }
            let beta = build(e.witness.as_ref().ok_or("S entry without witness")?)?;
            let law = parse_law(e.law.as_deref())?;
            let xb = &x * &beta;
            let law_holds = match law {
                WitnessLaw::AbsorbWitness => xb == beta,
                WitnessLaw::AbsorbIdempotent => xb == x,
            };
            if beta.square() != x || !law_holds || beta.is_trivial() || beta == x {
                return Err(format!("witness {beta} fails for {x}"));
            }
            verified += 1;
        }
        Ok(verified)
    }

    fn reverify_alg<F: CoeffCodec>(&self, group: AbGroup, field: F) -> Result<usize, String> {
        let build = |r: &ElementRecord| -> Result<AlgElement<F>, String> {
            let coeffs = r.coefficients.as_ref().ok_or("missing coefficients")?;
            let elems = coeffs
                .iter()
                .map(|c| {
                    field
                        .decode(c)
                        .ok_or_else(|| format!("bad coefficient {c:?}"))
                })
                .collect::<Result<Vec<_>, _>>()?;
            AlgElement::from_dense(group, field.clone(), elems).map_err(|e| e.to_string())
        };
        let mut verified = 0;
        for e in &self.entries {
            if !e.is_s {
                continue;
            }
            let x = build(&e.idempotent)?;
            let beta = build(e.witness.as_ref().ok_or("S entry without witness")?)?;
            let law = parse_law(e.law.as_deref())?;
            let xb = x.checked_mul(&beta).map_err(|e| e.to_string())?;
            let law_holds = match law {
                WitnessLaw::AbsorbWitness => xb == beta,
                WitnessLaw::AbsorbIdempotent => xb == x,
            };
            if !x.is_idempotent()
                || beta.square() != x
                || !law_holds
                || beta.is_trivial()
                || beta == x
            {
                return Err(format!("witness {beta} fails for {x}"));
            }
            verified += 1;
        }
        Ok(verified)
    }
}

fn parse_law(law: Option<&str>) -> Result<WitnessLaw, String> {
    let law = law.ok_or("S entry without law")?;
    WitnessLaw::parse(law).ok_or_else(|| format!("unknown law {law}"))
}

/// Lossless textual encoding of field elements.
pub trait CoeffCodec: Field {
    fn encode(&self, c: &Self::Elem) -> Vec<String>;
    fn decode(&self, parts: &[String]) -> Option<Self::Elem>;
}

impl CoeffCodec for RationalField {
    fn encode(&self, c: &Self::Elem) -> Vec<String> {
        vec![fmt_rational(c)]
    }

    fn decode(&self, parts: &[String]) -> Option<Self::Elem> {
        match parts {
            [one] => parse_rational(one),
            _ => None,
        }
    }
}

impl CoeffCodec for PrimeField {
    fn encode(&self, c: &Self::Elem) -> Vec<String> {
        vec![c.to_string()]
    }

    fn decode(&self, parts: &[String]) -> Option<Self::Elem> {
        match parts {
            [one] => one.parse::<u64>().ok().filter(|v| *v < self.order()),
            _ => None,
        }
    }
}

impl CoeffCodec for CyclotomicField {
    fn encode(&self, c: &Self::Elem) -> Vec<String> {
        c.coeffs().iter().map(fmt_rational).collect()
    }

    fn decode(&self, parts: &[String]) -> Option<Self::Elem> {
        if parts.len() != self.degree() {
            return None;
        }
        let coeffs = parts
            .iter()
            .map(|p| parse_rational(p))
            .collect::<Option<Vec<_>>>()?;
        Some(self.from_coeffs(coeffs))
    }
}

#[derive(Debug, Clone)]
pub enum AnyField {
    Rational(RationalField),
    Prime(PrimeField),
    Cyclotomic(CyclotomicField),
}

/// Parses the field names used in descriptors: `Q`, `F_q`, `Q(ζ_N)`.
pub fn parse_field(name: &str) -> Result<AnyField, String> {
    let bad = || format!("unknown field {name:?}");
    if name == "Q" {
        return Ok(AnyField::Rational(RationalField));
    }
    if let Some(q) = name.strip_prefix("F_") {
        let q = q.parse().map_err(|_| bad())?;
        return PrimeField::new(q)
            .map(AnyField::Prime)
            .map_err(|e| e.to_string());
    }
    if let Some(order) = name.strip_prefix("Q(ζ_").and_then(|r| r.strip_suffix(')')) {
        let order = order.parse().map_err(|_| bad())?;
        return CyclotomicField::new(order)
            .map(AnyField::Cyclotomic)
            .map_err(|e| e.to_string());
    }
    Err(bad())
}
