//! Group algebras over exact fields of characteristic 0 and over prime
//! fields.
//!
//! The algebraically closed coefficient field is replaced by `Q(ζ_N)` with
//! `N` the exponent of the group: every idempotent of `K[G]` already has
//! coefficients there, and equality stays decidable.

mod algebra;
mod characters;
mod field;
mod group;
mod poly;
mod subgroup;

pub use algebra::AlgElement;
pub use characters::{
    co_idempotents, idempotent_from_mask, negation_witness, primitive_idempotents, AlgWitness,
    CharacterTable,
};
pub use field::{cyclo_invert, CycloNumber, CyclotomicField, Field, PrimeField, RationalField};
pub use group::AbGroup;
pub use poly::{cyclotomic_polynomial, fmt_rational, parse_rational, Rational};
pub use subgroup::{subgroup_idempotent_pair, Requirement, SubgroupCase, SubgroupPair};
