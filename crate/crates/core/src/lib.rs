//! Exact construction and classification of Smarandache idempotents.
//!
//! An S-idempotent of a ring is a nonzero idempotent `x` with a witness
//! `a ∉ {0, 1, x}` such that `a² = x` and `xa = a` or `xa = x`. This crate
//! works in two settings:
//!
//! - [`gf2_ring`], [`idem_enum`], [`s_classify`], [`constructions`]: the
//!   group ring Z₂[Cₙ], with a full census of idempotents, witness search
//!   by GF(2) linear algebra, and the explicit families over `n = 2p` for
//!   Mersenne primes `p`.
//! - [`exact_algebra`]: group algebras of finite abelian groups over Q(ζ_N),
//!   Q and prime fields, with idempotents built from characters.
//!
//! [`numtheory`] supplies primality, Lucas–Lehmer and cyclotomic cosets.
//! Every identity is checked by exact arithmetic.

mod bits;
pub mod constructions;
pub mod error;
pub mod exact_algebra;
pub mod gf2_ring;
pub mod idem_enum;
pub mod linalg;
pub mod numtheory;
pub mod s_classify;

pub use error::{Error, Result};
pub use gf2_ring::Gf2Element;
