//! Enumeration of the idempotents of Z₂[Cₙ].
//!
//! For odd `n`, squaring permutes exponents by doubling, so an element is
//! idempotent exactly when its support is a union of cyclotomic cosets. For
//! `n = 2^a·m` with `m` odd, `x^n − 1 = (x^m − 1)^{2^a}` and every idempotent
//! is the image of one from Z₂[C_m] under `h ↦ g^{2^a}`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf2_ring::Gf2Element;
use crate::numtheory::{cyclotomic_cosets, odd_part};

pub const BRUTE_FORCE_CAP: usize = 20;
/// Log₂ of the largest idempotent census we will materialize.
pub const CENSUS_CAP_LOG2: usize = 20;

/// Scans all 2ⁿ elements. Output is in ascending bit-pattern order.
pub fn brute_force_idempotents(n: usize) -> Result<Vec<Gf2Element>> {
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    if n > BRUTE_FORCE_CAP {
        return Err(Error::BruteForceCap {
            n,
            cap: BRUTE_FORCE_CAP,
        });
    }
    let full = (1u64 << n) - 1;
    let double = |mask: u64| -> u64 {
        let mut out = 0u64;
        let mut m = mask;
        while m != 0 {
            let e = m.trailing_zeros() as usize;
            m &= m - 1;
            out ^= 1 << ((2 * e) % n);
        }
        out
    };
    (0..=full)
        .filter(|&mask| double(mask) == mask)
        .map(|mask| Gf2Element::from_mask(n, mask))
        .collect()
}

/// All unions of cyclotomic cosets mod odd `n`, in canonical order.
pub fn coset_idempotents(n: usize) -> Result<Vec<Gf2Element>> {
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    if n % 2 == 0 {
        return Err(Error::EvenModulus(n));
    }
    let cosets = cyclotomic_cosets(n, false);
    if cosets.len() > CENSUS_CAP_LOG2 {
        return Err(Error::CensusCap {
            n,
            cosets: cosets.len(),
            cap: CENSUS_CAP_LOG2,
        });
    }
    let mut out: Vec<Gf2Element> = (0u64..1 << cosets.len())
        .into_par_iter()
        .map(|mask| {
            let exps = cosets
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .flat_map(|(_, c)| c.members.iter().copied());
            Gf2Element::from_exponents(n, exps).expect("n ≥ 1")
        })
        .collect();
    out.par_sort();
    Ok(out)
}

/// Embeds an idempotent of Z₂[C_m] into Z₂[Cₙ] by scaling exponents by 2^a.
pub fn lift_to_even(e: &Gf2Element, n: usize) -> Result<Gf2Element> {
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    let (a, m) = odd_part(n);
    if e.modulus() != m {
        return Err(Error::ModulusMismatch(e.modulus(), m));
    }
    if !e.is_idempotent() {
        return Err(Error::NotIdempotent(e.notation()));
    }
    let scale = 1usize << a;
    Gf2Element::from_exponents(n, e.exponents().map(|x| (x * scale) % n))
}

/// Lifts by Hensel iteration instead: take the preimage with the same
/// exponents and square until the value stops changing. Agrees with
/// [`lift_to_even`]; kept as an independent route.
pub fn hensel_lift(e: &Gf2Element, n: usize) -> Result<Gf2Element> {
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    let (a, m) = odd_part(n);
    if e.modulus() != m {
        return Err(Error::ModulusMismatch(e.modulus(), m));
    }
    if !e.is_idempotent() {
        return Err(Error::NotIdempotent(e.notation()));
    }
    let mut y = Gf2Element::from_exponents(n, e.exponents())?;
    // y = E + j with j in the nilpotent kernel; y^(2^a) = E
    for _ in 0..=a {
        let next = y.square();
        if next == y {
            return Ok(y);
        }
        y = next;
    }
    if y.is_idempotent() {
        Ok(y)
    } else {
        Err(Error::NotIdempotent(y.notation()))
    }
}

/// Reduction Z₂[Cₙ] → Z₂[C_m] for `m | n`: exponents taken mod `m`.
pub fn project(x: &Gf2Element, m: usize) -> Result<Gf2Element> {
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    if x.modulus() % m != 0 {
        return Err(Error::ModulusMismatch(x.modulus(), m));
    }
    Gf2Element::from_exponents(m, x.exponents())
}

/// Number of cyclotomic cosets of the odd part of `n`; there are `2^c`
/// idempotents in Z₂[Cₙ].
pub fn coset_count(n: usize) -> usize {
    let (_, m) = odd_part(n);
    cyclotomic_cosets(m, false).len()
}

/// All idempotents of Z₂[Cₙ] in canonical order.
pub fn enumerate_idempotents(n: usize) -> Result<Vec<Gf2Element>> {
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    let (_, m) = odd_part(n);
    let base = coset_idempotents(m).map_err(|e| match e {
        Error::CensusCap { cosets, cap, .. } => Error::CensusCap { n, cosets, cap },
        other => other,
    })?;
    if m == n {
        return Ok(base);
    }
    let mut out = base
        .iter()
        .map(|e| lift_to_even(e, n))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn el(n: usize, exps: &[usize]) -> Gf2Element {
        Gf2Element::from_exponents(n, exps.iter().copied()).unwrap()
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(
            brute_force_idempotents(6).unwrap(),
            vec![el(6, &[]), el(6, &[0]), el(6, &[2, 4]), el(6, &[0, 2, 4])]
        );
        assert_eq!(
            brute_force_idempotents(2).unwrap(),
            vec![el(2, &[]), el(2, &[0])]
        );
        let seven = brute_force_idempotents(7).unwrap();
        assert_eq!(seven.len(), 8);
        assert!(seven.contains(&el(7, &[1, 2, 4])));
        assert!(seven.contains(&el(7, &[0, 1, 2, 4])));
        assert!(matches!(
            brute_force_idempotents(21),
            Err(Error::BruteForceCap { .. })
        ));
    }

    #[test]
    fn coset_examples() {
        let seven = coset_idempotents(7).unwrap();
        assert_eq!(seven.len(), 8);
        let brute: HashSet<_> = brute_force_idempotents(7).unwrap().into_iter().collect();
        assert_eq!(seven.iter().cloned().collect::<HashSet<_>>(), brute);
        assert_eq!(coset_idempotents(1).unwrap(), vec![el(1, &[]), el(1, &[0])]);
        assert_eq!(
            coset_idempotents(3).unwrap(),
            vec![el(3, &[]), el(3, &[0]), el(3, &[1, 2]), el(3, &[0, 1, 2])]
        );
        assert_eq!(coset_idempotents(8), Err(Error::EvenModulus(8)));
    }

    #[test]
    fn lift_examples() {
        assert_eq!(
            lift_to_even(&el(7, &[1, 2, 4]), 14).unwrap(),
            el(14, &[2, 4, 8])
        );
        assert_eq!(lift_to_even(&el(5, &[0]), 40).unwrap(), el(40, &[0]));
        let lifted = lift_to_even(&el(3, &[1, 2]), 12).unwrap();
        assert_eq!(lifted, el(12, &[4, 8]));
        assert!(brute_force_idempotents(12).unwrap().contains(&lifted));
        assert!(matches!(
            lift_to_even(&el(7, &[1]), 14),
            Err(Error::NotIdempotent(_))
        ));
        assert!(matches!(
            lift_to_even(&el(7, &[1, 2, 4]), 12),
            Err(Error::ModulusMismatch(7, 3))
        ));
    }

    #[test]
    fn hensel_agrees_with_scaling() {
        for n in [2usize, 4, 6, 12, 14, 24, 28, 40, 62, 96] {
            let (_, m) = odd_part(n);
            for e in coset_idempotents(m).unwrap() {
                assert_eq!(
                    hensel_lift(&e, n).unwrap(),
                    lift_to_even(&e, n).unwrap(),
                    "n={n}"
                );
            }
        }
    }

    #[test]
    fn enumerate_examples() {
        let fourteen = enumerate_idempotents(14).unwrap();
        assert_eq!(fourteen.len(), 8);
        let brute: HashSet<_> = brute_force_idempotents(14).unwrap().into_iter().collect();
        assert_eq!(fourteen.iter().cloned().collect::<HashSet<_>>(), brute);
        assert_eq!(enumerate_idempotents(62).unwrap().len(), 128);
        assert_eq!(
            enumerate_idempotents(4).unwrap(),
            vec![el(4, &[]), el(4, &[0])]
        );
        assert!(matches!(enumerate_idempotents(0), Err(Error::ZeroModulus)));
    }

    #[test]
    fn census_cap_is_reported_for_full_n() {
        // 8191 = 2^13 − 1 has 630 doubling orbits on nonzero residues
        let n = 2 * 8191;
        match enumerate_idempotents(n) {
            Err(Error::CensusCap { n: got, cosets, .. }) => {
                assert_eq!(got, n);
                assert_eq!(cosets, 1 + 8190 / 13);
            }
            other => panic!("expected census cap, got {other:?}"),
        }
    }

    #[test]
    fn projection_recovers_base_idempotent() {
        for n in [6usize, 12, 20, 28, 56] {
            let (_, m) = odd_part(n);
            for e in coset_idempotents(m).unwrap() {
                let back = project(&lift_to_even(&e, n).unwrap(), m).unwrap();
                assert!(back.is_idempotent());
                assert_eq!(back, e);
            }
        }
    }
}
