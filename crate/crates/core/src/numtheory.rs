//! Primality, Mersenne primes, multiplicative orders and 2-cyclotomic cosets.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Deterministic Miller–Rabin; the first twelve prime bases suffice for all
/// 64-bit inputs.
pub fn is_prime(u: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if u < 2 {
        return false;
    }
    for &p in &BASES {
        if u % p == 0 {
            return u == p;
        }
    }
    let mut d = u - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, u);
        if x == 1 || x == u - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, u);
            if x == u - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Lucas–Lehmer test for `2^k − 1`, valid for `2 ≤ k ≤ 63`.
///
/// The residue `s_{k−2} ≡ 0` criterion is sufficient for every `k ≥ 3`, so
/// composite exponents fall out as `false` without a separate check.
pub fn lucas_lehmer(k: u32) -> Result<bool> {
    if !(2..=63).contains(&k) {
        return Err(Error::OutOfRange {
            value: k as u64,
            reason: "Lucas–Lehmer exponent must be in [2, 63]".into(),
        });
    }
    if k == 2 {
        return Ok(true);
    }
    let m = (1u64 << k) - 1;
    let mut s = 4u64;
    for _ in 0..k - 2 {
        s = (mul_mod(s, s, m) + m - 2) % m;
    }
    Ok(s == 0)
}

/// A certified Mersenne prime `p = 2^k − 1` with `k` prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MersenneWitness {
    pub k: u32,
    pub p: u64,
}

impl MersenneWitness {
    /// `(p − 1) / k`, the number of doubling orbits on nonzero residues mod p.
    pub fn orbit_count(&self) -> u64 {
        (self.p - 1) / self.k as u64
    }
}

pub fn mersenne_exponent(p: u64) -> Option<MersenneWitness> {
    let next = p.checked_add(1)?;
    if p < 3 || !next.is_power_of_two() {
        return None;
    }
    let k = next.trailing_zeros();
    if !is_prime(k as u64) || !lucas_lehmer(k).ok()? {
        return None;
    }
    debug_assert!(is_prime(p));
    Some(MersenneWitness { k, p })
}

/// Checks `k | 2^k − 2` for prime `k` by modular exponentiation.
pub fn fermat_divisibility(k: u64) -> Result<bool> {
    if !is_prime(k) {
        return Err(Error::NotPrime(k));
    }
    Ok(pow_mod(2, k, k) == 2 % k)
}

/// Least `d ≥ 1` with `a^d ≡ 1 (mod m)`.
pub fn mult_order(a: u64, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    if gcd(a % m, m) != 1 && m != 1 {
        return Err(Error::NotCoprime { a, m });
    }
    if m == 1 {
        return Ok(1);
    }
    let a = a % m;
    let mut x = a;
    let mut d = 1;
    while x != 1 {
        x = mul_mod(x, a, m);
        d += 1;
    }
    Ok(d)
}

/// `n = 2^a · m` with `m` odd; returns `(a, m)`.
pub fn odd_part(n: usize) -> (u32, usize) {
    assert!(n > 0, "odd_part of zero");
    let a = n.trailing_zeros();
    (a, n >> a)
}

/// Forward closure `{r·2^j mod m : j ≥ 0}`, sorted.
pub fn doubling_orbit(r: usize, m: usize) -> Vec<usize> {
    let mut seen = vec![false; m];
    let mut x = r % m;
    while !seen[x] {
        seen[x] = true;
        x = (2 * x) % m;
    }
    (0..m).filter(|&i| seen[i]).collect()
}

/// A class of residues mod `modulus` tied together by doubling.
///
/// In the ordinary partition, `members` is a connected component of the
/// doubling map `x ↦ 2x`; for odd moduli that is exactly the cyclotomic
/// coset `{leader·2^j}`. In odd-only mode, `members` are the odd residues
/// that generate the same even orbit (see [`CycCoset::even_orbit`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycCoset {
    pub modulus: usize,
    pub leader: usize,
    pub members: Vec<usize>,
}

impl CycCoset {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `{2^j · leader mod m : j ≥ 1}`.
    pub fn even_orbit(&self) -> Vec<usize> {
        doubling_orbit((2 * self.leader) % self.modulus, self.modulus)
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Partitions `[0, m)` into doubling classes, sorted by leader.
///
/// With `odd_only` and even `m`, partitions the odd residues `l` instead,
/// grouping those whose orbits `{2^j·l : j ≥ 1}` coincide. Odd `l` whose
/// orbit collapses to `{0}` are left out; they generate no nonzero orbit.
/// For odd `m` the flag has no effect.
pub fn cyclotomic_cosets(m: usize, odd_only: bool) -> Vec<CycCoset> {
    assert!(m > 0, "cyclotomic_cosets needs m ≥ 1");
    if odd_only && m % 2 == 0 {
        return odd_generator_classes(m);
    }
    let mut parent: Vec<usize> = (0..m).collect();
    for x in 0..m {
        let (a, b) = (find(&mut parent, x), find(&mut parent, (2 * x) % m));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..m {
        let root = find(&mut parent, x);
        classes.entry(root).or_default().push(x);
    }
    classes
        .into_values()
        .map(|members| CycCoset {
            modulus: m,
            leader: members[0],
            members,
        })
        .collect()
}

fn odd_generator_classes(m: usize) -> Vec<CycCoset> {
    let mut classes: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for l in (1..m).step_by(2) {
        let orbit = doubling_orbit((2 * l) % m, m);
        if orbit == [0] {
            continue;
        }
        classes.entry(orbit).or_default().push(l);
    }
    let mut out: Vec<CycCoset> = classes
        .into_values()
        .map(|members| CycCoset {
            modulus: m,
            leader: members[0],
            members,
        })
        .collect();
    out.sort_by_key(|c| c.leader);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(u: u64) -> bool {
        if u < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= u {
            if u % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    }

    #[test]
    fn primality_examples() {
        assert!(is_prime(31));
        assert!(!is_prime(1));
        assert!(!is_prime(0));
        assert!(!is_prime(2047));
        assert!(is_prime(2));
        assert!(is_prime(8191));
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime(3215031751)); // strong pseudoprime to bases 2, 3, 5, 7
    }

    #[test]
    fn primality_matches_trial_division() {
        for u in 0..5000u64 {
            assert_eq!(is_prime(u), trial_division(u), "u={u}");
        }
    }

    #[test]
    fn lucas_lehmer_examples() {
        assert_eq!(lucas_lehmer(5), Ok(true));
        assert_eq!(lucas_lehmer(11), Ok(false));
        assert_eq!(lucas_lehmer(2), Ok(true));
        assert_eq!(lucas_lehmer(61), Ok(true));
        assert!(lucas_lehmer(1).is_err());
        assert!(lucas_lehmer(64).is_err());
    }

    #[test]
    fn mersenne_examples() {
        assert_eq!(mersenne_exponent(31), Some(MersenneWitness { k: 5, p: 31 }));
        assert_eq!(mersenne_exponent(5), None);
        assert_eq!(mersenne_exponent(7), Some(MersenneWitness { k: 3, p: 7 }));
        assert_eq!(mersenne_exponent(3), Some(MersenneWitness { k: 2, p: 3 }));
        assert_eq!(mersenne_exponent(2047), None);
        assert_eq!(mersenne_exponent(15), None);
        assert_eq!(mersenne_exponent(1), None);
        assert_eq!(mersenne_exponent(u64::MAX), None);
        for w in [3u64, 7, 31, 127, 8191].map(|p| mersenne_exponent(p).unwrap()) {
            assert_eq!((w.p - 1) % w.k as u64, 0);
        }
    }

    #[test]
    fn fermat_examples() {
        assert_eq!(fermat_divisibility(3), Ok(true));
        assert_eq!(fermat_divisibility(5), Ok(true));
        assert_eq!(fermat_divisibility(2), Ok(true));
        assert_eq!(fermat_divisibility(9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn mult_order_examples() {
        assert_eq!(mult_order(2, 7), Ok(3));
        assert_eq!(mult_order(2, 31), Ok(5));
        assert_eq!(mult_order(1, 9), Ok(1));
        assert_eq!(mult_order(5, 1), Ok(1));
        assert!(mult_order(2, 6).is_err());
    }

    #[test]
    fn cosets_mod_7() {
        let cs = cyclotomic_cosets(7, false);
        let members: Vec<_> = cs.iter().map(|c| c.members.clone()).collect();
        assert_eq!(members, vec![vec![0], vec![1, 2, 4], vec![3, 5, 6]]);
        assert_eq!(cyclotomic_cosets(1, false)[0].members, vec![0]);
        // the flag is ignored at odd modulus
        assert_eq!(cyclotomic_cosets(7, true), cs);
    }

    #[test]
    fn odd_classes_mod_62() {
        let cs = cyclotomic_cosets(62, true);
        let leaders: Vec<_> = cs.iter().map(|c| c.leader).collect();
        assert_eq!(leaders, vec![1, 3, 5, 7, 11, 15]);
        assert!(cs.iter().all(|c| c.len() == 5 && c.even_orbit().len() == 5));
        assert_eq!(cs[0].members, vec![1, 33, 35, 39, 47]);
        assert_eq!(cs[0].even_orbit(), vec![2, 4, 8, 16, 32]);
    }

    #[test]
    fn odd_classes_match_orbit_grouping() {
        // oracle: group odd l by their even orbit sets, dropping the {0} orbit
        for m in [6usize, 14, 18, 30, 62] {
            let mut groups: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
            for l in (1..m).step_by(2) {
                let mut orbit = Vec::new();
                let mut x = (2 * l) % m;
                while !orbit.contains(&x) {
                    orbit.push(x);
                    x = (2 * x) % m;
                }
                orbit.sort();
                if orbit == [0] {
                    continue;
                }
                match groups.iter_mut().find(|(o, _)| *o == orbit) {
                    Some((_, ls)) => ls.push(l),
                    None => groups.push((orbit, vec![l])),
                }
            }
            let got: Vec<Vec<usize>> = cyclotomic_cosets(m, true)
                .into_iter()
                .map(|c| c.members)
                .collect();
            let want: Vec<Vec<usize>> = groups.into_iter().map(|(_, ls)| ls).collect();
            assert_eq!(got, want, "m={m}");
        }
    }

    #[test]
    fn even_modulus_partition_is_closed() {
        for m in 1..=40usize {
            let cs = cyclotomic_cosets(m, false);
            let mut seen = vec![0; m];
            for c in &cs {
                assert_eq!(c.leader, c.members[0]);
                for &x in &c.members {
                    seen[x] += 1;
                    assert!(c.members.contains(&((2 * x) % m)));
                }
            }
            assert!(seen.iter().all(|&s| s == 1), "m={m}");
        }
    }

    #[test]
    fn odd_part_splits() {
        assert_eq!(odd_part(62), (1, 31));
        assert_eq!(odd_part(12), (2, 3));
        assert_eq!(odd_part(4), (2, 1));
        assert_eq!(odd_part(9), (0, 9));
    }
}
