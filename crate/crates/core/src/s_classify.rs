//! Deciding whether an idempotent of Z₂[Cₙ] is a Smarandache idempotent.
//!
//! An idempotent `x ≠ 0` is an S-idempotent when some `a ∉ {0, 1, x}` has
//! `a² = x` and either `x·a = a` or `x·a = x`. In characteristic 2 squaring
//! is GF(2)-linear, so the candidates `a` form an affine space that we get
//! from one elimination on the doubling matrix.

use std::fmt;

use rayon::prelude::*;

use crate::bits::BitVec;
use crate::constructions::WitnessBuilder;
use crate::error::{Error, Result};
use crate::gf2_ring::Gf2Element;
use crate::idem_enum::enumerate_idempotents;
use crate::linalg::{Gf2Matrix, Gf2Solver};

pub const DEFAULT_KERNEL_CAP: usize = 20;

/// Which absorption identity the witness satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WitnessLaw {
    /// `x·a = a`
    AbsorbWitness,
    /// `x·a = x`
    AbsorbIdempotent,
}

impl WitnessLaw {
    pub fn as_str(self) -> &'static str {
        match self {
            WitnessLaw::AbsorbWitness => "ABSORB_WITNESS",
            WitnessLaw::AbsorbIdempotent => "ABSORB_IDEMPOTENT",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "ABSORB_WITNESS" => Some(WitnessLaw::AbsorbWitness),
            "ABSORB_IDEMPOTENT" => Some(WitnessLaw::AbsorbIdempotent),
            _ => None,
        }
    }
}

impl fmt::Display for WitnessLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WitnessMethod {
    Constructed,
    Searched,
}

impl WitnessMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            WitnessMethod::Constructed => "CONSTRUCTED",
            WitnessMethod::Searched => "SEARCHED",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "CONSTRUCTED" => Some(WitnessMethod::Constructed),
            "SEARCHED" => Some(WitnessMethod::Searched),
            _ => None,
        }
    }
}

impl fmt::Display for WitnessMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SWitness {
    pub beta: Gf2Element,
    pub law: WitnessLaw,
    pub method: WitnessMethod,
}

impl SWitness {
    pub fn with_method(mut self, method: WitnessMethod) -> Self {
        self.method = method;
        self
    }
}

/// The affine set `{a : a² = x}` as `particular + span(kernel)`.
#[derive(Debug, Clone)]
pub struct RootSpace {
    pub particular: Gf2Element,
    pub kernel: Vec<Gf2Element>,
}

impl RootSpace {
    pub fn dim(&self) -> usize {
        self.kernel.len()
    }

    /// Member selected by the low `dim` bits of `mask`.
    pub fn member(&self, mask: u64) -> Gf2Element {
        let mut out = self.particular.clone();
        for (i, k) in self.kernel.iter().enumerate() {
            if mask >> i & 1 == 1 {
                out = &out + k;
            }
        }
        out
    }

    /// All members in ascending mask order. Only sensible for small `dim`.
    pub fn iter(&self) -> impl Iterator<Item = Gf2Element> + '_ {
        assert!(self.dim() < 64, "root space too large to iterate");
        (0u64..1 << self.dim()).map(move |mask| self.member(mask))
    }
}

/// Elimination of the squaring map on Z₂[Cₙ], reusable across targets.
/// Column `i` of the matrix has its single one in row `2i mod n`.
#[derive(Debug, Clone)]
pub struct SquareRootSolver {
    n: usize,
    solver: Gf2Solver,
    kernel: Vec<Gf2Element>,
}

impl SquareRootSolver {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroModulus);
        }
        let mut m = Gf2Matrix::zeros(n, n);
        for i in 0..n {
            m.toggle((2 * i) % n, i);
        }
        let solver = Gf2Solver::new(&m);
        let kernel = solver
            .kernel()
            .into_iter()
            .map(|v| Gf2Element::from_exponents(n, v.ones()))
            .collect::<Result<Vec<_>>>()?;
        Ok(SquareRootSolver { n, solver, kernel })
    }

    pub fn modulus(&self) -> usize {
        self.n
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel.len()
    }

    pub fn roots(&self, x: &Gf2Element) -> Result<Option<RootSpace>> {
        if x.modulus() != self.n {
            return Err(Error::ModulusMismatch(x.modulus(), self.n));
        }
        let mut b = BitVec::zeros(self.n);
        for e in x.exponents() {
            b.set(e, true);
        }
        Ok(self.solver.solve(&b).map(|sol| RootSpace {
            particular: Gf2Element::from_exponents(self.n, sol.ones()).expect("n ≥ 1"),
            kernel: self.kernel.clone(),
        }))
    }
}

/// `{a : a² = x}`, or `None` when `x` is not a square.
pub fn square_roots(x: &Gf2Element) -> Option<RootSpace> {
    SquareRootSolver::new(x.modulus())
        .and_then(|s| s.roots(x))
        .expect("modulus is positive and matches")
}

/// Tests `a` as a witness for `x`. Prefers the `x·a = a` law when both
/// hold (they cannot both hold for `a ≠ x`). The method is recorded as
/// searched; builders override it.
pub fn check_witness(x: &Gf2Element, a: &Gf2Element) -> Result<Option<SWitness>> {
    if !x.is_idempotent() {
        return Err(Error::NotIdempotent(x.notation()));
    }
    if x.modulus() != a.modulus() {
        return Err(Error::ModulusMismatch(x.modulus(), a.modulus()));
    }
    if x.is_zero() || a.is_trivial() || a == x || a.square() != *x {
        return Ok(None);
    }
    let xa = x * a;
    let law = if xa == *a {
        WitnessLaw::AbsorbWitness
    } else if xa == *x {
        WitnessLaw::AbsorbIdempotent
    } else {
        return Ok(None);
    };
    Ok(Some(SWitness {
        beta: a.clone(),
        law,
        method: WitnessMethod::Searched,
    }))
}

/// Exhaustive search over the square roots of `x`, ignoring constructions.
pub fn search_witness(x: &Gf2Element, kernel_cap: usize) -> Result<Option<SWitness>> {
    let solver = SquareRootSolver::new(x.modulus())?;
    search_with(&solver, x, kernel_cap)
}

fn search_with(
    solver: &SquareRootSolver,
    x: &Gf2Element,
    kernel_cap: usize,
) -> Result<Option<SWitness>> {
    if !x.is_idempotent() {
        return Err(Error::NotIdempotent(x.notation()));
    }
    let Some(space) = solver.roots(x)? else {
        return Ok(None);
    };
    if space.dim() > kernel_cap || space.dim() >= 64 {
        return Err(Error::Inconclusive {
            dim: space.dim(),
            cap: kernel_cap,
        });
    }
    for a in space.iter() {
        if let Some(w) = check_witness(x, &a)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Finds a witness for idempotent `x`: first from the explicit families
/// (Mersenne `n = 2p` and `n = 2q`, `q` an odd prime), then by search over
/// the square roots when the kernel dimension is at most `kernel_cap`.
///
/// `Ok(None)` means the search was exhaustive and no witness exists.
/// [`Error::Inconclusive`] means neither route could decide.
pub fn find_witness(x: &Gf2Element, kernel_cap: usize) -> Result<Option<SWitness>> {
    let builder = WitnessBuilder::new(x.modulus())?;
    let solver = SquareRootSolver::new(x.modulus())?;
    find_with(&builder, &solver, x, kernel_cap)
}

fn find_with(
    builder: &WitnessBuilder,
    solver: &SquareRootSolver,
    x: &Gf2Element,
    kernel_cap: usize,
) -> Result<Option<SWitness>> {
    if !x.is_idempotent() {
        return Err(Error::NotIdempotent(x.notation()));
    }
    if x.is_zero() {
        return Ok(None);
    }
    if let Some(w) = builder.construct(x)? {
        return Ok(Some(w));
    }
    search_with(solver, x, kernel_cap)
}

/// Witness for `1 + x` from a witness for `x`: `1 + β`. The absorption law
/// flips, since `(1+x)(1+β) = 1 + x + β + xβ`.
pub fn transfer_complement(x: &Gf2Element, w: &SWitness) -> Result<SWitness> {
    let checked = check_witness(x, &w.beta)?.ok_or_else(|| {
        Error::InvalidWitness(format!(
            "{} does not witness {}",
            w.beta.notation(),
            x.notation()
        ))
    })?;
    if checked.law != w.law {
        return Err(Error::InvalidWitness(format!(
            "recorded law {} but {} holds",
            w.law, checked.law
        )));
    }
    let x1 = x.complement_one();
    let b1 = w.beta.complement_one();
    check_witness(&x1, &b1)?
        .map(|nw| nw.with_method(w.method))
        .ok_or_else(|| {
            Error::InvalidWitness(format!(
                "complement {} fails for {}",
                b1.notation(),
                x1.notation()
            ))
        })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    S(SWitness),
    NotS,
    Inconclusive { kernel_dim: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SEntry {
    pub idempotent: Gf2Element,
    pub verdict: Verdict,
}

impl SEntry {
    pub fn is_s(&self) -> bool {
        matches!(self.verdict, Verdict::S(_))
    }

    pub fn witness(&self) -> Option<&SWitness> {
        match &self.verdict {
            Verdict::S(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SReport {
    pub modulus: usize,
    pub entries: Vec<SEntry>,
    pub total: usize,
    pub nontrivial: usize,
    pub s_count: usize,
    pub not_s_count: usize,
    pub inconclusive_count: usize,
}

/// Classifies every nontrivial idempotent of Z₂[Cₙ]. Entries follow the
/// canonical order of [`enumerate_idempotents`] regardless of threading.
pub fn classify(n: usize, kernel_cap: usize) -> Result<SReport> {
    let all = enumerate_idempotents(n)?;
    let builder = WitnessBuilder::new(n)?;
    let solver = SquareRootSolver::new(n)?;
    let total = all.len();
    let entries: Vec<SEntry> = all
        .into_par_iter()
        .filter(|x| !x.is_trivial())
        .map(|x| {
            let verdict = match find_with(&builder, &solver, &x, kernel_cap) {
                Ok(Some(w)) => Verdict::S(w),
                Ok(None) => Verdict::NotS,
                Err(Error::Inconclusive { dim, .. }) => Verdict::Inconclusive { kernel_dim: dim },
                Err(e) => return Err(e),
            };
            Ok(SEntry {
                idempotent: x,
                verdict,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let s_count = entries.iter().filter(|e| e.is_s()).count();
    let not_s_count = entries
        .iter()
        .filter(|e| e.verdict == Verdict::NotS)
        .count();
    let inconclusive_count = entries.len() - s_count - not_s_count;
    Ok(SReport {
        modulus: n,
        nontrivial: entries.len(),
        entries,
        total,
        s_count,
        not_s_count,
        inconclusive_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(n: usize, exps: &[usize]) -> Gf2Element {
        Gf2Element::from_exponents(n, exps.iter().copied()).unwrap()
    }

    fn all_elements(n: usize) -> impl Iterator<Item = Gf2Element> {
        (0u64..1 << n).map(move |m| Gf2Element::from_mask(n, m).unwrap())
    }

    #[test]
    fn square_roots_examples() {
        let x = el(6, &[2, 4]);
        let space = square_roots(&x).unwrap();
        assert_eq!(space.dim(), 3);
        let roots: Vec<_> = space.iter().collect();
        assert!(roots.contains(&el(6, &[1, 5])));
        let scanned: Vec<_> = all_elements(6).filter(|a| a.square() == x).collect();
        assert_eq!(scanned.len(), 8);
        assert!(scanned.iter().all(|a| roots.contains(a)));

        let one = el(7, &[0]);
        let space = square_roots(&one).unwrap();
        assert_eq!(space.dim(), 0);
        assert_eq!(space.particular, one);

        assert!(square_roots(&el(4, &[1])).is_none());
        assert!(all_elements(4).all(|a| a.square() != el(4, &[1])));
    }

    #[test]
    fn check_witness_examples() {
        let w = check_witness(&el(62, &[2, 4, 8, 16, 32]), &el(62, &[1, 33, 35, 39, 47]))
            .unwrap()
            .unwrap();
        assert_eq!(w.law, WitnessLaw::AbsorbWitness);
        assert_eq!(
            check_witness(&el(6, &[2, 4]), &el(6, &[2, 4])).unwrap(),
            None
        );
        let w = check_witness(&el(6, &[0, 2, 4]), &el(6, &[0, 1, 5]))
            .unwrap()
            .unwrap();
        assert_eq!(w.law, WitnessLaw::AbsorbIdempotent);
        assert!(matches!(
            check_witness(&el(6, &[1]), &el(6, &[3])),
            Err(Error::NotIdempotent(_))
        ));
        assert_eq!(check_witness(&el(6, &[2, 4]), &el(6, &[0])).unwrap(), None);
    }

    #[test]
    fn find_witness_examples() {
        assert_eq!(
            find_witness(&el(7, &[1, 2, 4]), DEFAULT_KERNEL_CAP).unwrap(),
            None
        );
        let w = find_witness(&el(6, &[2, 4]), DEFAULT_KERNEL_CAP)
            .unwrap()
            .unwrap();
        assert_eq!(w.beta, el(6, &[1, 5]));
        assert_eq!(w.method, WitnessMethod::Constructed);
        let w = find_witness(&el(14, &[2, 4, 6, 8, 10, 12]), DEFAULT_KERNEL_CAP)
            .unwrap()
            .unwrap();
        assert_eq!(w.beta, el(14, &[1, 3, 5, 9, 11, 13]));
    }

    #[test]
    fn search_matches_exhaustive_scan_for_small_even_n() {
        for n in [2usize, 4, 6, 8, 10, 12] {
            for x in crate::idem_enum::enumerate_idempotents(n).unwrap() {
                if x.is_zero() {
                    continue;
                }
                let found = search_witness(&x, DEFAULT_KERNEL_CAP).unwrap();
                let scanned = all_elements(n).find(|a| check_witness(&x, a).unwrap().is_some());
                assert_eq!(found.is_some(), scanned.is_some(), "n={n} x={x:?}");
            }
        }
    }

    #[test]
    fn inconclusive_beyond_cap() {
        // x = 1 at n = 46 has no construction and a 23-dimensional root space
        let x = Gf2Element::one(46).unwrap();
        assert_eq!(
            search_witness(&x, 20),
            Err(Error::Inconclusive { dim: 23, cap: 20 })
        );
    }

    #[test]
    fn transfer_examples() {
        let x = el(6, &[2, 4]);
        let w = check_witness(&x, &el(6, &[1, 5])).unwrap().unwrap();
        let t = transfer_complement(&x, &w).unwrap();
        assert_eq!(t.beta, el(6, &[0, 1, 5]));
        assert_eq!(t.law, WitnessLaw::AbsorbIdempotent);
        let back = transfer_complement(&x.complement_one(), &t).unwrap();
        assert_eq!(back, w);

        let x = el(14, &[2, 4, 8]);
        let w = check_witness(&x, &el(14, &[1, 9, 11])).unwrap().unwrap();
        assert_eq!(
            transfer_complement(&x, &w).unwrap().beta,
            el(14, &[0, 1, 9, 11])
        );

        let bogus = SWitness {
            beta: el(6, &[1]),
            law: WitnessLaw::AbsorbWitness,
            method: WitnessMethod::Searched,
        };
        assert!(matches!(
            transfer_complement(&el(6, &[2, 4]), &bogus),
            Err(Error::InvalidWitness(_))
        ));
    }

    #[test]
    fn classify_examples() {
        let r = classify(7, DEFAULT_KERNEL_CAP).unwrap();
        assert_eq!((r.nontrivial, r.s_count, r.not_s_count), (6, 0, 6));
        let r = classify(14, DEFAULT_KERNEL_CAP).unwrap();
        assert_eq!((r.total, r.nontrivial, r.s_count), (8, 6, 6));
        let r = classify(62, DEFAULT_KERNEL_CAP).unwrap();
        assert_eq!((r.total, r.nontrivial, r.s_count), (128, 126, 126));
        assert!(r
            .entries
            .iter()
            .all(|e| e.witness().unwrap().method == WitnessMethod::Constructed));
    }

    #[test]
    fn classify_reports_inconclusive_entries() {
        let r = classify(46, 20).unwrap();
        assert!(r.inconclusive_count > 0);
        assert_eq!(
            r.s_count + r.not_s_count + r.inconclusive_count,
            r.nontrivial
        );
    }

    #[test]
    fn kernel_dimension_by_parity() {
        for n in 1..=40usize {
            let dim = SquareRootSolver::new(n).unwrap().kernel_dim();
            assert_eq!(dim, if n % 2 == 0 { n / 2 } else { 0 }, "n={n}");
        }
    }
}
