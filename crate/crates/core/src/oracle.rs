//! Brute-force oracles, written against the definitions rather than the
//! closed forms they check.
//!
//! Membership here is the literal existential definition: `t ∈ S(r, s)` iff
//! `t = (a/b)·s` for some `b ∈ Ω(s)` and `a ≤ r·b`. Comparisons with a surd
//! bound are done by squaring, independently of [`crate::arith`].

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith;
use crate::axioms::check_saturation_axioms;
use crate::density::{DensityBound, QuadraticSurd};
use crate::error::{Error, Result};
use crate::rational::PositiveRational;
use crate::report::Report;
use crate::saturated::{Form, RSub, SaturatedSet};
use crate::steinitz::{Exponent, Steinitz};

/// Finite window of representations `(a/b)·s` to sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumWindow {
    /// Largest prime allowed in a denominator.
    pub prime_bound: u64,
    /// Largest numerator `a` (largest natural for sets of naturals).
    pub numerator_bound: u64,
    /// Largest denominator `b`.
    pub denominator_bound: u64,
}

impl EnumWindow {
    pub fn new(prime_bound: u64, numerator_bound: u64, denominator_bound: u64) -> Result<Self> {
        if prime_bound == 0 || numerator_bound == 0 || denominator_bound == 0 {
            return Err(Error::Zero);
        }
        Ok(Self {
            prime_bound,
            numerator_bound,
            denominator_bound,
        })
    }
}

/// `a ≤ r·b` (`a < r·b` when `strict`), by cross-multiplication or squaring.
fn within(a: &BigUint, b: &BigUint, r: &DensityBound, strict: bool) -> bool {
    match r {
        DensityBound::Infinity => true,
        DensityBound::Rational(q) => {
            let lhs = a * q.denom();
            let rhs = q.numer() * b;
            if strict {
                lhs < rhs
            } else {
                lhs <= rhs
            }
        }
        // r·b is irrational, so strictness is irrelevant.
        DensityBound::Surd(s) => below_surd(a, b, s),
    }
}

/// `a < b·(x + y√d)/z`  ⟺  `a·z − b·x < b·y·√d`.
fn below_surd(a: &BigUint, b: &BigUint, s: &QuadraticSurd) -> bool {
    let (x, y, d, z) = s.parts();
    let int = |n: &BigUint| BigInt::from_biguint(Sign::Plus, n.clone());
    let lhs = int(a) * int(z) - int(b) * x;
    if lhs.sign() != Sign::Plus {
        return true;
    }
    let rhs = b * y;
    lhs.magnitude() * lhs.magnitude() < &rhs * &rhs * BigUint::from(d)
}

/// Whether `(a/b)·base`, `b ∈ Ω(base)`, is a member of the based set by
/// the existential definition. With an infinite prime `p` in the base, the
/// same element is also `(a·p^k/(b·p^k))·base` for every `k`, so the search
/// over `k` always succeeds once `r·b·p^k ≥ a`.
fn representable(a: &BigUint, b: &BigUint, r: &DensityBound, strict: bool, base: &Steinitz) -> bool {
    if within(a, b, r, strict) {
        return true;
    }
    if base.is_infinity_free() {
        return false;
    }
    let p = infinite_prime(base);
    let mut bk = b.clone();
    for _ in 0..128 {
        bk *= p;
        if within(a, &bk, r, strict) {
            return true;
        }
    }
    false
}

fn infinite_prime(s: &Steinitz) -> u64 {
    s.exceptions()
        .find(|(_, e)| e.is_infinite())
        .map(|(p, _)| p)
        .unwrap_or_else(|| {
            (0..)
                .map(arith::nth_prime)
                .find(|&p| s.valuation(p).is_infinite())
                .expect("default exponent is infinite")
        })
}

/// Definition-level membership.
pub fn definition_contains(set: &SaturatedSet, t: &Steinitz) -> bool {
    match set.form() {
        Form::Segment(n) => match (t.to_natural(), n.to_natural()) {
            (Some(t), Some(n)) => t <= n,
            _ => false,
        },
        Form::AllNaturals => t.is_natural(),
        Form::InfType(base) => ratio_in_omega(base, t).is_some(),
        Form::FiniteType {
            density,
            base,
            strict,
        } => ratio_in_omega(base, t)
            .is_some_and(|(a, b)| representable(&a, &b, density, *strict, base)),
    }
}

/// `(a, b)` in lowest terms with `t = (a/b)·base` and `b ∈ Ω(base)`.
fn ratio_in_omega(base: &Steinitz, t: &Steinitz) -> Option<(BigUint, BigUint)> {
    let q = base.canonical_ratio(t).ok()?;
    base.omega_contains_denominator(&q)
        .then(|| (q.numer(), q.denom()))
}

/// Every member `(a/b)·s` with `a`, `b` inside the window, deduplicated by
/// value and keyed by the lowest-terms ratio. Sets of naturals enumerate
/// `1..=numerator_bound`.
pub fn enumerate_members(set: &SaturatedSet, w: &EnumWindow) -> Vec<(PositiveRational, Steinitz)> {
    let base = match set.base() {
        Some(b) => b.clone(),
        None => {
            return (1..=w.numerator_bound)
                .map(|n| Steinitz::from_natural(n).expect("positive"))
                .filter(|t| definition_contains(set, t))
                .map(|t| {
                    let n = t.to_u64().expect("natural");
                    (PositiveRational::from_natural(n).expect("positive"), t)
                })
                .collect();
        }
    };
    let (density, strict) = match set.form() {
        Form::FiniteType {
            density, strict, ..
        } => (density.clone(), *strict),
        _ => (DensityBound::Infinity, false),
    };
    let mut seen: BTreeMap<Steinitz, PositiveRational> = BTreeMap::new();
    for b in omega_window(&base, w) {
        for a in 1..=w.numerator_bound {
            if !representable(&a.into(), &b.into(), &density, strict, &base) {
                continue;
            }
            let q = PositiveRational::new(a, b).expect("positive");
            let t = base.scale(&q).expect("b ∈ Ω(base)");
            seen.entry(t).or_insert(q);
        }
    }
    let mut out: Vec<(PositiveRational, Steinitz)> = seen.into_iter().map(|(t, q)| (q, t)).collect();
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

fn omega_window(base: &Steinitz, w: &EnumWindow) -> Vec<u64> {
    (1..=w.denominator_bound)
        .filter(|&b| {
            arith::factor(b).iter().all(|&(p, e)| {
                p <= w.prime_bound && base.valuation(p) >= &Exponent::finite(e.into())
            })
        })
        .collect()
}

/// Outcome of a bounded maximization.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BruteRSub {
    Finite(u64),
    AboveBound,
}

impl BruteRSub {
    /// Whether the closed form agrees: equal values, or `∞` against a
    /// search that hit its bound.
    pub fn agrees_with(&self, closed: &RSub) -> bool {
        match (self, closed) {
            (BruteRSub::Finite(k), RSub::Finite(c)) => BigUint::from(*k) == *c,
            (BruteRSub::AboveBound, RSub::Infinite) => true,
            _ => false,
        }
    }
}

impl core::fmt::Display for BruteRSub {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            BruteRSub::Finite(k) => write!(f, "{k}"),
            BruteRSub::AboveBound => f.write_str("above-bound"),
        }
    }
}

/// `max { i ≤ i_bound | i·t/b ∈ S }` by a full scan of `1..=i_bound`.
/// Reports `AboveBound` when `i_bound` itself is a member.
pub fn r_sub_brute(set: &SaturatedSet, t: &Steinitz, b: u64, i_bound: u64) -> Result<BruteRSub> {
    if !definition_contains(set, t) {
        return Err(Error::NotMember {
            element: t.to_string(),
            set: set.to_string(),
        });
    }
    let unit = t.divide_by(b)?;
    let scan = |member: &dyn Fn(u64) -> bool| {
        let best = (1..=i_bound).filter(|&i| member(i)).max();
        match best {
            Some(k) if k == i_bound => BruteRSub::AboveBound,
            Some(k) => BruteRSub::Finite(k),
            None => BruteRSub::Finite(0),
        }
    };
    match set.base() {
        // i·(t/b) = (i·a / (b'·b))·base with t = (a/b')·base: only the
        // ratio moves, so the scan stays in integers.
        Some(base) => {
            let Some((a0, b0)) = ratio_in_omega(base, &unit) else {
                return Ok(BruteRSub::Finite(0));
            };
            let (density, strict) = match set.form() {
                Form::FiniteType {
                    density, strict, ..
                } => (density.clone(), *strict),
                _ => (DensityBound::Infinity, false),
            };
            Ok(scan(&|i| {
                let num = &a0 * BigUint::from(i);
                let g = num.gcd(&b0);
                let (a, d) = (&num / &g, &b0 / &g);
                representable(&a, &d, &density, strict, base)
            }))
        }
        None => Ok(scan(&|i| {
            definition_contains(set, &unit.mul_natural(i).expect("positive"))
        })),
    }
}

/// Brute `r_t(b)` for every `b` in `divisors`, with the scan bound
/// `slack·b + slack`.
pub fn brute_table(
    set: &SaturatedSet,
    t: &Steinitz,
    divisors: &[u64],
    slack: u64,
) -> Result<BTreeMap<u64, BruteRSub>> {
    divisors
        .iter()
        .map(|&b| Ok((b, r_sub_brute(set, t, b, slack * b + slack)?)))
        .collect()
}

/// Divisor pairs `b | c` with both in `Ω(t) ∩ [1, bound]`.
pub fn divisor_pairs(t: &Steinitz, bound: u64) -> Vec<(u64, u64)> {
    let omega = t.enumerate_omega(bound);
    omega
        .iter()
        .flat_map(|&b| omega.iter().filter(move |&&c| c % b == 0).map(move |&c| (b, c)))
        .collect()
}

/// The inequality ladder and the floor recurrence on brute-force values:
///
/// 1. `r(b)/b ≤ r(c)/c`
/// 2. `⌊r(c)/(c/b)⌋ ≤ r(b)`
/// 3. `⌊r(c)/(c/b)⌋ = r(b)`
/// 4. `r(c)/c < r(b)/b + 1/b`
pub fn check_inequality_suite(set: &SaturatedSet, t: &Steinitz, pairs: &[(u64, u64)], slack: u64) -> Result<Report> {
    let mut divisors: Vec<u64> = pairs.iter().flat_map(|&(b, c)| [b, c]).collect();
    divisors.sort_unstable();
    divisors.dedup();
    let table = brute_table(set, t, &divisors, slack)?;
    let mut report = Report::new();
    let finite: Vec<(u64, u64, u128, u128)> = pairs
        .iter()
        .filter_map(|&(b, c)| match (&table[&b], &table[&c]) {
            (BruteRSub::Finite(rb), BruteRSub::Finite(rc)) => {
                Some((b, c, u128::from(*rb), u128::from(*rc)))
            }
            _ => None,
        })
        .collect();
    let note = format!("{} pairs", finite.len());
    let first = |pred: &dyn Fn(u128, u128, u128, u128) -> bool| -> Option<String> {
        finite.iter().find_map(|&(b, c, rb, rc)| {
            (!pred(u128::from(b), u128::from(c), rb, rc)).then(|| format!("b={b} c={c} r(b)={rb} r(c)={rc}"))
        })
    };
    report.record("ladder-monotone", first(&|b, c, rb, rc| rb * c <= rc * b), note.clone());
    report.record("ladder-floor-bound", first(&|b, c, rb, rc| rc / (c / b) <= rb), note.clone());
    report.record("ladder-floor-recurrence", first(&|b, c, rb, rc| rc / (c / b) == rb), note.clone());
    report.record("ladder-upper", first(&|b, c, rb, rc| rc * b < (rb + 1) * c), note);
    let mixed = pairs.iter().find(|&&(b, c)| {
        matches!(table[&b], BruteRSub::AboveBound) != matches!(table[&c], BruteRSub::AboveBound)
    });
    report.record(
        "uniform-type",
        mixed.map(|&(b, c)| format!("b={b} gives {} but c={c} gives {}", table[&b], table[&c])),
        "",
    );
    Ok(report)
}

/// `r_t(b) ≤ r·b ≤ r_t(b) + 1` for each `b`, with brute-force `r_t(b)` and
/// the closed-form density `r` at `t`.
pub fn check_density_sandwich(set: &SaturatedSet, t: &Steinitz, divisors: &[u64], slack: u64) -> Result<Report> {
    let r = set.density(t)?;
    let table = brute_table(set, t, divisors, slack)?;
    let mut failure = None;
    let mut checked = 0usize;
    for (&b, value) in &table {
        let BruteRSub::Finite(k) = value else { continue };
        checked += 1;
        let bb = BigUint::from(b);
        let low = r.cmp_scaled(&BigUint::from(*k), &bb) != Ordering::Greater;
        let high = r.cmp_scaled(&BigUint::from(*k + 1), &bb) != Ordering::Less;
        if !(low && high) {
            failure = Some(format!("b={b} r(b)={k} r={r}"));
            break;
        }
    }
    let mut report = Report::new();
    report.record("density-sandwich", failure, format!("{checked} divisors"));
    Ok(report)
}

/// A chain of full matrix algebras `M_{n_0} → M_{n_1} → …` where
/// `n_{i+1} = m_i·n_i + z_i`: each matrix is repeated `m_i` times down the
/// diagonal and padded by `z_i` zero rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMatrixChain {
    pub n0: u64,
    pub steps: Vec<(u64, u64)>,
}

impl FiniteMatrixChain {
    pub fn new(n0: u64, steps: Vec<(u64, u64)>) -> Result<Self> {
        if n0 == 0 {
            return Err(Error::Zero);
        }
        if let Some(i) = steps.iter().position(|&(m, _)| m == 0) {
            return Err(Error::MalformedChain(format!("step {} has multiplicity 0", i + 1)));
        }
        Ok(Self { n0, steps })
    }

    pub fn sizes(&self) -> Vec<u64> {
        let mut out = vec![self.n0];
        for &(m, z) in &self.steps {
            let n = *out.last().unwrap();
            out.push(m * n + z);
        }
        out
    }
}

/// Rank of one seed idempotent at every stage from its own onwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankRow {
    pub stage: usize,
    pub rank: u64,
    /// `(size, rank)` at stages `stage, stage + 1, …`.
    pub evolution: Vec<(u64, u64)>,
}

impl RankRow {
    /// `rank·∏ m_k` at every later stage.
    pub fn matches_product_formula(&self, chain: &FiniteMatrixChain) -> bool {
        let mut expected = self.rank;
        self.evolution.iter().enumerate().all(|(j, &(_, r))| {
            if j > 0 {
                expected *= chain.steps[self.stage + j - 1].0;
            }
            r == expected
        })
    }
}

/// Pushes diagonal 0/1 idempotents through the embeddings and counts ranks.
pub fn simulate_finite_chain(chain: &FiniteMatrixChain, seeds: &[(usize, u64)]) -> Result<Vec<RankRow>> {
    let sizes = chain.sizes();
    seeds
        .iter()
        .map(|&(stage, rank)| {
            let Some(&n) = sizes.get(stage) else {
                return Err(Error::MalformedChain(format!("no stage {stage}")));
            };
            if rank == 0 || rank > n {
                return Err(Error::InvalidIdempotent(format!("rank {rank} at size {n}")));
            }
            let mut diag: Vec<bool> = (0..n).map(|i| i < rank).collect();
            let mut evolution = vec![(n, rank)];
            for &(m, z) in &chain.steps[stage..] {
                let block = diag.clone();
                diag = Vec::with_capacity(block.len() * m as usize + z as usize);
                for _ in 0..m {
                    diag.extend_from_slice(&block);
                }
                diag.extend(core::iter::repeat_n(false, z as usize));
                evolution.push((diag.len() as u64, diag.iter().filter(|&&x| x).count() as u64));
            }
            Ok(RankRow {
                stage,
                rank,
                evolution,
            })
        })
        .collect()
}

/// `Spec(M_n(F))` read off from diagonal idempotents: `st(eM_ne) = rank(e)`.
pub fn spectrum_truncation(n: u64) -> Vec<u64> {
    let mut ranks: Vec<u64> = (1..=n)
        .map(|r| {
            let diag: Vec<bool> = (0..n).map(|i| i < r).collect();
            diag.iter().filter(|&&x| x).count() as u64
        })
        .collect();
    ranks.sort_unstable();
    ranks.dedup();
    ranks
}

/// Random members from the definition sweep, the three axioms on them, and
/// closed-form `r_t(b)` against the brute-force scan at random `b`.
pub fn saturation_fuzz(set: &SaturatedSet, trials: usize, seed: u64) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let window = EnumWindow::new(7, 40, 210)?;
    let pool = enumerate_members(set, &window);
    let mut report = Report::new();
    if pool.is_empty() {
        report.push("fuzz-members", false, "window holds no members");
        return Ok(report);
    }
    let members: Vec<Steinitz> = (0..trials)
        .map(|_| pool[rng.gen_range(0..pool.len())].1.clone())
        .collect();
    report.extend(check_saturation_axioms(set, &members));
    let mut mismatch = None;
    for t in members.iter().take(trials.min(200)) {
        let omega = t.enumerate_omega(60);
        let b = omega[rng.gen_range(0..omega.len())];
        let closed = set.r_sub(t, b)?;
        let bound = match &closed {
            RSub::Finite(k) => k.to_u64().unwrap_or(u64::MAX - 2).saturating_add(2).max(b * 4 + 4),
            RSub::Infinite => b * 4 + 4,
        };
        let brute = r_sub_brute(set, t, b, bound)?;
        if !brute.agrees_with(&closed) {
            mismatch = Some(format!("t={t} b={b} closed={closed} brute={brute}"));
            break;
        }
    }
    report.record("rsub-closed-vs-brute", mismatch, format!("{} members", members.len().min(200)));
    Ok(report)
}

/// The reference corpus of saturated sets, with labels.
pub fn corpus() -> Vec<(String, SaturatedSet)> {
    let s = |text: &str| crate::text::eval_steinitz(text).expect("corpus literal");
    let mut out: Vec<SaturatedSet> = vec![
        SaturatedSet::segment(1).unwrap(),
        SaturatedSet::segment(7).unwrap(),
        SaturatedSet::all_naturals(),
        SaturatedSet::inf_type(&s("2^inf")),
        SaturatedSet::inf_type(&s("2^inf*3")),
        SaturatedSet::inf_type(&s("P^1")),
    ];
    let bases = [s("P^1"), s("P^1*2^3")];
    let rationals = [(1, 1), (3, 2), (7, 3), (5, 2)];
    for base in &bases {
        for &(u, v) in &rationals {
            for strict in [false, true] {
                let r = DensityBound::rational(u, v).unwrap();
                out.push(SaturatedSet::finite_type(r, base, strict).unwrap());
            }
        }
        for d in [2, 5] {
            let r = DensityBound::surd(QuadraticSurd::sqrt(d).unwrap()).unwrap();
            out.push(SaturatedSet::finite_type(r, base, false).unwrap());
        }
    }
    out.into_iter().map(|set| (set.to_string(), set)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(text: &str) -> SaturatedSet {
        text.parse().unwrap()
    }

    fn s(text: &str) -> Steinitz {
        crate::text::eval_steinitz(text).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        let w = EnumWindow::new(5, 6, 6).unwrap();
        let ratios: Vec<String> = enumerate_members(&set("S(1, P^1)"), &w)
            .into_iter()
            .map(|(q, _)| q.to_string())
            .collect();
        assert_eq!(ratios, ["1/6", "1/5", "1/3", "2/5", "1/2", "3/5", "2/3", "4/5", "5/6", "1"]);
        let seg: Vec<String> = enumerate_members(&set("[1..4]"), &EnumWindow::new(1, 10, 1).unwrap())
            .into_iter()
            .map(|(_, t)| t.to_string())
            .collect();
        assert_eq!(seg, ["1", "2", "3", "2^2"]);
        let strict = enumerate_members(&set("S+(3/2, P^1)"), &EnumWindow::new(3, 6, 6).unwrap());
        let has = |u, v| strict.iter().any(|(q, _)| *q == PositiveRational::new(u, v).unwrap());
        assert!(!has(3, 2));
        assert!(has(4, 3));
    }

    #[test]
    fn enumeration_agrees_with_contains() {
        let w = EnumWindow::new(7, 30, 30).unwrap();
        for (_, set) in corpus() {
            for (_, t) in enumerate_members(&set, &w) {
                assert!(set.contains(&t), "{set} should contain {t}");
            }
        }
    }

    #[test]
    fn brute_r_sub_examples() {
        let p = s("P^1");
        assert_eq!(r_sub_brute(&set("S(3/2, P^1)"), &p, 2, 100).unwrap(), BruteRSub::Finite(3));
        assert_eq!(r_sub_brute(&set("S+(3/2, P^1)"), &p, 2, 100).unwrap(), BruteRSub::Finite(2));
        assert_eq!(
            r_sub_brute(&set("S(inf, 2^inf)"), &s("2^inf"), 2, 1000).unwrap(),
            BruteRSub::AboveBound
        );
        assert_eq!(r_sub_brute(&set("[1..10]"), &s("6"), 3, 100).unwrap(), BruteRSub::Finite(5));
    }

    #[test]
    fn inequality_suite_examples() {
        let p = s("P^1");
        for text in ["S(3/2, P^1)", "S+(3/2, P^1)", "S(sqrt(2), P^1)"] {
            let report = check_inequality_suite(&set(text), &p, &[(2, 6)], 4).unwrap();
            assert!(report.passed(), "{text}: {report}");
        }
        let table = brute_table(&set("S(sqrt(2), P^1)"), &p, &[2, 6], 4).unwrap();
        assert_eq!(table[&2], BruteRSub::Finite(2));
        assert_eq!(table[&6], BruteRSub::Finite(8));
    }

    #[test]
    fn finite_chains() {
        let doubling = FiniteMatrixChain::new(2, vec![(2, 0), (2, 0)]).unwrap();
        let rows = simulate_finite_chain(&doubling, &[(0, 1)]).unwrap();
        assert_eq!(rows[0].evolution, [(2, 1), (4, 2), (8, 4)]);
        let padded = FiniteMatrixChain::new(2, vec![(2, 1), (2, 1)]).unwrap();
        assert_eq!(padded.sizes(), [2, 5, 11]);
        let rows = simulate_finite_chain(&padded, &[(0, 1), (1, 3)]).unwrap();
        assert_eq!(rows[0].evolution, [(2, 1), (5, 2), (11, 4)]);
        assert!(rows.iter().all(|r| r.matches_product_formula(&padded)));
        assert!(simulate_finite_chain(&padded, &[(0, 3)]).is_err());
        assert_eq!(spectrum_truncation(4), [1, 2, 3, 4]);
    }

    #[test]
    fn fuzz_passes_on_corpus_sample() {
        for text in ["S(7/3, 2^3*P^1)", "S+(5/2, P^1)", "S(inf, 2^inf*3)", "[1..7]"] {
            let report = saturation_fuzz(&set(text), 100, 9).unwrap();
            assert!(report.passed(), "{text}: {report}");
        }
    }

    #[test]
    fn corpus_shape() {
        let c = corpus();
        assert_eq!(c.len(), 26);
        let mut names: Vec<&String> = c.iter().map(|(n, _)| n).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), 26);
    }
}
