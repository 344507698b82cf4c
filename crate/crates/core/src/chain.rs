//! Increasing chains of corners `M_{k_1}(A_{s_1}) ⊂ M_{k_2}(A_{s_2}) ⊂ …`
//! realizing a saturated set as a spectrum, plus the corner-matching and
//! back-and-forth steps that certify isomorphism of two chains.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::algebra::AlgebraDescriptor;
use crate::arith;
use crate::error::{Error, Result};
use crate::saturated::{union_chain, Form, SaturatedSet, TailRule};
use crate::steinitz::Steinitz;

/// Default number of stages produced by [`realize`].
pub const DEFAULT_STAGES: usize = 4;

/// `M_k(A_s)`: a `k × k` matrix algebra over the unital algebra with
/// Steinitz number `s`, so `st = k·s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainStage {
    pub size: u64,
    pub inner: Steinitz,
}

impl ChainStage {
    pub fn st(&self) -> Steinitz {
        self.inner.mul_natural(self.size).expect("size is positive")
    }
}

/// Stages with `s_i = q_i·s_{i+1}` and `k_i·q_i ≤ k_{i+1}`, so each stage is a
/// north-west corner of the next.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainPresentation {
    stages: Vec<ChainStage>,
    quotients: Vec<u64>,
    tail: Option<TailRule>,
}

impl ChainPresentation {
    pub fn new(stages: Vec<ChainStage>, quotients: Vec<u64>, tail: Option<TailRule>) -> Result<Self> {
        let bad = |msg: alloc::string::String| Err(Error::MalformedChain(msg));
        if stages.is_empty() {
            return bad("no stages".to_string());
        }
        if quotients.len() + 1 != stages.len() {
            return bad(format!(
                "{} stages need {} quotients, got {}",
                stages.len(),
                stages.len() - 1,
                quotients.len()
            ));
        }
        if let Some(i) = stages.iter().position(|s| s.size == 0) {
            return bad(format!("stage {} has size 0", i + 1));
        }
        for (i, (pair, &q)) in stages.windows(2).zip(&quotients).enumerate() {
            let (cur, next) = (&pair[0], &pair[1]);
            if q == 0 || next.inner.mul_natural(q)? != cur.inner {
                return bad(format!("stage {}: inner number is not {q} times the next", i + 1));
            }
            if u128::from(cur.size) * u128::from(q) > u128::from(next.size) {
                return bad(format!(
                    "stage {}: {}·{q} exceeds the next size {}",
                    i + 1,
                    cur.size,
                    next.size
                ));
            }
        }
        Ok(Self {
            stages,
            quotients,
            tail,
        })
    }

    pub fn stages(&self) -> &[ChainStage] {
        &self.stages
    }

    pub fn quotients(&self) -> &[u64] {
        &self.quotients
    }

    pub fn tail(&self) -> Option<&TailRule> {
        self.tail.as_ref()
    }

    /// `st` of every stage, ascending.
    pub fn stage_st(&self) -> Vec<Steinitz> {
        self.stages.iter().map(ChainStage::st).collect()
    }
}

/// Default divisor chain: `b_i = ∏` over the first `i` primes `p` of
/// `p^min(v_p(s), i)`.
pub fn default_divisors(s: &Steinitz, stages: usize) -> Vec<u64> {
    (1..=stages)
        .map(|i| {
            (1..=i)
                .map(|j| {
                    let p = arith::nth_prime(j - 1);
                    let cap = match s.valuation(p) {
                        crate::steinitz::Exponent::Finite(e) => e.to_u64().unwrap_or(u64::MAX),
                        crate::steinitz::Exponent::Infinite => u64::MAX,
                    };
                    p.pow(cap.min(i as u64) as u32)
                })
                .product()
        })
        .collect()
}

fn validate_divisors(t: &Steinitz, divisors: &[u64]) -> Result<()> {
    if divisors.is_empty() {
        return Err(Error::InvalidDivisorChain("empty".to_string()));
    }
    if let Some(&b) = divisors.iter().find(|&&b| !t.omega_contains(b)) {
        return Err(Error::InvalidDivisorChain(format!("{b} does not divide {t}")));
    }
    if let Some(w) = divisors.windows(2).find(|w| w[1] % w[0] != 0) {
        return Err(Error::InvalidDivisorChain(format!("{} does not divide {}", w[0], w[1])));
    }
    Ok(())
}

/// Builds a chain whose union of spectra is `set`.
///
/// Based sets of finite type use `A_i = M_{r_t(b_i)}(A_{t/b_i})` for a member
/// `t` (the base when it belongs to the set). `divisors` defaults to
/// [`default_divisors`] with `stages` entries.
pub fn realize(set: &SaturatedSet, divisors: Option<&[u64]>, stages: usize) -> Result<ChainPresentation> {
    let set = set.normalized();
    let stages = stages.max(1);
    let unbounded = |inner: Steinitz| {
        let chain_stages = (1..=stages as u64)
            .map(|k| ChainStage {
                size: k,
                inner: inner.clone(),
            })
            .collect();
        ChainPresentation::new(chain_stages, alloc::vec![1; stages - 1], Some(TailRule::Unbounded))
    };
    match set.form() {
        Form::Segment(n) => {
            let size = n.to_u64().ok_or_else(|| Error::Overflow(n.to_string()))?;
            ChainPresentation::new(
                alloc::vec![ChainStage {
                    size,
                    inner: Steinitz::one()
                }],
                Vec::new(),
                None,
            )
        }
        Form::AllNaturals => unbounded(Steinitz::one()),
        Form::InfType(s) => unbounded(s.clone()),
        Form::FiniteType { strict, .. } => {
            let t = set.witness_member();
            let owned;
            let divisors = match divisors {
                Some(d) => d,
                None => {
                    owned = default_divisors(&t, stages);
                    &owned
                }
            };
            validate_divisors(&t, divisors)?;
            let mut chain_stages = Vec::with_capacity(divisors.len());
            for &b in divisors {
                let size = match set.r_sub(&t, b)? {
                    crate::saturated::RSub::Finite(k) => {
                        k.to_u64().ok_or_else(|| Error::Overflow(k.to_string()))?
                    }
                    crate::saturated::RSub::Infinite => unreachable!("finite type"),
                };
                chain_stages.push(ChainStage {
                    size,
                    inner: t.divide_by(b)?,
                });
            }
            let quotients = divisors.windows(2).map(|w| w[1] / w[0]).collect();
            let density = set.density(&chain_stages[0].st())?;
            let tail = if *strict {
                TailRule::ApproachedDensity(density)
            } else {
                TailRule::AttainedDensity(density)
            };
            ChainPresentation::new(chain_stages, quotients, Some(tail))
        }
    }
}

/// `Spec(⋃ A_i) = ⋃ Spec(A_i)` with `Spec(A_i) = S(1, k_i·s_i)`; tail
/// densities are read at `k_1·s_1`.
pub fn spectrum_of_chain(chain: &ChainPresentation) -> Result<SaturatedSet> {
    let prefix: Vec<SaturatedSet> = chain
        .stages
        .iter()
        .map(|s| AlgebraDescriptor::spec_unital(&s.st()).spectrum().clone())
        .collect();
    union_chain(&prefix, chain.tail.as_ref())
}

/// Rank data showing that the corner with `st = current` sits inside a
/// larger corner with `st = target`: both are `(rank/size)·scale`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerWitness {
    pub scale: Steinitz,
    pub size: BigUint,
    pub lower_rank: BigUint,
    pub upper_rank: BigUint,
}

/// For `current, target ∈ Spec(A)` with `target/current > 1`, idempotents of
/// ranks `lower_rank < upper_rank` in a common `M_size` stage.
pub fn match_corner(a: &AlgebraDescriptor, current: &Steinitz, target: &Steinitz) -> Result<CornerWitness> {
    let spectrum = a.spectrum();
    for t in [current, target] {
        if !spectrum.contains(t) {
            return Err(Error::Infeasible(format!("{t} is not in {spectrum}")));
        }
    }
    let up = current.canonical_ratio(target)?;
    if up.numer() <= up.denom() {
        return Err(Error::Infeasible(format!("{target} does not exceed {current}")));
    }
    let scale = match (a.is_unital(), a.st()) {
        (true, Some(st)) => st.clone(),
        _ => target.clone(),
    };
    let lo = scale.canonical_ratio(current)?;
    let hi = scale.canonical_ratio(target)?;
    let size = lo.denom().lcm(&hi.denom());
    let lower_rank = lo.numer() * (&size / lo.denom());
    let upper_rank = hi.numer() * (&size / hi.denom());
    debug_assert!(lower_rank < upper_rank && upper_rank <= size);
    Ok(CornerWitness {
        scale,
        size,
        lower_rank,
        upper_rank,
    })
}

/// Which chain a certificate step comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// A merged ascending sequence of stage `st` values from two chains, all in
/// the common spectrum: consecutive steps are corners of one another, which
/// is the data the back-and-forth argument threads together.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsomorphismCertificate {
    pub spectrum: SaturatedSet,
    pub steps: Vec<(Steinitz, Vec<(Side, usize)>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnequalSpectra {
    pub left: SaturatedSet,
    pub right: SaturatedSet,
}

impl core::fmt::Display for UnequalSpectra {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "unequal spectra: {} vs {}", self.left, self.right)
    }
}

fn ascending(a: &Steinitz, b: &Steinitz) -> Ordering {
    a.cmp_connected(b).expect("members of one spectrum are connected")
}

pub fn interleave(
    left: &ChainPresentation,
    right: &ChainPresentation,
) -> Result<core::result::Result<IsomorphismCertificate, UnequalSpectra>> {
    let (sl, sr) = (spectrum_of_chain(left)?, spectrum_of_chain(right)?);
    if !sl.equals_formal(&sr) {
        return Ok(Err(UnequalSpectra { left: sl, right: sr }));
    }
    let mut tagged: Vec<(Steinitz, (Side, usize))> = left
        .stage_st()
        .into_iter()
        .enumerate()
        .map(|(i, s)| (s, (Side::Left, i)))
        .chain(
            right
                .stage_st()
                .into_iter()
                .enumerate()
                .map(|(i, s)| (s, (Side::Right, i))),
        )
        .collect();
    tagged.sort_by(|x, y| ascending(&x.0, &y.0).then(x.1 .0.cmp_side(y.1 .0)).then(x.1 .1.cmp(&y.1 .1)));
    let mut steps: Vec<(Steinitz, Vec<(Side, usize)>)> = Vec::new();
    for (s, tag) in tagged {
        match steps.last_mut() {
            Some((last, tags)) if *last == s => tags.push(tag),
            _ => steps.push((s, alloc::vec![tag])),
        }
    }
    Ok(Ok(IsomorphismCertificate { spectrum: sl, steps }))
}

impl Side {
    fn cmp_side(self, other: Side) -> Ordering {
        (self as u8).cmp(&(other as u8))
    }
}

impl IsomorphismCertificate {
    /// Re-verifies the certificate against both chains: every step lies in
    /// the spectrum, steps strictly ascend, each step's tags point at stages
    /// with exactly that `st`, and every stage of both chains is covered.
    pub fn check(&self, left: &ChainPresentation, right: &ChainPresentation) -> bool {
        let (lst, rst) = (left.stage_st(), right.stage_st());
        let in_spectrum = self.steps.iter().all(|(s, _)| self.spectrum.contains(s));
        let strictly_ascending = self
            .steps
            .windows(2)
            .all(|w| w[0].0.cmp_connected(&w[1].0) == Some(Ordering::Less));
        let tags_match = self.steps.iter().all(|(s, tags)| {
            tags.iter().all(|&(side, i)| {
                let stages = if side == Side::Left { &lst } else { &rst };
                stages.get(i) == Some(s)
            })
        });
        let covered = |side: Side, n: usize| {
            (0..n).all(|i| self.steps.iter().any(|(_, tags)| tags.contains(&(side, i))))
        };
        in_spectrum
            && strictly_ascending
            && tags_match
            && covered(Side::Left, lst.len())
            && covered(Side::Right, rst.len())
    }
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
    fn default_divisor_chain() {
        assert_eq!(default_divisors(&s("P^1"), 4), [2, 6, 30, 210]);
        assert_eq!(default_divisors(&s("2^3*P^1"), 4), [2, 12, 120, 840]);
        assert_eq!(default_divisors(&s("2^0*P^1"), 3), [1, 3, 15]);
    }

    #[test]
    fn realize_finite_type() {
        let c = realize(&set("S(3/2, P^1)"), Some(&[2, 6]), 4).unwrap();
        assert_eq!(
            c.stages(),
            [
                ChainStage { size: 3, inner: s("(1/2)*P^1") },
                ChainStage { size: 9, inner: s("(1/6)*P^1") },
            ]
        );
        assert_eq!(c.quotients(), [3]);
        assert!(spectrum_of_chain(&c).unwrap().equals_formal(&set("S(3/2, P^1)")));
    }

    #[test]
    fn realize_roundtrips() {
        for text in [
            "[1..5]",
            "N",
            "S(inf, 2^inf)",
            "S(inf, P^1)",
            "S(1, P^1)",
            "S+(1, P^1)",
            "S+(3/2, P^1)",
            "S(sqrt(2), 2^3*P^1)",
        ] {
            let target = set(text);
            let chain = realize(&target, None, 4).unwrap();
            assert!(spectrum_of_chain(&chain).unwrap().equals_formal(&target), "{text}");
        }
        let seg = realize(&set("[1..5]"), None, 4).unwrap();
        assert_eq!(seg.stages(), [ChainStage { size: 5, inner: Steinitz::one() }]);
        let inf = realize(&set("S(inf, 2^inf)"), None, 3).unwrap();
        assert_eq!(inf.stages().len(), 3);
        assert_eq!(inf.tail(), Some(&TailRule::Unbounded));
    }

    #[test]
    fn malformed_chains() {
        let st = |size, t: &str| ChainStage { size, inner: s(t) };
        assert!(ChainPresentation::new(Vec::new(), Vec::new(), None).is_err());
        assert!(ChainPresentation::new(
            alloc::vec![st(3, "(1/2)*P^1"), st(8, "(1/6)*P^1")],
            alloc::vec![3],
            None
        )
        .is_err());
        assert!(ChainPresentation::new(
            alloc::vec![st(3, "(1/2)*P^1"), st(9, "(1/10)*P^1")],
            alloc::vec![3],
            None
        )
        .is_err());
        assert!(matches!(
            realize(&set("S(3/2, P^1)"), Some(&[2, 4]), 4),
            Err(Error::InvalidDivisorChain(_))
        ));
        assert!(matches!(
            realize(&set("S(3/2, P^1)"), Some(&[6, 10]), 4),
            Err(Error::InvalidDivisorChain(_))
        ));
    }

    #[test]
    fn corner_matching() {
        let a = AlgebraDescriptor::spec_unital(&s("P^1"));
        let w = match_corner(&a, &s("(1/2)*P^1"), &s("P^1")).unwrap();
        assert_eq!((w.size, w.lower_rank, w.upper_rank), (2u32.into(), 1u32.into(), 2u32.into()));
        assert!(matches!(match_corner(&a, &s("P^1"), &s("P^1")), Err(Error::Infeasible(_))));
        assert!(matches!(match_corner(&a, &s("(1/2)*P^1"), &s("(2)*P^1")), Err(Error::Infeasible(_))));
        let open = AlgebraDescriptor::from_spectrum(set("S+(3/2, P^1)"));
        let w = match_corner(&open, &s("(1/3)*P^1"), &s("(4/3)*P^1")).unwrap();
        assert_eq!((w.size, w.lower_rank, w.upper_rank), (4u32.into(), 1u32.into(), 4u32.into()));
    }

    #[test]
    fn interleaving() {
        let target = set("S(3/2, P^1)");
        let a = realize(&target, None, 4).unwrap();
        let b = realize(&target, Some(&[3, 15, 105]), 4).unwrap();
        let cert = interleave(&a, &b).unwrap().unwrap();
        assert!(cert.check(&a, &b));
        let seg = realize(&set("[1..3]"), None, 4).unwrap();
        let cert = interleave(&seg, &seg).unwrap().unwrap();
        assert_eq!(cert.steps.len(), 1);
        assert_eq!(cert.steps[0].0, s("3"));
        let x = realize(&set("S(1, P^1)"), None, 4).unwrap();
        let y = realize(&set("S+(3/2, P^1)"), None, 4).unwrap();
        assert!(interleave(&x, &y).unwrap().is_err());
    }
}
