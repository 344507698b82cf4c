//! Saturated subsets of Steinitz numbers in canonical form.
//!
//! Every saturated set is one of: a segment `{1, …, n}`, all of `ℕ`,
//! `S(∞, s)`, `S(r, s)` or `S⁺(r, s)` for an infinite base `s`. Membership of
//! `t` in a based set reduces to the canonical ratio `a/b` of `t` to the base,
//! followed by an exact comparison `a ≤ r·b` (or `a < r·b`).

use alloc::string::ToString;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::density::DensityBound;
use crate::error::{Error, Result};
use crate::sample::Sampler;
use crate::steinitz::Steinitz;

/// Internal shape of a [`SaturatedSet`]. Values are only built through the
/// `SaturatedSet` constructors, so the invariants below always hold:
///
/// * `Segment(n)`: `n` is a natural number.
/// * `InfType(s)` and `FiniteType { base, .. }`: `base` is infinite.
/// * `FiniteType.density` is finite and at least 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Form {
    Segment(Steinitz),
    AllNaturals,
    InfType(Steinitz),
    FiniteType {
        density: DensityBound,
        base: Steinitz,
        strict: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SaturatedSet {
    form: Form,
}

/// Outcome of comparing two saturated sets; any two are disjoint or nested.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Inclusion {
    Disjoint,
    Equal,
    LeftInRight,
    RightInLeft,
}

impl Inclusion {
    pub fn left_subset(self) -> bool {
        matches!(self, Inclusion::Equal | Inclusion::LeftInRight)
    }

    pub fn name(self) -> &'static str {
        match self {
            Inclusion::Disjoint => "Disjoint",
            Inclusion::Equal => "Equal",
            Inclusion::LeftInRight => "LeftInRight",
            Inclusion::RightInLeft => "RightInLeft",
        }
    }
}

impl fmt::Display for Inclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `r_s(b) = max { i ≥ 1 | i·s/b ∈ S }`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RSub {
    Finite(BigUint),
    Infinite,
}

impl fmt::Display for RSub {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RSub::Finite(n) => write!(f, "{n}"),
            RSub::Infinite => f.write_str("inf"),
        }
    }
}

/// How the union of an increasing chain behaves past its finite prefix.
/// Densities are measured at the base of the chain's first set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TailRule {
    AttainedDensity(DensityBound),
    ApproachedDensity(DensityBound),
    Unbounded,
}

impl TailRule {
    pub fn name(&self) -> &'static str {
        match self {
            TailRule::AttainedDensity(_) => "attained",
            TailRule::ApproachedDensity(_) => "approached",
            TailRule::Unbounded => "unbounded",
        }
    }

    pub fn density(&self) -> Option<&DensityBound> {
        match self {
            TailRule::AttainedDensity(r) | TailRule::ApproachedDensity(r) => Some(r),
            TailRule::Unbounded => None,
        }
    }
}

/// Sort key for based sets at a fixed base: `S⁺(r) ⊂ S(r) ⊂ S(∞)`.
fn nesting_key(density: DensityBound, strict: bool) -> (DensityBound, bool) {
    (density, !strict)
}

impl SaturatedSet {
    /// `{1, …, n}`.
    pub fn segment(n: u64) -> Result<Self> {
        Self::segment_of(&Steinitz::from_natural(n)?)
    }

    /// `{1, …, n}` for a natural Steinitz number `n`.
    pub fn segment_of(n: &Steinitz) -> Result<Self> {
        if !n.is_natural() {
            return Err(Error::NotMember {
                element: n.to_string(),
                set: "N".to_string(),
            });
        }
        Ok(Self {
            form: Form::Segment(n.clone()),
        })
    }

    pub fn all_naturals() -> Self {
        Self {
            form: Form::AllNaturals,
        }
    }

    /// `S(∞, s)`; equals `ℕ` when `s` is natural.
    pub fn inf_type(base: &Steinitz) -> Self {
        if base.is_natural() {
            Self::all_naturals()
        } else {
            Self {
                form: Form::InfType(base.clone()),
            }
        }
    }

    /// `S(r, s)` (`strict = false`) or `S⁺(r, s)` (`strict = true`), normalized:
    ///
    /// * `r = ∞` gives `S(∞, s)`;
    /// * a base with an infinite prime exponent gives `S(∞, s)`, since every
    ///   bound `a ≤ r·b` can then be met by enlarging `b` by that prime;
    /// * `strict` is cleared when the two forms coincide (irrational `r`, or
    ///   `r = u/v` with `v ∉ Ω(s)`).
    pub fn finite_type(density: DensityBound, base: &Steinitz, strict: bool) -> Result<Self> {
        if density.is_infinite() {
            return Ok(Self::inf_type(base));
        }
        if base.is_natural() {
            return Err(Error::NaturalBase(base.to_string()));
        }
        let density = density.checked()?;
        if !base.is_infinity_free() {
            return Ok(Self::inf_type(base));
        }
        let strict = strict
            && density
                .as_rational()
                .is_some_and(|q| base.omega_contains_denominator(q));
        Ok(Self {
            form: Form::FiniteType {
                density,
                base: base.clone(),
                strict,
            },
        })
    }

    /// `S(r, s)` / `S⁺(r, s)` exactly as written, skipping normalization.
    ///
    /// Membership follows the existential definition, so a base with an
    /// infinite prime still behaves like `S(∞, s)`; only the formal
    /// descriptor differs.
    pub fn raw_finite_type(density: DensityBound, base: &Steinitz, strict: bool) -> Result<Self> {
        if density.is_infinite() {
            return Err(Error::DensityBelowOne("inf".to_string()));
        }
        if base.is_natural() {
            return Err(Error::NaturalBase(base.to_string()));
        }
        Ok(Self {
            form: Form::FiniteType {
                density: density.checked()?,
                base: base.clone(),
                strict,
            },
        })
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    /// Re-runs the normalizing constructors.
    pub fn normalized(&self) -> Self {
        match &self.form {
            Form::FiniteType {
                density,
                base,
                strict,
            } => Self::finite_type(density.clone(), base, *strict)
                .expect("raw constructor already validated the inputs"),
            _ => self.clone(),
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized() == *self
    }

    /// True for sets of natural numbers.
    pub fn is_natural_kind(&self) -> bool {
        matches!(self.form, Form::Segment(_) | Form::AllNaturals)
    }

    pub fn base(&self) -> Option<&Steinitz> {
        match &self.form {
            Form::InfType(s) => Some(s),
            Form::FiniteType { base, .. } => Some(base),
            _ => None,
        }
    }

    pub fn is_infinite_type(&self) -> bool {
        match &self.form {
            Form::AllNaturals | Form::InfType(_) => true,
            Form::FiniteType { base, .. } => !base.is_infinity_free(),
            Form::Segment(_) => false,
        }
    }

    pub fn contains(&self, t: &Steinitz) -> bool {
        match &self.form {
            Form::Segment(n) => t.is_natural() && t.cmp_connected(n) != Some(Ordering::Greater),
            Form::AllNaturals => t.is_natural(),
            Form::InfType(s) => s.rationally_connected(t),
            Form::FiniteType {
                density,
                base,
                strict,
            } => {
                let Ok(q) = base.canonical_ratio(t) else {
                    return false;
                };
                if !base.is_infinity_free() {
                    return true;
                }
                let ord = density.cmp_scaled(&q.numer(), &q.denom());
                if *strict {
                    ord == Ordering::Less
                } else {
                    ord != Ordering::Greater
                }
            }
        }
    }

    fn require_member(&self, t: &Steinitz) -> Result<()> {
        if self.contains(t) {
            Ok(())
        } else {
            Err(Error::NotMember {
                element: t.to_string(),
                set: self.to_string(),
            })
        }
    }

    /// Density and strictness of this set re-expressed at the member `t`:
    /// for `t = (a/b)·s`, `S(r, s) = S(r·b/a, t)`.
    pub fn rebase(&self, t: &Steinitz) -> Result<(DensityBound, bool)> {
        if self.is_natural_kind() {
            return Err(Error::NoBase(self.to_string()));
        }
        self.require_member(t)?;
        match &self.form {
            Form::FiniteType {
                density,
                base,
                strict,
            } if base.is_infinity_free() => {
                let q = base.canonical_ratio(t)?;
                Ok((density.scale(&q.recip()), *strict))
            }
            _ => Ok((DensityBound::Infinity, false)),
        }
    }

    /// `r_S(t) = lim r_t(b)/b` over `b ∈ Ω(t)`.
    pub fn density(&self, t: &Steinitz) -> Result<DensityBound> {
        if t.is_natural() {
            return Err(Error::NaturalElement(t.to_string()));
        }
        Ok(self.rebase(t)?.0)
    }

    /// Closed form of `r_t(b)` for `t ∈ S`, `b ∈ Ω(t)`.
    pub fn r_sub(&self, t: &Steinitz, b: u64) -> Result<RSub> {
        self.require_member(t)?;
        if !t.omega_contains(b) {
            return Err(Error::NotDivisor {
                divisor: b.to_string(),
                number: t.to_string(),
            });
        }
        let b_big = BigUint::from(b);
        match &self.form {
            Form::Segment(n) => {
                let n = n.to_natural().expect("segment bound is natural");
                let t = t.to_natural().expect("member of a segment is natural");
                Ok(RSub::Finite(n * b_big / t))
            }
            Form::AllNaturals | Form::InfType(_) => Ok(RSub::Infinite),
            Form::FiniteType { .. } => {
                let (r, strict) = self.rebase(t)?;
                if r.is_infinite() {
                    return Ok(RSub::Infinite);
                }
                let value = match r.times_exact(&b_big) {
                    Some(rb) if strict => rb - 1u32,
                    Some(rb) => rb,
                    None => r.floor_times(&b_big).expect("finite density"),
                };
                Ok(RSub::Finite(value))
            }
        }
    }

    /// Descriptor-level equality: same constructor, with `S(r, s)`-forms
    /// compared after moving the second density to the first base.
    pub fn equals_formal(&self, other: &Self) -> bool {
        match (&self.form, &other.form) {
            (Form::Segment(n), Form::Segment(m)) => n == m,
            (Form::AllNaturals, Form::AllNaturals) => true,
            (Form::InfType(s), Form::InfType(t)) => s.rationally_connected(t),
            (
                Form::FiniteType {
                    density: r1,
                    base: s1,
                    strict: st1,
                },
                Form::FiniteType {
                    density: r2,
                    base: s2,
                    strict: st2,
                },
            ) => {
                st1 == st2
                    && s2
                        .canonical_ratio(s1)
                        .is_ok_and(|q| r2.scale(&q.recip()).cmp(r1) == Ordering::Equal)
            }
            _ => false,
        }
    }

    /// A sampled element on which the two sets disagree, drawing `budget`
    /// members from each side.
    pub fn find_disagreement(&self, other: &Self, budget: usize, seed: u64) -> Option<Steinitz> {
        let one_way = |a: &Self, b: &Self| {
            let mut sampler = Sampler::new(a, seed);
            (0..budget)
                .filter_map(|_| sampler.member())
                .find(|t| !b.contains(t))
        };
        one_way(self, other).or_else(|| one_way(other, self))
    }

    /// Set-level equality, semi-decided on `budget` sampled members each way.
    pub fn equals_extensional(&self, other: &Self, budget: usize) -> bool {
        self.find_disagreement(other, budget, 0).is_none()
    }

    /// Exact trichotomy: disjoint, equal, or strictly nested.
    pub fn compare_inclusion(&self, other: &Self) -> Inclusion {
        let (a, b) = (self.normalized(), other.normalized());
        let ordering = match (&a.form, &b.form) {
            (Form::Segment(n), Form::Segment(m)) => {
                n.cmp_connected(m).expect("naturals are connected")
            }
            (Form::Segment(_), Form::AllNaturals) => Ordering::Less,
            (Form::AllNaturals, Form::Segment(_)) => Ordering::Greater,
            (Form::AllNaturals, Form::AllNaturals) => Ordering::Equal,
            _ if a.is_natural_kind() || b.is_natural_kind() => return Inclusion::Disjoint,
            _ => {
                let (sa, sb) = (a.base().unwrap(), b.base().unwrap());
                let Ok(q) = sb.canonical_ratio(sa) else {
                    return Inclusion::Disjoint;
                };
                let key = |set: &Self, q: Option<&crate::PositiveRational>| match &set.form {
                    Form::FiniteType {
                        density, strict, ..
                    } => {
                        let r = q.map_or_else(|| density.clone(), |q| density.scale(&q.recip()));
                        nesting_key(r, *strict)
                    }
                    _ => nesting_key(DensityBound::Infinity, false),
                };
                key(&a, None).cmp(&key(&b, Some(&q)))
            }
        };
        match ordering {
            Ordering::Less => Inclusion::LeftInRight,
            Ordering::Equal => Inclusion::Equal,
            Ordering::Greater => Inclusion::RightInLeft,
        }
    }

    /// Some member: the base when it belongs to the set, otherwise the base
    /// divided by its smallest prime divisor.
    pub fn witness_member(&self) -> Steinitz {
        match &self.form {
            Form::Segment(n) => n.clone(),
            Form::AllNaturals => Steinitz::one(),
            Form::InfType(s) => s.clone(),
            Form::FiniteType { base, .. } if self.contains(base) => base.clone(),
            Form::FiniteType { base, .. } => {
                let p = (0..)
                    .map(crate::arith::nth_prime)
                    .find(|&p| base.omega_contains(p))
                    .expect("an infinite base has a prime divisor");
                base.divide_by(p).expect("p ∈ Ω(base)")
            }
        }
    }

    /// The largest element, when the set has one.
    pub fn max_element(&self) -> Option<Steinitz> {
        match &self.normalized().form {
            Form::Segment(n) => Some(n.clone()),
            Form::FiniteType {
                density: DensityBound::Rational(q),
                base,
                strict: false,
            } if base.omega_contains_denominator(q) => base.scale(q).ok(),
            _ => None,
        }
    }
}

/// Union of an ascending chain of saturated sets whose behaviour past the
/// prefix is declared by `tail`.
pub fn union_chain(prefix: &[SaturatedSet], tail: Option<&TailRule>) -> Result<SaturatedSet> {
    let (first, last) = match (prefix.first(), prefix.last()) {
        (Some(f), Some(l)) => (f.normalized(), l.normalized()),
        _ => return Err(Error::EmptyChain),
    };
    for (i, pair) in prefix.windows(2).enumerate() {
        if !pair[0].compare_inclusion(&pair[1]).left_subset() {
            return Err(Error::NotAscending(i + 1));
        }
    }
    let Some(tail) = tail else {
        return Ok(last);
    };
    let union = match (tail, first.base()) {
        (TailRule::Unbounded, None) => SaturatedSet::all_naturals(),
        (TailRule::Unbounded, Some(base)) => SaturatedSet::inf_type(base),
        (rule, None) => return Err(Error::TailOnNaturals(rule.name())),
        (TailRule::AttainedDensity(r), Some(base)) => {
            SaturatedSet::finite_type(r.clone(), base, false)?
        }
        (TailRule::ApproachedDensity(r), Some(base)) => {
            SaturatedSet::finite_type(r.clone(), base, true)?
        }
    };
    if prefix
        .iter()
        .any(|set| !set.compare_inclusion(&union).left_subset())
    {
        return Err(Error::TailBelowPrefix);
    }
    Ok(union)
}

impl fmt::Display for SaturatedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.form {
            Form::Segment(n) => write!(f, "[1..{}]", n.to_natural().unwrap_or_else(BigUint::one)),
            Form::AllNaturals => f.write_str("N"),
            Form::InfType(s) => write!(f, "S(inf, {s})"),
            Form::FiniteType {
                density,
                base,
                strict,
            } => write!(f, "S{}({density}, {base})", if *strict { "+" } else { "" }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::QuadraticSurd;
    use alloc::format;

    fn s(text: &str) -> Steinitz {
        crate::text::eval_steinitz(text).unwrap()
    }

    fn q(u: u64, v: u64) -> DensityBound {
        DensityBound::rational(u, v).unwrap()
    }

    fn sqrt(d: u64) -> DensityBound {
        DensityBound::surd(QuadraticSurd::sqrt(d).unwrap()).unwrap()
    }

    fn fin(r: DensityBound, base: &str, strict: bool) -> SaturatedSet {
        SaturatedSet::finite_type(r, &s(base), strict).unwrap()
    }

    #[test]
    fn constructors_normalize() {
        assert_eq!(SaturatedSet::inf_type(&s("6")), SaturatedSet::all_naturals());
        assert_eq!(
            fin(q(3, 2), "2^inf*3", false),
            SaturatedSet::inf_type(&s("2^inf*3"))
        );
        let surd = fin(sqrt(2), "P^1", true);
        assert_eq!(format!("{surd}"), "S((0+1*sqrt(2))/1, P^1)");
        // v = 2 ∈ Ω(P^1): the strict form survives.
        assert_eq!(format!("{}", fin(q(3, 2), "P^1", true)), "S+(3/2, P^1)");
        // v = 4 ∉ Ω(P^1): S⁺ = S.
        assert_eq!(format!("{}", fin(q(5, 4), "P^1", true)), "S(5/4, P^1)");
        assert_eq!(
            SaturatedSet::finite_type(q(3, 2), &s("6"), false),
            Err(Error::NaturalBase("2*3".into()))
        );
        assert!(matches!(
            SaturatedSet::finite_type(DensityBound::Rational(crate::PositiveRational::new(1, 2).unwrap()), &s("P^1"), false),
            Err(Error::DensityBelowOne(_))
        ));
        assert_eq!(
            SaturatedSet::finite_type(DensityBound::Infinity, &s("P^1"), false).unwrap(),
            SaturatedSet::inf_type(&s("P^1"))
        );
    }

    #[test]
    fn membership_examples() {
        assert!(SaturatedSet::segment(4).unwrap().contains(&s("3")));
        assert!(!SaturatedSet::segment(4).unwrap().contains(&s("5")));
        let one = fin(q(1, 1), "P^1", false);
        assert!(!one.contains(&s("(2)*P^1")));
        assert!(one.contains(&s("(1/2)*P^1")));
        assert!(!fin(sqrt(2), "P^1", false).contains(&s("(3/2)*P^1")));
        assert!(SaturatedSet::inf_type(&s("2^inf")).contains(&s("(5)*2^inf")));
        assert!(!SaturatedSet::inf_type(&s("2^inf")).contains(&s("3^inf")));
        assert!(SaturatedSet::all_naturals().contains(&s("97")));
        assert!(!SaturatedSet::all_naturals().contains(&s("P^1")));
    }

    #[test]
    fn strict_membership() {
        let closed = fin(q(3, 2), "P^1", false);
        let strict = fin(q(3, 2), "P^1", true);
        let boundary = s("(3/2)*P^1");
        assert!(closed.contains(&boundary));
        assert!(!strict.contains(&boundary));
        assert!(strict.contains(&s("(4/3)*P^1")));
    }

    #[test]
    fn rebase_scales_density() {
        let set = fin(q(3, 2), "P^1", false);
        assert_eq!(set.rebase(&s("(1/2)*P^1")).unwrap(), (q(3, 1), false));
        assert_eq!(set.rebase(&s("P^1")).unwrap(), (q(3, 2), false));
        assert_eq!(
            SaturatedSet::inf_type(&s("2^inf"))
                .rebase(&s("(3)*2^inf"))
                .unwrap()
                .0,
            DensityBound::Infinity
        );
        assert!(matches!(
            set.rebase(&s("(2)*P^1")),
            Err(Error::NotMember { .. })
        ));
        assert!(matches!(
            SaturatedSet::segment(3).unwrap().rebase(&s("2")),
            Err(Error::NoBase(_))
        ));
    }

    #[test]
    fn formal_equality() {
        assert!(fin(q(3, 2), "P^1", false).equals_formal(&fin(q(3, 1), "(1/2)*P^1", false)));
        assert!(!fin(q(3, 2), "P^1", false).equals_formal(&fin(q(3, 2), "P^1", true)));
        let x = fin(sqrt(5), "P^1*2^3", false);
        assert!(x.equals_formal(&x));
        assert!(SaturatedSet::inf_type(&s("2^inf")).equals_formal(&SaturatedSet::inf_type(&s("(3)*2^inf"))));
    }

    #[test]
    fn inclusion_examples() {
        use Inclusion::*;
        let strict = fin(q(3, 2), "P^1", true);
        let closed = fin(q(3, 2), "P^1", false);
        assert_eq!(strict.compare_inclusion(&closed), LeftInRight);
        assert_eq!(closed.compare_inclusion(&strict), RightInLeft);
        assert_eq!(
            fin(q(1, 1), "P^1", false).compare_inclusion(&fin(q(2, 1), "P^1", false)),
            LeftInRight
        );
        assert_eq!(
            SaturatedSet::inf_type(&s("2^inf")).compare_inclusion(&SaturatedSet::inf_type(&s("P^1"))),
            Disjoint
        );
        assert_eq!(
            SaturatedSet::segment(3).unwrap().compare_inclusion(&SaturatedSet::all_naturals()),
            LeftInRight
        );
        assert_eq!(
            SaturatedSet::segment(3).unwrap().compare_inclusion(&closed),
            Disjoint
        );
        // Same set written at two bases.
        assert_eq!(closed.compare_inclusion(&fin(q(3, 1), "(1/2)*P^1", false)), Equal);
        assert_eq!(
            fin(sqrt(2), "P^1", false).compare_inclusion(&fin(sqrt(5), "P^1", false)),
            LeftInRight
        );
    }

    #[test]
    fn r_sub_closed_forms() {
        let closed = fin(q(3, 2), "P^1", false);
        let base = s("P^1");
        assert_eq!(closed.r_sub(&base, 2).unwrap(), RSub::Finite(3u32.into()));
        assert_eq!(closed.r_sub(&base, 3).unwrap(), RSub::Finite(4u32.into()));
        let strict = fin(q(3, 2), "P^1", true);
        assert_eq!(strict.r_sub(&base, 2).unwrap(), RSub::Finite(2u32.into()));
        assert_eq!(fin(sqrt(2), "P^1", false).r_sub(&base, 2).unwrap(), RSub::Finite(2u32.into()));
        assert_eq!(
            SaturatedSet::inf_type(&s("2^inf")).r_sub(&s("2^inf"), 2).unwrap(),
            RSub::Infinite
        );
        assert_eq!(
            SaturatedSet::segment(10).unwrap().r_sub(&s("6"), 3).unwrap(),
            RSub::Finite(5u32.into())
        );
        assert!(matches!(closed.r_sub(&base, 4), Err(Error::NotDivisor { .. })));
    }

    #[test]
    fn density_examples() {
        let closed = fin(q(3, 2), "P^1", false);
        assert_eq!(closed.density(&s("P^1")).unwrap(), q(3, 2));
        assert_eq!(closed.density(&s("(1/2)*P^1")).unwrap(), q(3, 1));
        assert_eq!(
            SaturatedSet::inf_type(&s("2^inf")).density(&s("2^inf")).unwrap(),
            DensityBound::Infinity
        );
        assert!(matches!(
            SaturatedSet::segment(4).unwrap().density(&s("2")),
            Err(Error::NaturalElement(_))
        ));
    }

    #[test]
    fn largest_elements() {
        assert_eq!(SaturatedSet::segment(7).unwrap().max_element(), Some(s("7")));
        assert_eq!(
            fin(q(3, 2), "P^1", false).max_element(),
            Some(s("(3)*P^1").divide_by(2).unwrap())
        );
        assert_eq!(fin(q(3, 2), "P^1", true).max_element(), None);
        assert_eq!(SaturatedSet::inf_type(&s("P^1")).max_element(), None);
        assert_eq!(fin(sqrt(2), "P^1", false).max_element(), None);
        assert_eq!(fin(q(5, 4), "P^1", false).max_element(), None);
    }

    #[test]
    fn chain_unions() {
        let base = s("P^1");
        let prefix = [fin(q(1, 1), "P^1", false), fin(q(3, 2), "P^1", false)];
        assert_eq!(union_chain(&prefix, None).unwrap(), prefix[1]);
        let one = [fin(q(1, 1), "P^1", false)];
        assert_eq!(
            union_chain(&one, Some(&TailRule::ApproachedDensity(q(2, 1)))).unwrap(),
            SaturatedSet::finite_type(q(2, 1), &base, true).unwrap()
        );
        assert_eq!(
            union_chain(&one, Some(&TailRule::Unbounded)).unwrap(),
            SaturatedSet::inf_type(&base)
        );
        let backwards = [prefix[1].clone(), prefix[0].clone()];
        assert_eq!(union_chain(&backwards, None), Err(Error::NotAscending(1)));
        assert_eq!(
            union_chain(&prefix, Some(&TailRule::AttainedDensity(q(5, 4)))),
            Err(Error::TailBelowPrefix)
        );
        assert_eq!(union_chain(&[], None), Err(Error::EmptyChain));
        let segs = [SaturatedSet::segment(1).unwrap(), SaturatedSet::segment(2).unwrap()];
        assert_eq!(
            union_chain(&segs, Some(&TailRule::Unbounded)).unwrap(),
            SaturatedSet::all_naturals()
        );
        assert!(segs[0].compare_inclusion(&segs[1]).left_subset());
    }

    #[test]
    fn collapse_is_extensional_only() {
        let base = s("2^inf");
        let raw = SaturatedSet::raw_finite_type(q(1, 1), &base, false).unwrap();
        let inf = SaturatedSet::inf_type(&base);
        assert!(!raw.equals_formal(&inf));
        assert!(raw.equals_extensional(&inf, 100));
        assert_eq!(raw.normalized(), inf);
        assert!(!raw.is_normalized());
    }
}
