//! Steinitz (supernatural) numbers in cofinite presentation.
//!
//! A Steinitz number is a formal product `∏ p^{r_p}` over all primes with
//! `r_p ∈ {0, 1, 2, …, ∞}`. Only numbers whose exponent is constant on all
//! but finitely many primes are representable: a *default* exponent plus a
//! finite map of exceptions. That class contains every natural number, `∏ p`,
//! `p^∞`, and is closed under every operation below.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, ToPrimitive, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::rational::PositiveRational;

/// A prime exponent: an arbitrary-precision natural number or `∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Exponent {
    Finite(BigUint),
    Infinite,
}

impl Exponent {
    pub fn zero() -> Self {
        Exponent::Finite(BigUint::zero())
    }

    pub fn finite(e: u64) -> Self {
        Exponent::Finite(BigUint::from(e))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Exponent::Finite(e) if e.is_zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Exponent::Infinite)
    }

    pub fn as_finite(&self) -> Option<&BigUint> {
        match self {
            Exponent::Finite(e) => Some(e),
            Exponent::Infinite => None,
        }
    }

    /// Adds a signed finite shift; `∞` absorbs. `None` if the result would be negative.
    pub fn shift(&self, by: &BigInt) -> Option<Exponent> {
        match self {
            Exponent::Infinite => Some(Exponent::Infinite),
            Exponent::Finite(e) => {
                let v = BigInt::from_biguint(Sign::Plus, e.clone()) + by;
                v.to_biguint().map(Exponent::Finite)
            }
        }
    }
}

impl From<u64> for Exponent {
    fn from(e: u64) -> Self {
        Exponent::finite(e)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(e) => write!(f, "{e}"),
            Exponent::Infinite => f.write_str("inf"),
        }
    }
}

/// A Steinitz number in minimal cofinite presentation.
///
/// Invariant: no exception equals the default, and every key is prime. With
/// that invariant, derived equality is equality of Steinitz numbers. The
/// derived `Ord` is a presentation order for use as a map key only; the
/// divisibility order is [`Steinitz::divides`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Steinitz {
    default: Exponent,
    exceptions: BTreeMap<u64, Exponent>,
}

impl Default for Steinitz {
    fn default() -> Self {
        Self::one()
    }
}

impl Steinitz {
    pub fn one() -> Self {
        Steinitz {
            default: Exponent::zero(),
            exceptions: BTreeMap::new(),
        }
    }

    pub fn from_natural(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Zero);
        }
        Ok(Steinitz {
            default: Exponent::zero(),
            exceptions: arith::factor(n)
                .into_iter()
                .map(|(p, e)| (p, Exponent::finite(e.into())))
                .collect(),
        })
    }

    /// Builds a number from a default exponent and explicit prime exponents.
    ///
    /// Rejects non-prime keys and duplicated primes; the result is minimal.
    pub fn from_parts(
        default: Exponent,
        primes: impl IntoIterator<Item = (u64, Exponent)>,
    ) -> Result<Self> {
        let mut exceptions = BTreeMap::new();
        for (p, e) in primes {
            if !arith::is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            if exceptions.insert(p, e).is_some() {
                return Err(Error::DuplicatePrime(p));
            }
        }
        let mut s = Steinitz {
            default,
            exceptions,
        };
        s.normalize();
        Ok(s)
    }

    /// `∏ p` over all primes, i.e. `P^1`.
    pub fn all_primes() -> Self {
        Steinitz {
            default: Exponent::finite(1),
            exceptions: BTreeMap::new(),
        }
    }

    pub fn prime_power(p: u64, e: Exponent) -> Result<Self> {
        Self::from_parts(Exponent::zero(), [(p, e)])
    }

    fn normalize(&mut self) {
        let default = &self.default;
        self.exceptions.retain(|_, e| e != default);
    }

    pub fn default_exponent(&self) -> &Exponent {
        &self.default
    }

    /// Primes whose exponent differs from the default, ascending.
    pub fn exceptions(&self) -> impl Iterator<Item = (u64, &Exponent)> {
        self.exceptions.iter().map(|(&p, e)| (p, e))
    }

    /// `r_p(s)`; `p` is assumed prime.
    pub fn valuation(&self, p: u64) -> &Exponent {
        debug_assert!(arith::is_prime(p), "valuation at non-prime {p}");
        self.exceptions.get(&p).unwrap_or(&self.default)
    }

    pub fn is_natural(&self) -> bool {
        self.default.is_zero() && self.exceptions.values().all(|e| !e.is_infinite())
    }

    pub fn is_infinite(&self) -> bool {
        !self.is_natural()
    }

    pub fn is_infinity_free(&self) -> bool {
        !self.default.is_infinite() && self.exceptions.values().all(|e| !e.is_infinite())
    }

    /// The value of a natural Steinitz number.
    pub fn to_natural(&self) -> Option<BigUint> {
        if !self.is_natural() {
            return None;
        }
        let mut acc = BigUint::one();
        for (&p, e) in &self.exceptions {
            let k = e.as_finite()?.to_u32()?;
            acc *= BigUint::from(p).pow(k);
        }
        Some(acc)
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.to_natural()?.to_u64()
    }

    /// Applies `f` to the exponent pair at every prime where either side has an exception,
    /// and to the defaults; `f` combines `(self, other)`.
    fn zip_with<F>(&self, other: &Self, mut f: F) -> Option<Steinitz>
    where
        F: FnMut(&Exponent, &Exponent) -> Option<Exponent>,
    {
        let default = f(&self.default, &other.default)?;
        let mut exceptions = BTreeMap::new();
        for &p in self.exceptions.keys().chain(other.exceptions.keys()) {
            if exceptions.contains_key(&p) {
                continue;
            }
            exceptions.insert(p, f(self.valuation(p), other.valuation(p))?);
        }
        let mut s = Steinitz {
            default,
            exceptions,
        };
        s.normalize();
        Some(s)
    }

    fn all_pairs(&self, other: &Self, mut pred: impl FnMut(&Exponent, &Exponent) -> bool) -> bool {
        pred(&self.default, &other.default)
            && self
                .exceptions
                .keys()
                .chain(other.exceptions.keys())
                .all(|&p| pred(self.valuation(p), other.valuation(p)))
    }

    /// `n ∈ Ω(s)`.
    pub fn omega_contains(&self, n: u64) -> bool {
        n >= 1
            && arith::factor(n)
                .into_iter()
                .all(|(p, e)| self.valuation(p) >= &Exponent::finite(e.into()))
    }

    /// Whether the denominator of `q` lies in `Ω(s)`.
    pub fn omega_contains_denominator(&self, q: &PositiveRational) -> bool {
        q.denominator_exponents()
            .all(|(p, k)| self.valuation(p) >= &Exponent::Finite(k))
    }

    /// Divisibility of Steinitz numbers: `r_p(self) ≤ r_p(other)` for every prime.
    pub fn divides(&self, other: &Self) -> bool {
        self.all_pairs(other, |a, b| a <= b)
    }

    /// Multiplies by a positive rational. Fails when a prime exponent would go
    /// negative, i.e. when the denominator is not in `Ω(s·numerator)`.
    pub fn scale(&self, q: &PositiveRational) -> Result<Steinitz> {
        let mut s = self.clone();
        for (p, shift) in q.exponents() {
            let current = s.valuation(p).clone();
            match current.shift(shift) {
                Some(e) => {
                    s.exceptions.insert(p, e);
                }
                None => {
                    return Err(Error::NotDivisor {
                        divisor: q.denom().to_string(),
                        number: self.to_string(),
                    })
                }
            }
        }
        s.normalize();
        Ok(s)
    }

    pub fn mul_natural(&self, n: u64) -> Result<Steinitz> {
        self.scale(&PositiveRational::from_natural(n)?)
    }

    /// `s / b` for `b ∈ Ω(s)`.
    pub fn divide_by(&self, b: u64) -> Result<Steinitz> {
        self.scale(&PositiveRational::from_natural(b)?.recip())
    }

    /// The minimal `b ∈ Ω(other)` with `self = other / b`, if one exists.
    pub fn finitely_divides(&self, other: &Self) -> Option<BigUint> {
        if self.default != other.default {
            return None;
        }
        let mut b = BigUint::one();
        for p in self.union_keys(other) {
            match (self.valuation(p), other.valuation(p)) {
                (Exponent::Infinite, Exponent::Infinite) => {}
                (Exponent::Finite(lo), Exponent::Finite(hi)) if lo <= hi => {
                    b *= BigUint::from(p).pow((hi - lo).to_u32()?);
                }
                _ => return None,
            }
        }
        Some(b)
    }

    fn union_keys(&self, other: &Self) -> Vec<u64> {
        let mut keys: Vec<u64> = self
            .exceptions
            .keys()
            .chain(other.exceptions.keys())
            .copied()
            .collect();
        keys.sort_unstable();
        keys.dedup();
        keys
    }

    /// `other = q · self` for some positive rational `q`.
    pub fn rationally_connected(&self, other: &Self) -> bool {
        self.default == other.default
            && self
                .union_keys(other)
                .into_iter()
                .all(|p| self.valuation(p).is_infinite() == other.valuation(p).is_infinite())
    }

    /// The rational `q` with `other = q · self`, taking exponent 0 at primes
    /// where both numbers are infinite.
    pub fn canonical_ratio(&self, other: &Self) -> Result<PositiveRational> {
        if !self.rationally_connected(other) {
            return Err(Error::NotConnected(self.to_string(), other.to_string()));
        }
        Ok(PositiveRational::from_exponents(
            self.union_keys(other).into_iter().filter_map(|p| {
                match (self.valuation(p), other.valuation(p)) {
                    (Exponent::Finite(a), Exponent::Finite(b)) => Some((
                        p,
                        BigInt::from_biguint(Sign::Plus, b.clone())
                            - BigInt::from_biguint(Sign::Plus, a.clone()),
                    )),
                    _ => None,
                }
            }),
        ))
    }

    /// Order within a rational-connectivity class: compares `other/self` with 1.
    pub fn cmp_connected(&self, other: &Self) -> Option<Ordering> {
        let q = self.canonical_ratio(other).ok()?;
        Some(PositiveRational::one().cmp(&q))
    }

    pub fn lcm(&self, other: &Self) -> Steinitz {
        self.zip_with(other, |a, b| Some(a.max(b).clone()))
            .expect("max is total")
    }

    pub fn gcd(&self, other: &Self) -> Steinitz {
        self.zip_with(other, |a, b| Some(a.min(b).clone()))
            .expect("min is total")
    }

    /// `Ω(s) ∩ [1, bound]`, ascending.
    pub fn enumerate_omega(&self, bound: u64) -> Vec<u64> {
        let mut out = Vec::from([1u64]);
        if bound == 0 {
            return Vec::new();
        }
        let mut p = 2u64;
        while p <= bound {
            if arith::is_prime(p) {
                let cap = self.valuation(p);
                let len = out.len();
                let mut pk = 1u64;
                let mut k = 0u64;
                loop {
                    k += 1;
                    if cap < &Exponent::finite(k) {
                        break;
                    }
                    pk = match pk.checked_mul(p) {
                        Some(v) if v <= bound => v,
                        _ => break,
                    };
                    for i in 0..len {
                        if let Some(v) = out[i].checked_mul(pk).filter(|&v| v <= bound) {
                            out.push(v);
                        }
                    }
                }
            }
            p += 1;
        }
        out.sort_unstable();
        out
    }
}

impl fmt::Display for Steinitz {
    /// Canonical text form: ascending prime terms with exponent 1 elided,
    /// then the `P^e` default term when the default is nonzero; `1` for the
    /// empty product.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| {
            if !core::mem::take(&mut first) {
                f.write_str("*")
            } else {
                Ok(())
            }
        };
        for (&p, e) in &self.exceptions {
            sep(f)?;
            match e {
                Exponent::Finite(k) if k.is_one() => write!(f, "{p}")?,
                _ => write!(f, "{p}^{e}")?,
            }
        }
        if !self.default.is_zero() {
            sep(f)?;
            write!(f, "P^{}", self.default)?;
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    fn s(text: &str) -> Steinitz {
        crate::text::eval_steinitz(text).unwrap()
    }

    #[test]
    fn valuation_reads_exceptions_then_default() {
        let x = s("P^1*2^3");
        assert_eq!(x.valuation(2), &Exponent::finite(3));
        assert_eq!(x.valuation(5), &Exponent::finite(1));
        assert_eq!(s("2^inf*3^2").valuation(7), &Exponent::zero());
    }

    #[test]
    fn omega_membership() {
        assert!(s("2^inf*3").omega_contains(12));
        assert!(!s("P^1").omega_contains(4));
        assert!(s("5^2").omega_contains(1));
        assert!(!s("5^2").omega_contains(0));
    }

    #[test]
    fn divisibility_examples() {
        assert!(s("2^inf").divides(&s("2^inf*3")));
        assert!(!s("P^1").divides(&s("2^inf")));
        let x = s("P^1*2^3");
        assert!(x.divides(&x));
    }

    #[test]
    fn natural_multiplication_and_division() {
        assert_eq!(s("2^inf*3^2").divide_by(12).unwrap(), s("2^inf*3"));
        assert_eq!(s("2^inf").mul_natural(2).unwrap(), s("2^inf"));
        assert!(matches!(
            s("P^1").divide_by(4),
            Err(Error::NotDivisor { .. })
        ));
    }

    #[test]
    fn finite_division_witness() {
        assert_eq!(
            s("2^inf*3").finitely_divides(&s("2^inf*3^2*5")),
            Some(BigUint::from(15u32))
        );
        let x = s("P^1*2^3");
        assert_eq!(x.finitely_divides(&x), Some(BigUint::one()));
        assert_eq!(s("2^inf").finitely_divides(&s("3^inf")), None);
        assert_eq!(s("3").finitely_divides(&s("2")), None);
    }

    #[test]
    fn connectivity_and_ratio() {
        let a = s("P^1*2^3");
        let b = s("P^1*3^2");
        assert!(a.rationally_connected(&b));
        assert_eq!(a.canonical_ratio(&b).unwrap(), PositiveRational::new(3, 4).unwrap());
        let c = s("2^inf*3");
        let d = s("2^inf*5");
        assert_eq!(c.canonical_ratio(&d).unwrap(), PositiveRational::new(5, 3).unwrap());
        assert!(!s("2^inf").rationally_connected(&s("3^inf")));
        assert!(s("2^inf").canonical_ratio(&s("3^inf")).is_err());
        assert!(!s("P^1").rationally_connected(&s("P^2")));
    }

    #[test]
    fn lcm_examples() {
        assert_eq!(s("2^inf").lcm(&s("3^2")), s("2^inf*3^2"));
        assert_eq!(s("P^1").lcm(&s("2^3")), s("P^1*2^3"));
        let x = s("P^1*2^3");
        assert_eq!(x.lcm(&Steinitz::one()), x);
    }

    #[test]
    fn omega_enumeration() {
        assert_eq!(s("P^1").enumerate_omega(10), [1, 2, 3, 5, 6, 7, 10]);
        assert_eq!(s("2^inf").enumerate_omega(8), [1, 2, 4, 8]);
        assert_eq!(Steinitz::one().enumerate_omega(10), [1]);
    }

    #[test]
    fn omega_enumeration_matches_trial_division() {
        for text in ["P^1", "P^1*2^3", "2^inf*3", "2^2*3^inf*5", "P^2*7^0", "P^inf"] {
            let x = s(text);
            let fast = x.enumerate_omega(300);
            let slow: Vec<u64> = (1..=300).filter(|&n| x.omega_contains(n)).collect();
            assert_eq!(fast, slow, "{text}");
        }
    }

    #[test]
    fn minimal_presentation() {
        let x = Steinitz::from_parts(Exponent::finite(1), [(2, Exponent::finite(1)), (3, 2.into())])
            .unwrap();
        assert_eq!(format!("{x}"), "3^2*P^1");
        assert_eq!(x.exceptions().count(), 1);
        assert_eq!(
            Steinitz::from_parts(Exponent::zero(), [(4, Exponent::finite(1))]),
            Err(Error::NotPrime(4))
        );
    }

    #[test]
    fn classification_flags() {
        assert!(s("12").is_natural());
        assert!(s("2^inf").is_infinite());
        assert!(!s("2^inf").is_infinity_free());
        assert!(s("P^1").is_infinity_free());
        assert!(s("P^1").is_infinite());
        assert!(!s("P^inf").is_infinity_free());
        assert_eq!(s("2^2*3").to_natural(), Some(BigUint::from(12u32)));
    }
}
