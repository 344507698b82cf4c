use alloc::collections::BTreeMap;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith;
use crate::error::{Error, Result};

/// A positive rational number stored as its signed prime-exponent vector.
///
/// Numerator and denominator are coprime by construction, so structural
/// equality is numeric equality. Keeping the factorization lets Steinitz
/// numbers be scaled without re-factoring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PositiveRational {
    exponents: BTreeMap<u64, BigInt>,
}

impl PositiveRational {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_natural(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Zero);
        }
        Ok(Self {
            exponents: arith::factor(n)
                .into_iter()
                .map(|(p, e)| (p, BigInt::from(e)))
                .collect(),
        })
    }

    pub fn new(numerator: u64, denominator: u64) -> Result<Self> {
        Ok(Self::from_natural(numerator)?.div(&Self::from_natural(denominator)?))
    }

    /// Builds from `(prime, exponent)` pairs; zero exponents are dropped.
    pub(crate) fn from_exponents(pairs: impl IntoIterator<Item = (u64, BigInt)>) -> Self {
        let mut exponents = BTreeMap::new();
        for (p, e) in pairs {
            let slot = exponents.entry(p).or_insert_with(BigInt::zero);
            *slot += e;
        }
        exponents.retain(|_, e: &mut BigInt| !e.is_zero());
        Self { exponents }
    }

    /// Prime exponents; positive entries form the numerator.
    pub fn exponents(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.exponents.iter().map(|(&p, e)| (p, e))
    }

    pub fn exponent(&self, p: u64) -> BigInt {
        self.exponents.get(&p).cloned().unwrap_or_default()
    }

    fn part(&self, sign: Sign) -> BigUint {
        let mut acc = BigUint::one();
        for (&p, e) in &self.exponents {
            if e.sign() == sign {
                let k = e.abs().to_u32().expect("exponent too large to expand");
                acc *= BigUint::from(p).pow(k);
            }
        }
        acc
    }

    pub fn numer(&self) -> BigUint {
        self.part(Sign::Plus)
    }

    pub fn denom(&self) -> BigUint {
        self.part(Sign::Minus)
    }

    /// Denominator prime powers `(p, k)` with `k > 0`.
    pub fn denominator_exponents(&self) -> impl Iterator<Item = (u64, BigUint)> + '_ {
        self.exponents
            .iter()
            .filter(|(_, e)| e.is_negative())
            .map(|(&p, e)| (p, e.magnitude().clone()))
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn is_integer(&self) -> bool {
        self.exponents.values().all(|e| !e.is_negative())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_exponents(
            self.exponents
                .iter()
                .chain(other.exponents.iter())
                .map(|(&p, e)| (p, e.clone())),
        )
    }

    pub fn recip(&self) -> Self {
        Self {
            exponents: self.exponents.iter().map(|(&p, e)| (p, -e)).collect(),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.recip())
    }
}

impl Ord for PositiveRational {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        let q = self.div(other);
        q.numer().cmp(&q.denom())
    }
}

impl PartialOrd for PositiveRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PositiveRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.denom();
        if d.is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), d)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduces_to_lowest_terms() {
        let q = PositiveRational::new(12, 18).unwrap();
        assert_eq!(q.numer(), BigUint::from(2u32));
        assert_eq!(q.denom(), BigUint::from(3u32));
        assert_eq!(q, PositiveRational::new(2, 3).unwrap());
        assert_eq!(alloc::format!("{q}"), "2/3");
        assert_eq!(alloc::format!("{}", PositiveRational::new(6, 3).unwrap()), "2");
    }

    #[test]
    fn zero_is_rejected() {
        assert_eq!(PositiveRational::new(0, 3), Err(Error::Zero));
        assert_eq!(PositiveRational::new(3, 0), Err(Error::Zero));
    }

    proptest! {
        #[test]
        fn order_matches_cross_multiplication(a in 1u64..500, b in 1u64..500, c in 1u64..500, d in 1u64..500) {
            let x = PositiveRational::new(a, b).unwrap();
            let y = PositiveRational::new(c, d).unwrap();
            prop_assert_eq!(x.cmp(&y), (a * d).cmp(&(c * b)));
        }

        #[test]
        fn mul_recip_is_one(a in 1u64..10_000, b in 1u64..10_000) {
            let x = PositiveRational::new(a, b).unwrap();
            prop_assert!(x.mul(&x.recip()).is_one());
        }
    }
}
