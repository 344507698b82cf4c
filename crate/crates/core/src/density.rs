//! Exact densities `r ∈ [1, ∞]`: positive rationals, quadratic surds, or `∞`.
//!
//! Every comparison of the form `a ≶ r·b` is decided with integer arithmetic.

use core::cmp::Ordering;
use core::fmt;

use alloc::string::ToString;
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::rational::PositiveRational;

/// `(x + y·√d) / z` with `y > 0`, `z > 0`, `d > 1` squarefree and
/// `gcd(x, y, z) = 1`, so equal values have equal coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    x: BigInt,
    y: BigUint,
    d: u64,
    z: BigUint,
}

impl QuadraticSurd {
    pub fn new(x: BigInt, y: BigUint, d: u64, z: BigUint) -> Result<Self> {
        if y.is_zero() {
            return Err(Error::InvalidSurd("coefficient of the root must be positive"));
        }
        if z.is_zero() {
            return Err(Error::InvalidSurd("denominator must be positive"));
        }
        if d < 2 || !arith::is_squarefree(d) {
            return Err(Error::InvalidSurd("radicand must be a squarefree integer > 1"));
        }
        let g = x.magnitude().gcd(&y).gcd(&z);
        Ok(Self {
            x: x / BigInt::from_biguint(Sign::Plus, g.clone()),
            y: y / &g,
            d,
            z: z / &g,
        })
    }

    /// `√d`
    pub fn sqrt(d: u64) -> Result<Self> {
        Self::new(BigInt::zero(), BigUint::one(), d, BigUint::one())
    }

    pub fn parts(&self) -> (&BigInt, &BigUint, u64, &BigUint) {
        (&self.x, &self.y, self.d, &self.z)
    }

    fn y_signed(&self) -> BigInt {
        BigInt::from_biguint(Sign::Plus, self.y.clone())
    }

    fn z_signed(&self) -> BigInt {
        BigInt::from_biguint(Sign::Plus, self.z.clone())
    }

    fn scale(&self, q: &PositiveRational) -> Self {
        let n = BigInt::from_biguint(Sign::Plus, q.numer());
        let m = q.denom();
        Self::new(&self.x * &n, &self.y * q.numer(), self.d, &self.z * m)
            .expect("scaling keeps a valid surd")
    }

    /// Sign of `self − u/v`.
    fn cmp_rational(&self, u: &BigUint, v: &BigUint) -> Ordering {
        // (x + y√d)/z − u/v has the sign of (v·x − z·u) + v·y·√d.
        let v = BigInt::from_biguint(Sign::Plus, v.clone());
        let u = BigInt::from_biguint(Sign::Plus, u.clone());
        let a = &v * &self.x - self.z_signed() * u;
        let b = v * self.y_signed();
        arith::sign_quadratic(&a, &b, self.d)
    }

    fn cmp_surd(&self, other: &Self) -> Ordering {
        // z2(x1 + y1√d1) − z1(x2 + y2√d2)
        let z1 = self.z_signed();
        let z2 = other.z_signed();
        let a = &z2 * &self.x - &z1 * &other.x;
        let b1 = &z2 * self.y_signed();
        let b2 = -(&z1 * other.y_signed());
        arith::sign_two_surds(&a, &b1, self.d, &b2, other.d)
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}+{}*sqrt({}))/{}", self.x, self.y, self.d, self.z)
    }
}

/// A saturated-set density: rational, quadratic surd, or infinite.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DensityBound {
    Rational(PositiveRational),
    Surd(QuadraticSurd),
    Infinity,
}

impl DensityBound {
    pub fn rational(u: u64, v: u64) -> Result<Self> {
        Self::Rational(PositiveRational::new(u, v)?).checked()
    }

    pub fn integer(u: u64) -> Result<Self> {
        Self::rational(u, 1)
    }

    pub fn surd(s: QuadraticSurd) -> Result<Self> {
        Self::Surd(s).checked()
    }

    /// Rejects values below 1.
    pub fn checked(self) -> Result<Self> {
        let below_one = match &self {
            DensityBound::Rational(q) => q.numer() < q.denom(),
            DensityBound::Surd(s) => s.cmp_rational(&BigUint::one(), &BigUint::one()).is_lt(),
            DensityBound::Infinity => false,
        };
        if below_one {
            Err(Error::DensityBelowOne(self.to_string()))
        } else {
            Ok(self)
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, DensityBound::Infinity)
    }

    pub fn as_rational(&self) -> Option<&PositiveRational> {
        match self {
            DensityBound::Rational(q) => Some(q),
            _ => None,
        }
    }

    /// `r·q`. `∞` is fixed.
    pub fn scale(&self, q: &PositiveRational) -> Self {
        match self {
            DensityBound::Rational(r) => DensityBound::Rational(r.mul(q)),
            DensityBound::Surd(s) => DensityBound::Surd(s.scale(q)),
            DensityBound::Infinity => DensityBound::Infinity,
        }
    }

    /// Sign of `a − r·b`; `a < ∞·b` always.
    pub fn cmp_scaled(&self, a: &BigUint, b: &BigUint) -> Ordering {
        match self {
            DensityBound::Rational(q) => (a * q.denom()).cmp(&(q.numer() * b)),
            DensityBound::Surd(s) => s.cmp_rational(a, b).reverse(),
            DensityBound::Infinity => Ordering::Less,
        }
    }

    /// `r·b` when it is an integer.
    pub fn times_exact(&self, b: &BigUint) -> Option<BigUint> {
        match self {
            DensityBound::Rational(q) => {
                let (quot, rem) = (q.numer() * b).div_rem(&q.denom());
                rem.is_zero().then_some(quot)
            }
            _ => None,
        }
    }

    /// `⌊r·b⌋` for finite `r`.
    pub fn floor_times(&self, b: &BigUint) -> Option<BigUint> {
        match self {
            DensityBound::Rational(q) => Some(q.numer() * b / q.denom()),
            DensityBound::Surd(s) => {
                // ⌊(x·b + √(y²b²d)) / z⌋ = ⌊(x·b + k) / z⌋ with k = ⌊y·b·√d⌋,
                // because y·b·√d is never an integer.
                let yb = &s.y * b;
                let k = (&yb * &yb * BigUint::from(s.d)).sqrt();
                let num = &s.x * BigInt::from_biguint(Sign::Plus, b.clone())
                    + BigInt::from_biguint(Sign::Plus, k);
                let q = num.div_floor(&s.z_signed());
                Some(q.to_biguint().unwrap_or_default())
            }
            DensityBound::Infinity => None,
        }
    }
}

impl Ord for DensityBound {
    fn cmp(&self, other: &Self) -> Ordering {
        use DensityBound::*;
        match (self, other) {
            (Infinity, Infinity) => Ordering::Equal,
            (Infinity, _) => Ordering::Greater,
            (_, Infinity) => Ordering::Less,
            (Rational(a), Rational(b)) => a.cmp(b),
            (Surd(s), Rational(q)) => s.cmp_rational(&q.numer(), &q.denom()),
            (Rational(q), Surd(s)) => s.cmp_rational(&q.numer(), &q.denom()).reverse(),
            (Surd(a), Surd(b)) => a.cmp_surd(b),
        }
    }
}

impl PartialOrd for DensityBound {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DensityBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DensityBound::Rational(q) => write!(f, "{q}"),
            DensityBound::Surd(s) => write!(f, "{s}"),
            DensityBound::Infinity => f.write_str("inf"),
        }
    }
}
