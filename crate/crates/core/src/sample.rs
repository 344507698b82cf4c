//! Deterministic candidate generation for saturated sets.
//!
//! Candidates are `(a/b)·s` with `b ∈ Ω(s) ∩ [1, 210]` and `a` running one
//! past the membership bound `r·b`, so both sides of the boundary are hit.

use alloc::vec::Vec;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::density::DensityBound;
use crate::rational::PositiveRational;
use crate::saturated::{Form, SaturatedSet};
use crate::steinitz::Steinitz;

/// Largest denominator used when sampling based sets.
pub const DENOMINATOR_BOUND: u64 = 210;

/// Cap on sampled naturals for `ℕ`.
const NATURAL_BOUND: u64 = 1000;

/// Attempts per call to [`Sampler::member`].
const MEMBER_ATTEMPTS: usize = 64;

pub struct Sampler<'a> {
    set: &'a SaturatedSet,
    omega: Vec<u64>,
    rng: ChaCha8Rng,
}

impl<'a> Sampler<'a> {
    pub fn new(set: &'a SaturatedSet, seed: u64) -> Self {
        let omega = set
            .base()
            .map(|s| s.enumerate_omega(DENOMINATOR_BOUND))
            .unwrap_or_default();
        Self {
            set,
            omega,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn numerator_cap(&self, b: u64) -> u64 {
        let density = match self.set.form() {
            Form::FiniteType { density, .. } => density,
            _ => &DensityBound::Infinity,
        };
        match density.floor_times(&b.into()).and_then(|f| f.to_u64()) {
            Some(f) => f.saturating_add(1),
            None => b.saturating_mul(4).saturating_add(1),
        }
    }

    /// A candidate near the set, member or not.
    pub fn candidate(&mut self) -> Steinitz {
        let natural = |n: u64| Steinitz::from_natural(n).expect("positive");
        match self.set.form() {
            Form::Segment(n) => {
                let top = n.to_u64().unwrap_or(u64::MAX - 1);
                natural(self.rng.gen_range(1..=top + 1))
            }
            Form::AllNaturals => natural(self.rng.gen_range(1..=NATURAL_BOUND)),
            Form::InfType(base) | Form::FiniteType { base, .. } => {
                let b = self.omega[self.rng.gen_range(0..self.omega.len())];
                let a = self.rng.gen_range(1..=self.numerator_cap(b));
                let q = PositiveRational::new(a, b).expect("positive");
                base.scale(&q).expect("b lies in Ω(base)")
            }
        }
    }

    /// A sampled member, or `None` when every attempt missed.
    pub fn member(&mut self) -> Option<Steinitz> {
        let set = self.set;
        (0..MEMBER_ATTEMPTS)
            .map(|_| self.candidate())
            .find(|t| set.contains(t))
    }

    /// `count` members (fewer only if sampling keeps missing).
    pub fn members(&mut self, count: usize) -> Vec<Steinitz> {
        (0..count).filter_map(|_| self.member()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_reproducible_and_members() {
        let set: SaturatedSet = "S+(3/2, P^1)".parse().unwrap();
        let a = Sampler::new(&set, 7).members(50);
        let b = Sampler::new(&set, 7).members(50);
        assert_eq!(a, b);
        assert_eq!(a.len(), 50);
        assert!(a.iter().all(|t| set.contains(t)));
    }

    #[test]
    fn candidates_cross_the_boundary() {
        let set: SaturatedSet = "S(1, P^1)".parse().unwrap();
        let mut sampler = Sampler::new(&set, 1);
        let (inside, outside): (Vec<_>, Vec<_>) =
            (0..400).map(|_| sampler.candidate()).partition(|t| set.contains(t));
        assert!(!inside.is_empty() && !outside.is_empty());
    }

    #[test]
    fn segments_and_naturals() {
        let seg = SaturatedSet::segment(3).unwrap();
        let members = Sampler::new(&seg, 3).members(100);
        assert!(members.iter().all(|t| t.to_u64().is_some_and(|n| (1..=3).contains(&n))));
        let all = SaturatedSet::all_naturals();
        assert!(Sampler::new(&all, 3).members(10).iter().all(Steinitz::is_natural));
    }
}
