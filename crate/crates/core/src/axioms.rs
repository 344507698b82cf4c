//! Sampled verification of the three saturation axioms:
//!
//! 1. any two members are rationally connected;
//! 2. a member divided by any `b` in its `Ω` is a member;
//! 3. if `s` and `n·s` are members, so is `i·s` for `1 ≤ i ≤ n`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::report::Report;
use crate::sample::Sampler;
use crate::saturated::SaturatedSet;
use crate::steinitz::Steinitz;

/// Multipliers and divisors tried by axioms 2 and 3.
const SMALL: u64 = 12;

/// Anything with a membership test.
pub trait Membership {
    fn contains(&self, t: &Steinitz) -> bool;
}

impl Membership for SaturatedSet {
    fn contains(&self, t: &Steinitz) -> bool {
        SaturatedSet::contains(self, t)
    }
}

/// An explicitly listed finite set; used to exercise failing checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LiteralSet(pub Vec<Steinitz>);

impl Membership for LiteralSet {
    fn contains(&self, t: &Steinitz) -> bool {
        self.0.contains(t)
    }
}

fn pairs(len: usize) -> Vec<(usize, usize)> {
    if len <= 64 {
        (0..len)
            .flat_map(|i| (i + 1..len).map(move |j| (i, j)))
            .collect()
    } else {
        (0..len)
            .flat_map(|i| [(i, (i + 1) % len), (i, (i * 7 + 3) % len)])
            .collect()
    }
}

fn axiom1(members: &[Steinitz]) -> Option<String> {
    pairs(members.len()).into_iter().find_map(|(i, j)| {
        let (x, y) = (&members[i], &members[j]);
        (!x.rationally_connected(y)).then(|| format!("{x} and {y} are not connected"))
    })
}

fn axiom2(set: &dyn Membership, members: &[Steinitz]) -> Option<String> {
    members.iter().find_map(|x| {
        (2..=SMALL).filter(|&b| x.omega_contains(b)).find_map(|b| {
            let y = x.divide_by(b).expect("b ∈ Ω(x)");
            (!set.contains(&y)).then(|| format!("s={x}, b={b}, s/b={y} missing"))
        })
    })
}

fn interpolation_gap(set: &dyn Membership, x: &Steinitz, n: u64) -> Option<String> {
    (2..n).find_map(|i| {
        let ix = x.mul_natural(i).expect("positive");
        (!set.contains(&ix)).then(|| format!("s={x}, n={n}, i={i}"))
    })
}

fn axiom3(set: &dyn Membership, members: &[Steinitz]) -> Option<String> {
    members.iter().find_map(|x| {
        (2..=SMALL).find_map(|n| {
            let up = x.mul_natural(n).expect("positive");
            if set.contains(&up) {
                if let Some(w) = interpolation_gap(set, x, n) {
                    return Some(w);
                }
            }
            if x.omega_contains(n) {
                let down = x.divide_by(n).expect("n ∈ Ω(x)");
                if set.contains(&down) {
                    return interpolation_gap(set, &down, n);
                }
            }
            None
        })
    })
}

/// Checks the axioms on the given members of `set`; reports the first
/// counterexample for each axiom.
pub fn check_saturation_axioms(set: &dyn Membership, members: &[Steinitz]) -> Report {
    let note = format!("{} members", members.len());
    let mut report = Report::new();
    report.record("axiom1-connectivity", axiom1(members), note.clone());
    report.record("axiom2-finite-division", axiom2(set, members), note.clone());
    report.record("axiom3-interpolation", axiom3(set, members), note);
    report
}

impl SaturatedSet {
    /// Samples `budget` members with a seeded generator and checks the axioms.
    pub fn check_saturation_axioms(&self, budget: usize, seed: u64) -> Report {
        let members = Sampler::new(self, seed).members(budget);
        check_saturation_axioms(self, &members)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::DensityBound;
    use crate::text::eval_steinitz;

    #[test]
    fn canonical_sets_pass() {
        for text in ["[1..7]", "N", "S(inf, 2^inf)", "S(3/2, P^1)", "S+(3/2, P^1)", "S(sqrt(2), P^1)"] {
            let set: SaturatedSet = text.parse().unwrap();
            let report = set.check_saturation_axioms(200, 11);
            assert!(report.passed(), "{text}: {report}");
        }
    }

    #[test]
    fn raw_strict_irrational_passes() {
        let r: DensityBound = "sqrt(2)".parse().unwrap();
        let raw = SaturatedSet::raw_finite_type(r, &eval_steinitz("P^1").unwrap(), true).unwrap();
        assert!(raw.check_saturation_axioms(200, 5).passed());
    }

    #[test]
    fn gapped_literal_fails_interpolation() {
        let s = eval_steinitz("P^1").unwrap();
        let literal = LiteralSet(alloc::vec![s.clone(), s.mul_natural(3).unwrap()]);
        let report = check_saturation_axioms(&literal, &literal.0);
        let line = &report.lines[2];
        assert!(!line.passed);
        assert_eq!(line.witness, "s=P^1, n=3, i=2");
    }

    #[test]
    fn literal_missing_quotient_fails_division() {
        let s = eval_steinitz("(2)*P^1").unwrap();
        let literal = LiteralSet(alloc::vec![s]);
        let report = check_saturation_axioms(&literal, &literal.0);
        assert!(!report.lines[1].passed);
        assert_eq!(report.lines[1].witness, "s=2^2*P^1, b=2, s/b=P^1 missing");
    }
}
