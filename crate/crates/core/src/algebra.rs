//! Countable-dimensional locally matrix algebras, represented by their
//! spectra. Two such algebras are isomorphic exactly when their spectra
//! coincide, so every decision here is a question about saturated sets.

use alloc::string::ToString;
use core::fmt;

use crate::chain::ChainPresentation;
use crate::density::DensityBound;
use crate::error::{Error, Result};
use crate::rational::PositiveRational;
use crate::saturated::SaturatedSet;
use crate::steinitz::Steinitz;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDescriptor {
    spectrum: SaturatedSet,
    unit: Option<Steinitz>,
    collapsed: bool,
    witness: Option<ChainPresentation>,
}

/// An idempotent given by its relative range `a/b`, `0 < a/b ≤ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdempotentSpec {
    relative_rank: PositiveRational,
}

impl IdempotentSpec {
    pub fn new(a: u64, b: u64) -> Result<Self> {
        let q = PositiveRational::new(a, b)
            .map_err(|_| Error::InvalidIdempotent(alloc::format!("{a}/{b}")))?;
        Self::from_rational(q)
    }

    pub fn from_rational(q: PositiveRational) -> Result<Self> {
        if q.numer() > q.denom() {
            return Err(Error::InvalidIdempotent(alloc::format!("{q} exceeds 1")));
        }
        Ok(Self { relative_rank: q })
    }

    pub fn relative_rank(&self) -> &PositiveRational {
        &self.relative_rank
    }
}

impl AlgebraDescriptor {
    /// The algebra with the given spectrum. A raw set is normalized first and
    /// the descriptor is flagged as collapsed when that changed its form.
    pub fn from_spectrum(spectrum: SaturatedSet) -> Self {
        let normalized = spectrum.normalized();
        let collapsed = normalized != spectrum;
        Self {
            unit: normalized.max_element(),
            spectrum: normalized,
            collapsed,
            witness: None,
        }
    }

    /// `Spec(M_n(F)) = {1, …, n}`.
    pub fn spec_matrix(n: u64) -> Result<Self> {
        Ok(Self::from_spectrum(SaturatedSet::segment(n)?))
    }

    /// The unital algebra with Steinitz number `s`; its spectrum is
    /// `{(a/b)·s : b ∈ Ω(s), 1 ≤ a ≤ b}`, i.e. `S(1, s)` for infinite `s`.
    ///
    /// When `s` has an infinite exponent that set normalizes to `S(∞, s)`;
    /// the descriptor keeps `s` as its unit and is flagged as collapsed.
    pub fn spec_unital(s: &Steinitz) -> Self {
        if s.is_natural() {
            return Self::from_spectrum(SaturatedSet::segment_of(s).expect("natural"));
        }
        let one = DensityBound::integer(1).expect("1 ≥ 1");
        let spectrum = SaturatedSet::finite_type(one, s, false).expect("infinite base");
        Self {
            spectrum,
            unit: Some(s.clone()),
            collapsed: !s.is_infinity_free(),
            witness: None,
        }
    }

    /// `spec_unital(st)` after checking that its spectrum is `spectrum`.
    pub fn with_unit(spectrum: &SaturatedSet, st: &Steinitz) -> Result<Self> {
        let d = Self::spec_unital(st);
        if d.spectrum.equals_formal(&spectrum.normalized()) {
            Ok(d)
        } else {
            Err(Error::InvalidIdempotent(alloc::format!(
                "{st} is not the unit of an algebra with spectrum {spectrum}"
            )))
        }
    }

    pub fn with_witness(mut self, chain: ChainPresentation) -> Self {
        self.witness = Some(chain);
        self
    }

    pub fn spectrum(&self) -> &SaturatedSet {
        &self.spectrum
    }

    pub fn witness(&self) -> Option<&ChainPresentation> {
        self.witness.as_ref()
    }

    pub fn is_collapsed(&self) -> bool {
        self.collapsed
    }

    /// `st(A)` when known: the largest spectrum element, or the unit a
    /// collapsed descriptor was built from.
    pub fn st(&self) -> Option<&Steinitz> {
        self.unit.as_ref()
    }

    fn require_st(&self) -> Result<&Steinitz> {
        self.st().ok_or(Error::NotUnital)
    }

    /// Unital iff the spectrum has a largest element.
    pub fn is_unital(&self) -> bool {
        self.spectrum.max_element().is_some()
    }

    /// `M_∞(A)`, with spectrum `S(∞, st(A))`.
    pub fn m_infinity(&self) -> Result<Self> {
        let st = self.require_st()?;
        Ok(Self::from_spectrum(SaturatedSet::inf_type(st)))
    }

    /// `M_n(A)`, the unital algebra with `st = n·st(A)`.
    pub fn matrix_over(&self, n: u64) -> Result<Self> {
        Ok(Self::spec_unital(&self.require_st()?.mul_natural(n)?))
    }

    /// `eAe`, with `st(eAe) = r(e)·st(A)`.
    pub fn corner(&self, e: &IdempotentSpec) -> Result<Self> {
        let st = self.require_st()?;
        let q = e.relative_rank();
        if !st.omega_contains_denominator(q) {
            return Err(Error::NotDivisor {
                divisor: q.denom().to_string(),
                number: st.to_string(),
            });
        }
        Ok(Self::spec_unital(&st.scale(q)?))
    }
}

pub fn isomorphic(a: &AlgebraDescriptor, b: &AlgebraDescriptor) -> bool {
    a.spectrum.equals_formal(&b.spectrum)
}

/// `B` embeds in `A` as an approximative corner iff `Spec(B) ⊆ Spec(A)`.
pub fn embeds_as_approximative_corner(b: &AlgebraDescriptor, a: &AlgebraDescriptor) -> bool {
    b.spectrum.compare_inclusion(&a.spectrum).left_subset()
}

impl fmt::Display for AlgebraDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.unit, self.collapsed) {
            (Some(st), true) => write!(f, "alg({}; st={st})", self.spectrum),
            _ => write!(f, "alg({})", self.spectrum),
        }
    }
}
