//! What is known about one cohomology dimension: an interval `[lo, hi]` of
//! naturals, `hi` possibly infinite.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_arith::serde_biguint;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CohDim {
    lo: BigUint,
    hi: Option<BigUint>,
}

/// Canonical reading of a [`CohDim`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CohDimKind {
    Zero,
    NonZero,
    Unknown,
    Exact(#[serde(with = "serde_biguint")] BigUint),
    Bounded {
        #[serde(with = "serde_biguint")]
        lo: BigUint,
        #[serde(with = "serde_biguint::option", default, skip_serializing_if = "Option::is_none")]
        hi: Option<BigUint>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("contradiction: {left} ({left_note}) meets {right} ({right_note})")]
pub struct Contradiction {
    pub left: CohDim,
    pub right: CohDim,
    pub left_note: String,
    pub right_note: String,
}

impl CohDim {
    pub fn unknown() -> Self {
        CohDim {
            lo: BigUint::zero(),
            hi: None,
        }
    }

    pub fn zero() -> Self {
        Self::exact(BigUint::zero())
    }

    pub fn nonzero() -> Self {
        CohDim {
            lo: BigUint::one(),
            hi: None,
        }
    }

    pub fn exact(n: impl Into<BigUint>) -> Self {
        let n = n.into();
        CohDim {
            hi: Some(n.clone()),
            lo: n,
        }
    }

    pub fn at_least(lo: impl Into<BigUint>) -> Self {
        CohDim {
            lo: lo.into(),
            hi: None,
        }
    }

    /// `None` when `hi < lo`.
    pub fn bounded(lo: impl Into<BigUint>, hi: Option<BigUint>) -> Option<Self> {
        let lo = lo.into();
        match &hi {
            Some(h) if *h < lo => None,
            _ => Some(CohDim { lo, hi }),
        }
    }

    pub fn lo(&self) -> &BigUint {
        &self.lo
    }

    pub fn hi(&self) -> Option<&BigUint> {
        self.hi.as_ref()
    }

    pub fn kind(&self) -> CohDimKind {
        match (&self.hi, self.lo.is_zero()) {
            (Some(h), _) if *h == self.lo => {
                if h.is_zero() {
                    CohDimKind::Zero
                } else {
                    CohDimKind::Exact(h.clone())
                }
            }
            (None, true) => CohDimKind::Unknown,
            (None, false) if self.lo.is_one() => CohDimKind::NonZero,
            _ => CohDimKind::Bounded {
                lo: self.lo.clone(),
                hi: self.hi.clone(),
            },
        }
    }

    pub fn from_kind(kind: CohDimKind) -> Option<Self> {
        Some(match kind {
            CohDimKind::Zero => Self::zero(),
            CohDimKind::NonZero => Self::nonzero(),
            CohDimKind::Unknown => Self::unknown(),
            CohDimKind::Exact(n) => Self::exact(n),
            CohDimKind::Bounded { lo, hi } => return Self::bounded(lo, hi),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.hi.as_ref().is_some_and(Zero::is_zero)
    }

    /// Certainly positive.
    pub fn is_nonzero(&self) -> bool {
        !self.lo.is_zero()
    }

    pub fn is_unknown(&self) -> bool {
        self.lo.is_zero() && self.hi.is_none()
    }

    pub fn exact_value(&self) -> Option<&BigUint> {
        match &self.hi {
            Some(h) if *h == self.lo => Some(h),
            _ => None,
        }
    }

    pub fn contains(&self, n: &BigUint) -> bool {
        *n >= self.lo && self.hi.as_ref().is_none_or(|h| n <= h)
    }

    /// `self` carries at least the knowledge of `other`.
    pub fn is_at_least_as_precise_as(&self, other: &CohDim) -> bool {
        self.lo >= other.lo
            && match (&self.hi, &other.hi) {
                (_, None) => true,
                (Some(a), Some(b)) => a <= b,
                (None, Some(_)) => false,
            }
    }

    /// Intersection of the admissible sets.
    pub fn meet(&self, other: &CohDim) -> Option<CohDim> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = match (&self.hi, &other.hi) {
            (None, h) | (h, None) => h.clone(),
            (Some(a), Some(b)) => Some(a.min(b).clone()),
        };
        CohDim::bounded(lo, hi)
    }

    /// Interval sum.
    pub fn add(&self, other: &CohDim) -> CohDim {
        CohDim {
            lo: &self.lo + &other.lo,
            hi: match (&self.hi, &other.hi) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            },
        }
    }
}

impl Default for CohDim {
    fn default() -> Self {
        Self::unknown()
    }
}

/// Meet in the knowledge lattice; an empty intersection is a contradiction.
pub fn refine(a: &CohDim, b: &CohDim) -> Result<CohDim, Contradiction> {
    refine_noted(a, "left", b, "right")
}

pub fn refine_noted(a: &CohDim, a_note: &str, b: &CohDim, b_note: &str) -> Result<CohDim, Contradiction> {
    a.meet(b).ok_or_else(|| Contradiction {
        left: a.clone(),
        right: b.clone(),
        left_note: a_note.to_string(),
        right_note: b_note.to_string(),
    })
}

impl fmt::Display for CohDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            CohDimKind::Zero => write!(f, "0"),
            CohDimKind::Exact(n) => write!(f, "{n}"),
            CohDimKind::NonZero => write!(f, ">=1"),
            CohDimKind::Unknown => write!(f, "?"),
            CohDimKind::Bounded { lo, hi: None } => write!(f, ">={lo}"),
            CohDimKind::Bounded { lo, hi: Some(hi) } => write!(f, "[{lo},{hi}]"),
        }
    }
}

impl Serialize for CohDim {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.kind().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CohDim {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let kind = CohDimKind::deserialize(d)?;
        CohDim::from_kind(kind).ok_or_else(|| serde::de::Error::custom("bounded with hi < lo"))
    }
}
