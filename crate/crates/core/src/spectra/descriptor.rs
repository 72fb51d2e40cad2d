use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::twisted::RNumber;

/// A Reidemeister spectrum. Every kind contains infinity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpectrumDescriptor {
    /// `{inf}`.
    #[serde(rename = "r_infinity")]
    RInfinity,
    /// A finite set of positive integers together with infinity.
    Finite { values: Vec<u64> },
    /// `cN ∪ {inf}`.
    Multiples { c: u64 },
    /// `N ∪ {inf}`.
    Full,
    /// A bounded search could not separate the two candidates.
    Undecided { candidates: Vec<SpectrumDescriptor>, bound: u64 },
}

impl SpectrumDescriptor {
    pub fn finite(values: &[u64]) -> Self {
        let mut v = values.to_vec();
        v.sort_unstable();
        v.dedup();
        SpectrumDescriptor::Finite { values: v }
    }

    pub fn undecided(a: SpectrumDescriptor, b: SpectrumDescriptor, bound: u64) -> Self {
        SpectrumDescriptor::Undecided { candidates: vec![a, b], bound }
    }

    pub fn is_undecided(&self) -> bool {
        matches!(self, SpectrumDescriptor::Undecided { .. })
    }

    /// Checks the representation invariants.
    pub fn is_well_formed(&self) -> bool {
        match self {
            SpectrumDescriptor::RInfinity | SpectrumDescriptor::Full => true,
            SpectrumDescriptor::Finite { values } => {
                !values.is_empty() && values[0] >= 1 && values.windows(2).all(|w| w[0] < w[1])
            }
            SpectrumDescriptor::Multiples { c } => *c >= 2,
            SpectrumDescriptor::Undecided { candidates, bound } => {
                candidates.len() == 2
                    && *bound >= 1
                    && candidates.iter().all(|c| !c.is_undecided() && c.is_well_formed())
            }
        }
    }

    /// Whether `r` lies in the spectrum; `None` when undecided.
    pub fn contains(&self, r: &RNumber) -> Option<bool> {
        let v = match r {
            RNumber::Infinite => return Some(true),
            RNumber::Finite(v) => v,
        };
        Some(match self {
            SpectrumDescriptor::RInfinity => false,
            SpectrumDescriptor::Finite { values } => values.iter().any(|x| BigUint::from(*x) == *v),
            SpectrumDescriptor::Multiples { c } => !v.is_zero() && v.is_multiple_of(&BigUint::from(*c)),
            SpectrumDescriptor::Full => !v.is_zero(),
            SpectrumDescriptor::Undecided { .. } => return None,
        })
    }
}

impl fmt::Display for SpectrumDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectrumDescriptor::RInfinity => write!(f, "{{inf}}"),
            SpectrumDescriptor::Finite { values } => {
                write!(f, "{{")?;
                for v in values {
                    write!(f, "{},", v)?;
                }
                write!(f, "inf}}")
            }
            SpectrumDescriptor::Multiples { c } => write!(f, "{}N+{{inf}}", c),
            SpectrumDescriptor::Full => write!(f, "N+{{inf}}"),
            SpectrumDescriptor::Undecided { candidates, bound } => {
                write!(f, "undecided(")?;
                for (i, c) in candidates.iter().enumerate() {
                    if i > 0 {
                        write!(f, " or ")?;
                    }
                    write!(f, "{}", c)?;
                }
                write!(f, "; bound {})", bound)
            }
        }
    }
}
