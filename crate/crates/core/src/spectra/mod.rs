//! Reidemeister spectra of the classified families.
//!
//! Each classifier walks the case analysis for its family and returns a
//! [`Classification`]: the spectrum together with the identifiers of the
//! results that decided it, in the order they were applied.

mod descriptor;
mod extension;
mod hn;
mod local;
mod nilpotent;
mod system2;
mod tahara;
mod z2;
mod z3;

pub use descriptor::SpectrumDescriptor;
pub use extension::{canonicalize_z2_by_z2, classify_z2_minus_i_ext, ExtensionPresentation, Substitution};
pub use hn::classify_hn_semidirect;
pub use nilpotent::classify_nilpotent;
pub use system2::{decide_system2, system2_witnesses, System2Outcome, System2Witness};
pub use tahara::{tahara_delta, DeltaInvariant};
pub use z2::classify_z2_semidirect;
pub use z3::{classify_z3_semidirect, decide_z3_eight, split_eigenvalue_one, EightOutcome};

use serde::Serialize;

use num_bigint::BigInt;
use num_traits::One;

use crate::exactlin::{smith_normal_form, IntMatrix, LinAlgError};
use crate::groups::{GroupError, GroupFamily};

/// Search bound used when `TWISTED_BOUND` is unset.
pub const DEFAULT_BOUND: u64 = 10_000;

/// The search bound: `TWISTED_BOUND` if it holds a positive integer,
/// otherwise [`DEFAULT_BOUND`].
pub fn default_bound() -> u64 {
    std::env::var("TWISTED_BOUND")
        .ok()
        .and_then(|s| s.trim().parse::<u64>().ok())
        .filter(|&b| b >= 1)
        .unwrap_or(DEFAULT_BOUND)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpectraError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("search bound must be at least 1")]
    BadBound,
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T, SpectraError> {
    Err(SpectraError::Precondition(msg.into()))
}

/// A unimodular `P` whose first column is `v` (which must be primitive).
pub(crate) fn complete_basis(v: &[BigInt]) -> Result<IntMatrix, SpectraError> {
    let col = IntMatrix::from_columns(&[v.to_vec()])?;
    let snf = smith_normal_form(&col);
    if !snf.elementary_divisors.first().is_some_and(|d| d.is_one()) {
        return precondition("vector is not primitive");
    }
    let mut p = snf.u.inverse_unimodular()?;
    if p.column(0) != v {
        for i in 0..p.rows() {
            let x = -p.get(i, 0);
            p.set(i, 0, x);
        }
    }
    debug_assert_eq!(p.column(0), v);
    Ok(p)
}

/// A spectrum and the chain of results that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub spectrum: SpectrumDescriptor,
    pub trace: Vec<String>,
}

impl Classification {
    pub(crate) fn new(spectrum: SpectrumDescriptor, trace: Vec<String>) -> Self {
        Classification { spectrum, trace }
    }

    pub(crate) fn cite(mut self, step: &str) -> Self {
        self.trace.insert(0, step.to_string());
        self
    }
}

pub(crate) fn done(spectrum: SpectrumDescriptor, steps: &[&str]) -> Result<Classification, SpectraError> {
    Ok(Classification::new(spectrum, steps.iter().map(|s| s.to_string()).collect()))
}

/// Dispatches a family to its classifier.
pub fn classify_family(family: &GroupFamily, bound: u64) -> Result<Classification, SpectraError> {
    family.validate()?;
    match family {
        GroupFamily::FreeAbelian { .. } | GroupFamily::Heisenberg { .. } | GroupFamily::HeisenbergTimesZ { .. } => {
            classify_nilpotent(family)
        }
        GroupFamily::ZnSemidirectZ { a } => match a.rows() {
            1 if a.is_scalar(-1) => done(SpectrumDescriptor::RInfinity, &["Klein-bottle-group"]),
            1 => classify_nilpotent(family),
            2 => classify_z2_semidirect(a, bound),
            3 => classify_z3_semidirect(a, bound),
            n => precondition(format!("Z^{} x| Z is outside the classified range", n)),
        },
        GroupFamily::Z2MinusIExt { a, n0, .. } => {
            let b = family.ext_b().expect("extension family");
            let pres = ExtensionPresentation::new(a.clone(), b, n0.clone())?;
            extension::classify_presentation(&pres, bound)
        }
        GroupFamily::HnSemidirectZ { n, a, k, l } => classify_hn_semidirect(*n, a, *k, *l, bound),
    }
}
