//! Polycyclic arithmetic for the classified families, automorphism
//! verification, witness automorphisms and a twisted-conjugacy oracle.

mod arith;
mod automorphism;
mod family;
mod oracle;
mod rnumber;
mod witness;

pub use automorphism::{AutomorphismSpec, DerivedBlocks, VerificationReport};
pub use family::{GroupElement, GroupFamily};
pub use oracle::{label_classes, ClassLabeling};
pub use rnumber::reidemeister_number;
pub use witness::{witness, WitnessId};

use crate::exactlin::LinAlgError;
use crate::twisted::TwistedError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("element has {found} exponent slots, family needs {expected}")]
    SlotMismatch { expected: usize, found: usize },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("no image given for generator {0:?}")]
    MissingImage(String),
    #[error("unknown witness {name:?} for family {family}")]
    UnknownWitness { name: String, family: String },
    #[error("witness parameter must be at least 1")]
    BadParameter,
    #[error("automorphism is not verified: {0}")]
    NotVerified(String),
    #[error("no formula route: {0}")]
    NoFormulaRoute(String),
    #[error("radius must be at least 1")]
    BadRadius,
    #[error("malformed automorphism JSON: {0}")]
    Json(String),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Twisted(#[from] TwistedError),
}
