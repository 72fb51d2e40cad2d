use num_traits::Signed;

use super::{
    classify_nilpotent, decide_system2, done, precondition, Classification, SpectraError, SpectrumDescriptor,
    System2Outcome,
};
use crate::exactlin::{eigenvalue_profile, EigenKind, IntMatrix};
use crate::groups::GroupFamily;

/// Spectrum of `Z^2 x|_A Z`.
pub fn classify_z2_semidirect(a: &IntMatrix, bound: u64) -> Result<Classification, SpectraError> {
    use SpectrumDescriptor::*;
    if a.rows() != 2 || a.cols() != 2 {
        return precondition("expected a 2x2 matrix");
    }
    if bound < 1 {
        return Err(SpectraError::BadBound);
    }
    let profile = eigenvalue_profile(a)?;
    match profile.kind {
        EigenKind::RepeatedOne => classify_nilpotent(&GroupFamily::zn_semidirect_z(a.clone())),
        EigenKind::RepeatedMinusOne if a.is_scalar(-1) => done(Multiples { c: 2 }, &["Prop-i2"]),
        EigenKind::RepeatedMinusOne => done(RInfinity, &["Prop-2x-1"]),
        EigenKind::OnePlusMinusOne => done(RInfinity, &["Prop-1en-1"]),
        EigenKind::ComplexPair => done(RInfinity, &["Prop-complex"]),
        EigenKind::RealIrrationalPair if profile.det.is_negative() => done(RInfinity, &["Prop-0or4", "det-minus-one"]),
        EigenKind::RealIrrationalPair => match decide_system2(a, bound)? {
            System2Outcome::Witness(_) => done(SpectrumDescriptor::finite(&[4]), &["Prop-0or4", "system2-witness"]),
            System2Outcome::ProvenEmpty => done(RInfinity, &["Prop-0or4", "system2-empty"]),
            System2Outcome::NoneUpToBound { bound } => done(
                SpectrumDescriptor::undecided(RInfinity, SpectrumDescriptor::finite(&[4]), bound),
                &["Prop-0or4", "system2-bounded-search"],
            ),
        },
        EigenKind::Mixed3(_) => unreachable!("2x2 profile"),
    }
}
