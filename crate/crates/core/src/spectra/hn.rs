use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::extension::classify_presentation;
use super::{
    classify_nilpotent, complete_basis, done, precondition, Classification, ExtensionPresentation, SpectraError,
    SpectrumDescriptor,
};
use crate::exactlin::{eigenlattice, eigenvalue_profile, EigenKind, IntMatrix, IntVector};
use crate::groups::{GroupElement, GroupFamily};

/// Writes `h` in `<v, z>` as `v^a z^c`.
fn decompose(f: &GroupFamily, v: &GroupElement, h: &GroupElement) -> Result<IntVector, SpectraError> {
    let e = &h.exponents;
    if !e[3].is_zero() {
        return precondition("element does not lie in <v, z>");
    }
    let (v1, v2) = (&v.exponents[0], &v.exponents[1]);
    let a = if !v1.is_zero() { &e[0] / v1 } else { &e[1] / v2 };
    if &(&a * v1) != &e[0] || &(&a * v2) != &e[1] {
        return precondition("element does not lie in <v, z>");
    }
    let va = f.pow(v, &a)?;
    Ok(vec![a, &e[2] - &va.exponents[2]])
}

/// For `A` with eigenvalues 1 and -1: `N = <v, z>` with `v` spanning the
/// `-1` eigenlattice on `H_n / Z`, and the quotient `E / N = <w, t>`.
pub(crate) fn extension_data(n: u64, a: &IntMatrix, k: i64, l: i64) -> Result<ExtensionPresentation, SpectraError> {
    let f = GroupFamily::HnSemidirectZ { n, a: a.clone(), k, l };
    let minus = eigenlattice(a, -1);
    if minus.rank() != 1 {
        return precondition("A must have eigenvalues 1 and -1");
    }
    let p = complete_basis(&minus.basis[0])?;
    let lift = |col: usize| {
        GroupElement::new(vec![p.get(0, col).clone(), p.get(1, col).clone(), BigInt::zero(), BigInt::zero()])
    };
    let (v, w) = (lift(0), lift(1));
    let z = f.generator(2);
    let t = f.generator(3);
    let action = |g: &GroupElement| -> Result<IntMatrix, SpectraError> {
        let cols = [decompose(&f, &v, &f.conjugate(&v, g)?)?, decompose(&f, &v, &f.conjugate(&z, g)?)?];
        Ok(IntMatrix::from_columns(&cols)?)
    };
    let comm = f.product([&w, &t, &f.inverse(&w)?, &f.inverse(&t)?])?;
    let n0 = decompose(&f, &v, &comm)?;
    ExtensionPresentation::new(action(&w)?, action(&t)?, n0)
}

/// Spectrum of `H_n x|_psi Z`, `psi(x) = x^A11 y^A21 z^k`, `psi(y) = x^A12 y^A22 z^l`.
pub fn classify_hn_semidirect(
    n: u64,
    a: &IntMatrix,
    k: i64,
    l: i64,
    bound: u64,
) -> Result<Classification, SpectraError> {
    use SpectrumDescriptor::*;
    let family = GroupFamily::HnSemidirectZ { n, a: a.clone(), k, l };
    family.validate()?;
    if bound < 1 {
        return Err(SpectraError::BadBound);
    }
    let profile = eigenvalue_profile(a)?;
    match profile.kind {
        EigenKind::RepeatedOne => Ok(classify_nilpotent(&family)?.cite("Hn-unipotent-nilpotent")),
        EigenKind::OnePlusMinusOne => {
            let pres = extension_data(n, a, k, l)?;
            Ok(classify_presentation(&pres, bound)?.cite("Lemma-extension-Z2-by-Z2"))
        }
        _ if a.is_scalar(-1) => {
            if n.is_odd() {
                done(Multiples { c: 4 }, &["Lemma-charhn", "Prop-minus-I-twist", "n-odd"])
            } else if k.is_even() && l.is_even() {
                done(Multiples { c: 4 }, &["Lemma-charhn", "Prop-minus-I-twist", "condition-even-trivial"])
            } else {
                done(Multiples { c: 8 }, &["Lemma-charhn", "Prop-minus-I-twist", "condition-even-forces-even-trace"])
            }
        }
        _ => done(RInfinity, &["Lemma-charhn", "Prop-Hn-no-eigenvalue-1"]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use SpectrumDescriptor::*;

    fn classify(n: u64, a: [[i64; 2]; 2], k: i64, l: i64) -> SpectrumDescriptor {
        classify_hn_semidirect(n, &IntMatrix::from_rows(&a), k, l, 200).unwrap().spectrum
    }

    #[test]
    fn minus_identity_twists() {
        let m = [[-1, 0], [0, -1]];
        assert_eq!(classify(3, m, 1, 0), Multiples { c: 4 });
        assert_eq!(classify(3, m, 1, 1), Multiples { c: 4 });
        assert_eq!(classify(2, m, 1, 0), Multiples { c: 8 });
        assert_eq!(classify(2, m, 0, 1), Multiples { c: 8 });
        assert_eq!(classify(2, m, 1, 1), Multiples { c: 8 });
        assert_eq!(classify(2, m, 0, 0), Multiples { c: 4 });
        assert_eq!(classify(4, m, 2, 4), Multiples { c: 4 });
    }

    #[test]
    fn other_actions() {
        assert_eq!(classify(1, [[2, 1], [1, 1]], 0, 0), RInfinity);
        assert_eq!(classify(1, [[0, -1], [1, 0]], 0, 0), RInfinity);
        assert_eq!(classify(2, [[-1, 1], [0, -1]], 0, 0), RInfinity);
        assert_eq!(classify(1, [[1, 0], [0, 1]], 1, 0), Multiples { c: 4 });
        assert_eq!(classify(1, [[1, 1], [0, 1]], 0, 0), RInfinity);
    }

    #[test]
    fn extension_route_is_consistent() {
        let pres = extension_data(2, &IntMatrix::from_rows(&[[1, 0], [0, -1]]), 0, 0).unwrap();
        assert_eq!(&pres.a * &pres.b, &pres.b * &pres.a);
        let c = classify_hn_semidirect(2, &IntMatrix::from_rows(&[[1, 0], [0, -1]]), 0, 0, 100).unwrap();
        assert!(c.trace.iter().any(|s| s == "Lemma-gener"));
    }
}
