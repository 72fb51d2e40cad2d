//! Reidemeister-number formulas evaluated exactly.

mod rnumber;

pub use rnumber::RNumber;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::exactlin::{IntMatrix, LinAlgError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TwistedError {
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("incompatible automorphism data: {0}")]
    Incompatible(String),
    #[error("sum {sum} is not divisible by the holonomy order {order}")]
    NotDivisible { sum: BigUint, order: usize },
    #[error("representative set is empty")]
    EmptyRepresentatives,
    #[error("invalid holonomy group: {0}")]
    InvalidHolonomy(String),
}

/// A finite group of integer matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HolonomySet {
    matrices: Vec<IntMatrix>,
}

impl HolonomySet {
    pub fn new(matrices: Vec<IntMatrix>) -> Result<Self, TwistedError> {
        let first = matrices.first().ok_or_else(|| TwistedError::InvalidHolonomy("empty".into()))?;
        let n = first.require_square()?;
        if matrices.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(TwistedError::InvalidHolonomy("mixed dimensions".into()));
        }
        for (i, a) in matrices.iter().enumerate() {
            if matrices[..i].contains(a) {
                return Err(TwistedError::InvalidHolonomy(format!("duplicate element {}", a)));
            }
        }
        if !matrices.iter().any(IntMatrix::is_identity) {
            return Err(TwistedError::InvalidHolonomy("identity missing".into()));
        }
        for a in &matrices {
            for b in &matrices {
                if !matrices.contains(&(a * b)) {
                    return Err(TwistedError::InvalidHolonomy(format!(
                        "not closed: {} * {} is missing",
                        a, b
                    )));
                }
            }
        }
        Ok(HolonomySet { matrices })
    }

    /// `{I, A, ..., A^(d-1)}` for a finite-order `A`.
    pub fn cyclic(a: &IntMatrix) -> Result<Self, TwistedError> {
        let n = a.require_square()?;
        let mut matrices = vec![IntMatrix::identity(n)];
        let mut p = a.clone();
        while !p.is_identity() {
            if matrices.len() > 12 {
                return Err(TwistedError::InvalidHolonomy(format!("{} has infinite order", a)));
            }
            matrices.push(p.clone());
            p = &p * a;
        }
        Ok(HolonomySet { matrices })
    }

    pub fn matrices(&self) -> &[IntMatrix] {
        &self.matrices
    }

    pub fn order(&self) -> usize {
        self.matrices.len()
    }
}

/// `R(M) = |det(I - M)|`, infinite when that determinant vanishes.
pub fn r_abelian(m: &IntMatrix) -> Result<RNumber, TwistedError> {
    let n = m.require_square()?;
    let d = (&IntMatrix::identity(n) - m).det()?;
    Ok(RNumber::from_signed(&d))
}

/// Addition formula over a complete set of quotient representatives: the
/// sum of `R(action(z) * inner)`.
pub fn r_addition<T>(
    class_reps: &[T],
    action: impl Fn(&T) -> IntMatrix,
    inner: &IntMatrix,
    reps_infinite: bool,
) -> Result<RNumber, TwistedError> {
    if class_reps.is_empty() {
        return Err(TwistedError::EmptyRepresentatives);
    }
    let mut terms = Vec::with_capacity(class_reps.len());
    for z in class_reps {
        terms.push(r_abelian(&action(z).checked_mul(inner)?)?);
    }
    let total = RNumber::sum(terms);
    Ok(if reps_infinite { RNumber::Infinite } else { total })
}

fn require_unimodular(a: &IntMatrix) -> Result<IntMatrix, TwistedError> {
    Ok(a.inverse_unimodular()?)
}

/// `R(M) + R(AM)` for an automorphism of `Z^n x|_A Z` acting by `M` on
/// `Z^n` and inverting the top generator.
pub fn r_semidirect_zn(a: &IntMatrix, m: &IntMatrix) -> Result<RNumber, TwistedError> {
    let n = a.require_square()?;
    if m.rows() != n || m.cols() != n {
        return Err(LinAlgError::DimensionMismatch {
            expected: format!("{}x{}", n, n),
            found: format!("{}x{}", m.rows(), m.cols()),
        }
        .into());
    }
    let a_inv = require_unimodular(a)?;
    if (&IntMatrix::identity(n) - a).det()?.is_zero() {
        return Err(TwistedError::Incompatible("A has eigenvalue 1".into()));
    }
    if m * a != &a_inv * m {
        return Err(TwistedError::Incompatible("M A != A^-1 M".into()));
    }
    r_addition(&[false, true], |&flip| if flip { a.clone() } else { IntMatrix::identity(n) }, m, false)
}

/// Averaging formula over a holonomy group.
pub fn r_averaging(f: &HolonomySet, m: &IntMatrix) -> Result<RNumber, TwistedError> {
    let mut sum = BigUint::zero();
    let mut infinite = false;
    for a in f.matrices() {
        match r_abelian(&a.checked_mul(m)?)? {
            RNumber::Infinite => infinite = true,
            RNumber::Finite(v) => sum += v,
        }
    }
    if infinite {
        return Ok(RNumber::Infinite);
    }
    let order = BigUint::from(f.order());
    let (q, r) = sum.div_rem(&order);
    if !r.is_zero() {
        return Err(TwistedError::NotDivisible { sum, order: f.order() });
    }
    Ok(RNumber::from_unsigned(q))
}

/// `R(M) + R(-M) + R(AM) + R(-AM)` for the double extension, after
/// checking `MA = ±A^-1 M`.
pub fn r_quadruple(a: &IntMatrix, m: &IntMatrix) -> Result<RNumber, TwistedError> {
    let a_inv = require_unimodular(a)?;
    let ma = m.checked_mul(a)?;
    let am_inv = a_inv.checked_mul(m)?;
    if ma != am_inv && ma != -&am_inv {
        return Err(TwistedError::Incompatible("M A != +-A^-1 M".into()));
    }
    let am = a * m;
    let mut terms = Vec::with_capacity(4);
    for x in [m.clone(), -m, am.clone(), -&am] {
        terms.push(r_abelian(&x)?);
    }
    Ok(RNumber::sum(terms))
}

/// `|x|` as an unsigned integer.
pub(crate) fn abs_unsigned(x: &BigInt) -> BigUint {
    x.abs().to_biguint().expect("absolute value is non-negative")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin(v: u64) -> RNumber {
        RNumber::from_unsigned(BigUint::from(v))
    }

    #[test]
    fn abelian_examples() {
        assert_eq!(r_abelian(&IntMatrix::identity(2)).unwrap(), RNumber::Infinite);
        assert_eq!(r_abelian(&IntMatrix::scalar(2, -1)).unwrap(), fin(4));
        assert_eq!(r_abelian(&IntMatrix::from_rows(&[[0, 1], [1, 1]])).unwrap(), fin(1));
        assert!(r_abelian(&IntMatrix::from_rows(&[[1, 2]])).is_err());
    }

    #[test]
    fn addition_examples() {
        let minus_i = IntMatrix::scalar(2, -1);
        assert_eq!(r_addition(&[()], |_| IntMatrix::identity(2), &minus_i, false).unwrap(), fin(4));

        // M_1 for n = 2: [[0,1],[1,1]]
        let m1 = IntMatrix::from_rows(&[[0, 1], [1, 1]]);
        let action = |&flip: &bool| if flip { minus_i.clone() } else { IntMatrix::identity(2) };
        assert_eq!(r_addition(&[false, true], action, &m1, false).unwrap(), fin(2));

        let a = IntMatrix::from_rows(&[[2, 3], [3, 5]]);
        let m = IntMatrix::from_rows(&[[0, -1], [1, 0]]);
        let action = |&flip: &bool| if flip { a.clone() } else { IntMatrix::identity(2) };
        assert_eq!(r_addition(&[false, true], action, &m, false).unwrap(), fin(4));
        assert_eq!(
            r_addition(&[false], |_| IntMatrix::identity(2), &m, true).unwrap(),
            RNumber::Infinite
        );
        let empty: [bool; 0] = [];
        assert!(r_addition(&empty, |_| IntMatrix::identity(2), &m, false).is_err());
    }

    #[test]
    fn semidirect_examples() {
        let minus_i = IntMatrix::scalar(2, -1);
        let m3 = IntMatrix::from_rows(&[[0, 1], [1, 3]]);
        assert_eq!(r_semidirect_zn(&minus_i, &m3).unwrap(), fin(6));
        let a = IntMatrix::from_rows(&[[2, 3], [3, 5]]);
        let m = IntMatrix::from_rows(&[[0, -1], [1, 0]]);
        assert_eq!(r_semidirect_zn(&a, &m).unwrap(), fin(4));
        assert_eq!(r_semidirect_zn(&minus_i, &IntMatrix::identity(2)).unwrap(), RNumber::Infinite);
        // identity does not conjugate A to its inverse
        assert!(matches!(
            r_semidirect_zn(&a, &IntMatrix::identity(2)),
            Err(TwistedError::Incompatible(_))
        ));
    }

    #[test]
    fn averaging_examples() {
        let trivial = HolonomySet::new(vec![IntMatrix::identity(2)]).unwrap();
        let m = IntMatrix::from_rows(&[[0, 1], [1, 3]]);
        assert_eq!(r_averaging(&trivial, &m).unwrap(), r_abelian(&m).unwrap());

        // order-2 Tahara form with delta = 1, alpha = 1, on the lattice (t^2, x, y, z)
        let a_tilde = IntMatrix::from_rows(&[[1, 0, 0, 0], [0, 1, 0, 1], [0, 0, -1, 0], [0, 0, 0, -1]]);
        let m_tilde = IntMatrix::from_rows(&[[-1, 2, 0, 1], [1, -1, -1, 0], [0, 0, -1, 1], [0, 0, 2, -1]]);
        let f = HolonomySet::cyclic(&a_tilde).unwrap();
        assert_eq!(f.order(), 2);
        assert_eq!(r_averaging(&f, &m_tilde).unwrap(), fin(4));

        let f = HolonomySet::cyclic(&IntMatrix::scalar(2, -1)).unwrap();
        let m = IntMatrix::from_rows(&[[0, 1], [1, 2]]);
        // R(M) = |det [[1,-1],[-1,-1]]| = 2, R(-M) = |det [[1,1],[1,3]]| = 2
        assert_eq!(r_averaging(&f, &m).unwrap(), fin(2));
    }

    #[test]
    fn averaging_rejects_non_integer_average() {
        let f = HolonomySet::cyclic(&IntMatrix::from_rows(&[[0, -1], [1, -1]])).unwrap();
        // terms 4, 4, 2 over a group of order 3
        let m = IntMatrix::from_rows(&[[-2, -1], [1, 0]]);
        assert!(matches!(r_averaging(&f, &m), Err(TwistedError::NotDivisible { order: 3, .. })));
    }

    #[test]
    fn quadruple_examples() {
        let a = IntMatrix::from_rows(&[[2, 3], [3, 5]]);
        let m = IntMatrix::from_rows(&[[0, -1], [1, 0]]);
        assert_eq!(r_quadruple(&a, &m).unwrap(), fin(8));
        let unip = IntMatrix::from_rows(&[[-1, 2], [0, -1]]);
        // AMA = M forces M = [[a, b], [0, -a]]
        let m = IntMatrix::from_rows(&[[1, 0], [0, -1]]);
        assert_eq!(r_quadruple(&unip, &m).unwrap(), RNumber::Infinite);
        assert!(r_quadruple(&a, &IntMatrix::from_rows(&[[1, 1], [0, 1]])).is_err());
    }

    #[test]
    fn holonomy_validation() {
        assert!(HolonomySet::new(vec![IntMatrix::scalar(2, -1)]).is_err());
        assert!(HolonomySet::new(vec![IntMatrix::identity(2), IntMatrix::identity(2)]).is_err());
        assert!(HolonomySet::new(vec![IntMatrix::identity(2), IntMatrix::from_rows(&[[0, -1], [1, 0]])]).is_err());
        assert!(HolonomySet::cyclic(&IntMatrix::from_rows(&[[1, 1], [0, 1]])).is_err());
        assert_eq!(HolonomySet::cyclic(&IntMatrix::from_rows(&[[1, 1], [-1, 0]])).unwrap().order(), 6);
    }
}
