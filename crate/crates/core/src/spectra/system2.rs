use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{precondition, SpectraError};
use crate::exactlin::IntMatrix;

/// A solution `(m, n, p)` of `-m^2 - np = 1`, `(a-d)m + bp + cn = 0`; the
/// matrix `[[m, n], [p, -m]]` satisfies `MA = A^-1 M`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct System2Witness {
    #[serde(with = "crate::json::big")]
    pub m: BigInt,
    #[serde(with = "crate::json::big")]
    pub n: BigInt,
    #[serde(with = "crate::json::big")]
    pub p: BigInt,
}

impl System2Witness {
    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::new(2, 2, vec![self.m.clone(), self.n.clone(), self.p.clone(), -&self.m]).expect("2x2")
    }

    /// Whether both equations hold for `a`.
    pub fn satisfies(&self, a: &IntMatrix) -> bool {
        let (aa, b, c, d) = (a.get(0, 0), a.get(0, 1), a.get(1, 0), a.get(1, 1));
        let first = -(&self.m * &self.m) - &self.n * &self.p;
        let second = (aa - d) * &self.m + b * &self.p + c * &self.n;
        first.is_one() && second.is_zero()
    }

    fn key(&self) -> (BigInt, BigInt, BigInt) {
        (self.m.abs(), self.m.clone(), self.n.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum System2Outcome {
    Witness(System2Witness),
    /// No solution with `|m| <= bound`.
    NoneUpToBound { bound: u64 },
    /// Non-real eigenvalues: there is no solution at all.
    ProvenEmpty,
}

fn check_input(a: &IntMatrix) -> Result<bool, SpectraError> {
    if a.rows() != 2 || a.cols() != 2 {
        return precondition("system (m, n, p) needs a 2x2 matrix");
    }
    let det = a.det()?;
    if !det.is_one() {
        return precondition(format!("det A = {} (only det 1 is searched)", det));
    }
    let tr = a.trace()?;
    if tr.abs() == BigInt::from(2) {
        return precondition("A has eigenvalue 1 or -1");
    }
    Ok(tr.abs() < BigInt::from(2))
}

/// The solutions `p` of `b p^2 + (a-d) m p - c (1 + m^2) = 0` that divide `1 + m^2`.
fn solutions_for(a: &IntMatrix, m: &BigInt) -> Vec<System2Witness> {
    let (aa, b, c, d) = (a.get(0, 0), a.get(0, 1), a.get(1, 0), a.get(1, 1));
    let q = BigInt::one() + m * m;
    let lin = (aa - d) * m;
    let constant = -(c * &q);
    let mut ps = Vec::new();
    if b.is_zero() {
        if !lin.is_zero() && (-&constant).is_multiple_of(&lin) {
            ps.push(-&constant / &lin);
        }
    } else {
        let disc = &lin * &lin - BigInt::from(4) * b * &constant;
        if disc.is_negative() {
            return Vec::new();
        }
        let s = disc.sqrt();
        if &s * &s != disc {
            return Vec::new();
        }
        let two_b = BigInt::from(2) * b;
        for num in [-&lin + &s, -&lin - &s] {
            if num.is_multiple_of(&two_b) {
                ps.push(num / &two_b);
            }
        }
    }
    let mut out: Vec<System2Witness> = ps
        .into_iter()
        .filter(|p| !p.is_zero() && q.is_multiple_of(p))
        .map(|p| System2Witness { m: m.clone(), n: -(&q / &p), p })
        .filter(|w| w.satisfies(a))
        .collect();
    out.sort_by_key(|w| w.key());
    out.dedup();
    out
}

fn m_order(bound: u64) -> impl Iterator<Item = BigInt> {
    std::iter::once(BigInt::zero())
        .chain((1..=bound).flat_map(|k| [BigInt::from(-(k as i128)), BigInt::from(k)]))
}

/// Every solution with `|m| <= bound`, ordered by `(|m|, m, n)`.
pub fn system2_witnesses(a: &IntMatrix, bound: u64) -> Result<Vec<System2Witness>, SpectraError> {
    if bound < 1 {
        return Err(SpectraError::BadBound);
    }
    if check_input(a)? {
        return Ok(Vec::new());
    }
    Ok(m_order(bound).flat_map(|m| solutions_for(a, &m)).collect())
}

/// The least solution in the order `(|m|, m, n)` among `|m| <= bound`.
pub fn decide_system2(a: &IntMatrix, bound: u64) -> Result<System2Outcome, SpectraError> {
    if bound < 1 {
        return Err(SpectraError::BadBound);
    }
    if check_input(a)? {
        return Ok(System2Outcome::ProvenEmpty);
    }
    for m in m_order(bound) {
        if let Some(w) = solutions_for(a, &m).into_iter().next() {
            return Ok(System2Outcome::Witness(w));
        }
    }
    Ok(System2Outcome::NoneUpToBound { bound })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn witness(a: [[i64; 2]; 2]) -> System2Outcome {
        decide_system2(&IntMatrix::from_rows(&a), 1000).unwrap()
    }

    #[test]
    fn golden_ratio_square() {
        let System2Outcome::Witness(w) = witness([[2, 3], [3, 5]]) else { panic!("expected a witness") };
        assert_eq!((w.m, w.n, w.p), (BigInt::from(0), BigInt::from(-1), BigInt::from(1)));
    }

    #[test]
    fn witness_commutes_into_inverse() {
        let a = IntMatrix::from_rows(&[[5, 2], [2, 1]]);
        let System2Outcome::Witness(w) = decide_system2(&a, 100).unwrap() else { panic!() };
        let m = w.matrix();
        assert_eq!(&m * &a, &a.inverse_unimodular().unwrap() * &m);
        assert!((&m * &m).is_scalar(-1));
    }

    #[test]
    fn complex_is_empty() {
        assert_eq!(witness([[0, -1], [1, 0]]), System2Outcome::ProvenEmpty);
        assert_eq!(witness([[1, 1], [-1, 0]]), System2Outcome::ProvenEmpty);
    }

    #[test]
    fn no_small_witness() {
        // a brute-force scan finds nothing with |m| <= 60 either
        let a = IntMatrix::from_rows(&[[3, 1], [2, 1]]);
        assert_eq!(decide_system2(&a, 50).unwrap(), System2Outcome::NoneUpToBound { bound: 50 });
    }

    #[test]
    fn rejects_bad_input() {
        assert!(decide_system2(&IntMatrix::from_rows(&[[1, 1], [1, 0]]), 10).is_err());
        assert!(decide_system2(&IntMatrix::from_rows(&[[1, 1], [0, 1]]), 10).is_err());
        assert!(decide_system2(&IntMatrix::from_rows(&[[-1, 1], [0, -1]]), 10).is_err());
        assert!(decide_system2(&IntMatrix::from_rows(&[[2, 3], [3, 5]]), 0).is_err());
    }

    #[test]
    fn all_witnesses_are_sorted() {
        let a = IntMatrix::from_rows(&[[2, 3], [3, 5]]);
        let ws = system2_witnesses(&a, 200).unwrap();
        assert!(ws.len() >= 2);
        assert!(ws.windows(2).all(|p| p[0].key() < p[1].key()));
        assert!(ws.iter().all(|w| w.satisfies(&a)));
    }
}
