use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{smith_normal_form, IntMatrix, IntVector, LinAlgError};

/// A sublattice of `Z^ambient_dim` given by a basis (possibly empty).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeBasis {
    pub ambient_dim: usize,
    #[serde(serialize_with = "crate::json::big_vecs")]
    pub basis: Vec<IntVector>,
}

impl LatticeBasis {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Basis vectors as the columns of a matrix; `None` for the zero lattice.
    pub fn matrix(&self) -> Option<IntMatrix> {
        if self.basis.is_empty() {
            None
        } else {
            IntMatrix::from_columns(&self.basis).ok()
        }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        match self.matrix() {
            None => v.iter().all(Zero::is_zero),
            Some(g) => lattice_membership(v, &g).ok().flatten().is_some(),
        }
    }
}

/// Saturated basis of the integer kernel of `m`.
pub fn kernel_lattice(m: &IntMatrix) -> LatticeBasis {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    let basis = (rank..m.cols()).map(|j| snf.v.column(j)).collect();
    LatticeBasis { ambient_dim: m.cols(), basis }
}

/// `W_eps = { z : A z = eps z }`, saturated.
pub fn eigenlattice(a: &IntMatrix, eps: i64) -> LatticeBasis {
    let n = a.rows();
    kernel_lattice(&(a - &IntMatrix::scalar(n, eps)))
}

/// Saturation of the span of `vectors` inside `Z^ambient_dim`.
pub fn saturate(ambient_dim: usize, vectors: &[IntVector]) -> LatticeBasis {
    let nonzero: Vec<IntVector> =
        vectors.iter().filter(|v| v.iter().any(|x| !x.is_zero())).cloned().collect();
    if nonzero.is_empty() {
        return LatticeBasis { ambient_dim, basis: Vec::new() };
    }
    let b = IntMatrix::from_columns(&nonzero).expect("consistent lengths");
    let snf = smith_normal_form(&b);
    let u_inv = snf.u.inverse_unimodular().expect("U is unimodular");
    let basis = (0..snf.rank()).map(|j| u_inv.column(j)).collect();
    LatticeBasis { ambient_dim, basis }
}

/// Index of the full-rank sublattice spanned by the columns of `basis`,
/// or `None` if the columns do not span a full-rank sublattice.
pub fn lattice_index(basis: &IntMatrix) -> Option<BigInt> {
    if !basis.is_square() {
        return None;
    }
    let d = basis.det().ok()?.abs();
    if d.is_zero() {
        None
    } else {
        Some(d)
    }
}

/// Outcome of a membership test with a certificate either way.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    Member {
        #[serde(with = "crate::json::big_vec")]
        coefficients: IntVector,
    },
    /// After the SNF change of basis, coordinate `row` of the target equals
    /// `value`, which `divisor` does not divide (a zero divisor demands zero).
    NotMember {
        row: usize,
        #[serde(with = "crate::json::big")]
        divisor: BigInt,
        #[serde(with = "crate::json::big")]
        value: BigInt,
    },
}

pub fn membership_certificate(
    target: &[BigInt],
    generators: &IntMatrix,
) -> Result<Membership, LinAlgError> {
    if target.len() != generators.rows() {
        return Err(LinAlgError::DimensionMismatch {
            expected: format!("target of length {}", generators.rows()),
            found: format!("length {}", target.len()),
        });
    }
    let snf = smith_normal_form(generators);
    let s = snf.u.apply(target)?;
    let k = generators.cols();
    let mut y = vec![BigInt::zero(); k];
    for (row, value) in s.iter().enumerate() {
        let divisor = snf.elementary_divisors.get(row).cloned().unwrap_or_default();
        if divisor.is_zero() {
            if !value.is_zero() {
                return Ok(Membership::NotMember { row, divisor, value: value.clone() });
            }
        } else {
            let (q, r) = value.div_rem(&divisor);
            if !r.is_zero() {
                return Ok(Membership::NotMember { row, divisor, value: value.clone() });
            }
            y[row] = q;
        }
    }
    Ok(Membership::Member { coefficients: snf.v.apply(&y)? })
}

/// Integer coefficients `c` with `generators * c = target`, if any exist.
pub fn lattice_membership(
    target: &[BigInt],
    generators: &IntMatrix,
) -> Result<Option<IntVector>, LinAlgError> {
    Ok(match membership_certificate(target, generators)? {
        Membership::Member { coefficients } => Some(coefficients),
        Membership::NotMember { .. } => None,
    })
}
