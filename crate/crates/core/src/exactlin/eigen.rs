use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{IntMatrix, LinAlgError};

/// What is left of a 3×3 characteristic polynomial once the `±1` roots are
/// divided out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Residual {
    None,
    RealPair,
    ComplexPair,
    IrreducibleCubic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Mixed3 {
    pub plus_one: u8,
    pub minus_one: u8,
    pub residual: Residual,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EigenKind {
    RepeatedOne,
    RepeatedMinusOne,
    OnePlusMinusOne,
    RealIrrationalPair,
    ComplexPair,
    Mixed3(Mixed3),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenProfile {
    pub dim: usize,
    /// Coefficients `a_0..a_dim` of `det(xI - M)`.
    #[serde(with = "crate::json::big_vec")]
    pub char_poly: Vec<BigInt>,
    #[serde(with = "crate::json::big")]
    pub det: BigInt,
    #[serde(with = "crate::json::big")]
    pub trace: BigInt,
    pub kind: EigenKind,
    pub finite_order: Option<u32>,
}

fn eval(poly: &[BigInt], x: &BigInt) -> BigInt {
    poly.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Divides `poly` by `(x - r)`, assuming `r` is a root.
fn deflate(poly: &[BigInt], r: &BigInt) -> Vec<BigInt> {
    let n = poly.len() - 1;
    let mut q = vec![BigInt::zero(); n];
    let mut carry = BigInt::zero();
    for k in (1..=n).rev() {
        carry = &poly[k] + &carry * r;
        q[k - 1] = carry.clone();
    }
    q
}

/// Sign of the discriminant of the monic quadratic `x^2 + b x + c`.
fn quadratic_residual(poly: &[BigInt]) -> Residual {
    let (c, b) = (&poly[0], &poly[1]);
    let disc = b * b - BigInt::from(4) * c;
    if disc.is_negative() {
        Residual::ComplexPair
    } else {
        Residual::RealPair
    }
}

/// Symbolic eigenvalue profile of a unimodular 2×2 or 3×3 matrix.
pub fn eigenvalue_profile(m: &IntMatrix) -> Result<EigenProfile, LinAlgError> {
    let dim = m.require_square()?;
    if dim != 2 && dim != 3 {
        return Err(LinAlgError::UnsupportedDimension(dim));
    }
    let det = m.det()?;
    if !det.abs().is_one() {
        return Err(LinAlgError::NotUnimodular { det });
    }
    let trace = m.trace()?;
    let char_poly = m.char_poly()?;
    let kind = if dim == 2 {
        let two = BigInt::from(2);
        if det.is_one() && trace == two {
            EigenKind::RepeatedOne
        } else if det.is_one() && trace == -two {
            EigenKind::RepeatedMinusOne
        } else if !det.is_one() && trace.is_zero() {
            EigenKind::OnePlusMinusOne
        } else {
            let disc = &trace * &trace - BigInt::from(4) * &det;
            if disc.is_negative() {
                EigenKind::ComplexPair
            } else {
                EigenKind::RealIrrationalPair
            }
        }
    } else {
        let mut poly = char_poly.clone();
        let (one, minus_one) = (BigInt::one(), -BigInt::one());
        let (mut plus, mut minus) = (0u8, 0u8);
        loop {
            if poly.len() > 1 && eval(&poly, &one).is_zero() {
                poly = deflate(&poly, &one);
                plus += 1;
            } else if poly.len() > 1 && eval(&poly, &minus_one).is_zero() {
                poly = deflate(&poly, &minus_one);
                minus += 1;
            } else {
                break;
            }
        }
        let residual = match poly.len() - 1 {
            0 => Residual::None,
            2 => quadratic_residual(&poly),
            3 => Residual::IrreducibleCubic,
            _ => unreachable!("a degree-one residual would have a root of modulus one"),
        };
        EigenKind::Mixed3(Mixed3 { plus_one: plus, minus_one: minus, residual })
    };
    Ok(EigenProfile { dim, char_poly, det, trace, kind, finite_order: finite_order(m) })
}

/// The order of `M` when `M^d = I` for some `d` in `1..=6`.
pub fn finite_order(m: &IntMatrix) -> Option<u32> {
    if !m.is_square() || m.rows() > 3 {
        return None;
    }
    let mut p = m.clone();
    for d in 1..=6u32 {
        if p.is_identity() {
            return Some(d);
        }
        p = &p * m;
    }
    None
}

/// Whether `X = ±M^k` for some `k`; for finite-order `M ≠ ±I` in GL₂(Z)
/// this set is the whole centralizer.
pub fn in_centralizer_span(m: &IntMatrix, x: &IntMatrix) -> Result<bool, LinAlgError> {
    if m.rows() != 2 || !m.is_square() || x.rows() != 2 || !x.is_square() {
        return Err(LinAlgError::Precondition("expected 2x2 matrices".into()));
    }
    if m.is_scalar(1) || m.is_scalar(-1) {
        return Err(LinAlgError::Precondition("M must not be +-I".into()));
    }
    let order = finite_order(m)
        .ok_or_else(|| LinAlgError::Precondition("M must have finite order".into()))?;
    let neg_x = -x;
    let mut p = IntMatrix::identity(2);
    for _ in 0..order {
        if &p == x || p == neg_x {
            return Ok(true);
        }
        p = &p * m;
    }
    Ok(false)
}

impl EigenProfile {
    /// Multiplicity of eigenvalue `+1`.
    pub fn plus_one(&self) -> u8 {
        match self.kind {
            EigenKind::RepeatedOne => 2,
            EigenKind::OnePlusMinusOne => 1,
            EigenKind::Mixed3(m) => m.plus_one,
            _ => 0,
        }
    }

    pub fn minus_one(&self) -> u8 {
        match self.kind {
            EigenKind::RepeatedMinusOne => 2,
            EigenKind::OnePlusMinusOne => 1,
            EigenKind::Mixed3(m) => m.minus_one,
            _ => 0,
        }
    }

    pub fn det_i64(&self) -> i64 {
        self.det.to_i64().expect("unit determinant")
    }
}
