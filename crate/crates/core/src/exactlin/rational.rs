use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{IntMatrix, LinAlgError};

/// Dense matrix of exact rationals; entries are always kept in lowest terms.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn from_int(m: &IntMatrix) -> Self {
        RatMatrix {
            rows: m.rows(),
            cols: m.cols(),
            data: m.entries().iter().map(|x| BigRational::from_integer(x.clone())).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn identity(n: usize) -> Self {
        Self::from_int(&IntMatrix::identity(n))
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::DimensionMismatch {
                expected: format!("{} rows", self.cols),
                found: format!("{} rows", other.rows),
            });
        }
        let mut data = vec![BigRational::zero(); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(RatMatrix { rows: self.rows, cols: other.cols, data })
    }

    pub fn mul_int(&self, other: &IntMatrix) -> Result<RatMatrix, LinAlgError> {
        self.mul(&RatMatrix::from_int(other))
    }

    /// Gauss–Jordan inverse; `None` for singular or non-square input.
    pub fn inverse(&self) -> Option<RatMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut inv = RatMatrix::identity(n).data;
        for c in 0..n {
            let pivot = (c..n).find(|&r| !a[r * n + c].is_zero())?;
            if pivot != c {
                for j in 0..n {
                    a.swap(pivot * n + j, c * n + j);
                    inv.swap(pivot * n + j, c * n + j);
                }
            }
            let p = a[c * n + c].clone();
            for j in 0..n {
                a[c * n + j] = &a[c * n + j] / &p;
                inv[c * n + j] = &inv[c * n + j] / &p;
            }
            for r in 0..n {
                if r == c || a[r * n + c].is_zero() {
                    continue;
                }
                let f = a[r * n + c].clone();
                for j in 0..n {
                    let da = &f * &a[c * n + j];
                    a[r * n + j] -= da;
                    let di = &f * &inv[c * n + j];
                    inv[r * n + j] -= di;
                }
            }
        }
        Some(RatMatrix { rows: n, cols: n, data: inv })
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.denom().is_one())
    }

    pub fn to_int(&self) -> Option<IntMatrix> {
        if !self.is_integral() {
            return None;
        }
        let data: Vec<BigInt> = self.data.iter().map(|x| x.numer().clone()).collect();
        IntMatrix::new(self.rows, self.cols, data).ok()
    }

    /// Least common multiple of all denominators.
    pub fn common_denominator(&self) -> BigInt {
        use num_integer::Integer;
        self.data.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(";")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        f.write_str("]")
    }
}
