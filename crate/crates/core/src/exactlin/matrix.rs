use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::LinAlgError;

/// An integer column vector.
pub type IntVector = Vec<BigInt>;

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self, LinAlgError> {
        if rows == 0 || cols == 0 {
            return Err(LinAlgError::Empty);
        }
        if data.len() != rows * cols {
            return Err(LinAlgError::DimensionMismatch {
                expected: format!("{} entries", rows * cols),
                found: format!("{} entries", data.len()),
            });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// Builds a matrix from fixed-width rows; mostly for literals in code and tests.
    pub fn from_rows<const C: usize>(rows: &[[i64; C]]) -> Self {
        assert!(!rows.is_empty() && C > 0, "matrix literal must be non-empty");
        let data = rows.iter().flat_map(|r| r.iter().map(|&x| BigInt::from(x))).collect();
        IntMatrix { rows: rows.len(), cols: C, data }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Result<Self, LinAlgError> {
        Self::new(rows, cols, entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[IntVector]) -> Result<Self, LinAlgError> {
        let cols = columns.len();
        let rows = columns.first().map_or(0, |c| c.len());
        if columns.iter().any(|c| c.len() != rows) {
            return Err(LinAlgError::Ragged);
        }
        let mut m = Self::new(rows, cols, vec![BigInt::zero(); rows * cols])?;
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m.data[i * cols + j] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0);
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn scalar(n: usize, value: i64) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::from(value);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> IntVector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> IntVector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<IntVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<IntVector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    /// Entries as `i64` when every entry fits.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_i64()).collect())
            .collect()
    }

    pub fn require_square(&self) -> Result<usize, LinAlgError> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(LinAlgError::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn checked_mul(&self, other: &IntMatrix) -> Result<IntMatrix, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::DimensionMismatch {
                expected: format!("{} rows on the right", self.cols),
                found: format!("{} rows", other.rows),
            });
        }
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[BigInt]) -> Result<IntVector, LinAlgError> {
        if v.len() != self.cols {
            return Err(LinAlgError::DimensionMismatch {
                expected: format!("vector of length {}", self.cols),
                found: format!("length {}", v.len()),
            });
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn trace(&self) -> Result<BigInt, LinAlgError> {
        let n = self.require_square()?;
        Ok((0..n).map(|i| self.get(i, i).clone()).sum())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn is_scalar(&self, value: i64) -> bool {
        self.is_square() && *self == Self::scalar(self.rows, value)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> Result<BigInt, LinAlgError> {
        let n = self.require_square()?;
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k * n + k].is_zero() {
                let swap = (k + 1..n).find(|&i| !a[i * n + k].is_zero());
                match swap {
                    Some(i) => {
                        for j in 0..n {
                            a.swap(k * n + j, i * n + j);
                        }
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = num / &prev;
                }
            }
            prev = a[k * n + k].clone();
        }
        Ok(sign * &a[n * n - 1])
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().map(|d| d.abs().is_one()).unwrap_or(false)
    }

    /// Exact inverse of a unimodular matrix.
    pub fn inverse_unimodular(&self) -> Result<IntMatrix, LinAlgError> {
        let d = self.det()?;
        if !d.abs().is_one() {
            return Err(LinAlgError::NotUnimodular { det: d });
        }
        let n = self.rows;
        if n <= 4 {
            // adj(M) / det(M), with det = +-1
            let mut out = Self::zero(n, n);
            for i in 0..n {
                for j in 0..n {
                    let minor = if n == 1 { BigInt::one() } else { self.minor(j, i).det()? };
                    let c = if (i + j) % 2 == 0 { minor } else { -minor };
                    out.data[i * n + j] = c * &d;
                }
            }
            return Ok(out);
        }
        let inv = super::RatMatrix::from_int(self)
            .inverse()
            .ok_or(LinAlgError::NotUnimodular { det: BigInt::zero() })?;
        Ok(inv.to_int().expect("inverse of a unimodular matrix is integral"))
    }

    /// The matrix with row `r` and column `c` removed.
    fn minor(&self, r: usize, c: usize) -> IntMatrix {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != r) {
            for j in (0..self.cols).filter(|&j| j != c) {
                data.push(self.data[i * self.cols + j].clone());
            }
        }
        IntMatrix { rows: self.rows - 1, cols: self.cols - 1, data }
    }

    /// `self^e`; negative exponents require a unimodular matrix.
    pub fn pow(&self, e: &BigInt) -> Result<IntMatrix, LinAlgError> {
        let n = self.require_square()?;
        let (base, mut e) = if e.is_negative() {
            (self.inverse_unimodular()?, -e)
        } else {
            (self.clone(), e.clone())
        };
        let mut result = Self::identity(n);
        let mut sq = base;
        while !e.is_zero() {
            if e.is_odd() {
                result = &result * &sq;
            }
            e >>= 1;
            if !e.is_zero() {
                sq = &sq * &sq;
            }
        }
        Ok(result)
    }

    pub fn pow_i64(&self, e: i64) -> Result<IntMatrix, LinAlgError> {
        self.pow(&BigInt::from(e))
    }

    /// Characteristic polynomial `det(xI - M)` as coefficients `a_0..a_n` (monic),
    /// computed with the Faddeev–LeVerrier recursion (all divisions exact).
    pub fn char_poly(&self) -> Result<Vec<BigInt>, LinAlgError> {
        let n = self.require_square()?;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut mk = Self::zero(n, n);
        for k in 1..=n {
            // M_k = A * M_{k-1} + c_{n-k+1} I
            let mut next = self * &mk;
            for i in 0..n {
                next.data[i * n + i] += &coeffs[n - k + 1];
            }
            mk = next;
            let am = self * &mk;
            let tr: BigInt = (0..n).map(|i| am.get(i, i).clone()).sum();
            coeffs[n - k] = -tr / BigInt::from(k);
        }
        Ok(coeffs)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> Result<IntMatrix, LinAlgError> {
        if self.rows != other.rows {
            return Err(LinAlgError::DimensionMismatch {
                expected: format!("{} rows", self.rows),
                found: format!("{} rows", other.rows),
            });
        }
        let mut cols = self.columns();
        cols.extend(other.columns());
        Self::from_columns(&cols)
    }

    /// Block-diagonal matrix `diag(self, other)`.
    pub fn block_diag(&self, other: &IntMatrix) -> IntMatrix {
        let mut m = Self::zero(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    /// Sub-block with rows `r0..r1` and columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> IntMatrix {
        let mut m = Self::zero(r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                m.set(i - r0, j - c0, self.get(i, j).clone());
            }
        }
        m
    }

    /// Entry-wise reduction into `0..modulus`.
    pub fn reduce_mod(&self, modulus: &BigInt) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.mod_floor(modulus)).collect(),
        }
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[target] += k * row[source]
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = k * &self.data[source * self.cols + j];
            self.data[target * self.cols + j] += delta;
        }
    }

    /// col[target] += k * col[source]
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = k * &self.data[i * self.cols + source];
            self.data[i * self.cols + target] += delta;
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = -x;
        }
    }
}

impl Mul<&IntMatrix> for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("matrix dimensions must agree")
    }
}

impl Add<&IntMatrix> for &IntMatrix {
    type Output = IntMatrix;

    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix dimensions must agree");
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&IntMatrix> for &IntMatrix {
    type Output = IntMatrix;

    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix dimensions must agree");
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;

    fn neg(self) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }
}

/// Text form `a,b;c,d`, the same grammar the parser accepts.
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
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
        Ok(())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self)
    }
}

/// Serialized as an array of rows; entries that do not fit in `i64` become
/// decimal strings so the encoding stays lossless.
impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<serde_json::Value>> = self
            .to_rows()
            .into_iter()
            .map(|r| r.iter().map(super::big_to_json).collect())
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(deserializer)?;
        super::parse::matrix_from_json_value(&value).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_examples() {
        assert_eq!(IntMatrix::identity(2).det().unwrap(), BigInt::one());
        assert_eq!(IntMatrix::from_rows(&[[2, 3], [3, 5]]).det().unwrap(), BigInt::one());
        assert_eq!(IntMatrix::from_rows(&[[0, -1], [1, 0]]).det().unwrap(), BigInt::one());
        let m = IntMatrix::from_rows(&[[0, 2, 1], [3, 0, 0], [1, 1, 1]]);
        // cofactor expansion along the second row: -3 * (2*1 - 1*1)
        assert_eq!(m.det().unwrap(), BigInt::from(-3));
    }

    #[test]
    fn det_rejects_non_square() {
        let m = IntMatrix::from_rows(&[[1, 2, 3], [4, 5, 6]]);
        assert!(matches!(m.det(), Err(LinAlgError::NotSquare { rows: 2, cols: 3 })));
    }

    #[test]
    fn char_poly_matches_trace_and_det() {
        let m = IntMatrix::from_rows(&[[2, 3], [3, 5]]);
        let p = m.char_poly().unwrap();
        assert_eq!(p, vec![BigInt::from(1), BigInt::from(-7), BigInt::from(1)]);
        let a = IntMatrix::from_rows(&[[1, 0, 1], [0, 5, 2], [0, 2, 1]]);
        let p = a.char_poly().unwrap();
        // (x - 1)(x^2 - 6x + 1) = x^3 - 7x^2 + 7x - 1
        assert_eq!(p, [-1, 7, -7, 1].iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
    }

    #[test]
    fn negative_powers_use_the_inverse() {
        let a = IntMatrix::from_rows(&[[2, 1], [1, 1]]);
        let inv = a.pow_i64(-1).unwrap();
        assert_eq!(inv, IntMatrix::from_rows(&[[1, -1], [-1, 2]]));
        assert!((&a.pow_i64(3).unwrap() * &a.pow_i64(-3).unwrap()).is_identity());
        let singular = IntMatrix::from_rows(&[[2, 0], [0, 1]]);
        assert!(singular.pow_i64(-1).is_err());
    }

    #[test]
    fn display_round_trips_through_text_parser() {
        let m = IntMatrix::from_rows(&[[2, -3], [3, 5]]);
        assert_eq!(m.to_string(), "2,-3;3,5");
        assert_eq!(super::super::parse_matrix_text(&m.to_string()).unwrap(), m);
    }
}
