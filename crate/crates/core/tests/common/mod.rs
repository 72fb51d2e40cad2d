//! Generators and brute-force oracles shared by the integration tests. The
//! oracles work on plain `i128` arrays and do not call into the library.
#![allow(dead_code)]

use proptest::prelude::*;
use reidemeister::exactlin::IntMatrix;

pub type Rows = Vec<Vec<i128>>;

pub fn rows_of(m: &IntMatrix) -> Rows {
    m.to_i64_rows().expect("small entries").into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect()
}

pub fn matrix_of(rows: &[Vec<i64>]) -> IntMatrix {
    let n = rows.len();
    let flat: Vec<i64> = rows.iter().flatten().copied().collect();
    IntMatrix::from_i64(n, flat.len() / n.max(1), &flat).unwrap()
}

/// Leibniz determinant for `n <= 3`.
pub fn det(m: &Rows) -> i128 {
    match m.len() {
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        3 => {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        }
        n => panic!("det oracle only handles n <= 3, got {}", n),
    }
}

pub fn identity(n: usize) -> Rows {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

pub fn sub(a: &Rows, b: &Rows) -> Rows {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

pub fn mul(a: &Rows, b: &Rows) -> Rows {
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    (0..n).map(|i| (0..m).map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum()).collect()).collect()
}

/// Index of the row lattice of a square matrix in `Z^n`, by integer row
/// reduction to echelon form; `None` when the rank is deficient.
pub fn lattice_index(m: &Rows) -> Option<u128> {
    let mut a = m.clone();
    let n = a.len();
    let mut index: u128 = 1;
    for col in 0..n {
        loop {
            let pivot = (col..n).filter(|&r| a[r][col] != 0).min_by_key(|&r| a[r][col].abs());
            let Some(p) = pivot else { return None };
            a.swap(col, p);
            let mut done = true;
            for r in col + 1..n {
                let q = a[r][col].div_euclid(a[col][col]);
                if q != 0 {
                    for c in 0..n {
                        a[r][c] -= q * a[col][c];
                    }
                }
                if a[r][col] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        index *= a[col][col].unsigned_abs();
    }
    Some(index)
}

/// `[Z^n : (I - M) Z^n]`, the number of Reidemeister classes of `M` on `Z^n`.
pub fn coset_count(m: &Rows) -> Option<u128> {
    lattice_index(&sub(&identity(m.len()), m))
}

/// All `(m, n, p)` with `|m|, |n|, |p| <= b`, `-m^2 - n p = 1` and
/// `(a - d) m + b p + c n = 0`.
pub fn brute_system2(a: &Rows, b: i128) -> Vec<(i128, i128, i128)> {
    let (aa, bb, cc, dd) = (a[0][0], a[0][1], a[1][0], a[1][1]);
    let mut out = Vec::new();
    for m in -b..=b {
        for n in -b..=b {
            for p in -b..=b {
                if -m * m - n * p == 1 && (aa - dd) * m + bb * p + cc * n == 0 {
                    out.push((m, n, p));
                }
            }
        }
    }
    out
}

fn elementary(n: usize, i: usize, j: usize, k: i64) -> Vec<Vec<i64>> {
    let mut e: Vec<Vec<i64>> = (0..n).map(|r| (0..n).map(|c| i64::from(r == c)).collect()).collect();
    if i != j {
        e[i][j] = k;
    }
    e
}

fn mul64(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|t| a[i][t] * b[t][j]).sum()).collect()).collect()
}

/// Random elements of `GL_n(Z)`: products of a few elementary matrices with a
/// random sign pattern.
pub fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    (prop::collection::vec((0..n, 0..n, -2i64..=2), 1..5), prop::collection::vec(any::<bool>(), n)).prop_map(
        move |(ops, signs)| {
            let mut p: Vec<Vec<i64>> = elementary(n, 0, 0, 0);
            for (i, s) in signs.iter().enumerate() {
                if *s {
                    p[i][i] = -1;
                }
            }
            for (i, j, k) in ops {
                p = mul64(&p, &elementary(n, i, j, k));
            }
            matrix_of(&p)
        },
    )
}

/// Every matrix with entries in `[-r, r]` and determinant in `dets`.
pub fn all_2x2(r: i64, dets: &[i64]) -> Vec<IntMatrix> {
    let mut out = Vec::new();
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                for d in -r..=r {
                    if dets.contains(&(a * d - b * c)) {
                        out.push(IntMatrix::from_rows(&[[a, b], [c, d]]));
                    }
                }
            }
        }
    }
    out
}

/// Square matrices with entries in `[-r, r]`.
pub fn square(n: usize, r: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-r..=r, n * n).prop_map(move |v| IntMatrix::from_i64(n, n, &v).unwrap())
}

pub fn conj(p: &IntMatrix, a: &IntMatrix) -> IntMatrix {
    &(p * a) * &p.inverse_unimodular().unwrap()
}
