use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, IntVector};

/// `U * M * V = D` with `D` diagonal, `d_1 | d_2 | ...`, zeros last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub elementary_divisors: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.elementary_divisors.iter().filter(|x| !x.is_zero()).count()
    }
}

fn find_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = d.get(i, j);
            if x.is_zero() {
                continue;
            }
            let a = x.abs();
            if best.as_ref().map_or(true, |(_, _, b)| a < *b) {
                best = Some((i, j, a));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Smith normal form with a deterministic pivot rule: the nonzero entry of
/// least absolute value, ties broken by row then column.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (r, c) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    let steps = r.min(c);
    let mut t = 0;
    'outer: while t < steps {
        loop {
            let Some((pi, pj)) = find_pivot(&d, t) else {
                break 'outer;
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = d.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..r {
                let q = d.get(i, t) / &pivot;
                if !q.is_zero() {
                    d.add_row_multiple(i, t, &-&q);
                    u.add_row_multiple(i, t, &-&q);
                }
                if !d.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                let q = d.get(t, j) / &pivot;
                if !q.is_zero() {
                    d.add_col_multiple(j, t, &-&q);
                    v.add_col_multiple(j, t, &-&q);
                }
                if !d.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let bad_row = (t + 1..r).find(|&i| (t + 1..c).any(|j| !d.get(i, j).is_multiple_of(&pivot)));
            if let Some(i) = bad_row {
                d.add_row_multiple(t, i, &BigInt::one());
                u.add_row_multiple(t, i, &BigInt::one());
                continue;
            }
            break;
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    let elementary_divisors = (0..steps).map(|i| d.get(i, i).clone()).collect();
    SnfResult { u, d, v, elementary_divisors }
}

/// Coset representatives of `Z^n / Im(M)` for square `M`; `None` when the
/// quotient is infinite.
pub fn cokernel_representatives(m: &IntMatrix) -> Option<Vec<IntVector>> {
    if !m.is_square() {
        return None;
    }
    let snf = smith_normal_form(m);
    if snf.elementary_divisors.iter().any(Zero::is_zero) {
        return None;
    }
    let u_inv = snf.u.inverse_unimodular().ok()?;
    let n = m.rows();
    let mut reps: Vec<IntVector> = vec![vec![BigInt::zero(); n]];
    for (i, di) in snf.elementary_divisors.iter().enumerate() {
        let mut next = Vec::new();
        for base in &reps {
            let mut k = BigInt::zero();
            while &k < di {
                let mut v = base.clone();
                v[i] = k.clone();
                next.push(v);
                k += 1;
            }
        }
        reps = next;
    }
    Some(reps.iter().map(|k| u_inv.apply(k).expect("square")).collect())
}
