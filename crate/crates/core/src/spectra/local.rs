//! Solutions of the system `-m^2 - np = 1`, `(a-d)m + bp + cn = 0` modulo
//! an integer. Every integer solution reduces to one of these, so a property
//! that fails for all of them fails for every integer solution.

use num_traits::ToPrimitive;

use crate::exactlin::IntMatrix;

/// Largest modulus for which the residue enumeration is attempted.
pub(crate) const MAX_MODULUS: i64 = 128;

fn coeff(a: &IntMatrix, i: usize, j: usize, modulus: i64) -> Option<i64> {
    let v = a.get(i, j).to_i64()?;
    Some(v.rem_euclid(modulus))
}

/// Residue classes `(m, n, p)` in `[0, modulus)^3` solving both equations
/// modulo `modulus`; `None` if the modulus is out of range.
pub(crate) fn local_solutions(a: &IntMatrix, modulus: i64) -> Option<Vec<[i64; 3]>> {
    if !(2..=MAX_MODULUS).contains(&modulus) {
        return None;
    }
    let l = modulus;
    let (aa, b, c, d) = (coeff(a, 0, 0, l)?, coeff(a, 0, 1, l)?, coeff(a, 1, 0, l)?, coeff(a, 1, 1, l)?);
    let mut out = Vec::new();
    for m in 0..l {
        for n in 0..l {
            for p in 0..l {
                let first = (-(m * m) - n * p - 1).rem_euclid(l);
                let second = ((aa - d) * m + b * p + c * n).rem_euclid(l);
                if first == 0 && second == 0 {
                    out.push([m, n, p]);
                }
            }
        }
    }
    Some(out)
}
