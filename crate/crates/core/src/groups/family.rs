use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::GroupError;
use crate::exactlin::{IntMatrix, IntVector};

/// The classified group families with their parameters.
///
/// Elements are stored as exponent vectors in a fixed slot order:
///
/// | family | slots | element |
/// |---|---|---|
/// | `FreeAbelian(n)` | `e1..en` | `e1^a1 ... en^an` |
/// | `Heisenberg(n)` | `x, y, z` | `x^a y^b z^c`, `[y,x] = z^n` |
/// | `HeisenbergTimesZ(n)` | `x, y, z, u` | `x^a y^b z^c u^d` |
/// | `ZnSemidirectZ(A)` | `x, y, z, t` (or `e1..en, t`) | `v t^k`, `t^-1 v t = A v` |
/// | `Z2MinusIExt(A, n0)` | `v, w, t, u` | `z t^l u^m`, `t z t^-1 = B z`, `u g u^-1 = psi(g)` |
/// | `HnSemidirectZ(n, A, k, l)` | `x, y, z, t` | `h t^k`, `t h t^-1 = psi(h)` |
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupFamily {
    FreeAbelian {
        n: usize,
    },
    Heisenberg {
        n: u64,
    },
    HeisenbergTimesZ {
        n: u64,
    },
    ZnSemidirectZ {
        a: IntMatrix,
    },
    /// `(Z^2 x|_B Z) x|_psi Z` with `psi(z t^l) = A(z) (n0 t)^l`; `B` defaults to `-I`.
    #[serde(rename = "z2_minus_i_ext")]
    Z2MinusIExt {
        a: IntMatrix,
        #[serde(with = "crate::json::big_vec")]
        n0: IntVector,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        b: Option<IntMatrix>,
    },
    /// `H_n x|_psi Z` with `psi(x) = x^A11 y^A21 z^k`, `psi(y) = x^A12 y^A22 z^l`.
    HnSemidirectZ {
        n: u64,
        a: IntMatrix,
        k: i64,
        l: i64,
    },
}

impl GroupFamily {
    pub fn heisenberg(n: u64) -> Self {
        GroupFamily::Heisenberg { n }
    }

    pub fn heisenberg_times_z(n: u64) -> Self {
        GroupFamily::HeisenbergTimesZ { n }
    }

    pub fn zn_semidirect_z(a: IntMatrix) -> Self {
        GroupFamily::ZnSemidirectZ { a }
    }

    pub fn z2_minus_i_ext(a: IntMatrix, n0: IntVector) -> Self {
        GroupFamily::Z2MinusIExt { a, n0, b: None }
    }

    /// The `-I` action with central twists `psi(x) = x^-1 z^k`, `psi(y) = y^-1 z^l`.
    pub fn hn_minus_i(n: u64, k: i64, l: i64) -> Self {
        GroupFamily::HnSemidirectZ { n, a: IntMatrix::scalar(2, -1), k, l }
    }

    /// Short identifier used on the command line and in traces.
    pub fn tag(&self) -> &'static str {
        match self {
            GroupFamily::FreeAbelian { .. } => "free-abelian",
            GroupFamily::Heisenberg { .. } => "heisenberg",
            GroupFamily::HeisenbergTimesZ { .. } => "heisenberg-times-z",
            GroupFamily::ZnSemidirectZ { .. } => "zn-semidirect",
            GroupFamily::Z2MinusIExt { .. } => "z2-ext",
            GroupFamily::HnSemidirectZ { .. } => "hn-semidirect",
        }
    }

    /// The matrix `B` by which `t` acts in the double extension.
    pub fn ext_b(&self) -> Option<IntMatrix> {
        match self {
            GroupFamily::Z2MinusIExt { b, .. } => Some(b.clone().unwrap_or_else(|| IntMatrix::scalar(2, -1))),
            _ => None,
        }
    }

    /// Number of exponent slots.
    pub fn rank(&self) -> usize {
        match self {
            GroupFamily::FreeAbelian { n } => *n,
            GroupFamily::Heisenberg { .. } => 3,
            GroupFamily::HeisenbergTimesZ { .. } => 4,
            GroupFamily::ZnSemidirectZ { a } => a.rows() + 1,
            GroupFamily::Z2MinusIExt { .. } | GroupFamily::HnSemidirectZ { .. } => 4,
        }
    }

    pub fn generator_names(&self) -> Vec<String> {
        let names: Vec<&str> = match self {
            GroupFamily::FreeAbelian { n } => return (1..=*n).map(|i| format!("e{}", i)).collect(),
            GroupFamily::Heisenberg { .. } => vec!["x", "y", "z"],
            GroupFamily::HeisenbergTimesZ { .. } => vec!["x", "y", "z", "u"],
            GroupFamily::ZnSemidirectZ { a } => {
                let n = a.rows();
                let mut v: Vec<String> = if n <= 3 {
                    ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
                } else {
                    (1..=n).map(|i| format!("e{}", i)).collect()
                };
                v.push("t".into());
                return v;
            }
            GroupFamily::Z2MinusIExt { .. } => vec!["v", "w", "t", "u"],
            GroupFamily::HnSemidirectZ { .. } => vec!["x", "y", "z", "t"],
        };
        names.into_iter().map(String::from).collect()
    }

    /// Slot indices from the bottom of a polycyclic series to the top; each
    /// prefix generates a normal subgroup of the next.
    pub fn series_order(&self) -> Vec<usize> {
        match self {
            GroupFamily::FreeAbelian { n } => (0..*n).collect(),
            GroupFamily::Heisenberg { .. } => vec![2, 0, 1],
            GroupFamily::HeisenbergTimesZ { .. } => vec![2, 3, 0, 1],
            GroupFamily::ZnSemidirectZ { a } => (0..=a.rows()).collect(),
            GroupFamily::Z2MinusIExt { .. } => vec![0, 1, 2, 3],
            GroupFamily::HnSemidirectZ { .. } => vec![2, 0, 1, 3],
        }
    }

    /// Slot of the central generator `z` of a Heisenberg layer, if any.
    pub fn central_heisenberg_slot(&self) -> Option<usize> {
        match self {
            GroupFamily::Heisenberg { .. } | GroupFamily::HeisenbergTimesZ { .. } | GroupFamily::HnSemidirectZ { .. } => Some(2),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<(), GroupError> {
        let bad = |msg: String| Err(GroupError::InvalidFamily(msg));
        let unimodular = |a: &IntMatrix, dim: usize, what: &str| -> Result<(), GroupError> {
            if a.rows() != dim || a.cols() != dim {
                return Err(GroupError::InvalidFamily(format!("{} must be {}x{}", what, dim, dim)));
            }
            if !a.is_unimodular() {
                return Err(GroupError::InvalidFamily(format!("{} = {} is not unimodular", what, a)));
            }
            Ok(())
        };
        match self {
            GroupFamily::FreeAbelian { n } if *n == 0 => bad("free abelian rank must be positive".into()),
            GroupFamily::Heisenberg { n } | GroupFamily::HeisenbergTimesZ { n } if *n == 0 => {
                bad("Heisenberg parameter must be at least 1".into())
            }
            GroupFamily::ZnSemidirectZ { a } => {
                a.require_square().map_err(|e| GroupError::InvalidFamily(e.to_string()))?;
                unimodular(a, a.rows(), "A")
            }
            GroupFamily::Z2MinusIExt { a, n0, .. } => {
                unimodular(a, 2, "A")?;
                let b = self.ext_b().expect("extension family");
                unimodular(&b, 2, "B")?;
                if n0.len() != 2 {
                    return bad("n0 must have two components".into());
                }
                if &(a * &b) != &(&b * a) {
                    return bad("A and B must commute".into());
                }
                Ok(())
            }
            GroupFamily::HnSemidirectZ { n, a, .. } => {
                if *n == 0 {
                    return bad("Heisenberg parameter must be at least 1".into());
                }
                unimodular(a, 2, "A")
            }
            _ => Ok(()),
        }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { exponents: vec![BigInt::zero(); self.rank()] }
    }

    pub fn generator(&self, slot: usize) -> GroupElement {
        let mut g = self.identity();
        g.exponents[slot] = BigInt::one();
        g
    }

    pub fn slot_of(&self, name: &str) -> Option<usize> {
        self.generator_names().iter().position(|g| g == name)
    }

    /// Renders an element as a word in the generators, e.g. `x y^-1 z^2`.
    pub fn format_element(&self, g: &GroupElement) -> String {
        let names = self.generator_names();
        let parts: Vec<String> = g
            .exponents
            .iter()
            .zip(&names)
            .filter(|(e, _)| !e.is_zero())
            .map(|(e, name)| if e.is_one() { name.clone() } else { format!("{}^{}", name, e) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }
}

/// A group element in normal form: its exponent vector in slot order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub exponents: Vec<BigInt>,
}

impl GroupElement {
    pub fn new(exponents: Vec<BigInt>) -> Self {
        GroupElement { exponents }
    }

    pub fn from_i64(exponents: &[i64]) -> Self {
        GroupElement { exponents: exponents.iter().map(|&e| BigInt::from(e)).collect() }
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.exponents.iter().all(Zero::is_zero)
    }

    /// Largest absolute exponent.
    pub fn height(&self) -> BigInt {
        self.exponents.iter().map(|e| e.abs()).max().unwrap_or_default()
    }
}
