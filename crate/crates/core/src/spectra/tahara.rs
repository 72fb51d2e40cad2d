use num_traits::One;
use serde::Serialize;

use super::{precondition, SpectraError};
use crate::exactlin::{eigenlattice, finite_order, kernel_lattice, lattice_index, IntMatrix};

/// The binary invariant separating the two conjugacy classes of `GL_3(Z)`
/// matrices of order 2 or 3 with a simple eigenvalue 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct DeltaInvariant {
    pub value: u8,
}

/// `delta = 0` iff `Z^3 = W_1 + W'`, where `W'` is the kernel of `A + I`
/// (order 2) or of `A^2 + A + I` (order 3).
pub fn tahara_delta(a: &IntMatrix) -> Result<DeltaInvariant, SpectraError> {
    if a.rows() != 3 || a.cols() != 3 {
        return precondition("expected a 3x3 matrix");
    }
    let order = finite_order(a);
    let w1 = eigenlattice(a, 1);
    if w1.rank() != 1 {
        return precondition("eigenvalue 1 must be simple");
    }
    let i = IntMatrix::identity(3);
    let complement = match order {
        Some(2) => kernel_lattice(&(a + &i)),
        Some(3) => kernel_lattice(&(&(&(a * a) + a) + &i)),
        _ => return precondition("A must have order 2 or 3"),
    };
    if complement.rank() != 2 {
        return precondition("complementary lattice must have rank 2");
    }
    let mut cols = w1.basis.clone();
    cols.extend(complement.basis.iter().cloned());
    let index = lattice_index(&IntMatrix::from_columns(&cols)?).expect("full rank");
    Ok(DeltaInvariant { value: if index.is_one() { 0 } else { 1 } })
}
