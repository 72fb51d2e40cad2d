//! Closed-form collection for each family.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{GroupElement, GroupError, GroupFamily};
use crate::exactlin::{IntMatrix, IntVector};

/// `x^a y^b z^c` in `H_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Heis {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl Heis {
    pub fn new(a: BigInt, b: BigInt, c: BigInt) -> Self {
        Heis { a, b, c }
    }

    pub fn from_slice(e: &[BigInt]) -> Self {
        Heis::new(e[0].clone(), e[1].clone(), e[2].clone())
    }

    pub fn z(c: BigInt) -> Self {
        Heis::new(BigInt::zero(), BigInt::zero(), c)
    }

    pub fn into_vec(self) -> Vec<BigInt> {
        vec![self.a, self.b, self.c]
    }

    /// `y^b x^a' = x^a' y^b z^(n b a')`.
    pub fn mul(&self, other: &Heis, n: &BigInt) -> Heis {
        Heis::new(
            &self.a + &other.a,
            &self.b + &other.b,
            &self.c + &other.c + n * &self.b * &other.a,
        )
    }

    pub fn inv(&self, n: &BigInt) -> Heis {
        Heis::new(-&self.a, -&self.b, -&self.c + n * &self.a * &self.b)
    }

    /// `(x^a y^b z^c)^e = x^(ea) y^(eb) z^(ec + n a b e(e-1)/2)` for every integer `e`.
    pub fn pow(&self, e: &BigInt, n: &BigInt) -> Heis {
        let tri: BigInt = (e * (e - BigInt::one())).div_floor(&BigInt::from(2));
        Heis::new(e * &self.a, e * &self.b, e * &self.c + n * &self.a * &self.b * tri)
    }
}

/// Endomorphism of `H_n` given by the images of `x` and `y`; `z` goes to
/// `z^det` where `det` is the determinant of the linear part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct HeisMap {
    pub x: Heis,
    pub y: Heis,
}

impl HeisMap {
    pub fn identity() -> Self {
        HeisMap {
            x: Heis::new(BigInt::one(), BigInt::zero(), BigInt::zero()),
            y: Heis::new(BigInt::zero(), BigInt::one(), BigInt::zero()),
        }
    }

    /// `psi(x) = x^A11 y^A21 z^k`, `psi(y) = x^A12 y^A22 z^l`.
    pub fn from_matrix(a: &IntMatrix, k: &BigInt, l: &BigInt) -> Self {
        HeisMap {
            x: Heis::new(a.get(0, 0).clone(), a.get(1, 0).clone(), k.clone()),
            y: Heis::new(a.get(0, 1).clone(), a.get(1, 1).clone(), l.clone()),
        }
    }

    pub fn linear(&self) -> IntMatrix {
        IntMatrix::new(
            2,
            2,
            vec![self.x.a.clone(), self.y.a.clone(), self.x.b.clone(), self.y.b.clone()],
        )
        .expect("2x2")
    }

    pub fn det(&self) -> BigInt {
        &self.x.a * &self.y.b - &self.y.a * &self.x.b
    }

    pub fn apply(&self, h: &Heis, n: &BigInt) -> Heis {
        self.x
            .pow(&h.a, n)
            .mul(&self.y.pow(&h.b, n), n)
            .mul(&Heis::z(self.det() * &h.c), n)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &HeisMap, n: &BigInt) -> HeisMap {
        HeisMap { x: self.apply(&other.x, n), y: self.apply(&other.y, n) }
    }

    /// Exact inverse of an automorphism (unit determinant required).
    pub fn inverse(&self, n: &BigInt) -> Result<HeisMap, GroupError> {
        let lin_inv = self.linear().inverse_unimodular()?;
        let det = self.det();
        let mut out = HeisMap {
            x: Heis::new(lin_inv.get(0, 0).clone(), lin_inv.get(1, 0).clone(), BigInt::zero()),
            y: Heis::new(lin_inv.get(0, 1).clone(), lin_inv.get(1, 1).clone(), BigInt::zero()),
        };
        // psi(g z^k) = psi(g) z^(det k); cancel the central defect.
        let cx = self.apply(&out.x, n).c;
        let cy = self.apply(&out.y, n).c;
        out.x.c = -cx * &det;
        out.y.c = -cy * &det;
        Ok(out)
    }

    /// `self^e (h)`, iterating the map for small exponents.
    pub fn apply_power(&self, e: &BigInt, h: &Heis, n: &BigInt) -> Result<Heis, GroupError> {
        match e.to_i64() {
            Some(k) if k.abs() <= 16 => {
                let step = if k < 0 { self.inverse(n)? } else { self.clone() };
                let mut out = h.clone();
                for _ in 0..k.abs() {
                    out = step.apply(&out, n);
                }
                Ok(out)
            }
            _ => Ok(self.pow(e, n)?.apply(h, n)),
        }
    }

    pub fn pow(&self, e: &BigInt, n: &BigInt) -> Result<HeisMap, GroupError> {
        let (base, mut e) = if e.is_negative() { (self.inverse(n)?, -e) } else { (self.clone(), e.clone()) };
        let mut result = HeisMap::identity();
        let mut sq = base;
        while !e.is_zero() {
            if e.is_odd() {
                result = result.compose(&sq, n);
            }
            e >>= 1;
            if !e.is_zero() {
                sq = sq.compose(&sq, n);
            }
        }
        Ok(result)
    }
}

/// Affine description `(A, s)` of the automorphism `z t^l -> A(z) (s t)^l`
/// of `Z^2 x|_B Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct ExtMap {
    pub a: IntMatrix,
    pub s: IntVector,
}

/// Arithmetic in `G = Z^2 x|_B Z`, elements `(z, l)` meaning `z t^l`.
pub(crate) struct ZtGroup<'a> {
    pub b: &'a IntMatrix,
}

impl ZtGroup<'_> {
    pub fn mul(&self, g: &(IntVector, BigInt), h: &(IntVector, BigInt)) -> (IntVector, BigInt) {
        let bw = self.b.pow(&g.1).expect("B unimodular").apply(&h.0).expect("2-vector");
        (add(&g.0, &bw), &g.1 + &h.1)
    }

    pub fn inv(&self, g: &(IntVector, BigInt)) -> (IntVector, BigInt) {
        let z = self.b.pow(&-&g.1).expect("B unimodular").apply(&g.0).expect("2-vector");
        (neg(&z), -&g.1)
    }

    pub fn pow(&self, g: &(IntVector, BigInt), e: &BigInt) -> (IntVector, BigInt) {
        let (base, mut e) = if e.is_negative() { (self.inv(g), -e) } else { (g.clone(), e.clone()) };
        let mut result = (vec![BigInt::zero(); 2], BigInt::zero());
        let mut sq = base;
        while !e.is_zero() {
            if e.is_odd() {
                result = self.mul(&result, &sq);
            }
            e >>= 1;
            if !e.is_zero() {
                sq = self.mul(&sq, &sq);
            }
        }
        result
    }

    pub fn apply(&self, f: &ExtMap, g: &(IntVector, BigInt)) -> (IntVector, BigInt) {
        let az = f.a.apply(&g.0).expect("2-vector");
        let st = self.pow(&(f.s.clone(), BigInt::one()), &g.1);
        self.mul(&(az, BigInt::zero()), &st)
    }
}

impl ExtMap {
    pub fn identity() -> Self {
        ExtMap { a: IntMatrix::identity(2), s: vec![BigInt::zero(); 2] }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ExtMap) -> ExtMap {
        let a1s2 = self.a.apply(&other.s).expect("2-vector");
        ExtMap { a: &self.a * &other.a, s: add(&a1s2, &self.s) }
    }

    pub fn inverse(&self) -> Result<ExtMap, GroupError> {
        let a_inv = self.a.inverse_unimodular()?;
        let s = neg(&a_inv.apply(&self.s).expect("2-vector"));
        Ok(ExtMap { a: a_inv, s })
    }

    pub fn pow(&self, e: &BigInt) -> Result<ExtMap, GroupError> {
        let (base, mut e) = if e.is_negative() { (self.inverse()?, -e) } else { (self.clone(), e.clone()) };
        let mut result = ExtMap::identity();
        let mut sq = base;
        while !e.is_zero() {
            if e.is_odd() {
                result = result.compose(&sq);
            }
            e >>= 1;
            if !e.is_zero() {
                sq = sq.compose(&sq);
            }
        }
        Ok(result)
    }
}

pub(crate) fn add(a: &[BigInt], b: &[BigInt]) -> IntVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn neg(a: &[BigInt]) -> IntVector {
    a.iter().map(|x| -x).collect()
}

/// `A^e`, reducing large exponents modulo the order of `A` when that order is small.
fn matrix_power(a: &IntMatrix, e: &BigInt) -> IntMatrix {
    let e = if e.abs() > BigInt::from(6) {
        match crate::exactlin::finite_order(a) {
            Some(d) => e.mod_floor(&BigInt::from(d)),
            None => e.clone(),
        }
    } else {
        e.clone()
    };
    a.pow(&e).expect("validated unimodular")
}

impl GroupFamily {
    fn check_len(&self, g: &GroupElement) -> Result<(), GroupError> {
        if g.len() != self.rank() {
            return Err(GroupError::SlotMismatch { expected: self.rank(), found: g.len() });
        }
        Ok(())
    }

    fn heis_n(&self) -> BigInt {
        match self {
            GroupFamily::Heisenberg { n } | GroupFamily::HeisenbergTimesZ { n } | GroupFamily::HnSemidirectZ { n, .. } => {
                BigInt::from(*n)
            }
            _ => BigInt::zero(),
        }
    }

    pub(crate) fn hn_psi(&self) -> Option<HeisMap> {
        match self {
            GroupFamily::HnSemidirectZ { a, k, l, .. } => {
                Some(HeisMap::from_matrix(a, &BigInt::from(*k), &BigInt::from(*l)))
            }
            _ => None,
        }
    }

    pub(crate) fn ext_psi(&self) -> Option<ExtMap> {
        match self {
            GroupFamily::Z2MinusIExt { a, n0, .. } => Some(ExtMap { a: a.clone(), s: n0.clone() }),
            _ => None,
        }
    }

    fn split_ext(g: &GroupElement) -> ((IntVector, BigInt), BigInt) {
        let e = &g.exponents;
        ((vec![e[0].clone(), e[1].clone()], e[2].clone()), e[3].clone())
    }

    fn join_ext(g: (IntVector, BigInt), p: BigInt) -> GroupElement {
        let (z, l) = g;
        GroupElement::new(vec![z[0].clone(), z[1].clone(), l, p])
    }

    /// Product `g * h` in normal form.
    pub fn multiply(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check_len(g)?;
        self.check_len(h)?;
        let (ge, he) = (&g.exponents, &h.exponents);
        Ok(match self {
            GroupFamily::FreeAbelian { .. } => GroupElement::new(add(ge, he)),
            GroupFamily::Heisenberg { .. } => {
                GroupElement::new(Heis::from_slice(ge).mul(&Heis::from_slice(he), &self.heis_n()).into_vec())
            }
            GroupFamily::HeisenbergTimesZ { .. } => {
                let mut v = Heis::from_slice(ge).mul(&Heis::from_slice(he), &self.heis_n()).into_vec();
                v.push(&ge[3] + &he[3]);
                GroupElement::new(v)
            }
            GroupFamily::ZnSemidirectZ { a } => {
                let n = a.rows();
                // v t^k w t^l = (v + A^-k w) t^(k+l)
                let w = matrix_power(a, &-&ge[n]).apply(&he[..n])?;
                let mut v = add(&ge[..n], &w);
                v.push(&ge[n] + &he[n]);
                GroupElement::new(v)
            }
            GroupFamily::Z2MinusIExt { .. } => {
                let b = self.ext_b().expect("extension");
                let grp = ZtGroup { b: &b };
                let (g0, p) = Self::split_ext(g);
                let (h0, q) = Self::split_ext(h);
                let psi_p = self.ext_psi().expect("extension").pow(&p)?;
                let prod = grp.mul(&g0, &grp.apply(&psi_p, &h0));
                Self::join_ext(prod, &p + &q)
            }
            GroupFamily::HnSemidirectZ { .. } => {
                let n = self.heis_n();
                let moved = self.hn_psi().expect("hn").apply_power(&ge[3], &Heis::from_slice(&he[..3]), &n)?;
                let mut v = Heis::from_slice(&ge[..3]).mul(&moved, &n).into_vec();
                v.push(&ge[3] + &he[3]);
                GroupElement::new(v)
            }
        })
    }

    pub fn inverse(&self, g: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check_len(g)?;
        let ge = &g.exponents;
        Ok(match self {
            GroupFamily::FreeAbelian { .. } => GroupElement::new(neg(ge)),
            GroupFamily::Heisenberg { .. } => GroupElement::new(Heis::from_slice(ge).inv(&self.heis_n()).into_vec()),
            GroupFamily::HeisenbergTimesZ { .. } => {
                let mut v = Heis::from_slice(ge).inv(&self.heis_n()).into_vec();
                v.push(-&ge[3]);
                GroupElement::new(v)
            }
            GroupFamily::ZnSemidirectZ { a } => {
                let n = a.rows();
                let mut v = neg(&matrix_power(a, &ge[n]).apply(&ge[..n])?);
                v.push(-&ge[n]);
                GroupElement::new(v)
            }
            GroupFamily::Z2MinusIExt { .. } => {
                let b = self.ext_b().expect("extension");
                let grp = ZtGroup { b: &b };
                let (g0, p) = Self::split_ext(g);
                let psi = self.ext_psi().expect("extension").pow(&-&p)?;
                Self::join_ext(grp.apply(&psi, &grp.inv(&g0)), -p)
            }
            GroupFamily::HnSemidirectZ { .. } => {
                let n = self.heis_n();
                let h_inv = Heis::from_slice(&ge[..3]).inv(&n);
                let mut v = self.hn_psi().expect("hn").apply_power(&-&ge[3], &h_inv, &n)?.into_vec();
                v.push(-&ge[3]);
                GroupElement::new(v)
            }
        })
    }

    pub fn pow(&self, g: &GroupElement, e: &BigInt) -> Result<GroupElement, GroupError> {
        let (base, mut e) = if e.is_negative() { (self.inverse(g)?, -e) } else { (g.clone(), e.clone()) };
        let mut result = self.identity();
        let mut sq = base;
        while !e.is_zero() {
            if e.is_odd() {
                result = self.multiply(&result, &sq)?;
            }
            e >>= 1;
            if !e.is_zero() {
                sq = self.multiply(&sq, &sq)?;
            }
        }
        Ok(result)
    }

    /// Product of a sequence of elements, left to right.
    pub fn product<'a>(&self, factors: impl IntoIterator<Item = &'a GroupElement>) -> Result<GroupElement, GroupError> {
        let mut acc = self.identity();
        for f in factors {
            acc = self.multiply(&acc, f)?;
        }
        Ok(acc)
    }

    /// `g^-1 h g`.
    pub fn conjugate(&self, h: &GroupElement, g: &GroupElement) -> Result<GroupElement, GroupError> {
        let gi = self.inverse(g)?;
        self.product([&gi, h, g])
    }
}
