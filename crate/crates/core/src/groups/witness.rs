//! Explicit automorphism families realizing every value of the spectra.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{AutomorphismSpec, GroupElement, GroupError, GroupFamily};
use crate::exactlin::{lattice_membership, IntMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WitnessId {
    /// `x^a y^b z^c (u^d) -> y^a (x y^m)^b z^-c (u^-d)` on `H_n` and `H_n x Z`.
    PhiM,
    /// The companion-type matrix `M_m` on `Z^n x|_{-I} Z`, inverting `t`.
    MM,
    /// The families on the canonical order-2 and order-3 forms in `GL_3(Z)`.
    PhiAlpha,
    /// Lifts of trace-`r` matrices to `H_n x|_psi Z` with the `-I` action.
    PsiR,
}

impl WitnessId {
    pub fn name(self) -> &'static str {
        match self {
            WitnessId::PhiM => "phi_m",
            WitnessId::MM => "M_m",
            WitnessId::PhiAlpha => "phi_alpha",
            WitnessId::PsiR => "psi_r",
        }
    }

    pub const ALL: [WitnessId; 4] = [WitnessId::PhiM, WitnessId::MM, WitnessId::PhiAlpha, WitnessId::PsiR];
}

impl fmt::Display for WitnessId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for WitnessId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        WitnessId::ALL
            .into_iter()
            .find(|w| w.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown witness {:?}", s))
    }
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn elem(v: &[BigInt]) -> GroupElement {
    GroupElement::new(v.to_vec())
}

/// Canonical order-2 form `[[1,0,d],[0,-1,0],[0,0,-1]]` or order-3 form
/// `[[1,0,d],[0,0,-1],[0,1,-1]]`; returns `(order, d)`.
pub(crate) fn canonical_form(a: &IntMatrix) -> Option<(u32, i64)> {
    for delta in [0, 1] {
        if a == &IntMatrix::from_rows(&[[1, 0, delta], [0, -1, 0], [0, 0, -1]]) {
            return Some((2, delta));
        }
        if a == &IntMatrix::from_rows(&[[1, 0, delta], [0, 0, -1], [0, 1, -1]]) {
            return Some((3, delta));
        }
    }
    None
}

/// The verified witness automorphism `name` with parameter `param` on `family`.
pub fn witness(family: &GroupFamily, id: WitnessId, param: u64) -> Result<AutomorphismSpec, GroupError> {
    if param == 0 {
        return Err(GroupError::BadParameter);
    }
    family.validate()?;
    let p = BigInt::from(param);
    let unknown = || GroupError::UnknownWitness { name: id.name().into(), family: family.tag().into() };
    let (o, l) = (BigInt::zero(), BigInt::one());
    let images: Vec<GroupElement> = match (id, family) {
        (WitnessId::PhiM, GroupFamily::Heisenberg { .. }) => {
            vec![elem(&[o.clone(), l.clone(), o.clone()]), elem(&[l.clone(), p, o.clone()]), elem(&[o.clone(), o, -l])]
        }
        (WitnessId::PhiM, GroupFamily::HeisenbergTimesZ { .. }) => vec![
            elem(&[o.clone(), l.clone(), o.clone(), o.clone()]),
            elem(&[l.clone(), p, o.clone(), o.clone()]),
            elem(&[o.clone(), o.clone(), -&l, o.clone()]),
            elem(&[o.clone(), o.clone(), o, -l]),
        ],
        (WitnessId::MM, GroupFamily::ZnSemidirectZ { a }) if a.is_scalar(-1) && a.rows() >= 2 => {
            let n = a.rows();
            let mut images = Vec::with_capacity(n + 1);
            for j in 0..n {
                let mut v = vec![BigInt::zero(); n + 1];
                if j + 1 < n {
                    v[j + 1] = BigInt::one();
                } else {
                    v[0] = BigInt::one();
                    v[n - 1] = p.clone();
                }
                images.push(GroupElement::new(v));
            }
            let mut t = vec![BigInt::zero(); n + 1];
            t[n] = -BigInt::one();
            images.push(GroupElement::new(t));
            images
        }
        (WitnessId::PhiAlpha, GroupFamily::ZnSemidirectZ { a }) => {
            let (order, delta) = canonical_form(a).ok_or_else(unknown)?;
            let al = p;
            let d = big(delta);
            if order == 2 && delta == 1 {
                vec![
                    elem(&[1 - big(2) * &al, o.clone(), o.clone(), big(4) * &al]),
                    elem(&[big(-1), big(-1), big(2), o.clone()]),
                    elem(&[1 - &al, l.clone(), big(-1), big(2) * &al]),
                    elem(&[o.clone(), o.clone(), l, big(-1)]),
                ]
            } else if order == 2 {
                vec![
                    elem(&[1 - big(2) * &al, o.clone(), o.clone(), big(2)]),
                    elem(&[o.clone(), o.clone(), l.clone(), o.clone()]),
                    elem(&[o.clone(), l.clone(), l, o.clone()]),
                    elem(&[al, o.clone(), o, big(-1)]),
                ]
            } else {
                let one_minus_d = 1 - &d;
                let tx = big(3) * (big(3) * &d * &al + &one_minus_d);
                vec![
                    elem(&[big(3) * &al - 1, o.clone(), o.clone(), tx]),
                    elem(&[&d * &al, big(-1), o.clone(), big(3) * &d * &al]),
                    elem(&[&d * &al, o.clone(), big(-1), big(3) * &d * &al]),
                    elem(&[one_minus_d * &al, l.clone(), o, l]),
                ]
            }
        }
        (WitnessId::PsiR, GroupFamily::HnSemidirectZ { n, a, k, l }) if a.is_scalar(-1) => {
            return psi_r(family, *n, *k, *l, param);
        }
        _ => return Err(unknown()),
    };
    AutomorphismSpec::new(family.clone(), images)?.into_verified()
}

/// Whether the `-I` twist data forces even traces (`n` even and `k` or `l` odd).
pub(crate) fn hn_needs_even_trace(n: u64, k: i64, l: i64) -> bool {
    n % 2 == 0 && (k % 2 != 0 || l % 2 != 0)
}

fn small_unimodular() -> Vec<IntMatrix> {
    let mut out = Vec::new();
    for a in -2..=2i64 {
        for b in -2..=2i64 {
            for c in -2..=2i64 {
                for d in -2..=2i64 {
                    if (a * d - b * c).abs() == 1 {
                        out.push(IntMatrix::from_rows(&[[a, b], [c, d]]));
                    }
                }
            }
        }
    }
    // identity first, then by entry size
    out.sort_by_key(|m| {
        let s: i64 = m.to_i64_rows().unwrap().iter().flatten().map(|x| x.abs()).sum();
        (!m.is_identity(), s)
    });
    out
}

/// An automorphism of `H_n x|_psi Z` (`psi` the `-I` action twisted by `z^k`, `z^l`)
/// inducing a det `-1` matrix of trace `T` on `H_n / Z(H_n)`, so that `R = 4T`.
/// `T = r`, doubled when the twist forces even traces.
fn psi_r(family: &GroupFamily, n: u64, k: i64, l: i64, r: u64) -> Result<AutomorphismSpec, GroupError> {
    let even = hn_needs_even_trace(n, k, l);
    let t = if even { 2 * r as i64 } else { r as i64 };
    let mut seeds = vec![IntMatrix::from_rows(&[[t, 1], [1, 0]])];
    if t % 2 == 0 {
        seeds.push(IntMatrix::from_rows(&[[t + 1, t / 2], [-2, -1]]));
    }
    for p in small_unimodular() {
        let p_inv = p.inverse_unimodular()?;
        for m0 in &seeds {
            let m = &(&p * m0) * &p_inv;
            if let Some(spec) = lift_minus_i(family, &m)? {
                return Ok(spec);
            }
        }
    }
    Err(GroupError::NoFormulaRoute(format!("no lift of a trace-{} matrix found", t)))
}

/// Solves for the central parameters `(m, p, e, f)` in
/// `x -> x^a y^c z^m`, `y -> x^b y^d z^p`, `z -> z^-1`, `t -> x^e y^f t^-1`.
fn lift_minus_i(family: &GroupFamily, m: &IntMatrix) -> Result<Option<AutomorphismSpec>, GroupError> {
    let build = |params: &[BigInt]| -> Result<AutomorphismSpec, GroupError> {
        let images = vec![
            elem(&[m.get(0, 0).clone(), m.get(1, 0).clone(), params[0].clone(), BigInt::zero()]),
            elem(&[m.get(0, 1).clone(), m.get(1, 1).clone(), params[1].clone(), BigInt::zero()]),
            GroupElement::from_i64(&[0, 0, -1, 0]),
            elem(&[params[2].clone(), params[3].clone(), BigInt::zero(), -BigInt::one()]),
        ];
        AutomorphismSpec::new(family.clone(), images)
    };
    // the only relations that can fail are the t-conjugations, and only in z
    let residual = |params: &[BigInt]| -> Result<Vec<BigInt>, GroupError> {
        let spec = build(params)?;
        let f = family;
        let t = f.generator(3);
        let t_inv = f.inverse(&t)?;
        let pt = &spec.images()[3];
        let pt_inv = f.inverse(pt)?;
        let mut out = Vec::new();
        for g in [0usize, 1] {
            let gen = f.generator(g);
            for (lw, rw, li, ri) in [(&t_inv, &t, &pt_inv, pt), (&t, &t_inv, pt, &pt_inv)] {
                let word = f.product([lw, &gen, rw])?;
                let lhs = f.product([li, &spec.images()[g], ri])?;
                let rhs = spec.apply(&word)?;
                out.push(&lhs.exponents[2] - &rhs.exponents[2]);
            }
        }
        Ok(out)
    };
    let zero = vec![BigInt::zero(); 4];
    let r0 = residual(&zero)?;
    let mut cols = Vec::with_capacity(4);
    for i in 0..4 {
        let mut e = zero.clone();
        e[i] = BigInt::one();
        let ri = residual(&e)?;
        cols.push(ri.iter().zip(&r0).map(|(a, b)| a - b).collect());
    }
    let g = IntMatrix::from_columns(&cols)?;
    let target: Vec<BigInt> = r0.iter().map(|x| -x).collect();
    let Some(params) = lattice_membership(&target, &g)? else {
        return Ok(None);
    };
    match build(&params)?.into_verified() {
        Ok(spec) => Ok(Some(spec)),
        Err(_) => Ok(None),
    }
}
