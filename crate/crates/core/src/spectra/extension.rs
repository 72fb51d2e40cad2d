//! Extensions of `Z^2` by `Z^2`: `(Z^2 x|_B <t>) x|_psi <u>` with
//! `u z u^-1 = A z`, `t z t^-1 = B z` and `u t u^-1 t^-1 = n0`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::local::local_solutions;
use super::{
    classify_z3_semidirect, done, precondition, system2_witnesses, Classification, SpectraError, SpectrumDescriptor,
};
use crate::exactlin::{
    eigenvalue_profile, finite_order, lattice_membership, smith_normal_form, EigenKind, IntMatrix, IntVector,
};
use crate::groups::{GroupElement, GroupFamily};

/// A change of quotient generators: `x' = x^s00 y^s10`, `y' = x^s01 y^s11`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Substitution {
    pub matrix: IntMatrix,
    pub description: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionPresentation {
    /// Action of `x` (the generator `u`).
    pub a: IntMatrix,
    /// Action of `y` (the generator `t`).
    pub b: IntMatrix,
    #[serde(with = "crate::json::big_vec")]
    pub n0: IntVector,
    pub change_log: Vec<Substitution>,
}

/// `(A^s00 B^s10, A^s01 B^s11)` for commuting `A`, `B`.
pub fn substitute_actions(a: &IntMatrix, b: &IntMatrix, s: &IntMatrix) -> Result<(IntMatrix, IntMatrix), SpectraError> {
    let act = |e: &BigInt, f: &BigInt| -> Result<IntMatrix, SpectraError> { Ok(&a.pow(e)? * &b.pow(f)?) };
    Ok((act(s.get(0, 0), s.get(1, 0))?, act(s.get(0, 1), s.get(1, 1))?))
}

impl ExtensionPresentation {
    pub fn new(a: IntMatrix, b: IntMatrix, n0: IntVector) -> Result<Self, SpectraError> {
        for (name, m) in [("A", &a), ("B", &b)] {
            if m.rows() != 2 || m.cols() != 2 || !m.is_unimodular() {
                return precondition(format!("{} must be a unimodular 2x2 matrix", name));
            }
        }
        if n0.len() != 2 {
            return precondition("n0 must have two components");
        }
        if &a * &b != &b * &a {
            return precondition("A and B must commute");
        }
        Ok(ExtensionPresentation { a, b, n0, change_log: Vec::new() })
    }

    fn family(&self) -> GroupFamily {
        GroupFamily::Z2MinusIExt { a: self.a.clone(), n0: self.n0.clone(), b: Some(self.b.clone()) }
    }

    /// Rewrites the presentation in the generators given by `s`.
    pub fn substitute(&self, s: &IntMatrix, description: String) -> Result<Self, SpectraError> {
        if s.rows() != 2 || s.cols() != 2 || !s.is_unimodular() {
            return precondition("substitution must be unimodular");
        }
        let (a, b) = substitute_actions(&self.a, &self.b, s)?;
        let f = self.family();
        let word = |col: usize| GroupElement::new(vec![BigInt::zero(), BigInt::zero(), s.get(1, col).clone(), s.get(0, col).clone()]);
        let (u, t) = (word(0), word(1));
        let comm = f.product([&u, &t, &f.inverse(&u)?, &f.inverse(&t)?])?;
        debug_assert!(comm.exponents[2].is_zero() && comm.exponents[3].is_zero());
        let mut log = self.change_log.clone();
        log.push(Substitution { matrix: s.clone(), description });
        Ok(ExtensionPresentation { a, b, n0: comm.exponents[..2].to_vec(), change_log: log })
    }

    /// Applies the recorded substitutions to `(A, B)`.
    pub fn replay(a: &IntMatrix, b: &IntMatrix, log: &[Substitution]) -> Result<(IntMatrix, IntMatrix), SpectraError> {
        let (mut a, mut b) = (a.clone(), b.clone());
        for s in log {
            (a, b) = substitute_actions(&a, &b, &s.matrix)?;
        }
        Ok((a, b))
    }
}

fn subst(rows: [[i64; 2]; 2]) -> IntMatrix {
    IntMatrix::from_rows(&rows)
}

fn is_pm_identity(m: &IntMatrix) -> bool {
    m.is_scalar(1) || m.is_scalar(-1)
}

/// `(e, f)` primitive with `A^e B^f = +-I`, when the image of `(e, f) -> A^e B^f`
/// is infinite.
fn torsion_direction(a: &IntMatrix, b: &IntMatrix) -> Result<(BigInt, BigInt), SpectraError> {
    let (fa, fb) = (finite_order(a).is_some(), finite_order(b).is_some());
    if fb {
        return Ok((BigInt::zero(), BigInt::one()));
    }
    if fa {
        return Ok((BigInt::one(), BigInt::zero()));
    }
    let tr = a.trace()?;
    let (e, f) = if tr.abs() == BigInt::from(2) && a.det()?.is_one() {
        parabolic_direction(a, b)?
    } else {
        hyperbolic_direction(a, b)?
    };
    let check = &a.pow(&e)? * &b.pow(&f)?;
    if !is_pm_identity(&check) {
        return precondition("could not find a generator acting with finite order");
    }
    Ok((e, f))
}

/// For `X = eps (I + s N)` with a common nilpotent `N`, returns `s`.
fn parabolic_directions(ms: &[&IntMatrix]) -> Result<Vec<BigInt>, SpectraError> {
    let i = IntMatrix::identity(2);
    let mut parts = Vec::new();
    for m in ms {
        if is_pm_identity(m) {
            parts.push(None);
            continue;
        }
        let tr = m.trace()?;
        if tr.abs() != BigInt::from(2) || !m.det()?.is_one() {
            return precondition("commuting matrices are not both parabolic");
        }
        let eps = &tr / BigInt::from(2);
        parts.push(Some(&m.scale(&eps) - &i));
    }
    let n0 = parts.iter().flatten().next().cloned().expect("one matrix has infinite order");
    let g = n0.entries().iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let n0 = IntMatrix::new(2, 2, n0.entries().iter().map(|x| x / &g).collect())?;
    let (pi, pj) = (0..4).map(|k| (k / 2, k % 2)).find(|&(i, j)| !n0.get(i, j).is_zero()).expect("nonzero");
    parts
        .into_iter()
        .map(|p| match p {
            None => Ok(BigInt::zero()),
            Some(k) => {
                let s = k.get(pi, pj) / n0.get(pi, pj);
                if n0.scale(&s) != k {
                    return precondition("commuting matrices are not both parabolic");
                }
                Ok(s)
            }
        })
        .collect()
}

fn parabolic_direction(a: &IntMatrix, b: &IntMatrix) -> Result<(BigInt, BigInt), SpectraError> {
    let s = parabolic_directions(&[a, b])?;
    let g = s[0].gcd(&s[1]);
    Ok((&s[1] / &g, -(&s[0] / &g)))
}

/// For hyperbolic commuting `A`, `B`: the logarithms of their eigenvalues on a
/// common eigenvector are commensurable; the ratio is recovered by continued
/// fractions and then verified exactly by the caller.
fn hyperbolic_direction(a: &IntMatrix, b: &IntMatrix) -> Result<(BigInt, BigInt), SpectraError> {
    let f = |x: &BigInt| x.to_f64().unwrap_or(f64::NAN);
    let (p, q, r) = (f(a.get(0, 0)), f(a.get(0, 1)), f(a.get(1, 0)));
    let s = f(a.get(1, 1));
    let tr = p + s;
    let det = p * s - q * r;
    let disc = (tr * tr - 4.0 * det).sqrt();
    let lambda = if tr >= 0.0 { (tr + disc) / 2.0 } else { (tr - disc) / 2.0 };
    let v = if q.abs() > 0.0 { [q, lambda - p] } else { [lambda - s, r] };
    let bv = [f(b.get(0, 0)) * v[0] + f(b.get(0, 1)) * v[1], f(b.get(1, 0)) * v[0] + f(b.get(1, 1)) * v[1]];
    let k = if v[0].abs() > v[1].abs() { 0 } else { 1 };
    let mu = bv[k] / v[k];
    let ratio = -mu.abs().ln() / lambda.abs().ln();
    if !ratio.is_finite() {
        return precondition("could not find a generator acting with finite order");
    }
    // continued fraction of ratio = e / f
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let mut x = ratio;
    for _ in 0..40 {
        let ai = x.floor();
        let (h2, k2) = (ai as i64 * h1 + h0, ai as i64 * k1 + k0);
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let approx = h1 as f64 / k1 as f64;
        if (approx - ratio).abs() < 1e-9 * ratio.abs().max(1.0) || k1.abs() > 1 << 20 {
            break;
        }
        let frac = x - ai;
        if frac.abs() < 1e-12 {
            break;
        }
        x = 1.0 / frac;
    }
    Ok((BigInt::from(h1), BigInt::from(k1)))
}

/// Chooses quotient generators so that `B = I`, or `B = -I` with `A` of
/// infinite order, or `B = -I` with `A != +-I` of order 2.
pub fn canonicalize_z2_by_z2(pres: &ExtensionPresentation) -> Result<ExtensionPresentation, SpectraError> {
    if &pres.a * &pres.b != &pres.b * &pres.a {
        return precondition("A and B must commute");
    }
    let mut cur = pres.clone();
    if cur.b.is_identity() {
        return Ok(cur);
    }
    let (fa, fb) = (finite_order(&cur.a), finite_order(&cur.b));
    if fa.is_some() && fb.is_some() {
        if cur.a.is_identity() {
            return cur.substitute(&subst([[0, 1], [1, 0]]), "swap x and y".into());
        }
        if cur.a.is_scalar(-1) && cur.b.is_scalar(-1) {
            return cur.substitute(&subst([[1, 1], [0, 1]]), "y -> x y".into());
        }
        if is_pm_identity(&cur.a) {
            cur = cur.substitute(&subst([[0, 1], [1, 0]]), "swap x and y".into())?;
        }
        let order = finite_order(&cur.a).expect("finite") as i64;
        let k = (0..order)
            .find(|&k| {
                let p = cur.a.pow_i64(k).expect("unimodular");
                p == cur.b || -&p == cur.b
            })
            .ok_or_else(|| SpectraError::Precondition("B is not +-A^k".into()))?;
        if k != 0 {
            cur = cur.substitute(&subst([[1, -k], [0, 1]]), format!("y -> x^{} y", -k))?;
        }
        if cur.b.is_identity() || order == 2 {
            return Ok(cur);
        }
        let mut order = order;
        if order == 3 {
            cur = cur.substitute(&subst([[1, 0], [1, 1]]), "x -> x y".into())?;
            order = 6;
        }
        let half = order / 2;
        return cur.substitute(&subst([[1, half], [0, 1]]), format!("y -> x^{} y", half));
    }

    let (e, f) = torsion_direction(&cur.a, &cur.b)?;
    let (e, f) = if f.is_negative() || (f.is_zero() && e.is_negative()) { (-e, -f) } else { (e, f) };
    if e.is_zero() && f.is_one() {
        return Ok(cur);
    }
    // x' = x^g y^h with g f - h e = 1
    let ext = e.extended_gcd(&f);
    debug_assert!(ext.gcd.is_one());
    let (g, h) = (ext.y.clone(), -ext.x.clone());
    let s = IntMatrix::new(2, 2, vec![g.clone(), e.clone(), h.clone(), f.clone()])?;
    cur.substitute(&s, format!("x -> x^{} y^{}, y -> x^{} y^{}", g, h, e, f))
}

/// Spectrum of an arbitrary presentation, after canonicalization.
pub(crate) fn classify_presentation(pres: &ExtensionPresentation, bound: u64) -> Result<Classification, SpectraError> {
    let canon = canonicalize_z2_by_z2(pres)?;
    let result = if canon.b.is_identity() {
        let mut m = canon.a.block_diag(&IntMatrix::identity(1));
        m.set(0, 2, canon.n0[0].clone());
        m.set(1, 2, canon.n0[1].clone());
        classify_z3_semidirect(&m, bound)?.cite("Z3-by-Z")
    } else {
        classify_z2_minus_i_ext(&canon.a, &canon.n0, bound)?
    };
    Ok(result.cite("Lemma-gener"))
}

fn exponent_of_cokernel(g: &IntMatrix) -> Option<BigInt> {
    let snf = smith_normal_form(g);
    if snf.rank() < g.rows() {
        return None;
    }
    snf.elementary_divisors.iter().take(g.rows()).map(|d| d.abs()).max()
}

/// Spectrum of `(Z^2 x|_{-I} Z) x|_psi Z` with `psi|_{Z^2} = A`, `psi(t) = n0 t`.
pub fn classify_z2_minus_i_ext(a: &IntMatrix, n0: &[BigInt], bound: u64) -> Result<Classification, SpectraError> {
    use SpectrumDescriptor::*;
    if a.rows() != 2 || a.cols() != 2 || n0.len() != 2 {
        return precondition("expected a 2x2 matrix and n0 of length 2");
    }
    if bound < 1 {
        return Err(SpectraError::BadBound);
    }
    if is_pm_identity(a) {
        return precondition("A = +-I is outside this case");
    }
    let profile = eigenvalue_profile(a)?;
    match profile.finite_order {
        Some(2) => return done(RInfinity, &["Prop-Aorder2"]),
        Some(_) => return precondition("A must have infinite order or order 2"),
        None => {}
    }
    match profile.kind {
        EigenKind::RepeatedOne | EigenKind::RepeatedMinusOne => return done(RInfinity, &["Lemma-formule2", "Prop-repeated-pm1"]),
        EigenKind::RealIrrationalPair if profile.det.is_negative() => return done(RInfinity, &["Lemma-formule2", "Prop-realeig", "det-minus-one"]),
        EigenKind::RealIrrationalPair => {}
        _ => unreachable!("infinite order 2x2 matrices are parabolic or hyperbolic"),
    }

    let i = IntMatrix::identity(2);
    let gens = a.scale(&BigInt::from(2)).hstack(&(&i - a))?;
    let lifts = |m: &IntMatrix| -> Result<bool, SpectraError> {
        let target = (&i + &(a * m)).apply(n0)?;
        Ok(lattice_membership(&target, &gens)?.is_some())
    };

    let e = exponent_of_cokernel(&gens).expect("2A has full rank");
    let modulus = (BigInt::from(8) * &e).to_i64().unwrap_or(i64::MAX);
    if let Some(sols) = local_solutions(a, modulus) {
        if sols.is_empty() {
            return done(RInfinity, &["Lemma-formule2", "Prop-realeig", "system2-local-obstruction"]);
        }
        let em = e.to_i64().expect("small");
        let mut classes: Vec<[i64; 3]> = sols.iter().map(|s| s.map(|x| x.rem_euclid(em))).collect();
        classes.sort_unstable();
        classes.dedup();
        let mut any = false;
        for [m, n, p] in classes {
            if lifts(&IntMatrix::from_i64(2, 2, &[m, n, p, -m])?)? {
                any = true;
                break;
            }
        }
        if !any {
            return done(RInfinity, &["Lemma-formule2", "Prop-realeig", "Eq-voorw", "parity-obstruction"]);
        }
    }

    for w in system2_witnesses(a, bound)? {
        let m = w.matrix();
        let am = a * &m;
        for cand in [m.clone(), -&m, am.clone(), -&am] {
            if lifts(&cand)? {
                return done(SpectrumDescriptor::finite(&[8]), &["Lemma-formule2", "Prop-realeig", "Eq-voorw", "voorw-solution"]);
            }
        }
    }
    done(
        SpectrumDescriptor::undecided(RInfinity, SpectrumDescriptor::finite(&[8]), bound),
        &["Lemma-formule2", "Prop-realeig", "bounded-search"],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::ivec;
    use SpectrumDescriptor::*;

    fn pres(a: [[i64; 2]; 2], b: [[i64; 2]; 2], n0: [i64; 2]) -> ExtensionPresentation {
        ExtensionPresentation::new(IntMatrix::from_rows(&a), IntMatrix::from_rows(&b), ivec(&n0)).unwrap()
    }

    fn check_replay(p: &ExtensionPresentation, c: &ExtensionPresentation) {
        let (a, b) = ExtensionPresentation::replay(&p.a, &p.b, &c.change_log).unwrap();
        assert_eq!((a, b), (c.a.clone(), c.b.clone()));
        assert!(c.change_log.iter().all(|s| s.matrix.is_unimodular()));
    }

    fn canonical(c: &ExtensionPresentation) -> bool {
        c.b.is_identity()
            || (c.b.is_scalar(-1) && finite_order(&c.a).is_none())
            || (c.b.is_scalar(-1) && !is_pm_identity(&c.a) && finite_order(&c.a) == Some(2))
    }

    #[test]
    fn minus_identity_pair() {
        let p = pres([[-1, 0], [0, -1]], [[-1, 0], [0, -1]], [0, 0]);
        let c = canonicalize_z2_by_z2(&p).unwrap();
        assert!(c.b.is_identity());
        assert_eq!(c.change_log.len(), 1);
        assert_eq!(c.change_log[0].description, "y -> x y");
        check_replay(&p, &c);
    }

    #[test]
    fn order_four_moves() {
        let a = [[0, -1], [1, 0]];
        let p = pres(a, [[0, -1], [1, 0]], [1, 0]);
        let c = canonicalize_z2_by_z2(&p).unwrap();
        assert!(c.b.is_identity());
        check_replay(&p, &c);
        let a3 = IntMatrix::from_rows(&a).pow_i64(3).unwrap();
        let p = ExtensionPresentation::new(IntMatrix::from_rows(&a), -&a3, ivec(&[0, 1])).unwrap();
        let c = canonicalize_z2_by_z2(&p).unwrap();
        assert!(c.b.is_identity());
        check_replay(&p, &c);
    }

    #[test]
    fn order_three_goes_through_six() {
        let p = pres([[0, -1], [1, -1]], [[-1, 0], [0, -1]], [0, 0]);
        let c = canonicalize_z2_by_z2(&p).unwrap();
        assert!(c.b.is_identity());
        check_replay(&p, &c);
    }

    #[test]
    fn already_canonical() {
        let p = pres([[2, 3], [3, 5]], [[1, 0], [0, 1]], [1, 1]);
        let c = canonicalize_z2_by_z2(&p).unwrap();
        assert_eq!(c, p);
        let p = pres([[2, 3], [3, 5]], [[-1, 0], [0, -1]], [1, 1]);
        assert_eq!(canonicalize_z2_by_z2(&p).unwrap(), p);
    }

    #[test]
    fn infinite_image() {
        for (a, b) in [
            ([[1, 2], [0, 1]], [[-1, -3], [0, -1]]),
            ([[2, 1], [1, 1]], [[-1, -1], [-1, 0]]),
            ([[2, 1], [1, 1]], [[-2, -1], [-1, -1]]),
            ([[1, 0], [4, 1]], [[1, 0], [-6, 1]]),
        ] {
            let p = pres(a, b, [1, 0]);
            let c = canonicalize_z2_by_z2(&p).unwrap();
            assert!(canonical(&c), "{:?} {:?} -> {:?} {:?}", a, b, c.a, c.b);
            check_replay(&p, &c);
        }
    }

    #[test]
    fn rejects_non_commuting() {
        let p = ExtensionPresentation {
            a: IntMatrix::from_rows(&[[1, 1], [0, 1]]),
            b: IntMatrix::from_rows(&[[1, 0], [1, 1]]),
            n0: ivec(&[0, 0]),
            change_log: vec![],
        };
        assert!(canonicalize_z2_by_z2(&p).is_err());
    }

    fn ext(a: [[i64; 2]; 2], n0: [i64; 2]) -> SpectrumDescriptor {
        classify_z2_minus_i_ext(&IntMatrix::from_rows(&a), &ivec(&n0), 200).unwrap().spectrum
    }

    #[test]
    fn double_extension_examples() {
        assert_eq!(ext([[2, 3], [3, 5]], [1, 0]), SpectrumDescriptor::finite(&[8]));
        assert_eq!(ext([[5, 2], [2, 1]], [1, 0]), RInfinity);
        assert_eq!(ext([[5, 2], [2, 1]], [1, 1]), SpectrumDescriptor::finite(&[8]));
        assert_eq!(ext([[1, 1], [0, -1]], [0, 0]), RInfinity);
        assert_eq!(ext([[1, 2], [0, 1]], [3, 0]), RInfinity);
        assert_eq!(ext([[1, 1], [1, 0]], [0, 0]), RInfinity);
        assert!(classify_z2_minus_i_ext(&IntMatrix::scalar(2, -1), &ivec(&[0, 0]), 10).is_err());
        assert!(classify_z2_minus_i_ext(&IntMatrix::from_rows(&[[0, -1], [1, 0]]), &ivec(&[0, 0]), 10).is_err());
    }
}
