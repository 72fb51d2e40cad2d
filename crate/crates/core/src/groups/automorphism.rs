use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::{Map, Value};

use super::{GroupElement, GroupError, GroupFamily};
use crate::exactlin::{finite_order, IntMatrix, IntVector};

/// An endomorphism given by the images of the generators, in slot order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomorphismSpec {
    family: GroupFamily,
    images: Vec<GroupElement>,
    verified: bool,
}

/// Outcome of [`AutomorphismSpec::verify_automorphism`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub ok: bool,
    /// The first relation or bijectivity condition that fails.
    pub failure: Option<String>,
}

impl VerificationReport {
    fn pass() -> Self {
        VerificationReport { ok: true, failure: None }
    }

    fn fail(why: impl Into<String>) -> Self {
        VerificationReport { ok: false, failure: Some(why.into()) }
    }
}

/// Matrix blocks read off from the generator images. Columns are images.
///
/// * `fitting_matrix`: the action on the abelian layer the formulas use
///   (`Z^n`, `Z^2`, or `H_n / Z(H_n)`).
/// * `central_matrix`: the action on the center where that is a separate layer.
/// * `quotient_matrix`: the action on the top quotient.
/// * `translation`: the `Z^n` part `w` of `phi(t) = w t^eps`.
/// * `lattice_matrix`: for `Z^n x|_A Z` with `A` of finite order `d`, the
///   action on the translation lattice with basis `(t^d, e_1, ..., e_n)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DerivedBlocks {
    pub fitting_matrix: Option<IntMatrix>,
    pub central_matrix: Option<IntMatrix>,
    pub quotient_matrix: Option<IntMatrix>,
    #[serde(serialize_with = "ser_opt_vec")]
    pub translation: Option<IntVector>,
    pub lattice_matrix: Option<IntMatrix>,
}

fn ser_opt_vec<S: serde::Serializer>(v: &Option<IntVector>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        None => s.serialize_none(),
        Some(v) => crate::json::big_vec_to_json(v).serialize(s),
    }
}

fn matrix_from_columns(cols: Vec<IntVector>) -> IntMatrix {
    IntMatrix::from_columns(&cols).expect("equal column lengths")
}

impl AutomorphismSpec {
    pub fn new(family: GroupFamily, images: Vec<GroupElement>) -> Result<Self, GroupError> {
        family.validate()?;
        if images.len() != family.rank() {
            return Err(GroupError::SlotMismatch { expected: family.rank(), found: images.len() });
        }
        for g in &images {
            if g.len() != family.rank() {
                return Err(GroupError::SlotMismatch { expected: family.rank(), found: g.len() });
            }
        }
        Ok(AutomorphismSpec { family, images, verified: false })
    }

    pub fn from_i64(family: GroupFamily, images: &[&[i64]]) -> Result<Self, GroupError> {
        Self::new(family, images.iter().map(|e| GroupElement::from_i64(e)).collect())
    }

    /// Parses `{"family": {...}, "images": {"x": [..], ...}}`.
    pub fn from_json_str(text: &str) -> Result<Self, GroupError> {
        let v: Value = serde_json::from_str(text).map_err(|e| GroupError::Json(e.to_string()))?;
        Self::from_json(&v)
    }

    pub fn from_json(v: &Value) -> Result<Self, GroupError> {
        let obj = v.as_object().ok_or_else(|| GroupError::Json("expected an object".into()))?;
        let family_v = obj.get("family").ok_or_else(|| GroupError::Json("missing \"family\"".into()))?;
        let family: GroupFamily =
            serde_json::from_value(family_v.clone()).map_err(|e| GroupError::Json(format!("family: {}", e)))?;
        family.validate()?;
        let images_v = obj
            .get("images")
            .and_then(Value::as_object)
            .ok_or_else(|| GroupError::Json("missing \"images\" object".into()))?;
        let names = family.generator_names();
        for key in images_v.keys() {
            if !names.contains(key) {
                return Err(GroupError::UnknownGenerator(key.clone()));
            }
        }
        let mut images = Vec::with_capacity(names.len());
        for name in &names {
            let e = images_v.get(name).ok_or_else(|| GroupError::MissingImage(name.clone()))?;
            let exps = crate::json::big_vec_from_json(e).map_err(|m| GroupError::Json(format!("{}: {}", name, m)))?;
            images.push(GroupElement::new(exps));
        }
        Self::new(family, images)
    }

    pub fn to_json(&self) -> Value {
        let mut images = Map::new();
        for (name, g) in self.family.generator_names().into_iter().zip(&self.images) {
            images.insert(name, crate::json::big_vec_to_json(&g.exponents));
        }
        let mut out = Map::new();
        out.insert("family".into(), serde_json::to_value(&self.family).expect("serializable family"));
        out.insert("images".into(), Value::Object(images));
        Value::Object(out)
    }

    pub fn family(&self) -> &GroupFamily {
        &self.family
    }

    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// Runs the verification and returns the spec with its flag set, or the failure.
    pub fn into_verified(mut self) -> Result<Self, GroupError> {
        let report = self.verify_automorphism();
        if !report.ok {
            return Err(GroupError::NotVerified(report.failure.unwrap_or_default()));
        }
        self.verified = true;
        Ok(self)
    }

    /// Image of a normal-form element: the product of generator images in slot order.
    pub fn apply(&self, g: &GroupElement) -> Result<GroupElement, GroupError> {
        let f = &self.family;
        let mut acc = f.identity();
        for (img, e) in self.images.iter().zip(&g.exponents) {
            if !e.is_zero() {
                acc = f.multiply(&acc, &f.pow(img, e)?)?;
            }
        }
        Ok(acc)
    }

    /// Checks every conjugation relation of the polycyclic presentation and
    /// bijectivity on each layer.
    pub fn verify_automorphism(&self) -> VerificationReport {
        match self.check_relations() {
            Ok(None) => {}
            Ok(Some(rel)) => return VerificationReport::fail(format!("relation {} violated", rel)),
            Err(e) => return VerificationReport::fail(e.to_string()),
        }
        match self.check_bijective() {
            Ok(None) => VerificationReport::pass(),
            Ok(Some(why)) => VerificationReport::fail(why),
            Err(e) => VerificationReport::fail(e.to_string()),
        }
    }

    fn check_relations(&self) -> Result<Option<String>, GroupError> {
        let f = &self.family;
        let order = f.series_order();
        let names = f.generator_names();
        for (pos, &j) in order.iter().enumerate() {
            let gj = f.generator(j);
            let gj_inv = f.inverse(&gj)?;
            let pj = &self.images[j];
            let pj_inv = f.inverse(pj)?;
            for &i in &order[..pos] {
                let gi = f.generator(i);
                for (left, right, pl, pr, label) in
                    [(&gj_inv, &gj, &pj_inv, pj, "^-1 "), (&gj, &gj_inv, pj, &pj_inv, " ")]
                {
                    let word = f.product([left, &gi, right])?;
                    let image_of_word = f.product([pl, &self.images[i], pr])?;
                    if image_of_word != self.apply(&word)? {
                        let rel = if label == " " {
                            format!("{} {} {}^-1 = {}", names[j], names[i], names[j], f.format_element(&word))
                        } else {
                            format!("{}{}{} {} = {}", names[j], label, names[i], names[j], f.format_element(&word))
                        };
                        return Ok(Some(rel));
                    }
                }
            }
        }
        Ok(None)
    }

    fn slot(&self, gen: usize, slot: usize) -> &BigInt {
        &self.images[gen].exponents[slot]
    }

    /// Matrix whose column `j` holds slots `slots` of the image of generator `gens[j]`.
    fn block(&self, gens: &[usize], slots: &[usize]) -> IntMatrix {
        matrix_from_columns(
            gens.iter().map(|&g| slots.iter().map(|&s| self.slot(g, s).clone()).collect()).collect(),
        )
    }

    fn zero_slots(&self, gens: &[usize], slots: &[usize]) -> bool {
        gens.iter().all(|&g| slots.iter().all(|&s| self.slot(g, s).is_zero()))
    }

    fn is_unit(x: &BigInt) -> bool {
        x.abs().is_one()
    }

    fn check_bijective(&self) -> Result<Option<String>, GroupError> {
        let d = self.derived();
        let unimodular = |m: &Option<IntMatrix>, what: &str| -> Option<String> {
            match m {
                Some(m) if m.is_unimodular() => None,
                Some(m) => Some(format!("{} {} is not unimodular", what, m)),
                None => Some(format!("{} is undefined", what)),
            }
        };
        let heis = |z_slot: usize, others: &[usize]| -> Option<String> {
            if !self.zero_slots(&[z_slot], others) || !Self::is_unit(self.slot(z_slot, z_slot)) {
                return Some("image of z is not z^(+-1)".into());
            }
            None
        };
        Ok(match &self.family {
            GroupFamily::FreeAbelian { .. } => unimodular(&d.fitting_matrix, "matrix"),
            GroupFamily::Heisenberg { .. } => heis(2, &[0, 1]).or_else(|| unimodular(&d.fitting_matrix, "induced matrix")),
            GroupFamily::HeisenbergTimesZ { .. } => {
                if !self.zero_slots(&[2, 3], &[0, 1]) {
                    Some("center <z, u> is not preserved".into())
                } else {
                    unimodular(&d.central_matrix, "central matrix").or_else(|| unimodular(&d.fitting_matrix, "induced matrix"))
                }
            }
            GroupFamily::ZnSemidirectZ { a } => {
                let n = a.rows();
                let base: Vec<usize> = (0..n).collect();
                if self.zero_slots(&base, &[n]) {
                    if let Some(why) = unimodular(&d.fitting_matrix, "matrix on Z^n") {
                        Some(why)
                    } else if !Self::is_unit(self.slot(n, n)) {
                        Some("image of t is not w t^(+-1)".into())
                    } else {
                        None
                    }
                } else {
                    match finite_order(a) {
                        Some(order) => match &d.lattice_matrix {
                            None => Some("translation lattice is not preserved".into()),
                            Some(m) if !m.is_unimodular() => {
                                Some(format!("matrix {} on the translation lattice is not unimodular", m))
                            }
                            Some(_) => {
                                if self.slot(n, n).gcd(&BigInt::from(order)).is_one() {
                                    None
                                } else {
                                    Some("induced map on the holonomy group is not bijective".into())
                                }
                            }
                        },
                        None => Some("cannot certify bijectivity: Z^n is not preserved and A has infinite order".into()),
                    }
                }
            }
            GroupFamily::Z2MinusIExt { .. } => {
                if !self.zero_slots(&[0, 1], &[2, 3]) {
                    Some("Z^2 is not preserved".into())
                } else {
                    unimodular(&d.fitting_matrix, "matrix on Z^2").or_else(|| unimodular(&d.quotient_matrix, "quotient matrix"))
                }
            }
            GroupFamily::HnSemidirectZ { .. } => {
                if !self.zero_slots(&[0, 1, 2], &[3]) {
                    Some("H_n is not preserved".into())
                } else if let Some(why) = heis(2, &[0, 1]) {
                    Some(why)
                } else if let Some(why) = unimodular(&d.fitting_matrix, "induced matrix") {
                    Some(why)
                } else if !Self::is_unit(self.slot(3, 3)) {
                    Some("image of t is not h t^(+-1)".into())
                } else {
                    None
                }
            }
        })
    }

    /// Matrix blocks recomputed from the images.
    pub fn derived(&self) -> DerivedBlocks {
        let mut d = DerivedBlocks::default();
        match &self.family {
            GroupFamily::FreeAbelian { n } => {
                let all: Vec<usize> = (0..*n).collect();
                d.fitting_matrix = Some(self.block(&all, &all));
            }
            GroupFamily::Heisenberg { .. } => {
                d.fitting_matrix = Some(self.block(&[0, 1], &[0, 1]));
                d.central_matrix = Some(self.block(&[2], &[2]));
            }
            GroupFamily::HeisenbergTimesZ { .. } => {
                d.fitting_matrix = Some(self.block(&[0, 1], &[0, 1]));
                d.central_matrix = Some(self.block(&[2, 3], &[2, 3]));
            }
            GroupFamily::ZnSemidirectZ { a } => {
                let n = a.rows();
                let base: Vec<usize> = (0..n).collect();
                if self.zero_slots(&base, &[n]) {
                    d.fitting_matrix = Some(self.block(&base, &base));
                    d.quotient_matrix = Some(self.block(&[n], &[n]));
                    d.translation = Some(self.images[n].exponents[..n].to_vec());
                }
                if let Some(order) = finite_order(a) {
                    d.lattice_matrix = self.lattice_block(n, order);
                }
            }
            GroupFamily::Z2MinusIExt { .. } => {
                d.fitting_matrix = Some(self.block(&[0, 1], &[0, 1]));
                d.quotient_matrix = Some(self.block(&[2, 3], &[2, 3]));
            }
            GroupFamily::HnSemidirectZ { .. } => {
                d.fitting_matrix = Some(self.block(&[0, 1], &[0, 1]));
                d.central_matrix = Some(self.block(&[2], &[2]));
                d.quotient_matrix = Some(self.block(&[3], &[3]));
            }
        }
        d
    }

    /// Action on `L = <t^d, Z^n>` in the basis `(t^d, e_1, ..., e_n)`, if `L` is preserved.
    fn lattice_block(&self, n: usize, order: u32) -> Option<IntMatrix> {
        let d = BigInt::from(order);
        let coords = |g: &GroupElement| -> Option<IntVector> {
            let (q, r) = g.exponents[n].div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            let mut v = vec![q];
            v.extend_from_slice(&g.exponents[..n]);
            Some(v)
        };
        let t_d = self.family.pow(&self.images[n], &d).ok()?;
        let mut cols = vec![coords(&t_d)?];
        for i in 0..n {
            cols.push(coords(&self.images[i])?);
        }
        Some(matrix_from_columns(cols))
    }

    /// Sign `eps` of the top generator's image, when the family has a `Z` top and it is preserved.
    pub(crate) fn top_sign(&self) -> Option<i64> {
        let q = self.derived().quotient_matrix?;
        if q.rows() != 1 {
            return None;
        }
        let e = q.get(0, 0);
        if e.is_one() {
            Some(1)
        } else if (-e).is_one() {
            Some(-1)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_squaring_center_fails() {
        let spec = AutomorphismSpec::from_i64(GroupFamily::heisenberg(2), &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 2]]).unwrap();
        let r = spec.verify_automorphism();
        assert!(!r.ok);
        assert_eq!(r.failure.as_deref(), Some("relation y^-1 x y = x z^-2 violated"));
    }

    #[test]
    fn identity_is_automorphism() {
        let f = GroupFamily::zn_semidirect_z(IntMatrix::from_rows(&[[2, 1], [1, 1]]));
        let spec = AutomorphismSpec::from_i64(f, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert!(spec.verify_automorphism().ok);
    }

    #[test]
    fn non_bijective_endomorphism_rejected() {
        let spec = AutomorphismSpec::from_i64(GroupFamily::FreeAbelian { n: 2 }, &[&[2, 0], &[0, 1]]).unwrap();
        let r = spec.verify_automorphism();
        assert!(!r.ok);
        assert!(r.failure.unwrap().contains("not unimodular"));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"family":{"kind":"heisenberg_times_z","n":1},
            "images":{"x":[0,1,0,0],"y":[1,2,0,0],"z":[0,0,-1,0],"u":[0,0,0,-1]}}"#;
        let spec = AutomorphismSpec::from_json_str(text).unwrap();
        assert!(spec.verify_automorphism().ok);
        let again = AutomorphismSpec::from_json(&spec.to_json()).unwrap();
        assert_eq!(again, spec);
    }

    #[test]
    fn json_errors() {
        let bad = r#"{"family":{"kind":"heisenberg","n":1},"images":{"x":[1,0,0],"y":[0,1,0]}}"#;
        assert_eq!(AutomorphismSpec::from_json_str(bad), Err(GroupError::MissingImage("z".into())));
        let bad = r#"{"family":{"kind":"heisenberg","n":1},"images":{"x":[1,0,0],"y":[0,1,0],"z":[0,0,1],"q":[]}}"#;
        assert_eq!(AutomorphismSpec::from_json_str(bad), Err(GroupError::UnknownGenerator("q".into())));
        let bad = r#"{"family":{"kind":"heisenberg","n":1},"images":{"x":[1,0],"y":[0,1,0],"z":[0,0,1]}}"#;
        assert!(matches!(AutomorphismSpec::from_json_str(bad), Err(GroupError::SlotMismatch { .. })));
        assert!(AutomorphismSpec::from_json_str("[").is_err());
        let bad = r#"{"family":{"kind":"heisenberg","n":0},"images":{}}"#;
        assert!(matches!(AutomorphismSpec::from_json_str(bad), Err(GroupError::InvalidFamily(_))));
    }
}
