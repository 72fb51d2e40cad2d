//! Brute-force twisted-conjugacy classes on a box of exponent vectors.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::{AutomorphismSpec, GroupElement, GroupError};

/// Classes of `x ~ s x phi(s)^-1` seen on the box `|e_i| <= ball_radius`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassLabeling {
    pub ball_radius: u32,
    pub labels: HashMap<GroupElement, usize>,
    pub class_count: usize,
    /// Heuristic certificate: the count is unchanged at radius + 1 and every
    /// class meets the box of half the radius.
    pub complete: bool,
}

impl ClassLabeling {
    pub fn label(&self, g: &GroupElement) -> Option<usize> {
        self.labels.get(g).copied()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// A box of exponent vectors with one radius per slot, indexed densely.
struct BoxIndex {
    radii: Vec<i64>,
}

impl BoxIndex {
    fn uniform(radius: i64, rank: usize) -> Self {
        BoxIndex { radii: vec![radius; rank] }
    }

    fn size(&self) -> usize {
        self.radii.iter().map(|r| (2 * r + 1) as usize).product()
    }

    fn index(&self, g: &GroupElement) -> Option<usize> {
        let mut idx = 0usize;
        for (e, r) in g.exponents.iter().zip(&self.radii).rev() {
            let e = e.to_i64().filter(|e| e.abs() <= *r)?;
            idx = idx * (2 * r + 1) as usize + (e + r) as usize;
        }
        Some(idx)
    }

    fn element(&self, mut idx: usize) -> GroupElement {
        let mut v = Vec::with_capacity(self.radii.len());
        for r in &self.radii {
            let side = (2 * r + 1) as usize;
            v.push(BigInt::from((idx % side) as i64 - r));
            idx /= side;
        }
        GroupElement::new(v)
    }
}

/// The saturation box around the labeled box of the given radius. Central
/// Heisenberg slots get a wider margin: twisting moves them by amounts that
/// grow linearly with the other coordinates.
fn outer_box(spec: &AutomorphismSpec, radius: u32) -> BoxIndex {
    let f = spec.family();
    let r = radius as i64;
    let base = r + r.max(2);
    let mut radii = vec![base; f.rank()];
    if let Some(z) = f.central_heisenberg_slot() {
        let spread = spec
            .images()
            .iter()
            .flat_map(|g| g.exponents.iter())
            .filter_map(|e| e.abs().to_i64())
            .max()
            .unwrap_or(1)
            .max(1);
        radii[z] = base * (1 + spread.min(2));
    }
    BoxIndex { radii }
}

/// Union-find over the box, merging `g` with `s g phi(s)^-1` for every
/// generator `s` and its inverse.
fn saturate(spec: &AutomorphismSpec, bx: &BoxIndex) -> Result<UnionFind, GroupError> {
    let f = spec.family();
    let mut twists = Vec::with_capacity(2 * f.rank());
    for (slot, img) in spec.images().iter().enumerate() {
        let s = f.generator(slot);
        twists.push((f.inverse(&s)?, img.clone()));
        twists.push((s, f.inverse(img)?));
    }
    let mut uf = UnionFind::new(bx.size());
    for idx in 0..bx.size() {
        let g = bx.element(idx);
        for (left, right) in &twists {
            let h = f.multiply(&f.multiply(left, &g)?, right)?;
            if let Some(j) = bx.index(&h) {
                uf.union(idx, j);
            }
        }
    }
    Ok(uf)
}

fn inner_roots(outer: &BoxIndex, uf: &mut UnionFind, radius: u32) -> Vec<(GroupElement, usize)> {
    let inner = BoxIndex::uniform(radius as i64, outer.radii.len());
    (0..inner.size())
        .map(|i| {
            let g = inner.element(i);
            let root = uf.find(outer.index(&g).expect("inner box lies in the outer box"));
            (g, root)
        })
        .collect()
}

/// Twisted-conjugacy labels on the box `|e_i| <= radius`, saturated on a
/// larger box so that connecting paths may leave the labeled region.
pub fn label_classes(spec: &AutomorphismSpec, radius: u32) -> Result<ClassLabeling, GroupError> {
    if radius < 1 {
        return Err(GroupError::BadRadius);
    }
    if !spec.is_verified() {
        return Err(GroupError::NotVerified("call into_verified first".into()));
    }
    let outer = outer_box(spec, radius);
    let mut uf = saturate(spec, &outer)?;
    let mut root_label = HashMap::new();
    let mut labels = HashMap::new();
    for (g, root) in inner_roots(&outer, &mut uf, radius) {
        let next = root_label.len();
        let id = *root_label.entry(root).or_insert(next);
        labels.insert(g, id);
    }
    let class_count = root_label.len();

    let core = BigInt::from(radius / 2);
    let mut meets_core = vec![false; class_count];
    for (g, &id) in &labels {
        if g.exponents.iter().all(|e| e.abs() <= core) {
            meets_core[id] = true;
        }
    }
    let outer2 = outer_box(spec, radius + 1);
    let mut uf2 = saturate(spec, &outer2)?;
    let mut next_roots: Vec<usize> = inner_roots(&outer2, &mut uf2, radius + 1).into_iter().map(|(_, r)| r).collect();
    next_roots.sort_unstable();
    next_roots.dedup();
    let stable = next_roots.len() == class_count;
    let complete = stable && meets_core.iter().all(|&m| m);
    Ok(ClassLabeling { ball_radius: radius, labels, class_count, complete })
}
