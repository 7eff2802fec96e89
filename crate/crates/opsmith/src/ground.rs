//! Abstract ground categories for operadic structures.
//!
//! A [`Ground`] is a pointed symmetric monoidal category with enough exactly
//! computable structure to state and check operad and algebra axioms: a
//! monoidal product with constructed coherence isomorphisms, finite direct
//! sums, and quotients. Three instances are provided:
//!
//! * [`ChainGround`] — chain complexes with the tensor product;
//! * [`ArrowTensorGround`] — the arrow category with `⊗` (unit `id : 1 → 1`);
//! * [`ArrowBoxGround`] — the arrow category with the pushout product `□`
//!   (unit `∅ → 1`).
//!
//! Axiom checkers never compare objects up to isomorphism; all coherence
//! maps are explicit and composable, so the two sides of every axiom are
//! maps between literally equal objects.

use crate::arrow::{
    pp_pad_units_iso, pp_permute_iso, pp_regroup_iso, pp_value, pushout_product_map, tensor_arrow,
    tensor_arrow_map, ArrowMap, ArrowObject,
};
use crate::chain::{
    self, factor_through_surjection, multi_tensor, multi_tensor_map, ChainComplex, ChainMap,
};
use crate::perm::Perm;
use std::fmt::Debug;

pub trait Ground: Clone {
    type Obj: Clone + PartialEq + Debug;
    type Map: Clone + PartialEq + Debug;

    fn name(&self) -> &'static str;

    fn unit(&self) -> Self::Obj;
    fn zero_obj(&self) -> Self::Obj;
    fn is_zero_obj(&self, x: &Self::Obj) -> bool;

    fn identity(&self, x: &Self::Obj) -> Self::Map;
    fn zero_map(&self, x: &Self::Obj, y: &Self::Obj) -> Self::Map;
    fn compose(&self, outer: &Self::Map, inner: &Self::Map) -> Self::Map;
    fn source(&self, f: &Self::Map) -> Self::Obj;
    fn target(&self, f: &Self::Map) -> Self::Obj;
    fn map_eq(&self, f: &Self::Map, g: &Self::Map) -> bool {
        f == g
    }
    fn is_iso(&self, f: &Self::Map) -> bool;
    /// Structural validity: chain-map condition, commuting square, …
    fn validate_map(&self, f: &Self::Map) -> bool;

    /// Left-fold monoidal product; the empty product is the unit.
    fn multi_tensor(&self, xs: &[Self::Obj]) -> Self::Obj;
    fn multi_tensor_map(&self, fs: &[Self::Map]) -> Self::Map;

    fn tensor(&self, x: &Self::Obj, y: &Self::Obj) -> Self::Obj {
        self.multi_tensor(&[x.clone(), y.clone()])
    }
    fn tensor_map(&self, f: &Self::Map, g: &Self::Map) -> Self::Map {
        self.multi_tensor_map(&[f.clone(), g.clone()])
    }

    /// Symmetry coherence `multi(xs) → multi(xs·σ)` with `(xs·σ)_i = xs[σ(i)]`.
    fn permute_iso(&self, xs: &[Self::Obj], sigma: &Perm) -> Self::Map;
    /// Regrouping coherence `multi(xs) → multi([multi(g₁), …])`, nonempty
    /// consecutive groups of the given sizes.
    fn regroup_iso(&self, xs: &[Self::Obj], sizes: &[usize]) -> Self::Map;
    /// Unit coherence `x → 1⊗…⊗1⊗x⊗1⊗…⊗1`.
    fn pad_units_iso(&self, x: &Self::Obj, before: usize, after: usize) -> Self::Map;

    fn symmetry(&self, x: &Self::Obj, y: &Self::Obj) -> Self::Map {
        self.permute_iso(&[x.clone(), y.clone()], &Perm::adjacent(2, 0))
    }

    fn add_maps(&self, f: &Self::Map, g2: &Self::Map) -> Self::Map;
    fn subtract_maps(&self, f: &Self::Map, g2: &Self::Map) -> Self::Map;
    /// Inverse of an entrywise isomorphism.
    fn invert_iso(&self, f: &Self::Map) -> Self::Map;

    /// Finite biproduct: (sum, injections, projections).
    fn direct_sum(&self, xs: &[Self::Obj]) -> (Self::Obj, Vec<Self::Map>, Vec<Self::Map>);
    /// Quotient of `x` by the joint image of the given maps into `x`;
    /// returns the quotient with its projection.
    fn quotient(&self, x: &Self::Obj, rels: &[Self::Map]) -> (Self::Obj, Self::Map);
    /// Descends `f : x → y` through quotient projections of its endpoints;
    /// `None` if `f` does not preserve the relations.
    fn descend(
        &self,
        f: &Self::Map,
        src_proj: &Self::Map,
        tgt_proj: &Self::Map,
    ) -> Option<Self::Map>;
}

// ---------------------------------------------------------------------------
// Chain complexes
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, Default)]
pub struct ChainGround;

impl Ground for ChainGround {
    type Obj = ChainComplex;
    type Map = ChainMap;

    fn name(&self) -> &'static str {
        "chain"
    }

    fn unit(&self) -> ChainComplex {
        ChainComplex::unit()
    }

    fn zero_obj(&self) -> ChainComplex {
        ChainComplex::zero()
    }

    fn is_zero_obj(&self, x: &ChainComplex) -> bool {
        x.is_zero()
    }

    fn identity(&self, x: &ChainComplex) -> ChainMap {
        ChainMap::identity(x)
    }

    fn zero_map(&self, x: &ChainComplex, y: &ChainComplex) -> ChainMap {
        ChainMap::zero(x, y)
    }

    fn compose(&self, outer: &ChainMap, inner: &ChainMap) -> ChainMap {
        outer.compose(inner)
    }

    fn source(&self, f: &ChainMap) -> ChainComplex {
        f.source().clone()
    }

    fn target(&self, f: &ChainMap) -> ChainComplex {
        f.target().clone()
    }

    fn is_iso(&self, f: &ChainMap) -> bool {
        f.is_degreewise_iso()
    }

    fn validate_map(&self, f: &ChainMap) -> bool {
        f.validate().is_ok()
    }

    fn multi_tensor(&self, xs: &[ChainComplex]) -> ChainComplex {
        let refs: Vec<&ChainComplex> = xs.iter().collect();
        multi_tensor(&refs)
    }

    fn multi_tensor_map(&self, fs: &[ChainMap]) -> ChainMap {
        let refs: Vec<&ChainMap> = fs.iter().collect();
        multi_tensor_map(&refs)
    }

    fn permute_iso(&self, xs: &[ChainComplex], sigma: &Perm) -> ChainMap {
        let refs: Vec<&ChainComplex> = xs.iter().collect();
        chain::permute_iso(&refs, sigma)
    }

    fn regroup_iso(&self, xs: &[ChainComplex], sizes: &[usize]) -> ChainMap {
        let refs: Vec<&ChainComplex> = xs.iter().collect();
        chain::regroup_iso(&refs, sizes)
    }

    fn pad_units_iso(&self, x: &ChainComplex, before: usize, after: usize) -> ChainMap {
        chain::pad_units_iso(x, before, after)
    }

    fn add_maps(&self, f: &ChainMap, g2: &ChainMap) -> ChainMap {
        f.add(g2)
    }

    fn subtract_maps(&self, f: &ChainMap, g2: &ChainMap) -> ChainMap {
        f.sub(g2)
    }

    fn invert_iso(&self, f: &ChainMap) -> ChainMap {
        f.inverse().expect("invertible map")
    }

    fn direct_sum(&self, xs: &[ChainComplex]) -> (ChainComplex, Vec<ChainMap>, Vec<ChainMap>) {
        let refs: Vec<&ChainComplex> = xs.iter().collect();
        ChainComplex::direct_sum(&refs)
    }

    fn quotient(&self, x: &ChainComplex, rels: &[ChainMap]) -> (ChainComplex, ChainMap) {
        quotient_chain(x, rels)
    }

    fn descend(
        &self,
        f: &ChainMap,
        src_proj: &ChainMap,
        tgt_proj: &ChainMap,
    ) -> Option<ChainMap> {
        factor_through_surjection(src_proj, &tgt_proj.compose(f)).ok()
    }
}

/// Quotient of a complex by the joint image of a family of maps into it.
pub fn quotient_chain(x: &ChainComplex, rels: &[ChainMap]) -> (ChainComplex, ChainMap) {
    use crate::ratlin::{cokernel_projection, right_inverse, Matrix};
    use std::collections::BTreeMap;
    let mut dims = BTreeMap::new();
    let mut projs: BTreeMap<i64, Matrix> = BTreeMap::new();
    for &n in &x.degrees() {
        let blocks: Vec<Matrix> = rels.iter().map(|r| r.comp(n)).collect();
        let rel = if blocks.is_empty() {
            Matrix::zero(x.dim(n), 0)
        } else {
            Matrix::hstack_all(x.dim(n), &blocks)
        };
        let (p, d) = cokernel_projection(&rel);
        if d > 0 {
            dims.insert(n, d);
        }
        projs.insert(n, p);
    }
    let mut diffs = BTreeMap::new();
    for &n in &x.degrees() {
        let rows = dims.get(&(n - 1)).copied().unwrap_or(0);
        let cols = dims.get(&n).copied().unwrap_or(0);
        if rows == 0 || cols == 0 {
            continue;
        }
        let through = projs[&(n - 1)].mul(&x.diff(n));
        let ri = right_inverse(&projs[&n]).expect("quotient projection is surjective");
        diffs.insert(n, through.mul(&ri));
    }
    let q = ChainComplex::new(dims, diffs).expect("quotient complex");
    debug_assert!(q.validate().is_ok());
    let mut comps = BTreeMap::new();
    for (&n, p) in &projs {
        if q.dim(n) > 0 && x.dim(n) > 0 {
            comps.insert(n, p.clone());
        }
    }
    let proj = ChainMap::new(x.clone(), q.clone(), comps).expect("quotient projection");
    debug_assert!(proj.validate().is_ok());
    (q, proj)
}

// ---------------------------------------------------------------------------
// Arrow category with the tensor structure
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, Default)]
pub struct ArrowTensorGround;

impl Ground for ArrowTensorGround {
    type Obj = ArrowObject;
    type Map = ArrowMap;

    fn name(&self) -> &'static str {
        "arrow-tensor"
    }

    fn unit(&self) -> ArrowObject {
        ArrowObject::tensor_unit()
    }

    fn zero_obj(&self) -> ArrowObject {
        ArrowObject::zero()
    }

    fn is_zero_obj(&self, x: &ArrowObject) -> bool {
        x.is_zero()
    }

    fn identity(&self, x: &ArrowObject) -> ArrowMap {
        ArrowMap::identity(x)
    }

    fn zero_map(&self, x: &ArrowObject, y: &ArrowObject) -> ArrowMap {
        ArrowMap::zero(x, y)
    }

    fn compose(&self, outer: &ArrowMap, inner: &ArrowMap) -> ArrowMap {
        outer.compose(inner)
    }

    fn source(&self, f: &ArrowMap) -> ArrowObject {
        f.source().clone()
    }

    fn target(&self, f: &ArrowMap) -> ArrowObject {
        f.target().clone()
    }

    fn is_iso(&self, f: &ArrowMap) -> bool {
        f.is_entrywise_iso()
    }

    fn validate_map(&self, f: &ArrowMap) -> bool {
        f.validate().is_ok()
    }

    fn multi_tensor(&self, xs: &[ArrowObject]) -> ArrowObject {
        let mut acc = self.unit();
        for (i, x) in xs.iter().enumerate() {
            acc = if i == 0 { x.clone() } else { tensor_arrow(&acc, x) };
        }
        acc
    }

    fn multi_tensor_map(&self, fs: &[ArrowMap]) -> ArrowMap {
        let mut acc = ArrowMap::identity(&self.unit());
        for (i, f) in fs.iter().enumerate() {
            acc = if i == 0 { f.clone() } else { tensor_arrow_map(&acc, f) };
        }
        acc
    }

    fn permute_iso(&self, xs: &[ArrowObject], sigma: &Perm) -> ArrowMap {
        // Entrywise chain coherences; the square commutes by naturality.
        let src = self.multi_tensor(xs);
        let ys: Vec<ArrowObject> = sigma.act_right(&xs.to_vec());
        let tgt = self.multi_tensor(&ys);
        let e0: Vec<&ChainComplex> = xs.iter().map(|x| x.ev0()).collect();
        let e1: Vec<&ChainComplex> = xs.iter().map(|x| x.ev1()).collect();
        ArrowMap::new(
            src,
            tgt,
            chain::permute_iso(&e0, sigma),
            chain::permute_iso(&e1, sigma),
        )
        .expect("⊗-arrow symmetry")
    }

    fn regroup_iso(&self, xs: &[ArrowObject], sizes: &[usize]) -> ArrowMap {
        let src = self.multi_tensor(xs);
        let mut grouped = Vec::new();
        let mut off = 0;
        for &s in sizes {
            grouped.push(self.multi_tensor(&xs[off..off + s]));
            off += s;
        }
        let tgt = self.multi_tensor(&grouped);
        let e0: Vec<&ChainComplex> = xs.iter().map(|x| x.ev0()).collect();
        let e1: Vec<&ChainComplex> = xs.iter().map(|x| x.ev1()).collect();
        ArrowMap::new(
            src,
            tgt,
            chain::regroup_iso(&e0, sizes),
            chain::regroup_iso(&e1, sizes),
        )
        .expect("⊗-arrow regroup")
    }

    fn pad_units_iso(&self, x: &ArrowObject, before: usize, after: usize) -> ArrowMap {
        let mut padded = vec![self.unit(); before];
        padded.push(x.clone());
        padded.extend(std::iter::repeat(self.unit()).take(after));
        let tgt = self.multi_tensor(&padded);
        ArrowMap::new(
            x.clone(),
            tgt,
            chain::pad_units_iso(x.ev0(), before, after),
            chain::pad_units_iso(x.ev1(), before, after),
        )
        .expect("⊗-arrow unit padding")
    }

    fn add_maps(&self, f: &ArrowMap, g2: &ArrowMap) -> ArrowMap {
        add_arrow_maps(f, g2)
    }

    fn subtract_maps(&self, f: &ArrowMap, g2: &ArrowMap) -> ArrowMap {
        sub_arrow_maps(f, g2)
    }

    fn invert_iso(&self, f: &ArrowMap) -> ArrowMap {
        f.inverse().expect("invertible arrow map")
    }

    fn direct_sum(&self, xs: &[ArrowObject]) -> (ArrowObject, Vec<ArrowMap>, Vec<ArrowMap>) {
        direct_sum_arrows(xs)
    }

    fn quotient(&self, x: &ArrowObject, rels: &[ArrowMap]) -> (ArrowObject, ArrowMap) {
        quotient_arrow(x, rels)
    }

    fn descend(
        &self,
        f: &ArrowMap,
        src_proj: &ArrowMap,
        tgt_proj: &ArrowMap,
    ) -> Option<ArrowMap> {
        descend_arrow(f, src_proj, tgt_proj)
    }
}

fn add_arrow_maps(f: &ArrowMap, g: &ArrowMap) -> ArrowMap {
    ArrowMap::new(
        f.source().clone(),
        f.target().clone(),
        f.alpha0().add(g.alpha0()),
        f.alpha1().add(g.alpha1()),
    )
    .expect("sum of parallel arrow maps")
}

fn sub_arrow_maps(f: &ArrowMap, g: &ArrowMap) -> ArrowMap {
    ArrowMap::new(
        f.source().clone(),
        f.target().clone(),
        f.alpha0().sub(g.alpha0()),
        f.alpha1().sub(g.alpha1()),
    )
    .expect("difference of parallel arrow maps")
}

fn direct_sum_arrows(xs: &[ArrowObject]) -> (ArrowObject, Vec<ArrowMap>, Vec<ArrowMap>) {
    let e0: Vec<&ChainComplex> = xs.iter().map(|x| x.ev0()).collect();
    let e1: Vec<&ChainComplex> = xs.iter().map(|x| x.ev1()).collect();
    let (s0, inj0, proj0) = ChainComplex::direct_sum(&e0);
    let (s1, inj1, proj1) = ChainComplex::direct_sum(&e1);
    let mut total = ChainMap::zero(&s0, &s1);
    for (i, x) in xs.iter().enumerate() {
        total = total.add(&inj1[i].compose(&x.map().compose(&proj0[i])));
    }
    let sum = ArrowObject::new(total);
    let injections = xs
        .iter()
        .enumerate()
        .map(|(i, x)| {
            ArrowMap::new(x.clone(), sum.clone(), inj0[i].clone(), inj1[i].clone())
                .expect("sum inclusion")
        })
        .collect();
    let projections = xs
        .iter()
        .enumerate()
        .map(|(i, x)| {
            ArrowMap::new(sum.clone(), x.clone(), proj0[i].clone(), proj1[i].clone())
                .expect("sum projection")
        })
        .collect();
    (sum, injections, projections)
}

fn quotient_arrow(x: &ArrowObject, rels: &[ArrowMap]) -> (ArrowObject, ArrowMap) {
    let rels0: Vec<ChainMap> = rels.iter().map(|r| r.alpha0().clone()).collect();
    let rels1: Vec<ChainMap> = rels.iter().map(|r| r.alpha1().clone()).collect();
    let (_q0, p0) = quotient_chain(x.ev0(), &rels0);
    let (_q1, p1) = quotient_chain(x.ev1(), &rels1);
    let induced =
        factor_through_surjection(&p0, &p1.compose(x.map())).expect("arrow descends to quotients");
    let q = ArrowObject::new(induced);
    let proj = ArrowMap::new(x.clone(), q.clone(), p0, p1).expect("quotient projection");
    (q, proj)
}

fn descend_arrow(f: &ArrowMap, src_proj: &ArrowMap, tgt_proj: &ArrowMap) -> Option<ArrowMap> {
    let a0 =
        factor_through_surjection(src_proj.alpha0(), &tgt_proj.alpha0().compose(f.alpha0())).ok()?;
    let a1 =
        factor_through_surjection(src_proj.alpha1(), &tgt_proj.alpha1().compose(f.alpha1())).ok()?;
    ArrowMap::new(
        src_proj.target().clone(),
        tgt_proj.target().clone(),
        a0,
        a1,
    )
    .ok()
}

// ---------------------------------------------------------------------------
// Arrow category with the pushout-product structure
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, Default)]
pub struct ArrowBoxGround;

impl Ground for ArrowBoxGround {
    type Obj = ArrowObject;
    type Map = ArrowMap;

    fn name(&self) -> &'static str {
        "arrow-box"
    }

    fn unit(&self) -> ArrowObject {
        ArrowObject::pp_unit()
    }

    fn zero_obj(&self) -> ArrowObject {
        ArrowObject::zero()
    }

    fn is_zero_obj(&self, x: &ArrowObject) -> bool {
        x.is_zero()
    }

    fn identity(&self, x: &ArrowObject) -> ArrowMap {
        ArrowMap::identity(x)
    }

    fn zero_map(&self, x: &ArrowObject, y: &ArrowObject) -> ArrowMap {
        ArrowMap::zero(x, y)
    }

    fn compose(&self, outer: &ArrowMap, inner: &ArrowMap) -> ArrowMap {
        outer.compose(inner)
    }

    fn source(&self, f: &ArrowMap) -> ArrowObject {
        f.source().clone()
    }

    fn target(&self, f: &ArrowMap) -> ArrowObject {
        f.target().clone()
    }

    fn is_iso(&self, f: &ArrowMap) -> bool {
        f.is_entrywise_iso()
    }

    fn validate_map(&self, f: &ArrowMap) -> bool {
        f.validate().is_ok()
    }

    fn multi_tensor(&self, xs: &[ArrowObject]) -> ArrowObject {
        if xs.is_empty() {
            return self.unit();
        }
        pp_value(xs).arrow
    }

    fn multi_tensor_map(&self, fs: &[ArrowMap]) -> ArrowMap {
        match fs.len() {
            0 => ArrowMap::identity(&self.unit()),
            1 => fs[0].clone(),
            _ => {
                let mut acc = pushout_product_map(&fs[0], &fs[1]);
                for f in &fs[2..] {
                    acc = pushout_product_map(&acc, f);
                }
                acc
            }
        }
    }

    fn permute_iso(&self, xs: &[ArrowObject], sigma: &Perm) -> ArrowMap {
        pp_permute_iso(xs, sigma)
    }

    fn regroup_iso(&self, xs: &[ArrowObject], sizes: &[usize]) -> ArrowMap {
        pp_regroup_iso(xs, sizes)
    }

    fn pad_units_iso(&self, x: &ArrowObject, before: usize, after: usize) -> ArrowMap {
        pp_pad_units_iso(x, before, after)
    }

    fn add_maps(&self, f: &ArrowMap, g2: &ArrowMap) -> ArrowMap {
        add_arrow_maps(f, g2)
    }

    fn subtract_maps(&self, f: &ArrowMap, g2: &ArrowMap) -> ArrowMap {
        sub_arrow_maps(f, g2)
    }

    fn invert_iso(&self, f: &ArrowMap) -> ArrowMap {
        f.inverse().expect("invertible arrow map")
    }

    fn direct_sum(&self, xs: &[ArrowObject]) -> (ArrowObject, Vec<ArrowMap>, Vec<ArrowMap>) {
        direct_sum_arrows(xs)
    }

    fn quotient(&self, x: &ArrowObject, rels: &[ArrowMap]) -> (ArrowObject, ArrowMap) {
        quotient_arrow(x, rels)
    }

    fn descend(
        &self,
        f: &ArrowMap,
        src_proj: &ArrowMap,
        tgt_proj: &ArrowMap,
    ) -> Option<ArrowMap> {
        descend_arrow(f, src_proj, tgt_proj)
    }
}

/// Spot-checks the monoidal laws of a ground implementation on sample
/// objects: unit padding, symmetry involutivity, permutation coherence.
pub fn verify_basic_laws<G: Ground>(g: &G, samples: &[G::Obj]) -> bool {
    for x in samples {
        let pad = g.pad_units_iso(x, 1, 1);
        if !g.is_iso(&pad) || !g.validate_map(&pad) {
            return false;
        }
        for y in samples {
            let s = g.symmetry(x, y);
            let back = g.symmetry(y, x);
            let round = g.compose(&back, &s);
            if !g.map_eq(&round, &g.identity(&g.source(&s))) {
                return false;
            }
        }
    }
    if samples.len() >= 3 {
        let xs = &samples[..3];
        for sigma in Perm::all(3) {
            let iso = g.permute_iso(xs, &sigma);
            if !g.is_iso(&iso) || !g.validate_map(&iso) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrow::{l0, l1};

    #[test]
    fn chain_ground_laws() {
        let g = ChainGround;
        let samples = vec![
            ChainComplex::sphere(0),
            ChainComplex::disk(1),
            ChainComplex::sphere(1),
        ];
        assert!(verify_basic_laws(&g, &samples));
    }

    #[test]
    fn arrow_tensor_ground_laws() {
        let g = ArrowTensorGround;
        let samples = vec![
            ArrowObject::tensor_unit(),
            l1(&ChainComplex::sphere(0)),
            l0(&ChainComplex::disk(1)),
        ];
        assert!(verify_basic_laws(&g, &samples));
    }

    #[test]
    fn arrow_box_ground_laws() {
        let g = ArrowBoxGround;
        let samples = vec![
            ArrowObject::pp_unit(),
            l1(&ChainComplex::sphere(0)),
            l1(&ChainComplex::sphere(1)),
        ];
        assert!(verify_basic_laws(&g, &samples));
    }

    #[test]
    fn quotient_and_sum_in_arrow_ground() {
        let g = ArrowTensorGround;
        let a = l1(&ChainComplex::sphere(0));
        let b = l0(&ChainComplex::sphere(0));
        let (sum, inj, proj) = g.direct_sum(&[a.clone(), b.clone()]);
        assert_eq!(sum.ev1().total_dim(), 2);
        assert_eq!(proj[0].compose(&inj[0]), ArrowMap::identity(&a));
        assert_eq!(proj[1].compose(&inj[1]), ArrowMap::identity(&b));
        // quotient of the sum by the first summand leaves the second
        let (q, p) = g.quotient(&sum, &[inj[0].clone()]);
        assert_eq!(q.ev1().total_dim(), 1);
        assert!(g.validate_map(&p));
    }
}
