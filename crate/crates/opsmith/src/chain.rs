//! Bounded chain complexes of finite-dimensional rational vector spaces.
//!
//! Grading is homological: the differential lowers degree by one. A complex
//! stores only its finitely many nonzero dimensions; a differential matrix is
//! present exactly where both adjacent degrees are nonzero, so structural
//! equality of the data is meaningful equality of complexes.
//!
//! Sign conventions: `d(a⊗b) = da⊗b + (−1)^{|a|} a⊗db` and
//! `τ(a⊗b) = (−1)^{|a||b|} b⊗a`.

use crate::perm::Perm;
use crate::ratlin::{
    self, cokernel_projection, image_basis, is_injective, is_surjective, kernel_basis,
    left_inverse, rank, right_inverse, Matrix, Rational,
};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChainError {
    #[error("differential at degree {degree} has shape {got_rows}x{got_cols}, expected {want_rows}x{want_cols}")]
    DiffShape {
        degree: i64,
        got_rows: usize,
        got_cols: usize,
        want_rows: usize,
        want_cols: usize,
    },
    #[error("d∘d ≠ 0 at degree {0}")]
    NotAComplex(i64),
    #[error("map component at degree {degree} has shape {got_rows}x{got_cols}, expected {want_rows}x{want_cols}")]
    CompShape {
        degree: i64,
        got_rows: usize,
        got_cols: usize,
        want_rows: usize,
        want_cols: usize,
    },
    #[error("map does not commute with differentials at degree {0}")]
    NotChainMap(i64),
    #[error("source/target mismatch: {0}")]
    Mismatch(String),
    #[error("diagram edge {edge} does not match its endpoints")]
    BadEdge { edge: usize },
    #[error("cocone/cone is not compatible with the diagram at edge {edge}")]
    IncompatibleCone { edge: usize },
    #[error("map does not factor as required")]
    NoFactorization,
    #[error("map is not invertible at degree {0}")]
    NotInvertible(i64),
}

/// A bounded chain complex over ℚ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    dims: BTreeMap<i64, usize>,
    diffs: BTreeMap<i64, Matrix>,
}

impl ChainComplex {
    /// Builds a complex from dimensions and differentials.
    ///
    /// Zero dimensions are dropped; missing differentials between nonzero
    /// degrees are filled in as zero matrices. Shapes are checked, but
    /// `d∘d = 0` is not — see [`ChainComplex::validate`].
    pub fn new(
        dims: BTreeMap<i64, usize>,
        diffs: BTreeMap<i64, Matrix>,
    ) -> Result<Self, ChainError> {
        let dims: BTreeMap<i64, usize> = dims.into_iter().filter(|&(_, d)| d > 0).collect();
        let mut normalized = BTreeMap::new();
        for (&n, &dn) in &dims {
            let below = dims.get(&(n - 1)).copied().unwrap_or(0);
            if below == 0 {
                continue;
            }
            match diffs.get(&n) {
                Some(m) => {
                    if m.rows() != below || m.cols() != dn {
                        return Err(ChainError::DiffShape {
                            degree: n,
                            got_rows: m.rows(),
                            got_cols: m.cols(),
                            want_rows: below,
                            want_cols: dn,
                        });
                    }
                    normalized.insert(n, m.clone());
                }
                None => {
                    normalized.insert(n, Matrix::zero(below, dn));
                }
            }
        }
        for (&n, m) in &diffs {
            if !normalized.contains_key(&n) && !m.is_zero() {
                let want_rows = dims.get(&(n - 1)).copied().unwrap_or(0);
                let want_cols = dims.get(&n).copied().unwrap_or(0);
                return Err(ChainError::DiffShape {
                    degree: n,
                    got_rows: m.rows(),
                    got_cols: m.cols(),
                    want_rows,
                    want_cols,
                });
            }
        }
        Ok(ChainComplex { dims, diffs: normalized })
    }

    pub fn zero() -> Self {
        ChainComplex { dims: BTreeMap::new(), diffs: BTreeMap::new() }
    }

    /// The monoidal unit: ℚ concentrated in degree 0.
    pub fn unit() -> Self {
        Self::sphere(0)
    }

    /// `S(k)`: ℚ concentrated in degree `k`.
    pub fn sphere(k: i64) -> Self {
        let mut dims = BTreeMap::new();
        dims.insert(k, 1);
        ChainComplex { dims, diffs: BTreeMap::new() }
    }

    /// `D(k)`: ℚ in degrees `k` and `k−1` with identity differential.
    pub fn disk(k: i64) -> Self {
        let mut dims = BTreeMap::new();
        dims.insert(k, 1);
        dims.insert(k - 1, 1);
        let mut diffs = BTreeMap::new();
        diffs.insert(k, Matrix::identity(1));
        ChainComplex { dims, diffs }
    }

    pub fn dim(&self, n: i64) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    /// Degrees with nonzero dimension, ascending.
    pub fn degrees(&self) -> Vec<i64> {
        self.dims.keys().copied().collect()
    }

    /// Degrees where either `self` or its shift could be nonzero, i.e. the
    /// union of supports of the complex and its differential targets.
    pub fn support_with_neighbors(&self) -> Vec<i64> {
        let mut degs: Vec<i64> = self.dims.keys().copied().collect();
        for &n in self.dims.keys() {
            degs.push(n - 1);
            degs.push(n + 1);
        }
        degs.sort_unstable();
        degs.dedup();
        degs
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// Differential `d_n : C_n → C_{n−1}`, materialized as a zero matrix when
    /// absent.
    pub fn diff(&self, n: i64) -> Matrix {
        match self.diffs.get(&n) {
            Some(m) => m.clone(),
            None => Matrix::zero(self.dim(n - 1), self.dim(n)),
        }
    }

    /// Checks `d∘d = 0` everywhere; on failure names the first bad degree.
    pub fn validate(&self) -> Result<(), ChainError> {
        for &n in self.dims.keys() {
            let dd = self.diff(n - 1).mul(&self.diff(n));
            if !dd.is_zero() {
                return Err(ChainError::NotAComplex(n));
            }
        }
        Ok(())
    }

    /// Direct sum with injections and projections.
    pub fn direct_sum(parts: &[&ChainComplex]) -> (ChainComplex, Vec<ChainMap>, Vec<ChainMap>) {
        let mut degs: Vec<i64> = parts.iter().flat_map(|c| c.degrees()).collect();
        degs.sort_unstable();
        degs.dedup();
        let mut dims = BTreeMap::new();
        for &n in &degs {
            let total: usize = parts.iter().map(|c| c.dim(n)).sum();
            if total > 0 {
                dims.insert(n, total);
            }
        }
        let mut diffs = BTreeMap::new();
        for &n in &degs {
            let blocks: Vec<Matrix> = parts.iter().map(|c| c.diff(n)).collect();
            diffs.insert(n, ratlin::block_diag(&blocks));
        }
        let sum = ChainComplex::new(dims, diffs).expect("direct sum is well formed");
        let mut injections = Vec::new();
        let mut projections = Vec::new();
        for (i, part) in parts.iter().enumerate() {
            let mut inj = BTreeMap::new();
            let mut proj = BTreeMap::new();
            for &n in &degs {
                let before: usize = parts[..i].iter().map(|c| c.dim(n)).sum();
                let here = part.dim(n);
                let total = sum.dim(n);
                if here == 0 || total == 0 {
                    continue;
                }
                let mut m = Matrix::zero(total, here);
                for k in 0..here {
                    *m.at_mut(before + k, k) = Rational::one();
                }
                inj.insert(n, m.clone());
                proj.insert(n, m.transpose());
            }
            injections.push(ChainMap::new((*part).clone(), sum.clone(), inj).expect("inclusion"));
            projections.push(ChainMap::new(sum.clone(), (*part).clone(), proj).expect("projection"));
        }
        (sum, injections, projections)
    }
}

/// A degreewise matrix map between complexes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    comps: BTreeMap<i64, Matrix>,
}

impl ChainMap {
    /// Builds a map from components; shapes are checked and components are
    /// normalized to be present exactly where both endpoints are nonzero.
    /// Commutation with the differentials is checked by [`ChainMap::validate`].
    pub fn new(
        source: ChainComplex,
        target: ChainComplex,
        comps: BTreeMap<i64, Matrix>,
    ) -> Result<Self, ChainError> {
        let mut normalized = BTreeMap::new();
        for (&n, m) in &comps {
            let (want_rows, want_cols) = (target.dim(n), source.dim(n));
            if m.rows() != want_rows || m.cols() != want_cols {
                return Err(ChainError::CompShape {
                    degree: n,
                    got_rows: m.rows(),
                    got_cols: m.cols(),
                    want_rows,
                    want_cols,
                });
            }
            if want_rows > 0 && want_cols > 0 {
                normalized.insert(n, m.clone());
            }
        }
        for (&n, &sd) in source.dims() {
            if sd > 0 && target.dim(n) > 0 {
                normalized.entry(n).or_insert_with(|| Matrix::zero(target.dim(n), sd));
            }
        }
        Ok(ChainMap { source, target, comps: normalized })
    }

    pub fn identity(c: &ChainComplex) -> Self {
        let comps = c.degrees().iter().map(|&n| (n, Matrix::identity(c.dim(n)))).collect();
        ChainMap::new(c.clone(), c.clone(), comps).expect("identity")
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Self {
        ChainMap::new(source.clone(), target.clone(), BTreeMap::new()).expect("zero map")
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn comp(&self, n: i64) -> Matrix {
        match self.comps.get(&n) {
            Some(m) => m.clone(),
            None => Matrix::zero(self.target.dim(n), self.source.dim(n)),
        }
    }

    /// Checks the chain-map condition `d∘f = f∘d` in every degree.
    pub fn validate(&self) -> Result<(), ChainError> {
        let mut degs = self.source.degrees();
        degs.extend(self.target.degrees());
        degs.sort_unstable();
        degs.dedup();
        for &n in &degs {
            let lhs = self.target.diff(n).mul(&self.comp(n));
            let rhs = self.comp(n - 1).mul(&self.source.diff(n));
            if lhs != rhs {
                return Err(ChainError::NotChainMap(n));
            }
        }
        Ok(())
    }

    pub fn compose(&self, first: &ChainMap) -> ChainMap {
        assert_eq!(
            first.target, self.source,
            "compose: inner target must equal outer source"
        );
        let mut comps = BTreeMap::new();
        for &n in &first.source.degrees() {
            if self.target.dim(n) > 0 && first.source.dim(n) > 0 {
                comps.insert(n, self.comp(n).mul(&first.comp(n)));
            }
        }
        ChainMap::new(first.source.clone(), self.target.clone(), comps).expect("compose")
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        assert_eq!(self.source, other.source);
        assert_eq!(self.target, other.target);
        let mut comps = BTreeMap::new();
        for &n in &self.source.degrees() {
            if self.target.dim(n) > 0 {
                comps.insert(n, self.comp(n).add(&other.comp(n)));
            }
        }
        ChainMap::new(self.source.clone(), self.target.clone(), comps).expect("add")
    }

    pub fn sub(&self, other: &ChainMap) -> ChainMap {
        assert_eq!(self.source, other.source);
        assert_eq!(self.target, other.target);
        let mut comps = BTreeMap::new();
        for &n in &self.source.degrees() {
            if self.target.dim(n) > 0 {
                comps.insert(n, self.comp(n).sub(&other.comp(n)));
            }
        }
        ChainMap::new(self.source.clone(), self.target.clone(), comps).expect("sub")
    }

    pub fn is_zero_map(&self) -> bool {
        self.comps.values().all(|m| m.is_zero())
    }

    pub fn is_degreewise_injective(&self) -> bool {
        self.source.degrees().iter().all(|&n| is_injective(&self.comp(n)))
    }

    pub fn is_degreewise_surjective(&self) -> bool {
        self.target.degrees().iter().all(|&n| is_surjective(&self.comp(n)))
    }

    pub fn is_degreewise_iso(&self) -> bool {
        self.is_degreewise_injective() && self.is_degreewise_surjective()
    }

    /// Degreewise matrix inverse; fails if any component is not invertible.
    pub fn inverse(&self) -> Result<ChainMap, ChainError> {
        let mut comps = BTreeMap::new();
        let mut degs = self.source.degrees();
        degs.extend(self.target.degrees());
        degs.sort_unstable();
        degs.dedup();
        for &n in &degs {
            let m = self.comp(n);
            if m.rows() != m.cols() {
                return Err(ChainError::NotInvertible(n));
            }
            if m.rows() == 0 {
                continue;
            }
            let inv = ratlin::inverse(&m).map_err(|_| ChainError::NotInvertible(n))?;
            comps.insert(n, inv);
        }
        ChainMap::new(self.target.clone(), self.source.clone(), comps)
    }
}

/// `u ∘ s = t` for a degreewise surjective `s`; errors if `t` does not factor.
pub fn factor_through_surjection(s: &ChainMap, t: &ChainMap) -> Result<ChainMap, ChainError> {
    assert_eq!(s.source(), t.source(), "factor: sources must agree");
    let mut comps = BTreeMap::new();
    for &n in &s.target().degrees() {
        if t.target().dim(n) == 0 {
            continue;
        }
        let sr = right_inverse(&s.comp(n)).map_err(|_| ChainError::NoFactorization)?;
        comps.insert(n, t.comp(n).mul(&sr));
    }
    let u = ChainMap::new(s.target().clone(), t.target().clone(), comps)?;
    for &n in &s.source().degrees() {
        if u.comp(n).mul(&s.comp(n)) != t.comp(n) {
            return Err(ChainError::NoFactorization);
        }
    }
    u.validate()?;
    Ok(u)
}

/// `i ∘ u = t` for a degreewise injective `i`; errors if `t` does not land in
/// the image of `i`.
pub fn factor_through_injection(i: &ChainMap, t: &ChainMap) -> Result<ChainMap, ChainError> {
    assert_eq!(i.target(), t.target(), "factor: targets must agree");
    let mut comps = BTreeMap::new();
    for &n in &t.source().degrees() {
        if i.source().dim(n) == 0 {
            if !t.comp(n).is_zero() {
                return Err(ChainError::NoFactorization);
            }
            continue;
        }
        let li = left_inverse(&i.comp(n)).map_err(|_| ChainError::NoFactorization)?;
        comps.insert(n, li.mul(&t.comp(n)));
    }
    let u = ChainMap::new(t.source().clone(), i.source().clone(), comps)?;
    for &n in &t.source().degrees() {
        if i.comp(n).mul(&u.comp(n)) != t.comp(n) {
            return Err(ChainError::NoFactorization);
        }
    }
    u.validate()?;
    Ok(u)
}

// ---------------------------------------------------------------------------
// Tensor product
// ---------------------------------------------------------------------------

/// Basis labels of `multi_tensor(xs)` in degree `n`, in enumeration order:
/// each label is the per-factor degrees plus the per-factor basis indices.
pub fn multi_labels(xs: &[&ChainComplex], n: i64) -> Vec<(Vec<i64>, Vec<usize>)> {
    match xs.len() {
        0 => {
            if n == 0 {
                vec![(vec![], vec![])]
            } else {
                vec![]
            }
        }
        _ => {
            let (prefix, last) = xs.split_at(xs.len() - 1);
            let last = last[0];
            // Fold order: prefix degree ascending, then prefix label order,
            // then the last factor's index.
            let mut prefix_degrees: Vec<i64> = if prefix.is_empty() {
                vec![0]
            } else {
                let mut degs: Vec<i64> = vec![];
                collect_sum_degrees(prefix, &mut degs);
                degs
            };
            prefix_degrees.sort_unstable();
            prefix_degrees.dedup();
            let mut out = Vec::new();
            for &s in &prefix_degrees {
                let r = n - s;
                let last_dim = last.dim(r);
                if last_dim == 0 {
                    continue;
                }
                for (degs, idxs) in multi_labels(prefix, s) {
                    for k in 0..last_dim {
                        let mut d2 = degs.clone();
                        d2.push(r);
                        let mut i2 = idxs.clone();
                        i2.push(k);
                        out.push((d2, i2));
                    }
                }
            }
            out
        }
    }
}

fn collect_sum_degrees(xs: &[&ChainComplex], out: &mut Vec<i64>) {
    // All achievable total degrees of the multi tensor of xs.
    let mut totals = vec![0i64];
    for x in xs {
        let mut next = Vec::new();
        for t in &totals {
            for d in x.degrees() {
                next.push(t + d);
            }
        }
        next.sort_unstable();
        next.dedup();
        totals = next;
        if totals.is_empty() {
            break;
        }
    }
    out.extend(totals);
}

/// Binary tensor product of complexes.
pub fn tensor(x: &ChainComplex, y: &ChainComplex) -> ChainComplex {
    let mut degs = Vec::new();
    for p in x.degrees() {
        for q in y.degrees() {
            degs.push(p + q);
        }
    }
    degs.sort_unstable();
    degs.dedup();
    let mut dims = BTreeMap::new();
    for &n in &degs {
        let total: usize = x
            .degrees()
            .iter()
            .map(|&p| x.dim(p) * y.dim(n - p))
            .sum();
        if total > 0 {
            dims.insert(n, total);
        }
    }
    // Block layout in degree n: blocks (p, n−p) for p ascending.
    let block_offset = |n: i64, p: i64| -> usize {
        x.degrees()
            .iter()
            .filter(|&&p2| p2 < p)
            .map(|&p2| x.dim(p2) * y.dim(n - p2))
            .sum()
    };
    let mut diffs = BTreeMap::new();
    for &n in &degs {
        let rows = dims.get(&(n - 1)).copied().unwrap_or(0);
        let cols = dims.get(&n).copied().unwrap_or(0);
        if rows == 0 || cols == 0 {
            continue;
        }
        let mut d = Matrix::zero(rows, cols);
        for p in x.degrees() {
            let q = n - p;
            let (xp, yq) = (x.dim(p), y.dim(q));
            if xp == 0 || yq == 0 {
                continue;
            }
            let co = block_offset(n, p);
            // d_X ⊗ id into block (p−1, q)
            if x.dim(p - 1) > 0 {
                let ro = block_offset(n - 1, p - 1);
                let dx = x.diff(p);
                for i2 in 0..x.dim(p - 1) {
                    for i in 0..xp {
                        let v = dx.at(i2, i);
                        if v.is_zero() {
                            continue;
                        }
                        for j in 0..yq {
                            *d.at_mut(ro + i2 * yq + j, co + i * yq + j) += v;
                        }
                    }
                }
            }
            // (−1)^p id ⊗ d_Y into block (p, q−1)
            if y.dim(q - 1) > 0 {
                let ro = block_offset(n - 1, p);
                let dy = y.diff(q);
                let sign = if p.rem_euclid(2) == 0 { Rational::one() } else { -Rational::one() };
                for i in 0..xp {
                    for j2 in 0..y.dim(q - 1) {
                        for j in 0..yq {
                            let v = dy.at(j2, j);
                            if !v.is_zero() {
                                *d.at_mut(ro + i * y.dim(q - 1) + j2, co + i * yq + j) += &sign * v;
                            }
                        }
                    }
                }
            }
        }
        diffs.insert(n, d);
    }
    ChainComplex::new(dims, diffs).expect("tensor complex")
}

/// Tensor product of chain maps (no Koszul sign: chain maps have degree 0).
pub fn tensor_map(f: &ChainMap, g: &ChainMap) -> ChainMap {
    let src = tensor(f.source(), g.source());
    let tgt = tensor(f.target(), g.target());
    let mut comps = BTreeMap::new();
    for &n in &src.degrees() {
        if tgt.dim(n) == 0 {
            continue;
        }
        let mut m = Matrix::zero(tgt.dim(n), src.dim(n));
        let mut co = 0usize;
        for p in f.source().degrees() {
            let q = n - p;
            let (sp, sq) = (f.source().dim(p), g.source().dim(q));
            if sp == 0 || sq == 0 {
                continue;
            }
            let (tp, tq) = (f.target().dim(p), g.target().dim(q));
            if tp > 0 && tq > 0 {
                let ro: usize = f
                    .target()
                    .degrees()
                    .iter()
                    .filter(|&&p2| p2 < p)
                    .map(|&p2| f.target().dim(p2) * g.target().dim(n - p2))
                    .sum();
                let block = f.comp(p).kronecker(&g.comp(q));
                for r in 0..block.rows() {
                    for c in 0..block.cols() {
                        let v = block.at(r, c);
                        if !v.is_zero() {
                            *m.at_mut(ro + r, co + c) = v.clone();
                        }
                    }
                }
            }
            co += sp * sq;
        }
        comps.insert(n, m);
    }
    ChainMap::new(src, tgt, comps).expect("tensor map")
}

/// Left-fold multi tensor; the empty product is the unit complex.
pub fn multi_tensor(xs: &[&ChainComplex]) -> ChainComplex {
    match xs.len() {
        0 => ChainComplex::unit(),
        1 => xs[0].clone(),
        _ => {
            let mut acc = tensor(xs[0], xs[1]);
            for x in &xs[2..] {
                acc = tensor(&acc, x);
            }
            acc
        }
    }
}

pub fn multi_tensor_map(fs: &[&ChainMap]) -> ChainMap {
    match fs.len() {
        0 => ChainMap::identity(&ChainComplex::unit()),
        1 => fs[0].clone(),
        _ => {
            let mut acc = tensor_map(fs[0], fs[1]);
            for f in &fs[2..] {
                acc = tensor_map(&acc, f);
            }
            acc
        }
    }
}

fn label_positions(xs: &[&ChainComplex], n: i64) -> BTreeMap<(Vec<i64>, Vec<usize>), usize> {
    multi_labels(xs, n)
        .into_iter()
        .enumerate()
        .map(|(i, l)| (l, i))
        .collect()
}

/// Koszul sign for reordering graded factors: the target at slot `i` receives
/// the source factor `σ(i)`.
fn koszul_sign(degs: &[i64], sigma: &Perm) -> Rational {
    let inv = sigma.inverse();
    let mut parity = 0i64;
    for a in 0..degs.len() {
        for b in a + 1..degs.len() {
            if inv.apply(a) > inv.apply(b) {
                parity += degs[a] * degs[b];
            }
        }
    }
    if parity.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Canonical symmetry isomorphism `multi(xs) → multi(xs·σ)` with
/// `(xs·σ)_i = xs[σ(i)]`, including Koszul signs.
pub fn permute_iso(xs: &[&ChainComplex], sigma: &Perm) -> ChainMap {
    assert_eq!(xs.len(), sigma.len());
    let src = multi_tensor(xs);
    let ys: Vec<&ChainComplex> = sigma.act_right(&xs.to_vec());
    let tgt = multi_tensor(&ys);
    let mut comps = BTreeMap::new();
    for &n in &src.degrees() {
        let tpos = label_positions(&ys, n);
        let slabels = multi_labels(xs, n);
        let mut m = Matrix::zero(tgt.dim(n), src.dim(n));
        for (j, (degs, idxs)) in slabels.iter().enumerate() {
            let tdegs = sigma.act_right(degs);
            let tidxs = sigma.act_right(idxs);
            let i = *tpos
                .get(&(tdegs, tidxs))
                .expect("permuted label exists in target");
            *m.at_mut(i, j) = koszul_sign(degs, sigma);
        }
        comps.insert(n, m);
    }
    ChainMap::new(src, tgt, comps).expect("permute iso")
}

/// Canonical regrouping isomorphism
/// `multi(xs) → multi([multi(g_1), …, multi(g_k)])` where the groups are the
/// consecutive slices of `xs` with the given sizes (sizes may be zero; an
/// empty group contributes the unit). No signs: factor order is unchanged.
pub fn regroup_iso(xs: &[&ChainComplex], sizes: &[usize]) -> ChainMap {
    assert_eq!(sizes.iter().sum::<usize>(), xs.len(), "regroup sizes");
    let src = multi_tensor(xs);
    let mut groups: Vec<Vec<&ChainComplex>> = Vec::new();
    let mut offset = 0;
    for &s in sizes {
        groups.push(xs[offset..offset + s].to_vec());
        offset += s;
    }
    let grouped: Vec<ChainComplex> = groups.iter().map(|g| multi_tensor(g)).collect();
    let grouped_refs: Vec<&ChainComplex> = grouped.iter().collect();
    let tgt = multi_tensor(&grouped_refs);
    let mut comps = BTreeMap::new();
    for &n in &src.degrees() {
        let tpos = label_positions(&grouped_refs, n);
        // Per-group label position lookup, per degree, built lazily.
        let mut group_pos: Vec<BTreeMap<i64, BTreeMap<(Vec<i64>, Vec<usize>), usize>>> =
            vec![BTreeMap::new(); groups.len()];
        let mut m = Matrix::zero(tgt.dim(n), src.dim(n));
        for (j, (degs, idxs)) in multi_labels(xs, n).iter().enumerate() {
            let mut gdegs = Vec::with_capacity(groups.len());
            let mut gidxs = Vec::with_capacity(groups.len());
            let mut off = 0;
            for (gi, g) in groups.iter().enumerate() {
                let span = g.len();
                let dpart = &degs[off..off + span];
                let ipart = &idxs[off..off + span];
                let gdeg: i64 = dpart.iter().sum();
                let table = group_pos[gi]
                    .entry(gdeg)
                    .or_insert_with(|| label_positions(g, gdeg));
                let pos = *table
                    .get(&(dpart.to_vec(), ipart.to_vec()))
                    .expect("group label exists");
                gdegs.push(gdeg);
                gidxs.push(pos);
                off += span;
            }
            let i = *tpos.get(&(gdegs, gidxs)).expect("grouped label exists");
            *m.at_mut(i, j) = Rational::one();
        }
        comps.insert(n, m);
    }
    ChainMap::new(src, tgt, comps).expect("regroup iso")
}

/// Symmetry `τ : x⊗y → y⊗x`.
pub fn symmetry(x: &ChainComplex, y: &ChainComplex) -> ChainMap {
    permute_iso(&[x, y], &Perm::adjacent(2, 0))
}

/// Associator `(x⊗y)⊗z → x⊗(y⊗z)`.
pub fn assoc_iso(x: &ChainComplex, y: &ChainComplex, z: &ChainComplex) -> ChainMap {
    regroup_iso(&[x, y, z], &[1, 2])
}

/// `x → 1⊗…⊗1⊗x⊗1⊗…⊗1` with the stated numbers of unit factors.
pub fn pad_units_iso(x: &ChainComplex, before: usize, after: usize) -> ChainMap {
    let mut sizes = vec![0usize; before];
    sizes.push(1);
    sizes.extend(std::iter::repeat(0).take(after));
    regroup_iso(&[x], &sizes)
}

/// `1⊗x → x`.
pub fn unit_left_iso(x: &ChainComplex) -> ChainMap {
    pad_units_iso(x, 1, 0).inverse().expect("unitor")
}

/// `x⊗1 → x`.
pub fn unit_right_iso(x: &ChainComplex) -> ChainMap {
    pad_units_iso(x, 0, 1).inverse().expect("unitor")
}

// ---------------------------------------------------------------------------
// Homology and model predicates
// ---------------------------------------------------------------------------

/// Pivot bases for homology in one degree: `cycles` is a kernel basis of
/// `d_n`, and `proj` maps cycle coordinates onto homology coordinates.
#[derive(Debug, Clone)]
pub struct HomologyBasis {
    pub cycles: Matrix,
    pub proj: Matrix,
    pub dim: usize,
}

pub fn homology_basis(c: &ChainComplex, n: i64) -> HomologyBasis {
    let cycles = kernel_basis(&c.diff(n));
    // Express boundaries in cycle coordinates and quotient them out.
    let boundaries = c.diff(n + 1);
    let in_cycles = ratlin::solve(&cycles, &boundaries).expect("boundaries are cycles");
    let (proj, dim) = cokernel_projection(&in_cycles);
    HomologyBasis { cycles, proj, dim }
}

/// Dimensions of homology in every supported degree (zeros included).
pub fn homology(c: &ChainComplex) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for &n in &c.degrees() {
        out.insert(n, homology_basis(c, n).dim);
    }
    out
}

/// The induced map on degree-`n` homology.
pub fn homology_map(f: &ChainMap, n: i64) -> Matrix {
    let hs = homology_basis(f.source(), n);
    let ht = homology_basis(f.target(), n);
    // f sends cycles to cycles; read the image in target cycle coordinates.
    let img = f.comp(n).mul(&hs.cycles);
    let in_cycles = ratlin::solve(&ht.cycles, &img).expect("image of a cycle is a cycle");
    ht.proj.mul(&in_cycles)
}

/// True if `f` induces isomorphisms on homology in all degrees.
pub fn is_quasi_iso(f: &ChainMap) -> bool {
    let mut degs = f.source().degrees();
    degs.extend(f.target().degrees());
    degs.sort_unstable();
    degs.dedup();
    for n in degs {
        let hs = homology_basis(f.source(), n);
        let ht = homology_basis(f.target(), n);
        if hs.dim != ht.dim {
            return false;
        }
        if hs.dim == 0 {
            continue;
        }
        let m = homology_map(f, n);
        if rank(&m) != hs.dim {
            return false;
        }
    }
    true
}

/// Model-structure classification of a chain map over ℚ: cofibrations are the
/// degreewise injections, fibrations the degreewise surjections, weak
/// equivalences the quasi-isomorphisms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct MapClass {
    pub is_cofibration: bool,
    pub is_fibration: bool,
    pub is_weak_equivalence: bool,
    pub is_trivial_cofibration: bool,
    pub is_trivial_fibration: bool,
}

pub fn classify_map(f: &ChainMap) -> MapClass {
    let cof = f.is_degreewise_injective();
    let fib = f.is_degreewise_surjective();
    let weq = is_quasi_iso(f);
    MapClass {
        is_cofibration: cof,
        is_fibration: fib,
        is_weak_equivalence: weq,
        is_trivial_cofibration: cof && weq,
        is_trivial_fibration: fib && weq,
    }
}

// ---------------------------------------------------------------------------
// Kernel / image / cokernel
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct Factorization {
    pub kernel: ChainComplex,
    pub kernel_inclusion: ChainMap,
    pub image: ChainComplex,
    pub image_inclusion: ChainMap,
    /// Corestriction of `f` onto its image; `image_inclusion ∘ corestriction = f`.
    pub corestriction: ChainMap,
    pub cokernel: ChainComplex,
    pub cokernel_projection: ChainMap,
}

/// Degreewise kernel, image, and cokernel with induced differentials.
pub fn factorize(f: &ChainMap) -> Factorization {
    let src = f.source();
    let tgt = f.target();
    let mut degs = src.degrees();
    degs.extend(tgt.degrees());
    degs.sort_unstable();
    degs.dedup();

    let mut ker_bases = BTreeMap::new();
    let mut img_bases = BTreeMap::new();
    let mut coker_projs = BTreeMap::new();
    for &n in &degs {
        ker_bases.insert(n, kernel_basis(&f.comp(n)));
        img_bases.insert(n, image_basis(&f.comp(n)));
        coker_projs.insert(n, cokernel_projection(&f.comp(n)).0);
    }

    let build = |bases: &BTreeMap<i64, Matrix>,
                 ambient: &ChainComplex,
                 cols: bool|
     -> (ChainComplex, ChainMap) {
        // cols = true: basis matrices are inclusions (columns span subspace);
        // cols = false: matrices are projections onto a quotient.
        let mut dims = BTreeMap::new();
        for (&n, m) in bases {
            let d = if cols { m.cols() } else { m.rows() };
            if d > 0 {
                dims.insert(n, d);
            }
        }
        let mut diffs = BTreeMap::new();
        for (&n, m) in bases {
            let below = bases.get(&(n - 1));
            let (dn, db) = (
                if cols { m.cols() } else { m.rows() },
                below.map_or(0, |b| if cols { b.cols() } else { b.rows() }),
            );
            if dn == 0 || db == 0 {
                continue;
            }
            let b = below.unwrap();
            let d = if cols {
                // Restrict the ambient differential to the subcomplex.
                let through = ambient.diff(n).mul(m);
                ratlin::solve(b, &through).expect("differential preserves the subspace")
            } else {
                // Descend the ambient differential to the quotient.
                let through = b.mul(&ambient.diff(n));
                let ri = right_inverse(m).expect("projection is surjective");
                through.mul(&ri)
            };
            diffs.insert(n, d);
        }
        let complex = ChainComplex::new(dims, diffs).expect("factorization complex");
        let mut comps = BTreeMap::new();
        for (&n, m) in bases {
            comps.insert(n, m.clone());
        }
        let map = if cols {
            ChainMap::new(complex.clone(), ambient.clone(), comps).expect("inclusion")
        } else {
            ChainMap::new(ambient.clone(), complex.clone(), comps).expect("projection")
        };
        (complex, map)
    };

    let (kernel, kernel_inclusion) = build(&ker_bases, src, true);
    let (image, image_inclusion) = build(&img_bases, tgt, true);
    let (cokernel, cokernel_projection) = build(&coker_projs, tgt, false);
    let corestriction =
        factor_through_injection(&image_inclusion, f).expect("f lands in its image");

    debug_assert!(kernel.validate().is_ok());
    debug_assert!(image.validate().is_ok());
    debug_assert!(cokernel.validate().is_ok());

    Factorization {
        kernel,
        kernel_inclusion,
        image,
        image_inclusion,
        corestriction,
        cokernel,
        cokernel_projection,
    }
}

// ---------------------------------------------------------------------------
// Finite colimits and limits
// ---------------------------------------------------------------------------

/// A finite diagram of complexes: nodes plus edges carrying chain maps.
#[derive(Debug, Clone)]
pub struct Diagram {
    pub nodes: Vec<ChainComplex>,
    pub edges: Vec<(usize, usize, ChainMap)>,
}

impl Diagram {
    pub fn new(nodes: Vec<ChainComplex>, edges: Vec<(usize, usize, ChainMap)>) -> Result<Self, ChainError> {
        for (k, (a, b, f)) in edges.iter().enumerate() {
            if *a >= nodes.len()
                || *b >= nodes.len()
                || f.source() != &nodes[*a]
                || f.target() != &nodes[*b]
            {
                return Err(ChainError::BadEdge { edge: k });
            }
        }
        Ok(Diagram { nodes, edges })
    }
}

/// A computed colimit: the object, one injection per node, and the data
/// needed to produce mediating maps.
#[derive(Debug, Clone)]
pub struct Colimit {
    pub object: ChainComplex,
    pub injections: Vec<ChainMap>,
    diagram: Diagram,
    sum: ChainComplex,
    sum_injections: Vec<ChainMap>,
    proj: ChainMap,
}

impl Colimit {
    /// The unique map out of the colimit restricting to the given cocone.
    /// Verifies cocone compatibility and the factorization.
    pub fn mediate(&self, cocone: &[ChainMap]) -> Result<ChainMap, ChainError> {
        assert_eq!(cocone.len(), self.diagram.nodes.len(), "cocone size");
        let target = cocone
            .first()
            .map(|f| f.target().clone())
            .unwrap_or_else(ChainComplex::zero);
        for (i, leg) in cocone.iter().enumerate() {
            if leg.source() != &self.diagram.nodes[i] || leg.target() != &target {
                return Err(ChainError::Mismatch(format!("cocone leg {i}")));
            }
        }
        for (k, (a, b, f)) in self.diagram.edges.iter().enumerate() {
            if cocone[*b].compose(f) != cocone[*a] {
                return Err(ChainError::IncompatibleCone { edge: k });
            }
        }
        // Assemble ⊕nodes → target and push through the quotient.
        let mut assembled = ChainMap::zero(&self.sum, &target);
        for (i, leg) in cocone.iter().enumerate() {
            assembled =
                assembled.add(&leg.compose(&factor_section(&self.sum_injections[i], &self.sum)));
        }
        factor_through_surjection(&self.proj, &assembled)
    }
}

/// Projection ⊕ → part determined by an injection into a direct sum whose
/// blocks are orthogonal coordinate spans.
fn factor_section(inj: &ChainMap, sum: &ChainComplex) -> ChainMap {
    // inj: part → sum is a coordinate inclusion; its transpose is the projection.
    let mut comps = BTreeMap::new();
    for &n in &sum.degrees() {
        if inj.source().dim(n) > 0 {
            comps.insert(n, inj.comp(n).transpose());
        }
    }
    ChainMap::new(sum.clone(), inj.source().clone(), comps).expect("block projection")
}

/// Degreewise colimit of a finite diagram, with verified induced differential.
pub fn colimit(diagram: &Diagram) -> Colimit {
    let node_refs: Vec<&ChainComplex> = diagram.nodes.iter().collect();
    let (sum, sum_injections, _) = ChainComplex::direct_sum(&node_refs);
    // Relations: for each edge (a, b, f), image of incl_b∘f − incl_a.
    let mut rel_cols: BTreeMap<i64, Vec<Matrix>> = BTreeMap::new();
    for &n in &sum.degrees() {
        rel_cols.insert(n, Vec::new());
    }
    for (a, b, f) in &diagram.edges {
        let rel = sum_injections[*b]
            .compose(f)
            .sub(&sum_injections[*a]);
        for &n in &sum.degrees() {
            if diagram.nodes[*a].dim(n) > 0 {
                rel_cols.get_mut(&n).unwrap().push(rel.comp(n));
            }
        }
    }
    let mut projs = BTreeMap::new();
    let mut dims = BTreeMap::new();
    for &n in &sum.degrees() {
        let blocks = &rel_cols[&n];
        let rel = if blocks.is_empty() {
            Matrix::zero(sum.dim(n), 0)
        } else {
            Matrix::hstack_all(sum.dim(n), blocks)
        };
        let (p, dim) = cokernel_projection(&rel);
        if dim > 0 {
            dims.insert(n, dim);
        }
        projs.insert(n, p);
    }
    let mut diffs = BTreeMap::new();
    for &n in &sum.degrees() {
        let rows = dims.get(&(n - 1)).copied().unwrap_or(0);
        let cols = dims.get(&n).copied().unwrap_or(0);
        if rows == 0 || cols == 0 {
            continue;
        }
        // Descend ⊕d through the projections.
        let through = projs[&(n - 1)].mul(&sum.diff(n));
        let ri = right_inverse(&projs[&n]).expect("colimit projection is surjective");
        diffs.insert(n, through.mul(&ri));
    }
    let object = ChainComplex::new(dims, diffs).expect("colimit complex");
    debug_assert!(object.validate().is_ok());
    let mut proj_comps = BTreeMap::new();
    for (&n, p) in &projs {
        if object.dim(n) > 0 && sum.dim(n) > 0 {
            proj_comps.insert(n, p.clone());
        }
    }
    let proj = ChainMap::new(sum.clone(), object.clone(), proj_comps).expect("colimit projection");
    debug_assert!(proj.validate().is_ok());
    let injections: Vec<ChainMap> = sum_injections
        .iter()
        .map(|inj| proj.compose(inj))
        .collect();
    Colimit {
        object,
        injections,
        diagram: diagram.clone(),
        sum,
        sum_injections,
        proj,
    }
}

/// A computed limit: the object, one projection per node, and the inclusion
/// into the product used for mediating maps.
#[derive(Debug, Clone)]
pub struct Limit {
    pub object: ChainComplex,
    pub projections: Vec<ChainMap>,
    diagram: Diagram,
    product: ChainComplex,
    product_projections: Vec<ChainMap>,
    incl: ChainMap,
}

impl Limit {
    /// The unique map into the limit restricting to the given cone.
    pub fn mediate(&self, cone: &[ChainMap]) -> Result<ChainMap, ChainError> {
        assert_eq!(cone.len(), self.diagram.nodes.len(), "cone size");
        let source = cone
            .first()
            .map(|f| f.source().clone())
            .unwrap_or_else(ChainComplex::zero);
        for (i, leg) in cone.iter().enumerate() {
            if leg.target() != &self.diagram.nodes[i] || leg.source() != &source {
                return Err(ChainError::Mismatch(format!("cone leg {i}")));
            }
        }
        for (k, (a, b, f)) in self.diagram.edges.iter().enumerate() {
            if f.compose(&cone[*a]) != cone[*b] {
                return Err(ChainError::IncompatibleCone { edge: k });
            }
        }
        let mut assembled = ChainMap::zero(&source, &self.product);
        for (i, leg) in cone.iter().enumerate() {
            // Transpose of the product projection is the block inclusion.
            let mut comps = BTreeMap::new();
            for &n in &self.product.degrees() {
                if self.diagram.nodes[i].dim(n) > 0 {
                    comps.insert(n, self.product_projections[i].comp(n).transpose());
                }
            }
            let incl_i = ChainMap::new(
                self.diagram.nodes[i].clone(),
                self.product.clone(),
                comps,
            )
            .expect("block inclusion");
            assembled = assembled.add(&incl_i.compose(leg));
        }
        factor_through_injection(&self.incl, &assembled)
    }
}

/// Degreewise limit of a finite diagram.
pub fn limit(diagram: &Diagram) -> Limit {
    let node_refs: Vec<&ChainComplex> = diagram.nodes.iter().collect();
    let (product, prod_injections, product_projections) = ChainComplex::direct_sum(&node_refs);
    // Constraints: for each edge (a, b, f), f∘pr_a − pr_b must vanish.
    let mut constraint_rows: BTreeMap<i64, Vec<Matrix>> = BTreeMap::new();
    for &n in &product.degrees() {
        constraint_rows.insert(n, Vec::new());
    }
    for (a, b, f) in &diagram.edges {
        let con = f
            .compose(&product_projections[*a])
            .sub(&product_projections[*b]);
        for &n in &product.degrees() {
            if diagram.nodes[*b].dim(n) > 0 {
                constraint_rows.get_mut(&n).unwrap().push(con.comp(n));
            }
        }
    }
    let mut bases = BTreeMap::new();
    let mut dims = BTreeMap::new();
    for &n in &product.degrees() {
        let blocks = &constraint_rows[&n];
        let con = if blocks.is_empty() {
            Matrix::zero(0, product.dim(n))
        } else {
            Matrix::vstack_all(product.dim(n), blocks)
        };
        let k = kernel_basis(&con);
        if k.cols() > 0 {
            dims.insert(n, k.cols());
        }
        bases.insert(n, k);
    }
    let mut diffs = BTreeMap::new();
    for &n in &product.degrees() {
        let rows = dims.get(&(n - 1)).copied().unwrap_or(0);
        let cols = dims.get(&n).copied().unwrap_or(0);
        if rows == 0 || cols == 0 {
            continue;
        }
        let through = product.diff(n).mul(&bases[&n]);
        let li = left_inverse(&bases[&(n - 1)]).expect("limit basis is injective");
        diffs.insert(n, li.mul(&through));
    }
    let object = ChainComplex::new(dims, diffs).expect("limit complex");
    debug_assert!(object.validate().is_ok());
    let mut incl_comps = BTreeMap::new();
    for (&n, k) in &bases {
        if object.dim(n) > 0 && product.dim(n) > 0 {
            incl_comps.insert(n, k.clone());
        }
    }
    let incl = ChainMap::new(object.clone(), product.clone(), incl_comps).expect("limit inclusion");
    debug_assert!(incl.validate().is_ok());
    let projections: Vec<ChainMap> = product_projections
        .iter()
        .map(|p| p.compose(&incl))
        .collect();
    let _ = prod_injections;
    Limit {
        object,
        projections,
        diagram: diagram.clone(),
        product,
        product_projections,
        incl,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::rat;

    fn two_step_invalid() -> ChainComplex {
        // ℚ in degrees 2,1,0 with both differentials the identity.
        let mut dims = BTreeMap::new();
        dims.insert(0, 1);
        dims.insert(1, 1);
        dims.insert(2, 1);
        let mut diffs = BTreeMap::new();
        diffs.insert(1, Matrix::identity(1));
        diffs.insert(2, Matrix::identity(1));
        ChainComplex::new(dims, diffs).unwrap()
    }

    #[test]
    fn validate_complex_cases() {
        assert!(ChainComplex::zero().validate().is_ok());
        assert!(ChainComplex::disk(1).validate().is_ok());
        assert_eq!(two_step_invalid().validate(), Err(ChainError::NotAComplex(2)));
    }

    #[test]
    fn tensor_unit_law() {
        let s1 = ChainComplex::sphere(1);
        let t = tensor(&ChainComplex::unit(), &s1);
        assert_eq!(t.dims(), s1.dims());
        let u = unit_left_iso(&s1);
        assert!(u.validate().is_ok());
        assert!(u.is_degreewise_iso());
    }

    #[test]
    fn koszul_sign_on_spheres() {
        // S(1)⊗S(1) = S(2) and τ = −1 in degree 2.
        let s1 = ChainComplex::sphere(1);
        let t = tensor(&s1, &s1);
        assert_eq!(t.dim(2), 1);
        let tau = symmetry(&s1, &s1);
        assert_eq!(tau.comp(2), Matrix::from_rows(&[&[-1]]));
        assert_eq!(tau.compose(&tau), ChainMap::identity(&t));
    }

    #[test]
    fn disk_tensor_disk_is_acyclic() {
        let d = ChainComplex::disk(1);
        let t = tensor(&d, &d);
        assert_eq!(t.dim(2), 1);
        assert_eq!(t.dim(1), 2);
        assert_eq!(t.dim(0), 1);
        assert!(t.validate().is_ok());
        for (_, h) in homology(&t) {
            assert_eq!(h, 0);
        }
    }

    #[test]
    fn homology_examples() {
        let s3 = ChainComplex::sphere(3);
        assert_eq!(homology(&s3), BTreeMap::from([(3, 1)]));
        let d1 = ChainComplex::disk(1);
        assert!(homology(&d1).values().all(|&h| h == 0));
        // ℚ²→ℚ² in degrees 1,0 with d = [[1,0],[0,0]]: H1 = H0 = ℚ.
        let mut dims = BTreeMap::new();
        dims.insert(0, 2);
        dims.insert(1, 2);
        let mut diffs = BTreeMap::new();
        diffs.insert(1, Matrix::from_rows(&[&[1, 0], &[0, 0]]));
        let c = ChainComplex::new(dims, diffs).unwrap();
        assert_eq!(homology(&c), BTreeMap::from([(0, 1), (1, 1)]));
    }

    #[test]
    fn classify_basic_maps() {
        let s0 = ChainComplex::sphere(0);
        let id = ChainMap::identity(&s0);
        let cls = classify_map(&id);
        assert!(cls.is_cofibration && cls.is_fibration && cls.is_weak_equivalence);
        assert!(cls.is_trivial_cofibration && cls.is_trivial_fibration);

        let from_zero = ChainMap::zero(&ChainComplex::zero(), &s0);
        let cls = classify_map(&from_zero);
        assert!(cls.is_cofibration && !cls.is_fibration && !cls.is_weak_equivalence);

        let d1 = ChainComplex::disk(1);
        let to_zero = ChainMap::zero(&d1, &ChainComplex::zero());
        let cls = classify_map(&to_zero);
        assert!(cls.is_fibration && cls.is_weak_equivalence && !cls.is_cofibration);
        assert!(cls.is_trivial_fibration);
    }

    #[test]
    fn factorize_cases() {
        let s0 = ChainComplex::sphere(0);
        // zero map S(0)→S(0)
        let z = ChainMap::zero(&s0, &s0);
        let f = factorize(&z);
        assert_eq!(f.kernel.total_dim(), 1);
        assert_eq!(f.image.total_dim(), 0);
        assert_eq!(f.cokernel.total_dim(), 1);

        let id = ChainMap::identity(&s0);
        let f = factorize(&id);
        assert_eq!(f.kernel.total_dim(), 0);
        assert_eq!(f.cokernel.total_dim(), 0);

        // ℚ²→ℚ in degree 0, matrix [1,1]: ker dim 1, coker 0.
        let q2 = ChainComplex::new(BTreeMap::from([(0, 2)]), BTreeMap::new()).unwrap();
        let m = ChainMap::new(q2, s0.clone(), BTreeMap::from([(0, Matrix::from_rows(&[&[1, 1]]))])).unwrap();
        let f = factorize(&m);
        assert_eq!(f.kernel.total_dim(), 1);
        assert_eq!(f.cokernel.total_dim(), 0);
        // image inclusion composed with cokernel projection is zero
        assert!(f.cokernel_projection.compose(&f.image_inclusion).is_zero_map());
    }

    #[test]
    fn pushout_of_zero_span_is_direct_sum() {
        let x = ChainComplex::sphere(0);
        let y = ChainComplex::sphere(1);
        let zero = ChainComplex::zero();
        let d = Diagram::new(
            vec![zero.clone(), x.clone(), y.clone()],
            vec![
                (0, 1, ChainMap::zero(&zero, &x)),
                (0, 2, ChainMap::zero(&zero, &y)),
            ],
        )
        .unwrap();
        let c = colimit(&d);
        assert_eq!(c.object.total_dim(), 2);
        // codiagonal: pushout of ℚ ←id— ℚ —id→ ℚ is ℚ
        let q = ChainComplex::sphere(0);
        let d = Diagram::new(
            vec![q.clone(), q.clone(), q.clone()],
            vec![
                (0, 1, ChainMap::identity(&q)),
                (0, 2, ChainMap::identity(&q)),
            ],
        )
        .unwrap();
        let c = colimit(&d);
        assert_eq!(c.object.total_dim(), 1);
        // mediating map for the identity cocone
        let med = c
            .mediate(&[
                ChainMap::identity(&q),
                ChainMap::identity(&q),
                ChainMap::identity(&q),
            ])
            .unwrap();
        assert!(med.is_degreewise_iso());
    }

    #[test]
    fn limit_of_identity_cospan() {
        let q = ChainComplex::sphere(0);
        let d = Diagram::new(
            vec![q.clone(), q.clone(), q.clone()],
            vec![
                (0, 2, ChainMap::identity(&q)),
                (1, 2, ChainMap::identity(&q)),
            ],
        )
        .unwrap();
        let l = limit(&d);
        assert_eq!(l.object.total_dim(), 1);
        let med = l
            .mediate(&[
                ChainMap::identity(&q),
                ChainMap::identity(&q),
                ChainMap::identity(&q),
            ])
            .unwrap();
        assert!(med.is_degreewise_iso());
    }

    #[test]
    fn permute_iso_is_chain_iso() {
        let d1 = ChainComplex::disk(1);
        let s1 = ChainComplex::sphere(1);
        let s0 = ChainComplex::sphere(0);
        let xs: Vec<&ChainComplex> = vec![&d1, &s1, &s0];
        for p in Perm::all(3) {
            let iso = permute_iso(&xs, &p);
            assert!(iso.validate().is_ok(), "σ = {p:?}");
            assert!(iso.is_degreewise_iso());
        }
        // involution with sign: swap on S(1)⊗S(1)
        let tau = symmetry(&s1, &s1);
        assert_eq!(tau.comp(2).at(0, 0), &rat(-1));
    }

    #[test]
    fn regroup_iso_is_chain_iso() {
        let d1 = ChainComplex::disk(1);
        let s1 = ChainComplex::sphere(1);
        let s0 = ChainComplex::sphere(0);
        let xs: Vec<&ChainComplex> = vec![&d1, &s1, &s0];
        for sizes in [vec![1, 2], vec![2, 1], vec![3], vec![1, 1, 1], vec![0, 2, 1, 0]] {
            let iso = regroup_iso(&xs, &sizes);
            assert!(iso.validate().is_ok(), "sizes {sizes:?}");
            assert!(iso.is_degreewise_iso());
        }
        let a = assoc_iso(&d1, &s1, &s0);
        assert!(a.validate().is_ok());
        assert!(a.is_degreewise_iso());
    }

    #[test]
    fn multi_labels_match_fold_dims() {
        let d1 = ChainComplex::disk(1);
        let s1 = ChainComplex::sphere(1);
        let s0 = ChainComplex::sphere(0);
        let xs: Vec<&ChainComplex> = vec![&d1, &s1, &s0, &d1];
        let m = multi_tensor(&xs);
        for &n in &m.degrees() {
            assert_eq!(multi_labels(&xs, n).len(), m.dim(n), "degree {n}");
        }
    }

    #[test]
    fn factor_helpers() {
        let s0 = ChainComplex::sphere(0);
        let q2 = ChainComplex::new(BTreeMap::from([(0, 2)]), BTreeMap::new()).unwrap();
        let surj = ChainMap::new(
            q2.clone(),
            s0.clone(),
            BTreeMap::from([(0, Matrix::from_rows(&[&[1, 1]]))]),
        )
        .unwrap();
        let t = ChainMap::new(
            q2.clone(),
            s0.clone(),
            BTreeMap::from([(0, Matrix::from_rows(&[&[2, 2]]))]),
        )
        .unwrap();
        let u = factor_through_surjection(&surj, &t).unwrap();
        assert_eq!(u.comp(0), Matrix::from_rows(&[&[2]]));
        // incompatible target does not factor
        let bad = ChainMap::new(
            q2.clone(),
            s0.clone(),
            BTreeMap::from([(0, Matrix::from_rows(&[&[1, 0]]))]),
        )
        .unwrap();
        assert!(factor_through_surjection(&surj, &bad).is_err());
    }
}
