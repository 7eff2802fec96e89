//! Seeded, reproducible instance generation, plus the library of named
//! instances used across tests and bundled scenarios.
//!
//! Random complexes are sums of spheres and disks conjugated by random
//! unimodular changes of basis, so validity and homology are known by
//! construction. Cofibrations are free extensions (inclusion of a summand),
//! which makes the degreewise-injectivity precondition hold by construction.

use crate::algebra::{AlgebraMap, Bimodule, OperadAlgebra};
use crate::arrow::{self, ArrowMap, ArrowObject};
use crate::chain::{
    self, factor_through_injection, tensor, tensor_map, ChainComplex, ChainMap, Diagram,
};
use crate::ground::{ChainGround, Ground};
use crate::operad::{std_operad, Color, Operad, Profile, StdOperad};
use crate::perm::Perm;
use crate::ratlin::{rat, Matrix, Rational};
use crate::smith::SmithIdeal;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// The deterministic RNG used everywhere; one seed, one instance stream.
pub type Gen = ChaCha8Rng;

pub fn rng(seed: u64) -> Gen {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Bounds for random complexes.
#[derive(Debug, Clone, Copy)]
pub struct ComplexParams {
    pub min_degree: i64,
    pub max_degree: i64,
    pub max_dim_per_degree: usize,
    /// Maximum number of sphere/disk building blocks.
    pub max_pieces: usize,
}

impl Default for ComplexParams {
    fn default() -> Self {
        ComplexParams {
            min_degree: -2,
            max_degree: 2,
            max_dim_per_degree: 4,
            max_pieces: 3,
        }
    }
}

/// A random invertible degreewise change of basis with entries in {−1,0,1},
/// built from elementary shears and swaps.
fn random_unimodular(rng: &mut Gen, n: usize) -> Matrix {
    let mut m = Matrix::identity(n);
    if n < 2 {
        return m;
    }
    let ops = rng.gen_range(0..=2 * n);
    for _ in 0..ops {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        if rng.gen_bool(0.3) {
            // swap rows i and j
            for c in 0..n {
                let tmp = m.at(i, c).clone();
                *m.at_mut(i, c) = m.at(j, c).clone();
                *m.at_mut(j, c) = tmp;
            }
        } else {
            // shear: row_i += ±row_j
            let sign = if rng.gen_bool(0.5) { rat(1) } else { rat(-1) };
            for c in 0..n {
                let v = m.at(i, c) + &sign * m.at(j, c);
                *m.at_mut(i, c) = v;
            }
        }
    }
    m
}

/// Conjugates a complex by random degreewise unimodular matrices; the result
/// is isomorphic to the input with scrambled matrices. Returns the new
/// complex and the iso from the input.
pub fn scramble_complex(rng: &mut Gen, c: &ChainComplex) -> (ChainComplex, ChainMap) {
    let mut us = BTreeMap::new();
    for &n in &c.degrees() {
        us.insert(n, random_unimodular(rng, c.dim(n)));
    }
    let mut diffs = BTreeMap::new();
    for &n in &c.degrees() {
        if c.dim(n - 1) == 0 || c.dim(n) == 0 {
            continue;
        }
        let u_n = &us[&n];
        let u_prev = &us[&(n - 1)];
        let inv = crate::ratlin::inverse(u_n).expect("unimodular");
        diffs.insert(n, u_prev.mul(&c.diff(n)).mul(&inv));
    }
    let scrambled = ChainComplex::new(c.dims().clone(), diffs).expect("scrambled complex");
    let iso = ChainMap::new(c.clone(), scrambled.clone(), us).expect("scramble iso");
    debug_assert!(iso.validate().is_ok());
    (scrambled, iso)
}

/// A random bounded complex: a sum of spheres and disks, scrambled.
pub fn random_complex(rng: &mut Gen, params: &ComplexParams) -> ChainComplex {
    let pieces = rng.gen_range(0..=params.max_pieces);
    let mut parts: Vec<ChainComplex> = Vec::new();
    for _ in 0..pieces {
        let k = rng.gen_range(params.min_degree..=params.max_degree);
        if rng.gen_bool(0.5) {
            parts.push(ChainComplex::sphere(k));
        } else {
            parts.push(ChainComplex::disk(k));
        }
    }
    let refs: Vec<&ChainComplex> = parts.iter().collect();
    let (mut sum, _, _) = ChainComplex::direct_sum(&refs);
    // respect the per-degree bound by dropping pieces if necessary
    while sum.dims().values().any(|&d| d > params.max_dim_per_degree) {
        parts.pop();
        let refs: Vec<&ChainComplex> = parts.iter().collect();
        sum = ChainComplex::direct_sum(&refs).0;
    }
    scramble_complex(rng, &sum).0
}

/// A random acyclic complex: a sum of disks, scrambled.
pub fn random_acyclic(rng: &mut Gen, params: &ComplexParams) -> ChainComplex {
    let pieces = rng.gen_range(0..=params.max_pieces);
    let mut parts: Vec<ChainComplex> = Vec::new();
    for _ in 0..pieces {
        let k = rng.gen_range(params.min_degree..=params.max_degree);
        parts.push(ChainComplex::disk(k));
    }
    let refs: Vec<&ChainComplex> = parts.iter().collect();
    let sum = ChainComplex::direct_sum(&refs).0;
    scramble_complex(rng, &sum).0
}

/// A random degreewise-injective map (a cofibration): the inclusion of a
/// summand, scrambled on both sides. If `trivial` the complement is acyclic,
/// so the map is also a quasi-isomorphism.
pub fn random_cofibration(rng: &mut Gen, params: &ComplexParams, trivial: bool) -> ChainMap {
    let base = random_complex(rng, params);
    let extra = if trivial {
        random_acyclic(rng, params)
    } else {
        random_complex(rng, params)
    };
    let (sum, inj, _) = ChainComplex::direct_sum(&[&base, &extra]);
    let (src, src_iso) = scramble_complex(rng, &base);
    let (tgt, tgt_iso) = scramble_complex(rng, &sum);
    let f = tgt_iso
        .compose(&inj[0])
        .compose(&src_iso.inverse().expect("iso"));
    debug_assert_eq!(f.source(), &src);
    debug_assert_eq!(f.target(), &tgt);
    debug_assert!(f.validate().is_ok());
    debug_assert!(f.is_degreewise_injective());
    f
}

/// A random chain map between random complexes: elementary piece maps plus a
/// null-homotopic part, scrambled on both sides.
pub fn random_chain_map(rng: &mut Gen, params: &ComplexParams) -> ChainMap {
    let src0 = random_complex(rng, params);
    let tgt0 = random_complex(rng, params);
    // null-homotopic part: d∘r + r∘d for random r of degree +1
    let mut base = ChainMap::zero(&src0, &tgt0);
    for _ in 0..2 {
        let mut r_comps = BTreeMap::new();
        for &n in &src0.degrees() {
            if tgt0.dim(n + 1) == 0 {
                continue;
            }
            let entries: Vec<Rational> = (0..tgt0.dim(n + 1) * src0.dim(n))
                .map(|_| rat(rng.gen_range(-1..=1)))
                .collect();
            let m = Matrix::new(tgt0.dim(n + 1), src0.dim(n), entries).expect("shape");
            r_comps.insert(n, m);
        }
        // d_Y r + r d_X assembled degreewise
        let mut comps = BTreeMap::new();
        for &n in &src0.degrees() {
            if tgt0.dim(n) == 0 {
                continue;
            }
            let r_n = r_comps
                .get(&n)
                .cloned()
                .unwrap_or_else(|| Matrix::zero(tgt0.dim(n + 1), src0.dim(n)));
            let r_below = r_comps
                .get(&(n - 1))
                .cloned()
                .unwrap_or_else(|| Matrix::zero(tgt0.dim(n), src0.dim(n - 1)));
            let m = tgt0.diff(n + 1).mul(&r_n).add(&r_below.mul(&src0.diff(n)));
            comps.insert(n, m);
        }
        let h = ChainMap::new(src0.clone(), tgt0.clone(), comps).expect("homotopy part");
        base = base.add(&h);
    }
    debug_assert!(base.validate().is_ok());
    let (_, src_iso) = scramble_complex(rng, &src0);
    let (_, tgt_iso) = scramble_complex(rng, &tgt0);
    tgt_iso
        .compose(&base)
        .compose(&src_iso.inverse().expect("iso"))
}

/// A random commutative square in the arrow category, assembled from the
/// always-commuting families and closed under composition and direct sums.
pub fn random_arrow_map(rng: &mut Gen, params: &ComplexParams) -> ArrowMap {
    let simple = |rng: &mut Gen| -> ArrowMap {
        match rng.gen_range(0..5) {
            0 => {
                // L1(x) → L1(y): any top map
                let f = random_chain_map(rng, params);
                ArrowMap::new(
                    arrow::l1(f.source()),
                    arrow::l1(f.target()),
                    ChainMap::identity(&ChainComplex::zero()),
                    f,
                )
                .expect("L1 square")
            }
            1 => {
                // L0(w) → f: (α0, f∘α0)
                let f = random_chain_map(rng, params);
                let w = random_chain_map(rng, params);
                // reuse w's target as the common corner
                let alpha0 = w.clone();
                let src = arrow::l0(w.source());
                let g = compose_into(rng, f, w.target());
                let alpha1 = g.map().compose(&alpha0);
                ArrowMap::new(src, g, alpha0, alpha1).expect("L0 square")
            }
            2 => {
                // f → L0(w): (α1∘f, α1)
                let f = random_chain_map(rng, params);
                let alpha1 = compose_from(rng, f.target().clone());
                let tgt = arrow::l0(alpha1.target());
                let alpha0 = alpha1.compose(&f);
                ArrowMap::new(ArrowObject::new(f), tgt, alpha0, alpha1).expect("square to L0")
            }
            3 => {
                // map to the terminal object
                let f = random_chain_map(rng, params);
                let src = ArrowObject::new(f);
                ArrowMap::new(
                    src.clone(),
                    ArrowObject::zero(),
                    ChainMap::zero(src.ev0(), &ChainComplex::zero()),
                    ChainMap::zero(src.ev1(), &ChainComplex::zero()),
                )
                .expect("terminal square")
            }
            _ => {
                // adjunction unit at a random arrow
                let f = random_chain_map(rng, params);
                arrow::adjunction_unit(&ArrowObject::new(f))
            }
        }
    };
    let mut m = simple(rng);
    if rng.gen_bool(0.4) {
        let other = simple(rng);
        m = direct_sum_squares(&m, &other);
    }
    m
}

fn compose_into(rng: &mut Gen, f: ChainMap, common: &ChainComplex) -> ArrowObject {
    // an arrow with prescribed source `common`: common → f.target ⊕ padding
    let _ = rng;
    let (sum, inj, _) = ChainComplex::direct_sum(&[f.target(), common]);
    let _ = inj;
    ArrowObject::new(ChainMap::new(common.clone(), sum.clone(), {
        let mut comps = BTreeMap::new();
        for &n in &common.degrees() {
            if sum.dim(n) == 0 {
                continue;
            }
            let offset: usize = f.target().dim(n);
            let mut m = Matrix::zero(sum.dim(n), common.dim(n));
            for k in 0..common.dim(n) {
                *m.at_mut(offset + k, k) = rat(1);
            }
            comps.insert(n, m);
        }
        comps
    })
    .expect("padding inclusion"))
}

fn compose_from(rng: &mut Gen, src: ChainComplex) -> ChainMap {
    // a random map out of `src`: project to homology-ish quotient or zero
    let mut comps = BTreeMap::new();
    let tgt = src.clone();
    for &n in &src.degrees() {
        let m = Matrix::from_fn(tgt.dim(n), src.dim(n), |r, c| {
            if r == c {
                rat(1)
            } else {
                rat(0)
            }
        });
        comps.insert(n, m);
    }
    let _ = rng;
    ChainMap::new(src, tgt, comps).expect("identity-shaped map")
}

fn direct_sum_squares(a: &ArrowMap, b: &ArrowMap) -> ArrowMap {
    let g = crate::ground::ArrowTensorGround;
    let (src, src_inj, src_proj) = g.direct_sum(&[a.source().clone(), b.source().clone()]);
    let (tgt, tgt_inj, _) = g.direct_sum(&[a.target().clone(), b.target().clone()]);
    let alpha0 = tgt_inj[0]
        .alpha0()
        .compose(&a.alpha0().compose(src_proj[0].alpha0()))
        .add(&tgt_inj[1].alpha0().compose(&b.alpha0().compose(src_proj[1].alpha0())));
    let alpha1 = tgt_inj[0]
        .alpha1()
        .compose(&a.alpha1().compose(src_proj[0].alpha1()))
        .add(&tgt_inj[1].alpha1().compose(&b.alpha1().compose(src_proj[1].alpha1())));
    let _ = src_inj;
    ArrowMap::new(src, tgt, alpha0, alpha1).expect("sum of squares")
}

// ---------------------------------------------------------------------------
// Algebra library
// ---------------------------------------------------------------------------

/// A unital dg-algebra presentation: carrier, unit, and multiplication.
#[derive(Debug, Clone)]
pub struct DgAlgebra {
    pub carrier: ChainComplex,
    pub unit: ChainMap,
    pub mult: ChainMap,
}

impl DgAlgebra {
    /// `μ_n : A^{⊗n} → A` by left fold; `μ_1 = id`.
    pub fn mult_fold(&self, n: usize) -> ChainMap {
        assert!(n >= 1);
        let mut acc = ChainMap::identity(&self.carrier);
        for _ in 1..n {
            acc = self.mult.compose(&tensor_map(&acc, &ChainMap::identity(&self.carrier)));
        }
        acc
    }
}

/// The square-zero extension `ℚ ⊕ M` with `M·M = 0`; the unit is the first
/// summand. Graded-commutative, hence both an associative and a commutative
/// algebra.
pub fn square_zero(m: &ChainComplex) -> DgAlgebra {
    let one = ChainComplex::unit();
    let (carrier, inj, proj) = ChainComplex::direct_sum(&[&one, m]);
    let unit = inj[0].clone();
    // mult = u·u on 1⊗1, unitors on 1⊗M and M⊗1, zero on M⊗M
    let uu = inj[0]
        .compose(&chain::unit_left_iso(&one))
        .compose(&tensor_map(&proj[0], &proj[0]));
    let um = inj[1]
        .compose(&chain::unit_left_iso(m))
        .compose(&tensor_map(&proj[0], &proj[1]));
    let mu = inj[1]
        .compose(&chain::unit_right_iso(m))
        .compose(&tensor_map(&proj[1], &proj[0]));
    let mult = uu.add(&um).add(&mu);
    DgAlgebra { carrier, unit, mult }
}

/// `ℚ[t]/(t^k)` in degree 0 with basis `1, t, …, t^{k−1}`.
pub fn truncated_polynomial(k: usize) -> DgAlgebra {
    assert!(k >= 1);
    let carrier = ChainComplex::new(BTreeMap::from([(0, k)]), BTreeMap::new()).expect("algebra");
    let unit = ChainMap::new(
        ChainComplex::unit(),
        carrier.clone(),
        BTreeMap::from([(0, Matrix::from_fn(k, 1, |r, _| if r == 0 { rat(1) } else { rat(0) }))]),
    )
    .expect("unit");
    let mut mult_matrix = Matrix::zero(k, k * k);
    for i in 0..k {
        for j in 0..k {
            if i + j < k {
                *mult_matrix.at_mut(i + j, i * k + j) = rat(1);
            }
        }
    }
    let sq = tensor(&carrier, &carrier);
    let mult = ChainMap::new(sq, carrier.clone(), BTreeMap::from([(0, mult_matrix)]))
        .expect("multiplication");
    DgAlgebra { carrier, unit, mult }
}

/// The dual numbers `ℚ[ε]/(ε²)`.
pub fn dual_numbers() -> DgAlgebra {
    truncated_polynomial(2)
}

/// Packages a unital dg-algebra as an algebra over the one-colored
/// associative operad: `λ(e_τ; ā) = a_{τ(0)} ⋯ a_{τ(n−1)}`.
pub fn as_algebra(operad: &Operad<ChainGround>, alg: &DgAlgebra) -> OperadAlgebra<ChainGround> {
    assert_eq!(operad.colors(), 1);
    let g = ChainGround;
    let a = &alg.carrier;
    let mut lambda = BTreeMap::new();
    // nullary: the unit of the algebra (As(0) is the monoidal unit)
    lambda.insert((Profile::empty(), 0), alg.unit.clone());
    for n in 1..=operad.max_arity() {
        let profile = Profile(vec![0; n]);
        let entry = operad.entry(&g, &profile, 0);
        let a_list: Vec<ChainComplex> = vec![a.clone(); n];
        let mut factors = vec![entry.clone()];
        factors.extend(a_list.iter().cloned());
        let src = g.multi_tensor(&factors);
        let regroup = g.regroup_iso(&factors, &[1, n]);
        let mut total = ChainMap::zero(&src, a);
        for (idx, tau) in Perm::all(n).into_iter().enumerate() {
            // project the operad slot onto the τ-coordinate
            let mut delta = Matrix::zero(1, entry.dim(0));
            *delta.at_mut(0, idx) = rat(1);
            let delta = ChainMap::new(
                entry.clone(),
                ChainComplex::unit(),
                BTreeMap::from([(0, delta)]),
            )
            .expect("dual basis functional");
            let a_multi = g.multi_tensor(&a_list);
            let step = tensor_map(&delta, &ChainMap::identity(&a_multi));
            let strip = chain::unit_left_iso(&a_multi);
            let a_refs: Vec<&ChainComplex> = a_list.iter().collect();
            let permute = chain::permute_iso(&a_refs, &tau);
            let term = alg
                .mult_fold(n)
                .compose(&permute)
                .compose(&strip)
                .compose(&step)
                .compose(&regroup);
            total = total.add(&term);
        }
        lambda.insert((profile, 0), total);
    }
    OperadAlgebra {
        operad: operad.clone(),
        carriers: BTreeMap::from([(0, a.clone())]),
        lambda,
    }
}

/// Packages graded-commutative dg-algebras, one per color, as an algebra
/// over the diagonal commutative operad.
pub fn com_algebra(
    operad: &Operad<ChainGround>,
    algs: &[DgAlgebra],
) -> OperadAlgebra<ChainGround> {
    assert_eq!(operad.colors(), algs.len());
    let g = ChainGround;
    let mut lambda = BTreeMap::new();
    let mut carriers = BTreeMap::new();
    for (d, alg) in algs.iter().enumerate() {
        carriers.insert(d, alg.carrier.clone());
        lambda.insert((Profile::empty(), d), alg.unit.clone());
        for n in 1..=operad.max_arity() {
            let profile = Profile(vec![d; n]);
            let a_list: Vec<ChainComplex> = vec![alg.carrier.clone(); n];
            let mut factors = vec![operad.entry(&g, &profile, d)];
            factors.extend(a_list.iter().cloned());
            let regroup = g.regroup_iso(&factors, &[1, n]);
            let a_multi = g.multi_tensor(&a_list);
            let strip = chain::unit_left_iso(&a_multi);
            let lam = alg.mult_fold(n).compose(&strip).compose(&regroup);
            lambda.insert((profile, d), lam);
        }
    }
    OperadAlgebra { operad: operad.clone(), carriers, lambda }
}

/// Builds the Smith ideal generated by subcomplexes `X_c ⊆ A_c` that are
/// closed under the algebra structure: θ is the corestriction of λ. Errors
/// if a structure map does not preserve the subcomplexes.
pub fn submodule_ideal(
    algebra: &OperadAlgebra<ChainGround>,
    inclusions: &BTreeMap<Color, ChainMap>,
    g: &ChainGround,
) -> Result<SmithIdeal, crate::chain::ChainError> {
    let mut theta = BTreeMap::new();
    for ((profile, d), lam) in &algebra.lambda {
        let n = profile.len();
        for slot in 0..n {
            let mut maps = vec![g.identity(&algebra.operad.entry(g, profile, *d))];
            for (t, &c) in profile.0.iter().enumerate() {
                if t == slot {
                    maps.push(inclusions[&c].clone());
                } else {
                    maps.push(g.identity(&algebra.carrier(g, c)));
                }
            }
            let through = lam.compose(&g.multi_tensor_map(&maps));
            let restricted = factor_through_injection(&inclusions[d], &through)?;
            theta.insert((profile.clone(), *d, slot), restricted);
        }
    }
    let carriers = inclusions
        .iter()
        .map(|(c, m)| (*c, m.source().clone()))
        .collect();
    Ok(SmithIdeal {
        algebra: algebra.clone(),
        bimodule: Bimodule {
            algebra: algebra.clone(),
            carriers,
            theta,
        },
        f: inclusions.clone(),
    })
}

/// The dual-numbers ideal `(ε) ⊂ ℚ[ε]/(ε²)` over the associative operad.
pub fn dual_numbers_ideal(max_arity: usize) -> SmithIdeal {
    let g = ChainGround;
    let operad = std_operad(StdOperad::As, max_arity, 1);
    let alg = as_algebra(&operad, &dual_numbers());
    // (ε) is the span of the second basis vector
    let incl = ChainMap::new(
        ChainComplex::sphere(0),
        alg.carrier(&g, 0),
        BTreeMap::from([(0, Matrix::from_rows(&[&[0], &[1]]))]),
    )
    .expect("inclusion of the ideal");
    submodule_ideal(&alg, &BTreeMap::from([(0, incl)]), &g).expect("(ε) is an ideal")
}

/// The zero ideal `0 ⊆ Y`.
pub fn zero_ideal(algebra: &OperadAlgebra<ChainGround>, g: &ChainGround) -> SmithIdeal {
    let inclusions: BTreeMap<Color, ChainMap> = (0..algebra.operad.colors())
        .map(|c| (c, ChainMap::zero(&ChainComplex::zero(), &algebra.carrier(g, c))))
        .collect();
    submodule_ideal(algebra, &inclusions, g).expect("zero ideal")
}

/// The unit ideal `Y ⊆ Y` with `f = id`.
pub fn unit_ideal(algebra: &OperadAlgebra<ChainGround>, g: &ChainGround) -> SmithIdeal {
    let inclusions: BTreeMap<Color, ChainMap> = (0..algebra.operad.colors())
        .map(|c| (c, ChainMap::identity(&algebra.carrier(g, c))))
        .collect();
    submodule_ideal(algebra, &inclusions, g).expect("unit ideal")
}

/// The two-colored commutative ideal with carriers `S(0)` and `D(1)` inside
/// square-zero extensions.
pub fn two_colored_com_ideal(max_arity: usize) -> SmithIdeal {
    let g = ChainGround;
    let operad = std_operad(StdOperad::Com, max_arity, 2);
    let m0 = ChainComplex::sphere(0);
    let m1 = ChainComplex::disk(1);
    let a0 = square_zero(&m0);
    let a1 = square_zero(&m1);
    let alg = com_algebra(&operad, &[a0.clone(), a1.clone()]);
    let incl = |alg_part: &DgAlgebra, m: &ChainComplex| -> ChainMap {
        let (_, inj, _) = ChainComplex::direct_sum(&[&ChainComplex::unit(), m]);
        ChainMap::new(m.clone(), alg_part.carrier.clone(), {
            let mut comps = BTreeMap::new();
            for &n in &m.degrees() {
                comps.insert(n, inj[1].comp(n));
            }
            comps
        })
        .expect("summand inclusion")
    };
    let inclusions = BTreeMap::from([(0usize, incl(&a0, &m0)), (1usize, incl(&a1, &m1))]);
    submodule_ideal(&alg, &inclusions, &g).expect("square-zero part is an ideal")
}

/// A seeded injective Smith ideal: a square-zero extension by a random
/// complex with the extension part as the ideal, over As or Com.
pub fn random_injective_ideal(seed: u64, max_arity: usize) -> SmithIdeal {
    let g = ChainGround;
    let mut r = rng(seed);
    let params = ComplexParams {
        min_degree: -1,
        max_degree: 2,
        max_dim_per_degree: 3,
        max_pieces: 2,
    };
    let mut m = random_complex(&mut r, &params);
    if m.is_zero() {
        m = ChainComplex::sphere(0);
    }
    let alg_data = square_zero(&m);
    let use_as = r.gen_bool(0.5);
    let operad = if use_as {
        std_operad(StdOperad::As, max_arity, 1)
    } else {
        std_operad(StdOperad::Com, max_arity, 1)
    };
    let alg = if use_as {
        as_algebra(&operad, &alg_data)
    } else {
        com_algebra(&operad, &[alg_data.clone()])
    };
    let (_, inj, _) = ChainComplex::direct_sum(&[&ChainComplex::unit(), &m]);
    let incl = ChainMap::new(m.clone(), alg.carrier(&g, 0), {
        let mut comps = BTreeMap::new();
        for &n in &m.degrees() {
            comps.insert(n, inj[1].comp(n));
        }
        comps
    })
    .expect("summand inclusion");
    submodule_ideal(&alg, &BTreeMap::from([(0, incl)]), &g).expect("square-zero ideal")
}

/// A seeded algebra map: the quotient of a random injective ideal, or an
/// identity, or the unit inclusion into the dual numbers.
pub fn random_algebra_map(seed: u64, max_arity: usize) -> AlgebraMap<ChainGround> {
    let g = ChainGround;
    let mut r = rng(seed);
    match r.gen_range(0..3) {
        0 => {
            let s = random_injective_ideal(seed.wrapping_add(101), max_arity);
            crate::smith::smith_coker(&s, &g).expect("cokernel of an ideal")
        }
        1 => {
            let s = random_injective_ideal(seed.wrapping_add(202), max_arity);
            AlgebraMap::identity(&s.algebra, &g)
        }
        _ => {
            // unit inclusion ℚ → ℚ[ε]/(ε²) over As, or ℚ → ℚ⊕M over Com
            let operad = std_operad(StdOperad::As, max_arity, 1);
            let unit_alg = as_algebra(&operad, &truncated_polynomial(1));
            let target = as_algebra(&operad, &dual_numbers());
            let comp = ChainMap::new(
                unit_alg.carrier(&g, 0),
                target.carrier(&g, 0),
                BTreeMap::from([(0, Matrix::from_rows(&[&[1], &[0]]))]),
            )
            .expect("unit inclusion");
            AlgebraMap {
                source: unit_alg,
                target,
                components: BTreeMap::from([(0, comp)]),
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Equivariant instances
// ---------------------------------------------------------------------------

use crate::operad::SigmaAction;

/// A random Σ_n-object: a permutation representation on a tensor power, the
/// regular representation, or a trivial action, possibly summed.
pub fn random_sigma_object(rng: &mut Gen, n: usize, params: &ComplexParams) -> SigmaAction {
    match rng.gen_range(0..3) {
        0 => {
            let mut base = random_complex(rng, params);
            if base.is_zero() {
                base = ChainComplex::sphere(0);
            }
            SigmaAction::trivial(n, base)
        }
        1 => {
            // permutation action on y^{⊗n}
            let y = if rng.gen_bool(0.5) {
                ChainComplex::sphere(rng.gen_range(0..=1))
            } else {
                ChainComplex::disk(rng.gen_range(0..=1))
            };
            SigmaAction::permutation(&y, n)
        }
        _ => {
            // regular representation ℚ[Σ_n] in degree 0
            regular_representation(n)
        }
    }
}

/// `ℚ[Σ_n]` in degree 0 with the left translation action.
pub fn regular_representation(n: usize) -> SigmaAction {
    let perms = Perm::all(n);
    let dim = perms.len();
    let object = ChainComplex::new(BTreeMap::from([(0, dim)]), BTreeMap::new()).expect("ℚ[Σn]");
    let index: BTreeMap<&Perm, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let maps = perms
        .iter()
        .map(|sigma| {
            let mut m = Matrix::zero(dim, dim);
            for (tau, &j) in &index {
                let to = index[&sigma.compose(tau)];
                *m.at_mut(to, j) = rat(1);
            }
            (
                sigma.clone(),
                ChainMap::new(object.clone(), object.clone(), BTreeMap::from([(0, m)]))
                    .expect("translation"),
            )
        })
        .collect();
    SigmaAction::new(n, object, maps).expect("left regular representation")
}

/// An equivariant cofibration: the inclusion of a Σ_n-summand.
pub fn random_equivariant_cofibration(
    rng: &mut Gen,
    n: usize,
    params: &ComplexParams,
) -> (SigmaAction, SigmaAction, ChainMap) {
    let x0 = random_sigma_object(rng, n, params);
    let extra = random_sigma_object(rng, n, params);
    let (sum, inj, proj) = ChainComplex::direct_sum(&[&x0.object, &extra.object]);
    let maps = Perm::all(n)
        .into_iter()
        .map(|p| {
            let m = inj[0]
                .compose(&x0.act(&p).compose(&proj[0]))
                .add(&inj[1].compose(&extra.act(&p).compose(&proj[1])));
            (p, m)
        })
        .collect();
    let x1 = SigmaAction::new(n, sum, maps).expect("sum action");
    let f = inj[0].clone();
    (x0, x1, f)
}

// ---------------------------------------------------------------------------
// Miscellaneous helpers used by scenario checks
// ---------------------------------------------------------------------------

/// Random diagram for colimit/limit universal-property checks: a span with
/// random maps built from scrambled sums.
pub fn random_span(rng: &mut Gen, params: &ComplexParams) -> Diagram {
    let apex0 = random_complex(rng, params);
    let left = random_cofibration_from(rng, &apex0, params, false);
    let right = random_cofibration_from(rng, &apex0, params, false);
    Diagram::new(
        vec![apex0.clone(), left.target().clone(), right.target().clone()],
        vec![(0, 1, left), (0, 2, right)],
    )
    .expect("span")
}

/// A degreewise-injective map out of a fixed source.
pub fn random_cofibration_from(
    rng: &mut Gen,
    src: &ChainComplex,
    params: &ComplexParams,
    trivial: bool,
) -> ChainMap {
    let extra = if trivial {
        random_acyclic(rng, params)
    } else {
        random_complex(rng, params)
    };
    let (sum, inj, _) = ChainComplex::direct_sum(&[src, &extra]);
    let (_, tgt_iso) = scramble_complex(rng, &sum);
    tgt_iso.compose(&inj[0])
}

/// Deterministic StdRng shim for parameter mixing where the chacha stream is
/// not needed.
pub fn mix_seed(seed: u64, salt: u64) -> u64 {
    let mut r = StdRng::seed_from_u64(seed ^ salt.wrapping_mul(0x9E3779B97F4A7C15));
    r.gen()
}

/// True when the map has at least one nonzero component; used by generators
/// to avoid degenerate instances.
pub fn is_nontrivial(f: &ChainMap) -> bool {
    !f.is_zero_map() && f.source().total_dim() > 0
}

/// Quick exactness helper for tests: the alternating homology sum of a short
/// exact sequence vanishes degreewise-summed.
pub fn euler_characteristic(c: &ChainComplex) -> i64 {
    c.dims()
        .iter()
        .map(|(&n, &d)| if n.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) })
        .sum()
}

/// Used by scenario generators: make a rational from an i64 convenience.
pub fn small_rational(rng: &mut Gen, bound: i64) -> Rational {
    let v = rng.gen_range(-bound..=bound);
    if v == 0 && rng.gen_bool(0.5) {
        Rational::zero()
    } else {
        rat(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::classify_map;

    #[test]
    fn random_complexes_are_valid_and_reproducible() {
        let params = ComplexParams::default();
        let c1 = random_complex(&mut rng(7), &params);
        let c2 = random_complex(&mut rng(7), &params);
        assert_eq!(c1, c2);
        assert!(c1.validate().is_ok());
        for seed in 0..20 {
            let c = random_complex(&mut rng(seed), &params);
            assert!(c.validate().is_ok(), "seed {seed}");
            assert!(c.dims().values().all(|&d| d <= params.max_dim_per_degree));
        }
    }

    #[test]
    fn random_cofibrations_classify_correctly() {
        let params = ComplexParams::default();
        for seed in 0..15 {
            let f = random_cofibration(&mut rng(seed), &params, false);
            assert!(f.validate().is_ok());
            assert!(classify_map(&f).is_cofibration, "seed {seed}");
            let tf = random_cofibration(&mut rng(seed + 1000), &params, true);
            let cls = classify_map(&tf);
            assert!(cls.is_trivial_cofibration, "seed {seed}");
        }
    }

    #[test]
    fn random_chain_maps_are_chain_maps() {
        let params = ComplexParams::default();
        for seed in 0..15 {
            let f = random_chain_map(&mut rng(seed), &params);
            assert!(f.validate().is_ok(), "seed {seed}");
        }
    }

    #[test]
    fn random_squares_commute() {
        let params = ComplexParams::default();
        for seed in 0..15 {
            let m = random_arrow_map(&mut rng(seed), &params);
            assert!(m.validate().is_ok(), "seed {seed}");
        }
    }

    #[test]
    fn algebra_library_validates() {
        let g = ChainGround;
        let as3 = std_operad(StdOperad::As, 3, 1);
        let alg = as_algebra(&as3, &dual_numbers());
        assert!(alg.validate(&g).is_ok());
        let alg = as_algebra(&as3, &truncated_polynomial(3));
        assert!(alg.validate(&g).is_ok());
        // graded square-zero over Com
        let com = std_operad(StdOperad::Com, 3, 1);
        let alg = com_algebra(&com, &[square_zero(&ChainComplex::sphere(1))]);
        assert!(alg.validate(&g).is_ok());
        // and over As (commutative algebras are associative)
        let alg = as_algebra(&as3, &square_zero(&ChainComplex::disk(1)));
        assert!(alg.validate(&g).is_ok());
    }

    #[test]
    fn two_colored_ideal_validates() {
        let g = ChainGround;
        let s = two_colored_com_ideal(3);
        assert_eq!(s.validate(&g), Ok(()));
        assert!(s.f_component(&g, 0).is_degreewise_injective());
        assert!(s.f_component(&g, 1).is_degreewise_injective());
    }

    #[test]
    fn random_ideals_validate() {
        let g = ChainGround;
        for seed in 0..6 {
            let s = random_injective_ideal(seed, 3);
            assert_eq!(s.validate(&g), Ok(()), "seed {seed}");
            assert!(s.f_component(&g, 0).is_degreewise_injective());
        }
    }

    #[test]
    fn equivariant_cofibration_is_equivariant() {
        let params = ComplexParams::default();
        for seed in 0..5 {
            let (x0, x1, f) = random_equivariant_cofibration(&mut rng(seed), 2, &params);
            assert!(f.is_degreewise_injective());
            for p in Perm::all(2) {
                assert_eq!(f.compose(x0.act(&p)), x1.act(&p).compose(&f), "seed {seed}");
            }
        }
    }
}
