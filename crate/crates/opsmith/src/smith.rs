//! Smith ideals for operads, in both descriptions, and the entrywise
//! cokernel ⊣ kernel adjunction between them.
//!
//! A Smith ideal is an algebra over the lifted operad in the pushout-product
//! arrow category; unraveled, it is an algebra `Y`, a `Y`-bimodule `X`, and a
//! bimodule map `f : X → Y` whose mixed two-slot squares commute. Algebras
//! over the lifted operad in the tensor arrow category are maps of algebras.
//! Both conversions are implemented as exact mutual inverses, and the
//! cokernel/kernel functors act entrywise on these descriptions.

use crate::algebra::{
    regular_bimodule, restrict_bimodule, validate_bimodule_map, AlgebraDefect, AlgebraMap,
    Bimodule, OperadAlgebra,
};
use crate::arrow::{self, ArrowMap, ArrowObject};
use crate::chain::{
    factor_through_injection, factor_through_surjection, factorize, is_quasi_iso, ChainComplex,
    ChainMap,
};
use crate::ground::{ArrowBoxGround, ArrowTensorGround, ChainGround, Ground};
use crate::operad::{lift_operad_box, lift_operad_tensor, profiles_up_to, Color, Operad, Profile};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SmithDefect {
    #[error("algebra defect: {0}")]
    Algebra(#[from] AlgebraDefect),
    #[error("f is not a bimodule map at ({profile:?};{output})")]
    NotBimoduleMap { profile: Profile, output: Color },
    #[error("two-slot square fails at ({profile:?};{output}) slots ({i},{j})")]
    TwoX {
        profile: Profile,
        output: Color,
        i: usize,
        j: usize,
    },
    #[error("induced structure fails to descend at ({profile:?};{output})")]
    DoesNotDescend { profile: Profile, output: Color },
    #[error("component at color {0} has wrong endpoints")]
    BadComponent(Color),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// A Smith ideal in unraveled form.
#[derive(Debug, Clone)]
pub struct SmithIdeal {
    /// The ambient algebra `(Y, λ)`.
    pub algebra: OperadAlgebra<ChainGround>,
    /// The ideal carriers `(X, θ)` as a `Y`-bimodule.
    pub bimodule: Bimodule<ChainGround>,
    /// `f_c : X_c → Y_c` per color.
    pub f: BTreeMap<Color, ChainMap>,
}

impl SmithIdeal {
    pub fn operad(&self) -> &Operad<ChainGround> {
        &self.algebra.operad
    }

    pub fn f_component(&self, g: &ChainGround, c: Color) -> ChainMap {
        self.f.get(&c).cloned().unwrap_or_else(|| {
            ChainMap::zero(&self.bimodule.carrier(g, c), &self.algebra.carrier(g, c))
        })
    }

    /// Full validation: algebra and bimodule axioms, `f` a bimodule map into
    /// the regular bimodule, and all two-slot squares.
    pub fn validate(&self, g: &ChainGround) -> Result<(), SmithDefect> {
        self.algebra.validate(g)?;
        self.bimodule.validate(g)?;
        for (c, m) in &self.f {
            if m.source() != &self.bimodule.carrier(g, *c)
                || m.target() != &self.algebra.carrier(g, *c)
                || m.validate().is_err()
            {
                return Err(SmithDefect::BadComponent(*c));
            }
        }
        let regular = regular_bimodule(g, &self.algebra);
        validate_bimodule_map(g, &self.bimodule, &regular, &self.f).map_err(|e| match e {
            AlgebraDefect::NotAMap { profile, output } => {
                SmithDefect::NotBimoduleMap { profile, output }
            }
            other => SmithDefect::Algebra(other),
        })?;
        self.check_two_x(g)
    }

    /// The squares with two module slots: substituting `f` in either slot
    /// first and then acting must agree.
    pub fn check_two_x(&self, g: &ChainGround) -> Result<(), SmithDefect> {
        let colors = self.operad().colors();
        let max = self.operad().max_arity();
        for d in 0..colors {
            for profile in profiles_up_to(colors, max) {
                let n = profile.len();
                if n < 2 || self.operad().sym.is_zero_entry(g, &profile, d) {
                    continue;
                }
                for i in 0..n {
                    for j in i + 1..n {
                        if !self.two_x_square_holds(g, &profile, d, i, j) {
                            return Err(SmithDefect::TwoX { profile, output: d, i, j });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn two_x_square_holds(
        &self,
        g: &ChainGround,
        profile: &Profile,
        d: Color,
        i: usize,
        j: usize,
    ) -> bool {
        // source: O(c̄;d) ⊗ Y … X_{c_i} … X_{c_j} … Y
        let mut factors = vec![self.operad().entry(g, profile, d)];
        for (t, &c) in profile.0.iter().enumerate() {
            if t == i || t == j {
                factors.push(self.bimodule.carrier(g, c));
            } else {
                factors.push(self.algebra.carrier(g, c));
            }
        }
        let apply_f_at = |slot: usize| -> ChainMap {
            let mut maps = vec![g.identity(&factors[0])];
            for (t, &c) in profile.0.iter().enumerate() {
                if t == slot {
                    maps.push(self.f_component(g, c));
                } else {
                    maps.push(g.identity(&factors[t + 1]));
                }
            }
            g.multi_tensor_map(&maps)
        };
        // f at slot j, then θ with the module in slot i
        let route_a = g.compose(
            &self.bimodule.theta_map(g, profile, d, i),
            &apply_f_at(j),
        );
        // f at slot i, then θ with the module in slot j
        let route_b = g.compose(
            &self.bimodule.theta_map(g, profile, d, j),
            &apply_f_at(i),
        );
        g.map_eq(&route_a, &route_b)
    }
}

/// A map of Smith ideals: an algebra map `h₁` on the ambient algebras and a
/// bimodule map `h₀` over restriction of scalars, forming commuting squares
/// with the structure arrows.
#[derive(Debug, Clone)]
pub struct SmithIdealMap {
    pub source: SmithIdeal,
    pub target: SmithIdeal,
    pub h0: BTreeMap<Color, ChainMap>,
    pub h1: BTreeMap<Color, ChainMap>,
}

impl SmithIdealMap {
    pub fn identity(s: &SmithIdeal, g: &ChainGround) -> Self {
        let h0 = (0..s.operad().colors())
            .map(|c| (c, ChainMap::identity(&s.bimodule.carrier(g, c))))
            .collect();
        let h1 = (0..s.operad().colors())
            .map(|c| (c, ChainMap::identity(&s.algebra.carrier(g, c))))
            .collect();
        SmithIdealMap { source: s.clone(), target: s.clone(), h0, h1 }
    }

    pub fn h0_component(&self, g: &ChainGround, c: Color) -> ChainMap {
        self.h0.get(&c).cloned().unwrap_or_else(|| {
            ChainMap::zero(
                &self.source.bimodule.carrier(g, c),
                &self.target.bimodule.carrier(g, c),
            )
        })
    }

    pub fn h1_component(&self, g: &ChainGround, c: Color) -> ChainMap {
        self.h1.get(&c).cloned().unwrap_or_else(|| {
            ChainMap::zero(
                &self.source.algebra.carrier(g, c),
                &self.target.algebra.carrier(g, c),
            )
        })
    }

    pub fn validate(&self, g: &ChainGround) -> Result<(), SmithDefect> {
        // h₁ is an algebra map
        let h1_map = AlgebraMap {
            source: self.source.algebra.clone(),
            target: self.target.algebra.clone(),
            components: self.h1.clone(),
        };
        h1_map.validate(g)?;
        // h₀ is a bimodule map into the restricted target bimodule
        let restricted = restrict_bimodule(g, &self.target.bimodule, &h1_map);
        validate_bimodule_map(g, &self.source.bimodule, &restricted, &self.h0)?;
        // the structure squares commute per color
        for c in 0..self.source.operad().colors() {
            let lhs = self.target.f_component(g, c).compose(&self.h0_component(g, c));
            let rhs = self.h1_component(g, c).compose(&self.source.f_component(g, c));
            if lhs != rhs {
                return Err(SmithDefect::BadComponent(c));
            }
        }
        Ok(())
    }

    pub fn is_entrywise_iso(&self, g: &ChainGround) -> bool {
        (0..self.source.operad().colors()).all(|c| {
            self.h0_component(g, c).is_degreewise_iso()
                && self.h1_component(g, c).is_degreewise_iso()
        })
    }
}

// ---------------------------------------------------------------------------
// Assembling and unraveling box algebras
// ---------------------------------------------------------------------------

/// The carrier list of the structure map at a shape: the lifted operad entry
/// followed by the carrier arrows of the inputs.
fn box_factors(
    g: &ChainGround,
    s: &SmithIdeal,
    profile: &Profile,
    d: Color,
) -> Vec<ArrowObject> {
    let mut factors = vec![arrow::l1(&s.operad().entry(g, profile, d))];
    for &c in &profile.0 {
        factors.push(ArrowObject::new(s.f_component(g, c)));
    }
    factors
}

/// Assembles the algebra over the lifted operad in the pushout-product arrow
/// category. The 0-component of each structure map is induced on the
/// punctured-cube domain from `θ` and `f`; a failure to factor names the
/// offending two-slot square.
pub fn assemble_box_algebra(
    s: &SmithIdeal,
    g: &ChainGround,
) -> Result<OperadAlgebra<ArrowBoxGround>, SmithDefect> {
    s.check_two_x(g)?;
    let bg = ArrowBoxGround;
    let lifted = lift_operad_box(s.operad());
    let colors = s.operad().colors();
    let carriers: BTreeMap<Color, ArrowObject> = (0..colors)
        .map(|c| (c, ArrowObject::new(s.f_component(g, c))))
        .collect();
    let mut lambda = BTreeMap::new();
    for d in 0..colors {
        for profile in profiles_up_to(colors, s.operad().max_arity()) {
            if s.operad().sym.is_zero_entry(g, &profile, d) {
                continue;
            }
            let n = profile.len();
            let alpha1 = s.algebra.lambda_map(g, &profile, d);
            if n == 0 {
                // λ : (0 → O(∅;d)) → f_d
                let src = arrow::l1(&s.operad().entry(g, &profile, d));
                let tgt = carriers[&d].clone();
                let alpha0 = ChainMap::zero(src.ev0(), tgt.ev0());
                let m = ArrowMap::new(src, tgt, alpha0, alpha1)
                    .map_err(|_| SmithDefect::DoesNotDescend { profile: profile.clone(), output: d })?;
                lambda.insert((profile, d), m);
                continue;
            }
            let factors = box_factors(g, s, &profile, d);
            let value = arrow::pp_value(&factors);
            // Cocone on the vertex legs: apply f to all module slots except
            // the first, then act through θ there.
            let mut src_legs = Vec::new();
            let mut tgt_legs = Vec::new();
            for (eps, leg) in &value.legs {
                src_legs.push(leg.clone());
                if !eps[0] {
                    // the operad slot sits at ∅: the vertex is zero
                    tgt_legs.push(ChainMap::zero(
                        leg.source(),
                        &s.bimodule.carrier(g, d),
                    ));
                    continue;
                }
                let module_slots: Vec<usize> = (0..n).filter(|&i| !eps[i + 1]).collect();
                let first = module_slots[0];
                let mut maps = vec![g.identity(&s.operad().entry(g, &profile, d))];
                for (i, &c) in profile.0.iter().enumerate() {
                    if eps[i + 1] {
                        maps.push(g.identity(&s.algebra.carrier(g, c)));
                    } else if i == first {
                        maps.push(g.identity(&s.bimodule.carrier(g, c)));
                    } else {
                        maps.push(s.f_component(g, c));
                    }
                }
                let step = g.multi_tensor_map(&maps);
                let theta = s.bimodule.theta_map(g, &profile, d, first);
                tgt_legs.push(theta.compose(&step));
            }
            let alpha0 = solve_cocone(&src_legs, &tgt_legs, value.arrow.ev0()).ok_or(
                SmithDefect::DoesNotDescend { profile: profile.clone(), output: d },
            )?;
            let m = ArrowMap::new(
                value.arrow.clone(),
                carriers[&d].clone(),
                alpha0,
                alpha1,
            )
            .map_err(|_| SmithDefect::DoesNotDescend { profile: profile.clone(), output: d })?;
            lambda.insert((profile, d), m);
        }
    }
    Ok(OperadAlgebra { operad: lifted, carriers, lambda })
    .map(|a| {
        let _ = &bg;
        a
    })
}

fn solve_cocone(
    src_legs: &[ChainMap],
    tgt_legs: &[ChainMap],
    src_total: &ChainComplex,
) -> Option<ChainMap> {
    let tgt_total = tgt_legs.first()?.target().clone();
    if src_total.is_zero() || tgt_total.is_zero() {
        return Some(ChainMap::zero(src_total, &tgt_total));
    }
    let sources: Vec<&ChainComplex> = src_legs.iter().map(|l| l.source()).collect();
    let (_, _, projections) = ChainComplex::direct_sum(&sources);
    let mut stacked_src = ChainMap::zero(projections[0].source(), src_total);
    let mut stacked_tgt = ChainMap::zero(projections[0].source(), &tgt_total);
    for i in 0..src_legs.len() {
        stacked_src = stacked_src.add(&src_legs[i].compose(&projections[i]));
        stacked_tgt = stacked_tgt.add(&tgt_legs[i].compose(&projections[i]));
    }
    factor_through_surjection(&stacked_src, &stacked_tgt).ok()
}

/// Recovers the unraveled description from a box algebra: the 1-components
/// give the ambient algebra, the one-module-slot vertex legs give `θ`.
pub fn unravel_box_algebra(
    a: &OperadAlgebra<ArrowBoxGround>,
    chain_operad: &Operad<ChainGround>,
    g: &ChainGround,
) -> SmithIdeal {
    let colors = chain_operad.colors();
    let f: BTreeMap<Color, ChainMap> = (0..colors)
        .map(|c| {
            let bg = ArrowBoxGround;
            (c, a.carrier(&bg, c).map().clone())
        })
        .collect();
    let mut lambda1 = BTreeMap::new();
    let mut theta = BTreeMap::new();
    for ((profile, d), m) in &a.lambda {
        lambda1.insert((profile.clone(), *d), m.alpha1().clone());
        let n = profile.len();
        if n == 0 {
            continue;
        }
        // rebuild the vertex legs of the domain
        let carriers_arrows: Vec<ArrowObject> = {
            let mut v = vec![arrow::l1(&chain_operad.entry(g, profile, *d))];
            let bg = ArrowBoxGround;
            for &c in &profile.0 {
                v.push(a.carrier(&bg, c));
            }
            v
        };
        let value = arrow::pp_value(&carriers_arrows);
        for slot in 0..n {
            let mut eps = vec![true; n + 1];
            eps[slot + 1] = false;
            let leg = &value.legs[&eps];
            theta.insert(
                (profile.clone(), *d, slot),
                m.alpha0().compose(leg),
            );
        }
    }
    let carriers_y: BTreeMap<Color, ChainComplex> =
        f.iter().map(|(c, m)| (*c, m.target().clone())).collect();
    let carriers_x: BTreeMap<Color, ChainComplex> =
        f.iter().map(|(c, m)| (*c, m.source().clone())).collect();
    let algebra = OperadAlgebra {
        operad: chain_operad.clone(),
        carriers: carriers_y,
        lambda: lambda1,
    };
    let bimodule = Bimodule {
        algebra: algebra.clone(),
        carriers: carriers_x,
        theta,
    };
    SmithIdeal { algebra, bimodule, f }
}

// ---------------------------------------------------------------------------
// Tensor algebras and algebra maps
// ---------------------------------------------------------------------------

/// Converts an algebra over the lifted operad in the tensor arrow category
/// into a map of algebras over the chain operad.
pub fn arrows_of_algebras(
    a: &OperadAlgebra<ArrowTensorGround>,
    chain_operad: &Operad<ChainGround>,
    g: &ChainGround,
) -> AlgebraMap<ChainGround> {
    let tg = ArrowTensorGround;
    let colors = chain_operad.colors();
    let mut carriers_x = BTreeMap::new();
    let mut carriers_y = BTreeMap::new();
    let mut components = BTreeMap::new();
    for c in 0..colors {
        let arr = a.carrier(&tg, c);
        carriers_x.insert(c, arr.ev0().clone());
        carriers_y.insert(c, arr.ev1().clone());
        components.insert(c, arr.map().clone());
    }
    let mut lambda_x = BTreeMap::new();
    let mut lambda_y = BTreeMap::new();
    for ((profile, d), m) in &a.lambda {
        lambda_x.insert((profile.clone(), *d), m.alpha0().clone());
        lambda_y.insert((profile.clone(), *d), m.alpha1().clone());
    }
    let _ = g;
    let source = OperadAlgebra {
        operad: chain_operad.clone(),
        carriers: carriers_x,
        lambda: lambda_x,
    };
    let target = OperadAlgebra {
        operad: chain_operad.clone(),
        carriers: carriers_y,
        lambda: lambda_y,
    };
    AlgebraMap { source, target, components }
}

/// Inverse of [`arrows_of_algebras`]: packages a map of algebras as an
/// algebra over the lifted operad in the tensor arrow category.
pub fn algebras_of_arrows(
    h: &AlgebraMap<ChainGround>,
    g: &ChainGround,
) -> OperadAlgebra<ArrowTensorGround> {
    let lifted = lift_operad_tensor(&h.source.operad);
    let colors = h.source.operad.colors();
    let carriers: BTreeMap<Color, ArrowObject> = (0..colors)
        .map(|c| (c, ArrowObject::new(h.component(g, c))))
        .collect();
    let mut lambda = BTreeMap::new();
    let gt = ArrowTensorGround;
    for d in 0..colors {
        for profile in profiles_up_to(colors, h.source.operad.max_arity()) {
            if h.source.operad.sym.is_zero_entry(g, &profile, d) {
                continue;
            }
            let mut factors = vec![lifted.entry(&gt, &profile, d)];
            for &c in &profile.0 {
                factors.push(carriers[&c].clone());
            }
            let src = gt.multi_tensor(&factors);
            let m = ArrowMap::new(
                src,
                carriers[&d].clone(),
                h.source.lambda_map(g, &profile, d),
                h.target.lambda_map(g, &profile, d),
            )
            .expect("algebra-map compatibility is the square condition");
            lambda.insert((profile, d), m);
        }
    }
    OperadAlgebra { operad: lifted, carriers, lambda }
}

// ---------------------------------------------------------------------------
// Entrywise cokernel and kernel
// ---------------------------------------------------------------------------

/// The cokernel of a Smith ideal: the quotient algebra map `Y → Y/im f`,
/// with the induced structure maps on the quotient.
pub fn smith_coker(
    s: &SmithIdeal,
    g: &ChainGround,
) -> Result<AlgebraMap<ChainGround>, SmithDefect> {
    let colors = s.operad().colors();
    let mut q_carriers = BTreeMap::new();
    let mut q_components = BTreeMap::new();
    for c in 0..colors {
        let fact = factorize(&s.f_component(g, c));
        q_carriers.insert(c, fact.cokernel.clone());
        q_components.insert(c, fact.cokernel_projection.clone());
    }
    let mut q_lambda = BTreeMap::new();
    for ((profile, d), lam) in &s.algebra.lambda {
        let mut maps = vec![g.identity(&s.operad().entry(g, profile, *d))];
        for &c in &profile.0 {
            maps.push(q_components[&c].clone());
        }
        let src_proj = g.multi_tensor_map(&maps);
        let descended =
            factor_through_surjection(&src_proj, &q_components[d].compose(lam)).map_err(|_| {
                SmithDefect::DoesNotDescend { profile: profile.clone(), output: *d }
            })?;
        q_lambda.insert((profile.clone(), *d), descended);
    }
    let target = OperadAlgebra {
        operad: s.operad().clone(),
        carriers: q_carriers,
        lambda: q_lambda,
    };
    Ok(AlgebraMap {
        source: s.algebra.clone(),
        target,
        components: q_components,
    })
}

/// The kernel of an algebra map: the ideal `ker φ ⊆ A` with the restricted
/// bimodule structure; the two-slot squares are verified, not assumed.
pub fn algmap_ker(
    h: &AlgebraMap<ChainGround>,
    g: &ChainGround,
) -> Result<SmithIdeal, SmithDefect> {
    let colors = h.source.operad.colors();
    let mut k_carriers = BTreeMap::new();
    let mut inclusions = BTreeMap::new();
    for c in 0..colors {
        let fact = factorize(&h.component(g, c));
        k_carriers.insert(c, fact.kernel.clone());
        inclusions.insert(c, fact.kernel_inclusion.clone());
    }
    let mut theta = BTreeMap::new();
    for ((profile, d), lam) in &h.source.lambda {
        let n = profile.len();
        for slot in 0..n {
            let mut maps = vec![g.identity(&h.source.operad.entry(g, profile, *d))];
            for (t, &c) in profile.0.iter().enumerate() {
                if t == slot {
                    maps.push(inclusions[&c].clone());
                } else {
                    maps.push(g.identity(&h.source.carrier(g, c)));
                }
            }
            let include_slot = g.multi_tensor_map(&maps);
            let through = lam.compose(&include_slot);
            let restricted = factor_through_injection(&inclusions[d], &through)
                .map_err(|_| SmithDefect::DoesNotDescend {
                    profile: profile.clone(),
                    output: *d,
                })?;
            theta.insert((profile.clone(), *d, slot), restricted);
        }
    }
    let bimodule = Bimodule {
        algebra: h.source.clone(),
        carriers: k_carriers,
        theta,
    };
    let ideal = SmithIdeal {
        algebra: h.source.clone(),
        bimodule,
        f: inclusions,
    };
    ideal.check_two_x(g)?;
    Ok(ideal)
}

// ---------------------------------------------------------------------------
// Adjunction witnesses and classification
// ---------------------------------------------------------------------------

/// A map between two algebra maps: a commutative square of algebra maps.
#[derive(Debug, Clone)]
pub struct AlgMapSquare {
    pub source: AlgebraMap<ChainGround>,
    pub target: AlgebraMap<ChainGround>,
    pub on_sources: AlgebraMap<ChainGround>,
    pub on_targets: AlgebraMap<ChainGround>,
}

impl AlgMapSquare {
    pub fn validate(&self, g: &ChainGround) -> Result<(), SmithDefect> {
        self.on_sources.validate(g)?;
        self.on_targets.validate(g)?;
        for c in 0..self.source.source.operad.colors() {
            let lhs = self.target.component(g, c).compose(&self.on_sources.component(g, c));
            let rhs = self.on_targets.component(g, c).compose(&self.source.component(g, c));
            if lhs != rhs {
                return Err(SmithDefect::BadComponent(c));
            }
        }
        Ok(())
    }

    pub fn is_entrywise_iso(&self, g: &ChainGround) -> bool {
        (0..self.source.source.operad.colors()).all(|c| {
            self.on_sources.component(g, c).is_degreewise_iso()
                && self.on_targets.component(g, c).is_degreewise_iso()
        })
    }
}

/// Unit of the operadic adjunction at `s`: the Smith-ideal map
/// `s → ker(coker s)` given by the identity on `Y` and the corestriction of
/// `f` to the kernel of the quotient.
pub fn operadic_unit(
    s: &SmithIdeal,
    g: &ChainGround,
) -> Result<SmithIdealMap, SmithDefect> {
    let q = smith_coker(s, g)?;
    let kq = algmap_ker(&q, g)?;
    let colors = s.operad().colors();
    let mut h0 = BTreeMap::new();
    let mut h1 = BTreeMap::new();
    for c in 0..colors {
        let into_kernel =
            factor_through_injection(&kq.f_component(g, c), &s.f_component(g, c)).map_err(
                |_| SmithDefect::DoesNotDescend { profile: Profile::empty(), output: c },
            )?;
        h0.insert(c, into_kernel);
        h1.insert(c, ChainMap::identity(&s.algebra.carrier(g, c)));
    }
    Ok(SmithIdealMap { source: s.clone(), target: kq, h0, h1 })
}

/// Counit of the operadic adjunction at `h`: the square
/// `coker(ker h) → h` given by the identity on sources and the descent of
/// `h` along the quotient by its kernel.
pub fn operadic_counit(
    h: &AlgebraMap<ChainGround>,
    g: &ChainGround,
) -> Result<AlgMapSquare, SmithDefect> {
    let k = algmap_ker(h, g)?;
    let ck = smith_coker(&k, g)?;
    let colors = h.source.operad.colors();
    let mut psi1 = BTreeMap::new();
    for c in 0..colors {
        let descended = factor_through_surjection(&ck.component(g, c), &h.component(g, c))
            .map_err(|_| SmithDefect::DoesNotDescend {
                profile: Profile::empty(),
                output: c,
            })?;
        psi1.insert(c, descended);
    }
    let on_sources = AlgebraMap::identity(&h.source, g);
    let on_targets = AlgebraMap {
        source: ck.target.clone(),
        target: h.target.clone(),
        components: psi1,
    };
    Ok(AlgMapSquare {
        source: ck,
        target: h.clone(),
        on_sources,
        on_targets,
    })
}

/// Both triangle identities of the operadic coker ⊣ ker, checked exactly on
/// the given Smith ideal and algebra map.
pub fn operadic_triangles_hold(
    s: &SmithIdeal,
    h: &AlgebraMap<ChainGround>,
    g: &ChainGround,
) -> Result<bool, SmithDefect> {
    // (ε at coker s) ∘ coker(η_s) = id
    let unit = operadic_unit(s, g)?;
    let cs = smith_coker(s, g)?;
    // coker(η): the induced map coker(s) → coker(ker(coker s));
    // its source components are identities on Y, targets descend.
    let kq = unit.target.clone();
    let ckq = smith_coker(&kq, g)?;
    let mut on_targets = BTreeMap::new();
    for c in 0..s.operad().colors() {
        let m = factor_through_surjection(
            &cs.component(g, c),
            &ckq.component(g, c).compose(&unit.h1_component(g, c)),
        )
        .map_err(|_| SmithDefect::DoesNotDescend { profile: Profile::empty(), output: c })?;
        on_targets.insert(c, m);
    }
    let counit_at_cs = operadic_counit(&cs, g)?;
    let mut t1 = true;
    for c in 0..s.operad().colors() {
        let composite = counit_at_cs.on_targets.component(g, c).compose(&on_targets[&c]);
        if composite != ChainMap::identity(&cs.target.carrier(g, c)) {
            t1 = false;
        }
    }

    // ker(ε_h) ∘ (η at ker h) = id
    let kh = algmap_ker(h, g)?;
    let unit_at_kh = operadic_unit(&kh, g)?;
    let counit = operadic_counit(h, g)?;
    // ker(ε): ker(coker(ker h)) → ker h, restricting ε's target component.
    let mut t2 = true;
    for c in 0..h.source.operad.colors() {
        let ker_eps = factor_through_injection(
            &kh.f_component(g, c),
            &counit
                .on_sources
                .component(g, c)
                .compose(&unit_at_kh.target.f_component(g, c)),
        );
        let Ok(ker_eps) = ker_eps else {
            t2 = false;
            continue;
        };
        let composite = ker_eps.compose(&unit_at_kh.h0_component(g, c));
        if composite != ChainMap::identity(&kh.bimodule.carrier(g, c)) {
            t2 = false;
        }
    }
    Ok(t1 && t2)
}

/// Weak equivalence / fibration flags of a Smith-ideal map: both components
/// color-wise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct SmithMapClass {
    pub weak_equivalence: bool,
    pub fibration: bool,
}

pub fn classify_smith_map(m: &SmithIdealMap, g: &ChainGround) -> SmithMapClass {
    let colors = m.source.operad().colors();
    let mut weq = true;
    let mut fib = true;
    for c in 0..colors {
        let h0 = m.h0_component(g, c);
        let h1 = m.h1_component(g, c);
        weq &= is_quasi_iso(&h0) && is_quasi_iso(&h1);
        fib &= h0.is_degreewise_surjective() && h1.is_degreewise_surjective();
    }
    SmithMapClass { weak_equivalence: weq, fibration: fib }
}

/// Classification of a map of algebra maps in the injective structure: per
/// color, the square is classified in the arrow category.
pub fn classify_algmap_square(m: &AlgMapSquare, g: &ChainGround) -> SmithMapClass {
    let colors = m.source.source.operad.colors();
    let mut weq = true;
    let mut fib = true;
    for c in 0..colors {
        let square = ArrowMap::new(
            ArrowObject::new(m.source.component(g, c)),
            ArrowObject::new(m.target.component(g, c)),
            m.on_sources.component(g, c),
            m.on_targets.component(g, c),
        )
        .expect("valid square per color");
        let cls = arrow::classify_arrow_map(&square);
        weq &= cls.inj.weak_equivalence;
        fib &= cls.inj.fibration;
    }
    SmithMapClass { weak_equivalence: weq, fibration: fib }
}

/// Fibrancy of an algebra map on the tensor side: injective fibrancy per
/// color, i.e. each component degreewise surjective.
pub fn algmap_is_fibrant(h: &AlgebraMap<ChainGround>, g: &ChainGround) -> bool {
    (0..h.source.operad.colors())
        .all(|c| arrow::is_inj_fibrant(&ArrowObject::new(h.component(g, c))))
}

// ---------------------------------------------------------------------------
// Derived unit verification
// ---------------------------------------------------------------------------

/// Per-color record of the derived-unit check.
#[derive(Debug, Clone, serde::Serialize)]
pub struct DerivedUnitEntry {
    pub color: Color,
    pub f_injective: bool,
    pub coker_fibrant: bool,
    pub unit_h0_iso: bool,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct DerivedUnitReport {
    pub entries: Vec<DerivedUnitEntry>,
    pub unit_weak_equivalence: bool,
    pub passed: bool,
    /// The scope restriction that applies to every run of this check.
    pub restriction: String,
}

pub const DERIVED_UNIT_RESTRICTION: &str = "cofibrancy surrogate: entrywise injective f stands in \
for cofibrant Smith ideals (over Q every object is cofibrant and every operad is sigma-cofibrant); \
the fibrant replacement is the identity because the cokernel side is already entrywise surjective; \
the full Quillen-equivalence statement for arbitrary objects needs cofibrant replacement in the \
algebra category and is not reproducible at this scale";

/// Verifies the derived-unit conclusion on an entrywise-injective Smith
/// ideal: the cokernel is fibrant on the algebra-map side and the unit
/// `s → ker(coker s)` is an entrywise isomorphism, hence a weak equivalence.
pub fn derived_unit_check(
    s: &SmithIdeal,
    g: &ChainGround,
) -> Result<DerivedUnitReport, SmithDefect> {
    let colors = s.operad().colors();
    for c in 0..colors {
        if !s.f_component(g, c).is_degreewise_injective() {
            return Err(SmithDefect::Precondition(format!(
                "f at color {c} is not degreewise injective"
            )));
        }
    }
    let unit = operadic_unit(s, g)?;
    let coker = smith_coker(s, g)?;
    let coker_fibrant = algmap_is_fibrant(&coker, g);
    let mut entries = Vec::new();
    for c in 0..colors {
        entries.push(DerivedUnitEntry {
            color: c,
            f_injective: s.f_component(g, c).is_degreewise_injective(),
            coker_fibrant: arrow::is_inj_fibrant(&ArrowObject::new(coker.component(g, c))),
            unit_h0_iso: unit.h0_component(g, c).is_degreewise_iso(),
        });
    }
    let unit_weq = classify_smith_map(&unit, g).weak_equivalence;
    let passed = coker_fibrant
        && unit_weq
        && entries.iter().all(|e| e.f_injective && e.coker_fibrant && e.unit_h0_iso);
    Ok(DerivedUnitReport {
        entries,
        unit_weak_equivalence: unit_weq,
        passed,
        restriction: DERIVED_UNIT_RESTRICTION.to_string(),
    })
}

/// `U∘ker = ker∘U`: the underlying arrows of the operadic kernel equal the
/// color-wise arrow-category kernels, as data.
pub fn underlying_ker_commutes(h: &AlgebraMap<ChainGround>, g: &ChainGround) -> bool {
    let Ok(k) = algmap_ker(h, g) else { return false };
    (0..h.source.operad.colors()).all(|c| {
        let arrow_level = arrow::ker_functor(&ArrowObject::new(h.component(g, c)));
        arrow_level.map() == &k.f_component(g, c)
    })
}

/// `U∘coker = coker∘U`: dually for the operadic cokernel.
pub fn underlying_coker_commutes(s: &SmithIdeal, g: &ChainGround) -> bool {
    let Ok(q) = smith_coker(s, g) else { return false };
    (0..s.operad().colors()).all(|c| {
        let arrow_level = arrow::coker_functor(&ArrowObject::new(s.f_component(g, c)));
        arrow_level.map() == &q.component(g, c)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::operad::{std_operad, StdOperad};

    fn dual_numbers_ideal() -> SmithIdeal {
        gen::dual_numbers_ideal(3)
    }

    #[test]
    fn dual_numbers_validates() {
        let g = ChainGround;
        let s = dual_numbers_ideal();
        assert_eq!(s.validate(&g), Ok(()));
    }

    #[test]
    fn assemble_unravel_round_trip() {
        let g = ChainGround;
        let s = dual_numbers_ideal();
        let a = assemble_box_algebra(&s, &g).unwrap();
        let back = unravel_box_algebra(&a, s.operad(), &g);
        assert_eq!(back.f, s.f);
        assert_eq!(back.algebra.lambda, s.algebra.lambda);
        assert_eq!(back.bimodule.theta, s.bimodule.theta);
        let again = assemble_box_algebra(&back, &g).unwrap();
        for (k, v) in &a.lambda {
            assert_eq!(again.lambda.get(k), Some(v), "λ at {k:?}");
        }
    }

    #[test]
    fn assembled_algebra_validates_in_box_ground() {
        let g = ChainGround;
        // a small instance keeps the cube sizes manageable
        let s = gen::dual_numbers_ideal(2);
        let a = assemble_box_algebra(&s, &g).unwrap();
        assert!(a.validate(&ArrowBoxGround).is_ok());
    }

    #[test]
    fn zero_and_identity_ideals() {
        let g = ChainGround;
        let s = dual_numbers_ideal();
        // zero ideal: X = 0
        let zero = gen::zero_ideal(&s.algebra, &g);
        assert_eq!(zero.validate(&g), Ok(()));
        let a = assemble_box_algebra(&zero, &g).unwrap();
        for m in a.lambda.values() {
            assert!(m.alpha0().is_zero_map());
        }
        // X = Y, f = id
        let diag = gen::unit_ideal(&s.algebra, &g);
        assert_eq!(diag.validate(&g), Ok(()));
        assert!(assemble_box_algebra(&diag, &g).is_ok());
    }

    #[test]
    fn smith_coker_of_dual_numbers() {
        let g = ChainGround;
        let s = dual_numbers_ideal();
        let q = smith_coker(&s, &g).unwrap();
        assert!(q.validate(&g).is_ok());
        assert!(q.target.validate(&g).is_ok());
        // quotient of the dual numbers by (ε) is ℚ
        assert_eq!(q.target.carrier(&g, 0).total_dim(), 1);
        assert!(underlying_coker_commutes(&s, &g));
    }

    #[test]
    fn algmap_ker_recovers_ideal() {
        let g = ChainGround;
        let s = dual_numbers_ideal();
        let q = smith_coker(&s, &g).unwrap();
        let k = algmap_ker(&q, &g).unwrap();
        assert_eq!(k.validate(&g), Ok(()));
        // the kernel of the quotient is one-dimensional: (ε)
        assert_eq!(k.bimodule.carrier(&g, 0).total_dim(), 1);
        assert!(underlying_ker_commutes(&q, &g));
        // φ = id → zero ideal
        let id = AlgebraMap::identity(&s.algebra, &g);
        let zk = algmap_ker(&id, &g).unwrap();
        assert_eq!(zk.bimodule.carrier(&g, 0).total_dim(), 0);
    }

    #[test]
    fn adjunction_witnesses_and_triangles() {
        let g = ChainGround;
        let s = dual_numbers_ideal();
        let unit = operadic_unit(&s, &g).unwrap();
        assert_eq!(unit.validate(&g), Ok(()));
        // f injective → unit entrywise iso
        assert!(unit.is_entrywise_iso(&g));
        let q = smith_coker(&s, &g).unwrap();
        let counit = operadic_counit(&q, &g).unwrap();
        assert_eq!(counit.validate(&g), Ok(()));
        // φ surjective → counit entrywise iso
        assert!(counit.is_entrywise_iso(&g));
        assert_eq!(operadic_triangles_hold(&s, &q, &g), Ok(true));
    }

    #[test]
    fn derived_unit_on_dual_numbers() {
        let g = ChainGround;
        let s = dual_numbers_ideal();
        let report = derived_unit_check(&s, &g).unwrap();
        assert!(report.passed);
        assert!(report.unit_weak_equivalence);
        // zero ideal: unit is the identity
        let zero = gen::zero_ideal(&s.algebra, &g);
        let report = derived_unit_check(&zero, &g).unwrap();
        assert!(report.passed);
    }

    #[test]
    fn tensor_algebra_round_trip() {
        let g = ChainGround;
        let s = dual_numbers_ideal();
        let q = smith_coker(&s, &g).unwrap();
        let packaged = algebras_of_arrows(&q, &g);
        assert!(packaged.validate(&ArrowTensorGround).is_ok());
        let back = arrows_of_algebras(&packaged, s.operad(), &g);
        assert!(back.validate(&g).is_ok());
        assert_eq!(back.components, q.components);
        assert_eq!(back.source.lambda, q.source.lambda);
        assert_eq!(back.target.lambda, q.target.lambda);
    }

    #[test]
    fn corrupted_two_x_is_caught() {
        let g = ChainGround;
        // (t) ⊂ ℚ[t]/(t³) has t·t ≠ 0, so the two-slot squares carry content.
        let operad = std_operad(StdOperad::As, 3, 1);
        let alg = gen::as_algebra(&operad, &gen::truncated_polynomial(3));
        let incl = crate::chain::ChainMap::new(
            crate::chain::ChainComplex::new(
                BTreeMap::from([(0, 2)]),
                BTreeMap::new(),
            )
            .unwrap(),
            alg.carrier(&g, 0),
            BTreeMap::from([(
                0,
                crate::ratlin::Matrix::from_rows(&[&[0, 0], &[1, 0], &[0, 1]]),
            )]),
        )
        .unwrap();
        let mut s = gen::submodule_ideal(&alg, &BTreeMap::from([(0, incl)]), &g).unwrap();
        assert_eq!(s.validate(&g), Ok(()));
        // Corrupt θ at a binary shape so the two-slot square breaks.
        let key = (Profile(vec![0, 0]), 0usize, 0usize);
        let m = s.bimodule.theta[&key].clone();
        let doubled = m.add(&m);
        s.bimodule.theta.insert(key, doubled);
        assert!(matches!(s.check_two_x(&g), Err(SmithDefect::TwoX { .. })));
        assert!(assemble_box_algebra(&s, &g).is_err());
    }
}
