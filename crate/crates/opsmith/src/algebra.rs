//! Algebras over an operad, algebra maps, and bimodules, in any ground
//! instantiation.
//!
//! Validation is exhaustive within the arity truncation: every structure map
//! is checked for unity, equivariance, and associativity as an exact map
//! equality. Missing structure maps default to zero maps under
//! [`AxiomScope::Strict`]; the [`AxiomScope::SkipMissing`] scope is for
//! truncation-approximate structures such as free algebras, where an absent
//! entry means "outside the truncation" rather than zero.

use crate::ground::Ground;
use crate::operad::{profiles_up_to, Color, GammaKey, Operad, OperadDefect, Profile};
use crate::perm::Perm;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraDefect {
    #[error("operad defect: {0}")]
    Operad(#[from] OperadDefect),
    #[error("structure map at ({profile:?};{output}) has wrong endpoints")]
    BadLambda { profile: Profile, output: Color },
    #[error("unity fails at color {0}")]
    Unity(Color),
    #[error("equivariance fails at ({profile:?};{output}) for σ = {sigma:?}")]
    Equivariance {
        profile: Profile,
        output: Color,
        sigma: Perm,
    },
    #[error("associativity fails at shape ({outer:?};{output}) ← {inners:?}")]
    Associativity {
        outer: Profile,
        output: Color,
        inners: Vec<Profile>,
    },
    #[error("map does not preserve the structure map at ({profile:?};{output})")]
    NotAMap { profile: Profile, output: Color },
    #[error("bimodule structure map at ({profile:?};{output}) slot {slot} has wrong endpoints")]
    BadTheta {
        profile: Profile,
        output: Color,
        slot: usize,
    },
    #[error("bimodule axiom fails at ({profile:?};{output}) slot {slot}: {what}")]
    Bimodule {
        profile: Profile,
        output: Color,
        slot: usize,
        what: &'static str,
    },
    #[error("carriers use color {0} outside the operad's color set")]
    ColorOutOfRange(Color),
}

/// How missing structure maps are treated during validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxiomScope {
    /// Absent entries are zero maps and all axioms are checked.
    Strict,
    /// Axiom instances that mention an absent entry are skipped; used for
    /// truncation-approximate structures.
    SkipMissing,
}

/// An algebra `(A, λ)` over an operad.
#[derive(Debug, Clone)]
pub struct OperadAlgebra<G: Ground> {
    pub operad: Operad<G>,
    pub carriers: BTreeMap<Color, G::Obj>,
    /// `λ : O(c̄;d) ⊗ A_{c₁} ⊗ … ⊗ A_{c_n} → A_d`.
    pub lambda: BTreeMap<(Profile, Color), G::Map>,
}

impl<G: Ground> OperadAlgebra<G> {
    pub fn carrier(&self, g: &G, c: Color) -> G::Obj {
        self.carriers.get(&c).cloned().unwrap_or_else(|| g.zero_obj())
    }

    /// Source object of `λ` at a shape.
    pub fn lambda_source(&self, g: &G, profile: &Profile, output: Color) -> G::Obj {
        let mut factors = vec![self.operad.entry(g, profile, output)];
        for &c in &profile.0 {
            factors.push(self.carrier(g, c));
        }
        g.multi_tensor(&factors)
    }

    pub fn lambda_map(&self, g: &G, profile: &Profile, output: Color) -> G::Map {
        if let Some(m) = self.lambda.get(&(profile.clone(), output)) {
            return m.clone();
        }
        g.zero_map(&self.lambda_source(g, profile, output), &self.carrier(g, output))
    }

    fn has_lambda(&self, profile: &Profile, output: Color) -> bool {
        self.lambda.contains_key(&(profile.clone(), output))
    }

    /// Shapes `(c̄;d)` with nonzero operad entry and all carriers nonzero.
    fn live_shapes(&self, g: &G) -> Vec<(Profile, Color)> {
        let mut out = Vec::new();
        for d in 0..self.operad.colors() {
            for p in profiles_up_to(self.operad.colors(), self.operad.max_arity()) {
                if self.operad.sym.is_zero_entry(g, &p, d) {
                    continue;
                }
                if g.is_zero_obj(&self.carrier(g, d)) {
                    continue;
                }
                if p.0.iter().any(|&c| g.is_zero_obj(&self.carrier(g, c))) {
                    continue;
                }
                out.push((p, d));
            }
        }
        out
    }

    pub fn validate(&self, g: &G) -> Result<(), AlgebraDefect> {
        self.validate_scoped(g, AxiomScope::Strict)
    }

    pub fn validate_scoped(&self, g: &G, scope: AxiomScope) -> Result<(), AlgebraDefect> {
        for c in self.carriers.keys() {
            if *c >= self.operad.colors() {
                return Err(AlgebraDefect::ColorOutOfRange(*c));
            }
        }
        // endpoints
        for ((profile, output), m) in &self.lambda {
            let src = self.lambda_source(g, profile, *output);
            if g.source(m) != src
                || g.target(m) != self.carrier(g, *output)
                || !g.validate_map(m)
            {
                return Err(AlgebraDefect::BadLambda {
                    profile: profile.clone(),
                    output: *output,
                });
            }
        }
        self.check_unity(g, scope)?;
        self.check_equivariance(g, scope)?;
        self.check_associativity(g, scope)
    }

    fn check_unity(&self, g: &G, scope: AxiomScope) -> Result<(), AlgebraDefect> {
        for c in 0..self.operad.colors() {
            let a = self.carrier(g, c);
            if g.is_zero_obj(&a) {
                continue;
            }
            let profile = Profile(vec![c]);
            if scope == AxiomScope::SkipMissing && !self.has_lambda(&profile, c) {
                continue;
            }
            let pad = g.pad_units_iso(&a, 1, 0);
            let step = g.multi_tensor_map(&[self.operad.units[&c].clone(), g.identity(&a)]);
            let composite =
                g.compose(&self.lambda_map(g, &profile, c), &g.compose(&step, &pad));
            if !g.map_eq(&composite, &g.identity(&a)) {
                return Err(AlgebraDefect::Unity(c));
            }
        }
        Ok(())
    }

    fn check_equivariance(&self, g: &G, scope: AxiomScope) -> Result<(), AlgebraDefect> {
        for (profile, output) in self.live_shapes(g) {
            let n = profile.len();
            if n < 2 {
                continue;
            }
            if scope == AxiomScope::SkipMissing && !self.has_lambda(&profile, output) {
                continue;
            }
            let mut factors = vec![self.operad.entry(g, &profile, output)];
            for &c in &profile.0 {
                factors.push(self.carrier(g, c));
            }
            for sigma in Perm::all(n) {
                if sigma.is_identity() {
                    continue;
                }
                let moved = profile.act(&sigma);
                if scope == AxiomScope::SkipMissing && !self.has_lambda(&moved, output) {
                    continue;
                }
                let mut tau_images = vec![0usize];
                for i in 0..n {
                    tau_images.push(sigma.apply(i) + 1);
                }
                let tau = Perm::new(tau_images);
                let permute = g.permute_iso(&factors, &tau);
                let mut maps =
                    vec![self.operad.sym.act(g, &profile, output, &sigma).map_err(AlgebraDefect::Operad)?];
                for i in 0..n {
                    maps.push(g.identity(&factors[sigma.apply(i) + 1]));
                }
                let act_step = g.multi_tensor_map(&maps);
                let rhs = g.compose(
                    &self.lambda_map(g, &moved, output),
                    &g.compose(&act_step, &permute),
                );
                let lhs = self.lambda_map(g, &profile, output);
                if !g.map_eq(&lhs, &rhs) {
                    return Err(AlgebraDefect::Equivariance {
                        profile: profile.clone(),
                        output,
                        sigma,
                    });
                }
            }
        }
        Ok(())
    }

    fn check_associativity(&self, g: &G, scope: AxiomScope) -> Result<(), AlgebraDefect> {
        for key in self.operad_shapes(g) {
            if scope == AxiomScope::SkipMissing {
                let total = Profile::concat(&key.inners.iter().collect::<Vec<_>>());
                let all_present = self.has_lambda(&total, key.output)
                    && self.has_lambda(&key.outer, key.output)
                    && key
                        .inners
                        .iter()
                        .enumerate()
                        .all(|(i, b)| self.has_lambda(b, key.outer.0[i]));
                if !all_present {
                    continue;
                }
            }
            if !self.check_assoc_shape(g, &key) {
                return Err(AlgebraDefect::Associativity {
                    outer: key.outer.clone(),
                    output: key.output,
                    inners: key.inners.clone(),
                });
            }
        }
        Ok(())
    }

    /// γ-shapes with nonzero entries whose inputs and outputs have nonzero
    /// carriers.
    fn operad_shapes(&self, g: &G) -> Vec<GammaKey> {
        let mut shapes = Vec::new();
        for (outer, output) in self.live_shapes(g) {
            let n = outer.len();
            if n == 0 {
                continue;
            }
            let mut partial: Vec<Vec<Profile>> = vec![vec![]];
            for i in 0..n {
                let color = outer.0[i];
                let mut next = Vec::new();
                for pre in &partial {
                    let used: usize = pre.iter().map(Profile::len).sum();
                    for inner in profiles_up_to(self.operad.colors(), self.operad.max_arity() - used)
                    {
                        if self.operad.sym.is_zero_entry(g, &inner, color) {
                            continue;
                        }
                        if inner.0.iter().any(|&c| g.is_zero_obj(&self.carrier(g, c))) {
                            continue;
                        }
                        let mut v = pre.clone();
                        v.push(inner);
                        next.push(v);
                    }
                }
                partial = next;
            }
            for inners in partial {
                shapes.push(GammaKey { outer: outer.clone(), output, inners });
            }
        }
        shapes
    }

    fn check_assoc_shape(&self, g: &G, key: &GammaKey) -> bool {
        let n = key.outer.len();
        let sizes: Vec<usize> = key.inners.iter().map(Profile::len).collect();
        let total = Profile::concat(&key.inners.iter().collect::<Vec<_>>());
        let k_total = total.len();
        // W = [O(c̄;d), O(b̄₁;c₁)…O(b̄_n;c_n), A_{b̄ flat}]
        let mut factors = vec![self.operad.entry(g, &key.outer, key.output)];
        for (i, inner) in key.inners.iter().enumerate() {
            factors.push(self.operad.entry(g, inner, key.outer.0[i]));
        }
        for &c in &total.0 {
            factors.push(self.carrier(g, c));
        }

        // Route 1: λ(γ(f;ḡ); ā).
        let mut sizes1 = vec![1 + n];
        sizes1.extend(std::iter::repeat(1).take(k_total));
        let regroup1 = g.regroup_iso(&factors, &sizes1);
        let mut step1 = vec![self.operad.gamma_map(g, key)];
        for t in 0..k_total {
            step1.push(g.identity(&factors[1 + n + t]));
        }
        let step1 = g.multi_tensor_map(&step1);
        let route1 = g.compose(
            &self.lambda_map(g, &total, key.output),
            &g.compose(&step1, &regroup1),
        );

        // Route 2: λ(f; λ(g₁;ā₁), …, λ(g_n;ā_n)).
        let mut tau_images = vec![0usize];
        let mut a_off = 1 + n;
        for i in 0..n {
            tau_images.push(1 + i);
            for _ in 0..sizes[i] {
                tau_images.push(a_off);
                a_off += 1;
            }
        }
        let tau = Perm::new(tau_images);
        let permute = g.permute_iso(&factors, &tau);
        let interleaved: Vec<G::Obj> = tau.act_right(&factors);
        let mut sizes2 = vec![1usize];
        sizes2.extend(sizes.iter().map(|&k| 1 + k));
        let regroup2 = g.regroup_iso(&interleaved, &sizes2);
        let mut step2 = vec![g.identity(&factors[0])];
        for i in 0..n {
            step2.push(self.lambda_map(g, &key.inners[i], key.outer.0[i]));
        }
        let step2 = g.multi_tensor_map(&step2);
        let route2 = g.compose(
            &self.lambda_map(g, &key.outer, key.output),
            &g.compose(&step2, &g.compose(&regroup2, &permute)),
        );

        g.map_eq(&route1, &route2)
    }
}

/// A structure-preserving map of algebras over the same operad.
#[derive(Debug, Clone)]
pub struct AlgebraMap<G: Ground> {
    pub source: OperadAlgebra<G>,
    pub target: OperadAlgebra<G>,
    pub components: BTreeMap<Color, G::Map>,
}

impl<G: Ground> AlgebraMap<G> {
    pub fn identity(a: &OperadAlgebra<G>, g: &G) -> Self {
        let components = (0..a.operad.colors())
            .map(|c| (c, g.identity(&a.carrier(g, c))))
            .collect();
        AlgebraMap { source: a.clone(), target: a.clone(), components }
    }

    pub fn component(&self, g: &G, c: Color) -> G::Map {
        self.components.get(&c).cloned().unwrap_or_else(|| {
            g.zero_map(&self.source.carrier(g, c), &self.target.carrier(g, c))
        })
    }

    pub fn compose(&self, g: &G, first: &AlgebraMap<G>) -> AlgebraMap<G> {
        let components = (0..self.source.operad.colors())
            .map(|c| (c, g.compose(&self.component(g, c), &first.component(g, c))))
            .collect();
        AlgebraMap {
            source: first.source.clone(),
            target: self.target.clone(),
            components,
        }
    }

    pub fn validate(&self, g: &G) -> Result<(), AlgebraDefect> {
        for (c, m) in &self.components {
            if g.source(m) != self.source.carrier(g, *c)
                || g.target(m) != self.target.carrier(g, *c)
                || !g.validate_map(m)
            {
                return Err(AlgebraDefect::NotAMap {
                    profile: Profile::empty(),
                    output: *c,
                });
            }
        }
        for d in 0..self.source.operad.colors() {
            for profile in
                profiles_up_to(self.source.operad.colors(), self.source.operad.max_arity())
            {
                if self.source.operad.sym.is_zero_entry(g, &profile, d) {
                    continue;
                }
                // h_d ∘ λ^A = λ^B ∘ (id_O ⊗ h ⊗ … ⊗ h)
                let lhs = g.compose(
                    &self.component(g, d),
                    &self.source.lambda_map(g, &profile, d),
                );
                let mut maps = vec![g.identity(&self.source.operad.entry(g, &profile, d))];
                for &c in &profile.0 {
                    maps.push(self.component(g, c));
                }
                let rhs = g.compose(
                    &self.target.lambda_map(g, &profile, d),
                    &g.multi_tensor_map(&maps),
                );
                if !g.map_eq(&lhs, &rhs) {
                    return Err(AlgebraDefect::NotAMap { profile, output: d });
                }
            }
        }
        Ok(())
    }
}

/// A bimodule `(X, θ)` over an algebra `(A, λ)`: structure maps with exactly
/// one carrier slot replaced by the module.
#[derive(Debug, Clone)]
pub struct Bimodule<G: Ground> {
    pub algebra: OperadAlgebra<G>,
    pub carriers: BTreeMap<Color, G::Obj>,
    /// `(c̄, d, i) ↦ θ : O(c̄;d) ⊗ A_{c₁} ⊗ … X_{c_i} … ⊗ A_{c_n} → X_d`
    /// with `i` zero-based.
    pub theta: BTreeMap<(Profile, Color, usize), G::Map>,
}

impl<G: Ground> Bimodule<G> {
    pub fn carrier(&self, g: &G, c: Color) -> G::Obj {
        self.carriers.get(&c).cloned().unwrap_or_else(|| g.zero_obj())
    }

    pub fn theta_source(&self, g: &G, profile: &Profile, output: Color, slot: usize) -> G::Obj {
        let mut factors = vec![self.algebra.operad.entry(g, profile, output)];
        for (j, &c) in profile.0.iter().enumerate() {
            if j == slot {
                factors.push(self.carrier(g, c));
            } else {
                factors.push(self.algebra.carrier(g, c));
            }
        }
        g.multi_tensor(&factors)
    }

    pub fn theta_map(&self, g: &G, profile: &Profile, output: Color, slot: usize) -> G::Map {
        if let Some(m) = self.theta.get(&(profile.clone(), output, slot)) {
            return m.clone();
        }
        g.zero_map(
            &self.theta_source(g, profile, output, slot),
            &self.carrier(g, output),
        )
    }

    pub fn validate(&self, g: &G) -> Result<(), AlgebraDefect> {
        for ((profile, output, slot), m) in &self.theta {
            if *slot >= profile.len()
                || g.source(m) != self.theta_source(g, profile, *output, *slot)
                || g.target(m) != self.carrier(g, *output)
                || !g.validate_map(m)
            {
                return Err(AlgebraDefect::BadTheta {
                    profile: profile.clone(),
                    output: *output,
                    slot: *slot,
                });
            }
        }
        self.check_unity(g)?;
        self.check_equivariance(g)?;
        self.check_associativity(g)
    }

    fn check_unity(&self, g: &G) -> Result<(), AlgebraDefect> {
        for c in 0..self.algebra.operad.colors() {
            let x = self.carrier(g, c);
            if g.is_zero_obj(&x) {
                continue;
            }
            let profile = Profile(vec![c]);
            let pad = g.pad_units_iso(&x, 1, 0);
            let step =
                g.multi_tensor_map(&[self.algebra.operad.units[&c].clone(), g.identity(&x)]);
            let composite =
                g.compose(&self.theta_map(g, &profile, c, 0), &g.compose(&step, &pad));
            if !g.map_eq(&composite, &g.identity(&x)) {
                return Err(AlgebraDefect::Bimodule {
                    profile,
                    output: c,
                    slot: 0,
                    what: "unity",
                });
            }
        }
        Ok(())
    }

    fn live_shapes(&self, g: &G) -> Vec<(Profile, Color, usize)> {
        let mut out = Vec::new();
        for d in 0..self.algebra.operad.colors() {
            if g.is_zero_obj(&self.carrier(g, d)) {
                continue;
            }
            for p in profiles_up_to(self.algebra.operad.colors(), self.algebra.operad.max_arity())
            {
                if p.is_empty() || self.algebra.operad.sym.is_zero_entry(g, &p, d) {
                    continue;
                }
                for slot in 0..p.len() {
                    let nonzero = p.0.iter().enumerate().all(|(j, &c)| {
                        if j == slot {
                            !g.is_zero_obj(&self.carrier(g, c))
                        } else {
                            !g.is_zero_obj(&self.algebra.carrier(g, c))
                        }
                    });
                    if nonzero {
                        out.push((p.clone(), d, slot));
                    }
                }
            }
        }
        out
    }

    fn check_equivariance(&self, g: &G) -> Result<(), AlgebraDefect> {
        for (profile, output, slot) in self.live_shapes(g) {
            let n = profile.len();
            if n < 2 {
                continue;
            }
            let mut factors = vec![self.algebra.operad.entry(g, &profile, output)];
            for (j, &c) in profile.0.iter().enumerate() {
                if j == slot {
                    factors.push(self.carrier(g, c));
                } else {
                    factors.push(self.algebra.carrier(g, c));
                }
            }
            for sigma in Perm::all(n) {
                if sigma.is_identity() {
                    continue;
                }
                let moved_profile = profile.act(&sigma);
                let moved_slot = sigma.inverse().apply(slot);
                let mut tau_images = vec![0usize];
                for i in 0..n {
                    tau_images.push(sigma.apply(i) + 1);
                }
                let tau = Perm::new(tau_images);
                let permute = g.permute_iso(&factors, &tau);
                let mut maps = vec![self
                    .algebra
                    .operad
                    .sym
                    .act(g, &profile, output, &sigma)
                    .map_err(AlgebraDefect::Operad)?];
                for i in 0..n {
                    maps.push(g.identity(&factors[sigma.apply(i) + 1]));
                }
                let act_step = g.multi_tensor_map(&maps);
                let rhs = g.compose(
                    &self.theta_map(g, &moved_profile, output, moved_slot),
                    &g.compose(&act_step, &permute),
                );
                let lhs = self.theta_map(g, &profile, output, slot);
                if !g.map_eq(&lhs, &rhs) {
                    return Err(AlgebraDefect::Bimodule {
                        profile: profile.clone(),
                        output,
                        slot,
                        what: "equivariance",
                    });
                }
            }
        }
        Ok(())
    }

    fn check_associativity(&self, g: &G) -> Result<(), AlgebraDefect> {
        // γ-shapes with the module placed at every admissible deep slot.
        for key in self.algebra.operad_shapes(g) {
            let sizes: Vec<usize> = key.inners.iter().map(Profile::len).collect();
            let total = Profile::concat(&key.inners.iter().collect::<Vec<_>>());
            for global_slot in 0..total.len() {
                // locate block and position
                let mut block = 0;
                let mut within = global_slot;
                while within >= sizes[block] {
                    within -= sizes[block];
                    block += 1;
                }
                if g.is_zero_obj(&self.carrier(g, total.0[global_slot])) {
                    continue;
                }
                if !self.check_assoc_instance(g, &key, block, within, global_slot) {
                    return Err(AlgebraDefect::Bimodule {
                        profile: key.outer.clone(),
                        output: key.output,
                        slot: global_slot,
                        what: "associativity",
                    });
                }
            }
        }
        Ok(())
    }

    fn check_assoc_instance(
        &self,
        g: &G,
        key: &GammaKey,
        block: usize,
        within: usize,
        global_slot: usize,
    ) -> bool {
        let n = key.outer.len();
        let sizes: Vec<usize> = key.inners.iter().map(Profile::len).collect();
        let total = Profile::concat(&key.inners.iter().collect::<Vec<_>>());
        let k_total = total.len();
        let mut factors = vec![self.algebra.operad.entry(g, &key.outer, key.output)];
        for (i, inner) in key.inners.iter().enumerate() {
            factors.push(self.algebra.operad.entry(g, inner, key.outer.0[i]));
        }
        for (t, &c) in total.0.iter().enumerate() {
            if t == global_slot {
                factors.push(self.carrier(g, c));
            } else {
                factors.push(self.algebra.carrier(g, c));
            }
        }

        // Route 1: θ(γ(f;ḡ); … X …).
        let mut sizes1 = vec![1 + n];
        sizes1.extend(std::iter::repeat(1).take(k_total));
        let regroup1 = g.regroup_iso(&factors, &sizes1);
        let mut step1 = vec![self.algebra.operad.gamma_map(g, key)];
        for t in 0..k_total {
            step1.push(g.identity(&factors[1 + n + t]));
        }
        let step1 = g.multi_tensor_map(&step1);
        let route1 = g.compose(
            &self.theta_map(g, &total, key.output, global_slot),
            &g.compose(&step1, &regroup1),
        );

        // Route 2: θ(f; λ(g₁;…), …, θ(g_block; …X…), …, λ(g_n;…)).
        let mut tau_images = vec![0usize];
        let mut a_off = 1 + n;
        for i in 0..n {
            tau_images.push(1 + i);
            for _ in 0..sizes[i] {
                tau_images.push(a_off);
                a_off += 1;
            }
        }
        let tau = Perm::new(tau_images);
        let permute = g.permute_iso(&factors, &tau);
        let interleaved: Vec<G::Obj> = tau.act_right(&factors);
        let mut sizes2 = vec![1usize];
        sizes2.extend(sizes.iter().map(|&k| 1 + k));
        let regroup2 = g.regroup_iso(&interleaved, &sizes2);
        let mut step2 = vec![g.identity(&factors[0])];
        for i in 0..n {
            if i == block {
                step2.push(self.theta_map(g, &key.inners[i], key.outer.0[i], within));
            } else {
                step2.push(self.algebra.lambda_map(g, &key.inners[i], key.outer.0[i]));
            }
        }
        let step2 = g.multi_tensor_map(&step2);
        let route2 = g.compose(
            &self.theta_map(g, &key.outer, key.output, block),
            &g.compose(&step2, &g.compose(&regroup2, &permute)),
        );

        g.map_eq(&route1, &route2)
    }
}

/// A map of bimodules over the same algebra.
pub fn validate_bimodule_map<G: Ground>(
    g: &G,
    source: &Bimodule<G>,
    target: &Bimodule<G>,
    components: &BTreeMap<Color, G::Map>,
) -> Result<(), AlgebraDefect> {
    let colors = source.algebra.operad.colors();
    let comp = |c: Color| -> G::Map {
        components
            .get(&c)
            .cloned()
            .unwrap_or_else(|| g.zero_map(&source.carrier(g, c), &target.carrier(g, c)))
    };
    for (c, m) in components {
        if g.source(m) != source.carrier(g, *c)
            || g.target(m) != target.carrier(g, *c)
            || !g.validate_map(m)
        {
            return Err(AlgebraDefect::NotAMap {
                profile: Profile::empty(),
                output: *c,
            });
        }
    }
    for d in 0..colors {
        for profile in profiles_up_to(colors, source.algebra.operad.max_arity()) {
            if profile.is_empty() || source.algebra.operad.sym.is_zero_entry(g, &profile, d) {
                continue;
            }
            for slot in 0..profile.len() {
                let lhs = g.compose(&comp(d), &source.theta_map(g, &profile, d, slot));
                let mut maps = vec![g.identity(&source.algebra.operad.entry(g, &profile, d))];
                for (j, &c) in profile.0.iter().enumerate() {
                    if j == slot {
                        maps.push(comp(c));
                    } else {
                        maps.push(g.identity(&source.algebra.carrier(g, c)));
                    }
                }
                let rhs = g.compose(
                    &target.theta_map(g, &profile, d, slot),
                    &g.multi_tensor_map(&maps),
                );
                if !g.map_eq(&lhs, &rhs) {
                    return Err(AlgebraDefect::NotAMap { profile, output: d });
                }
            }
        }
    }
    Ok(())
}

/// Restriction of scalars: a bimodule over the target of `h` becomes a
/// bimodule over the source by precomposing every algebra slot with `h`.
pub fn restrict_bimodule<G: Ground>(
    g: &G,
    b: &Bimodule<G>,
    h: &AlgebraMap<G>,
) -> Bimodule<G> {
    assert_eq!(
        h.target.carriers, b.algebra.carriers,
        "bimodule must live over the target of h"
    );
    let mut theta = BTreeMap::new();
    for ((profile, output, slot), m) in &b.theta {
        let mut maps = vec![g.identity(&b.algebra.operad.entry(g, profile, *output))];
        for (j, &c) in profile.0.iter().enumerate() {
            if j == *slot {
                maps.push(g.identity(&b.carrier(g, c)));
            } else {
                maps.push(h.component(g, c));
            }
        }
        theta.insert(
            (profile.clone(), *output, *slot),
            g.compose(m, &g.multi_tensor_map(&maps)),
        );
    }
    Bimodule {
        algebra: h.source.clone(),
        carriers: b.carriers.clone(),
        theta,
    }
}

/// Regular bimodule: the algebra over itself, `θ` given by `λ`.
pub fn regular_bimodule<G: Ground>(g: &G, a: &OperadAlgebra<G>) -> Bimodule<G> {
    let mut theta = BTreeMap::new();
    for ((profile, output), m) in &a.lambda {
        if profile.is_empty() {
            continue;
        }
        for slot in 0..profile.len() {
            theta.insert((profile.clone(), *output, slot), m.clone());
        }
    }
    let _ = g;
    Bimodule {
        algebra: a.clone(),
        carriers: a.carriers.clone(),
        theta,
    }
}

// ---------------------------------------------------------------------------
// Free algebras (truncated circle product)
// ---------------------------------------------------------------------------

/// The truncated free algebra together with the presentation used to build
/// it: for each color, the unquotiented sum of `O(c̄;d) ⊗ X_{c̄}` over all
/// profiles of length `1..=N` and the coinvariant projection onto the
/// carrier. The nullary part is excluded; structure maps whose composite
/// arity would exceed the truncation have zero components there.
pub struct FreeAlgebra<G: Ground> {
    pub algebra: OperadAlgebra<G>,
    pub presentations: BTreeMap<Color, FreePresentation<G>>,
}

pub struct FreePresentation<G: Ground> {
    /// Summand index: (arity, profile).
    pub summands: Vec<(usize, Profile)>,
    pub pre_sum: G::Obj,
    pub injections: Vec<G::Map>,
    pub projections: Vec<G::Map>,
    /// Coinvariant projection `pre_sum → carrier`.
    pub quotient: G::Map,
}

/// Builds the truncated free algebra on the carriers `x`.
pub fn free_algebra<G: Ground>(
    g: &G,
    operad: &Operad<G>,
    x: &BTreeMap<Color, G::Obj>,
) -> FreeAlgebra<G> {
    let colors = operad.colors();
    let max = operad.max_arity();
    let carrier_of = |c: Color| -> G::Obj { x.get(&c).cloned().unwrap_or_else(|| g.zero_obj()) };

    let mut presentations: BTreeMap<Color, FreePresentation<G>> = BTreeMap::new();
    for d in 0..colors {
        let mut summands = Vec::new();
        let mut objects = Vec::new();
        for n in 1..=max {
            for p in crate::operad::profiles_of_length(colors, n) {
                if p.0.iter().any(|&c| g.is_zero_obj(&carrier_of(c))) {
                    continue;
                }
                if operad.sym.is_zero_entry(g, &p, d) {
                    continue;
                }
                let mut factors = vec![operad.entry(g, &p, d)];
                for &c in &p.0 {
                    factors.push(carrier_of(c));
                }
                summands.push((n, p));
                objects.push(g.multi_tensor(&factors));
            }
        }
        let (pre_sum, injections, projections) = g.direct_sum(&objects);
        // Σ-mixing relations: (σ-translate − id) on every summand.
        let mut rels = Vec::new();
        for (si, (n, p)) in summands.iter().enumerate() {
            for sigma in Perm::all(*n) {
                if sigma.is_identity() {
                    continue;
                }
                let moved = p.act(&sigma);
                let Some(ti) = summands.iter().position(|(m, q)| m == n && q == &moved) else {
                    continue;
                };
                let act = operad.sym.act(g, p, d, &sigma).expect("operad action");
                let mut all = vec![operad.entry(g, p, d)];
                for &c in &p.0 {
                    all.push(carrier_of(c));
                }
                let mut tau_images = vec![0usize];
                for i in 0..*n {
                    tau_images.push(sigma.apply(i) + 1);
                }
                let tau = Perm::new(tau_images);
                let permute = g.permute_iso(&all, &tau);
                let mut maps = vec![act];
                for i in 0..*n {
                    maps.push(g.identity(&all[sigma.apply(i) + 1]));
                }
                let step = g.multi_tensor_map(&maps);
                let translated =
                    g.compose(&injections[ti], &g.compose(&step, &permute));
                let rel = g.subtract_maps(&translated, &injections[si]);
                rels.push(rel);
            }
        }
        let (_, quotient) = g.quotient(&pre_sum, &rels);
        presentations.insert(
            d,
            FreePresentation { summands, pre_sum, injections, projections, quotient },
        );
    }

    let carriers: BTreeMap<Color, G::Obj> = presentations
        .iter()
        .map(|(d, pres)| (*d, g.target(&pres.quotient)))
        .collect();

    let mut algebra = OperadAlgebra {
        operad: operad.clone(),
        carriers,
        lambda: BTreeMap::new(),
    };
    build_free_lambda(g, operad, &presentations, &mut algebra, &carrier_of);
    FreeAlgebra { algebra, presentations }
}

/// Structure maps of the free algebra: assembled on the unquotiented sums
/// from `γ`, then descended through the coinvariant projections.
fn build_free_lambda<G: Ground>(
    g: &G,
    operad: &Operad<G>,
    presentations: &BTreeMap<Color, FreePresentation<G>>,
    algebra: &mut OperadAlgebra<G>,
    carrier_of: &dyn Fn(Color) -> G::Obj,
) {
    let colors = operad.colors();
    let max = operad.max_arity();
    let mut lambda = BTreeMap::new();
    for d in 0..colors {
        let pres_d = &presentations[&d];
        if g.is_zero_obj(&algebra.carrier(g, d)) {
            continue;
        }
        for profile in profiles_up_to(colors, max) {
            let n = profile.len();
            if n == 0 || operad.sym.is_zero_entry(g, &profile, d) {
                continue;
            }
            if profile.0.iter().any(|&c| g.is_zero_obj(&algebra.carrier(g, c))) {
                continue;
            }
            // Γ : O(c̄;d) ⊗ P_{c₁} ⊗ … ⊗ P_{c_n} → P_d, assembled from γ on
            // every summand tuple whose composite arity fits.
            let entry = operad.entry(g, &profile, d);
            let mut big_factors = vec![entry.clone()];
            for &c in &profile.0 {
                big_factors.push(presentations[&c].pre_sum.clone());
            }
            let big_src = g.multi_tensor(&big_factors);
            let mut gamma_total = g.zero_map(&big_src, &pres_d.pre_sum);
            let mut tuples: Vec<Vec<usize>> = vec![vec![]];
            for &c in &profile.0 {
                let mut next = Vec::new();
                for pre in &tuples {
                    for si in 0..presentations[&c].summands.len() {
                        let mut v = pre.clone();
                        v.push(si);
                        next.push(v);
                    }
                }
                tuples = next;
            }
            for tuple in &tuples {
                let inners: Vec<Profile> = tuple
                    .iter()
                    .zip(&profile.0)
                    .map(|(&si, &c)| presentations[&c].summands[si].1.clone())
                    .collect();
                let total = Profile::concat(&inners.iter().collect::<Vec<_>>());
                let m_total = total.len();
                if m_total == 0 || m_total > max {
                    continue;
                }
                let Some(target_summand) = pres_d
                    .summands
                    .iter()
                    .position(|(m, q)| *m == m_total && q == &total)
                else {
                    continue;
                };
                // project each P factor onto the chosen summand
                let mut step = vec![g.identity(&entry)];
                for (&si, &c) in tuple.iter().zip(&profile.0) {
                    step.push(presentations[&c].projections[si].clone());
                }
                let to_summands = g.multi_tensor_map(&step);
                // flatten [O, (O₁⊗X̄₁), …] and rearrange for γ
                let mut flat = vec![entry.clone()];
                for (i, inner) in inners.iter().enumerate() {
                    flat.push(operad.entry(g, inner, profile.0[i]));
                    for &b in &inner.0 {
                        flat.push(carrier_of(b));
                    }
                }
                let mut sizes = vec![1usize];
                for inner in &inners {
                    sizes.push(1 + inner.len());
                }
                let ungroup = g.invert_iso(&g.regroup_iso(&flat, &sizes));
                let mut tau_images = vec![0usize];
                let mut pos_inner = Vec::new();
                let mut pos_x = Vec::new();
                let mut idx = 1;
                for inner in &inners {
                    pos_inner.push(idx);
                    idx += 1;
                    for _ in 0..inner.len() {
                        pos_x.push(idx);
                        idx += 1;
                    }
                }
                tau_images.extend(pos_inner);
                tau_images.extend(pos_x);
                let tau = Perm::new(tau_images);
                let permute = g.permute_iso(&flat, &tau);
                let arranged: Vec<G::Obj> = tau.act_right(&flat);
                let mut sizes_g = vec![1 + n];
                sizes_g.extend(std::iter::repeat(1).take(m_total));
                let regroup_g = g.regroup_iso(&arranged, &sizes_g);
                let key = GammaKey {
                    outer: profile.clone(),
                    output: d,
                    inners: inners.clone(),
                };
                let mut gamma_step = vec![operad.gamma_map(g, &key)];
                for inner in &inners {
                    for &b in &inner.0 {
                        gamma_step.push(g.identity(&carrier_of(b)));
                    }
                }
                let gamma_step = g.multi_tensor_map(&gamma_step);
                let mut comp = g.compose(&ungroup, &to_summands);
                comp = g.compose(&permute, &comp);
                comp = g.compose(&regroup_g, &comp);
                comp = g.compose(&gamma_step, &comp);
                comp = g.compose(&pres_d.injections[target_summand], &comp);
                gamma_total = g.add_maps(&gamma_total, &comp);
            }
            // Descend through the coinvariant quotients on both sides.
            let mut src_proj_maps = vec![g.identity(&entry)];
            for &c in &profile.0 {
                src_proj_maps.push(presentations[&c].quotient.clone());
            }
            let src_proj = g.multi_tensor_map(&src_proj_maps);
            let descended = g
                .descend(&gamma_total, &src_proj, &pres_d.quotient)
                .expect("free structure maps descend to coinvariants");
            lambda.insert((profile.clone(), d), descended);
        }
    }
    algebra.lambda = lambda;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::ChainComplex;
    use crate::ground::ChainGround;
    use crate::operad::{std_operad, StdOperad};

    #[test]
    fn free_triv_is_identity() {
        let g = ChainGround;
        let o = std_operad(StdOperad::Triv, 3, 1);
        let x = BTreeMap::from([(0usize, ChainComplex::disk(1))]);
        let fa = free_algebra(&g, &o, &x);
        assert_eq!(fa.algebra.carrier(&g, 0).dims(), ChainComplex::disk(1).dims());
        assert!(fa.algebra.validate_scoped(&g, AxiomScope::SkipMissing).is_ok());
    }
}
