//! Arity-truncated colored operads over an abstract ground category.
//!
//! An operad stores entries `O(c̄;d)` for profiles of length at most the
//! truncation arity, symmetric-group actions generated by adjacent
//! transpositions, total composition maps `γ`, and colored units. The axiom
//! checker is exhaustive within the truncation: unity, equivariance, and
//! associativity are verified shape by shape as exact map equalities, with
//! all monoidal coherence isomorphisms constructed explicitly.

use crate::arrow::{l0, l1, ArrowMap, ArrowObject};
use crate::chain::{ChainComplex, ChainMap};
use crate::ground::{ArrowBoxGround, ArrowTensorGround, ChainGround, Ground};
use crate::perm::Perm;
use crate::ratlin::{rank, ratio, right_inverse, Matrix};
use std::collections::BTreeMap;

pub type Color = usize;

/// A finite, possibly empty sequence of colors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Profile(pub Vec<Color>);

impl Profile {
    pub fn empty() -> Self {
        Profile(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Right action: `(c̄·σ)_i = c_{σ(i)}`.
    pub fn act(&self, sigma: &Perm) -> Profile {
        Profile(sigma.act_right(&self.0))
    }

    pub fn concat(parts: &[&Profile]) -> Profile {
        Profile(parts.iter().flat_map(|p| p.0.iter().copied()).collect())
    }
}

/// All profiles over `colors` colors with the exact given length.
pub fn profiles_of_length(colors: usize, len: usize) -> Vec<Profile> {
    let mut out = vec![Profile::empty()];
    for _ in 0..len {
        let mut next = Vec::new();
        for p in &out {
            for c in 0..colors {
                let mut v = p.0.clone();
                v.push(c);
                next.push(Profile(v));
            }
        }
        out = next;
    }
    out
}

/// All profiles of length `0..=max_len`.
pub fn profiles_up_to(colors: usize, max_len: usize) -> Vec<Profile> {
    (0..=max_len).flat_map(|l| profiles_of_length(colors, l)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OperadDefect {
    #[error("entry ({0:?};{1}) has no action for the adjacent transposition s_{2}")]
    MissingAction(Profile, Color, usize),
    #[error("action relation {relation} fails at entry ({profile:?};{output})")]
    ActionRelation {
        profile: Profile,
        output: Color,
        relation: String,
    },
    #[error("unit for color {0} is missing or has wrong endpoints")]
    BadUnit(Color),
    #[error("{side} unity fails at entry ({profile:?};{output})")]
    Unity {
        profile: Profile,
        output: Color,
        side: &'static str,
    },
    #[error("equivariance fails at shape ({outer:?};{output}) ← {inners:?} for σ = {sigma:?}")]
    Equivariance {
        outer: Profile,
        output: Color,
        inners: Vec<Profile>,
        sigma: Perm,
    },
    #[error("associativity fails at shape ({outer:?};{output}) ← {inners:?} ← {inner_inners:?}")]
    Associativity {
        outer: Profile,
        output: Color,
        inners: Vec<Profile>,
        inner_inners: Vec<Vec<Profile>>,
    },
    #[error("γ at shape ({outer:?};{output}) ← {inners:?} has wrong endpoints")]
    BadGamma {
        outer: Profile,
        output: Color,
        inners: Vec<Profile>,
    },
    #[error("action is not a group homomorphism")]
    NotAnAction,
}

/// A colored symmetric sequence: entries indexed by (input profile, output
/// color), with the symmetric-group action stored on adjacent transpositions.
#[derive(Debug, Clone)]
pub struct SymSeq<G: Ground> {
    pub colors: usize,
    pub max_arity: usize,
    pub entries: BTreeMap<(Profile, Color), G::Obj>,
    /// `(c̄, d, i) → iso O(c̄;d) → O(c̄·s_i;d)`.
    pub actions: BTreeMap<(Profile, Color, usize), G::Map>,
}

impl<G: Ground> SymSeq<G> {
    pub fn entry(&self, g: &G, profile: &Profile, output: Color) -> G::Obj {
        self.entries
            .get(&(profile.clone(), output))
            .cloned()
            .unwrap_or_else(|| g.zero_obj())
    }

    pub fn is_zero_entry(&self, g: &G, profile: &Profile, output: Color) -> bool {
        g.is_zero_obj(&self.entry(g, profile, output))
    }

    /// Action of the adjacent transposition `s_i`; zero entries transport by
    /// the zero map.
    pub fn act_adjacent(
        &self,
        g: &G,
        profile: &Profile,
        output: Color,
        i: usize,
    ) -> Result<G::Map, OperadDefect> {
        let src = self.entry(g, profile, output);
        let tgt = self.entry(g, &profile.act(&Perm::adjacent(profile.len(), i)), output);
        if g.is_zero_obj(&src) && g.is_zero_obj(&tgt) {
            return Ok(g.zero_map(&src, &tgt));
        }
        self.actions
            .get(&(profile.clone(), output, i))
            .cloned()
            .ok_or_else(|| OperadDefect::MissingAction(profile.clone(), output, i))
    }

    /// Transported action `O(c̄;d) → O(c̄·σ;d)` along an adjacent word.
    pub fn act(
        &self,
        g: &G,
        profile: &Profile,
        output: Color,
        sigma: &Perm,
    ) -> Result<G::Map, OperadDefect> {
        let mut prof = profile.clone();
        let mut acc = g.identity(&self.entry(g, &prof, output));
        for &j in &sigma.adjacent_word() {
            let step = self.act_adjacent(g, &prof, output, j)?;
            acc = g.compose(&step, &acc);
            prof = prof.act(&Perm::adjacent(prof.len(), j));
        }
        Ok(acc)
    }

    /// Checks the Coxeter relations of the stored generators on every entry.
    pub fn validate(&self, g: &G) -> Result<(), OperadDefect> {
        for (profile, output) in self.entries.keys() {
            let n = profile.len();
            let e = self.entry(g, profile, *output);
            if g.is_zero_obj(&e) {
                continue;
            }
            for i in 0..n.saturating_sub(1) {
                // s_i² = id
                let si = Perm::adjacent(n, i);
                let once = self.act_adjacent(g, profile, *output, i)?;
                let back = self.act_adjacent(g, &profile.act(&si), *output, i)?;
                if !g.map_eq(&g.compose(&back, &once), &g.identity(&e)) {
                    return Err(OperadDefect::ActionRelation {
                        profile: profile.clone(),
                        output: *output,
                        relation: format!("s_{i}^2 = id"),
                    });
                }
                // braid relation
                if i + 2 < n {
                    let lhs = self.word_act(g, profile, *output, &[i, i + 1, i])?;
                    let rhs = self.word_act(g, profile, *output, &[i + 1, i, i + 1])?;
                    if !g.map_eq(&lhs, &rhs) {
                        return Err(OperadDefect::ActionRelation {
                            profile: profile.clone(),
                            output: *output,
                            relation: format!("braid at {i}"),
                        });
                    }
                }
                // far commutation
                for j in i + 2..n.saturating_sub(1) {
                    let lhs = self.word_act(g, profile, *output, &[i, j])?;
                    let rhs = self.word_act(g, profile, *output, &[j, i])?;
                    if !g.map_eq(&lhs, &rhs) {
                        return Err(OperadDefect::ActionRelation {
                            profile: profile.clone(),
                            output: *output,
                            relation: format!("s_{i} s_{j} = s_{j} s_{i}"),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn word_act(
        &self,
        g: &G,
        profile: &Profile,
        output: Color,
        word: &[usize],
    ) -> Result<G::Map, OperadDefect> {
        let mut prof = profile.clone();
        let mut acc = g.identity(&self.entry(g, &prof, output));
        for &j in word {
            let step = self.act_adjacent(g, &prof, output, j)?;
            acc = g.compose(&step, &acc);
            prof = prof.act(&Perm::adjacent(prof.len(), j));
        }
        Ok(acc)
    }
}

/// Key of a total composition map: outer profile and output, plus one inner
/// profile per outer input.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GammaKey {
    pub outer: Profile,
    pub output: Color,
    pub inners: Vec<Profile>,
}

/// An arity-truncated colored operad over the ground `G`.
#[derive(Debug, Clone)]
pub struct Operad<G: Ground> {
    pub sym: SymSeq<G>,
    pub gamma: BTreeMap<GammaKey, G::Map>,
    /// Colored units `1 → O(c;c)`.
    pub units: BTreeMap<Color, G::Map>,
}

impl<G: Ground> Operad<G> {
    pub fn colors(&self) -> usize {
        self.sym.colors
    }

    pub fn max_arity(&self) -> usize {
        self.sym.max_arity
    }

    pub fn entry(&self, g: &G, profile: &Profile, output: Color) -> G::Obj {
        self.sym.entry(g, profile, output)
    }

    /// The source object of `γ` at a shape: `O(c̄;d) ⊗ ⊗ᵢ O(b̄ᵢ;cᵢ)`.
    pub fn gamma_source(&self, g: &G, key: &GammaKey) -> G::Obj {
        let mut factors = vec![self.entry(g, &key.outer, key.output)];
        for (i, inner) in key.inners.iter().enumerate() {
            factors.push(self.entry(g, inner, key.outer.0[i]));
        }
        g.multi_tensor(&factors)
    }

    /// γ at a shape; missing entries denote the zero map.
    pub fn gamma_map(&self, g: &G, key: &GammaKey) -> G::Map {
        if let Some(m) = self.gamma.get(key) {
            return m.clone();
        }
        let src = self.gamma_source(g, key);
        let total = Profile::concat(&key.inners.iter().collect::<Vec<_>>());
        let tgt = self.entry(g, &total, key.output);
        g.zero_map(&src, &tgt)
    }

    /// Exhaustive axiom check within the truncation. Returns the first
    /// failing shape on defect.
    pub fn validate(&self, g: &G) -> Result<(), OperadDefect> {
        self.sym.validate(g)?;
        self.check_gamma_endpoints(g)?;
        self.check_units(g)?;
        self.check_unity(g)?;
        self.check_equivariance(g)?;
        self.check_associativity(g)
    }

    fn check_gamma_endpoints(&self, g: &G) -> Result<(), OperadDefect> {
        for (key, m) in &self.gamma {
            let src = self.gamma_source(g, key);
            let total = Profile::concat(&key.inners.iter().collect::<Vec<_>>());
            let tgt = self.entry(g, &total, key.output);
            if g.source(m) != src || g.target(m) != tgt || !g.validate_map(m) {
                return Err(OperadDefect::BadGamma {
                    outer: key.outer.clone(),
                    output: key.output,
                    inners: key.inners.clone(),
                });
            }
        }
        Ok(())
    }

    fn check_units(&self, g: &G) -> Result<(), OperadDefect> {
        for c in 0..self.colors() {
            let Some(u) = self.units.get(&c) else {
                return Err(OperadDefect::BadUnit(c));
            };
            let tgt = self.entry(g, &Profile(vec![c]), c);
            if g.source(u) != g.unit() || g.target(u) != tgt || !g.validate_map(u) {
                return Err(OperadDefect::BadUnit(c));
            }
        }
        Ok(())
    }

    fn check_unity(&self, g: &G) -> Result<(), OperadDefect> {
        for (profile, output) in self.sym.entries.keys() {
            let e = self.entry(g, profile, *output);
            if g.is_zero_obj(&e) {
                continue;
            }
            let n = profile.len();
            // Left unity: γ(1_d ; f) = f.
            let key = GammaKey {
                outer: Profile(vec![*output]),
                output: *output,
                inners: vec![profile.clone()],
            };
            let pad = g.pad_units_iso(&e, 1, 0);
            let step = g.multi_tensor_map(&[self.units[output].clone(), g.identity(&e)]);
            let composite = g.compose(&self.gamma_map(g, &key), &g.compose(&step, &pad));
            if !g.map_eq(&composite, &g.identity(&e)) {
                return Err(OperadDefect::Unity {
                    profile: profile.clone(),
                    output: *output,
                    side: "left",
                });
            }
            // Right unity: γ(f ; 1_{c₁}, …, 1_{c_n}) = f.
            if n > 0 {
                let key = GammaKey {
                    outer: profile.clone(),
                    output: *output,
                    inners: profile.0.iter().map(|&c| Profile(vec![c])).collect(),
                };
                let pad = g.pad_units_iso(&e, 0, n);
                let mut maps = vec![g.identity(&e)];
                for &c in &profile.0 {
                    maps.push(self.units[&c].clone());
                }
                let step = g.multi_tensor_map(&maps);
                let composite = g.compose(&self.gamma_map(g, &key), &g.compose(&step, &pad));
                if !g.map_eq(&composite, &g.identity(&e)) {
                    return Err(OperadDefect::Unity {
                        profile: profile.clone(),
                        output: *output,
                        side: "right",
                    });
                }
            }
        }
        Ok(())
    }

    /// Shapes with nonzero outer and inner entries, total arity within the
    /// truncation.
    fn composable_shapes(&self, g: &G) -> Vec<GammaKey> {
        let mut shapes = Vec::new();
        for (outer, output) in self.sym.entries.keys() {
            let n = outer.len();
            if n == 0 || self.sym.is_zero_entry(g, outer, *output) {
                continue;
            }
            let mut partial: Vec<Vec<Profile>> = vec![vec![]];
            for i in 0..n {
                let color = outer.0[i];
                let mut next = Vec::new();
                for pre in &partial {
                    let used: usize = pre.iter().map(Profile::len).sum();
                    for inner in profiles_up_to(self.colors(), self.max_arity() - used) {
                        if self.sym.is_zero_entry(g, &inner, color) {
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
                shapes.push(GammaKey {
                    outer: outer.clone(),
                    output: *output,
                    inners,
                });
            }
        }
        shapes
    }

    fn check_equivariance(&self, g: &G) -> Result<(), OperadDefect> {
        for key in self.composable_shapes(g) {
            let n = key.outer.len();
            let total = Profile::concat(&key.inners.iter().collect::<Vec<_>>());
            if self.sym.is_zero_entry(g, &total, key.output) {
                // both sides are maps into a zero object
                continue;
            }
            let sizes: Vec<usize> = key.inners.iter().map(Profile::len).collect();
            let factors = {
                let mut v = vec![self.entry(g, &key.outer, key.output)];
                for (i, inner) in key.inners.iter().enumerate() {
                    v.push(self.entry(g, inner, key.outer.0[i]));
                }
                v
            };
            for sigma in Perm::all(n) {
                if sigma.is_identity() {
                    continue;
                }
                // Outer equivariance.
                let block = sigma.block(&sizes);
                let lhs = g.compose(
                    &self.sym.act(g, &total, key.output, &block)?,
                    &self.gamma_map(g, &key),
                );
                // permute the inner factors (slot 0 fixed), then act on slot 0
                let mut tau_images = vec![0usize];
                for i in 0..n {
                    tau_images.push(sigma.apply(i) + 1);
                }
                let tau = Perm::new(tau_images);
                let permute = g.permute_iso(&factors, &tau);
                let mut maps = vec![self.sym.act(g, &key.outer, key.output, &sigma)?];
                for i in 0..n {
                    maps.push(g.identity(&factors[sigma.apply(i) + 1]));
                }
                let act_step = g.multi_tensor_map(&maps);
                let permuted_key = GammaKey {
                    outer: key.outer.act(&sigma),
                    output: key.output,
                    inners: sigma.act_right(&key.inners),
                };
                let rhs = g.compose(
                    &self.gamma_map(g, &permuted_key),
                    &g.compose(&act_step, &permute),
                );
                if !g.map_eq(&lhs, &rhs) {
                    return Err(OperadDefect::Equivariance {
                        outer: key.outer.clone(),
                        output: key.output,
                        inners: key.inners.clone(),
                        sigma,
                    });
                }
            }
            // Inner equivariance, one slot at a time.
            for i in 0..n {
                let ki = sizes[i];
                for tau in Perm::all(ki) {
                    if tau.is_identity() {
                        continue;
                    }
                    let mut parts: Vec<Perm> =
                        sizes.iter().map(|&k| Perm::identity(k)).collect();
                    parts[i] = tau.clone();
                    let block = Perm::direct_sum(&parts);
                    let lhs = g.compose(
                        &self.sym.act(g, &total, key.output, &block)?,
                        &self.gamma_map(g, &key),
                    );
                    let mut maps = vec![g.identity(&factors[0])];
                    for j in 0..n {
                        if j == i {
                            maps.push(self.sym.act(
                                g,
                                &key.inners[j],
                                key.outer.0[j],
                                &tau,
                            )?);
                        } else {
                            maps.push(g.identity(&factors[j + 1]));
                        }
                    }
                    let act_step = g.multi_tensor_map(&maps);
                    let mut new_inners = key.inners.clone();
                    new_inners[i] = key.inners[i].act(&tau);
                    let moved_key = GammaKey {
                        outer: key.outer.clone(),
                        output: key.output,
                        inners: new_inners,
                    };
                    let rhs = g.compose(&self.gamma_map(g, &moved_key), &act_step);
                    if !g.map_eq(&lhs, &rhs) {
                        return Err(OperadDefect::Equivariance {
                            outer: key.outer.clone(),
                            output: key.output,
                            inners: key.inners.clone(),
                            sigma: block,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn check_associativity(&self, g: &G) -> Result<(), OperadDefect> {
        for key in self.composable_shapes(g) {
            let middle = Profile::concat(&key.inners.iter().collect::<Vec<_>>());
            let k_total = middle.len();
            if k_total == 0 {
                continue;
            }
            // third level: one profile per middle slot
            let mut partial: Vec<Vec<Profile>> = vec![vec![]];
            for t in 0..k_total {
                let color = middle.0[t];
                let mut next = Vec::new();
                for pre in &partial {
                    let used: usize = pre.iter().map(Profile::len).sum();
                    for inner in profiles_up_to(self.colors(), self.max_arity() - used) {
                        if self.sym.is_zero_entry(g, &inner, color) {
                            continue;
                        }
                        let mut v = pre.clone();
                        v.push(inner);
                        next.push(v);
                    }
                }
                partial = next;
            }
            for deep in partial {
                let bottom = Profile::concat(&deep.iter().collect::<Vec<_>>());
                if self.sym.is_zero_entry(g, &bottom, key.output) {
                    continue;
                }
                if self.check_assoc_shape(g, &key, &deep).is_err() {
                    let sizes: Vec<usize> = key.inners.iter().map(Profile::len).collect();
                    let mut grouped = Vec::new();
                    let mut off = 0;
                    for &k in &sizes {
                        grouped.push(deep[off..off + k].to_vec());
                        off += k;
                    }
                    return Err(OperadDefect::Associativity {
                        outer: key.outer.clone(),
                        output: key.output,
                        inners: key.inners.clone(),
                        inner_inners: grouped,
                    });
                }
            }
        }
        Ok(())
    }

    fn check_assoc_shape(
        &self,
        g: &G,
        key: &GammaKey,
        deep: &[Profile],
    ) -> Result<(), ()> {
        let n = key.outer.len();
        let sizes: Vec<usize> = key.inners.iter().map(Profile::len).collect();
        let k_total: usize = sizes.iter().sum();
        // W = [F, G₁…G_n, H₁…H_K]
        let mut factors = vec![self.entry(g, &key.outer, key.output)];
        for (i, inner) in key.inners.iter().enumerate() {
            factors.push(self.entry(g, inner, key.outer.0[i]));
        }
        let middle = Profile::concat(&key.inners.iter().collect::<Vec<_>>());
        for (t, ap) in deep.iter().enumerate() {
            factors.push(self.entry(g, ap, middle.0[t]));
        }

        // Route 1: γ(γ(f;ḡ); h̄).
        let mut sizes1 = vec![1 + n];
        sizes1.extend(std::iter::repeat(1).take(k_total));
        let regroup1 = g.regroup_iso(&factors, &sizes1);
        let gamma1 = self.gamma_map(g, key);
        let mut step1_maps = vec![gamma1];
        for t in 0..k_total {
            step1_maps.push(g.identity(&factors[1 + n + t]));
        }
        let step1 = g.multi_tensor_map(&step1_maps);
        let outer_key1 = GammaKey {
            outer: middle.clone(),
            output: key.output,
            inners: deep.to_vec(),
        };
        let route1 = g.compose(
            &self.gamma_map(g, &outer_key1),
            &g.compose(&step1, &regroup1),
        );

        // Route 2: γ(f; γ(g₁;h̄₁), …, γ(g_n;h̄_n)).
        // Interleave: [F, G₁, H̄₁, G₂, H̄₂, …]
        let mut tau_images = vec![0usize];
        let mut h_off = 1 + n;
        for i in 0..n {
            tau_images.push(1 + i);
            for _ in 0..sizes[i] {
                tau_images.push(h_off);
                h_off += 1;
            }
        }
        let tau = Perm::new(tau_images);
        let permute = g.permute_iso(&factors, &tau);
        let interleaved: Vec<G::Obj> = tau.act_right(&factors);
        let mut sizes2 = vec![1usize];
        sizes2.extend(sizes.iter().map(|&k| 1 + k));
        let regroup2 = g.regroup_iso(&interleaved, &sizes2);
        let mut step2_maps = vec![g.identity(&factors[0])];
        let mut off = 0;
        for i in 0..n {
            let deep_i = &deep[off..off + sizes[i]];
            off += sizes[i];
            if sizes[i] == 0 {
                step2_maps.push(g.identity(&factors[1 + i]));
            } else {
                let gkey = GammaKey {
                    outer: key.inners[i].clone(),
                    output: key.outer.0[i],
                    inners: deep_i.to_vec(),
                };
                step2_maps.push(self.gamma_map(g, &gkey));
            }
        }
        let step2 = g.multi_tensor_map(&step2_maps);
        let mut off = 0;
        let composed_inners: Vec<Profile> = sizes
            .iter()
            .map(|&k| {
                let p = Profile::concat(&deep[off..off + k].iter().collect::<Vec<_>>());
                off += k;
                p
            })
            .collect();
        let outer_key2 = GammaKey {
            outer: key.outer.clone(),
            output: key.output,
            inners: composed_inners,
        };
        let route2 = g.compose(
            &self.gamma_map(g, &outer_key2),
            &g.compose(&step2, &g.compose(&regroup2, &permute)),
        );

        if g.map_eq(&route1, &route2) {
            Ok(())
        } else {
            Err(())
        }
    }
}

// ---------------------------------------------------------------------------
// Standard operads over the chain ground
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum StdOperad {
    As,
    Com,
    Triv,
}

impl std::str::FromStr for StdOperad {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "As" | "as" => Ok(StdOperad::As),
            "Com" | "com" => Ok(StdOperad::Com),
            "Triv" | "triv" => Ok(StdOperad::Triv),
            other => Err(format!("unknown operad name {other:?}")),
        }
    }
}

/// Builds a standard operad over the chain ground.
///
/// * `As` — one color, `As(n) = ℚ[Σ_n]` in degree 0, composition by
///   substitution of orderings; only sensible with `colors = 1`.
/// * `Com` — `O(c̄;d)` is the unit when all inputs equal the output and zero
///   otherwise: one commutative-monoid structure per color.
/// * `Triv` — unit in the arity-1 diagonal entries only.
pub fn std_operad(name: StdOperad, max_arity: usize, colors: usize) -> Operad<ChainGround> {
    assert!(max_arity >= 1);
    assert!(colors >= 1);
    match name {
        StdOperad::As => {
            assert_eq!(colors, 1, "the associative operad is one-colored here");
            as_operad(max_arity)
        }
        StdOperad::Com => com_operad(max_arity, colors),
        StdOperad::Triv => triv_operad(max_arity, colors),
    }
}

fn unit_collapse(n_units: usize) -> ChainMap {
    // multi([1, 1, …, 1]) → 1 (n_units + 1 factors total)
    crate::chain::pad_units_iso(&ChainComplex::unit(), 0, n_units)
        .inverse()
        .expect("unit collapse")
}

fn com_operad(max_arity: usize, colors: usize) -> Operad<ChainGround> {
    let g = ChainGround;
    let mut entries = BTreeMap::new();
    let mut actions = BTreeMap::new();
    let mut gamma = BTreeMap::new();
    let mut units = BTreeMap::new();
    for d in 0..colors {
        for len in 0..=max_arity {
            let profile = Profile(vec![d; len]);
            entries.insert((profile.clone(), d), ChainComplex::unit());
            for i in 0..len.saturating_sub(1) {
                actions.insert(
                    (profile.clone(), d, i),
                    ChainMap::identity(&ChainComplex::unit()),
                );
            }
        }
        units.insert(d, ChainMap::identity(&ChainComplex::unit()));
    }
    // γ: collapse of units, for all monochrome shapes within the truncation
    for d in 0..colors {
        for n in 1..=max_arity {
            let outer = Profile(vec![d; n]);
            for ks in compositions(n, max_arity) {
                let inners: Vec<Profile> = ks.iter().map(|&k| Profile(vec![d; k])).collect();
                let key = GammaKey { outer: outer.clone(), output: d, inners };
                gamma.insert(key, unit_collapse(n));
            }
        }
    }
    let sym = SymSeq { colors, max_arity, entries, actions };
    let op = Operad { sym, gamma, units };
    let _ = g;
    op
}

fn triv_operad(max_arity: usize, colors: usize) -> Operad<ChainGround> {
    let mut entries = BTreeMap::new();
    let mut gamma = BTreeMap::new();
    let mut units = BTreeMap::new();
    for d in 0..colors {
        entries.insert((Profile(vec![d]), d), ChainComplex::unit());
        units.insert(d, ChainMap::identity(&ChainComplex::unit()));
        let key = GammaKey {
            outer: Profile(vec![d]),
            output: d,
            inners: vec![Profile(vec![d])],
        };
        gamma.insert(key, unit_collapse(1));
    }
    let sym = SymSeq { colors, max_arity, entries, actions: BTreeMap::new() };
    Operad { sym, gamma, units }
}

/// All tuples `(k₁,…,k_n)` of nonnegative integers with `Σkᵢ ≤ max_total`.
pub fn compositions(n: usize, max_total: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for pre in &out {
            let used: usize = pre.iter().sum();
            for k in 0..=(max_total - used) {
                let mut v = pre.clone();
                v.push(k);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// `μ_τ(x₀,…,x_{n−1}) = x_{τ(0)}·…·x_{τ(n−1)}`: composition of orderings,
/// computed in the word model so the convention is consistent by
/// construction.
fn as_compose(tau: &Perm, rhos: &[Perm]) -> Perm {
    let offsets: Vec<usize> = {
        let mut acc = 0;
        rhos.iter()
            .map(|r| {
                let o = acc;
                acc += r.len();
                o
            })
            .collect()
    };
    let mut word = Vec::new();
    for s in 0..tau.len() {
        let block = tau.apply(s);
        for t in 0..rhos[block].len() {
            word.push(offsets[block] + rhos[block].apply(t));
        }
    }
    Perm::new(word)
}

fn as_operad(max_arity: usize) -> Operad<ChainGround> {
    let perm_index = |n: usize| -> BTreeMap<Perm, usize> {
        Perm::all(n).into_iter().enumerate().map(|(i, p)| (p, i)).collect()
    };
    let entry_complex = |n: usize| -> ChainComplex {
        let dim = Perm::all(n).len();
        ChainComplex::new(BTreeMap::from([(0, dim)]), BTreeMap::new()).expect("As entry")
    };
    let mut entries = BTreeMap::new();
    let mut actions = BTreeMap::new();
    for n in 0..=max_arity {
        let profile = Profile(vec![0; n]);
        entries.insert((profile.clone(), 0), entry_complex(n));
        let idx = perm_index(n);
        for i in 0..n.saturating_sub(1) {
            let s = Perm::adjacent(n, i);
            // e_τ ↦ e_{s∘τ}: transporting along words realizes the right
            // action σ ↦ (left multiplication by σ⁻¹)
            let mut m = Matrix::zero(idx.len(), idx.len());
            for (tau, &j) in &idx {
                let to = idx[&s.compose(tau)];
                *m.at_mut(to, j) = crate::ratlin::rat(1);
            }
            actions.insert(
                (profile.clone(), 0, i),
                ChainMap::new(
                    entry_complex(n),
                    entry_complex(n),
                    BTreeMap::from([(0, m)]),
                )
                .expect("As action"),
            );
        }
    }
    let mut gamma = BTreeMap::new();
    for n in 1..=max_arity {
        let outer = Profile(vec![0; n]);
        for ks in compositions(n, max_arity) {
            let total: usize = ks.iter().sum();
            let inners: Vec<Profile> = ks.iter().map(|&k| Profile(vec![0; k])).collect();
            // source = As(n) ⊗ As(k₁) ⊗ … ⊗ As(k_n), all in degree 0
            let src_dim: usize =
                Perm::all(n).len() * ks.iter().map(|&k| Perm::all(k).len()).product::<usize>();
            let tgt_idx = perm_index(total);
            let mut m = Matrix::zero(tgt_idx.len(), src_dim);
            // enumerate basis of the source: tuples (τ, ρ₁, …, ρ_n) in the
            // multi-tensor order (left fold over the factor list)
            let mut basis: Vec<Vec<Perm>> = Perm::all(n).into_iter().map(|p| vec![p]).collect();
            for &k in &ks {
                let mut next = Vec::new();
                for pre in &basis {
                    for rho in Perm::all(k) {
                        let mut v = pre.clone();
                        v.push(rho);
                        next.push(v);
                    }
                }
                basis = next;
            }
            for (col, tuple) in basis.iter().enumerate() {
                let composed = as_compose(&tuple[0], &tuple[1..]);
                *m.at_mut(tgt_idx[&composed], col) = crate::ratlin::rat(1);
            }
            let src = {
                let factors: Vec<ChainComplex> = std::iter::once(entry_complex(n))
                    .chain(ks.iter().map(|&k| entry_complex(k)))
                    .collect();
                ChainGround.multi_tensor(&factors)
            };
            gamma.insert(
                GammaKey { outer: outer.clone(), output: 0, inners },
                ChainMap::new(src, entry_complex(total), BTreeMap::from([(0, m)]))
                    .expect("As γ"),
            );
        }
    }
    let units = BTreeMap::from([(
        0,
        ChainMap::new(
            ChainComplex::unit(),
            entry_complex(1),
            BTreeMap::from([(0, Matrix::identity(1))]),
        )
        .expect("As unit"),
    )]);
    let sym = SymSeq { colors: 1, max_arity, entries, actions };
    Operad { sym, gamma, units }
}

// ---------------------------------------------------------------------------
// Lifts to the arrow grounds
// ---------------------------------------------------------------------------

/// `O⊗ = L₀O`: entries become identity arrows; all structure is transported
/// entrywise on both components.
pub fn lift_operad_tensor(o: &Operad<ChainGround>) -> Operad<ArrowTensorGround> {
    let entries = o
        .sym
        .entries
        .iter()
        .map(|(k, e)| (k.clone(), l0(e)))
        .collect();
    let actions = o
        .sym
        .actions
        .iter()
        .map(|(k, a)| {
            let m = ArrowMap::new(
                l0(a.source()),
                l0(a.target()),
                a.clone(),
                a.clone(),
            )
            .expect("lifted action");
            (k.clone(), m)
        })
        .collect();
    let gamma = o
        .gamma
        .iter()
        .map(|(k, m)| {
            let a = ArrowMap::new(l0(m.source()), l0(m.target()), m.clone(), m.clone())
                .expect("lifted γ");
            (k.clone(), a)
        })
        .collect();
    let units = o
        .units
        .iter()
        .map(|(c, u)| {
            let a = ArrowMap::new(
                ArrowObject::tensor_unit(),
                l0(u.target()),
                u.clone(),
                u.clone(),
            )
            .expect("lifted unit");
            (*c, a)
        })
        .collect();
    Operad {
        sym: SymSeq {
            colors: o.sym.colors,
            max_arity: o.sym.max_arity,
            entries,
            actions,
        },
        gamma,
        units,
    }
}

/// `O□ = L₁O`: entries become `∅ → O(c̄;d)`; γ and units transport with the
/// zero map on the 0-component.
pub fn lift_operad_box(o: &Operad<ChainGround>) -> Operad<ArrowBoxGround> {
    let zero = ChainComplex::zero();
    let entries = o
        .sym
        .entries
        .iter()
        .map(|(k, e)| (k.clone(), l1(e)))
        .collect();
    let actions = o
        .sym
        .actions
        .iter()
        .map(|(k, a)| {
            let m = ArrowMap::new(
                l1(a.source()),
                l1(a.target()),
                ChainMap::identity(&zero),
                a.clone(),
            )
            .expect("lifted action");
            (k.clone(), m)
        })
        .collect();
    let gamma = o
        .gamma
        .iter()
        .map(|(k, m)| {
            let a = ArrowMap::new(
                l1(m.source()),
                l1(m.target()),
                ChainMap::identity(&zero),
                m.clone(),
            )
            .expect("lifted γ");
            (k.clone(), a)
        })
        .collect();
    let units = o
        .units
        .iter()
        .map(|(c, u)| {
            let a = ArrowMap::new(
                ArrowObject::pp_unit(),
                l1(u.target()),
                ChainMap::identity(&zero),
                u.clone(),
            )
            .expect("lifted unit");
            (*c, a)
        })
        .collect();
    Operad {
        sym: SymSeq {
            colors: o.sym.colors,
            max_arity: o.sym.max_arity,
            entries,
            actions,
        },
        gamma,
        units,
    }
}

// ---------------------------------------------------------------------------
// Group actions and coinvariants
// ---------------------------------------------------------------------------

/// A left `Σ_n`-action on a complex: `act(σ∘τ) = act(σ)∘act(τ)`.
#[derive(Debug, Clone)]
pub struct SigmaAction {
    pub n: usize,
    pub object: ChainComplex,
    maps: BTreeMap<Perm, ChainMap>,
}

impl SigmaAction {
    pub fn new(
        n: usize,
        object: ChainComplex,
        maps: BTreeMap<Perm, ChainMap>,
    ) -> Result<Self, OperadDefect> {
        let a = SigmaAction { n, object, maps };
        a.validate()?;
        Ok(a)
    }

    pub fn trivial(n: usize, object: ChainComplex) -> Self {
        let maps = Perm::all(n)
            .into_iter()
            .map(|p| (p, ChainMap::identity(&object)))
            .collect();
        SigmaAction { n, object, maps }
    }

    /// Generates the table from images of the adjacent transpositions.
    pub fn from_generators(
        n: usize,
        object: ChainComplex,
        gens: &[ChainMap],
    ) -> Result<Self, OperadDefect> {
        assert_eq!(gens.len(), n.saturating_sub(1));
        let mut maps = BTreeMap::new();
        for p in Perm::all(n) {
            let mut acc = ChainMap::identity(&object);
            // p = s_{j1}∘…∘s_{jk}, rightmost applied first
            for &j in p.adjacent_word().iter().rev() {
                acc = gens[j].compose(&acc);
            }
            maps.insert(p, acc);
        }
        SigmaAction::new(n, object, maps)
    }

    /// The left action of `Σ_n` permuting the factors of `y^{⊗n}`, with
    /// Koszul signs.
    pub fn permutation(y: &ChainComplex, n: usize) -> Self {
        let xs = vec![y.clone(); n];
        let refs: Vec<&ChainComplex> = xs.iter().collect();
        let object = crate::chain::multi_tensor(&refs);
        let maps = Perm::all(n)
            .into_iter()
            .map(|p| {
                let m = crate::chain::permute_iso(&refs, &p.inverse());
                (p, m)
            })
            .collect();
        SigmaAction { n, object, maps }
    }

    pub fn act(&self, sigma: &Perm) -> &ChainMap {
        &self.maps[sigma]
    }

    pub fn validate(&self) -> Result<(), OperadDefect> {
        for p in Perm::all(self.n) {
            let Some(m) = self.maps.get(&p) else {
                return Err(OperadDefect::NotAnAction);
            };
            if m.source() != &self.object || m.target() != &self.object {
                return Err(OperadDefect::NotAnAction);
            }
        }
        if self.maps[&Perm::identity(self.n)] != ChainMap::identity(&self.object) {
            return Err(OperadDefect::NotAnAction);
        }
        for s in Perm::all(self.n) {
            for t in Perm::all(self.n) {
                let st = s.compose(&t);
                if self.maps[&st] != self.maps[&s].compose(&self.maps[&t]) {
                    return Err(OperadDefect::NotAnAction);
                }
            }
        }
        Ok(())
    }

    /// Diagonal action on a tensor product of two actions of the same group.
    pub fn tensor(a: &SigmaAction, b: &SigmaAction) -> SigmaAction {
        assert_eq!(a.n, b.n);
        let object = crate::chain::tensor(&a.object, &b.object);
        let maps = Perm::all(a.n)
            .into_iter()
            .map(|p| {
                let m = crate::chain::tensor_map(a.act(&p), b.act(&p));
                (p, m)
            })
            .collect();
        SigmaAction { n: a.n, object, maps }
    }

    /// `σ ↦ act(σ⁻¹)`: converts between left and right actions.
    pub fn inverse_action(&self) -> SigmaAction {
        let maps = Perm::all(self.n)
            .into_iter()
            .map(|p| (p.clone(), self.maps[&p.inverse()].clone()))
            .collect();
        SigmaAction { n: self.n, object: self.object.clone(), maps }
    }
}

/// Quotient by the span of `{v − σ·v}` with the projection; the dimension is
/// cross-checked against the rank of the averaging idempotent.
pub fn coinvariants(action: &SigmaAction) -> (ChainComplex, ChainMap) {
    let rels: Vec<ChainMap> = Perm::all(action.n)
        .into_iter()
        .filter(|p| !p.is_identity())
        .map(|p| action.act(&p).sub(&ChainMap::identity(&action.object)))
        .collect();
    let (q, proj) = crate::ground::quotient_chain(&action.object, &rels);
    let e = averaging_idempotent(action);
    for &n in &action.object.degrees() {
        assert_eq!(
            q.dim(n),
            rank(&e.comp(n)),
            "coinvariant dimension disagrees with the averaging operator at degree {n}"
        );
    }
    (q, proj)
}

/// `e = (1/n!) Σ_σ act(σ)`; checked to be idempotent.
pub fn averaging_idempotent(action: &SigmaAction) -> ChainMap {
    let perms = Perm::all(action.n);
    let count = perms.len() as i64;
    let mut acc = ChainMap::zero(&action.object, &action.object);
    for p in &perms {
        acc = acc.add(action.act(p));
    }
    let mut comps = BTreeMap::new();
    for &n in &action.object.degrees() {
        comps.insert(n, acc.comp(n).scale(&ratio(1, count)));
    }
    let e = ChainMap::new(action.object.clone(), action.object.clone(), comps)
        .expect("averaging operator");
    assert_eq!(e.compose(&e), e, "averaging operator must be idempotent");
    e
}

/// Descends an equivariant map to the coinvariants.
pub fn descend_equivariant(
    f: &ChainMap,
    src: &SigmaAction,
    tgt: &SigmaAction,
    src_proj: &ChainMap,
    tgt_proj: &ChainMap,
) -> ChainMap {
    for p in Perm::all(src.n) {
        assert_eq!(
            &f.compose(src.act(&p)),
            &tgt.act(&p).compose(f),
            "map is not equivariant at {p:?}"
        );
    }
    crate::chain::factor_through_surjection(src_proj, &tgt_proj.compose(f))
        .expect("equivariant maps descend to coinvariants")
}

/// Report of the Maschke splitting check for one symmetric sequence.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SigmaCofibrancyReport {
    pub orbits: Vec<OrbitSplitting>,
    pub all_split: bool,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct OrbitSplitting {
    pub arity: usize,
    pub representative: Vec<Color>,
    pub output: Color,
    pub total_dim: usize,
    pub coinvariant_dim: usize,
    pub idempotent_ok: bool,
    pub section_ok: bool,
}

/// Verifies that every orbit of entries splits off its coinvariants through
/// the averaging idempotent. Over ℚ this must always succeed.
pub fn sigma_cofibrancy_check(
    sym: &SymSeq<ChainGround>,
    g: &ChainGround,
) -> Result<SigmaCofibrancyReport, OperadDefect> {
    sym.validate(g)?;
    let mut seen: Vec<(Profile, Color)> = Vec::new();
    let mut orbits = Vec::new();
    for (profile, output) in sym.entries.keys() {
        if sym.is_zero_entry(g, profile, *output) {
            continue;
        }
        let n = profile.len();
        let orbit_profiles: Vec<Profile> = {
            let mut v: Vec<Profile> = Perm::all(n).iter().map(|p| profile.act(p)).collect();
            v.sort();
            v.dedup();
            v
        };
        let rep = orbit_profiles[0].clone();
        if seen.contains(&(rep.clone(), *output)) {
            continue;
        }
        seen.push((rep.clone(), *output));
        // Assemble the orbit sum with the permuting action.
        let parts: Vec<ChainComplex> = orbit_profiles
            .iter()
            .map(|p| sym.entry(g, p, *output))
            .collect();
        let part_refs: Vec<&ChainComplex> = parts.iter().collect();
        let (sum, injections, projections) = ChainComplex::direct_sum(&part_refs);
        let slot = |p: &Profile| orbit_profiles.iter().position(|q| q == p).unwrap();
        let mut maps = BTreeMap::new();
        for sigma in Perm::all(n) {
            // right-action transport, inverted to store a left action
            let s_inv = sigma.inverse();
            let mut total = ChainMap::zero(&sum, &sum);
            for p in &orbit_profiles {
                let step = sym.act(g, p, *output, &s_inv)?;
                let to = slot(&p.act(&s_inv));
                total = total.add(&injections[to].compose(&step.compose(&projections[slot(p)])));
            }
            maps.insert(sigma, total);
        }
        let action = SigmaAction::new(n, sum.clone(), maps)?;
        let e = averaging_idempotent(&action);
        let (q, proj) = coinvariants(&action);
        // Section through the idempotent: p∘s = id and s∘p = e.
        let mut section_ok = true;
        for &deg in &sum.degrees() {
            let ri = right_inverse(&proj.comp(deg)).expect("projection right inverse");
            let s = e.comp(deg).mul(&ri);
            if !proj.comp(deg).mul(&s).is_identity() {
                section_ok = false;
            }
            if e.comp(deg) != s.mul(&proj.comp(deg)) {
                section_ok = false;
            }
        }
        orbits.push(OrbitSplitting {
            arity: n,
            representative: rep.0.clone(),
            output: *output,
            total_dim: sum.total_dim(),
            coinvariant_dim: q.total_dim(),
            idempotent_ok: true,
            section_ok,
        });
    }
    let all_split = orbits.iter().all(|o| o.idempotent_ok && o.section_ok);
    Ok(SigmaCofibrancyReport { orbits, all_split })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn com_validates() {
        let g = ChainGround;
        let o = std_operad(StdOperad::Com, 3, 1);
        assert_eq!(o.validate(&g), Ok(()));
        // entrywise the unit
        for n in 0..=3 {
            assert_eq!(o.entry(&g, &Profile(vec![0; n]), 0).total_dim(), 1);
        }
    }

    #[test]
    fn com_two_colors_validates() {
        let g = ChainGround;
        let o = std_operad(StdOperad::Com, 3, 2);
        assert_eq!(o.validate(&g), Ok(()));
        // cross-color entries are zero
        assert!(o.sym.is_zero_entry(&g, &Profile(vec![0, 1]), 0));
    }

    #[test]
    fn triv_validates() {
        let g = ChainGround;
        let o = std_operad(StdOperad::Triv, 3, 2);
        assert_eq!(o.validate(&g), Ok(()));
    }

    #[test]
    fn as_validates_and_has_factorial_dims() {
        let g = ChainGround;
        let o = std_operad(StdOperad::As, 3, 1);
        assert_eq!(o.entry(&g, &Profile(vec![0; 2]), 0).total_dim(), 2);
        assert_eq!(o.entry(&g, &Profile(vec![0; 3]), 0).total_dim(), 6);
        assert_eq!(o.validate(&g), Ok(()));
    }

    #[test]
    fn corrupted_as_fails_associativity() {
        let g = ChainGround;
        let mut o = std_operad(StdOperad::As, 3, 1);
        // flip a sign in one γ entry
        let key = o
            .gamma
            .keys()
            .find(|k| k.outer.len() == 2 && k.inners.iter().map(Profile::len).sum::<usize>() == 1)
            .unwrap()
            .clone();
        let m = o.gamma[&key].clone();
        let negated = ChainMap::new(
            m.source().clone(),
            m.target().clone(),
            BTreeMap::from([(0, m.comp(0).scale(&crate::ratlin::rat(-1)))]),
        )
        .unwrap();
        o.gamma.insert(key, negated);
        assert!(o.validate(&g).is_err());
    }

    #[test]
    fn lifted_operads_validate() {
        let o = std_operad(StdOperad::Com, 2, 1);
        let t = lift_operad_tensor(&o);
        assert_eq!(t.validate(&ArrowTensorGround), Ok(()));
        let b = lift_operad_box(&o);
        assert_eq!(b.validate(&ArrowBoxGround), Ok(()));
        // L1(Com) entry (c,c;c) = (0 → ℚ)
        let e = b.entry(&ArrowBoxGround, &Profile(vec![0, 0]), 0);
        assert!(e.ev0().is_zero());
        assert_eq!(e.ev1().total_dim(), 1);
        // Ev₁(L₁O) recovers the chain entries
        for (k, v) in &b.sym.entries {
            assert_eq!(v.ev1(), &o.sym.entries[k]);
        }
    }

    #[test]
    fn lifted_as_validates_in_box_ground() {
        let o = std_operad(StdOperad::As, 3, 1);
        let b = lift_operad_box(&o);
        assert_eq!(b.validate(&ArrowBoxGround), Ok(()));
    }

    #[test]
    fn coinvariants_of_regular_representation() {
        // ℚ[Σ₂] with the right-translation action: coinvariants have dim 1.
        let g = ChainGround;
        let o = std_operad(StdOperad::As, 2, 1);
        let e = o.entry(&g, &Profile(vec![0, 0]), 0);
        let gen = o.sym.actions[&(Profile(vec![0, 0]), 0, 0)].clone();
        let action = SigmaAction::from_generators(2, e, &[gen]).unwrap();
        let (q, proj) = coinvariants(&action);
        assert_eq!(q.total_dim(), 1);
        assert!(proj.is_degreewise_surjective());
    }

    #[test]
    fn coinvariants_with_koszul_sign() {
        // S(1)⊗S(1) with the swap: the sign kills everything.
        let action = SigmaAction::permutation(&ChainComplex::sphere(1), 2);
        let (q, _) = coinvariants(&action);
        assert!(q.is_zero());
        // S(0)⊗S(0): trivial sign, coinvariants = ℚ
        let action = SigmaAction::permutation(&ChainComplex::sphere(0), 2);
        let (q, _) = coinvariants(&action);
        assert_eq!(q.total_dim(), 1);
    }

    #[test]
    fn trivial_action_coinvariants_identity() {
        let c = ChainComplex::disk(1);
        let action = SigmaAction::trivial(2, c.clone());
        let (q, proj) = coinvariants(&action);
        assert_eq!(q.dims(), c.dims());
        assert!(proj.is_degreewise_iso());
    }

    #[test]
    fn sigma_cofibrancy_of_std_operads() {
        let g = ChainGround;
        for (name, colors) in [(StdOperad::As, 1), (StdOperad::Com, 1), (StdOperad::Triv, 2)] {
            let o = std_operad(name, 3, colors);
            let rep = sigma_cofibrancy_check(&o.sym, &g).unwrap();
            assert!(rep.all_split, "{name:?} must split");
        }
        // zero symmetric sequence splits vacuously
        let empty: SymSeq<ChainGround> = SymSeq {
            colors: 1,
            max_arity: 3,
            entries: BTreeMap::new(),
            actions: BTreeMap::new(),
        };
        let rep = sigma_cofibrancy_check(&empty, &g).unwrap();
        assert!(rep.all_split);
        assert!(rep.orbits.is_empty());
    }
}
