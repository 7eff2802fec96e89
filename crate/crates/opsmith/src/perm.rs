//! Finite permutations of `{0, …, n−1}`.
//!
//! Conventions used throughout the crate:
//! * composition `(s ∘ t)(i) = s(t(i))` — apply `t` first;
//! * the right action of `σ` on a profile `c̄` is `(c̄·σ)_i = c_{σ(i)}`.

use std::fmt;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

impl Perm {
    pub fn new(images: Vec<usize>) -> Self {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            assert!(i < n && !seen[i], "not a permutation: {images:?}");
            seen[i] = true;
        }
        Perm { images }
    }

    pub fn identity(n: usize) -> Self {
        Perm { images: (0..n).collect() }
    }

    /// The adjacent transposition swapping `i` and `i+1` in `Σ_n`.
    pub fn adjacent(n: usize, i: usize) -> Self {
        assert!(i + 1 < n);
        let mut im: Vec<usize> = (0..n).collect();
        im.swap(i, i + 1);
        Perm { images: im }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.len(), other.len());
        Perm {
            images: (0..self.len()).map(|i| self.images[other.images[i]]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut im = vec![0; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            im[v] = i;
        }
        Perm { images: im }
    }

    pub fn sign(&self) -> i64 {
        let mut inv = 0usize;
        for a in 0..self.len() {
            for b in a + 1..self.len() {
                if self.images[a] > self.images[b] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Applies the right action to a sequence: `(xs·σ)_i = xs[σ(i)]`.
    pub fn act_right<T: Clone>(&self, xs: &[T]) -> Vec<T> {
        assert_eq!(self.len(), xs.len());
        self.images.iter().map(|&i| xs[i].clone()).collect()
    }

    /// Writes `self` as a product `s_{j1} · s_{j2} · … · s_{jk}` of adjacent
    /// transpositions (group product; `s_{jk}` is applied first).
    pub fn adjacent_word(&self) -> Vec<usize> {
        // Bubble-sort the image list; each swap records a generator.
        let mut im = self.images.clone();
        let mut word = Vec::new();
        loop {
            let mut swapped = false;
            for i in 0..im.len().saturating_sub(1) {
                if im[i] > im[i + 1] {
                    im.swap(i, i + 1);
                    word.push(i);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        // Sorting σ by adjacent swaps expresses σ⁻¹ as the product of the
        // recorded generators applied left-to-right; reverse for σ itself.
        word.reverse();
        word
    }

    /// All permutations of `Σ_n` in lexicographic order of their image lists.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            out.push(Perm { images: current.clone() });
            // next_permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
            current.swap(i, j);
            current[i + 1..].reverse();
        }
        out
    }

    /// Block permutation `σ⟨k_0, …, k_{n−1}⟩ ∈ Σ_{Σk}`: permutes consecutive
    /// blocks of the given sizes the way `σ` permutes indices, so that
    /// `concat(b̄_{σ(0)}, …, b̄_{σ(n−1)}) = concat(b̄)·σ⟨k⟩` under the right
    /// action on sequences.
    pub fn block(&self, sizes: &[usize]) -> Perm {
        assert_eq!(self.len(), sizes.len());
        let total: usize = sizes.iter().sum();
        let mut offsets = vec![0usize; sizes.len()];
        let mut acc = 0;
        for (i, &k) in sizes.iter().enumerate() {
            offsets[i] = acc;
            acc += k;
        }
        let mut im = Vec::with_capacity(total);
        for j in 0..sizes.len() {
            let src = self.images[j];
            for r in 0..sizes[src] {
                im.push(offsets[src] + r);
            }
        }
        Perm { images: im }
    }

    /// Direct sum `τ_0 ⊕ … ⊕ τ_{n−1}` acting on consecutive blocks.
    pub fn direct_sum(parts: &[Perm]) -> Perm {
        let mut im = Vec::new();
        let mut offset = 0;
        for p in parts {
            im.extend(p.images.iter().map(|&v| v + offset));
            offset += p.len();
        }
        Perm { images: im }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_convention() {
        // s = (0 1), t = (1 2) in Σ3: (s∘t)(1) = s(2) = 2, (s∘t)(2) = s(1) = 0.
        let s = Perm::adjacent(3, 0);
        let t = Perm::adjacent(3, 1);
        let st = s.compose(&t);
        assert_eq!(st.apply(0), 1);
        assert_eq!(st.apply(1), 2);
        assert_eq!(st.apply(2), 0);
    }

    #[test]
    fn adjacent_word_reconstructs() {
        for p in Perm::all(4) {
            let mut acc = Perm::identity(4);
            // product s_{j1}·…·s_{jk} applied to the identity, rightmost first
            for &j in p.adjacent_word().iter().rev() {
                acc = Perm::adjacent(4, j).compose(&acc);
            }
            assert_eq!(acc, p, "word failed for {p:?}");
        }
    }

    #[test]
    fn right_action_is_an_action() {
        let xs = vec!['a', 'b', 'c', 'd'];
        for s in Perm::all(4) {
            for t in Perm::all(4) {
                let st = s.compose(&t);
                // (xs·s)·t = xs·(s∘t)
                let lhs = t.act_right(&s.act_right(&xs));
                let rhs = st.act_right(&xs);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn block_perm_matches_concat() {
        let sizes = [2usize, 1, 3];
        let blocks: Vec<Vec<u32>> = vec![vec![10, 11], vec![20], vec![30, 31, 32]];
        let flat: Vec<u32> = blocks.concat();
        for s in Perm::all(3) {
            let permuted_blocks: Vec<Vec<u32>> = s.act_right(&blocks);
            let expect: Vec<u32> = permuted_blocks.concat();
            let bp = s.block(&sizes);
            assert_eq!(bp.act_right(&flat), expect, "σ = {s:?}");
        }
    }

    #[test]
    fn signs_and_inverse() {
        assert_eq!(Perm::adjacent(2, 0).sign(), -1);
        assert_eq!(Perm::identity(5).sign(), 1);
        for p in Perm::all(4) {
            assert!(p.compose(&p.inverse()).is_identity());
            assert_eq!(p.sign() * p.inverse().sign(), 1);
        }
    }
}
