//! The extended affine Weyl group `W = X ⋊ W_0`.
//!
//! An element `t_λ u` acts on the apartment `X ⊗ R` by `x ↦ λ + u·x`. The base
//! alcove is cut out by `0 < <α, x>` for simple roots and `<θ, x> < 1` for the
//! highest root of each irreducible factor; lengths count the root hyperplanes
//! separating it from its image.
//!
//! Affine simple reflections are indexed as follows: `0` is the affine node
//! of the first irreducible factor, `1..=r` are the finite simple reflections,
//! and `r + k` (for `k ≥ 1`) is the affine node of factor `k`.

mod facet;

pub use facet::{DoubleCosetIndex, Facet};

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::lattice::dot;
use crate::root_datum::{FiniteWeylElement, RootDatum};

/// Default cap on the size of enumerated Bruhat intervals.
pub const DEFAULT_INTERVAL_CAP: usize = 20_000;

/// `t_λ u`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineWeylElement {
    translation: Vec<i64>,
    finite: FiniteWeylElement,
}

impl AffineWeylElement {
    pub fn new(translation: Vec<i64>, finite: FiniteWeylElement) -> Self {
        assert_eq!(translation.len(), finite.dim(), "dimension mismatch");
        AffineWeylElement {
            translation,
            finite,
        }
    }

    pub fn identity(dim: usize) -> Self {
        AffineWeylElement::new(vec![0; dim], FiniteWeylElement::identity(dim))
    }

    pub fn translation_by(lambda: &[i64]) -> Self {
        AffineWeylElement::new(lambda.to_vec(), FiniteWeylElement::identity(lambda.len()))
    }

    pub fn translation(&self) -> &[i64] {
        &self.translation
    }

    pub fn finite(&self) -> &FiniteWeylElement {
        &self.finite
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    pub fn is_identity(&self) -> bool {
        self.finite.is_identity() && self.translation.iter().all(|&x| x == 0)
    }

    pub fn is_translation(&self) -> bool {
        self.finite.is_identity()
    }

    /// `(t_λ u)(t_μ v) = t_{λ + uμ} uv`.
    pub fn compose(&self, other: &AffineWeylElement) -> AffineWeylElement {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        let moved = self.finite.act(&other.translation);
        AffineWeylElement {
            translation: self
                .translation
                .iter()
                .zip(&moved)
                .map(|(a, b)| a + b)
                .collect(),
            finite: self.finite.compose(&other.finite),
        }
    }

    pub fn inverse(&self) -> AffineWeylElement {
        let inv = self.finite.inverse();
        let t = inv.act(&self.translation);
        AffineWeylElement {
            translation: t.into_iter().map(|x| -x).collect(),
            finite: inv,
        }
    }
}

impl fmt::Debug for AffineWeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{:?}·{:?}", self.translation, self.finite)
    }
}

/// An affine function `x ↦ <functional, x> + constant`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineRoot {
    pub functional: Vec<i64>,
    pub constant: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct IntervalKey {
    facet: Vec<usize>,
    rep: AffineWeylElement,
}

/// The affine Weyl group of a root datum together with its simple system and
/// memo tables.
pub struct AffineWeylGroup {
    datum: Arc<RootDatum>,
    generators: Vec<AffineWeylElement>,
    simple_affine_roots: Vec<AffineRoot>,
    /// For each generator, the irreducible factor it belongs to.
    node_component: Vec<usize>,
    /// `X / Q^vee`-many length-zero elements, `None` with a central torus.
    omega: Option<Vec<AffineWeylElement>>,
    positive_functionals: Vec<Vec<i64>>,
    interval_cap: usize,
    interval_cache: Mutex<HashMap<IntervalKey, Arc<Vec<DoubleCosetIndex>>>>,
    interval_hits: AtomicUsize,
    interval_misses: AtomicUsize,
}

impl fmt::Debug for AffineWeylGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AffineWeylGroup")
            .field("datum", &self.datum.cartan().canonical_string())
            .finish()
    }
}

impl AffineWeylGroup {
    pub fn new(datum: impl Into<Arc<RootDatum>>) -> Self {
        let datum: Arc<RootDatum> = datum.into();
        let r = datum.rank();
        let n = datum.dim();
        let mut generators = Vec::new();
        let mut roots = Vec::new();
        let mut node_component = Vec::new();
        let comp_of_simple = |i: usize| {
            datum
                .components()
                .iter()
                .position(|c| c.simple.contains(&i))
                .expect("simple root in a component")
        };
        let affine_node = |k: usize| {
            let comp = &datum.components()[k];
            let theta = &datum.positive_roots()[comp.highest_root];
            let elt = AffineWeylElement::new(theta.coroot.clone(), datum.reflection(theta));
            let root = AffineRoot {
                functional: theta.functional.iter().map(|x| -x).collect(),
                constant: 1,
            };
            (elt, root)
        };
        if !datum.components().is_empty() {
            let (e, a) = affine_node(0);
            generators.push(e);
            roots.push(a);
            node_component.push(0);
        }
        for i in 0..r {
            generators.push(AffineWeylElement::new(
                vec![0; n],
                datum.simple_reflection(i).clone(),
            ));
            roots.push(AffineRoot {
                functional: datum.simple_root(i).functional.clone(),
                constant: 0,
            });
            node_component.push(comp_of_simple(i));
        }
        for k in 1..datum.components().len() {
            let (e, a) = affine_node(k);
            generators.push(e);
            roots.push(a);
            node_component.push(k);
        }
        let positive_functionals = datum
            .positive_roots()
            .iter()
            .map(|b| b.functional.clone())
            .collect();
        let mut group = AffineWeylGroup {
            datum,
            generators,
            simple_affine_roots: roots,
            node_component,
            omega: None,
            positive_functionals,
            interval_cap: DEFAULT_INTERVAL_CAP,
            interval_cache: Mutex::new(HashMap::new()),
            interval_hits: AtomicUsize::new(0),
            interval_misses: AtomicUsize::new(0),
        };
        group.omega = group.datum.coroot_lattice().coset_representatives().map(|reps| {
            let mut om: Vec<_> = reps
                .iter()
                .map(|c| group.omega_part(&AffineWeylElement::translation_by(c)))
                .collect();
            om.sort();
            om
        });
        group
    }

    pub fn preset(spec: &str) -> Result<Self> {
        Ok(Self::new(RootDatum::preset(spec)?))
    }

    pub fn with_interval_cap(mut self, cap: usize) -> Self {
        self.interval_cap = cap;
        self
    }

    pub fn interval_cap(&self) -> usize {
        self.interval_cap
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn dim(&self) -> usize {
        self.datum.dim()
    }

    /// Number of affine simple reflections.
    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator(&self, i: usize) -> &AffineWeylElement {
        &self.generators[i]
    }

    pub fn simple_affine_root(&self, i: usize) -> &AffineRoot {
        &self.simple_affine_roots[i]
    }

    /// Irreducible factor containing the affine simple reflection `i`.
    pub fn node_component(&self, i: usize) -> usize {
        self.node_component[i]
    }

    /// Affine indices of the finite simple reflections.
    pub fn finite_indices(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.datum.rank()
    }

    /// Affine index of the finite simple reflection with internal index `i`.
    pub fn affine_index_of_finite(&self, i: usize) -> usize {
        i + 1
    }

    pub fn identity(&self) -> AffineWeylElement {
        AffineWeylElement::identity(self.dim())
    }

    pub fn check(&self, w: &AffineWeylElement) -> Result<()> {
        if w.dim() != self.dim() {
            return Err(Error::DatumMismatch {
                expected: self.dim(),
                found: w.dim(),
            });
        }
        Ok(())
    }

    pub fn multiply(&self, a: &AffineWeylElement, b: &AffineWeylElement) -> Result<AffineWeylElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(a.compose(b))
    }

    pub fn from_word(&self, word: &[usize]) -> AffineWeylElement {
        word.iter()
            .fold(self.identity(), |acc, &i| acc.compose(&self.generators[i]))
    }

    /// Closed-form length of `t_λ u`.
    pub fn length(&self, w: &AffineWeylElement) -> usize {
        let image = w.finite.act(self.datum.rho_dual());
        let mut total = 0i64;
        for a in &self.positive_functionals {
            let pairing = dot(a, &w.translation);
            total += if dot(a, &image) > 0 {
                pairing.abs()
            } else {
                (pairing - 1).abs()
            };
        }
        total as usize
    }

    /// Whether an affine function is positive on the base alcove.
    fn is_positive_affine(&self, functional: &[i64], constant: i64) -> bool {
        constant > 0 || (constant == 0 && self.datum.is_positive_functional(functional))
    }

    /// `s_i w < w`.
    pub fn is_left_descent(&self, w: &AffineWeylElement, i: usize) -> bool {
        // w^{-1}(a_i) = a_i ∘ w
        let a = &self.simple_affine_roots[i];
        let b = w.finite.pull_back(&a.functional);
        let c = dot(&a.functional, &w.translation) + a.constant;
        !self.is_positive_affine(&b, c)
    }

    /// `w s_i < w`.
    pub fn is_right_descent(&self, w: &AffineWeylElement, i: usize) -> bool {
        // w(a_i) = a_i ∘ w^{-1}
        let a = &self.simple_affine_roots[i];
        let b = w.finite.push_forward(&a.functional);
        let c = a.constant - dot(&b, &w.translation);
        !self.is_positive_affine(&b, c)
    }

    pub fn left_descents(&self, w: &AffineWeylElement) -> Vec<usize> {
        (0..self.num_generators())
            .filter(|&i| self.is_left_descent(w, i))
            .collect()
    }

    /// `w = s_{i_1} ⋯ s_{i_k} τ` with `ℓ(τ) = 0`, taking the smallest-index
    /// left descent at every step.
    pub fn reduced_word(&self, w: &AffineWeylElement) -> (Vec<usize>, AffineWeylElement) {
        let mut word = Vec::new();
        let mut x = w.clone();
        while let Some(i) = (0..self.num_generators()).find(|&i| self.is_left_descent(&x, i)) {
            word.push(i);
            x = self.generators[i].compose(&x);
        }
        (word, x)
    }

    /// `w = τ s_{j_1} ⋯ s_{j_k}` with the length-zero part pulled to the left.
    pub fn reduced_word_omega_left(&self, w: &AffineWeylElement) -> (AffineWeylElement, Vec<usize>) {
        let mut word = Vec::new();
        let mut x = w.clone();
        while let Some(i) = (0..self.num_generators()).find(|&i| self.is_right_descent(&x, i)) {
            word.push(i);
            x = x.compose(&self.generators[i]);
        }
        word.reverse();
        (x, word)
    }

    /// The `Ω`-component `τ` of `w = w_af τ`.
    pub fn omega_part(&self, w: &AffineWeylElement) -> AffineWeylElement {
        self.reduced_word(w).1
    }

    /// Length-zero elements, one per class of `X / Q^vee`.
    pub fn omega_elements(&self) -> Result<&[AffineWeylElement]> {
        self.omega.as_deref().ok_or_else(|| {
            Error::Precondition("Ω is infinite for data with a central torus".into())
        })
    }

    /// `j` with `τ s_i τ^{-1} = s_j`.
    pub fn omega_conjugate(&self, tau: &AffineWeylElement, i: usize) -> Result<usize> {
        if self.length(tau) != 0 {
            return Err(Error::Precondition("omega_conjugate needs a length-zero element".into()));
        }
        let conj = tau.compose(&self.generators[i]).compose(&tau.inverse());
        self.generators
            .iter()
            .position(|g| *g == conj)
            .ok_or_else(|| Error::Precondition("conjugate is not a simple reflection".into()))
    }

    /// Bruhat order, extended to `W` by requiring equal `Ω`-components.
    pub fn bruhat_leq(&self, u: &AffineWeylElement, w: &AffineWeylElement) -> bool {
        let mut u = u.clone();
        let mut w = w.clone();
        let mut lu = self.length(&u);
        let mut lw = self.length(&w);
        loop {
            if lu > lw {
                return false;
            }
            if lw == 0 {
                return u == w;
            }
            let s = (0..self.num_generators())
                .find(|&i| self.is_left_descent(&w, i))
                .expect("positive length has a descent");
            w = self.generators[s].compose(&w);
            lw -= 1;
            if self.is_left_descent(&u, s) {
                u = self.generators[s].compose(&u);
                lu -= 1;
            }
        }
    }

    /// Demazure (0-Hecke monoid) product of a word: fold from the right,
    /// keeping only length-increasing multiplications.
    pub fn demazure_product(&self, word: &[usize]) -> AffineWeylElement {
        let mut x = self.identity();
        for &i in word.iter().rev() {
            if !self.is_left_descent(&x, i) {
                x = self.generators[i].compose(&x);
            }
        }
        x
    }

    /// Demazure product of two elements: `τ_a`-parts are moved through and
    /// the words concatenated.
    pub fn demazure(&self, a: &AffineWeylElement, b: &AffineWeylElement) -> AffineWeylElement {
        let (word_a, tau_a) = self.reduced_word(a);
        // a · b = w_a τ_a b and τ_a b = (τ_a b τ_a^{-1}) τ_a.
        let tb = tau_a.compose(b).compose(&tau_a.inverse());
        let (word_b, tau_b) = self.reduced_word(&tb);
        let mut word = word_a;
        word.extend(word_b);
        self.demazure_product(&word).compose(&tau_b).compose(&tau_a)
    }

    /// All reduced words of the `W_af`-part of `w` (with `w = word · τ`).
    pub fn all_reduced_words(&self, w: &AffineWeylElement) -> Vec<Vec<usize>> {
        let mut memo: HashMap<AffineWeylElement, Vec<Vec<usize>>> = HashMap::new();
        self.reduced_words_rec(w, &mut memo)
    }

    fn reduced_words_rec(
        &self,
        w: &AffineWeylElement,
        memo: &mut HashMap<AffineWeylElement, Vec<Vec<usize>>>,
    ) -> Vec<Vec<usize>> {
        if let Some(v) = memo.get(w) {
            return v.clone();
        }
        let descents = self.left_descents(w);
        let out = if descents.is_empty() {
            vec![vec![]]
        } else {
            let mut out = Vec::new();
            for s in descents {
                let rest = self.generators[s].compose(w);
                for tail in self.reduced_words_rec(&rest, memo) {
                    let mut word = vec![s];
                    word.extend(tail);
                    out.push(word);
                }
            }
            out
        };
        memo.insert(w.clone(), out.clone());
        out
    }

    /// The lower Bruhat interval `{u ≤ w}` as the set of subword products of a
    /// reduced word.
    pub fn lower_bruhat_interval(&self, w: &AffineWeylElement) -> Result<Vec<AffineWeylElement>> {
        let (word, tau) = self.reduced_word(w);
        let mut set: HashSet<AffineWeylElement> = HashSet::new();
        set.insert(tau);
        for &i in word.iter().rev() {
            let g = &self.generators[i];
            let new: Vec<_> = set.iter().map(|x| g.compose(x)).collect();
            set.extend(new);
            if set.len() > self.interval_cap {
                return Err(Error::CapExceeded {
                    what: "Bruhat interval",
                    cap: self.interval_cap,
                });
            }
        }
        let mut out: Vec<_> = set.into_iter().collect();
        out.sort_by_cached_key(|x| (self.length(x), x.clone()));
        Ok(out)
    }

    /// All elements of length at most `max_len` (requires finite `Ω`).
    pub fn elements_up_to_length(&self, max_len: usize) -> Result<Vec<AffineWeylElement>> {
        let omega = self.omega_elements()?;
        let mut layer = vec![self.identity()];
        let mut all = layer.clone();
        for _ in 0..max_len {
            let mut next = HashSet::new();
            for x in &layer {
                for (i, g) in self.generators.iter().enumerate() {
                    if !self.is_left_descent(x, i) {
                        next.insert(g.compose(x));
                    }
                }
            }
            layer = next.into_iter().collect();
            layer.sort();
            all.extend(layer.iter().cloned());
        }
        let mut out: Vec<_> = all
            .iter()
            .flat_map(|x| omega.iter().map(move |t| x.compose(t)))
            .collect();
        out.sort_by_cached_key(|x| (self.length(x), x.clone()));
        Ok(out)
    }

    pub(crate) fn interval_cache_get(
        &self,
        facet: &[usize],
        rep: &AffineWeylElement,
    ) -> Option<Arc<Vec<DoubleCosetIndex>>> {
        let key = IntervalKey {
            facet: facet.to_vec(),
            rep: rep.clone(),
        };
        let hit = self.interval_cache.lock().expect("cache poisoned").get(&key).cloned();
        let counter = if hit.is_some() {
            &self.interval_hits
        } else {
            &self.interval_misses
        };
        counter.fetch_add(1, Ordering::Relaxed);
        hit
    }

    pub(crate) fn interval_cache_put(
        &self,
        facet: &[usize],
        rep: &AffineWeylElement,
        value: Arc<Vec<DoubleCosetIndex>>,
    ) {
        let key = IntervalKey {
            facet: facet.to_vec(),
            rep: rep.clone(),
        };
        self.interval_cache
            .lock()
            .expect("cache poisoned")
            .insert(key, value);
    }

    /// Number of memoized lower intervals.
    pub fn interval_cache_len(&self) -> usize {
        self.interval_cache.lock().expect("cache poisoned").len()
    }

    /// `(hits, misses)` of interval lookups so far.
    pub fn interval_cache_counters(&self) -> (usize, usize) {
        (
            self.interval_hits.load(Ordering::Relaxed),
            self.interval_misses.load(Ordering::Relaxed),
        )
    }

    /// Seeds the interval memo table, e.g. from a persistent cache. Entries are
    /// trusted; callers must only seed intervals computed for the same datum.
    pub fn seed_interval(&self, facet: &[usize], rep: &AffineWeylElement, interval: Vec<DoubleCosetIndex>) {
        self.interval_cache_put(facet, rep, Arc::new(interval));
    }

    /// Snapshot of all memoized intervals.
    pub fn cached_intervals(&self) -> Vec<(Vec<usize>, AffineWeylElement, Arc<Vec<DoubleCosetIndex>>)> {
        let cache = self.interval_cache.lock().expect("cache poisoned");
        let mut out: Vec<_> = cache
            .iter()
            .map(|(k, v)| (k.facet.clone(), k.rep.clone(), v.clone()))
            .collect();
        out.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
        out
    }
}
