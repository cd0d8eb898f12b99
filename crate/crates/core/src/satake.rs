//! The mod p Satake transform `H_K → H_{M ∩ K}` for a standard Levi `M`.
//!
//! The fixed-point locus of a cocharacter `λ` on the partial affine flag
//! variety has connected components indexed by `W_{M,af} \ W / W_f`, and the
//! transform of `φ_w` is supported on the unique component whose attractor
//! meets the Schubert variety of `w` in a closed subset. That component is
//! found by walking a reduced word of `_f w^f` and deciding at every letter
//! which fixed point of the `P^1`-fiber flows to the closed cell.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::affine_weyl::{AffineWeylElement, AffineWeylGroup, DoubleCosetIndex, Facet};
use crate::error::{Error, Result};
use crate::hecke::{is_prime, Basis, HeckeAlgebra, HeckeElement};
use crate::lattice::{dot, solve_left_integral, Sublattice};
use crate::notation::format_translation_form;
use crate::root_datum::{FiniteWeylElement, RootDatum};

/// Default bound on word length for the exhaustive chain enumeration.
pub const DEFAULT_CHAIN_CAP: usize = 24;

/// A standard Levi subgroup `M` with a cocharacter `λ` whose centralizer is `M`
/// and whose attracting parabolic is the standard one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeviDatum {
    /// Finite simple reflections of `M`, in affine numbering (`1..=r`).
    simple: Vec<usize>,
    /// `<α_i, λ>` for every finite simple root.
    pairings: Vec<i64>,
    coroots: Sublattice,
}

impl LeviDatum {
    /// `M` generated by the given finite simple reflections, with
    /// `<α_i, λ> = 1` off `M` and `0` on `M`.
    pub fn standard(group: &AffineWeylGroup, simple: &[usize]) -> Result<Self> {
        let r = group.datum().rank();
        let simple = Self::check_indices(group, simple)?;
        let pairings = (0..r)
            .map(|i| i64::from(!simple.contains(&(i + 1))))
            .collect();
        Ok(Self::build(group.datum(), simple, pairings))
    }

    /// The torus `M = T` with a regular dominant `λ`.
    pub fn minimal(group: &AffineWeylGroup) -> Self {
        Self::standard(group, &[]).expect("empty Levi is valid")
    }

    /// `M` given by an explicit coweight `λ`, which must pair to zero with the
    /// simple roots of `M` and positively with the others.
    pub fn with_cocharacter(group: &AffineWeylGroup, simple: &[usize], lambda: &[i64]) -> Result<Self> {
        let datum = group.datum();
        if lambda.len() != datum.dim() {
            return Err(Error::InvalidLevi(format!(
                "cocharacter has {} coordinates, expected {}",
                lambda.len(),
                datum.dim()
            )));
        }
        let simple = Self::check_indices(group, simple)?;
        let pairings: Vec<i64> = (0..datum.rank())
            .map(|i| dot(&datum.simple_root(i).functional, lambda))
            .collect();
        for (i, &d) in pairings.iter().enumerate() {
            let in_m = simple.contains(&(i + 1));
            if in_m && d != 0 {
                return Err(Error::InvalidLevi(format!("<α_{}, λ> = {d} but s{} is in M", i + 1, i + 1)));
            }
            if !in_m && d <= 0 {
                return Err(Error::InvalidLevi(format!("<α_{}, λ> = {d} must be positive", i + 1)));
            }
        }
        Ok(Self::build(datum, simple, pairings))
    }

    fn check_indices(group: &AffineWeylGroup, simple: &[usize]) -> Result<Vec<usize>> {
        let set: BTreeSet<usize> = simple.iter().copied().collect();
        if let Some(&i) = set.iter().find(|&&i| !group.finite_indices().contains(&i)) {
            return Err(Error::InvalidLevi(format!("s{i} is not a finite simple reflection")));
        }
        Ok(set.into_iter().collect())
    }

    fn build(datum: &RootDatum, simple: Vec<usize>, pairings: Vec<i64>) -> Self {
        let coroots: Vec<Vec<i64>> = simple
            .iter()
            .map(|&i| datum.simple_root(i - 1).coroot.clone())
            .collect();
        LeviDatum {
            coroots: Sublattice::spanned_by(datum.dim(), &coroots),
            simple,
            pairings,
        }
    }

    pub fn simple(&self) -> &[usize] {
        &self.simple
    }

    pub fn pairings(&self) -> &[i64] {
        &self.pairings
    }

    pub fn is_minimal(&self) -> bool {
        self.simple.is_empty()
    }

    /// `<β, λ>` for a root functional `β`.
    fn pair_root(&self, datum: &RootDatum, beta: &[i64]) -> i64 {
        let (idx, positive) = datum.find_root(beta).expect("vector part of an affine root is a root");
        let d = dot(&datum.positive_roots()[idx].coefficients, &self.pairings);
        if positive {
            d
        } else {
            -d
        }
    }

    /// Minimal representative of `W_0(M) u`.
    fn min_left_rep(&self, datum: &RootDatum, u: &FiniteWeylElement) -> FiniteWeylElement {
        let mut u = u.clone();
        'outer: loop {
            for &i in &self.simple {
                let a = &datum.simple_root(i - 1).functional;
                if !datum.is_positive_functional(&u.pull_back(a)) {
                    u = datum.simple_reflection(i - 1).compose(&u);
                    continue 'outer;
                }
            }
            return u;
        }
    }

    /// `u ∈ W_0(M)`.
    pub fn contains_finite(&self, datum: &RootDatum, u: &FiniteWeylElement) -> bool {
        self.min_left_rep(datum, u).is_identity()
    }
}

/// A class in `W_{M,af} \ W / W_f`, i.e. a connected component of the
/// `λ`-fixed points of the partial affine flag variety.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentLabel {
    rep: AffineWeylElement,
}

impl ComponentLabel {
    pub fn rep(&self) -> &AffineWeylElement {
        &self.rep
    }
}

/// An element of `F_p[X]`, written in the basis `e^z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonoidAlgebraElement {
    prime: u64,
    terms: BTreeMap<Vec<i64>, u64>,
}

impl MonoidAlgebraElement {
    pub fn zero(prime: u64) -> Self {
        MonoidAlgebraElement {
            prime,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(prime: u64, z: &[i64]) -> Self {
        let mut e = Self::zero(prime);
        e.add_term(z.to_vec(), 1);
        e
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, u64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, z: Vec<i64>, c: u64) {
        let p = self.prime;
        let c = c % p;
        if c == 0 {
            return;
        }
        match self.terms.entry(z) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = ((*o.get() as u128 + c as u128) % p as u128) as u64;
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.prime, other.prime, "prime mismatch");
        let mut out = self.clone();
        for (z, &c) in &other.terms {
            out.add_term(z.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: u64) -> Self {
        let mut out = Self::zero(self.prime);
        for (z, &x) in &self.terms {
            out.add_term(z.clone(), ((x as u128 * c as u128) % self.prime as u128) as u64);
        }
        out
    }

    /// Product in the group algebra: `e^a e^b = e^{a+b}`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.prime, other.prime, "prime mismatch");
        let mut out = Self::zero(self.prime);
        for (a, &x) in &self.terms {
            for (b, &y) in &other.terms {
                let z = a.iter().zip(b).map(|(s, t)| s + t).collect();
                out.add_term(z, ((x as u128 * y as u128) % self.prime as u128) as u64);
            }
        }
        out
    }
}

impl fmt::Display for MonoidAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(z, &c)| {
                let coords: Vec<String> = z.iter().map(|x| x.to_string()).collect();
                let mono = format!("e^{{t[{}]}}", coords.join(","));
                if c == 1 {
                    mono
                } else {
                    format!("{c}·{mono}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// An element of `H_{M ∩ K}` in the indicator basis, indexed by canonical
/// representatives of `W_{M,f} \ W_M / W_{M,f}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeviHeckeElement {
    prime: u64,
    terms: BTreeMap<AffineWeylElement, u64>,
}

impl LeviHeckeElement {
    pub fn zero(prime: u64) -> Self {
        LeviHeckeElement {
            prime,
            terms: BTreeMap::new(),
        }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn terms(&self) -> &BTreeMap<AffineWeylElement, u64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, y: AffineWeylElement, c: u64) {
        let p = self.prime;
        let c = c % p;
        if c == 0 {
            return;
        }
        match self.terms.entry(y) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = ((*o.get() as u128 + c as u128) % p as u128) as u64;
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// The same element in `F_p[X]` when every representative is a
    /// translation (always the case for `M = T`).
    pub fn to_monoid(&self) -> Option<MonoidAlgebraElement> {
        let mut out = MonoidAlgebraElement::zero(self.prime);
        for (y, &c) in &self.terms {
            if !y.is_translation() {
                return None;
            }
            out.add_term(y.translation().to_vec(), c);
        }
        Some(out)
    }

    pub fn format(&self, group: &AffineWeylGroup) -> String {
        if let Some(m) = self.to_monoid() {
            return m.to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(y, &c)| {
                let mono = format!("1^M_{{{}}}", format_translation_form(group, y));
                if c == 1 {
                    mono
                } else {
                    format!("{c}·{mono}")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// Satake transform data for a fixed group, facet, Levi and prime.
#[derive(Debug, Clone)]
pub struct SatakeTransform<'g> {
    group: &'g AffineWeylGroup,
    facet: Facet,
    levi: LeviDatum,
    prime: u64,
    /// `W_{M,f} = W_M ∩ W_f`.
    levi_facet: Vec<AffineWeylElement>,
    chain_cap: usize,
}

impl<'g> SatakeTransform<'g> {
    pub fn new(group: &'g AffineWeylGroup, facet: Facet, levi: LeviDatum, prime: u64) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::InvalidPrime(prime));
        }
        if levi.pairings.len() != group.datum().rank() {
            return Err(Error::InvalidLevi("Levi datum belongs to a different group".into()));
        }
        let levi_facet = facet
            .elements()
            .iter()
            .filter(|v| levi.contains_finite(group.datum(), v.finite()))
            .cloned()
            .collect();
        Ok(SatakeTransform {
            group,
            facet,
            levi,
            prime,
            levi_facet,
            chain_cap: DEFAULT_CHAIN_CAP,
        })
    }

    pub fn with_chain_cap(mut self, cap: usize) -> Self {
        self.chain_cap = cap;
        self
    }

    pub fn facet(&self) -> &Facet {
        &self.facet
    }

    pub fn levi(&self) -> &LeviDatum {
        &self.levi
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// `W_M ∩ W_f`, sorted by length.
    pub fn levi_induced_facet(&self) -> &[AffineWeylElement] {
        &self.levi_facet
    }

    /// Canonical representative of `W_{M,af} · w`: the translation part is
    /// reduced modulo the coroot lattice of `M` and the finite part is the
    /// minimal representative of `W_0(M) u`.
    fn left_class(&self, w: &AffineWeylElement) -> AffineWeylElement {
        let datum = self.group.datum();
        let u = self.levi.min_left_rep(datum, w.finite());
        let lambda = self.levi.coroots.reduce(w.translation());
        AffineWeylElement::new(lambda, u)
    }

    pub fn component_of(&self, w: &AffineWeylElement) -> ComponentLabel {
        let rep = self
            .facet
            .elements()
            .iter()
            .map(|y| self.left_class(&w.compose(y)))
            .min()
            .expect("W_f contains the identity");
        ComponentLabel { rep }
    }

    /// `W_{M,af} c W_f` meets `W_M`.
    pub fn component_has_levi_point(&self, c: &ComponentLabel) -> bool {
        let datum = self.group.datum();
        self.facet
            .elements()
            .iter()
            .any(|y| self.levi.contains_finite(datum, c.rep.compose(y).finite()))
    }

    /// `<vector part of x(a_i), λ>`.
    fn flow_pairing(&self, x: &AffineWeylElement, i: usize) -> i64 {
        let a = self.group.simple_affine_root(i);
        let beta = x.finite().push_forward(&a.functional);
        self.levi.pair_root(self.group.datum(), &beta)
    }

    fn check_class(&self, w: &DoubleCosetIndex) -> Result<()> {
        self.group.check(w.rep())?;
        if self.group.double_coset_rep(w.rep(), &self.facet) != *w {
            return Err(Error::Precondition(
                "element is not the canonical representative of its double coset".into(),
            ));
        }
        Ok(())
    }

    /// Component of the closed attractor, walking the given reduced word of
    /// `_f w^f = s_1 ⋯ s_n τ`.
    pub fn closed_attractor_along(&self, word: &[usize], tau: &AffineWeylElement) -> ComponentLabel {
        let mut x = self.group.identity();
        for &i in word {
            if self.flow_pairing(&x, i) >= 0 {
                x = x.compose(self.group.generator(i));
            }
        }
        self.component_of(&x.compose(tau))
    }

    pub fn closed_attractor_component(&self, w: &DoubleCosetIndex) -> Result<ComponentLabel> {
        self.check_class(w)?;
        let (word, tau) = self.group.reduced_word(w.rep());
        Ok(self.closed_attractor_along(&word, &tau))
    }

    /// Labels of all fixed-point chains making the closed choice at every
    /// letter, with both choices allowed where the flow is trivial.
    pub fn enumerate_closed_chains(&self, w: &DoubleCosetIndex) -> Result<BTreeSet<ComponentLabel>> {
        self.check_class(w)?;
        let (word, tau) = self.group.reduced_word(w.rep());
        if word.len() > self.chain_cap {
            return Err(Error::CapExceeded {
                what: "closed chain word length",
                cap: self.chain_cap,
            });
        }
        let mut out = BTreeSet::new();
        let mut stack = vec![(0usize, self.group.identity())];
        while let Some((k, x)) = stack.pop() {
            if k == word.len() {
                out.insert(self.component_of(&x.compose(&tau)));
                continue;
            }
            let i = word[k];
            let d = self.flow_pairing(&x, i);
            if d >= 0 {
                stack.push((k + 1, x.compose(self.group.generator(i))));
            }
            if d <= 0 {
                stack.push((k + 1, x));
            }
        }
        Ok(out)
    }

    /// Canonical representative of `W_{M,f} y W_{M,f}`.
    fn levi_double_coset_rep(&self, y: &AffineWeylElement) -> AffineWeylElement {
        self.levi_facet
            .iter()
            .flat_map(|a| {
                let ay = a.compose(y);
                self.levi_facet.iter().map(move |b| ay.compose(b))
            })
            .min()
            .expect("W_{M,f} contains the identity")
    }

    /// Indicator of the `λ`-fixed points of `Fl_w` lying in component `c`, as
    /// a function on `W_{M,f} \ W_M / W_{M,f}`.
    pub fn phi_c_w(&self, c: &ComponentLabel, w: &DoubleCosetIndex) -> Result<LeviHeckeElement> {
        self.check_class(w)?;
        if !self.component_has_levi_point(c) {
            return Err(Error::Precondition("component has no point in the Levi".into()));
        }
        let datum = self.group.datum();
        let mut support = BTreeSet::new();
        for x in self.group.lower_bruhat_interval(w.rep())? {
            if !self.group.is_min_coset_rep(&x, &self.facet) {
                continue;
            }
            let Some(y) = self
                .facet
                .elements()
                .iter()
                .map(|v| x.compose(v))
                .find(|y| self.levi.contains_finite(datum, y.finite()))
            else {
                continue;
            };
            if self.component_of(&y) == *c {
                support.insert(self.levi_double_coset_rep(&y));
            }
        }
        let mut out = LeviHeckeElement::zero(self.prime);
        for y in support {
            out.add_term(y, 1);
        }
        Ok(out)
    }

    pub fn satake_phi(&self, w: &DoubleCosetIndex) -> Result<LeviHeckeElement> {
        let c = self.closed_attractor_component(w)?;
        if self.component_has_levi_point(&c) {
            self.phi_c_w(&c, w)
        } else {
            Ok(LeviHeckeElement::zero(self.prime))
        }
    }

    /// Linear extension over the φ basis.
    pub fn satake(&self, hecke: &HeckeAlgebra<'_>, a: &HeckeElement) -> Result<LeviHeckeElement> {
        if a.facet().indices() != self.facet.indices() {
            return Err(Error::FacetMismatch {
                left: self.facet.indices().to_vec(),
                right: a.facet().indices().to_vec(),
            });
        }
        if a.prime() != self.prime {
            return Err(Error::PrimeMismatch {
                left: self.prime,
                right: a.prime(),
            });
        }
        let phi = hecke.to_basis(a, Basis::Phi)?;
        let mut out = LeviHeckeElement::zero(self.prime);
        for (w, &c) in phi.terms() {
            for (y, &x) in self.satake_phi(w)?.terms() {
                out.add_term(y.clone(), ((c as u128 * x as u128) % self.prime as u128) as u64);
            }
        }
        Ok(out)
    }

    fn require_special_minimal(&self) -> Result<()> {
        if !self.facet.is_special() {
            return Err(Error::Precondition("facet is not special".into()));
        }
        if !self.levi.is_minimal() {
            return Err(Error::Precondition("Levi is not the torus".into()));
        }
        Ok(())
    }

    /// The anti-dominant `z` with `W_f w W_f = W_f t_z W_f` (special facets).
    pub fn antidominant_translation(&self, w: &AffineWeylElement) -> Result<Vec<i64>> {
        if !self.facet.is_special() {
            return Err(Error::Precondition("facet is not special".into()));
        }
        let y = self
            .facet
            .elements()
            .iter()
            .find(|v| v.finite() == w.finite())
            .expect("W_f surjects onto W_0 for special facets");
        let t = w.compose(&y.inverse());
        debug_assert!(t.is_translation());
        Ok(self.group.datum().antidominant_representative(t.translation()).0)
    }

    /// `S(φ_w) = e^z` for the anti-dominant `z` in the double coset.
    pub fn special_satake_phi(&self, w: &DoubleCosetIndex) -> Result<MonoidAlgebraElement> {
        self.require_special_minimal()?;
        let z = self.antidominant_translation(w.rep())?;
        Ok(MonoidAlgebraElement::monomial(self.prime, &z))
    }

    /// Anti-dominant coweights `z` with `ℓ(t_z) ≤ max_len`, with their
    /// double coset labels, sorted by length.
    pub fn lambda_minus(&self, max_len: usize) -> Result<Vec<(Vec<i64>, DoubleCosetIndex)>> {
        self.require_special_minimal()?;
        enumerate_antidominant(self.group.datum(), max_len)?
            .into_iter()
            .map(|z| {
                let w = self
                    .group
                    .double_coset_rep(&AffineWeylElement::translation_by(&z), &self.facet);
                Ok((z, w))
            })
            .collect()
    }
}

/// Anti-dominant coweights `z ∈ X` with `ℓ(t_z) = -<2ρ, z> ≤ max_len`, sorted
/// by length and then coordinates.
pub fn enumerate_antidominant(datum: &RootDatum, max_len: usize) -> Result<Vec<Vec<i64>>> {
    if datum.fundamental_group_order().is_none() {
        return Err(Error::Precondition(
            "anti-dominant coweights are infinite in number with a central torus".into(),
        ));
    }
    let r = datum.rank();
    let n = datum.dim();
    // ℓ(t_z) = Σ_i m_i h_i with m_i = -<α_i, z> and h_i = Σ_{α>0} (coefficient of α_i in α)
    let weights: Vec<usize> = (0..r)
        .map(|i| {
            datum
                .positive_roots()
                .iter()
                .map(|a| a.coefficients[i] as usize)
                .sum()
        })
        .collect();
    let columns: Vec<Vec<i64>> = (0..n)
        .map(|k| (0..r).map(|i| datum.simple_root(i).functional[k]).collect())
        .collect();
    let mut out = Vec::new();
    let mut m = vec![0usize; r];
    fn rec(
        i: usize,
        budget: usize,
        m: &mut Vec<usize>,
        weights: &[usize],
        columns: &[Vec<i64>],
        out: &mut Vec<(usize, Vec<i64>)>,
        max_len: usize,
    ) {
        if i == m.len() {
            let target: Vec<i64> = m.iter().map(|&x| -(x as i64)).collect();
            if let Some(z) = solve_left_integral(columns, &target) {
                out.push((max_len - budget, z));
            }
            return;
        }
        let mut k = 0;
        while k * weights[i] <= budget {
            m[i] = k;
            rec(i + 1, budget - k * weights[i], m, weights, columns, out, max_len);
            k += 1;
        }
    }
    let mut found = Vec::new();
    rec(0, max_len, &mut m, &weights, &columns, &mut found, max_len);
    found.sort();
    out.extend(found.into_iter().map(|(_, z)| z));
    Ok(out)
}
