//! The mod p parahoric Hecke algebra `H_K = F_p[K \ G / K]`.
//!
//! Elements are finite sums over double cosets `W_f \ W / W_f`, written either
//! in the indicator basis `1_w` or in the basis
//! `φ_w = Σ_{v ≤ w} 1_v`. In the φ basis the product of two basis vectors is
//! again a basis vector, given by a Demazure product.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::affine_weyl::{AffineWeylElement, AffineWeylGroup, DoubleCosetIndex, Facet};
use crate::error::{Error, Result};
use crate::notation::{format_translation_form, parse_element};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Indicator,
    Phi,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::Indicator => "indicator",
            Basis::Phi => "phi",
        })
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of `H_K` with coefficients in `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeElement {
    facet: Facet,
    prime: u64,
    basis: Basis,
    terms: BTreeMap<DoubleCosetIndex, u64>,
}

impl HeckeElement {
    pub fn facet(&self) -> &Facet {
        &self.facet
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<DoubleCosetIndex, u64> {
        &self.terms
    }

    pub fn coefficient(&self, w: &DoubleCosetIndex) -> u64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, w: DoubleCosetIndex, c: u64) {
        let p = self.prime;
        let c = c % p;
        if c == 0 {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = ((*o.get() as u128 + c as u128) % p as u128) as u64;
                if sum == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }
}

/// Record of one φ-class product, sufficient to recompute it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvolutionWitness {
    pub left: DoubleCosetIndex,
    pub right: DoubleCosetIndex,
    /// `τ_1` in `ẇ_1 = τ_1 s_1 ⋯ s_n`.
    pub tau_left: AffineWeylElement,
    pub word_left: Vec<usize>,
    /// `τ_2` in `ẇ_2 = t_1 ⋯ t_m τ_2`.
    pub word_right: Vec<usize>,
    pub tau_right: AffineWeylElement,
    pub demazure: AffineWeylElement,
    pub result: DoubleCosetIndex,
}

/// The Hecke algebra for a fixed group, facet and prime.
#[derive(Debug, Clone)]
pub struct HeckeAlgebra<'g> {
    group: &'g AffineWeylGroup,
    facet: Facet,
    prime: u64,
}

impl<'g> HeckeAlgebra<'g> {
    pub fn new(group: &'g AffineWeylGroup, facet: Facet, prime: u64) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::InvalidPrime(prime));
        }
        group.check_facet(&facet)?;
        Ok(HeckeAlgebra {
            group,
            facet,
            prime,
        })
    }

    pub fn group(&self) -> &'g AffineWeylGroup {
        self.group
    }

    pub fn facet(&self) -> &Facet {
        &self.facet
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// Canonical double coset of an element.
    pub fn class_of(&self, w: &AffineWeylElement) -> DoubleCosetIndex {
        self.group.double_coset_rep(w, &self.facet)
    }

    pub fn zero(&self, basis: Basis) -> HeckeElement {
        HeckeElement {
            facet: self.facet.clone(),
            prime: self.prime,
            basis,
            terms: BTreeMap::new(),
        }
    }

    fn single(&self, basis: Basis, w: DoubleCosetIndex) -> HeckeElement {
        let mut e = self.zero(basis);
        e.terms.insert(w, 1);
        e
    }

    pub fn phi(&self, w: &DoubleCosetIndex) -> HeckeElement {
        self.single(Basis::Phi, w.clone())
    }

    pub fn indicator(&self, w: &DoubleCosetIndex) -> HeckeElement {
        self.single(Basis::Indicator, w.clone())
    }

    /// The unit `φ_e = 1_e`.
    pub fn unit(&self) -> HeckeElement {
        self.phi(&self.class_of(&self.group.identity()))
    }

    /// Builds an element from `(class, coefficient)` pairs.
    pub fn element(
        &self,
        basis: Basis,
        terms: impl IntoIterator<Item = (DoubleCosetIndex, u64)>,
    ) -> HeckeElement {
        let mut e = self.zero(basis);
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    fn check(&self, a: &HeckeElement) -> Result<()> {
        if a.facet.indices() != self.facet.indices() {
            return Err(Error::FacetMismatch {
                left: self.facet.indices().to_vec(),
                right: a.facet.indices().to_vec(),
            });
        }
        if a.prime != self.prime {
            return Err(Error::PrimeMismatch {
                left: self.prime,
                right: a.prime,
            });
        }
        Ok(())
    }

    /// `φ_w` expanded in the indicator basis.
    pub fn phi_in_indicator_basis(&self, w: &DoubleCosetIndex) -> Result<HeckeElement> {
        let interval = self.group.enumerate_lower_interval(w, &self.facet)?;
        Ok(self.element(Basis::Indicator, interval.iter().map(|v| (v.clone(), 1))))
    }

    pub fn to_basis(&self, a: &HeckeElement, basis: Basis) -> Result<HeckeElement> {
        self.check(a)?;
        match (a.basis, basis) {
            (x, y) if x == y => Ok(a.clone()),
            (Basis::Phi, Basis::Indicator) => {
                let mut out = self.zero(Basis::Indicator);
                for (w, &c) in &a.terms {
                    for v in self.group.enumerate_lower_interval(w, &self.facet)?.iter() {
                        out.add_term(v.clone(), c);
                    }
                }
                Ok(out)
            }
            _ => {
                // peel off the longest remaining class: 1_w = φ_w - (lower terms)
                let p = self.prime;
                let mut rest = a.clone();
                let mut out = self.zero(Basis::Phi);
                while let Some(top) = rest
                    .terms
                    .keys()
                    .max_by_key(|w| (self.group.length(w.rep()), (*w).clone()))
                    .cloned()
                {
                    let c = rest.terms[&top];
                    out.add_term(top.clone(), c);
                    for v in self.group.enumerate_lower_interval(&top, &self.facet)?.iter() {
                        rest.add_term(v.clone(), p - c);
                    }
                }
                Ok(out)
            }
        }
    }

    /// `φ_{w_1} * φ_{w_2} = φ_w` with `w = _f(τ_1 · D(s_1 ⋯ s_n t_1 ⋯ t_m) · τ_2)^f`.
    pub fn convolve_phi_classes(
        &self,
        w1: &DoubleCosetIndex,
        w2: &DoubleCosetIndex,
    ) -> (DoubleCosetIndex, ConvolutionWitness) {
        let g = self.group;
        let (tau_left, word_left) = g.reduced_word_omega_left(w1.rep());
        let (word_right, tau_right) = g.reduced_word(w2.rep());
        let mut word = word_left.clone();
        word.extend_from_slice(&word_right);
        let demazure = g.demazure_product(&word);
        let result = self.class_of(&tau_left.compose(&demazure).compose(&tau_right));
        let witness = ConvolutionWitness {
            left: w1.clone(),
            right: w2.clone(),
            tau_left,
            word_left,
            word_right,
            tau_right,
            demazure,
            result: result.clone(),
        };
        (result, witness)
    }

    /// Recomputes a witness from its words and checks every recorded field.
    pub fn replay(&self, w: &ConvolutionWitness) -> Result<DoubleCosetIndex> {
        let g = self.group;
        let left = g.from_word(&w.word_left);
        let right = g.from_word(&w.word_right);
        if w.tau_left.compose(&left) != *w.left.rep() || right.compose(&w.tau_right) != *w.right.rep() {
            return Err(Error::Precondition("witness words do not spell its inputs".into()));
        }
        let mut word = w.word_left.clone();
        word.extend_from_slice(&w.word_right);
        let demazure = g.demazure_product(&word);
        if demazure != w.demazure {
            return Err(Error::Precondition("witness Demazure product does not replay".into()));
        }
        let result = self.class_of(&w.tau_left.compose(&demazure).compose(&w.tau_right));
        if result != w.result {
            return Err(Error::Precondition("witness result does not replay".into()));
        }
        Ok(result)
    }

    /// Convolution, computed in the φ basis and returned in the basis of `a`.
    pub fn convolve(&self, a: &HeckeElement, b: &HeckeElement) -> Result<HeckeElement> {
        self.check(a)?;
        self.check(b)?;
        let pa = self.to_basis(a, Basis::Phi)?;
        let pb = self.to_basis(b, Basis::Phi)?;
        let mut out = self.zero(Basis::Phi);
        for (w1, &c1) in &pa.terms {
            for (w2, &c2) in &pb.terms {
                let (w, _) = self.convolve_phi_classes(w1, w2);
                out.add_term(w, mul_mod(c1, c2, self.prime));
            }
        }
        self.to_basis(&out, a.basis)
    }

    pub fn add(&self, a: &HeckeElement, b: &HeckeElement) -> Result<HeckeElement> {
        self.check(a)?;
        let b = self.to_basis(b, a.basis)?;
        let mut out = a.clone();
        for (w, &c) in &b.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, a: &HeckeElement, c: u64) -> Result<HeckeElement> {
        self.check(a)?;
        let c = c % self.prime;
        Ok(self.element(a.basis, a.terms.iter().map(|(w, &x)| (w.clone(), mul_mod(x, c, self.prime)))))
    }

    /// Counts of Iwahori cells of the closure of `W_f w W_f` by dimension:
    /// entry `k` is the number of minimal representatives `u ≤ w` of length `k`.
    pub fn point_count_polynomial(&self, w: &DoubleCosetIndex) -> Result<Vec<u64>> {
        let g = self.group;
        let mut coeffs = Vec::new();
        for u in g.lower_bruhat_interval(w.rep())? {
            if g.is_min_coset_rep(&u, &self.facet) {
                let l = g.length(&u);
                if coeffs.len() <= l {
                    coeffs.resize(l + 1, 0);
                }
                coeffs[l] += 1;
            }
        }
        Ok(coeffs)
    }

    pub fn to_wire(&self, a: &HeckeElement) -> HeckeElementWire {
        let mut terms: Vec<_> = a.terms.iter().collect();
        terms.sort_by_cached_key(|(w, _)| (self.group.length(w.rep()), (*w).clone()));
        HeckeElementWire {
            facet: a.facet.indices().to_vec(),
            prime: a.prime,
            basis: a.basis,
            terms: terms
                .into_iter()
                .map(|(w, &c)| TermWire {
                    rep: format_translation_form(self.group, w.rep()),
                    coeff: c,
                })
                .collect(),
        }
    }

    /// Reads a wire element. Representatives are re-canonicalized.
    pub fn from_wire(&self, wire: &HeckeElementWire) -> Result<HeckeElement> {
        let mut facet = wire.facet.clone();
        facet.sort_unstable();
        facet.dedup();
        if facet != self.facet.indices() {
            return Err(Error::FacetMismatch {
                left: self.facet.indices().to_vec(),
                right: wire.facet.clone(),
            });
        }
        if wire.prime != self.prime {
            return Err(Error::PrimeMismatch {
                left: self.prime,
                right: wire.prime,
            });
        }
        let mut out = self.zero(wire.basis);
        for t in &wire.terms {
            out.add_term(self.class_of(&parse_element(self.group, &t.rep)?), t.coeff);
        }
        Ok(out)
    }

    pub fn format(&self, a: &HeckeElement) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let symbol = match a.basis {
            Basis::Phi => "φ",
            Basis::Indicator => "1",
        };
        self.to_wire(a)
            .terms
            .iter()
            .map(|t| {
                if t.coeff == 1 {
                    format!("{symbol}_{{{}}}", t.rep)
                } else {
                    format!("{}·{symbol}_{{{}}}", t.coeff, t.rep)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// JSON form of a [`HeckeElement`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeElementWire {
    pub facet: Vec<usize>,
    pub prime: u64,
    pub basis: Basis,
    pub terms: Vec<TermWire>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermWire {
    pub rep: String,
    pub coeff: u64,
}

/// `1 + q + 2q^2` style rendering of a coefficient list.
pub fn format_polynomial(coeffs: &[u64]) -> String {
    let mut parts = Vec::new();
    for (k, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => "q".to_string(),
            _ => format!("q^{k}"),
        };
        parts.push(match (c, k) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}{mono}"),
        });
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1() -> AffineWeylGroup {
        AffineWeylGroup::preset("A1").unwrap()
    }

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(3) && is_prime(5) && is_prime(7919));
        assert!(!is_prime(0) && !is_prime(1) && !is_prime(4) && !is_prime(91));
        let g = a1();
        assert_eq!(
            HeckeAlgebra::new(&g, g.iwahori(), 0).unwrap_err(),
            Error::InvalidPrime(0)
        );
        assert!(HeckeAlgebra::new(&g, g.iwahori(), 6).is_err());
    }

    #[test]
    fn phi_of_identity_is_indicator() {
        let g = a1();
        let h = HeckeAlgebra::new(&g, g.iwahori(), 3).unwrap();
        let e = h.class_of(&g.identity());
        assert_eq!(h.phi_in_indicator_basis(&e).unwrap(), h.indicator(&e));
    }

    #[test]
    fn phi_expansion_a1() {
        let g = a1();
        let h = HeckeAlgebra::new(&g, g.iwahori(), 3).unwrap();
        let w = h.class_of(&g.from_word(&[0, 1]));
        let exp = h.phi_in_indicator_basis(&w).unwrap();
        let expected = h.element(
            Basis::Indicator,
            [vec![], vec![0], vec![1], vec![0, 1]]
                .iter()
                .map(|word| (h.class_of(&g.from_word(word)), 1)),
        );
        assert_eq!(exp, expected);
    }

    #[test]
    fn basis_round_trip() {
        let g = AffineWeylGroup::preset("A2").unwrap();
        for facet in [g.iwahori(), g.facet(&[1]).unwrap(), g.hyperspecial_vertex()] {
            let h = HeckeAlgebra::new(&g, facet, 5).unwrap();
            let classes: Vec<_> = g
                .elements_up_to_length(3)
                .unwrap()
                .iter()
                .map(|w| h.class_of(w))
                .collect();
            let a = h.element(
                Basis::Phi,
                classes.iter().enumerate().map(|(i, w)| (w.clone(), i as u64)),
            );
            let ind = h.to_basis(&a, Basis::Indicator).unwrap();
            assert_eq!(h.to_basis(&ind, Basis::Phi).unwrap(), a);
        }
    }

    #[test]
    fn class_products_a1() {
        let g = a1();
        let h = HeckeAlgebra::new(&g, g.iwahori(), 3).unwrap();
        let c = |w: &[usize]| h.class_of(&g.from_word(w));
        assert_eq!(h.convolve_phi_classes(&c(&[]), &c(&[0, 1])).0, c(&[0, 1]));
        assert_eq!(h.convolve_phi_classes(&c(&[0]), &c(&[1])).0, c(&[0, 1]));
        assert_eq!(h.convolve_phi_classes(&c(&[0, 1]), &c(&[1])).0, c(&[0, 1]));
    }

    #[test]
    fn bilinear_product_a1() {
        let g = a1();
        let h = HeckeAlgebra::new(&g, g.iwahori(), 3).unwrap();
        let c = |w: &[usize]| h.class_of(&g.from_word(w));
        let a = h.element(Basis::Phi, [(c(&[0]), 1), (c(&[1]), 1)]);
        let b = h.phi(&c(&[1]));
        let expected = h.element(Basis::Phi, [(c(&[0, 1]), 1), (c(&[1]), 1)]);
        assert_eq!(h.convolve(&a, &b).unwrap(), expected);
        assert_eq!(h.convolve(&h.unit(), &a).unwrap(), a);
    }

    #[test]
    fn mismatches_are_errors() {
        let g = a1();
        let h = HeckeAlgebra::new(&g, g.iwahori(), 3).unwrap();
        let k = HeckeAlgebra::new(&g, g.hyperspecial_vertex(), 3).unwrap();
        let h5 = HeckeAlgebra::new(&g, g.iwahori(), 5).unwrap();
        assert!(matches!(
            h.convolve(&h.unit(), &k.unit()),
            Err(Error::FacetMismatch { .. })
        ));
        assert!(matches!(
            h.convolve(&h.unit(), &h5.unit()),
            Err(Error::PrimeMismatch { .. })
        ));
    }

    #[test]
    fn witness_replays() {
        let g = AffineWeylGroup::preset("C2").unwrap();
        let h = HeckeAlgebra::new(&g, g.facet(&[0]).unwrap(), 2).unwrap();
        let classes: Vec<_> = g.elements_up_to_length(3).unwrap().iter().map(|w| h.class_of(w)).collect();
        for a in classes.iter().step_by(3) {
            for b in classes.iter().step_by(5) {
                let (w, witness) = h.convolve_phi_classes(a, b);
                assert_eq!(h.replay(&witness).unwrap(), w);
            }
        }
    }

    #[test]
    fn point_counts() {
        let g = a1();
        let h = HeckeAlgebra::new(&g, g.iwahori(), 2).unwrap();
        let e = h.class_of(&g.identity());
        assert_eq!(h.point_count_polynomial(&e).unwrap(), vec![1]);
        let s0 = h.class_of(g.generator(0));
        assert_eq!(format_polynomial(&h.point_count_polynomial(&s0).unwrap()), "1 + q");
        let k = HeckeAlgebra::new(&g, g.hyperspecial_vertex(), 2).unwrap();
        let z = k.class_of(&AffineWeylElement::translation_by(&[-1]));
        assert_eq!(k.point_count_polynomial(&z).unwrap(), vec![1, 1, 1]);
    }

    #[test]
    fn wire_round_trip() {
        let g = AffineWeylGroup::preset("A2:ad").unwrap();
        let h = HeckeAlgebra::new(&g, g.facet(&[0, 2]).unwrap(), 7).unwrap();
        let a = h.element(
            Basis::Phi,
            g.elements_up_to_length(2).unwrap().iter().map(|w| (h.class_of(w), 3)),
        );
        let json = serde_json::to_string(&h.to_wire(&a)).unwrap();
        let back: HeckeElementWire = serde_json::from_str(&json).unwrap();
        assert_eq!(h.from_wire(&back).unwrap(), a);
    }

    #[test]
    fn polynomial_rendering() {
        assert_eq!(format_polynomial(&[1, 1]), "1 + q");
        assert_eq!(format_polynomial(&[1, 0, 2]), "1 + 2q^2");
        assert_eq!(format_polynomial(&[]), "0");
    }
}
