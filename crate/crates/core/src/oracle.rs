//! Slow, independent reference implementations used to validate the main
//! algorithms: the generic Iwahori–Hecke algebra over `Z[q]`, the subword
//! characterization of the Bruhat order, and lengths counted as separating
//! hyperplanes between alcove barycenters.

use std::collections::{BTreeMap, HashSet};

use num_rational::Rational64;
use rayon::prelude::*;

use crate::affine_weyl::{AffineWeylElement, AffineWeylGroup};
use crate::error::{Error, Result};
use crate::hecke::{Basis, HeckeAlgebra, HeckeElement};
use crate::lattice::solve_left;

/// Default bound on `ℓ(w)` for subword enumeration.
pub const DEFAULT_SUBWORD_CAP: usize = 20;

/// Dense polynomial in `q`, lowest degree first, without trailing zeros.
pub type Poly = Vec<i64>;

fn poly_add_scaled(acc: &mut Poly, p: &[i64], shift: usize, c: i64) {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, 0);
    }
    for (k, &x) in p.iter().enumerate() {
        acc[k + shift] += c * x;
    }
    while acc.last() == Some(&0) {
        acc.pop();
    }
}

fn poly_mul(a: &[i64], b: &[i64]) -> Poly {
    let mut out = vec![0; (a.len() + b.len()).saturating_sub(1)];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// `Σ_w P_w(q) T_w`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GenericHeckeElement {
    terms: BTreeMap<AffineWeylElement, Poly>,
}

impl GenericHeckeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(w: AffineWeylElement) -> Self {
        let mut e = Self::zero();
        e.terms.insert(w, vec![1]);
        e
    }

    pub fn terms(&self) -> &BTreeMap<AffineWeylElement, Poly> {
        &self.terms
    }

    pub fn coefficient(&self, w: &AffineWeylElement) -> Poly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: AffineWeylElement, p: &[i64], shift: usize, c: i64) {
        let entry = self.terms.entry(w.clone()).or_default();
        poly_add_scaled(entry, p, shift, c);
        if entry.is_empty() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, p) in &other.terms {
            out.add_term(w.clone(), p, 0, 1);
        }
        out
    }

    /// Evaluates every coefficient at an integer value of `q`.
    pub fn evaluate(&self, q: i64) -> BTreeMap<AffineWeylElement, i64> {
        self.terms
            .iter()
            .map(|(w, p)| (w.clone(), p.iter().rev().fold(0, |acc, &c| acc * q + c)))
            .filter(|(_, c)| *c != 0)
            .collect()
    }
}

/// `T_s · a` using `T_s T_w = T_{sw}` if `sw > w`, else `(q-1) T_w + q T_{sw}`.
fn left_multiply_simple(g: &AffineWeylGroup, s: usize, a: &GenericHeckeElement) -> GenericHeckeElement {
    let mut out = GenericHeckeElement::zero();
    for (w, p) in &a.terms {
        let sw = g.generator(s).compose(w);
        if g.length(&sw) > g.length(w) {
            out.add_term(sw, p, 0, 1);
        } else {
            out.add_term(w.clone(), p, 1, 1);
            out.add_term(w.clone(), p, 0, -1);
            out.add_term(sw, p, 1, 1);
        }
    }
    out
}

pub fn generic_multiply(
    g: &AffineWeylGroup,
    a: &GenericHeckeElement,
    b: &GenericHeckeElement,
) -> GenericHeckeElement {
    let mut out = GenericHeckeElement::zero();
    for (x, px) in &a.terms {
        let (word, tau) = g.reduced_word(x);
        // T_τ T_y = T_{τy}
        let mut acc = GenericHeckeElement::zero();
        for (y, py) in &b.terms {
            acc.add_term(tau.compose(y), &poly_mul(px, py), 0, 1);
        }
        for &s in word.iter().rev() {
            acc = left_multiply_simple(g, s, &acc);
        }
        out = out.add(&acc);
    }
    out
}

/// Reduces `Σ P_w(0) T_w` modulo `p` into the Iwahori-level indicator basis.
pub fn specialize_q0_mod_p(h: &HeckeAlgebra<'_>, a: &GenericHeckeElement) -> Result<HeckeElement> {
    if !h.facet().is_iwahori() {
        return Err(Error::Precondition("the generic algebra is Iwahori-level only".into()));
    }
    let p = h.prime() as i64;
    Ok(h.element(
        Basis::Indicator,
        a.evaluate(0)
            .into_iter()
            .map(|(w, c)| (h.class_of(&w), c.rem_euclid(p) as u64)),
    ))
}

/// `φ_w = Σ_{v ≤ w} T_v`, from subword products.
pub fn generic_phi(g: &AffineWeylGroup, w: &AffineWeylElement) -> Result<GenericHeckeElement> {
    let mut out = GenericHeckeElement::zero();
    for v in subword_products(g, w, DEFAULT_SUBWORD_CAP)? {
        out.add_term(v, &[1], 0, 1);
    }
    Ok(out)
}

/// All products of subwords of the smallest-descent reduced word of `w`.
pub fn subword_products(
    g: &AffineWeylGroup,
    w: &AffineWeylElement,
    cap: usize,
) -> Result<HashSet<AffineWeylElement>> {
    let (word, tau) = g.reduced_word(w);
    if word.len() > cap {
        return Err(Error::CapExceeded {
            what: "subword enumeration length",
            cap,
        });
    }
    let mut out = HashSet::new();
    let mut stack = vec![(0usize, g.identity())];
    while let Some((k, x)) = stack.pop() {
        if k == word.len() {
            out.insert(x.compose(&tau));
            continue;
        }
        stack.push((k + 1, x.compose(g.generator(word[k]))));
        stack.push((k + 1, x));
    }
    Ok(out)
}

/// `u ≤ w` iff `u` is a subword product of a reduced word of `w`.
pub fn brute_bruhat(g: &AffineWeylGroup, u: &AffineWeylElement, w: &AffineWeylElement) -> Result<bool> {
    Ok(subword_products(g, w, DEFAULT_SUBWORD_CAP)?.contains(u))
}

/// A point of the open base alcove with `<α_i, p> = 1 / ((r_k + 1) c_i)`,
/// where `c_i` is the coefficient of `α_i` in the highest root of its factor
/// and `r_k` the rank of that factor.
pub fn alcove_barycenter(g: &AffineWeylGroup) -> Vec<Rational64> {
    let datum = g.datum();
    let r = datum.rank();
    let n = datum.dim();
    let mut target = vec![Rational64::from(0); r];
    for comp in datum.components() {
        let theta = &datum.positive_roots()[comp.highest_root];
        let rk = comp.simple.len() as i64;
        for &i in &comp.simple {
            target[i] = Rational64::new(1, (rk + 1) * theta.coefficients[i]);
        }
    }
    // Solve <α_i, p> = target_i over Q by clearing denominators.
    let denom = target.iter().fold(1i64, |acc, t| lcm(acc, *t.denom()));
    let scaled: Vec<i64> = target.iter().map(|t| (t * denom).to_integer()).collect();
    let columns: Vec<Vec<i64>> = (0..n)
        .map(|k| (0..r).map(|i| datum.simple_root(i).functional[k]).collect())
        .collect();
    let x = solve_left(&columns, &scaled).expect("simple roots are independent");
    x.into_iter().map(|c| c / denom).collect()
}

fn lcm(a: i64, b: i64) -> i64 {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Number of hyperplanes `<α, x> = k` separating the base alcove from its
/// image under `w`.
pub fn brute_length(g: &AffineWeylGroup, w: &AffineWeylElement) -> usize {
    let p = alcove_barycenter(g);
    let n = p.len();
    // w·p = λ + u p, computed column by column on the rational vector
    let mut wp: Vec<Rational64> = w.translation().iter().map(|&x| Rational64::from(x)).collect();
    for j in 0..n {
        let mut e = vec![0; n];
        e[j] = 1;
        let col = w.finite().act(&e);
        for i in 0..n {
            wp[i] += Rational64::from(col[i]) * p[j];
        }
    }
    let pair = |a: &[i64], x: &[Rational64]| -> Rational64 {
        a.iter().zip(x).map(|(&c, v)| Rational64::from(c) * v).sum()
    };
    let mut total = 0;
    for root in g.datum().positive_roots() {
        let a = pair(&root.functional, &p);
        let b = pair(&root.functional, &wp);
        total += (b.floor().to_integer() - a.floor().to_integer()).unsigned_abs() as usize;
    }
    total
}

/// Outcome of one cross-check family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Runs the length, Bruhat and convolution cross-checks on all elements of
/// length at most `max_len`.
pub fn run_checks(g: &AffineWeylGroup, max_len: usize, primes: &[u64]) -> Result<Vec<CheckReport>> {
    let els = g.elements_up_to_length(max_len)?;
    let length_failures = els
        .par_iter()
        .filter(|w| brute_length(g, w) != g.length(w))
        .count();
    let mut reports = vec![CheckReport {
        name: "length".into(),
        cases: els.len(),
        failures: length_failures,
    }];

    let pairs: Vec<_> = els.iter().flat_map(|u| els.iter().map(move |w| (u, w))).collect();
    let subwords: Vec<HashSet<AffineWeylElement>> = els
        .par_iter()
        .map(|w| subword_products(g, w, DEFAULT_SUBWORD_CAP))
        .collect::<Result<_>>()?;
    let index: BTreeMap<&AffineWeylElement, usize> = els.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let bruhat_failures = pairs
        .par_iter()
        .filter(|(u, w)| subwords[index[w]].contains(u) != g.bruhat_leq(u, w))
        .count();
    reports.push(CheckReport {
        name: "bruhat".into(),
        cases: pairs.len(),
        failures: bruhat_failures,
    });

    let iwahori = g.iwahori();
    let phis: Vec<GenericHeckeElement> = els
        .par_iter()
        .map(|w| generic_phi(g, w))
        .collect::<Result<_>>()?;
    let products: Vec<GenericHeckeElement> = pairs
        .par_iter()
        .map(|(u, w)| generic_multiply(g, &phis[index[u]], &phis[index[w]]))
        .collect();
    for &p in primes {
        let h = HeckeAlgebra::new(g, iwahori.clone(), p)?;
        let failures = pairs
            .par_iter()
            .zip(products.par_iter())
            .map(|((u, w), prod)| -> Result<bool> {
                let oracle = h.to_basis(&specialize_q0_mod_p(&h, prod)?, Basis::Phi)?;
                let main = h.convolve(&h.phi(&h.class_of(u)), &h.phi(&h.class_of(w)))?;
                Ok(oracle != main)
            })
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .filter(|&bad| bad)
            .count();
        reports.push(CheckReport {
            name: format!("convolution mod {p}"),
            cases: pairs.len(),
            failures,
        });
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_relation() {
        let g = AffineWeylGroup::preset("A1").unwrap();
        let s = GenericHeckeElement::basis(g.generator(1).clone());
        let sq = generic_multiply(&g, &s, &s);
        assert_eq!(sq.coefficient(g.generator(1)), vec![-1, 1]);
        assert_eq!(sq.coefficient(&g.identity()), vec![0, 1]);
        let s0 = GenericHeckeElement::basis(g.generator(0).clone());
        assert_eq!(
            generic_multiply(&g, &s0, &s),
            GenericHeckeElement::basis(g.from_word(&[0, 1]))
        );
    }

    #[test]
    fn q_equals_one_is_group_algebra() {
        let g = AffineWeylGroup::preset("A2").unwrap();
        let els = g.elements_up_to_length(3).unwrap();
        for u in els.iter().step_by(4) {
            for w in els.iter().step_by(3) {
                let prod = generic_multiply(
                    &g,
                    &GenericHeckeElement::basis(u.clone()),
                    &GenericHeckeElement::basis(w.clone()),
                );
                let at_one = prod.evaluate(1);
                assert_eq!(at_one.into_iter().collect::<Vec<_>>(), vec![(u.compose(w), 1)]);
            }
        }
    }

    #[test]
    fn associativity() {
        let g = AffineWeylGroup::preset("C2").unwrap();
        let els = g.elements_up_to_length(3).unwrap();
        for a in els.iter().step_by(7) {
            for b in els.iter().step_by(5) {
                for c in els.iter().step_by(9) {
                    let (ta, tb, tc) = (
                        GenericHeckeElement::basis(a.clone()),
                        GenericHeckeElement::basis(b.clone()),
                        GenericHeckeElement::basis(c.clone()),
                    );
                    let left = generic_multiply(&g, &generic_multiply(&g, &ta, &tb), &tc);
                    let right = generic_multiply(&g, &ta, &generic_multiply(&g, &tb, &tc));
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn specialization() {
        let g = AffineWeylGroup::preset("A1").unwrap();
        let h = HeckeAlgebra::new(&g, g.iwahori(), 3).unwrap();
        let s = GenericHeckeElement::basis(g.generator(1).clone());
        let sq = specialize_q0_mod_p(&h, &generic_multiply(&g, &s, &s)).unwrap();
        assert_eq!(sq, h.element(Basis::Indicator, [(h.class_of(g.generator(1)), 2)]));
        let mut qe = GenericHeckeElement::zero();
        qe.add_term(g.identity(), &[0, 1], 0, 1);
        assert!(specialize_q0_mod_p(&h, &qe).unwrap().is_zero());
    }

    #[test]
    fn phi_products_through_oracle() {
        let g = AffineWeylGroup::preset("A1").unwrap();
        let h = HeckeAlgebra::new(&g, g.iwahori(), 2).unwrap();
        let prod = generic_multiply(
            &g,
            &generic_phi(&g, g.generator(0)).unwrap(),
            &generic_phi(&g, g.generator(1)).unwrap(),
        );
        let at0: Vec<_> = prod.evaluate(0).into_iter().collect();
        let expected: Vec<_> = generic_phi(&g, &g.from_word(&[0, 1])).unwrap().evaluate(0).into_iter().collect();
        assert_eq!(at0, expected);

        let s0s1 = g.from_word(&[0, 1]);
        let prod = generic_multiply(
            &g,
            &generic_phi(&g, &s0s1).unwrap(),
            &generic_phi(&g, g.generator(1)).unwrap(),
        );
        let phi = h.to_basis(&specialize_q0_mod_p(&h, &prod).unwrap(), Basis::Phi).unwrap();
        assert_eq!(phi, h.phi(&h.class_of(&s0s1)));
    }

    #[test]
    fn brute_examples() {
        let g = AffineWeylGroup::preset("A1").unwrap();
        assert_eq!(brute_length(&g, &g.identity()), 0);
        assert_eq!(brute_length(&g, &AffineWeylElement::translation_by(&[1])), 2);
        assert_eq!(brute_length(&g, &g.from_word(&[0, 1, 0])), 3);
        let s0s1s0 = g.from_word(&[0, 1, 0]);
        let s0s1 = g.from_word(&[0, 1]);
        assert!(brute_bruhat(&g, &g.identity(), &s0s1).unwrap());
        assert!(!brute_bruhat(&g, &s0s1s0, &s0s1).unwrap());
    }

    #[test]
    fn barycenter_is_inside_the_alcove() {
        for spec in ["A1", "B3", "C2xT1", "G2", "A1xA2"] {
            let g = AffineWeylGroup::preset(spec).unwrap();
            let p = alcove_barycenter(&g);
            for root in g.datum().positive_roots() {
                let v: Rational64 = root
                    .functional
                    .iter()
                    .zip(&p)
                    .map(|(&c, x)| Rational64::from(c) * x)
                    .sum();
                assert!(v > Rational64::from(0) && v < Rational64::from(1), "{spec}");
            }
        }
    }

    #[test]
    fn suite_passes_on_small_groups() {
        for spec in ["A1", "A1:ad", "G2"] {
            let g = AffineWeylGroup::preset(spec).unwrap();
            for r in run_checks(&g, 3, &[2, 3]).unwrap() {
                assert!(r.passed(), "{spec}: {r:?}");
            }
        }
    }
}
