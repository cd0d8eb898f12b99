//! Facets of the base alcove, their finite parabolic subgroups `W_f`, and
//! double cosets `W_f \ W / W_f`.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use super::{AffineWeylElement, AffineWeylGroup};
use crate::error::{Error, Result};

/// A facet of the base alcove, given by the set `J` of affine simple
/// reflections fixing it. The empty set is the alcove itself (Iwahori level).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Facet {
    indices: Vec<usize>,
    elements: Arc<Vec<AffineWeylElement>>,
    special: bool,
}

impl Facet {
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    /// Elements of `W_f`, sorted by length.
    pub fn elements(&self) -> &[AffineWeylElement] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_iwahori(&self) -> bool {
        self.indices.is_empty()
    }

    /// `W_f` maps isomorphically onto `W_0`.
    pub fn is_special(&self) -> bool {
        self.special
    }
}

/// Canonical label of a double coset `W_f w W_f`: its unique element of
/// maximal length among the minimal-length representatives of the right
/// cosets `w' W_f` it contains.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DoubleCosetIndex {
    rep: AffineWeylElement,
}

impl DoubleCosetIndex {
    pub fn rep(&self) -> &AffineWeylElement {
        &self.rep
    }

    pub fn into_rep(self) -> AffineWeylElement {
        self.rep
    }

    /// Wraps an element without canonicalizing it. Only for representatives
    /// already known to be canonical, such as entries read back from a cache.
    pub fn from_canonical(rep: AffineWeylElement) -> Self {
        DoubleCosetIndex { rep }
    }
}

impl AffineWeylGroup {
    /// The facet whose stabilizer is generated by the affine simple
    /// reflections in `indices`.
    pub fn facet(&self, indices: &[usize]) -> Result<Facet> {
        let set: BTreeSet<usize> = indices.iter().copied().collect();
        let indices: Vec<usize> = set.into_iter().collect();
        let invalid = |reason: &str| Error::InvalidFacet {
            facet: indices.clone(),
            reason: reason.to_string(),
        };
        if let Some(&i) = indices.iter().find(|&&i| i >= self.num_generators()) {
            return Err(invalid(&format!("no affine simple reflection s{i}")));
        }
        for k in 0..self.datum().components().len() {
            let nodes = (0..self.num_generators()).filter(|&i| self.node_component(i) == k);
            if nodes.into_iter().all(|i| indices.contains(&i)) {
                return Err(invalid("contains every node of an irreducible factor"));
            }
        }
        let cap = self.datum().weyl_group_order() as usize;
        let mut seen: HashSet<AffineWeylElement> = HashSet::new();
        let mut frontier = vec![self.identity()];
        seen.insert(self.identity());
        while let Some(x) = frontier.pop() {
            for &i in &indices {
                let y = x.compose(self.generator(i));
                if seen.insert(y.clone()) {
                    if seen.len() > cap {
                        return Err(invalid("stabilizer is not finite"));
                    }
                    frontier.push(y);
                }
            }
        }
        let mut elements: Vec<_> = seen.into_iter().collect();
        elements.sort_by_cached_key(|x| (self.length(x), x.clone()));
        let finite_parts: HashSet<_> = elements.iter().map(|x| x.finite().clone()).collect();
        debug_assert_eq!(finite_parts.len(), elements.len());
        let special = elements.len() as u64 == self.datum().weyl_group_order();
        Ok(Facet {
            indices,
            elements: Arc::new(elements),
            special,
        })
    }

    pub fn iwahori(&self) -> Facet {
        self.facet(&[]).expect("the alcove is a facet")
    }

    /// The special vertex fixed by `W_0`.
    pub fn hyperspecial_vertex(&self) -> Facet {
        let finite: Vec<usize> = self.finite_indices().collect();
        self.facet(&finite).expect("finite simple reflections form a facet")
    }

    pub(crate) fn check_facet(&self, f: &Facet) -> Result<()> {
        if f.indices.iter().any(|&i| i >= self.num_generators())
            || f.elements.first().map(|e| e.dim()) != Some(self.dim())
        {
            return Err(Error::InvalidFacet {
                facet: f.indices.clone(),
                reason: "facet belongs to a different group".into(),
            });
        }
        Ok(())
    }

    /// `w` has no right descent in `f`.
    pub fn is_min_coset_rep(&self, w: &AffineWeylElement, f: &Facet) -> bool {
        f.indices.iter().all(|&i| !self.is_right_descent(w, i))
    }

    /// The minimal-length element `w^f` of `w W_f`.
    pub fn min_coset_rep(&self, w: &AffineWeylElement, f: &Facet) -> AffineWeylElement {
        let mut x = w.clone();
        while let Some(&i) = f.indices.iter().find(|&&i| self.is_right_descent(&x, i)) {
            x = x.compose(self.generator(i));
        }
        x
    }

    /// The canonical label `_f w^f` of `W_f w W_f`.
    pub fn double_coset_rep(&self, w: &AffineWeylElement, f: &Facet) -> DoubleCosetIndex {
        let rep = f
            .elements
            .iter()
            .map(|v| self.min_coset_rep(&v.compose(w), f))
            .max_by_key(|x| (self.length(x), x.clone()))
            .expect("W_f contains the identity");
        DoubleCosetIndex { rep }
    }

    /// All elements of `W_f w W_f`.
    pub fn double_coset_elements(&self, w: &AffineWeylElement, f: &Facet) -> Vec<AffineWeylElement> {
        let mut set = HashSet::new();
        for a in f.elements.iter() {
            let aw = a.compose(w);
            for b in f.elements.iter() {
                set.insert(aw.compose(b));
            }
        }
        let mut out: Vec<_> = set.into_iter().collect();
        out.sort_by_cached_key(|x| (self.length(x), x.clone()));
        out
    }

    /// Double cosets below `W_f w W_f` in the Bruhat order, sorted by length
    /// of their labels. Results are memoized per group.
    pub fn enumerate_lower_interval(
        &self,
        w: &DoubleCosetIndex,
        f: &Facet,
    ) -> Result<Arc<Vec<DoubleCosetIndex>>> {
        self.check_facet(f)?;
        self.check(&w.rep)?;
        if let Some(hit) = self.interval_cache_get(&f.indices, &w.rep) {
            return Ok(hit);
        }
        let elements = self.lower_bruhat_interval(&w.rep)?;
        let mut set: HashSet<DoubleCosetIndex> = HashSet::new();
        for u in elements.iter().filter(|u| self.is_min_coset_rep(u, f)) {
            set.insert(self.double_coset_rep(u, f));
        }
        let mut out: Vec<_> = set.into_iter().collect();
        out.sort_by_cached_key(|d| (self.length(&d.rep), d.rep.clone()));
        let out = Arc::new(out);
        self.interval_cache_put(&f.indices, &w.rep, out.clone());
        Ok(out)
    }

    /// Whether `W_f u W_f ≤ W_f w W_f`.
    pub fn double_coset_leq(&self, u: &DoubleCosetIndex, w: &DoubleCosetIndex) -> bool {
        self.bruhat_leq(&u.rep, &w.rep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn facet_validation() {
        let g = AffineWeylGroup::preset("A1").unwrap();
        assert!(g.facet(&[0, 1]).is_err());
        assert!(g.facet(&[2]).is_err());
        assert_eq!(g.facet(&[0]).unwrap().order(), 2);
        let g = AffineWeylGroup::preset("A1xA1").unwrap();
        // nodes: 0 (affine, first), 1, 2 (finite), 3 (affine, second)
        assert!(g.facet(&[0, 1]).is_err());
        assert_eq!(g.facet(&[0, 2]).unwrap().order(), 4);
        assert!(g.facet(&[1, 2]).unwrap().is_special());
    }

    #[test]
    fn special_facets() {
        let c2 = AffineWeylGroup::preset("C2").unwrap();
        assert!(c2.facet(&[1, 2]).unwrap().is_special());
        assert!(c2.facet(&[0, 1]).unwrap().is_special());
        assert!(!c2.facet(&[0, 2]).unwrap().is_special());
        assert!(!c2.iwahori().is_special());
        let a2 = AffineWeylGroup::preset("A2").unwrap();
        for j in [[0, 1], [1, 2], [0, 2]] {
            assert!(a2.facet(&j).unwrap().is_special());
        }
        let g2 = AffineWeylGroup::preset("G2").unwrap();
        assert!(g2.facet(&[1, 2]).unwrap().is_special());
        assert!(!g2.facet(&[0, 1]).unwrap().is_special());
        assert!(!g2.facet(&[0, 2]).unwrap().is_special());
    }

    #[test]
    fn double_coset_rep_a1() {
        let g = AffineWeylGroup::preset("A1").unwrap();
        let f = g.facet(&[1]).unwrap();
        let s0 = g.generator(0).clone();
        let rep = g.double_coset_rep(&s0, &f);
        assert_eq!(*rep.rep(), g.from_word(&[1, 0]));
        assert_eq!(*rep.rep(), AffineWeylElement::translation_by(&[-1]));
        assert_eq!(g.double_coset_rep(&g.identity(), &f).rep(), &g.identity());
        assert_eq!(g.double_coset_rep(g.generator(1), &f).rep(), &g.identity());
    }

    #[test]
    fn double_coset_rep_is_constant_on_double_cosets() {
        let g = AffineWeylGroup::preset("C2").unwrap();
        let f = g.facet(&[0, 2]).unwrap();
        for w in g.elements_up_to_length(4).unwrap() {
            let rep = g.double_coset_rep(&w, &f);
            for x in g.double_coset_elements(&w, &f) {
                assert_eq!(g.double_coset_rep(&x, &f), rep);
                assert!(g.length(&x) <= g.length(rep.rep()) + f.elements().iter().map(|v| g.length(v)).max().unwrap());
            }
            assert!(g.is_min_coset_rep(rep.rep(), &f));
        }
    }

    #[test]
    fn min_coset_rep_is_minimal() {
        let g = AffineWeylGroup::preset("A2").unwrap();
        let f = g.facet(&[1, 2]).unwrap();
        for w in g.elements_up_to_length(3).unwrap() {
            let m = g.min_coset_rep(&w, &f);
            let best = f.elements().iter().map(|v| g.length(&w.compose(v))).min().unwrap();
            assert_eq!(g.length(&m), best);
        }
    }

    #[test]
    fn lower_interval_a1_iwahori() {
        let g = AffineWeylGroup::preset("A1").unwrap();
        let f = g.iwahori();
        let w = g.double_coset_rep(&g.from_word(&[0, 1, 0]), &f);
        let interval = g.enumerate_lower_interval(&w, &f).unwrap();
        assert_eq!(interval.len(), 6);
        assert_eq!(g.interval_cache_len(), 1);
        let again = g.enumerate_lower_interval(&w, &f).unwrap();
        assert!(Arc::ptr_eq(&interval, &again));
    }

    #[test]
    fn lower_interval_spherical() {
        // W_0 \ W / W_0 for A1 sc is indexed by antidominant t_{-n alpha^vee}
        let g = AffineWeylGroup::preset("A1").unwrap();
        let f = g.hyperspecial_vertex();
        let w = g.double_coset_rep(&AffineWeylElement::translation_by(&[3]), &f);
        let interval = g.enumerate_lower_interval(&w, &f).unwrap();
        assert_eq!(interval.len(), 4);
        for (n, d) in interval.iter().enumerate() {
            assert_eq!(d.rep().translation(), &[-(n as i64)]);
        }
    }
}
