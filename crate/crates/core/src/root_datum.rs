//! Finite root data with a chosen coweight lattice.
//!
//! Coweights are integer coordinate vectors with respect to a basis of the
//! coweight lattice `X`. Roots are stored as integer functionals on `X`, so
//! every pairing `<alpha, nu>` is a plain dot product.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{dot, solve_left, solve_left_integral, Sublattice};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DynkinType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl DynkinType {
    fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => DynkinType::A,
            'B' => DynkinType::B,
            'C' => DynkinType::C,
            'D' => DynkinType::D,
            'E' => DynkinType::E,
            'F' => DynkinType::F,
            'G' => DynkinType::G,
            _ => return None,
        })
    }

    pub fn letter(self) -> char {
        match self {
            DynkinType::A => 'A',
            DynkinType::B => 'B',
            DynkinType::C => 'C',
            DynkinType::D => 'D',
            DynkinType::E => 'E',
            DynkinType::F => 'F',
            DynkinType::G => 'G',
        }
    }

    fn valid_rank(self, rank: usize) -> bool {
        match self {
            DynkinType::A => rank >= 1,
            DynkinType::B | DynkinType::C => rank >= 2,
            DynkinType::D => rank >= 4,
            DynkinType::E => (6..=8).contains(&rank),
            DynkinType::F => rank == 4,
            DynkinType::G => rank == 2,
        }
    }

    /// Cartan matrix with `a[i][j] = <alpha_j, alpha_i^vee>`, Bourbaki numbering.
    fn cartan_matrix(self, n: usize) -> Vec<Vec<i64>> {
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match self {
            DynkinType::A | DynkinType::B | DynkinType::C => {
                for i in 0..n.saturating_sub(1) {
                    link(i, i + 1);
                }
            }
            DynkinType::D => {
                for i in 0..n - 2 {
                    link(i, i + 1);
                }
                link(n - 3, n - 1);
            }
            DynkinType::E => {
                link(0, 2);
                link(1, 3);
                for i in 2..n - 1 {
                    link(i, i + 1);
                }
            }
            DynkinType::F => {
                link(0, 1);
                link(1, 2);
                link(2, 3);
            }
            DynkinType::G => link(0, 1),
        }
        match self {
            // alpha_n short
            DynkinType::B => a[n - 1][n - 2] = -2,
            // alpha_n long
            DynkinType::C => a[n - 2][n - 1] = -2,
            // alpha_2 long, alpha_3 short
            DynkinType::F => a[2][1] = -2,
            // alpha_1 short, alpha_2 long
            DynkinType::G => a[0][1] = -3,
            _ => {}
        }
        a
    }

    fn weyl_order(self, n: usize) -> u64 {
        let fact = |k: usize| (1..=k as u64).product::<u64>();
        match self {
            DynkinType::A => fact(n + 1),
            DynkinType::B | DynkinType::C => (1u64 << n) * fact(n),
            DynkinType::D => (1u64 << (n - 1)) * fact(n),
            DynkinType::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            DynkinType::F => 1152,
            DynkinType::G => 12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LatticeChoice {
    SimplyConnected,
    Adjoint,
    /// Rows are basis vectors written in fundamental-coweight coordinates.
    Explicit(Vec<Vec<i64>>),
}

/// Input presentation of a split reductive group: Dynkin components, an
/// optional central torus and a coweight lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CartanDatum {
    pub components: Vec<(DynkinType, usize)>,
    pub torus_rank: usize,
    pub lattice: LatticeChoice,
}

#[derive(Deserialize, Serialize)]
struct ExplicitDatumJson {
    #[serde(rename = "type")]
    letter: String,
    rank: usize,
    lattice_basis: Vec<Vec<i64>>,
    #[serde(default)]
    torus_rank: usize,
}

impl CartanDatum {
    pub fn new(components: Vec<(DynkinType, usize)>, lattice: LatticeChoice) -> Self {
        CartanDatum {
            components,
            torus_rank: 0,
            lattice,
        }
    }

    /// Parses `"A2"`, `"C2:ad"`, `"A1xB2:sc"`, `"A1xT1"` or an explicit-lattice
    /// JSON document `{"type": "A", "rank": 3, "lattice_basis": [[..]]}`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec.starts_with('{') {
            let doc: ExplicitDatumJson =
                serde_json::from_str(spec).map_err(|e| Error::Parse(e.to_string()))?;
            let mut chars = doc.letter.chars();
            let letter = match (chars.next(), chars.next()) {
                (Some(c), None) => DynkinType::from_letter(c),
                _ => None,
            }
            .ok_or_else(|| Error::Parse(format!("unknown type {:?}", doc.letter)))?;
            let datum = CartanDatum {
                components: vec![(letter, doc.rank)],
                torus_rank: doc.torus_rank,
                lattice: LatticeChoice::Explicit(doc.lattice_basis),
            };
            datum.validate()?;
            return Ok(datum);
        }
        let (body, suffix) = match spec.split_once(':') {
            Some((b, s)) => (b, s),
            None => (spec, "sc"),
        };
        let lattice = match suffix.to_ascii_lowercase().as_str() {
            "sc" => LatticeChoice::SimplyConnected,
            "ad" => LatticeChoice::Adjoint,
            other => return Err(Error::Parse(format!("unknown lattice suffix {other:?}"))),
        };
        let mut components = Vec::new();
        let mut torus_rank = 0;
        for part in body.split(['x', 'X']) {
            let mut chars = part.chars();
            let letter = chars
                .next()
                .ok_or_else(|| Error::Parse(format!("empty component in {spec:?}")))?;
            let rank: usize = chars
                .as_str()
                .parse()
                .map_err(|_| Error::Parse(format!("bad rank in component {part:?}")))?;
            if letter.eq_ignore_ascii_case(&'T') {
                torus_rank += rank;
            } else {
                let ty = DynkinType::from_letter(letter)
                    .ok_or_else(|| Error::Parse(format!("unknown Dynkin letter {letter:?}")))?;
                components.push((ty, rank));
            }
        }
        let datum = CartanDatum {
            components,
            torus_rank,
            lattice,
        };
        datum.validate()?;
        Ok(datum)
    }

    fn validate(&self) -> Result<()> {
        if self.components.is_empty() && self.torus_rank == 0 {
            return Err(Error::InvalidDatum("empty datum".into()));
        }
        for &(ty, rank) in &self.components {
            if !ty.valid_rank(rank) {
                return Err(Error::InvalidDatum(format!(
                    "{}{rank} is not a valid irreducible Dynkin type",
                    ty.letter()
                )));
            }
        }
        if let LatticeChoice::Explicit(_) = self.lattice {
            if self.components.len() != 1 {
                return Err(Error::InvalidDatum(
                    "explicit lattices are supported for a single simple factor".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn semisimple_rank(&self) -> usize {
        self.components.iter().map(|c| c.1).sum()
    }

    /// Canonical string form; `parse(canonical_string())` reproduces `self`.
    pub fn canonical_string(&self) -> String {
        if let LatticeChoice::Explicit(basis) = &self.lattice {
            let (ty, rank) = self.components[0];
            let doc = ExplicitDatumJson {
                letter: ty.letter().to_string(),
                rank,
                lattice_basis: basis.clone(),
                torus_rank: self.torus_rank,
            };
            return serde_json::to_string(&doc).expect("serializable");
        }
        let mut parts: Vec<String> = self
            .components
            .iter()
            .map(|(t, r)| format!("{}{}", t.letter(), r))
            .collect();
        if self.torus_rank > 0 {
            parts.push(format!("T{}", self.torus_rank));
        }
        let suffix = match self.lattice {
            LatticeChoice::SimplyConnected => "sc",
            _ => "ad",
        };
        format!("{}:{}", parts.join("x"), suffix)
    }
}

/// A root, stored as functional on `X`, coroot in `X`, and its expansion in
/// simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Root {
    pub functional: Vec<i64>,
    pub coroot: Vec<i64>,
    pub coefficients: Vec<i64>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coefficients.iter().sum()
    }

    pub fn negated(&self) -> Root {
        Root {
            functional: self.functional.iter().map(|x| -x).collect(),
            coroot: self.coroot.iter().map(|x| -x).collect(),
            coefficients: self.coefficients.iter().map(|x| -x).collect(),
        }
    }
}

/// An irreducible factor of the root system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub ty: DynkinType,
    /// Internal (0-based) indices of the simple roots of this factor.
    pub simple: Vec<usize>,
    /// Index into the positive roots of the highest root.
    pub highest_root: usize,
}

/// Element of the finite Weyl group, stored as its integer matrix on `X`
/// (acting on column coordinate vectors) together with the inverse matrix.
#[derive(Clone)]
pub struct FiniteWeylElement {
    n: usize,
    mat: Vec<i64>,
    inv: Vec<i64>,
}

impl FiniteWeylElement {
    pub fn identity(n: usize) -> Self {
        let mut mat = vec![0; n * n];
        for i in 0..n {
            mat[i * n + i] = 1;
        }
        FiniteWeylElement {
            n,
            inv: mat.clone(),
            mat,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &[i64] {
        &self.mat
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.mat[i * self.n + j] == (i == j) as i64))
    }

    pub fn act(&self, v: &[i64]) -> Vec<i64> {
        mat_vec(&self.mat, self.n, v)
    }

    pub fn act_inverse(&self, v: &[i64]) -> Vec<i64> {
        mat_vec(&self.inv, self.n, v)
    }

    /// The functional `a ∘ u`, i.e. the root `u^{-1} alpha` when `a = alpha`.
    pub fn pull_back(&self, functional: &[i64]) -> Vec<i64> {
        let n = self.n;
        (0..n)
            .map(|j| (0..n).map(|i| functional[i] * self.mat[i * n + j]).sum())
            .collect()
    }

    /// The functional `a ∘ u^{-1}`, i.e. the root `u alpha`.
    pub fn push_forward(&self, functional: &[i64]) -> Vec<i64> {
        let n = self.n;
        (0..n)
            .map(|j| (0..n).map(|i| functional[i] * self.inv[i * n + j]).sum())
            .collect()
    }

    pub fn compose(&self, other: &FiniteWeylElement) -> FiniteWeylElement {
        FiniteWeylElement {
            n: self.n,
            mat: mat_mul(&self.mat, &other.mat, self.n),
            inv: mat_mul(&other.inv, &self.inv, self.n),
        }
    }

    pub fn inverse(&self) -> FiniteWeylElement {
        FiniteWeylElement {
            n: self.n,
            mat: self.inv.clone(),
            inv: self.mat.clone(),
        }
    }

    fn reflection(root: &Root) -> FiniteWeylElement {
        let n = root.functional.len();
        let mut mat = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                mat[i * n + j] = (i == j) as i64 - root.coroot[i] * root.functional[j];
            }
        }
        FiniteWeylElement {
            n,
            inv: mat.clone(),
            mat,
        }
    }
}

fn mat_vec(m: &[i64], n: usize, v: &[i64]) -> Vec<i64> {
    (0..n).map(|i| dot(&m[i * n..(i + 1) * n], v)).collect()
}

fn mat_mul(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += x * b[k * n + j];
            }
        }
    }
    out
}

impl PartialEq for FiniteWeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.mat == other.mat
    }
}
impl Eq for FiniteWeylElement {}
impl Hash for FiniteWeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.mat.hash(state);
    }
}
impl PartialOrd for FiniteWeylElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for FiniteWeylElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.mat.cmp(&other.mat)
    }
}
impl fmt::Debug for FiniteWeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W0{:?}", self.mat)
    }
}

/// A finite root datum: roots, coroots, pairing and coweight lattice.
#[derive(Debug, Clone)]
pub struct RootDatum {
    cartan: CartanDatum,
    rank: usize,
    dim: usize,
    cartan_matrix: Vec<Vec<i64>>,
    positive: Vec<Root>,
    root_lookup: HashMap<Vec<i64>, (usize, bool)>,
    components: Vec<Component>,
    /// Integral coweight `rho_dual` with `<alpha_i, rho_dual> = rho_scale` for simple `alpha_i`.
    rho_dual: Vec<i64>,
    coroot_lattice: Sublattice,
    simple_reflections: Vec<FiniteWeylElement>,
    weyl_order: u64,
}

impl RootDatum {
    pub fn build(cartan: CartanDatum) -> Result<Self> {
        cartan.validate()?;
        let r = cartan.semisimple_rank();
        let t = cartan.torus_rank;
        let n = r + t;

        let mut cartan_matrix = vec![vec![0i64; r]; r];
        let mut offset = 0;
        let mut comp_ranges = Vec::new();
        for &(ty, k) in &cartan.components {
            let a = ty.cartan_matrix(k);
            for i in 0..k {
                for j in 0..k {
                    cartan_matrix[offset + i][offset + j] = a[i][j];
                }
            }
            comp_ranges.push((ty, offset..offset + k));
            offset += k;
        }

        // Basis of X in (fundamental coweight, torus) coordinates.
        let ss_basis: Vec<Vec<i64>> = match &cartan.lattice {
            LatticeChoice::SimplyConnected => cartan_matrix.clone(),
            LatticeChoice::Adjoint => (0..r)
                .map(|i| (0..r).map(|j| (i == j) as i64).collect())
                .collect(),
            LatticeChoice::Explicit(b) => {
                if b.len() != r || b.iter().any(|row| row.len() != r) {
                    return Err(Error::InvalidDatum(format!(
                        "lattice basis must be a {r}x{r} integer matrix"
                    )));
                }
                b.clone()
            }
        };
        let mut basis = vec![vec![0i64; n]; n];
        for i in 0..r {
            basis[i][..r].copy_from_slice(&ss_basis[i]);
        }
        for k in 0..t {
            basis[r + k][r + k] = 1;
        }

        let mut simple = Vec::with_capacity(r);
        for j in 0..r {
            let functional: Vec<i64> = (0..n).map(|k| basis[k][j]).collect();
            let mut target = vec![0i64; n];
            target[..r].copy_from_slice(&cartan_matrix[j]);
            let coroot = solve_left_integral(&basis, &target).ok_or_else(|| {
                Error::InvalidDatum(format!(
                    "lattice does not contain the simple coroot {}",
                    j + 1
                ))
            })?;
            let mut coefficients = vec![0; r];
            coefficients[j] = 1;
            simple.push(Root {
                functional,
                coroot,
                coefficients,
            });
        }
        if singular(&basis) {
            return Err(Error::InvalidDatum("lattice basis is singular".into()));
        }
        for i in 0..r {
            for j in 0..r {
                if dot(&simple[j].functional, &simple[i].coroot) != cartan_matrix[i][j] {
                    return Err(Error::InvalidDatum(
                        "pairing does not reproduce the Cartan matrix".into(),
                    ));
                }
            }
        }

        // Close the simple roots under simple reflections.
        let mut all: Vec<Root> = Vec::new();
        let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
        let mut queue: Vec<Root> = simple.clone();
        while let Some(beta) = queue.pop() {
            if seen.contains_key(&beta.functional) {
                continue;
            }
            seen.insert(beta.functional.clone(), all.len());
            for (i, s) in simple.iter().enumerate() {
                let c = dot(&beta.functional, &s.coroot);
                let d = dot(&s.functional, &beta.coroot);
                let image = Root {
                    functional: sub_scaled(&beta.functional, &s.functional, c),
                    coroot: sub_scaled(&beta.coroot, &s.coroot, d),
                    coefficients: {
                        let mut co = beta.coefficients.clone();
                        co[i] -= c;
                        co
                    },
                };
                if !seen.contains_key(&image.functional) {
                    queue.push(image);
                }
            }
            all.push(beta);
        }
        let mut positive: Vec<Root> = Vec::new();
        for beta in &all {
            let nonneg = beta.coefficients.iter().all(|&c| c >= 0);
            let nonpos = beta.coefficients.iter().all(|&c| c <= 0);
            if !(nonneg || nonpos) {
                return Err(Error::InvalidDatum("root with mixed-sign coefficients".into()));
            }
            if nonneg {
                positive.push(beta.clone());
            }
        }
        if all.len() != 2 * positive.len() {
            return Err(Error::InvalidDatum("root system is not symmetric".into()));
        }
        positive.sort_by(|a, b| {
            a.height()
                .cmp(&b.height())
                .then_with(|| b.coefficients.cmp(&a.coefficients))
        });
        debug_assert!((0..r).all(|i| positive[i].coefficients[i] == 1 && positive[i].height() == 1));
        let mut root_lookup = HashMap::new();
        for (i, beta) in positive.iter().enumerate() {
            root_lookup.insert(beta.functional.clone(), (i, true));
            root_lookup.insert(beta.negated().functional, (i, false));
        }

        let mut components = Vec::new();
        for (ty, range) in comp_ranges {
            let highest_root = positive
                .iter()
                .enumerate()
                .filter(|(_, b)| range.clone().any(|i| b.coefficients[i] != 0))
                .max_by_key(|(_, b)| b.height())
                .map(|(i, _)| i)
                .expect("component without roots");
            components.push(Component {
                ty,
                simple: range.collect(),
                highest_root,
            });
        }

        // rho_dual: <alpha_i, rho_dual> = scale for every simple root.
        let rho_dual = if r == 0 {
            vec![0; n]
        } else {
            let cols: Vec<Vec<i64>> = simple.iter().map(|s| s.functional.clone()).collect();
            // Solve rho . functional_i = 1 as a left system with rows = functionals^T.
            let rows: Vec<Vec<i64>> = (0..n).map(|k| cols.iter().map(|c| c[k]).collect()).collect();
            let x = solve_left(&rows, &vec![1; r])
                .ok_or_else(|| Error::InvalidDatum("simple roots are dependent".into()))?;
            let denom = x.iter().fold(1i64, |acc, q| lcm(acc, *q.denom()));
            x.iter().map(|q| (q * denom).to_integer()).collect()
        };

        let coroot_lattice =
            Sublattice::spanned_by(n, &simple.iter().map(|s| s.coroot.clone()).collect::<Vec<_>>());
        let simple_reflections = simple.iter().map(FiniteWeylElement::reflection).collect();
        let weyl_order = cartan
            .components
            .iter()
            .map(|&(ty, k)| ty.weyl_order(k))
            .product();

        Ok(RootDatum {
            cartan,
            rank: r,
            dim: n,
            cartan_matrix,
            positive,
            root_lookup,
            components,
            rho_dual,
            coroot_lattice,
            simple_reflections,
            weyl_order,
        })
    }

    pub fn preset(spec: &str) -> Result<Self> {
        Self::build(CartanDatum::parse(spec)?)
    }

    pub fn cartan(&self) -> &CartanDatum {
        &self.cartan
    }

    /// Number of simple roots.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Rank of the coweight lattice.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan_matrix
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    /// Simple roots occupy the first `rank` slots of the positive roots.
    pub fn simple_root(&self, i: usize) -> &Root {
        &self.positive[i]
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn weyl_group_order(&self) -> u64 {
        self.weyl_order
    }

    pub fn coroot_lattice(&self) -> &Sublattice {
        &self.coroot_lattice
    }

    pub fn simple_reflection(&self, i: usize) -> &FiniteWeylElement {
        &self.simple_reflections[i]
    }

    pub fn identity(&self) -> FiniteWeylElement {
        FiniteWeylElement::identity(self.dim)
    }

    /// Looks up a root by its functional: `(positive index, is_positive)`.
    pub fn find_root(&self, functional: &[i64]) -> Option<(usize, bool)> {
        self.root_lookup.get(functional).copied()
    }

    pub fn is_root(&self, functional: &[i64]) -> bool {
        self.root_lookup.contains_key(functional)
    }

    /// Sign test for a root functional (positive iff it pairs positively with `rho_dual`).
    pub fn is_positive_functional(&self, functional: &[i64]) -> bool {
        dot(functional, &self.rho_dual) > 0
    }

    pub fn pair(&self, root: &Root, coweight: &[i64]) -> i64 {
        dot(&root.functional, coweight)
    }

    pub fn is_antidominant(&self, coweight: &[i64]) -> bool {
        (0..self.rank).all(|i| dot(&self.simple_root(i).functional, coweight) <= 0)
    }

    /// Anti-dominant point in the `W_0`-orbit and a Weyl element mapping the input to it.
    pub fn antidominant_representative(
        &self,
        coweight: &[i64],
    ) -> (Vec<i64>, FiniteWeylElement) {
        let simple: Vec<&Root> = (0..self.rank).map(|i| self.simple_root(i)).collect();
        let mut v = coweight.to_vec();
        let mut u = self.identity();
        'outer: loop {
            for (i, s) in simple.iter().enumerate() {
                if dot(&s.functional, &v) > 0 {
                    let refl = &self.simple_reflections[i];
                    v = refl.act(&v);
                    u = refl.compose(&u);
                    continue 'outer;
                }
            }
            break;
        }
        (v, u)
    }

    /// Class of a coweight in `X / Q^vee`, as a canonical reduced vector.
    pub fn fundamental_group_class(&self, coweight: &[i64]) -> Vec<i64> {
        self.coroot_lattice.reduce(coweight)
    }

    /// Order of `X / Q^vee`, `None` if there is a central torus.
    pub fn fundamental_group_order(&self) -> Option<u64> {
        self.coroot_lattice.index()
    }

    /// Number of positive roots sent to negative roots by `u^{-1}`.
    pub fn finite_length(&self, u: &FiniteWeylElement) -> usize {
        let image = u.act(&self.rho_dual);
        self.positive
            .iter()
            .filter(|b| dot(&b.functional, &image) < 0)
            .count()
    }

    /// Smallest-index left descent reduced word (internal 0-based indices).
    pub fn finite_reduced_word(&self, u: &FiniteWeylElement) -> Vec<usize> {
        let mut word = Vec::new();
        let mut u = u.clone();
        loop {
            let image = u.act(&self.rho_dual);
            let descent = (0..self.rank)
                .find(|&i| dot(&self.simple_root(i).functional, &image) < 0);
            match descent {
                Some(i) => {
                    word.push(i);
                    u = self.simple_reflections[i].compose(&u);
                }
                None => break,
            }
        }
        word
    }

    pub fn finite_from_word(&self, word: &[usize]) -> FiniteWeylElement {
        word.iter().fold(self.identity(), |acc, &i| {
            acc.compose(&self.simple_reflections[i])
        })
    }

    /// Reflection along an arbitrary root.
    pub fn reflection(&self, root: &Root) -> FiniteWeylElement {
        FiniteWeylElement::reflection(root)
    }

    /// Pairing values of the barycenter-defining data: for each positive root,
    /// `<beta, rho_dual>` (used to order roots by height-like data).
    pub fn rho_dual(&self) -> &[i64] {
        &self.rho_dual
    }
}

fn sub_scaled(a: &[i64], b: &[i64], c: i64) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - c * y).collect()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

fn singular(rows: &[Vec<i64>]) -> bool {
    Sublattice::spanned_by(rows.len(), rows).rank() < rows.len()
}
