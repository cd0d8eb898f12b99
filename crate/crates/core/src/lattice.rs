//! Exact integer linear algebra on small matrices: row Hermite normal forms,
//! canonical reduction modulo a sublattice and rational linear solves.

use num_rational::Rational64;

/// A sublattice of `Z^n` stored by a row Hermite normal form basis.
///
/// Reducing a vector modulo the sublattice yields a canonical coset
/// representative: every pivot coordinate lands in `[0, pivot)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sublattice {
    dim: usize,
    rows: Vec<Vec<i64>>,
    pivots: Vec<usize>,
}

impl Sublattice {
    pub fn spanned_by(dim: usize, generators: &[Vec<i64>]) -> Self {
        let rows = hermite_rows(dim, generators);
        let pivots = rows
            .iter()
            .map(|r| r.iter().position(|&x| x != 0).expect("zero row in HNF"))
            .collect();
        Sublattice { dim, rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        let mut v = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let q = v[c].div_euclid(row[c]);
            if q != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= q * r;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Index of the sublattice in `Z^n`, or `None` when it is infinite.
    pub fn index(&self) -> Option<u64> {
        if self.rank() < self.dim {
            return None;
        }
        Some(
            self.rows
                .iter()
                .zip(&self.pivots)
                .map(|(r, &c)| r[c] as u64)
                .product(),
        )
    }

    /// All canonical coset representatives of `Z^n / L` (full rank only).
    pub fn coset_representatives(&self) -> Option<Vec<Vec<i64>>> {
        self.index()?;
        let mut reps = vec![vec![0i64; self.dim]];
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let p = row[c];
            let mut next = Vec::with_capacity(reps.len() * p as usize);
            for r in &reps {
                for k in 0..p {
                    let mut v = r.clone();
                    v[c] = k;
                    next.push(v);
                }
            }
            reps = next;
        }
        let mut reps: Vec<_> = reps.into_iter().map(|v| self.reduce(&v)).collect();
        reps.sort();
        reps.dedup();
        Some(reps)
    }
}

fn hermite_rows(dim: usize, generators: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = generators
        .iter()
        .filter(|g| g.iter().any(|&x| x != 0))
        .cloned()
        .collect();
    let mut out: Vec<Vec<i64>> = Vec::new();
    let mut col = 0;
    while col < dim && !m.is_empty() {
        // Euclid on column `col` until at most one row is nonzero there.
        loop {
            let nonzero: Vec<usize> = (0..m.len()).filter(|&i| m[i][col] != 0).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let pivot = *nonzero.iter().min_by_key(|&&i| m[i][col].abs()).unwrap();
            let prow = m[pivot].clone();
            for &i in &nonzero {
                if i == pivot {
                    continue;
                }
                let q = m[i][col].div_euclid(prow[col]);
                for (x, p) in m[i].iter_mut().zip(&prow) {
                    *x -= q * p;
                }
            }
        }
        if let Some(i) = m.iter().position(|r| r[col] != 0) {
            let mut row = m.remove(i);
            if row[col] < 0 {
                row.iter_mut().for_each(|x| *x = -*x);
            }
            out.push(row);
        }
        m.retain(|r| r.iter().any(|&x| x != 0));
        col += 1;
    }
    // Reduce entries above each pivot.
    for k in 0..out.len() {
        let c = out[k].iter().position(|&x| x != 0).unwrap();
        let p = out[k][c];
        let row = out[k].clone();
        for above in out.iter_mut().take(k) {
            let q = above[c].div_euclid(p);
            if q != 0 {
                for (x, r) in above.iter_mut().zip(&row) {
                    *x -= q * r;
                }
            }
        }
    }
    out
}

/// Solves `x * rows = target` over the rationals (`x` a row vector).
/// Returns `None` if inconsistent; free variables are set to zero.
pub fn solve_left(rows: &[Vec<i64>], target: &[i64]) -> Option<Vec<Rational64>> {
    // Transpose into the column system `rows^T x = target`.
    let m = rows.len();
    let n = target.len();
    let mut aug: Vec<Vec<Rational64>> = (0..n)
        .map(|j| {
            let mut r: Vec<Rational64> = rows.iter().map(|row| Rational64::from(row[j])).collect();
            r.push(Rational64::from(target[j]));
            r
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..m {
        let Some(p) = (r..n).find(|&i| aug[i][c] != Rational64::from(0)) else {
            continue;
        };
        aug.swap(r, p);
        let inv = Rational64::from(1) / aug[r][c];
        for x in aug[r].iter_mut() {
            *x *= inv;
        }
        let prow = aug[r].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i != r && row[c] != Rational64::from(0) {
                let f = row[c];
                for (x, p) in row.iter_mut().zip(&prow) {
                    *x -= f * p;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    if aug[r..].iter().any(|row| row[m] != Rational64::from(0)) {
        return None;
    }
    let mut x = vec![Rational64::from(0); m];
    for (i, &c) in pivot_cols.iter().enumerate() {
        x[c] = aug[i][m];
    }
    Some(x)
}

/// Like [`solve_left`] but insists on an integral solution.
pub fn solve_left_integral(rows: &[Vec<i64>], target: &[i64]) -> Option<Vec<i64>> {
    let x = solve_left(rows, target)?;
    x.iter()
        .map(|q| q.is_integer().then(|| q.to_integer()))
        .collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_reduction_is_canonical() {
        let l = Sublattice::spanned_by(2, &[vec![2, -1], vec![-1, 2]]);
        assert_eq!(l.index(), Some(3));
        let reps = l.coset_representatives().unwrap();
        assert_eq!(reps.len(), 3);
        // v and v + generator reduce identically
        let v = vec![5, 7];
        let w = vec![5 + 2, 7 - 1];
        assert_eq!(l.reduce(&v), l.reduce(&w));
        assert!(l.contains(&[1, 1]));
        assert!(!l.contains(&[1, 0]));
    }

    #[test]
    fn partial_rank_sublattice() {
        let l = Sublattice::spanned_by(3, &[vec![0, 2, 0]]);
        assert_eq!(l.rank(), 1);
        assert_eq!(l.index(), None);
        assert_eq!(l.reduce(&[4, 5, -3]), vec![4, 1, -3]);
        assert_eq!(l.reduce(&[0, -1, 0]), vec![0, 1, 0]);
    }

    #[test]
    fn rational_solve() {
        let rows = vec![vec![2, -1], vec![-1, 2]];
        let x = solve_left(&rows, &[1, 0]).unwrap();
        assert_eq!(x, vec![Rational64::new(2, 3), Rational64::new(1, 3)]);
        assert!(solve_left_integral(&rows, &[1, 0]).is_none());
        assert_eq!(solve_left_integral(&rows, &[2, -1]), Some(vec![1, 0]));
    }
}
