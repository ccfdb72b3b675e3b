//! Exact sparse elimination over [`Scalar`].
//!
//! Vectors are sorted `(index, coeff)` lists with no zero entries. An
//! [`Echelon`] keeps one stored vector per pivot, the pivot being the
//! vector's last nonzero index, normalised to 1.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use silting_scalars::Scalar;

pub type SparseVec = Vec<(usize, Scalar)>;

type Work = BTreeMap<usize, Scalar>;

fn to_work(v: &SparseVec) -> Work {
    v.iter().filter(|(_, c)| !c.is_zero()).cloned().collect()
}

fn from_work(w: Work) -> SparseVec {
    w.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// `w += c * v`
fn axpy(w: &mut Work, c: &Scalar, v: &SparseVec) {
    for (i, x) in v {
        let y = x * c;
        match w.entry(*i) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(y);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &y;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

pub fn sv_scale(v: &SparseVec, c: &Scalar) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x * c)).collect()
}

/// `a + c * b`
pub fn sv_axpy(a: &SparseVec, c: &Scalar, b: &SparseVec) -> SparseVec {
    let mut w = to_work(a);
    axpy(&mut w, c, b);
    from_work(w)
}

pub fn sv_unit(i: usize) -> SparseVec {
    vec![(i, Scalar::one())]
}

#[derive(Clone, Debug)]
struct Pivot {
    vec: SparseVec,
    combo: SparseVec,
}

/// Row echelon form built incrementally. With tracking enabled every stored
/// vector remembers how it was formed from the inserted vectors.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, Pivot>,
    track: bool,
    inserted: usize,
}

/// Result of reducing a vector against an [`Echelon`]: `v = rem + sum combo_k * v_k`
/// over the previously inserted vectors `v_k`.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub rem: SparseVec,
    pub combo: SparseVec,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn tracked() -> Self {
        Echelon {
            track: true,
            ..Self::default()
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    pub fn reduce(&self, v: &SparseVec) -> Reduction {
        let mut w = to_work(v);
        let mut combo = Work::new();
        let mut cursor = usize::MAX;
        loop {
            let next = if cursor == usize::MAX {
                w.iter().next_back()
            } else {
                w.range(..cursor).next_back()
            };
            let Some((&k, c)) = next else { break };
            if let Some(p) = self.pivots.get(&k) {
                let c = c.clone();
                axpy(&mut w, &-c.clone(), &p.vec);
                if self.track {
                    axpy(&mut combo, &c, &p.combo);
                }
            }
            cursor = k;
        }
        Reduction {
            rem: from_work(w),
            combo: from_work(combo),
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).rem.is_empty()
    }

    /// Inserts the next vector. `Ok(pivot)` when it was independent, else
    /// `Err(relation)` with `sum relation_k * v_k = 0` over inserted vectors
    /// (including the new one, coefficient 1).
    pub fn insert(&mut self, v: &SparseVec) -> Result<usize, SparseVec> {
        let id = self.inserted;
        self.inserted += 1;
        let Reduction { rem, combo } = self.reduce(v);
        // v - sum combo v_k = rem
        let mut rel = Work::new();
        if self.track {
            rel.insert(id, Scalar::one());
            axpy(&mut rel, &-Scalar::one(), &combo);
        }
        let Some((k, lead)) = rem.last().cloned() else {
            return Err(from_work(rel));
        };
        let inv = lead.inv().expect("nonzero lead");
        self.pivots.insert(
            k,
            Pivot {
                vec: sv_scale(&rem, &inv),
                combo: sv_scale(&from_work(rel), &inv),
            },
        );
        Ok(k)
    }
}

/// Rank, processing vectors with fewest nonzeros first.
pub fn rank(vectors: &[SparseVec]) -> usize {
    let mut order: Vec<usize> = (0..vectors.len()).collect();
    order.sort_by_key(|&i| vectors[i].len());
    let mut e = Echelon::new();
    for i in order {
        let _ = e.insert(&vectors[i]);
    }
    e.rank()
}

/// Basis of `{x : sum_j x_j cols_j = 0}`.
pub fn kernel(cols: &[SparseVec]) -> Vec<SparseVec> {
    let mut e = Echelon::tracked();
    cols.iter().filter_map(|c| e.insert(c).err()).collect()
}

/// Some `x` with `sum_j x_j cols_j = target`.
pub fn solve(cols: &[SparseVec], target: &SparseVec) -> Option<SparseVec> {
    let mut e = Echelon::tracked();
    for c in cols {
        let _ = e.insert(c);
    }
    let r = e.reduce(target);
    r.rem.is_empty().then_some(r.combo)
}

/// Reference dense elimination, used to cross-check the sparse kernels.
pub mod dense {
    use super::*;

    pub fn from_sparse(vectors: &[SparseVec], dim: usize) -> Vec<Vec<Scalar>> {
        vectors
            .iter()
            .map(|v| {
                let mut row = vec![Scalar::zero(); dim];
                for (i, c) in v {
                    row[*i] = c.clone();
                }
                row
            })
            .collect()
    }

    /// Rank of a list of rows, textbook Gauss-Jordan.
    pub fn rank(mut rows: Vec<Vec<Scalar>>) -> usize {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut r = 0;
        for c in 0..ncols {
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][c].inv().unwrap();
            let pivot: Vec<Scalar> = rows[r].iter().map(|x| x * &inv).collect();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && !row[c].is_zero() {
                    let f = row[c].clone();
                    for (x, y) in row.iter_mut().zip(&pivot) {
                        *x -= &(y * &f);
                    }
                }
            }
            rows[r] = pivot;
            r += 1;
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: i64) -> Scalar {
        Scalar::from_int(x)
    }

    #[test]
    fn kernel_and_solve() {
        // columns e0 + e1, e1, e0
        let cols = vec![vec![(0, s(1)), (1, s(1))], vec![(1, s(1))], vec![(0, s(1))]];
        assert_eq!(rank(&cols), 2);
        let k = kernel(&cols);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![(0, s(-1)), (1, s(1)), (2, s(1))]);
        let x = solve(&cols, &vec![(0, s(2)), (1, s(5))]).unwrap();
        let mut back = Vec::new();
        for (j, c) in &x {
            back = sv_axpy(&back, c, &cols[*j]);
        }
        assert_eq!(back, vec![(0, s(2)), (1, s(5))]);
        assert!(solve(&cols[1..2], &vec![(0, s(1))]).is_none());
    }

    #[test]
    fn reduce_against_pivots() {
        let mut e = Echelon::new();
        e.insert(&vec![(0, s(1)), (2, s(2))]).unwrap();
        assert!(e.contains(&vec![(0, s(3)), (2, s(6))]));
        assert!(!e.contains(&vec![(0, s(1))]));
    }
}
