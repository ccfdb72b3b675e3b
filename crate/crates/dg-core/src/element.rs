use std::collections::BTreeMap;

use num_traits::{One, Zero};
use silting_quiver_dsl::{GradedQuiver, Path};
use silting_scalars::Scalar;

/// Truncation order meaning "keep every path".
pub const UNTRUNCATED: usize = usize::MAX;

/// Finite combination of paths in `A / m^{L+1}`.
///
/// Paths longer than `trunc` are dropped on insertion; zero coefficients
/// are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraElement {
    terms: BTreeMap<Path, Scalar>,
    trunc: usize,
}

impl AlgebraElement {
    pub fn zero(trunc: usize) -> Self {
        AlgebraElement {
            terms: BTreeMap::new(),
            trunc,
        }
    }

    pub fn from_path(p: Path, trunc: usize) -> Self {
        Self::term(p, Scalar::one(), trunc)
    }

    pub fn term(p: Path, c: Scalar, trunc: usize) -> Self {
        let mut x = Self::zero(trunc);
        x.add_term(p, c);
        x
    }

    pub fn arrow(q: &GradedQuiver, a: usize, trunc: usize) -> Self {
        Self::from_path(Path::arrow(q, a), trunc)
    }

    pub fn idempotent(v: usize, trunc: usize) -> Self {
        Self::from_path(Path::trivial(v), trunc)
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    /// Re-truncates (only ever drops terms).
    pub fn with_trunc(mut self, trunc: usize) -> Self {
        self.trunc = trunc;
        self.terms.retain(|p, _| p.len() <= trunc);
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, p: &Path) -> Scalar {
        self.terms.get(p).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, p: Path, c: Scalar) {
        if p.len() > self.trunc || c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(p) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &AlgebraElement, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (p, x) in &other.terms {
            self.add_term(p.clone(), x * c);
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut r = self.clone();
        r.trunc = r.trunc.min(other.trunc);
        r.terms.retain(|p, _| p.len() <= r.trunc);
        r.add_scaled(other, &Scalar::one());
        r
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut r = self.clone();
        r.trunc = r.trunc.min(other.trunc);
        r.terms.retain(|p, _| p.len() <= r.trunc);
        r.add_scaled(other, &-Scalar::one());
        r
    }

    pub fn scale(&self, c: &Scalar) -> AlgebraElement {
        let mut r = AlgebraElement::zero(self.trunc);
        r.add_scaled(self, c);
        r
    }

    pub fn neg(&self) -> AlgebraElement {
        self.scale(&-Scalar::one())
    }

    /// `self · rhs` (rhs applied first).
    pub fn mul(&self, rhs: &AlgebraElement) -> AlgebraElement {
        let trunc = self.trunc.min(rhs.trunc);
        let mut r = AlgebraElement::zero(trunc);
        for (p, x) in &self.terms {
            for (q, y) in &rhs.terms {
                if p.len() + q.len() > trunc {
                    continue;
                }
                if let Some(pq) = p.compose(q) {
                    r.add_term(pq, x * y);
                }
            }
        }
        r
    }

    /// Left multiplication by a single path.
    pub fn lmul_path(&self, p: &Path) -> AlgebraElement {
        let mut r = AlgebraElement::zero(self.trunc);
        for (q, y) in &self.terms {
            if let Some(pq) = p.compose(q) {
                r.add_term(pq, y.clone());
            }
        }
        r
    }

    /// Right multiplication by a single path.
    pub fn rmul_path(&self, q: &Path) -> AlgebraElement {
        let mut r = AlgebraElement::zero(self.trunc);
        for (p, x) in &self.terms {
            if let Some(pq) = p.compose(q) {
                r.add_term(pq, x.clone());
            }
        }
        r
    }

    /// `Ok(Some(d))` if homogeneous of degree d, `Ok(None)` for zero,
    /// `Err(e)` with a second degree found otherwise.
    pub fn degree(&self, q: &GradedQuiver) -> Result<Option<i64>, i64> {
        let mut it = self.terms.keys().map(|p| p.degree(q));
        let Some(d) = it.next() else {
            return Ok(None);
        };
        for e in it {
            if e != d {
                return Err(e);
            }
        }
        Ok(Some(d))
    }

    pub fn is_homogeneous(&self, q: &GradedQuiver) -> bool {
        self.degree(q).is_ok()
    }

    /// Coefficient sum of trivial paths (the image under augmentation).
    pub fn constant_terms(&self) -> Vec<(usize, Scalar)> {
        self.terms
            .iter()
            .filter(|(p, _)| p.is_trivial())
            .map(|(p, c)| (p.src(), c.clone()))
            .collect()
    }

    /// The part of length at least `k`.
    pub fn from_length(&self, k: usize) -> AlgebraElement {
        AlgebraElement {
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| p.len() >= k)
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
            trunc: self.trunc,
        }
    }

    pub fn min_length(&self) -> Option<usize> {
        self.terms.keys().map(|p| p.len()).min()
    }

    /// `2*(a b) + -1*(c)`; trivial paths print as `@v`.
    pub fn display(&self, q: &GradedQuiver) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(p, c)| format!("{}*({})", c, p.display(q)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loops() -> GradedQuiver {
        let mut q = GradedQuiver::numbered(1);
        q.add_arrow("a", 0, 0, -1);
        q.add_arrow("b", 0, 0, -1);
        q
    }

    #[test]
    fn truncation_drops_long_terms() {
        let q = loops();
        let a = AlgebraElement::arrow(&q, 0, 2);
        let a2 = a.mul(&a);
        assert_eq!(a2.len(), 1);
        assert!(a2.mul(&a).is_zero());
        assert_eq!(a2.degree(&q), Ok(Some(-2)));
    }

    #[test]
    fn cancellation_removes_terms() {
        let q = loops();
        let a = AlgebraElement::arrow(&q, 0, UNTRUNCATED);
        let b = AlgebraElement::arrow(&q, 1, UNTRUNCATED);
        let comm = a.mul(&b).sub(&b.mul(&a));
        assert_eq!(comm.len(), 2);
        assert!(comm.add(&b.mul(&a)).sub(&a.mul(&b)).is_zero());
        assert_eq!(comm.display(&q), "1*(a b) + -1*(b a)");
    }

    #[test]
    fn mixed_degrees_are_reported() {
        let q = loops();
        let x = AlgebraElement::arrow(&q, 0, 4).add(&AlgebraElement::idempotent(0, 4));
        assert!(!x.is_homogeneous(&q));
    }
}
