use serde::Serialize;
use silting_scalars::Scalar;

use crate::quiver::GradedQuiver;

/// An arrow of the double quiver: `a` itself or its dual `a*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Letter {
    pub arrow: usize,
    pub star: bool,
}

impl Letter {
    pub fn plain(arrow: usize) -> Self {
        Letter { arrow, star: false }
    }

    pub fn dual(arrow: usize) -> Self {
        Letter { arrow, star: true }
    }

    pub fn src(&self, q: &GradedQuiver) -> usize {
        let a = &q.arrows[self.arrow];
        if self.star {
            a.tgt
        } else {
            a.src
        }
    }

    pub fn tgt(&self, q: &GradedQuiver) -> usize {
        let a = &q.arrows[self.arrow];
        if self.star {
            a.src
        } else {
            a.tgt
        }
    }

    /// Degree, with `|a*| = -m - |a|`.
    pub fn deg(&self, q: &GradedQuiver, m: i64) -> i64 {
        let d = q.arrows[self.arrow].deg;
        if self.star {
            -m - d
        } else {
            d
        }
    }

    pub fn name(&self, q: &GradedQuiver) -> String {
        let n = &q.arrows[self.arrow].name;
        if self.star {
            format!("{n}*")
        } else {
            n.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Term {
    pub coeff: Scalar,
    /// Left to right; the last letter is applied first.
    pub word: Vec<Letter>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Ambient {
    GinzburgDouble,
    PreprojectiveDouble,
}

/// Linear combination of words, stored exactly as entered.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Superpotential {
    pub terms: Vec<Term>,
}

impl Superpotential {
    pub fn zero() -> Self {
        Superpotential { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        use num_traits::Zero;
        self.terms.iter().all(|t| t.coeff.is_zero())
    }

    /// Terms mentioning a dual letter live in the preprojective double.
    pub fn ambient(&self) -> Ambient {
        if self.terms.iter().any(|t| t.word.iter().any(|l| l.star)) {
            Ambient::PreprojectiveDouble
        } else {
            Ambient::GinzburgDouble
        }
    }

    /// Sums coefficients of words that agree up to rotation. Keys are
    /// canonical rotations.
    pub fn cyclic_classes(&self) -> Vec<(Vec<Letter>, Scalar)> {
        let mut out: std::collections::BTreeMap<Vec<Letter>, Scalar> = Default::default();
        for t in &self.terms {
            *out.entry(canonical_rotation(&t.word)).or_default() += &t.coeff;
        }
        out.into_iter().collect()
    }

    pub fn display(&self, q: &GradedQuiver) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|t| {
                let w: Vec<String> = t.word.iter().map(|l| l.name(q)).collect();
                format!("{}*({})", t.coeff, w.join(" "))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Lexicographically least rotation (letters ordered by arrow index, then
/// plain before dual).
pub fn canonical_rotation(word: &[Letter]) -> Vec<Letter> {
    let n = word.len();
    if n == 0 {
        return Vec::new();
    }
    (0..n)
        .map(|k| {
            let mut r = word[k..].to_vec();
            r.extend_from_slice(&word[..k]);
            r
        })
        .min()
        .unwrap()
}

/// Endpoints of a composable word, `None` if some junction fails.
pub fn word_endpoints(q: &GradedQuiver, word: &[Letter]) -> Option<(usize, usize)> {
    let first = word.first()?;
    let last = word.last()?;
    for w in word.windows(2) {
        if w[0].src(q) != w[1].tgt(q) {
            return None;
        }
    }
    Some((last.src(q), first.tgt(q)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_key_is_rotation_invariant() {
        let w: Vec<Letter> = [2, 0, 1, 0].iter().map(|&a| Letter::plain(a)).collect();
        let key = canonical_rotation(&w);
        for k in 0..w.len() {
            let mut r = w[k..].to_vec();
            r.extend_from_slice(&w[..k]);
            assert_eq!(canonical_rotation(&r), key);
        }
        assert_eq!(key[0], Letter::plain(0));
    }

    #[test]
    fn dual_letter_reverses_and_regrades() {
        let mut q = GradedQuiver::numbered(2);
        q.add_arrow("a", 0, 1, 0);
        let s = Letter::dual(0);
        assert_eq!((s.src(&q), s.tgt(&q)), (1, 0));
        assert_eq!(s.deg(&q, 1), -1);
        assert_eq!(s.name(&q), "a*");
    }
}
