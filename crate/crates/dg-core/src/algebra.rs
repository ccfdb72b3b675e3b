use num_traits::One;
use silting_quiver_dsl::{ArrowSeq, GradedQuiver, Path};
use silting_scalars::Scalar;
use thiserror::Error;

use crate::element::{AlgebraElement, UNTRUNCATED};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DgError {
    #[error("element is not homogeneous (degrees {0} and {1})")]
    MixedDegree(i64, i64),
    #[error("arrow `{0}` has positive degree")]
    PositiveDegree(String),
    #[error("d({0}) has the wrong degree or endpoints")]
    BadDifferential(String),
    #[error("d({0}) has a constant term")]
    ConstantTerm(String),
}

/// Graded path algebra of a quiver with arrows in degrees `<= 0`, together
/// with the differential on arrows. Elements live in `A / m^{trunc+1}`.
#[derive(Clone, Debug)]
pub struct DgPathAlgebra {
    pub quiver: GradedQuiver,
    darr: Vec<AlgebraElement>,
    trunc: usize,
}

impl DgPathAlgebra {
    /// `darr[a]` is `d(a)`; the differential must have degree `|a|+1`, the
    /// endpoints of `a` and no trivial-path terms.
    pub fn new(quiver: GradedQuiver, darr: Vec<AlgebraElement>, trunc: usize) -> Result<Self, DgError> {
        assert_eq!(darr.len(), quiver.n_arrows());
        for (a, da) in quiver.arrows.iter().zip(&darr) {
            if a.deg > 0 {
                return Err(DgError::PositiveDegree(a.name.clone()));
            }
            for (p, _) in da.terms() {
                if p.is_trivial() {
                    return Err(DgError::ConstantTerm(a.name.clone()));
                }
                if p.degree(&quiver) != a.deg + 1 || p.src() != a.src || p.tgt() != a.tgt {
                    return Err(DgError::BadDifferential(a.name.clone()));
                }
            }
        }
        let darr = darr.into_iter().map(|x| x.with_trunc(trunc)).collect();
        Ok(DgPathAlgebra { quiver, darr, trunc })
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    /// Same algebra at another truncation order. Raising the order is only
    /// meaningful when the arrow differentials were given in full.
    pub fn with_trunc(&self, trunc: usize) -> Self {
        DgPathAlgebra {
            quiver: self.quiver.clone(),
            darr: self.darr.iter().map(|x| x.clone().with_trunc(trunc)).collect(),
            trunc,
        }
    }

    pub fn d_arrow(&self, a: usize) -> &AlgebraElement {
        &self.darr[a]
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement::zero(self.trunc)
    }

    pub fn path(&self, p: Path) -> AlgebraElement {
        AlgebraElement::from_path(p, self.trunc)
    }

    pub fn arrow(&self, a: usize) -> AlgebraElement {
        AlgebraElement::arrow(&self.quiver, a, self.trunc)
    }

    /// `d(a_1 ... a_k) = sum_j (-1)^{|a_1|+...+|a_{j-1}|} a_1..a_{j-1} d(a_j) a_{j+1}..a_k`.
    pub fn d_path(&self, p: &Path) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.trunc);
        self.d_path_into(p, &Scalar::one(), &mut out);
        out
    }

    /// Adds `c * d(p)` to `out`.
    pub fn d_path_into(&self, p: &Path, c: &Scalar, out: &mut AlgebraElement) {
        let trunc = out.trunc().min(self.trunc);
        let n = p.len();
        let mut left_deg = 0i64;
        for j in 0..n {
            let a = p.arrows[j] as usize;
            let sign = if left_deg % 2 == 0 { c.clone() } else { -c.clone() };
            for (t, x) in self.darr[a].terms() {
                if n - 1 + t.len() > trunc {
                    continue;
                }
                let mut arrows: ArrowSeq = p.arrows[..j].iter().copied().collect();
                arrows.extend_from_slice(&t.arrows);
                arrows.extend_from_slice(&p.arrows[j + 1..]);
                out.add_term(
                    Path {
                        src: p.src,
                        tgt: p.tgt,
                        arrows,
                    },
                    x * &sign,
                );
            }
            left_deg += self.quiver.arrows[a].deg;
        }
    }

    /// Extends the arrow table by the graded Leibniz rule. Errors on mixed
    /// degree input.
    pub fn leibniz_d(&self, x: &AlgebraElement) -> Result<AlgebraElement, DgError> {
        self.check_homogeneous(x)?;
        Ok(self.d_unchecked(x))
    }

    /// Linear extension of [`d_path`](Self::d_path) with no homogeneity check.
    pub fn d_unchecked(&self, x: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero(x.trunc().min(self.trunc));
        for (p, c) in x.terms() {
            self.d_path_into(p, c, &mut out);
        }
        out
    }

    pub fn check_homogeneous(&self, x: &AlgebraElement) -> Result<Option<i64>, DgError> {
        match x.degree(&self.quiver) {
            Ok(d) => Ok(d),
            Err(e) => {
                let first = x.terms().next().unwrap().0.degree(&self.quiver);
                Err(DgError::MixedDegree(first, e))
            }
        }
    }

    /// First arrow `a` with `d(d(a)) != 0` at this truncation order.
    pub fn check_d_squared(&self) -> Result<(), (usize, AlgebraElement)> {
        for a in 0..self.quiver.n_arrows() {
            let dd = self.d_unchecked(&self.darr[a]);
            if !dd.is_zero() {
                return Err((a, dd));
            }
        }
        Ok(())
    }

    pub fn is_truncated(&self) -> bool {
        self.trunc != UNTRUNCATED
    }
}
