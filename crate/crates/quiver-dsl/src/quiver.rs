use std::cmp::Ordering;
use std::fmt::Write as _;

use serde::Serialize;
use smallvec::SmallVec;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
    pub deg: i64,
}

impl Arrow {
    pub fn is_loop(&self) -> bool {
        self.src == self.tgt
    }
}

/// Finite quiver with integer arrow degrees. Indices follow declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct GradedQuiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl GradedQuiver {
    pub fn new(vertices: Vec<String>) -> Self {
        GradedQuiver {
            vertices,
            arrows: Vec::new(),
        }
    }

    /// Quiver on `n` vertices named `1..=n`.
    pub fn numbered(n: usize) -> Self {
        GradedQuiver::new((1..=n).map(|k| k.to_string()).collect())
    }

    pub fn add_arrow(&mut self, name: impl Into<String>, src: usize, tgt: usize, deg: i64) -> usize {
        assert!(src < self.vertices.len() && tgt < self.vertices.len());
        self.arrows.push(Arrow {
            name: name.into(),
            src,
            tgt,
            deg,
        });
        self.arrows.len() - 1
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn deg(&self, a: usize) -> i64 {
        self.arrows[a].deg
    }

    /// True when the arrows of degree zero contain an oriented cycle.
    pub fn has_degree_zero_cycle(&self) -> bool {
        self.longest_degree_zero_path().is_none()
    }

    /// Length of the longest path made of degree-zero arrows, or `None`
    /// when such paths are unbounded.
    pub fn longest_degree_zero_path(&self) -> Option<usize> {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in self.arrows.iter().filter(|a| a.deg == 0) {
            indeg[a.tgt] += 1;
        }
        let mut order = Vec::with_capacity(n);
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        while let Some(v) = stack.pop() {
            order.push(v);
            for a in self.arrows.iter().filter(|a| a.deg == 0 && a.src == v) {
                indeg[a.tgt] -= 1;
                if indeg[a.tgt] == 0 {
                    stack.push(a.tgt);
                }
            }
        }
        if order.len() < n {
            return None;
        }
        let mut best = vec![0usize; n];
        for &v in &order {
            for a in self.arrows.iter().filter(|a| a.deg == 0 && a.src == v) {
                best[a.tgt] = best[a.tgt].max(best[v] + 1);
            }
        }
        Some(best.into_iter().max().unwrap_or(0))
    }
}

pub type ArrowSeq = SmallVec<[u32; 8]>;

/// A path `a_1 a_2 ... a_k` written left to right; `a_k` is applied first.
///
/// Trivial paths carry only their vertex.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Path {
    pub src: u32,
    pub tgt: u32,
    pub arrows: ArrowSeq,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            src: v as u32,
            tgt: v as u32,
            arrows: SmallVec::new(),
        }
    }

    pub fn arrow(q: &GradedQuiver, a: usize) -> Self {
        let ar = &q.arrows[a];
        let mut arrows = SmallVec::new();
        arrows.push(a as u32);
        Path {
            src: ar.src as u32,
            tgt: ar.tgt as u32,
            arrows,
        }
    }

    /// Builds a path from arrows listed left to right. `None` if not composable.
    pub fn from_arrows(q: &GradedQuiver, arrows: &[usize]) -> Option<Self> {
        let (&first, &last) = (arrows.first()?, arrows.last()?);
        for w in arrows.windows(2) {
            if q.arrows[w[0]].src != q.arrows[w[1]].tgt {
                return None;
            }
        }
        Some(Path {
            src: q.arrows[last].src as u32,
            tgt: q.arrows[first].tgt as u32,
            arrows: arrows.iter().map(|&a| a as u32).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn src(&self) -> usize {
        self.src as usize
    }

    pub fn tgt(&self) -> usize {
        self.tgt as usize
    }

    pub fn is_cycle(&self) -> bool {
        self.src == self.tgt
    }

    pub fn degree(&self, q: &GradedQuiver) -> i64 {
        self.arrows.iter().map(|&a| q.arrows[a as usize].deg).sum()
    }

    /// `self · rhs`, i.e. `rhs` first. `None` if the endpoints do not match.
    pub fn compose(&self, rhs: &Path) -> Option<Path> {
        if self.src != rhs.tgt {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&rhs.arrows);
        Some(Path {
            src: rhs.src,
            tgt: self.tgt,
            arrows,
        })
    }

    pub fn first_arrow(&self) -> Option<usize> {
        self.arrows.first().map(|&a| a as usize)
    }

    /// Drops the leftmost arrow.
    pub fn tail(&self, q: &GradedQuiver) -> Path {
        assert!(!self.arrows.is_empty());
        let rest: ArrowSeq = self.arrows[1..].iter().copied().collect();
        if rest.is_empty() {
            let v = q.arrows[self.arrows[0] as usize].src;
            Path::trivial(v)
        } else {
            Path {
                src: self.src,
                tgt: q.arrows[rest[0] as usize].tgt as u32,
                arrows: rest,
            }
        }
    }

    pub fn display(&self, q: &GradedQuiver) -> String {
        if self.arrows.is_empty() {
            return format!("@{}", q.vertices[self.src as usize]);
        }
        let mut s = String::new();
        for (k, &a) in self.arrows.iter().enumerate() {
            if k > 0 {
                s.push(' ');
            }
            let _ = write!(s, "{}", q.arrows[a as usize].name);
        }
        s
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.src.cmp(&other.src))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> GradedQuiver {
        let mut q = GradedQuiver::numbered(2);
        q.add_arrow("a", 0, 1, 0);
        q
    }

    #[test]
    fn composition_is_right_to_left() {
        let mut q = GradedQuiver::numbered(3);
        let u = q.add_arrow("u", 0, 1, 0);
        let v = q.add_arrow("v", 1, 2, 0);
        let pu = Path::arrow(&q, u);
        let pv = Path::arrow(&q, v);
        let vu = pv.compose(&pu).unwrap();
        assert_eq!(vu.src(), 0);
        assert_eq!(vu.tgt(), 2);
        assert_eq!(vu.display(&q), "v u");
        assert!(pu.compose(&pv).is_none());
        assert_eq!(Path::from_arrows(&q, &[v, u]), Some(vu));
    }

    #[test]
    fn trivial_paths_are_units() {
        let q = a2();
        let a = Path::arrow(&q, 0);
        assert_eq!(Path::trivial(1).compose(&a).unwrap(), a);
        assert_eq!(a.compose(&Path::trivial(0)).unwrap(), a);
        assert!(Path::trivial(0).compose(&a).is_none());
    }

    #[test]
    fn degree_zero_subquiver() {
        let q = a2();
        assert_eq!(q.longest_degree_zero_path(), Some(1));
        let mut c = GradedQuiver::numbered(2);
        c.add_arrow("x", 0, 1, 0);
        c.add_arrow("y", 1, 0, 0);
        assert!(c.has_degree_zero_cycle());
        let mut l = GradedQuiver::numbered(1);
        l.add_arrow("a", 0, 0, -1);
        assert_eq!(l.longest_degree_zero_path(), Some(0));
    }

    #[test]
    fn tail_drops_leftmost() {
        let mut q = GradedQuiver::numbered(3);
        let u = q.add_arrow("u", 0, 1, 0);
        let v = q.add_arrow("v", 1, 2, 0);
        let p = Path::from_arrows(&q, &[v, u]).unwrap();
        assert_eq!(p.tail(&q), Path::arrow(&q, u));
        assert_eq!(Path::arrow(&q, u).tail(&q), Path::trivial(0));
    }
}
