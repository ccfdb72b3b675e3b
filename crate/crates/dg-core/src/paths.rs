use std::collections::{BTreeMap, HashMap};

use silting_quiver_dsl::{ArrowSeq, GradedQuiver, Path};

use crate::element::UNTRUNCATED;

/// Every path with degree in `[lo, hi]` and at most `max_len` arrows,
/// grouped by degree and sorted by (length, arrows, source).
///
/// Panics when `max_len` is unbounded and degree-zero arrows form a cycle;
/// callers check [`GradedQuiver::has_degree_zero_cycle`] first.
pub fn paths_in_window(q: &GradedQuiver, lo: i64, hi: i64, max_len: usize) -> BTreeMap<i64, Vec<Path>> {
    assert!(
        max_len != UNTRUNCATED || !q.has_degree_zero_cycle(),
        "unbounded enumeration with a degree-zero cycle"
    );
    assert!(q.arrows.iter().all(|a| a.deg <= 0));
    let mut into: Vec<Vec<usize>> = vec![Vec::new(); q.n_vertices()];
    for (k, a) in q.arrows.iter().enumerate() {
        into[a.src].push(k);
    }
    let mut out: BTreeMap<i64, Vec<Path>> = BTreeMap::new();
    let mut stack: Vec<(Path, i64)> = (0..q.n_vertices()).map(|v| (Path::trivial(v), 0)).collect();
    while let Some((p, d)) = stack.pop() {
        if d <= hi {
            out.entry(d).or_default().push(p.clone());
        }
        if p.len() >= max_len {
            continue;
        }
        for &b in &into[p.tgt()] {
            let nd = d + q.arrows[b].deg;
            if nd < lo {
                continue;
            }
            let mut arrows: ArrowSeq = ArrowSeq::new();
            arrows.push(b as u32);
            arrows.extend_from_slice(&p.arrows);
            stack.push((
                Path {
                    src: p.src,
                    tgt: q.arrows[b].tgt as u32,
                    arrows,
                },
                nd,
            ));
        }
    }
    for v in out.values_mut() {
        v.sort();
    }
    out
}

/// Paths grouped by `(degree, source, target)` for fast lookup of
/// `e_i A^g e_j`.
#[derive(Clone, Debug, Default)]
pub struct PathCatalog {
    lo: i64,
    max_len: usize,
    groups: HashMap<(i64, usize, usize), Vec<Path>>,
}

impl PathCatalog {
    pub fn new(q: &GradedQuiver, lo: i64, max_len: usize) -> Self {
        let mut groups: HashMap<(i64, usize, usize), Vec<Path>> = HashMap::new();
        for (d, ps) in paths_in_window(q, lo, 0, max_len) {
            for p in ps {
                groups.entry((d, p.src(), p.tgt())).or_default().push(p);
            }
        }
        PathCatalog { lo, max_len, groups }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// Paths of degree `g` from `src` to `tgt` (empty slice if none).
    pub fn get(&self, g: i64, src: usize, tgt: usize) -> &[Path] {
        assert!(g >= self.lo || g > 0, "degree {g} below catalog range {}", self.lo);
        self.groups.get(&(g, src, tgt)).map_or(&[], |v| v.as_slice())
    }
}

/// Position of each path in a basis list.
pub fn index_of(basis: &[Path]) -> HashMap<Path, usize> {
    basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_for_two_loops() {
        let mut q = GradedQuiver::numbered(1);
        q.add_arrow("a", 0, 0, -1);
        q.add_arrow("b", 0, 0, -1);
        let w = paths_in_window(&q, -3, 0, UNTRUNCATED);
        let counts: Vec<usize> = w.values().map(|v| v.len()).collect();
        assert_eq!(counts, vec![8, 4, 2, 1]);
        let capped = paths_in_window(&q, -3, 0, 2);
        assert!(!capped.contains_key(&-3));
    }

    #[test]
    fn catalog_respects_endpoints() {
        let mut q = GradedQuiver::numbered(3);
        q.add_arrow("u", 0, 1, 0);
        q.add_arrow("v", 1, 2, 0);
        q.add_arrow("w", 2, 0, -1);
        let c = PathCatalog::new(&q, -1, UNTRUNCATED);
        assert_eq!(c.get(0, 0, 2).len(), 1);
        assert_eq!(c.get(0, 0, 2)[0].display(&q), "v u");
        assert_eq!(c.get(-1, 0, 0).len(), 1);
        assert_eq!(c.get(-1, 1, 1).len(), 1);
        assert!(c.get(0, 2, 0).is_empty());
    }
}
