use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use silting_dg_core::linalg::{kernel, rank, Echelon, SparseVec};
use silting_dg_core::{paths_in_window, DgPathAlgebra, Exec};
use silting_quiver_dsl::{GradedQuiver, Path};
use silting_scalars::Scalar;

/// `w_0 [w_1 | ... | w_p]` with `w_i` nontrivial for `i >= 1` and the
/// pieces composable around the circle.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Chain(pub Vec<Path>);

impl Chain {
    pub fn bars(&self) -> usize {
        self.0.len() - 1
    }

    pub fn length(&self) -> usize {
        self.0.iter().map(Path::len).sum()
    }

    /// `sum |w_i| - p`.
    pub fn degree(&self, q: &GradedQuiver) -> i64 {
        self.0.iter().map(|w| w.degree(q)).sum::<i64>() - self.bars() as i64
    }

    pub fn display(&self, q: &GradedQuiver) -> String {
        let head = self.0[0].display(q);
        if self.0.len() == 1 {
            return head;
        }
        let rest: Vec<String> = self.0[1..].iter().map(|w| w.display(q)).collect();
        format!("{head}[{}]", rest.join("|"))
    }
}

/// Reduced `l`-relative Hochschild complex of `A / m^{L+1}`, in total
/// degrees `lo..=hi`; chains longer than `L` are dropped, which is a
/// quotient since nothing in the differential shortens a chain.
pub struct HochschildComplex {
    pub alg: DgPathAlgebra,
    pub lo: i64,
    pub hi: i64,
    pub chains: BTreeMap<i64, Vec<Chain>>,
    index: BTreeMap<i64, HashMap<Chain, usize>>,
}

fn add(out: &mut HashMap<Chain, Scalar>, c: Chain, x: Scalar) {
    let e = out.entry(c).or_insert_with(Scalar::zero);
    *e += &x;
}

fn sign(e: i64) -> Scalar {
    if e.rem_euclid(2) == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

impl HochschildComplex {
    pub fn new(alg: &DgPathAlgebra, lo: i64, hi: i64) -> Self {
        let q = &alg.quiver;
        let l = alg.trunc();
        let pieces: Vec<Path> = paths_in_window(q, lo, 0, l).into_values().flatten().collect();
        let mut by_tgt: Vec<Vec<&Path>> = vec![Vec::new(); q.n_vertices()];
        for w in pieces.iter().filter(|w| !w.is_trivial()) {
            by_tgt[w.tgt()].push(w);
        }
        let mut chains: BTreeMap<i64, Vec<Chain>> = (lo..=hi).map(|n| (n, Vec::new())).collect();
        let mut stack: Vec<(Vec<Path>, usize, i64)> = pieces.iter().map(|w| (vec![w.clone()], w.len(), w.degree(q))).collect();
        stack.reverse();
        while let Some((ws, len, deg)) = stack.pop() {
            let last = ws.last().unwrap().src();
            if last == ws[0].tgt() && deg <= hi {
                chains.get_mut(&deg).unwrap().push(Chain(ws.clone()));
            }
            for w in by_tgt[last].iter().rev() {
                let (nl, nd) = (len + w.len(), deg + w.degree(q) - 1);
                if nl <= l && nd >= lo {
                    let mut next = ws.clone();
                    next.push((*w).clone());
                    stack.push((next, nl, nd));
                }
            }
        }
        let index = chains
            .iter()
            .map(|(&n, cs)| (n, cs.iter().cloned().enumerate().map(|(k, c)| (c, k)).collect()))
            .collect();
        HochschildComplex { alg: alg.clone(), lo, hi, chains, index }
    }

    pub fn dim(&self, n: i64) -> usize {
        self.chains.get(&n).map_or(0, Vec::len)
    }

    pub fn coords(&self, n: i64, terms: &HashMap<Chain, Scalar>) -> SparseVec {
        let idx = &self.index[&n];
        let mut v: SparseVec = terms
            .iter()
            .filter(|(_, x)| !x.is_zero())
            .map(|(c, x)| (*idx.get(c).expect("chain in the target degree"), x.clone()))
            .collect();
        v.sort_by_key(|e| e.0);
        v
    }

    /// `D = d + b` on one chain, with `eps_i = |w_0| + sum_{k<=i} (|w_k| - 1)`:
    /// `d` acts on `w_i` with sign `-(-1)^{eps_{i-1}}` (`i >= 1`), `b` merges
    /// `w_i w_{i+1}` with sign `(-1)^{eps_i}` and rotates `w_p w_0` with
    /// sign `-(-1)^{(|w_p| - 1) eps_{p-1}}`.
    pub fn apply(&self, c: &Chain) -> HashMap<Chain, Scalar> {
        let q = &self.alg.quiver;
        let l = self.alg.trunc();
        let ws = &c.0;
        let p = ws.len() - 1;
        let g: Vec<i64> = ws.iter().map(|w| w.degree(q)).collect();
        let mut eps = vec![g[0]];
        for k in 1..=p {
            eps.push(eps[k - 1] + g[k] - 1);
        }
        let rest = c.length();
        let mut out = HashMap::new();
        for i in 0..=p {
            let s = if i == 0 { Scalar::one() } else { -sign(eps[i - 1]) };
            for (path, x) in self.alg.d_path(&ws[i]).terms() {
                if rest - ws[i].len() + path.len() > l {
                    continue;
                }
                let mut next = ws.clone();
                next[i] = path.clone();
                add(&mut out, Chain(next), x * &s);
            }
        }
        for i in 0..p {
            let merged = ws[i].compose(&ws[i + 1]).expect("composable chain");
            let mut next = ws[..i].to_vec();
            next.push(merged);
            next.extend_from_slice(&ws[i + 2..]);
            add(&mut out, Chain(next), sign(eps[i]));
        }
        if p >= 1 {
            let merged = ws[p].compose(&ws[0]).expect("closed chain");
            let mut next = vec![merged];
            next.extend_from_slice(&ws[1..p]);
            add(&mut out, Chain(next), -sign((g[p] - 1) * eps[p - 1]));
        }
        out.retain(|_, x| !x.is_zero());
        out
    }

    /// Columns of `D: C^n -> C^{n+1}`.
    pub fn differential(&self, n: i64, exec: Exec) -> Vec<SparseVec> {
        assert!(n >= self.lo && n < self.hi);
        exec.map(&self.chains[&n], |c| self.coords(n + 1, &self.apply(c)))
    }
}

/// Homology of the complex in degrees `lo+1..=hi-1`, with cycle
/// representatives on request.
pub struct Computed {
    pub complex: HochschildComplex,
    pub columns: BTreeMap<i64, Vec<SparseVec>>,
    pub dims: BTreeMap<i64, usize>,
    pub reps: BTreeMap<i64, Vec<SparseVec>>,
}

impl Computed {
    pub fn new(alg: &DgPathAlgebra, lo: i64, hi: i64, exec: Exec, with_reps: bool) -> Self {
        let complex = HochschildComplex::new(alg, lo, hi);
        let degs: Vec<i64> = (lo..hi).collect();
        let columns: BTreeMap<i64, Vec<SparseVec>> = degs.iter().map(|&n| (n, complex.differential(n, exec))).collect();
        let ranks: BTreeMap<i64, usize> = columns.iter().map(|(&n, c)| (n, rank(c))).collect();
        let mut dims = BTreeMap::new();
        let mut reps = BTreeMap::new();
        for n in lo + 1..hi {
            dims.insert(n, complex.dim(n) - ranks[&n] - ranks[&(n - 1)]);
            if with_reps {
                let mut e = Echelon::new();
                for c in &columns[&(n - 1)] {
                    let _ = e.insert(c);
                }
                let zs: Vec<SparseVec> = kernel(&columns[&n]).into_iter().filter(|z| e.insert(z).is_ok()).collect();
                reps.insert(n, zs);
            }
        }
        Computed { complex, columns, dims, reps }
    }

    /// Is `v` in `C^n` a cycle that is not a boundary?
    pub fn nonzero_class(&self, n: i64, v: &SparseVec) -> bool {
        let mut e = Echelon::new();
        for c in &self.columns[&(n - 1)] {
            let _ = e.insert(c);
        }
        let cycle = {
            let img: HashMap<Chain, Scalar> = v
                .iter()
                .fold(HashMap::new(), |mut acc, (k, x)| {
                    for (c, y) in self.complex.apply(&self.complex.chains[&n][*k]) {
                        add(&mut acc, c, &y * x);
                    }
                    acc
                });
            img.values().all(|x| x.is_zero())
        };
        cycle && !e.contains(v)
    }

    pub fn display(&self, n: i64, v: &SparseVec) -> String {
        let q = &self.complex.alg.quiver;
        let parts: Vec<String> = v.iter().map(|(k, x)| format!("{x}*{}", self.complex.chains[&n][*k].display(q))).collect();
        parts.join(" + ")
    }

    pub fn unit(&self, n: i64, c: &Chain) -> Option<SparseVec> {
        self.complex.index[&n].get(c).map(|&k| vec![(k, Scalar::one())])
    }
}
