use serde::Serialize;
use silting_perf_modules::{hom_derived, hom_to_findim, minimal_model, tau_le, FinDimDgModule, HomOptions, PerfModule};
use silting_potential_calculus::DoubledAlgebra;

use crate::ClusterError;

/// One probe: `H^n(X e_v)` (kind "homology") or `Hom(X, Sigma^n S_v)`
/// (kind "perp"), both required to vanish.
#[derive(Clone, Debug, Serialize)]
pub struct Probe {
    pub kind: &'static str,
    pub vertex: usize,
    pub n: i64,
    pub dim: usize,
    pub stable: bool,
}

/// Membership evidence for `F`: homology in degrees `<= 0` and no maps
/// into `Sigma^j S_v` for `j >= m + 1`.
#[derive(Clone, Debug, Serialize)]
pub struct FundamentalDomainTag {
    #[serde(skip)]
    pub module: PerfModule,
    pub min_shift: Option<i64>,
    pub max_shift: Option<i64>,
    pub probes: Vec<Probe>,
    pub in_domain: bool,
}

impl FundamentalDomainTag {
    pub fn require(&self, which: &'static str) -> Result<(), ClusterError> {
        if self.in_domain {
            return Ok(());
        }
        let bad: Vec<String> = self
            .probes
            .iter()
            .filter(|p| p.dim != 0)
            .map(|p| format!("{} v={} n={} dim={}", p.kind, p.vertex, p.n, p.dim))
            .collect();
        Err(ClusterError::NotInDomain {
            which,
            reason: if bad.is_empty() { "shifts out of range".into() } else { bad.join(", ") },
        })
    }
}

pub fn tag(d: &DoubledAlgebra, x: &PerfModule, opts: &HomOptions) -> FundamentalDomainTag {
    let alg = d.alg.with_trunc(opts.trunc);
    let x = minimal_model(&alg, &x.with_trunc(opts.trunc));
    let q = &alg.quiver;
    let (lo, hi) = (x.min_shift(), x.max_shift());
    let mut probes = Vec::new();
    let top = -lo.unwrap_or(0);
    for v in 0..q.n_vertices() {
        let p = silting_perf_modules::PerfModule::projective(v, 0, opts.trunc);
        for n in 1..=top.max(0) + 1 {
            let h = hom_derived(&alg, &p, &x, n, opts);
            probes.push(Probe { kind: "homology", vertex: v, n, dim: h.dim, stable: h.stable });
        }
        let s = FinDimDgModule::simple(q.n_arrows(), v);
        for n in d.m + 1..=hi.unwrap_or(0).max(d.m) + 1 {
            let dim = hom_to_findim(&alg, &x, &s, n);
            probes.push(Probe { kind: "perp", vertex: v, n, dim, stable: true });
        }
    }
    let structural = lo.is_none_or(|s| s >= 0) && hi.is_none_or(|s| s <= d.m);
    let in_domain = structural && probes.iter().all(|p| p.dim == 0 && p.stable);
    FundamentalDomainTag { module: x, min_shift: lo, max_shift: hi, probes, in_domain }
}

/// A representative in `F` of `pi(Sigma^shift X)`.
#[derive(Clone, Debug, Serialize)]
pub struct FundamentalRep {
    /// Applied before truncating; nonzero only when `X` has summands of shift
    /// above `m`.
    pub shift: i64,
    /// Whether `tau_{<= 0}` was needed.
    pub truncated: bool,
    pub tag: FundamentalDomainTag,
}

impl FundamentalRep {
    pub fn module(&self) -> &PerfModule {
        &self.tag.module
    }
}

/// Shift so that `X` lies in `⊥D^{<=-m-1}`, then replace it by `tau_{<= 0}`;
/// the cone of `tau_{<=0} X -> X` has finite-dimensional homology, so both
/// have the same image.
pub fn fundamental_rep(d: &DoubledAlgebra, x: &PerfModule, opts: &HomOptions) -> Result<FundamentalRep, ClusterError> {
    let alg = d.alg.with_trunc(opts.trunc);
    let mut x = minimal_model(&alg, &x.with_trunc(opts.trunc));
    let shift = match x.max_shift() {
        Some(s) if s > d.m => d.m - s,
        _ => 0,
    };
    x = x.shift(shift);
    let truncated = x.min_shift().is_some_and(|s| s < 0);
    if truncated {
        x = tau_le(&alg, &x, 0, opts)?;
    }
    let tag = tag(d, &x, opts);
    tag.require("representative")?;
    Ok(FundamentalRep { shift, truncated, tag })
}
