use serde::Serialize;
use silting_perf_modules::{hom_derived, minimal_model, tau_le, HomOptions, PerfModule};
use silting_potential_calculus::DoubledAlgebra;

use crate::domain::tag;
use crate::ClusterError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HomPath {
    /// `Hom_D(X, Sigma^t Y)` directly: `X` in `D^{<=x}`, `Sigma^t Y` in
    /// `⊥D^{<=y}` with `x <= y + m + 1`.
    Direct,
    /// `Hom_D(tau_{<=-t} X, Sigma^t Y)` for `X, Y` in `F`.
    Truncation,
}

/// `dim Hom_C(pi X, Sigma^t pi Y)`.
#[derive(Clone, Debug, Serialize)]
pub struct ClusterHom {
    pub t: i64,
    pub dim: usize,
    pub path: HomPath,
    /// `(x, y)` for the direct path; `(-t, -t)` for the truncation cut.
    pub window: (i64, i64),
    pub trunc: usize,
    pub stable: bool,
}

fn minimal(d: &DoubledAlgebra, x: &PerfModule, opts: &HomOptions) -> PerfModule {
    minimal_model(&d.alg.with_trunc(opts.trunc), &x.with_trunc(opts.trunc))
}

fn finish(h: silting_perf_modules::HomResult, t: i64, path: HomPath, window: (i64, i64)) -> Result<ClusterHom, ClusterError> {
    if !h.stable {
        return Err(ClusterError::Unstable(format!("Hom_C at t = {t}")));
    }
    Ok(ClusterHom { t, dim: h.dim, path, window, trunc: h.trunc, stable: h.stable })
}

/// Uses the direct comparison whenever the degree bounds allow it and falls
/// back to truncating `X` otherwise (which needs both objects in `F`).
pub fn hom_cluster(d: &DoubledAlgebra, x: &PerfModule, y: &PerfModule, t: i64, opts: &HomOptions) -> Result<ClusterHom, ClusterError> {
    let x = minimal(d, x, opts);
    let y = minimal(d, y, opts);
    let (Some(xlo), Some(yhi)) = (x.min_shift(), y.max_shift()) else {
        return Ok(ClusterHom { t, dim: 0, path: HomPath::Direct, window: (0, 0), trunc: opts.trunc, stable: true });
    };
    let top = -xlo;
    let perp = -(yhi + t) - 1;
    if top <= perp + d.m + 1 {
        let alg = d.alg.with_trunc(opts.trunc);
        let h = hom_derived(&alg, &x, &y.shift(t), 0, opts);
        return finish(h, t, HomPath::Direct, (top, perp));
    }
    hom_cluster_truncated(d, &x, &y, t, opts)
}

/// `Hom_D(tau_{<=-t} X, Sigma^t Y)` for `X, Y` in `F` and `0 <= t <= m`.
pub fn hom_cluster_truncated(d: &DoubledAlgebra, x: &PerfModule, y: &PerfModule, t: i64, opts: &HomOptions) -> Result<ClusterHom, ClusterError> {
    if !(0..=d.m).contains(&t) {
        return Err(ClusterError::Range { t, m: d.m });
    }
    let tx = tag(d, x, opts);
    tx.require("X")?;
    let ty = tag(d, y, opts);
    ty.require("Y")?;
    let alg = d.alg.with_trunc(opts.trunc);
    let cut = tau_le(&alg, &tx.module, -t, opts)?;
    let h = hom_derived(&alg, &cut, &ty.module.shift(t), 0, opts);
    finish(h, t, HomPath::Truncation, (-t, -t))
}
