use std::path::Path as FsPath;

use clap::ValueEnum;
use serde::Serialize;
use silting_perf_modules::PerfModule;
use silting_potential_calculus::{ginzburg, preprojective, DoubledAlgebra};
use silting_quiver_dsl::{parse, GradedQuiver, Model};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Ginzburg,
    Dpp,
}

pub fn read(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })
}

pub fn load_model(path: Option<&str>) -> Result<Model, CliError> {
    let path = path.ok_or_else(|| CliError::Input("missing input: pass --input FILE".into()))?;
    Ok(parse(&read(path)?)?)
}

pub fn build(model: &Model, kind: Kind) -> Result<DoubledAlgebra, CliError> {
    Ok(match kind {
        Kind::Ginzburg => ginzburg(&model.quiver, &model.potential, model.m)?,
        Kind::Dpp => preprojective(&model.quiver, &model.potential, model.m)?,
    })
}

pub fn vertex(q: &GradedQuiver, name: &str) -> Result<usize, CliError> {
    q.vertex_index(name).ok_or_else(|| CliError::Input(format!("no vertex named `{name}`")))
}

/// A JSON file, `A` (the free module), `0`, or `v@s+w@t` for
/// `Sigma^s P_v (+) Sigma^t P_w` with zero differential.
pub fn module(d: &DoubledAlgebra, spec: &str, trunc: usize) -> Result<PerfModule, CliError> {
    let q = &d.alg.quiver;
    let spec = spec.trim();
    if spec.ends_with(".json") || FsPath::new(spec).is_file() {
        let v: serde_json::Value =
            serde_json::from_str(&read(spec)?).map_err(|e| CliError::Input(format!("{spec}: {e}")))?;
        return Ok(PerfModule::from_json(&d.alg, &v, trunc)?);
    }
    match spec {
        "A" => return Ok(PerfModule::free(q, trunc)),
        "0" => return Ok(PerfModule::zero(trunc)),
        _ => {}
    }
    let mut x = PerfModule::zero(trunc);
    for part in spec.split('+') {
        let (v, s) = part.split_once('@').unwrap_or((part, "0"));
        let s: i64 = s.trim().parse().map_err(|_| CliError::Input(format!("bad shift in `{part}`")))?;
        x = x.direct_sum(&PerfModule::projective(vertex(q, v.trim())?, s, trunc));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_modules() {
        let m = parse("m 1\nvertex 1 2\narrow a: 1 -> 2 deg 0\n").unwrap();
        let d = build(&m, Kind::Ginzburg).unwrap();
        let x = module(&d, "1@0+2@-1", 4).unwrap();
        assert_eq!(x.summand_multiset(), vec![(0, 0), (1, -1)]);
        assert_eq!(module(&d, "A", 4).unwrap().len(), 2);
        assert!(module(&d, "0", 4).unwrap().is_empty());
        assert!(module(&d, "3@0", 4).is_err());
        assert!(module(&d, "1@x", 4).is_err());
    }
}
