use serde::Serialize;

use crate::potential::{word_endpoints, Superpotential};
use crate::quiver::GradedQuiver;

pub const COMPOSITION_CONVENTION: &str = "paths compose right to left: in `v u`, u is applied first";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    /// Offending arrows or terms, empty on success.
    pub offenders: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    pub special_loops: Vec<String>,
    pub convention: &'static str,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn check(name: &'static str, offenders: Vec<String>) -> Check {
    Check {
        name,
        pass: offenders.is_empty(),
        offenders,
    }
}

/// Loops of odd degree equal to `-m/2`.
pub fn special_loops(q: &GradedQuiver, m: i64) -> Vec<usize> {
    (0..q.n_arrows())
        .filter(|&a| {
            let ar = &q.arrows[a];
            ar.is_loop() && ar.deg % 2 != 0 && 2 * ar.deg == -m
        })
        .collect()
}

pub fn validate(q: &GradedQuiver, w: &Superpotential, m: i64) -> ValidationReport {
    let degrees = q
        .arrows
        .iter()
        .filter(|a| a.deg > 0 || 2 * a.deg < -m)
        .map(|a| a.name.clone())
        .collect();

    let term_name = |k: usize| -> String {
        let words: Vec<String> = w.terms[k].word.iter().map(|l| l.name(q)).collect();
        format!("({})", words.join(" "))
    };
    let mut inhomogeneous = Vec::new();
    let mut short = Vec::new();
    let mut acyclic = Vec::new();
    for (k, t) in w.terms.iter().enumerate() {
        let d: i64 = t.word.iter().map(|l| l.deg(q, m)).sum();
        if d != 1 - m {
            inhomogeneous.push(term_name(k));
        }
        if t.word.len() < 3 {
            short.push(term_name(k));
        }
        match word_endpoints(q, &t.word) {
            Some((s, e)) if s == e => {}
            _ => acyclic.push(term_name(k)),
        }
    }

    ValidationReport {
        checks: vec![
            check("degrees_in_range", degrees),
            check("potential_homogeneous", inhomogeneous),
            check("potential_reduced", short),
            check("potential_cyclic", acyclic),
        ],
        special_loops: special_loops(q, m)
            .into_iter()
            .map(|a| q.arrows[a].name.clone())
            .collect(),
        convention: COMPOSITION_CONVENTION,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    #[test]
    fn one_loop_has_special_loop() {
        let model = parse("m 2\nvertex •\narrow a: • -> • deg -1\n").unwrap();
        let r = validate(&model.quiver, &model.potential, model.m);
        assert!(r.all_pass());
        assert_eq!(r.special_loops, vec!["a".to_string()]);
    }

    #[test]
    fn a2_is_clean() {
        let model = parse("m 1\nvertex 1 2\narrow a: 1 -> 2 deg 0\n").unwrap();
        let r = validate(&model.quiver, &model.potential, model.m);
        assert!(r.all_pass());
        assert!(r.special_loops.is_empty());
    }

    #[test]
    fn short_term_is_not_reduced() {
        let src = "m 1\nvertex 1 2\narrow a: 1 -> 2 deg 0\narrow b: 2 -> 1 deg 0\npotential 1*(a b)\n";
        let model = parse(src).unwrap();
        let r = validate(&model.quiver, &model.potential, model.m);
        assert!(!r.check("potential_reduced").unwrap().pass);
        assert!(r.check("potential_cyclic").unwrap().pass);
    }

    #[test]
    fn degree_out_of_range() {
        let model = parse("m 2\nvertex 1\narrow a: 1 -> 1 deg -2\n").unwrap();
        let r = validate(&model.quiver, &model.potential, model.m);
        assert!(!r.check("degrees_in_range").unwrap().pass);
    }
}
