use std::str::FromStr;

use serde::Serialize;
use silting_scalars::Scalar;
use thiserror::Error;

use crate::potential::{Letter, Superpotential, Term};
use crate::quiver::GradedQuiver;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: undeclared vertex `{name}`")]
    UndeclaredVertex { line: usize, col: usize, name: String },
    #[error("{line}:{col}: undeclared arrow `{name}`")]
    UndeclaredArrow { line: usize, col: usize, name: String },
    #[error("{line}:{col}: degree `{text}` is not an integer")]
    BadDegree { line: usize, col: usize, text: String },
    #[error("missing `m` line")]
    MissingM,
}

/// A parsed input: quiver, potential and the parameter `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Model {
    pub quiver: GradedQuiver,
    pub potential: Superpotential,
    pub m: i64,
}

impl FromStr for Model {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse(s)
    }
}

impl std::fmt::Display for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&print(self))
    }
}

fn is_ident_char(c: char) -> bool {
    !c.is_whitespace() && !matches!(c, ':' | '*' | '(' | ')' | '+' | '#')
}

struct Line<'a> {
    no: usize,
    text: &'a str,
}

impl<'a> Line<'a> {
    /// 1-based column of a byte offset.
    fn col(&self, byte: usize) -> usize {
        let mut b = byte.min(self.text.len());
        while !self.text.is_char_boundary(b) {
            b -= 1;
        }
        self.text[..b].chars().count() + 1
    }

    fn err(&self, byte: usize, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line: self.no,
            col: self.col(byte),
            msg: msg.into(),
        }
    }
}

/// Whitespace separated tokens with byte offsets.
fn tokens(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        if c.is_whitespace() {
            if let Some(b) = start.take() {
                out.push((b, &s[b..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(b) = start {
        out.push((b, &s[b..]));
    }
    out
}

fn normalize_minus(s: &str) -> String {
    s.replace('\u{2212}', "-")
}

pub fn parse(source: &str) -> Result<Model, ParseError> {
    let mut m: Option<i64> = None;
    let mut q = GradedQuiver::default();
    // Potential lines are resolved after all arrows are known.
    let mut pending: Vec<(usize, String)> = Vec::new();

    for (k, raw) in source.lines().enumerate() {
        let text = raw.split('#').next().unwrap_or("");
        let line = Line { no: k + 1, text };
        let toks = tokens(text);
        let Some(&(kw_at, kw)) = toks.first() else {
            continue;
        };
        match kw {
            "m" => {
                let [_, (at, v)] = toks[..] else {
                    return Err(line.err(kw_at, "expected `m <positive int>`"));
                };
                match normalize_minus(v).parse::<i64>() {
                    Ok(x) if x > 0 => m = Some(x),
                    _ => return Err(line.err(at, "m must be a positive integer")),
                }
            }
            "vertex" | "vertices" => {
                if toks.len() < 2 {
                    return Err(line.err(kw_at, "expected at least one vertex name"));
                }
                for &(at, name) in &toks[1..] {
                    if !name.chars().all(is_ident_char) {
                        return Err(line.err(at, format!("bad vertex name `{name}`")));
                    }
                    if q.vertex_index(name).is_some() {
                        return Err(line.err(at, format!("vertex `{name}` declared twice")));
                    }
                    q.vertices.push(name.to_string());
                }
            }
            "arrow" => parse_arrow(&line, kw_at + kw.len(), &mut q)?,
            "potential" => pending.push((k + 1, text[kw_at + kw.len()..].to_string())),
            other => return Err(line.err(kw_at, format!("unknown keyword `{other}`"))),
        }
    }
    let m = m.ok_or(ParseError::MissingM)?;
    let mut w = Superpotential::zero();
    for (no, rest) in pending {
        // Column offsets are relative to the original line.
        let full = source.lines().nth(no - 1).unwrap();
        let offset = full.len() - full.trim_start().len() + "potential".len();
        let line = Line { no, text: full };
        parse_potential(&line, offset, &rest, &q, &mut w)?;
    }
    Ok(Model {
        quiver: q,
        potential: w,
        m,
    })
}

fn parse_arrow(line: &Line, from: usize, q: &mut GradedQuiver) -> Result<(), ParseError> {
    let rest = &line.text[from..];
    let colon = rest
        .find(':')
        .ok_or_else(|| line.err(from, "expected `arrow <name>: <src> -> <tgt> deg <int>`"))?;
    let name = rest[..colon].trim();
    let name_at = from + rest.find(name).unwrap_or(0);
    if name.is_empty() || !name.chars().all(is_ident_char) {
        return Err(line.err(name_at, format!("bad arrow name `{name}`")));
    }
    if q.arrow_index(name).is_some() {
        return Err(line.err(name_at, format!("arrow `{name}` declared twice")));
    }
    let body_at = from + colon + 1;
    let toks: Vec<(usize, &str)> = tokens(&line.text[body_at..])
        .into_iter()
        .map(|(b, t)| (b + body_at, t))
        .collect();
    let shape_ok = toks.len() == 5 && toks[1].1 == "->" && toks[3].1 == "deg";
    if !shape_ok {
        return Err(line.err(body_at, "expected `<src> -> <tgt> deg <int>`"));
    }
    let vertex = |(at, v): (usize, &str)| {
        q.vertex_index(v).ok_or(ParseError::UndeclaredVertex {
            line: line.no,
            col: line.col(at),
            name: v.to_string(),
        })
    };
    let src = vertex(toks[0])?;
    let tgt = vertex(toks[2])?;
    let (dat, dtext) = toks[4];
    let deg = normalize_minus(dtext)
        .parse::<i64>()
        .map_err(|_| ParseError::BadDegree {
            line: line.no,
            col: line.col(dat),
            text: dtext.to_string(),
        })?;
    q.add_arrow(name, src, tgt, deg);
    Ok(())
}

fn parse_potential(
    line: &Line,
    base: usize,
    rest: &str,
    q: &GradedQuiver,
    w: &mut Superpotential,
) -> Result<(), ParseError> {
    let rest_norm = normalize_minus(rest);
    let s = rest_norm.as_str();
    // Byte offsets in `s` may differ from the source after normalising; the
    // error column is still close enough, and exact for ASCII input.
    let at = |b: usize| base + b.min(rest.len());
    if s.trim() == "0" {
        return Ok(());
    }
    let mut pos = 0usize;
    let mut first = true;
    loop {
        let skip = s[pos..].len() - s[pos..].trim_start().len();
        pos += skip;
        if pos >= s.len() {
            if first {
                return Err(line.err(at(pos), "empty potential"));
            }
            return Ok(());
        }
        let mut negate = false;
        if !first {
            match s[pos..].chars().next() {
                Some('+') => pos += 1,
                Some('-') => {
                    negate = true;
                    pos += 1
                }
                _ => return Err(line.err(at(pos), "expected `+` or `-` between terms")),
            }
        }
        first = false;
        let open = s[pos..]
            .find('(')
            .map(|o| o + pos)
            .ok_or_else(|| line.err(at(pos), "expected `<scalar>*(...)`"))?;
        let head = s[pos..open].trim();
        let coeff = if head.is_empty() {
            Scalar::from_int(1)
        } else {
            let Some(num) = head.strip_suffix('*') else {
                return Err(line.err(at(pos), "expected `*` before `(`"));
            };
            let num = num.trim();
            match num {
                "" | "+" => Scalar::from_int(1),
                "-" => Scalar::from_int(-1),
                _ => num
                    .parse::<Scalar>()
                    .map_err(|e| line.err(at(pos), format!("bad scalar `{num}`: {e}")))?,
            }
        };
        let close = s[open..]
            .find(')')
            .map(|c| c + open)
            .ok_or_else(|| line.err(at(open), "unclosed `(`"))?;
        let mut word = Vec::new();
        for (b, tok) in tokens(&s[open + 1..close]) {
            let (name, star) = match tok.strip_suffix('*') {
                Some(n) => (n, true),
                None => (tok, false),
            };
            let a = q.arrow_index(name).ok_or(ParseError::UndeclaredArrow {
                line: line.no,
                col: line.col(at(open + 1 + b)),
                name: name.to_string(),
            })?;
            word.push(Letter { arrow: a, star });
        }
        if word.is_empty() {
            return Err(line.err(at(open), "empty word"));
        }
        w.terms.push(Term {
            coeff: if negate { -coeff } else { coeff },
            word,
        });
        pos = close + 1;
    }
}

/// Inverse of [`parse`]: `parse(&print(x)) == x`.
pub fn print(model: &Model) -> String {
    let q = &model.quiver;
    let mut out = format!("m {}\n", model.m);
    if !q.vertices.is_empty() {
        out.push_str("vertex ");
        out.push_str(&q.vertices.join(" "));
        out.push('\n');
    }
    for a in &q.arrows {
        out.push_str(&format!(
            "arrow {}: {} -> {} deg {}\n",
            a.name, q.vertices[a.src], q.vertices[a.tgt], a.deg
        ));
    }
    if !model.potential.terms.is_empty() {
        out.push_str("potential ");
        out.push_str(&model.potential.display(q));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_loop_example() {
        let src = "m 2\nvertex •\narrow a: • -> • deg -1\n";
        let model = parse(src).unwrap();
        assert_eq!(model.m, 2);
        assert_eq!(model.quiver.n_vertices(), 1);
        assert!(model.quiver.arrows[0].is_loop());
        assert!(model.potential.is_zero());
    }

    #[test]
    fn two_loops_one_vertex() {
        let src = "m 2\nvertex x\narrow α: x -> x deg −1\narrow β: x -> x deg -1\n";
        let model = parse(src).unwrap();
        assert_eq!(model.quiver.n_vertices(), 1);
        assert_eq!(model.quiver.n_arrows(), 2);
        assert_eq!(model.quiver.arrows[1].deg, -1);
    }

    #[test]
    fn empty_arrow_list() {
        let model = parse("m 1\nvertex 1 2 3\n").unwrap();
        assert_eq!(model.quiver.n_vertices(), 3);
        assert_eq!(model.quiver.n_arrows(), 0);
    }

    #[test]
    fn potential_terms_and_signs() {
        let src = "m 1\nvertex 1 2 3\narrow a: 1 -> 2 deg 0\narrow b: 2 -> 3 deg 0\n\
                   arrow c: 3 -> 1 deg 0\npotential 1/2-1/2*i*(c b a) - 3*(a c b) + (b a c)\n";
        let model = parse(src).unwrap();
        let t = &model.potential.terms;
        assert_eq!(t.len(), 3);
        assert_eq!(t[0].coeff, "1/2-1/2*i".parse().unwrap());
        assert_eq!(t[1].coeff, Scalar::from_int(-3));
        assert_eq!(t[2].coeff, Scalar::from_int(1));
        assert_eq!(parse(&print(&model)).unwrap(), model);
    }

    #[test]
    fn dual_letters() {
        let src = "m 2\nvertex x\narrow a: x -> x deg -1\npotential 1*(a a* a)\n";
        let model = parse(src).unwrap();
        assert!(model.potential.terms[0].word[1].star);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("m 1\nvertex 1\narrow a: 1 -> 2 deg 0\n").unwrap_err();
        assert_eq!(
            e,
            ParseError::UndeclaredVertex {
                line: 3,
                col: 15,
                name: "2".into()
            }
        );
        let e = parse("m 1\nvertex 1\narrow a: 1 -> 1 deg 1/2\n").unwrap_err();
        assert!(matches!(e, ParseError::BadDegree { line: 3, .. }));
        let e = parse("m 1\nvertex 1\narrow a: 1 -> 1 deg 0\npotential 1*(a b)\n").unwrap_err();
        assert!(matches!(e, ParseError::UndeclaredArrow { line: 4, .. }));
        let e = parse("m 1\nvertex 1\nbogus\n").unwrap_err();
        assert!(matches!(e, ParseError::Syntax { line: 3, col: 1, .. }));
        assert_eq!(parse("vertex 1\n").unwrap_err(), ParseError::MissingM);
    }
}
