//! Line-oriented text format for t-norms and piecewise functions.
//!
//! ```text
//! # comment
//! tnorm T4
//! summand 1/4 1/2 lukasiewicz
//! summand 1/2 1 product
//!
//! fn phi
//! point 0 : 1 3/5
//! point 1 : 3/5 3/5
//! ```
//!
//! A `point` line lists `left at right`; `left` is omitted on the first line
//! and `right` on the last. A single value means the function is continuous
//! there. Pieces interpolate linearly between consecutive points unless a
//! `pole <g>` line sits between them, in which case the piece is the
//! hyperbola `α + β/(x − g)` through the two end values.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::pwfn::{Breakpoint, PwFn};
use crate::rat::Rat;
use crate::tnorm::{OrdinalSumTNorm, Summand, SummandKind};

/// Named t-norms and functions in file order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpecFile {
    pub tnorms: Vec<(String, OrdinalSumTNorm)>,
    pub fns: Vec<(String, PwFn)>,
}

impl SpecFile {
    pub fn tnorm(&self, name: &str) -> Option<&OrdinalSumTNorm> {
        self.tnorms.iter().find(|(n, _)| n == name).map(|(_, t)| t)
    }

    pub fn function(&self, name: &str) -> Option<&PwFn> {
        self.fns.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    pub fn print(&self) -> String {
        let mut out = Vec::new();
        out.extend(self.tnorms.iter().map(|(n, t)| print_tnorm(n, t)));
        out.extend(self.fns.iter().map(|(n, f)| print_fn(n, f)));
        out.join("\n")
    }
}

impl FromStr for SpecFile {
    type Err = Error;

    fn from_str(s: &str) -> Result<SpecFile> {
        parse_spec(s)
    }
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn num(line: usize, s: &str) -> Result<Rat> {
    s.parse().map_err(|_| perr(line, format!("not a rational number: {s:?}")))
}

enum Stanza {
    TNorm { name: String, line: usize, summands: Vec<Summand> },
    Fn { name: String, line: usize, points: Vec<(usize, Vec<Rat>)>, poles: Vec<Option<Rat>> },
}

fn finish(stanza: Stanza, spec: &mut SpecFile) -> Result<()> {
    match stanza {
        Stanza::TNorm { name, line, summands } => {
            let alias = OrdinalSumTNorm::builtin(&name);
            let t = if summands.is_empty() {
                alias.unwrap_or_else(OrdinalSumTNorm::min)
            } else {
                let t = OrdinalSumTNorm::new(summands).map_err(|e| perr(line, e.to_string()))?;
                if alias.is_some_and(|a| a != t) {
                    return Err(perr(line, format!("{name:?} is a built-in name with different summands")));
                }
                t
            };
            spec.tnorms.push((name, t));
        }
        Stanza::Fn { name, line, points, poles } => {
            if points.len() < 2 {
                return Err(perr(line, "a function needs at least two points"));
            }
            let n = points.len();
            let mut pts = Vec::with_capacity(n);
            for (i, (ln, vals)) in points.into_iter().enumerate() {
                let mut vals = vals.into_iter();
                let x = vals.next().unwrap();
                let vals: Vec<Rat> = vals.collect();
                let (left, at, right) = match (i, vals.len()) {
                    (_, 1) => (vals[0].clone(), vals[0].clone(), vals[0].clone()),
                    (0, 2) => (vals[0].clone(), vals[0].clone(), vals[1].clone()),
                    (i, 2) if i + 1 == n => (vals[0].clone(), vals[1].clone(), vals[1].clone()),
                    (i, 3) if i > 0 && i + 1 < n => (vals[0].clone(), vals[1].clone(), vals[2].clone()),
                    _ => {
                        let want = if i == 0 {
                            "`at right`"
                        } else if i + 1 == n {
                            "`left at`"
                        } else {
                            "`left at right`"
                        };
                        return Err(perr(ln, format!("expected one value or {want}")));
                    }
                };
                pts.push(Breakpoint::new(x, left, at, right));
            }
            let f = PwFn::from_points_with_poles(pts, poles).map_err(|e| match e {
                Error::BadFunction(m) => perr(line, m),
                e => e,
            })?;
            spec.fns.push((name, f));
        }
    }
    Ok(())
}

pub fn parse_spec(text: &str) -> Result<SpecFile> {
    let mut spec = SpecFile::default();
    let mut cur: Option<Stanza> = None;
    let mut names: Vec<String> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let body = raw.split('#').next().unwrap().trim();
        if body.is_empty() {
            continue;
        }
        let words: Vec<&str> = body.split_whitespace().collect();
        match words[0] {
            "tnorm" | "fn" => {
                let [kw, name] = words[..] else {
                    return Err(perr(ln, format!("expected `{} <name>`", words[0])));
                };
                if names.iter().any(|n| n == name) {
                    return Err(perr(ln, format!("duplicate name {name:?}")));
                }
                names.push(name.to_string());
                if let Some(s) = cur.take() {
                    finish(s, &mut spec)?;
                }
                let name = name.to_string();
                cur = Some(if kw == "tnorm" {
                    Stanza::TNorm { name, line: ln, summands: Vec::new() }
                } else {
                    Stanza::Fn { name, line: ln, points: Vec::new(), poles: Vec::new() }
                });
            }
            "summand" => {
                let Some(Stanza::TNorm { summands, .. }) = cur.as_mut() else {
                    return Err(perr(ln, "`summand` outside a tnorm stanza"));
                };
                let [_, lo, hi, kind] = words[..] else {
                    return Err(perr(ln, "expected `summand <lo> <hi> lukasiewicz|product`"));
                };
                let kind =
                    SummandKind::parse(kind).ok_or_else(|| perr(ln, format!("unknown summand kind {kind:?}")))?;
                summands.push(Summand::new(num(ln, lo)?, num(ln, hi)?, kind));
            }
            "point" => {
                let Some(Stanza::Fn { points, poles, .. }) = cur.as_mut() else {
                    return Err(perr(ln, "`point` outside a fn stanza"));
                };
                let (head, tail) =
                    body["point".len()..].split_once(':').ok_or_else(|| perr(ln, "expected `point <x> : <values>`"))?;
                let x = num(ln, head.trim())?;
                let mut vals = vec![x];
                for w in tail.split_whitespace() {
                    vals.push(num(ln, w)?);
                }
                if !points.is_empty() && poles.len() < points.len() {
                    poles.push(None);
                }
                points.push((ln, vals));
            }
            "pole" => {
                let Some(Stanza::Fn { points, poles, .. }) = cur.as_mut() else {
                    return Err(perr(ln, "`pole` outside a fn stanza"));
                };
                let [_, g] = words[..] else {
                    return Err(perr(ln, "expected `pole <g>`"));
                };
                if points.is_empty() || poles.len() == points.len() {
                    return Err(perr(ln, "`pole` must sit between two point lines"));
                }
                poles.push(Some(num(ln, g)?));
            }
            w => return Err(perr(ln, format!("unknown keyword {w:?}"))),
        }
    }
    if let Some(Stanza::Fn { points, poles, .. }) = cur.as_ref() {
        if poles.len() == points.len() && !points.is_empty() {
            return Err(perr(text.lines().count(), "`pole` must be followed by a point line"));
        }
    }
    if let Some(s) = cur {
        finish(s, &mut spec)?;
    }
    Ok(spec)
}

/// Parses a file holding exactly one function.
pub fn parse_fn(text: &str) -> Result<PwFn> {
    let spec = parse_spec(text)?;
    match (spec.fns.len(), spec.tnorms.len()) {
        (1, 0) => Ok(spec.fns.into_iter().next().unwrap().1),
        _ => Err(perr(0, "expected exactly one fn stanza")),
    }
}

pub fn print_tnorm(name: &str, t: &OrdinalSumTNorm) -> String {
    let mut s = format!("tnorm {name}\n");
    for m in t.summands() {
        writeln!(s, "summand {} {} {}", m.lo, m.hi, m.kind.name()).unwrap();
    }
    s
}

/// Canonical text of `f`; parsing it gives back `f` exactly.
pub fn print_fn(name: &str, f: &PwFn) -> String {
    let mut s = format!("fn {name}\n");
    let pts = f.points();
    let n = pts.len();
    for (i, p) in pts.iter().enumerate() {
        if i > 0 {
            if let Some(g) = f.segments()[i - 1].pole() {
                writeln!(s, "pole {g}").unwrap();
            }
        }
        let vals = if i == 0 {
            format!("{} {}", p.at, p.right)
        } else if i + 1 == n {
            format!("{} {}", p.left, p.at)
        } else {
            format!("{} {} {}", p.left, p.at, p.right)
        };
        writeln!(s, "point {} : {vals}", p.x).unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::principal_lower;
    use crate::rat::rat;

    const T4_PHI: &str = "\
# the two-summand example
tnorm T4
summand 1/4 1/2 lukasiewicz
summand 0.5 1 product

fn phi
point 0 : 1 3/5
point 1 : 3/5
";

    #[test]
    fn parses_stanzas() {
        let spec = parse_spec(T4_PHI).unwrap();
        assert_eq!(spec.tnorm("T4"), Some(&OrdinalSumTNorm::t4()));
        let phi = spec.function("phi").unwrap();
        assert_eq!(phi.value(&Rat::zero()), Rat::one());
        assert_eq!(phi.value(&rat(1, 100)), rat(3, 5));
        assert_eq!(parse_spec(&spec.print()).unwrap(), spec);
    }

    #[test]
    fn aliases() {
        let spec = parse_spec("tnorm lukasiewicz\ntnorm godel\ntnorm mine\n").unwrap();
        assert_eq!(spec.tnorm("lukasiewicz"), Some(&OrdinalSumTNorm::lukasiewicz()));
        assert_eq!(spec.tnorm("godel"), Some(&OrdinalSumTNorm::min()));
        assert_eq!(spec.tnorm("mine"), Some(&OrdinalSumTNorm::min()));
        assert!(parse_spec("tnorm product\nsummand 0 1 lukasiewicz\n").is_err());
    }

    #[test]
    fn hyperbolic_round_trip() {
        let t = OrdinalSumTNorm::t4();
        let f = principal_lower(&t, &rat(3, 4)).unwrap();
        assert!(f.has_hyperbolic_piece());
        let text = print_fn("p", &f);
        assert!(text.contains("pole "));
        assert_eq!(parse_fn(&text).unwrap(), f);
    }

    #[test]
    fn errors_carry_lines() {
        let cases = [
            ("fn f\npoint 0 : 1\n", 1),
            ("fn f\npoint 0 : 1\npoint 1/2 : 1 1\npoint 1 : 0\n", 3),
            ("fn f\npoint 0 : x\n", 2),
            ("summand 0 1 product\n", 1),
            ("tnorm a\ntnorm a\n", 2),
            ("fn f\npoint 0 : 1\nwat\n", 3),
            ("tnorm t\nsummand 0 1 gauss\n", 2),
            ("fn f\npole 2\n", 2),
        ];
        for (text, line) in cases {
            match parse_spec(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        assert!(matches!(parse_spec("fn f\npoint 0 : 2\npoint 1 : 0\n"), Err(Error::OutOfUnit(_))));
    }
}
