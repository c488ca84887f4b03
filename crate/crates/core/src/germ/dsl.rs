//! Parser and printer for `.germ` files.
//!
//! ```text
//! # comment
//! germ S1
//! source n=2
//! branch (x, y^2, x^2*y + y^3)
//! branch at (1, 0) : (x - 1, y^2, y^3)
//! unfold t : branch 1 += (0, 0, t*y)
//! ```

use std::fmt::Write as _;
use std::str::FromStr;

use super::{default_source_vars, GermSpec, RawBranch, UnfoldingSpec};
use crate::error::{Error, Result};
use crate::poly::{is_valid_name, parse_poly, MonomialOrder, PolyRing, Polynomial, RingRef};
use crate::{Poly, Rational};

/// Contents of a germ file: the germ and an optional unfolding.
#[derive(Debug, Clone)]
pub struct GermFile {
    pub germ: GermSpec,
    pub unfolding: Option<UnfoldingSpec>,
    explicit_vars: bool,
}

impl GermFile {
    pub fn new(germ: GermSpec) -> Self {
        let explicit_vars = germ.source_vars() != default_source_vars(germ.n()).as_slice();
        GermFile { germ, unfolding: None, explicit_vars }
    }

    pub fn with_unfolding(mut self, u: UnfoldingSpec) -> Self {
        self.unfolding = Some(u);
        self
    }

    /// Canonical text; `parse_germ_file(print())` reproduces this file.
    pub fn print(&self) -> String {
        let g = &self.germ;
        let mut out = String::new();
        let _ = writeln!(out, "germ {}", g.name());
        if self.explicit_vars {
            let _ = writeln!(out, "source n={} vars=({})", g.n(), g.source_vars().join(", "));
        } else {
            let _ = writeln!(out, "source n={}", g.n());
        }
        for b in g.branches() {
            let comps = original_coordinates(b.components(), b.base_point(), g.ring());
            if b.base_point().iter().all(|c| *c == Rational::from_integer(0.into())) {
                let _ = writeln!(out, "branch ({})", join(&comps));
            } else {
                let bp: Vec<String> = b.base_point().iter().map(|c| c.to_string()).collect();
                let _ = writeln!(out, "branch at ({}) : ({})", bp.join(", "), join(&comps));
            }
        }
        if let Some(u) = &self.unfolding {
            for (i, (b, d)) in g.branches().iter().zip(u.deformation()).enumerate() {
                if d.iter().all(|p| p.is_zero()) && i > 0 {
                    continue;
                }
                let comps = original_coordinates(d, b.base_point(), u.ring());
                let _ = writeln!(out, "unfold {} : branch {} += ({})", u.params().join(", "), i + 1, join(&comps));
            }
        }
        out
    }
}

fn join(ps: &[Poly]) -> String {
    ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
}

/// Undo recentring: substitute `v ↦ v - a_v` for the source coordinates.
fn original_coordinates(ps: &[Poly], base: &[Rational], ring: &RingRef) -> Vec<Poly> {
    let shift: Vec<(usize, Poly)> = base
        .iter()
        .enumerate()
        .map(|(v, a)| (v, &Polynomial::var_at(ring, v) - &Polynomial::constant(ring, a.clone())))
        .collect();
    ps.iter()
        .map(|p| p.to_ring(ring).and_then(|p| p.substitute(&shift, ring)).expect("source ring embeds"))
        .collect()
}

/// Split `(a, b, c)` at top-level commas; returns pieces with their byte
/// offsets relative to `text`.
fn split_tuple(text: &str, line: usize) -> Result<Vec<(usize, &str)>> {
    let t = text.trim_end();
    let lead = text.len() - text.trim_start().len();
    let t = t.trim_start();
    if !t.starts_with('(') || !t.ends_with(')') {
        return Err(Error::Dsl { line, msg: format!("expected a parenthesised tuple, found `{t}`") });
    }
    let inner = &t[1..t.len() - 1];
    let base = lead + 1;
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push((base + start, &inner[start..i]));
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Dsl { line, msg: "unbalanced parentheses".into() });
        }
    }
    if depth != 0 {
        return Err(Error::Dsl { line, msg: "unbalanced parentheses".into() });
    }
    if !inner.trim().is_empty() {
        out.push((base + start, &inner[start..]));
    }
    Ok(out)
}

fn parse_polys(text: &str, col: usize, line: usize, ring: &RingRef) -> Result<Vec<Poly>> {
    split_tuple(text, line)?
        .into_iter()
        .map(|(off, piece)| {
            parse_poly(piece, ring).map_err(|e| match e {
                Error::Syntax { pos, msg } => Error::Dsl { line, msg: format!("column {}: {msg}", col + off + pos + 1) },
                other => Error::Dsl { line, msg: other.to_string() },
            })
        })
        .collect()
}

/// Parses a germ file. Errors carry the 1-based line number.
pub fn parse_germ_file(text: &str) -> Result<GermFile> {
    let mut name: Option<String> = None;
    let mut ring: Option<RingRef> = None;
    let mut explicit_vars = false;
    let mut raw: Vec<RawBranch> = Vec::new();
    let mut branch_lines: Vec<usize> = Vec::new();
    let mut params: Vec<String> = Vec::new();
    // (line, branch index, column, tuple text)
    let mut unfolds: Vec<(usize, usize, usize, String)> = Vec::new();

    for (ln, full) in text.lines().enumerate() {
        let line = ln + 1;
        let content = full.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let col0 = content.len() - content.trim_start().len();
        let (kw, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
        let rest_col = col0 + kw.len() + (trimmed.len() - kw.len() - rest.len());
        match kw {
            "germ" => {
                if name.is_some() {
                    return Err(Error::Dsl { line, msg: "duplicate `germ` line".into() });
                }
                let n = rest.trim();
                if n.is_empty() {
                    return Err(Error::Dsl { line, msg: "missing germ name".into() });
                }
                name = Some(n.to_string());
            }
            "source" => {
                if ring.is_some() {
                    return Err(Error::Dsl { line, msg: "duplicate `source` line".into() });
                }
                let rest = rest.trim();
                let (dim_part, vars_part) = match rest.find("vars") {
                    Some(i) => (rest[..i].trim(), Some(rest[i..].trim())),
                    None => (rest, None),
                };
                let n: usize = dim_part
                    .strip_prefix("n")
                    .map(str::trim_start)
                    .and_then(|s| s.strip_prefix('='))
                    .and_then(|s| s.trim().parse().ok())
                    .filter(|&n| n > 0)
                    .ok_or_else(|| Error::Dsl { line, msg: format!("expected `n=<positive integer>`, found `{dim_part}`") })?;
                let vars = match vars_part {
                    None => default_source_vars(n),
                    Some(v) => {
                        explicit_vars = true;
                        let tuple = v
                            .strip_prefix("vars")
                            .map(str::trim_start)
                            .and_then(|s| s.strip_prefix('='))
                            .ok_or_else(|| Error::Dsl { line, msg: "expected `vars=(...)`".into() })?;
                        let names: Vec<String> =
                            split_tuple(tuple, line)?.into_iter().map(|(_, s)| s.trim().to_string()).collect();
                        if let Some(bad) = names.iter().find(|s| !is_valid_name(s)) {
                            return Err(Error::Dsl { line, msg: format!("invalid variable name `{bad}`") });
                        }
                        if names.len() != n {
                            return Err(Error::Dsl { line, msg: format!("{} variable names for n={n}", names.len()) });
                        }
                        names
                    }
                };
                ring = Some(
                    PolyRing::new(&vars, MonomialOrder::DegRevLex).map_err(|e| Error::Dsl { line, msg: e.to_string() })?,
                );
            }
            "branch" => {
                let r = ring.as_ref().ok_or_else(|| Error::Dsl { line, msg: "`branch` before `source`".into() })?;
                let body = rest.trim_start();
                let body_col = rest_col + (rest.len() - body.len());
                let (base_point, tuple, tcol) = if let Some(after) = body.strip_prefix("at") {
                    let (bp, comps) = after
                        .split_once(':')
                        .ok_or_else(|| Error::Dsl { line, msg: "expected `branch at (...) : (...)`".into() })?;
                    let coords = split_tuple(bp, line)?
                        .into_iter()
                        .map(|(_, s)| {
                            Rational::from_str(s.trim())
                                .map_err(|_| Error::Dsl { line, msg: format!("invalid rational `{}`", s.trim()) })
                        })
                        .collect::<Result<Vec<_>>>()?;
                    let tcol = body_col + 2 + bp.len() + 1;
                    (coords, comps, tcol)
                } else {
                    let b = body.strip_prefix(':').unwrap_or(body);
                    (vec![Rational::from_integer(0.into()); r.nvars()], b, body_col + (body.len() - b.len()))
                };
                let components = parse_polys(tuple, tcol, line, r)?;
                raw.push(RawBranch { base_point, components });
                branch_lines.push(line);
            }
            "unfold" => {
                if ring.is_none() {
                    return Err(Error::Dsl { line, msg: "`unfold` before `source`".into() });
                }
                let (ps, target) =
                    rest.split_once(':').ok_or_else(|| Error::Dsl { line, msg: "expected `unfold <params> : branch <i> += (...)`".into() })?;
                let names: Vec<String> = ps.split(',').map(|s| s.trim().to_string()).collect();
                if let Some(bad) = names.iter().find(|s| !is_valid_name(s)) {
                    return Err(Error::Dsl { line, msg: format!("invalid parameter name `{bad}`") });
                }
                for nm in names {
                    if !params.contains(&nm) {
                        params.push(nm);
                    }
                }
                let (lhs, tuple) = target
                    .split_once("+=")
                    .ok_or_else(|| Error::Dsl { line, msg: "expected `+=` in unfold line".into() })?;
                let idx: usize = lhs
                    .trim()
                    .strip_prefix("branch")
                    .and_then(|s| s.trim().parse().ok())
                    .filter(|&i| i >= 1)
                    .ok_or_else(|| Error::Dsl { line, msg: format!("expected `branch <index>`, found `{}`", lhs.trim()) })?;
                let tcol = rest_col + ps.len() + 1 + lhs.len() + 2;
                unfolds.push((line, idx, tcol, tuple.to_string()));
            }
            other => return Err(Error::Dsl { line, msg: format!("unknown statement `{other}`") }),
        }
    }

    let name = name.ok_or_else(|| Error::Dsl { line: 1, msg: "missing `germ <name>` line".into() })?;
    let ring = ring.ok_or_else(|| Error::Dsl { line: 1, msg: "missing `source n=<int>` line".into() })?;
    let germ = GermSpec::new(&name, &ring, raw).map_err(|e| {
        // point at the offending branch when the message names one
        let msg = e.to_string();
        let line = msg
            .split("branch ")
            .nth(1)
            .and_then(|r| r.split(|c: char| !c.is_ascii_digit()).next())
            .and_then(|d| d.parse::<usize>().ok())
            .and_then(|i| branch_lines.get(i.wrapping_sub(1)).copied())
            .or(branch_lines.last().copied())
            .unwrap_or(1);
        Error::Dsl { line, msg }
    })?;
    let mut file = GermFile { germ, unfolding: None, explicit_vars };
    if !unfolds.is_empty() {
        let g = &file.germ;
        let uring = g
            .ring()
            .extended(&params, MonomialOrder::DegRevLex)
            .map_err(|e| Error::Dsl { line: unfolds[0].0, msg: e.to_string() })?;
        let mut deformation = vec![vec![Polynomial::zero(&uring); g.n() + 1]; g.s()];
        for (line, idx, col, tuple) in &unfolds {
            let b = g
                .branches()
                .get(idx - 1)
                .ok_or_else(|| Error::Dsl { line: *line, msg: format!("no branch {idx}") })?;
            let terms = parse_polys(tuple, *col, *line, &uring)?;
            if terms.len() != g.n() + 1 {
                return Err(Error::Dsl { line: *line, msg: format!("expected {} deformation terms", g.n() + 1) });
            }
            let shift: Vec<(usize, Poly)> = b
                .base_point()
                .iter()
                .enumerate()
                .map(|(v, a)| (v, &Polynomial::var_at(&uring, v) + &Polynomial::constant(&uring, a.clone())))
                .collect();
            for (slot, t) in deformation[idx - 1].iter_mut().zip(terms) {
                let t = t.substitute(&shift, &uring).map_err(|e| Error::Dsl { line: *line, msg: e.to_string() })?;
                *slot = &*slot + &t;
            }
        }
        let u = UnfoldingSpec::new(file.germ.clone(), &params, deformation)
            .map_err(|e| Error::Dsl { line: unfolds[0].0, msg: e.to_string() })?;
        file.unfolding = Some(u);
    }
    Ok(file)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let text = "# the first S_k\ngerm S1\nsource n=2\nbranch (x, y^2, x^2*y + y^3)\n";
        let f = parse_germ_file(text).unwrap();
        assert_eq!(f.germ.name(), "S1");
        assert_eq!(f.print(), "germ S1\nsource n=2\nbranch (x, y^2, x^2*y + y^3)\n");
    }

    #[test]
    fn multi_and_unfold_round_trip() {
        let text = "germ pair\nsource n=1 vars=(s)\nbranch (s, s^2)\nbranch at (1) : (s - 1, 0)\nunfold a : branch 1 += (0, s*a)\n";
        let f = parse_germ_file(text).unwrap();
        assert_eq!(f.germ.s(), 2);
        assert_eq!(f.germ.branches()[1].components()[0].to_string(), "s");
        let again = parse_germ_file(&f.print()).unwrap();
        assert_eq!(again.print(), f.print());
        assert_eq!(f.print(), text);
    }

    #[test]
    fn errors_carry_lines() {
        let e = parse_germ_file("germ g\nsource n=2\nbranch (x, y^^2, y)\n").unwrap_err();
        assert!(matches!(e, Error::Dsl { line: 3, .. }), "{e}");
        let e = parse_germ_file("germ g\nsource n=2\nbranch (x, y^2, y^3 + 1)\n").unwrap_err();
        assert!(e.to_string().contains("vanish"), "{e}");
        let e = parse_germ_file("germ g\nsource n=2\nbranch (x, y^2, y^3)\nfrobnicate\n").unwrap_err();
        assert!(matches!(e, Error::Dsl { line: 4, .. }));
    }
}
