//! Built-in regression catalog: germ files with their expected invariants.

use germlab_core::bases::Limits;
use germlab_core::family::Tri;
use germlab_core::germ::parse_germ_file;
use germlab_core::Rational;
use rayon::prelude::*;
use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::{analyze, family, SCHEMA_VERSION};

#[derive(Debug, Clone, Copy)]
pub enum Expect {
    Germ {
        stable: bool,
        a_finite: bool,
        mu_image: Option<u64>,
        /// `δ - s + 1` for curves.
        mu_image_curve: Option<u64>,
    },
    Family {
        good: Tri,
        excellent: Tri,
        /// Sample and the expected `(local sum, defect)` there.
        conservation: (i64, u64, i64),
    },
}

#[derive(Debug, Clone, Copy)]
pub struct Entry {
    pub name: &'static str,
    pub text: &'static str,
    pub expect: Expect,
}

const fn germ(name: &'static str, text: &'static str, stable: bool, a_finite: bool, mu: Option<u64>, curve: Option<u64>) -> Entry {
    Entry { name, text, expect: Expect::Germ { stable, a_finite, mu_image: mu, mu_image_curve: curve } }
}

pub const ENTRIES: &[Entry] = &[
    germ("cross-cap", include_str!("../catalog/cross-cap.germ"), true, true, Some(0), None),
    germ("S1", include_str!("../catalog/s1.germ"), false, true, Some(1), None),
    germ("S2", include_str!("../catalog/s2.germ"), false, true, Some(2), None),
    germ("S3", include_str!("../catalog/s3.germ"), false, true, Some(3), None),
    germ("S4", include_str!("../catalog/s4.germ"), false, true, Some(4), None),
    germ("B", include_str!("../catalog/b.germ"), false, true, Some(2), None),
    germ("cuspidal-edge", include_str!("../catalog/cuspidal-edge.germ"), false, false, None, None),
    germ("cusp", include_str!("../catalog/cusp.germ"), false, true, Some(1), Some(1)),
    germ("tacnode", include_str!("../catalog/tacnode.germ"), false, true, Some(1), Some(1)),
    germ("tacnode-line", include_str!("../catalog/tacnode-line.germ"), false, true, Some(2), Some(2)),
    germ("triple-lines", include_str!("../catalog/triple-lines.germ"), false, true, Some(1), Some(1)),
    Entry {
        name: "S2-family",
        text: include_str!("../catalog/s2-family.germ"),
        expect: Expect::Family { good: Tri::Yes, excellent: Tri::No, conservation: (-3, 0, 2) },
    },
    Entry {
        name: "S1-trivial",
        text: include_str!("../catalog/s1-trivial.germ"),
        expect: Expect::Family { good: Tri::Yes, excellent: Tri::Yes, conservation: (1, 1, 0) },
    },
    Entry {
        name: "p_t",
        text: include_str!("../catalog/p-t.germ"),
        expect: Expect::Family { good: Tri::Yes, excellent: Tri::No, conservation: (1, 0, 2) },
    },
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub what: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryResult {
    pub name: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogSummary {
    pub schema_version: u32,
    pub passed: usize,
    pub failed: usize,
    pub entries: Vec<EntryResult>,
}

impl CatalogSummary {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&format!("{:<14} {}\n", e.name, if e.passed { "ok" } else { "FAILED" }));
            for c in e.checks.iter().filter(|c| !c.ok) {
                out.push_str(&format!("    {}: expected {}, got {}\n", c.what, c.expected, c.actual));
            }
        }
        out.push_str(&format!("{} passed, {} failed\n", self.passed, self.failed));
        out
    }
}

fn check<T: std::fmt::Debug + PartialEq>(what: &str, expected: T, actual: T) -> Check {
    Check { what: what.into(), expected: format!("{expected:?}"), actual: format!("{actual:?}"), ok: expected == actual }
}

/// Whitespace- and comment-insensitive form of a germ file.
pub fn normalize(text: &str) -> String {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").split_whitespace().collect::<Vec<_>>().join(" "))
        .filter(|l| !l.is_empty())
        .collect::<Vec<_>>()
        .join("\n")
}

fn run_entry(e: &Entry, limits: &Limits) -> EntryResult {
    let mut checks = Vec::new();
    let file = match parse_germ_file(e.text) {
        Ok(f) => f,
        Err(err) => {
            checks.push(check("parse", "ok".to_string(), err.to_string()));
            return EntryResult { name: e.name.into(), passed: false, checks };
        }
    };
    checks.push(check("print round-trip", normalize(e.text), normalize(&file.print())));
    match e.expect {
        Expect::Germ { stable, a_finite, mu_image, mu_image_curve } => match analyze(&file, limits) {
            Ok((r, _)) => {
                checks.push(check("stable", stable, r.stable));
                checks.push(check("A-finite", a_finite, r.a_finite));
                checks.push(check("mu_I", mu_image, r.mu_image));
                if mu_image_curve.is_some() {
                    checks.push(check("delta - s + 1", mu_image_curve, r.mu_image_curve));
                }
                let dims_ok = r.marar_mond.iter().filter(|m| m.dim >= 0 && m.expected_dim >= 0).all(|m| m.dim == m.expected_dim);
                if r.a_finite {
                    checks.push(check("dim D^k = n - k + 1", true, dims_ok));
                }
            }
            Err(err) => checks.push(check("analyze", "ok".to_string(), err.to_string())),
        },
        Expect::Family { good, excellent, conservation: (t, local_sum, defect) } => {
            let mut samples = germlab_core::family::default_samples();
            samples.push(Rational::from_integer(t.into()));
            match family(&file, &samples, limits) {
                Ok((r, _)) => {
                    checks.push(check("good", good, r.verdict.good));
                    checks.push(check("excellent", excellent, r.verdict.excellent));
                    let key = t.to_string();
                    let c = r
                        .verdict
                        .samples
                        .iter()
                        .find(|s| s.parameter_value == key)
                        .and_then(|s| s.conservation.as_ref())
                        .map(|c| (c.local_sum, c.defect));
                    checks.push(check(&format!("conservation at {t}"), Some((local_sum, defect)), c));
                    checks.push(check("semicontinuity", Some(true), r.semicontinuity.map(|s| s.holds)));
                }
                Err(err) => checks.push(check("family", "ok".to_string(), err.to_string())),
            }
        }
    }
    EntryResult { name: e.name.into(), passed: checks.iter().all(|c| c.ok), checks }
}

/// Runs the entries whose names match `filter`, in parallel; results keep
/// catalog order.
pub fn run(filter: Option<&Regex>, limits: &Limits) -> CatalogSummary {
    let selected: Vec<&Entry> = ENTRIES.iter().filter(|e| filter.is_none_or(|r| r.is_match(e.name))).collect();
    let entries: Vec<EntryResult> = selected.par_iter().map(|e| run_entry(e, limits)).collect();
    let passed = entries.iter().filter(|e| e.passed).count();
    CatalogSummary { schema_version: SCHEMA_VERSION, passed, failed: entries.len() - passed, entries }
}
