//! Versioned report documents and their text rendering.

use std::fmt::Write as _;
use std::time::Duration;

use germlab_core::family::{ConservationReport, FamilyVerdict, PointSet, Semicontinuity, Tri};
use germlab_core::germ::GermSummary;
use germlab_core::image_milnor::ImageMilnor;
use germlab_core::multiple_points::DkAnalysis;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Weights {
    pub weights: Vec<String>,
    pub degrees: Vec<String>,
}

/// Output of `germlab analyze`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub schema_version: u32,
    pub germ: GermSummary,
    pub coranks: Vec<usize>,
    pub notes: Vec<String>,
    pub marar_mond: Vec<DkAnalysis>,
    pub s: usize,
    pub d: usize,
    pub stable: bool,
    pub a_finite: bool,
    /// `stable`, `A-finite, unstable` or `not A-finite`.
    pub verdict: String,
    pub alt_milnor: Option<ImageMilnor>,
    pub mu_image: Option<u64>,
    /// δ and `δ - s + 1` for curves.
    pub delta: Option<u64>,
    pub mu_image_curve: Option<u64>,
    pub weights: Option<Weights>,
    /// Set when some invariant falls outside the supported cases.
    pub unsupported: Option<String>,
}

/// Output of `germlab family`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub schema_version: u32,
    pub germ: GermSummary,
    pub parameter: String,
    pub deformation: Vec<String>,
    pub samples: Vec<String>,
    pub verdict: FamilyVerdict,
    pub semicontinuity: Option<Semicontinuity>,
}

/// Wall-clock time per pipeline stage; shown in text output only so that
/// JSON stays byte-identical across runs.
#[derive(Debug, Clone, Default)]
pub struct Timings(pub Vec<(&'static str, Duration)>);

impl Timings {
    pub fn render(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|(k, d)| format!("{k} {:.1?}", d)).collect();
        format!("timings: {}\n", parts.join(", "))
    }
}

fn tri(t: Tri) -> &'static str {
    match t {
        Tri::Yes => "yes",
        Tri::No => "no",
        Tri::Undetermined => "undetermined",
    }
}

impl AnalyzeReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let g = &self.germ;
        let _ = writeln!(out, "germ {} (n = {}, s = {})", g.name, g.n, self.s);
        for (i, b) in g.branches.iter().enumerate() {
            let _ = writeln!(out, "  branch {} at ({}): ({})  corank {}", i + 1, g.base_points[i].join(", "), b.join(", "), self.coranks[i]);
        }
        for n in &self.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        let _ = writeln!(out, "multiple point spaces:");
        let _ = writeln!(out, "  {:>2}  {:<12} {:>8} {:>4} {:>9}  verdict", "k", "tuple", "expected", "dim", "colength");
        for e in &self.marar_mond {
            let tuple: Vec<String> = e.tuple.iter().map(|b| b.to_string()).collect();
            let col = e.colength.map_or("-".to_string(), |c| c.to_string());
            let _ = writeln!(
                out,
                "  {:>2}  {:<12} {:>8} {:>4} {:>9}  {}",
                e.k,
                format!("({})", tuple.join(",")),
                e.expected_dim,
                e.dim,
                col,
                e.verdict
            );
        }
        let _ = writeln!(out, "s = {}, d = {}", self.s, self.d);
        if let Some(w) = &self.weights {
            let _ = writeln!(out, "weights ({}), degrees ({})", w.weights.join(", "), w.degrees.join(", "));
        }
        if let Some(m) = &self.alt_milnor {
            for e in &m.table {
                let _ = writeln!(out, "mu_{}^Alt = {}  ({:?})", e.k, e.value, e.method);
            }
            if m.correction > 0 {
                let _ = writeln!(out, "correction C(s-1, d) = {}", m.correction);
            }
        }
        if let Some(mu) = self.mu_image {
            let _ = writeln!(out, "mu_I = {mu}");
        }
        if let (Some(d), Some(m)) = (self.delta, self.mu_image_curve) {
            let _ = writeln!(out, "delta = {d}, delta - s + 1 = {m}");
        }
        if let Some(u) = &self.unsupported {
            let _ = writeln!(out, "unsupported: {u}");
        }
        let _ = writeln!(out, "verdict: {}", self.verdict);
        out
    }
}

fn render_points(out: &mut String, label: &str, p: &PointSet) {
    if p.is_empty() {
        let _ = writeln!(out, "    {label}: none");
        return;
    }
    let _ = writeln!(out, "    {label}:");
    for pt in &p.points {
        let srcs: Vec<String> = pt.source.iter().map(|s| format!("({})", s.join(", "))).collect();
        let _ = writeln!(out, "      {} -> ({})", srcs.join(" "), pt.target.join(", "));
    }
    for c in &p.components {
        let fixed: Vec<String> = c.fixed.iter().map(|(v, x)| format!("{v} = {x}")).collect();
        let _ = writeln!(
            out,
            "      {}: roots of {}{}{}",
            c.variable,
            c.minimal_polynomial,
            if fixed.is_empty() { String::new() } else { format!(" with {}", fixed.join(", ")) },
            if c.certified { "" } else { " (irreducibility not certified)" }
        );
    }
    if p.positive_dimensional {
        let _ = writeln!(out, "      positive-dimensional component");
    }
}

fn render_conservation(out: &mut String, c: &ConservationReport) {
    let _ = writeln!(
        out,
        "    conservation: mu_I(f) = {} = defect {} + local sum {}{}",
        c.mu_total,
        c.defect,
        c.local_sum,
        if c.partial { " (partial)" } else { "" }
    );
    for (t, m) in &c.local {
        let _ = writeln!(out, "      mu_I over ({}) = {m}", t.join(", "));
    }
    for n in &c.notes {
        let _ = writeln!(out, "      note: {n}");
    }
}

impl FamilyReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let v = &self.verdict;
        let _ = writeln!(out, "family {} with parameter {}", self.germ.name, self.parameter);
        let _ = writeln!(out, "  deformation: ({})", self.deformation.join(", "));
        let _ = writeln!(out, "  origin-preserving: {}", v.origin_preserving);
        if let Some(m) = v.central_mu_image {
            let _ = writeln!(out, "  mu_I(f_0) = {m}");
        }
        for s in &v.samples {
            let _ = writeln!(out, "  {} = {}: f = ({})", self.parameter, s.parameter_value, s.fiber.join(", "));
            let opt = |o: Option<u64>| o.map_or("-".to_string(), |v| v.to_string());
            let _ = writeln!(
                out,
                "    s = {}, d = {}, mu_I at origin = {}",
                opt(s.s.map(|v| v as u64)),
                opt(s.d.map(|v| v as u64)),
                opt(s.mu_at_origin)
            );
            render_points(&mut out, "instability points", &s.instability_points);
            if let Some(z) = &s.zero_stable_points {
                render_points(&mut out, "0-stable points off the origin", z);
            }
            if let Some(c) = &s.conservation {
                render_conservation(&mut out, c);
            }
            for n in &s.notes {
                let _ = writeln!(out, "    note: {n}");
            }
        }
        if let Some(sc) = &self.semicontinuity {
            let _ = writeln!(out, "  semicontinuity at sampled points: {}", if sc.holds { "holds" } else { "VIOLATED" });
        }
        for n in &v.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        let _ = writeln!(out, "  good: {}", tri(v.good));
        let _ = writeln!(out, "  excellent: {}", tri(v.excellent));
        let _ = writeln!(out, "  constant mu_I criterion: {}", if v.houston_applied { "applied" } else { "not applied" });
        out
    }
}
