//! Driver behind the `germlab` binary: the `analyze`, `family` and
//! `catalog` commands and their report documents.

pub mod catalog;
pub mod report;

use std::time::Instant;

use germlab_core::bases::Limits;
use germlab_core::family::{default_samples, excellence_verdict, semicontinuity_check};
use germlab_core::germ::{parse_germ_file, weighted_homogeneity, GermFile, GermSummary};
use germlab_core::image_milnor::{delta_invariant, mu_image_with};
use germlab_core::multiple_points::marar_mond_report;
use germlab_core::{Error, Rational, Result};

pub use report::{AnalyzeReport, FamilyReport, Timings, SCHEMA_VERSION};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const ERROR: i32 = 1;
    pub const UNSUPPORTED: i32 = 2;
}

pub fn read_germ_file(path: &std::path::Path) -> Result<GermFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    parse_germ_file(&text)
}

/// Full pipeline for one germ: coranks, multiple point spaces, `s` and `d`,
/// alternating Milnor numbers, `μ_I` and the stability verdict.
pub fn analyze(file: &GermFile, limits: &Limits) -> Result<(AnalyzeReport, Timings)> {
    let g = &file.germ;
    let mut timings = Timings::default();
    let clock = Instant::now();
    let mm = marar_mond_report(g, limits)?;
    timings.0.push(("multiple points", clock.elapsed()));

    let mut unsupported = None;
    let clock = Instant::now();
    let alt_milnor = if mm.a_finite {
        match mu_image_with(g, &mm, limits) {
            Ok(m) => Some(m),
            Err(e) if e.is_unsupported() || e.is_resource() => {
                unsupported = Some(e.to_string());
                None
            }
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    timings.0.push(("image Milnor number", clock.elapsed()));

    let (mut delta, mut mu_image_curve) = (None, None);
    if g.n() == 1 && mm.a_finite {
        let clock = Instant::now();
        match delta_invariant(g) {
            Ok(d) => {
                delta = Some(d);
                mu_image_curve = Some(d + 1 - g.s() as u64);
            }
            Err(e) if e.is_resource() => unsupported = unsupported.or(Some(e.to_string())),
            Err(e) => return Err(e),
        }
        timings.0.push(("delta", clock.elapsed()));
    }

    let weights = weighted_homogeneity(g).map(|w| report::Weights {
        weights: w.weights.iter().map(|x| x.to_string()).collect(),
        degrees: w.degrees.iter().map(|x| x.to_string()).collect(),
    });
    let verdict = if mm.stable {
        "stable"
    } else if mm.a_finite {
        "A-finite, unstable"
    } else {
        "not A-finite"
    };
    let report = AnalyzeReport {
        schema_version: SCHEMA_VERSION,
        germ: GermSummary::from(g),
        coranks: g.branches().iter().map(|b| b.corank()).collect(),
        notes: g.notes().to_vec(),
        s: mm.s,
        d: mm.d,
        stable: mm.stable,
        a_finite: mm.a_finite,
        verdict: verdict.to_string(),
        mu_image: alt_milnor.as_ref().map(|m| m.mu_image),
        alt_milnor,
        delta,
        mu_image_curve,
        weights,
        unsupported,
        marar_mond: mm.entries,
    };
    Ok((report, timings))
}

/// Parses `a,b,c` as rationals (`-3`, `1/2`, ...).
pub fn parse_samples(text: &str) -> Result<Vec<Rational>> {
    text.split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<Rational>().map_err(|_| Error::InvalidArgument(format!("invalid sample value `{s}`"))))
        .collect()
}

/// Goodness, excellence, conservation and semicontinuity at the samples
/// (the defaults when `samples` is empty).
pub fn family(file: &GermFile, samples: &[Rational], limits: &Limits) -> Result<(FamilyReport, Timings)> {
    let u = file
        .unfolding
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument("the file has no `unfold` line; one parameter required".into()))?;
    if u.params().len() != 1 {
        return Err(Error::InvalidArgument(format!(
            "one parameter required, found {} ({})",
            u.params().len(),
            u.params().join(", ")
        )));
    }
    let samples = if samples.is_empty() { default_samples() } else { samples.to_vec() };
    let mut timings = Timings::default();
    let clock = Instant::now();
    let verdict = excellence_verdict(u, &samples, limits)?;
    timings.0.push(("verdict", clock.elapsed()));
    let clock = Instant::now();
    let semicontinuity = semicontinuity_check(u, &samples, limits).ok();
    timings.0.push(("semicontinuity", clock.elapsed()));
    let mut sorted = samples.clone();
    sorted.sort();
    sorted.dedup();
    let report = FamilyReport {
        schema_version: SCHEMA_VERSION,
        germ: GermSummary::from(u.germ()),
        parameter: u.params()[0].clone(),
        deformation: u.deformation()[0].iter().map(|p| p.to_string()).collect(),
        samples: sorted.iter().map(|s| s.to_string()).collect(),
        verdict,
        semicontinuity,
    };
    Ok((report, timings))
}

/// Exit code for an error.
pub fn exit_code_for(e: &Error) -> i32 {
    if e.is_unsupported() {
        exit::UNSUPPORTED
    } else {
        exit::ERROR
    }
}

/// Sets the global worker pool size from `GERMLAB_THREADS`, if present.
pub fn configure_threads() -> std::result::Result<(), String> {
    if let Ok(v) = std::env::var("GERMLAB_THREADS") {
        let n: usize = v.trim().parse().map_err(|_| format!("GERMLAB_THREADS must be a positive integer, got `{v}`"))?;
        if n == 0 {
            return Err("GERMLAB_THREADS must be positive".into());
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())?;
    }
    Ok(())
}
