//! One-parameter families: instability and 0-stable loci, conservation of
//! the image Milnor number, semicontinuity, and good/excellent verdicts.
//!
//! Germ-level questions ("do instabilities leave the parameter axis near the
//! origin?") are decided on the whole family: a locus `L` in source ×
//! parameter space is saturated by the ideal `A` of the parameter axis, and
//! the closure of `V(L) ∖ V(A)` contains the origin iff every generator of
//! `L : A^∞` vanishes there. Point lists at sampled parameter values are
//! gathered alongside as evidence.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bases::{saturation_by_ideal, solve_zero_dimensional, Ideal, Limits, SolveComponent, Solutions};
use crate::error::{Error, Result};
use crate::germ::{fiber_germ, origin_preserving_check, GermSpec, RawBranch, UnfoldingSpec};
use crate::image_milnor::mu_image;
use crate::multiple_points::{dk_ideal, marar_mond_report, s_and_d};
use crate::poly::{jacobian_matrix, minors, Polynomial, RingRef};
use crate::{Poly, Rational};

/// Default sampled parameter values.
pub fn default_samples() -> Vec<Rational> {
    [(1, 1), (-1, 1), (1, 2), (-3, 1)].iter().map(|&(a, b)| Rational::new(a.into(), b.into())).collect()
}

/// Three-valued answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tri {
    Yes,
    No,
    Undetermined,
}

/// A rational point of a locus: source point(s) and their common image.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocusPoint {
    pub source: Vec<Vec<String>>,
    pub target: Vec<String>,
}

/// Points of a locus of one fiber.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSet {
    pub points: Vec<LocusPoint>,
    /// Non-rational pieces, by minimal polynomial.
    pub components: Vec<SolveComponent>,
    pub positive_dimensional: bool,
}

impl PointSet {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.components.is_empty() && !self.positive_dimensional
    }

    /// Drops rational points whose only source point is the origin.
    fn without_origin(mut self) -> Self {
        self.points.retain(|p| !p.source.iter().all(|s| s.iter().all(|c| c == "0")));
        self
    }

    fn absorb(&mut self, other: PointSet) {
        for p in other.points {
            if !self.points.contains(&p) {
                self.points.push(p);
            }
        }
        self.components.extend(other.components);
        self.positive_dimensional |= other.positive_dimensional;
    }
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}

fn mono_branch(g: &GermSpec) -> Result<&[Poly]> {
    if !g.is_mono() {
        return Err(Error::Unsupported("family analysis is implemented for mono-germ families".into()));
    }
    Ok(g.branches()[0].components())
}

fn image_of(g: &GermSpec, src: &[Rational]) -> Vec<Rational> {
    g.branches()[0].components().iter().map(|c| c.evaluate(src)).collect()
}

/// Points of a `Dᵏ` locus `(x, y₁ … y_k)` turned into source/target points.
fn dk_points(g: &GermSpec, sol: Solutions) -> PointSet {
    let n = g.n();
    let mut out = PointSet { components: sol.components, positive_dimensional: sol.positive_dimensional, ..Default::default() };
    for pt in sol.points {
        let x = &pt[..n - 1];
        let mut sources: Vec<Vec<Rational>> = Vec::new();
        for yv in &pt[n - 1..] {
            let mut s = x.to_vec();
            s.push(yv.clone());
            if !sources.contains(&s) {
                sources.push(s);
            }
        }
        let target = strings(&image_of(g, &sources[0]));
        let lp = LocusPoint { source: sources.iter().map(|s| strings(s)).collect(), target };
        if !out.points.contains(&lp) {
            out.points.push(lp);
        }
    }
    out
}

/// Ideal of points where `Dᵏ` fails to be smooth of the expected dimension:
/// its `c`-minors locus (`c = 2(k-1)`), or all of `Dᵏ` when the expected
/// dimension is negative. Jacobians skip the variables in `skip`.
fn dk_instability_ideal(g: &GermSpec, k: usize, n_fiber: usize, skip: &[usize]) -> Result<(RingRef, Ideal<Rational>)> {
    let dk = dk_ideal(g, &vec![0; k])?;
    if k > n_fiber + 1 {
        return Ok((dk.ring.clone(), dk.ideal));
    }
    let vars: Vec<usize> = (0..dk.ring.nvars()).filter(|v| !skip.contains(v)).collect();
    let jac = jacobian_matrix(dk.ideal.gens(), &vars);
    let ideal = dk.ideal.with(minors(&dk.ring, &jac, 2 * (k - 1)))?;
    Ok((dk.ring.clone(), ideal))
}

/// Points where the fiber is not locally stable (global representative).
pub fn instability_locus(fiber: &GermSpec, limits: &Limits) -> Result<PointSet> {
    mono_branch(fiber)?;
    let n = fiber.n();
    let mut out = PointSet::default();
    for k in 2..=n + 2 {
        let (_, ideal) = dk_instability_ideal(fiber, k, n, &[])?;
        out.absorb(dk_points(fiber, solve_zero_dimensional(&ideal, limits)?));
    }
    Ok(out)
}

/// Ideals of 0-stable singularities in a germ's source (or multiple point)
/// coordinates: cross-caps and triple points for `n = 2`, double points for
/// `n = 1`.
fn zero_stable_ideals(g: &GermSpec) -> Result<Vec<(bool, Ideal<Rational>)>> {
    let comps = mono_branch(g)?;
    let n = g.n();
    let y = n - 1;
    match n {
        1 => Ok(vec![(true, dk_ideal(g, &[0, 0])?.ideal)]),
        2 => {
            let crosscap = Ideal::new(g.ring(), vec![comps[n - 1].derivative(y), comps[n].derivative(y)])?;
            Ok(vec![(false, crosscap), (true, dk_ideal(g, &[0, 0, 0])?.ideal)])
        }
        _ => Err(Error::Unsupported(format!("0-stable classification for n = {n}"))),
    }
}

/// Off-origin 0-stable points of a fiber (`n ≤ 2`).
pub fn zero_stable_locus(fiber: &GermSpec, limits: &Limits) -> Result<PointSet> {
    let mut out = PointSet::default();
    for (is_dk, ideal) in zero_stable_ideals(fiber)? {
        let sol = solve_zero_dimensional(&ideal, limits)?;
        let set = if is_dk {
            dk_points(fiber, sol)
        } else {
            PointSet {
                points: sol
                    .points
                    .iter()
                    .map(|p| LocusPoint { source: vec![strings(p)], target: strings(&image_of(fiber, p)) })
                    .collect(),
                components: sol.components,
                positive_dimensional: sol.positive_dimensional,
            }
        };
        out.absorb(set);
    }
    Ok(out.without_origin())
}

/// Whether the closure of `V(L) ∖ {non-parameter vars = 0}` contains the origin.
fn leaves_axis_at_origin(ideal: &Ideal<Rational>, params: &[usize], limits: &Limits) -> Result<bool> {
    let ring = ideal.ring();
    let axis: Vec<Poly> = (0..ring.nvars()).filter(|v| !params.contains(v)).map(|v| Polynomial::var_at(ring, v)).collect();
    let sat = saturation_by_ideal(ideal, &Ideal::new(ring, axis)?, limits)?;
    let origin = vec![Rational::from_integer(0.into()); ring.nvars()];
    Ok(sat.vanishes_at(&origin))
}

fn param_indices(ring: &RingRef, params: &[String]) -> Vec<usize> {
    params.iter().filter_map(|p| ring.index_of(p)).collect()
}

/// Germ-level goodness: no instabilities of `f_t` accumulate at the origin
/// off the parameter axis.
pub fn germ_level_good(u: &UnfoldingSpec, limits: &Limits) -> Result<bool> {
    let big = u.as_germ()?;
    mono_branch(&big)?;
    let n = u.germ().n();
    for k in 2..=n + 2 {
        let skip_names = u.params();
        let dk = dk_ideal(&big, &vec![0; k])?;
        let skip = param_indices(&dk.ring, skip_names);
        let (ring, ideal) = dk_instability_ideal(&big, k, n, &skip)?;
        if leaves_axis_at_origin(&ideal, &param_indices(&ring, skip_names), limits)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Germ-level absence of 0-stable singularities off the parameter axis
/// (`n ≤ 2`).
pub fn germ_level_zero_stable_free(u: &UnfoldingSpec, limits: &Limits) -> Result<bool> {
    let big = u.as_germ()?;
    let n = u.germ().n();
    if n > 2 {
        return Err(Error::Unsupported(format!("0-stable classification for n = {n}")));
    }
    let comps = mono_branch(&big)?;
    let y = big.n() - 1;
    let mut loci = Vec::new();
    if n == 1 {
        loci.push(dk_ideal(&big, &[0, 0])?.ideal);
    } else {
        let len = comps.len();
        loci.push(Ideal::new(big.ring(), vec![comps[len - 2].derivative(y), comps[len - 1].derivative(y)])?);
        loci.push(dk_ideal(&big, &[0, 0, 0])?.ideal);
    }
    for l in loci {
        if leaves_axis_at_origin(&l, &param_indices(l.ring(), u.params()), limits)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `μ_I(f) = β + Σ_y μ_I(f_u; y)`, with `β` the defect.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConservationReport {
    pub sample: String,
    pub mu_total: u64,
    pub local_sum: u64,
    pub defect: i64,
    /// Local image Milnor numbers per target point.
    pub local: Vec<(Vec<String>, u64)>,
    /// Some instability point could not be handled (non-rational, positive
    /// dimensional, or uncomputable).
    pub partial: bool,
    pub notes: Vec<String>,
}

/// The multi-germ of `fiber` over a rational target point.
fn germ_over(fiber: &GermSpec, target: &[Rational], limits: &Limits) -> Result<Option<GermSpec>> {
    let comps = mono_branch(fiber)?;
    let ring = fiber.ring();
    let eqs: Vec<Poly> = comps
        .iter()
        .zip(target)
        .map(|(c, t)| c - &Polynomial::constant(ring, t.clone()))
        .collect();
    let sol = solve_zero_dimensional(&Ideal::new(ring, eqs.clone())?, limits)?;
    if !sol.components.is_empty() || sol.positive_dimensional || sol.points.is_empty() {
        return Ok(None);
    }
    // components of f - T in the fiber's original coordinates
    let base = fiber.branches()[0].base_point();
    let sh: Vec<(usize, Poly)> = base
        .iter()
        .enumerate()
        .map(|(v, a)| (v, &Polynomial::var_at(ring, v) - &Polynomial::constant(ring, a.clone())))
        .collect();
    let original = eqs.iter().map(|e| e.substitute(&sh, ring)).collect::<Result<Vec<_>>>()?;
    let raw = sol
        .points
        .iter()
        .map(|p| RawBranch { base_point: p.iter().zip(base).map(|(a, b)| a + b).collect(), components: original.clone() })
        .collect();
    let label: Vec<String> = strings(target);
    Ok(Some(GermSpec::new(&format!("{} over ({})", fiber.name(), label.join(", ")), ring, raw)?))
}

fn conservation_with(u: &UnfoldingSpec, mu_total: u64, value: &Rational, limits: &Limits) -> Result<ConservationReport> {
    let fiber = fiber_germ(u, &[(u.params()[0].as_str(), value.clone())])?;
    let mut notes = Vec::new();
    let mut partial = false;
    let locus = instability_locus(&fiber, limits)?;
    if !locus.components.is_empty() {
        partial = true;
        notes.push(format!("{} non-rational instability component(s)", locus.components.len()));
    }
    if locus.positive_dimensional {
        partial = true;
        notes.push("positive-dimensional instability locus".into());
    }
    let n1 = fiber.n() + 1;
    let mut targets: Vec<Vec<Rational>> = vec![vec![Rational::from_integer(0.into()); n1]];
    for p in &locus.points {
        let t: Vec<Rational> = p.target.iter().map(|s| s.parse().expect("printed rational")).collect();
        if !targets.contains(&t) {
            targets.push(t);
        }
    }
    let mut local = Vec::new();
    for t in &targets {
        match germ_over(&fiber, t, limits).and_then(|g| g.map(|g| mu_image(&g, limits)).transpose()) {
            Ok(Some(m)) => local.push((strings(t), m.mu_image)),
            Ok(None) => {
                partial = true;
                notes.push(format!("preimage of ({}) is not rational", strings(t).join(", ")));
            }
            Err(e) => {
                partial = true;
                notes.push(format!("μ_I over ({}): {e}", strings(t).join(", ")));
            }
        }
    }
    let local_sum: u64 = local.iter().map(|(_, m)| m).sum();
    let defect = mu_total as i64 - local_sum as i64;
    if defect < 0 && !partial {
        return Err(Error::Internal(format!(
            "negative conservation defect {defect} at {}: local sum {local_sum} exceeds μ_I = {mu_total}",
            value
        )));
    }
    Ok(ConservationReport { sample: value.to_string(), mu_total, local_sum, defect, local, partial, notes })
}

pub fn conservation_report(u: &UnfoldingSpec, sample: &Rational, limits: &Limits) -> Result<ConservationReport> {
    let total = mu_image(u.germ(), limits)?.mu_image;
    conservation_with(u, total, sample, limits)
}

/// Result of the semicontinuity check: witnesses are `(sample, target, μ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Semicontinuity {
    pub holds: bool,
    pub mu_total: u64,
    pub witnesses: Vec<(String, Vec<String>, u64)>,
}

/// `μ_I(f) ≥ μ_I(f_u; y)` at every sampled instability point.
pub fn semicontinuity_check(u: &UnfoldingSpec, samples: &[Rational], limits: &Limits) -> Result<Semicontinuity> {
    let mu_total = mu_image(u.germ(), limits)?.mu_image;
    let reports = samples.par_iter().map(|s| conservation_with(u, mu_total, s, limits)).collect::<Result<Vec<_>>>()?;
    let mut witnesses = Vec::new();
    let mut holds = true;
    for r in reports {
        for (t, m) in r.local {
            holds &= m <= mu_total;
            witnesses.push((r.sample.clone(), t, m));
        }
    }
    Ok(Semicontinuity { holds, mu_total, witnesses })
}

/// Per-sample evidence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySample {
    pub parameter_value: String,
    pub fiber: Vec<String>,
    pub s: Option<usize>,
    pub d: Option<usize>,
    /// μ_I of `f_t` at the origin.
    pub mu_at_origin: Option<u64>,
    pub instability_points: PointSet,
    pub zero_stable_points: Option<PointSet>,
    pub conservation: Option<ConservationReport>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyVerdict {
    pub origin_preserving: bool,
    pub central_mu_image: Option<u64>,
    pub good: Tri,
    pub excellent: Tri,
    /// μ_I(f_t; 0) constant on the samples and equal to μ_I(f).
    pub houston_applied: bool,
    pub samples: Vec<FamilySample>,
    pub notes: Vec<String>,
}

fn sample_evidence(u: &UnfoldingSpec, value: &Rational, central: Option<u64>, limits: &Limits) -> FamilySample {
    let mut notes = Vec::new();
    let mut s = FamilySample {
        parameter_value: value.to_string(),
        fiber: Vec::new(),
        s: None,
        d: None,
        mu_at_origin: None,
        instability_points: PointSet::default(),
        zero_stable_points: None,
        conservation: None,
        notes: Vec::new(),
    };
    let fiber = match fiber_germ(u, &[(u.params()[0].as_str(), value.clone())]) {
        Ok(f) => f,
        Err(e) => {
            s.notes.push(format!("fiber: {e}"));
            return s;
        }
    };
    s.fiber = fiber.branches()[0].components().iter().map(|c| c.to_string()).collect();
    match s_and_d(&fiber, limits) {
        Ok((ss, dd)) => {
            s.s = Some(ss);
            s.d = Some(dd);
        }
        Err(e) => notes.push(format!("s, d: {e}")),
    }
    match marar_mond_report(&fiber, limits).and_then(|r| {
        if r.a_finite {
            crate::image_milnor::mu_image_with(&fiber, &r, limits).map(|m| Some(m.mu_image))
        } else {
            Ok(None)
        }
    }) {
        Ok(Some(m)) => s.mu_at_origin = Some(m),
        Ok(None) => notes.push("fiber is not A-finite at the origin".into()),
        Err(e) => notes.push(format!("μ_I at origin: {e}")),
    }
    match instability_locus(&fiber, limits) {
        Ok(l) => s.instability_points = l,
        Err(e) => notes.push(format!("instability locus: {e}")),
    }
    if fiber.n() <= 2 {
        match zero_stable_locus(&fiber, limits) {
            Ok(z) => s.zero_stable_points = Some(z),
            Err(e) => notes.push(format!("0-stable locus: {e}")),
        }
    }
    if let Some(total) = central {
        match conservation_with(u, total, value, limits) {
            Ok(c) => s.conservation = Some(c),
            Err(e) => notes.push(format!("conservation: {e}")),
        }
    }
    s.notes = notes;
    s
}

/// Goodness and excellence of a one-parameter unfolding, decided at germ
/// level and supported by evidence at the sampled values.
pub fn excellence_verdict(u: &UnfoldingSpec, samples: &[Rational], limits: &Limits) -> Result<FamilyVerdict> {
    if u.params().len() != 1 {
        return Err(Error::Unsupported("family analysis handles one-parameter unfoldings".into()));
    }
    mono_branch(u.germ())?;
    let mut notes = Vec::new();
    let origin_preserving = origin_preserving_check(u);
    let central = match mu_image(u.germ(), limits) {
        Ok(m) => Some(m.mu_image),
        Err(e) => {
            notes.push(format!("central μ_I: {e}"));
            None
        }
    };
    let mut sorted = samples.to_vec();
    sorted.sort();
    sorted.dedup();
    let evidence: Vec<FamilySample> = sorted.par_iter().map(|v| sample_evidence(u, v, central, limits)).collect();

    let houston_applied = central.is_some()
        && !evidence.is_empty()
        && evidence.iter().all(|s| s.mu_at_origin == central);
    if houston_applied {
        notes.push("μ_I(f_t; 0) is constant on the sampled values; constancy is only checked at those values".into());
    }

    let good = if !origin_preserving {
        notes.push("unfolding is not origin-preserving".into());
        Tri::No
    } else {
        match germ_level_good(u, limits) {
            Ok(true) => Tri::Yes,
            Ok(false) => {
                notes.push("instabilities of f_t accumulate at the origin off the parameter axis".into());
                Tri::No
            }
            Err(e) => {
                notes.push(format!("goodness: {e}"));
                Tri::Undetermined
            }
        }
    };
    let excellent = match good {
        Tri::No => Tri::No,
        Tri::Undetermined => Tri::Undetermined,
        Tri::Yes => match germ_level_zero_stable_free(u, limits) {
            Ok(true) => Tri::Yes,
            Ok(false) => {
                notes.push("0-stable singularities of f_t approach the origin off the parameter axis".into());
                Tri::No
            }
            Err(e) if e.is_unsupported() => {
                notes.push(format!("excellence: {e}"));
                if houston_applied {
                    notes.push("excellent by the constant-μ_I criterion".into());
                    Tri::Yes
                } else {
                    Tri::Undetermined
                }
            }
            Err(e) => {
                notes.push(format!("excellence: {e}"));
                Tri::Undetermined
            }
        },
    };
    if houston_applied && excellent == Tri::No {
        notes.push("constant μ_I on the samples but excellence fails: μ_I(f_t; 0) must vary at other parameter values".into());
    }
    Ok(FamilyVerdict { origin_preserving, central_mu_image: central, good, excellent, houston_applied, samples: evidence, notes })
}
