//! Multiple point spaces `Dᵏ(f)` of corank-one germs via iterated divided
//! differences, and the stability / finite-determinacy criterion read off
//! from their local geometry at the origin.

use std::collections::HashMap;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bases::{local_standard_basis, Ideal, Limits};
use crate::error::Result;
use crate::germ::GermSpec;
use crate::poly::{jacobian_matrix, minors, Matrix, MonomialOrder, PolyRing, Polynomial, RingRef};
use crate::{Poly, Rational};

/// Complete homogeneous symmetric polynomial `h_d` in the given variables.
fn complete_homogeneous(ring: &RingRef, vars: &[usize], d: u32, memo: &mut HashMap<(usize, u32), Poly>) -> Poly {
    if let Some(p) = memo.get(&(vars.len(), d)) {
        return p.clone();
    }
    let out = match vars {
        [] => {
            if d == 0 {
                Polynomial::one(ring)
            } else {
                Polynomial::zero(ring)
            }
        }
        [v] => Polynomial::var_at(ring, *v).pow(d),
        [v, rest @ ..] => {
            let mut acc = Polynomial::zero(ring);
            let yv = Polynomial::var_at(ring, *v);
            for a in 0..=d {
                acc = &acc + &(&yv.pow(a) * &complete_homogeneous(ring, rest, d - a, memo));
            }
            acc
        }
    };
    memo.insert((vars.len(), d), out.clone());
    out
}

/// The divided difference `f[y_{s₁}, …, y_{s_m}]` of `f` with respect to its
/// variable `y`, written in `ring`: other variables of `f` are mapped by
/// name and `slots` are indices of `ring` variables.
///
/// For `f = Σ c_j y^j` this is `Σ c_j h_{j-m+1}(y_{s₁}, …, y_{s_m})`.
pub fn divided_difference(f: &Poly, y: usize, ring: &RingRef, slots: &[usize]) -> Result<Poly> {
    let m = slots.len() as u32;
    assert!(m >= 1, "at least one slot");
    let coeffs = f.coefficients_in(y);
    let mut memo = HashMap::new();
    let mut out = Polynomial::zero(ring);
    // coefficients are written in f's ring with y absent; map by name
    let yname = &f.ring().vars()[y];
    for (j, c) in coeffs.iter().enumerate() {
        if c.is_zero() || (j as u32) + 1 < m {
            continue;
        }
        let c = c.substitute_named(&[(yname.as_str(), Polynomial::zero(ring))], ring)?;
        out = &out + &(&c * &complete_homogeneous(ring, slots, j as u32 + 1 - m, &mut memo));
    }
    Ok(out)
}

/// All divided differences `f[y₁..y_m]` for `m = 1..=slots.len()`.
pub fn divided_differences(f: &Poly, y: usize, ring: &RingRef, slots: &[usize]) -> Result<Vec<Poly>> {
    (1..=slots.len()).map(|m| divided_difference(f, y, ring, &slots[..m])).collect()
}

/// The ideal of `Dᵏ(f)` for one tuple of branches.
#[derive(Debug, Clone)]
pub struct DkIdeal {
    pub k: usize,
    /// Branch index per slot (0-based, non-decreasing).
    pub tuple: Vec<usize>,
    /// Ring `x₁ … x_{n-1}, y₁ … y_k`.
    pub ring: RingRef,
    pub ideal: Ideal<Rational>,
    /// Ring indices of the `y` slots.
    pub slots: Vec<usize>,
}

fn slot_names(g: &GermSpec, k: usize) -> Vec<String> {
    let y = &g.source_vars()[g.n() - 1];
    let plain: Vec<String> = (1..=k).map(|i| format!("{y}{i}")).collect();
    if plain.iter().any(|s| g.ring().index_of(s).is_some()) {
        (1..=k).map(|i| format!("{y}_{i}")).collect()
    } else {
        plain
    }
}

/// Builds `Dᵏ` for a non-decreasing tuple of branch indices. Within a run
/// of equal branches the ideal is generated by the divided differences of
/// `p` and `q` of orders `2..=run length`; consecutive runs are glued by
/// equating `p` and `q` at their first slots. All branches share the `x`
/// block since their first `n - 1` components are coordinates.
pub fn dk_ideal(g: &GermSpec, tuple: &[usize]) -> Result<DkIdeal> {
    let k = tuple.len();
    let n = g.n();
    let mut names: Vec<String> = g.source_vars()[..n - 1].to_vec();
    names.extend(slot_names(g, k));
    let ring = PolyRing::new(&names, MonomialOrder::DegRevLex)?;
    let slots: Vec<usize> = (n - 1..n - 1 + k).collect();
    let y = n - 1;
    let mut gens = Vec::new();
    let mut start = 0;
    let mut prev_first: Option<(usize, usize)> = None;
    while start < k {
        let b = tuple[start];
        let end = (start..k).find(|&i| tuple[i] != b).unwrap_or(k);
        let branch = &g.branches()[b];
        for f in [branch.p(), branch.q()] {
            for m in 2..=end - start {
                gens.push(divided_difference(f, y, &ring, &slots[start..start + m])?);
            }
        }
        if let Some((pb, ps)) = prev_first {
            let other = &g.branches()[pb];
            for (f, h) in [(other.p(), branch.p()), (other.q(), branch.q())] {
                let a = divided_difference(f, y, &ring, &[slots[ps]])?;
                let c = divided_difference(h, y, &ring, &[slots[start]])?;
                gens.push(&a - &c);
            }
        }
        prev_first = Some((b, start));
        start = end;
    }
    let ideal = Ideal::new(&ring, gens)?;
    Ok(DkIdeal { k, tuple: tuple.to_vec(), ring, ideal, slots })
}

/// Rank of the Jacobian matrix of `gens` (all ring variables) at `point`.
pub fn jacobian_rank_at(gens: &[Poly], point: &[Rational]) -> usize {
    let Some(first) = gens.first() else { return 0 };
    let vars: Vec<usize> = (0..first.ring().nvars()).collect();
    let jac = jacobian_matrix(gens, &vars);
    let rows = jac.iter().map(|r| r.iter().map(|p| p.evaluate(point)).collect()).collect();
    Matrix::from_rows(rows).rank()
}

/// Local type of a multiple point space at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Empty,
    Smooth,
    Icis,
    FatPoints,
    Fails,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Empty => "empty",
            Verdict::Smooth => "smooth",
            Verdict::Icis => "icis",
            Verdict::FatPoints => "fat-points",
            Verdict::Fails => "fails",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DkAnalysis {
    pub k: usize,
    /// 1-based branch labels.
    pub tuple: Vec<usize>,
    pub expected_dim: i64,
    /// Local dimension at the origin; `-1` when empty.
    pub dim: i64,
    /// Local colength when zero-dimensional.
    pub colength: Option<u64>,
    pub jacobian_rank: usize,
    pub verdict: Verdict,
}

/// Local analysis at the origin of one `Dᵏ` tuple ideal.
pub fn analyze_dk(g: &GermSpec, dk: &DkIdeal, limits: &Limits) -> Result<DkAnalysis> {
    let n = g.n() as i64;
    let k = dk.k as i64;
    let codim = 2 * (dk.k - 1);
    let expected_dim = n - k + 1;
    let local_ring = dk.ring.with_order(MonomialOrder::NegDegRevLex);
    let local = dk.ideal.to_ring(&local_ring)?;
    let sb = local_standard_basis(&local, limits)?;
    let dim = sb.krull_dimension();
    let origin = vec![Rational::from_integer(0.into()); dk.ring.nvars()];
    let jacobian_rank = jacobian_rank_at(dk.ideal.gens(), &origin);
    let colength = if dim == 0 { sb.colength().finite() } else { None };
    let verdict = if dim < 0 {
        Verdict::Empty
    } else if expected_dim >= 1 {
        if dim != expected_dim {
            Verdict::Fails
        } else if jacobian_rank == codim {
            Verdict::Smooth
        } else {
            let vars: Vec<usize> = (0..dk.ring.nvars()).collect();
            let jac = jacobian_matrix(dk.ideal.gens(), &vars);
            let sing = local.with(minors(&local_ring, &jac_to(&jac, &local_ring)?, codim))?;
            if local_standard_basis(&sing, limits)?.krull_dimension() <= 0 {
                Verdict::Icis
            } else {
                Verdict::Fails
            }
        }
    } else if dim == 0 {
        if expected_dim == 0 && jacobian_rank == codim {
            Verdict::Smooth
        } else {
            Verdict::FatPoints
        }
    } else {
        Verdict::Fails
    };
    Ok(DkAnalysis {
        k: dk.k,
        tuple: dk.tuple.iter().map(|b| b + 1).collect(),
        expected_dim,
        dim,
        colength,
        jacobian_rank,
        verdict,
    })
}

fn jac_to(jac: &[Vec<Poly>], ring: &RingRef) -> Result<Vec<Vec<Poly>>> {
    jac.iter().map(|r| r.iter().map(|p| p.to_ring(ring)).collect()).collect()
}

/// Non-decreasing `k`-tuples of branch indices.
pub fn branch_tuples(s: usize, k: usize) -> Vec<Vec<usize>> {
    (0..s).combinations_with_replacement(k).collect()
}

/// Multiple point spaces for `k = 2..=n+2` with the resulting verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MararMondReport {
    pub germ: String,
    pub n: usize,
    pub s: usize,
    pub d: usize,
    pub entries: Vec<DkAnalysis>,
    pub stable: bool,
    pub a_finite: bool,
}

impl MararMondReport {
    pub fn entries_for(&self, k: usize) -> impl Iterator<Item = &DkAnalysis> {
        self.entries.iter().filter(move |e| e.k == k)
    }
}

/// Analyses every tuple class for `k = 2..=n+2`, in parallel over tuples.
///
/// Stable: every `Dᵏ` is empty or smooth of the expected dimension, and
/// empty when the expected dimension is negative. A-finite: `Dᵏ` of positive
/// expected dimension is empty, smooth or an ICIS, and of non-positive
/// expected dimension is empty, smooth or zero-dimensional.
pub fn marar_mond_report(g: &GermSpec, limits: &Limits) -> Result<MararMondReport> {
    let n = g.n();
    let jobs: Vec<Vec<usize>> = (2..=n + 2).flat_map(|k| branch_tuples(g.s(), k)).collect();
    let entries = jobs
        .par_iter()
        .map(|t| dk_ideal(g, t).and_then(|dk| analyze_dk(g, &dk, limits)))
        .collect::<Result<Vec<_>>>()?;
    let stable = entries.iter().all(|e| match e.verdict {
        Verdict::Empty => true,
        Verdict::Smooth => e.expected_dim >= 0,
        _ => false,
    });
    let a_finite = entries.iter().all(|e| match e.verdict {
        Verdict::Empty | Verdict::Smooth => true,
        Verdict::Icis => e.expected_dim >= 1,
        Verdict::FatPoints => e.expected_dim <= 0,
        Verdict::Fails => false,
    });
    let d = entries.iter().filter(|e| e.k <= n + 1 && e.dim >= 0).map(|e| e.k).max().unwrap_or(1);
    Ok(MararMondReport { germ: g.name().to_string(), n, s: g.s(), d, entries, stable, a_finite })
}

/// `(s, d)`: branch count and the largest `k ≤ n+1` with `Dᵏ(f) ≠ ∅` at the
/// origin (`1` if none).
pub fn s_and_d(g: &GermSpec, limits: &Limits) -> Result<(usize, usize)> {
    let n = g.n();
    let mut d = 1;
    for k in 2..=n + 1 {
        let mut any = false;
        for t in branch_tuples(g.s(), k) {
            let dk = dk_ideal(g, &t)?;
            let local = dk.ideal.to_ring(&dk.ring.with_order(MonomialOrder::NegDegRevLex))?;
            if !local_standard_basis(&local, limits)?.is_unit() {
                any = true;
                break;
            }
        }
        if any {
            d = k;
        }
    }
    Ok((g.s(), d))
}

/// `Σ_k` acts on `Dᵏ` rings by permuting the `y` slots; returns the ring
/// variable permutation for a slot permutation.
pub fn slot_permutation(dk: &DkIdeal, sigma: &[usize]) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..dk.ring.nvars()).collect();
    for (i, &j) in sigma.iter().enumerate() {
        perm[dk.slots[i]] = dk.slots[j];
    }
    perm
}
