//! Alternating Milnor numbers of multiple point spaces, the image Milnor
//! number, and the curve and radical-membership cross-checks.

use itertools::Itertools;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bases::{local_standard_basis, radical_membership, FiniteAlgebra, Ideal, Limits};
use crate::error::{Error, Resource, Result};
use crate::germ::{build_one_param_stable_unfolding, GermSpec, UnfoldingSpec};
use crate::multiple_points::{dk_ideal, marar_mond_report, slot_permutation, DkIdeal, MararMondReport, Verdict};
use crate::poly::{jacobian_matrix, minors, squarefree_part, sylvester_resultant, EchelonBasis, Matrix, MonomialOrder, PolyRing, Polynomial, RingRef};
use crate::scalar::{binomial, is_integral};
use crate::{Poly, Rational};

/// `dim O/(∂p/∂x₁, …, ∂p/∂xₙ)` at the origin.
pub fn milnor_number(p: &Poly, limits: &Limits) -> Result<u64> {
    let ring = p.ring().with_order(MonomialOrder::NegDegRevLex);
    let p = p.to_ring(&ring)?;
    let gens = (0..ring.nvars()).map(|v| p.derivative(v)).collect();
    local_standard_basis(&Ideal::new(&ring, gens)?, limits)?
        .colength()
        .finite()
        .ok_or_else(|| Error::NonIsolated(format!("{p} has a non-isolated critical point at the origin")))
}

/// Milnor number of a quasihomogeneous isolated singularity from its
/// weights: `Π (d - wᵢ)/wᵢ`.
pub fn quasihomogeneous_milnor(weights: &[Rational], degree: &Rational) -> Rational {
    weights.iter().map(|w| (degree - w) / w).product()
}

/// The Milnor algebra of `Dᵏ(F)` restricted to the parameter `t = 0`
/// direction: `O/(I(Dᵏ(F)) + c-minors of the Jacobian in the non-parameter
/// variables)`, `c = 2(k-1)`.
#[derive(Debug, Clone)]
pub struct RestrictedMilnorAlgebra {
    pub k: usize,
    pub dk: DkIdeal,
    pub algebra: FiniteAlgebra<Rational>,
}

pub fn restricted_milnor_algebra(u: &UnfoldingSpec, k: usize, limits: &Limits) -> Result<RestrictedMilnorAlgebra> {
    if u.params().len() != 1 || !u.germ().is_mono() {
        return Err(Error::Unsupported("restricted Milnor algebras need a one-parameter mono-germ unfolding".into()));
    }
    let big = u.as_germ()?;
    let dk = dk_ideal(&big, &vec![0; k])?;
    let t = dk.ring.var_index(&u.params()[0])?;
    let vars: Vec<usize> = (0..dk.ring.nvars()).filter(|&v| v != t).collect();
    let jac = jacobian_matrix(dk.ideal.gens(), &vars);
    let c = 2 * (k - 1);
    let ideal = dk.ideal.with(minors(&dk.ring, &jac, c))?;
    let algebra = FiniteAlgebra::at_origin(&ideal, limits)?;
    Ok(RestrictedMilnorAlgebra { k, dk, algebra })
}

/// Dimension of the `Σ_k`-invariant part: the trace of the averaging
/// operator `R = (1/k!) Σ_σ σ`, checked to be an idempotent with integral
/// trace.
pub fn invariant_dimension(alg: &RestrictedMilnorAlgebra) -> Result<u64> {
    let a = &alg.algebra;
    let d = a.dim();
    if d == 0 {
        return Ok(0);
    }
    let mut sum = Matrix::<Rational>::zeros(d, d);
    let mut count = 0i64;
    for sigma in (0..alg.k).permutations(alg.k) {
        let perm = slot_permutation(&alg.dk, &sigma);
        let m = a.matrix_of(|p| Ok(p.permute_vars(&perm)))?;
        sum = sum.add(&m);
        count += 1;
    }
    let r = sum.scale(&Rational::new(One::one(), count.into()));
    if r.mul(&r) != r {
        return Err(Error::Internal("averaging operator is not idempotent".into()));
    }
    let tr = r.trace();
    if !is_integral(&tr) || tr < Rational::zero() {
        return Err(Error::Internal(format!("averaging operator has trace {tr}")));
    }
    Ok(tr.to_integer().try_into().map_err(|_| Error::Internal("trace out of range".into()))?)
}

/// How an alternating Milnor number was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MuMethod {
    /// `Dᵏ(f)` empty or smooth.
    Vanishing,
    /// Invariant part of the restricted Milnor algebra of a stable unfolding.
    InvariantAlgebra,
    /// Zero-dimensional `Dᵏ(f)`: splitting of fat points.
    PointSplitting,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuAlt {
    pub k: usize,
    pub value: u64,
    pub method: MuMethod,
}

/// `μ_k^Alt(f)`, given the multiple point report of `f`.
pub fn mu_k_alt(g: &GermSpec, k: usize, report: &MararMondReport, limits: &Limits) -> Result<MuAlt> {
    let n = g.n();
    let entries: Vec<_> = report.entries_for(k).collect();
    if entries.iter().all(|e| matches!(e.verdict, Verdict::Empty | Verdict::Smooth)) && k <= n {
        return Ok(MuAlt { k, value: 0, method: MuMethod::Vanishing });
    }
    if k == n + 1 {
        // Each Σ_k-orbit of a fat point of multiplicity m with stabiliser G
        // splits into m/|G| regular orbits, one of which is the stable
        // contribution when G is trivial.
        let mut total = 0u64;
        for e in entries.iter().filter(|e| e.dim >= 0) {
            let m = e.colength.ok_or_else(|| Error::NotAFinite(format!("D^{k} is not zero-dimensional")))?;
            let stab: u64 = e.tuple.iter().chunk_by(|b| **b).into_iter().map(|(_, run)| (1..=run.count() as u64).product::<u64>()).product();
            if m % stab != 0 {
                return Err(Error::Unsupported(format!(
                    "fat point of multiplicity {m} with stabiliser of order {stab} on tuple {:?}",
                    e.tuple
                )));
            }
            total += m / stab - u64::from(stab == 1);
        }
        return Ok(MuAlt { k, value: total, method: MuMethod::PointSplitting });
    }
    if !g.is_mono() {
        return Err(Error::Unsupported(format!("μ_{k}^Alt of a multi-germ with a singular D^{k}")));
    }
    let u = build_one_param_stable_unfolding(g, limits)?;
    let alg = restricted_milnor_algebra(&u, k, limits)?;
    Ok(MuAlt { k, value: invariant_dimension(&alg)?, method: MuMethod::InvariantAlgebra })
}

/// `μ_I(f) = Σ_{k=2}^{d} μ_k^Alt(f) + C(s-1, d)` (last term only if `s > d`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageMilnor {
    pub s: usize,
    pub d: usize,
    pub table: Vec<MuAlt>,
    pub correction: u64,
    pub mu_image: u64,
}

pub fn mu_image_with(g: &GermSpec, report: &MararMondReport, limits: &Limits) -> Result<ImageMilnor> {
    if !report.a_finite {
        return Err(Error::NotAFinite(format!("{} is not A-finite", g.name())));
    }
    let (s, d) = (report.s, report.d);
    let table = (2..=d).map(|k| mu_k_alt(g, k, report, limits)).collect::<Result<Vec<_>>>()?;
    let correction = if s > d { binomial(s as u64 - 1, d as u64) } else { 0 };
    let mu_image = table.iter().map(|m| m.value).sum::<u64>() + correction;
    Ok(ImageMilnor { s, d, table, correction, mu_image })
}

/// The image Milnor number of an A-finite germ.
pub fn mu_image(g: &GermSpec, limits: &Limits) -> Result<ImageMilnor> {
    let report = marar_mond_report(g, limits)?;
    mu_image_with(g, &report, limits)
}

/// Largest jet order tried by [`delta_invariant`].
pub const MAX_JET_ORDER: usize = 60;

fn truncated_mul(a: &[Rational], b: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.iter().enumerate().take(n.saturating_sub(i)) {
            out[i + j] += x * y;
        }
    }
    out
}

/// δ of a plane curve germ given by parametrised branches (`n = 1`):
/// `dim Õ/O`, computed from jets of growing order until the conductor is
/// visible (all `t^j`, `c ≤ j < N`, in the image with `2c ≤ N`).
pub fn delta_invariant(g: &GermSpec) -> Result<u64> {
    if g.n() != 1 {
        return Err(Error::InvalidArgument("δ is defined here for curve germs (n = 1)".into()));
    }
    let s = g.s();
    let series: Vec<[Vec<Rational>; 2]> = g
        .branches()
        .iter()
        .map(|b| [b.p(), b.q()].map(|f| f.coefficients_in(0).iter().map(|c| c.constant_term()).collect()))
        .collect();
    let mut n = 4;
    loop {
        let width = s * n;
        let mut ech = EchelonBasis::<Rational>::new(width);
        // powers of p and q per branch, truncated at t^n
        let pows: Vec<[Vec<Vec<Rational>>; 2]> = series
            .iter()
            .map(|pq| {
                pq.clone().map(|f| {
                    let mut f = f;
                    f.resize(n.max(f.len()), Rational::zero());
                    f.truncate(n);
                    let mut out = vec![{
                        let mut one = vec![Rational::zero(); n];
                        one[0] = Rational::one();
                        one
                    }];
                    for _ in 1..n {
                        let next = truncated_mul(out.last().unwrap(), &f, n);
                        out.push(next);
                    }
                    out
                })
            })
            .collect();
        for a in 0..n {
            for b in 0..n - a {
                let mut v = Vec::with_capacity(width);
                for pw in &pows {
                    v.extend(truncated_mul(&pw[0][a], &pw[1][b], n));
                }
                ech.insert(v);
            }
        }
        let codim = width - ech.dim();
        let mut c = n;
        while c > 0 {
            let all = (0..s).all(|i| {
                let mut e = vec![Rational::zero(); width];
                e[i * n + c - 1] = Rational::one();
                ech.contains(e)
            });
            if !all {
                break;
            }
            c -= 1;
        }
        if 2 * c <= n {
            return Ok(codim as u64);
        }
        if n >= MAX_JET_ORDER {
            return Err(Error::ResourceExceeded { resource: Resource::JetOrder, limit: MAX_JET_ORDER });
        }
        n = (n + 4).min(MAX_JET_ORDER);
    }
}

/// `μ_I = δ - s + 1` for plane curve germs.
pub fn mu_image_curve(g: &GermSpec) -> Result<u64> {
    let delta = delta_invariant(g)?;
    (delta + 1)
        .checked_sub(g.s() as u64)
        .ok_or_else(|| Error::Internal(format!("δ = {delta} is smaller than s - 1")))
}

/// Reduced equation of the image hypersurface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageEquation {
    /// Target coordinates `X1 … X(n+1)` followed by any parameters.
    pub ring: RingRef,
    pub equation: Poly,
}

fn image_equation_from(comps: &[Poly], source: &RingRef, n: usize, params: &[String]) -> Result<ImageEquation> {
    let y = &source.vars()[n - 1];
    let targets: Vec<String> = (1..=n + 1).map(|i| format!("X{i}")).collect();
    let mut names = vec![y.clone()];
    names.extend(targets.iter().cloned());
    names.extend(params.iter().cloned());
    if names.iter().unique().count() != names.len() {
        return Err(Error::InvalidArgument("target names X1.. clash with source variables".into()));
    }
    let ring = PolyRing::new(&names, MonomialOrder::DegRevLex)?;
    let mut bindings: Vec<(usize, Poly)> = (0..n - 1).map(|i| (i, Polynomial::var(&ring, &targets[i]).unwrap())).collect();
    bindings.push((n - 1, Polynomial::var_at(&ring, 0)));
    let p = &comps[n - 1].substitute(&bindings, &ring)? - &Polynomial::var(&ring, &targets[n - 1])?;
    let q = &comps[n].substitute(&bindings, &ring)? - &Polynomial::var(&ring, &targets[n])?;
    let res = sylvester_resultant(&p, &q, 0)?;
    let target_ring = PolyRing::new(&names[1..], MonomialOrder::DegRevLex)?;
    let equation = squarefree_part(&res.to_ring(&target_ring)?)?;
    Ok(ImageEquation { ring: target_ring, equation })
}

/// `squarefree(Res_y(p - X_n, q - X_{n+1}))` for a mono-germ.
pub fn image_equation(g: &GermSpec) -> Result<ImageEquation> {
    if !g.is_mono() {
        return Err(Error::Unsupported("image equations are computed for mono-germs".into()));
    }
    image_equation_from(g.branches()[0].components(), g.ring(), g.n(), &[])
}

/// Image equation of an unfolding, parameters kept as variables.
pub fn image_equation_of_unfolding(u: &UnfoldingSpec) -> Result<ImageEquation> {
    if !u.germ().is_mono() {
        return Err(Error::Unsupported("image equations are computed for mono-germs".into()));
    }
    image_equation_from(&u.components(0), u.ring(), u.germ().n(), u.params())
}

/// `μ_I(f) = 0` iff the image equation `G` of a stable unfolding lies in
/// the radical of its Jacobian ideal in the target variables.
pub fn mu_zero_via_radical(u: &UnfoldingSpec, limits: &Limits) -> Result<bool> {
    let eq = image_equation_of_unfolding(u)?;
    let n = u.germ().n();
    let gens = (0..=n).map(|v| eq.equation.derivative(v)).collect();
    radical_membership(&eq.equation, &Ideal::new(&eq.ring, gens)?, limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn milnor_numbers() {
        let r = PolyRing::new(&["x", "y"], MonomialOrder::DegRevLex).unwrap();
        assert_eq!(milnor_number(&parse_poly("x^2 + y^5", &r).unwrap(), &lim()).unwrap(), 4);
        assert_eq!(milnor_number(&parse_poly("x^3 + y^4", &r).unwrap(), &lim()).unwrap(), 6);
        assert!(milnor_number(&parse_poly("x^2", &r).unwrap(), &lim()).is_err());
        assert_eq!(quasihomogeneous_milnor(&[Rational::from_integer(5.into()), Rational::from_integer(2.into())], &Rational::from_integer(10.into())), Rational::from_integer(4.into()));
    }

    #[test]
    fn s_k_and_cross_cap() {
        for k in 1..=3 {
            let q = format!("x^{}*y + y^3", k + 1);
            let g = GermSpec::mono("S", &["x", "y^2", &q]).unwrap();
            assert_eq!(mu_image(&g, &lim()).unwrap().mu_image, k as u64);
        }
        let cc = GermSpec::mono("cross-cap", &["x", "y^2", "x*y"]).unwrap();
        assert_eq!(mu_image(&cc, &lim()).unwrap().mu_image, 0);
    }

    #[test]
    fn curves() {
        let cusp = GermSpec::mono("cusp", &["t^2", "t^3"]).unwrap();
        assert_eq!(mu_image(&cusp, &lim()).unwrap().mu_image, 1);
        assert_eq!(delta_invariant(&cusp).unwrap(), 1);
        let e6 = GermSpec::mono("E6", &["t^3", "t^4"]).unwrap();
        assert_eq!(mu_image(&e6, &lim()).unwrap().mu_image, 3);
        assert_eq!(mu_image_curve(&e6).unwrap(), 3);
        let tac = GermSpec::from_strs("tacnode", &["t"], &[(&[0], &["t", "t^2"]), (&[1], &["t - 1", "-(t - 1)^2"])]).unwrap();
        assert_eq!(mu_image(&tac, &lim()).unwrap().mu_image, 1);
        assert_eq!(mu_image_curve(&tac).unwrap(), 1);
    }

    #[test]
    fn image_equation_of_cross_cap() {
        let cc = GermSpec::mono("cross-cap", &["x", "y^2", "x*y"]).unwrap();
        let eq = image_equation(&cc).unwrap();
        let expected = parse_poly("X3^2 - X1^2*X2", &eq.ring).unwrap();
        assert_eq!(eq.equation, expected.monic());
        let u = UnfoldingSpec::trivial(cc, "t").unwrap();
        assert!(mu_zero_via_radical(&u, &lim()).unwrap());
        let s1 = GermSpec::mono("S1", &["x", "y^2", "x^2*y + y^3"]).unwrap();
        let u = build_one_param_stable_unfolding(&s1, &lim()).unwrap();
        assert!(!mu_zero_via_radical(&u, &lim()).unwrap());
    }
}
