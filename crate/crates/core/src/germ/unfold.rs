use super::{GermSpec, RawBranch};
use crate::bases::Limits;
use crate::error::{Error, Result};
use crate::multiple_points::marar_mond_report;
use crate::poly::{MonomialOrder, PolyRing, Polynomial, RingRef};
use crate::{Poly, Rational};

/// An unfolding `F(x, u) = (f(x) + Δ(x, u), u)` of a germ, with deformation
/// terms `Δ` vanishing at `u = 0`. Terms are stored per branch in recentred
/// coordinates of the ring `source vars + params`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnfoldingSpec {
    germ: GermSpec,
    params: Vec<String>,
    ring: RingRef,
    deformation: Vec<Vec<Poly>>,
}

impl UnfoldingSpec {
    pub fn new<S: AsRef<str>>(germ: GermSpec, params: &[S], deformation: Vec<Vec<Poly>>) -> Result<Self> {
        if params.is_empty() {
            return Err(Error::InvalidArgument("an unfolding needs at least one parameter".into()));
        }
        let ring = germ.ring().extended(params, MonomialOrder::DegRevLex)?;
        if deformation.len() != germ.s() || deformation.iter().any(|d| d.len() != germ.n() + 1) {
            return Err(Error::InvalidArgument("deformation shape does not match the germ".into()));
        }
        let deformation =
            deformation.iter().map(|d| d.iter().map(|p| p.to_ring(&ring)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        let n = germ.n();
        let at_zero: Vec<(usize, Poly)> = (n..ring.nvars()).map(|v| (v, Polynomial::zero(&ring))).collect();
        for d in deformation.iter().flatten() {
            if !d.substitute(&at_zero, &ring)?.is_zero() {
                return Err(Error::InvalidArgument(format!("deformation term {d} does not vanish at zero parameters")));
            }
        }
        for d in &deformation {
            if d[..n - 1].iter().any(|p| !p.is_zero()) {
                return Err(Error::InvalidArgument("coordinate components of a prenormal form cannot be deformed".into()));
            }
        }
        let params = params.iter().map(|s| s.as_ref().to_string()).collect();
        Ok(UnfoldingSpec { germ, params, ring, deformation })
    }

    /// The constant unfolding with one parameter.
    pub fn trivial(germ: GermSpec, param: &str) -> Result<Self> {
        let ring = germ.ring().extended(&[param], MonomialOrder::DegRevLex)?;
        let d = vec![vec![Polynomial::zero(&ring); germ.n() + 1]; germ.s()];
        UnfoldingSpec::new(germ, &[param], d)
    }

    pub fn germ(&self) -> &GermSpec {
        &self.germ
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    /// Source variables followed by parameters.
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn deformation(&self) -> &[Vec<Poly>] {
        &self.deformation
    }

    /// Components `f + Δ` of branch `i` (recentred) in the unfolding ring.
    pub fn components(&self, i: usize) -> Vec<Poly> {
        self.germ.branches()[i]
            .components()
            .iter()
            .zip(&self.deformation[i])
            .map(|(c, d)| &c.to_ring(&self.ring).expect("source ring embeds") + d)
            .collect()
    }

    /// `F` as a germ `C^{n+r} → C^{n+r+1}` in prenormal form, with source
    /// variables `x…, params…, y`.
    pub fn as_germ(&self) -> Result<GermSpec> {
        let n = self.germ.n();
        let vars = self.germ.source_vars();
        let mut names: Vec<&str> = vars[..n - 1].iter().map(|s| s.as_str()).collect();
        names.extend(self.params.iter().map(|s| s.as_str()));
        names.push(&vars[n - 1]);
        let big = PolyRing::new(&names, MonomialOrder::DegRevLex)?;
        let mut raw = Vec::new();
        for (i, b) in self.germ.branches().iter().enumerate() {
            let comps = self.components(i);
            let mut out: Vec<Poly> = comps[..n - 1].iter().map(|c| c.to_ring(&big)).collect::<Result<_>>()?;
            for p in &self.params {
                out.push(Polynomial::var(&big, p)?);
            }
            out.push(comps[n - 1].to_ring(&big)?);
            out.push(comps[n].to_ring(&big)?);
            let mut bp: Vec<Rational> = b.base_point()[..n - 1].to_vec();
            bp.extend(std::iter::repeat_n(Rational::from_integer(0.into()), self.params.len()));
            bp.push(b.base_point()[n - 1].clone());
            let shift: Vec<(usize, Poly)> = bp
                .iter()
                .enumerate()
                .map(|(v, a)| (v, &Polynomial::var_at(&big, v) - &Polynomial::constant(&big, a.clone())))
                .collect();
            let components = out.iter().map(|c| c.substitute(&shift, &big)).collect::<Result<_>>()?;
            raw.push(RawBranch { base_point: bp, components });
        }
        GermSpec::new(&format!("{} (unfolded)", self.germ.name()), &big, raw)
    }
}

/// The germ `f_u` obtained by fixing every parameter, centred at the
/// original base points.
pub fn fiber_germ(u: &UnfoldingSpec, values: &[(&str, Rational)]) -> Result<GermSpec> {
    let g = u.germ();
    let mut bindings = Vec::new();
    for p in u.params() {
        let (_, v) = values
            .iter()
            .find(|(name, _)| name == p)
            .ok_or_else(|| Error::InvalidArgument(format!("no value for parameter `{p}`")))?;
        bindings.push((u.ring().var_index(p)?, Polynomial::constant(u.ring(), v.clone())));
    }
    let mut raw = Vec::new();
    for (i, b) in g.branches().iter().enumerate() {
        let shift: Vec<(usize, Poly)> = b
            .base_point()
            .iter()
            .enumerate()
            .map(|(v, a)| (v, &Polynomial::var_at(g.ring(), v) - &Polynomial::constant(g.ring(), a.clone())))
            .collect();
        let components = u
            .components(i)
            .iter()
            .map(|c| c.substitute(&bindings, u.ring())?.to_ring(g.ring())?.substitute(&shift, g.ring()))
            .collect::<Result<Vec<_>>>()?;
        raw.push(RawBranch { base_point: b.base_point().to_vec(), components });
    }
    let label: Vec<String> = values.iter().map(|(n, v)| format!("{n}={v}")).collect();
    GermSpec::new(&format!("{}[{}]", g.name(), label.join(",")), g.ring(), raw)
}

/// Whether `F(S × U) ⊆ {0} × U`, i.e. every branch still maps its base
/// point to the origin for all parameter values.
pub fn origin_preserving_check(u: &UnfoldingSpec) -> bool {
    let n = u.germ().n();
    let at_base: Vec<(usize, Poly)> = (0..n).map(|v| (v, Polynomial::zero(u.ring()))).collect();
    (0..u.germ().s()).all(|i| {
        u.components(i).iter().all(|c| c.substitute(&at_base, u.ring()).map(|p| p.is_zero()).unwrap_or(false))
    })
}

fn free_param_name(g: &GermSpec) -> String {
    ["t", "u", "s", "lambda"]
        .iter()
        .map(|s| s.to_string())
        .chain((0..).map(|i| format!("t{i}")))
        .find(|n| g.ring().index_of(n).is_none())
        .unwrap()
}

/// A stable one-parameter unfolding `F = (x, p + t·m, q, t)` or
/// `(x, p, q + t·m, t)` of a mono-germ, found by trying a fixed list of
/// monomials `m` and verifying stability of `F` through its multiple point
/// spaces. A stable germ gets the constant unfolding.
pub fn build_one_param_stable_unfolding(g: &GermSpec, limits: &Limits) -> Result<UnfoldingSpec> {
    if !g.is_mono() {
        return Err(Error::Unsupported("stable unfoldings are built for mono-germs only".into()));
    }
    let t = free_param_name(g);
    if marar_mond_report(g, limits)?.stable {
        return UnfoldingSpec::trivial(g.clone(), &t);
    }
    let n = g.n();
    let ring = g.ring().extended(&[t.as_str()], MonomialOrder::DegRevLex)?;
    let tv = Polynomial::var_at(&ring, n);
    let y = Polynomial::var_at(&ring, n - 1);
    let mut monomials: Vec<Poly> = Vec::new();
    for e in 1..=3u32 {
        let ye = y.pow(e);
        monomials.push(ye.clone());
        for i in 0..n - 1 {
            monomials.push(&Polynomial::var_at(&ring, i) * &ye);
        }
    }
    for slot in [n, n - 1] {
        for m in &monomials {
            let mut d = vec![Polynomial::zero(&ring); n + 1];
            d[slot] = &tv * m;
            let u = UnfoldingSpec::new(g.clone(), &[t.as_str()], vec![d])?;
            if marar_mond_report(&u.as_germ()?, limits)?.stable {
                return Ok(u);
            }
        }
    }
    Err(Error::Unsupported(format!("no stable one-parameter unfolding of {} among the candidate terms", g.name())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn fibers_and_origin() {
        let g = GermSpec::mono("S1", &["x", "y^2", "x^2*y + y^3"]).unwrap();
        let r = g.ring().extended(&["t"], MonomialOrder::DegRevLex).unwrap();
        let z = Polynomial::zero(&r);
        let d = vec![vec![z.clone(), z.clone(), crate::poly::parse_poly("t*y", &r).unwrap()]];
        let u = UnfoldingSpec::new(g.clone(), &["t"], d).unwrap();
        assert!(origin_preserving_check(&u));
        let f = fiber_germ(&u, &[("t", rat(2, 1))]).unwrap();
        assert_eq!(f.branches()[0].q().to_string(), "x^2*y + y^3 + 2*y");
        let big = u.as_germ().unwrap();
        assert_eq!(big.source_vars(), &["x", "t", "y"]);

        let d = vec![vec![z.clone(), z.clone(), crate::poly::parse_poly("t", &r).unwrap()]];
        let u = UnfoldingSpec::new(g.clone(), &["t"], d).unwrap();
        assert!(!origin_preserving_check(&u));
        let d = vec![vec![z.clone(), z, crate::poly::parse_poly("y + t", &r).unwrap()]];
        assert!(UnfoldingSpec::new(g, &["t"], d).is_err());
    }

    #[test]
    fn stable_unfolding_of_s1() {
        let g = GermSpec::mono("S1", &["x", "y^2", "x^2*y + y^3"]).unwrap();
        let u = build_one_param_stable_unfolding(&g, &Limits::default()).unwrap();
        assert_eq!(u.deformation()[0][2].to_string(), "y*t");
        let cc = GermSpec::mono("cross-cap", &["x", "y^2", "x*y"]).unwrap();
        let u = build_one_param_stable_unfolding(&cc, &Limits::default()).unwrap();
        assert!(u.deformation()[0].iter().all(|p| p.is_zero()));
    }
}
