//! Corank-one multi-germs in prenormal form, their unfoldings, and the
//! line-oriented germ description language.

mod dsl;
mod unfold;
mod weights;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{MonomialOrder, PolyRing, Polynomial, RingRef};
use crate::{Poly, Rational};

pub use dsl::{parse_germ_file, GermFile};
pub use unfold::{build_one_param_stable_unfolding, fiber_germ, origin_preserving_check, UnfoldingSpec};
pub use weights::{polynomial_weights, weighted_homogeneity, WeightData};

/// Default source variable names for `n`: `t`; `x, y`; `x1, …, x(n-1), y`.
pub fn default_source_vars(n: usize) -> Vec<String> {
    match n {
        0 => Vec::new(),
        1 => vec!["t".into()],
        2 => vec!["x".into(), "y".into()],
        _ => (1..n).map(|i| format!("x{i}")).chain(std::iter::once("y".to_string())).collect(),
    }
}

/// One branch `(Cⁿ, base) → (Cⁿ⁺¹, 0)`, stored recentred so that the base
/// point is the origin of the source ring.
#[derive(Clone, PartialEq, Eq)]
pub struct Branch {
    base_point: Vec<Rational>,
    components: Vec<Poly>,
    corank: usize,
}

impl Branch {
    pub fn base_point(&self) -> &[Rational] {
        &self.base_point
    }

    /// Components in recentred coordinates.
    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    /// `0` for immersive branches, `1` otherwise.
    pub fn corank(&self) -> usize {
        self.corank
    }

    /// The second-to-last component `p(x, y)`.
    pub fn p(&self) -> &Poly {
        &self.components[self.components.len() - 2]
    }

    /// The last component `q(x, y)`.
    pub fn q(&self) -> &Poly {
        &self.components[self.components.len() - 1]
    }
}

impl fmt::Debug for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", comps.join(", "))
    }
}

/// A corank ≤ 1 multi-germ `f: (Cⁿ, S) → (Cⁿ⁺¹, 0)` in prenormal form.
#[derive(Clone, PartialEq, Eq)]
pub struct GermSpec {
    name: String,
    n: usize,
    ring: RingRef,
    branches: Vec<Branch>,
    notes: Vec<String>,
}

/// Branch input: base point and components in original coordinates.
#[derive(Debug, Clone)]
pub struct RawBranch {
    pub base_point: Vec<Rational>,
    pub components: Vec<Poly>,
}

impl GermSpec {
    /// Validates and recentres branches.
    pub fn new(name: &str, ring: &RingRef, raw: Vec<RawBranch>) -> Result<GermSpec> {
        let n = ring.nvars();
        if n == 0 {
            return Err(Error::InvalidGerm("source dimension must be positive".into()));
        }
        if raw.is_empty() {
            return Err(Error::InvalidGerm("a germ needs at least one branch".into()));
        }
        let mut branches = Vec::new();
        let mut notes = Vec::new();
        for (bi, rb) in raw.into_iter().enumerate() {
            let label = bi + 1;
            if rb.components.len() != n + 1 {
                return Err(Error::InvalidGerm(format!(
                    "branch {label} has {} components, expected {}",
                    rb.components.len(),
                    n + 1
                )));
            }
            if rb.base_point.len() != n {
                return Err(Error::InvalidGerm(format!(
                    "branch {label} base point has {} coordinates, expected {n}",
                    rb.base_point.len()
                )));
            }
            for c in &rb.components {
                c.check_ring(&Polynomial::zero(ring))?;
                if c.evaluate(&rb.base_point) != Rational::from_integer(0.into()) {
                    return Err(Error::InvalidGerm(format!(
                        "branch {label}: component {c} does not vanish at the base point"
                    )));
                }
            }
            let shift: Vec<(usize, Poly)> = (0..n)
                .map(|v| (v, &Polynomial::var_at(ring, v) + &Polynomial::constant(ring, rb.base_point[v].clone())))
                .collect();
            let comps = rb.components.iter().map(|c| c.substitute(&shift, ring)).collect::<Result<Vec<_>>>()?;
            for (i, c) in comps.iter().take(n - 1).enumerate() {
                if *c != Polynomial::var_at(ring, i) {
                    return Err(Error::InvalidGerm(format!(
                        "branch {label} is not in prenormal form: component {} must be the coordinate `{}`",
                        i + 1,
                        ring.vars()[i]
                    )));
                }
            }
            let y = n - 1;
            let zero = vec![Rational::from_integer(0.into()); n];
            let dp = comps[n - 1].derivative(y).evaluate(&zero);
            let dq = comps[n].derivative(y).evaluate(&zero);
            let z = Rational::from_integer(0.into());
            let corank = if dp != z || dq != z { 0 } else { 1 };
            if corank == 0 {
                notes.push(format!("branch {label} is immersive (corank 0)"));
            }
            if comps[n - 1].is_zero() && comps[n].is_zero() && n == 1 {
                return Err(Error::InvalidGerm(format!("branch {label} is constant")));
            }
            branches.push(Branch { base_point: rb.base_point, components: comps, corank });
        }
        for i in 0..branches.len() {
            for j in 0..i {
                if branches[i].base_point == branches[j].base_point {
                    return Err(Error::InvalidGerm(format!(
                        "branches {} and {} share a base point",
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(GermSpec { name: name.to_string(), n, ring: ring.clone(), branches, notes })
    }

    /// Mono- or multi-germ with all base points given explicitly as strings.
    pub fn from_strs(name: &str, vars: &[&str], branches: &[(&[i64], &[&str])]) -> Result<GermSpec> {
        let ring = PolyRing::new(vars, MonomialOrder::DegRevLex)?;
        let raw = branches
            .iter()
            .map(|(bp, comps)| {
                Ok(RawBranch {
                    base_point: bp.iter().map(|&v| Rational::from_integer(v.into())).collect(),
                    components: comps.iter().map(|c| crate::poly::parse_poly(c, &ring)).collect::<Result<_>>()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        GermSpec::new(name, &ring, raw)
    }

    /// Mono-germ at the origin with default variable names.
    pub fn mono(name: &str, comps: &[&str]) -> Result<GermSpec> {
        let n = comps.len().saturating_sub(1);
        let vars = default_source_vars(n);
        let vars: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
        let zero = vec![0i64; n];
        GermSpec::from_strs(name, &vars, &[(&zero, comps)])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    /// Source dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Source ring (recentred coordinates, degrevlex).
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn source_vars(&self) -> &[String] {
        self.ring.vars()
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    /// s(f), the number of branches.
    pub fn s(&self) -> usize {
        self.branches.len()
    }

    pub fn is_mono(&self) -> bool {
        self.branches.len() == 1
    }

    /// Validation remarks (e.g. immersive branches).
    pub fn notes(&self) -> &[String] {
        &self.notes
    }
}

impl fmt::Debug for GermSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {:?}", self.name, self.branches)
    }
}

/// Serializable summary of a germ, for reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GermSummary {
    pub name: String,
    pub n: usize,
    pub source_vars: Vec<String>,
    pub branches: Vec<Vec<String>>,
    pub base_points: Vec<Vec<String>>,
}

impl From<&GermSpec> for GermSummary {
    fn from(g: &GermSpec) -> Self {
        GermSummary {
            name: g.name.clone(),
            n: g.n,
            source_vars: g.source_vars().to_vec(),
            branches: g.branches.iter().map(|b| b.components.iter().map(|c| c.to_string()).collect()).collect(),
            base_points: g.branches.iter().map(|b| b.base_point.iter().map(|c| c.to_string()).collect()).collect(),
        }
    }
}
