//! Ideals, global Gröbner bases, local standard bases and the operations
//! built on them.

mod algorithm;
mod ops;
mod quotient;
mod solve;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, RingRef};
use crate::scalar::Field;

pub use algorithm::{groebner_basis, local_standard_basis, standard_basis};
pub use ops::{
    eliminate, eliminate_named, intersection, krull_dimension, radical_membership, saturation, saturation_by_ideal,
    singular_locus_ideal, singular_locus_ideal_in, translate_ideal,
};
pub use quotient::{FiniteAlgebra, QuotientBasis};
pub use solve::{solve_zero_dimensional, Solutions, SolveComponent};

/// Resource caps for standard-basis computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest total degree of an S-pair lcm that may be processed.
    pub max_pair_degree: u32,
    /// Largest number of basis elements.
    pub max_basis: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_pair_degree: 30, max_basis: 500 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Locality {
    Global,
    Local,
}

/// Vector-space dimension of a quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Colength {
    Finite(u64),
    Infinite,
}

impl Colength {
    pub fn finite(self) -> Option<u64> {
        match self {
            Colength::Finite(n) => Some(n),
            Colength::Infinite => None,
        }
    }
}

impl fmt::Display for Colength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Colength::Finite(n) => write!(f, "{n}"),
            Colength::Infinite => f.write_str("infinite"),
        }
    }
}

/// A finitely generated ideal. Zero generators are dropped.
#[derive(Clone, PartialEq, Eq)]
pub struct Ideal<F: Field> {
    ring: RingRef,
    gens: Vec<Polynomial<F>>,
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: &RingRef, gens: Vec<Polynomial<F>>) -> Result<Self> {
        for g in &gens {
            if !crate::poly::same_ring(g.ring(), ring) {
                return Err(Error::RingMismatch(format!("generator in {:?}, ideal in {:?}", g.ring(), ring)));
            }
        }
        Ok(Ideal { ring: ring.clone(), gens: gens.into_iter().filter(|g| !g.is_zero()).collect() })
    }

    pub fn zero(ring: &RingRef) -> Self {
        Ideal { ring: ring.clone(), gens: Vec::new() }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Sum of ideals.
    pub fn plus(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn with(&self, extra: impl IntoIterator<Item = Polynomial<F>>) -> Result<Ideal<F>> {
        let mut gens = self.gens.clone();
        gens.extend(extra);
        Ideal::new(&self.ring, gens)
    }

    /// Moves the generators into another ring, matching variables by name.
    pub fn to_ring(&self, ring: &RingRef) -> Result<Ideal<F>> {
        let gens = self.gens.iter().map(|g| g.to_ring(ring)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }

    /// Whether every generator vanishes at `point`.
    pub fn vanishes_at(&self, point: &[F]) -> bool {
        self.gens.iter().all(|g| g.evaluate(point).is_zero())
    }
}

impl<F: Field> fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// A global Gröbner basis or a local standard basis of an ideal.
#[derive(Clone, Debug)]
pub struct StandardBasis<F: Field> {
    ideal: Ideal<F>,
    basis: Vec<Polynomial<F>>,
    locality: Locality,
}

impl<F: Field> StandardBasis<F> {
    pub(crate) fn from_parts(ideal: Ideal<F>, basis: Vec<Polynomial<F>>, locality: Locality) -> Self {
        StandardBasis { ideal, basis, locality }
    }

    pub fn ideal(&self) -> &Ideal<F> {
        &self.ideal
    }

    pub fn basis(&self) -> &[Polynomial<F>] {
        &self.basis
    }

    pub fn ring(&self) -> &RingRef {
        self.ideal.ring()
    }

    pub fn locality(&self) -> Locality {
        self.locality
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|g| g.lm().clone()).collect()
    }

    /// The ideal is the whole ring (globally, or in the local ring at the origin).
    pub fn is_unit(&self) -> bool {
        self.basis.iter().any(|g| g.lm().is_one())
    }

    /// Normal form: fully reduced for global bases; Mora's weak normal form
    /// for local bases (zero exactly on ideal members, unique up to a unit).
    pub fn normal_form(&self, p: &Polynomial<F>) -> Polynomial<F> {
        match self.locality {
            Locality::Global => algorithm::reduce_full(p, &self.basis),
            Locality::Local => algorithm::mora_normal_form(p, &self.basis),
        }
    }

    pub fn contains(&self, p: &Polynomial<F>) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Division with remainder against a global basis:
    /// `p = Σ cofactors[i]·basis[i] + remainder`.
    pub fn divide(&self, p: &Polynomial<F>) -> Result<(Vec<Polynomial<F>>, Polynomial<F>)> {
        if self.locality != Locality::Global {
            return Err(Error::InvalidArgument("cofactor division needs a global basis".into()));
        }
        Ok(algorithm::divide_with_cofactors(p, &self.basis))
    }

    /// Checks that every S-polynomial reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let b = &self.basis;
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                let s = algorithm::s_polynomial(&b[i], &b[j]);
                if !self.normal_form(&s).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Number of standard monomials (local colength when the basis is local).
    pub fn colength(&self) -> Colength {
        quotient::count_standard(&self.leading_monomials(), self.ring().nvars())
    }

    /// Standard monomials, if finitely many.
    pub fn quotient_basis(&self) -> Option<QuotientBasis> {
        quotient::standard_monomials(&self.leading_monomials(), self.ring().nvars())
    }

    /// Dimension via maximal independent sets of the leading ideal; `-1` for
    /// the unit ideal. Local bases give the dimension of the germ at the origin.
    pub fn krull_dimension(&self) -> i64 {
        ops::dimension_of_leading_ideal(&self.leading_monomials(), self.ring().nvars())
    }
}
