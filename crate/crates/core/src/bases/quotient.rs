use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{groebner_basis, local_standard_basis, Colength, Ideal, Limits, StandardBasis};
use crate::error::{Error, Result};
use crate::poly::{Matrix, Monomial, MonomialOrder, Polynomial, RingRef};
use crate::scalar::Field;

/// Standard monomials of a leading ideal (an order ideal).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientBasis {
    pub monomials: Vec<Vec<u32>>,
}

impl QuotientBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.monomials.iter().map(|m| m.iter().sum()).max()
    }
}

fn pure_power_bounds(lms: &[Monomial], nvars: usize) -> Option<Vec<u32>> {
    let mut bounds = vec![u32::MAX; nvars];
    for m in lms {
        let sup: Vec<usize> = m.support().collect();
        if sup.len() == 1 {
            let v = sup[0];
            bounds[v] = bounds[v].min(m.exponent(v));
        }
    }
    if bounds.iter().any(|&b| b == u32::MAX) {
        None
    } else {
        Some(bounds)
    }
}

fn enumerate(lms: &[Monomial], bounds: &[u32], mut visit: impl FnMut(&[u32])) {
    let n = bounds.len();
    let mut e = vec![0u32; n];
    fn rec(v: usize, e: &mut Vec<u32>, lms: &[Monomial], bounds: &[u32], visit: &mut dyn FnMut(&[u32])) {
        if v == e.len() {
            visit(e);
            return;
        }
        for a in 0..bounds[v] {
            e[v] = a;
            let m = Monomial::from_exponents(e.clone());
            if lms.iter().any(|l| l.divides(&m)) {
                break;
            }
            rec(v + 1, e, lms, bounds, visit);
        }
        e[v] = 0;
    }
    if n == 0 {
        if !lms.iter().any(|l| l.is_one()) {
            visit(&e);
        }
        return;
    }
    rec(0, &mut e, lms, bounds, &mut visit);
}

pub(crate) fn count_standard(lms: &[Monomial], nvars: usize) -> Colength {
    if lms.iter().any(|m| m.is_one()) {
        return Colength::Finite(0);
    }
    let Some(bounds) = pure_power_bounds(lms, nvars) else {
        return Colength::Infinite;
    };
    let mut count = 0u64;
    enumerate(lms, &bounds, |_| count += 1);
    Colength::Finite(count)
}

pub(crate) fn standard_monomials(lms: &[Monomial], nvars: usize) -> Option<QuotientBasis> {
    if lms.iter().any(|m| m.is_one()) {
        return Some(QuotientBasis { monomials: Vec::new() });
    }
    let bounds = pure_power_bounds(lms, nvars)?;
    let mut out: Vec<Vec<u32>> = Vec::new();
    enumerate(lms, &bounds, |e| out.push(e.to_vec()));
    out.sort_by(|a, b| {
        let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
        da.cmp(&db).then_with(|| b.cmp(a))
    });
    Some(QuotientBasis { monomials: out })
}

/// The finite-dimensional algebra `O/I` of the local ring at the origin,
/// with a canonical normal form.
///
/// If `dim O/IO = c` then the monomials of degree `N` (one more than the
/// largest standard monomial degree) already lie in `IO`, so `O/IO` equals
/// the polynomial quotient by `I + m^N`. A global Gröbner basis of the
/// latter yields unique normal forms and the coordinate map.
#[derive(Debug, Clone)]
pub struct FiniteAlgebra<F: Field> {
    gb: StandardBasis<F>,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    local_basis: QuotientBasis,
}

impl<F: Field> FiniteAlgebra<F> {
    /// `ideal` may live in a local or a global ring; the origin is used.
    pub fn at_origin(ideal: &Ideal<F>, limits: &Limits) -> Result<Self> {
        let local_ring = ideal.ring().with_order(MonomialOrder::NegDegRevLex);
        let local = ideal.to_ring(&local_ring)?;
        let sb = local_standard_basis(&local, limits)?;
        let qb = sb
            .quotient_basis()
            .ok_or_else(|| Error::NonIsolated("quotient algebra at the origin is infinite-dimensional".into()))?;
        let global_ring = ideal.ring().with_order(MonomialOrder::DegRevLex);
        let n = global_ring.nvars();
        let top = qb.max_degree().map_or(0, |d| d + 1);
        let mut gens = ideal.to_ring(&global_ring)?.gens().to_vec();
        for e in monomials_of_degree(n, top) {
            gens.push(Polynomial::monomial(&global_ring, Monomial::from_exponents(e), F::one()));
        }
        let gb = groebner_basis(&Ideal::new(&global_ring, gens)?, limits)?;
        let gq = gb
            .quotient_basis()
            .ok_or_else(|| Error::Internal("truncated ideal is not zero-dimensional".into()))?;
        if gq.len() != qb.len() {
            return Err(Error::Internal(format!(
                "local colength {} differs from truncated global colength {}",
                qb.len(),
                gq.len()
            )));
        }
        let basis: Vec<Monomial> = gq.monomials.iter().map(|e| Monomial::from_exponents(e.clone())).collect();
        let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Ok(FiniteAlgebra { gb, basis, index, local_basis: qb })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Ring with a global ordering in which normal forms are computed.
    pub fn ring(&self) -> &RingRef {
        self.gb.ring()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    /// Standard monomials under the local ordering (same cardinality).
    pub fn local_basis(&self) -> &QuotientBasis {
        &self.local_basis
    }

    pub fn normal_form(&self, p: &Polynomial<F>) -> Result<Polynomial<F>> {
        Ok(self.gb.normal_form(&p.to_ring(self.ring())?))
    }

    /// Coordinates of `p` in the monomial basis.
    pub fn coords(&self, p: &Polynomial<F>) -> Result<Vec<F>> {
        let nf = self.normal_form(p)?;
        let mut v = vec![F::zero(); self.dim()];
        for (m, c) in nf.terms() {
            let i = self.index.get(m).ok_or_else(|| Error::Internal("normal form left the basis".into()))?;
            v[*i] = c.clone();
        }
        Ok(v)
    }

    /// Matrix (columns = images of basis monomials) of a linear map given
    /// on polynomials.
    pub fn matrix_of(&self, map: impl Fn(&Polynomial<F>) -> Result<Polynomial<F>>) -> Result<Matrix<F>> {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for (j, b) in self.basis.iter().enumerate() {
            let img = map(&Polynomial::monomial(self.ring(), b.clone(), F::one()))?;
            for (i, c) in self.coords(&img)?.into_iter().enumerate() {
                m[(i, j)] = c;
            }
        }
        Ok(m)
    }
}

pub(crate) fn monomials_of_degree(n: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut e = vec![0u32; n];
    fn rec(v: usize, left: u32, e: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if v + 1 == e.len() {
            e[v] = left;
            out.push(e.clone());
            return;
        }
        for a in (0..=left).rev() {
            e[v] = a;
            rec(v + 1, left - a, e, out);
        }
    }
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, d, &mut e, &mut out);
    out
}
