use std::collections::{BTreeSet, HashSet};

use super::{Ideal, Limits, Locality, StandardBasis};
use crate::error::{Error, Resource, Result};
use crate::poly::{Monomial, Polynomial};
use crate::scalar::Field;

pub(crate) fn s_polynomial<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> Polynomial<F> {
    let (mf, cf) = f.leading_term().expect("nonzero");
    let (mg, cg) = g.leading_term().expect("nonzero");
    let l = mf.lcm(mg);
    let a = f.mul_term(&cg.clone(), &l.div(mf));
    a.sub_mul_term(cf, &l.div(mg), g)
}

fn find_divisor<F: Field>(m: &Monomial, basis: &[Polynomial<F>]) -> Option<usize> {
    basis.iter().position(|g| g.lm().divides(m))
}

/// Complete reduction against a global basis.
pub(crate) fn reduce_full<F: Field>(p: &Polynomial<F>, basis: &[Polynomial<F>]) -> Polynomial<F> {
    divide_inner(p, basis, false).1
}

pub(crate) fn divide_with_cofactors<F: Field>(
    p: &Polynomial<F>,
    basis: &[Polynomial<F>],
) -> (Vec<Polynomial<F>>, Polynomial<F>) {
    divide_inner(p, basis, true)
}

fn divide_inner<F: Field>(
    p: &Polynomial<F>,
    basis: &[Polynomial<F>],
    track: bool,
) -> (Vec<Polynomial<F>>, Polynomial<F>) {
    let ring = p.ring();
    let mut cof: Vec<Vec<(Monomial, F)>> = vec![Vec::new(); if track { basis.len() } else { 0 }];
    let mut rem = Vec::new();
    let mut h = p.clone();
    while let Some((m, c)) = h.leading_term().cloned() {
        match find_divisor(&m, basis) {
            Some(i) => {
                let g = &basis[i];
                let t = m.div(g.lm());
                let k = c / g.lc().clone();
                h = h.sub_mul_term(&k, &t, g);
                if track {
                    cof[i].push((t, k));
                }
            }
            None => {
                rem.push((m.clone(), c.clone()));
                h = h.sub_mul_term(&c, &Monomial::one(ring.nvars()), &Polynomial::monomial(ring, m, F::one()));
            }
        }
    }
    let cof = cof.into_iter().map(|t| Polynomial::from_terms(ring, t)).collect();
    (cof, Polynomial::from_terms(ring, rem))
}

/// Mora's weak normal form with écart-minimal reducer selection (ties
/// broken by position in `basis`).
pub(crate) fn mora_normal_form<F: Field>(p: &Polynomial<F>, basis: &[Polynomial<F>]) -> Polynomial<F> {
    let mut t: Vec<Polynomial<F>> = basis.to_vec();
    let mut h = p.clone();
    loop {
        let Some(m) = h.leading_term().map(|(m, _)| m.clone()) else {
            return h;
        };
        let mut best: Option<(u32, usize)> = None;
        for (i, g) in t.iter().enumerate() {
            if g.lm().divides(&m) {
                let e = g.ecart();
                if best.is_none_or(|(be, _)| e < be) {
                    best = Some((e, i));
                }
            }
        }
        let Some((e, i)) = best else {
            return h;
        };
        let g = t[i].clone();
        if e > h.ecart() {
            t.push(h.clone());
        }
        let k = h.lc().clone() / g.lc().clone();
        h = h.sub_mul_term(&k, &m.div(g.lm()), &g);
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Pair {
    degree: u32,
    i: usize,
    j: usize,
}

/// Dispatches on the ring's ordering.
pub fn standard_basis<F: Field>(ideal: &Ideal<F>, limits: &Limits) -> Result<StandardBasis<F>> {
    if ideal.ring().order().is_global() {
        groebner_basis(ideal, limits)
    } else {
        local_standard_basis(ideal, limits)
    }
}

/// Reduced Gröbner basis by Buchberger's algorithm with the product and
/// chain criteria and the normal selection strategy.
pub fn groebner_basis<F: Field>(ideal: &Ideal<F>, limits: &Limits) -> Result<StandardBasis<F>> {
    if !ideal.ring().order().is_global() {
        return Err(Error::InvalidArgument("groebner_basis needs a global ordering".into()));
    }
    let basis = run(ideal, limits, Locality::Global)?;
    Ok(StandardBasis::from_parts(ideal.clone(), basis, Locality::Global))
}

/// Standard basis in the localization at the origin (Mora).
pub fn local_standard_basis<F: Field>(ideal: &Ideal<F>, limits: &Limits) -> Result<StandardBasis<F>> {
    if ideal.ring().order().is_global() {
        return Err(Error::InvalidArgument("local_standard_basis needs a local ordering".into()));
    }
    let basis = run(ideal, limits, Locality::Local)?;
    Ok(StandardBasis::from_parts(ideal.clone(), basis, Locality::Local))
}

fn run<F: Field>(ideal: &Ideal<F>, limits: &Limits, locality: Locality) -> Result<Vec<Polynomial<F>>> {
    let ring = ideal.ring();
    let mut inputs: Vec<Polynomial<F>> = ideal.gens().iter().map(|g| g.monic()).collect();
    inputs.sort_by(|a, b| ring.cmp(a.lm(), b.lm()).then_with(|| a.nterms().cmp(&b.nterms())));
    inputs.dedup();
    if inputs.iter().any(|g| g.lm().is_one()) {
        return Ok(vec![Polynomial::one(ring)]);
    }
    let reduce = |p: &Polynomial<F>, g: &[Polynomial<F>]| match locality {
        Locality::Global => reduce_full(p, g),
        Locality::Local => mora_normal_form(p, g),
    };

    let mut g: Vec<Polynomial<F>> = Vec::new();
    let mut pending: BTreeSet<Pair> = BTreeSet::new();
    let mut pending_idx: HashSet<(usize, usize)> = HashSet::new();
    let add = |h: Polynomial<F>,
                   g: &mut Vec<Polynomial<F>>,
                   pending: &mut BTreeSet<Pair>,
                   pending_idx: &mut HashSet<(usize, usize)>|
     -> Result<()> {
        let j = g.len();
        for (i, f) in g.iter().enumerate() {
            let degree = f.lm().lcm(h.lm()).degree();
            pending.insert(Pair { degree, i, j });
            pending_idx.insert((i, j));
        }
        g.push(h);
        if g.len() > limits.max_basis {
            return Err(Error::ResourceExceeded { resource: Resource::BasisSize, limit: limits.max_basis });
        }
        Ok(())
    };

    for f in inputs {
        let h = match locality {
            Locality::Global => reduce(&f, &g),
            Locality::Local => f,
        };
        if !h.is_zero() {
            if h.lm().is_one() {
                return Ok(vec![Polynomial::one(ring)]);
            }
            add(h.monic(), &mut g, &mut pending, &mut pending_idx)?;
        }
    }

    while let Some(pair) = pending.pop_first() {
        pending_idx.remove(&(pair.i, pair.j));
        let (fi, fj) = (&g[pair.i], &g[pair.j]);
        let l = fi.lm().lcm(fj.lm());
        if locality == Locality::Global && fi.lm().coprime(fj.lm()) {
            continue;
        }
        let chain = (0..g.len()).any(|k| {
            k != pair.i
                && k != pair.j
                && g[k].lm().divides(&l)
                && !pending_idx.contains(&(pair.i.min(k), pair.i.max(k)))
                && !pending_idx.contains(&(pair.j.min(k), pair.j.max(k)))
        });
        if chain {
            continue;
        }
        if pair.degree > limits.max_pair_degree {
            return Err(Error::ResourceExceeded {
                resource: Resource::PairDegree,
                limit: limits.max_pair_degree as usize,
            });
        }
        let s = s_polynomial(fi, fj);
        let h = reduce(&s, &g);
        if !h.is_zero() {
            if h.lm().is_one() {
                return Ok(vec![Polynomial::one(ring)]);
            }
            add(h.monic(), &mut g, &mut pending, &mut pending_idx)?;
        }
    }

    // minimal basis: drop elements whose leading monomial is a multiple of another's
    let mut keep: Vec<Polynomial<F>> = Vec::new();
    for (i, f) in g.iter().enumerate() {
        let redundant = g.iter().enumerate().any(|(k, h)| {
            k != i && h.lm().divides(f.lm()) && (h.lm() != f.lm() || k < i)
        });
        if !redundant {
            keep.push(f.clone());
        }
    }
    if locality == Locality::Global {
        let snapshot = keep.clone();
        for (i, f) in keep.iter_mut().enumerate() {
            let others: Vec<_> = snapshot.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, h)| h.clone()).collect();
            *f = reduce_full(f, &others).monic();
        }
    }
    keep.sort_by(|a, b| ring.cmp(a.lm(), b.lm()));
    Ok(keep)
}
