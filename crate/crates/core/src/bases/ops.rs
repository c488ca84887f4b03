use itertools::Itertools;

use super::{groebner_basis, standard_basis, Ideal, Limits};
use crate::error::{Error, Result};
use crate::poly::{minors, jacobian_matrix, Monomial, MonomialOrder, PolyRing, Polynomial, RingRef};
use crate::scalar::Field;

pub(crate) fn dimension_of_leading_ideal(lms: &[Monomial], nvars: usize) -> i64 {
    if lms.iter().any(|m| m.is_one()) {
        return -1;
    }
    let supports: Vec<Vec<usize>> = lms.iter().map(|m| m.support().collect()).collect();
    for size in (0..=nvars).rev() {
        for set in (0..nvars).combinations(size) {
            if supports.iter().all(|s| !s.iter().all(|v| set.contains(v))) {
                return size as i64;
            }
        }
    }
    -1
}

/// Krull dimension of `V(ideal)`; local to the origin when the ring's
/// ordering is local. The unit ideal gives `-1`.
pub fn krull_dimension<F: Field>(ideal: &Ideal<F>, limits: &Limits) -> Result<i64> {
    Ok(standard_basis(ideal, limits)?.krull_dimension())
}

/// A variable name not yet used in `ring`.
pub(crate) fn fresh_name(ring: &PolyRing, stem: &str) -> String {
    (0..)
        .map(|i| format!("{stem}{i}"))
        .find(|n| ring.index_of(n).is_none())
        .unwrap()
}

/// `ideal ∩ k[kept variables]`, returned in the subring of kept variables
/// (original relative order, degrevlex).
pub fn eliminate<F: Field>(ideal: &Ideal<F>, drop: &[usize], limits: &Limits) -> Result<Ideal<F>> {
    let ring = ideal.ring();
    let n = ring.nvars();
    if let Some(&bad) = drop.iter().find(|&&v| v >= n) {
        return Err(Error::InvalidArgument(format!("variable index {bad} out of range")));
    }
    let kept: Vec<usize> = (0..n).filter(|v| !drop.contains(v)).collect();
    let dropped: Vec<usize> = (0..n).filter(|v| drop.contains(v)).collect();
    let names: Vec<&str> = dropped.iter().chain(kept.iter()).map(|&v| ring.vars()[v].as_str()).collect();
    let elim = PolyRing::new(&names, MonomialOrder::Elimination { block: dropped.len() })?;
    let sub = PolyRing::new(&kept.iter().map(|&v| ring.vars()[v].as_str()).collect::<Vec<_>>(), MonomialOrder::DegRevLex)?;
    let gb = groebner_basis(&ideal.to_ring(&elim)?, limits)?;
    let gens = gb
        .basis()
        .iter()
        .filter(|g| dropped.iter().all(|&v| !g.involves(elim.index_of(&ring.vars()[v]).unwrap())))
        .map(|g| g.to_ring(&sub))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(&sub, gens)
}

/// Eliminates by variable names.
pub fn eliminate_named<F: Field>(ideal: &Ideal<F>, drop: &[&str], limits: &Limits) -> Result<Ideal<F>> {
    let idx = drop.iter().map(|v| ideal.ring().var_index(v)).collect::<Result<Vec<_>>>()?;
    eliminate(ideal, &idx, limits)
}

/// Whether `p ∈ √ideal`, by testing `1 ∈ ideal + (1 − w·p)` globally.
pub fn radical_membership<F: Field>(p: &Polynomial<F>, ideal: &Ideal<F>, limits: &Limits) -> Result<bool> {
    let ring = ideal.ring();
    p.to_ring(ring)?;
    let w = fresh_name(ring, "w");
    let ext = ring.extended(&[w.as_str()], MonomialOrder::DegRevLex)?;
    let wv = Polynomial::var(&ext, &w)?;
    let aux = &Polynomial::one(&ext) - &(&wv * &p.to_ring(&ext)?);
    let big = ideal.to_ring(&ext)?.with([aux])?;
    Ok(groebner_basis(&big, limits)?.is_unit())
}

/// `ideal + (codim × codim minors of the Jacobian in all ring variables)`.
pub fn singular_locus_ideal<F: Field>(ideal: &Ideal<F>, codim: usize) -> Result<Ideal<F>> {
    let vars: Vec<usize> = (0..ideal.ring().nvars()).collect();
    singular_locus_ideal_in(ideal, codim, &vars)
}

/// As [`singular_locus_ideal`], differentiating only in `vars`.
pub fn singular_locus_ideal_in<F: Field>(ideal: &Ideal<F>, codim: usize, vars: &[usize]) -> Result<Ideal<F>> {
    if codim > ideal.gens().len() {
        return Err(Error::InvalidArgument(format!(
            "codimension {codim} exceeds the {} generators",
            ideal.gens().len()
        )));
    }
    let jac = jacobian_matrix(ideal.gens(), vars);
    let ms = minors(ideal.ring(), &jac, codim);
    ideal.with(ms)
}

/// Substitutes `v ↦ v + point[v]`, moving `point` to the origin.
pub fn translate_ideal<F: Field>(ideal: &Ideal<F>, point: &[F]) -> Result<Ideal<F>> {
    let ring = ideal.ring();
    if point.len() != ring.nvars() {
        return Err(Error::InvalidArgument(format!(
            "point has {} coordinates, ring has {} variables",
            point.len(),
            ring.nvars()
        )));
    }
    let bindings: Vec<(usize, Polynomial<F>)> = (0..ring.nvars())
        .map(|v| (v, &Polynomial::var_at(ring, v) + &Polynomial::constant(ring, point[v].clone())))
        .collect();
    let gens = ideal.gens().iter().map(|g| g.substitute(&bindings, ring)).collect::<Result<Vec<_>>>()?;
    Ideal::new(ring, gens)
}

fn with_aux<F: Field>(ring: &RingRef) -> Result<(RingRef, Polynomial<F>)> {
    let name = fresh_name(ring, "aux");
    let mut names = vec![name.clone()];
    names.extend(ring.vars().iter().cloned());
    let ext = PolyRing::new(&names, MonomialOrder::Elimination { block: 1 })?;
    let t = Polynomial::var(&ext, &name)?;
    Ok((ext, t))
}

fn contract<F: Field>(gb_basis: &[Polynomial<F>], ring: &RingRef) -> Result<Ideal<F>> {
    let gens = gb_basis.iter().filter(|g| !g.involves(0)).map(|g| g.to_ring(ring)).collect::<Result<Vec<_>>>()?;
    Ideal::new(ring, gens)
}

/// `I ∩ J` via `t·I + (1 − t)·J`.
pub fn intersection<F: Field>(i: &Ideal<F>, j: &Ideal<F>, limits: &Limits) -> Result<Ideal<F>> {
    let ring = i.ring();
    let global = ring.with_order(MonomialOrder::DegRevLex);
    let (ext, t) = with_aux::<F>(ring)?;
    let one_minus = &Polynomial::one(&ext) - &t;
    let mut gens = Vec::new();
    for g in i.gens() {
        gens.push(&t * &g.to_ring(&ext)?);
    }
    for g in j.gens() {
        gens.push(&one_minus * &g.to_ring(&ext)?);
    }
    let gb = groebner_basis(&Ideal::new(&ext, gens)?, limits)?;
    contract(gb.basis(), &global)?.to_ring(ring)
}

/// `I : f^∞` via `(I + (1 − w·f)) ∩ k[x]`.
pub fn saturation<F: Field>(i: &Ideal<F>, f: &Polynomial<F>, limits: &Limits) -> Result<Ideal<F>> {
    let ring = i.ring();
    let global = ring.with_order(MonomialOrder::DegRevLex);
    let (ext, w) = with_aux::<F>(ring)?;
    let aux = &Polynomial::one(&ext) - &(&w * &f.to_ring(&ext)?);
    let big = i.to_ring(&ext)?.with([aux])?;
    let gb = groebner_basis(&big, limits)?;
    contract(gb.basis(), &global)?.to_ring(ring)
}

/// `I : J^∞ = ∩_g I : g^∞` over the generators `g` of `J`.
pub fn saturation_by_ideal<F: Field>(i: &Ideal<F>, j: &Ideal<F>, limits: &Limits) -> Result<Ideal<F>> {
    let mut acc: Option<Ideal<F>> = None;
    for g in j.gens() {
        let s = saturation(i, g, limits)?;
        acc = Some(match acc {
            None => s,
            Some(a) => intersection(&a, &s, limits)?,
        });
    }
    match acc {
        Some(a) => Ok(a),
        // J = 0: I : 0^∞ is the unit ideal
        None => Ideal::new(i.ring(), vec![Polynomial::one(i.ring())]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::scalar::rat;
    use crate::Rational;

    fn ring(vars: &[&str]) -> RingRef {
        PolyRing::new(vars, MonomialOrder::DegRevLex).unwrap()
    }

    fn ideal(r: &RingRef, gens: &[&str]) -> Ideal<Rational> {
        Ideal::new(r, gens.iter().map(|s| parse_poly(s, r).unwrap()).collect()).unwrap()
    }

    fn p(s: &str, r: &RingRef) -> Polynomial<Rational> {
        parse_poly(s, r).unwrap()
    }

    #[test]
    fn dimensions() {
        let l = Limits::default();
        let r = ring(&["x", "y1", "y2"]);
        assert_eq!(krull_dimension(&ideal(&r, &["y1 + y2", "y1^2 + y1*y2 + y2^2 + x^2"]), &l).unwrap(), 1);
        assert_eq!(krull_dimension(&Ideal::<Rational>::zero(&r), &l).unwrap(), 3);
        let r2 = ring(&["x", "y"]);
        assert_eq!(krull_dimension(&ideal(&r2, &["x", "y"]), &l).unwrap(), 0);
        assert_eq!(krull_dimension(&ideal(&r2, &["x + 1", "x"]), &l).unwrap(), -1);
    }

    #[test]
    fn elimination() {
        let l = Limits::default();
        let r = ring(&["y", "X", "Z"]);
        let e = eliminate(&ideal(&r, &["y^2 - X", "y^3 - Z"]), &[0], &l).unwrap();
        let target = p("Z^2 - X^3", &PolyRing::new(&["X", "Z"], MonomialOrder::DegRevLex).unwrap());
        let gb = groebner_basis(&e, &l).unwrap();
        assert!(gb.contains(&target.to_ring(e.ring()).unwrap()));
        let r2 = ring(&["x", "y"]);
        assert!(eliminate(&ideal(&r2, &["x - y"]), &[1], &l).unwrap().is_zero());
        let e = eliminate(&ideal(&r2, &["x", "y"]), &[1], &l).unwrap();
        assert_eq!(e.gens().len(), 1);
        assert_eq!(e.gens()[0].to_string(), "x");
    }

    #[test]
    fn radicals() {
        let l = Limits::default();
        let r = ring(&["x", "y"]);
        assert!(radical_membership(&p("x", &r), &ideal(&r, &["x^2"]), &l).unwrap());
        assert!(!radical_membership(&p("y", &r), &ideal(&r, &["x^2"]), &l).unwrap());
        assert!(radical_membership(&p("x*y", &r), &ideal(&r, &["x^2", "y^3"]), &l).unwrap());
    }

    #[test]
    fn singular_loci() {
        let l = Limits::default();
        let r = ring(&["x", "y"]);
        let s = singular_locus_ideal(&ideal(&r, &["y^2 + x^3"]), 1).unwrap();
        assert_eq!(s.gens().len(), 3);
        assert_eq!(krull_dimension(&s, &l).unwrap(), 0);
        let s = singular_locus_ideal(&ideal(&r, &["x"]), 1).unwrap();
        assert!(groebner_basis(&s, &l).unwrap().is_unit());
        assert!(singular_locus_ideal(&ideal(&r, &["x"]), 2).is_err());
        // 3x² - 3 = 2y = 0 misses the curve: (±1, 0) give ∓2
        let s = singular_locus_ideal(&ideal(&r, &["y^2 + x^3 - 3*x"]), 1).unwrap();
        assert!(groebner_basis(&s, &l).unwrap().is_unit());
    }

    #[test]
    fn translation() {
        let r = ring(&["x", "y"]);
        let t = translate_ideal(&ideal(&r, &["y^2 + x^3 - 3*x"]), &[rat(1, 1), rat(0, 1)]).unwrap();
        assert_eq!(t.gens()[0], p("y^2 + x^3 + 3*x^2 - 2", &r));
        let t = translate_ideal(&ideal(&r, &["x"]), &[rat(0, 1), rat(0, 1)]).unwrap();
        assert_eq!(t.gens()[0], p("x", &r));
        let r1 = ring(&["x"]);
        let t = translate_ideal(&ideal(&r1, &["x - 1"]), &[rat(1, 1)]).unwrap();
        assert_eq!(t.gens()[0], p("x", &r1));
    }

    #[test]
    fn intersections_and_saturations() {
        let l = Limits::default();
        let r = ring(&["x", "y"]);
        let i = intersection(&ideal(&r, &["x"]), &ideal(&r, &["y"]), &l).unwrap();
        let gb = groebner_basis(&i, &l).unwrap();
        assert!(gb.contains(&p("x*y", &r)));
        assert!(!gb.contains(&p("x", &r)));
        // (x*y, x^2) : x^inf = (1)
        let s = saturation(&ideal(&r, &["x*y", "x^2"]), &p("x", &r), &l).unwrap();
        assert!(groebner_basis(&s, &l).unwrap().is_unit());
        // (x*y) : x^inf = (y)
        let s = saturation(&ideal(&r, &["x*y"]), &p("x", &r), &l).unwrap();
        let gb = groebner_basis(&s, &l).unwrap();
        assert!(gb.contains(&p("y", &r)));
        let s = saturation_by_ideal(&ideal(&r, &["x*y*(x - 1)"]), &ideal(&r, &["x", "y"]), &l).unwrap();
        assert!(groebner_basis(&s, &l).unwrap().contains(&p("x*y*(x - 1)", &r)));
        assert!(!groebner_basis(&s, &l).unwrap().contains(&p("x*y", &r)));
    }
}
