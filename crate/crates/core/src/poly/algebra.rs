//! Division, gcd, squarefree parts, Jacobians, determinants and resultants.

use itertools::Itertools;

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::ring::{MonomialOrder, RingRef};
use crate::error::{Error, Result};
use crate::scalar::Field;

/// `a / b` when `b` divides `a` exactly, otherwise `None`.
///
/// Uses a global ordering internally, so it also works in local rings
/// (where the term-by-term division loop would not terminate).
pub fn divide_exact<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>) -> Option<Polynomial<F>> {
    assert!(!b.is_zero(), "division by the zero polynomial");
    let ring = a.ring().clone();
    if !ring.order().is_global() {
        let g = ring.with_order(MonomialOrder::DegRevLex);
        let q = divide_exact(&a.to_ring(&g).ok()?, &b.to_ring(&g).ok()?)?;
        return q.to_ring(&ring).ok();
    }
    let (blm, blc) = b.leading_term().unwrap().clone();
    let mut r = a.clone();
    let mut q = Vec::new();
    while let Some((m, c)) = r.leading_term().cloned() {
        if !blm.divides(&m) {
            return None;
        }
        let t = m.div(&blm);
        let k = c / blc.clone();
        r = r.sub_mul_term(&k, &t, b);
        q.push((t, k));
    }
    Some(Polynomial::from_terms(&ring, q))
}

fn exact<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
    divide_exact(a, b).unwrap_or_else(|| panic!("inexact division ({a}) / ({b})"))
}

/// Greatest common divisor, normalized to leading coefficient 1 under a
/// global ordering of the ring's variables. `gcd(0, 0) = 0`.
pub fn gcd<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
    let ring = a.ring().clone();
    if !ring.order().is_global() {
        let g = ring.with_order(MonomialOrder::DegRevLex);
        return gcd(&a.to_ring(&g).unwrap(), &b.to_ring(&g).unwrap()).to_ring(&ring).unwrap();
    }
    normalize(gcd_rec(a, b))
}

fn normalize<F: Field>(p: Polynomial<F>) -> Polynomial<F> {
    if p.is_zero() {
        p
    } else {
        p.monic()
    }
}

fn gcd_rec<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(a.ring());
    }
    let va = a.variables();
    let vb = b.variables();
    // main variable: the largest index present in either
    let v = *va.iter().chain(vb.iter()).max().unwrap();
    if !a.involves(v) {
        return gcd_rec(a, &content(b, v));
    }
    if !b.involves(v) {
        return gcd_rec(&content(a, v), b);
    }
    let ca = content(a, v);
    let cb = content(b, v);
    let c = gcd_rec(&ca, &cb);
    let mut p = exact(a, &ca);
    let mut q = exact(b, &cb);
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    // primitive PRS
    while !q.is_zero() && q.involves(v) {
        let r = pseudo_rem(&p, &q, v);
        p = q;
        q = if r.is_zero() { r } else { primitive_part(&r, v) };
    }
    let g = if q.is_zero() { primitive_part(&p, v) } else { Polynomial::one(a.ring()) };
    &c * &g
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
fn content<F: Field>(p: &Polynomial<F>, v: usize) -> Polynomial<F> {
    let coeffs = p.coefficients_in(v);
    let mut g = Polynomial::zero(p.ring());
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        g = gcd_rec(&g, c);
        if g.is_constant() {
            return Polynomial::one(p.ring());
        }
    }
    normalize(g)
}

fn primitive_part<F: Field>(p: &Polynomial<F>, v: usize) -> Polynomial<F> {
    normalize(exact(p, &content(p, v)))
}

/// Pseudo-remainder of `a` by `b` with respect to the variable `v`.
pub fn pseudo_rem<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>, v: usize) -> Polynomial<F> {
    let db = b.degree_in(v);
    let bc = b.coefficients_in(v);
    let lb = bc[db as usize].clone();
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = r.coefficients_in(v)[dr as usize].clone();
        let shift = Polynomial::monomial(
            a.ring(),
            Monomial::var(a.ring().nvars(), v).pow_exp(dr - db),
            F::one(),
        );
        r = &(&lb * &r) - &(&(&lr * &shift) * b);
    }
    r
}

/// Removes repeated factors: `p / gcd(p, ∂p/∂v₁, …, ∂p/∂vₙ)`, made monic.
pub fn squarefree_part<F: Field>(p: &Polynomial<F>) -> Result<Polynomial<F>> {
    if p.is_zero() {
        return Err(Error::ZeroInput);
    }
    if p.is_constant() {
        return Ok(Polynomial::one(p.ring()));
    }
    let mut g = p.clone();
    for v in p.variables() {
        g = gcd(&g, &p.derivative(v));
        if g.is_constant() {
            return Ok(p.monic());
        }
    }
    Ok(exact(p, &g).monic())
}

/// Entry `(i, j)` is `∂ps[i]/∂vars[j]`.
pub fn jacobian_matrix<F: Field>(ps: &[Polynomial<F>], vars: &[usize]) -> Vec<Vec<Polynomial<F>>> {
    ps.iter().map(|p| vars.iter().map(|&v| p.derivative(v)).collect()).collect()
}

/// Same as [`jacobian_matrix`] but with variables given by name.
pub fn jacobian_matrix_named<F: Field>(
    ps: &[Polynomial<F>],
    ring: &RingRef,
    vars: &[&str],
) -> Result<Vec<Vec<Polynomial<F>>>> {
    for p in ps {
        if !super::polynomial::same_ring(p.ring(), ring) {
            return Err(Error::RingMismatch(format!("{:?} vs {:?}", p.ring(), ring)));
        }
    }
    let idx = vars.iter().map(|v| ring.var_index(v)).collect::<Result<Vec<_>>>()?;
    Ok(jacobian_matrix(ps, &idx))
}

/// Determinant of a square polynomial matrix by fraction-free Bareiss
/// elimination (all intermediate divisions are exact).
pub fn determinant<F: Field>(ring: &RingRef, m: &[Vec<Polynomial<F>>]) -> Polynomial<F> {
    let n = m.len();
    if n == 0 {
        return Polynomial::one(ring);
    }
    assert!(m.iter().all(|r| r.len() == n), "matrix must be square");
    let mut a: Vec<Vec<Polynomial<F>>> = m.to_vec();
    let mut prev = Polynomial::one(ring);
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    negate = !negate;
                }
                None => return Polynomial::zero(ring),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = if num.is_zero() { num } else { exact(&num, &prev) };
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// All `size × size` minors of `m`, in lexicographic order of (rows, cols).
pub fn minors<F: Field>(ring: &RingRef, m: &[Vec<Polynomial<F>>], size: usize) -> Vec<Polynomial<F>> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    if size == 0 {
        return vec![Polynomial::one(ring)];
    }
    if size > rows || size > cols {
        return Vec::new();
    }
    let mut out = Vec::new();
    for rs in (0..rows).combinations(size) {
        for cs in (0..cols).combinations(size) {
            let sub: Vec<Vec<_>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect()).collect();
            out.push(determinant(ring, &sub));
        }
    }
    out
}

/// Sylvester matrix of `p` and `q` with respect to `var`.
pub fn sylvester_matrix<F: Field>(p: &Polynomial<F>, q: &Polynomial<F>, var: usize) -> Result<Vec<Vec<Polynomial<F>>>> {
    p.check_ring(q)?;
    let name = || p.ring().vars()[var].clone();
    let (dp, dq) = (p.degree_in(var) as usize, q.degree_in(var) as usize);
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroInput);
    }
    if dp == 0 || dq == 0 {
        return Err(Error::DegreeZero(name()));
    }
    let ring = p.ring();
    let size = dp + dq;
    let pc = p.coefficients_in(var);
    let qc = q.coefficients_in(var);
    let mut m = vec![vec![Polynomial::zero(ring); size]; size];
    for i in 0..dq {
        for (k, c) in pc.iter().rev().enumerate() {
            m[i][i + k] = c.clone();
        }
    }
    for i in 0..dp {
        for (k, c) in qc.iter().rev().enumerate() {
            m[dq + i][i + k] = c.clone();
        }
    }
    Ok(m)
}

/// Resultant of `p` and `q` with respect to `var`; free of `var`.
pub fn sylvester_resultant<F: Field>(p: &Polynomial<F>, q: &Polynomial<F>, var: usize) -> Result<Polynomial<F>> {
    let m = sylvester_matrix(p, q, var)?;
    Ok(determinant(p.ring(), &m))
}

impl Monomial {
    pub(crate) fn pow_exp(&self, e: u32) -> Monomial {
        Monomial::from_exponents(self.exponents().iter().map(|x| x * e).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, PolyRing};
    use crate::Rational;

    fn ring(vars: &[&str]) -> RingRef {
        PolyRing::new(vars, MonomialOrder::DegRevLex).unwrap()
    }

    fn p(s: &str, r: &RingRef) -> Polynomial<Rational> {
        parse_poly(s, r).unwrap()
    }

    #[test]
    fn resultant_examples() {
        let r = ring(&["y", "X", "Z", "W", "a", "b"]);
        let res = sylvester_resultant(&p("y^2 - X", &r), &p("y^3 - Z", &r), 0).unwrap();
        assert_eq!(res, p("Z^2 - X^3", &r));
        let res = sylvester_resultant(&p("y - a", &r), &p("y - b", &r), 0).unwrap();
        assert!(res == p("a - b", &r) || res == p("b - a", &r));
        let res = sylvester_resultant(&p("y^2 - X", &r), &p("y*W - Z", &r), 0).unwrap();
        assert_eq!(res, p("Z^2 - X*W^2", &r));
        assert_eq!(sylvester_resultant(&p("X", &r), &p("y", &r), 0), Err(Error::DegreeZero("y".into())));
    }

    #[test]
    fn squarefree_examples() {
        let r = ring(&["x", "y"]);
        let sq = squarefree_part(&p("(y - x^2)^2*(y + x^2)", &r)).unwrap();
        assert_eq!(sq, p("(y - x^2)*(y + x^2)", &r).monic());
        assert_eq!(squarefree_part(&p("x^3", &r)).unwrap(), p("x", &r));
        let f = p("y^2 - x^4", &r);
        assert_eq!(squarefree_part(&f).unwrap(), f.monic());
        assert_eq!(squarefree_part(&Polynomial::<Rational>::zero(&r)), Err(Error::ZeroInput));
    }

    #[test]
    fn gcd_multivariate() {
        let r = ring(&["x", "y", "z"]);
        let a = p("(x + y*z)*(x^2 - y)", &r);
        let b = p("(x + y*z)*(z + 1)", &r);
        assert_eq!(gcd(&a, &b), p("x + y*z", &r).monic());
        assert!(gcd(&p("x", &r), &p("y", &r)).is_constant());
    }

    #[test]
    fn jacobian_examples() {
        let r = ring(&["x", "y"]);
        let j = jacobian_matrix(&[p("y^2 + x^3", &r)], &[0, 1]);
        assert_eq!(j[0], vec![p("3*x^2", &r), p("2*y", &r)]);
        let j = jacobian_matrix(&[p("x*y", &r), p("x + y", &r)], &[0, 1]);
        assert_eq!(j, vec![vec![p("y", &r), p("x", &r)], vec![p("1", &r), p("1", &r)]]);
    }

    #[test]
    fn determinants_and_minors() {
        let r = ring(&["x", "y"]);
        let m = vec![vec![p("0", &r), p("x", &r)], vec![p("y", &r), p("1", &r)]];
        assert_eq!(determinant(&r, &m), p("-x*y", &r));
        let m = vec![vec![p("x", &r), p("y", &r), p("1", &r)]];
        assert_eq!(minors(&r, &m, 1).len(), 3);
        assert!(minors(&r, &m, 2).is_empty());
    }

    #[test]
    fn exact_division_in_local_ring() {
        let r = PolyRing::new(&["x", "y"], MonomialOrder::NegDegRevLex).unwrap();
        let a = p("x^2 - y^2 + x^3 - x*y^2", &r);
        let q = divide_exact(&a, &p("x - y", &r)).unwrap();
        assert_eq!(q, p("(x + y)*(1 + x)", &r));
        assert!(divide_exact(&p("x + 1", &r), &p("x", &r)).is_none());
    }
}
