//! Dense univariate polynomials over the rationals: squarefree
//! decomposition, rational roots and factorization (Kronecker).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Resource, Result};

/// Coefficients, constant term first; no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly(Vec<BigRational>);

const TRIAL_DIVISION_LIMIT: u64 = 2_000_000;
const KRONECKER_COMBINATIONS: usize = 200_000;

impl UniPoly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UniPoly(c)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| BigRational::from_integer(v.into())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial has degree -1.
    pub fn degree(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn lc(&self) -> BigRational {
        self.0.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lc();
        UniPoly(self.0.iter().map(|c| c / &l).collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(i.into())).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UniPoly(Vec::new());
        }
        let mut out = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero());
        let mut r = self.0.clone();
        let dd = d.0.len() - 1;
        if r.len() <= dd {
            return (UniPoly(Vec::new()), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        let l = d.lc();
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] / &l;
            if !c.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    r[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Primitive integer polynomial with positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let l = self.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.0.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
        ints.into_iter().map(|c| c / &g * &sign).collect()
    }

    /// Yun's squarefree decomposition: monic `(factor, multiplicity)` pairs.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, u32)> {
        let mut out = Vec::new();
        if self.degree() <= 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let mut a = f.gcd(&fp);
        let mut b = f.div_rem(&a).0;
        let mut c = fp.div_rem(&a).0;
        let mut d = sub(&c, &b.derivative());
        let mut i = 1;
        while b.degree() > 0 {
            a = b.gcd(&d);
            if a.degree() > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            d = sub(&c, &b.derivative());
            i += 1;
        }
        out
    }
}

fn sub(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let n = a.0.len().max(b.0.len());
    let z = BigRational::zero();
    UniPoly::new((0..n).map(|i| a.0.get(i).unwrap_or(&z) - b.0.get(i).unwrap_or(&z)).collect())
}

/// Positive divisors of a nonzero integer, by trial division.
fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let mut n = n.abs();
    assert!(!n.is_zero());
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2u32);
    let mut steps = 0u64;
    while &p * &p <= n {
        steps += 1;
        if steps > TRIAL_DIVISION_LIMIT {
            return Err(Error::ResourceExceeded {
                resource: Resource::Factorization,
                limit: TRIAL_DIVISION_LIMIT as usize,
            });
        }
        if (&n % &p).is_zero() {
            let mut e = 0;
            while (&n % &p).is_zero() {
                n /= &p;
                e += 1;
            }
            primes.push((p.clone(), e));
        }
        p += 1u32;
    }
    if n > BigInt::one() {
        primes.push((n, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for d in &divs {
            let mut q = d.clone();
            for _ in 0..=e {
                next.push(q.clone());
                q *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    Ok(divs)
}

/// Distinct rational roots with multiplicities, ascending.
pub fn rational_roots(p: &UniPoly) -> Result<Vec<(BigRational, u32)>> {
    let mut out = Vec::new();
    for (f, mult) in p.squarefree_decomposition() {
        for r in rational_roots_squarefree(&f)? {
            out.push((r, mult));
        }
    }
    out.sort();
    Ok(out)
}

fn rational_roots_squarefree(p: &UniPoly) -> Result<Vec<BigRational>> {
    let mut roots = Vec::new();
    let mut f = p.clone();
    if f.degree() <= 0 {
        return Ok(roots);
    }
    if f.0[0].is_zero() {
        roots.push(BigRational::zero());
        f = f.div_rem(&UniPoly::from_ints(&[0, 1])).0;
    }
    if f.degree() <= 0 {
        return Ok(roots);
    }
    let ints = f.primitive_integer();
    let a0 = ints[0].clone();
    let an = ints.last().unwrap().clone();
    let num = divisors(&a0)?;
    let den = divisors(&an)?;
    for q in &den {
        for pn in &num {
            for s in [1i32, -1] {
                let cand = BigRational::new(pn * BigInt::from(s), q.clone());
                if !roots.contains(&cand) && f.eval(&cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    Ok(roots)
}

/// A factor over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub poly: UniPoly,
    pub multiplicity: u32,
    /// False when the search cap was hit before irreducibility was proven.
    pub certified: bool,
}

/// Factorization into monic factors over the rationals.
pub fn factor(p: &UniPoly) -> Result<Vec<Factor>> {
    let mut out = Vec::new();
    for (f, mult) in p.squarefree_decomposition() {
        let mut rest = f.clone();
        for r in rational_roots_squarefree(&f)? {
            let lin = UniPoly::new(vec![-r, BigRational::one()]);
            rest = rest.div_rem(&lin).0;
            out.push(Factor { poly: lin, multiplicity: mult, certified: true });
        }
        let mut stack = vec![rest];
        while let Some(g) = stack.pop() {
            if g.degree() <= 0 {
                continue;
            }
            if g.degree() <= 3 {
                // no rational roots left, so irreducible
                out.push(Factor { poly: g.monic(), multiplicity: mult, certified: true });
                continue;
            }
            match kronecker_split(&g) {
                Some(Some(h)) => {
                    let q = g.div_rem(&h).0;
                    stack.push(h);
                    stack.push(q);
                }
                Some(None) => out.push(Factor { poly: g.monic(), multiplicity: mult, certified: true }),
                None => out.push(Factor { poly: g.monic(), multiplicity: mult, certified: false }),
            }
        }
    }
    out.sort_by(|a, b| a.poly.degree().cmp(&b.poly.degree()).then_with(|| a.poly.0.cmp(&b.poly.0)));
    Ok(out)
}

/// Finds a nontrivial factor of degree ≤ deg/2, `Some(None)` if there is
/// none, or `None` if the search cap was hit.
fn kronecker_split(g: &UniPoly) -> Option<Option<UniPoly>> {
    let ints = g.primitive_integer();
    let gi = UniPoly::new(ints.iter().map(|c| BigRational::from_integer(c.clone())).collect());
    let n = gi.degree() as usize;
    for d in 2..=n / 2 {
        // evaluation points avoiding roots (there are none rational, but keep values small)
        let pts: Vec<BigRational> = (0..=d as i64)
            .map(|i| if i % 2 == 0 { i / 2 } else { -(i + 1) / 2 })
            .map(|v| BigRational::from_integer(v.into()))
            .collect();
        let mut choices: Vec<Vec<BigInt>> = Vec::new();
        let mut total: usize = 1;
        for x in &pts {
            let v = gi.eval(x).to_integer();
            let ds = divisors(&v).ok()?;
            let mut signed: Vec<BigInt> = ds.iter().cloned().collect();
            signed.extend(ds.iter().map(|x| -x));
            total = total.saturating_mul(signed.len());
            choices.push(signed);
        }
        if total > KRONECKER_COMBINATIONS {
            return None;
        }
        let mut idx = vec![0usize; choices.len()];
        loop {
            let vals: Vec<BigRational> =
                idx.iter().zip(&choices).map(|(&i, c)| BigRational::from_integer(c[i].clone())).collect();
            if let Some(h) = interpolate(&pts, &vals) {
                if h.degree() == d as isize && h.0.iter().all(|c| c.is_integer()) {
                    let (_, r) = gi.div_rem(&h);
                    if r.is_zero() {
                        return Some(Some(h.monic()));
                    }
                }
            }
            // next combination
            let mut k = 0;
            loop {
                if k == idx.len() {
                    break;
                }
                idx[k] += 1;
                if idx[k] < choices[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    Some(None)
}

fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> Option<UniPoly> {
    let mut acc = UniPoly(Vec::new());
    for (i, xi) in xs.iter().enumerate() {
        let mut basis = UniPoly::new(vec![ys[i].clone()]);
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                let den = xi - xj;
                if den.is_zero() {
                    return None;
                }
                basis = basis.mul(&UniPoly::new(vec![-xj / &den, BigRational::one() / &den]));
            }
        }
        acc = sub(&acc, &UniPoly::new(basis.0.iter().map(|c| -c).collect()));
    }
    Some(acc)
}

/// Renders as `t^2 + 1/2*t - 3`.
pub fn format_uni(p: &UniPoly, var: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, c) in p.0.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if mono.is_empty() {
            s.push_str(&a.to_string());
        } else if a.is_one() {
            s.push_str(&mono);
        } else {
            s.push_str(&format!("{a}*{mono}"));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn roots_with_multiplicity() {
        // (x - 1)^2 (2x + 3) (x^2 + 1)
        let p = UniPoly::from_ints(&[-1, 2, -1])
            .mul(&UniPoly::from_ints(&[3, 2]))
            .mul(&UniPoly::from_ints(&[1, 0, 1]));
        let r = rational_roots(&p).unwrap();
        assert_eq!(r, vec![(rat(-3, 2), 1), (rat(1, 1), 2)]);
    }

    #[test]
    fn factor_quartic_into_quadratics() {
        // (x^2 + 1)(x^2 - 2)
        let p = UniPoly::from_ints(&[1, 0, 1]).mul(&UniPoly::from_ints(&[-2, 0, 1]));
        let f = factor(&p).unwrap();
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|x| x.poly.degree() == 2 && x.certified));
        let irreducible = factor(&UniPoly::from_ints(&[1, 0, 0, 0, 1])).unwrap();
        assert_eq!(irreducible.len(), 1);
    }

    #[test]
    fn zero_root_and_format() {
        let p = UniPoly::from_ints(&[0, 0, -3, 1]);
        assert_eq!(rational_roots(&p).unwrap(), vec![(rat(0, 1), 2), (rat(3, 1), 1)]);
        assert_eq!(format_uni(&UniPoly::from_ints(&[3, 0, 2]), "t"), "2*t^2 + 3");
    }
}
