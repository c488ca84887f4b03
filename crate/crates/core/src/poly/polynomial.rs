use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;


use super::monomial::Monomial;
use super::ring::{PolyRing, RingRef};
use crate::error::{Error, Result};
use crate::scalar::Field;

/// A polynomial with exact coefficients.
///
/// Terms are kept sorted in descending order under the ring's monomial
/// ordering, with no zero coefficients, so the leading term is always
/// `terms[0]`.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: RingRef,
    terms: Vec<(Monomial, F)>,
}

pub(crate) fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, F::one())
    }

    pub fn constant(ring: &RingRef, c: F) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: F) -> Self {
        debug_assert_eq!(m.nvars(), ring.nvars());
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn var_at(ring: &RingRef, index: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), index), F::one())
    }

    pub fn var(ring: &RingRef, name: &str) -> Result<Self> {
        Ok(Self::var_at(ring, ring.var_index(name)?))
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, F)>>(ring: &RingRef, terms: I) -> Self {
        let mut acc: HashMap<Monomial, F> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            match acc.get_mut(&m) {
                Some(v) => *v = v.clone() + c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<(Monomial, F)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F)> {
        self.terms
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_value(&self) -> Option<F> {
        if self.is_zero() {
            return Some(F::zero());
        }
        if self.is_constant() {
            return Some(self.terms[0].1.clone());
        }
        None
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> F {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(F::zero)
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms.iter().find(|(t, _)| t == m).map(|(_, c)| c.clone()).unwrap_or_else(F::zero)
    }

    pub fn leading_term(&self) -> Option<&(Monomial, F)> {
        self.terms.first()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &F {
        &self.terms[0].1
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Lowest total degree of a term (the order at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    /// `deg(f) - deg(LM(f))`.
    pub fn ecart(&self) -> u32 {
        match self.terms.first() {
            Some((lm, _)) => self.total_degree().unwrap() - lm.degree(),
            None => 0,
        }
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(var)).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(var) > 0)
    }

    /// Indices of variables that occur in some term.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.ring.nvars()).filter(|&v| self.involves(v)).collect()
    }

    pub fn check_ring(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("{:?} vs {:?}", self.ring, other.ring)))
        }
    }

    fn assert_ring(&self, other: &Self) {
        assert!(
            same_ring(&self.ring, &other.ring),
            "ring mismatch: {:?} vs {:?}",
            self.ring,
            other.ring
        );
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c.clone())).collect(),
        }
    }

    /// Multiplies by `c * m`. Monomial orderings are multiplicative, so the
    /// term order is preserved.
    pub fn mul_term(&self, c: &F, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.clone() * c.clone())).collect(),
        }
    }

    /// Divides every coefficient by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }

    /// `self - c * m * g`, computed by a single merge.
    pub fn sub_mul_term(&self, c: &F, m: &Monomial, g: &Self) -> Self {
        self.assert_ring(g);
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g.terms.iter().map(|(t, x)| (t.mul(m), x.clone() * c.clone())).peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some((ma, _)), Some((mb, _))) => ring.cmp(ma, mb),
            };
            match ord {
                Ordering::Greater => {
                    let (ma, ca) = a.next().unwrap();
                    out.push((ma.clone(), ca.clone()));
                }
                Ordering::Less => {
                    let (mb, cb) = b.next().unwrap();
                    out.push((mb, -cb));
                }
                Ordering::Equal => {
                    let (ma, ca) = a.next().unwrap();
                    let (_, cb) = b.next().unwrap();
                    let s = ca.clone() - cb;
                    if !s.is_zero() {
                        out.push((ma.clone(), s));
                    }
                }
            }
        }
        Polynomial { ring: ring.clone(), terms: out }
    }

    fn merge_add(&self, other: &Self, negate: bool) -> Self {
        self.assert_ring(other);
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = if i == self.terms.len() {
                Ordering::Less
            } else if j == other.terms.len() {
                Ordering::Greater
            } else {
                ring.cmp(&self.terms[i].0, &other.terms[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (m, c) = &other.terms[j];
                    out.push((m.clone(), if negate { -c.clone() } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        self.terms[i].1.clone() - other.terms[j].1.clone()
                    } else {
                        self.terms[i].1.clone() + other.terms[j].1.clone()
                    };
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { ring: ring.clone(), terms: out }
    }

    fn mul_poly(&self, other: &Self) -> Self {
        self.assert_ring(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(c, m);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(c, m);
        }
        let mut acc: HashMap<Monomial, F> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.clone() * cb.clone();
                match acc.get_mut(&m) {
                    Some(v) => *v = v.clone() + c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let ring = &self.ring;
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn derivative(&self, var: usize) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.exponent(var) > 0).map(|(m, c)| {
            let e = m.exponent(var);
            let mut m2 = m.clone();
            m2.set_exponent(var, e - 1);
            (m2, c.clone() * F::from_i64(e as i64))
        });
        Self::from_terms(&self.ring, terms)
    }

    pub fn evaluate(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.ring.nvars());
        let mut total = F::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    v = v * point[i].clone();
                }
            }
            total = total + v;
        }
        total
    }

    /// Exact composition: replaces each bound variable by a polynomial of
    /// `target`. Unbound variables are carried over by name and must exist in
    /// `target`.
    pub fn substitute(&self, bindings: &[(usize, Polynomial<F>)], target: &RingRef) -> Result<Self> {
        let n = self.ring.nvars();
        let mut images: Vec<Option<Polynomial<F>>> = vec![None; n];
        for (v, img) in bindings {
            if *v >= n {
                return Err(Error::InvalidArgument(format!("variable index {v} out of range")));
            }
            if !same_ring(img.ring(), target) {
                return Err(Error::RingMismatch(format!(
                    "binding image lives in {:?}, expected {:?}",
                    img.ring(),
                    target
                )));
            }
            images[*v] = Some(img.clone());
        }
        for (v, img) in images.iter_mut().enumerate() {
            if img.is_none() && self.involves(v) {
                let name = &self.ring.vars()[v];
                let idx = target.index_of(name).ok_or_else(|| {
                    Error::RingMismatch(format!("unbound variable `{name}` missing from target ring"))
                })?;
                *img = Some(Polynomial::var_at(target, idx));
            }
        }
        // cache powers per variable
        let mut powers: Vec<Vec<Polynomial<F>>> = vec![Vec::new(); n];
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[v];
                if cache.is_empty() {
                    cache.push(Polynomial::one(target));
                }
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * images[v].as_ref().unwrap();
                    cache.push(next);
                }
                t = &t * &cache[e as usize];
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Substitution keyed by variable names; images must live in `target`.
    pub fn substitute_named(&self, bindings: &[(&str, Polynomial<F>)], target: &RingRef) -> Result<Self> {
        let b = bindings
            .iter()
            .map(|(name, p)| Ok((self.ring.var_index(name)?, p.clone())))
            .collect::<Result<Vec<_>>>()?;
        self.substitute(&b, target)
    }

    /// Re-expresses the polynomial in another ring, matching variables by name.
    pub fn to_ring(&self, target: &RingRef) -> Result<Self> {
        if same_ring(&self.ring, target) {
            return Ok(self.clone());
        }
        let mut map = vec![usize::MAX; self.ring.nvars()];
        for v in 0..self.ring.nvars() {
            let name = &self.ring.vars()[v];
            match target.index_of(name) {
                Some(i) => map[v] = i,
                None if self.involves(v) => {
                    return Err(Error::RingMismatch(format!("variable `{name}` missing from target ring")))
                }
                None => map[v] = 0,
            }
        }
        let n = target.nvars();
        Ok(Self::from_terms(target, self.terms.iter().map(|(m, c)| (m.remap(&map, n), c.clone()))))
    }

    /// Renames variables by permuting exponent positions: variable `i` becomes `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        let n = self.ring.nvars();
        Self::from_terms(&self.ring, self.terms.iter().map(|(m, c)| (m.remap(perm, n), c.clone())))
    }

    /// Coefficients as a polynomial in `var`: entry `i` multiplies `var^i`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial<F>> {
        let d = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Monomial, F)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(var) as usize;
            let mut m2 = m.clone();
            m2.set_exponent(var, 0);
            buckets[e].push((m2, c.clone()));
        }
        buckets.into_iter().map(|t| Self::from_terms(&self.ring, t)).collect()
    }

    /// Inverse of [`Self::coefficients_in`].
    pub fn from_coefficients_in(ring: &RingRef, var: usize, coeffs: &[Polynomial<F>]) -> Self {
        let mut terms = Vec::new();
        for (i, c) in coeffs.iter().enumerate() {
            for (m, a) in c.terms() {
                let mut m2 = m.clone();
                m2.set_exponent(var, m.exponent(var) + i as u32);
                terms.push((m2, a.clone()));
            }
        }
        Self::from_terms(ring, terms)
    }

    /// Sum of the terms of total degree `< bound`.
    pub fn truncate_degree(&self, bound: u32) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.degree() < bound).cloned().collect(),
        }
    }

    pub fn map_coefficients<G: Field>(&self, f: impl Fn(&F) -> G) -> Polynomial<G> {
        Polynomial::from_terms(&self.ring, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn fmt_with(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mono = format_monomial(&self.ring, m);
            match (abs.is_one(), mono.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => f.write_str(&mono)?,
                (false, true) => write!(f, "{abs}")?,
                (false, false) => write!(f, "{abs}*{mono}")?,
            }
        }
        Ok(())
    }
}

fn format_monomial(ring: &PolyRing, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ring.vars()[i].clone()),
            _ => parts.push(format!("{}^{}", ring.vars()[i], e)),
        }
    }
    parts.join("*")
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f)
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f)
    }
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> std::hash::Hash for Polynomial<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl<'a, F: Field> Add<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
        self.merge_add(rhs, false)
    }
}

impl<'a, F: Field> Sub<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
        self.merge_add(rhs, true)
    }
}

impl<'a, F: Field> Mul<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
        self.mul_poly(rhs)
    }
}

impl<F: Field> Add for Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: Self) -> Self {
        self.merge_add(&rhs, false)
    }
}

impl<F: Field> Sub for Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Self {
        self.merge_add(&rhs, true)
    }
}

impl<F: Field> Mul for Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Self {
        self.mul_poly(&rhs)
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl<F: Field> Neg for Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        -&self
    }
}
