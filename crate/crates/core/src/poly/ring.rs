use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use crate::error::{Error, Result};

/// Monomial orderings supported by the kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic; a global well-ordering.
    DegRevLex,
    /// Negative degree reverse lexicographic; a local degree ordering
    /// (lower total degree is larger). Used for computations in the
    /// localization at the origin.
    NegDegRevLex,
    /// Pure lexicographic.
    Lex,
    /// Product of two degrevlex blocks; the first `block` variables are
    /// eliminated.
    Elimination { block: usize },
}

impl MonomialOrder {
    pub fn is_global(&self) -> bool {
        !matches!(self, MonomialOrder::NegDegRevLex)
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        match *self {
            MonomialOrder::DegRevLex => degrevlex(ea, eb),
            MonomialOrder::NegDegRevLex => {
                let (da, db) = (a.degree(), b.degree());
                if da != db {
                    return db.cmp(&da);
                }
                revlex_tail(ea, eb)
            }
            MonomialOrder::Lex => ea.cmp(eb),
            MonomialOrder::Elimination { block } => {
                degrevlex(&ea[..block], &eb[..block]).then_with(|| degrevlex(&ea[block..], &eb[block..]))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::DegRevLex => "degrevlex".into(),
            MonomialOrder::NegDegRevLex => "negdegrevlex".into(),
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::Elimination { block } => format!("elim({block})"),
        }
    }
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    if da != db {
        return da.cmp(&db);
    }
    revlex_tail(a, b)
}

// Among monomials of equal degree: the one with the smaller exponent in the
// last differing variable is larger.
fn revlex_tail(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

/// A polynomial ring over an exact field: ordered variable names plus the
/// active monomial ordering.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    vars: Vec<String>,
    order: MonomialOrder,
}

pub type RingRef = Arc<PolyRing>;

impl PolyRing {
    pub fn new<S: AsRef<str>>(vars: &[S], order: MonomialOrder) -> Result<RingRef> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if !is_valid_name(v) {
                return Err(Error::InvalidRing(format!("bad variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        if let MonomialOrder::Elimination { block } = order {
            if block > vars.len() {
                return Err(Error::InvalidRing(format!(
                    "elimination block {block} exceeds {} variables",
                    vars.len()
                )));
            }
        }
        Ok(Arc::new(PolyRing { vars, order }))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(a, b)
    }

    /// Same variables, different ordering.
    pub fn with_order(&self, order: MonomialOrder) -> RingRef {
        Arc::new(PolyRing { vars: self.vars.clone(), order })
    }

    /// Appends variables at the end (keeping the ordering kind).
    pub fn extended<S: AsRef<str>>(&self, extra: &[S], order: MonomialOrder) -> Result<RingRef> {
        let mut vars = self.vars.clone();
        vars.extend(extra.iter().map(|s| s.as_ref().to_string()));
        PolyRing::new(&vars, order)
    }
}

pub fn is_valid_name(v: &str) -> bool {
    let mut chars = v.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl fmt::Debug for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}; {}]", self.vars.join(","), self.order.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn degrevlex_examples() {
        let o = MonomialOrder::DegRevLex;
        assert_eq!(o.compare(&m(&[2, 0]), &m(&[1, 1])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[1, 1]), &m(&[0, 2])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[1, 1]), &m(&[1, 0])), Ordering::Greater);
        // x*z^0*y^2 vs x^2*z: revlex decides on last variable
        assert_eq!(o.compare(&m(&[1, 2, 0]), &m(&[2, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn local_order_prefers_low_degree() {
        let o = MonomialOrder::NegDegRevLex;
        assert_eq!(o.compare(&m(&[1, 0]), &m(&[2, 0])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[0, 0]), &m(&[0, 1])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[1, 0]), &m(&[0, 1])), Ordering::Greater);
    }

    #[test]
    fn elimination_block_dominates() {
        let o = MonomialOrder::Elimination { block: 1 };
        assert_eq!(o.compare(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[0, 2]), &m(&[0, 1])), Ordering::Greater);
    }

    #[test]
    fn ring_validation() {
        assert!(PolyRing::new(&["x", "x"], MonomialOrder::DegRevLex).is_err());
        assert!(PolyRing::new(&["1x"], MonomialOrder::DegRevLex).is_err());
        assert!(PolyRing::new(&["x_1", "y2"], MonomialOrder::DegRevLex).is_ok());
        assert!(PolyRing::new(&["x"], MonomialOrder::Elimination { block: 2 }).is_err());
    }
}
