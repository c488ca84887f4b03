use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::GermSpec;
use crate::poly::Matrix;
use crate::{Poly, Rational};

/// Positive weights `w` of the source variables and degrees `d` of the
/// components with `f_i(λ^w x) = λ^{d_i} f_i(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightData {
    pub weights: Vec<Rational>,
    pub degrees: Vec<Rational>,
}

impl WeightData {
    /// Whether every component is weighted homogeneous of its degree.
    pub fn holds_for(&self, g: &GermSpec) -> bool {
        g.branches().iter().all(|b| {
            b.components()
                .iter()
                .zip(&self.degrees)
                .all(|(c, d)| c.terms().iter().all(|(m, _)| weighted_degree(m.exponents(), &self.weights) == *d))
        })
    }
}

fn weighted_degree(e: &[u32], w: &[Rational]) -> Rational {
    e.iter().zip(w).map(|(&a, w)| w * Rational::from_integer(a.into())).sum()
}

/// Rows `Σ e_j w_j - d = 0` for each monomial of `p`; `d` sits in column `dcol`.
fn rows_for(p: &Poly, nvars: usize, width: usize, dcol: usize) -> Vec<Vec<Rational>> {
    p.terms()
        .iter()
        .map(|(m, _)| {
            let mut row = vec![Rational::zero(); width];
            for v in 0..nvars {
                row[v] = Rational::from_integer(m.exponent(v).into());
            }
            row[dcol] = -Rational::one();
            row
        })
        .collect()
}

/// Looks for a strictly positive vector in the span of `basis`, trying small
/// non-negative integer combinations in order of increasing coefficient sum,
/// and scales it to a primitive integer vector.
fn positive_in_span(basis: &[Vec<Rational>], width: usize) -> Option<Vec<Rational>> {
    let r = basis.len();
    if r == 0 {
        return None;
    }
    const MAX: usize = 3;
    let mut combos: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..r {
        combos = combos
            .into_iter()
            .flat_map(|c| (0..=MAX).map(move |a| c.iter().copied().chain(std::iter::once(a)).collect()))
            .collect();
    }
    combos.sort_by_key(|c: &Vec<usize>| (c.iter().sum::<usize>(), std::cmp::Reverse(c.clone())));
    for c in combos {
        let mut v = vec![Rational::zero(); width];
        for (coef, b) in c.iter().zip(basis) {
            for (x, y) in v.iter_mut().zip(b) {
                *x += y * Rational::from_integer((*coef as i64).into());
            }
        }
        if v.iter().all(|x| x.is_positive()) {
            let lcm = v.iter().fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let ints: Vec<num_bigint::BigInt> = v.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
            let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, x| acc.gcd(x));
            return Some(ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect());
        }
    }
    None
}

/// Weights and degree making `p` quasihomogeneous, if any.
pub fn polynomial_weights(p: &Poly) -> Option<(Vec<Rational>, Rational)> {
    if p.is_zero() || p.is_constant() {
        return None;
    }
    let n = p.ring().nvars();
    let rows = rows_for(p, n, n + 1, n);
    let v = positive_in_span(&Matrix::from_rows(rows).nullspace(), n + 1)?;
    Some((v[..n].to_vec(), v[n].clone()))
}

/// Weighted homogeneity of a mono-germ in prenormal form: the coordinate
/// components get the weight of their variable.
pub fn weighted_homogeneity(g: &GermSpec) -> Option<WeightData> {
    if !g.is_mono() {
        return None;
    }
    let n = g.n();
    let b = &g.branches()[0];
    let width = n + 2;
    let mut rows = rows_for(b.p(), n, width, n);
    rows.extend(rows_for(b.q(), n, width, n + 1));
    if rows.is_empty() {
        rows.push(vec![Rational::zero(); width]);
    }
    let v = positive_in_span(&Matrix::from_rows(rows).nullspace(), width)?;
    let weights = v[..n].to_vec();
    let mut degrees = weights[..n - 1].to_vec();
    degrees.push(v[n].clone());
    degrees.push(v[n + 1].clone());
    Some(WeightData { weights, degrees })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&a| rat(a, 1)).collect()
    }

    #[test]
    fn germ_weights() {
        let g = GermSpec::mono("S1", &["x", "y^2", "y^3 + x^2*y"]).unwrap();
        let w = weighted_homogeneity(&g).unwrap();
        assert_eq!((w.weights.clone(), w.degrees.clone()), (ints(&[1, 1]), ints(&[1, 2, 3])));
        assert!(w.holds_for(&g));
        let g = GermSpec::mono("S2", &["x", "y^2", "y^3 + x^3*y"]).unwrap();
        let w = weighted_homogeneity(&g).unwrap();
        assert_eq!((w.weights, w.degrees), (ints(&[2, 3]), ints(&[2, 6, 9])));
        let g = GermSpec::mono("B", &["x", "y^2", "x^2*y + y^5 + y^3"]).unwrap();
        assert!(weighted_homogeneity(&g).is_none());
    }

    #[test]
    fn function_weights() {
        let r = crate::poly::PolyRing::new(&["x", "y"], crate::poly::MonomialOrder::DegRevLex).unwrap();
        let p: Poly = crate::poly::parse_poly("y^2 + x^5", &r).unwrap();
        assert_eq!(polynomial_weights(&p).unwrap(), (ints(&[2, 5]), rat(10, 1)));
    }
}
