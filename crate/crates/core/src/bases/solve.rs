use serde::{Deserialize, Serialize};

use super::{groebner_basis, Ideal, Limits};
use crate::error::Result;
use crate::poly::univariate::{factor, format_uni, UniPoly};
use crate::poly::{MonomialOrder, Polynomial};
use crate::Rational;

/// A non-rational (or not fully resolved) piece of a solution set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveComponent {
    /// Coordinates already fixed to rationals on this piece.
    pub fixed: Vec<(String, String)>,
    /// Variable whose values are the roots of `minimal_polynomial`.
    pub variable: String,
    pub minimal_polynomial: String,
    pub degree: usize,
    /// False if irreducibility could not be certified within the search cap.
    pub certified: bool,
}

/// Solution set of a polynomial system over the rationals.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Solutions {
    /// Rational points, coordinates in ring variable order.
    pub points: Vec<Vec<Rational>>,
    pub components: Vec<SolveComponent>,
    /// Some piece of the solution set has positive dimension.
    pub positive_dimensional: bool,
}

impl Solutions {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.components.is_empty() && !self.positive_dimensional
    }
}

/// Solves by lexicographic Gröbner bases and exact univariate factorization,
/// back-substituting rational roots variable by variable (last variable
/// first).
pub fn solve_zero_dimensional(ideal: &Ideal<Rational>, limits: &Limits) -> Result<Solutions> {
    let lex = ideal.ring().with_order(MonomialOrder::Lex);
    let start = ideal.to_ring(&lex)?;
    let mut out = Solutions::default();
    let mut fixed: Vec<Option<Rational>> = vec![None; lex.nvars()];
    recurse(&start, &mut fixed, limits, &mut out)?;
    out.points.sort();
    out.points.dedup();
    Ok(out)
}

fn recurse(
    ideal: &Ideal<Rational>,
    fixed: &mut Vec<Option<Rational>>,
    limits: &Limits,
    out: &mut Solutions,
) -> Result<()> {
    let ring = ideal.ring().clone();
    let gb = groebner_basis(ideal, limits)?;
    if gb.is_unit() {
        return Ok(());
    }
    let free: Vec<usize> = (0..ring.nvars()).filter(|&v| fixed[v].is_none()).collect();
    let Some(&var) = free.last() else {
        // every variable fixed and the ideal is not the unit ideal
        out.points.push(fixed.iter().map(|c| c.clone().unwrap()).collect());
        return Ok(());
    };
    let dim = gb.krull_dimension() - (ring.nvars() - free.len()) as i64;
    if dim > 0 {
        out.positive_dimensional = true;
        return Ok(());
    }
    let uni = gb
        .basis()
        .iter()
        .find(|g| g.variables().iter().all(|&v| v == var))
        .cloned()
        .expect("zero-dimensional lex basis has a univariate element");
    let coeffs: Vec<Rational> = uni.coefficients_in(var).iter().map(|c| c.constant_term()).collect();
    for f in factor(&UniPoly::new(coeffs))? {
        if f.poly.degree() == 1 {
            let root = -f.poly.coeffs()[0].clone() / f.poly.coeffs()[1].clone();
            let binding = [(var, Polynomial::constant(&ring, root.clone()))];
            let gens = ideal.gens().iter().map(|g| g.substitute(&binding, &ring)).collect::<Result<Vec<_>>>()?;
            fixed[var] = Some(root);
            recurse(&Ideal::new(&ring, gens)?, fixed, limits, out)?;
            fixed[var] = None;
        } else {
            out.components.push(SolveComponent {
                fixed: fixed
                    .iter()
                    .enumerate()
                    .filter_map(|(i, c)| c.as_ref().map(|c| (ring.vars()[i].clone(), c.to_string())))
                    .collect(),
                variable: ring.vars()[var].clone(),
                minimal_polynomial: format_uni(&f.poly, &ring.vars()[var]),
                degree: f.poly.degree() as usize,
                certified: f.certified,
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, PolyRing};
    use crate::scalar::rat;

    #[test]
    fn rational_and_irrational_points() {
        let r = PolyRing::new(&["x", "y"], MonomialOrder::DegRevLex).unwrap();
        let i = Ideal::new(&r, vec![parse_poly("3*x^2 - 3", &r).unwrap(), parse_poly("2*y", &r).unwrap()]).unwrap();
        let s = solve_zero_dimensional(&i, &Limits::default()).unwrap();
        assert_eq!(s.points, vec![vec![rat(-1, 1), rat(0, 1)], vec![rat(1, 1), rat(0, 1)]]);
        assert!(s.components.is_empty());

        let i = Ideal::new(&r, vec![parse_poly("x^2 + 3", &r).unwrap(), parse_poly("y - 1", &r).unwrap()]).unwrap();
        let s = solve_zero_dimensional(&i, &Limits::default()).unwrap();
        assert!(s.points.is_empty());
        assert_eq!(s.components.len(), 1);
        assert_eq!(s.components[0].minimal_polynomial, "x^2 + 3");
        assert_eq!(s.components[0].fixed, vec![("y".to_string(), "1".to_string())]);

        let i = Ideal::new(&r, vec![parse_poly("x*y", &r).unwrap()]).unwrap();
        assert!(solve_zero_dimensional(&i, &Limits::default()).unwrap().positive_dimensional);
    }
}
