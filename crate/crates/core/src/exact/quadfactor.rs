//! Factorization over ℚ(√d) by Trager's norm method.

use num_traits::Zero;

use super::factor::factor_over_q;
use super::modp::squarefree_witness;
use super::poly::{IPoly, QPoly, RPoly};
use super::quad::QuadElem;
use super::{Coeff, Rat};
use crate::error::{Error, Result};

/// `unit · ∏ factors`, factors monic over ℚ(√d).
#[derive(Clone, Debug, PartialEq)]
pub struct QuadFactorization {
    pub d: u64,
    pub unit: QuadElem,
    pub factors: Vec<QPoly>,
}

impl QuadFactorization {
    pub fn expand(&self) -> QPoly {
        self.factors.iter().fold(QPoly::constant(self.unit.clone()), |acc, g| &acc * g)
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.factors.iter().map(|g| g.degree().unwrap_or(0)).collect()
    }

    /// True when applying κ to every factor permutes the list.
    pub fn conjugation_permutes(&self) -> bool {
        let conj: Vec<QPoly> = self.factors.iter().map(conj_poly).collect();
        let mut used = vec![false; self.factors.len()];
        conj.iter().all(|c| match self.factors.iter().enumerate().position(|(i, g)| !used[i] && g == c) {
            Some(i) => {
                used[i] = true;
                true
            }
            None => false,
        })
    }
}

pub fn to_qpoly(f: &IPoly, d: u64) -> QPoly {
    f.map(QuadElem::from_int(d, 0), |c| QuadElem::from_rat(d, Rat::from_integer(c.clone())))
}

pub fn conj_poly(g: &QPoly) -> QPoly {
    g.map(g.zero_elem().clone(), |c| c.conj())
}

/// Norm to ℚ[T] of a polynomial over ℚ(√d).
pub fn norm_poly(g: &QPoly) -> RPoly {
    let n = g * &conj_poly(g);
    n.map(Rat::zero(), |c| c.to_rat().expect("norm has rational coefficients"))
}

// The unshifted norm of a rational polynomial is its square, so 0 is never tried.
const SHIFTS: [i64; 20] = [1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6, -6, 7, -7, 8, -8, 9, -9, 10, -10];

pub fn factor_over_quadratic(f: &IPoly, d: u64) -> Result<QuadFactorization> {
    let fq = to_qpoly(f, d);
    let unit = fq.lead();
    let monic = fq.monic();
    if f.degree().unwrap_or(0) <= 1 {
        let factors = if f.degree() == Some(1) { vec![monic] } else { Vec::new() };
        return Ok(QuadFactorization { d, unit, factors });
    }
    let zero = QuadElem::from_int(d, 0);
    let sqrt = QuadElem::sqrt_d(d);
    for s in SHIFTS {
        let shift = sqrt.scale_i64(s);
        let back = QPoly::from_coeffs(vec![shift.negate(), zero.one_like()], zero.clone());
        let fwd = QPoly::from_coeffs(vec![shift.clone(), zero.one_like()], zero.clone());
        let g = monic.compose(&back);
        let norm = IPoly::from_rpoly(&norm_poly(&g));
        if !squarefree_witness(&norm, 30) {
            continue;
        }
        let mut factors = Vec::new();
        let mut rest = g.clone();
        for (ni, _) in factor_over_q(&norm).factors {
            let h = rest.gcd(&to_qpoly(&ni, d));
            if h.degree().unwrap_or(0) == 0 {
                continue;
            }
            rest = rest.div_exact(&h);
            factors.push(h.compose(&fwd).monic());
        }
        factors.sort_by_key(|h| (h.degree(), h.to_string()));
        return Ok(QuadFactorization { d, unit, factors });
    }
    Err(Error::ShiftExhausted)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t2_minus_n_splits() {
        let f = IPoly::from_i64(&[1, 0, -37]);
        let fac = factor_over_quadratic(&f, 37).unwrap();
        assert_eq!(fac.degrees(), vec![1, 1]);
        assert!(fac.conjugation_permutes());
        assert_eq!(fac.expand(), to_qpoly(&f, 37));
    }

    #[test]
    fn quartic_37_splits_into_conjugate_quadratics() {
        let f = IPoly::from_i64(&[1, -23, 44, 2, -3]);
        let fac = factor_over_quadratic(&f, 37).unwrap();
        assert_eq!(fac.degrees(), vec![2, 2]);
        assert!(fac.conjugation_permutes());
        assert_ne!(fac.factors[0], fac.factors[1]);
        assert_eq!(fac.expand(), to_qpoly(&f, 37));
        let other = factor_over_quadratic(&f, 5).unwrap();
        assert_eq!(other.degrees(), vec![4]);
    }

    #[test]
    fn s4_quartic_stays_irreducible() {
        // x^4 + x + 1 has Galois group S4 and discriminant 229.
        let f = IPoly::from_i64(&[1, 0, 0, 1, 1]);
        for d in [2u64, 3, 5, 13, 37] {
            assert_eq!(factor_over_quadratic(&f, d).unwrap().degrees(), vec![4]);
        }
        assert_eq!(factor_over_quadratic(&f, 229).unwrap().degrees(), vec![4]);
    }

    #[test]
    fn rational_factors_pass_through() {
        let f = &IPoly::from_i64(&[1, -1]) * &IPoly::from_i64(&[1, 0, -13]);
        let fac = factor_over_quadratic(&f, 13).unwrap();
        assert_eq!(fac.degrees(), vec![1, 1, 1]);
        assert_eq!(fac.expand(), to_qpoly(&f, 13));
    }
}
