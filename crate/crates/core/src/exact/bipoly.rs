//! Sparse bivariate polynomials in X and Y with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::IPoly;
use super::{fmt_rat, Rat};

/// Σ c_{a,b} X^a Y^b keyed by (a, b); zero terms are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl BiPoly {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds from (coefficient, a, b) triples.
    pub fn from_terms(terms: &[(i64, u32, u32)]) -> Self {
        let mut p = Self::new();
        for &(c, a, b) in terms {
            p.add_term(a, b, Rat::from_integer(BigInt::from(c)));
        }
        p
    }

    pub fn add_term(&mut self, a: u32, b: u32, c: Rat) {
        let e = self.terms.entry((a, b)).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn coeff(&self, a: u32, b: u32) -> Rat {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rat)> {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn deg_x(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn deg_y(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    pub fn swap_xy(&self) -> Self {
        BiPoly { terms: self.terms.iter().map(|(&(a, b), c)| ((b, a), c.clone())).collect() }
    }

    pub fn scale(&self, k: &Rat) -> Self {
        let mut p = Self::new();
        for (&(a, b), c) in &self.terms {
            p.add_term(a, b, c * k);
        }
        p
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Coefficients in Y as integer polynomials in X, after clearing
    /// denominators; index k holds the coefficient of Y^k.
    pub fn y_coeffs_over_zx(&self) -> Vec<IPoly> {
        let l = self.terms.values().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let dy = self.deg_y() as usize;
        let dx = self.deg_x() as usize;
        let mut rows = vec![vec![BigInt::zero(); dx + 1]; dy + 1];
        for (&(a, b), c) in &self.terms {
            rows[b as usize][a as usize] = (c * Rat::from_integer(l.clone())).to_integer();
        }
        rows.into_iter().map(|r| IPoly::from_coeffs(r, BigInt::zero())).collect()
    }

    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        self.terms.iter().fold(Rat::zero(), |acc, (&(a, b), c)| {
            acc + c * num_traits::pow(x.clone(), a as usize) * num_traits::pow(y.clone(), b as usize)
        })
    }

    /// Terms sorted by total degree, then by descending power of X.
    fn graded(&self) -> Vec<(u32, u32, &Rat)> {
        let mut t: Vec<_> = self.terms().collect();
        t.sort_by_key(|&(a, b, _)| (a + b, std::cmp::Reverse(a)));
        t
    }
}

fn monomial(a: u32, b: u32) -> String {
    let mut parts = Vec::new();
    match a {
        0 => {}
        1 => parts.push("X".to_string()),
        _ => parts.push(format!("X^{a}")),
    }
    match b {
        0 => {}
        1 => parts.push("Y".to_string()),
        _ => parts.push(format!("Y^{b}")),
    }
    parts.join("*")
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, (a, b, c)) in self.graded().into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let m = monomial(a, b);
            if m.is_empty() {
                out.push_str(&fmt_rat(&mag));
            } else if mag.is_one() {
                out.push_str(&m);
            } else {
                out.push_str(&format!("{}*{}", fmt_rat(&mag), m));
            }
        }
        write!(f, "{out}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn canonical_order() {
        let p = BiPoly::from_terms(&[(-1, 1, 1), (4, 0, 1), (-4, 2, 0), (6, 1, 0), (1, 0, 0)]);
        assert_eq!(p.to_string(), "1 + 6*X + 4*Y - 4*X^2 - X*Y");
        assert_eq!(p.deg_x(), 2);
        assert_eq!(p.deg_y(), 1);
    }

    #[test]
    fn rational_terms_clear_to_integers() {
        let mut p = BiPoly::new();
        p.add_term(0, 1, rat(-1, 2));
        p.add_term(3, 0, rat(-1, 2));
        p.add_term(0, 0, rat(7, 1));
        let rows = p.y_coeffs_over_zx();
        assert_eq!(rows[0], IPoly::from_i64(&[-1, 0, 0, 14]));
        assert_eq!(rows[1], IPoly::from_i64(&[-1]));
        assert!(!p.is_integral());
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut p = BiPoly::from_terms(&[(2, 1, 1)]);
        p.add_term(1, 1, rat(-2, 1));
        assert!(p.is_zero());
    }
}
