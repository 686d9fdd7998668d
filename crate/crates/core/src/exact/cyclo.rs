//! Elements of ℚ(ζ_N) for prime N, stored as residues modulo Φ_N.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use super::coeff::Coeff;
use super::int::is_prime;
use super::poly::RPoly;
use super::quad::{rat_to_f64, QuadElem};
use super::{fmt_rat, Rat};
use crate::error::{Error, Result};

/// Σ c_k ζ^k for k < N − 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloElem {
    n: u64,
    c: Vec<Rat>,
}

impl CycloElem {
    /// Panics unless `n` is an odd prime.
    pub fn zero(n: u64) -> Self {
        assert!(is_prime(n) && n > 2, "cyclotomic level {n} must be an odd prime");
        CycloElem { n, c: vec![Rat::zero(); (n - 1) as usize] }
    }

    pub fn from_rat(n: u64, r: Rat) -> Self {
        let mut z = Self::zero(n);
        z.c[0] = r;
        z
    }

    /// ζ_N^k for any integer k.
    pub fn zeta_pow(n: u64, k: i64) -> Self {
        Self::from_rat(n, Rat::one()).mul_zeta_pow(k)
    }

    /// Builds an element from its coefficients on 1, ζ, …, ζ^{N−1}.
    pub fn from_full(n: u64, full: &[Rat]) -> Self {
        assert_eq!(full.len() as u64, n);
        let mut z = Self::zero(n);
        z.c = reduce_full(full);
        z
    }

    pub fn level(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }

    /// Multiplication by ζ^k is a cyclic rotation in the basis 1, ζ, …, ζ^{N−1}.
    pub fn mul_zeta_pow(&self, k: i64) -> Self {
        let n = self.n as usize;
        let shift = k.rem_euclid(n as i64) as usize;
        let mut full = vec![Rat::zero(); n];
        for (i, v) in self.c.iter().enumerate() {
            full[(i + shift) % n] = v.clone();
        }
        CycloElem { n: self.n, c: reduce_full(&full) }
    }

    /// Applies σ_a: ζ ↦ ζ^a.
    pub fn galois(&self, a: i64) -> Self {
        let n = self.n as usize;
        let mut full = vec![Rat::zero(); n];
        for (i, v) in self.c.iter().enumerate() {
            let j = ((i as i64) * a).rem_euclid(n as i64) as usize;
            full[j] = &full[j] + v;
        }
        CycloElem { n: self.n, c: reduce_full(&full) }
    }

    /// Value under ζ ↦ e^{2πi/N}.
    pub fn to_complex(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, v) in self.c.iter().enumerate() {
            let ang = 2.0 * std::f64::consts::PI * k as f64 / self.n as f64;
            acc += Complex64::from_polar(rat_to_f64(v), ang);
        }
        acc
    }

    /// Writes the element as a + b√N when it lies in the quadratic subfield.
    ///
    /// With the coefficient of ζ^{N−1} fixed at zero, membership in the
    /// subfield means the coefficients are constant on residues (α) and on
    /// non-residues (β); the two Gaussian periods are (−1 ± √N)/2.
    pub fn coerce_to_quadratic(&self, index: usize) -> Result<QuadElem> {
        let n = self.n;
        if n % 4 != 1 {
            return Err(Error::BadLevel(n));
        }
        let c0 = &self.c[0];
        let (mut alpha, mut beta): (Option<Rat>, Option<Rat>) = (None, None);
        for r in 1..n {
            let v = self.c.get(r as usize).cloned().unwrap_or_else(Rat::zero);
            let slot = if is_qr(r, n) { &mut alpha } else { &mut beta };
            match slot {
                None => *slot = Some(v),
                Some(w) if *w == v => {}
                Some(_) => return Err(Error::CoercionFailure(index, n)),
            }
        }
        let (alpha, beta) = (alpha.unwrap(), beta.unwrap());
        let two = Rat::from_integer(BigInt::from(2));
        let a = c0 - (&alpha + &beta) / &two;
        let b = (&alpha - &beta) / &two;
        Ok(QuadElem::new(n, a, b))
    }

    fn to_poly(&self) -> RPoly {
        RPoly::from_coeffs(self.c.clone(), Rat::zero())
    }
}

fn is_qr(r: u64, n: u64) -> bool {
    super::int::pow_mod(r, (n - 1) / 2, n) == 1
}

/// Reduces coefficients on 1, ζ, …, ζ^{N−1} to the Φ_N basis using
/// ζ^{N−1} = −(1 + ζ + … + ζ^{N−2}).
fn reduce_full(full: &[Rat]) -> Vec<Rat> {
    let n = full.len();
    let top = full[n - 1].clone();
    full[..n - 1].iter().map(|v| v - &top).collect()
}

fn cyclotomic_poly(n: u64) -> RPoly {
    RPoly::from_coeffs(vec![Rat::one(); n as usize], Rat::zero())
}

impl Coeff for CycloElem {
    fn zero_like(&self) -> Self {
        CycloElem::zero(self.n)
    }
    fn one_like(&self) -> Self {
        CycloElem::from_rat(self.n, Rat::one())
    }
    fn is_zero_c(&self) -> bool {
        self.c.iter().all(|v| v.is_zero())
    }
    fn plus(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        CycloElem { n: self.n, c: self.c.iter().zip(&rhs.c).map(|(a, b)| a + b).collect() }
    }
    fn minus(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        CycloElem { n: self.n, c: self.c.iter().zip(&rhs.c).map(|(a, b)| a - b).collect() }
    }
    fn times(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        let n = self.n as usize;
        let mut full = vec![Rat::zero(); n];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if !b.is_zero() {
                    let k = (i + j) % n;
                    full[k] = &full[k] + a * b;
                }
            }
        }
        CycloElem { n: self.n, c: reduce_full(&full) }
    }
    fn negate(&self) -> Self {
        CycloElem { n: self.n, c: self.c.iter().map(|v| -v).collect() }
    }
    fn try_inverse(&self) -> Option<Self> {
        if self.is_zero_c() {
            return None;
        }
        let (g, s, _) = self.to_poly().xgcd(&cyclotomic_poly(self.n));
        if g.degree() != Some(0) {
            return None;
        }
        let inv = s.scale(&g.lead().recip());
        let mut c = inv.coeffs().to_vec();
        c.resize((self.n - 1) as usize, Rat::zero());
        Some(CycloElem { n: self.n, c })
    }
    fn from_int_like(&self, v: &BigInt) -> Self {
        CycloElem::from_rat(self.n, Rat::from_integer(v.clone()))
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| match k {
                0 => fmt_rat(v),
                1 => format!("{}*z", fmt_rat(v)),
                _ => format!("{}*z^{}", fmt_rat(v), k),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;
    use proptest::prelude::*;

    #[test]
    fn zeta_has_order_n() {
        let z = CycloElem::zeta_pow(7, 1);
        assert_eq!(z.pow_u(7), z.one_like());
        assert_ne!(z.pow_u(1), z.one_like());
    }

    #[test]
    fn gauss_sum_is_sqrt_n() {
        for n in [5u64, 13, 17, 29] {
            let mut g = CycloElem::zero(n);
            for r in 1..n {
                let t = CycloElem::zeta_pow(n, r as i64);
                g = if is_qr(r, n) { g.plus(&t) } else { g.minus(&t) };
            }
            assert_eq!(g.times(&g), CycloElem::from_rat(n, rat_int(n as i64)));
            assert_eq!(g.coerce_to_quadratic(0).unwrap(), QuadElem::sqrt_d(n));
            assert!((g.to_complex().re - (n as f64).sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn non_quadratic_element_rejected() {
        let z = CycloElem::zeta_pow(13, 1);
        assert_eq!(z.coerce_to_quadratic(3), Err(Error::CoercionFailure(3, 13)));
    }

    #[test]
    fn inverse_of_one_minus_zeta() {
        let x = CycloElem::from_rat(11, rat_int(1)).minus(&CycloElem::zeta_pow(11, 3));
        let y = x.try_inverse().unwrap();
        assert_eq!(x.times(&y), x.one_like());
    }

    fn elem(n: u64, v: &[i64]) -> CycloElem {
        let full: Vec<Rat> = (0..n as usize).map(|i| rat_int(v[i % v.len()])).collect();
        CycloElem::from_full(n, &full)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in prop::collection::vec(-9i64..9, 7),
                       b in prop::collection::vec(-9i64..9, 7),
                       c in prop::collection::vec(-9i64..9, 7)) {
            let (x, y, z) = (elem(7, &a), elem(7, &b), elem(7, &c));
            prop_assert_eq!(x.times(&y).times(&z), x.times(&y.times(&z)));
            prop_assert_eq!(x.times(&y.plus(&z)), x.times(&y).plus(&x.times(&z)));
            prop_assert_eq!(x.times(&y).galois(3), x.galois(3).times(&y.galois(3)));
        }
    }
}
