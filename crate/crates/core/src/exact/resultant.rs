//! Resultants by the subresultant pseudo-remainder sequence.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::bipoly::BiPoly;
use super::coeff::{exact_div, Coeff};
use super::poly::{IPoly, Poly};
use crate::error::{Error, Result};

/// An integral domain with exact division.
pub trait ExactRing: Coeff {
    fn div_exact_elem(&self, d: &Self) -> Self;
}

impl ExactRing for BigInt {
    fn div_exact_elem(&self, d: &Self) -> Self {
        exact_div(self, d)
    }
}

impl Coeff for IPoly {
    fn zero_like(&self) -> Self {
        IPoly::zero(BigInt::zero())
    }
    fn one_like(&self) -> Self {
        IPoly::constant(BigInt::one())
    }
    fn is_zero_c(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn try_inverse(&self) -> Option<Self> {
        (self.degree() == Some(0)).then(|| self.lead().try_inverse().map(IPoly::constant)).flatten()
    }
    fn from_int_like(&self, n: &BigInt) -> Self {
        IPoly::constant(n.clone())
    }
}

impl ExactRing for IPoly {
    fn div_exact_elem(&self, d: &Self) -> Self {
        self.div_exact_z(d)
    }
}

/// lc(B)^{deg A − deg B + 1} · A mod B, without division.
pub fn pseudo_rem<R: ExactRing>(a: &Poly<R>, b: &Poly<R>) -> Poly<R> {
    let db = b.degree().expect("pseudo-division by zero");
    let lb = b.lead();
    let mut r = a.clone();
    let mut e = (a.degree().unwrap_or(0) + 1).saturating_sub(db);
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        let t = Poly::constant(r.lead()).shift_up(dr - db);
        r = &r.scale(&lb) - &(&t * b);
        e -= 1;
    }
    r.scale(&lb.pow_u(e as u64))
}

/// Resultant of two polynomials over an integral domain.
pub fn resultant<R: ExactRing>(a: &Poly<R>, b: &Poly<R>) -> R {
    let zero = a.zero_elem().clone();
    if a.is_zero() || b.is_zero() {
        return zero;
    }
    let one = zero.one_like();
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut s = one.clone();
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
        if a.degree().unwrap() % 2 == 1 && b.degree().unwrap() % 2 == 1 {
            s = s.negate();
        }
    }
    if b.degree() == Some(0) {
        return s.times(&b.lead().pow_u(a.degree().unwrap() as u64));
    }
    let (mut g, mut h) = (one.clone(), one.clone());
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = s.negate();
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        let den = g.times(&h.pow_u(delta as u64));
        b = Poly::from_coeffs(r.coeffs().iter().map(|c| c.div_exact_elem(&den)).collect(), zero.clone());
        g = a.lead();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow_u(delta as u64).div_exact_elem(&h.pow_u(delta as u64 - 1)),
        };
        match b.degree() {
            None => return zero,
            Some(0) => break,
            Some(_) => {}
        }
    }
    let d = a.degree().unwrap() as u64;
    let lb = b.lead();
    let res = if d == 0 { one } else { lb.pow_u(d).div_exact_elem(&h.pow_u(d - 1)) };
    s.times(&res)
}

/// Views W as a polynomial in Y over ℤ[X].
pub fn as_poly_in_y(w: &BiPoly) -> Poly<IPoly> {
    Poly::from_coeffs(w.y_coeffs_over_zx(), IPoly::zero(BigInt::zero()))
}

/// Eliminates Y from W = P = 0.
pub fn resultant_y(w: &BiPoly, p: &BiPoly) -> Result<IPoly> {
    if w.deg_y() == 0 || p.deg_y() == 0 {
        return Err(Error::BadInput("both polynomials need positive degree in Y".into()));
    }
    let r = resultant(&as_poly_in_y(w), &as_poly_in_y(p));
    if r.is_zero() {
        return Err(Error::ZeroResultant);
    }
    Ok(r)
}

/// Eliminates X from W = P = 0; the result is a polynomial in Y.
pub fn resultant_x(w: &BiPoly, p: &BiPoly) -> Result<IPoly> {
    resultant_y(&w.swap_xy(), &p.swap_xy())
}

/// Discriminant up to sign: the resultant of f and f'.
pub fn discriminant(f: &IPoly) -> BigInt {
    resultant(f, &f.derivative())
}
