//! Dense univariate polynomials over a coefficient domain.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::coeff::{exact_div, Coeff};
use super::quad::QuadElem;
use super::{fmt_rat, Rat};

/// Coefficients are stored in ascending order with no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<D: Coeff> {
    c: Vec<D>,
    zero: D,
}

pub type IPoly = Poly<BigInt>;
pub type RPoly = Poly<Rat>;
pub type QPoly = Poly<QuadElem>;

impl<D: Coeff> Poly<D> {
    pub fn from_coeffs(mut c: Vec<D>, zero: D) -> Self {
        while c.last().is_some_and(|v| v.is_zero_c()) {
            c.pop();
        }
        Poly { c, zero }
    }

    /// Builds from a descending coefficient list, the canonical text order.
    pub fn from_desc(desc: Vec<D>, zero: D) -> Self {
        let mut c = desc;
        c.reverse();
        Self::from_coeffs(c, zero)
    }

    pub fn zero(zero: D) -> Self {
        Poly { c: Vec::new(), zero }
    }

    pub fn constant(v: D) -> Self {
        let zero = v.zero_like();
        Self::from_coeffs(vec![v], zero)
    }

    /// The monomial T.
    pub fn x(zero: D) -> Self {
        let one = zero.one_like();
        Self::from_coeffs(vec![zero.clone(), one], zero)
    }

    pub fn coeffs(&self) -> &[D] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> D {
        self.c.get(k).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn zero_elem(&self) -> &D {
        &self.zero
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn lead(&self) -> D {
        self.c.last().cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn eval(&self, x: &D) -> D {
        self.c.iter().rev().fold(self.zero.clone(), |acc, v| acc.times(x).plus(v))
    }

    pub fn scale(&self, k: &D) -> Self {
        Self::from_coeffs(self.c.iter().map(|v| v.times(k)).collect(), self.zero.clone())
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![self.zero.clone(); k];
        c.extend(self.c.iter().cloned());
        Poly { c, zero: self.zero.clone() }
    }

    pub fn derivative(&self) -> Self {
        let c = self.c.iter().enumerate().skip(1).map(|(i, v)| v.scale_i64(i as i64)).collect();
        Self::from_coeffs(c, self.zero.clone())
    }

    pub fn map<E: Coeff>(&self, zero: E, f: impl Fn(&D) -> E) -> Poly<E> {
        Poly::from_coeffs(self.c.iter().map(f).collect(), zero)
    }

    /// f(g(T)).
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero(self.zero.clone());
        for v in self.c.iter().rev() {
            acc = &(&acc * g) + &Self::constant(v.clone());
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.zero.one_like());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Division with remainder; the divisor's leading coefficient must be a unit.
    pub fn divrem(&self, div: &Self) -> (Self, Self) {
        let dd = div.degree().expect("division by the zero polynomial");
        let inv = div.lead().try_inverse().expect("leading coefficient is not a unit");
        let mut r = self.c.clone();
        let n = self.c.len();
        if n <= dd {
            return (Self::zero(self.zero.clone()), self.clone());
        }
        let mut q = vec![self.zero.clone(); n - dd];
        for i in (dd..n).rev() {
            let t = r[i].times(&inv);
            if t.is_zero_c() {
                continue;
            }
            for (j, dv) in div.c.iter().enumerate() {
                r[i - dd + j] = r[i - dd + j].minus(&t.times(dv));
            }
            q[i - dd] = t;
        }
        r.truncate(dd);
        (Self::from_coeffs(q, self.zero.clone()), Self::from_coeffs(r, self.zero.clone()))
    }

    pub fn rem(&self, div: &Self) -> Self {
        self.divrem(div).1
    }

    /// Exact quotient; panics when the remainder is nonzero.
    pub fn div_exact(&self, div: &Self) -> Self {
        let (q, r) = self.divrem(div);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> Self {
        match self.lead().try_inverse() {
            Some(inv) if !self.is_zero() => self.scale(&inv),
            _ => self.clone(),
        }
    }

    /// Monic gcd over a field.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// (g, s, t) with s·self + t·other = g, over a field; g is not normalized.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let z = self.zero.clone();
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::constant(z.one_like()), Self::zero(z.clone()));
        let (mut t0, mut t1) = (Self::zero(z.clone()), Self::constant(z.one_like()));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        (r0, s0, t0)
    }
}

impl<D: Coeff> Add for &Poly<D> {
    type Output = Poly<D>;
    fn add(self, rhs: &Poly<D>) -> Poly<D> {
        let n = self.c.len().max(rhs.c.len());
        let c = (0..n).map(|i| self.coeff(i).plus(&rhs.coeff(i))).collect();
        Poly::from_coeffs(c, self.zero.clone())
    }
}

impl<D: Coeff> Sub for &Poly<D> {
    type Output = Poly<D>;
    fn sub(self, rhs: &Poly<D>) -> Poly<D> {
        let n = self.c.len().max(rhs.c.len());
        let c = (0..n).map(|i| self.coeff(i).minus(&rhs.coeff(i))).collect();
        Poly::from_coeffs(c, self.zero.clone())
    }
}

impl<D: Coeff> Neg for &Poly<D> {
    type Output = Poly<D>;
    fn neg(self) -> Poly<D> {
        Poly { c: self.c.iter().map(|v| v.negate()).collect(), zero: self.zero.clone() }
    }
}

impl<D: Coeff> Mul for &Poly<D> {
    type Output = Poly<D>;
    fn mul(self, rhs: &Poly<D>) -> Poly<D> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.zero.clone());
        }
        let mut c = vec![self.zero.clone(); self.c.len() + rhs.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero_c() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                c[i + j] = c[i + j].plus(&a.times(b));
            }
        }
        Poly::from_coeffs(c, self.zero.clone())
    }
}

impl IPoly {
    pub fn from_i64(desc: &[i64]) -> Self {
        Self::from_desc(desc.iter().map(|&v| BigInt::from(v)).collect(), BigInt::zero())
    }

    pub fn content(&self) -> BigInt {
        let g = self.c.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
        if self.lead().is_negative() {
            -g
        } else {
            g
        }
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let g = self.content();
        Self::from_coeffs(self.c.iter().map(|v| exact_div(v, &g)).collect(), BigInt::zero())
    }

    pub fn to_rpoly(&self) -> RPoly {
        self.map(Rat::zero(), |v| Rat::from_integer(v.clone()))
    }

    /// Clears denominators and returns the primitive integer multiple.
    pub fn from_rpoly(p: &RPoly) -> Self {
        let l = p.c.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
        let c = p.c.iter().map(|v| (v * Rat::from_integer(l.clone())).to_integer()).collect();
        Self::from_coeffs(c, BigInt::zero()).primitive()
    }

    /// Exact quotient over ℤ; panics when the division is not exact.
    pub fn div_exact_z(&self, d: &Self) -> Self {
        let q = self.to_rpoly().div_exact(&d.to_rpoly());
        let c: Vec<BigInt> =
            q.c.iter()
                .map(|v| {
                    assert!(v.is_integer(), "quotient is not integral");
                    v.to_integer()
                })
                .collect();
        Self::from_coeffs(c, BigInt::zero())
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd_z(&self, other: &Self) -> Self {
        let g = self.to_rpoly().gcd(&other.to_rpoly());
        Self::from_rpoly(&g)
    }

    /// Primitive squarefree part.
    pub fn squarefree_part(&self) -> Self {
        let p = self.primitive();
        if p.degree().unwrap_or(0) == 0 {
            return p;
        }
        let g = p.gcd_z(&p.derivative());
        p.div_exact_z(&g).primitive()
    }

    /// Yun's squarefree decomposition of the primitive part: (factor, multiplicity).
    pub fn squarefree_decomposition(&self) -> Vec<(IPoly, u32)> {
        let f = self.primitive().to_rpoly().monic();
        let mut out = Vec::new();
        if f.degree().unwrap_or(0) == 0 {
            return out;
        }
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0);
        let mut c = df.div_exact(&a0);
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            b = b.div_exact(&a);
            c = d.div_exact(&a);
            d = &c - &b.derivative();
            if a.degree().unwrap_or(0) > 0 {
                out.push((IPoly::from_rpoly(&a), i));
            }
            i += 1;
        }
        out
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.c.iter().map(|v| v.abs()).max().unwrap_or_default()
    }

    /// Conventional notation in the variable `var`, e.g. `T^2 - 3T + 1`.
    pub fn pretty(&self, var: &str) -> String {
        let mut out = String::new();
        for (k, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = c.abs();
            if !mag.is_one() || k == 0 {
                out.push_str(&mag.to_string());
            }
            match k {
                0 => {}
                1 => out.push_str(var),
                _ => out.push_str(&format!("{var}^{k}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn to_i64_desc(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.c.iter().rev().map(|v| v.to_i64()).collect()
    }
}

impl fmt::Display for Poly<BigInt> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.c.iter().rev().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl fmt::Display for Poly<Rat> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.c.iter().rev().map(fmt_rat).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl fmt::Display for Poly<QuadElem> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.c.iter().rev().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_text_form() {
        let p = IPoly::from_i64(&[0, 1, -24, 67, -42, -5, 3]);
        assert_eq!(p.to_string(), "[1, -24, 67, -42, -5, 3]");
        assert_eq!(p.degree(), Some(5));
        assert_eq!(p.pretty("T"), "T^5 - 24T^4 + 67T^3 - 42T^2 - 5T + 3");
        assert_eq!(IPoly::from_i64(&[-8, 0, 1, -1]).pretty("X"), "-8X^3 + X - 1");
        assert_eq!(IPoly::from_i64(&[0]).pretty("T"), "0");
    }

    #[test]
    fn division_round_trip() {
        let a = IPoly::from_i64(&[1, 0, -1]);
        let b = IPoly::from_i64(&[1, -1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q, IPoly::from_i64(&[1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn squarefree_decomposition_of_cube_times_square() {
        let x1 = IPoly::from_i64(&[1, -1]);
        let x2 = IPoly::from_i64(&[1, 0, 1]);
        let f = &(&x1.pow(3) * &x2.pow(2)) * &IPoly::from_i64(&[2, 3]);
        let dec = f.squarefree_decomposition();
        assert_eq!(dec, vec![(IPoly::from_i64(&[2, 3]), 1), (x2.clone(), 2), (x1.clone(), 3)]);
        assert_eq!(f.squarefree_part(), &(&x1 * &x2) * &IPoly::from_i64(&[2, 3]));
    }

    #[test]
    fn xgcd_bezout() {
        let a = IPoly::from_i64(&[1, 0, 0, -2]).to_rpoly();
        let b = IPoly::from_i64(&[1, 3, 1]).to_rpoly();
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
        assert_eq!(g.degree(), Some(0));
    }

    fn ip(v: &[i64]) -> IPoly {
        IPoly::from_i64(v)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in prop::collection::vec(-20i64..20, 1..6),
                       b in prop::collection::vec(-20i64..20, 1..6),
                       c in prop::collection::vec(-20i64..20, 1..6)) {
            let (x, y, z) = (ip(&a), ip(&b), ip(&c));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&(&x - &y) + &y, x.clone());
        }

        #[test]
        fn gauss_content(a in prop::collection::vec(-20i64..20, 1..6),
                         b in prop::collection::vec(-20i64..20, 1..6)) {
            let (x, y) = (ip(&a), ip(&b));
            prop_assume!(!x.is_zero() && !y.is_zero());
            let lhs = (&x * &y).content().abs();
            prop_assert_eq!(lhs, (x.content() * y.content()).abs());
        }
    }
}
