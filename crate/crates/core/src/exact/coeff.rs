//! The coefficient-domain abstraction shared by series and polynomials.
//!
//! Domains whose elements carry runtime context (the discriminant of a
//! quadratic field, the level of a cyclotomic ring) cannot provide a
//! context-free zero, so constructors go through an existing element.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rat;

/// A commutative ring with exact arithmetic.
pub trait Coeff: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_c(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    /// Multiplicative inverse when it exists in the domain.
    fn try_inverse(&self) -> Option<Self>;
    fn from_int_like(&self, n: &BigInt) -> Self;

    fn scale_i64(&self, n: i64) -> Self {
        self.times(&self.from_int_like(&BigInt::from(n)))
    }

    fn is_one_c(&self) -> bool {
        *self == self.one_like()
    }

    fn pow_u(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            base = base.times(&base);
            e >>= 1;
        }
        acc
    }
}

impl Coeff for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
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
        if self.abs().is_one() {
            Some(self.clone())
        } else {
            None
        }
    }
    fn from_int_like(&self, n: &BigInt) -> Self {
        n.clone()
    }
}

impl Coeff for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
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
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_int_like(&self, n: &BigInt) -> Self {
        Rat::from_integer(n.clone())
    }
}

/// Exact quotient of two integers, panicking when the division is not exact.
pub fn exact_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    assert!(r.is_zero(), "inexact integer division {a} / {b}");
    q
}
