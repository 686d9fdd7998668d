//! Elements a + b√d of a real quadratic field.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::coeff::Coeff;
use super::int::is_squarefree;
use super::{fmt_rat, Rat};

/// `a + b√d`. A discriminant of 0 marks a plain rational that adopts the
/// field of whatever it is combined with.
#[derive(Clone, Debug)]
pub struct QuadElem {
    d: u64,
    a: Rat,
    b: Rat,
}

impl PartialEq for QuadElem {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.d == other.d || self.b.is_zero() || self.d == 0 || other.d == 0)
    }
}

impl Eq for QuadElem {}

impl QuadElem {
    /// Panics unless `d` is squarefree and greater than one.
    pub fn new(d: u64, a: Rat, b: Rat) -> Self {
        assert!(d > 1 && is_squarefree(d), "{d} is not a squarefree integer > 1");
        QuadElem { d, a, b }
    }

    pub fn from_rat(d: u64, a: Rat) -> Self {
        QuadElem { d, a, b: Rat::zero() }
    }

    pub fn from_int(d: u64, n: i64) -> Self {
        Self::from_rat(d, Rat::from_integer(BigInt::from(n)))
    }

    pub fn sqrt_d(d: u64) -> Self {
        Self::new(d, Rat::zero(), Rat::one())
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The rational value, if the irrational part vanishes.
    pub fn to_rat(&self) -> Option<Rat> {
        self.is_rational().then(|| self.a.clone())
    }

    /// The nontrivial automorphism κ: √d ↦ −√d.
    pub fn conj(&self) -> Self {
        QuadElem { d: self.d, a: self.a.clone(), b: -&self.b }
    }

    pub fn norm(&self) -> Rat {
        &self.a * &self.a - &self.b * &self.b * Rat::from_integer(BigInt::from(self.d))
    }

    pub fn trace(&self) -> Rat {
        &self.a + &self.a
    }

    /// Value under the embedding with √d > 0.
    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.a) + rat_to_f64(&self.b) * (self.d as f64).sqrt()
    }

    /// Sign under the real embedding with √d > 0, decided exactly.
    pub fn signum(&self) -> i32 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sa == 0 || sb == 0 || sa == sb {
            return if sa != 0 { sa } else { sb };
        }
        // a and b have opposite signs: compare a² with b²d.
        let n = self.norm();
        let s = sign(&n);
        if s == 0 {
            0
        } else if s > 0 {
            sa
        } else {
            sb
        }
    }

    fn join(&self, other: &Self) -> u64 {
        match (self.d, other.d) {
            (0, e) | (e, 0) => e,
            (d, e) if d == e => d,
            (d, e) => {
                if self.b.is_zero() {
                    e
                } else if other.b.is_zero() {
                    d
                } else {
                    panic!("mixing Q(sqrt {d}) with Q(sqrt {e})")
                }
            }
        }
    }
}

fn sign(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Very large numerators and denominators overflow individually.
        let shift = r.numer().bits().max(r.denom().bits()) as i64 - 900;
        let n = (r.numer() >> shift.max(0) as usize).to_f64().unwrap_or(f64::NAN);
        let d = (r.denom() >> shift.max(0) as usize).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl Coeff for QuadElem {
    fn zero_like(&self) -> Self {
        QuadElem { d: self.d, a: Rat::zero(), b: Rat::zero() }
    }
    fn one_like(&self) -> Self {
        QuadElem { d: self.d, a: Rat::one(), b: Rat::zero() }
    }
    fn is_zero_c(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        QuadElem { d: self.join(rhs), a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
    fn minus(&self, rhs: &Self) -> Self {
        QuadElem { d: self.join(rhs), a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
    fn times(&self, rhs: &Self) -> Self {
        let d = self.join(rhs);
        let dd = Rat::from_integer(BigInt::from(d));
        QuadElem { d, a: &self.a * &rhs.a + &self.b * &rhs.b * dd, b: &self.a * &rhs.b + &self.b * &rhs.a }
    }
    fn negate(&self) -> Self {
        QuadElem { d: self.d, a: -&self.a, b: -&self.b }
    }
    fn try_inverse(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conj();
        Some(QuadElem { d: self.d, a: &c.a / &n, b: &c.b / &n })
    }
    fn from_int_like(&self, n: &BigInt) -> Self {
        QuadElem { d: self.d, a: Rat::from_integer(n.clone()), b: Rat::zero() }
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", fmt_rat(&self.a));
        }
        if self.a.is_zero() {
            return write!(f, "{}*sqrt({})", fmt_rat(&self.b), self.d);
        }
        if self.b.is_negative() {
            write!(f, "{}-{}*sqrt({})", fmt_rat(&self.a), fmt_rat(&-&self.b), self.d)
        } else {
            write!(f, "{}+{}*sqrt({})", fmt_rat(&self.a), fmt_rat(&self.b), self.d)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};
    use proptest::prelude::*;

    fn q(a: i64, b: i64) -> QuadElem {
        QuadElem::new(37, rat_int(a), rat_int(b))
    }

    #[test]
    fn sqrt_squares_to_d() {
        let s = QuadElem::sqrt_d(13);
        assert_eq!(s.times(&s), QuadElem::from_int(13, 13));
    }

    #[test]
    fn unit_norm_and_trace() {
        let u = q(6, 1);
        assert_eq!(u.norm(), rat_int(-1));
        assert_eq!(u.trace(), rat_int(12));
        assert_eq!(u.times(&u.try_inverse().unwrap()), u.one_like());
    }

    #[test]
    fn exact_sign() {
        assert_eq!(q(6, -1).signum(), -1);
        assert_eq!(q(7, -1).signum(), 1);
        assert_eq!(q(-7, 1).signum(), -1);
        assert_eq!(QuadElem::new(5, rat(1, 2), rat(-1, 2)).signum(), -1);
    }

    #[test]
    fn display_form() {
        assert_eq!(QuadElem::new(13, rat(3, 2), rat(1, 2)).to_string(), "3/2+1/2*sqrt(13)");
        assert_eq!(q(0, -1).to_string(), "-1*sqrt(37)");
    }

    proptest! {
        #[test]
        fn ring_axioms(a in -50i64..50, b in -50i64..50, c in -50i64..50,
                       d in -50i64..50, e in -50i64..50, g in -50i64..50) {
            let (x, y, z) = (q(a, b), q(c, d), q(e, g));
            prop_assert_eq!(x.times(&y).times(&z), x.times(&y.times(&z)));
            prop_assert_eq!(x.times(&y.plus(&z)), x.times(&y).plus(&x.times(&z)));
            prop_assert_eq!(x.times(&y).conj(), x.conj().times(&y.conj()));
            prop_assert_eq!(x.conj().conj(), x.clone());
        }
    }
}
