//! Truncated Laurent series in q.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use super::coeff::Coeff;
use crate::error::{Error, Result};

/// `q^valuation · Σ coeffs[k] q^k + O(q^precision)`.
///
/// The first stored coefficient is nonzero unless the series vanishes to
/// precision, in which case nothing is stored and `valuation == precision`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSeries<D: Coeff> {
    valuation: i64,
    coeffs: Vec<D>,
    precision: i64,
    zero: D,
}

impl<D: Coeff> LaurentSeries<D> {
    /// Coefficients beyond the precision are dropped; missing ones are zero.
    pub fn new(valuation: i64, mut coeffs: Vec<D>, precision: i64, zero: D) -> Self {
        let len = (precision - valuation).max(0) as usize;
        coeffs.truncate(len);
        coeffs.resize(len, zero.clone());
        let mut s = LaurentSeries { valuation, coeffs, precision, zero };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero_c());
        match lead {
            Some(0) => {}
            Some(k) => {
                self.coeffs.drain(..k);
                self.valuation += k as i64;
            }
            None => {
                self.coeffs.clear();
                self.valuation = self.precision;
            }
        }
    }

    pub fn zero(zero: D, precision: i64) -> Self {
        LaurentSeries { valuation: precision, coeffs: Vec::new(), precision, zero }
    }

    pub fn constant(c: D, precision: i64) -> Self {
        let zero = c.zero_like();
        Self::new(0, vec![c], precision, zero)
    }

    pub fn monomial(c: D, k: i64, precision: i64) -> Self {
        let zero = c.zero_like();
        Self::new(k, vec![c], precision, zero)
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    pub fn coeffs(&self) -> &[D] {
        &self.coeffs
    }

    pub fn zero_elem(&self) -> &D {
        &self.zero
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of q^k; panics when k is at or beyond the precision.
    pub fn coeff(&self, k: i64) -> D {
        assert!(k < self.precision, "q^{k} is beyond the precision {}", self.precision);
        if k < self.valuation {
            return self.zero.clone();
        }
        self.coeffs[(k - self.valuation) as usize].clone()
    }

    pub fn leading(&self) -> Option<&D> {
        self.coeffs.first()
    }

    /// Coefficients of q^from .. q^(to−1).
    pub fn window(&self, from: i64, to: i64) -> Vec<D> {
        (from..to).map(|k| self.coeff(k)).collect()
    }

    pub fn truncate(&self, precision: i64) -> Self {
        if precision >= self.precision {
            return self.clone();
        }
        Self::new(self.valuation, self.coeffs.clone(), precision, self.zero.clone())
    }

    /// The part with negative exponents together with the constant term.
    pub fn principal_part(&self) -> Vec<(i64, D)> {
        (self.valuation.min(0)..=0.min(self.precision - 1))
            .map(|k| (k, self.coeff(k)))
            .filter(|(_, c)| !c.is_zero_c())
            .collect()
    }

    pub fn scale(&self, k: &D) -> Self {
        let c = self.coeffs.iter().map(|v| v.times(k)).collect();
        Self::new(self.valuation, c, self.precision, self.zero.clone())
    }

    /// Multiplication by q^k.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            valuation: self.valuation + k,
            coeffs: self.coeffs.clone(),
            precision: self.precision + k,
            zero: self.zero.clone(),
        }
    }

    /// q ↦ q^k for k ≥ 1.
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k >= 1);
        let mut c = vec![self.zero.clone(); ((self.precision - self.valuation) * k) as usize];
        for (i, v) in self.coeffs.iter().enumerate() {
            c[i * k as usize] = v.clone();
        }
        Self::new(self.valuation * k, c, self.precision * k, self.zero.clone())
    }

    /// q·d/dq.
    pub fn q_derivative(&self) -> Self {
        let c = self.coeffs.iter().enumerate().map(|(i, v)| v.scale_i64(self.valuation + i as i64)).collect();
        Self::new(self.valuation, c, self.precision, self.zero.clone())
    }

    pub fn map<E: Coeff>(&self, zero: E, f: impl Fn(&D) -> E) -> LaurentSeries<E> {
        LaurentSeries::new(self.valuation, self.coeffs.iter().map(f).collect(), self.precision, zero)
    }

    pub fn try_map<E: Coeff>(&self, zero: E, f: impl Fn(i64, &D) -> Result<E>) -> Result<LaurentSeries<E>> {
        let c =
            self.coeffs.iter().enumerate().map(|(i, v)| f(self.valuation + i as i64, v)).collect::<Result<Vec<E>>>()?;
        Ok(LaurentSeries::new(self.valuation, c, self.precision, zero))
    }

    pub fn inverse(&self) -> Result<Self> {
        let lead = self.leading().ok_or(Error::ZeroLeadingCoefficient)?;
        let inv = lead.try_inverse().ok_or(Error::ZeroLeadingCoefficient)?;
        let r = self.coeffs.len();
        let mut b: Vec<D> = Vec::with_capacity(r);
        b.push(inv.clone());
        for k in 1..r {
            let mut acc = self.zero.clone();
            for j in 1..=k {
                let a = &self.coeffs[j];
                if !a.is_zero_c() {
                    acc = acc.plus(&a.times(&b[k - j]));
                }
            }
            b.push(acc.times(&inv).negate());
        }
        Ok(Self::new(-self.valuation, b, r as i64 - self.valuation, self.zero.clone()))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inverse()?)
    }

    /// Integer power; negative exponents need an invertible leading coefficient.
    pub fn pow(&self, e: i64) -> Result<Self> {
        if e == 0 {
            return Ok(Self::constant(self.zero.one_like(), self.precision - self.valuation));
        }
        let mut b = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc: Option<Self> = None;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => b.clone(),
                    Some(a) => &a * &b,
                });
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc.expect("nonzero exponent"))
    }

    /// Evaluates a polynomial with coefficients in D at this series.
    pub fn compose_poly(&self, coeffs_ascending: &[D]) -> Self {
        let big = self.precision - self.valuation.min(0) * coeffs_ascending.len() as i64 + 1;
        let mut acc = Self::zero(self.zero.clone(), big);
        for c in coeffs_ascending.iter().rev() {
            acc = &(&acc * self) + &Self::constant(c.clone(), big);
        }
        acc
    }

    pub fn from_int(&self, n: i64) -> D {
        self.zero.from_int_like(&BigInt::from(n))
    }
}

impl<D: Coeff> Add for &LaurentSeries<D> {
    type Output = LaurentSeries<D>;
    fn add(self, rhs: &LaurentSeries<D>) -> LaurentSeries<D> {
        let p = self.precision.min(rhs.precision);
        let v = self.valuation.min(rhs.valuation).min(p);
        let c = (v..p)
            .map(|k| {
                let a = if k >= self.valuation { self.coeff(k) } else { self.zero.clone() };
                let b = if k >= rhs.valuation { rhs.coeff(k) } else { self.zero.clone() };
                a.plus(&b)
            })
            .collect();
        LaurentSeries::new(v, c, p, self.zero.clone())
    }
}

impl<D: Coeff> Neg for &LaurentSeries<D> {
    type Output = LaurentSeries<D>;
    fn neg(self) -> LaurentSeries<D> {
        LaurentSeries {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|v| v.negate()).collect(),
            precision: self.precision,
            zero: self.zero.clone(),
        }
    }
}

impl<D: Coeff> Sub for &LaurentSeries<D> {
    type Output = LaurentSeries<D>;
    fn sub(self, rhs: &LaurentSeries<D>) -> LaurentSeries<D> {
        self + &(-rhs)
    }
}

impl<D: Coeff> Mul for &LaurentSeries<D> {
    type Output = LaurentSeries<D>;
    fn mul(self, rhs: &LaurentSeries<D>) -> LaurentSeries<D> {
        let v = self.valuation + rhs.valuation;
        let p = (self.valuation + rhs.precision).min(rhs.valuation + self.precision);
        if self.is_zero() || rhs.is_zero() {
            return LaurentSeries::zero(self.zero.clone(), p);
        }
        let len = (p - v).max(0) as usize;
        let mut c = vec![self.zero.clone(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero_c() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero_c() {
                    c[i + j] = c[i + j].plus(&a.times(b));
                }
            }
        }
        LaurentSeries::new(v, c, p, self.zero.clone())
    }
}

impl<D: Coeff + fmt::Display> fmt::Display for LaurentSeries<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = self.precision - self.valuation;
        let mut terms: Vec<String> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero_c() {
                continue;
            }
            let c = c.to_string();
            let c = if c[1..].contains(['+', '-']) { format!("({c})") } else { c };
            terms.push(match i {
                0 => c,
                1 => format!("{c}*q"),
                _ => format!("{c}*q^{i}"),
            });
        }
        terms.push(format!("O(q^{rel})"));
        write!(f, "q^{} * ({})", self.valuation, terms.join(" + "))
    }
}

/// ∏ (1 − q^n)^{e_n} to the given precision, with integer coefficients.
pub fn binomial_power_product(exponents: &[(u64, i64)], precision: i64) -> LaurentSeries<BigInt> {
    let one = BigInt::from(1);
    let zero = BigInt::from(0);
    let len = precision.max(0) as usize;
    let mut c = vec![zero.clone(); len];
    if len > 0 {
        c[0] = one;
    }
    for &(n, e) in exponents {
        let n = n as usize;
        if n == 0 || n >= len || e == 0 {
            continue;
        }
        for _ in 0..e.unsigned_abs() {
            if e > 0 {
                // multiply by (1 − q^n)
                for k in (n..len).rev() {
                    let t = c[k - n].clone();
                    c[k] -= t;
                }
            } else {
                // divide by (1 − q^n)
                for k in n..len {
                    let t = c[k - n].clone();
                    c[k] += t;
                }
            }
        }
    }
    LaurentSeries::new(0, c, precision, zero)
}
