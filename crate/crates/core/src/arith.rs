//! Quadratic characters, Bernoulli exponents, valences, genera, units and
//! class numbers.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::int::{gcd_u64, is_prime, isqrt, primes_up_to};
use crate::exact::{rat, rat_int, QuadElem, Rat};

pub fn jacobi(a: i64, n: i64) -> Result<i64> {
    if n < 1 || n % 2 == 0 {
        return Err(Error::EvenModulus(n));
    }
    let mut a = a.rem_euclid(n);
    let mut n = n;
    let mut t = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    Ok(if n == 1 { t } else { 0 })
}

/// S(δ, n) = Σ_{r=1}^{(n−1)/2} ⌊rδ/n⌋.
pub fn floor_sum(delta: i64, n: i64) -> Result<i64> {
    if n < 1 || n % 2 == 0 {
        return Err(Error::EvenModulus(n));
    }
    if delta % n == 0 {
        return Err(Error::DivisibleInput(delta, n));
    }
    Ok((1..=(n - 1) / 2).map(|r| (r * delta).div_euclid(n)).sum())
}

/// Whether (δ/n) = (−1)^{S(δ,n)} · (−1)^{(n²−1)/8 · (δ+1)}.
pub fn lemma_sun_check(delta: i64, n: i64) -> Result<bool> {
    let s = floor_sum(delta, n)?;
    let j = jacobi(delta, n)?;
    let e = ((n * n - 1) / 8) * (delta + 1);
    let rhs = if (s + e).rem_euclid(2) == 0 { 1 } else { -1 };
    Ok(j == rhs)
}

/// The Legendre symbol modulo a prime N ≡ 1 (mod 4).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadraticCharacter {
    n: u64,
}

impl QuadraticCharacter {
    pub fn new(n: u64) -> Result<Self> {
        check_level(n)?;
        Ok(QuadraticCharacter { n })
    }

    pub fn level(&self) -> u64 {
        self.n
    }

    pub fn chi(&self, m: i64) -> i64 {
        jacobi(m, self.n as i64).expect("odd level")
    }
}

pub fn check_level(n: u64) -> Result<()> {
    if is_prime(n) && n % 4 == 1 {
        Ok(())
    } else {
        Err(Error::BadLevel(n))
    }
}

fn b2(x: &Rat) -> Rat {
    x * x - x + rat(1, 6)
}

/// v_χ = (N/2) Σ_{r=1}^{(N−1)/2} χ(r) B₂(r/N).
pub fn bernoulli_exponent(n: u64) -> Result<Rat> {
    let chi = QuadraticCharacter::new(n)?;
    let nn = n as i64;
    let s: Rat = (1..=(nn - 1) / 2).map(|r| b2(&rat(r, nn)) * rat_int(chi.chi(r))).sum();
    Ok(s * rat(nn, 2))
}

/// The same exponent from the full range, (N/4) Σ_{r=1}^{N−1} χ(r) B₂(r/N).
pub fn bernoulli_exponent_full(n: u64) -> Result<Rat> {
    let chi = QuadraticCharacter::new(n)?;
    let nn = n as i64;
    let s: Rat = (1..nn).map(|r| b2(&rat(r, nn)) * rat_int(chi.chi(r))).sum();
    Ok(s * rat(nn, 4))
}

/// v_N = (N − 1)/gcd(N − 1, 12).
pub fn t_valence(n: u64) -> u64 {
    (n - 1) / gcd_u64(n - 1, 12)
}

/// Primes 13 < N ≤ max_N, N ≡ 1 (mod 4), with v_χ integral and v_N | v_χ.
pub fn divisibility_survey(max_n: u64) -> Vec<(u64, u64, u64)> {
    let mut out = Vec::new();
    for n in primes_up_to(max_n) {
        if n <= 13 || n % 4 != 1 {
            continue;
        }
        let v = bernoulli_exponent(n).expect("valid level");
        if !v.is_integer() || v.is_negative() {
            continue;
        }
        let v = v.to_integer();
        let vn = BigInt::from(t_valence(n));
        if (&v % &vn).is_zero() {
            out.push((n, t_valence(n), v.try_into().expect("small exponent")));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct RealQuadraticData {
    pub n: u64,
    pub fundamental_unit: QuadElem,
    pub unit_norm: i64,
    pub class_number: u64,
    pub narrow_class_number: u64,
}

/// Fundamental unit from the continued fraction of ω = (1+√N)/2 and class
/// numbers from cycles of reduced indefinite forms of discriminant N.
pub fn real_quadratic_data(n: u64) -> Result<RealQuadraticData> {
    check_level(n)?;
    let (u, norm) = fundamental_unit(n);
    let narrow = narrow_class_number(n as i64);
    let class_number = if norm == -1 { narrow } else { narrow / 2 };
    Ok(RealQuadraticData { n, fundamental_unit: u, unit_norm: norm, class_number, narrow_class_number: narrow })
}

fn fundamental_unit(n: u64) -> (QuadElem, i64) {
    let d = BigInt::from(n);
    let s = BigInt::from(isqrt(n));
    // ω = (P + √D)/Q with P = 1, Q = 2.
    let (mut pp, mut qq) = (BigInt::one(), BigInt::from(2));
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let c = BigInt::from((1 - n as i64) / 4);
    loop {
        let a = (&pp + &s) / &qq;
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        (h0, h1) = (h1, h2);
        (k0, k1) = (k1, k2);
        let norm = &h1 * &h1 - &h1 * &k1 + &k1 * &k1 * &c;
        if norm.abs().is_one() {
            let two = BigInt::from(2);
            let u = QuadElem::new(n, Rat::new(&h1 * &two - &k1, two.clone()), Rat::new(k1.clone(), two));
            return (u, if norm.is_positive() { 1 } else { -1 });
        }
        pp = &a * &qq - &pp;
        qq = (&d - &pp * &pp) / &qq;
    }
}

fn is_reduced_indefinite(a: i64, b: i64, d: i64) -> bool {
    let a2 = 2 * a.abs();
    b > 0 && b * b < d && ((a2 + b) * (a2 + b) > d) && (a2 - b <= 0 || (a2 - b) * (a2 - b) < d)
}

/// Number of cycles of reduced forms of positive non-square discriminant d.
pub fn narrow_class_number(d: i64) -> u64 {
    let s = isqrt(d as u64) as i64;
    let mut forms = BTreeSet::new();
    for b in 1..=s {
        if (b - d).rem_euclid(2) != 0 {
            continue;
        }
        let ac = (b * b - d) / 4;
        for a in 1..=ac.abs() {
            if ac % a != 0 {
                continue;
            }
            for sa in [a, -a] {
                let c = ac / sa;
                if gcd3(sa, b, c) == 1 && is_reduced_indefinite(sa, b, d) {
                    forms.insert((sa, b, c));
                }
            }
        }
    }
    let mut seen = BTreeSet::new();
    let mut cycles = 0;
    for &f in &forms {
        if seen.contains(&f) {
            continue;
        }
        cycles += 1;
        let mut g = f;
        while seen.insert(g) {
            g = rho(g, d, s);
        }
    }
    cycles
}

fn gcd3(a: i64, b: i64, c: i64) -> u64 {
    gcd_u64(gcd_u64(a.unsigned_abs(), b.unsigned_abs()), c.unsigned_abs())
}

fn rho((_, b, c): (i64, i64, i64), d: i64, s: i64) -> (i64, i64, i64) {
    let m = 2 * c.abs();
    let target = (-b).rem_euclid(m);
    let b2 = s - (s - target).rem_euclid(m);
    (c, b2, (b2 * b2 - d) / (4 * c))
}

/// Hurwitz class number H(n), with H(0) = −1/12.
pub fn hurwitz_class_number(n: u64) -> Rat {
    if n == 0 {
        return rat(-1, 12);
    }
    if n % 4 == 1 || n % 4 == 2 {
        return Rat::zero();
    }
    let n = n as i64;
    let mut h = Rat::zero();
    let mut b = n % 2;
    while 3 * b * b <= n {
        let ac = (b * b + n) / 4;
        let mut a = b.max(1);
        while a * a <= ac {
            if ac % a == 0 {
                let c = ac / a;
                let w = if a == b && b == c {
                    rat(1, 3)
                } else if b == 0 && a == c {
                    rat(1, 2)
                } else {
                    Rat::one()
                };
                // (a, ±b, c) are distinct reduced forms unless b = 0, b = a or a = c.
                if b == 0 || b == a || a == c {
                    h += w;
                } else {
                    h += w * rat_int(2);
                }
            }
            a += 1;
        }
        b += 2;
    }
    h
}

/// Class number of primitive positive definite forms of discriminant d < 0.
pub fn class_number_negative(d: i64) -> u64 {
    let n = -d;
    let mut h = 0;
    let mut b = n % 2;
    while 3 * b * b <= n {
        let ac = (b * b + n) / 4;
        let mut a = b.max(1);
        while a * a <= ac {
            if ac % a == 0 {
                let c = ac / a;
                if gcd3(a, b, c) == 1 {
                    h += if b == 0 || b == a || a == c { 1 } else { 2 };
                }
            }
            a += 1;
        }
        b += 2;
    }
    h
}

/// Genus of X_0(N) for prime N.
pub fn genus_x0(n: u64) -> u64 {
    let nu2 = if n == 2 {
        1
    } else if n % 4 == 1 {
        2
    } else {
        0
    };
    let nu3 = if n == 3 {
        1
    } else if n % 3 == 1 {
        2
    } else {
        0
    };
    let g = rat_int(1) + rat(n as i64 + 1, 12) - rat(nu2, 4) - rat(nu3, 3) - rat_int(1);
    g.to_integer().try_into().expect("nonnegative genus")
}

/// Genus of X_0^+(N) by Riemann–Hurwitz with h(−4N) fixed points of w_N.
pub fn genus_x0_plus(n: u64) -> u64 {
    let g = genus_x0(n) as i64;
    let fixed = class_number_negative(-4 * n as i64) as i64;
    let fixed = if n % 4 == 3 { fixed + class_number_negative(-(n as i64)) as i64 } else { fixed };
    let two_g = g + 1 - fixed / 2;
    (two_g / 2) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn legendre_brute(a: i64, p: i64) -> i64 {
        if a.rem_euclid(p) == 0 {
            0
        } else if (1..p).any(|x| (x * x - a).rem_euclid(p) == 0) {
            1
        } else {
            -1
        }
    }

    #[test]
    fn jacobi_values() {
        assert_eq!(jacobi(1, 9), Ok(1));
        assert_eq!(jacobi(2, 5), Ok(-1));
        assert_eq!(jacobi(3, 5), Ok(legendre_brute(3, 5)));
        assert_eq!(jacobi(3, 4), Err(Error::EvenModulus(4)));
    }

    #[test]
    fn floor_sums() {
        assert_eq!(floor_sum(3, 5), Ok(1));
        for n in (1..40).step_by(2) {
            if n > 1 {
                assert_eq!(floor_sum(1, n), Ok(0));
            }
        }
        assert_eq!(floor_sum(10, 5), Err(Error::DivisibleInput(10, 5)));
        for p in primes_up_to(50).into_iter().skip(1) {
            for q in primes_up_to(50).into_iter().skip(1) {
                if p != q {
                    let s = floor_sum(q as i64, p as i64).unwrap();
                    let sign = if s % 2 == 0 { 1 } else { -1 };
                    assert_eq!(jacobi(q as i64, p as i64).unwrap(), sign, "({q}/{p})");
                }
            }
        }
    }

    #[test]
    fn lemma_sun_small_cases() {
        assert_eq!(lemma_sun_check(3, 5), Ok(true));
        assert_eq!(lemma_sun_check(2, 9), Ok(true));
    }

    #[test]
    fn bernoulli_exponents() {
        assert_eq!(bernoulli_exponent(5).unwrap(), rat(1, 5));
        assert_eq!(bernoulli_exponent(13).unwrap(), rat_int(1));
        assert_eq!(bernoulli_exponent(37).unwrap(), rat_int(5));
        assert_eq!(bernoulli_exponent(109).unwrap(), rat_int(27));
        assert_eq!(bernoulli_exponent(197).unwrap(), rat_int(49));
        assert_eq!(bernoulli_exponent(7), Err(Error::BadLevel(7)));
    }

    #[test]
    fn valences() {
        assert_eq!(t_valence(5), 1);
        assert_eq!(t_valence(109), 9);
        assert_eq!(t_valence(197), 49);
    }

    #[test]
    fn survey_edges() {
        assert!(divisibility_survey(100).is_empty());
        assert!(divisibility_survey(13).is_empty());
    }

    /// Smallest unit > 1 of norm ±1 by search over (2a + b√N)/2 representations.
    fn unit_brute(n: u64) -> QuadElem {
        for y in 1i64.. {
            for x in [y % 2, y % 2 + 2].iter().flat_map(|&s| (0..).map(move |k| s + 2 * k)).take(100_000) {
                let nn = x * x - (n as i64) * y * y;
                if nn == 4 || nn == -4 {
                    return QuadElem::new(n, rat(x, 2), rat(y, 2));
                }
                if x * x > (n as i64) * y * y + 4 {
                    break;
                }
            }
        }
        unreachable!()
    }

    #[test]
    fn fundamental_units() {
        for (n, a, b) in [(5, (1, 2), (1, 2)), (13, (3, 2), (1, 2)), (37, (6, 1), (1, 1))] {
            let d = real_quadratic_data(n).unwrap();
            assert_eq!(d.fundamental_unit, QuadElem::new(n, rat(a.0, a.1), rat(b.0, b.1)));
            assert_eq!(d.class_number, 1);
        }
        assert_eq!(real_quadratic_data(37).unwrap().fundamental_unit.trace(), rat_int(12));
        for n in [17u64, 29, 41, 53, 61, 73, 89, 97, 101] {
            let d = real_quadratic_data(n).unwrap();
            assert_eq!(d.fundamental_unit, unit_brute(n), "N = {n}");
            assert!(d.fundamental_unit.to_f64() > 1.0);
            assert_eq!(d.fundamental_unit.norm().abs(), rat_int(1));
        }
    }

    #[test]
    fn class_numbers_of_known_fields() {
        // h(229) = 3 is the smallest prime discriminant with class number > 1.
        assert_eq!(real_quadratic_data(229).unwrap().class_number, 3);
        assert_eq!(real_quadratic_data(401).unwrap().class_number, 5);
        assert_eq!(class_number_negative(-4), 1);
        assert_eq!(class_number_negative(-23), 3);
        assert_eq!(class_number_negative(-148), 2);
    }

    #[test]
    fn hurwitz_values() {
        assert_eq!(hurwitz_class_number(0), rat(-1, 12));
        assert_eq!(hurwitz_class_number(3), rat(1, 3));
        assert_eq!(hurwitz_class_number(4), rat(1, 2));
        assert_eq!(hurwitz_class_number(23), rat_int(3));
        assert_eq!(hurwitz_class_number(12), rat(4, 3));
        assert_eq!(hurwitz_class_number(5), Rat::zero());
    }

    #[test]
    fn genera() {
        assert_eq!(genus_x0(17), 1);
        assert_eq!(genus_x0(29), 2);
        assert_eq!(genus_x0(37), 2);
        assert_eq!(genus_x0(5), 0);
        assert_eq!(genus_x0(13), 0);
        for n in [37, 53, 61, 89, 101] {
            assert_eq!(genus_x0_plus(n), 1, "N = {n}");
        }
        assert_eq!(genus_x0_plus(73), 2);
    }

    proptest! {
        #[test]
        fn chi_multiplicative(a in -500i64..500, b in -500i64..500) {
            let chi = QuadraticCharacter::new(37).unwrap();
            prop_assert_eq!(chi.chi(a * b), chi.chi(a) * chi.chi(b));
        }

        #[test]
        fn jacobi_matches_brute(a in -200i64..200, pi in 1usize..25) {
            let p = primes_up_to(100)[pi] as i64;
            prop_assert_eq!(jacobi(a, p).unwrap(), legendre_brute(a, p));
        }
    }
}
