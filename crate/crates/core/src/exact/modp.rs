//! Polynomial arithmetic and factorization over 𝔽_p.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::int::{inv_mod, is_prime, mul_mod, primes_up_to};
use super::poly::IPoly;
use crate::error::{Error, Result};

/// Ascending coefficients in [0, p), without trailing zeros.
pub type FpPoly = Vec<u64>;

pub fn trim(mut f: FpPoly) -> FpPoly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub fn reduce(f: &IPoly, p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    trim(f.coeffs().iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

pub fn lift(f: &FpPoly) -> IPoly {
    IPoly::from_coeffs(f.iter().map(|&c| BigInt::from(c)).collect(), BigInt::zero())
}

pub fn deg(f: &FpPoly) -> Option<usize> {
    f.len().checked_sub(1)
}

pub fn add(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)) % p).collect())
}

pub fn sub(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).unwrap_or(&0) + p - b.get(i).unwrap_or(&0)) % p).collect())
}

pub fn mul(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            c[i + j] = (c[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(c)
}

pub fn scale(a: &FpPoly, k: u64, p: u64) -> FpPoly {
    trim(a.iter().map(|&x| mul_mod(x, k, p)).collect())
}

pub fn divrem(a: &FpPoly, b: &FpPoly, p: u64) -> (FpPoly, FpPoly) {
    let db = deg(b).expect("division by zero polynomial mod p");
    let inv = inv_mod(b[db], p).expect("leading coefficient not invertible");
    let mut r = a.clone();
    if r.len() <= db {
        return (Vec::new(), trim(r));
    }
    let mut q = vec![0u64; r.len() - db];
    for i in (db..r.len()).rev() {
        let t = mul_mod(r[i], inv, p);
        if t == 0 {
            continue;
        }
        q[i - db] = t;
        for (j, &bj) in b.iter().enumerate() {
            let k = i - db + j;
            r[k] = (r[k] + p - mul_mod(t, bj, p)) % p;
        }
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub fn rem(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    divrem(a, b, p).1
}

pub fn monic(a: &FpPoly, p: u64) -> FpPoly {
    match a.last() {
        Some(&l) => scale(a, inv_mod(l, p).unwrap(), p),
        None => Vec::new(),
    }
}

pub fn gcd(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

pub fn derivative(a: &FpPoly, p: u64) -> FpPoly {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| mul_mod(c, i as u64 % p, p)).collect())
}

/// base^e mod m.
pub fn powmod(base: &FpPoly, mut e: u128, m: &FpPoly, p: u64) -> FpPoly {
    let mut acc: FpPoly = vec![1];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(&mul(&acc, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        e >>= 1;
    }
    rem(&acc, m, p)
}

/// a^p mod m.
fn frobenius_power(x: &FpPoly, m: &FpPoly, p: u64) -> FpPoly {
    powmod(x, p as u128, m, p)
}

/// Squarefree decomposition of a monic polynomial: (factor, multiplicity).
pub fn squarefree(f: &FpPoly, p: u64) -> Vec<(FpPoly, u32)> {
    let mut out = Vec::new();
    sqf_rec(&monic(f, p), p, 1, &mut out);
    out
}

fn sqf_rec(f: &FpPoly, p: u64, mult: u32, out: &mut Vec<(FpPoly, u32)>) {
    if deg(f).unwrap_or(0) == 0 {
        return;
    }
    let df = derivative(f, p);
    let mut c = gcd(f, &df, p);
    let mut w = divrem(f, &c, p).0;
    let mut i = 1;
    while deg(&w).unwrap_or(0) > 0 {
        let y = gcd(&w, &c, p);
        let z = divrem(&w, &y, p).0;
        if deg(&z).unwrap_or(0) > 0 {
            out.push((monic(&z, p), i * mult));
        }
        i += 1;
        w = y;
        c = divrem(&c, &w, p).0;
    }
    if deg(&c).unwrap_or(0) > 0 {
        // c is a p-th power: take the p-th root coefficient-wise.
        let root: FpPoly = c.iter().step_by(p as usize).copied().collect();
        sqf_rec(&root, p, mult * p as u32, out);
    }
}

/// Distinct-degree factorization of a monic squarefree polynomial.
pub fn distinct_degree(f: &FpPoly, p: u64) -> Vec<(FpPoly, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x: FpPoly = vec![0, 1];
    let mut h = x.clone();
    let mut d = 0;
    while let Some(df) = deg(&f) {
        if df < 2 * (d + 1) {
            if df > 0 {
                out.push((f.clone(), df));
            }
            break;
        }
        d += 1;
        h = frobenius_power(&h, &f, p);
        let g = gcd(&sub(&h, &x, p), &f, p);
        if deg(&g).unwrap_or(0) > 0 {
            f = divrem(&f, &g, p).0;
            h = rem(&h, &f, p);
            out.push((g, d));
        }
    }
    out
}

/// Splits a product of distinct monic irreducibles of degree d.
pub fn equal_degree(f: &FpPoly, d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let n = deg(f).unwrap();
    if n == d {
        return vec![f.clone()];
    }
    loop {
        let a: FpPoly = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if deg(&a).unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // Trace map a + a² + … + a^(2^(d−1)).
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                t = rem(&mul(&t, &t, p), f, p);
                acc = add(&acc, &t, p);
            }
            acc
        } else {
            // a^((p^d − 1)/2) = (a · a^p · … · a^(p^(d−1)))^((p − 1)/2)
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                t = frobenius_power(&t, f, p);
                acc = rem(&mul(&acc, &t, p), f, p);
            }
            sub(&powmod(&acc, ((p - 1) / 2) as u128, f, p), &vec![1], p)
        };
        let g = gcd(&b, f, p);
        if let Some(dg) = deg(&g) {
            if dg > 0 && dg < n {
                let h = divrem(f, &g, p).0;
                let mut out = equal_degree(&g, d, p, rng);
                out.extend(equal_degree(&monic(&h, p), d, p, rng));
                return out;
            }
        }
    }
}

/// Monic irreducible factors of a monic squarefree polynomial.
pub fn factor_squarefree(f: &FpPoly, p: u64, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f, p) {
        out.extend(equal_degree(&g, d, p, rng));
    }
    out.sort();
    out
}

/// Complete factorization into monic irreducibles with multiplicities.
pub fn factor_mod_p(f: &IPoly, p: u64) -> Result<Vec<(IPoly, u32)>> {
    if !is_prime(p) {
        return Err(Error::BadPrime(p));
    }
    let fp = reduce(f, p);
    if fp.len() != f.coeffs().len() || f.is_zero() {
        return Err(Error::BadPrime(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p);
    let mut out = Vec::new();
    for (g, m) in squarefree(&fp, p) {
        for h in factor_squarefree(&g, p, &mut rng) {
            out.push((h, m));
        }
    }
    out.sort();
    Ok(out.into_iter().map(|(h, m)| (lift(&h), m)).collect())
}

/// Certifies that f is squarefree over ℚ by finding a prime p ∤ lc(f) with
/// f mod p squarefree among the first `tries` odd primes. False means no
/// witness was found, not that f has a repeated factor.
pub fn squarefree_witness(f: &IPoly, tries: usize) -> bool {
    primes_up_to(2_000).into_iter().skip(1).take(tries).any(|p| {
        let fp = reduce(f, p);
        fp.len() == f.coeffs().len() && deg(&gcd(&fp, &derivative(&fp, p), p)) == Some(0)
    })
}

/// Sorted factor degrees of f mod p, or None when f is not squarefree mod p
/// or p divides the leading coefficient.
pub fn degree_pattern(f: &IPoly, p: u64) -> Option<Vec<usize>> {
    let fp = reduce(f, p);
    if fp.len() != f.coeffs().len() {
        return None;
    }
    let fp = monic(&fp, p);
    if deg(&gcd(&fp, &derivative(&fp, p), p)) != Some(0) {
        return None;
    }
    let mut degs = Vec::new();
    for (g, d) in distinct_degree(&fp, p) {
        for _ in 0..deg(&g).unwrap() / d {
            degs.push(d);
        }
    }
    degs.sort_unstable_by(|a, b| b.cmp(a));
    Some(degs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn x2_plus_1() {
        let f = IPoly::from_i64(&[1, 0, 1]);
        let f5 = factor_mod_p(&f, 5).unwrap();
        assert_eq!(f5, vec![(IPoly::from_i64(&[1, 2]), 1), (IPoly::from_i64(&[1, 3]), 1)]);
        let f7 = factor_mod_p(&f, 7).unwrap();
        assert_eq!(f7, vec![(f.clone(), 1)]);
        assert_eq!(factor_mod_p(&IPoly::from_i64(&[5, 1]), 5), Err(Error::BadPrime(5)));
    }

    #[test]
    fn repeated_and_pth_power_factors() {
        // (x+1)^3 (x^2+x+1) over F_3 contains a cube.
        let x1 = IPoly::from_i64(&[1, 1]);
        let f = &x1.pow(3) * &IPoly::from_i64(&[1, 1, 1]);
        let fac = factor_mod_p(&f, 3).unwrap();
        // x^2+x+1 = (x−1)^2 = (x+2)^2 mod 3.
        assert_eq!(fac, vec![(IPoly::from_i64(&[1, 1]), 3), (IPoly::from_i64(&[1, 2]), 2)]);
    }

    #[test]
    fn characteristic_two() {
        let f = IPoly::from_i64(&[1, 0, 0, 0, 0, 1]); // x^5 + 1 = (x+1)(x^4+x^3+x^2+x+1)
        let fac = factor_mod_p(&f, 2).unwrap();
        assert_eq!(fac.len(), 2);
        let f = IPoly::from_i64(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1]);
        let fac = factor_mod_p(&f, 2).unwrap();
        let prod = fac.iter().fold(IPoly::from_i64(&[1]), |acc, (g, m)| &acc * &g.pow(*m));
        assert_eq!(reduce(&prod, 2), reduce(&f, 2));
    }

    #[test]
    fn gx37_mod_11_matches_root_search() {
        let g = IPoly::from_i64(&[1, -24, 67, -42, -5, 3]);
        let fac = factor_mod_p(&g, 11).unwrap();
        let linear = fac.iter().filter(|(h, _)| h.degree() == Some(1)).count();
        let roots = (0..11u64)
            .filter(|&x| {
                let v = g.eval(&BigInt::from(x));
                v.mod_floor(&BigInt::from(11)).is_zero()
            })
            .count();
        assert_eq!(linear, roots);
    }

    proptest! {
        #[test]
        fn product_reconstructs(c in prop::collection::vec(0i64..13, 2..9)) {
            let mut c = c;
            c[0] = 1;
            let f = IPoly::from_i64(&c);
            let fac = factor_mod_p(&f, 13).unwrap();
            let prod = fac.iter().fold(IPoly::from_i64(&[1]), |acc, (g, m)| &acc * &g.pow(*m));
            prop_assert_eq!(reduce(&prod, 13), reduce(&f, 13));
            for (g, _) in &fac {
                // irreducible: no root unless linear, and distinct-degree agrees
                let gp = reduce(g, 13);
                let dd = distinct_degree(&gp, 13);
                prop_assert_eq!(dd.len(), 1);
                prop_assert_eq!(dd[0].1, deg(&gp).unwrap());
            }
        }
    }
}
