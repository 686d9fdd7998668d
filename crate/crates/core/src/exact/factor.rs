//! Factorization over ℚ: squarefree decomposition, a good prime, quadratic
//! Hensel lifting and subset recombination.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::int::primes_up_to;
use super::modp::{self, FpPoly};
use super::poly::IPoly;

/// `content · ∏ factor^multiplicity`, factors primitive with positive
/// leading coefficient, sorted by degree then coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub content: BigInt,
    pub factors: Vec<(IPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> IPoly {
        self.factors.iter().fold(IPoly::constant(self.content.clone()), |acc, (g, m)| &acc * &g.pow(*m))
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.factors.iter().map(|(g, _)| g.degree().unwrap_or(0)).collect()
    }
}

pub fn factor_over_q(f: &IPoly) -> Factorization {
    if f.is_zero() {
        return Factorization { content: BigInt::zero(), factors: Vec::new() };
    }
    let content = f.content();
    let mut factors = Vec::new();
    let parts = if f.degree().unwrap_or(0) > 0 && modp::squarefree_witness(f, 30) {
        vec![(f.primitive(), 1)]
    } else {
        f.squarefree_decomposition()
    };
    for (g, m) in parts {
        for h in factor_squarefree(&g) {
            factors.push((h, m));
        }
    }
    factors.sort_by(|a, b| sort_key(&a.0).cmp(&sort_key(&b.0)).then(a.1.cmp(&b.1)));
    Factorization { content, factors }
}

fn sort_key(p: &IPoly) -> (usize, Vec<BigInt>) {
    (p.degree().unwrap_or(0), p.coeffs().iter().rev().cloned().collect())
}

fn pick_prime(g: &IPoly) -> (u64, Vec<FpPoly>) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut tried = 0;
    for p in primes_up_to(10_000).into_iter().skip(1) {
        let Some(pat) = modp::degree_pattern(g, p) else { continue };
        if best.as_ref().is_some_and(|(_, b)| b.len() <= pat.len()) {
            tried += 1;
        } else {
            let gp = modp::monic(&modp::reduce(g, p), p);
            best = Some((p, modp::factor_squarefree(&gp, p, &mut rng)));
            tried += 1;
        }
        if tried >= 8 || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    best.expect("no good prime below 10000")
}

/// Irreducible factors of a primitive squarefree integer polynomial.
pub fn factor_squarefree(g: &IPoly) -> Vec<IPoly> {
    let g = g.primitive();
    let n = g.degree().unwrap_or(0);
    if n <= 1 {
        return if n == 1 { vec![g] } else { Vec::new() };
    }
    let (p, modular) = pick_prime(&g);
    if modular.len() == 1 {
        return vec![g];
    }
    let lc = g.lead();
    let bound = coefficient_bound(&g) * lc.abs() * BigInt::from(2);
    let pb = BigInt::from(p);
    let mut m = pb.clone();
    let mut k = 1u32;
    while m <= bound {
        m *= &pb;
        k += 1;
    }
    let lifted = hensel_lift_all(&g, &modular, p, k);
    let allowed = admissible_degrees(&g, 24);
    recombine(&g, lifted, &m, &allowed)
}

/// Degrees that a product of true factors can have: the intersection over
/// sampled primes of the subset sums of the modular degree pattern.
fn admissible_degrees(g: &IPoly, primes: usize) -> Vec<bool> {
    let n = g.degree().unwrap_or(0);
    let mut allowed = vec![true; n + 1];
    let mut used = 0;
    for p in primes_up_to(20_000).into_iter().skip(1) {
        if used == primes {
            break;
        }
        let Some(pat) = modp::degree_pattern(g, p) else { continue };
        used += 1;
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for d in pat {
            for s in (d..=n).rev() {
                sums[s] |= sums[s - d];
            }
        }
        for (a, s) in allowed.iter_mut().zip(sums) {
            *a &= s;
        }
    }
    allowed
}

/// Mignotte-style bound on the coefficients of any factor: 2^n · ‖g‖₂, rounded up.
fn coefficient_bound(g: &IPoly) -> BigInt {
    let n = g.degree().unwrap_or(0);
    let norm2: BigInt = g.coeffs().iter().map(|c| c * c).sum();
    (norm2.sqrt() + BigInt::one()) << n
}

fn modded(f: &IPoly, m: &BigInt) -> IPoly {
    IPoly::from_coeffs(f.coeffs().iter().map(|c| c.mod_floor(m)).collect(), BigInt::zero())
}

fn symmetric(f: &IPoly, m: &BigInt) -> IPoly {
    let half = m / 2;
    IPoly::from_coeffs(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
        BigInt::zero(),
    )
}

/// Lifts f ≡ lc · ∏ monic factors (mod p) to a congruence mod p^k.
fn hensel_lift_all(f: &IPoly, factors: &[FpPoly], p: u64, k: u32) -> Vec<IPoly> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut remaining: Vec<FpPoly> = factors.to_vec();
    let target = BigInt::from(p).pow(k);
    while remaining.len() > 1 {
        let h = remaining.remove(0);
        // rest ≡ g·h with h monic, g carrying the leading coefficient.
        let others = remaining.iter().fold(vec![1u64], |acc, q| modp::mul(&acc, q, p));
        let lc = modp::reduce(&IPoly::constant(rest.lead()), p)[0];
        let g0 = modp::scale(&others, lc, p);
        let (g, hh) = hensel_pair(&rest, &g0, &h, p, &target);
        out.push(hh);
        rest = g;
    }
    out.push(modded(&rest.scale(&inv_mod_big(&rest.lead(), &target)), &target));
    out
}

fn inv_mod_big(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "leading coefficient shares a factor with the modulus");
    e.x.mod_floor(m)
}

/// Quadratic Hensel lifting of f ≡ g·h (mod p), h monic, to modulus ≥ target.
/// Returns (g, h) lifted modulo `target`.
fn hensel_pair(f: &IPoly, g0: &FpPoly, h0: &FpPoly, p: u64, target: &BigInt) -> (IPoly, IPoly) {
    let (gcd, s0, t0) = ext_gcd_fp(g0, h0, p);
    assert_eq!(gcd, vec![1], "factors not coprime mod p");
    let mut g = modp::lift(g0);
    let mut h = modp::lift(h0);
    let mut s = modp::lift(&s0);
    let mut t = modp::lift(&t0);
    let mut m = BigInt::from(p);
    while &m < target {
        let m2 = &m * &m;
        let e = modded(&(f - &(&g * &h)), &m2);
        let (q, r) = modded(&(&s * &e), &m2).divrem(&h);
        let g1 = modded(&(&(&g + &(&t * &e)) + &(&q * &g)), &m2);
        let h1 = modded(&(&h + &r), &m2);
        let b = modded(&(&(&(&s * &g1) + &(&t * &h1)) - &IPoly::constant(BigInt::one())), &m2);
        let (c, d) = modded(&(&s * &b), &m2).divrem(&h1);
        s = modded(&(&s - &d), &m2);
        t = modded(&(&(&t - &(&t * &b)) - &(&c * &g1)), &m2);
        g = g1;
        h = h1;
        m = m2;
    }
    (modded(&g, target), modded(&h, target))
}

/// (gcd, s, t) with s·a + t·b = gcd over 𝔽_p, gcd monic.
fn ext_gcd_fp(a: &FpPoly, b: &FpPoly, p: u64) -> (FpPoly, FpPoly, FpPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (FpPoly, FpPoly) = (vec![1], vec![]);
    let (mut t0, mut t1): (FpPoly, FpPoly) = (vec![], vec![1]);
    while !r1.is_empty() {
        let (q, r) = modp::divrem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let s = modp::sub(&s0, &modp::mul(&q, &s1, p), p);
        s0 = std::mem::replace(&mut s1, s);
        let t = modp::sub(&t0, &modp::mul(&q, &t1, p), p);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = super::int::inv_mod(*r0.last().unwrap(), p).unwrap();
    (modp::scale(&r0, inv, p), modp::scale(&s0, inv, p), modp::scale(&t0, inv, p))
}

/// Exact quotient over ℤ if `d` divides `f`.
fn try_divide(f: &IPoly, d: &IPoly) -> Option<IPoly> {
    let (q, r) = f.to_rpoly().divrem(&d.to_rpoly());
    if !r.is_zero() || q.coeffs().iter().any(|c| !c.is_integer()) {
        return None;
    }
    Some(IPoly::from_coeffs(q.coeffs().iter().map(|c| c.to_integer()).collect(), BigInt::zero()))
}

fn recombine(f: &IPoly, mut lifted: Vec<IPoly>, m: &BigInt, allowed: &[bool]) -> Vec<IPoly> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = false;
        for subset in subsets(lifted.len(), size) {
            let deg: usize = subset.iter().map(|&i| lifted[i].degree().unwrap_or(0)).sum();
            if !allowed[deg] {
                continue;
            }
            let lc = f.lead();
            let prod = subset.iter().fold(IPoly::constant(lc.clone()), |acc, &i| modded(&(&acc * &lifted[i]), m));
            let cand = symmetric(&prod, m).primitive();
            // Cheap constant-term screen before trial division.
            let c0 = cand.coeff(0);
            if !c0.is_zero() && !(f.coeff(0) * &lc).is_multiple_of(&c0) {
                continue;
            }
            if let Some(q) = try_divide(&f, &cand) {
                out.push(cand);
                f = q.primitive();
                let chosen: BTreeSet<usize> = subset.into_iter().collect();
                lifted = lifted.into_iter().enumerate().filter(|(i, _)| !chosen.contains(i)).map(|(_, v)| v).collect();
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    if f.degree().unwrap_or(0) > 0 {
        out.push(f.primitive());
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Certifies irreducibility from modular degree patterns: true when the only
/// factor degrees compatible with every sampled pattern are 0 and n.
pub fn irreducible_by_patterns(f: &IPoly, max_primes: usize) -> bool {
    let n = f.degree().unwrap_or(0);
    if n <= 1 {
        return n == 1;
    }
    let mut possible: BTreeSet<usize> = (1..n).collect();
    let mut used = 0;
    for p in primes_up_to(100_000) {
        let Some(pat) = modp::degree_pattern(f, p) else { continue };
        let mut sums = BTreeSet::from([0usize]);
        for d in pat {
            let next: Vec<usize> = sums.iter().map(|s| s + d).collect();
            sums.extend(next);
        }
        possible.retain(|d| sums.contains(d));
        used += 1;
        if possible.is_empty() {
            return true;
        }
        if used >= max_primes {
            break;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ip(v: &[i64]) -> IPoly {
        IPoly::from_i64(v)
    }

    #[test]
    fn difference_of_squares() {
        let fac = factor_over_q(&ip(&[1, 0, -1]));
        assert_eq!(fac.factors, vec![(ip(&[1, -1]), 1), (ip(&[1, 1]), 1)]);
    }

    #[test]
    fn gx_and_gy_37() {
        let gx = factor_over_q(&ip(&[1, -24, 67, -42, -5, 3]));
        assert_eq!(gx.factors, vec![(ip(&[1, -1]), 1), (ip(&[1, -23, 44, 2, -3]), 1)]);
        let gy = factor_over_q(&ip(&[1, 95, -86, -279, -72, 27]));
        assert_eq!(gy.factors, vec![(ip(&[1, 1]), 1), (ip(&[1, 94, -180, -99, 27]), 1)]);
    }

    #[test]
    fn swinnerton_dyer_like_many_modular_factors() {
        // x^4 − 10x^2 + 1 splits into quadratics or linears mod every prime.
        let f = ip(&[1, 0, -10, 0, 1]);
        let fac = factor_over_q(&f);
        assert_eq!(fac.factors, vec![(f.clone(), 1)]);
        assert!(!irreducible_by_patterns(&f, 20));
    }

    #[test]
    fn content_and_multiplicity() {
        let f = (&ip(&[2, 1]).pow(2) * &ip(&[3, 0, -1])).scale(&BigInt::from(-6));
        let fac = factor_over_q(&f);
        assert_eq!(fac.content, BigInt::from(-6));
        assert_eq!(fac.expand(), f);
        assert_eq!(fac.factors, vec![(ip(&[2, 1]), 2), (ip(&[3, 0, -1]), 1)]);
    }

    #[test]
    fn non_monic_product() {
        let a = ip(&[6, 5, -7, 3]);
        let b = ip(&[10, 0, 3, -11, 4]);
        let fac = factor_over_q(&(&a * &b));
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.expand(), &a * &b);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn reconstruction_and_irreducibility(
            a in prop::collection::vec(-9i64..9, 2..5),
            b in prop::collection::vec(-9i64..9, 2..5),
            c in prop::collection::vec(-9i64..9, 1..4)) {
            let f = &(&ip(&a) * &ip(&b)) * &ip(&c);
            prop_assume!(!f.is_zero());
            let fac = factor_over_q(&f);
            prop_assert_eq!(fac.expand(), f.clone());
            for (g, _) in &fac.factors {
                // No factor splits further under a second factorization attempt.
                prop_assert_eq!(factor_squarefree(g).len(), 1);
            }
        }
    }
}
