//! Frobenius cycle-type statistics and hypothesis scores for the Galois
//! group of the splitting field of p_N.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::exact::int::primes_up_to;
use crate::exact::modp::degree_pattern;
use crate::exact::quadfactor::factor_over_quadratic;
use crate::exact::resultant::discriminant;
use crate::exact::IPoly;
use crate::{Error, Result};

/// Cycle type as a partition, parts in descending order.
pub type CycleType = Vec<usize>;

pub const MIN_SAMPLES: usize = 200;

#[derive(Clone, Debug, PartialEq)]
pub struct Hypothesis {
    pub name: String,
    pub order: u128,
    /// Fraction of the distinct observed cycle types that occur in the group.
    pub realizability: f64,
    /// Σ (O − E)²/E over the group's cycle types; infinite if an observed
    /// type is impossible.
    pub chi_square: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CycleTypeStats {
    pub poly: IPoly,
    pub sampled_primes: Vec<u64>,
    pub type_counts: BTreeMap<CycleType, usize>,
    pub order_hypotheses: Vec<Hypothesis>,
}

impl CycleTypeStats {
    pub fn samples(&self) -> usize {
        self.type_counts.values().sum()
    }

    pub fn frequency(&self, t: &[usize]) -> f64 {
        *self.type_counts.get(t).unwrap_or(&0) as f64 / self.samples().max(1) as f64
    }
}

impl fmt::Display for CycleTypeStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.samples();
        writeln!(f, "pattern\tcount\tfrequency")?;
        for (t, c) in &self.type_counts {
            let pat: Vec<String> = t.iter().map(usize::to_string).collect();
            writeln!(f, "({})\t{c}\t{:.4}", pat.join(","), *c as f64 / n as f64)?;
        }
        if !self.order_hypotheses.is_empty() {
            writeln!(f, "group\torder\trealizability\tchi_square")?;
            for h in &self.order_hypotheses {
                writeln!(f, "{}\t{}\t{:.4}\t{:.3}", h.name, h.order, h.realizability, h.chi_square)?;
            }
        }
        Ok(())
    }
}

/// Degree patterns of f modulo the first `num_primes` primes not dividing
/// lc(f)·disc(f).
pub fn cycle_type_sample(f: &IPoly, num_primes: usize) -> Result<CycleTypeStats> {
    let bad = &discriminant(f) * &f.lead();
    if bad.is_zero() {
        return Err(Error::BadInput("polynomial is not squarefree".into()));
    }
    let mut limit = 1000u64;
    loop {
        let mut sampled = Vec::new();
        let mut counts = BTreeMap::new();
        for p in primes_up_to(limit) {
            if sampled.len() == num_primes {
                break;
            }
            if (&bad % BigInt::from(p)).is_zero() {
                continue;
            }
            let pat =
                degree_pattern(f, p).ok_or_else(|| Error::InvariantViolation(format!("not squarefree mod {p}")))?;
            *counts.entry(pat).or_insert(0) += 1;
            sampled.push(p);
        }
        if sampled.len() == num_primes {
            return Ok(CycleTypeStats {
                poly: f.clone(),
                sampled_primes: sampled,
                type_counts: counts,
                order_hypotheses: Vec::new(),
            });
        }
        limit *= 4;
    }
}

/// True iff f splits over ℚ(√d) into two conjugate factors of half degree.
pub fn quadratic_subfield_test(f: &IPoly, d: u64) -> Result<bool> {
    let n = f.degree().unwrap_or(0);
    let fac = factor_over_quadratic(f, d)?;
    Ok(n.is_multiple_of(2) && fac.degrees() == vec![n / 2, n / 2] && fac.conjugation_permutes())
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            rec(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// 1/z_λ: the proportion of S_n with cycle type λ.
fn class_fraction(lambda: &[usize]) -> f64 {
    let mut z = 1f64;
    let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
    for &k in lambda {
        *mult.entry(k).or_insert(0) += 1;
    }
    for (k, m) in mult {
        z *= (k as f64).powi(m as i32) * factorial(m) as f64;
    }
    1.0 / z
}

type Distribution = BTreeMap<CycleType, f64>;

fn add(dist: &mut Distribution, mut t: CycleType, w: f64) {
    t.sort_unstable_by(|a, b| b.cmp(a));
    *dist.entry(t).or_insert(0.0) += w;
}

fn symmetric(n: usize) -> Distribution {
    let mut d = Distribution::new();
    for l in partitions(n) {
        let w = class_fraction(&l);
        add(&mut d, l, w);
    }
    d
}

fn alternating(n: usize) -> Distribution {
    let mut d = Distribution::new();
    for l in partitions(n) {
        if (n - l.len()).is_multiple_of(2) {
            let w = 2.0 * class_fraction(&l);
            add(&mut d, l, w);
        }
    }
    d
}

/// C₂ ≀ S_m on m blocks of size 2: each k-cycle of the block permutation
/// becomes two k-cycles or one 2k-cycle with equal probability.
fn hyperoctahedral(m: usize) -> Distribution {
    let mut d = Distribution::new();
    for mu in partitions(m) {
        let w = class_fraction(&mu);
        let c = mu.len();
        for mask in 0u32..(1 << c) {
            let mut t = Vec::new();
            for (i, &k) in mu.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    t.push(2 * k);
                } else {
                    t.extend([k, k]);
                }
            }
            add(&mut d, t, w / f64::from(1u32 << c));
        }
    }
    d
}

/// S_m × C₂ acting on m blocks of size 2, the swap applied to every block.
fn diagonal_product(m: usize) -> Distribution {
    let mut d = Distribution::new();
    for mu in partitions(m) {
        let w = class_fraction(&mu) / 2.0;
        add(&mut d, mu.iter().flat_map(|&k| [k, k]).collect(), w);
        add(&mut d, mu.iter().flat_map(|&k| if k % 2 == 1 { vec![2 * k] } else { vec![k, k] }).collect(), w);
    }
    d
}

/// S_m ≀ C₂ on two blocks of size m.
fn two_block_wreath(m: usize) -> Distribution {
    let mut d = Distribution::new();
    let parts = partitions(m);
    for a in &parts {
        for b in &parts {
            let w = class_fraction(a) * class_fraction(b) / 2.0;
            add(&mut d, a.iter().chain(b).copied().collect(), w);
        }
    }
    for mu in &parts {
        add(&mut d, mu.iter().map(|k| 2 * k).collect(), class_fraction(mu) / 2.0);
    }
    d
}

fn score(name: String, order: u128, dist: &Distribution, stats: &CycleTypeStats) -> Hypothesis {
    let n = stats.samples() as f64;
    let observed = stats.type_counts.keys().count();
    let realizable = stats.type_counts.keys().filter(|t| dist.get(*t).is_some_and(|&p| p > 0.0)).count();
    let chi_square = if realizable < observed {
        f64::INFINITY
    } else {
        dist.iter()
            .map(|(t, &p)| {
                let e = n * p;
                let o = *stats.type_counts.get(t).unwrap_or(&0) as f64;
                (o - e).powi(2) / e
            })
            .sum()
    };
    Hypothesis { name, order, realizability: realizable as f64 / observed.max(1) as f64, chi_square }
}

/// Candidate orders 2·m!, 2·(m!)² and 2^m·m! for n = 2m.
pub fn candidate_orders(n: usize) -> Option<[u128; 3]> {
    n.is_multiple_of(2).then(|| {
        let m = n / 2;
        [2 * factorial(m), 2 * factorial(m) * factorial(m), (1u128 << m) * factorial(m)]
    })
}

/// Exact cycle-type distributions of each candidate group.
pub fn candidate_distributions(n: usize) -> Vec<(String, u128, Distribution)> {
    let mut out = Vec::new();
    if n.is_multiple_of(2) && n >= 4 {
        let m = n / 2;
        let [o1, o2, o3] = candidate_orders(n).expect("even degree");
        out.push((format!("S{m} x C2 (diagonal)"), o1, diagonal_product(m)));
        out.push((format!("S{m} wr C2"), o2, two_block_wreath(m)));
        out.push((format!("C2 wr S{m}"), o3, hyperoctahedral(m)));
    }
    out.push((format!("S{n}"), factorial(n), symmetric(n)));
    out.push((format!("A{n}"), factorial(n) / 2, alternating(n)));
    out
}

pub fn order_hypothesis_scores(stats: &CycleTypeStats) -> Result<Vec<Hypothesis>> {
    let have = stats.samples();
    if have < MIN_SAMPLES {
        return Err(Error::InsufficientSamples { needed: MIN_SAMPLES, have });
    }
    let n = stats.poly.degree().unwrap_or(0);
    Ok(candidate_distributions(n).into_iter().map(|(name, order, d)| score(name, order, &d, stats)).collect())
}

/// Sample and score in one step.
pub fn probe(f: &IPoly, num_primes: usize) -> Result<CycleTypeStats> {
    let mut stats = cycle_type_sample(f, num_primes)?;
    stats.order_hypotheses = order_hypothesis_scores(&stats)?;
    Ok(stats)
}

/// gcd of the observed pattern lengths' lcm with n, a cheap transitivity hint.
pub fn max_cycle_lcm(stats: &CycleTypeStats) -> u64 {
    stats.type_counts.keys().map(|t| t.iter().fold(1u64, |l, &k| l.lcm(&(k as u64)))).max().unwrap_or(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn total(d: &Distribution) -> f64 {
        d.values().sum()
    }

    #[test]
    fn distributions_are_probability_measures() {
        for m in 2..=7 {
            for (name, _, d) in candidate_distributions(2 * m) {
                assert!((total(&d) - 1.0).abs() < 1e-12, "{name}");
            }
        }
    }

    /// Brute-force enumeration of C₂ ≀ S₃ on 6 points.
    #[test]
    fn hyperoctahedral_matches_enumeration() {
        let m = 3;
        let mut counts: BTreeMap<CycleType, usize> = BTreeMap::new();
        let perms = permutations(m);
        for sigma in &perms {
            for signs in 0u32..8 {
                let img = |p: usize| {
                    let (i, b) = (p / 2, p % 2);
                    2 * sigma[i] + (b ^ (signs >> i & 1) as usize)
                };
                let mut t = cycle_type(2 * m, img);
                t.sort_unstable_by(|a, b| b.cmp(a));
                *counts.entry(t).or_insert(0) += 1;
            }
        }
        let d = hyperoctahedral(m);
        for (t, c) in counts {
            assert!((d[&t] - c as f64 / 48.0).abs() < 1e-12);
        }
    }

    fn permutations(m: usize) -> Vec<Vec<usize>> {
        if m == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(m - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, m - 1);
                out.push(q);
            }
        }
        out
    }

    fn cycle_type(n: usize, f: impl Fn(usize) -> usize) -> CycleType {
        let mut seen = vec![false; n];
        let mut t = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut k = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = f(x);
                k += 1;
            }
            t.push(k);
        }
        t
    }

    #[test]
    fn quadratic_control() {
        let f = IPoly::from_i64(&[1, 0, -37]);
        let s = cycle_type_sample(&f, 500).unwrap();
        assert!((s.frequency(&[1, 1]) - 0.5).abs() < 0.1);
        assert!((s.frequency(&[2]) - 0.5).abs() < 0.1);
        assert!(quadratic_subfield_test(&f, 37).unwrap());
    }

    #[test]
    fn quartic_of_37() {
        let f = IPoly::from_i64(&[1, -23, 44, 2, -3]);
        assert!(quadratic_subfield_test(&f, 37).unwrap());
        assert!(!quadratic_subfield_test(&f, 5).unwrap());
        let s = probe(&f, 500).unwrap();
        let wreath = s.order_hypotheses.iter().find(|h| h.order == 8).unwrap();
        assert_eq!(wreath.realizability, 1.0);
        let sym = s.order_hypotheses.iter().find(|h| h.name == "S4").unwrap();
        assert_eq!(sym.realizability, 1.0);
        // Complete splitting has density 1/|G| = 1/8.
        assert!((s.frequency(&[1, 1, 1, 1]) * 8.0 - 1.0).abs() < 0.5);
    }

    /// A splitting over ℚ(√N) into two conjugate halves puts the roots in two
    /// blocks of size n/2, so every Frobenius type lies in S_{n/2} ≀ C₂. The
    /// n/2 blocks of size 2 of C₂ ≀ S_{n/2} are not forced and do fail here.
    #[test]
    fn p53_block_structure() {
        let f = IPoly::from_i64(&[1, -20, 95, -156, 145, -174, -44]);
        assert!(quadratic_subfield_test(&f, 53).unwrap());
        let s = probe(&f, 500).unwrap();
        let by_name = |n: &str| s.order_hypotheses.iter().find(|h| h.name == n).unwrap().clone();
        assert_eq!(by_name("S3 wr C2").realizability, 1.0);
        assert_eq!(by_name("S3 wr C2").order, 72);
        assert!(by_name("C2 wr S3").realizability < 1.0);
        assert_eq!(by_name("S6").realizability, 1.0);
        assert!(!s.type_counts.contains_key(&vec![1; 6]) || s.frequency(&[1; 6]) < 0.05);
    }

    #[test]
    fn too_few_samples() {
        let s = cycle_type_sample(&IPoly::from_i64(&[1, 0, -2]), 50).unwrap();
        assert!(matches!(order_hypothesis_scores(&s), Err(Error::InsufficientSamples { .. })));
    }

    proptest! {
        #[test]
        fn counts_sum_to_samples(c in -20i64..20, k in 100usize..220) {
            let f = IPoly::from_i64(&[1, 0, 1, c, 3]);
            prop_assume!(!discriminant(&f).is_zero());
            let s = cycle_type_sample(&f, k).unwrap();
            prop_assert_eq!(s.samples(), k);
            prop_assert_eq!(s.sampled_primes.len(), k);
            for p in &s.sampled_primes {
                prop_assert!(!(&discriminant(&f) % BigInt::from(*p)).is_zero());
            }
        }
    }
}
