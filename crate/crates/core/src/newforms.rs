//! Weight-2 newforms of prime level: point counts on elliptic curves and an
//! Eichler–Selberg trace-formula backend for the whole cusp space.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{genus_x0, genus_x0_plus, jacobi};
use crate::exact::factor::factor_over_q;
use crate::exact::int::{gcd_u64, is_prime, is_squarefree, isqrt, primes_up_to};
use crate::exact::{rat_int, Coeff, IPoly, LaurentSeries, Matrix, QuadElem, RPoly, Rat};
use crate::param::{CurveModel, Weierstrass};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    Rational,
    Quadratic(u64),
}

/// A normalized Hecke eigenform; `coeffs[n - 1]` is a_n.
#[derive(Clone, Debug, PartialEq)]
pub struct Newform {
    pub level: u64,
    pub field: Field,
    pub coeffs: Vec<QuadElem>,
    pub a_n_level: i64,
}

impl Newform {
    pub fn a(&self, n: usize) -> &QuadElem {
        &self.coeffs[n - 1]
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn rational_coeffs(&self) -> Option<Vec<Rat>> {
        self.coeffs.iter().map(QuadElem::to_rat).collect()
    }

    pub fn conj(&self) -> Newform {
        Newform { coeffs: self.coeffs.iter().map(QuadElem::conj).collect(), ..self.clone() }
    }

    /// Σ a_n qⁿ with precision one past the last known coefficient.
    pub fn q_series(&self) -> LaurentSeries<QuadElem> {
        let zero = self.coeffs[0].zero_like();
        LaurentSeries::new(1, self.coeffs.clone(), self.len() as i64 + 1, zero)
    }

    /// Fricke eigenvalue, −a_N.
    pub fn fricke_sign(&self) -> i64 {
        -self.a_n_level
    }

    /// Re-checks normalization, multiplicativity, the prime-power recurrences
    /// and the Hasse bound under every real embedding.
    pub fn check(&self) -> Result<()> {
        let b = self.len();
        let one = self.coeffs[0].one_like();
        let fail = |what: String| Err(Error::VerificationFailed(format!("level {}: {what}", self.level)));
        if self.coeffs[0] != one {
            return fail("a_1 != 1".into());
        }
        for m in 2..=b {
            for n in 2..=b / m {
                if gcd_u64(m as u64, n as u64) == 1 && *self.a(m * n) != self.a(m).times(self.a(n)) {
                    return fail(format!("a_{} != a_{m} a_{n}", m * n));
                }
            }
        }
        for p in primes_up_to(b as u64) {
            let p = p as usize;
            let mut pk = p;
            while pk * p <= b {
                let expected = if p as u64 == self.level {
                    self.a(pk).times(self.a(p))
                } else {
                    let prev = if pk == p { one.clone() } else { self.a(pk / p).clone() };
                    self.a(pk).times(self.a(p)).minus(&prev.scale_i64(p as i64))
                };
                if *self.a(pk * p) != expected {
                    return fail(format!("recurrence fails at {}", pk * p));
                }
                pk *= p;
            }
            let ap = self.a(p);
            let bound = 2.0 * (p as f64).sqrt() + 1e-9;
            if ap.to_f64().abs() > bound || ap.conj().to_f64().abs() > bound {
                return fail(format!("Hasse bound fails at {p}"));
            }
        }
        if b >= self.level as usize && *self.a(self.level as usize) != one.scale_i64(self.a_n_level) {
            return fail("a_N disagrees with the recorded sign".into());
        }
        Ok(())
    }
}

fn legendre(a: i64, p: u64) -> i64 {
    jacobi(a, p as i64).expect("odd prime")
}

/// #E(𝔽_p) including the point at infinity, singular points included.
fn count_points(w: &Weierstrass, p: u64) -> u64 {
    let [a1, a2, a3, a4, a6] = w.a.map(|v| v.rem_euclid(p as i64) as u64);
    let mut count = 1;
    if p == 2 {
        for x in 0..2u64 {
            for y in 0..2u64 {
                let lhs = (y * y + a1 * x * y + a3 * y) % 2;
                let rhs = (x * x * x + a2 * x * x + a4 * x + a6) % 2;
                count += u64::from(lhs == rhs);
            }
        }
        return count;
    }
    for x in 0..p {
        let rhs = ((x * x % p * x) % p + a2 * x % p * x + a4 * x + a6) % p;
        let lin = (a1 * x + a3) % p;
        let disc = (lin * lin + 4 * rhs) % p;
        count += (1 + legendre(disc as i64, p)) as u64;
    }
    count
}

pub fn ap_by_point_count(model: &CurveModel, p: u64) -> Result<i64> {
    let w = model.weierstrass().ok_or_else(|| Error::BadInput("point counts need an elliptic model".into()))?;
    if !is_prime(p) || p > 10_000 {
        return Err(Error::BadPrime(p));
    }
    if w.discriminant() % p as i128 == 0 {
        return Err(Error::BadReduction(p));
    }
    Ok(p as i64 + 1 - count_points(w, p) as i64)
}

/// a_N at the level: +1 split, −1 non-split multiplicative reduction.
pub fn an_multiplicative(model: &CurveModel) -> Result<i64> {
    let w = model.weierstrass().ok_or_else(|| Error::BadInput("a_N needs an elliptic model".into()))?;
    let n = model.level;
    if w.discriminant() % n as i128 != 0 || w.c4() % n as i128 == 0 {
        return Err(Error::NotMultiplicative(n));
    }
    let a = n as i64 + 1 - count_points(w, n) as i64;
    debug_assert!(a == 1 || a == -1);
    Ok(a)
}

/// Fills a_1..a_B from the values at primes.
fn hecke_extend(level: u64, b: usize, ap: &HashMap<u64, i64>) -> Vec<BigInt> {
    let mut a = vec![BigInt::zero(); b + 1];
    a[1] = BigInt::one();
    for n in 2..=b {
        let p = crate::exact::int::factorize(n as u64)[0].0;
        let mut m = n;
        let mut k = 0;
        while m % p as usize == 0 {
            m /= p as usize;
            k += 1;
        }
        let pk = n / m;
        a[n] = if m > 1 {
            &a[pk] * &a[m]
        } else {
            let app = BigInt::from(ap[&p]);
            if k == 1 {
                app
            } else if p == level {
                &app * &a[pk / p as usize]
            } else {
                &app * &a[pk / p as usize] - BigInt::from(p) * &a[pk / (p * p) as usize]
            }
        };
    }
    a.remove(0);
    a
}

pub fn expand_newform(model: &CurveModel, b: usize) -> Result<Newform> {
    if b < 2 {
        return Err(Error::BadInput("need at least two coefficients".into()));
    }
    let level = model.level;
    let mut ap = HashMap::new();
    for p in primes_up_to(b as u64) {
        let v = if p == level { an_multiplicative(model)? } else { ap_by_point_count(model, p)? };
        ap.insert(p, v);
    }
    let a_n_level = an_multiplicative(model)?;
    let coeffs = hecke_extend(level, b, &ap).into_iter().map(|v| QuadElem::from_rat(0, Rat::from_integer(v))).collect();
    Ok(Newform { level, field: Field::Rational, coeffs, a_n_level })
}

/// Tr T(n) on S₂(Γ₀(N)); `traces[n - 1]` is the trace of T(n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceTable {
    pub level: u64,
    pub traces: Vec<i64>,
}

impl TraceTable {
    pub fn tr(&self, n: usize) -> i64 {
        self.traces[n - 1]
    }

    pub fn dimension(&self) -> usize {
        self.traces[0] as usize
    }
}

/// 6·H(m) for 0 < m ≤ max, by enumerating reduced forms.
fn hurwitz_table(max: usize) -> Vec<i64> {
    let mut h = vec![0i64; max + 1];
    let max = max as i64;
    let mut b = 0i64;
    while 3 * b * b <= max {
        let mut a = b.max(1);
        while 4 * a * a - b * b <= max {
            let mut c = a;
            while 4 * a * c - b * b <= max {
                let m = (4 * a * c - b * b) as usize;
                let w = if a == b && b == c {
                    2
                } else if b == 0 && a == c {
                    3
                } else {
                    6
                };
                h[m] += if b == 0 || b == a || a == c { w } else { 2 * w };
                c += 1;
            }
            a += 1;
        }
        b += 1;
    }
    h
}

pub fn trace_table(level: u64, b: usize) -> Result<TraceTable> {
    if !is_prime(level) {
        return Err(Error::BadLevel(level));
    }
    let n_ = level as i64;
    let h6 = hurwitz_table(4 * b);
    // Root counts of x² − tx + n mod N with N ∤ x, indexed by (t mod N, n mod N).
    let nn = level as usize;
    let mut roots = vec![0i64; nn * nn];
    for t in 0..nn {
        for n in 0..nn {
            roots[t * nn + n] = (1..nn).filter(|&x| (x * x + n + nn * nn - t * x % nn).is_multiple_of(nn)).count() as i64;
        }
    }
    let mut traces = Vec::with_capacity(b);
    for n in 1..=b as i64 {
        // Everything is scaled by 12.
        let mut tr12 = 0i64;
        let r = isqrt(n as u64) as i64;
        if r * r == n && r % n_ != 0 {
            tr12 += n_ + 1;
        }
        let mut a2 = 0i64; // in units of H/6
        let mut t = 0i64;
        while t * t < 4 * n {
            for ts in if t == 0 { vec![0] } else { vec![t, -t] } {
                let m = (4 * n - ts * ts) as usize;
                let mu1 = roots[(ts.rem_euclid(n_) as usize) * nn + (n.rem_euclid(n_) as usize)];
                a2 += mu1 * h6[m];
                if m as i64 % (n_ * n_) == 0 {
                    let nsq = n_ * n_;
                    let mu_n = (n_ + 1) * (1..n_).filter(|&x| (x * x - ts * x + n).rem_euclid(nsq) == 0).count() as i64;
                    a2 += (mu_n - mu1) * h6[m / (nsq as usize)];
                }
            }
            t += 1;
        }
        tr12 -= a2; // −½ · (H/6) · 12
        let mut a3 = 0i64;
        let mut a4 = 0i64;
        for d in 1..=n {
            if n % d != 0 {
                continue;
            }
            let e = n / d;
            a3 += d.min(e) * (i64::from(e % n_ != 0) + i64::from(d % n_ != 0));
            if gcd_u64(level, e as u64) == 1 {
                a4 += d;
            }
        }
        tr12 += -6 * a3 + 12 * a4;
        if tr12 % 12 != 0 {
            return Err(Error::InvariantViolation(format!("non-integral trace of T({n}) at level {level}")));
        }
        traces.push(tr12 / 12);
    }
    if traces.first() != Some(&(genus_x0(level) as i64)) && b > 0 {
        return Err(Error::InvariantViolation(format!("Tr T(1) != genus at level {level}")));
    }
    Ok(TraceTable { level, traces })
}

/// The span of g_i = Σ Tr(T(i)T(n)) qⁿ, grown as coefficients are requested.
struct Eichler {
    level: u64,
    table: TraceTable,
    basis: Vec<u64>,
}

impl Eichler {
    fn new(level: u64) -> Result<Self> {
        let dim = genus_x0(level) as usize;
        let sturm = (level as usize + 1) / 6 + 1;
        let cols = sturm + dim + 4;
        let mut e = Eichler { level, table: trace_table(level, 64)?, basis: Vec::new() };
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        let mut i = 1u64;
        while e.basis.len() < dim {
            if i as usize > 4 * dim + 40 {
                return Err(Error::DimensionMismatch { expected: dim, found: e.basis.len() });
            }
            e.ensure(i as usize * cols)?;
            let row: Vec<Rat> = (1..=cols as u64).map(|n| rat_int(e.coef(i, n))).collect();
            rows.push(row);
            if Matrix::from_rows(rows.clone(), Rat::zero()).rank() == rows.len() {
                e.basis.push(i);
            } else {
                rows.pop();
            }
            i += 1;
        }
        Ok(e)
    }

    fn ensure(&mut self, n: usize) -> Result<()> {
        if self.table.traces.len() < n {
            self.table = trace_table(self.level, n.next_power_of_two())?;
        }
        Ok(())
    }

    fn coef(&self, i: u64, n: u64) -> i64 {
        let g = gcd_u64(i, n);
        (1..=g)
            .filter(|d| g.is_multiple_of(*d) && d % self.level != 0)
            .map(|d| d as i64 * self.table.tr((i * n / (d * d)) as usize))
            .sum()
    }

    fn max_index(&self) -> usize {
        *self.basis.last().unwrap_or(&1) as usize
    }

    /// Coefficients 1..=len of Σ c_j g_{basis_j}.
    fn combine<D: Coeff>(&mut self, c: &[D], len: usize) -> Result<Vec<D>> {
        self.ensure(self.max_index() * len)?;
        let zero = c[0].zero_like();
        Ok((1..=len as u64)
            .map(|n| {
                c.iter().zip(&self.basis).fold(zero.clone(), |acc, (cj, &i)| acc.plus(&cj.scale_i64(self.coef(i, n))))
            })
            .collect())
    }

    /// Matrix of T(p) acting on the basis rows: T(p) g_i = Σ_j M_ij g_j.
    fn hecke_matrix(&mut self, p: u64) -> Result<Matrix<Rat>> {
        let dim = self.basis.len();
        let cols = (self.level as usize + 1) / 6 + dim + 4;
        self.ensure(self.max_index() * cols * p as usize)?;
        let g = Matrix::from_rows(
            self.basis.iter().map(|&i| (1..=cols as u64).map(|n| rat_int(self.coef(i, n))).collect()).collect(),
            Rat::zero(),
        );
        let tg = Matrix::from_rows(
            self.basis
                .iter()
                .map(|&i| {
                    (1..=cols as u64)
                        .map(|n| {
                            let mut v = self.coef(i, p * n);
                            if p != self.level && n % p == 0 {
                                v += p as i64 * self.coef(i, n / p);
                            }
                            rat_int(v)
                        })
                        .collect()
                })
                .collect(),
            Rat::zero(),
        );
        let (_, pivots) = g.rref();
        let pick = |m: &Matrix<Rat>| {
            Matrix::from_rows(
                (0..dim).map(|r| pivots.iter().map(|&c| m.get(r, c).clone()).collect()).collect(),
                Rat::zero(),
            )
        };
        let a_inv = pick(&g).inverse().ok_or_else(|| Error::InvariantViolation("Eichler basis is singular".into()))?;
        let m = pick(&tg).mul(&a_inv);
        if m.mul(&g) != tg {
            return Err(Error::InvariantViolation(format!("T({p}) does not preserve the Eichler span")));
        }
        Ok(m)
    }
}

fn to_rpoly(p: &IPoly) -> RPoly {
    p.to_rpoly()
}

fn eval_at_matrix(p: &RPoly, m: &Matrix<Rat>) -> Matrix<Rat> {
    let n = m.rows;
    p.coeffs()
        .iter()
        .rev()
        .fold(Matrix::new(n, n, Rat::zero()), |acc, c| m.mul(&acc).add(&Matrix::identity(n, Rat::zero()).scale(c)))
}

/// A Galois orbit of eigenforms: its ℚ-rational span and minimal polynomial.
pub struct Orbit {
    pub min_poly: IPoly,
    pub splitting_prime: u64,
    pub a_n_level: i64,
    span: Vec<Vec<Rat>>,
}

impl Orbit {
    pub fn degree(&self) -> usize {
        self.span.len()
    }
}

/// Splits S₂(Γ₀(N)) into Galois orbits using T(2), T(3) or T(5).
pub fn hecke_orbits(level: u64) -> Result<(Vec<Orbit>, EichlerHandle)> {
    let mut e = Eichler::new(level)?;
    let dim = e.basis.len();
    for p in [2u64, 3, 5] {
        if p == level {
            continue;
        }
        let m = e.hecke_matrix(p)?;
        let cp = IPoly::from_rpoly(&m.charpoly());
        let fac = factor_over_q(&cp);
        if fac.factors.iter().any(|(_, mult)| *mult > 1) {
            continue;
        }
        let mt = m.transpose();
        let mut orbits = Vec::new();
        for (phi, _) in fac.factors {
            let span = eval_at_matrix(&to_rpoly(&phi), &mt).kernel();
            if span.len() != phi.degree().unwrap_or(0) {
                return Err(Error::InvariantViolation(format!("eigenspace of {phi} has the wrong dimension")));
            }
            let a_n_level = orbit_fricke(&mut e, &span[0])?;
            orbits.push(Orbit { min_poly: phi, splitting_prime: p, a_n_level, span });
        }
        return Ok((orbits, EichlerHandle(e)));
    }
    Err(Error::DimensionMismatch { expected: dim, found: 0 })
}

/// Opaque access to the Eichler span behind a set of orbits.
pub struct EichlerHandle(Eichler);

/// T(N) is the scalar a_N on an orbit, so a_{N n₀}(h) = a_N·a_{n₀}(h) for
/// any rational h in its span.
fn orbit_fricke(e: &mut Eichler, w: &[Rat]) -> Result<i64> {
    let probe = e.combine(w, 8)?;
    let n0 = probe.iter().position(|v| !v.is_zero()).ok_or_else(|| Error::InvariantViolation("zero form".into()))? + 1;
    let far = e.combine(w, e.level as usize * n0)?;
    let ratio = &far[e.level as usize * n0 - 1] / &probe[n0 - 1];
    match ratio.to_integer().to_i64() {
        Some(s) if ratio.is_integer() && s.abs() == 1 => Ok(s),
        _ => Err(Error::InvariantViolation(format!("a_N = {ratio} is not ±1"))),
    }
}

fn squarefree_split(disc: &BigInt) -> (BigInt, u64) {
    let mut m = disc.to_u64().expect("small discriminant");
    let mut s = BigInt::one();
    let mut p = 2u64;
    while p * p <= m {
        while m.is_multiple_of(p * p) {
            m /= p * p;
            s *= p;
        }
        p += 1;
    }
    debug_assert!(is_squarefree(m));
    (s, m)
}

/// Eigenforms in one orbit, the +√d member first.
pub fn split_orbit(orbit: &Orbit, handle: &mut EichlerHandle, b: usize) -> Result<Vec<Newform>> {
    let e = &mut handle.0;
    let level = e.level;
    let normalize = |v: Vec<QuadElem>, field| -> Result<Newform> {
        let inv = v[0].try_inverse().ok_or_else(|| Error::InvariantViolation("a_1 = 0".into()))?;
        Ok(Newform { level, field, coeffs: v.iter().map(|x| x.times(&inv)).collect(), a_n_level: orbit.a_n_level })
    };
    match orbit.degree() {
        1 => {
            let c: Vec<QuadElem> = orbit.span[0].iter().map(|r| QuadElem::from_rat(0, r.clone())).collect();
            Ok(vec![normalize(e.combine(&c, b)?, Field::Rational)?])
        }
        2 => {
            let p = orbit.splitting_prime;
            let len = b.max(4 * p as usize + 8);
            let h: Vec<Vec<Rat>> = orbit.span.iter().map(|w| e.combine(w, len * p as usize)).collect::<Result<_>>()?;
            let tp = |f: &[Rat], n: usize| {
                let mut v = f[p as usize * n - 1].clone();
                if p != level && n.is_multiple_of(p as usize) {
                    v += rat_int(p as i64) * &f[n / p as usize - 1];
                }
                v
            };
            let hm = Matrix::from_rows(h.iter().map(|f| f[..len].to_vec()).collect(), Rat::zero());
            let (_, piv) = hm.rref();
            let base = Matrix::from_rows(
                (0..2).map(|r| piv.iter().map(|&c| hm.get(r, c).clone()).collect()).collect(),
                Rat::zero(),
            );
            let img = Matrix::from_rows(
                (0..2).map(|r| piv.iter().map(|&c| tp(&h[r], c + 1)).collect()).collect(),
                Rat::zero(),
            );
            let a = img.mul(&base.inverse().expect("independent span"));
            let phi = &orbit.min_poly;
            let (c0, c1, c2) = (phi.coeff(0), phi.coeff(1), phi.coeff(2));
            let disc = &c1 * &c1 - BigInt::from(4) * &c0 * &c2;
            let (s, d) = squarefree_split(&disc);
            let denom = Rat::from_integer(BigInt::from(2) * &c2);
            let lambda = QuadElem::new(d, Rat::from_integer(-c1) / &denom, Rat::from_integer(s) / &denom);
            let q = |r: &Rat| QuadElem::from_rat(d, r.clone());
            let (a11, a12, a21, a22) = (q(a.get(0, 0)), q(a.get(0, 1)), q(a.get(1, 0)), q(a.get(1, 1)));
            let c = if !a21.is_zero_c() { vec![a21, lambda.minus(&a11)] } else { vec![lambda.minus(&a22), a12] };
            let hq: Vec<Vec<QuadElem>> = h.iter().map(|f| f[..b].iter().map(q).collect()).collect();
            let v: Vec<QuadElem> = (0..b).map(|n| c[0].times(&hq[0][n]).plus(&c[1].times(&hq[1][n]))).collect();
            let f = normalize(v, Field::Quadratic(d))?;
            let g = f.conj();
            Ok(vec![f, g])
        }
        k => Err(Error::FieldDegreeTooHigh(k)),
    }
}

fn sort_forms(forms: &mut [Newform]) {
    let key = |f: &Newform| {
        let deg = if f.field == Field::Rational { 1 } else { 2 };
        (deg, f.a_n_level, f.coeffs.get(1).map_or(0.0, QuadElem::to_f64))
    };
    forms.sort_by(|x, y| key(x).partial_cmp(&key(y)).expect("finite"));
}

/// All newforms of level N from the trace formula.
pub fn eigenforms_from_traces(table: &TraceTable, b: usize) -> Result<Vec<Newform>> {
    let (orbits, mut handle) = hecke_orbits(table.level)?;
    handle.0.ensure(table.traces.len())?;
    if handle.0.table.traces[..table.traces.len()] != table.traces[..] {
        return Err(Error::InvariantViolation("trace table disagrees with the recomputed one".into()));
    }
    let mut forms = Vec::new();
    for o in &orbits {
        forms.extend(split_orbit(o, &mut handle, b)?);
    }
    sort_forms(&mut forms);
    Ok(forms)
}

/// The newforms with a_N = −1, which descend to X_0^+(N).
pub fn plus_space_basis(level: u64, b: usize) -> Result<Vec<Newform>> {
    if level % 4 != 1 || !is_prime(level) {
        return Err(Error::BadCongruenceClass(level));
    }
    let (orbits, mut handle) = hecke_orbits(level)?;
    let mut forms = Vec::new();
    for o in orbits.iter().filter(|o| o.a_n_level == -1) {
        forms.extend(split_orbit(o, &mut handle, b)?);
    }
    let expected = genus_x0_plus(level) as usize;
    if forms.len() != expected {
        return Err(Error::DimensionMismatch { expected, found: forms.len() });
    }
    sort_forms(&mut forms);
    Ok(forms)
}

/// Default coefficient count: four times the largest pole order plus guard terms.
pub fn default_length(max_pole: usize) -> usize {
    4 * max_pole + 16
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::param::Quotient;

    fn curve(level: u64, a: [i64; 5]) -> CurveModel {
        CurveModel::elliptic("t", level, Quotient::X0, a).unwrap()
    }

    fn ints(f: &Newform) -> Vec<i64> {
        f.coeffs.iter().map(|c| c.to_rat().unwrap().to_integer().to_i64().unwrap()).collect()
    }

    #[test]
    fn brute_force_counts() {
        let w = Weierstrass::new(1, -1, 1, -1, -14);
        for p in [3u64, 5, 7, 11, 13] {
            let brute = 1
                + (0..p as i64)
                    .flat_map(|x| (0..p as i64).map(move |y| (x, y)))
                    .filter(|&(x, y)| (y * y + x * y + y - x * x * x + x * x + x + 14).rem_euclid(p as i64) == 0)
                    .count() as u64;
            assert_eq!(count_points(&w, p), brute);
        }
    }

    #[test]
    fn a37_list() {
        let f = expand_newform(&curve(37, [0, 0, 1, -1, 0]), 10).unwrap();
        assert_eq!(ints(&f), vec![1, -2, -3, 2, -2, 6, -1, 0, 6, 4]);
        assert_eq!(f.a_n_level, -1);
        assert_eq!(an_multiplicative(&curve(37, [0, 1, 1, -23, -50])).unwrap(), 1);
        assert!(matches!(ap_by_point_count(&curve(37, [0, 0, 1, -1, 0]), 37), Err(Error::BadReduction(37))));
    }

    #[test]
    fn traces_match_point_counts() {
        for (level, a) in [(11u64, [0, -1, 1, -10, -20]), (17, [1, -1, 1, -1, -14]), (19, [0, 1, 1, -9, -15])] {
            let b = 300;
            let f = expand_newform(&curve(level, a), b).unwrap();
            let t = trace_table(level, b).unwrap();
            assert_eq!(t.traces, ints(&f), "level {level}");
        }
    }

    #[test]
    fn trace_of_identity_is_genus() {
        for n in primes_up_to(101).into_iter().filter(|&p| p >= 11) {
            assert_eq!(trace_table(n, 1).unwrap().tr(1), genus_x0(n) as i64);
        }
    }

    #[test]
    fn level_37_two_rational_forms() {
        let t = trace_table(37, 60).unwrap();
        let forms = eigenforms_from_traces(&t, 60).unwrap();
        assert_eq!(forms.len(), 2);
        assert_eq!(forms[0].a_n_level, -1);
        assert_eq!(forms[1].a_n_level, 1);
        let a = expand_newform(&curve(37, [0, 0, 1, -1, 0]), 60).unwrap();
        let b = expand_newform(&curve(37, [0, 1, 1, -23, -50]), 60).unwrap();
        assert_eq!(forms[0].coeffs, a.coeffs);
        assert_eq!(forms[1].coeffs, b.coeffs);
        for n in 1..=60 {
            let s = forms[0].a(n).plus(forms[1].a(n));
            assert_eq!(s, QuadElem::from_int(0, t.tr(n)));
        }
    }

    #[test]
    fn level_29_conjugate_pair() {
        let forms = eigenforms_from_traces(&trace_table(29, 50).unwrap(), 50).unwrap();
        assert_eq!(forms.len(), 2);
        assert_eq!(forms[0].field, Field::Quadratic(2));
        assert_eq!(forms[1], forms[0].conj());
        let sum: Vec<QuadElem> = (1..=50).map(|n| forms[0].a(n).plus(forms[1].a(n))).collect();
        assert!(sum.iter().all(QuadElem::is_rational));
        for f in &forms {
            assert_eq!(f.a_n_level, 1);
            f.check().unwrap();
        }
    }

    #[test]
    fn plus_space_counts() {
        for level in [37u64, 53, 61, 73, 89, 101] {
            let forms = plus_space_basis(level, 40).unwrap();
            assert_eq!(forms.len(), genus_x0_plus(level) as usize, "level {level}");
            for f in &forms {
                assert_eq!(f.a_n_level, -1);
                f.check().unwrap();
            }
        }
        assert!(matches!(plus_space_basis(43, 10), Err(Error::BadCongruenceClass(43))));
    }

    #[test]
    fn registry_curves_are_plus_forms() {
        for m in crate::param::builtin_registry().iter().filter(|m| m.quotient == Quotient::X0Plus) {
            let f = expand_newform(m, 60).unwrap();
            let plus = plus_space_basis(m.level, 60).unwrap();
            assert_eq!(f.a_n_level, -1);
            assert_eq!(plus[0].coeffs, f.coeffs, "{}", m.label);
        }
    }
}
