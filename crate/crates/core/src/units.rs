//! The Ogg–Ligozat units as exact q-series, Ramanujan's theta quotients, and
//! numeric checks of the transformation law and Heegner vanishing.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{bernoulli_exponent, check_level, real_quadratic_data, t_valence, QuadraticCharacter};
use crate::error::{Error, Result};
use crate::exact::int::{gcd_u64, is_prime};
use crate::exact::quad::rat_to_f64;
use crate::exact::series::binomial_power_product;
use crate::exact::{Coeff, CycloElem, LaurentSeries, QuadElem, Rat};

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnitKind {
    FChi,
    FChiBreve,
    GChi,
    GChiBreve,
    HChi,
    T,
}

impl UnitKind {
    pub fn name(&self) -> &'static str {
        match self {
            UnitKind::FChi => "f_chi",
            UnitKind::FChiBreve => "f_chi_breve",
            UnitKind::GChi => "g_chi",
            UnitKind::GChiBreve => "g_chi_breve",
            UnitKind::HChi => "h_chi",
            UnitKind::T => "t",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [UnitKind::FChi, UnitKind::FChiBreve, UnitKind::GChi, UnitKind::GChiBreve, UnitKind::HChi, UnitKind::T]
            .into_iter()
            .find(|k| k.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SeriesData {
    Int(LaurentSeries<BigInt>),
    Rat(LaurentSeries<Rat>),
    Quad(LaurentSeries<QuadElem>),
}

impl SeriesData {
    pub fn valuation(&self) -> i64 {
        match self {
            SeriesData::Int(s) => s.valuation(),
            SeriesData::Rat(s) => s.valuation(),
            SeriesData::Quad(s) => s.valuation(),
        }
    }

    pub fn precision(&self) -> i64 {
        match self {
            SeriesData::Int(s) => s.precision(),
            SeriesData::Rat(s) => s.precision(),
            SeriesData::Quad(s) => s.precision(),
        }
    }

    /// Coefficients of q^valuation .. q^(precision−1) as complex numbers.
    pub fn complex_coeffs(&self) -> Vec<Complex64> {
        match self {
            SeriesData::Int(s) => {
                s.coeffs().iter().map(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0)).collect()
            }
            SeriesData::Rat(s) => s.coeffs().iter().map(|c| Complex64::new(rat_to_f64(c), 0.0)).collect(),
            SeriesData::Quad(s) => s.coeffs().iter().map(|c| Complex64::new(c.to_f64(), 0.0)).collect(),
        }
    }

    pub fn render(&self) -> String {
        match self {
            SeriesData::Int(s) => s.to_string(),
            SeriesData::Rat(s) => s.to_string(),
            SeriesData::Quad(s) => s.to_string(),
        }
    }

    /// Bare coefficient list from q^valuation.
    pub fn render_coeffs(&self) -> String {
        let parts: Vec<String> = match self {
            SeriesData::Int(s) => s.coeffs().iter().map(|c| c.to_string()).collect(),
            SeriesData::Rat(s) => s.coeffs().iter().map(crate::exact::fmt_rat).collect(),
            SeriesData::Quad(s) => s.coeffs().iter().map(|c| c.to_string()).collect(),
        };
        format!("[{}]", parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct UnitSeries {
    pub level: u64,
    pub kind: UnitKind,
    pub series: SeriesData,
}

/// Ψ(X) = ∏_{r=1}^{N−1} (1 − Xζ^r)^{χ(r)}, computed in ℚ(ζ_N)[[X]] and
/// coerced into ℚ(√N).
pub fn psi_series(n: u64, precision: i64) -> Result<LaurentSeries<QuadElem>> {
    check_level(n)?;
    if precision < 2 {
        return Err(Error::PrecisionTooLow { needed: 2, have: precision });
    }
    let chi = QuadraticCharacter::new(n)?;
    let len = precision as usize;
    let zero = CycloElem::zero(n);
    let mut c = vec![zero.clone(); len];
    c[0] = zero.one_like();
    for r in 1..n as i64 {
        if chi.chi(r) == 1 {
            // multiply by (1 − ζ^r X)
            for k in (1..len).rev() {
                let t = c[k - 1].mul_zeta_pow(r);
                c[k] = c[k].minus(&t);
            }
        }
    }
    for r in 1..n as i64 {
        if chi.chi(r) == -1 {
            // divide by (1 − ζ^r X)
            for k in 1..len {
                let t = c[k - 1].mul_zeta_pow(r);
                c[k] = c[k].plus(&t);
            }
        }
    }
    let q = c.iter().enumerate().map(|(k, v)| v.coerce_to_quadratic(k)).collect::<Result<Vec<_>>>()?;
    Ok(LaurentSeries::new(0, q, precision, QuadElem::from_int(n, 0)))
}

/// ∏_{n≥1} Ψ(q^n) to the given precision.
pub fn psi_product(n: u64, precision: i64) -> Result<LaurentSeries<QuadElem>> {
    let psi = psi_series(n, precision.max(2))?;
    let mut acc = LaurentSeries::constant(QuadElem::from_int(n, 1), precision);
    for m in 1..precision.max(1) {
        let term = psi.truncate(precision / m + 1).substitute_power(m).truncate(precision);
        acc = &acc * &term;
    }
    Ok(acc.truncate(precision))
}

/// λ = u^{sign·h(N)}.
pub fn unit_lambda(n: u64, sign: i32) -> Result<QuadElem> {
    let data = real_quadratic_data(n)?;
    let u = if sign >= 0 { data.fundamental_unit.clone() } else { data.fundamental_unit.try_inverse().unwrap() };
    Ok(u.pow_u(data.class_number))
}

/// f_χ = λ ∏_{n≥1} Ψ(q^n) with λ = u^{sign·h(N)}, as the fifth power at N = 5.
pub fn f_chi_series(n: u64, precision: i64, unit_sign: i32) -> Result<UnitSeries> {
    check_level(n)?;
    let lambda = unit_lambda(n, unit_sign)?;
    let s = psi_product(n, precision)?.scale(&lambda);
    let s = if n == 5 { s.pow(5)? } else { s };
    Ok(UnitSeries { level: n, kind: UnitKind::FChi, series: SeriesData::Quad(s) })
}

/// The integer exponent of f̆_χ: v_χ, or 5·v_χ = 1 at N = 5.
pub fn breve_valuation(n: u64) -> Result<i64> {
    let v = bernoulli_exponent(n)?;
    let v = if n == 5 { v * Rat::from_integer(BigInt::from(5)) } else { v };
    assert!(v.is_integer(), "v_chi is integral for N > 5");
    Ok(v.to_integer().to_i64().unwrap())
}

/// f̆_χ = q^{v_χ} ∏ (1 − q^n)^{χ(n)}, as the fifth power at N = 5.
pub fn f_chi_breve_series(n: u64, precision: i64) -> Result<UnitSeries> {
    let chi = QuadraticCharacter::new(n)?;
    let v = breve_valuation(n)?;
    let power = if n == 5 { 5 } else { 1 };
    let rel = precision - v;
    let exps: Vec<(u64, i64)> = (1..rel.max(1) as u64).map(|m| (m, power * chi.chi(m as i64))).collect();
    let s = binomial_power_product(&exps, rel).shift(v);
    Ok(UnitSeries { level: n, kind: UnitKind::FChiBreve, series: SeriesData::Int(s) })
}

/// t = q^{−v_N} ∏_{N∤n} (1 − q^n)^{24/m}, m = gcd(N − 1, 12).
pub fn t_series(n: u64, precision: i64) -> Result<UnitSeries> {
    if !is_prime(n) {
        return Err(Error::BadLevel(n));
    }
    let m = gcd_u64(n - 1, 12);
    let e = (24 / m) as i64;
    let v = t_valence(n) as i64;
    let rel = precision + v;
    let exps: Vec<(u64, i64)> = (1..rel.max(1) as u64).filter(|k| k % n != 0).map(|k| (k, e)).collect();
    let s = binomial_power_product(&exps, rel).shift(-v);
    Ok(UnitSeries { level: n, kind: UnitKind::T, series: SeriesData::Int(s) })
}

/// s − 1/s.
fn minus_inverse<D: Coeff>(s: &LaurentSeries<D>) -> Result<LaurentSeries<D>> {
    Ok(s - &s.inverse()?)
}

/// Replaces each coefficient by its rational value, failing if any has an
/// irrational part.
pub fn descend(s: &LaurentSeries<QuadElem>) -> Result<LaurentSeries<Rat>> {
    s.try_map(Rat::zero(), |k, c| c.to_rat().ok_or(Error::RationalityFailure(k)))
}

pub fn int_to_rat(s: &LaurentSeries<BigInt>) -> LaurentSeries<Rat> {
    s.map(Rat::zero(), |c| Rat::from_integer(c.clone()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct DerivedUnits {
    pub level: u64,
    pub unit_sign: i32,
    pub g_chi: Option<LaurentSeries<Rat>>,
    pub g_chi_breve: LaurentSeries<Rat>,
    pub h_chi: Option<LaurentSeries<Rat>>,
}

/// g_χ = f_χ − 1/f_χ, ğ_χ = f̆_χ − 1/f̆_χ and h_χ = g_χ + ğ_χ, each exact
/// through q^(precision − 1). The unit sign is resolved numerically.
pub fn derived_units(n: u64, precision: i64) -> Result<DerivedUnits> {
    let v = breve_valuation(n)?;
    let breve = match f_chi_breve_series(n, precision + 2 * v)?.series {
        SeriesData::Int(s) => s,
        _ => unreachable!(),
    };
    let g_breve = int_to_rat(&minus_inverse(&breve)?).truncate(precision);
    let sign = resolve_unit_sign(n)?;
    derived_units_with_sign(n, precision, sign, g_breve)
}

pub fn derived_units_with_sign(n: u64, precision: i64, sign: i32, g_breve: LaurentSeries<Rat>) -> Result<DerivedUnits> {
    let f = match f_chi_series(n, precision, sign)?.series {
        SeriesData::Quad(s) => s,
        _ => unreachable!(),
    };
    let g = minus_inverse(&f)?;
    let h = &g + &g_breve.map(QuadElem::from_int(n, 0), |c| QuadElem::from_rat(n, c.clone()));
    let h = descend(&h)?;
    let g = descend(&g)?;
    Ok(DerivedUnits { level: n, unit_sign: sign, g_chi: Some(g), g_chi_breve: g_breve, h_chi: Some(h) })
}

// ---------------------------------------------------------------------------
// Numerics

fn q_of(tau: Complex64) -> Complex64 {
    (Complex64::i() * TWO_PI * tau).exp()
}

/// Number of product factors until |q|^k drops below 1e−18.
fn terms_for(tau: Complex64) -> usize {
    let aq = (-TWO_PI * tau.im).exp();
    ((-18.0 * std::f64::consts::LN_10) / aq.ln()).ceil() as usize + 2
}

/// log ∏_{n≥1} Ψ(q^n) evaluated directly from the infinite product.
pub fn log_psi_product_numeric(n: u64, tau: Complex64) -> Complex64 {
    let chi = QuadraticCharacter::new(n).expect("valid level");
    let q = q_of(tau);
    let zetas: Vec<(Complex64, i64)> =
        (1..n as i64).map(|r| (Complex64::from_polar(1.0, TWO_PI * r as f64 / n as f64), chi.chi(r))).collect();
    let mut acc = Complex64::zero();
    let mut qn = q;
    for _ in 0..terms_for(tau) {
        for &(z, c) in &zetas {
            acc += (Complex64::one() - qn * z).ln() * c as f64;
        }
        qn *= q;
    }
    acc
}

/// f_χ(τ) = λ ∏ Ψ(q^n) from the product (fifth power at N = 5).
pub fn f_chi_numeric(n: u64, sign: i32, tau: Complex64) -> Result<Complex64> {
    let lambda = unit_lambda(n, sign)?.to_f64();
    let power = if n == 5 { 5.0 } else { 1.0 };
    Ok((log_psi_product_numeric(n, tau) * power).exp() * lambda.powf(power))
}

/// f̆_χ(τ) = q^{v_χ} ∏ (1 − q^n)^{χ(n)} from the product (fifth power at N = 5).
pub fn f_chi_breve_numeric(n: u64, tau: Complex64) -> Result<Complex64> {
    let chi = QuadraticCharacter::new(n)?;
    let v = breve_valuation(n)? as f64;
    let power = if n == 5 { 5.0 } else { 1.0 };
    let q = q_of(tau);
    let mut acc = Complex64::i() * TWO_PI * tau * v;
    let mut qn = q;
    for m in 1..=terms_for(tau) {
        acc += (Complex64::one() - qn).ln() * (power * chi.chi(m as i64) as f64);
        qn *= q;
    }
    Ok(acc.exp())
}

/// t(τ) from the eta product.
pub fn t_numeric(n: u64, tau: Complex64) -> Complex64 {
    let m = gcd_u64(n - 1, 12);
    let e = (24 / m) as f64;
    let v = t_valence(n) as f64;
    let q = q_of(tau);
    let mut acc = -Complex64::i() * TWO_PI * tau * v;
    let mut qk = q;
    for k in 1..=terms_for(tau) {
        if !(k as u64).is_multiple_of(n) {
            acc += (Complex64::one() - qk).ln() * e;
        }
        qk *= q;
    }
    acc.exp()
}

/// The sign s with f_χ = u^{s·h(N)} ∏ Ψ(q^n), read off at the fixed point
/// τ₀ = i/√N of the Fricke involution, where f_χ(τ₀) = f̆_χ(τ₀).
pub fn resolve_unit_sign(n: u64) -> Result<i32> {
    check_level(n)?;
    let tau0 = Complex64::new(0.0, 1.0 / (n as f64).sqrt());
    let target = f_chi_breve_numeric(n, tau0)?;
    let mut best = (f64::INFINITY, 0);
    for sign in [1, -1] {
        let val = f_chi_numeric(n, sign, tau0)?;
        let rel = ((val - target) / target).norm();
        if rel < best.0 {
            best = (rel, sign);
        }
    }
    if best.0 > 1e-8 {
        return Err(Error::VerificationFailed(format!(
            "neither unit sign matches f_chi_breve at i/sqrt({n}) (relative error {:.3e})",
            best.0
        )));
    }
    Ok(best.1)
}

/// Sums the series at q = e^{2πiτ}; returns the value and a tail estimate.
pub fn eval_numeric(s: &UnitSeries, tau: Complex64) -> Result<(Complex64, f64)> {
    const MIN_IM: f64 = 0.15;
    const MIN_TERMS: i64 = 3000;
    if tau.im < MIN_IM {
        return Err(Error::LowImaginaryPart(tau.im, MIN_IM));
    }
    let rel = s.series.precision() - s.series.valuation();
    if rel < MIN_TERMS {
        return Err(Error::PrecisionTooLow { needed: MIN_TERMS, have: rel });
    }
    let q = q_of(tau);
    let coeffs = s.series.complex_coeffs();
    let mut acc = Complex64::zero();
    for c in coeffs.iter().rev() {
        acc = acc * q + c;
    }
    acc *= q.powf(s.series.valuation() as f64);
    let aq = q.norm();
    let recent = coeffs.iter().rev().take(20).map(|c| c.norm()).fold(0.0, f64::max);
    let tail = recent * aq.powf(s.series.precision() as f64) / (1.0 - aq);
    Ok((acc, tail))
}

/// An integer matrix [[a, b], [c, d]].
pub type Matrix2 = [[i64; 2]; 2];

pub fn act(m: &Matrix2, tau: Complex64) -> Complex64 {
    let [[a, b], [c, d]] = *m;
    (tau * a as f64 + b as f64) / (tau * c as f64 + d as f64)
}

/// Smallest imaginary part at which the product evaluation is used.
pub const PRODUCT_MIN_IM: f64 = 1e-3;

/// |f_χ(μτ) − χ(δ) f_χ(τ)^{χ(δ)}| from product evaluations of f_χ.
pub fn verify_transformation_law(n: u64, mu: &Matrix2, tau: Complex64) -> Result<f64> {
    let [[a, b], [c, d]] = *mu;
    if a * d - b * c != 1 || c.rem_euclid(n as i64) != 0 {
        return Err(Error::NotInGamma0(n));
    }
    let image = act(mu, tau);
    for im in [tau.im, image.im] {
        if im < PRODUCT_MIN_IM {
            return Err(Error::LowImaginaryPart(im, PRODUCT_MIN_IM));
        }
    }
    let sign = resolve_unit_sign(n)?;
    let chi = QuadraticCharacter::new(n)?.chi(d);
    let lhs = f_chi_numeric(n, sign, image)?;
    let base = f_chi_numeric(n, sign, tau)?;
    let rhs = if chi == 1 { base } else { -base.inv() };
    Ok((lhs - rhs).norm())
}

/// Pseudo-random pairs (μ, τ) with μ ∈ Γ₀(N) and τ placed near the cusp
/// μ⁻¹∞ = −d/c so that Im τ and Im μτ are both comparable to 1/|c|.
pub fn random_gamma0_pairs(n: u64, count: usize, seed: u64) -> Vec<(Matrix2, Complex64)> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let c = n as i64;
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        let d: i64 = rng.gen_range(-40..=40);
        if d == 0 || gcd_u64(d.unsigned_abs(), n) != 1 {
            continue;
        }
        let (g, x, y) = ext_gcd(d, c);
        debug_assert_eq!(g.abs(), 1);
        // a·d − b·c = 1
        let (a, b) = (x * g, -y * g);
        let j: i64 = rng.gen_range(-3..=3);
        let m = [[sign * (a + j * c), sign * (b + j * d)], [sign * c, sign * d]];
        let s: f64 = rng.gen_range(0.7..1.4);
        let shift: f64 = rng.gen_range(-0.2..0.2);
        let tau = Complex64::new(-(d as f64) / c as f64 + shift / c as f64, 1.0 / (c as f64 * s));
        out.push((m, tau));
    }
    out
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Smallest ρ > 0 with ρ² ≡ −1 (mod N).
pub fn sqrt_minus_one(n: u64) -> Option<u64> {
    (1..n).find(|r| (r * r + 1) % n == 0)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HeegnerResidual {
    pub rho: u64,
    pub tau: Complex64,
    pub h_chi: f64,
    pub breve_square_plus_one: f64,
}

impl HeegnerResidual {
    pub fn max(&self) -> f64 {
        self.h_chi.max(self.breve_square_plus_one)
    }
}

/// Evaluates h_χ and f̆_χ² + 1 at τ = (−ρ + i)/(ρ² + 1), the fixed point of
/// [[ρ, 1], [−(ρ² + 1), −ρ]].
pub fn verify_heegner_vanishing(n: u64) -> Result<HeegnerResidual> {
    check_level(n)?;
    if n % 8 != 5 {
        return Err(Error::BadCongruenceClass(n));
    }
    let rho = sqrt_minus_one(n).expect("−1 is a square mod N");
    let r = rho as f64;
    let tau = Complex64::new(-r, 1.0) / (r * r + 1.0);
    let sign = resolve_unit_sign(n)?;
    let f = f_chi_numeric(n, sign, tau)?;
    let fb = f_chi_breve_numeric(n, tau)?;
    let h = (f - f.inv()) + (fb - fb.inv());
    Ok(HeegnerResidual { rho, tau, h_chi: h.norm(), breve_square_plus_one: (fb * fb + 1.0).norm() })
}

// ---------------------------------------------------------------------------
// Ramanujan's theta quotients at N = 13

/// f(−q^i, −q^j) for i + j = 13, as a series in q.
fn theta_13(i: u64, j: u64, precision: i64) -> LaurentSeries<BigInt> {
    let mut exps = Vec::new();
    let mut k = 0u64;
    loop {
        let e1 = i * (k + 1) + j * k;
        let e2 = i * k + j * (k + 1);
        let e3 = 13 * (k + 1);
        if e1.min(e2) as i64 >= precision {
            break;
        }
        exps.extend([(e1, 1), (e2, 1), (e3, 1)]);
        k += 1;
    }
    binomial_power_product(&exps, precision)
}

/// q^{num/13} · f(−q^a,−q^{13−a}) / f(−q^b,−q^{13−b}) as a series in s = q^{1/13}.
fn mu(num: i64, a: u64, b: u64, precision: i64) -> Result<LaurentSeries<BigInt>> {
    let quot = theta_13(a, 13 - a, precision).div(&theta_13(b, 13 - b, precision))?;
    Ok(quot.substitute_power(13).shift(num))
}

#[derive(Clone, Debug, PartialEq)]
pub struct RamanujanReport {
    pub terms: i64,
    /// μ₂μ₃μ₄ = f̆_χ and μ₁μ₅μ₆ = 1/f̆_χ.
    pub literal_identities: bool,
    /// μ₂μ₃μ₄ = 1/f̆_χ and μ₁μ₅μ₆ = f̆_χ.
    pub swapped_identities: bool,
    pub reciprocal_pair: bool,
    /// t + 3 = μ₂μ₃μ₄ − μ₁μ₅μ₆.
    pub berndt_entry: bool,
    pub valuation_234: i64,
    pub valuation_156: i64,
}

/// Builds μ₂μ₃μ₄ and μ₁μ₅μ₆ in q^{1/13} and compares them with f̆_χ at N = 13.
pub fn ramanujan_theta_quotient_check(precision: i64) -> Result<RamanujanReport> {
    if precision < 20 {
        return Err(Error::PrecisionTooLow { needed: 20, have: precision });
    }
    let p = precision + 4;
    let m1 = mu(-7, 4, 2, p)?;
    let m2 = mu(-6, 6, 3, p)?;
    let m3 = mu(-5, 2, 1, p)?;
    let m4 = mu(-2, 5, 4, p)?;
    let m5 = mu(5, 3, 5, p)?;
    let m6 = mu(15, 1, 6, p)?;
    let a = &(&m2 * &m3) * &m4;
    let b = &(&m1 * &m5) * &m6;
    let cut = 13 * precision;
    let to_s = |s: &LaurentSeries<BigInt>| s.substitute_power(13).truncate(cut);
    let fb = match f_chi_breve_series(13, p)?.series {
        SeriesData::Int(s) => s,
        _ => unreachable!(),
    };
    let fb_s = to_s(&fb);
    let inv_s = to_s(&fb.inverse()?);
    let t_s = to_s(&match t_series(13, p)?.series {
        SeriesData::Int(s) => s,
        _ => unreachable!(),
    });
    let a = a.truncate(cut);
    let b = b.truncate(cut);
    let eq = |x: &LaurentSeries<BigInt>, y: &LaurentSeries<BigInt>| {
        let pr = x.precision().min(y.precision());
        x.truncate(pr) == y.truncate(pr)
    };
    let three = LaurentSeries::constant(BigInt::from(3), cut);
    let one = LaurentSeries::constant(BigInt::one(), cut);
    Ok(RamanujanReport {
        terms: precision,
        literal_identities: eq(&a, &fb_s) && eq(&b, &inv_s),
        swapped_identities: eq(&a, &inv_s) && eq(&b, &fb_s),
        reciprocal_pair: eq(&(&a * &b), &one),
        berndt_entry: eq(&(&t_s + &three), &(&a - &b)),
        valuation_234: a.valuation(),
        valuation_156: b.valuation(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    fn q(n: u64, a: i64, b: i64) -> QuadElem {
        QuadElem::new(n, rat_int(a), rat_int(b))
    }

    /// exp(−√N Σ χ(m) X^m / m) by the power-series exponential recurrence.
    fn psi_by_exponential(n: u64, precision: i64) -> LaurentSeries<QuadElem> {
        let chi = QuadraticCharacter::new(n).unwrap();
        let len = precision as usize;
        // X·L'(X) coefficients: c_m = −√N χ(m).
        let c: Vec<QuadElem> = (0..len).map(|m| QuadElem::new(n, Rat::zero(), rat_int(-chi.chi(m as i64)))).collect();
        let mut e = vec![QuadElem::from_int(n, 0); len];
        e[0] = QuadElem::from_int(n, 1);
        for k in 1..len {
            let mut acc = QuadElem::from_int(n, 0);
            for m in 1..=k {
                acc = acc.plus(&c[m].times(&e[k - m]));
            }
            e[k] = acc.times(&QuadElem::from_rat(n, rat(1, k as i64)));
        }
        LaurentSeries::new(0, e, precision, QuadElem::from_int(n, 0))
    }

    #[test]
    fn psi_leading_coefficients() {
        for n in [5u64, 13, 17, 29, 37] {
            let psi = psi_series(n, 8).unwrap();
            assert_eq!(psi.coeff(0), QuadElem::from_int(n, 1));
            assert_eq!(psi.coeff(1), q(n, 0, -1));
            assert_eq!(psi, psi_by_exponential(n, 8), "N = {n}");
        }
    }

    #[test]
    fn psi_second_coefficient_numeric() {
        let psi = psi_series(5, 4).unwrap();
        let chi = QuadraticCharacter::new(5).unwrap();
        // Coefficient of X² from the four linear factors in floating point.
        let mut poly = [Complex64::one(), Complex64::zero(), Complex64::zero()];
        for r in 1..5 {
            let z = Complex64::from_polar(1.0, TWO_PI * r as f64 / 5.0);
            if chi.chi(r) == 1 {
                for k in (1..3).rev() {
                    poly[k] -= poly[k - 1] * z;
                }
            } else {
                for k in 1..3 {
                    poly[k] += poly[k - 1] * z;
                }
            }
        }
        assert!((poly[2].re - psi.coeff(2).to_f64()).abs() < 1e-9);
        assert!(poly[2].im.abs() < 1e-9);
    }

    /// f_χ/λ from q·f'/f = −√N Σ_k (Σ_{m|k} χ(m) k/m) q^k.
    fn psi_product_by_log_derivative(n: u64, precision: i64) -> LaurentSeries<QuadElem> {
        let chi = QuadraticCharacter::new(n).unwrap();
        let len = precision as usize;
        let c: Vec<QuadElem> = (0..len as i64)
            .map(|k| {
                let s: i64 =
                    if k == 0 { 0 } else { (1..=k).filter(|m| k % m == 0).map(|m| chi.chi(m) * (k / m)).sum() };
                QuadElem::new(n, Rat::zero(), rat_int(-s))
            })
            .collect();
        let mut a = vec![QuadElem::from_int(n, 0); len];
        a[0] = QuadElem::from_int(n, 1);
        for k in 1..len {
            let mut acc = QuadElem::from_int(n, 0);
            for j in 1..=k {
                acc = acc.plus(&c[j].times(&a[k - j]));
            }
            a[k] = acc.times(&QuadElem::from_rat(n, rat(1, k as i64)));
        }
        LaurentSeries::new(0, a, precision, QuadElem::from_int(n, 0))
    }

    #[test]
    fn psi_product_matches_log_derivative() {
        for n in [13u64, 37] {
            assert_eq!(psi_product(n, 30).unwrap(), psi_product_by_log_derivative(n, 30));
        }
    }

    #[test]
    fn f_chi_shape() {
        let s = f_chi_series(37, 10, -1).unwrap();
        let SeriesData::Quad(f) = s.series else { panic!() };
        let lambda = f.coeff(0);
        assert_eq!(num_traits::Signed::abs(&lambda.trace()), rat_int(12));
        assert_eq!(f.coeff(1), lambda.times(&q(37, 0, -1)));
        let SeriesData::Quad(f5) = f_chi_series(5, 10, 1).unwrap().series else { panic!() };
        // Fifth power at N = 5: λ⁵ = u⁵ and the q-coefficient is −5√5·u⁵.
        let u5 = QuadElem::new(5, rat(11, 2), rat(5, 2));
        assert_eq!(f5.coeff(0), u5);
        assert_eq!(f5.coeff(1), u5.times(&q(5, 0, -5)));
    }

    fn brute_breve(n: u64, precision: usize) -> Vec<BigInt> {
        let chi = QuadraticCharacter::new(n).unwrap();
        // Expand each (1 − q^m)^{±1} as a full polynomial/series product.
        let mut c = vec![BigInt::zero(); precision];
        c[0] = BigInt::one();
        for m in 1..precision {
            let mut factor = vec![BigInt::zero(); precision];
            match chi.chi(m as i64) {
                1 => {
                    factor[0] = BigInt::one();
                    factor[m] = BigInt::from(-1);
                }
                -1 => {
                    for k in (0..precision).step_by(m) {
                        factor[k] = BigInt::one();
                    }
                }
                _ => factor[0] = BigInt::one(),
            }
            let mut next = vec![BigInt::zero(); precision];
            for i in 0..precision {
                for j in 0..precision - i {
                    next[i + j] += &c[i] * &factor[j];
                }
            }
            c = next;
        }
        c
    }

    #[test]
    fn breve_matches_brute_force() {
        let SeriesData::Int(s) = f_chi_breve_series(13, 21).unwrap().series else { panic!() };
        assert_eq!(s.valuation(), 1);
        assert_eq!(s.coeffs().to_vec(), brute_breve(13, 20));
        let SeriesData::Int(s) = f_chi_breve_series(37, 30).unwrap().series else { panic!() };
        assert_eq!(s.valuation(), 5);
        let SeriesData::Int(s) = f_chi_breve_series(5, 30).unwrap().series else { panic!() };
        assert_eq!(s.valuation(), 1);
    }

    #[test]
    fn t_series_shapes() {
        let SeriesData::Int(t) = t_series(5, 10).unwrap().series else { panic!() };
        assert_eq!(t.valuation(), -1);
        assert_eq!(&t.coeffs()[..3], &[BigInt::from(1), BigInt::from(-6), BigInt::from(9)]);
        let SeriesData::Int(t) = t_series(13, 10).unwrap().series else { panic!() };
        assert_eq!(t.valuation(), -1);
        assert_eq!(t.coeff(0), BigInt::from(-2));
        let SeriesData::Int(t) = t_series(109, 10).unwrap().series else { panic!() };
        assert_eq!(t.valuation(), -9);
    }

    #[test]
    fn valence_one_identities() {
        for (n, c) in [(5u64, 11i64), (13, 3)] {
            let d = derived_units(n, 60).unwrap();
            let SeriesData::Int(t) = t_series(n, 60).unwrap().series else { panic!() };
            let sum = &d.g_chi_breve + &int_to_rat(&t);
            assert_eq!(sum, LaurentSeries::constant(rat_int(-c), 60), "N = {n}");
        }
    }

    #[test]
    fn h_chi_37_principal_part() {
        let d = derived_units(37, 12).unwrap();
        assert_eq!(d.unit_sign, -1);
        let h = d.h_chi.unwrap();
        let pp: Vec<(i64, Rat)> = h.principal_part();
        let expected: Vec<(i64, Rat)> =
            vec![(-5, rat_int(-1)), (-4, rat_int(-1)), (-2, rat_int(-1)), (-1, rat_int(-2)), (0, rat_int(-12))];
        assert_eq!(pp, expected);
    }

    #[test]
    fn numeric_evaluations() {
        let tau = Complex64::new(0.0, 1.0);
        let SeriesData::Int(t) = t_series(5, 3100).unwrap().series else { panic!() };
        let ts = UnitSeries { level: 5, kind: UnitKind::T, series: SeriesData::Int(t) };
        let (v, tail) = eval_numeric(&ts, tau).unwrap();
        assert!((v - t_numeric(5, tau)).norm() < 1e-9 * v.norm().max(1.0));
        assert!(tail < 1e-9);
        let fb = f_chi_breve_numeric(13, tau).unwrap();
        assert!(fb.re > 0.0 && fb.im.abs() < 1e-12);
        let one = UnitSeries {
            level: 5,
            kind: UnitKind::T,
            series: SeriesData::Int(LaurentSeries::constant(BigInt::one(), 3000)),
        };
        assert!((eval_numeric(&one, tau).unwrap().0 - 1.0).norm() < 1e-15);
        assert!(matches!(eval_numeric(&one, Complex64::new(0.0, 0.1)), Err(Error::LowImaginaryPart(..))));
    }

    #[test]
    fn transformation_law_examples() {
        let tau = Complex64::new(0.1, 0.5);
        assert!(verify_transformation_law(13, &[[1, 0], [0, 1]], tau).unwrap() < 1e-9);
        assert!(verify_transformation_law(13, &[[1, 1], [0, 1]], tau).unwrap() < 1e-9);
        assert!(verify_transformation_law(13, &[[1, 0], [13, 1]], Complex64::new(0.0, 0.5)).unwrap() < 1e-6);
        assert_eq!(verify_transformation_law(13, &[[1, 0], [2, 1]], tau), Err(Error::NotInGamma0(13)));
    }

    #[test]
    fn random_pairs_are_admissible() {
        for n in [13u64, 17, 29] {
            for (m, tau) in random_gamma0_pairs(n, 20, 7) {
                let [[a, b], [c, d]] = m;
                assert_eq!(a * d - b * c, 1);
                assert_eq!(c % n as i64, 0);
                assert!(tau.im >= PRODUCT_MIN_IM && act(&m, tau).im >= PRODUCT_MIN_IM);
            }
        }
    }

    #[test]
    fn heegner_points() {
        let r = verify_heegner_vanishing(37).unwrap();
        assert_eq!(r.rho, 6);
        assert!(r.max() < 1e-6, "{r:?}");
        assert_eq!(verify_heegner_vanishing(17), Err(Error::BadCongruenceClass(17)));
    }

    #[test]
    fn theta_quotients() {
        let r = ramanujan_theta_quotient_check(20).unwrap();
        assert!(r.reciprocal_pair);
        assert_eq!(r.valuation_234, -13);
        assert!(r.swapped_identities);
        assert!(!r.literal_identities);
        assert!(r.berndt_entry);
    }
}
