//! q-expansions of curve coordinates.

use num_traits::Zero;

use crate::exact::{rat_int, Coeff, IPoly, LaurentSeries, Matrix, QuadElem, Rat};
use crate::newforms::{Field, Newform};
use crate::{Error, Result};

use super::model::{CurveModel, Quotient, Shape, Weierstrass};

pub type RSeries = LaurentSeries<Rat>;

/// How a pair of eigenforms is turned into hyperelliptic coordinates
/// X = c(F₂ + F₁)/(F₂ − F₁), Y = 2c·q·dX/dq / (F₁ − F₂).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// F₁ = the form with a_N = −1, F₂ = the form with a_N = +1, c = 1.
    AtkinLehnerPair,
    /// F₁ = the member of a ℚ(√2) pair with a₂ = −1 − √2, F₂ its conjugate, c = √2.
    Sqrt2Pair,
    /// Forms in the given order, c = √d for a conjugate pair and 1
    /// otherwise, then X shifted and scaled to q⁻¹ + O(q) and Y scaled to
    /// leading coefficient ±1.
    Generic,
}

#[derive(Clone, Debug)]
pub struct CoordinateExpansion {
    pub model: Option<CurveModel>,
    pub level: u64,
    pub x: RSeries,
    pub y: RSeries,
    pub fricke_x: Option<RSeries>,
    pub fricke_y: Option<RSeries>,
    /// Manin-type scaling applied to the form (elliptic) or c (hyperelliptic).
    pub scale: QuadElem,
    /// (x₀, s, t): the stored coordinates are (X − x₀)/s and Y/t.
    pub affine: (Rat, Rat, Rat),
    pub sources: Vec<Newform>,
}

impl CoordinateExpansion {
    pub fn precision(&self) -> i64 {
        self.x.precision().min(self.y.precision())
    }

    pub fn pole_orders(&self) -> (i64, i64) {
        (-self.x.valuation(), -self.y.valuation())
    }
}

fn r(n: i64) -> Rat {
    rat_int(n)
}

/// Coefficient of q^m in the product of two offset arrays (index i ↔ q^{i + off}).
fn conv(a: &[Rat], a_off: i64, b: &[Rat], b_off: i64, m: i64) -> Rat {
    let mut s = Rat::zero();
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        let j = m - (i as i64 + a_off) - b_off;
        if j < 0 {
            break;
        }
        if let Some(bj) = b.get(j as usize) {
            s += ai * bj;
        }
    }
    s
}

/// X = c⁻²q⁻² + …, Y = −c⁻³q⁻³ + … solving q·X′ = c·f·(2Y + a₁X + a₃)
/// jointly with the Weierstraß equation.
fn solve_elliptic(w: &Weierstrass, f: &[Rat], c: i64, precision: i64) -> Result<(RSeries, RSeries)> {
    let [a1, a2, a3, a4, a6] = w.a.map(r);
    let c = r(c);
    let alpha = (&c * &c).recip();
    let beta = -(&alpha / &c);
    let af: Vec<Rat> = f.iter().map(|v| v * &c).collect();
    let fa = |j: i64| -> Rat { af.get(j as usize - 1).cloned().unwrap_or_else(Rat::zero) };
    // xs[i] ↔ x_{i−2}, ys[i] ↔ y_{i−3}
    let mut xs = vec![alpha.clone()];
    let mut ys = vec![beta.clone()];
    let mut x2 = vec![&alpha * &alpha]; // x2[i] ↔ (X²)_{i−4}
    let top = precision;
    if f.len() < (top + 3) as usize {
        return Err(Error::PrecisionTooLow { needed: top + 3, have: f.len() as i64 });
    }
    for k in -1..top {
        xs.push(Rat::zero());
        ys.push(Rat::zero());
        let xk = |i: i64, xs: &[Rat]| -> Rat {
            if i < -2 {
                Rat::zero()
            } else {
                xs.get((i + 2) as usize).cloned().unwrap_or_else(Rat::zero)
            }
        };
        let yk = |i: i64, ys: &[Rat]| -> Rat {
            if i < -3 {
                Rat::zero()
            } else {
                ys.get((i + 3) as usize).cloned().unwrap_or_else(Rat::zero)
            }
        };
        // Differential equation at q^k, without the unknown y_{k−1}.
        let mut r1 = Rat::zero();
        for j in 1..=(k + 3) {
            let aj = fa(j);
            if aj.is_zero() {
                continue;
            }
            let mut t = r(2) * yk(k - j, &ys) + &a1 * xk(k - j, &xs);
            if k == j {
                t += &a3;
            }
            r1 += aj * t;
        }
        // Weierstraß equation at q^{k−4} with x_k = y_{k−1} = 0.
        let m = k - 4;
        let x2_partial = conv(&xs, -2, &xs, -2, k - 2);
        let mut x2_full = x2.clone();
        x2_full.push(x2_partial);
        let x3 = conv(&xs, -2, &x2_full, -4, m);
        let y2 = conv(&ys, -3, &ys, -3, m);
        let xy = conv(&xs, -2, &ys, -3, m);
        let s = y2 + &a1 * xy + &a3 * yk(m, &ys)
            - x3
            - &a2 * x2_full.get((m + 4) as usize).cloned().unwrap_or_else(Rat::zero)
            - &a4 * xk(m, &xs)
            - if m == 0 { a6.clone() } else { Rat::zero() };
        // k·x − 2c·y = r1 ;  −3α²·x + 2β·y = −s
        let (m11, m12, m21, m22) = (r(k), -r(2) * &c, -r(3) * &alpha * &alpha, r(2) * &beta);
        let det = &m11 * &m22 - &m12 * &m21;
        let xval = (&r1 * &m22 - &m12 * -&s) / &det;
        let yval = (&m11 * -&s - &r1 * &m21) / &det;
        let xi = xs.len() - 1;
        xs[xi] = xval;
        let yi = ys.len() - 1;
        ys[yi] = yval;
        x2.push(conv(&xs, -2, &xs, -2, k - 2));
    }
    let zero = Rat::zero();
    let x = LaurentSeries::new(-2, xs, top, zero.clone());
    let y = LaurentSeries::new(-3, ys, top - 1, zero);
    Ok((x, y))
}

/// W(X, Y) = Y² + a₁XY + a₃Y − X³ − a₂X² − a₄X − a₆ as a series.
pub fn weierstrass_residual(w: &Weierstrass, x: &RSeries, y: &RSeries) -> RSeries {
    let [a1, a2, a3, a4, a6] = w.a.map(r);
    let x2 = x * x;
    let lhs = &(&(y * y) + &(x * y).scale(&a1)) + &y.scale(&a3);
    let p = x.precision().min(y.precision()) + 1;
    let rhs = &(&(&(&x2 * x) + &x2.scale(&a2)) + &x.scale(&a4)) + &RSeries::constant(a6, p);
    &lhs - &rhs
}

fn all_integral(s: &RSeries) -> bool {
    s.coeffs().iter().all(|c| c.is_integer())
}

/// Expansion of the coordinates of an elliptic model pulled back along the
/// modular parametrization attached to `f`.
pub fn elliptic_expansion(model: &CurveModel, f: &Newform, precision: i64) -> Result<CoordinateExpansion> {
    let w = model.weierstrass().ok_or_else(|| Error::BadInput("elliptic model required".into()))?;
    if f.level != model.level {
        return Err(Error::InconsistentModel(format!("form of level {} for curve {}", f.level, model.label)));
    }
    let coeffs = f.rational_coeffs().ok_or(Error::RationalityFailure(f.level as i64))?;
    let mut last = None;
    for c in [1i64, -1, 2, -2] {
        let (x, y) = solve_elliptic(w, &coeffs, c, precision)?;
        let res = weierstrass_residual(w, &x, &y);
        let ode = &x.q_derivative()
            - &(&f_series(&coeffs, &x)
                * &(&(&y.scale(&r(2)) + &x.scale(&r(w.a[0]))) + &RSeries::constant(r(w.a[2]), x.precision())))
                .scale(&r(c));
        if !res.is_zero() || !ode.is_zero() {
            return Err(Error::InvariantViolation("coordinate recurrence lost consistency".into()));
        }
        if all_integral(&x) && all_integral(&y) {
            return Ok(CoordinateExpansion {
                model: Some(model.clone()),
                level: model.level,
                x,
                y,
                fricke_x: None,
                fricke_y: None,
                scale: QuadElem::from_int(0, c),
                affine: (Rat::zero(), r(1), r(1)),
                sources: vec![f.clone()],
            });
        }
        last = Some(c);
    }
    Err(Error::InconsistentModel(format!(
        "{}: no Manin scaling in ±1, ±2 gives integral coordinates (last tried {})",
        model.label,
        last.unwrap_or(0)
    )))
}

fn f_series(coeffs: &[Rat], like: &RSeries) -> RSeries {
    LaurentSeries::new(1, coeffs.to_vec(), like.precision() + 8, Rat::zero())
}

fn quad_series_to_rat(s: &LaurentSeries<QuadElem>, level: u64) -> Result<RSeries> {
    s.try_map(Rat::zero(), |_, c| c.to_rat().ok_or(Error::RationalityFailure(level as i64)))
}

fn pick_pair(f1: &Newform, f2: &Newform, norm: Normalization) -> Result<(Newform, Newform, QuadElem)> {
    if f1.level != f2.level || f1.coeffs == f2.coeffs {
        return Err(Error::BadInput("need two distinct forms of one level".into()));
    }
    let conj_pair = matches!(f1.field, Field::Quadratic(_)) && f1.conj().coeffs == f2.coeffs;
    let c = match f1.field {
        Field::Quadratic(d) if conj_pair => QuadElem::sqrt_d(d),
        _ => QuadElem::from_int(0, 1),
    };
    match norm {
        Normalization::Generic => Ok((f1.clone(), f2.clone(), c)),
        Normalization::AtkinLehnerPair => {
            if f1.a_n_level == f2.a_n_level {
                return Err(Error::MissingEigenData);
            }
            let (a, b) = if f1.a_n_level == -1 { (f1, f2) } else { (f2, f1) };
            Ok((a.clone(), b.clone(), c))
        }
        Normalization::Sqrt2Pair => {
            if f1.field != Field::Quadratic(2) || !conj_pair {
                return Err(Error::BadInput("the ℚ(√2) normalization needs a conjugate pair over ℚ(√2)".into()));
            }
            let (a, b) = if f1.a(2).b() < &Rat::zero() { (f1, f2) } else { (f2, f1) };
            Ok((a.clone(), b.clone(), c))
        }
    }
}

fn hyper_coords(
    f1: &LaurentSeries<QuadElem>,
    f2: &LaurentSeries<QuadElem>,
    c: &QuadElem,
) -> Result<(LaurentSeries<QuadElem>, LaurentSeries<QuadElem>)> {
    let den = f2 - f1;
    if den.is_zero() {
        return Err(Error::DivisionByZeroSeries);
    }
    let x = (f2 + f1).div(&den)?.scale(c);
    let y = x.q_derivative().scale(&c.scale_i64(2)).div(&(-&den))?;
    Ok((x, y))
}

fn apply_affine(x: &RSeries, y: &RSeries, aff: &(Rat, Rat, Rat)) -> (RSeries, RSeries) {
    let (x0, sx, ty) = aff;
    let xs = (x - &RSeries::constant(x0.clone(), x.precision())).scale(&sx.recip());
    (xs, y.scale(&ty.recip()))
}

pub fn hyperelliptic_expansion(f1: &Newform, f2: &Newform, norm: Normalization) -> Result<CoordinateExpansion> {
    let (g1, g2, c) = pick_pair(f1, f2, norm)?;
    let level = g1.level;
    let s1 = g1.q_series();
    let s2 = g2.q_series();
    let (x, y) = hyper_coords(&s1, &s2, &c)?;
    let (x, y) = (quad_series_to_rat(&x, level)?, quad_series_to_rat(&y, level)?);
    let affine = match norm {
        Normalization::Generic => {
            let lead_x = x.leading().cloned().ok_or(Error::DivisionByZeroSeries)?;
            let lead_y = y.leading().cloned().ok_or(Error::DivisionByZeroSeries)?;
            let shift = if x.valuation() < 0 { x.coeff(0) } else { Rat::zero() };
            (shift, lead_x, num_traits::Signed::abs(&lead_y))
        }
        _ => (Rat::zero(), r(1), r(1)),
    };
    let (x, y) = apply_affine(&x, &y, &affine);
    let mut exp = CoordinateExpansion {
        model: None,
        level,
        x,
        y,
        fricke_x: None,
        fricke_y: None,
        scale: c,
        affine,
        sources: vec![g1.clone(), g2.clone()],
    };
    let (xw, yw) = fricke_transform(&exp, &[-g1.a_n_level, -g2.a_n_level])?;
    exp.fricke_x = Some(xw);
    exp.fricke_y = Some(yw);
    Ok(exp)
}

/// Images of X and Y under w_N, obtained by replacing each source form F_i
/// by λ_i F_i in the defining quotients.
pub fn fricke_transform(exp: &CoordinateExpansion, eigen_signs: &[i64]) -> Result<(RSeries, RSeries)> {
    if exp.sources.len() == 1 {
        return match (eigen_signs, exp.model.as_ref().map(|m| m.quotient)) {
            ([1], Some(Quotient::X0Plus)) => Ok((exp.x.clone(), exp.y.clone())),
            _ => Err(Error::MissingEigenData),
        };
    }
    if eigen_signs.len() != 2 || eigen_signs.iter().any(|s| s.abs() != 1) {
        return Err(Error::MissingEigenData);
    }
    let s1 = exp.sources[0].q_series();
    let s2 = exp.sources[1].q_series();
    let l1 = s1.scale(&s1.from_int(eigen_signs[0]));
    let l2 = s2.scale(&s2.from_int(eigen_signs[1]));
    let (xw, yw) = hyper_coords(&l1, &l2, &exp.scale)?;
    let (xw, yw) = (quad_series_to_rat(&xw, exp.level)?, quad_series_to_rat(&yw, exp.level)?);
    Ok(apply_affine(&xw, &yw, &exp.affine))
}

/// Y² − Σ c_k X^k.
pub fn sextic_residual(sextic: &IPoly, x: &RSeries, y: &RSeries) -> RSeries {
    let c: Vec<Rat> = sextic.coeffs().iter().map(|v| Rat::from_integer(v.clone())).collect();
    &(y * y) - &x.compose_poly(&c)
}

/// Finds Y² = Σ_{k≤6} c_k X^k from the series by exact linear algebra.
pub fn derive_hyperelliptic_model(
    x: &RSeries,
    y: &RSeries,
    label: &str,
    level: u64,
    quotient: Quotient,
) -> Result<CurveModel> {
    let powers: Vec<RSeries> = (0..=6).map(|k| x.pow(k)).collect::<Result<_>>()?;
    let y2 = y * y;
    let lo = powers.iter().map(|p| p.valuation()).chain([y2.valuation()]).min().unwrap_or(0);
    let hi = powers.iter().map(|p| p.precision()).chain([y2.precision()]).min().unwrap_or(0);
    if hi - lo < 7 + 10 {
        return Err(Error::PrecisionTooLow { needed: lo + 17, have: hi });
    }
    let rows: Vec<Vec<Rat>> = (lo..hi).map(|k| powers.iter().map(|p| p.coeff(k)).collect()).collect();
    let rhs: Vec<Rat> = (lo..hi).map(|k| y2.coeff(k)).collect();
    let m = Matrix::from_rows(rows, Rat::zero());
    let (sol, kernel) =
        m.solve(&rhs).ok_or_else(|| Error::NoRelation(format!("no sextic relation at level {level}")))?;
    if !kernel.is_empty() {
        return Err(Error::NonUniqueRelation(kernel.len()));
    }
    if sol.iter().any(|c| !c.is_integer()) {
        return Err(Error::NoRelation("sextic has non-integral coefficients".into()));
    }
    let mut desc = [0i64; 7];
    for (k, c) in sol.iter().enumerate() {
        desc[6 - k] = i64::try_from(c.to_integer()).map_err(|_| Error::NoRelation("coefficient overflow".into()))?;
    }
    let model = CurveModel::hyperelliptic(label, level, quotient, desc)
        .map_err(|e| Error::NoRelation(format!("relation is not a genus-2 model: {e}")))?;
    if !sextic_residual(&model.sextic().expect("hyperelliptic"), x, y).is_zero() {
        return Err(Error::NoRelation("sextic fails beyond the fitted range".into()));
    }
    Ok(model)
}

/// Checks the defining equation of `model` on a coordinate pair.
pub fn satisfies_model(model: &CurveModel, x: &RSeries, y: &RSeries) -> bool {
    match &model.shape {
        Shape::Elliptic(w) => weierstrass_residual(w, x, y).is_zero(),
        Shape::Hyperelliptic(_) => sextic_residual(&model.sextic().expect("sextic"), x, y).is_zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newforms::{eigenforms_from_traces, expand_newform, trace_table};
    use crate::param::{builtin_registry, find_model};

    fn ints(s: &RSeries, upto: i64) -> Vec<i64> {
        (s.valuation()..upto).map(|k| i64::try_from(s.coeff(k).to_integer()).unwrap()).collect()
    }

    fn elliptic(level: u64) -> CoordinateExpansion {
        let reg = builtin_registry();
        let m = find_model(&reg, level, true).unwrap();
        let f = expand_newform(m, 60).unwrap();
        elliptic_expansion(m, &f, 40).unwrap()
    }

    #[test]
    fn expansion_17a1() {
        let e = elliptic(17);
        assert_eq!(ints(&e.x, 1), vec![1, 1, 1]);
        assert_eq!(ints(&e.y, 1), vec![-1, -2, -2, -3]);
        assert_eq!(e.scale, QuadElem::from_int(0, 1));
    }

    #[test]
    fn expansion_37a1() {
        let e = elliptic(37);
        assert_eq!(ints(&e.x, 1), vec![1, 2, 5]);
        assert_eq!(ints(&e.y, 1), vec![-1, -3, -9, -21]);
        assert!(satisfies_model(e.model.as_ref().unwrap(), &e.x, &e.y));
        let (xw, yw) = fricke_transform(&e, &[1]).unwrap();
        assert_eq!((xw, yw), (e.x.clone(), e.y.clone()));
        assert!(matches!(fricke_transform(&e, &[]), Err(Error::MissingEigenData)));
    }

    #[test]
    fn wrong_pairing_is_rejected() {
        let reg = builtin_registry();
        let m37 = find_model(&reg, 37, true).unwrap();
        let b = CurveModel::elliptic("37b1", 37, Quotient::X0, [0, 1, 1, -23, -50]).unwrap();
        let fb = expand_newform(&b, 60).unwrap();
        assert!(matches!(elliptic_expansion(m37, &fb, 30), Err(Error::InconsistentModel(_))));
    }

    #[test]
    fn hyperelliptic_37_and_29() {
        let reg = builtin_registry();
        let f37 = eigenforms_from_traces(&trace_table(37, 80).unwrap(), 80).unwrap();
        let e = hyperelliptic_expansion(&f37[1], &f37[0], Normalization::AtkinLehnerPair).unwrap();
        assert_eq!(e.pole_orders(), (1, 3));
        let m = find_model(&reg, 37, false).unwrap();
        assert!(satisfies_model(m, &e.x, &e.y));
        let d = derive_hyperelliptic_model(&e.x, &e.y, "d37", 37, Quotient::X0).unwrap();
        assert_eq!(d.shape, m.shape);
        let (xw, yw) = (e.fricke_x.clone().unwrap(), e.fricke_y.clone().unwrap());
        assert!(satisfies_model(m, &xw, &yw));

        let f29 = eigenforms_from_traces(&trace_table(29, 80).unwrap(), 80).unwrap();
        let e = hyperelliptic_expansion(&f29[0], &f29[1], Normalization::Sqrt2Pair).unwrap();
        let m = find_model(&reg, 29, false).unwrap();
        assert!(satisfies_model(m, &e.x, &e.y));
        let (xw, yw) = fricke_transform(&e, &[-1, -1]).unwrap();
        assert_eq!(xw, e.x);
        assert_eq!(yw, -&e.y);
        assert_eq!(fricke_transform(&e, &[1, 1]).unwrap(), (e.x.clone(), e.y.clone()));
    }

    #[test]
    fn sextic_fit_rejects_elliptic_pairs() {
        let e = elliptic(37);
        assert!(matches!(derive_hyperelliptic_model(&e.x, &e.y, "x", 37, Quotient::X0Plus), Err(Error::NoRelation(_))));
    }
}
