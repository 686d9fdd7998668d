//! Zeros of a target unit on a plane model: elimination, factorization and
//! the nontrivial Galois orbit p_N.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{bernoulli_exponent, genus_x0_plus};
use crate::exact::factor::{factor_over_q, Factorization};
use crate::exact::int::{inv_mod, pow_mod};
use crate::exact::resultant::{resultant_x, resultant_y};
use crate::exact::{BiPoly, IPoly, Rat};
use crate::newforms::{default_length, expand_newform, plus_space_basis};
use crate::param::{
    derive_hyperelliptic_model, elliptic_expansion, hyperelliptic_expansion, satisfies_model, CoordinateExpansion,
    CurveModel, Normalization, Quotient, Shape,
};
use crate::relation::PlaneRelation;
use crate::relation::{find_relation, SURPLUS};
use crate::units::{breve_valuation, derived_units, UnitKind};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct ZeroLocusReport {
    pub level: u64,
    pub g_x: IPoly,
    pub g_y: IPoly,
    pub factors_x: Factorization,
    pub factors_y: Factorization,
    pub trivial_zero: Option<(Rat, Rat)>,
    /// Nontrivial orbit in the X coordinate.
    pub p_n: IPoly,
    /// The same orbit in the Y coordinate.
    pub p_n_y: IPoly,
}

/// The model as W(X, Y) = 0.
pub fn model_polynomial(model: &CurveModel) -> BiPoly {
    match &model.shape {
        Shape::Elliptic(w) => {
            let [a1, a2, a3, a4, a6] = w.a;
            BiPoly::from_terms(&[(1, 0, 2), (a1, 1, 1), (a3, 0, 1), (-1, 3, 0), (-a2, 2, 0), (-a4, 1, 0), (-a6, 0, 0)])
        }
        Shape::Hyperelliptic(c) => {
            let mut terms = vec![(1, 0, 2)];
            terms.extend(c.iter().enumerate().map(|(k, &ck)| (-ck, k as u32, 0)));
            BiPoly::from_terms(&terms)
        }
    }
}

fn normalize(p: &IPoly) -> IPoly {
    p.squarefree_part().primitive()
}

/// g_X and g_Y: primitive squarefree parts of the resultants of W and P.
pub fn eliminate(
    model: &CurveModel,
    relation: &PlaneRelation,
    expected_degree: Option<usize>,
) -> Result<(IPoly, IPoly)> {
    let w = model_polynomial(model);
    let gx = normalize(&resultant_y(&w, &relation.poly)?);
    let gy = normalize(&resultant_x(&w, &relation.poly)?);
    for g in [&gx, &gy] {
        let deg = g.degree().unwrap_or(0);
        if deg == 0 {
            return Err(Error::ZeroResultant);
        }
        if let Some(e) = expected_degree {
            if deg != e {
                return Err(Error::DegreeMismatch { expected: e, got: deg });
            }
        }
    }
    Ok((gx, gy))
}

/// Strips the rational zero when N ≡ 5 (mod 8) and returns the single
/// remaining irreducible factor.
pub fn extract_pn(level: u64, fac: &Factorization) -> Result<(IPoly, Option<IPoly>)> {
    let (linear, other): (Vec<_>, Vec<_>) =
        fac.factors.iter().map(|(f, _)| f.clone()).partition(|f| f.degree() == Some(1));
    let bad = |msg: String| Err(Error::UnexpectedFactorization(format!("level {level}: {msg}")));
    match level % 8 {
        5 => {
            if linear.len() != 1 {
                return bad(format!("{} linear factors, expected exactly one", linear.len()));
            }
            if other.len() != 1 {
                return bad(format!("{} nontrivial factors", other.len()));
            }
            Ok((other[0].clone(), Some(linear[0].clone())))
        }
        1 => {
            if fac.factors.len() != 1 {
                return bad(format!("{} factors, expected one orbit", fac.factors.len()));
            }
            Ok((fac.factors[0].0.clone(), None))
        }
        _ => Err(Error::BadCongruenceClass(level)),
    }
}

fn linear_root(f: &IPoly) -> Rat {
    Rat::new(-f.coeff(0), f.coeff(1))
}

/// A rational point with the given X on both W = 0 and P = 0.
fn rational_point(model: &CurveModel, relation: &PlaneRelation, x: &Rat) -> Option<(Rat, Rat)> {
    let w = model_polynomial(model);
    let p = &relation.poly;
    // P = A(X) + B(X)·Y in every relation produced here.
    let a: Rat = p.terms().filter(|t| t.1 == 0).map(|(i, _, c)| c * num_traits::pow(x.clone(), i as usize)).sum();
    let b: Rat = p.terms().filter(|t| t.1 == 1).map(|(i, _, c)| c * num_traits::pow(x.clone(), i as usize)).sum();
    if b.is_zero() {
        return None;
    }
    let y = -a / b;
    (w.eval(x, &y).is_zero() && p.eval(x, &y).is_zero()).then_some((x.clone(), y))
}

pub fn zero_locus(
    model: &CurveModel,
    relation: &PlaneRelation,
    expected_degree: Option<usize>,
) -> Result<ZeroLocusReport> {
    let level = model.level;
    let (g_x, g_y) = eliminate(model, relation, expected_degree)?;
    let factors_x = factor_over_q(&g_x);
    let factors_y = factor_over_q(&g_y);
    let (p_n, lin_x) = extract_pn(level, &factors_x)?;
    let (p_n_y, lin_y) = extract_pn(level, &factors_y)?;
    let trivial_zero = match (&lin_x, &lin_y) {
        (Some(lx), Some(ly)) => {
            let pt = rational_point(model, relation, &linear_root(lx)).ok_or_else(|| {
                Error::UnexpectedFactorization(format!("level {level}: rational X-root is not a zero"))
            })?;
            if pt.1 != linear_root(ly) {
                return Err(Error::UnexpectedFactorization(format!("level {level}: rational roots do not pair up")));
            }
            Some(pt)
        }
        _ => None,
    };
    Ok(ZeroLocusReport { level, g_x, g_y, factors_x, factors_y, trivial_zero, p_n, p_n_y })
}

/// deg p_N = v_χ for N ≡ 1 (mod 8) and v_χ − 1 for N ≡ 5 (mod 8).
pub fn degree_conjecture_check(level: u64, p_n: &IPoly) -> Result<bool> {
    let v = bernoulli_exponent(level)?;
    if !v.is_integer() {
        return Ok(false);
    }
    let v: i64 = v.to_integer().try_into().map_err(|_| Error::BadLevel(level))?;
    let expected = if level % 8 == 5 { v - 1 } else { v };
    Ok(p_n.degree().map(|d| d as i64) == Some(expected))
}

/// Positive leading coefficient and coprime coefficients.
pub fn is_normalized(p: &IPoly) -> bool {
    p.content().is_one() && p.lead().is_positive()
}

/// Brute-force common zeros of W and P over 𝔽_p (None if P has p in a
/// denominator).
pub fn common_zeros_mod_p(model: &CurveModel, relation: &PlaneRelation, p: u64) -> Option<Vec<(u64, u64)>> {
    let reduce = |poly: &BiPoly| -> Option<Vec<(u32, u32, u64)>> {
        poly.terms().map(|(a, b, c)| Some((a, b, rat_mod_p(c, p)?))).collect()
    };
    let w = reduce(&model_polynomial(model))?;
    let r = reduce(&relation.poly)?;
    let eval = |terms: &[(u32, u32, u64)], x: u64, y: u64| {
        terms.iter().fold(0u64, |acc, &(a, b, c)| (acc + c * pow_mod(x, a as u64, p) % p * pow_mod(y, b as u64, p)) % p)
    };
    Some(
        (0..p)
            .flat_map(|x| (0..p).map(move |y| (x, y)))
            .filter(|&(x, y)| eval(&w, x, y) == 0 && eval(&r, x, y) == 0)
            .collect(),
    )
}

fn rat_mod_p(c: &Rat, p: u64) -> Option<u64> {
    let m = BigInt::from(p);
    let d = u64::try_from(c.denom().mod_floor(&m)).ok()?;
    let n = u64::try_from(c.numer().mod_floor(&m)).ok()?;
    Some(n * inv_mod(d, p)? % p)
}

/// Value of an integer polynomial modulo p.
pub fn eval_mod_p(f: &IPoly, x: u64, p: u64) -> u64 {
    let m = BigInt::from(p);
    let v = f.coeffs().iter().rev().fold(BigInt::zero(), |acc, c| (acc * BigInt::from(x) + c).mod_floor(&m));
    u64::try_from(v).expect("reduced")
}

/// Everything behind one zero-locus computation.
#[derive(Clone, Debug)]
pub struct LevelSetup {
    pub model: CurveModel,
    pub expansion: CoordinateExpansion,
    pub relation: PlaneRelation,
}

/// h_χ on X_0^+(N): registry model for genus one, a model derived from
/// the plus-space newforms for genus two.
pub fn plus_level_setup(level: u64, registry: &[CurveModel]) -> Result<LevelSetup> {
    let v = breve_valuation(level)?;
    let genus = genus_x0_plus(level);
    let (model, expansion, precision) = match genus {
        1 => {
            let model = registry
                .iter()
                .find(|m| m.level == level && m.quotient == Quotient::X0Plus && m.weierstrass().is_some())
                .ok_or_else(|| Error::BadInput(format!("no X_0^+({level}) model in the registry")))?
                .clone();
            let precision = v + 2 * SURPLUS;
            let f = expand_newform(&model, default_length(precision as usize))?;
            let e = elliptic_expansion(&model, &f, precision + v)?;
            (model, e, precision)
        }
        2 => {
            let precision = 2 * v + 2 * SURPLUS;
            let forms = plus_space_basis(level, (3 * v + 3 * SURPLUS) as usize)?;
            let e = hyperelliptic_expansion(&forms[0], &forms[1], Normalization::Generic)?;
            let label = format!("X0+({level})");
            let model = match registry
                .iter()
                .find(|m| m.level == level && m.quotient == Quotient::X0Plus && m.sextic().is_some())
            {
                Some(m) => m.clone(),
                None => derive_hyperelliptic_model(&e.x, &e.y, &label, level, Quotient::X0Plus)?,
            };
            if !satisfies_model(&model, &e.x, &e.y) {
                return Err(Error::InconsistentModel(format!("{label}: coordinates miss the model")));
            }
            (model, e, precision)
        }
        g => return Err(Error::BadInput(format!("X_0^+({level}) has genus {g}"))),
    };
    let d = derived_units(level, precision)?;
    let h = d.h_chi.ok_or(Error::MissingEigenData)?;
    let relation = find_relation(UnitKind::HChi, &h, &expansion, None)?;
    Ok(LevelSetup { model, expansion, relation })
}

pub fn plus_zero_locus(level: u64, registry: &[CurveModel]) -> Result<(LevelSetup, ZeroLocusReport)> {
    let setup = plus_level_setup(level, registry)?;
    let v = breve_valuation(level)? as usize;
    let report = zero_locus(&setup.model, &setup.relation, Some(v))?;
    Ok((setup, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::param::builtin_registry;

    fn level37() -> (LevelSetup, ZeroLocusReport) {
        plus_zero_locus(37, &builtin_registry()).unwrap()
    }

    #[test]
    fn level_37_elimination() {
        let (_, r) = level37();
        assert_eq!(r.g_x, IPoly::from_i64(&[1, -24, 67, -42, -5, 3]));
        assert_eq!(r.g_y, IPoly::from_i64(&[1, 95, -86, -279, -72, 27]));
        let fx: Vec<IPoly> = r.factors_x.factors.iter().map(|f| f.0.clone()).collect();
        assert_eq!(fx, vec![IPoly::from_i64(&[1, -1]), IPoly::from_i64(&[1, -23, 44, 2, -3])]);
        let fy: Vec<IPoly> = r.factors_y.factors.iter().map(|f| f.0.clone()).collect();
        assert_eq!(fy, vec![IPoly::from_i64(&[1, 1]), IPoly::from_i64(&[1, 94, -180, -99, 27])]);
        assert_eq!(r.trivial_zero, Some((Rat::from_integer(1.into()), Rat::from_integer((-1).into()))));
        assert!(is_normalized(&r.p_n));
        assert!(degree_conjecture_check(37, &r.p_n).unwrap());
    }

    #[test]
    fn finite_field_oracle() {
        let (s, r) = level37();
        for p in [5u64, 7, 11, 13, 17, 19, 23] {
            let Some(zeros) = common_zeros_mod_p(&s.model, &s.relation, p) else { continue };
            for (x, y) in zeros {
                assert_eq!(eval_mod_p(&r.g_x, x, p), 0, "g_X at ({x},{y}) mod {p}");
                assert_eq!(eval_mod_p(&r.g_y, y, p), 0, "g_Y at ({x},{y}) mod {p}");
            }
        }
    }

    #[test]
    fn degenerate_relation() {
        let (s, _) = level37();
        let one = PlaneRelation { poly: BiPoly::from_terms(&[(1, 0, 0)]), ..s.relation.clone() };
        assert!(eliminate(&s.model, &one, None).is_err());
    }

    #[test]
    fn extraction_rules() {
        let two = factor_over_q(&(&IPoly::from_i64(&[1, 0, -2]) * &IPoly::from_i64(&[1, 0, -3])));
        assert!(matches!(extract_pn(89, &two), Err(Error::UnexpectedFactorization(_))));
        assert!(matches!(extract_pn(53, &two), Err(Error::UnexpectedFactorization(_))));
        let one = factor_over_q(&IPoly::from_i64(&[1, 0, -2]));
        assert_eq!(extract_pn(89, &one).unwrap().0, IPoly::from_i64(&[1, 0, -2]));
    }
}
