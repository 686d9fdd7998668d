//! Exact polynomial relations between a target series and coordinate series.

use num_traits::Zero;

use crate::exact::{BiPoly, LaurentSeries, Matrix, RPoly, Rat};
use crate::param::{CoordinateExpansion, Quotient, RSeries};
use crate::units::UnitKind;
use crate::{Error, Result};

/// Extra matched coefficients beyond the pole order.
pub const SURPLUS: i64 = 10;

#[derive(Clone, Debug, PartialEq)]
pub struct PlaneRelation {
    pub level: u64,
    pub quotient: Option<Quotient>,
    pub target: UnitKind,
    pub poly: BiPoly,
    pub residual_precision: i64,
}

/// target = c₀ + c₁·t, found by peeling principal parts.
pub fn find_relation_genus0(target: &RSeries, t: &RSeries) -> Result<RPoly> {
    let pt = -t.valuation();
    let pg = -target.valuation();
    if pt <= 0 {
        return Err(Error::NoRelation("t has no pole at the cusp".into()));
    }
    if pg % pt != 0 || pg / pt > 1 {
        return Err(Error::NoRelation(format!("pole order {pg} is not at most that of t ({pt})")));
    }
    let mut rest = target.clone();
    let mut coeffs = vec![Rat::zero(); 2];
    if pg == pt {
        let c1 = rest.coeff(-pt) / t.coeff(-pt);
        rest = &rest - &t.scale(&c1);
        coeffs[1] = c1;
    }
    if rest.valuation() < 0 {
        return Err(Error::NoRelation("principal part is not a multiple of t's".into()));
    }
    coeffs[0] = rest.coeff(0);
    rest = &rest - &RSeries::constant(coeffs[0].clone(), rest.precision());
    if !rest.is_zero() {
        return Err(Error::NoRelation(format!("residual starts at q^{}", rest.valuation())));
    }
    if rest.precision() < pt + SURPLUS {
        return Err(Error::PrecisionTooLow { needed: pt + SURPLUS, have: rest.precision() });
    }
    Ok(RPoly::from_coeffs(coeffs, Rat::zero()))
}

/// X^a Y^b with b ≤ 1 and pole order a·px + b·py ≤ bound, graded by pole
/// order then by a.
pub fn monomial_basis(pole_orders: (i64, i64), bound: i64) -> Vec<(u32, u32)> {
    let (px, py) = pole_orders;
    let mut out = Vec::new();
    for b in 0..=1i64 {
        let mut a = 0i64;
        while a * px + b * py <= bound {
            out.push((a as u32, b as u32));
            a += 1;
        }
    }
    out.sort_by_key(|&(a, b)| (a as i64 * px + b as i64 * py, a));
    out
}

fn monomial_series(x: &RSeries, y: &RSeries, basis: &[(u32, u32)]) -> Result<Vec<RSeries>> {
    basis
        .iter()
        .map(|&(a, b)| {
            let xa = x.pow(a as i64)?;
            Ok(if b == 1 { &xa * y } else { xa })
        })
        .collect()
}

/// Σ c·X^aY^b as a series.
pub fn eval_relation(poly: &BiPoly, x: &RSeries, y: &RSeries) -> Result<RSeries> {
    let p = x.precision().min(y.precision());
    let mut acc = RSeries::zero(Rat::zero(), p);
    for (a, b, c) in poly.terms() {
        let m = &x.pow(a as i64)? * &y.pow(b as i64)?;
        acc = &acc + &m.scale(c);
    }
    Ok(acc)
}

/// Solves target = P(X, Y) by matching q-coefficients; with `fricke` the
/// conditions at the w_N-image cusp are added.
pub fn find_relation(
    kind: UnitKind,
    target: &RSeries,
    exp: &CoordinateExpansion,
    fricke: Option<&RSeries>,
) -> Result<PlaneRelation> {
    let poles = exp.pole_orders();
    let mut bound = -target.valuation();
    let sides: Vec<(&RSeries, RSeries, RSeries)> = match fricke {
        None => vec![(target, exp.x.clone(), exp.y.clone())],
        Some(tw) => {
            let (xw, yw) = (
                exp.fricke_x.clone().ok_or(Error::MissingEigenData)?,
                exp.fricke_y.clone().ok_or(Error::MissingEigenData)?,
            );
            bound = bound.max(-tw.valuation());
            vec![(target, exp.x.clone(), exp.y.clone()), (tw, xw, yw)]
        }
    };
    let basis = monomial_basis(poles, bound);
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();
    let mut residual_precision = i64::MAX;
    for (tg, x, y) in &sides {
        let mons = monomial_series(x, y, &basis)?;
        let top = mons.iter().map(LaurentSeries::precision).chain([tg.precision()]).min().unwrap_or(0);
        let lo = mons.iter().map(LaurentSeries::valuation).chain([tg.valuation()]).min().unwrap_or(0);
        if top < bound + SURPLUS {
            return Err(Error::PrecisionTooLow { needed: bound + SURPLUS, have: top });
        }
        residual_precision = residual_precision.min(top);
        for k in lo..top {
            rows.push(mons.iter().map(|m| m.coeff(k)).collect());
            rhs.push(tg.coeff(k));
        }
    }
    let m = Matrix::from_rows(rows, Rat::zero());
    let (sol, kernel) = m.solve(&rhs).ok_or_else(|| {
        Error::NoRelation(format!("{} at level {} is not a polynomial of pole order ≤ {bound}", kind.name(), exp.level))
    })?;
    if !kernel.is_empty() {
        return Err(Error::NonUniqueRelation(kernel.len()));
    }
    let mut poly = BiPoly::new();
    for (&(a, b), c) in basis.iter().zip(sol) {
        poly.add_term(a, b, c);
    }
    for (tg, x, y) in &sides {
        let r = &eval_relation(&poly, x, y)? - tg;
        if !r.is_zero() {
            return Err(Error::VerificationFailed(format!("relation residual at q^{}", r.valuation())));
        }
    }
    Ok(PlaneRelation {
        level: exp.level,
        quotient: exp.model.as_ref().map(|m| m.quotient),
        target: kind,
        poly,
        residual_precision,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};
    use crate::newforms::{eigenforms_from_traces, expand_newform, trace_table};
    use crate::param::{builtin_registry, elliptic_expansion, find_model, hyperelliptic_expansion, Normalization};
    use crate::units::{derived_units, int_to_rat, t_series, SeriesData};

    fn t_rat(n: u64, prec: i64) -> RSeries {
        match t_series(n, prec).unwrap().series {
            SeriesData::Int(s) => int_to_rat(&s),
            _ => unreachable!(),
        }
    }

    #[test]
    fn basis_shapes() {
        assert_eq!(monomial_basis((2, 3), 5), vec![(0, 0), (1, 0), (0, 1), (2, 0), (1, 1)]);
        assert_eq!(monomial_basis((2, 3), 3), vec![(0, 0), (1, 0), (0, 1)]);
        assert_eq!(monomial_basis((2, 3), 26).len(), 26);
        assert_eq!(monomial_basis((1, 3), 22).len(), 2 * 22 - 1);
    }

    #[test]
    fn valence_one_levels() {
        for (n, c) in [(5u64, 11i64), (13, 3)] {
            let d = derived_units(n, 60).unwrap();
            let p = find_relation_genus0(&d.g_chi_breve, &t_rat(n, 60)).unwrap();
            assert_eq!(p, RPoly::from_coeffs(vec![rat_int(-c), rat_int(-1)], Rat::zero()));
        }
        let d = derived_units(17, 40).unwrap();
        assert!(matches!(find_relation_genus0(&d.g_chi_breve, &t_rat(17, 40)), Err(Error::NoRelation(_))));
    }

    #[test]
    fn elliptic_relations() {
        let reg = builtin_registry();
        let m = find_model(&reg, 17, true).unwrap();
        let e = elliptic_expansion(m, &expand_newform(m, 80).unwrap(), 40).unwrap();
        let d = derived_units(17, 40).unwrap();
        let r = find_relation(UnitKind::GChiBreve, &d.g_chi_breve, &e, None).unwrap();
        assert_eq!(r.poly, BiPoly::from_terms(&[(-1, 0, 0), (-1, 1, 0)]));

        let m = find_model(&reg, 37, true).unwrap();
        let e = elliptic_expansion(m, &expand_newform(m, 80).unwrap(), 40).unwrap();
        let d = derived_units(37, 40).unwrap();
        let r = find_relation(UnitKind::HChi, d.h_chi.as_ref().unwrap(), &e, None).unwrap();
        // The published relation is the negative of this one.
        let printed = BiPoly::from_terms(&[(1, 0, 0), (6, 1, 0), (4, 0, 1), (-4, 2, 0), (-1, 1, 1)]);
        assert_eq!(r.poly, printed.scale(&rat_int(-1)));
        assert!(r.residual_precision >= 5 + SURPLUS);
    }

    #[test]
    fn genus_two_relations() {
        let f = eigenforms_from_traces(&trace_table(29, 120).unwrap(), 120).unwrap();
        let e = hyperelliptic_expansion(&f[0], &f[1], Normalization::Sqrt2Pair).unwrap();
        let d = derived_units(29, 60).unwrap();
        let r = find_relation(UnitKind::GChiBreve, &d.g_chi_breve, &e, None).unwrap();
        let h = rat(-1, 2);
        let mut printed = BiPoly::new();
        for (c, a, b) in
            [(h.clone(), 0, 1), (h.clone(), 3, 0), (h.clone(), 2, 0), (rat(9, 2), 1, 0), (rat_int(7), 0, 0)]
        {
            printed.add_term(a, b, c);
        }
        assert_eq!(r.poly, printed);

        let f = eigenforms_from_traces(&trace_table(37, 120).unwrap(), 120).unwrap();
        let e = hyperelliptic_expansion(&f[0], &f[1], Normalization::AtkinLehnerPair).unwrap();
        let d = derived_units(37, 60).unwrap();
        let r = find_relation(UnitKind::GChiBreve, &d.g_chi_breve, &e, None).unwrap();
        let inner = BiPoly::from_terms(&[
            (1, 5, 0),
            (16, 4, 0),
            (67, 3, 0),
            (1, 2, 1),
            (87, 2, 0),
            (9, 1, 1),
            (62, 1, 0),
            (11, 0, 1),
            (13, 0, 0),
        ]);
        assert_eq!(r.poly, inner.scale(&rat(-1, 2)));
        // w_N sends ğ_χ to g_χ; both cusps give the same relation.
        let gw = d.g_chi.clone().unwrap();
        let both = find_relation(UnitKind::GChiBreve, &d.g_chi_breve, &e, Some(&gw)).unwrap();
        assert_eq!(both.poly, r.poly);
        let wrong = find_relation(UnitKind::GChiBreve, &d.g_chi_breve, &e, Some(&-&gw));
        assert!(matches!(wrong, Err(Error::NoRelation(_))));
    }
}
