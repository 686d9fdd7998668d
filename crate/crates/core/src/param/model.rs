//! Curve models and the plain-text registry.

use std::fmt;
use std::path::Path;

use num_bigint::BigInt;

use crate::exact::IPoly;
use crate::{Error, Result};

const BUILTIN: &str = include_str!("../../data/curves.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quotient {
    X0,
    X0Plus,
}

impl Quotient {
    pub fn name(self) -> &'static str {
        match self {
            Quotient::X0 => "x0",
            Quotient::X0Plus => "x0_plus",
        }
    }
}

/// Long Weierstraß coefficients [a1, a2, a3, a4, a6].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Weierstrass {
    pub a: [i64; 5],
}

impl Weierstrass {
    pub fn new(a1: i64, a2: i64, a3: i64, a4: i64, a6: i64) -> Self {
        Weierstrass { a: [a1, a2, a3, a4, a6] }
    }

    pub fn b_invariants(&self) -> [i128; 4] {
        let [a1, a2, a3, a4, a6] = self.a.map(i128::from);
        let b2 = a1 * a1 + 4 * a2;
        let b4 = 2 * a4 + a1 * a3;
        let b6 = a3 * a3 + 4 * a6;
        let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        [b2, b4, b6, b8]
    }

    pub fn c4(&self) -> i128 {
        let [b2, b4, _, _] = self.b_invariants();
        b2 * b2 - 24 * b4
    }

    pub fn discriminant(&self) -> i128 {
        let [b2, b4, b6, b8] = self.b_invariants();
        -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Elliptic(Weierstrass),
    /// Coefficients c0..c6 of the right-hand side, ascending.
    Hyperelliptic([i64; 7]),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveModel {
    pub label: String,
    pub level: u64,
    pub quotient: Quotient,
    pub shape: Shape,
}

impl CurveModel {
    pub fn elliptic(label: &str, level: u64, quotient: Quotient, a: [i64; 5]) -> Result<Self> {
        let m = CurveModel { label: label.to_string(), level, quotient, shape: Shape::Elliptic(Weierstrass { a }) };
        m.validate()?;
        Ok(m)
    }

    /// `desc` lists the sextic from the X⁶ coefficient down.
    pub fn hyperelliptic(label: &str, level: u64, quotient: Quotient, desc: [i64; 7]) -> Result<Self> {
        let mut c = desc;
        c.reverse();
        let m = CurveModel { label: label.to_string(), level, quotient, shape: Shape::Hyperelliptic(c) };
        m.validate()?;
        Ok(m)
    }

    pub fn weierstrass(&self) -> Option<&Weierstrass> {
        match &self.shape {
            Shape::Elliptic(w) => Some(w),
            Shape::Hyperelliptic(_) => None,
        }
    }

    pub fn sextic(&self) -> Option<IPoly> {
        match &self.shape {
            Shape::Hyperelliptic(c) => {
                Some(IPoly::from_coeffs(c.iter().map(|&v| BigInt::from(v)).collect(), BigInt::from(0)))
            }
            Shape::Elliptic(_) => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match &self.shape {
            Shape::Elliptic(w) => {
                if w.discriminant() == 0 {
                    return Err(Error::InvariantViolation(format!("{}: singular Weierstrass model", self.label)));
                }
            }
            Shape::Hyperelliptic(_) => {
                let f = self.sextic().expect("hyperelliptic");
                let deg = f.degree().unwrap_or(0);
                if deg != 5 && deg != 6 {
                    return Err(Error::InvariantViolation(format!("{}: degree {deg} right-hand side", self.label)));
                }
                if f.gcd_z(&f.derivative()).degree() != Some(0) {
                    return Err(Error::InvariantViolation(format!("{}: right-hand side not squarefree", self.label)));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for CurveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} ", self.label, self.level, self.quotient.name())?;
        match &self.shape {
            Shape::Elliptic(w) => {
                write!(f, "elliptic")?;
                for a in w.a {
                    write!(f, " {a}")?;
                }
            }
            Shape::Hyperelliptic(c) => {
                write!(f, "hyperelliptic")?;
                for a in c.iter().rev() {
                    write!(f, " {a}")?;
                }
            }
        }
        Ok(())
    }
}

pub fn parse_registry(text: &str) -> Result<Vec<CurveModel>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let perr = |msg: String| Error::ParseError { line: i + 1, msg };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() < 4 {
            return Err(perr("expected `label level quotient shape coefficients`".into()));
        }
        let level: u64 = fields[1].parse().map_err(|_| perr(format!("bad level `{}`", fields[1])))?;
        let quotient = match fields[2] {
            "x0" => Quotient::X0,
            "x0_plus" => Quotient::X0Plus,
            q => return Err(perr(format!("unknown quotient `{q}`"))),
        };
        let coeffs = fields[4..]
            .iter()
            .map(|s| s.parse::<i64>().map_err(|_| perr(format!("bad integer `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        let model = match fields[3] {
            "elliptic" => {
                let a: [i64; 5] = coeffs.try_into().map_err(|_| perr("elliptic needs 5 coefficients".into()))?;
                CurveModel::elliptic(fields[0], level, quotient, a)?
            }
            "hyperelliptic" => {
                let c: [i64; 7] = coeffs.try_into().map_err(|_| perr("hyperelliptic needs 7 coefficients".into()))?;
                CurveModel::hyperelliptic(fields[0], level, quotient, c)?
            }
            s => return Err(perr(format!("unknown shape `{s}`"))),
        };
        out.push(model);
    }
    Ok(out)
}

pub fn load_registry(path: &Path) -> Result<Vec<CurveModel>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::ParseError { line: 0, msg: format!("{}: {e}", path.display()) })?;
    parse_registry(&text)
}

pub fn builtin_registry() -> Vec<CurveModel> {
    parse_registry(BUILTIN).expect("built-in registry is valid")
}

pub fn find_model(registry: &[CurveModel], level: u64, elliptic: bool) -> Option<&CurveModel> {
    registry.iter().find(|m| m.level == level && matches!(m.shape, Shape::Elliptic(_)) == elliptic)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_parses() {
        let r = builtin_registry();
        assert_eq!(r.len(), 8);
        let m17 = find_model(&r, 17, true).unwrap();
        assert_eq!(m17.weierstrass().unwrap().a, [1, -1, 1, -1, -14]);
        let h29 = find_model(&r, 29, false).unwrap();
        assert_eq!(h29.sextic().unwrap(), IPoly::from_i64(&[1, 2, -17, -66, -83, -32, -4]));
    }

    #[test]
    fn discriminants() {
        assert_eq!(Weierstrass::new(0, 0, 1, -1, 0).discriminant(), 37);
        assert_eq!(Weierstrass::new(1, -1, 1, -1, -14).discriminant(), -83521);
    }

    #[test]
    fn rejects_bad_records() {
        assert!(matches!(parse_registry("bad 11 x0 elliptic 0 0 0 0 0"), Err(Error::InvariantViolation(_))));
        assert!(matches!(parse_registry("sq 11 x0 hyperelliptic 1 0 0 2 0 0 1"), Err(Error::InvariantViolation(_))));
        assert!(matches!(parse_registry("x 11 x0 elliptic 1 2"), Err(Error::ParseError { line: 1, .. })));
        assert!(matches!(parse_registry("\n\nx 11 x9 elliptic 1 2 3 4 5"), Err(Error::ParseError { line: 3, .. })));
    }

    #[test]
    fn display_roundtrip() {
        for m in builtin_registry() {
            assert_eq!(parse_registry(&m.to_string()).unwrap(), vec![m]);
        }
    }
}
