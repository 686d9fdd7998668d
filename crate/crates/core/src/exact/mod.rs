//! Exact arithmetic: rationals, quadratic and cyclotomic elements, truncated
//! Laurent series, polynomials, resultants and factorization.

pub mod bipoly;
pub mod coeff;
pub mod cyclo;
pub mod factor;
pub mod int;
pub mod linalg;
pub mod modp;
pub mod poly;
pub mod quad;
pub mod quadfactor;
pub mod resultant;
pub mod series;

pub type Rat = num_rational::BigRational;

pub use bipoly::BiPoly;
pub use coeff::Coeff;
pub use cyclo::CycloElem;
pub use linalg::Matrix;
pub use poly::{IPoly, Poly, QPoly, RPoly};
pub use quad::QuadElem;
pub use series::LaurentSeries;

use num_bigint::BigInt;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Renders a rational as `p` or `p/q`.
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
