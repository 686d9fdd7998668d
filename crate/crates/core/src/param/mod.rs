//! Curve models and modular parametrizations.

mod expansion;
mod model;

pub use expansion::{
    derive_hyperelliptic_model, elliptic_expansion, fricke_transform, hyperelliptic_expansion, satisfies_model,
    sextic_residual, weierstrass_residual, CoordinateExpansion, Normalization, RSeries,
};
pub use model::{
    builtin_registry, find_model, load_registry, parse_registry, CurveModel, Quotient, Shape, Weierstrass,
};
