//! Exact arithmetic: rational functions in the parameters and Laurent
//! polynomials in `x` over them.

pub mod display;
pub mod laurent;
pub mod params;
pub mod poly;
pub mod ratfunc;

use thiserror::Error;

pub use laurent::{LaurentPoly, Weight, MAX_RANK};
pub use params::{length_var, ParamSymbols, SymbolKind, Q_DENOM, VAR_Q};
pub use poly::{Monomial, Poly, NVARS};
pub use ratfunc::{q_rational_power, MonomialValue, RatFunc};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("specialization makes a denominator vanish: {0}")]
    SingularSpecialization(String),
    #[error("q-power not representable: {0}")]
    QPowerNotRepresentable(String),
    #[error("not exactly divisible")]
    NotDivisible,
    #[error("lattice error: {0}")]
    Lattice(String),
}
