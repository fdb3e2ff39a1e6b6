//! Exact computations with nonsymmetric and symmetric Macdonald
//! polynomials, Jack polynomials and the associated Kadell-type identities.

pub mod exactfield;
pub mod rootdata;
pub mod symfun;
pub mod daha;
pub mod macpoly;
pub mod jack;
pub mod kadell;
