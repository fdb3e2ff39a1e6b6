//! W-invariant Laurent polynomials and the monomial symmetric basis
//! `m_b = sum_{c in W(b)} x_{-c}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactfield::{LaurentPoly, ParamSymbols, RatFunc, Weight};
use crate::rootdata::RootSystem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymError {
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("not W-invariant: s_{witness} moves it")]
    NotInvariant { witness: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    Symmetric,
    Antisymmetric,
    Neither,
}

/// `sum_b coeffs[b] m_b` over dominant `b`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SymPoly {
    coeffs: BTreeMap<Weight, RatFunc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymTermJson {
    pub weight: Vec<i64>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymPolyJson {
    pub basis: String,
    pub terms: Vec<SymTermJson>,
}

impl SymPoly {
    pub fn zero() -> SymPoly {
        SymPoly::default()
    }

    pub fn basis(b: Weight) -> SymPoly {
        SymPoly::from_terms([(b, RatFunc::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = (Weight, RatFunc)>>(it: I) -> SymPoly {
        let mut s = SymPoly::zero();
        for (b, c) in it {
            s.add_term(b, c);
        }
        s
    }

    pub fn add_term(&mut self, b: Weight, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        let v = match self.coeffs.remove(&b) {
            Some(old) => &old + &c,
            None => c,
        };
        if !v.is_zero() {
            self.coeffs.insert(b, v);
        }
    }

    pub fn coeff(&self, b: &Weight) -> RatFunc {
        self.coeffs.get(b).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &RatFunc)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> Vec<Weight> {
        self.coeffs.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &RatFunc) -> SymPoly {
        SymPoly::from_terms(self.coeffs.iter().map(|(b, v)| (*b, v * c)))
    }

    pub fn map_coeffs<E>(
        &self,
        mut f: impl FnMut(&RatFunc) -> Result<RatFunc, E>,
    ) -> Result<SymPoly, E> {
        let mut out = SymPoly::zero();
        for (b, v) in &self.coeffs {
            out.add_term(*b, f(v)?);
        }
        Ok(out)
    }

    pub fn to_laurent(&self, sys: &RootSystem) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (b, c) in &self.coeffs {
            for e in sys.orbit_of(b) {
                out.add_term(e.neg(), c.clone());
            }
        }
        out
    }

    /// Canonical JSON form; terms sorted by weight.
    pub fn to_json(&self, rank: usize, syms: &ParamSymbols) -> SymPolyJson {
        SymPolyJson {
            basis: "m".to_string(),
            terms: self
                .coeffs
                .iter()
                .map(|(b, c)| SymTermJson {
                    weight: b.coords(rank),
                    coeff: c.to_canonical_string(syms),
                })
                .collect(),
        }
    }
}

/// `m_b`.
pub fn monomial_symmetric(sys: &RootSystem, b: &Weight) -> Result<LaurentPoly, SymError> {
    if !b.is_dominant() {
        return Err(SymError::NotDominant(b.to_coord_string(sys.rank)));
    }
    Ok(LaurentPoly::from_terms(
        sys.orbit_of(b).into_iter().map(|c| (c.neg(), RatFunc::one())),
    ))
}

/// `s_i f` for `1 <= i <= n`.
pub fn reflect_laurent(sys: &RootSystem, i: usize, f: &LaurentPoly) -> LaurentPoly {
    f.map_terms(|e, c| (sys.reflect(i - 1, e), c.clone()))
}

/// Expands a W-invariant Laurent polynomial in the `m_b`.
pub fn to_m_basis(sys: &RootSystem, f: &LaurentPoly) -> Result<SymPoly, SymError> {
    for i in 1..=sys.rank {
        if reflect_laurent(sys, i, f) != *f {
            return Err(SymError::NotInvariant { witness: i });
        }
    }
    Ok(SymPoly::from_terms(
        f.iter()
            .filter(|(e, _)| e.neg().is_dominant())
            .map(|(e, c)| (e.neg(), c.clone())),
    ))
}

pub fn symmetry_type(sys: &RootSystem, f: &LaurentPoly) -> Symmetry {
    let images: Vec<LaurentPoly> = (1..=sys.rank).map(|i| reflect_laurent(sys, i, f)).collect();
    if images.iter().all(|g| g == f) {
        Symmetry::Symmetric
    } else if images.iter().all(|g| *g == -f) {
        Symmetry::Antisymmetric
    } else {
        Symmetry::Neither
    }
}
