//! Laurent polynomials in `x_1, ..., x_n` with half-integral exponents and
//! coefficients in the parameter field.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::params::ParamSymbols;
use super::ratfunc::{MonomialValue, RatFunc};
use super::poly::NVARS;
use super::FieldError;

pub const MAX_RANK: usize = 4;

/// Vector in coweight coordinates `b_1..b_n`. Entries are stored doubled,
/// so half-integral coordinates (needed for `x_a^(1/2)`) are exact.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Weight {
    half: [i32; MAX_RANK],
}

impl Weight {
    pub fn zero() -> Weight {
        Weight::default()
    }

    pub fn from_coords(c: &[i64]) -> Weight {
        assert!(c.len() <= MAX_RANK);
        let mut half = [0; MAX_RANK];
        for (h, x) in half.iter_mut().zip(c) {
            *h = (2 * x) as i32;
        }
        Weight { half }
    }

    /// From doubled coordinates.
    pub fn from_half(h: &[i32]) -> Weight {
        assert!(h.len() <= MAX_RANK);
        let mut half = [0; MAX_RANK];
        half[..h.len()].copy_from_slice(h);
        Weight { half }
    }

    pub fn from_rational_coords(c: &[BigRational]) -> Result<Weight, FieldError> {
        let mut half = [0; MAX_RANK];
        for (h, x) in half.iter_mut().zip(c) {
            let d = x * BigRational::from_integer(BigInt::from(2));
            if !d.is_integer() {
                return Err(FieldError::Lattice(format!(
                    "coordinate {} is not a multiple of 1/2",
                    x
                )));
            }
            *h = i32::try_from(d.to_integer()).map_err(|_| FieldError::Lattice(x.to_string()))?;
        }
        Ok(Weight { half })
    }

    pub fn half(&self) -> &[i32; MAX_RANK] {
        &self.half
    }

    pub fn half_coord(&self, i: usize) -> i32 {
        self.half[i]
    }

    /// Integer coordinate, panicking on half-integers.
    pub fn coord(&self, i: usize) -> i64 {
        assert!(self.half[i] % 2 == 0, "half-integral coordinate");
        (self.half[i] / 2) as i64
    }

    pub fn coords(&self, rank: usize) -> Vec<i64> {
        (0..rank).map(|i| self.coord(i)).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.half.iter().all(|h| h % 2 == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.half.iter().all(|&h| h == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.half.iter().all(|&h| h >= 0)
    }

    pub fn add(&self, o: &Weight) -> Weight {
        let mut half = self.half;
        for (a, b) in half.iter_mut().zip(o.half.iter()) {
            *a += *b;
        }
        Weight { half }
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Weight {
        let mut half = self.half;
        for a in half.iter_mut() {
            *a = -*a;
        }
        Weight { half }
    }

    pub fn scale(&self, k: i32) -> Weight {
        let mut half = self.half;
        for a in half.iter_mut() {
            *a *= k;
        }
        Weight { half }
    }

    /// Exact halving; only valid when every doubled entry is even.
    pub fn halve(&self) -> Weight {
        let mut half = self.half;
        for a in half.iter_mut() {
            assert!(*a % 2 == 0, "cannot halve below the 1/2 lattice");
            *a /= 2;
        }
        Weight { half }
    }

    /// Comma-separated coordinates, e.g. `2,1` or `1/2,0`.
    pub fn to_coord_string(&self, rank: usize) -> String {
        (0..rank)
            .map(|i| {
                let h = self.half[i];
                if h % 2 == 0 {
                    (h / 2).to_string()
                } else {
                    format!("{}/2", h)
                }
            })
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Coordinates as JSON-friendly values: integers where possible.
    pub fn to_rationals(&self, rank: usize) -> Vec<BigRational> {
        (0..rank)
            .map(|i| BigRational::new(BigInt::from(self.half[i]), BigInt::from(2)))
            .collect()
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.half.iter().rposition(|&h| h != 0).map_or(1, |p| p + 1);
        write!(f, "[{}]", self.to_coord_string(last.max(1)))
    }
}

/// Finite map from exponent vectors to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Weight, RatFunc>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::constant(RatFunc::one())
    }

    pub fn constant(c: RatFunc) -> LaurentPoly {
        LaurentPoly::term(Weight::zero(), c)
    }

    /// `c * x_e`.
    pub fn term(e: Weight, c: RatFunc) -> LaurentPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    /// `x_e`.
    pub fn monomial(e: Weight) -> LaurentPoly {
        LaurentPoly::term(e, RatFunc::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Weight, RatFunc)>>(it: I) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e, c) in it {
            out.add_term(e, c);
        }
        out
    }

    pub fn add_term(&mut self, e: Weight, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &RatFunc)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Weight) -> RatFunc {
        self.terms.get(e).cloned().unwrap_or_else(RatFunc::zero)
    }

    /// Coefficient of `x^0`.
    pub fn constant_term(&self) -> RatFunc {
        self.coeff(&Weight::zero())
    }

    pub fn leading(&self) -> Option<(&Weight, &RatFunc)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &RatFunc) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    /// Multiplies by `x_e`.
    pub fn shift(&self, e: &Weight) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, a)| (k.add(e), a.clone())).collect(),
        }
    }

    pub fn mul_ref(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero();
        }
        let mut acc: BTreeMap<Weight, RatFunc> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.add(eb);
                let prod = ca * cb;
                match acc.get_mut(&e) {
                    Some(v) => *v = &*v + &prod,
                    None => {
                        acc.insert(e, prod);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        LaurentPoly { terms: acc }
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        for _ in 0..k {
            acc = acc.mul_ref(self);
        }
        acc
    }

    fn combine(&self, other: &LaurentPoly, negate: bool) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, if negate { -c } else { c.clone() });
        }
        out
    }

    /// Exact quotient `self / g`.
    pub fn exact_divide(&self, g: &LaurentPoly) -> Result<LaurentPoly, FieldError> {
        if g.is_zero() {
            return Err(FieldError::ZeroDenominator);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        if g.len() == 1 {
            let (e, c) = g.leading().unwrap();
            let inv = c.inv()?;
            return Ok(self.shift(&e.neg()).scale(&inv));
        }
        // the quotient's support lies in a box determined coordinatewise
        let (fmin, fmax) = self.bounding_box();
        let (gmin, gmax) = g.bounding_box();
        let mut lo = [0i32; MAX_RANK];
        let mut hi = [0i32; MAX_RANK];
        for i in 0..MAX_RANK {
            lo[i] = fmin[i] - gmin[i];
            hi[i] = fmax[i] - gmax[i];
            if lo[i] > hi[i] {
                return Err(FieldError::NotDivisible);
            }
        }
        let (ge, gc) = g.leading().map(|(e, c)| (*e, c.clone())).unwrap();
        let gc_inv = gc.inv()?;
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let Some((re, rc)) = rem.leading().map(|(e, c)| (*e, c.clone())) {
            let qe = re.sub(&ge);
            if (0..MAX_RANK).any(|i| qe.half[i] < lo[i] || qe.half[i] > hi[i]) {
                return Err(FieldError::NotDivisible);
            }
            let qc = &rc * &gc_inv;
            for (e, c) in &g.terms {
                rem.add_term(e.add(&qe), -(c * &qc));
            }
            debug_assert!(rem.terms.get(&re).is_none());
            quot.add_term(qe, qc);
        }
        Ok(quot)
    }

    fn bounding_box(&self) -> ([i32; MAX_RANK], [i32; MAX_RANK]) {
        let mut lo = [i32::MAX; MAX_RANK];
        let mut hi = [i32::MIN; MAX_RANK];
        for e in self.terms.keys() {
            for i in 0..MAX_RANK {
                lo[i] = lo[i].min(e.half[i]);
                hi[i] = hi[i].max(e.half[i]);
            }
        }
        (lo, hi)
    }

    /// `x_b -> x_{-b}` together with `X -> X^{-1}` on every parameter symbol.
    pub fn star_involution(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e.neg(), c.star())).collect(),
        }
    }

    /// `f(x^{-1})`, parameters untouched.
    pub fn invert_x(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e.neg(), c.clone())).collect(),
        }
    }

    pub fn specialize(
        &self,
        assignment: &[Option<MonomialValue>; NVARS],
    ) -> Result<LaurentPoly, FieldError> {
        let mut out = LaurentPoly::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, c.specialize(assignment)?);
        }
        Ok(out)
    }

    /// Applies `x_e -> coeff(e) * x_{map(e)}` termwise.
    pub fn map_terms<F>(&self, mut f: F) -> LaurentPoly
    where
        F: FnMut(&Weight, &RatFunc) -> (Weight, RatFunc),
    {
        let mut out = LaurentPoly::zero();
        for (e, c) in &self.terms {
            let (e2, c2) = f(e, c);
            out.add_term(e2, c2);
        }
        out
    }

    pub fn map_coeffs<F>(&self, mut f: F) -> LaurentPoly
    where
        F: FnMut(&RatFunc) -> RatFunc,
    {
        let mut out = LaurentPoly::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, f(c));
        }
        out
    }

    pub fn to_string_with(&self, rank: usize, syms: &ParamSymbols) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .rev()
            .map(|(e, c)| format!("({})*x[{}]", c.to_canonical_string(syms), e.to_coord_string(rank)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        self.combine(&rhs, false)
    }
}
impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.combine(rhs, false)
    }
}
impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        self.combine(&rhs, true)
    }
}
impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.combine(rhs, true)
    }
}
impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        self.mul_ref(&rhs)
    }
}
impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.mul_ref(rhs)
    }
}
impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}
impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -(self.clone())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rank = self
            .terms
            .keys()
            .filter_map(|e| e.half.iter().rposition(|&h| h != 0))
            .max()
            .map_or(1, |p| p + 1);
        write!(f, "{}", self.to_string_with(rank, &ParamSymbols::default()))
    }
}

/// `sum_i c_i x_{e_i}` from `(coords, integer coefficient)` pairs; handy in tests.
pub fn laurent_from_ints(terms: &[(&[i64], i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(
        terms
            .iter()
            .map(|(e, c)| (Weight::from_coords(e), RatFunc::from_int(*c))),
    )
}
