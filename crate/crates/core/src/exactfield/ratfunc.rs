//! Normalized quotients of parameter polynomials: the coefficient field.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::params::{ParamSymbols, Q_DENOM};
use super::poly::{Monomial, Poly, NVARS};
use super::FieldError;

/// `num / den` with `gcd(num, den) = 1` and the lowest term of `den`
/// carrying coefficient `+1`. Zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

/// Value assigned to a parameter symbol during specialization:
/// `sign * V^exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonomialValue {
    pub sign: i8,
    pub exponent: i64,
}

impl RatFunc {
    pub fn zero() -> RatFunc {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> RatFunc {
        RatFunc {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn from_int(n: i64) -> RatFunc {
        RatFunc::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> RatFunc {
        RatFunc::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(c: BigRational) -> RatFunc {
        RatFunc {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    /// `sign * X_var^e` for an integer (possibly negative) exponent.
    pub fn var_power(var: usize, e: i64, sign: i8) -> RatFunc {
        let c = BigRational::from_integer(BigInt::from(sign));
        if e >= 0 {
            RatFunc {
                num: Poly::term(Monomial::var(var, e as u32), c),
                den: Poly::one(),
            }
        } else {
            RatFunc {
                num: Poly::constant(c),
                den: Poly::term(Monomial::var(var, (-e) as u32), BigRational::one()),
            }
        }
    }

    /// `q^(e / Q_DENOM)`.
    pub fn q_power(e: i64) -> RatFunc {
        RatFunc::var_power(0, e, 1)
    }

    /// Canonical representative of `num / den`.
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc, FieldError> {
        if den.is_zero() {
            return Err(FieldError::ZeroDenominator);
        }
        Ok(RatFunc::normalize(num, den))
    }

    pub(crate) fn normalize(num: Poly, den: Poly) -> RatFunc {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFunc::zero();
        }
        let (num, den) = if let Some(c) = den.as_constant() {
            (num.scale(&c.recip()), Poly::one())
        } else if num.is_monomial() || den.is_monomial() {
            let g = num.monomial_content().meet(&den.monomial_content());
            (num.div_monomial(&g), den.div_monomial(&g))
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
            }
        };
        let lc = den.trailing().unwrap().1.clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// Single-term numerator over a single-term denominator.
    pub fn is_monomial(&self) -> bool {
        self.num.is_monomial() && self.den.is_monomial()
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.num.uses_var(v) || self.den.uses_var(v)
    }

    pub fn inv(&self) -> Result<RatFunc, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroDenominator);
        }
        Ok(RatFunc::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, c: &BigRational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: i64) -> RatFunc {
        let base = if e < 0 {
            self.inv().expect("negative power of zero")
        } else {
            self.clone()
        };
        let e = e.unsigned_abs() as u32;
        RatFunc {
            num: base.num.pow(e),
            den: base.den.pow(e),
        }
    }

    fn add_impl(&self, other: &RatFunc, negate: bool) -> RatFunc {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other } else { other.clone() };
        }
        let rhs_num = if negate { -&other.num } else { other.num.clone() };
        if self.den == other.den {
            let n = &self.num + &rhs_num;
            if self.den.is_one() {
                return RatFunc {
                    num: n,
                    den: Poly::one(),
                };
            }
            return RatFunc::normalize(n, self.den.clone());
        }
        if self.den.is_monomial() && other.den.is_monomial() {
            let (ma, mb) = (self.den.terms()[0].0, other.den.terms()[0].0);
            let l = lcm_monomial(&ma, &mb);
            let n = self.num.mul_monomial(&ma.quotient(&l)) + rhs_num.mul_monomial(&mb.quotient(&l));
            return RatFunc::normalize(n, Poly::term(l, BigRational::one()));
        }
        let g = self.den.gcd(&other.den);
        let da = self.den.div_exact(&g).unwrap();
        let db = other.den.div_exact(&g).unwrap();
        let n = &self.num * &db + &rhs_num * &da;
        RatFunc::normalize(n, &self.den * &db)
    }

    fn mul_impl(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return RatFunc {
                num: &self.num * &other.num,
                den: Poly::one(),
            };
        }
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let (n1, d2) = if g1.is_one() {
            (self.num.clone(), other.den.clone())
        } else {
            (self.num.div_exact(&g1).unwrap(), other.den.div_exact(&g1).unwrap())
        };
        let (n2, d1) = if g2.is_one() {
            (other.num.clone(), self.den.clone())
        } else {
            (other.num.div_exact(&g2).unwrap(), self.den.div_exact(&g2).unwrap())
        };
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let lc = den.trailing().unwrap().1.clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    /// Substitutes symbols by signed powers of `V`; symbols mapped to `None`
    /// are left alone.
    pub fn specialize(
        &self,
        assignment: &[Option<MonomialValue>; NVARS],
    ) -> Result<RatFunc, FieldError> {
        if assignment.iter().all(|a| a.is_none()) {
            return Ok(self.clone());
        }
        let (n, ns) = specialize_poly(&self.num, assignment);
        let (d, ds) = specialize_poly(&self.den, assignment);
        if d.is_zero() {
            return Err(FieldError::SingularSpecialization(format!(
                "denominator {} vanishes",
                self.den_string_default()
            )));
        }
        // value = n V^-ns / (d V^-ds)
        let shift = ds - ns;
        let (n, d) = if shift >= 0 {
            (n.mul_monomial(&Monomial::var(0, shift as u32)), d)
        } else {
            (n, d.mul_monomial(&Monomial::var(0, (-shift) as u32)))
        };
        Ok(RatFunc::normalize(n, d))
    }

    /// Parameter involution: every symbol `X` goes to `X^{-1}`.
    pub fn star(&self) -> RatFunc {
        let (n, nd) = invert_poly(&self.num);
        let (d, dd) = invert_poly(&self.den);
        // value = n / X^nd  /  (d / X^dd) = n X^dd / (d X^nd)
        let g = nd.meet(&dd);
        let n = n.mul_monomial(&g.quotient(&dd));
        let d = d.mul_monomial(&g.quotient(&nd));
        RatFunc::normalize(n, d)
    }

    /// Applies `X_var -> sign * X_var^{-1}` to one symbol.
    pub fn invert_var(&self, var: usize, sign: i8) -> RatFunc {
        let (n, ne) = invert_one(&self.num, var, sign);
        let (d, de) = invert_one(&self.den, var, sign);
        let (n, d) = if de >= ne {
            (n.mul_monomial(&Monomial::var(var, de - ne)), d)
        } else {
            (n, d.mul_monomial(&Monomial::var(var, ne - de)))
        };
        RatFunc::normalize(n, d)
    }

    fn den_string_default(&self) -> String {
        format!("{:?}", self.den)
    }

    /// Canonical string with the given symbol names.
    pub fn to_canonical_string(&self, syms: &ParamSymbols) -> String {
        super::display::ratfunc_string(self, syms)
    }
}

fn lcm_monomial(a: &Monomial, b: &Monomial) -> Monomial {
    let mut m = a.0;
    for (x, y) in m.iter_mut().zip(b.0.iter()) {
        *x = (*x).max(*y);
    }
    Monomial(m)
}

/// Substitutes and returns `(p', s)` with value `p' * V^{-s}`.
fn specialize_poly(p: &Poly, assignment: &[Option<MonomialValue>; NVARS]) -> (Poly, i64) {
    let mut raw: Vec<(i64, Monomial, BigRational)> = Vec::with_capacity(p.len());
    for (m, c) in p.terms() {
        let mut e = m.0;
        let mut vexp: i64 = e[0] as i64;
        let mut c = c.clone();
        for v in 0..NVARS {
            if let Some(val) = assignment[v] {
                let k = e[v] as i64;
                if v == 0 {
                    vexp = 0;
                }
                vexp += val.exponent * k;
                if val.sign < 0 && k % 2 == 1 {
                    c = -c;
                }
                e[v] = 0;
            }
        }
        e[0] = 0;
        raw.push((vexp, Monomial(e), c));
    }
    let min = raw.iter().map(|r| r.0).min().unwrap_or(0);
    let shift = if min < 0 { -min } else { 0 };
    let poly = Poly::from_terms(raw.into_iter().map(|(ve, mut m, c)| {
        m.0[0] = (ve + shift) as u32;
        (m, c)
    }));
    (poly, shift)
}

/// `p(1/X)` written as `p' / X^deg`.
fn invert_poly(p: &Poly) -> (Poly, Monomial) {
    let mut deg = [0u32; NVARS];
    for v in 0..NVARS {
        deg[v] = p.degree_in(v);
    }
    let q = Poly::from_terms(p.terms().iter().map(|(m, c)| {
        let mut e = [0u32; NVARS];
        for v in 0..NVARS {
            e[v] = deg[v] - m.0[v];
        }
        (Monomial(e), c.clone())
    }));
    (q, Monomial(deg))
}

fn invert_one(p: &Poly, var: usize, sign: i8) -> (Poly, u32) {
    let deg = p.degree_in(var);
    let q = Poly::from_terms(p.terms().iter().map(|(m, c)| {
        let mut e = m.0;
        let k = e[var];
        e[var] = deg - k;
        let c = if sign < 0 && k % 2 == 1 { -c.clone() } else { c.clone() };
        (Monomial(e), c)
    }));
    (q, deg)
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        self.add_impl(&rhs, false)
    }
}
impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        self.add_impl(rhs, false)
    }
}
impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        self.add_impl(&rhs, true)
    }
}
impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self.add_impl(rhs, true)
    }
}
impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        self.mul_impl(&rhs)
    }
}
impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        self.mul_impl(rhs)
    }
}
impl Div for RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: RatFunc) -> RatFunc {
        self.mul_impl(&rhs.inv().expect("division by zero"))
    }
}
impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.mul_impl(&rhs.inv().expect("division by zero"))
    }
}
impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -self.num,
            den: self.den,
        }
    }
}
impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_canonical_string(&ParamSymbols::default()))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_canonical_string(&ParamSymbols::default()))
    }
}

/// `q^r` for a rational `r` that must be a multiple of `1 / Q_DENOM`.
pub fn q_rational_power(r: &BigRational) -> Result<RatFunc, FieldError> {
    let scaled = r * BigRational::from_integer(BigInt::from(Q_DENOM));
    if !scaled.is_integer() {
        return Err(FieldError::QPowerNotRepresentable(r.to_string()));
    }
    let e: i64 = scaled
        .to_integer()
        .try_into()
        .map_err(|_| FieldError::QPowerNotRepresentable(r.to_string()))?;
    Ok(RatFunc::q_power(e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> RatFunc {
        RatFunc::q_power(Q_DENOM)
    }
    fn t() -> RatFunc {
        RatFunc::var_power(1, 2, 1)
    }
    fn one() -> RatFunc {
        RatFunc::one()
    }

    #[test]
    fn common_factor_cancels() {
        // (q - q^2) / (1 - q) = q
        let num = &q() - &(&q() * &q());
        let den = &one() - &q();
        let r = RatFunc::new(
            (&num * &den.inv().unwrap()).numer().clone(),
            (&num * &den.inv().unwrap()).denom().clone(),
        )
        .unwrap();
        assert_eq!(r, q());
        let direct = RatFunc::new(num.numer().clone(), den.numer().clone()).unwrap();
        assert_eq!(direct, q());
    }

    #[test]
    fn zero_numerator_is_canonical_zero() {
        let den = &one() - &(&q() * &t());
        let r = RatFunc::new(Poly::zero(), den.numer().clone()).unwrap();
        assert!(r.is_zero());
        assert!(r.denom().is_one());
    }

    #[test]
    fn coprime_quotient_untouched() {
        let num = &(&one() - &t()) * &(&one() + &q());
        let den = &one() - &(&q() * &t());
        let r = RatFunc::new(num.numer().clone(), den.numer().clone()).unwrap();
        assert_eq!(r.numer(), num.numer());
        assert_eq!(r.denom(), den.numer());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(
            RatFunc::new(Poly::one(), Poly::zero()),
            Err(FieldError::ZeroDenominator)
        ));
    }

    #[test]
    fn star_inverts_symbols() {
        let f = &q() + &t();
        let s = f.star();
        let expect = &q().inv().unwrap() + &t().inv().unwrap();
        assert_eq!(s, expect);
        assert_eq!(s.star(), f);
    }
}
