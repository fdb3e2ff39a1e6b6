//! Rational functions in `x` whose denominators are products of binomials
//! `x_a q^k - 1`.

use std::fmt;

use crate::exactfield::{
    FieldError, LaurentPoly, MonomialValue, ParamSymbols, RatFunc, Weight, NVARS,
};
use crate::rootdata::{ExtAffine, RootSystem};

/// `x_a V^k - 1` with `a` oriented so that `a > -a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Binomial {
    pub a: Weight,
    pub k: i64,
}

impl Binomial {
    pub fn expand(&self) -> LaurentPoly {
        let mut p = LaurentPoly::term(self.a, RatFunc::q_power(self.k));
        p.add_term(Weight::zero(), RatFunc::from_int(-1));
        p
    }

    /// Orients `x_a V^k - 1`; returns the factor and the monomial `u` with
    /// `1/(x_a V^k - 1) = u / factor`.
    fn oriented(a: Weight, k: i64) -> (Binomial, Option<LaurentPoly>) {
        if a > a.neg() {
            (Binomial { a, k }, None)
        } else {
            // x_a V^k - 1 = -x_a V^k (x_{-a} V^{-k} - 1)
            let u = LaurentPoly::term(a.neg(), -RatFunc::q_power(-k));
            (Binomial { a: a.neg(), k: -k }, Some(u))
        }
    }
}

/// `num / prod(den)`, `den` a sorted multiset.
#[derive(Clone)]
pub struct XFrac {
    num: LaurentPoly,
    den: Vec<Binomial>,
}

fn multiset_minus(a: &[Binomial], b: &[Binomial]) -> Vec<Binomial> {
    let mut out = Vec::new();
    let mut j = 0;
    for x in a {
        while j < b.len() && b[j] < *x {
            j += 1;
        }
        if j < b.len() && b[j] == *x {
            j += 1;
        } else {
            out.push(*x);
        }
    }
    out
}

fn multiset_union(a: &[Binomial], b: &[Binomial]) -> Vec<Binomial> {
    let mut out = a.to_vec();
    out.extend(multiset_minus(b, a));
    out.sort();
    out
}

fn expand_product(fs: &[Binomial]) -> LaurentPoly {
    fs.iter().fold(LaurentPoly::one(), |acc, f| acc.mul_ref(&f.expand()))
}

impl XFrac {
    pub fn zero() -> XFrac {
        XFrac { num: LaurentPoly::zero(), den: Vec::new() }
    }

    pub fn one() -> XFrac {
        XFrac::from_laurent(LaurentPoly::one())
    }

    pub fn from_laurent(num: LaurentPoly) -> XFrac {
        XFrac { num, den: Vec::new() }
    }

    pub fn constant(c: RatFunc) -> XFrac {
        XFrac::from_laurent(LaurentPoly::constant(c))
    }

    /// `1 / (x_a q^{k/Q_DENOM} - 1)`.
    pub fn recip_binomial(a: Weight, k: i64) -> XFrac {
        let (f, u) = Binomial::oriented(a, k);
        XFrac { num: u.unwrap_or_else(LaurentPoly::one), den: vec![f] }
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &[Binomial] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The Laurent polynomial, when the denominator has cancelled.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        if self.den.is_empty() {
            Some(&self.num)
        } else {
            None
        }
    }

    fn reduced(mut self) -> XFrac {
        if self.num.is_zero() {
            return XFrac::zero();
        }
        let mut keep = Vec::with_capacity(self.den.len());
        let mut i = 0;
        while i < self.den.len() {
            let f = self.den[i];
            let mut j = i;
            while j < self.den.len() && self.den[j] == f {
                j += 1;
            }
            let mut mult = j - i;
            let e = f.expand();
            while mult > 0 {
                match self.num.exact_divide(&e) {
                    Ok(q) => {
                        self.num = q;
                        mult -= 1;
                    }
                    Err(_) => break,
                }
            }
            keep.extend(std::iter::repeat_n(f, mult));
            i = j;
        }
        self.den = keep;
        self
    }

    pub fn scale(&self, c: &RatFunc) -> XFrac {
        if c.is_zero() {
            return XFrac::zero();
        }
        XFrac { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_laurent(&self, p: &LaurentPoly) -> XFrac {
        XFrac { num: self.num.mul_ref(p), den: self.den.clone() }.reduced()
    }

    pub fn mul(&self, o: &XFrac) -> XFrac {
        if self.is_zero() || o.is_zero() {
            return XFrac::zero();
        }
        let mut den = self.den.clone();
        den.extend(&o.den);
        den.sort();
        XFrac { num: self.num.mul_ref(&o.num), den }.reduced()
    }

    /// Sum over one common denominator, reduced once.
    pub fn sum<'a>(items: impl IntoIterator<Item = &'a XFrac>) -> XFrac {
        let items: Vec<&XFrac> = items.into_iter().filter(|x| !x.is_zero()).collect();
        match items.len() {
            0 => return XFrac::zero(),
            1 => return items[0].clone(),
            _ => {}
        }
        let l = XFrac::common_denominator(items.iter().copied());
        let mut num = LaurentPoly::zero();
        for x in &items {
            num = &num + &x.numer_over(&l);
        }
        XFrac { num, den: l }.reduced()
    }

    pub fn add(&self, o: &XFrac) -> XFrac {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return XFrac { num: &self.num + &o.num, den: self.den.clone() }.reduced();
        }
        let l = multiset_union(&self.den, &o.den);
        let a = self.num.mul_ref(&expand_product(&multiset_minus(&l, &self.den)));
        let b = o.num.mul_ref(&expand_product(&multiset_minus(&l, &o.den)));
        XFrac { num: &a + &b, den: l }.reduced()
    }

    pub fn neg(&self) -> XFrac {
        XFrac { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, o: &XFrac) -> XFrac {
        self.add(&o.neg())
    }

    /// `g(self)` for `g` in the extended affine Weyl group.
    pub fn act(&self, sys: &RootSystem, g: &ExtAffine) -> XFrac {
        let mut num = sys.act_laurent(g, &self.num);
        let mut den = Vec::with_capacity(self.den.len());
        for f in &self.den {
            let (a, dk) = sys.act_monomial(g, &f.a);
            let (f2, u) = Binomial::oriented(a, f.k + dk);
            if let Some(u) = u {
                num = num.mul_ref(&u);
            }
            den.push(f2);
        }
        den.sort();
        XFrac { num, den }
    }

    pub fn map_coeffs(&self, f: impl FnMut(&RatFunc) -> RatFunc) -> XFrac {
        XFrac { num: self.num.map_coeffs(f), den: self.den.clone() }
    }

    pub fn specialize(&self, assignment: &[Option<MonomialValue>; NVARS]) -> Result<XFrac, FieldError> {
        Ok(XFrac { num: self.num.specialize(assignment)?, den: self.den.clone() }.reduced())
    }

    /// Product of the denominator factors, expanded.
    pub fn denom_poly(&self) -> LaurentPoly {
        expand_product(&self.den)
    }

    /// Numerator over the multiset `l`, which must contain the denominator.
    pub fn numer_over(&self, l: &[Binomial]) -> LaurentPoly {
        self.num.mul_ref(&expand_product(&multiset_minus(l, &self.den)))
    }

    pub fn common_denominator<'a>(it: impl IntoIterator<Item = &'a XFrac>) -> Vec<Binomial> {
        it.into_iter().fold(Vec::new(), |acc, x| multiset_union(&acc, &x.den))
    }

    pub fn to_string_with(&self, rank: usize, syms: &ParamSymbols) -> String {
        let num = self.num.to_string_with(rank, syms);
        if self.den.is_empty() {
            return num;
        }
        let den: Vec<String> = self
            .den
            .iter()
            .map(|f| {
                let q = RatFunc::q_power(f.k).to_canonical_string(syms);
                if f.k == 0 {
                    format!("(x[{}] - 1)", f.a.to_coord_string(rank))
                } else {
                    format!("(x[{}]*{} - 1)", f.a.to_coord_string(rank), q)
                }
            })
            .collect();
        format!("({})/{}", num, den.join("*"))
    }
}

impl PartialEq for XFrac {
    fn eq(&self, o: &XFrac) -> bool {
        let a = self.num.mul_ref(&expand_product(&multiset_minus(&o.den, &self.den)));
        let b = o.num.mul_ref(&expand_product(&multiset_minus(&self.den, &o.den)));
        a == b
    }
}

impl fmt::Debug for XFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} / {:?}", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::laurent::laurent_from_ints;

    #[test]
    fn cancellation_and_equality() {
        let a = Weight::from_coords(&[2]);
        let r = XFrac::recip_binomial(a, 0);
        let p = laurent_from_ints(&[(&[2], 1), (&[0], -1)]);
        assert_eq!(r.mul_laurent(&p), XFrac::one());
        // 1/(x_{-a} - 1) = -x_a/(x_a - 1)
        let s = XFrac::recip_binomial(a.neg(), 0);
        let expect = r.mul_laurent(&laurent_from_ints(&[(&[2], -1)]));
        assert_eq!(s, expect);
        // 1/(x-1) + 1/(x^{-1}-1) = -1
        assert_eq!(r.add(&s), XFrac::constant(RatFunc::from_int(-1)));
    }
}
