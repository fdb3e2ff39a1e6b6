//! Sparse multivariate polynomials over the rationals in a fixed, small
//! number of parameter symbols.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Number of parameter symbols every polynomial carries.
pub const NVARS: usize = 3;

/// Exponent vector of a parameter monomial.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// of symbol 0, then symbol 1, and so on.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(pub [u32; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(i: usize, e: u32) -> Monomial {
        let mut m = [0; NVARS];
        m[i] = e;
        Monomial(m)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a += *b;
        }
        Monomial(m)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        let mut m = other.0;
        for (a, b) in m.iter_mut().zip(self.0.iter()) {
            *a -= *b;
        }
        Monomial(m)
    }

    pub fn meet(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a = (*a).min(*b);
        }
        Monomial(m)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial with terms sorted ascending in the monomial order; no zero
/// coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, BigRational)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(Monomial::ONE, c)],
            }
        }
    }

    pub fn from_int(c: i64) -> Poly {
        Poly::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn term(m: Monomial, c: BigRational) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn var(i: usize) -> Poly {
        Poly::term(Monomial::var(i, 1), BigRational::one())
    }

    /// Builds a polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(it: I) -> Poly {
        let mut acc: HashMap<Monomial, BigRational> = HashMap::new();
        for (m, c) in it {
            *acc.entry(m).or_insert_with(BigRational::zero) += c;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by_key(|a| a.0);
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Constant value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            Some(BigRational::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    /// Highest term in the monomial order.
    pub fn leading(&self) -> Option<&(Monomial, BigRational)> {
        self.terms.last()
    }

    /// Lowest term in the monomial order.
    pub fn trailing(&self) -> Option<&(Monomial, BigRational)> {
        self.terms.first()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[var]).max().unwrap_or(0)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.0[var] > 0)
    }

    /// Componentwise minimum of all exponents.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::ONE,
            Some((m0, _)) => it.fold(*m0, |acc, (m, _)| acc.meet(m)),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (*m, a * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Poly {
        // multiplication by a monomial preserves the order
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c.clone())).collect(),
        }
    }

    /// Divides every exponent by `mono`, assuming divisibility.
    pub fn div_monomial(&self, mono: &Monomial) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (mono.quotient(m), c.clone()))
                .collect(),
        }
    }

    fn merge(&self, other: &Poly, negate_other: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp(mb) {
                Ordering::Less => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((*mb, if negate_other { -cb } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((*ma, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        for (m, c) in &other.terms[j..] {
            out.push((*m, if negate_other { -c } else { c.clone() }));
        }
        Poly { terms: out }
    }

    pub fn mul_ref(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_monomial(m).scale(c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_monomial(m).scale(c);
        }
        let mut acc: HashMap<Monomial, BigRational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let prod = ca * cb;
                match acc.get_mut(&ma.mul(mb)) {
                    Some(v) => *v += prod,
                    None => {
                        acc.insert(ma.mul(mb), prod);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by_key(|a| a.0);
        Poly { terms }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if d.terms.len() == 1 {
            let (m, c) = &d.terms[0];
            if !self.terms.iter().all(|(mm, _)| m.divides(mm)) {
                return None;
            }
            let inv = c.recip();
            return Some(self.div_monomial(m).scale(&inv));
        }
        let (lm, lc) = d.leading().unwrap().clone();
        let lc_inv = lc.recip();
        // per-variable degree bound on the quotient
        for v in 0..NVARS {
            if d.degree_in(v) > self.degree_in(v) {
                return None;
            }
        }
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((rm, rc)) = rem.leading().cloned() {
            if !lm.divides(&rm) {
                return None;
            }
            let qm = lm.quotient(&rm);
            let qc = rc * &lc_inv;
            let sub = d.mul_monomial(&qm).scale(&qc);
            rem = rem.merge(&sub, true);
            quot.push((qm, qc));
        }
        quot.sort_by_key(|a| a.0);
        Some(Poly { terms: quot })
    }

    /// Evaluates after substituting each variable by a polynomial.
    pub fn compose(&self, images: &[Poly; NVARS]) -> Poly {
        let mut cache: Vec<Vec<Poly>> = vec![vec![Poly::one()]; NVARS];
        let mut acc = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for v in 0..NVARS {
                let e = m.0[v] as usize;
                if e == 0 {
                    continue;
                }
                while cache[v].len() <= e {
                    let next = cache[v].last().unwrap().mul_ref(&images[v]);
                    cache[v].push(next);
                }
                t = t.mul_ref(&cache[v][e]);
            }
            acc = acc + t;
        }
        acc
    }

    /// Rescales so that the lowest term has coefficient one.
    pub fn normalize_trailing(&self) -> Poly {
        match self.trailing() {
            None => Poly::zero(),
            Some((_, c)) => {
                if c.is_one() {
                    self.clone()
                } else {
                    self.scale(&c.recip())
                }
            }
        }
    }

    /// Greatest common divisor, normalized with trailing coefficient one.
    pub fn gcd(&self, other: &Poly) -> Poly {
        gcd::gcd(self, other).normalize_trailing()
    }

    /// `x_v^k` substituted by `x_v^(k/g)` for every variable, where `g` is
    /// given per variable; exponents must be divisible.
    pub(crate) fn deflate(&self, g: &[u32; NVARS]) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0;
                    for v in 0..NVARS {
                        if g[v] > 1 {
                            e[v] /= g[v];
                        }
                    }
                    (Monomial(e), c.clone())
                })
                .collect::<Vec<_>>(),
        }
        .resorted()
    }

    pub(crate) fn inflate(&self, g: &[u32; NVARS]) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0;
                    for v in 0..NVARS {
                        if g[v] > 1 {
                            e[v] *= g[v];
                        }
                    }
                    (Monomial(e), c.clone())
                })
                .collect::<Vec<_>>(),
        }
        .resorted()
    }

    fn resorted(mut self) -> Poly {
        self.terms.sort_by_key(|a| a.0);
        self
    }

    /// Per-variable gcd of all exponents (0 when the variable is absent).
    pub(crate) fn exponent_gcds(&self) -> [u32; NVARS] {
        let mut g = [0u32; NVARS];
        for (m, _) in &self.terms {
            for v in 0..NVARS {
                g[v] = g[v].gcd(&m.0[v]);
            }
        }
        g
    }

    /// Coefficients as a polynomial in `var` over the remaining variables.
    pub(crate) fn to_univariate(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var) as usize;
        let mut parts: Vec<Vec<(Monomial, BigRational)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let mut e = m.0;
            let k = e[var] as usize;
            e[var] = 0;
            parts[k].push((Monomial(e), c.clone()));
        }
        parts
            .into_iter()
            .map(|mut t| {
                t.sort_by_key(|a| a.0);
                Poly { terms: t }
            })
            .collect()
    }

    pub(crate) fn from_univariate(var: usize, coeffs: &[Poly]) -> Poly {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut e = m.0;
                e[var] += k as u32;
                terms.push((Monomial(e), a.clone()));
            }
        }
        Poly { terms }.resorted()
    }

    /// Content over the rationals made integral: the positive rational `c`
    /// with `self / c` having coprime integer coefficients.
    pub fn rational_content(&self) -> BigRational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            BigRational::one()
        } else {
            BigRational::new(num.abs(), den)
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        self.merge(&rhs, false)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.merge(rhs, false)
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self.merge(&rhs, true)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.merge(rhs, true)
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        self.mul_ref(&rhs)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.mul_ref(rhs)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -(self.clone())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", c)?;
            for (v, e) in m.0.iter().enumerate() {
                if *e > 0 {
                    write!(f, "*X{}^{}", v, e)?;
                }
            }
        }
        Ok(())
    }
}

mod gcd {
    use super::*;

    pub(super) fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        let ma = a.monomial_content();
        let mb = b.monomial_content();
        let mg = ma.meet(&mb);
        let a = a.div_monomial(&ma);
        let b = b.div_monomial(&mb);
        if a.is_constant() || b.is_constant() {
            return Poly::term(mg, BigRational::one());
        }
        // deflate shared exponent strides
        let ga = a.exponent_gcds();
        let gb = b.exponent_gcds();
        let mut g = [1u32; NVARS];
        for v in 0..NVARS {
            let s = ga[v].gcd(&gb[v]);
            g[v] = if s == 0 { 1 } else { s };
        }
        let deflated = g.iter().any(|&s| s > 1);
        let (a, b) = if deflated {
            (a.deflate(&g), b.deflate(&g))
        } else {
            (a, b)
        };
        let core = gcd_no_monomial(&a, &b);
        let core = if deflated { core.inflate(&g) } else { core };
        core.mul_monomial(&mg)
    }

    /// gcd of two polynomials that share no monomial factor.
    fn gcd_no_monomial(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        if a.is_constant() || b.is_constant() {
            return Poly::one();
        }
        let var = match (0..NVARS).find(|&v| a.uses_var(v) || b.uses_var(v)) {
            Some(v) => v,
            None => return Poly::one(),
        };
        let ua = a.to_univariate(var);
        let ub = b.to_univariate(var);
        let ca = content(&ua);
        let cb = content(&ub);
        let c = gcd(&ca, &cb).normalize_trailing();
        let pa: Vec<Poly> = ua.iter().map(|p| p.div_exact(&ca).unwrap()).collect();
        let pb: Vec<Poly> = ub.iter().map(|p| p.div_exact(&cb).unwrap()).collect();
        let g = prs(pa, pb);
        let g = Poly::from_univariate(var, &g);
        c.mul_ref(&g)
    }

    fn trim(v: &mut Vec<Poly>) {
        while v.len() > 1 && v.last().unwrap().is_zero() {
            v.pop();
        }
        if v.len() == 1 && v[0].is_zero() {
            v.clear();
        }
    }

    /// gcd of the coefficient list, as a polynomial in the other variables.
    fn content(u: &[Poly]) -> Poly {
        let mut g = Poly::zero();
        for c in u.iter().filter(|c| !c.is_zero()) {
            g = if g.is_zero() { c.clone() } else { gcd(&g, c) };
            if g.is_constant() {
                return Poly::one();
            }
        }
        g.normalize_trailing()
    }

    fn primitive(u: Vec<Poly>) -> Vec<Poly> {
        let c = content(&u);
        let r: Vec<Poly> = if c.is_one() {
            u
        } else {
            u.iter().map(|p| p.div_exact(&c).unwrap()).collect()
        };
        // keep rational coefficients small
        let lead = r.iter().rev().find(|p| !p.is_zero()).unwrap();
        let s = lead.leading().unwrap().1.recip();
        r.into_iter().map(|p| p.scale(&s)).collect()
    }

    fn prem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
        let mut r: Vec<Poly> = a.to_vec();
        let db = b.len() - 1;
        let lb = &b[db];
        trim(&mut r);
        while !r.is_empty() && r.len() > db {
            let dr = r.len() - 1;
            let lr = r[dr].clone();
            let shift = dr - db;
            let mut next: Vec<Poly> = r.iter().map(|p| p.mul_ref(lb)).collect();
            for (k, bc) in b.iter().enumerate() {
                let t = bc.mul_ref(&lr);
                next[k + shift] = &next[k + shift] - &t;
            }
            r = next;
            trim(&mut r);
        }
        r
    }

    fn prs(a: Vec<Poly>, b: Vec<Poly>) -> Vec<Poly> {
        let (mut a, mut b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        trim(&mut a);
        trim(&mut b);
        loop {
            if b.is_empty() {
                return primitive(a);
            }
            if b.len() == 1 {
                return vec![Poly::one()];
            }
            let r = prem(&a, &b);
            if r.is_empty() {
                return primitive(b);
            }
            a = b;
            b = primitive(r);
        }
    }
}
