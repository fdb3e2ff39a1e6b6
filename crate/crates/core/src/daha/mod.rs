//! Demazure–Lusztig operators and their products, materialized as finite
//! sums `sum h_{b,w} b' w` with coefficients rational in `x`.

mod xfrac;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::exactfield::{
    length_var, FieldError, LaurentPoly, MonomialValue, ParamSymbols, RatFunc, Weight, NVARS,
    Q_DENOM,
};
use crate::rootdata::{ExtAffine, RootSystem};
use crate::symfun::SymPoly;

pub use xfrac::{Binomial, XFrac};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DahaError {
    #[error("operator image is not a Laurent polynomial")]
    NotLaurent,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Finite sum of `(coefficient, b' w)` terms.
#[derive(Clone, Debug, Default)]
pub struct AffineOp {
    terms: BTreeMap<ExtAffine, XFrac>,
}

impl PartialEq for AffineOp {
    fn eq(&self, o: &AffineOp) -> bool {
        self.terms.len() == o.terms.len()
            && self
                .terms
                .iter()
                .all(|(g, h)| o.terms.get(g).is_some_and(|h2| h == h2))
    }
}

impl AffineOp {
    pub fn zero() -> AffineOp {
        AffineOp::default()
    }

    pub fn identity(sys: &RootSystem) -> AffineOp {
        AffineOp::single(XFrac::one(), sys.ext_identity())
    }

    pub fn single(h: XFrac, g: ExtAffine) -> AffineOp {
        let mut op = AffineOp::zero();
        op.add_term(g, h);
        op
    }

    /// Multiplication by a scalar.
    pub fn scalar(sys: &RootSystem, c: RatFunc) -> AffineOp {
        AffineOp::single(XFrac::constant(c), sys.ext_identity())
    }

    pub fn add_term(&mut self, g: ExtAffine, h: XFrac) {
        if h.is_zero() {
            return;
        }
        let v = match self.terms.remove(&g) {
            Some(old) => old.add(&h),
            None => h,
        };
        if !v.is_zero() {
            self.terms.insert(g, v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExtAffine, &XFrac)> {
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

    fn from_groups(groups: BTreeMap<ExtAffine, Vec<XFrac>>) -> AffineOp {
        let mut terms = BTreeMap::new();
        for (g, hs) in groups {
            let h = XFrac::sum(hs.iter());
            if !h.is_zero() {
                terms.insert(g, h);
            }
        }
        AffineOp { terms }
    }

    pub fn add(&self, o: &AffineOp) -> AffineOp {
        let mut groups: BTreeMap<ExtAffine, Vec<XFrac>> = BTreeMap::new();
        for (g, h) in self.terms.iter().chain(o.terms.iter()) {
            groups.entry(*g).or_default().push(h.clone());
        }
        AffineOp::from_groups(groups)
    }

    pub fn neg(&self) -> AffineOp {
        AffineOp {
            terms: self.terms.iter().map(|(g, h)| (*g, h.neg())).collect(),
        }
    }

    pub fn sub(&self, o: &AffineOp) -> AffineOp {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &RatFunc) -> AffineOp {
        let mut out = AffineOp::zero();
        for (g, h) in &self.terms {
            out.add_term(*g, h.scale(c));
        }
        out
    }

    /// `A B`: `(h1 g1)(h2 g2) = h1 g1(h2) g1 g2`.
    pub fn compose(&self, sys: &RootSystem, o: &AffineOp) -> AffineOp {
        let mut groups: BTreeMap<ExtAffine, Vec<XFrac>> = BTreeMap::new();
        for (g1, h1) in &self.terms {
            for (g2, h2) in &o.terms {
                let h = h1.mul(&h2.act(sys, g1));
                groups.entry(sys.ext_mul(g1, g2)).or_default().push(h);
            }
        }
        AffineOp::from_groups(groups)
    }

    /// `[A]_dagger`: drop the finite Weyl parts.
    pub fn dagger(&self) -> AffineOp {
        let mut groups: BTreeMap<ExtAffine, Vec<XFrac>> = BTreeMap::new();
        for (g, h) in &self.terms {
            groups
                .entry(ExtAffine { shift: g.shift, w: 0 })
                .or_default()
                .push(h.clone());
        }
        AffineOp::from_groups(groups)
    }

    /// Applies the operator to a Laurent polynomial; the result must again
    /// be a Laurent polynomial.
    pub fn apply(&self, sys: &RootSystem, f: &LaurentPoly) -> Result<LaurentPoly, DahaError> {
        let l = XFrac::common_denominator(self.terms.values());
        let mut num = LaurentPoly::zero();
        for (g, h) in &self.terms {
            num = &num + &h.numer_over(&l).mul_ref(&sys.act_laurent(g, f));
        }
        for b in &l {
            num = num.exact_divide(&b.expand()).map_err(|_| DahaError::NotLaurent)?;
        }
        Ok(num)
    }

    /// Applies the operator to a rational function of `x`.
    pub fn apply_xfrac(&self, sys: &RootSystem, f: &XFrac) -> XFrac {
        let parts: Vec<XFrac> = self
            .terms
            .iter()
            .map(|(g, h)| h.mul(&f.act(sys, g)))
            .collect();
        XFrac::sum(parts.iter())
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&ExtAffine, &XFrac) -> XFrac) -> AffineOp {
        let mut out = AffineOp::zero();
        for (g, h) in &self.terms {
            out.add_term(*g, f(g, h));
        }
        out
    }

    pub fn specialize(&self, assignment: &[Option<MonomialValue>; NVARS]) -> Result<AffineOp, FieldError> {
        let mut out = AffineOp::zero();
        for (g, h) in &self.terms {
            out.add_term(*g, h.specialize(assignment)?);
        }
        Ok(out)
    }

    /// One line per term: `coef | shift | weylpart-word`.
    pub fn dump(&self, sys: &RootSystem, syms: &ParamSymbols) -> String {
        let mut s = String::new();
        for (g, h) in &self.terms {
            let word = sys.weyl.word(g.w);
            let word = if word.is_empty() {
                "id".to_string()
            } else {
                word.iter().map(|i| format!("s{}", i)).collect::<Vec<_>>().join(" ")
            };
            let _ = writeln!(
                s,
                "{} | {} | {}",
                h.to_string_with(sys.rank, syms),
                g.shift.to_coord_string(sys.rank),
                word
            );
        }
        s
    }
}

/// Operator algebra for one root system at one choice of `t^{1/2}`.
pub struct Daha<'a> {
    pub sys: &'a RootSystem,
    t_half: Vec<RatFunc>,
}

impl<'a> Daha<'a> {
    /// `t_half[class]` is the value of `t_nu^{1/2}`, long class first.
    pub fn new(sys: &'a RootSystem, t_half: Vec<RatFunc>) -> Daha<'a> {
        assert_eq!(t_half.len(), sys.num_classes());
        Daha { sys, t_half }
    }

    /// Formal parameters `t_nu^{1/2} = U_nu`.
    pub fn formal(sys: &'a RootSystem) -> Daha<'a> {
        let t_half = (0..sys.num_classes())
            .map(|c| RatFunc::var_power(length_var(c), 1, 1))
            .collect();
        Daha { sys, t_half }
    }

    pub fn t_half(&self) -> &[RatFunc] {
        &self.t_half
    }

    fn class_of(&self, j: usize) -> usize {
        if j == 0 {
            0
        } else {
            self.sys.class[j - 1]
        }
    }

    /// `x_{a_j}` as `(exponent, q-power)`; `x_{a_0} = q x_{-theta}`.
    fn x_aj(&self, j: usize) -> (Weight, i64) {
        if j == 0 {
            (self.sys.theta_coweight.neg(), Q_DENOM)
        } else {
            (self.sys.simple_coroot(j - 1), 0)
        }
    }

    /// `T_j = t^{1/2} s_j + (t^{1/2} - t^{-1/2}) (x_{a_j} - 1)^{-1} (s_j - 1)`.
    pub fn op_t(&self, j: usize) -> AffineOp {
        let u = &self.t_half[self.class_of(j)];
        let c = u - &u.inv().expect("t^{1/2} is nonzero");
        let (a, k) = self.x_aj(j);
        let r = XFrac::recip_binomial(a, k).scale(&c);
        let mut op = AffineOp::zero();
        op.add_term(self.sys.ext_simple(j), r.add(&XFrac::constant(u.clone())));
        op.add_term(self.sys.ext_identity(), r.neg());
        op
    }

    /// `T_j^{-1} = T_j - (t^{1/2} - t^{-1/2})`.
    pub fn op_t_inv(&self, j: usize) -> AffineOp {
        let u = &self.t_half[self.class_of(j)];
        let c = u - &u.inv().unwrap();
        self.op_t(j).add(&AffineOp::scalar(self.sys, -c))
    }

    pub fn op_pi(&self, r: usize) -> AffineOp {
        AffineOp::single(XFrac::one(), self.sys.ext_pi(r))
    }

    pub fn op_pi_inv(&self, r: usize) -> AffineOp {
        AffineOp::single(XFrac::one(), self.sys.ext_inv(&self.sys.ext_pi(r)))
    }

    pub fn compose(&self, a: &AffineOp, b: &AffineOp) -> AffineOp {
        a.compose(self.sys, b)
    }

    /// `T_{pi_r s_{j_1} ... s_{j_l}} = pi_r T_{j_1} ... T_{j_l}`.
    pub fn op_t_word(&self, r: usize, word: &[usize]) -> AffineOp {
        word.iter()
            .fold(self.op_pi(r), |acc, &j| self.compose(&acc, &self.op_t(j)))
    }

    /// `T_g` for `g` in `W^b`, via a reduced word.
    pub fn op_t_elem(&self, g: &ExtAffine) -> AffineOp {
        let (r, word) = self.sys.reduced_word(g);
        self.op_t_word(r, &word)
    }

    /// Inverse of `T_g`: `T_{j_l}^{-1} ... T_{j_1}^{-1} pi_r^{-1}`.
    pub fn op_t_elem_inv(&self, g: &ExtAffine) -> AffineOp {
        self.fold(&self.t_elem_inv_factors(g))
    }

    fn t_elem_factors(&self, g: &ExtAffine) -> Vec<AffineOp> {
        let (r, word) = self.sys.reduced_word(g);
        let mut out = vec![self.op_pi(r)];
        out.extend(word.iter().map(|&j| self.op_t(j)));
        out
    }

    fn t_elem_inv_factors(&self, g: &ExtAffine) -> Vec<AffineOp> {
        let (r, word) = self.sys.reduced_word(g);
        let mut out: Vec<AffineOp> = word.iter().rev().map(|&j| self.op_t_inv(j)).collect();
        out.push(self.op_pi_inv(r));
        out
    }

    fn fold(&self, factors: &[AffineOp]) -> AffineOp {
        factors
            .iter()
            .fold(AffineOp::identity(self.sys), |acc, f| self.compose(&acc, f))
    }

    /// `Y_b = Y_{b_+} Y_{b_-}^{-1}` as a product of `T_j^{+-1}` and `pi_r^{+-1}`,
    /// leftmost first, with `Y_c = T_{c'}` for dominant `c`.
    fn y_factors(&self, b: &Weight) -> Vec<AffineOp> {
        let n = self.sys.rank;
        let plus: Vec<i64> = (0..n).map(|i| b.coord(i).max(0)).collect();
        let minus: Vec<i64> = (0..n).map(|i| (-b.coord(i)).max(0)).collect();
        let mut out = self.t_elem_factors(&self.sys.ext_translation(&Weight::from_coords(&plus)));
        if minus.iter().any(|&c| c != 0) {
            out.extend(self.t_elem_inv_factors(&self.sys.ext_translation(&Weight::from_coords(&minus))));
        }
        out
    }

    pub fn op_y(&self, b: &Weight) -> AffineOp {
        self.fold(&self.y_factors(b))
    }

    /// `Y_b g`, applying one factor at a time.
    pub fn apply_y(&self, b: &Weight, g: &LaurentPoly) -> Result<LaurentPoly, DahaError> {
        self.y_factors(b)
            .iter()
            .rev()
            .try_fold(g.clone(), |acc, f| f.apply(self.sys, &acc))
    }

    /// `f(Y) g`; for W-invariant `g` this is `L_f g`.
    pub fn apply_f_of_y(&self, f: &SymPoly, g: &LaurentPoly) -> Result<LaurentPoly, DahaError> {
        let mut acc = LaurentPoly::zero();
        for (b, u) in f.iter() {
            for c in self.sys.orbit_of(b) {
                acc = &acc + &self.apply_y(&c.neg(), g)?.scale(u);
            }
        }
        Ok(acc)
    }

    /// `f(Y)` for `f = sum u_b m_b`, each `m_b` read as `sum_{c in W(b)} Y_{-c}`.
    pub fn op_f_of_y(&self, f: &SymPoly) -> AffineOp {
        let mut acc = AffineOp::zero();
        for (b, u) in f.iter() {
            let mut part = AffineOp::zero();
            for c in self.sys.orbit_of(b) {
                part = part.add(&self.op_y(&c.neg()));
            }
            acc = acc.add(&part.scale(u));
        }
        acc
    }

    /// `L_f = [f(Y)]_dagger`.
    ///
    /// On W-invariant input `X f = [X]_dagger f` for every operator `X`, so
    /// each `Y_{-c}` is built right to left and reduced after every factor.
    pub fn op_lf(&self, f: &SymPoly) -> AffineOp {
        let mut acc = AffineOp::zero();
        for (b, u) in f.iter() {
            let mut part = AffineOp::zero();
            for c in self.sys.orbit_of(b) {
                let y = self
                    .y_factors(&c.neg())
                    .iter()
                    .rev()
                    .fold(AffineOp::identity(self.sys), |acc, f| self.compose(f, &acc).dagger());
                part = part.add(&y);
            }
            acc = acc.add(&part.scale(u));
        }
        acc
    }

    /// `iota`: `s_j -> -s_j`, `t^{1/2} -> -t^{-1/2}`, `x`, `q`, `pi_r` fixed.
    /// The operator must have been built with formal `t`.
    pub fn op_iota(&self, a: &AffineOp) -> AffineOp {
        let vars: Vec<usize> = (0..self.sys.num_classes()).map(length_var).collect();
        a.map_coeffs(|g, h| {
            let h = h.map_coeffs(|c| {
                vars.iter().fold(c.clone(), |acc, &v| acc.invert_var(v, -1))
            });
            if self.sys.length(g) % 2 == 1 {
                h.neg()
            } else {
                h
            }
        })
    }
}
