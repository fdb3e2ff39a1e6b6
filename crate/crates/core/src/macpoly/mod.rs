//! The Macdonald pairing, the polynomials `p_b` (Gram–Schmidt at integral
//! `k`, triangular eigen-solve in general) and the twisted family `g_b`.

mod params;
mod series;

use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::daha::{AffineOp, Daha, DahaError};
use crate::exactfield::{FieldError, LaurentPoly, RatFunc, Weight, Q_DENOM};
use crate::rootdata::{RootError, RootSystem};
use crate::symfun::{monomial_symmetric, to_m_basis, SymError, SymPoly, SymTermJson};

pub use params::{parse_rational, MacParams, TSpec};
pub use series::QSeries;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MacError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("parameters {0} do not have nonnegative integral k")]
    NonIntegerK(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("degenerate pairing on the lower cone of {0}")]
    DegeneratePairing(String),
    #[error("degenerate spectrum at {0}")]
    DegenerateSpectrum(String),
    #[error("singular specialization: {0}")]
    Singular(String),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Daha(#[from] DahaError),
    #[error(transparent)]
    Sym(#[from] SymError),
}

/// `p_b = m_b + sum_{c < b} u_c m_c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MacPoly {
    pub b: Weight,
    pub params: MacParams,
    pub expansion: SymPoly,
}

/// JSON record shared by the Macdonald and Jack families.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub family: String,
    #[serde(rename = "type")]
    pub root_type: String,
    pub weight: Vec<i64>,
    pub params: String,
    pub basis: String,
    pub terms: Vec<SymTermJson>,
}

impl MacPoly {
    pub fn to_laurent(&self, sys: &RootSystem) -> LaurentPoly {
        self.expansion.to_laurent(sys)
    }

    pub fn to_json(&self, sys: &RootSystem) -> PolyJson {
        let j = self.expansion.to_json(sys.rank, &self.params.symbols(sys));
        PolyJson {
            family: "macdonald".into(),
            root_type: sys.label.clone(),
            weight: self.b.coords(sys.rank),
            params: self.params.describe(),
            basis: j.basis,
            terms: j.terms,
        }
    }
}

/// `q_nu = q^{2/nu}` in units of `V`.
fn q_nu_v(sys: &RootSystem, class: usize) -> i64 {
    let e = BigRational::from_integer(BigInt::from(2 * Q_DENOM)) / &sys.class_nu[class];
    e.to_integer().to_i64().unwrap()
}

/// `prod_{a} prod_{i<k_a} (1 - x_a q_a^i)(1 - x_a^{-1} q_a^{i+1})`.
pub fn mu_finite(sys: &RootSystem, params: &MacParams) -> Result<LaurentPoly, MacError> {
    let k = params.integer_k(sys)?;
    let mut mu = LaurentPoly::one();
    for p in &sys.positive {
        let qa = q_nu_v(sys, p.class);
        for i in 0..k[p.class] {
            let mut f1 = LaurentPoly::one();
            f1.add_term(p.coroot, -RatFunc::q_power(i * qa));
            let mut f2 = LaurentPoly::one();
            f2.add_term(p.coroot.neg(), -RatFunc::q_power((i + 1) * qa));
            mu = mu.mul_ref(&f1).mul_ref(&f2);
        }
    }
    Ok(mu)
}

pub fn constant_term(f: &LaurentPoly) -> RatFunc {
    f.constant_term()
}

/// Exponent `e` when `r = V^e`.
fn v_exponent(r: &RatFunc) -> Option<i64> {
    let mono = |p: &crate::exactfield::Poly| -> Option<i64> {
        let t = p.terms();
        if t.len() != 1 || !num_traits::One::is_one(&t[0].1) || t[0].0 .0[1..].iter().any(|&e| e != 0) {
            return None;
        }
        Some(t[0].0 .0[0] as i64)
    };
    Some(mono(r.numer())? - mono(r.denom())?)
}

/// `prod_a prod_{i>=1} (1 - X q_a^i)^2 / ((1 - X t_a q_a^i)(1 - X t_a^{-1} q_a^i))`
/// with `X = x_a(t^rho)`, truncated at `q^order`.
pub fn mu_ct_closed(sys: &RootSystem, params: &MacParams, order: usize) -> Result<QSeries, MacError> {
    if params.is_formal() || params.specs.iter().any(|s| s.sign < 0) {
        return Err(MacError::Unsupported("closed constant term needs t = q^r".into()));
    }
    let th = params.t_half()?;
    let pt = sys.eigenvalue_point(&Weight::zero(), &th)?;
    let vorder = order * Q_DENOM as usize;
    let mut s = QSeries::one(vorder);
    for p in &sys.positive {
        let xv = sys.evaluate(&LaurentPoly::monomial(p.coroot), &pt)?;
        let x = v_exponent(&xv).ok_or_else(|| MacError::Unsupported("x_a(t^rho)".into()))?;
        let ta = 2 * v_exponent(&th[p.class]).unwrap();
        let qa = q_nu_v(sys, p.class);
        let mut i = 1;
        loop {
            let base = x + i * qa;
            let exps = [base - ta, base, base + ta];
            if exps.iter().all(|&e| e > vorder as i64) {
                break;
            }
            if base == 0 {
                return Ok(QSeries::zero(vorder));
            }
            for (e, num) in [(base, true), (base, true), (base - ta, false), (base + ta, false)] {
                if e <= 0 {
                    return Err(MacError::Singular(format!(
                        "factor 1 - q^({}/{}) in the closed product",
                        e, Q_DENOM
                    )));
                }
                if num {
                    s.mul_one_minus(e as usize);
                } else {
                    s.div_one_minus(e as usize);
                }
            }
            i += 1;
        }
    }
    Ok(s)
}

/// `ct(a * b)` without forming the full product.
fn ct_product(a: &LaurentPoly, b: &LaurentPoly) -> RatFunc {
    let mut acc = RatFunc::zero();
    for (e, c) in b.iter() {
        let d = a.coeff(&e.neg());
        if !d.is_zero() {
            acc = &acc + &(&d * c);
        }
    }
    acc
}

/// `<mu f g*>`, using `mu` rather than `mu / <mu>`.
pub fn inner_product(
    sys: &RootSystem,
    params: &MacParams,
    f: &SymPoly,
    g: &SymPoly,
) -> Result<RatFunc, MacError> {
    let mu = mu_finite(sys, params)?;
    Ok(pair_with(&mu, &f.to_laurent(sys), &g.to_laurent(sys)))
}

fn pair_with(mu: &LaurentPoly, f: &LaurentPoly, g: &LaurentPoly) -> RatFunc {
    ct_product(mu, &f.mul_ref(&g.star_involution()))
}

/// Gaussian elimination over `RatFunc`; `None` when singular.
pub(crate) fn solve_linear(mut a: Vec<Vec<RatFunc>>, mut rhs: Vec<RatFunc>) -> Option<Vec<RatFunc>> {
    let n = rhs.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        rhs.swap(col, piv);
        let inv = a[col][col].inv().ok()?;
        for c in col..n {
            a[col][c] = &a[col][c] * &inv;
        }
        rhs[col] = &rhs[col] * &inv;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in col..n {
                let v = &a[col][c] * &f;
                a[r][c] = &a[r][c] - &v;
            }
            let v = &rhs[col] * &f;
            rhs[r] = &rhs[r] - &v;
        }
    }
    Some(rhs)
}

/// Gram–Schmidt: `<p_b, m_c> = 0` for every `c < b`.
pub fn macdonald_gs(sys: &RootSystem, b: &Weight, params: &MacParams) -> Result<MacPoly, MacError> {
    let mu = mu_finite(sys, params)?;
    let cone = sys.lower_cone(b)?;
    let lower: Vec<Weight> = cone.iter().filter(|c| *c != b).copied().collect();
    let ms: Vec<LaurentPoly> = lower
        .iter()
        .map(|c| monomial_symmetric(sys, c))
        .collect::<Result<_, _>>()?;
    let mb = monomial_symmetric(sys, b)?;
    let n = lower.len();
    let mut a = vec![vec![RatFunc::zero(); n]; n];
    let mut rhs = Vec::with_capacity(n);
    for (i, mi) in ms.iter().enumerate() {
        for (j, mj) in ms.iter().enumerate() {
            a[i][j] = pair_with(&mu, mj, mi);
        }
        rhs.push(-pair_with(&mu, &mb, mi));
    }
    let u = solve_linear(a, rhs)
        .ok_or_else(|| MacError::DegeneratePairing(b.to_coord_string(sys.rank)))?;
    let mut expansion = SymPoly::basis(*b);
    for (c, v) in lower.iter().zip(u) {
        expansion.add_term(*c, v);
    }
    Ok(MacPoly { b: *b, params: params.clone(), expansion })
}

/// Operators `L_f` for the generators `f = m_{b_i}` (then `m_{2 b_i}`) at
/// one parameter choice, with their triangular matrices on the `m_c`
/// cached.
pub struct MacEngine<'a> {
    pub sys: &'a RootSystem,
    pub params: MacParams,
    daha: Daha<'a>,
    gens: Vec<SymPoly>,
    ops: Vec<OnceLock<AffineOp>>,
    rows: Mutex<BTreeMap<(usize, Weight), SymPoly>>,
}

impl<'a> MacEngine<'a> {
    pub fn new(sys: &'a RootSystem, params: &MacParams) -> Result<MacEngine<'a>, MacError> {
        let daha = Daha::new(sys, params.t_half()?);
        let mut gens: Vec<SymPoly> = (0..sys.rank).map(|i| SymPoly::basis(sys.coweight(i))).collect();
        gens.extend((0..sys.rank).map(|i| SymPoly::basis(sys.coweight(i).scale(2))));
        let ops = gens.iter().map(|_| OnceLock::new()).collect();
        Ok(MacEngine { sys, params: params.clone(), daha, gens, ops, rows: Mutex::new(BTreeMap::new()) })
    }

    pub fn daha(&self) -> &Daha<'a> {
        &self.daha
    }

    pub fn generator(&self, g: usize) -> &SymPoly {
        &self.gens[g]
    }

    pub fn op(&self, g: usize) -> &AffineOp {
        self.ops[g].get_or_init(|| self.daha.op_lf(&self.gens[g]))
    }

    /// `L_f g` for W-invariant `g`, without materializing `L_f`.
    pub fn apply_symmetric(&self, g: usize, f: &LaurentPoly) -> Result<LaurentPoly, MacError> {
        Ok(self.daha.apply_f_of_y(&self.gens[g], f)?)
    }

    /// `f(t^rho q^b)` for generator `f`.
    pub fn eigenvalue(&self, g: usize, b: &Weight) -> Result<RatFunc, MacError> {
        eigenvalue_of(self.sys, &self.gens[g], b, self.daha.t_half())
    }

    /// m-expansion of `L_f m_c`.
    pub fn row(&self, g: usize, c: &Weight) -> Result<SymPoly, MacError> {
        if let Some(r) = self.rows.lock().unwrap().get(&(g, *c)) {
            return Ok(r.clone());
        }
        let m = monomial_symmetric(self.sys, c)?;
        let r = to_m_basis(self.sys, &self.apply_symmetric(g, &m)?)?;
        self.rows.lock().unwrap().insert((g, *c), r.clone());
        Ok(r)
    }

    /// Back-substitution in `L_f p = f(t^rho q^b) p`, `u_b = 1`.
    pub fn macdonald(&self, b: &Weight) -> Result<MacPoly, MacError> {
        let cone = self.sys.lower_cone(b)?;
        let mut lambda: Vec<Option<RatFunc>> = vec![None; self.gens.len()];
        let mut u: BTreeMap<Weight, RatFunc> = BTreeMap::new();
        u.insert(*b, RatFunc::one());
        for c in cone.iter().rev().skip(1) {
            let mut solved = None;
            for g in 0..self.gens.len() {
                if lambda[g].is_none() {
                    lambda[g] = Some(self.eigenvalue(g, b)?);
                }
                let lam = lambda[g].as_ref().unwrap();
                let diag = self.row(g, c)?.coeff(c);
                let gap = lam - &diag;
                if gap.is_zero() {
                    continue;
                }
                let mut s = RatFunc::zero();
                for (d, ud) in &u {
                    let m = self.row(g, d)?.coeff(c);
                    if !m.is_zero() {
                        s = &s + &(ud * &m);
                    }
                }
                solved = Some(&s / &gap);
                break;
            }
            let v = solved.ok_or_else(|| {
                MacError::DegenerateSpectrum(format!(
                    "{} vs {}",
                    b.to_coord_string(self.sys.rank),
                    c.to_coord_string(self.sys.rank)
                ))
            })?;
            if !v.is_zero() {
                u.insert(*c, v);
            }
        }
        Ok(MacPoly { b: *b, params: self.params.clone(), expansion: SymPoly::from_terms(u) })
    }
}

/// `f(t^rho q^b)` where `t_half` holds the values of `t_nu^{1/2}`.
pub fn eigenvalue_of(
    sys: &RootSystem,
    f: &SymPoly,
    b: &Weight,
    t_half: &[RatFunc],
) -> Result<RatFunc, MacError> {
    let pt = sys.eigenvalue_point(b, t_half)?;
    Ok(sys.evaluate(&f.to_laurent(sys), &pt)?)
}

/// `p_b` by the eigen-solve.
pub fn macdonald_eig(sys: &RootSystem, b: &Weight, params: &MacParams) -> Result<MacPoly, MacError> {
    MacEngine::new(sys, params)?.macdonald(b)
}

/// `d = prod_{a in R+} (t_a^{1/2} x_{a/2} - t_a^{-1/2} x_{-a/2})`.
pub fn d_factor(sys: &RootSystem, params: &MacParams) -> Result<LaurentPoly, MacError> {
    let th = params.t_half()?;
    let mut d = LaurentPoly::one();
    for p in &sys.positive {
        let u = &th[p.class];
        let half = p.coroot.halve();
        let f = LaurentPoly::from_terms([(half, u.clone()), (half.neg(), -u.inv()?)]);
        d = d.mul_ref(&f);
    }
    Ok(d)
}

/// `g_b = d * p_b` with `p_b` taken at `t_nu q^{2/nu}`.
pub fn g_poly(sys: &RootSystem, b: &Weight, params: &MacParams) -> Result<LaurentPoly, MacError> {
    let p = macdonald_eig(sys, b, &params.shifted(sys))?;
    Ok(d_factor(sys, params)?.mul_ref(&p.to_laurent(sys)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{laurent::laurent_from_ints, ParamSymbols};
    use crate::rootdata::build_root_system;

    fn q() -> RatFunc {
        RatFunc::q_power(Q_DENOM)
    }

    fn k_int(sys: &RootSystem, k: i64) -> MacParams {
        MacParams::from_k_uniform(sys, BigRational::from_integer(k.into()))
    }

    #[test]
    fn mu_a1() {
        let a1 = build_root_system("A1").unwrap();
        let mu = mu_finite(&a1, &k_int(&a1, 1)).unwrap();
        // (1 - x_a)(1 - q x_a^{-1})
        let mut expect = laurent_from_ints(&[(&[0], 1), (&[2], -1)]);
        let mut f = LaurentPoly::one();
        f.add_term(Weight::from_coords(&[-2]), -q());
        expect = expect.mul_ref(&f);
        assert_eq!(mu, expect);
        assert_eq!(constant_term(&mu), &RatFunc::one() + &q());
        assert_eq!(mu_finite(&a1, &k_int(&a1, 0)).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn closed_constant_term_a1() {
        let a1 = build_root_system("A1").unwrap();
        let s = mu_ct_closed(&a1, &k_int(&a1, 1), 6).unwrap();
        assert_eq!(s, QSeries::from_ratfunc(&(&RatFunc::one() + &q()), 6 * Q_DENOM as usize).unwrap());
        let s = mu_ct_closed(&a1, &k_int(&a1, 0), 4).unwrap();
        assert_eq!(s, QSeries::one(4 * Q_DENOM as usize));
    }

    #[test]
    fn a1_formal_p2() {
        let a1 = build_root_system("A1").unwrap();
        let p = macdonald_eig(&a1, &Weight::from_coords(&[2]), &MacParams::formal(&a1)).unwrap();
        let c = p.expansion.coeff(&Weight::zero());
        assert_eq!(c.to_canonical_string(&ParamSymbols::macdonald(1)), "(1 - t)*(1 + q)/(1 - q*t)");
        let half = MacParams::parse(&a1, "q^-1/2").unwrap();
        let p = macdonald_eig(&a1, &Weight::from_coords(&[2]), &half).unwrap();
        let qh = RatFunc::q_power(Q_DENOM / 2);
        assert_eq!(p.expansion.coeff(&Weight::zero()), -(&qh + &qh.inv().unwrap()));
    }

    #[test]
    fn gs_small_cases() {
        let a1 = build_root_system("A1").unwrap();
        let b1 = Weight::from_coords(&[1]);
        assert_eq!(macdonald_gs(&a1, &b1, &k_int(&a1, 1)).unwrap().expansion, SymPoly::basis(b1));
        let p = macdonald_gs(&a1, &Weight::from_coords(&[2]), &k_int(&a1, 1)).unwrap();
        assert_eq!(p.expansion.coeff(&Weight::zero()), RatFunc::one());
        let a2 = build_root_system("A2").unwrap();
        let p = macdonald_gs(&a2, &Weight::from_coords(&[1, 1]), &k_int(&a2, 1)).unwrap();
        assert_eq!(p.expansion.coeff(&Weight::zero()), RatFunc::from_int(2));
    }

    #[test]
    fn pairing_examples() {
        let a1 = build_root_system("A1").unwrap();
        let one = SymPoly::basis(Weight::zero());
        let p = k_int(&a1, 1);
        assert_eq!(inner_product(&a1, &p, &one, &one).unwrap(), &RatFunc::one() + &q());
        let m1 = SymPoly::basis(Weight::from_coords(&[1]));
        assert!(inner_product(&a1, &p, &m1, &one).unwrap().is_zero());
    }

    #[test]
    fn g0_is_d() {
        let a1 = build_root_system("A1").unwrap();
        let f = MacParams::formal(&a1);
        let g = g_poly(&a1, &Weight::zero(), &f).unwrap();
        let u = RatFunc::var_power(1, 1, 1);
        let expect = LaurentPoly::from_terms([
            (Weight::from_coords(&[1]), u.clone()),
            (Weight::from_coords(&[-1]), -u.inv().unwrap()),
        ]);
        assert_eq!(g, expect);
        let d = Daha::formal(&a1);
        let tg = d.op_t(1).apply(&a1, &g).unwrap();
        assert_eq!(tg, g.scale(&-u.inv().unwrap()));
    }

    #[test]
    fn closed_matches_finite_a2() {
        let a2 = build_root_system("A2").unwrap();
        for k in 1..=2 {
            let p = k_int(&a2, k);
            let n = 10 * Q_DENOM as usize;
            let ct = constant_term(&mu_finite(&a2, &p).unwrap());
            assert_eq!(mu_ct_closed(&a2, &p, 10).unwrap(), QSeries::from_ratfunc(&ct, n).unwrap());
        }
    }
}
