//! The differential degeneration: `L_2^{(k)}`, `H_2^{(k)}`, Jack polynomials
//! and the Weyl-denominator powers `Delta_k`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactfield::{length_var, FieldError, LaurentPoly, ParamSymbols, RatFunc, Weight};
use crate::macpoly::{parse_rational, MacError, PolyJson};
use crate::rootdata::{RootError, RootSystem};
use crate::symfun::{monomial_symmetric, symmetry_type, to_m_basis, SymError, SymPoly, Symmetry};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JackError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("residual denominator: input is not W-invariant enough for L_2")]
    ResidualDenominator,
    #[error("degenerate spectrum at {0}")]
    DegenerateSpectrum(String),
    #[error("k must be a nonnegative integer, got {0}")]
    NegativeK(i64),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Sym(#[from] SymError),
}

impl From<MacError> for JackError {
    fn from(e: MacError) -> Self {
        JackError::Parse(e.to_string())
    }
}

/// `k_nu` per root-length class, long first; formal entries are the symbols
/// `k`, `ks`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JackParams {
    pub k: Vec<RatFunc>,
    desc: Vec<String>,
}

impl JackParams {
    pub fn formal(sys: &RootSystem) -> JackParams {
        let n = sys.num_classes();
        JackParams {
            k: (0..n).map(|c| RatFunc::var_power(length_var(c), 1, 1)).collect(),
            desc: vec!["formal".into(); n],
        }
    }

    pub fn rational(k: &[BigRational]) -> JackParams {
        JackParams {
            k: k.iter().cloned().map(RatFunc::from_rational).collect(),
            desc: k.iter().map(|r| r.to_string()).collect(),
        }
    }

    pub fn uniform(sys: &RootSystem, k: BigRational) -> JackParams {
        JackParams::rational(&vec![k; sys.num_classes()])
    }

    pub fn integers(k: &[i64]) -> JackParams {
        let r: Vec<BigRational> = k.iter().map(|&v| BigRational::from_integer(v.into())).collect();
        JackParams::rational(&r)
    }

    /// `"formal" | <rational>` per class, separated by `;`, long first.
    pub fn parse(sys: &RootSystem, spec: &str) -> Result<JackParams, JackError> {
        let n = sys.num_classes();
        let parts: Vec<&str> = spec.split(';').map(str::trim).collect();
        if parts.len() != 1 && parts.len() != n {
            return Err(JackError::Parse(format!("{:?}: expected 1 or {} entries", spec, n)));
        }
        let mut out = JackParams { k: Vec::new(), desc: Vec::new() };
        for c in 0..n {
            let p = parts[if parts.len() == 1 { 0 } else { c }];
            if p == "formal" {
                out.k.push(RatFunc::var_power(length_var(c), 1, 1));
                out.desc.push("formal".into());
            } else {
                let r = parse_rational(p)?;
                out.desc.push(r.to_string());
                out.k.push(RatFunc::from_rational(r));
            }
        }
        Ok(out)
    }

    pub fn describe(&self) -> String {
        self.desc.join(";")
    }

    pub fn symbols(&self, sys: &RootSystem) -> ParamSymbols {
        ParamSymbols::jack(sys.num_classes())
    }

    /// Coordinates of `r_k = sum_nu k_nu r_nu`.
    pub fn r_k(&self, sys: &RootSystem) -> Vec<RatFunc> {
        (0..sys.rank).map(|i| self.k[sys.class[i]].clone()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JackPoly {
    pub b: Weight,
    pub params: JackParams,
    pub expansion: SymPoly,
}

impl JackPoly {
    pub fn to_laurent(&self, sys: &RootSystem) -> LaurentPoly {
        self.expansion.to_laurent(sys)
    }

    pub fn to_json(&self, sys: &RootSystem) -> PolyJson {
        let j = self.expansion.to_json(sys.rank, &self.params.symbols(sys));
        PolyJson {
            family: "jack".into(),
            root_type: sys.label.clone(),
            weight: self.b.coords(sys.rank),
            params: self.params.describe(),
            basis: j.basis,
            terms: j.terms,
        }
    }
}

fn weight_coords(sys: &RootSystem, w: &Weight) -> Vec<RatFunc> {
    w.to_rationals(sys.rank).into_iter().map(RatFunc::from_rational).collect()
}

/// `(u, v)` for coordinate vectors over `RatFunc`.
fn pair_coords(sys: &RootSystem, u: &[RatFunc], v: &[RatFunc]) -> RatFunc {
    let mut acc = RatFunc::zero();
    for i in 0..sys.rank {
        for j in 0..sys.rank {
            let g = &sys.coweight_gram[i][j];
            if g.is_zero() {
                continue;
            }
            acc = &acc + &(&(&u[i] * &v[j]) * &RatFunc::from_rational(g.clone()));
        }
    }
    acc
}

/// `(b + r_k, b + r_k)`.
pub fn jack_eigenvalue(sys: &RootSystem, b: &Weight, k: &JackParams) -> RatFunc {
    let rk = k.r_k(sys);
    let v: Vec<RatFunc> = weight_coords(sys, b).iter().zip(&rk).map(|(x, y)| x + y).collect();
    pair_coords(sys, &v, &v)
}

fn laplacian(sys: &RootSystem, f: &LaurentPoly) -> LaurentPoly {
    f.map_terms(|e, c| (*e, c * &RatFunc::from_rational(sys.pair(e, e))))
}

fn derivative(sys: &RootSystem, a: &Weight, f: &LaurentPoly) -> LaurentPoly {
    f.map_terms(|e, c| (*e, c * &RatFunc::from_rational(sys.pair(a, e))))
}

/// `x_a - 1`.
fn binomial(a: &Weight) -> LaurentPoly {
    LaurentPoly::from_terms([(*a, RatFunc::one()), (Weight::zero(), RatFunc::from_int(-1))])
}

/// `L_2^{(k)} f` for a Laurent polynomial whose image is again one.
pub fn apply_l2_laurent(sys: &RootSystem, f: &LaurentPoly, k: &JackParams) -> Result<LaurentPoly, JackError> {
    let rk = k.r_k(sys);
    let base = &laplacian(sys, f) + &f.scale(&pair_coords(sys, &rk, &rk));
    let roots: Vec<_> = sys.positive.iter().filter(|p| !k.k[p.class].is_zero()).collect();
    if roots.is_empty() {
        return Ok(base);
    }
    let bins: Vec<LaurentPoly> = roots.iter().map(|p| binomial(&p.coroot)).collect();
    let mut num = LaurentPoly::zero();
    for (i, p) in roots.iter().enumerate() {
        let mut plus = binomial(&p.coroot);
        plus.add_term(Weight::zero(), RatFunc::from_int(2));
        let mut t = derivative(sys, &p.coroot, f).mul_ref(&plus).scale(&k.k[p.class]);
        for (j, b) in bins.iter().enumerate() {
            if j != i {
                t = t.mul_ref(b);
            }
        }
        num = &num + &t;
    }
    for b in &bins {
        num = num.exact_divide(b).map_err(|_| JackError::ResidualDenominator)?;
    }
    Ok(&base + &num)
}

/// `L_2^{(k)} f` on the `m`-basis.
pub fn apply_l2(sys: &RootSystem, f: &SymPoly, k: &JackParams) -> Result<SymPoly, JackError> {
    let out = apply_l2_laurent(sys, &f.to_laurent(sys), k)?;
    Ok(to_m_basis(sys, &out)?)
}

/// `prod_{a in R+} (x_{a/2} - x_{-a/2})^{k_a}`.
pub fn delta_power(sys: &RootSystem, k: &[i64]) -> Result<LaurentPoly, JackError> {
    let mut d = LaurentPoly::one();
    for p in &sys.positive {
        let e = k[p.class];
        if e < 0 {
            return Err(JackError::NegativeK(e));
        }
        let h = p.coroot.halve();
        let f = LaurentPoly::from_terms([(h, RatFunc::one()), (h.neg(), RatFunc::from_int(-1))]);
        d = d.mul_ref(&f.pow(e as u32));
    }
    Ok(d)
}

/// `H_2^{(k)} g = Lap g + sum_a k_a (1 - k_a) (a, a) g / (x_{a/2} - x_{-a/2})^2`.
pub fn apply_h2(sys: &RootSystem, g: &LaurentPoly, k: &[i64]) -> Result<LaurentPoly, JackError> {
    let mut out = laplacian(sys, g);
    for p in &sys.positive {
        let ka = k[p.class];
        let coef = sys.pair(&p.coroot, &p.coroot) * BigRational::from_integer((ka * (1 - ka)).into());
        if coef.is_zero() {
            continue;
        }
        let h = p.coroot.halve();
        let f = LaurentPoly::from_terms([(h, RatFunc::one()), (h.neg(), RatFunc::from_int(-1))]);
        let q = g.exact_divide(&f.pow(2)).map_err(|_| JackError::ResidualDenominator)?;
        out = &out + &q.scale(&RatFunc::from_rational(coef));
    }
    Ok(out)
}

/// Triangular eigen-solve of `L_2 j = (b + r_k, b + r_k) j`, unit coefficient
/// on `m_b`.
pub fn jack_eig(sys: &RootSystem, b: &Weight, k: &JackParams) -> Result<JackPoly, JackError> {
    let cone = sys.lower_cone(b)?;
    let lambda = jack_eigenvalue(sys, b, k);
    let mut rows: BTreeMap<Weight, SymPoly> = BTreeMap::new();
    for c in &cone {
        rows.insert(*c, apply_l2(sys, &SymPoly::basis(*c), k)?);
    }
    let mut u: BTreeMap<Weight, RatFunc> = BTreeMap::new();
    u.insert(*b, RatFunc::one());
    for c in cone.iter().rev().skip(1) {
        let gap = &lambda - &rows[c].coeff(c);
        if gap.is_zero() {
            return Err(JackError::DegenerateSpectrum(format!(
                "{} vs {}",
                b.to_coord_string(sys.rank),
                c.to_coord_string(sys.rank)
            )));
        }
        let mut s = RatFunc::zero();
        for (d, ud) in &u {
            let m = rows[d].coeff(c);
            if !m.is_zero() {
                s = &s + &(ud * &m);
            }
        }
        let v = &s / &gap;
        if !v.is_zero() {
            u.insert(*c, v);
        }
    }
    Ok(JackPoly { b: *b, params: k.clone(), expansion: SymPoly::from_terms(u) })
}

fn half_plus(m: &[i64], sign: i64) -> Vec<BigRational> {
    m.iter()
        .map(|&v| BigRational::new(1.into(), 2.into()) + BigRational::from_integer((sign * v).into()))
        .collect()
}

/// `r_m = sum_nu m_nu r_nu` as a weight.
pub fn r_weight(sys: &RootSystem, m: &[i64]) -> Weight {
    let c: Vec<i64> = (0..sys.rank).map(|i| m[sys.class[i]]).collect();
    Weight::from_coords(&c)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JackKadellReport {
    pub part_i: bool,
    pub part_ii: bool,
    pub notes: Vec<String>,
    pub lhs_i: Vec<crate::symfun::SymTermJson>,
}

/// Both parts of the Jack-level theorem for one `(b, m)`.
pub fn verify_jack_kadell(sys: &RootSystem, b: &Weight, m: &[i64]) -> Result<JackKadellReport, JackError> {
    let mut notes = Vec::new();
    let two_m: Vec<i64> = m.iter().map(|v| 2 * v).collect();
    let bp = b.add(&r_weight(sys, &two_m));

    let k = JackParams::rational(&half_plus(m, 1));
    let kp = JackParams::rational(&half_plus(m, -1));
    let lhs = delta_power(sys, &two_m)?.mul_ref(&jack_eig(sys, b, &k)?.to_laurent(sys));
    let mut part_i = true;
    if symmetry_type(sys, &lhs) != Symmetry::Symmetric {
        notes.push("part (i): product is not W-symmetric".into());
        part_i = false;
    }
    let exp = to_m_basis(sys, &lhs).unwrap_or_default();
    if part_i {
        let cone = sys.lower_cone(&bp)?;
        if !exp.coeff(&bp).is_one() || exp.support().iter().any(|c| !cone.contains(c)) {
            notes.push("part (i): leading term or support mismatch".into());
            part_i = false;
        }
        let lam = jack_eigenvalue(sys, &bp, &kp);
        if apply_l2_laurent(sys, &lhs, &kp)? != lhs.scale(&lam) {
            notes.push("part (i): eigen-equation fails".into());
            part_i = false;
        }
    }

    let kk: Vec<i64> = m.iter().map(|v| v + 1).collect();
    let odd: Vec<i64> = m.iter().map(|v| 2 * v + 1).collect();
    let g = delta_power(sys, &odd)?.mul_ref(&jack_eig(sys, b, &JackParams::integers(&kk))?.to_laurent(sys));
    let mut part_ii = true;
    if symmetry_type(sys, &g) != Symmetry::Antisymmetric {
        notes.push("part (ii): product is not antisymmetric".into());
        part_ii = false;
    }
    let neg: Vec<i64> = m.iter().map(|v| -v).collect();
    let lam = jack_eigenvalue(sys, b, &JackParams::integers(&kk));
    match apply_l2_laurent(sys, &g, &JackParams::integers(&neg)) {
        Ok(img) if img == g.scale(&lam) => {}
        Ok(_) => {
            notes.push("part (ii): eigen-equation fails".into());
            part_ii = false;
        }
        Err(e) => {
            notes.push(format!("part (ii): {}", e));
            part_ii = false;
        }
    }
    Ok(JackKadellReport {
        part_i,
        part_ii,
        notes,
        lhs_i: exp.to_json(sys.rank, &ParamSymbols::jack(sys.num_classes())).terms,
    })
}

/// `Delta_k L_2(f) = H_2(Delta_k f)` for each test polynomial.
pub fn verify_lh_conjugation(sys: &RootSystem, k: &[i64], tests: &[SymPoly]) -> Result<Vec<bool>, JackError> {
    let d = delta_power(sys, k)?;
    let kp = JackParams::integers(k);
    tests
        .iter()
        .map(|f| {
            let fl = f.to_laurent(sys);
            let lhs = d.mul_ref(&apply_l2_laurent(sys, &fl, &kp)?);
            let rhs = apply_h2(sys, &d.mul_ref(&fl), k)?;
            Ok(lhs == rhs)
        })
        .collect()
}

/// `m_b` as a `SymPoly` checked for dominance.
pub fn m_basis(sys: &RootSystem, b: &Weight) -> Result<SymPoly, JackError> {
    monomial_symmetric(sys, b)?;
    Ok(SymPoly::basis(*b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::laurent::laurent_from_ints;
    use crate::rootdata::build_root_system;

    fn kf() -> RatFunc {
        RatFunc::var_power(1, 1, 1)
    }

    #[test]
    fn l2_on_a1() {
        let a1 = build_root_system("A1").unwrap();
        let k = JackParams::formal(&a1);
        let b1 = Weight::from_coords(&[1]);
        let out = apply_l2(&a1, &SymPoly::basis(b1), &k).unwrap();
        let one = RatFunc::one();
        let ev = &(&(&one + &kf()) * &(&one + &kf())) / &RatFunc::from_int(2);
        assert_eq!(out, SymPoly::basis(b1).scale(&ev));
        let out = apply_l2(&a1, &SymPoly::basis(Weight::zero()), &k).unwrap();
        assert_eq!(out.coeff(&Weight::zero()), &(&kf() * &kf()) / &RatFunc::from_int(2));
        let k0 = JackParams::integers(&[0]);
        let b2 = Weight::from_coords(&[2]);
        assert_eq!(apply_l2(&a1, &SymPoly::basis(b2), &k0).unwrap(), SymPoly::basis(b2).scale(&RatFunc::from_int(2)));
    }

    #[test]
    fn jack_a1() {
        let a1 = build_root_system("A1").unwrap();
        let b2 = Weight::from_coords(&[2]);
        let j = jack_eig(&a1, &b2, &JackParams::integers(&[1])).unwrap();
        assert_eq!(j.expansion.coeff(&Weight::zero()), RatFunc::one());
        let ev = jack_eigenvalue(&a1, &b2, &JackParams::formal(&a1));
        let two = RatFunc::from_int(2);
        assert_eq!(ev, &(&(&two + &kf()) * &(&two + &kf())) / &two);
    }

    #[test]
    fn deltas() {
        let a1 = build_root_system("A1").unwrap();
        assert_eq!(delta_power(&a1, &[1]).unwrap(), laurent_from_ints(&[(&[1], 1), (&[-1], -1)]));
        assert_eq!(
            delta_power(&a1, &[2]).unwrap(),
            laurent_from_ints(&[(&[2], 1), (&[0], -2), (&[-2], 1)])
        );
        assert_eq!(delta_power(&a1, &[0]).unwrap(), LaurentPoly::one());
        assert!(delta_power(&a1, &[-1]).is_err());
    }

    #[test]
    fn kadell_a1_m1() {
        let a1 = build_root_system("A1").unwrap();
        let r = verify_jack_kadell(&a1, &Weight::zero(), &[1]).unwrap();
        assert!(r.part_i && r.part_ii, "{:?}", r.notes);
        let d2 = delta_power(&a1, &[2]).unwrap();
        let kp = JackParams::rational(&[BigRational::new((-1).into(), 2.into())]);
        assert_eq!(
            apply_l2_laurent(&a1, &d2, &kp).unwrap(),
            d2.scale(&RatFunc::from_ratio(9, 8))
        );
    }

    #[test]
    fn lh_conjugation_a1() {
        let a1 = build_root_system("A1").unwrap();
        let tests = [SymPoly::basis(Weight::zero()), SymPoly::basis(Weight::from_coords(&[1]))];
        for k in 1..=2 {
            assert!(verify_lh_conjugation(&a1, &[k], &tests).unwrap().iter().all(|&x| x));
        }
    }
}
