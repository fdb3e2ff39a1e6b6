//! The q,t-level shift theorem: `delta` factors, both parts of the theorem,
//! and the operator identities behind its proof. Every check returns a
//! `Verdict` carrying the polynomials it looked at.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::daha::{AffineOp, Daha, XFrac};
use crate::exactfield::{LaurentPoly, ParamSymbols, Poly, RatFunc, Weight, Q_DENOM};
use crate::jack;
use crate::macpoly::{eigenvalue_of, mu_finite, MacEngine, MacError, MacParams};
use crate::rootdata::RootSystem;
use crate::symfun::{symmetry_type, to_m_basis, SymPoly, SymTermJson, Symmetry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Verified,
    Violated,
    Skipped,
    Error,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub expansion: Vec<SymTermJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigenvalue: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub check: String,
    #[serde(rename = "type")]
    pub root_type: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    pub result: Outcome,
    pub certificate: Certificate,
}

impl Verdict {
    fn new(check: &str, sys: &RootSystem) -> Verdict {
        Verdict {
            check: check.into(),
            root_type: sys.label.clone(),
            b: None,
            m: None,
            k: None,
            result: Outcome::Verified,
            certificate: Certificate::default(),
        }
    }

    fn fail(&mut self, note: impl Into<String>) {
        self.result = Outcome::Violated;
        self.certificate.notes.push(note.into());
    }

    fn error(mut self, e: impl std::fmt::Display) -> Verdict {
        self.result = Outcome::Error;
        self.certificate.notes.push(e.to_string());
        self
    }

    pub fn passed(&self) -> bool {
        self.result == Outcome::Verified
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaFactor {
    pub m: Vec<i64>,
    pub parity: Parity,
    /// `t_nu = q_nu^{m_nu + 1/2}` (even) or `q_nu^{m_nu + 1}` (odd).
    pub params: MacParams,
    pub value: LaurentPoly,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `t_nu = q_nu^{m_nu + shift}`.
fn shifted_params(sys: &RootSystem, m: &[i64], sign: i64, shift: BigRational) -> MacParams {
    let k: Vec<BigRational> = m.iter().map(|&v| rat(sign * v, 1) + &shift).collect();
    MacParams::from_k(sys, &k)
}

/// `q_nu^{1/2}` in units of `V`.
fn q_half_v(sys: &RootSystem, class: usize) -> i64 {
    (rat(Q_DENOM, 1) / &sys.class_nu[class]).to_integer().try_into().unwrap()
}

/// `x_{a/2} t_a^{1/2} q_a^{-i/2} - x_{-a/2} t_a^{-1/2} q_a^{i/2}`.
fn delta_term(a: &Weight, th_v: i64, qh_v: i64, i: i64) -> LaurentPoly {
    let h = a.halve();
    LaurentPoly::from_terms([
        (h, RatFunc::q_power(th_v - i * qh_v)),
        (h.neg(), -RatFunc::q_power(i * qh_v - th_v)),
    ])
}

fn t_half_v(params: &MacParams, class: usize) -> i64 {
    let e = &params.specs[class].r * rat(Q_DENOM / 2, 1);
    e.to_integer().try_into().unwrap()
}

/// Product over positive coroots `a` of the factors `i = lo..=hi(a)`.
fn delta_range(sys: &RootSystem, params: &MacParams, lo: i64, hi: impl Fn(usize) -> i64) -> LaurentPoly {
    let mut d = LaurentPoly::one();
    for p in &sys.positive {
        let th = t_half_v(params, p.class);
        let qh = q_half_v(sys, p.class);
        for i in lo..=hi(p.class) {
            d = d.mul_ref(&delta_term(&p.coroot, th, qh, i));
        }
    }
    d
}

/// `delta_{2m}` (even) or `delta_{2m+1}` (odd).
///
/// Factor `i` runs over `1..=2m` (even) and `1..=2m+1` (odd). With
/// `t = q^{m+1/2}` the last even factor is
/// `x_{a/2} t^{-1/2} q^{1/2} - x_{-a/2} t^{1/2} q^{-1/2}`, and likewise for
/// the odd case with `t = q^{m+1}`; the code asserts this.
pub fn delta_factor(sys: &RootSystem, m: &[i64], parity: Parity) -> Result<DeltaFactor, MacError> {
    if let Some(v) = m.iter().find(|&&v| v < 0) {
        return Err(MacError::NonIntegerK(format!("m = {}", v)));
    }
    let (shift, extra) = match parity {
        Parity::Even => (rat(1, 2), 0),
        Parity::Odd => (rat(1, 1), 1),
    };
    let params = shifted_params(sys, m, 1, shift);
    let top = |c: usize| 2 * m[c] + extra;
    for p in &sys.positive {
        let n = top(p.class);
        if n == 0 {
            continue;
        }
        let th = t_half_v(&params, p.class);
        let qh = q_half_v(sys, p.class);
        let last = delta_term(&p.coroot, th, qh, n);
        let shown = delta_term(&p.coroot, -th, qh, -1);
        assert_eq!(last, shown);
    }
    let value = delta_range(sys, &params, 1, top);
    Ok(DeltaFactor { m: m.to_vec(), parity, params, value })
}

fn expansion_json(sys: &RootSystem, f: &SymPoly) -> Vec<SymTermJson> {
    f.to_json(sys.rank, &ParamSymbols::macdonald(sys.num_classes())).terms
}

/// `c g` with `c` the lcm of the coefficient denominators.
fn clear_denominators(g: &LaurentPoly) -> LaurentPoly {
    let mut l = Poly::one();
    for (_, c) in g.iter() {
        let d = c.denom();
        let common = l.gcd(d);
        l = (&l * d).div_exact(&common).expect("gcd divides the product");
    }
    g.scale(&RatFunc::from_poly(l))
}

/// `(L_f g, lambda g)` agreement for every generator `m_{b_i}`, with
/// `apply(i, h)` computing `L_{m_{b_i}} h`. Both sides are compared with
/// polynomial coefficients.
fn eigen_check(
    engine: &MacEngine,
    g: &LaurentPoly,
    eig: impl Fn(usize) -> Result<RatFunc, MacError>,
    apply: impl Fn(usize, &LaurentPoly) -> Result<LaurentPoly, MacError>,
    v: &mut Verdict,
    label: &str,
) -> Result<(), MacError> {
    let g = clear_denominators(g);
    for i in 0..engine.sys.rank {
        let lam = eig(i)?;
        match apply(i, &g) {
            Ok(img) => {
                let lhs = img.scale(&RatFunc::from_poly(lam.denom().clone()));
                if lhs != g.scale(&RatFunc::from_poly(lam.numer().clone())) {
                    v.fail(format!("{}: L_f eigen-equation fails for f = m_b{}", label, i + 1));
                }
            }
            Err(e) => v.fail(format!("{}: f = m_b{}: {}", label, i + 1, e)),
        }
        if i == 0 {
            v.certificate.eigenvalue = Some(lam.to_canonical_string(&ParamSymbols::macdonald(1)));
        }
    }
    Ok(())
}

/// Part (i): `delta_{2m} p_b^{(1/2+m)}` is `p_{b+2r_m}^{(1/2-m)}`.
pub fn verify_kadell_i(sys: &RootSystem, b: &Weight, m: &[i64]) -> Verdict {
    let mut v = Verdict::new("kadell-i", sys);
    v.b = Some(b.coords(sys.rank));
    v.m = Some(m.to_vec());
    match kadell_i(sys, b, m, &mut v) {
        Ok(()) => v,
        Err(e) => v.error(e),
    }
}

fn kadell_i(sys: &RootSystem, b: &Weight, m: &[i64], v: &mut Verdict) -> Result<(), MacError> {
    let delta = delta_factor(sys, m, Parity::Even)?;
    let p = MacEngine::new(sys, &delta.params)?.macdonald(b)?;
    let lhs = delta.value.mul_ref(&p.to_laurent(sys));
    let two_m: Vec<i64> = m.iter().map(|x| 2 * x).collect();
    let bp = b.add(&jack::r_weight(sys, &two_m));
    if symmetry_type(sys, &lhs) != Symmetry::Symmetric {
        v.fail("product is not W-symmetric");
        return Ok(());
    }
    let exp = to_m_basis(sys, &lhs)?;
    v.certificate.expansion = expansion_json(sys, &exp);
    let cone = sys.lower_cone(&bp)?;
    if !exp.coeff(&bp).is_one() {
        v.fail("coefficient of the leading m is not 1");
    }
    if exp.support().iter().any(|c| !cone.contains(c)) {
        v.fail("support leaves the lower cone");
    }
    let target = shifted_params(sys, m, -1, rat(1, 2));
    let engine = MacEngine::new(sys, &target)?;
    eigen_check(
        &engine,
        &lhs,
        |i| engine.eigenvalue(i, &bp),
        |i, h| engine.apply_symmetric(i, h),
        v,
        "t' = q^(1/2-m)",
    )?;
    match engine.macdonald(&bp) {
        Ok(direct) => {
            if direct.expansion != exp {
                v.fail("differs from the directly computed polynomial");
            }
        }
        Err(e) => v.certificate.notes.push(format!("direct route unavailable: {}", e)),
    }
    Ok(())
}

/// Part (ii): `delta_{2m+1} p_b^{(m+1)}` is antisymmetric and an eigenfunction
/// of `L_f` at `t' = q^{-m}` with eigenvalue `f(t^rho q^b)` at `t = q^{m+1}`.
pub fn verify_kadell_ii(sys: &RootSystem, b: &Weight, m: &[i64]) -> Verdict {
    let mut v = Verdict::new("kadell-ii", sys);
    v.b = Some(b.coords(sys.rank));
    v.m = Some(m.to_vec());
    match kadell_ii(sys, b, m, &mut v) {
        Ok(()) => v,
        Err(e) => v.error(e),
    }
}

fn kadell_ii(sys: &RootSystem, b: &Weight, m: &[i64], v: &mut Verdict) -> Result<(), MacError> {
    let delta = delta_factor(sys, m, Parity::Odd)?;
    let p = MacEngine::new(sys, &delta.params)?.macdonald(b)?;
    let g = delta.value.mul_ref(&p.to_laurent(sys));
    v.certificate.expansion = expansion_json(sys, &p.expansion);
    if symmetry_type(sys, &g) != Symmetry::Antisymmetric {
        v.fail("product is not antisymmetric");
    }
    let th = delta.params.t_half()?;
    let target = shifted_params(sys, m, -1, rat(0, 1));
    let engine = MacEngine::new(sys, &target)?;
    eigen_check(
        &engine,
        &g,
        |i| eigenvalue_of(sys, engine.generator(i), b, &th),
        |i, h| Ok(engine.op(i).apply(sys, h)?),
        v,
        "t' = q^(-m)",
    )
}

/// `(T_j)^iota (mu f) = mu T_j f` at `t = q^k`.
pub fn verify_iota_mu(sys: &RootSystem, k: i64, tests: &[LaurentPoly]) -> Verdict {
    let mut v = Verdict::new("iota-mu", sys);
    v.k = Some(k);
    match iota_mu(sys, k, tests, &mut v) {
        Ok(()) => v,
        Err(e) => v.error(e),
    }
}

fn iota_mu(sys: &RootSystem, k: i64, tests: &[LaurentPoly], v: &mut Verdict) -> Result<(), MacError> {
    let params = MacParams::from_k_uniform(sys, rat(k, 1));
    let mu = mu_finite(sys, &params)?;
    let assign = params.assignment()?;
    let formal = Daha::formal(sys);
    let special = Daha::new(sys, params.t_half()?);
    for j in 0..=sys.rank {
        let tj = special.op_t(j);
        let iota = formal.op_iota(&formal.op_t(j)).specialize(&assign)?;
        for (n, f) in tests.iter().enumerate() {
            let lhs = iota.apply(sys, &mu.mul_ref(f))?;
            let rhs = mu.mul_ref(&tj.apply(sys, f)?);
            if lhs != rhs {
                v.fail(format!("j = {}, test polynomial {}", j, n));
            }
        }
    }
    Ok(())
}

/// At `t = q^{m+1/2}`, `mu_{q,t/q}^{-1} prod_a prod_{i=2}^{2m} (...)` changes
/// sign under every `s_0, ..., s_n`. With `P` the product and
/// `X = x_{a_j}`, `s_j(mu)/mu = (1 - X^{-1})(1 - t X) / ((1 - X)(1 - t X^{-1}))`,
/// so the claim is `s_j(P)(1 - X)(1 - t'X^{-1}) = -P(1 - X^{-1})(1 - t'X)`.
pub fn verify_anti_product(sys: &RootSystem, m: &[i64]) -> Verdict {
    let mut v = Verdict::new("anti-product", sys);
    v.m = Some(m.to_vec());
    if m.iter().all(|&x| x == 0) {
        v.result = Outcome::Skipped;
        v.certificate.notes.push("m = 0: the product is empty".into());
        return v;
    }
    if m.contains(&0) {
        v.result = Outcome::Skipped;
        v.certificate.notes.push("m vanishes on a root length: that factor is empty".into());
        return v;
    }
    match anti_product(sys, m, &mut v) {
        Ok(()) => v,
        Err(e) => v.error(e),
    }
}

fn anti_product(sys: &RootSystem, m: &[i64], v: &mut Verdict) -> Result<(), MacError> {
    let params = shifted_params(sys, m, 1, rat(1, 2));
    let p = delta_range(sys, &params, 2, |c| 2 * m[c]);
    for j in 0..=sys.rank {
        let (a, qk, class) = if j == 0 {
            (sys.theta_coweight.neg(), Q_DENOM, 0)
        } else {
            (sys.simple_coroot(j - 1), 0, sys.class[j - 1])
        };
        // t' = t q_nu^{-1}
        let tp = 2 * t_half_v(&params, class) - 2 * q_half_v(sys, class);
        let lin = |sign: i32, tpow: i64| {
            // 1 - t'^tpow x_{sign a}
            let e = if sign > 0 { a } else { a.neg() };
            LaurentPoly::from_terms([
                (Weight::zero(), RatFunc::one()),
                (e, -RatFunc::q_power(tpow * tp + sign as i64 * qk)),
            ])
        };
        let sp = sys.act_laurent(&sys.ext_simple(j), &p);
        let lhs = sp.mul_ref(&lin(1, 0)).mul_ref(&lin(-1, 1));
        let rhs = -&p.mul_ref(&lin(-1, 0)).mul_ref(&lin(1, 1));
        if lhs != rhs {
            v.fail(format!("s_{} does not change the sign", j));
        }
    }
    Ok(())
}

/// `psi = prod_a (x_{a/2} - x_{-a/2})^{-1} prod_{i<k} (1 - x_a q_a^i)(1 - x_a^{-1} q_a^i)`
/// and its inverse.
fn psi_pair(sys: &RootSystem, k: i64) -> (XFrac, XFrac) {
    let mut psi = XFrac::one();
    let mut inv = XFrac::one();
    for p in &sys.positive {
        let a = p.coroot;
        let h = a.halve();
        let qa = 2 * q_half_v(sys, p.class);
        // 1/(x_{a/2} - x_{-a/2}) = x_{a/2}/(x_a - 1)
        psi = psi.mul(&XFrac::recip_binomial(a, 0).mul_laurent(&LaurentPoly::monomial(h)));
        inv = inv.mul_laurent(&LaurentPoly::from_terms([
            (h, RatFunc::one()),
            (h.neg(), RatFunc::from_int(-1)),
        ]));
        for i in 0..k {
            let f1 = LaurentPoly::from_terms([
                (Weight::zero(), RatFunc::one()),
                (a, -RatFunc::q_power(i * qa)),
            ]);
            let f2 = LaurentPoly::from_terms([
                (Weight::zero(), RatFunc::one()),
                (a.neg(), -RatFunc::q_power(i * qa)),
            ]);
            psi = psi.mul_laurent(&f1.mul_ref(&f2));
            // (1 - x_a q^i)(1 - x_{-a} q^i) = (x_a q^i - 1)(x_{-a} q^i - 1)
            inv = inv.mul(&XFrac::recip_binomial(a, i * qa).mul(&XFrac::recip_binomial(a.neg(), i * qa)));
        }
    }
    (psi, inv)
}

/// `psi L_f^{q,t} psi^{-1} = L_f^{q, q/t}` at `t = q^k`, on each test.
///
/// Multiplication operators cannot move the translation parts, so the right
/// side carries `f` itself; with `f(x^{-1})` the identity fails once `-w_0 != 1`.
pub fn verify_psi_conj(sys: &RootSystem, f: &SymPoly, k: i64, tests: &[SymPoly]) -> Verdict {
    let mut v = Verdict::new("psi-conj", sys);
    v.k = Some(k);
    match psi_conj(sys, f, k, tests, &mut v) {
        Ok(()) => v,
        Err(e) => v.error(e),
    }
}

fn psi_conj(sys: &RootSystem, f: &SymPoly, k: i64, tests: &[SymPoly], v: &mut Verdict) -> Result<(), MacError> {
    let at_t = MacParams::from_k_uniform(sys, rat(k, 1));
    let at_qt = MacParams::from_k_uniform(sys, rat(1 - k, 1));
    let lf: AffineOp = Daha::new(sys, at_t.t_half()?).op_lf(f);
    let lf_dual = Daha::new(sys, at_qt.t_half()?).op_lf(f);
    let (psi, inv) = psi_pair(sys, k);
    for (n, g) in tests.iter().enumerate() {
        let gl = g.to_laurent(sys);
        let lhs = psi.mul(&lf.apply_xfrac(sys, &inv.mul_laurent(&gl)));
        let rhs = XFrac::from_laurent(lf_dual.apply(sys, &gl)?);
        if lhs != rhs {
            v.fail(format!("test polynomial {}", n));
        }
    }
    Ok(())
}

/// Both parts of the Jack-level theorem as one verdict.
pub fn verify_jack_kadell(sys: &RootSystem, b: &Weight, m: &[i64]) -> Verdict {
    let mut v = Verdict::new("jack-kadell", sys);
    v.b = Some(b.coords(sys.rank));
    v.m = Some(m.to_vec());
    match jack::verify_jack_kadell(sys, b, m) {
        Ok(r) => {
            v.certificate.expansion = r.lhs_i;
            for n in r.notes {
                v.fail(n);
            }
            v
        }
        Err(e) => v.error(e),
    }
}

/// `Delta_k L_2 f = H_2 Delta_k f` on `m_c` for `c` up to coordinate height 2.
pub fn verify_lh_conjugation(sys: &RootSystem, k: i64) -> Verdict {
    let mut v = Verdict::new("lh-conjugation", sys);
    v.k = Some(k);
    let tests: Vec<SymPoly> = sys.dominant_up_to(2).into_iter().map(SymPoly::basis).collect();
    let kk = vec![k; sys.num_classes()];
    match jack::verify_lh_conjugation(sys, &kk, &tests) {
        Ok(res) => {
            for (c, ok) in tests.iter().zip(res) {
                if !ok {
                    v.fail(format!("fails on m_{:?}", c.support()[0].coords(sys.rank)));
                }
            }
            v
        }
        Err(e) => v.error(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::laurent::laurent_from_ints;
    use crate::rootdata::build_root_system;
    use crate::symfun::monomial_symmetric;

    #[test]
    fn delta_examples() {
        let a1 = build_root_system("A1").unwrap();
        let d = delta_factor(&a1, &[1], Parity::Even).unwrap().value;
        let qh = RatFunc::q_power(Q_DENOM / 2);
        let mut expect = laurent_from_ints(&[(&[2], 1), (&[-2], 1)]);
        expect.add_term(Weight::zero(), -(&qh + &qh.inv().unwrap()));
        assert_eq!(d, expect);
        let d = delta_factor(&a1, &[0], Parity::Odd).unwrap().value;
        assert_eq!(d, laurent_from_ints(&[(&[1], 1), (&[-1], -1)]));
        assert_eq!(delta_factor(&a1, &[0], Parity::Even).unwrap().value, LaurentPoly::one());
        let a2 = build_root_system("A2").unwrap();
        for m in 0..=1 {
            let d = delta_factor(&a2, &[m], Parity::Odd).unwrap().value;
            assert_eq!(symmetry_type(&a2, &d), Symmetry::Antisymmetric);
        }
    }

    #[test]
    fn kadell_a1() {
        let a1 = build_root_system("A1").unwrap();
        for b in 0..=2 {
            let w = Weight::from_coords(&[b]);
            let v = verify_kadell_i(&a1, &w, &[1]);
            assert!(v.passed(), "{:?}", v);
            for m in 0..=1 {
                let v = verify_kadell_ii(&a1, &w, &[m]);
                assert!(v.passed(), "{:?}", v);
            }
        }
    }

    #[test]
    fn operator_identities_a1() {
        let a1 = build_root_system("A1").unwrap();
        let b1 = Weight::from_coords(&[1]);
        let tests = vec![
            LaurentPoly::one(),
            laurent_from_ints(&[(&[1], 1)]),
            monomial_symmetric(&a1, &b1.scale(2)).unwrap(),
        ];
        assert!(verify_iota_mu(&a1, 1, &tests).passed());
        let v = verify_anti_product(&a1, &[1]);
        assert!(v.passed(), "{:?}", v);
        assert_eq!(verify_anti_product(&a1, &[0]).result, Outcome::Skipped);
        let syms = vec![SymPoly::basis(Weight::zero()), SymPoly::basis(b1), SymPoly::basis(b1.scale(2))];
        for k in 1..=2 {
            let v = verify_psi_conj(&a1, &SymPoly::basis(b1), k, &syms);
            assert!(v.passed(), "{:?}", v);
        }
    }
}
