//! Canonical strings for coefficients.
//!
//! A polynomial prints as `[-][c*][monomial*](1 ± M)*...*(rest)` where the
//! binomial factors `(1 ± M)` are split off by trial division (largest `M`
//! first) and listed in ascending monomial order. The output depends only
//! on the canonical `num / den` pair, so it is deterministic.

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::params::ParamSymbols;
use super::poly::{Monomial, Poly, NVARS};
use super::ratfunc::RatFunc;

const MAX_CANDIDATES: usize = 4000;

pub fn ratfunc_string(r: &RatFunc, syms: &ParamSymbols) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let num = factored(r.numer(), syms);
    if r.denom().is_one() {
        return num.render();
    }
    let den = factored(r.denom(), syms);
    let den_str = den.render();
    let wrap = den.items() > 1 || !den.constant.is_one();
    if wrap {
        format!("{}/({})", num.render(), den_str)
    } else {
        format!("{}/{}", num.render(), den_str)
    }
}

struct Factored {
    constant: BigRational,
    monomial: Option<String>,
    factors: Vec<String>,
}

impl Factored {
    fn items(&self) -> usize {
        self.factors.len() + usize::from(self.monomial.is_some())
    }

    fn render(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        if let Some(m) = &self.monomial {
            parts.push(m.clone());
        }
        parts.extend(self.factors.iter().map(|f| format!("({})", f)));
        let abs = self.constant.abs();
        let neg = self.constant.is_negative();
        let mut s = String::new();
        if neg {
            s.push('-');
        }
        if parts.is_empty() {
            s.push_str(&abs.to_string());
            return s;
        }
        if !abs.is_one() {
            s.push_str(&abs.to_string());
            s.push('*');
        }
        s.push_str(&parts.join("*"));
        s
    }
}

fn factored(p: &Poly, syms: &ParamSymbols) -> Factored {
    let mono = p.monomial_content();
    let mut rest = p.div_monomial(&mono);
    let mut found: Vec<(Monomial, bool)> = Vec::new();

    if !rest.is_constant() {
        for cand in candidates(&rest) {
            for plus in [false, true] {
                let sign = if plus { BigRational::one() } else { -BigRational::one() };
                let b = Poly::one() + Poly::term(cand, sign);
                while !rest.is_constant() {
                    match rest.div_exact(&b) {
                        Some(q) => {
                            rest = q;
                            found.push((cand, plus));
                        }
                        None => break,
                    }
                }
            }
            if rest.is_constant() {
                break;
            }
        }
    }
    found.sort();

    let constant;
    let mut factors: Vec<String> = found
        .iter()
        .map(|(m, plus)| {
            let sign = if *plus { " + " } else { " - " };
            format!("1{}{}", sign, monomial_string(m, syms))
        })
        .collect();
    if rest.is_constant() {
        constant = rest.as_constant().unwrap();
    } else {
        let c = rest.trailing().unwrap().1.clone();
        let normalized = rest.scale(&c.recip());
        factors.push(poly_string(&normalized, syms));
        constant = c;
    }
    Factored {
        constant,
        monomial: if mono.is_one() {
            None
        } else {
            Some(monomial_string(&mono, syms))
        },
        factors,
    }
}

/// Candidate monomials `M` for binomial factors `1 ± M`, largest first.
fn candidates(p: &Poly) -> Vec<Monomial> {
    let g = p.exponent_gcds();
    let mut out: Vec<[u32; NVARS]> = vec![[0; NVARS]];
    for v in 0..NVARS {
        let d = p.degree_in(v);
        let step = if g[v] == 0 { 1 } else { g[v] } as usize;
        let mut next = Vec::new();
        for e in &out {
            for k in (0..=d).step_by(step) {
                let mut e2 = *e;
                e2[v] = k;
                next.push(e2);
            }
        }
        if next.len() > MAX_CANDIDATES {
            return Vec::new();
        }
        out = next;
    }
    let mut ms: Vec<Monomial> = out
        .into_iter()
        .map(Monomial)
        .filter(|m| !m.is_one())
        .collect();
    ms.sort();
    ms.reverse();
    ms
}

fn power_string(name: &str, e: i64, unit: i64) -> String {
    let g = e.gcd(&unit);
    let (n, d) = (e / g, unit / g);
    if d == 1 {
        if n == 1 {
            name.to_string()
        } else {
            format!("{}^{}", name, n)
        }
    } else {
        format!("{}^({}/{})", name, n, d)
    }
}

pub(crate) fn monomial_string(m: &Monomial, syms: &ParamSymbols) -> String {
    let mut parts = Vec::new();
    for v in 0..NVARS {
        let e = m.0[v];
        if e > 0 {
            let (name, unit) = syms.symbol(v);
            parts.push(power_string(name, e as i64, unit));
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Expanded form, ascending monomial order.
pub(crate) fn poly_string(p: &Poly, syms: &ParamSymbols) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (i, (m, c)) in p.terms().iter().enumerate() {
        let abs = c.abs();
        if i == 0 {
            if c.is_negative() {
                s.push('-');
            }
        } else if c.is_negative() {
            s.push_str(" - ");
        } else {
            s.push_str(" + ");
        }
        if m.is_one() {
            s.push_str(&abs.to_string());
        } else if abs.is_one() {
            s.push_str(&monomial_string(m, syms));
        } else {
            s.push_str(&format!("{}*{}", abs, monomial_string(m, syms)));
        }
    }
    if s.is_empty() {
        debug_assert!(p.terms().iter().all(|(_, c)| c.is_zero()));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::params::Q_DENOM;

    #[test]
    fn rogers_coefficient_string() {
        let q = RatFunc::q_power(Q_DENOM);
        let t = RatFunc::var_power(1, 2, 1);
        let one = RatFunc::one();
        let r = &(&(&one - &t) * &(&one + &q)) / &(&one - &(&q * &t));
        assert_eq!(
            r.to_canonical_string(&ParamSymbols::default()),
            "(1 - t)*(1 + q)/(1 - q*t)"
        );
    }

    #[test]
    fn half_powers_and_signs() {
        let qh = RatFunc::q_power(Q_DENOM / 2);
        let r = -(&qh + &qh.inv().unwrap());
        assert_eq!(
            r.to_canonical_string(&ParamSymbols::default()),
            "-(1 + q)/q^(1/2)"
        );
        assert_eq!(RatFunc::from_ratio(-3, 2).to_string(), "-3/2");
        assert_eq!(RatFunc::zero().to_string(), "0");
    }
}
