use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::exactfield::{length_var, MonomialValue, ParamSymbols, RatFunc, NVARS, Q_DENOM};
use crate::rootdata::RootSystem;

use super::MacError;

/// `t_nu^{1/2} = sign * (U_nu if formal) * q^{r/2}`, i.e. `t_nu = U_nu^2 q^r`
/// or `t_nu = q^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TSpec {
    pub formal: bool,
    pub r: BigRational,
    pub sign: i8,
}

impl TSpec {
    pub fn formal() -> TSpec {
        TSpec { formal: true, r: BigRational::zero(), sign: 1 }
    }

    pub fn q_power(r: BigRational) -> TSpec {
        TSpec { formal: false, r, sign: 1 }
    }

    pub fn describe(&self) -> String {
        let mut s = String::new();
        if self.sign < 0 {
            s.push('-');
        }
        match (self.formal, self.r.is_zero()) {
            (true, true) => s.push_str("formal"),
            (true, false) => s.push_str(&format!("formal*q^{}", self.r)),
            (false, _) => s.push_str(&format!("q^{}", self.r)),
        }
        s
    }
}

/// One `TSpec` per root-length class, long first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MacParams {
    pub specs: Vec<TSpec>,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rational(s: &str) -> Result<BigRational, MacError> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    let bad = || MacError::Parse(format!("bad rational {:?}", s));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(rat(n, d))
        }
        None => Ok(rat(s.parse().map_err(|_| bad())?, 1)),
    }
}

impl MacParams {
    pub fn formal(sys: &RootSystem) -> MacParams {
        MacParams { specs: vec![TSpec::formal(); sys.num_classes()] }
    }

    /// `t_nu = q^r` for every class.
    pub fn t_power(sys: &RootSystem, r: BigRational) -> MacParams {
        MacParams { specs: vec![TSpec::q_power(r); sys.num_classes()] }
    }

    /// `t_nu = q_nu^{k_nu}` with `q_nu = q^{2/nu}`.
    pub fn from_k(sys: &RootSystem, k: &[BigRational]) -> MacParams {
        MacParams {
            specs: (0..sys.num_classes())
                .map(|c| TSpec::q_power(&k[c] * rat(2, 1) / &sys.class_nu[c]))
                .collect(),
        }
    }

    pub fn from_k_uniform(sys: &RootSystem, k: BigRational) -> MacParams {
        MacParams::from_k(sys, &vec![k; sys.num_classes()])
    }

    /// `"formal" | "q^<rational>"` per class, separated by `;`, long first.
    /// A single entry applies to every class.
    pub fn parse(sys: &RootSystem, spec: &str) -> Result<MacParams, MacError> {
        let parts: Vec<&str> = spec.split(';').map(str::trim).collect();
        let n = sys.num_classes();
        if parts.len() != 1 && parts.len() != n {
            return Err(MacError::Parse(format!(
                "{:?}: expected 1 or {} entries",
                spec, n
            )));
        }
        let mut specs = Vec::new();
        for p in &parts {
            let (sign, body) = match p.strip_prefix('-') {
                Some(rest) => (-1, rest.trim()),
                None => (1, *p),
            };
            let mut ts = if body == "formal" {
                TSpec::formal()
            } else if let Some(e) = body.strip_prefix("q^") {
                TSpec::q_power(parse_rational(e)?)
            } else if body == "q" {
                TSpec::q_power(rat(1, 1))
            } else if body == "1" {
                TSpec::q_power(rat(0, 1))
            } else {
                return Err(MacError::Parse(format!("bad parameter {:?}", p)));
            };
            ts.sign = sign;
            specs.push(ts);
        }
        if specs.len() == 1 {
            specs = vec![specs[0].clone(); n];
        }
        let out = MacParams { specs };
        out.t_half()?;
        Ok(out)
    }

    /// `k` spec: rationals per class, `t_nu = q_nu^{k_nu}`.
    pub fn parse_k(sys: &RootSystem, spec: &str) -> Result<MacParams, MacError> {
        let parts: Vec<BigRational> = spec
            .split(';')
            .map(parse_rational)
            .collect::<Result<_, _>>()?;
        let n = sys.num_classes();
        let k = match parts.len() {
            1 => vec![parts[0].clone(); n],
            l if l == n => parts,
            _ => return Err(MacError::Parse(format!("{:?}: expected 1 or {} entries", spec, n))),
        };
        let out = MacParams::from_k(sys, &k);
        out.t_half()?;
        Ok(out)
    }

    pub fn describe(&self) -> String {
        self.specs.iter().map(TSpec::describe).collect::<Vec<_>>().join(";")
    }

    pub fn is_formal(&self) -> bool {
        self.specs.iter().any(|s| s.formal)
    }

    fn half_v(r: &BigRational) -> Result<i64, MacError> {
        let e = r * rat(Q_DENOM / 2, 1);
        if !e.is_integer() {
            return Err(MacError::Parse(format!("q^{} is not representable", r)));
        }
        Ok(e.to_integer().to_i64().unwrap())
    }

    /// Values of `t_nu^{1/2}`.
    pub fn t_half(&self) -> Result<Vec<RatFunc>, MacError> {
        self.specs
            .iter()
            .enumerate()
            .map(|(c, s)| {
                let mut v = RatFunc::q_power(Self::half_v(&s.r)?);
                if s.formal {
                    v = &v * &RatFunc::var_power(length_var(c), 1, 1);
                }
                if s.sign < 0 {
                    v = -v;
                }
                Ok(v)
            })
            .collect()
    }

    /// Substitution of the specialized classes into formal expressions.
    pub fn assignment(&self) -> Result<[Option<MonomialValue>; NVARS], MacError> {
        let mut a = [None; NVARS];
        for (c, s) in self.specs.iter().enumerate() {
            if s.formal {
                if !s.r.is_zero() || s.sign < 0 {
                    return Err(MacError::Unsupported(
                        "shifted formal parameters cannot be substituted".into(),
                    ));
                }
                continue;
            }
            a[length_var(c)] = Some(MonomialValue { sign: s.sign, exponent: Self::half_v(&s.r)? });
        }
        Ok(a)
    }

    pub fn symbols(&self, sys: &RootSystem) -> ParamSymbols {
        ParamSymbols::macdonald(sys.num_classes())
    }

    /// `k_nu` with `t_nu = q_nu^{k_nu}`, required to be nonnegative integers.
    pub fn integer_k(&self, sys: &RootSystem) -> Result<Vec<i64>, MacError> {
        self.specs
            .iter()
            .enumerate()
            .map(|(c, s)| {
                let k = &s.r * &sys.class_nu[c] / rat(2, 1);
                if s.formal || !k.is_integer() || k < BigRational::zero() {
                    return Err(MacError::NonIntegerK(self.describe()));
                }
                Ok(k.to_integer().to_i64().unwrap())
            })
            .collect()
    }

    /// `t_nu -> t_nu q^{2/nu}` for every class.
    pub fn shifted(&self, sys: &RootSystem) -> MacParams {
        MacParams {
            specs: self
                .specs
                .iter()
                .enumerate()
                .map(|(c, s)| TSpec {
                    formal: s.formal,
                    r: &s.r + rat(2, 1) / &sys.class_nu[c],
                    sign: s.sign,
                })
                .collect(),
        }
    }
}
