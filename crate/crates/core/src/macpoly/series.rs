//! Truncated power series in `V = q^{1/Q_DENOM}` with rational coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exactfield::RatFunc;

/// `sum_{i <= order} c_i V^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<BigRational>,
}

impl QSeries {
    pub fn zero(order: usize) -> QSeries {
        QSeries { coeffs: vec![BigRational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> QSeries {
        let mut coeffs = vec![BigRational::zero(); order + 1];
        coeffs[0] = BigRational::one();
        QSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn mul(&self, o: &QSeries) -> QSeries {
        let n = self.order().min(o.order());
        let mut c = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        QSeries { coeffs: c }
    }

    /// Multiplies by `1 - V^e`, `e > 0`.
    pub fn mul_one_minus(&mut self, e: usize) {
        if e > self.order() {
            return;
        }
        for i in (e..=self.order()).rev() {
            let v = self.coeffs[i - e].clone();
            self.coeffs[i] -= v;
        }
    }

    /// Divides by `1 - V^e`, `e > 0`.
    pub fn div_one_minus(&mut self, e: usize) {
        if e > self.order() {
            return;
        }
        for i in e..=self.order() {
            let v = self.coeffs[i - e].clone();
            self.coeffs[i] += v;
        }
    }

    /// Expansion of a rational function of `V` alone whose denominator has
    /// a nonzero constant term.
    pub fn from_ratfunc(r: &RatFunc, order: usize) -> Option<QSeries> {
        let poly_series = |p: &crate::exactfield::Poly| -> Option<Vec<BigRational>> {
            let mut c = vec![BigRational::zero(); order + 1];
            for (m, v) in p.terms() {
                if m.0[1..].iter().any(|&e| e != 0) {
                    return None;
                }
                let e = m.0[0] as usize;
                if e <= order {
                    c[e] += v;
                }
            }
            Some(c)
        };
        let num = poly_series(r.numer())?;
        let den = poly_series(r.denom())?;
        if den[0].is_zero() {
            return None;
        }
        // solve den * out = num
        let inv0 = BigRational::one() / &den[0];
        let mut out = vec![BigRational::zero(); order + 1];
        for i in 0..=order {
            let mut s = num[i].clone();
            for j in 1..=i {
                if !den[j].is_zero() {
                    s -= &den[j] * &out[i - j];
                }
            }
            out[i] = s * &inv0;
        }
        Some(QSeries { coeffs: out })
    }

    pub fn to_string_q(&self, q_denom: i64) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = BigRational::new(BigInt::from(i as i64), BigInt::from(q_denom));
            parts.push(if e.is_zero() { c.to_string() } else { format!("{}*q^{}", c, e) });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series() {
        let mut s = QSeries::one(5);
        s.div_one_minus(1);
        assert!(s.coeffs().iter().all(|c| c.is_one()));
        s.mul_one_minus(1);
        assert_eq!(s, QSeries::one(5));
        let r = &RatFunc::one() / &(&RatFunc::one() - &RatFunc::q_power(1));
        assert_eq!(QSeries::from_ratfunc(&r, 5).unwrap().coeffs()[5], BigRational::one());
    }
}
