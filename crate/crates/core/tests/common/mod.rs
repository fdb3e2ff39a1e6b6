//! Independent reference data for the integration tests.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_rational::Rational64;

/// Weyl-character multiplicities by Freudenthal's recursion, for type
/// `A1` or `A2`, in Dynkin-label coordinates.
pub struct CharacterOracle {
    /// `(omega_i, omega_j)`.
    gram: Vec<Vec<Rational64>>,
    /// Positive roots in Dynkin labels.
    positive: Vec<Vec<i64>>,
    /// Simple roots in Dynkin labels.
    simple: Vec<Vec<i64>>,
}

fn r(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

impl CharacterOracle {
    pub fn new(label: &str) -> CharacterOracle {
        match label {
            "A1" => CharacterOracle {
                gram: vec![vec![r(1, 2)]],
                positive: vec![vec![2]],
                simple: vec![vec![2]],
            },
            "A2" => CharacterOracle {
                gram: vec![vec![r(2, 3), r(1, 3)], vec![r(1, 3), r(2, 3)]],
                positive: vec![vec![2, -1], vec![-1, 2], vec![1, 1]],
                simple: vec![vec![2, -1], vec![-1, 2]],
            },
            _ => panic!("oracle covers A1 and A2 only"),
        }
    }

    fn ip(&self, a: &[i64], b: &[i64]) -> Rational64 {
        let mut s = r(0, 1);
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                s += self.gram[i][j] * r(x * y, 1);
            }
        }
        s
    }

    fn dominant(&self, mu: &[i64]) -> Vec<i64> {
        let mut v = mu.to_vec();
        while let Some(i) = (0..v.len()).find(|&i| v[i] < 0) {
            let c = v[i];
            for (j, a) in self.simple[i].iter().enumerate() {
                v[j] -= c * a;
            }
        }
        v
    }

    /// Multiplicities of the dominant weights of the irreducible module
    /// with highest weight `lambda`.
    pub fn dominant_multiplicities(&self, lambda: &[i64]) -> BTreeMap<Vec<i64>, i64> {
        let n = lambda.len();
        let rho = vec![1i64; n];
        let add = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<i64>>();
        let lr = add(lambda, &rho);
        let norm_l = self.ip(&lr, &lr);
        // dominant weights lambda - sum n_i alpha_i, by increasing depth
        let bound = lambda.iter().sum::<i64>() + 1;
        let mut below: Vec<(i64, Vec<i64>)> = Vec::new();
        let mut counts = vec![0i64; n];
        'outer: loop {
            let mut mu = lambda.to_vec();
            for (i, c) in counts.iter().enumerate() {
                for (j, a) in self.simple[i].iter().enumerate() {
                    mu[j] -= c * a;
                }
            }
            if mu.iter().all(|&x| x >= 0) {
                below.push((counts.iter().sum(), mu));
            }
            for i in 0..n {
                counts[i] += 1;
                if counts[i] <= bound {
                    continue 'outer;
                }
                counts[i] = 0;
            }
            break;
        }
        below.sort();
        let mut mult: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        for (depth, mu) in below {
            if depth == 0 {
                mult.insert(mu, 1);
                continue;
            }
            let mr = add(&mu, &rho);
            let denom = norm_l - self.ip(&mr, &mr);
            let mut num = r(0, 1);
            for a in &self.positive {
                // the alpha-string through mu is unbroken
                for k in 1.. {
                    let nu: Vec<i64> = mu.iter().zip(a).map(|(x, y)| x + k * y).collect();
                    let Some(&m) = mult.get(&self.dominant(&nu)) else { break };
                    num += r(2 * m, 1) * self.ip(&nu, a);
                }
            }
            let v = num / denom;
            assert!(v.is_integer());
            if *v.numer() != 0 {
                mult.insert(mu, v.to_integer());
            }
        }
        mult
    }
}
