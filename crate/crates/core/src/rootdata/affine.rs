//! The extended affine Weyl group `W^b`, elements written `b' w`.

use serde::Serialize;

use crate::exactfield::{LaurentPoly, RatFunc, Weight};

use super::RootSystem;

/// `b' w`, acting on monomials by `x_c -> x_{w c} q^{-(b, w c)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ExtAffine {
    pub shift: Weight,
    pub w: usize,
}

impl RootSystem {
    pub fn ext_identity(&self) -> ExtAffine {
        ExtAffine { shift: Weight::zero(), w: self.weyl.identity() }
    }

    pub fn ext_translation(&self, b: &Weight) -> ExtAffine {
        assert!(b.is_integral(), "translations must lie in B");
        ExtAffine { shift: *b, w: self.weyl.identity() }
    }

    pub fn ext_weyl(&self, w: usize) -> ExtAffine {
        ExtAffine { shift: Weight::zero(), w }
    }

    /// The reflection `s_theta` in the finite Weyl group.
    pub fn s_theta(&self) -> usize {
        let theta = self.theta.clone();
        let tc = self.theta_coweight;
        self.weyl
            .find(|z| {
                let k: i64 = theta
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c * z.half_coord(i) as i64)
                    .sum();
                // k = 2 (theta, z)
                let mut h = *z.half();
                for (i, hi) in h.iter_mut().enumerate() {
                    *hi -= (k as i32) * tc.half_coord(i) / 2;
                }
                Weight::from_half(&h)
            })
            .expect("s_theta lies in W")
    }

    /// `s_j` for `0 <= j <= n`; `s_0 = theta' s_theta`.
    pub fn ext_simple(&self, j: usize) -> ExtAffine {
        if j == 0 {
            ExtAffine { shift: self.theta_coweight, w: self.s_theta() }
        } else {
            self.ext_weyl(self.weyl.simple(j - 1))
        }
    }

    /// `pi_r = b_r' omega_r^{-1}` for `r` in `O`.
    pub fn ext_pi(&self, r: usize) -> ExtAffine {
        let pos = self
            .orbit
            .iter()
            .position(|&o| o == r)
            .unwrap_or_else(|| panic!("{} is not in O", r));
        if r == 0 {
            return self.ext_identity();
        }
        ExtAffine {
            shift: self.coweight(r - 1),
            w: self.weyl.inv(self.omega[pos]),
        }
    }

    pub fn ext_mul(&self, g: &ExtAffine, h: &ExtAffine) -> ExtAffine {
        ExtAffine {
            shift: g.shift.add(&self.weyl.act(g.w, &h.shift)),
            w: self.weyl.mul(g.w, h.w),
        }
    }

    pub fn ext_inv(&self, g: &ExtAffine) -> ExtAffine {
        let wi = self.weyl.inv(g.w);
        ExtAffine { shift: self.weyl.act(wi, &g.shift).neg(), w: wi }
    }

    /// `x_e -> x_{e'} q^{k / Q_DENOM}`; returns `(e', k)`.
    pub fn act_monomial(&self, g: &ExtAffine, e: &Weight) -> (Weight, i64) {
        let we = self.weyl.act(g.w, e);
        if g.shift.is_zero() {
            return (we, 0);
        }
        let k = self
            .pair_v(&g.shift, &we)
            .expect("pairing of B with the half-lattice is representable");
        (we, -k)
    }

    pub fn act_laurent(&self, g: &ExtAffine, f: &LaurentPoly) -> LaurentPoly {
        f.map_terms(|e, c| {
            let (e2, k) = self.act_monomial(g, e);
            if k == 0 {
                (e2, c.clone())
            } else {
                (e2, c * &RatFunc::q_power(k))
            }
        })
    }

    /// Image of the affine root `[alpha, k]` (alpha in simple-root
    /// coordinates).
    pub fn act_affine_root(&self, g: &ExtAffine, root: &[i64], k: i64) -> (Vec<i64>, i64) {
        let beta = self.weyl.act_root(g.w, root);
        let n: i64 = beta
            .iter()
            .enumerate()
            .map(|(i, c)| c * g.shift.coord(i))
            .sum();
        (beta, k - n)
    }

    fn affine_root_negative(root: &[i64], k: i64) -> bool {
        k < 0 || (k == 0 && root.iter().any(|&c| c < 0))
    }

    /// Number of positive affine roots sent to negative ones.
    pub fn length(&self, g: &ExtAffine) -> usize {
        let mut count = 0i64;
        for p in &self.positive {
            let neg: Vec<i64> = p.root.iter().map(|c| -c).collect();
            for (alpha, k0) in [(&p.root, 0i64), (&neg, 1i64)] {
                let beta = self.weyl.act_root(g.w, alpha);
                let n: i64 = beta
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c * g.shift.coord(i))
                    .sum();
                count += (n - k0).max(0);
                if n >= k0 && beta.iter().any(|&c| c < 0) {
                    count += 1;
                }
            }
        }
        count as usize
    }

    fn simple_affine_root(&self, j: usize) -> (Vec<i64>, i64) {
        if j == 0 {
            (self.theta.iter().map(|c| -c).collect(), 1)
        } else {
            let mut e = vec![0; self.rank];
            e[j - 1] = 1;
            (e, 0)
        }
    }

    /// `g = pi_r s_{j_1} ... s_{j_l}` with `l = length(g)`; the word is
    /// returned leftmost letter first.
    pub fn reduced_word(&self, g: &ExtAffine) -> (usize, Vec<usize>) {
        let mut g = *g;
        let mut rev = Vec::new();
        'outer: loop {
            for j in 0..=self.rank {
                let (root, k) = self.simple_affine_root(j);
                let (r2, k2) = self.act_affine_root(&g, &root, k);
                if Self::affine_root_negative(&r2, k2) {
                    g = self.ext_mul(&g, &self.ext_simple(j));
                    rev.push(j);
                    continue 'outer;
                }
            }
            break;
        }
        rev.reverse();
        let r = self
            .orbit
            .iter()
            .copied()
            .find(|&r| self.ext_pi(r) == g)
            .expect("length-zero element is some pi_r");
        (r, rev)
    }

    pub fn from_word(&self, r: usize, word: &[usize]) -> ExtAffine {
        word.iter()
            .fold(self.ext_pi(r), |acc, &j| self.ext_mul(&acc, &self.ext_simple(j)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::Q_DENOM;
    use crate::rootdata::build_root_system;

    #[test]
    fn s1_and_s0_on_a1() {
        let r = build_root_system("A1").unwrap();
        let b1 = Weight::from_coords(&[1]);
        assert_eq!(r.act_monomial(&r.ext_simple(1), &b1), (b1.neg(), 0));
        // s_0(x_1) = x_1 x_theta^{-1} q = x_{-b_1} q
        assert_eq!(r.act_monomial(&r.ext_simple(0), &b1), (b1.neg(), Q_DENOM));
    }

    #[test]
    fn s0_matches_substitution_formula() {
        for l in ["A1", "A2", "B2", "C2", "G2"] {
            let r = build_root_system(l).unwrap();
            let s0 = r.ext_simple(0);
            for i in 0..r.rank {
                let bi = r.coweight(i);
                // x_i x_theta^{-(b_i, theta)} q^{(b_i, theta)}
                let p = RootSystem::root_pair(&r.theta, &bi);
                let k = p.to_integer().try_into().unwrap();
                let e = bi.sub(&r.theta_coweight.scale(k));
                assert_eq!(r.act_monomial(&s0, &bi), (e, Q_DENOM * k as i64));
            }
            assert_eq!(r.ext_mul(&s0, &s0), r.ext_identity());
        }
    }

    #[test]
    fn pi_r_formula_and_length_zero() {
        for l in ["A1", "A2", "B2", "C2"] {
            let r = build_root_system(l).unwrap();
            for &o in &r.orbit[1..] {
                let pi = r.ext_pi(o);
                assert_eq!(r.length(&pi), 0);
                let rs = r.dual_index(o);
                let omega_inv = r.weyl.inv(r.omega[r.orbit.iter().position(|&x| x == o).unwrap()]);
                for i in 0..r.rank {
                    let bi = r.coweight(i);
                    let q = r.pair_v(&r.coweight(rs - 1), &bi).unwrap();
                    assert_eq!(r.act_monomial(&pi, &bi), (r.weyl.act(omega_inv, &bi), q));
                }
            }
        }
    }

    #[test]
    fn a1_translation_words() {
        let r = build_root_system("A1").unwrap();
        let b1 = r.ext_translation(&Weight::from_coords(&[1]));
        assert_eq!(r.reduced_word(&b1), (1, vec![1]));
        let a1 = r.ext_translation(&Weight::from_coords(&[2]));
        assert_eq!(r.reduced_word(&a1), (0, vec![0, 1]));
        assert_eq!(r.reduced_word(&r.ext_identity()), (0, vec![]));
    }

    #[test]
    fn words_reproduce_and_lengths_agree() {
        for l in ["A1", "A2", "B2", "G2"] {
            let r = build_root_system(l).unwrap();
            let mut elems = Vec::new();
            for w in 0..r.weyl.order() {
                for b in r.dominant_up_to(2) {
                    elems.push(ExtAffine { shift: b, w });
                    elems.push(ExtAffine { shift: b.neg(), w });
                }
            }
            for g in elems {
                let (rr, word) = r.reduced_word(&g);
                assert_eq!(word.len(), r.length(&g));
                assert_eq!(r.from_word(rr, &word), g);
            }
        }
    }

    #[test]
    fn translation_lengths() {
        let r = build_root_system("G2").unwrap();
        let y1 = r.ext_translation(&r.coweight(0));
        let y2 = r.ext_translation(&r.coweight(1));
        assert_eq!(r.length(&y1), 10);
        assert_eq!(r.length(&y2), 6);
        // dominant translations add lengths
        assert_eq!(r.length(&r.ext_mul(&y1, &y2)), 16);
    }
}
