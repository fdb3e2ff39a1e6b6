//! Root systems, the finite and extended affine Weyl groups, dominance,
//! lengths and reduced words.
//!
//! Everything is expressed in the coweight basis `b_1..b_n`: a weight
//! `z = sum z_i b_i` has `(z, alpha_i) = z_i`. Roots are kept in the basis of
//! simple roots, so the pairing between a root and a coweight is the plain
//! dot product.

mod affine;
mod weyl;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exactfield::{FieldError, RatFunc, Weight, MAX_RANK, Q_DENOM};

pub use affine::ExtAffine;
pub use weyl::WeylGroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("unknown root system label {0:?}")]
    UnknownLabel(String),
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("weight has {got} coordinates, expected {want}")]
    RankMismatch { got: usize, want: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A positive root together with its coroot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosRoot {
    /// Coordinates in the simple roots.
    pub root: Vec<i64>,
    /// The coroot `2 alpha / (alpha, alpha)` as a coweight.
    pub coroot: Weight,
    /// 0 = long, 1 = short.
    pub class: usize,
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    pub label: String,
    pub rank: usize,
    /// `(alpha_i, alpha_j)`, long roots of square length 2.
    pub gram: Vec<Vec<BigRational>>,
    /// `(a_i, alpha_j)` with `a_i` the simple coroots; row `i` is `a_i` in
    /// the coweight basis.
    pub cartan: Vec<Vec<i64>>,
    /// `(b_i, b_j)`.
    pub coweight_gram: Vec<Vec<BigRational>>,
    pair_num: [[i64; MAX_RANK]; MAX_RANK],
    pair_den: i64,
    /// `nu_i = (alpha_i, alpha_i)`.
    pub nu: Vec<BigRational>,
    /// Root-length class of each simple root.
    pub class: Vec<usize>,
    /// Square lengths of the classes, long first.
    pub class_nu: Vec<BigRational>,
    pub positive: Vec<PosRoot>,
    /// Highest root in simple-root coordinates.
    pub theta: Vec<i64>,
    /// `theta` as a coweight (`theta` is long, so it equals its coroot).
    pub theta_coweight: Weight,
    /// Lattice index constant.
    pub m: i64,
    /// `O`: 0 and the indices of minuscule coweights.
    pub orbit: Vec<usize>,
    pub weyl: WeylGroup,
    /// `omega_r` for `r` in `orbit` (identity for `r = 0`).
    pub omega: Vec<usize>,
    /// `(b, rho)` denominator-free helper: `rho` in simple-root coordinates,
    /// doubled.
    rho2: Vec<i64>,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn gram_for(label: &str) -> Option<Vec<Vec<BigRational>>> {
    let r = |v: &[&[(i64, i64)]]| -> Vec<Vec<BigRational>> {
        v.iter()
            .map(|row| row.iter().map(|&(n, d)| rat(n, d)).collect())
            .collect()
    };
    match label {
        "A1" => Some(r(&[&[(2, 1)]])),
        "A2" => Some(r(&[&[(2, 1), (-1, 1)], &[(-1, 1), (2, 1)]])),
        "A3" => Some(r(&[
            &[(2, 1), (-1, 1), (0, 1)],
            &[(-1, 1), (2, 1), (-1, 1)],
            &[(0, 1), (-1, 1), (2, 1)],
        ])),
        "B2" => Some(r(&[&[(2, 1), (-1, 1)], &[(-1, 1), (1, 1)]])),
        "C2" => Some(r(&[&[(1, 1), (-1, 1)], &[(-1, 1), (2, 1)]])),
        "G2" => Some(r(&[&[(2, 3), (-1, 1)], &[(-1, 1), (2, 1)]])),
        _ => None,
    }
}

fn invert(m: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("singular Gram matrix");
        a.swap(col, piv);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let v = &a[col][c] * &f;
                    a[r][c] = &a[r][c] - &v;
                }
            }
        }
    }
    a.into_iter().map(|row| row[n..].to_vec()).collect()
}

/// Builds one of `A1`, `A2`, `A3`, `B2`, `C2`, `G2`.
pub fn build_root_system(label: &str) -> Result<RootSystem, RootError> {
    let label = label.trim().to_ascii_uppercase();
    let gram = gram_for(&label).ok_or_else(|| RootError::UnknownLabel(label.clone()))?;
    let n = gram.len();
    let nu: Vec<BigRational> = (0..n).map(|i| gram[i][i].clone()).collect();
    let two = rat(2, 1);
    let cartan: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = &two * &gram[i][j] / &gram[i][i];
                    assert!(c.is_integer());
                    c.to_integer().to_i64().unwrap()
                })
                .collect()
        })
        .collect();
    let mut class_nu: Vec<BigRational> = nu.clone();
    class_nu.sort();
    class_nu.dedup();
    class_nu.reverse();
    let class: Vec<usize> = nu
        .iter()
        .map(|v| class_nu.iter().position(|c| c == v).unwrap())
        .collect();

    let coweight_gram = invert(&gram);
    // 24 (u, v) = sum u2_i v2_j * 6 (b_i, b_j) with doubled coordinates
    let mut pair_den: i64 = 1;
    for row in &coweight_gram {
        for x in row {
            pair_den = pair_den.lcm(&(x * rat(Q_DENOM / 4, 1)).denom().to_i64().unwrap());
        }
    }
    let mut pair_num = [[0i64; MAX_RANK]; MAX_RANK];
    for i in 0..n {
        for j in 0..n {
            let v = &coweight_gram[i][j] * rat(Q_DENOM / 4 * pair_den, 1);
            pair_num[i][j] = v.to_integer().to_i64().unwrap();
        }
    }

    let weyl = WeylGroup::generate(&cartan);

    let mut positive: Vec<PosRoot> = Vec::new();
    for w in 0..weyl.order() {
        for i in 0..n {
            let mut e = vec![0i64; n];
            e[i] = 1;
            let root = weyl.act_root(w, &e);
            if root.iter().all(|&c| c >= 0) && !positive.iter().any(|p| p.root == root) {
                let mut a = [0i32; MAX_RANK];
                for (j, c) in cartan[i].iter().enumerate() {
                    a[j] = 2 * *c as i32;
                }
                let coroot = weyl.act(w, &Weight::from_half(&a[..n]));
                positive.push(PosRoot { root, coroot, class: class[i] });
            }
        }
    }
    positive.sort_by(|a, b| {
        let ha: i64 = a.root.iter().sum();
        let hb: i64 = b.root.iter().sum();
        ha.cmp(&hb).then_with(|| a.root.cmp(&b.root))
    });
    let theta = positive.last().unwrap().root.clone();
    let theta_coweight = positive.last().unwrap().coroot;

    let mut orbit = vec![0];
    orbit.extend((0..n).filter(|&i| theta[i] == 1).map(|i| i + 1));
    let m = match label.as_str() {
        "B2" | "C2" | "G2" => 1,
        _ => orbit.len() as i64,
    };

    let mut rho2 = vec![0i64; n];
    for p in &positive {
        for (r, c) in rho2.iter_mut().zip(&p.root) {
            *r += c;
        }
    }

    let mut sys = RootSystem {
        label,
        rank: n,
        gram,
        cartan,
        coweight_gram,
        pair_num,
        pair_den,
        nu,
        class,
        class_nu,
        positive,
        theta,
        theta_coweight,
        m,
        orbit,
        weyl,
        omega: Vec::new(),
        rho2,
    };
    sys.omega = sys
        .orbit
        .iter()
        .map(|&r| {
            if r == 0 {
                sys.weyl.identity()
            } else {
                let br = sys.coweight(r - 1);
                let stab = sys.weyl.longest_fixing(&br);
                sys.weyl.mul(sys.weyl.longest(), stab)
            }
        })
        .collect();
    Ok(sys)
}

impl RootSystem {
    pub fn num_classes(&self) -> usize {
        self.class_nu.len()
    }

    /// `b_i` (0-based).
    pub fn coweight(&self, i: usize) -> Weight {
        let mut c = vec![0i64; self.rank];
        c[i] = 1;
        Weight::from_coords(&c)
    }

    /// Simple coroot `a_i` (0-based) as a coweight.
    pub fn simple_coroot(&self, i: usize) -> Weight {
        Weight::from_coords(&self.cartan[i])
    }

    pub fn weight(&self, coords: &[i64]) -> Result<Weight, RootError> {
        if coords.len() != self.rank {
            return Err(RootError::RankMismatch { got: coords.len(), want: self.rank });
        }
        Ok(Weight::from_coords(coords))
    }

    /// `(u, v)` exactly.
    pub fn pair(&self, u: &Weight, v: &Weight) -> BigRational {
        let mut s = 0i64;
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += u.half_coord(i) as i64 * v.half_coord(j) as i64 * self.pair_num[i][j];
            }
        }
        BigRational::new(BigInt::from(s), BigInt::from(self.pair_den * Q_DENOM))
    }

    /// `(u, v)` in units of `1/Q_DENOM`.
    pub fn pair_v(&self, u: &Weight, v: &Weight) -> Result<i64, FieldError> {
        let mut s = 0i64;
        for i in 0..self.rank {
            let ui = u.half_coord(i) as i64;
            if ui == 0 {
                continue;
            }
            for j in 0..self.rank {
                s += ui * v.half_coord(j) as i64 * self.pair_num[i][j];
            }
        }
        if s % self.pair_den != 0 {
            return Err(FieldError::QPowerNotRepresentable(format!(
                "({:?}, {:?}) = {}",
                u,
                v,
                self.pair(u, v)
            )));
        }
        Ok(s / self.pair_den)
    }

    /// `(root, z)` for a root in simple-root coordinates.
    pub fn root_pair(root: &[i64], z: &Weight) -> BigRational {
        let s: i64 = root
            .iter()
            .enumerate()
            .map(|(i, c)| c * z.half_coord(i) as i64)
            .sum();
        rat(s, 2)
    }

    /// `(z, rho)` with `rho` the half-sum of positive roots; every simple
    /// coroot has value 1.
    pub fn height(&self, z: &Weight) -> BigRational {
        let s: i64 = (0..self.rank)
            .map(|i| self.rho2[i] * z.half_coord(i) as i64)
            .sum();
        rat(s, 4)
    }

    /// Sum of coweight coordinates; the size measure used for test grids.
    pub fn coord_height(&self, z: &Weight) -> i64 {
        (0..self.rank).map(|i| z.coord(i)).sum()
    }

    /// `r_nu = sum_{nu_i = nu} b_i` for the class.
    pub fn r_class(&self, class: usize) -> Weight {
        let c: Vec<i64> = (0..self.rank).map(|i| i64::from(self.class[i] == class)).collect();
        Weight::from_coords(&c)
    }

    /// `rho_nu = (nu/2) r_nu`, as exact coordinates.
    pub fn rho_class(&self, class: usize) -> Vec<BigRational> {
        let half = &self.class_nu[class] / rat(2, 1);
        (0..self.rank)
            .map(|i| if self.class[i] == class { half.clone() } else { BigRational::zero() })
            .collect()
    }

    /// Reflection `s_i` (0-based) of a coweight: `z - z_i a_i`.
    pub fn reflect(&self, i: usize, z: &Weight) -> Weight {
        let zi = z.half_coord(i);
        let mut h = *z.half();
        for (j, c) in self.cartan[i].iter().enumerate() {
            h[j] -= zi * *c as i32;
        }
        Weight::from_half(&h)
    }

    pub fn is_dominant(&self, z: &Weight) -> bool {
        z.is_dominant()
    }

    fn check_dominant(&self, z: &Weight) -> Result<(), RootError> {
        if z.is_dominant() {
            Ok(())
        } else {
            Err(RootError::NotDominant(z.to_coord_string(self.rank)))
        }
    }

    /// Coefficients of `z` in the simple coroots, if `z` lies in their span.
    pub fn coroot_coords(&self, z: &Weight) -> Vec<BigRational> {
        // z = C^T n
        let n = self.rank;
        let ct: Vec<Vec<BigRational>> = (0..n)
            .map(|i| (0..n).map(|j| rat(self.cartan[j][i], 1)).collect())
            .collect();
        let inv = invert(&ct);
        (0..n)
            .map(|i| {
                let mut s = BigRational::zero();
                for j in 0..n {
                    s += &inv[i][j] * rat(z.half_coord(j) as i64, 2);
                }
                s
            })
            .collect()
    }

    /// `c < b` in the dominance order: `b - c` is a nonzero sum of simple
    /// coroots with nonnegative integer coefficients.
    pub fn dominance_less(&self, c: &Weight, b: &Weight) -> Result<bool, RootError> {
        self.check_dominant(c)?;
        self.check_dominant(b)?;
        if c == b {
            return Ok(false);
        }
        Ok(self
            .coroot_coords(&b.sub(c))
            .iter()
            .all(|x| x.is_integer() && !x.is_negative()))
    }

    /// All dominant `c` with `c <= b`, listed so that smaller elements come
    /// first; ties broken by height, then coordinates.
    pub fn lower_cone(&self, b: &Weight) -> Result<Vec<Weight>, RootError> {
        self.check_dominant(b)?;
        let bound = self.height(b).floor().to_integer().to_i64().unwrap();
        let n = self.rank;
        let mut out = Vec::new();
        let mut counts = vec![0i64; n];
        loop {
            let mut h = *b.half();
            for (i, k) in counts.iter().enumerate() {
                for (j, c) in self.cartan[i].iter().enumerate() {
                    h[j] -= 2 * (*k * *c) as i32;
                }
            }
            let c = Weight::from_half(&h);
            if c.is_dominant() {
                out.push(c);
            }
            // odometer over n_i >= 0 with sum n_i <= bound
            let mut i = 0;
            loop {
                if i == n {
                    out.sort_by(|x, y| {
                        self.height(x)
                            .cmp(&self.height(y))
                            .then_with(|| x.half()[..n].cmp(&y.half()[..n]))
                    });
                    return Ok(out);
                }
                counts[i] += 1;
                if counts.iter().sum::<i64>() <= bound {
                    break;
                }
                counts[i] = 0;
                i += 1;
            }
        }
    }

    /// Dominant coweights with coordinate sum at most `h`, ordered by
    /// coordinate sum then coordinates.
    pub fn dominant_up_to(&self, h: i64) -> Vec<Weight> {
        let n = self.rank;
        let mut out = Vec::new();
        let mut c = vec![0i64; n];
        loop {
            if c.iter().sum::<i64>() <= h {
                out.push(Weight::from_coords(&c));
            }
            let mut i = 0;
            loop {
                if i == n {
                    out.sort_by(|x, y| {
                        self.coord_height(x)
                            .cmp(&self.coord_height(y))
                            .then_with(|| x.cmp(y))
                    });
                    return out;
                }
                c[i] += 1;
                if c[i] <= h {
                    break;
                }
                c[i] = 0;
                i += 1;
            }
        }
    }

    /// The W-orbit of `z`, sorted.
    pub fn orbit_of(&self, z: &Weight) -> Vec<Weight> {
        let mut out: Vec<Weight> = (0..self.weyl.order()).map(|w| self.weyl.act(w, z)).collect();
        out.sort();
        out.dedup();
        out
    }

    /// The dominant element of the orbit of `z`.
    pub fn dominant_rep(&self, z: &Weight) -> Weight {
        let mut z = *z;
        while let Some(i) = (0..self.rank).find(|&i| z.half_coord(i) < 0) {
            z = self.reflect(i, &z);
        }
        z
    }

    /// `r*` with `b_{r*} = -w_0 b_r`, for `r` in `O` (0 maps to 0).
    pub fn dual_index(&self, r: usize) -> usize {
        if r == 0 {
            return 0;
        }
        let img = self.weyl.act(self.weyl.longest(), &self.coweight(r - 1)).neg();
        (0..self.rank).find(|&i| img == self.coweight(i)).unwrap() + 1
    }

    /// `m_ij` of the affine Coxeter diagram (indices 0..=n); `None` for an
    /// infinite bond.
    pub fn coxeter(&self, i: usize, j: usize) -> Option<usize> {
        if i == j {
            return Some(1);
        }
        let root = |k: usize| -> Vec<i64> {
            if k == 0 {
                self.theta.iter().map(|c| -c).collect()
            } else {
                let mut e = vec![0; self.rank];
                e[k - 1] = 1;
                e
            }
        };
        let (ri, rj) = (root(i), root(j));
        let ip = |u: &[i64], v: &[i64]| -> BigRational {
            let mut s = BigRational::zero();
            for a in 0..self.rank {
                for b in 0..self.rank {
                    s += &self.gram[a][b] * rat(u[a] * v[b], 1);
                }
            }
            s
        };
        let c = ip(&ri, &rj);
        let cos2 = &c * &c / (ip(&ri, &ri) * ip(&rj, &rj));
        let quarter = rat(1, 4);
        if cos2.is_zero() {
            Some(2)
        } else if cos2 == quarter {
            Some(3)
        } else if cos2 == rat(1, 2) {
            Some(4)
        } else if cos2 == rat(3, 4) {
            Some(6)
        } else {
            None
        }
    }

    /// `x_i(t^rho q^b) = q^{(b_i, b)} prod_nu t_nu^{(b_i, rho_nu)}` for each
    /// `i`, where `t_half[class]` is the value of `t_nu^{1/2}`.
    pub fn eigenvalue_point(
        &self,
        b: &Weight,
        t_half: &[RatFunc],
    ) -> Result<Vec<RatFunc>, RootError> {
        let mut out = Vec::with_capacity(self.rank);
        for i in 0..self.rank {
            let bi = self.coweight(i);
            let mut v = RatFunc::q_power(self.pair_v(&bi, b)?);
            for (class, th) in t_half.iter().enumerate().take(self.num_classes()) {
                // t^{(b_i, rho_nu)} = (t^{1/2})^{nu (b_i, r_nu)}
                let e = &self.class_nu[class] * self.pair(&bi, &self.r_class(class));
                if !e.is_integer() {
                    return Err(FieldError::Lattice(format!("t-exponent {}", e)).into());
                }
                v = &v * &th.pow(e.to_integer().to_i64().unwrap());
            }
            out.push(v);
        }
        Ok(out)
    }

    /// Evaluates a Laurent polynomial at the point `x_i -> vals[i]`; every
    /// exponent must be integral.
    pub fn evaluate(
        &self,
        f: &crate::exactfield::LaurentPoly,
        vals: &[RatFunc],
    ) -> Result<RatFunc, RootError> {
        let mut acc = RatFunc::zero();
        for (e, c) in f.iter() {
            if !e.is_integral() {
                return Err(FieldError::Lattice(format!("half exponent {:?}", e)).into());
            }
            let mut term = c.clone();
            for (i, v) in vals.iter().enumerate() {
                term = &term * &v.pow(e.coord(i));
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }
}
