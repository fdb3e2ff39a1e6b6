use std::collections::{HashMap, VecDeque};

use crate::exactfield::{Weight, MAX_RANK};

type Mat = Vec<Vec<i64>>;

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// The finite Weyl group, enumerated. Elements are indices; each carries its
/// matrix on coweight coordinates and on simple-root coordinates, and a
/// reduced word.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    rank: usize,
    on_coweights: Vec<Mat>,
    on_roots: Vec<Mat>,
    words: Vec<Vec<usize>>,
    mult: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    simple: Vec<usize>,
    longest: usize,
}

impl WeylGroup {
    pub fn generate(cartan: &[Vec<i64>]) -> WeylGroup {
        let n = cartan.len();
        let gens_b: Vec<Mat> = (0..n)
            .map(|i| {
                let mut m = identity(n);
                for j in 0..n {
                    m[j][i] -= cartan[i][j];
                }
                m
            })
            .collect();
        let gens_r: Vec<Mat> = (0..n)
            .map(|i| {
                let mut m = identity(n);
                for j in 0..n {
                    m[i][j] -= cartan[i][j];
                }
                m
            })
            .collect();

        let mut on_coweights = vec![identity(n)];
        let mut on_roots = vec![identity(n)];
        let mut words: Vec<Vec<usize>> = vec![Vec::new()];
        let mut index: HashMap<Mat, usize> = HashMap::new();
        index.insert(identity(n), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(g) = queue.pop_front() {
            for i in 0..n {
                let mb = mat_mul(&gens_b[i], &on_coweights[g]);
                if index.contains_key(&mb) {
                    continue;
                }
                let mr = mat_mul(&gens_r[i], &on_roots[g]);
                let mut w = vec![i];
                w.extend(&words[g]);
                index.insert(mb.clone(), on_coweights.len());
                queue.push_back(on_coweights.len());
                on_coweights.push(mb);
                on_roots.push(mr);
                words.push(w);
            }
        }
        let order = on_coweights.len();
        let mult: Vec<Vec<usize>> = (0..order)
            .map(|a| {
                (0..order)
                    .map(|b| index[&mat_mul(&on_coweights[a], &on_coweights[b])])
                    .collect()
            })
            .collect();
        let inverse = (0..order)
            .map(|a| (0..order).find(|&b| mult[a][b] == 0).unwrap())
            .collect();
        let simple = (0..n).map(|i| index[&gens_b[i]]).collect();
        let longest = (0..order).max_by_key(|&w| words[w].len()).unwrap();
        WeylGroup {
            rank: n,
            on_coweights,
            on_roots,
            words,
            mult,
            inverse,
            simple,
            longest,
        }
    }

    pub fn order(&self) -> usize {
        self.on_coweights.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `s_i`, 0-based.
    pub fn simple(&self, i: usize) -> usize {
        self.simple[i]
    }

    pub fn longest(&self) -> usize {
        self.longest
    }

    /// Reduced word, leftmost letter first; letters are 1-based.
    pub fn word(&self, w: usize) -> Vec<usize> {
        self.words[w].iter().map(|i| i + 1).collect()
    }

    pub fn length(&self, w: usize) -> usize {
        self.words[w].len()
    }

    pub fn act(&self, w: usize, z: &Weight) -> Weight {
        let m = &self.on_coweights[w];
        let mut h = [0i32; MAX_RANK];
        for (i, hi) in h.iter_mut().enumerate().take(self.rank) {
            *hi = (0..self.rank)
                .map(|k| m[i][k] as i32 * z.half_coord(k))
                .sum();
        }
        Weight::from_half(&h)
    }

    pub fn act_root(&self, w: usize, root: &[i64]) -> Vec<i64> {
        let m = &self.on_roots[w];
        (0..self.rank)
            .map(|i| (0..self.rank).map(|k| m[i][k] * root[k]).sum())
            .collect()
    }

    /// The element acting on coweights by `f`, if any.
    pub fn find(&self, f: impl Fn(&Weight) -> Weight) -> Option<usize> {
        let basis: Vec<Weight> = (0..self.rank)
            .map(|i| {
                let mut c = vec![0i64; self.rank];
                c[i] = 1;
                Weight::from_coords(&c)
            })
            .collect();
        let images: Vec<Weight> = basis.iter().map(&f).collect();
        (0..self.order()).find(|&w| basis.iter().zip(&images).all(|(b, im)| self.act(w, b) == *im))
    }

    /// Longest element of the stabilizer of `z`.
    pub fn longest_fixing(&self, z: &Weight) -> usize {
        (0..self.order())
            .filter(|&w| self.act(w, z) == *z)
            .max_by_key(|&w| self.length(w))
            .unwrap()
    }
}
