use std::collections::BTreeMap;

use macdonald_core::daha::{AffineOp, Daha};
use macdonald_core::rootdata::{build_root_system, ExtAffine};

fn braid_word(i: usize, j: usize, m: usize) -> Vec<usize> {
    (0..m).map(|k| if k % 2 == 0 { i } else { j }).collect()
}

#[test]
fn quadratic_and_braid_relations() {
    for label in ["A1", "A2", "B2", "C2", "G2"] {
        let sys = build_root_system(label).unwrap();
        let d = Daha::formal(&sys);
        let n = sys.rank;
        for j in 0..=n {
            let tj = d.op_t(j);
            let u = &d.t_half()[if j == 0 { 0 } else { sys.class[j - 1] }];
            let lhs = d.compose(
                &tj.sub(&AffineOp::scalar(&sys, u.clone())),
                &tj.add(&AffineOp::scalar(&sys, u.inv().unwrap())),
            );
            assert!(lhs.is_zero(), "{} quadratic T_{}", label, j);
        }
        for i in 0..=n {
            for j in (i + 1)..=n {
                let Some(m) = sys.coxeter(i, j) else { continue };
                assert_eq!(
                    d.op_t_word(0, &braid_word(i, j, m)),
                    d.op_t_word(0, &braid_word(j, i, m)),
                    "{} braid {} {}",
                    label,
                    i,
                    j
                );
            }
        }
    }
}

#[test]
fn y_operators_commute_and_multiply() {
    for label in ["A2", "B2"] {
        let sys = build_root_system(label).unwrap();
        let d = Daha::formal(&sys);
        let y1 = d.op_y(&sys.coweight(0));
        let y2 = d.op_y(&sys.coweight(1));
        let y12 = d.compose(&y1, &y2);
        assert_eq!(y12, d.compose(&y2, &y1), "{}", label);
        assert_eq!(y12, d.op_y(&sys.coweight(0).add(&sys.coweight(1))), "{}", label);
    }
    let a1 = build_root_system("A1").unwrap();
    let d = Daha::formal(&a1);
    let y = d.op_y(&a1.coweight(0));
    assert_eq!(d.compose(&y, &y), d.op_y(&a1.coweight(0).scale(2)));
}

#[test]
fn cross_relations() {
    for label in ["A2"] {
        let sys = build_root_system(label).unwrap();
        let d = Daha::formal(&sys);
        for i in 1..=sys.rank {
            let ti = d.op_t(i);
            let ti_inv = d.op_t_inv(i);
            for j in 1..=sys.rank {
                let b = sys.coweight(j - 1);
                let yb = d.op_y(&b);
                if i == j {
                    let ya_inv = d.op_y(&sys.simple_coroot(i - 1).neg());
                    let lhs = d.compose(&d.compose(&ti_inv, &yb), &ti_inv);
                    assert_eq!(lhs, d.compose(&yb, &ya_inv), "{} i={}", label, i);
                } else {
                    assert_eq!(d.compose(&ti, &yb), d.compose(&yb, &ti), "{} i={} j={}", label, i, j);
                }
            }
        }
    }
}

/// All words of length `<= 4` in `s_0..s_n`, grouped by the element they
/// spell when reduced; every group must give one operator.
#[test]
fn reduced_word_independence() {
    for label in ["A2", "B2"] {
        let sys = build_root_system(label).unwrap();
        let d = Daha::formal(&sys);
        let n = sys.rank + 1;
        let mut groups: BTreeMap<ExtAffine, Vec<Vec<usize>>> = BTreeMap::new();
        let mut stack: Vec<Vec<usize>> = vec![vec![]];
        while let Some(w) = stack.pop() {
            let g = sys.from_word(0, &w);
            if sys.length(&g) != w.len() {
                continue;
            }
            groups.entry(g).or_default().push(w.clone());
            if w.len() < 4 {
                for j in 0..n {
                    let mut w2 = w.clone();
                    w2.push(j);
                    stack.push(w2);
                }
            }
        }
        let mut compared = 0;
        for words in groups.values().filter(|w| w.len() > 1) {
            let first = d.op_t_word(0, &words[0]);
            for w in &words[1..] {
                assert_eq!(first, d.op_t_word(0, w), "{} {:?} vs {:?}", label, words[0], w);
                compared += 1;
            }
        }
        assert!(compared > 0);
    }
}
