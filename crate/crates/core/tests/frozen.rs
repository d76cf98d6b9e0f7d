//! Values computed once by an independent brute-force search and frozen.

use lowlight::oracle::binomial::binomial;
use lowlight::oracle::enumerate::{exhaustive_min, star_min_covering, Stat};
use lowlight::oracle::hamming::{greedy_hamming_cost, min_hamming_cost};
use lowlight::oracle::hardgraph::scan;
use lowlight::oracle::shapes::{catalan, exhaustive_min_cost, min_cost};
use lowlight::oracle::Caps;
use lowlight::Exec;

/// `(n, weight by depth 1.., covering by depth 1..)` on the unit line.
const LINE: &[(usize, &[u64], &[u64])] = &[
    (2, &[1], &[0]),
    (3, &[2, 2], &[0, 0]),
    (4, &[4, 3, 3], &[1, 0, 0]),
    (5, &[6, 4, 4, 4], &[1, 0, 0, 0]),
    (6, &[9, 6, 5, 5, 5], &[2, 1, 0, 0, 0]),
    (7, &[12, 8, 6, 6, 6, 6], &[2, 1, 0, 0, 0, 0]),
];

/// Minimum `Cost'` over binary trees with `n = 1..=12` vertices, by depth.
const COST_PRIME: &[(usize, [Option<u64>; 12])] = &[
    (1, [Some(0), Some(0), Some(1), None, None, None, None, None, None, None, None, None]),
    (2, [Some(0), Some(0), Some(0), Some(1), Some(2), Some(3), Some(5), None, None, None, None, None]),
    (3, [Some(0), Some(0), Some(0), Some(0), Some(1), Some(2), Some(3), Some(4), Some(5), Some(6), Some(8), Some(10)]),
    (4, [Some(0), Some(0), Some(0), Some(0), Some(0), Some(1), Some(2), Some(3), Some(4), Some(5), Some(6), Some(7)]),
    (5, [Some(0), Some(0), Some(0), Some(0), Some(0), Some(0), Some(1), Some(2), Some(3), Some(4), Some(5), Some(6)]),
];

const HAMMING: &[(u64, &[u64])] = &[
    (1, &[0, 0, 1]),
    (2, &[0, 0, 0, 1, 2, 3, 5]),
    (3, &[0, 0, 0, 0, 1, 2, 3, 4, 5, 6, 8, 10, 12, 14, 17]),
    (4, &[0, 0, 0, 0, 0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 16, 18, 20, 22, 24, 26, 28, 30, 33, 36, 39, 42, 45, 49]),
];

#[test]
fn line_minima() {
    let caps = Caps::default();
    for &(n, weights, coverings) in LINE {
        for h in 1..n {
            let w = exhaustive_min(n, h, Stat::Weight, &caps, Exec::Sequential).unwrap();
            let c = exhaustive_min(n, h, Stat::Covering, &caps, Exec::Sequential).unwrap();
            assert_eq!(w, weights[h - 1], "weight n={n} h={h}");
            assert_eq!(c, coverings[h - 1], "covering n={n} h={h}");
        }
        assert_eq!(u64::from(star_min_covering(n)), coverings[0]);
    }
}

#[test]
fn binary_cost_minima() {
    let caps = Caps::default();
    for (h, row) in COST_PRIME {
        for (i, want) in row.iter().enumerate() {
            let n = i + 1;
            assert_eq!(min_cost(n, *h).ok(), *want, "dp n={n} h={h}");
            if n <= 9 {
                assert_eq!(exhaustive_min_cost(n, *h, &caps, Exec::default()).ok(), *want, "scan n={n} h={h}");
            }
        }
    }
}

#[test]
fn hamming_minima() {
    for (h, row) in HAMMING {
        for (i, &want) in row.iter().enumerate() {
            let n = i as u64 + 1;
            assert_eq!(min_hamming_cost(n, *h).unwrap().value, want, "n={n} h={h}");
            assert_eq!(greedy_hamming_cost(n as usize, *h as usize).unwrap(), want);
        }
        let full = row.len() as u64 + 1;
        assert!(min_hamming_cost(full, *h).is_err());
    }
    let hm = min_hamming_cost(7, 2).unwrap();
    assert_eq!((hm.r, hm.remainder, hm.value), (1, 1, 5));
}

#[test]
fn catalan_and_binomials() {
    let cat = [1u64, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796];
    for (n, &c) in cat.iter().enumerate() {
        assert_eq!(catalan(n), c);
    }
    assert_eq!(binomial(10, 3).to_string(), "120");
    assert_eq!(binomial(60, 30).to_string(), "118264581564861424");
    assert_eq!(binomial(3, 5).to_string(), "0");
}

#[test]
fn hard_graph_products() {
    // fan graphs have Fibonacci-many spanning trees: F(2n - 2)
    let trees = [8u64, 21, 55, 144, 377];
    for (i, n) in (4..=8).enumerate() {
        let s = scan(n, 1000, Exec::default()).unwrap();
        assert_eq!(s.min_product, (n as u64 - 2, 1), "n={n}");
        assert_eq!(s.spanning_trees, trees[i]);
        assert_eq!(s.mst_weight, n as u64 - 2 + 1000);
    }
}
