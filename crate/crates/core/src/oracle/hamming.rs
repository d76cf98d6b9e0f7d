//! Vocabularies of binary words and the minimum total Hamming weight.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::binomial::binomial;
use crate::oracle::shapes::BinaryTree;

/// `n` distinct binary words; `hcost` is the total number of ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryWordSet {
    words: BTreeSet<String>,
    hcost: u64,
}

impl BinaryWordSet {
    pub fn new<I: IntoIterator<Item = String>>(words: I) -> Result<Self> {
        let mut set = BTreeSet::new();
        for w in words {
            if w.bytes().any(|b| b != b'0' && b != b'1') {
                return Err(Error::Domain(format!("{w:?} is not a binary word")));
            }
            if !set.insert(w.clone()) {
                return Err(Error::Domain(format!("duplicate word {w:?}")));
            }
        }
        let hcost = set.iter().map(|w| hamming_weight(w)).sum();
        Ok(BinaryWordSet { words: set, hcost })
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn hcost(&self) -> u64 {
        self.hcost
    }

    pub fn max_len(&self) -> usize {
        self.words.iter().map(String::len).max().unwrap_or(0)
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(String::as_str)
    }
}

pub fn hamming_weight(word: &str) -> u64 {
    word.bytes().filter(|&b| b == b'1').count() as u64
}

/// One word per vertex of `tree`.
pub fn vocabulary(tree: &BinaryTree) -> BinaryWordSet {
    BinaryWordSet::new(tree.words()).expect("root paths are distinct")
}

/// `H(n, h)` with the parameters of its closed form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HammingMin {
    pub n: u64,
    pub h: u64,
    /// Highest weight class taken whole; `-1` when not even the zero-weight
    /// words are used up.
    pub r: i64,
    /// Words of weight `r + 1` taken.
    pub remainder: u64,
    pub value: u64,
}

/// `2^(h+1) - 1`, the number of binary words of length at most `h`.
pub fn word_capacity(h: u64) -> BigUint {
    (BigUint::from(1u32) << (h + 1)) - 1u32
}

/// Minimum total Hamming weight of `n` distinct words of length at most
/// `h`. Words of weight `i` number `C(h+1, i+1)`; an optimal set takes
/// whole weight classes `0..=r` and `N > 0` words of weight `r + 1`.
pub fn min_hamming_cost(n: u64, h: u64) -> Result<HammingMin> {
    if n == 0 {
        return Err(Error::InvalidSize("empty vocabulary".into()));
    }
    if BigUint::from(n) > word_capacity(h) {
        return Err(Error::Domain(format!("only 2^{}-1 words have at most {h} bits", h + 1)));
    }
    let n_big = BigUint::from(n);
    let mut taken = BigUint::zero();
    let mut cost = BigUint::zero();
    let mut r: i64 = -1;
    loop {
        let i = (r + 1) as u64;
        let class = binomial(h + 1, i + 1);
        if &taken + &class >= n_big {
            break;
        }
        taken += &class;
        cost += class * i;
        r += 1;
    }
    let remainder = (&n_big - &taken).to_u64().expect("below n");
    let value = cost + BigUint::from(remainder) * (r + 1) as u64;
    Ok(HammingMin {
        n,
        h,
        r,
        remainder,
        value: value.to_u64().ok_or_else(|| Error::Resource("H(n,h) overflows u64".into()))?,
    })
}

/// All words of length at most `h`, shortest first, then lexicographic.
pub fn all_words(h: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    for len in 1..=h {
        for bits in 0..1u64 << len {
            out.push(format!("{bits:0len$b}"));
        }
    }
    out
}

/// `H(n, h)` by taking the `n` lightest words.
pub fn greedy_hamming_cost(n: usize, h: usize) -> Result<u64> {
    let mut weights: Vec<u64> = all_words(h).iter().map(|w| hamming_weight(w)).collect();
    if n > weights.len() {
        return Err(Error::Domain(format!("only {} words have at most {h} bits", weights.len())));
    }
    weights.sort_unstable();
    Ok(weights[..n].iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_examples() {
        assert_eq!(min_hamming_cost(3, 1).unwrap().value, 1);
        let h = min_hamming_cost(7, 2).unwrap();
        assert_eq!((h.value, h.r, h.remainder), (5, 1, 1));
        assert_eq!(min_hamming_cost(4, 2).unwrap().value, 1);
        let h = min_hamming_cost(2, 5).unwrap();
        assert_eq!((h.value, h.r, h.remainder), (0, -1, 2));
        assert!(min_hamming_cost(8, 2).is_err());
    }

    #[test]
    fn closed_form_matches_greedy() {
        for h in 0..=6u64 {
            for n in 1..=20u64.min((1 << (h + 1)) - 1) {
                assert_eq!(
                    min_hamming_cost(n, h).unwrap().value,
                    greedy_hamming_cost(n as usize, h as usize).unwrap(),
                    "H({n},{h})"
                );
            }
        }
    }

    #[test]
    fn word_sets() {
        assert_eq!(all_words(2), vec!["", "0", "1", "00", "01", "10", "11"]);
        let s = BinaryWordSet::new(["".to_string(), "0".into(), "1".into()]).unwrap();
        assert_eq!(s.hcost(), 1);
        assert_eq!(s.max_len(), 1);
        assert!(BinaryWordSet::new(["0".to_string(), "0".into()]).is_err());
        assert!(BinaryWordSet::new(["2".to_string()]).is_err());
    }

    #[test]
    fn left_path_has_zero_cost() {
        let t = BinaryTree::new(0, vec![Some(1), Some(2), None], vec![None; 3]).unwrap();
        let v = vocabulary(&t);
        assert_eq!(v.hcost(), 0);
        assert!(v.words().all(|w| !w.contains('1')));
    }
}
