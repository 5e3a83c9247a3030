//! Colexicographic ranking of fixed-weight Boolean blocks.
//!
//! A block with ones at positions `p_1 < p_2 < ... < p_w` has rank
//! `C(p_1, 1) + C(p_2, 2) + ... + C(p_w, w)` among all blocks of the same
//! length and weight.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::binom::BinomialTable;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct Ranker {
    table: BinomialTable,
}

impl Ranker {
    /// A ranker for blocks of length at most `max_len`.
    pub fn new(max_len: usize) -> Self {
        Self {
            table: BinomialTable::new(max_len),
        }
    }

    pub fn max_len(&self) -> usize {
        self.table.max_n()
    }

    /// Number of blocks of length `len` and weight `weight`.
    pub fn class_size(&self, len: usize, weight: usize) -> BigUint {
        self.table.get(len, weight)
    }

    pub fn rank(&self, block: &[bool]) -> (usize, BigUint) {
        assert!(block.len() <= self.max_len(), "block longer than ranker table");
        let mut weight = 0;
        let mut rank = BigUint::zero();
        for (pos, _) in block.iter().enumerate().filter(|(_, &b)| b) {
            weight += 1;
            if let Some(c) = self.table.get_ref(pos, weight) {
                rank += c;
            }
        }
        (weight, rank)
    }

    pub fn unrank(&self, len: usize, weight: usize, rank: &BigUint) -> Result<Vec<bool>> {
        assert!(len <= self.max_len(), "block longer than ranker table");
        let out_of_range = || Error::RankOutOfRange {
            rank: rank.to_string(),
            len,
            weight,
        };
        if weight > len || *rank >= self.table.get(len, weight) {
            return Err(out_of_range());
        }
        let mut block = vec![false; len];
        let mut rest = rank.clone();
        let mut w = weight;
        for pos in (0..len).rev() {
            if w == 0 {
                break;
            }
            let c = self.table.get_ref(pos, w);
            let fits = match c {
                Some(c) => *c <= rest,
                None => true,
            };
            if fits {
                if let Some(c) = c {
                    rest -= c;
                }
                block[pos] = true;
                w -= 1;
            }
        }
        debug_assert!(rest.is_zero());
        Ok(block)
    }
}

/// Weight and colex rank of `block`.
pub fn comb_rank(block: &[bool]) -> (usize, BigUint) {
    Ranker::new(block.len()).rank(block)
}

/// The weight-`weight` block of length `len` with colex rank `rank`.
pub fn comb_unrank(len: usize, weight: usize, rank: &BigUint) -> Result<Vec<bool>> {
    Ranker::new(len).unrank(len, weight, rank)
}
