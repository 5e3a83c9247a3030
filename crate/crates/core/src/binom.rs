//! Exact binomial coefficients.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `C(n, k)` with the usual convention that it is zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    num_integer::binomial(BigUint::from(n as u64), BigUint::from(k as u64))
}

/// Rows `0..=max_n` of Pascal's triangle, for repeated lookups while ranking.
#[derive(Debug, Clone)]
pub struct BinomialTable {
    rows: Vec<Vec<BigUint>>,
}

impl BinomialTable {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(max_n + 1);
        for n in 0..=max_n {
            let mut row = vec![BigUint::one(); n + 1];
            if n >= 2 {
                let prev = &rows[n - 1];
                for k in 1..n {
                    row[k] = &prev[k - 1] + &prev[k];
                }
            }
            rows.push(row);
        }
        Self { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `C(n, k)`, zero when `k > n`. Panics if `n` exceeds the table.
    pub fn get(&self, n: usize, k: usize) -> BigUint {
        self.get_ref(n, k).cloned().unwrap_or_default()
    }

    pub fn get_ref(&self, n: usize, k: usize) -> Option<&BigUint> {
        self.rows[n].get(k)
    }
}
