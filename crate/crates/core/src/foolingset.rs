//! Fooling-set lower bounds.
//!
//! A family of measurement matrices is built from a set `W` of allowed
//! column sums: every matrix whose columns all have a sum in `W`. With
//! `c = sum_{w in W} C(n, w)` admissible columns there are `c^N` such
//! matrices, and if the family fools the function every zero-error strategy
//! needs at least `N log2 c` bits in the worst case.
//!
//! Two matrices with equal function blocks are separated when some mixture
//! (rows in a subset `S` taken from the second matrix, the rest from the
//! first) has a different function block. The check reports separately
//! whether swapping a single row in one direction always suffices.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::binom::binomial;
use crate::error::{Error, Result};
use crate::protocol::MeasurementMatrix;
use crate::scalar::Real;
use crate::symfunc::{Shape, SymmetricFunction};

/// Matrices whose every column sums to a value in `weights`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnFamily {
    n: usize,
    weights: Vec<usize>,
    size_per_column: BigUint,
}

impl ColumnFamily {
    /// Column sums outside `0..=n` are dropped.
    pub fn new(n: usize, weights: impl IntoIterator<Item = i64>) -> Self {
        let mut weights: Vec<usize> = weights
            .into_iter()
            .filter(|&w| w >= 0 && w <= n as i64)
            .map(|w| w as usize)
            .collect();
        weights.sort_unstable();
        weights.dedup();
        let size_per_column = weights.iter().map(|&w| binomial(n as i64, w as i64)).sum();
        Self {
            n,
            weights,
            size_per_column,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    pub fn size_per_column(&self) -> &BigUint {
        &self.size_per_column
    }

    /// Number of matrices with `block_len` columns.
    pub fn cardinality(&self, block_len: usize) -> BigUint {
        self.size_per_column.pow(block_len as u32)
    }

    /// Admissible columns as row bitmasks (bit `i` is node `i + 1`), ascending.
    fn columns(&self) -> Vec<u32> {
        (0u32..1 << self.n)
            .filter(|c| self.weights.contains(&(c.count_ones() as usize)))
            .collect()
    }
}

/// The fooling family for a threshold, delta or single interval.
pub fn construct_family(f: &SymmetricFunction) -> Result<ColumnFamily> {
    let n = f.n();
    let family = |ws: &[usize]| ColumnFamily::new(n, ws.iter().map(|&w| w as i64));
    let minus_one = |x: usize| x as i64 - 1;
    match f.shape() {
        Shape::Threshold { theta } => Ok(ColumnFamily::new(n, [minus_one(theta), theta as i64])),
        Shape::CoThreshold { b } => Ok(family(&[b, b + 1])),
        Shape::Delta { theta } => Ok(ColumnFamily::new(
            n,
            [minus_one(theta), theta as i64, theta as i64 + 1],
        )),
        Shape::Interval { a, b } => {
            let low = ColumnFamily::new(n, [minus_one(a), b as i64, b as i64 + 1]);
            let high = ColumnFamily::new(n, [minus_one(a), a as i64, b as i64 + 1]);
            Ok(match (a + b).cmp(&n) {
                std::cmp::Ordering::Less => low,
                std::cmp::Ordering::Greater => high,
                std::cmp::Ordering::Equal => {
                    if high.size_per_column > low.size_per_column {
                        high
                    } else {
                        low
                    }
                }
            })
        }
        Shape::Constant(_) | Shape::Union(_) => Err(Error::domain(format!(
            "no fooling family construction for {f}"
        ))),
    }
}

/// `log2` of the admissible columns: the bound in bits per instance.
pub fn lower_bound_bits<F: Real>(family: &ColumnFamily) -> F {
    F::log2_big(&family.size_per_column)
}

/// Outcome of [`verify_fooling`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoolingVerdict {
    pub valid: bool,
    pub pairs_checked: u64,
    pub single_row_sufficient: bool,
    pub counterexample: Option<(MeasurementMatrix, MeasurementMatrix)>,
}

impl Serialize for FoolingVerdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Pair {
            #[serde(rename = "M1")]
            m1: Vec<String>,
            #[serde(rename = "M2")]
            m2: Vec<String>,
        }
        let mut s = serializer.serialize_struct("FoolingVerdict", 4)?;
        s.serialize_field("valid", &self.valid)?;
        s.serialize_field("pairs_checked", &self.pairs_checked)?;
        s.serialize_field("single_row_sufficient", &self.single_row_sufficient)?;
        let pair = self.counterexample.as_ref().map(|(a, b)| Pair {
            m1: a.row_strings(),
            m2: b.row_strings(),
        });
        s.serialize_field("counterexample", &pair)?;
        s.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Separation {
    /// Function blocks already differ.
    Distinct,
    SingleRow,
    Mixture,
    Fooled,
}

struct Checker<'a> {
    f: &'a SymmetricFunction,
    n: usize,
    /// Row subsets, single-row swaps (either direction) first.
    subsets: Vec<u32>,
    single_count: usize,
}

impl Checker<'_> {
    fn value_differs(&self, a: &[u32], b: &[u32]) -> bool {
        a.iter()
            .zip(b)
            .any(|(x, y)| self.f.contains(x.count_ones() as usize) != self.f.contains(y.count_ones() as usize))
    }

    fn separate(&self, m1: &[u32], m2: &[u32]) -> Separation {
        if self.value_differs(m1, m2) {
            return Separation::Distinct;
        }
        for (i, &rows) in self.subsets.iter().enumerate() {
            let differs = m1.iter().zip(m2).any(|(&c1, &c2)| {
                let mixed = (c1 & !rows) | (c2 & rows);
                self.f.contains(mixed.count_ones() as usize) != self.f.contains(c1.count_ones() as usize)
            });
            if differs {
                return if i < self.single_count {
                    Separation::SingleRow
                } else {
                    Separation::Mixture
                };
            }
        }
        Separation::Fooled
    }

    fn matrix(&self, columns: &[u32]) -> MeasurementMatrix {
        let rows = (0..self.n)
            .map(|i| columns.iter().map(|c| c >> i & 1 == 1).collect())
            .collect();
        MeasurementMatrix::new(rows).expect("non-empty matrix")
    }
}

/// Brute-force check that `family` fools `f` at block length `block_len`.
/// Pairs are visited in enumeration order and the first unseparated pair is
/// returned as the counterexample.
pub fn verify_fooling(
    f: &SymmetricFunction,
    family: &ColumnFamily,
    block_len: usize,
    budget: u64,
) -> Result<FoolingVerdict> {
    if family.n != f.n() {
        return Err(Error::Dimension(format!(
            "family over {} rows for a function of {} nodes",
            family.n,
            f.n()
        )));
    }
    if block_len == 0 {
        return Err(Error::domain("block length must be positive"));
    }
    let over_budget = |required: u128| Error::BudgetExceeded {
        required,
        budget,
        hint: "reduce N or n",
    };
    let work = family.size_per_column.pow(2 * block_len as u32);
    let required = work.to_u128().unwrap_or(u128::MAX);
    if required > u128::from(budget) || f.n() > 31 {
        return Err(over_budget(required));
    }
    let columns = family.columns();
    let c = columns.len() as u64;
    let total = c.pow(block_len as u32);
    let matrix_at = |mut index: u64| -> Vec<u32> {
        let mut out = vec![0; block_len];
        for slot in out.iter_mut().rev() {
            *slot = columns[(index % c) as usize];
            index /= c;
        }
        out
    };

    let n = f.n();
    let full = (1u32 << n) - 1;
    let mut subsets: Vec<u32> = (0..n as u32).map(|i| 1 << i).collect();
    if n > 2 {
        subsets.extend((0..n as u32).map(|i| full & !(1 << i)));
    }
    let single_count = subsets.len();
    let rest: Vec<u32> = (1..full).filter(|s| !subsets.contains(s)).collect();
    subsets.extend(rest);
    let checker = Checker {
        f,
        n,
        subsets,
        single_count,
    };

    #[derive(Default)]
    struct Acc {
        pairs: u64,
        needs_mixture: bool,
        first_fooled: Option<(u64, u64)>,
    }
    let acc = (0..total)
        .into_par_iter()
        .map(|i| {
            let m1 = matrix_at(i);
            let mut acc = Acc::default();
            for j in i + 1..total {
                acc.pairs += 1;
                match checker.separate(&m1, &matrix_at(j)) {
                    Separation::Distinct | Separation::SingleRow => {}
                    Separation::Mixture => acc.needs_mixture = true,
                    Separation::Fooled => {
                        acc.first_fooled.get_or_insert((i, j));
                    }
                }
            }
            acc
        })
        .reduce(Acc::default, |a, b| Acc {
            pairs: a.pairs + b.pairs,
            needs_mixture: a.needs_mixture || b.needs_mixture,
            first_fooled: match (a.first_fooled, b.first_fooled) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, y) => x.or(y),
            },
        });

    Ok(FoolingVerdict {
        valid: acc.first_fooled.is_none(),
        pairs_checked: acc.pairs,
        single_row_sufficient: !acc.needs_mixture && acc.first_fooled.is_none(),
        counterexample: acc
            .first_fooled
            .map(|(i, j)| (checker.matrix(&matrix_at(i)), checker.matrix(&matrix_at(j)))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexity::codebook_size;

    const BUDGET: u64 = 1 << 24;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn and2_family() {
        let f = SymmetricFunction::threshold(2, 2).unwrap();
        let fam = construct_family(&f).unwrap();
        assert_eq!(fam.weights(), &[1, 2]);
        assert_eq!(fam.size_per_column(), &big(3));
        assert_eq!(fam.cardinality(5), big(243));
        assert!((lower_bound_bits::<f64>(&fam) - 3f64.log2()).abs() < 1e-15);
        for n in 1..=2 {
            let v = verify_fooling(&f, &fam, n, BUDGET).unwrap();
            assert!(v.valid && v.single_row_sufficient);
        }
    }

    #[test]
    fn threshold_3_2_family() {
        let f = SymmetricFunction::threshold(3, 2).unwrap();
        let fam = construct_family(&f).unwrap();
        assert_eq!(fam.weights(), &[1, 2]);
        assert_eq!(fam.size_per_column(), &big(6));
        assert!((lower_bound_bits::<f64>(&fam) - 6f64.log2()).abs() < 1e-15);
        let v = verify_fooling(&f, &fam, 1, BUDGET).unwrap();
        assert_eq!(v.pairs_checked, 15);
        assert!(v.valid && v.single_row_sufficient && v.counterexample.is_none());
    }

    #[test]
    fn interval_and_delta_families() {
        let f = SymmetricFunction::interval(4, 1, 2).unwrap();
        let fam = construct_family(&f).unwrap();
        assert_eq!(fam.weights(), &[0, 2, 3]);
        assert_eq!(fam.size_per_column(), &big(11));

        let d = SymmetricFunction::delta(2, 1).unwrap();
        let fam = construct_family(&d).unwrap();
        assert_eq!(fam.weights(), &[0, 1, 2]);
        assert_eq!(lower_bound_bits::<f64>(&fam), 2.0);

        let high = SymmetricFunction::interval(6, 4, 5).unwrap();
        assert_eq!(construct_family(&high).unwrap().weights(), &[3, 4, 6]);
    }

    #[test]
    fn boundary_deltas_are_clipped() {
        let d0 = SymmetricFunction::delta(4, 0).unwrap();
        assert_eq!(construct_family(&d0).unwrap().weights(), &[0, 1]);
        let dn = SymmetricFunction::delta(4, 4).unwrap();
        assert_eq!(construct_family(&dn).unwrap().weights(), &[3, 4]);
        for f in [d0, dn] {
            let fam = construct_family(&f).unwrap();
            assert_eq!(fam.size_per_column(), &codebook_size(&f));
        }
    }

    #[test]
    fn unsupported_functions() {
        let u = SymmetricFunction::union(6, &[(1, 2), (4, 4)]).unwrap();
        assert!(matches!(construct_family(&u), Err(Error::Domain(_))));
        let c = SymmetricFunction::threshold(3, 0).unwrap();
        assert!(construct_family(&c).is_err());
    }

    #[test]
    fn extreme_column_family_for_or_is_weak() {
        // all-zero and all-one columns always differ in value: valid, one bit per instance
        let or = SymmetricFunction::threshold(4, 1).unwrap();
        let fam = ColumnFamily::new(4, [0, 4]);
        for n in 1..=2 {
            let v = verify_fooling(&or, &fam, n, BUDGET).unwrap();
            assert!(v.valid);
        }
        assert_eq!(lower_bound_bits::<f64>(&fam), 1.0);
        assert!(lower_bound_bits::<f64>(&construct_family(&or).unwrap()) > 2.0);
    }

    #[test]
    fn heavy_columns_do_not_fool_or() {
        let or = SymmetricFunction::threshold(3, 1).unwrap();
        let fam = ColumnFamily::new(3, [2, 3]);
        let v = verify_fooling(&or, &fam, 1, BUDGET).unwrap();
        assert!(!v.valid);
        assert!(!v.single_row_sufficient);
        let (m1, m2) = v.counterexample.unwrap();
        assert_ne!(m1, m2);
        assert_eq!(m1.function_block(&or), m2.function_block(&or));
    }

    #[test]
    fn verdict_json_shape() {
        let or = SymmetricFunction::threshold(3, 1).unwrap();
        let v = verify_fooling(&or, &ColumnFamily::new(3, [2, 3]), 1, BUDGET).unwrap();
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["valid"], false);
        assert_eq!(json["pairs_checked"], 6);
        assert_eq!(json["counterexample"]["M1"].as_array().unwrap().len(), 3);
        let ok = verify_fooling(&or, &construct_family(&or).unwrap(), 1, BUDGET).unwrap();
        assert!(serde_json::to_value(&ok).unwrap()["counterexample"].is_null());
    }

    #[test]
    fn budget_and_dimension_errors() {
        let f = SymmetricFunction::delta(5, 2).unwrap();
        let fam = construct_family(&f).unwrap();
        assert!(matches!(
            verify_fooling(&f, &fam, 2, 1000),
            Err(Error::BudgetExceeded { required: 390625, .. })
        ));
        let other = ColumnFamily::new(4, [1, 2]);
        assert!(matches!(verify_fooling(&f, &other, 1, BUDGET), Err(Error::Dimension(_))));
    }
}
