//! Codebook sizes and complexity bounds.
//!
//! The achievable strategy lets node `n` broadcast first, after which the
//! remaining nodes face one of two residual functions. Writing `A(f)` for
//! the number of codewords the whole strategy needs per instance (so that
//! `log2 A(f)` bits per instance suffice), `A = A(f|0) + A(f|1)` with
//! `A = 1` whenever the function is already constant. For a symmetric root
//! function the residual depends only on how many nodes have spoken and how
//! many of them held a 1, so the table has `O(n^2)` entries.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::binom::binomial;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::symfunc::{Shape, SymmetricFunction};

/// Codebook sizes `A[depth][ones]` for every residual of one root function.
///
/// `depth` counts the nodes that have already broadcast (nodes
/// `n, n-1, ..., n-depth+1`); `ones` counts the 1s among them.
#[derive(Debug, Clone)]
pub struct CodebookSizeTable {
    n: usize,
    sizes: Vec<Vec<BigUint>>,
    constants: Vec<Vec<Option<bool>>>,
}

impl CodebookSizeTable {
    pub fn new(f: &SymmetricFunction) -> Self {
        let n = f.n();
        let prefix = f.level_prefix_counts();
        let mut sizes: Vec<Vec<BigUint>> = vec![Vec::new(); n + 1];
        let mut constants: Vec<Vec<Option<bool>>> = vec![Vec::new(); n + 1];
        for depth in (0..=n).rev() {
            let mut row = Vec::with_capacity(depth + 1);
            let mut flags = Vec::with_capacity(depth + 1);
            for ones in 0..=depth {
                let constant = f.window_constant(&prefix, depth, ones);
                let size = match constant {
                    Some(_) => BigUint::one(),
                    None => &sizes[depth + 1][ones] + &sizes[depth + 1][ones + 1],
                };
                row.push(size);
                flags.push(constant);
            }
            sizes[depth] = row;
            constants[depth] = flags;
        }
        Self {
            n,
            sizes,
            constants,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> &BigUint {
        &self.sizes[0][0]
    }

    pub fn size(&self, depth: usize, ones: usize) -> &BigUint {
        &self.sizes[depth][ones]
    }

    /// `Some(value)` when the residual at `(depth, ones)` is constant.
    pub fn constant_at(&self, depth: usize, ones: usize) -> Option<bool> {
        self.constants[depth][ones]
    }

    /// Sizes of the two residuals reached from `(depth, ones)`.
    pub fn children(&self, depth: usize, ones: usize) -> (&BigUint, &BigUint) {
        (
            &self.sizes[depth + 1][ones],
            &self.sizes[depth + 1][ones + 1],
        )
    }

    /// Non-constant states, in schedule order.
    pub fn open_states(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |depth| {
            (0..=depth).filter(move |&ones| self.constants[depth][ones].is_none())
                .map(move |ones| (depth, ones))
        })
    }
}

/// `A(f)`: the codebook size of the whole strategy, per instance.
pub fn codebook_size(f: &SymmetricFunction) -> BigUint {
    let n = f.n();
    let prefix = f.level_prefix_counts();
    let mut below: Vec<BigUint> = vec![BigUint::one(); n + 1];
    for depth in (0..n).rev() {
        let row = (0..=depth)
            .map(|ones| match f.window_constant(&prefix, depth, ones) {
                Some(_) => BigUint::one(),
                None => &below[ones] + &below[ones + 1],
            })
            .collect();
        below = row;
    }
    below.swap_remove(0)
}

/// `log2 A(f)` bits per instance.
pub fn achievable_bits<F: Real>(f: &SymmetricFunction) -> F {
    F::log2_big(&codebook_size(f))
}

/// Lower bound, achievable rate and upper bound, in bits per instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateResult<F> {
    pub lower_bound: F,
    pub achievable: F,
    pub upper_bound: F,
    pub exact: bool,
}

/// `C(n+1, theta)`, the threshold codebook size.
pub fn threshold_codebook(n: usize, theta: i64) -> Result<BigUint> {
    if theta < 0 || theta > n as i64 + 1 {
        return Err(Error::domain(format!("threshold {theta} outside 0..={}", n + 1)));
    }
    Ok(binomial(n as i64 + 1, theta))
}

/// `C(n+1, theta) + C(n, theta+1)`, the delta codebook size.
pub fn delta_codebook(n: usize, theta: i64) -> Result<BigUint> {
    if theta < 0 || theta > n as i64 {
        return Err(Error::domain(format!("delta level {theta} outside 0..={n}")));
    }
    let n = n as i64;
    Ok(binomial(n + 1, theta) + binomial(n, theta + 1))
}

pub fn threshold_complexity<F: Real>(n: usize, theta: i64) -> Result<F> {
    Ok(F::log2_big(&threshold_codebook(n, theta)?))
}

pub fn delta_complexity<F: Real>(n: usize, theta: i64) -> Result<F> {
    Ok(F::log2_big(&delta_codebook(n, theta)?))
}

/// Which closed form an interval bound came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundBranch {
    /// `a = 0` or `b = n`: the interval is a (co-)threshold, known exactly.
    Threshold,
    /// `a + b < n`.
    LowSum,
    /// `a + b > n`.
    HighSum,
    /// `a + b = n`: both forms computed and cross-checked.
    Balanced,
}

/// Interval bounds as exact codebook sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactIntervalBounds {
    pub lower: BigUint,
    pub upper: BigUint,
    /// The `(b - a + 1) C(n, .)` term of the upper bound.
    pub residual_term: BigUint,
    /// The leading `C(n+1, .)` term shared by both bounds.
    pub leading_term: BigUint,
    pub branch: BoundBranch,
}

fn low_sum_bounds(n: i64, a: i64, b: i64) -> ExactIntervalBounds {
    let leading = binomial(n + 1, b + 1);
    let tail = binomial(n, a - 1);
    let residual = BigUint::from((b - a + 1) as u64) * &tail;
    ExactIntervalBounds {
        lower: &leading + &tail,
        upper: &leading + &residual,
        residual_term: residual,
        leading_term: leading,
        branch: BoundBranch::LowSum,
    }
}

fn high_sum_bounds(n: i64, a: i64, b: i64) -> ExactIntervalBounds {
    let leading = binomial(n + 1, a);
    let tail = binomial(n, b + 1);
    let residual = BigUint::from((b - a + 1) as u64) * &tail;
    ExactIntervalBounds {
        lower: &leading + &tail,
        upper: &leading + &residual,
        residual_term: residual,
        leading_term: leading,
        branch: BoundBranch::HighSum,
    }
}

pub fn interval_bounds_exact(n: usize, a: i64, b: i64) -> Result<ExactIntervalBounds> {
    if a < 0 || b < a || b > n as i64 {
        return Err(Error::domain(format!("interval [{a}, {b}] is not within 0..={n}")));
    }
    let n = n as i64;
    if a == 0 || b == n {
        // [0, b] has the cost of threshold b + 1 by relabelling; [a, n] is threshold a.
        let size = if a == 0 {
            binomial(n + 1, b + 1)
        } else {
            binomial(n + 1, a)
        };
        return Ok(ExactIntervalBounds {
            lower: size.clone(),
            upper: size.clone(),
            residual_term: BigUint::zero(),
            leading_term: size,
            branch: BoundBranch::Threshold,
        });
    }
    let bounds = match (a + b).cmp(&n) {
        std::cmp::Ordering::Less => low_sum_bounds(n, a, b),
        std::cmp::Ordering::Greater => high_sum_bounds(n, a, b),
        std::cmp::Ordering::Equal => {
            let low = low_sum_bounds(n, a, b);
            let high = high_sum_bounds(n, a, b);
            for side in [&low, &high] {
                if side.lower > side.upper {
                    return Err(Error::Invariant(format!(
                        "interval [{a}, {b}] over {n} nodes: lower bound above upper bound"
                    )));
                }
            }
            if low.lower != high.lower || low.upper != high.upper {
                return Err(Error::Invariant(format!(
                    "interval [{a}, {b}] over {n} nodes: the two bound forms disagree at a + b = n"
                )));
            }
            let mut best = if high.upper < low.upper { high } else { low };
            best.branch = BoundBranch::Balanced;
            best
        }
    };
    Ok(bounds)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntervalBounds<F> {
    pub lower: F,
    pub upper: F,
    pub branch: BoundBranch,
}

/// Lower and upper bounds, in bits per instance, for computing whether the
/// number of 1s lies in `[a, b]`.
pub fn interval_bounds<F: Real>(n: usize, a: i64, b: i64) -> Result<IntervalBounds<F>> {
    let exact = interval_bounds_exact(n, a, b)?;
    Ok(IntervalBounds {
        lower: F::log2_big(&exact.lower),
        upper: F::log2_big(&exact.upper),
        branch: exact.branch,
    })
}

/// `sum_i g(a_i, b_i, n)` with `g = C(n+1, b+1)` when `a + b <= n` and
/// `C(n+1, a)` otherwise.
pub fn union_leading_terms(n: usize, intervals: &[(i64, i64)]) -> Result<BigUint> {
    SymmetricFunction::union(n, intervals)?;
    let n = n as i64;
    Ok(intervals
        .iter()
        .map(|&(a, b)| {
            if a + b <= n {
                binomial(n + 1, b + 1)
            } else {
                binomial(n + 1, a)
            }
        })
        .sum())
}

/// Leading-order complexity of a union of disjoint intervals.
pub fn union_asymptotic<F: Real>(n: usize, intervals: &[(i64, i64)]) -> Result<F> {
    Ok(F::log2_big(&union_leading_terms(n, intervals)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Diagnostics<F> {
    /// `upper - lower`, in bits per instance.
    pub gap: F,
    /// Residual term of the upper bound over its leading term.
    pub residual_ratio: F,
}

pub fn diagnostics<F: Real>(n: usize, a: i64, b: i64) -> Result<Diagnostics<F>> {
    let exact = interval_bounds_exact(n, a, b)?;
    Ok(Diagnostics {
        gap: F::log2_big(&exact.upper) - F::log2_big(&exact.lower),
        residual_ratio: F::ratio_big(&exact.residual_term, &exact.leading_term),
    })
}

/// Largest `C(n+1, k+1)` over counts `k` where the function changes value
/// between `k` and `k + 1`. Columns summing to `k` or `k + 1` form a fooling
/// set for any such `k`, so this lower-bounds every level set.
pub fn transition_lower_bound(f: &SymmetricFunction) -> BigUint {
    let n = f.n() as i64;
    (0..f.n())
        .filter(|&k| f.contains(k) != f.contains(k + 1))
        .map(|k| binomial(n + 1, k as i64 + 1))
        .max()
        .unwrap_or_else(BigUint::one)
}

fn check_ordered(f: &SymmetricFunction, lower: &BigUint, achieved: &BigUint, upper: &BigUint) -> Result<()> {
    if lower > achieved || achieved > upper {
        return Err(Error::Invariant(format!(
            "{f}: codebook size {achieved} outside [{lower}, {upper}]"
        )));
    }
    Ok(())
}

/// Bounds on the broadcast computation complexity of `f`, together with the
/// rate of the node-by-node strategy. Exact for constants, thresholds,
/// co-thresholds and deltas; interval bounds for single intervals; for other
/// level sets the best single-transition fooling bound below and the
/// achieved rate above.
pub fn rate<F: Real>(f: &SymmetricFunction) -> Result<RateResult<F>> {
    let achieved = codebook_size(f);
    let n = f.n();
    let (lower, upper) = match f.shape() {
        Shape::Constant(_) => (BigUint::one(), BigUint::one()),
        Shape::Threshold { theta } => {
            let c = threshold_codebook(n, theta as i64)?;
            (c.clone(), c)
        }
        Shape::CoThreshold { b } => {
            let c = threshold_codebook(n, b as i64 + 1)?;
            (c.clone(), c)
        }
        Shape::Delta { theta } => {
            let c = delta_codebook(n, theta as i64)?;
            (c.clone(), c)
        }
        Shape::Interval { a, b } => {
            let bounds = interval_bounds_exact(n, a as i64, b as i64)?;
            (bounds.lower, bounds.upper)
        }
        Shape::Union(_) => (transition_lower_bound(f), achieved.clone()),
    };
    check_ordered(f, &lower, &achieved, &upper)?;
    Ok(RateResult {
        lower_bound: F::log2_big(&lower),
        achievable: F::log2_big(&achieved),
        upper_bound: F::log2_big(&upper),
        exact: lower == upper && lower == achieved,
    })
}

/// Renders `x` with `digits` significant digits, trailing zeros trimmed,
/// switching to exponent form outside `1e-5 ..= 10^digits`.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if exp < -5 || exp >= digits as i32 {
        format!("{}e{exp}", trim(mantissa))
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim(&format!("{x:.decimals$}"))
    }
}

/// One row of the complexity CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub kind: &'static str,
    pub n: usize,
    pub theta_or_a: usize,
    pub b: Option<usize>,
    pub rate: RateResult<f64>,
}

pub const CSV_HEADER: &str = "kind,n,theta_or_a,b,lower_bits,achievable_bits,upper_bits,exact";

impl CsvRow {
    pub fn to_line(&self) -> String {
        let mut line = String::new();
        let b = self.b.map(|b| b.to_string()).unwrap_or_default();
        write!(
            line,
            "{},{},{},{},{},{},{},{}",
            self.kind,
            self.n,
            self.theta_or_a,
            b,
            format_significant(self.rate.lower_bound, 12),
            format_significant(self.rate.achievable, 12),
            format_significant(self.rate.upper_bound, 12),
            self.rate.exact
        )
        .expect("writing to a String");
        line
    }
}

pub fn write_csv(rows: &[CsvRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_line());
        out.push('\n');
    }
    out
}

/// Sweep of every threshold `0 <= theta <= n + 1` for `1 <= n <= n_max`.
pub fn threshold_table(n_max: usize) -> Result<Vec<CsvRow>> {
    let mut rows = Vec::new();
    for n in 1..=n_max {
        for theta in 0..=n + 1 {
            let f = SymmetricFunction::threshold(n, theta as i64)?;
            rows.push(CsvRow {
                kind: "threshold",
                n,
                theta_or_a: theta,
                b: None,
                rate: rate(&f)?,
            });
        }
    }
    Ok(rows)
}

/// Sweep of every delta `0 <= theta <= n` for `1 <= n <= n_max`.
pub fn delta_table(n_max: usize) -> Result<Vec<CsvRow>> {
    let mut rows = Vec::new();
    for n in 1..=n_max {
        for theta in 0..=n {
            let f = SymmetricFunction::delta(n, theta as i64)?;
            rows.push(CsvRow {
                kind: "delta",
                n,
                theta_or_a: theta,
                b: None,
                rate: rate(&f)?,
            });
        }
    }
    Ok(rows)
}

/// Sweep of every interval `1 <= a <= b <= n` for `1 <= n <= n_max`.
pub fn interval_table(n_max: usize) -> Result<Vec<CsvRow>> {
    let mut rows = Vec::new();
    for n in 1..=n_max {
        for a in 1..=n {
            for b in a..=n {
                let f = SymmetricFunction::interval(n, a as i64, b as i64)?;
                rows.push(CsvRow {
                    kind: "interval",
                    n,
                    theta_or_a: a,
                    b: Some(b),
                    rate: rate(&f)?,
                });
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn codebook_size_examples() {
        let and2 = SymmetricFunction::threshold(2, 2).unwrap();
        assert_eq!(codebook_size(&and2), big(3));
        assert_eq!(codebook_size(&SymmetricFunction::threshold(5, 2).unwrap()), big(15));
        assert_eq!(codebook_size(&SymmetricFunction::delta(2, 1).unwrap()), big(4));
        for n in 1..6 {
            let one = SymmetricFunction::threshold(n, 0).unwrap();
            assert_eq!(codebook_size(&one), big(1));
        }
    }

    #[test]
    fn table_matches_rolling_computation() {
        for spec in ["threshold:n=7,theta=3", "delta:n=6,theta=2", "union:n=9,intervals=1-2;5-6"] {
            let f: SymmetricFunction = spec.parse().unwrap();
            let table = CodebookSizeTable::new(&f);
            assert_eq!(table.root(), &codebook_size(&f));
            for (depth, ones) in table.open_states() {
                let (a0, a1) = table.children(depth, ones);
                assert_eq!(table.size(depth, ones), &(a0 + a1));
            }
        }
    }

    #[test]
    fn table_agrees_with_explicit_residuals() {
        // Recompute A by literally taking residuals, without the (depth, ones) collapse.
        fn by_residuals(f: &SymmetricFunction) -> BigUint {
            if f.constant_value() != crate::symfunc::ConstantValue::NonConstant {
                return BigUint::one();
            }
            if f.n() == 1 {
                return big(2);
            }
            by_residuals(&f.residual(false).unwrap()) + by_residuals(&f.residual(true).unwrap())
        }
        for n in 1..=8 {
            for mask in 0u32..1 << (n + 1) {
                let f = SymmetricFunction::from_levels(n, (0..=n).filter(|k| mask >> k & 1 == 1))
                    .unwrap();
                assert_eq!(codebook_size(&f), by_residuals(&f), "{f}");
            }
        }
    }

    #[test]
    fn threshold_complexity_examples() {
        assert!(close(threshold_complexity::<f64>(2, 2).unwrap(), 3f64.log2()));
        assert!(close(threshold_complexity::<f64>(7, 1).unwrap(), 3.0));
        assert_eq!(threshold_complexity::<f64>(4, 0).unwrap(), 0.0);
        assert!(threshold_complexity::<f64>(4, 6).is_err());
    }

    #[test]
    fn delta_complexity_examples() {
        assert!(close(delta_complexity::<f64>(4, 2).unwrap(), 14f64.log2()));
        assert!(close(delta_complexity::<f64>(2, 1).unwrap(), 2.0));
        assert!(close(delta_complexity::<f64>(1, 0).unwrap(), 1.0));
        assert_eq!(codebook_size(&SymmetricFunction::delta(1, 0).unwrap()), big(2));
    }

    #[test]
    fn interval_bounds_examples() {
        let exact = interval_bounds_exact(4, 1, 2).unwrap();
        assert_eq!((exact.lower.clone(), exact.upper.clone()), (big(11), big(12)));
        assert_eq!(exact.branch, BoundBranch::LowSum);
        let b = interval_bounds::<f64>(4, 3, 4).unwrap();
        assert_eq!(b.branch, BoundBranch::Threshold);
        assert!(close(b.lower, 10f64.log2()) && close(b.upper, 10f64.log2()));

        let f = SymmetricFunction::interval(10, 2, 3).unwrap();
        let achieved = achievable_bits::<f64>(&f);
        let b = interval_bounds::<f64>(10, 2, 3).unwrap();
        assert!(b.lower <= achieved && achieved <= b.upper + 1e-9);
    }

    #[test]
    fn interval_at_zero_reduces_to_co_threshold() {
        let exact = interval_bounds_exact(6, 0, 2).unwrap();
        assert_eq!(exact.branch, BoundBranch::Threshold);
        assert_eq!(exact.lower, binomial(7, 3));
        let f = SymmetricFunction::interval(6, 0, 2).unwrap();
        assert_eq!(codebook_size(&f), binomial(7, 3));
        assert_eq!(interval_bounds_exact(6, 0, 6).unwrap().lower, big(1));
    }

    #[test]
    fn balanced_interval_uses_both_forms() {
        let exact = interval_bounds_exact(6, 2, 4).unwrap();
        assert_eq!(exact.branch, BoundBranch::Balanced);
        assert_eq!(exact.lower, binomial(7, 5) + binomial(6, 1));
        assert_eq!(exact.upper, binomial(7, 2) + big(3) * binomial(6, 5));
    }

    #[test]
    fn interval_domain_errors() {
        assert!(interval_bounds_exact(4, 3, 2).is_err());
        assert!(interval_bounds_exact(4, 1, 5).is_err());
        assert!(interval_bounds_exact(4, -1, 2).is_err());
    }

    #[test]
    fn union_asymptotic_examples() {
        let got = union_asymptotic::<f64>(6, &[(1, 2)]).unwrap();
        assert!(close(got, 35f64.log2()));
        assert_eq!(union_leading_terms(6, &[(5, 6)]).unwrap(), binomial(7, 5));
        assert_eq!(
            union_leading_terms(20, &[(1, 2), (18, 19)]).unwrap(),
            binomial(21, 3) + binomial(21, 18)
        );
        assert!(union_asymptotic::<f64>(6, &[(1, 3), (2, 4)]).is_err());
    }

    #[test]
    fn diagnostics_examples() {
        let d = diagnostics::<f64>(4, 1, 2).unwrap();
        assert!(close(d.gap, 12f64.log2() - 11f64.log2()));
        assert!(d.gap <= 3f64.log2());
        // residual term 2 * C(4, 0) over C(5, 3)
        assert!(close(d.residual_ratio, 0.2));
        let mirrored = diagnostics::<f64>(6, 4, 5).unwrap();
        // (b - a + 1) C(6, 6) / C(7, 4)
        assert!(close(mirrored.residual_ratio, 2.0 / 35.0));
    }

    #[test]
    fn rate_results_by_shape() {
        let r = rate::<f64>(&"threshold:n=2,theta=2".parse().unwrap()).unwrap();
        assert!(r.exact && close(r.achievable, 3f64.log2()));
        let r = rate::<f64>(&"interval:n=4,a=1,b=2".parse().unwrap()).unwrap();
        assert!(!r.exact);
        assert!(close(r.lower_bound, 11f64.log2()) && close(r.upper_bound, 12f64.log2()));
        assert!(r.lower_bound <= r.achievable && r.achievable <= r.upper_bound);
        let r = rate::<f64>(&"levels:n=3,set=0,1,2,3".parse().unwrap()).unwrap();
        assert!(r.exact && r.achievable == 0.0);
        let r = rate::<f32>(&"delta:n=4,theta=2".parse().unwrap()).unwrap();
        assert!(r.exact && (r.achievable - 14f32.log2()).abs() < 1e-6);
        let r = rate::<f64>(&"union:n=6,intervals=1-2;4-4".parse().unwrap()).unwrap();
        assert!(r.lower_bound <= r.achievable && r.achievable == r.upper_bound);
    }

    #[test]
    fn transition_bound_on_threshold_is_tight() {
        for n in 1..10 {
            for theta in 1..=n {
                let f = SymmetricFunction::threshold(n, theta as i64).unwrap();
                assert_eq!(transition_lower_bound(&f), codebook_size(&f));
            }
        }
    }

    #[test]
    fn significant_digit_rendering() {
        assert_eq!(format_significant(3f64.log2(), 12), "1.58496250072");
        assert_eq!(format_significant(3.0, 12), "3");
        assert_eq!(format_significant(0.0, 12), "0");
        assert_eq!(format_significant(1234.5, 12), "1234.5");
        assert_eq!(format_significant(1.5e-7, 12), "1.5e-7");
        assert_eq!(format_significant(-0.25, 12), "-0.25");
    }

    #[test]
    fn csv_rows() {
        let rows = threshold_table(2).unwrap();
        assert_eq!(rows.len(), 3 + 4);
        let text = write_csv(&rows);
        assert!(text.starts_with(CSV_HEADER));
        assert!(text.contains("threshold,2,2,,1.58496250072,1.58496250072,1.58496250072,true"));
        let rows = interval_table(4).unwrap();
        assert!(rows
            .iter()
            .any(|r| r.to_line() == "interval,4,1,2,3.45943161864,3.58496250072,3.58496250072,false"));
    }
}
