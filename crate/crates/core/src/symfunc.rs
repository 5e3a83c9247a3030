//! Symmetric Boolean functions as level sets of 1-counts.
//!
//! A symmetric function of `n` Boolean variables depends only on how many of
//! them are 1, so it is fully described by the set of counts `k in 0..=n`
//! for which it evaluates to 1. Thresholds, deltas, intervals and unions of
//! intervals are all level sets, and the residual left after one node's bit
//! is revealed is again a level set over `n - 1` variables.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::DEFAULT_MAX_NODES;

/// A symmetric Boolean function over `n >= 1` variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymmetricFunction {
    n: usize,
    /// Bit `k` set iff the function is 1 when exactly `k` inputs are 1.
    words: Vec<u64>,
}

/// Result of [`SymmetricFunction::constant_value`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstantValue {
    Zero,
    One,
    NonConstant,
}

/// The family a level set belongs to, most specific first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    Constant(bool),
    /// Levels `{theta, ..., n}` with `1 <= theta <= n`.
    Threshold { theta: usize },
    /// Levels `{0, ..., b}` with `b < n`: the complement of threshold `b + 1`.
    CoThreshold { b: usize },
    /// Levels `{theta}` with `0 < theta < n`.
    Delta { theta: usize },
    /// Levels `{a, ..., b}` with `1 <= a < b < n`.
    Interval { a: usize, b: usize },
    /// Two or more maximal runs, in ascending order.
    Union(Vec<(usize, usize)>),
}

fn check_nodes(n: usize, max_nodes: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("a function needs at least one node"));
    }
    if n > max_nodes {
        return Err(Error::domain(format!(
            "n = {n} exceeds the node limit {max_nodes}"
        )));
    }
    Ok(())
}

impl SymmetricFunction {
    fn empty(n: usize) -> Self {
        Self {
            n,
            words: vec![0; (n + 1).div_ceil(64)],
        }
    }

    fn insert(&mut self, k: usize) {
        self.words[k / 64] |= 1 << (k % 64);
    }

    /// Builds a function from an explicit level set, capped at
    /// [`DEFAULT_MAX_NODES`] nodes.
    pub fn from_levels(n: usize, levels: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::from_levels_capped(n, levels, DEFAULT_MAX_NODES)
    }

    pub fn from_levels_capped(
        n: usize,
        levels: impl IntoIterator<Item = usize>,
        max_nodes: usize,
    ) -> Result<Self> {
        check_nodes(n, max_nodes)?;
        let mut f = Self::empty(n);
        for k in levels {
            if k > n {
                return Err(Error::domain(format!("level {k} outside 0..={n}")));
            }
            f.insert(k);
        }
        Ok(f)
    }

    /// `1` iff at least `theta` inputs are 1. `theta = 0` is constant 1 and
    /// `theta = n + 1` is constant 0.
    pub fn threshold(n: usize, theta: i64) -> Result<Self> {
        check_nodes(n, DEFAULT_MAX_NODES)?;
        if theta < 0 || theta > n as i64 + 1 {
            return Err(Error::domain(format!(
                "threshold {theta} outside 0..={}",
                n + 1
            )));
        }
        Self::from_levels(n, theta as usize..=n)
    }

    /// `1` iff exactly `theta` inputs are 1.
    pub fn delta(n: usize, theta: i64) -> Result<Self> {
        check_nodes(n, DEFAULT_MAX_NODES)?;
        if theta < 0 || theta > n as i64 {
            return Err(Error::domain(format!("delta level {theta} outside 0..={n}")));
        }
        Self::from_levels(n, [theta as usize])
    }

    /// `1` iff the number of 1 inputs lies in `[a, b]`.
    pub fn interval(n: usize, a: i64, b: i64) -> Result<Self> {
        check_nodes(n, DEFAULT_MAX_NODES)?;
        let (a, b) = check_interval(n, a, b)?;
        Self::from_levels(n, a..=b)
    }

    /// `1` iff the number of 1 inputs lies in one of the pairwise disjoint
    /// intervals.
    pub fn union(n: usize, intervals: &[(i64, i64)]) -> Result<Self> {
        check_nodes(n, DEFAULT_MAX_NODES)?;
        let mut checked = intervals
            .iter()
            .map(|&(a, b)| check_interval(n, a, b))
            .collect::<Result<Vec<_>>>()?;
        checked.sort_unstable();
        if let Some(w) = checked.windows(2).find(|w| w[1].0 <= w[0].1) {
            return Err(Error::domain(format!(
                "intervals [{}, {}] and [{}, {}] overlap",
                w[0].0, w[0].1, w[1].0, w[1].1
            )));
        }
        Self::from_levels(n, checked.into_iter().flat_map(|(a, b)| a..=b))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Whether the function is 1 at count `k`; false for `k > n`.
    pub fn contains(&self, k: usize) -> bool {
        k <= self.n && self.words[k / 64] >> (k % 64) & 1 == 1
    }

    pub fn levels(&self) -> impl Iterator<Item = usize> + '_ {
        (0..=self.n).filter(move |&k| self.contains(k))
    }

    pub fn evaluate(&self, count: usize) -> Result<bool> {
        if count > self.n {
            return Err(Error::domain(format!(
                "count {count} outside 0..={}",
                self.n
            )));
        }
        Ok(self.contains(count))
    }

    /// The function the remaining `n - 1` nodes compute once one node's bit
    /// is known to be `bit`.
    pub fn residual(&self, bit: bool) -> Result<Self> {
        if self.n < 2 {
            return Err(Error::domain("cannot take the residual of a one-node function"));
        }
        let shift = usize::from(bit);
        Self::from_levels(self.n - 1, (0..self.n).filter(|&k| self.contains(k + shift)))
    }

    pub fn constant_value(&self) -> ConstantValue {
        let ones = self.levels().count();
        if ones == 0 {
            ConstantValue::Zero
        } else if ones == self.n + 1 {
            ConstantValue::One
        } else {
            ConstantValue::NonConstant
        }
    }

    /// Relabels inputs `0 <-> 1`: count `k` maps to `n - k`.
    pub fn reflect(&self) -> Self {
        let mut out = Self::empty(self.n);
        for k in self.levels() {
            out.insert(self.n - k);
        }
        out
    }

    pub fn complement(&self) -> Self {
        let mut out = Self::empty(self.n);
        for k in (0..=self.n).filter(|&k| !self.contains(k)) {
            out.insert(k);
        }
        out
    }

    /// Maximal runs of consecutive levels, ascending.
    pub fn runs(&self) -> Vec<(usize, usize)> {
        let mut runs: Vec<(usize, usize)> = Vec::new();
        for k in self.levels() {
            match runs.last_mut() {
                Some(last) if last.1 + 1 == k => last.1 = k,
                _ => runs.push((k, k)),
            }
        }
        runs
    }

    pub fn shape(&self) -> Shape {
        match self.constant_value() {
            ConstantValue::Zero => return Shape::Constant(false),
            ConstantValue::One => return Shape::Constant(true),
            ConstantValue::NonConstant => {}
        }
        let n = self.n;
        match self.runs().as_slice() {
            &[(a, b)] if b == n => Shape::Threshold { theta: a },
            &[(0, b)] => Shape::CoThreshold { b },
            &[(a, b)] if a == b => Shape::Delta { theta: a },
            &[(a, b)] => Shape::Interval { a, b },
            runs => Shape::Union(runs.to_vec()),
        }
    }

    /// Levels of the residual after `ones` of `depth` resolved inputs were 1:
    /// whether counts `ones..=ones + n - depth` are all in, all out, or mixed.
    pub(crate) fn window_constant(&self, prefix: &[usize], depth: usize, ones: usize) -> Option<bool> {
        let lo = ones;
        let hi = ones + self.n - depth;
        let inside = prefix[hi + 1] - prefix[lo];
        if inside == 0 {
            Some(false)
        } else if inside == hi - lo + 1 {
            Some(true)
        } else {
            None
        }
    }

    /// `prefix[k]` counts levels below `k`.
    pub(crate) fn level_prefix_counts(&self) -> Vec<usize> {
        let mut prefix = Vec::with_capacity(self.n + 2);
        prefix.push(0);
        let mut acc = 0;
        for k in 0..=self.n {
            acc += usize::from(self.contains(k));
            prefix.push(acc);
        }
        prefix
    }
}

fn check_interval(n: usize, a: i64, b: i64) -> Result<(usize, usize)> {
    if a < 0 || b < a || b > n as i64 {
        return Err(Error::domain(format!(
            "interval [{a}, {b}] is not within 0..={n}"
        )));
    }
    Ok((a as usize, b as usize))
}

impl fmt::Debug for SymmetricFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymmetricFunction({self})")
    }
}

/// Canonical spec string, accepted back by [`FromStr`].
impl fmt::Display for SymmetricFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n;
        match self.shape() {
            Shape::Threshold { theta } => write!(f, "threshold:n={n},theta={theta}"),
            Shape::Delta { theta } => write!(f, "delta:n={n},theta={theta}"),
            Shape::CoThreshold { b } => write!(f, "interval:n={n},a=0,b={b}"),
            Shape::Interval { a, b } => write!(f, "interval:n={n},a={a},b={b}"),
            Shape::Union(runs) => {
                let parts: Vec<String> = runs.iter().map(|(a, b)| format!("{a}-{b}")).collect();
                write!(f, "union:n={n},intervals={}", parts.join(";"))
            }
            Shape::Constant(_) => {
                let parts: Vec<String> = self.levels().map(|k| k.to_string()).collect();
                write!(f, "levels:n={n},set={}", parts.join(","))
            }
        }
    }
}

/// One `key=value` field of a spec string, with the byte offset of its value.
struct Field<'a> {
    key: &'a str,
    value: String,
    offset: usize,
}

fn split_fields(body: &str, base: usize) -> Result<Vec<Field<'_>>> {
    let mut fields: Vec<Field<'_>> = Vec::new();
    let mut offset = base;
    for token in body.split(',') {
        match token.split_once('=') {
            Some((key, value)) => {
                let key = key.trim();
                if key.is_empty() {
                    return Err(Error::parse(offset, "empty field name"));
                }
                if fields.iter().any(|f| f.key == key) {
                    return Err(Error::parse(offset, format!("duplicate field `{key}`")));
                }
                fields.push(Field {
                    key,
                    value: value.trim().to_string(),
                    offset: offset + key.len() + 1,
                });
            }
            // list values (`set=1,2,3`) continue across commas
            None => match fields.last_mut() {
                Some(last) => {
                    last.value.push(',');
                    last.value.push_str(token.trim());
                }
                None => return Err(Error::parse(offset, "expected `key=value`")),
            },
        }
        offset += token.len() + 1;
    }
    Ok(fields)
}

fn parse_int(text: &str, offset: usize) -> Result<i64> {
    text.trim()
        .parse::<i64>()
        .map_err(|_| Error::parse(offset, format!("expected an integer, found {text:?}")))
}

struct Fields<'a> {
    fields: Vec<Field<'a>>,
    end: usize,
}

impl Fields<'_> {
    fn take(&mut self, key: &str) -> Result<(String, usize)> {
        let idx = self
            .fields
            .iter()
            .position(|f| f.key == key)
            .ok_or_else(|| Error::parse(self.end, format!("missing field `{key}`")))?;
        let field = self.fields.remove(idx);
        Ok((field.value, field.offset))
    }

    fn int(&mut self, key: &str) -> Result<i64> {
        let (value, offset) = self.take(key)?;
        parse_int(&value, offset)
    }

    fn finish(self) -> Result<()> {
        match self.fields.first() {
            Some(f) => Err(Error::parse(f.offset, format!("unknown field `{}`", f.key))),
            None => Ok(()),
        }
    }
}

fn parse_nodes(fields: &mut Fields<'_>) -> Result<usize> {
    let (value, offset) = fields.take("n")?;
    let n = parse_int(&value, offset)?;
    usize::try_from(n).map_err(|_| Error::parse(offset, "n must be positive"))
}

/// Parses `threshold:n=<n>,theta=<t>`, `delta:n=<n>,theta=<t>`,
/// `interval:n=<n>,a=<a>,b=<b>`, `union:n=<n>,intervals=<a>-<b>;<a>-<b>`
/// and `levels:n=<n>,set=<k>,<k>,...`.
impl FromStr for SymmetricFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, body) = s
            .split_once(':')
            .ok_or_else(|| Error::parse(0, "expected `<kind>:<fields>`"))?;
        let base = kind.len() + 1;
        let mut fields = Fields {
            fields: split_fields(body, base)?,
            end: s.len(),
        };
        let n = parse_nodes(&mut fields)?;
        let f = match kind.trim() {
            "threshold" => {
                let theta = fields.int("theta")?;
                Self::threshold(n, theta)?
            }
            "delta" => {
                let theta = fields.int("theta")?;
                Self::delta(n, theta)?
            }
            "interval" => {
                let a = fields.int("a")?;
                let b = fields.int("b")?;
                Self::interval(n, a, b)?
            }
            "union" => {
                let (value, offset) = fields.take("intervals")?;
                let mut intervals = Vec::new();
                let mut pos = offset;
                for part in value.split([';', ',']) {
                    let (a, b) = part
                        .split_once('-')
                        .ok_or_else(|| Error::parse(pos, format!("expected `a-b`, found {part:?}")))?;
                    intervals.push((parse_int(a, pos)?, parse_int(b, pos + a.len() + 1)?));
                    pos += part.len() + 1;
                }
                Self::union(n, &intervals)?
            }
            "levels" => {
                let (value, offset) = fields.take("set")?;
                let mut levels = Vec::new();
                let mut pos = offset;
                for part in value.split(',').filter(|p| !p.trim().is_empty()) {
                    let k = parse_int(part, pos)?;
                    let k = usize::try_from(k)
                        .map_err(|_| Error::domain(format!("level {k} is negative")))?;
                    levels.push(k);
                    pos += part.len() + 1;
                }
                Self::from_levels(n, levels)?
            }
            other => {
                return Err(Error::parse(
                    0,
                    format!("unknown function kind `{other}`"),
                ))
            }
        };
        fields.finish()?;
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn levels(f: &SymmetricFunction) -> Vec<usize> {
        f.levels().collect()
    }

    #[test]
    fn threshold_examples() {
        let and2 = SymmetricFunction::threshold(2, 2).unwrap();
        assert_eq!(levels(&and2), vec![2]);
        assert_eq!(levels(&SymmetricFunction::threshold(3, 0).unwrap()), vec![0, 1, 2, 3]);
        assert_eq!(levels(&SymmetricFunction::threshold(4, 1).unwrap()), vec![1, 2, 3, 4]);
        assert!(levels(&SymmetricFunction::threshold(3, 4).unwrap()).is_empty());
    }

    #[test]
    fn threshold_domain_errors() {
        assert!(matches!(SymmetricFunction::threshold(3, -1), Err(Error::Domain(_))));
        assert!(matches!(SymmetricFunction::threshold(3, 5), Err(Error::Domain(_))));
        assert!(SymmetricFunction::threshold(0, 0).is_err());
    }

    #[test]
    fn delta_interval_union_examples() {
        assert_eq!(levels(&SymmetricFunction::delta(4, 2).unwrap()), vec![2]);
        assert_eq!(levels(&SymmetricFunction::interval(4, 1, 2).unwrap()), vec![1, 2]);
        assert_eq!(
            levels(&SymmetricFunction::union(6, &[(1, 2), (4, 4)]).unwrap()),
            vec![1, 2, 4]
        );
    }

    #[test]
    fn constructor_domain_errors() {
        assert!(SymmetricFunction::delta(4, 5).is_err());
        assert!(SymmetricFunction::interval(4, 3, 2).is_err());
        assert!(SymmetricFunction::interval(4, -1, 2).is_err());
        assert!(SymmetricFunction::interval(4, 1, 5).is_err());
        assert!(SymmetricFunction::union(6, &[(1, 3), (3, 4)]).is_err());
        assert!(SymmetricFunction::union(6, &[(4, 5), (1, 4)]).is_err());
        assert!(SymmetricFunction::from_levels(3, [4]).is_err());
        assert!(SymmetricFunction::from_levels_capped(9, [1], 8).is_err());
        assert!(SymmetricFunction::from_levels(DEFAULT_MAX_NODES + 1, [1]).is_err());
    }

    #[test]
    fn evaluate_examples() {
        let and2 = SymmetricFunction::threshold(2, 2).unwrap();
        assert!(and2.evaluate(2).unwrap());
        assert!(!and2.evaluate(1).unwrap());
        assert!(!SymmetricFunction::interval(4, 1, 2).unwrap().evaluate(3).unwrap());
        assert!(and2.evaluate(3).is_err());
    }

    #[test]
    fn residual_examples() {
        let f = SymmetricFunction::threshold(3, 2).unwrap();
        assert_eq!(f.residual(true).unwrap(), SymmetricFunction::threshold(2, 1).unwrap());
        assert_eq!(f.residual(false).unwrap(), SymmetricFunction::threshold(2, 2).unwrap());
        let d = SymmetricFunction::delta(2, 0).unwrap();
        let r = d.residual(true).unwrap();
        assert_eq!(r.n(), 1);
        assert_eq!(r.constant_value(), ConstantValue::Zero);
        assert!(SymmetricFunction::threshold(1, 1).unwrap().residual(false).is_err());
    }

    #[test]
    fn residual_of_interval_shifts_endpoints() {
        let f = SymmetricFunction::interval(6, 2, 4).unwrap();
        assert_eq!(f.residual(true).unwrap(), SymmetricFunction::interval(5, 1, 3).unwrap());
        assert_eq!(f.residual(false).unwrap(), SymmetricFunction::interval(5, 2, 4).unwrap());
    }

    #[test]
    fn constant_value_examples() {
        assert_eq!(
            SymmetricFunction::threshold(3, 0).unwrap().constant_value(),
            ConstantValue::One
        );
        assert_eq!(
            SymmetricFunction::threshold(3, 4).unwrap().constant_value(),
            ConstantValue::Zero
        );
        assert_eq!(
            SymmetricFunction::threshold(2, 2).unwrap().constant_value(),
            ConstantValue::NonConstant
        );
    }

    #[test]
    fn shapes() {
        let s = |spec: &str| spec.parse::<SymmetricFunction>().unwrap().shape();
        assert_eq!(s("threshold:n=4,theta=4"), Shape::Threshold { theta: 4 });
        assert_eq!(s("delta:n=4,theta=4"), Shape::Threshold { theta: 4 });
        assert_eq!(s("delta:n=4,theta=0"), Shape::CoThreshold { b: 0 });
        assert_eq!(s("delta:n=4,theta=2"), Shape::Delta { theta: 2 });
        assert_eq!(s("interval:n=4,a=1,b=2"), Shape::Interval { a: 1, b: 2 });
        assert_eq!(s("interval:n=4,a=3,b=4"), Shape::Threshold { theta: 3 });
        assert_eq!(s("levels:n=3,set="), Shape::Constant(false));
        assert_eq!(s("union:n=6,intervals=1-2;4-4"), Shape::Union(vec![(1, 2), (4, 4)]));
        assert_eq!(s("union:n=6,intervals=1-2;3-4"), Shape::Interval { a: 1, b: 4 });
    }

    #[test]
    fn parse_all_kinds() {
        let p = |spec: &str| spec.parse::<SymmetricFunction>().unwrap();
        assert_eq!(p("threshold:n=2,theta=2"), SymmetricFunction::threshold(2, 2).unwrap());
        assert_eq!(p("delta:n=4,theta=2"), SymmetricFunction::delta(4, 2).unwrap());
        assert_eq!(p("interval:n=4,a=1,b=2"), SymmetricFunction::interval(4, 1, 2).unwrap());
        assert_eq!(
            p("union:n=6,intervals=1-2;4-4"),
            SymmetricFunction::union(6, &[(1, 2), (4, 4)]).unwrap()
        );
        assert_eq!(
            p("union:n=6,intervals=1-2,4-4"),
            SymmetricFunction::union(6, &[(1, 2), (4, 4)]).unwrap()
        );
        assert_eq!(
            p("levels:n=3,set=0,1,2,3"),
            SymmetricFunction::threshold(3, 0).unwrap()
        );
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = |spec: &str| spec.parse::<SymmetricFunction>().unwrap_err();
        assert_eq!(
            err("threshold:n=2,theta=x"),
            Error::Parse {
                position: 20,
                message: "expected an integer, found \"x\"".into()
            }
        );
        assert!(matches!(err("threshold"), Error::Parse { position: 0, .. }));
        assert!(matches!(err("cube:n=2"), Error::Parse { .. }));
        assert!(matches!(err("threshold:n=2"), Error::Parse { .. }));
        assert!(matches!(err("threshold:n=2,theta=1,zeta=2"), Error::Parse { position: 27, .. }));
        assert!(matches!(err("threshold:n=2,theta=7"), Error::Domain(_)));
    }

    #[test]
    fn display_round_trips() {
        for spec in [
            "threshold:n=5,theta=2",
            "delta:n=4,theta=2",
            "interval:n=4,a=1,b=2",
            "interval:n=4,a=0,b=2",
            "union:n=6,intervals=1-2;4-4",
            "levels:n=3,set=",
            "levels:n=3,set=0,1,2,3",
        ] {
            let f: SymmetricFunction = spec.parse().unwrap();
            assert_eq!(f.to_string(), spec);
        }
    }

    /// Every Boolean column of length `n`, as a vector of bits.
    fn columns(n: usize) -> impl Iterator<Item = Vec<bool>> {
        (0u32..1 << n).map(move |m| (0..n).map(|i| m >> i & 1 == 1).collect())
    }

    #[test]
    fn residual_consistency_exhaustive() {
        for n in 2..=12 {
            // a few structurally different functions per n
            let fs = [
                SymmetricFunction::threshold(n, (n / 2) as i64).unwrap(),
                SymmetricFunction::delta(n, 1).unwrap(),
                SymmetricFunction::from_levels(n, (0..=n).filter(|k| k % 3 == 1)).unwrap(),
            ];
            for f in &fs {
                let r0 = f.residual(false).unwrap();
                let r1 = f.residual(true).unwrap();
                for x in columns(n) {
                    let total = x.iter().filter(|&&b| b).count();
                    let head = x[..n - 1].iter().filter(|&&b| b).count();
                    let r = if x[n - 1] { &r1 } else { &r0 };
                    assert_eq!(f.contains(total), r.contains(head));
                }
            }
        }
    }

    #[test]
    fn de_morgan_duality() {
        for n in 1..=10 {
            let or = SymmetricFunction::threshold(n, 1).unwrap();
            let and = SymmetricFunction::threshold(n, n as i64).unwrap();
            assert_eq!(or.complement().reflect(), and);
        }
    }

    #[test]
    fn threshold_is_interval_to_n() {
        for n in 1..=12 {
            for theta in 1..=n {
                assert_eq!(
                    SymmetricFunction::threshold(n, theta as i64).unwrap(),
                    SymmetricFunction::interval(n, theta as i64, n as i64).unwrap()
                );
            }
        }
    }

    #[test]
    fn wide_level_sets_span_words() {
        let f = SymmetricFunction::interval(200, 60, 130).unwrap();
        assert_eq!(f.levels().count(), 71);
        assert_eq!(f.shape(), Shape::Interval { a: 60, b: 130 });
        assert_eq!(f.residual(true).unwrap().shape(), Shape::Interval { a: 59, b: 129 });
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        fn any_function() -> impl Strategy<Value = SymmetricFunction> {
            (2usize..40).prop_flat_map(|n| {
                proptest::collection::vec(any::<bool>(), n + 1).prop_map(move |mask| {
                    SymmetricFunction::from_levels(n, (0..=n).filter(|&k| mask[k])).unwrap()
                })
            })
        }

        proptest! {
            #[test]
            fn double_residual_commutes(f in any_function(), b1: bool, b2: bool) {
                prop_assume!(f.n() >= 3);
                let lhs = f.residual(b1).unwrap().residual(b2).unwrap();
                let rhs = f.residual(b2).unwrap().residual(b1).unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn display_parses_back(f in any_function()) {
                let back: SymmetricFunction = f.to_string().parse().unwrap();
                prop_assert_eq!(back, f);
            }
        }
    }
}
