//! Prefix-free codebooks over Boolean blocks.
//!
//! When a node broadcasts its block, the code length of a block depends only
//! on its weight: a block with `w1` ones (and `w0 = N - w1` zeros) leaves
//! the other nodes with `A1^w1 * A0^w0` possibilities still to resolve, so
//! it gets the shortest length `l` with `2^l * A0^w0 * A1^w1 >= A^N`.
//! Everything is decided by integer comparison; no floating-point logarithm
//! is involved.
//!
//! Codewords are assigned canonically (classes sorted by length, then by
//! weight; blocks within a class by colex rank), so a code is determined by
//! its length profile and never has to be stored.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::bits::{BitReader, BitString};
use crate::error::{Error, Result};
use crate::rank::Ranker;

/// Codeword length for each weight class of blocks of length `block_len`.
/// A class without a length has no codewords.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthProfile {
    block_len: usize,
    lengths: Vec<Option<u64>>,
}

impl LengthProfile {
    pub fn new(block_len: usize, lengths: Vec<Option<u64>>) -> Result<Self> {
        if lengths.len() != block_len + 1 {
            return Err(Error::domain(format!(
                "profile for blocks of length {block_len} needs {} classes, got {}",
                block_len + 1,
                lengths.len()
            )));
        }
        Ok(Self { block_len, lengths })
    }

    /// Lengths for every weight class from `length(w1)`.
    pub fn from_fn(block_len: usize, length: impl Fn(usize) -> Option<u64>) -> Self {
        Self {
            block_len,
            lengths: (0..=block_len).map(length).collect(),
        }
    }

    /// Target lengths for a node splitting `a` codewords into residuals of
    /// sizes `a0` (bit 0) and `a1` (bit 1), for every weight class.
    pub fn for_split(a: &BigUint, a0: &BigUint, a1: &BigUint, block_len: usize) -> Result<Self> {
        check_split(a, a0, a1)?;
        let target = a.pow(block_len as u32);
        // a0^(N - w1) * a1^w1, walked from w1 = 0 upwards
        let mut zero_powers = Vec::with_capacity(block_len + 1);
        let mut acc = BigUint::one();
        for _ in 0..=block_len {
            zero_powers.push(acc.clone());
            acc *= a0;
        }
        let mut one_power = BigUint::one();
        let mut lengths = Vec::with_capacity(block_len + 1);
        for w1 in 0..=block_len {
            let remaining = &zero_powers[block_len - w1] * &one_power;
            lengths.push(Some(least_shift(&remaining, &target)));
            one_power *= a1;
        }
        Ok(Self { block_len, lengths })
    }

    pub fn block_len(&self) -> usize {
        self.block_len
    }

    pub fn length(&self, ones: usize) -> Option<u64> {
        self.lengths.get(ones).copied().flatten()
    }

    pub fn lengths(&self) -> &[Option<u64>] {
        &self.lengths
    }

    pub fn max_length(&self) -> u64 {
        self.lengths.iter().flatten().copied().max().unwrap_or(0)
    }
}

fn check_split(a: &BigUint, a0: &BigUint, a1: &BigUint) -> Result<()> {
    if a.is_zero() || a0.is_zero() || a1.is_zero() {
        return Err(Error::domain("codebook sizes must be positive"));
    }
    if *a < a0 + a1 {
        return Err(Error::domain(format!(
            "codebook size {a} is smaller than {a0} + {a1}; the lengths would violate Kraft"
        )));
    }
    Ok(())
}

/// Least `l >= 0` with `remaining << l >= target`.
fn least_shift(remaining: &BigUint, target: &BigUint) -> u64 {
    if remaining >= target {
        return 0;
    }
    // `remaining << d` has the bit length of `target`, so the answer is d or d + 1.
    let d = target.bits() - remaining.bits();
    if (remaining << d) >= *target {
        d
    } else {
        d + 1
    }
}

/// Codeword length for a block with `ones` ones out of `block_len`, when the
/// broadcasting node splits `a` codewords into residuals of sizes `a0`, `a1`.
/// A constant state (`a = 1`) needs no codeword.
pub fn target_length(a: &BigUint, a0: &BigUint, a1: &BigUint, block_len: usize, ones: usize) -> Result<u64> {
    if ones > block_len {
        return Err(Error::domain(format!("{ones} ones in a block of length {block_len}")));
    }
    if a.is_one() {
        return Ok(0);
    }
    check_split(a, a0, a1)?;
    let remaining = a0.pow((block_len - ones) as u32) * a1.pow(ones as u32);
    Ok(least_shift(&remaining, &a.pow(block_len as u32)))
}

/// Exact Kraft sum `sum_w C(N, w) 2^-l(w)`.
pub fn kraft_sum(profile: &LengthProfile) -> BigRational {
    let ranker = Ranker::new(profile.block_len);
    let mut sum = BigRational::zero();
    for (w, len) in profile.lengths.iter().enumerate() {
        if let Some(len) = len {
            let count = BigInt::from(ranker.class_size(profile.block_len, w));
            let denom = BigInt::one() << *len;
            sum += BigRational::new(count, denom);
        }
    }
    sum
}

/// Kraft inequality in integers: `sum_w C(N, w) 2^(L - l(w)) <= 2^L` with
/// `L` the longest length.
pub fn kraft_check(profile: &LengthProfile) -> bool {
    let longest = profile.max_length();
    let ranker = Ranker::new(profile.block_len);
    let total: BigUint = profile
        .lengths
        .iter()
        .enumerate()
        .filter_map(|(w, len)| len.map(|len| ranker.class_size(profile.block_len, w) << (longest - len)))
        .sum();
    total <= BigUint::one() << longest
}

/// Classes sharing one codeword length.
#[derive(Debug, Clone)]
struct LengthGroup {
    len: u64,
    first: BigUint,
    /// `(weight, class size)` in canonical order.
    classes: Vec<(usize, BigUint)>,
    total: BigUint,
}

/// Machine-word copy of the code tables, used when every codeword fits in
/// 63 bits.
#[derive(Debug, Clone)]
struct WordTables {
    /// `binom[p][k] = C(p, k)` for `p < block_len`.
    binom: Vec<Vec<u64>>,
    bases: Vec<Option<u64>>,
    groups: Vec<WordGroup>,
}

/// `(len, first, total, [(weight, count)])` of one length group.
type WordGroup = (u64, u64, u64, Vec<(usize, u64)>);

impl WordTables {
    fn build(ranker: &Ranker, block_len: usize, bases: &[Option<BigUint>], groups: &[LengthGroup]) -> Option<Self> {
        let word = |x: &BigUint| x.to_u64();
        if groups.last().is_some_and(|g| g.len > 63) {
            return None;
        }
        let binom = (0..block_len)
            .map(|p| (0..=p).map(|k| word(&ranker.class_size(p, k))).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        let bases = bases
            .iter()
            .map(|b| match b {
                Some(b) => word(b).map(Some),
                None => Some(None),
            })
            .collect::<Option<Vec<_>>>()?;
        let groups = groups
            .iter()
            .map(|g| {
                let classes = g
                    .classes
                    .iter()
                    .map(|(w, c)| word(c).map(|c| (*w, c)))
                    .collect::<Option<Vec<_>>>()?;
                Some((g.len, word(&g.first)?, word(&g.total)?, classes))
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Self { binom, bases, groups })
    }

    fn rank(&self, block: &[bool]) -> (usize, u64) {
        let mut weight = 0;
        let mut rank = 0;
        for (pos, _) in block.iter().enumerate().filter(|(_, &b)| b) {
            weight += 1;
            rank += self.binom[pos].get(weight).copied().unwrap_or(0);
        }
        (weight, rank)
    }

    fn unrank(&self, len: usize, weight: usize, mut rank: u64) -> Vec<bool> {
        let mut block = vec![false; len];
        let mut w = weight;
        for pos in (0..len).rev() {
            if w == 0 {
                break;
            }
            let c = self.binom[pos].get(w).copied().unwrap_or(0);
            if c <= rank {
                rank -= c;
                block[pos] = true;
                w -= 1;
            }
        }
        block
    }
}

/// Canonical prefix code over Boolean blocks of one length.
#[derive(Debug, Clone)]
pub struct CanonicalCode {
    profile: LengthProfile,
    ranker: Ranker,
    class_order: Vec<usize>,
    /// First codeword value of each weight class.
    bases: Vec<Option<BigUint>>,
    groups: Vec<LengthGroup>,
    words: Option<WordTables>,
}

impl CanonicalCode {
    pub fn new(profile: LengthProfile) -> Result<Self> {
        if !kraft_check(&profile) {
            return Err(Error::domain("length profile violates the Kraft inequality"));
        }
        let n = profile.block_len;
        let ranker = Ranker::new(n);
        let mut class_order: Vec<usize> = (0..=n).filter(|&w| profile.length(w).is_some()).collect();
        class_order.sort_by_key(|&w| (profile.length(w), w));

        let mut bases = vec![None; n + 1];
        let mut groups: Vec<LengthGroup> = Vec::new();
        let mut next = BigUint::zero();
        let mut prev_len = 0;
        for &w in &class_order {
            let len = profile.length(w).expect("classes in the order have lengths");
            next <<= len - prev_len;
            prev_len = len;
            let count = ranker.class_size(n, w);
            match groups.last_mut() {
                Some(g) if g.len == len => {
                    g.total += &count;
                    g.classes.push((w, count.clone()));
                }
                _ => groups.push(LengthGroup {
                    len,
                    first: next.clone(),
                    classes: vec![(w, count.clone())],
                    total: count.clone(),
                }),
            }
            bases[w] = Some(next.clone());
            next += count;
        }
        debug_assert!(next <= BigUint::one() << prev_len);
        let words = WordTables::build(&ranker, n, &bases, &groups);
        Ok(Self {
            profile,
            ranker,
            class_order,
            bases,
            groups,
            words,
        })
    }

    pub fn profile(&self) -> &LengthProfile {
        &self.profile
    }

    pub fn block_len(&self) -> usize {
        self.profile.block_len
    }

    /// Weight classes in codeword order.
    pub fn class_order(&self) -> &[usize] {
        &self.class_order
    }

    pub fn codeword_length(&self, ones: usize) -> Option<u64> {
        self.profile.length(ones)
    }

    /// Appends the codeword of `block` to `out` and returns its length.
    pub fn encode_into(&self, block: &[bool], out: &mut BitString) -> Result<u64> {
        if block.len() != self.block_len() {
            return Err(Error::Dimension(format!(
                "block of length {} for a code over length {}",
                block.len(),
                self.block_len()
            )));
        }
        if let Some(words) = &self.words {
            let (ones, rank) = words.rank(block);
            return match (words.bases[ones], self.profile.length(ones)) {
                (Some(base), Some(len)) => {
                    out.push_u64(base + rank, len);
                    Ok(len)
                }
                _ => Err(Error::domain(format!("no codewords for weight {ones}"))),
            };
        }
        let (ones, rank) = self.ranker.rank(block);
        let (base, len) = match (&self.bases[ones], self.profile.length(ones)) {
            (Some(base), Some(len)) => (base, len),
            _ => return Err(Error::domain(format!("no codewords for weight {ones}"))),
        };
        out.push_uint(&(base + rank), len);
        Ok(len)
    }

    pub fn encode(&self, block: &[bool]) -> Result<BitString> {
        let mut out = BitString::new();
        self.encode_into(block, &mut out)?;
        Ok(out)
    }

    /// Reads one codeword from `reader` and returns its block.
    pub fn decode(&self, reader: &mut BitReader<'_>) -> Result<Vec<bool>> {
        if let Some(words) = &self.words {
            return self.decode_word(words, reader);
        }
        let mut value = BigUint::zero();
        let mut read = 0;
        for group in &self.groups {
            while read < group.len {
                let bit = reader
                    .read_bit()
                    .ok_or_else(|| Error::Decode("stream ended inside a codeword".into()))?;
                value <<= 1;
                if bit {
                    value += 1u32;
                }
                read += 1;
            }
            if value < group.first {
                break;
            }
            let mut offset = &value - &group.first;
            if offset >= group.total {
                continue;
            }
            for (w, count) in &group.classes {
                if offset < *count {
                    return self.ranker.unrank(self.block_len(), *w, &offset);
                }
                offset -= count;
            }
        }
        Err(Error::Decode(format!(
            "{read} bits do not form a codeword of this code"
        )))
    }

    fn decode_word(&self, words: &WordTables, reader: &mut BitReader<'_>) -> Result<Vec<bool>> {
        let mut value = 0u64;
        let mut read = 0;
        for (len, first, total, classes) in &words.groups {
            while read < *len {
                let bit = reader
                    .read_bit()
                    .ok_or_else(|| Error::Decode("stream ended inside a codeword".into()))?;
                value = value << 1 | u64::from(bit);
                read += 1;
            }
            if value < *first {
                break;
            }
            let mut offset = value - first;
            if offset >= *total {
                continue;
            }
            for &(w, count) in classes {
                if offset < count {
                    return Ok(words.unrank(self.block_len(), w, offset));
                }
                offset -= count;
            }
        }
        Err(Error::Decode(format!(
            "{read} bits do not form a codeword of this code"
        )))
    }

    /// Decodes the codeword at the start of `stream`, returning the block and
    /// the number of bits consumed.
    pub fn decode_prefix(&self, stream: &BitString) -> Result<(Vec<bool>, usize)> {
        let mut reader = stream.reader();
        let block = self.decode(&mut reader)?;
        Ok((block, reader.position()))
    }
}
