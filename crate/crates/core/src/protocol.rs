//! Deterministic simulator for the node-by-node broadcast strategy.
//!
//! Nodes speak in the fixed order `n, n-1, ..., 1`. Before node `n - k`
//! speaks, the instances of the block are partitioned into groups by how
//! many 1s the `k` earlier speakers held. A group whose residual function is
//! already constant is finished and costs nothing; every other group gets
//! one codeword from the current node, covering that node's bits on exactly
//! the group's instances. Groups are served in ascending order of their
//! 1-count, so the whole schedule is a function of the bits already on the
//! channel and every transmission is collision-free.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::{block_to_hex, BitString};
use crate::complexity::CodebookSizeTable;
use crate::error::{Error, Result};
use crate::prefixcode::{CanonicalCode, LengthProfile};
use crate::scalar::Real;
use crate::symfunc::SymmetricFunction;

/// Row `i` is the measurement block of node `i + 1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MeasurementMatrix {
    rows: Vec<Vec<bool>>,
}

impl MeasurementMatrix {
    pub fn new(rows: Vec<Vec<bool>>) -> Result<Self> {
        let block_len = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || block_len == 0 {
            return Err(Error::Dimension("a measurement matrix needs at least one row and one column".into()));
        }
        if let Some(i) = rows.iter().position(|r| r.len() != block_len) {
            return Err(Error::Dimension(format!(
                "row {} has {} entries, expected {block_len}",
                i + 1,
                rows[i].len()
            )));
        }
        Ok(Self { rows })
    }

    /// The matrix whose row-major bits, read most significant first, spell
    /// `index`. Index order is lexicographic order of the matrices.
    pub fn from_index(n: usize, block_len: usize, index: u64) -> Self {
        let total = n * block_len;
        let rows = (0..n)
            .map(|i| {
                (0..block_len)
                    .map(|t| index >> (total - 1 - (i * block_len + t)) & 1 == 1)
                    .collect()
            })
            .collect();
        Self { rows }
    }

    pub fn random(n: usize, block_len: usize, rng: &mut impl Rng) -> Self {
        let rows = (0..n).map(|_| (0..block_len).map(|_| rng.gen()).collect()).collect();
        Self { rows }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn block_len(&self) -> usize {
        self.rows[0].len()
    }

    /// Measurement block of `node` (1-based).
    pub fn row(&self, node: usize) -> &[bool] {
        &self.rows[node - 1]
    }

    pub fn rows(&self) -> &[Vec<bool>] {
        &self.rows
    }

    pub fn column_count(&self, instance: usize) -> usize {
        self.rows.iter().filter(|r| r[instance]).count()
    }

    /// `f` evaluated on every column.
    pub fn function_block(&self, f: &SymmetricFunction) -> Vec<bool> {
        (0..self.block_len()).map(|t| f.contains(self.column_count(t))).collect()
    }

    pub fn row_strings(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|&b| if b { '1' } else { '0' }).collect())
            .collect()
    }
}

impl fmt::Display for MeasurementMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.row_strings().join("\n"))
    }
}

impl fmt::Debug for MeasurementMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MeasurementMatrix({:?})", self.row_strings())
    }
}

/// Rows of `0`/`1` characters, one row per line (commas and blanks also
/// separate rows).
impl FromStr for MeasurementMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut rows = Vec::new();
        let mut row = Vec::new();
        for (pos, c) in s.char_indices() {
            match c {
                '0' => row.push(false),
                '1' => row.push(true),
                c if c == ',' || c.is_whitespace() => {
                    if !row.is_empty() {
                        rows.push(std::mem::take(&mut row));
                    }
                }
                other => return Err(Error::parse(pos, format!("unexpected {other:?} in matrix"))),
            }
        }
        if !row.is_empty() {
            rows.push(row);
        }
        Self::new(rows)
    }
}

/// One broadcast codeword.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Event {
    /// Transmitting node, 1-based.
    pub node: usize,
    /// Nodes that spoke before this one.
    pub depth: usize,
    /// Number of 1s the earlier speakers held on this group's instances.
    pub group_ones: usize,
    pub bits: BitString,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Transcript {
    pub events: Vec<Event>,
    pub total_bits: usize,
}

impl Transcript {
    fn push(&mut self, event: Event) {
        self.total_bits += event.bits.len();
        self.events.push(event);
    }

    /// Every codeword back to back, as heard on the channel.
    pub fn concatenated(&self) -> BitString {
        let mut out = BitString::new();
        for e in &self.events {
            out.extend_from(&e.bits);
        }
        out
    }
}

/// Serialized event, bit-exact via hex plus explicit length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventRecord {
    pub node: usize,
    pub depth: usize,
    pub group_ones: usize,
    pub bits_hex: String,
    pub bit_len: usize,
}

/// Serialized run: the transcript plus every node's decoded function block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptRecord {
    pub function: String,
    pub n: usize,
    #[serde(rename = "N")]
    pub block_len: usize,
    pub events: Vec<EventRecord>,
    pub total_bits: usize,
    pub outputs: Vec<String>,
}

impl TranscriptRecord {
    pub fn transcript(&self) -> Result<Transcript> {
        let mut transcript = Transcript::default();
        for e in &self.events {
            transcript.push(Event {
                node: e.node,
                depth: e.depth,
                group_ones: e.group_ones,
                bits: BitString::from_hex(&e.bits_hex, e.bit_len)?,
            });
        }
        if transcript.total_bits != self.total_bits {
            return Err(Error::Invariant(format!(
                "record claims {} bits but its events carry {}",
                self.total_bits, transcript.total_bits
            )));
        }
        Ok(transcript)
    }
}

/// Result of one simulated block computation.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub transcript: Transcript,
    /// Decoded function block of each node, node 1 first.
    pub outputs: Vec<Vec<bool>>,
    pub truth: Vec<bool>,
}

impl RunOutcome {
    pub fn record(&self, f: &SymmetricFunction) -> TranscriptRecord {
        TranscriptRecord {
            function: f.to_string(),
            n: f.n(),
            block_len: self.truth.len(),
            events: self
                .transcript
                .events
                .iter()
                .map(|e| EventRecord {
                    node: e.node,
                    depth: e.depth,
                    group_ones: e.group_ones,
                    bits_hex: e.bits.to_hex(),
                    bit_len: e.bits.len(),
                })
                .collect(),
            total_bits: self.transcript.total_bits,
            outputs: self.outputs.iter().map(|o| block_to_hex(o)).collect(),
        }
    }
}

/// A scheduled transmission: who speaks, for which group, with which code.
pub struct Slot<'a> {
    pub node: usize,
    pub depth: usize,
    pub group_ones: usize,
    /// Instance indices of the group, ascending.
    pub members: &'a [usize],
    pub code: &'a CanonicalCode,
}

/// The strategy for one function at one block length.
pub struct Protocol {
    f: SymmetricFunction,
    block_len: usize,
    table: CodebookSizeTable,
    /// `codes[depth][ones][group_size - 1]`, built on first use.
    codes: Vec<Vec<Vec<OnceLock<CanonicalCode>>>>,
}

impl Protocol {
    pub fn new(f: &SymmetricFunction, block_len: usize) -> Result<Self> {
        if block_len == 0 {
            return Err(Error::domain("block length must be positive"));
        }
        let table = CodebookSizeTable::new(f);
        let codes = (0..f.n())
            .map(|depth| {
                (0..=depth)
                    .map(|ones| {
                        let slots = if table.constant_at(depth, ones).is_none() { block_len } else { 0 };
                        (0..slots).map(|_| OnceLock::new()).collect()
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            f: f.clone(),
            block_len,
            table,
            codes,
        })
    }

    pub fn function(&self) -> &SymmetricFunction {
        &self.f
    }

    pub fn block_len(&self) -> usize {
        self.block_len
    }

    pub fn table(&self) -> &CodebookSizeTable {
        &self.table
    }

    /// Maximum number of codewords in one run.
    pub fn max_events(&self) -> usize {
        self.table.open_states().count()
    }

    /// Code used by node `n - depth` for a group of `size` instances whose
    /// earlier speakers held `ones` 1s.
    pub fn code(&self, depth: usize, ones: usize, size: usize) -> Result<&CanonicalCode> {
        let cell = self
            .codes
            .get(depth)
            .and_then(|row| row.get(ones))
            .and_then(|sizes| sizes.get(size.wrapping_sub(1)))
            .ok_or_else(|| {
                Error::Invariant(format!("no code for state ({depth}, {ones}) at group size {size}"))
            })?;
        if let Some(code) = cell.get() {
            return Ok(code);
        }
        let (a0, a1) = self.table.children(depth, ones);
        let profile = LengthProfile::for_split(self.table.size(depth, ones), a0, a1, size)?;
        let _ = cell.set(CanonicalCode::new(profile)?);
        Ok(cell.get().expect("cell was just set"))
    }

    /// Every code built so far.
    pub fn built_codes(&self) -> impl Iterator<Item = &CanonicalCode> + '_ {
        self.codes.iter().flatten().flatten().filter_map(OnceLock::get)
    }

    /// Walks the schedule. `transmit` supplies the speaker's bits for each
    /// slot; the walk returns the function block fixed by those bits.
    pub fn walk(&self, mut transmit: impl FnMut(&Slot<'_>) -> Result<Vec<bool>>) -> Result<Vec<bool>> {
        let n = self.f.n();
        let mut values: Vec<Option<bool>> = vec![None; self.block_len];
        // groups[ones] holds the instances whose speakers so far sent `ones` 1s
        let mut groups: Vec<Vec<usize>> = vec![(0..self.block_len).collect()];
        for depth in 0..=n {
            for (ones, members) in groups.iter_mut().enumerate() {
                if members.is_empty() {
                    continue;
                }
                if let Some(value) = self.table_constant(depth, ones) {
                    for &t in members.iter() {
                        values[t] = Some(value);
                    }
                    members.clear();
                }
            }
            if depth == n {
                break;
            }
            let mut next: Vec<Vec<usize>> = vec![Vec::new(); groups.len() + 1];
            for (ones, members) in groups.iter().enumerate() {
                if members.is_empty() {
                    continue;
                }
                let slot = Slot {
                    node: n - depth,
                    depth,
                    group_ones: ones,
                    members,
                    code: self.code(depth, ones, members.len())?,
                };
                let block = transmit(&slot)?;
                if block.len() != members.len() {
                    return Err(Error::Invariant(format!(
                        "node {} supplied {} bits for a group of {}",
                        slot.node,
                        block.len(),
                        members.len()
                    )));
                }
                for (&t, &bit) in members.iter().zip(&block) {
                    next[ones + usize::from(bit)].push(t);
                }
            }
            for members in &mut next {
                members.sort_unstable();
            }
            groups = next;
        }
        values
            .into_iter()
            .enumerate()
            .map(|(t, v)| v.ok_or_else(|| Error::Invariant(format!("instance {t} never settled"))))
            .collect()
    }

    fn table_constant(&self, depth: usize, ones: usize) -> Option<bool> {
        self.table.constant_at(depth, ones)
    }

    fn check_matrix(&self, m: &MeasurementMatrix) -> Result<()> {
        if m.n() != self.f.n() || m.block_len() != self.block_len {
            return Err(Error::Dimension(format!(
                "matrix is {}x{}, protocol expects {}x{}",
                m.n(),
                m.block_len(),
                self.f.n(),
                self.block_len
            )));
        }
        Ok(())
    }

    /// Runs the strategy on `m`, then lets every node decode the transcript
    /// on its own. Any node disagreeing with the true function block is an
    /// invariant violation.
    pub fn run(&self, m: &MeasurementMatrix) -> Result<RunOutcome> {
        self.check_matrix(m)?;
        let mut transcript = Transcript::default();
        let sender_view = self.walk(|slot| {
            let row = m.row(slot.node);
            let block: Vec<bool> = slot.members.iter().map(|&t| row[t]).collect();
            let bits = slot.code.encode(&block)?;
            transcript.push(Event {
                node: slot.node,
                depth: slot.depth,
                group_ones: slot.group_ones,
                bits,
            });
            Ok(block)
        })?;
        let truth = m.function_block(&self.f);
        if sender_view != truth {
            return Err(Error::Invariant("schedule settled on a wrong function block".into()));
        }
        let outputs = (1..=self.f.n())
            .map(|node| self.decode_as_node(&transcript, node, m.row(node)))
            .collect::<Result<Vec<_>>>()?;
        if let Some(i) = outputs.iter().position(|o| *o != truth) {
            return Err(Error::Invariant(format!("node {} decoded a wrong function block", i + 1)));
        }
        Ok(RunOutcome {
            transcript,
            outputs,
            truth,
        })
    }

    /// Function block as seen by `node`: every other node's codeword is
    /// decoded from the transcript, its own bits come from `own_row`.
    pub fn decode_as_node(&self, transcript: &Transcript, node: usize, own_row: &[bool]) -> Result<Vec<bool>> {
        self.decode_events(transcript, Some((node, own_row)))
    }

    /// Function block as seen by a listener holding no measurements.
    pub fn decode_transcript(&self, transcript: &Transcript) -> Result<Vec<bool>> {
        self.decode_events(transcript, None)
    }

    fn decode_events(&self, transcript: &Transcript, own: Option<(usize, &[bool])>) -> Result<Vec<bool>> {
        let mut events = transcript.events.iter();
        let block = self.walk(|slot| {
            let event = events
                .next()
                .ok_or_else(|| Error::Decode("transcript ended before the schedule".into()))?;
            if (event.node, event.depth, event.group_ones) != (slot.node, slot.depth, slot.group_ones) {
                return Err(Error::Decode(format!(
                    "event from node {} at ({}, {}) where the schedule expects node {} at ({}, {})",
                    event.node, event.depth, event.group_ones, slot.node, slot.depth, slot.group_ones
                )));
            }
            match own {
                Some((node, row)) if node == slot.node => Ok(slot.members.iter().map(|&t| row[t]).collect()),
                _ => {
                    let (block, used) = slot.code.decode_prefix(&event.bits)?;
                    if used != event.bits.len() {
                        return Err(Error::Decode(format!(
                            "codeword of node {} has {} trailing bits",
                            slot.node,
                            event.bits.len() - used
                        )));
                    }
                    Ok(block)
                }
            }
        })?;
        if events.next().is_some() {
            return Err(Error::Decode("transcript has events past the end of the schedule".into()));
        }
        Ok(block)
    }

    /// Splits the raw channel bits back into events using only public
    /// parameters and the bits heard so far.
    pub fn replay_stream(&self, stream: &BitString) -> Result<(Transcript, Vec<bool>)> {
        let mut reader = stream.reader();
        let mut transcript = Transcript::default();
        let block = self.walk(|slot| {
            let start = reader.position();
            let block = slot.code.decode(&mut reader)?;
            let bits = (start..reader.position())
                .map(|i| stream.get(i).expect("bit was just read"))
                .collect();
            transcript.push(Event {
                node: slot.node,
                depth: slot.depth,
                group_ones: slot.group_ones,
                bits,
            });
            Ok(block)
        })?;
        if reader.remaining() != 0 {
            return Err(Error::Decode(format!("{} bits left after the schedule", reader.remaining())));
        }
        Ok((transcript, block))
    }

    /// Decodes a serialized run and checks every recorded output against
    /// what a listener recovers from the events.
    pub fn verify_record(&self, record: &TranscriptRecord) -> Result<Vec<bool>> {
        if record.n != self.f.n() || record.block_len != self.block_len {
            return Err(Error::Dimension(format!(
                "record is for n = {}, N = {}",
                record.n, record.block_len
            )));
        }
        let block = self.decode_transcript(&record.transcript()?)?;
        let expected = block_to_hex(&block);
        if let Some(i) = record.outputs.iter().position(|o| *o != expected) {
            return Err(Error::Invariant(format!("recorded output of node {} does not match", i + 1)));
        }
        Ok(block)
    }

    /// Runs the strategy over every input (or a seeded sample) and reports
    /// failures and the worst-case bit count.
    pub fn sweep(&self, mode: SearchMode, budget: u64) -> Result<SweepReport> {
        let n = self.f.n();
        match mode {
            SearchMode::Exhaustive => {
                let cells = n * self.block_len;
                let required = if cells >= 128 { u128::MAX } else { 1u128 << cells };
                if required > u128::from(budget) || cells >= 64 {
                    return Err(Error::BudgetExceeded {
                        required,
                        budget,
                        hint: "use sampled mode",
                    });
                }
                let acc = (0..required as u64)
                    .into_par_iter()
                    .map(|index| {
                        let m = MeasurementMatrix::from_index(n, self.block_len, index);
                        Tally::single(index, self.run(&m))
                    })
                    .reduce(Tally::default, Tally::merge);
                Ok(acc.into_report(|index| MeasurementMatrix::from_index(n, self.block_len, index)))
            }
            SearchMode::Sampled { trials, seed } => {
                let sample = |trial: u64| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(trial);
                    MeasurementMatrix::random(n, self.block_len, &mut rng)
                };
                let acc = (0..trials)
                    .into_par_iter()
                    .map(|trial| {
                        let m = sample(trial);
                        let mut tally = Tally::single(trial, self.run(&m));
                        tally.argmax_matrix = Some(m);
                        tally
                    })
                    .reduce(Tally::default, Tally::merge);
                Ok(acc.into_report(sample))
            }
        }
    }
}

/// How [`Protocol::sweep`] chooses inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// All `2^(nN)` matrices.
    Exhaustive,
    /// `trials` matrices drawn from a ChaCha stream per trial.
    Sampled { trials: u64, seed: u64 },
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub inputs: u64,
    pub failures: u64,
    /// Lowest-index failing input and its error.
    pub first_failure: Option<(MeasurementMatrix, Error)>,
    pub max_bits: usize,
    /// Lexicographically smallest input reaching `max_bits`.
    pub argmax: Option<MeasurementMatrix>,
    pub max_events: usize,
}

#[derive(Default)]
struct Tally {
    inputs: u64,
    failures: u64,
    first_failure: Option<(u64, Error)>,
    max_bits: usize,
    argmax: Option<u64>,
    /// Sampled inputs are not ordered by index, so ties compare matrices.
    argmax_matrix: Option<MeasurementMatrix>,
    max_events: usize,
}

impl Tally {
    fn single(index: u64, outcome: Result<RunOutcome>) -> Self {
        match outcome {
            Ok(run) => Self {
                inputs: 1,
                max_bits: run.transcript.total_bits,
                argmax: Some(index),
                max_events: run.transcript.events.len(),
                ..Self::default()
            },
            Err(e) => Self {
                inputs: 1,
                failures: 1,
                first_failure: Some((index, e)),
                ..Self::default()
            },
        }
    }

    fn merge(self, other: Self) -> Self {
        let first_failure = match (self.first_failure, other.first_failure) {
            (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
            (a, b) => a.or(b),
        };
        let take_other = match (self.argmax, other.argmax) {
            (None, _) => true,
            (_, None) => false,
            (Some(a), Some(b)) => match other.max_bits.cmp(&self.max_bits) {
                std::cmp::Ordering::Greater => true,
                std::cmp::Ordering::Less => false,
                std::cmp::Ordering::Equal => match (&self.argmax_matrix, &other.argmax_matrix) {
                    (Some(x), Some(y)) => y < x,
                    _ => b < a,
                },
            },
        };
        let (max_bits, argmax, argmax_matrix) = if take_other {
            (other.max_bits, other.argmax, other.argmax_matrix)
        } else {
            (self.max_bits, self.argmax, self.argmax_matrix)
        };
        Self {
            inputs: self.inputs + other.inputs,
            failures: self.failures + other.failures,
            first_failure,
            max_bits,
            argmax,
            argmax_matrix,
            max_events: self.max_events.max(other.max_events),
        }
    }

    fn into_report(self, matrix: impl Fn(u64) -> MeasurementMatrix) -> SweepReport {
        SweepReport {
            inputs: self.inputs,
            failures: self.failures,
            first_failure: self.first_failure.map(|(i, e)| (matrix(i), e)),
            max_bits: self.max_bits,
            argmax: self.argmax_matrix.or_else(|| self.argmax.map(&matrix)),
            max_events: self.max_events,
        }
    }
}

/// Worst case over the input space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorstCase {
    pub max_bits: usize,
    pub argmax: MeasurementMatrix,
}

/// Worst-case total bits of the strategy at block length `block_len`.
/// Fails if any input is decoded wrongly.
pub fn worst_case_bits(f: &SymmetricFunction, block_len: usize, mode: SearchMode, budget: u64) -> Result<WorstCase> {
    let report = Protocol::new(f, block_len)?.sweep(mode, budget)?;
    if let Some((m, e)) = report.first_failure {
        return Err(Error::Invariant(format!("input {m:?} failed: {e}")));
    }
    Ok(WorstCase {
        max_bits: report.max_bits,
        argmax: report.argmax.ok_or_else(|| Error::domain("empty sample"))?,
    })
}

/// `(N, worst-case bits / N)` for each block length.
pub fn rate_estimate<F: Real>(
    f: &SymmetricFunction,
    block_lens: &[usize],
    mode: SearchMode,
    budget: u64,
) -> Result<Vec<(usize, F)>> {
    block_lens
        .iter()
        .map(|&len| {
            let worst = worst_case_bits(f, len, mode, budget)?;
            Ok((len, F::from_usize_lossy(worst.max_bits) / F::from_usize_lossy(len)))
        })
        .collect()
}

/// `N log2 A(f)`, the real-valued total the rounding slack is measured from.
pub fn ideal_total_bits<F: Real>(f: &SymmetricFunction, block_len: usize) -> F {
    let size: BigUint = crate::complexity::codebook_size(f);
    F::from_usize_lossy(block_len) * F::log2_big(&size)
}
