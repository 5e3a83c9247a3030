//! Zero-error block computation of symmetric Boolean functions in a
//! collocated broadcast network.
//!
//! Every node of the network holds a block of `N` Boolean measurements and
//! every node must learn the block of function values. The crate provides:
//!
//! * [`symfunc`]: symmetric functions as level sets of 1-counts, with the
//!   residual algebra that drives the transmission schedule.
//! * [`complexity`]: the integer codebook-size recursion, the closed forms
//!   for thresholds and deltas, interval bounds and asymptotic diagnostics.
//! * [`prefixcode`]: exact-integer codeword lengths, Kraft checks and
//!   canonical prefix codes indexed by combinatorial ranking.
//! * [`protocol`]: a deterministic simulator for the node-by-node broadcast
//!   strategy, with transcript replay and worst-case search.
//! * [`foolingset`]: fooling-set witnesses and their brute-force verification.
//!
//! Real-valued reporting (bits per instance) is generic over [`Real`];
//! `f64` aliases are exported at the crate root.

pub mod binom;
pub mod bits;
pub mod complexity;
pub mod error;
pub mod foolingset;
pub mod prefixcode;
pub mod protocol;
pub mod rank;
pub mod scalar;
pub mod symfunc;

pub use complexity::{CodebookSizeTable, Diagnostics, IntervalBounds, RateResult};
pub use error::{Error, Result};
pub use foolingset::{ColumnFamily, FoolingVerdict};
pub use prefixcode::{CanonicalCode, LengthProfile};
pub use protocol::{MeasurementMatrix, Protocol, SearchMode, Transcript, TranscriptRecord};
pub use scalar::Real;
pub use symfunc::{Shape, SymmetricFunction};

/// Rate triple reported in double precision.
pub type RateResult64 = RateResult<f64>;
/// Rate triple reported in single precision.
pub type RateResult32 = RateResult<f32>;
/// Interval bounds in double precision.
pub type IntervalBounds64 = IntervalBounds<f64>;
/// Interval diagnostics in double precision.
pub type Diagnostics64 = Diagnostics<f64>;

/// Default cap on the number of nodes a function may have.
pub const DEFAULT_MAX_NODES: usize = 1024;

/// Default cap on enumerated state spaces (inputs or fooling pairs).
pub const DEFAULT_BUDGET: u64 = 1 << 24;
