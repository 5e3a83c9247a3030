//! Floating-point scalars used at the reporting boundary.
//!
//! All counting is done on [`BigUint`]; a [`Real`] only ever sees the
//! logarithm of an exact integer or a ratio of two of them.

use std::fmt::{Debug, Display};

use num_bigint::BigUint;
use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Mantissa bits kept when taking the logarithm of a large integer.
const KEEP_BITS: u64 = 64;

pub trait Real: Float + FromPrimitive + Debug + Display + Send + Sync + 'static {
    /// `log2(x)` for an exact positive integer; `-inf` for zero.
    fn log2_big(x: &BigUint) -> Self {
        let bits = x.bits();
        if bits == 0 {
            return Self::neg_infinity();
        }
        let shift = bits.saturating_sub(KEEP_BITS);
        let top = (x >> shift).to_f64().expect("64-bit value fits in f64");
        Self::from_f64(top.log2() + shift as f64).expect("finite logarithm")
    }

    /// `p / q` for exact integers, computed through logarithms so huge
    /// operands never overflow.
    fn ratio_big(p: &BigUint, q: &BigUint) -> Self {
        if p.bits() == 0 {
            return Self::zero();
        }
        let two = Self::from_f64(2.0).expect("2 is representable");
        two.powf(Self::log2_big(p) - Self::log2_big(q))
    }

    fn from_usize_lossy(x: usize) -> Self {
        Self::from_usize(x).expect("usize is representable")
    }
}

impl Real for f32 {}
impl Real for f64 {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log2_of_small_integers() {
        assert_eq!(f64::log2_big(&BigUint::from(1u32)), 0.0);
        assert_eq!(f64::log2_big(&BigUint::from(8u32)), 3.0);
        assert!((f64::log2_big(&BigUint::from(3u32)) - 3f64.log2()).abs() < 1e-15);
        assert!(f64::log2_big(&BigUint::from(0u32)).is_infinite());
    }

    #[test]
    fn log2_of_huge_integer() {
        let x = BigUint::from(3u32) << 5000u32;
        let got = f64::log2_big(&x);
        assert!((got - (5000.0 + 3f64.log2())).abs() < 1e-9);
        let got32 = f32::log2_big(&x);
        assert!((got32 - (5000.0 + 3f32.log2())).abs() < 1e-2);
    }

    #[test]
    fn ratio_of_huge_integers() {
        let p = BigUint::from(1u32) << 4000u32;
        let q = BigUint::from(1u32) << 4003u32;
        assert!((f64::ratio_big(&p, &q) - 0.125).abs() < 1e-12);
        assert_eq!(f64::ratio_big(&BigUint::from(0u32), &q), 0.0);
    }
}
