//! Most-significant-bit-first bit strings.

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// A growable bit string packed MSB-first into bytes. Trailing pad bits of
/// the last byte are always zero, so the hex form is canonical.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitString {
    bytes: Vec<u8>,
    len: usize,
}

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(8) {
            self.bytes.push(0);
        }
        if bit {
            let last = self.bytes.len() - 1;
            self.bytes[last] |= 0x80 >> (self.len % 8);
        }
        self.len += 1;
    }

    pub fn get(&self, i: usize) -> Option<bool> {
        (i < self.len).then(|| self.bytes[i / 8] & (0x80 >> (i % 8)) != 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.bytes[i / 8] & (0x80 >> (i % 8)) != 0)
    }

    pub fn extend_from(&mut self, other: &BitString) {
        for bit in other.iter() {
            self.push(bit);
        }
    }

    /// Appends `value` as exactly `width` bits, most significant first.
    pub fn push_uint(&mut self, value: &BigUint, width: u64) {
        debug_assert!(value.bits() <= width);
        for i in (0..width).rev() {
            self.push(value.bit(i));
        }
    }

    /// Appends the low `width` bits of `value`, most significant first.
    pub fn push_u64(&mut self, value: u64, width: u64) {
        debug_assert!(width <= 64 && (width == 64 || value >> width == 0));
        for i in (0..width).rev() {
            self.push(value >> i & 1 == 1);
        }
    }

    pub fn to_hex(&self) -> String {
        self.bytes.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Parses the hex form produced by [`BitString::to_hex`] with an explicit
    /// bit length. Non-zero padding is rejected so the round trip is exact.
    pub fn from_hex(hex: &str, len: usize) -> Result<Self> {
        if !hex.len().is_multiple_of(2) {
            return Err(Error::parse(0, "hex string has odd length"));
        }
        let bytes = (0..hex.len())
            .step_by(2)
            .map(|i| {
                u8::from_str_radix(&hex[i..i + 2], 16)
                    .map_err(|_| Error::parse(i, format!("invalid hex byte {:?}", &hex[i..i + 2])))
            })
            .collect::<Result<Vec<u8>>>()?;
        if bytes.len() != len.div_ceil(8) {
            return Err(Error::parse(
                0,
                format!("{} hex bytes cannot hold exactly {len} bits", bytes.len()),
            ));
        }
        if !len.is_multiple_of(8) {
            let pad_mask = 0xffu8 >> (len % 8);
            if bytes[bytes.len() - 1] & pad_mask != 0 {
                return Err(Error::parse(hex.len() - 2, "non-zero padding bits"));
            }
        }
        Ok(Self { bytes, len })
    }

    pub fn reader(&self) -> BitReader<'_> {
        BitReader { bits: self, pos: 0 }
    }
}

impl FromIterator<bool> for BitString {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        let mut out = BitString::new();
        for bit in iter {
            out.push(bit);
        }
        out
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString(\"")?;
        for bit in self.iter() {
            f.write_str(if bit { "1" } else { "0" })?;
        }
        write!(f, "\")")
    }
}

/// Sequential cursor over a [`BitString`].
#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    bits: &'a BitString,
    pos: usize,
}

impl BitReader<'_> {
    pub fn read_bit(&mut self) -> Option<bool> {
        let bit = self.bits.get(self.pos)?;
        self.pos += 1;
        Some(bit)
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn remaining(&self) -> usize {
        self.bits.len() - self.pos
    }
}

/// Renders a Boolean block as MSB-first hex.
pub fn block_to_hex(block: &[bool]) -> String {
    block.iter().copied().collect::<BitString>().to_hex()
}
