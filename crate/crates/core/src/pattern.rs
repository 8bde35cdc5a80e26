// SPDX-License-Identifier: Apache-2.0

//! Bit patterns: one row of a truth table, packed into an integer.
//!
//! Bit 0 is line `a` (least significant), bit `n - 1` the most significant
//! line. A row printed as `c b a` therefore reads as an ordinary binary
//! number with `c` first.

use std::fmt;

use crate::error::{Error, Result};
use crate::MAX_WIDTH;

/// An `n`-line assignment encoded as an unsigned integer below `2^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitPattern {
    value: u32,
    width: u8,
}

impl BitPattern {
    pub fn new(value: u32, width: usize) -> Result<Self> {
        check_width(width)?;
        if u64::from(value) >= 1u64 << width {
            return Err(Error::ValueOutOfRange {
                value: value.into(),
                width,
            });
        }
        Ok(Self {
            value,
            width: width as u8,
        })
    }

    /// Builds a pattern without range checks. Callers guarantee `value < 2^width`.
    pub(crate) fn from_raw(value: u32, width: usize) -> Self {
        debug_assert!(width <= MAX_WIDTH && u64::from(value) < 1u64 << width);
        Self {
            value,
            width: width as u8,
        }
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn width(self) -> usize {
        self.width as usize
    }

    #[inline]
    pub fn bit(self, line: usize) -> bool {
        (self.value >> line) & 1 == 1
    }

    /// The `n` patterns at Hamming distance one, ordered by flipped line.
    pub fn neighbors(self) -> Vec<BitPattern> {
        neighbors(self.value, self.width())
            .map(|v| Self::from_raw(v, self.width()))
            .collect()
    }
}

impl fmt::Display for BitPattern {
    /// Most significant line first, e.g. `101`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in (0..self.width()).rev() {
            f.write_str(if self.bit(line) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Number of positions in which `p` and `q` differ.
pub fn hamming(p: BitPattern, q: BitPattern) -> Result<u32> {
    if p.width != q.width {
        return Err(Error::WidthMismatch {
            left: p.width(),
            right: q.width(),
        });
    }
    Ok(distance(p.value, q.value))
}

#[inline]
pub(crate) fn distance(p: u32, q: u32) -> u32 {
    (p ^ q).count_ones()
}

/// Raw-value neighbours of `value`, flipping lines `0..width` in order.
pub(crate) fn neighbors(value: u32, width: usize) -> impl Iterator<Item = u32> {
    (0..width).map(move |line| value ^ (1 << line))
}

pub(crate) fn check_width(width: usize) -> Result<()> {
    if width == 0 || width > MAX_WIDTH {
        Err(Error::InvalidWidth(width))
    } else {
        Ok(())
    }
}

/// Display name of a line: `a`, `b`, `c`, ...
pub fn line_name(line: usize) -> String {
    debug_assert!(line < 26);
    char::from(b'a' + line as u8).to_string()
}

/// Parses a line name: a lowercase letter, or the alias `x1`..`xn`.
pub fn parse_line_name(name: &str, width: usize) -> Option<usize> {
    let line = match name.as_bytes() {
        [c @ b'a'..=b'z'] => usize::from(c - b'a'),
        [b'x', rest @ ..] if !rest.is_empty() => {
            let index: usize = std::str::from_utf8(rest).ok()?.parse().ok()?;
            index.checked_sub(1)?
        }
        _ => return None,
    };
    (line < width).then_some(line)
}
