// SPDX-License-Identifier: Apache-2.0

//! Mixed-polarity generalized Toffoli gates.
//!
//! Text syntax: `T(` controls `:` target `)`, where controls is a
//! comma-separated list of line names, each optionally suffixed with `'` for
//! a negative (0-valued) control. `T(:a)` is a NOT on line `a`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pattern::{check_width, line_name, parse_line_name, BitPattern};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    /// Satisfied by 1.
    Positive,
    /// Satisfied by 0; written with a prime.
    Negative,
}

/// A gate flipping `target` iff every control is satisfied.
///
/// Controls live in two disjoint line masks, neither containing the target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ToffoliGate {
    width: u8,
    target: u8,
    positive: u32,
    negative: u32,
}

impl ToffoliGate {
    pub fn new(width: usize, target: usize, controls: &[(usize, Polarity)]) -> Result<Self> {
        let mut positive = 0u32;
        let mut negative = 0u32;
        for &(line, polarity) in controls {
            if line >= width {
                return Err(Error::InvalidGate(format!(
                    "control line {line} out of range for {width} lines"
                )));
            }
            let bit = 1u32 << line;
            if (positive | negative) & bit != 0 {
                return Err(Error::InvalidGate(format!(
                    "control line {} listed twice",
                    display_line(line)
                )));
            }
            match polarity {
                Polarity::Positive => positive |= bit,
                Polarity::Negative => negative |= bit,
            }
        }
        Self::from_masks(width, target, positive, negative)
    }

    pub fn from_masks(width: usize, target: usize, positive: u32, negative: u32) -> Result<Self> {
        check_width(width)?;
        if target >= width {
            return Err(Error::InvalidGate(format!(
                "target line {target} out of range for {width} lines"
            )));
        }
        let lines = (1u64 << width) - 1;
        if u64::from(positive | negative) & !lines != 0 {
            return Err(Error::InvalidGate(format!(
                "control mask exceeds {width} lines"
            )));
        }
        if positive & negative != 0 {
            return Err(Error::InvalidGate(
                "a line cannot be both a positive and a negative control".into(),
            ));
        }
        if (positive | negative) & (1 << target) != 0 {
            return Err(Error::InvalidGate(format!(
                "target {} is also a control",
                display_line(target)
            )));
        }
        Ok(Self {
            width: width as u8,
            target: target as u8,
            positive,
            negative,
        })
    }

    /// Unconditional NOT on `target`.
    pub fn not(width: usize, target: usize) -> Result<Self> {
        Self::from_masks(width, target, 0, 0)
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width as usize
    }

    #[inline]
    pub fn target(&self) -> usize {
        self.target as usize
    }

    #[inline]
    pub fn positive_mask(&self) -> u32 {
        self.positive
    }

    #[inline]
    pub fn negative_mask(&self) -> u32 {
        self.negative
    }

    /// Mask of all control lines regardless of polarity.
    #[inline]
    pub fn control_mask(&self) -> u32 {
        self.positive | self.negative
    }

    #[inline]
    pub fn control_count(&self) -> usize {
        self.control_mask().count_ones() as usize
    }

    /// Controls in ascending line order.
    pub fn controls(&self) -> impl Iterator<Item = (usize, Polarity)> + '_ {
        (0..self.width()).filter_map(move |line| {
            let bit = 1u32 << line;
            if self.positive & bit != 0 {
                Some((line, Polarity::Positive))
            } else if self.negative & bit != 0 {
                Some((line, Polarity::Negative))
            } else {
                None
            }
        })
    }

    /// The same gate with `line` removed from its controls.
    pub fn without_control(&self, line: usize) -> Self {
        let bit = !(1u32 << line);
        Self {
            positive: self.positive & bit,
            negative: self.negative & bit,
            ..*self
        }
    }

    /// Whether the controls are satisfied by `value`.
    #[inline]
    pub fn fires(&self, value: u32) -> bool {
        value & self.positive == self.positive && value & self.negative == 0
    }

    #[inline]
    pub fn apply_raw(&self, value: u32) -> u32 {
        if self.fires(value) {
            value ^ (1 << self.target)
        } else {
            value
        }
    }

    pub fn apply(&self, pattern: BitPattern) -> Result<BitPattern> {
        if pattern.width() != self.width() {
            return Err(Error::WidthMismatch {
                left: self.width(),
                right: pattern.width(),
            });
        }
        Ok(BitPattern::from_raw(
            self.apply_raw(pattern.value()),
            self.width(),
        ))
    }

    /// Number of patterns the gate changes: `2^(n - k)` for `k` controls.
    pub fn moved_points(&self) -> u64 {
        1u64 << (self.width() - self.control_count())
    }

    /// Parses one gate, e.g. `T(b',c:a)`, for a circuit of `width` lines.
    pub fn parse(text: &str, width: usize) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidGate(format!("{msg} in `{}`", text.trim()));
        let body = text
            .trim()
            .strip_prefix('T')
            .map(str::trim_start)
            .and_then(|s| s.strip_prefix('('))
            .and_then(|s| s.trim_end().strip_suffix(')'))
            .ok_or_else(|| bad("expected `T(controls:target)`"))?;
        let (controls, target) = body.split_once(':').ok_or_else(|| bad("missing `:`"))?;
        let target = target.trim();
        let target = parse_line_name(target, width)
            .ok_or_else(|| bad(&format!("unknown target line `{target}`")))?;

        let mut parsed = Vec::new();
        let controls = controls.trim();
        if !controls.is_empty() {
            for item in controls.split(',') {
                let item = item.trim();
                let (name, polarity) = match item
                    .strip_suffix('\'')
                    .or_else(|| item.strip_suffix('\u{2032}'))
                {
                    Some(name) => (name.trim_end(), Polarity::Negative),
                    None => (item, Polarity::Positive),
                };
                let line = parse_line_name(name, width)
                    .ok_or_else(|| bad(&format!("unknown control line `{item}`")))?;
                parsed.push((line, polarity));
            }
        }
        Self::new(width, target, &parsed)
    }
}

fn display_line(line: usize) -> String {
    if line < 26 {
        line_name(line)
    } else {
        format!("x{}", line + 1)
    }
}

impl fmt::Display for ToffoliGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("T(")?;
        for (i, (line, polarity)) in self.controls().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(&display_line(line))?;
            if polarity == Polarity::Negative {
                f.write_str("'")?;
            }
        }
        write!(f, ":{})", display_line(self.target()))
    }
}
