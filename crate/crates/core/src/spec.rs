// SPDX-License-Identifier: Apache-2.0

//! Reversible specifications as permutations of `0..2^n`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::pattern::{check_width, distance, BitPattern};

/// A totally specified reversible function on `n` lines.
///
/// `perm[i]` is the output pattern for input pattern `i`. Bijectivity is
/// checked on construction and assumed everywhere else.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReversibleSpec {
    width: usize,
    perm: Vec<u32>,
}

impl ReversibleSpec {
    pub fn new(width: usize, perm: Vec<u32>) -> Result<Self> {
        check_width(width)?;
        let rows = 1usize << width;
        if perm.len() != rows {
            return Err(Error::WrongLength {
                width,
                expected: rows,
                found: perm.len(),
            });
        }
        let mut seen = vec![false; rows];
        for &value in &perm {
            let slot = seen.get_mut(value as usize).ok_or(Error::ValueOutOfRange {
                value: value.into(),
                width,
            })?;
            if *slot {
                return Err(Error::DuplicateValue { value });
            }
            *slot = true;
        }
        Ok(Self { width, perm })
    }

    /// Infers the width from the row count, which must be a power of two.
    pub fn from_perm(perm: Vec<u32>) -> Result<Self> {
        let len = perm.len();
        if !len.is_power_of_two() || len < 2 {
            return Err(Error::WrongLength {
                width: 0,
                expected: len.next_power_of_two().max(2),
                found: len,
            });
        }
        Self::new(len.trailing_zeros() as usize, perm)
    }

    pub fn identity(width: usize) -> Result<Self> {
        check_width(width)?;
        Ok(Self {
            width,
            perm: (0..1u32 << width).collect(),
        })
    }

    /// Callers guarantee `perm` is a bijection of the right length.
    pub(crate) fn from_raw(width: usize, perm: Vec<u32>) -> Self {
        debug_assert!(Self::new(width, perm.clone()).is_ok());
        Self { width, perm }
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.perm.len()
    }

    #[inline]
    pub fn perm(&self) -> &[u32] {
        &self.perm
    }

    pub fn into_perm(self) -> Vec<u32> {
        self.perm
    }

    /// `f(input)`.
    pub fn apply(&self, input: BitPattern) -> Result<BitPattern> {
        if input.width() != self.width {
            return Err(Error::WidthMismatch {
                left: input.width(),
                right: self.width,
            });
        }
        Ok(BitPattern::from_raw(
            self.perm[input.value() as usize],
            self.width,
        ))
    }

    /// Sum of the Hamming distances between each input and its output.
    pub fn complexity(&self) -> u64 {
        self.perm
            .iter()
            .enumerate()
            .map(|(i, &v)| u64::from(distance(i as u32, v)))
            .sum()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.perm.len()];
        for (i, &v) in self.perm.iter().enumerate() {
            inv[v as usize] = i as u32;
        }
        Self {
            width: self.width,
            perm: inv,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    /// Number of rows whose output differs from the input.
    pub fn misplaced(&self) -> usize {
        self.perm
            .iter()
            .enumerate()
            .filter(|&(i, &v)| i as u32 != v)
            .count()
    }

    /// Non-trivial cycles, each starting at its smallest element, ordered by
    /// that element. A cycle `[x, f(x), f(f(x)), ...]`.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut visited = vec![false; self.perm.len()];
        let mut cycles = Vec::new();
        for start in 0..self.perm.len() {
            if visited[start] || self.perm[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !visited[x] {
                visited[x] = true;
                cycle.push(x as u32);
                x = self.perm[x] as usize;
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Renders the `.rspec` text form.
    pub fn to_rspec(&self) -> String {
        format!("n {}\nperm {}\n", self.width, join(&self.perm))
    }
}

impl fmt::Display for ReversibleSpec {
    /// `{1,0,3,2}` style.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.perm.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

fn join(values: &[u32]) -> String {
    values
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Splits text into `(line number, content)` pairs, dropping blank lines and
/// `#` comments.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

/// Parses `<keyword> <value>` header lines.
pub(crate) fn keyword_value<'a>(line_no: usize, line: &'a str, keyword: &str) -> Result<&'a str> {
    let mut parts = line.splitn(2, char::is_whitespace);
    if parts.next() != Some(keyword) {
        return Err(Error::parse(line_no, format!("expected `{keyword} ...`")));
    }
    Ok(parts.next().unwrap_or("").trim())
}

pub(crate) fn parse_width(line_no: usize, text: &str) -> Result<usize> {
    let width: usize = text
        .parse()
        .map_err(|_| Error::parse(line_no, format!("invalid line count `{text}`")))?;
    check_width(width)?;
    Ok(width)
}

impl FromStr for ReversibleSpec {
    type Err = Error;

    /// Parses the `.rspec` format: `n <int>` then `perm <2^n ints>`.
    fn from_str(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (line_no, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing `n <int>` header"))?;
        let width = parse_width(line_no, keyword_value(line_no, header, "n")?)?;

        let (line_no, body) = lines
            .next()
            .ok_or_else(|| Error::parse(line_no + 1, "missing `perm ...` line"))?;
        let perm = keyword_value(line_no, body, "perm")?
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u32>()
                    .map_err(|_| Error::parse(line_no, format!("invalid value `{tok}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some((extra, _)) = lines.next() {
            return Err(Error::parse(extra, "unexpected content after `perm` line"));
        }
        Self::new(width, perm)
    }
}
