// SPDX-License-Identifier: Apache-2.0

//! Gate sequences, their simulation, and exhaustive equivalence checking.
//!
//! A circuit is an ordered gate list. It can be applied in `Listed` order
//! (first gate first) or `Reversed` order (last gate first). Synthesis emits
//! gates that sort the output column, so its list realizes the target
//! function in `Reversed` order and the inverse function in `Listed` order.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gate::ToffoliGate;
use crate::pattern::BitPattern;
use crate::spec::{content_lines, keyword_value, parse_width, ReversibleSpec};

/// Direction in which a gate list is applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Order {
    Listed,
    Reversed,
}

impl Order {
    pub fn flip(self) -> Self {
        match self {
            Order::Listed => Order::Reversed,
            Order::Reversed => Order::Listed,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Order::Listed => "listed",
            Order::Reversed => "reversed",
        })
    }
}

impl FromStr for Order {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "listed" => Ok(Order::Listed),
            "reversed" => Ok(Order::Reversed),
            other => Err(Error::parse(0, format!("unknown order `{other}`"))),
        }
    }
}

/// First row on which a circuit disagrees with a specification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub row: u32,
    pub expected: u32,
    pub actual: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Circuit {
    width: usize,
    gates: Vec<ToffoliGate>,
}

impl Circuit {
    pub fn new(width: usize, gates: Vec<ToffoliGate>) -> Result<Self> {
        crate::pattern::check_width(width)?;
        if let Some(g) = gates.iter().find(|g| g.width() != width) {
            return Err(Error::WidthMismatch {
                left: width,
                right: g.width(),
            });
        }
        Ok(Self { width, gates })
    }

    pub fn empty(width: usize) -> Result<Self> {
        Self::new(width, Vec::new())
    }

    /// Callers guarantee all gates have `width` lines.
    pub(crate) fn from_raw(width: usize, gates: Vec<ToffoliGate>) -> Self {
        debug_assert!(gates.iter().all(|g| g.width() == width));
        Self { width, gates }
    }

    /// Parses a run of gates such as `T(a:b) T(b,c:a)T(a:b)`.
    pub fn parse_gates(text: &str, width: usize) -> Result<Self> {
        let mut gates = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let end = rest
                .find(')')
                .ok_or_else(|| Error::InvalidGate(format!("unterminated gate `{rest}`")))?;
            gates.push(ToffoliGate::parse(&rest[..=end], width)?);
            rest = rest[end + 1..].trim_start();
        }
        Self::new(width, gates)
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn gates(&self) -> &[ToffoliGate] {
        &self.gates
    }

    pub fn into_gates(self) -> Vec<ToffoliGate> {
        self.gates
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.gates.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Total number of controls over all gates.
    pub fn control_count(&self) -> usize {
        self.gates.iter().map(ToffoliGate::control_count).sum()
    }

    pub fn push(&mut self, gate: ToffoliGate) -> Result<()> {
        if gate.width() != self.width {
            return Err(Error::WidthMismatch {
                left: self.width,
                right: gate.width(),
            });
        }
        self.gates.push(gate);
        Ok(())
    }

    #[inline]
    pub fn apply_raw(&self, value: u32, order: Order) -> u32 {
        match order {
            Order::Listed => self.gates.iter().fold(value, |v, g| g.apply_raw(v)),
            Order::Reversed => self.gates.iter().rev().fold(value, |v, g| g.apply_raw(v)),
        }
    }

    pub fn apply(&self, pattern: BitPattern, order: Order) -> Result<BitPattern> {
        if pattern.width() != self.width {
            return Err(Error::WidthMismatch {
                left: self.width,
                right: pattern.width(),
            });
        }
        Ok(BitPattern::from_raw(
            self.apply_raw(pattern.value(), order),
            self.width,
        ))
    }

    /// The function computed on every row.
    pub fn to_spec(&self, order: Order) -> ReversibleSpec {
        let perm = (0..1u32 << self.width)
            .map(|x| self.apply_raw(x, order))
            .collect();
        ReversibleSpec::from_raw(self.width, perm)
    }

    /// Exhaustive comparison of the two circuits' functions in listed order.
    pub fn equivalent(&self, other: &Circuit) -> Result<bool> {
        if self.width != other.width {
            return Err(Error::WidthMismatch {
                left: self.width,
                right: other.width,
            });
        }
        Ok((0..1u32 << self.width)
            .all(|x| self.apply_raw(x, Order::Listed) == other.apply_raw(x, Order::Listed)))
    }

    /// `None` if the circuit computes `spec` under `order`, otherwise the
    /// lowest disagreeing row.
    pub fn first_mismatch(&self, spec: &ReversibleSpec, order: Order) -> Result<Option<Mismatch>> {
        if spec.width() != self.width {
            return Err(Error::WidthMismatch {
                left: self.width,
                right: spec.width(),
            });
        }
        Ok(spec.perm().iter().enumerate().find_map(|(row, &expected)| {
            let actual = self.apply_raw(row as u32, order);
            (actual != expected).then_some(Mismatch {
                row: row as u32,
                expected,
                actual,
            })
        }))
    }

    pub fn realizes(&self, spec: &ReversibleSpec, order: Order) -> Result<bool> {
        Ok(self.first_mismatch(spec, order)?.is_none())
    }

    /// Renders the `.circ` text form, optionally annotated with the order
    /// under which it realizes its function.
    pub fn to_circ(&self, order: Option<Order>) -> String {
        let mut out = format!("n {}\n", self.width);
        for g in &self.gates {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        if let Some(order) = order {
            out.push_str(&format!("# order: {order}\n"));
        }
        out
    }
}

impl fmt::Display for Circuit {
    /// Gates separated by single spaces; empty string for no gates.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.gates.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// A parsed `.circ` file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitFile {
    pub circuit: Circuit,
    /// Value of the last `# order: ...` annotation, if any.
    pub order: Option<Order>,
}

impl FromStr for CircuitFile {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut order = None;
        for (i, line) in text.lines().enumerate() {
            if let Some(comment) = line.split_once('#').map(|(_, c)| c.trim()) {
                if let Some(value) = comment.strip_prefix("order:") {
                    order = Some(value.parse::<Order>().map_err(|_| {
                        Error::parse(
                            i + 1,
                            format!("invalid order annotation `{}`", value.trim()),
                        )
                    })?);
                }
            }
        }

        let mut lines = content_lines(text);
        let (line_no, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing `n <int>` header"))?;
        let width = parse_width(line_no, keyword_value(line_no, header, "n")?)?;
        let mut gates = Vec::new();
        for (line_no, line) in lines {
            let gate = ToffoliGate::parse(line, width).map_err(|e| match e {
                Error::InvalidGate(msg) => Error::parse(line_no, msg),
                other => other,
            })?;
            gates.push(gate);
        }
        Ok(Self {
            circuit: Circuit::from_raw(width, gates),
            order,
        })
    }
}
