// SPDX-License-Identifier: Apache-2.0

//! Embedding irreversible truth tables into reversible specifications.
//!
//! With `m` the largest number of rows sharing one output pattern, at least
//! `p = ceil(log2 m)` garbage outputs are needed. The construction uses
//! `n' = max(n, p + k)` lines:
//!
//! - lines `n..n'` are new inputs held at 0 (none when `p + k <= n`);
//! - the `k` functional outputs sit on the top lines `n'-k..n'`;
//! - the remaining low lines pass the original inputs through.
//!
//! A single-output function with an added line computes `f XOR x_{n+1}`,
//! which fixes every row. Otherwise rows with a nonzero constant input are
//! filled in ascending order with the smallest unused output pattern.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::pattern::check_width;
use crate::spec::{content_lines, keyword_value, parse_width, ReversibleSpec};
use crate::MAX_WIDTH;

/// A totally specified `n`-input, `k`-output Boolean function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreversibleTable {
    inputs: usize,
    outputs: usize,
    rows: Vec<u32>,
}

impl IrreversibleTable {
    pub fn new(inputs: usize, outputs: usize, rows: Vec<u32>) -> Result<Self> {
        check_width(inputs)?;
        check_width(outputs)?;
        let expected = 1usize << inputs;
        if rows.len() != expected {
            return Err(Error::WrongLength {
                width: inputs,
                expected,
                found: rows.len(),
            });
        }
        if let Some(&value) = rows.iter().find(|&&v| u64::from(v) >= 1u64 << outputs) {
            return Err(Error::ValueOutOfRange {
                value: value.into(),
                width: outputs,
            });
        }
        Ok(Self {
            inputs,
            outputs,
            rows,
        })
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    /// `rows()[x]` is the output pattern for input `x`.
    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// Renders the `.itable` text form.
    pub fn to_itable(&self) -> String {
        let mut out = format!("inputs {}\noutputs {}\n", self.inputs, self.outputs);
        for &row in &self.rows {
            out.push_str(&format!("{:0width$b}\n", row, width = self.outputs));
        }
        out
    }
}

impl FromStr for IrreversibleTable {
    type Err = Error;

    /// `inputs <n>`, `outputs <k>`, then `2^n` rows of `k` bits, most
    /// significant output first.
    fn from_str(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (line_no, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing `inputs <n>` header"))?;
        let inputs = parse_width(line_no, keyword_value(line_no, header, "inputs")?)?;
        let (line_no, header) = lines
            .next()
            .ok_or_else(|| Error::parse(line_no + 1, "missing `outputs <k>` header"))?;
        let outputs = parse_width(line_no, keyword_value(line_no, header, "outputs")?)?;

        let mut rows = Vec::with_capacity(1 << inputs);
        for (line_no, line) in lines {
            let bits: String = line.split_whitespace().collect();
            if bits.len() != outputs || !bits.bytes().all(|b| b == b'0' || b == b'1') {
                return Err(Error::parse(
                    line_no,
                    format!("expected {outputs} output bits, found `{line}`"),
                ));
            }
            rows.push(u32::from_str_radix(&bits, 2).expect("validated binary digits"));
        }
        Self::new(inputs, outputs, rows)
    }
}

/// A reversible specification with the bookkeeping of how it embeds a table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingResult {
    pub spec: ReversibleSpec,
    /// Largest output-pattern multiplicity.
    pub m: u32,
    /// Garbage bound `ceil(log2 m)`.
    pub p: u32,
    /// Added input lines, held at 0.
    pub constant_lines: Vec<usize>,
    /// Lines carrying the functional outputs, least significant output bit first.
    pub output_lines: Vec<usize>,
    /// Lines whose output equals the same original input on constant-0 rows.
    pub passthrough_lines: Vec<usize>,
    /// Whether garbage bits had to be reassigned to keep the map injective.
    pub repaired: bool,
}

impl EmbeddingResult {
    /// Functional outputs read from the spec for original input `x`, with
    /// every constant line at 0.
    pub fn decode(&self, x: u32) -> u32 {
        let out = self.spec.perm()[x as usize];
        self.output_lines
            .iter()
            .enumerate()
            .fold(0, |acc, (bit, &line)| acc | (((out >> line) & 1) << bit))
    }
}

pub fn output_multiplicity(table: &IrreversibleTable) -> u32 {
    let mut counts = vec![0u32; 1 << table.outputs];
    for &row in &table.rows {
        counts[row as usize] += 1;
    }
    counts.into_iter().max().unwrap_or(0)
}

/// `ceil(log2 m)`.
pub fn garbage_bound(m: u32) -> Result<u32> {
    match m {
        0 => Err(Error::ZeroMultiplicity),
        1 => Ok(0),
        m => Ok(u32::BITS - (m - 1).leading_zeros()),
    }
}

pub fn embed(table: &IrreversibleTable) -> Result<EmbeddingResult> {
    let n = table.inputs;
    let k = table.outputs;
    let m = output_multiplicity(table);
    let p = garbage_bound(m)?;
    let width = n.max(p as usize + k);
    if width > MAX_WIDTH {
        return Err(Error::InvalidWidth(width));
    }
    let shift = width - k;
    let low = (1u32 << shift) - 1;
    let rows = 1usize << width;

    let mut assigned: Vec<Option<u32>> = vec![None; rows];
    let mut used = vec![false; rows];
    for (x, &f) in table.rows.iter().enumerate() {
        assigned[x] = Some((f << shift) | (x as u32 & low));
    }

    let mut repaired = false;
    let constant_rows = &assigned[..1 << n];
    if !all_distinct(constant_rows, rows) {
        repaired = true;
        reassign_garbage(table, shift, &mut assigned)?;
    }

    // Single output with an added line: the output line is x_{n+1} itself.
    if k == 1 && width > n && !repaired {
        debug_assert_eq!(shift, n);
        for (y, slot) in assigned.iter_mut().enumerate().skip(1 << n) {
            let x = y & ((1 << n) - 1);
            let carried = (y >> n) as u32 & 1;
            *slot = Some(((table.rows[x] ^ carried) << shift) | (y as u32 & low));
        }
    }

    for out in assigned.iter().flatten() {
        used[*out as usize] = true;
    }
    let mut next_free = 0usize;
    let perm = assigned
        .into_iter()
        .map(|slot| match slot {
            Some(v) => v,
            None => {
                while used[next_free] {
                    next_free += 1;
                }
                used[next_free] = true;
                next_free as u32
            }
        })
        .collect();
    let spec = ReversibleSpec::new(width, perm)
        .map_err(|e| Error::Embedding(format!("completion produced an invalid spec: {e}")))?;

    let passthrough_lines = (0..shift.min(n))
        .filter(|&line| {
            (0..1u32 << n).all(|x| (spec.perm()[x as usize] >> line) & 1 == (x >> line) & 1)
        })
        .collect();

    Ok(EmbeddingResult {
        spec,
        m,
        p,
        constant_lines: (n..width).collect(),
        output_lines: (shift..width).collect(),
        passthrough_lines,
        repaired,
    })
}

fn all_distinct(values: &[Option<u32>], space: usize) -> bool {
    let mut seen = vec![false; space];
    values
        .iter()
        .flatten()
        .all(|&v| !std::mem::replace(&mut seen[v as usize], true))
}

/// Gives each constant-0 row the smallest garbage value (low `shift` lines)
/// not yet paired with its functional output.
fn reassign_garbage(
    table: &IrreversibleTable,
    shift: usize,
    assigned: &mut [Option<u32>],
) -> Result<()> {
    let mut used = vec![false; assigned.len()];
    for (x, &f) in table.rows.iter().enumerate() {
        let base = f << shift;
        let garbage = (0..1u32 << shift)
            .find(|&g| !used[(base | g) as usize])
            .ok_or_else(|| {
                Error::Embedding(format!(
                    "output pattern {f:0k$b} occurs more than 2^{shift} times",
                    k = table.outputs
                ))
            })?;
        used[(base | garbage) as usize] = true;
        assigned[x] = Some(base | garbage);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(inputs: usize, outputs: usize, rows: &[u32]) -> IrreversibleTable {
        IrreversibleTable::new(inputs, outputs, rows.to_vec()).unwrap()
    }

    fn xor() -> IrreversibleTable {
        table(2, 1, &[0, 1, 1, 0])
    }

    fn and() -> IrreversibleTable {
        table(2, 1, &[0, 0, 0, 1])
    }

    /// Inputs (c, b, a); output bit 0 is the sum, bit 1 the carry.
    fn full_adder() -> IrreversibleTable {
        let rows: Vec<u32> = (0..8u32)
            .map(|x| {
                let ones = x.count_ones();
                (ones & 1) | (u32::from(ones >= 2) << 1)
            })
            .collect();
        IrreversibleTable::new(3, 2, rows).unwrap()
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(output_multiplicity(&xor()), 2);
        assert_eq!(output_multiplicity(&and()), 3);
        assert_eq!(output_multiplicity(&full_adder()), 3);
    }

    #[test]
    fn garbage_bound_examples() {
        assert_eq!(garbage_bound(2), Ok(1));
        assert_eq!(garbage_bound(1), Ok(0));
        assert_eq!(garbage_bound(3), Ok(2));
        assert_eq!(garbage_bound(4), Ok(2));
        assert_eq!(garbage_bound(5), Ok(3));
        assert_eq!(garbage_bound(0), Err(Error::ZeroMultiplicity));
    }

    #[test]
    fn embed_xor() {
        let e = embed(&xor()).unwrap();
        assert_eq!(e.spec.perm(), &[0, 3, 2, 1]);
        assert_eq!((e.m, e.p), (2, 1));
        assert!(e.constant_lines.is_empty());
        assert_eq!(e.output_lines, vec![1]);
        assert_eq!(e.passthrough_lines, vec![0]);
    }

    #[test]
    fn embed_and() {
        let e = embed(&and()).unwrap();
        assert_eq!(e.spec.perm(), &[0, 1, 2, 7, 4, 5, 6, 3]);
        assert_eq!((e.m, e.p), (3, 2));
        assert_eq!(e.constant_lines, vec![2]);
        assert_eq!(e.output_lines, vec![2]);
        assert_eq!(e.passthrough_lines, vec![0, 1]);
    }

    #[test]
    fn embed_full_adder() {
        let t = full_adder();
        let e = embed(&t).unwrap();
        assert_eq!(e.spec.width(), 4);
        assert_eq!((e.m, e.p), (3, 2));
        assert_eq!(e.constant_lines, vec![3]);
        assert_eq!(e.output_lines, vec![2, 3]);
        assert_eq!(e.passthrough_lines, vec![0, 1]);
        for x in 0..8 {
            assert_eq!(e.decode(x), t.rows()[x as usize]);
        }
    }

    #[test]
    fn embed_constant_false() {
        let e = embed(&table(1, 1, &[0, 0])).unwrap();
        assert_eq!((e.m, e.p, e.spec.width()), (2, 1, 2));
        // Enumerated by hand: (b, a) -> (0 ^ b, a) is the identity.
        assert_eq!(e.spec.perm(), &[0, 1, 2, 3]);
        for x in 0..2 {
            assert_eq!(e.decode(x), 0);
        }
    }

    #[test]
    fn injective_table_needs_no_garbage() {
        let e = embed(&table(2, 2, &[2, 0, 3, 1])).unwrap();
        assert_eq!((e.m, e.p), (1, 0));
        assert_eq!(e.spec.perm(), &[2, 0, 3, 1]);
        assert!(e.constant_lines.is_empty());
    }

    #[test]
    fn repair_when_passthrough_collides() {
        // f(b, a) = a: passing a through beside f(a) loses b.
        let t = table(2, 1, &[0, 1, 0, 1]);
        let e = embed(&t).unwrap();
        assert!(e.repaired);
        assert!(e.constant_lines.is_empty());
        for x in 0..4 {
            assert_eq!(e.decode(x), t.rows()[x as usize]);
        }
        assert_eq!(e.spec.perm(), &[0, 2, 1, 3]);
    }

    #[test]
    fn itable_parse() {
        let t: IrreversibleTable = "# xor\ninputs 2\noutputs 1\n0\n1\n1\n0\n".parse().unwrap();
        assert_eq!(t, xor());
        let fa: IrreversibleTable = full_adder().to_itable().parse().unwrap();
        assert_eq!(fa, full_adder());
        let spaced: IrreversibleTable = "inputs 1\noutputs 2\n1 0\n0 1\n".parse().unwrap();
        assert_eq!(spaced.rows(), &[2, 1]);
    }

    #[test]
    fn itable_errors() {
        assert!(matches!(
            "inputs 2\noutputs 1\n0\n1\n2\n0\n".parse::<IrreversibleTable>(),
            Err(Error::Parse { line: 5, .. })
        ));
        assert!(matches!(
            "inputs 2\noutputs 1\n0\n1\n".parse::<IrreversibleTable>(),
            Err(Error::WrongLength { .. })
        ));
        assert!("outputs 1\ninputs 1\n0\n1\n"
            .parse::<IrreversibleTable>()
            .is_err());
    }
}
