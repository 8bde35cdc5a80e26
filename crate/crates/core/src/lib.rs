// SPDX-License-Identifier: Apache-2.0

//! Reversible logic synthesis with mixed-polarity Toffoli gates.
//!
//! A reversible function on `n` lines is a permutation of `0..2^n`
//! ([`ReversibleSpec`]). [`synthesize`] sorts that permutation with swaps of
//! patterns at Hamming distance one, each swap becoming a full-control
//! [`ToffoliGate`]. The [`reduction`] module shrinks the result with pair
//! cancellation and peephole templates, and [`embedding`] turns irreversible
//! truth tables into reversible specifications with the minimum number of
//! garbage outputs.

pub mod circuit;
pub mod embedding;
pub mod error;
pub mod gate;
pub mod pattern;
pub mod reduction;
pub mod spec;
pub mod synthesis;

/// Largest supported line count.
pub const MAX_WIDTH: usize = 16;

pub use circuit::{Circuit, CircuitFile, Mismatch, Order};
pub use embedding::{
    embed, garbage_bound, output_multiplicity, EmbeddingResult, IrreversibleTable,
};
pub use error::{Error, Result};
pub use gate::{Polarity, ToffoliGate};
pub use pattern::{hamming, BitPattern};
pub use reduction::{reduce, Passes, ReductionStats};
pub use spec::ReversibleSpec;
pub use synthesis::{
    reduce_controls, swap_gate, synthesize, Direction, Strategy, SynthesisOptions, SynthesisReport,
    TieBreak,
};
