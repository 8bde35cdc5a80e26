// SPDX-License-Identifier: Apache-2.0

//! Synthesis by sorting the output column with distance-1 swaps.
//!
//! The working copy `W` starts as the target permutation. Each round picks a
//! misplaced value `A` and routes it into slot `A`: while the occupant `B` of
//! that slot is not adjacent to `A`, `B` is swapped with the neighbour `C`
//! closest to `A`. Every swap is one full-control Toffoli gate (the only gate
//! that exchanges exactly two patterns). Swaps that evict an already placed
//! value are pushed on a stack and replayed in LIFO order once `A` lands,
//! which puts the evicted values back.
//!
//! Gates act on output values, so the emitted list maps `f(x)` back to `x`
//! when applied in listed order; the target is realized in reversed order.

use std::cmp::Reverse;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Order};
use crate::error::{Error, Result};
use crate::gate::ToffoliGate;
use crate::pattern::{distance, neighbors, BitPattern};
use crate::spec::ReversibleSpec;

/// How the next misplaced value is picked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// The value occupying the lowest misplaced slot.
    #[default]
    Ascending,
    /// The lowest misplaced value.
    LowestValue,
    /// A uniformly random misplaced value.
    Random,
}

/// Which equally close neighbour wins when routing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TieBreak {
    #[default]
    Low,
    High,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// Sort the specification itself; the circuit realizes it in reversed order.
    #[default]
    OutputTranslation,
    /// Sort the inverse specification; the circuit realizes the original in
    /// listed order.
    InputTranslation,
}

impl Direction {
    /// Order under which a circuit synthesized this way realizes the original
    /// specification.
    pub fn realizing_order(self) -> Order {
        match self {
            Direction::OutputTranslation => Order::Reversed,
            Direction::InputTranslation => Order::Listed,
        }
    }
}

/// Options for [`synthesize`].
///
/// The random strategy draws from ChaCha8 (`rand_chacha`), seeded with
/// `seed` and using stream `t` for trial `t`, so results are reproducible
/// across platforms. `seed` and `trials` are ignored by the other strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SynthesisOptions {
    pub strategy: Strategy,
    pub seed: u64,
    pub trials: usize,
    pub direction: Direction,
    pub tie_break: TieBreak,
}

impl Default for SynthesisOptions {
    fn default() -> Self {
        Self {
            strategy: Strategy::Ascending,
            seed: 0,
            trials: 1,
            direction: Direction::OutputTranslation,
            tie_break: TieBreak::Low,
        }
    }
}

impl SynthesisOptions {
    pub fn with_strategy(strategy: Strategy) -> Self {
        Self {
            strategy,
            ..Self::default()
        }
    }
}

/// One round of the outer loop.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Placement {
    /// The value moved into its slot this round.
    pub value: u32,
    /// Gates emitted this round, unwinding included.
    pub route_length: usize,
    /// Index of the round's first gate in the circuit.
    pub first_gate: usize,
    /// How many of those gates were stack replays.
    pub reverse_ops: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthesisReport {
    pub circuit: Circuit,
    pub swap_count: usize,
    pub reverse_op_count: usize,
    pub trace: Vec<Placement>,
    /// Order under which `circuit` realizes the input specification.
    pub order: Order,
}

/// The full-control gate exchanging `p` and `q`, which must differ in
/// exactly one line. Controls copy the shared bits.
pub fn swap_gate(p: BitPattern, q: BitPattern) -> Result<ToffoliGate> {
    let d = crate::pattern::hamming(p, q)?;
    if d != 1 {
        return Err(Error::NotAdjacent {
            p: p.value(),
            q: q.value(),
            distance: d,
        });
    }
    Ok(raw_swap_gate(p.value(), q.value(), p.width()))
}

fn raw_swap_gate(p: u32, q: u32, width: usize) -> ToffoliGate {
    let flip = p ^ q;
    debug_assert_eq!(flip.count_ones(), 1);
    let lines = ((1u64 << width) - 1) as u32;
    let others = lines & !flip;
    ToffoliGate::from_masks(
        width,
        flip.trailing_zeros() as usize,
        p & others,
        !p & others,
    )
    .expect("swap gate masks are disjoint and in range")
}

/// Neighbours of `pattern`, ascending by flipped line.
pub fn neighbor_candidates(pattern: BitPattern) -> Vec<BitPattern> {
    pattern.neighbors()
}

pub fn synthesize(spec: &ReversibleSpec, opts: &SynthesisOptions) -> Result<SynthesisReport> {
    if opts.trials == 0 {
        return Err(Error::ZeroTrials);
    }
    let target = match opts.direction {
        Direction::OutputTranslation => spec.clone(),
        Direction::InputTranslation => spec.inverse(),
    };
    let order = opts.direction.realizing_order();

    let mut report = match opts.strategy {
        Strategy::Random => {
            (0..opts.trials as u64)
                .map(|trial| {
                    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
                    rng.set_stream(trial);
                    Sorter::new(&target, opts.tie_break).run(Selector::Random(&mut rng))
                })
                .map(|r| ((r.circuit.len(), r.circuit.to_string()), r))
                .min_by(|a, b| a.0.cmp(&b.0))
                .expect("at least one trial")
                .1
        }
        Strategy::Ascending => Sorter::new(&target, opts.tie_break).run(Selector::Ascending),
        Strategy::LowestValue => Sorter::new(&target, opts.tie_break).run(Selector::LowestValue),
    };
    report.order = order;
    Ok(report)
}

enum Selector<'a> {
    Ascending,
    LowestValue,
    Random(&'a mut ChaCha8Rng),
}

/// Working state of one sorting run.
struct Sorter {
    width: usize,
    tie_break: TieBreak,
    /// `slots[i]` is the value currently at slot `i`.
    slots: Vec<u32>,
    /// `position[v]` is the slot currently holding value `v`.
    position: Vec<u32>,
    /// Misplaced values in arbitrary order, with `index_of` as a reverse map.
    misplaced: Vec<u32>,
    index_of: Vec<usize>,
    gates: Vec<ToffoliGate>,
}

const NOT_MISPLACED: usize = usize::MAX;

impl Sorter {
    fn new(target: &ReversibleSpec, tie_break: TieBreak) -> Self {
        let slots = target.perm().to_vec();
        let mut position = vec![0u32; slots.len()];
        for (slot, &v) in slots.iter().enumerate() {
            position[v as usize] = slot as u32;
        }
        let mut misplaced = Vec::new();
        let mut index_of = vec![NOT_MISPLACED; slots.len()];
        for (v, &slot) in position.iter().enumerate() {
            if slot as usize != v {
                index_of[v] = misplaced.len();
                misplaced.push(v as u32);
            }
        }
        Self {
            width: target.width(),
            tie_break,
            slots,
            position,
            misplaced,
            index_of,
            gates: Vec::new(),
        }
    }

    #[inline]
    fn in_place(&self, value: u32) -> bool {
        self.position[value as usize] == value
    }

    fn update_membership(&mut self, value: u32) {
        let v = value as usize;
        let listed = self.index_of[v] != NOT_MISPLACED;
        match (self.in_place(value), listed) {
            (true, true) => {
                let idx = self.index_of[v];
                self.misplaced.swap_remove(idx);
                if let Some(&moved) = self.misplaced.get(idx) {
                    self.index_of[moved as usize] = idx;
                }
                self.index_of[v] = NOT_MISPLACED;
            }
            (false, false) => {
                self.index_of[v] = self.misplaced.len();
                self.misplaced.push(value);
            }
            _ => {}
        }
    }

    /// Emits and applies the gate exchanging values `p` and `q`.
    fn emit(&mut self, gate: ToffoliGate, p: u32, q: u32) {
        let (sp, sq) = (self.position[p as usize], self.position[q as usize]);
        self.slots[sp as usize] = q;
        self.slots[sq as usize] = p;
        self.position[p as usize] = sq;
        self.position[q as usize] = sp;
        self.update_membership(p);
        self.update_membership(q);
        self.gates.push(gate);
    }

    fn swap(&mut self, p: u32, q: u32) -> ToffoliGate {
        let gate = raw_swap_gate(p, q, self.width);
        self.emit(gate, p, q);
        gate
    }

    /// Picks the neighbour of `b` to route through on the way to `a`.
    fn next_hop(&self, a: u32, b: u32) -> u32 {
        let key = |c: u32| (distance(a, c), self.in_place(c));
        let candidates = neighbors(b, self.width);
        match self.tie_break {
            TieBreak::Low => candidates.min_by_key(|&c| (key(c), c)),
            TieBreak::High => candidates.min_by_key(|&c| (key(c), Reverse(c))),
        }
        .expect("width is at least 1")
    }

    /// Routes value `a` into slot `a`, then replays the stacked swaps.
    fn place(&mut self, a: u32) -> Placement {
        let first_gate = self.gates.len();
        let mut stack: Vec<(ToffoliGate, u32, u32)> = Vec::new();
        loop {
            let b = self.slots[a as usize];
            debug_assert_ne!(a, b);
            if distance(a, b) == 1 {
                self.swap(a, b);
                break;
            }
            let c = self.next_hop(a, b);
            let was_placed = self.in_place(c);
            let gate = self.swap(b, c);
            if was_placed {
                stack.push((gate, b, c));
            }
        }
        let reverse_ops = stack.len();
        while let Some((gate, p, q)) = stack.pop() {
            self.emit(gate, p, q);
        }
        Placement {
            value: a,
            route_length: self.gates.len() - first_gate,
            first_gate,
            reverse_ops,
        }
    }

    fn run(mut self, mut selector: Selector<'_>) -> SynthesisReport {
        let mut trace = Vec::new();
        // Placed values never leave, so the lowest misplaced slot only grows.
        let mut cursor = 0usize;
        loop {
            let a = match &mut selector {
                Selector::Ascending | Selector::LowestValue => {
                    while cursor < self.slots.len() && self.in_place(cursor as u32) {
                        cursor += 1;
                    }
                    if cursor == self.slots.len() {
                        break;
                    }
                    match selector {
                        Selector::Ascending => self.slots[cursor],
                        _ => cursor as u32,
                    }
                }
                Selector::Random(rng) => {
                    if self.misplaced.is_empty() {
                        break;
                    }
                    self.misplaced[rng.gen_range(0..self.misplaced.len())]
                }
            };
            trace.push(self.place(a));
        }
        let swap_count = self.gates.len();
        let reverse_op_count = trace.iter().map(|p| p.reverse_ops).sum();
        SynthesisReport {
            circuit: Circuit::from_raw(self.width, self.gates),
            swap_count,
            reverse_op_count,
            trace,
            order: Order::Reversed,
        }
    }
}

/// Greedy control deletion that keeps the realized function fixed.
///
/// Each gate is visited in order and each of its controls in ascending line
/// order. A control is dropped if the circuit still realizes `spec` (reversed
/// order) afterwards. Dropping a control from a single gate always changes
/// that gate's function, so the deletion is also tried jointly on the gate
/// and each later identical gate, nearest first.
pub fn reduce_controls(circuit: &Circuit, spec: &ReversibleSpec) -> Result<Circuit> {
    if let Some(m) = circuit.first_mismatch(spec, Order::Reversed)? {
        return Err(Error::NotRealized { row: m.row });
    }
    let rows = 1u32 << circuit.width();
    let mut gates = circuit.gates().to_vec();

    let segment_preserved = |original: &[ToffoliGate], edited: &[ToffoliGate]| {
        (0..rows).all(|x| {
            original.iter().fold(x, |v, g| g.apply_raw(v))
                == edited.iter().fold(x, |v, g| g.apply_raw(v))
        })
    };

    for i in 0..gates.len() {
        let lines: Vec<usize> = gates[i].controls().map(|(line, _)| line).collect();
        for line in lines {
            let gate = gates[i];
            let reduced = gate.without_control(line);
            if segment_preserved(&[gate], &[reduced]) {
                gates[i] = reduced;
                continue;
            }
            let partner = (i + 1..gates.len())
                .filter(|&j| gates[j] == gate)
                .find(|&j| {
                    let mut edited = gates[i..=j].to_vec();
                    edited[0] = reduced;
                    *edited.last_mut().unwrap() = reduced;
                    segment_preserved(&gates[i..=j], &edited)
                });
            if let Some(j) = partner {
                gates[i] = reduced;
                gates[j] = reduced;
            }
        }
    }

    let reduced = Circuit::from_raw(circuit.width(), gates);
    match reduced.first_mismatch(spec, Order::Reversed)? {
        None => Ok(reduced),
        Some(m) => Err(Error::NotRealized { row: m.row }),
    }
}
