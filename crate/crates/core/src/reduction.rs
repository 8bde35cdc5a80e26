// SPDX-License-Identifier: Apache-2.0

//! Post-synthesis circuit reduction.
//!
//! Three passes, repeated until none changes the circuit:
//!
//! - useless pairs: two identical gates cancel when nothing between them
//!   writes one of their controls or reads their target;
//! - peephole templates ([`BUILTIN_RULES`]), applied at the leftmost matching
//!   position, restarting after each rewrite;
//! - commuting merges: the two-gate rules (cancel, polarity merge) applied to
//!   a non-adjacent pair when the later gate commutes with every gate in
//!   between (see [`gates_commute`]).
//!
//! Every rule strictly shortens the circuit, which bounds the number of
//! rewrites by the initial gate count.

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::ToffoliGate;

/// A peephole rule over a window of consecutive gates.
#[derive(Debug, Clone, Copy)]
pub struct RewriteRule {
    pub name: &'static str,
    pub window: usize,
    /// Replacement for the window, or `None` if the rule does not match.
    /// Must return fewer gates than `window` and preserve the function.
    pub rewrite: fn(&[ToffoliGate]) -> Option<Vec<ToffoliGate>>,
}

/// R1: two adjacent identical gates cancel.
pub const CANCEL_ADJACENT: RewriteRule = RewriteRule {
    name: "cancel-adjacent",
    window: 2,
    rewrite: |w| (w[0] == w[1]).then(Vec::new),
};

/// R2: `T(x:y) T(:x) T(:y)` becomes `T(:x) T(x:y)`.
pub const MOVE_NOT: RewriteRule = RewriteRule {
    name: "move-not",
    window: 3,
    rewrite: |w| {
        let (cnot, not_x, not_y) = (w[0], w[1], w[2]);
        let x = cnot.positive_mask();
        let matches = cnot.control_count() == 1
            && x != 0
            && not_x.control_count() == 0
            && 1u32 << not_x.target() == x
            && not_y.control_count() == 0
            && not_y.target() == cnot.target();
        matches.then(|| vec![not_x, cnot])
    },
};

/// R3: adjacent gates that differ only in the polarity of one control merge
/// into one gate without that control.
pub const MERGE_POLARITY: RewriteRule = RewriteRule {
    name: "merge-polarity",
    window: 2,
    rewrite: |w| polarity_merge(w[0], w[1]).map(|g| vec![g]),
};

fn polarity_merge(g: ToffoliGate, h: ToffoliGate) -> Option<ToffoliGate> {
    let flipped = g.positive_mask() ^ h.positive_mask();
    let matches = g.target() == h.target()
        && g.control_mask() == h.control_mask()
        && flipped.count_ones() == 1;
    matches.then(|| g.without_control(flipped.trailing_zeros() as usize))
}

/// Rules in priority order.
pub const BUILTIN_RULES: [RewriteRule; 3] = [CANCEL_ADJACENT, MOVE_NOT, MERGE_POLARITY];

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize)]
pub struct ReductionStats {
    pub pair_removals: usize,
    pub template_rewrites: usize,
    pub commuting_merges: usize,
}

impl ReductionStats {
    pub fn rewrites(&self) -> usize {
        self.pair_removals + self.template_rewrites + self.commuting_merges
    }
}

/// Sufficient condition for `g h = h g`: neither target is a control of the
/// other gate, or some shared control line has opposite polarities (the two
/// gates never fire on the same pattern and neither can change that line).
pub fn gates_commute(g: &ToffoliGate, h: &ToffoliGate) -> bool {
    let disjoint_support =
        g.control_mask() & (1 << h.target()) == 0 && h.control_mask() & (1 << g.target()) == 0;
    let exclusive =
        g.positive_mask() & h.negative_mask() != 0 || g.negative_mask() & h.positive_mask() != 0;
    disjoint_support || exclusive
}

/// Whether identical gates `i < j` can be deleted together.
pub fn removable_pair(circuit: &Circuit, i: usize, j: usize) -> Result<bool> {
    let gates = circuit.gates();
    for index in [i, j] {
        if index >= gates.len() {
            return Err(Error::IndexOutOfRange {
                index,
                len: gates.len(),
            });
        }
    }
    if i >= j || gates[i] != gates[j] {
        return Err(Error::GatesDiffer(i, j));
    }
    Ok(pair_commutes(gates, i, j))
}

fn pair_commutes(gates: &[ToffoliGate], i: usize, j: usize) -> bool {
    let pair = gates[i];
    let target = 1u32 << pair.target();
    gates[i + 1..j]
        .iter()
        .all(|g| g.control_mask() & target == 0 && pair.control_mask() & (1 << g.target()) == 0)
}

fn remove_first_pair(gates: &mut Vec<ToffoliGate>) -> bool {
    for i in 0..gates.len() {
        let hit =
            (i + 1..gates.len()).find(|&j| gates[j] == gates[i] && pair_commutes(gates, i, j));
        if let Some(j) = hit {
            gates.remove(j);
            gates.remove(i);
            return true;
        }
    }
    false
}

fn rewrite_first(gates: &mut Vec<ToffoliGate>, rules: &[RewriteRule]) -> bool {
    for start in 0..gates.len() {
        for rule in rules {
            let end = start + rule.window;
            if end > gates.len() {
                continue;
            }
            if let Some(replacement) = (rule.rewrite)(&gates[start..end]) {
                debug_assert!(replacement.len() < rule.window, "{} grew", rule.name);
                gates.splice(start..end, replacement);
                return true;
            }
        }
    }
    false
}

/// Moves a later gate left across gates it commutes with when that makes it
/// cancel or polarity-merge with an earlier gate. Leftmost `i`, nearest `j`.
fn merge_first_commuting(gates: &mut Vec<ToffoliGate>) -> bool {
    for i in 0..gates.len() {
        for j in i + 1..gates.len() {
            let (g, h) = (gates[i], gates[j]);
            let merged = if g == h {
                None
            } else if let Some(m) = polarity_merge(g, h) {
                Some(m)
            } else {
                continue;
            };
            if !gates[i + 1..j]
                .iter()
                .all(|between| gates_commute(between, &h))
            {
                continue;
            }
            gates.remove(j);
            match merged {
                Some(m) => gates[i] = m,
                None => {
                    gates.remove(i);
                }
            }
            return true;
        }
    }
    false
}

/// Applies cancellation and polarity merging across commuting gates until
/// neither applies.
pub fn merge_commuting(circuit: &Circuit) -> Circuit {
    merge_commuting_counted(circuit).0
}

fn merge_commuting_counted(circuit: &Circuit) -> (Circuit, usize) {
    let mut gates = circuit.gates().to_vec();
    let mut count = 0;
    while merge_first_commuting(&mut gates) {
        count += 1;
    }
    (Circuit::from_raw(circuit.width(), gates), count)
}

/// Deletes the leftmost removable pair until none remains.
pub fn remove_useless_pairs(circuit: &Circuit) -> Circuit {
    remove_useless_pairs_counted(circuit).0
}

fn remove_useless_pairs_counted(circuit: &Circuit) -> (Circuit, usize) {
    let mut gates = circuit.gates().to_vec();
    let mut count = 0;
    while remove_first_pair(&mut gates) {
        count += 1;
    }
    (Circuit::from_raw(circuit.width(), gates), count)
}

/// Applies [`BUILTIN_RULES`] until none matches.
pub fn apply_templates(circuit: &Circuit) -> Circuit {
    apply_rules(circuit, &BUILTIN_RULES).0
}

/// Applies `rules` to a fixpoint, returning the number of rewrites.
pub fn apply_rules(circuit: &Circuit, rules: &[RewriteRule]) -> (Circuit, usize) {
    let mut gates = circuit.gates().to_vec();
    let mut count = 0;
    while rewrite_first(&mut gates, rules) {
        count += 1;
    }
    (Circuit::from_raw(circuit.width(), gates), count)
}

pub fn reduce(circuit: &Circuit) -> Circuit {
    reduce_with_stats(circuit).0
}

/// Which passes [`reduce_with`] runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Passes {
    pub pairs: bool,
    pub templates: bool,
    pub commuting: bool,
}

impl Default for Passes {
    fn default() -> Self {
        Self {
            pairs: true,
            templates: true,
            commuting: true,
        }
    }
}

/// Runs every pass to a common fixpoint.
pub fn reduce_with_stats(circuit: &Circuit) -> (Circuit, ReductionStats) {
    reduce_with(circuit, Passes::default())
}

pub fn reduce_with(circuit: &Circuit, passes: Passes) -> (Circuit, ReductionStats) {
    let mut stats = ReductionStats::default();
    let mut current = circuit.clone();
    loop {
        let before = stats;
        if passes.pairs {
            let (next, n) = remove_useless_pairs_counted(&current);
            stats.pair_removals += n;
            current = next;
        }
        if passes.templates {
            let (next, n) = apply_rules(&current, &BUILTIN_RULES);
            stats.template_rewrites += n;
            current = next;
        }
        if passes.commuting {
            let (next, n) = merge_commuting_counted(&current);
            stats.commuting_merges += n;
            current = next;
        }
        if stats == before {
            return (current, stats);
        }
    }
}
