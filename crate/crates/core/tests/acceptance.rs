// SPDX-License-Identifier: Apache-2.0

//! Acceptance criteria. Run with `--nocapture` to see one line per criterion.

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use revsynth::reduction::reduce_with_stats;
use revsynth::{
    embed, hamming, reduce, reduce_controls, synthesize, BitPattern, Circuit, IrreversibleTable,
    Order, ReversibleSpec, Strategy as Selection, SynthesisOptions, TieBreak, ToffoliGate,
};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn spec(perm: &[u32]) -> ReversibleSpec {
    ReversibleSpec::from_perm(perm.to_vec()).unwrap()
}

fn circ(text: &str, width: usize) -> Circuit {
    Circuit::parse_gates(text, width).unwrap()
}

fn synth(f: &ReversibleSpec, strategy: Selection) -> Circuit {
    synthesize(f, &SynthesisOptions::with_strategy(strategy))
        .unwrap()
        .circuit
}

fn table(inputs: usize, outputs: usize, rows: Vec<u32>) -> IrreversibleTable {
    IrreversibleTable::new(inputs, outputs, rows).unwrap()
}

/// Inputs (c, b, a); output bit 0 is the sum, bit 1 the carry.
fn full_adder() -> IrreversibleTable {
    let rows = (0..8u32)
        .map(|x| {
            let ones = x.count_ones();
            (ones & 1) | (u32::from(ones >= 2) << 1)
        })
        .collect();
    table(3, 2, rows)
}

const TABLE1: [u32; 8] = [1, 0, 3, 2, 5, 7, 4, 6];

fn c1_metrics() -> Outcome {
    let c = spec(&TABLE1).complexity();
    ensure!(c == 8, "C(f) = {c}, expected 8");
    Ok("C(f) = 8".into())
}

fn c2_inversion() -> Outcome {
    let inv = spec(&TABLE1).inverse();
    ensure!(inv.perm() == [1, 0, 3, 2, 6, 4, 7, 5], "inverse = {inv}");
    Ok(format!("inverse = {inv}"))
}

fn c3_exact_sequences() -> Outcome {
    let cases = [
        (
            &TABLE1,
            Selection::Ascending,
            "T(b',c':a)T(b,c':a)T(a,c:b)T(b,c:a)T(a',c:b)",
        ),
        (
            &TABLE1,
            Selection::LowestValue,
            "T(b',c':a)T(b,c':a)T(b',c:a)T(a,c:b)T(b,c:a)",
        ),
        (
            &[1, 0, 3, 2, 6, 4, 7, 5],
            Selection::Ascending,
            "T(b',c':a)T(b,c':a)T(b,c:a)T(a,c:b)T(b',c:a)",
        ),
    ];
    for (perm, strategy, expected) in cases {
        let got = synth(&spec(perm), strategy);
        ensure!(
            got == circ(expected, 3),
            "{strategy:?} on {perm:?}: got {got}, expected {expected}"
        );
    }
    Ok("3 sequences reproduced gate-for-gate".into())
}

fn c4_gate_counts() -> Outcome {
    let fredkin = spec(&[0, 1, 2, 3, 4, 6, 5, 7]);
    let interchange = spec(&[0, 1, 2, 4, 3, 5, 6, 7]);
    let rotation = spec(&[7, 0, 1, 2, 3, 4, 5, 6]);

    let a = synth(&fredkin, Selection::Ascending);
    let b = synth(&interchange, Selection::Ascending);
    let c = reduce(&synth(&rotation, Selection::LowestValue));
    for (name, f, circuit, expected) in [
        ("fredkin", &fredkin, &a, 3),
        ("interchange", &interchange, &b, 5),
        ("rotation", &rotation, &c, 3),
    ] {
        ensure!(
            circuit.len() == expected,
            "{name}: {} gates ({circuit}), expected {expected}",
            circuit.len()
        );
        ensure!(
            circuit.realizes(f, Order::Reversed).unwrap(),
            "{name}: circuit does not realize the spec"
        );
    }
    Ok(format!("3 / 5 / 3 gates; rotation reduces to {c}"))
}

fn c5_single_gates() -> Outcome {
    let xor = synth(&spec(&[0, 3, 2, 1]), Selection::Ascending);
    ensure!(xor == circ("T(a:b)", 2), "xor: {xor}");
    let and = synth(&spec(&[0, 1, 2, 7, 4, 5, 6, 3]), Selection::Ascending);
    ensure!(and == circ("T(a,b:c)", 3), "and: {and}");
    Ok("T(a:b), T(a,b:c)".into())
}

fn c6_embedding() -> Outcome {
    let xor = embed(&table(2, 1, vec![0, 1, 1, 0])).unwrap();
    ensure!(
        xor.p == 1 && xor.constant_lines.is_empty(),
        "xor: p={} constants={:?}",
        xor.p,
        xor.constant_lines
    );
    ensure!(
        xor.spec.width() == 2 && xor.spec.perm() == [0, 3, 2, 1],
        "xor spec {}",
        xor.spec
    );

    let and = embed(&table(2, 1, vec![0, 0, 0, 1])).unwrap();
    ensure!(and.m == 3 && and.p == 2, "and: m={} p={}", and.m, and.p);
    ensure!(
        and.constant_lines.len() == 1,
        "and constants {:?}",
        and.constant_lines
    );
    ensure!(
        and.spec.perm() == [0, 1, 2, 7, 4, 5, 6, 3],
        "and spec {}",
        and.spec
    );

    let fa = embed(&full_adder()).unwrap();
    ensure!(
        fa.m == 3 && fa.p == 2 && fa.spec.width() == 4,
        "full adder: m={} p={} n'={}",
        fa.m,
        fa.p,
        fa.spec.width()
    );
    Ok("xor n'=2 p=1; and m=3 p=2 +1 line; full adder m=3 p=2 n'=4".into())
}

fn c7_reduction() -> Outcome {
    let useless = circ("T(c,b:a)T(c:a)T(c,b:a)", 3);
    let out = reduce(&useless);
    ensure!(out == circ("T(c:a)", 3), "useless pair reduced to {out}");
    ensure!(
        out.equivalent(&useless).unwrap(),
        "useless pair: not equivalent"
    );

    let template = circ("T(b:a)T(:b)T(:a)", 3);
    let out = reduce(&template);
    ensure!(out.len() == 2, "template reduced to {out}");
    ensure!(
        out.equivalent(&template).unwrap(),
        "template: not equivalent"
    );
    Ok(format!("T(c:a); {out}"))
}

fn c8_full_adder() -> Outcome {
    let t = full_adder();
    let e = embed(&t).unwrap();
    let mut best: Option<(usize, Circuit)> = None;
    for strategy in [Selection::Ascending, Selection::LowestValue] {
        let raw = synth(&e.spec, strategy);
        let out = reduce(&raw);
        ensure!(
            out.len() < raw.len(),
            "{strategy:?}: {} -> {} gates",
            raw.len(),
            out.len()
        );
        for x in 0..8u32 {
            let y = out.apply_raw(x, Order::Reversed);
            let sum = (y >> e.output_lines[0]) & 1;
            let carry = (y >> e.output_lines[1]) & 1;
            ensure!(sum | (carry << 1) == t.rows()[x as usize], "row {x} wrong");
        }
        if best.as_ref().is_none_or(|(_, c)| out.len() < c.len()) {
            best = Some((raw.len(), out));
        }
    }
    let (raw, out) = best.unwrap();
    let reference = circ("T(a,b:d)T(a:b)T(b,c:d)T(b:c)", 4);
    let matches = out.equivalent(&reference).unwrap() && out.len() == 4;
    Ok(format!(
        "{raw} -> {} gates; reference 4-gate circuit {}",
        out.len(),
        if matches {
            "matched"
        } else {
            "not matched (not required)"
        }
    ))
}

fn run_cases<S: proptest::strategy::Strategy>(
    make: impl Fn(usize) -> S,
    check: impl Fn(usize, S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    for width in 2..=6 {
        TestRunner::new(Config::with_cases(100))
            .run(&make(width), |v| check(width, v))
            .map_err(|e| format!("width {width}: {e}"))?;
    }
    Ok(())
}

fn permutation(width: usize) -> impl proptest::strategy::Strategy<Value = ReversibleSpec> {
    Just((0..1u32 << width).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(move |p| ReversibleSpec::new(width, p).unwrap())
}

fn random_circuit(width: usize) -> impl proptest::strategy::Strategy<Value = Circuit> {
    let gate = (0..width, any::<u32>(), any::<u32>()).prop_map(move |(t, a, b)| {
        let controls = a & (((1u64 << width) - 1) as u32) & !(1 << t);
        ToffoliGate::from_masks(width, t, controls & !b, controls & b).unwrap()
    });
    prop::collection::vec(gate, 0..=20).prop_map(move |g| Circuit::new(width, g).unwrap())
}

fn c9_properties() -> Outcome {
    let all: Vec<SynthesisOptions> = [
        Selection::Ascending,
        Selection::LowestValue,
        Selection::Random,
    ]
    .into_iter()
    .map(|strategy| SynthesisOptions {
        strategy,
        seed: 2024,
        trials: 3,
        ..SynthesisOptions::default()
    })
    .collect();

    run_cases(permutation, |w, f| {
        for opts in &all {
            let r = synthesize(&f, opts).unwrap();
            prop_assert!(r.circuit.realizes(&f, Order::Reversed).unwrap());
            prop_assert_eq!(r.swap_count, r.circuit.len());
            prop_assert!(r.circuit.len() <= (2 * w - 1) << w);

            let mut slots = f.perm().to_vec();
            let mut placed: Vec<bool> = slots
                .iter()
                .enumerate()
                .map(|(i, &v)| i as u32 == v)
                .collect();
            for round in &r.trace {
                for g in &r.circuit.gates()[round.first_gate..round.first_gate + round.route_length]
                {
                    slots.iter_mut().for_each(|v| *v = g.apply_raw(*v));
                }
                let now: Vec<bool> = slots
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| i as u32 == v)
                    .collect();
                prop_assert!(placed.iter().zip(&now).all(|(&a, &b)| !a || b));
                prop_assert!(
                    now.iter().filter(|&&b| b).count() > placed.iter().filter(|&&b| b).count()
                );
                placed = now;
            }

            let reduced = reduce_controls(&r.circuit, &f).unwrap();
            prop_assert!(reduced.equivalent(&r.circuit).unwrap());
        }
        Ok(())
    })?;

    run_cases(random_circuit, |_, c| {
        let (out, _) = reduce_with_stats(&c);
        prop_assert!(out.equivalent(&c).unwrap());
        prop_assert!(out.len() <= c.len());
        Ok(())
    })?;

    for w in 2..=6usize {
        let lines = ((1u64 << w) - 1) as u32;
        for target in 0..w {
            for polarity in 0..1u32 << w {
                let others = lines & !(1 << target);
                let g = ToffoliGate::from_masks(w, target, polarity & others, !polarity & others)
                    .unwrap();
                let moved: Vec<u32> = (0..1u32 << w).filter(|&v| g.apply_raw(v) != v).collect();
                ensure!(moved.len() == 2, "{g} moves {} patterns", moved.len());
                ensure!(
                    (moved[0] ^ moved[1]).count_ones() == 1,
                    "{g} swaps non-neighbours"
                );
            }
        }
        for x in 0..1u32 << w {
            for y in 0..1u32 << w {
                let d = hamming(
                    BitPattern::new(x, w).unwrap(),
                    BitPattern::new(y, w).unwrap(),
                )
                .unwrap();
                ensure!(
                    x == y || (1..=w as u32).contains(&d),
                    "distance {d} for {x},{y}"
                );
            }
        }
    }
    Ok("100 cases per width 2..=6 for synthesis, reduction and control reduction; distance bounds and two-pattern gate moves exhaustive".into())
}

fn c10_quadratic_claim_excluded() -> Outcome {
    // Not asserted. Reports the largest BSSSN circuit over all 8! specs on
    // three lines, for comparison with n^2 = 9.
    fn permutations(k: usize, items: &mut Vec<u32>, visit: &mut impl FnMut(&[u32])) {
        if k == items.len() {
            return visit(items);
        }
        for i in k..items.len() {
            items.swap(k, i);
            permutations(k + 1, items, visit);
            items.swap(k, i);
        }
    }
    let mut worst = 0;
    permutations(0, &mut (0..8).collect(), &mut |p| {
        worst = worst.max(synth(&spec(p), Selection::Ascending).len());
    });
    Ok(format!(
        "excluded; (2n-1)*2^n bound checked in C9 instead. Worst n=3 circuit: {worst} gates vs n^2 = 9"
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("C1 metrics", c1_metrics),
        ("C2 inversion", c2_inversion),
        ("C3 exact sequences", c3_exact_sequences),
        ("C4 gate-count parity", c4_gate_counts),
        ("C5 single-gate solutions", c5_single_gates),
        ("C6 embedding", c6_embedding),
        ("C7 reduction", c7_reduction),
        ("C8 full adder end-to-end", c8_full_adder),
        ("C9 property suite", c9_properties),
        ("C10 O(n^2) claim", c10_quadratic_claim_excluded),
    ];
    let mut failures = Vec::new();
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                println!("FAIL  {name}: {why}");
                failures.push(name);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}

#[test]
fn high_tie_break_matches_reference_fredkin_routing() {
    let opts = SynthesisOptions {
        tie_break: TieBreak::High,
        ..SynthesisOptions::default()
    };
    let f = spec(&[0, 1, 2, 3, 4, 6, 5, 7]);
    let r = synthesize(&f, &opts).unwrap();
    assert_eq!(r.circuit, circ("T(a,c:b)T(b,c:a)T(a,c:b)", 3));
    let reduced = reduce_controls(&r.circuit, &f).unwrap();
    assert_eq!(reduced, circ("T(a:b)T(b,c:a)T(a:b)", 3));
}
