// SPDX-License-Identifier: Apache-2.0

//! Subcommand implementations. Every command computes its full result before
//! touching the filesystem, so a failure never leaves partial output behind.

use std::path::Path;
use std::process::ExitCode;

use revsynth::pattern::line_name;
use revsynth::reduction::reduce_with;
use revsynth::{
    embed as embed_table, reduce_controls, synthesize, CircuitFile, IrreversibleTable, Order,
    Passes, ReductionStats, ReversibleSpec, SynthesisOptions,
};

use crate::output::{read, write_all};
use crate::report::{
    render, EmbedReport, OptimizeReport, Report, Size, StatsReport, SynthReport, VerifyReport,
};
use crate::{EmbedArgs, OptimizeArgs, ReportFormat, StatsArgs, SynthArgs, VerifyArgs};

#[derive(Debug, thiserror::Error)]
pub enum Failure {
    /// Bad input: unreadable or malformed files, inconsistent arguments.
    #[error("{0}")]
    Input(String),
    /// A result failed its own consistency check.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

fn input(e: revsynth::Error) -> Failure {
    Failure::Input(e.to_string())
}

fn emit<R: Report>(report: &R, format: ReportFormat) {
    print!("{}", render(report, format));
}

fn display(path: &Option<std::path::PathBuf>) -> Option<String> {
    path.as_ref().map(|p| p.display().to_string())
}

pub fn synth(args: &SynthArgs) -> Result<ExitCode, Failure> {
    let spec: ReversibleSpec = read(&args.spec)?;
    let options = SynthesisOptions {
        strategy: args.strategy.into(),
        seed: args.seed,
        trials: args.trials,
        direction: args.direction.into(),
        tie_break: args.tie_break.into(),
    };
    let result = synthesize(&spec, &options).map_err(input)?;
    let circuit = &result.circuit;
    if !circuit.realizes(&spec, result.order).map_err(input)? {
        return Err(Failure::Invariant(format!(
            "synthesized circuit does not realize the specification in {} order",
            result.order
        )));
    }
    if circuit.len() != result.swap_count {
        return Err(Failure::Invariant(
            "gate count differs from swap count".into(),
        ));
    }

    if let Some(path) = &args.output {
        write_all(&[(path, &circuit.to_circ(Some(result.order)))])?;
    }
    emit(
        &SynthReport {
            command: "synth",
            width: spec.width(),
            complexity: spec.complexity(),
            gate_count: circuit.len(),
            control_count: circuit.control_count(),
            swap_count: result.swap_count,
            reverse_op_count: result.reverse_op_count,
            strategy: options.strategy,
            tie_break: options.tie_break,
            direction: options.direction,
            seed: options.seed,
            trials: options.trials,
            order: result.order,
            circuit: circuit.to_string(),
            output: display(&args.output),
        },
        args.format,
    );
    Ok(ExitCode::SUCCESS)
}

pub fn verify(args: &VerifyArgs) -> Result<ExitCode, Failure> {
    let file: CircuitFile = read(&args.circuit)?;
    let spec: ReversibleSpec = read(&args.spec)?;
    let order = args
        .order
        .map(Order::from)
        .or(file.order)
        .unwrap_or(Order::Listed);
    let mismatch = file.circuit.first_mismatch(&spec, order).map_err(input)?;
    let report = VerifyReport {
        command: "verify",
        width: spec.width(),
        gate_count: file.circuit.len(),
        order,
        rows: spec.rows(),
        pass: mismatch.is_none(),
        mismatch,
    };
    emit(&report, args.format);
    Ok(if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

pub fn optimize(args: &OptimizeArgs) -> Result<ExitCode, Failure> {
    let file: CircuitFile = read(&args.circuit)?;
    let original = &file.circuit;
    let passes = Passes {
        pairs: !args.no_pairs,
        templates: !args.no_templates,
        commuting: !args.no_commuting,
    };

    // reduce_controls works on the reversed-order convention; a circuit that
    // realizes f in listed order realizes f⁻¹ in reversed order.
    let target = match (&args.spec, args.reduce_controls) {
        (Some(path), true) => {
            let spec: ReversibleSpec = read(path)?;
            let order = args
                .order
                .map(Order::from)
                .or(file.order)
                .unwrap_or(Order::Reversed);
            if let Some(m) = original.first_mismatch(&spec, order).map_err(input)? {
                return Err(Failure::Input(format!(
                    "circuit does not realize the specification in {order} order (row {}: expected {}, got {})",
                    m.row, m.expected, m.actual
                )));
            }
            Some(match order {
                Order::Reversed => spec,
                Order::Listed => spec.inverse(),
            })
        }
        _ => None,
    };

    let mut stats = ReductionStats::default();
    let mut control_deletions = 0;
    let mut current = original.clone();
    loop {
        let (reduced, pass_stats) = reduce_with(&current, passes);
        stats.pair_removals += pass_stats.pair_removals;
        stats.template_rewrites += pass_stats.template_rewrites;
        stats.commuting_merges += pass_stats.commuting_merges;
        let next = match &target {
            Some(spec) => {
                let trimmed = reduce_controls(&reduced, spec)
                    .map_err(|e| Failure::Invariant(format!("control reduction: {e}")))?;
                control_deletions += reduced.control_count() - trimmed.control_count();
                trimmed
            }
            None => reduced,
        };
        if next == current {
            break;
        }
        current = next;
    }

    if !current.equivalent(original).map_err(input)? {
        return Err(Failure::Invariant(
            "optimized circuit is not equivalent to its input".into(),
        ));
    }
    if let Some(path) = &args.output {
        write_all(&[(path, &current.to_circ(file.order))])?;
    }
    emit(
        &OptimizeReport {
            command: "optimize",
            width: original.width(),
            before: Size {
                gates: original.len(),
                controls: original.control_count(),
            },
            after: Size {
                gates: current.len(),
                controls: current.control_count(),
            },
            pair_removals: stats.pair_removals,
            template_rewrites: stats.template_rewrites,
            commuting_merges: stats.commuting_merges,
            control_deletions,
            rewrites: stats.rewrites() + control_deletions,
            circuit: current.to_string(),
            output: display(&args.output),
        },
        args.format,
    );
    Ok(ExitCode::SUCCESS)
}

pub fn embed(args: &EmbedArgs) -> Result<ExitCode, Failure> {
    let table: IrreversibleTable = read(&args.table)?;
    let result = embed_table(&table).map_err(input)?;
    for x in 0..1u32 << table.inputs() {
        if result.decode(x) != table.rows()[x as usize] {
            return Err(Failure::Invariant(format!(
                "embedded row {x} decodes incorrectly"
            )));
        }
    }

    let names = |lines: &[usize]| lines.iter().map(|&l| line_name(l)).collect::<Vec<_>>();
    let report = EmbedReport {
        command: "embed",
        inputs: table.inputs(),
        outputs: table.outputs(),
        width: result.spec.width(),
        m: result.m,
        p: result.p,
        constant_lines: names(&result.constant_lines),
        output_lines: names(&result.output_lines),
        passthrough_lines: names(&result.passthrough_lines),
        repaired: result.repaired,
        spec: result.spec.to_string(),
        output: display(&args.output),
    };
    let rendered = render(&report, args.format);

    let sidecar = args.report.clone().or_else(|| {
        args.output.as_ref().map(|p| {
            let mut name = p.as_os_str().to_owned();
            name.push(".report");
            name.into()
        })
    });
    let rspec = result.spec.to_rspec();
    let mut files: Vec<(&Path, &str)> = Vec::new();
    if let Some(path) = &args.output {
        files.push((path, &rspec));
    }
    if let Some(path) = &sidecar {
        files.push((path, &rendered));
    }
    write_all(&files)?;
    print!("{rendered}");
    Ok(ExitCode::SUCCESS)
}

pub fn stats(args: &StatsArgs) -> Result<ExitCode, Failure> {
    let spec: ReversibleSpec = read(&args.spec)?;
    let misplaced = spec.misplaced();
    emit(
        &StatsReport {
            command: "stats",
            width: spec.width(),
            rows: spec.rows(),
            complexity: spec.complexity(),
            misplaced,
            fixed_points: spec.rows() - misplaced,
            cycles: spec.cycles(),
        },
        args.format,
    );
    Ok(ExitCode::SUCCESS)
}
