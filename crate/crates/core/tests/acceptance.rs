//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::process::Command;
use std::time::{Duration, Instant};

use equivar::canonical::CanonicalOp;
use equivar::classifier::{
    cross_validate, direct_dimension, expected_dimension, same_span, AnsatzOptions, CandidateOperator, Cell,
    CrossValidation, DirectOptions,
};
use equivar::properties::{self, PropertyReport};

const SEED: u64 = 20_240_601;
const CELL_LIMIT: Duration = Duration::from_secs(300);
const SUITE_LIMIT: Duration = Duration::from_secs(1800);

struct Row {
    cell: Cell,
    expected: usize,
    span: Vec<CanonicalOp>,
}

fn row(m: usize, p: usize, q: usize, k: usize, l: usize, expected: usize, span: &[CanonicalOp]) -> Row {
    Row { cell: Cell::new(m, p, q, k, l).expect("valid cell"), expected, span: span.to_vec() }
}

fn table() -> Vec<Row> {
    use CanonicalOp::*;
    vec![
        row(4, 2, 0, 0, 1, 0, &[]),
        row(4, 2, 0, 1, 2, 0, &[]),
        row(4, 2, 0, 2, 3, 0, &[]),
        row(3, 0, 1, 1, 0, 1, &[]),
        row(3, 1, 2, 1, 0, 1, &[]),
        row(3, 0, 1, 2, 1, 1, &[]),
        row(3, 1, 2, 2, 1, 0, &[]),
        row(3, 0, 1, 3, 2, 0, &[]),
        row(3, 1, 2, 3, 2, 0, &[]),
        row(3, 1, 0, 0, 1, 1, &[DStar]),
        row(3, 1, 0, 1, 2, 1, &[DStar]),
        row(3, 1, 0, 2, 3, 1, &[DStar]),
        row(4, 2, 1, 1, 2, 1, &[DStar]),
        row(3, 0, 0, 0, 0, 1, &[]),
        row(3, 0, 0, 1, 1, 2, &[]),
        row(3, 0, 0, 2, 2, 2, &[Id, I0]),
        row(3, 1, 1, 1, 1, 2, &[Id, DStarK]),
        row(3, 1, 1, 0, 0, 1, &[]),
        row(3, 1, 1, 2, 2, 1, &[]),
        row(4, 2, 2, 1, 1, 2, &[]),
    ]
}

fn label(c: &Cell) -> String {
    format!("({},{},{},{},{})", c.m, c.p, c.q, c.k, c.l)
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn report(n: usize, outcome: &Outcome) {
    let status = if outcome.ok { "PASS" } else { "FAIL" };
    println!("criterion {n}: {status} {}", outcome.detail);
}

fn criterion_1(rows: &[Row], runs: &[(CrossValidation, Duration)], total: Duration) -> Outcome {
    let mut problems = Vec::new();
    for (row, (cv, took)) in rows.iter().zip(runs) {
        let name = label(&row.cell);
        println!(
            "  {name}: direct {} ansatz {} expected {} in {:.2}s",
            cv.direct.dimension,
            cv.ansatz.dimension,
            row.expected,
            took.as_secs_f64()
        );
        if cv.direct.dimension != row.expected || cv.ansatz.dimension != row.expected {
            problems.push(format!("{name} dimension"));
        }
        if expected_dimension(&row.cell) != Some(row.expected) {
            problems.push(format!("{name} reference formula"));
        }
        if *took > CELL_LIMIT {
            problems.push(format!("{name} took {:.0}s", took.as_secs_f64()));
        }
        if !row.span.is_empty() {
            let r_bound = cv.direct.bounds.r_bound;
            let encoded: Vec<CandidateOperator> = row
                .span
                .iter()
                .map(|op| CandidateOperator::encode(row.cell, r_bound, |d| op.apply(d)).expect("encodable"))
                .collect();
            if !same_span(&cv.direct.basis, &encoded) {
                problems.push(format!("{name} span"));
            }
        }
    }
    if total > SUITE_LIMIT {
        problems.push(format!("suite took {:.0}s", total.as_secs_f64()));
    }
    Outcome {
        ok: problems.is_empty(),
        detail: if problems.is_empty() {
            format!("{} cells, both paths, {:.1}s total", rows.len(), total.as_secs_f64())
        } else {
            problems.join("; ")
        },
    }
}

fn criterion_2(runs: &[(CrossValidation, Duration)]) -> Outcome {
    let bad: Vec<String> = runs
        .iter()
        .filter(|(cv, _)| !cv.agree)
        .map(|(cv, _)| format!("{} {}", label(&cv.cell), cv.differences.join(", ")))
        .collect();
    Outcome {
        ok: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{} cells agree in dimension and span", runs.len())
        } else {
            bad.join("; ")
        },
    }
}

fn from_reports(reports: &[(PropertyReport, usize)]) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (r, min) in reports {
        let good = r.passed() && r.instances >= *min;
        ok &= good;
        parts.push(format!("{} {}/{}", r.name, r.instances - r.failures.len(), r.instances));
        for f in r.failures.iter().take(3) {
            println!("  {}: {f}", r.name);
        }
    }
    Outcome { ok, detail: parts.join(", ") }
}

fn criterion_8(rows: &[Row], runs: &[(CrossValidation, Duration)]) -> Outcome {
    let mut problems = Vec::new();
    for (row, (cv, _)) in rows.iter().zip(runs) {
        let c = row.cell;
        let r = cv.direct.bounds.r_bound;
        let g = cv.direct.bounds.g;
        let base = cv.direct.dimension;
        let variants = [
            ("R+1", direct_dimension(c, r + 1, 0, g)),
            ("g+1", direct_dimension(c, r, 0, g + 1)),
            ("x_deg 1", direct_dimension(c, r, 1, g)),
        ];
        for (what, dim) in variants {
            if dim != base {
                problems.push(format!("{} {what}: {base} -> {dim}", label(&c)));
            }
        }
        if !cv.direct.stabilized || !cv.ansatz.stabilized {
            problems.push(format!("{} not stabilized", label(&c)));
        }
    }
    Outcome {
        ok: problems.is_empty(),
        detail: if problems.is_empty() {
            format!("{} cells unchanged under R+1, g+1 and x_deg 1", rows.len())
        } else {
            problems.join("; ")
        },
    }
}

fn run_binary(args: &[&str], threads: &str) -> Result<Vec<u8>, String> {
    let output = Command::new(env!("CARGO_BIN_EXE_equivar"))
        .args(args)
        .env("EQUIVAR_THREADS", threads)
        .output()
        .map_err(|e| e.to_string())?;
    if !output.status.success() {
        return Err(format!("{args:?} exited with {:?}", output.status.code()));
    }
    Ok(output.stdout)
}

fn criterion_9() -> Outcome {
    let seed = SEED.to_string();
    let jobs: [Vec<&str>; 2] = [
        vec![
            "classify",
            "--m",
            "3",
            "--p",
            "0..1",
            "--q-offset",
            "-1,0,1",
            "--k",
            "0..2",
            "--path",
            "both",
            "--seed",
            &seed,
        ],
        vec!["props", "--count", "20", "--seed", &seed, "--format", "json"],
    ];
    let mut problems = Vec::new();
    for args in &jobs {
        let runs: Vec<Result<Vec<u8>, String>> = ["4", "4", "1"].iter().map(|t| run_binary(args, t)).collect();
        match (&runs[0], &runs[1], &runs[2]) {
            (Ok(a), Ok(b), Ok(c)) => {
                if a.is_empty() || a != b || a != c {
                    problems.push(format!("{} output differs between runs", args[0]));
                }
            }
            _ => problems.extend(runs.iter().filter_map(|r| r.as_ref().err().cloned())),
        }
    }
    Outcome {
        ok: problems.is_empty(),
        detail: if problems.is_empty() {
            "classify and props output byte-identical across runs and thread counts".into()
        } else {
            problems.join("; ")
        },
    }
}

fn main() {
    let rows = table();
    let start = Instant::now();
    let runs: Vec<(CrossValidation, Duration)> = rows
        .iter()
        .map(|row| {
            let t = Instant::now();
            let cv = cross_validate(row.cell, &DirectOptions::default(), &AnsatzOptions::default())
                .unwrap_or_else(|e| panic!("{}: {e}", label(&row.cell)));
            (cv, t.elapsed())
        })
        .collect();
    let total = start.elapsed();

    let mut outcomes = vec![criterion_1(&rows, &runs, total), criterion_2(&runs)];
    outcomes
        .push(from_reports(&[(properties::lie_equivalence(SEED, 100), 100), (properties::lie_action(SEED, 50), 50)]));
    outcomes.push(from_reports(&[(properties::principal_symbol_equivariance(SEED, 50), 50)]));
    let canonical: Vec<(PropertyReport, usize)> =
        CanonicalOp::ALL.iter().map(|op| (properties::canonical_equivariance(*op, SEED, 50, 3), 50)).collect();
    outcomes.push(from_reports(&canonical));
    outcomes.push(from_reports(&[
        (properties::k_decomposition_independence(SEED, 50), 50),
        (properties::k20_decomposition_independence(SEED, 50), 50),
    ]));
    outcomes.push(from_reports(&[(properties::dstar_k_routes(SEED, 50), 50)]));
    outcomes.push(criterion_8(&rows, &runs));
    outcomes.push(criterion_9());

    for (i, outcome) in outcomes.iter().enumerate() {
        report(i + 1, outcome);
    }
    let failed = outcomes.iter().filter(|o| !o.ok).count();
    println!("acceptance: {} of {} criteria passed", outcomes.len() - failed, outcomes.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
