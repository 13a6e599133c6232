//! Direct solver: exact kernel of the equivariance constraints on the
//! weight-zero candidate space, built up one generator degree at a time.

use super::candidate::{weight_zero_columns, CandidateOperator, Cell, ColumnKey};
use super::constraints::{generators_of_degree, reduce, Basis, Engine, RowMode, Stage};
use super::linalg::rref_rows;
use super::result::{Bounds, ClassificationResult, SolverPath};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DirectOptions {
    /// Jet order read by candidates; `None` means `k + ℓ + 2`.
    pub r_bound: Option<usize>,
    pub x_deg: usize,
    /// Top generator degree imposed before the `g + 1` check.
    pub g: usize,
    /// Whether to recompute with `R + 1` when that adds coordinates.
    pub check_r: bool,
}

impl Default for DirectOptions {
    fn default() -> Self {
        Self { r_bound: None, x_deg: 0, g: 2, check_r: true }
    }
}

impl DirectOptions {
    pub fn r_for(&self, cell: &Cell) -> usize {
        self.r_bound.unwrap_or(cell.k + cell.l + 2)
    }
}

/// Kernel vectors over the engine columns after stages `0..=g`.
struct Solved {
    engine: Engine,
    basis: Basis,
}

fn mode_for(engine: &Engine, basis: &Basis) -> RowMode {
    let support = basis.support(engine.cols.len());
    let constant = engine.cols.iter().zip(&support).all(|(c, s)| !s || c.gamma.is_zero());
    if constant {
        RowMode::TranslationReduced
    } else {
        RowMode::Full
    }
}

fn run_stage(engine: &Engine, basis: &Basis, degree: usize) -> Basis {
    let gens = generators_of_degree(engine.cell.m, degree);
    reduce(engine, basis, &Stage { generators: &gens, mode: mode_for(engine, basis) })
}

fn solve(cell: Cell, r_bound: usize, x_deg: usize, g: usize) -> Solved {
    let engine = Engine::new(cell, weight_zero_columns(&cell, r_bound, x_deg));
    let mut basis = Basis::identity(engine.cols.len());
    for degree in 0..=g {
        basis = run_stage(&engine, &basis, degree);
    }
    Solved { engine, basis }
}

fn to_candidates(
    cell: Cell,
    r_bound: usize,
    x_deg: usize,
    cols: &[ColumnKey],
    basis: &Basis,
) -> Vec<CandidateOperator> {
    rref_rows(basis.vectors.clone())
        .into_iter()
        .map(|v| {
            CandidateOperator::from_terms(cell, r_bound, x_deg, v.into_iter().map(|(j, c)| (cols[j], c)))
                .expect("columns fit the cell")
        })
        .collect()
}

pub fn classify_direct(cell: Cell, opts: &DirectOptions) -> Result<ClassificationResult> {
    let r_bound = opts.r_for(&cell);
    let Solved { engine, basis } = solve(cell, r_bound, opts.x_deg, opts.g);
    let mut notes = Vec::new();
    let mut stabilized = true;

    let checked = run_stage(&engine, &basis, opts.g + 1);
    if checked.vectors.len() != basis.vectors.len() {
        stabilized = false;
        notes.push(format!(
            "generator degree {} gives dimension {}, degree {} gives {}",
            opts.g,
            basis.vectors.len(),
            opts.g + 1,
            checked.vectors.len()
        ));
    }

    if opts.check_r {
        let wider = weight_zero_columns(&cell, r_bound + 1, opts.x_deg);
        if wider != engine.cols {
            let dim_wider = solve(cell, r_bound + 1, opts.x_deg, opts.g).basis.vectors.len();
            if dim_wider != basis.vectors.len() {
                stabilized = false;
                notes.push(format!(
                    "jet order {} gives dimension {}, order {} gives {}",
                    r_bound,
                    basis.vectors.len(),
                    r_bound + 1,
                    dim_wider
                ));
            }
        }
    }

    let basis = to_candidates(cell, r_bound, opts.x_deg, &engine.cols, &checked);
    Ok(ClassificationResult {
        cell,
        dimension: basis.len(),
        basis,
        path: SolverPath::Direct,
        bounds: Bounds { r_bound, x_deg: opts.x_deg, g: opts.g },
        stabilized,
        borderline: cell.borderline(),
        notes,
    })
}

/// Kernel dimension of the constraints restricted to the given columns, for
/// comparing truncations.
pub fn direct_dimension(cell: Cell, r_bound: usize, x_deg: usize, g: usize) -> usize {
    solve(cell, r_bound, x_deg, g).basis.vectors.len()
}
