//! Exact-cover search for index-1 `(r,s)`-designs, an exhaustive subset
//! oracle for tiny instances, and minimality reports.

mod brute;
mod cover;
mod dlx;

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rayon::prelude::*;

pub use brute::{brute_force_count, BRUTE_FORCE_CAP};
pub use cover::{CoverProblem, INCIDENCE_CAP};
use dlx::{Dlx, Limits, Outcome};

use crate::designs::{verify_rs_design, DesignArray};
use crate::error::{Error, Result};
use crate::exactmath::{fisher_bound, natural_bound, to_integer, IndexPair, Rat, SchemeParams};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Search-tree nodes allowed before giving up.
    pub budget: u64,
    /// Worker threads; 1 runs the serial search.
    pub jobs: usize,
    /// Fix the lexicographically smallest vertex as the first row.
    pub symmetry: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: DEFAULT_BUDGET, jobs: 1, symmetry: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStatus {
    Found,
    Exhausted,
    BudgetExceeded,
}

impl std::fmt::Display for SearchStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SearchStatus::Found => "found",
            SearchStatus::Exhausted => "exhausted",
            SearchStatus::BudgetExceeded => "budget_exceeded",
        })
    }
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub solution: Option<DesignArray>,
    pub nodes_explored: u64,
    pub wall_time: Duration,
    pub status: SearchStatus,
}

/// The natural bound as an integer, or `NonIntegralBound`.
fn integral_bound(params: &SchemeParams, r: usize, s: usize) -> Result<BigInt> {
    let bound = natural_bound(params, r, s)?;
    to_integer(&bound).ok_or(Error::NonIntegralBound(bound))
}

/// Searches for an index-1 `(r, s)`-design by dancing links, branching on
/// the constraint with fewest remaining candidates (lowest index on ties)
/// and trying candidates in lexicographic order. With `jobs > 1` the
/// top-level branches run on separate workers and the lowest successful
/// branch wins, so the reported solution matches the serial one whenever
/// the budget suffices for both.
pub fn exact_cover_search(params: &SchemeParams, r: usize, s: usize, opts: &SearchOptions) -> Result<SearchResult> {
    integral_bound(params, r, s)?;
    let start = Instant::now();
    let problem = CoverProblem::new(params, r, s)?;
    let incidence: Vec<Vec<usize>> = (0..problem.candidates().len()).map(|i| problem.covered_by(i).to_vec()).collect();
    let mut dlx = Dlx::new(problem.constraint_count(), &incidence);
    let mut prefix = Vec::new();
    if opts.symmetry && !incidence.is_empty() {
        dlx.force_row(0);
        prefix.push(0);
    }
    let nodes = AtomicU64::new(0);

    let (outcome, rows) = if opts.jobs <= 1 {
        let limits = Limits { budget: opts.budget, nodes: &nodes, cancel: None };
        let mut sol = prefix.clone();
        let out = dlx.search_first(&mut sol, &limits);
        (out, sol)
    } else {
        parallel_first(&dlx, &prefix, opts, &nodes)?
    };

    let status = match outcome {
        Outcome::Found => SearchStatus::Found,
        Outcome::Exhausted => SearchStatus::Exhausted,
        Outcome::OutOfBudget | Outcome::Cancelled => SearchStatus::BudgetExceeded,
    };
    let solution = if status == SearchStatus::Found {
        let mut rows = rows;
        rows.sort_unstable();
        let vectors = rows.iter().map(|&i| problem.candidates()[i].clone()).collect();
        let design = DesignArray::from_vectors(params.clone(), vectors)?;
        let report = verify_rs_design(&design, r, s)?;
        if report.lambda != Some(1) {
            return Err(Error::Internal(format!("search returned a non-design: {report:?}")));
        }
        Some(design)
    } else {
        None
    };
    Ok(SearchResult {
        solution,
        nodes_explored: nodes.load(Ordering::Relaxed).min(opts.budget),
        wall_time: start.elapsed(),
        status,
    })
}

fn parallel_first(dlx: &Dlx, prefix: &[usize], opts: &SearchOptions, nodes: &AtomicU64) -> Result<(Outcome, Vec<usize>)> {
    let Some(c) = dlx.choose_column() else {
        return Ok((Outcome::Found, prefix.to_vec()));
    };
    let branches = dlx.column_rows(c);
    let best = AtomicUsize::new(usize::MAX);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    let results: Vec<(Outcome, Vec<usize>)> = pool.install(|| {
        branches
            .par_iter()
            .enumerate()
            .map(|(k, &node)| {
                let limits = Limits { budget: opts.budget, nodes, cancel: Some((&best, k)) };
                let mut local = dlx.clone();
                local.commit(c, node);
                let mut sol = prefix.to_vec();
                sol.push(local.row_of(node));
                let out = local.search_first(&mut sol, &limits);
                if out == Outcome::Found {
                    best.fetch_min(k, Ordering::Relaxed);
                }
                (out, sol)
            })
            .collect()
    });
    for (out, sol) in results {
        match out {
            Outcome::Exhausted => continue,
            other => return Ok((other, sol)),
        }
    }
    Ok((Outcome::Exhausted, Vec::new()))
}

/// Number of index-1 `(r, s)`-designs, counted by running the exact-cover
/// search to exhaustion; `None` when the node budget runs out.
pub fn count_all_solutions(params: &SchemeParams, r: usize, s: usize, budget: u64) -> Result<Option<u64>> {
    if integral_bound(params, r, s).is_err() {
        return Ok(Some(0));
    }
    let problem = CoverProblem::new(params, r, s)?;
    let incidence: Vec<Vec<usize>> = (0..problem.candidates().len()).map(|i| problem.covered_by(i).to_vec()).collect();
    let nodes = AtomicU64::new(0);
    let limits = Limits { budget, nodes: &nodes, cancel: None };
    Ok(Dlx::new(problem.constraint_count(), &incidence).count_all(&limits))
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinimalityReport {
    pub size: usize,
    pub lambda: u64,
    pub natural_bound: Rat,
    /// Only for `r <= m` and `(r, s)` in `L` other than `(0, 0)`.
    pub fisher_bound: Option<BigInt>,
    pub minimal: bool,
}

/// Compares `|Y|` with the natural and Fisher-type bounds. `Y` must be an
/// `(r, s)`-design; it is minimal exactly when its index is 1.
pub fn verify_minimality(y: &DesignArray, r: usize, s: usize) -> Result<MinimalityReport> {
    let report = verify_rs_design(y, r, s)?;
    let lambda = match report.lambda {
        Some(l) if report.is_design => l,
        _ => return Err(Error::Precondition(format!("not an ({r},{s})-design"))),
    };
    let params = y.params();
    let rs = IndexPair::new(r, s);
    let fisher = (r <= params.m() && params.in_l(rs) && rs != IndexPair::ZERO)
        .then(|| fisher_bound(params, r, s))
        .transpose()?;
    Ok(MinimalityReport {
        size: y.len(),
        lambda,
        natural_bound: natural_bound(params, r, s)?,
        fisher_bound: fisher,
        minimal: lambda == 1,
    })
}
