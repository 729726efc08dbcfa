//! Corpus-level computations shared by the CLI and tests.
//!
//! Per-thread work runs on the current rayon pool; results are collected in
//! input order so output never depends on the degree of parallelism.

use rayon::prelude::*;
use threadmotif_core::metrics::lower_median;
use threadmotif_core::stats::{assign_bins, classify_expression, fit_null_model, z_scores, ClassExpression};
use threadmotif_core::{
    census_fast, census_naive, completion_fractions, motif_instances, BinSpec, BranchingMode, Census,
    ClassId, ClassTable, Error, MacroRecord, Thread, UserGraph, ZReport,
};

use crate::report::{CensusRow, TimingRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CensusMode {
    #[default]
    Fast,
    Naive,
}

pub fn census_of(g: &UserGraph, table: &ClassTable, mode: CensusMode) -> Census {
    match mode {
        CensusMode::Fast => census_fast(g, table),
        CensusMode::Naive => census_naive(g, table),
    }
}

/// Macro metrics per thread; failures carry the thread id.
pub fn macro_records(threads: &[Thread], mode: BranchingMode) -> Vec<Result<MacroRecord, (String, Error)>> {
    threads
        .par_iter()
        .map(|t| MacroRecord::compute(t, mode).map_err(|e| (t.thread_id().to_string(), e)))
        .collect()
}

pub fn census_rows(threads: &[Thread], table: &ClassTable, mode: CensusMode) -> Vec<CensusRow> {
    threads
        .par_iter()
        .map(|t| CensusRow {
            thread_id: t.thread_id().to_string(),
            source: t.source().to_string(),
            census: census_of(&UserGraph::from_thread(t), table, mode),
        })
        .collect()
}

/// Bins both corpora, fits the baseline null model, scores the focus corpus
/// and labels every cell.
pub fn compare(
    focus: &[Census],
    baseline: &[Census],
    bins: &BinSpec,
    rarity_threshold: f64,
) -> (ZReport, Vec<ClassExpression>) {
    let null = fit_null_model(&assign_bins(baseline, bins));
    let mut report = z_scores(&assign_bins(focus, bins), &null);
    let summary = classify_expression(&mut report, rarity_threshold);
    (report, summary)
}

/// Completion fractions of every instance of `class`, plus their lower median.
pub fn timing(
    threads: &[Thread],
    table: &ClassTable,
    class: ClassId,
) -> Result<(Vec<TimingRow>, Option<f64>), Error> {
    let per_thread: Vec<Result<Vec<TimingRow>, Error>> = threads
        .par_iter()
        .map(|t| {
            let g = UserGraph::from_thread(t);
            let (t0, t1) = t.lifetime();
            let fractions = completion_fractions(&g, table, class, t0, t1)?;
            let pairs = motif_instances(&g, table, class);
            Ok(pairs
                .into_iter()
                .zip(fractions)
                .map(|((v, w), fraction)| TimingRow {
                    thread_id: t.thread_id().to_string(),
                    node_a: g.label(v).to_string(),
                    node_b: g.label(w).to_string(),
                    fraction,
                })
                .collect())
        })
        .collect();
    let mut rows = Vec::new();
    for r in per_thread {
        rows.extend(r?);
    }
    let mut fractions: Vec<f64> = rows.iter().map(|r| r.fraction).collect();
    fractions.sort_by(f64::total_cmp);
    let median = lower_median(&fractions);
    Ok((rows, median))
}
