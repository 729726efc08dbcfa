//! CSV layouts for every output file.
//!
//! Reals are rendered fixed-point with six decimals. Column orders are fixed.

use std::io::{Read, Write};

use threadmotif_core::graph::DegreeReport;
use threadmotif_core::stats::ZReport;
use threadmotif_core::{BinSpec, Census, ClassTable, MacroRecord, NUM_CLASSES};

pub type CsvResult<T> = Result<T, csv::Error>;

pub fn real(x: f64) -> String {
    format!("{x:.6}")
}

pub const MACRO_HEADER: [&str; 7] = [
    "thread_id",
    "n_posts",
    "n_users",
    "responsiveness_median_s",
    "reciprocity",
    "op_betweenness",
    "branching_factor",
];

/// Pulls one metric value out of a record.
pub type Extractor = fn(&MacroRecord) -> f64;

/// Metric columns that get an ECDF file, with the value extractor.
pub const MACRO_METRICS: [(&str, Extractor); 4] = [
    ("responsiveness_median_s", |r| r.responsiveness_median as f64),
    ("reciprocity", |r| r.reciprocity),
    ("op_betweenness", |r| r.op_betweenness),
    ("branching_factor", |r| r.branching_factor),
];

pub fn ecdf_file_name(metric: &str) -> String {
    format!("ecdf_{metric}.csv")
}

pub fn write_macro<W: Write>(out: W, records: &[MacroRecord]) -> CsvResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(MACRO_HEADER)?;
    for r in records {
        w.write_record([
            r.thread_id.clone(),
            r.n_posts.to_string(),
            r.n_users.to_string(),
            r.responsiveness_median.to_string(),
            real(r.reciprocity),
            real(r.op_betweenness),
            real(r.branching_factor),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// `points` are `(value, cumulative fraction)`.
pub fn write_ecdf<W: Write>(out: W, points: impl IntoIterator<Item = (f64, f64)>) -> CsvResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["value", "cum_fraction"])?;
    for (x, f) in points {
        w.write_record([real(x), real(f)])?;
    }
    w.flush()?;
    Ok(())
}

/// One line of `census.csv`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRow {
    pub thread_id: String,
    pub source: String,
    pub census: Census,
}

pub fn census_header(table: &ClassTable) -> Vec<String> {
    ["thread_id", "source", "n_users", "bin"]
        .into_iter()
        .map(String::from)
        .chain(table.names())
        .collect()
}

pub fn write_census<W: Write>(
    out: W,
    rows: &[CensusRow],
    table: &ClassTable,
    bins: &BinSpec,
) -> CsvResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(census_header(table))?;
    for r in rows {
        let bin = bins
            .bin_of(r.census.n_users)
            .map(|b| bins.ranges()[b].to_string())
            .unwrap_or_default();
        let mut record = vec![
            r.thread_id.clone(),
            r.source.clone(),
            r.census.n_users.to_string(),
            bin,
        ];
        record.extend(r.census.counts.iter().map(u64::to_string));
        w.write_record(record)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, thiserror::Error)]
pub enum CensusReadError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("column {index}: expected {expected:?}, found {found:?}")]
    Schema {
        index: usize,
        expected: String,
        found: String,
    },
    #[error("row {row}: bad value {value:?} in column {column:?}")]
    Value {
        row: usize,
        column: String,
        value: String,
    },
}

/// Reads a census file, checking that the header matches the class table
/// column for column.
pub fn read_census<R: Read>(input: R, table: &ClassTable) -> Result<Vec<CensusRow>, CensusReadError> {
    let mut r = csv::Reader::from_reader(input);
    let expected = census_header(table);
    let found: Vec<String> = r.headers()?.iter().map(String::from).collect();
    for i in 0..expected.len().max(found.len()) {
        let (e, f) = (expected.get(i), found.get(i));
        if e != f {
            return Err(CensusReadError::Schema {
                index: i + 1,
                expected: e.cloned().unwrap_or_else(|| "<end of header>".into()),
                found: f.cloned().unwrap_or_else(|| "<missing>".into()),
            });
        }
    }
    let mut rows = Vec::new();
    for (i, record) in r.records().enumerate() {
        let record = record?;
        let bad = |col: usize| CensusReadError::Value {
            row: i + 1,
            column: expected[col].clone(),
            value: record.get(col).unwrap_or("").to_string(),
        };
        let n_users = record[2].parse().map_err(|_| bad(2))?;
        let mut census = Census::empty(n_users);
        for k in 0..NUM_CLASSES {
            census.counts[k] = record[4 + k].parse().map_err(|_| bad(4 + k))?;
        }
        rows.push(CensusRow {
            thread_id: record[0].to_string(),
            source: record[1].to_string(),
            census,
        });
    }
    Ok(rows)
}

pub const COMPARE_HEADER: [&str; 13] = [
    "bin",
    "class",
    "M",
    "mu_null",
    "sigma_null",
    "se_null",
    "N",
    "mean_focus",
    "sigma_focus",
    "se_focus",
    "z",
    "label",
    "reason",
];

/// Undefined moments and Z are written as empty fields; `reason` explains
/// an undefined Z.
pub fn write_compare<W: Write>(out: W, report: &ZReport, table: &ClassTable) -> CsvResult<()> {
    let names = table.names();
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COMPARE_HEADER)?;
    for cell in &report.cells {
        let moments = |m: Option<threadmotif_core::stats::Moments>| match m {
            Some(m) => [
                m.n.to_string(),
                real(m.mean),
                real(m.sd),
                real(m.standard_error()),
            ],
            None => ["0".into(), String::new(), String::new(), String::new()],
        };
        let mut record = vec![
            report.spec.ranges()[cell.bin].to_string(),
            names[cell.class].clone(),
        ];
        record.extend(moments(cell.null));
        record.extend(moments(cell.focus));
        match cell.z {
            Ok(z) => record.extend([real(z), label(cell), String::new()]),
            Err(u) => record.extend([String::new(), label(cell), u.reason().to_string()]),
        }
        w.write_record(record)?;
    }
    w.flush()?;
    Ok(())
}

fn label(cell: &threadmotif_core::stats::ZCell) -> String {
    cell.label.map(|l| l.as_str().to_string()).unwrap_or_default()
}

/// One completed motif instance.
#[derive(Debug, Clone, PartialEq)]
pub struct TimingRow {
    pub thread_id: String,
    pub node_a: String,
    pub node_b: String,
    pub fraction: f64,
}

/// Instance rows followed by a `median` summary row (empty without instances).
pub fn write_timing<W: Write>(out: W, rows: &[TimingRow], median: Option<f64>) -> CsvResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["thread_id", "node_a", "node_b", "fraction"])?;
    for r in rows {
        w.write_record([&r.thread_id, &r.node_a, &r.node_b, &real(r.fraction)])?;
    }
    w.write_record(["median", "", "", &median.map(real).unwrap_or_default()])?;
    w.flush()?;
    Ok(())
}

/// Per-node degrees; `node` is `<thread_id>/<node label>`.
pub fn write_degrees<'a, W: Write>(
    out: W,
    reports: impl IntoIterator<Item = (&'a str, &'a [String], &'a DegreeReport)>,
) -> CsvResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["graph", "node", "in_degree", "out_degree"])?;
    for (thread_id, labels, d) in reports {
        for (i, label) in labels.iter().enumerate() {
            w.write_record([
                d.kind.as_str().to_string(),
                format!("{thread_id}/{label}"),
                d.in_degree[i].to_string(),
                d.out_degree[i].to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Corpus-wide degree histograms; `reports` may mix graph kinds.
pub fn write_degree_histogram<'a, W: Write>(
    out: W,
    reports: impl IntoIterator<Item = &'a DegreeReport>,
) -> CsvResult<()> {
    use std::collections::BTreeMap;
    let mut hist: BTreeMap<(&str, &str, usize), usize> = BTreeMap::new();
    for d in reports {
        for (kind, h) in [("in", &d.in_histogram), ("out", &d.out_histogram)] {
            for (&deg, &count) in h {
                *hist.entry((d.kind.as_str(), kind, deg)).or_default() += count;
            }
        }
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["graph", "degree_kind", "degree", "count"])?;
    // user rows before reply rows
    let mut entries: Vec<_> = hist.into_iter().collect();
    entries.sort_by_key(|((g, k, d), _)| (*g != "user", *k, *d));
    for ((graph, kind, deg), count) in entries {
        w.write_record([graph, kind, &deg.to_string(), &count.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Text table for the `classes` command.
pub fn write_classes<W: Write>(out: W, table: &ClassTable) -> CsvResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["class", "config1", "config2", "M", "A", "N"])?;
    for c in table.iter() {
        let (m, a, n) = c.man();
        w.write_record([
            c.name(),
            c.members[0].to_string(),
            c.members.get(1).map(ToString::to_string).unwrap_or_default(),
            m.to_string(),
            a.to_string(),
            n.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
