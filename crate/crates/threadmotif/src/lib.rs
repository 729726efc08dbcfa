//! Corpus ingestion, CSV reports and command-line pipelines on top of
//! `threadmotif-core`.
//!
//! Corpora are line-delimited JSON, one thread per line. Every pipeline
//! reads files and writes CSV files, so stages compose through the file
//! system: `census` output from two corpora feeds `compare`.

pub mod cli;
pub mod corpus;
pub mod pipeline;
pub mod report;

pub use corpus::{parse_corpus, read_corpus, to_json_line, CorpusError};
