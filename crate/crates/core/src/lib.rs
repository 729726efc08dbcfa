//! Core algorithms for structural analysis of threaded conversations.
//!
//! The crate turns a validated [`thread::Thread`] into two graph views, a
//! reply tree ([`graph::ReplyGraph`]) and a directed user interaction graph
//! ([`graph::UserGraph`]) anchored on the thread's original poster. On top
//! of those it provides per-thread structural metrics ([`metrics`]), the 36
//! anchored triad classes and their census ([`triad`], [`census`]), and the
//! binned null-model comparison used to flag over- and under-expressed
//! classes ([`stats`]).
//!
//! Everything here is `no_std` with `alloc`. Parsing corpus dumps, writing
//! reports and the command line live in the `threadmotif` crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod census;
pub mod error;
pub mod graph;
pub mod metrics;
pub mod stats;
pub mod thread;
pub mod triad;

pub use census::{census_fast, census_naive, completion_fractions, motif_instances, Census};
pub use error::{Error, ThreadDefect};
pub use graph::{DegreeReport, GraphKind, ReplyGraph, UserGraph};
pub use metrics::{BranchingMode, Ecdf, MacroRecord};
pub use stats::{BinSpec, Binned, Expression, NullModel, ZReport};
pub use thread::{FilterPolicy, Post, Source, Thread, Timestamp};
pub use triad::{ClassId, ClassTable, Dyad, TriadConfig, TriadType};

/// Number of anchored triad classes.
pub const NUM_CLASSES: usize = 36;
