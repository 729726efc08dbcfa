//! Line-delimited JSON thread dumps.
//!
//! ```text
//! {"thread_id":"t1","source":"focus","posts":[{"id":"a","parent":null,"author":"op","t":100}, ...]}
//! ```

use std::fs::File;
use std::io::{self, BufRead, BufReader};
use std::path::Path;

use serde::{Deserialize, Serialize};
use threadmotif_core::{Post, Source, Thread};

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: threadmotif_core::Error,
    },
    #[error("line {line}: {source}")]
    Io {
        line: usize,
        #[source]
        source: io::Error,
    },
}

impl CorpusError {
    pub fn line(&self) -> usize {
        match self {
            CorpusError::Parse { line, .. }
            | CorpusError::Invalid { line, .. }
            | CorpusError::Io { line, .. } => *line,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPost {
    id: String,
    parent: Option<String>,
    author: String,
    t: i64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawThread {
    thread_id: String,
    source: String,
    posts: Vec<RawPost>,
}

/// Iterator over the threads of a dump. Blank lines are skipped; every
/// other line yields either a thread or an error carrying its line number.
pub struct CorpusReader<R> {
    lines: io::Lines<R>,
    line: usize,
}

pub fn parse_corpus<R: BufRead>(reader: R) -> CorpusReader<R> {
    CorpusReader {
        lines: reader.lines(),
        line: 0,
    }
}

impl<R: BufRead> Iterator for CorpusReader<R> {
    type Item = Result<Thread, CorpusError>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let text = self.lines.next()?;
            self.line += 1;
            let line = self.line;
            let text = match text {
                Ok(t) => t,
                Err(source) => return Some(Err(CorpusError::Io { line, source })),
            };
            if text.trim().is_empty() {
                continue;
            }
            return Some(parse_line(&text, line));
        }
    }
}

fn parse_line(text: &str, line: usize) -> Result<Thread, CorpusError> {
    let raw: RawThread = serde_json::from_str(text).map_err(|e| CorpusError::Parse {
        line,
        message: e.to_string(),
    })?;
    let source: Source = raw
        .source
        .parse()
        .map_err(|message| CorpusError::Parse { line, message })?;
    let posts = raw
        .posts
        .into_iter()
        .map(|p| Post {
            id: p.id,
            parent: p.parent,
            author: p.author,
            t: p.t,
        })
        .collect();
    Thread::new(raw.thread_id, source, posts).map_err(|source| CorpusError::Invalid { line, source })
}

/// Serializes a thread to one dump line (no trailing newline).
pub fn to_json_line(thread: &Thread) -> String {
    let raw = RawThread {
        thread_id: thread.thread_id().to_string(),
        source: thread.source().as_str().to_string(),
        posts: thread
            .posts()
            .iter()
            .map(|p| RawPost {
                id: p.id.clone(),
                parent: p.parent.clone(),
                author: p.author.clone(),
                t: p.t,
            })
            .collect(),
    };
    serde_json::to_string(&raw).expect("thread serializes")
}

/// Reads a whole dump, separating valid threads from per-line errors.
pub fn read_corpus(path: &Path) -> io::Result<(Vec<Thread>, Vec<CorpusError>)> {
    let file = File::open(path)?;
    let mut threads = Vec::new();
    let mut errors = Vec::new();
    for item in parse_corpus(BufReader::new(file)) {
        match item {
            Ok(t) => threads.push(t),
            Err(e) => errors.push(e),
        }
    }
    Ok((threads, errors))
}
