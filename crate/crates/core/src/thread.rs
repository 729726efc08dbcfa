//! Threads of posts, their validation, and corpus filtering.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, ThreadDefect};

/// Unix seconds.
pub type Timestamp = i64;

/// Which corpus a thread belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Source {
    Focus,
    Baseline,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Source::Focus => "focus",
            Source::Baseline => "baseline",
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Source {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "focus" => Ok(Source::Focus),
            "baseline" => Ok(Source::Baseline),
            other => Err(alloc::format!("unknown source {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Post {
    pub id: String,
    /// `None` only for the root post.
    pub parent: Option<String>,
    pub author: String,
    pub t: Timestamp,
}

impl Post {
    pub fn new(id: &str, parent: Option<&str>, author: &str, t: Timestamp) -> Self {
        Post {
            id: id.to_string(),
            parent: parent.map(ToString::to_string),
            author: author.to_string(),
            t,
        }
    }
}

/// A validated conversation thread: one root post and a tree of replies.
///
/// Construction through [`Thread::new`] is the only way to obtain a value,
/// so every `Thread` has unique non-empty post ids, exactly one root, and
/// parent links that reach the root from every post.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thread {
    thread_id: String,
    source: Source,
    posts: Vec<Post>,
    root: usize,
    parents: Vec<Option<usize>>,
}

impl Thread {
    pub fn new(
        thread_id: impl Into<String>,
        source: Source,
        posts: Vec<Post>,
    ) -> Result<Self, Error> {
        let thread_id = thread_id.into();
        match resolve_tree(&posts) {
            Ok((root, parents)) => Ok(Thread {
                thread_id,
                source,
                posts,
                root,
                parents,
            }),
            Err(defect) => Err(Error::InvalidThread { thread_id, defect }),
        }
    }

    pub fn thread_id(&self) -> &str {
        &self.thread_id
    }

    pub fn source(&self) -> Source {
        self.source
    }

    pub fn posts(&self) -> &[Post] {
        &self.posts
    }

    pub fn len(&self) -> usize {
        self.posts.len()
    }

    /// Always false for a constructed thread; present for API symmetry.
    pub fn is_empty(&self) -> bool {
        self.posts.is_empty()
    }

    /// Index of the root post in [`Thread::posts`].
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn root_post(&self) -> &Post {
        &self.posts[self.root]
    }

    /// Index of the parent of post `i`, `None` for the root.
    pub fn parent_of(&self, i: usize) -> Option<usize> {
        self.parents[i]
    }

    /// `(t0, t1)`: root timestamp and latest timestamp over all posts.
    ///
    /// Timestamps are taken as observed, so a backdated root can yield
    /// `t1 > t0` from later posts while a root carrying the latest clock
    /// yields `t1 == t0`.
    pub fn lifetime(&self) -> (Timestamp, Timestamp) {
        let t0 = self.posts[self.root].t;
        let t1 = self.posts.iter().map(|p| p.t).max().unwrap_or(t0);
        (t0, t1)
    }
}

fn resolve_tree(posts: &[Post]) -> Result<(usize, Vec<Option<usize>>), ThreadDefect> {
    if posts.is_empty() {
        return Err(ThreadDefect::Empty);
    }
    let mut index = BTreeMap::new();
    for (i, p) in posts.iter().enumerate() {
        if p.id.is_empty() {
            return Err(ThreadDefect::EmptyPostId);
        }
        if index.insert(p.id.as_str(), i).is_some() {
            return Err(ThreadDefect::DuplicatePostId(p.id.clone()));
        }
    }

    let mut root = None;
    let mut parents = Vec::with_capacity(posts.len());
    for (i, p) in posts.iter().enumerate() {
        match &p.parent {
            None => {
                if let Some(r) = root {
                    let first: &Post = &posts[r];
                    return Err(ThreadDefect::MultipleRoots(first.id.clone(), p.id.clone()));
                }
                root = Some(i);
                parents.push(None);
            }
            Some(parent) => match index.get(parent.as_str()) {
                Some(&j) => parents.push(Some(j)),
                None => {
                    return Err(ThreadDefect::OrphanParent {
                        post: p.id.clone(),
                        parent: parent.clone(),
                    })
                }
            },
        }
    }
    let root = root.ok_or(ThreadDefect::NoRoot)?;

    // With a single root and resolved parents, any post not reachable from
    // the root sits on a parent cycle.
    let mut children = vec![Vec::new(); posts.len()];
    for (i, p) in parents.iter().enumerate() {
        if let Some(j) = p {
            children[*j].push(i);
        }
    }
    let mut seen = vec![false; posts.len()];
    let mut stack = vec![root];
    seen[root] = true;
    while let Some(u) = stack.pop() {
        for &c in &children[u] {
            if !seen[c] {
                seen[c] = true;
                stack.push(c);
            }
        }
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return Err(ThreadDefect::Unreachable(posts[i].id.clone()));
    }
    Ok((root, parents))
}

/// Which threads survive corpus cleaning.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterPolicy {
    /// Minimum number of posts besides the root post.
    pub min_extra_posts: usize,
    pub drop_deleted_root: bool,
    pub deleted_sentinel: String,
}

impl Default for FilterPolicy {
    fn default() -> Self {
        FilterPolicy {
            min_extra_posts: 5,
            drop_deleted_root: true,
            deleted_sentinel: "[deleted]".to_string(),
        }
    }
}

impl FilterPolicy {
    pub fn accepts(&self, thread: &Thread) -> bool {
        if thread.len() - 1 < self.min_extra_posts {
            return false;
        }
        !(self.drop_deleted_root && thread.root_post().author == self.deleted_sentinel)
    }
}

/// Keeps the threads accepted by `policy`, preserving order.
pub fn filter_corpus<I>(threads: I, policy: &FilterPolicy) -> Vec<Thread>
where
    I: IntoIterator<Item = Thread>,
{
    threads.into_iter().filter(|t| policy.accepts(t)).collect()
}
