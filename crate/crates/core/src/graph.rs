//! Reply trees and user interaction graphs built from a thread.
//!
//! Both graphs orient edges from the reply toward what it replies to, so a
//! post's in-degree in the reply tree is the number of replies it received
//! and an edge `u -> v` in the user graph means `u` responded to `v`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::thread::{Thread, Timestamp};
use crate::triad::Dyad;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplyGraph {
    times: Vec<Timestamp>,
    parents: Vec<Option<usize>>,
    root: usize,
    replies: Vec<usize>,
}

impl ReplyGraph {
    /// One node per post, in the thread's post order.
    pub fn from_thread(thread: &Thread) -> Self {
        let n = thread.len();
        let parents: Vec<_> = (0..n).map(|i| thread.parent_of(i)).collect();
        let mut replies = vec![0; n];
        for p in parents.iter().flatten() {
            replies[*p] += 1;
        }
        ReplyGraph {
            times: thread.posts().iter().map(|p| p.t).collect(),
            parents,
            root: thread.root(),
            replies,
        }
    }

    pub fn node_count(&self) -> usize {
        self.parents.len()
    }

    pub fn edge_count(&self) -> usize {
        self.node_count() - 1
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn timestamp(&self, node: usize) -> Timestamp {
        self.times[node]
    }

    pub fn parent(&self, node: usize) -> Option<usize> {
        self.parents[node]
    }

    /// Number of direct replies to `node` (its in-degree).
    pub fn reply_count(&self, node: usize) -> usize {
        self.replies[node]
    }

    /// `(child, parent)` pairs.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parents
            .iter()
            .enumerate()
            .filter_map(|(c, p)| p.map(|p| (c, p)))
    }

    pub fn degree_report(&self) -> DegreeReport {
        let out = self.parents.iter().map(|p| usize::from(p.is_some())).collect();
        DegreeReport::new(GraphKind::Reply, self.replies.clone(), out)
    }
}

/// Directed simple graph of users with first-interaction times per edge.
///
/// Nodes are the thread's distinct authors sorted by name, so the graph
/// does not depend on post order. `anchor` is the author of the root post.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UserGraph {
    labels: Vec<String>,
    anchor: usize,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
    first_t: BTreeMap<(usize, usize), Timestamp>,
}

impl UserGraph {
    pub fn from_thread(thread: &Thread) -> Self {
        let mut ids: BTreeMap<&str, usize> = BTreeMap::new();
        for p in thread.posts() {
            ids.entry(p.author.as_str()).or_insert(0);
        }
        for (i, v) in ids.values_mut().enumerate() {
            *v = i;
        }
        let labels = ids.keys().map(|s| String::from(*s)).collect();
        let anchor = ids[thread.root_post().author.as_str()];

        let posts = thread.posts();
        let edges = posts.iter().enumerate().filter_map(|(i, p)| {
            let parent = &posts[thread.parent_of(i)?];
            let (u, v) = (ids[p.author.as_str()], ids[parent.author.as_str()]);
            (u != v).then_some((u, v, p.t))
        });
        Self::collect(labels, anchor, edges)
    }

    /// Builds a graph from explicit `(from, to, first_t)` triples.
    ///
    /// Repeated pairs collapse to the earliest time. Self-loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges<I>(labels: Vec<String>, anchor: usize, edges: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (usize, usize, Timestamp)>,
    {
        let n = labels.len();
        if anchor >= n {
            return Err(Error::NodeOutOfRange { node: anchor, nodes: n });
        }
        let edges: Vec<_> = edges.into_iter().collect();
        for &(u, v, _) in &edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::NodeOutOfRange { node: x, nodes: n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
        }
        Ok(Self::collect(labels, anchor, edges))
    }

    /// Unlabelled graph on `n` nodes named `"0"`, `"1"`, ...
    pub fn with_nodes<I>(n: usize, anchor: usize, edges: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (usize, usize, Timestamp)>,
    {
        let labels = (0..n).map(|i| alloc::format!("{i}")).collect();
        Self::from_edges(labels, anchor, edges)
    }

    fn collect<I>(labels: Vec<String>, anchor: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Timestamp)>,
    {
        let n = labels.len();
        let mut first_t: BTreeMap<(usize, usize), Timestamp> = BTreeMap::new();
        for (u, v, t) in edges {
            first_t
                .entry((u, v))
                .and_modify(|e| *e = (*e).min(t))
                .or_insert(t);
        }
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        // BTreeMap iteration is sorted by (u, v), so both lists end up sorted.
        for &(u, v) in first_t.keys() {
            out[u].push(v);
        }
        for &(u, v) in first_t.keys() {
            inc[v].push(u);
        }
        for list in &mut inc {
            list.sort_unstable();
        }
        UserGraph {
            labels,
            anchor,
            out,
            inc,
            first_t,
        }
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.first_t.len()
    }

    pub fn anchor(&self) -> usize {
        self.anchor
    }

    pub fn label(&self, node: usize) -> &str {
        &self.labels[node]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn node_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    pub fn first_t(&self, u: usize, v: usize) -> Option<Timestamp> {
        self.first_t.get(&(u, v)).copied()
    }

    /// Sorted successors of `u`.
    pub fn out_neighbors(&self, u: usize) -> &[usize] {
        &self.out[u]
    }

    /// Sorted predecessors of `v`.
    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.inc[v]
    }

    /// `(from, to, first_t)` in lexicographic `(from, to)` order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Timestamp)> + '_ {
        self.first_t.iter().map(|(&(u, v), &t)| (u, v, t))
    }

    /// The dyad state of the ordered pair `(x, y)`.
    pub fn dyad(&self, x: usize, y: usize) -> Result<Dyad, Error> {
        let n = self.node_count();
        for node in [x, y] {
            if node >= n {
                return Err(Error::NodeOutOfRange { node, nodes: n });
            }
        }
        if x == y {
            return Err(Error::InvalidPair(x));
        }
        Ok(self.dyad_unchecked(x, y))
    }

    pub(crate) fn dyad_unchecked(&self, x: usize, y: usize) -> Dyad {
        Dyad::from_edges(self.has_edge(x, y), self.has_edge(y, x))
    }

    /// Same nodes and times with every edge reversed.
    pub fn reversed(&self) -> Self {
        let edges = self.edges().map(|(u, v, t)| (v, u, t));
        Self::collect(self.labels.clone(), self.anchor, edges)
    }

    pub fn degree_report(&self) -> DegreeReport {
        let inn = self.inc.iter().map(Vec::len).collect();
        let out = self.out.iter().map(Vec::len).collect();
        DegreeReport::new(GraphKind::User, inn, out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum GraphKind {
    User,
    Reply,
}

impl GraphKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GraphKind::User => "user",
            GraphKind::Reply => "reply",
        }
    }
}

/// Per-node degrees and their frequency histograms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeReport {
    pub kind: GraphKind,
    pub in_degree: Vec<usize>,
    pub out_degree: Vec<usize>,
    /// degree -> number of nodes with that in-degree
    pub in_histogram: BTreeMap<usize, usize>,
    pub out_histogram: BTreeMap<usize, usize>,
}

impl DegreeReport {
    fn new(kind: GraphKind, in_degree: Vec<usize>, out_degree: Vec<usize>) -> Self {
        DegreeReport {
            kind,
            in_histogram: histogram(&in_degree),
            out_histogram: histogram(&out_degree),
            in_degree,
            out_degree,
        }
    }
}

fn histogram(degrees: &[usize]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for &d in degrees {
        *h.entry(d).or_insert(0) += 1;
    }
    h
}
