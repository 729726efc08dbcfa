//! Per-thread structural metrics and empirical CDFs.

use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::graph::{ReplyGraph, UserGraph};
use crate::thread::{Thread, Timestamp};

/// Lower-middle order statistic (`ceil(n/2)`-th smallest) of sorted data.
pub fn lower_median<T: Copy>(sorted: &[T]) -> Option<T> {
    if sorted.is_empty() {
        None
    } else {
        Some(sorted[sorted.len().div_ceil(2) - 1])
    }
}

/// Median gap between chronologically consecutive posts.
pub fn responsiveness_median(thread: &Thread) -> Result<Timestamp, Error> {
    if thread.len() < 2 {
        return Err(Error::UndefinedMetric("responsiveness needs at least two posts"));
    }
    let mut times: Vec<Timestamp> = thread.posts().iter().map(|p| p.t).collect();
    times.sort_unstable();
    let mut gaps: Vec<Timestamp> = times.windows(2).map(|w| w[1] - w[0]).collect();
    gaps.sort_unstable();
    Ok(lower_median(&gaps).expect("at least one gap"))
}

/// Fraction of directed edges whose reverse edge also exists; 0 without edges.
pub fn reciprocity(g: &UserGraph) -> f64 {
    let m = g.edge_count();
    if m == 0 {
        return 0.0;
    }
    let mutual = g.edges().filter(|&(u, v, _)| g.has_edge(v, u)).count();
    mutual as f64 / m as f64
}

/// Unweighted BFS distances and shortest-path counts.
struct Bfs {
    dist: Vec<Option<usize>>,
    sigma: Vec<u128>,
}

fn bfs<'g, F, I>(n: usize, source: usize, next: F) -> Bfs
where
    F: Fn(usize) -> I,
    I: IntoIterator<Item = &'g usize>,
{
    let mut dist = vec![None; n];
    let mut sigma = vec![0u128; n];
    dist[source] = Some(0);
    sigma[source] = 1;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("queued nodes are reached");
        for &v in next(u) {
            match dist[v] {
                None => {
                    dist[v] = Some(du + 1);
                    sigma[v] = sigma[u];
                    queue.push_back(v);
                }
                Some(dv) if dv == du + 1 => sigma[v] = sigma[v].saturating_add(sigma[u]),
                _ => {}
            }
        }
    }
    Bfs { dist, sigma }
}

/// Unnormalized directed betweenness of the anchor:
/// the sum over ordered pairs `(s, t)` of distinct non-anchor nodes of the
/// share of shortest `s -> t` paths that pass through the anchor.
///
/// A shortest `s -> t` path passes through the anchor exactly when
/// `d(s, a) + d(a, t) = d(s, t)`, in which case `sigma_st(a) =
/// sigma_sa * sigma_at`. Terms are summed in `(s, t)` order.
pub fn op_betweenness(g: &UserGraph) -> f64 {
    let n = g.node_count();
    let a = g.anchor();
    let from_anchor = bfs(n, a, |u| g.out_neighbors(u));
    let mut total = 0.0;
    for s in (0..n).filter(|&s| s != a) {
        let from_s = bfs(n, s, |u| g.out_neighbors(u));
        let Some(d_sa) = from_s.dist[a] else { continue };
        for t in (0..n).filter(|&t| t != a && t != s) {
            let (Some(d_st), Some(d_at)) = (from_s.dist[t], from_anchor.dist[t]) else {
                continue;
            };
            if d_sa + d_at == d_st {
                let through = from_s.sigma[a].saturating_mul(from_anchor.sigma[t]);
                total += through as f64 / from_s.sigma[t] as f64;
            }
        }
    }
    total
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BranchingMode {
    /// Mean reply count over posts that received at least one reply.
    #[default]
    Internal,
    /// Mean in-degree over all posts, `(N - 1) / N`.
    All,
}

pub fn branching_factor(r: &ReplyGraph, mode: BranchingMode) -> Result<f64, Error> {
    let n = r.node_count();
    let edges = r.edge_count() as f64;
    match mode {
        BranchingMode::All => Ok(edges / n as f64),
        BranchingMode::Internal => {
            let internal = (0..n).filter(|&p| r.reply_count(p) > 0).count();
            if internal == 0 {
                return Err(Error::UndefinedMetric("branching factor of a thread without replies"));
            }
            Ok(edges / internal as f64)
        }
    }
}

/// Empirical CDF: sorted samples paired with `i / n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ecdf {
    values: Vec<f64>,
}

impl Ecdf {
    /// NaN samples sort last under total ordering.
    pub fn new(samples: &[f64]) -> Result<Self, Error> {
        if samples.is_empty() {
            return Err(Error::UndefinedMetric("ECDF of an empty sample"));
        }
        let mut values = samples.to_vec();
        values.sort_by(f64::total_cmp);
        Ok(Ecdf { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `(x_i, i / n)` for `i = 1..=n`.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let n = self.values.len();
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &x)| (x, (i + 1) as f64 / n as f64))
    }

    /// Fraction of samples `<= x`.
    pub fn eval(&self, x: f64) -> f64 {
        let k = self.values.partition_point(|&v| v <= x);
        k as f64 / self.values.len() as f64
    }
}

/// One row of the per-thread macro metrics table.
#[derive(Debug, Clone, PartialEq)]
pub struct MacroRecord {
    pub thread_id: String,
    pub n_posts: usize,
    pub n_users: usize,
    pub responsiveness_median: Timestamp,
    pub reciprocity: f64,
    pub op_betweenness: f64,
    pub branching_factor: f64,
}

impl MacroRecord {
    pub fn compute(thread: &Thread, branching: BranchingMode) -> Result<Self, Error> {
        let users = UserGraph::from_thread(thread);
        let replies = ReplyGraph::from_thread(thread);
        Ok(MacroRecord {
            thread_id: String::from(thread.thread_id()),
            n_posts: thread.len(),
            n_users: users.node_count(),
            responsiveness_median: responsiveness_median(thread)?,
            reciprocity: reciprocity(&users),
            op_betweenness: op_betweenness(&users),
            branching_factor: branching_factor(&replies, branching)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thread::{Post, Source};

    fn timed(ts: &[Timestamp]) -> Thread {
        let mut posts = vec![Post::new("p0", None, "A", ts[0])];
        for (i, &t) in ts.iter().enumerate().skip(1) {
            posts.push(Post::new(&alloc::format!("p{i}"), Some("p0"), "B", t));
        }
        Thread::new("t", Source::Focus, posts).unwrap()
    }

    #[test]
    fn responsiveness_examples() {
        assert_eq!(responsiveness_median(&timed(&[0, 10, 20])), Ok(10));
        assert_eq!(responsiveness_median(&timed(&[0, 5, 60, 61])), Ok(5));
        assert_eq!(responsiveness_median(&timed(&[0, 0])), Ok(0));
        // gaps sorted [1, 2, 3, 4] -> lower middle is 2
        assert_eq!(responsiveness_median(&timed(&[0, 4, 7, 9, 10])), Ok(2));
        assert!(responsiveness_median(&timed(&[3])).is_err());
    }

    #[test]
    fn reciprocity_examples() {
        let one = UserGraph::with_nodes(2, 0, [(0, 1, 0)]).unwrap();
        assert_eq!(reciprocity(&one), 0.0);
        let both = UserGraph::with_nodes(2, 0, [(0, 1, 0), (1, 0, 0)]).unwrap();
        assert_eq!(reciprocity(&both), 1.0);
        assert_eq!(reciprocity(&UserGraph::with_nodes(3, 0, []).unwrap()), 0.0);
    }

    #[test]
    fn betweenness_examples() {
        let pair = UserGraph::with_nodes(2, 0, [(0, 1, 0), (1, 0, 0)]).unwrap();
        assert_eq!(op_betweenness(&pair), 0.0);
        // 1 -> 0 -> 2 with anchor 0
        let chain = UserGraph::with_nodes(3, 0, [(1, 0, 0), (0, 2, 0)]).unwrap();
        assert_eq!(op_betweenness(&chain), 1.0);
        let star = UserGraph::with_nodes(
            4,
            0,
            (1..4).flat_map(|l| [(0, l, 0), (l, 0, 0)]),
        )
        .unwrap();
        assert_eq!(op_betweenness(&star), 6.0);
        // two parallel shortest routes 1 -> {0, 3} -> 2: half goes through 0
        let split = UserGraph::with_nodes(4, 0, [(1, 0, 0), (0, 2, 0), (1, 3, 0), (3, 2, 0)]).unwrap();
        assert_eq!(op_betweenness(&split), 0.5);
    }

    #[test]
    fn branching_examples() {
        let star = ReplyGraph::from_thread(&timed(&[0, 1, 2, 3]));
        assert_eq!(branching_factor(&star, BranchingMode::Internal), Ok(3.0));
        assert_eq!(branching_factor(&star, BranchingMode::All), Ok(0.75));

        let chain = Thread::new(
            "c",
            Source::Focus,
            vec![
                Post::new("a", None, "A", 0),
                Post::new("b", Some("a"), "B", 1),
                Post::new("c", Some("b"), "A", 2),
                Post::new("d", Some("c"), "B", 3),
            ],
        )
        .unwrap();
        let chain = ReplyGraph::from_thread(&chain);
        assert_eq!(branching_factor(&chain, BranchingMode::Internal), Ok(1.0));

        let mixed = Thread::new(
            "m",
            Source::Focus,
            vec![
                Post::new("r", None, "A", 0),
                Post::new("a", Some("r"), "B", 1),
                Post::new("b", Some("r"), "C", 2),
                Post::new("c", Some("a"), "A", 3),
            ],
        )
        .unwrap();
        let mixed = ReplyGraph::from_thread(&mixed);
        assert_eq!(branching_factor(&mixed, BranchingMode::Internal), Ok(1.5));

        let single = ReplyGraph::from_thread(&timed(&[0]));
        assert!(branching_factor(&single, BranchingMode::Internal).is_err());
        assert_eq!(branching_factor(&single, BranchingMode::All), Ok(0.0));
    }

    #[test]
    fn ecdf_examples() {
        let pts = |s: &[f64]| Ecdf::new(s).unwrap().points().collect::<Vec<_>>();
        assert_eq!(pts(&[5.0]), vec![(5.0, 1.0)]);
        assert_eq!(pts(&[2.0, 1.0]), vec![(1.0, 0.5), (2.0, 1.0)]);
        assert_eq!(
            pts(&[3.0, 1.0, 3.0, 7.0]),
            vec![(1.0, 0.25), (3.0, 0.5), (3.0, 0.75), (7.0, 1.0)]
        );
        let e = Ecdf::new(&[3.0, 1.0, 3.0, 7.0]).unwrap();
        assert_eq!(e.eval(0.0), 0.0);
        assert_eq!(e.eval(3.0), 0.75);
        assert_eq!(e.eval(100.0), 1.0);
        assert!(Ecdf::new(&[]).is_err());
    }
}
