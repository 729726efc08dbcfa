//! Anchored triad census of a user graph.
//!
//! Only triads that contain the anchor are counted, one per unordered pair
//! of non-anchor nodes, so every census sums to `C(n - 1, 2)`.

use alloc::vec::Vec;
use core::ops::{Add, AddAssign};

use crate::error::Error;
use crate::graph::UserGraph;
use crate::thread::Timestamp;
use crate::triad::{ClassId, ClassTable, Dyad, TriadConfig};
use crate::NUM_CLASSES;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Census {
    pub counts: [u64; NUM_CLASSES],
    pub n_users: usize,
}

impl Census {
    pub fn empty(n_users: usize) -> Self {
        Census {
            counts: [0; NUM_CLASSES],
            n_users,
        }
    }

    pub fn count(&self, id: ClassId) -> u64 {
        self.counts[id.index()]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `C(n - 1, 2)`, the number of anchored triads in an `n`-node graph.
    pub fn expected_total(n_users: usize) -> u64 {
        let k = n_users.saturating_sub(1) as u64;
        k * k.saturating_sub(1) / 2
    }
}

/// Elementwise sum; `n_users` accumulates as well.
impl Add for Census {
    type Output = Census;

    fn add(mut self, rhs: Census) -> Census {
        self += rhs;
        self
    }
}

impl AddAssign for Census {
    fn add_assign(&mut self, rhs: Census) {
        for (a, b) in self.counts.iter_mut().zip(rhs.counts) {
            *a += b;
        }
        self.n_users += rhs.n_users;
    }
}

fn non_anchor(g: &UserGraph) -> impl Iterator<Item = usize> + '_ {
    (0..g.node_count()).filter(move |&x| x != g.anchor())
}

fn config_of(g: &UserGraph, v: usize, w: usize) -> TriadConfig {
    let a = g.anchor();
    TriadConfig(
        g.dyad_unchecked(a, v),
        g.dyad_unchecked(a, w),
        g.dyad_unchecked(v, w),
    )
}

/// Classifies every anchored triad directly. Quadratic in the node count.
pub fn census_naive(g: &UserGraph, table: &ClassTable) -> Census {
    let mut census = Census::empty(g.node_count());
    for (v, w) in anchored_pairs(g) {
        census.counts[table.classify(config_of(g, v, w)).index()] += 1;
    }
    census
}

fn anchored_pairs(g: &UserGraph) -> impl Iterator<Item = (usize, usize)> + '_ {
    non_anchor(g).flat_map(move |v| non_anchor(g).filter(move |&w| w > v).map(move |w| (v, w)))
}

/// Census in `O(n + m log m)`.
///
/// Pairs are first counted in closed form from how many non-anchor nodes sit
/// at each dyad state relative to the anchor, assuming no edge between the
/// pair. A single pass over edges between non-anchor nodes then moves each
/// connected pair from its assumed class to its true one.
pub fn census_fast(g: &UserGraph, table: &ClassTable) -> Census {
    let a = g.anchor();
    let n = g.node_count();
    let mut census = Census::empty(n);
    if n < 3 {
        return census;
    }

    let mut state = alloc::vec![Dyad::Null; n];
    let mut tally = [0u64; 4];
    for x in non_anchor(g) {
        state[x] = g.dyad_unchecked(a, x);
        tally[state[x] as usize] += 1;
    }

    for (i, &d1) in Dyad::ALL.iter().enumerate() {
        for (j, &d2) in Dyad::ALL.iter().enumerate().skip(i) {
            let pairs = if i == j {
                tally[i] * tally[i].saturating_sub(1) / 2
            } else {
                tally[i] * tally[j]
            };
            if pairs > 0 {
                let id = table.classify(TriadConfig(d1, d2, Dyad::Null));
                census.counts[id.index()] += pairs;
            }
        }
    }

    for (u, x, _) in g.edges() {
        if u == a || x == a {
            continue;
        }
        let back = g.has_edge(x, u);
        // mutual pairs are handled from their smaller endpoint only
        if back && u > x {
            continue;
        }
        let actual = Dyad::from_edges(true, back);
        let assumed = table.classify(TriadConfig(state[u], state[x], Dyad::Null));
        let real = table.classify(TriadConfig(state[u], state[x], actual));
        census.counts[assumed.index()] -= 1;
        census.counts[real.index()] += 1;
    }
    census
}

/// Non-anchor pairs `(v, w)`, `v < w`, whose triad with the anchor is `class`.
pub fn motif_instances(g: &UserGraph, table: &ClassTable, class: ClassId) -> Vec<(usize, usize)> {
    anchored_pairs(g)
        .filter(|&(v, w)| table.classify(config_of(g, v, w)) == class)
        .collect()
}

/// Time at which the last edge of each instance of `class` appeared, as a
/// fraction of the lifetime `[t0, t1]`, clamped to `[0, 1]`.
///
/// A zero-length lifetime maps every instance to `0`.
pub fn completion_fractions(
    g: &UserGraph,
    table: &ClassTable,
    class: ClassId,
    t0: Timestamp,
    t1: Timestamp,
) -> Result<Vec<f64>, Error> {
    let info = table.class(class);
    if !info.has_edges() {
        return Err(Error::EdgeFreeClass(info.name()));
    }
    if t1 < t0 {
        return Err(Error::InvalidLifetime { t0, t1 });
    }
    let span = (t1 - t0) as f64;
    let a = g.anchor();
    Ok(motif_instances(g, table, class)
        .into_iter()
        .map(|(v, w)| {
            let nodes = [a, v, w];
            let last = nodes
                .iter()
                .flat_map(|&x| nodes.iter().filter_map(move |&y| g.first_t(x, y)))
                .max()
                .expect("edge-bearing class has an edge");
            if t1 == t0 {
                0.0
            } else {
                ((last - t0) as f64 / span).clamp(0.0, 1.0)
            }
        })
        .collect())
}
