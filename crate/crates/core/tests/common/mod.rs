#![allow(dead_code)]

use rand::Rng;
use threadmotif_core::UserGraph;

/// Batagelj-Mrvar triad code table: code -> 1-based type in census order.
/// Code bits for nodes (v, u, w): v->u 1, u->v 2, v->w 4, w->v 8, u->w 16,
/// w->u 32.
pub const TRICODES: [u8; 64] = [
    1, 2, 2, 3, 2, 4, 6, 8, 2, 6, 5, 7, 3, 8, 7, 11, 2, 6, 4, 8, 5, 9, 9, 13, 6, 10, 9, 14, 7, 14,
    12, 15, 2, 5, 6, 7, 6, 9, 10, 14, 4, 9, 9, 12, 8, 13, 14, 15, 3, 7, 8, 11, 7, 12, 14, 15, 8,
    14, 13, 15, 11, 15, 15, 16,
];

pub const TRIAD_NAMES: [&str; 16] = [
    "003", "012", "102", "021D", "021U", "021C", "111D", "111U", "030T", "030C", "201", "120D",
    "120U", "120C", "210", "300",
];

/// Independent triad type lookup through the tricode table.
pub fn tricode_type(has_edge: impl Fn(usize, usize) -> bool, v: usize, u: usize, w: usize) -> &'static str {
    let bits = [(v, u, 1), (u, v, 2), (v, w, 4), (w, v, 8), (u, w, 16), (w, u, 32)];
    let code: usize = bits
        .iter()
        .filter(|(x, y, _)| has_edge(*x, *y))
        .map(|(_, _, b)| b)
        .sum();
    TRIAD_NAMES[TRICODES[code] as usize - 1]
}

pub fn random_graph(rng: &mut impl Rng, n: usize, density: f64) -> UserGraph {
    let anchor = rng.random_range(0..n);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.random_bool(density) {
                edges.push((u, v, rng.random_range(0..1_000)));
            }
        }
    }
    UserGraph::with_nodes(n, anchor, edges).unwrap()
}
