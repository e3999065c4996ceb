//! Shared fixtures for the acceptance suite: a small isomorphism-free
//! enumerator of connected graphs and seeded random-instance builders.
//!
//! Everything here is deterministic: random builders draw from a ChaCha
//! stream keyed by [`SEED`] and a per-test salt, so every suite run sees
//! the same instances.
#![allow(dead_code)]

use cfcolor::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Master seed of the acceptance suite.
pub const SEED: u64 = 42;

/// A per-test random stream: same salt, same instances, every run.
pub fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Builds a graph from an edge list, panicking on malformed input.
pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges).expect("valid edge list")
}

// ---------------------------------------------------------------------------
// Isomorphism-free enumeration of small connected graphs
// ---------------------------------------------------------------------------

/// All vertex pairs `(i, j)` with `i < j` in lexicographic order — the bit
/// layout of the edge masks below.
fn edge_slots(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect()
}

/// All `n!` permutations of `0..n`.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == items.len() {
            out.push(items.clone());
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            rec(k + 1, items, out);
            items.swap(k, i);
        }
    }
    let mut items: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    rec(0, &mut items, &mut out);
    out
}

/// Whether the edge mask describes a connected graph on `n` vertices.
fn mask_connected(n: usize, mask: usize, slots: &[(usize, usize)]) -> bool {
    let mut adj = vec![0u32; n];
    for (e, &(i, j)) in slots.iter().enumerate() {
        if mask >> e & 1 == 1 {
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
    }
    let mut reached: u32 = 1;
    loop {
        let mut next = reached;
        let mut bits = reached;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            next |= adj[v];
        }
        if next == reached {
            break;
        }
        reached = next;
    }
    reached == (1u32 << n) - 1
}

/// One representative per isomorphism class of connected graphs on `n`
/// vertices: the lexicographically-least edge bitmask of each class. Sized
/// for `n ≤ 7` (21 edge slots, 2^21 masks, orbit marking per class).
pub fn connected_graphs_up_to_iso(n: usize) -> Vec<Graph> {
    assert!((1..=7).contains(&n), "enumerator is sized for 1 ≤ n ≤ 7");
    let slots = edge_slots(n);
    let m = slots.len();
    let mut slot_index = vec![vec![0usize; n]; n];
    for (e, &(i, j)) in slots.iter().enumerate() {
        slot_index[i][j] = e;
        slot_index[j][i] = e;
    }
    // Where each edge bit lands under each vertex permutation.
    let maps: Vec<Vec<usize>> = permutations(n)
        .iter()
        .map(|p| {
            (0..m)
                .map(|e| {
                    let (i, j) = slots[e];
                    slot_index[p[i]][p[j]]
                })
                .collect()
        })
        .collect();

    let mut seen = vec![false; 1usize << m];
    let mut reps = Vec::new();
    for mask in 0usize..(1 << m) {
        if seen[mask] {
            continue;
        }
        // An ascending sweep reaches the least member of each orbit first;
        // mark the whole orbit so the other members are skipped.
        for map in &maps {
            let mut image = 0usize;
            let mut rest = mask;
            while rest != 0 {
                let e = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                image |= 1 << map[e];
            }
            seen[image] = true;
        }
        if mask_connected(n, mask, &slots) {
            let edges: Vec<(usize, usize)> = slots
                .iter()
                .enumerate()
                .filter(|&(e, _)| mask >> e & 1 == 1)
                .map(|(_, &pair)| pair)
                .collect();
            reps.push(from_edges(n, &edges));
        }
    }
    reps
}

// ---------------------------------------------------------------------------
// Random instance builders
// ---------------------------------------------------------------------------

/// Plain G(n, p): each pair independently with probability `p`. May be
/// disconnected and may contain isolated vertices.
pub fn random_gnp(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    from_edges(n, &edges)
}

/// A random tree: vertex `v ≥ 1` hangs off a uniform earlier vertex.
pub fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    from_edges(n, &edges)
}

/// A random connected graph: a random tree plus each remaining pair
/// independently with probability `p`.
pub fn random_connected(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    from_edges(n, &edges)
}

/// A connected partial 2-tree, grown as a 2-tree by attaching each new
/// vertex to a random edge of the underlying 2-tree: the first attachment
/// edge is always kept, the second with probability `keep_second`. Reverse
/// id order `n-1, …, 0` is an elimination order of width ≤ 2, because the
/// output is a subgraph of a 2-tree built in that id order.
pub fn random_partial_2tree(rng: &mut ChaCha8Rng, n: usize, keep_second: f64) -> Graph {
    assert!(n >= 3, "a 2-tree needs at least a triangle");
    let mut edges: Vec<(usize, usize)> = vec![(0, 1), (0, 2), (1, 2)];
    // Attachment slots are the edges of the *full* 2-tree, kept or not.
    let mut slots = edges.clone();
    for v in 3..n {
        let (a, b) = slots[rng.gen_range(0..slots.len())];
        edges.push((a, v));
        if rng.gen_bool(keep_second) {
            edges.push((b, v));
        }
        slots.push((a, v));
        slots.push((b, v));
    }
    from_edges(n, &edges)
}

/// A random graph whose edges all touch `{0, …, k-1}`, making that set a
/// vertex cover: pairs inside it appear with probability `p_in`, pairs from
/// it to the outside with probability `p_out`.
pub fn random_cover_graph(rng: &mut ChaCha8Rng, n: usize, k: usize, p_in: f64, p_out: f64) -> Graph {
    let mut edges = Vec::new();
    for i in 0..k.min(n) {
        for j in (i + 1)..n {
            let p = if j < k { p_in } else { p_out };
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    from_edges(n, &edges)
}

// ---------------------------------------------------------------------------
// Reference oracles
// ---------------------------------------------------------------------------

/// Proper q-colorability by exhaustive backtracking.
pub fn properly_colorable(g: &Graph, q: usize) -> bool {
    fn rec(g: &Graph, q: usize, colors: &mut Vec<usize>, v: usize) -> bool {
        if v == colors.len() {
            return true;
        }
        for c in 1..=q {
            if g.neighbors(v).iter().all(|&u| u >= v || colors[u] != c) {
                colors[v] = c;
                if rec(g, q, colors, v + 1) {
                    return true;
                }
            }
        }
        colors[v] = 0;
        false
    }
    let mut colors = vec![0usize; g.n()];
    rec(g, q, &mut colors, 0)
}
