//! Built-in graph families and generators: paths, cycles, stars, exhaustive
//! non-isomorphic tree enumeration, and seeded random instances for sweeps.

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::iso::tree_canonical_encoding;

/// Path on `n >= 1` vertices, `0 - 1 - ... - n-1`.
pub fn path_graph(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "path length",
            value: n,
        });
    }
    let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    Graph::build(n, &edges)
}

/// Cycle on `n >= 3` vertices in canonical numbering: `i` adjacent to
/// `i±1 mod n`.
pub fn cycle_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::OutOfRange {
            what: "cycle length",
            value: n,
        });
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::build(n, &edges)
}

/// Star with `leaves` pendant vertices attached to center 0 (K1 when 0).
pub fn star_graph(leaves: usize) -> Result<Graph> {
    let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    Graph::build(leaves + 1, &edges)
}

/// Decodes a Pruefer sequence into the labeled tree on `n` vertices it
/// encodes. `seq` must have length `n - 2` (empty for n <= 2).
pub fn tree_from_pruefer(n: usize, seq: &[usize]) -> Result<Graph> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "tree size",
            value: n,
        });
    }
    let expected = n.saturating_sub(2);
    if seq.len() != expected {
        return Err(Error::FunctionShapeMismatch {
            expected,
            got: seq.len(),
        });
    }
    if let Some(&v) = seq.iter().find(|&&v| v >= n) {
        return Err(Error::OutOfRange {
            what: "Pruefer entry",
            value: v,
        });
    }
    if n == 1 {
        return Graph::build(1, &[]);
    }
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut leaves: std::collections::BTreeSet<usize> =
        (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let leaf = *leaves.iter().next().expect("a leaf always remains");
        leaves.remove(&leaf);
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.insert(v);
        }
    }
    let mut it = leaves.iter();
    let (&a, &b) = (it.next().unwrap(), it.next().unwrap());
    edges.push((a, b));
    Graph::build(n, &edges)
}

/// Uniformly random labeled tree on `n` vertices via a random Pruefer
/// sequence.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Result<Graph> {
    let seq: Vec<usize> = (0..n.saturating_sub(2))
        .map(|_| rng.random_range(0..n))
        .collect();
    tree_from_pruefer(n, &seq)
}

/// Random connected graph: a random spanning tree plus each remaining pair
/// independently with probability `extra_edge_prob`.
pub fn random_connected_graph<R: Rng>(
    n: usize,
    extra_edge_prob: f64,
    rng: &mut R,
) -> Result<Graph> {
    let tree = random_tree(n, rng)?;
    let mut edges: Vec<(usize, usize)> = tree.edges().collect();
    for u in 0..n {
        for v in u + 1..n {
            if !tree.has_edge(u, v) && rng.random_bool(extra_edge_prob) {
                edges.push((u, v));
            }
        }
    }
    Graph::build(n, &edges)
}

/// All non-isomorphic trees on `n` vertices, in canonical-encoding order.
///
/// Trees on `k` vertices are grown by attaching a fresh leaf to every vertex
/// of every tree on `k - 1` vertices and deduplicating by canonical form.
pub fn enumerate_trees(n: usize) -> Result<Vec<Graph>> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "tree size",
            value: n,
        });
    }
    let mut level = vec![Graph::build(1, &[])?];
    for size in 2..=n {
        let mut seen: std::collections::BTreeMap<Vec<u8>, Graph> = Default::default();
        for tree in &level {
            for attach in 0..size - 1 {
                let mut edges: Vec<(usize, usize)> = tree.edges().collect();
                edges.push((attach, size - 1));
                let candidate = Graph::build(size, &edges)?;
                let key = tree_canonical_encoding(&candidate)?;
                seen.entry(key).or_insert(candidate);
            }
        }
        level = seen.into_values().collect();
    }
    Ok(level)
}
