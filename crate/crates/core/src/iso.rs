//! Canonical forms and isomorphism checks for small graphs.
//!
//! Trees get the linear-time rooted-at-center encoding; everything else goes
//! through brute-force canonical labeling: color refinement seeded by
//! degrees, then individualization of the first non-singleton class, taking
//! the lexicographically smallest adjacency encoding over the search tree.
//! Adequate for the graphs this crate works with (a few dozen vertices,
//! sparse, highly structured); not a general-purpose canonicalizer.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Opaque canonical key: equal keys iff isomorphic graphs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u8>);

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    if g.is_tree() {
        let mut bytes = vec![b'T'];
        bytes.extend(tree_canonical_encoding(g).expect("is_tree checked"));
        return CanonicalForm(bytes);
    }
    let mut bytes = vec![b'G'];
    bytes.extend((g.n() as u32).to_be_bytes());
    for word in refined_min_encoding(g) {
        bytes.extend(word.to_be_bytes());
    }
    CanonicalForm(bytes)
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.m() != b.m() {
        return false;
    }
    let mut deg_a: Vec<usize> = (0..a.n()).map(|v| a.degree(v)).collect();
    let mut deg_b: Vec<usize> = (0..b.n()).map(|v| b.degree(v)).collect();
    deg_a.sort_unstable();
    deg_b.sort_unstable();
    if deg_a != deg_b {
        return false;
    }
    canonical_form(a) == canonical_form(b)
}

/// Canonical encoding of a free tree: root at the center (taking the smaller
/// of the two encodings when the tree is bicentral), encode children sorted.
pub fn tree_canonical_encoding(t: &Graph) -> Result<Vec<u8>> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    let centers = tree_centers(t);
    let best = centers
        .iter()
        .map(|&c| encode_rooted(t, c, usize::MAX))
        .min()
        .expect("a tree has at least one center");
    Ok(best)
}

/// Center(s) of a tree by iterative leaf stripping; one or two vertices.
fn tree_centers(t: &Graph) -> Vec<usize> {
    let n = t.n();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            degree[leaf] = 0;
            for &u in t.neighbors(leaf) {
                if degree[u] > 1 {
                    degree[u] -= 1;
                    if degree[u] == 1 {
                        next.push(u);
                    }
                }
            }
        }
        layer = next;
    }
    let mut centers: Vec<usize> = (0..n).filter(|&v| degree[v] >= 1).collect();
    centers.sort_unstable();
    centers
}

fn encode_rooted(t: &Graph, v: usize, parent: usize) -> Vec<u8> {
    let mut children: Vec<Vec<u8>> = t
        .neighbors(v)
        .iter()
        .filter(|&&u| u != parent)
        .map(|&u| encode_rooted(t, u, v))
        .collect();
    children.sort();
    let mut out = vec![b'('];
    for child in children {
        out.extend(child);
    }
    out.push(b')');
    out
}

// ---- general graphs: individualization + refinement ----

/// Smallest adjacency-bitstring encoding over the refinement search tree.
fn refined_min_encoding(g: &Graph) -> Vec<u64> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let mut colors: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    normalize_colors(&mut colors);
    refine(g, &mut colors);
    let mut best: Option<Vec<u64>> = None;
    search(g, &colors, &mut best);
    best.expect("search visits at least one discrete coloring")
}

fn search(g: &Graph, colors: &[usize], best: &mut Option<Vec<u64>>) {
    match first_non_singleton_class(colors) {
        None => {
            let enc = encode_discrete(g, colors);
            if best.as_ref().is_none_or(|b| enc < *b) {
                *best = Some(enc);
            }
        }
        Some(class_color) => {
            for v in 0..colors.len() {
                if colors[v] == class_color {
                    let mut next: Vec<usize> = colors.iter().map(|&c| 2 * c + 1).collect();
                    next[v] = 2 * class_color;
                    normalize_colors(&mut next);
                    refine(g, &mut next);
                    search(g, &next, best);
                }
            }
        }
    }
}

/// One step of neighborhood color refinement, iterated to a fixpoint.
fn refine(g: &Graph, colors: &mut Vec<usize>) {
    let n = g.n();
    loop {
        let mut signatures: Vec<(usize, Vec<usize>, usize)> = (0..n)
            .map(|v| {
                let mut nbr: Vec<usize> = g.neighbors(v).iter().map(|&u| colors[u]).collect();
                nbr.sort_unstable();
                (colors[v], nbr, v)
            })
            .collect();
        signatures.sort();
        let mut next = vec![0usize; n];
        let mut color = 0;
        for i in 0..n {
            if i > 0
                && (signatures[i].0, &signatures[i].1)
                    != (signatures[i - 1].0, &signatures[i - 1].1)
            {
                color += 1;
            }
            next[signatures[i].2] = color;
        }
        if next == *colors {
            return;
        }
        *colors = next;
    }
}

fn normalize_colors(colors: &mut [usize]) {
    let mut sorted: Vec<usize> = colors.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for c in colors.iter_mut() {
        *c = sorted.binary_search(c).unwrap();
    }
}

fn first_non_singleton_class(colors: &[usize]) -> Option<usize> {
    let mut counts = vec![0usize; colors.len() + 1];
    for &c in colors {
        counts[c] += 1;
    }
    counts.iter().position(|&c| c >= 2)
}

/// Row-major adjacency bits of the relabeled graph, packed so that a
/// lexicographically smaller bitstring compares smaller as `Vec<u64>`.
fn encode_discrete(g: &Graph, colors: &[usize]) -> Vec<u64> {
    let n = g.n();
    let mut vertex_at = vec![0usize; n];
    for v in 0..n {
        vertex_at[colors[v]] = v;
    }
    let bits = n * n;
    let mut words = vec![0u64; bits.div_ceil(64)];
    for p in 0..n {
        for q in p + 1..n {
            if g.has_edge(vertex_at[p], vertex_at[q]) {
                for bit in [p * n + q, q * n + p] {
                    words[bit / 64] |= 1u64 << (63 - (bit % 64));
                }
            }
        }
    }
    words
}
