//! Independent oracles for the integration tests. Everything here is
//! written from scratch against the public graph surface (neighbor lists
//! only) so it shares no code with the solvers it checks: BFS distances via
//! plain level expansion, resolving checks via hashed distance vectors, and
//! metric dimension by enumerating all vertex subsets of each size.

use std::collections::HashSet;

use sierpinski_core::Graph;

pub fn oracle_distances(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.n();
    let mut all = Vec::with_capacity(n);
    for src in 0..n {
        let mut dist = vec![u32::MAX; n];
        dist[src] = 0;
        let mut frontier = vec![src];
        let mut level = 0;
        while !frontier.is_empty() {
            level += 1;
            let mut next = Vec::new();
            for &u in &frontier {
                for &v in g.neighbors(u) {
                    if dist[v] == u32::MAX {
                        dist[v] = level;
                        next.push(v);
                    }
                }
            }
            frontier = next;
        }
        all.push(dist);
    }
    all
}

pub fn oracle_is_resolving(dists: &[Vec<u32>], subset: &[usize]) -> bool {
    let mut seen = HashSet::new();
    for row in dists {
        let vector: Vec<u32> = subset.iter().map(|&s| row[s]).collect();
        if !seen.insert(vector) {
            return false;
        }
    }
    true
}

/// Exact metric dimension by checking every subset of every size, smallest
/// size first. Only for small graphs.
pub fn oracle_metric_dimension(g: &Graph) -> usize {
    let n = g.n();
    assert!((1..=20).contains(&n), "oracle is for small graphs");
    let dists = oracle_distances(g);
    for k in 0..n {
        let mut found = false;
        visit_subsets(n, k, &mut |subset| {
            if !found && oracle_is_resolving(&dists, subset) {
                found = true;
            }
        });
        if found {
            return k;
        }
    }
    n - 1
}

/// True iff some subset of exactly `k` vertices resolves `g`.
pub fn oracle_some_subset_resolves(g: &Graph, k: usize) -> bool {
    let dists = oracle_distances(g);
    let mut found = false;
    visit_subsets(g.n(), k, &mut |subset| {
        if !found && oracle_is_resolving(&dists, subset) {
            found = true;
        }
    });
    found
}

fn visit_subsets(n: usize, k: usize, visit: &mut dyn FnMut(&[usize])) {
    let mut subset = Vec::with_capacity(k);
    fn recurse(
        n: usize,
        k: usize,
        start: usize,
        subset: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if subset.len() == k {
            visit(subset);
            return;
        }
        for v in start..n {
            subset.push(v);
            recurse(n, k, v + 1, subset, visit);
            subset.pop();
        }
    }
    recurse(n, k, 0, &mut subset, visit);
}
