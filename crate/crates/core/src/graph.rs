//! Undirected simple graphs on dense 0-based vertices, with lazily cached
//! all-pairs BFS distances and the tree-structure measurements (leaves,
//! branch vertices, terminal degrees) that the dimension formulas consume.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Sentinel distance for unreachable pairs; strictly larger than any real hop
/// count, so plain `<`/`>` comparisons treat it as infinity.
pub const UNREACHABLE: u32 = u32::MAX;

/// Undirected simple graph. Vertices are `0..n`. Immutable after
/// construction; the distance matrix is computed once on first request and
/// shared from then on, so values can be handed to parallel workers freely.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    m: usize,
    dist: OnceLock<DistanceMatrix>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        // The cache is derived data; identity is the labeled structure.
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges collapse silently
    /// (set semantics); self-loops and out-of-range endpoints are errors.
    pub fn build(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::OutOfRange {
                        what: "edge endpoint",
                        value: w,
                    });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { vertex: u });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Ok(Graph {
            n,
            adj,
            m,
            dist: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as ordered pairs `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// All-pairs hop distances, BFS-exact, computed once and cached.
    pub fn distances(&self) -> &DistanceMatrix {
        self.dist.get_or_init(|| DistanceMatrix::compute(self))
    }

    pub fn distance(&self, u: usize, v: usize) -> u32 {
        self.distances().get(u, v)
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.n > 0 && self.m == self.n - 1 && self.is_connected()
    }

    /// A path graph is a tree with maximum degree at most 2 (includes K1).
    pub fn is_path_graph(&self) -> bool {
        self.is_tree() && self.max_degree() <= 2
    }

    pub fn is_cycle_graph(&self) -> bool {
        self.n >= 3 && self.adj.iter().all(|l| l.len() == 2) && self.is_connected()
    }

    /// Cycle with the standard numbering: vertex `i` adjacent to `i±1 mod n`.
    /// The cycle-factor constructions index layers this way.
    pub fn is_canonical_cycle(&self) -> bool {
        self.n >= 3
            && (0..self.n).all(|i| {
                // prev != next because n >= 3
                let mut expect = [(i + self.n - 1) % self.n, (i + 1) % self.n];
                expect.sort_unstable();
                self.adj[i] == expect
            })
    }

    /// Induced subgraph on `vs` (deduplicated, sorted). Vertex `i` of the
    /// result is the `i`-th smallest member of `vs`.
    pub fn induced_subgraph(&self, vs: &[usize]) -> Result<Graph> {
        let mut verts: Vec<usize> = vs.to_vec();
        verts.sort_unstable();
        verts.dedup();
        if let Some(&v) = verts.iter().find(|&&v| v >= self.n) {
            return Err(Error::OutOfRange {
                what: "subgraph vertex",
                value: v,
            });
        }
        let index_of = |v: usize| verts.binary_search(&v).ok();
        let mut edges = Vec::new();
        for &u in &verts {
            for &v in &self.adj[u] {
                if u < v {
                    if let (Some(iu), Some(iv)) = (index_of(u), index_of(v)) {
                        edges.push((iu, iv));
                    }
                }
            }
        }
        Graph::build(verts.len(), &edges)
    }

    /// Parses the plain text format: first line `n m`, then `m` lines `u v`
    /// (0-based). Blank lines and `#` comments are skipped.
    pub fn from_text(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line_no, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing `n m` header".into(),
        })?;
        let parse_pair = |line: usize, text: &str, what: &str| -> Result<(usize, usize)> {
            let mut it = text.split_whitespace();
            let parse_one = |tok: Option<&str>| -> Result<usize> {
                tok.ok_or_else(|| Error::Parse {
                    line,
                    message: format!("expected two integers for {what}"),
                })?
                .parse()
                .map_err(|_| Error::Parse {
                    line,
                    message: format!("invalid integer in {what}"),
                })
            };
            let a = parse_one(it.next())?;
            let b = parse_one(it.next())?;
            if it.next().is_some() {
                return Err(Error::Parse {
                    line,
                    message: format!("trailing tokens after {what}"),
                });
            }
            Ok((a, b))
        };
        let (n, m) = parse_pair(line_no, header, "header")?;
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let (line_no, text) = lines.next().ok_or(Error::Parse {
                line: line_no,
                message: format!("expected {m} edge lines"),
            })?;
            edges.push(parse_pair(line_no, text, "edge")?);
        }
        if let Some((line_no, _)) = lines.next() {
            return Err(Error::Parse {
                line: line_no,
                message: "unexpected content after edge list".into(),
            });
        }
        Graph::build(n, &edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.m);
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph {name} {{\n");
        for v in 0..self.n {
            let _ = writeln!(out, "  v{v};");
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  v{u} -- v{v};");
        }
        out.push_str("}\n");
        out
    }
}

/// Dense all-pairs hop-distance matrix.
#[derive(Debug, Clone)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<u32>,
}

impl DistanceMatrix {
    fn compute(g: &Graph) -> Self {
        let n = g.n;
        let mut data = vec![UNREACHABLE; n * n];
        let mut queue = VecDeque::new();
        for src in 0..n {
            let row = &mut data[src * n..(src + 1) * n];
            row[src] = 0;
            queue.clear();
            queue.push_back(src);
            while let Some(u) = queue.pop_front() {
                let du = row[u];
                for &v in &g.adj[u] {
                    if row[v] == UNREACHABLE {
                        row[v] = du + 1;
                        queue.push_back(v);
                    }
                }
            }
        }
        DistanceMatrix { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.data[u * self.n + v]
    }

    pub fn is_reachable(&self, u: usize, v: usize) -> bool {
        self.get(u, v) != UNREACHABLE
    }
}

/// Leaf/branch structure of a tree: everything the closed dimension formula
/// needs. `leaves.len()` is n1, `exterior_branch.len()` is the exterior
/// branch vertex count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeMetrics {
    /// Degree-1 vertices, ascending.
    pub leaves: Vec<usize>,
    /// Degree >= 3 vertices, ascending.
    pub branch_vertices: Vec<usize>,
    /// Branch vertices with at least one terminal leaf, ascending.
    pub exterior_branch: Vec<usize>,
    /// branch vertex -> number of its terminal leaves (0 for interior ones).
    pub terminal_degree: BTreeMap<usize, usize>,
    /// leaf -> its nearest branch vertex; empty when the tree is a path.
    pub terminal_leaf_owner: BTreeMap<usize, usize>,
}

impl TreeMetrics {
    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    pub fn exterior_count(&self) -> usize {
        self.exterior_branch.len()
    }

    /// Terminal leaves owned by `branch`, ascending.
    pub fn leaves_of(&self, branch: usize) -> Vec<usize> {
        self.terminal_leaf_owner
            .iter()
            .filter(|&(_, &b)| b == branch)
            .map(|(&leaf, _)| leaf)
            .collect()
    }
}

/// Computes the tree metrics of `t`. Each leaf is assigned to the branch
/// vertex it reaches first when walking inward; in a tree that vertex is the
/// unique branch vertex at minimum distance.
pub fn tree_metrics(t: &Graph) -> Result<TreeMetrics> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    let leaves: Vec<usize> = (0..t.n()).filter(|&v| t.degree(v) == 1).collect();
    let branch_vertices: Vec<usize> = (0..t.n()).filter(|&v| t.degree(v) >= 3).collect();
    let mut terminal_degree: BTreeMap<usize, usize> =
        branch_vertices.iter().map(|&b| (b, 0)).collect();
    let mut terminal_leaf_owner = BTreeMap::new();
    if !branch_vertices.is_empty() {
        for &leaf in &leaves {
            let mut prev = leaf;
            let mut cur = t.neighbors(leaf)[0];
            while t.degree(cur) < 3 {
                let next = *t
                    .neighbors(cur)
                    .iter()
                    .find(|&&w| w != prev)
                    .expect("interior vertex of a non-path tree has a forward neighbor");
                prev = cur;
                cur = next;
            }
            terminal_leaf_owner.insert(leaf, cur);
            *terminal_degree
                .get_mut(&cur)
                .expect("cur is a branch vertex") += 1;
        }
    }
    let exterior_branch: Vec<usize> = branch_vertices
        .iter()
        .copied()
        .filter(|b| terminal_degree[b] > 0)
        .collect();
    Ok(TreeMetrics {
        leaves,
        branch_vertices,
        exterior_branch,
        terminal_degree,
        terminal_leaf_owner,
    })
}
