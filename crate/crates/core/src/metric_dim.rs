//! Resolving sets and exact metric dimension.
//!
//! The exact solver walks candidate sizes upward from the twin-class lower
//! bound, enumerating subsets of each size in lexicographic order and
//! stopping at the first resolving set, so witnesses are deterministic. The
//! tree fast path evaluates the closed formula n1(T) - ex(T) and builds the
//! standard metric basis instead of searching.

use std::time::{Duration, Instant};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{tree_metrics, DistanceMatrix, Graph};

/// Budget for the subset search: candidate subsets examined plus an optional
/// wall-clock ceiling.
#[derive(Debug, Clone)]
pub struct SearchBudget {
    pub max_subsets: u64,
    pub time_limit: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_subsets: 200_000_000,
            time_limit: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Formula,
    Search,
}

/// Result of a dimension computation: the value, a witness basis when one
/// was produced, and how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub value: usize,
    #[serde(rename = "witness")]
    pub witness_basis: Option<Vec<usize>>,
    pub method: Method,
    pub subsets_examined: u64,
    #[serde(
        rename = "ms",
        skip_serializing_if = "Option::is_none",
        serialize_with = "serialize_ms"
    )]
    pub elapsed: Option<Duration>,
}

impl DimensionReport {
    /// Drops the timing field, for byte-stable serialized output.
    pub fn without_timing(mut self) -> Self {
        self.elapsed = None;
        self
    }
}

pub(crate) fn serialize_ms<S: Serializer>(
    d: &Option<Duration>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u64(d.map(|d| d.as_millis() as u64).unwrap_or(0))
}

/// Ordered landmarks and the distance vector of every vertex to them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricRepresentation {
    pub landmarks: Vec<usize>,
    pub vectors: Vec<Vec<u32>>,
}

impl MetricRepresentation {
    pub fn compute(g: &Graph, landmarks: &[usize]) -> Result<Self> {
        for &v in landmarks {
            if v >= g.n() {
                return Err(Error::OutOfRange {
                    what: "landmark",
                    value: v,
                });
            }
        }
        let dist = g.distances();
        let vectors = (0..g.n())
            .map(|v| landmarks.iter().map(|&s| dist.get(v, s)).collect())
            .collect();
        Ok(MetricRepresentation {
            landmarks: landmarks.to_vec(),
            vectors,
        })
    }

    /// True iff all vertex vectors are pairwise distinct.
    pub fn is_resolving(&self) -> bool {
        let mut rows: Vec<&Vec<u32>> = self.vectors.iter().collect();
        rows.sort_unstable();
        rows.windows(2).all(|w| w[0] != w[1])
    }
}

/// Checks whether `s` is a resolving set of connected `g`. The empty set
/// resolves only graphs on at most one vertex; asking about it on a larger
/// graph is an error rather than a silent `false`.
pub fn is_resolving_set(g: &Graph, s: &[usize]) -> Result<bool> {
    if g.n() == 0 || !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if s.is_empty() {
        return if g.n() <= 1 {
            Ok(true)
        } else {
            Err(Error::EmptySetOnNontrivialGraph)
        };
    }
    Ok(MetricRepresentation::compute(g, s)?.is_resolving())
}

/// Twin classes: `u ~ v` iff `N(u) \ {v} = N(v) \ {u}` (equal open or equal
/// closed neighborhoods). Twins are at equal distance from every other
/// vertex, so any resolving set keeps all but one member of each class.
#[allow(clippy::needless_range_loop)] // `assigned` is mutated inside the loop
pub fn twin_classes(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut assigned = vec![false; n];
    let mut classes = Vec::new();
    for u in 0..n {
        if assigned[u] {
            continue;
        }
        assigned[u] = true;
        let mut class = vec![u];
        for v in u + 1..n {
            if !assigned[v] && are_twins(g, u, v) {
                assigned[v] = true;
                class.push(v);
            }
        }
        classes.push(class);
    }
    classes
}

fn are_twins(g: &Graph, u: usize, v: usize) -> bool {
    let nu: Vec<usize> = g.neighbors(u).iter().copied().filter(|&w| w != v).collect();
    let nv: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| w != u).collect();
    nu == nv
}

pub fn twin_lower_bound(g: &Graph) -> usize {
    twin_classes(g).iter().map(|c| c.len() - 1).sum()
}

/// Exact metric dimension with a deterministic witness (lexicographically
/// first basis of minimum size).
pub fn metric_dimension_exact(g: &Graph, budget: &SearchBudget) -> Result<DimensionReport> {
    let started = Instant::now();
    match search_dimension_capped(g, g.n().saturating_sub(1), budget, started)? {
        Some(report) => Ok(report),
        None => unreachable!("any connected graph is resolved by all but one vertex"),
    }
}

/// Like [`metric_dimension_exact`] but gives up once candidate size exceeds
/// `cap`, returning `Ok(None)`. Used by targeted function-space scans where
/// only "dimension <= target" matters.
pub fn metric_dimension_at_most(
    g: &Graph,
    cap: usize,
    budget: &SearchBudget,
) -> Result<Option<DimensionReport>> {
    search_dimension_capped(g, cap, budget, Instant::now())
}

fn search_dimension_capped(
    g: &Graph,
    cap: usize,
    budget: &SearchBudget,
    started: Instant,
) -> Result<Option<DimensionReport>> {
    if g.n() == 0 || !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    if n == 1 {
        return Ok(Some(DimensionReport {
            value: 0,
            witness_basis: Some(Vec::new()),
            method: Method::Search,
            subsets_examined: 1,
            elapsed: Some(started.elapsed()),
        }));
    }
    let deadline = budget.time_limit.map(|limit| started + limit);
    let lower = twin_lower_bound(g).max(1);
    if lower > cap {
        return Ok(None);
    }
    let dist = g.distances();
    let mut checker = ResolvingChecker::new(dist);
    let mut examined: u64 = 0;
    for k in lower..=cap.min(n - 1) {
        let mut subset: Vec<usize> = (0..k).collect();
        loop {
            examined += 1;
            let over_budget = examined > budget.max_subsets
                || (examined.is_multiple_of(4096) && deadline.is_some_and(|d| Instant::now() >= d));
            if over_budget {
                return Err(Error::BudgetExceeded {
                    lower: k,
                    upper: Some(n - 1),
                    examined,
                });
            }
            if checker.resolves(&subset) {
                return Ok(Some(DimensionReport {
                    value: k,
                    witness_basis: Some(subset),
                    method: Method::Search,
                    subsets_examined: examined,
                    elapsed: Some(started.elapsed()),
                }));
            }
            if !next_combination(&mut subset, n) {
                break;
            }
        }
    }
    Ok(None)
}

/// Advances `idx` to the next k-subset of `0..n` in lexicographic order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] != i + n - k {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Distinctness check for the inner search loop. Distance vectors are packed
/// one landmark per byte into a single integer key per vertex when they fit;
/// otherwise full rows are compared.
struct ResolvingChecker<'a> {
    dist: &'a DistanceMatrix,
    packed: bool,
    keys: Vec<u128>,
    rows: Vec<Vec<u32>>,
}

impl<'a> ResolvingChecker<'a> {
    fn new(dist: &'a DistanceMatrix) -> Self {
        ResolvingChecker {
            dist,
            packed: dist.n() < 256,
            keys: Vec::with_capacity(dist.n()),
            rows: Vec::new(),
        }
    }

    fn resolves(&mut self, subset: &[usize]) -> bool {
        let n = self.dist.n();
        if self.packed && subset.len() <= 16 {
            self.keys.clear();
            for v in 0..n {
                let mut key: u128 = 0;
                for &s in subset {
                    key = key << 8 | self.dist.get(v, s) as u128;
                }
                self.keys.push(key);
            }
            self.keys.sort_unstable();
            self.keys.windows(2).all(|w| w[0] != w[1])
        } else {
            self.rows.clear();
            for v in 0..n {
                self.rows
                    .push(subset.iter().map(|&s| self.dist.get(v, s)).collect());
            }
            self.rows.sort_unstable();
            self.rows.windows(2).all(|w| w[0] != w[1])
        }
    }
}

/// Metric dimension of a tree by the closed formula: 0 for K1, 1 for a
/// longer path, otherwise n1(T) - ex(T) with the standard metric basis as
/// witness.
pub fn tree_metric_dimension(t: &Graph) -> Result<DimensionReport> {
    let started = Instant::now();
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    let (value, witness) = if t.n() == 1 {
        (0, Vec::new())
    } else if t.is_path_graph() {
        let endpoint = (0..t.n())
            .find(|&v| t.degree(v) == 1)
            .expect("a path on >= 2 vertices has endpoints");
        (1, vec![endpoint])
    } else {
        let metrics = tree_metrics(t)?;
        let value = metrics.leaf_count() - metrics.exterior_count();
        (value, standard_metric_basis(t)?)
    };
    Ok(DimensionReport {
        value,
        witness_basis: Some(witness),
        method: Method::Formula,
        subsets_examined: 0,
        elapsed: Some(started.elapsed()),
    })
}

/// Standard metric basis of a non-path tree: for every exterior branch
/// vertex with terminal degree >= 2, all of its terminal leaves except the
/// smallest-index one.
pub fn standard_metric_basis(t: &Graph) -> Result<Vec<usize>> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    if t.is_path_graph() {
        return Err(Error::IsAPath);
    }
    let metrics = tree_metrics(t)?;
    let mut basis = Vec::new();
    for &branch in &metrics.exterior_branch {
        let owned = metrics.leaves_of(branch);
        if owned.len() >= 2 {
            basis.extend_from_slice(&owned[1..]);
        }
    }
    basis.sort_unstable();
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cycle_graph, path_graph, star_graph};
    use crate::product::fk_graph;

    #[test]
    fn resolving_set_basics() {
        let p3 = path_graph(3).unwrap();
        assert!(is_resolving_set(&p3, &[0]).unwrap());
        let c4 = cycle_graph(4).unwrap();
        // vertices 1 and 3 are both at distance 1 from vertex 0
        assert!(!is_resolving_set(&c4, &[0]).unwrap());
        let f3 = fk_graph(3).unwrap();
        assert!(is_resolving_set(&f3, &[6, 7]).unwrap());
    }

    #[test]
    fn resolving_set_error_paths() {
        let c4 = cycle_graph(4).unwrap();
        assert!(matches!(
            is_resolving_set(&c4, &[]),
            Err(Error::EmptySetOnNontrivialGraph)
        ));
        let split = Graph::build(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            is_resolving_set(&split, &[0]),
            Err(Error::Disconnected)
        ));
        let k1 = Graph::build(1, &[]).unwrap();
        assert!(is_resolving_set(&k1, &[]).unwrap());
    }

    #[test]
    fn exact_dimension_small_cases() {
        let budget = SearchBudget::default();
        assert_eq!(
            metric_dimension_exact(&path_graph(7).unwrap(), &budget)
                .unwrap()
                .value,
            1
        );

        // Independent check for the frozen value dim(C6) = 2: no single
        // vertex resolves C6, while {0, 1} does.
        let c6 = cycle_graph(6).unwrap();
        for v in 0..6 {
            assert!(!is_resolving_set(&c6, &[v]).unwrap());
        }
        assert!(is_resolving_set(&c6, &[0, 1]).unwrap());
        let report = metric_dimension_exact(&c6, &budget).unwrap();
        assert_eq!(report.value, 2);
        assert_eq!(report.witness_basis, Some(vec![0, 1]));

        let f4 = fk_graph(4).unwrap();
        let report = metric_dimension_exact(&f4, &budget).unwrap();
        assert_eq!(report.value, 2);
        // u0 = 8, u2 = 9: the two-attachment witness set is resolving.
        assert!(is_resolving_set(&f4, &[8, 9]).unwrap());
    }

    #[test]
    fn exact_dimension_of_single_vertex_is_zero() {
        let k1 = Graph::build(1, &[]).unwrap();
        let report = metric_dimension_exact(&k1, &SearchBudget::default()).unwrap();
        assert_eq!(report.value, 0);
        assert_eq!(report.witness_basis, Some(vec![]));
    }

    #[test]
    fn budget_exhaustion_reports_an_interval() {
        let budget = SearchBudget {
            max_subsets: 3,
            time_limit: None,
        };
        let err = metric_dimension_exact(&cycle_graph(6).unwrap(), &budget).unwrap_err();
        match err {
            Error::BudgetExceeded {
                lower,
                upper,
                examined,
            } => {
                assert!(lower >= 1);
                assert_eq!(upper, Some(5));
                assert_eq!(examined, 4);
            }
            other => panic!("expected BudgetExceeded, got {other:?}"),
        }
    }

    #[test]
    fn tree_formula_examples() {
        assert_eq!(
            tree_metric_dimension(&star_graph(3).unwrap())
                .unwrap()
                .value,
            2
        );
        assert_eq!(
            tree_metric_dimension(&path_graph(9).unwrap())
                .unwrap()
                .value,
            1
        );
        let spider = Graph::build(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]).unwrap();
        let report = tree_metric_dimension(&spider).unwrap();
        assert_eq!(report.value, 2);
        assert_eq!(
            metric_dimension_exact(&spider, &SearchBudget::default())
                .unwrap()
                .value,
            2
        );
        assert!(matches!(
            tree_metric_dimension(&cycle_graph(5).unwrap()),
            Err(Error::NotATree)
        ));
    }

    #[test]
    fn standard_basis_examples() {
        let star = star_graph(3).unwrap();
        assert_eq!(standard_metric_basis(&star).unwrap(), vec![2, 3]);
        assert!(is_resolving_set(&star, &[2, 3]).unwrap());

        let spider = Graph::build(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]).unwrap();
        assert_eq!(standard_metric_basis(&spider).unwrap(), vec![3, 5]);
        assert!(is_resolving_set(&spider, &[3, 5]).unwrap());

        // One center, four legs of length two: n1 = 4, one exterior branch
        // vertex, so the basis has three leaves.
        let mut edges = vec![];
        for leg in 0..4 {
            let mid = 1 + 2 * leg;
            let tip = 2 + 2 * leg;
            edges.push((0, mid));
            edges.push((mid, tip));
        }
        let spider4 = Graph::build(9, &edges).unwrap();
        let basis = standard_metric_basis(&spider4).unwrap();
        assert_eq!(basis.len(), 3);
        assert!(is_resolving_set(&spider4, &basis).unwrap());

        assert!(matches!(
            standard_metric_basis(&path_graph(4).unwrap()),
            Err(Error::IsAPath)
        ));
    }

    #[test]
    fn twin_bound_is_tight_on_stars_and_cliques() {
        let star = star_graph(4).unwrap();
        assert_eq!(twin_lower_bound(&star), 3);
        let k4 = Graph::build(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(twin_lower_bound(&k4), 3);
        assert_eq!(
            metric_dimension_exact(&k4, &SearchBudget::default())
                .unwrap()
                .value,
            3
        );
    }

    #[test]
    fn report_serializes_to_the_pinned_schema() {
        let report = tree_metric_dimension(&star_graph(3).unwrap())
            .unwrap()
            .without_timing();
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["value"], 2);
        assert_eq!(json["witness"], serde_json::json!([2, 3]));
        assert_eq!(json["method"], "formula");
        assert_eq!(json["subsets_examined"], 0);
        assert!(json.get("ms").is_none());
    }
}
