//! Sierpinski metric dimension: dim_S(G, H) and Dim_S(G, H) computed exactly
//! by enumerating every function f: V(G) -> V(H), plus the closed formulas
//! and bounds that serve as fast paths and that the enumerator cross-checks.
//!
//! Enumeration order is the base-n(H) counter over function vectors (most
//! significant digit first), so it matches lexicographic order on the
//! vectors. Parallel scans partition the counter range into contiguous
//! blocks, one per worker, and merge partial results in block order with
//! ties resolved toward the smaller counter index; witnesses therefore do
//! not depend on the worker count.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metric_dim::{
    metric_dimension_at_most, metric_dimension_exact, serialize_ms, tree_metric_dimension,
    SearchBudget,
};
use crate::product::{
    constant_function, path_mod4_function, path_tree_witness_function, sierpinski_product,
    VertexFunction,
};

/// The family of functions V(G) -> V(H), enumerable as a base-n(H) counter.
#[derive(Debug, Clone, Copy)]
pub struct FunctionSpace {
    n_g: usize,
    n_h: usize,
}

impl FunctionSpace {
    pub fn new(n_g: usize, n_h: usize) -> Self {
        FunctionSpace { n_g, n_h }
    }

    /// n(H)^n(G), or None when it does not fit in 128 bits.
    pub fn count(&self) -> Option<u128> {
        let mut total: u128 = 1;
        for _ in 0..self.n_g {
            total = total.checked_mul(self.n_h as u128)?;
        }
        Some(total)
    }

    /// The function at counter position `index` (0-based, lexicographic).
    pub fn function_at(&self, index: u128) -> VertexFunction {
        let mut values = vec![0usize; self.n_g];
        let mut rest = index;
        for slot in values.iter_mut().rev() {
            *slot = (rest % self.n_h as u128) as usize;
            rest /= self.n_h as u128;
        }
        VertexFunction::new(values)
    }

    pub fn iter(&self) -> FunctionIter {
        let end = self.count().expect("function space too large to iterate");
        self.iter_range(0, end)
    }

    /// Iterates counter positions `start..end`.
    pub fn iter_range(&self, start: u128, end: u128) -> FunctionIter {
        let current = if start < end {
            self.function_at(start).values().to_vec()
        } else {
            vec![0; self.n_g]
        };
        FunctionIter {
            space: *self,
            next: start,
            end,
            current,
        }
    }
}

pub struct FunctionIter {
    space: FunctionSpace,
    next: u128,
    end: u128,
    current: Vec<usize>,
}

impl Iterator for FunctionIter {
    type Item = VertexFunction;

    fn next(&mut self) -> Option<VertexFunction> {
        if self.next >= self.end {
            return None;
        }
        let out = VertexFunction::new(self.current.clone());
        self.next += 1;
        // Odometer increment, least significant digit last.
        for digit in self.current.iter_mut().rev() {
            *digit += 1;
            if *digit < self.space.n_h {
                break;
            }
            *digit = 0;
        }
        Some(out)
    }
}

/// Knobs for the exhaustive scan.
#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Budget in functions examined.
    pub max_functions: u64,
    /// Wall-clock ceiling for the whole scan.
    pub time_limit: Option<Duration>,
    /// Worker threads; results are identical for any count.
    pub workers: usize,
    /// Collect the dimension histogram (disables nothing here, but targeted
    /// scans refuse to early-exit when it is set).
    pub histogram: bool,
    /// Budget for each per-function subset search.
    pub subset_budget: SearchBudget,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_functions: 10_000_000,
            time_limit: None,
            workers: 1,
            histogram: false,
            subset_budget: SearchBudget::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SdimMethod {
    Formula,
    Enumeration,
}

/// Both Sierpinski dimensions with the functions attaining them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SierpinskiDimensionReport {
    pub dim_s: usize,
    #[serde(rename = "Dim_s")]
    pub upper_dim_s: usize,
    pub argmin_f: Option<VertexFunction>,
    pub argmax_f: Option<VertexFunction>,
    pub method: SdimMethod,
    pub functions_examined: u64,
    /// False when a budget stopped the scan early; the extremes are then
    /// only running values over the examined prefix.
    pub exhaustive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub histogram: Option<BTreeMap<usize, u64>>,
    pub index_base: u8,
    #[serde(
        rename = "ms",
        skip_serializing_if = "Option::is_none",
        serialize_with = "serialize_ms"
    )]
    pub elapsed: Option<Duration>,
}

impl SierpinskiDimensionReport {
    pub fn without_timing(mut self) -> Self {
        self.elapsed = None;
        self
    }
}

/// Exact dim_S and Dim_S by scanning the whole function space. Per-function
/// dimensions go through the exact subset search, except when both factors
/// are trees, where the product is a tree and the closed formula applies.
/// Witness tie-break: the lexicographically smallest function.
pub fn sierpinski_dims_exhaustive(
    g: &Graph,
    h: &Graph,
    opts: &SearchOptions,
) -> Result<SierpinskiDimensionReport> {
    let started = Instant::now();
    if g.n() == 0 || h.n() == 0 || !g.is_connected() || !h.is_connected() {
        return Err(Error::Disconnected);
    }
    let space = FunctionSpace::new(g.n(), h.n());
    let total = space.count().ok_or(Error::FunctionSpaceOverflow {
        n_g: g.n(),
        n_h: h.n(),
    })?;
    let tree_route = g.is_tree() && h.is_tree();
    let deadline = opts.time_limit.map(|limit| started + limit);

    let workers = opts.workers.max(1);
    let blocks = partition_with_budget(total, workers, opts.max_functions);
    let partials: Vec<Result<Partial>> = if workers == 1 || blocks.len() <= 1 {
        blocks
            .iter()
            .map(|b| scan_block(g, h, space, b, tree_route, opts, deadline))
            .collect()
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = blocks
                .iter()
                .map(|b| {
                    scope.spawn(move || scan_block(g, h, space, b, tree_route, opts, deadline))
                })
                .collect();
            handles
                .into_iter()
                .map(|jh| jh.join().expect("worker panicked"))
                .collect()
        })
    };

    let mut merged = Partial::default();
    for partial in partials {
        merged.absorb(partial?);
    }
    // A budget that is smaller than the space also counts as truncation.
    let truncated = merged.truncated || (merged.examined as u128) < total;

    let mut histogram = None;
    if opts.histogram {
        histogram = Some(merged.histogram);
    }
    let report = SierpinskiDimensionReport {
        dim_s: merged.min.as_ref().map(|(d, _, _)| *d).unwrap_or(0),
        upper_dim_s: merged.max.as_ref().map(|(d, _, _)| *d).unwrap_or(0),
        argmin_f: merged.min.map(|(_, _, f)| f),
        argmax_f: merged.max.map(|(_, _, f)| f),
        method: SdimMethod::Enumeration,
        functions_examined: merged.examined,
        exhaustive: !truncated,
        histogram,
        index_base: 1,
        elapsed: Some(started.elapsed()),
    };
    if truncated {
        return Err(Error::EnumerationBudgetExceeded {
            partial: Box::new(report),
        });
    }
    Ok(report)
}

/// Contiguous counter blocks, one per worker, with the examination budget
/// handed out greedily in block order so the examined prefix of the space is
/// the same for every worker count.
fn partition_with_budget(total: u128, workers: usize, budget: u64) -> Vec<Block> {
    let workers = workers.max(1) as u128;
    let base = total / workers;
    let extra = total % workers;
    let mut blocks = Vec::new();
    let mut start = 0u128;
    let mut remaining_budget = budget as u128;
    for i in 0..workers {
        let len = base + u128::from(i < extra);
        if len == 0 {
            continue;
        }
        let cap = len.min(remaining_budget);
        remaining_budget -= cap;
        blocks.push(Block {
            start,
            end: start + len,
            cap: cap as u64,
        });
        start += len;
    }
    blocks
}

#[derive(Debug, Clone, Copy)]
struct Block {
    start: u128,
    end: u128,
    cap: u64,
}

#[derive(Debug, Default)]
struct Partial {
    min: Option<(usize, u128, VertexFunction)>,
    max: Option<(usize, u128, VertexFunction)>,
    examined: u64,
    histogram: BTreeMap<usize, u64>,
    truncated: bool,
}

impl Partial {
    /// Merge a later block into this one. Strict comparisons keep the
    /// earlier (smaller counter index) witness on ties.
    fn absorb(&mut self, other: Partial) {
        if let Some(candidate) = other.min {
            if self.min.as_ref().is_none_or(|best| candidate.0 < best.0) {
                self.min = Some(candidate);
            }
        }
        if let Some(candidate) = other.max {
            if self.max.as_ref().is_none_or(|best| candidate.0 > best.0) {
                self.max = Some(candidate);
            }
        }
        self.examined += other.examined;
        for (dim, count) in other.histogram {
            *self.histogram.entry(dim).or_insert(0) += count;
        }
        self.truncated |= other.truncated;
    }
}

fn scan_block(
    g: &Graph,
    h: &Graph,
    space: FunctionSpace,
    block: &Block,
    tree_route: bool,
    opts: &SearchOptions,
    deadline: Option<Instant>,
) -> Result<Partial> {
    let mut out = Partial::default();
    for (f, index) in space.iter_range(block.start, block.end).zip(block.start..) {
        if out.examined >= block.cap {
            out.truncated = true;
            return Ok(out);
        }
        if out.examined.is_multiple_of(64) && deadline.is_some_and(|d| Instant::now() >= d) {
            out.truncated = true;
            return Ok(out);
        }
        let dim = product_dimension(g, h, &f, tree_route, &opts.subset_budget)?;
        out.examined += 1;
        *out.histogram.entry(dim).or_insert(0) += 1;
        if out.min.as_ref().is_none_or(|best| dim < best.0) {
            out.min = Some((dim, index, f.clone()));
        }
        if out.max.as_ref().is_none_or(|best| dim > best.0) {
            out.max = Some((dim, index, f));
        }
    }
    Ok(out)
}

fn product_dimension(
    g: &Graph,
    h: &Graph,
    f: &VertexFunction,
    tree_route: bool,
    budget: &SearchBudget,
) -> Result<usize> {
    let p = sierpinski_product(g, h, f)?;
    let report = if tree_route {
        tree_metric_dimension(p.graph())?
    } else {
        metric_dimension_exact(p.graph(), budget)?
    };
    Ok(report.value)
}

/// Targeted scan: the first function (in counter order) whose product has
/// dimension at most `target`. This is the documented early-exit mode; it
/// refuses to run in histogram mode, where the full scan is wanted.
pub fn find_function_attaining(
    g: &Graph,
    h: &Graph,
    target: usize,
    opts: &SearchOptions,
) -> Result<Option<(u128, VertexFunction)>> {
    if opts.histogram {
        return Err(Error::HypothesisViolated(
            "early-exit scan is incompatible with histogram collection",
        ));
    }
    if g.n() == 0 || h.n() == 0 || !g.is_connected() || !h.is_connected() {
        return Err(Error::Disconnected);
    }
    let started = Instant::now();
    let deadline = opts.time_limit.map(|limit| started + limit);
    let space = FunctionSpace::new(g.n(), h.n());
    space.count().ok_or(Error::FunctionSpaceOverflow {
        n_g: g.n(),
        n_h: h.n(),
    })?;
    let tree_route = g.is_tree() && h.is_tree();
    for (index, f) in space.iter().enumerate() {
        if index as u64 >= opts.max_functions || deadline.is_some_and(|d| Instant::now() >= d) {
            return Err(Error::BudgetExceeded {
                lower: 0,
                upper: None,
                examined: index as u64,
            });
        }
        let hit = if tree_route {
            let p = sierpinski_product(g, h, &f)?;
            tree_metric_dimension(p.graph())?.value <= target
        } else {
            let p = sierpinski_product(g, h, &f)?;
            metric_dimension_at_most(p.graph(), target, &opts.subset_budget)?.is_some()
        };
        if hit {
            return Ok(Some((index as u128, f)));
        }
    }
    Ok(None)
}

/// Dim_S(T1, T2) = n(T1) * dim(T2) for trees with n(T2) >= 3.
pub fn tree_upper_formula(t1: &Graph, t2: &Graph) -> Result<usize> {
    if !t1.is_tree() || !t2.is_tree() {
        return Err(Error::HypothesisViolated("both factors must be trees"));
    }
    if t2.n() < 3 {
        return Err(Error::HypothesisViolated(
            "second factor needs at least 3 vertices",
        ));
    }
    Ok(t1.n() * tree_metric_dimension(t2)?.value)
}

/// Lower bound for dim_S(T1, T2) when T2 is a non-path tree: the sum over
/// v in V(T1) of max(0, dim(T2) - deg(v)).
pub fn tree_lower_bound(t1: &Graph, t2: &Graph) -> Result<usize> {
    if !t1.is_tree() || !t2.is_tree() {
        return Err(Error::HypothesisViolated("both factors must be trees"));
    }
    if t2.is_path_graph() {
        return Err(Error::HypothesisViolated(
            "second factor must not be a path",
        ));
    }
    let dim2 = tree_metric_dimension(t2)?.value;
    Ok((0..t1.n()).map(|v| dim2.saturating_sub(t1.degree(v))).sum())
}

/// dim_S(P_n, T2) = n * (dim(T2) - 2) + 2 for n >= 2 and a non-path tree T2.
pub fn path_tree_formula(n: usize, t2: &Graph) -> Result<usize> {
    if n < 2 {
        return Err(Error::HypothesisViolated("path needs at least 2 vertices"));
    }
    if !t2.is_tree() {
        return Err(Error::HypothesisViolated("second factor must be a tree"));
    }
    if t2.is_path_graph() {
        return Err(Error::HypothesisViolated(
            "second factor must not be a path",
        ));
    }
    let dim2 = tree_metric_dimension(t2)?.value;
    Ok(n * (dim2 - 2) + 2)
}

/// (dim_S, Dim_S) of a cycle x triangle product: (2, n) for n >= 3.
pub fn cycle_triangle_dims(n: usize) -> Result<(usize, usize)> {
    if n < 3 {
        return Err(Error::OutOfRange {
            what: "cycle length",
            value: n,
        });
    }
    Ok((2, n))
}

/// Closed-form report for factor pairs the formulas cover, with the witness
/// constructions attached: cycle x triangle, tree pairs whose first factor
/// is a path, and single-vertex factors. Returns None when no formula pins
/// both dimensions.
pub fn formula_report(g: &Graph, h: &Graph) -> Result<Option<SierpinskiDimensionReport>> {
    let make = |dim_s: usize,
                upper: usize,
                argmin: Option<VertexFunction>,
                argmax: Option<VertexFunction>| {
        SierpinskiDimensionReport {
            dim_s,
            upper_dim_s: upper,
            argmin_f: argmin,
            argmax_f: argmax,
            method: SdimMethod::Formula,
            functions_examined: 0,
            exhaustive: true,
            histogram: None,
            index_base: 1,
            elapsed: None,
        }
    };

    // Single layer: the product is a copy of H regardless of f.
    if g.n() == 1 {
        let dim = dimension_of(h)?;
        let f = VertexFunction::new(vec![0]);
        return Ok(Some(make(dim, dim, Some(f.clone()), Some(f))));
    }
    // Single-vertex layers: the product is a copy of G.
    if h.n() == 1 {
        let dim = dimension_of(g)?;
        let f = constant_function(g, 0, h)?;
        return Ok(Some(make(dim, dim, Some(f.clone()), Some(f))));
    }

    if g.is_canonical_cycle() && h.is_cycle_graph() && h.n() == 3 {
        let (lo, hi) = cycle_triangle_dims(g.n())?;
        let argmin = crate::product::cycle_triangle_function(g.n())?;
        let argmax = constant_function(g, 0, h)?;
        return Ok(Some(make(lo, hi, Some(argmin), Some(argmax))));
    }

    if g.is_tree() && h.is_tree() && g.is_path_graph() && h.n() >= 3 {
        let upper = tree_upper_formula(g, h)?;
        if h.is_path_graph() {
            // Path x path: alternating the endpoints mod 4 chains the layers
            // into one long path.
            let endpoints: Vec<usize> = (0..h.n()).filter(|&v| h.degree(v) == 1).collect();
            let argmin = path_mod4_function(g.n(), endpoints[0], endpoints[1]);
            return Ok(Some(make(1, upper, Some(argmin), None)));
        }
        let dim_s = path_tree_formula(g.n(), h)?;
        let argmin = path_tree_witness_function(g.n(), h)?;
        let branch = (0..h.n())
            .find(|&v| h.degree(v) >= 3)
            .expect("non-path tree has a branch vertex");
        let argmax = constant_function(g, branch, h)?;
        return Ok(Some(make(dim_s, upper, Some(argmin), Some(argmax))));
    }

    Ok(None)
}

fn dimension_of(g: &Graph) -> Result<usize> {
    let report = if g.is_tree() {
        tree_metric_dimension(g)?
    } else {
        metric_dimension_exact(g, &SearchBudget::default())?
    };
    Ok(report.value)
}
