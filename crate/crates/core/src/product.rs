//! The Sierpinski product G (x)_f H, plus the named vertex functions,
//! witness constructions and graph families that go with it.
//!
//! The product places a copy of H (a layer) on every vertex of G, then adds
//! one connecting edge (g, f(g')) -- (g', f(g)) per edge gg' of G. Vertices
//! are encoded as `g * n(H) + h`.

use std::fmt;

use rand::Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{tree_metrics, Graph};

/// A function f: V(G) -> V(H), stored as one H-vertex index per G-vertex.
/// Any function is allowed; no adjacency constraint applies. Serialized and
/// displayed 1-based to match the usual notation for these products.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexFunction(Vec<usize>);

impl VertexFunction {
    pub fn new(values: Vec<usize>) -> Self {
        VertexFunction(values)
    }

    /// Parses 1-based values (as printed); entries must be >= 1.
    pub fn from_one_based(values: &[usize]) -> Result<Self> {
        if let Some(&v) = values.iter().find(|&&v| v == 0) {
            return Err(Error::OutOfRange {
                what: "1-based function value",
                value: v,
            });
        }
        Ok(VertexFunction(values.iter().map(|&v| v - 1).collect()))
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|&v| v + 1).collect()
    }

    pub fn random<R: Rng>(n_g: usize, n_h: usize, rng: &mut R) -> Self {
        VertexFunction((0..n_g).map(|_| rng.random_range(0..n_h)).collect())
    }

    pub fn validate(&self, n_g: usize, n_h: usize) -> Result<()> {
        if self.len() != n_g {
            return Err(Error::FunctionShapeMismatch {
                expected: n_g,
                got: self.len(),
            });
        }
        if let Some(&v) = self.0.iter().find(|&&v| v >= n_h) {
            return Err(Error::OutOfRange {
                what: "function value",
                value: v,
            });
        }
        Ok(())
    }
}

impl Serialize for VertexFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

impl fmt::Display for VertexFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.one_based().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// One connecting edge, together with the G-edge it comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConnectingEdge {
    /// The originating edge of G, as (g, g') with g < g'.
    pub g_edge: (usize, usize),
    /// The encoded product endpoints ((g, f(g')), (g', f(g))).
    pub edge: (usize, usize),
}

/// A constructed Sierpinski product with its factors and connecting edges.
#[derive(Debug, Clone)]
pub struct SierpinskiProduct {
    base: Graph,
    g_factor: Graph,
    h_factor: Graph,
    f: VertexFunction,
    connecting: Vec<ConnectingEdge>,
}

impl SierpinskiProduct {
    pub fn graph(&self) -> &Graph {
        &self.base
    }

    pub fn n_g(&self) -> usize {
        self.g_factor.n()
    }

    pub fn n_h(&self) -> usize {
        self.h_factor.n()
    }

    pub fn g_factor(&self) -> &Graph {
        &self.g_factor
    }

    pub fn h_factor(&self) -> &Graph {
        &self.h_factor
    }

    pub fn function(&self) -> &VertexFunction {
        &self.f
    }

    /// Connecting edges in G-edge order.
    pub fn connecting_edges(&self) -> &[ConnectingEdge] {
        &self.connecting
    }

    pub fn encode(&self, g: usize, h: usize) -> usize {
        g * self.n_h() + h
    }

    pub fn decode(&self, v: usize) -> (usize, usize) {
        (v / self.n_h(), v % self.n_h())
    }

    /// The vertices of layer gH: `{g * n(H) + h}` for all h.
    pub fn layer_vertices(&self, g: usize) -> Result<Vec<usize>> {
        if g >= self.n_g() {
            return Err(Error::OutOfRange {
                what: "layer index",
                value: g,
            });
        }
        Ok((g * self.n_h()..(g + 1) * self.n_h()).collect())
    }

    pub fn description(&self) -> ProductDescription {
        ProductDescription {
            n_g: self.n_g(),
            n_h: self.n_h(),
            f: self.f.clone(),
            index_base: 1,
            vertices: self.base.n(),
            edges: self.base.edges().collect(),
            connecting_edges: self.connecting.clone(),
        }
    }

    /// DOT export with one cluster per layer; connecting edges sit outside
    /// the clusters.
    pub fn to_dot(&self) -> String {
        use std::fmt::Write as _;
        let mut out = String::from("graph sierpinski_product {\n");
        for g in 0..self.n_g() {
            let _ = writeln!(out, "  subgraph cluster_layer{g} {{");
            let _ = writeln!(out, "    label = \"{g}H\";");
            for h in 0..self.n_h() {
                let v = self.encode(g, h);
                let _ = writeln!(out, "    p{v} [label=\"({g},{h})\"];");
            }
            for (hu, hv) in self.h_factor.edges() {
                let _ = writeln!(
                    out,
                    "    p{} -- p{};",
                    self.encode(g, hu),
                    self.encode(g, hv)
                );
            }
            let _ = writeln!(out, "  }}");
        }
        for c in &self.connecting {
            let _ = writeln!(out, "  p{} -- p{};", c.edge.0, c.edge.1);
        }
        out.push_str("}\n");
        out
    }
}

/// Serializable summary of a product, function shown 1-based.
#[derive(Debug, Clone, Serialize)]
pub struct ProductDescription {
    #[serde(rename = "nG")]
    pub n_g: usize,
    #[serde(rename = "nH")]
    pub n_h: usize,
    pub f: VertexFunction,
    pub index_base: u8,
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub connecting_edges: Vec<ConnectingEdge>,
}

/// Builds G (x)_f H. Layer edges replicate H inside every layer; one
/// connecting edge is added per edge of G, recorded in G-edge order.
pub fn sierpinski_product(g: &Graph, h: &Graph, f: &VertexFunction) -> Result<SierpinskiProduct> {
    f.validate(g.n(), h.n())?;
    let n_h = h.n();
    let encode = |gv: usize, hv: usize| gv * n_h + hv;
    let mut edges = Vec::with_capacity(g.n() * h.m() + g.m());
    for gv in 0..g.n() {
        for (hu, hv) in h.edges() {
            edges.push((encode(gv, hu), encode(gv, hv)));
        }
    }
    let fv = f.values();
    let mut connecting = Vec::with_capacity(g.m());
    for (gu, gv) in g.edges() {
        let edge = (encode(gu, fv[gv]), encode(gv, fv[gu]));
        edges.push(edge);
        connecting.push(ConnectingEdge {
            g_edge: (gu, gv),
            edge,
        });
    }
    let base = Graph::build(g.n() * n_h, &edges)?;
    debug_assert_eq!(base.m(), g.n() * h.m() + g.m());
    Ok(SierpinskiProduct {
        base,
        g_factor: g.clone(),
        h_factor: h.clone(),
        f: f.clone(),
        connecting,
    })
}

/// The constant function g -> w.
pub fn constant_function(g: &Graph, w: usize, h: &Graph) -> Result<VertexFunction> {
    if w >= h.n() {
        return Err(Error::OutOfRange {
            what: "constant function value",
            value: w,
        });
    }
    Ok(VertexFunction(vec![w; g.n()]))
}

/// Two-valued function on a path factor of length `n`, switching every other
/// pair of positions: position i (1-based) maps to `a` when i mod 4 is 1 or
/// 2, to `b` otherwise.
pub fn path_mod4_function(n: usize, a: usize, b: usize) -> VertexFunction {
    VertexFunction(
        (1..=n)
            .map(|i| if i % 4 == 1 || i % 4 == 2 { a } else { b })
            .collect(),
    )
}

/// Witness function for the path x tree dimension formula: picks leaves u1
/// and u2 from two distinct exterior branch vertices of terminal degree >= 2
/// when the tree has two of them, otherwise the two smallest leaves of the
/// unique exterior branch vertex, then alternates them mod 4 along the path.
/// Ties resolve to the smallest vertex index throughout.
pub fn path_tree_witness_function(n: usize, t2: &Graph) -> Result<VertexFunction> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "path length",
            value: n,
        });
    }
    if !t2.is_tree() {
        return Err(Error::NotATree);
    }
    if t2.is_path_graph() {
        return Err(Error::IsAPath);
    }
    let metrics = tree_metrics(t2)?;
    let heavy: Vec<usize> = metrics
        .exterior_branch
        .iter()
        .copied()
        .filter(|b| metrics.terminal_degree[b] >= 2)
        .collect();
    let (u1, u2) = if heavy.len() >= 2 {
        (
            metrics.leaves_of(heavy[0])[0],
            metrics.leaves_of(heavy[1])[0],
        )
    } else {
        // A single exterior branch vertex owns every leaf (the tree is a
        // star or subdivided star with terminal degree >= 3).
        let owned = metrics.leaves_of(heavy[0]);
        (owned[0], owned[1])
    };
    Ok(path_mod4_function(n, u1, u2))
}

/// The distinguished function on a cycle factor of length `n >= 3` used for
/// products with a triangle second factor; the resulting product is
/// isomorphic to `fk_graph(n)`. Values are stored 0-based; displayed 1-based
/// they read (1,2,3) for n=3, (1,1,2,2) for n=4, (1,2,3,3,1) for n=5, and
/// continue with the period-4 blocks (3,1,2,3) / (2,2,3,3).
pub fn cycle_triangle_function(n: usize) -> Result<VertexFunction> {
    if n < 3 {
        return Err(Error::OutOfRange {
            what: "cycle length",
            value: n,
        });
    }
    const B: [usize; 4] = [3, 1, 2, 3];
    const C: [usize; 4] = [2, 2, 3, 3];
    let mut one_based: Vec<usize> = Vec::with_capacity(n);
    match n % 4 {
        3 => {
            one_based.extend([1, 2, 3]);
            for _ in 0..n / 4 {
                one_based.extend(B);
            }
        }
        1 => {
            one_based.extend([1, 2, 3]);
            for _ in 0..(n - 5) / 4 {
                one_based.extend(B);
            }
            one_based.extend([3, 1]);
        }
        0 => {
            one_based.extend([1, 1]);
            for _ in 0..(n - 4) / 4 {
                one_based.extend(C);
            }
            one_based.extend([2, 2]);
        }
        _ => {
            one_based.extend([1, 1]);
            for _ in 0..(n - 2) / 4 {
                one_based.extend(C);
            }
        }
    }
    debug_assert_eq!(one_based.len(), n);
    VertexFunction::from_one_based(&one_based)
}

/// The 3k-vertex graph built from a 2k-cycle v_0..v_{2k-1} by attaching k
/// extra vertices u_{2i}, each adjacent to v_{2i-1} and v_{2i}. Numbering:
/// v_j -> j, u_{2i} -> 2k + i.
pub fn fk_graph(k: usize) -> Result<Graph> {
    if k < 3 {
        return Err(Error::OutOfRange {
            what: "fk parameter",
            value: k,
        });
    }
    let rim = 2 * k;
    let mut edges: Vec<(usize, usize)> = (0..rim).map(|j| (j, (j + 1) % rim)).collect();
    for i in 0..k {
        let u = rim + i;
        edges.push((u, (2 * i + rim - 1) % rim));
        edges.push((u, 2 * i));
    }
    Graph::build(3 * k, &edges)
}

/// The n-vertex resolving set Z of a cycle x triangle product: per layer i,
/// take the incoming connecting vertex y_i = (g_i, f(g_{i-1})) when it
/// differs from the outgoing one x_i = (g_i, f(g_{i+1})), otherwise the
/// smallest layer vertex distinct from both. Requires the first factor to be
/// a canonically numbered cycle and the second a triangle.
pub fn z_resolving_set(p: &SierpinskiProduct) -> Result<Vec<usize>> {
    let n = p.n_g();
    if !p.g_factor().is_canonical_cycle() || !p.h_factor().is_cycle_graph() || p.n_h() != 3 {
        return Err(Error::WrongFactors);
    }
    let f = p.function().values();
    let mut z = Vec::with_capacity(n);
    for i in 0..n {
        let x = p.encode(i, f[(i + 1) % n]);
        let y = p.encode(i, f[(i + n - 1) % n]);
        if x != y {
            z.push(y);
        } else {
            let w = (0..3)
                .map(|h| p.encode(i, h))
                .find(|&v| v != x)
                .expect("a triangle layer has three vertices");
            z.push(w);
        }
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cycle_graph, path_graph, star_graph};
    use crate::iso::is_isomorphic;
    use crate::metric_dim::{is_resolving_set, metric_dimension_exact, twin_classes, SearchBudget};
    use crate::search::FunctionSpace;

    #[test]
    fn smallest_product_is_a_path() {
        let k2 = path_graph(2).unwrap();
        let f = VertexFunction::new(vec![0, 0]);
        let p = sierpinski_product(&k2, &k2, &f).unwrap();
        assert_eq!(p.graph().n(), 4);
        assert_eq!(p.graph().m(), 3);
        assert!(is_isomorphic(p.graph(), &path_graph(4).unwrap()));
        assert_eq!(p.connecting_edges().len(), 1);
        assert_eq!(p.connecting_edges()[0].edge, (0, 2));
    }

    #[test]
    fn function_validation() {
        let k2 = path_graph(2).unwrap();
        let c3 = cycle_graph(3).unwrap();
        assert!(matches!(
            sierpinski_product(&k2, &c3, &VertexFunction::new(vec![0])),
            Err(Error::FunctionShapeMismatch {
                expected: 2,
                got: 1
            })
        ));
        assert!(matches!(
            sierpinski_product(&k2, &c3, &VertexFunction::new(vec![0, 3])),
            Err(Error::OutOfRange { .. })
        ));
        assert!(VertexFunction::from_one_based(&[1, 0]).is_err());
    }

    #[test]
    fn cycle5_product_matches_the_attached_triangle_graph() {
        let g = cycle_graph(5).unwrap();
        let h = cycle_graph(3).unwrap();
        let f = cycle_triangle_function(5).unwrap();
        assert_eq!(f.one_based(), vec![1, 2, 3, 3, 1]);
        let p = sierpinski_product(&g, &h, &f).unwrap();
        assert_eq!(p.graph().n(), 15);
        assert_eq!(p.graph().m(), 20);
        assert!(is_isomorphic(p.graph(), &fk_graph(5).unwrap()));
    }

    #[test]
    fn products_of_trees_are_trees() {
        let t1 = star_graph(3).unwrap();
        let t2 = path_graph(3).unwrap();
        for f in FunctionSpace::new(t1.n(), t2.n()).iter() {
            let p = sierpinski_product(&t1, &t2, &f).unwrap();
            assert!(p.graph().is_tree());
        }
    }

    #[test]
    fn layer_vertices_partition_the_product() {
        let p = sierpinski_product(
            &cycle_graph(3).unwrap(),
            &cycle_graph(3).unwrap(),
            &VertexFunction::new(vec![0, 0, 0]),
        )
        .unwrap();
        assert_eq!(p.layer_vertices(0).unwrap(), vec![0, 1, 2]);
        assert_eq!(p.layer_vertices(2).unwrap(), vec![6, 7, 8]);
        let mut all: Vec<usize> = (0..3).flat_map(|g| p.layer_vertices(g).unwrap()).collect();
        all.sort_unstable();
        assert_eq!(all, (0..9).collect::<Vec<_>>());
        assert!(matches!(p.layer_vertices(3), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn constant_function_makes_layer_twins() {
        let g = cycle_graph(4).unwrap();
        let h = cycle_graph(3).unwrap();
        let f = constant_function(&g, 0, &h).unwrap();
        assert_eq!(f.values(), &[0, 0, 0, 0]);
        let p = sierpinski_product(&g, &h, &f).unwrap();
        // In every layer the two vertices away from the root are twins.
        let classes = twin_classes(p.graph());
        let mut twin_layers = [false; 4];
        for class in classes.iter().filter(|c| c.len() == 2) {
            let (g0, _) = p.decode(class[0]);
            let (g1, _) = p.decode(class[1]);
            assert_eq!(g0, g1);
            twin_layers[g0] = true;
        }
        assert!(twin_layers.iter().all(|&t| t));
        assert!(matches!(
            constant_function(&g, 3, &h),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn constant_function_on_a_branch_vertex_multiplies_leaves() {
        let t1 = path_graph(3).unwrap();
        let t2 = star_graph(3).unwrap();
        let f = constant_function(&t1, 0, &t2).unwrap(); // 0 is the branch vertex
        let p = sierpinski_product(&t1, &t2, &f).unwrap();
        let metrics = tree_metrics(p.graph()).unwrap();
        assert_eq!(metrics.leaf_count(), 3 * 3);
        assert_eq!(metrics.exterior_count(), 3);
    }

    #[test]
    fn mod4_function_pattern() {
        let f = path_mod4_function(6, 7, 9);
        assert_eq!(f.values(), &[7, 7, 9, 9, 7, 7]);
        // Paths glued end to end along the mod-4 pattern stay a path.
        let p5 = path_graph(5).unwrap();
        let p4 = path_graph(4).unwrap();
        let f = path_mod4_function(5, 0, 3);
        let p = sierpinski_product(&p5, &p4, &f).unwrap();
        assert!(is_isomorphic(p.graph(), &path_graph(20).unwrap()));
    }

    #[test]
    fn witness_function_choices() {
        // Star: the two smallest leaves.
        let star = star_graph(3).unwrap();
        let f = path_tree_witness_function(3, &star).unwrap();
        assert_eq!(f.values(), &[1, 1, 2]);

        // Double spider: one terminal leaf from each exterior branch vertex.
        let spider = Graph::build(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]).unwrap();
        let f = path_tree_witness_function(3, &spider).unwrap();
        assert_eq!(f.values(), &[2, 2, 4]);
        let p = sierpinski_product(&path_graph(3).unwrap(), &spider, &f).unwrap();
        assert_eq!(
            metric_dimension_exact(p.graph(), &SearchBudget::default())
                .unwrap()
                .value,
            2
        );

        assert!(matches!(
            path_tree_witness_function(3, &path_graph(4).unwrap()),
            Err(Error::IsAPath)
        ));
        assert!(matches!(
            path_tree_witness_function(3, &cycle_graph(4).unwrap()),
            Err(Error::NotATree)
        ));
    }

    #[test]
    fn mod4_witness_products_lose_two_leaves_per_layer() {
        // Gluing along two leaves of distinct exterior branch vertices
        // leaves every inner layer two leaves short and the end layers one.
        let spider = Graph::build(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]).unwrap();
        for n in 2..=5 {
            let f = path_tree_witness_function(n, &spider).unwrap();
            let p = sierpinski_product(&path_graph(n).unwrap(), &spider, &f).unwrap();
            let metrics = tree_metrics(p.graph()).unwrap();
            let t2_leaves = tree_metrics(&spider).unwrap().leaf_count();
            assert_eq!(metrics.leaf_count(), n * (t2_leaves - 2) + 2);
            assert_eq!(metrics.exterior_count(), n * 2);
        }
    }

    #[test]
    fn cycle_triangle_function_literal_vectors() {
        for (n, expected) in [
            (3, vec![1, 2, 3]),
            (4, vec![1, 1, 2, 2]),
            (5, vec![1, 2, 3, 3, 1]),
            (6, vec![1, 1, 2, 2, 3, 3]),
            (7, vec![1, 2, 3, 3, 1, 2, 3]),
            (8, vec![1, 1, 2, 2, 3, 3, 2, 2]),
            (9, vec![1, 2, 3, 3, 1, 2, 3, 3, 1]),
        ] {
            assert_eq!(cycle_triangle_function(n).unwrap().one_based(), expected);
        }
        assert!(cycle_triangle_function(2).is_err());
        for n in 3..=30 {
            assert_eq!(cycle_triangle_function(n).unwrap().len(), n);
        }
    }

    #[test]
    fn fk_graph_shape() {
        let f3 = fk_graph(3).unwrap();
        assert_eq!((f3.n(), f3.m()), (9, 12));
        // u_{2i} is adjacent to v_{2i-1} and v_{2i}.
        assert_eq!(f3.neighbors(6), &[0, 5]);
        assert_eq!(f3.neighbors(7), &[1, 2]);
        assert_eq!(f3.neighbors(8), &[3, 4]);
        assert!(fk_graph(2).is_err());
    }

    #[test]
    fn z_set_layouts() {
        let g = cycle_graph(5).unwrap();
        let h = cycle_graph(3).unwrap();

        // Constant function: x_i = y_i everywhere, so Z picks layer-internal
        // vertices.
        let f1 = constant_function(&g, 0, &h).unwrap();
        let p = sierpinski_product(&g, &h, &f1).unwrap();
        let z = z_resolving_set(&p).unwrap();
        assert_eq!(z.len(), 5);
        for (i, &zi) in z.iter().enumerate() {
            let (layer, h_vertex) = p.decode(zi);
            assert_eq!(layer, i);
            assert_ne!(h_vertex, 0);
        }

        // The distinguished function: x_i != y_i everywhere, so Z is the set
        // of incoming connecting vertices.
        let fn5 = cycle_triangle_function(5).unwrap();
        let p = sierpinski_product(&g, &h, &fn5).unwrap();
        let z = z_resolving_set(&p).unwrap();
        let fv = fn5.values();
        for (i, &zi) in z.iter().enumerate() {
            assert_eq!(zi, p.encode(i, fv[(i + 4) % 5]));
        }

        let bad = sierpinski_product(
            &path_graph(3).unwrap(),
            &h,
            &VertexFunction::new(vec![0; 3]),
        )
        .unwrap();
        assert!(matches!(z_resolving_set(&bad), Err(Error::WrongFactors)));
    }

    #[test]
    fn z_set_resolves_every_function_on_the_5_cycle() {
        let g = cycle_graph(5).unwrap();
        let h = cycle_graph(3).unwrap();
        for f in FunctionSpace::new(5, 3).iter() {
            let p = sierpinski_product(&g, &h, &f).unwrap();
            let z = z_resolving_set(&p).unwrap();
            assert!(
                is_resolving_set(p.graph(), &z).unwrap(),
                "Z failed for f = {f}"
            );
        }
    }

    #[test]
    fn description_serializes_one_based() {
        let p = sierpinski_product(
            &cycle_graph(5).unwrap(),
            &cycle_graph(3).unwrap(),
            &cycle_triangle_function(5).unwrap(),
        )
        .unwrap();
        let json = serde_json::to_value(p.description()).unwrap();
        assert_eq!(json["nG"], 5);
        assert_eq!(json["nH"], 3);
        assert_eq!(json["index_base"], 1);
        assert_eq!(json["f"], serde_json::json!([1, 2, 3, 3, 1]));
        assert_eq!(json["edges"].as_array().unwrap().len(), 20);
        assert_eq!(json["connecting_edges"].as_array().unwrap().len(), 5);
    }

    #[test]
    fn dot_clusters_layers() {
        let p = sierpinski_product(
            &path_graph(2).unwrap(),
            &path_graph(2).unwrap(),
            &VertexFunction::new(vec![0, 0]),
        )
        .unwrap();
        let dot = p.to_dot();
        assert!(dot.contains("subgraph cluster_layer0"));
        assert!(dot.contains("subgraph cluster_layer1"));
        assert!(dot.contains("p0 -- p2;"));
    }
}
