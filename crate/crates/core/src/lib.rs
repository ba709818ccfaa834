//! Sierpinski products of graphs and their metric dimensions.
//!
//! The product G (x)_f H places a copy of H on every vertex of G and joins
//! copies along the edges of G through a vertex function f. This crate
//! builds such products, computes exact metric dimension (subset search with
//! a twin-class lower bound, plus the closed tree formula), computes the
//! Sierpinski metric dimension dim_S and its upper variant Dim_S by
//! enumerating the whole function space, ships the closed formulas and
//! witness constructions for tree and cycle x triangle factors, and checks
//! that layers are convex subgraphs.

pub mod convexity;
pub mod error;
pub mod families;
pub mod graph;
pub mod iso;
pub mod metric_dim;
pub mod product;
pub mod search;
pub mod verify;

pub use convexity::{is_convex_subgraph, verify_layer_convexity, ConvexityReport};
pub use error::{Error, Result};
pub use families::{
    cycle_graph, enumerate_trees, path_graph, random_connected_graph, random_tree, star_graph,
    tree_from_pruefer,
};
pub use graph::{tree_metrics, DistanceMatrix, Graph, TreeMetrics, UNREACHABLE};
pub use iso::{canonical_form, is_isomorphic, CanonicalForm};
pub use metric_dim::{
    is_resolving_set, metric_dimension_at_most, metric_dimension_exact, standard_metric_basis,
    tree_metric_dimension, twin_classes, twin_lower_bound, DimensionReport, Method,
    MetricRepresentation, SearchBudget,
};
pub use product::{
    constant_function, cycle_triangle_function, fk_graph, path_mod4_function,
    path_tree_witness_function, sierpinski_product, z_resolving_set, ConnectingEdge,
    ProductDescription, SierpinskiProduct, VertexFunction,
};
pub use search::{
    cycle_triangle_dims, find_function_attaining, formula_report, path_tree_formula,
    sierpinski_dims_exhaustive, tree_lower_bound, tree_upper_formula, FunctionSpace, SdimMethod,
    SearchOptions, SierpinskiDimensionReport,
};
pub use verify::{
    random_convexity_sweep, tree_label, tree_pairs, verify_convexity_suite, verify_cycle_suite,
    verify_tree_suite, ClaimResult, ConvexitySweep,
};
