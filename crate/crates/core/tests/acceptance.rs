//! Acceptance suite: one test per release criterion, each printing a
//! PASS line when it completes. The exhaustive enumerations here are the
//! ground truth the closed formulas are held to.

use sierpinski_core::{
    constant_function, cycle_graph, cycle_triangle_function, enumerate_trees, fk_graph,
    is_convex_subgraph, is_isomorphic, is_resolving_set, metric_dimension_exact, path_graph,
    path_mod4_function, path_tree_formula, path_tree_witness_function, random_convexity_sweep,
    sierpinski_dims_exhaustive, sierpinski_product, tree_label, tree_lower_bound,
    tree_metric_dimension, tree_pairs, tree_upper_formula, verify_layer_convexity, FunctionSpace,
    Graph, SearchBudget, SearchOptions, VertexFunction,
};

fn opts(workers: usize) -> SearchOptions {
    SearchOptions {
        workers,
        ..SearchOptions::default()
    }
}

fn exact_dim(g: &Graph) -> usize {
    metric_dimension_exact(g, &SearchBudget::default())
        .unwrap()
        .value
}

#[test]
fn criterion_01_tree_formula_oracle_agreement() {
    let mut checked = 0;
    for n in 1..=10 {
        for t in enumerate_trees(n).unwrap() {
            let formula = tree_metric_dimension(&t).unwrap().value;
            let search = exact_dim(&t);
            assert_eq!(
                formula,
                search,
                "formula {formula} != search {search} on {}",
                tree_label(&t)
            );
            checked += 1;
        }
    }
    assert_eq!(checked, 201);
    println!("criterion 1 PASS: tree formula = exact search on all {checked} trees with n <= 10");
}

#[test]
fn criterion_02_fk_lemma() {
    for k in 3..=8 {
        let fk = fk_graph(k).unwrap();
        assert_eq!(exact_dim(&fk), 2, "dim(F_{k}) != 2");
        let witness = [2 * k, 2 * k + (k.div_ceil(2) - 1)];
        assert!(
            is_resolving_set(&fk, &witness).unwrap(),
            "witness pair not resolving for F_{k}"
        );
    }
    println!("criterion 2 PASS: dim(F_k) = 2 with the stated resolving pair for k = 3..8");
}

#[test]
fn criterion_03_cycle_triangle_theorems_by_exhaustion() {
    let triangle = cycle_graph(3).unwrap();
    for n in 3..=6 {
        let cycle = cycle_graph(n).unwrap();
        let report = sierpinski_dims_exhaustive(&cycle, &triangle, &opts(4)).unwrap();
        assert!(report.exhaustive);
        assert_eq!(report.functions_examined, 3u64.pow(n as u32));
        assert_eq!(report.dim_s, 2, "dim_S(C_{n}, C_3)");
        assert_eq!(report.upper_dim_s, n, "Dim_S(C_{n}, C_3)");

        let constant = constant_function(&cycle, 0, &triangle).unwrap();
        let product = sierpinski_product(&cycle, &triangle, &constant).unwrap();
        assert!(exact_dim(product.graph()) >= n, "constant witness at n={n}");

        let distinguished = cycle_triangle_function(n).unwrap();
        let product = sierpinski_product(&cycle, &triangle, &distinguished).unwrap();
        assert_eq!(exact_dim(product.graph()), 2, "f_n witness at n={n}");
    }
    println!(
        "criterion 3 PASS: exhaustive dim_S = 2 and Dim_S = n for C_n x C_3, n = 3..6, \
         with both witnesses attaining"
    );
}

#[test]
fn criterion_04_fn_correspondence() {
    let triangle = cycle_graph(3).unwrap();
    for n in 3..=10 {
        let cycle = cycle_graph(n).unwrap();
        let f = cycle_triangle_function(n).unwrap();
        let product = sierpinski_product(&cycle, &triangle, &f).unwrap();
        assert!(
            is_isomorphic(product.graph(), &fk_graph(n).unwrap()),
            "C_{n} x C_3 under f_{n} is not F_{n}"
        );
    }
    println!("criterion 4 PASS: C_n x_f C_3 isomorphic to F_n for n = 3..10");
}

#[test]
fn criterion_05_tree_upper_theorem_by_exhaustion() {
    let mut pairs = 0;
    for (t1, t2) in tree_pairs(4, 3, 6).unwrap() {
        let report = sierpinski_dims_exhaustive(&t1, &t2, &opts(2)).unwrap();
        let upper = tree_upper_formula(&t1, &t2).unwrap();
        assert_eq!(
            report.upper_dim_s,
            upper,
            "Dim_S({}, {})",
            tree_label(&t1),
            tree_label(&t2)
        );
        if !t2.is_path_graph() {
            let branch = (0..t2.n()).find(|&v| t2.degree(v) >= 3).unwrap();
            let fw = constant_function(&t1, branch, &t2).unwrap();
            let product = sierpinski_product(&t1, &t2, &fw).unwrap();
            assert_eq!(
                tree_metric_dimension(product.graph()).unwrap().value,
                upper,
                "constant witness for ({}, {})",
                tree_label(&t1),
                tree_label(&t2)
            );
        }
        pairs += 1;
    }
    assert_eq!(pairs, 60);
    println!(
        "criterion 5 PASS: exhaustive Dim_S = n(T1)*dim(T2) on all {pairs} tree pairs \
         (n(T1) <= 4, 3 <= n(T2) <= 6), constant witness attaining off paths"
    );
}

#[test]
fn criterion_06_path_tree_theorem_by_exhaustion() {
    let mut cases = 0;
    for n in 2..=4 {
        let path = path_graph(n).unwrap();
        for size in 3..=6 {
            for t2 in enumerate_trees(size).unwrap() {
                if t2.is_path_graph() {
                    continue;
                }
                let report = sierpinski_dims_exhaustive(&path, &t2, &opts(2)).unwrap();
                let formula = path_tree_formula(n, &t2).unwrap();
                assert_eq!(report.dim_s, formula, "dim_S(P{n}, {})", tree_label(&t2));
                let witness = path_tree_witness_function(n, &t2).unwrap();
                let product = sierpinski_product(&path, &t2, &witness).unwrap();
                assert_eq!(
                    tree_metric_dimension(product.graph()).unwrap().value,
                    formula,
                    "mod-4 witness for (P{n}, {})",
                    tree_label(&t2)
                );
                cases += 1;
            }
        }
    }
    println!(
        "criterion 6 PASS: exhaustive dim_S = n(dim(T2)-2)+2 with the mod-4 witness \
         attaining, over {cases} (P_n, T2) cases"
    );
}

#[test]
fn criterion_07_lemma_sandwich() {
    let mut cases = 0;
    for (t1, t2) in tree_pairs(4, 3, 6).unwrap() {
        if t2.is_path_graph() {
            continue;
        }
        let report = sierpinski_dims_exhaustive(&t1, &t2, &opts(2)).unwrap();
        let bound = tree_lower_bound(&t1, &t2).unwrap();
        assert!(
            bound <= report.dim_s,
            "lower bound {bound} exceeds dim_S {} for ({}, {})",
            report.dim_s,
            tree_label(&t1),
            tree_label(&t2)
        );
        assert!(report.dim_s <= report.upper_dim_s);
        cases += 1;
    }
    println!(
        "criterion 7 PASS: degree lower bound <= exhaustive dim_S on all {cases} \
         non-path second factors from criteria 5/6"
    );
}

#[test]
fn criterion_08_paths_times_paths() {
    for n in 1..=5 {
        let pn = path_graph(n).unwrap();
        for m in 1..=5 {
            let pm = path_graph(m).unwrap();
            let report = sierpinski_dims_exhaustive(&pn, &pm, &opts(1)).unwrap();
            // The (1, 1) product is a single vertex, resolved by the empty
            // set under the dim(K1) = 0 convention.
            let expected = if n * m == 1 { 0 } else { 1 };
            assert_eq!(report.dim_s, expected, "dim_S(P{n}, P{m})");

            let endpoints: Vec<usize> = if m == 1 {
                vec![0, 0]
            } else {
                (0..m).filter(|&v| pm.degree(v) == 1).collect()
            };
            let f = path_mod4_function(n, endpoints[0], endpoints[1]);
            let product = sierpinski_product(&pn, &pm, &f).unwrap();
            assert!(
                is_isomorphic(product.graph(), &path_graph(n * m).unwrap()),
                "P{n} x P{m} under the mod-4 endpoints function is not P{}",
                n * m
            );
        }
    }
    println!(
        "criterion 8 PASS: dim_S(P_n, P_m) = 1 for n, m <= 5 (0 at the single-vertex \
         product) and the mod-4 endpoint function yields P_nm"
    );
}

#[test]
fn criterion_09_convexity_theorem_sweep() {
    // Seeded random instances.
    let sweep = random_convexity_sweep(100, 7, 6).unwrap();
    assert_eq!(sweep.instances, 100);
    assert!(
        sweep.violations.is_empty(),
        "random sweep found violations: {:?}",
        sweep.violations
    );
    let mut layers = sweep.layers_checked;

    let mut assert_all_layers_convex = |g: &Graph, h: &Graph, f: &VertexFunction| {
        let product = sierpinski_product(g, h, f).unwrap();
        for report in verify_layer_convexity(&product).unwrap() {
            assert!(
                report.convex,
                "non-convex layer {:?} in product with f = {f}",
                report
            );
            layers += 1;
        }
    };

    // Every product from the cycle x triangle exhaustion (criteria 3, 4).
    let triangle = cycle_graph(3).unwrap();
    for n in 3..=6 {
        let cycle = cycle_graph(n).unwrap();
        for f in FunctionSpace::new(n, 3).iter() {
            assert_all_layers_convex(&cycle, &triangle, &f);
        }
    }
    for n in 7..=10 {
        let cycle = cycle_graph(n).unwrap();
        assert_all_layers_convex(&cycle, &triangle, &cycle_triangle_function(n).unwrap());
    }

    // Every product from the tree-pair exhaustions (criteria 5, 6, 7).
    for (t1, t2) in tree_pairs(4, 3, 6).unwrap() {
        for f in FunctionSpace::new(t1.n(), t2.n()).iter() {
            assert_all_layers_convex(&t1, &t2, &f);
        }
    }

    // Every product from the path x path exhaustion (criterion 8).
    for n in 1..=5 {
        let pn = path_graph(n).unwrap();
        for m in 1..=5 {
            let pm = path_graph(m).unwrap();
            for f in FunctionSpace::new(n, m).iter() {
                assert_all_layers_convex(&pn, &pm, &f);
            }
        }
    }

    // The checker has power: a 4-vertex arc of C_6 is flagged.
    let control = is_convex_subgraph(&cycle_graph(6).unwrap(), &[0, 1, 2, 3]).unwrap();
    assert!(!control.convex);
    let (u, v, w) = control.violation.unwrap();
    let c6 = cycle_graph(6).unwrap();
    assert_eq!(c6.distance(u, w) + c6.distance(w, v), c6.distance(u, v));

    println!(
        "criterion 9 PASS: zero convexity violations over {layers} layers \
         (100 random instances plus all products from criteria 3-8); control flagged"
    );
}

#[test]
fn criterion_10_determinism_across_worker_counts() {
    let json = |report: sierpinski_core::SierpinskiDimensionReport| {
        serde_json::to_string(&report.without_timing()).unwrap()
    };

    // Criterion 3 sweeps.
    let triangle = cycle_graph(3).unwrap();
    for n in 3..=6 {
        let cycle = cycle_graph(n).unwrap();
        let one = json(sierpinski_dims_exhaustive(&cycle, &triangle, &opts(1)).unwrap());
        let four = json(sierpinski_dims_exhaustive(&cycle, &triangle, &opts(4)).unwrap());
        assert_eq!(one, four, "cycle sweep n={n} differs across worker counts");
    }

    // Criteria 5/6 sweeps.
    for (t1, t2) in tree_pairs(4, 3, 6).unwrap() {
        let one = json(sierpinski_dims_exhaustive(&t1, &t2, &opts(1)).unwrap());
        let four = json(sierpinski_dims_exhaustive(&t1, &t2, &opts(4)).unwrap());
        assert_eq!(
            one,
            four,
            "tree sweep ({}, {}) differs across worker counts",
            tree_label(&t1),
            tree_label(&t2)
        );
    }

    println!(
        "criterion 10 PASS: worker counts 1 and 4 produce byte-identical reports \
         for the sweeps of criteria 3, 5 and 6"
    );
}
