//! Convex-subgraph checking and the per-layer convexity verdict for
//! Sierpinski products.
//!
//! A subgraph is convex when every shortest path of the host graph between
//! two of its vertices stays inside it. The checker uses the midpoint
//! criterion over all (u, v, w) triples: a violation is an outside vertex w
//! with dist(u, w) + dist(w, v) = dist(u, v). Convexity implies the induced
//! subgraph is isometric in the host, which the checker verifies as well.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::product::SierpinskiProduct;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConvexityReport {
    /// What was checked (callers label layers as "layer g").
    pub id: String,
    /// The checked vertex set, sorted.
    pub subgraph: Vec<usize>,
    pub convex: bool,
    /// First violation in lexicographic (u, v, w) order: u, v inside, w a
    /// vertex outside lying on a shortest u,v-path.
    pub violation: Option<(usize, usize, usize)>,
}

/// Checks whether the set `s` induces a convex subgraph of connected `g`.
pub fn is_convex_subgraph(g: &Graph, s: &[usize]) -> Result<ConvexityReport> {
    if g.n() == 0 || !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut verts: Vec<usize> = s.to_vec();
    verts.sort_unstable();
    verts.dedup();
    if let Some(&v) = verts.iter().find(|&&v| v >= g.n()) {
        return Err(Error::OutOfRange {
            what: "subgraph vertex",
            value: v,
        });
    }
    if verts.is_empty() {
        return Err(Error::InducedDisconnected);
    }
    let induced = g.induced_subgraph(&verts)?;
    if !induced.is_connected() {
        return Err(Error::InducedDisconnected);
    }

    let dist = g.distances();
    let mut inside = vec![false; g.n()];
    for &v in &verts {
        inside[v] = true;
    }
    let mut violation = None;
    'scan: for (i, &u) in verts.iter().enumerate() {
        for &v in &verts[i + 1..] {
            let duv = dist.get(u, v);
            for (w, &in_s) in inside.iter().enumerate() {
                if !in_s && dist.get(u, w).saturating_add(dist.get(w, v)) == duv {
                    violation = Some((u, v, w));
                    break 'scan;
                }
            }
        }
    }
    if violation.is_none() {
        // Convexity forces the induced distances to match the host's.
        debug_assert!(verts.iter().enumerate().all(|(i, &u)| {
            verts[i + 1..]
                .iter()
                .enumerate()
                .all(|(jo, &v)| induced.distance(i, i + 1 + jo) == dist.get(u, v))
        }));
    }
    Ok(ConvexityReport {
        id: "subgraph".into(),
        subgraph: verts,
        convex: violation.is_none(),
        violation,
    })
}

/// Checks every layer gH of a product, reports ordered by g. Under the
/// layer-convexity theorem all of them are convex.
pub fn verify_layer_convexity(p: &SierpinskiProduct) -> Result<Vec<ConvexityReport>> {
    if !p.g_factor().is_connected() || !p.h_factor().is_connected() {
        return Err(Error::Disconnected);
    }
    let mut reports = Vec::with_capacity(p.n_g());
    for g in 0..p.n_g() {
        let layer = p.layer_vertices(g)?;
        let mut report = is_convex_subgraph(p.graph(), &layer)?;
        report.id = format!("layer {g}");
        reports.push(report);
    }
    Ok(reports)
}
