//! Forests experiment: run the invasion algorithm under seeded distinct
//! weights, audit the token ledger and the layer property, and compare the
//! free forest against the wired one (boundary contracted to a point).

use anyhow::{ensure, Result};
use rayon::prelude::*;
use serde_json::json;
use std::path::Path;

use matroid_limits::forest::{
    check_layer_property, invasion, serialize_forest_result, verify_token_ledger,
    wired_free_forests, ForestResult, WeightList,
};
use matroid_limits::graphgen::{generate, GenSpec};
use matroid_limits::planar::hyperbolic_patch_with_outer;
use matroid_limits::rank::is_base;
use matroid_limits::{BoundarySpec, EdgeSet, MultiGraph};

use crate::config::{spec_label, ExperimentConfig};
use crate::report::{write_csv, write_json, RunOutcome};

struct Item {
    label: String,
    graph: MultiGraph,
    boundary: Vec<u32>,
    result: ForestResult,
    weights: WeightList,
    wired: EdgeSet,
    free: EdgeSet,
}

fn boundary_for(cfg: &ExperimentConfig, spec: &GenSpec, g: &MultiGraph) -> Result<Vec<u32>> {
    if let Some(b) = &cfg.boundary {
        for &v in b {
            ensure!(
                (v as usize) < g.n(),
                "boundary vertex {v} out of range for {} ({} vertices)",
                spec_label(spec),
                g.n()
            );
        }
        return Ok(b.clone());
    }
    if cfg.wire_outer_face {
        if let GenSpec::HyperbolicPatch { p, q, layers } = spec {
            let (map, outer) = hyperbolic_patch_with_outer(*p, *q, *layers)?;
            let walk = &map.faces()[outer as usize];
            let mut verts: Vec<u32> = walk.iter().map(|&h| map.vertex_of(h)).collect();
            verts.sort_unstable();
            verts.dedup();
            return Ok(verts);
        }
    }
    Ok(Vec::new())
}

pub fn run(cfg: &ExperimentConfig, out_dir: &Path) -> Result<RunOutcome> {
    println!("forests: {} graphs, seeded distinct weights", cfg.graphs.len());
    let items: Vec<Item> = cfg
        .graphs
        .par_iter()
        .enumerate()
        .map(|(i, spec)| -> Result<Item> {
            let g = generate(spec)?.graph;
            let boundary = boundary_for(cfg, spec, &g)?;
            let weights = WeightList::random_distinct(g.m(), cfg.seed.wrapping_add(i as u64));
            let result = invasion(&g, &weights)?;
            let (wired, free) =
                wired_free_forests(&g, &BoundarySpec::new(boundary.clone()), &weights)?;
            Ok(Item { label: spec_label(spec), graph: g, boundary, result, weights, wired, free })
        })
        .collect::<Result<_>>()?;

    let mut outcome = RunOutcome::new();
    let mut rows = Vec::new();
    let mut detail = Vec::new();
    for (i, item) in items.iter().enumerate() {
        let g = &item.graph;
        match verify_token_ledger(g, &item.result) {
            Ok(()) => outcome.check(true, format!("{}: token ledger balances", item.label)),
            Err(e) => outcome.violation(format!("{}: token ledger: {e}", item.label)),
        }
        match check_layer_property(g, &item.weights, &item.result.forest) {
            Ok(()) => outcome.check(true, format!("{}: layer property holds", item.label)),
            Err(e) => outcome.violation(format!("{}: layer property: {e}", item.label)),
        }
        outcome.check(
            item.free == item.result.forest,
            format!("{}: free forest reproduces the invasion forest", item.label),
        );
        outcome.check(
            is_base(g, &item.free),
            format!("{}: free forest is a base", item.label),
        );
        outcome.check(
            item.wired.len() <= item.free.len(),
            format!(
                "{}: wiring cannot raise rank ({} wired vs {} free edges)",
                item.label,
                item.wired.len(),
                item.free.len()
            ),
        );

        let shared = item.wired.intersection(&item.free).len();
        rows.push(vec![
            i.to_string(),
            item.label.clone(),
            g.n().to_string(),
            g.m().to_string(),
            item.result.forest.len().to_string(),
            item.result.rounds.len().to_string(),
            item.boundary.len().to_string(),
            item.wired.len().to_string(),
            item.free.len().to_string(),
            shared.to_string(),
        ]);
        let full: serde_json::Value =
            serde_json::from_str(&serialize_forest_result(&item.result))
                .expect("own serializer emits valid JSON");
        detail.push(json!({
            "label": item.label,
            "vertices": g.n(),
            "edges": g.m(),
            "boundary": item.boundary,
            "wired": item.wired.to_indices(),
            "free": item.free.to_indices(),
            "invasion": full,
        }));
    }

    outcome.artifacts.push(write_csv(
        out_dir,
        "forests.csv",
        &["index", "label", "vertices", "edges", "forest_edges", "rounds", "boundary_vertices", "wired_edges", "free_edges", "shared_edges"],
        &rows,
    )?);
    outcome.artifacts.push(write_json(out_dir, "forests.json", &serde_json::Value::Array(detail))?);
    Ok(outcome)
}
