//! Expander-gap experiment. Two disjoint copies of a connected graph can
//! color the edges by copy and land exactly on the split profile point; a
//! connected graph of matching size cannot, because its full-edge-set rank
//! is pinned one step higher. The experiment verifies the exact hit on the
//! doubled side and measures how close a well-connected graph can get.

use anyhow::{Context, Result};
use serde_json::json;
use std::path::Path;

use matroid_limits::graph::doubled_graph;
use matroid_limits::graphgen::{
    edge_expansion_spectral_bound, girth, random_regular_connected,
};
use matroid_limits::quotient::{nearest_quotient_search, quotient, Norm, QuotientPoint};
use matroid_limits::rank::SetFunction;
use matroid_limits::{format_ratio, rat, rat_int, EdgePartition, Ratio};

use crate::config::ExperimentConfig;
use crate::report::{ratio_cells, write_csv, write_json, RunOutcome};

pub const DEFAULT_PART_SIZE: usize = 24;
const DEFAULT_RESTARTS: u64 = 100;
const CONNECT_ATTEMPTS: u32 = 50;

/// The two-class profile point a doubled graph reaches with the copy
/// coloring: coordinate order is (no classes, copy one, copy two, both),
/// for copies of `part` vertices each.
pub fn split_profile_target(part: usize) -> Vec<Ratio> {
    let p = part as i64;
    vec![rat_int(0), rat(p - 1, 2 * p), rat(p - 1, 2 * p), rat(p - 1, p)]
}

pub fn run(cfg: &ExperimentConfig, out_dir: &Path) -> Result<RunOutcome> {
    let part = cfg.part_size.unwrap_or(DEFAULT_PART_SIZE);
    let degree = cfg.degree.unwrap_or(3);
    let expander_n = cfg.expander_size.unwrap_or(2 * part);
    let restarts = cfg.restarts.unwrap_or(DEFAULT_RESTARTS);
    println!(
        "expander-gap: doubled {degree}-regular on 2x{part} vertices vs \
         connected {degree}-regular on {expander_n}, {restarts} restarts"
    );

    let half = random_regular_connected(part, degree, cfg.seed, CONNECT_ATTEMPTS)
        .context("sampling the copied half")?;
    let doubled = doubled_graph(&half);
    let mut labels = vec![0u32; doubled.m()];
    for l in labels.iter_mut().skip(half.m()) {
        *l = 1;
    }
    let copy_partition = EdgePartition::new(2, labels).expect("labels are 0 or 1");
    let copy_point = quotient(&doubled, &copy_partition, SetFunction::Rho)?;

    let target = split_profile_target(part);
    let target_point = QuotientPoint::new(2, target.clone());
    let copy_distance = Norm::Sup.distance(&copy_point, &target_point);

    let expander = random_regular_connected(expander_n, degree, cfg.seed ^ 0x5851_f42d, CONNECT_ATTEMPTS)
        .context("sampling the expander side")?;
    let search = nearest_quotient_search(
        &expander,
        2,
        SetFunction::Rho,
        &target,
        restarts,
        cfg.seed ^ 0x4c95_7f2d,
    )?;

    let mut outcome = RunOutcome::new();
    outcome.check(
        copy_distance == rat_int(0),
        format!(
            "copy coloring hits the split profile exactly (distance {})",
            format_ratio(&copy_distance)
        ),
    );
    outcome.check(
        search.distance > rat_int(0),
        format!(
            "connected graph stays away from the split profile (best distance {})",
            format_ratio(&search.distance)
        ),
    );

    let spectral = edge_expansion_spectral_bound(&expander)?;
    let doubled_girth = girth(&doubled);
    let expander_girth = girth(&expander);
    let girth_cell = |g: Option<u32>| g.map_or("inf".to_string(), |v| v.to_string());

    let rows = vec![
        vec![
            "doubled".to_string(),
            doubled.n().to_string(),
            doubled.m().to_string(),
            ratio_cells(&copy_distance).0,
            format_ratio(&copy_distance),
            girth_cell(doubled_girth),
            String::new(),
        ],
        vec![
            "expander".to_string(),
            expander.n().to_string(),
            expander.m().to_string(),
            ratio_cells(&search.distance).0,
            format_ratio(&search.distance),
            girth_cell(expander_girth),
            format!("{spectral}"),
        ],
    ];
    let mut outcome_artifacts = Vec::new();
    outcome_artifacts.push(write_csv(
        out_dir,
        "gap.csv",
        &["side", "vertices", "edges", "distance", "distance_exact", "girth", "expansion_lower_bound"],
        &rows,
    )?);

    let detail = json!({
        "target": target.iter().map(format_ratio).collect::<Vec<_>>(),
        "doubled": {
            "part_size": part,
            "vertices": doubled.n(),
            "edges": doubled.m(),
            "distance": format_ratio(&copy_distance),
            "point": copy_point.coords().iter().map(format_ratio).collect::<Vec<_>>(),
        },
        "expander": {
            "vertices": expander.n(),
            "edges": expander.m(),
            "restarts": restarts,
            "best_distance": format_ratio(&search.distance),
            "best_point": search.point.coords().iter().map(format_ratio).collect::<Vec<_>>(),
            "best_coloring": search.partition.labels().to_vec(),
            "expansion_lower_bound": spectral,
        },
    });
    outcome_artifacts.push(write_json(out_dir, "gap.json", &detail)?);
    outcome.artifacts = outcome_artifacts;
    Ok(outcome)
}
