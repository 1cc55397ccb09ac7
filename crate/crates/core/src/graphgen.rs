//! Seeded generators for experiment graph families, plus the two scalar
//! diagnostics experiments report alongside them: edge expansion and girth.
//!
//! Everything is a pure function of the [`GenSpec`] (seed field included);
//! embedded families also return their planar map so duality experiments
//! can reuse the same instance.

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

use crate::graph::{component_count, doubled_graph, path_graph, EdgeSet, MultiGraph};
use crate::planar::{grid_map, hyperbolic_patch, polygon_map, PlanarError, PlanarMap};
use crate::ratio::{rat, Ratio};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("family needs {what}")]
    BadParameters { what: String },
    #[error("n*degree = {n}*{degree} is odd; no such regular graph")]
    OddDegreeSum { n: usize, degree: usize },
    #[error("no simple pairing found in {tries} configuration-model tries")]
    RejectionExhausted { tries: u32 },
    #[error("exact expansion caps at {cap} vertices, graph has {n}")]
    TooLargeForExact { n: usize, cap: usize },
    #[error("exact expansion needs {required} subsets, budget is {budget}")]
    BudgetExceeded { required: u64, budget: u64 },
    #[error("spectral expansion bound needs a regular graph")]
    NotRegular,
    #[error(transparent)]
    Planar(#[from] PlanarError),
}

/// One experiment family instance. Serializes to the JSON config entries
/// and CLI flags of the experiment driver.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GenSpec {
    Cycle { n: usize },
    Path { n: usize },
    /// rows x cols square faces, embedded.
    Grid { rows: usize, cols: usize },
    /// rows x cols vertices with wraparound; 4-regular, not embedded here.
    Torus { rows: usize, cols: usize },
    RandomRegular { n: usize, degree: usize, seed: u64 },
    Doubled { base: Box<GenSpec> },
    HyperbolicPatch { p: usize, q: usize, layers: u32 },
}

/// A generated instance; `map` is present for the embedded families.
#[derive(Debug, Clone)]
pub struct Generated {
    pub graph: MultiGraph,
    pub map: Option<PlanarMap>,
}

fn path_map(n: usize) -> PlanarMap {
    let g = path_graph(n);
    let rotation: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let mut list = Vec::new();
            if i + 1 < n {
                list.push(2 * i as u32);
            }
            if i > 0 {
                list.push(2 * (i as u32 - 1) + 1);
            }
            list
        })
        .collect();
    PlanarMap::new(g, rotation).expect("path rotation is planar")
}

/// Disjoint union of two copies of an embedded map.
pub fn doubled_map(m: &PlanarMap) -> PlanarMap {
    let n = m.graph().n() as u32;
    let shift = 2 * m.graph().m() as u32;
    let mut edges = m.graph().edges().to_vec();
    edges.extend(m.graph().edges().iter().map(|&(u, v)| (u + n, v + n)));
    let mut rotation = m.rotation().to_vec();
    rotation.extend(
        m.rotation().iter().map(|list| list.iter().map(|&h| h + shift).collect::<Vec<_>>()),
    );
    let g = MultiGraph::new(2 * n as usize, edges).expect("shifted endpoints in range");
    PlanarMap::new(g, rotation).expect("disjoint union preserves genus")
}

const CONFIGURATION_TRIES: u32 = 200;

fn random_regular(n: usize, degree: usize, seed: u64) -> Result<MultiGraph, GenError> {
    if n == 0 || degree == 0 || degree >= n {
        return Err(GenError::BadParameters {
            what: format!("random_regular with 1 <= degree < n, got n={n} degree={degree}"),
        });
    }
    if (n * degree) % 2 == 1 {
        return Err(GenError::OddDegreeSum { n, degree });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<u32> = (0..n as u32).flat_map(|v| std::iter::repeat(v).take(degree)).collect();
    for _ in 0..CONFIGURATION_TRIES {
        stubs.shuffle(&mut rng);
        let mut seen = BTreeSet::new();
        let mut edges = Vec::with_capacity(n * degree / 2);
        let mut ok = true;
        for pair in stubs.chunks(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || !seen.insert((u.min(v), u.max(v))) {
                ok = false;
                break;
            }
            edges.push((u, v));
        }
        if ok {
            return Ok(MultiGraph::new(n, edges).expect("stub endpoints in range"));
        }
    }
    Err(GenError::RejectionExhausted { tries: CONFIGURATION_TRIES })
}

/// Like the plain family, but retries successive derived seeds until the
/// sample is connected. Deterministic in (n, degree, seed).
pub fn random_regular_connected(
    n: usize,
    degree: usize,
    seed: u64,
    attempts: u32,
) -> Result<MultiGraph, GenError> {
    let mut last = Err(GenError::RejectionExhausted { tries: 0 });
    for i in 0..attempts.max(1) as u64 {
        match random_regular(n, degree, seed.wrapping_add(i)) {
            Ok(g) => {
                if component_count(&g, &EdgeSet::full(g.m())) == 1 {
                    return Ok(g);
                }
                last = Ok(g);
            }
            Err(e) => return Err(e),
        }
    }
    match last {
        Ok(_) => Err(GenError::BadParameters {
            what: format!("no connected {degree}-regular sample on {n} vertices found"),
        }),
        Err(e) => Err(e),
    }
}

fn torus_graph(rows: usize, cols: usize) -> Result<MultiGraph, GenError> {
    if rows < 3 || cols < 3 {
        return Err(GenError::BadParameters {
            what: format!("torus with rows, cols >= 3, got {rows}x{cols}"),
        });
    }
    let vid = |r: usize, c: usize| (r * cols + c) as u32;
    let mut edges = Vec::with_capacity(2 * rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            edges.push((vid(r, c), vid(r, (c + 1) % cols)));
            edges.push((vid(r, c), vid((r + 1) % rows, c)));
        }
    }
    Ok(MultiGraph::new(rows * cols, edges).expect("torus endpoints in range"))
}

/// Build the instance a spec describes. Deterministic; the random family
/// carries its seed inside the spec.
pub fn generate(spec: &GenSpec) -> Result<Generated, GenError> {
    match spec {
        GenSpec::Cycle { n } => {
            if *n == 0 {
                return Err(GenError::BadParameters { what: "cycle with n >= 1".into() });
            }
            let map = polygon_map(*n);
            Ok(Generated { graph: map.graph().clone(), map: Some(map) })
        }
        GenSpec::Path { n } => {
            if *n == 0 {
                return Err(GenError::BadParameters { what: "path with n >= 1".into() });
            }
            let map = path_map(*n);
            Ok(Generated { graph: map.graph().clone(), map: Some(map) })
        }
        GenSpec::Grid { rows, cols } => {
            if *rows == 0 || *cols == 0 {
                return Err(GenError::BadParameters { what: "grid with rows, cols >= 1".into() });
            }
            let map = grid_map(*rows, *cols);
            Ok(Generated { graph: map.graph().clone(), map: Some(map) })
        }
        GenSpec::Torus { rows, cols } => {
            Ok(Generated { graph: torus_graph(*rows, *cols)?, map: None })
        }
        GenSpec::RandomRegular { n, degree, seed } => {
            Ok(Generated { graph: random_regular(*n, *degree, *seed)?, map: None })
        }
        GenSpec::Doubled { base } => {
            let inner = generate(base)?;
            Ok(Generated {
                graph: doubled_graph(&inner.graph),
                map: inner.map.as_ref().map(doubled_map),
            })
        }
        GenSpec::HyperbolicPatch { p, q, layers } => {
            let map = hyperbolic_patch(*p, *q, *layers)?;
            Ok(Generated { graph: map.graph().clone(), map: Some(map) })
        }
    }
}

/// Exact edge expansion (Cheeger constant): the minimum over vertex sets
/// S, 1 <= |S| <= n/2, of cut(S) / |S|. Exhaustive, so capped at 20
/// vertices and an optional subset budget.
pub fn edge_expansion_exact(g: &MultiGraph, budget: Option<u64>) -> Result<Ratio, GenError> {
    const CAP: usize = 20;
    let n = g.n();
    if n > CAP {
        return Err(GenError::TooLargeForExact { n, cap: CAP });
    }
    if n == 0 {
        return Err(GenError::BadParameters { what: "expansion of a nonempty graph".into() });
    }
    let required = (1u64 << n) - 1;
    if let Some(b) = budget {
        if required > b {
            return Err(GenError::BudgetExceeded { required, budget: b });
        }
    }
    let edges = g.edges();
    let mut best: Option<Ratio> = None;
    for mask in 1u32..1 << n {
        let size = mask.count_ones() as usize;
        if 2 * size > n {
            continue;
        }
        let mut cut = 0i64;
        for &(u, v) in edges {
            if (mask >> u & 1) != (mask >> v & 1) {
                cut += 1;
            }
        }
        let value = rat(cut, size as i64);
        if best.as_ref().map_or(true, |b| value < *b) {
            best = Some(value);
        }
    }
    Ok(best.expect("n >= 1 yields at least the singletons"))
}

/// Spectral lower bound (d - lambda_2)/2 for a d-regular graph, clamped at
/// zero. Floating point: a certificate-style bound, not an exact value.
pub fn edge_expansion_spectral_bound(g: &MultiGraph) -> Result<f64, GenError> {
    let n = g.n();
    if n == 0 {
        return Err(GenError::BadParameters { what: "expansion of a nonempty graph".into() });
    }
    let d = g.degree(0, None);
    if (1..n).any(|v| g.degree(v as u32, None) != d) {
        return Err(GenError::NotRegular);
    }
    let mut a = DMatrix::<f64>::zeros(n, n);
    for e in 0..g.m() {
        let (u, v) = g.endpoints(e);
        a[(u as usize, v as usize)] += 1.0;
        a[(v as usize, u as usize)] += 1.0;
    }
    let mut eigen: Vec<f64> = a.symmetric_eigen().eigenvalues.iter().copied().collect();
    eigen.sort_by(|x, y| y.partial_cmp(x).expect("symmetric spectrum is real"));
    let lambda2 = eigen[1.min(eigen.len() - 1)];
    Ok(((d as f64 - lambda2) / 2.0).max(0.0))
}

/// Length of a shortest cycle; `None` on forests. Loops count as
/// 1-cycles and parallel pairs as 2-cycles.
pub fn girth(g: &MultiGraph) -> Option<u32> {
    let mut seen = BTreeSet::new();
    for e in 0..g.m() {
        let (u, v) = g.endpoints(e);
        if u == v {
            return Some(1);
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Some(2);
        }
    }
    let adj = g.adjacency(None);
    let mut best: Option<u32> = None;
    let mut dist = vec![u32::MAX; g.n()];
    let mut via = vec![u32::MAX; g.n()];
    let mut queue = Vec::with_capacity(g.n());
    for src in 0..g.n() {
        dist.fill(u32::MAX);
        queue.clear();
        dist[src] = 0;
        via[src] = u32::MAX;
        queue.push(src as u32);
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head] as usize;
            head += 1;
            for &(y, e) in &adj[x] {
                if e == via[x] {
                    continue;
                }
                if dist[y as usize] == u32::MAX {
                    dist[y as usize] = dist[x] + 1;
                    via[y as usize] = e;
                    queue.push(y);
                } else {
                    let cycle = dist[x] + dist[y as usize] + 1;
                    if best.map_or(true, |b| cycle < b) {
                        best = Some(cycle);
                    }
                }
            }
        }
    }
    best
}
