//! Rooted neighborhood statistics.
//!
//! The r-ball around a vertex, together with an optional vertex coloring,
//! is reduced to a canonical byte code; the distribution of codes at a
//! uniform random root is the graph's local statistic at radius r. Sets of
//! such distributions, one per coloring, are the colored statistics this
//! crate samples and compares in total-variation Hausdorff distance.
//!
//! Canonicalization is exact: iterative refinement by degree and neighbor
//! class multiset (root pinned in its own class), then backtracking over
//! the first unresolved class, keeping the lexicographically minimal
//! encoding. Equality of codes is equality of rooted colored isomorphism
//! types, which the test suite checks against brute-force permutation
//! search on a small catalog.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use thiserror::Error;

use crate::graph::{EdgePartition, GraphError, MultiGraph};
use crate::ratio::{format_ratio, rat, Ratio};
use num_traits::Zero;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LocalError {
    #[error("enumeration needs {required} colorings, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A rooted, optionally vertex-colored ball. `ball()` relabels vertices in
/// breadth-first order, so the root of an extracted ball is vertex 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedBall {
    g: MultiGraph,
    root: u32,
    colors: Option<Vec<u32>>,
    radius: u32,
}

impl RootedBall {
    pub fn new(g: MultiGraph, root: u32, colors: Option<Vec<u32>>, radius: u32) -> Self {
        assert!((root as usize) < g.n(), "root out of range");
        if let Some(c) = &colors {
            assert_eq!(c.len(), g.n(), "one color per vertex");
        }
        let b = RootedBall { g, root, colors, radius };
        debug_assert!(
            b.distances_from_root().iter().all(|d| d.map_or(false, |d| d <= b.radius)),
            "vertex beyond the stated radius"
        );
        b
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.g
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    pub fn colors(&self) -> Option<&[u32]> {
        self.colors.as_deref()
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    fn distances_from_root(&self) -> Vec<Option<u32>> {
        let adj = self.g.adjacency(None);
        let mut dist = vec![None; self.g.n()];
        dist[self.root as usize] = Some(0);
        let mut queue = VecDeque::from([self.root]);
        while let Some(v) = queue.pop_front() {
            let dv = dist[v as usize].unwrap();
            for &(u, _) in &adj[v as usize] {
                if dist[u as usize].is_none() {
                    dist[u as usize] = Some(dv + 1);
                    queue.push_back(u);
                }
            }
        }
        dist
    }
}

/// Canonical byte form of a rooted colored ball. Equal codes mean equal
/// rooted colored isomorphism type; the radius is metadata, not identity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BallCode(Vec<u8>);

impl BallCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        let mut s = String::with_capacity(self.0.len() * 2);
        for b in &self.0 {
            s.push_str(&format!("{b:02x}"));
        }
        s
    }
}

/// The induced subgraph on vertices at distance at most `r` from `v`,
/// rerooted at index 0, vertices in breadth-first discovery order. Colors,
/// when given, ride along restricted to the ball.
pub fn ball(g: &MultiGraph, v: u32, r: u32, colors: Option<&[u32]>) -> RootedBall {
    assert!((v as usize) < g.n(), "root out of range");
    if let Some(c) = colors {
        assert_eq!(c.len(), g.n(), "one color per vertex");
    }
    let adj = g.adjacency(None);
    let mut new_index = vec![u32::MAX; g.n()];
    let mut order: Vec<u32> = vec![v];
    new_index[v as usize] = 0;
    let mut dist = vec![0u32; g.n()];
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        if dist[x as usize] == r {
            continue;
        }
        for &(u, _) in &adj[x as usize] {
            if new_index[u as usize] == u32::MAX {
                new_index[u as usize] = order.len() as u32;
                dist[u as usize] = dist[x as usize] + 1;
                order.push(u);
            }
        }
    }
    let mut edges = Vec::new();
    for e in 0..g.m() {
        let (a, b) = g.endpoints(e);
        if new_index[a as usize] != u32::MAX && new_index[b as usize] != u32::MAX {
            edges.push((new_index[a as usize], new_index[b as usize]));
        }
    }
    let bg = MultiGraph::new(order.len(), edges).expect("relabelled endpoints stay in range");
    let bc = colors.map(|c| order.iter().map(|&x| c[x as usize]).collect());
    RootedBall::new(bg, 0, bc, r)
}

struct BallShape {
    n: usize,
    loops: Vec<u32>,
    // non-loop incidences as neighbor lists with multiplicity
    neighbors: Vec<Vec<usize>>,
    // multiplicity matrix, upper triangle via mult[u][w]
    mult: Vec<Vec<u32>>,
    colors: Option<Vec<u32>>,
}

impl BallShape {
    fn of(b: &RootedBall) -> Self {
        let n = b.graph().n();
        let mut loops = vec![0u32; n];
        let mut neighbors = vec![Vec::new(); n];
        let mut mult = vec![vec![0u32; n]; n];
        for e in 0..b.graph().m() {
            let (u, v) = b.graph().endpoints(e);
            let (u, v) = (u as usize, v as usize);
            if u == v {
                loops[u] += 1;
            } else {
                neighbors[u].push(v);
                neighbors[v].push(u);
                mult[u][v] += 1;
                mult[v][u] += 1;
            }
        }
        BallShape { n, loops, neighbors, mult, colors: b.colors().map(<[u32]>::to_vec) }
    }

    /// One refinement pass to a fixed point; class ids come out compact and
    /// ordered by signature, so the root's singleton class stays first.
    fn refine(&self, classes: &mut Vec<u32>) {
        loop {
            let sigs: Vec<(u32, u32, Vec<u32>)> = (0..self.n)
                .map(|v| {
                    let mut around: Vec<u32> =
                        self.neighbors[v].iter().map(|&u| classes[u]).collect();
                    around.sort_unstable();
                    (classes[v], self.loops[v], around)
                })
                .collect();
            let mut sorted: Vec<&(u32, u32, Vec<u32>)> = sigs.iter().collect();
            sorted.sort();
            sorted.dedup();
            let rank: BTreeMap<&(u32, u32, Vec<u32>), u32> =
                sorted.iter().enumerate().map(|(i, s)| (*s, i as u32)).collect();
            let next: Vec<u32> = (0..self.n).map(|v| rank[&sigs[v]]).collect();
            if next == *classes {
                return;
            }
            *classes = next;
        }
    }

    fn encode(&self, classes: &[u32]) -> Vec<u8> {
        let mut vert_of = vec![0usize; self.n];
        for (v, &c) in classes.iter().enumerate() {
            vert_of[c as usize] = v;
        }
        let mut words: Vec<u32> = Vec::with_capacity(2 + 2 * self.n + self.n * self.n / 2);
        words.push(self.n as u32);
        match &self.colors {
            None => words.push(0),
            Some(c) => {
                words.push(1);
                words.extend(vert_of.iter().map(|&v| c[v]));
            }
        }
        words.extend(vert_of.iter().map(|&v| self.loops[v]));
        for i in 0..self.n {
            for j in i + 1..self.n {
                words.push(self.mult[vert_of[i]][vert_of[j]]);
            }
        }
        let mut bytes = Vec::with_capacity(words.len() * 4);
        for w in words {
            bytes.extend_from_slice(&w.to_be_bytes());
        }
        bytes
    }

    fn canon(&self, classes: Vec<u32>, best: &mut Option<Vec<u8>>) {
        let mut classes = classes;
        self.refine(&mut classes);
        let class_count = classes.iter().copied().max().map_or(0, |c| c as usize + 1);
        if class_count == self.n {
            let enc = self.encode(&classes);
            if best.as_ref().map_or(true, |b| enc < *b) {
                *best = Some(enc);
            }
            return;
        }
        let mut size = vec![0u32; class_count];
        for &c in &classes {
            size[c as usize] += 1;
        }
        let target = size.iter().position(|&s| s >= 2).expect("non-discrete partition") as u32;
        for v in 0..self.n {
            if classes[v] != target {
                continue;
            }
            let child: Vec<u32> = classes
                .iter()
                .enumerate()
                .map(|(u, &c)| 2 * c + u32::from(c == target && u != v))
                .collect();
            self.canon(child, best);
        }
    }
}

/// Exact canonical code: equal exactly on rooted colored isomorphism
/// classes (multiplicities and loops included).
pub fn canonical_code(b: &RootedBall) -> BallCode {
    let shape = BallShape::of(b);
    // root alone in class 0; everyone else grouped by external color
    let palette: BTreeSet<u32> = match b.colors() {
        None => BTreeSet::new(),
        Some(c) => c.iter().copied().collect(),
    };
    let color_rank = |v: usize| -> u32 {
        match b.colors() {
            None => 0,
            Some(c) => palette.iter().position(|&x| x == c[v]).unwrap() as u32,
        }
    };
    let init: Vec<u32> = (0..shape.n)
        .map(|v| if v == b.root() as usize { 0 } else { 1 + color_rank(v) })
        .collect();
    let mut best = None;
    shape.canon(init, &mut best);
    BallCode(best.expect("canon yields at least one encoding"))
}

/// Exact distribution of ball codes at a uniform random root.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LocalDistribution {
    probs: BTreeMap<BallCode, Ratio>,
}

impl LocalDistribution {
    pub fn probs(&self) -> &BTreeMap<BallCode, Ratio> {
        &self.probs
    }

    pub fn prob(&self, code: &BallCode) -> Ratio {
        self.probs.get(code).cloned().unwrap_or_else(Ratio::zero)
    }

    pub fn support_size(&self) -> usize {
        self.probs.len()
    }

    pub fn is_point_mass(&self) -> bool {
        self.probs.len() == 1
    }
}

/// Code distribution of `g` at radius `r` under a uniform root, with
/// optional vertex colors. Probabilities are exact with denominator
/// dividing n.
pub fn local_distribution(g: &MultiGraph, r: u32, colors: Option<&[u32]>) -> LocalDistribution {
    let n = g.n();
    assert!(n >= 1, "local statistics need at least one vertex");
    let codes: Vec<BallCode> = (0..n as u32)
        .into_par_iter()
        .map(|v| canonical_code(&ball(g, v, r, colors)))
        .collect();
    let mut counts: BTreeMap<BallCode, u64> = BTreeMap::new();
    for code in codes {
        *counts.entry(code).or_insert(0) += 1;
    }
    let probs =
        counts.into_iter().map(|(code, c)| (code, rat(c as i64, n as i64))).collect();
    LocalDistribution { probs }
}

/// Total-variation distance, exact: half the l1 gap over the union of
/// supports. Always in [0, 1].
pub fn tv_distance(p: &LocalDistribution, q: &LocalDistribution) -> Ratio {
    let keys: BTreeSet<&BallCode> = p.probs.keys().chain(q.probs.keys()).collect();
    let mut total = Ratio::zero();
    for code in keys {
        let a = p.prob(code);
        let b = q.prob(code);
        total += if a >= b { a - b } else { b - a };
    }
    total / rat(2, 1)
}

/// Hausdorff distance between two nonempty sets of distributions, with
/// total variation as the ground metric.
pub fn hausdorff_distributions(a: &[LocalDistribution], b: &[LocalDistribution]) -> Ratio {
    assert!(!a.is_empty() && !b.is_empty(), "Hausdorff distance needs nonempty sets");
    let directed = |from: &[LocalDistribution], to: &[LocalDistribution]| {
        from.iter()
            .map(|p| to.iter().map(|q| tv_distance(p, q)).min().expect("nonempty"))
            .max()
            .expect("nonempty")
    };
    directed(a, b).max(directed(b, a))
}

/// Colored statistics from `colorings` seeded colorings: alternating fresh
/// uniform draws and single-vertex perturbations of the previous draw.
/// Every member is a genuine colored distribution of `g`, so the output is
/// a subset of the full colored-statistics set.
pub fn sample_qkr(
    g: &MultiGraph,
    k: usize,
    r: u32,
    colorings: u64,
    seed: u64,
) -> Vec<LocalDistribution> {
    assert!(k >= 1, "at least one color");
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: BTreeSet<LocalDistribution> = BTreeSet::new();
    let mut current: Vec<u32> = Vec::new();
    for i in 0..colorings {
        if i % 2 == 0 || current.is_empty() {
            current = (0..n).map(|_| rng.gen_range(0..k) as u32).collect();
        } else if n > 0 {
            let v = rng.gen_range(0..n);
            current[v] = rng.gen_range(0..k) as u32;
        }
        out.insert(local_distribution(g, r, Some(&current)));
    }
    out.into_iter().collect()
}

/// Every colored distribution of `g` at radius `r`: all `k^n` colorings.
/// Refuses when `k^n` exceeds `budget`.
pub fn enumerate_qkr(
    g: &MultiGraph,
    k: usize,
    r: u32,
    budget: u64,
) -> Result<Vec<LocalDistribution>, LocalError> {
    assert!(k >= 1, "at least one color");
    let n = g.n();
    let required = (k as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if required > budget as u128 {
        return Err(LocalError::BudgetExceeded { required, budget });
    }
    let mut out: BTreeSet<LocalDistribution> = BTreeSet::new();
    let mut coloring = vec![0u32; n];
    loop {
        out.insert(local_distribution(g, r, Some(&coloring)));
        let mut i = 0;
        loop {
            if i >= n {
                return Ok(out.into_iter().collect());
            }
            if coloring[i] as usize == k - 1 {
                coloring[i] = 0;
                i += 1;
            } else {
                coloring[i] += 1;
                break;
            }
        }
    }
}

/// Edge colorings rephrased as vertex colorings: subdivide every edge with
/// a midpoint vertex carrying `1 + class`, originals colored 0. The
/// midpoint of edge `e` is vertex `n + e`; loops become parallel pairs to
/// their midpoint.
pub fn subdivide_for_edge_colors(
    g: &MultiGraph,
    classes: &EdgePartition,
) -> Result<(MultiGraph, Vec<u32>), GraphError> {
    classes.check_against(g)?;
    let n = g.n();
    let mut edges = Vec::with_capacity(2 * g.m());
    let mut colors = vec![0u32; n + g.m()];
    for e in 0..g.m() {
        let (u, v) = g.endpoints(e);
        let mid = (n + e) as u32;
        edges.push((u, mid));
        edges.push((mid, v));
        colors[n + e] = 1 + classes.class_of(e);
    }
    let sub = MultiGraph::new(n + g.m(), edges)?;
    Ok((sub, colors))
}

/// JSON object mapping hex ball codes to "p/q" probabilities, keys sorted.
pub fn serialize_local_distribution(d: &LocalDistribution) -> String {
    let map: BTreeMap<String, String> =
        d.probs.iter().map(|(code, p)| (code.to_hex(), format_ratio(p))).collect();
    serde_json::to_string_pretty(&map).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle_graph, doubled_graph, path_graph};
    use crate::ratio::rat_int;

    #[test]
    fn zero_ball_is_single_vertex() {
        let g = cycle_graph(5);
        let b = ball(&g, 3, 0, None);
        assert_eq!(b.graph().n(), 1);
        assert_eq!(b.graph().m(), 0);
        assert_eq!(b.root(), 0);
    }

    #[test]
    fn zero_ball_keeps_loops() {
        let g = MultiGraph::new(2, vec![(0, 0), (0, 1)]).unwrap();
        let b = ball(&g, 0, 0, None);
        assert_eq!(b.graph().n(), 1);
        assert_eq!(b.graph().m(), 1);
        assert!(b.graph().is_loop(0));
    }

    #[test]
    fn unit_ball_in_cycle_is_rooted_path() {
        let g = cycle_graph(6);
        let b = ball(&g, 2, 1, None);
        assert_eq!(b.graph().n(), 3);
        assert_eq!(b.graph().m(), 2);
        assert_eq!(b.graph().degree(0, None), 2);
        assert_eq!(b.graph().degree(1, None), 1);
    }

    #[test]
    fn wide_ball_is_whole_component() {
        let g = MultiGraph::new(5, vec![(0, 1), (1, 2), (3, 4)]).unwrap();
        let b = ball(&g, 0, 10, None);
        assert_eq!(b.graph().n(), 3);
        assert_eq!(b.graph().m(), 2);
    }

    #[test]
    fn colors_ride_along_in_bfs_order() {
        let g = path_graph(3);
        let b = ball(&g, 1, 1, Some(&[5, 7, 9]));
        // discovery order: 1, then 0 and 2
        assert_eq!(b.colors().unwrap(), &[7, 5, 9]);
    }

    #[test]
    fn code_ignores_labeling() {
        // the same rooted star, two labelings of the leaves
        let a = RootedBall::new(
            MultiGraph::new(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap(),
            0,
            None,
            1,
        );
        let b = RootedBall::new(
            MultiGraph::new(4, vec![(0, 3), (0, 1), (0, 2)]).unwrap(),
            0,
            None,
            1,
        );
        assert_eq!(canonical_code(&a), canonical_code(&b));
    }

    #[test]
    fn root_position_matters() {
        let g = path_graph(3);
        let center = ball(&g, 1, 1, None);
        let end = ball(&g, 0, 2, None);
        assert_eq!(center.graph().n(), end.graph().n());
        assert_ne!(canonical_code(&center), canonical_code(&end));
    }

    #[test]
    fn colored_codes_distinguish_palettes() {
        let g = path_graph(2);
        let red = ball(&g, 0, 1, Some(&[0, 0]));
        let blue = ball(&g, 0, 1, Some(&[0, 1]));
        let blank = ball(&g, 0, 1, None);
        assert_ne!(canonical_code(&red), canonical_code(&blue));
        assert_ne!(canonical_code(&red), canonical_code(&blank));
    }

    #[test]
    fn parallel_edges_and_loops_are_counted() {
        let single = RootedBall::new(MultiGraph::new(2, vec![(0, 1)]).unwrap(), 0, None, 1);
        let double =
            RootedBall::new(MultiGraph::new(2, vec![(0, 1), (0, 1)]).unwrap(), 0, None, 1);
        let looped =
            RootedBall::new(MultiGraph::new(2, vec![(0, 1), (1, 1)]).unwrap(), 0, None, 1);
        let codes = [canonical_code(&single), canonical_code(&double), canonical_code(&looped)];
        assert_ne!(codes[0], codes[1]);
        assert_ne!(codes[0], codes[2]);
        assert_ne!(codes[1], codes[2]);
    }

    // brute-force rooted isomorphism key: lexicographically minimal
    // (colors, loops, multiplicities) tuple over all root-fixing relabelings
    fn brute_key(b: &RootedBall) -> Vec<u32> {
        let n = b.graph().n();
        let mut mult = vec![vec![0u32; n]; n];
        let mut loops = vec![0u32; n];
        for e in 0..b.graph().m() {
            let (u, v) = b.graph().endpoints(e);
            if u == v {
                loops[u as usize] += 1;
            } else {
                mult[u as usize][v as usize] += 1;
                mult[v as usize][u as usize] += 1;
            }
        }
        let mut rest: Vec<usize> = (0..n).filter(|&v| v != b.root() as usize).collect();
        let mut best: Option<Vec<u32>> = None;
        permute(&mut rest, 0, &mut |perm| {
            let mut order = vec![b.root() as usize];
            order.extend_from_slice(perm);
            let mut key = Vec::new();
            match b.colors() {
                None => key.push(0),
                Some(c) => {
                    key.push(1);
                    key.extend(order.iter().map(|&v| c[v]));
                }
            }
            key.extend(order.iter().map(|&v| loops[v]));
            for i in 0..n {
                for j in i + 1..n {
                    key.push(mult[order[i]][order[j]]);
                }
            }
            if best.as_ref().map_or(true, |b| key < *b) {
                best = Some(key);
            }
        });
        best.unwrap()
    }

    fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
        if k == items.len() {
            visit(items);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            permute(items, k + 1, visit);
            items.swap(k, i);
        }
    }

    #[test]
    fn code_classes_match_brute_force_on_simple_catalog() {
        use std::collections::HashMap;
        let mut code_to_key: HashMap<BallCode, Vec<u32>> = HashMap::new();
        let mut key_to_code: HashMap<Vec<u32>, BallCode> = HashMap::new();
        let mut check = |b: &RootedBall| {
            let code = canonical_code(b);
            let key = brute_key(b);
            if let Some(prev) = code_to_key.get(&code) {
                assert_eq!(prev, &key, "one code, two isomorphism classes");
            } else {
                code_to_key.insert(code.clone(), key.clone());
            }
            if let Some(prev) = key_to_code.get(&key) {
                assert_eq!(prev, &code, "one isomorphism class, two codes");
            } else {
                key_to_code.insert(key, code);
            }
        };
        for nv in 1..=4usize {
            let pairs: Vec<(u32, u32)> = (0..nv as u32)
                .flat_map(|i| (i + 1..nv as u32).map(move |j| (i, j)))
                .collect();
            for mask in 0u32..1 << pairs.len() {
                let edges: Vec<(u32, u32)> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &p)| p)
                    .collect();
                let g = MultiGraph::new(nv, edges).unwrap();
                // radius large enough that the invariant holds for any graph:
                // restrict to the reachable component instead
                let b = ball(&g, 0, nv as u32, None);
                check(&b);
                for cmask in 0u32..1 << nv {
                    let colors: Vec<u32> = (0..nv).map(|v| cmask >> v & 1).collect();
                    check(&ball(&g, 0, nv as u32, Some(&colors)));
                }
            }
        }
    }

    #[test]
    fn code_classes_match_brute_force_on_multigraphs() {
        use std::collections::HashMap;
        let catalog = [
            MultiGraph::new(3, vec![(0, 1), (0, 1), (1, 2)]).unwrap(),
            MultiGraph::new(3, vec![(0, 1), (1, 2), (1, 2)]).unwrap(),
            MultiGraph::new(3, vec![(0, 0), (0, 1), (1, 2)]).unwrap(),
            MultiGraph::new(3, vec![(0, 1), (1, 1), (1, 2)]).unwrap(),
            MultiGraph::new(3, vec![(0, 1), (1, 2), (2, 2)]).unwrap(),
            MultiGraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 2)]).unwrap(),
            MultiGraph::new(4, vec![(0, 1), (0, 2), (0, 3), (2, 2), (1, 3)]).unwrap(),
        ];
        let mut code_to_key: HashMap<BallCode, Vec<u32>> = HashMap::new();
        let mut key_to_code: HashMap<Vec<u32>, BallCode> = HashMap::new();
        for g in &catalog {
            for root in 0..g.n() as u32 {
                for cmask in 0u32..1 << g.n() {
                    let colors: Vec<u32> = (0..g.n()).map(|v| cmask >> v & 1).collect();
                    let b = ball(g, root, g.n() as u32, Some(&colors));
                    let code = canonical_code(&b);
                    let key = brute_key(&b);
                    if let Some(prev) = code_to_key.get(&code) {
                        assert_eq!(prev, &key);
                    } else {
                        code_to_key.insert(code.clone(), key.clone());
                    }
                    if let Some(prev) = key_to_code.get(&key) {
                        assert_eq!(prev, &code);
                    } else {
                        key_to_code.insert(key, code);
                    }
                }
            }
        }
    }

    #[test]
    fn cycles_give_point_masses() {
        for n in [3usize, 5, 8] {
            let d = local_distribution(&cycle_graph(n), 1, None);
            assert!(d.is_point_mass());
            let total: Ratio = d.probs().values().cloned().sum();
            assert_eq!(total, rat_int(1));
        }
    }

    #[test]
    fn triangle_plus_edge_distribution() {
        let g = MultiGraph::new(5, vec![(0, 1), (1, 2), (2, 0), (3, 4)]).unwrap();
        let d = local_distribution(&g, 1, None);
        assert_eq!(d.support_size(), 2);
        let triangle = canonical_code(&ball(&g, 0, 1, None));
        let edge = canonical_code(&ball(&g, 3, 1, None));
        assert_eq!(d.prob(&triangle), rat(3, 5));
        assert_eq!(d.prob(&edge), rat(2, 5));
    }

    #[test]
    fn alternating_colors_split_the_cycle() {
        let g = cycle_graph(4);
        let d = local_distribution(&g, 1, Some(&[0, 1, 0, 1]));
        assert_eq!(d.support_size(), 2);
        for p in d.probs().values() {
            assert_eq!(*p, rat(1, 2));
        }
    }

    #[test]
    fn tv_distance_basics() {
        let c6 = local_distribution(&cycle_graph(6), 1, None);
        let c7 = local_distribution(&cycle_graph(7), 1, None);
        assert_eq!(tv_distance(&c6, &c7), rat_int(0));
        let k2 = local_distribution(&path_graph(2), 1, None);
        assert_eq!(tv_distance(&c6, &k2), rat_int(1));
        let mixed = local_distribution(
            &MultiGraph::new(5, vec![(0, 1), (1, 2), (2, 0), (3, 4)]).unwrap(),
            1,
            None,
        );
        assert_eq!(tv_distance(&mixed, &k2), rat(3, 5));
        assert_eq!(tv_distance(&mixed, &mixed), rat_int(0));
    }

    #[test]
    fn tv_distance_is_a_metric_on_samples() {
        let graphs = [
            cycle_graph(5),
            path_graph(5),
            MultiGraph::new(5, vec![(0, 1), (1, 2), (2, 0), (3, 4)]).unwrap(),
        ];
        let ds: Vec<LocalDistribution> =
            graphs.iter().map(|g| local_distribution(g, 1, None)).collect();
        for i in 0..3 {
            assert_eq!(tv_distance(&ds[i], &ds[i]), rat_int(0));
            for j in 0..3 {
                assert_eq!(tv_distance(&ds[i], &ds[j]), tv_distance(&ds[j], &ds[i]));
                for l in 0..3 {
                    assert!(
                        tv_distance(&ds[i], &ds[j])
                            <= tv_distance(&ds[i], &ds[l]) + tv_distance(&ds[l], &ds[j])
                    );
                }
            }
        }
    }

    #[test]
    fn doubling_preserves_local_statistics() {
        let g = MultiGraph::new(5, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (0, 0)]).unwrap();
        let h = doubled_graph(&g);
        for r in 0..3 {
            let dg = local_distribution(&g, r, None);
            let dh = local_distribution(&h, r, None);
            assert_eq!(dg, dh, "r = {r}");
        }
    }

    #[test]
    fn single_color_sampling_is_a_point() {
        let g = cycle_graph(5);
        let sampled = sample_qkr(&g, 1, 1, 6, 9);
        assert_eq!(sampled.len(), 1);
        assert_eq!(sampled[0], local_distribution(&g, 1, Some(&[0, 0, 0, 0, 0])));
    }

    #[test]
    fn triangle_two_color_statistics_are_exhausted() {
        let g = cycle_graph(3);
        let exact = enumerate_qkr(&g, 2, 1, 100).unwrap();
        // colorings up to rotation/reflection: 000, 001, 011, 111
        assert_eq!(exact.len(), 4);
        let sampled = sample_qkr(&g, 2, 1, 64, 5);
        assert_eq!(sampled, exact);
        let few = sample_qkr(&g, 2, 1, 3, 5);
        for d in &few {
            assert!(exact.contains(d));
            let total: Ratio = d.probs().values().cloned().sum();
            assert_eq!(total, rat_int(1));
        }
        assert!(matches!(
            enumerate_qkr(&g, 2, 1, 7),
            Err(LocalError::BudgetExceeded { required: 8, budget: 7 })
        ));
    }

    #[test]
    fn hausdorff_of_colored_statistics() {
        let a = enumerate_qkr(&cycle_graph(3), 2, 1, 100).unwrap();
        let b = enumerate_qkr(&cycle_graph(4), 2, 1, 100).unwrap();
        assert_eq!(hausdorff_distributions(&a, &a), rat_int(0));
        let d = hausdorff_distributions(&a, &b);
        assert!(d > rat_int(0) && d <= rat_int(1));
        assert_eq!(d, hausdorff_distributions(&b, &a));
    }

    #[test]
    fn subdivision_carries_edge_colors() {
        let g = cycle_graph(3);
        let classes = EdgePartition::new(2, vec![0, 0, 1]).unwrap();
        let (sub, colors) = subdivide_for_edge_colors(&g, &classes).unwrap();
        assert_eq!(sub.n(), 6);
        assert_eq!(sub.m(), 6);
        assert_eq!(&colors[..3], &[0, 0, 0]);
        assert_eq!(&colors[3..], &[1, 1, 2]);
        // midpoints have degree 2, originals keep degree 2
        for v in 0..6 {
            assert_eq!(sub.degree(v, None), 2);
        }
        let uniform = EdgePartition::new(2, vec![0, 0, 0]).unwrap();
        let (sub_u, colors_u) = subdivide_for_edge_colors(&g, &uniform).unwrap();
        let d1 = local_distribution(&sub, 2, Some(&colors));
        let d2 = local_distribution(&sub_u, 2, Some(&colors_u));
        assert!(tv_distance(&d1, &d2) > rat_int(0));
    }

    #[test]
    fn loop_subdivision_makes_a_parallel_pair() {
        let g = MultiGraph::new(1, vec![(0, 0)]).unwrap();
        let classes = EdgePartition::new(1, vec![0]).unwrap();
        let (sub, colors) = subdivide_for_edge_colors(&g, &classes).unwrap();
        assert_eq!(sub.n(), 2);
        assert_eq!(sub.m(), 2);
        assert!(!sub.is_loop(0) && !sub.is_loop(1));
        assert_eq!(colors, vec![0, 1]);
    }

    #[test]
    fn serialization_is_a_hex_to_ratio_map() {
        let g = MultiGraph::new(5, vec![(0, 1), (1, 2), (2, 0), (3, 4)]).unwrap();
        let d = local_distribution(&g, 1, None);
        let json: serde_json::Value =
            serde_json::from_str(&serialize_local_distribution(&d)).unwrap();
        let map = json.as_object().unwrap();
        assert_eq!(map.len(), 2);
        let mut values: Vec<&str> = map.values().map(|v| v.as_str().unwrap()).collect();
        values.sort();
        assert_eq!(values, vec!["2/5", "3/5"]);
        for key in map.keys() {
            assert!(key.chars().all(|c| c.is_ascii_hexdigit()));
        }
    }
}
