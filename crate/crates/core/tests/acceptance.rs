//! Acceptance suite: eleven end-to-end criteria, one test each, every test
//! printing a single pass/fail line (visible with `--nocapture`). All
//! numeric identities are exact rational or integer equalities; the only
//! tolerances anywhere are the wall-clock budgets pinned below.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use matroid_limits::forest::{
    check_layer_property, invasion, verify_token_ledger, WeightList,
};
use matroid_limits::graph::{components, cycle_graph, doubled_graph, path_graph};
use matroid_limits::graphgen::random_regular_connected;
use matroid_limits::local::{ball, canonical_code, BallCode};
use matroid_limits::planar::{
    add_loop, add_parallel, add_pendant, check_duality, dual, grid_map,
    hyperbolic_patch_with_outer, maps_isomorphic, polygon_map, random_planar_map,
    tetrahedron_map, PlanarMap,
};
use matroid_limits::quotient::{
    cycle_q2_rho, enumerate_qk, hausdorff, nearest_quotient_search, quotient, Norm,
    QuotientPoint,
};
use matroid_limits::rank::{
    check_matroid_axioms, cocycle_rho, eta, exhaustive_submodularity, is_base,
    is_independent, rank_abs, rho, SetFunction,
};
use matroid_limits::{rat, rat_int, BoundarySpec, EdgePartition, EdgeSet, MultiGraph, Ratio};

const RANK_IDENTITY_BUDGET: Duration = Duration::from_secs(5);
const AXIOM_BUDGET: Duration = Duration::from_secs(30);
const DUALITY_BUDGET: Duration = Duration::from_secs(120);

fn conclude(id: u32, name: &str, ok: bool, detail: &str) {
    println!("criterion {id:02} {name}: {} ({detail})", if ok { "pass" } else { "FAIL" });
    assert!(ok, "criterion {id:02} {name}: {detail}");
}

fn random_graph(rng: &mut ChaCha8Rng, max_n: usize, max_m: usize) -> MultiGraph {
    let n = rng.gen_range(1..=max_n);
    let m = rng.gen_range(0..=max_m);
    let edges: Vec<(u32, u32)> =
        (0..m).map(|_| (rng.gen_range(0..n as u32), rng.gen_range(0..n as u32))).collect();
    MultiGraph::new(n, edges).expect("endpoints in range")
}

fn random_subset(rng: &mut ChaCha8Rng, m: usize) -> EdgeSet {
    let mut f = EdgeSet::empty(m);
    for e in 0..m {
        if rng.gen_bool(0.5) {
            f.insert(e);
        }
    }
    f
}

/// 1. The uniform-random-point formula agrees with the component-count
/// rank on 500 graphs x 200 subsets, as exact rationals.
#[test]
fn criterion_01_rank_formula_identity() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut subsets = 0u64;
    for _ in 0..500 {
        let g = random_graph(&mut rng, 12, 20);
        let n = g.n() as i64;
        for _ in 0..200 {
            let f = random_subset(&mut rng, g.m());
            // expectation route: 1 - (1/n) * sum over x of 1/|comp(x)|
            let comps = components(&g, &f);
            let mut inv_sum = rat_int(0);
            for v in 0..g.n() as u32 {
                inv_sum += rat(1, comps.size_of_component_of(v) as i64);
            }
            let expectation = rat_int(1) - inv_sum / rat_int(n);
            let integer_rank = rat_int(rank_abs(&g, &f) as i64);
            assert_eq!(expectation.clone() * rat_int(n), integer_rank);
            assert_eq!(rho(&g, &f), expectation);
            subsets += 1;
        }
    }
    let elapsed = start.elapsed();
    conclude(
        1,
        "rank formula identity",
        subsets == 100_000 && elapsed < RANK_IDENTITY_BUDGET,
        &format!("{subsets} subsets in {elapsed:.2?}"),
    );
}

/// Fifty graphs with at most 8 edges: a dozen named shapes, the rest
/// seeded random multigraphs (loops and parallels included).
fn small_corpus() -> Vec<MultiGraph> {
    let mut corpus = vec![
        cycle_graph(3),
        cycle_graph(4),
        cycle_graph(5),
        cycle_graph(6),
        path_graph(4),
        path_graph(8),
        MultiGraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap(),
        MultiGraph::new(1, vec![(0, 0)]).unwrap(),
        MultiGraph::new(2, vec![(0, 1), (0, 1)]).unwrap(),
        MultiGraph::new(2, vec![(0, 1), (0, 1), (0, 1)]).unwrap(),
        MultiGraph::new(3, vec![(0, 1), (1, 1), (1, 2)]).unwrap(),
        MultiGraph::new(5, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap(),
        MultiGraph::new(4, vec![]).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    while corpus.len() < 50 {
        corpus.push(random_graph(&mut rng, 6, 8));
    }
    corpus
}

/// 2. Rank axioms and exhaustive submodularity of both rank functions
/// over all subset pairs of the 50-graph corpus.
#[test]
fn criterion_02_axioms_and_submodularity() {
    let start = Instant::now();
    let corpus = small_corpus();
    let mut pairs = 0u64;
    for g in &corpus {
        let report = check_matroid_axioms(g, 8).expect("corpus stays under the cap");
        assert!(report.all_ok(), "axiom audit failed: {report:?}");
        for phi in [SetFunction::Rho, SetFunction::CocycleRho] {
            let violation = exhaustive_submodularity(g, phi).expect("corpus stays under the cap");
            assert_eq!(violation, None, "{} not submodular", phi.name());
            let subsets = 1u64 << g.m();
            pairs += subsets * (subsets + 1) / 2;
        }
    }
    let elapsed = start.elapsed();
    conclude(
        2,
        "axioms and submodularity",
        corpus.len() == 50 && elapsed < AXIOM_BUDGET,
        &format!("{} graphs, {pairs} subset pairs in {elapsed:.2?}", corpus.len()),
    );
}

fn acyclic_by_dfs(g: &MultiGraph, f: &EdgeSet) -> bool {
    // iterative DFS over the subgraph, multigraph-aware: re-entering a
    // visited vertex by any edge other than the arrival edge is a cycle
    let adj = g.adjacency(Some(f));
    let n = g.n();
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut stack = vec![(start as u32, u32::MAX)];
        seen[start] = true;
        while let Some((x, via)) = stack.pop() {
            for &(y, e) in &adj[x as usize] {
                if e == via {
                    continue;
                }
                if seen[y as usize] {
                    return false;
                }
                seen[y as usize] = true;
                stack.push((y, e));
            }
        }
    }
    true
}

/// 3. Independence, the DFS acyclicity oracle, and the rho = eta predicate
/// agree on every subset of every corpus graph.
#[test]
fn criterion_03_independence_characterization() {
    let mut checked = 0u64;
    for g in &small_corpus() {
        for mask in 0u64..1 << g.m() {
            let f = EdgeSet::from_mask(g.m(), mask);
            let a = is_independent(g, &f);
            let b = acyclic_by_dfs(g, &f);
            let c = rho(g, &f) == eta(g, &f);
            assert!(a == b && b == c, "disagreement on mask {mask:#b}: {a} {b} {c}");
            checked += 1;
        }
    }
    conclude(3, "independence characterization", true, &format!("{checked} subsets"));
}

fn brute_force_best_base_sums(g: &MultiGraph, w: &WeightList) -> Vec<Ratio> {
    let mut best: Option<Vec<Ratio>> = None;
    for mask in 0u64..1 << g.m() {
        let f = EdgeSet::from_mask(g.m(), mask);
        if !is_base(g, &f) {
            continue;
        }
        let sums: Vec<Ratio> = (0..w.key_count()).map(|k| w.key_sum(k, &f)).collect();
        if best.as_ref().map_or(true, |b| sums > *b) {
            best = Some(sums);
        }
    }
    best.expect("every graph has a maximal spanning forest")
}

/// 4. Invasion forests carry the brute-force maximum weight over all
/// spanning forests, including two-key lexicographic weights.
#[test]
fn criterion_04_invasion_optimality() {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let mut runs = 0u64;
    for i in 0..200 {
        let g = random_graph(&mut rng, 6, 8);
        let m = g.m();
        let w = if i % 2 == 0 {
            WeightList::random_distinct(m, rng.gen())
        } else {
            // primary key full of deliberate ties, secondary key breaking
            // most of them, explicit tie-break for the rest: L = 2
            let primary: Vec<Ratio> = (0..m).map(|_| rat(rng.gen_range(0..3), 2)).collect();
            let secondary: Vec<Ratio> =
                (0..m).map(|_| rat(rng.gen_range(1..=12), rng.gen_range(1..=4))).collect();
            let mut order: Vec<u32> = (0..m as u32).collect();
            order.shuffle(&mut rng);
            WeightList::new(vec![primary, secondary], order).unwrap()
        };
        let forest = invasion(&g, &w).expect("weights cover the graph").forest;
        assert!(is_base(&g, &forest));
        let got: Vec<Ratio> = (0..w.key_count()).map(|k| w.key_sum(k, &forest)).collect();
        assert_eq!(got, brute_force_best_base_sums(&g, &w), "weights differ on run {i}");
        runs += 1;
    }
    conclude(4, "invasion optimality", runs == 200, &format!("{runs} weighted graphs"));
}

/// 5. Token ledger: forest edges receive one token, vertices in ambient
/// components of size s pay (s-1)/s, totals equal the matroid rank.
#[test]
fn criterion_05_token_ledger() {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    for _ in 0..200 {
        let g = random_graph(&mut rng, 50, 80);
        let w = WeightList::random_distinct(g.m(), rng.gen());
        let result = invasion(&g, &w).expect("weights cover the graph");
        verify_token_ledger(&g, &result).expect("ledger must match the closed form");
    }
    conclude(5, "token ledger", true, "200 graphs up to 50 vertices");
}

/// 6. Layer property: the invasion forest restricted to any superlevel
/// set of the weights has full rank there.
#[test]
fn criterion_06_layer_property() {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    for _ in 0..200 {
        let g = random_graph(&mut rng, 20, 40);
        let w = WeightList::random_distinct(g.m(), rng.gen());
        let result = invasion(&g, &w).expect("weights cover the graph");
        check_layer_property(&g, &w, &result.forest).expect("layer property must hold");
    }
    conclude(6, "layer property", true, "200 single-key runs");
}

/// A hundred connected genus-0 maps: polygons (with the loop and the
/// parallel pair), grids, bridge/loop/parallel decorations, the
/// tetrahedron, hyperbolic patches up to three layers, and seeded random
/// edit sequences.
fn map_corpus() -> Vec<PlanarMap> {
    let mut corpus: Vec<PlanarMap> = Vec::new();
    corpus.push(tetrahedron_map());
    for p in 1..=6 {
        corpus.push(polygon_map(p));
    }
    for (r, c) in [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3)] {
        corpus.push(grid_map(r, c));
    }
    let decorated = add_parallel(&add_loop(&add_pendant(&polygon_map(3), 0, 0), 1, 0), 0);
    corpus.push(decorated);
    corpus.push(add_pendant(&add_pendant(&polygon_map(1), 0, 0), 1, 0));
    for layers in 1..=3 {
        corpus.push(hyperbolic_patch_with_outer(4, 4, layers).unwrap().0);
        corpus.push(hyperbolic_patch_with_outer(3, 7, layers).unwrap().0);
    }
    corpus.push(hyperbolic_patch_with_outer(7, 3, 1).unwrap().0);
    corpus.push(hyperbolic_patch_with_outer(3, 6, 2).unwrap().0);
    corpus.push(hyperbolic_patch_with_outer(6, 3, 2).unwrap().0);
    corpus.push(hyperbolic_patch_with_outer(5, 4, 1).unwrap().0);
    let mut seed = 700u64;
    while corpus.len() < 100 {
        corpus.push(random_planar_map(1 + (corpus.len() as u32 % 24), seed));
        seed += 1;
    }
    corpus
}

/// 7. Duality suite over the 100-map corpus: double dual involution on
/// maps and edge ids, Euler counts, cocycle rank against the dual's rank,
/// and spanning-tree complementation, exhaustive through 16 edges.
#[test]
fn criterion_07_duality_suite() {
    let start = Instant::now();
    let corpus = map_corpus();
    let count = corpus.len();
    let mut exhaustive_maps = 0u32;
    for (i, map) in corpus.into_iter().enumerate() {
        let d1 = dual(&map);
        let d2 = dual(&d1.map);
        assert!(maps_isomorphic(&d2.map, &map), "map {i}: double dual not isomorphic");
        for e in 0..map.graph().m() {
            let once = d1.sigma[e] as usize;
            assert_eq!(d2.sigma[once] as usize, e, "map {i}: sigma not an involution");
        }
        let report = check_duality(&map, 25, 7000 + i as u64).expect("corpus maps are connected");
        assert!(report.euler_consistent, "map {i}: Euler count failed");
        assert_eq!(report.cocycle_violation, None, "map {i}: cocycle rank mismatch");
        assert_eq!(report.tree_violation, None, "map {i}: tree complementation failed");
        if report.exhaustive {
            exhaustive_maps += 1;
            assert_eq!(report.subsets_checked, 1u64 << map.graph().m());
        }
    }
    let elapsed = start.elapsed();
    conclude(
        7,
        "duality suite",
        count == 100 && elapsed < DUALITY_BUDGET,
        &format!("{count} maps, {exhaustive_maps} exhaustive, {elapsed:.2?}"),
    );
}

/// 8. On square and heptagonal patches, the free maximal forest is the
/// sigma-complement of the dual's minimal forest wired at the outer face.
#[test]
fn criterion_08_free_wired_complementation() {
    let mut cases = 0u32;
    for (p, q) in [(4, 4), (3, 7)] {
        for layers in 1..=3 {
            let (map, outer) = hyperbolic_patch_with_outer(p, q, layers).unwrap();
            let g = map.graph();
            let m = g.m();
            let w = WeightList::random_distinct(m, 808 + cases as u64);
            let free_max = invasion(g, &w).expect("weights cover the graph").forest;

            let d = dual(&map);
            let dual_g = d.map.graph();
            // the outer face is the dual's boundary vertex; contracting a
            // single vertex is the identity, which is the point: the patch
            // already stores the whole outside in that one vertex
            let (wired_graph, _) =
                matroid_limits::contract(dual_g, &BoundarySpec::new(vec![outer])).unwrap();
            let wired_min =
                invasion(&wired_graph, &w.reversed()).expect("weights cover the graph").forest;

            let mut sigma_complement = EdgeSet::empty(m);
            for e in 0..m {
                if !wired_min.contains(d.sigma[e] as usize) {
                    sigma_complement.insert(e);
                }
            }
            assert_eq!(
                free_max, sigma_complement,
                "{{{p},{q}}} layers {layers}: complementation failed"
            );
            cases += 1;
        }
    }
    conclude(8, "free/wired complementation", cases == 6, "both patch families, 3 layers each");
}

/// 9. Exact two-class profiles along growing cycles are Cauchy-like: the
/// last consecutive Hausdorff distance is no larger than the first; the
/// closed form used for the largest cycle matches enumeration wherever
/// enumeration is feasible, and the distance of a profile to itself is 0.
#[test]
fn criterion_09_quotient_convergence() {
    let mut profiles = Vec::new();
    for n in [4usize, 8, 16] {
        let enumerated =
            enumerate_qk(&cycle_graph(n), 2, SetFunction::Rho, Some(1 << 17)).unwrap();
        assert_eq!(enumerated, cycle_q2_rho(n), "closed form diverges at C{n}");
        profiles.push(enumerated);
    }
    profiles.push(cycle_q2_rho(32));

    let mut distances = Vec::new();
    for pair in profiles.windows(2) {
        distances.push(hausdorff(&pair[0], &pair[1], Norm::Sup).unwrap());
    }
    let first = distances.first().unwrap();
    let last = distances.last().unwrap();

    let doubled_profile =
        enumerate_qk(&doubled_graph(&cycle_graph(3)), 2, SetFunction::Rho, None).unwrap();
    let self_distance = hausdorff(&doubled_profile, &doubled_profile, Norm::Sup).unwrap();

    let texts: Vec<String> =
        distances.iter().map(matroid_limits::format_ratio).collect();
    conclude(
        9,
        "quotient convergence",
        last <= first && self_distance == rat_int(0),
        &format!("distances {}", texts.join(", ")),
    );
}

/// The profile point reached by coloring a doubled graph by copy, for
/// copies of `part` vertices: (0, (part-1)/(2 part), same, (part-1)/part).
fn split_target(part: usize) -> Vec<Ratio> {
    let p = part as i64;
    vec![rat_int(0), rat(p - 1, 2 * p), rat(p - 1, 2 * p), rat(p - 1, p)]
}

fn exhaustive_min_distance(g: &MultiGraph, target: &[Ratio]) -> Ratio {
    let m = g.m();
    let target_point = QuotientPoint::new(2, target.to_vec());
    let mut best: Option<Ratio> = None;
    for mask in 0u64..1 << m {
        let labels: Vec<u32> = (0..m).map(|e| (mask >> e & 1) as u32).collect();
        let p = EdgePartition::new(2, labels).unwrap();
        let point = quotient(g, &p, SetFunction::Rho).unwrap();
        let dist = Norm::Sup.distance(&point, &target_point);
        if best.as_ref().map_or(true, |b| dist < *b) {
            best = Some(dist);
        }
    }
    best.expect("at least the all-zero coloring exists")
}

/// 10. Doubled graphs hit the split profile exactly; a connected 3-regular
/// graph provably cannot, and the seeded search reports a positive best
/// distance; on small instances the search matches the exhaustive minimum.
#[test]
fn criterion_10_expander_gap() {
    // (a) copy colorings of doubled 3-regular graphs land exactly
    for (part, seed) in [(8usize, 1u64), (12, 2), (24, 3)] {
        let half = random_regular_connected(part, 3, seed, 50).unwrap();
        let g = doubled_graph(&half);
        let mut labels = vec![0u32; g.m()];
        for l in labels.iter_mut().skip(half.m()) {
            *l = 1;
        }
        let p = EdgePartition::new(2, labels).unwrap();
        let point = quotient(&g, &p, SetFunction::Rho).unwrap();
        assert_eq!(point.coords(), &split_target(part)[..], "copies of {part} missed");
    }

    // (b) pinned 50-vertex connected cubic graph: strictly positive gap
    let expander = random_regular_connected(50, 3, 1010, 50).unwrap();
    let target = split_target(25);
    let search =
        nearest_quotient_search(&expander, 2, SetFunction::Rho, &target, 100, 2020).unwrap();
    let positive = search.distance > rat_int(0);

    // (c) small connected graphs, at most 8 edges: exhaustive over all
    // 2^m colorings confirms the search's best distance
    let k4 = MultiGraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    let chorded = MultiGraph::new(6, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)])
        .unwrap();
    let ladder = MultiGraph::new(
        6,
        vec![(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)],
    )
    .unwrap();
    let mut small_checked = 0u32;
    for g in [&cycle_graph(4), &cycle_graph(6), &cycle_graph(8), &k4, &chorded, &ladder] {
        let target = split_target(g.n() / 2);
        let exhaustive = exhaustive_min_distance(g, &target);
        let found = nearest_quotient_search(g, 2, SetFunction::Rho, &target, 256, 3030)
            .unwrap()
            .distance;
        assert_eq!(found, exhaustive, "search missed the optimum on a small graph");
        assert!(exhaustive > rat_int(0));
        small_checked += 1;
    }

    conclude(
        10,
        "expander gap",
        positive && small_checked == 6,
        &format!(
            "best distance {} on 50 vertices, {small_checked} exhaustive confirmations",
            matroid_limits::format_ratio(&search.distance)
        ),
    );
}

fn permutations(items: Vec<u32>) -> Vec<Vec<u32>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.clone();
        let chosen = rest.remove(i);
        for mut tail in permutations(rest) {
            tail.insert(0, chosen);
            out.push(tail);
        }
    }
    out
}

/// Brute-force canonical key of a rooted colored simple graph: the
/// lexicographically smallest (colors, adjacency bits) over all
/// relabelings that fix the root as vertex 0.
fn brute_rooted_key(n: usize, adj: &[Vec<bool>], colors: &[u32], root: u32) -> Vec<u32> {
    let others: Vec<u32> = (0..n as u32).filter(|&v| v != root).collect();
    let mut best: Option<Vec<u32>> = None;
    for perm in permutations(others) {
        // old vertex -> new label; root is always label 0
        let mut relabel = vec![0u32; n];
        relabel[root as usize] = 0;
        for (new_minus_one, &old) in perm.iter().enumerate() {
            relabel[old as usize] = new_minus_one as u32 + 1;
        }
        let mut inverse = vec![0u32; n];
        for (old, &new) in relabel.iter().enumerate() {
            inverse[new as usize] = old as u32;
        }
        let mut key: Vec<u32> = (0..n).map(|new| colors[inverse[new] as usize]).collect();
        for a in 0..n {
            for b in (a + 1)..n {
                key.push(adj[inverse[a] as usize][inverse[b] as usize] as u32);
            }
        }
        if best.as_ref().map_or(true, |b| key < *b) {
            best = Some(key);
        }
    }
    best.expect("identity permutation always exists")
}

/// 11. Ball-code equality coincides with brute-force rooted colored
/// isomorphism over every connected rooted simple graph with up to 5
/// vertices and every 2-coloring.
#[test]
fn criterion_11_canonicalization_oracle() {
    let mut code_to_key: BTreeMap<BallCode, Vec<u32>> = BTreeMap::new();
    let mut key_to_code: BTreeMap<Vec<u32>, BallCode> = BTreeMap::new();
    let mut balls = 0u64;
    for n in 1..=5usize {
        let vertex_pairs: Vec<(u32, u32)> = (0..n as u32)
            .flat_map(|a| ((a + 1)..n as u32).map(move |b| (a, b)))
            .collect();
        for mask in 0u64..1 << vertex_pairs.len() {
            let edges: Vec<(u32, u32)> = vertex_pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = MultiGraph::new(n, edges.clone()).unwrap();
            let mut adj = vec![vec![false; n]; n];
            for &(a, b) in &edges {
                adj[a as usize][b as usize] = true;
                adj[b as usize][a as usize] = true;
            }
            for root in 0..n as u32 {
                if !all_reachable(&g, root) {
                    continue;
                }
                for coloring in 0u64..1 << n {
                    let colors: Vec<u32> =
                        (0..n).map(|v| (coloring >> v & 1) as u32).collect();
                    let b = ball(&g, root, n as u32, Some(&colors));
                    let code = canonical_code(&b);
                    let key = brute_rooted_key(n, &adj, &colors, root);
                    // key includes n implicitly only through length; make
                    // the vertex count explicit so sizes never collide
                    let mut full_key = vec![n as u32];
                    full_key.extend(key);
                    if let Some(prev) = code_to_key.get(&code) {
                        assert_eq!(prev, &full_key, "one code, two isomorphism types");
                    } else {
                        code_to_key.insert(code.clone(), full_key.clone());
                    }
                    if let Some(prev) = key_to_code.get(&full_key) {
                        assert_eq!(prev, &code, "one isomorphism type, two codes");
                    } else {
                        key_to_code.insert(full_key, code);
                    }
                    balls += 1;
                }
            }
        }
    }
    conclude(
        11,
        "canonicalization oracle",
        code_to_key.len() == key_to_code.len(),
        &format!("{balls} rooted colored graphs, {} classes", code_to_key.len()),
    );
}

fn all_reachable(g: &MultiGraph, root: u32) -> bool {
    let adj = g.adjacency(None);
    let mut seen = vec![false; g.n()];
    let mut stack = vec![root];
    seen[root as usize] = true;
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for &(y, _) in &adj[x as usize] {
            if !seen[y as usize] {
                seen[y as usize] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count == g.n()
}

// keep the unused-import lint honest: cocycle_rho participates through the
// duality suite's report; reference it directly once as well
#[test]
fn cocycle_rank_formula_spot_check() {
    let g = cycle_graph(3);
    let mut f = EdgeSet::empty(3);
    f.insert(0);
    assert_eq!(cocycle_rho(&g, &f), rat(1, 3));
    assert_eq!(cocycle_rho(&g, &EdgeSet::full(3)), rat(1, 3));
}
