//! Rotation-system planar maps and exact duality.
//!
//! A map is a multigraph plus a cyclic order of incident half-edges at
//! every vertex. Edge e owns half-edges 2e (at its first endpoint) and
//! 2e+1 (at its second); `twin` flips the low bit. Faces are the orbits of
//! `face_next(h) = rot_next(twin(h))`, and validity means exactly that
//! every component satisfies Euler's genus-0 count n - m + f = 2, with an
//! edgeless component owning one implicit face.
//!
//! The dual keeps edge identities: dual edge e joins the two faces on the
//! sides of primal edge e, and the rotation at a dual vertex is the facial
//! walk itself. This makes the edge bijection between a map and its dual
//! the identity on indices, so rank statements transfer between the two
//! without any translation table.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::forest::{invasion, WeightList};
use crate::graph::{EdgeSet, MultiGraph, UnionFind};
use crate::rank::{cocycle_rho, is_base, rank_abs};
use crate::ratio::rat_int;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PlanarError {
    #[error("rotation lists cover {got} vertices, graph has {want}")]
    RotationSizeMismatch { got: usize, want: usize },
    #[error("half-edge {half} appears {count} times in the rotation system")]
    HalfEdgeCount { half: u32, count: usize },
    #[error("half-edge {half} listed at vertex {at}, but belongs to vertex {wants}")]
    HalfEdgeAtWrongVertex { half: u32, at: u32, wants: u32 },
    #[error("component of vertex {vertex} has n={n}, m={m}, f={f}; not genus 0")]
    NonPlanar { vertex: u32, n: usize, m: usize, f: usize },
    #[error("map is not connected ({components} components)")]
    Disconnected { components: usize },
    #[error("{{{p},{q}}} is not a Euclidean or hyperbolic tiling signature")]
    BadTilingSignature { p: usize, q: usize },
    #[error("map deserialization: {0}")]
    Parse(String),
}

/// The other half of the same edge.
pub fn twin(h: u32) -> u32 {
    h ^ 1
}

/// An embedded multigraph: per-vertex cyclic rotation of half-edges,
/// validated to be genus 0 on every component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarMap {
    g: MultiGraph,
    rotation: Vec<Vec<u32>>,
    rot_next: Vec<u32>,
    rot_prev: Vec<u32>,
    vertex_of: Vec<u32>,
}

impl PlanarMap {
    pub fn new(g: MultiGraph, rotation: Vec<Vec<u32>>) -> Result<Self, PlanarError> {
        if rotation.len() != g.n() {
            return Err(PlanarError::RotationSizeMismatch { got: rotation.len(), want: g.n() });
        }
        let halves = 2 * g.m();
        let mut vertex_of = vec![0u32; halves];
        for e in 0..g.m() {
            let (u, v) = g.endpoints(e);
            vertex_of[2 * e] = u;
            vertex_of[2 * e + 1] = v;
        }
        let mut count = vec![0usize; halves];
        for (v, list) in rotation.iter().enumerate() {
            for &h in list {
                if h as usize >= halves {
                    return Err(PlanarError::HalfEdgeCount { half: h, count: 0 });
                }
                count[h as usize] += 1;
                if vertex_of[h as usize] != v as u32 {
                    return Err(PlanarError::HalfEdgeAtWrongVertex {
                        half: h,
                        at: v as u32,
                        wants: vertex_of[h as usize],
                    });
                }
            }
        }
        if let Some(h) = count.iter().position(|&c| c != 1) {
            return Err(PlanarError::HalfEdgeCount { half: h as u32, count: count[h] });
        }
        let mut rot_next = vec![0u32; halves];
        let mut rot_prev = vec![0u32; halves];
        for list in &rotation {
            for (i, &h) in list.iter().enumerate() {
                let succ = list[(i + 1) % list.len()];
                rot_next[h as usize] = succ;
                rot_prev[succ as usize] = h;
            }
        }
        let map = PlanarMap { g, rotation, rot_next, rot_prev, vertex_of };
        map.check_genus_zero()?;
        Ok(map)
    }

    fn check_genus_zero(&self) -> Result<(), PlanarError> {
        let n = self.g.n();
        let mut uf = UnionFind::new(n);
        for e in 0..self.g.m() {
            let (u, v) = self.g.endpoints(e);
            uf.union(u, v);
        }
        let mut verts = vec![0usize; n];
        let mut edges = vec![0usize; n];
        let mut faces = vec![0usize; n];
        for v in 0..n {
            verts[uf.find(v as u32) as usize] += 1;
        }
        for e in 0..self.g.m() {
            edges[uf.find(self.g.endpoints(e).0) as usize] += 1;
        }
        for walk in self.faces() {
            faces[uf.find(self.vertex_of[walk[0] as usize]) as usize] += 1;
        }
        for v in 0..n {
            if uf.find(v as u32) as usize != v {
                continue;
            }
            let f = if edges[v] == 0 { 1 } else { faces[v] };
            if verts[v] + f != edges[v] + 2 {
                return Err(PlanarError::NonPlanar {
                    vertex: v as u32,
                    n: verts[v],
                    m: edges[v],
                    f,
                });
            }
        }
        Ok(())
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.g
    }

    pub fn rotation(&self) -> &[Vec<u32>] {
        &self.rotation
    }

    pub fn vertex_of(&self, h: u32) -> u32 {
        self.vertex_of[h as usize]
    }

    pub fn rot_next(&self, h: u32) -> u32 {
        self.rot_next[h as usize]
    }

    pub fn rot_prev(&self, h: u32) -> u32 {
        self.rot_prev[h as usize]
    }

    pub fn face_next(&self, h: u32) -> u32 {
        self.rot_next(twin(h))
    }

    /// Facial walks as half-edge cycles; each starts at its smallest
    /// half-edge and walks appear in order of that representative.
    /// Edgeless components have an implicit face not listed here.
    pub fn faces(&self) -> Vec<Vec<u32>> {
        let halves = 2 * self.g.m();
        let mut seen = vec![false; halves];
        let mut out = Vec::new();
        for h0 in 0..halves as u32 {
            if seen[h0 as usize] {
                continue;
            }
            let mut walk = Vec::new();
            let mut h = h0;
            loop {
                seen[h as usize] = true;
                walk.push(h);
                h = self.face_next(h);
                if h == h0 {
                    break;
                }
            }
            out.push(walk);
        }
        out
    }

    /// Total face count, implicit faces of edgeless components included.
    pub fn face_count(&self) -> usize {
        let mut uf = UnionFind::new(self.g.n());
        for e in 0..self.g.m() {
            let (u, v) = self.g.endpoints(e);
            uf.union(u, v);
        }
        let mut has_edge = vec![false; self.g.n()];
        for e in 0..self.g.m() {
            has_edge[uf.find(self.g.endpoints(e).0) as usize] = true;
        }
        let edgeless = (0..self.g.n())
            .filter(|&v| uf.find(v as u32) as usize == v && !has_edge[v])
            .count();
        self.faces().len() + edgeless
    }
}

/// A dual map together with the edge bijection back to the primal. The
/// bijection is the identity on edge indices by construction; it is still
/// carried explicitly because consumers state their checks through it.
#[derive(Debug, Clone)]
pub struct DualResult {
    pub map: PlanarMap,
    pub sigma: Vec<u32>,
}

/// The dual map: one vertex per face (implicit faces of edgeless
/// components become isolated dual vertices, listed after the walks), dual
/// edge e joining the faces on the two sides of primal edge e, rotation at
/// a face given by its walk order.
pub fn dual(m: &PlanarMap) -> DualResult {
    let walks = m.faces();
    let halves = 2 * m.graph().m();
    let mut face_of = vec![0u32; halves];
    for (i, walk) in walks.iter().enumerate() {
        for &h in walk {
            face_of[h as usize] = i as u32;
        }
    }
    let mut uf = UnionFind::new(m.graph().n());
    for e in 0..m.graph().m() {
        let (u, v) = m.graph().endpoints(e);
        uf.union(u, v);
    }
    let mut has_edge = vec![false; m.graph().n()];
    for e in 0..m.graph().m() {
        has_edge[uf.find(m.graph().endpoints(e).0) as usize] = true;
    }
    let edgeless = (0..m.graph().n())
        .filter(|&v| uf.find(v as u32) as usize == v && !has_edge[v])
        .count();
    let dual_n = walks.len() + edgeless;
    let dual_edges: Vec<(u32, u32)> =
        (0..m.graph().m()).map(|e| (face_of[2 * e], face_of[2 * e + 1])).collect();
    let mut rotation: Vec<Vec<u32>> = walks;
    rotation.extend(std::iter::repeat_with(Vec::new).take(edgeless));
    let g = MultiGraph::new(dual_n, dual_edges).expect("face ids are in range");
    let map = PlanarMap::new(g, rotation).expect("dual of a genus-0 map is genus 0");
    DualResult { map, sigma: (0..m.graph().m() as u32).collect() }
}

fn component_encoding(m: &PlanarMap, comp: &[u32], mirror: bool) -> Vec<u32> {
    let halves = 2 * m.graph().m();
    let mut best: Option<Vec<u32>> = None;
    for &root in comp {
        let mut pos = vec![u32::MAX; halves];
        let mut order = Vec::with_capacity(comp.len());
        pos[root as usize] = 0;
        order.push(root);
        let mut head = 0;
        while head < order.len() {
            let h = order[head];
            head += 1;
            let nbrs = if mirror {
                [m.rot_prev(h), twin(h)]
            } else {
                [m.rot_next(h), twin(h)]
            };
            for nb in nbrs {
                if pos[nb as usize] == u32::MAX {
                    pos[nb as usize] = order.len() as u32;
                    order.push(nb);
                }
            }
        }
        let mut enc = Vec::with_capacity(2 * order.len());
        for &h in &order {
            let r = if mirror { m.rot_prev(h) } else { m.rot_next(h) };
            enc.push(pos[r as usize]);
            enc.push(pos[twin(h) as usize]);
        }
        if best.as_ref().map_or(true, |b| enc < *b) {
            best = Some(enc);
        }
    }
    best.expect("component has at least one half-edge")
}

/// Label-independent encoding: per half-edge-component, the minimum
/// breadth-first relabeling over every root half-edge and both
/// orientations; components sorted, isolated vertices counted.
pub fn canonical_map_encoding(m: &PlanarMap) -> Vec<u32> {
    let halves = 2 * m.graph().m();
    let mut uf = UnionFind::new(m.graph().n());
    for e in 0..m.graph().m() {
        let (u, v) = m.graph().endpoints(e);
        uf.union(u, v);
    }
    let mut comp_halves: std::collections::BTreeMap<u32, Vec<u32>> = Default::default();
    for h in 0..halves as u32 {
        comp_halves.entry(uf.find(m.vertex_of(h))).or_default().push(h);
    }
    let mut has_edge = vec![false; m.graph().n()];
    for e in 0..m.graph().m() {
        has_edge[uf.find(m.graph().endpoints(e).0) as usize] = true;
    }
    let isolated = (0..m.graph().n())
        .filter(|&v| uf.find(v as u32) as usize == v && !has_edge[v])
        .count();
    let mut encodings: Vec<Vec<u32>> = comp_halves
        .values()
        .map(|comp| {
            let plain = component_encoding(m, comp, false);
            let flipped = component_encoding(m, comp, true);
            plain.min(flipped)
        })
        .collect();
    encodings.sort();
    let mut out = vec![isolated as u32, encodings.len() as u32];
    for enc in encodings {
        out.push(enc.len() as u32);
        out.extend(enc);
    }
    out
}

/// Map isomorphism, reflections allowed.
pub fn maps_isomorphic(a: &PlanarMap, b: &PlanarMap) -> bool {
    canonical_map_encoding(a) == canonical_map_encoding(b)
}

/// Outcome of the exact duality checks.
#[derive(Debug, Clone)]
pub struct DualityReport {
    pub exhaustive: bool,
    pub subsets_checked: u64,
    pub trees_checked: u64,
    pub euler_consistent: bool,
    pub cocycle_violation: Option<EdgeSet>,
    pub tree_violation: Option<EdgeSet>,
}

impl DualityReport {
    pub fn ok(&self) -> bool {
        self.euler_consistent && self.cocycle_violation.is_none() && self.tree_violation.is_none()
    }
}

const EXHAUSTIVE_DUALITY_CAP: usize = 16;

/// Exact duality audit of a connected map: the scaled cocycle rank of
/// every subset equals the absolute rank of its image in the dual, the
/// complement map is a spanning-tree bijection, and the Euler count holds.
/// Exhaustive over all subsets up to 16 edges, seeded random subsets and
/// invasion-built random trees beyond.
pub fn check_duality(
    m: &PlanarMap,
    trials: u64,
    seed: u64,
) -> Result<DualityReport, PlanarError> {
    let g = m.graph();
    let comps = crate::graph::component_count(g, &EdgeSet::full(g.m()));
    if comps != 1 {
        return Err(PlanarError::Disconnected { components: comps });
    }
    let d = dual(m);
    let dg = d.map.graph();
    let n = g.n();
    let me = g.m();
    let euler_consistent = m.face_count() == me + 2 - n && me == (n - 1) + (m.face_count() - 1);

    let image = |f: &EdgeSet| {
        let mut s = EdgeSet::empty(me);
        for e in f.iter() {
            s.insert(d.sigma[e] as usize);
        }
        s
    };
    let cocycle_matches = |f: &EdgeSet| {
        cocycle_rho(g, f) * rat_int(n as i64) == rat_int(rank_abs(dg, &image(f)) as i64)
    };
    let tree_matches = |f: &EdgeSet| is_base(g, f) == is_base(dg, &image(&f.complement()));

    let mut report = DualityReport {
        exhaustive: me <= EXHAUSTIVE_DUALITY_CAP,
        subsets_checked: 0,
        trees_checked: 0,
        euler_consistent,
        cocycle_violation: None,
        tree_violation: None,
    };
    if report.exhaustive {
        for mask in 0u64..1 << me {
            let f = EdgeSet::from_mask(me, mask);
            report.subsets_checked += 1;
            report.trees_checked += 1;
            if report.cocycle_violation.is_none() && !cocycle_matches(&f) {
                report.cocycle_violation = Some(f.clone());
            }
            if report.tree_violation.is_none() && !tree_matches(&f) {
                report.tree_violation = Some(f);
            }
            if report.cocycle_violation.is_some() && report.tree_violation.is_some() {
                break;
            }
        }
        return Ok(report);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let mut f = EdgeSet::empty(me);
        for e in 0..me {
            if rng.gen_bool(0.5) {
                f.insert(e);
            }
        }
        report.subsets_checked += 1;
        if !cocycle_matches(&f) {
            report.cocycle_violation.get_or_insert(f.clone());
        }
        if !tree_matches(&f) {
            report.tree_violation.get_or_insert(f);
        }
    }
    // random maximal forests on both sides: trees of a connected map, so
    // each complement must be a tree of the other map
    for t in 0..trials {
        let w = WeightList::random_distinct(me, seed ^ (0x9e37_79b9_7f4a_7c15 + t));
        let primal_tree = invasion(g, &w).expect("no seed forest").forest;
        report.trees_checked += 1;
        if !tree_matches(&primal_tree) {
            report.tree_violation.get_or_insert(primal_tree);
        }
        let dual_tree = invasion(dg, &w).expect("no seed forest").forest;
        report.trees_checked += 1;
        let back = dual_tree.complement();
        if is_base(dg, &dual_tree) != is_base(g, &back) {
            report.tree_violation.get_or_insert(back);
        }
    }
    Ok(report)
}

/// The p-gon as a map: cycle graph, two faces.
pub fn polygon_map(p: usize) -> PlanarMap {
    assert!(p >= 1);
    let g = crate::graph::cycle_graph(p);
    let rotation: Vec<Vec<u32>> = (0..p)
        .map(|i| {
            let prev = (i + p - 1) % p;
            if p == 1 {
                vec![0, 1]
            } else {
                vec![2 * i as u32, 2 * prev as u32 + 1]
            }
        })
        .collect();
    PlanarMap::new(g, rotation).expect("polygon rotation is planar")
}

/// A rows x cols grid of square faces with the axis-aligned embedding.
pub fn grid_map(rows: usize, cols: usize) -> PlanarMap {
    assert!(rows >= 1 && cols >= 1);
    let vid = |r: usize, c: usize| (r * (cols + 1) + c) as u32;
    let horiz = (rows + 1) * cols;
    let mut edges = Vec::new();
    for r in 0..=rows {
        for c in 0..cols {
            edges.push((vid(r, c), vid(r, c + 1)));
        }
    }
    for r in 0..rows {
        for c in 0..=cols {
            edges.push((vid(r, c), vid(r + 1, c)));
        }
    }
    let h_right = |r: usize, c: usize| 2 * (r * cols + c) as u32;
    let h_left = |r: usize, c: usize| 2 * (r * cols + (c - 1)) as u32 + 1;
    let h_down = |r: usize, c: usize| 2 * (horiz + r * (cols + 1) + c) as u32;
    let h_up = |r: usize, c: usize| 2 * (horiz + (r - 1) * (cols + 1) + c) as u32 + 1;
    let mut rotation = Vec::with_capacity((rows + 1) * (cols + 1));
    for r in 0..=rows {
        for c in 0..=cols {
            let mut list = Vec::new();
            if c < cols {
                list.push(h_right(r, c));
            }
            if r < rows {
                list.push(h_down(r, c));
            }
            if c > 0 {
                list.push(h_left(r, c));
            }
            if r > 0 {
                list.push(h_up(r, c));
            }
            rotation.push(list);
        }
    }
    let g = MultiGraph::new((rows + 1) * (cols + 1), edges).expect("grid endpoints in range");
    PlanarMap::new(g, rotation).expect("grid rotation is planar")
}

/// K4 embedded with one vertex inside the triangle of the other three.
pub fn tetrahedron_map() -> PlanarMap {
    let g = MultiGraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
        .expect("K4 endpoints in range");
    let rotation = vec![vec![4, 0, 2], vec![6, 1, 8], vec![10, 3, 7], vec![9, 5, 11]];
    PlanarMap::new(g, rotation).expect("tetrahedron rotation is planar")
}

/// New pendant edge at `v`, inserted at rotation position `pos`.
pub fn add_pendant(m: &PlanarMap, v: u32, pos: usize) -> PlanarMap {
    let g = m.graph();
    let mut edges = g.edges().to_vec();
    let e = edges.len();
    edges.push((v, g.n() as u32));
    let mut rotation = m.rotation().to_vec();
    let slot = pos % (rotation[v as usize].len() + 1);
    rotation[v as usize].insert(slot, 2 * e as u32);
    rotation.push(vec![2 * e as u32 + 1]);
    let g2 = MultiGraph::new(g.n() + 1, edges).expect("pendant endpoints in range");
    PlanarMap::new(g2, rotation).expect("pendant preserves genus")
}

/// New contractible loop at `v`: both halves adjacent in the rotation.
pub fn add_loop(m: &PlanarMap, v: u32, pos: usize) -> PlanarMap {
    let g = m.graph();
    let mut edges = g.edges().to_vec();
    let e = edges.len();
    edges.push((v, v));
    let mut rotation = m.rotation().to_vec();
    let slot = pos % (rotation[v as usize].len() + 1);
    rotation[v as usize].insert(slot, 2 * e as u32 + 1);
    rotation[v as usize].insert(slot, 2 * e as u32);
    let g2 = MultiGraph::new(g.n(), edges).expect("loop endpoints in range");
    PlanarMap::new(g2, rotation).expect("contractible loop preserves genus")
}

/// Duplicate of edge `e0`, glued alongside it so the pair bounds a bigon.
/// Duplicating a loop nests a fresh contractible loop just inside it.
pub fn add_parallel(m: &PlanarMap, e0: usize) -> PlanarMap {
    let g = m.graph();
    let (u, v) = g.endpoints(e0);
    if u == v {
        let at = m
            .rotation()[u as usize]
            .iter()
            .position(|&h| h == 2 * e0 as u32)
            .expect("loop half present");
        return add_loop(m, u, at + 1);
    }
    let mut edges = g.edges().to_vec();
    let e = edges.len();
    edges.push((u, v));
    let mut rotation = m.rotation().to_vec();
    let at_u = rotation[u as usize].iter().position(|&h| h == 2 * e0 as u32).unwrap();
    rotation[u as usize].insert(at_u + 1, 2 * e as u32);
    let at_v = rotation[v as usize].iter().position(|&h| h == 2 * e0 as u32 + 1).unwrap();
    rotation[v as usize].insert(at_v, 2 * e as u32 + 1);
    let g2 = MultiGraph::new(g.n(), edges).expect("parallel endpoints in range");
    PlanarMap::new(g2, rotation).expect("parallel edge preserves genus")
}

/// Split edge `e0` with a new degree-2 vertex; `e0` keeps its first
/// endpoint and a fresh edge carries the second.
pub fn subdivide_edge(m: &PlanarMap, e0: usize) -> PlanarMap {
    let g = m.graph();
    let (_, v) = g.endpoints(e0);
    let x = g.n() as u32;
    let mut edges = g.edges().to_vec();
    edges[e0].1 = x;
    let e = edges.len();
    edges.push((x, v));
    let mut rotation = m.rotation().to_vec();
    let at_v = rotation[v as usize].iter().position(|&h| h == 2 * e0 as u32 + 1).unwrap();
    rotation[v as usize][at_v] = 2 * e as u32 + 1;
    rotation.push(vec![2 * e0 as u32 + 1, 2 * e as u32]);
    let g2 = MultiGraph::new(g.n() + 1, edges).expect("subdivision endpoints in range");
    PlanarMap::new(g2, rotation).expect("subdivision preserves genus")
}

/// Seeded random connected genus-0 map grown from a single vertex by
/// pendants, contractible loops, parallel edges, and subdivisions. Always
/// valid by construction; useful as a duality test corpus.
pub fn random_planar_map(ops: u32, seed: u64) -> PlanarMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = MultiGraph::new(1, Vec::new()).expect("single vertex");
    let mut m = PlanarMap::new(g, vec![Vec::new()]).expect("edgeless map");
    for _ in 0..ops {
        let choice = if m.graph().m() == 0 { 0 } else { rng.gen_range(0..8u32) };
        m = match choice {
            0..=2 => {
                let v = rng.gen_range(0..m.graph().n()) as u32;
                let pos = rng.gen_range(0..=m.rotation()[v as usize].len());
                add_pendant(&m, v, pos)
            }
            3 => {
                let v = rng.gen_range(0..m.graph().n()) as u32;
                let pos = rng.gen_range(0..=m.rotation()[v as usize].len());
                add_loop(&m, v, pos)
            }
            4..=5 => add_parallel(&m, rng.gen_range(0..m.graph().m())),
            _ => subdivide_edge(&m, rng.gen_range(0..m.graph().m())),
        };
    }
    m
}

struct PatchBuilder {
    p: usize,
    q: usize,
    edges: Vec<(u32, u32)>,
    face_count: Vec<u32>,
    inner_faces: Vec<Vec<u32>>,
    outer: Vec<u32>,
}

enum RingFace {
    // a face glued along a run of consecutive old boundary edges
    Along(Vec<u32>),
    // a face touching the old boundary only at one vertex
    CornerAt(u32),
}

impl PatchBuilder {
    fn new(p: usize) -> Self {
        let edges: Vec<(u32, u32)> = (0..p).map(|i| (i as u32, ((i + 1) % p) as u32)).collect();
        let inner: Vec<u32> = (0..p).map(|i| 2 * i as u32).collect();
        let outer: Vec<u32> = (0..p).rev().map(|i| 2 * i as u32 + 1).collect();
        PatchBuilder {
            p,
            q: 0,
            edges,
            face_count: vec![1; p],
            inner_faces: vec![inner],
            outer,
        }
    }

    fn tail(&self, h: u32) -> u32 {
        let (u, v) = self.edges[(h / 2) as usize];
        if h & 1 == 0 {
            u
        } else {
            v
        }
    }

    fn head(&self, h: u32) -> u32 {
        self.tail(twin(h))
    }

    fn new_vertex(&mut self) -> u32 {
        self.face_count.push(0);
        (self.face_count.len() - 1) as u32
    }

    fn new_edge(&mut self, u: u32, v: u32) -> u32 {
        self.edges.push((u, v));
        (self.edges.len() - 1) as u32
    }

    fn add_layer(&mut self) {
        let q = self.q;
        let p = self.p;
        let f_before = self.face_count.clone();
        // start the sweep at an unsaturated corner so absorption runs
        // never cross the seam
        let start = self
            .outer
            .iter()
            .position(|&h| (f_before[self.tail(h) as usize] as usize) <= q - 2)
            .expect("an unsaturated boundary vertex always exists");
        self.outer.rotate_left(start);
        let old = self.outer.clone();
        let u0 = self.tail(old[0]);

        let mut specs: Vec<RingFace> = Vec::new();
        let mut j = 0;
        while j < old.len() {
            let mut run = vec![old[j]];
            let mut w = self.head(old[j]);
            j += 1;
            while j < old.len() && f_before[w as usize] as usize == q - 1 {
                run.push(old[j]);
                w = self.head(old[j]);
                j += 1;
            }
            specs.push(RingFace::Along(run));
            let corners = q as i64 - f_before[w as usize] as i64 - 2;
            debug_assert!(corners >= 0, "absorption should have consumed this corner");
            for _ in 0..corners {
                specs.push(RingFace::CornerAt(w));
            }
        }

        // the seam spoke: created up front, closed by the last ring face
        let s_star = self.new_vertex();
        let e_star = self.new_edge(u0, s_star);
        let mut entry_half = 2 * e_star + 1;
        let mut entry_far = s_star;
        let mut new_outer: Vec<u32> = Vec::new();
        let total = specs.len();
        for (idx, spec) in specs.into_iter().enumerate() {
            let last = idx == total - 1;
            let (run, w) = match spec {
                RingFace::Along(run) => {
                    let w = self.head(*run.last().unwrap());
                    (run, w)
                }
                RingFace::CornerAt(v) => (Vec::new(), v),
            };
            let s = run.len();
            assert!(p >= s + 2, "face cannot close around the run");
            let t = p - s - 2;
            let mut walk = vec![entry_half];
            walk.extend(run);
            let (exit_edge, x) = if last {
                debug_assert_eq!(w, u0, "the last ring face sits at the seam vertex");
                (e_star, s_star)
            } else if t == 0 {
                (self.new_edge(w, entry_far), entry_far)
            } else {
                let x = self.new_vertex();
                (self.new_edge(w, x), x)
            };
            walk.push(2 * exit_edge);
            let mut path = Vec::with_capacity(t);
            let mut cur = x;
            for step in 0..t {
                let nxt = if step + 1 == t { entry_far } else { self.new_vertex() };
                let e = self.new_edge(cur, nxt);
                path.push(2 * e);
                cur = nxt;
            }
            if t == 0 {
                debug_assert_eq!(x, entry_far, "spokes of a closing face share their tip");
            }
            walk.extend(path.iter().copied());
            debug_assert_eq!(walk.len(), p);
            for &h in &walk {
                let at = self.tail(h) as usize;
                self.face_count[at] += 1;
            }
            for &h in path.iter().rev() {
                new_outer.push(twin(h));
            }
            entry_half = 2 * exit_edge + 1;
            entry_far = x;
            self.inner_faces.push(walk);
        }
        self.outer = new_outer;
    }

    fn build(self) -> PlanarMap {
        let halves = 2 * self.edges.len();
        let mut face_next = vec![u32::MAX; halves];
        for walk in self.inner_faces.iter().chain(std::iter::once(&self.outer)) {
            for (i, &h) in walk.iter().enumerate() {
                debug_assert_eq!(face_next[h as usize], u32::MAX, "each half in one face");
                face_next[h as usize] = walk[(i + 1) % walk.len()];
            }
        }
        let n = self.face_count.len();
        let mut halves_at = vec![Vec::new(); n];
        for h in 0..halves as u32 {
            halves_at[self.tail(h) as usize].push(h);
        }
        let mut rotation = Vec::with_capacity(n);
        for v in 0..n {
            let mut list = Vec::with_capacity(halves_at[v].len());
            let h0 = halves_at[v][0];
            let mut h = h0;
            loop {
                list.push(h);
                h = face_next[twin(h) as usize];
                if h == h0 {
                    break;
                }
            }
            assert_eq!(list.len(), halves_at[v].len(), "rotation closes over all halves");
            rotation.push(list);
        }
        let g = MultiGraph::new(n, self.edges).expect("patch endpoints in range");
        PlanarMap::new(g, rotation).expect("patch construction is genus 0")
    }
}

/// A finite patch of the {p,q} tiling: `layers` concentric rings around a
/// central p-gon. Every face except the outer one is a p-gon and every
/// vertex not on the final boundary has q faces. Requires 1/p + 1/q <= 1/2
/// (Euclidean or hyperbolic).
pub fn hyperbolic_patch(p: usize, q: usize, layers: u32) -> Result<PlanarMap, PlanarError> {
    Ok(hyperbolic_patch_with_outer(p, q, layers)?.0)
}

/// Same as [`hyperbolic_patch`], also naming the outer face: its index in
/// `faces()` order, which is the dual boundary vertex id.
pub fn hyperbolic_patch_with_outer(
    p: usize,
    q: usize,
    layers: u32,
) -> Result<(PlanarMap, u32), PlanarError> {
    if p < 3 || q < 3 || 2 * (p + q) > p * q {
        return Err(PlanarError::BadTilingSignature { p, q });
    }
    let mut b = PatchBuilder::new(p);
    b.q = q;
    for _ in 0..layers {
        b.add_layer();
    }
    let boundary_half = b.outer[0];
    let map = b.build();
    let outer_face = map
        .faces()
        .iter()
        .position(|walk| walk.contains(&boundary_half))
        .expect("outer walk is a face") as u32;
    Ok((map, outer_face))
}

#[derive(Serialize, Deserialize)]
struct MapWire {
    n: usize,
    edges: Vec<(u32, u32)>,
    rotation: Vec<Vec<u32>>,
    twin: Vec<u32>,
}

/// JSON form: vertex count, edge endpoint pairs in index order, rotation
/// lists, and the twin involution, all byte-stable for a given map.
pub fn serialize_planar_map(m: &PlanarMap) -> String {
    let wire = MapWire {
        n: m.graph().n(),
        edges: m.graph().edges().to_vec(),
        rotation: m.rotation().to_vec(),
        twin: (0..2 * m.graph().m() as u32).map(twin).collect(),
    };
    serde_json::to_string_pretty(&wire).expect("plain data serializes")
}

pub fn parse_planar_map(text: &str) -> Result<PlanarMap, PlanarError> {
    let wire: MapWire =
        serde_json::from_str(text).map_err(|e| PlanarError::Parse(e.to_string()))?;
    for (h, &t) in wire.twin.iter().enumerate() {
        if t != twin(h as u32) {
            return Err(PlanarError::Parse(format!("half {h} has twin {t}")));
        }
    }
    let g = MultiGraph::new(wire.n, wire.edges)
        .map_err(|e| PlanarError::Parse(e.to_string()))?;
    PlanarMap::new(g, wire.rotation)
}
