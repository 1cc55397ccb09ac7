//! Finite multigraphs with stable edge identities.
//!
//! Edges are identified by their index into the edge list and every
//! derived structure (subsets, partitions, weights, measures) is an array
//! over those indices. Contraction and other graph surgery never renumber
//! edges. Loops and parallel edges are allowed everywhere.

use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {edge} endpoint {vertex} out of range (n = {n})")]
    EndpointOutOfRange { edge: usize, vertex: u32, n: usize },
    #[error("missing vertex-count header line")]
    MissingHeader,
    #[error("bad vertex-count header {0:?}")]
    BadHeader(String),
    #[error("line {line}: expected `u v`, got {text:?}")]
    BadEdgeLine { line: usize, text: String },
    #[error("line {line}: vertex {vertex} out of range (n = {n})")]
    ParsedVertexOutOfRange { line: usize, vertex: u64, n: usize },
    #[error("boundary vertex {vertex} out of range (n = {n})")]
    BoundaryOutOfRange { vertex: u32, n: usize },
    #[error("edge set sized for {got} edges, graph has {want}")]
    EdgeSetSizeMismatch { got: usize, want: usize },
    #[error("partition assigns class {class} but k = {k}")]
    PartitionClassOutOfRange { class: u32, k: usize },
    #[error("partition covers {got} edges, graph has {want}")]
    PartitionSizeMismatch { got: usize, want: usize },
}

/// An undirected multigraph on vertices `0..n`. Loops (`u == u`) count once
/// as edges and twice in vertex degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(u32, u32)>,
}

impl MultiGraph {
    pub fn new(n: usize, edges: Vec<(u32, u32)>) -> Result<Self, GraphError> {
        for (i, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w as usize >= n {
                    return Err(GraphError::EndpointOutOfRange { edge: i, vertex: w, n });
                }
            }
        }
        Ok(MultiGraph { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn endpoints(&self, e: usize) -> (u32, u32) {
        self.edges[e]
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (u, v) = self.edges[e];
        u == v
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Degree of `v` restricted to `f` (all edges when `f` is `None`); a loop
    /// at `v` contributes 2.
    pub fn degree(&self, v: u32, f: Option<&EdgeSet>) -> usize {
        let mut d = 0;
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if let Some(set) = f {
                if !set.contains(e) {
                    continue;
                }
            }
            if a == v {
                d += 1;
            }
            if b == v {
                d += 1;
            }
        }
        d
    }

    /// Per-vertex incidence lists `(neighbor, edge)` restricted to `f`.
    /// A loop at `v` appears once as `(v, e)`.
    pub fn adjacency(&self, f: Option<&EdgeSet>) -> Vec<Vec<(u32, u32)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if let Some(set) = f {
                if !set.contains(e) {
                    continue;
                }
            }
            if u == v {
                adj[u as usize].push((v, e as u32));
            } else {
                adj[u as usize].push((v, e as u32));
                adj[v as usize].push((u, e as u32));
            }
        }
        adj
    }
}

/// A subset of a graph's edges, stored as a bitset over edge indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeSet {
    m: usize,
    words: Vec<u64>,
}

impl EdgeSet {
    pub fn empty(m: usize) -> Self {
        EdgeSet { m, words: vec![0; m.div_ceil(64)] }
    }

    pub fn full(m: usize) -> Self {
        let mut s = Self::empty(m);
        for e in 0..m {
            s.insert(e);
        }
        s
    }

    pub fn from_indices(m: usize, idx: &[usize]) -> Self {
        let mut s = Self::empty(m);
        for &e in idx {
            assert!(e < m, "edge index {e} out of range (m = {m})");
            s.insert(e);
        }
        s
    }

    /// Low `m` bits of `mask` as a set; only valid for `m <= 64`.
    pub fn from_mask(m: usize, mask: u64) -> Self {
        assert!(m <= 64);
        assert!(m == 64 || mask < (1u64 << m), "mask has bits beyond m = {m}");
        EdgeSet { m, words: vec![mask; if m == 0 { 0 } else { 1 }] }
    }

    pub fn universe_len(&self) -> usize {
        self.m
    }

    pub fn insert(&mut self, e: usize) {
        assert!(e < self.m);
        self.words[e / 64] |= 1u64 << (e % 64);
    }

    pub fn remove(&mut self, e: usize) {
        assert!(e < self.m);
        self.words[e / 64] &= !(1u64 << (e % 64));
    }

    pub fn contains(&self, e: usize) -> bool {
        e < self.m && self.words[e / 64] >> (e % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn complement(&self) -> Self {
        let mut out = self.clone();
        for w in &mut out.words {
            *w = !*w;
        }
        out.clear_tail();
        out
    }

    pub fn union(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect();
        EdgeSet { m: self.m, words }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        EdgeSet { m: self.m, words }
    }

    pub fn difference(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect();
        EdgeSet { m: self.m, words }
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        assert_eq!(self.m, other.m);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn to_indices(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn clear_tail(&mut self) {
        let tail = self.m % 64;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }
}

/// A partition of a graph's edges into `k` labelled classes; classes may be
/// empty. Class labels live in `0..k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgePartition {
    k: usize,
    class_of: Vec<u32>,
}

impl EdgePartition {
    pub fn new(k: usize, class_of: Vec<u32>) -> Result<Self, GraphError> {
        for &c in &class_of {
            if c as usize >= k {
                return Err(GraphError::PartitionClassOutOfRange { class: c, k });
            }
        }
        Ok(EdgePartition { k, class_of })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn class_of(&self, e: usize) -> u32 {
        self.class_of[e]
    }

    pub fn labels(&self) -> &[u32] {
        &self.class_of
    }

    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    /// Edge set of one class.
    pub fn class_set(&self, c: u32) -> EdgeSet {
        let mut s = EdgeSet::empty(self.class_of.len());
        for (e, &ce) in self.class_of.iter().enumerate() {
            if ce == c {
                s.insert(e);
            }
        }
        s
    }

    /// Union of the classes named by `subset` (a bitmask over `0..k`).
    pub fn union_of(&self, subset: u32) -> EdgeSet {
        let mut s = EdgeSet::empty(self.class_of.len());
        for (e, &ce) in self.class_of.iter().enumerate() {
            if subset >> ce & 1 == 1 {
                s.insert(e);
            }
        }
        s
    }

    pub fn check_against(&self, g: &MultiGraph) -> Result<(), GraphError> {
        if self.class_of.len() != g.m() {
            return Err(GraphError::PartitionSizeMismatch { got: self.class_of.len(), want: g.m() });
        }
        Ok(())
    }
}

/// A vertex subset earmarked for wired contraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundarySpec {
    verts: Vec<u32>,
}

impl BoundarySpec {
    pub fn new(mut verts: Vec<u32>) -> Self {
        verts.sort_unstable();
        verts.dedup();
        BoundarySpec { verts }
    }

    pub fn vertices(&self) -> &[u32] {
        &self.verts
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn check_against(&self, g: &MultiGraph) -> Result<(), GraphError> {
        for &v in &self.verts {
            if v as usize >= g.n() {
                return Err(GraphError::BoundaryOutOfRange { vertex: v, n: g.n() });
            }
        }
        Ok(())
    }
}

/// Union-find with path compression and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
    comps: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect(), size: vec![1; n], comps: n }
    }

    /// Resets to `n` singletons, reusing buffers.
    pub fn reset(&mut self, n: usize) {
        self.parent.clear();
        self.parent.extend(0..n as u32);
        self.size.clear();
        self.size.resize(n, 1);
        self.comps = n;
    }

    pub fn find(&mut self, x: u32) -> u32 {
        let mut root = x;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = x;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    /// Merges the classes of `a` and `b`; returns false if already joined.
    pub fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra as usize] >= self.size[rb as usize] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small as usize] = big;
        self.size[big as usize] += self.size[small as usize];
        self.comps -= 1;
        true
    }

    pub fn component_count(&self) -> usize {
        self.comps
    }

    pub fn component_size(&mut self, x: u32) -> usize {
        let r = self.find(x);
        self.size[r as usize] as usize
    }
}

/// Connected components of `(V, F)`: isolated vertices count as components.
/// Component ids are assigned in order of the smallest vertex they contain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    id: Vec<u32>,
    sizes: Vec<u32>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    pub fn id_of(&self, v: u32) -> u32 {
        self.id[v as usize]
    }

    pub fn ids(&self) -> &[u32] {
        &self.id
    }

    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    pub fn size_of_component_of(&self, v: u32) -> usize {
        self.sizes[self.id[v as usize] as usize] as usize
    }

    pub fn vertex_lists(&self) -> Vec<Vec<u32>> {
        let mut lists = vec![Vec::new(); self.sizes.len()];
        for (v, &c) in self.id.iter().enumerate() {
            lists[c as usize].push(v as u32);
        }
        lists
    }
}

/// Components of the spanning subgraph `(V(g), f)`.
pub fn components(g: &MultiGraph, f: &EdgeSet) -> Components {
    let mut uf = UnionFind::new(g.n());
    for e in f.iter() {
        let (u, v) = g.endpoints(e);
        uf.union(u, v);
    }
    components_from_uf(g.n(), &mut uf)
}

pub(crate) fn components_from_uf(n: usize, uf: &mut UnionFind) -> Components {
    let mut id = vec![u32::MAX; n];
    let mut sizes = Vec::new();
    for v in 0..n as u32 {
        let r = uf.find(v) as usize;
        if id[r] == u32::MAX {
            id[r] = sizes.len() as u32;
            sizes.push(0);
        }
        id[v as usize] = id[r];
        sizes[id[r] as usize] += 1;
    }
    Components { id, sizes }
}

/// Number of components of `(V(g), f)`, without materializing labels.
pub fn component_count(g: &MultiGraph, f: &EdgeSet) -> usize {
    let mut uf = UnionFind::new(g.n());
    for e in f.iter() {
        let (u, v) = g.endpoints(e);
        uf.union(u, v);
    }
    uf.component_count()
}

/// Merges all boundary vertices into a single vertex. Edge identities and
/// order are preserved; edges inside the boundary become loops. Returns the
/// contracted graph and the old-to-new vertex map. Empty or singleton
/// boundaries leave the graph unchanged (up to the identity map).
pub fn contract(g: &MultiGraph, b: &BoundarySpec) -> Result<(MultiGraph, Vec<u32>), GraphError> {
    b.check_against(g)?;
    let n = g.n();
    let mut in_b = vec![false; n];
    for &v in b.vertices() {
        in_b[v as usize] = true;
    }
    let rep = b.vertices().first().copied();
    let mut map = vec![0u32; n];
    let mut next = 0u32;
    let mut rep_new = 0u32;
    for v in 0..n {
        if in_b[v] {
            if Some(v as u32) == rep {
                rep_new = next;
                map[v] = next;
                next += 1;
            }
            // other boundary vertices resolved after rep_new is known
        } else {
            map[v] = next;
            next += 1;
        }
    }
    for v in 0..n {
        if in_b[v] && Some(v as u32) != rep {
            map[v] = rep_new;
        }
    }
    let edges = g.edges().iter().map(|&(u, v)| (map[u as usize], map[v as usize])).collect();
    let contracted = MultiGraph::new(next as usize, edges).expect("mapped endpoints in range");
    Ok((contracted, map))
}

/// Parses the plain edge-list format: first line is the vertex count, each
/// following non-empty line is `u v` (a loop is `u u`).
pub fn parse_edge_list(text: &str) -> Result<MultiGraph, GraphError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or(GraphError::MissingHeader)?;
    let n: usize = header
        .trim()
        .parse()
        .map_err(|_| GraphError::BadHeader(header.trim().to_string()))?;
    let mut edges = Vec::new();
    for (idx, line) in lines {
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let mut it = t.split_whitespace();
        let (a, b, rest) = (it.next(), it.next(), it.next());
        let (a, b) = match (a, b, rest) {
            (Some(a), Some(b), None) => (a, b),
            _ => return Err(GraphError::BadEdgeLine { line: idx + 1, text: t.to_string() }),
        };
        let parse_vertex = |s: &str| -> Result<u32, GraphError> {
            let v: u64 = s
                .parse()
                .map_err(|_| GraphError::BadEdgeLine { line: idx + 1, text: t.to_string() })?;
            if v >= n as u64 {
                return Err(GraphError::ParsedVertexOutOfRange { line: idx + 1, vertex: v, n });
            }
            Ok(v as u32)
        };
        edges.push((parse_vertex(a)?, parse_vertex(b)?));
    }
    Ok(MultiGraph { n, edges })
}

/// Inverse of [`parse_edge_list`]; LF line endings, one edge per line.
pub fn serialize_edge_list(g: &MultiGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", g.n());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// `n`-cycle on vertices `0..n`, edge `e` joining `e` and `e+1 mod n`.
/// `cycle(1)` is a loop, `cycle(2)` a doubled edge.
pub fn cycle_graph(n: usize) -> MultiGraph {
    assert!(n >= 1);
    let edges = (0..n).map(|i| (i as u32, ((i + 1) % n) as u32)).collect();
    MultiGraph::new(n, edges).unwrap()
}

/// Path on `n` vertices (`n - 1` edges).
pub fn path_graph(n: usize) -> MultiGraph {
    assert!(n >= 1);
    let edges = (0..n.saturating_sub(1)).map(|i| (i as u32, i as u32 + 1)).collect();
    MultiGraph::new(n, edges).unwrap()
}

/// Complete graph on `n` vertices.
pub fn complete_graph(n: usize) -> MultiGraph {
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            edges.push((u, v));
        }
    }
    MultiGraph::new(n, edges).unwrap()
}

/// Disjoint union of two copies of `g`: vertices and edges of the second
/// copy are shifted by `n` and `m` respectively, so edge `e` of the first
/// copy and edge `e + m` of the second copy are twins.
pub fn doubled_graph(g: &MultiGraph) -> MultiGraph {
    let n = g.n();
    let mut edges = g.edges().to_vec();
    edges.extend(g.edges().iter().map(|&(u, v)| (u + n as u32, v + n as u32)));
    MultiGraph::new(2 * n, edges).unwrap()
}
