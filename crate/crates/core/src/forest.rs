//! Invasion spanning forests.
//!
//! The invasion algorithm grows a maximal spanning forest in simultaneous
//! rounds: in every round each component that does not yet span its ambient
//! component adds the largest edge leaving it, under a lexicographic weight
//! list with an explicit tie-break order. Two components may pick the same
//! edge; a strict total order on edges rules out any other collision, so no
//! round ever closes a cycle.
//!
//! The token ledger mirrors the mass-transport accounting that certifies
//! the forest's edge measure: every vertex starts with one token, every
//! choosing component pays one token onto its chosen edge, the one edge per
//! merge that was paid twice rebates a token to the merged component, and a
//! component that reaches spanning size hands its token back to its
//! vertices in equal shares. At the end each forest edge retains exactly
//! one token and a vertex in an ambient component of size `s` has paid
//! `(s - 1) / s`.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::cmp::Ordering;
use thiserror::Error;

use crate::graph::{components, contract, BoundarySpec, EdgeSet, GraphError, MultiGraph, UnionFind};
use crate::rank::rank_abs;
use crate::ratio::{format_ratio, rat, rat_int, Ratio};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ForestError {
    #[error("weight key {key} has {got} entries, graph has {want} edges")]
    KeyLengthMismatch { key: usize, got: usize, want: usize },
    #[error("tie-break is not a permutation of 0..{m}")]
    TieBreakNotPermutation { m: usize },
    #[error("seed forest is not independent")]
    SeedNotIndependent,
    #[error("layer property needs exactly one weight key, got {got}")]
    NeedsSingleKey { got: usize },
    #[error("layer {threshold}: forest keeps {kept} edges, layer rank is {rank}")]
    LayerMismatch { threshold: String, kept: usize, rank: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Lexicographic edge weights: `keys[0]` is compared first, then `keys[1]`,
/// and so on; remaining ties go to the edge earlier in `tie_break`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightList {
    keys: Vec<Vec<Ratio>>,
    tie_break: Vec<u32>,
    tie_rank: Vec<u32>,
}

impl WeightList {
    pub fn new(keys: Vec<Vec<Ratio>>, tie_break: Vec<u32>) -> Result<Self, ForestError> {
        let m = tie_break.len();
        for (k, key) in keys.iter().enumerate() {
            if key.len() != m {
                return Err(ForestError::KeyLengthMismatch { key: k, got: key.len(), want: m });
            }
        }
        let mut tie_rank = vec![u32::MAX; m];
        for (pos, &e) in tie_break.iter().enumerate() {
            if e as usize >= m || tie_rank[e as usize] != u32::MAX {
                return Err(ForestError::TieBreakNotPermutation { m });
            }
            tie_rank[e as usize] = pos as u32;
        }
        Ok(WeightList { keys, tie_break, tie_rank })
    }

    /// A single numeric key with the identity tie-break.
    pub fn single_key(key: Vec<Ratio>) -> Result<Self, ForestError> {
        let m = key.len();
        Self::new(vec![key], (0..m as u32).collect())
    }

    /// No numeric keys: the tie-break order alone ranks the edges.
    pub fn order_only(tie_break: Vec<u32>) -> Result<Self, ForestError> {
        Self::new(Vec::new(), tie_break)
    }

    /// Distinct integer weights `1..=m` in seeded random assignment.
    pub fn random_distinct(m: usize, seed: u64) -> Self {
        let mut vals: Vec<i64> = (1..=m as i64).collect();
        vals.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        Self::single_key(vals.into_iter().map(rat_int).collect()).unwrap()
    }

    pub fn key_count(&self) -> usize {
        self.keys.len()
    }

    pub fn len(&self) -> usize {
        self.tie_break.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tie_break.is_empty()
    }

    pub fn key(&self, k: usize) -> &[Ratio] {
        &self.keys[k]
    }

    /// `Greater` means edge `a` beats edge `b`.
    pub fn edge_cmp(&self, a: usize, b: usize) -> Ordering {
        for key in &self.keys {
            match key[a].cmp(&key[b]) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        // earlier in the tie-break order wins
        self.tie_rank[b].cmp(&self.tie_rank[a])
    }

    /// Order with all comparisons reversed: turns maximal forests into
    /// minimal ones.
    pub fn reversed(&self) -> Self {
        let keys = self.keys.iter().map(|key| key.iter().map(|w| -w.clone()).collect()).collect();
        let tie_break = self.tie_break.iter().rev().copied().collect();
        Self::new(keys, tie_break).expect("reversal preserves validity")
    }

    /// Sum of key `k` over an edge set.
    pub fn key_sum(&self, k: usize, f: &EdgeSet) -> Ratio {
        let mut total = Ratio::zero();
        for e in f.iter() {
            total += self.keys[k][e].clone();
        }
        total
    }
}

/// One component's choice in one round.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Choice {
    /// Smallest vertex of the choosing component.
    pub component: u32,
    pub edge: u32,
}

/// Exact token accounting of an invasion run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenLedger {
    pub vertex_paid: Vec<Ratio>,
    pub edge_received: Vec<Ratio>,
}

/// Forest, per-round trace, and ledger of one invasion run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestResult {
    pub forest: EdgeSet,
    pub rounds: Vec<Vec<Choice>>,
    pub ledger: TokenLedger,
}

struct Engine<'a> {
    g: &'a MultiGraph,
    w: &'a WeightList,
    uf: UnionFind,
    ambient_size: Vec<usize>,
    forest: EdgeSet,
    rounds: Vec<Vec<Choice>>,
    // ledger state, indexed by vertex (balances live at UF roots)
    balance: Vec<Ratio>,
    paid: Vec<Ratio>,
    received: Vec<Ratio>,
    min_vertex: Vec<u32>,
    spanning_done: Vec<bool>,
    // ledger invariants (balance == 1 before paying) hold only for runs
    // started from the empty forest
    strict_ledger: bool,
}

impl<'a> Engine<'a> {
    fn new(g: &'a MultiGraph, seed: &EdgeSet, w: &'a WeightList) -> Result<Self, ForestError> {
        let n = g.n();
        let ambient = components(g, &EdgeSet::full(g.m()));
        let ambient_size: Vec<usize> =
            (0..n as u32).map(|v| ambient.size_of_component_of(v)).collect();
        let mut uf = UnionFind::new(n);
        let mut forest = EdgeSet::empty(g.m());
        let mut balance = vec![Ratio::one(); n];
        let mut min_vertex: Vec<u32> = (0..n as u32).collect();
        for e in seed.iter() {
            let (u, v) = g.endpoints(e);
            let (ru, rv) = (uf.find(u), uf.find(v));
            if !uf.union(u, v) {
                return Err(ForestError::SeedNotIndependent);
            }
            forest.insert(e);
            let root = uf.find(u);
            let sum = balance[ru as usize].clone() + balance[rv as usize].clone();
            balance[ru as usize] = Ratio::zero();
            balance[rv as usize] = Ratio::zero();
            balance[root as usize] = sum;
            let lo = min_vertex[ru as usize].min(min_vertex[rv as usize]);
            min_vertex[root as usize] = lo;
        }
        Ok(Engine {
            g,
            w,
            uf,
            ambient_size,
            forest,
            rounds: Vec::new(),
            balance,
            paid: vec![Ratio::one(); n],
            received: vec![Ratio::zero(); g.m()],
            min_vertex,
            spanning_done: vec![false; n],
            strict_ledger: seed.is_empty(),
        })
    }

    fn is_spanning(&mut self, root: u32) -> bool {
        let size = self.uf.component_size(root);
        size == self.ambient_size[root as usize]
    }

    /// Hands freshly spanning components their token back, split equally.
    fn redistribute_spanning(&mut self) {
        for v in 0..self.g.n() as u32 {
            let root = self.uf.find(v);
            if root != v || self.spanning_done[root as usize] {
                continue;
            }
            if self.is_spanning(root) {
                let size = self.uf.component_size(root);
                if self.strict_ledger {
                    debug_assert!(self.balance[root as usize].is_one());
                }
                let share = self.balance[root as usize].clone() / rat(size as i64, 1);
                for x in 0..self.g.n() as u32 {
                    if self.uf.find(x) == root {
                        self.paid[x as usize] -= share.clone();
                    }
                }
                self.balance[root as usize] = Ratio::zero();
                self.spanning_done[root as usize] = true;
            }
        }
    }

    fn run(&mut self) {
        let n = self.g.n();
        let m = self.g.m();
        self.redistribute_spanning();
        loop {
            // best leaving edge per component root
            let mut best: Vec<Option<u32>> = vec![None; n];
            for e in 0..m {
                if self.forest.contains(e) {
                    continue;
                }
                let (u, v) = self.g.endpoints(e);
                let (ru, rv) = (self.uf.find(u), self.uf.find(v));
                if ru == rv {
                    continue;
                }
                for r in [ru, rv] {
                    let better = match best[r as usize] {
                        None => true,
                        Some(cur) => self.w.edge_cmp(e, cur as usize) == Ordering::Greater,
                    };
                    if better {
                        best[r as usize] = Some(e as u32);
                    }
                }
            }

            let mut choices: Vec<(u32, u32)> = Vec::new(); // (root, edge)
            for v in 0..n as u32 {
                if self.uf.find(v) == v {
                    if let Some(e) = best[v as usize] {
                        choices.push((v, e));
                    } else {
                        debug_assert!(
                            self.is_spanning(v),
                            "component without leaving edges must span its ambient component"
                        );
                    }
                }
            }
            if choices.is_empty() {
                break;
            }
            choices.sort_by_key(|&(root, _)| self.min_vertex[root as usize]);
            let trace: Vec<Choice> = choices
                .iter()
                .map(|&(root, edge)| Choice { component: self.min_vertex[root as usize], edge })
                .collect();
            self.rounds.push(trace);

            // payments: one token from every choosing component onto its edge
            for &(root, e) in &choices {
                if self.strict_ledger {
                    debug_assert!(
                        self.balance[root as usize].is_one(),
                        "component holds one token"
                    );
                }
                self.balance[root as usize] -= Ratio::one();
                self.received[e as usize] += Ratio::one();
            }

            // merges: apply every distinct chosen edge; a strict total order
            // means the only duplicate choice is a mutual pair, so no cycle
            // can close here
            let mut merged_edges: Vec<u32> = choices.iter().map(|&(_, e)| e).collect();
            merged_edges.sort_unstable();
            merged_edges.dedup();
            let old_roots: Vec<(u32, Ratio)> = choices
                .iter()
                .map(|&(root, _)| (root, std::mem::replace(&mut self.balance[root as usize], Ratio::zero())))
                .collect();
            for &e in &merged_edges {
                let (u, v) = self.g.endpoints(e as usize);
                let joined = self.uf.union(u, v);
                assert!(joined, "invasion round tried to close a cycle");
                self.forest.insert(e as usize);
            }
            // carry balances and minimum-vertex labels to the new roots
            for (old_root, bal) in old_roots {
                let new_root = self.uf.find(old_root);
                self.balance[new_root as usize] += bal;
                if self.min_vertex[old_root as usize] < self.min_vertex[new_root as usize] {
                    self.min_vertex[new_root as usize] = self.min_vertex[old_root as usize];
                }
            }

            // rebates: inside each merged cluster exactly one edge was paid
            // twice; it returns one token to the cluster
            let mut cluster_roots: Vec<u32> = Vec::new();
            for &e in &merged_edges {
                if self.received[e as usize] == rat_int(2) {
                    self.received[e as usize] -= Ratio::one();
                    let root = self.uf.find(self.g.endpoints(e as usize).0);
                    self.balance[root as usize] += Ratio::one();
                    cluster_roots.push(root);
                }
            }
            cluster_roots.sort_unstable();
            let distinct = cluster_roots.len();
            cluster_roots.dedup();
            assert_eq!(distinct, cluster_roots.len(), "two double-paid edges in one cluster");
            {
                let mut all_new_roots: Vec<u32> =
                    choices.iter().map(|&(r, _)| self.uf.find(r)).collect();
                all_new_roots.sort_unstable();
                all_new_roots.dedup();
                assert_eq!(
                    all_new_roots, cluster_roots,
                    "every merged cluster rebates exactly once"
                );
            }

            self.redistribute_spanning();
        }
    }
}

/// Runs the invasion algorithm on all of `g` under `w`. Loops are never
/// candidates; isolated vertices span trivially and pay nothing.
pub fn invasion(g: &MultiGraph, w: &WeightList) -> Result<ForestResult, ForestError> {
    check_weights(g, w)?;
    let mut engine = Engine::new(g, &EdgeSet::empty(g.m()), w)?;
    engine.run();
    Ok(ForestResult {
        forest: engine.forest,
        rounds: engine.rounds,
        ledger: TokenLedger { vertex_paid: engine.paid, edge_received: engine.received },
    })
}

/// Extends an independent seed forest to a maximal spanning forest by the
/// same rounds, treating the seed's components as pre-merged.
pub fn extend_forest(
    g: &MultiGraph,
    f0: &EdgeSet,
    w: &WeightList,
) -> Result<EdgeSet, ForestError> {
    check_weights(g, w)?;
    let mut engine = Engine::new(g, f0, w)?;
    engine.run();
    Ok(engine.forest)
}

fn check_weights(g: &MultiGraph, w: &WeightList) -> Result<(), ForestError> {
    if w.len() != g.m() {
        return Err(ForestError::KeyLengthMismatch { key: 0, got: w.len(), want: g.m() });
    }
    Ok(())
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LedgerViolation {
    #[error("edge {edge} received {got}, expected {want}")]
    EdgeReceipt { edge: usize, got: String, want: String },
    #[error("vertex {vertex} paid {got}, expected {want}")]
    VertexPayment { vertex: u32, got: String, want: String },
    #[error("total paid {got}, expected rank {want}")]
    TotalMismatch { got: String, want: usize },
}

/// Checks the ledger against the closed-form schedule: forest edges
/// received exactly one token, other edges none, a vertex in an ambient
/// component of size `s` paid `(s - 1) / s`, and the grand total equals the
/// matroid rank of the full edge set.
pub fn verify_token_ledger(g: &MultiGraph, result: &ForestResult) -> Result<(), LedgerViolation> {
    let ledger = &result.ledger;
    for e in 0..g.m() {
        let want = if result.forest.contains(e) { Ratio::one() } else { Ratio::zero() };
        if ledger.edge_received[e] != want {
            return Err(LedgerViolation::EdgeReceipt {
                edge: e,
                got: format_ratio(&ledger.edge_received[e]),
                want: format_ratio(&want),
            });
        }
    }
    let ambient = components(g, &EdgeSet::full(g.m()));
    let mut total = Ratio::zero();
    for v in 0..g.n() as u32 {
        let s = ambient.size_of_component_of(v) as i64;
        let want = rat(s - 1, s);
        if ledger.vertex_paid[v as usize] != want {
            return Err(LedgerViolation::VertexPayment {
                vertex: v,
                got: format_ratio(&ledger.vertex_paid[v as usize]),
                want: format_ratio(&want),
            });
        }
        total += ledger.vertex_paid[v as usize].clone();
    }
    let rank = rank_abs(g, &EdgeSet::full(g.m()));
    if total != rat_int(rank as i64) {
        return Err(LedgerViolation::TotalMismatch { got: format_ratio(&total), want: rank });
    }
    Ok(())
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LayerViolation {
    #[error("threshold {threshold}: forest keeps {kept} edges of the layer, rank is {rank}")]
    Mismatch { threshold: String, kept: usize, rank: usize },
}

/// For a single-key weight list, checks that above every threshold `t` the
/// forest restricted to `{ g1 >= t }` has full rank there:
/// `|F n A_t| = rank(A_t)`.
pub fn check_layer_property(
    g: &MultiGraph,
    w: &WeightList,
    forest: &EdgeSet,
) -> Result<(), ForestError> {
    if w.key_count() != 1 {
        return Err(ForestError::NeedsSingleKey { got: w.key_count() });
    }
    check_weights(g, w)?;
    let mut thresholds: Vec<&Ratio> = w.key(0).iter().collect();
    thresholds.sort();
    thresholds.dedup();
    for t in thresholds {
        let mut layer = EdgeSet::empty(g.m());
        for e in 0..g.m() {
            if &w.key(0)[e] >= t {
                layer.insert(e);
            }
        }
        let kept = forest.intersection(&layer).len();
        let rank = rank_abs(g, &layer);
        if kept != rank {
            return Err(ForestError::LayerMismatch { threshold: format_ratio(t), kept, rank });
        }
    }
    Ok(())
}

/// Free and wired invasion forests: the free forest lives on `g` itself,
/// the wired one on `g` with the boundary contracted to a point, pulled
/// back through the preserved edge identities.
pub fn wired_free_forests(
    g: &MultiGraph,
    b: &BoundarySpec,
    w: &WeightList,
) -> Result<(EdgeSet, EdgeSet), ForestError> {
    check_weights(g, w)?;
    let free = invasion(g, w)?.forest;
    let (contracted, _) = contract(g, b)?;
    let wired = invasion(&contracted, w)?.forest;
    Ok((wired, free))
}

/// Compact JSON rendering of a [`ForestResult`]; rationals appear as
/// `"p/q"` strings, field order is fixed.
pub fn serialize_forest_result(result: &ForestResult) -> String {
    #[derive(Serialize)]
    struct LedgerOut {
        vertex_paid: Vec<String>,
        edge_received: Vec<String>,
    }
    #[derive(Serialize)]
    struct Out<'a> {
        forest: Vec<usize>,
        rounds: &'a [Vec<Choice>],
        ledger: LedgerOut,
    }
    let out = Out {
        forest: result.forest.to_indices(),
        rounds: &result.rounds,
        ledger: LedgerOut {
            vertex_paid: result.ledger.vertex_paid.iter().map(format_ratio).collect(),
            edge_received: result.ledger.edge_received.iter().map(format_ratio).collect(),
        },
    };
    serde_json::to_string_pretty(&out).expect("plain data serializes")
}
