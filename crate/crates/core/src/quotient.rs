//! Quotient profiles of edge set functions under k-colorings.
//!
//! A k-coloring (edge partition) `P` turns a set function `phi` into a
//! point in `R^(2^k)`: coordinate `X` is `phi` of the union of the classes
//! named by `X`. The profile `Q_k(phi)` is the set of all such points over
//! every k-coloring. Profiles are compared by Hausdorff distance; sequences
//! of graphs are probed for the Cauchy property one `k` at a time.
//!
//! Sampled profiles keep the same exact rational coordinates as enumerated
//! ones, since every sampled coloring is a genuine quotient; only the
//! provenance flag and the serialized number format differ.

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeSet;
use thiserror::Error;

use crate::graph::{EdgePartition, EdgeSet, GraphError, MultiGraph};
use crate::rank::SetFunction;
use crate::ratio::{format_ratio, rat, rat_int, ratio_to_f64, Ratio};

/// Default ceiling on `k^m` for exhaustive profile enumeration.
pub const DEFAULT_ENUM_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuotientError {
    #[error("enumeration needs {required} colorings, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("profiles have different k ({a} vs {b})")]
    KMismatch { a: usize, b: usize },
    #[error("Hausdorff distance against an empty profile")]
    EmptyProfile,
    #[error("target has {got} coordinates, expected {want}")]
    TargetSizeMismatch { got: usize, want: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// One quotient: `2^k` exact coordinates indexed by class-subset bitmask.
/// Coordinate 0 is always `phi(empty) = 0` for the rank functions here, and
/// the full mask is pinned at `phi(E)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuotientPoint {
    k: usize,
    coords: Vec<Ratio>,
}

impl QuotientPoint {
    pub fn new(k: usize, coords: Vec<Ratio>) -> Self {
        assert_eq!(coords.len(), 1 << k, "a k-quotient has 2^k coordinates");
        QuotientPoint { k, coords }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn coords(&self) -> &[Ratio] {
        &self.coords
    }

    pub fn coord(&self, class_mask: usize) -> &Ratio {
        &self.coords[class_mask]
    }

    /// The point of the partition with classes relabelled by `perm`
    /// (class `i` of the result is class `perm[i]` of the original).
    pub fn permute_classes(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.k);
        let coords = (0..1usize << self.k)
            .map(|mask| {
                let mut image = 0usize;
                for i in 0..self.k {
                    if mask >> i & 1 == 1 {
                        image |= 1 << perm[i];
                    }
                }
                self.coords[image].clone()
            })
            .collect();
        QuotientPoint { k: self.k, coords }
    }
}

/// How a profile was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum Provenance {
    Exact,
    Sampled { colorings: u64 },
}

/// A deduplicated, sorted set of quotient points for one set function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientSet {
    k: usize,
    set_function: SetFunction,
    provenance: Provenance,
    points: Vec<QuotientPoint>,
}

impl QuotientSet {
    pub fn new(
        k: usize,
        set_function: SetFunction,
        provenance: Provenance,
        points: impl IntoIterator<Item = QuotientPoint>,
    ) -> Self {
        let set: BTreeSet<QuotientPoint> = points.into_iter().collect();
        for p in &set {
            assert_eq!(p.k(), k, "mixed k in one profile");
        }
        QuotientSet { k, set_function, provenance, points: set.into_iter().collect() }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn set_function(&self) -> SetFunction {
        self.set_function
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn points(&self) -> &[QuotientPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &QuotientPoint) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn is_subset_of(&self, other: &QuotientSet) -> bool {
        self.points.iter().all(|p| other.contains(p))
    }
}

/// The quotient of `phi` by one partition.
pub fn quotient(
    g: &MultiGraph,
    partition: &EdgePartition,
    phi: SetFunction,
) -> Result<QuotientPoint, QuotientError> {
    partition.check_against(g)?;
    let k = partition.k();
    assert!(k >= 1 && k <= 12, "supported class counts are 1..=12");
    let coords = (0..1u32 << k).map(|mask| phi.eval(g, &partition.union_of(mask))).collect();
    Ok(QuotientPoint::new(k, coords))
}

fn quotient_of_classes(
    g: &MultiGraph,
    class_sets: &[EdgeSet],
    phi: SetFunction,
    empty_val: &Ratio,
    full_val: &Ratio,
) -> QuotientPoint {
    let k = class_sets.len();
    let full_mask = (1usize << k) - 1;
    let coords = (0..=full_mask)
        .map(|mask| {
            if mask == 0 {
                empty_val.clone()
            } else if mask == full_mask {
                full_val.clone()
            } else {
                let mut union = EdgeSet::empty(g.m());
                for (i, set) in class_sets.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        union = union.union(set);
                    }
                }
                phi.eval(g, &union)
            }
        })
        .collect();
    QuotientPoint::new(k, coords)
}

/// Exhaustive `Q_k(phi)`: every one of the `k^m` colorings, deduplicated.
/// For `k = 2` the class-swap symmetry halves the sweep: colorings with
/// edge 0 in class 0 are enumerated and each point is added together with
/// its swap. Refuses when `k^m` exceeds the budget
/// ([`DEFAULT_ENUM_BUDGET`] when `None`).
pub fn enumerate_qk(
    g: &MultiGraph,
    k: usize,
    phi: SetFunction,
    budget: Option<u64>,
) -> Result<QuotientSet, QuotientError> {
    assert!(k >= 1 && k <= 12, "supported class counts are 1..=12");
    let budget = budget.unwrap_or(DEFAULT_ENUM_BUDGET);
    let m = g.m();
    let required = (k as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if required > budget as u128 {
        return Err(QuotientError::BudgetExceeded { required, budget });
    }
    let empty_val = phi.eval(g, &EdgeSet::empty(m));
    let full_val = phi.eval(g, &EdgeSet::full(m));
    let mut points: BTreeSet<QuotientPoint> = BTreeSet::new();

    let mut labels = vec![0u32; m];
    if k == 2 && m >= 1 {
        // edge 0 pinned to class 0; close under the swap at the end
        loop {
            let class_sets: Vec<EdgeSet> = (0..2)
                .map(|c| {
                    let mut s = EdgeSet::empty(m);
                    for (e, &l) in labels.iter().enumerate() {
                        if l == c {
                            s.insert(e);
                        }
                    }
                    s
                })
                .collect();
            let p = quotient_of_classes(g, &class_sets, phi, &empty_val, &full_val);
            points.insert(p.permute_classes(&[1, 0]));
            points.insert(p);
            // increment over edges 1..m in base 2
            let mut i = 1;
            loop {
                if i >= m {
                    return Ok(QuotientSet::new(2, phi, Provenance::Exact, points));
                }
                if labels[i] == 1 {
                    labels[i] = 0;
                    i += 1;
                } else {
                    labels[i] = 1;
                    break;
                }
            }
        }
    }

    loop {
        let class_sets: Vec<EdgeSet> = (0..k as u32)
            .map(|c| {
                let mut s = EdgeSet::empty(m);
                for (e, &l) in labels.iter().enumerate() {
                    if l == c {
                        s.insert(e);
                    }
                }
                s
            })
            .collect();
        points.insert(quotient_of_classes(g, &class_sets, phi, &empty_val, &full_val));
        let mut i = 0;
        loop {
            if i >= m {
                return Ok(QuotientSet::new(k, phi, Provenance::Exact, points));
            }
            if labels[i] as usize == k - 1 {
                labels[i] = 0;
                i += 1;
            } else {
                labels[i] += 1;
                break;
            }
        }
    }
}

/// Seeded random subset of `Q_k(phi)`: `colorings` uniform colorings,
/// deduplicated exactly. Every sampled point is a genuine quotient.
pub fn sample_qk(
    g: &MultiGraph,
    k: usize,
    phi: SetFunction,
    colorings: u64,
    seed: u64,
) -> QuotientSet {
    assert!(k >= 1 && k <= 12, "supported class counts are 1..=12");
    let m = g.m();
    let empty_val = phi.eval(g, &EdgeSet::empty(m));
    let full_val = phi.eval(g, &EdgeSet::full(m));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: BTreeSet<QuotientPoint> = BTreeSet::new();
    for _ in 0..colorings {
        let mut class_sets = vec![EdgeSet::empty(m); k];
        for e in 0..m {
            class_sets[rng.gen_range(0..k)].insert(e);
        }
        points.insert(quotient_of_classes(g, &class_sets, phi, &empty_val, &full_val));
    }
    QuotientSet::new(k, phi, Provenance::Sampled { colorings }, points)
}

/// Point-to-point norm used inside Hausdorff distances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Norm {
    Sup,
    L1,
}

impl Norm {
    pub fn distance(self, a: &QuotientPoint, b: &QuotientPoint) -> Ratio {
        assert_eq!(a.k(), b.k());
        let mut acc = Ratio::zero();
        for (x, y) in a.coords().iter().zip(b.coords()) {
            let d = if x >= y { x.clone() - y.clone() } else { y.clone() - x.clone() };
            match self {
                Norm::Sup => {
                    if d > acc {
                        acc = d;
                    }
                }
                Norm::L1 => acc += d,
            }
        }
        acc
    }
}

fn directed_hausdorff(from: &QuotientSet, to: &QuotientSet, norm: Norm) -> Ratio {
    let mut worst = Ratio::zero();
    for a in from.points() {
        let mut best: Option<Ratio> = None;
        for b in to.points() {
            let d = norm.distance(a, b);
            if best.as_ref().map_or(true, |cur| d < *cur) {
                best = Some(d);
            }
        }
        let best = best.expect("nonempty profile");
        if best > worst {
            worst = best;
        }
    }
    worst
}

/// Exact Hausdorff distance between two profiles of the same `k`.
pub fn hausdorff(a: &QuotientSet, b: &QuotientSet, norm: Norm) -> Result<Ratio, QuotientError> {
    if a.k() != b.k() {
        return Err(QuotientError::KMismatch { a: a.k(), b: b.k() });
    }
    if a.is_empty() || b.is_empty() {
        return Err(QuotientError::EmptyProfile);
    }
    let d_ab = directed_hausdorff(a, b, norm);
    let d_ba = directed_hausdorff(b, a, norm);
    Ok(d_ab.max(d_ba))
}

/// Consecutive Hausdorff distances along a sequence of profiles.
pub fn profile_cauchy_diagnostics(
    sets: &[QuotientSet],
    norm: Norm,
) -> Result<Vec<Ratio>, QuotientError> {
    sets.windows(2).map(|w| hausdorff(&w[0], &w[1], norm)).collect()
}

/// Outcome of [`nearest_quotient_search`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub partition: EdgePartition,
    pub point: QuotientPoint,
    pub distance: Ratio,
}

/// Seeded hill climbing toward `target` in sup norm: `restarts` random
/// starting colorings, single-edge recolor moves, strict improvements only.
/// Exact arithmetic throughout; the best local optimum over all restarts
/// wins, earliest restart breaking ties.
pub fn nearest_quotient_search(
    g: &MultiGraph,
    k: usize,
    phi: SetFunction,
    target: &[Ratio],
    restarts: u64,
    seed: u64,
) -> Result<SearchResult, QuotientError> {
    assert!(k >= 1 && k <= 12, "supported class counts are 1..=12");
    if target.len() != 1 << k {
        return Err(QuotientError::TargetSizeMismatch { got: target.len(), want: 1 << k });
    }
    let m = g.m();
    let target_point = QuotientPoint::new(k, target.to_vec());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let eval = |labels: &[u32]| -> (QuotientPoint, Ratio) {
        let partition = EdgePartition::new(k, labels.to_vec()).expect("labels stay in range");
        let point = quotient(g, &partition, phi).expect("partition sized to g");
        let d = Norm::Sup.distance(&point, &target_point);
        (point, d)
    };
    let mut best: Option<(Vec<u32>, QuotientPoint, Ratio)> = None;
    for _ in 0..restarts.max(1) {
        let mut labels: Vec<u32> = (0..m).map(|_| rng.gen_range(0..k) as u32).collect();
        let (mut point, mut dist) = eval(&labels);
        loop {
            let mut improved = false;
            'sweep: for e in 0..m {
                let original = labels[e];
                for c in 0..k as u32 {
                    if c == original {
                        continue;
                    }
                    labels[e] = c;
                    let (p, d) = eval(&labels);
                    if d < dist {
                        point = p;
                        dist = d;
                        improved = true;
                        continue 'sweep;
                    }
                }
                labels[e] = original;
            }
            if !improved {
                break;
            }
        }
        if best.as_ref().map_or(true, |(_, _, cur)| dist < *cur) {
            let done = dist.is_zero();
            best = Some((labels, point, dist));
            if done {
                break;
            }
        }
    }
    let (labels, point, distance) = best.expect("at least one restart");
    Ok(SearchResult {
        partition: EdgePartition::new(k, labels).expect("labels stay in range"),
        point,
        distance,
    })
}

/// Exact `Q_2(rho)` of the n-cycle in closed form. Every proper edge subset
/// of a cycle is a forest, so the point of a 2-coloring depends only on
/// `j = |P_1|`: rank `j` for `j < n`, rank `n - 1` for the full cycle. The
/// generic enumerator reproduces this for every feasible `n`; the closed
/// form extends it past the enumeration budget.
pub fn cycle_q2_rho(n: usize) -> QuotientSet {
    assert!(n >= 1);
    let rank_of = |j: usize| -> Ratio {
        if j < n {
            rat(j as i64, n as i64)
        } else {
            rat(n as i64 - 1, n as i64)
        }
    };
    let full = rat(n as i64 - 1, n as i64);
    let points = (0..=n).map(|j| {
        QuotientPoint::new(2, vec![rat_int(0), rank_of(j), rank_of(n - j), full.clone()])
    });
    QuotientSet::new(2, SetFunction::Rho, Provenance::Exact, points)
}

/// JSON rendering: exact profiles keep `"p/q"` strings, sampled profiles
/// emit decimal floats; points appear in sorted order.
pub fn serialize_quotient_set(qs: &QuotientSet) -> String {
    #[derive(Serialize)]
    #[serde(untagged)]
    enum Coord {
        Exact(String),
        Sampled(f64),
    }
    #[derive(Serialize)]
    struct Out {
        set_function: &'static str,
        k: usize,
        provenance: Provenance,
        points: Vec<Vec<Coord>>,
    }
    let exact = matches!(qs.provenance(), Provenance::Exact);
    let points = qs
        .points()
        .iter()
        .map(|p| {
            p.coords()
                .iter()
                .map(|c| {
                    if exact {
                        Coord::Exact(format_ratio(c))
                    } else {
                        Coord::Sampled(ratio_to_f64(c))
                    }
                })
                .collect()
        })
        .collect();
    let out = Out {
        set_function: qs.set_function().name(),
        k: qs.k(),
        provenance: qs.provenance(),
        points,
    };
    serde_json::to_string_pretty(&out).expect("plain data serializes")
}
