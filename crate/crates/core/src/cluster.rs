//! Unsupervised optimum-path forest clustering.
//!
//! Samples become nodes of a symmetrized k-nearest-neighbor graph, each node
//! gets a Gaussian density score, and an image-foresting-transform competition
//! grows one tree from every density maximum. The number of clusters falls
//! out of the competition; the only knob is the upper bound on `k`, which is
//! chosen by minimizing a normalized graph cut.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use ndarray::ArrayView2;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::neighbors::euclidean;
use crate::{Error, Result};

/// Exponent used by the density kernel.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DensityKernel {
    /// `exp(-d / (2 sigma^2))`
    #[default]
    Linear,
    /// `exp(-d^2 / (2 sigma^2))`, the classical Gaussian.
    Squared,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ClusterOptions {
    pub kernel: DensityKernel,
}

/// Symmetrized k-NN graph with Euclidean arc lengths.
#[derive(Debug, Clone, PartialEq)]
pub struct KnnGraph {
    k: usize,
    adjacency: Vec<Vec<usize>>,
    arc_dist: Vec<Vec<f64>>,
    d_max: f64,
}

impl KnnGraph {
    /// Nominal neighborhood size.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n_nodes(&self) -> usize {
        self.adjacency.len()
    }

    pub fn adjacency(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn arc_distances(&self, i: usize) -> &[f64] {
        &self.arc_dist[i]
    }

    /// `(neighbor, distance)` pairs of node `i`.
    pub fn arcs(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.adjacency[i].iter().copied().zip(self.arc_dist[i].iter().copied())
    }

    pub fn d_max(&self) -> f64 {
        self.d_max
    }
}

/// Every node's neighbors sorted by distance (ties by index), truncated to
/// `max_k`. Graphs for any `k <= max_k` are cut from it without recomputing
/// distances.
#[derive(Debug, Clone)]
pub struct NeighborTable {
    sorted: Vec<Vec<(usize, f64)>>,
    max_k: usize,
}

impl NeighborTable {
    pub fn new(x: ArrayView2<'_, f64>, max_k: usize) -> Result<NeighborTable> {
        let n = x.nrows();
        if max_k == 0 || max_k >= n {
            return Err(Error::InvalidNeighborhood { k: max_k, n });
        }
        let sorted = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut row: Vec<(usize, f64)> =
                    (0..n).filter(|&j| j != i).map(|j| (j, euclidean(x.row(i), x.row(j)))).collect();
                row.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
                row.truncate(max_k);
                row
            })
            .collect();
        Ok(NeighborTable { sorted, max_k })
    }

    pub fn graph(&self, k: usize) -> Result<KnnGraph> {
        let n = self.sorted.len();
        if k == 0 || k > self.max_k {
            return Err(Error::InvalidNeighborhood { k, n });
        }
        let mut adjacency: Vec<Vec<usize>> = self.sorted.iter().map(|r| r[..k].iter().map(|a| a.0).collect()).collect();
        let mut arc_dist: Vec<Vec<f64>> = self.sorted.iter().map(|r| r[..k].iter().map(|a| a.1).collect()).collect();
        // Reverse arcs, appended in increasing source order.
        for i in 0..n {
            for &(j, d) in &self.sorted[i][..k] {
                if !self.sorted[j][..k].iter().any(|a| a.0 == i) {
                    adjacency[j].push(i);
                    arc_dist[j].push(d);
                }
            }
        }
        let d_max = arc_dist.iter().flatten().copied().fold(0.0, f64::max);
        Ok(KnnGraph { k, adjacency, arc_dist, d_max })
    }
}

/// Builds the symmetrized k-NN graph of the rows of `x`.
pub fn build_knn_graph(x: ArrayView2<'_, f64>, k: usize) -> Result<KnnGraph> {
    NeighborTable::new(x, k)?.graph(k)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMap {
    pub rho: Vec<f64>,
    pub sigma: f64,
    /// Smallest nonzero density gap between adjacent nodes.
    pub delta: f64,
}

pub fn compute_density(g: &KnnGraph) -> DensityMap {
    compute_density_with(g, DensityKernel::default())
}

/// Density of node `i`: `1 / (k sqrt(2 pi sigma^2)) * sum_j exp(-d(i,j)^p / (2 sigma^2))`
/// over the symmetrized neighborhood, with `sigma = d_max / 3` and `k` the
/// nominal neighborhood size.
pub fn compute_density_with(g: &KnnGraph, kernel: DensityKernel) -> DensityMap {
    let n = g.n_nodes();
    if g.d_max <= 0.0 {
        // all points coincide: uniform density, one plateau
        let rho = vec![1.0; n];
        return DensityMap { rho, sigma: f64::EPSILON, delta: 1e-6 };
    }
    let sigma = g.d_max / 3.0;
    let two_var = 2.0 * sigma * sigma;
    let norm = 1.0 / (g.k as f64 * (std::f64::consts::TAU * sigma * sigma).sqrt());
    let rho: Vec<f64> = (0..n)
        .map(|i| {
            let s: f64 = g
                .arc_distances(i)
                .iter()
                .map(|&d| {
                    let e = match kernel {
                        DensityKernel::Linear => d,
                        DensityKernel::Squared => d * d,
                    };
                    (-e / two_var).exp()
                })
                .sum();
            norm * s
        })
        .collect();

    let mut delta = f64::INFINITY;
    for i in 0..n {
        for &j in g.adjacency(i) {
            if rho[i] <= rho[j] {
                continue;
            }
            // never above the exact gap
            let Level { hi, lo } = Level::difference(rho[i], rho[j]);
            let gap = if lo < 0.0 { hi.next_down() } else { hi };
            if gap > 0.0 && gap < delta {
                delta = gap;
            }
        }
    }
    if !delta.is_finite() {
        let top = rho.iter().copied().fold(0.0, f64::max);
        delta = (top * 1e-6).max(f64::MIN_POSITIVE);
    }
    DensityMap { rho, sigma, delta }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterForest {
    pub cost: Vec<f64>,
    pub pred: Vec<Option<usize>>,
    pub cluster_id: Vec<usize>,
    /// Prototypes in the order they were elected; root `roots[c]` seeds cluster `c`.
    pub roots: Vec<usize>,
    pub num_clusters: usize,
}

impl ClusterForest {
    /// Follows predecessors up to the root of `i`.
    pub fn root_of(&self, mut i: usize) -> usize {
        let mut steps = 0;
        while let Some(p) = self.pred[i] {
            i = p;
            steps += 1;
            assert!(steps <= self.pred.len(), "cycle in predecessor map");
        }
        i
    }

    /// Node indices of every cluster, in cluster order.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_clusters];
        for (i, &c) in self.cluster_id.iter().enumerate() {
            out[c].push(i);
        }
        out
    }
}

/// `hi + lo` held unevaluated, with `|lo|` at most half an ulp of `hi`.
/// Comparing pairs lexicographically compares the exact sums.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Level {
    hi: f64,
    lo: f64,
}

impl Level {
    fn exact(v: f64) -> Level {
        Level { hi: v, lo: 0.0 }
    }

    /// `a - b` without rounding (two-sum).
    fn difference(a: f64, b: f64) -> Level {
        let hi = a - b;
        let bb = hi - a;
        let lo = (a - (hi - bb)) + (-b - bb);
        Level { hi, lo }
    }

    fn cmp(&self, other: &Level) -> Ordering {
        let by = |x: f64, y: f64| x.partial_cmp(&y).unwrap_or(Ordering::Equal);
        by(self.hi, other.hi).then_with(|| by(self.lo, other.lo))
    }
}

#[derive(Debug, PartialEq)]
struct QueueEntry {
    cost: Level,
    seq: u64,
    node: usize,
}

impl Eq for QueueEntry {}

impl Ord for QueueEntry {
    // max-heap on cost, FIFO among equal costs
    fn cmp(&self, other: &Self) -> Ordering {
        self.cost.cmp(&other.cost).then_with(|| other.seq.cmp(&self.seq))
    }
}

impl PartialOrd for QueueEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Maximizes the min-density path value of every node. Nodes start at
/// `rho - delta`; a node leaving the queue unconquered becomes a prototype
/// with cost `rho` and opens a new cluster.
pub fn cluster_ift(g: &KnnGraph, dm: &DensityMap) -> ClusterForest {
    let n = g.n_nodes();
    let rho = &dm.rho;
    // Start levels are kept exact: a rounded rho - delta can collapse onto rho
    // or onto a lower neighbor's density.
    let mut cost: Vec<Level> = rho.iter().map(|&r| Level::difference(r, dm.delta)).collect();
    let mut pred = vec![None; n];
    let mut cluster_id = vec![usize::MAX; n];
    let mut done = vec![false; n];
    let mut roots = Vec::new();

    let mut seq = 0u64;
    let mut heap = BinaryHeap::with_capacity(n);
    for (node, &c) in cost.iter().enumerate() {
        heap.push(QueueEntry { cost: c, seq, node });
        seq += 1;
    }

    while let Some(QueueEntry { cost: c, node: i, .. }) = heap.pop() {
        if done[i] || c != cost[i] {
            continue;
        }
        done[i] = true;
        if pred[i].is_none() {
            cost[i] = Level::exact(rho[i]);
            cluster_id[i] = roots.len();
            roots.push(i);
        }
        for &j in g.adjacency(i) {
            if done[j] {
                continue;
            }
            let offer = Level::exact(cost[i].hi.min(rho[j]));
            if offer.cmp(&cost[j]) == Ordering::Greater {
                cost[j] = offer;
                pred[j] = Some(i);
                cluster_id[j] = cluster_id[i];
                heap.push(QueueEntry { cost: offer, seq, node: j });
                seq += 1;
            }
        }
    }

    let num_clusters = roots.len();
    let cost = cost.into_iter().map(|c| c.hi).collect();
    ClusterForest { cost, pred, cluster_id, roots, num_clusters }
}

/// Arc affinity used by the cut: heavier for closer nodes.
fn affinity(d: f64) -> f64 {
    1.0 / (1.0 + d)
}

/// `sum_c W'_c / (W_c + W'_c)` where `W_c` sums affinities of arcs inside
/// cluster `c` and `W'_c` those of arcs leaving it. Zero for a single cluster.
pub fn normalized_cut(g: &KnnGraph, f: &ClusterForest) -> f64 {
    let mut internal = vec![0.0; f.num_clusters];
    let mut external = vec![0.0; f.num_clusters];
    for i in 0..g.n_nodes() {
        let ci = f.cluster_id[i];
        for (j, d) in g.arcs(i) {
            if f.cluster_id[j] == ci {
                internal[ci] += affinity(d);
            } else {
                external[ci] += affinity(d);
            }
        }
    }
    internal
        .iter()
        .zip(&external)
        .map(|(w, e)| if w + e > 0.0 { e / (w + e) } else { 0.0 })
        .sum()
}

/// Clustering outcome for one neighborhood size.
#[derive(Debug, Clone, PartialEq)]
pub struct KResult {
    pub k: usize,
    pub cut: f64,
    pub forest: ClusterForest,
}

/// Clusterings for every `k` in `1..=k_max`, so that best-`k` queries for
/// several upper bounds share the work.
#[derive(Debug, Clone)]
pub struct KSweep {
    results: Vec<KResult>,
}

impl KSweep {
    pub fn new(x: ArrayView2<'_, f64>, k_max: usize, opts: &ClusterOptions) -> Result<KSweep> {
        let table = NeighborTable::new(x, k_max)?;
        let results = (1..=k_max)
            .into_par_iter()
            .map(|k| {
                let g = table.graph(k)?;
                let dm = compute_density_with(&g, opts.kernel);
                let forest = cluster_ift(&g, &dm);
                let cut = normalized_cut(&g, &forest);
                Ok(KResult { k, cut, forest })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(KSweep { results })
    }

    pub fn k_max(&self) -> usize {
        self.results.len()
    }

    pub fn results(&self) -> &[KResult] {
        &self.results
    }

    /// Minimum-cut clustering among `k <= k_max`; ties go to the smaller `k`.
    pub fn best_up_to(&self, k_max: usize) -> Result<&KResult> {
        if k_max == 0 || k_max > self.results.len() {
            return Err(Error::InvalidNeighborhood { k: k_max, n: self.results.len() + 1 });
        }
        let mut best = &self.results[0];
        for r in &self.results[1..k_max] {
            if r.cut < best.cut {
                best = r;
            }
        }
        Ok(best)
    }
}

/// Searches `k` in `1..=k_max` for the clustering with minimum normalized cut.
pub fn find_best_k(x: ArrayView2<'_, f64>, k_max: usize) -> Result<KResult> {
    find_best_k_with(x, k_max, &ClusterOptions::default())
}

pub fn find_best_k_with(x: ArrayView2<'_, f64>, k_max: usize, opts: &ClusterOptions) -> Result<KResult> {
    let sweep = KSweep::new(x, k_max, opts)?;
    Ok(sweep.best_up_to(k_max)?.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use ndarray::{array, Array2};

    fn cluster(x: &Array2<f64>, k: usize) -> (KnnGraph, DensityMap, ClusterForest) {
        let g = build_knn_graph(x.view(), k).unwrap();
        let dm = compute_density(&g);
        let f = cluster_ift(&g, &dm);
        (g, dm, f)
    }

    #[test]
    fn collinear_middle_gets_two_neighbors() {
        let x = array![[0.0], [1.0], [2.0]];
        let g = build_knn_graph(x.view(), 1).unwrap();
        // 0 -> 1, 1 -> 0 (tie broken by index), 2 -> 1; reverse arc 1 -> 2 added
        assert_eq!(g.adjacency(1), &[0, 2]);
        assert_eq!(g.adjacency(0), &[1]);
        assert_eq!(g.adjacency(2), &[1]);
    }

    #[test]
    fn complete_graph_when_k_is_n_minus_one() {
        let x = array![[0.0, 0.0], [3.0, 0.0], [0.0, 4.0], [1.0, 1.0]];
        let g = build_knn_graph(x.view(), 3).unwrap();
        for i in 0..4 {
            assert_eq!(g.adjacency(i).len(), 3);
        }
        assert_abs_diff_eq!(g.d_max(), 5.0);
    }

    #[test]
    fn k_out_of_range() {
        let x = array![[0.0], [1.0]];
        assert!(matches!(build_knn_graph(x.view(), 2), Err(Error::InvalidNeighborhood { .. })));
        assert!(build_knn_graph(x.view(), 0).is_err());
    }

    #[test]
    fn symmetric_pair_has_equal_density() {
        let x = array![[0.0, 0.0], [0.3, 0.4]];
        let (_, dm, f) = cluster(&x, 1);
        assert_eq!(dm.rho[0], dm.rho[1]);
        assert_eq!(f.num_clusters, 1);
    }

    #[test]
    fn tighter_neighborhood_is_denser() {
        // node 1 sits between close neighbors, node 3 is the far end
        let x = array![[0.0], [0.1], [0.2], [3.0]];
        let g = build_knn_graph(x.view(), 2).unwrap();
        let dm = compute_density(&g);
        assert!(dm.rho[1] > dm.rho[3]);
    }

    #[test]
    fn density_matches_scalar_evaluation() {
        let x = array![[0.0, 0.0], [1.0, 0.0], [0.0, 2.0], [4.0, 4.0], [5.0, 5.0], [4.5, 3.0]];
        let k = 2;
        let g = build_knn_graph(x.view(), k).unwrap();
        let dm = compute_density(&g);
        // independent evaluation over every pair that is adjacent in either direction
        let d = |a: usize, b: usize| ((x[[a, 0]] - x[[b, 0]]).powi(2) + (x[[a, 1]] - x[[b, 1]]).powi(2)).sqrt();
        let mut nn: Vec<Vec<usize>> = Vec::new();
        for i in 0..6 {
            let mut others: Vec<usize> = (0..6).filter(|&j| j != i).collect();
            others.sort_by(|&a, &b| d(i, a).total_cmp(&d(i, b)).then(a.cmp(&b)));
            nn.push(others[..k].to_vec());
        }
        let adjacent = |i: usize, j: usize| nn[i].contains(&j) || nn[j].contains(&i);
        let mut d_max: f64 = 0.0;
        for i in 0..6 {
            for j in 0..6 {
                if i != j && adjacent(i, j) {
                    d_max = d_max.max(d(i, j));
                }
            }
        }
        let sigma = d_max / 3.0;
        for i in 0..6 {
            let mut s = 0.0;
            for j in 0..6 {
                if i != j && adjacent(i, j) {
                    s += (-d(i, j) / (2.0 * sigma * sigma)).exp();
                }
            }
            let expected = s / (k as f64 * (2.0 * std::f64::consts::PI * sigma * sigma).sqrt());
            assert_abs_diff_eq!(dm.rho[i], expected, epsilon = 1e-12);
        }
    }

    #[test]
    fn squared_kernel_differs() {
        let x = array![[0.0], [0.5], [2.0], [2.2]];
        let g = build_knn_graph(x.view(), 1).unwrap();
        let a = compute_density_with(&g, DensityKernel::Linear);
        let b = compute_density_with(&g, DensityKernel::Squared);
        assert_ne!(a.rho, b.rho);
    }

    #[test]
    fn identical_points_form_one_cluster() {
        let x = Array2::from_elem((6, 2), 1.5);
        for k in 1..6 {
            let (g, dm, f) = cluster(&x, k);
            assert_eq!(g.d_max(), 0.0);
            assert!(dm.rho.iter().all(|&r| r == dm.rho[0]));
            assert_eq!(f.num_clusters, 1);
        }
    }

    #[test]
    fn maximum_one_delta_above_its_neighbor_stays_a_root() {
        // the plateau {4, 6, 8} sits one delta above node 5, where both the
        // gap and rho - delta round
        let x = array![[0.0], [0.0], [0.0], [0.0], [2.0], [1.0], [2.0], [0.0], [2.0], [0.0]];
        let (_, dm, f) = cluster(&x, 3);
        assert!(dm.delta <= dm.rho[4] - dm.rho[5]);
        assert_eq!(f.roots, vec![0, 4]);
        assert_eq!(f.cluster_id, vec![0, 0, 0, 0, 1, 0, 1, 0, 1, 0]);
    }

    #[test]
    fn tiny_delta_still_lets_plateaus_merge() {
        // delta comes from the 0/4 pair and is below half an ulp of rho[2]
        let x = array![[0.0, 1.0], [2.0, 2.0], [0.0, 2.0], [0.0, 2.0], [1.0, 1.0], [1.0, 0.0], [2.0, 1.0]];
        let (_, dm, f) = cluster(&x, 2);
        assert_eq!(dm.rho[2] - dm.delta, dm.rho[2]);
        assert_eq!(f.roots, vec![2, 4]);
        assert_eq!(f.pred[3], Some(2));
    }

    #[test]
    fn two_far_pairs_give_two_clusters() {
        let x = array![[0.0, 0.0], [0.5, 0.0], [8.0, 8.0], [8.5, 8.0]];
        let (_, dm, f) = cluster(&x, 1);
        assert_eq!(f.num_clusters, 2);
        assert_eq!(f.roots, vec![0, 2]);
        assert_eq!(f.cluster_id, vec![0, 0, 1, 1]);
        // the conquered partner inherits its root's density: min(rho_root, rho_self)
        assert_eq!(f.cost[1], dm.rho[1].min(dm.rho[0]));
    }

    #[test]
    fn forest_invariants_on_blobs() {
        let x = blobs(15, 7);
        let (_, dm, f) = cluster(&x, 4);
        for i in 0..x.nrows() {
            let r = f.root_of(i);
            assert_eq!(f.cluster_id[i], f.cluster_id[r]);
            match f.pred[i] {
                None => assert_eq!(f.cost[i], dm.rho[i]),
                Some(p) => {
                    assert_eq!(f.cost[i], f.cost[p].min(dm.rho[i]));
                    assert!(f.cost[i] <= dm.rho[r]);
                }
            }
        }
        assert_eq!(f.num_clusters, f.roots.len());
    }

    #[test]
    fn cut_of_single_cluster_is_zero() {
        let x = array![[0.0], [0.1], [0.2]];
        let (g, _, f) = cluster(&x, 2);
        assert_eq!(f.num_clusters, 1);
        assert_eq!(normalized_cut(&g, &f), 0.0);
    }

    #[test]
    fn cut_prefers_the_clique_partition() {
        // two unit triangles {0,1,2} and {3,4,5} joined by one long arc 2 -- 3
        let adjacency = vec![vec![1, 2], vec![0, 2], vec![0, 1, 3], vec![4, 5, 2], vec![3, 5], vec![3, 4]];
        let mut arc_dist: Vec<Vec<f64>> = adjacency.iter().map(|a| vec![1.0; a.len()]).collect();
        arc_dist[2][2] = 5.0;
        arc_dist[3][2] = 5.0;
        let g = KnnGraph { k: 2, adjacency, arc_dist, d_max: 5.0 };
        let forest_for = |mask: u32| {
            let ids: Vec<usize> = (0..6).map(|i| ((mask >> i) & 1) as usize).collect();
            ClusterForest {
                cost: vec![0.0; 6],
                pred: vec![None; 6],
                cluster_id: ids,
                roots: vec![0, 1],
                num_clusters: 2,
            }
        };
        let natural = normalized_cut(&g, &forest_for(0b111000));
        for mask in 1u32..63 {
            if mask == 0b111000 || mask == 0b000111 {
                continue;
            }
            let cut = normalized_cut(&g, &forest_for(mask));
            assert!(natural < cut, "mask {mask:06b}: {natural} !< {cut}");
        }
    }

    #[test]
    fn cut_is_bounded_by_cluster_count() {
        let x = blobs(10, 3);
        for k in 1..6 {
            let (g, _, f) = cluster(&x, k);
            let c = normalized_cut(&g, &f);
            assert!((0.0..=f.num_clusters as f64).contains(&c));
        }
    }

    fn blobs(per: usize, seed: u64) -> Array2<f64> {
        use rand::Rng;
        let mut rng = crate::seed::rng(seed);
        let mut x = Array2::zeros((2 * per, 2));
        for i in 0..2 * per {
            let offset = if i < per { 0.0 } else { 10.0 };
            x[[i, 0]] = offset + rng.random::<f64>();
            x[[i, 1]] = offset + rng.random::<f64>();
        }
        x
    }

    #[test]
    fn best_k_singleton_range() {
        let x = blobs(5, 1);
        let r = find_best_k(x.view(), 1).unwrap();
        assert_eq!(r.k, 1);
    }

    /// Points on a line whose gaps grow geometrically, so density falls
    /// monotonically away from the first point.
    fn thinning_line(per: usize, offset: f64) -> Vec<[f64; 2]> {
        let mut pos = 0.0;
        (0..per)
            .map(|i| {
                pos += 1.15f64.powi(i as i32);
                [offset + pos, offset]
            })
            .collect()
    }

    #[test]
    fn best_k_separates_far_blobs() {
        let a = thinning_line(20, 0.0);
        let diameter = a[19][0] - a[0][0];
        let b = thinning_line(20, 10.0 * diameter);
        let rows: Vec<f64> = a.iter().chain(&b).flatten().copied().collect();
        let x = Array2::from_shape_vec((40, 2), rows).unwrap();
        let r = find_best_k(x.view(), 10).unwrap();
        assert_eq!(r.forest.num_clusters, 2);
        assert!(r.forest.cluster_id[..20].iter().all(|&c| c == r.forest.cluster_id[0]));
        assert!(r.forest.cluster_id[20..].iter().all(|&c| c == r.forest.cluster_id[20]));
    }

    #[test]
    fn best_k_is_the_minimum_cut() {
        let x = blobs(20, 5);
        let r = find_best_k(x.view(), 10).unwrap();
        let sweep = KSweep::new(x.view(), 10, &ClusterOptions::default()).unwrap();
        for other in sweep.results() {
            assert!(r.cut <= other.cut);
            if other.cut == r.cut {
                assert!(r.k <= other.k);
            }
        }
    }

    #[test]
    fn best_k_rejects_large_bound() {
        let x = blobs(3, 1);
        assert!(find_best_k(x.view(), 6).is_err());
    }
}
