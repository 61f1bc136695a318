//! Supervised optimum-path forest classifier.
//!
//! Training samples form a complete graph. The endpoints of minimum spanning
//! tree arcs that join different classes become prototypes, and a min-max
//! path competition from those prototypes assigns every sample a cost (the
//! largest arc on its best path) and the label of the prototype that conquered
//! it. Prediction runs the same competition for one new node.

use ndarray::{Array2, ArrayView1, ArrayView2};
use serde::{Deserialize, Serialize};

use crate::data::{Dataset, Label};
use crate::neighbors::euclidean;
use crate::{Error, Result};

const MODEL_FORMAT: &str = "o2pf-opf-model";
const MODEL_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainedOpf {
    train_features: Array2<f64>,
    train_labels: Vec<Label>,
    cost: Vec<f64>,
    assigned_label: Vec<Label>,
    pred: Vec<Option<usize>>,
    /// Training nodes sorted by nondecreasing cost.
    order: Vec<usize>,
    prototypes: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct ModelEnvelope {
    format: String,
    version: u32,
    model: TrainedOpf,
}

impl TrainedOpf {
    pub fn fit(train: &Dataset) -> Result<TrainedOpf> {
        fit_arrays(train.features(), train.labels())
    }

    pub fn n_train(&self) -> usize {
        self.train_labels.len()
    }

    pub fn n_features(&self) -> usize {
        self.train_features.ncols()
    }

    pub fn cost(&self) -> &[f64] {
        &self.cost
    }

    pub fn assigned_labels(&self) -> &[Label] {
        &self.assigned_label
    }

    pub fn train_labels(&self) -> &[Label] {
        &self.train_labels
    }

    pub fn pred(&self) -> &[Option<usize>] {
        &self.pred
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn prototypes(&self) -> &[usize] {
        &self.prototypes
    }

    pub fn train_features(&self) -> ArrayView2<'_, f64> {
        self.train_features.view()
    }

    /// Label of the training node offering the cheapest path
    /// `max(cost(i), d(i, x))`. Equal offers go to the lowest node index.
    pub fn predict(&self, x: ArrayView1<'_, f64>) -> Result<Label> {
        self.check_dim(x.len())?;
        Ok(self.assigned_label[self.conqueror(x)])
    }

    /// Index of the training node that conquers `x`. Scans nodes in cost
    /// order and stops once no remaining node can match the running best.
    pub fn conqueror(&self, x: ArrayView1<'_, f64>) -> usize {
        let first = self.order[0];
        let mut best = first;
        let mut best_cost = self.cost[first].max(euclidean(self.train_features.row(first), x));
        for &i in &self.order[1..] {
            if self.cost[i] > best_cost {
                break;
            }
            let offer = self.cost[i].max(euclidean(self.train_features.row(i), x));
            if offer < best_cost || (offer == best_cost && i < best) {
                best_cost = offer;
                best = i;
            }
        }
        best
    }

    pub fn predict_batch(&self, x: ArrayView2<'_, f64>) -> Result<Vec<Label>> {
        self.check_dim(x.ncols())?;
        Ok(x.rows().into_iter().map(|r| self.assigned_label[self.conqueror(r)]).collect())
    }

    fn check_dim(&self, got: usize) -> Result<()> {
        if got != self.n_features() {
            return Err(Error::DimensionMismatch { expected: self.n_features(), got });
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        let env = ModelEnvelope { format: MODEL_FORMAT.into(), version: MODEL_VERSION, model: self.clone() };
        serde_json::to_string(&env).map_err(|e| Error::Model(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<TrainedOpf> {
        let env: ModelEnvelope = serde_json::from_str(text).map_err(|e| Error::Model(e.to_string()))?;
        if env.format != MODEL_FORMAT || env.version != MODEL_VERSION {
            return Err(Error::Model(format!("unsupported model {} v{}", env.format, env.version)));
        }
        Ok(env.model)
    }
}

pub fn fit(train: &Dataset) -> Result<TrainedOpf> {
    TrainedOpf::fit(train)
}

pub fn predict(model: &TrainedOpf, x: ArrayView1<'_, f64>) -> Result<Label> {
    model.predict(x)
}

fn pairwise_distances(x: ArrayView2<'_, f64>) -> Vec<f64> {
    let n = x.nrows();
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let v = euclidean(x.row(i), x.row(j));
            d[i * n + j] = v;
            d[j * n + i] = v;
        }
    }
    d
}

/// Arcs `(parent, child)` of a minimum spanning tree of the complete graph,
/// grown from node 0 by Prim's algorithm. Ties go to the lower index.
fn prim_mst(n: usize, dist: &[f64]) -> Vec<(usize, usize)> {
    let mut in_tree = vec![false; n];
    let mut best = vec![f64::INFINITY; n];
    let mut parent = vec![usize::MAX; n];
    let mut arcs = Vec::with_capacity(n.saturating_sub(1));
    best[0] = 0.0;
    for _ in 0..n {
        let mut u = usize::MAX;
        for v in 0..n {
            if !in_tree[v] && (u == usize::MAX || best[v] < best[u]) {
                u = v;
            }
        }
        in_tree[u] = true;
        if parent[u] != usize::MAX {
            arcs.push((parent[u], u));
        }
        for v in 0..n {
            if !in_tree[v] && dist[u * n + v] < best[v] {
                best[v] = dist[u * n + v];
                parent[v] = u;
            }
        }
    }
    arcs
}

pub fn fit_arrays(x: ArrayView2<'_, f64>, y: &[Label]) -> Result<TrainedOpf> {
    let n = x.nrows();
    if y.len() != n {
        return Err(Error::LengthMismatch(n, y.len()));
    }
    if !(y.contains(&0) && y.contains(&1)) {
        return Err(Error::SingleClass);
    }
    let dist = pairwise_distances(x);

    let mut is_proto = vec![false; n];
    for (u, v) in prim_mst(n, &dist) {
        if y[u] != y[v] {
            is_proto[u] = true;
            is_proto[v] = true;
        }
    }
    let prototypes: Vec<usize> = (0..n).filter(|&i| is_proto[i]).collect();

    let mut cost: Vec<f64> = is_proto.iter().map(|&p| if p { 0.0 } else { f64::INFINITY }).collect();
    let mut assigned_label = y.to_vec();
    let mut pred = vec![None; n];
    let mut done = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut s = usize::MAX;
        for v in 0..n {
            if !done[v] && (s == usize::MAX || cost[v] < cost[s]) {
                s = v;
            }
        }
        done[s] = true;
        order.push(s);
        for t in 0..n {
            if done[t] {
                continue;
            }
            let offer = cost[s].max(dist[s * n + t]);
            if offer < cost[t] {
                cost[t] = offer;
                pred[t] = Some(s);
                assigned_label[t] = assigned_label[s];
            }
        }
    }

    Ok(TrainedOpf {
        train_features: x.to_owned(),
        train_labels: y.to_vec(),
        cost,
        assigned_label,
        pred,
        order,
        prototypes,
    })
}
