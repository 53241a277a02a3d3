//! Bagged Perceptron pools and the DSEL prediction cache.

use std::path::Path;

use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::par;
use crate::seed::{derive_seed, rng};

/// Training schedule of a single Perceptron.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PerceptronConfig {
    pub epochs: usize,
    pub learning_rate: f64,
}

impl Default for PerceptronConfig {
    fn default() -> Self {
        PerceptronConfig {
            epochs: 100,
            learning_rate: 0.01,
        }
    }
}

/// A linear multi-class model: one weight row (bias last) per class,
/// predicting the arg-max score with ties going to the lower class id.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearClassifier {
    n_classes: usize,
    n_dims: usize,
    weights: Vec<f64>,
}

impl LinearClassifier {
    pub fn zeros(n_classes: usize, n_dims: usize) -> Self {
        LinearClassifier {
            n_classes,
            n_dims,
            weights: vec![0.0; n_classes * (n_dims + 1)],
        }
    }

    pub fn from_weights(n_classes: usize, n_dims: usize, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != n_classes * (n_dims + 1) || n_classes == 0 {
            return Err(Error::InvalidParameter(format!(
                "{} weights do not form a {n_classes}x{} matrix",
                weights.len(),
                n_dims + 1
            )));
        }
        if weights.iter().any(|w| !w.is_finite()) {
            return Err(Error::InvalidParameter("non-finite weight".into()));
        }
        Ok(LinearClassifier {
            n_classes,
            n_dims,
            weights,
        })
    }

    pub fn num_classes(&self) -> usize {
        self.n_classes
    }

    pub fn dims(&self) -> usize {
        self.n_dims
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    fn class_row(&self, c: usize) -> &[f64] {
        let w = self.n_dims + 1;
        &self.weights[c * w..(c + 1) * w]
    }

    fn score(&self, c: usize, x: &[f64]) -> f64 {
        let row = self.class_row(c);
        row[..self.n_dims]
            .iter()
            .zip(x)
            .map(|(w, v)| w * v)
            .sum::<f64>()
            + row[self.n_dims]
    }

    /// Raw class scores.
    pub fn scores(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n_classes).map(|c| self.score(c, x)).collect()
    }

    pub fn predict(&self, x: &[f64]) -> usize {
        let mut best = 0;
        let mut best_score = self.score(0, x);
        for c in 1..self.n_classes {
            let s = self.score(c, x);
            if s > best_score {
                best = c;
                best_score = s;
            }
        }
        best
    }

    /// Class supports in `[0, 1]` summing to one (softmax of the scores).
    pub fn supports(&self, x: &[f64]) -> Vec<f64> {
        softmax(&self.scores(x))
    }

    fn update(&mut self, c: usize, x: &[f64], step: f64) {
        let w = self.n_dims + 1;
        let row = &mut self.weights[c * w..(c + 1) * w];
        for (wi, v) in row.iter_mut().zip(x) {
            *wi += step * v;
        }
        row[self.n_dims] += step;
    }
}

fn softmax(scores: &[f64]) -> Vec<f64> {
    let max = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let exp: Vec<f64> = scores.iter().map(|s| (s - max).exp()).collect();
    let total: f64 = exp.iter().sum();
    exp.into_iter().map(|e| e / total).collect()
}

/// Online multi-class Perceptron: on a mistake the true class row moves
/// towards the sample and the predicted row away from it. Samples are
/// visited in a freshly shuffled order each epoch; training stops early after
/// an epoch without mistakes.
pub fn train_perceptron(train: &Dataset, cfg: &PerceptronConfig, seed: u64) -> Result<LinearClassifier> {
    if train.is_empty() {
        return Err(Error::InvalidDataset("empty training set".into()));
    }
    if cfg.epochs == 0 || !(cfg.learning_rate > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "epochs = {}, learning_rate = {}",
            cfg.epochs, cfg.learning_rate
        )));
    }
    let mut model = LinearClassifier::zeros(train.num_classes(), train.dims());
    let mut order: Vec<usize> = (0..train.len()).collect();
    let mut rng = rng(seed);
    for _ in 0..cfg.epochs {
        order.shuffle(&mut rng);
        let mut mistakes = 0;
        for &i in &order {
            let x = train.row(i);
            let y = train.label(i);
            let p = model.predict(x);
            if p != y {
                mistakes += 1;
                model.update(y, x, cfg.learning_rate);
                model.update(p, x, -cfg.learning_rate);
            }
        }
        if mistakes == 0 {
            break;
        }
    }
    Ok(model)
}

/// Rows of an `n`-sized bootstrap sample drawn with replacement.
pub fn bootstrap_indices(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = rng(seed);
    (0..n).map(|_| rng.random_range(0..n)).collect()
}

/// Seed of member `m` in a pool built from `master`: (bootstrap, training).
pub fn member_seeds(master: u64, m: usize) -> (u64, u64) {
    let bag = derive_seed(master, &[m as u64]);
    (bag, derive_seed(bag, &[1]))
}

/// A pool of linear classifiers with their outputs precomputed on DSEL.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifierPool {
    members: Vec<LinearClassifier>,
    bag_seeds: Vec<u64>,
    n_classes: usize,
    /// Number of DSEL rows the caches describe.
    cache_rows: usize,
    /// `cache[m * cache_rows + j]`: member `m`'s label for DSEL row `j`.
    cache: Vec<usize>,
    /// `score_cache[(m * cache_rows + j) * n_classes + c]`: support for class `c`.
    score_cache: Vec<f64>,
}

/// Trains `size` Perceptrons on bootstrap replicates of `train`.
pub fn bagging_pool(train: &Dataset, size: usize, cfg: &PerceptronConfig, seed: u64) -> Result<ClassifierPool> {
    if size == 0 {
        return Err(Error::InvalidParameter("pool size must be at least 1".into()));
    }
    let trained = par::map_range(size, |m| {
        let (bag, train_seed) = member_seeds(seed, m);
        let sample = train.subset(&bootstrap_indices(train.len(), bag));
        train_perceptron(&sample, cfg, train_seed).map(|c| (c, bag))
    });
    let mut members = Vec::with_capacity(size);
    let mut bag_seeds = Vec::with_capacity(size);
    for r in trained {
        let (c, s) = r?;
        members.push(c);
        bag_seeds.push(s);
    }
    ClassifierPool::new(members, bag_seeds)
}

const POOL_FORMAT: &str = "dsel-edit/pool";
const POOL_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct PoolFile {
    format: String,
    version: u32,
    pool: ClassifierPool,
}

impl ClassifierPool {
    /// A pool without a cache.
    pub fn new(members: Vec<LinearClassifier>, bag_seeds: Vec<u64>) -> Result<Self> {
        let first = members
            .first()
            .ok_or_else(|| Error::InvalidParameter("pool needs at least one member".into()))?;
        let (n_classes, dims) = (first.num_classes(), first.dims());
        if members.iter().any(|m| m.num_classes() != n_classes || m.dims() != dims) {
            return Err(Error::InvalidParameter("pool members disagree on shape".into()));
        }
        if bag_seeds.len() != members.len() {
            return Err(Error::InvalidParameter("one seed per member required".into()));
        }
        Ok(ClassifierPool {
            members,
            bag_seeds,
            n_classes,
            cache_rows: 0,
            cache: Vec::new(),
            score_cache: Vec::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn num_classes(&self) -> usize {
        self.n_classes
    }

    pub fn dims(&self) -> usize {
        self.members[0].dims()
    }

    pub fn members(&self) -> &[LinearClassifier] {
        &self.members
    }

    pub fn bag_seeds(&self) -> &[u64] {
        &self.bag_seeds
    }

    pub fn cache_rows(&self) -> usize {
        self.cache_rows
    }

    /// Member `m`'s cached label for DSEL row `j`.
    #[inline]
    pub fn cached_label(&self, m: usize, j: usize) -> usize {
        self.cache[m * self.cache_rows + j]
    }

    /// Member `m`'s cached class supports for DSEL row `j`.
    #[inline]
    pub fn cached_supports(&self, m: usize, j: usize) -> &[f64] {
        let start = (m * self.cache_rows + j) * self.n_classes;
        &self.score_cache[start..start + self.n_classes]
    }

    /// Every member's label for `x`.
    pub fn predict_all(&self, x: &[f64]) -> Vec<usize> {
        self.members.iter().map(|m| m.predict(x)).collect()
    }

    /// A copy of the pool whose caches describe `dsel`.
    pub fn build_cache(&self, dsel: &Dataset) -> Result<ClassifierPool> {
        if dsel.is_empty() {
            return Err(Error::InvalidDataset("empty DSEL".into()));
        }
        if dsel.dims() != self.dims() {
            return Err(Error::DimensionMismatch {
                expected: self.dims(),
                got: dsel.dims(),
            });
        }
        let n = dsel.len();
        let rows = par::map_range(self.members.len(), |m| {
            let member = &self.members[m];
            let mut labels = Vec::with_capacity(n);
            let mut supports = Vec::with_capacity(n * self.n_classes);
            for x in dsel.rows() {
                labels.push(member.predict(x));
                supports.extend(member.supports(x));
            }
            (labels, supports)
        });
        let mut pool = ClassifierPool {
            members: self.members.clone(),
            bag_seeds: self.bag_seeds.clone(),
            n_classes: self.n_classes,
            cache_rows: n,
            cache: Vec::with_capacity(self.members.len() * n),
            score_cache: Vec::with_capacity(self.members.len() * n * self.n_classes),
        };
        for (labels, supports) in rows {
            pool.cache.extend(labels);
            pool.score_cache.extend(supports);
        }
        Ok(pool)
    }

    /// Majority vote of all members (ties to the lower class id).
    pub fn majority_vote(&self, x: &[f64]) -> usize {
        let mut votes = vec![0usize; self.n_classes];
        for m in &self.members {
            votes[m.predict(x)] += 1;
        }
        argmax_first(&votes)
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string(&PoolFile {
            format: POOL_FORMAT.into(),
            version: POOL_VERSION,
            pool: self.clone(),
        })
        .map_err(|e| Error::Serialization(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: PoolFile =
            serde_json::from_str(text).map_err(|e| Error::Serialization(e.to_string()))?;
        if file.format != POOL_FORMAT || file.version != POOL_VERSION {
            return Err(Error::Serialization(format!(
                "unsupported pool file {} v{}",
                file.format, file.version
            )));
        }
        Ok(file.pool)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json()?).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }
}

/// Index of the first maximum.
pub(crate) fn argmax_first<T: PartialOrd + Copy>(values: &[T]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate().skip(1) {
        if *v > values[best] {
            best = i;
        }
    }
    best
}
