//! Dynamic classifier and ensemble selection over a (possibly edited) DSEL.
//!
//! Every rule reads member outputs on DSEL' from the pool cache, so the pool
//! passed in must have been cached on exactly the `dsel` given alongside it.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::data::{knn, Dataset};
use crate::error::{Error, Result};
use crate::pool::{argmax_first, ClassifierPool};

pub use crate::data::RegionOfCompetence;

/// Behaviour-similarity threshold of MCB.
pub const MCB_SIMILARITY: f64 = 0.7;
/// Guards the A Priori distance weights against zero distances.
pub const APRIORI_EPSILON: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DsMethod {
    #[serde(rename = "OLA")]
    Ola,
    #[serde(rename = "LCA")]
    Lca,
    #[serde(rename = "APriori")]
    APriori,
    #[serde(rename = "MCB")]
    Mcb,
    #[serde(rename = "KNORA-E")]
    KnoraE,
    #[serde(rename = "KNORA-U")]
    KnoraU,
}

impl DsMethod {
    pub const ALL: [DsMethod; 6] = [
        DsMethod::Ola,
        DsMethod::Lca,
        DsMethod::APriori,
        DsMethod::Mcb,
        DsMethod::KnoraE,
        DsMethod::KnoraU,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            DsMethod::Ola => "OLA",
            DsMethod::Lca => "LCA",
            DsMethod::APriori => "APriori",
            DsMethod::Mcb => "MCB",
            DsMethod::KnoraE => "KNORA-E",
            DsMethod::KnoraU => "KNORA-U",
        }
    }
}

impl fmt::Display for DsMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DsMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = |x: &str| x.to_ascii_lowercase().replace(['-', '_', ' '], "");
        DsMethod::ALL
            .into_iter()
            .find(|m| norm(m.as_str()) == norm(s))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown DS method {s:?}")))
    }
}

/// Per-member competence estimates in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct CompetenceVector(pub Vec<f64>);

impl CompetenceVector {
    /// The most competent member; ties go to the lower index.
    pub fn best(&self) -> usize {
        argmax_first(&self.0)
    }
}

/// The `k` nearest DSEL' rows of `query`.
pub fn region_of_competence(query: &[f64], dsel: &Dataset, k: usize) -> Result<RegionOfCompetence> {
    if k > dsel.len() {
        return Err(Error::RegionTooLarge {
            k,
            dsel_size: dsel.len(),
        });
    }
    knn(query, dsel, k, None)
}

fn check_cache(pool: &ClassifierPool, dsel: &Dataset) -> Result<()> {
    if pool.cache_rows() != dsel.len() {
        return Err(Error::InvalidParameter(format!(
            "pool cache covers {} rows but DSEL' has {}",
            pool.cache_rows(),
            dsel.len()
        )));
    }
    Ok(())
}

fn correct(pool: &ClassifierPool, dsel: &Dataset, m: usize, j: usize) -> bool {
    pool.cached_label(m, j) == dsel.label(j)
}

fn accuracy_on(pool: &ClassifierPool, dsel: &Dataset, m: usize, rows: &[usize]) -> f64 {
    if rows.is_empty() {
        return 0.0;
    }
    rows.iter().filter(|&&j| correct(pool, dsel, m, j)).count() as f64 / rows.len() as f64
}

/// Overall local accuracy: each member's accuracy on the region.
pub fn ola_competence(pool: &ClassifierPool, dsel: &Dataset, region: &RegionOfCompetence) -> CompetenceVector {
    CompetenceVector(
        (0..pool.len())
            .map(|m| accuracy_on(pool, dsel, m, &region.indices))
            .collect(),
    )
}

/// Local class accuracy: accuracy restricted to region rows whose true class
/// is the member's prediction for the query (0 if there are none).
pub fn lca_competence(
    pool: &ClassifierPool,
    dsel: &Dataset,
    region: &RegionOfCompetence,
    predicted: &[usize],
) -> CompetenceVector {
    CompetenceVector(
        (0..pool.len())
            .map(|m| {
                let rows: Vec<usize> = region
                    .indices
                    .iter()
                    .copied()
                    .filter(|&j| dsel.label(j) == predicted[m])
                    .collect();
                accuracy_on(pool, dsel, m, &rows)
            })
            .collect(),
    )
}

/// A Priori: distance-weighted mean support for each neighbour's true class.
pub fn apriori_competence(pool: &ClassifierPool, dsel: &Dataset, region: &RegionOfCompetence) -> CompetenceVector {
    let weights: Vec<f64> = region
        .distances
        .iter()
        .map(|d| 1.0 / (d + APRIORI_EPSILON))
        .collect();
    let total: f64 = weights.iter().sum();
    CompetenceVector(
        (0..pool.len())
            .map(|m| {
                let s: f64 = region
                    .indices
                    .iter()
                    .zip(&weights)
                    .map(|(&j, w)| w * pool.cached_supports(m, j)[dsel.label(j)])
                    .sum();
                (s / total).clamp(0.0, 1.0)
            })
            .collect(),
    )
}

/// Multiple classifier behaviour with an explicit similarity threshold.
pub fn mcb_competence_with(
    pool: &ClassifierPool,
    dsel: &Dataset,
    region: &RegionOfCompetence,
    query_signature: &[usize],
    similarity: f64,
) -> CompetenceVector {
    let m_count = pool.len() as f64;
    let mut kept: Vec<usize> = region
        .indices
        .iter()
        .copied()
        .filter(|&j| {
            let agree = (0..pool.len())
                .filter(|&m| pool.cached_label(m, j) == query_signature[m])
                .count();
            agree as f64 / m_count >= similarity
        })
        .collect();
    if kept.is_empty() {
        kept = region.indices.clone();
    }
    CompetenceVector(
        (0..pool.len())
            .map(|m| accuracy_on(pool, dsel, m, &kept))
            .collect(),
    )
}

/// Multiple classifier behaviour: OLA over the region rows whose pool output
/// signature agrees with the query's on at least [`MCB_SIMILARITY`] of members.
pub fn mcb_competence(
    pool: &ClassifierPool,
    dsel: &Dataset,
    region: &RegionOfCompetence,
    query_signature: &[usize],
) -> CompetenceVector {
    mcb_competence_with(pool, dsel, region, query_signature, MCB_SIMILARITY)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KnoraMode {
    Eliminate,
    Union,
}

/// Members chosen by KNORA together with their vote weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnoraSelection {
    pub selected: Vec<usize>,
    /// One weight per pool member; zero for members not selected.
    pub weights: Vec<usize>,
}

impl KnoraSelection {
    fn all(pool_len: usize) -> Self {
        KnoraSelection {
            selected: (0..pool_len).collect(),
            weights: vec![1; pool_len],
        }
    }
}

/// KNORA-Eliminate keeps members correct on the whole region, dropping the
/// farthest neighbour until some member qualifies. KNORA-Union weights every
/// member by its number of correct neighbours. Both fall back to the whole
/// pool with unit weights.
pub fn knora_select(
    pool: &ClassifierPool,
    dsel: &Dataset,
    region: &RegionOfCompetence,
    mode: KnoraMode,
) -> KnoraSelection {
    let m_count = pool.len();
    match mode {
        KnoraMode::Eliminate => {
            for size in (1..=region.len()).rev() {
                let rows = &region.indices[..size];
                let selected: Vec<usize> = (0..m_count)
                    .filter(|&m| rows.iter().all(|&j| correct(pool, dsel, m, j)))
                    .collect();
                if !selected.is_empty() {
                    let mut weights = vec![0; m_count];
                    for &m in &selected {
                        weights[m] = 1;
                    }
                    return KnoraSelection { selected, weights };
                }
            }
            KnoraSelection::all(m_count)
        }
        KnoraMode::Union => {
            let weights: Vec<usize> = (0..m_count)
                .map(|m| {
                    region
                        .indices
                        .iter()
                        .filter(|&&j| correct(pool, dsel, m, j))
                        .count()
                })
                .collect();
            let selected: Vec<usize> = (0..m_count).filter(|&m| weights[m] > 0).collect();
            if selected.is_empty() {
                KnoraSelection::all(m_count)
            } else {
                KnoraSelection { selected, weights }
            }
        }
    }
}

fn weighted_vote(selection: &KnoraSelection, predictions: &[usize], n_classes: usize) -> usize {
    let mut votes = vec![0usize; n_classes];
    for &m in &selection.selected {
        votes[predictions[m]] += selection.weights[m];
    }
    argmax_first(&votes)
}

/// Classifies `query` with dynamic selection method `method`.
pub fn ds_predict(
    method: DsMethod,
    pool: &ClassifierPool,
    dsel: &Dataset,
    query: &[f64],
    k: usize,
) -> Result<usize> {
    check_cache(pool, dsel)?;
    let region = region_of_competence(query, dsel, k)?;
    let predictions = pool.predict_all(query);
    Ok(decide(method, pool, dsel, &region, &predictions))
}

fn decide(
    method: DsMethod,
    pool: &ClassifierPool,
    dsel: &Dataset,
    region: &RegionOfCompetence,
    predictions: &[usize],
) -> usize {
    let single = |c: CompetenceVector| predictions[c.best()];
    match method {
        DsMethod::Ola => single(ola_competence(pool, dsel, region)),
        DsMethod::Lca => single(lca_competence(pool, dsel, region, predictions)),
        DsMethod::APriori => single(apriori_competence(pool, dsel, region)),
        DsMethod::Mcb => single(mcb_competence(pool, dsel, region, predictions)),
        DsMethod::KnoraE => weighted_vote(
            &knora_select(pool, dsel, region, KnoraMode::Eliminate),
            predictions,
            pool.num_classes(),
        ),
        DsMethod::KnoraU => weighted_vote(
            &knora_select(pool, dsel, region, KnoraMode::Union),
            predictions,
            pool.num_classes(),
        ),
    }
}

/// A cached pool bound to its DSEL' and region size.
#[derive(Clone, Debug)]
pub struct DsSystem {
    pool: ClassifierPool,
    dsel: Dataset,
    k: usize,
}

impl DsSystem {
    /// Caches `pool` on `dsel`. Fails if `k` exceeds the DSEL' size.
    pub fn new(pool: &ClassifierPool, dsel: Dataset, k: usize) -> Result<Self> {
        if k == 0 || k > dsel.len() {
            return Err(Error::RegionTooLarge {
                k,
                dsel_size: dsel.len(),
            });
        }
        Ok(DsSystem {
            pool: pool.build_cache(&dsel)?,
            dsel,
            k,
        })
    }

    pub fn pool(&self) -> &ClassifierPool {
        &self.pool
    }

    pub fn dsel(&self) -> &Dataset {
        &self.dsel
    }

    pub fn predict(&self, method: DsMethod, query: &[f64]) -> Result<usize> {
        ds_predict(method, &self.pool, &self.dsel, query, self.k)
    }

    /// Labels for every test row, one region search per row shared by
    /// all `methods`. Output is indexed `[method][row]`.
    pub fn predict_many(&self, methods: &[DsMethod], test: &Dataset) -> Result<Vec<Vec<usize>>> {
        let mut out = vec![Vec::with_capacity(test.len()); methods.len()];
        for x in test.rows() {
            let region = region_of_competence(x, &self.dsel, self.k)?;
            let predictions = self.pool.predict_all(x);
            for (o, &m) in out.iter_mut().zip(methods) {
                o.push(decide(m, &self.pool, &self.dsel, &region, &predictions));
            }
        }
        Ok(out)
    }

    /// Accuracy of `method` on `test`.
    pub fn accuracy(&self, method: DsMethod, test: &Dataset) -> Result<f64> {
        let pred = self.predict_many(&[method], test)?;
        Ok(hit_rate(&pred[0], test.labels()))
    }
}

pub(crate) fn hit_rate(pred: &[usize], truth: &[usize]) -> f64 {
    if truth.is_empty() {
        return 0.0;
    }
    pred.iter().zip(truth).filter(|(a, b)| a == b).count() as f64 / truth.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pool::LinearClassifier;

    /// A 1-d DSEL at x = 0..7 with labels, and constant members: a member
    /// whose only weight is a bias on class `c` always predicts `c`.
    fn constant(c: usize, n_classes: usize) -> LinearClassifier {
        let mut w = vec![0.0; n_classes * 2];
        w[c * 2 + 1] = 1.0;
        LinearClassifier::from_weights(n_classes, 1, w).unwrap()
    }

    fn line(labels: &[usize]) -> Dataset {
        let rows: Vec<Vec<f64>> = (0..labels.len()).map(|i| vec![i as f64]).collect();
        Dataset::from_rows("line", &rows, labels.to_vec(), Some(2)).unwrap()
    }

    /// Builds a pool whose cache is replaced by an explicit table.
    fn table_pool(table: &[Vec<usize>], dsel: &Dataset) -> ClassifierPool {
        let members: Vec<LinearClassifier> = (0..table.len()).map(|_| constant(0, 2)).collect();
        let seeds = vec![0; table.len()];
        let pool = ClassifierPool::new(members, seeds).unwrap().build_cache(dsel).unwrap();
        let mut json: serde_json::Value = serde_json::from_str(&pool.to_json().unwrap()).unwrap();
        let flat: Vec<usize> = table.iter().flatten().copied().collect();
        json["pool"]["cache"] = serde_json::json!(flat);
        let scores: Vec<f64> = flat
            .iter()
            .flat_map(|&l| if l == 0 { [0.8, 0.2] } else { [0.2, 0.8] })
            .collect();
        json["pool"]["score_cache"] = serde_json::json!(scores);
        ClassifierPool::from_json(&json.to_string()).unwrap()
    }

    fn region(k: usize) -> RegionOfCompetence {
        RegionOfCompetence {
            indices: (0..k).collect(),
            distances: (0..k).map(|i| i as f64 + 1.0).collect(),
        }
    }

    #[test]
    fn region_guard_and_exact_size() {
        let d = line(&[0, 1, 0]);
        assert!(matches!(
            region_of_competence(&[0.0], &d, 8),
            Err(Error::RegionTooLarge { k: 8, dsel_size: 3 })
        ));
        assert_eq!(region_of_competence(&[0.0], &d, 3).unwrap().len(), 3);
    }

    #[test]
    fn ola_counts() {
        let d = line(&[0, 0, 0, 1, 1, 1, 1]);
        let pool = table_pool(
            &[vec![0, 0, 0, 1, 1, 1, 1], vec![0, 0, 0, 0, 1, 0, 0]],
            &d,
        );
        let c = ola_competence(&pool, &d, &region(7));
        assert_eq!(c.0, vec![1.0, 4.0 / 7.0]);
    }

    #[test]
    fn lca_by_enumeration() {
        let d = line(&[0, 1, 0, 1, 0, 1, 1]);
        let table = vec![vec![0, 1, 1, 1, 0, 0, 1], vec![1, 1, 1, 1, 1, 1, 1]];
        let pool = table_pool(&table, &d);
        let predicted = [1, 0];
        let c = lca_competence(&pool, &d, &region(7), &predicted);
        // Member 0 predicts 1: rows of class 1 are 1,3,5,6; correct on 1,3,6.
        // Member 1 predicts 0: rows of class 0 are 0,2,4; member 1 says 1 everywhere.
        let oracle = |m: usize| {
            let rows: Vec<usize> = (0..7).filter(|&j| d.label(j) == predicted[m]).collect();
            if rows.is_empty() {
                0.0
            } else {
                rows.iter().filter(|&&j| table[m][j] == d.label(j)).count() as f64 / rows.len() as f64
            }
        };
        assert_eq!(c.0, vec![oracle(0), oracle(1)]);
        assert_eq!(c.0[0], 0.75);

        let all_zero = line(&[0, 0, 0]);
        let pool = table_pool(&[vec![0, 0, 0]], &all_zero);
        assert_eq!(lca_competence(&pool, &all_zero, &region(3), &[0]).0, vec![1.0]);
        assert_eq!(lca_competence(&pool, &all_zero, &region(3), &[1]).0, vec![0.0]);
    }

    #[test]
    fn apriori_weighted_average() {
        // Two neighbours at distances 1 and 3 with supports 0.9 and 0.3.
        let d = line(&[0, 0]);
        let members = vec![constant(0, 2)];
        let pool = ClassifierPool::new(members, vec![0]).unwrap().build_cache(&d).unwrap();
        let mut json: serde_json::Value = serde_json::from_str(&pool.to_json().unwrap()).unwrap();
        json["pool"]["score_cache"] = serde_json::json!([0.9, 0.1, 0.3, 0.7]);
        let pool = ClassifierPool::from_json(&json.to_string()).unwrap();
        let r = RegionOfCompetence {
            indices: vec![0, 1],
            distances: vec![1.0, 3.0],
        };
        let c = apriori_competence(&pool, &d, &r);
        let expected = (0.9 / 1.0 + 0.3 / 3.0) / (1.0 / 1.0 + 1.0 / 3.0);
        assert!((c.0[0] - expected).abs() < 1e-9);
        assert!((c.0[0] - 0.75).abs() < 1e-9);
    }

    #[test]
    fn apriori_uniform_supports() {
        let d = line(&[0, 1, 1]);
        let pool = ClassifierPool::new(vec![LinearClassifier::zeros(2, 1)], vec![0])
            .unwrap()
            .build_cache(&d)
            .unwrap();
        let c = apriori_competence(&pool, &d, &region(3));
        assert!((c.0[0] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn mcb_filters_on_behaviour() {
        let d = line(&[0, 1, 0]);
        // Three members; query signature (0, 0, 1). Neighbour signatures:
        // row 0: (1,1,0) agree 0/3; row 1: (0,0,1) agree 3/3; row 2: (1,0,0) agree 1/3.
        let table = vec![vec![1, 0, 1], vec![1, 0, 0], vec![0, 1, 0]];
        let pool = table_pool(&table, &d);
        let sig = [0, 0, 1];
        let c = mcb_competence(&pool, &d, &region(3), &sig);
        // Only row 1 (label 1) survives: member 0 says 0 (wrong), 1 says 0, 2 says 1.
        assert_eq!(c.0, vec![0.0, 0.0, 1.0]);
        // sigma = 0 keeps everything and equals OLA.
        let c0 = mcb_competence_with(&pool, &d, &region(3), &sig, 0.0);
        assert_eq!(c0, ola_competence(&pool, &d, &region(3)));
        // No neighbour agrees on 70%: whole region kept.
        let none = mcb_competence(&pool, &d, &region(3), &[1, 1, 1]);
        assert_eq!(none, ola_competence(&pool, &d, &region(3)));
    }

    #[test]
    fn knora_modes() {
        let d = line(&[0, 1, 0, 1, 0, 1, 0]);
        let truth: Vec<usize> = d.labels().to_vec();
        let mut perfect6 = truth.clone();
        perfect6[6] = 1 - perfect6[6];
        let mut three = vec![1 - truth[0]; 7];
        for j in 0..7 {
            three[j] = if j < 3 { truth[j] } else { 1 - truth[j] };
        }
        let pool = table_pool(&[perfect6.clone(), three.clone(), truth.clone()], &d);
        let e = knora_select(&pool, &d, &region(7), KnoraMode::Eliminate);
        assert_eq!(e.selected, vec![2]);
        let u = knora_select(&pool, &d, &region(7), KnoraMode::Union);
        assert_eq!(u.weights, vec![6, 3, 7]);

        // No member perfect on 7; member 0 perfect on the nearest 6.
        let pool = table_pool(&[perfect6, three], &d);
        let e = knora_select(&pool, &d, &region(7), KnoraMode::Eliminate);
        assert_eq!(e.selected, vec![0]);
        assert_eq!(e.weights, vec![1, 0]);

        // Every member wrong everywhere: both modes fall back to the pool.
        let wrong: Vec<usize> = truth.iter().map(|l| 1 - l).collect();
        let pool = table_pool(&[wrong.clone(), wrong], &d);
        assert_eq!(knora_select(&pool, &d, &region(7), KnoraMode::Eliminate).selected, vec![0, 1]);
        assert_eq!(knora_select(&pool, &d, &region(7), KnoraMode::Union).weights, vec![1, 1]);
    }

    #[test]
    fn single_member_and_identical_members() {
        let d = line(&[0, 1, 0, 1, 1, 0, 1, 0]);
        for c in 0..2 {
            let pool = ClassifierPool::new(vec![constant(c, 2)], vec![0]).unwrap().build_cache(&d).unwrap();
            for m in DsMethod::ALL {
                assert_eq!(ds_predict(m, &pool, &d, &[3.3], 7).unwrap(), c);
            }
            let same = ClassifierPool::new(vec![constant(c, 2); 4], vec![0; 4]).unwrap().build_cache(&d).unwrap();
            for m in DsMethod::ALL {
                assert_eq!(ds_predict(m, &same, &d, &[1.0], 3).unwrap(), c);
            }
        }
    }

    #[test]
    fn three_member_scenario_per_method() {
        // DSEL at x = 0..7, query at x = -1 so the region is rows 0..7 in order
        // with distances 1..7. Members are constants 0, 1 and a line-dependent
        // classifier predicting 1 for x > 2.5.
        let labels = [0, 0, 1, 0, 1, 1, 1];
        let d = line(&labels);
        let step = LinearClassifier::from_weights(2, 1, vec![0.0, 0.0, 1.0, -2.5]).unwrap();
        let members = vec![constant(0, 2), constant(1, 2), step.clone()];
        let pool = ClassifierPool::new(members, vec![0; 3]).unwrap().build_cache(&d).unwrap();
        let q = [-1.0];
        // Predictions for the query: 0, 1, 0 (step says 0 for x = -1).
        assert_eq!(pool.predict_all(&q), vec![0, 1, 0]);
        // Correctness table: const0 right on rows {0,1,3} = 3/7;
        // const1 right on {2,4,5,6} = 4/7; step predicts (0,0,0,1,1,1,1),
        // right on {0,1,4,5,6} = 5/7.
        assert_eq!(ds_predict(DsMethod::Ola, &pool, &d, &q, 7).unwrap(), 0);
        // LCA: const0 on class-0 rows {0,1,3}: 3/3; const1 on class-1 rows: 4/4;
        // step (predicts 0) on {0,1,3}: 2/3. Tie between 0 and 1 goes to member 0.
        assert_eq!(ds_predict(DsMethod::Lca, &pool, &d, &q, 7).unwrap(), 0);
        // KNORA-E: nobody perfect on 7; on nearest 3 (rows 0,1,2) nobody;
        // on nearest 2 const0 and step are perfect -> vote 0.
        assert_eq!(ds_predict(DsMethod::KnoraE, &pool, &d, &q, 7).unwrap(), 0);
        // KNORA-U weights 3, 4, 5: class 0 gets 3 + 5 = 8, class 1 gets 4.
        assert_eq!(ds_predict(DsMethod::KnoraU, &pool, &d, &q, 7).unwrap(), 0);
        // Query at 7.5: region rows 6,5,4,3,2,1,0; predictions (0, 1, 1).
        let q2 = [7.5];
        assert_eq!(ds_predict(DsMethod::Ola, &pool, &d, &q2, 7).unwrap(), 1);
        assert_eq!(ds_predict(DsMethod::KnoraE, &pool, &d, &q2, 7).unwrap(), 1);
        // KNORA-U: class 1 gets 4 + 5 = 9 vs 3.
        assert_eq!(ds_predict(DsMethod::KnoraU, &pool, &d, &q2, 7).unwrap(), 1);
    }

    #[test]
    fn stale_cache_is_rejected() {
        let d = line(&[0, 1, 0]);
        let pool = ClassifierPool::new(vec![constant(0, 2)], vec![0]).unwrap();
        assert!(ds_predict(DsMethod::Ola, &pool, &d, &[0.0], 1).is_err());
    }

    #[test]
    fn method_names_parse() {
        for m in DsMethod::ALL {
            assert_eq!(m.as_str().parse::<DsMethod>().unwrap(), m);
        }
        assert_eq!("knora_e".parse::<DsMethod>().unwrap(), DsMethod::KnoraE);
    }
}
