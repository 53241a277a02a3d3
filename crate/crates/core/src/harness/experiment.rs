use std::hint::black_box;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::ExperimentConfig;
use crate::data::{stratified_holdout, Dataset, Scaler, SplitSpec};
use crate::dynselect::{hit_rate, DsMethod, DsSystem};
use crate::error::{Error, Result};
use crate::par;
use crate::pool::{bagging_pool, ClassifierPool};
use crate::ps::{select_prototypes, PsMethod, PsParams};
use crate::seed::{derive_seed, name_key};

/// Outcome code of one record. Anything but `Ok` is left out of the
/// statistics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellStatus {
    Ok,
    /// The PS result was too small; the full DSEL was used instead.
    Guarded,
    /// DSEL' holds fewer rows than the region size.
    RegionTooLarge,
    LoadFailed,
    SplitFailed,
    Failed,
}

impl CellStatus {
    pub fn is_ok(&self) -> bool {
        *self == CellStatus::Ok
    }
}

/// One (dataset, PS method, DS method, replication) measurement.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub dataset: String,
    pub ps_method: PsMethod,
    pub ds_method: DsMethod,
    pub replication: u32,
    pub status: CellStatus,
    /// NaN when nothing was classified.
    pub accuracy: f64,
    pub reduction_rate: f64,
    pub dsel_before: usize,
    pub dsel_after: usize,
    pub ps_seconds: f64,
    pub generalization_seconds: f64,
}

impl RunRecord {
    fn failed(dataset: &str, ps: PsMethod, ds: DsMethod, replication: u32, status: CellStatus) -> Self {
        RunRecord {
            dataset: dataset.to_string(),
            ps_method: ps,
            ds_method: ds,
            replication,
            status,
            accuracy: f64::NAN,
            reduction_rate: f64::NAN,
            dsel_before: 0,
            dsel_after: 0,
            ps_seconds: 0.0,
            generalization_seconds: 0.0,
        }
    }
}

/// Wall time to classify every row of `test` with `method`: one untimed
/// warm-up pass, then the median of `repeats` timed passes.
pub fn time_classification(system: &DsSystem, method: DsMethod, test: &Dataset, repeats: usize) -> Result<Duration> {
    black_box(system.predict_many(&[method], test)?);
    let mut times = Vec::with_capacity(repeats.max(1));
    for _ in 0..repeats.max(1) {
        let t = Instant::now();
        black_box(system.predict_many(&[method], test)?);
        times.push(t.elapsed());
    }
    times.sort();
    Ok(times[times.len() / 2])
}

/// Generalization time of a DS method over `dsel_prime`, median of three
/// passes. Caching the pool on DSEL' is not timed.
pub fn measure_generalization_time(
    pool: &ClassifierPool,
    dsel_prime: &Dataset,
    test: &Dataset,
    method: DsMethod,
    k: usize,
) -> Result<Duration> {
    let system = DsSystem::new(pool, dsel_prime.clone(), k)?;
    time_classification(&system, method, test, 3)
}

fn ps_index(ps: PsMethod) -> u64 {
    PsMethod::ALL.iter().position(|&m| m == ps).unwrap_or(0) as u64
}

struct Cell<'a> {
    cfg: &'a ExperimentConfig,
    params: &'a PsParams,
    ps_methods: &'a [PsMethod],
    ds_methods: &'a [DsMethod],
}

impl Cell<'_> {
    fn fail_all(&self, name: &str, rep: u32, status: CellStatus) -> Vec<RunRecord> {
        self.ps_methods
            .iter()
            .flat_map(|&ps| {
                self.ds_methods
                    .iter()
                    .map(move |&ds| RunRecord::failed(name, ps, ds, rep, status))
            })
            .collect()
    }

    fn run(&self, data: &Dataset, rep: u32) -> Vec<RunRecord> {
        let name = data.name();
        let key = name_key(name);
        let master = self.cfg.master_seed;
        let seed = |path: &[u64]| {
            let mut full = vec![key, rep as u64];
            full.extend_from_slice(path);
            derive_seed(master, &full)
        };

        let split = stratified_holdout(data, &SplitSpec::standard(seed(&[0])));
        let (train, dsel, test) = match split {
            Ok(parts) => parts,
            Err(e) => {
                log::warn!("{name} replication {rep}: {e}");
                return self.fail_all(name, rep, CellStatus::SplitFailed);
            }
        };
        let scaler = Scaler::fit(&train);
        let scaled = scaler
            .transform(&train)
            .and_then(|t| Ok((t, scaler.transform(&dsel)?, scaler.transform(&test)?)));
        let pool = scaled.and_then(|(train, dsel, test)| {
            let pool = bagging_pool(&train, self.cfg.pool_size, &self.cfg.perceptron, seed(&[1]))?;
            Ok((pool, dsel, test))
        });
        let (pool, dsel, test) = match pool {
            Ok(p) => p,
            Err(e) => {
                log::warn!("{name} replication {rep}: {e}");
                return self.fail_all(name, rep, CellStatus::Failed);
            }
        };

        let mut out = Vec::with_capacity(self.ps_methods.len() * self.ds_methods.len());
        for &ps in self.ps_methods {
            out.extend(self.run_ps(name, rep, ps, &pool, &dsel, &test, seed(&[2, ps_index(ps)])));
        }
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn run_ps(
        &self,
        name: &str,
        rep: u32,
        ps: PsMethod,
        pool: &ClassifierPool,
        dsel: &Dataset,
        test: &Dataset,
        seed: u64,
    ) -> Vec<RunRecord> {
        let fail = |status| {
            self.ds_methods
                .iter()
                .map(|&ds| RunRecord::failed(name, ps, ds, rep, status))
                .collect::<Vec<_>>()
        };
        let t = Instant::now();
        let outcome = match select_prototypes(ps, dsel, self.params, seed) {
            Ok(o) => o,
            Err(e) => {
                log::warn!("{name} replication {rep} {ps}: {e}");
                return fail(CellStatus::Failed);
            }
        };
        let ps_seconds = t.elapsed().as_secs_f64();
        let status = if outcome.guarded {
            CellStatus::Guarded
        } else {
            CellStatus::Ok
        };
        let dsel_prime = match outcome.mask.apply(dsel) {
            Ok(d) => d,
            Err(e) => {
                log::warn!("{name} replication {rep} {ps}: {e}");
                return fail(CellStatus::Failed);
            }
        };
        let system = match DsSystem::new(pool, dsel_prime, self.cfg.k) {
            Ok(s) => s,
            Err(Error::RegionTooLarge { .. }) => return fail(CellStatus::RegionTooLarge),
            Err(e) => {
                log::warn!("{name} replication {rep} {ps}: {e}");
                return fail(CellStatus::Failed);
            }
        };
        let predictions = match system.predict_many(self.ds_methods, test) {
            Ok(p) => p,
            Err(e) => {
                log::warn!("{name} replication {rep} {ps}: {e}");
                return fail(CellStatus::Failed);
            }
        };
        self.ds_methods
            .iter()
            .zip(predictions)
            .map(|(&ds, pred)| {
                let gen = time_classification(&system, ds, test, self.cfg.timing_repeats)
                    .map(|d| d.as_secs_f64())
                    .unwrap_or(f64::NAN);
                RunRecord {
                    dataset: name.to_string(),
                    ps_method: ps,
                    ds_method: ds,
                    replication: rep,
                    status,
                    accuracy: hit_rate(&pred, test.labels()),
                    reduction_rate: outcome.mask.reduction_rate(),
                    dsel_before: outcome.mask.len(),
                    dsel_after: outcome.mask.retained_count(),
                    ps_seconds,
                    generalization_seconds: gen,
                }
            })
            .collect()
    }
}

/// Runs every (dataset, replication) cell of `cfg`.
///
/// Within a cell all PS methods share the split, the scaler and the pool.
/// Every random stream is derived from the master seed, the dataset name and
/// the replication, so the accuracies do not depend on thread count or on
/// the other datasets in the config. Failures are recorded, not raised.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<RunRecord>> {
    cfg.validate()?;
    let params = cfg.ps_params();
    let ps_methods = cfg.ps_order();
    let ds_methods = cfg.ds_order();
    let cell = Cell {
        cfg,
        params: &params,
        ps_methods: &ps_methods,
        ds_methods: &ds_methods,
    };

    let loaded: Vec<(String, Result<Dataset>)> = cfg
        .datasets
        .iter()
        .map(|d| (d.display_name(), d.load(cfg.base_dir.as_deref())))
        .collect();
    let reps = cfg.replications as usize;
    let per_cell = par::map_range_jobs(cfg.jobs, loaded.len() * reps, |c| {
        let (name, data) = &loaded[c / reps];
        let rep = (c % reps) as u32;
        match data {
            Ok(d) => {
                log::info!("{name}: replication {rep}");
                cell.run(d, rep)
            }
            Err(e) => {
                if rep == 0 {
                    log::warn!("{name}: {e}");
                }
                cell.fail_all(name, rep, CellStatus::LoadFailed)
            }
        }
    });
    Ok(per_cell.into_iter().flatten().collect())
}
