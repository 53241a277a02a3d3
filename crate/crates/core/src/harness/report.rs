use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};

use super::RunRecord;
use crate::dynselect::DsMethod;
use crate::error::{Error, Result};
use crate::ps::PsMethod;
use crate::stats::{
    self, bonferroni_dunn_cd, friedman_ranks, kruskal_wallis, q_alpha, reported_critical, sign_test_critical,
    sign_test_significant, win_tie_loss, ComparisonTable, DEFAULT_TIE_TOLERANCE, DEFAULT_Z_ALPHA,
};

/// Win/tie/loss of one PS method against Baseline over one scope: `all`
/// cells or a single DS method.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WtlRow {
    pub ps_method: PsMethod,
    pub scope: String,
    pub wins: usize,
    pub ties: usize,
    pub losses: usize,
    pub n_exp: usize,
    pub n_c: f64,
    pub n_c_reported: f64,
    pub significant: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankRow {
    pub ps_method: PsMethod,
    pub avg_rank: f64,
    /// Rank gap to the best method exceeds the critical difference.
    pub worse_than_best: bool,
}

/// Mean ± std of the per-replication accuracy (averaged over DS methods) of
/// one PS method on one dataset.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DatasetRow {
    pub dataset: String,
    pub ps_method: PsMethod,
    pub mean: f64,
    pub std: f64,
    pub best: bool,
    /// Kruskal-Wallis H against Baseline, on the best non-baseline row.
    pub kw_h: Option<f64>,
    /// The `•` marker: best row differs significantly from Baseline.
    pub significant: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReductionRow {
    pub ps_method: PsMethod,
    pub mean_reduction: f64,
    /// Mean of `1 - t / t_baseline` over matching cells.
    pub mean_time_reduction: f64,
    pub mean_dsel_after: f64,
}

/// Number of blocks in which a PS method reached the best accuracy; ties
/// credit every tied method.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BestCount {
    pub scope: String,
    pub ps_method: PsMethod,
    pub count: usize,
}

/// Everything derived from a record set.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub alpha: f64,
    pub z_alpha: f64,
    pub tie_tolerance: f64,
    pub total_records: usize,
    /// Records with a failure status.
    pub excluded_records: usize,
    /// (dataset, DS) blocks dropped because some PS method had no usable
    /// record there.
    pub dropped_blocks: usize,
    /// PS methods that appear in the records but have no usable record.
    pub absent_methods: Vec<PsMethod>,
    pub n_blocks: usize,
    pub win_tie_loss: Vec<WtlRow>,
    pub ranks: Vec<RankRow>,
    pub q_alpha: f64,
    pub critical_difference: f64,
    pub per_dataset: Vec<DatasetRow>,
    pub reduction: Vec<ReductionRow>,
    pub best_counts: Vec<BestCount>,
}

fn z_for(alpha: f64) -> f64 {
    if (alpha - 0.05).abs() < 1e-12 {
        DEFAULT_Z_ALPHA
    } else {
        Normal::standard().inverse_cdf(1.0 - alpha)
    }
}

fn q_for(alpha: f64, k: usize) -> f64 {
    q_alpha(alpha, k).unwrap_or_else(|_| Normal::standard().inverse_cdf(1.0 - alpha / (2.0 * (k as f64 - 1.0))))
}

/// Builds the full report at significance level `alpha`.
///
/// Failed records are excluded; blocks missing any PS method are dropped so
/// that the remaining design is complete.
pub fn report(records: &[RunRecord], alpha: f64) -> Result<Report> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!("alpha = {alpha}")));
    }
    if records.is_empty() {
        return Err(Error::InvalidParameter("no records".into()));
    }
    let usable: Vec<&RunRecord> = records
        .iter()
        .filter(|r| r.status.is_ok() && r.accuracy.is_finite())
        .collect();
    let excluded_records = records.len() - usable.len();

    let mut full = ComparisonTable::new();
    for r in &usable {
        full.insert(&r.dataset, r.ds_method, r.ps_method, r.replication, r.accuracy)?;
    }
    let methods: Vec<PsMethod> = full.ps_methods().into_iter().collect();
    let mut absent_methods: Vec<PsMethod> = records
        .iter()
        .map(|r| r.ps_method)
        .filter(|m| !methods.contains(m))
        .collect();
    absent_methods.sort();
    absent_methods.dedup();
    if !methods.contains(&PsMethod::Baseline) {
        return Err(Error::MissingCell("no usable Baseline records".into()));
    }
    let complete: Vec<(String, DsMethod)> = full
        .cells()
        .into_iter()
        .filter(|(d, ds)| methods.iter().all(|&m| full.cell_mean(d, *ds, m).is_some()))
        .collect();
    let dropped_blocks = full.cells().len() - complete.len();
    let mut table = ComparisonTable::new();
    for r in &usable {
        if complete.iter().any(|(d, ds)| *d == r.dataset && *ds == r.ds_method) {
            table.insert(&r.dataset, r.ds_method, r.ps_method, r.replication, r.accuracy)?;
        }
    }
    if table.is_empty() {
        return Err(Error::IncompleteBlocks("no block holds every PS method".into()));
    }

    let z_alpha = z_for(alpha);
    let tol = DEFAULT_TIE_TOLERANCE;
    let mut wtl = Vec::new();
    let ds_methods: Vec<DsMethod> = table.ds_methods().into_iter().collect();
    for &ps in methods.iter().filter(|&&m| m != PsMethod::Baseline) {
        let mut scopes = vec![("all".to_string(), table.clone())];
        for &ds in &ds_methods {
            let mut sub = ComparisonTable::new();
            for r in usable.iter().filter(|r| r.ds_method == ds) {
                if complete.iter().any(|(d, cds)| *d == r.dataset && *cds == ds) {
                    sub.insert(&r.dataset, ds, r.ps_method, r.replication, r.accuracy)?;
                }
            }
            scopes.push((ds.to_string(), sub));
        }
        for (scope, t) in scopes {
            let w = win_tie_loss(&t, ps, PsMethod::Baseline, tol)?;
            let n_c = sign_test_critical(w.n_exp(), z_alpha);
            wtl.push(WtlRow {
                ps_method: ps,
                scope,
                wins: w.wins,
                ties: w.ties,
                losses: w.losses,
                n_exp: w.n_exp(),
                n_c,
                n_c_reported: reported_critical(n_c),
                significant: sign_test_significant(w.wins, n_c),
            });
        }
    }

    let avg = friedman_ranks(&table)?;
    let n_blocks = table.cells().len();
    let q = q_for(alpha, methods.len().max(2));
    let cd = bonferroni_dunn_cd(methods.len().max(2), n_blocks, q);
    let best_rank = avg.values().cloned().fold(f64::INFINITY, f64::min);
    let ranks = avg
        .iter()
        .map(|(&ps, &r)| RankRow {
            ps_method: ps,
            avg_rank: r,
            worse_than_best: r - best_rank > cd,
        })
        .collect();

    let mut per_dataset = Vec::new();
    for dataset in table.datasets() {
        let samples: BTreeMap<PsMethod, Vec<f64>> = methods
            .iter()
            .map(|&m| (m, table.replication_means(&dataset, m)))
            .collect();
        let means: BTreeMap<PsMethod, f64> = samples.iter().map(|(&m, s)| (m, stats::mean(s))).collect();
        let top = means.values().cloned().fold(f64::NEG_INFINITY, f64::max);
        // Highest mean among the PS methods; the first in method order wins ties.
        let challenger = methods
            .iter()
            .filter(|&&m| m != PsMethod::Baseline)
            .max_by(|a, b| means[a].total_cmp(&means[b]).then(b.cmp(a)))
            .copied();
        let kw = match challenger {
            Some(c) => Some((c, kruskal_wallis(&[samples[&PsMethod::Baseline].clone(), samples[&c].clone()])?)),
            None => None,
        };
        for &m in &methods {
            let (kw_h, significant) = match kw {
                Some((c, k)) if c == m => (Some(k.h), k.significant),
                _ => (None, false),
            };
            per_dataset.push(DatasetRow {
                dataset: dataset.clone(),
                ps_method: m,
                mean: means[&m],
                std: stats::std_dev(&samples[&m]),
                best: means[&m] == top,
                kw_h,
                significant,
            });
        }
    }

    let reduction = reduction_rows(&usable, &methods);
    let best_counts = best_counts(&table, &methods, &ds_methods);

    Ok(Report {
        alpha,
        z_alpha,
        tie_tolerance: tol,
        total_records: records.len(),
        excluded_records,
        dropped_blocks,
        absent_methods,
        n_blocks,
        win_tie_loss: wtl,
        ranks,
        q_alpha: q,
        critical_difference: cd,
        per_dataset,
        reduction,
        best_counts,
    })
}

fn reduction_rows(usable: &[&RunRecord], methods: &[PsMethod]) -> Vec<ReductionRow> {
    let base_time: BTreeMap<(&str, DsMethod, u32), f64> = usable
        .iter()
        .filter(|r| r.ps_method == PsMethod::Baseline)
        .map(|r| ((r.dataset.as_str(), r.ds_method, r.replication), r.generalization_seconds))
        .collect();
    methods
        .iter()
        .map(|&ps| {
            let rows: Vec<&&RunRecord> = usable.iter().filter(|r| r.ps_method == ps).collect();
            let red: Vec<f64> = rows.iter().map(|r| r.reduction_rate).collect();
            let after: Vec<f64> = rows.iter().map(|r| r.dsel_after as f64).collect();
            let time: Vec<f64> = rows
                .iter()
                .filter_map(|r| {
                    let b = base_time.get(&(r.dataset.as_str(), r.ds_method, r.replication))?;
                    (*b > 0.0 && r.generalization_seconds.is_finite()).then(|| 1.0 - r.generalization_seconds / b)
                })
                .collect();
            let m = |v: &[f64]| if v.is_empty() { f64::NAN } else { stats::mean(v) };
            ReductionRow {
                ps_method: ps,
                mean_reduction: m(&red),
                mean_time_reduction: m(&time),
                mean_dsel_after: m(&after),
            }
        })
        .collect()
}

fn best_counts(table: &ComparisonTable, methods: &[PsMethod], ds_methods: &[DsMethod]) -> Vec<BestCount> {
    let mut counts: BTreeMap<(String, PsMethod), usize> = BTreeMap::new();
    for scope in std::iter::once(None).chain(ds_methods.iter().map(Some)) {
        let name = scope.map_or("all".to_string(), |d| d.to_string());
        for &m in methods {
            counts.insert((name.clone(), m), 0);
        }
        for (dataset, ds) in table.cells() {
            if scope.is_some_and(|s| *s != ds) {
                continue;
            }
            let means: Vec<f64> = methods
                .iter()
                .map(|&m| table.cell_mean(&dataset, ds, m).unwrap_or(f64::NEG_INFINITY))
                .collect();
            let top = means.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            for (&m, &v) in methods.iter().zip(&means) {
                if v == top {
                    *counts.get_mut(&(name.clone(), m)).expect("initialised above") += 1;
                }
            }
        }
    }
    counts
        .into_iter()
        .map(|((scope, ps_method), count)| BestCount {
            scope,
            ps_method,
            count,
        })
        .collect()
}

fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| Error::Serialization(format!("{}: {e}", path.display())))?;
    for r in rows {
        w.serialize(r).map_err(|e| Error::Serialization(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

impl Report {
    /// Plain-text summary of every table.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "records: {} total, {} excluded (failed cells)", self.total_records, self.excluded_records);
        let _ = writeln!(s, "blocks: {} used, {} dropped as incomplete", self.n_blocks, self.dropped_blocks);
        if !self.absent_methods.is_empty() {
            let names: Vec<&str> = self.absent_methods.iter().map(|m| m.as_str()).collect();
            let _ = writeln!(s, "no usable records (left out): {}", names.join(", "));
        }
        let _ = writeln!(s, "alpha = {}, z = {}, tie tolerance = {}", self.alpha, self.z_alpha, self.tie_tolerance);
        let _ = writeln!(s, "\nwin/tie/loss against Baseline:");
        for r in &self.win_tie_loss {
            let _ = writeln!(
                s,
                "  {:<8} {:<8} {:>4} / {:>4} / {:>4}  n={:<4} n_c={} ({:.3}){}",
                r.ps_method.as_str(),
                r.scope,
                r.wins,
                r.ties,
                r.losses,
                r.n_exp,
                r.n_c_reported,
                r.n_c,
                if r.significant { "  significant" } else { "" }
            );
        }
        let _ = writeln!(s, "\naverage ranks (q = {:.3}, CD = {:.4}):", self.q_alpha, self.critical_difference);
        let mut ranks = self.ranks.clone();
        ranks.sort_by(|a, b| a.avg_rank.total_cmp(&b.avg_rank));
        for r in &ranks {
            let _ = writeln!(
                s,
                "  {:<8} {:.4}{}",
                r.ps_method.as_str(),
                r.avg_rank,
                if r.worse_than_best { "  (worse than best by > CD)" } else { "" }
            );
        }
        let _ = writeln!(s, "\nper-dataset accuracy (mean ± std; • = differs from Baseline):");
        for r in &self.per_dataset {
            let _ = writeln!(
                s,
                "  {:<24} {:<8} {:.4} ± {:.4}{}{}",
                r.dataset,
                r.ps_method.as_str(),
                r.mean,
                r.std,
                if r.best { " *" } else { "" },
                if r.significant { " •" } else { "" }
            );
        }
        let _ = writeln!(s, "\nreduction:");
        for r in &self.reduction {
            let _ = writeln!(
                s,
                "  {:<8} dataset {:>6.2}%  generalization time {:>7.2}%  |DSEL'| {:.1}",
                r.ps_method.as_str(),
                100.0 * r.mean_reduction,
                100.0 * r.mean_time_reduction,
                r.mean_dsel_after
            );
        }
        let _ = writeln!(s, "\nbest counts (all DS methods):");
        for r in self.best_counts.iter().filter(|b| b.scope == "all") {
            let _ = writeln!(s, "  {:<8} {}", r.ps_method.as_str(), r.count);
        }
        s
    }

    /// Writes the CSV tables and `summary.txt` into `dir`.
    pub fn write_dir(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        write_csv(&dir.join("win_tie_loss.csv"), &self.win_tie_loss)?;
        write_csv(&dir.join("ranks.csv"), &self.ranks)?;
        write_csv(&dir.join("per_dataset.csv"), &self.per_dataset)?;
        write_csv(&dir.join("reduction.csv"), &self.reduction)?;
        write_csv(&dir.join("best_counts.csv"), &self.best_counts)?;
        #[derive(Serialize)]
        struct Cd {
            alpha: f64,
            methods: usize,
            blocks: usize,
            q_alpha: f64,
            critical_difference: f64,
        }
        write_csv(
            &dir.join("critical_difference.csv"),
            &[Cd {
                alpha: self.alpha,
                methods: self.ranks.len(),
                blocks: self.n_blocks,
                q_alpha: self.q_alpha,
                critical_difference: self.critical_difference,
            }],
        )?;
        let path = dir.join("summary.txt");
        std::fs::write(&path, self.summary()).map_err(|e| Error::io(&path, e))
    }
}
