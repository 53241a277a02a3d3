//! Acceptance criteria. Each criterion prints one line:
//!
//! `[PASS] <n> <name>: <measured> (<tolerance>)`
//!
//! and the process exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dsel_edit::data::{euclidean, stratified_holdout, Scaler, SplitSpec};
use dsel_edit::dynselect::DsMethod;
use dsel_edit::edition::{build_rng_graph, enn_edit, rmhc_edit, RmhcConfig};
use dsel_edit::harness::{measure_generalization_time, report, run_experiment, DatasetEntry, ExperimentConfig};
use dsel_edit::pool::{bagging_pool, PerceptronConfig};
use dsel_edit::ps::{select_prototypes, PsParams};
use dsel_edit::search::{chc_edit, gga_edit, ssma_edit, FitnessEvaluator, GaConfig, SearchOutcome};
use dsel_edit::stats::{
    bonferroni_dunn_cd, friedman_ranks, kruskal_wallis, q_alpha, reported_critical, sign_test_critical,
    win_tie_loss, ComparisonTable,
};
use dsel_edit::synth::{generate, SynthKind, SynthSpec};
use dsel_edit::{Dataset, PsMethod};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn random_dataset(rng: &mut ChaCha8Rng, n: usize, dims: usize, grid: bool) -> Dataset {
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| {
            (0..dims)
                .map(|_| {
                    if grid {
                        rng.random_range(-3..4) as f64
                    } else {
                        rng.random_range(-1.0..1.0)
                    }
                })
                .collect()
        })
        .collect();
    let labels = (0..n).map(|_| rng.random_range(0..2)).collect();
    Dataset::from_rows("random", &rows, labels, Some(2)).unwrap()
}

fn dist(d: &Dataset, i: usize, j: usize) -> f64 {
    euclidean(d.row(i), d.row(j)).unwrap()
}

// ---------------------------------------------------------------- oracles

/// Edge (i, j) iff d(i, j) ≤ max(d(i, k), d(j, k)) for every other k.
fn rng_oracle(d: &Dataset) -> Vec<(usize, usize)> {
    let n = d.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let dij = dist(d, i, j);
            if (0..n)
                .filter(|&k| k != i && k != j)
                .all(|k| dij <= dist(d, i, k).max(dist(d, j, k)))
            {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// Rows misclassified by leave-one-out majority kNN (nearest first, lower
/// index on equal distance; two classes and odd k, so no vote ties).
fn enn_oracle_removed(d: &Dataset, k: usize) -> Vec<usize> {
    (0..d.len())
        .filter(|&i| {
            let mut others: Vec<(f64, usize)> = (0..d.len()).filter(|&j| j != i).map(|j| (dist(d, i, j), j)).collect();
            others.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            let ones = others[..k].iter().filter(|(_, j)| d.label(*j) == 1).count();
            let vote = usize::from(2 * ones > k);
            vote != d.label(i)
        })
        .collect()
}

/// Fitness by brute force: every row is classified by its nearest retained
/// row other than itself (lower index on equal distance); α = 0.5.
fn fitness_oracle(d: &Dataset, bits: &[bool]) -> f64 {
    let n = d.len();
    let kept: Vec<usize> = (0..n).filter(|&i| bits[i]).collect();
    if kept.is_empty() {
        return f64::NEG_INFINITY;
    }
    let correct = (0..n)
        .filter(|&i| {
            kept.iter()
                .filter(|&&j| j != i)
                .map(|&j| (dist(d, i, j), j))
                .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)))
                .is_some_and(|(_, j)| d.label(j) == d.label(i))
        })
        .count();
    0.5 * correct as f64 / n as f64 + 0.5 * (1.0 - kept.len() as f64 / n as f64)
}

fn exhaustive_optimum(d: &Dataset) -> f64 {
    let n = d.len();
    (1u32..1 << n)
        .map(|code| fitness_oracle(d, &(0..n).map(|i| code >> i & 1 == 1).collect::<Vec<_>>()))
        .fold(f64::NEG_INFINITY, f64::max)
}

fn one_nn_accuracy(reference: &Dataset, test: &Dataset) -> f64 {
    let hits = test
        .rows()
        .zip(test.labels())
        .filter(|(x, &y)| {
            let (_, j) = (0..reference.len())
                .map(|j| (euclidean(x, reference.row(j)).unwrap(), j))
                .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)))
                .unwrap();
            reference.label(j) == y
        })
        .count();
    hits as f64 / test.len() as f64
}

/// Nine class-0 points on a unit circle and one class-1 point at its centre.
fn planted_ten() -> Dataset {
    let mut rows: Vec<Vec<f64>> = (0..9)
        .map(|i| {
            let t = i as f64 * std::f64::consts::TAU / 9.0;
            vec![t.cos(), t.sin()]
        })
        .collect();
    rows.push(vec![0.0, 0.0]);
    let mut labels = vec![0; 9];
    labels.push(1);
    Dataset::from_rows("planted10", &rows, labels, None).unwrap()
}

/// Three class-0 points near the origin, two class-1 points far away and a
/// mislabelled class-1 point among the class-0 ones.
fn planted_six() -> Dataset {
    let rows = vec![
        vec![0.0, 0.0],
        vec![0.4, 0.1],
        vec![0.1, 0.5],
        vec![5.0, 5.0],
        vec![5.3, 4.8],
        vec![0.2, 0.2],
    ];
    Dataset::from_rows("planted6", &rows, vec![0, 0, 0, 1, 1, 1], None).unwrap()
}

// -------------------------------------------------------------- criteria

fn c1_sign_test() -> Outcome {
    let n180 = sign_test_critical(180, 1.645);
    let n30 = sign_test_critical(30, 1.645);
    let pass = reported_critical(n180) == 101.0 && reported_critical(n30) == 19.5;
    outcome(
        pass,
        format!(
            "n_c(180) = {n180:.4} -> {}, n_c(30) = {n30:.4} -> {} (exact after one-decimal rounding)",
            reported_critical(n180),
            reported_critical(n30)
        ),
    )
}

fn c2_rng_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut mismatches = 0;
    let mut edges = 0;
    for t in 0..100 {
        let n = rng.random_range(2..=60);
        let dims = rng.random_range(1..=5);
        let d = random_dataset(&mut rng, n, dims, t % 2 == 1);
        let fast = build_rng_graph(&d).unwrap().edges();
        let slow = rng_oracle(&d);
        edges += slow.len();
        if fast != slow {
            mismatches += 1;
        }
    }
    outcome(
        mismatches == 0,
        format!("{mismatches} mismatching graphs of 100 ({edges} oracle edges; tolerance 0)"),
    )
}

fn c3_enn() -> Outcome {
    let d = planted_ten();
    let mask = enn_edit(&d, 3).unwrap();
    let removed: Vec<usize> = (0..d.len()).filter(|&i| !mask.get(i)).collect();
    let oracle = enn_oracle_removed(&d, 3);
    let planted_ok = removed == vec![9] && oracle == removed;

    let mut improved = 0;
    let mut gains = Vec::new();
    for seed in 0..20 {
        let data = generate(&SynthSpec::with_default_noise(SynthKind::GaussianOverlap, 500, seed)).unwrap();
        let (_, dsel, test) = stratified_holdout(&data, &SplitSpec::standard(seed + 100)).unwrap();
        let before = one_nn_accuracy(&dsel, &test);
        let edited = enn_edit(&dsel, 3).unwrap().apply(&dsel).unwrap();
        let after = one_nn_accuracy(&edited, &test);
        gains.push(after - before);
        if after >= before {
            improved += 1;
        }
    }
    let mean_gain = gains.iter().sum::<f64>() / gains.len() as f64;
    outcome(
        planted_ok && improved >= 15,
        format!(
            "planted removal {removed:?} (oracle {oracle:?}); 1NN after ENN >= before in {improved}/20 seeds, \
             mean gain {mean_gain:+.4} (need >= 15/20)"
        ),
    )
}

fn monotone(o: &SearchOutcome) -> bool {
    o.trace.windows(2).all(|w| w[1].best_fitness >= w[0].best_fitness)
}

fn c4_oracle_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut violations = Vec::new();
    let mut worst_gap: f64 = 0.0;
    for t in 0..50u64 {
        let n = rng.random_range(4..=12);
        let dims = rng.random_range(1..=3);
        let d = random_dataset(&mut rng, n, dims, false);
        let opt = exhaustive_optimum(&d);
        let ev = FitnessEvaluator::new(&d, 0.5).unwrap();
        let runs = [
            ("GGA", gga_edit(&ev, &GaConfig::gga(t)).unwrap()),
            ("CHC", chc_edit(&ev, &GaConfig::chc(t)).unwrap()),
            ("SSMA", ssma_edit(&ev, &GaConfig::ssma(t)).unwrap()),
            ("RMHC", rmhc_edit(&ev, &RmhcConfig::new(t)).unwrap()),
        ];
        for (name, o) in runs {
            let recomputed = fitness_oracle(&d, o.mask.bits());
            worst_gap = worst_gap.max(opt - o.fitness);
            if o.fitness > opt + 1e-12 || (recomputed - o.fitness).abs() > 1e-12 || !monotone(&o) {
                violations.push(format!("{name}@{t}"));
            }
        }
    }
    let six = planted_six();
    let opt6 = exhaustive_optimum(&six);
    let ev = FitnessEvaluator::new(&six, 0.5).unwrap();
    let ssma6 = ssma_edit(&ev, &GaConfig::ssma(6)).unwrap();
    let gap6 = opt6 - ssma6.fitness;
    outcome(
        violations.is_empty() && gap6 <= 0.02,
        format!(
            "{} bound/trace violations over 50 datasets x 4 searchers (largest shortfall {worst_gap:.4}); \
             SSMA on 6-point set {:.4} vs optimum {opt6:.4} (gap {gap6:.4}, need <= 0.02)",
            violations.len(),
            ssma6.fitness
        ),
    )
}

fn c5_reduction_direction() -> Outcome {
    let params = PsParams::default();
    let mut retained: BTreeMap<PsMethod, Vec<f64>> = BTreeMap::new();
    let methods = [PsMethod::Ssma, PsMethod::Gga, PsMethod::Chc, PsMethod::Enn, PsMethod::Rng];
    for seed in 0..3 {
        let d = generate(&SynthSpec::with_default_noise(SynthKind::SeparableGaussians, 400, seed)).unwrap();
        for m in methods {
            // The technique's own mask, before the downstream size guard.
            let o = select_prototypes(m, &d, &params, 50 + seed).unwrap();
            retained.entry(m).or_default().push(o.raw_retained as f64 / d.len() as f64);
        }
    }
    let mean = |ms: &[PsMethod]| {
        let v: Vec<f64> = ms.iter().flat_map(|m| retained[m].clone()).collect();
        v.iter().sum::<f64>() / v.len() as f64
    };
    let hybrid = mean(&[PsMethod::Ssma, PsMethod::Gga, PsMethod::Chc]);
    let edition = mean(&[PsMethod::Enn, PsMethod::Rng]);
    let per: Vec<String> = methods
        .iter()
        .map(|m| format!("{m} {:.3}", retained[m].iter().sum::<f64>() / 3.0))
        .collect();
    outcome(
        hybrid <= 0.15 && edition >= 0.50,
        format!(
            "retained fraction hybrid {hybrid:.4} (need <= 0.15), edition {edition:.4} (need >= 0.50); {}",
            per.join(", ")
        ),
    )
}

fn c6_pipeline() -> Outcome {
    let mut cfg = ExperimentConfig {
        master_seed: 6,
        replications: 10,
        pool_size: 100,
        k: 7,
        ps_methods: vec![PsMethod::Rng],
        ..ExperimentConfig::default()
    };
    cfg.datasets.push(DatasetEntry::synthetic(SynthSpec::with_default_noise(
        SynthKind::Banana,
        1000,
        6,
    )));
    let recs = match run_experiment(&cfg) {
        Ok(r) => r,
        Err(e) => return outcome(false, format!("experiment failed: {e}")),
    };
    let mut worst = f64::INFINITY;
    let mut lines = Vec::new();
    for ds in DsMethod::ALL {
        let mean = |ps: PsMethod| {
            let v: Vec<f64> = recs
                .iter()
                .filter(|r| r.ds_method == ds && r.ps_method == ps && r.status.is_ok())
                .map(|r| r.accuracy)
                .collect();
            (v.iter().sum::<f64>() / v.len() as f64, v.len())
        };
        let (b, nb) = mean(PsMethod::Baseline);
        let (r, nr) = mean(PsMethod::Rng);
        if nb != 10 || nr != 10 {
            return outcome(false, format!("{ds}: {nb} baseline / {nr} RNG usable records, expected 10"));
        }
        worst = worst.min(r - b);
        lines.push(format!("{ds} {r:.4}/{b:.4}"));
    }
    let rep = match report(&recs, 0.05) {
        Ok(r) => r,
        Err(e) => return outcome(false, format!("report failed: {e}")),
    };
    let dir = tempfile::tempdir().unwrap();
    let written = rep.write_dir(dir.path()).is_ok();
    let files = [
        "win_tie_loss.csv",
        "ranks.csv",
        "critical_difference.csv",
        "per_dataset.csv",
        "reduction.csv",
        "best_counts.csv",
        "summary.txt",
    ];
    let complete = written
        && files.iter().all(|f| dir.path().join(f).exists())
        && rep.win_tie_loss.len() == 1 + DsMethod::ALL.len()
        && rep.ranks.len() == 2
        && rep.critical_difference.is_finite()
        && rep.reduction.len() == 2
        && rep.excluded_records == 0;
    outcome(
        worst >= -0.01 && complete,
        format!(
            "min(RNG - Baseline) over DS methods {worst:+.4} (need >= -0.01); reports complete: {complete}; \
             RNG/Baseline {}",
            lines.join(", ")
        ),
    )
}

fn c7_timing() -> Outcome {
    if cfg!(debug_assertions) {
        return outcome(true, "SKIPPED: debug build".into());
    }
    let spec = |n, seed| SynthSpec::with_default_noise(SynthKind::Banana, n, seed);
    let train = generate(&spec(2000, 70)).unwrap();
    let dsel = generate(&spec(5000, 71)).unwrap();
    let test = generate(&spec(500, 72)).unwrap();
    let scaler = Scaler::fit(&train);
    let (train, dsel, test) = (
        scaler.transform(&train).unwrap(),
        scaler.transform(&dsel).unwrap(),
        scaler.transform(&test).unwrap(),
    );
    let pool = bagging_pool(&train, 100, &PerceptronConfig::default(), 7).unwrap();
    let t = Instant::now();
    let edited = select_prototypes(PsMethod::Ssma, &dsel, &PsParams::default(), 7).unwrap();
    let ps_secs = t.elapsed().as_secs_f64();
    if edited.guarded {
        return outcome(false, format!("SSMA kept {} rows; size guard restored DSEL", edited.raw_retained));
    }
    let dsel_prime = edited.mask.apply(&dsel).unwrap();
    let (mut base, mut after) = (0.0, 0.0);
    for ds in DsMethod::ALL {
        base += measure_generalization_time(&pool, &dsel, &test, ds, 7).unwrap().as_secs_f64();
        after += measure_generalization_time(&pool, &dsel_prime, &test, ds, 7).unwrap().as_secs_f64();
    }
    let ratio = after / base;
    outcome(
        ratio <= 0.60,
        format!(
            "SSMA kept {}/5000 rows in {ps_secs:.1}s; generalization time {after:.4}s vs {base:.4}s, \
             ratio {ratio:.3} (need <= 0.60)",
            dsel_prime.len()
        ),
    )
}

fn c8_statistics() -> Outcome {
    let mut failures: Vec<&str> = Vec::new();
    let mut check = |ok: bool, what: &'static str| {
        if !ok {
            failures.push(what);
        }
    };
    let close = |a: f64, b: f64, tol: f64| (a - b).abs() <= tol;
    let ds = DsMethod::Ola;

    // Friedman: identical table -> (k + 1) / 2 everywhere.
    let mut t = ComparisonTable::new();
    for b in ["b0", "b1", "b2"] {
        for m in [PsMethod::Baseline, PsMethod::Enn, PsMethod::Rng, PsMethod::Ssma] {
            t.insert(b, ds, m, 0, 0.75).unwrap();
        }
    }
    check(friedman_ranks(&t).unwrap().values().all(|&r| r == 2.5), "friedman identical");

    // Two methods, two blocks, A better in both.
    let mut t = ComparisonTable::new();
    for b in ["b0", "b1"] {
        t.insert(b, ds, PsMethod::Enn, 0, 0.9).unwrap();
        t.insert(b, ds, PsMethod::Baseline, 0, 0.8).unwrap();
    }
    let r = friedman_ranks(&t).unwrap();
    check(r[&PsMethod::Enn] == 1.0 && r[&PsMethod::Baseline] == 2.0, "friedman 2x2");

    // Three methods, a tie in the second block:
    // b0: ENN .9 (1), RNG .8 (2), Base .7 (3); b1: ENN .6 (3), RNG .8 (1.5), Base .8 (1.5).
    let mut t = ComparisonTable::new();
    for (b, e, r, base) in [("b0", 0.9, 0.8, 0.7), ("b1", 0.6, 0.8, 0.8)] {
        t.insert(b, ds, PsMethod::Enn, 0, e).unwrap();
        t.insert(b, ds, PsMethod::Rng, 0, r).unwrap();
        t.insert(b, ds, PsMethod::Baseline, 0, base).unwrap();
    }
    let r = friedman_ranks(&t).unwrap();
    check(
        r[&PsMethod::Enn] == 2.0 && r[&PsMethod::Rng] == 1.75 && r[&PsMethod::Baseline] == 2.25,
        "friedman mid-ranks",
    );
    check(close(r.values().sum::<f64>(), 6.0, 1e-12), "rank sum k(k+1)/2");

    // Win/tie/loss: identical, uniform +1 %, hand-counted.
    let mut same = ComparisonTable::new();
    let mut plus = ComparisonTable::new();
    for i in 0..5 {
        let b = format!("b{i}");
        let acc = 0.5 + i as f64 / 20.0;
        same.insert(&b, ds, PsMethod::Enn, 0, acc).unwrap();
        same.insert(&b, ds, PsMethod::Baseline, 0, acc).unwrap();
        plus.insert(&b, ds, PsMethod::Enn, 0, acc + 0.01).unwrap();
        plus.insert(&b, ds, PsMethod::Baseline, 0, acc).unwrap();
    }
    let w = win_tie_loss(&same, PsMethod::Enn, PsMethod::Baseline, 1e-4).unwrap();
    check((w.wins, w.ties, w.losses) == (0, 5, 0), "wtl identical");
    let w = win_tie_loss(&plus, PsMethod::Enn, PsMethod::Baseline, 0.0).unwrap();
    check((w.wins, w.n_exp()) == (5, 5), "wtl +1%");
    let mut four = ComparisonTable::new();
    for (b, c, base) in [("b0", 0.8, 0.7), ("b1", 0.7, 0.7), ("b2", 0.6, 0.65), ("b3", 0.9, 0.89995)] {
        four.insert(b, ds, PsMethod::Enn, 0, c).unwrap();
        four.insert(b, ds, PsMethod::Baseline, 0, base).unwrap();
    }
    let w = win_tie_loss(&four, PsMethod::Enn, PsMethod::Baseline, 1e-4).unwrap();
    check((w.wins, w.ties, w.losses) == (1, 2, 1), "wtl four cells");

    // Kruskal-Wallis.
    let kw = kruskal_wallis(&[vec![0.3, 0.5, 0.9], vec![0.3, 0.5, 0.9]]).unwrap();
    check(close(kw.h, 0.0, 1e-12) && !kw.significant, "kw identical");
    let kw = kruskal_wallis(&[vec![1.0, 2.0, 3.0], vec![10.0, 11.0, 12.0]]).unwrap();
    check(close(kw.h, 27.0 / 7.0, 1e-12) && close(kw.critical, 3.841, 1e-3) && kw.significant, "kw separated");
    let kw = kruskal_wallis(&[vec![0.5; 3], vec![0.5; 3], vec![0.5; 3]]).unwrap();
    check(kw.h == 0.0 && !kw.significant, "kw all tied");

    // Critical difference.
    check(close(bonferroni_dunn_cd(2, 6, 1.0), 0.408, 5e-4), "cd k=2");
    check(bonferroni_dunn_cd(7, 181, 2.638) < bonferroni_dunn_cd(7, 180, 2.638), "cd monotone");
    let cd = bonferroni_dunn_cd(7, 180, q_alpha(0.05, 7).unwrap());
    check(close(cd, 0.601, 5e-4), "cd k=7 n=180");

    outcome(
        failures.is_empty(),
        if failures.is_empty() {
            "Friedman, win/tie/loss, Kruskal-Wallis and CD toy tables all match (tolerance 1e-12, CD 5e-4)".into()
        } else {
            format!("mismatches: {failures:?}")
        },
    )
}

fn c9_determinism() -> Outcome {
    let mut cfg = ExperimentConfig {
        master_seed: 9,
        replications: 2,
        pool_size: 30,
        timing_repeats: 1,
        ..ExperimentConfig::default()
    };
    cfg.datasets.push(DatasetEntry::synthetic(SynthSpec::with_default_noise(
        SynthKind::Banana,
        400,
        9,
    )));
    cfg.datasets.push(DatasetEntry::synthetic(SynthSpec::with_default_noise(
        SynthKind::NoisyRing,
        300,
        9,
    )));
    let a = run_experiment(&cfg).unwrap();
    cfg.jobs = Some(1);
    let b = run_experiment(&cfg).unwrap();
    let same_keys = a.len() == b.len()
        && a.iter().zip(&b).all(|(x, y)| {
            (&x.dataset, x.ps_method, x.ds_method, x.replication, x.status)
                == (&y.dataset, y.ps_method, y.ds_method, y.replication, y.status)
        });
    let differing = a
        .iter()
        .zip(&b)
        .filter(|(x, y)| x.accuracy.to_bits() != y.accuracy.to_bits() || x.dsel_after != y.dsel_after)
        .count();
    outcome(
        same_keys && differing == 0 && a.len() == 2 * 2 * 7 * 6,
        format!(
            "{} records, {differing} differ bit-wise between two runs (default threads vs 1 job; tolerance 0)",
            a.len()
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("sign-test critical values", c1_sign_test),
        ("RNG graph equals the triple oracle", c2_rng_oracle),
        ("ENN planted point and 1NN effect", c3_enn),
        ("metaheuristic optimality bound", c4_oracle_bound),
        ("reduction-rate direction", c5_reduction_direction),
        ("end-to-end pipeline sanity", c6_pipeline),
        ("generalization-time ratio", c7_timing),
        ("statistics oracles", c8_statistics),
        ("determinism", c9_determinism),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = (i + 1).to_string();
        if !filter.is_empty() && !filter.iter().any(|f| *f == id || name.contains(f.as_str())) {
            continue;
        }
        let t = Instant::now();
        let o = run();
        println!(
            "[{}] {id} {name}: {} [{:.1}s]",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            t.elapsed().as_secs_f64()
        );
        if !o.pass {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("acceptance: {failed} criterion/criteria failed");
        std::process::exit(1);
    }
    println!("acceptance: all criteria passed");
}
