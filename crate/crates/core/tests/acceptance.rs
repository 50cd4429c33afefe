//! Acceptance suite. Each test prints one `criterion N: PASS|FAIL` line; run with
//! `cargo test -p bcinc --release --test acceptance -- --nocapture --test-threads=1`
//! to see them in order.

mod common;

use std::time::Instant;

use bcinc::eval::{run_dynamic, top_k, DynamicsScenario, HarnessConfig};
use bcinc::generate::dorogovtsev_mendes;
use bcinc::{
    brandes_exact, compute_sample_size, estimate_vd, rk_estimate, rk_initialize, DynamicBc,
    EdgeUpdate, Graph, SamplingParams,
};
use common::fuzz::{random_batch, repair_trial};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn verdict(n: u32, name: &str, pass: bool, detail: String) {
    println!("criterion {n}: {} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {n} ({name}) failed: {detail}");
}

#[test]
fn criterion_01_exact_oracle() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst = 0.0f64;
    for i in 0..200 {
        let n = rng.gen_range(2..=8);
        let g = random_connected(n, rng.gen_range(0..=n * 2), i % 2 == 1, 3, &mut rng);
        let fast = brandes_exact(&g).unwrap();
        let slow = brute_betweenness(&g);
        for (a, b) in fast.iter().zip(&slow) {
            worst = worst.max((a - b).abs());
        }
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        1,
        "brandes vs pair enumeration",
        worst <= 1e-12 && secs < 10.0,
        format!("200 graphs, max |diff| {worst:.1e}, {secs:.2}s"),
    );
}

/// Runs the repair fuzz once for both variants; criteria 2 and 9 read from it.
fn repair_fuzz(weighted: bool, trials: usize, seed: u64) -> (usize, usize, Vec<String>, f64) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut mismatches, mut calls) = (0, 0);
    let mut witness_failures = Vec::new();
    for trial in 0..trials {
        for o in repair_trial(weighted, 300, &mut rng) {
            calls += 1;
            if o.mismatch.is_some() {
                mismatches += 1;
            }
            for problem in [&o.locality, &o.witness, &o.colors].into_iter().flatten() {
                witness_failures.push(format!("trial {trial}: {problem}"));
            }
        }
    }
    (mismatches, calls, witness_failures, start.elapsed().as_secs_f64())
}

#[test]
fn criterion_02_sssp_update_equivalence() {
    let (bad_u, calls_u, _, secs_u) = repair_fuzz(false, 1000, 201);
    let (bad_w, calls_w, _, secs_w) = repair_fuzz(true, 1000, 202);
    let secs = secs_u + secs_w;
    verdict(
        2,
        "incremental sssp equals recomputation",
        bad_u == 0 && bad_w == 0 && secs < 60.0,
        format!(
            "unweighted {bad_u}/{calls_u} mismatches, weighted {bad_w}/{calls_w} mismatches, {secs:.2}s"
        ),
    );
}

#[test]
fn criterion_03_epsilon_guarantee() {
    let (eps, runs) = (0.05, 20);
    let mut within = 0;
    let mut worst_mean = 0.0f64;
    let mut worst_max = 0.0f64;
    for seed in 0..runs {
        let base = dorogovtsev_mendes(500, false, seed).unwrap();
        let cfg = HarnessConfig {
            epsilon: eps,
            delta: 0.1,
            seed: 1000 + seed,
            removal_fraction: 0.05,
            batch_size: 8,
            batch_count: 5,
            ..HarnessConfig::default()
        };
        let run = run_dynamic(&base, &cfg).unwrap();
        let mut run_ok = true;
        for rec in &run.records {
            let acc = rec.accuracy.as_ref().unwrap();
            worst_mean = worst_mean.max(acc.mean_abs_error);
            worst_max = worst_max.max(acc.max_abs_error);
            run_ok &= acc.max_abs_error <= eps;
        }
        within += usize::from(run_ok);
    }
    verdict(
        3,
        "epsilon guarantee under batches",
        within >= 18 && worst_mean <= eps / 5.0,
        format!("{within}/20 runs within eps, worst max err {worst_max:.4}, worst mean err {worst_mean:.5}"),
    );
}

#[test]
fn criterion_04_sampling_distribution() {
    // (a) s=0 reaches t=4 via 1-3, 2-3 and 5-6
    let g = Graph::from_pairs(7, [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (0, 5), (5, 6), (6, 4)]).unwrap();
    let dag = bcinc::compute_extended_sssp(&g, 0).unwrap();
    assert_eq!(dag.sigma(4).to_f64(), 3.0);
    let mut rng = ChaCha8Rng::seed_from_u64(401);
    let mut counts = [0u64; 3];
    for _ in 0..100_000 {
        let p = bcinc::sample_shortest_path(&g, &dag, 4, &mut rng).unwrap();
        let slot = match p.as_slice() {
            [3, 1] => 0,
            [3, 2] => 1,
            [6, 5] => 2,
            other => panic!("not a shortest path: {other:?}"),
        };
        counts[slot] += 1;
    }
    let (stat_a, crit_a, ok_a) = chi_square(&counts, &[1.0 / 3.0; 3], 0.001);

    // (b) a-b, a-c, b-d plus c-d: sigma(a, d) goes 1 -> 2
    let g = Graph::from_pairs(4, [(0, 1), (0, 2), (1, 3)]).unwrap();
    let params = SamplingParams::new(0.1, 0.1, 4).unwrap();
    let mut halves = [0u64; 2];
    for seed in 0..100_000 {
        let mut bc = DynamicBc::from_pairs(g.clone(), params, &[(0, 3)], seed).unwrap();
        bc.update_batch(&[EdgeUpdate::insert(2, 3)]).unwrap();
        match bc.pool().entries()[0].path() {
            [1] => halves[0] += 1,
            [2] => halves[1] += 1,
            other => panic!("not a shortest path: {other:?}"),
        }
    }
    let (stat_b, crit_b, ok_b) = chi_square(&halves, &[0.5, 0.5], 0.001);
    verdict(
        4,
        "path sampling distribution",
        ok_a && ok_b,
        format!(
            "(a) {counts:?} chi2 {stat_a:.2} <= {crit_a:.2}; (b) {halves:?} chi2 {stat_b:.2} <= {crit_b:.2}"
        ),
    );
}

#[test]
fn criterion_05_score_consistency_soak() {
    let mut failures = Vec::new();
    let mut events = 0;
    for weighted in [false, true] {
        let mut rng = ChaCha8Rng::seed_from_u64(501 + weighted as u64);
        let g = dorogovtsev_mendes(2000, weighted, 5).unwrap();
        let mut bc = DynamicBc::new(g, 0.1, 0.1, 502).unwrap();
        let r = bc.sample_count();
        if let Err(e) = bc.check_consistency() {
            failures.push(format!("init: {e}"));
        }
        for i in 0..100 {
            let size = rng.gen_range(1..=199);
            let batch = random_batch(bc.graph(), size, &mut rng);
            events += bc.update_batch(&batch).unwrap().applied;
            if let Err(e) = bc.check_consistency() {
                failures.push(format!("batch {i}: {e}"));
            }
            if bc.sample_count() != r {
                failures.push(format!("batch {i}: pool size changed"));
            }
        }
    }
    verdict(
        5,
        "score equals pool membership",
        failures.is_empty(),
        format!("2 soaks of 100 batches, {events} updates applied, {} inconsistencies", failures.len()),
    );
}

/// Standalone formula, evaluated without the library.
fn sample_size_by_hand(eps: f64, delta: f64, vd: usize) -> usize {
    let log_term = if vd > 2 { (vd as f64 - 2.0).log2().floor() } else { 0.0 };
    (0.5 / (eps * eps) * (log_term + 1.0 + (1.0 / delta).ln())).ceil() as usize
}

#[test]
fn criterion_06_sample_size() {
    let r = |e: f64, d: f64, v: usize| compute_sample_size(&SamplingParams::new(e, d, v).unwrap()).unwrap();
    let a = r(0.05, 0.1, 25);
    let b = r(0.025, 0.1, 25);
    let mut rng = ChaCha8Rng::seed_from_u64(601);
    let mut violations = 0;
    for _ in 0..1000 {
        let eps = rng.gen_range(0.005..0.5);
        let delta = rng.gen_range(0.001..0.5);
        let vd = rng.gen_range(1..100_000);
        let base = r(eps, delta, vd);
        let f = rng.gen_range(0.5..0.999);
        if r(eps * f, delta, vd) < base || r(eps, delta * f, vd) < base || r(eps, delta, vd + rng.gen_range(1..500)) < base {
            violations += 1;
        }
        if base != sample_size_by_hand(eps, delta, vd) {
            violations += 1;
        }
    }
    verdict(
        6,
        "sample size",
        a == 1461 && b == 5843 && violations == 0,
        format!("r(25, 0.05, 0.1) = {a}, r(25, 0.025, 0.1) = {b}, {violations} violations in 1000-point sweep"),
    );
}

#[test]
fn criterion_07_vd_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(701);
    let mut below = 0;
    let mut slack = 0usize;
    for _ in 0..100 {
        let n = rng.gen_range(2..=200);
        let g = random_connected(n, rng.gen_range(0..=n), false, 1, &mut rng);
        let exact = exact_vd(&g);
        let est = estimate_vd(&g, &mut rng).unwrap();
        if est < exact {
            below += 1;
        }
        slack = slack.max(est.saturating_sub(exact));
    }
    verdict(
        7,
        "vertex diameter upper bound",
        below == 0,
        format!("100 graphs, {below} underestimates, largest overestimate {slack}"),
    );
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    xs[xs.len() / 2]
}

#[test]
fn criterion_08_directional_speedup() {
    let start = Instant::now();
    // 2n - 3 edges, so n = 20001 gives m = 39999
    let base = dorogovtsev_mendes(20_001, false, 801).unwrap();
    let (mut init, mut one, mut many) = (Vec::new(), Vec::new(), Vec::new());
    let mut r = 0;
    for run in 0..5u64 {
        // 257 edges taken out: one to put back alone, then 256 together
        let scenario = DynamicsScenario::build(&base, 0.01, 257, 1, 810 + run).unwrap();
        let removed = &scenario.batches[0];
        let params = {
            let mut rng = ChaCha8Rng::seed_from_u64(run);
            let vd = estimate_vd(&scenario.reduced, &mut rng).unwrap();
            SamplingParams::new(0.05, 0.1, vd).unwrap()
        };
        let t = Instant::now();
        let fresh = rk_initialize(&scenario.reduced, &params, &mut ChaCha8Rng::seed_from_u64(run));
        init.push(t.elapsed().as_secs_f64());
        drop(fresh);

        let mut bc = DynamicBc::new(scenario.reduced.clone(), 0.05, 0.1, run).unwrap();
        r = bc.sample_count();
        let t = Instant::now();
        bc.update_batch(&removed[..1]).unwrap();
        one.push(t.elapsed().as_secs_f64());
        let t = Instant::now();
        bc.update_batch(&removed[1..]).unwrap();
        many.push(t.elapsed().as_secs_f64());
    }
    let (init, one, many) = (median(init), median(one), median(many));
    let (s1, s256) = (init / one, init / many);
    let secs = start.elapsed().as_secs_f64();
    verdict(
        8,
        "update faster than recomputation",
        s1 >= 10.0 && s256 >= 2.0 && secs < 300.0,
        format!(
            "m = {}, r = {r}: init {init:.3}s, |b|=1 {one:.4}s ({s1:.1}x), |b|=256 {many:.3}s ({s256:.1}x), {secs:.0}s total",
            base.edge_count()
        ),
    );
}

#[test]
fn criterion_09_complexity_witness() {
    let (_, calls, failures, _) = repair_fuzz(false, 1000, 201);
    verdict(
        9,
        "unweighted repair work and write set",
        failures.is_empty(),
        format!("{calls} repair calls, {} violations{}", failures.len(), failures.first().map(|f| format!(", first: {f}")).unwrap_or_default()),
    );
}

#[test]
fn criterion_10_rank_preservation() {
    let g = dorogovtsev_mendes(1000, false, 1001).unwrap();
    let exact_top = top_k(&brandes_exact(&g).unwrap(), 10);
    let mut overlaps = Vec::new();
    for seed in 0..20 {
        let mut rng = ChaCha8Rng::seed_from_u64(1010 + seed);
        let vd = estimate_vd(&g, &mut rng).unwrap();
        let params = SamplingParams::new(0.01, 0.1, vd).unwrap();
        let approx = rk_estimate(&g, &params, &mut rng).unwrap().scores();
        let top = top_k(&approx, 10);
        overlaps.push(top.iter().filter(|v| exact_top.contains(v)).count());
    }
    let good = overlaps.iter().filter(|&&o| o >= 8).count();
    verdict(
        10,
        "top-10 preserved",
        good >= 18,
        format!("{good}/20 runs with >= 8 of the exact top 10, overlaps {overlaps:?}"),
    );
}
