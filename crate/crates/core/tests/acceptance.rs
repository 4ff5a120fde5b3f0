//! The acceptance criteria, one test each. Every test prints a
//! `criterion N: PASS|FAIL ...` line before asserting.

use std::sync::OnceLock;
use std::time::Instant;

use sumdiff::harness::cli::run;
use sumdiff::harness::{
    bonferroni_gap, empirical_crossover, run_experiment, verify_bounds, CrossoverEstimate, ExperimentConfig,
    SizeSummary, Threads,
};
use sumdiff::predict::{alpha, exact_missing_sums_expectation, g_form, g_ratio, janson_missing_diffs_bounds};
use sumdiff::randmodel::{sample, PFamily};
use sumdiff::setcore::{
    classify, make_set, rep_histogram, sumset, diffset, tuple_statistic, HistKind, IntegerSet, LinearForm,
    SetClass,
};
use sumdiff::harness::trial_key;
use sumdiff::threshold::{classify_pair, solve_threshold, PairCase};

const SEED: u64 = 2024;

fn report(id: u32, pass: bool, detail: String) {
    println!("criterion {id}: {} {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {id}: {detail}");
}

fn simulate(n: u64, family: PFamily, trials: u64, forms: Vec<LinearForm>) -> SizeSummary {
    let mut cfg = ExperimentConfig::new(vec![n], family, trials, SEED);
    cfg.statistics.forms = forms;
    let run = run_experiment(&cfg).unwrap();
    assert!(run.aborted.is_none(), "{:?}", run.aborted);
    run.summary.get(n).unwrap().clone()
}

fn mean(s: &SizeSummary, column: &str) -> f64 {
    s.stats[column].mean
}

fn cli_field(args: &[&str], key: &str) -> String {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("sumdiff").chain(args.iter().copied()), &mut out, &mut err);
    assert_eq!(code, 0, "{}", String::from_utf8_lossy(&err));
    let out = String::from_utf8(out).unwrap();
    out.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
        .unwrap_or_else(|| panic!("no {key} in {out}"))
        .to_string()
}

#[test]
fn criterion_01_exhaustive_small_ranges() {
    let t = Instant::now();
    let at13: u64 = cli_field(&["enumerate", "--n", "13"], "sum_dominated").parse().unwrap();
    let secs = t.elapsed().as_secs_f64();
    let at14: u64 = cli_field(&["enumerate", "--n", "14"], "sum_dominated").parse().unwrap();
    let witness = classify(&make_set(&[0, 2, 3, 4, 7, 11, 12, 14], 0, 14).unwrap());
    let pass = at13 == 0 && at14 >= 1 && witness.label == SetClass::SumDominated && secs < 10.0;
    report(
        1,
        pass,
        format!("I_13: {at13} sum-dominated in {secs:.2}s; I_14: {at14}; witness {}", witness.label),
    );
}

#[test]
fn criterion_02_exact_missing_sums() {
    let (n, p) = (10_000u64, 0.5);
    let exact = exact_missing_sums_expectation(n, p).unwrap();
    let s = simulate(n, PFamily::explicit(p), 1_000, vec![]);
    let st = &s.stats["missing_sums"];
    let z = (st.mean - exact).abs() / st.std_error;
    let pass = (exact - 10.0).abs() <= 1e-6 && z <= 4.0;
    report(2, pass, format!("exact {exact:.9}; simulated {:.4} +- {:.4} ({z:.2} SE)", st.mean, st.std_error));
}

#[test]
fn criterion_03_janson_bracket() {
    let (n, p) = (10_000u64, 0.5);
    let b = janson_missing_diffs_bounds(n, p).unwrap();
    let s = simulate(n, PFamily::explicit(p), 1_000, vec![]);
    let st = &s.stats["missing_diffs"];
    let inside = st.mean >= b.lower && st.mean <= b.upper;
    let near_six = (b.lower - 6.0).abs() <= 0.2 && (b.upper - 6.0).abs() <= 0.2;
    let outside_by = if st.mean > b.upper { st.mean - b.upper } else { (b.lower - st.mean).max(0.0) };
    report(
        3,
        inside && near_six,
        format!(
            "bounds [{:.6}, {:.6}]; simulated {:.4} +- {:.4} ({:.2} SE outside)",
            b.lower,
            b.upper,
            st.mean,
            st.std_error,
            outside_by / st.std_error
        ),
    );
}

#[test]
fn criterion_04_sparse_regime() {
    let n = 1_000_000u64;
    let np = (n as f64).powf(0.3);
    let s = simulate(n, PFamily::power_law(1.0, 0.7), 100, vec![]);
    let ratio = mean(&s, "diff_sum_ratio");
    let scaled = mean(&s, "sumset_size") * 2.0 / (np * np);
    let pass = (1.96..=2.04).contains(&ratio) && (0.93..=1.07).contains(&scaled);
    report(4, pass, format!("mean D/S = {ratio:.4} (want [1.96, 2.04]); 2 S/(Np)^2 = {scaled:.4} (want [0.93, 1.07])"));
}

#[test]
fn criterion_05_critical_regime() {
    let n = 1_000_000u64;
    let s = simulate(n, PFamily::power_law(1.0, 0.5), 100, vec![]);
    let (gs, gd) = (g_ratio(0.5).unwrap(), g_ratio(1.0).unwrap());
    let rs = mean(&s, "sumset_size") / n as f64 / gs - 1.0;
    let rd = mean(&s, "diffset_size") / n as f64 / gd - 1.0;
    let pass = (gs - 0.4261226).abs() < 1e-7 && (gd - 0.7357589).abs() < 1e-7 && rs.abs() <= 0.02 && rd.abs() <= 0.02;
    report(5, pass, format!("S/N off by {:+.3}%, D/N off by {:+.3}%", 100.0 * rs, 100.0 * rd));
}

fn dense_summary() -> &'static SizeSummary {
    static CELL: OnceLock<SizeSummary> = OnceLock::new();
    CELL.get_or_init(|| simulate(1_000_000, PFamily::power_law(1.0, 0.3), 50, vec![LinearForm::binary(2, -1).unwrap()]))
}

#[test]
fn criterion_06_dense_regime() {
    let s = dense_summary();
    let p = (1e6f64).powf(-0.3);
    let scaled = mean(s, "missing_sums") * p * p / 4.0;
    let ratio = mean(s, "missing_sums") / mean(s, "missing_diffs");
    let pass = (0.95..=1.05).contains(&scaled) && (1.9..=2.1).contains(&ratio);
    report(6, pass, format!("S^c p^2/4 = {scaled:.4}; S^c/D^c = {ratio:.4}"));
}

#[test]
fn criterion_07_form_dense_regime() {
    let s = dense_summary();
    let p = (1e6f64).powf(-0.3);
    let scaled = mean(s, "missing_2_-1") * p * p / (2.0 * 2.0 * 1.0);
    report(7, (0.95..=1.05).contains(&scaled), format!("D_f^c p^2/4 = {scaled:.4} for 2x - y"));
}

#[test]
fn criterion_08_sharp_threshold() {
    let f = LinearForm::binary(4, -3).unwrap();
    let g = LinearForm::binary(5, -1).unwrap();
    let case = classify_pair(&f, &g).unwrap().case;
    let root = solve_threshold(&f, &g).unwrap();
    let grid: Vec<f64> = [0.7, 0.8, 0.9, 1.0, 1.1, 1.2, 1.3].iter().map(|s| s * root).collect();
    let t = Instant::now();
    let result = empirical_crossover(&f, &g, 1_000_000, &grid, 200, SEED, Threads::Auto).unwrap();
    let secs = t.elapsed().as_secs_f64();
    let freqs: Vec<String> = result.points.iter().map(|p| format!("{:.3}", p.frequency)).collect();
    let (pass, detail) = match result.estimate {
        CrossoverEstimate::Crossing { c } => {
            let rel = c / root - 1.0;
            (case == PairCase::CaseII && rel.abs() <= 0.10, format!("crossover {c:.5} vs root {root:.6} ({:+.2}%)", 100.0 * rel))
        }
        CrossoverEstimate::Inconclusive { reason } => (false, format!("inconclusive: {reason}")),
    };
    report(8, pass, format!("{case}; {detail}; frequencies [{}] in {secs:.0}s", freqs.join(", ")));
}

/// Pairs producing each value under `kind`, listed in value order, and the
/// number of k-tuples of distinct pairs agreeing on a value, counted one
/// tuple at a time.
fn brute_tuples(xs: &[i64], kind: HistKind, k: usize) -> u128 {
    let mut values: Vec<i64> = Vec::new();
    for (i, &x) in xs.iter().enumerate() {
        for (j, &y) in xs.iter().enumerate() {
            match kind {
                HistKind::Sum if i <= j => values.push(x + y),
                HistKind::Diff if i != j => values.push(x - y),
                HistKind::Form => values.push(2 * x - y),
                _ => {}
            }
        }
    }
    values.sort_unstable();
    let m = values.len();
    let mut count = 0u128;
    for a in 0..m {
        if k == 1 {
            count += 1;
            continue;
        }
        for b in a + 1..m {
            if values[b] != values[a] {
                break;
            }
            if k == 2 {
                count += 1;
                continue;
            }
            for c in b + 1..m {
                if values[c] != values[a] {
                    break;
                }
                count += 1;
            }
        }
    }
    count
}

#[test]
fn criterion_09_tuple_statistics_oracle() {
    let t = Instant::now();
    let form = LinearForm::binary(2, -1).unwrap();
    let mut mismatches = 0u64;
    for mask in 0u32..1 << 13 {
        let xs: Vec<i64> = (0..13).filter(|i| mask >> i & 1 == 1).collect();
        let a = make_set(&xs, 0, 12).unwrap();
        for kind in [HistKind::Sum, HistKind::Diff, HistKind::Form] {
            let f = (kind == HistKind::Form).then_some(&form);
            let h = rep_histogram(&a, kind, f).unwrap();
            for k in 1..=3u64 {
                if tuple_statistic(&h, k).unwrap() != brute_tuples(&xs, kind, k as usize) {
                    mismatches += 1;
                }
            }
        }
    }
    let secs = t.elapsed().as_secs_f64();
    report(9, mismatches == 0 && secs < 60.0, format!("{mismatches} mismatches over 8192 subsets x 3 kinds x k<=3 in {secs:.1}s"));
}

fn identity_violations(a: &IntegerSet) -> u64 {
    let mut bad = 0;
    let checks = [(HistKind::Sum, sumset(a).len() as u64, 0u64), (HistKind::Diff, diffset(a).len() as u64, u64::from(!a.is_empty()))];
    for (kind, size, base) in checks {
        let h = rep_histogram(a, kind, None).unwrap();
        let xs: Vec<u128> = (1..=3).map(|k| tuple_statistic(&h, k).unwrap()).collect();
        for m in 1..=3 {
            let (gap, bound) = bonferroni_gap(size, base, &xs, m);
            if gap.unsigned_abs() > bound {
                bad += 1;
            }
        }
    }
    bad
}

#[test]
fn criterion_10_deterministic_identities() {
    let families = [PFamily::power_law(1.0, 0.7), PFamily::power_law(1.0, 0.5), PFamily::power_law(1.0, 0.3)];
    let mut violations = 0u64;
    let mut sets = 0u64;
    for idx in 0..1_000u64 {
        let family = families[(idx % 3) as usize];
        let n = [200u64, 1_000, 5_000][(idx / 3 % 3) as usize];
        let p = sumdiff::randmodel::p_of(&family, n).unwrap();
        let a = sample(n, p, trial_key(SEED, n, idx)).unwrap();
        violations += identity_violations(&a);
        sets += 1;
    }

    let mut g_err = 0.0f64;
    for i in 0..1_000 {
        let x = 1e-4 * 1e7f64.powf(i as f64 / 999.0);
        g_err = g_err.max((g_form(1, 1, x).unwrap() - g_ratio(x).unwrap()).abs());
    }

    let mut worst = Vec::new();
    for (u, v) in [(2i64, 1i64), (3, 2), (5, 1)] {
        let a = alpha(u, v);
        let af = *a.numer() as f64 / *a.denom() as f64;
        let mut sup = 0.0f64;
        for i in 0..=1_000 {
            let c = 1e-3 * 100f64.powf(i as f64 / 1_000.0);
            let c2 = c * c;
            let r = (g_form(u, v, c2 / u as f64).unwrap() - (c2 - af * c2 * c2)).abs() / (c2 * c2 * c2);
            sup = sup.max(r);
        }
        worst.push(((u, v), sup));
    }
    let taylor_ok = worst.iter().all(|&(_, s)| s.is_finite() && s < 1.0);
    let pass = violations == 0 && sets == 1_000 && g_err <= 1e-12 && taylor_ok;
    report(
        10,
        pass,
        format!("{violations} Bonferroni violations over {sets} sets; max |g_11 - g| = {g_err:.1e}; sup residual/c^6 = {worst:?}"),
    );
}

#[test]
fn criterion_11_explicit_bounds() {
    let t = Instant::now();
    let v = verify_bounds(1.0, 0.6, 0.2, 10_000, 10_000, SEED, Threads::Auto).unwrap();
    let pass = v.cardinality.rate <= v.cardinality.bound && v.collisions.rate <= v.collisions.bound;
    report(
        11,
        pass,
        format!(
            "cardinality {:.4} <= P1 {:.4}; collisions {:.4} <= P2 {:.4} ({:.1}s)",
            v.cardinality.rate,
            v.cardinality.bound,
            v.collisions.rate,
            v.collisions.bound,
            t.elapsed().as_secs_f64()
        ),
    );
}
