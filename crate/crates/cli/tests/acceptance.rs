//! Acceptance suite: one line per criterion, non-zero exit on any failure.
//!
//! All comparisons are exact rational equality unless a tolerance is named
//! below.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use simplex_metrics::exact_linalg::det_exact;
use simplex_metrics::jet_algebra::Degree;
use simplex_metrics::sdg_verify::{
    check_cm_symmetry, check_gram_symmetry, check_thin_examples_without_thinness,
    check_thin_lemma_without_thinness, extension_degree_trials, run_all, Status, EXTENSION_INDEPENDENCE,
    PROP_AB, SQUARING, THIN_EXAMPLES, THIN_LEMMA, VOLUME_FORM_THEOREM,
};
use simplex_metrics::simplex_volume::{
    heron_triangle, random_integer_simplex, run_comparison_trials, vol2_cm, vol2_gram, vol2_metric_via_cm,
    SquareDistanceData, TrialConfig,
};
use simplex_metrics::{ratio, Execution, Rational, RationalMatrix};
use simplex_metrics_cli::cmd_factors;

const SEED: u64 = 20_240_601;
/// Wall-clock budget for the whole suite.
const RUNTIME_BUDGET: Duration = Duration::from_secs(60);
const HERON_TRIPLES: usize = 1000;
const COMPARISON_TRIALS: usize = 500;
const METRIC_TRIALS: usize = 200;
const EXTENSION_TRIALS: usize = 50;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn factor_table() -> Outcome {
    let out = cmd_factors(3).stdout;
    let rows: Vec<&str> = out.lines().collect();
    let expected = ["0\t1", "1\t1/2", "2\t-1/16", "3\t1/288"];
    if rows == expected {
        Ok("k=1,2,3 -> 1/2, -1/16, 1/288".into())
    } else {
        Err(format!("got {rows:?}"))
    }
}

fn heron_agreement() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut random_rational = || ratio(rng.random_range(0..=400), rng.random_range(1..=12));
    for i in 0..HERON_TRIPLES {
        let (a2, b2, c2) = (random_rational(), random_rational(), random_rational());
        let z = Rational::from_integer(0.into());
        let table = SquareDistanceData::from_rows(vec![
            vec![z.clone(), c2.clone(), b2.clone()],
            vec![c2.clone(), z.clone(), a2.clone()],
            vec![b2.clone(), a2.clone(), z],
        ])
        .map_err(|e| e.to_string())?;
        let (h, c) = (heron_triangle(&a2, &b2, &c2), vol2_cm(&table));
        if h != c {
            return Err(format!("triple {i}: ({a2}, {b2}, {c2}) heron {h} vs cm {c}"));
        }
    }
    Ok(format!("{HERON_TRIPLES} rational triples"))
}

fn comparison_identity() -> Outcome {
    let config = TrialConfig::new(COMPARISON_TRIALS, 5, 5, SEED);
    let trials = run_comparison_trials(&config, Execution::default());
    if let Some(t) = trials.iter().find(|t| !t.passed()) {
        return Err(format!("trial {}: {:?}", t.index, t.report));
    }
    let max_k = trials.iter().map(|t| t.report.k).max().unwrap_or(0);
    Ok(format!("{} integer simplices, 1 <= k <= n <= 5 (largest k {max_k})", trials.len()))
}

fn metric_change() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 4);
    for i in 0..METRIC_TRIALS {
        let n = 1 + i % 4;
        let k = rng.random_range(1..=n);
        let h = RationalMatrix::from_fn(n, n, |_, _| Rational::from_integer(rng.random_range(-5..=5).into()));
        let g = h.transpose().mat_mul(&h).map_err(|e| e.to_string())?;
        let s = random_integer_simplex(&mut rng, k, n, 9);
        let gram = vol2_gram(&s, &g).map_err(|e| e.to_string())?;
        let via_h = vol2_metric_via_cm(&s, &h).map_err(|e| e.to_string())?;
        if gram != via_h {
            return Err(format!("trial {i}: H = {h}: {gram} vs {via_h}"));
        }
        let dh = det_exact(&h).map_err(|e| e.to_string())?;
        if det_exact(&g).map_err(|e| e.to_string())? != &dh * &dh {
            return Err(format!("trial {i}: det(H^T H) != det(H)^2 for H = {h}"));
        }
    }
    Ok(format!("{METRIC_TRIALS} random H, n <= 4"))
}

fn permutation_invariance() -> Outcome {
    let mut count = 0;
    for k in 1..=3 {
        let r = check_cm_symmetry(k);
        if !r.passed() {
            return Err(r.to_json_line());
        }
        count += 1;
        for n in k..=4 {
            let r = check_gram_symmetry(k, n);
            if !r.passed() {
                return Err(r.to_json_line());
            }
            count += 1;
        }
    }
    Ok(format!("{count} symbolic reports"))
}

fn sdg_suite() -> Outcome {
    let reports = run_all(3, 3, SEED);
    let required = [PROP_AB, SQUARING, EXTENSION_INDEPENDENCE, THIN_LEMMA, THIN_EXAMPLES, VOLUME_FORM_THEOREM];
    if let Some(r) = reports.iter().find(|r| r.status == Status::Fail) {
        return Err(r.to_json_line());
    }
    for name in required {
        if !reports.iter().any(|r| r.check_name == name && r.passed()) {
            return Err(format!("{name} did not run"));
        }
    }
    let squaring_k1 = reports
        .iter()
        .filter(|r| r.check_name == SQUARING && r.parameters.get("k") == Some(&1.into()))
        .all(|r| r.passed());
    if !squaring_k1 {
        return Err("check_squaring at k = 1 did not pass".into());
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    Ok(format!("{passed} reports pass at n, k <= 3, none fail"))
}

fn negative_controls() -> Outcome {
    let lemma = check_thin_lemma_without_thinness(2);
    let example = check_thin_examples_without_thinness();
    for r in [&lemma, &example] {
        if r.status != Status::Fail || r.witness.is_none() {
            return Err(format!("control did not fail: {}", r.to_json_line()));
        }
    }
    Ok(format!(
        "witnesses: x^2 y -> {}; thin lemma residual has {} chars",
        example.witness.as_deref().unwrap_or_default(),
        lemma.witness.as_deref().map_or(0, str::len)
    ))
}

fn degree_lemma() -> Outcome {
    for k in 1..=3 {
        for n in 1..=3 {
            for (t, degree, _) in extension_degree_trials(k, n, SEED, EXTENSION_TRIALS) {
                if degree < Degree::Finite(2 * k as u32 + 1) {
                    return Err(format!("k = {k}, n = {n}, trial {t}: degree {degree}"));
                }
            }
        }
    }
    Ok(format!("{EXTENSION_TRIALS} random theta for each k, n <= 3"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("factor table", factor_table),
        ("Heron agreement", heron_agreement),
        ("comparison identity", comparison_identity),
        ("metric change", metric_change),
        ("permutation invariance", permutation_invariance),
        ("SDG suite", sdg_suite),
        ("negative controls", negative_controls),
        ("multigraded degree lemma", degree_lemma),
    ];
    let start = Instant::now();
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (tag, text) = match run() {
            Ok(s) => ("PASS", s),
            Err(s) => {
                failures += 1;
                ("FAIL", s)
            }
        };
        println!("[{tag}] {} {name}: {text} ({:.2?})", i + 1, t.elapsed());
    }
    let elapsed = start.elapsed();
    let within = elapsed <= RUNTIME_BUDGET;
    if !within {
        failures += 1;
    }
    println!(
        "[{}] runtime {elapsed:.2?} (budget {RUNTIME_BUDGET:?})",
        if within { "PASS" } else { "FAIL" }
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
