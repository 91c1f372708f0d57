//! Randomized property suites behind `ntangle verify`.
//!
//! Each suite draws `trials` states from a seeded generator and reports the
//! worst value of every tracked gap or slack against its bound.

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::concurrence::{self, CForm, Factorization, PartialMeasureReport, Result3Certificate};
use crate::error::Result;
use crate::invariants::{self, IStarForm, OracleMode, ReductionReport};
use crate::qstate::QState;
use crate::slocc::{self, CovarianceReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Bound {
    /// The worst observed value must not exceed the bound.
    Max,
    /// The worst observed value must not fall below the bound.
    Min,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metric {
    pub name: &'static str,
    pub kind: Bound,
    pub value: f64,
    pub bound: f64,
    pub passed: bool,
}

impl Metric {
    fn max(name: &'static str, bound: f64) -> Self {
        Metric {
            name,
            kind: Bound::Max,
            value: f64::NEG_INFINITY,
            bound,
            passed: true,
        }
    }

    fn min(name: &'static str, bound: f64) -> Self {
        Metric {
            name,
            kind: Bound::Min,
            value: f64::INFINITY,
            bound,
            passed: true,
        }
    }

    fn observe(&mut self, x: f64) {
        if x.is_nan() || self.value.is_nan() {
            self.value = f64::NAN;
            self.passed = false;
            return;
        }
        match self.kind {
            Bound::Max => {
                self.value = self.value.max(x);
                self.passed &= x <= self.bound;
            }
            Bound::Min => {
                self.value = self.value.min(x);
                self.passed &= x >= self.bound;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteOutcome {
    pub suite: &'static str,
    pub n: usize,
    pub trials: usize,
    pub metrics: Vec<Metric>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl SuiteOutcome {
    fn finish(suite: &'static str, n: usize, trials: usize, metrics: Vec<Metric>) -> Self {
        let passed = metrics.iter().all(|m| m.passed);
        SuiteOutcome {
            suite,
            n,
            trials,
            metrics,
            passed,
            error: None,
        }
    }

    fn failed(suite: &'static str, n: usize, trials: usize, err: String) -> Self {
        SuiteOutcome {
            suite,
            n,
            trials,
            metrics: Vec::new(),
            passed: false,
            error: Some(err),
        }
    }
}

pub const SUITE_NAMES: [&str; 13] = [
    "reduction",
    "istar_forms",
    "oracle_agreement",
    "result1",
    "result2",
    "result3",
    "monogamy",
    "covariance",
    "permutation",
    "scaling",
    "multiplicativity",
    "partial_measure",
    "range",
];

/// Whether `suite` applies to `n`-qubit states.
pub fn applies(suite: &str, n: usize) -> bool {
    let even = n >= 2 && n.is_multiple_of(2);
    match suite {
        "reduction" => even && n <= invariants::CONSTRAINED_ORACLE_MAX_QUBITS,
        "oracle_agreement" => {
            n == 3 || (even && n <= invariants::CONSTRAINED_ORACLE_MAX_QUBITS)
        }
        "result3" => even && n <= concurrence::LEDGER_MAX_QUBITS,
        "istar_forms" | "covariance" | "permutation" | "scaling" | "multiplicativity" => even,
        "result1" => (2..=concurrence::PAIR_SUM_MAX_QUBITS).contains(&n),
        "result2" | "monogamy" | "partial_measure" | "range" => n >= 2,
        _ => false,
    }
}

fn suite_rng(seed: u64, suite: &str, n: usize) -> ChaCha8Rng {
    let id = SUITE_NAMES.iter().position(|s| *s == suite).unwrap_or(99) as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((id << 8) | n as u64);
    rng
}

/// A random state supported on the weight-1 basis states.
pub fn random_single_excitation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<QState> {
    let dense = QState::random(n, rng)?;
    let amps = dense
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(i, a)| if i.count_ones() == 1 { *a } else { Complex64::new(0.0, 0.0) })
        .collect();
    QState::new(n, amps)?.normalized()
}

pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

type Trial<'a> = dyn FnMut(&QState, &mut ChaCha8Rng, &mut [Metric]) -> Result<()> + 'a;

fn run_trials(
    suite: &'static str,
    n: usize,
    trials: usize,
    seed: u64,
    mut metrics: Vec<Metric>,
    body: &mut Trial<'_>,
) -> SuiteOutcome {
    let mut rng = suite_rng(seed, suite, n);
    for _ in 0..trials {
        let outcome = QState::random(n, &mut rng).and_then(|s| body(&s, &mut rng, &mut metrics));
        if let Err(e) = outcome {
            return SuiteOutcome::failed(suite, n, trials, e.to_string());
        }
    }
    SuiteOutcome::finish(suite, n, trials, metrics)
}

fn reduction_metrics() -> Vec<Metric> {
    vec![
        Metric::max("s_minus_2s0sq", ReductionReport::S_TOL),
        Metric::max("s1_plus_s0", ReductionReport::S1_TOL),
        Metric::max("case1_sum", ReductionReport::CASE1_TOL),
    ]
}

fn check_reduction(s: &QState, m: &mut [Metric]) -> Result<()> {
    let r = invariants::verify_reduction(s)?;
    m[0].observe(r.s_gap);
    m[1].observe(r.s1_gap);
    m[2].observe(r.case1_gap);
    Ok(())
}

fn istar_metrics() -> Vec<Metric> {
    vec![
        Metric::max("form_spread", 1e-12),
        Metric::max("tau_vs_tau_prime_sq", 1e-12),
    ]
}

fn check_istar(s: &QState, m: &mut [Metric]) -> Result<()> {
    let mut values = vec![invariants::s0(s)?];
    for form in IStarForm::ALL {
        values.push(invariants::i_star(s, form)?);
    }
    let spread = values
        .iter()
        .flat_map(|a| values.iter().map(move |b| (a - b).norm()))
        .fold(0.0, f64::max);
    m[0].observe(spread);
    let tp = invariants::tau_prime(s)?;
    m[1].observe((invariants::n_tangle(s)? - tp * tp).abs());
    Ok(())
}

fn oracle_metrics(n: usize) -> Vec<Metric> {
    let mut m = vec![Metric::max("constrained_vs_fast_tau", 1e-10)];
    if (invariants::RAW_ORACLE_MIN_QUBITS..=invariants::RAW_ORACLE_MAX_QUBITS).contains(&n) {
        m.push(Metric::max("raw_vs_constrained_s", 1e-12));
    }
    m
}

fn check_oracle(s: &QState, m: &mut [Metric]) -> Result<()> {
    let n = s.n_qubits();
    let con = invariants::n_tangle_oracle(s, OracleMode::Constrained)?;
    let reference = if n.is_multiple_of(2) {
        invariants::n_tangle(s)?
    } else {
        invariants::n_tangle_oracle(s, OracleMode::Raw)?.tau
    };
    m[0].observe((con.tau - reference).abs());
    if m.len() > 1 {
        let raw = invariants::n_tangle_oracle(s, OracleMode::Raw)?;
        m[1].observe((raw.s - con.s).norm());
    }
    Ok(())
}

fn result1_metrics() -> Vec<Metric> {
    vec![Metric::max("det_vs_sum", 1e-11)]
}

fn check_result1(s: &QState, m: &mut [Metric]) -> Result<()> {
    let det = concurrence::c_one_rest(s, CForm::Det)?.c_squared;
    let sum = concurrence::c_one_rest(s, CForm::Sum)?.c_squared;
    m[0].observe((det - sum).abs());
    Ok(())
}

fn result3_metrics() -> Vec<Metric> {
    vec![
        Metric::max("decomposition_gap", Result3Certificate::DECOMPOSITION_TOL),
        Metric::min("z_bound_slack", -Result3Certificate::Z_BOUND_TOL),
        Metric::min("pair_slack", -Result3Certificate::PAIR_TOL),
        Metric::min("c_squared_minus_tau", -Result3Certificate::HEADLINE_TOL),
        Metric::max("z_identity_gap", 0.0),
    ]
}

fn check_result3(s: &QState, m: &mut [Metric]) -> Result<()> {
    let r = concurrence::result3_certificate(s)?;
    m[0].observe(r.decomposition_gap);
    m[1].observe(r.z_bound_slack);
    if r.min_pair_slack.is_finite() {
        m[2].observe(r.min_pair_slack);
    }
    m[3].observe(r.headline_slack);
    m[4].observe(r.z_identity_gap);
    Ok(())
}

fn monogamy_metrics() -> Vec<Metric> {
    vec![
        Metric::min("residual", -concurrence::ConcurrenceReport::MONOGAMY_TOL),
        Metric::max("residual_minus_slack", 0.0),
    ]
}

fn check_monogamy(s: &QState, m: &mut [Metric]) -> Result<()> {
    let r = concurrence::residual_tangle(s)?;
    m[0].observe(r.residual);
    m[1].observe((r.residual - r.monogamy_slack).abs());
    Ok(())
}

fn permutation_metrics() -> Vec<Metric> {
    vec![
        Metric::max("tau_change", 1e-12),
        Metric::max("abs_istar_change", 1e-12),
    ]
}

pub const PERMUTATIONS_PER_STATE: usize = 20;

fn check_permutation(s: &QState, rng: &mut ChaCha8Rng, m: &mut [Metric]) -> Result<()> {
    let tau = invariants::n_tangle(s)?;
    let istar = invariants::i_star(s, IStarForm::Grouped)?.norm();
    for _ in 0..PERMUTATIONS_PER_STATE {
        let p = s.permute_qubits(&random_permutation(s.n_qubits(), rng))?;
        m[0].observe((invariants::n_tangle(&p)? - tau).abs());
        m[1].observe((invariants::i_star(&p, IStarForm::Grouped)?.norm() - istar).abs());
    }
    Ok(())
}

fn scaling_metrics() -> Vec<Metric> {
    vec![Metric::max("tau_scaling_gap", 1e-12)]
}

fn check_scaling(s: &QState, rng: &mut ChaCha8Rng, m: &mut [Metric]) -> Result<()> {
    let c = Complex64::from_polar(rng.random_range(0.2..1.5), rng.random_range(0.0..std::f64::consts::TAU));
    let tau = invariants::n_tangle(s)?;
    let scaled = invariants::n_tangle(&s.scaled(c))?;
    m[0].observe((scaled - c.norm_sqr().powi(2) * tau).abs());
    Ok(())
}

fn covariance_metrics() -> Vec<Metric> {
    vec![
        Metric::max("istar_rel_err", CovarianceReport::I_STAR_TOL),
        Metric::max("tau_rel_err", CovarianceReport::TAU_TOL),
    ]
}

fn check_covariance(s: &QState, rng: &mut ChaCha8Rng, m: &mut [Metric]) -> Result<()> {
    let ops = slocc::random_invertible_set(s.n_qubits(), rng.random())?;
    let r = slocc::covariance_check(s, &ops)?;
    m[0].observe(r.i_star_rel_err);
    m[1].observe(r.tau_rel_err);
    Ok(())
}

fn multiplicativity_metrics() -> Vec<Metric> {
    vec![Metric::max("product_gap", invariants::MultiplicativityReport::TOL)]
}

/// Size of the random even factor tensored on by the product-state suites.
pub const PARTNER_QUBITS: usize = 4;

fn check_multiplicativity(s: &QState, rng: &mut ChaCha8Rng, m: &mut [Metric]) -> Result<()> {
    let right = QState::random(PARTNER_QUBITS, rng)?;
    m[0].observe(invariants::multiplicativity_check(s, &right)?.gap);
    Ok(())
}

fn partial_measure_metrics() -> Vec<Metric> {
    vec![
        Metric::max("c_gap", PartialMeasureReport::C_TOL),
        Metric::max("inner_pair_gap", PartialMeasureReport::C_TOL),
        Metric::max("cross_pair_max", PartialMeasureReport::C_TOL),
        Metric::max("cross_scalar_gap", PartialMeasureReport::SCALAR_TOL),
        Metric::max("residual_gap", PartialMeasureReport::RESIDUAL_TOL),
    ]
}

fn check_partial_measure(s: &QState, rng: &mut ChaCha8Rng, m: &mut [Metric]) -> Result<()> {
    let right = QState::random(2, rng)?;
    let r = concurrence::partial_measure_check(s, &right)?;
    m[0].observe(r.c_gap);
    m[1].observe(r.inner_pair_gap);
    m[2].observe(r.cross_pair_max);
    m[3].observe(r.cross_scalar_gap);
    m[4].observe(r.residual_gap);
    Ok(())
}

fn range_metrics(n: usize) -> Vec<Metric> {
    let mut m = vec![
        Metric::max("c_one_rest", 1.0 + 1e-12),
        Metric::min("c_squared", -1e-12),
    ];
    if n.is_multiple_of(2) {
        m.push(Metric::max("tau", 1.0 + 1e-12));
        m.push(Metric::min("tau_floor", 0.0));
    }
    m
}

fn check_range(s: &QState, m: &mut [Metric]) -> Result<()> {
    let c = concurrence::c_one_rest(s, CForm::Det)?;
    m[0].observe(c.c);
    m[1].observe(c.c_squared);
    if m.len() > 2 {
        let tau = invariants::n_tangle(s)?;
        m[2].observe(tau);
        m[3].observe(tau);
    }
    Ok(())
}

fn result2_suite(n: usize, trials: usize, seed: u64) -> SuiteOutcome {
    const SUITE: &str = "result2";
    let mut rng = suite_rng(seed, SUITE, n);
    let mut metrics = vec![
        Metric::max("misclassified", 0.0),
        Metric::max("fidelity_deficit", 1e-9),
    ];
    let tol = concurrence::DEFAULT_FACTOR_TOL;
    let body = |rng: &mut ChaCha8Rng, metrics: &mut [Metric]| -> Result<()> {
        let first = QState::random(1, rng)?;
        let rest = QState::random(n - 1, rng)?;
        let product = first.tensor(&rest)?;
        match concurrence::factor_one_rest(&product, tol)? {
            Factorization::Product { first: f, rest: r, .. } => {
                metrics[0].observe(0.0);
                let rebuilt = f.tensor(&r)?;
                metrics[1].observe(1.0 - product.inner(&rebuilt)?.norm());
            }
            Factorization::NotAProduct { .. } => metrics[0].observe(1.0),
        }
        let entangled = QState::random(n, rng)?;
        let wrong = concurrence::factor_one_rest(&entangled, tol)?.is_product();
        metrics[0].observe(if wrong { 1.0 } else { 0.0 });
        Ok(())
    };
    for _ in 0..trials {
        if let Err(e) = body(&mut rng, &mut metrics) {
            return SuiteOutcome::failed(SUITE, n, trials, e.to_string());
        }
    }
    SuiteOutcome::finish(SUITE, n, trials, metrics)
}

fn run_one(suite: &'static str, n: usize, trials: usize, seed: u64) -> SuiteOutcome {
    let plain = |f: fn(&QState, &mut [Metric]) -> Result<()>| {
        move |s: &QState, _: &mut ChaCha8Rng, m: &mut [Metric]| f(s, m)
    };
    match suite {
        "reduction" => run_trials(suite, n, trials, seed, reduction_metrics(), &mut plain(check_reduction)),
        "istar_forms" => run_trials(suite, n, trials, seed, istar_metrics(), &mut plain(check_istar)),
        "oracle_agreement" => run_trials(suite, n, trials, seed, oracle_metrics(n), &mut plain(check_oracle)),
        "result1" => run_trials(suite, n, trials, seed, result1_metrics(), &mut plain(check_result1)),
        "result2" => result2_suite(n, trials, seed),
        "result3" => run_trials(suite, n, trials, seed, result3_metrics(), &mut plain(check_result3)),
        "monogamy" => run_trials(suite, n, trials, seed, monogamy_metrics(), &mut plain(check_monogamy)),
        "covariance" => run_trials(suite, n, trials, seed, covariance_metrics(), &mut check_covariance),
        "permutation" => run_trials(suite, n, trials, seed, permutation_metrics(), &mut check_permutation),
        "scaling" => run_trials(suite, n, trials, seed, scaling_metrics(), &mut check_scaling),
        "multiplicativity" => {
            run_trials(suite, n, trials, seed, multiplicativity_metrics(), &mut check_multiplicativity)
        }
        "partial_measure" => {
            run_trials(suite, n, trials, seed, partial_measure_metrics(), &mut check_partial_measure)
        }
        "range" => run_trials(suite, n, trials, seed, range_metrics(n), &mut plain(check_range)),
        other => SuiteOutcome::failed("unknown", n, trials, format!("unknown suite {other}")),
    }
}

/// Every applicable suite for every `n`, in a fixed order.
pub fn run_random_suites(ns: &[usize], trials: usize, seed: u64) -> Vec<SuiteOutcome> {
    let mut out = Vec::new();
    for &n in ns {
        for suite in SUITE_NAMES {
            if applies(suite, n) {
                out.push(run_one(suite, n, trials, seed));
            }
        }
    }
    out
}

/// The suites that make sense for one fixed state, with `seed` driving any
/// auxiliary randomness (permutations, operators, partner factors).
pub fn run_state_suites(state: &QState, seed: u64) -> Vec<SuiteOutcome> {
    let n = state.n_qubits();
    let mut out = Vec::new();
    for suite in SUITE_NAMES {
        if !applies(suite, n) || suite == "result2" {
            continue;
        }
        let mut rng = suite_rng(seed, suite, n);
        let (mut metrics, result) = match suite {
            "reduction" => with(reduction_metrics(), |m| check_reduction(state, m)),
            "istar_forms" => with(istar_metrics(), |m| check_istar(state, m)),
            "oracle_agreement" => with(oracle_metrics(n), |m| check_oracle(state, m)),
            "result1" => with(result1_metrics(), |m| check_result1(state, m)),
            "result3" => with(result3_metrics(), |m| check_result3(state, m)),
            "monogamy" => with(monogamy_metrics(), |m| check_monogamy(state, m)),
            "covariance" => with(covariance_metrics(), |m| check_covariance(state, &mut rng, m)),
            "permutation" => with(permutation_metrics(), |m| check_permutation(state, &mut rng, m)),
            "scaling" => with(scaling_metrics(), |m| check_scaling(state, &mut rng, m)),
            "multiplicativity" => {
                with(multiplicativity_metrics(), |m| check_multiplicativity(state, &mut rng, m))
            }
            "partial_measure" => {
                with(partial_measure_metrics(), |m| check_partial_measure(state, &mut rng, m))
            }
            "range" => with(range_metrics(n), |m| check_range(state, m)),
            _ => continue,
        };
        out.push(match result {
            Ok(()) => SuiteOutcome::finish(suite, n, 1, std::mem::take(&mut metrics)),
            Err(e) => SuiteOutcome::failed(suite, n, 1, e.to_string()),
        });
    }
    out
}

fn with(
    mut metrics: Vec<Metric>,
    f: impl FnOnce(&mut [Metric]) -> Result<()>,
) -> (Vec<Metric>, Result<()>) {
    let r = f(&mut metrics);
    (metrics, r)
}
