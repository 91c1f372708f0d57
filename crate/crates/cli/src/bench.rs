use std::hint::black_box;
use std::str::FromStr;
use std::time::Instant;

use ntangle::invariants::{self, OracleMode};
use ntangle::qstate::QState;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Fast,
    Constrained,
    Raw,
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "fast" => Ok(Method::Fast),
            "constrained" => Ok(Method::Constrained),
            "raw" => Ok(Method::Raw),
            other => Err(format!("unknown method {other:?} (fast, constrained, raw)")),
        }
    }
}

impl Method {
    fn check_budget(self, n: usize) -> Result<(), String> {
        let r = match self {
            Method::Fast if n % 2 == 1 => {
                return Err(format!("fast: the n-tangle needs an even qubit count, got {n}"))
            }
            Method::Fast => Ok(()),
            Method::Constrained => OracleMode::Constrained.check_budget(n),
            Method::Raw => OracleMode::Raw.check_budget(n),
        };
        r.map_err(|e| e.to_string())
    }

    fn run(self, state: &QState) -> ntangle::Result<(f64, u64, Option<u64>)> {
        match self {
            Method::Fast => {
                let f = invariants::n_tangle_fast(state)?;
                Ok((f.tau, f.sum_mults, Some(f.final_ops)))
            }
            Method::Constrained | Method::Raw => {
                let mode = if self == Method::Raw {
                    OracleMode::Raw
                } else {
                    OracleMode::Constrained
                };
                let o = invariants::n_tangle_oracle(state, mode)?;
                Ok((o.tau, o.mult_count, None))
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRecord {
    pub n: usize,
    pub method: Method,
    pub trials: usize,
    pub mean_seconds: f64,
    pub min_seconds: f64,
    pub median_seconds: f64,
    pub mult_count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub final_ops: Option<u64>,
    pub tau: f64,
    /// `|τ − τ_reference|`; the reference is the fast path when requested,
    /// else the first method listed.
    pub agreement_gap: Option<f64>,
    /// Median time relative to the fast path.
    pub slowdown_vs_fast: Option<f64>,
}

pub const AGREEMENT_TOL: f64 = 1e-10;

#[derive(Debug, Serialize)]
pub struct BenchOutput {
    pub seed: u64,
    pub records: Vec<BenchRecord>,
    pub agreement_tol: f64,
    pub passed: bool,
}

fn median(xs: &mut [f64]) -> f64 {
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        0.5 * (xs[m - 1] + xs[m])
    }
}

pub fn bench(ns: &[usize], methods: &[Method], trials: usize, seed: u64) -> Result<BenchOutput, String> {
    if trials == 0 {
        return Err("--trials must be at least 1".into());
    }
    let mut ordered: Vec<Method> = Vec::new();
    for m in methods {
        if !ordered.contains(m) {
            ordered.push(*m);
        }
    }
    ordered.sort_by_key(|m| *m != Method::Fast);
    for &n in ns {
        for m in &ordered {
            m.check_budget(n)?;
        }
    }
    let mut records = Vec::new();
    let mut passed = true;
    for &n in ns {
        let state = QState::random_pure(n, seed ^ n as u64).map_err(|e| e.to_string())?;
        let mut reference: Option<f64> = None;
        let mut fast_median: Option<f64> = None;
        let mut group = Vec::new();
        for &method in &ordered {
            let mut times = Vec::with_capacity(trials);
            let mut last = None;
            for _ in 0..trials {
                let start = Instant::now();
                let out = method.run(black_box(&state)).map_err(|e| e.to_string())?;
                times.push(start.elapsed().as_secs_f64());
                last = Some(black_box(out));
            }
            let (tau, mult_count, final_ops) = last.expect("trials >= 1");
            let gap = reference.map(|r| (tau - r).abs());
            passed &= gap.is_none_or(|g| g <= AGREEMENT_TOL);
            reference.get_or_insert(tau);
            let mean = times.iter().sum::<f64>() / trials as f64;
            let min = times.iter().copied().fold(f64::INFINITY, f64::min);
            let med = median(&mut times);
            if method == Method::Fast {
                fast_median = Some(med);
            }
            group.push(BenchRecord {
                n,
                method,
                trials,
                mean_seconds: mean,
                min_seconds: min,
                median_seconds: med,
                mult_count,
                final_ops,
                tau,
                agreement_gap: gap,
                slowdown_vs_fast: None,
            });
        }
        if let Some(fm) = fast_median {
            for r in &mut group {
                if r.method != Method::Fast {
                    r.slowdown_vs_fast = Some(r.median_seconds / fm.max(f64::MIN_POSITIVE));
                }
            }
        }
        records.extend(group);
    }
    Ok(BenchOutput {
        seed,
        records,
        agreement_tol: AGREEMENT_TOL,
        passed,
    })
}

pub fn table(out: &BenchOutput) -> String {
    let mut s = format!(
        "{:>3}  {:<12} {:>6} {:>14} {:>14} {:>14} {:>10} {:>10}\n",
        "n", "method", "trials", "median_s", "mult_count", "tau", "gap", "x_fast"
    );
    for r in &out.records {
        let opt = |x: Option<f64>, prec: usize| x.map_or("-".to_string(), |v| format!("{v:.prec$e}"));
        s.push_str(&format!(
            "{:>3}  {:<12} {:>6} {:>14.3e} {:>14} {:>14.10} {:>10} {:>10}\n",
            r.n,
            format!("{:?}", r.method).to_lowercase(),
            r.trials,
            r.median_seconds,
            r.mult_count,
            r.tau,
            opt(r.agreement_gap, 1),
            r.slowdown_vs_fast.map_or("-".to_string(), |v| format!("{v:.1}")),
        ));
    }
    s
}
