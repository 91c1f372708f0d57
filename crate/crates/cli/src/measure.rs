use std::time::Instant;

use ntangle::concurrence::{self, CForm};
use ntangle::invariants::{self, OracleMode, ScalarInvariants};
use ntangle::qstate::QState;
use serde::Serialize;

use crate::source::Descriptor;

#[derive(Debug, Serialize)]
pub struct MultCounts {
    pub n_tangle_sum: u64,
    pub n_tangle_final: u64,
}

#[derive(Debug, Serialize)]
pub struct ConcurrenceOut {
    pub c_one_rest: f64,
    pub c_one_rest_squared: f64,
    /// Pair-sum form; null beyond its qubit budget.
    pub c_one_rest_squared_sum: Option<f64>,
    pub c_pairs: Vec<f64>,
    pub c_pairs_squared: Vec<f64>,
    pub residual: f64,
    pub monogamy_slack: f64,
}

#[derive(Debug, Serialize)]
pub struct OddExperiment {
    /// `|2·S₀|²`, not an invariant for odd n.
    pub reduced_tangle: f64,
    /// Quartic-sum value, where the oracle budget allows.
    pub oracle_tangle: Option<f64>,
}

#[derive(Debug, Default, Serialize)]
pub struct Timings {
    pub invariants: f64,
    pub n_tangle_fast: f64,
    pub c_one_rest_det: f64,
    pub c_one_rest_sum: f64,
    pub residual: f64,
}

#[derive(Debug, Serialize)]
pub struct MeasureOutput {
    pub state: Descriptor,
    pub n: usize,
    pub invariants: Option<ScalarInvariants>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tangle_note: Option<&'static str>,
    pub mult_counts: Option<MultCounts>,
    pub concurrence: ConcurrenceOut,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub odd_experiment: Option<OddExperiment>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

const ODD_NOTE: &str = "n-tangle, S0, I* and tau' are defined for even n only; tangle fields are null";

fn timed<T>(slot: &mut f64, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    *slot = start.elapsed().as_secs_f64();
    out
}

pub struct Options {
    pub require_tangle: bool,
    pub timing: bool,
    pub odd_experiment: bool,
}

pub fn measure(state: &QState, descriptor: Descriptor, opts: &Options) -> Result<MeasureOutput, String> {
    let n = state.n_qubits();
    let even = n.is_multiple_of(2);
    if opts.require_tangle && !even {
        return Err(format!("--require-tangle: the n-tangle needs an even qubit count, got {n}"));
    }
    let err = |e: ntangle::Error| e.to_string();
    let mut t = Timings::default();

    let (scalars, mult_counts) = if even {
        let scalars = timed(&mut t.invariants, || ScalarInvariants::of(state)).map_err(err)?;
        let fast = timed(&mut t.n_tangle_fast, || invariants::n_tangle_fast(state)).map_err(err)?;
        let counts = MultCounts {
            n_tangle_sum: fast.sum_mults,
            n_tangle_final: fast.final_ops,
        };
        (Some(scalars), Some(counts))
    } else {
        (None, None)
    };

    let det = timed(&mut t.c_one_rest_det, || concurrence::c_one_rest(state, CForm::Det)).map_err(err)?;
    let sum = if n <= concurrence::PAIR_SUM_MAX_QUBITS {
        let s = timed(&mut t.c_one_rest_sum, || concurrence::c_one_rest(state, CForm::Sum));
        Some(s.map_err(err)?.c_squared)
    } else {
        None
    };
    let report = timed(&mut t.residual, || concurrence::residual_tangle(state)).map_err(err)?;

    let odd_experiment = if opts.odd_experiment && !even {
        let oracle = if OracleMode::Raw.check_budget(n).is_ok() {
            Some(invariants::n_tangle_oracle(state, OracleMode::Raw).map_err(err)?.tau)
        } else {
            None
        };
        Some(OddExperiment {
            reduced_tangle: invariants::reduced_tangle_any_n(state).map_err(err)?,
            oracle_tangle: oracle,
        })
    } else {
        None
    };

    Ok(MeasureOutput {
        state: descriptor,
        n,
        invariants: scalars,
        tangle_note: (!even).then_some(ODD_NOTE),
        mult_counts,
        concurrence: ConcurrenceOut {
            c_one_rest: det.c,
            c_one_rest_squared: det.c_squared,
            c_one_rest_squared_sum: sum,
            c_pairs_squared: report.c_pairs.iter().map(|c| c * c).collect(),
            c_pairs: report.c_pairs,
            residual: report.residual,
            monogamy_slack: report.monogamy_slack,
        },
        odd_experiment,
        timings: opts.timing.then_some(t),
    })
}
