use ntangle::qstate::QState;
use ntangle::suites::{self, Bound, SuiteOutcome};
use serde::Serialize;

use crate::source::Descriptor;

#[derive(Debug, Serialize)]
pub struct VerifyOutput {
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state: Option<Descriptor>,
    pub suites: Vec<SuiteOutcome>,
    pub passed: bool,
}

pub fn verify_random(ns: &[usize], trials: usize, seed: u64) -> Result<VerifyOutput, String> {
    if let Some(&bad) = ns.iter().find(|&&n| !(2..=ntangle::qstate::MAX_QUBITS).contains(&n)) {
        return Err(format!("--n entries must be between 2 and {}, got {bad}", ntangle::qstate::MAX_QUBITS));
    }
    let suites = suites::run_random_suites(ns, trials, seed);
    let passed = suites.iter().all(|s| s.passed);
    Ok(VerifyOutput {
        seed,
        trials: Some(trials),
        n: Some(ns.to_vec()),
        state: None,
        suites,
        passed,
    })
}

pub fn verify_state(state: &QState, descriptor: Descriptor, seed: u64) -> Result<VerifyOutput, String> {
    if state.n_qubits() < 2 {
        return Err("verification needs at least 2 qubits".into());
    }
    let suites = suites::run_state_suites(state, seed);
    let passed = suites.iter().all(|s| s.passed);
    Ok(VerifyOutput {
        seed,
        trials: None,
        n: None,
        state: Some(descriptor),
        suites,
        passed,
    })
}

pub fn table(out: &VerifyOutput) -> String {
    let mut s = String::new();
    for suite in &out.suites {
        let status = if suite.passed { "PASS" } else { "FAIL" };
        s.push_str(&format!("{status}  {:<17} n={:<3} trials={}\n", suite.suite, suite.n, suite.trials));
        if let Some(e) = &suite.error {
            s.push_str(&format!("      error: {e}\n"));
        }
        for m in &suite.metrics {
            let op = match m.kind {
                Bound::Max => "<=",
                Bound::Min => ">=",
            };
            let mark = if m.passed { " " } else { "!" };
            let bound = if m.bound == 0.0 { "0".to_string() } else { format!("{:.0e}", m.bound) };
            s.push_str(&format!("    {mark} {:<24} {:>12.3e} {op} {bound}\n", m.name, m.value));
        }
    }
    s.push_str(if out.passed { "all suites passed\n" } else { "some suites FAILED\n" });
    s
}
