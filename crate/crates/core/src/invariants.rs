//! Tangle-side invariants of even-qubit pure states.
//!
//! The quartic n-tangle `τ = 2|S|` collapses to `τ = |2·S₀|²` where `S₀` is a
//! degree-2 sum over half the amplitudes, and `S₀` coincides with the degree-2
//! SLOCC invariant `I*`. This module computes every route to these numbers:
//!
//! * [`s0`] straight from the ε table,
//! * [`i_star`] in three summation layouts ([`IStarForm`]),
//! * [`n_tangle_fast`], the `2^(n-1)`-multiplication evaluation,
//! * [`n_tangle_oracle`], brute-force evaluations of the quartic sum.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qstate::QState;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Largest qubit count for the unrestricted quartic sum (`2^(4n)` quadruples).
pub const RAW_ORACLE_MAX_QUBITS: usize = 4;
pub const RAW_ORACLE_MIN_QUBITS: usize = 3;
/// Largest qubit count for the ε-constrained quartic sum (`2^(2n)` terms).
pub const CONSTRAINED_ORACLE_MAX_QUBITS: usize = 12;

/// The 2x2 antisymmetric symbol: `ε₀₀ = ε₁₁ = 0`, `ε₀₁ = -ε₁₀ = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EpsilonTensor {
    table: [[i8; 2]; 2],
}

pub const EPSILON: EpsilonTensor = EpsilonTensor {
    table: [[0, 1], [-1, 0]],
};

impl EpsilonTensor {
    #[inline]
    pub fn get(&self, a: usize, b: usize) -> i8 {
        self.table[a & 1][b & 1]
    }
}

/// `(-1)^N(l)`, where `N(l)` counts the ones in the `width`-bit form of `l`.
pub fn popcount_sign(l: usize, width: u32) -> i8 {
    debug_assert!(width >= usize::BITS || l < (1usize << width));
    if l.count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn require_even(state: &QState, what: &'static str) -> Result<usize> {
    let n = state.n_qubits();
    if n < 2 || n % 2 == 1 {
        return Err(Error::OddQubitCount { what, n });
    }
    Ok(n)
}

/// `Σ_α a_{α i} a_{ᾱ ī} Π ε(α_k, ᾱ_k)` over the first `n-1` qubits, with the
/// last qubit fixed to `last` in the first factor. Evaluated literally from
/// the ε table.
fn half_pair_sum(state: &QState, last: usize) -> Complex64 {
    let n = state.n_qubits();
    let a = state.amplitudes();
    let width = n - 1;
    let mask = (1usize << width) - 1;
    let mut sum = ZERO;
    for alpha in 0..=mask {
        let comp = !alpha & mask;
        let eps: i8 = (0..width)
            .map(|k| {
                let bit = (alpha >> k) & 1;
                EPSILON.get(bit, 1 - bit)
            })
            .product();
        let term = a[(alpha << 1) | last] * a[(comp << 1) | (1 - last)];
        sum += term * f64::from(eps);
    }
    sum
}

/// `S₀`: pairs `a_{α…0}` with `a_{ᾱ…1}` weighted by the ε product.
pub fn s0(state: &QState) -> Result<Complex64> {
    require_even(state, "S0")?;
    Ok(half_pair_sum(state, 0))
}

/// `S₁`: the same sum with the roles of the last qubit swapped.
pub fn s1(state: &QState) -> Result<Complex64> {
    require_even(state, "S1")?;
    Ok(half_pair_sum(state, 1))
}

/// Summation layouts of the degree-2 invariant `I*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IStarForm {
    /// `Σ_{l<2^(n-2)} (-1)^N(l) (a_{2l}·a_{2^n-1-2l} - a_{2l+1}·a_{2^n-2-2l})`
    Grouped,
    /// `Σ_{k<2^(n-1)} (-1)^N(k) a_k·a_{2^n-1-k}`
    Pairform,
    /// `Σ_{k<2^(n-2)} (-1)^N(k) (a_k·a_{2^n-1-k} - a_{2^(n-1)-1-k}·a_{2^(n-1)+k})`
    Folded,
}

impl IStarForm {
    pub const ALL: [IStarForm; 3] = [IStarForm::Grouped, IStarForm::Pairform, IStarForm::Folded];
}

fn signed(z: Complex64, sign: i8) -> Complex64 {
    if sign > 0 {
        z
    } else {
        -z
    }
}

/// The degree-2 SLOCC invariant `I*(a, n)` for even `n`.
pub fn i_star(state: &QState, form: IStarForm) -> Result<Complex64> {
    let n = require_even(state, "I*")?;
    let a = state.amplitudes();
    let full = 1usize << n;
    let half = full >> 1;
    let quarter = half >> 1;
    let w = n as u32;
    let sum = match form {
        IStarForm::Grouped => (0..quarter)
            .map(|l| {
                let t = a[2 * l] * a[full - 1 - 2 * l] - a[2 * l + 1] * a[full - 2 - 2 * l];
                signed(t, popcount_sign(l, w))
            })
            .sum(),
        IStarForm::Pairform => (0..half)
            .map(|k| signed(a[k] * a[full - 1 - k], popcount_sign(k, w)))
            .sum(),
        IStarForm::Folded => (0..quarter)
            .map(|k| {
                let t = a[k] * a[full - 1 - k] - a[half - 1 - k] * a[half + k];
                signed(t, popcount_sign(k, w))
            })
            .sum(),
    };
    Ok(sum)
}

/// `τ′ = 2|I*|`.
pub fn tau_prime(state: &QState) -> Result<f64> {
    Ok(2.0 * i_star(state, IStarForm::Grouped)?.norm())
}

/// Result of the fast n-tangle evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FastTangle {
    pub tau: f64,
    /// `Σ_{l<2^(n-1)} (-1)^N(l) a_{2l}·a_{2^n-1-2l}`
    pub sum: Complex64,
    /// Complex multiplications spent on the sum.
    pub sum_mults: u64,
    /// Modulus-square and scale applied to the sum.
    pub final_ops: u64,
}

/// `τ = 4|Σ_{l<2^(n-1)} (-1)^N(l) a_{2l} a_{2^n-1-2l}|²`.
pub fn n_tangle_fast(state: &QState) -> Result<FastTangle> {
    let n = require_even(state, "n-tangle")?;
    let a = state.amplitudes();
    let full = 1usize << n;
    let mut sum = ZERO;
    let mut mults = 0u64;
    for l in 0..full / 2 {
        let p = a[2 * l] * a[full - 1 - 2 * l];
        mults += 1;
        if l.count_ones() % 2 == 0 {
            sum += p;
        } else {
            sum -= p;
        }
    }
    Ok(FastTangle {
        tau: 4.0 * sum.norm_sqr(),
        sum,
        sum_mults: mults,
        final_ops: 2,
    })
}

/// Shorthand for `n_tangle_fast(state)?.tau`.
pub fn n_tangle(state: &QState) -> Result<f64> {
    Ok(n_tangle_fast(state)?.tau)
}

/// `|2·S₀|²` for any `n ≥ 2`, odd included.
///
/// For odd `n` this is not an invariant; it is exposed only to compare
/// against the quartic oracle at `n = 3`.
pub fn reduced_tangle_any_n(state: &QState) -> Result<f64> {
    if state.n_qubits() < 2 {
        return Err(Error::TooFewQubits {
            what: "reduced tangle",
            min: 2,
            got: state.n_qubits(),
        });
    }
    Ok(4.0 * half_pair_sum(state, 0).norm_sqr())
}

/// All scalar invariants of one even-`n` state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalarInvariants {
    pub s0: Complex64,
    pub i_star: Complex64,
    pub tau_prime: f64,
    pub n_tangle: f64,
}

impl ScalarInvariants {
    pub fn of(state: &QState) -> Result<Self> {
        let s0 = s0(state)?;
        let i_star = i_star(state, IStarForm::Grouped)?;
        let tau_prime = 2.0 * i_star.norm();
        Ok(ScalarInvariants {
            s0,
            i_star,
            tau_prime,
            n_tangle: n_tangle(state)?,
        })
    }
}

/// Brute-force evaluations of the quartic sum `S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleMode {
    /// Every index quadruple `(α, β, γ, δ)`, ε product evaluated per term.
    Raw,
    /// Only the quadruples the ε factors leave alive: `β_i = ᾱ_i`,
    /// `δ_i = γ̄_i` for `i < n`, `γ_n = ᾱ_n`, `δ_n = β̄_n`.
    Constrained,
}

impl OracleMode {
    pub fn check_budget(self, n: usize) -> Result<()> {
        let ok = match self {
            OracleMode::Raw => (RAW_ORACLE_MIN_QUBITS..=RAW_ORACLE_MAX_QUBITS).contains(&n),
            OracleMode::Constrained => {
                n == 3 || (n >= 2 && n.is_multiple_of(2) && n <= CONSTRAINED_ORACLE_MAX_QUBITS)
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::BudgetExceeded {
                mode: match self {
                    OracleMode::Raw => "raw oracle",
                    OracleMode::Constrained => "constrained oracle",
                },
                n,
                allowed: match self {
                    OracleMode::Raw => "3..=4 qubits",
                    OracleMode::Constrained => "n = 3 or even n <= 12",
                },
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleResult {
    pub mode: OracleMode,
    /// The quartic sum `S`.
    pub s: Complex64,
    /// `S₁` (last qubit of the first factor fixed to 1).
    pub s1: Complex64,
    /// `τ = 2|S|`.
    pub tau: f64,
    /// Index assignments visited.
    pub term_count: u64,
    /// Visited assignments whose ε product is nonzero.
    pub nonzero_terms: u64,
    /// Complex multiplications performed.
    pub mult_count: u64,
}

struct ConstrainedSums {
    total: Complex64,
    case1: Complex64,
    terms: u64,
}

/// Sum over `(α, γ₁…γ_{n-1}, β_n)`; `case1` collects the `β_n = α_n` terms.
fn constrained_sums(state: &QState) -> ConstrainedSums {
    let n = state.n_qubits();
    let a = state.amplitudes();
    let width = n - 1;
    let mask = (1usize << width) - 1;
    let sign = |x: usize| -> i8 { popcount_sign(x, width as u32) };
    let mut total = ZERO;
    let mut case1 = ZERO;
    let mut terms = 0u64;
    for alpha in 0..(1usize << n) {
        let a_prefix = alpha >> 1;
        let a_last = alpha & 1;
        let a_prefix_bar = !a_prefix & mask;
        // ε(α_k, ᾱ_k) = (-1)^α_k
        let alpha_sign = sign(a_prefix) * EPSILON.get(a_last, 1 - a_last);
        let first = a[alpha];
        for beta_last in 0..2usize {
            let beta = (a_prefix_bar << 1) | beta_last;
            let outer = alpha_sign * EPSILON.get(beta_last, 1 - beta_last);
            let ab = first * a[beta];
            let mut inner = ZERO;
            for gamma_prefix in 0..=mask {
                let gamma = (gamma_prefix << 1) | (1 - a_last);
                let delta = ((!gamma_prefix & mask) << 1) | (1 - beta_last);
                inner += signed(a[gamma] * a[delta], sign(gamma_prefix));
                terms += 1;
            }
            let contribution = signed(ab * inner, outer);
            total += contribution;
            if beta_last == a_last {
                case1 += contribution;
            }
        }
    }
    ConstrainedSums {
        total,
        case1,
        terms,
    }
}

fn raw_sum(state: &QState) -> (Complex64, u64, u64) {
    let n = state.n_qubits();
    let a = state.amplitudes();
    let dim = 1usize << n;
    let width = n - 1;
    // ε product over the first n-1 qubits of a pair of indices
    let prefix_eps: Vec<i8> = (0..dim * dim)
        .map(|ij| {
            let (i, j) = (ij / dim, ij % dim);
            (1..=width)
                .map(|k| EPSILON.get((i >> k) & 1, (j >> k) & 1))
                .product()
        })
        .collect();
    let mut sum = ZERO;
    let mut terms = 0u64;
    let mut nonzero = 0u64;
    for alpha in 0..dim {
        for beta in 0..dim {
            let e_ab = prefix_eps[alpha * dim + beta];
            for gamma in 0..dim {
                let e_last_ag = EPSILON.get(alpha & 1, gamma & 1);
                for delta in 0..dim {
                    terms += 1;
                    let e = e_ab
                        * prefix_eps[gamma * dim + delta]
                        * e_last_ag
                        * EPSILON.get(beta & 1, delta & 1);
                    if e == 0 {
                        continue;
                    }
                    nonzero += 1;
                    let prod = a[alpha] * a[beta] * a[gamma] * a[delta];
                    sum += prod * f64::from(e);
                }
            }
        }
    }
    (sum, terms, nonzero)
}

/// Evaluates `S` by brute force and returns `τ = 2|S|`.
pub fn n_tangle_oracle(state: &QState, mode: OracleMode) -> Result<OracleResult> {
    let n = state.n_qubits();
    mode.check_budget(n)?;
    let s1 = half_pair_sum(state, 1);
    let (s, term_count, nonzero_terms, mult_count) = match mode {
        OracleMode::Raw => {
            let (s, terms, nonzero) = raw_sum(state);
            (s, terms, nonzero, 3 * nonzero)
        }
        OracleMode::Constrained => {
            let sums = constrained_sums(state);
            // one product per inner term plus two per outer (α, β_n) pair
            let outer = 2u64 << n;
            (sums.total, sums.terms, sums.terms, sums.terms + 2 * outer)
        }
    };
    Ok(OracleResult {
        mode,
        s,
        s1,
        tau: 2.0 * s.norm(),
        term_count,
        nonzero_terms,
        mult_count,
    })
}

/// Gaps of the identities relating the quartic sum to `S₀` and `S₁`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReductionReport {
    pub s: Complex64,
    pub s0: Complex64,
    pub s1: Complex64,
    /// Partial sum of the `β_n = α_n` terms; cancels pairwise.
    pub case1_sum: Complex64,
    /// `|S - 2·S₀²|`
    pub s_gap: f64,
    /// `|S₁ + S₀|`
    pub s1_gap: f64,
    /// `|case-1 partial sum|`
    pub case1_gap: f64,
}

impl ReductionReport {
    pub const S_TOL: f64 = 1e-10;
    pub const S1_TOL: f64 = 1e-12;
    pub const CASE1_TOL: f64 = 1e-12;

    pub fn passes(&self) -> bool {
        self.s_gap <= Self::S_TOL && self.s1_gap <= Self::S1_TOL && self.case1_gap <= Self::CASE1_TOL
    }
}

pub fn verify_reduction(state: &QState) -> Result<ReductionReport> {
    let n = require_even(state, "reduction check")?;
    OracleMode::Constrained.check_budget(n)?;
    let sums = constrained_sums(state);
    let s0 = half_pair_sum(state, 0);
    let s1 = half_pair_sum(state, 1);
    Ok(ReductionReport {
        s: sums.total,
        s0,
        s1,
        case1_sum: sums.case1,
        s_gap: (sums.total - 2.0 * s0 * s0).norm(),
        s1_gap: (s1 + s0).norm(),
        case1_gap: sums.case1.norm(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MultiplicativityReport {
    pub tau_left: f64,
    pub tau_right: f64,
    pub tau_product: f64,
    pub gap: f64,
}

impl MultiplicativityReport {
    pub const TOL: f64 = 1e-10;

    pub fn passes(&self) -> bool {
        self.gap <= Self::TOL
    }
}

/// Compares `τ(a ⊗ b)` with `τ(a)·τ(b)` for even-qubit factors.
pub fn multiplicativity_check(left: &QState, right: &QState) -> Result<MultiplicativityReport> {
    require_even(left, "multiplicativity (left factor)")?;
    require_even(right, "multiplicativity (right factor)")?;
    let tau_left = n_tangle(left)?;
    let tau_right = n_tangle(right)?;
    let tau_product = n_tangle(&left.tensor(right)?)?;
    Ok(MultiplicativityReport {
        tau_left,
        tau_right,
        tau_product,
        gap: (tau_product - tau_left * tau_right).abs(),
    })
}
