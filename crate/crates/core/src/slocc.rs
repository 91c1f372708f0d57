//! Local invertible operators `A₁⊗…⊗Aₙ` and the covariance of `I*` under them.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::{self, IStarForm};
use crate::linalg::CMatrix;
use crate::qstate::QState;

/// Minimum `|det|` accepted by [`random_invertible_set`].
pub const DET_GUARD: f64 = 0.1;

/// One 2x2 operator per qubit, qubit 1 first.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalOperatorSet {
    ops: Vec<CMatrix>,
    det_product: Complex64,
}

impl LocalOperatorSet {
    pub fn new(ops: Vec<CMatrix>) -> Result<Self> {
        if ops.is_empty() {
            return Err(Error::OperatorCount {
                expected: 1,
                got: 0,
            });
        }
        let mut det_product = Complex64::new(1.0, 0.0);
        for op in &ops {
            if op.rows() != 2 || op.cols() != 2 {
                return Err(Error::BadOperator);
            }
            let d = op.det()?;
            if d == Complex64::new(0.0, 0.0) || !d.is_finite() {
                return Err(Error::BadOperator);
            }
            det_product *= d;
        }
        Ok(LocalOperatorSet { ops, det_product })
    }

    pub fn identity(n: usize) -> Self {
        Self::uniform(n, &CMatrix::identity(2)).expect("identity is invertible")
    }

    /// `n` copies of `op`.
    pub fn uniform(n: usize, op: &CMatrix) -> Result<Self> {
        Self::new(vec![op.clone(); n])
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn ops(&self) -> &[CMatrix] {
        &self.ops
    }

    /// `Π det Aᵢ`.
    pub fn det_product(&self) -> Complex64 {
        self.det_product
    }

    pub fn inverse(&self) -> Result<Self> {
        let inv = self
            .ops
            .iter()
            .map(|op| op.inverse()?.ok_or(Error::BadOperator))
            .collect::<Result<Vec<_>>>()?;
        Self::new(inv)
    }

    /// The set applying `self` first, then `then`: `Bᵢ·Aᵢ`.
    pub fn then(&self, then: &LocalOperatorSet) -> Result<Self> {
        if then.len() != self.len() {
            return Err(Error::OperatorCount {
                expected: self.len(),
                got: then.len(),
            });
        }
        let ops = self
            .ops
            .iter()
            .zip(&then.ops)
            .map(|(a, b)| b.matmul(a))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ops)
    }
}

/// `(A₁⊗…⊗Aₙ)|ψ⟩`, unnormalized.
pub fn apply_local(state: &QState, ops: &LocalOperatorSet) -> Result<QState> {
    let n = state.n_qubits();
    if ops.len() != n {
        return Err(Error::OperatorCount {
            expected: n,
            got: ops.len(),
        });
    }
    let mut amps = state.amplitudes().to_vec();
    for (q, op) in ops.ops.iter().enumerate() {
        let stride = 1usize << (n - 1 - q);
        let (m00, m01, m10, m11) = (op[(0, 0)], op[(0, 1)], op[(1, 0)], op[(1, 1)]);
        for i in 0..amps.len() {
            if i & stride != 0 {
                continue;
            }
            let (lo, hi) = (amps[i], amps[i | stride]);
            amps[i] = m00 * lo + m01 * hi;
            amps[i | stride] = m10 * lo + m11 * hi;
        }
    }
    QState::new(n, amps)
}

/// Gaussian 2x2 operators, each redrawn until `|det| ≥ 0.1`.
pub fn random_invertible_set(n: usize, seed: u64) -> Result<LocalOperatorSet> {
    if n == 0 {
        return Err(Error::TooFewQubits {
            what: "local operator set",
            min: 1,
            got: 0,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || -> Complex64 {
        Complex64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng))
    };
    let ops = (0..n)
        .map(|_| loop {
            let m = CMatrix::new(2, 2, (0..4).map(|_| draw()).collect()).expect("2x2");
            if m.det().expect("square").norm() >= DET_GUARD {
                break m;
            }
        })
        .collect();
    LocalOperatorSet::new(ops)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CovarianceReport {
    pub i_star_before: Complex64,
    pub i_star_after: Complex64,
    pub det_product: Complex64,
    /// `|I*(b) − I*(a)·Π det| / (1 + |I*(a)·Π det|)`
    pub i_star_rel_err: f64,
    pub tau_before: f64,
    pub tau_after: f64,
    /// `|τ(b) − τ(a)·|Π det|²| / (1 + τ(a)·|Π det|²)`
    pub tau_rel_err: f64,
}

impl CovarianceReport {
    pub const I_STAR_TOL: f64 = 1e-8;
    pub const TAU_TOL: f64 = 1e-7;

    pub fn passes(&self) -> bool {
        self.i_star_rel_err <= Self::I_STAR_TOL && self.tau_rel_err <= Self::TAU_TOL
    }
}

/// Checks `I*(A₁⊗…⊗Aₙ ψ) = I*(ψ)·Π det Aᵢ` and its `τ` consequence.
pub fn covariance_check(state: &QState, ops: &LocalOperatorSet) -> Result<CovarianceReport> {
    let moved = apply_local(state, ops)?;
    let before = invariants::i_star(state, IStarForm::Grouped)?;
    let after = invariants::i_star(&moved, IStarForm::Grouped)?;
    let det = ops.det_product();
    let predicted = before * det;
    let tau_before = invariants::n_tangle(state)?;
    let tau_after = invariants::n_tangle(&moved)?;
    let tau_predicted = tau_before * det.norm_sqr();
    Ok(CovarianceReport {
        i_star_before: before,
        i_star_after: after,
        det_product: det,
        i_star_rel_err: (after - predicted).norm() / (1.0 + predicted.norm()),
        tau_before,
        tau_after,
        tau_rel_err: (tau_after - tau_predicted).abs() / (1.0 + tau_predicted),
    })
}
