//! Concurrence side: reduced density matrices, Wootters pairwise
//! concurrence, the qubit-1-versus-rest concurrence `C₁(2…n)`, residual
//! entanglement, product-state factorization and the term-level certificate
//! for `C₁(2…n)² ≥ τ`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants;
use crate::linalg::{self, CMatrix};
use crate::qstate::{QState, LOAD_NORM_TOL};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Largest qubit count for which [`PairTermLedger`] is materialized.
pub const LEDGER_MAX_QUBITS: usize = 10;
/// Largest qubit count for the streamed pair-sum form of `C₁(2…n)²`.
pub const PAIR_SUM_MAX_QUBITS: usize = 16;
/// Largest qubit count for the dense `2ⁿ×2ⁿ` density matrix.
pub const DENSE_MAX_QUBITS: usize = 10;

/// Coefficient floor used when diagonalizing `ρ·ρ̃`.
pub const WOOTTERS_COEFF_FLOOR: f64 = 1e-13;
/// Tolerated imaginary part or negativity of an eigenvalue of `ρ·ρ̃`.
pub const WOOTTERS_EIG_TOL: f64 = 1e-6;

/// A one- or two-qubit density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
}

impl DensityMatrix {
    pub const HERMITIAN_TOL: f64 = 1e-12;
    pub const TRACE_TOL: f64 = 1e-12;
    pub const EIGEN_FLOOR: f64 = -1e-10;

    /// Validates dimension, Hermiticity, unit trace and eigenvalue floor.
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let dim = matrix.rows();
        if !matrix.is_square() || !(dim == 2 || dim == 4) {
            return Err(Error::InvalidDensity(format!(
                "dimension {}x{} (expected 2x2 or 4x4)",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let gap = matrix.hermiticity_gap();
        if gap > Self::HERMITIAN_TOL {
            return Err(Error::InvalidDensity(format!("not Hermitian (gap {gap:e})")));
        }
        let tr = matrix.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > Self::TRACE_TOL {
            return Err(Error::InvalidDensity(format!("trace {tr}")));
        }
        let rho = DensityMatrix { matrix };
        let min = rho
            .eigenvalues()?
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        if min < Self::EIGEN_FLOOR {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {min:e}")));
        }
        Ok(rho)
    }

    fn trusted(matrix: CMatrix) -> Self {
        DensityMatrix { matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    /// Real parts of the eigenvalues, unsorted.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let spectrum = linalg::eigenvalues_with_coeff_floor(&self.matrix, WOOTTERS_COEFF_FLOOR)?;
        Ok(spectrum.eigenvalues().iter().map(|z| z.re).collect())
    }

    /// Eigenvalues with small negatives clamped to zero.
    pub fn clamped_eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(self.eigenvalues()?.into_iter().map(|x| x.max(0.0)).collect())
    }

    pub fn det(&self) -> Result<f64> {
        Ok(self.matrix.det()?.re)
    }
}

/// `|ψ⟩⟨ψ|` as a dense `2ⁿ×2ⁿ` matrix, normalized to unit trace.
pub fn density_from_pure(state: &QState) -> Result<CMatrix> {
    let n = state.n_qubits();
    if n > DENSE_MAX_QUBITS {
        return Err(Error::BudgetExceeded {
            mode: "dense density matrix",
            n,
            allowed: "n <= 10",
        });
    }
    let norm = state.norm_sqr();
    if norm == 0.0 {
        return Err(Error::ZeroVector);
    }
    let a = state.amplitudes();
    let dim = a.len();
    let data = (0..dim * dim)
        .map(|rc| a[rc / dim] * a[rc % dim].conj() / norm)
        .collect();
    CMatrix::new(dim, dim, data)
}

fn check_keep(n: usize, keep: &[usize]) -> Result<()> {
    let ok = matches!(keep.len(), 1 | 2)
        && keep.iter().all(|&q| q < n)
        && !(keep.len() == 2 && keep[0] == keep[1]);
    if ok {
        Ok(())
    } else {
        Err(Error::BadSubset {
            n,
            keep: keep.to_vec(),
        })
    }
}

/// Bits of `index` at the kept qubits, first kept qubit most significant.
fn kept_bits(index: usize, n: usize, keep: &[usize]) -> usize {
    keep.iter()
        .fold(0, |acc, &q| (acc << 1) | ((index >> (n - 1 - q)) & 1))
}

/// `index` with its kept-qubit bits replaced by `value`.
fn with_kept_bits(index: usize, n: usize, keep: &[usize], value: usize) -> usize {
    let m = keep.len();
    keep.iter().enumerate().fold(index, |acc, (j, &q)| {
        let shift = n - 1 - q;
        let bit = (value >> (m - 1 - j)) & 1;
        (acc & !(1 << shift)) | (bit << shift)
    })
}

/// Traces out every qubit not in `keep` (0-based, ordered; the first kept
/// qubit becomes the most significant). The result has unit trace.
pub fn partial_trace(state: &QState, keep: &[usize]) -> Result<DensityMatrix> {
    let n = state.n_qubits();
    check_keep(n, keep)?;
    let norm = state.norm_sqr();
    if norm == 0.0 {
        return Err(Error::ZeroVector);
    }
    let a = state.amplitudes();
    let dk = 1usize << keep.len();
    let mut m = CMatrix::zeros(dk, dk);
    for (i, ai) in a.iter().enumerate() {
        if *ai == ZERO {
            continue;
        }
        let r = kept_bits(i, n, keep);
        for c in 0..dk {
            let j = with_kept_bits(i, n, keep, c);
            m[(r, c)] += ai * a[j].conj();
        }
    }
    Ok(DensityMatrix::trusted(m.scale(Complex64::new(1.0 / norm, 0.0))))
}

/// Reference partial trace of a dense `2ⁿ×2ⁿ` matrix.
pub fn partial_trace_dense(rho: &CMatrix, n: usize, keep: &[usize]) -> Result<CMatrix> {
    check_keep(n, keep)?;
    let dim = 1usize << n;
    if rho.rows() != dim || rho.cols() != dim {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix for {n} qubits",
            rho.rows(),
            rho.cols()
        )));
    }
    let dk = 1usize << keep.len();
    let mut out = CMatrix::zeros(dk, dk);
    for i in 0..dim {
        for j in 0..dim {
            let same_rest = (0..n)
                .filter(|q| !keep.contains(q))
                .all(|q| ((i ^ j) >> (n - 1 - q)) & 1 == 0);
            if same_rest {
                out[(kept_bits(i, n, keep), kept_bits(j, n, keep))] += rho[(i, j)];
            }
        }
    }
    Ok(out)
}

fn sigma_yy() -> CMatrix {
    CMatrix::from_real_rows(&[
        &[0.0, 0.0, 0.0, -1.0],
        &[0.0, 0.0, 1.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[-1.0, 0.0, 0.0, 0.0],
    ])
    .expect("static 4x4")
}

fn require_two_qubit(rho: &DensityMatrix) -> Result<()> {
    if rho.dim() == 4 {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!(
            "two-qubit density matrix required, got dimension {}",
            rho.dim()
        )))
    }
}

/// `ρ̃ = (σ_y⊗σ_y)·ρ*·(σ_y⊗σ_y)`.
pub fn spin_flip(rho: &DensityMatrix) -> Result<DensityMatrix> {
    require_two_qubit(rho)?;
    let yy = sigma_yy();
    let flipped = yy.matmul(&rho.matrix.conj())?.matmul(&yy)?;
    Ok(DensityMatrix::trusted(flipped))
}

/// Square roots of the eigenvalues of `ρ·ρ̃`, descending.
pub fn wootters_lambdas(rho: &DensityMatrix) -> Result<Vec<f64>> {
    let flipped = spin_flip(rho)?;
    let product = rho.matrix.matmul(&flipped.matrix)?;
    let scale = rho.matrix.frobenius_norm() * flipped.matrix.frobenius_norm();
    let spectrum = linalg::eigenvalues_with_coeff_floor_at(&product, WOOTTERS_COEFF_FLOOR, scale)?;
    let mut lambdas = Vec::with_capacity(4);
    for mu in spectrum.eigenvalues() {
        if mu.im.abs() > WOOTTERS_EIG_TOL || mu.re < -WOOTTERS_EIG_TOL {
            return Err(Error::InvalidDensity(format!(
                "eigenvalue {mu} of rho*rho_tilde is not a nonnegative real"
            )));
        }
        lambdas.push(mu.re.max(0.0).sqrt());
    }
    lambdas.sort_by(|x, y| y.total_cmp(x));
    Ok(lambdas)
}

/// `max(0, λ₁ − λ₂ − λ₃ − λ₄)`.
pub fn wootters_c(rho: &DensityMatrix) -> Result<f64> {
    let l = wootters_lambdas(rho)?;
    Ok((l[0] - l[1] - l[2] - l[3]).max(0.0))
}

/// `2|a₀a₃ − a₁a₂|` for a normalized two-qubit pure state.
pub fn pure_two_qubit_concurrence(state: &QState) -> Result<f64> {
    if state.n_qubits() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "two-qubit state required, got {} qubits",
            state.n_qubits()
        )));
    }
    let a = state.amplitudes();
    Ok(2.0 * (a[0] * a[3] - a[1] * a[2]).norm() / state.norm_sqr())
}

/// Evaluation routes for `C₁(2…n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CForm {
    /// `4·det ρ₁`
    Det,
    /// `4·Σ_{i<j} |P(i,j)|²`
    Sum,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OneRest {
    pub c: f64,
    pub c_squared: f64,
}

impl OneRest {
    fn from_squared(c_squared: f64) -> Self {
        OneRest {
            c: c_squared.max(0.0).sqrt(),
            c_squared,
        }
    }
}

fn require_qubits(state: &QState, what: &'static str, min: usize) -> Result<usize> {
    let n = state.n_qubits();
    if n < min {
        return Err(Error::TooFewQubits { what, min, got: n });
    }
    Ok(n)
}

/// `P(i,j) = a_i·a_{j+h} − a_{i+h}·a_j`, `h = 2^(n-1)`.
#[inline]
fn pair_term(a: &[Complex64], half: usize, i: usize, j: usize) -> Complex64 {
    a[i] * a[j + half] - a[i + half] * a[j]
}

fn pair_sum_streamed(state: &QState) -> Result<f64> {
    let n = state.n_qubits();
    if n > PAIR_SUM_MAX_QUBITS {
        return Err(Error::BudgetExceeded {
            mode: "pair-sum concurrence",
            n,
            allowed: "n <= 16",
        });
    }
    let a = state.amplitudes();
    let half = a.len() / 2;
    let mut total = 0.0;
    for i in 0..half {
        let row: f64 = (i + 1..half)
            .map(|j| pair_term(a, half, i, j).norm_sqr())
            .sum();
        total += row;
    }
    Ok(total)
}

/// Concurrence of qubit 1 against the remaining `n-1` qubits.
pub fn c_one_rest(state: &QState, form: CForm) -> Result<OneRest> {
    require_qubits(state, "one-versus-rest concurrence", 2)?;
    let c_squared = match form {
        CForm::Det => 4.0 * partial_trace(state, &[0])?.det()?,
        CForm::Sum => 4.0 * pair_sum_streamed(state)?,
    };
    Ok(OneRest::from_squared(c_squared))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConcurrenceReport {
    pub c_one_rest: f64,
    pub c_one_rest_squared: f64,
    /// `C₁ₖ` for `k = 2..n`.
    pub c_pairs: Vec<f64>,
    /// `τ₁(2…n) = C₁(2…n)² − Σₖ C₁ₖ²`
    pub residual: f64,
    pub monogamy_slack: f64,
}

impl ConcurrenceReport {
    pub const MONOGAMY_TOL: f64 = 1e-9;
}

/// Full concurrence report, qubit 1 against each other qubit and the rest.
pub fn residual_tangle(state: &QState) -> Result<ConcurrenceReport> {
    let n = require_qubits(state, "residual entanglement", 2)?;
    let one_rest = c_one_rest(state, CForm::Det)?;
    let c_pairs = (1..n)
        .map(|k| wootters_c(&partial_trace(state, &[0, k])?))
        .collect::<Result<Vec<_>>>()?;
    let pair_sq: f64 = c_pairs.iter().map(|c| c * c).sum();
    let residual = one_rest.c_squared - pair_sq;
    Ok(ConcurrenceReport {
        c_one_rest: one_rest.c,
        c_one_rest_squared: one_rest.c_squared,
        c_pairs,
        residual,
        monogamy_slack: residual,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorCase {
    /// Qubit 1 is `|1⟩`; the rest is the upper half of the amplitudes.
    UpperHalf,
    /// Qubit 1 is `|0⟩ + α|1⟩`; the rest is the lower half.
    Pivot,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Factorization {
    Product {
        first: QState,
        rest: QState,
        case: FactorCase,
        fidelity: f64,
    },
    NotAProduct {
        c: f64,
    },
}

impl Factorization {
    pub fn is_product(&self) -> bool {
        matches!(self, Factorization::Product { .. })
    }
}

pub const DEFAULT_FACTOR_TOL: f64 = 1e-8;

/// Splits `|ψ⟩ = |φ⟩₁ ⊗ |φ⟩₂…ₙ` when `C₁(2…n) < tol`.
///
/// `C` is taken from the pair sum where the budget allows: `4·det ρ₁`
/// cancels to about `1e-16` on exact products, which leaves `C ≈ 1e-8`.
pub fn factor_one_rest(state: &QState, tol: f64) -> Result<Factorization> {
    let n = require_qubits(state, "factorization", 2)?;
    let norm = state.norm_sqr();
    if (norm - 1.0).abs() > LOAD_NORM_TOL {
        return Err(Error::NotNormalized(norm));
    }
    let form = if n <= PAIR_SUM_MAX_QUBITS {
        CForm::Sum
    } else {
        CForm::Det
    };
    let c = c_one_rest(state, form)?.c;
    if c.is_nan() || c >= tol {
        return Ok(Factorization::NotAProduct { c });
    }
    let a = state.amplitudes();
    let half = a.len() / 2;
    let (lower, upper) = a.split_at(half);
    let lower_norm: f64 = lower.iter().map(|z| z.norm_sqr()).sum();
    let one = Complex64::new(1.0, 0.0);
    let (first, rest, case) = if lower_norm < tol * tol {
        (
            QState::qubit(ZERO, one)?,
            QState::new(n - 1, upper.to_vec())?.normalized()?,
            FactorCase::UpperHalf,
        )
    } else {
        let pivot = (0..half)
            .max_by(|&i, &j| lower[i].norm_sqr().total_cmp(&lower[j].norm_sqr()))
            .expect("nonempty half");
        let alpha = upper[pivot] / lower[pivot];
        (
            QState::qubit(one, alpha)?,
            QState::new(n - 1, lower.to_vec())?.normalized()?,
            FactorCase::Pivot,
        )
    };
    let fidelity = state.inner(&first.tensor(&rest)?)?.norm();
    if fidelity < 1.0 - 10.0 * tol {
        return Ok(Factorization::NotAProduct { c });
    }
    Ok(Factorization::Product {
        first,
        rest,
        case,
        fidelity,
    })
}

/// Every `P(i,j)` and `Z_k` of one state.
#[derive(Debug, Clone, PartialEq)]
pub struct PairTermLedger {
    n: usize,
    half: usize,
    p: Vec<Complex64>,
    z: Vec<f64>,
}

impl PairTermLedger {
    pub fn new(state: &QState) -> Result<Self> {
        let n = require_qubits(state, "pair-term ledger", 2)?;
        if n > LEDGER_MAX_QUBITS {
            return Err(Error::BudgetExceeded {
                mode: "pair-term ledger",
                n,
                allowed: "n <= 10",
            });
        }
        let a = state.amplitudes();
        let full = a.len();
        let half = full / 2;
        let p = (0..half * half)
            .map(|ij| pair_term(a, half, ij / half, ij % half))
            .collect();
        let z = (0..half / 2)
            .map(|k| (a[k] * a[full - 1 - k] - a[half - 1 - k] * a[half + k]).norm())
            .collect();
        Ok(PairTermLedger { n, half, p, z })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    /// `2^(n-1)`.
    pub fn half(&self) -> usize {
        self.half
    }

    pub fn p(&self, i: usize, j: usize) -> Complex64 {
        self.p[i * self.half + j]
    }

    pub fn z(&self, k: usize) -> f64 {
        self.z[k]
    }

    pub fn zs(&self) -> &[f64] {
        &self.z
    }

    /// `max_k | Z_k − |P(k, h−1−k)| |`.
    pub fn z_identity_gap(&self) -> f64 {
        (0..self.z.len())
            .map(|k| (self.z[k] - self.p(k, self.half - 1 - k).norm()).abs())
            .fold(0.0, f64::max)
    }

    /// `4·Σ_{i<j} |P(i,j)|²`.
    pub fn c_squared(&self) -> f64 {
        let h = self.half;
        4.0 * (0..h)
            .flat_map(|i| (i + 1..h).map(move |j| (i, j)))
            .map(|(i, j)| self.p(i, j).norm_sqr())
            .sum::<f64>()
    }

    /// The three partial sums of `Σ_{i<j} |P(i,j)|²`: pairs with
    /// `i < h/2, j ≠ h−1−i`; pairs with `h/2 ≤ i`; and `Σ Z_k²`.
    pub fn blocks(&self) -> [f64; 3] {
        let h = self.half;
        let q = h / 2;
        let mut first = 0.0;
        let mut second = 0.0;
        for i in 0..h {
            for j in i + 1..h {
                let t = self.p(i, j).norm_sqr();
                if i < q {
                    if j != h - 1 - i {
                        first += t;
                    }
                } else {
                    second += t;
                }
            }
        }
        let third = self.z.iter().map(|z| z * z).sum();
        [first, second, third]
    }

    /// Left side minus `Z_k·Z_m` of the four-term pairing inequality.
    pub fn pair_slack(&self, k: usize, m: usize) -> f64 {
        let h1 = self.half - 1;
        let lhs = self.p(k, h1 - m).norm() * self.p(m, h1 - k).norm()
            + self.p(k, m).norm() * self.p(h1 - m, h1 - k).norm();
        lhs - self.z[k] * self.z[m]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Result3Certificate {
    pub c_squared: f64,
    pub tau: f64,
    pub blocks: [f64; 3],
    /// (i) `|4·(b₁ + b₂ + b₃) − C²|`
    pub decomposition_gap: f64,
    /// (ii) `4(Σ Z_k)² − τ`
    pub z_bound_slack: f64,
    /// (iii) minimum over `k < m` of the pairing slack
    pub min_pair_slack: f64,
    /// `b₁ + b₂ − 2·Σ_{k<m} Z_k Z_m`
    pub aggregate_slack: f64,
    /// (iv) `C² − τ`
    pub headline_slack: f64,
    pub z_identity_gap: f64,
}

impl Result3Certificate {
    pub const DECOMPOSITION_TOL: f64 = 1e-11;
    pub const Z_BOUND_TOL: f64 = 1e-12;
    pub const PAIR_TOL: f64 = 1e-12;
    pub const HEADLINE_TOL: f64 = 1e-11;

    pub fn checks(&self) -> [bool; 4] {
        [
            self.decomposition_gap <= Self::DECOMPOSITION_TOL,
            self.z_bound_slack >= -Self::Z_BOUND_TOL,
            self.min_pair_slack >= -Self::PAIR_TOL,
            self.headline_slack >= -Self::HEADLINE_TOL,
        ]
    }

    pub fn passes(&self) -> bool {
        self.checks().iter().all(|&ok| ok) && self.z_identity_gap == 0.0
    }
}

/// Term-by-term evidence that `C₁(2…n)² ≥ τ` for an even-`n` state.
pub fn result3_certificate(state: &QState) -> Result<Result3Certificate> {
    let n = state.n_qubits();
    if n % 2 == 1 {
        return Err(Error::OddQubitCount {
            what: "concurrence/tangle certificate",
            n,
        });
    }
    let ledger = PairTermLedger::new(state)?;
    let c_squared = 4.0 * pair_sum_streamed(state)?;
    let tau = invariants::n_tangle(state)?;
    let blocks = ledger.blocks();
    let zs = ledger.zs();
    let z_total: f64 = zs.iter().sum();
    let mut min_pair_slack = f64::INFINITY;
    let mut cross = 0.0;
    for k in 0..zs.len() {
        for m in k + 1..zs.len() {
            min_pair_slack = min_pair_slack.min(ledger.pair_slack(k, m));
            cross += zs[k] * zs[m];
        }
    }
    Ok(Result3Certificate {
        c_squared,
        tau,
        blocks,
        decomposition_gap: (4.0 * blocks.iter().sum::<f64>() - c_squared).abs(),
        z_bound_slack: 4.0 * z_total * z_total - tau,
        min_pair_slack,
        aggregate_slack: blocks[0] + blocks[1] - 2.0 * cross,
        headline_slack: c_squared - tau,
        z_identity_gap: ledger.z_identity_gap(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartialMeasureReport {
    pub left_qubits: usize,
    pub c_product: f64,
    pub c_left: f64,
    /// `|C₁(2…n)(left⊗right) − C₁(2…l)(left)|`
    pub c_gap: f64,
    /// `max_{k ≤ l} |C₁ₖ(left⊗right) − C₁ₖ(left)|`
    pub inner_pair_gap: f64,
    /// `max_{k > l} C₁ₖ(left⊗right)`
    pub cross_pair_max: f64,
    /// `max_{k > l}` distance of `ρ₁ₖ·ρ̃₁ₖ` from its best multiple of the identity
    pub cross_scalar_gap: f64,
    pub residual_product: f64,
    pub residual_left: f64,
    pub residual_gap: f64,
}

impl PartialMeasureReport {
    pub const C_TOL: f64 = 1e-10;
    pub const RESIDUAL_TOL: f64 = 1e-9;
    pub const SCALAR_TOL: f64 = 1e-12;

    pub fn passes(&self) -> bool {
        self.c_gap <= Self::C_TOL
            && self.inner_pair_gap <= Self::C_TOL
            && self.cross_pair_max <= Self::C_TOL
            && self.cross_scalar_gap <= Self::SCALAR_TOL
            && self.residual_gap <= Self::RESIDUAL_TOL
    }
}

/// Compares the qubit-1 measures of `left ⊗ right` with those of `left`.
pub fn partial_measure_check(left: &QState, right: &QState) -> Result<PartialMeasureReport> {
    let l = require_qubits(left, "partial-measure check (left factor)", 2)?;
    let product = left.tensor(right)?;
    let whole = residual_tangle(&product)?;
    let part = residual_tangle(left)?;
    let inner_pair_gap = (0..l - 1)
        .map(|k| (whole.c_pairs[k] - part.c_pairs[k]).abs())
        .fold(0.0, f64::max);
    let cross_pair_max = whole.c_pairs[l - 1..].iter().copied().fold(0.0, f64::max);
    let mut cross_scalar_gap: f64 = 0.0;
    for k in l..product.n_qubits() {
        let rho = partial_trace(&product, &[0, k])?;
        let m = rho.matrix.matmul(&spin_flip(&rho)?.matrix)?;
        let c = m.trace() / 4.0;
        let scalar = CMatrix::identity(4).scale(c);
        cross_scalar_gap = cross_scalar_gap.max(m.max_abs_diff(&scalar));
    }
    Ok(PartialMeasureReport {
        left_qubits: l,
        c_product: whole.c_one_rest,
        c_left: part.c_one_rest,
        c_gap: (whole.c_one_rest - part.c_one_rest).abs(),
        inner_pair_gap,
        cross_pair_max,
        cross_scalar_gap,
        residual_product: whole.residual,
        residual_left: part.residual,
        residual_gap: (whole.residual - part.residual).abs(),
    })
}
