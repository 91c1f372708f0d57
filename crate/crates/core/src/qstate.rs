//! Dense pure states of `n` qubits.
//!
//! Amplitude `a_{i1 i2 ... in}` is stored at index `i1·2^(n-1) + ... + in·2^0`,
//! so qubit 1 is the most significant bit. Qubits are addressed 0-based in the
//! API (`0` is qubit 1). With this layout the even indices are exactly the
//! basis states whose last qubit is `0`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest qubit count a dense state may have.
pub const MAX_QUBITS: usize = 24;

/// Norm tolerance applied to states loaded without normalization.
pub const LOAD_NORM_TOL: f64 = 1e-9;

/// Norm tolerance for states built internally.
pub const NORM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct QState {
    n: usize,
    amps: Vec<Complex64>,
}

/// One `{basis, re, im}` entry of a sparse state description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisTerm {
    pub basis: String,
    #[serde(default)]
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateForm {
    Dense { amplitudes: Vec<[f64; 2]> },
    Sparse { terms: Vec<BasisTerm> },
}

/// Serialized state description, either dense or sparse.
///
/// ```json
/// {"n": 2, "amplitudes": [[0.7071, 0], [0, 0], [0, 0], [0.7071, 0]]}
/// {"n": 4, "terms": [{"basis": "0000", "re": 1}, {"basis": "1111", "re": 1}], "normalize": true}
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateSpec {
    pub n: usize,
    #[serde(flatten)]
    pub form: StateForm,
    #[serde(default)]
    pub normalize: bool,
}

impl StateSpec {
    /// Dense description of `state`, with `normalize` unset.
    pub fn dense(state: &QState) -> Self {
        StateSpec {
            n: state.n,
            form: StateForm::Dense {
                amplitudes: state.amps.iter().map(|a| [a.re, a.im]).collect(),
            },
            normalize: false,
        }
    }

    fn raw_amplitudes(&self) -> Result<Vec<Complex64>> {
        check_qubits(self.n)?;
        let dim = 1usize << self.n;
        match &self.form {
            StateForm::Dense { amplitudes } => {
                if amplitudes.len() != dim {
                    return Err(Error::LengthMismatch {
                        expected: dim,
                        got: amplitudes.len(),
                    });
                }
                Ok(amplitudes
                    .iter()
                    .map(|&[re, im]| Complex64::new(re, im))
                    .collect())
            }
            StateForm::Sparse { terms } => {
                let mut amps = vec![Complex64::new(0.0, 0.0); dim];
                let mut seen = vec![false; dim];
                for term in terms {
                    let idx = parse_basis(&term.basis, self.n)?;
                    if seen[idx] {
                        return Err(Error::DuplicateBasis(term.basis.clone()));
                    }
                    seen[idx] = true;
                    amps[idx] = Complex64::new(term.re, term.im);
                }
                Ok(amps)
            }
        }
    }

    /// Builds the state, normalizing if requested and otherwise insisting the
    /// norm is already 1 within [`LOAD_NORM_TOL`].
    pub fn to_state(&self) -> Result<QState> {
        let state = self.to_state_raw()?;
        if self.normalize {
            return state.normalized();
        }
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > LOAD_NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(state)
    }

    /// Builds the state exactly as written, ignoring `normalize` and skipping
    /// the norm check. Zero vectors are still rejected.
    pub fn to_state_raw(&self) -> Result<QState> {
        let amps = self.raw_amplitudes()?;
        if amps.iter().all(|a| a.norm_sqr() == 0.0) {
            return Err(Error::ZeroVector);
        }
        QState::new(self.n, amps)
    }
}

/// MSB-first bitstring to basis index.
pub fn parse_basis(label: &str, n: usize) -> Result<usize> {
    if label.len() != n {
        return Err(Error::BadBasis(label.to_string()));
    }
    label.chars().try_fold(0usize, |acc, c| match c {
        '0' => Ok(acc << 1),
        '1' => Ok((acc << 1) | 1),
        _ => Err(Error::BadBasis(label.to_string())),
    })
}

/// Basis index to its MSB-first bitstring.
pub fn basis_label(index: usize, n: usize) -> String {
    (0..n)
        .map(|q| if (index >> (n - 1 - q)) & 1 == 1 { '1' } else { '0' })
        .collect()
}

fn check_qubits(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::QubitCount {
            got: n,
            max: MAX_QUBITS,
        });
    }
    Ok(())
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

impl QState {
    pub fn new(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_qubits(n)?;
        let dim = 1usize << n;
        if amps.len() != dim {
            return Err(Error::LengthMismatch {
                expected: dim,
                got: amps.len(),
            });
        }
        Ok(QState { n, amps })
    }

    pub fn from_spec(spec: &StateSpec) -> Result<Self> {
        spec.to_state()
    }

    /// The computational basis state `|index⟩`.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_qubits(n)?;
        let dim = 1usize << n;
        if index >= dim {
            return Err(Error::BadBasis(format!("index {index}")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(QState { n, amps })
    }

    /// Single-qubit state `a|0⟩ + b|1⟩`, normalized.
    pub fn qubit(a: Complex64, b: Complex64) -> Result<Self> {
        QState::new(1, vec![a, b])?.normalized()
    }

    /// `(|0...0⟩ + |1...1⟩)/√2`.
    pub fn ghz(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewQubits {
                what: "GHZ state",
                min: 2,
                got: n,
            });
        }
        check_qubits(n)?;
        let dim = 1usize << n;
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[0] = Complex64::new(h, 0.0);
        amps[dim - 1] = Complex64::new(h, 0.0);
        Ok(QState { n, amps })
    }

    /// Equal superposition of the `n` single-excitation basis states.
    pub fn w(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewQubits {
                what: "W state",
                min: 2,
                got: n,
            });
        }
        Self::dicke(1, n)
    }

    /// Normalized symmetric Dicke state with `l` excitations.
    pub fn dicke(l: usize, n: usize) -> Result<Self> {
        if n < 2 || l == 0 || l >= n {
            return Err(Error::DickeOutOfRange { l, n });
        }
        check_qubits(n)?;
        let dim = 1usize << n;
        let amp = Complex64::new(1.0 / (binomial(n, l) as f64).sqrt(), 0.0);
        let amps = (0..dim)
            .map(|i| {
                if i.count_ones() as usize == l {
                    amp
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        Ok(QState { n, amps })
    }

    /// Haar-random pure state, deterministic per `seed`.
    pub fn random_pure(n: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random(n, &mut rng)
    }

    /// Gaussian amplitudes then normalized, i.e. uniform on the unit sphere.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        check_qubits(n)?;
        let dim = 1usize << n;
        let amps = (0..dim)
            .map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                Complex64::new(re, im)
            })
            .collect();
        QState { n, amps }.normalized()
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= NORM_TOL
    }

    pub fn normalized(&self) -> Result<Self> {
        let norm = self.norm_sqr().sqrt();
        if norm == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(self.scaled(Complex64::new(1.0 / norm, 0.0)))
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        QState {
            n: self.n,
            amps: self.amps.iter().map(|a| a * c).collect(),
        }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &QState) -> Result<Complex64> {
        if self.n != other.n {
            return Err(Error::LengthMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `self ⊗ right`; `self` occupies the leading (high-order) qubits.
    pub fn tensor(&self, right: &QState) -> Result<Self> {
        let n = self.n + right.n;
        check_qubits(n)?;
        let amps = self
            .amps
            .iter()
            .flat_map(|a| right.amps.iter().map(move |b| a * b))
            .collect();
        Ok(QState { n, amps })
    }

    /// Moves qubit `k` to position `perm[k]` (both 0-based).
    pub fn permute_qubits(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n;
        let mut hit = vec![false; n];
        let valid = perm.len() == n
            && perm.iter().all(|&p| p < n && !std::mem::replace(&mut hit[p], true));
        if !valid {
            return Err(Error::NotAPermutation {
                n,
                perm: perm.to_vec(),
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); self.dim()];
        for (i, a) in self.amps.iter().enumerate() {
            let j = (0..n).fold(0usize, |acc, k| {
                let bit = (i >> (n - 1 - k)) & 1;
                acc | (bit << (n - 1 - perm[k]))
            });
            amps[j] = *a;
        }
        Ok(QState { n, amps })
    }
}

/// Inverse of a 0-based qubit permutation.
pub fn inverse_permutation(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (k, &p) in perm.iter().enumerate() {
        inv[p] = k;
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;

    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn close(a: &QState, b: &QState) -> bool {
        a.n_qubits() == b.n_qubits()
            && a.amplitudes()
                .iter()
                .zip(b.amplitudes())
                .all(|(x, y)| (x - y).norm() < 1e-15)
    }

    fn nonzero(s: &QState) -> Vec<usize> {
        (0..s.dim()).filter(|&i| s.amplitude(i).norm() > 0.0).collect()
    }

    #[test]
    fn sparse_basis_term() {
        let spec: StateSpec =
            serde_json_like(r#"{"n":4,"terms":[{"basis":"0011","re":1}],"normalize":true}"#);
        let s = spec.to_state().unwrap();
        assert_eq!(nonzero(&s), vec![3]);
        assert_eq!(s.amplitude(3), c(1.0));
    }

    #[test]
    fn dense_zero_vector_rejected() {
        let spec = StateSpec {
            n: 2,
            form: StateForm::Dense {
                amplitudes: vec![[0.0, 0.0]; 4],
            },
            normalize: true,
        };
        assert_eq!(spec.to_state(), Err(Error::ZeroVector));
    }

    #[test]
    fn sparse_ghz_normalizes() {
        let spec: StateSpec = serde_json_like(
            r#"{"n":4,"terms":[{"basis":"0000","re":1},{"basis":"1111","re":1}],"normalize":true}"#,
        );
        let s = spec.to_state().unwrap();
        assert!((s.amplitude(0).re - H).abs() < 1e-15);
        assert!((s.amplitude(15).re - H).abs() < 1e-15);
        assert!(close(&s, &QState::ghz(4).unwrap()));
    }

    #[test]
    fn spec_errors() {
        let dup: StateSpec = serde_json_like(
            r#"{"n":2,"terms":[{"basis":"01","re":1},{"basis":"01","re":1}],"normalize":true}"#,
        );
        assert_eq!(dup.to_state(), Err(Error::DuplicateBasis("01".into())));
        let short: StateSpec = serde_json_like(r#"{"n":2,"amplitudes":[[1,0]]}"#);
        assert!(matches!(
            short.to_state(),
            Err(Error::LengthMismatch { expected: 4, got: 1 })
        ));
        let bad: StateSpec = serde_json_like(r#"{"n":2,"terms":[{"basis":"0a","re":1}]}"#);
        assert!(matches!(bad.to_state(), Err(Error::BadBasis(_))));
        let unnorm: StateSpec = serde_json_like(r#"{"n":1,"amplitudes":[[1,0],[1,0]]}"#);
        assert!(matches!(unnorm.to_state(), Err(Error::NotNormalized(_))));
        assert!(unnorm.to_state_raw().is_ok());
    }

    #[test]
    fn named_states() {
        let g2 = QState::ghz(2).unwrap();
        assert!(close(&g2, &QState::new(2, vec![c(H), c(0.0), c(0.0), c(H)]).unwrap()));
        assert_eq!(nonzero(&QState::ghz(3).unwrap()), vec![0, 7]);
        assert_eq!(nonzero(&QState::ghz(4).unwrap()), vec![0, 15]);

        let w2 = QState::new(2, vec![c(0.0), c(H), c(H), c(0.0)]).unwrap();
        assert!(close(&QState::w(2).unwrap(), &w2));
        let w3 = QState::w(3).unwrap();
        assert_eq!(nonzero(&w3), vec![1, 2, 4]);
        assert!((w3.amplitude(1).re - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        let w4 = QState::w(4).unwrap();
        assert_eq!(nonzero(&w4), vec![1, 2, 4, 8]);
        assert!((w4.amplitude(8).re - 0.5).abs() < 1e-15);

        let d24 = QState::dicke(2, 4).unwrap();
        assert_eq!(nonzero(&d24), vec![3, 5, 6, 9, 10, 12]);
        assert!((d24.amplitude(5).re - 1.0 / 6f64.sqrt()).abs() < 1e-15);
        assert_eq!(QState::dicke(1, 3).unwrap(), w3);
        let d36 = QState::dicke(3, 6).unwrap();
        assert_eq!(nonzero(&d36).len(), 20);
        assert!((d36.amplitude(7).re - 1.0 / 20f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn constructor_errors() {
        assert!(QState::ghz(1).is_err());
        assert!(QState::w(1).is_err());
        assert_eq!(QState::dicke(0, 4), Err(Error::DickeOutOfRange { l: 0, n: 4 }));
        assert_eq!(QState::dicke(4, 4), Err(Error::DickeOutOfRange { l: 4, n: 4 }));
    }

    #[test]
    fn labels_match_constructors() {
        for n in 2..=6 {
            let w = QState::w(n).unwrap();
            for i in 0..w.dim() {
                let label = basis_label(i, n);
                assert_eq!(parse_basis(&label, n).unwrap(), i);
                let ones = label.chars().filter(|&ch| ch == '1').count();
                assert_eq!(w.amplitude(i).norm() > 0.0, ones == 1, "{label}");
            }
        }
        assert_eq!(basis_label(3, 4), "0011");
        assert_eq!(basis_label(8, 4), "1000");
    }

    #[test]
    fn tensor_examples() {
        let zero = QState::basis(1, 0).unwrap();
        let one = QState::basis(1, 1).unwrap();
        assert_eq!(zero.tensor(&one).unwrap(), QState::basis(2, 1).unwrap());
        let g = QState::ghz(2).unwrap();
        assert_eq!(nonzero(&g.tensor(&g).unwrap()), vec![0, 3, 12, 15]);
        let g3 = QState::ghz(3).unwrap();
        let gg = g3.tensor(&g3).unwrap();
        assert_eq!(nonzero(&gg), vec![0, 7, 56, 63]);
        assert!((gg.amplitude(56).re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn permutation_examples() {
        let s = QState::random_pure(4, 3).unwrap();
        assert_eq!(s.permute_qubits(&[0, 1, 2, 3]).unwrap(), s);
        let ket01 = QState::basis(2, 1).unwrap();
        assert_eq!(ket01.permute_qubits(&[1, 0]).unwrap(), QState::basis(2, 2).unwrap());
        let g = QState::ghz(5).unwrap();
        assert_eq!(g.permute_qubits(&[3, 0, 4, 1, 2]).unwrap(), g);
        assert!(s.permute_qubits(&[0, 0, 1, 2]).is_err());
        assert!(s.permute_qubits(&[0, 1, 2]).is_err());
        assert!(s.permute_qubits(&[0, 1, 2, 4]).is_err());
    }

    #[test]
    fn permutation_moves_single_qubit() {
        // |1000⟩ with qubit 0 sent to position 2 becomes |0010⟩
        let s = QState::basis(4, 0b1000).unwrap();
        let p = s.permute_qubits(&[2, 0, 1, 3]).unwrap();
        assert_eq!(p, QState::basis(4, 0b0010).unwrap());
    }

    #[test]
    fn random_is_deterministic_and_normalized() {
        let a = QState::random_pure(4, 11).unwrap();
        let b = QState::random_pure(4, 11).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dim(), 16);
        assert!((a.norm_sqr() - 1.0).abs() < 1e-12);
        assert_ne!(a, QState::random_pure(4, 12).unwrap());
    }

    #[test]
    fn dense_spec_round_trip() {
        let s = QState::random_pure(3, 5).unwrap();
        let spec = StateSpec::dense(&s);
        assert_eq!(spec.to_state().unwrap(), s);
    }

    fn serde_json_like(text: &str) -> StateSpec {
        serde_json::from_str(text).unwrap()
    }
}
