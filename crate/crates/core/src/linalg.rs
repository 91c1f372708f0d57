//! Small dense complex matrices.
//!
//! Only what the concurrence side needs: products, determinants and the
//! eigenvalues of matrices up to 4x4. Eigenvalues go through the
//! characteristic polynomial (Faddeev–LeVerrier) and a simultaneous
//! Durand–Kerner iteration. Near-multiple roots are averaged per cluster, and
//! isolated roots of a matrix are refined by Newton steps on `det(M - λI)`.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest dimension accepted by the eigenvalue path.
pub const MAX_EIG_DIM: usize = 4;

const MAX_ITERATIONS: usize = 500;
const STEP_TOL: f64 = 1e-13;
/// Residual level (relative to the coefficient scale) accepted from a root
/// iteration that ran out of iterations, e.g. on a multiple root.
const STALL_TOL: f64 = 1e-6;
/// Multiplier on the noise-induced root radius used to detect clusters.
const CLUSTER_K: f64 = 1e3;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, " ")?;
            for c in 0..self.cols {
                let z = self[(r, c)];
                write!(f, " {:+.6}{:+.6}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.cols + c]
    }
}

impl CMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(CMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diag(&vec![ONE; dim])
    }

    pub fn diag(entries: &[Complex64]) -> Self {
        let dim = entries.len();
        let mut m = Self::zeros(dim, dim);
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    /// Builds a matrix from equally long rows.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(CMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    /// Real-entry convenience constructor.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn matmul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = CMatrix::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn conj(&self) -> CMatrix {
        self.map(|z| z.conj())
    }

    pub fn transpose(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn adjoint(&self) -> CMatrix {
        self.transpose().conj()
    }

    pub fn scale(&self, c: Complex64) -> CMatrix {
        self.map(|z| z * c)
    }

    fn zip_with(&self, other: &CMatrix, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<CMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &CMatrix) -> Result<CMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &CMatrix) -> Result<CMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus of `self - other`; `inf` on shape mismatch.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        match self.sub(other) {
            Ok(d) => d.data.iter().map(|z| z.norm()).fold(0.0, f64::max),
            Err(_) => f64::INFINITY,
        }
    }

    /// Largest entrywise modulus of `self - self†`.
    pub fn hermiticity_gap(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    fn require_square(&self) -> Result<usize> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.rows)
    }

    pub fn det(&self) -> Result<Complex64> {
        let dim = self.require_square()?;
        Ok(match dim {
            0 => ONE,
            1 => self.data[0],
            2 => self.data[0] * self.data[3] - self.data[1] * self.data[2],
            _ => Lu::factor(self).det(),
        })
    }

    /// Inverse via LU; `None` when a pivot is exactly zero.
    pub fn inverse(&self) -> Result<Option<CMatrix>> {
        self.require_square()?;
        Ok(Lu::factor(self).inverse())
    }
}

/// LU factorization with partial pivoting, `P·M = L·U` packed in one matrix.
struct Lu {
    dim: usize,
    lu: Vec<Complex64>,
    perm: Vec<usize>,
    sign: f64,
    singular: bool,
}

impl Lu {
    fn factor(m: &CMatrix) -> Lu {
        let dim = m.rows;
        let mut lu = m.data.clone();
        let mut perm: Vec<usize> = (0..dim).collect();
        let mut sign = 1.0;
        let mut singular = false;
        for k in 0..dim {
            let pivot = (k..dim)
                .max_by(|&a, &b| lu[a * dim + k].norm().total_cmp(&lu[b * dim + k].norm()))
                .unwrap_or(k);
            if lu[pivot * dim + k] == ZERO {
                singular = true;
                continue;
            }
            if pivot != k {
                for c in 0..dim {
                    lu.swap(k * dim + c, pivot * dim + c);
                }
                perm.swap(k, pivot);
                sign = -sign;
            }
            let p = lu[k * dim + k];
            for r in k + 1..dim {
                let f = lu[r * dim + k] / p;
                lu[r * dim + k] = f;
                for c in k + 1..dim {
                    let u = lu[k * dim + c];
                    lu[r * dim + c] -= f * u;
                }
            }
        }
        Lu {
            dim,
            lu,
            perm,
            sign,
            singular,
        }
    }

    fn det(&self) -> Complex64 {
        if self.singular {
            return ZERO;
        }
        (0..self.dim).fold(Complex64::new(self.sign, 0.0), |acc, i| {
            acc * self.lu[i * self.dim + i]
        })
    }

    fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim;
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let l = self.lu[i * n + j];
                x[i] = x[i] - l * x[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let u = self.lu[i * n + j];
                x[i] = x[i] - u * x[j];
            }
            x[i] /= self.lu[i * n + i];
        }
        x
    }

    fn inverse(&self) -> Option<CMatrix> {
        if self.singular {
            return None;
        }
        let n = self.dim;
        let mut inv = CMatrix::zeros(n, n);
        let mut e = vec![ZERO; n];
        for c in 0..n {
            e.iter_mut().for_each(|z| *z = ZERO);
            e[c] = ONE;
            for (r, v) in self.solve(&e).into_iter().enumerate() {
                inv[(r, c)] = v;
            }
        }
        Some(inv)
    }
}

pub fn matmul(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    a.matmul(b)
}

pub fn det(m: &CMatrix) -> Result<Complex64> {
    m.det()
}

/// Eigenvalue multiset of a square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<Complex64>,
}

impl Spectrum {
    pub fn new(eigenvalues: Vec<Complex64>) -> Self {
        Spectrum { eigenvalues }
    }

    pub fn eigenvalues(&self) -> &[Complex64] {
        &self.eigenvalues
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn sum(&self) -> Complex64 {
        self.eigenvalues.iter().sum()
    }

    pub fn product(&self) -> Complex64 {
        self.eigenvalues.iter().product()
    }

    /// Eigenvalues ordered by descending real part.
    pub fn sorted_by_real_desc(&self) -> Vec<Complex64> {
        let mut v = self.eigenvalues.clone();
        v.sort_by(|a, b| b.re.total_cmp(&a.re));
        v
    }

    /// Normalized trace and determinant gaps against `m`:
    /// `|Σλ - tr| / (1 + |tr|)` and `|Πλ - det| / (1 + |det|)`.
    pub fn consistency_gaps(&self, m: &CMatrix) -> Result<(f64, f64)> {
        let tr = m.trace();
        let d = m.det()?;
        Ok((
            (self.sum() - tr).norm() / (1.0 + tr.norm()),
            (self.product() - d).norm() / (1.0 + d.norm()),
        ))
    }

    /// Trace within 1e-10 and determinant within 1e-9 (both normalized).
    pub fn is_consistent_with(&self, m: &CMatrix) -> bool {
        matches!(self.consistency_gaps(m), Ok((t, d)) if t <= 1e-10 && d <= 1e-9)
    }
}

/// Largest distance in a greedy nearest-neighbour matching of two multisets.
/// Returns `inf` if the sizes differ.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut pairs: Vec<(f64, usize, usize)> = a
        .iter()
        .enumerate()
        .flat_map(|(i, x)| b.iter().enumerate().map(move |(j, y)| ((x - y).norm(), i, j)))
        .collect();
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
    let mut used_a = vec![false; a.len()];
    let mut used_b = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for (d, i, j) in pairs {
        if !used_a[i] && !used_b[j] {
            used_a[i] = true;
            used_b[j] = true;
            worst = worst.max(d);
        }
    }
    worst
}

fn check_eig_dim(m: &CMatrix) -> Result<usize> {
    let dim = m.require_square()?;
    if dim == 0 || dim > MAX_EIG_DIM {
        return Err(Error::UnsupportedDimension {
            dim,
            max: MAX_EIG_DIM,
        });
    }
    Ok(dim)
}

/// Monic characteristic polynomial `det(λI - M)` as `[1, c1, ..., cd]`
/// (descending powers), by the Faddeev–LeVerrier recurrence.
pub fn char_poly(m: &CMatrix) -> Result<Vec<Complex64>> {
    let dim = check_eig_dim(m)?;
    let mut coeffs = vec![ONE];
    // running matrix M_k = M·M_{k-1} + c_{k-1}·I, starting from M_0 = 0
    let mut running = CMatrix::zeros(dim, dim);
    for k in 1..=dim {
        let mut next = m.matmul(&running)?;
        for i in 0..dim {
            next[(i, i)] += coeffs[k - 1];
        }
        let am = m.matmul(&next)?;
        coeffs.push(-am.trace() / k as f64);
        running = next;
    }
    Ok(coeffs)
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().fold(ZERO, |acc, &c| acc * z + c)
}

/// `Σ noise_k·|z|^(d-k)`: the size of evaluation noise at `z`.
fn noise_at(noise: &[f64], z: Complex64) -> f64 {
    let r = z.norm();
    noise.iter().fold(0.0, |acc, &e| acc * r + e)
}

/// All complex roots of a monic polynomial of degree 1..=4 given in
/// descending powers.
pub fn poly_roots(coeffs: &[Complex64]) -> Result<Spectrum> {
    let noise: Vec<f64> = coeffs.iter().map(|c| f64::EPSILON * c.norm()).collect();
    roots_with_noise(coeffs, &noise).map(Spectrum::new)
}

fn roots_with_noise(coeffs: &[Complex64], noise: &[f64]) -> Result<Vec<Complex64>> {
    let degree = coeffs.len().saturating_sub(1);
    if degree == 0 || degree > MAX_EIG_DIM || coeffs[0] != ONE {
        return Err(Error::BadPolynomial);
    }
    if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::BadPolynomial);
    }
    // exact zero trailing coefficients are exact zero roots
    let mut work = coeffs.to_vec();
    let mut zeros = 0;
    while work.len() > 1 && *work.last().unwrap() == ZERO {
        work.pop();
        zeros += 1;
    }
    let noise = &noise[..work.len()];
    let mut roots = durand_kerner(&work, noise)?;
    average_clusters(&mut roots, &work, noise);
    roots.extend(std::iter::repeat_n(ZERO, zeros));
    Ok(roots)
}

fn durand_kerner(coeffs: &[Complex64], noise: &[f64]) -> Result<Vec<Complex64>> {
    let degree = coeffs.len() - 1;
    match degree {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![-coeffs[1]]),
        _ => {}
    }
    let radius = 1.0 + coeffs[1..].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..degree)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / degree as f64;
            Complex64::from_polar(radius, angle) * seed
        })
        .collect();

    let at_floor = |z: &[Complex64], factor: f64| {
        z.iter()
            .all(|&zi| horner(coeffs, zi).norm() <= factor * noise_at(noise, zi).max(f64::MIN_POSITIVE))
    };

    for _ in 0..MAX_ITERATIONS {
        let mut max_step: f64 = 0.0;
        for i in 0..degree {
            let zi = z[i];
            let mut den = ONE;
            for (j, &zj) in z.iter().enumerate() {
                if j != i {
                    den *= zi - zj;
                }
            }
            if den == ZERO {
                // coincident iterates; nudge apart
                z[i] = zi + Complex64::new(1e-10, 1e-10) * radius;
                max_step = f64::INFINITY;
                continue;
            }
            let step = horner(coeffs, zi) / den;
            z[i] = zi - step;
            max_step = max_step.max(step.norm());
        }
        if max_step < STEP_TOL || at_floor(&z, 8.0) {
            return Ok(z);
        }
    }

    // multiple roots converge linearly and may stall above STEP_TOL
    let scale: Vec<f64> = z
        .iter()
        .map(|&zi| {
            let r = zi.norm();
            coeffs.iter().fold(0.0, |acc, c| acc * r + c.norm())
        })
        .collect();
    let residuals: Vec<f64> = z.iter().map(|&zi| horner(coeffs, zi).norm()).collect();
    if residuals.iter().zip(&scale).all(|(r, s)| *r <= STALL_TOL * s) {
        Ok(z)
    } else {
        Err(Error::NonConvergence {
            iterations: MAX_ITERATIONS,
            residuals,
        })
    }
}

/// Radius within which root `i` is indistinguishable from its neighbours
/// given the coefficient noise.
fn root_radius(roots: &[Complex64], i: usize, noise: &[f64]) -> f64 {
    let den: f64 = roots
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, &zj)| (roots[i] - zj).norm())
        .product();
    if den == 0.0 {
        return f64::INFINITY;
    }
    CLUSTER_K * noise_at(noise, roots[i]) / den
}

/// Groups roots whose noise disks overlap. Returns one group id per root.
fn cluster_ids(roots: &[Complex64], noise: &[f64]) -> Vec<usize> {
    let radii: Vec<f64> = (0..roots.len()).map(|i| root_radius(roots, i, noise)).collect();
    let mut ids: Vec<usize> = (0..roots.len()).collect();
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if (roots[i] - roots[j]).norm() <= radii[i] + radii[j] {
                let (from, to) = (ids[j], ids[i]);
                ids.iter_mut().filter(|id| **id == from).for_each(|id| *id = to);
            }
        }
    }
    ids
}

fn derivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    let degree = coeffs.len() - 1;
    coeffs[..degree]
        .iter()
        .enumerate()
        .map(|(k, &c)| c * (degree - k) as f64)
        .collect()
}

/// Replaces each cluster of `k` roots by its centre: the simple root of the
/// `(k-1)`-th derivative nearest to the cluster mean.
fn average_clusters(roots: &mut [Complex64], coeffs: &[Complex64], noise: &[f64]) {
    let ids = cluster_ids(roots, noise);
    let mut done = vec![false; roots.len()];
    for i in 0..roots.len() {
        if done[i] {
            continue;
        }
        let members: Vec<usize> = (0..roots.len()).filter(|&j| ids[j] == ids[i]).collect();
        members.iter().for_each(|&j| done[j] = true);
        if members.len() < 2 {
            continue;
        }
        let k = members.len();
        let mean = members.iter().map(|&j| roots[j]).sum::<Complex64>() / k as f64;
        let spread = members
            .iter()
            .map(|&j| (roots[j] - mean).norm())
            .fold(0.0, f64::max);
        let q = (1..k).fold(coeffs.to_vec(), |acc, _| derivative(&acc));
        let dq = derivative(&q);
        let mut centre = mean;
        for _ in 0..8 {
            let slope = horner(&dq, centre);
            if slope == ZERO {
                break;
            }
            let step = horner(&q, centre) / slope;
            if !(step.re.is_finite() && step.im.is_finite()) {
                break;
            }
            centre -= step;
            if step.norm() <= f64::EPSILON * (1.0 + centre.norm()) {
                break;
            }
        }
        // keep the plain mean if Newton wandered off the cluster
        if (centre - mean).norm() > 2.0 * spread + f64::EPSILON * (1.0 + mean.norm()) {
            centre = mean;
        }
        members.iter().for_each(|&j| roots[j] = centre);
    }
}

/// Newton refinement of an isolated eigenvalue on `f(λ) = det(M - λI)`,
/// using `f'/f = -tr((M - λI)^-1)`.
fn polish_eigenvalue(m: &CMatrix, mut lambda: Complex64, separation: f64) -> Complex64 {
    let dim = m.rows();
    let start = lambda;
    for _ in 0..6 {
        let mut shifted = m.clone();
        for i in 0..dim {
            shifted[(i, i)] -= lambda;
        }
        let Some(inv) = Lu::factor(&shifted).inverse() else {
            break;
        };
        let t = inv.trace();
        if t == ZERO || !t.re.is_finite() || !t.im.is_finite() {
            break;
        }
        let step = t.inv();
        if (lambda + step - start).norm() > 0.25 * separation {
            break;
        }
        lambda += step;
        if step.norm() <= 4.0 * f64::EPSILON * (lambda.norm() + m.frobenius_norm()) {
            break;
        }
    }
    lambda
}

/// Eigenvalues as roots of the characteristic polynomial.
pub fn eigenvalues(m: &CMatrix) -> Result<Spectrum> {
    eigenvalues_with_coeff_floor(m, 0.0)
}

/// Like [`eigenvalues`], but characteristic coefficients with
/// `|c_k| <= floor·‖M‖_F^k` are set to zero first. This makes structurally
/// rank-deficient inputs produce exact zero eigenvalues.
pub fn eigenvalues_with_coeff_floor(m: &CMatrix, floor: f64) -> Result<Spectrum> {
    eigenvalues_with_coeff_floor_at(m, floor, m.frobenius_norm())
}

/// Like [`eigenvalues_with_coeff_floor`] for a matrix whose entries carry
/// rounding error of order `ε·scale`, such as a product of factors with norm
/// product `scale`. If `‖M‖_F <= floor·scale` the spectrum is all zeros.
pub fn eigenvalues_with_coeff_floor_at(m: &CMatrix, floor: f64, scale: f64) -> Result<Spectrum> {
    let dim = check_eig_dim(m)?;
    let fro = m.frobenius_norm();
    let scale = scale.max(fro);
    if fro <= floor * scale {
        return Ok(Spectrum::new(vec![ZERO; dim]));
    }
    let mut coeffs = char_poly(m)?;
    let binom = |k: usize| (0..k).fold(1.0, |acc, i| acc * (dim - i) as f64 / (i + 1) as f64);
    let noise: Vec<f64> = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let first_order = if k == 0 { 0.0 } else { scale * fro.powi(k as i32 - 1) };
            f64::EPSILON * c.norm().max(binom(k) * first_order)
        })
        .collect();
    if floor > 0.0 {
        for (k, c) in coeffs.iter_mut().enumerate().skip(1) {
            if c.norm() <= floor * fro.powi(k as i32) {
                *c = ZERO;
            }
        }
    }

    let mut work = coeffs.clone();
    let mut zeros = 0;
    while work.len() > 1 && *work.last().unwrap() == ZERO {
        work.pop();
        zeros += 1;
    }
    if work.len() == 1 {
        return Ok(Spectrum::new(vec![ZERO; zeros]));
    }
    let mut roots = roots_with_noise(&work, &noise[..work.len()])?;

    let ids = cluster_ids(&roots, &noise[..work.len()]);
    let snapshot = roots.clone();
    for i in 0..roots.len() {
        if ids.iter().filter(|&&id| id == ids[i]).count() > 1 {
            continue;
        }
        let separation = snapshot
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &zj)| (snapshot[i] - zj).norm())
            .chain(std::iter::once(if zeros > 0 { snapshot[i].norm() } else { f64::INFINITY }))
            .fold(f64::INFINITY, f64::min);
        roots[i] = polish_eigenvalue(m, snapshot[i], separation);
    }
    roots.extend(std::iter::repeat_n(ZERO, zeros));
    Ok(Spectrum::new(roots))
}
