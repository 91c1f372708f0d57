//! Acceptance gate: one line per criterion, nonzero exit if any fails.

use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ntangle::concurrence::{self, CForm, Factorization};
use ntangle::invariants::{self, IStarForm, OracleMode};
use ntangle::linalg::{self, CMatrix};
use ntangle::qstate::QState;
use ntangle::slocc;
use ntangle::suites::{random_permutation, random_single_excitation};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

/// Independent reference computations, written against raw amplitude slices.
mod oracle {
    use super::*;

    fn eps(a: usize, b: usize) -> i32 {
        match (a, b) {
            (0, 1) => 1,
            (1, 0) => -1,
            _ => 0,
        }
    }

    /// The quartic sum over all index quadruples, every ε from bit tuples.
    pub fn quartic_s(a: &[Complex64], n: usize) -> Complex64 {
        let dim = a.len();
        let bit = |x: usize, q: usize| (x >> (n - 1 - q)) & 1;
        let mut s = ZERO;
        for al in 0..dim {
            for be in 0..dim {
                let mut e_ab = 1;
                for q in 0..n - 1 {
                    e_ab *= eps(bit(al, q), bit(be, q));
                }
                if e_ab == 0 {
                    continue;
                }
                for ga in 0..dim {
                    let e_ag = eps(bit(al, n - 1), bit(ga, n - 1));
                    if e_ag == 0 {
                        continue;
                    }
                    for de in 0..dim {
                        let mut e = e_ab * e_ag * eps(bit(be, n - 1), bit(de, n - 1));
                        for q in 0..n - 1 {
                            e *= eps(bit(ga, q), bit(de, q));
                        }
                        if e != 0 {
                            s += a[al] * a[be] * a[ga] * a[de] * f64::from(e);
                        }
                    }
                }
            }
        }
        s
    }

    /// `Σ_k (-1)^popcount(k) a_k a_{2ⁿ-1-k}` over the lower half.
    pub fn i_star(a: &[Complex64]) -> Complex64 {
        let full = a.len();
        (0..full / 2)
            .map(|k| {
                let t = a[k] * a[full - 1 - k];
                if k.count_ones() % 2 == 0 {
                    t
                } else {
                    -t
                }
            })
            .sum()
    }

    /// `4·det ρ₁` via Lagrange's identity on the two half-vectors.
    pub fn c_squared_lagrange(a: &[Complex64]) -> f64 {
        let (u, v) = a.split_at(a.len() / 2);
        let nu: f64 = u.iter().map(|z| z.norm_sqr()).sum();
        let nv: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        let uv: Complex64 = u.iter().zip(v).map(|(x, y)| x.conj() * y).sum();
        let norm = nu + nv;
        4.0 * (nu * nv - uv.norm_sqr()) / (norm * norm)
    }

    /// `(A₁⊗…⊗Aₙ)·a` through the explicit Kronecker product.
    pub fn apply_kron(ops: &[CMatrix], a: &[Complex64]) -> Vec<Complex64> {
        let big = ops[1..].iter().fold(ops[0].clone(), |acc, op| acc.kron(op));
        let dim = a.len();
        (0..dim)
            .map(|r| (0..dim).map(|c| big[(r, c)] * a[c]).sum())
            .collect()
    }

    /// Frobenius condition estimate `‖P‖_F·‖P⁻¹‖_F`.
    pub fn cond(p: &CMatrix) -> f64 {
        match p.inverse() {
            Ok(Some(inv)) => p.frobenius_norm() * inv.frobenius_norm(),
            _ => f64::INFINITY,
        }
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gauss(r: &mut ChaCha8Rng) -> Complex64 {
    let n: rand_distr::StandardNormal = rand_distr::StandardNormal;
    Complex64::new(r.sample(n), r.sample(n))
}

fn err(e: ntangle::Error) -> String {
    e.to_string()
}

fn within(what: &str, got: f64, want: f64, tol: f64) -> Result<f64, String> {
    let gap = (got - want).abs();
    if gap <= tol {
        Ok(gap)
    } else {
        Err(format!("{what}: got {got}, want {want} (gap {gap:.3e} > {tol:.0e})"))
    }
}

fn c1_ghz() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for n in [4, 6, 8] {
        let s = QState::ghz(n).map_err(err)?;
        let tau = invariants::n_tangle(&s).map_err(err)?;
        let tp = invariants::tau_prime(&s).map_err(err)?;
        let r = concurrence::residual_tangle(&s).map_err(err)?;
        worst = worst.max(within(&format!("ghz({n}) tau"), tau, 1.0, 1e-10)?);
        worst = worst.max(within(&format!("ghz({n}) tau'"), tp, 1.0, 1e-10)?);
        worst = worst.max(within(&format!("ghz({n}) residual"), r.residual, 1.0, 1e-10)?);
        worst = worst.max(within(&format!("ghz({n}) C^2"), r.c_one_rest_squared, 1.0, 1e-10)?);
        for (k, c) in r.c_pairs.iter().enumerate() {
            worst = worst.max(within(&format!("ghz({n}) C_1{}", k + 2), *c, 0.0, 1e-10)?);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 1.0 {
        return Err(format!("runtime {secs:.3} s >= 1 s"));
    }
    Ok(format!("n=4,6,8 max gap {worst:.1e}, {:.1} ms", secs * 1e3))
}

fn c2_w_single_excitation() -> Outcome {
    let mut r = rng(2);
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for n in [4, 5, 6] {
        let mut states = vec![QState::w(n).map_err(err)?];
        for _ in 0..20 {
            states.push(random_single_excitation(n, &mut r).map_err(err)?);
        }
        for s in &states {
            let rep = concurrence::residual_tangle(s).map_err(err)?;
            worst = worst.max(within(&format!("n={n} residual"), rep.residual, 0.0, 1e-10)?);
            if n % 2 == 0 {
                let tau = invariants::n_tangle(s).map_err(err)?;
                worst = worst.max(within(&format!("n={n} tau"), tau, 0.0, 1e-10)?);
            }
            count += 1;
        }
    }
    Ok(format!("{count} states, n=4,5,6, max gap {worst:.1e}"))
}

fn c3_dicke() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for n in [4, 6, 8, 10] {
        let nf = n as f64;
        let s = QState::dicke(n / 2, n).map_err(err)?;
        let tau = invariants::n_tangle(&s).map_err(err)?;
        let r = concurrence::residual_tangle(&s).map_err(err)?;
        let c12 = r.c_pairs[0];
        worst = worst.max(within(&format!("dicke n={n} tau"), tau, 1.0, 1e-9)?);
        worst = worst.max(within(&format!("dicke n={n} C12^2"), c12 * c12, 1.0 / ((nf - 1.0) * (nf - 1.0)), 1e-9)?);
        worst = worst.max(within(&format!("dicke n={n} C^2"), r.c_one_rest_squared, 1.0, 1e-9)?);
        worst = worst.max(within(&format!("dicke n={n} residual"), r.residual, (nf - 2.0) / (nf - 1.0), 1e-9)?);
        worst = worst.max(within(&format!("dicke n={n} tau-residual"), tau - r.residual, 1.0 / (nf - 1.0), 1e-9)?);
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 10.0 {
        return Err(format!("runtime {secs:.3} s >= 10 s"));
    }
    let s = QState::dicke(2, 4).map_err(err)?;
    let rho = concurrence::partial_trace(&s, &[0, 1]).map_err(err)?;
    let flipped = concurrence::spin_flip(&rho).map_err(err)?;
    let product = rho.matrix().matmul(flipped.matrix()).map_err(err)?;
    let spectrum = linalg::eigenvalues(&product).map_err(err)?;
    let want = [4.0 / 9.0, 1.0 / 36.0, 1.0 / 36.0, 0.0].map(|x| Complex64::new(x, 0.0));
    let d = linalg::multiset_distance(spectrum.eigenvalues(), &want);
    if d > 1e-9 {
        return Err(format!("rho12*rho12~ spectrum {:?} is {d:.3e} from {{4/9, 1/36, 1/36, 0}}", spectrum.eigenvalues()));
    }
    Ok(format!(
        "n=4,6,8,10 max gap {worst:.1e}, spectrum gap {d:.1e}, {:.1} ms",
        secs * 1e3
    ))
}

fn c4_family() -> Outcome {
    let mut r = rng(4);
    let mut worst_tau: f64 = 0.0;
    let mut worst_res: f64 = 0.0;
    for _ in 0..100 {
        let (a, b, c) = (gauss(&mut r), gauss(&mut r), gauss(&mut r));
        let norm = (a.norm_sqr() + b.norm_sqr() + c.norm_sqr()).sqrt();
        let (a, b, c) = (a / norm, b / norm, c / norm);
        let mut amps = vec![ZERO; 16];
        amps[0b0011] = a;
        amps[0b0110] = b;
        amps[0b1100] = c;
        let s = QState::new(4, amps).map_err(err)?;
        let want = 4.0 * (a * c).norm_sqr();
        worst_tau = worst_tau.max(within("tau", invariants::n_tangle(&s).map_err(err)?, want, 1e-10)?);
        let res = concurrence::residual_tangle(&s).map_err(err)?.residual;
        worst_res = worst_res.max(within("residual", res, want, 1e-9)?);
    }
    Ok(format!("100 states, tau gap {worst_tau:.1e}, residual gap {worst_res:.1e}"))
}

fn c5_contraction_identities() -> Outcome {
    let mut r = rng(5);
    let (mut s_gap, mut s1_gap, mut case1, mut forms, mut quartic): (f64, f64, f64, f64, f64) =
        (0.0, 0.0, 0.0, 0.0, 0.0);
    for n in [4, 6] {
        for trial in 0..100 {
            let s = QState::random(n, &mut r).map_err(err)?;
            let rep = invariants::verify_reduction(&s).map_err(err)?;
            if rep.s_gap > 1e-10 || rep.s1_gap > 1e-12 || rep.case1_gap > 1e-12 {
                return Err(format!("n={n} trial {trial}: {rep:?}"));
            }
            s_gap = s_gap.max(rep.s_gap);
            s1_gap = s1_gap.max(rep.s1_gap);
            case1 = case1.max(rep.case1_gap);
            let s0 = invariants::s0(&s).map_err(err)?;
            let mut values = vec![oracle::i_star(s.amplitudes())];
            for form in IStarForm::ALL {
                values.push(invariants::i_star(&s, form).map_err(err)?);
            }
            for v in values {
                let gap = (v - s0).norm();
                if gap > 1e-12 {
                    return Err(format!("n={n} trial {trial}: S0 vs I* gap {gap:.3e}"));
                }
                forms = forms.max(gap);
            }
            if n == 4 && trial < 10 {
                let reference = oracle::quartic_s(s.amplitudes(), n);
                let gap = (rep.s - reference).norm();
                if gap > 1e-12 {
                    return Err(format!("constrained S differs from literal quartic by {gap:.3e}"));
                }
                quartic = quartic.max(gap);
            }
        }
    }
    Ok(format!(
        "200 states, |S-2S0^2| {s_gap:.1e}, |S1+S0| {s1_gap:.1e}, case-1 {case1:.1e}, forms {forms:.1e}, literal S {quartic:.1e}"
    ))
}

fn c6_result1() -> Outcome {
    let mut r = rng(6);
    let mut worst: f64 = 0.0;
    let mut worst_oracle: f64 = 0.0;
    for n in 3..=8 {
        for _ in 0..1000 {
            let s = QState::random(n, &mut r).map_err(err)?;
            let det = concurrence::c_one_rest(&s, CForm::Det).map_err(err)?.c_squared;
            let sum = concurrence::c_one_rest(&s, CForm::Sum).map_err(err)?.c_squared;
            worst = worst.max(within(&format!("n={n} det vs sum"), det, sum, 1e-11)?);
            let reference = oracle::c_squared_lagrange(s.amplitudes());
            worst_oracle = worst_oracle.max(within(&format!("n={n} vs Lagrange"), det, reference, 1e-11)?);
        }
    }
    Ok(format!("6000 states n=3..8, det vs sum {worst:.1e}, vs Lagrange oracle {worst_oracle:.1e}"))
}

fn c7_result2() -> Outcome {
    let mut r = rng(7);
    let tol = 1e-8;
    let mut min_fid: f64 = 1.0;
    for i in 0..200 {
        let n = 2 + i % 5;
        let first = QState::random(1, &mut r).map_err(err)?;
        let rest = QState::random(n - 1, &mut r).map_err(err)?;
        let product = first.tensor(&rest).map_err(err)?;
        match concurrence::factor_one_rest(&product, tol).map_err(err)? {
            Factorization::Product { first: f, rest: g, .. } => {
                let fid = product
                    .inner(&f.tensor(&g).map_err(err)?)
                    .map_err(err)?
                    .norm();
                if fid < 1.0 - 1e-9 {
                    return Err(format!("product {i} (n={n}) reconstructed with fidelity {fid}"));
                }
                min_fid = min_fid.min(fid);
            }
            Factorization::NotAProduct { c } => {
                return Err(format!("product {i} (n={n}) rejected with C = {c:.3e}"))
            }
        }
    }
    let mut min_c = f64::INFINITY;
    for i in 0..200 {
        let n = 2 + i % 5;
        let s = QState::random(n, &mut r).map_err(err)?;
        match concurrence::factor_one_rest(&s, tol).map_err(err)? {
            Factorization::Product { .. } => return Err(format!("entangled state {i} (n={n}) was factored")),
            Factorization::NotAProduct { c } => min_c = min_c.min(c),
        }
    }
    Ok(format!(
        "200 products factored (min fidelity 1-{:.1e}), 200 entangled rejected (min C {min_c:.2e})",
        1.0 - min_fid
    ))
}

fn c8_result3() -> Outcome {
    let mut r = rng(8);
    let mut min_headline = f64::INFINITY;
    let mut min_pair = f64::INFINITY;
    for n in [4, 6] {
        for trial in 0..1000 {
            let s = QState::random(n, &mut r).map_err(err)?;
            let cert = concurrence::result3_certificate(&s).map_err(err)?;
            if cert.headline_slack < -1e-11 {
                return Err(format!("n={n} trial {trial}: C^2 - tau = {:.3e}", cert.headline_slack));
            }
            if cert.min_pair_slack < -1e-12 {
                return Err(format!("n={n} trial {trial}: pair slack {:.3e}", cert.min_pair_slack));
            }
            if !cert.passes() {
                return Err(format!("n={n} trial {trial}: {cert:?}"));
            }
            min_headline = min_headline.min(cert.headline_slack);
            min_pair = min_pair.min(cert.min_pair_slack);
        }
    }
    Ok(format!("2000 states, min C^2-tau {min_headline:.2e}, min pair slack {min_pair:.2e}"))
}

fn c9_covariance() -> Outcome {
    let mut r = rng(9);
    let mut worst_i: f64 = 0.0;
    let mut worst_t: f64 = 0.0;
    for n in [4, 6] {
        for trial in 0..100 {
            let s = QState::random(n, &mut r).map_err(err)?;
            let ops = slocc::random_invertible_set(n, r.random()).map_err(err)?;
            let rep = slocc::covariance_check(&s, &ops).map_err(err)?;
            if rep.i_star_rel_err > 1e-8 || rep.tau_rel_err > 1e-7 {
                return Err(format!("n={n} trial {trial}: {rep:?}"));
            }
            let moved = oracle::apply_kron(ops.ops(), s.amplitudes());
            let det: Complex64 = ops.ops().iter().map(|m| m.det().unwrap()).product();
            let predicted = oracle::i_star(s.amplitudes()) * det;
            let rel = (oracle::i_star(&moved) - predicted).norm() / (1.0 + predicted.norm());
            if rel > 1e-8 {
                return Err(format!("n={n} trial {trial}: Kronecker oracle relative error {rel:.3e}"));
            }
            let tau_before = 4.0 * oracle::i_star(s.amplitudes()).norm_sqr();
            let tau_after = 4.0 * oracle::i_star(&moved).norm_sqr();
            let tau_pred = tau_before * det.norm_sqr();
            let tau_rel = (tau_after - tau_pred).abs() / (1.0 + tau_pred);
            if tau_rel > 1e-7 {
                return Err(format!("n={n} trial {trial}: oracle tau relative error {tau_rel:.3e}"));
            }
            worst_i = worst_i.max(rep.i_star_rel_err).max(rel);
            worst_t = worst_t.max(rep.tau_rel_err).max(tau_rel);
        }
    }
    Ok(format!("200 pairs, I* rel err {worst_i:.1e}, tau rel err {worst_t:.1e}"))
}

fn c10_product_laws() -> Outcome {
    let mut r = rng(10);
    let mut worst_mult: f64 = 0.0;
    for _ in 0..100 {
        let a = QState::random(4, &mut r).map_err(err)?;
        let b = QState::random(4, &mut r).map_err(err)?;
        let rep = invariants::multiplicativity_check(&a, &b).map_err(err)?;
        worst_mult = worst_mult.max(within("tau(a x b)", rep.tau_product, rep.tau_left * rep.tau_right, 1e-10)?);
    }
    let g3 = QState::ghz(3).map_err(err)?;
    let mut cases = vec![(g3.clone(), g3.clone())];
    for _ in 0..20 {
        let l = 2 + r.random_range(0..3usize);
        let k = 1 + r.random_range(0..3usize);
        cases.push((QState::random(l, &mut r).map_err(err)?, QState::random(k, &mut r).map_err(err)?));
    }
    let mut worst_pm: f64 = 0.0;
    for (i, (left, right)) in cases.iter().enumerate() {
        let rep = concurrence::partial_measure_check(left, right).map_err(err)?;
        let worst = rep
            .c_gap
            .max(rep.inner_pair_gap)
            .max(rep.cross_pair_max)
            .max(rep.residual_gap);
        if worst > 1e-9 || rep.cross_scalar_gap > 1e-12 {
            return Err(format!("case {i}: {rep:?}"));
        }
        worst_pm = worst_pm.max(worst);
    }
    let fixture = concurrence::residual_tangle(&g3.tensor(&g3).map_err(err)?).map_err(err)?;
    within("ghz3 x ghz3 residual", fixture.residual, 1.0, 1e-9)?;
    Ok(format!(
        "multiplicativity gap {worst_mult:.1e} (100 pairs), partial-measure gap {worst_pm:.1e} (21 cases), ghz3^2 residual {:.12}",
        fixture.residual
    ))
}

fn c11_permutations() -> Outcome {
    let mut r = rng(11);
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for n in [4, 6] {
        for _ in 0..50 {
            let s = QState::random(n, &mut r).map_err(err)?;
            let tau = invariants::n_tangle(&s).map_err(err)?;
            let istar = invariants::i_star(&s, IStarForm::Grouped).map_err(err)?.norm();
            for _ in 0..20 {
                let perm = random_permutation(n, &mut r);
                let p = s.permute_qubits(&perm).map_err(err)?;
                worst = worst.max(within(&format!("tau under {perm:?}"), invariants::n_tangle(&p).map_err(err)?, tau, 1e-12)?);
                let pi = invariants::i_star(&p, IStarForm::Grouped).map_err(err)?.norm();
                worst = worst.max(within(&format!("|I*| under {perm:?}"), pi, istar, 1e-12)?);
                count += 1;
            }
        }
    }
    Ok(format!("{count} permutations over 100 states, max change {worst:.1e}"))
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        0.5 * (xs[m - 1] + xs[m])
    }
}

fn c12_performance() -> Outcome {
    let n = 8;
    let s = QState::random_pure(n, 12).map_err(err)?;
    let time = |f: &dyn Fn() -> f64| -> (Vec<f64>, f64) {
        let mut times = Vec::new();
        let mut last = 0.0;
        for _ in 0..20 {
            let start = Instant::now();
            last = std::hint::black_box(f());
            times.push(start.elapsed().as_secs_f64());
        }
        (times, last)
    };
    let (fast_t, fast_tau) = time(&|| invariants::n_tangle_fast(std::hint::black_box(&s)).unwrap().tau);
    let (con_t, con_tau) = time(&|| {
        invariants::n_tangle_oracle(std::hint::black_box(&s), OracleMode::Constrained)
            .unwrap()
            .tau
    });
    let (fm, cm) = (median(fast_t), median(con_t));
    let speedup = cm / fm.max(f64::MIN_POSITIVE);
    if speedup < 100.0 {
        return Err(format!("speedup {speedup:.1}x < 100x (fast {fm:.3e} s, constrained {cm:.3e} s)"));
    }
    within("fast vs constrained tau", fast_tau, con_tau, 1e-10)?;
    for m in [2, 4, 6, 8, 10, 12] {
        let f = invariants::n_tangle_fast(&QState::random_pure(m, 1).map_err(err)?).map_err(err)?;
        if f.sum_mults != 1u64 << (m - 1) || f.final_ops != 2 {
            return Err(format!("n={m}: {} sum mults + {} final ops", f.sum_mults, f.final_ops));
        }
    }
    Ok(format!(
        "n=8 speedup {speedup:.0}x (median fast {fm:.2e} s, constrained {cm:.2e} s); sum mults = 2^(n-1) for n=2..12, +2 final ops"
    ))
}

fn c13_eigensolver() -> Outcome {
    let mut r = rng(13);
    let mut worst: f64 = 0.0;
    let mut worst_consistency: f64 = 0.0;
    let mut trials = 0;
    while trials < 500 {
        let p = CMatrix::new(4, 4, (0..16).map(|_| gauss(&mut r)).collect()).map_err(err)?;
        if oracle::cond(&p) > 100.0 {
            continue;
        }
        let d: Vec<Complex64> = (0..4).map(|_| gauss(&mut r)).collect();
        let pinv = p.inverse().map_err(err)?.expect("conditioned");
        let m = p.matmul(&CMatrix::diag(&d)).map_err(err)?.matmul(&pinv).map_err(err)?;
        let spectrum = linalg::eigenvalues(&m).map_err(err)?;
        let gap = linalg::multiset_distance(spectrum.eigenvalues(), &d);
        if gap > 1e-8 {
            return Err(format!("trial {trials}: eigenvalue recovery gap {gap:.3e}"));
        }
        let (tr, det) = spectrum.consistency_gaps(&m).map_err(err)?;
        if !spectrum.is_consistent_with(&m) {
            return Err(format!("trial {trials}: trace gap {tr:.3e}, det gap {det:.3e}"));
        }
        worst = worst.max(gap);
        worst_consistency = worst_consistency.max(tr).max(det);
        trials += 1;
    }
    Ok(format!("500 trials (cond <= 100), recovery gap {worst:.1e}, trace/det gap {worst_consistency:.1e}"))
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("GHZ fixtures", c1_ghz),
        ("W and single-excitation monogamy equality", c2_w_single_excitation),
        ("Dicke fixtures and rho*rho~ spectrum", c3_dicke),
        ("4-qubit family tau = residual = 4|alpha gamma|^2", c4_family),
        ("S = 2 S0^2, S1 = -S0, case-1 cancellation, S0 = I*", c5_contraction_identities),
        ("C^2 det form = pair-sum form", c6_result1),
        ("factorization iff product", c7_result2),
        ("C^2 >= tau with per-pair certificate", c8_result3),
        ("SLOCC covariance of I* and tau", c9_covariance),
        ("multiplicativity and partial-measure laws", c10_product_laws),
        ("permutation invariance", c11_permutations),
        ("fast path speed and multiplication count", c12_performance),
        ("eigensolver recovery and consistency", c13_eigensolver),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2}  PASS  {name}: {detail} [{secs:.2} s]", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2}  FAIL  {name}: {why} [{secs:.2} s]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
