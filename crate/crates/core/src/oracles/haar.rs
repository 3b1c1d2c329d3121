//! Monte Carlo integration over `O(n)` and `Sp(n)`.
//!
//! `O(n)`: orthogonalize a Gaussian matrix and flip each column of `Q` by the
//! sign of the matching diagonal entry of `R`; without the flip the result
//! depends on the QR convention and is not Haar.
//!
//! `Sp(n)`, `n = 2m`, the compact group `U(n) ∩ Sp(n, ℂ)`: Gram–Schmidt on
//! complex Gaussian vectors where each new column `u_k` is paired with
//! `w_k = -J ū_k`. The columns `[u_1 … u_m | w_1 … w_m]` are unitary and
//! satisfy `MᵀJM = J` for `J = [[0, I], [-I, 0]]`. Each `u_k` is uniform on
//! the unit sphere of the orthogonal complement of the earlier columns, which
//! is the quaternionic analogue of the sign-fixed QR.
//!
//! Each sample draws from its own ChaCha stream selected by the sample index,
//! and partial results are summed in index order, so the output depends only
//! on `(group, n, τ, samples, seed)`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::Group;
use crate::partition::Partition;

const CHUNK: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HaarSampler {
    pub group: Group,
    pub n: usize,
    pub seed: u64,
    pub samples: usize,
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    StandardNormal.sample(rng)
}

pub fn sample_orthogonal(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let g = DMatrix::from_fn(n, n, |_, _| gaussian(rng));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

/// `J = [[0, I_m], [-I_m, 0]]`.
pub fn symplectic_form(n: usize) -> DMatrix<Complex64> {
    let m = n / 2;
    DMatrix::from_fn(n, n, |i, j| {
        if i < m && j == i + m {
            Complex64::new(1.0, 0.0)
        } else if i >= m && j + m == i {
            Complex64::new(-1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

pub fn sample_symplectic(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<Complex64> {
    let m = n / 2;
    let mut m_cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let mut us = Vec::with_capacity(m);
    let mut ws = Vec::with_capacity(m);
    for _ in 0..m {
        let mut v: Vec<Complex64> = (0..n).map(|_| Complex64::new(gaussian(rng), gaussian(rng))).collect();
        // Two passes keep the residuals near machine precision.
        for _ in 0..2 {
            for b in us.iter().chain(ws.iter()) {
                let b: &Vec<Complex64> = b;
                let proj: Complex64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= proj * bi;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for vi in &mut v {
            *vi /= norm;
        }
        // w = -J ū: top half -ū_bottom, bottom half ū_top.
        let w: Vec<Complex64> = (0..n)
            .map(|i| if i < m { -v[i + m].conj() } else { v[i - m].conj() })
            .collect();
        us.push(v);
        ws.push(w);
    }
    m_cols.extend(us);
    m_cols.extend(ws);
    DMatrix::from_fn(n, n, |i, j| m_cols[j][i])
}

fn max_abs_real(a: &DMatrix<f64>) -> f64 {
    a.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}

fn max_abs_complex(a: &DMatrix<Complex64>) -> f64 {
    a.iter().fold(0.0, |acc, x| acc.max(x.norm()))
}

/// `‖MᵀM - I‖_max` for orthogonal samples.
pub fn orthogonality_residual(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    max_abs_real(&(m.transpose() * m - DMatrix::identity(n, n)))
}

/// The larger of `‖M*M - I‖_max` and `‖MᵀJM - J‖_max`.
pub fn symplecticity_residual(m: &DMatrix<Complex64>) -> f64 {
    let n = m.nrows();
    let j = symplectic_form(n);
    let unitary = max_abs_complex(&(m.adjoint() * m - DMatrix::identity(n, n)));
    let form = max_abs_complex(&(m.transpose() * &j * m - j));
    unitary.max(form)
}

/// `tr(M^k)` for `k = 1..=max_k`.
fn power_traces<T>(m: &DMatrix<T>, max_k: usize) -> Vec<Complex64>
where
    T: nalgebra::Scalar + nalgebra::ClosedAddAssign + nalgebra::ClosedMulAssign + num_traits::Zero + num_traits::One + Copy,
    T: Into<Complex64>,
{
    let mut out = Vec::with_capacity(max_k);
    let mut power = m.clone();
    for k in 1..=max_k {
        if k > 1 {
            power = &power * m;
        }
        out.push(power.trace().into());
    }
    out
}

/// `e_1, …, e_K` of the eigenvalues from power traces by Newton's identities.
fn elementary_from_traces(p: &[Complex64]) -> Vec<Complex64> {
    let mut e = vec![Complex64::new(1.0, 0.0)];
    for k in 1..=p.len() {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 1..=k {
            let term = e[k - i] * p[i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / k as f64);
    }
    e
}

fn check_group(group: Group, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    if group == Group::Sp && n % 2 == 1 {
        return Err(Error::OddSymplecticRank(n));
    }
    Ok(())
}

impl HaarSampler {
    pub fn new(group: Group, n: usize, seed: u64, samples: usize) -> Result<Self> {
        check_group(group, n)?;
        Ok(HaarSampler { group, n, seed, samples })
    }

    fn rng(&self, index: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index as u64);
        rng
    }

    pub fn orthogonal(&self, index: usize) -> DMatrix<f64> {
        sample_orthogonal(self.n, &mut self.rng(index))
    }

    pub fn symplectic(&self, index: usize) -> DMatrix<Complex64> {
        sample_symplectic(self.n, &mut self.rng(index))
    }

    /// Power traces `tr(M^k)` for `k ≤ max_k`, and the group residual.
    pub fn traces(&self, index: usize, max_k: usize) -> (Vec<Complex64>, f64) {
        match self.group {
            Group::O => {
                let m = self.orthogonal(index);
                (power_traces(&m, max_k), orthogonality_residual(&m))
            }
            Group::Sp => {
                let m = self.symplectic(index);
                (power_traces(&m, max_k), symplecticity_residual(&m))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub tau: Partition,
    pub estimate: f64,
    pub stderr: f64,
    /// Mean of the imaginary parts; should vanish up to noise.
    pub imag_mean: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McReport {
    pub group: Group,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub estimates: Vec<McEstimate>,
    pub max_residual: f64,
}

/// Monte Carlo means of `∏_i e_{τ_i}(eigenvalues)` for several `τ` from one
/// shared set of samples.
pub fn haar_mc_dims(group: Group, n: usize, taus: &[Partition], samples: usize, seed: u64) -> Result<McReport> {
    let sampler = HaarSampler::new(group, n, seed, samples)?;
    if samples == 0 {
        return Err(Error::Eval("need at least one sample".into()));
    }
    let max_k = taus.iter().flat_map(|t| t.parts().first().copied()).max().unwrap_or(0);
    let chunks: Vec<(Vec<Vec<Complex64>>, f64)> = (0..samples.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut values = Vec::with_capacity(CHUNK);
            let mut residual: f64 = 0.0;
            for index in c * CHUNK..((c + 1) * CHUNK).min(samples) {
                let (p, r) = sampler.traces(index, max_k);
                residual = residual.max(r);
                let e = elementary_from_traces(&p);
                values.push(
                    taus.iter()
                        .map(|t| t.parts().iter().map(|&k| e[k]).product())
                        .collect(),
                );
            }
            (values, residual)
        })
        .collect();
    let mut sums = vec![Complex64::new(0.0, 0.0); taus.len()];
    let mut max_residual: f64 = 0.0;
    for (values, r) in &chunks {
        max_residual = max_residual.max(*r);
        for v in values {
            for (s, x) in sums.iter_mut().zip(v) {
                *s += x;
            }
        }
    }
    let count = samples as f64;
    let means: Vec<Complex64> = sums.iter().map(|s| s / count).collect();
    let mut sq = vec![0.0; taus.len()];
    for (values, _) in &chunks {
        for v in values {
            for ((s, x), mean) in sq.iter_mut().zip(v).zip(&means) {
                *s += (x.re - mean.re).powi(2);
            }
        }
    }
    let estimates = taus
        .iter()
        .zip(&means)
        .zip(&sq)
        .map(|((tau, mean), s)| McEstimate {
            tau: tau.clone(),
            estimate: mean.re,
            stderr: if samples > 1 { (s / (count - 1.0) / count).sqrt() } else { 0.0 },
            imag_mean: mean.im,
        })
        .collect();
    Ok(McReport {
        group,
        n,
        samples,
        seed,
        estimates,
        max_residual,
    })
}

pub fn haar_mc_dim(group: Group, n: usize, tau: &Partition, samples: usize, seed: u64) -> Result<McEstimate> {
    let report = haar_mc_dims(group, n, std::slice::from_ref(tau), samples, seed)?;
    Ok(report.estimates.into_iter().next().expect("one estimate per partition"))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: usize,
    /// Upper 0.1% point of the chi-square distribution.
    pub critical: f64,
    pub passes: bool,
}

/// Wilson–Hilferty approximation to the 0.999 quantile.
fn chi_square_critical_999(dof: usize) -> f64 {
    let k = dof as f64;
    let z = 3.090_232;
    let a = 2.0 / (9.0 * k);
    k * (1.0 - a + z * a.sqrt()).powi(3)
}

/// Goodness of fit of the eigenvalue angle of the rotation part against the
/// Haar density, for the groups where it has a closed form:
/// `O(2)` (uniform angle), `O(3)` (density `(1 - cos θ)/π` on both
/// components) and `Sp(2) = SU(2)` (density `(2/π) sin² θ`).
pub fn eigenangle_chi_square(group: Group, n: usize, samples: usize, seed: u64, bins: usize) -> Result<ChiSquare> {
    let sampler = HaarSampler::new(group, n, seed, samples)?;
    use std::f64::consts::PI;
    let cdf: fn(f64) -> f64 = match (group, n) {
        (Group::O, 2) => |t| t / PI,
        (Group::O, 3) => |t| (t - t.sin()) / PI,
        (Group::Sp, 2) => |t| (t - t.sin() * t.cos()) / PI,
        _ => {
            return Err(Error::OracleLimit(format!(
                "no closed-form eigenangle density for {group}({n})"
            )))
        }
    };
    // Bins [0, bins) hold det = +1, bins [bins, 2 bins) det = -1. O(2) with
    // det = -1 has eigenvalues ±1 and gets a single bin.
    let components = if group == Group::O { 2 } else { 1 };
    let angle_bins = if (group, n) == (Group::O, 2) { bins + 1 } else { components * bins };
    let counts: Vec<Vec<usize>> = (0..samples.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut counts = vec![0usize; angle_bins];
            for index in c * CHUNK..((c + 1) * CHUNK).min(samples) {
                let (p, _) = sampler.traces(index, 1);
                let tr = p[0].re;
                let slot = match (group, n) {
                    (Group::Sp, _) => angle_bin((tr / 2.0).clamp(-1.0, 1.0).acos(), bins),
                    (Group::O, 2) => {
                        let det = sampler.orthogonal(index).determinant();
                        if det < 0.0 {
                            bins
                        } else {
                            angle_bin((tr / 2.0).clamp(-1.0, 1.0).acos(), bins)
                        }
                    }
                    _ => {
                        let det = sampler.orthogonal(index).determinant();
                        let rot_trace = if det < 0.0 { -tr } else { tr };
                        let theta = ((rot_trace - 1.0) / 2.0).clamp(-1.0, 1.0).acos();
                        angle_bin(theta, bins) + if det < 0.0 { bins } else { 0 }
                    }
                };
                counts[slot] += 1;
            }
            counts
        })
        .collect();
    let mut total = vec![0usize; angle_bins];
    for c in counts {
        for (t, x) in total.iter_mut().zip(c) {
            *t += x;
        }
    }
    let weight = 1.0 / components as f64;
    let mut expected: Vec<f64> = (0..bins)
        .map(|b| weight * (cdf(PI * (b + 1) as f64 / bins as f64) - cdf(PI * b as f64 / bins as f64)))
        .collect();
    if (group, n) == (Group::O, 2) {
        expected.push(0.5);
    } else if components == 2 {
        expected.extend(expected.clone());
    }
    let statistic: f64 = total
        .iter()
        .zip(&expected)
        .map(|(&obs, &p)| {
            let e = p * samples as f64;
            (obs as f64 - e).powi(2) / e
        })
        .sum();
    let dof = angle_bins - 1;
    let critical = chi_square_critical_999(dof);
    Ok(ChiSquare {
        statistic,
        dof,
        critical,
        passes: statistic < critical,
    })
}

fn angle_bin(theta: f64, bins: usize) -> usize {
    ((theta / std::f64::consts::PI * bins as f64) as usize).min(bins - 1)
}
