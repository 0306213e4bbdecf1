use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_p, PnormError};

/// A norm value, exact or a lower bound from power iteration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormEstimate {
    pub p: f64,
    pub value: f64,
    pub exact: bool,
    pub converged: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EstimatorOptions {
    pub restarts: usize,
    pub max_iter: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for EstimatorOptions {
    fn default() -> Self {
        EstimatorOptions {
            restarts: 8,
            max_iter: 200,
            tol: 1e-12,
            seed: 0,
        }
    }
}

fn norm_p(x: &[Complex64], p: f64) -> f64 {
    x.iter().map(|z| z.norm().powf(p)).sum::<f64>().powf(1.0 / p)
}

/// `y` with `‖y‖_{p'} = 1` and `⟨y, x⟩ = ‖x‖_p`.
fn dual(x: &[Complex64], p: f64) -> Vec<Complex64> {
    let n = norm_p(x, p);
    if n == 0.0 {
        return vec![Complex64::new(0.0, 0.0); x.len()];
    }
    x.iter()
        .map(|z| {
            let r = z.norm();
            if r == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                (z / r) * (r / n).powf(p - 1.0)
            }
        })
        .collect()
}

fn apply(m: &DMatrix<Complex64>, x: &[Complex64]) -> Vec<Complex64> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)] * x[j]).sum())
        .collect()
}

fn apply_adjoint(m: &DMatrix<Complex64>, y: &[Complex64]) -> Vec<Complex64> {
    (0..m.ncols())
        .map(|j| (0..m.nrows()).map(|i| m[(i, j)].conj() * y[i]).sum())
        .collect()
}

/// One run of the nonlinear power method from `x`; returns `(‖Ax‖_p, converged)`
/// where `x` is the best unit vector seen.
fn power_run(m: &DMatrix<Complex64>, p: f64, start: Vec<Complex64>, opts: &EstimatorOptions) -> (f64, bool) {
    let q = p / (p - 1.0);
    let scale = norm_p(&start, p);
    if scale == 0.0 {
        return (0.0, true);
    }
    let mut x: Vec<Complex64> = start.iter().map(|z| z / scale).collect();
    let mut best = 0.0_f64;
    for _ in 0..opts.max_iter {
        let y = apply(m, &x);
        let est = norm_p(&y, p);
        if est == 0.0 {
            return (best, true);
        }
        let z = apply_adjoint(m, &dual(&y, p));
        let zq = norm_p(&z, q);
        let zx: f64 = z.iter().zip(&x).map(|(a, b)| (a.conj() * b).re).sum();
        let improved = est > best * (1.0 + opts.tol);
        best = best.max(est);
        if zq <= zx * (1.0 + opts.tol) || !improved && best > 0.0 {
            return (best, true);
        }
        x = dual(&z, q);
    }
    (best, false)
}

/// Lower bound for `‖M‖_{p→p}` by the nonlinear power method, started from
/// every unit vector, the all-ones vector and `restarts` seeded random
/// complex vectors. `p` must lie in `(1, 8]`.
pub fn power_lower_bound(m: &DMatrix<Complex64>, p: f64, opts: &EstimatorOptions) -> Result<NormEstimate, PnormError> {
    check_p(p)?;
    if p == 1.0 {
        return Err(PnormError::InvalidP(p));
    }
    if m.nrows() == 0 || m.ncols() == 0 {
        return Err(PnormError::EmptyMatrix);
    }
    let n = m.ncols();
    let mut best = (0..n)
        .map(|j| norm_p(&m.column(j).iter().copied().collect::<Vec<_>>(), p))
        .fold(0.0, f64::max);
    let mut starts: Vec<Vec<Complex64>> = vec![vec![Complex64::new(1.0, 0.0); n]];
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.restarts {
        starts.push(
            (0..n)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect(),
        );
    }
    for j in 0..n {
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        e[j] = Complex64::new(1.0, 0.0);
        starts.push(e);
    }
    let mut converged = true;
    for s in starts {
        let (v, c) = power_run(m, p, s, opts);
        converged &= c;
        best = best.max(v);
    }
    Ok(NormEstimate {
        p,
        value: best,
        exact: false,
        converged,
    })
}

/// Maximum column sum of absolute values.
pub fn column_sum_norm(m: &DMatrix<Complex64>) -> f64 {
    (0..m.ncols())
        .map(|j| m.column(j).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Maximum row sum of absolute values.
pub fn row_sum_norm(m: &DMatrix<Complex64>) -> f64 {
    (0..m.nrows())
        .map(|i| m.row(i).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn largest_singular_value(m: &DMatrix<Complex64>) -> f64 {
    m.clone().singular_values().max()
}

/// `‖M‖_{p→p}`: exact at `p = 1` (column sums) and `p = 2` (largest
/// singular value), a power-method lower bound otherwise.
pub fn op_norm_p(m: &DMatrix<Complex64>, p: f64) -> Result<NormEstimate, PnormError> {
    op_norm_p_with(m, p, &EstimatorOptions::default())
}

pub fn op_norm_p_with(m: &DMatrix<Complex64>, p: f64, opts: &EstimatorOptions) -> Result<NormEstimate, PnormError> {
    check_p(p)?;
    if m.nrows() == 0 || m.ncols() == 0 {
        return Err(PnormError::EmptyMatrix);
    }
    let exact = |value| NormEstimate {
        p,
        value,
        exact: true,
        converged: true,
    };
    if p == 1.0 {
        Ok(exact(column_sum_norm(m)))
    } else if p == 2.0 {
        Ok(exact(largest_singular_value(m)))
    } else {
        power_lower_bound(m, p, opts)
    }
}
