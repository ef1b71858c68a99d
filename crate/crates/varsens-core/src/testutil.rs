//! Analytic reference values and slow independent oracles for test suites.
//!
//! Everything here is derived from closed forms or brute-force numerics that
//! deliberately avoid the code paths under test (Gauss–Jordan instead of
//! Cholesky, bisection instead of the rational quantile). Enabled through
//! the `testutil` feature for downstream test targets; not a public API.

use alloc::vec::Vec;

use crate::design::norm_cdf;
use crate::float;
use crate::linalg::Matrix;

/// Analytic variance decomposition of the Ishigami function over
/// uniform inputs on [-pi, pi]^3.
///
/// With `k = b pi^4 / 5`:
/// total variance `V = a^2/8 + k + b^2 pi^8 / 18 + 1/2`,
/// main effects `V1 = (1 + k)^2 / 2`, `V2 = a^2 / 8`, `V3 = 0`,
/// and the single interaction `V13 = b^2 pi^8 (1/18 - 1/50)`.
pub struct IshigamiDecomposition {
    pub variance: f64,
    pub first_order: [f64; 3],
    pub total_order: [f64; 3],
    pub mean: f64,
}

pub fn ishigami_decomposition(a: f64, b: f64) -> IshigamiDecomposition {
    let pi = core::f64::consts::PI;
    let pi4 = pi * pi * pi * pi;
    let pi8 = pi4 * pi4;
    let k = b * pi4 / 5.0;
    let v1 = 0.5 * (1.0 + k) * (1.0 + k);
    let v2 = a * a / 8.0;
    let v3 = 0.0;
    let v13 = b * b * pi8 * (1.0 / 18.0 - 1.0 / 50.0);
    let variance = v1 + v2 + v3 + v13;
    IshigamiDecomposition {
        variance,
        first_order: [v1 / variance, v2 / variance, v3 / variance],
        total_order: [(v1 + v13) / variance, v2 / variance, (v3 + v13) / variance],
        mean: a / 2.0,
    }
}

/// Analytic Sobol' indices of the g-function over uniform inputs on
/// [0, 1]^n: `V_i = (1/3) / (1 + a_i)^2`, `V = prod(1 + V_i) - 1`.
pub struct GFunctionDecomposition {
    pub variance: f64,
    pub first_order: Vec<f64>,
    pub total_order: Vec<f64>,
}

pub fn g_function_decomposition(a: &[f64]) -> GFunctionDecomposition {
    let vi: Vec<f64> = a.iter().map(|ai| (1.0 / 3.0) / ((1.0 + ai) * (1.0 + ai))).collect();
    let total: f64 = vi.iter().map(|v| 1.0 + v).product::<f64>() - 1.0;
    let first_order = vi.iter().map(|v| v / total).collect();
    let total_order = vi
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let rest: f64 = vi
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, w)| 1.0 + w)
                .product();
            v * rest / total
        })
        .collect();
    GFunctionDecomposition {
        variance: total,
        first_order,
        total_order,
    }
}

/// Bisection on the forward normal CDF; valid for p up to about 0.9999
/// (beyond that the CDF loses absolute resolution near 1).
pub fn bisect_normal_quantile(p: f64) -> f64 {
    let (mut lo, mut hi) = (-40.0f64, 40.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if norm_cdf(mid) < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Gauss–Jordan inverse with partial pivoting. Panics on singular input;
/// oracle use only.
pub fn gauss_jordan_inverse(a: &Matrix) -> Matrix {
    let n = a.rows();
    assert_eq!(n, a.cols());
    let mut aug = Matrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)];
        }
        aug[(i, n + i)] = 1.0;
    }
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&r, &s| {
                float::abs(aug[(r, col)]).total_cmp(&float::abs(aug[(s, col)]))
            })
            .unwrap();
        assert!(float::abs(aug[(pivot_row, col)]) > 0.0, "singular matrix");
        if pivot_row != col {
            for j in 0..2 * n {
                let tmp = aug[(col, j)];
                aug[(col, j)] = aug[(pivot_row, j)];
                aug[(pivot_row, j)] = tmp;
            }
        }
        let pivot = aug[(col, col)];
        for j in 0..2 * n {
            aug[(col, j)] /= pivot;
        }
        for row in 0..n {
            if row != col {
                let factor = aug[(row, col)];
                if factor != 0.0 {
                    for j in 0..2 * n {
                        aug[(row, j)] -= factor * aug[(col, j)];
                    }
                }
            }
        }
    }
    Matrix::from_fn(n, n, |i, j| aug[(i, n + j)])
}

/// log-determinant via LU with partial pivoting (positive-definite input).
pub fn lu_log_det(a: &Matrix) -> f64 {
    let n = a.rows();
    assert_eq!(n, a.cols());
    let mut m = a.clone();
    let mut log_det = 0.0;
    let mut sign = 1.0;
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&r, &s| float::abs(m[(r, col)]).total_cmp(&float::abs(m[(s, col)])))
            .unwrap();
        if pivot_row != col {
            sign = -sign;
            for j in 0..n {
                let tmp = m[(col, j)];
                m[(col, j)] = m[(pivot_row, j)];
                m[(pivot_row, j)] = tmp;
            }
        }
        let pivot = m[(col, col)];
        assert!(pivot != 0.0, "singular matrix");
        if pivot < 0.0 {
            sign = -sign;
        }
        log_det += float::ln(float::abs(pivot));
        for row in col + 1..n {
            let factor = m[(row, col)] / pivot;
            if factor != 0.0 {
                for j in col..n {
                    m[(row, j)] -= factor * m[(col, j)];
                }
            }
        }
    }
    assert!(sign > 0.0, "negative determinant");
    log_det
}

/// Gaussian log-density of `y` under mean `mu0 * 1` and covariance `k`,
/// evaluated with the dense inverse. Independent of any Cholesky path.
pub fn dense_log_marginal_likelihood(k: &Matrix, y: &[f64], mu0: f64) -> f64 {
    let n = y.len();
    assert_eq!(k.rows(), n);
    let inv = gauss_jordan_inverse(k);
    let centered: Vec<f64> = y.iter().map(|v| v - mu0).collect();
    let mut quad = 0.0;
    for i in 0..n {
        for j in 0..n {
            quad += centered[i] * inv[(i, j)] * centered[j];
        }
    }
    -0.5 * quad - 0.5 * lu_log_det(k) - 0.5 * n as f64 * float::LN_2PI
}

/// Sample mean and the (n-1)-divisor variance.
pub fn mean_and_variance(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64;
    (mean, var)
}
