//! Derivative-free local minimization (Nelder–Mead).
//!
//! Used for the marginal-likelihood search, where gradients are not worth
//! the trouble at dimension three or four. Fully deterministic given the
//! starting point.

use alloc::vec::Vec;

pub(crate) struct NelderMead {
    pub max_iter: usize,
    pub x_tol: f64,
    pub f_tol: f64,
}

impl Default for NelderMead {
    fn default() -> Self {
        Self {
            max_iter: 400,
            x_tol: 1e-8,
            f_tol: 1e-10,
        }
    }
}

pub(crate) struct MinimizeResult {
    pub x: Vec<f64>,
    pub f: f64,
    #[allow(dead_code)]
    pub iterations: usize,
}

impl NelderMead {
    /// Minimizes `f` from `x0`, with an axis-aligned initial simplex of the
    /// given step sizes. Non-finite objective values are treated as worst.
    pub fn minimize(
        &self,
        mut f: impl FnMut(&[f64]) -> f64,
        x0: &[f64],
        steps: &[f64],
    ) -> MinimizeResult {
        let n = x0.len();
        assert!(n > 0 && steps.len() == n);
        let rank = |v: f64| if v.is_nan() { f64::INFINITY } else { v };

        let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
        simplex.push(x0.to_vec());
        for i in 0..n {
            let mut p = x0.to_vec();
            p[i] += steps[i];
            simplex.push(p);
        }
        let mut values: Vec<f64> = simplex.iter().map(|p| rank(f(p))).collect();

        let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);
        let mut iterations = 0;
        for _ in 0..self.max_iter {
            iterations += 1;
            // Order by value; stable tie-break keeps the run deterministic.
            let mut order: Vec<usize> = (0..=n).collect();
            order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
            let best = order[0];
            let worst = order[n];
            let second_worst = order[n - 1];

            let f_spread = values[worst] - values[best];
            let x_spread = simplex
                .iter()
                .flat_map(|p| p.iter().zip(&simplex[best]).map(|(a, b)| (a - b).abs()))
                .fold(0.0f64, f64::max);
            if f_spread.abs() < self.f_tol && x_spread < self.x_tol {
                break;
            }

            // Centroid of all but the worst vertex.
            let mut centroid = alloc::vec![0.0; n];
            for (idx, p) in simplex.iter().enumerate() {
                if idx != worst {
                    for (c, v) in centroid.iter_mut().zip(p) {
                        *c += v;
                    }
                }
            }
            for c in centroid.iter_mut() {
                *c /= n as f64;
            }

            let blend = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> {
                a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
            };

            let reflected = blend(&centroid, &simplex[worst], -alpha);
            let f_reflected = rank(f(&reflected));

            if f_reflected < values[best] {
                let expanded = blend(&centroid, &simplex[worst], -gamma);
                let f_expanded = rank(f(&expanded));
                if f_expanded < f_reflected {
                    simplex[worst] = expanded;
                    values[worst] = f_expanded;
                } else {
                    simplex[worst] = reflected;
                    values[worst] = f_reflected;
                }
            } else if f_reflected < values[second_worst] {
                simplex[worst] = reflected;
                values[worst] = f_reflected;
            } else {
                let contracted = if f_reflected < values[worst] {
                    blend(&centroid, &reflected, rho)
                } else {
                    blend(&centroid, &simplex[worst], rho)
                };
                let f_contracted = rank(f(&contracted));
                if f_contracted < values[worst].min(f_reflected) {
                    simplex[worst] = contracted;
                    values[worst] = f_contracted;
                } else {
                    // Shrink toward the best vertex.
                    let best_point = simplex[best].clone();
                    for idx in 0..=n {
                        if idx != best {
                            simplex[idx] = blend(&best_point, &simplex[idx], sigma);
                            values[idx] = rank(f(&simplex[idx]));
                        }
                    }
                }
            }
        }

        let mut best = 0;
        for i in 1..=n {
            if values[i] < values[best] {
                best = i;
            }
        }
        MinimizeResult {
            x: simplex.swap_remove(best),
            f: values[best],
            iterations,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_bowl() {
        let nm = NelderMead::default();
        let res = nm.minimize(
            |x| (x[0] - 3.0).powi(2) + 2.0 * (x[1] + 1.0).powi(2),
            &[0.0, 0.0],
            &[0.5, 0.5],
        );
        assert!((res.x[0] - 3.0).abs() < 1e-5, "{:?}", res.x);
        assert!((res.x[1] + 1.0).abs() < 1e-5, "{:?}", res.x);
    }

    #[test]
    fn rosenbrock_2d() {
        let nm = NelderMead {
            max_iter: 2000,
            ..NelderMead::default()
        };
        let res = nm.minimize(
            |x| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2),
            &[-1.2, 1.0],
            &[0.2, 0.2],
        );
        assert!((res.x[0] - 1.0).abs() < 1e-4, "{:?}", res.x);
        assert!((res.x[1] - 1.0).abs() < 1e-4, "{:?}", res.x);
        assert!(res.f < 1e-8);
    }

    #[test]
    fn survives_nonfinite_regions() {
        let nm = NelderMead::default();
        let res = nm.minimize(
            |x| {
                if x[0] < 0.0 {
                    f64::NAN
                } else {
                    (x[0] - 2.0).powi(2)
                }
            },
            &[1.0],
            &[0.5],
        );
        assert!((res.x[0] - 2.0).abs() < 1e-5);
    }
}
