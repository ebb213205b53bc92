//! Nelder–Mead simplex minimization with dimension-adaptive coefficients
//! (Gao & Han, 2012).

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMead {
    /// Stop once every vertex lies within this distance of the best one.
    pub tolerance: f64,
    pub max_evals: usize,
    /// Edge length of the initial axis-aligned simplex.
    pub initial_step: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub point: Vec<f64>,
    pub value: f64,
    pub evals: usize,
    pub converged: bool,
}

impl NelderMead {
    pub fn minimize<F>(&self, mut f: F, start: &[f64]) -> Minimum
    where
        F: FnMut(&[f64]) -> f64,
    {
        let n = start.len();
        assert!(n > 0, "cannot minimize over zero parameters");
        let nf = n as f64;
        let (alpha, beta, gamma, delta) = (1.0, 1.0 + 2.0 / nf, 0.75 - 0.5 / nf, 1.0 - 1.0 / nf);

        let mut evals = 0usize;
        let mut eval = |x: &[f64], evals: &mut usize| {
            *evals += 1;
            let v = f(x);
            if v.is_nan() {
                f64::INFINITY
            } else {
                v
            }
        };

        let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
        let v0 = eval(start, &mut evals);
        simplex.push((start.to_vec(), v0));
        for i in 0..n {
            let mut x = start.to_vec();
            x[i] += self.initial_step;
            let v = eval(&x, &mut evals);
            simplex.push((x, v));
        }

        let mut converged = false;
        loop {
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            if diameter(&simplex) < self.tolerance {
                converged = true;
                break;
            }
            if evals >= self.max_evals {
                break;
            }

            let mut centroid = vec![0.0; n];
            for (x, _) in &simplex[..n] {
                for (c, xi) in centroid.iter_mut().zip(x) {
                    *c += xi / nf;
                }
            }
            let worst = simplex[n].clone();
            let toward = |t: f64, from: &[f64]| -> Vec<f64> {
                centroid
                    .iter()
                    .zip(from)
                    .map(|(c, w)| c + t * (c - w))
                    .collect()
            };

            let best_v = simplex[0].1;
            let second_worst_v = simplex[n - 1].1;

            let xr = toward(alpha, &worst.0);
            let fr = eval(&xr, &mut evals);
            if fr < best_v {
                let xe = toward(alpha * beta, &worst.0);
                let fe = eval(&xe, &mut evals);
                simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
                continue;
            }
            if fr < second_worst_v {
                simplex[n] = (xr, fr);
                continue;
            }
            let (xc, fc) = if fr < worst.1 {
                let xc = toward(alpha * gamma, &worst.0);
                let fc = eval(&xc, &mut evals);
                (xc, fc)
            } else {
                let xc = toward(-gamma, &worst.0);
                let fc = eval(&xc, &mut evals);
                (xc, fc)
            };
            if fc < fr.min(worst.1) {
                simplex[n] = (xc, fc);
                continue;
            }

            let best = simplex[0].0.clone();
            for vertex in simplex.iter_mut().skip(1) {
                let x: Vec<f64> = best
                    .iter()
                    .zip(&vertex.0)
                    .map(|(b, xi)| b + delta * (xi - b))
                    .collect();
                let v = eval(&x, &mut evals);
                *vertex = (x, v);
            }
        }

        let (point, value) = simplex.swap_remove(0);
        Minimum {
            point,
            value,
            evals,
            converged,
        }
    }
}

fn diameter(simplex: &[(Vec<f64>, f64)]) -> f64 {
    let best = &simplex[0].0;
    simplex[1..]
        .iter()
        .map(|(x, _)| {
            x.iter()
                .zip(best)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn optimizer() -> NelderMead {
        NelderMead {
            tolerance: 1e-8,
            max_evals: 20_000,
            initial_step: 0.5,
        }
    }

    #[test]
    fn quadratic_bowl() {
        let m = optimizer().minimize(
            |x| (x[0] - 1.0).powi(2) + 2.0 * (x[1] + 0.5).powi(2) + 0.1,
            &[3.0, 3.0],
        );
        assert!(m.converged);
        assert!((m.point[0] - 1.0).abs() < 1e-6);
        assert!((m.point[1] + 0.5).abs() < 1e-6);
        assert!((m.value - 0.1).abs() < 1e-12);
    }

    #[test]
    fn rosenbrock_nine_dimensions() {
        let rosen = |x: &[f64]| {
            x.windows(2)
                .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (1.0 - w[0]).powi(2))
                .sum::<f64>()
        };
        let mut opt = optimizer();
        opt.max_evals = 200_000;
        let mut start = vec![0.0; 9];
        // Restart from the last minimum; a single pass stalls on the valley.
        for _ in 0..5 {
            start = opt.minimize(rosen, &start).point;
        }
        assert!(rosen(&start) < 1e-8, "{}", rosen(&start));
    }

    #[test]
    fn respects_evaluation_budget() {
        let mut opt = optimizer();
        opt.max_evals = 50;
        let m = opt.minimize(|x| x.iter().map(|v| v.sin()).sum(), &[0.0; 9]);
        assert!(!m.converged);
        assert!(m.evals < 50 + 2 * 9 + 2);
    }

    #[test]
    fn nan_is_treated_as_worst() {
        let m = optimizer().minimize(
            |x| if x[0] < 0.0 { f64::NAN } else { (x[0] - 0.25).powi(2) },
            &[1.0],
        );
        assert!((m.point[0] - 0.25).abs() < 1e-6);
    }
}
