use argmin::core::{CostFunction, Executor, State};
use argmin::solver::neldermead::NelderMead;
use nalgebra::{Cholesky, DMatrix, DVector, Dyn};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const NOISE_FLOOR: f64 = 1e-6;
const RESTARTS: u64 = 8;
const FIT_SEED: u64 = 0x6770_6669_74;
const FIT_ITERATIONS: u64 = 300;

// Bounds on the log hyperparameters, in standardized units.
const LOG_LENGTH: (f64, f64) = (-4.6, 2.3);
const LOG_SIGNAL: (f64, f64) = (-4.6, 4.6);
const LOG_NOISE: (f64, f64) = (-13.8, 0.0);

/// Axis-aligned box over `(p_b, p_c)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    pub p_b: (f64, f64),
    pub p_c: (f64, f64),
}

impl Domain {
    pub fn new(p_b: (f64, f64), p_c: (f64, f64)) -> Result<Self> {
        let ok = |(lo, hi): (f64, f64)| lo.is_finite() && hi.is_finite() && lo < hi;
        if !ok(p_b) || !ok(p_c) {
            return Err(Error::InvalidParameter(format!("empty search box {p_b:?} x {p_c:?}")));
        }
        Ok(Self { p_b, p_c })
    }

    pub fn to_unit(&self, point: [f64; 2]) -> [f64; 2] {
        [
            (point[0] - self.p_b.0) / (self.p_b.1 - self.p_b.0),
            (point[1] - self.p_c.0) / (self.p_c.1 - self.p_c.0),
        ]
    }

    pub fn from_unit(&self, u: [f64; 2]) -> [f64; 2] {
        [
            self.p_b.0 + u[0].clamp(0.0, 1.0) * (self.p_b.1 - self.p_b.0),
            self.p_c.0 + u[1].clamp(0.0, 1.0) * (self.p_c.1 - self.p_c.0),
        ]
    }

    pub fn contains(&self, point: [f64; 2]) -> bool {
        (self.p_b.0..=self.p_b.1).contains(&point[0]) && (self.p_c.0..=self.p_c.1).contains(&point[1])
    }

    pub fn clamp(&self, point: [f64; 2]) -> [f64; 2] {
        [point[0].clamp(self.p_b.0, self.p_b.1), point[1].clamp(self.p_c.0, self.p_c.1)]
    }
}

/// Matérn-5/2 kernel hyperparameters in standardized units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GpHyperparams {
    pub length_scales: [f64; 2],
    pub signal_variance: f64,
    pub noise_variance: f64,
    pub log_marginal_likelihood: f64,
}

impl GpHyperparams {
    fn from_log(theta: &[f64]) -> Self {
        Self {
            length_scales: [
                theta[0].clamp(LOG_LENGTH.0, LOG_LENGTH.1).exp(),
                theta[1].clamp(LOG_LENGTH.0, LOG_LENGTH.1).exp(),
            ],
            signal_variance: theta[2].clamp(LOG_SIGNAL.0, LOG_SIGNAL.1).exp(),
            noise_variance: theta[3].clamp(LOG_NOISE.0, LOG_NOISE.1).exp().max(NOISE_FLOOR),
            log_marginal_likelihood: f64::NAN,
        }
    }

    fn prior() -> Self {
        Self {
            length_scales: [0.3, 0.3],
            signal_variance: 1.0,
            noise_variance: NOISE_FLOOR,
            log_marginal_likelihood: f64::NAN,
        }
    }

    fn kernel(&self, a: [f64; 2], b: [f64; 2]) -> f64 {
        let dx = (a[0] - b[0]) / self.length_scales[0];
        let dy = (a[1] - b[1]) / self.length_scales[1];
        let r = (dx * dx + dy * dy).sqrt();
        let s = 5f64.sqrt() * r;
        self.signal_variance * (1.0 + s + s * s / 3.0) * (-s).exp()
    }

    fn covariance(&self, x: &[[f64; 2]]) -> DMatrix<f64> {
        let n = x.len();
        DMatrix::from_fn(n, n, |i, j| {
            self.kernel(x[i], x[j]) + if i == j { self.noise_variance } else { 0.0 }
        })
    }
}

/// Fitted GP posterior over the search box.
#[derive(Debug, Clone)]
pub struct Surrogate {
    domain: Domain,
    x: Vec<[f64; 2]>,
    values: Vec<f64>,
    y_mean: f64,
    y_scale: f64,
    hyper: GpHyperparams,
    chol: Cholesky<f64, Dyn>,
    weights: DVector<f64>,
}

impl Surrogate {
    pub fn hyperparams(&self) -> GpHyperparams {
        self.hyper
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    /// Largest observed value.
    pub fn incumbent(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Whether `point` coincides with an observation, in unit coordinates.
    pub fn is_observed(&self, point: [f64; 2], tolerance: f64) -> bool {
        let u = self.domain.to_unit(point);
        self.x.iter().any(|x| (x[0] - u[0]).abs() <= tolerance && (x[1] - u[1]).abs() <= tolerance)
    }

    /// Posterior mean and latent variance at `point`, in the original units.
    pub fn predict(&self, point: [f64; 2]) -> (f64, f64) {
        let (m, v) = self.predict_unit(self.domain.to_unit(point));
        (self.y_mean + self.y_scale * m, v * self.y_scale * self.y_scale)
    }

    pub(crate) fn predict_unit(&self, u: [f64; 2]) -> (f64, f64) {
        let k = DVector::from_iterator(self.x.len(), self.x.iter().map(|&x| self.hyper.kernel(x, u)));
        let mean = k.dot(&self.weights);
        let v = self.chol.l().solve_lower_triangular(&k).expect("cholesky factor is invertible");
        let var = (self.hyper.signal_variance - v.dot(&v)).max(0.0);
        (mean, var)
    }

    pub(crate) fn standardize(&self, value: f64) -> f64 {
        (value - self.y_mean) / self.y_scale
    }
}

struct NegLogLikelihood<'a> {
    x: &'a [[f64; 2]],
    y: &'a DVector<f64>,
}

impl CostFunction for NegLogLikelihood<'_> {
    type Param = Vec<f64>;
    type Output = f64;

    fn cost(&self, theta: &Self::Param) -> std::result::Result<f64, argmin::core::Error> {
        let hyper = GpHyperparams::from_log(theta);
        Ok(log_likelihood(&hyper, self.x, self.y).map_or(1e12, |l| -l))
    }
}

fn log_likelihood(hyper: &GpHyperparams, x: &[[f64; 2]], y: &DVector<f64>) -> Option<f64> {
    let chol = Cholesky::new(hyper.covariance(x))?;
    let alpha = chol.solve(y);
    let log_det: f64 = chol.l().diagonal().iter().map(|d| d.ln()).sum();
    let n = x.len() as f64;
    Some(-0.5 * y.dot(&alpha) - log_det - 0.5 * n * (2.0 * std::f64::consts::PI).ln())
}

fn nelder_mead(cost: NegLogLikelihood<'_>, start: Vec<f64>) -> Option<(Vec<f64>, f64)> {
    let mut simplex = vec![start.clone()];
    for i in 0..start.len() {
        let mut p = start.clone();
        p[i] += 0.5;
        simplex.push(p);
    }
    let solver = NelderMead::new(simplex).with_sd_tolerance(1e-10).ok()?;
    let result = Executor::new(cost, solver)
        .configure(|state| state.max_iters(FIT_ITERATIONS))
        .run()
        .ok()?;
    let state = result.state();
    Some((state.get_best_param()?.clone(), state.get_best_cost()))
}

/// GP regression on `(point, value)` observations.
///
/// Inputs are scaled to the unit square and outputs standardized. Kernel
/// length-scales, signal and noise variance maximize the log marginal
/// likelihood over 8 seeded Nelder–Mead restarts. When all values are equal
/// the prior hyperparameters are used with unit output scale.
pub fn gp_fit(observations: &[([f64; 2], f64)], domain: &Domain) -> Result<Surrogate> {
    if observations.is_empty() {
        return Err(Error::InvalidParameter("GP needs at least one observation".into()));
    }
    let mut obs: Vec<([f64; 2], f64)> = observations.to_vec();
    obs.sort_by(|a, b| {
        a.0[0]
            .total_cmp(&b.0[0])
            .then(a.0[1].total_cmp(&b.0[1]))
            .then(a.1.total_cmp(&b.1))
    });
    let x: Vec<[f64; 2]> = obs.iter().map(|(p, _)| domain.to_unit(*p)).collect();
    let values: Vec<f64> = obs.iter().map(|(_, v)| *v).collect();
    let n = values.len() as f64;
    let y_mean = values.iter().sum::<f64>() / n;
    let spread = (values.iter().map(|v| (v - y_mean).powi(2)).sum::<f64>() / n).sqrt();
    let degenerate = spread <= 1e-12 * y_mean.abs().max(1.0);
    let y_scale = if degenerate { 1.0 } else { spread };
    let y = DVector::from_iterator(values.len(), values.iter().map(|v| (v - y_mean) / y_scale));

    let mut hyper = GpHyperparams::prior();
    if !degenerate {
        let mut best: Option<(Vec<f64>, f64)> = None;
        for restart in 0..RESTARTS {
            let start = if restart == 0 {
                vec![0.3f64.ln(), 0.3f64.ln(), 0.0, 1e-2f64.ln()]
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(FIT_SEED);
                rng.set_stream(restart);
                vec![
                    rng.gen_range(LOG_LENGTH.0..LOG_LENGTH.1),
                    rng.gen_range(LOG_LENGTH.0..LOG_LENGTH.1),
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(LOG_NOISE.0..-2.0),
                ]
            };
            let cost = NegLogLikelihood { x: &x, y: &y };
            if let Some((theta, value)) = nelder_mead(cost, start) {
                if best.as_ref().map_or(true, |(_, b)| value < *b) {
                    best = Some((theta, value));
                }
            }
        }
        if let Some((theta, _)) = best {
            hyper = GpHyperparams::from_log(&theta);
        }
    }

    let chol = loop {
        match Cholesky::new(hyper.covariance(&x)) {
            Some(chol) => break chol,
            None => hyper.noise_variance *= 10.0,
        }
    };
    hyper.log_marginal_likelihood = log_likelihood(&hyper, &x, &y).unwrap_or(f64::NAN);
    let weights = chol.solve(&y);
    Ok(Surrogate {
        domain: *domain,
        x,
        values,
        y_mean,
        y_scale,
        hyper,
        chol,
        weights,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> Domain {
        Domain::new((0.0, 1.0), (0.01, 0.99)).unwrap()
    }

    fn sample_obs() -> Vec<([f64; 2], f64)> {
        let f = |p: [f64; 2]| (3.0 * p[0]).sin() + (p[1] - 0.4).powi(2);
        [[0.1, 0.2], [0.5, 0.5], [0.9, 0.3], [0.3, 0.8], [0.7, 0.9], [0.2, 0.5]]
            .into_iter()
            .map(|p| (p, f(p)))
            .collect()
    }

    #[test]
    fn single_observation_interpolates() {
        let s = gp_fit(&[([0.4, 0.6], 0.37)], &unit()).unwrap();
        let (m, _) = s.predict([0.4, 0.6]);
        assert!((m - 0.37).abs() < 1e-6);
    }

    #[test]
    fn variance_is_smaller_at_data() {
        let s = gp_fit(&sample_obs(), &unit()).unwrap();
        let (_, near) = s.predict([0.5, 0.5]);
        let (_, far) = s.predict([1.0, 0.01]);
        assert!(near <= far);
        assert!(s.hyperparams().noise_variance >= NOISE_FLOOR);
    }

    #[test]
    fn order_does_not_matter() {
        let obs = sample_obs();
        let mut reversed = obs.clone();
        reversed.reverse();
        let a = gp_fit(&obs, &unit()).unwrap();
        let b = gp_fit(&reversed, &unit()).unwrap();
        for p in [[0.0, 0.5], [0.33, 0.77], [0.95, 0.95]] {
            assert_eq!(a.predict(p), b.predict(p));
        }
    }

    #[test]
    fn equal_values_use_prior() {
        let obs = vec![([0.1, 0.1], 2.0), ([0.8, 0.6], 2.0)];
        let s = gp_fit(&obs, &unit()).unwrap();
        assert_eq!(s.hyperparams().length_scales, [0.3, 0.3]);
        assert!((s.predict([0.5, 0.5]).0 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn fit_tracks_the_data() {
        let obs = sample_obs();
        let s = gp_fit(&obs, &unit()).unwrap();
        for (p, v) in &obs {
            assert!((s.predict(*p).0 - v).abs() < 0.1);
        }
    }
}
