//! Quasi-Newton (BFGS) maximization of smooth objectives over rotor angles.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::rotor::wrap_angle;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OptimizerSettings {
    /// Stop once every gradient component is below this in magnitude.
    pub gradient_tolerance: f64,
    pub max_iterations: usize,
    /// Largest per-coordinate change in a single step, in radians.
    pub max_step: f64,
}

impl Default for OptimizerSettings {
    fn default() -> Self {
        OptimizerSettings {
            gradient_tolerance: 1e-9,
            max_iterations: 2000,
            max_step: 1.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OptimizeOutcome {
    pub x: Vec<f64>,
    pub value: f64,
    pub gradient_norm: f64,
    pub iterations: usize,
    pub converged: bool,
}

const ARMIJO: f64 = 1e-4;
const MAX_BACKTRACKS: usize = 50;

fn inf_norm(v: &DVector<f64>) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

/// Maximizes `objective`, which returns the value and gradient at a point.
///
/// When `periodic` is set, coordinates are wrapped into `(-π, π]` after every
/// step; the objective must then be 2π-periodic in each coordinate.
pub fn maximize<F>(
    mut objective: F,
    x0: &[f64],
    settings: &OptimizerSettings,
    periodic: bool,
) -> OptimizeOutcome
where
    F: FnMut(&[f64]) -> (f64, Vec<f64>),
{
    let n = x0.len();
    let wrap = |v: DVector<f64>| {
        if periodic {
            v.map(wrap_angle)
        } else {
            v
        }
    };
    let mut x = wrap(DVector::from_column_slice(x0));
    // Work with h = −f so the update below is the textbook minimizer.
    let eval = |obj: &mut F, p: &DVector<f64>| {
        let (v, g) = obj(p.as_slice());
        (-v, -DVector::from_vec(g))
    };
    let (mut h, mut g) = eval(&mut objective, &x);
    if n == 0 {
        return OptimizeOutcome {
            x: Vec::new(),
            value: -h,
            gradient_norm: 0.0,
            iterations: 0,
            converged: true,
        };
    }
    let identity = DMatrix::<f64>::identity(n, n);
    let mut inv_hessian = identity.clone();
    let mut fresh = true;
    let mut iterations = 0;
    let mut converged = false;

    while iterations < settings.max_iterations {
        if inf_norm(&g) < settings.gradient_tolerance {
            converged = true;
            break;
        }
        iterations += 1;
        let mut direction = -(&inv_hessian * &g);
        if direction.dot(&g) >= 0.0 {
            inv_hessian = identity.clone();
            fresh = true;
            direction = -g.clone();
        }
        let longest = inf_norm(&direction);
        if longest > settings.max_step {
            direction *= settings.max_step / longest;
        }
        let slope = direction.dot(&g);
        let g_norm = g.norm();

        let mut t = 1.0;
        let mut accepted = None;
        for _ in 0..MAX_BACKTRACKS {
            let trial = &x + &direction * t;
            let (h_t, g_t) = eval(&mut objective, &trial);
            let sufficient = h_t <= h + ARMIJO * t * slope;
            // Near an optimum the value change drowns in rounding noise;
            // fall back to requiring a smaller gradient.
            let noise = 64.0 * f64::EPSILON * h.abs().max(1.0);
            let flat = (h_t - h).abs() <= noise && g_t.norm() < g_norm;
            if h_t.is_finite() && (sufficient || flat) {
                accepted = Some((trial, h_t, g_t));
                break;
            }
            t *= 0.5;
        }

        let Some((trial, h_t, g_t)) = accepted else {
            if fresh {
                break;
            }
            inv_hessian = identity.clone();
            fresh = true;
            continue;
        };

        let s = &direction * t;
        let y = &g_t - &g;
        let sy = s.dot(&y);
        if sy > 1e-12 * s.norm() * y.norm() && sy > 0.0 {
            if fresh {
                inv_hessian = &identity * (sy / y.dot(&y));
            }
            let rho = 1.0 / sy;
            let left = &identity - (&s * y.transpose()) * rho;
            let right = &identity - (&y * s.transpose()) * rho;
            inv_hessian = &left * &inv_hessian * &right + (&s * s.transpose()) * rho;
            fresh = false;
        }
        x = wrap(trial);
        h = h_t;
        g = g_t;
    }

    if !converged && inf_norm(&g) < settings.gradient_tolerance {
        converged = true;
    }
    OptimizeOutcome {
        x: x.as_slice().to_vec(),
        value: -h,
        gradient_norm: inf_norm(&g),
        iterations,
        converged,
    }
}
