//! Predictor–corrector path tracking for parameter homotopies.
//!
//! The predictor integrates the Davidenko equation dz/dt = −H_z⁻¹ H_t with a
//! classical Runge–Kutta step; the corrector runs a few Newton iterations at
//! the new parameter and the step is accepted only if they contract.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::linalg::{axpy, norm, solve, sub, CVec, C};
use super::newton::{newton_correct, AtParameter, Homotopy, NewtonOptions};
use super::NumericError;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrackOptions {
    pub initial_step: f64,
    pub max_step: f64,
    pub min_step: f64,
    pub corrector_iters: usize,
    /// Relative size of the last corrector step for acceptance.
    pub corrector_tol: f64,
    /// Endpoints closer than this are reported as a path crossing.
    pub crossing_tol: f64,
    /// Retries of a whole segment with smaller steps after a crossing.
    pub crossing_retries: usize,
    pub endgame: NewtonOptions,
}

impl Default for TrackOptions {
    fn default() -> Self {
        Self {
            initial_step: 0.02,
            max_step: 0.1,
            min_step: 1e-8,
            corrector_iters: 3,
            corrector_tol: 1e-9,
            crossing_tol: 1e-8,
            crossing_retries: 2,
            endgame: NewtonOptions { tol: 1e-11, max_iter: 20, cond_cap: 1e12 },
        }
    }
}

impl TrackOptions {
    /// The same options with all step sizes divided by `factor`.
    pub fn refined(&self, factor: f64) -> Self {
        Self { initial_step: self.initial_step / factor, max_step: self.max_step / factor, ..*self }
    }
}

fn velocity<H: Homotopy + ?Sized>(h: &H, z: &[C], t: f64) -> Option<CVec> {
    let ht: CVec = h.jac_t(z, t).iter().map(|v| -v).collect();
    solve(&h.jac_z(z, t), &ht)
}

fn rk4<H: Homotopy + ?Sized>(h: &H, z: &[C], t: f64, dt: f64) -> Option<CVec> {
    let one = C::new(1.0, 0.0);
    let k1 = velocity(h, z, t)?;
    let k2 = velocity(h, &axpy(z, one * (dt / 2.0), &k1), t + dt / 2.0)?;
    let k3 = velocity(h, &axpy(z, one * (dt / 2.0), &k2), t + dt / 2.0)?;
    let k4 = velocity(h, &axpy(z, one * dt, &k3), t + dt)?;
    let incr: CVec = (0..z.len()).map(|i| (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (dt / 6.0)).collect();
    Some(axpy(z, one, &incr))
}

fn correct<H: Homotopy + ?Sized>(h: &H, z: &[C], t: f64, opts: &TrackOptions) -> Option<CVec> {
    let mut z = z.to_vec();
    let mut last = f64::INFINITY;
    for _ in 0..opts.corrector_iters {
        let f: CVec = h.eval(&z, t).iter().map(|v| -v).collect();
        let dz = solve(&h.jac_z(&z, t), &f)?;
        let step = norm(&dz) / (1.0 + norm(&z));
        if step > 0.5 * last || !step.is_finite() {
            return None;
        }
        z = axpy(&z, C::new(1.0, 0.0), &dz);
        if step < opts.corrector_tol {
            return Some(z);
        }
        last = step;
    }
    None
}

/// Tracks one solution from t = 0 to t = 1.
pub fn track_path<H: Homotopy + ?Sized>(h: &H, start: &[C], opts: &TrackOptions) -> Result<CVec, NumericError> {
    let mut z = start.to_vec();
    let mut t = 0.0f64;
    let mut step = opts.initial_step;
    let mut streak = 0;
    while t < 1.0 {
        let dt = step.min(1.0 - t);
        let next = rk4(h, &z, t, dt).and_then(|zp| {
            let zc = correct(h, &zp, t + dt, opts)?;
            // a corrector that had to move far means the predictor lost the path
            (norm(&sub(&zc, &zp)) < 0.1 * (1.0 + norm(&z))).then_some(zc)
        });
        match next {
            Some(zc) => {
                z = zc;
                t = if 1.0 - t - dt < 1e-14 { 1.0 } else { t + dt };
                streak += 1;
                if streak >= 3 {
                    step = (step * 2.0).min(opts.max_step);
                    streak = 0;
                }
            }
            None => {
                step /= 2.0;
                streak = 0;
                if step < opts.min_step {
                    return Err(NumericError::PathFailure { last_good: t });
                }
            }
        }
    }
    newton_correct(&AtParameter { homotopy: h, t: 1.0 }, &z, &opts.endgame)
        .map(|s| s.z)
        .map_err(|_| NumericError::PathFailure { last_good: 1.0 })
}

fn has_crossing(ends: &[CVec], tol: f64) -> bool {
    for i in 0..ends.len() {
        for j in i + 1..ends.len() {
            if norm(&sub(&ends[i], &ends[j])) < tol * (1.0 + norm(&ends[i])) {
                return true;
            }
        }
    }
    false
}

/// Tracks every start solution; endpoints keep the order of the starts.
/// Colliding endpoints trigger retries with smaller steps, then an error.
pub fn track_segment<H: Homotopy + ?Sized>(h: &H, starts: &[CVec], opts: &TrackOptions) -> Result<Vec<CVec>, NumericError> {
    let mut o = *opts;
    for attempt in 0..=opts.crossing_retries {
        let ends: Vec<CVec> = starts.par_iter().map(|s| track_path(h, s, &o)).collect::<Result<_, _>>()?;
        if !has_crossing(&ends, opts.crossing_tol) {
            return Ok(ends);
        }
        if attempt < opts.crossing_retries {
            o = o.refined(4.0);
        }
    }
    Err(NumericError::PathCrossing)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;

    /// z² = a(t) with a moving from 1 along a circle around 0.
    struct SquareRoot {
        turns: f64,
    }

    impl SquareRoot {
        fn a(&self, t: f64) -> (C, C) {
            let th = 2.0 * std::f64::consts::PI * self.turns * t;
            let a = C::from_polar(1.0, th);
            (a, a * C::new(0.0, 2.0 * std::f64::consts::PI * self.turns))
        }
    }

    impl Homotopy for SquareRoot {
        fn dim(&self) -> usize {
            1
        }
        fn eval(&self, z: &[C], t: f64) -> CVec {
            vec![z[0] * z[0] - self.a(t).0]
        }
        fn jac_z(&self, z: &[C], _: f64) -> DMatrix<C> {
            DMatrix::from_element(1, 1, z[0] * 2.0)
        }
        fn jac_t(&self, _: &[C], t: f64) -> CVec {
            vec![-self.a(t).1]
        }
    }

    #[test]
    fn loop_around_branch_point_swaps_roots() {
        let one = C::new(1.0, 0.0);
        let ends = track_segment(&SquareRoot { turns: 1.0 }, &[vec![one], vec![-one]], &TrackOptions::default()).unwrap();
        assert!((ends[0][0] + one).norm() < 1e-10);
        assert!((ends[1][0] - one).norm() < 1e-10);
    }

    #[test]
    fn trivial_segment_is_identity() {
        let one = C::new(1.0, 0.0);
        let ends = track_segment(&SquareRoot { turns: 0.0 }, &[vec![one], vec![-one]], &TrackOptions::default()).unwrap();
        assert!((ends[0][0] - one).norm() < 1e-12);
        assert!((ends[1][0] + one).norm() < 1e-12);
    }
}
