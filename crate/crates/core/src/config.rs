//! Seeds, tolerances and caps shared by every experiment.
//!
//! A report embeds the full config it was run with, so a rerun with the same
//! config on the same build reproduces it.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::monodromy::MonodromyConfig;
use crate::numeric::lines::FiberOptions;
use crate::numeric::newton::NewtonOptions;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Newton stopping criterion on ‖F(z)‖∞.
    pub newton: f64,
    /// Largest accepted residual of a returned solution.
    pub residual: f64,
    /// Projective distance below which two lines are the same.
    pub dedup: f64,
    /// Radius of a root cluster.
    pub cluster: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { newton: 1e-12, residual: 1e-10, dedup: 1e-6, cluster: 1e-6 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Caps {
    pub loops: usize,
    pub iterations: usize,
    pub samples: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self { loops: 200, iterations: 50, samples: 100 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub tolerances: Tolerances,
    pub caps: Caps,
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn newton(&self) -> NewtonOptions {
        NewtonOptions { tol: self.tolerances.newton, max_iter: self.caps.iterations, ..NewtonOptions::default() }
    }

    pub fn fiber(&self) -> FiberOptions {
        FiberOptions { cluster_tol: self.tolerances.cluster, ..FiberOptions::default() }
    }

    pub fn monodromy(&self) -> MonodromyConfig {
        let d = MonodromyConfig::default();
        MonodromyConfig { seed: self.seed, cap_loops: self.caps.loops, fiber: self.fiber(), ..d }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip_through_json() {
        let c = ExperimentConfig { seed: 7, output: Some("r.json".into()), ..Default::default() };
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<ExperimentConfig>(&s).unwrap(), c);
        assert_eq!(c.monodromy().seed, 7);
        assert_eq!(c.monodromy().cap_loops, 200);
        assert_eq!(c.newton().max_iter, 50);
    }
}
