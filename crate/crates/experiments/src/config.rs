//! Runtime configuration: structured TOML with sections `[grid]`,
//! `[initial_data]`, `[solver]`, `[picard]`, `[norms]`, `[output]`.
//! Every key has a default; unknown keys are rejected.

use serde::{Deserialize, Serialize};

use crate::error::{ExperimentError, Result};

fn tau() -> f64 {
    std::f64::consts::TAU
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridSection {
    /// Spatial dimension (3 for solver runs; 1/2 for operator checks).
    pub dim: usize,
    /// Points per axis, a power of two >= 8.
    pub n: usize,
    /// Domain edge length.
    pub box_length: f64,
}

impl Default for GridSection {
    fn default() -> Self {
        Self { dim: 3, n: 32, box_length: tau() }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InitialDataSection {
    /// RNG seed for the reproducible field generators.
    pub seed: u64,
    /// Target dyadic norm of the velocity (index `3/p - 1`).
    pub u_norm: f64,
    /// Target dyadic norm of the director deviation (index `3/q`).
    pub delta_norm: f64,
    /// Largest per-axis integer frequency populated by the generator.
    pub band: i64,
    /// Constant far-field director (unit vector).
    pub d_bar: [f64; 3],
}

impl Default for InitialDataSection {
    fn default() -> Self {
        Self { seed: 42, u_norm: 0.03, delta_norm: 0.02, band: 4, d_bar: [0.0, 0.0, 1.0] }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverSection {
    /// Time scheme: "etd1" or "etd_midpoint".
    pub scheme: String,
    /// March horizon.
    pub t_end: f64,
    /// Number of fixed steps over the horizon.
    pub steps: usize,
    /// Step guard constant `dt <= guard_c / max|u|`.
    pub guard_c: f64,
    /// Project the director back to unit length after every step.
    pub renormalize: bool,
}

impl Default for SolverSection {
    fn default() -> Self {
        Self {
            scheme: "etd_midpoint".into(),
            t_end: 0.5,
            steps: 256,
            guard_c: 0.5,
            renormalize: false,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PicardSection {
    pub max_iters: usize,
    pub contraction_tol: f64,
    pub horizon: f64,
    /// Time steps per iterate.
    pub steps: usize,
    /// Smallness bookkeeping targets (recorded, not asserted).
    pub eps_smallness: f64,
    pub zeta: f64,
    /// Uniform constants of the boundary-regime norm weights.
    pub c0: f64,
    pub c1: f64,
    /// Horizon-halving retries on a non-contracting iteration.
    pub max_retries: usize,
}

impl Default for PicardSection {
    fn default() -> Self {
        Self {
            max_iters: 10,
            contraction_tol: 1e-10,
            horizon: 0.25,
            steps: 128,
            eps_smallness: 0.1,
            zeta: 0.01,
            c0: 1.0,
            c1: 1.0,
            max_retries: 2,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NormsSection {
    /// Integrability index of the velocity scale.
    pub p: f64,
    /// Integrability index of the director scale.
    pub q: f64,
    /// Interpolation parameter of the continuation quantity, in (0, 1].
    pub theta: f64,
    /// Derivative orders for the decay experiment.
    pub m_orders: Vec<u32>,
    /// Sample times for tracked norms.
    pub sample_times: Vec<f64>,
}

impl Default for NormsSection {
    fn default() -> Self {
        Self {
            p: 2.0,
            q: 2.0,
            theta: 1.0,
            m_orders: vec![1, 2],
            sample_times: vec![0.005, 0.01, 0.02, 0.04, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5],
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSection {
    /// Output directory; flag/env overrides apply.
    pub dir: String,
    /// Also write the JSON report without the --json flag.
    pub json: bool,
    /// Write field snapshots at the snapshot cadence.
    pub snapshots: bool,
    /// Steps between snapshots.
    pub snapshot_every: usize,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self { dir: String::new(), json: false, snapshots: false, snapshot_every: 64 }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub grid: GridSection,
    pub initial_data: InitialDataSection,
    pub solver: SolverSection,
    pub picard: PicardSection,
    pub norms: NormsSection,
    pub output: OutputSection,
}

/// Admissibility window of the index pair:
/// `-min(1/3, 1/(2p)) <= 1/q - 1/p <= 1/3` with `1 < p, q < inf`.
pub fn indices_admissible(p: f64, q: f64) -> bool {
    if !(p > 1.0 && p.is_finite() && q > 1.0 && q.is_finite()) {
        return false;
    }
    let gap = 1.0 / q - 1.0 / p;
    let lower = -(1.0f64 / 3.0).min(1.0 / (2.0 * p));
    (lower - 1e-12..=1.0 / 3.0 + 1e-12).contains(&gap)
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            toml::from_str(text).map_err(|e| ExperimentError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml(&text)
    }

    pub fn validate(&self) -> Result<()> {
        gvlc_core::GridSpec::new(self.grid.dim, self.grid.n, self.grid.box_length)
            .map_err(|e| ExperimentError::Config(e.to_string()))?;
        if !indices_admissible(self.norms.p, self.norms.q) {
            return Err(ExperimentError::Config(format!(
                "(p, q) = ({}, {}) outside the admissibility window",
                self.norms.p, self.norms.q
            )));
        }
        if !(self.norms.theta > 0.0 && self.norms.theta <= 1.0) {
            return Err(ExperimentError::Config("theta must be in (0, 1]".into()));
        }
        if self.solver.scheme != "etd1" && self.solver.scheme != "etd_midpoint" {
            return Err(ExperimentError::Config(format!(
                "unknown scheme {:?} (expected \"etd1\" or \"etd_midpoint\")",
                self.solver.scheme
            )));
        }
        let nb = self.initial_data.d_bar;
        let len = (nb[0] * nb[0] + nb[1] * nb[1] + nb[2] * nb[2]).sqrt();
        if (len - 1.0).abs() > 1e-9 {
            return Err(ExperimentError::Config("d_bar must be a unit vector".into()));
        }
        Ok(())
    }

    /// Default configuration as commented TOML (for `gen-config`).
    pub fn default_toml() -> String {
        let cfg = ExperimentConfig::default();
        toml::to_string_pretty(&cfg).expect("static serialization")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip() {
        let text = ExperimentConfig::default_toml();
        let cfg = ExperimentConfig::from_toml(&text).unwrap();
        assert_eq!(cfg.grid.n, 32);
        assert_eq!(cfg.initial_data.seed, 42);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let bad = "[grid]\nn = 32\nwavelets = true\n";
        let err = ExperimentConfig::from_toml(bad).unwrap_err();
        assert!(err.to_string().contains("wavelets"), "{err}");
    }

    #[test]
    fn admissibility_window() {
        assert!(indices_admissible(2.0, 2.0));
        assert!(indices_admissible(3.0, 2.0)); // 1/2 - 1/3 = 1/6 <= 1/3
        assert!(indices_admissible(2.0, 1.2)); // 1/1.2 - 1/2 = 1/3, boundary
        assert!(!indices_admissible(2.0, 1.1)); // above the upper bound
        assert!(indices_admissible(1.5, 3.0)); // 1/3 - 2/3 = -1/3 = lower bound
        assert!(!indices_admissible(6.0, 100.0)); // below -1/12
        assert!(!indices_admissible(1.0, 2.0)); // p must exceed 1
    }

    #[test]
    fn bad_sections_are_rejected() {
        assert!(ExperimentConfig::from_toml("[grid]\nn = 12\n").is_err());
        assert!(ExperimentConfig::from_toml("[norms]\np = 2.0\nq = 1.1\n").is_err());
        assert!(ExperimentConfig::from_toml("[solver]\nscheme = \"rk4\"\n").is_err());
        assert!(
            ExperimentConfig::from_toml("[initial_data]\nd_bar = [1.0, 1.0, 0.0]\n").is_err()
        );
    }
}
