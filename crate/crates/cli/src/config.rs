//! Run configuration file format: JSON with unknown fields rejected.

use circlefg_core::engine::InitConfig;
use circlefg_core::lattice::GridPoint;
use circlefg_core::scheduler::Policy;
use serde::{Deserialize, Serialize};

fn default_max_events() -> u64 {
    1_000_000
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub radius: f64,
    pub robots: Vec<GridPoint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flips: Option<Vec<bool>>,
    #[serde(default)]
    pub seed: u64,
    pub scheduler: Policy,
    #[serde(default = "default_max_events")]
    pub max_events: u64,
}

impl RunConfig {
    pub fn load(path: &std::path::Path) -> Result<RunConfig, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {}", path.display(), e))?;
        serde_json::from_str(&text).map_err(|e| format!("invalid config {}: {}", path.display(), e))
    }

    /// The engine-facing part, with the effective seed applied.
    pub fn init_config(&self, seed: u64) -> InitConfig {
        InitConfig {
            robots: self.robots.clone(),
            radius: self.radius,
            flips: self.flips.clone(),
            seed,
        }
    }

    /// Seed precedence: command line, then the CIRCLEFG_SEED environment
    /// variable, then the config file.
    pub fn effective_seed(&self, cli_seed: Option<u64>) -> Result<u64, String> {
        if let Some(s) = cli_seed {
            return Ok(s);
        }
        match std::env::var("CIRCLEFG_SEED") {
            Ok(v) => v
                .parse::<u64>()
                .map_err(|_| format!("CIRCLEFG_SEED is not a valid seed: {:?}", v)),
            Err(_) => Ok(self.seed),
        }
    }
}
