use std::path::{Path, PathBuf};

use clap::ValueEnum;
use monogenic::arith::Effort;
use serde::{Deserialize, Serialize};

/// Environment variable naming a TOML config file. `--config` wins over it.
pub const CONFIG_ENV: &str = "MONOGENIC_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

/// Budgets and defaults shared by every subcommand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Trial division bound for factoring.
    pub trial_bound: u64,
    /// Pollard–Brent iteration cap per split attempt.
    pub rho_iterations: u64,
    /// Largest prime tried by `search-primes` and by `verify-monogenic` when
    /// no `p` is given.
    pub search_limit: u64,
    /// Largest `n` accepted by `stirling` and `bernoulli`.
    pub table_cap: usize,
    /// Largest prime bound accepted by `density`.
    pub density_cap: u64,
    pub format: Format,
    pub corpus: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        let effort = Effort::default();
        RunConfig {
            trial_bound: effort.trial_bound,
            rho_iterations: effort.rho_iterations,
            search_limit: 100_000,
            table_cap: monogenic::stirling::DEFAULT_TABLE_CAP,
            density_cap: 100_000,
            format: Format::Json,
            corpus: PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/corpus")),
        }
    }
}

impl RunConfig {
    pub fn effort(&self) -> Effort {
        Effort::new(self.trial_bound, self.rho_iterations)
    }

    /// Reads `explicit`, else the file named by [`CONFIG_ENV`], else the
    /// defaults.
    pub fn load(explicit: Option<&Path>) -> Result<Self, String> {
        let path = match explicit {
            Some(p) => Some(p.to_path_buf()),
            None => std::env::var_os(CONFIG_ENV)
                .filter(|v| !v.is_empty())
                .map(PathBuf::from),
        };
        let config = match path {
            None => RunConfig::default(),
            Some(path) => {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
                toml::from_str(&text)
                    .map_err(|e| format!("invalid config {}: {e}", path.display()))?
            }
        };
        config.check()?;
        Ok(config)
    }

    pub fn check(&self) -> Result<(), String> {
        let zero = [
            ("trial_bound", self.trial_bound == 0),
            ("search_limit", self.search_limit == 0),
            ("table_cap", self.table_cap == 0),
            ("density_cap", self.density_cap == 0),
        ];
        match zero.iter().find(|(_, z)| *z) {
            Some((name, _)) => Err(format!("config value {name} must be positive")),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_file_keeps_defaults() {
        let c: RunConfig = toml::from_str("trial_bound = 500\nformat = \"text\"").unwrap();
        assert_eq!(c.trial_bound, 500);
        assert_eq!(c.format, Format::Text);
        assert_eq!(c.search_limit, RunConfig::default().search_limit);
    }

    #[test]
    fn rejects_unknown_and_zero() {
        assert!(toml::from_str::<RunConfig>("bogus = 1").is_err());
        let c = RunConfig {
            table_cap: 0,
            ..RunConfig::default()
        };
        assert!(c.check().is_err());
    }
}
