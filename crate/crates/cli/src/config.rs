//! Run configuration: defaults, then a `key = value` file, then
//! `GF2CODES_*` environment variables for budget caps, then flags.

use std::path::{Path, PathBuf};

use gf2codes::canon::DEFAULT_NODE_BUDGET;
use gf2codes::gf2::{MAX_ENUM_DIM, MAX_LENGTH};

pub const ENV_PREFIX: &str = "GF2CODES_";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliConfig {
    /// Node cap for each canonical labelling.
    pub max_nodes: u64,
    /// Search-node cap for a classification run; `None` for no cap.
    pub work_budget: Option<u64>,
    pub max_dim: usize,
    pub max_len: usize,
    /// Worker threads; 0 lets the pool decide.
    pub workers: usize,
    pub db_dir: Option<PathBuf>,
    /// Parents per checkpoint unit.
    pub chunk: usize,
    pub tier: u8,
}

impl Default for CliConfig {
    fn default() -> Self {
        Self {
            max_nodes: DEFAULT_NODE_BUDGET,
            work_budget: None,
            max_dim: MAX_ENUM_DIM,
            max_len: MAX_LENGTH,
            workers: 0,
            db_dir: None,
            chunk: 256,
            tier: gf2codes::verify::DEFAULT_TIER,
        }
    }
}

fn positive<T: std::str::FromStr + PartialOrd + Default>(key: &str, value: &str) -> Result<T, String> {
    match value.parse::<T>() {
        Ok(v) if v > T::default() => Ok(v),
        _ => Err(format!("{key} must be a positive integer, got {value:?}")),
    }
}

impl CliConfig {
    /// Applies one setting by name.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        match key {
            "max_nodes" => self.max_nodes = positive(key, value)?,
            "work_budget" => self.work_budget = Some(positive(key, value)?),
            "max_dim" => self.max_dim = positive::<usize>(key, value)?.min(MAX_ENUM_DIM),
            "max_len" => self.max_len = positive::<usize>(key, value)?.min(MAX_LENGTH),
            "workers" => {
                self.workers = value
                    .parse()
                    .map_err(|_| format!("workers must be a nonnegative integer, got {value:?}"))?
            }
            "chunk" => self.chunk = positive(key, value)?,
            "db_dir" => self.db_dir = Some(PathBuf::from(value)),
            "tier" => {
                self.tier = match value.parse::<u8>() {
                    Ok(t) if t <= 3 => t,
                    _ => return Err(format!("tier must be 0..=3, got {value:?}")),
                }
            }
            _ => return Err(format!("unknown setting {key:?}")),
        }
        Ok(())
    }

    pub fn parse_file(&mut self, text: &str, origin: &str) -> Result<(), String> {
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("{origin}:{}: expected `key = value`", i + 1))?;
            self.set(k.trim(), v.trim())
                .map_err(|e| format!("{origin}:{}: {e}", i + 1))?;
        }
        Ok(())
    }

    pub fn load_file(&mut self, path: &Path) -> Result<(), String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        self.parse_file(&text, &path.display().to_string())
    }

    /// Budget caps from the environment.
    pub fn apply_env(&mut self, vars: impl IntoIterator<Item = (String, String)>) -> Result<(), String> {
        for (k, v) in vars {
            let Some(key) = k.strip_prefix(ENV_PREFIX) else { continue };
            let key = key.to_ascii_lowercase();
            if matches!(key.as_str(), "max_nodes" | "work_budget" | "max_dim" | "max_len") {
                self.set(&key, &v).map_err(|e| format!("{k}: {e}"))?;
            }
        }
        Ok(())
    }

    pub fn check_dims(&self, k: usize, n: usize) -> Result<(), String> {
        if k > self.max_dim {
            return Err(format!("dimension {k} exceeds the configured cap {}", self.max_dim));
        }
        if n > self.max_len {
            return Err(format!("length {n} exceeds the configured cap {}", self.max_len));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_env() {
        let mut c = CliConfig::default();
        c.parse_file("# caps\nmax_nodes = 500\nworkers=3 # inline\ntier = 2\n", "cfg").unwrap();
        assert_eq!((c.max_nodes, c.workers, c.tier), (500, 3, 2));
        c.apply_env([
            ("GF2CODES_MAX_NODES".to_string(), "700".to_string()),
            ("GF2CODES_WORKERS".to_string(), "9".to_string()),
            ("HOME".to_string(), "/".to_string()),
        ])
        .unwrap();
        assert_eq!((c.max_nodes, c.workers), (700, 3));
    }

    #[test]
    fn rejects_bad_settings() {
        let mut c = CliConfig::default();
        assert!(c.parse_file("max_nodes = 0", "cfg").unwrap_err().contains("cfg:1"));
        assert!(c.set("colour", "blue").is_err());
        assert!(c.set("tier", "4").is_err());
        assert!(c.parse_file("just words", "cfg").is_err());
    }

    #[test]
    fn caps_clamped_to_library_limits() {
        let mut c = CliConfig::default();
        c.set("max_len", "100000").unwrap();
        assert_eq!(c.max_len, MAX_LENGTH);
        assert!(c.check_dims(3, MAX_LENGTH + 1).is_err());
    }
}
