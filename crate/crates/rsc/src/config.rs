//! Run configuration: output format, tolerance overrides from a `key = value` file, and the
//! thread cap.

use std::path::Path;

use serde::Deserialize;

use rsc_core::transforms::EnvelopeOptions;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Table,
}

/// Keys accepted in a config file. Every key is optional.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    /// Relative gap target of operator enclosures.
    pub rel_gap: Option<f64>,
    /// Piece cap of operator enclosures.
    pub max_pieces: Option<usize>,
    pub threads: Option<usize>,
    /// Seed of the randomised verification suites.
    pub seed: Option<u64>,
    /// Instance count of the randomised verification suites.
    pub samples: Option<usize>,
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("bad config file: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("bad config value: {0}")]
    Value(&'static str),
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let cfg: ConfigFile = toml::from_str(text)?;
        if cfg.rel_gap.is_some_and(|g| !(g > 0.0 && g < 1.0)) {
            return Err(ConfigError::Value("rel_gap must lie in (0,1)"));
        }
        if cfg.max_pieces == Some(0) || cfg.threads == Some(0) || cfg.samples == Some(0) {
            return Err(ConfigError::Value("counts must be positive"));
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }
}

/// Settings shared by every command.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub format: OutputFormat,
    pub envelope: EnvelopeOptions,
    /// `None` lets rayon pick.
    pub threads: Option<usize>,
    pub seed: u64,
    pub samples: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { format: OutputFormat::Json, envelope: EnvelopeOptions::default(), threads: None, seed: 7, samples: 200 }
    }
}

impl RunConfig {
    /// Applies file overrides, then caps the thread count by `env_threads` (the value of
    /// `RSC_THREADS`).
    pub fn new(format: OutputFormat, file: Option<&ConfigFile>, env_threads: Option<&str>) -> Result<Self, ConfigError> {
        let mut cfg = RunConfig { format, ..Default::default() };
        if let Some(f) = file {
            if let Some(g) = f.rel_gap {
                cfg.envelope.rel_gap = g;
            }
            if let Some(p) = f.max_pieces {
                cfg.envelope.max_pieces = p;
            }
            cfg.threads = f.threads;
            cfg.seed = f.seed.unwrap_or(cfg.seed);
            cfg.samples = f.samples.unwrap_or(cfg.samples);
        }
        if let Some(raw) = env_threads.map(str::trim).filter(|s| !s.is_empty()) {
            let cap: usize = raw.parse().ok().filter(|&n| n > 0).ok_or(ConfigError::Value("RSC_THREADS must be a positive integer"))?;
            cfg.threads = Some(cfg.threads.map_or(cap, |t| t.min(cap)));
        }
        Ok(cfg)
    }

    pub fn pool(&self) -> rayon::ThreadPool {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(n) = self.threads {
            b = b.num_threads(n);
        }
        b.build().expect("thread pool")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_and_cap() {
        let f = ConfigFile::parse("rel_gap = 1e-4\nmax_pieces = 4096\nthreads = 8\nseed = 3\n").unwrap();
        let cfg = RunConfig::new(OutputFormat::Csv, Some(&f), Some("2")).unwrap();
        assert_eq!(cfg.envelope.rel_gap, 1e-4);
        assert_eq!(cfg.envelope.max_pieces, 4096);
        assert_eq!(cfg.threads, Some(2));
        assert_eq!(cfg.seed, 3);
        assert_eq!(cfg.samples, 200);
        let cfg = RunConfig::new(OutputFormat::Json, None, Some("4")).unwrap();
        assert_eq!(cfg.threads, Some(4));
    }

    #[test]
    fn rejects_bad_files() {
        assert!(ConfigFile::parse("rel_gap = 2").is_err());
        assert!(ConfigFile::parse("unknown = 1").is_err());
        assert!(ConfigFile::parse("threads = 0").is_err());
        assert!(ConfigFile::parse("rel_gap = ").is_err());
        assert!(RunConfig::new(OutputFormat::Json, None, Some("zero")).is_err());
    }
}
