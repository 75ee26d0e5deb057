use std::collections::BTreeMap;

use clap::ValueEnum;
use serde::Deserialize;

use crate::AppError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

/// Runtime configuration: fixed seed, named tolerances and caps,
/// output format. Tolerances must be positive.
#[derive(Clone, Debug)]
pub struct Config {
    pub seed: u64,
    pub tolerances: BTreeMap<String, f64>,
    pub caps: BTreeMap<String, usize>,
    pub format: Format,
}

#[derive(Deserialize, Default)]
struct ConfigFile {
    seed: Option<u64>,
    #[serde(default)]
    tolerances: BTreeMap<String, f64>,
    #[serde(default)]
    caps: BTreeMap<String, usize>,
    output_format: Option<String>,
}

impl Config {
    fn defaults() -> Self {
        let mut tolerances = BTreeMap::new();
        tolerances.insert("relation".to_string(), 1e-12);
        tolerances.insert("period".to_string(), 1e-6);
        tolerances.insert("curve".to_string(), 1e-9);
        tolerances.insert("volume-settle".to_string(), 1e-3);
        let mut caps = BTreeMap::new();
        caps.insert("picard-order".to_string(), 24);
        caps.insert("grid".to_string(), 512);
        caps.insert("orbit-depth".to_string(), 6);
        Config {
            seed: 1,
            tolerances,
            caps,
            format: Format::Text,
        }
    }

    pub fn assemble(
        path: Option<&str>,
        format: Option<Format>,
        seed: Option<u64>,
        tol_overrides: &[String],
    ) -> Result<Self, AppError> {
        let mut config = Config::defaults();
        let env_path = std::env::var("DIRACKIT_CONFIG").ok();
        let effective = path.map(str::to_owned).or(env_path);
        if let Some(p) = effective {
            let text = std::fs::read_to_string(&p)
                .map_err(|e| AppError::malformed("config-io", format!("cannot read {p}: {e}")))?;
            let file: ConfigFile = serde_json::from_str(&text)
                .map_err(|e| AppError::malformed("config-json", format!("bad config: {e}")))?;
            if let Some(s) = file.seed {
                config.seed = s;
            }
            for (k, v) in file.tolerances {
                config.tolerances.insert(k, v);
            }
            for (k, v) in file.caps {
                config.caps.insert(k, v);
            }
            if let Some(f) = file.output_format {
                config.format = match f.as_str() {
                    "json" => Format::Json,
                    "text" => Format::Text,
                    "dot" => Format::Dot,
                    other => {
                        return Err(AppError::malformed(
                            "config-format",
                            format!("unknown output format `{other}`"),
                        ))
                    }
                };
            }
        }
        for item in tol_overrides {
            let Some((name, value)) = item.split_once('=') else {
                return Err(AppError::malformed(
                    "tol-syntax",
                    format!("expected NAME=VALUE, got `{item}`"),
                ));
            };
            let value: f64 = value.parse().map_err(|_| {
                AppError::malformed("tol-value", format!("`{value}` is not a number"))
            })?;
            config.tolerances.insert(name.to_string(), value);
        }
        if let Some(f) = format {
            config.format = f;
        }
        if let Some(s) = seed {
            config.seed = s;
        }
        if let Some((name, &v)) = config.tolerances.iter().find(|(_, &v)| v <= 0.0) {
            return Err(AppError::malformed(
                "tol-positive",
                format!("tolerance `{name}` must be positive, got {v}"),
            ));
        }
        Ok(config)
    }

    pub fn tol(&self, name: &str) -> f64 {
        *self
            .tolerances
            .get(name)
            .unwrap_or_else(|| panic!("tolerance `{name}` has a default"))
    }

    pub fn cap(&self, name: &str) -> usize {
        *self
            .caps
            .get(name)
            .unwrap_or_else(|| panic!("cap `{name}` has a default"))
    }
}
