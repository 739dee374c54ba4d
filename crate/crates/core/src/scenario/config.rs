//! TOML scenario configuration and its validation.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("TOML syntax: {0}")]
    Syntax(String),
    #[error("field `{path}`: {message}")]
    Schema { path: String, message: String },
    #[error("field `{field}`: {reason}")]
    Invalid { field: String, reason: String },
}

impl ConfigError {
    pub(crate) fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        ConfigError::Invalid {
            field: field.into(),
            reason: reason.into(),
        }
    }

    /// The offending field path, when one is known.
    pub fn field(&self) -> Option<&str> {
        match self {
            ConfigError::Schema { path, .. } => Some(path),
            ConfigError::Invalid { field, .. } => Some(field),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioKind {
    SadicEmbedding,
    BlockHierarchy,
    ProductNormalizer,
    Profinite,
    DirectProduct,
    OracleCompare,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum ActionConfig {
    LeftTranslation,
    Trivial {
        alphabet_size: usize,
    },
    Coset {
        subgroup: Vec<usize>,
    },
    Quotient {
        quotient: String,
        projection: Vec<usize>,
    },
    Table {
        path: PathBuf,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AutomorphismSource {
    /// `"right-translations"` or `"identity"`.
    Preset(String),
    Maps(Vec<Vec<usize>>),
}

/// A group, an action of it, a generator schedule and candidate
/// automorphisms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    /// `trivial | cyclic N | symmetric N | product(A, B)`.
    pub group: Option<String>,
    /// Multiplication table file, instead of `group`.
    pub group_table: Option<PathBuf>,
    #[serde(default = "default_action")]
    pub action: ActionConfig,
    /// Ordered generating sets, identity first. Defaults to one set:
    /// identity, then each generator followed by its inverse.
    pub schedule: Option<Vec<Vec<usize>>>,
    pub automorphisms: Option<AutomorphismSource>,
    /// Letter-map file, instead of `automorphisms`.
    pub automorphisms_file: Option<PathBuf>,
}

fn default_action() -> ActionConfig {
    ActionConfig::LeftTranslation
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HorizonConfig {
    pub max_len: usize,
    pub depth: usize,
    pub recurrence: Option<usize>,
    pub p_max: Option<usize>,
    pub aperiodicity_len: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapConfig {
    /// Word expansion budget in letters.
    pub budget: Option<usize>,
    pub enumeration_cap: Option<usize>,
    pub marker_cap: Option<usize>,
    /// Order above which an explicit group table is checked by sampling.
    pub assoc_exhaustive_limit: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MetricConfig {
    #[default]
    Discrete,
    /// Letters are top-level elements of `[tower]`.
    Tower,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HierarchyConfig {
    pub levels: usize,
    /// Per level from 2 on: `"auto"` or a fraction such as `"1/2"`.
    #[serde(default)]
    pub densities: Vec<String>,
    #[serde(default)]
    pub metric: MetricConfig,
    /// Words drawn per level when a level is too large to check in full.
    pub sample_budget: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductConfig {
    pub modulus: usize,
    /// Index of the base component; defaults to the one containing point 0.
    pub base_component: Option<usize>,
    /// Random states used when the state space exceeds the enumeration cap.
    pub samples: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerConfig {
    /// Cyclic chain `Z/m_1 <- Z/m_2 <- ...`, each dividing the next.
    pub moduli: Vec<usize>,
    /// 1-based level used by the profinite scenario.
    pub depth: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub kind: ScenarioKind,
    pub seed: Option<u64>,
    pub output: Option<PathBuf>,
    pub system: Option<SystemConfig>,
    /// Second factor of a direct product.
    pub second: Option<SystemConfig>,
    pub horizons: Option<HorizonConfig>,
    #[serde(default)]
    pub caps: CapConfig,
    pub hierarchy: Option<HierarchyConfig>,
    pub product: Option<ProductConfig>,
    pub tower: Option<TowerConfig>,
}

impl ScenarioConfig {
    /// Parses and validates. Schema errors carry the field path.
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let cfg = Self::parse(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Parses without the cross-field checks of [`ScenarioConfig::validate`].
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let de = toml::Deserializer::parse(text).map_err(|e| ConfigError::Syntax(e.to_string()))?;
        serde_path_to_error::deserialize(de).map_err(|e| ConfigError::Schema {
            path: e.path().to_string(),
            message: e.inner().message().to_string(),
        })
    }

    /// Reads `path`, applies a seed override, then validates.
    pub fn load(path: &Path, seed: Option<u64>) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let mut cfg = Self::parse(&text)?;
        if seed.is_some() {
            cfg.seed = seed;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Whether any stage draws random samples.
    pub fn sampling_enabled(&self) -> bool {
        self.product.as_ref().is_some_and(|p| p.samples.is_some())
            || self
                .hierarchy
                .as_ref()
                .is_some_and(|h| h.sample_budget.is_some())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.sampling_enabled() && self.seed.is_none() {
            return Err(ConfigError::invalid(
                "seed",
                "required when sampling is enabled",
            ));
        }
        if let Some(h) = &self.horizons {
            let named = [
                ("horizons.max_len", Some(h.max_len)),
                ("horizons.depth", Some(h.depth)),
                ("horizons.recurrence", h.recurrence),
                ("horizons.p_max", h.p_max),
                ("horizons.aperiodicity_len", h.aperiodicity_len),
            ];
            for (field, v) in named {
                if v == Some(0) {
                    return Err(ConfigError::invalid(field, "must be positive"));
                }
            }
        }
        let caps = [
            ("caps.budget", self.caps.budget),
            ("caps.enumeration_cap", self.caps.enumeration_cap),
            ("caps.marker_cap", self.caps.marker_cap),
            (
                "product.samples",
                self.product.as_ref().and_then(|p| p.samples),
            ),
            (
                "hierarchy.sample_budget",
                self.hierarchy.as_ref().and_then(|h| h.sample_budget),
            ),
        ];
        for (field, v) in caps {
            if v == Some(0) {
                return Err(ConfigError::invalid(field, "must be positive"));
            }
        }
        if let Some(s) = &self.system {
            s.validate("system")?;
        }
        if let Some(s) = &self.second {
            s.validate("second")?;
        }
        let require = |present: bool, field: &str| {
            if present {
                Ok(())
            } else {
                Err(ConfigError::invalid(
                    field,
                    format!("required for scenario {:?}", self.kind),
                ))
            }
        };
        match self.kind {
            ScenarioKind::SadicEmbedding | ScenarioKind::OracleCompare => {
                require(self.system.is_some(), "system")?;
                require(self.horizons.is_some(), "horizons")?;
            }
            ScenarioKind::BlockHierarchy => {
                require(self.system.is_some(), "system")?;
                let h = self.hierarchy.as_ref().ok_or_else(|| {
                    ConfigError::invalid("hierarchy", "required for scenario BlockHierarchy")
                })?;
                if h.levels == 0 {
                    return Err(ConfigError::invalid("hierarchy.levels", "must be positive"));
                }
                if h.metric == MetricConfig::Tower {
                    require(self.tower.is_some(), "tower")?;
                }
            }
            ScenarioKind::ProductNormalizer => {
                require(self.system.is_some(), "system")?;
                require(self.product.is_some(), "product")?;
            }
            ScenarioKind::Profinite => {
                if self.system.is_none() && self.tower.is_none() {
                    return Err(ConfigError::invalid(
                        "tower",
                        "profinite needs `tower` or `system`",
                    ));
                }
            }
            ScenarioKind::DirectProduct => {
                require(self.system.is_some(), "system")?;
                require(self.second.is_some(), "second")?;
            }
        }
        if let Some(t) = &self.tower {
            if t.moduli.is_empty() {
                return Err(ConfigError::invalid("tower.moduli", "must not be empty"));
            }
            if t.depth == Some(0) {
                return Err(ConfigError::invalid("tower.depth", "must be positive"));
            }
        }
        Ok(())
    }
}

impl SystemConfig {
    pub fn validate(&self, prefix: &str) -> Result<(), ConfigError> {
        match (&self.group, &self.group_table) {
            (Some(_), Some(_)) => Err(ConfigError::invalid(
                format!("{prefix}.group_table"),
                "give either `group` or `group_table`",
            )),
            (None, None) => Err(ConfigError::invalid(
                format!("{prefix}.group"),
                "missing group",
            )),
            _ => Ok(()),
        }?;
        if self.automorphisms.is_some() && self.automorphisms_file.is_some() {
            return Err(ConfigError::invalid(
                format!("{prefix}.automorphisms_file"),
                "give either `automorphisms` or `automorphisms_file`",
            ));
        }
        if let Some(AutomorphismSource::Preset(p)) = &self.automorphisms {
            if p != "right-translations" && p != "identity" {
                return Err(ConfigError::invalid(
                    format!("{prefix}.automorphisms"),
                    format!("unknown preset `{p}` (expected right-translations or identity)"),
                ));
            }
        }
        if let Some(s) = &self.schedule {
            if s.is_empty() {
                return Err(ConfigError::invalid(
                    format!("{prefix}.schedule"),
                    "must not be empty",
                ));
            }
        }
        Ok(())
    }
}
