use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use regex::Regex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::RuleId;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    Camel,
    Snake,
    Dash,
    #[default]
    Auto,
}

impl Convention {
    pub fn as_str(self) -> &'static str {
        match self {
            Convention::Camel => "camel",
            Convention::Snake => "snake",
            Convention::Dash => "dash",
            Convention::Auto => "auto",
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Convention {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "camel" => Ok(Convention::Camel),
            "snake" => Ok(Convention::Snake),
            "dash" => Ok(Convention::Dash),
            "auto" => Ok(Convention::Auto),
            other => Err(ConfigError::UnknownConvention(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("unknown rule id `{0}`")]
    UnknownRule(String),
    #[error("unknown naming convention `{0}` (expected camel, snake, dash or auto)")]
    UnknownConvention(String),
    #[error("minimum key size must be positive")]
    ZeroKeySize,
    #[error("`{0}` is enabled but its {1} list is empty")]
    EmptyList(RuleId, &'static str),
    #[error("empty entry in the {0} list")]
    EmptyEntry(&'static str),
    #[error("invalid weak-algorithm pattern: {0}")]
    BadPattern(String),
}

pub const DEFAULT_MIN_KEY_SIZE: u32 = 2048;
pub const DEFAULT_SUSPICIOUS_KEYWORDS: [&str; 10] = [
    "todo",
    "fixme",
    "hack",
    "xxx",
    "bug",
    "broken",
    "workaround",
    "secret",
    "password",
    "credential",
];
pub const DEFAULT_INSECURE_SCHEMES: [&str; 3] = ["http", "ftp", "telnet"];
pub const DEFAULT_WEAK_ALGORITHMS: [&str; 5] = ["md5", "sha1", "sha-1", "rc4", "des"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleConfig {
    pub enabled: BTreeSet<RuleId>,
    pub convention: Convention,
    pub min_key_size_bits: u32,
    /// Matched as whole words, case-insensitively.
    pub suspicious_keywords: BTreeSet<String>,
    pub insecure_schemes: BTreeSet<String>,
    /// Regex fragments, matched at word boundaries.
    pub weak_algorithms: Vec<String>,
    pub redact_secrets: bool,
}

impl Default for RuleConfig {
    fn default() -> Self {
        RuleConfig {
            enabled: RuleId::ALL.into_iter().collect(),
            convention: Convention::Auto,
            min_key_size_bits: DEFAULT_MIN_KEY_SIZE,
            suspicious_keywords: DEFAULT_SUSPICIOUS_KEYWORDS.map(String::from).into(),
            insecure_schemes: DEFAULT_INSECURE_SCHEMES.map(String::from).into(),
            weak_algorithms: DEFAULT_WEAK_ALGORITHMS.map(String::from).into(),
            redact_secrets: true,
        }
    }
}

/// Compiled form of the list-valued settings.
#[derive(Clone, Debug)]
pub struct Matchers {
    pub(crate) suspicious: Option<Regex>,
    pub(crate) weak: Option<Regex>,
    pub(crate) schemes: BTreeSet<String>,
}

impl RuleConfig {
    pub fn is_enabled(&self, rule: RuleId) -> bool {
        self.enabled.contains(&rule)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.compile().map(drop)
    }

    pub fn compile(&self) -> Result<Matchers, ConfigError> {
        if self.min_key_size_bits == 0 {
            return Err(ConfigError::ZeroKeySize);
        }
        let lists: [(RuleId, &'static str, Vec<&String>); 3] = [
            (
                RuleId::SuspiciousComment,
                "suspicious keyword",
                self.suspicious_keywords.iter().collect(),
            ),
            (
                RuleId::InsecureCommunication,
                "insecure scheme",
                self.insecure_schemes.iter().collect(),
            ),
            (
                RuleId::WeakCryptoAlgorithm,
                "weak algorithm",
                self.weak_algorithms.iter().collect(),
            ),
        ];
        for (rule, what, items) in &lists {
            if items.iter().any(|s| s.trim().is_empty()) {
                return Err(ConfigError::EmptyEntry(what));
            }
            if items.is_empty() && self.is_enabled(*rule) {
                return Err(ConfigError::EmptyList(*rule, what));
            }
        }

        let suspicious = (!self.suspicious_keywords.is_empty()).then(|| {
            let alts: Vec<String> = self
                .suspicious_keywords
                .iter()
                .map(|k| regex::escape(&k.to_lowercase()))
                .collect();
            Regex::new(&format!(r"(?i)\b(?:{})\b", alts.join("|"))).expect("escaped keywords")
        });
        let weak = if self.weak_algorithms.is_empty() {
            None
        } else {
            let alts: Vec<String> = self
                .weak_algorithms
                .iter()
                .map(|a| format!("(?:{a})"))
                .collect();
            let re = Regex::new(&format!(r"(?i)\b(?:{})\b", alts.join("|")))
                .map_err(|e| ConfigError::BadPattern(e.to_string()))?;
            Some(re)
        };
        Ok(Matchers {
            suspicious,
            weak,
            schemes: self
                .insecure_schemes
                .iter()
                .map(|s| s.to_lowercase())
                .collect(),
        })
    }
}

/// Settings given as strings, the way both the command line and the HTTP
/// query string carry them. Lists are comma-separated; absent fields keep
/// their defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(default)]
pub struct ConfigOverrides {
    /// Replaces the enabled set. An empty string enables nothing.
    pub enable: Option<String>,
    /// Removed from the enabled set after `enable` is applied.
    pub disable: Option<String>,
    pub convention: Option<String>,
    pub min_key_size: Option<u32>,
    pub suspicious_keywords: Option<String>,
    pub insecure_schemes: Option<String>,
    pub weak_algorithms: Option<String>,
    pub no_redact: bool,
}

fn split_list(list: &str, what: &'static str) -> Result<Vec<String>, ConfigError> {
    if list.trim().is_empty() {
        return Ok(Vec::new());
    }
    list.split(',')
        .map(|s| match s.trim() {
            "" => Err(ConfigError::EmptyEntry(what)),
            t => Ok(t.to_string()),
        })
        .collect()
}

fn rule_set(list: &str) -> Result<BTreeSet<RuleId>, ConfigError> {
    split_list(list, "rule")?
        .iter()
        .map(|s| s.parse())
        .collect()
}

impl ConfigOverrides {
    pub fn to_config(&self) -> Result<RuleConfig, ConfigError> {
        let mut c = RuleConfig::default();
        if let Some(list) = &self.enable {
            c.enabled = rule_set(list)?;
        }
        if let Some(list) = &self.disable {
            for r in rule_set(list)? {
                c.enabled.remove(&r);
            }
        }
        if let Some(conv) = &self.convention {
            c.convention = conv.parse()?;
        }
        if let Some(bits) = self.min_key_size {
            c.min_key_size_bits = bits;
        }
        if let Some(list) = &self.suspicious_keywords {
            c.suspicious_keywords = split_list(list, "suspicious keyword")?
                .into_iter()
                .collect();
        }
        if let Some(list) = &self.insecure_schemes {
            c.insecure_schemes = split_list(list, "insecure scheme")?.into_iter().collect();
        }
        if let Some(list) = &self.weak_algorithms {
            c.weak_algorithms = split_list(list, "weak algorithm")?;
        }
        c.redact_secrets = !self.no_redact;
        c.validate()?;
        Ok(c)
    }
}
