//! The ten smell rules. Value rules read the graph through two queries, one
//! per tier; comment, description and naming rules read the side lists in
//! [`ScanContext`].

mod config;
mod context;
pub mod predicates;
pub mod queries;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use percent_encoding::percent_decode_str;
use serde::{Deserialize, Serialize};

use crate::graph::{Datatype, Iri, Literal};
use crate::query::{Filter, Query};

pub use config::{
    ConfigError, ConfigOverrides, Convention, Matchers, RuleConfig, DEFAULT_INSECURE_SCHEMES,
    DEFAULT_MIN_KEY_SIZE, DEFAULT_SUSPICIOUS_KEYWORDS, DEFAULT_WEAK_ALGORITHMS,
};
pub use context::{NameEntry, NameRole, ScanContext, TextEntry};

use predicates as p;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleId {
    AdminByDefault,
    EmptyPassword,
    HardCodedSecret,
    SuspiciousComment,
    UnrestrictedIp,
    InsecureCommunication,
    WeakCryptoAlgorithm,
    InsufficientKeySize,
    InconsistentNaming,
    InvalidPort,
}

impl RuleId {
    pub const ALL: [RuleId; 10] = [
        RuleId::AdminByDefault,
        RuleId::EmptyPassword,
        RuleId::HardCodedSecret,
        RuleId::SuspiciousComment,
        RuleId::UnrestrictedIp,
        RuleId::InsecureCommunication,
        RuleId::WeakCryptoAlgorithm,
        RuleId::InsufficientKeySize,
        RuleId::InconsistentNaming,
        RuleId::InvalidPort,
    ];

    pub fn id(self) -> &'static str {
        match self {
            RuleId::AdminByDefault => "admin-by-default",
            RuleId::EmptyPassword => "empty-password",
            RuleId::HardCodedSecret => "hard-coded-secret",
            RuleId::SuspiciousComment => "suspicious-comment",
            RuleId::UnrestrictedIp => "unrestricted-ip",
            RuleId::InsecureCommunication => "insecure-communication",
            RuleId::WeakCryptoAlgorithm => "weak-crypto-algorithm",
            RuleId::InsufficientKeySize => "insufficient-key-size",
            RuleId::InconsistentNaming => "inconsistent-naming",
            RuleId::InvalidPort => "invalid-port",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            RuleId::AdminByDefault => {
                "A user-name property or attribute defaults to an administrative account (admin or root)."
            }
            RuleId::EmptyPassword => "A password property or attribute is set to an empty string.",
            RuleId::HardCodedSecret => {
                "A user name, password, or secret key is given a literal value instead of an input or function."
            }
            RuleId::SuspiciousComment => {
                "A comment or description mentions pending work, defects, or secrets."
            }
            RuleId::UnrestrictedIp => "An address property binds to all interfaces (0.0.0.0 or ::).",
            RuleId::InsecureCommunication => {
                "A URL value uses a plaintext protocol such as http or ftp."
            }
            RuleId::WeakCryptoAlgorithm => {
                "A value names a broken cryptographic algorithm such as MD5 or SHA-1."
            }
            RuleId::InsufficientKeySize => {
                "A cryptographic key size is below the configured minimum (2048 bits by default)."
            }
            RuleId::InconsistentNaming => {
                "A name does not follow the naming convention used by the rest of the model."
            }
            RuleId::InvalidPort => "A port value is not an integer between 0 and 65535.",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for RuleId {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleId::ALL
            .into_iter()
            .find(|r| r.id() == s)
            .ok_or_else(|| ConfigError::UnknownRule(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ElementKind {
    NodeTypeDefault,
    TemplateProperty,
    TemplateAttribute,
    Comment,
    Name,
    Description,
}

/// What a finding is about: `owner` is the enclosing type or template (empty
/// at document level), `item` the property, attribute or name.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ElementRef {
    pub kind: ElementKind,
    pub owner: String,
    pub item: String,
}

impl ElementRef {
    pub fn new(kind: ElementKind, owner: &str, item: &str) -> Self {
        ElementRef {
            kind,
            owner: owner.to_string(),
            item: item.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Location {
    pub file: String,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmellOccurrence {
    pub rule: RuleId,
    pub element: ElementRef,
    pub value_excerpt: String,
    pub message: String,
    pub location: Option<Location>,
    /// The graph node the finding was read from. Not part of the report.
    #[serde(skip)]
    pub graph_subject: Option<Iri>,
}

impl SmellOccurrence {
    fn sort_key(&self) -> (Option<(&str, usize)>, RuleId, &ElementRef) {
        (
            self.location.as_ref().map(|l| (l.file.as_str(), l.line)),
            self.rule,
            &self.element,
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tier {
    /// Type definitions and their defaults.
    Type,
    /// Template assignments.
    Template,
}

/// One literal read from the graph for a property or attribute.
#[derive(Clone, Debug)]
struct Fact {
    subject: Iri,
    name: String,
    value: Literal,
    tier: Tier,
}

fn evaluate(ctx: &ScanContext, query: Query) -> Vec<Vec<Option<crate::graph::Term>>> {
    // the rule queries are constants covered by `queries::tests`
    query
        .evaluate(&ctx.graph)
        .expect("rule query is valid")
        .rows()
        .to_vec()
}

fn facts(ctx: &ScanContext, name_filter: Option<Filter>) -> Vec<Fact> {
    let mut out = Vec::new();
    for (tier, mut query) in [
        (Tier::Type, queries::tier1_values()),
        (Tier::Template, queries::tier2_values()),
    ] {
        if let Some(f) = &name_filter {
            query = query.filter(f.clone());
        }
        for row in evaluate(ctx, query) {
            let (Some(subject), Some(def), Some(value)) = (
                row[0].as_ref().and_then(|t| t.as_iri()),
                row[1].as_ref().and_then(|t| t.as_iri()),
                row[2].as_ref().and_then(|t| t.as_literal()),
            ) else {
                continue;
            };
            let name = match ctx.elements.get(subject) {
                Some(m) => m.element.item.clone(),
                None => percent_decode_str(def.local_name())
                    .decode_utf8_lossy()
                    .into_owned(),
            };
            out.push(Fact {
                subject: subject.clone(),
                name,
                value: value.clone(),
                tier,
            });
        }
    }
    out
}

fn is_variable(ctx: &ScanContext, subject: &Iri) -> bool {
    let subject = crate::graph::Term::Iri(subject.clone());
    !ctx.graph
        .triples_matching(
            Some(&subject),
            Some(&crate::mapper::vocab().has_variable_value),
            None,
        )
        .is_empty()
}

fn location(ctx: &ScanContext, line: usize) -> Option<Location> {
    (line > 0).then(|| Location {
        file: ctx.file.clone(),
        line,
    })
}

/// Turns matching facts into occurrences, one per element.
fn value_rule(
    ctx: &ScanContext,
    rule: RuleId,
    name_filter: Option<Filter>,
    check: impl Fn(&Fact) -> Option<(String, String)>,
) -> Vec<SmellOccurrence> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for fact in facts(ctx, name_filter) {
        let Some((excerpt, message)) = check(&fact) else {
            continue;
        };
        let (element, line) = match ctx.elements.get(&fact.subject) {
            Some(m) => (m.element.clone(), m.line),
            None => {
                let kind = match fact.tier {
                    Tier::Type => ElementKind::NodeTypeDefault,
                    Tier::Template => ElementKind::TemplateProperty,
                };
                (ElementRef::new(kind, "", &fact.name), 0)
            }
        };
        if !seen.insert(element.clone()) {
            continue;
        }
        out.push(SmellOccurrence {
            rule,
            element,
            value_excerpt: excerpt,
            message,
            location: location(ctx, line),
            graph_subject: Some(fact.subject),
        });
    }
    out
}

fn verb(tier: Tier) -> &'static str {
    match tier {
        Tier::Type => "defaults to",
        Tier::Template => "is set to",
    }
}

fn secret_excerpt(ctx: &ScanContext, value: &str) -> String {
    if ctx.config.redact_secrets {
        p::redact(value)
    } else {
        value.to_string()
    }
}

fn is_string(value: &Literal) -> bool {
    value.datatype() == Datatype::String
}

pub fn detect_admin_by_default(ctx: &ScanContext) -> Vec<SmellOccurrence> {
    let filter = Filter::local_name_regex("def", p::USER_PATTERN, "i");
    value_rule(ctx, RuleId::AdminByDefault, Some(filter), |f| {
        let v = f.value.lexical();
        (p::is_user(&f.name) && p::is_admin_value(v)).then(|| {
            (
                v.to_string(),
                format!("`{}` {} administrative account `{v}`", f.name, verb(f.tier)),
            )
        })
    })
}

pub fn detect_empty_password(ctx: &ScanContext) -> Vec<SmellOccurrence> {
    value_rule(ctx, RuleId::EmptyPassword, None, |f| {
        let v = f.value.lexical();
        (p::is_password(&f.name) && is_string(&f.value) && p::is_empty(v)).then(|| {
            (
                secret_excerpt(ctx, v),
                format!("password `{}` {} an empty string", f.name, verb(f.tier)),
            )
        })
    })
}

pub fn detect_hard_coded_secret(ctx: &ScanContext) -> Vec<SmellOccurrence> {
    value_rule(ctx, RuleId::HardCodedSecret, None, |f| {
        let name = &f.name;
        if !(p::is_password(name) || p::is_user(name) || p::is_secret_key(name)) {
            return None;
        }
        let v = f.value.lexical();
        let hard_coded = match f.tier {
            Tier::Type => !p::is_empty(v),
            Tier::Template => !p::is_empty(v) && !is_variable(ctx, &f.subject),
        };
        hard_coded.then(|| {
            (
                secret_excerpt(ctx, v),
                format!(
                    "`{name}` {} a literal value instead of an input",
                    verb(f.tier)
                ),
            )
        })
    })
}

pub fn detect_suspicious_comment(ctx: &ScanContext) -> Vec<SmellOccurrence> {
    let mut out = Vec::new();
    for c in &ctx.comments {
        if let Some(kw) = p::suspicious_keyword(&c.text, &ctx.matchers) {
            out.push(SmellOccurrence {
                rule: RuleId::SuspiciousComment,
                element: ElementRef::new(
                    ElementKind::Comment,
                    "",
                    &format!("{}:{}", c.line, c.column),
                ),
                value_excerpt: c.text.trim().to_string(),
                message: format!("comment mentions `{kw}`"),
                location: location(ctx, c.line),
                graph_subject: None,
            });
        }
    }
    let mut seen = BTreeSet::new();
    for d in &ctx.descriptions {
        if let Some(kw) = p::suspicious_keyword(&d.text, &ctx.matchers) {
            if !seen.insert(d.element.clone()) {
                continue;
            }
            out.push(SmellOccurrence {
                rule: RuleId::SuspiciousComment,
                element: d.element.clone(),
                value_excerpt: d.text.trim().to_string(),
                message: format!("description mentions `{kw}`"),
                location: location(ctx, d.line),
                graph_subject: None,
            });
        }
    }
    out
}

pub fn detect_unrestricted_ip(ctx: &ScanContext) -> Vec<SmellOccurrence> {
    value_rule(ctx, RuleId::UnrestrictedIp, None, |f| {
        let v = f.value.lexical();
        (p::is_ip_name(&f.name) && p::is_invalid_bind(v)).then(|| {
            (
                v.to_string(),
                format!(
                    "`{}` {} `{v}`, which binds to all interfaces",
                    f.name,
                    verb(f.tier)
                ),
            )
        })
    })
}

pub fn detect_insecure_communication(ctx: &ScanContext) -> Vec<SmellOccurrence> {
    value_rule(ctx, RuleId::InsecureCommunication, None, |f| {
        let v = f.value.lexical();
        if !(p::is_url(v) && p::is_insecure_url(v, &ctx.matchers)) {
            return None;
        }
        let scheme = p::url_scheme(v).unwrap_or_default();
        Some((
            v.to_string(),
            format!("`{}` uses the insecure `{scheme}` protocol", f.name),
        ))
    })
}

pub fn detect_weak_crypto(ctx: &ScanContext) -> Vec<SmellOccurrence> {
    value_rule(ctx, RuleId::WeakCryptoAlgorithm, None, |f| {
        let v = f.value.lexical();
        p::weak_algorithm(v, &ctx.matchers).map(|algo| {
            (
                v.to_string(),
                format!("`{}` names the weak algorithm `{algo}`", f.name),
            )
        })
    })
}

pub fn detect_insufficient_key_size(ctx: &ScanContext) -> Vec<SmellOccurrence> {
    let min = ctx.config.min_key_size_bits;
    value_rule(ctx, RuleId::InsufficientKeySize, None, |f| {
        let v = f.value.lexical();
        (p::is_key_size_name(&f.name) && p::insufficient_key_size(v, min)).then(|| {
            (
                v.to_string(),
                format!(
                    "`{}` {} {} bits, below the minimum of {min}",
                    f.name,
                    verb(f.tier),
                    v.trim()
                ),
            )
        })
    })
}

pub fn detect_invalid_port(ctx: &ScanContext) -> Vec<SmellOccurrence> {
    value_rule(ctx, RuleId::InvalidPort, None, |f| {
        let v = f.value.lexical();
        (p::is_port_name(&f.name) && p::out_of_range_port(v)).then(|| {
            (
                v.to_string(),
                format!(
                    "`{}` {} `{v}`, which is not a port between 0 and 65535",
                    f.name,
                    verb(f.tier)
                ),
            )
        })
    })
}

pub fn matches_convention(convention: Convention, name: &str) -> bool {
    match convention {
        Convention::Camel => p::is_camel(name),
        Convention::Snake => p::is_snake(name),
        Convention::Dash => p::is_dash(name),
        Convention::Auto => true,
    }
}

/// The convention most names follow. Ties go to snake, then dash, then camel.
pub fn dominant_convention<'a>(names: impl IntoIterator<Item = &'a str>) -> Convention {
    let names: Vec<&str> = names.into_iter().collect();
    let mut best = (Convention::Snake, 0usize);
    for c in [Convention::Snake, Convention::Dash, Convention::Camel] {
        let n = names.iter().filter(|n| matches_convention(c, n)).count();
        if n > best.1 {
            best = (c, n);
        }
    }
    best.0
}

fn convention_label(c: Convention) -> &'static str {
    match c {
        Convention::Camel => "camelCase",
        Convention::Snake => "snake_case",
        Convention::Dash => "dash-case",
        Convention::Auto => "auto",
    }
}

pub fn detect_inconsistent_naming(ctx: &ScanContext) -> Vec<SmellOccurrence> {
    let convention = match ctx.config.convention {
        Convention::Auto => dominant_convention(
            ctx.names
                .iter()
                .filter(|n| n.role == NameRole::Member)
                .map(|n| n.name.as_str()),
        ),
        explicit => explicit,
    };
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for entry in &ctx.names {
        let message = match entry.role {
            NameRole::Type if !p::is_type_name(&entry.name) => format!(
                "type name `{}` is not a dotted name ending in PascalCase",
                entry.name
            ),
            NameRole::Member if !matches_convention(convention, &entry.name) => format!(
                "`{}` does not follow the {} naming used in this model",
                entry.name,
                convention_label(convention)
            ),
            _ => continue,
        };
        if !seen.insert(entry.element.clone()) {
            continue;
        }
        out.push(SmellOccurrence {
            rule: RuleId::InconsistentNaming,
            element: entry.element.clone(),
            value_excerpt: entry.name.clone(),
            message,
            location: location(ctx, entry.line),
            graph_subject: None,
        });
    }
    out
}

pub fn detect(rule: RuleId, ctx: &ScanContext) -> Vec<SmellOccurrence> {
    match rule {
        RuleId::AdminByDefault => detect_admin_by_default(ctx),
        RuleId::EmptyPassword => detect_empty_password(ctx),
        RuleId::HardCodedSecret => detect_hard_coded_secret(ctx),
        RuleId::SuspiciousComment => detect_suspicious_comment(ctx),
        RuleId::UnrestrictedIp => detect_unrestricted_ip(ctx),
        RuleId::InsecureCommunication => detect_insecure_communication(ctx),
        RuleId::WeakCryptoAlgorithm => detect_weak_crypto(ctx),
        RuleId::InsufficientKeySize => detect_insufficient_key_size(ctx),
        RuleId::InconsistentNaming => detect_inconsistent_naming(ctx),
        RuleId::InvalidPort => detect_invalid_port(ctx),
    }
}

/// Every enabled rule, ordered by location, rule, then element.
pub fn run_all(ctx: &ScanContext) -> Vec<SmellOccurrence> {
    let mut out: Vec<SmellOccurrence> = RuleId::ALL
        .into_iter()
        .filter(|r| ctx.config.is_enabled(*r))
        .flat_map(|r| detect(r, ctx))
        .collect();
    out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    out
}
