//! Name and value tests used by the rules. Name tests work on tokens: a name
//! is split at non-alphanumeric characters and at case changes, then
//! lowercased, so `db_password`, `dbPassword` and `DB-PASSWORD` all contain
//! the token `password`.

use std::sync::LazyLock;

use regex::Regex;

use super::config::Matchers;

pub fn tokens(name: &str) -> Vec<String> {
    let chars: Vec<char> = name.chars().collect();
    let mut out = Vec::new();
    let mut current = String::new();
    for (i, &c) in chars.iter().enumerate() {
        if !c.is_alphanumeric() {
            if !current.is_empty() {
                out.push(std::mem::take(&mut current));
            }
            continue;
        }
        if let Some(&prev) = i.checked_sub(1).and_then(|j| chars.get(j)) {
            let lower_to_upper = (prev.is_lowercase() || prev.is_ascii_digit()) && c.is_uppercase();
            let acronym_end = prev.is_uppercase()
                && c.is_uppercase()
                && chars.get(i + 1).is_some_and(|n| n.is_lowercase());
            if (lower_to_upper || acronym_end) && !current.is_empty() {
                out.push(std::mem::take(&mut current));
            }
        }
        current.extend(c.to_lowercase());
    }
    if !current.is_empty() {
        out.push(current);
    }
    out
}

fn has_token(name: &str, wanted: &[&str]) -> bool {
    tokens(name).iter().any(|t| wanted.contains(&t.as_str()))
}

static USER: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"(?i)(^user|user$)").unwrap());
static CAMEL: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^[a-z][a-zA-Z0-9]*$").unwrap());
static SNAKE: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^[a-z0-9]+(_[a-z0-9]+)*$").unwrap());
static DASH: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^[a-z0-9]+(-[a-z0-9]+)*$").unwrap());
static TYPE_SEGMENT: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^[A-Za-z0-9_]+$").unwrap());
static PASCAL: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^[A-Z][A-Za-z0-9]*$").unwrap());
static URL: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"^([A-Za-z][A-Za-z0-9+.-]*)://").unwrap());

pub const USER_PATTERN: &str = "^user|user$";
pub const ADMIN_VALUES: [&str; 2] = ["admin", "root"];

pub fn is_user(name: &str) -> bool {
    USER.is_match(name)
}

pub fn is_admin_value(value: &str) -> bool {
    ADMIN_VALUES.contains(&value.to_lowercase().as_str())
}

pub fn is_password(name: &str) -> bool {
    has_token(name, &["password", "passwd", "pwd"])
}

pub fn is_secret_key(name: &str) -> bool {
    let toks = tokens(name);
    toks.iter().any(|t| t == "secret" || t == "token") || toks.last().is_some_and(|t| t == "key")
}

pub fn is_empty(value: &str) -> bool {
    value.trim().is_empty()
}

pub fn is_ip_name(name: &str) -> bool {
    has_token(name, &["ip", "address", "bind"])
}

pub const WILDCARD_BINDS: [&str; 4] = ["0.0.0.0", "::", "0.0.0.0/0", "::/0"];

pub fn is_invalid_bind(value: &str) -> bool {
    WILDCARD_BINDS.contains(&value.trim())
}

/// The scheme of `scheme://...`, lowercased.
pub fn url_scheme(value: &str) -> Option<String> {
    URL.captures(value.trim()).map(|c| c[1].to_lowercase())
}

pub fn is_url(value: &str) -> bool {
    url_scheme(value).is_some()
}

pub fn is_insecure_url(value: &str, m: &Matchers) -> bool {
    url_scheme(value).is_some_and(|s| m.schemes.contains(&s))
}

/// The first configured algorithm named in `value`. A `des` preceded by `3`
/// or `3-` is triple DES and is not reported.
pub fn weak_algorithm(value: &str, m: &Matchers) -> Option<String> {
    let re = m.weak.as_ref()?;
    re.find_iter(value)
        .find(|hit| {
            let before = &value[..hit.start()];
            let triple = hit.as_str().eq_ignore_ascii_case("des")
                && (before.ends_with('3') || before.ends_with("3-"));
            !triple
        })
        .map(|hit| hit.as_str().to_string())
}

pub fn has_weak_algo(value: &str, m: &Matchers) -> bool {
    weak_algorithm(value, m).is_some()
}

pub fn is_key_size_name(name: &str) -> bool {
    let toks = tokens(name);
    toks.iter().any(|t| t == "key")
        && toks
            .iter()
            .any(|t| matches!(t.as_str(), "size" | "length" | "bits"))
}

pub fn insufficient_key_size(value: &str, threshold: u32) -> bool {
    value
        .trim()
        .parse::<i64>()
        .is_ok_and(|bits| bits < i64::from(threshold))
}

pub fn is_port_name(name: &str) -> bool {
    has_token(name, &["port"])
}

/// Integers outside 0..=65535 and anything that is not an integer.
pub fn out_of_range_port(value: &str) -> bool {
    match value.trim().parse::<i64>() {
        Ok(port) => !(0..=65535).contains(&port),
        Err(_) => true,
    }
}

/// The first configured keyword found as a whole word.
pub fn suspicious_keyword(text: &str, m: &Matchers) -> Option<String> {
    m.suspicious
        .as_ref()?
        .find(text)
        .map(|hit| hit.as_str().to_lowercase())
}

pub fn is_suspicious(text: &str, m: &Matchers) -> bool {
    suspicious_keyword(text, m).is_some()
}

pub fn is_camel(name: &str) -> bool {
    CAMEL.is_match(name)
}

pub fn is_snake(name: &str) -> bool {
    SNAKE.is_match(name)
}

pub fn is_dash(name: &str) -> bool {
    DASH.is_match(name)
}

/// Dotted type names: non-empty word segments, the last one PascalCase.
pub fn is_type_name(name: &str) -> bool {
    let segments: Vec<&str> = name.split('.').collect();
    segments.iter().all(|s| TYPE_SEGMENT.is_match(s))
        && segments.last().is_some_and(|s| PASCAL.is_match(s))
}

/// `hu… (7 chars)`: at most two leading characters, never more than half.
pub fn redact(value: &str) -> String {
    let n = value.chars().count();
    let prefix: String = value.chars().take((n / 2).min(2)).collect();
    format!("{prefix}… ({n} chars)")
}
