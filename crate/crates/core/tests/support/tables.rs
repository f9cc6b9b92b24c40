//! Truth tables for the rule predicates, each paired with a reference
//! implementation that shares no code with the crate.

use std::sync::LazyLock;

use regex::Regex;
use toscasmell_core::rules::predicates as p;
use toscasmell_core::rules::{Matchers, RuleConfig};

static DEFAULTS: LazyLock<Matchers> = LazyLock::new(|| RuleConfig::default().compile().unwrap());

pub struct Table {
    pub name: &'static str,
    pub rows: &'static [(&'static str, bool)],
    pub subject: fn(&str) -> bool,
    pub oracle: fn(&str) -> bool,
}

/// Inserts separators at case humps, splits on anything that is not a
/// letter or digit, then lowercases each piece.
fn oracle_tokens(name: &str) -> Vec<String> {
    static HUMP: LazyLock<Regex> =
        LazyLock::new(|| Regex::new(r"([\p{Lowercase}0-9])(\p{Uppercase})").unwrap());
    static ACRONYM: LazyLock<Regex> =
        LazyLock::new(|| Regex::new(r"(\p{Uppercase})(\p{Uppercase}\p{Lowercase})").unwrap());
    let spaced = HUMP.replace_all(name, "${1}_${2}");
    let spaced = ACRONYM.replace_all(&spaced, "${1}_${2}");
    spaced
        .split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(|t| t.chars().flat_map(char::to_lowercase).collect())
        .collect()
}

fn has(name: &str, wanted: &[&str]) -> bool {
    oracle_tokens(name)
        .iter()
        .any(|t| wanted.contains(&t.as_str()))
}

fn is_word(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

/// Offsets of `needle` in `hay` (both lowercase) with word boundaries on
/// both sides.
fn word_hits(hay: &str, needle: &str) -> Vec<usize> {
    let mut out = Vec::new();
    let mut from = 0;
    while let Some(i) = hay[from..].find(needle) {
        let start = from + i;
        let end = start + needle.len();
        let before_ok = hay[..start].chars().next_back().is_none_or(|c| !is_word(c));
        let after_ok = hay[end..].chars().next().is_none_or(|c| !is_word(c));
        if before_ok && after_ok {
            out.push(start);
        }
        from = start + needle.chars().next().map_or(1, char::len_utf8);
    }
    out
}

fn o_user(s: &str) -> bool {
    let l = s.to_lowercase();
    l.starts_with("user") || l.ends_with("user")
}

fn o_admin(s: &str) -> bool {
    let l = s.to_lowercase();
    l == "admin" || l == "root"
}

fn o_password(s: &str) -> bool {
    has(s, &["password", "passwd", "pwd"])
}

fn o_secret_key(s: &str) -> bool {
    let t = oracle_tokens(s);
    t.iter().any(|x| x == "secret" || x == "token") || t.last().map(String::as_str) == Some("key")
}

fn o_empty(s: &str) -> bool {
    s.chars().all(char::is_whitespace)
}

fn o_ip_name(s: &str) -> bool {
    has(s, &["ip", "address", "bind"])
}

fn o_bind(s: &str) -> bool {
    let t = s.trim();
    t == "0.0.0.0" || t == "::" || t == "0.0.0.0/0" || t == "::/0"
}

fn o_scheme(s: &str) -> Option<String> {
    let t = s.trim();
    let (scheme, _) = t.split_once("://")?;
    let mut chars = scheme.chars();
    let first = chars.next()?;
    (first.is_ascii_alphabetic()
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '+' || c == '.' || c == '-'))
    .then(|| scheme.to_lowercase())
}

fn o_url(s: &str) -> bool {
    o_scheme(s).is_some()
}

fn o_insecure(s: &str) -> bool {
    o_scheme(s).is_some_and(|x| ["http", "ftp", "telnet"].contains(&x.as_str()))
}

fn o_weak(s: &str) -> bool {
    let l = s.to_lowercase();
    ["md5", "sha1", "sha-1", "rc4", "des"].iter().any(|alg| {
        word_hits(&l, alg).into_iter().any(|at| {
            let before = &l[..at];
            !(*alg == "des" && (before.ends_with('3') || before.ends_with("3-")))
        })
    })
}

fn o_key_size_name(s: &str) -> bool {
    let t = oracle_tokens(s);
    t.iter().any(|x| x == "key")
        && t.iter()
            .any(|x| x == "size" || x == "length" || x == "bits")
}

fn o_small_key(s: &str) -> bool {
    s.trim().parse::<i128>().is_ok_and(|v| v < 2048)
}

fn o_port_name(s: &str) -> bool {
    has(s, &["port"])
}

fn o_bad_port(s: &str) -> bool {
    s.trim()
        .parse::<i128>()
        .map_or(true, |v| !(0..=65535).contains(&v))
}

fn o_suspicious(s: &str) -> bool {
    let l = s.to_lowercase();
    [
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
    ]
    .iter()
    .any(|k| !word_hits(&l, k).is_empty())
}

fn o_camel(s: &str) -> bool {
    let mut c = s.chars();
    c.next().is_some_and(|f| f.is_ascii_lowercase()) && c.all(|x| x.is_ascii_alphanumeric())
}

fn delimited(s: &str, sep: char) -> bool {
    s.split(sep).all(|part| {
        !part.is_empty()
            && part
                .chars()
                .all(|c| c.is_ascii_lowercase() || c.is_ascii_digit())
    })
}

fn o_snake(s: &str) -> bool {
    delimited(s, '_')
}

fn o_dash(s: &str) -> bool {
    delimited(s, '-')
}

fn o_type(s: &str) -> bool {
    let segs: Vec<&str> = s.split('.').collect();
    let words = segs
        .iter()
        .all(|x| !x.is_empty() && x.chars().all(|c| c.is_ascii_alphanumeric() || c == '_'));
    let last = segs.last().unwrap();
    let mut lc = last.chars();
    words
        && lc.next().is_some_and(|c| c.is_ascii_uppercase())
        && lc.all(|c| c.is_ascii_alphanumeric())
}

pub fn tables() -> Vec<Table> {
    vec![
        Table {
            name: "is_user",
            rows: &[
                ("user_name", true),
                ("username", true),
                ("admin_user", true),
                ("USER", true),
                ("User_Id", true),
                ("superuser", true),
                ("users", true),
                ("db_name", false),
                ("usher", false),
                ("ownership", false),
                ("", false),
                ("useless", false),
            ],
            subject: p::is_user,
            oracle: o_user,
        },
        Table {
            name: "is_admin_value",
            rows: &[
                ("admin", true),
                ("root", true),
                ("ROOT", true),
                ("Admin", true),
                ("administrator", false),
                ("rooted", false),
                (" root", false),
                ("alice", false),
                ("", false),
                ("toor", false),
            ],
            subject: p::is_admin_value,
            oracle: o_admin,
        },
        Table {
            name: "is_password",
            rows: &[
                ("db_password", true),
                ("dbPassword", true),
                ("passwd", true),
                ("user_pwd", true),
                ("PASSWORD", true),
                ("admin-password", true),
                ("password_hint", true),
                ("passwords", false),
                ("passphrase", false),
                ("pw", false),
                ("pwdx", false),
                ("", false),
            ],
            subject: p::is_password,
            oracle: o_password,
        },
        Table {
            name: "is_secret_key",
            rows: &[
                ("api_key", true),
                ("secret", true),
                ("access_token", true),
                ("clientSecret", true),
                ("sshKey", true),
                ("KEY", true),
                ("token_count", true),
                ("key_size", false),
                ("keyboard", false),
                ("secrets", false),
                ("monkey", false),
                ("keys", false),
            ],
            subject: p::is_secret_key,
            oracle: o_secret_key,
        },
        Table {
            name: "is_empty",
            rows: &[
                ("", true),
                ("   ", true),
                ("\t\n", true),
                ("\u{a0}", true),
                ("a", false),
                (" a ", false),
                ("0", false),
                ("''", false),
                ("-", false),
                ("null", false),
            ],
            subject: p::is_empty,
            oracle: o_empty,
        },
        Table {
            name: "is_ip_name",
            rows: &[
                ("registry_ip", true),
                ("bind_address", true),
                ("listenIp", true),
                ("BIND", true),
                ("ip", true),
                ("bind_ip", true),
                ("ipv4", false),
                ("zip", false),
                ("ship_to", false),
                ("addresses", false),
                ("host_name", false),
            ],
            subject: p::is_ip_name,
            oracle: o_ip_name,
        },
        Table {
            name: "is_invalid_bind",
            rows: &[
                ("0.0.0.0", true),
                ("::", true),
                ("0.0.0.0/0", true),
                ("::/0", true),
                (" 0.0.0.0 ", true),
                ("127.0.0.1", false),
                ("10.0.0.5", false),
                ("::1", false),
                ("0.0.0.0/8", false),
                ("", false),
                ("localhost", false),
            ],
            subject: p::is_invalid_bind,
            oracle: o_bind,
        },
        Table {
            name: "is_url",
            rows: &[
                ("http://a", true),
                ("HTTPS://x", true),
                ("ftp://m", true),
                ("svn+ssh://h", true),
                ("mqtts://b:8883", true),
                ("www.example.com", false),
                ("http:/x", false),
                ("://x", false),
                ("1http://x", false),
                ("", false),
                ("mailto:x", false),
            ],
            subject: p::is_url,
            oracle: o_url,
        },
        Table {
            name: "is_insecure_url",
            rows: &[
                ("http://a", true),
                ("HTTP://A", true),
                ("ftp://m", true),
                ("telnet://h", true),
                ("https://a", false),
                ("sftp://m", false),
                ("ftps://x", false),
                ("http:/x", false),
                ("see http://x", false),
                ("", false),
                ("ws://x", false),
            ],
            subject: |s| p::is_insecure_url(s, &DEFAULTS),
            oracle: o_insecure,
        },
        Table {
            name: "has_weak_algo",
            rows: &[
                ("md5", true),
                ("MD5", true),
                ("sha1", true),
                ("SHA-1", true),
                ("rc4", true),
                ("des-cbc", true),
                ("hmac-md5", true),
                ("3des-cbc", false),
                ("3-des", false),
                ("sha256", false),
                ("md5sum", false),
                ("sha1024", false),
                ("aes-256", false),
                ("", false),
            ],
            subject: |s| p::has_weak_algo(s, &DEFAULTS),
            oracle: o_weak,
        },
        Table {
            name: "is_key_size_name",
            rows: &[
                ("key_size", true),
                ("keyLength", true),
                ("rsa_key_bits", true),
                ("KEY_SIZE", true),
                ("tls_key_size", true),
                ("key", false),
                ("size", false),
                ("keysize", false),
                ("key_sizes", false),
                ("api_key", false),
                ("bits", false),
            ],
            subject: p::is_key_size_name,
            oracle: o_key_size_name,
        },
        Table {
            name: "insufficient_key_size",
            rows: &[
                ("1045", true),
                ("1024", true),
                ("2047", true),
                ("-1", true),
                (" 512 ", true),
                ("0", true),
                ("2048", false),
                ("4096", false),
                ("abc", false),
                ("", false),
                ("2048.0", false),
            ],
            subject: |s| p::insufficient_key_size(s, 2048),
            oracle: o_small_key,
        },
        Table {
            name: "is_port_name",
            rows: &[
                ("port", true),
                ("http_port", true),
                ("brokerPort", true),
                ("PORT", true),
                ("port_number", true),
                ("ports", false),
                ("support", false),
                ("export", false),
                ("portal", false),
                ("", false),
                ("transport", false),
            ],
            subject: p::is_port_name,
            oracle: o_port_name,
        },
        Table {
            name: "out_of_range_port",
            rows: &[
                ("70000", true),
                ("65536", true),
                ("-1", true),
                ("eighty", true),
                ("", true),
                ("8080.5", true),
                ("99999999999999999999", true),
                ("65535", false),
                ("0", false),
                ("80", false),
                (" 8080 ", false),
            ],
            subject: p::out_of_range_port,
            oracle: o_bad_port,
        },
        Table {
            name: "is_suspicious",
            rows: &[
                ("TODO fix", true),
                (" todo", true),
                ("FIXME: x", true),
                ("known bug", true),
                ("secret rotation", true),
                ("xxx", true),
                ("substitution", false),
                ("debugging", false),
                ("deploys three replicas", false),
                ("passwords", false),
                ("hackathon", false),
                ("", false),
            ],
            subject: |s| p::is_suspicious(s, &DEFAULTS),
            oracle: o_suspicious,
        },
        Table {
            name: "is_camel",
            rows: &[
                ("userName", true),
                ("a", true),
                ("a1", true),
                ("httpPort", true),
                ("aB1", true),
                ("UserName", false),
                ("user_name", false),
                ("user-name", false),
                ("1abc", false),
                ("", false),
                ("a b", false),
            ],
            subject: p::is_camel,
            oracle: o_camel,
        },
        Table {
            name: "is_snake",
            rows: &[
                ("user_name", true),
                ("a", true),
                ("a1_b2", true),
                ("1", true),
                ("user__name", false),
                ("_a", false),
                ("a_", false),
                ("userName", false),
                ("user-name", false),
                ("", false),
                ("A_B", false),
            ],
            subject: p::is_snake,
            oracle: o_snake,
        },
        Table {
            name: "is_dash",
            rows: &[
                ("user-name", true),
                ("a", true),
                ("docker-host", true),
                ("a1-b2", true),
                ("a--b", false),
                ("-a", false),
                ("a-", false),
                ("a_b", false),
                ("Docker-Host", false),
                ("", false),
            ],
            subject: p::is_dash,
            oracle: o_dash,
        },
        Table {
            name: "is_type_name",
            rows: &[
                ("tosca.nodes.Compute", true),
                ("Compute", true),
                ("a.b.CamelCase", true),
                ("sodalite.nodes.DockerHost", true),
                ("x.Y1", true),
                ("tosca.nodes.compute", false),
                ("", false),
                ("a..B", false),
                (".A", false),
                ("A.", false),
                ("my-types.A", false),
                ("a.b_C", false),
            ],
            subject: p::is_type_name,
            oracle: o_type,
        },
    ]
}

/// Rows where the predicate or the oracle disagrees with the table.
pub fn table_failures(t: &Table) -> Vec<String> {
    t.rows
        .iter()
        .filter_map(|(input, want)| {
            let got = (t.subject)(input);
            let reference = (t.oracle)(input);
            (got != *want || reference != *want).then(|| {
                format!(
                    "{}({input:?}): expected {want}, predicate {got}, oracle {reference}",
                    t.name
                )
            })
        })
        .collect()
}
