use std::collections::BTreeMap;

use super::{GraphError, Iri};

pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const DUL: &str = "http://www.ontologydesignpatterns.org/ont/dul/DUL.owl#";
pub const TOSCA: &str = "https://w3id.org/toscasmell/tosca#";
pub const SODA: &str = "https://w3id.org/toscasmell/soda#";
/// Base for IRIs minted from user documents.
pub const EX: &str = "http://example.org/tosca/";

/// Prefix table used to display IRIs as prefixed names and to expand them back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Namespaces {
    prefixes: BTreeMap<String, String>,
}

impl Default for Namespaces {
    fn default() -> Self {
        let mut ns = Namespaces {
            prefixes: BTreeMap::new(),
        };
        for (prefix, base) in [
            ("rdf", RDF),
            ("DUL", DUL),
            ("tosca", TOSCA),
            ("soda", SODA),
            ("ex", EX),
        ] {
            ns.prefixes.insert(prefix.to_string(), base.to_string());
        }
        ns
    }
}

impl Namespaces {
    pub fn register(&mut self, prefix: &str, base: &str) -> Result<(), GraphError> {
        Iri::new(base)?;
        let valid_prefix = !prefix.is_empty()
            && prefix
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-');
        if !valid_prefix {
            return Err(GraphError::InvalidPrefix(prefix.to_string()));
        }
        self.prefixes.insert(prefix.to_string(), base.to_string());
        Ok(())
    }

    pub fn base(&self, prefix: &str) -> Option<&str> {
        self.prefixes.get(prefix).map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.prefixes.iter().map(|(p, b)| (p.as_str(), b.as_str()))
    }

    /// Expands `prefix:local`, or `<full>` verbatim.
    pub fn expand(&self, name: &str) -> Result<Iri, GraphError> {
        if let Some(full) = name.strip_prefix('<').and_then(|n| n.strip_suffix('>')) {
            return Iri::new(full);
        }
        let (prefix, local) = name
            .split_once(':')
            .ok_or_else(|| GraphError::UnknownPrefix(name.to_string()))?;
        let base = self
            .prefixes
            .get(prefix)
            .ok_or_else(|| GraphError::UnknownPrefix(prefix.to_string()))?;
        Iri::new(format!("{base}{local}"))
    }

    /// Shortest prefixed form under the longest matching base, or `<full>`.
    pub fn shrink(&self, iri: &Iri) -> String {
        let full = iri.as_str();
        self.prefixes
            .iter()
            .filter(|(_, base)| full.starts_with(base.as_str()))
            .max_by_key(|(prefix, base)| (base.len(), std::cmp::Reverse(prefix.len())))
            .map(|(prefix, base)| format!("{prefix}:{}", &full[base.len()..]))
            .unwrap_or_else(|| format!("<{full}>"))
    }
}
