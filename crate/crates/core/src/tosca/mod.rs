//! TOSCA YAML subset: node and relationship types, topology inputs and
//! templates, with source lines and comments.

mod comments;
mod model;
mod parse;
pub mod yaml;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::diagnostic::Diagnostic;

pub use comments::{collect_comments, Comment};
pub use model::*;

#[derive(Clone, Debug)]
pub struct Parsed {
    pub template: ServiceTemplate,
    /// Warnings collected while parsing.
    pub diagnostics: Vec<Diagnostic>,
}

#[derive(Clone, Debug, Error)]
#[error("{}", .diagnostics.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n"))]
pub struct ParseFailure {
    pub diagnostics: Vec<Diagnostic>,
}

/// Parses a TOSCA document. Only YAML syntax errors fail; everything else is
/// reported as a warning and skipped.
pub fn parse(source: &str, path: &str) -> Result<Parsed, ParseFailure> {
    parse::parse(source, path)
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("`derived_from` cycle: {}", .0.join(" -> "))]
pub struct DerivationCycle(pub Vec<String>);

/// The type followed by its ancestors, stopping at the first type not
/// defined in `types`.
pub fn derivation_chain<'a>(
    type_name: &str,
    types: &'a BTreeMap<String, NodeType>,
) -> Result<Vec<&'a NodeType>, DerivationCycle> {
    let mut chain: Vec<&NodeType> = Vec::new();
    let mut current = types.get(type_name);
    while let Some(nt) = current {
        if chain.iter().any(|seen| seen.name == nt.name) {
            let mut names: Vec<String> = chain.iter().map(|t| t.name.clone()).collect();
            let start = names.iter().position(|n| *n == nt.name).unwrap_or(0);
            names.drain(..start);
            names.push(nt.name.clone());
            return Err(DerivationCycle(names));
        }
        chain.push(nt);
        current = nt.derived_from.as_deref().and_then(|p| types.get(p));
    }
    Ok(chain)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    Assigned,
    Default,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EffectiveProperty {
    pub value: Value,
    pub origin: Origin,
    pub line: usize,
}

/// Template assignments merged over type defaults. Defaults are inherited
/// along `derived_from`, the nearest definition winning.
pub fn effective_properties(
    template: &NodeTemplate,
    types: &BTreeMap<String, NodeType>,
) -> Result<BTreeMap<String, EffectiveProperty>, DerivationCycle> {
    let mut out = BTreeMap::new();
    for nt in derivation_chain(&template.type_name, types)?
        .into_iter()
        .rev()
    {
        for def in nt.properties.values() {
            if let Some(default) = &def.default {
                out.insert(
                    def.name.clone(),
                    EffectiveProperty {
                        value: default.clone(),
                        origin: Origin::Default,
                        line: def.line,
                    },
                );
            }
        }
    }
    for a in template.properties.values() {
        out.insert(
            a.name.clone(),
            EffectiveProperty {
                value: a.value.clone(),
                origin: Origin::Assigned,
                line: a.line,
            },
        );
    }
    Ok(out)
}
