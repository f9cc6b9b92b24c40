use std::collections::BTreeMap;

use crate::graph::{Graph, Iri};
use crate::mapper::{element_index, map_service_template, MappedElement, MappingContext};
use crate::tosca::{Comment, NodeType, ServiceTemplate};

use super::config::{ConfigError, Matchers, RuleConfig};
use super::{ElementKind, ElementRef};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NameRole {
    /// Node and relationship type names, checked against the dotted
    /// PascalCase type convention.
    Type,
    /// Everything else, checked against the model convention.
    Member,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NameEntry {
    pub name: String,
    pub role: NameRole,
    pub element: ElementRef,
    pub line: usize,
}

/// A free-text `description` field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TextEntry {
    pub text: String,
    pub element: ElementRef,
    pub line: usize,
}

/// Everything the rules read. Built once per document and never mutated.
#[derive(Clone, Debug)]
pub struct ScanContext {
    pub file: String,
    pub graph: Graph,
    pub elements: BTreeMap<Iri, MappedElement>,
    pub comments: Vec<Comment>,
    pub names: Vec<NameEntry>,
    pub descriptions: Vec<TextEntry>,
    pub config: RuleConfig,
    pub(crate) matchers: Matchers,
}

impl ScanContext {
    pub fn new(template: &ServiceTemplate, config: RuleConfig) -> Result<Self, ConfigError> {
        Self::with_mapping(template, config, &MappingContext::default())
    }

    pub fn with_mapping(
        template: &ServiceTemplate,
        config: RuleConfig,
        mapping: &MappingContext,
    ) -> Result<Self, ConfigError> {
        let matchers = config.compile()?;
        let (names, descriptions) = inventory(template);
        Ok(ScanContext {
            file: template.source.clone(),
            graph: map_service_template(template, mapping),
            elements: element_index(template, mapping),
            comments: template.comments.clone(),
            names,
            descriptions,
            config,
            matchers,
        })
    }
}

fn name(entries: &mut Vec<NameEntry>, name: &str, role: NameRole, owner: &str, line: usize) {
    entries.push(NameEntry {
        name: name.to_string(),
        role,
        element: ElementRef::new(ElementKind::Name, owner, name),
        line,
    });
}

fn text(entries: &mut Vec<TextEntry>, text: Option<&String>, owner: &str, item: &str, line: usize) {
    if let Some(text) = text {
        entries.push(TextEntry {
            text: text.clone(),
            element: ElementRef::new(ElementKind::Description, owner, item),
            line,
        });
    }
}

fn inventory(st: &ServiceTemplate) -> (Vec<NameEntry>, Vec<TextEntry>) {
    let mut names = Vec::new();
    let mut texts = Vec::new();
    text(&mut texts, st.description.as_ref(), "", "", 0);
    let types: Vec<&NodeType> = st
        .node_types
        .values()
        .chain(st.relationship_types.values())
        .collect();
    for nt in types {
        name(&mut names, &nt.name, NameRole::Type, "", nt.line);
        text(&mut texts, nt.description.as_ref(), &nt.name, "", nt.line);
        for def in nt.properties.values().chain(nt.attributes.values()) {
            name(&mut names, &def.name, NameRole::Member, &nt.name, def.line);
            text(
                &mut texts,
                def.description.as_ref(),
                &nt.name,
                &def.name,
                def.line,
            );
        }
    }
    if let Some(topology) = &st.topology {
        text(
            &mut texts,
            topology.description.as_ref(),
            "topology_template",
            "",
            0,
        );
        for input in topology.inputs.values() {
            name(
                &mut names,
                &input.name,
                NameRole::Member,
                "inputs",
                input.line,
            );
            text(
                &mut texts,
                input.description.as_ref(),
                "inputs",
                &input.name,
                input.line,
            );
        }
    }
    for t in st.node_templates().chain(st.relationship_templates()) {
        name(&mut names, &t.name, NameRole::Member, "", t.line);
        text(&mut texts, t.description.as_ref(), &t.name, "", t.line);
        for a in t.properties.values().chain(t.attributes.values()) {
            name(&mut names, &a.name, NameRole::Member, &t.name, a.line);
        }
    }
    (names, texts)
}
