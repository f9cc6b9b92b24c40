use std::collections::BTreeMap;

use super::model::*;
use super::yaml::{self, YamlNode};
use super::{collect_comments, ParseFailure, Parsed};
use crate::diagnostic::Diagnostic;

const TOP_LEVEL_KEYS: &[&str] = &[
    "tosca_definitions_version",
    "description",
    "metadata",
    "imports",
    "repositories",
    "dsl_definitions",
    "namespace",
    "node_types",
    "relationship_types",
    "data_types",
    "capability_types",
    "artifact_types",
    "interface_types",
    "policy_types",
    "group_types",
    "topology_template",
];
const TYPE_KEYS: &[&str] = &[
    "derived_from",
    "version",
    "metadata",
    "description",
    "properties",
    "attributes",
    "requirements",
    "capabilities",
    "interfaces",
    "artifacts",
    "valid_target_types",
];
const PROPERTY_KEYS: &[&str] = &[
    "type",
    "description",
    "required",
    "default",
    "status",
    "constraints",
    "key_schema",
    "entry_schema",
    "metadata",
];
const TOPOLOGY_KEYS: &[&str] = &[
    "description",
    "inputs",
    "node_templates",
    "relationship_templates",
    "outputs",
    "groups",
    "policies",
    "substitution_mappings",
    "workflows",
];
const TEMPLATE_KEYS: &[&str] = &[
    "type",
    "description",
    "metadata",
    "directives",
    "properties",
    "attributes",
    "requirements",
    "capabilities",
    "interfaces",
    "artifacts",
    "node_filter",
    "copy",
];

pub(super) fn parse(source: &str, path: &str) -> Result<Parsed, ParseFailure> {
    let doc = yaml::load(source).map_err(|e| ParseFailure {
        diagnostics: vec![Diagnostic::error(
            format!("YAML syntax error: {}", e.message),
            e.pos.line,
            e.pos.column,
        )],
    })?;
    let mut p = TemplateParser {
        diagnostics: Vec::new(),
    };
    let mut template = ServiceTemplate {
        source: path.to_string(),
        comments: collect_comments(source),
        ..ServiceTemplate::default()
    };
    match &doc.root {
        None => p.warn_at("document contains no definitions", 0, 0),
        Some(root) if root.is_null() => p.warn_at("document contains no definitions", 0, 0),
        Some(root @ YamlNode::Mapping { .. }) => p.service_template(root, &mut template),
        Some(other) => p.warn(
            "top level of a TOSCA document must be a mapping; nothing parsed",
            other,
        ),
    }
    p.check_types(&template);
    Ok(Parsed {
        template,
        diagnostics: p.diagnostics,
    })
}

struct TemplateParser {
    diagnostics: Vec<Diagnostic>,
}

impl TemplateParser {
    fn warn(&mut self, message: impl Into<String>, at: &YamlNode) {
        let pos = at.pos();
        self.warn_at(message, pos.line, pos.column);
    }

    fn warn_at(&mut self, message: impl Into<String>, line: usize, column: usize) {
        self.diagnostics
            .push(Diagnostic::warning(message, line, column));
    }

    /// Scalar-keyed entries of a mapping; anything else is reported.
    fn entries<'n>(
        &mut self,
        node: &'n YamlNode,
        what: &str,
    ) -> Vec<(&'n str, &'n YamlNode, &'n YamlNode)> {
        let Some(entries) = node.entries() else {
            if !node.is_null() {
                self.warn(format!("{what} must be a mapping"), node);
            }
            return Vec::new();
        };
        let mut out: Vec<(&str, &YamlNode, &YamlNode)> = Vec::new();
        for (k, v) in entries {
            match k.as_str() {
                Some(key) if out.iter().any(|(seen, _, _)| *seen == key) => self.warn(
                    format!("duplicate key `{key}` in {what}; first one kept"),
                    k,
                ),
                Some(key) => out.push((key, k, v)),
                None => self.warn(format!("non-scalar key in {what} ignored"), k),
            }
        }
        out
    }

    fn check_keys(&mut self, node: &YamlNode, known: &[&str], what: &str) {
        for (key, k, _) in self.entries(node, what) {
            if !known.contains(&key) {
                self.warn(format!("unknown key `{key}` in {what} ignored"), k);
            }
        }
    }

    fn string_field(&mut self, node: &YamlNode, key: &str, what: &str) -> Option<String> {
        let v = node.get(key)?;
        if v.is_null() {
            return None;
        }
        match v.as_str() {
            Some(s) => Some(s.to_string()),
            None => {
                self.warn(format!("`{key}` of {what} must be a scalar"), v);
                None
            }
        }
    }

    fn service_template(&mut self, root: &YamlNode, t: &mut ServiceTemplate) {
        self.check_keys(root, TOP_LEVEL_KEYS, "service template");
        t.definitions_version =
            self.string_field(root, "tosca_definitions_version", "service template");
        if t.definitions_version.is_none() {
            self.warn_at("missing `tosca_definitions_version`", 1, 1);
        }
        t.description = self.string_field(root, "description", "service template");
        if let Some(types) = root.get("node_types") {
            t.node_types = self.types(types, "node type");
        }
        if let Some(types) = root.get("relationship_types") {
            t.relationship_types = self.types(types, "relationship type");
        }
        if let Some(topology) = root.get("topology_template") {
            t.topology = Some(self.topology(topology));
        }
    }

    fn types(&mut self, node: &YamlNode, what: &str) -> BTreeMap<String, NodeType> {
        let mut out = BTreeMap::new();
        for (name, key, body) in self.entries(node, &format!("{what}s")) {
            let ctx = format!("{what} `{name}`");
            self.check_keys(body, TYPE_KEYS, &ctx);
            let mut nt = NodeType {
                name: name.to_string(),
                derived_from: self.string_field(body, "derived_from", &ctx),
                description: self.string_field(body, "description", &ctx),
                line: key.pos().line,
                ..NodeType::default()
            };
            if nt.derived_from.as_deref() == Some(name) {
                self.warn(format!("{ctx} derives from itself"), key);
                nt.derived_from = None;
            }
            if let Some(props) = body.get("properties") {
                nt.properties = self.definitions(props, &format!("properties of {ctx}"));
            }
            if let Some(attrs) = body.get("attributes") {
                nt.attributes = self.definitions(attrs, &format!("attributes of {ctx}"));
            }
            if let Some(caps) = body.get("capabilities") {
                for (cap, _, cap_body) in self.entries(caps, &format!("capabilities of {ctx}")) {
                    let cap_type = cap_body
                        .as_str()
                        .or_else(|| cap_body.get("type").and_then(YamlNode::as_str))
                        .unwrap_or_default();
                    nt.capabilities
                        .insert(cap.to_string(), cap_type.to_string());
                }
            }
            if let Some(reqs) = body.get("requirements") {
                nt.requirements = self.requirements(reqs, &ctx, &["node", "capability"]);
            }
            if let Some(ifaces) = body.get("interfaces") {
                nt.interfaces = self.opaque_map(ifaces, &format!("interfaces of {ctx}"));
            }
            out.insert(name.to_string(), nt);
        }
        out
    }

    fn definitions(&mut self, node: &YamlNode, what: &str) -> BTreeMap<String, PropertyDefinition> {
        let mut out = BTreeMap::new();
        for (name, key, body) in self.entries(node, what) {
            let ctx = format!("`{name}` in {what}");
            if body.entries().is_none() {
                self.warn(format!("definition {ctx} must be a mapping"), body);
                continue;
            }
            self.check_keys(body, PROPERTY_KEYS, &ctx);
            let required = match body.get("required") {
                Some(v) => match resolve_scalar(v) {
                    Some(Scalar::Boolean(b)) => Some(b),
                    _ => {
                        self.warn(format!("`required` of {ctx} must be a boolean"), v);
                        None
                    }
                },
                None => None,
            };
            let default = body.get("default").filter(|v| !v.is_null()).map(to_value);
            out.insert(
                name.to_string(),
                PropertyDefinition {
                    name: name.to_string(),
                    declared_type: self.string_field(body, "type", &ctx).unwrap_or_default(),
                    default,
                    required,
                    description: self.string_field(body, "description", &ctx),
                    line: key.pos().line,
                },
            );
        }
        out
    }

    fn requirements(
        &mut self,
        node: &YamlNode,
        ctx: &str,
        target_keys: &[&str],
    ) -> Vec<RequirementRef> {
        let YamlNode::Sequence { items, .. } = node else {
            if !node.is_null() {
                self.warn(format!("requirements of {ctx} must be a sequence"), node);
            }
            return Vec::new();
        };
        let mut out = Vec::new();
        for item in items {
            match item.entries() {
                Some([(k, v)]) if k.as_str().is_some() => {
                    let target = v.as_str().map(str::to_string).or_else(|| {
                        target_keys
                            .iter()
                            .find_map(|tk| v.get(tk).and_then(YamlNode::as_str))
                            .map(str::to_string)
                    });
                    out.push(RequirementRef {
                        name: k.as_str().unwrap_or_default().to_string(),
                        target: target.unwrap_or_default(),
                        line: k.pos().line,
                    });
                }
                _ => self.warn(
                    format!("requirement of {ctx} must be a single-key mapping"),
                    item,
                ),
            }
        }
        out
    }

    fn opaque_map(&mut self, node: &YamlNode, what: &str) -> BTreeMap<String, Value> {
        self.entries(node, what)
            .into_iter()
            .map(|(k, _, v)| (k.to_string(), to_value(v)))
            .collect()
    }

    fn topology(&mut self, node: &YamlNode) -> Topology {
        self.check_keys(node, TOPOLOGY_KEYS, "topology template");
        let mut topo = Topology {
            description: self.string_field(node, "description", "topology template"),
            ..Topology::default()
        };
        if let Some(inputs) = node.get("inputs") {
            topo.inputs = self.definitions(inputs, "topology inputs");
        }
        if let Some(templates) = node.get("node_templates") {
            topo.node_templates = self.templates(templates, "node template");
        }
        if let Some(templates) = node.get("relationship_templates") {
            topo.relationship_templates = self.templates(templates, "relationship template");
        }
        topo
    }

    fn templates(&mut self, node: &YamlNode, what: &str) -> BTreeMap<String, NodeTemplate> {
        let mut out = BTreeMap::new();
        for (name, key, body) in self.entries(node, &format!("{what}s")) {
            let ctx = format!("{what} `{name}`");
            if body.entries().is_none() {
                self.warn(format!("{ctx} must be a mapping"), body);
                continue;
            }
            self.check_keys(body, TEMPLATE_KEYS, &ctx);
            let type_name = self.string_field(body, "type", &ctx).unwrap_or_default();
            if type_name.is_empty() {
                self.warn(format!("{ctx} has no `type`"), key);
            }
            let mut t = NodeTemplate {
                name: name.to_string(),
                type_name,
                description: self.string_field(body, "description", &ctx),
                line: key.pos().line,
                ..NodeTemplate::default()
            };
            if let Some(props) = body.get("properties") {
                t.properties = self.assignments(props, &format!("properties of {ctx}"));
            }
            if let Some(attrs) = body.get("attributes") {
                t.attributes = self.assignments(attrs, &format!("attributes of {ctx}"));
            }
            if let Some(reqs) = body.get("requirements") {
                t.requirements = self.requirements(reqs, &ctx, &["node"]);
            }
            if let Some(ifaces) = body.get("interfaces") {
                t.interfaces = self.opaque_map(ifaces, &format!("interfaces of {ctx}"));
            }
            out.insert(name.to_string(), t);
        }
        out
    }

    fn assignments(&mut self, node: &YamlNode, what: &str) -> BTreeMap<String, Assignment> {
        self.entries(node, what)
            .into_iter()
            .filter(|(_, _, v)| !v.is_null())
            .map(|(name, key, v)| {
                (
                    name.to_string(),
                    Assignment {
                        name: name.to_string(),
                        value: to_value(v),
                        line: key.pos().line,
                    },
                )
            })
            .collect()
    }

    fn check_types(&mut self, t: &ServiceTemplate) {
        for tpl in t.node_templates() {
            if !tpl.type_name.is_empty() && !t.node_types.contains_key(&tpl.type_name) {
                self.warn_at(
                    format!(
                        "node template `{}` uses type `{}` which is not defined in this file",
                        tpl.name, tpl.type_name
                    ),
                    tpl.line,
                    1,
                );
            }
        }
        for nt in t.node_types.values() {
            if let Err(cycle) = super::derivation_chain(&nt.name, &t.node_types) {
                self.warn_at(cycle.to_string(), nt.line, 1);
            }
        }
    }
}

pub(super) fn to_value(node: &YamlNode) -> Value {
    match node {
        YamlNode::Scalar { .. } if node.is_null() => Value::string(""),
        YamlNode::Scalar { .. } => Value::Scalar(resolve_scalar(node).expect("scalar")),
        YamlNode::Sequence { items, .. } => Value::Sequence(items.iter().map(to_value).collect()),
        YamlNode::Mapping { entries, .. } => {
            if let [(k, v)] = entries.as_slice() {
                if let Some(function) = k.as_str().and_then(IntrinsicFunction::from_name) {
                    let args = match v {
                        YamlNode::Sequence { items, .. } => {
                            items.iter().map(|i| to_value(i).to_string()).collect()
                        }
                        other => vec![to_value(other).to_string()],
                    };
                    return Value::FunctionCall { function, args };
                }
            }
            Value::Mapping(
                entries
                    .iter()
                    .map(|(k, v)| (to_value(k).to_string(), to_value(v)))
                    .collect(),
            )
        }
    }
}

/// YAML 1.2 core-schema resolution; quoted scalars are always strings.
pub(super) fn resolve_scalar(node: &YamlNode) -> Option<Scalar> {
    let YamlNode::Scalar { value, quoted, .. } = node else {
        return None;
    };
    if *quoted {
        return Some(Scalar::String(value.clone()));
    }
    let v = value.as_str();
    Some(match v {
        "true" | "True" | "TRUE" => Scalar::Boolean(true),
        "false" | "False" | "FALSE" => Scalar::Boolean(false),
        ".inf" | ".Inf" | ".INF" | "+.inf" | "+.Inf" | "+.INF" => Scalar::Float(f64::INFINITY),
        "-.inf" | "-.Inf" | "-.INF" => Scalar::Float(f64::NEG_INFINITY),
        ".nan" | ".NaN" | ".NAN" => Scalar::Float(f64::NAN),
        _ => {
            if let Some(i) = parse_int(v) {
                Scalar::Integer(i)
            } else if is_float(v) {
                Scalar::Float(v.parse().unwrap_or(f64::NAN))
            } else {
                Scalar::String(v.to_string())
            }
        }
    })
}

fn parse_int(v: &str) -> Option<i64> {
    if let Some(hex) = v.strip_prefix("0x") {
        return i64::from_str_radix(hex, 16).ok();
    }
    if let Some(oct) = v.strip_prefix("0o") {
        return i64::from_str_radix(oct, 8).ok();
    }
    let digits = v.strip_prefix(['-', '+']).unwrap_or(v);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    v.parse().ok()
}

fn is_float(v: &str) -> bool {
    let body = v.strip_prefix(['-', '+']).unwrap_or(v);
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], Some(&body[i + 1..])),
        None => (body, None),
    };
    let mantissa_ok = match mantissa.split_once('.') {
        Some((int, frac)) => {
            (!int.is_empty() || !frac.is_empty())
                && int.bytes().all(|b| b.is_ascii_digit())
                && frac.bytes().all(|b| b.is_ascii_digit())
        }
        None => !mantissa.is_empty() && mantissa.bytes().all(|b| b.is_ascii_digit()),
    };
    let exponent_ok = exponent.is_none_or(|e| {
        let e = e.strip_prefix(['-', '+']).unwrap_or(e);
        !e.is_empty() && e.bytes().all(|b| b.is_ascii_digit())
    });
    mantissa_ok && exponent_ok
}
