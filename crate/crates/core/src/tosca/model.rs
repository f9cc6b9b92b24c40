use std::collections::BTreeMap;
use std::fmt;

use super::Comment;

#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    String(String),
    Integer(i64),
    Boolean(bool),
    Float(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IntrinsicFunction {
    GetInput,
    GetProperty,
    GetAttribute,
    GetEnv,
}

impl IntrinsicFunction {
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "get_input" => Some(IntrinsicFunction::GetInput),
            "get_property" => Some(IntrinsicFunction::GetProperty),
            "get_attribute" => Some(IntrinsicFunction::GetAttribute),
            "get_env" => Some(IntrinsicFunction::GetEnv),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            IntrinsicFunction::GetInput => "get_input",
            IntrinsicFunction::GetProperty => "get_property",
            IntrinsicFunction::GetAttribute => "get_attribute",
            IntrinsicFunction::GetEnv => "get_env",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Scalar(Scalar),
    Sequence(Vec<Value>),
    Mapping(BTreeMap<String, Value>),
    FunctionCall {
        function: IntrinsicFunction,
        args: Vec<String>,
    },
}

impl Value {
    pub fn string(s: impl Into<String>) -> Self {
        Value::Scalar(Scalar::String(s.into()))
    }

    pub fn is_function_call(&self) -> bool {
        matches!(self, Value::FunctionCall { .. })
    }
}

/// Canonical flow-style rendering; top-level strings render unquoted.
impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(Scalar::String(s)) => f.write_str(s),
            other => write_flow(other, f),
        }
    }
}

fn write_flow(value: &Value, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match value {
        Value::Scalar(Scalar::String(s)) => write_flow_string(s, f),
        Value::Scalar(Scalar::Integer(i)) => write!(f, "{i}"),
        Value::Scalar(Scalar::Boolean(b)) => write!(f, "{b}"),
        Value::Scalar(Scalar::Float(x)) => f.write_str(crate::graph::Literal::float(*x).lexical()),
        Value::Sequence(items) => {
            f.write_str("[")?;
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write_flow(item, f)?;
            }
            f.write_str("]")
        }
        Value::Mapping(entries) => {
            f.write_str("{")?;
            for (i, (k, v)) in entries.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write_flow_string(k, f)?;
                f.write_str(": ")?;
                write_flow(v, f)?;
            }
            f.write_str("}")
        }
        Value::FunctionCall { function, args } => {
            write!(f, "{{{}: [", function.name())?;
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write_flow_string(a, f)?;
            }
            f.write_str("]}")
        }
    }
}

fn write_flow_string(s: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let plain = !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || "_./@-".contains(c));
    if plain {
        f.write_str(s)
    } else {
        write!(f, "{}", serde_json::Value::String(s.to_string()))
    }
}

/// Property, attribute or input definition.
#[derive(Clone, Debug, PartialEq)]
pub struct PropertyDefinition {
    pub name: String,
    pub declared_type: String,
    pub default: Option<Value>,
    pub required: Option<bool>,
    pub description: Option<String>,
    pub line: usize,
}

pub type AttributeDefinition = PropertyDefinition;
pub type InputDefinition = PropertyDefinition;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RequirementRef {
    pub name: String,
    pub target: String,
    pub line: usize,
}

/// A node type. Relationship types use the same shape.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct NodeType {
    pub name: String,
    pub derived_from: Option<String>,
    pub description: Option<String>,
    pub properties: BTreeMap<String, PropertyDefinition>,
    pub attributes: BTreeMap<String, AttributeDefinition>,
    pub capabilities: BTreeMap<String, String>,
    pub requirements: Vec<RequirementRef>,
    /// Retained without interpretation.
    pub interfaces: BTreeMap<String, Value>,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Assignment {
    pub name: String,
    pub value: Value,
    pub line: usize,
}

/// A node template. Relationship templates use the same shape.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct NodeTemplate {
    pub name: String,
    /// Empty when the template names no type.
    pub type_name: String,
    pub description: Option<String>,
    pub properties: BTreeMap<String, Assignment>,
    pub attributes: BTreeMap<String, Assignment>,
    pub requirements: Vec<RequirementRef>,
    pub interfaces: BTreeMap<String, Value>,
    pub line: usize,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Topology {
    pub description: Option<String>,
    pub inputs: BTreeMap<String, InputDefinition>,
    pub node_templates: BTreeMap<String, NodeTemplate>,
    pub relationship_templates: BTreeMap<String, NodeTemplate>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ServiceTemplate {
    pub definitions_version: Option<String>,
    pub description: Option<String>,
    pub node_types: BTreeMap<String, NodeType>,
    pub relationship_types: BTreeMap<String, NodeType>,
    pub topology: Option<Topology>,
    pub comments: Vec<Comment>,
    pub source: String,
}

impl ServiceTemplate {
    pub fn node_templates(&self) -> impl Iterator<Item = &NodeTemplate> {
        self.topology.iter().flat_map(|t| t.node_templates.values())
    }

    pub fn relationship_templates(&self) -> impl Iterator<Item = &NodeTemplate> {
        self.topology
            .iter()
            .flat_map(|t| t.relationship_templates.values())
    }

    pub fn inputs(&self) -> impl Iterator<Item = &InputDefinition> {
        self.topology.iter().flat_map(|t| t.inputs.values())
    }
}
