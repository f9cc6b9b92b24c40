//! Random node types, as model values and as YAML text.

use std::collections::BTreeMap;

use proptest::prelude::*;
use toscasmell_core::tosca::{NodeType, PropertyDefinition, Scalar, Value};

#[derive(Clone, Debug)]
pub enum Default {
    Text(String),
    Int(i64),
    Flag(bool),
}

#[derive(Clone, Debug)]
pub struct GenType {
    pub name: String,
    pub properties: BTreeMap<String, Option<Default>>,
    pub attributes: BTreeMap<String, Option<Default>>,
}

impl GenType {
    /// Definitions, properties plus attributes.
    pub fn definitions(&self) -> usize {
        self.properties.len() + self.attributes.len()
    }

    pub fn defaults(&self) -> usize {
        self.properties
            .values()
            .chain(self.attributes.values())
            .filter(|d| d.is_some())
            .count()
    }

    pub fn to_model(&self) -> NodeType {
        let defs = |m: &BTreeMap<String, Option<Default>>| {
            m.iter()
                .map(|(n, d)| {
                    let def = PropertyDefinition {
                        name: n.clone(),
                        declared_type: "string".into(),
                        default: d.as_ref().map(|d| match d {
                            Default::Text(s) => Value::string(s.clone()),
                            Default::Int(i) => Value::Scalar(Scalar::Integer(*i)),
                            Default::Flag(b) => Value::Scalar(Scalar::Boolean(*b)),
                        }),
                        required: None,
                        description: None,
                        line: 0,
                    };
                    (n.clone(), def)
                })
                .collect()
        };
        NodeType {
            name: self.name.clone(),
            properties: defs(&self.properties),
            attributes: defs(&self.attributes),
            ..NodeType::default()
        }
    }

    pub fn to_yaml(&self) -> String {
        let mut out =
            String::from("tosca_definitions_version: tosca_simple_yaml_1_3\nnode_types:\n");
        out.push_str(&format!(
            "  {}:\n    derived_from: tosca.nodes.Root\n",
            self.name
        ));
        for (section, defs) in [
            ("properties", &self.properties),
            ("attributes", &self.attributes),
        ] {
            if defs.is_empty() {
                continue;
            }
            out.push_str(&format!("    {section}:\n"));
            for (n, d) in defs {
                out.push_str(&format!("      {n}:\n        type: string\n"));
                match d {
                    Some(Default::Text(s)) => out.push_str(&format!("        default: '{s}'\n")),
                    Some(Default::Int(i)) => out.push_str(&format!("        default: {i}\n")),
                    Some(Default::Flag(b)) => out.push_str(&format!("        default: {b}\n")),
                    None => {}
                }
            }
        }
        out
    }
}

fn default_value() -> impl Strategy<Value = Option<Default>> {
    prop::option::of(prop_oneof![
        "[a-z0-9 ]{0,10}".prop_map(Default::Text),
        any::<i64>().prop_map(Default::Int),
        any::<bool>().prop_map(Default::Flag),
    ])
}

fn members() -> impl Strategy<Value = BTreeMap<String, Option<Default>>> {
    prop::collection::btree_map("[a-z][a-z0-9_]{0,10}", default_value(), 0..8)
}

pub fn gen_type() -> impl Strategy<Value = GenType> {
    (
        "[a-z]{1,6}\\.nodes\\.[A-Z][a-zA-Z]{0,8}",
        members(),
        members(),
    )
        .prop_map(|(name, properties, attributes)| GenType {
            name,
            properties,
            attributes,
        })
}
