//! AST to knowledge graph. Node and relationship types become Situations
//! whose Description defines one Concept per property or attribute; templates
//! become instances whose property nodes carry the assigned values.

mod vocab;

use std::collections::BTreeMap;

use percent_encoding::{utf8_percent_encode, AsciiSet, NON_ALPHANUMERIC};

use crate::graph::{Graph, Iri, Literal, Namespaces, Triple, EX};
use crate::rules::{ElementKind, ElementRef};
use crate::tosca::{
    Assignment, NodeTemplate, NodeType, PropertyDefinition, Scalar, ServiceTemplate, Value,
};

pub use vocab::{vocab, Vocab};

const SEGMENT: &AsciiSet = &NON_ALPHANUMERIC
    .remove(b'-')
    .remove(b'.')
    .remove(b'_')
    .remove(b'~');

/// Which collection a definition or template came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Node,
    Relationship,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Property,
    Attribute,
}

impl Slot {
    fn segment(self) -> &'static str {
        match self {
            Slot::Property => "prop",
            Slot::Attribute => "attr",
        }
    }
}

/// Mints every IRI the mapper emits. All IRIs are pure functions of the base
/// and the element path, so mapping the same document twice yields the same
/// bytes.
#[derive(Clone, Debug)]
pub struct MappingContext {
    base: String,
    namespaces: Namespaces,
}

impl Default for MappingContext {
    fn default() -> Self {
        MappingContext::new(EX)
    }
}

impl MappingContext {
    /// `base` should end in `/` or `#`.
    pub fn new(base: impl Into<String>) -> Self {
        let base = base.into();
        let mut namespaces = Namespaces::default();
        if base != EX {
            namespaces
                .register("doc", &base)
                .expect("mapping base must be an absolute IRI");
        }
        MappingContext { base, namespaces }
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn namespaces(&self) -> &Namespaces {
        &self.namespaces
    }

    fn mint(&self, segments: &[&str]) -> Iri {
        let mut s = self.base.clone();
        for (i, seg) in segments.iter().enumerate() {
            if i > 0 {
                s.push('/');
            }
            s.extend(utf8_percent_encode(seg, SEGMENT));
        }
        Iri::new(s).expect("base IRI has a scheme")
    }

    fn family_segment(family: Family, tier1: bool) -> &'static str {
        match (family, tier1) {
            (Family::Node, true) => "type",
            (Family::Node, false) => "node",
            (Family::Relationship, true) => "reltype",
            (Family::Relationship, false) => "rel",
        }
    }

    pub fn type_iri(&self, family: Family, name: &str) -> Iri {
        self.mint(&[Self::family_segment(family, true), name])
    }

    pub fn description_iri(&self, family: Family, name: &str) -> Iri {
        self.mint(&[Self::family_segment(family, true), name, "desc"])
    }

    pub fn concept_iri(&self, family: Family, type_name: &str, slot: Slot, item: &str) -> Iri {
        self.mint(&[
            Self::family_segment(family, true),
            type_name,
            slot.segment(),
            item,
        ])
    }

    pub fn default_iri(&self, family: Family, type_name: &str, slot: Slot, item: &str) -> Iri {
        self.mint(&[
            Self::family_segment(family, true),
            type_name,
            slot.segment(),
            item,
            "default",
        ])
    }

    /// Shared by properties and attributes: the local name is the raw item name.
    pub fn param_iri(&self, item: &str) -> Iri {
        self.mint(&["param", item])
    }

    pub fn template_iri(&self, family: Family, name: &str) -> Iri {
        self.mint(&[Self::family_segment(family, false), name])
    }

    pub fn assignment_iri(&self, family: Family, template: &str, slot: Slot, item: &str) -> Iri {
        self.mint(&[
            Self::family_segment(family, false),
            template,
            slot.segment(),
            item,
        ])
    }

    pub fn function_iri(&self, family: Family, template: &str, slot: Slot, item: &str) -> Iri {
        self.mint(&[
            Self::family_segment(family, false),
            template,
            slot.segment(),
            item,
            "value",
        ])
    }
}

/// Scalars keep their datatype; everything else is carried as its canonical
/// flow-style string.
pub fn value_literal(value: &Value) -> Literal {
    match value {
        Value::Scalar(Scalar::String(s)) => Literal::string(s),
        Value::Scalar(Scalar::Integer(i)) => Literal::integer(*i),
        Value::Scalar(Scalar::Boolean(b)) => Literal::boolean(*b),
        Value::Scalar(Scalar::Float(x)) => Literal::float(*x),
        other => Literal::string(other.to_string()),
    }
}

fn typed(subject: &Iri, class: &Iri) -> Triple {
    Triple::new(subject.clone(), vocab().rdf_type.clone(), class.clone())
}

pub fn map_node_type(nt: &NodeType, ctx: &MappingContext) -> Vec<Triple> {
    map_type(nt, Family::Node, ctx)
}

pub fn map_relationship_type(rt: &NodeType, ctx: &MappingContext) -> Vec<Triple> {
    map_type(rt, Family::Relationship, ctx)
}

fn map_type(nt: &NodeType, family: Family, ctx: &MappingContext) -> Vec<Triple> {
    let v = vocab();
    let situation = ctx.type_iri(family, &nt.name);
    let description = ctx.description_iri(family, &nt.name);
    let class = match family {
        Family::Node => &v.node_type,
        Family::Relationship => &v.relationship_type,
    };
    let mut out = vec![
        typed(&situation, &v.situation),
        typed(&situation, class),
        Triple::new(
            situation.clone(),
            v.has_context.clone(),
            description.clone(),
        ),
        typed(&description, &v.description),
    ];
    let slots = [
        (Slot::Property, &nt.properties, &v.property),
        (Slot::Attribute, &nt.attributes, &v.attribute),
    ];
    for (slot, defs, class) in slots {
        for def in defs.values() {
            map_definition(
                &mut out,
                ctx,
                family,
                &nt.name,
                slot,
                class,
                &description,
                def,
            );
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn map_definition(
    out: &mut Vec<Triple>,
    ctx: &MappingContext,
    family: Family,
    type_name: &str,
    slot: Slot,
    class: &Iri,
    description: &Iri,
    def: &PropertyDefinition,
) {
    let v = vocab();
    let concept = ctx.concept_iri(family, type_name, slot, &def.name);
    out.push(Triple::new(
        description.clone(),
        v.defines.clone(),
        concept.clone(),
    ));
    out.push(typed(&concept, class));
    out.push(Triple::new(
        concept.clone(),
        v.classifies.clone(),
        ctx.param_iri(&def.name),
    ));
    if let Some(default) = &def.default {
        let param = ctx.default_iri(family, type_name, slot, &def.name);
        out.push(Triple::new(concept, v.has_parameter.clone(), param.clone()));
        out.push(Triple::new(
            param.clone(),
            v.classifies.clone(),
            v.default.clone(),
        ));
        out.push(Triple::new(
            param,
            v.has_data_value.clone(),
            value_literal(default),
        ));
    }
}

pub fn map_node_template(t: &NodeTemplate, ctx: &MappingContext) -> Vec<Triple> {
    map_template(t, Family::Node, ctx)
}

pub fn map_relationship_template(t: &NodeTemplate, ctx: &MappingContext) -> Vec<Triple> {
    map_template(t, Family::Relationship, ctx)
}

fn map_template(t: &NodeTemplate, family: Family, ctx: &MappingContext) -> Vec<Triple> {
    let v = vocab();
    let node = ctx.template_iri(family, &t.name);
    let class = match family {
        Family::Node => &v.node_template,
        Family::Relationship => &v.relationship_template,
    };
    let mut out = vec![typed(&node, class)];
    if !t.type_name.is_empty() {
        out.push(typed(&node, &ctx.type_iri(family, &t.type_name)));
    }
    let slots = [
        (Slot::Property, &t.properties, &v.has_property, &v.property),
        (
            Slot::Attribute,
            &t.attributes,
            &v.has_attribute,
            &v.attribute,
        ),
    ];
    for (slot, assignments, link, class) in slots {
        for a in assignments.values() {
            map_assignment(&mut out, ctx, family, t, slot, (link, class), &node, a);
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn map_assignment(
    out: &mut Vec<Triple>,
    ctx: &MappingContext,
    family: Family,
    t: &NodeTemplate,
    slot: Slot,
    (link, class): (&Iri, &Iri),
    node: &Iri,
    a: &Assignment,
) {
    let v = vocab();
    let prop = ctx.assignment_iri(family, &t.name, slot, &a.name);
    out.push(Triple::new(node.clone(), link.clone(), prop.clone()));
    out.push(typed(&prop, class));
    out.push(Triple::new(
        prop.clone(),
        v.classifies.clone(),
        ctx.param_iri(&a.name),
    ));
    match &a.value {
        Value::FunctionCall { function, args } => {
            let fun = ctx.function_iri(family, &t.name, slot, &a.name);
            out.push(Triple::new(prop, v.has_variable_value.clone(), fun.clone()));
            out.push(typed(&fun, &v.intrinsic_function));
            out.push(Triple::new(
                fun.clone(),
                v.function_name.clone(),
                Literal::string(function.name()),
            ));
            for arg in args {
                out.push(Triple::new(
                    fun.clone(),
                    v.function_arg.clone(),
                    Literal::string(arg),
                ));
            }
        }
        value => out.push(Triple::new(
            prop,
            v.has_data_value.clone(),
            value_literal(value),
        )),
    }
}

/// The whole document: types first, then templates.
pub fn map_service_template(st: &ServiceTemplate, ctx: &MappingContext) -> Graph {
    let mut graph = Graph::with_namespaces(ctx.namespaces.clone());
    for nt in st.node_types.values() {
        graph.extend(map_node_type(nt, ctx));
    }
    for rt in st.relationship_types.values() {
        graph.extend(map_relationship_type(rt, ctx));
    }
    for t in st.node_templates() {
        graph.extend(map_node_template(t, ctx));
    }
    for t in st.relationship_templates() {
        graph.extend(map_relationship_template(t, ctx));
    }
    graph
}

/// A graph node that stands for a source element, with its source line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MappedElement {
    pub element: ElementRef,
    pub line: usize,
}

/// Maps every concept node and property node back to the element it came
/// from. Uses the same minting functions as the mapper.
pub fn element_index(st: &ServiceTemplate, ctx: &MappingContext) -> BTreeMap<Iri, MappedElement> {
    let mut index = BTreeMap::new();
    let types = [
        (Family::Node, &st.node_types),
        (Family::Relationship, &st.relationship_types),
    ];
    for (family, types) in types {
        for nt in types.values() {
            for (slot, defs) in [
                (Slot::Property, &nt.properties),
                (Slot::Attribute, &nt.attributes),
            ] {
                for def in defs.values() {
                    index.insert(
                        ctx.concept_iri(family, &nt.name, slot, &def.name),
                        MappedElement {
                            element: ElementRef::new(
                                ElementKind::NodeTypeDefault,
                                &nt.name,
                                &def.name,
                            ),
                            line: def.line,
                        },
                    );
                }
            }
        }
    }
    let templates = [
        (Family::Node, st.node_templates().collect::<Vec<_>>()),
        (Family::Relationship, st.relationship_templates().collect()),
    ];
    for (family, templates) in templates {
        for t in templates {
            let slots = [
                (Slot::Property, &t.properties, ElementKind::TemplateProperty),
                (
                    Slot::Attribute,
                    &t.attributes,
                    ElementKind::TemplateAttribute,
                ),
            ];
            for (slot, assignments, kind) in slots {
                for a in assignments.values() {
                    index.insert(
                        ctx.assignment_iri(family, &t.name, slot, &a.name),
                        MappedElement {
                            element: ElementRef::new(kind, &t.name, &a.name),
                            line: a.line,
                        },
                    );
                }
            }
        }
    }
    index
}
