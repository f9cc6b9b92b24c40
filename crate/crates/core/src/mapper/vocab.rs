//! Fixed Tier-0 vocabulary. The mapper emits no predicate or class outside
//! this table.

use std::sync::LazyLock;

use crate::graph::{Iri, DUL, RDF, SODA, TOSCA};

pub struct Vocab {
    pub rdf_type: Iri,

    pub situation: Iri,
    pub description: Iri,
    pub concept: Iri,
    pub node_type: Iri,
    pub node_template: Iri,
    pub relationship_type: Iri,
    pub relationship_template: Iri,
    pub property: Iri,
    pub attribute: Iri,
    pub capability: Iri,
    pub requirement: Iri,
    pub intrinsic_function: Iri,

    pub classifies: Iri,
    pub has_parameter: Iri,
    pub defines: Iri,
    pub has_context: Iri,
    pub has_data_value: Iri,
    pub has_variable_value: Iri,
    pub has_property: Iri,
    pub has_attribute: Iri,
    pub function_name: Iri,
    pub function_arg: Iri,

    /// Classified by default-value parameters.
    pub default: Iri,
}

fn iri(base: &str, local: &str) -> Iri {
    Iri::new(format!("{base}{local}")).expect("static vocabulary IRI")
}

static VOCAB: LazyLock<Vocab> = LazyLock::new(|| Vocab {
    rdf_type: iri(RDF, "type"),
    situation: iri(DUL, "Situation"),
    description: iri(DUL, "Description"),
    concept: iri(DUL, "Concept"),
    node_type: iri(TOSCA, "NodeType"),
    node_template: iri(TOSCA, "NodeTemplate"),
    relationship_type: iri(TOSCA, "RelationshipType"),
    relationship_template: iri(TOSCA, "RelationshipTemplate"),
    property: iri(TOSCA, "Property"),
    attribute: iri(TOSCA, "Attribute"),
    capability: iri(TOSCA, "Capability"),
    requirement: iri(TOSCA, "Requirement"),
    intrinsic_function: iri(TOSCA, "IntrinsicFunction"),
    classifies: iri(DUL, "classifies"),
    has_parameter: iri(DUL, "hasParameter"),
    defines: iri(DUL, "defines"),
    has_context: iri(SODA, "hasContext"),
    has_data_value: iri(TOSCA, "hasDataValue"),
    has_variable_value: iri(TOSCA, "hasVariableValue"),
    has_property: iri(TOSCA, "hasProperty"),
    has_attribute: iri(TOSCA, "hasAttribute"),
    function_name: iri(TOSCA, "functionName"),
    function_arg: iri(TOSCA, "functionArg"),
    default: iri(TOSCA, "default"),
});

pub fn vocab() -> &'static Vocab {
    &VOCAB
}

impl Vocab {
    pub fn predicates(&self) -> [&Iri; 11] {
        [
            &self.rdf_type,
            &self.classifies,
            &self.has_parameter,
            &self.defines,
            &self.has_context,
            &self.has_data_value,
            &self.has_variable_value,
            &self.has_property,
            &self.has_attribute,
            &self.function_name,
            &self.function_arg,
        ]
    }

    pub fn classes(&self) -> [&Iri; 12] {
        [
            &self.situation,
            &self.description,
            &self.concept,
            &self.node_type,
            &self.node_template,
            &self.relationship_type,
            &self.relationship_template,
            &self.property,
            &self.attribute,
            &self.capability,
            &self.requirement,
            &self.intrinsic_function,
        ]
    }

    pub fn contains(&self, iri: &Iri) -> bool {
        *iri == self.default || self.predicates().contains(&iri) || self.classes().contains(&iri)
    }
}
