//! Smell detection for TOSCA deployment models.
//!
//! A document is parsed into a typed AST ([`tosca`]), mapped to an RDF graph
//! ([`mapper`], [`graph`]), searched with basic graph pattern queries
//! ([`query`]) by the rules in [`rules`], and summarized in a [`ScanReport`].

pub mod diagnostic;
pub mod graph;
pub mod mapper;
pub mod query;
pub mod report;
pub mod rules;
pub mod scan;
pub mod tosca;

pub use diagnostic::{Diagnostic, Severity};
pub use graph::{Graph, Iri, Literal, Term, Triple};
pub use mapper::{map_service_template, MappingContext};
pub use query::{Query, ResultSet};
pub use report::{render_rules_json, render_rules_text, ScanReport, TOOL_VERSION};
pub use rules::{
    run_all, ConfigOverrides, Convention, ElementKind, ElementRef, Location, RuleConfig, RuleId,
    ScanContext, SmellOccurrence,
};
pub use scan::{export_graph, scan_source, ScanError};
pub use tosca::{parse, ParseFailure, ServiceTemplate};
