//! Synthetic documents for the benchmarks.

use std::fmt::Write;

/// A document with `types` node types of `props` properties each (half of
/// them defaulted) and one template per type assigning every property.
pub fn synthetic_document(types: usize, props: usize) -> String {
    let mut out = String::from("tosca_definitions_version: tosca_simple_yaml_1_3\nnode_types:\n");
    for t in 0..types {
        writeln!(out, "  bench.nodes.Type{t}:\n    properties:").unwrap();
        for p in 0..props {
            writeln!(out, "      prop_{p}:\n        type: string").unwrap();
            if p % 2 == 0 {
                writeln!(out, "        default: 'value {p}'").unwrap();
            }
        }
    }
    out.push_str("topology_template:\n  node_templates:\n");
    for t in 0..types {
        writeln!(out, "    node_{t}:\n      type: bench.nodes.Type{t}\n      properties:").unwrap();
        for p in 0..props {
            writeln!(out, "        prop_{p}: 'assigned {p}'").unwrap();
        }
    }
    out
}
