//! The graph queries behind the value rules.

use crate::mapper::vocab;
use crate::query::{var, Filter, Query, TriplePattern};

use super::predicates::{ADMIN_VALUES, USER_PATTERN};

/// Type-level defaults: a concept with a parameter classified as the default,
/// carrying the value.
pub fn tier1_values() -> Query {
    let v = vocab();
    Query::select(["property", "def", "value"])
        .pattern(var("property"), &v.classifies, var("def"))
        .pattern(var("property"), &v.has_parameter, var("p"))
        .pattern(var("p"), &v.classifies, &v.default)
        .pattern(var("p"), &v.has_data_value, var("value"))
}

/// Template-level assignments with a literal value. The type test keeps
/// default parameters, which also carry values, out of this tier.
pub fn tier2_values() -> Query {
    let v = vocab();
    Query::select(["property", "def", "value"])
        .pattern(var("property"), &v.rdf_type, var("kind"))
        .pattern(var("property"), &v.classifies, var("def"))
        .pattern(var("property"), &v.has_data_value, var("value"))
        .filter(Filter::is_in(
            "kind",
            [v.property.as_str(), v.attribute.as_str()],
        ))
}

/// Administrator defaults in either tier, written the way the value rules
/// read both tiers at once: one mandatory classification and one optional
/// block per tier. Matching on the parameter's local name keeps namespace
/// text out of the comparison.
pub fn admin_by_default() -> Query {
    let v = vocab();
    Query::select(["property", "def", "value"])
        .pattern(var("property"), &v.classifies, var("def"))
        .optional(vec![
            TriplePattern::new(var("property"), &v.has_parameter, var("p")),
            TriplePattern::new(var("p"), &v.classifies, &v.default),
            TriplePattern::new(var("p"), &v.has_data_value, var("value")),
        ])
        .optional(vec![TriplePattern::new(
            var("property"),
            &v.has_data_value,
            var("value"),
        )])
        .filter(Filter::local_name_regex("def", USER_PATTERN, "i"))
        .filter(Filter::is_in("value", ADMIN_VALUES))
        .filter(Filter::bound("value"))
}
