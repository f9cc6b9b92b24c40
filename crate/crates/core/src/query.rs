//! Basic-graph-pattern queries with OPTIONAL blocks and a handful of filters.
//!
//! The supported fragment is `SELECT DISTINCT` over a conjunction of triple
//! patterns, any number of left-outer-joined OPTIONAL blocks, and the filters
//! `regex(str(?v))`, `regex` over an IRI's local name, `str(?v) IN (...)` and
//! `bound(?v)`. Filters apply to the whole group after all OPTIONAL blocks
//! have been joined, as in SPARQL.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use regex::Regex;
use thiserror::Error;

use crate::graph::{Graph, Iri, Literal, Term};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Variable(String);

impl Variable {
    pub fn new(name: impl Into<String>) -> Self {
        Variable(name.into().trim_start_matches('?').to_string())
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "?{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermPattern {
    Var(Variable),
    Term(Term),
}

impl TermPattern {
    fn variable(&self) -> Option<&Variable> {
        match self {
            TermPattern::Var(v) => Some(v),
            TermPattern::Term(_) => None,
        }
    }
}

/// Shorthand for a variable position.
pub fn var(name: &str) -> TermPattern {
    TermPattern::Var(Variable::new(name))
}

impl From<Iri> for TermPattern {
    fn from(iri: Iri) -> Self {
        TermPattern::Term(Term::Iri(iri))
    }
}

impl From<&Iri> for TermPattern {
    fn from(iri: &Iri) -> Self {
        TermPattern::Term(Term::Iri(iri.clone()))
    }
}

impl From<Literal> for TermPattern {
    fn from(lit: Literal) -> Self {
        TermPattern::Term(Term::Literal(lit))
    }
}

impl From<Term> for TermPattern {
    fn from(term: Term) -> Self {
        TermPattern::Term(term)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriplePattern {
    pub subject: TermPattern,
    pub predicate: TermPattern,
    pub object: TermPattern,
}

impl TriplePattern {
    pub fn new(
        subject: impl Into<TermPattern>,
        predicate: impl Into<TermPattern>,
        object: impl Into<TermPattern>,
    ) -> Self {
        TriplePattern {
            subject: subject.into(),
            predicate: predicate.into(),
            object: object.into(),
        }
    }

    fn positions(&self) -> [&TermPattern; 3] {
        [&self.subject, &self.predicate, &self.object]
    }

    fn variables(&self) -> impl Iterator<Item = &Variable> {
        self.positions()
            .into_iter()
            .filter_map(TermPattern::variable)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Filter {
    /// `regex(str(?target), pattern, flags)`
    Regex {
        target: Variable,
        pattern: String,
        flags: String,
    },
    /// `str(?target) IN (values...)`, exact string equality.
    In {
        target: Variable,
        values: Vec<String>,
    },
    Bound(Variable),
    /// Regex over the local name (after the last `#` or `/`) of an IRI.
    LocalNameRegex {
        target: Variable,
        pattern: String,
        flags: String,
    },
}

impl Filter {
    pub fn regex(target: &str, pattern: &str, flags: &str) -> Self {
        Filter::Regex {
            target: Variable::new(target),
            pattern: pattern.to_string(),
            flags: flags.to_string(),
        }
    }

    pub fn local_name_regex(target: &str, pattern: &str, flags: &str) -> Self {
        Filter::LocalNameRegex {
            target: Variable::new(target),
            pattern: pattern.to_string(),
            flags: flags.to_string(),
        }
    }

    pub fn is_in<S: Into<String>>(target: &str, values: impl IntoIterator<Item = S>) -> Self {
        Filter::In {
            target: Variable::new(target),
            values: values.into_iter().map(Into::into).collect(),
        }
    }

    pub fn bound(target: &str) -> Self {
        Filter::Bound(Variable::new(target))
    }

    pub fn target(&self) -> &Variable {
        match self {
            Filter::Regex { target, .. }
            | Filter::In { target, .. }
            | Filter::LocalNameRegex { target, .. } => target,
            Filter::Bound(target) => target,
        }
    }

    fn regex_parts(&self) -> Option<(&str, &str)> {
        match self {
            Filter::Regex { pattern, flags, .. }
            | Filter::LocalNameRegex { pattern, flags, .. } => Some((pattern, flags)),
            _ => None,
        }
    }
}

/// A `SELECT DISTINCT` query.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Query {
    pub select: Vec<Variable>,
    pub patterns: Vec<TriplePattern>,
    pub optionals: Vec<Vec<TriplePattern>>,
    pub filters: Vec<Filter>,
}

impl Query {
    pub fn select<'a>(vars: impl IntoIterator<Item = &'a str>) -> Self {
        Query {
            select: vars.into_iter().map(Variable::new).collect(),
            ..Self::default()
        }
    }

    pub fn pattern(
        mut self,
        s: impl Into<TermPattern>,
        p: impl Into<TermPattern>,
        o: impl Into<TermPattern>,
    ) -> Self {
        self.patterns.push(TriplePattern::new(s, p, o));
        self
    }

    pub fn optional(mut self, block: Vec<TriplePattern>) -> Self {
        self.optionals.push(block);
        self
    }

    pub fn filter(mut self, filter: Filter) -> Self {
        self.filters.push(filter);
        self
    }

    fn pattern_variables(&self) -> BTreeSet<&Variable> {
        self.patterns
            .iter()
            .chain(self.optionals.iter().flatten())
            .flat_map(TriplePattern::variables)
            .collect()
    }

    /// Problems that would make the query unevaluable. Empty means valid.
    pub fn validate(&self) -> Vec<QueryDiagnostic> {
        let mut out = Vec::new();
        if self.patterns.is_empty() {
            out.push(QueryDiagnostic::EmptyWhere);
        }
        let mentioned = self.pattern_variables();
        for v in self
            .select
            .iter()
            .chain(self.filters.iter().map(Filter::target))
        {
            if v.name().is_empty() {
                out.push(QueryDiagnostic::EmptyVariableName);
            } else if !mentioned.contains(v) {
                out.push(QueryDiagnostic::UnknownVariable(v.clone()));
            }
        }
        for v in &mentioned {
            if v.name().is_empty() {
                out.push(QueryDiagnostic::EmptyVariableName);
            }
        }
        for f in &self.filters {
            if let Some((pattern, flags)) = f.regex_parts() {
                if let Err(e) = compile_regex(pattern, flags) {
                    out.push(e);
                }
            }
        }
        out.dedup();
        out
    }

    pub fn evaluate(&self, graph: &Graph) -> Result<ResultSet, QueryError> {
        let diagnostics = self.validate();
        if !diagnostics.is_empty() {
            return Err(QueryError::Invalid(diagnostics));
        }
        let compiled = self
            .filters
            .iter()
            .map(CompiledFilter::compile)
            .collect::<Result<Vec<_>, _>>()?;

        let mut solutions = join_block(graph, &self.patterns, vec![Binding::default()]);
        for block in &self.optionals {
            let mut next = Vec::with_capacity(solutions.len());
            for solution in solutions {
                let extended = join_block(graph, block, vec![solution.clone()]);
                if extended.is_empty() {
                    next.push(solution);
                } else {
                    next.extend(extended);
                }
            }
            solutions = next;
        }

        let rows: BTreeSet<Row> = solutions
            .into_iter()
            .filter(|b| compiled.iter().all(|f| f.accepts(b)))
            .map(|b| Row(self.select.iter().map(|v| b.get(v).cloned()).collect()))
            .collect();
        Ok(ResultSet {
            variables: self.select.clone(),
            rows: rows.into_iter().map(|r| r.0).collect(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QueryDiagnostic {
    EmptyWhere,
    EmptyVariableName,
    UnknownVariable(Variable),
    BadRegex { pattern: String, reason: String },
    BadFlags(String),
}

impl fmt::Display for QueryDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QueryDiagnostic::EmptyWhere => f.write_str("query has no mandatory triple pattern"),
            QueryDiagnostic::EmptyVariableName => f.write_str("variable with empty name"),
            QueryDiagnostic::UnknownVariable(v) => {
                write!(f, "variable {v} is not mentioned in any triple pattern")
            }
            QueryDiagnostic::BadRegex { pattern, reason } => {
                write!(f, "regex `{pattern}` does not compile: {reason}")
            }
            QueryDiagnostic::BadFlags(flags) => write!(f, "unsupported regex flags `{flags}`"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QueryError {
    #[error("invalid query: {}", join_diagnostics(.0))]
    Invalid(Vec<QueryDiagnostic>),
}

fn join_diagnostics(d: &[QueryDiagnostic]) -> String {
    d.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

fn compile_regex(pattern: &str, flags: &str) -> Result<Regex, QueryDiagnostic> {
    if flags.chars().any(|c| c != 'i') {
        return Err(QueryDiagnostic::BadFlags(flags.to_string()));
    }
    let source = if flags.contains('i') {
        format!("(?i:{pattern})")
    } else {
        pattern.to_string()
    };
    Regex::new(&source).map_err(|e| QueryDiagnostic::BadRegex {
        pattern: pattern.to_string(),
        reason: e.to_string(),
    })
}

enum CompiledFilter<'q> {
    Regex(&'q Variable, Regex),
    LocalName(&'q Variable, Regex),
    In(&'q Variable, &'q [String]),
    Bound(&'q Variable),
}

impl<'q> CompiledFilter<'q> {
    fn compile(filter: &'q Filter) -> Result<Self, QueryError> {
        let re = |pattern: &str, flags: &str| {
            compile_regex(pattern, flags).map_err(|d| QueryError::Invalid(vec![d]))
        };
        Ok(match filter {
            Filter::Regex {
                target,
                pattern,
                flags,
            } => CompiledFilter::Regex(target, re(pattern, flags)?),
            Filter::LocalNameRegex {
                target,
                pattern,
                flags,
            } => CompiledFilter::LocalName(target, re(pattern, flags)?),
            Filter::In { target, values } => CompiledFilter::In(target, values),
            Filter::Bound(target) => CompiledFilter::Bound(target),
        })
    }

    // an unbound target is an evaluation error in SPARQL, which rejects the row
    fn accepts(&self, binding: &Binding) -> bool {
        match self {
            CompiledFilter::Bound(v) => binding.get(v).is_some(),
            CompiledFilter::Regex(v, re) => {
                binding.get(v).is_some_and(|t| re.is_match(t.str_value()))
            }
            CompiledFilter::LocalName(v, re) => binding
                .get(v)
                .and_then(Term::as_iri)
                .is_some_and(|iri| re.is_match(iri.local_name())),
            CompiledFilter::In(v, values) => binding
                .get(v)
                .is_some_and(|t| values.iter().any(|x| x == t.str_value())),
        }
    }
}

/// One solution mapping.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Binding(HashMap<Variable, Term>);

impl Binding {
    pub fn get(&self, v: &Variable) -> Option<&Term> {
        self.0.get(v)
    }

    fn resolve<'a>(&'a self, pattern: &'a TermPattern) -> Option<&'a Term> {
        match pattern {
            TermPattern::Term(t) => Some(t),
            TermPattern::Var(v) => self.0.get(v),
        }
    }

    fn bind(&mut self, pattern: &TermPattern, value: &Term) -> bool {
        match pattern {
            TermPattern::Term(t) => t == value,
            TermPattern::Var(v) => match self.0.get(v) {
                Some(existing) => existing == value,
                None => {
                    self.0.insert(v.clone(), value.clone());
                    true
                }
            },
        }
    }
}

fn bound_positions(pattern: &TriplePattern, bound: &BTreeSet<&Variable>) -> usize {
    pattern
        .positions()
        .iter()
        .filter(|p| match p {
            TermPattern::Term(_) => true,
            TermPattern::Var(v) => bound.contains(v),
        })
        .count()
}

/// Greedy most-bound-first ordering of a block's patterns.
fn plan<'a>(patterns: &'a [TriplePattern], seed: &Binding) -> Vec<&'a TriplePattern> {
    let mut bound: BTreeSet<&Variable> = seed.0.keys().collect();
    let mut remaining: Vec<&TriplePattern> = patterns.iter().collect();
    let mut order = Vec::with_capacity(patterns.len());
    while !remaining.is_empty() {
        let (idx, _) = remaining
            .iter()
            .enumerate()
            .max_by(|(ia, a), (ib, b)| {
                bound_positions(a, &bound)
                    .cmp(&bound_positions(b, &bound))
                    .then(ib.cmp(ia))
            })
            .expect("nonempty");
        let next = remaining.remove(idx);
        bound.extend(next.variables());
        order.push(next);
    }
    order
}

fn join_block(graph: &Graph, patterns: &[TriplePattern], seeds: Vec<Binding>) -> Vec<Binding> {
    let mut solutions = seeds;
    let Some(first) = solutions.first() else {
        return solutions;
    };
    let order = plan(patterns, first);
    for pattern in order {
        let mut next = Vec::new();
        for solution in &solutions {
            let s = solution.resolve(&pattern.subject);
            let o = solution.resolve(&pattern.object);
            let p = match solution.resolve(&pattern.predicate) {
                Some(Term::Iri(iri)) => Some(iri),
                Some(_) => continue,
                None => None,
            };
            for triple in graph.triples_matching(s, p, o) {
                let mut extended = solution.clone();
                let predicate = Term::Iri(triple.predicate().clone());
                if extended.bind(&pattern.subject, triple.subject())
                    && extended.bind(&pattern.predicate, &predicate)
                    && extended.bind(&pattern.object, triple.object())
                {
                    next.push(extended);
                }
            }
        }
        solutions = next;
        if solutions.is_empty() {
            break;
        }
    }
    solutions
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct Row(Vec<Option<Term>>);

/// Distinct projected solutions in lexicographic order of serialized terms,
/// unbound sorting first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResultSet {
    variables: Vec<Variable>,
    rows: Vec<Vec<Option<Term>>>,
}

impl ResultSet {
    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn rows(&self) -> &[Vec<Option<Term>>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Rows as name → term maps, omitting unbound variables.
    pub fn bindings(&self) -> Vec<BTreeMap<&str, &Term>> {
        self.rows
            .iter()
            .map(|row| {
                self.variables
                    .iter()
                    .zip(row)
                    .filter_map(|(v, t)| t.as_ref().map(|t| (v.name(), t)))
                    .collect()
            })
            .collect()
    }
}
