//! Brute-force reference evaluator: every variable is tried against every
//! term that can occupy its positions, and a candidate survives only when
//! each instantiated pattern is a member of the graph.

use std::collections::{BTreeSet, HashSet};

use proptest::prelude::*;
use regex::Regex;
use toscasmell_core::graph::{BlankNode, Iri, Literal, Subject, Term, Triple, EX};
use toscasmell_core::query::{var, Filter, Query, TermPattern, TriplePattern};

#[derive(Clone, Debug)]
pub enum Slot {
    Var(&'static str),
    Const(Term),
}

pub type Pat = [Slot; 3];

#[derive(Clone, Debug)]
pub enum FilterSpec {
    Bound(&'static str),
    In(&'static str, Vec<String>),
    Regex(&'static str, &'static str, &'static str),
    LocalName(&'static str, &'static str, &'static str),
}

#[derive(Clone, Debug)]
pub struct QuerySpec {
    pub select: Vec<&'static str>,
    pub patterns: Vec<Pat>,
    pub optionals: Vec<Vec<Pat>>,
    pub filters: Vec<FilterSpec>,
}

#[derive(Clone, Debug)]
pub struct Case {
    pub triples: Vec<Triple>,
    pub query: QuerySpec,
}

const NODE_VARS: [&str; 4] = ["a", "b", "c", "d"];
const PRED_VARS: [&str; 2] = ["p", "q"];

fn node(i: u8) -> Term {
    Term::Iri(Iri::new(format!("{EX}n{i}")).unwrap())
}

fn pred(i: u8) -> Term {
    Term::Iri(Iri::new(format!("{EX}p{i}")).unwrap())
}

fn subject_term() -> impl Strategy<Value = Term> {
    prop_oneof![
        4 => (0u8..5).prop_map(node),
        1 => (0u8..2).prop_map(|i| Term::Blank(BlankNode::new(format!("b{i}")).unwrap())),
    ]
}

fn object_term() -> impl Strategy<Value = Term> {
    prop_oneof![
        3 => subject_term(),
        1 => prop::sample::select(vec!["v0", "v1", "admin"]).prop_map(|s| Term::Literal(Literal::string(s))),
        1 => (0i64..2).prop_map(|i| Term::Literal(Literal::integer(i))),
    ]
}

fn triple() -> impl Strategy<Value = Triple> {
    (subject_term(), 0u8..3, object_term()).prop_map(|(s, p, o)| {
        let s = match s {
            Term::Iri(i) => Subject::Iri(i),
            Term::Blank(b) => Subject::Blank(b),
            Term::Literal(_) => unreachable!(),
        };
        let Term::Iri(p) = pred(p) else {
            unreachable!()
        };
        Triple::new(s, p, o)
    })
}

fn slot(position: usize) -> impl Strategy<Value = Slot> {
    let (constant, vars) = match position {
        0 => (subject_term().boxed(), NODE_VARS.to_vec()),
        1 => ((0u8..3).prop_map(pred).boxed(), PRED_VARS.to_vec()),
        _ => (object_term().boxed(), NODE_VARS.to_vec()),
    };
    prop_oneof![
        3 => prop::sample::select(vars).prop_map(Slot::Var),
        1 => constant.prop_map(Slot::Const),
    ]
}

fn pattern() -> impl Strategy<Value = Pat> {
    (slot(0), slot(1), slot(2)).prop_map(|(s, p, o)| [s, p, o])
}

fn vars_of(patterns: &[Pat]) -> BTreeSet<&'static str> {
    patterns
        .iter()
        .flatten()
        .filter_map(|s| match s {
            Slot::Var(v) => Some(*v),
            Slot::Const(_) => None,
        })
        .collect()
}

fn filter_for(v: &'static str) -> impl Strategy<Value = FilterSpec> {
    prop_oneof![
        Just(FilterSpec::Bound(v)),
        prop::sample::subsequence(vec!["v0", "admin", "0", "1"], 1..3)
            .prop_map(move |vals| FilterSpec::In(v, vals.into_iter().map(String::from).collect())),
        prop::sample::select(vec![("n[0-2]$", ""), ("^V", "i"), ("^_?b", "")])
            .prop_map(move |(p, f)| FilterSpec::Regex(v, p, f)),
        prop::sample::select(vec![("^n[13]$", ""), ("^N0", "i")])
            .prop_map(move |(p, f)| FilterSpec::LocalName(v, p, f)),
    ]
}

fn query_spec() -> impl Strategy<Value = QuerySpec> {
    (
        prop::collection::vec(pattern(), 1..=4),
        prop::collection::vec(prop::collection::vec(pattern(), 1..=2), 0..=2),
    )
        .prop_filter("needs a variable", |(m, o)| {
            let mut all = m.clone();
            all.extend(o.iter().flatten().cloned());
            !vars_of(&all).is_empty()
        })
        .prop_flat_map(|(patterns, optionals)| {
            let mut all = patterns.clone();
            all.extend(optionals.iter().flatten().cloned());
            let vars: Vec<&'static str> = vars_of(&all).into_iter().collect();
            let filters = prop::collection::vec(
                prop::sample::select(vars.clone()).prop_flat_map(filter_for),
                0..=2,
            );
            let select = prop::sample::subsequence(vars.clone(), 1..=vars.len());
            (Just(patterns), Just(optionals), filters, select)
        })
        .prop_map(|(patterns, optionals, filters, select)| QuerySpec {
            select,
            patterns,
            optionals,
            filters,
        })
}

pub fn case_strategy() -> impl Strategy<Value = Case> {
    (prop::collection::vec(triple(), 0..=200), query_spec())
        .prop_map(|(triples, query)| Case { triples, query })
}

fn conv(s: &Slot) -> TermPattern {
    match s {
        Slot::Var(v) => var(v),
        Slot::Const(t) => TermPattern::from(t.clone()),
    }
}

fn to_pattern(p: &Pat) -> TriplePattern {
    TriplePattern::new(conv(&p[0]), conv(&p[1]), conv(&p[2]))
}

impl QuerySpec {
    pub fn to_query(&self) -> Query {
        let mut q = Query::select(self.select.iter().copied());
        for p in &self.patterns {
            q = q.pattern(conv(&p[0]), conv(&p[1]), conv(&p[2]));
        }
        for block in &self.optionals {
            q = q.optional(block.iter().map(to_pattern).collect());
        }
        for f in &self.filters {
            q = q.filter(match f {
                FilterSpec::Bound(v) => Filter::bound(v),
                FilterSpec::In(v, vals) => Filter::is_in(v, vals.iter().cloned()),
                FilterSpec::Regex(v, p, fl) => Filter::regex(v, p, fl),
                FilterSpec::LocalName(v, p, fl) => Filter::local_name_regex(v, p, fl),
            });
        }
        q
    }
}

type Assignment = Vec<(&'static str, Term)>;

fn lookup<'a>(a: &'a Assignment, v: &str) -> Option<&'a Term> {
    a.iter().find(|(name, _)| *name == v).map(|(_, t)| t)
}

fn instantiate(p: &Pat, a: &Assignment) -> Option<(Term, Term, Term)> {
    let get = |s: &Slot| match s {
        Slot::Var(v) => lookup(a, v).cloned(),
        Slot::Const(t) => Some(t.clone()),
    };
    Some((get(&p[0])?, get(&p[1])?, get(&p[2])?))
}

/// All extensions of `base` over the variables of `block` it leaves unbound.
fn extensions(
    block: &[Pat],
    base: &Assignment,
    graph: &HashSet<(Term, Term, Term)>,
    positions: &[BTreeSet<Term>; 3],
) -> Vec<Assignment> {
    let mut free: Vec<(&'static str, BTreeSet<Term>)> = Vec::new();
    for p in block {
        for (i, s) in p.iter().enumerate() {
            if let Slot::Var(v) = s {
                if lookup(base, v).is_some() {
                    continue;
                }
                match free.iter_mut().find(|(name, _)| name == v) {
                    Some((_, dom)) => *dom = dom.intersection(&positions[i]).cloned().collect(),
                    None => free.push((v, positions[i].clone())),
                }
            }
        }
    }
    let mut out = Vec::new();
    let mut current = base.clone();
    enumerate(&free, 0, &mut current, &mut |a| {
        if block
            .iter()
            .all(|p| instantiate(p, a).is_some_and(|t| graph.contains(&t)))
        {
            out.push(a.clone());
        }
    });
    out
}

fn enumerate(
    free: &[(&'static str, BTreeSet<Term>)],
    i: usize,
    current: &mut Assignment,
    visit: &mut dyn FnMut(&Assignment),
) {
    if i == free.len() {
        visit(current);
        return;
    }
    for t in &free[i].1 {
        current.push((free[i].0, t.clone()));
        enumerate(free, i + 1, current, visit);
        current.pop();
    }
}

fn local_name(iri: &str) -> &str {
    iri.rsplit(['/', '#']).next().unwrap_or(iri)
}

fn str_of(t: &Term) -> String {
    match t {
        Term::Iri(i) => i.as_str().to_string(),
        Term::Literal(l) => l.lexical().to_string(),
        Term::Blank(b) => b.id().to_string(),
    }
}

fn passes(f: &FilterSpec, a: &Assignment) -> bool {
    let compile = |p: &str, fl: &str| {
        Regex::new(&if fl == "i" {
            format!("(?i){p}")
        } else {
            p.to_string()
        })
        .unwrap()
    };
    match f {
        FilterSpec::Bound(v) => lookup(a, v).is_some(),
        FilterSpec::In(v, vals) => lookup(a, v).is_some_and(|t| vals.contains(&str_of(t))),
        FilterSpec::Regex(v, p, fl) => {
            lookup(a, v).is_some_and(|t| compile(p, fl).is_match(&str_of(t)))
        }
        FilterSpec::LocalName(v, p, fl) => lookup(a, v).is_some_and(|t| match t {
            Term::Iri(i) => compile(p, fl).is_match(local_name(i.as_str())),
            _ => false,
        }),
    }
}

/// Distinct projected rows, each term in N-Triples form, sorted.
pub fn oracle(triples: &[Triple], q: &QuerySpec) -> Vec<Vec<Option<String>>> {
    let graph: HashSet<(Term, Term, Term)> = triples
        .iter()
        .map(|t| {
            (
                t.subject().clone(),
                Term::Iri(t.predicate().clone()),
                t.object().clone(),
            )
        })
        .collect();
    let mut positions: [BTreeSet<Term>; 3] = Default::default();
    for (s, p, o) in &graph {
        positions[0].insert(s.clone());
        positions[1].insert(p.clone());
        positions[2].insert(o.clone());
    }
    let mut solutions = extensions(&q.patterns, &Vec::new(), &graph, &positions);
    for block in &q.optionals {
        let mut next = Vec::new();
        for s in solutions {
            let ext = extensions(block, &s, &graph, &positions);
            if ext.is_empty() {
                next.push(s);
            } else {
                next.extend(ext);
            }
        }
        solutions = next;
    }
    let rows: BTreeSet<Vec<Option<String>>> = solutions
        .iter()
        .filter(|a| q.filters.iter().all(|f| passes(f, a)))
        .map(|a| {
            q.select
                .iter()
                .map(|v| lookup(a, v).map(Term::to_ntriples))
                .collect()
        })
        .collect();
    rows.into_iter().collect()
}

/// The engine's answer in the oracle's row format.
pub fn engine(triples: &[Triple], q: &QuerySpec) -> Vec<Vec<Option<String>>> {
    let graph: toscasmell_core::Graph = triples.iter().cloned().collect();
    q.to_query()
        .evaluate(&graph)
        .unwrap()
        .rows()
        .iter()
        .map(|row| {
            row.iter()
                .map(|t| t.as_ref().map(Term::to_ntriples))
                .collect()
        })
        .collect()
}
