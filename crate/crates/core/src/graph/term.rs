use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::GraphError;

const XSD_INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";
const XSD_BOOLEAN: &str = "http://www.w3.org/2001/XMLSchema#boolean";
const XSD_DOUBLE: &str = "http://www.w3.org/2001/XMLSchema#double";
const XSD_STRING: &str = "http://www.w3.org/2001/XMLSchema#string";

/// An absolute IRI.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Iri(Arc<str>);

impl Iri {
    pub fn new(full: impl AsRef<str>) -> Result<Self, GraphError> {
        let full = full.as_ref();
        match full.find(':') {
            Some(idx) if idx > 0 => Ok(Iri(Arc::from(full))),
            _ => Err(GraphError::InvalidIri(full.to_string())),
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Segment after the last `#` or `/`.
    pub fn local_name(&self) -> &str {
        let s = self.as_str();
        match s.rfind(['#', '/']) {
            Some(idx) => &s[idx + 1..],
            None => s.split_once(':').map_or(s, |(_, rest)| rest),
        }
    }
}

impl fmt::Debug for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Datatype {
    String,
    Integer,
    Boolean,
    Float,
}

impl Datatype {
    pub fn iri(self) -> &'static str {
        match self {
            Datatype::String => XSD_STRING,
            Datatype::Integer => XSD_INTEGER,
            Datatype::Boolean => XSD_BOOLEAN,
            Datatype::Float => XSD_DOUBLE,
        }
    }

    pub fn from_iri(iri: &str) -> Option<Self> {
        match iri {
            XSD_STRING => Some(Datatype::String),
            XSD_INTEGER => Some(Datatype::Integer),
            XSD_BOOLEAN => Some(Datatype::Boolean),
            XSD_DOUBLE => Some(Datatype::Float),
            _ => None,
        }
    }

    fn accepts(self, lexical: &str) -> bool {
        match self {
            Datatype::String => true,
            Datatype::Integer => lexical.parse::<i128>().is_ok(),
            Datatype::Boolean => matches!(lexical, "true" | "false"),
            Datatype::Float => {
                matches!(lexical, "INF" | "-INF" | "NaN")
                    || (lexical.parse::<f64>().is_ok()
                        && !lexical
                            .chars()
                            .any(|c| c.is_ascii_alphabetic() && c != 'e' && c != 'E'))
            }
        }
    }
}

/// A typed literal. The lexical form always parses under its datatype.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    lexical: Arc<str>,
    datatype: Datatype,
}

impl Literal {
    pub fn new(lexical: impl AsRef<str>, datatype: Datatype) -> Result<Self, GraphError> {
        let lexical = lexical.as_ref();
        if !datatype.accepts(lexical) {
            return Err(GraphError::InvalidLiteral {
                lexical: lexical.to_string(),
                datatype,
            });
        }
        Ok(Literal {
            lexical: Arc::from(lexical),
            datatype,
        })
    }

    pub fn string(lexical: impl AsRef<str>) -> Self {
        Literal {
            lexical: Arc::from(lexical.as_ref()),
            datatype: Datatype::String,
        }
    }

    pub fn integer(value: i64) -> Self {
        Literal {
            lexical: Arc::from(value.to_string()),
            datatype: Datatype::Integer,
        }
    }

    pub fn boolean(value: bool) -> Self {
        Literal {
            lexical: Arc::from(if value { "true" } else { "false" }),
            datatype: Datatype::Boolean,
        }
    }

    pub fn float(value: f64) -> Self {
        let lexical = if value.is_nan() {
            "NaN".to_string()
        } else if value.is_infinite() {
            if value > 0.0 { "INF" } else { "-INF" }.to_string()
        } else {
            format!("{value:?}")
        };
        Literal {
            lexical: Arc::from(lexical),
            datatype: Datatype::Float,
        }
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> Datatype {
        self.datatype
    }
}

/// Blank node label, unique within one graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlankNode(Arc<str>);

impl BlankNode {
    pub fn new(id: impl AsRef<str>) -> Result<Self, GraphError> {
        let id = id.as_ref();
        let valid = !id.is_empty()
            && id
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-');
        if valid {
            Ok(BlankNode(Arc::from(id)))
        } else {
            Err(GraphError::InvalidBlankNode(id.to_string()))
        }
    }

    pub fn id(&self) -> &str {
        &self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Iri(Iri),
    Literal(Literal),
    Blank(BlankNode),
}

impl Term {
    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(iri) => Some(iri),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(lit) => Some(lit),
            _ => None,
        }
    }

    /// `str()` in the query sense: full IRI, lexical form, or blank label.
    pub fn str_value(&self) -> &str {
        match self {
            Term::Iri(iri) => iri.as_str(),
            Term::Literal(lit) => lit.lexical(),
            Term::Blank(b) => b.id(),
        }
    }

    /// Canonical N-Triples form of this term.
    pub fn to_ntriples(&self) -> String {
        let mut out = String::new();
        self.write_ntriples(&mut out);
        out
    }

    pub(crate) fn write_ntriples(&self, out: &mut String) {
        match self {
            Term::Iri(iri) => write_iri(iri.as_str(), out),
            Term::Blank(b) => {
                out.push_str("_:");
                out.push_str(b.id());
            }
            Term::Literal(lit) => {
                out.push('"');
                escape_literal(lit.lexical(), out);
                out.push('"');
                if lit.datatype() != Datatype::String {
                    out.push_str("^^");
                    write_iri(lit.datatype().iri(), out);
                }
            }
        }
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        self.to_ntriples().cmp(&other.to_ntriples())
    }
}

impl From<Iri> for Term {
    fn from(iri: Iri) -> Self {
        Term::Iri(iri)
    }
}

impl From<Literal> for Term {
    fn from(lit: Literal) -> Self {
        Term::Literal(lit)
    }
}

impl From<BlankNode> for Term {
    fn from(b: BlankNode) -> Self {
        Term::Blank(b)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ntriples())
    }
}

/// Subject position: an IRI or a blank node, never a literal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Subject {
    Iri(Iri),
    Blank(BlankNode),
}

impl From<Iri> for Subject {
    fn from(iri: Iri) -> Self {
        Subject::Iri(iri)
    }
}

impl From<BlankNode> for Subject {
    fn from(b: BlankNode) -> Self {
        Subject::Blank(b)
    }
}

impl From<Subject> for Term {
    fn from(s: Subject) -> Self {
        match s {
            Subject::Iri(iri) => Term::Iri(iri),
            Subject::Blank(b) => Term::Blank(b),
        }
    }
}

fn write_iri(iri: &str, out: &mut String) {
    out.push('<');
    for c in iri.chars() {
        match c {
            '\u{0}'..='\u{20}' | '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\' => {
                out.push_str(&format!("\\u{:04X}", c as u32));
            }
            _ => out.push(c),
        }
    }
    out.push('>');
}

fn escape_literal(lexical: &str, out: &mut String) {
    for c in lexical.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            '\u{8}' => out.push_str("\\b"),
            '\u{c}' => out.push_str("\\f"),
            '\u{0}'..='\u{1f}' | '\u{7f}' => out.push_str(&format!("\\u{:04X}", c as u32)),
            _ => out.push(c),
        }
    }
}
