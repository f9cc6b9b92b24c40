//! A small N-Triples reader, written against the grammar rather than the
//! writer, for round-trip checks.

use toscasmell_core::graph::{BlankNode, Datatype, Graph, Iri, Literal, Subject, Term, Triple};

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    line: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(line: &'a str) -> Self {
        Cursor {
            chars: line.chars().collect(),
            pos: 0,
            line,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Result<char, String> {
        let c = self
            .peek()
            .ok_or_else(|| format!("unexpected end: {}", self.line))?;
        self.pos += 1;
        Ok(c)
    }

    fn expect(&mut self, want: char) -> Result<(), String> {
        let got = self.bump()?;
        if got == want {
            Ok(())
        } else {
            Err(format!("expected `{want}`, got `{got}` in {}", self.line))
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(' ' | '\t')) {
            self.pos += 1;
        }
    }

    fn hex(&mut self, n: usize) -> Result<char, String> {
        let mut code = 0u32;
        for _ in 0..n {
            let d = self.bump()?.to_digit(16).ok_or("bad hex digit")?;
            code = code * 16 + d;
        }
        char::from_u32(code).ok_or_else(|| format!("bad code point {code:x}"))
    }

    fn iri(&mut self) -> Result<Iri, String> {
        self.expect('<')?;
        let mut s = String::new();
        loop {
            match self.bump()? {
                '>' => break,
                '\\' => match self.bump()? {
                    'u' => s.push(self.hex(4)?),
                    'U' => s.push(self.hex(8)?),
                    c => return Err(format!("bad IRI escape \\{c}")),
                },
                c => s.push(c),
            }
        }
        Iri::new(s).map_err(|e| e.to_string())
    }

    fn blank(&mut self) -> Result<BlankNode, String> {
        self.expect('_')?;
        self.expect(':')?;
        let mut id = String::new();
        while let Some(c) = self.peek() {
            if c == ' ' || c == '\t' {
                break;
            }
            id.push(c);
            self.pos += 1;
        }
        BlankNode::new(id).map_err(|e| e.to_string())
    }

    fn literal(&mut self) -> Result<Literal, String> {
        self.expect('"')?;
        let mut s = String::new();
        loop {
            match self.bump()? {
                '"' => break,
                '\\' => s.push(match self.bump()? {
                    't' => '\t',
                    'b' => '\u{8}',
                    'n' => '\n',
                    'r' => '\r',
                    'f' => '\u{c}',
                    '"' => '"',
                    '\'' => '\'',
                    '\\' => '\\',
                    'u' => self.hex(4)?,
                    'U' => self.hex(8)?,
                    c => return Err(format!("bad literal escape \\{c}")),
                }),
                c => s.push(c),
            }
        }
        let datatype = if self.peek() == Some('^') {
            self.expect('^')?;
            self.expect('^')?;
            let dt = self.iri()?;
            Datatype::from_iri(dt.as_str())
                .ok_or_else(|| format!("unsupported datatype {}", dt.as_str()))?
        } else {
            Datatype::String
        };
        Literal::new(s, datatype).map_err(|e| e.to_string())
    }

    fn term(&mut self) -> Result<Term, String> {
        match self.peek() {
            Some('<') => self.iri().map(Term::Iri),
            Some('_') => self.blank().map(Term::Blank),
            Some('"') => self.literal().map(Term::Literal),
            other => Err(format!("unexpected {other:?} in {}", self.line)),
        }
    }
}

pub fn parse_line(line: &str) -> Result<Triple, String> {
    let mut c = Cursor::new(line);
    let subject = match c.term()? {
        Term::Iri(i) => Subject::Iri(i),
        Term::Blank(b) => Subject::Blank(b),
        Term::Literal(_) => return Err("literal subject".into()),
    };
    c.skip_ws();
    let predicate = c.iri()?;
    c.skip_ws();
    let object = c.term()?;
    c.skip_ws();
    c.expect('.')?;
    c.skip_ws();
    if c.peek().is_some() {
        return Err(format!("trailing text in {line}"));
    }
    Ok(Triple::new(subject, predicate, object))
}

pub fn parse_document(text: &str) -> Result<Graph, String> {
    let mut g = Graph::new();
    for line in text.lines() {
        if line.trim().is_empty() {
            continue;
        }
        g.insert(parse_line(line)?);
    }
    Ok(g)
}

pub mod gen {
    use proptest::prelude::*;
    use toscasmell_core::graph::{BlankNode, Iri, Literal, Subject, Term, Triple, EX};

    /// Text that exercises every escape: quotes, backslashes, control
    /// characters, angle brackets, braces and non-ASCII.
    pub fn nasty_text() -> impl Strategy<Value = String> {
        let piece = prop_oneof![
            4 => "[a-z0-9]{1,4}",
            1 => prop::sample::select(vec![
                "\"", "\\", "\n", "\r", "\t", "\u{8}", "\u{c}", "\u{0}", "\u{1f}", "\u{7f}",
                " ", "<", ">", "{", "}", "|", "^", "`", "é", "\u{1F600}", "\u{2028}", "'",
                "#", "%20", "/",
            ])
            .prop_map(String::from),
        ];
        prop::collection::vec(piece, 0..6).prop_map(|v| v.concat())
    }

    fn iri() -> impl Strategy<Value = Iri> {
        nasty_text().prop_map(|s| Iri::new(format!("{EX}{s}")).unwrap())
    }

    fn literal() -> impl Strategy<Value = Literal> {
        prop_oneof![
            nasty_text().prop_map(Literal::string),
            any::<i64>().prop_map(Literal::integer),
            any::<bool>().prop_map(Literal::boolean),
            any::<f64>().prop_map(Literal::float),
        ]
    }

    fn subject() -> impl Strategy<Value = Subject> {
        prop_oneof![
            4 => iri().prop_map(Subject::Iri),
            1 => "[A-Za-z0-9_-]{1,6}".prop_map(|s| Subject::Blank(BlankNode::new(s).unwrap())),
        ]
    }

    pub fn triple() -> impl Strategy<Value = Triple> {
        let object = prop_oneof![
            iri().prop_map(Term::Iri),
            literal().prop_map(Term::Literal),
            "[A-Za-z0-9_-]{1,6}".prop_map(|s| Term::Blank(BlankNode::new(s).unwrap())),
        ];
        (subject(), iri(), object).prop_map(|(s, p, o)| Triple::new(s, p, o))
    }

    pub fn triples() -> impl Strategy<Value = Vec<Triple>> {
        prop::collection::vec(triple(), 0..=200)
    }
}
