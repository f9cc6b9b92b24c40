//! Positioned YAML tree built from parser events.

use std::collections::HashMap;

use saphyr_parser::{Event, Parser, ScalarStyle, Span};

/// 1-based line and column.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl Position {
    fn from_span(span: &Span) -> Self {
        Position {
            line: span.start.line(),
            column: span.start.col() + 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum YamlNode {
    Scalar {
        value: String,
        quoted: bool,
        pos: Position,
    },
    Sequence {
        items: Vec<YamlNode>,
        pos: Position,
    },
    Mapping {
        entries: Vec<(YamlNode, YamlNode)>,
        pos: Position,
    },
}

impl YamlNode {
    pub fn pos(&self) -> Position {
        match self {
            YamlNode::Scalar { pos, .. }
            | YamlNode::Sequence { pos, .. }
            | YamlNode::Mapping { pos, .. } => *pos,
        }
    }

    pub fn as_str(&self) -> Option<&str> {
        match self {
            YamlNode::Scalar { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn entries(&self) -> Option<&[(YamlNode, YamlNode)]> {
        match self {
            YamlNode::Mapping { entries, .. } => Some(entries),
            _ => None,
        }
    }

    /// First value whose key is the scalar `key`.
    pub fn get(&self, key: &str) -> Option<&YamlNode> {
        self.entries()?
            .iter()
            .find(|(k, _)| k.as_str() == Some(key))
            .map(|(_, v)| v)
    }

    /// Plain `~`, `null`, or an empty plain scalar.
    pub fn is_null(&self) -> bool {
        matches!(self, YamlNode::Scalar { value, quoted: false, .. }
            if matches!(value.as_str(), "" | "~" | "null" | "Null" | "NULL"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YamlError {
    pub message: String,
    pub pos: Position,
}

/// Character ranges (by char index) covered by quoted or block scalars.
pub(crate) type ScalarRanges = Vec<(usize, usize)>;

#[derive(Debug)]
pub struct Document {
    /// `None` for an empty stream.
    pub root: Option<YamlNode>,
    pub(crate) literal_ranges: ScalarRanges,
}

pub fn load(source: &str) -> Result<Document, YamlError> {
    let mut events = Vec::new();
    for item in Parser::new_from_str(source) {
        match item {
            Ok(ev) => events.push(ev),
            Err(e) => {
                return Err(YamlError {
                    message: e.info().to_string(),
                    pos: Position {
                        line: e.marker().line().max(1),
                        column: e.marker().col() + 1,
                    },
                })
            }
        }
    }
    let mut builder = Builder {
        events: events.into_iter(),
        anchors: HashMap::new(),
        literal_ranges: Vec::new(),
    };
    let root = builder.document()?;
    let chars: Vec<char> = source.chars().collect();
    let literal_ranges = builder
        .literal_ranges
        .into_iter()
        .map(|(start, end)| (start, quoted_end(&chars, start).unwrap_or(end)))
        .collect();
    Ok(Document {
        root,
        literal_ranges,
    })
}

/// The parser's span for a quoted scalar runs past the closing quote into
/// trailing blanks and comments, so the end is recomputed from the source.
fn quoted_end(chars: &[char], start: usize) -> Option<usize> {
    let quote = *chars.get(start)?;
    let mut i = start + 1;
    match quote {
        '\'' => {
            while i < chars.len() {
                if chars[i] == '\'' {
                    if chars.get(i + 1) == Some(&'\'') {
                        i += 2;
                        continue;
                    }
                    return Some(i + 1);
                }
                i += 1;
            }
        }
        '"' => {
            while i < chars.len() {
                match chars[i] {
                    '\\' => i += 2,
                    '"' => return Some(i + 1),
                    _ => i += 1,
                }
            }
        }
        _ => {}
    }
    None
}

struct Builder<'a, I: Iterator<Item = (Event<'a>, Span)>> {
    events: I,
    anchors: HashMap<usize, YamlNode>,
    literal_ranges: ScalarRanges,
}

impl<'a, I: Iterator<Item = (Event<'a>, Span)>> Builder<'a, I> {
    fn document(&mut self) -> Result<Option<YamlNode>, YamlError> {
        let mut root = None;
        let mut documents = 0usize;
        while let Some((event, span)) = self.events.next() {
            match event {
                Event::DocumentStart(_) => {
                    documents += 1;
                    if documents > 1 {
                        return Err(YamlError {
                            message: "multiple YAML documents in one file are not supported".into(),
                            pos: Position::from_span(&span),
                        });
                    }
                }
                Event::StreamStart | Event::StreamEnd | Event::DocumentEnd | Event::Nothing => {}
                other => root = Some(self.node(other, span)?),
            }
        }
        Ok(root)
    }

    fn remember(&mut self, anchor: usize, node: &YamlNode) {
        if anchor > 0 {
            self.anchors.insert(anchor, node.clone());
        }
    }

    fn node(&mut self, event: Event<'a>, span: Span) -> Result<YamlNode, YamlError> {
        let pos = Position::from_span(&span);
        match event {
            Event::Scalar(value, style, anchor, _tag) => {
                let quoted = !matches!(style, ScalarStyle::Plain);
                if quoted {
                    self.literal_ranges
                        .push((span.start.index(), span.end.index()));
                }
                let node = YamlNode::Scalar {
                    value: value.into_owned(),
                    quoted,
                    pos,
                };
                self.remember(anchor, &node);
                Ok(node)
            }
            Event::SequenceStart(anchor, _) => {
                let mut items = Vec::new();
                loop {
                    let (ev, sp) = self.next(pos)?;
                    if matches!(ev, Event::SequenceEnd) {
                        break;
                    }
                    items.push(self.node(ev, sp)?);
                }
                let node = YamlNode::Sequence { items, pos };
                self.remember(anchor, &node);
                Ok(node)
            }
            Event::MappingStart(anchor, _) => {
                let mut entries = Vec::new();
                loop {
                    let (ev, sp) = self.next(pos)?;
                    if matches!(ev, Event::MappingEnd) {
                        break;
                    }
                    let key = self.node(ev, sp)?;
                    let (ev, sp) = self.next(pos)?;
                    let value = self.node(ev, sp)?;
                    entries.push((key, value));
                }
                let node = YamlNode::Mapping { entries, pos };
                self.remember(anchor, &node);
                Ok(node)
            }
            Event::Alias(anchor) => self.anchors.get(&anchor).cloned().ok_or(YamlError {
                message: format!("unknown anchor #{anchor}"),
                pos,
            }),
            other => Err(YamlError {
                message: format!("unexpected YAML event {other:?}"),
                pos,
            }),
        }
    }

    fn next(&mut self, pos: Position) -> Result<(Event<'a>, Span), YamlError> {
        self.events.next().ok_or(YamlError {
            message: "unexpected end of YAML stream".into(),
            pos,
        })
    }
}
