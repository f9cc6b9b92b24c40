use serde::{Deserialize, Serialize};

use super::yaml;

/// A `#` comment. `text` excludes the leading `#`; line and column are 1-based
/// and point at the `#`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comment {
    pub text: String,
    pub line: usize,
    pub column: usize,
}

/// Every comment outside quoted and block scalars, in source order.
///
/// A shebang on the first line and an editor encoding declaration on one of
/// the first two lines are not reported.
pub fn collect_comments(source: &str) -> Vec<Comment> {
    let ranges = match yaml::load(source) {
        Ok(doc) => Some(doc.literal_ranges),
        Err(_) => None,
    };
    let mut comments = Vec::new();
    let mut char_idx = 0usize;
    let mut in_single = false;
    let mut in_double = false;
    for (line_no, raw_line) in source.split('\n').enumerate() {
        let line = raw_line.strip_suffix('\r').unwrap_or(raw_line);
        let mut prev: Option<char> = None;
        for (col, (byte_idx, c)) in line.char_indices().enumerate() {
            let idx = char_idx + col;
            if ranges.is_none() {
                match c {
                    '\'' if !in_double => in_single = !in_single,
                    '"' if !in_single && prev != Some('\\') => in_double = !in_double,
                    _ => {}
                }
            }
            let literal = || match &ranges {
                Some(ranges) => ranges.iter().any(|&(s, e)| idx >= s && idx < e),
                None => in_single || in_double,
            };
            if c == '#' && prev.is_none_or(char::is_whitespace) && !literal() {
                let text = &line[byte_idx + 1..];
                if !is_preamble(line_no + 1, col, text) {
                    comments.push(Comment {
                        text: text.to_string(),
                        line: line_no + 1,
                        column: col + 1,
                    });
                }
                break;
            }
            prev = Some(c);
        }
        char_idx += raw_line.chars().count() + 1;
    }
    comments
}

fn is_preamble(line: usize, col: usize, text: &str) -> bool {
    if col != 0 {
        return false;
    }
    (line == 1 && text.starts_with('!'))
        || (line <= 2 && (text.contains("coding:") || text.contains("coding=")))
}
