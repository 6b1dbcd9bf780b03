//! Line-oriented text format for rotation systems.
//!
//! ```text
//! # comment (also allowed after content on any line)
//! outer: 1 0          # optional: the outer face is the face left of dart 1->0
//! 0: 1 2 3            # vertex id, then neighbors counterclockwise
//! 1: 0 3 2
//! 2: 0 1 3
//! 3: 0 2 1
//!
//! 0: 1 2              # a blank line starts the next record
//! 1: 2 0
//! 2: 0 1
//! ```
//!
//! Within a record every vertex id `0..n` must appear exactly once as a line
//! head; lines may come in any order. Multigraphs repeat a neighbor once per
//! parallel edge; they can be written but are rejected on reading because
//! neighbor lists alone do not say which copies pair up.

use std::fmt::Write as _;

use thiserror::Error;

use super::RotationSystem;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TextRecord {
    pub rotation: RotationSystem,
    /// Dart `(u, v)` whose left face is the outer face.
    pub outer: Option<(usize, usize)>,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

fn parse_ids(line: usize, text: &str) -> Result<Vec<usize>, ParseError> {
    text.split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| err(line, format!("expected a vertex id, found `{t}`"))))
        .collect()
}

struct Pending {
    first_line: usize,
    rows: Vec<(usize, usize, Vec<usize>)>,
    outer: Option<(usize, usize)>,
}

impl Pending {
    fn finish(self) -> Result<TextRecord, ParseError> {
        let n = self.rows.len();
        let mut rotations: Vec<Option<Vec<usize>>> = vec![None; n];
        for (line, v, nbrs) in self.rows {
            if v >= n {
                return Err(err(line, format!("vertex id {v} out of range for a record with {n} vertices")));
            }
            if rotations[v].is_some() {
                return Err(err(line, format!("vertex {v} listed twice")));
            }
            rotations[v] = Some(nbrs);
        }
        let rotations = rotations
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| err(self.first_line, "record does not list every vertex id"))?;
        Ok(TextRecord { rotation: RotationSystem::new(rotations), outer: self.outer })
    }
}

/// Parses every record of a multi-record text.
pub fn parse_records(input: &str) -> Result<Vec<TextRecord>, ParseError> {
    let mut out = Vec::new();
    let mut pending: Option<Pending> = None;
    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if raw.trim().is_empty() {
            if let Some(p) = pending.take() {
                out.push(p.finish()?);
            }
            continue;
        }
        if content.is_empty() {
            continue;
        }
        let p = pending.get_or_insert_with(|| Pending { first_line: line_no, rows: Vec::new(), outer: None });
        let (head, rest) = content
            .split_once(':')
            .ok_or_else(|| err(line_no, "expected `<vertex-id>: <neighbors>` or `outer: <u> <v>`"))?;
        let head = head.trim();
        if head == "outer" {
            let ids = parse_ids(line_no, rest)?;
            if ids.len() != 2 {
                return Err(err(line_no, "`outer:` takes exactly two vertex ids"));
            }
            if p.outer.replace((ids[0], ids[1])).is_some() {
                return Err(err(line_no, "duplicate `outer:` line"));
            }
        } else {
            let v = head
                .parse::<usize>()
                .map_err(|_| err(line_no, format!("expected a vertex id, found `{head}`")))?;
            p.rows.push((line_no, v, parse_ids(line_no, rest)?));
        }
    }
    if let Some(p) = pending.take() {
        out.push(p.finish()?);
    }
    Ok(out)
}

/// Writes one record. `comments` become leading `#` lines.
pub fn write_record(rs: &RotationSystem, outer: Option<(usize, usize)>, comments: &[String]) -> String {
    let mut s = String::new();
    for c in comments {
        let _ = writeln!(s, "# {c}");
    }
    if let Some((u, v)) = outer {
        let _ = writeln!(s, "outer: {u} {v}");
    }
    for (v, rot) in rs.rotations.iter().enumerate() {
        let _ = write!(s, "{v}:");
        for w in rot {
            let _ = write!(s, " {w}");
        }
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_two_records_with_comments() {
        let text = "# K4\n0: 1 2 3\n1: 0 3 2 # trailing\n2: 0 1 3\n3: 0 2 1\n\n\nouter: 1 0\n2: 0 1\n0: 1 2\n1: 2 0\n";
        let recs = parse_records(text).unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[0].rotation.vertex_count(), 4);
        assert_eq!(recs[1].outer, Some((1, 0)));
        assert_eq!(recs[1].rotation.rotations[2], vec![0, 1]);
    }

    #[test]
    fn write_then_parse() {
        let rs = RotationSystem::new(vec![vec![1, 2], vec![2, 0], vec![0, 1]]);
        let text = write_record(&rs, Some((1, 0)), &["triangle".into()]);
        let recs = parse_records(&text).unwrap();
        assert_eq!(recs, vec![TextRecord { rotation: rs, outer: Some((1, 0)) }]);
    }

    #[test]
    fn rejects_missing_vertex_and_garbage() {
        assert!(parse_records("0: 1\n2: 0\n").is_err());
        assert!(parse_records("0: x\n").is_err());
        assert!(parse_records("zero 1 2\n").is_err());
        assert!(parse_records("0: 1\n0: 1\n").is_err());
        assert_eq!(parse_records("outer: 1\n").unwrap_err().line, 1);
    }
}
