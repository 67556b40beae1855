//! Text formats for instances.
//!
//! The native format is line oriented. `#` starts a comment and blank lines
//! are ignored. Three header lines come first, then one line per edge:
//!
//! ```text
//! ecc 1
//! nodes 3
//! colors 2
//! # e <color> <weight> <member>...
//! e 0 1 0 1
//! e 1 1/3 1 2
//! ```
//!
//! Weights are nonnegative integers or fractions `num/den` and are kept exact.
//!
//! The simple import format has one edge per line, `color<TAB>node,node,...`,
//! with arbitrary labels. Labels are numbered in order of first appearance,
//! repeated members are merged and every weight is 1.

use std::collections::HashMap;
use std::fmt::Write as _;

use ecc_core::{build_instance, EdgeColoredHypergraph, EdgeSpec, InstanceError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("expected `{0}`")]
    Expected(&'static str),
    #[error("invalid {what} `{token}`")]
    InvalidNumber { what: &'static str, token: String },
    #[error("unsupported format version `{0}`")]
    Version(String),
    #[error("unexpected token `{0}`")]
    Unexpected(String),
    #[error("unexpected end of input, expected `{0}`")]
    Eof(&'static str),
    #[error("missing tab between color and members")]
    MissingTab,
    #[error(transparent)]
    Instance(InstanceError),
}

impl ParseError {
    /// Whether the text was well formed but describes an invalid instance.
    pub fn is_semantic(&self) -> bool {
        matches!(self.kind, ParseErrorKind::Instance(_))
    }
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

/// Splits a line into whitespace-separated tokens with 1-based columns,
/// stopping at `#`.
fn tokens(line: &str) -> Vec<Token<'_>> {
    let content = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token {
                    text: &content[s..i],
                    column: content[..s].chars().count() + 1,
                });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    out
}

fn err(line: usize, column: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, column, kind }
}

fn number<T: std::str::FromStr>(line: usize, tok: &Token<'_>, what: &'static str) -> Result<T, ParseError> {
    tok.text.parse().map_err(|_| {
        err(
            line,
            tok.column,
            ParseErrorKind::InvalidNumber {
                what,
                token: tok.text.to_string(),
            },
        )
    })
}

/// Parses the native format.
pub fn parse_instance(text: &str) -> Result<EdgeColoredHypergraph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, tokens(l)))
        .filter(|(_, t)| !t.is_empty());
    let last_line = text.lines().count().max(1);

    let mut header = |key: &'static str| -> Result<(usize, Token<'_>), ParseError> {
        let (ln, toks) = lines.next().ok_or(err(last_line, 1, ParseErrorKind::Eof(key)))?;
        if toks[0].text != key {
            return Err(err(ln, toks[0].column, ParseErrorKind::Expected(key)));
        }
        if toks.len() > 2 {
            return Err(err(ln, toks[2].column, ParseErrorKind::Unexpected(toks[2].text.to_string())));
        }
        let end = toks[0].column + key.len();
        let mut it = toks.into_iter().skip(1);
        let value = it.next().ok_or(err(ln, end, ParseErrorKind::Expected("a value")))?;
        Ok((ln, value))
    };
    let (ln, v) = header("ecc")?;
    if v.text != "1" {
        return Err(err(ln, v.column, ParseErrorKind::Version(v.text.to_string())));
    }
    let (ln, v) = header("nodes")?;
    let n: usize = number(ln, &v, "node count")?;
    let (ln, v) = header("colors")?;
    let k: usize = number(ln, &v, "color count")?;
    let colors_line = ln;
    let colors_col = v.column;

    let mut edges = Vec::new();
    let mut edge_lines = Vec::new();
    for (ln, toks) in lines {
        if toks[0].text != "e" {
            return Err(err(ln, toks[0].column, ParseErrorKind::Expected("e")));
        }
        let Some(c) = toks.get(1) else {
            return Err(err(ln, toks[0].column + 1, ParseErrorKind::Expected("a color")));
        };
        let color: usize = number(ln, c, "color")?;
        let Some(w) = toks.get(2) else {
            return Err(err(ln, c.column + c.text.len(), ParseErrorKind::Expected("a weight")));
        };
        let weight: Rational = number(ln, w, "weight")?;
        if toks.len() < 4 {
            return Err(err(ln, w.column + w.text.len(), ParseErrorKind::Expected("a member node")));
        }
        let members = toks[3..]
            .iter()
            .map(|t| number(ln, t, "node id"))
            .collect::<Result<Vec<usize>, _>>()?;
        edges.push(EdgeSpec::new(members, color, weight));
        edge_lines.push(ln);
    }
    build_instance(n, k, edges).map_err(|e| {
        let (line, column) = match e.edge() {
            Some(i) => (edge_lines[i], 1),
            None => (colors_line, colors_col),
        };
        err(line, column, ParseErrorKind::Instance(e))
    })
}

/// Writes the native format; [`parse_instance`] reads it back unchanged.
pub fn write_instance(h: &EdgeColoredHypergraph) -> String {
    let mut out = format!("ecc 1\nnodes {}\ncolors {}\n", h.node_count(), h.color_count());
    for e in h.edges() {
        write!(out, "e {} {}", h.color(e), h.weight(e)).unwrap();
        for v in h.members(e) {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// An instance read from the simple format, with the original labels.
#[derive(Debug, Clone)]
pub struct Imported {
    pub instance: EdgeColoredHypergraph,
    pub node_labels: Vec<String>,
    pub color_labels: Vec<String>,
}

fn intern(map: &mut HashMap<String, usize>, labels: &mut Vec<String>, label: &str) -> usize {
    if let Some(&id) = map.get(label) {
        return id;
    }
    let id = labels.len();
    map.insert(label.to_string(), id);
    labels.push(label.to_string());
    id
}

/// Reads `color<TAB>node[,node...]` lines.
pub fn import_simple(text: &str) -> Result<Imported, ParseError> {
    let mut nodes = HashMap::new();
    let mut colors = HashMap::new();
    let mut node_labels = Vec::new();
    let mut color_labels = Vec::new();
    let mut edges = Vec::new();
    let mut edge_lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let Some((color, rest)) = line.split_once('\t') else {
            return Err(err(ln, line.chars().count() + 1, ParseErrorKind::MissingTab));
        };
        let color = color.trim();
        if color.is_empty() {
            return Err(err(ln, 1, ParseErrorKind::Expected("a color label")));
        }
        let c = intern(&mut colors, &mut color_labels, color);
        let mut members = Vec::new();
        let mut column = color.chars().count() + 2;
        for label in rest.split(',') {
            let trimmed = label.trim();
            if trimmed.is_empty() {
                return Err(err(ln, column, ParseErrorKind::Expected("a node label")));
            }
            members.push(intern(&mut nodes, &mut node_labels, trimmed));
            column += label.chars().count() + 1;
        }
        members.sort_unstable();
        members.dedup();
        edges.push(EdgeSpec::unit(members, c));
        edge_lines.push(ln);
    }
    let instance = build_instance(node_labels.len(), color_labels.len().max(1), edges).map_err(|e| {
        let line = e.edge().map_or(1, |i| edge_lines[i]);
        err(line, 1, ParseErrorKind::Instance(e))
    })?;
    Ok(Imported {
        instance,
        node_labels,
        color_labels,
    })
}
