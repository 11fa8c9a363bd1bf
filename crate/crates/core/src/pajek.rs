//! Pajek NET subset, plain edge lists, and DOT export.
//!
//! Supported NET content: an optional `*Network` line, `*Vertices n`, vertex
//! lines `i "label"`, and `*Arcs` / `*Edges` sections with lines `u v [w]`.
//! Keywords are case-insensitive, `%` starts a comment line, and a missing
//! weight is 1. Anything else (`*Matrix`, list sections, coordinates, shapes,
//! line attributes) is rejected.
//!
//! The parsers keep the input as written; loops and parallel lines are dealt
//! with when a [`Network`] is built from the document.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::engine::CoreHierarchy;
use crate::error::{Error, Result};
use crate::graph::{BuildOptions, Network};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct NetDocument<T> {
    pub vertex_count: usize,
    /// One entry per vertex; `None` when the file gives no label.
    pub labels: Vec<Option<String>>,
    /// Directed lines, 1-based endpoints.
    pub arcs: Vec<(usize, usize, T)>,
    /// Undirected lines, 1-based endpoints.
    pub edges: Vec<(usize, usize, T)>,
}

impl<T: Scalar> NetDocument<T> {
    pub fn empty() -> Self {
        NetDocument { vertex_count: 0, labels: Vec::new(), arcs: Vec::new(), edges: Vec::new() }
    }

    /// Label of 1-based vertex `i`, falling back to its number.
    pub fn label(&self, i: usize) -> String {
        self.labels
            .get(i - 1)
            .and_then(|l| l.clone())
            .unwrap_or_else(|| i.to_string())
    }

    pub fn is_directed(&self) -> bool {
        !self.arcs.is_empty()
    }

    /// Build a network. Any arc makes the network directed, in which case
    /// each edge becomes a pair of opposite arcs.
    pub fn to_network(&self, options: BuildOptions) -> Result<Network<T>> {
        let labels = (1..=self.vertex_count).map(|i| self.label(i)).collect();
        let directed = self.is_directed();
        let mut lines = Vec::with_capacity(self.arcs.len() + 2 * self.edges.len());
        lines.extend(self.arcs.iter().map(|&(u, v, w)| (u - 1, v - 1, w)));
        for &(u, v, w) in &self.edges {
            lines.push((u - 1, v - 1, w));
            if directed {
                lines.push((v - 1, u - 1, w));
            }
        }
        Network::from_indexed(labels, &lines, directed, options)
    }

    pub fn from_network(net: &Network<T>) -> Self {
        let lines = net
            .lines()
            .iter()
            .map(|l| (l.source.0 + 1, l.target.0 + 1, l.weight))
            .collect();
        let (arcs, edges) = if net.is_directed() { (lines, Vec::new()) } else { (Vec::new(), lines) };
        NetDocument {
            vertex_count: net.n(),
            labels: net.labels().iter().cloned().map(Some).collect(),
            arcs,
            edges,
        }
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    Preamble,
    Vertices,
    Arcs,
    Edges,
}

fn parse_number<N: FromStr>(token: &str, line: usize, what: &str) -> Result<N> {
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("malformed {what} `{token}`")))
}

/// Parse a double-quoted label with backslash escapes. Returns the label and
/// the remaining text.
fn parse_quoted(text: &str, line: usize) -> Result<(String, &str)> {
    let mut out = String::new();
    let mut chars = text.char_indices().skip(1);
    while let Some((i, c)) = chars.next() {
        match c {
            '"' => return Ok((out, &text[i + 1..])),
            '\\' => match chars.next() {
                Some((_, 'n')) => out.push('\n'),
                Some((_, other)) => out.push(other),
                None => break,
            },
            c => out.push(c),
        }
    }
    Err(Error::parse(line, "unterminated quoted label"))
}

fn quote(label: &str) -> String {
    let mut out = String::with_capacity(label.len() + 2);
    out.push('"');
    for c in label.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

pub fn parse_net<T: Scalar>(text: &str) -> Result<NetDocument<T>> {
    let mut doc = NetDocument::empty();
    let mut section = Section::Preamble;
    let mut seen_vertices = false;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        if line.starts_with('*') {
            let mut tokens = line.split_whitespace();
            let keyword = tokens.next().unwrap_or("").to_ascii_lowercase();
            let rest: Vec<&str> = tokens.collect();
            match keyword.as_str() {
                "*network" if !seen_vertices => {}
                "*vertices" => {
                    if seen_vertices {
                        return Err(Error::parse(line_no, "repeated *Vertices section"));
                    }
                    match rest.as_slice() {
                        [n] => doc.vertex_count = parse_number(n, line_no, "vertex count")?,
                        [] => return Err(Error::parse(line_no, "*Vertices needs a vertex count")),
                        _ => return Err(Error::parse(line_no, "two-mode *Vertices headers are not supported")),
                    }
                    doc.labels = vec![None; doc.vertex_count];
                    seen_vertices = true;
                    section = Section::Vertices;
                }
                "*arcs" | "*edges" => {
                    if !seen_vertices {
                        return Err(Error::parse(line_no, "missing *Vertices header"));
                    }
                    if !rest.is_empty() {
                        return Err(Error::parse(line_no, "multi-relational section headers are not supported"));
                    }
                    section = if keyword == "*arcs" { Section::Arcs } else { Section::Edges };
                }
                other => {
                    return Err(Error::parse(line_no, format!("unsupported section `{other}`")));
                }
            }
            continue;
        }

        match section {
            Section::Preamble => return Err(Error::parse(line_no, "missing *Vertices header")),
            Section::Vertices => {
                let (index, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
                let index: usize = parse_number(index, line_no, "vertex index")?;
                if index == 0 || index > doc.vertex_count {
                    return Err(Error::parse(line_no, "vertex index out of range"));
                }
                let rest = rest.trim_start();
                let (label, tail) = if rest.starts_with('"') {
                    parse_quoted(rest, line_no)?
                } else {
                    let (l, t) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                    (l.to_owned(), t)
                };
                if !tail.trim().is_empty() {
                    return Err(Error::parse(line_no, "vertex coordinates and shapes are not supported"));
                }
                if !rest.is_empty() {
                    doc.labels[index - 1] = Some(label);
                }
            }
            Section::Arcs | Section::Edges => {
                let tokens: Vec<&str> = line.split_whitespace().collect();
                if !(2..=3).contains(&tokens.len()) {
                    return Err(Error::parse(line_no, "expected `u v [weight]`"));
                }
                let mut ends = [0usize; 2];
                for (slot, tok) in ends.iter_mut().zip(&tokens) {
                    *slot = parse_number(tok, line_no, "vertex index")?;
                    if *slot == 0 || *slot > doc.vertex_count {
                        return Err(Error::parse(line_no, "vertex index out of range"));
                    }
                }
                let weight = match tokens.get(2) {
                    Some(tok) => parse_number(tok, line_no, "weight")?,
                    None => T::one(),
                };
                let entry = (ends[0], ends[1], weight);
                if section == Section::Arcs {
                    doc.arcs.push(entry);
                } else {
                    doc.edges.push(entry);
                }
            }
        }
    }
    if !seen_vertices {
        return Err(Error::parse(text.lines().count().max(1), "missing *Vertices header"));
    }
    Ok(doc)
}

/// Parse `u v [w]` lines where `u` and `v` are arbitrary tokens, interned to
/// vertices in order of first appearance. Blank lines and lines starting with
/// `#` or `%` are skipped.
pub fn parse_edge_list<T: Scalar>(text: &str, directed: bool) -> Result<NetDocument<T>> {
    let mut doc = NetDocument::empty();
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut intern = |doc: &mut NetDocument<T>, token: &str| -> usize {
        *ids.entry(token.to_owned()).or_insert_with(|| {
            doc.vertex_count += 1;
            doc.labels.push(Some(token.to_owned()));
            doc.vertex_count
        })
    };
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if !(2..=3).contains(&tokens.len()) {
            return Err(Error::parse(line_no, format!("expected 2 or 3 tokens, found {}", tokens.len())));
        }
        let weight = match tokens.get(2) {
            Some(tok) => parse_number(tok, line_no, "weight")?,
            None => T::one(),
        };
        let u = intern(&mut doc, tokens[0]);
        let v = intern(&mut doc, tokens[1]);
        if directed {
            doc.arcs.push((u, v, weight));
        } else {
            doc.edges.push((u, v, weight));
        }
    }
    Ok(doc)
}

pub fn write_net<T: Scalar>(doc: &NetDocument<T>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "*Vertices {}", doc.vertex_count);
    for (i, label) in doc.labels.iter().enumerate() {
        if let Some(label) = label {
            let _ = writeln!(out, "{} {}", i + 1, quote(label));
        }
    }
    for (header, lines) in [("*Arcs", &doc.arcs), ("*Edges", &doc.edges)] {
        if lines.is_empty() {
            continue;
        }
        let _ = writeln!(out, "{header}");
        for (u, v, w) in lines {
            let _ = writeln!(out, "{u} {v} {w}");
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SizeScale {
    #[default]
    Sqrt,
    Linear,
}

impl FromStr for SizeScale {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "sqrt" => Ok(SizeScale::Sqrt),
            "linear" => Ok(SizeScale::Linear),
            other => Err(format!("unknown size scale `{other}` (sqrt|linear)")),
        }
    }
}

/// Recoding of line weights into class numbers: class `k` when
/// `t_k ≤ w < t_{k+1}`, class 0 below the first threshold.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightClasses {
    /// `t_k = first · ratio^(k−1)` for `k = 1, 2, …`.
    Geometric { first: f64, ratio: f64 },
    Thresholds(Vec<f64>),
}

impl Default for WeightClasses {
    fn default() -> Self {
        WeightClasses::Geometric { first: 1000.0, ratio: 2.0 }
    }
}

impl WeightClasses {
    pub fn validate(&self) -> Result<()> {
        let ok = match self {
            WeightClasses::Geometric { first, ratio } => {
                first.is_finite() && *first > 0.0 && ratio.is_finite() && *ratio > 1.0
            }
            WeightClasses::Thresholds(ts) => {
                ts.iter().all(|t| t.is_finite()) && ts.windows(2).all(|w| w[0] < w[1])
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidThresholds)
        }
    }

    pub fn class_of(&self, weight: f64) -> usize {
        match self {
            WeightClasses::Geometric { first, ratio } => {
                let mut k = 0;
                let mut threshold = *first;
                while weight >= threshold && threshold.is_finite() {
                    k += 1;
                    threshold *= ratio;
                }
                k
            }
            WeightClasses::Thresholds(ts) => ts.partition_point(|&t| t <= weight),
        }
    }
}

/// Vertex widths (inches) span `[MIN_VERTEX_SIZE, MAX_VERTEX_SIZE]`.
pub const MIN_VERTEX_SIZE: f64 = 0.1;
pub const MAX_VERTEX_SIZE: f64 = 1.0;

/// Render as Graphviz DOT. Vertex `width` grows with the core number
/// (square root or linear, normalized by the largest core number); each line
/// carries its weight class as `class` and as `penwidth` (at least 1).
pub fn export_dot<T: Scalar>(
    net: &Network<T>,
    hierarchy: &CoreHierarchy<T>,
    scale: SizeScale,
    classes: &WeightClasses,
) -> Result<String> {
    classes.validate()?;
    let shape = |c: f64| match scale {
        SizeScale::Sqrt => c.max(0.0).sqrt(),
        SizeScale::Linear => c.max(0.0),
    };
    let top = hierarchy
        .max_core()
        .and_then(|c| c.to_f64())
        .filter(|c| c.is_finite())
        .map_or(0.0, shape);

    let (kind, edge_op) = if net.is_directed() { ("digraph", "->") } else { ("graph", "--") };
    let mut out = String::new();
    let _ = writeln!(out, "{kind} network {{");
    let _ = writeln!(out, "  node [shape=circle, fixedsize=true];");
    for v in net.vertices() {
        let core = hierarchy.core_number(v);
        let raw = core.to_f64().unwrap_or(0.0);
        let size = if top > 0.0 && raw.is_finite() {
            (MAX_VERTEX_SIZE * shape(raw) / top).max(MIN_VERTEX_SIZE)
        } else {
            MIN_VERTEX_SIZE
        };
        let _ = writeln!(
            out,
            "  v{} [label={}, core=\"{}\", width={:.4}];",
            v.0 + 1,
            quote(net.label(v)),
            core,
            size
        );
    }
    for line in net.lines() {
        let class = classes.class_of(line.weight.to_f64().unwrap_or(0.0));
        let _ = writeln!(
            out,
            "  v{} {} v{} [weight=\"{}\", class={}, penwidth={}];",
            line.source.0 + 1,
            edge_op,
            line.target.0 + 1,
            line.weight,
            class,
            class.max(1)
        );
    }
    out.push_str("}\n");
    Ok(out)
}
