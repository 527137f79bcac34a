//! Versioned text formats: graphs, step functions, 2-AND instances,
//! ratio certificates and search ledgers.
//!
//! All formats are line based. `#` starts a comment, blank lines are
//! ignored, and numbers are integers, decimals or `p/q` rationals. Writers
//! emit exact rationals, so parsing a written file gives back the same value.

use std::fmt::Write as _;

use oblivious_dicut_core::graph::WeightedDigraph;
use oblivious_dicut_core::lp::RatioCertificate;
use oblivious_dicut_core::rational::{format_rational, parse_rational, Rational};
use oblivious_dicut_core::twoand::{Literal, TwoAndInstance};
use oblivious_dicut_core::{Cut, StepFunction};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// A whitespace-separated token with its 1-based position.
#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl<'a> Token<'a> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn rational(&self) -> Result<Rational, ParseError> {
        parse_rational(self.text).ok_or_else(|| self.error(format!("`{}` is not a number", self.text)))
    }

    fn index(&self) -> Result<usize, ParseError> {
        self.text
            .parse()
            .map_err(|_| self.error(format!("`{}` is not a nonnegative integer", self.text)))
    }
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
}

impl<'a> Line<'a> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.number,
            column: self.tokens.first().map_or(1, |t| t.column),
            message: message.into(),
        }
    }

    fn expect_len(&self, n: usize) -> Result<(), ParseError> {
        if self.tokens.len() == n {
            Ok(())
        } else if self.tokens.len() > n {
            Err(self.tokens[n].error(format!("expected {n} fields")))
        } else {
            Err(self.error(format!("expected {n} fields, found {}", self.tokens.len())))
        }
    }
}

fn tokenize(text: &str) -> Vec<Line<'_>> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    tokens.push(Token {
                        text: &content[s..pos],
                        line: i + 1,
                        column: content[..s].chars().count() + 1,
                    });
                }
            } else if start.is_none() {
                start = Some(pos);
            }
        }
        if !tokens.is_empty() {
            lines.push(Line { number: i + 1, tokens });
        }
    }
    lines
}

fn header<'a>(lines: &'a [Line<'a>], tag: &str, fields: usize) -> Result<&'a Line<'a>, ParseError> {
    let first = lines.first().ok_or(ParseError {
        line: 1,
        column: 1,
        message: format!("missing `{tag} v1` header"),
    })?;
    if first.tokens[0].text != tag {
        return Err(first.tokens[0].error(format!("expected `{tag}` header")));
    }
    match first.tokens.get(1) {
        Some(t) if t.text == "v1" => {}
        Some(t) => return Err(t.error(format!("unsupported version `{}`", t.text))),
        None => return Err(first.error("missing version")),
    }
    first.expect_len(fields)?;
    Ok(first)
}

// ---- graphs ----

pub fn parse_graph(text: &str) -> Result<WeightedDigraph, ParseError> {
    let lines = tokenize(text);
    let head = header(&lines, "dicut-graph", 3)?;
    let n = head.tokens[2].index()?;
    let mut g = WeightedDigraph::new(n);
    for line in &lines[1..] {
        line.expect_len(3)?;
        let t = &line.tokens;
        let (u, v, w) = (t[0].index()?, t[1].index()?, t[2].rational()?);
        for (k, x) in [(0, u), (1, v)] {
            if x >= n {
                return Err(t[k].error(format!("vertex {x} out of range for a graph with {n} vertices")));
            }
        }
        if w <= Rational::from_integer(0.into()) {
            return Err(t[2].error(format!("weight {w} is not positive")));
        }
        g.add_edge(u, v, w).map_err(|e| line.error(e.to_string()))?;
    }
    Ok(g)
}

pub fn write_graph(g: &WeightedDigraph) -> String {
    let mut out = format!("dicut-graph v1 {}\n", g.vertex_count());
    for e in g.edges() {
        let _ = writeln!(out, "{} {} {}", e.source, e.target, format_rational(&e.weight));
    }
    out
}

// ---- step functions ----

/// Intervals must be listed left to right and tile `[0, 1]`.
pub fn parse_stepfn(text: &str) -> Result<StepFunction, ParseError> {
    let lines = tokenize(text);
    header(&lines, "stepfn", 2)?;
    let mut breakpoints = Vec::new();
    let mut values = Vec::new();
    let mut points = Vec::new();
    let mut expected_lower = Rational::from_integer(0.into());
    let mut last_line = &lines[0];
    for line in &lines[1..] {
        if line.tokens[0].text == "@" {
            line.expect_len(3)?;
            points.push((line, line.tokens[1].rational()?, line.tokens[2].rational()?));
            continue;
        }
        if !points.is_empty() {
            return Err(line.error("interval lines must precede `@` lines"));
        }
        line.expect_len(3)?;
        let lo = line.tokens[0].rational()?;
        let hi = line.tokens[1].rational()?;
        if lo != expected_lower {
            return Err(line.tokens[0].error(format!(
                "interval starts at {} but the previous one ends at {}",
                format_rational(&lo),
                format_rational(&expected_lower)
            )));
        }
        if hi <= lo {
            return Err(line.tokens[1].error("interval must have positive width"));
        }
        if !values.is_empty() {
            breakpoints.push(lo);
        }
        values.push(line.tokens[2].rational()?);
        expected_lower = hi;
        last_line = line;
    }
    if values.is_empty() {
        return Err(lines[0].error("no intervals"));
    }
    if expected_lower != Rational::from_integer(1.into()) {
        return Err(last_line.error("intervals must end at 1"));
    }
    let mut f = StepFunction::new(breakpoints, values).map_err(|e| last_line.error(e.to_string()))?;
    for (line, z, v) in points {
        f = f.with_point_value(&z, v).map_err(|e| line.error(e.to_string()))?;
    }
    Ok(f)
}

pub fn write_stepfn(f: &StepFunction) -> String {
    f.to_string()
}

// ---- 2-AND ----

fn literal(token: &Token<'_>) -> Result<Literal, ParseError> {
    let (positive, digits) = match token.text.as_bytes().first() {
        Some(b'+') => (true, &token.text[1..]),
        Some(b'-') => (false, &token.text[1..]),
        _ => return Err(token.error("literal must be `+k` or `-k`")),
    };
    let k: usize = digits
        .parse()
        .ok()
        .filter(|&k| k >= 1)
        .ok_or_else(|| token.error("literal index must be a positive integer"))?;
    Ok(Literal { var: k - 1, positive })
}

/// Literals are `+k` / `-k` with variables numbered from 1.
pub fn parse_twoand(text: &str) -> Result<TwoAndInstance, ParseError> {
    let lines = tokenize(text);
    let head = header(&lines, "twoand", 3)?;
    let n = head.tokens[2].index()?;
    let mut inst = TwoAndInstance::new(n);
    for line in &lines[1..] {
        line.expect_len(3)?;
        let a = literal(&line.tokens[0])?;
        let b = literal(&line.tokens[1])?;
        let w = line.tokens[2].rational()?;
        inst.add_clause(a, b, w).map_err(|e| line.error(e.to_string()))?;
    }
    Ok(inst)
}

pub fn write_twoand(inst: &TwoAndInstance) -> String {
    let lit = |l: Literal| format!("{}{}", if l.positive { '+' } else { '-' }, l.var + 1);
    let mut out = format!("twoand v1 {}\n", inst.variable_count());
    for c in inst.clauses() {
        let _ = writeln!(out, "{} {} {}", lit(c.first), lit(c.second), format_rational(&c.weight));
    }
    out
}

// ---- certificates ----

/// Contents of a `ratio-cert v1` file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateFile {
    pub fingerprint: String,
    pub lower: Rational,
    pub upper: Rational,
    pub lp_value: Rational,
    pub epsilon: Rational,
    pub witness: WeightedDigraph,
    pub cut: Cut,
    pub duals: Vec<Rational>,
}

impl CertificateFile {
    pub fn from_certificate(c: &RatioCertificate) -> Self {
        Self {
            fingerprint: c.fingerprint.clone(),
            lower: c.lower.clone(),
            upper: c.upper.clone(),
            lp_value: c.lp_value.clone(),
            epsilon: c.epsilon.clone(),
            witness: c.witness.graph.clone(),
            cut: c.witness.cut.clone(),
            duals: c.duals.clone(),
        }
    }
}

pub fn write_certificate(c: &CertificateFile) -> String {
    let mut out = String::from("ratio-cert v1\n");
    let _ = writeln!(out, "fingerprint {}", c.fingerprint);
    let _ = writeln!(out, "lower {}", format_rational(&c.lower));
    let _ = writeln!(out, "upper {}", format_rational(&c.upper));
    let _ = writeln!(out, "lp_value {}", format_rational(&c.lp_value));
    let _ = writeln!(out, "epsilon {}", format_rational(&c.epsilon));
    let cut: Vec<String> = c.cut.vertices().iter().map(|v| v.to_string()).collect();
    let _ = writeln!(out, "cut {}", cut.join(" "));
    let graph = write_graph(&c.witness);
    let _ = writeln!(out, "witness {}", graph.lines().count());
    out.push_str(&graph);
    let _ = writeln!(out, "duals {}", c.duals.len());
    for y in &c.duals {
        let _ = writeln!(out, "{}", format_rational(y));
    }
    out
}

pub fn parse_certificate(text: &str) -> Result<CertificateFile, ParseError> {
    let lines = tokenize(text);
    header(&lines, "ratio-cert", 2)?;
    let mut it = lines[1..].iter();
    let mut field = |name: &str| -> Result<&Line<'_>, ParseError> {
        let line = it.next().ok_or(ParseError {
            line: lines.last().map_or(1, |l| l.number),
            column: 1,
            message: format!("missing `{name}`"),
        })?;
        if line.tokens[0].text != name {
            return Err(line.tokens[0].error(format!("expected `{name}`")));
        }
        Ok(line)
    };
    let fp = field("fingerprint")?;
    fp.expect_len(2)?;
    let fingerprint = fp.tokens[1].text.to_string();
    let mut value = |name: &str| -> Result<Rational, ParseError> {
        let line = field(name)?;
        line.expect_len(2)?;
        line.tokens[1].rational()
    };
    let lower = value("lower")?;
    let upper = value("upper")?;
    let lp_value = value("lp_value")?;
    let epsilon = value("epsilon")?;
    let cut_line = field("cut")?;
    let cut_vertices = cut_line.tokens[1..].iter().map(|t| t.index()).collect::<Result<Vec<_>, _>>()?;
    let w = field("witness")?;
    w.expect_len(2)?;
    let count = w.tokens[1].index()?;
    let graph_lines: Vec<&Line<'_>> = it.by_ref().take(count).collect();
    if graph_lines.len() != count {
        return Err(w.error("witness graph is truncated"));
    }
    let graph_text: String = graph_lines
        .iter()
        .map(|l| l.tokens.iter().map(|t| t.text).collect::<Vec<_>>().join(" ") + "\n")
        .collect();
    let witness = parse_graph(&graph_text).map_err(|e| ParseError {
        line: graph_lines.get(e.line - 1).map_or(w.number, |l| l.number),
        column: e.column,
        message: e.message,
    })?;
    let cut = Cut::from_vertices(witness.vertex_count(), &cut_vertices).map_err(|e| cut_line.error(e.to_string()))?;
    let d = it.next().ok_or(w.error("missing `duals`"))?;
    if d.tokens[0].text != "duals" {
        return Err(d.tokens[0].error("expected `duals`"));
    }
    d.expect_len(2)?;
    let n = d.tokens[1].index()?;
    let mut duals = Vec::with_capacity(n);
    for line in it.by_ref().take(n) {
        line.expect_len(1)?;
        duals.push(line.tokens[0].rational()?);
    }
    if duals.len() != n {
        return Err(d.error("dual vector is truncated"));
    }
    if let Some(extra) = it.next() {
        return Err(extra.error("unexpected content after the dual vector"));
    }
    Ok(CertificateFile {
        fingerprint,
        lower,
        upper,
        lp_value,
        epsilon,
        witness,
        cut,
        duals,
    })
}

// ---- ledger ----

/// One line per candidate: `<fingerprint> <certified-lower> <certified-upper>`.
pub fn write_ledger<'a>(lines: impl IntoIterator<Item = &'a String>) -> String {
    let mut out = String::new();
    for l in lines {
        out.push_str(l);
        out.push('\n');
    }
    out
}

/// Parsed ledger entries.
pub fn parse_ledger(text: &str) -> Result<Vec<(String, Rational, Rational)>, ParseError> {
    tokenize(text)
        .iter()
        .map(|line| {
            line.expect_len(3)?;
            Ok((
                line.tokens[0].text.to_string(),
                line.tokens[1].rational()?,
                line.tokens[2].rational()?,
            ))
        })
        .collect()
}
