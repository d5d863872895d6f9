//! Line-oriented text format for sets, functions, vectors and maps.
//!
//! ```text
//! # comment
//! hrep dim=2 name=square
//! ineq 1 0 <= 1
//! eq 1 -1 = 0
//!
//! vrep dim=2
//! point 0 0
//! ray 1 0
//! lin 0 1
//!
//! function dim=1
//! domain hrep dim=1
//! ineq -1 <= 0
//! piece 1 0
//!
//! vector dim=2
//! coords 1/2 -3
//!
//! map rows=1 cols=2
//! row 1 1
//! ```
//!
//! A header line starts a document; the rows up to the next header belong to
//! it. Printing then parsing gives back the same document.

use std::fmt;

use polycalc::forms::RowsDisplay;
use polycalc::{
    parse_rational, ConstraintForm, Error, GeneratorForm, QMatrix, QVector, Rational, Result, Row,
};

/// A function exactly as written: domain rows and pieces, not canonicalized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionText {
    pub dim: usize,
    pub domain: ConstraintForm,
    pub pieces: Vec<(QVector, Rational)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Body {
    Hrep(ConstraintForm),
    Vrep(GeneratorForm),
    Function(FunctionText),
    Vector(QVector),
    Map(QMatrix),
}

impl Body {
    pub fn kind(&self) -> &'static str {
        match self {
            Body::Hrep(_) => "hrep",
            Body::Vrep(_) => "vrep",
            Body::Function(_) => "function",
            Body::Vector(_) => "vector",
            Body::Map(_) => "map",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub name: Option<String>,
    pub body: Body,
}

impl Document {
    pub fn new(body: Body) -> Self {
        Document { name: None, body }
    }
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
}

impl<'a> Line<'a> {
    fn error(&self, column: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.number,
            column,
            message: message.into(),
        }
    }

    fn end_column(&self) -> usize {
        self.tokens.last().map_or(1, |t| t.column + t.text.len())
    }

    fn keyword(&self) -> &'a str {
        self.tokens[0].text
    }
}

fn tokenize(text: &str) -> Vec<Line<'_>> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in content
            .char_indices()
            .chain(std::iter::once((content.len(), ' ')))
        {
            match (ch.is_whitespace(), start) {
                (true, Some(s)) => {
                    tokens.push(Token {
                        text: &content[s..pos],
                        column: s + 1,
                    });
                    start = None;
                }
                (false, None) => start = Some(pos),
                _ => {}
            }
        }
        if !tokens.is_empty() {
            lines.push(Line {
                number: i + 1,
                tokens,
            });
        }
    }
    lines
}

fn rational(line: &Line, token: &Token) -> Result<Rational> {
    parse_rational(token.text)
        .map_err(|_| line.error(token.column, format!("invalid rational `{}`", token.text)))
}

fn numbers(line: &Line, tokens: &[Token], expected: usize) -> Result<QVector> {
    if tokens.len() != expected {
        let column = tokens.first().map_or(line.end_column(), |t| t.column);
        return Err(line.error(
            column,
            format!(
                "dimension mismatch: expected {expected} entries, found {}",
                tokens.len()
            ),
        ));
    }
    tokens.iter().map(|t| rational(line, t)).collect()
}

/// `eq a.. = b` or `ineq a.. <= b`.
fn constraint_row(line: &Line, dim: usize, relation: &str) -> Result<Row> {
    let t = &line.tokens;
    let n = t.len();
    if n < 3 || t[n - 2].text != relation {
        return Err(line.error(
            line.end_column(),
            format!("expected `{} a1 .. a{dim} {relation} b`", line.keyword()),
        ));
    }
    let coeffs = numbers(line, &t[1..n - 2], dim)?;
    Ok(Row::new(coeffs, rational(line, &t[n - 1])?))
}

struct Header {
    attrs: Vec<(String, String)>,
}

impl Header {
    fn parse(line: &Line, from: usize) -> Result<Header> {
        let mut attrs = Vec::new();
        for t in &line.tokens[from..] {
            let Some((k, v)) = t.text.split_once('=') else {
                return Err(line.error(t.column, format!("expected key=value, found `{}`", t.text)));
            };
            if attrs.iter().any(|(key, _): &(String, String)| key == k) {
                return Err(line.error(t.column, format!("repeated attribute `{k}`")));
            }
            attrs.push((k.to_string(), v.to_string()));
        }
        Ok(Header { attrs })
    }

    fn take(&mut self, key: &str) -> Option<String> {
        let i = self.attrs.iter().position(|(k, _)| k == key)?;
        Some(self.attrs.remove(i).1)
    }

    fn size(&mut self, line: &Line, key: &str) -> Result<usize> {
        let v = self
            .take(key)
            .ok_or_else(|| line.error(line.end_column(), format!("missing `{key}=`")))?;
        v.parse()
            .map_err(|_| line.error(line.tokens[0].column, format!("invalid {key} `{v}`")))
    }

    fn finish(self, line: &Line) -> Result<()> {
        match self.attrs.first() {
            Some((k, _)) => {
                Err(line.error(line.tokens[0].column, format!("unknown attribute `{k}`")))
            }
            None => Ok(()),
        }
    }
}

const HEADERS: [&str; 5] = ["hrep", "vrep", "function", "vector", "map"];

/// Every document in `text`, in order.
pub fn parse_documents(text: &str) -> Result<Vec<Document>> {
    let lines = tokenize(text);
    let mut docs = Vec::new();
    let mut i = 0;
    while i < lines.len() {
        let head = &lines[i];
        if !HEADERS.contains(&head.keyword()) {
            return Err(head.error(
                head.tokens[0].column,
                format!("expected a document header, found `{}`", head.keyword()),
            ));
        }
        let end = (i + 1..lines.len())
            .find(|&j| HEADERS.contains(&lines[j].keyword()))
            .unwrap_or(lines.len());
        docs.push(parse_one(head, &lines[i + 1..end])?);
        i = end;
    }
    Ok(docs)
}

/// Exactly one document.
pub fn parse(text: &str) -> Result<Document> {
    let mut docs = parse_documents(text)?;
    match docs.len() {
        1 => Ok(docs.pop().unwrap()),
        n => Err(Error::Parse {
            line: 1,
            column: 1,
            message: format!("expected one document, found {n}"),
        }),
    }
}

fn parse_one(head: &Line, rows: &[Line]) -> Result<Document> {
    let mut header = Header::parse(head, 1)?;
    let name = header.take("name");
    let body = match head.keyword() {
        "hrep" => {
            let dim = header.size(head, "dim")?;
            Body::Hrep(hrep_rows(dim, rows)?)
        }
        "vrep" => {
            let dim = header.size(head, "dim")?;
            let mut g = GeneratorForm::new(dim);
            for line in rows {
                let v = numbers(line, &line.tokens[1..], dim)?;
                match line.keyword() {
                    "point" => g.points.push(v),
                    "ray" => g.rays.push(v),
                    "lin" => g.lineality.push(v),
                    other => return Err(line.error(1, format!("unexpected `{other}` in vrep"))),
                }
            }
            Body::Vrep(g)
        }
        "function" => {
            let dim = header.size(head, "dim")?;
            Body::Function(function_rows(dim, rows)?)
        }
        "vector" => {
            let dim = header.size(head, "dim")?;
            match rows {
                [line] if line.keyword() == "coords" => {
                    Body::Vector(numbers(line, &line.tokens[1..], dim)?)
                }
                [] => return Err(head.error(1, "vector without a `coords` line")),
                [line, ..] => return Err(line.error(1, "expected a single `coords` line")),
            }
        }
        "map" => {
            let nrows = header.size(head, "rows")?;
            let ncols = header.size(head, "cols")?;
            if rows.len() != nrows {
                return Err(head.error(
                    1,
                    format!("map declares {nrows} rows, found {}", rows.len()),
                ));
            }
            let mut m = Vec::with_capacity(nrows);
            for line in rows {
                if line.keyword() != "row" {
                    return Err(line.error(1, format!("unexpected `{}` in map", line.keyword())));
                }
                m.push(numbers(line, &line.tokens[1..], ncols)?);
            }
            Body::Map(QMatrix::from_rows(ncols, m))
        }
        _ => unreachable!("headers are checked by the caller"),
    };
    header.finish(head)?;
    Ok(Document { name, body })
}

fn hrep_rows(dim: usize, rows: &[Line]) -> Result<ConstraintForm> {
    let mut c = ConstraintForm::new(dim);
    for line in rows {
        match line.keyword() {
            "eq" => c.equalities.push(constraint_row(line, dim, "=")?),
            "ineq" => c.inequalities.push(constraint_row(line, dim, "<=")?),
            other => return Err(line.error(1, format!("unexpected `{other}` in hrep"))),
        }
    }
    Ok(c)
}

fn function_rows(dim: usize, rows: &[Line]) -> Result<FunctionText> {
    let mut domain = ConstraintForm::new(dim);
    let mut pieces = Vec::new();
    let mut seen_domain = false;
    for line in rows {
        match line.keyword() {
            "domain" => {
                if seen_domain || !pieces.is_empty() {
                    return Err(line.error(1, "`domain` must come once, before the pieces"));
                }
                let kind = line.tokens.get(1).map(|t| t.text);
                if kind != Some("hrep") {
                    return Err(line.error(line.end_column(), "expected `domain hrep dim=N`"));
                }
                let mut header = Header::parse(line, 2)?;
                let d = header.size(line, "dim")?;
                header.finish(line)?;
                if d != dim {
                    return Err(line.error(1, format!("domain dimension {d} differs from {dim}")));
                }
                seen_domain = true;
            }
            "eq" | "ineq" if !seen_domain || !pieces.is_empty() => {
                return Err(line.error(1, "constraint rows belong after `domain hrep`"));
            }
            "eq" => domain.equalities.push(constraint_row(line, dim, "=")?),
            "ineq" => domain.inequalities.push(constraint_row(line, dim, "<=")?),
            "piece" => {
                let v = numbers(line, &line.tokens[1..], dim + 1)?;
                let mut entries = v.into_entries();
                let beta = entries.pop().expect("dim + 1 entries");
                pieces.push((QVector::new(entries), beta));
            }
            other => return Err(line.error(1, format!("unexpected `{other}` in function"))),
        }
    }
    if pieces.is_empty() {
        return Err(Error::Parse {
            line: rows.last().map_or(1, |l| l.number),
            column: 1,
            message: "function without pieces".into(),
        });
    }
    Ok(FunctionText {
        dim,
        domain,
        pieces,
    })
}

fn name_attr(name: &Option<String>) -> String {
    name.as_ref()
        .map(|n| format!(" name={n}"))
        .unwrap_or_default()
}

fn spaced(v: &QVector) -> String {
    if v.dim() == 0 {
        String::new()
    } else {
        format!(" {v}")
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = name_attr(&self.name);
        match &self.body {
            Body::Hrep(c) => {
                writeln!(f, "hrep dim={}{name}", c.dim)?;
                write!(f, "{}", RowsDisplay(c))
            }
            Body::Vrep(g) => {
                writeln!(f, "vrep dim={}{name}", g.dim)?;
                for p in &g.points {
                    writeln!(f, "point{}", spaced(p))?;
                }
                for r in &g.rays {
                    writeln!(f, "ray{}", spaced(r))?;
                }
                for l in &g.lineality {
                    writeln!(f, "lin{}", spaced(l))?;
                }
                Ok(())
            }
            Body::Function(t) => {
                writeln!(f, "function dim={}{name}", t.dim)?;
                writeln!(f, "domain hrep dim={}", t.dim)?;
                write!(f, "{}", RowsDisplay(&t.domain))?;
                for (v, b) in &t.pieces {
                    writeln!(f, "piece{} {b}", spaced(v))?;
                }
                Ok(())
            }
            Body::Vector(v) => {
                writeln!(f, "vector dim={}{name}", v.dim())?;
                writeln!(f, "coords{}", spaced(v))
            }
            Body::Map(m) => {
                writeln!(f, "map rows={} cols={}{name}", m.nrows(), m.ncols())?;
                for r in m.rows() {
                    writeln!(f, "row{}", spaced(r))?;
                }
                Ok(())
            }
        }
    }
}

/// `v:1/2,-3` as a vector literal on the command line.
pub fn parse_inline_vector(text: &str) -> Option<Result<QVector>> {
    let body = text.strip_prefix("v:")?;
    if body.is_empty() {
        return Some(Ok(QVector::new(Vec::new())));
    }
    Some(
        body.split(',')
            .map(|s| {
                parse_rational(s.trim()).map_err(|_| Error::Parse {
                    line: 1,
                    column: 1,
                    message: format!("invalid rational `{s}` in `{text}`"),
                })
            })
            .collect(),
    )
}
