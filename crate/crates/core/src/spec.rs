//! The `.alg` text format.
//!
//! Line oriented; `#` starts a comment and blank lines are ignored.
//!
//! ```text
//! algebra chain2
//! elements bot top
//! order bot <= top
//! unit top
//! star bot : bot bot
//! star top : bot top
//! arrow bot : top top      # optional; derived when absent
//! arrow top : bot top
//! ```
//!
//! `order` lines may chain (`order a <= b <= c`) and only need the covering
//! edges. `top <e>` and `bottom <e>` are optional declarations that the
//! builder cross-checks.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub row: String,
    pub entries: Vec<String>,
}

impl TableRow {
    pub fn new(row: impl Into<String>, entries: impl IntoIterator<Item = impl Into<String>>) -> Self {
        TableRow { row: row.into(), entries: entries.into_iter().map(Into::into).collect() }
    }
}

/// Parsed `.alg` file. Rows are kept in file order so rendering is faithful.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpecDocument {
    pub name: Option<String>,
    pub elements: Vec<String>,
    pub order: Vec<(String, String)>,
    pub unit: String,
    pub top: Option<String>,
    pub bottom: Option<String>,
    pub star: Vec<TableRow>,
    pub arrow: Option<Vec<TableRow>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn at(pos: Pos, message: impl Into<String>) -> Self {
        ParseError { line: pos.line, column: pos.column, message: message.into() }
    }
}

/// Element and algebra names: non-empty, no whitespace, none of `# ; , :`, and not `<=`.
pub fn is_valid_name(name: &str) -> bool {
    !name.is_empty() && name != "<=" && !name.chars().any(|c| c.is_whitespace() || matches!(c, '#' | ';' | ',' | ':'))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

#[derive(Clone, Copy, Debug)]
struct Token<'a> {
    text: &'a str,
    pos: Pos,
}

fn tokenize(line: &str, line_no: usize) -> Vec<Token<'_>> {
    let content = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut tokens = Vec::new();
    let mut start: Option<usize> = None;
    for (i, c) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                let column = content[..s].chars().count() + 1;
                tokens.push(Token { text: &content[s..i], pos: Pos { line: line_no, column } });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    tokens
}

struct RawRow<'a> {
    row: Token<'a>,
    entries: Vec<Token<'a>>,
    keyword: Token<'a>,
}

#[derive(Default)]
struct Raw<'a> {
    name: Option<Token<'a>>,
    elements: Option<Vec<Token<'a>>>,
    order: Vec<(Token<'a>, Token<'a>)>,
    unit: Option<Token<'a>>,
    top: Option<Token<'a>>,
    bottom: Option<Token<'a>>,
    star: Vec<RawRow<'a>>,
    arrow: Vec<RawRow<'a>>,
}

fn single<'a>(keyword: Token<'a>, rest: &[Token<'a>], slot: &mut Option<Token<'a>>) -> Result<(), ParseError> {
    if slot.is_some() {
        return Err(ParseError::at(keyword.pos, format!("duplicate '{}' declaration", keyword.text)));
    }
    match rest {
        [value] => {
            *slot = Some(*value);
            Ok(())
        }
        [] => Err(ParseError::at(keyword.pos, format!("'{}' expects one name", keyword.text))),
        [_, extra, ..] => Err(ParseError::at(extra.pos, format!("unexpected token '{}'", extra.text))),
    }
}

fn table_row<'a>(keyword: Token<'a>, rest: &[Token<'a>], rows: &mut Vec<RawRow<'a>>) -> Result<(), ParseError> {
    let (row, colon, entries) = match rest {
        [row, colon, entries @ ..] => (*row, *colon, entries),
        [row] => return Err(ParseError::at(row.pos, "expected ':' after row element")),
        [] => return Err(ParseError::at(keyword.pos, format!("'{}' expects a row element", keyword.text))),
    };
    if colon.text != ":" {
        return Err(ParseError::at(colon.pos, format!("expected ':', found '{}'", colon.text)));
    }
    if let Some(prev) = rows.iter().find(|r| r.row.text == row.text) {
        return Err(ParseError::at(
            row.pos,
            format!("duplicate {} row for '{}' (first on line {})", keyword.text, row.text, prev.row.pos.line),
        ));
    }
    rows.push(RawRow { row, entries: entries.to_vec(), keyword });
    Ok(())
}

/// Parses `.alg` text.
pub fn parse_spec(text: &str) -> Result<AlgebraSpecDocument, ParseError> {
    let mut raw = Raw::default();
    let mut line_count = 0;
    for (idx, line) in text.lines().enumerate() {
        line_count = idx + 1;
        let tokens = tokenize(line, idx + 1);
        let Some((&keyword, rest)) = tokens.split_first() else {
            continue;
        };
        match keyword.text {
            "algebra" => single(keyword, rest, &mut raw.name)?,
            "unit" => single(keyword, rest, &mut raw.unit)?,
            "top" => single(keyword, rest, &mut raw.top)?,
            "bottom" => single(keyword, rest, &mut raw.bottom)?,
            "elements" => {
                if raw.elements.is_some() {
                    return Err(ParseError::at(keyword.pos, "duplicate 'elements' declaration"));
                }
                if rest.is_empty() {
                    return Err(ParseError::at(keyword.pos, "'elements' expects at least one name"));
                }
                raw.elements = Some(rest.to_vec());
            }
            "order" => {
                if rest.len() < 3 || rest.len() % 2 == 0 {
                    return Err(ParseError::at(keyword.pos, "expected 'order <a> <= <b>'"));
                }
                for pair in rest.windows(3).step_by(2) {
                    if pair[1].text != "<=" {
                        return Err(ParseError::at(pair[1].pos, format!("expected '<=', found '{}'", pair[1].text)));
                    }
                    raw.order.push((pair[0], pair[2]));
                }
            }
            "star" => table_row(keyword, rest, &mut raw.star)?,
            "arrow" => table_row(keyword, rest, &mut raw.arrow)?,
            other => return Err(ParseError::at(keyword.pos, format!("unknown keyword '{other}'"))),
        }
    }
    let end = Pos { line: line_count + 1, column: 1 };
    resolve(raw, end)
}

fn resolve(raw: Raw<'_>, end: Pos) -> Result<AlgebraSpecDocument, ParseError> {
    let element_tokens = raw.elements.ok_or_else(|| ParseError::at(end, "missing 'elements'"))?;
    let mut index: HashMap<&str, usize> = HashMap::new();
    for tok in &element_tokens {
        if !is_valid_name(tok.text) {
            return Err(ParseError::at(tok.pos, format!("invalid element name '{}'", tok.text)));
        }
        if index.insert(tok.text, index.len()).is_some() {
            return Err(ParseError::at(tok.pos, format!("duplicate element '{}'", tok.text)));
        }
    }
    let n = element_tokens.len();
    let known = |tok: &Token<'_>| -> Result<String, ParseError> {
        if index.contains_key(tok.text) {
            Ok(tok.text.to_string())
        } else {
            Err(ParseError::at(tok.pos, format!("unknown element '{}'", tok.text)))
        }
    };

    if let Some(name) = &raw.name {
        if !is_valid_name(name.text) {
            return Err(ParseError::at(name.pos, format!("invalid algebra name '{}'", name.text)));
        }
    }
    let order = raw.order.iter().map(|(a, b)| Ok((known(a)?, known(b)?))).collect::<Result<Vec<_>, ParseError>>()?;
    let unit = known(&raw.unit.ok_or_else(|| ParseError::at(end, "missing 'unit'"))?)?;
    let top = raw.top.as_ref().map(known).transpose()?;
    let bottom = raw.bottom.as_ref().map(known).transpose()?;

    let table = |rows: &[RawRow<'_>], what: &str| -> Result<Vec<TableRow>, ParseError> {
        let mut out = Vec::with_capacity(rows.len());
        for r in rows {
            let row = known(&r.row)?;
            if r.entries.len() != n {
                let pos = r.entries.get(n).map(|t| t.pos).unwrap_or(r.row.pos);
                return Err(ParseError::at(
                    pos,
                    format!("{} row '{}' has {} entries, expected {}", r.keyword.text, row, r.entries.len(), n),
                ));
            }
            let entries = r.entries.iter().map(known).collect::<Result<Vec<_>, _>>()?;
            out.push(TableRow { row, entries });
        }
        for tok in &element_tokens {
            if !out.iter().any(|r| r.row == tok.text) {
                return Err(ParseError::at(end, format!("missing {} row for '{}'", what, tok.text)));
            }
        }
        Ok(out)
    };
    if raw.star.is_empty() {
        return Err(ParseError::at(end, "missing 'star'"));
    }
    let star = table(&raw.star, "star")?;
    let arrow = if raw.arrow.is_empty() { None } else { Some(table(&raw.arrow, "arrow")?) };

    Ok(AlgebraSpecDocument {
        name: raw.name.map(|t| t.text.to_string()),
        elements: element_tokens.iter().map(|t| t.text.to_string()).collect(),
        order,
        unit,
        top,
        bottom,
        star,
        arrow,
    })
}

/// Renders rows as `<keyword> <row> : <entries>` lines.
pub fn render_rows(keyword: &str, rows: &[TableRow]) -> String {
    let mut out = String::new();
    for r in rows {
        let _ = writeln!(out, "{} {} : {}", keyword, r.row, r.entries.join(" "));
    }
    out
}

/// Canonical text form; `parse_spec(&render_spec(doc)) == Ok(doc)` for any valid document.
pub fn render_spec(doc: &AlgebraSpecDocument) -> String {
    let mut out = String::new();
    if let Some(name) = &doc.name {
        let _ = writeln!(out, "algebra {name}");
    }
    let _ = writeln!(out, "elements {}", doc.elements.join(" "));
    for (a, b) in &doc.order {
        let _ = writeln!(out, "order {a} <= {b}");
    }
    let _ = writeln!(out, "unit {}", doc.unit);
    if let Some(top) = &doc.top {
        let _ = writeln!(out, "top {top}");
    }
    if let Some(bottom) = &doc.bottom {
        let _ = writeln!(out, "bottom {bottom}");
    }
    out.push_str(&render_rows("star", &doc.star));
    if let Some(arrow) = &doc.arrow {
        out.push_str(&render_rows("arrow", arrow));
    }
    out
}

impl fmt::Display for AlgebraSpecDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_spec(self))
    }
}
