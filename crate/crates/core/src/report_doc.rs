//! Report documents: a list of records rendered either for people or as
//! line-oriented machine output.
//!
//! Machine lines are `KIND;key;witness;detail`, with witness elements joined by
//! commas. `key` and witness names never contain `;` or `,`; `detail` is the
//! last field and may contain anything but a newline.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RecordKind {
    Verdict,
    Violation,
    Filter,
    Block,
    Table,
    Theorem,
    Note,
}

impl RecordKind {
    pub const ALL: [RecordKind; 7] = [
        RecordKind::Verdict,
        RecordKind::Violation,
        RecordKind::Filter,
        RecordKind::Block,
        RecordKind::Table,
        RecordKind::Theorem,
        RecordKind::Note,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            RecordKind::Verdict => "VERDICT",
            RecordKind::Violation => "VIOLATION",
            RecordKind::Filter => "FILTER",
            RecordKind::Block => "BLOCK",
            RecordKind::Table => "TABLE",
            RecordKind::Theorem => "THEOREM",
            RecordKind::Note => "NOTE",
        }
    }
}

impl fmt::Display for RecordKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for RecordKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        RecordKind::ALL.into_iter().find(|k| k.tag() == s).ok_or_else(|| format!("unknown record kind '{s}'"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub kind: RecordKind,
    pub key: String,
    pub witness: Vec<String>,
    pub detail: String,
}

impl Record {
    pub fn new(kind: RecordKind, key: impl Into<String>, witness: Vec<String>, detail: impl Into<String>) -> Self {
        Record { kind, key: key.into(), witness, detail: detail.into() }
    }

    /// Whether the record survives a machine-format round trip unchanged.
    pub fn is_well_formed(&self) -> bool {
        let clean = |s: &str| !s.contains([';', '\n', '\r']);
        clean(&self.key)
            && !self.detail.contains(['\n', '\r'])
            && self.witness.iter().all(|w| !w.is_empty() && clean(w) && !w.contains(','))
    }

    pub fn machine_line(&self) -> String {
        format!("{};{};{};{}", self.kind, self.key, self.witness.join(","), self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("machine report line {line}: {message}")]
pub struct MachineParseError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReportDocument {
    pub machine: bool,
    pub records: Vec<Record>,
}

impl ReportDocument {
    pub fn new(machine: bool) -> Self {
        ReportDocument { machine, records: Vec::new() }
    }

    pub fn push(&mut self, kind: RecordKind, key: impl Into<String>, witness: Vec<String>, detail: impl Into<String>) {
        self.records.push(Record::new(kind, key, witness, detail));
    }

    pub fn of_kind(&self, kind: RecordKind) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(move |r| r.kind == kind)
    }

    pub fn render(&self) -> String {
        if self.machine {
            self.render_machine()
        } else {
            self.render_human()
        }
    }

    pub fn render_machine(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&r.machine_line());
            out.push('\n');
        }
        out
    }

    pub fn parse_machine(text: &str) -> Result<ReportDocument, MachineParseError> {
        let mut records = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let err = |message: String| MachineParseError { line: i + 1, message };
            let mut fields = line.splitn(4, ';');
            let (Some(kind), Some(key), Some(witness), Some(detail)) =
                (fields.next(), fields.next(), fields.next(), fields.next())
            else {
                return Err(err("expected four ';'-separated fields".into()));
            };
            let kind = kind.parse().map_err(err)?;
            let witness = if witness.is_empty() { Vec::new() } else { witness.split(',').map(String::from).collect() };
            records.push(Record::new(kind, key, witness, detail));
        }
        Ok(ReportDocument { machine: true, records })
    }

    pub fn render_human(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let witness = r.witness.join(", ");
            let _ = match r.kind {
                RecordKind::Verdict => writeln!(out, "{:<36} {}", r.key, r.detail),
                RecordKind::Violation => writeln!(out, "  {} at ({}): {}", r.key, witness, r.detail),
                RecordKind::Filter => writeln!(out, "{} {{{}}} {}", r.key, r.witness.join(","), r.detail),
                RecordKind::Block => writeln!(out, "{} = {{{}}}", r.key, r.witness.join(",")),
                RecordKind::Table => writeln!(out, "{} {} : {}", r.key, witness, r.detail),
                RecordKind::Theorem => writeln!(out, "{:<44} {}", r.key, r.detail),
                RecordKind::Note => writeln!(out, "note: {}", r.detail),
            };
        }
        out
    }
}
