//! Command-line front end: `check`, `filters`, `quotient`, `derive-arrow`.
//!
//! Exit codes: 0 all checks pass, 1 violations found, 2 parse error, 3 usage
//! error (bad arguments, unreadable file, unknown element in `--filter`).

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::algebra::{build_algebra, derive_arrow, order_and_star, BuildError, BuildMode, FiniteILAlgebra};
use crate::element::{Element, ElementSet};
use crate::filter::{
    classify_all, distributivity_term, enumerate_filters, is_distributive_filter, is_filter, is_implicative_filter,
    is_maximal_filter, is_prime_filter, upset, FilterError, FilterFlags, ImplicativeFailure, Maximality,
};
use crate::laws::{check_identities, IDENTITY_LAWS};
use crate::quotient::{
    check_affine_quotient, check_distributive_quotient, check_linear_quotient, quotient_algebra, QuotientResult,
};
use crate::report::{Law, VerificationReport};
use crate::report_doc::{RecordKind, ReportDocument};
use crate::spec::{parse_spec, render_rows, AlgebraSpecDocument};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    Violations = 1,
    ParseError = 2,
    Usage = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: ExitStatus,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn report(status: ExitStatus, report: &ReportDocument) -> Self {
        Outcome { status, stdout: report.render(), stderr: String::new() }
    }

    fn error(status: ExitStatus, message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome { status, stdout: String::new(), stderr }
    }
}

#[derive(Debug, Parser)]
#[command(name = "ilalg", version, about = "Check finite IL-algebras, their filters and quotients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Verify lattice, monoid and residuation laws, then the derived identities.
    Check {
        file: PathBuf,
        /// Keep erratic tables and report every violation instead of stopping at the build.
        #[arg(long)]
        lenient: bool,
        #[arg(long)]
        machine: bool,
    },
    /// Enumerate all filters.
    Filters {
        file: PathBuf,
        /// Also classify each filter (distributive, prime, maximal, implicative, affine).
        #[arg(long)]
        classify: bool,
        #[arg(long)]
        machine: bool,
    },
    /// Build the quotient by a filter and check the quotient theorems.
    Quotient {
        file: PathBuf,
        /// Comma-separated filter members, e.g. `--filter 1,b,top`.
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        filter: Vec<String>,
        #[arg(long)]
        machine: bool,
    },
    /// Print the residual table derived from `*` and the order, in `.alg` syntax.
    DeriveArrow {
        file: PathBuf,
        #[arg(long)]
        machine: bool,
    },
}

/// Parses arguments (including the program name) and runs one command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let status = if err.use_stderr() { ExitStatus::Usage } else { ExitStatus::Success };
            let text = err.render().to_string();
            return if status == ExitStatus::Success {
                Outcome { status, stdout: text, stderr: String::new() }
            } else {
                Outcome::error(status, text)
            };
        }
    };
    match cli.command {
        Command::Check { file, lenient, machine } => with_document(&file, |doc| {
            check(doc, if lenient { BuildMode::Lenient } else { BuildMode::Strict }, machine)
        }),
        Command::Filters { file, classify, machine } => with_document(&file, |doc| filters(doc, classify, machine)),
        Command::Quotient { file, filter, machine } => with_document(&file, |doc| quotient(doc, &filter, machine)),
        Command::DeriveArrow { file, machine } => with_document(&file, |doc| derive(doc, machine)),
    }
}

fn with_document(path: &Path, f: impl FnOnce(&AlgebraSpecDocument) -> Outcome) -> Outcome {
    let bytes = match std::fs::read(path) {
        Ok(bytes) => bytes,
        Err(err) => return Outcome::error(ExitStatus::Usage, format!("cannot read {}: {err}", path.display())),
    };
    let Ok(text) = String::from_utf8(bytes) else {
        return Outcome::error(ExitStatus::ParseError, format!("{}: not valid UTF-8", path.display()));
    };
    match parse_spec(&text) {
        Ok(doc) => f(&doc),
        Err(err) => Outcome::error(ExitStatus::ParseError, format!("{}: {err}", path.display())),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn pass_fail(count: usize) -> String {
    if count == 0 {
        "pass".to_string()
    } else {
        format!("fail ({count})")
    }
}

fn names_of(alg: &FiniteILAlgebra, elems: impl IntoIterator<Item = Element>) -> Vec<String> {
    elems.into_iter().map(|e| alg.element_name(e).to_string()).collect()
}

fn push_law_results(out: &mut ReportDocument, laws: &[Law], report: &VerificationReport, names: &[String]) {
    for &law in laws {
        let violations: Vec<_> = report.of_law(law).collect();
        out.push(RecordKind::Verdict, law.id(), vec![], pass_fail(violations.len()));
        for v in violations {
            out.push(RecordKind::Violation, law.id(), v.witness_names(names), v.describe(names));
        }
    }
}

fn build_laws(doc: &AlgebraSpecDocument) -> Vec<Law> {
    let mut laws =
        vec![Law::Commutativity, Law::Associativity, Law::UnitLaw, Law::ResiduationForward, Law::ResiduationBackward];
    if doc.arrow.is_some() {
        laws.push(Law::ArrowTable);
    }
    laws.push(Law::TopGreatest);
    if doc.top.is_some() {
        laws.push(Law::DeclaredTop);
    }
    if doc.bottom.is_some() {
        laws.push(Law::DeclaredBottom);
    }
    laws
}

/// Turns a failed build into report records, or a parse-class outcome.
fn build_failure(doc: &AlgebraSpecDocument, err: BuildError, out: &mut ReportDocument) -> Result<(), Outcome> {
    match err {
        BuildError::NotALattice(report) => {
            out.push(RecordKind::Verdict, "lattice", vec![], pass_fail(report.violations().len()));
            for v in report.violations() {
                out.push(RecordKind::Violation, v.law.id(), v.witness_names(&doc.elements), v.describe(&doc.elements));
            }
        }
        BuildError::NotResiduated(arrow) => {
            out.push(RecordKind::Verdict, "lattice", vec![], "pass");
            out.push(RecordKind::Verdict, "arrow-derivation", vec![], pass_fail(arrow.pairs.len()));
            for (x, z) in arrow.pairs {
                let (xn, zn) = (&doc.elements[x.index()], &doc.elements[z.index()]);
                out.push(
                    RecordKind::Violation,
                    "not-residuated",
                    vec![xn.clone(), zn.clone()],
                    format!("no greatest w with {xn}*w <= {zn}"),
                );
            }
        }
        BuildError::LawViolations(report) => {
            out.push(RecordKind::Verdict, "lattice", vec![], "pass");
            push_law_results(out, &build_laws(doc), &report, &doc.elements);
        }
        other => return Err(Outcome::error(ExitStatus::ParseError, other.to_string())),
    }
    out.push(RecordKind::Verdict, "overall", vec![], "fail");
    Ok(())
}

fn build_or_report(doc: &AlgebraSpecDocument, machine: bool) -> Result<FiniteILAlgebra, Outcome> {
    match build_algebra(doc, BuildMode::Strict) {
        Ok(built) => Ok(built.algebra),
        Err(err) => {
            let mut out = ReportDocument::new(machine);
            build_failure(doc, err, &mut out)?;
            Err(Outcome::report(ExitStatus::Violations, &out))
        }
    }
}

pub fn check(doc: &AlgebraSpecDocument, mode: BuildMode, machine: bool) -> Outcome {
    let mut out = ReportDocument::new(machine);
    let built = match build_algebra(doc, mode) {
        Ok(built) => built,
        Err(err) => {
            if let Err(outcome) = build_failure(doc, err, &mut out) {
                return outcome;
            }
            if mode == BuildMode::Strict {
                out.push(RecordKind::Note, "", vec![], "identity checks skipped: strict build failed (try --lenient)");
            }
            return Outcome::report(ExitStatus::Violations, &out);
        }
    };
    let alg = &built.algebra;
    out.push(RecordKind::Verdict, "lattice", vec![], "pass");
    push_law_results(&mut out, &build_laws(doc), &built.report, alg.names());
    let identities = check_identities(alg);
    // top-greatest is already reported with the build laws
    let laws: Vec<Law> = IDENTITY_LAWS.into_iter().filter(|&l| l != Law::TopGreatest).collect();
    push_law_results(&mut out, &laws, &identities, alg.names());
    let ok = built.report.passed() && identities.passed();
    out.push(RecordKind::Verdict, "overall", vec![], if ok { "pass" } else { "fail" });
    Outcome::report(if ok { ExitStatus::Success } else { ExitStatus::Violations }, &out)
}

fn flag_detail(flags: &FilterFlags) -> String {
    FilterFlags::NAMES
        .iter()
        .zip(flags.values())
        .map(|(name, v)| format!("{name}={}", yes_no(v)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn classification_witnesses(alg: &FiniteILAlgebra, label: &str, f: ElementSet, out: &mut ReportDocument) {
    let n = |e: Element| alg.element_name(e).to_string();
    if let Err(w) = is_distributive_filter(alg, f) {
        debug_assert_eq!(distributivity_term(alg, w.x, w.y, w.z), w.value);
        out.push(
            RecordKind::Violation,
            "distributive",
            names_of(alg, [w.x, w.y, w.z]),
            format!(
                "{label}: (({0}|{1})&({0}|{2}))->({0}|({1}&{2})) = {3} is not a member",
                n(w.x),
                n(w.y),
                n(w.z),
                n(w.value)
            ),
        );
    }
    if let Err((x, y)) = is_prime_filter(alg, f) {
        out.push(
            RecordKind::Violation,
            "prime",
            names_of(alg, [x, y]),
            format!(
                "{label}: neither {0}->{1} = {2} nor {1}->{0} = {3} is a member",
                n(x),
                n(y),
                n(alg.arrow(x, y)),
                n(alg.arrow(y, x))
            ),
        );
    }
    match is_maximal_filter(alg, f) {
        Ok(Maximality::NotProper) => {
            out.push(RecordKind::Violation, "maximal", vec![], format!("{label}: the whole carrier is not proper"))
        }
        Ok(Maximality::ContainedIn(g)) => out.push(
            RecordKind::Violation,
            "maximal",
            names_of(alg, g),
            format!("{label}: contained in the proper filter {}", alg.format_set(g)),
        ),
        _ => {}
    }
    if let Err(ImplicativeFailure::Rule(w)) = is_implicative_filter(alg, f) {
        out.push(
            RecordKind::Violation,
            "implicative",
            names_of(alg, [w.x, w.y, w.z]),
            format!(
                "{label}: {0}->({1}->{2}) and {0}->{1} are members but {0}->{2} = {3} is not",
                n(w.x),
                n(w.y),
                n(w.z),
                n(w.value)
            ),
        );
    }
    let top_to_unit = alg.arrow(alg.top(), alg.unit());
    if !f.contains(top_to_unit) {
        out.push(
            RecordKind::Violation,
            "affine",
            names_of(alg, [alg.top(), alg.unit()]),
            format!("{label}: {}->{} = {} is not a member", n(alg.top()), n(alg.unit()), n(top_to_unit)),
        );
    }
}

pub fn filters(doc: &AlgebraSpecDocument, classify: bool, machine: bool) -> Outcome {
    let alg = match build_or_report(doc, machine) {
        Ok(alg) => alg,
        Err(outcome) => return outcome,
    };
    let mut out = ReportDocument::new(machine);
    let result: Result<(), FilterError> = (|| {
        if classify {
            for (i, row) in classify_all(&alg)?.iter().enumerate() {
                let label = format!("F{}", i + 1);
                let flags = row.flags().expect("classified");
                out.push(RecordKind::Filter, label.clone(), names_of(&alg, row.members()), flag_detail(&flags));
                classification_witnesses(&alg, &label, row.members(), &mut out);
            }
        } else {
            for (i, f) in enumerate_filters(&alg)?.into_iter().enumerate() {
                out.push(RecordKind::Filter, format!("F{}", i + 1), names_of(&alg, f), "filter");
            }
        }
        Ok(())
    })();
    if let Err(err) = result {
        return Outcome::error(ExitStatus::Violations, err.to_string());
    }
    Outcome::report(ExitStatus::Success, &out)
}

fn theorem(out: &mut ReportDocument, key: &str, premise: bool, conclusion: bool) -> bool {
    let holds = !premise || conclusion;
    out.push(
        RecordKind::Theorem,
        key,
        vec![],
        format!(
            "premise={} conclusion={} {}",
            yes_no(premise),
            yes_no(conclusion),
            if holds { "holds" } else { "FAILS" }
        ),
    );
    holds
}

fn quotient_records(q: &QuotientResult<'_>, out: &mut ReportDocument) -> bool {
    let src = q.source();
    let induced = q.algebra();
    for (k, block) in q.partition().blocks().iter().enumerate() {
        out.push(RecordKind::Block, induced.names()[k].clone(), names_of(src, *block), "");
    }
    for x in induced.elements() {
        let above: Vec<String> = names_of(induced, induced.order().up_set(x));
        out.push(RecordKind::Table, "leq", vec![induced.element_name(x).to_string()], above.join(" "));
    }
    let doc = induced.to_document();
    for (key, rows) in [("star", &doc.star), ("arrow", doc.arrow.as_ref().expect("to_document emits arrow"))] {
        for row in rows {
            out.push(RecordKind::Table, key, vec![row.row.clone()], row.entries.join(" "));
        }
    }

    let f = q.filter();
    let verdicts = q.verdicts();
    let mut ok = theorem(out, "quotient-is-il-algebra", true, verdicts.il_algebra);
    for v in q.report().violations() {
        out.push(RecordKind::Violation, v.law.id(), v.witness_names(induced.names()), v.describe(induced.names()));
    }
    ok &= theorem(out, "projection-is-homomorphism", true, q.homomorphism_counterexample().is_none());
    ok &= theorem(out, "order-is-arrow-membership", true, q.order_counterexample().is_none());
    let (bottom, unit, top) = q.distinguished();
    ok &= theorem(
        out,
        "distinguished-blocks-preserved",
        true,
        induced.bottom() == bottom && induced.unit() == unit && induced.top() == top,
    );
    let results = [
        ("distributive-filter-gives-distributive-quotient", check_distributive_quotient(src, f)),
        ("prime-filter-gives-linear-quotient", check_linear_quotient(src, f)),
        ("affine-filter-gives-residuated-lattice", check_affine_quotient(src, f)),
    ];
    for (key, verdict) in results {
        match verdict {
            Ok(v) => ok &= theorem(out, key, v.premise, v.conclusion),
            Err(err) => {
                out.push(RecordKind::Note, key, vec![], err.to_string());
                ok = false;
            }
        }
    }
    let unit_upset = f == upset(src, src.unit());
    ok &= theorem(out, "unit-upset-gives-singleton-blocks", unit_upset, verdicts.singleton_blocks);
    if verdicts.singleton_blocks {
        out.push(RecordKind::Note, "", vec![], "every block is a singleton: the quotient is isomorphic to the source");
    }
    ok
}

pub fn quotient(doc: &AlgebraSpecDocument, members: &[String], machine: bool) -> Outcome {
    let alg = match build_or_report(doc, machine) {
        Ok(alg) => alg,
        Err(outcome) => return outcome,
    };
    let set = match alg.set_of(members.iter().map(String::as_str).filter(|s| !s.is_empty())) {
        Ok(set) => set,
        Err(name) => return Outcome::error(ExitStatus::Usage, format!("--filter: unknown element '{name}'")),
    };
    let mut out = ReportDocument::new(machine);
    if let Err(failure) = is_filter(&alg, set) {
        out.push(RecordKind::Verdict, "filter", names_of(&alg, set), "fail");
        out.push(RecordKind::Violation, failure.condition(), names_of(&alg, failure.witness()), failure.describe(&alg));
        return Outcome::report(ExitStatus::Violations, &out);
    }
    out.push(RecordKind::Verdict, "filter", names_of(&alg, set), "pass");
    let ok = match quotient_algebra(&alg, set) {
        Ok(q) => quotient_records(&q, &mut out),
        Err(err) => {
            out.push(RecordKind::Note, "quotient", vec![], err.to_string());
            false
        }
    };
    out.push(RecordKind::Verdict, "overall", vec![], if ok { "pass" } else { "fail" });
    Outcome::report(if ok { ExitStatus::Success } else { ExitStatus::Violations }, &out)
}

pub fn derive(doc: &AlgebraSpecDocument, machine: bool) -> Outcome {
    let (order, star) = match order_and_star(doc) {
        Ok(parts) => parts,
        Err(err) => return Outcome::error(ExitStatus::ParseError, err.to_string()),
    };
    match derive_arrow(&order, &star) {
        Ok(arrow) => {
            let rows = arrow.to_rows(&doc.elements);
            if machine {
                let mut out = ReportDocument::new(true);
                for row in rows {
                    out.push(RecordKind::Table, "arrow", vec![row.row], row.entries.join(" "));
                }
                Outcome::report(ExitStatus::Success, &out)
            } else {
                Outcome { status: ExitStatus::Success, stdout: render_rows("arrow", &rows), stderr: String::new() }
            }
        }
        Err(err) => {
            let mut out = ReportDocument::new(machine);
            for (x, z) in err.pairs {
                let (xn, zn) = (&doc.elements[x.index()], &doc.elements[z.index()]);
                out.push(
                    RecordKind::Violation,
                    "not-residuated",
                    vec![xn.clone(), zn.clone()],
                    format!("no greatest w with {xn}*w <= {zn}"),
                );
            }
            Outcome::report(ExitStatus::Violations, &out)
        }
    }
}
