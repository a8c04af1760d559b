//! Finite IL-algebras: construction from a document, table lookups, and
//! derivation of the residual.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::element::{carrier, Element, ElementSet, MAX_CARRIER};
use crate::laws;
use crate::order::Order;
use crate::report::{Law, Mismatch, VerificationReport, Violation};
use crate::spec::{AlgebraSpecDocument, TableRow};

/// An `n x n` operation table.
#[derive(Clone, PartialEq, Eq)]
pub struct OpTable {
    n: usize,
    cells: Vec<Element>,
}

impl OpTable {
    pub fn from_fn(n: usize, mut f: impl FnMut(Element, Element) -> Element) -> Self {
        let mut cells = Vec::with_capacity(n * n);
        for x in carrier(n) {
            for y in carrier(n) {
                cells.push(f(x, y));
            }
        }
        OpTable { n, cells }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, x: Element, y: Element) -> Element {
        self.cells[x.index() * self.n + y.index()]
    }

    pub fn set(&mut self, x: Element, y: Element, value: Element) {
        self.cells[x.index() * self.n + y.index()] = value;
    }

    pub fn row(&self, x: Element) -> &[Element] {
        &self.cells[x.index() * self.n..(x.index() + 1) * self.n]
    }

    /// Rows in document form, named by `names`.
    pub fn to_rows(&self, names: &[String]) -> Vec<TableRow> {
        carrier(self.n)
            .map(|x| TableRow::new(names[x.index()].clone(), self.row(x).iter().map(|v| names[v.index()].clone())))
            .collect()
    }
}

impl fmt::Debug for OpTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(carrier(self.n).map(|x| self.row(x).iter().map(|v| v.index()).collect::<Vec<_>>()))
            .finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operation {
    Join,
    Meet,
    Star,
    Arrow,
}

impl Operation {
    pub const ALL: [Operation; 4] = [Operation::Join, Operation::Meet, Operation::Star, Operation::Arrow];

    pub fn symbol(self) -> &'static str {
        match self {
            Operation::Join => "|",
            Operation::Meet => "&",
            Operation::Star => "*",
            Operation::Arrow => "->",
        }
    }
}

impl fmt::Display for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Operation::Join => "join",
            Operation::Meet => "meet",
            Operation::Star => "star",
            Operation::Arrow => "arrow",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuildMode {
    /// Refuse any structure that violates a law.
    Strict,
    /// Keep the tables as given and return every violation alongside them.
    Lenient,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("carrier is empty")]
    EmptyCarrier,
    #[error("carrier has {0} elements; at most {MAX_CARRIER} are supported")]
    CarrierTooLarge(usize),
    #[error("duplicate element name '{0}'")]
    DuplicateElement(String),
    #[error("unknown element name '{0}'")]
    UnknownElement(String),
    #[error("{table} table: {detail}")]
    Dimension { table: &'static str, detail: String },
    /// The order is not a lattice with a least element; no tables can be built.
    #[error("order is not a lattice with least element")]
    NotALattice(VerificationReport),
    #[error("no arrow table given and the residual does not exist at {} pair(s)", .0.pairs.len())]
    NotResiduated(ArrowError),
    #[error("{} law violation(s)", .0.violations().len())]
    LawViolations(VerificationReport),
}

impl BuildError {
    /// The report carried by lattice or law failures.
    pub fn report(&self) -> Option<&VerificationReport> {
        match self {
            BuildError::NotALattice(r) | BuildError::LawViolations(r) => Some(r),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("index {index} out of range for a {size}-element carrier")]
pub struct IndexOutOfRange {
    pub index: usize,
    pub size: usize,
}

/// Failure of residual derivation: the listed `(x, z)` pairs have no greatest
/// `w` with `x*w <= z`. Pairs are in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("not residuated at {} pair(s)", .pairs.len())]
pub struct ArrowError {
    pub pairs: Vec<(Element, Element)>,
}

/// `max {w : x*w <= z}` when that set has a unique greatest element.
pub fn residual(order: &Order, star: &OpTable, x: Element, z: Element) -> Option<Element> {
    let solutions: ElementSet = carrier(order.len()).filter(|&w| order.leq(star.get(x, w), z)).collect();
    solutions.iter().find(|&w| solutions.iter().all(|v| order.leq(v, w)))
}

/// Computes `->` from `*` and `<=` by taking greatest solutions.
pub fn derive_arrow(order: &Order, star: &OpTable) -> Result<OpTable, ArrowError> {
    let n = order.len();
    let mut failed = Vec::new();
    let table = OpTable::from_fn(n, |x, z| {
        residual(order, star, x, z).unwrap_or_else(|| {
            failed.push((x, z));
            x
        })
    });
    if failed.is_empty() {
        Ok(table)
    } else {
        Err(ArrowError { pairs: failed })
    }
}

/// A finite IL-algebra, or in lenient builds a structure with the same shape
/// whose tables may break some laws. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteILAlgebra {
    name: Option<String>,
    names: Vec<String>,
    order: Order,
    join: OpTable,
    meet: OpTable,
    star: OpTable,
    arrow: OpTable,
    bottom: Element,
    unit: Element,
    top: Element,
    verified: bool,
}

/// A built algebra with the report produced while building it.
#[derive(Clone, Debug)]
pub struct Built {
    pub algebra: FiniteILAlgebra,
    pub report: VerificationReport,
}

fn resolve_table(
    rows: &[TableRow],
    index: &HashMap<&str, Element>,
    n: usize,
    table: &'static str,
) -> Result<OpTable, BuildError> {
    let lookup = |s: &str| index.get(s).copied().ok_or_else(|| BuildError::UnknownElement(s.to_string()));
    if rows.len() != n {
        return Err(BuildError::Dimension { table, detail: format!("{} rows for {} elements", rows.len(), n) });
    }
    let mut resolved: Vec<Option<Vec<Element>>> = vec![None; n];
    for row in rows {
        let r = lookup(&row.row)?;
        if row.entries.len() != n {
            return Err(BuildError::Dimension {
                table,
                detail: format!("row '{}' has {} entries, expected {}", row.row, row.entries.len(), n),
            });
        }
        if resolved[r.index()].is_some() {
            return Err(BuildError::Dimension { table, detail: format!("duplicate row '{}'", row.row) });
        }
        resolved[r.index()] = Some(row.entries.iter().map(|s| lookup(s)).collect::<Result<_, _>>()?);
    }
    let resolved: Vec<Vec<Element>> = resolved.into_iter().map(|r| r.expect("row count checked")).collect();
    Ok(OpTable::from_fn(n, |x, y| resolved[x.index()][y.index()]))
}

fn element_index(doc: &AlgebraSpecDocument) -> Result<HashMap<&str, Element>, BuildError> {
    let n = doc.elements.len();
    if n == 0 {
        return Err(BuildError::EmptyCarrier);
    }
    if n > MAX_CARRIER {
        return Err(BuildError::CarrierTooLarge(n));
    }
    let mut index: HashMap<&str, Element> = HashMap::new();
    for (i, name) in doc.elements.iter().enumerate() {
        if index.insert(name.as_str(), Element::new(i)).is_some() {
            return Err(BuildError::DuplicateElement(name.clone()));
        }
    }
    Ok(index)
}

fn closed_order(doc: &AlgebraSpecDocument, index: &HashMap<&str, Element>) -> Result<Order, BuildError> {
    let lookup = |s: &str| index.get(s).copied().ok_or_else(|| BuildError::UnknownElement(s.to_string()));
    let pairs = doc.order.iter().map(|(a, b)| Ok((lookup(a)?, lookup(b)?))).collect::<Result<Vec<_>, BuildError>>()?;
    Ok(Order::closure_of(doc.elements.len(), pairs))
}

/// The closed order and the `*` table of a document, without any law checks.
pub fn order_and_star(doc: &AlgebraSpecDocument) -> Result<(Order, OpTable), BuildError> {
    let index = element_index(doc)?;
    let order = closed_order(doc, &index)?;
    let star = resolve_table(&doc.star, &index, doc.elements.len(), "star")?;
    Ok((order, star))
}

/// Builds an algebra from a document.
///
/// The order is closed reflexively and transitively; it must be a lattice with
/// a least element in either mode. A missing arrow table is derived. In strict
/// mode any law violation is an error; in lenient mode the tables are kept as
/// given and the violations are returned in the report.
pub fn build_algebra(doc: &AlgebraSpecDocument, mode: BuildMode) -> Result<Built, BuildError> {
    let index = element_index(doc)?;
    let lookup = |s: &str| index.get(s).copied().ok_or_else(|| BuildError::UnknownElement(s.to_string()));
    let n = doc.elements.len();
    let order = closed_order(doc, &index)?;
    let lattice = order.check_lattice();
    if !lattice.passed() {
        return Err(BuildError::NotALattice(lattice));
    }
    let join = OpTable::from_fn(n, |x, y| order.join(x, y).expect("lattice checked"));
    let meet = OpTable::from_fn(n, |x, y| order.meet(x, y).expect("lattice checked"));
    let bottom = order.least().expect("lattice checked");
    let unit = lookup(&doc.unit)?;
    let star = resolve_table(&doc.star, &index, n, "star")?;
    let arrow = match &doc.arrow {
        Some(rows) => resolve_table(rows, &index, n, "arrow")?,
        None => derive_arrow(&order, &star).map_err(BuildError::NotResiduated)?,
    };
    let declared_top = doc.top.as_deref().map(lookup).transpose()?;
    let declared_bottom = doc.bottom.as_deref().map(lookup).transpose()?;

    let top = arrow.get(bottom, bottom);
    let mut algebra = FiniteILAlgebra {
        name: doc.name.clone(),
        names: doc.elements.clone(),
        order,
        join,
        meet,
        star,
        arrow,
        bottom,
        unit,
        top,
        verified: false,
    };

    let mut report = VerificationReport::new();
    report.extend(laws::check_monoid(&algebra));
    report.extend(laws::check_residuation(&algebra));
    if doc.arrow.is_some() {
        report.extend(laws::check_arrow_table(&algebra));
    }
    report.extend(laws::check_law(&algebra, Law::TopGreatest));
    if let Some(t) = declared_top {
        if t != top {
            report.push(Violation::new(Law::DeclaredTop, vec![t], Mismatch::Value { found: t, expected: top }));
        }
    }
    if let Some(b) = declared_bottom {
        if b != bottom {
            report.push(Violation::new(Law::DeclaredBottom, vec![b], Mismatch::Value { found: b, expected: bottom }));
        }
    }

    if mode == BuildMode::Strict && !report.passed() {
        return Err(BuildError::LawViolations(report));
    }
    algebra.verified = report.passed();
    Ok(Built { algebra, report })
}

impl FiniteILAlgebra {
    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_name(&self, e: Element) -> &str {
        &self.names[e.index()]
    }

    pub fn element_named(&self, name: &str) -> Option<Element> {
        self.names.iter().position(|s| s == name).map(Element::new)
    }

    /// Checked conversion from a raw index.
    pub fn element(&self, index: usize) -> Result<Element, IndexOutOfRange> {
        if index < self.size() {
            Ok(Element::new(index))
        } else {
            Err(IndexOutOfRange { index, size: self.size() })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + Clone {
        carrier(self.size())
    }

    pub fn carrier_set(&self) -> ElementSet {
        ElementSet::full(self.size())
    }

    /// Whether every build check passed. Lenient builds of erratic tables are
    /// not verified; operations that need the full laws refuse them.
    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn order(&self) -> &Order {
        &self.order
    }

    pub fn leq(&self, x: Element, y: Element) -> bool {
        self.order.leq(x, y)
    }

    pub fn join(&self, x: Element, y: Element) -> Element {
        self.join.get(x, y)
    }

    pub fn meet(&self, x: Element, y: Element) -> Element {
        self.meet.get(x, y)
    }

    pub fn star(&self, x: Element, y: Element) -> Element {
        self.star.get(x, y)
    }

    pub fn arrow(&self, x: Element, y: Element) -> Element {
        self.arrow.get(x, y)
    }

    pub fn apply(&self, op: Operation, x: Element, y: Element) -> Element {
        match op {
            Operation::Join => self.join(x, y),
            Operation::Meet => self.meet(x, y),
            Operation::Star => self.star(x, y),
            Operation::Arrow => self.arrow(x, y),
        }
    }

    /// Table lookup by raw indices.
    pub fn try_apply(&self, op: Operation, x: usize, y: usize) -> Result<Element, IndexOutOfRange> {
        Ok(self.apply(op, self.element(x)?, self.element(y)?))
    }

    pub fn try_leq(&self, x: usize, y: usize) -> Result<bool, IndexOutOfRange> {
        Ok(self.leq(self.element(x)?, self.element(y)?))
    }

    pub fn table(&self, op: Operation) -> &OpTable {
        match op {
            Operation::Join => &self.join,
            Operation::Meet => &self.meet,
            Operation::Star => &self.star,
            Operation::Arrow => &self.arrow,
        }
    }

    pub fn bottom(&self) -> Element {
        self.bottom
    }

    pub fn unit(&self) -> Element {
        self.unit
    }

    /// `bot -> bot`.
    pub fn top(&self) -> Element {
        self.top
    }

    /// Poset and lattice checks on the stored order.
    pub fn check_lattice(&self) -> VerificationReport {
        self.order.check_lattice()
    }

    /// A document that rebuilds this algebra: full order relation and both tables.
    pub fn to_document(&self) -> AlgebraSpecDocument {
        let name = |e: Element| self.names[e.index()].clone();
        AlgebraSpecDocument {
            name: self.name.clone(),
            elements: self.names.clone(),
            order: self.order.pairs().filter(|(x, y)| x != y).map(|(x, y)| (name(x), name(y))).collect(),
            unit: name(self.unit),
            top: None,
            bottom: None,
            star: self.star.to_rows(&self.names),
            arrow: Some(self.arrow.to_rows(&self.names)),
        }
    }

    /// Renders a set as `{a,b,c}`.
    pub fn format_set(&self, set: ElementSet) -> String {
        let names: Vec<&str> = set.iter().map(|e| self.element_name(e)).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Resolves a list of element names into a set.
    pub fn set_of<'s>(&self, names: impl IntoIterator<Item = &'s str>) -> Result<ElementSet, String> {
        names
            .into_iter()
            .map(|s| self.element_named(s).ok_or_else(|| s.to_string()))
            .collect::<Result<ElementSet, String>>()
    }
}
