//! The congruence induced by a filter and the quotient algebra `L/F`.
//!
//! `x ~ y` iff `x->y` and `y->x` are both in `F`. Blocks are named after their
//! least-index member, written `[name]`. Representative independence of all
//! four operations is checked exhaustively rather than assumed, and the
//! induced order (`[x] <= [y]` iff `x->y` in `F`) is cross-checked against the
//! order read off the induced join and meet tables.

use thiserror::Error;

use crate::algebra::{build_algebra, BuildError, BuildMode, FiniteILAlgebra, OpTable, Operation};
use crate::element::{carrier, Element, ElementSet};
use crate::filter::{is_affine_filter, is_distributive_filter, is_filter, is_prime_filter, FilterFailure};
use crate::laws::{check_identities, check_integrality_equivalence};
use crate::report::VerificationReport;
use crate::spec::AlgebraSpecDocument;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("quotients need an algebra that passed every build check")]
    Unverified,
    #[error("not a filter: {}", .0.condition())]
    NotAFilter(FilterFailure),
    #[error("induced relation is not {property} at {witness:?}")]
    NotACongruence { property: &'static str, witness: Vec<Element> },
    #[error("{op} is not well defined on blocks: {x:?}~{x1:?}, {y:?}~{y1:?}")]
    WellDefinedness { op: Operation, x: Element, x1: Element, y: Element, y1: Element },
    #[error("arrow-membership order disagrees with the induced lattice order at {x:?}, {y:?}")]
    OrderMismatch { x: Element, y: Element },
    #[error("induced tables do not form a lattice-ordered structure: {0}")]
    InducedBuild(BuildError),
}

/// Blocks of the congruence, ordered by least member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<ElementSet>,
    block_of: Vec<usize>,
}

impl Partition {
    pub fn blocks(&self) -> &[ElementSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, x: Element) -> usize {
        self.block_of[x.index()]
    }

    pub fn representative(&self, block: usize) -> Element {
        self.blocks[block].first().expect("blocks are non-empty")
    }

    pub fn all_singletons(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }
}

fn related(alg: &FiniteILAlgebra, filter: ElementSet, x: Element, y: Element) -> bool {
    filter.contains(alg.arrow(x, y)) && filter.contains(alg.arrow(y, x))
}

/// Partition of the carrier into congruence classes of `filter`.
pub fn congruence_classes(alg: &FiniteILAlgebra, filter: ElementSet) -> Result<Partition, QuotientError> {
    if !alg.is_verified() {
        return Err(QuotientError::Unverified);
    }
    is_filter(alg, filter).map_err(QuotientError::NotAFilter)?;
    let rel = |x, y| related(alg, filter, x, y);
    for x in alg.elements() {
        if !rel(x, x) {
            return Err(QuotientError::NotACongruence { property: "reflexive", witness: vec![x] });
        }
        for y in alg.elements() {
            if rel(x, y) && !rel(y, x) {
                return Err(QuotientError::NotACongruence { property: "symmetric", witness: vec![x, y] });
            }
            for z in alg.elements() {
                if rel(x, y) && rel(y, z) && !rel(x, z) {
                    return Err(QuotientError::NotACongruence { property: "transitive", witness: vec![x, y, z] });
                }
            }
        }
    }
    let mut blocks: Vec<ElementSet> = Vec::new();
    let mut block_of = vec![usize::MAX; alg.size()];
    for x in alg.elements() {
        if block_of[x.index()] != usize::MAX {
            continue;
        }
        let block: ElementSet = alg.elements().filter(|&y| rel(x, y)).collect();
        for y in block {
            block_of[y.index()] = blocks.len();
        }
        blocks.push(block);
    }
    Ok(Partition { blocks, block_of })
}

/// Yes/no outcomes of the quotient theorems for one filter.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QuotientVerdicts {
    /// The induced structure passes every build check and the identity suite.
    pub il_algebra: bool,
    pub distributive_lattice: bool,
    pub linear: bool,
    pub unit_equals_top: bool,
    /// `x*y <= x` for all blocks.
    pub integral: bool,
    pub singleton_blocks: bool,
}

#[derive(Clone, Debug)]
pub struct QuotientResult<'a> {
    source: &'a FiniteILAlgebra,
    filter: ElementSet,
    partition: Partition,
    algebra: FiniteILAlgebra,
    report: VerificationReport,
    verdicts: QuotientVerdicts,
}

impl<'a> QuotientResult<'a> {
    pub fn source(&self) -> &'a FiniteILAlgebra {
        self.source
    }

    pub fn filter(&self) -> ElementSet {
        self.filter
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    /// The induced algebra; element `k` is block `k`.
    pub fn algebra(&self) -> &FiniteILAlgebra {
        &self.algebra
    }

    /// Build checks plus identity suite on the induced algebra.
    pub fn report(&self) -> &VerificationReport {
        &self.report
    }

    pub fn verdicts(&self) -> QuotientVerdicts {
        self.verdicts
    }

    pub fn project(&self, x: Element) -> Element {
        Element::new(self.partition.block_of(x))
    }

    /// `[bot]`, `[1]` and `[top]` of the source, as quotient elements.
    pub fn distinguished(&self) -> (Element, Element, Element) {
        (self.project(self.source.bottom()), self.project(self.source.unit()), self.project(self.source.top()))
    }

    /// First source pair where `[x] <= [y]` (by the induced order, or by the
    /// induced join) disagrees with `x->y` being in the filter.
    pub fn order_counterexample(&self) -> Option<(Element, Element)> {
        let q = &self.algebra;
        self.source.elements().flat_map(|x| self.source.elements().map(move |y| (x, y))).find(|&(x, y)| {
            let (px, py) = (self.project(x), self.project(y));
            let in_filter = self.filter.contains(self.source.arrow(x, y));
            q.leq(px, py) != in_filter || (q.join(px, py) == py) != in_filter
        })
    }

    /// First source pair and operation where projection fails to be a homomorphism.
    pub fn homomorphism_counterexample(&self) -> Option<(Operation, Element, Element)> {
        for op in Operation::ALL {
            for x in self.source.elements() {
                for y in self.source.elements() {
                    let image = self.project(self.source.apply(op, x, y));
                    if image != self.algebra.apply(op, self.project(x), self.project(y)) {
                        return Some((op, x, y));
                    }
                }
            }
        }
        None
    }
}

fn check_well_defined(alg: &FiniteILAlgebra, partition: &Partition) -> Result<(), QuotientError> {
    for op in Operation::ALL {
        for x in alg.elements() {
            for y in alg.elements() {
                let block = partition.block_of(alg.apply(op, x, y));
                for x1 in partition.blocks()[partition.block_of(x)] {
                    for y1 in partition.blocks()[partition.block_of(y)] {
                        if partition.block_of(alg.apply(op, x1, y1)) != block {
                            return Err(QuotientError::WellDefinedness { op, x, x1, y, y1 });
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn induced_lattice_is_distributive(q: &FiniteILAlgebra) -> bool {
    q.elements().all(|x| {
        q.elements().all(|y| q.elements().all(|z| q.join(x, q.meet(y, z)) == q.meet(q.join(x, y), q.join(x, z))))
    })
}

/// Builds `L/F` with `[x] op [y] = [x op y]`.
pub fn quotient_algebra(alg: &FiniteILAlgebra, filter: ElementSet) -> Result<QuotientResult<'_>, QuotientError> {
    let partition = congruence_classes(alg, filter)?;
    check_well_defined(alg, &partition)?;

    let m = partition.len();
    let rep = |k: Element| partition.representative(k.index());
    let block = |x: Element| Element::new(partition.block_of(x));
    let induced = |op| OpTable::from_fn(m, |k, l| block(alg.apply(op, rep(k), rep(l))));
    let (join, meet) = (induced(Operation::Join), induced(Operation::Meet));

    let mut order_pairs = Vec::new();
    for k in carrier(m) {
        for l in carrier(m) {
            let by_arrow = filter.contains(alg.arrow(rep(k), rep(l)));
            let by_join = join.get(k, l) == l;
            let by_meet = meet.get(k, l) == k;
            if by_arrow != by_join || by_arrow != by_meet {
                return Err(QuotientError::OrderMismatch { x: rep(k), y: rep(l) });
            }
            if by_arrow && k != l {
                order_pairs.push((k, l));
            }
        }
    }

    let names: Vec<String> = carrier(m).map(|k| format!("[{}]", alg.element_name(rep(k)))).collect();
    let name = |k: Element| names[k.index()].clone();
    let doc = AlgebraSpecDocument {
        name: alg.name().map(|s| format!("{s}-quotient")),
        elements: names.clone(),
        order: order_pairs.iter().map(|&(k, l)| (name(k), name(l))).collect(),
        unit: name(block(alg.unit())),
        top: None,
        bottom: None,
        star: induced(Operation::Star).to_rows(&names),
        arrow: Some(induced(Operation::Arrow).to_rows(&names)),
    };
    let built = build_algebra(&doc, BuildMode::Lenient).map_err(QuotientError::InducedBuild)?;
    let q = built.algebra;
    let mut report = built.report;
    report.extend(check_identities(&q));

    let verdicts = QuotientVerdicts {
        il_algebra: report.passed(),
        distributive_lattice: induced_lattice_is_distributive(&q),
        linear: q.order().is_total(),
        unit_equals_top: q.unit() == q.top(),
        integral: check_integrality_equivalence(&q).integral,
        singleton_blocks: partition.all_singletons(),
    };
    Ok(QuotientResult { source: alg, filter, partition, algebra: q, report, verdicts })
}

/// `[x] <= [y]` iff `x->y` in `F`, for every pair.
pub fn check_quotient_order(alg: &FiniteILAlgebra, filter: ElementSet) -> Result<bool, QuotientError> {
    Ok(quotient_algebra(alg, filter)?.order_counterexample().is_none())
}

/// A conditional claim about a quotient: when the filter has a property
/// (`premise`), the quotient has another (`conclusion`). The conclusion is
/// computed either way.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TheoremVerdict {
    pub premise: bool,
    pub conclusion: bool,
}

impl TheoremVerdict {
    pub fn holds(&self) -> bool {
        !self.premise || self.conclusion
    }
}

/// Distributive filter implies a distributive quotient lattice.
pub fn check_distributive_quotient(alg: &FiniteILAlgebra, filter: ElementSet) -> Result<TheoremVerdict, QuotientError> {
    let q = quotient_algebra(alg, filter)?;
    Ok(TheoremVerdict {
        premise: is_distributive_filter(alg, filter).is_ok(),
        conclusion: q.verdicts.distributive_lattice,
    })
}

/// Prime filter implies a totally ordered quotient.
pub fn check_linear_quotient(alg: &FiniteILAlgebra, filter: ElementSet) -> Result<TheoremVerdict, QuotientError> {
    let q = quotient_algebra(alg, filter)?;
    Ok(TheoremVerdict { premise: is_prime_filter(alg, filter).is_ok(), conclusion: q.verdicts.linear })
}

/// Affine filter implies `[1] = [top]` and an integral quotient (a residuated lattice).
pub fn check_affine_quotient(alg: &FiniteILAlgebra, filter: ElementSet) -> Result<TheoremVerdict, QuotientError> {
    let q = quotient_algebra(alg, filter)?;
    let (_, unit, top) = q.distinguished();
    Ok(TheoremVerdict { premise: is_affine_filter(alg, filter), conclusion: unit == top && q.verdicts.integral })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::parse_spec;

    const CHAIN3_UP: &str = "\
elements bot one t
order bot <= one <= t
unit one
star bot : bot bot bot
star one : bot one t
star t : bot t t
";

    fn build(text: &str) -> FiniteILAlgebra {
        build_algebra(&parse_spec(text).unwrap(), BuildMode::Strict).unwrap().algebra
    }

    #[test]
    fn whole_carrier_gives_one_block() {
        let alg = build(CHAIN3_UP);
        let q = quotient_algebra(&alg, alg.carrier_set()).unwrap();
        assert_eq!(q.partition().len(), 1);
        assert_eq!(q.algebra().size(), 1);
        assert_eq!(q.algebra().names(), ["[bot]".to_string()]);
        assert!(q.verdicts().il_algebra);
        assert!(q.verdicts().unit_equals_top);
    }

    #[test]
    fn upset_of_unit_gives_singletons() {
        let alg = build(CHAIN3_UP);
        let up = alg.order().up_set(alg.unit());
        let q = quotient_algebra(&alg, up).unwrap();
        assert!(q.verdicts().singleton_blocks);
        assert!(q.homomorphism_counterexample().is_none());
        assert!(q.order_counterexample().is_none());
        assert_eq!(q.distinguished(), (Element::new(0), Element::new(1), Element::new(2)));
    }

    #[test]
    fn non_filter_rejected() {
        let alg = build(CHAIN3_UP);
        let t = alg.element_named("t").unwrap();
        assert_eq!(
            quotient_algebra(&alg, ElementSet::singleton(t)).unwrap_err(),
            QuotientError::NotAFilter(FilterFailure::MissingUnit)
        );
    }

    #[test]
    fn affine_premise_false_still_reports_conclusion() {
        let alg = build(CHAIN3_UP);
        let up = alg.order().up_set(alg.unit());
        // t->1 = bot is not in {1, t}
        let verdict = check_affine_quotient(&alg, up).unwrap();
        assert_eq!(verdict, TheoremVerdict { premise: false, conclusion: false });
        assert!(verdict.holds());
    }
}
