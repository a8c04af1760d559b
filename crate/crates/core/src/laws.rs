//! Exhaustive law checks over finite tables.
//!
//! Each law has a tuple shape and an evaluator. Checking a law walks its
//! tuples in lexicographic index order, so the first violation recorded for a
//! law is always the lexicographically first counterexample.

use itertools::Itertools;

use crate::algebra::{residual, FiniteILAlgebra, Operation};
use crate::element::Element;
use crate::report::{Law, Mismatch, VerificationReport, Violation};

/// The derived identities checked by [`check_identities`], in report order.
pub const IDENTITY_LAWS: [Law; 14] = [
    Law::StarDistributesOverJoin,
    Law::StarPreservesBottom,
    Law::TopGreatest,
    Law::StarBelowMeetUnderUnit,
    Law::JoinBelowStarAboveUnit,
    Law::ArrowComposition,
    Law::UnitArrow,
    Law::StarMonotone,
    Law::ArrowMonotone,
    Law::Currying,
    Law::ModusPonens,
    Law::ArrowReflexive,
    Law::MeetOfArrowsSharedAntecedent,
    Law::MeetOfArrowsSharedConsequent,
];

fn quantified_arity(law: Law) -> usize {
    match law {
        Law::LeastElement | Law::DeclaredTop | Law::DeclaredBottom => 0,
        Law::Reflexivity
        | Law::UnitLaw
        | Law::UnitArrow
        | Law::StarPreservesBottom
        | Law::TopGreatest
        | Law::ArrowReflexive => 1,
        Law::Antisymmetry
        | Law::JoinExists
        | Law::MeetExists
        | Law::Commutativity
        | Law::ArrowTable
        | Law::StarBelowMeetUnderUnit
        | Law::JoinBelowStarAboveUnit
        | Law::ModusPonens => 2,
        Law::StarMonotone | Law::ArrowMonotone => 4,
        _ => 3,
    }
}

/// Tuples a law quantifies over, as they appear in witnesses.
fn tuples(alg: &FiniteILAlgebra, law: Law) -> Vec<Vec<Element>> {
    let n = alg.size();
    let free: Vec<Vec<Element>> = match quantified_arity(law) {
        0 => vec![vec![]],
        1 => alg.elements().map(|x| vec![x]).collect(),
        k => (0..k).map(|_| alg.elements()).multi_cartesian_product().collect(),
    };
    debug_assert!(free.iter().all(|t| t.iter().all(|e| e.index() < n)));
    match law {
        // witnesses name the operands: (x, 1) for x*1, (1, x) for 1->x
        Law::UnitLaw => free.into_iter().map(|t| vec![t[0], alg.unit()]).collect(),
        Law::UnitArrow => free.into_iter().map(|t| vec![alg.unit(), t[0]]).collect(),
        // checked against the document at build time, not quantified
        Law::DeclaredTop | Law::DeclaredBottom => Vec::new(),
        _ => free,
    }
}

fn equal(found: Element, expected: Element) -> Option<Mismatch> {
    (found != expected).then_some(Mismatch::Value { found, expected })
}

fn below(alg: &FiniteILAlgebra, lhs: Element, rhs: Element) -> Option<Mismatch> {
    (!alg.leq(lhs, rhs)).then_some(Mismatch::NotBelow { lhs, rhs })
}

/// Evaluates one law at one witness tuple. `None` means the law holds there.
///
/// Order-only laws (`reflexivity` .. `least-element`) are evaluated against the
/// algebra's stored order.
pub fn evaluate(alg: &FiniteILAlgebra, law: Law, w: &[Element]) -> Option<Mismatch> {
    let (star, arrow, join, meet) =
        (|x, y| alg.star(x, y), |x, y| alg.arrow(x, y), |x, y| alg.join(x, y), |x, y| alg.meet(x, y));
    let one = alg.unit();
    let order = alg.order();
    match law {
        Law::Reflexivity => below(alg, w[0], w[0]),
        Law::Antisymmetry => (w[0] != w[1] && alg.leq(w[0], w[1]) && alg.leq(w[1], w[0]))
            .then_some(Mismatch::Distinct { lhs: w[0], rhs: w[1] }),
        Law::Transitivity => {
            if alg.leq(w[0], w[1]) && alg.leq(w[1], w[2]) {
                below(alg, w[0], w[2])
            } else {
                None
            }
        }
        Law::JoinExists => order.join(w[0], w[1]).is_none().then_some(Mismatch::Missing),
        Law::MeetExists => order.meet(w[0], w[1]).is_none().then_some(Mismatch::Missing),
        Law::LeastElement => order.least().is_none().then_some(Mismatch::Missing),
        Law::Commutativity => equal(star(w[0], w[1]), star(w[1], w[0])),
        Law::Associativity => {
            let (x, y, z) = (w[0], w[1], w[2]);
            equal(star(star(x, y), z), star(x, star(y, z)))
        }
        Law::UnitLaw => (w[1] == one).then(|| equal(star(w[0], w[1]), w[0])).flatten(),
        Law::ResiduationForward => {
            let (x, y, z) = (w[0], w[1], w[2]);
            if alg.leq(star(x, y), z) {
                below(alg, x, arrow(y, z))
            } else {
                None
            }
        }
        Law::ResiduationBackward => {
            let (x, y, z) = (w[0], w[1], w[2]);
            if alg.leq(x, arrow(y, z)) {
                below(alg, star(x, y), z)
            } else {
                None
            }
        }
        Law::ArrowTable => {
            let (x, z) = (w[0], w[1]);
            match residual(order, alg.table(Operation::Star), x, z) {
                Some(r) => equal(arrow(x, z), r),
                None => Some(Mismatch::Missing),
            }
        }
        Law::TopGreatest => below(alg, w[0], alg.top()),
        // declarations are checked at build time; the witness is the declared element
        Law::DeclaredTop => equal(w[0], alg.top()),
        Law::DeclaredBottom => equal(w[0], alg.bottom()),
        Law::StarDistributesOverJoin => {
            let (x, y, z) = (w[0], w[1], w[2]);
            equal(star(x, join(y, z)), join(star(x, y), star(x, z)))
        }
        Law::StarPreservesBottom => equal(star(w[0], alg.bottom()), alg.bottom()),
        Law::StarBelowMeetUnderUnit => {
            let (x, y) = (w[0], w[1]);
            if alg.leq(x, one) && alg.leq(y, one) {
                below(alg, star(x, y), meet(x, y))
            } else {
                None
            }
        }
        Law::JoinBelowStarAboveUnit => {
            let (x, y) = (w[0], w[1]);
            if alg.leq(one, x) && alg.leq(one, y) {
                below(alg, join(x, y), star(x, y))
            } else {
                None
            }
        }
        Law::ArrowComposition => {
            let (x, y, z) = (w[0], w[1], w[2]);
            below(alg, star(arrow(x, y), arrow(y, z)), arrow(x, z))
        }
        Law::UnitArrow => (w[0] == one).then(|| equal(arrow(w[0], w[1]), w[1])).flatten(),
        Law::StarMonotone => {
            let (x, y, x1, y1) = (w[0], w[1], w[2], w[3]);
            if alg.leq(x, x1) && alg.leq(y, y1) {
                below(alg, star(x, y), star(x1, y1))
            } else {
                None
            }
        }
        Law::ArrowMonotone => {
            let (x, y, x1, y1) = (w[0], w[1], w[2], w[3]);
            if alg.leq(x, x1) && alg.leq(y, y1) {
                below(alg, arrow(x1, y), arrow(x, y1))
            } else {
                None
            }
        }
        Law::Currying => {
            let (x, y, z) = (w[0], w[1], w[2]);
            equal(arrow(x, arrow(y, z)), arrow(star(x, y), z))
        }
        Law::ModusPonens => {
            let (x, y) = (w[0], w[1]);
            below(alg, star(x, arrow(x, y)), y)
        }
        Law::ArrowReflexive => below(alg, one, arrow(w[0], w[0])),
        Law::MeetOfArrowsSharedAntecedent => {
            let (x, y, z) = (w[0], w[1], w[2]);
            equal(meet(arrow(z, x), arrow(z, y)), arrow(z, meet(x, y)))
        }
        Law::MeetOfArrowsSharedConsequent => {
            let (x, y, z) = (w[0], w[1], w[2]);
            equal(meet(arrow(x, z), arrow(y, z)), arrow(join(x, y), z))
        }
    }
}

/// Every violation of `law`, in lexicographic witness order.
pub fn check_law(alg: &FiniteILAlgebra, law: Law) -> VerificationReport {
    let violations = tuples(alg, law)
        .into_iter()
        .filter_map(|w| evaluate(alg, law, &w).map(|m| Violation::new(law, w, m)))
        .collect();
    VerificationReport::from_violations(violations)
}

fn check_laws(alg: &FiniteILAlgebra, laws: &[Law]) -> VerificationReport {
    let mut report = VerificationReport::new();
    for &law in laws {
        report.extend(check_law(alg, law));
    }
    report
}

/// Re-evaluates a recorded violation; true when the witness still fails.
pub fn is_genuine(alg: &FiniteILAlgebra, violation: &Violation) -> bool {
    evaluate(alg, violation.law, &violation.witness) == Some(violation.mismatch)
}

/// Commutativity over all pairs, associativity over all triples, and the unit law.
pub fn check_monoid(alg: &FiniteILAlgebra) -> VerificationReport {
    check_laws(alg, &[Law::Commutativity, Law::Associativity, Law::UnitLaw])
}

/// Both directions of `x*y <= z iff x <= y->z` over all triples.
pub fn check_residuation(alg: &FiniteILAlgebra) -> VerificationReport {
    check_laws(alg, &[Law::ResiduationForward, Law::ResiduationBackward])
}

/// Compares the stored arrow table against the residual of `*`.
pub fn check_arrow_table(alg: &FiniteILAlgebra) -> VerificationReport {
    check_law(alg, Law::ArrowTable)
}

/// The derived identity suite ([`IDENTITY_LAWS`]). On a verified algebra this
/// always passes; failures point at invalid input.
pub fn check_identities(alg: &FiniteILAlgebra) -> VerificationReport {
    check_laws(alg, &IDENTITY_LAWS)
}

/// `Ok` when `x*x = x` for every `x`, otherwise the first non-idempotent element.
pub fn is_idempotent(alg: &FiniteILAlgebra) -> Result<(), Element> {
    match alg.elements().find(|&x| alg.star(x, x) != x) {
        Some(x) => Err(x),
        None => Ok(()),
    }
}

/// Both sides of the integrality equivalence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntegralityCheck {
    /// `x*y <= x` for all `x, y`.
    pub integral: bool,
    /// First `(x, y)` with `x*y` not below `x`.
    pub witness: Option<(Element, Element)>,
    pub top_is_unit: bool,
}

impl IntegralityCheck {
    pub fn equivalence_holds(&self) -> bool {
        self.integral == self.top_is_unit
    }
}

pub fn check_integrality_equivalence(alg: &FiniteILAlgebra) -> IntegralityCheck {
    let witness = alg.elements().cartesian_product(alg.elements()).find(|&(x, y)| !alg.leq(alg.star(x, y), x));
    IntegralityCheck { integral: witness.is_none(), witness, top_is_unit: alg.top() == alg.unit() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, BuildMode};
    use crate::spec::parse_spec;

    fn build(text: &str) -> FiniteILAlgebra {
        build_algebra(&parse_spec(text).unwrap(), BuildMode::Strict).unwrap().algebra
    }

    const ONE: &str = "elements o\nunit o\nstar o : o\n";
    const CHAIN2_MEET: &str = "elements bot one\norder bot <= one\nunit one\nstar bot : bot bot\nstar one : bot one\n";
    // three-element chain bot < one < t with one*t = t*t = t: a non-integral algebra
    const CHAIN3_UP: &str = "\
elements bot one t
order bot <= one <= t
unit one
star bot : bot bot bot
star one : bot one t
star t : bot t t
";

    #[test]
    fn trivial_algebras_pass_everything() {
        for text in [ONE, CHAIN2_MEET, CHAIN3_UP] {
            let alg = build(text);
            assert!(check_monoid(&alg).passed());
            assert!(check_residuation(&alg).passed());
            assert!(check_identities(&alg).passed(), "{:?}", check_identities(&alg));
        }
    }

    #[test]
    fn idempotence() {
        assert_eq!(is_idempotent(&build(ONE)), Ok(()));
        assert_eq!(is_idempotent(&build(CHAIN2_MEET)), Ok(()));
        assert_eq!(is_idempotent(&build(CHAIN3_UP)), Ok(()));
    }

    #[test]
    fn integrality_equivalence_both_ways() {
        for text in [ONE, CHAIN2_MEET] {
            let check = check_integrality_equivalence(&build(text));
            assert!(check.integral && check.top_is_unit);
        }
        let check = check_integrality_equivalence(&build(CHAIN3_UP));
        assert!(!check.integral && !check.top_is_unit);
        assert_eq!(check.witness, Some((Element::new(1), Element::new(2))));
    }

    #[test]
    fn tuple_counts() {
        let alg = build(CHAIN3_UP);
        assert_eq!(tuples(&alg, Law::Associativity).len(), 27);
        assert_eq!(tuples(&alg, Law::StarMonotone).len(), 81);
        assert_eq!(tuples(&alg, Law::UnitLaw), alg.elements().map(|x| vec![x, alg.unit()]).collect::<Vec<_>>());
    }

    #[test]
    fn lenient_non_commutative_table_is_witnessed() {
        let text = "elements bot one\norder bot <= one\nunit one\nstar bot : bot one\nstar one : bot one\n\
                    arrow bot : one one\narrow one : bot one\n";
        let built = build_algebra(&parse_spec(text).unwrap(), BuildMode::Lenient).unwrap();
        let v = built.report.first_of(Law::Commutativity).unwrap();
        assert_eq!(v.witness, vec![Element::new(0), Element::new(1)]);
        assert!(!built.algebra.is_verified());
        for v in built.report.violations() {
            assert!(is_genuine(&built.algebra, v), "{v:?}");
        }
    }
}
