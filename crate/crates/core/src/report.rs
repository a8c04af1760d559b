//! Law identifiers, violations with witnesses, and verification reports.

use std::fmt;

use crate::element::Element;

/// Every law the workbench can check. The `id` strings are stable and appear
/// in machine reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Law {
    // poset and lattice structure
    Reflexivity,
    Antisymmetry,
    Transitivity,
    JoinExists,
    MeetExists,
    LeastElement,
    // monoid
    Commutativity,
    Associativity,
    UnitLaw,
    // residuation: (x*y <= z) => (x <= y->z), and the converse
    ResiduationForward,
    ResiduationBackward,
    /// A stored `->` entry differs from the residual computed from `*` and `<=`.
    ArrowTable,
    TopGreatest,
    DeclaredTop,
    DeclaredBottom,
    // derived identities
    StarDistributesOverJoin,
    StarPreservesBottom,
    StarBelowMeetUnderUnit,
    JoinBelowStarAboveUnit,
    ArrowComposition,
    UnitArrow,
    StarMonotone,
    ArrowMonotone,
    Currying,
    ModusPonens,
    ArrowReflexive,
    MeetOfArrowsSharedAntecedent,
    MeetOfArrowsSharedConsequent,
}

impl Law {
    pub const ALL: [Law; 28] = [
        Law::Reflexivity,
        Law::Antisymmetry,
        Law::Transitivity,
        Law::JoinExists,
        Law::MeetExists,
        Law::LeastElement,
        Law::Commutativity,
        Law::Associativity,
        Law::UnitLaw,
        Law::ResiduationForward,
        Law::ResiduationBackward,
        Law::ArrowTable,
        Law::TopGreatest,
        Law::DeclaredTop,
        Law::DeclaredBottom,
        Law::StarDistributesOverJoin,
        Law::StarPreservesBottom,
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

    pub fn id(self) -> &'static str {
        match self {
            Law::Reflexivity => "reflexivity",
            Law::Antisymmetry => "antisymmetry",
            Law::Transitivity => "transitivity",
            Law::JoinExists => "join-exists",
            Law::MeetExists => "meet-exists",
            Law::LeastElement => "least-element",
            Law::Commutativity => "commutativity",
            Law::Associativity => "associativity",
            Law::UnitLaw => "unit-law",
            Law::ResiduationForward => "residuation-forward",
            Law::ResiduationBackward => "residuation-backward",
            Law::ArrowTable => "arrow-table",
            Law::TopGreatest => "top-greatest",
            Law::DeclaredTop => "declared-top",
            Law::DeclaredBottom => "declared-bottom",
            Law::StarDistributesOverJoin => "star-distributes-over-join",
            Law::StarPreservesBottom => "star-preserves-bottom",
            Law::StarBelowMeetUnderUnit => "star-below-meet-under-unit",
            Law::JoinBelowStarAboveUnit => "join-below-star-above-unit",
            Law::ArrowComposition => "arrow-composition",
            Law::UnitArrow => "unit-arrow",
            Law::StarMonotone => "star-monotone",
            Law::ArrowMonotone => "arrow-monotone",
            Law::Currying => "currying",
            Law::ModusPonens => "modus-ponens",
            Law::ArrowReflexive => "arrow-reflexive",
            Law::MeetOfArrowsSharedAntecedent => "meet-of-arrows-shared-antecedent",
            Law::MeetOfArrowsSharedConsequent => "meet-of-arrows-shared-consequent",
        }
    }

    pub fn from_id(id: &str) -> Option<Law> {
        Law::ALL.into_iter().find(|law| law.id() == id)
    }

    /// Human-readable statement, with variables named as in the witness tuple.
    pub fn statement(self) -> &'static str {
        match self {
            Law::Reflexivity => "x <= x",
            Law::Antisymmetry => "x <= y and y <= x imply x = y",
            Law::Transitivity => "x <= y and y <= z imply x <= z",
            Law::JoinExists => "x and y have a least upper bound",
            Law::MeetExists => "x and y have a greatest lower bound",
            Law::LeastElement => "some element is below every element",
            Law::Commutativity => "x*y = y*x",
            Law::Associativity => "(x*y)*z = x*(y*z)",
            Law::UnitLaw => "x*1 = x",
            Law::ResiduationForward => "x*y <= z implies x <= y->z",
            Law::ResiduationBackward => "x <= y->z implies x*y <= z",
            Law::ArrowTable => "x->z is the greatest w with x*w <= z",
            Law::TopGreatest => "x <= bot->bot",
            Law::DeclaredTop => "declared top equals bot->bot",
            Law::DeclaredBottom => "declared bottom is the least element",
            Law::StarDistributesOverJoin => "x*(y|z) = (x*y)|(x*z)",
            Law::StarPreservesBottom => "x*bot = bot",
            Law::StarBelowMeetUnderUnit => "x,y <= 1 implies x*y <= x&y",
            Law::JoinBelowStarAboveUnit => "1 <= x,y implies x|y <= x*y",
            Law::ArrowComposition => "(x->y)*(y->z) <= x->z",
            Law::UnitArrow => "1->x = x",
            Law::StarMonotone => "x <= x1, y <= y1 imply x*y <= x1*y1",
            Law::ArrowMonotone => "x <= x1, y <= y1 imply x1->y <= x->y1",
            Law::Currying => "x->(y->z) = (x*y)->z",
            Law::ModusPonens => "x*(x->y) <= y",
            Law::ArrowReflexive => "1 <= x->x",
            Law::MeetOfArrowsSharedAntecedent => "(z->x)&(z->y) = z->(x&y)",
            Law::MeetOfArrowsSharedConsequent => "(x->z)&(y->z) = (x|y)->z",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// What went wrong at a witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mismatch {
    /// A computed value differs from the value the law requires.
    Value { found: Element, expected: Element },
    /// `lhs <= rhs` was required but does not hold.
    NotBelow { lhs: Element, rhs: Element },
    /// `lhs <= rhs` holds but was required not to (used for antisymmetry, where
    /// `lhs <= rhs` and `rhs <= lhs` hold for distinct elements).
    Distinct { lhs: Element, rhs: Element },
    /// A required element (join, meet, least element, residual) does not exist.
    Missing,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub law: Law,
    pub witness: Vec<Element>,
    pub mismatch: Mismatch,
}

impl Violation {
    pub fn new(law: Law, witness: Vec<Element>, mismatch: Mismatch) -> Self {
        Violation { law, witness, mismatch }
    }

    /// Renders the violation using carrier names.
    pub fn describe(&self, names: &[String]) -> String {
        let name = |e: Element| names.get(e.index()).map(String::as_str).unwrap_or("?");
        let detail = match self.mismatch {
            Mismatch::Value { found, expected } => {
                format!("found {}, expected {}", name(found), name(expected))
            }
            Mismatch::NotBelow { lhs, rhs } => format!("{} is not <= {}", name(lhs), name(rhs)),
            Mismatch::Distinct { lhs, rhs } => {
                format!("{} and {} are mutually below but distinct", name(lhs), name(rhs))
            }
            Mismatch::Missing => "no such element".to_string(),
        };
        format!("{} [{}]", detail, self.law.statement())
    }

    pub fn witness_names(&self, names: &[String]) -> Vec<String> {
        self.witness.iter().map(|e| names.get(e.index()).cloned().unwrap_or_else(|| e.to_string())).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

/// Accumulated violations. The status is derived, so it can never disagree
/// with the violation list.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_violations(violations: Vec<Violation>) -> Self {
        VerificationReport { violations }
    }

    pub fn push(&mut self, violation: Violation) {
        self.violations.push(violation);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.violations.extend(other.violations);
    }

    pub fn status(&self) -> Status {
        if self.violations.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    /// Violations of one law, in the order they were found (lexicographic by witness).
    pub fn of_law(&self, law: Law) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(move |v| v.law == law)
    }

    pub fn first_of(&self, law: Law) -> Option<&Violation> {
        self.of_law(law).next()
    }

    pub fn has_law(&self, law: Law) -> bool {
        self.first_of(law).is_some()
    }

    /// Laws with at least one violation, in first-seen order.
    pub fn failing_laws(&self) -> Vec<Law> {
        let mut laws = Vec::new();
        for v in &self.violations {
            if !laws.contains(&v.law) {
                laws.push(v.law);
            }
        }
        laws
    }
}
