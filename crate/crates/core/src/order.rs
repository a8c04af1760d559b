//! Finite order relations stored as up-set bitmasks.

use crate::element::{carrier, Element, ElementSet};
use crate::report::{Law, Mismatch, VerificationReport, Violation};

/// A binary relation on `{0, .., n-1}`, read as `<=`. Row `x` holds `{y : x <= y}`.
///
/// Nothing here forces the relation to be a partial order; [`Order::check_lattice`]
/// reports whether it is one and whether it is a lattice with a least element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Order {
    up: Vec<ElementSet>,
}

impl Order {
    /// The relation exactly as given, with no closure.
    pub fn from_relation(n: usize, pairs: impl IntoIterator<Item = (Element, Element)>) -> Self {
        let mut up = vec![ElementSet::EMPTY; n];
        for (a, b) in pairs {
            up[a.index()].insert(b);
        }
        Order { up }
    }

    /// Reflexive-transitive closure of the given pairs (Hasse edges suffice).
    pub fn closure_of(n: usize, pairs: impl IntoIterator<Item = (Element, Element)>) -> Self {
        let mut order = Order::from_relation(n, pairs);
        for x in carrier(n) {
            order.up[x.index()].insert(x);
        }
        // Warshall over bit rows.
        for k in 0..n {
            let row_k = order.up[k];
            for i in 0..n {
                if order.up[i].contains(Element::new(k)) {
                    order.up[i] = order.up[i].union(row_k);
                }
            }
        }
        order
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn leq(&self, x: Element, y: Element) -> bool {
        self.up[x.index()].contains(y)
    }

    pub fn lt(&self, x: Element, y: Element) -> bool {
        x != y && self.leq(x, y)
    }

    /// `{y : x <= y}`
    pub fn up_set(&self, x: Element) -> ElementSet {
        self.up[x.index()]
    }

    /// `{y : y <= x}`
    pub fn down_set(&self, x: Element) -> ElementSet {
        carrier(self.len()).filter(|&y| self.leq(y, x)).collect()
    }

    /// All pairs `(x, y)` with `x <= y`, in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (Element, Element)> + '_ {
        carrier(self.len()).flat_map(move |x| self.up_set(x).iter().map(move |y| (x, y)))
    }

    pub fn is_upward_closed(&self, set: ElementSet) -> bool {
        set.iter().all(|x| self.up_set(x).is_subset(set))
    }

    pub fn upward_closure(&self, set: ElementSet) -> ElementSet {
        set.iter().fold(set, |acc, x| acc.union(self.up_set(x)))
    }

    pub fn join(&self, x: Element, y: Element) -> Option<Element> {
        let upper = self.up_set(x).intersection(self.up_set(y));
        upper.iter().find(|&z| upper.is_subset(self.up_set(z)))
    }

    pub fn meet(&self, x: Element, y: Element) -> Option<Element> {
        let lower = self.down_set(x).intersection(self.down_set(y));
        lower.iter().find(|&z| lower.is_subset(self.down_set(z)))
    }

    pub fn least(&self) -> Option<Element> {
        let all = ElementSet::full(self.len());
        carrier(self.len()).find(|&z| self.up_set(z) == all)
    }

    pub fn greatest(&self) -> Option<Element> {
        carrier(self.len()).find(|&z| (0..self.len()).all(|x| self.leq(Element::new(x), z)))
    }

    pub fn is_total(&self) -> bool {
        self.first_incomparable().is_none()
    }

    pub fn first_incomparable(&self) -> Option<(Element, Element)> {
        let n = self.len();
        carrier(n).flat_map(|x| carrier(n).map(move |y| (x, y))).find(|&(x, y)| !self.leq(x, y) && !self.leq(y, x))
    }

    /// Elements ordered so that `x < y` implies `x` comes first.
    /// Only meaningful for a partial order.
    pub fn linear_extension(&self) -> Vec<Element> {
        let mut elems: Vec<Element> = carrier(self.len()).collect();
        elems.sort_by_key(|&x| (self.down_set(x).len(), x));
        elems
    }

    /// Poset axioms, existence of all binary joins and meets, and a least element.
    pub fn check_lattice(&self) -> VerificationReport {
        let n = self.len();
        let mut report = VerificationReport::new();
        for x in carrier(n) {
            if !self.leq(x, x) {
                report.push(Violation::new(Law::Reflexivity, vec![x], Mismatch::NotBelow { lhs: x, rhs: x }));
            }
        }
        for x in carrier(n) {
            for y in carrier(n).filter(|&y| y > x) {
                if self.leq(x, y) && self.leq(y, x) {
                    report.push(Violation::new(Law::Antisymmetry, vec![x, y], Mismatch::Distinct { lhs: x, rhs: y }));
                }
            }
        }
        for x in carrier(n) {
            for y in self.up_set(x) {
                for z in self.up_set(y) {
                    if !self.leq(x, z) {
                        report.push(Violation::new(
                            Law::Transitivity,
                            vec![x, y, z],
                            Mismatch::NotBelow { lhs: x, rhs: z },
                        ));
                    }
                }
            }
        }
        for x in carrier(n) {
            for y in carrier(n).filter(|&y| y > x) {
                if self.join(x, y).is_none() {
                    report.push(Violation::new(Law::JoinExists, vec![x, y], Mismatch::Missing));
                }
            }
        }
        for x in carrier(n) {
            for y in carrier(n).filter(|&y| y > x) {
                if self.meet(x, y).is_none() {
                    report.push(Violation::new(Law::MeetExists, vec![x, y], Mismatch::Missing));
                }
            }
        }
        if self.least().is_none() {
            report.push(Violation::new(Law::LeastElement, vec![], Mismatch::Missing));
        }
        report
    }
}
