//! Element handles and word-sized element sets.

use std::fmt;

/// Largest carrier the workbench accepts; subsets are `u64` bitmasks.
pub const MAX_CARRIER: usize = 64;

/// Index of an element in a carrier. Index order is the canonical element order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(u8);

impl Element {
    /// Panics if `index >= MAX_CARRIER`.
    pub fn new(index: usize) -> Self {
        assert!(index < MAX_CARRIER, "element index {index} exceeds carrier cap");
        Element(index as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A subset of a carrier of at most 64 elements.
///
/// Ordering and equality are those of the underlying bitmask, so sorting a
/// list of sets gives the ascending-bitmask order used by every report.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// The whole carrier `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_CARRIER);
        if n >= 64 {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(e: Element) -> Self {
        ElementSet(1 << e.index())
    }

    pub fn contains(self, e: Element) -> bool {
        self.0 >> e.index() & 1 == 1
    }

    pub fn insert(&mut self, e: Element) -> bool {
        let fresh = !self.contains(e);
        self.0 |= 1 << e.index();
        fresh
    }

    pub fn remove(&mut self, e: Element) {
        self.0 &= !(1 << e.index());
    }

    pub fn with(mut self, e: Element) -> Self {
        self.insert(e);
        self
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: ElementSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: ElementSet) -> bool {
        self != other && self.is_subset(other)
    }

    pub fn union(self, other: ElementSet) -> Self {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ElementSet) -> Self {
        ElementSet(self.0 & other.0)
    }

    pub fn difference(self, other: ElementSet) -> Self {
        ElementSet(self.0 & !other.0)
    }

    /// Least element by index.
    pub fn first(self) -> Option<Element> {
        (self.0 != 0).then(|| Element::new(self.0.trailing_zeros() as usize))
    }

    /// Members in ascending index order.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(Element::index)).finish()
    }
}

impl FromIterator<Element> for ElementSet {
    fn from_iter<I: IntoIterator<Item = Element>>(iter: I) -> Self {
        let mut set = ElementSet::EMPTY;
        for e in iter {
            set.insert(e);
        }
        set
    }
}

impl IntoIterator for ElementSet {
    type Item = Element;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

#[derive(Clone, Debug)]
pub struct Iter(u64);

impl Iterator for Iter {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(Element::new(i))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

/// All elements of an `n`-element carrier, in index order.
pub fn carrier(n: usize) -> impl Iterator<Item = Element> + Clone {
    (0..n).map(Element::new)
}
