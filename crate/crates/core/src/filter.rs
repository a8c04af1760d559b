//! Filters: membership test, generated filters, enumeration, and the five
//! filter classes (distributive, prime, maximal, implicative, affine).
//!
//! A filter contains the unit, is closed under `*` and `&`, and is upward
//! closed. Closure under `&` does not follow from the other two conditions
//! here, because `x*y <= x&y` can fail when the algebra is not integral.

use std::fmt;

use thiserror::Error;

use crate::algebra::FiniteILAlgebra;
use crate::element::{Element, ElementSet};
use crate::laws::is_idempotent;

/// The first failing condition for a candidate filter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FilterFailure {
    MissingUnit,
    NotStarClosed {
        x: Element,
        y: Element,
        product: Element,
    },
    NotMeetClosed {
        x: Element,
        y: Element,
        meet: Element,
    },
    /// `x` is a member, `x <= y`, and `y` is not.
    NotUpwardClosed {
        x: Element,
        y: Element,
    },
}

impl FilterFailure {
    pub fn condition(&self) -> &'static str {
        match self {
            FilterFailure::MissingUnit => "contains-unit",
            FilterFailure::NotStarClosed { .. } => "star-closed",
            FilterFailure::NotMeetClosed { .. } => "meet-closed",
            FilterFailure::NotUpwardClosed { .. } => "upward-closed",
        }
    }

    pub fn witness(&self) -> Vec<Element> {
        match *self {
            FilterFailure::MissingUnit => vec![],
            FilterFailure::NotStarClosed { x, y, .. }
            | FilterFailure::NotMeetClosed { x, y, .. }
            | FilterFailure::NotUpwardClosed { x, y } => vec![x, y],
        }
    }

    pub fn describe(&self, alg: &FiniteILAlgebra) -> String {
        let n = |e: Element| alg.element_name(e);
        match *self {
            FilterFailure::MissingUnit => format!("unit {} is not a member", n(alg.unit())),
            FilterFailure::NotStarClosed { x, y, product } => {
                format!("{}*{} = {} is not a member", n(x), n(y), n(product))
            }
            FilterFailure::NotMeetClosed { x, y, meet } => {
                format!("{}&{} = {} is not a member", n(x), n(y), n(meet))
            }
            FilterFailure::NotUpwardClosed { x, y } => {
                format!("{} is a member and {} <= {}, but {} is not", n(x), n(x), n(y), n(y))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FilterError {
    #[error("operation needs an algebra that passed every build check")]
    Unverified,
    #[error("not a filter: {}", .0.condition())]
    NotAFilter(FilterFailure),
}

/// Tests the three filter conditions, in order, reporting the
/// lexicographically first failing pair.
pub fn is_filter(alg: &FiniteILAlgebra, set: ElementSet) -> Result<(), FilterFailure> {
    if !set.contains(alg.unit()) {
        return Err(FilterFailure::MissingUnit);
    }
    for x in set {
        for y in set {
            let product = alg.star(x, y);
            if !set.contains(product) {
                return Err(FilterFailure::NotStarClosed { x, y, product });
            }
            let meet = alg.meet(x, y);
            if !set.contains(meet) {
                return Err(FilterFailure::NotMeetClosed { x, y, meet });
            }
        }
    }
    for x in set {
        if let Some(y) = alg.order().up_set(x).difference(set).first() {
            return Err(FilterFailure::NotUpwardClosed { x, y });
        }
    }
    Ok(())
}

/// The least filter containing `set`.
pub fn filter_closure(alg: &FiniteILAlgebra, set: ElementSet) -> ElementSet {
    let mut current = set.with(alg.unit());
    loop {
        let mut next = alg.order().upward_closure(current);
        for x in current {
            for y in current {
                next.insert(alg.star(x, y));
                next.insert(alg.meet(x, y));
            }
        }
        if next == current {
            return current;
        }
        current = next;
    }
}

/// `{y : x <= y}`
pub fn upset(alg: &FiniteILAlgebra, x: Element) -> ElementSet {
    alg.order().up_set(x)
}

fn closed_under_star_and_meet(alg: &FiniteILAlgebra, set: ElementSet) -> bool {
    set.iter().all(|x| set.iter().all(|y| set.contains(alg.star(x, y)) && set.contains(alg.meet(x, y))))
}

/// Every upward-closed set containing the unit, via a top-down walk of a
/// linear extension: an element may join only after everything above it has.
pub fn upsets_containing_unit(alg: &FiniteILAlgebra) -> Vec<ElementSet> {
    let descending: Vec<Element> = alg.order().linear_extension().into_iter().rev().collect();
    let forced = upset(alg, alg.unit());
    let mut out = Vec::new();
    let mut stack = vec![(0usize, ElementSet::EMPTY)];
    while let Some((i, partial)) = stack.pop() {
        let Some(&x) = descending.get(i) else {
            out.push(partial);
            continue;
        };
        let strictly_above = upset(alg, x).difference(ElementSet::singleton(x));
        let may_include = strictly_above.is_subset(partial);
        if forced.contains(x) {
            // everything above x is above the unit too, so already included
            debug_assert!(may_include);
            stack.push((i + 1, partial.with(x)));
        } else {
            stack.push((i + 1, partial));
            if may_include {
                stack.push((i + 1, partial.with(x)));
            }
        }
    }
    out.sort();
    out
}

/// All filters in ascending bitmask order.
pub fn enumerate_filters(alg: &FiniteILAlgebra) -> Result<Vec<ElementSet>, FilterError> {
    if !alg.is_verified() {
        return Err(FilterError::Unverified);
    }
    Ok(upsets_containing_unit(alg).into_iter().filter(|&s| closed_under_star_and_meet(alg, s)).collect())
}

/// A triple at which a filter class condition fails, with the offending value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TripleWitness {
    pub x: Element,
    pub y: Element,
    pub z: Element,
    pub value: Element,
}

/// `((x|y)&(x|z)) -> (x|(y&z))` belongs to the filter for every triple.
pub fn is_distributive_filter(alg: &FiniteILAlgebra, filter: ElementSet) -> Result<(), TripleWitness> {
    for x in alg.elements() {
        for y in alg.elements() {
            for z in alg.elements() {
                let value = distributivity_term(alg, x, y, z);
                if !filter.contains(value) {
                    return Err(TripleWitness { x, y, z, value });
                }
            }
        }
    }
    Ok(())
}

pub fn distributivity_term(alg: &FiniteILAlgebra, x: Element, y: Element, z: Element) -> Element {
    let lhs = alg.meet(alg.join(x, y), alg.join(x, z));
    let rhs = alg.join(x, alg.meet(y, z));
    alg.arrow(lhs, rhs)
}

/// For every pair, `x->y` or `y->x` belongs to the filter. The error is the
/// first pair where neither does.
pub fn is_prime_filter(alg: &FiniteILAlgebra, filter: ElementSet) -> Result<(), (Element, Element)> {
    for x in alg.elements() {
        for y in alg.elements() {
            if !filter.contains(alg.arrow(x, y)) && !filter.contains(alg.arrow(y, x)) {
                return Err((x, y));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Maximality {
    /// The filter is the whole carrier.
    NotProper,
    /// A proper filter strictly containing this one (the first in bitmask order).
    ContainedIn(ElementSet),
    Maximal,
}

impl Maximality {
    pub fn is_maximal(self) -> bool {
        self == Maximality::Maximal
    }
}

/// A proper filter contained in no other proper filter.
pub fn is_maximal_filter(alg: &FiniteILAlgebra, filter: ElementSet) -> Result<Maximality, FilterError> {
    let filters = enumerate_filters(alg)?;
    is_filter(alg, filter).map_err(FilterError::NotAFilter)?;
    Ok(maximality_among(alg, filter, &filters))
}

fn maximality_among(alg: &FiniteILAlgebra, filter: ElementSet, filters: &[ElementSet]) -> Maximality {
    let whole = alg.carrier_set();
    if filter == whole {
        return Maximality::NotProper;
    }
    match filters.iter().find(|&&g| g != whole && filter.is_proper_subset(g)) {
        Some(&g) => Maximality::ContainedIn(g),
        None => Maximality::Maximal,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ImplicativeFailure {
    MissingUnit,
    /// `x->(y->z)` and `x->y` are members but `x->z` (the `value`) is not.
    Rule(TripleWitness),
}

/// Contains the unit, and `x->(y->z)`, `x->y` in F imply `x->z` in F.
pub fn is_implicative_filter(alg: &FiniteILAlgebra, filter: ElementSet) -> Result<(), ImplicativeFailure> {
    if !filter.contains(alg.unit()) {
        return Err(ImplicativeFailure::MissingUnit);
    }
    for x in alg.elements() {
        for y in alg.elements() {
            if !filter.contains(alg.arrow(x, y)) {
                continue;
            }
            for z in alg.elements() {
                let value = alg.arrow(x, z);
                if filter.contains(alg.arrow(x, alg.arrow(y, z))) && !filter.contains(value) {
                    return Err(ImplicativeFailure::Rule(TripleWitness { x, y, z, value }));
                }
            }
        }
    }
    Ok(())
}

/// `top -> 1` belongs to the filter.
pub fn is_affine_filter(alg: &FiniteILAlgebra, filter: ElementSet) -> bool {
    filter.contains(alg.arrow(alg.top(), alg.unit()))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FilterFlags {
    pub distributive: bool,
    pub prime: bool,
    pub maximal: bool,
    pub implicative: bool,
    pub affine: bool,
}

impl FilterFlags {
    pub const NAMES: [&'static str; 5] = ["distributive", "prime", "maximal", "implicative", "affine"];

    pub fn values(&self) -> [bool; 5] {
        [self.distributive, self.prime, self.maximal, self.implicative, self.affine]
    }
}

/// A filter of a particular algebra, optionally with its classification.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct FilterSubset<'a> {
    algebra: &'a FiniteILAlgebra,
    members: ElementSet,
    flags: Option<FilterFlags>,
}

impl<'a> FilterSubset<'a> {
    /// Checks filterhood; classification is left empty.
    pub fn new(algebra: &'a FiniteILAlgebra, members: ElementSet) -> Result<Self, FilterFailure> {
        is_filter(algebra, members)?;
        Ok(FilterSubset { algebra, members, flags: None })
    }

    pub fn algebra(&self) -> &'a FiniteILAlgebra {
        self.algebra
    }

    pub fn members(&self) -> ElementSet {
        self.members
    }

    pub fn flags(&self) -> Option<FilterFlags> {
        self.flags
    }

    pub fn is_proper(&self) -> bool {
        self.members != self.algebra.carrier_set()
    }

    pub fn classified(self) -> Result<Self, FilterError> {
        let flags = classify_filter(self.algebra, self.members)?;
        Ok(FilterSubset { flags: Some(flags), ..self })
    }
}

impl fmt::Debug for FilterSubset<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FilterSubset")
            .field("members", &self.algebra.format_set(self.members))
            .field("flags", &self.flags)
            .finish()
    }
}

fn flags_among(alg: &FiniteILAlgebra, filter: ElementSet, filters: &[ElementSet]) -> FilterFlags {
    FilterFlags {
        distributive: is_distributive_filter(alg, filter).is_ok(),
        prime: is_prime_filter(alg, filter).is_ok(),
        maximal: maximality_among(alg, filter, filters).is_maximal(),
        implicative: is_implicative_filter(alg, filter).is_ok(),
        affine: is_affine_filter(alg, filter),
    }
}

/// All five classes for one filter. Needs a verified algebra (for maximality).
pub fn classify_filter(alg: &FiniteILAlgebra, filter: ElementSet) -> Result<FilterFlags, FilterError> {
    let filters = enumerate_filters(alg)?;
    is_filter(alg, filter).map_err(FilterError::NotAFilter)?;
    Ok(flags_among(alg, filter, &filters))
}

/// Every filter with its classification, in ascending bitmask order.
pub fn classify_all(alg: &FiniteILAlgebra) -> Result<Vec<FilterSubset<'_>>, FilterError> {
    let filters = enumerate_filters(alg)?;
    Ok(filters
        .iter()
        .map(|&members| FilterSubset { algebra: alg, members, flags: Some(flags_among(alg, members, &filters)) })
        .collect())
}

/// Outcome of testing "idempotent algebra implies every filter implicative".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotenceImplication {
    /// `Err(x)` names an element with `x*x != x`.
    pub idempotent: Result<(), Element>,
    pub non_implicative: Vec<ElementSet>,
    /// For a non-idempotent algebra, the first proper implicative filter:
    /// evidence that the converse fails.
    pub converse_witness: Option<ElementSet>,
}

impl IdempotenceImplication {
    pub fn implication_holds(&self) -> bool {
        self.idempotent.is_err() || self.non_implicative.is_empty()
    }

    pub fn all_filters_implicative(&self) -> bool {
        self.non_implicative.is_empty()
    }
}

pub fn check_idempotent_implies_implicative(alg: &FiniteILAlgebra) -> Result<IdempotenceImplication, FilterError> {
    let filters = enumerate_filters(alg)?;
    let idempotent = is_idempotent(alg);
    let non_implicative: Vec<ElementSet> =
        filters.iter().copied().filter(|&f| is_implicative_filter(alg, f).is_err()).collect();
    let whole = alg.carrier_set();
    let converse_witness = idempotent
        .is_err()
        .then(|| filters.iter().copied().find(|&f| f != whole && !non_implicative.contains(&f)))
        .flatten();
    Ok(IdempotenceImplication { idempotent, non_implicative, converse_witness })
}
