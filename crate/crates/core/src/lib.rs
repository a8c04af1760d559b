//! A workbench for finite IL-algebras: commutative residuated lattice-ordered
//! monoids with a least element, without the integrality law `x*y <= x`.
//!
//! Algebras are loaded from `.alg` documents ([`spec`]), checked exhaustively
//! ([`laws`]), and studied through their filters ([`filter`]) and the quotients
//! those filters induce ([`quotient`]). Every failed check carries a concrete
//! witness tuple.

pub mod algebra;
pub mod cli;
pub mod element;
pub mod filter;
pub mod laws;
pub mod order;
pub mod quotient;
pub mod report;
pub mod report_doc;
pub mod spec;

pub use algebra::{build_algebra, derive_arrow, BuildError, BuildMode, Built, FiniteILAlgebra, OpTable, Operation};
pub use element::{Element, ElementSet, MAX_CARRIER};
pub use filter::{classify_filter, enumerate_filters, is_filter, FilterFlags, FilterSubset};
pub use order::Order;
pub use quotient::{quotient_algebra, Partition, QuotientResult};
pub use report::{Law, Mismatch, Status, VerificationReport, Violation};
pub use spec::{parse_spec, render_spec, AlgebraSpecDocument, ParseError, TableRow};
