//! Iterated belief revision by conditionals over connected preorders.
//!
//! Plausibility orders are ordered partitions of the propositional models of a
//! small alphabet ([`preorder::Order`]). Four revision operators change an
//! order so that it satisfies a conditional `P > A`:
//!
//! - natural revision ([`revision::nat`]) lifts the minimal models of `PA`
//!   and demotes only the band of `P¬A` models that were at least as
//!   plausible;
//! - line-down revision ([`revision::dow`]) lifts the minimal models of `PA`
//!   above everything down to the first `P¬A` class;
//! - uncontingent revision ([`revision::unc`]) puts every `PA` model of the
//!   affected range above every `P¬A` model;
//! - lexicographic revision ([`revision::lex`]) splits the whole order by
//!   `P → A`.
//!
//! The [`analysis`] module compares orders (difference, closeness, naivety,
//! conditional preservation, Kern-Isberner postulates, recalcitrance) and
//! [`oracle`] enumerates every connected preorder of up to eight models to
//! certify those properties by brute force.

pub mod analysis;
pub mod error;
pub mod logic;
pub mod oracle;
pub mod preorder;
pub mod revision;
pub mod script;
pub mod verify;

pub use error::{Error, Result};
pub use logic::{Alphabet, Condition, Conditional, Formula, Model, ModelSet};
pub use preorder::{ModelClassification, Order};
pub use revision::OperatorKind;
