//! Natural, line-down, uncontingent and lexicographic revision.
//!
//! All operators work on the semantic form of a conditional ([`Condition`]).
//! A conditional with an inconsistent premise leaves every order unchanged; a
//! conditional whose premise is consistent but `PA` is not cannot be adopted
//! and yields [`Error::UnsatisfiableConditional`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logic::{Alphabet, Condition, Conditional, Formula, ModelSet};
use crate::preorder::Order;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorKind {
    Nat,
    Dow,
    Unc,
    Lex,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 4] = [
        OperatorKind::Nat,
        OperatorKind::Dow,
        OperatorKind::Unc,
        OperatorKind::Lex,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OperatorKind::Nat => "nat",
            OperatorKind::Dow => "dow",
            OperatorKind::Unc => "unc",
            OperatorKind::Lex => "lex",
        }
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OperatorKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "nat" => Ok(OperatorKind::Nat),
            "dow" => Ok(OperatorKind::Dow),
            "unc" => Ok(OperatorKind::Unc),
            "lex" => Ok(OperatorKind::Lex),
            other => Err(format!("unknown operator `{other}` (expected nat, dow, unc or lex)")),
        }
    }
}

/// Returns `None` when the conditional is vacuous (revision is the identity).
fn premise_range_start(order: &Order, c: &Condition) -> Result<Option<usize>> {
    if c.is_vacuous() {
        return Ok(None);
    }
    if c.is_unsatisfiable() {
        return Err(Error::UnsatisfiableConditional);
    }
    Ok(Some(order.min_idx(&c.premise())?))
}

/// Moves the `moved` part of classes `lo..=hi` right after the rest of that
/// block, keeping the relative order of both parts.
fn demote_within(order: &Order, lo: usize, hi: usize, moved: ModelSet) -> Order {
    let classes = order.classes();
    let mut raw = Vec::with_capacity(classes.len() + hi - lo + 1);
    raw.extend_from_slice(&classes[..lo]);
    raw.extend(classes[lo..=hi].iter().map(|c| *c - moved));
    raw.extend(classes[lo..=hi].iter().map(|c| *c & moved));
    raw.extend_from_slice(&classes[hi + 1..]);
    Order::from_partition(order.alphabet(), raw)
}

/// Natural revision by a propositional formula given by its models: the
/// minimal models of `a` become the new top class, nothing else moves.
pub fn nat_prop(order: &Order, a: ModelSet) -> Result<Order> {
    let a = a & order.alphabet().universe();
    let k = order.min_idx(&a).map_err(|_| Error::InconsistentFormula)?;
    let classes = order.classes();
    let mut raw = Vec::with_capacity(classes.len() + 1);
    raw.push(classes[k] & a);
    raw.extend_from_slice(&classes[..k]);
    raw.push(classes[k] - a);
    raw.extend_from_slice(&classes[k + 1..]);
    Ok(Order::from_partition(order.alphabet(), raw))
}

/// Natural revision by `P > A`: within classes `min_idx(P)..=min_idx(PA)`
/// the `P¬A` models drop just below the block.
pub fn nat(order: &Order, c: &Condition) -> Result<Order> {
    let Some(lo) = premise_range_start(order, c)? else {
        return Ok(order.clone());
    };
    let hi = order.min_idx(&c.verifying())?;
    Ok(demote_within(order, lo, hi, c.falsifying()))
}

/// Line-down revision by `P > A`: the minimal models of `PA` are lifted to a
/// class of their own right above the first class containing `P¬A`.
pub fn dow(order: &Order, c: &Condition) -> Result<Order> {
    if premise_range_start(order, c)?.is_none() {
        return Ok(order.clone());
    }
    let falsifying = c.falsifying();
    let Ok(k) = order.min_idx(&falsifying) else {
        return Ok(order.clone());
    };
    let lifted = order.min_models(&c.verifying())?;
    let classes = order.classes();
    let mut raw = Vec::with_capacity(classes.len() + 1);
    raw.extend_from_slice(&classes[..k]);
    let above = classes[..k].iter().fold(ModelSet::empty(), |acc, c| acc | *c);
    raw.push(lifted - above);
    raw.extend(classes[k..].iter().map(|c| *c - lifted));
    Ok(Order::from_partition(order.alphabet(), raw))
}

/// Uncontingent revision by `P > A`: within classes
/// `min_idx(P)..=max_idx(PA)` every `P¬A` model drops below the block.
pub fn unc(order: &Order, c: &Condition) -> Result<Order> {
    let Some(lo) = premise_range_start(order, c)? else {
        return Ok(order.clone());
    };
    let hi = order.max_idx(&c.verifying())?;
    Ok(demote_within(order, lo, hi, c.falsifying()))
}

/// Lexicographic revision by a formula given by its models: every class is
/// split, all `f` parts first.
pub fn lex_prop(order: &Order, f: ModelSet) -> Result<Order> {
    let f = f & order.alphabet().universe();
    if f.is_empty() {
        return Err(Error::InconsistentFormula);
    }
    let classes = order.classes();
    let mut raw = Vec::with_capacity(2 * classes.len());
    raw.extend(classes.iter().map(|c| *c & f));
    raw.extend(classes.iter().map(|c| *c - f));
    Ok(Order::from_partition(order.alphabet(), raw))
}

/// Lexicographic revision by `P > A`, i.e. by `P → A`.
pub fn lex(order: &Order, c: &Condition) -> Result<Order> {
    if c.is_unsatisfiable() {
        return Err(Error::UnsatisfiableConditional);
    }
    lex_prop(order, c.material())
}

pub fn revise(order: &Order, kind: OperatorKind, c: &Condition) -> Result<Order> {
    match kind {
        OperatorKind::Nat => nat(order, c),
        OperatorKind::Dow => dow(order, c),
        OperatorKind::Unc => unc(order, c),
        OperatorKind::Lex => lex(order, c),
    }
}

/// [`revise`] on a syntactic conditional.
pub fn revise_conditional(order: &Order, kind: OperatorKind, c: &Conditional) -> Result<Order> {
    revise(order, kind, &c.condition(order.alphabet())?)
}

/// Models of the contingent context `Q = P ∧ (≤ min(PA))`: the premise
/// restricted to the classes down to the first one holding `PA`.
pub fn contingent_context_set(order: &Order, c: &Condition) -> Result<ModelSet> {
    if c.is_vacuous() {
        return Ok(ModelSet::empty());
    }
    if c.is_unsatisfiable() {
        return Err(Error::UnsatisfiableConditional);
    }
    Ok(c.premise() & order.downset(&c.verifying())?)
}

/// The contingent context as a formula; natural revision by `P > A` equals
/// uncontingent revision by `Q > A`.
pub fn contingent_context(order: &Order, c: &Conditional) -> Result<Formula> {
    let alphabet: &Alphabet = order.alphabet();
    let set = contingent_context_set(order, &c.condition(alphabet)?)?;
    Ok(Formula::from_models(alphabet, &set))
}
