//! Comparing orders: difference and closeness, strength and naivety,
//! conditional preservation, the Kern-Isberner postulates CR0–CR7 and
//! recalcitrance.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logic::{Alphabet, Condition, Model, ModelSet};
use crate::oracle;
use crate::preorder::{Order, OrderJson};
use crate::revision::{self, OperatorKind};

/// A set of ordered model pairs `(i, j)`, each standing for the comparison
/// `i ≤ j`. Reflexive pairs never occur.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PairSet {
    n_models: usize,
    bits: Vec<u64>,
}

impl PairSet {
    pub fn new(n_models: usize) -> Self {
        PairSet {
            n_models,
            bits: vec![0; (n_models * n_models).div_ceil(64)],
        }
    }

    fn slot(&self, i: Model, j: Model) -> usize {
        i.index() * self.n_models + j.index()
    }

    pub fn insert(&mut self, i: Model, j: Model) {
        assert_ne!(i, j, "reflexive pairs are not stored");
        let s = self.slot(i, j);
        self.bits[s / 64] |= 1 << (s % 64);
    }

    pub fn contains(&self, i: Model, j: Model) -> bool {
        let s = self.slot(i, j);
        self.bits[s / 64] & (1 << (s % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &PairSet) -> bool {
        self.n_models == other.n_models
            && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn difference(&self, other: &PairSet) -> PairSet {
        PairSet {
            n_models: self.n_models,
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a & !b).collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (Model, Model)> + '_ {
        let n = self.n_models;
        self.bits.iter().enumerate().flat_map(move |(w, &bits)| {
            (0..64)
                .filter(move |b| bits >> b & 1 == 1)
                .map(move |b| {
                    let s = w * 64 + b;
                    (Model::new(s / n), Model::new(s % n))
                })
        })
    }

    pub fn render(&self, alphabet: &Alphabet) -> Vec<(String, String)> {
        self.iter()
            .map(|(i, j)| (alphabet.render_model(i), alphabet.render_model(j)))
            .collect()
    }
}

impl FromIterator<(Model, Model)> for PairSet {
    /// Collects pairs into a set sized for the largest model seen; prefer
    /// [`PairSet::new`] plus [`PairSet::insert`] when the universe is known.
    fn from_iter<I: IntoIterator<Item = (Model, Model)>>(iter: I) -> Self {
        let pairs: Vec<(Model, Model)> = iter.into_iter().collect();
        let n = pairs
            .iter()
            .map(|(i, j)| i.index().max(j.index()) + 1)
            .max()
            .unwrap_or(0)
            .next_power_of_two();
        let mut set = PairSet::new(n);
        for (i, j) in pairs {
            set.insert(i, j);
        }
        set
    }
}

impl fmt::Debug for PairSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.iter().map(|(i, j)| (i.index(), j.index())))
            .finish()
    }
}

fn same_alphabet(a: &Order, b: &Order) -> Result<()> {
    if a.alphabet() == b.alphabet() {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch)
    }
}

/// Pairs the two orders compare differently: the symmetric difference of
/// their `≤` relations.
pub fn diff(c1: &Order, c2: &Order) -> Result<PairSet> {
    same_alphabet(c1, c2)?;
    let n = c1.alphabet().num_models();
    let (r1, r2) = (c1.ranks(), c2.ranks());
    let mut out = PairSet::new(n);
    for i in 0..n {
        for j in 0..n {
            if i != j && (r1[i] <= r1[j]) != (r2[i] <= r2[j]) {
                out.insert(Model::new(i), Model::new(j));
            }
        }
    }
    Ok(out)
}

/// `ca` is at least as close to `base` as `cb` is.
pub fn at_least_as_close(ca: &Order, cb: &Order, base: &Order) -> Result<bool> {
    Ok(diff(ca, base)?.is_subset(&diff(cb, base)?))
}

/// How a model compares to all others: the models it is strictly more
/// plausible than, and those it is at least as plausible as.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Strength {
    pub strict_above: ModelSet,
    pub weak_above: ModelSet,
}

impl Strength {
    /// Componentwise containment.
    pub fn is_within(&self, other: &Strength) -> bool {
        self.strict_above.is_subset(&other.strict_above) && self.weak_above.is_subset(&other.weak_above)
    }
}

pub fn strength(i: Model, c: &Order) -> Strength {
    let r = c.class_of(i);
    let classes = c.classes();
    let below = classes[r + 1..].iter().fold(ModelSet::empty(), |acc, s| acc | *s);
    Strength {
        strict_above: below,
        weak_above: below | classes[r],
    }
}

/// `ca` is at least as naive as `cb` on the models of `f`: every such model
/// is at least as strong in `ca`.
pub fn at_least_as_naive(ca: &Order, cb: &Order, f: &ModelSet) -> Result<bool> {
    same_alphabet(ca, cb)?;
    Ok(f.iter().all(|i| strength(i, cb).is_within(&strength(i, ca))))
}

pub fn strictly_more_naive(ca: &Order, cb: &Order, f: &ModelSet) -> Result<bool> {
    Ok(at_least_as_naive(ca, cb, f)? && !at_least_as_naive(cb, ca, f)?)
}

/// `revised` compares every two models of the same kind (both `¬P`, both
/// `PA` or both `P¬A`) as `base` does.
pub fn preserves_conditionals(base: &Order, revised: &Order, c: &Condition) -> Result<bool> {
    same_alphabet(base, revised)?;
    let (rb, rr) = (base.ranks(), revised.ranks());
    for group in [c.indifferent(), c.verifying(), c.falsifying()] {
        for i in &group {
            for j in &group {
                if (rb[i.index()] <= rb[j.index()]) != (rr[i.index()] <= rr[j.index()]) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The ordering that behaves like natural revision but also puts the `¬P`
/// models of the affected block strictly above `min(PA)`. It satisfies the
/// conditional and preserves conditionals, but is not a minimal change.
pub fn supernaive(base: &Order, c: &Condition) -> Result<Order> {
    if c.is_vacuous() {
        return Ok(base.clone());
    }
    if c.is_unsatisfiable() {
        return Err(Error::UnsatisfiableConditional);
    }
    let lo = base.min_idx(&c.premise())?;
    let hi = base.min_idx(&c.verifying())?;
    let lifted = base.min_models(&c.verifying())?;
    let classes = base.classes();
    let mut raw = Vec::new();
    raw.extend_from_slice(&classes[..lo]);
    raw.extend(classes[lo..=hi].iter().map(|s| *s & c.indifferent()));
    raw.push(lifted);
    raw.extend(classes[lo..=hi].iter().map(|s| (*s & c.verifying()) - lifted));
    raw.extend(classes[lo..=hi].iter().map(|s| *s & c.falsifying()));
    raw.extend_from_slice(&classes[hi + 1..]);
    Ok(Order::from_partition(base.alphabet(), raw))
}

/// Kern-Isberner postulates for revision by conditionals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Postulate {
    CR0,
    CR1,
    CR2,
    CR3,
    CR4,
    CR5,
    CR6,
    CR7,
}

impl Postulate {
    pub const ALL: [Postulate; 8] = [
        Postulate::CR0,
        Postulate::CR1,
        Postulate::CR2,
        Postulate::CR3,
        Postulate::CR4,
        Postulate::CR5,
        Postulate::CR6,
        Postulate::CR7,
    ];
}

impl fmt::Display for Postulate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Postulate {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Postulate::ALL
            .into_iter()
            .find(|p| p.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown postulate `{s}` (expected CR0 to CR7)"))
    }
}

/// A counterexample in re-parseable form: orders as class lists, conditionals
/// as formulas.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub orders: Vec<OrderJson>,
    pub conditionals: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<(String, String)>,
    pub note: String,
}

impl Witness {
    fn new(alphabet: &Alphabet, orders: &[&Order], conds: &[Condition], note: impl Into<String>) -> Self {
        Witness {
            orders: orders.iter().map(|o| o.to_json_value()).collect(),
            conditionals: conds.iter().map(|c| c.to_conditional(alphabet).to_string()).collect(),
            pair: None,
            note: note.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PostulateVerdict {
    pub postulate: Postulate,
    pub operator: OperatorKind,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// Enumerates the subsets of `set`.
fn subsets(set: ModelSet) -> impl Iterator<Item = ModelSet> {
    let members: Vec<Model> = set.iter().collect();
    let count = 1u64 << members.len();
    (0..count).map(move |mask| {
        members
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, m)| *m)
            .collect()
    })
}

/// Checks one postulate for `kind` at `order` revised by `cond`.
///
/// CR3 is checked as: the top class of the revision by `true > A` is
/// `min(A)` for every consistent `A`. CR4–CR7 quantify over further
/// conditionals `Q > B` as model sets; only `Q` and `QB` matter, so `B` ranges
/// over the subsets of `Q`. CR7 is checked as the revised order entailing
/// `Q > B` implying that the original does. Quantified postulates need a
/// universe of at most [`oracle::MAX_MODELS`] models.
pub fn check_postulate(
    kind: OperatorKind,
    order: &Order,
    cond: &Condition,
    id: Postulate,
) -> Result<PostulateVerdict> {
    let alphabet = order.alphabet();
    let verdict = |witness: Option<Witness>| PostulateVerdict {
        postulate: id,
        operator: kind,
        holds: witness.is_none(),
        witness,
    };
    let universe = alphabet.universe();
    if matches!(id, Postulate::CR3 | Postulate::CR4 | Postulate::CR5 | Postulate::CR6 | Postulate::CR7)
        && alphabet.num_models() > oracle::MAX_MODELS
    {
        return Err(Error::UniverseTooLarge {
            models: alphabet.num_models(),
            cap: oracle::MAX_MODELS,
        });
    }
    if id == Postulate::CR3 {
        for a in subsets(universe).filter(|a| !a.is_empty()) {
            let c = Condition::new(alphabet, universe, a);
            let revised = revision::revise(order, kind, &c)?;
            if revised.classes()[0] != order.min_models(&a)? {
                return Ok(verdict(Some(Witness::new(
                    alphabet,
                    &[order, &revised],
                    &[c],
                    "top class after revising by true > A differs from min(A)",
                ))));
            }
        }
        return Ok(verdict(None));
    }

    let revised = revision::revise(order, kind, cond)?;
    let fail = |conds: &[Condition], note: &str| {
        Some(Witness::new(alphabet, &[order, &revised], conds, note))
    };
    let witness = match id {
        Postulate::CR0 => {
            let mut seen = ModelSet::empty();
            let mut ok = true;
            for class in revised.classes() {
                ok &= !class.is_empty() && !class.intersects(&seen);
                seen = seen | *class;
            }
            ok &= seen == universe;
            if ok {
                None
            } else {
                fail(&[*cond], "result is not an ordered partition of the models")
            }
        }
        Postulate::CR1 => {
            if revised.satisfies(cond) {
                None
            } else {
                fail(&[*cond], "revised order does not satisfy the conditional")
            }
        }
        Postulate::CR2 => {
            let unchanged = revised == *order;
            let satisfied = order.satisfies(cond);
            match (unchanged, satisfied) {
                (true, false) => fail(&[*cond], "order unchanged although it falsifies the conditional"),
                (false, true) => fail(&[*cond], "order changed although it already satisfies the conditional"),
                _ => None,
            }
        }
        Postulate::CR3 => unreachable!(),
        Postulate::CR4 => {
            let p = cond.premise();
            let mut found = None;
            for extra in subsets(universe - p) {
                let other = Condition::new(alphabet, p, cond.verifying() | extra);
                debug_assert!(other.equivalent(cond));
                let alt = revision::revise(order, kind, &other)?;
                if alt != revised {
                    found = Some(Witness::new(
                        alphabet,
                        &[order, &revised, &alt],
                        &[*cond, other],
                        "equivalent conditionals give different revisions",
                    ));
                    break;
                }
            }
            found
        }
        Postulate::CR5 => {
            let mut found = None;
            'outer: for q in subsets(cond.verifying()) {
                for b in subsets(q) {
                    let qb = Condition::new(alphabet, q, b);
                    if order.satisfies(&qb) != revised.satisfies(&qb) {
                        found = fail(&[*cond, qb], "Q ⊆ PA but Q > B changes truth value");
                        break 'outer;
                    }
                }
            }
            found
        }
        Postulate::CR6 | Postulate::CR7 => {
            let (same_side, before, after) = if id == Postulate::CR6 {
                (true, order, &revised)
            } else {
                (false, &revised, order)
            };
            let mut found = None;
            'outer6: for q in subsets(cond.premise()) {
                for b in subsets(q) {
                    let qb = q & b;
                    let qnb = q - b;
                    let pre = if same_side {
                        qb.is_subset(&cond.verifying()) && qnb.is_subset(&cond.falsifying())
                    } else {
                        qb.is_subset(&cond.falsifying()) && qnb.is_subset(&cond.verifying())
                    };
                    if !pre {
                        continue;
                    }
                    let c2 = Condition::new(alphabet, q, b);
                    if before.satisfies(&c2) && !after.satisfies(&c2) {
                        found = fail(&[*cond, c2], "Q > B not carried over");
                        break 'outer6;
                    }
                }
            }
            found
        }
    };
    Ok(verdict(witness))
}

/// Outcome of [`recalcitrance_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecalcitranceVerdict {
    pub recalcitrant: bool,
    /// An order satisfying both conditionals, when one exists.
    pub joint_witness: Option<Order>,
    /// `base` revised by the first and then the second conditional, when
    /// both are jointly satisfiable.
    pub final_order: Option<Order>,
}

/// Whether revising by `c1` and then `c2` keeps `c1` whenever some order
/// satisfies both.
pub fn recalcitrance_check(
    kind: OperatorKind,
    base: &Order,
    c1: &Condition,
    c2: &Condition,
) -> Result<RecalcitranceVerdict> {
    let Some(joint) = oracle::mutually_satisfiable(&[*c1, *c2], base.alphabet())? else {
        return Ok(RecalcitranceVerdict {
            recalcitrant: true,
            joint_witness: None,
            final_order: None,
        });
    };
    let once = revision::revise(base, kind, c1)?;
    let twice = revision::revise(&once, kind, c2)?;
    Ok(RecalcitranceVerdict {
        recalcitrant: twice.satisfies(c1),
        joint_witness: Some(joint),
        final_order: Some(twice),
    })
}
