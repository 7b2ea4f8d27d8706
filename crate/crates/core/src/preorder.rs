//! Connected preorders over models, stored as ordered partitions.
//!
//! Class 0 holds the most plausible models. Every ordered partition of the
//! models is a connected preorder and vice versa, as long as empty classes are
//! dropped; [`Order`] only ever holds that canonical form.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logic::{parse_term, Alphabet, Condition, Formula, Model, ModelSet};

/// How a model relates to a conditional `P > A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelClassification {
    /// The model satisfies `PA`.
    Verifies,
    /// The model satisfies `P¬A`.
    Falsifies,
    /// The model satisfies `¬P`.
    Indifferent,
}

pub fn classify(m: Model, c: &Condition) -> ModelClassification {
    if !c.premise().contains(m) {
        ModelClassification::Indifferent
    } else if c.conclusion().contains(m) {
        ModelClassification::Verifies
    } else {
        ModelClassification::Falsifies
    }
}

/// A connected preorder: nonempty, pairwise disjoint classes covering every
/// model of the alphabet.
#[derive(Clone, PartialEq, Eq)]
pub struct Order {
    classes: Vec<ModelSet>,
    alphabet: Alphabet,
}

impl Order {
    /// Canonicalizes a sequence of possibly-empty classes.
    pub fn normalize(alphabet: &Alphabet, raw: Vec<ModelSet>) -> Result<Order> {
        let universe = alphabet.universe();
        let mut seen = ModelSet::empty();
        for class in &raw {
            if let Some(m) = (*class - universe).iter().next() {
                return Err(Error::Coverage(format!("#{}", m.index())));
            }
            if let Some(m) = (*class & seen).iter().next() {
                return Err(Error::Overlap(alphabet.render_model(m)));
            }
            seen = seen | *class;
        }
        if let Some(m) = (universe - seen).iter().next() {
            return Err(Error::Coverage(alphabet.render_model(m)));
        }
        Ok(Order::from_partition(alphabet, raw))
    }

    /// Drops empty classes from a sequence already known to partition the
    /// universe.
    pub(crate) fn from_partition(alphabet: &Alphabet, raw: Vec<ModelSet>) -> Order {
        let classes: Vec<ModelSet> = raw.into_iter().filter(|c| !c.is_empty()).collect();
        debug_assert!(is_partition(alphabet, &classes));
        Order {
            classes,
            alphabet: alphabet.clone(),
        }
    }

    /// All models in class zero.
    pub fn flat(alphabet: &Alphabet) -> Order {
        Order {
            classes: vec![alphabet.universe()],
            alphabet: alphabet.clone(),
        }
    }

    /// `[models(f), rest]`; flat when `f` is a tautology or inconsistent.
    pub fn positive(alphabet: &Alphabet, f: &Formula) -> Result<Order> {
        Ok(Order::positive_set(alphabet, f.models(alphabet)?))
    }

    pub fn positive_set(alphabet: &Alphabet, set: ModelSet) -> Order {
        let set = set & alphabet.universe();
        Order::from_partition(alphabet, vec![set, alphabet.universe() - set])
    }

    /// Builds an order from a rank per model (models with equal rank share a
    /// class, lower rank is more plausible).
    pub fn from_ranks(alphabet: &Alphabet, ranks: &[usize]) -> Order {
        assert_eq!(ranks.len(), alphabet.num_models());
        let top = ranks.iter().copied().max().unwrap_or(0);
        let mut raw = vec![ModelSet::empty(); top + 1];
        for (i, &r) in ranks.iter().enumerate() {
            raw[r].insert(Model::new(i));
        }
        Order::from_partition(alphabet, raw)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn classes(&self) -> &[ModelSet] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Index of the class holding `m`.
    pub fn class_of(&self, m: Model) -> usize {
        self.classes
            .iter()
            .position(|c| c.contains(m))
            .expect("every model is in some class")
    }

    /// Class index of every model, indexed by model.
    pub fn ranks(&self) -> Vec<usize> {
        let mut ranks = vec![0; self.alphabet.num_models()];
        for (r, class) in self.classes.iter().enumerate() {
            for m in class {
                ranks[m.index()] = r;
            }
        }
        ranks
    }

    /// Smallest index of a class intersecting `s`.
    pub fn min_idx(&self, s: &ModelSet) -> Result<usize> {
        self.classes.iter().position(|c| c.intersects(s)).ok_or(Error::EmptySet)
    }

    /// Largest index of a class intersecting `s`.
    pub fn max_idx(&self, s: &ModelSet) -> Result<usize> {
        self.classes.iter().rposition(|c| c.intersects(s)).ok_or(Error::EmptySet)
    }

    /// The most plausible models of `s`.
    pub fn min_models(&self, s: &ModelSet) -> Result<ModelSet> {
        Ok(self.classes[self.min_idx(s)?] & *s)
    }

    /// The least plausible models of `s`.
    pub fn max_models(&self, s: &ModelSet) -> Result<ModelSet> {
        Ok(self.classes[self.max_idx(s)?] & *s)
    }

    /// All models in classes `0..=min_idx(s)`.
    pub fn downset(&self, s: &ModelSet) -> Result<ModelSet> {
        Ok(self.up_to(self.min_idx(s)?))
    }

    /// All models in classes `0..=idx`.
    pub fn up_to(&self, idx: usize) -> ModelSet {
        self.classes[..=idx.min(self.classes.len() - 1)]
            .iter()
            .fold(ModelSet::empty(), |acc, c| acc | *c)
    }

    /// `i ≤ j`: `i` is at least as plausible as `j`.
    pub fn leq(&self, i: Model, j: Model) -> bool {
        self.class_of(i) <= self.class_of(j)
    }

    /// `i < j`.
    pub fn lt(&self, i: Model, j: Model) -> bool {
        self.class_of(i) < self.class_of(j)
    }

    /// Whether the order satisfies `P > A`: the minimal models of `PA` are
    /// strictly more plausible than every model of `P¬A`. A conditional with an
    /// inconsistent premise is satisfied by every order.
    pub fn satisfies(&self, c: &Condition) -> bool {
        if c.is_vacuous() {
            return true;
        }
        let Ok(verified) = self.min_idx(&c.verifying()) else {
            return false;
        };
        match self.min_idx(&c.falsifying()) {
            Ok(falsified) => verified < falsified,
            Err(_) => true,
        }
    }

    /// Renders one class per line, top class first.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for class in &self.classes {
            out.push_str(&self.render_class(class).join(", "));
            out.push('\n');
        }
        out
    }

    fn render_class(&self, class: &ModelSet) -> Vec<String> {
        self.alphabet
            .sorted_models(class)
            .into_iter()
            .map(|m| self.alphabet.render_model(m))
            .collect()
    }

    pub fn to_json_value(&self) -> OrderJson {
        OrderJson {
            classes: self.classes.iter().map(|c| self.render_class(c)).collect(),
        }
    }

    /// `{"classes":[["x y","x -y"],["-x y","-x -y"]]}`
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("serializable")
    }

    /// Parses the JSON rendering back. Each string is read as a conjunction
    /// of literals, so full models and shorter terms are both accepted.
    pub fn from_json(alphabet: &Alphabet, text: &str) -> Result<Order> {
        let parsed: OrderJson =
            serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        Order::from_terms(alphabet, &parsed.classes)
    }

    pub fn from_terms<S: AsRef<str>>(alphabet: &Alphabet, classes: &[Vec<S>]) -> Result<Order> {
        let mut raw = Vec::with_capacity(classes.len());
        for class in classes {
            let mut set = ModelSet::empty();
            for term in class {
                let t = parse_term(term.as_ref(), alphabet)?;
                if let Some(m) = (t & set).iter().next() {
                    return Err(Error::Overlap(alphabet.render_model(m)));
                }
                set = set | t;
            }
            raw.push(set);
        }
        Order::normalize(alphabet, raw)
    }
}

fn is_partition(alphabet: &Alphabet, classes: &[ModelSet]) -> bool {
    let mut seen = ModelSet::empty();
    for c in classes {
        if c.is_empty() || c.intersects(&seen) {
            return false;
        }
        seen = seen | *c;
    }
    seen == alphabet.universe()
}

/// Serialized form of an [`Order`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderJson {
    pub classes: Vec<Vec<String>>,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_text())
    }
}

impl fmt::Debug for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let classes: Vec<String> = self
            .classes
            .iter()
            .map(|c| format!("{{{}}}", self.render_class(c).join(", ")))
            .collect();
        write!(f, "[{}]", classes.join(", "))
    }
}
