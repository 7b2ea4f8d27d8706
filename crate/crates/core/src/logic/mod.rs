//! Propositional alphabets, models, formulas and conditionals.

mod model_set;
mod parse;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

pub use model_set::ModelSet;
pub use parse::{parse_conditional, parse_formula, parse_term};

use crate::error::{Error, Result};

/// Largest supported alphabet.
pub const MAX_VARS: usize = 10;
/// Largest supported model universe (`2^MAX_VARS`).
pub const MAX_MODELS: usize = 1 << MAX_VARS;

/// An ordered list of distinct propositional variables.
///
/// The position of a variable fixes its bit in every [`Model`] index. Cloning
/// is cheap: the names are shared.
#[derive(Clone)]
pub struct Alphabet {
    vars: Arc<[String]>,
}

impl Alphabet {
    pub fn new<I, S>(vars: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        if vars.is_empty() || vars.len() > MAX_VARS {
            return Err(Error::InvalidAlphabet(format!(
                "expected 1 to {MAX_VARS} variables, got {}",
                vars.len()
            )));
        }
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) || v == "true" || v == "false" {
                return Err(Error::InvalidAlphabet(format!("`{v}` is not a valid variable name")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidAlphabet(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Alphabet { vars: vars.into() })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn num_models(&self) -> usize {
        1 << self.vars.len()
    }

    pub fn universe(&self) -> ModelSet {
        ModelSet::full(self.num_models())
    }

    pub fn models(&self) -> impl Iterator<Item = Model> {
        (0..self.num_models()).map(Model::new)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Models of a single variable.
    pub fn var_models(&self, var: usize) -> ModelSet {
        self.models().filter(|m| m.value(var)).collect()
    }

    /// Signed-literal rendering, e.g. `x -y`.
    pub fn render_model(&self, m: Model) -> String {
        self.vars
            .iter()
            .enumerate()
            .map(|(i, v)| if m.value(i) { v.clone() } else { format!("-{v}") })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Truth-table order: the first variable is most significant and true
    /// sorts before false, so `x y` < `x -y` < `-x y` < `-x -y`.
    pub fn display_cmp(&self, a: Model, b: Model) -> Ordering {
        for i in 0..self.len() {
            match (a.value(i), b.value(i)) {
                (true, false) => return Ordering::Less,
                (false, true) => return Ordering::Greater,
                _ => {}
            }
        }
        Ordering::Equal
    }

    /// Models of `set` in truth-table order.
    pub fn sorted_models(&self, set: &ModelSet) -> Vec<Model> {
        let mut ms: Vec<Model> = set.iter().collect();
        ms.sort_by(|&a, &b| self.display_cmp(a, b));
        ms
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars
    }
}

impl Eq for Alphabet {}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.vars.iter()).finish()
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// One truth assignment; bit `i` of the index is the value of variable `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Model(u16);

impl Model {
    pub fn new(index: usize) -> Self {
        assert!(index < MAX_MODELS, "model index {index} out of range");
        Model(index as u16)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn value(self, var: usize) -> bool {
        self.0 >> var & 1 == 1
    }
}

/// Propositional formula over named variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Var(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn var(name: impl Into<String>) -> Self {
        Formula::Var(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    /// Classical truth value of the formula in `m`.
    pub fn eval(&self, alphabet: &Alphabet, m: Model) -> Result<bool> {
        Ok(match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Var(v) => {
                let i = alphabet
                    .index_of(v)
                    .ok_or_else(|| Error::UnknownVariable(v.clone()))?;
                m.value(i)
            }
            Formula::Not(f) => !f.eval(alphabet, m)?,
            Formula::And(a, b) => {
                let l = a.eval(alphabet, m)?;
                let r = b.eval(alphabet, m)?;
                l && r
            }
            Formula::Or(a, b) => {
                let l = a.eval(alphabet, m)?;
                let r = b.eval(alphabet, m)?;
                l || r
            }
            Formula::Implies(a, b) => {
                let l = a.eval(alphabet, m)?;
                let r = b.eval(alphabet, m)?;
                !l || r
            }
        })
    }

    /// The set of models of the formula.
    pub fn models(&self, alphabet: &Alphabet) -> Result<ModelSet> {
        let universe = alphabet.universe();
        Ok(match self {
            Formula::True => universe,
            Formula::False => ModelSet::empty(),
            Formula::Var(v) => {
                let i = alphabet
                    .index_of(v)
                    .ok_or_else(|| Error::UnknownVariable(v.clone()))?;
                alphabet.var_models(i)
            }
            Formula::Not(f) => universe - f.models(alphabet)?,
            Formula::And(a, b) => a.models(alphabet)? & b.models(alphabet)?,
            Formula::Or(a, b) => a.models(alphabet)? | b.models(alphabet)?,
            Formula::Implies(a, b) => (universe - a.models(alphabet)?) | b.models(alphabet)?,
        })
    }

    /// Conjunction of the literals of a single model.
    pub fn minterm(alphabet: &Alphabet, m: Model) -> Formula {
        alphabet
            .vars()
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if m.value(i) {
                    Formula::var(v.as_str())
                } else {
                    Formula::not(Formula::var(v.as_str()))
                }
            })
            .reduce(Formula::and)
            .unwrap_or(Formula::True)
    }

    /// A formula whose models are exactly `set`: `true`, `false`, or a
    /// disjunction of minterms in truth-table order.
    pub fn from_models(alphabet: &Alphabet, set: &ModelSet) -> Formula {
        let set = *set & alphabet.universe();
        if set.is_empty() {
            return Formula::False;
        }
        if set == alphabet.universe() {
            return Formula::True;
        }
        alphabet
            .sorted_models(&set)
            .into_iter()
            .map(|m| Formula::minterm(alphabet, m))
            .reduce(Formula::or)
            .expect("nonempty set")
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Implies(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            Formula::Not(..) => 4,
            _ => 5,
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Parenthesize a child whenever it binds no tighter than its parent;
        // this is redundant for associative chains but always re-parses.
        let child = |f: &mut fmt::Formatter<'_>, c: &Formula, min: u8| {
            if c.precedence() < min {
                write!(f, "({c})")
            } else {
                write!(f, "{c}")
            }
        };
        match self {
            Formula::True => write!(f, "true"),
            Formula::False => write!(f, "false"),
            Formula::Var(v) => write!(f, "{v}"),
            Formula::Not(a) => {
                write!(f, "!")?;
                child(f, a, 4)
            }
            Formula::And(a, b) => {
                child(f, a, 3)?;
                write!(f, " & ")?;
                child(f, b, 4)
            }
            Formula::Or(a, b) => {
                child(f, a, 2)?;
                write!(f, " | ")?;
                child(f, b, 3)
            }
            Formula::Implies(a, b) => {
                child(f, a, 2)?;
                write!(f, " -> ")?;
                child(f, b, 1)
            }
        }
    }
}

/// A conditional `premise > conclusion`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Conditional {
    pub premise: Formula,
    pub conclusion: Formula,
}

impl Conditional {
    pub fn new(premise: Formula, conclusion: Formula) -> Self {
        Conditional {
            premise,
            conclusion,
        }
    }

    /// `true > conclusion`.
    pub fn unconditional(conclusion: Formula) -> Self {
        Conditional::new(Formula::True, conclusion)
    }

    pub fn condition(&self, alphabet: &Alphabet) -> Result<Condition> {
        Ok(Condition::new(
            alphabet,
            self.premise.models(alphabet)?,
            self.conclusion.models(alphabet)?,
        ))
    }
}

impl fmt::Display for Conditional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} > {}", self.premise, self.conclusion)
    }
}

/// The semantic content of a conditional: its premise and conclusion as
/// model sets over a fixed universe.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Condition {
    premise: ModelSet,
    conclusion: ModelSet,
    universe: ModelSet,
}

impl Condition {
    pub fn new(alphabet: &Alphabet, premise: ModelSet, conclusion: ModelSet) -> Self {
        let universe = alphabet.universe();
        Condition {
            premise: premise & universe,
            conclusion: conclusion & universe,
            universe,
        }
    }

    pub fn premise(&self) -> ModelSet {
        self.premise
    }

    pub fn conclusion(&self) -> ModelSet {
        self.conclusion
    }

    /// `PA`
    pub fn verifying(&self) -> ModelSet {
        self.premise & self.conclusion
    }

    /// `P¬A`
    pub fn falsifying(&self) -> ModelSet {
        self.premise - self.conclusion
    }

    /// `¬P`
    pub fn indifferent(&self) -> ModelSet {
        self.universe - self.premise
    }

    /// `P → A`
    pub fn material(&self) -> ModelSet {
        self.universe - self.falsifying()
    }

    /// The premise is inconsistent, so every order satisfies the conditional.
    pub fn is_vacuous(&self) -> bool {
        self.premise.is_empty()
    }

    /// The premise is consistent but `PA` is not: no order satisfies it.
    pub fn is_unsatisfiable(&self) -> bool {
        !self.premise.is_empty() && self.verifying().is_empty()
    }

    /// Semantic equivalence: same premise models and same `PA` models.
    pub fn equivalent(&self, other: &Condition) -> bool {
        self.premise == other.premise && self.verifying() == other.verifying()
    }

    pub fn to_conditional(&self, alphabet: &Alphabet) -> Conditional {
        Conditional::new(
            Formula::from_models(alphabet, &self.premise),
            Formula::from_models(alphabet, &self.conclusion),
        )
    }
}
