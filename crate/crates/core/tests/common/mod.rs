#![allow(dead_code)]

use condrev::logic::{parse_conditional, parse_term};
use condrev::{Alphabet, Condition, Model, ModelSet, Order};
use proptest::prelude::*;

const NAMES: [&str; 5] = ["x", "y", "z", "w", "v"];

pub fn alphabet(n_vars: usize) -> Alphabet {
    Alphabet::new(NAMES[..n_vars].iter().copied()).unwrap()
}

pub fn order(a: &Alphabet, classes: &[&[&str]]) -> Order {
    let v: Vec<Vec<&str>> = classes.iter().map(|c| c.to_vec()).collect();
    Order::from_terms(a, &v).unwrap()
}

pub fn cond(a: &Alphabet, s: &str) -> Condition {
    parse_conditional(s, a).unwrap().condition(a).unwrap()
}

pub fn model(a: &Alphabet, s: &str) -> Model {
    let set = parse_term(s, a).unwrap();
    assert_eq!(set.len(), 1, "{s} is not a full model");
    set.iter().next().unwrap()
}

pub fn set(a: &Alphabet, s: &str) -> ModelSet {
    parse_term(s, a).unwrap()
}

fn set_strategy(n_models: usize) -> impl Strategy<Value = ModelSet> {
    proptest::collection::vec(any::<bool>(), n_models).prop_map(|bits| {
        bits.iter()
            .enumerate()
            .filter(|(_, b)| **b)
            .map(|(i, _)| Model::new(i))
            .collect()
    })
}

/// An arbitrary order over `n_vars` variables.
pub fn order_over(n_vars: usize) -> impl Strategy<Value = Order> {
    let a = alphabet(n_vars);
    let n = a.num_models();
    proptest::collection::vec(0..n, n).prop_map(move |ranks| Order::from_ranks(&a, &ranks))
}

/// An order together with a satisfiable conditional over the same alphabet.
pub fn instance(n_vars: usize) -> impl Strategy<Value = (Order, Condition)> {
    let a = alphabet(n_vars);
    let n = a.num_models();
    (order_over(n_vars), set_strategy(n), set_strategy(n))
        .prop_map(move |(o, p, c)| (o, Condition::new(&a, p, c)))
        .prop_filter("satisfiable", |(_, c)| !c.is_unsatisfiable())
}

pub fn instance_any() -> impl Strategy<Value = (Order, Condition)> {
    (1usize..=4).prop_flat_map(instance)
}
