mod common;

use common::*;
use condrev::analysis::{at_least_as_naive, diff, preserves_conditionals};
use condrev::revision::{self, contingent_context_set, lex_prop, nat_prop};
use condrev::{Condition, Error, OperatorKind, Order};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn every_operator_establishes_the_conditional((o, c) in instance_any()) {
        for kind in OperatorKind::ALL {
            let r = revision::revise(&o, kind, &c).unwrap();
            prop_assert!(r.satisfies(&c), "{kind} on {o:?}");
            prop_assert!(preserves_conditionals(&o, &r, &c).unwrap(), "{kind} on {o:?}");
        }
    }

    #[test]
    fn revising_twice_changes_nothing((o, c) in instance_any()) {
        for kind in OperatorKind::ALL {
            let once = revision::revise(&o, kind, &c).unwrap();
            let twice = revision::revise(&once, kind, &c).unwrap();
            prop_assert_eq!(once, twice, "{}", kind);
        }
    }

    #[test]
    fn nat_and_dow_keep_satisfying_orders((o, c) in instance_any()) {
        prop_assume!(o.satisfies(&c));
        prop_assert_eq!(&revision::nat(&o, &c).unwrap(), &o);
        prop_assert_eq!(&revision::dow(&o, &c).unwrap(), &o);
    }

    #[test]
    fn unconditional_reductions((o, c) in instance_any()) {
        let a = o.alphabet().clone();
        prop_assume!(!c.conclusion().is_empty());
        let t = Condition::new(&a, a.universe(), c.conclusion());
        prop_assert_eq!(revision::nat(&o, &t).unwrap(), nat_prop(&o, c.conclusion()).unwrap());
        prop_assert_eq!(revision::unc(&o, &t).unwrap(), lex_prop(&o, c.conclusion()).unwrap());
        prop_assert_eq!(revision::lex(&o, &t).unwrap(), lex_prop(&o, c.conclusion()).unwrap());
    }

    #[test]
    fn natural_is_uncontingent_in_context((o, c) in instance_any()) {
        let q = contingent_context_set(&o, &c).unwrap();
        let a = o.alphabet();
        prop_assert_eq!(
            revision::nat(&o, &c).unwrap(),
            revision::unc(&o, &Condition::new(a, q, c.conclusion())).unwrap()
        );
    }

    #[test]
    fn uncontingent_is_lexicographic_below_max_pa((o, c) in instance_any()) {
        prop_assume!(!c.is_vacuous());
        let d = o.up_to(o.max_idx(&c.verifying()).unwrap());
        prop_assert_eq!(revision::unc(&o, &c).unwrap(), lex_prop(&o, d & c.material()).unwrap());
    }

    #[test]
    fn change_and_naivety_chains((o, c) in instance_any()) {
        let r = |k| revision::revise(&o, k, &c).unwrap();
        let (nat, dow, unc, lex) = (r(OperatorKind::Nat), r(OperatorKind::Dow), r(OperatorKind::Unc), r(OperatorKind::Lex));
        prop_assert!(diff(&nat, &o).unwrap().is_subset(&diff(&unc, &o).unwrap()));
        prop_assert!(diff(&unc, &o).unwrap().is_subset(&diff(&lex, &o).unwrap()));
        let f = c.indifferent();
        prop_assert!(at_least_as_naive(&lex, &unc, &f).unwrap());
        prop_assert!(at_least_as_naive(&unc, &nat, &f).unwrap());
        prop_assert!(at_least_as_naive(&nat, &dow, &f).unwrap());
    }

    #[test]
    fn vacuous_premise_is_identity(o in (1usize..=4).prop_flat_map(order_over)) {
        let a = o.alphabet().clone();
        let c = Condition::new(&a, condrev::ModelSet::empty(), a.universe());
        for kind in OperatorKind::ALL {
            prop_assert_eq!(&revision::revise(&o, kind, &c).unwrap(), &o);
        }
    }
}

#[test]
fn unsatisfiable_conditional_is_an_error() {
    let a = alphabet(2);
    let c = cond(&a, "x > x & !x");
    for kind in OperatorKind::ALL {
        assert_eq!(
            revision::revise(&Order::flat(&a), kind, &c),
            Err(Error::UnsatisfiableConditional)
        );
    }
}

#[test]
fn worked_examples_on_cx() {
    let a = alphabet(2);
    let cx = order(&a, &[&["x"], &["-x"]]);
    let target = order(&a, &[&["x y"], &["x -y"], &["-x"]]);
    assert_eq!(revision::nat(&cx, &cond(&a, "y")).unwrap(), target);
    assert_eq!(revision::nat(&cx, &cond(&a, "x > y")).unwrap(), target);
    assert_eq!(
        revision::unc(&cx, &cond(&a, "true > y")).unwrap(),
        order(&a, &[&["x y"], &["-x y"], &["x -y"], &["-x -y"]])
    );
    assert_eq!(revision::unc(&cx, &cond(&a, "x > y")).unwrap(), target);
    assert_eq!(
        lex_prop(&cx, set(&a, "x y") | set(&a, "-x")).unwrap(),
        order(&a, &[&["x y"], &["-x"], &["x -y"]])
    );
}

#[test]
fn line_down_on_flat() {
    let a = alphabet(2);
    assert_eq!(
        revision::dow(&Order::flat(&a), &cond(&a, "x > y")).unwrap(),
        order(&a, &[&["x y"], &["x -y", "-x"]])
    );
}
