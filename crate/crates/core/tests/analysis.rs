mod common;

use common::*;
use condrev::analysis::{
    at_least_as_close, at_least_as_naive, check_postulate, diff, preserves_conditionals,
    recalcitrance_check, strictly_more_naive, supernaive, PairSet, Postulate,
};
use condrev::revision::{self, nat_prop};
use condrev::verify::naive_chain_witness;
use condrev::{Condition, OperatorKind, Order};
use proptest::prelude::*;

fn pairs(a: &condrev::Alphabet, ps: &[(&str, &str)]) -> PairSet {
    let mut s = PairSet::new(a.num_models());
    for (i, j) in ps {
        s.insert(model(a, i), model(a, j));
    }
    s
}

proptest! {
    #[test]
    fn diff_symmetric_and_empty_iff_equal(
        (o1, o2) in (1usize..=3).prop_flat_map(|n| (order_over(n), order_over(n)))
    ) {
        let d = diff(&o1, &o2).unwrap();
        prop_assert_eq!(&d, &diff(&o2, &o1).unwrap());
        prop_assert_eq!(d.is_empty(), o1 == o2);
        for (i, j) in d.iter() {
            prop_assert_ne!(i, j);
        }
    }

    #[test]
    fn supernaive_properties((o, c) in instance(3)) {
        prop_assume!(!c.is_vacuous());
        let s = supernaive(&o, &c).unwrap();
        let nat = revision::nat(&o, &c).unwrap();
        let f = c.indifferent();
        prop_assert!(s.satisfies(&c));
        prop_assert!(preserves_conditionals(&o, &s, &c).unwrap());
        prop_assert!(at_least_as_naive(&s, &nat, &f).unwrap());
        let tied = o.classes()[o.min_idx(&c.verifying()).unwrap()].intersects(&f);
        prop_assert_eq!(strictly_more_naive(&s, &nat, &f).unwrap(), tied);
        if tied {
            prop_assert!(at_least_as_close(&nat, &s, &o).unwrap());
            prop_assert!(!at_least_as_close(&s, &nat, &o).unwrap());
        }
    }

    #[test]
    fn natural_revision_postulates((o, c) in instance(2)) {
        for p in Postulate::ALL {
            let v = check_postulate(OperatorKind::Nat, &o, &c, p).unwrap();
            prop_assert!(v.holds, "{:?}", v);
        }
    }
}

#[test]
fn uncontingent_postulates_except_cr2() {
    let a = alphabet(2);
    let n = a.num_models() as u64;
    let mut cr2_failures = 0;
    for o in condrev::oracle::enumerate_orders(&a).unwrap() {
        for p in 0..1u64 << n {
            for q in 0..1u64 << n {
                let c = Condition::new(&a, condrev::ModelSet::from_bits(p), condrev::ModelSet::from_bits(q));
                if c.is_unsatisfiable() {
                    continue;
                }
                for post in Postulate::ALL {
                    let v = check_postulate(OperatorKind::Unc, &o, &c, post).unwrap();
                    if post == Postulate::CR2 {
                        cr2_failures += usize::from(!v.holds);
                    } else {
                        assert!(v.holds, "{post} {o:?} {c:?}");
                    }
                }
            }
        }
    }
    assert!(cr2_failures > 0);
}

#[test]
fn uncontingent_breaks_cr2() {
    let a = alphabet(2);
    let c = order(&a, &[&["x y"], &["-x"], &["x -y"]]);
    let v = check_postulate(OperatorKind::Unc, &c, &cond(&a, "true > x"), Postulate::CR2).unwrap();
    assert!(!v.holds);
    let w = v.witness.unwrap();
    let back = Order::from_terms(&a, &w.orders[1].classes).unwrap();
    assert_eq!(back, order(&a, &[&["x y"], &["x -y"], &["-x"]]));
}

/// The literal reading "`C ⊨ Q>B` implies the revision entails `Q>B`" for
/// `QB ⊆ P¬A`, `Q¬B ⊆ PA` fails for natural revision; the checked
/// formulation is the reverse implication.
#[test]
fn cr7_direction() {
    let a = alphabet(2);
    let c = order(&a, &[&["x -y"], &["x y"], &["-x"]]);
    let xy = cond(&a, "x > y");
    let q = cond(&a, "x > !y");
    assert!(c.satisfies(&q));
    let r = revision::nat(&c, &xy).unwrap();
    assert!(!r.satisfies(&q));
    assert!(check_postulate(OperatorKind::Nat, &c, &xy, Postulate::CR7).unwrap().holds);
}

#[test]
fn closeness_chain_is_strict_on_cx() {
    let a = alphabet(2);
    let cx = order(&a, &[&["x"], &["-x"]]);
    let y = cond(&a, "true > y");
    let nat = nat_prop(&cx, y.conclusion()).unwrap();
    let unc = revision::unc(&cx, &y).unwrap();
    assert_eq!(diff(&cx, &nat).unwrap(), pairs(&a, &[("x -y", "x y")]));
    assert!(diff(&cx, &unc).unwrap().contains(model(&a, "-x -y"), model(&a, "-x y")));
    assert!(at_least_as_close(&nat, &unc, &cx).unwrap() && !at_least_as_close(&unc, &nat, &cx).unwrap());
    let xy = cond(&a, "x > y");
    let lex = revision::lex(&cx, &xy).unwrap();
    let nat = revision::nat(&cx, &xy).unwrap();
    assert!(at_least_as_close(&nat, &lex, &cx).unwrap() && !at_least_as_close(&lex, &nat, &cx).unwrap());
}

#[test]
fn line_down_incomparable_with_the_others() {
    let a = alphabet(2);
    let flat = Order::flat(&a);
    let c = cond(&a, "x > y");
    let d_dow = diff(&revision::dow(&flat, &c).unwrap(), &flat).unwrap();
    for kind in [OperatorKind::Nat, OperatorKind::Unc, OperatorKind::Lex] {
        let d = diff(&revision::revise(&flat, kind, &c).unwrap(), &flat).unwrap();
        let only_dow = d_dow.difference(&d);
        let only_other = d.difference(&d_dow);
        assert!(only_dow.contains(model(&a, "-x -y"), model(&a, "x y")));
        assert!(only_other.contains(model(&a, "x -y"), model(&a, "-x -y")));
        assert_eq!(only_dow, pairs(&a, &[("-x y", "x y"), ("-x -y", "x y")]));
        assert_eq!(only_other, pairs(&a, &[("x -y", "-x y"), ("x -y", "-x -y")]));
    }
}

#[test]
fn naive_chain_strict_on_three_variables() {
    let (base, c) = naive_chain_witness().unwrap();
    assert!(c.indifferent().len() >= 3);
    assert_eq!(c.verifying().len(), 2);
    assert_eq!(c.falsifying().len(), 1);
    let r = |k| revision::revise(&base, k, &c).unwrap();
    let f = c.indifferent();
    assert!(strictly_more_naive(&r(OperatorKind::Lex), &r(OperatorKind::Unc), &f).unwrap());
    assert!(strictly_more_naive(&r(OperatorKind::Unc), &r(OperatorKind::Nat), &f).unwrap());
    assert!(strictly_more_naive(&r(OperatorKind::Nat), &r(OperatorKind::Dow), &f).unwrap());
}

/// The arrangement with one `¬P`-only class above a mixed class and a final
/// `¬P`/`PA` class separates uncontingent, natural and line-down revision,
/// but not lexicographic from uncontingent.
#[test]
fn naive_chain_three_class_arrangement() {
    let a = alphabet(3);
    let base = order(
        &a,
        &[&["-x y z"], &["-x y -z", "x y z", "x -y z"], &["-x -y", "x y -z", "x -y -z"]],
    );
    let c = cond(&a, "x & (y | z) > y");
    let r = |k| revision::revise(&base, k, &c).unwrap();
    let f = c.indifferent();
    assert!(at_least_as_naive(&r(OperatorKind::Lex), &r(OperatorKind::Unc), &f).unwrap());
    assert!(strictly_more_naive(&r(OperatorKind::Unc), &r(OperatorKind::Nat), &f).unwrap());
    assert!(strictly_more_naive(&r(OperatorKind::Nat), &r(OperatorKind::Dow), &f).unwrap());
}

#[test]
fn line_down_not_recalcitrant() {
    let a = alphabet(3);
    let flat = Order::flat(&a);
    let v = recalcitrance_check(OperatorKind::Dow, &flat, &cond(&a, "x > y"), &cond(&a, "!y & !z")).unwrap();
    assert!(!v.recalcitrant);
    assert_eq!(
        v.final_order.unwrap(),
        order(&a, &[&["-y -z"], &["x y"], &["x -y z", "-x y", "-x -y z"]])
    );
    let joint = order(&a, &[&["-x -y -z"], &["x y", "-x y", "-x -y z"], &["x -y"]]);
    assert!(joint.satisfies(&cond(&a, "x > y")) && joint.satisfies(&cond(&a, "!y & !z")));
    assert_eq!(v.joint_witness.unwrap().num_classes(), 3);
}

#[test]
fn natural_not_recalcitrant_on_cx() {
    let a = alphabet(2);
    let cx = order(&a, &[&["x"], &["-x"]]);
    let v = recalcitrance_check(OperatorKind::Nat, &cx, &cond(&a, "y"), &cond(&a, "!x")).unwrap();
    assert!(!v.recalcitrant);
    assert_eq!(v.final_order.unwrap(), order(&a, &[&["-x"], &["x y"], &["x -y"]]));
    assert_eq!(v.joint_witness.unwrap(), order(&a, &[&["-x y"], &["x", "-x -y"]]));
}

#[test]
fn jointly_unsatisfiable_pairs_are_vacuously_recalcitrant() {
    let a = alphabet(2);
    let v = recalcitrance_check(OperatorKind::Dow, &Order::flat(&a), &cond(&a, "y"), &cond(&a, "!y")).unwrap();
    assert!(v.recalcitrant && v.joint_witness.is_none());
}
