//! Verification suites: golden examples, an exhaustive sweep over two
//! variables and a seeded sample over three.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::{self, Postulate};
use crate::error::Result;
use crate::logic::{parse_conditional, parse_term, Alphabet, Condition, ModelSet};
use crate::oracle;
use crate::preorder::Order;
use crate::revision::{self, OperatorKind};

pub const DEFAULT_SEED: u64 = 20_240_517;
pub const DEFAULT_SAMPLES: usize = 500;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    GoldenExamples,
    N2Exhaustive,
    N3Sampled { seed: u64, samples: usize },
}

impl Scope {
    pub fn name(&self) -> &'static str {
        match self {
            Scope::GoldenExamples => "golden-examples",
            Scope::N2Exhaustive => "n2-exhaustive",
            Scope::N3Sampled { .. } => "n3-sampled",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyResult {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub scope: String,
    pub properties: Vec<PropertyResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| p.passed)
    }

    pub fn get(&self, name: &str) -> Option<&PropertyResult> {
        self.properties.iter().find(|p| p.name == name)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for p in &self.properties {
            let _ = writeln!(
                out,
                "{} {} ({} checked)",
                if p.passed { "PASS" } else { "FAIL" },
                p.name,
                p.checked
            );
            if let Some(c) = &p.counterexample {
                let _ = writeln!(out, "  counterexample: {c}");
            }
        }
        let failed = self.properties.iter().filter(|p| !p.passed).count();
        let _ = writeln!(
            out,
            "{}: {} properties, {} failed",
            self.scope,
            self.properties.len(),
            failed
        );
        out
    }
}

#[derive(Default)]
struct Tally {
    props: Vec<PropertyResult>,
}

impl Tally {
    fn record(&mut self, name: &str, ok: Result<bool>, detail: impl FnOnce() -> String) {
        let idx = match self.props.iter().position(|p| p.name == name) {
            Some(i) => i,
            None => {
                self.props.push(PropertyResult {
                    name: name.to_string(),
                    passed: true,
                    checked: 0,
                    counterexample: None,
                });
                self.props.len() - 1
            }
        };
        let p = &mut self.props[idx];
        p.checked += 1;
        let failure = match ok {
            Ok(true) => None,
            Ok(false) => Some(detail()),
            Err(e) => Some(format!("{} (error: {e})", detail())),
        };
        if let Some(f) = failure {
            p.passed = false;
            p.counterexample.get_or_insert(f);
        }
    }

    fn into_report(self, scope: Scope) -> Report {
        Report {
            scope: scope.name().to_string(),
            properties: self.props,
        }
    }
}

pub fn verify(scope: Scope) -> Result<Report> {
    let mut t = Tally::default();
    match scope {
        Scope::GoldenExamples => golden_examples(&mut t)?,
        Scope::N2Exhaustive => {
            let a = Alphabet::new(["x", "y"])?;
            let conds = all_conditions(&a);
            for base in oracle::enumerate_orders(&a)? {
                for c in &conds {
                    if !c.is_unsatisfiable() {
                        check_instance(&mut t, &base, c, true);
                    }
                }
            }
            let semantic: Vec<Condition> = conds
                .iter()
                .filter(|c| c.conclusion().is_subset(&c.premise()) && !c.is_unsatisfiable())
                .copied()
                .collect();
            let flat = Order::flat(&a);
            for c1 in &semantic {
                for c2 in &semantic {
                    check_pair(&mut t, &flat, c1, c2);
                }
            }
        }
        Scope::N3Sampled { seed, samples } => {
            let a = Alphabet::new(["x", "y", "z"])?;
            let total = oracle::fubini(8) as usize;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut picks = Vec::with_capacity(samples);
            for _ in 0..samples {
                let idx = rng.gen_range(0..total);
                picks.push((idx, random_condition(&a, &mut rng)));
            }
            picks.sort_by_key(|(idx, _)| *idx);
            let mut stream = oracle::enumerate_orders(&a)?.enumerate();
            let mut current: Option<(usize, Order)> = None;
            for (idx, c) in &picks {
                while current.as_ref().is_none_or(|(k, _)| k < idx) {
                    current = stream.next();
                }
                let (_, base) = current.as_ref().expect("index within range");
                check_instance(&mut t, base, c, false);
            }
            let flat = Order::flat(&a);
            for _ in 0..samples {
                let c1 = random_condition(&a, &mut rng);
                let c2 = random_condition(&a, &mut rng);
                check_pair(&mut t, &flat, &c1, &c2);
            }
        }
    }
    Ok(t.into_report(scope))
}

fn all_conditions(a: &Alphabet) -> Vec<Condition> {
    let n = a.num_models();
    let mut out = Vec::new();
    for p in 0..1u64 << n {
        for c in 0..1u64 << n {
            out.push(Condition::new(a, ModelSet::from_bits(p), ModelSet::from_bits(c)));
        }
    }
    out
}

fn random_condition(a: &Alphabet, rng: &mut ChaCha8Rng) -> Condition {
    let mask = (1u64 << a.num_models()) - 1;
    loop {
        let p = rng.gen::<u64>() & mask;
        let c = rng.gen::<u64>() & mask;
        let cond = Condition::new(a, ModelSet::from_bits(p), ModelSet::from_bits(c));
        if !cond.is_unsatisfiable() {
            return cond;
        }
    }
}

fn describe(base: &Order, c: &Condition) -> String {
    format!("base={base:?} cond={}", c.to_conditional(base.alphabet()))
}

/// Properties of a single revision instance.
fn check_instance(t: &mut Tally, base: &Order, c: &Condition, exact: bool) {
    let ctx = || describe(base, c);
    let mut results = Vec::new();
    for kind in OperatorKind::ALL {
        match revision::revise(base, kind, c) {
            Ok(r) => results.push(r),
            Err(e) => {
                t.record("operators-defined", Err(e), ctx);
                return;
            }
        }
    }
    let [nat, dow, unc, lex] = <[Order; 4]>::try_from(results).expect("four operators");
    let revised = [(OperatorKind::Nat, &nat), (OperatorKind::Dow, &dow), (OperatorKind::Unc, &unc), (OperatorKind::Lex, &lex)];
    let alphabet = base.alphabet();
    let universe = alphabet.universe();

    for (kind, r) in revised {
        t.record(&format!("cr1/{kind}"), Ok(r.satisfies(c)), || format!("{} -> {r:?}", ctx()));
    }
    for (kind, r) in revised {
        t.record(
            &format!("preservation/{kind}"),
            analysis::preserves_conditionals(base, r, c),
            || format!("{} -> {r:?}", ctx()),
        );
    }
    for p in Postulate::ALL {
        let v = analysis::check_postulate(OperatorKind::Nat, base, c, p);
        let note = v
            .as_ref()
            .ok()
            .and_then(|v| v.witness.as_ref())
            .map(|w| serde_json::to_string(w).expect("json"))
            .unwrap_or_default();
        t.record(&format!("nat-postulate/{p}"), v.map(|v| v.holds), || format!("{} witness={note}", ctx()));
    }

    if c.premise() == universe && !c.conclusion().is_empty() {
        t.record(
            "nat-true-is-nat-prop",
            revision::nat_prop(base, c.conclusion()).map(|o| o == nat),
            ctx,
        );
        t.record(
            "unc-true-is-lex-prop",
            revision::lex_prop(base, c.conclusion()).map(|o| o == unc),
            ctx,
        );
    }
    t.record(
        "nat-is-unc-of-context",
        revision::contingent_context_set(base, c)
            .and_then(|q| revision::unc(base, &Condition::new(alphabet, q, c.conclusion())))
            .map(|o| o == nat),
        ctx,
    );
    if !c.is_vacuous() {
        t.record(
            "unc-is-lex-prop-of-downset",
            base.max_idx(&c.verifying())
                .and_then(|k| revision::lex_prop(base, base.up_to(k) & c.material()))
                .map(|o| o == unc),
            ctx,
        );
    }

    t.record(
        "diff-chain",
        (|| {
            let dn = analysis::diff(&nat, base)?;
            let du = analysis::diff(&unc, base)?;
            let dl = analysis::diff(&lex, base)?;
            Ok(dn.is_subset(&du) && du.is_subset(&dl))
        })(),
        ctx,
    );
    let not_p = c.indifferent();
    t.record(
        "naivety-chain",
        (|| {
            Ok(analysis::at_least_as_naive(&lex, &unc, &not_p)?
                && analysis::at_least_as_naive(&unc, &nat, &not_p)?
                && analysis::at_least_as_naive(&nat, &dow, &not_p)?)
        })(),
        ctx,
    );

    let member = |cand: &Order| -> Result<bool> {
        if exact {
            Ok(oracle::minimal_satisfying(base, c)?.contains(cand))
        } else {
            oracle::is_minimal_satisfying(base, c, cand)
        }
    };
    t.record("nat-minimal", member(&nat), ctx);
    t.record("dow-minimal", member(&dow), ctx);
    let unc_member = if exact {
        oracle::uncontingent_minimal(base, c).map(|s| s.contains(&unc))
    } else {
        oracle::is_uncontingent_minimal(base, c, &unc)
    };
    t.record("unc-uncontingent-minimal", unc_member, ctx);
    t.record("unique-naive", oracle::unique_naive_check(base, c), ctx);

    if !c.is_vacuous() {
        t.record(
            "supernaive",
            (|| {
                let s = analysis::supernaive(base, c)?;
                let tied = base.classes()[base.min_idx(&c.verifying())?].intersects(&not_p);
                let strictly = analysis::strictly_more_naive(&s, &nat, &not_p)?;
                let ok = s.satisfies(c)
                    && analysis::preserves_conditionals(base, &s, c)?
                    && analysis::at_least_as_naive(&s, &nat, &not_p)?
                    && strictly == tied
                    && (!strictly || !oracle::is_minimal_satisfying(base, c, &s)?);
                Ok(ok)
            })(),
            ctx,
        );
    }
}

/// Properties of two successive revisions from `flat`.
fn check_pair(t: &mut Tally, flat: &Order, c1: &Condition, c2: &Condition) {
    let a = flat.alphabet();
    let ctx = || {
        format!(
            "base={flat:?} first={} second={}",
            c1.to_conditional(a),
            c2.to_conditional(a)
        )
    };
    t.record(
        "nat-recalcitrant-from-flat",
        analysis::recalcitrance_check(OperatorKind::Nat, flat, c1, c2).map(|v| v.recalcitrant),
        ctx,
    );
    t.record(
        "first-unsatisfied-consequence",
        (|| {
            let twice = revision::nat(&revision::nat(flat, c1)?, c2)?;
            if twice.satisfies(c1) {
                return Ok(true);
            }
            Ok(c1.verifying().is_subset(&c2.falsifying()) && c2.verifying().is_subset(&c1.falsifying()))
        })(),
        ctx,
    );
}

fn cond(a: &Alphabet, s: &str) -> Result<Condition> {
    parse_conditional(s, a)?.condition(a)
}

fn terms(a: &Alphabet, classes: &[&[&str]]) -> Result<Order> {
    let v: Vec<Vec<&str>> = classes.iter().map(|c| c.to_vec()).collect();
    Order::from_terms(a, &v)
}

fn model_pairs(a: &Alphabet, ps: &[(&str, &str)]) -> Result<analysis::PairSet> {
    let mut s = analysis::PairSet::new(a.num_models());
    for (i, j) in ps {
        s.insert(parse_model(a, i)?, parse_model(a, j)?);
    }
    Ok(s)
}

fn parse_model(a: &Alphabet, text: &str) -> Result<crate::logic::Model> {
    Ok(parse_term(text, a)?.iter().next().expect("model"))
}

/// Order and conditional over `x, y, z` on which lexicographic,
/// uncontingent, natural and line-down revision are strictly ordered by
/// naivety on `¬P`.
pub fn naive_chain_witness() -> Result<(Order, Condition)> {
    let a = Alphabet::new(["x", "y", "z"])?;
    let base = terms(
        &a,
        &[
            &["-x y z", "x y z", "x -y z"],
            &["-x y -z", "x y -z"],
            &["-x -y z", "-x -y -z", "x -y -z"],
        ],
    )?;
    Ok((base, cond(&a, "x & (y | z) > y")?))
}

fn golden_examples(t: &mut Tally) -> Result<()> {
    let xy = Alphabet::new(["x", "y"])?;
    let xyz = Alphabet::new(["x", "y", "z"])?;
    let cx = terms(&xy, &[&["x"], &["-x"]])?;
    let flat = Order::flat(&xy);
    let none = String::new;

    let y = cond(&xy, "y")?;
    let x_y = cond(&xy, "x > y")?;
    let nat_expected = terms(&xy, &[&["x y"], &["x -y"], &["-x"]])?;
    t.record("nat-cx-y", revision::nat(&cx, &y).map(|o| o == nat_expected), none);
    t.record("nat-cx-x>y", revision::nat(&cx, &x_y).map(|o| o == nat_expected), none);
    let unc_expected = terms(&xy, &[&["x y"], &["-x y"], &["x -y"], &["-x -y"]])?;
    t.record("unc-cx-true>y", revision::unc(&cx, &y).map(|o| o == unc_expected), none);
    t.record("unc-cx-x>y", revision::unc(&cx, &x_y).map(|o| o == nat_expected), none);
    t.record(
        "lex-prop-cx-x->y",
        revision::lex_prop(&cx, cond(&xy, "x -> y")?.conclusion())
            .and_then(|o| Ok(o == terms(&xy, &[&["x y"], &["-x"], &["x -y"]])?)),
        none,
    );
    let nat_prop = revision::nat_prop(&cx, y.conclusion())?;
    let unc = revision::unc(&cx, &y)?;
    let d_nat = analysis::diff(&cx, &nat_prop)?;
    let d_unc = analysis::diff(&cx, &unc)?;
    t.record("diff-cx-nat-prop", Ok(d_nat == model_pairs(&xy, &[("x -y", "x y")])?), none);
    t.record(
        "diff-cx-unc-extends-nat",
        Ok(d_nat.is_subset(&d_unc)
            && d_unc.contains(parse_model(&xy, "-x -y")?, parse_model(&xy, "-x y")?)
            && d_unc.difference(&d_nat)
                == model_pairs(&xy, &[("-x -y", "-x y"), ("x -y", "-x y"), ("-x y", "x -y")])?),
        || format!("{d_unc:?}"),
    );
    t.record(
        "nat-strictly-closer-than-unc",
        Ok(analysis::at_least_as_close(&nat_prop, &unc, &cx)? && !analysis::at_least_as_close(&unc, &nat_prop, &cx)?),
        none,
    );
    let unc_xy = revision::unc(&cx, &x_y)?;
    let lex_xy = revision::lex(&cx, &x_y)?;
    t.record(
        "unc-strictly-closer-than-lex",
        Ok(analysis::at_least_as_close(&unc_xy, &lex_xy, &cx)? && !analysis::at_least_as_close(&lex_xy, &unc_xy, &cx)?),
        none,
    );
    t.record(
        "lex-not-minimal",
        oracle::minimal_satisfying(&cx, &x_y).map(|s| !s.contains(&lex_xy)),
        none,
    );
    t.record(
        "minimal-contains-nat-and-dow",
        (|| {
            let s = oracle::minimal_satisfying(&flat, &x_y)?;
            Ok(s.contains(&revision::nat(&flat, &x_y)?) && s.contains(&revision::dow(&flat, &x_y)?))
        })(),
        none,
    );
    t.record(
        "uncontingent-minimal-contains-unc",
        oracle::uncontingent_minimal(&cx, &y).map(|s| s.contains(&unc)),
        none,
    );
    t.record("unique-naive-cx-x>y", oracle::unique_naive_check(&cx, &x_y), none);
    t.record("unique-naive-flat-y", oracle::unique_naive_check(&flat, &y), none);
    t.record(
        "contingent-context",
        (|| {
            let q = revision::contingent_context_set(&cx, &x_y)?;
            Ok(revision::unc(&cx, &Condition::new(&xy, q, x_y.conclusion()))? == revision::nat(&cx, &x_y)?)
        })(),
        none,
    );

    // unc breaks CR2
    let c2 = terms(&xy, &[&["x y"], &["-x"], &["x -y"]])?;
    let v = analysis::check_postulate(OperatorKind::Unc, &c2, &cond(&xy, "x")?, Postulate::CR2)?;
    t.record(
        "unc-fails-cr2",
        Ok(!v.holds && v.witness.as_ref().is_some_and(|w| w.orders.len() == 2)),
        none,
    );

    // line-down is not recalcitrant
    let flat3 = Order::flat(&xyz);
    let first = cond(&xyz, "x > y")?;
    let second = cond(&xyz, "!y & !z")?;
    let v = analysis::recalcitrance_check(OperatorKind::Dow, &flat3, &first, &second)?;
    let joint = terms(
        &xyz,
        &[&["-x -y -z"], &["x y", "-x y", "-x -y z"], &["x -y"]],
    )?;
    t.record(
        "dow-not-recalcitrant",
        Ok(!v.recalcitrant
            && v.joint_witness.is_some()
            && joint.satisfies(&first)
            && joint.satisfies(&second)
            && v.final_order.as_ref().is_some_and(|o| {
                o.classes()[0].intersects(&parse_term("x -y", &xyz).expect("term"))
            })),
        || format!("{v:?}"),
    );

    // natural revision is not recalcitrant on C_x
    let not_x = cond(&xy, "!x")?;
    let v = analysis::recalcitrance_check(OperatorKind::Nat, &cx, &y, &not_x)?;
    let joint = terms(&xy, &[&["-x y"], &["x", "-x -y"]])?;
    t.record(
        "nat-not-recalcitrant-on-cx",
        Ok(!v.recalcitrant
            && joint.satisfies(&y)
            && joint.satisfies(&not_x)
            && v.final_order.as_ref().is_some_and(|o| o.classes()[0] == not_x.conclusion())),
        || format!("{v:?}"),
    );
    t.record(
        "joint-witness-two-beliefs",
        oracle::mutually_satisfiable(&[y, not_x], &xy).map(|w| w.as_ref() == Some(&joint)),
        none,
    );
    t.record(
        "no-joint-witness-for-contradiction",
        oracle::mutually_satisfiable(&[y, cond(&xy, "!y")?], &xy).map(|w| w.is_none()),
        none,
    );

    // line-down changes pairs the others keep and vice versa
    let dow_flat = revision::dow(&flat, &x_y)?;
    let d_dow = analysis::diff(&dow_flat, &flat)?;
    for kind in [OperatorKind::Nat, OperatorKind::Unc, OperatorKind::Lex] {
        let other = revision::revise(&flat, kind, &x_y)?;
        let d_other = analysis::diff(&other, &flat)?;
        let only_dow = d_dow.difference(&d_other);
        let only_other = d_other.difference(&d_dow);
        t.record(
            &format!("dow-incomparable-with-{kind}"),
            Ok(only_dow == model_pairs(&xy, &[("-x y", "x y"), ("-x -y", "x y")])?
                && only_other == model_pairs(&xy, &[("x -y", "-x y"), ("x -y", "-x -y")])?),
            || format!("{only_dow:?} vs {only_other:?}"),
        );
    }

    let (base, c) = naive_chain_witness()?;
    t.record(
        "naive-chain-strict",
        (|| {
            let f = c.indifferent();
            let r = |k| revision::revise(&base, k, &c);
            let (lex, unc, nat, dow) = (r(OperatorKind::Lex)?, r(OperatorKind::Unc)?, r(OperatorKind::Nat)?, r(OperatorKind::Dow)?);
            Ok(analysis::strictly_more_naive(&lex, &unc, &f)?
                && analysis::strictly_more_naive(&unc, &nat, &f)?
                && analysis::strictly_more_naive(&nat, &dow, &f)?)
        })(),
        none,
    );
    t.record(
        "supernaive-strictly-more-naive",
        (|| {
            let s = analysis::supernaive(&base, &c)?;
            let nat = revision::nat(&base, &c)?;
            Ok(s.satisfies(&c)
                && analysis::preserves_conditionals(&base, &s, &c)?
                && analysis::strictly_more_naive(&s, &nat, &c.indifferent())?)
        })(),
        none,
    );
    Ok(())
}
