//! Brute-force ground truth over small universes.
//!
//! Every connected preorder over at most [`MAX_MODELS`] models is enumerated
//! once and cached in a compact form (a rank per model plus the `≤` relation
//! as a 64-bit matrix). Satisfaction, difference, naivety and preservation
//! are re-implemented on that form, so the checks here share no code with the
//! operators they certify.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::logic::{Alphabet, Condition};
use crate::preorder::Order;
use crate::revision;

/// Largest universe the oracle enumerates.
pub const MAX_MODELS: usize = 8;

/// Ordered Bell numbers: the number of connected preorders over `n` models.
pub fn fubini(n: usize) -> u128 {
    let mut a = vec![1u128; n + 1];
    let mut binom = vec![vec![1u128; n + 1]; n + 1];
    for i in 1..=n {
        for k in 1..i {
            binom[i][k] = binom[i - 1][k - 1] + binom[i - 1][k];
        }
    }
    for m in 1..=n {
        a[m] = (1..=m).map(|k| binom[m][k] * a[m - k]).sum();
    }
    a[n]
}

/// An order in compact form. Bit `8*i + j` of `leq` is set iff model `i` is
/// at least as plausible as model `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Ranking {
    rank: [u8; MAX_MODELS],
    leq: u64,
}

impl Ranking {
    fn new(rank: [u8; MAX_MODELS], n: usize) -> Self {
        let mut leq = 0u64;
        for i in 0..n {
            for j in 0..n {
                if rank[i] <= rank[j] {
                    leq |= 1 << (i * 8 + j);
                }
            }
        }
        Ranking { rank, leq }
    }

    fn of(order: &Order) -> Self {
        let mut rank = [0u8; MAX_MODELS];
        for (k, r) in order.ranks().into_iter().enumerate() {
            rank[k] = r as u8;
        }
        Ranking::new(rank, order.alphabet().num_models())
    }

    fn to_order(self, alphabet: &Alphabet) -> Order {
        let ranks: Vec<usize> = self.rank[..alphabet.num_models()]
            .iter()
            .map(|&r| r as usize)
            .collect();
        Order::from_ranks(alphabet, &ranks)
    }

    fn min_rank(&self, set: u64, n: usize) -> Option<u8> {
        (0..n).filter(|k| set >> k & 1 == 1).map(|k| self.rank[k]).min()
    }

    fn satisfies(&self, premise: u64, conclusion: u64, n: usize) -> bool {
        if premise == 0 {
            return true;
        }
        match (
            self.min_rank(premise & conclusion, n),
            self.min_rank(premise & !conclusion, n),
        ) {
            (None, _) => false,
            (Some(_), None) => true,
            (Some(v), Some(f)) => v < f,
        }
    }

    fn diff(&self, other: &Ranking) -> u64 {
        self.leq ^ other.leq
    }

    /// Every model of `f` is at least as strong here as in `other`.
    fn at_least_as_naive(&self, other: &Ranking, f: u64, n: usize) -> bool {
        (0..n).filter(|i| f >> i & 1 == 1).all(|i| {
            (0..n).all(|j| {
                let strict = |r: &Ranking| r.rank[i] < r.rank[j];
                let weak = |r: &Ranking| r.rank[i] <= r.rank[j];
                (!strict(other) || strict(self)) && (!weak(other) || weak(self))
            })
        })
    }
}

/// Bits of the `≤` matrix whose row and column both lie in `set`.
fn block_mask(set: u64, n: usize) -> u64 {
    let mut mask = 0;
    for i in 0..n {
        for j in 0..n {
            if set >> i & 1 == 1 && set >> j & 1 == 1 {
                mask |= 1 << (i * 8 + j);
            }
        }
    }
    mask
}

fn preserves(base: &Ranking, revised: &Ranking, c: &Condition, n: usize) -> bool {
    let changed = base.diff(revised);
    [c.indifferent(), c.verifying(), c.falsifying()]
        .iter()
        .all(|g| changed & block_mask(g.low_bits(), n) == 0)
}

/// Places models `0..n` one at a time: into an existing class, or into a new
/// class inserted at any position.
fn generate(n: usize) -> Vec<Ranking> {
    fn go(rank: &mut [u8; MAX_MODELS], placed: usize, classes: u8, n: usize, out: &mut Vec<Ranking>) {
        if placed == n {
            out.push(Ranking::new(*rank, n));
            return;
        }
        for r in 0..classes {
            rank[placed] = r;
            go(rank, placed + 1, classes, n, out);
        }
        for p in 0..=classes {
            let saved = *rank;
            for r in rank[..placed].iter_mut() {
                if *r >= p {
                    *r += 1;
                }
            }
            rank[placed] = p;
            go(rank, placed + 1, classes + 1, n, out);
            *rank = saved;
        }
    }
    let mut out = Vec::with_capacity(fubini(n) as usize);
    go(&mut [0; MAX_MODELS], 0, 0, n, &mut out);
    out
}

fn rankings(alphabet: &Alphabet) -> Result<&'static [Ranking]> {
    static CACHE: [OnceLock<Vec<Ranking>>; MAX_MODELS + 1] = [const { OnceLock::new() }; MAX_MODELS + 1];
    let n = alphabet.num_models();
    if n > MAX_MODELS {
        return Err(Error::UniverseTooLarge { models: n, cap: MAX_MODELS });
    }
    Ok(CACHE[n].get_or_init(|| generate(n)))
}

/// Every connected preorder over the universe of an alphabet, each once, in
/// a fixed order.
pub struct OrderStream {
    alphabet: Alphabet,
    rankings: std::slice::Iter<'static, Ranking>,
}

impl Iterator for OrderStream {
    type Item = Order;

    fn next(&mut self) -> Option<Order> {
        self.rankings.next().map(|r| r.to_order(&self.alphabet))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.rankings.size_hint()
    }
}

impl ExactSizeIterator for OrderStream {}

pub fn enumerate_orders(alphabet: &Alphabet) -> Result<OrderStream> {
    Ok(OrderStream {
        alphabet: alphabet.clone(),
        rankings: rankings(alphabet)?.iter(),
    })
}

struct Instance {
    n: usize,
    all: &'static [Ranking],
    base: Ranking,
    premise: u64,
    conclusion: u64,
}

impl Instance {
    fn new(base: &Order, c: &Condition) -> Result<Self> {
        let all = rankings(base.alphabet())?;
        if c.is_unsatisfiable() {
            return Err(Error::UnsatisfiableConditional);
        }
        Ok(Instance {
            n: base.alphabet().num_models(),
            all,
            base: Ranking::of(base),
            premise: c.premise().low_bits(),
            conclusion: c.conclusion().low_bits(),
        })
    }

    fn satisfies(&self, r: &Ranking) -> bool {
        r.satisfies(self.premise, self.conclusion, self.n)
    }

    /// `(S) > A` for every `S ⊆ P` that meets `A`.
    fn satisfies_everywhere(&self, r: &Ranking) -> bool {
        let p = self.premise;
        let mut s = p;
        loop {
            if s & self.conclusion != 0 && !r.satisfies(s, self.conclusion, self.n) {
                return false;
            }
            if s == 0 {
                return true;
            }
            s = (s - 1) & p;
        }
    }

    /// Subset-minimal diff among the rankings accepted by `ok`.
    fn minimal(&self, ok: impl Fn(&Ranking) -> bool) -> Vec<&'static Ranking> {
        let mut candidates: Vec<(u32, usize)> = self
            .all
            .iter()
            .enumerate()
            .filter(|(_, r)| ok(r))
            .map(|(k, r)| (r.diff(&self.base).count_ones(), k))
            .collect();
        candidates.sort_unstable();
        let mut kept: Vec<u64> = Vec::new();
        let mut out = Vec::new();
        for (_, k) in candidates {
            let d = self.all[k].diff(&self.base);
            if kept.iter().all(|&m| m & !d != 0) {
                kept.push(d);
                out.push(k);
            }
        }
        out.sort_unstable();
        out.into_iter().map(|k| &self.all[k]).collect()
    }

    /// No ranking accepted by `ok` has a diff strictly inside that of `cand`.
    fn is_minimal(&self, cand: &Ranking, ok: impl Fn(&Ranking) -> bool) -> bool {
        let d = cand.diff(&self.base);
        ok(cand)
            && !self.all.iter().any(|r| {
                let e = r.diff(&self.base);
                e != d && e & !d == 0 && ok(r)
            })
    }
}

/// All orders satisfying `c` whose difference from `base` is subset-minimal.
pub fn minimal_satisfying(base: &Order, c: &Condition) -> Result<Vec<Order>> {
    let inst = Instance::new(base, c)?;
    Ok(inst
        .minimal(|r| inst.satisfies(r))
        .into_iter()
        .map(|r| r.to_order(base.alphabet()))
        .collect())
}

/// Whether `candidate` is among [`minimal_satisfying`], without building the
/// whole set.
pub fn is_minimal_satisfying(base: &Order, c: &Condition, candidate: &Order) -> Result<bool> {
    let inst = Instance::new(base, c)?;
    Ok(inst.is_minimal(&Ranking::of(candidate), |r| inst.satisfies(r)))
}

/// All orders satisfying `(R ∧ P) > A` for every model set `R` consistent
/// with `PA`, subset-minimal in difference from `base`.
pub fn uncontingent_minimal(base: &Order, c: &Condition) -> Result<Vec<Order>> {
    let inst = Instance::new(base, c)?;
    Ok(inst
        .minimal(|r| inst.satisfies_everywhere(r))
        .into_iter()
        .map(|r| r.to_order(base.alphabet()))
        .collect())
}

pub fn is_uncontingent_minimal(base: &Order, c: &Condition, candidate: &Order) -> Result<bool> {
    let inst = Instance::new(base, c)?;
    Ok(inst.is_minimal(&Ranking::of(candidate), |r| inst.satisfies_everywhere(r)))
}

/// The minimal-change orders that preserve conditionals and are maximally
/// naive on `¬P`.
pub fn maximally_naive_minimal(base: &Order, c: &Condition) -> Result<Vec<Order>> {
    let inst = Instance::new(base, c)?;
    let n = inst.n;
    let indifferent = c.indifferent().low_bits();
    let pool: Vec<&Ranking> = inst
        .minimal(|r| inst.satisfies(r))
        .into_iter()
        .filter(|r| preserves(&inst.base, r, c, n))
        .collect();
    let strictly_more = |a: &Ranking, b: &Ranking| {
        a.at_least_as_naive(b, indifferent, n) && !b.at_least_as_naive(a, indifferent, n)
    };
    Ok(pool
        .iter()
        .filter(|x| !pool.iter().any(|y| strictly_more(y, x)))
        .map(|r| r.to_order(base.alphabet()))
        .collect())
}

/// Natural revision is the only maximally naive, conditional-preserving
/// minimal change.
pub fn unique_naive_check(base: &Order, c: &Condition) -> Result<bool> {
    let best = maximally_naive_minimal(base, c)?;
    let nat = revision::nat(base, c)?;
    Ok(best.len() == 1 && best[0] == nat)
}

/// Some order satisfying every condition, preferring fewest classes.
pub fn mutually_satisfiable(conds: &[Condition], alphabet: &Alphabet) -> Result<Option<Order>> {
    let n = alphabet.num_models();
    Ok(rankings(alphabet)?
        .iter()
        .filter(|r| {
            conds
                .iter()
                .all(|c| r.satisfies(c.premise().low_bits(), c.conclusion().low_bits(), n))
        })
        .min_by_key(|r| r.rank[..n].iter().max().copied())
        .map(|r| r.to_order(alphabet)))
}

/// Cross-checks for the compact helpers.
pub fn oracle_satisfies(order: &Order, c: &Condition) -> bool {
    Ranking::of(order).satisfies(c.premise().low_bits(), c.conclusion().low_bits(), order.alphabet().num_models())
}
