//! Oracles shared by the integration tests. They avoid the matrix routines
//! of the library and work entry by entry.
#![allow(dead_code)]

use num_traits::ToPrimitive;
use wcoalg::automaton::{StateVector, WeightedAutomaton, Word};
use wcoalg::determinize::NondetAutomaton;
use wcoalg::semiring::{Boolean, Rational, Semiring};

/// `Σ over state paths x₀…x_k of v[x₀]·M^{w₁}[x₀][x₁]⋯M^{w_k}[x_{k-1}][x_k]·o[x_k]`.
pub fn path_sum<S: Semiring>(aut: &WeightedAutomaton<S>, v: &StateVector<S>, w: &Word) -> S {
    fn go<S: Semiring>(aut: &WeightedAutomaton<S>, w: &[usize], x: usize, acc: S) -> S {
        match w.split_first() {
            None => acc.mul(&aut.output()[x]),
            Some((&a, rest)) => {
                let mut total = S::zero();
                for y in 0..aut.states() {
                    let m = aut.transition(a).get(x, y);
                    if m.is_zero() {
                        continue;
                    }
                    total = total.add(&go(aut, rest, y, acc.mul(m)));
                }
                total
            }
        }
    }
    let mut total = S::zero();
    for x in 0..aut.states() {
        if !v.entries()[x].is_zero() {
            total = total.add(&go(aut, w.letters(), x, v.entries()[x].clone()));
        }
    }
    total
}

/// [`path_sum`] over ℚ with every weight scaled to an integer over the
/// common denominator `D`, so each path contributes an integer over `D^(|w|+2)`.
/// `None` when something does not fit in `i128`.
pub fn small_path_sum(aut: &WeightedAutomaton<Rational>, v: &StateVector<Rational>, w: &Word) -> Option<Rational> {
    let n = aut.states();
    let all = aut
        .transitions()
        .iter()
        .flat_map(|m| (0..n).flat_map(move |x| (0..n).map(move |y| m.get(x, y).clone())))
        .chain(aut.output().iter().cloned())
        .chain(v.entries().iter().cloned());
    let mut d: i128 = 1;
    for q in all {
        let qd = q.denom().to_i128()?;
        d = (d / num_integer::gcd(d, qd)).checked_mul(qd)?;
    }
    let scale = |q: &Rational| -> Option<i128> { q.numer().to_i128()?.checked_mul(d / q.denom().to_i128()?) };
    let mats: Vec<Vec<Vec<i128>>> = aut
        .transitions()
        .iter()
        .map(|m| (0..n).map(|x| (0..n).map(|y| scale(m.get(x, y))).collect()).collect::<Option<_>>())
        .collect::<Option<_>>()?;
    let out: Vec<i128> = aut.output().iter().map(scale).collect::<Option<_>>()?;
    fn go(mats: &[Vec<Vec<i128>>], out: &[i128], w: &[usize], x: usize, acc: i128) -> Option<i128> {
        match w.split_first() {
            None => acc.checked_mul(out[x]),
            Some((&a, rest)) => {
                let mut total: i128 = 0;
                for (y, &m) in mats[a][x].iter().enumerate() {
                    if m != 0 {
                        total = total.checked_add(go(mats, out, rest, y, acc.checked_mul(m)?)?)?;
                    }
                }
                Some(total)
            }
        }
    }
    let mut total: i128 = 0;
    for (x, q) in v.entries().iter().enumerate() {
        if !q.is_zero() {
            total = total.checked_add(go(&mats, &out, w.letters(), x, scale(q)?)?)?;
        }
    }
    let denom = d.checked_pow(u32::try_from(w.len() + 2).ok()?)?;
    Rational::new(total, denom).ok()
}

/// Path sum over ℚ, in fixed width when it fits.
pub fn rational_path_sum(aut: &WeightedAutomaton<Rational>, v: &StateVector<Rational>, w: &Word) -> Rational {
    small_path_sum(aut, v, w).unwrap_or_else(|| path_sum(aut, v, w))
}

/// Path sum in a nondeterministic automaton, following edge lists.
pub fn nondet_path_sum<S: Semiring>(nd: &NondetAutomaton<S>, x: usize, w: &[usize]) -> S {
    match w.split_first() {
        None => nd.output()[x].clone(),
        Some((&a, rest)) => nd
            .edges(x, a)
            .iter()
            .fold(S::zero(), |acc, e| acc.add(&e.weight.mul(&nondet_path_sum(nd, e.to, rest)))),
    }
}

/// Acceptance by tracking the set of live states.
pub fn nfa_accepts(nd: &NondetAutomaton<Boolean>, start: &[bool], w: &Word) -> bool {
    let mut live = start.to_vec();
    for &a in w.letters() {
        let mut next = vec![false; nd.states()];
        for (x, &on) in live.iter().enumerate() {
            if on {
                for e in nd.edges(x, a) {
                    if e.weight.0 {
                        next[e.to] = true;
                    }
                }
            }
        }
        live = next;
    }
    live.iter().zip(nd.output()).any(|(&on, o)| on && o.0)
}

/// First word of length ≤ depth, in shortlex order, where the path sums differ.
pub fn first_difference(
    a1: &WeightedAutomaton<Rational>,
    v1: &StateVector<Rational>,
    a2: &WeightedAutomaton<Rational>,
    v2: &StateVector<Rational>,
    depth: usize,
) -> Option<Word> {
    a1.alphabet()
        .words_up_to(depth)
        .into_iter()
        .find(|w| rational_path_sum(a1, v1, w) != rational_path_sum(a2, v2, w))
}

pub fn seed_from_env(default: u64) -> u64 {
    std::env::var("SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(default)
}
