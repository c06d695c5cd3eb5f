//! Random automata, equivalent pairs and simulations for property tests.

use rand::Rng;

use crate::automaton::{coproduct, Alphabet, StateVector, WeightedAutomaton};
use crate::determinize::NondetAutomaton;
use crate::linalg::{inverse, Matrix};
use crate::semiring::{Boolean, Rational, Semiring};
use crate::zigzag::observability_quotient;

/// `{a, b, …}` with `k` letters.
pub fn letters(k: usize) -> Alphabet {
    Alphabet::new((0..k).map(|i| ((b'a' + i as u8) as char).to_string())).expect("distinct letters")
}

/// A small rational, nonzero when `dense`.
pub fn small_rational<R: Rng + ?Sized>(rng: &mut R, dense: bool) -> Rational {
    loop {
        let n: i64 = rng.gen_range(-3..=3);
        let d: i64 = rng.gen_range(1..=2);
        if dense && n == 0 {
            continue;
        }
        return Rational::new(n, d).expect("nonzero denominator");
    }
}

pub fn rational_vector<R: Rng + ?Sized>(rng: &mut R, n: usize, dense: bool) -> StateVector<Rational> {
    StateVector((0..n).map(|_| small_rational(rng, dense)).collect())
}

pub fn rational_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, dense: bool) -> Matrix<Rational> {
    Matrix::from_fn(rows, cols, |_, _| small_rational(rng, dense))
}

/// A random ℚ-automaton. Sparse automata have roughly half their entries zero.
pub fn rational_automaton<R: Rng + ?Sized>(
    rng: &mut R,
    states: usize,
    alphabet: &Alphabet,
    dense: bool,
) -> WeightedAutomaton<Rational> {
    let output = rational_vector(rng, states, dense).0;
    let transitions = (0..alphabet.len())
        .map(|_| {
            if dense {
                rational_matrix(rng, states, states, true)
            } else {
                Matrix::from_fn(states, states, |_, _| {
                    if rng.gen_bool(0.5) {
                        Rational::zero()
                    } else {
                        small_rational(rng, true)
                    }
                })
            }
        })
        .collect();
    WeightedAutomaton::new(alphabet.clone(), output, transitions, None).expect("consistent shapes")
}

/// An automaton over any semiring, entries drawn by [`Semiring::sample`].
pub fn sampled_automaton<S: Semiring, R: Rng + ?Sized>(
    rng: &mut R,
    states: usize,
    alphabet: &Alphabet,
) -> WeightedAutomaton<S> {
    let output = (0..states).map(|_| S::sample(rng)).collect();
    let transitions = (0..alphabet.len())
        .map(|_| Matrix::from_fn(states, states, |_, _| S::sample(rng)))
        .collect();
    WeightedAutomaton::new(alphabet.clone(), output, transitions, None).expect("consistent shapes")
}

/// An invertible `n × n` rational matrix with its inverse.
pub fn invertible<R: Rng + ?Sized>(rng: &mut R, n: usize) -> (Matrix<Rational>, Matrix<Rational>) {
    loop {
        let p = rational_matrix(rng, n, n, true);
        if let Some(inv) = inverse(&p) {
            return (p, inv);
        }
    }
}

/// The automaton `(P⁻¹MᵃP, P⁻¹o)`, for which `P` is a simulation from the
/// original: `Mᵃ·P = P·(P⁻¹MᵃP)` and `o = P·(P⁻¹o)`.
pub fn conjugate(
    aut: &WeightedAutomaton<Rational>,
    p: &Matrix<Rational>,
    p_inv: &Matrix<Rational>,
) -> WeightedAutomaton<Rational> {
    let transitions = aut
        .transitions()
        .iter()
        .map(|m| p_inv.mul(m).and_then(|x| x.mul(p)).expect("square"))
        .collect();
    let output = p_inv.right_mul(aut.output()).expect("square");
    WeightedAutomaton::new(aut.alphabet().clone(), output, transitions, None).expect("consistent shapes")
}

/// A pair of ℚ-automata with start vectors.
#[derive(Debug, Clone)]
pub struct Pair {
    pub left: WeightedAutomaton<Rational>,
    pub v1: StateVector<Rational>,
    pub right: WeightedAutomaton<Rational>,
    pub v2: StateVector<Rational>,
}

/// `(A, v)` and `(P⁻¹AP, v·P)`.
pub fn conjugate_pair<R: Rng + ?Sized>(rng: &mut R, states: usize, alphabet: &Alphabet, dense: bool) -> Pair {
    let left = rational_automaton(rng, states, alphabet, dense);
    let (p, p_inv) = invertible(rng, states);
    let right = conjugate(&left, &p, &p_inv);
    let v1 = rational_vector(rng, states, dense);
    let v2 = StateVector(p.left_mul(v1.entries()).expect("square"));
    Pair { left, v1, right, v2 }
}

/// `(A, v)` and `(A + J, inl v)` for an unrelated automaton `J`.
pub fn padded_pair<R: Rng + ?Sized>(rng: &mut R, states: usize, junk: usize, alphabet: &Alphabet, dense: bool) -> Pair {
    let left = rational_automaton(rng, states, alphabet, dense);
    let j = rational_automaton(rng, junk, alphabet, dense);
    let sum = coproduct(&left, &j).expect("same alphabet");
    let v1 = rational_vector(rng, states, dense);
    let v2 = StateVector(sum.left.left_mul(v1.entries()).expect("shape"));
    Pair {
        left,
        v1,
        right: sum.automaton,
        v2,
    }
}

/// `(A, v)` and its image in the observability quotient of `A`.
pub fn quotient_pair<R: Rng + ?Sized>(rng: &mut R, states: usize, alphabet: &Alphabet, dense: bool) -> Pair {
    let left = rational_automaton(rng, states, alphabet, dense);
    let q = observability_quotient(&left).expect("rational input");
    let v1 = rational_vector(rng, states, dense);
    let v2 = StateVector(q.q.left_mul(v1.entries()).expect("shape"));
    Pair {
        left,
        v1,
        right: q.automaton,
        v2,
    }
}

/// One of the three equivalent-pair constructions, chosen at random.
pub fn equivalent_pair<R: Rng + ?Sized>(rng: &mut R, max_states: usize, alphabet: &Alphabet, dense: bool) -> Pair {
    let n = rng.gen_range(1..=max_states);
    match rng.gen_range(0..3) {
        0 => conjugate_pair(rng, n, alphabet, dense),
        1 => {
            let junk = rng.gen_range(1..=2);
            padded_pair(rng, n, junk, alphabet, dense)
        }
        _ => quotient_pair(rng, n, alphabet, dense),
    }
}

/// Two independently drawn automata and vectors.
pub fn independent_pair<R: Rng + ?Sized>(rng: &mut R, max_states: usize, alphabet: &Alphabet, dense: bool) -> Pair {
    let (n1, n2) = (rng.gen_range(1..=max_states), rng.gen_range(1..=max_states));
    Pair {
        left: rational_automaton(rng, n1, alphabet, dense),
        v1: rational_vector(rng, n1, dense),
        right: rational_automaton(rng, n2, alphabet, dense),
        v2: rational_vector(rng, n2, dense),
    }
}

/// A verified simulation `H` from `source` to `target`.
#[derive(Debug, Clone)]
pub struct Sim {
    pub kind: &'static str,
    pub source: WeightedAutomaton<Rational>,
    pub target: WeightedAutomaton<Rational>,
    pub matrix: Matrix<Rational>,
}

/// Identity, coproduct injections, an observability quotient and a
/// change of basis, all starting at `aut`.
pub fn simulations_from<R: Rng + ?Sized>(rng: &mut R, aut: &WeightedAutomaton<Rational>) -> Vec<Sim> {
    let n = aut.states();
    let mut out = vec![Sim {
        kind: "identity",
        source: aut.clone(),
        target: aut.clone(),
        matrix: Matrix::identity(n),
    }];
    let m = rng.gen_range(1..=3);
    let other = rational_automaton(rng, m, aut.alphabet(), false);
    let sum = coproduct(aut, &other).expect("same alphabet");
    out.push(Sim {
        kind: "coproduct-left",
        source: aut.clone(),
        target: sum.automaton.clone(),
        matrix: sum.left,
    });
    out.push(Sim {
        kind: "coproduct-right",
        source: other,
        target: sum.automaton,
        matrix: sum.right,
    });
    let q = observability_quotient(aut).expect("rational input");
    out.push(Sim {
        kind: "quotient",
        source: aut.clone(),
        target: q.automaton,
        matrix: q.q,
    });
    let (p, p_inv) = invertible(rng, n);
    out.push(Sim {
        kind: "conjugation",
        source: aut.clone(),
        target: conjugate(aut, &p, &p_inv),
        matrix: p,
    });
    out
}

/// A random Boolean NFA as a state set with edge lists.
pub fn boolean_nfa<R: Rng + ?Sized>(rng: &mut R, states: usize, alphabet: &Alphabet, density: f64) -> NondetAutomaton<Boolean> {
    let output = (0..states).map(|_| Boolean(rng.gen_bool(0.4))).collect();
    let mut nd = NondetAutomaton::without_transitions(alphabet.clone(), output);
    for x in 0..states {
        for a in 0..alphabet.len() {
            for y in 0..states {
                if rng.gen_bool(density) {
                    nd.add_edge(x, a, y, Boolean(true)).expect("in range");
                }
            }
        }
    }
    nd
}
