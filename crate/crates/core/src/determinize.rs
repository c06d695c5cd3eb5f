//! Generalized determinization and the explicit subset construction.

use std::collections::HashMap;

use crate::automaton::{Alphabet, StateVector, WeightedAutomaton, Word};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::semiring::Semiring;

/// One weighted successor in a [`NondetAutomaton`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge<S> {
    pub to: usize,
    pub weight: S,
}

/// A coalgebra `X → S × (T X)^Σ` on a finite state set: each state has an
/// output weight and, per letter, a finitely supported weighted combination
/// of successor states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NondetAutomaton<S> {
    alphabet: Alphabet,
    output: Vec<S>,
    /// `transitions[state][letter]`
    transitions: Vec<Vec<Vec<Edge<S>>>>,
    initial: Option<Vec<S>>,
}

impl<S: Semiring> NondetAutomaton<S> {
    pub fn new(
        alphabet: Alphabet,
        output: Vec<S>,
        transitions: Vec<Vec<Vec<Edge<S>>>>,
        initial: Option<Vec<S>>,
    ) -> Result<Self> {
        let n = output.len();
        if transitions.len() != n {
            return Err(Error::shape("transition lists", n, transitions.len()));
        }
        for (x, per_letter) in transitions.iter().enumerate() {
            if per_letter.len() != alphabet.len() {
                return Err(Error::shape(
                    format!("transitions of state {x}"),
                    alphabet.len(),
                    per_letter.len(),
                ));
            }
            for edges in per_letter {
                if let Some(e) = edges.iter().find(|e| e.to >= n) {
                    return Err(Error::invalid(
                        format!("transition of state {x}"),
                        format!("successor {} out of range 0..{n}", e.to),
                    ));
                }
            }
        }
        if let Some(i) = &initial {
            if i.len() != n {
                return Err(Error::shape("initial", n, i.len()));
            }
        }
        Ok(NondetAutomaton {
            alphabet,
            output,
            transitions,
            initial,
        })
    }

    /// A state set without transitions.
    pub fn without_transitions(alphabet: Alphabet, output: Vec<S>) -> Self {
        let transitions = vec![vec![Vec::new(); alphabet.len()]; output.len()];
        NondetAutomaton {
            alphabet,
            output,
            transitions,
            initial: None,
        }
    }

    pub fn states(&self) -> usize {
        self.output.len()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn output(&self) -> &[S] {
        &self.output
    }

    pub fn edges(&self, state: usize, letter: usize) -> &[Edge<S>] {
        &self.transitions[state][letter]
    }

    pub fn initial(&self) -> Option<StateVector<S>> {
        self.initial.clone().map(StateVector)
    }

    pub fn add_edge(&mut self, from: usize, letter: usize, to: usize, weight: S) -> Result<()> {
        let n = self.states();
        if from >= n || to >= n {
            return Err(Error::invalid("edge", format!("state out of range 0..{n}")));
        }
        if letter >= self.alphabet.len() {
            return Err(Error::UnknownSymbol {
                symbol: format!("#{letter}"),
            });
        }
        self.transitions[from][letter].push(Edge { to, weight });
        Ok(())
    }
}

/// Extends `X → S × (T X)^Σ` to the coalgebra `T X → S × (T X)^Σ` in matrix
/// form: row `x` of `Mᵃ` is the combination reached from `x` on `a`
/// (parallel edges add up), and `o[x]` is the output of `x`.
pub fn determinize<S: Semiring>(nd: &NondetAutomaton<S>) -> WeightedAutomaton<S> {
    let n = nd.states();
    let transitions = (0..nd.alphabet.len())
        .map(|a| {
            let mut m: Matrix<S> = Matrix::zeros(n, n);
            for x in 0..n {
                for e in nd.edges(x, a) {
                    let acc = m.get(x, e.to).add(&e.weight);
                    m.set(x, e.to, acc);
                }
            }
            m
        })
        .collect();
    WeightedAutomaton::new(
        nd.alphabet.clone(),
        nd.output.clone(),
        transitions,
        nd.initial.clone(),
    )
    .expect("shapes validated by NondetAutomaton::new")
}

/// An explicit deterministic automaton whose states are the reachable
/// state vectors of a weighted automaton over a finite semiring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitDfa<S: Semiring> {
    pub alphabet: Alphabet,
    /// State vectors in discovery (breadth-first, alphabet) order; state 0 is the start.
    pub states: Vec<StateVector<S>>,
    pub outputs: Vec<S>,
    /// `delta[state][letter]`
    pub delta: Vec<Vec<usize>>,
}

impl<S: Semiring> ExplicitDfa<S> {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Output after reading `word` from the start state.
    pub fn run(&self, word: &Word) -> S {
        let state = word.letters().iter().fold(0, |q, &a| self.delta[q][a]);
        self.outputs[state].clone()
    }
}

/// Enumerates the vectors reachable from `start` under `v ↦ v·Mᵃ`.
///
/// Only available over locally finite semirings, where the reachable set is
/// finite. Over the Boolean semiring this is the subset construction
/// restricted to reachable subsets.
pub fn concretize_locally_finite<S: Semiring>(
    aut: &WeightedAutomaton<S>,
    start: &StateVector<S>,
) -> Result<ExplicitDfa<S>> {
    S::SPEC.require("is_locally_finite")?;
    if start.len() != aut.states() {
        return Err(Error::shape("start vector", aut.states(), start.len()));
    }
    let k = aut.alphabet().len();
    let mut index: HashMap<StateVector<S>, usize> = HashMap::new();
    let mut states = vec![start.clone()];
    let mut outputs = vec![aut.observe(start)?];
    let mut delta: Vec<Vec<usize>> = Vec::new();
    index.insert(start.clone(), 0);
    let mut next = 0;
    while next < states.len() {
        let v = states[next].clone();
        let mut row = Vec::with_capacity(k);
        for a in 0..k {
            let u = aut.step(&v, a)?;
            let id = match index.get(&u) {
                Some(&id) => id,
                None => {
                    let id = states.len();
                    index.insert(u.clone(), id);
                    outputs.push(aut.observe(&u)?);
                    states.push(u);
                    id
                }
            };
            row.push(id);
        }
        delta.push(row);
        next += 1;
    }
    Ok(ExplicitDfa {
        alphabet: aut.alphabet().clone(),
        states,
        outputs,
        delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::{Boolean, Rational};

    fn b(x: bool) -> Boolean {
        Boolean(x)
    }

    /// 0 loops on a and b, and moves to the accepting state 1 on a.
    pub(crate) fn ends_in_a() -> NondetAutomaton<Boolean> {
        let mut nd = NondetAutomaton::without_transitions(
            Alphabet::new(["a", "b"]).unwrap(),
            vec![b(false), b(true)],
        );
        nd.add_edge(0, 0, 0, b(true)).unwrap();
        nd.add_edge(0, 0, 1, b(true)).unwrap();
        nd.add_edge(0, 1, 0, b(true)).unwrap();
        nd
    }

    /// Accepts iff some path labelled `word` ends in an accepting state.
    fn nfa_accepts(nd: &NondetAutomaton<Boolean>, start: &[bool], word: &Word) -> bool {
        let mut current: Vec<bool> = start.to_vec();
        for &a in word.letters() {
            let mut next = vec![false; nd.states()];
            for (x, &live) in current.iter().enumerate() {
                if live {
                    for e in nd.edges(x, a) {
                        if e.weight.0 {
                            next[e.to] = true;
                        }
                    }
                }
            }
            current = next;
        }
        current.iter().zip(nd.output()).any(|(&live, o)| live && o.0)
    }

    #[test]
    fn ends_in_a_matches_nfa_acceptance() {
        let nd = ends_in_a();
        let aut = determinize(&nd);
        let start = StateVector(vec![b(true), b(false)]);
        for w in nd.alphabet().words_up_to(6) {
            let expected = nfa_accepts(&nd, &[true, false], &w);
            assert_eq!(aut.behavior(&start, &w).unwrap(), b(expected));
        }
    }

    #[test]
    fn ends_in_a_concretizes_to_two_states() {
        let aut = determinize(&ends_in_a());
        let dfa = concretize_locally_finite(&aut, &StateVector(vec![b(true), b(false)])).unwrap();
        assert_eq!(dfa.len(), 2);
        assert_eq!(dfa.states[1], StateVector(vec![b(true), b(true)]));
        assert_eq!(dfa.outputs, vec![b(false), b(true)]);
        assert_eq!(dfa.delta, vec![vec![1, 0], vec![1, 0]]);
        for w in aut.alphabet().words_up_to(8) {
            assert_eq!(
                dfa.run(&w),
                aut.behavior(&StateVector(vec![b(true), b(false)]), &w).unwrap()
            );
        }
    }

    #[test]
    fn deterministic_input_gives_permutation_matrices() {
        let sigma = Alphabet::new(["a"]).unwrap();
        let mut nd = NondetAutomaton::without_transitions(sigma, vec![Rational::one(); 3]);
        for (x, y) in [(0, 1), (1, 2), (2, 0)] {
            nd.add_edge(x, 0, y, Rational::one()).unwrap();
        }
        let m = determinize(&nd).transition(0).clone();
        for r in 0..3 {
            let ones = (0..3).filter(|&c| *m.get(r, c) == Rational::one()).count();
            let zeros = (0..3).filter(|&c| m.get(r, c).is_zero()).count();
            assert_eq!((ones, zeros), (1, 2));
        }
        assert_eq!(m.transpose().mul(&m).unwrap(), Matrix::identity(3));
    }

    #[test]
    fn empty_transition_map_gives_zero_matrices() {
        let nd = NondetAutomaton::without_transitions(
            Alphabet::new(["a", "b"]).unwrap(),
            vec![Rational::one(), Rational::zero()],
        );
        let aut = determinize(&nd);
        assert!(aut.transitions().iter().all(|m| *m == Matrix::zeros(2, 2)));
    }

    #[test]
    fn zero_start_is_a_sink() {
        let aut = determinize(&ends_in_a());
        let dfa = concretize_locally_finite(&aut, &StateVector::zero(2)).unwrap();
        assert_eq!(dfa.len(), 1);
        assert_eq!(dfa.outputs, vec![b(false)]);
        assert_eq!(dfa.delta, vec![vec![0, 0]]);
    }

    #[test]
    fn concretize_rejects_infinite_semirings() {
        let nd = NondetAutomaton::without_transitions(
            Alphabet::new(["a"]).unwrap(),
            vec![Rational::one()],
        );
        let aut = determinize(&nd);
        assert!(matches!(
            concretize_locally_finite(&aut, &StateVector(vec![Rational::one()])),
            Err(Error::Unsupported {
                capability: "is_locally_finite",
                ..
            })
        ));
    }

    #[test]
    fn parallel_edges_accumulate() {
        let mut nd = NondetAutomaton::without_transitions(
            Alphabet::new(["a"]).unwrap(),
            vec![Rational::one()],
        );
        nd.add_edge(0, 0, 0, Rational::from_integer(2)).unwrap();
        nd.add_edge(0, 0, 0, Rational::from_integer(3)).unwrap();
        assert_eq!(*determinize(&nd).transition(0).get(0, 0), Rational::from_integer(5));
        assert!(nd.add_edge(0, 0, 4, Rational::one()).is_err());
    }
}
