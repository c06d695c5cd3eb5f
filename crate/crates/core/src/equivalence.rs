//! Deciding whether two state vectors denote the same weighted language.
//!
//! Over ℚ (and ℕ, ℤ through their embedding into ℚ) the decision saturates
//! the forward space of the difference vector in the coproduct automaton:
//! the two languages agree iff every vector reachable from
//! `[v₁, −v₂]` has output zero, and it suffices to check a basis.
//! Over finite semirings the reachable vectors are enumerated explicitly
//! and the two deterministic automata are compared in product.

use std::collections::{HashMap, VecDeque};

use crate::automaton::{coproduct, StateVector, WeightedAutomaton, Word};
use crate::determinize::concretize_locally_finite;
use crate::error::{Error, Result};
use crate::linalg::{dot, EchelonBasis, Insertion};
use crate::semiring::{Rational, Semiring};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Equivalent,
    Inequivalent,
    Unsupported,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Equivalent => "equivalent",
            Verdict::Inequivalent => "inequivalent",
            Verdict::Unsupported => "unsupported",
        }
    }
}

/// A word separating two languages, with both values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample<S> {
    pub word: Word,
    pub lhs: S,
    pub rhs: S,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceVerdict<S> {
    pub verdict: Verdict,
    pub counterexample: Option<Counterexample<S>>,
    /// Dimension of the saturated forward space, or the number of explored
    /// product states for finite semirings.
    pub basis_size: usize,
}

impl<S> EquivalenceVerdict<S> {
    pub fn is_equivalent(&self) -> bool {
        self.verdict == Verdict::Equivalent
    }
}

/// A basis of `span{ v·Mʷ : w ∈ Σ* }` with the word that generated each vector.
#[derive(Debug, Clone)]
pub struct ForwardSpaceBasis {
    pub vectors: Vec<StateVector<Rational>>,
    pub words: Vec<Word>,
    /// `closure[i][a]` expresses `vectors[i]·Mᵃ` in the basis.
    pub closure: Vec<Vec<Vec<Rational>>>,
}

impl ForwardSpaceBasis {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

fn saturate(aut: &WeightedAutomaton<Rational>, start: &StateVector<Rational>) -> Result<ForwardSpaceBasis> {
    let n = aut.states();
    if start.len() != n {
        return Err(Error::shape("start vector", n, start.len()));
    }
    let k = aut.alphabet().len();
    let mut basis = EchelonBasis::new(n);
    let mut vectors: Vec<StateVector<Rational>> = Vec::new();
    let mut words: Vec<Word> = Vec::new();
    let mut closure: Vec<Vec<Vec<Rational>>> = Vec::new();

    if let Insertion::Added(_) = basis.insert(start.entries().to_vec())? {
        vectors.push(start.clone());
        words.push(Word::empty());
    }
    let mut i = 0;
    while i < vectors.len() {
        let mut row = Vec::with_capacity(k);
        for a in 0..k {
            let u = aut.step(&vectors[i], a)?;
            match basis.insert(u.entries().to_vec())? {
                Insertion::Added(j) => {
                    let mut coords = vec![Rational::zero(); j + 1];
                    coords[j] = Rational::one();
                    row.push(coords);
                    vectors.push(u);
                    words.push(words[i].then(a));
                }
                Insertion::InSpan(coords) => row.push(coords),
            }
        }
        closure.push(row);
        i += 1;
    }
    let dim = vectors.len();
    for row in &mut closure {
        for coords in row.iter_mut() {
            coords.resize(dim, Rational::zero());
        }
    }
    Ok(ForwardSpaceBasis {
        vectors,
        words,
        closure,
    })
}

/// Basis of the smallest `Mᵃ`-invariant subspace containing `start`,
/// explored breadth-first in length-lexicographic word order.
pub fn forward_space<S: Semiring>(
    aut: &WeightedAutomaton<S>,
    start: &StateVector<S>,
) -> Result<ForwardSpaceBasis> {
    let aut = aut.to_rational()?;
    let start = StateVector(
        start
            .entries()
            .iter()
            .map(crate::semiring::embed_to_rationals)
            .collect::<Result<Vec<_>>>()?,
    );
    saturate(&aut, &start)
}

/// Word length up to which agreement implies equivalence over a field.
pub fn equivalence_depth_bound<S: Semiring>(a1: &WeightedAutomaton<S>, a2: &WeightedAutomaton<S>) -> usize {
    a1.states() + a2.states()
}

fn check_inputs<S: Semiring>(
    a1: &WeightedAutomaton<S>,
    v1: &StateVector<S>,
    a2: &WeightedAutomaton<S>,
    v2: &StateVector<S>,
) -> Result<()> {
    if a1.alphabet() != a2.alphabet() {
        return Err(Error::AlphabetMismatch {
            left: a1.alphabet().symbols().to_vec(),
            right: a2.alphabet().symbols().to_vec(),
        });
    }
    if v1.len() != a1.states() {
        return Err(Error::shape("first start vector", a1.states(), v1.len()));
    }
    if v2.len() != a2.states() {
        return Err(Error::shape("second start vector", a2.states(), v2.len()));
    }
    Ok(())
}

/// Decides `behavior(a1, v1, ·) = behavior(a2, v2, ·)`.
///
/// Semirings without `supports_equivalence_decision` are rejected with
/// [`Error::Unsupported`]; no bounded guess is ever returned.
pub fn decide_equivalence<S: Semiring>(
    a1: &WeightedAutomaton<S>,
    v1: &StateVector<S>,
    a2: &WeightedAutomaton<S>,
    v2: &StateVector<S>,
) -> Result<EquivalenceVerdict<S>> {
    S::SPEC.require("supports_equivalence_decision")?;
    check_inputs(a1, v1, a2, v2)?;
    if S::SPEC.is_locally_finite {
        decide_by_product(a1, v1, a2, v2)
    } else {
        decide_by_forward_space(a1, v1, a2, v2)
    }
}

fn decide_by_forward_space<S: Semiring>(
    a1: &WeightedAutomaton<S>,
    v1: &StateVector<S>,
    a2: &WeightedAutomaton<S>,
    v2: &StateVector<S>,
) -> Result<EquivalenceVerdict<S>> {
    let q1 = a1.to_rational()?;
    let q2 = a2.to_rational()?;
    let sum = coproduct(&q1, &q2)?;
    let mut diff = Vec::with_capacity(sum.automaton.states());
    for x in v1.entries() {
        diff.push(crate::semiring::embed_to_rationals(x)?);
    }
    for x in v2.entries() {
        diff.push(crate::semiring::embed_to_rationals(x)?.neg());
    }
    let space = saturate(&sum.automaton, &StateVector(diff))?;
    let violating = space
        .vectors
        .iter()
        .position(|b| !dot(b.entries(), sum.automaton.output()).is_zero());
    let counterexample = match violating {
        None => None,
        Some(i) => {
            let word = space.words[i].clone();
            let lhs = a1.behavior(v1, &word)?;
            let rhs = a2.behavior(v2, &word)?;
            if lhs == rhs {
                return Err(Error::Internal(format!(
                    "counterexample {word:?} does not separate the inputs"
                )));
            }
            Some(Counterexample { word, lhs, rhs })
        }
    };
    Ok(EquivalenceVerdict {
        verdict: if counterexample.is_some() {
            Verdict::Inequivalent
        } else {
            Verdict::Equivalent
        },
        counterexample,
        basis_size: space.len(),
    })
}

fn decide_by_product<S: Semiring>(
    a1: &WeightedAutomaton<S>,
    v1: &StateVector<S>,
    a2: &WeightedAutomaton<S>,
    v2: &StateVector<S>,
) -> Result<EquivalenceVerdict<S>> {
    let d1 = concretize_locally_finite(a1, v1)?;
    let d2 = concretize_locally_finite(a2, v2)?;
    let k = a1.alphabet().len();
    let mut seen: HashMap<(usize, usize), ()> = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert((0, 0), ());
    queue.push_back((0usize, 0usize, Word::empty()));
    while let Some((p, q, word)) = queue.pop_front() {
        if d1.outputs[p] != d2.outputs[q] {
            return Ok(EquivalenceVerdict {
                verdict: Verdict::Inequivalent,
                counterexample: Some(Counterexample {
                    word,
                    lhs: d1.outputs[p].clone(),
                    rhs: d2.outputs[q].clone(),
                }),
                basis_size: seen.len(),
            });
        }
        for a in 0..k {
            let pair = (d1.delta[p][a], d2.delta[q][a]);
            if seen.insert(pair, ()).is_none() {
                queue.push_back((pair.0, pair.1, word.then(a)));
            }
        }
    }
    Ok(EquivalenceVerdict {
        verdict: Verdict::Equivalent,
        counterexample: None,
        basis_size: seen.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::Alphabet;
    use crate::linalg::{inverse, Matrix};
    use crate::semiring::{Boolean, Integer, Natural, Tropical};

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn qm(rows: &[&[i64]]) -> Matrix<Rational> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect(),
            cols,
        )
        .unwrap()
    }

    fn counting() -> WeightedAutomaton<Rational> {
        WeightedAutomaton::new(
            Alphabet::new(["a", "b"]).unwrap(),
            vec![q(0), q(1)],
            vec![qm(&[&[1, 1], &[0, 1]]), qm(&[&[1, 0], &[0, 1]])],
            None,
        )
        .unwrap()
    }

    fn one_state(out: i64) -> WeightedAutomaton<Rational> {
        WeightedAutomaton::new(
            Alphabet::new(["a", "b"]).unwrap(),
            vec![q(out)],
            vec![qm(&[&[1]]), qm(&[&[1]])],
            None,
        )
        .unwrap()
    }

    #[test]
    fn reflexive() {
        let a = counting();
        let v = StateVector(vec![q(1), q(0)]);
        let verdict = decide_equivalence(&a, &v, &a, &v).unwrap();
        assert!(verdict.is_equivalent());
        assert_eq!(verdict.counterexample, None);
        // d = (1, 0, -1, 0) and d·Mᵃ = (1, 1, -1, -1)
        assert_eq!(verdict.basis_size, 2);
    }

    #[test]
    fn empty_word_separates() {
        let one = StateVector(vec![q(1)]);
        let verdict = decide_equivalence(&one_state(1), &one, &one_state(0), &one).unwrap();
        assert_eq!(verdict.verdict, Verdict::Inequivalent);
        let cx = verdict.counterexample.unwrap();
        assert_eq!(cx.word, Word::empty());
        assert_eq!((cx.lhs, cx.rhs), (q(1), q(0)));
    }

    #[test]
    fn conjugate_is_equivalent() {
        // M' = P⁻¹MP, o' = P⁻¹o, v' = vP preserve v·Mʷ·o
        let a = counting();
        let p = qm(&[&[2, 1], &[3, 2]]);
        let pinv = inverse(&p).unwrap();
        let conj = WeightedAutomaton::new(
            a.alphabet().clone(),
            pinv.right_mul(a.output()).unwrap(),
            a.transitions()
                .iter()
                .map(|m| pinv.mul(m).unwrap().mul(&p).unwrap())
                .collect(),
            None,
        )
        .unwrap();
        let v = StateVector(vec![q(1), q(0)]);
        let v2 = StateVector(p.left_mul(v.entries()).unwrap());
        let verdict = decide_equivalence(&a, &v, &conj, &v2).unwrap();
        assert!(verdict.is_equivalent());
        let bound = equivalence_depth_bound(&a, &conj);
        assert_eq!(
            a.truncated_behavior(&v, bound).unwrap(),
            conj.truncated_behavior(&v2, bound).unwrap()
        );
    }

    #[test]
    fn counterexample_is_shortest() {
        // counting vs. the constant-zero series: first difference at "a"
        let a = counting();
        let zero = one_state(0);
        let verdict = decide_equivalence(
            &a,
            &StateVector(vec![q(1), q(0)]),
            &zero,
            &StateVector(vec![q(1)]),
        )
        .unwrap();
        let cx = verdict.counterexample.unwrap();
        assert_eq!(a.alphabet().format_word(&cx.word), "a");
        assert_eq!((cx.lhs, cx.rhs), (q(1), q(0)));
    }

    #[test]
    fn forward_space_examples() {
        let a = counting();
        assert!(forward_space(&a, &StateVector::zero(2)).unwrap().is_empty());
        let basis = forward_space(&a, &StateVector(vec![q(1), q(0)])).unwrap();
        assert_eq!(basis.len(), 2);
        assert_eq!(basis.vectors[1], StateVector(vec![q(1), q(1)]));
        // every vᵢ·Mᵃ is reproduced by its closure coordinates
        for (i, row) in basis.closure.iter().enumerate() {
            for (letter, coords) in row.iter().enumerate() {
                let image = a.step(&basis.vectors[i], letter).unwrap();
                let mut recombined = vec![q(0); 2];
                for (c, b) in coords.iter().zip(&basis.vectors) {
                    for (slot, x) in recombined.iter_mut().zip(b.entries()) {
                        *slot = slot.add(&c.mul(x));
                    }
                }
                assert_eq!(recombined, image.entries());
            }
        }
        let single = one_state(3);
        let b1 = forward_space(&single, &StateVector(vec![q(1)])).unwrap();
        assert_eq!(b1.vectors, vec![StateVector(vec![q(1)])]);
    }

    #[test]
    fn depth_bound_is_state_sum() {
        assert_eq!(equivalence_depth_bound(&one_state(1), &one_state(2)), 2);
        assert_eq!(equivalence_depth_bound(&counting(), &counting()), 4);
    }

    #[test]
    fn naturals_and_integers_are_embedded() {
        let a = counting().map(|x| Natural::from_u64(x.numer().try_into().unwrap()));
        let v = StateVector(vec![Natural::from_u64(2), Natural::from_u64(0)]);
        let w = StateVector(vec![Natural::from_u64(1), Natural::from_u64(1)]);
        let verdict = decide_equivalence(&a, &v, &a, &w).unwrap();
        assert_eq!(verdict.verdict, Verdict::Inequivalent);
        let cx = verdict.counterexample.unwrap();
        assert_ne!(cx.lhs, cx.rhs);
        assert_eq!(cx.lhs, a.behavior(&v, &cx.word).unwrap());

        let z = counting().map(|x| Integer(x.numer().clone()));
        let u = StateVector(vec![Integer::from_u64(1), Integer::from_u64(0)]);
        assert!(decide_equivalence(&z, &u, &z, &u).unwrap().is_equivalent());
    }

    #[test]
    fn tropical_is_rejected() {
        let a = WeightedAutomaton::new(
            Alphabet::new(["a"]).unwrap(),
            vec![Tropical::one()],
            vec![Matrix::identity(1)],
            None,
        )
        .unwrap();
        let v = StateVector(vec![Tropical::one()]);
        assert!(matches!(
            decide_equivalence(&a, &v, &a, &v),
            Err(Error::Unsupported {
                capability: "supports_equivalence_decision",
                ..
            })
        ));
    }

    #[test]
    fn boolean_product_route() {
        // two DFAs for "even number of a's", one with a redundant copy
        let sigma = Alphabet::new(["a"]).unwrap();
        let bm = |rows: &[&[bool]]| {
            Matrix::from_rows(
                rows.iter().map(|r| r.iter().map(|&x| Boolean(x)).collect()).collect(),
                rows[0].len(),
            )
            .unwrap()
        };
        let small = WeightedAutomaton::new(
            sigma.clone(),
            vec![Boolean(true), Boolean(false)],
            vec![bm(&[&[false, true], &[true, false]])],
            None,
        )
        .unwrap();
        let big = WeightedAutomaton::new(
            sigma.clone(),
            vec![Boolean(true), Boolean(false), Boolean(true), Boolean(false)],
            vec![bm(&[
                &[false, true, false, false],
                &[false, false, true, false],
                &[false, false, false, true],
                &[true, false, false, false],
            ])],
            None,
        )
        .unwrap();
        let s = StateVector::unit(2, 0);
        let verdict = decide_equivalence(&small, &s, &big, &StateVector::unit(4, 0)).unwrap();
        assert!(verdict.is_equivalent());
        let verdict = decide_equivalence(&small, &s, &big, &StateVector::unit(4, 1)).unwrap();
        let cx = verdict.counterexample.unwrap();
        assert_eq!(cx.word, Word::empty());
    }

    #[test]
    fn alphabet_mismatch() {
        let a = counting();
        let b = WeightedAutomaton::<Rational>::empty(Alphabet::new(["x"]).unwrap());
        assert!(matches!(
            decide_equivalence(&a, &StateVector::zero(2), &b, &StateVector::zero(0)),
            Err(Error::AlphabetMismatch { .. })
        ));
    }
}
