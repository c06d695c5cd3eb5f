//! Weighted automata in matrix form: a coalgebra `Sⁿ → S × (Sⁿ)^Σ` given by an
//! output column `o` and one transition matrix `Mᵃ` per letter.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{dot, is_zero_vec, Matrix};
use crate::semiring::{Rational, Semiring};

/// An ordered alphabet of distinct symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<I, T>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::invalid("alphabet", "empty symbol"));
            }
            if symbols[..i].contains(s) {
                return Err(Error::invalid("alphabet", format!("duplicate symbol {s:?}")));
            }
        }
        Ok(Alphabet { symbols })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn index_of(&self, symbol: &str) -> Result<usize> {
        self.symbols
            .iter()
            .position(|s| s == symbol)
            .ok_or_else(|| Error::UnknownSymbol {
                symbol: symbol.to_string(),
            })
    }

    fn single_char(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Parses a word. Single-character alphabets read one symbol per
    /// character; otherwise symbols are separated by `.`, `,` or whitespace.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(Word::empty());
        }
        let letters = if self.single_char() && !text.contains(['.', ',', ' ']) {
            text.chars()
                .map(|c| self.index_of(&c.to_string()))
                .collect::<Result<Vec<_>>>()?
        } else {
            text.split(['.', ',', ' '])
                .filter(|s| !s.is_empty())
                .map(|s| self.index_of(s))
                .collect::<Result<Vec<_>>>()?
        };
        Ok(Word(letters))
    }

    /// Renders a word; the empty word renders as the empty string.
    pub fn format_word(&self, word: &Word) -> String {
        let parts = word.0.iter().map(|&i| self.symbols[i].as_str());
        if self.single_char() {
            parts.collect()
        } else {
            parts.collect::<Vec<_>>().join(".")
        }
    }

    /// All words of length ≤ `depth` in length-lexicographic order.
    pub fn words_up_to(&self, depth: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..depth {
            let mut next = Vec::with_capacity(layer.len() * self.len());
            for w in &layer {
                for a in 0..self.len() {
                    next.push(w.then(a));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

/// A word over an [`Alphabet`], stored as letter indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    /// The word extended by one letter on the right.
    pub fn then(&self, letter: usize) -> Word {
        let mut v = self.0.clone();
        v.push(letter);
        Word(v)
    }
}

/// A row vector in Sⁿ, i.e. an element of the free semimodule on the states.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StateVector<S>(pub Vec<S>);

impl<S: fmt::Display> fmt::Debug for StateVector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

impl<S: Semiring> StateVector<S> {
    pub fn new(entries: Vec<S>) -> Self {
        StateVector(entries)
    }

    pub fn zero(n: usize) -> Self {
        StateVector(vec![S::zero(); n])
    }

    /// The unit vector for state `i` (the generator η(i)).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![S::zero(); n];
        v[i] = S::one();
        StateVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[S] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.0)
    }

    pub fn add(&self, other: &Self) -> Self {
        StateVector(crate::linalg::vec_add(&self.0, &other.0))
    }

    pub fn scale(&self, s: &S) -> Self {
        StateVector(crate::linalg::vec_scale(s, &self.0))
    }

    pub fn map<T: Semiring>(&self, f: impl Fn(&S) -> T) -> StateVector<T> {
        StateVector(self.0.iter().map(f).collect())
    }

    /// Parses a comma-separated list of elements, e.g. `"1/1,0/1"`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(StateVector(Vec::new()));
        }
        text.split(',')
            .map(|s| S::parse(s))
            .collect::<Result<Vec<_>>>()
            .map(StateVector)
    }
}

/// A weighted automaton `(i, (Mᵃ)_{a∈Σ}, o)` over the semiring `S`.
#[derive(Clone, PartialEq, Eq)]
pub struct WeightedAutomaton<S> {
    alphabet: Alphabet,
    output: Vec<S>,
    transitions: Vec<Matrix<S>>,
    initial: Option<Vec<S>>,
}

impl<S: Semiring> fmt::Debug for WeightedAutomaton<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightedAutomaton")
            .field("semiring", &S::SPEC.name)
            .field("alphabet", &self.alphabet.symbols)
            .field("output", &StateVector(self.output.clone()))
            .field("transitions", &self.transitions)
            .field("initial", &self.initial.clone().map(StateVector))
            .finish()
    }
}

impl<S: Semiring> WeightedAutomaton<S> {
    /// Validates shapes: every transition matrix is n×n where n = |output|,
    /// one matrix per letter, and the initial vector (if any) has length n.
    pub fn new(
        alphabet: Alphabet,
        output: Vec<S>,
        transitions: Vec<Matrix<S>>,
        initial: Option<Vec<S>>,
    ) -> Result<Self> {
        let n = output.len();
        if transitions.len() != alphabet.len() {
            return Err(Error::shape(
                "transition matrices",
                alphabet.len(),
                transitions.len(),
            ));
        }
        for (a, m) in alphabet.symbols.iter().zip(&transitions) {
            if m.rows() != n {
                return Err(Error::shape(format!("transitions.{a} rows"), n, m.rows()));
            }
            if m.cols() != n {
                return Err(Error::shape(format!("transitions.{a} columns"), n, m.cols()));
            }
        }
        if let Some(i) = &initial {
            if i.len() != n {
                return Err(Error::shape("initial", n, i.len()));
            }
        }
        Ok(WeightedAutomaton {
            alphabet,
            output,
            transitions,
            initial,
        })
    }

    /// The automaton with no states.
    pub fn empty(alphabet: Alphabet) -> Self {
        let transitions = vec![Matrix::zeros(0, 0); alphabet.len()];
        WeightedAutomaton {
            alphabet,
            output: Vec::new(),
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

    pub fn transitions(&self) -> &[Matrix<S>] {
        &self.transitions
    }

    pub fn transition(&self, letter: usize) -> &Matrix<S> {
        &self.transitions[letter]
    }

    pub fn initial(&self) -> Option<StateVector<S>> {
        self.initial.clone().map(StateVector)
    }

    pub fn with_initial(mut self, initial: Option<StateVector<S>>) -> Result<Self> {
        if let Some(i) = &initial {
            if i.len() != self.states() {
                return Err(Error::shape("initial", self.states(), i.len()));
            }
        }
        self.initial = initial.map(|v| v.0);
        Ok(self)
    }

    /// Mutable access for tests that need to perturb entries.
    pub fn transitions_mut(&mut self) -> &mut [Matrix<S>] {
        &mut self.transitions
    }

    pub fn output_mut(&mut self) -> &mut [S] {
        &mut self.output
    }

    pub fn map<T: Semiring>(&self, f: impl Fn(&S) -> T) -> WeightedAutomaton<T> {
        WeightedAutomaton {
            alphabet: self.alphabet.clone(),
            output: self.output.iter().map(&f).collect(),
            transitions: self.transitions.iter().map(|m| m.map(&f)).collect(),
            initial: self.initial.as_ref().map(|i| i.iter().map(&f).collect()),
        }
    }

    /// The same automaton over ℚ, via the canonical embedding.
    pub fn to_rational(&self) -> Result<WeightedAutomaton<Rational>> {
        let embed = |x: &S| crate::semiring::embed_to_rationals(x);
        Ok(WeightedAutomaton {
            alphabet: self.alphabet.clone(),
            output: self.output.iter().map(embed).collect::<Result<_>>()?,
            transitions: self
                .transitions
                .iter()
                .map(|m| m.try_map(embed))
                .collect::<Result<_>>()?,
            initial: self
                .initial
                .as_ref()
                .map(|i| i.iter().map(embed).collect::<Result<_>>())
                .transpose()?,
        })
    }

    fn check_start(&self, start: &StateVector<S>) -> Result<()> {
        if start.len() != self.states() {
            return Err(Error::shape("start vector", self.states(), start.len()));
        }
        Ok(())
    }

    /// `v · Mᵃ`.
    pub fn step(&self, v: &StateVector<S>, letter: usize) -> Result<StateVector<S>> {
        self.check_start(v)?;
        Ok(StateVector(self.transitions[letter].left_mul(&v.0)?))
    }

    /// `v · o`.
    pub fn observe(&self, v: &StateVector<S>) -> Result<S> {
        self.check_start(v)?;
        Ok(dot(&v.0, &self.output))
    }

    /// `start · M^{w₁} ⋯ M^{w_k} · o`.
    pub fn behavior(&self, start: &StateVector<S>, word: &Word) -> Result<S> {
        self.check_start(start)?;
        let mut v = start.clone();
        for &a in word.letters() {
            if a >= self.alphabet.len() {
                return Err(Error::UnknownSymbol {
                    symbol: format!("#{a}"),
                });
            }
            v = self.step(&v, a)?;
        }
        self.observe(&v)
    }

    /// Behavior on a word given by symbol names.
    pub fn behavior_of<T: AsRef<str>>(&self, start: &StateVector<S>, word: &[T]) -> Result<S> {
        let letters = word
            .iter()
            .map(|s| self.alphabet.index_of(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        self.behavior(start, &Word(letters))
    }

    /// Behavior on every word of length ≤ `depth`, by breadth-first
    /// propagation of `start · Mʷ` along prefixes.
    pub fn truncated_behavior(
        &self,
        start: &StateVector<S>,
        depth: usize,
    ) -> Result<TruncatedSeries<S>> {
        self.check_start(start)?;
        let k = self.alphabet.len();
        let mut values = vec![self.observe(start)?];
        let mut layer = vec![start.clone()];
        for _ in 0..depth {
            let mut next = Vec::with_capacity(layer.len() * k);
            for v in &layer {
                for a in 0..k {
                    let u = self.step(v, a)?;
                    values.push(self.observe(&u)?);
                    next.push(u);
                }
            }
            layer = next;
        }
        Ok(TruncatedSeries {
            alphabet_size: k,
            depth,
            values,
        })
    }
}

/// The restriction of a formal power series to all words of length ≤ `depth`.
///
/// Values are stored in length-lexicographic word order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries<S> {
    alphabet_size: usize,
    depth: usize,
    values: Vec<S>,
}

impl<S: Semiring> TruncatedSeries<S> {
    /// Builds a series from values in length-lexicographic order.
    pub fn from_values(alphabet_size: usize, depth: usize, values: Vec<S>) -> Result<Self> {
        let expected = Self::count(alphabet_size, depth);
        if values.len() != expected {
            return Err(Error::shape("series values", expected, values.len()));
        }
        Ok(TruncatedSeries {
            alphabet_size,
            depth,
            values,
        })
    }

    fn count(k: usize, depth: usize) -> usize {
        let mut total = 0;
        let mut layer = 1;
        for _ in 0..=depth {
            total += layer;
            layer *= k;
        }
        total
    }

    /// Position of `word` in length-lexicographic order.
    fn index(&self, word: &Word) -> Option<usize> {
        if word.len() > self.depth || word.letters().iter().any(|&a| a >= self.alphabet_size) {
            return None;
        }
        let offset = Self::count(self.alphabet_size, word.len()) - self.alphabet_size.pow(word.len() as u32);
        let rank = word
            .letters()
            .iter()
            .fold(0usize, |acc, &a| acc * self.alphabet_size + a);
        Some(offset + rank)
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn get(&self, word: &Word) -> Option<&S> {
        self.index(word).map(|i| &self.values[i])
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    /// `(word, value)` pairs in length-lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (Word, &S)> + '_ {
        let k = self.alphabet_size;
        let mut words = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..self.depth {
            let next: Vec<Word> = layer
                .iter()
                .flat_map(|w| (0..k).map(move |a| w.then(a)))
                .collect();
            words.extend(next.iter().cloned());
            layer = next;
        }
        words.into_iter().zip(self.values.iter())
    }

    /// The series `λw. L(a·w)` truncated one level shallower.
    pub fn derivative(&self, letter: usize) -> Option<TruncatedSeries<S>> {
        if self.depth == 0 || letter >= self.alphabet_size {
            return None;
        }
        let values = self
            .iter()
            .filter(|(w, _)| w.len() < self.depth)
            .map(|(w, _)| {
                let mut aw = vec![letter];
                aw.extend(w.letters());
                self.get(&Word(aw)).expect("within depth").clone()
            })
            .collect();
        Some(TruncatedSeries {
            alphabet_size: self.alphabet_size,
            depth: self.depth - 1,
            values,
        })
    }

    /// First word (length-lexicographically) on which two series differ.
    pub fn first_difference(&self, other: &Self) -> Option<Word> {
        self.iter()
            .zip(other.iter())
            .find(|((_, x), (_, y))| x != y)
            .map(|((w, _), _)| w)
    }
}

/// Coproduct of two automata with its injections.
#[derive(Debug, Clone)]
pub struct Coproduct<S: Semiring> {
    pub automaton: WeightedAutomaton<S>,
    /// `[I 0]`, an n₁ × (n₁+n₂) matrix.
    pub left: Matrix<S>,
    /// `[0 I]`, an n₂ × (n₁+n₂) matrix.
    pub right: Matrix<S>,
}

/// Block-diagonal coproduct. The result carries no initial vector.
pub fn coproduct<S: Semiring>(
    a1: &WeightedAutomaton<S>,
    a2: &WeightedAutomaton<S>,
) -> Result<Coproduct<S>> {
    if a1.alphabet != a2.alphabet {
        return Err(Error::AlphabetMismatch {
            left: a1.alphabet.symbols.clone(),
            right: a2.alphabet.symbols.clone(),
        });
    }
    let (n1, n2) = (a1.states(), a2.states());
    let transitions = a1
        .transitions
        .iter()
        .zip(&a2.transitions)
        .map(|(m1, m2)| Matrix::block_diag(m1, m2))
        .collect();
    let mut output = a1.output.clone();
    output.extend(a2.output.iter().cloned());
    let automaton = WeightedAutomaton::new(a1.alphabet.clone(), output, transitions, None)?;
    let left = Matrix::from_fn(n1, n1 + n2, |r, c| if r == c { S::one() } else { S::zero() });
    let right = Matrix::from_fn(n2, n1 + n2, |r, c| {
        if c == n1 + r {
            S::one()
        } else {
            S::zero()
        }
    });
    Ok(Coproduct {
        automaton,
        left,
        right,
    })
}
