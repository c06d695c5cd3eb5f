//! Simulations: matrices that are coalgebra morphisms between automata.
//!
//! With states as row vectors, a simulation from an n-state automaton
//! `(i, Mᵃ, o)` to an m-state automaton `(j, Nᵃ, p)` is an n×m matrix `H`
//! with `o = H·p` and `Mᵃ·H = H·Nᵃ` for every letter, plus `i·H = j` when
//! both automata carry an initial vector.

use std::fmt;

use crate::automaton::{StateVector, WeightedAutomaton};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::semiring::Semiring;

/// One violated simulation equation, with a witnessing coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimulationViolation {
    /// `o_src[row] ≠ (H·p)[row]`.
    Output { row: usize },
    /// `(Mᵃ·H)[row][col] ≠ (H·Nᵃ)[row][col]`.
    Transition {
        letter: String,
        row: usize,
        col: usize,
    },
    /// `(i·H)[col] ≠ j[col]`.
    Initial { col: usize },
}

impl fmt::Display for SimulationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimulationViolation::Output { row } => write!(f, "output equation o = H·p fails at row {row}"),
            SimulationViolation::Transition { letter, row, col } => write!(
                f,
                "transition equation M^{letter}·H = H·N^{letter} fails at ({row}, {col})"
            ),
            SimulationViolation::Initial { col } => {
                write!(f, "initial equation i·H = j fails at column {col}")
            }
        }
    }
}

/// Result of [`check_simulation`]: empty means the matrix is a simulation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimulationReport {
    pub violations: Vec<SimulationViolation>,
}

impl SimulationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_shapes<S: Semiring>(
    source: &WeightedAutomaton<S>,
    target: &WeightedAutomaton<S>,
    h: &Matrix<S>,
) -> Result<()> {
    if source.alphabet() != target.alphabet() {
        return Err(Error::AlphabetMismatch {
            left: source.alphabet().symbols().to_vec(),
            right: target.alphabet().symbols().to_vec(),
        });
    }
    if h.rows() != source.states() {
        return Err(Error::shape("simulation rows", source.states(), h.rows()));
    }
    if h.cols() != target.states() {
        return Err(Error::shape("simulation columns", target.states(), h.cols()));
    }
    Ok(())
}

/// Verifies every simulation equation exactly.
pub fn check_simulation<S: Semiring>(
    source: &WeightedAutomaton<S>,
    target: &WeightedAutomaton<S>,
    h: &Matrix<S>,
) -> Result<SimulationReport> {
    check_shapes(source, target, h)?;
    let mut violations = Vec::new();

    let hp = h.right_mul(target.output())?;
    if let Some(row) = (0..hp.len()).find(|&r| hp[r] != source.output()[r]) {
        violations.push(SimulationViolation::Output { row });
    }

    for (a, symbol) in source.alphabet().symbols().iter().enumerate() {
        let lhs = source.transition(a).mul(h)?;
        let rhs = h.mul(target.transition(a))?;
        let mismatch = (0..lhs.rows())
            .flat_map(|r| (0..lhs.cols()).map(move |c| (r, c)))
            .find(|&(r, c)| lhs.get(r, c) != rhs.get(r, c));
        if let Some((row, col)) = mismatch {
            violations.push(SimulationViolation::Transition {
                letter: symbol.clone(),
                row,
                col,
            });
        }
    }

    if let (Some(i), Some(j)) = (source.initial(), target.initial()) {
        let ih = h.left_mul(i.entries())?;
        if let Some(col) = (0..ih.len()).find(|&c| ih[c] != j.entries()[c]) {
            violations.push(SimulationViolation::Initial { col });
        }
    }
    Ok(SimulationReport { violations })
}

/// `v · H`: transports a state vector along a simulation.
pub fn apply_simulation<S: Semiring>(h: &Matrix<S>, v: &StateVector<S>) -> Result<StateVector<S>> {
    Ok(StateVector(h.left_mul(v.entries())?))
}

/// A matrix together with the automata it is meant to relate.
#[derive(Debug, Clone)]
pub struct SimulationMatrix<'a, S: Semiring> {
    source: &'a WeightedAutomaton<S>,
    target: &'a WeightedAutomaton<S>,
    matrix: Matrix<S>,
}

impl<'a, S: Semiring> SimulationMatrix<'a, S> {
    /// Checks shapes only; use [`SimulationMatrix::check`] for the equations.
    pub fn new(
        source: &'a WeightedAutomaton<S>,
        target: &'a WeightedAutomaton<S>,
        matrix: Matrix<S>,
    ) -> Result<Self> {
        check_shapes(source, target, &matrix)?;
        Ok(SimulationMatrix {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(aut: &'a WeightedAutomaton<S>) -> Self {
        SimulationMatrix {
            source: aut,
            target: aut,
            matrix: Matrix::identity(aut.states()),
        }
    }

    pub fn source(&self) -> &'a WeightedAutomaton<S> {
        self.source
    }

    pub fn target(&self) -> &'a WeightedAutomaton<S> {
        self.target
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn check(&self) -> SimulationReport {
        check_simulation(self.source, self.target, &self.matrix).expect("shapes checked on construction")
    }

    pub fn apply(&self, v: &StateVector<S>) -> Result<StateVector<S>> {
        if v.len() != self.source.states() {
            return Err(Error::shape("state vector", self.source.states(), v.len()));
        }
        apply_simulation(&self.matrix, v)
    }
}
