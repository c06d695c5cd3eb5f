//! Explicit zig-zags of simulations relating behaviorally equivalent vectors.
//!
//! Given equivalent `(A₁, v₁)` and `(A₂, v₂)` over ℚ, the construction is:
//!
//! 1. `E = A₁ + A₂`, the coproduct on `Z = X + Y` states;
//! 2. the observability quotient `q: ℚ^Z ↠ A` of `E` (the image of the
//!    behavior map), which is itself a simulation onto a quotient automaton;
//! 3. the kernel pair `K = {(z, z') : q(z) = q(z')}`, a subspace of ℚ^{2Z};
//! 4. a basis of `K` indexed by a set `R`, on which a coalgebra `ℚ^R → F ℚ^R`
//!    is defined generator by generator, so that both projections
//!    `f·p, g·p: ℚ^R → ℚ^Z` are simulations into `E`;
//! 5. the zig-zag `A₁ → E ← ℚ^R → E ← A₂` with the coordinates of
//!    `(inl v₁, inr v₂) ∈ K` as the middle element.
//!
//! Over a field `K` is free on its basis, so the projection `p: ℚ^R → K` is
//! an isomorphism and no set-theoretic section has to be chosen.

use std::fmt;

use crate::automaton::{coproduct, StateVector, WeightedAutomaton};
use crate::equivalence::decide_equivalence;
use crate::error::{Error, Result};
use crate::linalg::{null_space, EchelonBasis, Insertion, Matrix};
use crate::semiring::{embed_to_rationals, Rational, Semiring};
use crate::simulation::{apply_simulation, check_simulation, SimulationViolation};

/// The quotient of an automaton by behavioral equivalence of its vectors.
#[derive(Debug, Clone)]
pub struct ObservabilityQuotient {
    /// `n × r` matrix; column `j` is `M^{wⱼ}·o` for the j-th basis word.
    pub q: Matrix<Rational>,
    /// The automaton on the `r`-dimensional quotient.
    pub automaton: WeightedAutomaton<Rational>,
}

/// Computes `O = span{Mʷ·o}` by a column worklist and the induced quotient.
///
/// `z ↦ z·q` lists the behavior of `z` on the words that generated the basis
/// of `O`; two vectors are identified iff they have the same behavior.
pub fn observability_quotient<S: Semiring>(aut: &WeightedAutomaton<S>) -> Result<ObservabilityQuotient> {
    let aut = aut.to_rational()?;
    let n = aut.states();
    let k = aut.alphabet().len();
    let mut basis = EchelonBasis::new(n);
    let mut columns: Vec<Vec<Rational>> = Vec::new();
    // closure[j][a] = coordinates of Mᵃ·bⱼ
    let mut closure: Vec<Vec<Vec<Rational>>> = Vec::new();
    if let Insertion::Added(_) = basis.insert(aut.output().to_vec())? {
        columns.push(aut.output().to_vec());
    }
    let mut j = 0;
    while j < columns.len() {
        let mut row = Vec::with_capacity(k);
        for a in 0..k {
            let u = aut.transition(a).right_mul(&columns[j])?;
            match basis.insert(u.clone())? {
                Insertion::Added(idx) => {
                    let mut c = vec![Rational::zero(); idx + 1];
                    c[idx] = Rational::one();
                    row.push(c);
                    columns.push(u);
                }
                Insertion::InSpan(c) => row.push(c),
            }
        }
        closure.push(row);
        j += 1;
    }
    let r = columns.len();
    let q = Matrix::from_fn(n, r, |row, col| columns[col][row].clone());
    // Mᵃ·q = q·Nᵃ: column j of Nᵃ holds the coordinates of Mᵃ·bⱼ
    let transitions = (0..k)
        .map(|a| {
            Matrix::from_fn(r, r, |row, col| {
                closure[col][a].get(row).cloned().unwrap_or_else(Rational::zero)
            })
        })
        .collect();
    // o = q·p with o the first basis column
    let output = (0..r)
        .map(|i| if i == 0 { Rational::one() } else { Rational::zero() })
        .collect();
    let automaton = WeightedAutomaton::new(aut.alphabet().clone(), output, transitions, None)?;
    Ok(ObservabilityQuotient { q, automaton })
}

/// A basis of the kernel pair of `q`, as vectors `(z, z')` of length `2n`.
#[derive(Debug, Clone)]
pub struct KernelPairBasis {
    /// The quotient map, `n × r`, acting as `z ↦ z·q`.
    pub q: Matrix<Rational>,
    /// `d × 2n`; row `i` is the i-th basis vector `(zᵢ, z'ᵢ)`.
    pub basis: Matrix<Rational>,
}

impl KernelPairBasis {
    pub fn dimension(&self) -> usize {
        self.basis.rows()
    }

    /// Width `n` of each half.
    pub fn half(&self) -> usize {
        self.q.rows()
    }

    /// `f ∘ p`: coordinates ↦ first component, a `d × n` matrix.
    pub fn first_projection(&self) -> Matrix<Rational> {
        self.basis.column_slice(0, self.half())
    }

    /// `g ∘ p`: coordinates ↦ second component, a `d × n` matrix.
    pub fn second_projection(&self) -> Matrix<Rational> {
        self.basis.column_slice(self.half(), 2 * self.half())
    }

    /// Coordinates of `(z, z')` in the basis, if it lies in the kernel pair.
    pub fn coordinates(&self, z: &[Rational], z2: &[Rational]) -> Result<Option<Vec<Rational>>> {
        let mut eb = EchelonBasis::new(2 * self.half());
        for row in self.basis.row_vecs() {
            eb.insert(row)?;
        }
        let mut v = z.to_vec();
        v.extend(z2.iter().cloned());
        eb.coordinates(&v)
    }
}

/// Null space of `(z, z') ↦ z·q − z'·q`, basis from the reduced row-echelon
/// form of `[qᵀ | −qᵀ]`. Its dimension is `2n − rank(q)`.
pub fn kernel_pair(q: &Matrix<Rational>) -> KernelPairBasis {
    let qt = q.transpose();
    let neg = qt.map(|x| x.neg());
    let stacked = Matrix::hcat(&qt, &neg).expect("same row count");
    let vectors = null_space(&stacked);
    let width = 2 * q.rows();
    let basis = Matrix::from_rows(vectors, width).expect("null space vectors have full width");
    KernelPairBasis {
        q: q.clone(),
        basis,
    }
}

/// The coalgebra on `ℚ^R` lifted from the kernel pair, with its two projections.
#[derive(Debug, Clone)]
pub struct LiftedCoalgebra {
    pub automaton: WeightedAutomaton<Rational>,
    /// `p`, the `d × 2n` matrix sending coordinates to kernel-pair vectors.
    pub p: Matrix<Rational>,
    pub fp: Matrix<Rational>,
    pub gp: Matrix<Rational>,
}

/// Defines the coalgebra on the generators of `K`: generator `(z, z')` has
/// output `z·o` and `a`-successor the coordinates of `(z·Mᵃ, z'·Mᵃ)` in `K`.
pub fn lift_coalgebra(kp: &KernelPairBasis, e: &WeightedAutomaton<Rational>) -> Result<LiftedCoalgebra> {
    let n = e.states();
    if kp.half() != n {
        return Err(Error::shape("kernel pair half-width", n, kp.half()));
    }
    let d = kp.dimension();
    let mut eb = EchelonBasis::new(2 * n);
    for row in kp.basis.row_vecs() {
        if let Insertion::InSpan(_) = eb.insert(row)? {
            return Err(Error::Internal("kernel pair basis is not independent".into()));
        }
    }
    let fp = kp.first_projection();
    let gp = kp.second_projection();
    let mut output = Vec::with_capacity(d);
    for i in 0..d {
        let z = StateVector(fp.row(i).to_vec());
        let z2 = StateVector(gp.row(i).to_vec());
        let out = e.observe(&z)?;
        if out != e.observe(&z2)? {
            return Err(Error::Internal(format!(
                "kernel pair generator {i} has different outputs on its components"
            )));
        }
        output.push(out);
    }
    let mut transitions = Vec::with_capacity(e.alphabet().len());
    for a in 0..e.alphabet().len() {
        let mut rows = Vec::with_capacity(d);
        for i in 0..d {
            let mut succ = e.step(&StateVector(fp.row(i).to_vec()), a)?.0;
            succ.extend(e.step(&StateVector(gp.row(i).to_vec()), a)?.0);
            let coords = eb.coordinates(&succ)?.ok_or_else(|| {
                Error::Internal(format!(
                    "kernel pair not closed under transitions: generator {i}, letter {}",
                    e.alphabet().symbols()[a]
                ))
            })?;
            rows.push(coords);
        }
        transitions.push(Matrix::from_rows(rows, d)?);
    }
    let automaton = WeightedAutomaton::new(e.alphabet().clone(), output, transitions, None)?;
    Ok(LiftedCoalgebra {
        automaton,
        p: kp.basis.clone(),
        fp,
        gp,
    })
}

/// One arrow of a zig-zag: a simulation from `automata[from]` to `automata[to]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow<S: Semiring> {
    pub from: usize,
    pub to: usize,
    pub matrix: Matrix<S>,
}

/// `A₀ → A₁ ← A₂ → ⋯ A_k` with one related vector per automaton.
///
/// Arrow `j` joins automata `j` and `j+1` and always leaves the even-indexed one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZigZagWitness<S: Semiring> {
    pub automata: Vec<WeightedAutomaton<S>>,
    pub arrows: Vec<Arrow<S>>,
    pub elements: Vec<StateVector<S>>,
}

/// First condition that a [`ZigZagWitness`] violates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZigZagViolation {
    Structure(String),
    Shape { arrow: usize, reason: String },
    Simulation { arrow: usize, violation: SimulationViolation },
    Transport { arrow: usize },
    Endpoint { which: &'static str },
}

impl fmt::Display for ZigZagViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZigZagViolation::Structure(s) => write!(f, "malformed zig-zag: {s}"),
            ZigZagViolation::Shape { arrow, reason } => write!(f, "arrow {arrow}: {reason}"),
            ZigZagViolation::Simulation { arrow, violation } => {
                write!(f, "arrow {arrow} is not a simulation: {violation}")
            }
            ZigZagViolation::Transport { arrow } => {
                write!(f, "arrow {arrow} does not map its source element to its target element")
            }
            ZigZagViolation::Endpoint { which } => {
                write!(f, "{which} endpoint differs from the query vector")
            }
        }
    }
}

/// Re-checks a witness from scratch: alternating structure, every arrow a
/// simulation, and every arrow carrying its source element to its target
/// element.
pub fn verify_zigzag<S: Semiring>(w: &ZigZagWitness<S>) -> Result<(), ZigZagViolation> {
    let k = w.arrows.len();
    if w.automata.len() != k + 1 {
        return Err(ZigZagViolation::Structure(format!(
            "{} arrows need {} automata, found {}",
            k,
            k + 1,
            w.automata.len()
        )));
    }
    if w.elements.len() != w.automata.len() {
        return Err(ZigZagViolation::Structure(format!(
            "{} automata need as many elements, found {}",
            w.automata.len(),
            w.elements.len()
        )));
    }
    for (i, (aut, z)) in w.automata.iter().zip(&w.elements).enumerate() {
        if aut.states() != z.len() {
            return Err(ZigZagViolation::Structure(format!(
                "element {i} has length {} but automaton {i} has {} states",
                z.len(),
                aut.states()
            )));
        }
    }
    for (j, arrow) in w.arrows.iter().enumerate() {
        let expected = if j % 2 == 0 { (j, j + 1) } else { (j + 1, j) };
        if (arrow.from, arrow.to) != expected {
            return Err(ZigZagViolation::Structure(format!(
                "arrow {j} must go from {} to {}, found {} to {}",
                expected.0, expected.1, arrow.from, arrow.to
            )));
        }
        let (src, tgt) = (&w.automata[arrow.from], &w.automata[arrow.to]);
        let report = check_simulation(src, tgt, &arrow.matrix).map_err(|e| ZigZagViolation::Shape {
            arrow: j,
            reason: e.to_string(),
        })?;
        if let Some(v) = report.violations.into_iter().next() {
            return Err(ZigZagViolation::Simulation {
                arrow: j,
                violation: v,
            });
        }
        let moved = apply_simulation(&arrow.matrix, &w.elements[arrow.from]).map_err(|e| {
            ZigZagViolation::Shape {
                arrow: j,
                reason: e.to_string(),
            }
        })?;
        if moved != w.elements[arrow.to] {
            return Err(ZigZagViolation::Transport { arrow: j });
        }
    }
    Ok(())
}

/// [`verify_zigzag`] plus equality of the endpoints with the query vectors.
pub fn verify_zigzag_relates<S: Semiring>(
    w: &ZigZagWitness<S>,
    v1: &StateVector<S>,
    v2: &StateVector<S>,
) -> Result<(), ZigZagViolation> {
    verify_zigzag(w)?;
    if w.elements.first() != Some(v1) {
        return Err(ZigZagViolation::Endpoint { which: "first" });
    }
    if w.elements.last() != Some(v2) {
        return Err(ZigZagViolation::Endpoint { which: "last" });
    }
    Ok(())
}

fn embed_vector<S: Semiring>(v: &StateVector<S>) -> Result<StateVector<Rational>> {
    v.entries()
        .iter()
        .map(embed_to_rationals)
        .collect::<Result<Vec<_>>>()
        .map(StateVector)
}

/// Builds the four-arrow witness `A₁ → E ← ℚ^R → E ← A₂` over ℚ.
///
/// Fails with [`Error::NotEquivalent`] (carrying the separating word) when
/// the inputs are not equivalent.
pub fn construct_zigzag<S: Semiring>(
    a1: &WeightedAutomaton<S>,
    v1: &StateVector<S>,
    a2: &WeightedAutomaton<S>,
    v2: &StateVector<S>,
) -> Result<ZigZagWitness<Rational>> {
    S::SPEC.require("supports_witness_construction")?;
    let verdict = decide_equivalence(a1, v1, a2, v2)?;
    if let Some(cx) = verdict.counterexample {
        return Err(Error::NotEquivalent {
            word: a1.alphabet().format_word(&cx.word),
            lhs: cx.lhs.to_string(),
            rhs: cx.rhs.to_string(),
        });
    }
    let q1 = a1.to_rational()?;
    let q2 = a2.to_rational()?;
    let (x1, x2) = (embed_vector(v1)?, embed_vector(v2)?);
    let sum = coproduct(&q1, &q2)?;
    let e = sum.automaton;
    let quotient = observability_quotient(&e)?;
    let kp = kernel_pair(&quotient.q);
    let lifted = lift_coalgebra(&kp, &e)?;

    let left = apply_simulation(&sum.left, &x1)?;
    let right = apply_simulation(&sum.right, &x2)?;
    let middle = kp
        .coordinates(left.entries(), right.entries())?
        .ok_or_else(|| Error::Internal("equivalent vectors are not merged by the quotient".into()))?;

    Ok(ZigZagWitness {
        automata: vec![q1, e.clone(), lifted.automaton, e, q2],
        arrows: vec![
            Arrow {
                from: 0,
                to: 1,
                matrix: sum.left,
            },
            Arrow {
                from: 2,
                to: 1,
                matrix: lifted.fp,
            },
            Arrow {
                from: 2,
                to: 3,
                matrix: lifted.gp,
            },
            Arrow {
                from: 4,
                to: 3,
                matrix: sum.right,
            },
        ],
        elements: vec![x1, left, StateVector(middle), right, x2],
    })
}
