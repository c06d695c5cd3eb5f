//! Property checks for Bloom-style algebras `(A, a, †)` of the functor
//! `F X = S × X^Σ`: an algebra `a: F A → A` together with a solution
//! operator `†` sending each finitely generated coalgebra to a map into `A`.
//!
//! The shipped instance is the final coalgebra of power series, truncated to
//! a depth, with `†` the behavior map.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::automaton::{StateVector, TruncatedSeries, WeightedAutomaton, Word};
use crate::error::{Error, Result};
use crate::semiring::{Rational, Semiring};
use crate::simulation::SimulationMatrix;
use crate::zigzag::{construct_zigzag, verify_zigzag, ZigZagWitness};

/// An algebra with a solution operator, checked at a finite depth.
pub trait BloomInstance<S: Semiring> {
    type Carrier: Clone + PartialEq + fmt::Debug;

    fn name(&self) -> &str;

    fn carrier(&self) -> String;

    /// `a: F A → A`, combining an output value with one carrier element per
    /// letter. The successors are elements at depth `depth - 1`.
    fn algebra(&self, output: S, successors: Vec<Self::Carrier>, depth: usize) -> Result<Self::Carrier>;

    /// `c†(v)` at the given depth.
    fn dagger(&self, aut: &WeightedAutomaton<S>, v: &StateVector<S>, depth: usize) -> Result<Self::Carrier>;

    fn add(&self, x: &Self::Carrier, y: &Self::Carrier) -> Self::Carrier;

    fn scale(&self, s: &S, x: &Self::Carrier) -> Self::Carrier;

    /// Short description of where two carrier elements differ.
    fn describe_difference(&self, x: &Self::Carrier, y: &Self::Carrier) -> String {
        format!("{x:?} vs {y:?}")
    }
}

/// Power series truncated at the depth of the check; `†` is the behavior.
#[derive(Debug, Clone, Copy, Default)]
pub struct SeriesInstance {
    pub alphabet_size: usize,
}

impl SeriesInstance {
    pub fn new(alphabet_size: usize) -> Self {
        SeriesInstance { alphabet_size }
    }
}

fn series_difference<S: Semiring>(x: &TruncatedSeries<S>, y: &TruncatedSeries<S>) -> String {
    match x.first_difference(y) {
        Some(w) => format!(
            "series differ at word {:?}: {} vs {}",
            word_label(&w),
            x.get(&w).expect("in range"),
            y.get(&w).expect("in range")
        ),
        None => "series have different shapes".into(),
    }
}

/// Words rendered with letter indices, since the instance is alphabet-agnostic.
fn word_label(w: &Word) -> String {
    w.letters().iter().map(|a| a.to_string()).collect::<Vec<_>>().join(".")
}

/// Prepends one level: value `output` at ε and `successors[a](w)` at `a·w`.
fn series_algebra<S: Semiring>(
    k: usize,
    output: S,
    successors: &[TruncatedSeries<S>],
    depth: usize,
) -> Result<TruncatedSeries<S>> {
    if successors.len() != k {
        return Err(Error::shape("algebra successors", k, successors.len()));
    }
    if depth == 0 {
        return TruncatedSeries::from_values(k, 0, vec![output]);
    }
    if let Some(bad) = successors.iter().find(|s| s.depth() + 1 != depth) {
        return Err(Error::shape("successor depth", depth - 1, bad.depth()));
    }
    let skeleton = TruncatedSeries::from_values(k, depth, vec![S::zero(); count_words(k, depth)])?;
    let values = skeleton
        .iter()
        .map(|(w, _)| match w.letters().split_first() {
            None => output.clone(),
            Some((&a, rest)) => successors[a].get(&Word(rest.to_vec())).expect("within depth").clone(),
        })
        .collect();
    TruncatedSeries::from_values(k, depth, values)
}

fn count_words(k: usize, depth: usize) -> usize {
    (0..=depth).map(|l| k.pow(l as u32)).sum()
}

impl<S: Semiring> BloomInstance<S> for SeriesInstance {
    type Carrier = TruncatedSeries<S>;

    fn name(&self) -> &str {
        "series"
    }

    fn carrier(&self) -> String {
        format!("power series over {} in {} letters, truncated", S::SPEC.name, self.alphabet_size)
    }

    fn algebra(&self, output: S, successors: Vec<Self::Carrier>, depth: usize) -> Result<Self::Carrier> {
        series_algebra(self.alphabet_size, output, &successors, depth)
    }

    fn dagger(&self, aut: &WeightedAutomaton<S>, v: &StateVector<S>, depth: usize) -> Result<Self::Carrier> {
        if aut.alphabet().len() != self.alphabet_size {
            return Err(Error::shape("alphabet size", self.alphabet_size, aut.alphabet().len()));
        }
        aut.truncated_behavior(v, depth)
    }

    fn add(&self, x: &Self::Carrier, y: &Self::Carrier) -> Self::Carrier {
        let values = x.values().iter().zip(y.values()).map(|(a, b)| a.add(b)).collect();
        TruncatedSeries::from_values(x.alphabet_size(), x.depth(), values).expect("same shape")
    }

    fn scale(&self, s: &S, x: &Self::Carrier) -> Self::Carrier {
        let values = x.values().iter().map(|a| s.mul(a)).collect();
        TruncatedSeries::from_values(x.alphabet_size(), x.depth(), values).expect("same shape")
    }

    fn describe_difference(&self, x: &Self::Carrier, y: &Self::Carrier) -> String {
        series_difference(x, y)
    }
}

/// One failing sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BloomViolation {
    pub sample: usize,
    pub detail: String,
}

/// Outcome of one axiom check; empty `violations` means the axiom held.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BloomReport {
    pub instance: String,
    pub axiom: &'static str,
    pub depth: usize,
    pub seed: u64,
    pub samples: usize,
    pub violations: Vec<BloomViolation>,
}

impl BloomReport {
    fn new(instance: &str, axiom: &'static str, depth: usize, seed: u64) -> Self {
        BloomReport {
            instance: instance.to_string(),
            axiom,
            depth,
            seed,
            samples: 0,
            violations: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn summary(&self) -> String {
        format!(
            "{} {}: {} ({} samples, depth {}, seed {})",
            self.instance,
            self.axiom,
            if self.passed() { "ok" } else { "FAILED" },
            self.samples,
            self.depth,
            self.seed
        )
    }
}

/// One line per violation.
impl fmt::Display for BloomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(
                f,
                "instance={} axiom={} sample={} seed={}: {}",
                self.instance, self.axiom, v.sample, self.seed, v.detail
            )?;
        }
        Ok(())
    }
}

/// Unit vectors first, then `samples` random vectors from `seed`.
pub fn sample_vectors<S: Semiring>(n: usize, samples: usize, seed: u64) -> Vec<StateVector<S>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<StateVector<S>> = (0..n).map(|i| StateVector::unit(n, i)).collect();
    for _ in 0..samples {
        out.push(StateVector((0..n).map(|_| S::sample(&mut rng)).collect()));
    }
    out
}

/// `c†(v) = a(F c†(c(v)))`: the value of `v` is assembled from its output
/// and the values of its successors one level down.
pub fn check_solution_axiom<S: Semiring, I: BloomInstance<S>>(
    inst: &I,
    aut: &WeightedAutomaton<S>,
    depth: usize,
    samples: usize,
    seed: u64,
) -> Result<BloomReport> {
    if depth == 0 {
        return Err(Error::Precondition("solution axiom needs depth at least 1".into()));
    }
    let mut report = BloomReport::new(inst.name(), "solution", depth, seed);
    let vectors = sample_vectors(aut.states(), samples, seed);
    report.samples = vectors.len();
    for (i, v) in vectors.iter().enumerate() {
        let lhs = inst.dagger(aut, v, depth)?;
        let successors = (0..aut.alphabet().len())
            .map(|a| inst.dagger(aut, &aut.step(v, a)?, depth - 1))
            .collect::<Result<Vec<_>>>()?;
        let rhs = inst.algebra(aut.observe(v)?, successors, depth)?;
        if lhs != rhs {
            report.violations.push(BloomViolation {
                sample: i,
                detail: inst.describe_difference(&lhs, &rhs),
            });
        }
    }
    Ok(report)
}

/// `c† = d† · H` for a simulation `H` from `c` to `d`.
///
/// Refuses matrices that are not simulations instead of reporting them.
pub fn check_functoriality_axiom<S: Semiring, I: BloomInstance<S>>(
    inst: &I,
    sim: &SimulationMatrix<'_, S>,
    depth: usize,
    samples: usize,
    seed: u64,
) -> Result<BloomReport> {
    let sim_report = sim.check();
    if let Some(v) = sim_report.violations.first() {
        return Err(Error::Precondition(format!("matrix is not a simulation: {v}")));
    }
    let mut report = BloomReport::new(inst.name(), "functoriality", depth, seed);
    let vectors = sample_vectors(sim.source().states(), samples, seed);
    report.samples = vectors.len();
    for (i, v) in vectors.iter().enumerate() {
        let lhs = inst.dagger(sim.source(), v, depth)?;
        let rhs = inst.dagger(sim.target(), &sim.apply(v)?, depth)?;
        if lhs != rhs {
            report.violations.push(BloomViolation {
                sample: i,
                detail: inst.describe_difference(&lhs, &rhs),
            });
        }
    }
    Ok(report)
}

/// `† (x + s·y) = † x + s·† y` on sampled pairs.
pub fn check_dagger_linearity<S: Semiring, I: BloomInstance<S>>(
    inst: &I,
    aut: &WeightedAutomaton<S>,
    depth: usize,
    samples: usize,
    seed: u64,
) -> Result<BloomReport> {
    let mut report = BloomReport::new(inst.name(), "linearity", depth, seed);
    let xs = sample_vectors::<S>(aut.states(), samples, seed);
    let ys = sample_vectors::<S>(aut.states(), samples, seed.wrapping_add(1));
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));
    report.samples = xs.len();
    for (i, (x, y)) in xs.iter().zip(ys.iter().rev()).enumerate() {
        let s = S::sample(&mut rng);
        let lhs = inst.dagger(aut, &x.add(&y.scale(&s)), depth)?;
        let dx = inst.dagger(aut, x, depth)?;
        let dy = inst.dagger(aut, y, depth)?;
        let rhs = inst.add(&dx, &inst.scale(&s, &dy));
        if lhs != rhs {
            report.violations.push(BloomViolation {
                sample: i,
                detail: inst.describe_difference(&lhs, &rhs),
            });
        }
    }
    Ok(report)
}

/// Result of [`check_initial_factorization`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factorization {
    Checked(BloomReport),
    Skipped(String),
}

/// All elements along a verified zig-zag receive the same value.
pub fn check_factorization_along<I: BloomInstance<Rational>>(
    inst: &I,
    witness: &ZigZagWitness<Rational>,
    depth: usize,
) -> Result<BloomReport> {
    verify_zigzag(witness).map_err(|v| Error::Precondition(format!("witness does not verify: {v}")))?;
    let mut report = BloomReport::new(inst.name(), "initial-factorization", depth, 0);
    let values = witness
        .automata
        .iter()
        .zip(&witness.elements)
        .map(|(aut, z)| inst.dagger(aut, z, depth))
        .collect::<Result<Vec<_>>>()?;
    report.samples = values.len();
    for (i, value) in values.iter().enumerate().skip(1) {
        if *value != values[0] {
            report.violations.push(BloomViolation {
                sample: i,
                detail: format!("element {i}: {}", inst.describe_difference(&values[0], value)),
            });
        }
    }
    Ok(report)
}

/// Builds a zig-zag relating `(a1, v1)` and `(a2, v2)` and checks that the
/// instance cannot tell its elements apart. Skipped when no witness exists.
pub fn check_initial_factorization<S: Semiring, I: BloomInstance<Rational>>(
    inst: &I,
    a1: &WeightedAutomaton<S>,
    v1: &StateVector<S>,
    a2: &WeightedAutomaton<S>,
    v2: &StateVector<S>,
    depth: usize,
) -> Result<Factorization> {
    match construct_zigzag(a1, v1, a2, v2) {
        Ok(w) => Ok(Factorization::Checked(check_factorization_along(inst, &w, depth)?)),
        Err(Error::NotEquivalent { word, .. }) => Ok(Factorization::Skipped(format!(
            "no witness: the inputs differ on {word:?}"
        ))),
        Err(e @ Error::Unsupported { .. }) => Ok(Factorization::Skipped(format!("no witness: {e}"))),
        Err(e) => Err(e),
    }
}
