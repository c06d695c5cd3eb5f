use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use wcoalg::automaton::{coproduct, StateVector, WeightedAutomaton};
use wcoalg::bloom::{
    check_dagger_linearity, check_functoriality_axiom, check_initial_factorization, check_solution_axiom,
    BloomReport, Factorization, SeriesInstance,
};
use wcoalg::determinize::{concretize_locally_finite, determinize};
use wcoalg::equivalence::{decide_equivalence, Verdict};
use wcoalg::error::{Error, Result};
use wcoalg::io::{self, AnyAutomaton, AnyNondet, AnyWitness};
use wcoalg::lab::{self, Chain, SearchBounds, TermCoalgebra, UnarySignatureTerm};
use wcoalg::semiring::Semiring;
use wcoalg::simulation::{check_simulation, SimulationMatrix};
use wcoalg::zigzag::{construct_zigzag, verify_zigzag, verify_zigzag_relates, ZigZagWitness};
use wcoalg::{with_automaton, with_automaton_pair};

/// Weighted automata over semirings: behavior, equivalence, simulations and witnesses.
#[derive(Parser)]
#[command(name = "wcoalg", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Starts {
    /// Start vector of the first automaton, e.g. "1/1,0/1" (default: its initial vector).
    #[arg(long)]
    start: Option<String>,
    /// Start vector of the second automaton (default: its initial vector).
    #[arg(long)]
    start2: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Weight of one word.
    Behavior {
        automaton: PathBuf,
        /// The word, e.g. "aba" or "a.b.a"; empty for the empty word.
        #[arg(long, default_value = "")]
        word: String,
        #[arg(long)]
        start: Option<String>,
    },
    /// Weights of all words up to a length.
    Series {
        automaton: PathBuf,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long)]
        start: Option<String>,
    },
    /// Decides whether two (automaton, vector) pairs have the same behavior.
    Equiv {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        starts: Starts,
    },
    /// Builds a zig-zag of simulations relating two equivalent pairs.
    Witness {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        starts: Starts,
    },
    /// Re-checks a witness file, optionally against the two query vectors.
    VerifyWitness {
        witness: PathBuf,
        #[command(flatten)]
        starts: Starts,
    },
    /// Checks that a matrix is a simulation between two automata.
    SimulateCheck {
        source: PathBuf,
        target: PathBuf,
        /// JSON matrix, either a bare array of rows or {"matrix": [...]}.
        matrix: PathBuf,
    },
    /// Extends a nondeterministic automaton to its matrix form.
    Determinize { nondet: PathBuf },
    /// Enumerates reachable state vectors over a finite semiring.
    Concretize {
        automaton: PathBuf,
        #[arg(long)]
        start: Option<String>,
    },
    /// Disjoint union of two automata with the two injections.
    Coproduct { first: PathBuf, second: PathBuf },
    /// Checks the solution, linearity and functoriality axioms for power series.
    BloomCheck {
        automaton: PathBuf,
        /// A second automaton; with start vectors, also checks that related pairs agree.
        other: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, env = "SEED", default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        starts: Starts,
    },
    /// Term coalgebras over the unary symbols u and v.
    #[command(subcommand)]
    Lab(LabCommand),
}

#[derive(Subcommand)]
enum LabCommand {
    /// Prefix of the output stream of a term.
    Behavior {
        coalgebra: PathBuf,
        #[arg(long)]
        term: String,
        #[arg(long, default_value_t = 5)]
        depth: usize,
    },
    /// Whether the number of u's in reachable states is bounded.
    Bounded {
        coalgebra: PathBuf,
        #[arg(long)]
        term: String,
    },
    /// Whether a term reaches finitely many states.
    Reach {
        coalgebra: PathBuf,
        #[arg(long)]
        term: String,
    },
    /// Checks a generator map {"x": "uv(y)", ...} is a coalgebra morphism.
    Morphism {
        source: PathBuf,
        target: PathBuf,
        map: PathBuf,
        /// Also compare u-boundedness of this term and its image.
        #[arg(long)]
        term: Option<String>,
    },
    /// Bounded search for a chain of morphisms relating two terms.
    Search {
        /// First coalgebra (default: x ↦ (0, u(x))).
        #[arg(long)]
        first: Option<PathBuf>,
        /// Second coalgebra (default: y ↦ (0, v(y))).
        #[arg(long)]
        second: Option<PathBuf>,
        #[arg(long, default_value = "x")]
        term: String,
        #[arg(long, default_value = "y")]
        term2: String,
        #[arg(long, default_value_t = 2)]
        max_generators: usize,
        #[arg(long, default_value_t = 2)]
        max_word: usize,
        #[arg(long, default_value_t = 2)]
        max_chain: usize,
    },
    /// Prints a built-in coalgebra.
    Fixture {
        #[arg(value_enum)]
        name: Fixture,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Fixture {
    SuccessorU,
    SuccessorV,
    LengthQuotient,
    IdentityLoop,
    UShift,
}

/// Whether the mathematical question was answered positively.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Pass,
    Negative,
}

struct Out {
    format: Format,
}

impl Out {
    fn emit(&self, value: &Value, text: impl FnOnce() -> String) {
        match self.format {
            Format::Json => print!("{}", io::to_canonical_string(value)),
            Format::Text => {
                let mut t = text();
                if !t.ends_with('\n') {
                    t.push('\n');
                }
                print!("{t}");
            }
        }
    }
}

fn start_vector<S: Semiring>(aut: &WeightedAutomaton<S>, given: Option<&str>, flag: &str) -> Result<StateVector<S>> {
    let v = match given {
        Some(text) => StateVector::parse(text).map_err(|e| Error::invalid(flag, e.to_string()))?,
        None => aut.initial().ok_or_else(|| {
            Error::invalid(flag, "not given and the automaton has no initial vector")
        })?,
    };
    if v.len() != aut.states() {
        return Err(Error::Shape {
            what: flag.to_string(),
            expected: aut.states(),
            found: v.len(),
        });
    }
    Ok(v)
}

fn behavior<S: Semiring>(out: &Out, aut: &WeightedAutomaton<S>, word: &str, start: Option<&str>) -> Result<Outcome> {
    let v = start_vector(aut, start, "--start")?;
    let w = aut.alphabet().parse_word(word)?;
    let x = aut.behavior(&v, &w)?;
    out.emit(
        &json!({"word": aut.alphabet().format_word(&w), "value": x.to_string()}),
        || x.to_string(),
    );
    Ok(Outcome::Pass)
}

fn series<S: Semiring>(out: &Out, aut: &WeightedAutomaton<S>, depth: usize, start: Option<&str>) -> Result<Outcome> {
    let v = start_vector(aut, start, "--start")?;
    let s = aut.truncated_behavior(&v, depth)?;
    out.emit(&io::series_to_value(aut.alphabet(), &s), || {
        s.iter()
            .map(|(w, x)| {
                let label = aut.alphabet().format_word(&w);
                format!("{}\t{x}\n", if label.is_empty() { "ε".into() } else { label })
            })
            .collect()
    });
    Ok(Outcome::Pass)
}

fn equiv<S: Semiring>(out: &Out, a1: &WeightedAutomaton<S>, a2: &WeightedAutomaton<S>, starts: &Starts) -> Result<Outcome> {
    S::SPEC.require("supports_equivalence_decision")?;
    let v1 = start_vector(a1, starts.start.as_deref(), "--start")?;
    let v2 = start_vector(a2, starts.start2.as_deref(), "--start2")?;
    let verdict = decide_equivalence(a1, &v1, a2, &v2)?;
    out.emit(&io::verdict_to_value(a1.alphabet(), &verdict), || match &verdict.counterexample {
        None => format!("equivalent (basis size {})", verdict.basis_size),
        Some(cx) => format!(
            "inequivalent: word {:?} gives {} vs {}",
            a1.alphabet().format_word(&cx.word),
            cx.lhs,
            cx.rhs
        ),
    });
    Ok(match verdict.verdict {
        Verdict::Equivalent => Outcome::Pass,
        _ => Outcome::Negative,
    })
}

fn witness<S: Semiring>(out: &Out, a1: &WeightedAutomaton<S>, a2: &WeightedAutomaton<S>, starts: &Starts) -> Result<Outcome> {
    S::SPEC.require("supports_witness_construction")?;
    let v1 = start_vector(a1, starts.start.as_deref(), "--start")?;
    let v2 = start_vector(a2, starts.start2.as_deref(), "--start2")?;
    match construct_zigzag(a1, &v1, a2, &v2) {
        Ok(w) => {
            let value = io::witness_to_value(&w);
            out.emit(&value, || io::to_canonical_string(&value));
            Ok(Outcome::Pass)
        }
        Err(Error::NotEquivalent { word, lhs, rhs }) => {
            out.emit(
                &json!({"verdict": "inequivalent", "counterexample": word, "lhs": lhs, "rhs": rhs}),
                || format!("no witness: inequivalent on word {word:?} ({lhs} vs {rhs})"),
            );
            Ok(Outcome::Negative)
        }
        Err(e) => Err(e),
    }
}

fn verify_witness<S: Semiring>(out: &Out, w: &ZigZagWitness<S>, starts: &Starts) -> Result<Outcome> {
    let result = match (&starts.start, &starts.start2) {
        (None, None) => verify_zigzag(w),
        (Some(s1), Some(s2)) => {
            let v1 = StateVector::parse(s1).map_err(|e| Error::invalid("--start", e.to_string()))?;
            let v2 = StateVector::parse(s2).map_err(|e| Error::invalid("--start2", e.to_string()))?;
            verify_zigzag_relates(w, &v1, &v2)
        }
        _ => return Err(Error::invalid("--start/--start2", "give both query vectors or neither")),
    };
    let (value, text, outcome) = match result {
        Ok(()) => (json!({"result": "pass", "arrows": w.arrows.len()}), "pass".to_string(), Outcome::Pass),
        Err(v) => (
            json!({"result": "fail", "reason": v.to_string()}),
            format!("fail: {v}"),
            Outcome::Negative,
        ),
    };
    out.emit(&value, || text);
    Ok(outcome)
}

fn read_matrix_file<S: Semiring>(path: &Path) -> Result<wcoalg::linalg::Matrix<S>> {
    let v = io::read_json(path)?;
    let m = v.get("matrix").unwrap_or(&v);
    io::matrix_from_value(m, "matrix")
}

fn simulate_check<S: Semiring>(
    out: &Out,
    src: &WeightedAutomaton<S>,
    tgt: &WeightedAutomaton<S>,
    matrix: &Path,
) -> Result<Outcome> {
    let h = read_matrix_file::<S>(matrix)?;
    let report = check_simulation(src, tgt, &h)?;
    let lines: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
    let value = if report.passed() {
        json!({"result": "pass"})
    } else {
        json!({"result": "fail", "violations": lines})
    };
    out.emit(&value, || {
        if report.passed() {
            "pass".into()
        } else {
            lines.iter().map(|l| format!("fail: {l}\n")).collect()
        }
    });
    Ok(if report.passed() { Outcome::Pass } else { Outcome::Negative })
}

fn concretize<S: Semiring>(out: &Out, aut: &WeightedAutomaton<S>, start: Option<&str>) -> Result<Outcome> {
    S::SPEC.require("is_locally_finite")?;
    let v = start_vector(aut, start, "--start")?;
    let dfa = concretize_locally_finite(aut, &v)?;
    let value = io::dfa_to_value(&dfa);
    out.emit(&value, || {
        let mut s = format!("{} states\n", dfa.len());
        for (i, (v, o)) in dfa.states.iter().zip(&dfa.outputs).enumerate() {
            let succ: Vec<String> = dfa.delta[i]
                .iter()
                .zip(dfa.alphabet.symbols())
                .map(|(t, a)| format!("{a}->{t}"))
                .collect();
            s.push_str(&format!("{i} {v:?} out={o} {}\n", succ.join(" ")));
        }
        s
    });
    Ok(Outcome::Pass)
}

fn bloom<S: Semiring>(
    out: &Out,
    aut: &WeightedAutomaton<S>,
    other: Option<&WeightedAutomaton<S>>,
    depth: usize,
    samples: usize,
    seed: u64,
    starts: &Starts,
) -> Result<Outcome> {
    let inst = SeriesInstance::new(aut.alphabet().len());
    let mut reports: Vec<BloomReport> = vec![
        check_solution_axiom(&inst, aut, depth, samples, seed)?,
        check_dagger_linearity(&inst, aut, depth, samples, seed)?,
        check_functoriality_axiom(&inst, &SimulationMatrix::identity(aut), depth, samples, seed)?,
    ];
    let target = match other {
        Some(b) => coproduct(aut, b)?,
        None => coproduct(aut, aut)?,
    };
    let inl = SimulationMatrix::new(aut, &target.automaton, target.left.clone())?;
    reports.push(check_functoriality_axiom(&inst, &inl, depth, samples, seed)?);
    let mut skipped = None;
    if let Some(b) = other {
        if starts.start.is_some() || starts.start2.is_some() {
            let v1 = start_vector(aut, starts.start.as_deref(), "--start")?;
            let v2 = start_vector(b, starts.start2.as_deref(), "--start2")?;
            match check_initial_factorization(&inst, aut, &v1, b, &v2, depth)? {
                Factorization::Checked(r) => reports.push(r),
                Factorization::Skipped(reason) => skipped = Some(reason),
            }
        }
    }
    let passed = reports.iter().all(BloomReport::passed);
    let value = json!({
        "result": if passed { "pass" } else { "fail" },
        "seed": seed,
        "checks": reports.iter().map(|r| json!({
            "axiom": r.axiom,
            "instance": r.instance,
            "samples": r.samples,
            "depth": r.depth,
            "violations": r.to_string().lines().collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "skipped": skipped,
    });
    out.emit(&value, || {
        let mut s = String::new();
        for r in &reports {
            s.push_str(&r.summary());
            s.push('\n');
            s.push_str(&r.to_string());
        }
        if let Some(reason) = &skipped {
            s.push_str(&format!("initial-factorization: skipped ({reason})\n"));
        }
        s
    });
    Ok(if passed { Outcome::Pass } else { Outcome::Negative })
}

fn term(text: &str) -> Result<UnarySignatureTerm> {
    UnarySignatureTerm::parse(text)
}

fn chain_value(c: &Chain) -> Value {
    let map = |m: &lab::GeneratorMap| -> Value {
        Value::Object(m.iter().map(|(k, v)| (k.clone(), json!(v.to_string()))).collect())
    };
    match c {
        Chain::Direct { forward, map: f } => json!({
            "shape": if *forward { "first -> second" } else { "second -> first" },
            "map": map(f),
        }),
        Chain::Cospan { middle, left, right } => json!({
            "shape": "first -> middle <- second",
            "middle": io::term_coalgebra_to_value(middle),
            "left": map(left),
            "right": map(right),
        }),
        Chain::Span {
            middle,
            left,
            right,
            apex,
        } => json!({
            "shape": "first <- middle -> second",
            "middle": io::term_coalgebra_to_value(middle),
            "left": map(left),
            "right": map(right),
            "apex": apex.to_string(),
        }),
    }
}

fn run_lab(out: &Out, cmd: LabCommand) -> Result<Outcome> {
    match cmd {
        LabCommand::Behavior { coalgebra, term: t, depth } => {
            let c = io::parse_term_coalgebra(&coalgebra)?;
            let t = term(&t)?;
            let prefix = lab::term_behavior(&c, &t, depth)?;
            out.emit(&json!({"term": t.to_string(), "prefix": prefix}), || {
                let items: Vec<String> = prefix.iter().map(u64::to_string).collect();
                format!("({})", items.join(","))
            });
            Ok(Outcome::Pass)
        }
        LabCommand::Bounded { coalgebra, term: t } => {
            let c = io::parse_term_coalgebra(&coalgebra)?;
            let t = term(&t)?;
            let b = lab::u_bounded(&c, &t)?;
            let value = match b {
                lab::UBound::Bounded(k) => json!({"term": t.to_string(), "u_bounded": true, "bound": k}),
                lab::UBound::Unbounded => json!({"term": t.to_string(), "u_bounded": false}),
            };
            out.emit(&value, || b.to_string());
            Ok(Outcome::Pass)
        }
        LabCommand::Reach { coalgebra, term: t } => {
            let c = io::parse_term_coalgebra(&coalgebra)?;
            let t = term(&t)?;
            let r = lab::reach_finite(&c, &t)?;
            let value = match r {
                lab::Reach::Finite(k) => json!({"term": t.to_string(), "finite": true, "states": k}),
                lab::Reach::Infinite => json!({"term": t.to_string(), "finite": false}),
            };
            out.emit(&value, || r.to_string());
            Ok(Outcome::Pass)
        }
        LabCommand::Morphism {
            source,
            target,
            map,
            term: t,
        } => {
            let c = io::parse_term_coalgebra(&source)?;
            let d = io::parse_term_coalgebra(&target)?;
            let f = io::generator_map_from_value(&io::read_json(&map)?)?;
            if let Some(v) = lab::check_morphism_on_generators(&c, &d, &f)? {
                out.emit(&json!({"result": "fail", "reason": v.to_string()}), || format!("fail: {v}"));
                return Ok(Outcome::Negative);
            }
            let Some(t) = t else {
                out.emit(&json!({"result": "pass"}), || "pass".into());
                return Ok(Outcome::Pass);
            };
            let inv = lab::check_u_boundedness_invariance(&c, &d, &f, &term(&t)?)?;
            let value = json!({
                "result": if inv.holds() { "pass" } else { "fail" },
                "source": inv.source.to_string(),
                "target": inv.target.to_string(),
            });
            out.emit(&value, || {
                format!(
                    "{}: source {}, target {}",
                    if inv.holds() { "pass" } else { "fail" },
                    inv.source,
                    inv.target
                )
            });
            Ok(if inv.holds() { Outcome::Pass } else { Outcome::Negative })
        }
        LabCommand::Search {
            first,
            second,
            term: t1,
            term2: t2,
            max_generators,
            max_word,
            max_chain,
        } => {
            let a = match first {
                Some(p) => io::parse_term_coalgebra(&p)?,
                None => lab::successor_u(),
            };
            let b = match second {
                Some(p) => io::parse_term_coalgebra(&p)?,
                None => lab::successor_v(),
            };
            let (x, y) = (term(&t1)?, term(&t2)?);
            let bounds = SearchBounds {
                max_generators,
                max_word,
                max_chain,
            };
            let r = lab::search_chains(&a, &x, &b, &y, bounds)?;
            let value = json!({
                "bounds": {"max_generators": max_generators, "max_word": max_word, "max_chain": max_chain},
                "coalgebras": r.coalgebras,
                "morphisms": r.morphisms,
                "first": {"term": x.to_string(), "u_bound": lab::u_bounded(&a, &x)?.to_string()},
                "second": {"term": y.to_string(), "u_bound": lab::u_bounded(&b, &y)?.to_string()},
                "chain": r.found.as_ref().map(chain_value),
            });
            out.emit(&value, || match &r.found {
                None => format!(
                    "no chain within bounds ({} coalgebras, {} morphisms examined)",
                    r.coalgebras, r.morphisms
                ),
                Some(c) => format!("chain found: {}", chain_value(c)["shape"].as_str().unwrap_or("")),
            });
            Ok(Outcome::Pass)
        }
        LabCommand::Fixture { name } => {
            let c: TermCoalgebra = match name {
                Fixture::SuccessorU => lab::successor_u(),
                Fixture::SuccessorV => lab::successor_v(),
                Fixture::LengthQuotient => lab::length_quotient(),
                Fixture::IdentityLoop => lab::identity_loop(),
                Fixture::UShift => lab::u_shift(),
            };
            let value = io::term_coalgebra_to_value(&c);
            out.emit(&value, || io::to_canonical_string(&value));
            Ok(Outcome::Pass)
        }
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    let out = Out { format: cli.format };
    match cli.command {
        Command::Behavior { automaton, word, start } => {
            let a = io::parse_automaton(&automaton)?;
            with_automaton!(&a, a => behavior(&out, a, &word, start.as_deref()))
        }
        Command::Series { automaton, depth, start } => {
            let a = io::parse_automaton(&automaton)?;
            with_automaton!(&a, a => series(&out, a, depth, start.as_deref()))
        }
        Command::Equiv { first, second, starts } => {
            let (a, b) = (io::parse_automaton(&first)?, io::parse_automaton(&second)?);
            with_automaton_pair!(&a, &b, (a, b) => equiv(&out, a, b, &starts))
        }
        Command::Witness { first, second, starts } => {
            let (a, b) = (io::parse_automaton(&first)?, io::parse_automaton(&second)?);
            with_automaton_pair!(&a, &b, (a, b) => witness(&out, a, b, &starts))
        }
        Command::VerifyWitness { witness, starts } => match io::parse_witness(&witness)? {
            AnyWitness::B(w) => verify_witness(&out, &w, &starts),
            AnyWitness::N(w) => verify_witness(&out, &w, &starts),
            AnyWitness::Z(w) => verify_witness(&out, &w, &starts),
            AnyWitness::Q(w) => verify_witness(&out, &w, &starts),
            AnyWitness::Tropical(w) => verify_witness(&out, &w, &starts),
        },
        Command::SimulateCheck { source, target, matrix } => {
            let (a, b) = (io::parse_automaton(&source)?, io::parse_automaton(&target)?);
            with_automaton_pair!(&a, &b, (a, b) => simulate_check(&out, a, b, &matrix))
        }
        Command::Determinize { nondet } => {
            let v = io::read_json(&nondet)?;
            let value = match AnyNondet::from_value(&v)? {
                AnyNondet::B(n) => io::automaton_to_value(&determinize(&n)),
                AnyNondet::N(n) => io::automaton_to_value(&determinize(&n)),
                AnyNondet::Z(n) => io::automaton_to_value(&determinize(&n)),
                AnyNondet::Q(n) => io::automaton_to_value(&determinize(&n)),
                AnyNondet::Tropical(n) => io::automaton_to_value(&determinize(&n)),
            };
            out.emit(&value, || io::to_canonical_string(&value));
            Ok(Outcome::Pass)
        }
        Command::Concretize { automaton, start } => {
            let v = io::read_json(&automaton)?;
            let a = if io::looks_nondeterministic(&v) {
                match AnyNondet::from_value(&v)? {
                    AnyNondet::B(n) => AnyAutomaton::B(determinize(&n)),
                    AnyNondet::N(n) => AnyAutomaton::N(determinize(&n)),
                    AnyNondet::Z(n) => AnyAutomaton::Z(determinize(&n)),
                    AnyNondet::Q(n) => AnyAutomaton::Q(determinize(&n)),
                    AnyNondet::Tropical(n) => AnyAutomaton::Tropical(determinize(&n)),
                }
            } else {
                AnyAutomaton::from_value(&v)?
            };
            with_automaton!(&a, a => concretize(&out, a, start.as_deref()))
        }
        Command::Coproduct { first, second } => {
            let (a, b) = (io::parse_automaton(&first)?, io::parse_automaton(&second)?);
            let value = with_automaton_pair!(&a, &b, (a, b) => coproduct(a, b).map(|c| io::coproduct_to_value(&c)))?;
            out.emit(&value, || io::to_canonical_string(&value));
            Ok(Outcome::Pass)
        }
        Command::BloomCheck {
            automaton,
            other,
            depth,
            samples,
            seed,
            starts,
        } => {
            let a = io::parse_automaton(&automaton)?;
            match other {
                None => with_automaton!(&a, a => bloom(&out, a, None, depth, samples, seed, &starts)),
                Some(p) => {
                    let b = io::parse_automaton(&p)?;
                    with_automaton_pair!(&a, &b, (a, b) => bloom(&out, a, Some(b), depth, samples, seed, &starts))
                }
            }
        }
        Command::Lab(cmd) => run_lab(&out, cmd),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Negative) => ExitCode::from(1),
        Err(e @ Error::Unsupported { .. }) => {
            eprintln!("unsupported: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
