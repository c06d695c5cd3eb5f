//! JSON file formats.
//!
//! Entries are strings in each semiring's canonical notation. Output is
//! canonical: sorted keys, two-space indentation and a trailing newline, so
//! parsing and re-serializing a canonical file reproduces it byte for byte.

use std::path::Path;

use serde_json::{json, Map, Value};

use crate::automaton::{Alphabet, Coproduct, StateVector, TruncatedSeries, WeightedAutomaton};
use crate::determinize::{Edge, ExplicitDfa, NondetAutomaton};
use crate::equivalence::EquivalenceVerdict;
use crate::error::{Error, Result};
use crate::lab::{format_letters, parse_letters, Congruence, GeneratorMap, GeneratorStep, TermCoalgebra, UnarySignatureTerm};
use crate::linalg::Matrix;
use crate::semiring::{Boolean, Integer, Natural, Rational, Semiring, Tropical};
use crate::zigzag::{Arrow, ZigZagWitness};

/// Serializes with sorted keys and a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

/// Parses JSON text, reporting line and column on syntax errors.
pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| {
        Error::Parse(format!(
            "malformed JSON at line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    })
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_json(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::invalid(display_path(path), "expected an object"))
}

fn display_path(path: &str) -> String {
    if path.is_empty() {
        "document".into()
    } else {
        path.to_string()
    }
}

fn field<'a>(m: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a Value> {
    m.get(key)
        .ok_or_else(|| Error::invalid(join(path, key), "missing field"))
}

fn only_keys(m: &Map<String, Value>, path: &str, allowed: &[&str]) -> Result<()> {
    match m.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(Error::invalid(join(path, k), "unknown field")),
        None => Ok(()),
    }
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::invalid(display_path(path), "expected an array"))
}

fn string<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str()
        .ok_or_else(|| Error::invalid(display_path(path), "expected a string"))
}

fn natural(v: &Value, path: &str) -> Result<u64> {
    v.as_u64()
        .ok_or_else(|| Error::invalid(display_path(path), "expected a non-negative integer"))
}

fn index(v: &Value, path: &str) -> Result<usize> {
    natural(v, path).map(|n| n as usize)
}

/// A semiring element given as a string (or, for convenience, an integer).
fn scalar<S: Semiring>(v: &Value, path: &str) -> Result<S> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        Value::Bool(b) => b.to_string(),
        _ => return Err(Error::invalid(display_path(path), "expected a string entry")),
    };
    S::parse(&text).map_err(|e| Error::invalid(display_path(path), e.to_string()))
}

fn vector<S: Semiring>(v: &Value, path: &str, len: usize) -> Result<Vec<S>> {
    let items = array(v, path)?;
    if items.len() != len {
        return Err(Error::shape(display_path(path), len, items.len()));
    }
    items
        .iter()
        .enumerate()
        .map(|(i, x)| scalar(x, &format!("{path}[{i}]")))
        .collect()
}

fn matrix<S: Semiring>(v: &Value, path: &str, rows: usize, cols: usize) -> Result<Matrix<S>> {
    let items = array(v, path)?;
    if items.len() != rows {
        return Err(Error::shape(format!("{path} (number of rows)"), rows, items.len()));
    }
    let mut out = Vec::with_capacity(rows);
    for (i, row) in items.iter().enumerate() {
        let row_path = format!("{path} row {i}");
        let entries = array(row, &row_path)?;
        if entries.len() != cols {
            return Err(Error::shape(row_path, cols, entries.len()));
        }
        out.push(
            entries
                .iter()
                .enumerate()
                .map(|(j, x)| scalar(x, &format!("{path}[{i}][{j}]")))
                .collect::<Result<Vec<S>>>()?,
        );
    }
    Matrix::from_rows(out, cols)
}

fn vector_value<S: Semiring>(v: &[S]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn matrix_value<S: Semiring>(m: &Matrix<S>) -> Value {
    Value::Array((0..m.rows()).map(|r| vector_value(m.row(r))).collect())
}

/// Reads a matrix without a known shape (rows must agree in length).
pub fn matrix_from_value<S: Semiring>(v: &Value, path: &str) -> Result<Matrix<S>> {
    let rows = array(v, path)?;
    let cols = match rows.first() {
        Some(r) => array(r, &format!("{path} row 0"))?.len(),
        None => 0,
    };
    matrix(v, path, rows.len(), cols)
}

/// The five semirings of the file formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SemiringKind {
    B,
    N,
    Z,
    Q,
    Tropical,
}

impl SemiringKind {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "B" => Ok(SemiringKind::B),
            "N" => Ok(SemiringKind::N),
            "Z" => Ok(SemiringKind::Z),
            "Q" => Ok(SemiringKind::Q),
            "tropical" => Ok(SemiringKind::Tropical),
            other => Err(Error::invalid(
                "semiring",
                format!("unknown semiring {other:?} (expected B, N, Z, Q or tropical)"),
            )),
        }
    }
}

fn semiring_field(m: &Map<String, Value>, path: &str) -> Result<SemiringKind> {
    let p = join(path, "semiring");
    SemiringKind::parse(string(field(m, path, "semiring")?, &p)?)
        .map_err(|e| match e {
            Error::Invalid { reason, .. } => Error::invalid(p, reason),
            e => e,
        })
}

fn check_semiring<S: Semiring>(m: &Map<String, Value>, path: &str) -> Result<()> {
    let p = join(path, "semiring");
    let name = string(field(m, path, "semiring")?, &p)?;
    if name != S::SPEC.name {
        return Err(Error::SemiringMismatch {
            left: S::SPEC.name.to_string(),
            right: name.to_string(),
        });
    }
    Ok(())
}

fn alphabet_field(m: &Map<String, Value>, path: &str) -> Result<Alphabet> {
    let p = join(path, "alphabet");
    let symbols = array(field(m, path, "alphabet")?, &p)?
        .iter()
        .enumerate()
        .map(|(i, s)| string(s, &format!("{p}[{i}]")).map(str::to_string))
        .collect::<Result<Vec<_>>>()?;
    Alphabet::new(symbols).map_err(|e| Error::invalid(p, e.to_string()))
}

fn initial_field<S: Semiring>(m: &Map<String, Value>, path: &str, n: usize) -> Result<Option<Vec<S>>> {
    match m.get("initial") {
        None | Some(Value::Null) => Ok(None),
        Some(v) => vector(v, &join(path, "initial"), n).map(Some),
    }
}

/// Reads an automaton object; `path` prefixes diagnostics.
pub fn automaton_from_value<S: Semiring>(v: &Value, path: &str) -> Result<WeightedAutomaton<S>> {
    let m = object(v, path)?;
    only_keys(m, path, &["semiring", "alphabet", "states", "output", "transitions", "initial"])?;
    check_semiring::<S>(m, path)?;
    let alphabet = alphabet_field(m, path)?;
    let n = index(field(m, path, "states")?, &join(path, "states"))?;
    let output = vector(field(m, path, "output")?, &join(path, "output"), n)?;
    let tp = join(path, "transitions");
    let tm = object(field(m, path, "transitions")?, &tp)?;
    let mut transitions = Vec::with_capacity(alphabet.len());
    for symbol in alphabet.symbols() {
        let mp = join(&tp, symbol);
        let mv = tm
            .get(symbol)
            .ok_or_else(|| Error::invalid(mp.clone(), "missing transition matrix"))?;
        transitions.push(matrix(mv, &mp, n, n)?);
    }
    if let Some(extra) = tm.keys().find(|k| alphabet.index_of(k).is_err()) {
        return Err(Error::invalid(join(&tp, extra), "symbol not in the alphabet"));
    }
    let initial = initial_field(m, path, n)?;
    WeightedAutomaton::new(alphabet, output, transitions, initial)
}

fn alphabet_value(a: &Alphabet) -> Value {
    Value::Array(a.symbols().iter().map(|s| Value::String(s.clone())).collect())
}

pub fn automaton_to_value<S: Semiring>(aut: &WeightedAutomaton<S>) -> Value {
    let mut m = Map::new();
    m.insert("semiring".into(), json!(S::SPEC.name));
    m.insert("alphabet".into(), alphabet_value(aut.alphabet()));
    m.insert("states".into(), json!(aut.states()));
    m.insert("output".into(), vector_value(aut.output()));
    let transitions: Map<String, Value> = aut
        .alphabet()
        .symbols()
        .iter()
        .zip(aut.transitions())
        .map(|(s, t)| (s.clone(), matrix_value(t)))
        .collect();
    m.insert("transitions".into(), Value::Object(transitions));
    if let Some(i) = aut.initial() {
        m.insert("initial".into(), vector_value(i.entries()));
    }
    Value::Object(m)
}

pub fn nondet_from_value<S: Semiring>(v: &Value, path: &str) -> Result<NondetAutomaton<S>> {
    let m = object(v, path)?;
    only_keys(m, path, &["semiring", "alphabet", "states", "output", "transitions", "initial"])?;
    check_semiring::<S>(m, path)?;
    let alphabet = alphabet_field(m, path)?;
    let n = index(field(m, path, "states")?, &join(path, "states"))?;
    let output = vector(field(m, path, "output")?, &join(path, "output"), n)?;
    let tp = join(path, "transitions");
    let tm = object(field(m, path, "transitions")?, &tp)?;
    if let Some(extra) = tm.keys().find(|k| alphabet.index_of(k).is_err()) {
        return Err(Error::invalid(join(&tp, extra), "symbol not in the alphabet"));
    }
    let mut transitions = vec![vec![Vec::new(); alphabet.len()]; n];
    for (a, symbol) in alphabet.symbols().iter().enumerate() {
        let lp = join(&tp, symbol);
        let Some(lists) = tm.get(symbol) else { continue };
        let lists = array(lists, &lp)?;
        if lists.len() != n {
            return Err(Error::shape(format!("{lp} (one edge list per state)"), n, lists.len()));
        }
        for (x, edges) in lists.iter().enumerate() {
            for (e, edge) in array(edges, &format!("{lp}[{x}]"))?.iter().enumerate() {
                let ep = format!("{lp}[{x}][{e}]");
                let em = object(edge, &ep)?;
                only_keys(em, &ep, &["to", "weight"])?;
                let to = index(field(em, &ep, "to")?, &join(&ep, "to"))?;
                if to >= n {
                    return Err(Error::invalid(join(&ep, "to"), format!("state {to} out of range 0..{n}")));
                }
                let weight = scalar(field(em, &ep, "weight")?, &join(&ep, "weight"))?;
                transitions[x][a].push(Edge { to, weight });
            }
        }
    }
    let initial = initial_field(m, path, n)?;
    NondetAutomaton::new(alphabet, output, transitions, initial)
}

pub fn nondet_to_value<S: Semiring>(nd: &NondetAutomaton<S>) -> Value {
    let transitions: Map<String, Value> = nd
        .alphabet()
        .symbols()
        .iter()
        .enumerate()
        .map(|(a, s)| {
            let lists = (0..nd.states())
                .map(|x| {
                    Value::Array(
                        nd.edges(x, a)
                            .iter()
                            .map(|e| json!({"to": e.to, "weight": e.weight.to_string()}))
                            .collect(),
                    )
                })
                .collect();
            (s.clone(), Value::Array(lists))
        })
        .collect();
    let mut m = Map::new();
    m.insert("semiring".into(), json!(S::SPEC.name));
    m.insert("alphabet".into(), alphabet_value(nd.alphabet()));
    m.insert("states".into(), json!(nd.states()));
    m.insert("output".into(), vector_value(nd.output()));
    m.insert("transitions".into(), Value::Object(transitions));
    if let Some(i) = nd.initial() {
        m.insert("initial".into(), vector_value(i.entries()));
    }
    Value::Object(m)
}

/// True when a document looks like a nondeterministic automaton: its
/// transition lists hold edge objects rather than matrix rows.
pub fn looks_nondeterministic(v: &Value) -> bool {
    let Some(t) = v.get("transitions").and_then(Value::as_object) else {
        return false;
    };
    t.values().any(|lists| {
        lists.as_array().is_some_and(|ls| {
            ls.iter()
                .any(|l| l.as_array().is_some_and(|es| es.iter().any(Value::is_object)))
        })
    })
}

pub fn witness_from_value<S: Semiring>(v: &Value) -> Result<ZigZagWitness<S>> {
    let m = object(v, "")?;
    only_keys(m, "", &["automata", "arrows", "elements"])?;
    let automata = array(field(m, "", "automata")?, "automata")?
        .iter()
        .enumerate()
        .map(|(i, a)| automaton_from_value(a, &format!("automata[{i}]")))
        .collect::<Result<Vec<WeightedAutomaton<S>>>>()?;
    let arrows = array(field(m, "", "arrows")?, "arrows")?
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let p = format!("arrows[{i}]");
            let am = object(a, &p)?;
            only_keys(am, &p, &["from", "to", "matrix"])?;
            Ok(Arrow {
                from: index(field(am, &p, "from")?, &join(&p, "from"))?,
                to: index(field(am, &p, "to")?, &join(&p, "to"))?,
                matrix: matrix_from_value(field(am, &p, "matrix")?, &join(&p, "matrix"))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let ep = "elements";
    let elements = array(field(m, "", ep)?, ep)?
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let p = format!("{ep}[{i}]");
            let len = array(e, &p)?.len();
            vector(e, &p, len).map(StateVector)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ZigZagWitness {
        automata,
        arrows,
        elements,
    })
}

pub fn witness_to_value<S: Semiring>(w: &ZigZagWitness<S>) -> Value {
    json!({
        "automata": w.automata.iter().map(automaton_to_value).collect::<Vec<_>>(),
        "arrows": w.arrows.iter().map(|a| json!({
            "from": a.from,
            "to": a.to,
            "matrix": matrix_value(&a.matrix),
        })).collect::<Vec<_>>(),
        "elements": w.elements.iter().map(|e| vector_value(e.entries())).collect::<Vec<_>>(),
    })
}

pub fn term_coalgebra_from_value(v: &Value) -> Result<TermCoalgebra> {
    let m = object(v, "")?;
    only_keys(m, "", &["generators", "structure", "congruence"])?;
    let generators = array(field(m, "", "generators")?, "generators")?
        .iter()
        .enumerate()
        .map(|(i, g)| string(g, &format!("generators[{i}]")).map(str::to_string))
        .collect::<Result<Vec<_>>>()?;
    let sm = object(field(m, "", "structure")?, "structure")?;
    let mut structure = std::collections::BTreeMap::new();
    for (x, step) in sm {
        let p = join("structure", x);
        let st = object(step, &p)?;
        only_keys(st, &p, &["out", "word", "to"])?;
        let out = natural(field(st, &p, "out")?, &join(&p, "out"))?;
        let wp = join(&p, "word");
        let word = parse_letters(string(field(st, &p, "word")?, &wp)?)
            .map_err(|e| Error::invalid(wp, e.to_string()))?;
        let to = string(field(st, &p, "to")?, &join(&p, "to"))?;
        structure.insert(x.clone(), GeneratorStep::new(out, word, to));
    }
    let congruence = match m.get("congruence") {
        None => Congruence::Free,
        Some(c) => Congruence::parse(string(c, "congruence")?)?,
    };
    TermCoalgebra::new(generators, structure, congruence)
}

pub fn term_coalgebra_to_value(c: &TermCoalgebra) -> Value {
    let structure: Map<String, Value> = c
        .structure()
        .iter()
        .map(|(x, s)| {
            (
                x.clone(),
                json!({"out": s.out, "word": format_letters(&s.word), "to": s.to}),
            )
        })
        .collect();
    let mut m = Map::new();
    m.insert("generators".into(), json!(c.generators()));
    m.insert("structure".into(), Value::Object(structure));
    if c.congruence() != Congruence::Free {
        m.insert("congruence".into(), json!(c.congruence().as_str()));
    }
    Value::Object(m)
}

/// `{"x": "uv(y)", ...}`.
pub fn generator_map_from_value(v: &Value) -> Result<GeneratorMap> {
    object(v, "")?
        .iter()
        .map(|(x, t)| {
            let term = UnarySignatureTerm::parse(string(t, x)?)
                .map_err(|e| Error::invalid(x.clone(), e.to_string()))?;
            Ok((x.clone(), term))
        })
        .collect()
}

pub fn verdict_to_value<S: Semiring>(alphabet: &Alphabet, v: &EquivalenceVerdict<S>) -> Value {
    let mut m = Map::new();
    m.insert("verdict".into(), json!(v.verdict.as_str()));
    m.insert("basis_size".into(), json!(v.basis_size));
    if let Some(cx) = &v.counterexample {
        m.insert("counterexample".into(), json!(alphabet.format_word(&cx.word)));
        m.insert("lhs".into(), json!(cx.lhs.to_string()));
        m.insert("rhs".into(), json!(cx.rhs.to_string()));
    }
    Value::Object(m)
}

/// `{"word": value}` pairs listed in length-lexicographic order.
pub fn series_to_value<S: Semiring>(alphabet: &Alphabet, s: &TruncatedSeries<S>) -> Value {
    json!({
        "depth": s.depth(),
        "values": s.iter().map(|(w, x)| json!({
            "word": alphabet.format_word(&w),
            "value": x.to_string(),
        })).collect::<Vec<_>>(),
    })
}

pub fn dfa_to_value<S: Semiring>(dfa: &ExplicitDfa<S>) -> Value {
    let delta: Map<String, Value> = dfa
        .alphabet
        .symbols()
        .iter()
        .enumerate()
        .map(|(a, s)| (s.clone(), json!(dfa.delta.iter().map(|row| row[a]).collect::<Vec<_>>())))
        .collect();
    json!({
        "semiring": S::SPEC.name,
        "alphabet": alphabet_value(&dfa.alphabet),
        "states": dfa.states.iter().map(|v| vector_value(v.entries())).collect::<Vec<_>>(),
        "outputs": vector_value(&dfa.outputs),
        "delta": Value::Object(delta),
    })
}

pub fn coproduct_to_value<S: Semiring>(c: &Coproduct<S>) -> Value {
    json!({
        "automaton": automaton_to_value(&c.automaton),
        "left": matrix_value(&c.left),
        "right": matrix_value(&c.right),
    })
}

/// An automaton over any of the supported semirings.
#[derive(Debug, Clone)]
pub enum AnyAutomaton {
    B(WeightedAutomaton<Boolean>),
    N(WeightedAutomaton<Natural>),
    Z(WeightedAutomaton<Integer>),
    Q(WeightedAutomaton<Rational>),
    Tropical(WeightedAutomaton<Tropical>),
}

/// Runs `$body` with `$a` bound to the typed automaton.
#[macro_export]
macro_rules! with_automaton {
    ($any:expr, $a:ident => $body:expr) => {
        match $any {
            $crate::io::AnyAutomaton::B($a) => $body,
            $crate::io::AnyAutomaton::N($a) => $body,
            $crate::io::AnyAutomaton::Z($a) => $body,
            $crate::io::AnyAutomaton::Q($a) => $body,
            $crate::io::AnyAutomaton::Tropical($a) => $body,
        }
    };
}

/// Runs `$body` with both automata typed over the same semiring, or
/// evaluates to a semiring-mismatch error.
#[macro_export]
macro_rules! with_automaton_pair {
    ($x:expr, $y:expr, ($a:ident, $b:ident) => $body:expr) => {
        match ($x, $y) {
            ($crate::io::AnyAutomaton::B($a), $crate::io::AnyAutomaton::B($b)) => $body,
            ($crate::io::AnyAutomaton::N($a), $crate::io::AnyAutomaton::N($b)) => $body,
            ($crate::io::AnyAutomaton::Z($a), $crate::io::AnyAutomaton::Z($b)) => $body,
            ($crate::io::AnyAutomaton::Q($a), $crate::io::AnyAutomaton::Q($b)) => $body,
            ($crate::io::AnyAutomaton::Tropical($a), $crate::io::AnyAutomaton::Tropical($b)) => $body,
            (x, y) => Err($crate::error::Error::SemiringMismatch {
                left: x.semiring_name().to_string(),
                right: y.semiring_name().to_string(),
            }),
        }
    };
}

impl AnyAutomaton {
    pub fn from_value(v: &Value) -> Result<Self> {
        let kind = semiring_field(object(v, "")?, "")?;
        Ok(match kind {
            SemiringKind::B => AnyAutomaton::B(automaton_from_value(v, "")?),
            SemiringKind::N => AnyAutomaton::N(automaton_from_value(v, "")?),
            SemiringKind::Z => AnyAutomaton::Z(automaton_from_value(v, "")?),
            SemiringKind::Q => AnyAutomaton::Q(automaton_from_value(v, "")?),
            SemiringKind::Tropical => AnyAutomaton::Tropical(automaton_from_value(v, "")?),
        })
    }

    pub fn semiring_name(&self) -> &'static str {
        with_automaton!(self, a => semiring_name_of(a))
    }

    pub fn to_value(&self) -> Value {
        with_automaton!(self, a => automaton_to_value(a))
    }
}

fn semiring_name_of<S: Semiring>(_: &WeightedAutomaton<S>) -> &'static str {
    S::SPEC.name
}

/// A nondeterministic automaton over any supported semiring.
#[derive(Debug, Clone)]
pub enum AnyNondet {
    B(NondetAutomaton<Boolean>),
    N(NondetAutomaton<Natural>),
    Z(NondetAutomaton<Integer>),
    Q(NondetAutomaton<Rational>),
    Tropical(NondetAutomaton<Tropical>),
}

impl AnyNondet {
    pub fn from_value(v: &Value) -> Result<Self> {
        let kind = semiring_field(object(v, "")?, "")?;
        Ok(match kind {
            SemiringKind::B => AnyNondet::B(nondet_from_value(v, "")?),
            SemiringKind::N => AnyNondet::N(nondet_from_value(v, "")?),
            SemiringKind::Z => AnyNondet::Z(nondet_from_value(v, "")?),
            SemiringKind::Q => AnyNondet::Q(nondet_from_value(v, "")?),
            SemiringKind::Tropical => AnyNondet::Tropical(nondet_from_value(v, "")?),
        })
    }
}

/// A witness over any supported semiring, typed by its first automaton.
#[derive(Debug, Clone)]
pub enum AnyWitness {
    B(ZigZagWitness<Boolean>),
    N(ZigZagWitness<Natural>),
    Z(ZigZagWitness<Integer>),
    Q(ZigZagWitness<Rational>),
    Tropical(ZigZagWitness<Tropical>),
}

impl AnyWitness {
    pub fn from_value(v: &Value) -> Result<Self> {
        let m = object(v, "")?;
        let automata = array(field(m, "", "automata")?, "automata")?;
        let first = automata
            .first()
            .ok_or_else(|| Error::invalid("automata", "a witness needs at least one automaton"))?;
        let kind = semiring_field(object(first, "automata[0]")?, "automata[0]")?;
        Ok(match kind {
            SemiringKind::B => AnyWitness::B(witness_from_value(v)?),
            SemiringKind::N => AnyWitness::N(witness_from_value(v)?),
            SemiringKind::Z => AnyWitness::Z(witness_from_value(v)?),
            SemiringKind::Q => AnyWitness::Q(witness_from_value(v)?),
            SemiringKind::Tropical => AnyWitness::Tropical(witness_from_value(v)?),
        })
    }
}

pub fn parse_automaton(path: &Path) -> Result<AnyAutomaton> {
    AnyAutomaton::from_value(&read_json(path)?).map_err(|e| in_file(path, e))
}

pub fn parse_witness(path: &Path) -> Result<AnyWitness> {
    AnyWitness::from_value(&read_json(path)?).map_err(|e| in_file(path, e))
}

pub fn parse_term_coalgebra(path: &Path) -> Result<TermCoalgebra> {
    term_coalgebra_from_value(&read_json(path)?).map_err(|e| in_file(path, e))
}

/// Prefixes schema errors with the file they came from.
fn in_file(path: &Path, e: Error) -> Error {
    match e {
        Error::Invalid { what, reason } => Error::Invalid {
            what: format!("{}: {what}", path.display()),
            reason,
        },
        Error::Shape {
            what,
            expected,
            found,
        } => Error::Shape {
            what: format!("{}: {what}", path.display()),
            expected,
            found,
        },
        other => other,
    }
}
