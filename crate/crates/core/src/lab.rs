//! Stream coalgebras over the signature of two unary symbols `u` and `v`.
//!
//! A term `w(x)` is a word over `{u, v}` applied to a generator. A
//! [`TermCoalgebra`] maps each generator to `(n, w(x'))`, which extends to
//! all terms as an algebra morphism for `F X = ℕ × X` with both symbols
//! acting as successor on the output: `c(w(x)) = (n + |w|, (w·w_x)(x'))`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    U,
    V,
}

impl Letter {
    pub fn symbol(self) -> char {
        match self {
            Letter::U => 'u',
            Letter::V => 'v',
        }
    }

    fn from_char(c: char) -> Option<Letter> {
        match c {
            'u' => Some(Letter::U),
            'v' => Some(Letter::V),
            _ => None,
        }
    }
}

pub fn format_letters(word: &[Letter]) -> String {
    word.iter().map(|l| l.symbol()).collect()
}

pub fn parse_letters(text: &str) -> Result<Vec<Letter>> {
    text.trim()
        .chars()
        .map(|c| {
            Letter::from_char(c).ok_or_else(|| Error::UnknownSymbol {
                symbol: c.to_string(),
            })
        })
        .collect()
}

fn u_count(word: &[Letter]) -> usize {
    word.iter().filter(|&&l| l == Letter::U).count()
}

fn valid_generator(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

/// `w(x)`: the outermost symbol comes first in `word`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnarySignatureTerm {
    pub word: Vec<Letter>,
    pub generator: String,
}

impl UnarySignatureTerm {
    pub fn generator(name: impl Into<String>) -> Self {
        UnarySignatureTerm {
            word: Vec::new(),
            generator: name.into(),
        }
    }

    pub fn new(word: Vec<Letter>, generator: impl Into<String>) -> Self {
        UnarySignatureTerm {
            word,
            generator: generator.into(),
        }
    }

    /// Accepts `x`, `uv(x)` and nested `u(v(x))`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Parse(format!("term {text:?}: {reason}"));
        let mut rest = text.trim();
        let mut word = Vec::new();
        let mut closing = 0;
        while let Some(open) = rest.find('(') {
            word.extend(parse_letters(&rest[..open]).map_err(|_| bad("only u and v may be applied"))?);
            if open == 0 {
                return Err(bad("missing symbol before '('"));
            }
            rest = rest[open + 1..].trim();
            closing += 1;
        }
        let tail = ")".repeat(closing);
        let name = rest
            .strip_suffix(tail.as_str())
            .ok_or_else(|| bad("unbalanced parentheses"))?
            .trim();
        if !valid_generator(name) {
            return Err(bad("invalid generator name"));
        }
        Ok(UnarySignatureTerm::new(word, name))
    }

    /// `w'(w(x))`.
    pub fn apply(&self, outer: &[Letter]) -> Self {
        let mut word = outer.to_vec();
        word.extend(&self.word);
        UnarySignatureTerm::new(word, self.generator.clone())
    }

    pub fn u_count(&self) -> usize {
        u_count(&self.word)
    }
}

impl fmt::Display for UnarySignatureTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            write!(f, "{}", self.generator)
        } else {
            write!(f, "{}({})", format_letters(&self.word), self.generator)
        }
    }
}

/// Which terms a coalgebra identifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Congruence {
    /// The free algebra: terms are equal iff they are identical.
    #[default]
    Free,
    /// `u(z) = v(z)`: terms are equal iff they have the same length and generator.
    LengthOnly,
}

impl Congruence {
    pub fn as_str(self) -> &'static str {
        match self {
            Congruence::Free => "free",
            Congruence::LengthOnly => "length",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "free" => Ok(Congruence::Free),
            "length" => Ok(Congruence::LengthOnly),
            other => Err(Error::Parse(format!("unknown congruence {other:?}"))),
        }
    }
}

/// Image of one generator: `x ↦ (out, word(to))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorStep {
    pub out: u64,
    pub word: Vec<Letter>,
    pub to: String,
}

impl GeneratorStep {
    pub fn new(out: u64, word: Vec<Letter>, to: impl Into<String>) -> Self {
        GeneratorStep {
            out,
            word,
            to: to.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermCoalgebra {
    generators: Vec<String>,
    structure: BTreeMap<String, GeneratorStep>,
    congruence: Congruence,
}

impl TermCoalgebra {
    pub fn new(
        generators: Vec<String>,
        structure: BTreeMap<String, GeneratorStep>,
        congruence: Congruence,
    ) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for g in &generators {
            if !valid_generator(g) {
                return Err(Error::invalid("generators", format!("invalid name {g:?}")));
            }
            if !seen.insert(g.as_str()) {
                return Err(Error::invalid("generators", format!("duplicate generator {g:?}")));
            }
        }
        for g in &generators {
            let step = structure
                .get(g)
                .ok_or_else(|| Error::invalid("structure", format!("generator {g:?} is not mapped")))?;
            if !seen.contains(step.to.as_str()) {
                return Err(Error::invalid(
                    format!("structure.{g}.to"),
                    format!("unknown generator {:?}", step.to),
                ));
            }
        }
        if let Some(extra) = structure.keys().find(|k| !seen.contains(k.as_str())) {
            return Err(Error::invalid("structure", format!("unknown generator {extra:?}")));
        }
        Ok(TermCoalgebra {
            generators,
            structure,
            congruence,
        })
    }

    /// Builds a free coalgebra from `(name, out, word, to)` rows.
    pub fn from_steps(rows: &[(&str, u64, &str, &str)]) -> Result<Self> {
        let generators = rows.iter().map(|r| r.0.to_string()).collect();
        let mut structure = BTreeMap::new();
        for &(x, out, word, to) in rows {
            structure.insert(x.to_string(), GeneratorStep::new(out, parse_letters(word)?, to));
        }
        TermCoalgebra::new(generators, structure, Congruence::Free)
    }

    pub fn with_congruence(mut self, congruence: Congruence) -> Self {
        self.congruence = congruence;
        self
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn structure(&self) -> &BTreeMap<String, GeneratorStep> {
        &self.structure
    }

    pub fn step_of(&self, generator: &str) -> Result<&GeneratorStep> {
        self.structure.get(generator).ok_or_else(|| {
            Error::invalid("term", format!("unknown generator {generator:?}"))
        })
    }

    pub fn congruence(&self) -> Congruence {
        self.congruence
    }

    pub fn check_term(&self, t: &UnarySignatureTerm) -> Result<()> {
        self.step_of(&t.generator).map(|_| ())
    }

    /// `c(w(x)) = (n + |w|, (w·w_x)(x'))`.
    pub fn apply(&self, t: &UnarySignatureTerm) -> Result<(u64, UnarySignatureTerm)> {
        let step = self.step_of(&t.generator)?;
        let mut word = t.word.clone();
        word.extend(&step.word);
        Ok((step.out + t.word.len() as u64, UnarySignatureTerm::new(word, step.to.clone())))
    }

    /// Representative of the class of `t`: unchanged when free, `u^|w|(x)` otherwise.
    pub fn normalize(&self, t: &UnarySignatureTerm) -> UnarySignatureTerm {
        match self.congruence {
            Congruence::Free => t.clone(),
            Congruence::LengthOnly => {
                UnarySignatureTerm::new(vec![Letter::U; t.word.len()], t.generator.clone())
            }
        }
    }

    pub fn terms_equal(&self, s: &UnarySignatureTerm, t: &UnarySignatureTerm) -> bool {
        self.normalize(s) == self.normalize(t)
    }
}

/// First `len` outputs of the behavior of `t`.
pub fn term_behavior(c: &TermCoalgebra, t: &UnarySignatureTerm, len: usize) -> Result<Vec<u64>> {
    c.check_term(t)?;
    let mut out = Vec::with_capacity(len);
    let mut state = t.clone();
    for _ in 0..len {
        let (n, next) = c.apply(&state)?;
        out.push(n);
        state = next;
    }
    Ok(out)
}

/// Path through the deterministic generator graph starting at `start`:
/// the generators before the cycle and the cycle itself.
fn rho(c: &TermCoalgebra, start: &str) -> Result<(Vec<String>, Vec<String>)> {
    let mut order: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut x = start.to_string();
    while !index.contains_key(&x) {
        index.insert(x.clone(), order.len());
        let next = c.step_of(&x)?.to.clone();
        order.push(x);
        x = next;
    }
    let split = index[&x];
    let cycle = order.split_off(split);
    Ok((order, cycle))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UBound {
    Bounded(usize),
    Unbounded,
}

impl UBound {
    pub fn is_bounded(self) -> bool {
        matches!(self, UBound::Bounded(_))
    }
}

impl fmt::Display for UBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UBound::Bounded(k) => write!(f, "bounded({k})"),
            UBound::Unbounded => write!(f, "unbounded"),
        }
    }
}

/// Counts `u`s in the representative used by the coalgebra's congruence.
fn weight(c: &TermCoalgebra, word: &[Letter]) -> usize {
    match c.congruence {
        Congruence::Free => u_count(word),
        Congruence::LengthOnly => word.len(),
    }
}

/// Whether the number of `u`s in states reachable from `t` is bounded.
///
/// The count never decreases along a run, so it is bounded iff the cycle
/// of the generator graph adds no `u`; the bound is then the count after
/// one pass over the path.
pub fn u_bounded(c: &TermCoalgebra, t: &UnarySignatureTerm) -> Result<UBound> {
    c.check_term(t)?;
    let (tail, cycle) = rho(c, &t.generator)?;
    let per_edge = |x: &String| c.step_of(x).map(|s| weight(c, &s.word));
    let cycle_gain = cycle.iter().map(per_edge).sum::<Result<usize>>()?;
    if cycle_gain > 0 {
        return Ok(UBound::Unbounded);
    }
    let tail_gain = tail.iter().map(per_edge).sum::<Result<usize>>()?;
    Ok(UBound::Bounded(weight(c, &t.word) + tail_gain))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reach {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Reach {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reach::Finite(k) => write!(f, "finite({k})"),
            Reach::Infinite => write!(f, "infinite"),
        }
    }
}

/// Whether `t` reaches finitely many states, with their number.
pub fn reach_finite(c: &TermCoalgebra, t: &UnarySignatureTerm) -> Result<Reach> {
    c.check_term(t)?;
    let (tail, cycle) = rho(c, &t.generator)?;
    let cycle_len: usize = cycle
        .iter()
        .map(|x| c.step_of(x).map(|s| s.word.len()))
        .sum::<Result<usize>>()?;
    if cycle_len > 0 {
        return Ok(Reach::Infinite);
    }
    let mut seen = BTreeSet::new();
    let mut state = t.clone();
    for _ in 0..=tail.len() + cycle.len() {
        seen.insert(c.normalize(&state));
        state = c.apply(&state)?.1;
    }
    Ok(Reach::Finite(seen.len()))
}

/// A generator map `X → T Y`, extended to terms as an algebra morphism.
pub type GeneratorMap = BTreeMap<String, UnarySignatureTerm>;

/// `f(w(x)) = w(f(x))`.
pub fn image(f: &GeneratorMap, t: &UnarySignatureTerm) -> Result<UnarySignatureTerm> {
    f.get(&t.generator)
        .map(|fx| fx.apply(&t.word))
        .ok_or_else(|| Error::invalid("morphism", format!("generator {:?} is not mapped", t.generator)))
}

fn check_map(c: &TermCoalgebra, d: &TermCoalgebra, f: &GeneratorMap) -> Result<()> {
    for x in c.generators() {
        let fx = f
            .get(x)
            .ok_or_else(|| Error::invalid("morphism", format!("generator {x:?} is not mapped")))?;
        if d.step_of(&fx.generator).is_err() {
            return Err(Error::invalid(
                format!("morphism.{x}"),
                format!("unknown target generator {:?}", fx.generator),
            ));
        }
    }
    if let Some(extra) = f.keys().find(|k| c.step_of(k).is_err()) {
        return Err(Error::invalid("morphism", format!("unknown source generator {extra:?}")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorphismViolation {
    Output {
        generator: String,
        expected: u64,
        found: u64,
    },
    Successor {
        generator: String,
        via_target: UnarySignatureTerm,
        via_source: UnarySignatureTerm,
    },
}

impl fmt::Display for MorphismViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorphismViolation::Output {
                generator,
                expected,
                found,
            } => write!(f, "generator {generator}: output {found} should be {expected}"),
            MorphismViolation::Successor {
                generator,
                via_target,
                via_source,
            } => write!(
                f,
                "generator {generator}: successor of the image is {via_target} but image of the successor is {via_source}"
            ),
        }
    }
}

/// The square `d · f = F f · c` on generators, which suffices by freeness.
pub fn check_morphism_on_generators(
    c: &TermCoalgebra,
    d: &TermCoalgebra,
    f: &GeneratorMap,
) -> Result<Option<MorphismViolation>> {
    check_map(c, d, f)?;
    for x in c.generators() {
        let t = UnarySignatureTerm::generator(x.clone());
        let (n, next) = c.apply(&t)?;
        let (m, next_d) = d.apply(&f[x])?;
        if n != m {
            return Ok(Some(MorphismViolation::Output {
                generator: x.clone(),
                expected: n,
                found: m,
            }));
        }
        let mapped = image(f, &next)?;
        if !d.terms_equal(&next_d, &mapped) {
            return Ok(Some(MorphismViolation::Successor {
                generator: x.clone(),
                via_target: next_d,
                via_source: mapped,
            }));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Invariance {
    pub source: UBound,
    pub target: UBound,
}

impl Invariance {
    pub fn holds(&self) -> bool {
        self.source.is_bounded() == self.target.is_bounded()
    }
}

/// Compares the u-boundedness of `t` and `f(t)` across a verified morphism.
pub fn check_u_boundedness_invariance(
    c: &TermCoalgebra,
    d: &TermCoalgebra,
    f: &GeneratorMap,
    t: &UnarySignatureTerm,
) -> Result<Invariance> {
    if let Some(v) = check_morphism_on_generators(c, d, f)? {
        return Err(Error::Precondition(format!("not a coalgebra morphism: {v}")));
    }
    Ok(Invariance {
        source: u_bounded(c, t)?,
        target: u_bounded(d, &image(f, t)?)?,
    })
}

/// `a(x) = (0, u(x))`.
pub fn successor_u() -> TermCoalgebra {
    TermCoalgebra::from_steps(&[("x", 0, "u", "x")]).expect("valid fixture")
}

/// `b(y) = (0, v(y))`.
pub fn successor_v() -> TermCoalgebra {
    TermCoalgebra::from_steps(&[("y", 0, "v", "y")]).expect("valid fixture")
}

/// One generator `z` with `u(z) = v(z)` and `p([w(z)]) = (|w|, [uw(z)])`.
pub fn length_quotient() -> TermCoalgebra {
    TermCoalgebra::from_steps(&[("z", 0, "u", "z")])
        .expect("valid fixture")
        .with_congruence(Congruence::LengthOnly)
}

/// `a(x) = x`: every term reaches only itself.
pub fn identity_loop() -> TermCoalgebra {
    TermCoalgebra::from_steps(&[("x", 0, "", "x")]).expect("valid fixture")
}

/// `b(y) = u(y)`: the map `t ↦ u(t)`.
pub fn u_shift() -> TermCoalgebra {
    TermCoalgebra::from_steps(&[("y", 0, "u", "y")]).expect("valid fixture")
}

/// The universe of the exhaustive chain search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_generators: usize,
    pub max_word: usize,
    pub max_chain: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_generators: 2,
            max_word: 2,
            max_chain: 2,
        }
    }
}

/// Shape of a chain relating two terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Chain {
    /// `f: A → B` with `f(x) = y`, or `B → A` with `g(y) = x`.
    Direct { forward: bool, map: GeneratorMap },
    /// `A → C ← B` with `f(x) = g(y)`.
    Cospan {
        middle: TermCoalgebra,
        left: GeneratorMap,
        right: GeneratorMap,
    },
    /// `A ← C → B` with `f(t) = x` and `g(t) = y` for some `t`.
    Span {
        middle: TermCoalgebra,
        left: GeneratorMap,
        right: GeneratorMap,
        apex: UnarySignatureTerm,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainSearch {
    pub bounds: SearchBounds,
    pub coalgebras: usize,
    pub morphisms: usize,
    pub found: Option<Chain>,
}

/// All words over `{u, v}` of length ≤ `max`, shortest first.
pub fn words_up_to(max: usize) -> Vec<Vec<Letter>> {
    let mut all = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max {
        let next: Vec<Vec<Letter>> = layer
            .iter()
            .flat_map(|w: &Vec<Letter>| {
                [Letter::U, Letter::V].into_iter().map(move |l| {
                    let mut w = w.clone();
                    w.push(l);
                    w
                })
            })
            .collect();
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

/// Every free coalgebra on generators `c0, c1, …` (at most `bounds.max_generators`)
/// whose outputs and successor words are bounded by `bounds.max_word`.
pub fn enumerate_coalgebras(bounds: &SearchBounds) -> Vec<TermCoalgebra> {
    let words = words_up_to(bounds.max_word);
    let mut out = Vec::new();
    for g in 1..=bounds.max_generators {
        let names: Vec<String> = (0..g).map(|i| format!("c{i}")).collect();
        let choices: Vec<(u64, &Vec<Letter>, &String)> = (0..=bounds.max_word as u64)
            .flat_map(|n| {
                let names = &names;
                words.iter().flat_map(move |w| names.iter().map(move |to| (n, w, to)))
            })
            .collect();
        let total = choices.len().pow(g as u32);
        for mut code in 0..total {
            let mut structure = BTreeMap::new();
            for name in &names {
                let (n, w, to) = choices[code % choices.len()];
                code /= choices.len();
                structure.insert(name.clone(), GeneratorStep::new(n, w.clone(), to.clone()));
            }
            out.push(TermCoalgebra::new(names.clone(), structure, Congruence::Free).expect("well formed"));
        }
    }
    out
}

/// Every morphism `c → d` whose generator images have words of length ≤ `max_word`.
pub fn enumerate_morphisms(c: &TermCoalgebra, d: &TermCoalgebra, max_word: usize) -> Vec<GeneratorMap> {
    let targets: Vec<UnarySignatureTerm> = words_up_to(max_word)
        .into_iter()
        .flat_map(|w| {
            d.generators()
                .iter()
                .map(move |y| UnarySignatureTerm::new(w.clone(), y.clone()))
        })
        .collect();
    let xs = c.generators();
    let total = targets.len().pow(xs.len() as u32);
    let mut out = Vec::new();
    for mut code in 0..total {
        let mut f = GeneratorMap::new();
        for x in xs {
            f.insert(x.clone(), targets[code % targets.len()].clone());
            code /= targets.len();
        }
        if let Ok(None) = check_morphism_on_generators(c, d, &f) {
            out.push(f);
        }
    }
    out
}

/// Searches for a chain of at most two morphisms relating `x ∈ A` and `y ∈ B`
/// through free coalgebras inside `bounds`. Finding none is evidence within
/// the bounded universe only.
pub fn search_chains(
    a: &TermCoalgebra,
    x: &UnarySignatureTerm,
    b: &TermCoalgebra,
    y: &UnarySignatureTerm,
    bounds: SearchBounds,
) -> Result<ChainSearch> {
    a.check_term(x)?;
    b.check_term(y)?;
    if bounds.max_chain == 0 || bounds.max_chain > 2 {
        return Err(Error::invalid("max-chain", "supported chain lengths are 1 and 2"));
    }
    let mut result = ChainSearch {
        bounds,
        coalgebras: 0,
        morphisms: 0,
        found: None,
    };
    for (forward, src, dst, s, t) in [(true, a, b, x, y), (false, b, a, y, x)] {
        let maps = enumerate_morphisms(src, dst, bounds.max_word);
        result.morphisms += maps.len();
        if let Some(map) = maps
            .into_iter()
            .find(|f| image(f, s).map(|fs| dst.terms_equal(&fs, t)).unwrap_or(false))
        {
            result.found = Some(Chain::Direct { forward, map });
            return Ok(result);
        }
    }
    if bounds.max_chain < 2 {
        return Ok(result);
    }
    for middle in enumerate_coalgebras(&bounds) {
        result.coalgebras += 1;
        let into_from_a = enumerate_morphisms(a, &middle, bounds.max_word);
        let into_from_b = enumerate_morphisms(b, &middle, bounds.max_word);
        result.morphisms += into_from_a.len() + into_from_b.len();
        for f in &into_from_a {
            let fx = middle.normalize(&image(f, x)?);
            if let Some(g) = into_from_b
                .iter()
                .find(|g| image(g, y).map(|gy| middle.normalize(&gy) == fx).unwrap_or(false))
            {
                result.found = Some(Chain::Cospan {
                    middle: middle.clone(),
                    left: f.clone(),
                    right: g.clone(),
                });
                return Ok(result);
            }
        }
        let onto_a = enumerate_morphisms(&middle, a, bounds.max_word);
        let onto_b = enumerate_morphisms(&middle, b, bounds.max_word);
        result.morphisms += onto_a.len() + onto_b.len();
        // f(w(c)) = x forces w = ε, so the apex is a generator
        for c in middle.generators() {
            let apex = UnarySignatureTerm::generator(c.clone());
            for f in onto_a.iter().filter(|f| a.terms_equal(&f[c], x)) {
                if let Some(g) = onto_b.iter().find(|g| b.terms_equal(&g[c], y)) {
                    result.found = Some(Chain::Span {
                        middle: middle.clone(),
                        left: f.clone(),
                        right: g.clone(),
                        apex,
                    });
                    return Ok(result);
                }
            }
        }
    }
    Ok(result)
}

/// A random free coalgebra on generators `y0, y1, …`.
pub fn random_coalgebra<R: Rng + ?Sized>(
    rng: &mut R,
    generators: usize,
    max_out: u64,
    max_word: usize,
) -> TermCoalgebra {
    let names: Vec<String> = (0..generators).map(|i| format!("y{i}")).collect();
    let structure = names
        .iter()
        .map(|x| {
            let len = rng.gen_range(0..=max_word);
            let word = (0..len)
                .map(|_| if rng.gen_bool(0.5) { Letter::U } else { Letter::V })
                .collect();
            let to = names[rng.gen_range(0..names.len())].clone();
            (x.clone(), GeneratorStep::new(rng.gen_range(0..=max_out), word, to))
        })
        .collect();
    TermCoalgebra::new(names, structure, Congruence::Free).expect("well formed")
}

fn random_word<R: Rng + ?Sized>(rng: &mut R, max_len: usize) -> Vec<Letter> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| if rng.gen_bool(0.5) { Letter::U } else { Letter::V })
        .collect()
}

/// A verified morphism `f: C → D` with a sample term of `C`.
#[derive(Debug, Clone)]
pub struct RandomMorphism {
    pub source: TermCoalgebra,
    pub target: TermCoalgebra,
    pub map: GeneratorMap,
    pub term: UnarySignatureTerm,
}

/// Builds `C` from a random `D` by relabelling its generators (`xᵢ ↦ yᵢ`)
/// and adding generators `x ↦ w(y)` whose structure is forced by the
/// morphism square: `c(x) = (n_y + |w|, (w·w_y)(y'))` where `y' ` is
/// relabelled back.
pub fn random_morphism<R: Rng + ?Sized>(rng: &mut R, max_word: usize) -> RandomMorphism {
    let size = rng.gen_range(1..=3);
    let target = random_coalgebra(rng, size, 3, max_word);
    let ys = target.generators().to_vec();
    let relabel = |y: &str| format!("x{}", &y[1..]);
    let mut generators: Vec<String> = ys.iter().map(|y| relabel(y)).collect();
    let mut structure = BTreeMap::new();
    let mut map = GeneratorMap::new();
    for y in &ys {
        let s = &target.structure()[y];
        structure.insert(relabel(y), GeneratorStep::new(s.out, s.word.clone(), relabel(&s.to)));
        map.insert(relabel(y), UnarySignatureTerm::generator(y.clone()));
    }
    for i in 0..rng.gen_range(0..=2) {
        let name = format!("e{i}");
        let y = &ys[rng.gen_range(0..ys.len())];
        let w = random_word(rng, max_word);
        let s = &target.structure()[y];
        let mut word = w.clone();
        word.extend(&s.word);
        structure.insert(
            name.clone(),
            GeneratorStep::new(s.out + w.len() as u64, word, relabel(&s.to)),
        );
        map.insert(name.clone(), UnarySignatureTerm::new(w, y.clone()));
        generators.push(name);
    }
    let source = TermCoalgebra::new(generators, structure, Congruence::Free).expect("well formed");
    let gens = source.generators();
    let term = UnarySignatureTerm::new(random_word(rng, max_word), gens[rng.gen_range(0..gens.len())].clone());
    RandomMorphism {
        source,
        target,
        map,
        term,
    }
}
