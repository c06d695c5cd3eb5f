//! Exact semirings over which every automaton in this crate is parameterized.
//!
//! A semiring is a type implementing [`Semiring`]. The five shipped instances
//! are [`Boolean`], [`Natural`], [`Integer`], [`Rational`] and [`Tropical`];
//! all arithmetic is exact and arbitrary precision. New semirings are added
//! at compile time by implementing the trait.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Name and capability flags of a semiring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SemiringSpec {
    pub name: &'static str,
    /// The semiring is a ring.
    pub has_additive_inverses: bool,
    /// The semiring is a field.
    pub has_multiplicative_inverses: bool,
    /// The carrier is finite.
    pub is_locally_finite: bool,
    pub supports_equivalence_decision: bool,
    pub supports_witness_construction: bool,
}

impl SemiringSpec {
    /// Field ⇒ ring and witness construction ⇒ equivalence decision.
    pub fn flags_consistent(&self) -> bool {
        (!self.has_multiplicative_inverses || self.has_additive_inverses)
            && (!self.supports_witness_construction || self.supports_equivalence_decision)
    }

    pub fn require(&self, capability: &'static str) -> Result<()> {
        let ok = match capability {
            "has_additive_inverses" => self.has_additive_inverses,
            "has_multiplicative_inverses" => self.has_multiplicative_inverses,
            "is_locally_finite" => self.is_locally_finite,
            "supports_equivalence_decision" => self.supports_equivalence_decision,
            "supports_witness_construction" => self.supports_witness_construction,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Unsupported {
                semiring: self.name.to_string(),
                capability,
            })
        }
    }
}

/// A commutative-additive semiring with exact elements.
///
/// Elements are immutable values. `Display` is the canonical serialization
/// and [`Semiring::parse`] accepts it back.
pub trait Semiring: Clone + Eq + Hash + Debug + Display + Send + Sync + 'static {
    const SPEC: SemiringSpec;

    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    fn parse(text: &str) -> Result<Self>;

    /// Draws an element for randomized law checks and property tests.
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// The whole carrier, when it is finite.
    fn carrier() -> Option<Vec<Self>> {
        None
    }

    /// Canonical image in ℚ for semirings that embed into it.
    fn to_rational(&self) -> Option<Rational> {
        None
    }

    fn from_u64(n: u64) -> Self {
        // repeated doubling keeps this exact for every semiring
        let mut acc = Self::zero();
        let mut pow = Self::one();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.add(&pow);
            }
            pow = pow.add(&pow);
            n >>= 1;
        }
        acc
    }
}

/// Σ over an iterator of elements.
pub fn sum<'a, S: Semiring>(items: impl IntoIterator<Item = &'a S>) -> S {
    items.into_iter().fold(S::zero(), |acc, x| acc.add(x))
}

/// Canonical embedding ℕ, ℤ (and ℚ itself) into ℚ.
pub fn embed_to_rationals<S: Semiring>(x: &S) -> Result<Rational> {
    x.to_rational().ok_or(Error::Unsupported {
        semiring: S::SPEC.name.to_string(),
        capability: "supports_equivalence_decision",
    })
}

// ---------------------------------------------------------------------------
// Boolean

/// The Boolean semiring ({0,1}, ∨, ∧, 0, 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Boolean(pub bool);

impl Display for Boolean {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.0 { "1" } else { "0" })
    }
}

impl Semiring for Boolean {
    const SPEC: SemiringSpec = SemiringSpec {
        name: "B",
        has_additive_inverses: false,
        has_multiplicative_inverses: false,
        is_locally_finite: true,
        supports_equivalence_decision: true,
        supports_witness_construction: false,
    };

    fn zero() -> Self {
        Boolean(false)
    }
    fn one() -> Self {
        Boolean(true)
    }
    fn add(&self, other: &Self) -> Self {
        Boolean(self.0 || other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Boolean(self.0 && other.0)
    }
    fn parse(text: &str) -> Result<Self> {
        match text.trim() {
            "0" | "0/1" | "false" => Ok(Boolean(false)),
            "1" | "1/1" | "true" => Ok(Boolean(true)),
            other => Err(Error::Parse(format!("not a Boolean value: {other:?}"))),
        }
    }
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Boolean(rng.gen())
    }
    fn carrier() -> Option<Vec<Self>> {
        Some(vec![Boolean(false), Boolean(true)])
    }
}

// ---------------------------------------------------------------------------
// Rational (needed by the integer parsers below)

/// Exact rational number, always in lowest terms with positive denominator.
///
/// Values whose numerator and denominator fit in `i64` are stored inline;
/// larger ones fall back to a bignum. The choice is canonical, so derived
/// equality and hashing agree with numeric equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(i64, i64),
    Big(BigRational),
}

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Rational::from_big(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational::from_big(BigRational::from_integer(n.into()))
    }

    fn from_big(q: BigRational) -> Self {
        match (q.numer().to_i64(), q.denom().to_i64()) {
            (Some(n), Some(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(q)),
        }
    }

    /// Reduces `n/d` (with `d ≠ 0`) computed in `i128`.
    fn from_i128(n: i128, d: i128) -> Self {
        let g = num_integer::Integer::gcd(&n, &d);
        let (mut n, mut d) = (n / g, d / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(BigRational::new(n.into(), d.into()))),
        }
    }

    fn small(&self) -> Option<(i128, i128)> {
        match self.0 {
            Repr::Small(n, d) => Some((n as i128, d as i128)),
            Repr::Big(_) => None,
        }
    }

    fn big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw((*n).into(), (*d).into()),
            Repr::Big(q) => q.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => (*n).into(),
            Repr::Big(q) => q.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => (*d).into(),
            Repr::Big(q) => q.denom().clone(),
        }
    }

    pub fn as_big(&self) -> BigRational {
        self.big()
    }

    pub fn neg(&self) -> Self {
        match self.small() {
            Some((n, d)) => Rational::from_i128(-n, d),
            None => Rational::from_big(-self.big()),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Division; `None` when dividing by zero.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if let (Some((a, b)), Some((c, d))) = (self.small(), other.small()) {
            if let (Some(n), Some(m)) = (a.checked_mul(d), b.checked_mul(c)) {
                return Some(Rational::from_i128(n, m));
            }
        }
        Some(Rational::from_big(self.big() / other.big()))
    }

    pub fn inv(&self) -> Option<Self> {
        Rational::one().div(self)
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(q) => q.is_integer(),
        }
    }

    fn parse_loose(text: &str) -> Result<Self> {
        let text = text.trim();
        let (n, d) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text, "1"),
        };
        let numer = BigInt::from_str(n)
            .map_err(|_| Error::Parse(format!("not a rational number: {text:?}")))?;
        let denom = BigInt::from_str(d)
            .map_err(|_| Error::Parse(format!("not a rational number: {text:?}")))?;
        Rational::new(numer, denom)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self.small(), other.small()) {
            // |a·d| < 2^126, no overflow
            (Some((a, b)), Some((c, d))) => (a * d).cmp(&(c * b)),
            _ => self.big().cmp(&other.big()),
        }
    }
}

impl Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        }
    }
}

impl Semiring for Rational {
    const SPEC: SemiringSpec = SemiringSpec {
        name: "Q",
        has_additive_inverses: true,
        has_multiplicative_inverses: true,
        is_locally_finite: false,
        supports_equivalence_decision: true,
        supports_witness_construction: true,
    };

    fn zero() -> Self {
        Rational(Repr::Small(0, 1))
    }
    fn one() -> Self {
        Rational(Repr::Small(1, 1))
    }
    fn add(&self, other: &Self) -> Self {
        if let (Some((a, b)), Some((c, d))) = (self.small(), other.small()) {
            if b == d {
                return Rational::from_i128(a + c, b);
            }
            if let (Some(x), Some(y)) = (a.checked_mul(d), c.checked_mul(b)) {
                if let Some(n) = x.checked_add(y) {
                    return Rational::from_i128(n, b * d);
                }
            }
        }
        Rational::from_big(self.big() + other.big())
    }
    fn mul(&self, other: &Self) -> Self {
        if let (Some((a, b)), Some((c, d))) = (self.small(), other.small()) {
            return Rational::from_i128(a * c, b * d);
        }
        Rational::from_big(self.big() * other.big())
    }
    fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }
    fn parse(text: &str) -> Result<Self> {
        Rational::parse_loose(text)
    }
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        if rng.gen_ratio(1, 10) {
            let n = BigInt::from(rng.gen::<i64>()) * BigInt::from(rng.gen::<u32>());
            let d = BigInt::from(rng.gen_range(1u64..=u64::MAX));
            Rational::from_big(BigRational::new(n, d))
        } else {
            let n = rng.gen_range(-20i64..=20);
            let d = rng.gen_range(1i64..=12);
            Rational::from_i128(n.into(), d.into())
        }
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

// ---------------------------------------------------------------------------
// Natural

/// Arbitrary-precision natural numbers (ℕ, +, ·, 0, 1).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Natural(pub BigUint);

impl Display for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Semiring for Natural {
    const SPEC: SemiringSpec = SemiringSpec {
        name: "N",
        has_additive_inverses: false,
        has_multiplicative_inverses: false,
        is_locally_finite: false,
        supports_equivalence_decision: true,
        supports_witness_construction: true,
    };

    fn zero() -> Self {
        Natural(BigUint::zero())
    }
    fn one() -> Self {
        Natural(BigUint::one())
    }
    fn add(&self, other: &Self) -> Self {
        Natural(&self.0 + &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Natural(&self.0 * &other.0)
    }
    fn parse(text: &str) -> Result<Self> {
        let q = Rational::parse_loose(text)?;
        if !q.is_integer() || q.numer().is_negative() {
            return Err(Error::Parse(format!("not a natural number: {text:?}")));
        }
        Ok(Natural(q.numer().magnitude().clone()))
    }
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        if rng.gen_ratio(1, 10) {
            Natural(BigUint::from(rng.gen::<u64>()) * BigUint::from(rng.gen::<u64>()))
        } else {
            Natural(BigUint::from(rng.gen_range(0u32..=20)))
        }
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(Rational::from_integer(BigInt::from(self.0.clone())))
    }
    fn from_u64(n: u64) -> Self {
        Natural(BigUint::from(n))
    }
}

// ---------------------------------------------------------------------------
// Integer

/// Arbitrary-precision integers (ℤ, +, ·, 0, 1).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Integer(pub BigInt);

impl Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Semiring for Integer {
    const SPEC: SemiringSpec = SemiringSpec {
        name: "Z",
        has_additive_inverses: true,
        has_multiplicative_inverses: false,
        is_locally_finite: false,
        supports_equivalence_decision: true,
        supports_witness_construction: true,
    };

    fn zero() -> Self {
        Integer(BigInt::zero())
    }
    fn one() -> Self {
        Integer(BigInt::one())
    }
    fn add(&self, other: &Self) -> Self {
        Integer(&self.0 + &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Integer(&self.0 * &other.0)
    }
    fn parse(text: &str) -> Result<Self> {
        let q = Rational::parse_loose(text)?;
        if !q.is_integer() {
            return Err(Error::Parse(format!("not an integer: {text:?}")));
        }
        Ok(Integer(q.numer().clone()))
    }
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        if rng.gen_ratio(1, 10) {
            Integer(BigInt::from(rng.gen::<i64>()) * BigInt::from(rng.gen::<i64>()))
        } else {
            Integer(BigInt::from(rng.gen_range(-20i32..=20)))
        }
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(Rational::from_integer(self.0.clone()))
    }
    fn from_u64(n: u64) -> Self {
        Integer(BigInt::from(n))
    }
}

// ---------------------------------------------------------------------------
// Tropical

/// The tropical semiring (ℕ ∪ {∞}, min, +, ∞, 0). `None` is ∞.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tropical(pub Option<BigUint>);

impl Tropical {
    pub fn infinity() -> Self {
        Tropical(None)
    }

    pub fn finite(n: u64) -> Self {
        Tropical(Some(BigUint::from(n)))
    }
}

impl Display for Tropical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            None => f.write_str("inf"),
            Some(n) => write!(f, "{n}"),
        }
    }
}

impl Semiring for Tropical {
    const SPEC: SemiringSpec = SemiringSpec {
        name: "tropical",
        has_additive_inverses: false,
        has_multiplicative_inverses: false,
        is_locally_finite: false,
        supports_equivalence_decision: false,
        supports_witness_construction: false,
    };

    fn zero() -> Self {
        Tropical(None)
    }
    fn one() -> Self {
        Tropical(Some(BigUint::zero()))
    }
    fn add(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (None, x) | (x, None) => Tropical(x.clone()),
            (Some(a), Some(b)) => Tropical(Some(a.min(b).clone())),
        }
    }
    fn mul(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Some(a), Some(b)) => Tropical(Some(a + b)),
            _ => Tropical(None),
        }
    }
    fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t == "inf" || t == "∞" {
            return Ok(Tropical(None));
        }
        Natural::parse(t)
            .map(|n| Tropical(Some(n.0)))
            .map_err(|_| Error::Parse(format!("not a tropical value: {text:?}")))
    }
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        match rng.gen_range(0..10) {
            0 | 1 => Tropical(None),
            2 => Tropical(Some(BigUint::from(rng.gen::<u64>()) * 3u32)),
            _ => Tropical(Some(BigUint::from(rng.gen_range(0u32..=50)))),
        }
    }
}

// ---------------------------------------------------------------------------
// Law checking

/// One semiring axiom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Law {
    AddAssociativity,
    AddCommutativity,
    AddIdentity,
    MulAssociativity,
    MulIdentity,
    LeftDistributivity,
    RightDistributivity,
    Annihilation,
    CapabilityFlags,
}

impl Law {
    pub fn name(self) -> &'static str {
        match self {
            Law::AddAssociativity => "additive associativity",
            Law::AddCommutativity => "additive commutativity",
            Law::AddIdentity => "additive identity",
            Law::MulAssociativity => "multiplicative associativity",
            Law::MulIdentity => "multiplicative identity",
            Law::LeftDistributivity => "left distributivity",
            Law::RightDistributivity => "right distributivity",
            Law::Annihilation => "zero annihilation",
            Law::CapabilityFlags => "capability flag consistency",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawViolation {
    pub law: Law,
    /// The operands (a, b, c) that exhibit the violation, rendered canonically.
    pub operands: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    Exhaustive,
    Randomized { seed: u64, samples: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawsReport {
    pub semiring: &'static str,
    pub mode: CheckMode,
    /// First witness per violated law, ordered by law.
    pub violations: Vec<LawViolation>,
}

impl LawsReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

impl Display for LawsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mode = match self.mode {
            CheckMode::Exhaustive => "exhaustive".to_string(),
            CheckMode::Randomized { seed, samples } => {
                format!("randomized samples={samples} seed={seed}")
            }
        };
        for v in &self.violations {
            writeln!(
                f,
                "semiring={} law={:?} operands=({}) mode={}",
                self.semiring,
                v.law.name(),
                v.operands.join(", "),
                mode
            )?;
        }
        Ok(())
    }
}

fn check_triple<S: Semiring>(a: &S, b: &S, c: &S, found: &mut Vec<LawViolation>) {
    let zero = S::zero();
    let one = S::one();
    let mut flag = |law: Law, ok: bool| {
        if !ok && !found.iter().any(|v| v.law == law) {
            found.push(LawViolation {
                law,
                operands: vec![a.to_string(), b.to_string(), c.to_string()],
            });
        }
    };
    flag(
        Law::AddAssociativity,
        a.add(b).add(c) == a.add(&b.add(c)),
    );
    flag(Law::AddCommutativity, a.add(b) == b.add(a));
    flag(Law::AddIdentity, a.add(&zero) == *a && zero.add(a) == *a);
    flag(
        Law::MulAssociativity,
        a.mul(b).mul(c) == a.mul(&b.mul(c)),
    );
    flag(Law::MulIdentity, a.mul(&one) == *a && one.mul(a) == *a);
    flag(
        Law::LeftDistributivity,
        a.mul(&b.add(c)) == a.mul(b).add(&a.mul(c)),
    );
    flag(
        Law::RightDistributivity,
        a.add(b).mul(c) == a.mul(c).add(&b.mul(c)),
    );
    flag(
        Law::Annihilation,
        a.mul(&zero) == zero && zero.mul(a) == zero,
    );
}

/// Checks every semiring axiom for `S`.
///
/// Finite carriers are checked exhaustively over all triples. Otherwise
/// `samples` random triples are drawn from a ChaCha generator seeded with
/// `seed`, which the report records for reproduction.
pub fn semiring_laws_check<S: Semiring>(samples: usize, seed: u64) -> LawsReport {
    let mut violations = Vec::new();
    if !S::SPEC.flags_consistent() {
        violations.push(LawViolation {
            law: Law::CapabilityFlags,
            operands: Vec::new(),
        });
    }
    let mode = match S::carrier() {
        Some(elems) => {
            for a in &elems {
                for b in &elems {
                    for c in &elems {
                        check_triple(a, b, c, &mut violations);
                    }
                }
            }
            CheckMode::Exhaustive
        }
        None => {
            let samples = samples.max(1);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let a = S::sample(&mut rng);
                let b = S::sample(&mut rng);
                let c = S::sample(&mut rng);
                check_triple(&a, &b, &c, &mut violations);
            }
            CheckMode::Randomized { seed, samples }
        }
    };
    violations.sort_by_key(|v| v.law);
    LawsReport {
        semiring: S::SPEC.name,
        mode,
        violations,
    }
}

/// Small-integer view used by diagnostics; `None` when out of `i64` range or non-integral.
pub fn rational_as_i64(q: &Rational) -> Option<i64> {
    if q.is_integer() {
        q.numer().to_i64()
    } else {
        None
    }
}

/// Sign of a rational: -1, 0 or 1.
pub fn rational_sign(q: &Rational) -> i8 {
    match q.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}
