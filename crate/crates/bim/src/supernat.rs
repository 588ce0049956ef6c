//! Supernatural numbers and division sequences.
//!
//! A supernatural number is a formal product of prime powers with exponents
//! in ℕ ∪ {∞}. Only finite descriptions (finitely many primes with non-zero
//! exponent) are accepted as first-class values, which keeps equality,
//! divisibility, and interleaving decidable. Division sequences backed by an
//! explicit finite prefix or by a user-supplied generator cannot determine
//! an ideal, so the operations on them return three-valued [`Verdict`]s
//! rather than pretending to decide.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::{BigUint, Integer, One, Zero};

use crate::error::{Error, Result};
use crate::Verdict;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exponent {
    Finite(u32),
    Infinite,
}

impl Exponent {
    fn at_least(self, other: Exponent) -> bool {
        match (self, other) {
            (Exponent::Infinite, _) => true,
            (Exponent::Finite(_), Exponent::Infinite) => false,
            (Exponent::Finite(a), Exponent::Finite(b)) => a >= b,
        }
    }

    fn max(self, other: Exponent) -> Exponent {
        if self.at_least(other) {
            self
        } else {
            other
        }
    }
}

/// A supernatural number with finite description; unlisted primes have
/// exponent zero and listed exponents are non-zero.
///
/// ```
/// use bim::supernat::{l_contains, Supernatural};
///
/// let n = Supernatural::parse("2^inf * 3^2")?;
/// assert!(l_contains(&n, 5, 72)?);   // 72 = 2^3 · 3^2
/// assert!(!l_contains(&n, 1, 27)?);  // 3-adic valuation capped at 2
/// # Ok::<(), bim::Error>(())
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Supernatural {
    factors: BTreeMap<u64, Exponent>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn factorize_u64(mut n: u64) -> BTreeMap<u64, u32> {
    let mut out = BTreeMap::new();
    let mut d = 2u64;
    while d * d <= n {
        while n.is_multiple_of(d) {
            *out.entry(d).or_insert(0) += 1;
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        *out.entry(n).or_insert(0) += 1;
    }
    out
}

/// Trial-division factorization of a big term; fails loudly once a prime
/// factor would exceed the scan bound instead of guessing.
fn factorize_biguint(n: &BigUint) -> Result<BTreeMap<u64, u32>> {
    const BOUND: u64 = 1_000_000;
    let mut out = BTreeMap::new();
    let mut n = n.clone();
    let mut d = 2u64;
    while d <= BOUND {
        let big_d = BigUint::from(d);
        if big_d.pow(2) > n {
            break;
        }
        while (&n % &big_d).is_zero() {
            *out.entry(d).or_insert(0) += 1;
            n /= &big_d;
        }
        d += 1;
    }
    if n > BigUint::one() {
        let small: u64 = n
            .clone()
            .try_into()
            .map_err(|_| Error::resource("term has a prime factor beyond the factorization bound"))?;
        if BigUint::from(small) > BigUint::from(BOUND).pow(2) {
            return Err(Error::resource(
                "term has a prime factor beyond the factorization bound",
            ));
        }
        *out.entry(small).or_insert(0) += 1;
    }
    Ok(out)
}

impl Supernatural {
    pub fn new(factors: impl IntoIterator<Item = (u64, Exponent)>) -> Result<Supernatural> {
        let mut map = BTreeMap::new();
        for (p, e) in factors {
            if !is_prime(p) {
                return Err(Error::domain(format!("{p} is not prime")));
            }
            if e == Exponent::Finite(0) {
                continue;
            }
            if map.insert(p, e).is_some() {
                return Err(Error::domain(format!("prime {p} listed twice")));
            }
        }
        Ok(Supernatural { factors: map })
    }

    pub fn from_natural(n: u64) -> Result<Supernatural> {
        if n == 0 {
            return Err(Error::domain("zero is not a supernatural number"));
        }
        Ok(Supernatural {
            factors: factorize_u64(n)
                .into_iter()
                .map(|(p, e)| (p, Exponent::Finite(e)))
                .collect(),
        })
    }

    /// One (the empty product).
    pub fn one() -> Supernatural {
        Supernatural { factors: BTreeMap::new() }
    }

    pub fn primes(&self) -> impl Iterator<Item = (u64, Exponent)> + '_ {
        self.factors.iter().map(|(&p, &e)| (p, e))
    }

    pub fn exponent_of(&self, p: u64) -> Exponent {
        self.factors.get(&p).copied().unwrap_or(Exponent::Finite(0))
    }

    pub fn is_finite(&self) -> bool {
        self.factors.values().all(|e| matches!(e, Exponent::Finite(_)))
    }

    pub fn is_infinite(&self) -> bool {
        !self.is_finite()
    }

    /// Pointwise exponent comparison; ∞ absorbs.
    pub fn divides(&self, other: &Supernatural) -> bool {
        self.factors
            .iter()
            .all(|(&p, &e)| other.exponent_of(p).at_least(e))
    }

    pub fn lcm(&self, other: &Supernatural) -> Supernatural {
        let mut factors = self.factors.clone();
        for (&p, &e) in &other.factors {
            let cur = factors.get(&p).copied().unwrap_or(Exponent::Finite(0));
            factors.insert(p, cur.max(e));
        }
        Supernatural { factors }
    }

    /// The value as an ordinary natural number, for finite supernaturals.
    pub fn to_biguint(&self) -> Option<BigUint> {
        let mut out = BigUint::one();
        for (&p, &e) in &self.factors {
            match e {
                Exponent::Finite(k) => out *= BigUint::from(p).pow(k),
                Exponent::Infinite => return None,
            }
        }
        Some(out)
    }

    /// Does `q` (a natural number) divide the supernatural?
    pub fn divisible_by(&self, q: u64) -> bool {
        factorize_u64(q)
            .into_iter()
            .all(|(p, v)| self.exponent_of(p).at_least(Exponent::Finite(v)))
    }

    /// The k-th canonical term: product over the first k listed primes p of
    /// p^min(k, exp(p)). Terms may stutter once a finite supernatural is
    /// exhausted.
    pub fn term(&self, k: usize) -> BigUint {
        let mut out = BigUint::one();
        for (i, (&p, &e)) in self.factors.iter().enumerate() {
            if i >= k {
                break;
            }
            let exp = match e {
                Exponent::Finite(f) => (k as u32).min(f),
                Exponent::Infinite => k as u32,
            };
            out *= BigUint::from(p).pow(exp);
        }
        out
    }

    /// Number of formula steps after which every prime is listed and every
    /// finite exponent relevant to `cap` has frozen.
    pub(crate) fn freeze_index(&self, cap: u32) -> usize {
        self.factors.len().max(cap as usize) + 1
    }

    /// Parses the literal grammar `2^inf * 3^2 * 7^1` (whitespace
    /// insensitive, primes strictly increasing, exponent `inf` or a positive
    /// integer). `1` denotes the empty product.
    pub fn parse(text: &str) -> Result<Supernatural> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let col = |rest: &str| compact.len() - rest.len() + 1;
        if compact.is_empty() {
            return Err(Error::parse(1, 1, "empty supernatural literal"));
        }
        if compact == "1" {
            return Ok(Supernatural::one());
        }
        let mut factors = Vec::new();
        let mut last_prime = 0u64;
        let mut rest = compact.as_str();
        loop {
            let digits_end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
            if digits_end == 0 {
                return Err(Error::parse(1, col(rest), "expected a prime"));
            }
            let p: u64 = rest[..digits_end]
                .parse()
                .map_err(|_| Error::parse(1, col(rest), "prime does not fit in 64 bits"))?;
            if !is_prime(p) {
                return Err(Error::parse(1, col(rest), format!("{p} is not prime")));
            }
            if p <= last_prime {
                return Err(Error::parse(1, col(rest), "primes must be strictly increasing"));
            }
            last_prime = p;
            rest = &rest[digits_end..];
            let Some(after_caret) = rest.strip_prefix('^') else {
                return Err(Error::parse(1, col(rest), "expected `^` after the prime"));
            };
            rest = after_caret;
            let e = if let Some(after_inf) = rest.strip_prefix("inf") {
                rest = after_inf;
                Exponent::Infinite
            } else {
                let digits_end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
                if digits_end == 0 {
                    return Err(Error::parse(1, col(rest), "expected exponent `inf` or a positive integer"));
                }
                let e: u32 = rest[..digits_end]
                    .parse()
                    .map_err(|_| Error::parse(1, col(rest), "exponent too large"))?;
                if e == 0 {
                    return Err(Error::parse(1, col(rest), "exponents must be positive"));
                }
                rest = &rest[digits_end..];
                Exponent::Finite(e)
            };
            factors.push((p, e));
            if rest.is_empty() {
                break;
            }
            let Some(after_star) = rest.strip_prefix('*') else {
                return Err(Error::parse(1, col(rest), "expected `*` between factors"));
            };
            rest = after_star;
        }
        Supernatural::new(factors)
    }
}

impl fmt::Display for Supernatural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(&p, &e)| match e {
                Exponent::Finite(k) => format!("{p}^{k}"),
                Exponent::Infinite => format!("{p}^inf"),
            })
            .collect();
        f.write_str(&parts.join(" * "))
    }
}

/// A chain s_1 | s_2 | s_3 | ... with only proper divisions, backed by a
/// supernatural number (the canonical generator), an explicit finite prefix,
/// or a user-supplied generator bounded by a term horizon.
#[derive(Clone)]
pub enum DivisionSequence {
    Canonical(Supernatural),
    Prefix(Vec<BigUint>),
    Generator {
        f: Arc<dyn Fn(usize) -> BigUint + Send + Sync>,
        horizon: usize,
    },
}

impl fmt::Debug for DivisionSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivisionSequence::Canonical(n) => write!(f, "DivisionSequence::Canonical({n})"),
            DivisionSequence::Prefix(terms) => write!(f, "DivisionSequence::Prefix({terms:?})"),
            DivisionSequence::Generator { horizon, .. } => {
                write!(f, "DivisionSequence::Generator(horizon={horizon})")
            }
        }
    }
}

/// The supernatural number read off a division sequence, flagged `exact`
/// only when the sequence determines it (the canonical generator). Prefix
/// and horizon-bounded sequences give a lower bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupernaturalBound {
    pub value: Supernatural,
    pub exact: bool,
}

/// Canonical division sequence of a supernatural number: the stutter-free
/// term chain. Requires at least one prime; for finite inputs the chain is
/// finite and ends at the number itself.
pub fn from_supernatural(n: &Supernatural) -> Result<DivisionSequence> {
    if n.factors.is_empty() {
        return Err(Error::domain(
            "the empty supernatural number has no division sequence",
        ));
    }
    Ok(DivisionSequence::Canonical(n.clone()))
}

impl DivisionSequence {
    pub fn prefix(terms: Vec<BigUint>) -> Result<DivisionSequence> {
        if terms.is_empty() {
            return Err(Error::domain("a division sequence needs at least one term"));
        }
        if terms[0] <= BigUint::one() {
            return Err(Error::domain("terms must exceed 1"));
        }
        for w in terms.windows(2) {
            if !(&w[1] % &w[0]).is_zero() || w[0] == w[1] {
                return Err(Error::domain(
                    "each term must properly divide the next",
                ));
            }
        }
        Ok(DivisionSequence::Prefix(terms))
    }

    pub fn generator(
        f: impl Fn(usize) -> BigUint + Send + Sync + 'static,
        horizon: usize,
    ) -> DivisionSequence {
        DivisionSequence::Generator { f: Arc::new(f), horizon }
    }

    /// Up to `count` terms, stutter-free. Canonical sequences over a finite
    /// supernatural end at the number itself; prefixes end at their last
    /// term.
    pub fn terms(&self, count: usize) -> Result<Vec<BigUint>> {
        match self {
            DivisionSequence::Canonical(n) => {
                // Infinite supernaturals never stutter (some exponent keeps
                // growing); a stutter therefore ends the finite chain at n.
                let mut out: Vec<BigUint> = Vec::new();
                let mut k = 1usize;
                while out.len() < count {
                    let t = n.term(k);
                    if Some(&t) != out.last() {
                        out.push(t);
                    } else {
                        debug_assert!(n.is_finite());
                        break;
                    }
                    k += 1;
                }
                Ok(out)
            }
            DivisionSequence::Prefix(terms) => Ok(terms.iter().take(count).cloned().collect()),
            DivisionSequence::Generator { f, horizon } => {
                let take = count.min(*horizon);
                let mut out = Vec::with_capacity(take);
                for k in 1..=take {
                    let t = f(k);
                    if let Some(prev) = out.last() {
                        if !(&t % prev as &BigUint).is_zero() || &t == prev {
                            return Err(Error::domain(
                                "generator terms must form a strict division chain",
                            ));
                        }
                    }
                    out.push(t);
                }
                Ok(out)
            }
        }
    }

    fn is_exact(&self) -> bool {
        matches!(self, DivisionSequence::Canonical(_))
    }

    /// Per prime, the supremum of the p-adic valuations of the terms.
    pub fn supernatural_of(&self) -> Result<SupernaturalBound> {
        match self {
            DivisionSequence::Canonical(n) => Ok(SupernaturalBound { value: n.clone(), exact: true }),
            DivisionSequence::Prefix(terms) => {
                let value = supernatural_of_terms(terms)?;
                Ok(SupernaturalBound { value, exact: false })
            }
            DivisionSequence::Generator { horizon, .. } => {
                let terms = self.terms(*horizon)?;
                let value = supernatural_of_terms(&terms)?;
                Ok(SupernaturalBound { value, exact: false })
            }
        }
    }
}

fn supernatural_of_terms(terms: &[BigUint]) -> Result<Supernatural> {
    let mut exps: BTreeMap<u64, u32> = BTreeMap::new();
    for t in terms {
        for (p, v) in factorize_biguint(t)? {
            let cur = exps.entry(p).or_insert(0);
            *cur = (*cur).max(v);
        }
    }
    Supernatural::new(exps.into_iter().map(|(p, v)| (p, Exponent::Finite(v))))
}

/// Do the two sequences generate the same ideal (each term of either divides
/// some term of the other)? Decided through the supernatural numbers when
/// both sequences are canonical. A finite prefix can refute interleaving
/// against a canonical sequence (a term that does not divide the
/// supernatural never will) but can never confirm it, and two prefixes
/// decide nothing beyond structural equality, so those cases return
/// `Unknown` rather than a guess.
pub fn interleaved(a: &DivisionSequence, b: &DivisionSequence) -> Result<Verdict> {
    match (a, b) {
        (DivisionSequence::Canonical(x), DivisionSequence::Canonical(y)) => {
            Ok(Verdict::from_bool(x.divides(y) && y.divides(x)))
        }
        (DivisionSequence::Canonical(n), other) | (other, DivisionSequence::Canonical(n))
            if !other.is_exact() =>
        {
            let terms = match other {
                DivisionSequence::Prefix(terms) => terms.clone(),
                DivisionSequence::Generator { horizon, .. } => other.terms(*horizon)?,
                DivisionSequence::Canonical(_) => unreachable!("matched inexact"),
            };
            for t in &terms {
                let factors = factorize_biguint(t)?;
                let divides_n = factors
                    .iter()
                    .all(|(&p, &v)| n.exponent_of(p).at_least(Exponent::Finite(v)));
                if !divides_n {
                    return Ok(Verdict::False);
                }
            }
            Ok(Verdict::Unknown)
        }
        (x, y) => {
            // Structural identity interleaves trivially; anything else about
            // two underdetermined sequences is unknown.
            let same = match (x, y) {
                (DivisionSequence::Prefix(tx), DivisionSequence::Prefix(ty)) => tx == ty,
                (
                    DivisionSequence::Generator { f: fx, horizon: hx },
                    DivisionSequence::Generator { f: fy, horizon: hy },
                ) => Arc::ptr_eq(fx, fy) && hx == hy,
                _ => false,
            };
            Ok(if same { Verdict::True } else { Verdict::Unknown })
        }
    }
}

/// Equality of supernatural numbers.
pub fn sn_equals(a: &Supernatural, b: &Supernatural) -> bool {
    a == b
}

/// Divisibility of supernatural numbers (pointwise on exponents).
pub fn sn_divides(a: &Supernatural, b: &Supernatural) -> bool {
    a.divides(b)
}

/// Least common multiple (pointwise maximum of exponents).
pub fn sn_lcm(a: &Supernatural, b: &Supernatural) -> Supernatural {
    a.lcm(b)
}

/// Membership of p/q in the generalized Łukasiewicz algebra Ł_{n+1}: the
/// fraction must be reduced, lie in [0, 1], and every prime power in q must
/// be dominated by the prime's exponent in n (so finite exponents cap the
/// admissible denominator valuations).
pub fn l_contains(n: &Supernatural, p: u64, q: u64) -> Result<bool> {
    if q == 0 {
        return Err(Error::domain("denominator must be positive"));
    }
    if p > q {
        return Err(Error::domain("fraction must lie in [0, 1]"));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::domain("fraction must be reduced"));
    }
    Ok(factorize_u64(q)
        .into_iter()
        .all(|(r, v)| n.exponent_of(r).at_least(Exponent::Finite(v))))
}
