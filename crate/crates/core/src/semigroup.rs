//! Numerical semigroups, submonoids of ℕ, and the dynamic-programming sieve
//! that every closed formula in this crate is checked against.

use std::fmt;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use num_integer::Integer;

use crate::arith::Int;
use crate::error::{Error, Result};

/// Default cap on the number of bits any single sieve may allocate.
pub const DEFAULT_MAX_SIEVE_BITS: u64 = 100_000_000;

/// Environment variable overriding [`DEFAULT_MAX_SIEVE_BITS`].
pub const MAX_SIEVE_ENV: &str = "SS_MAX_SIEVE";

/// The sieve cap in effect for this process, read once from `SS_MAX_SIEVE`.
pub fn max_sieve_bits() -> u64 {
    static LIMIT: OnceLock<u64> = OnceLock::new();
    *LIMIT.get_or_init(|| {
        std::env::var(MAX_SIEVE_ENV)
            .ok()
            .and_then(|v| v.trim().replace('_', "").parse().ok())
            .unwrap_or(DEFAULT_MAX_SIEVE_BITS)
    })
}

/// Checks that a sieve over `[0, bound]` fits the configured cap.
pub(crate) fn sieve_len(bound: u128) -> Result<usize> {
    let limit = max_sieve_bits();
    let len = bound.saturating_add(1);
    if len > limit as u128 {
        return Err(Error::SieveTooLarge {
            requested: len,
            limit,
        });
    }
    usize::try_from(len).map_err(|_| Error::Overflow("sieve length"))
}

/// An ordered, non-empty list of positive integers.
///
/// Order is kept because the Brauer bound depends on it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorSet {
    elements: Vec<u64>,
    gcd: u64,
}

impl GeneratorSet {
    pub fn new(elements: Vec<u64>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        if elements.contains(&0) {
            return Err(Error::NonPositiveGenerator(0));
        }
        let gcd = elements.iter().fold(0u64, |g, &a| g.gcd(&a));
        Ok(Self { elements, gcd })
    }

    /// Builds a generator set from wide integers, rejecting non-positive or
    /// out-of-range values.
    pub fn from_ints(values: &[Int]) -> Result<Self> {
        let elements = values
            .iter()
            .map(|&v| {
                if v <= 0 {
                    Err(Error::NonPositiveGenerator(v))
                } else {
                    u64::try_from(v).map_err(|_| Error::Overflow("generator"))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(elements)
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn gcd(&self) -> u64 {
        self.gcd
    }

    pub fn is_cofinite(&self) -> bool {
        self.gcd == 1
    }

    fn require_cofinite(&self) -> Result<()> {
        if self.is_cofinite() {
            Ok(())
        } else {
            Err(Error::NotCofinite { gcd: self.gcd })
        }
    }
}

/// Membership bitset over `[0, bound]`: bit `l` is set iff `l` is a
/// nonnegative integer combination of `gens`.
pub fn sieve_members(gens: &GeneratorSet, bound: u64) -> Result<FixedBitSet> {
    let len = sieve_len(bound as u128)?;
    let mut bits = FixedBitSet::with_capacity(len);
    bits.insert(0);
    let mut steps: Vec<usize> = gens
        .elements()
        .iter()
        .filter_map(|&a| usize::try_from(a).ok())
        .filter(|&a| a < len)
        .collect();
    steps.sort_unstable();
    steps.dedup();
    for &a in &steps {
        for l in a..len {
            if bits[l - a] {
                bits.insert(l);
            }
        }
    }
    Ok(bits)
}

/// Brauer's bound on the generators in the order given (first term `-a_1`).
pub(crate) fn brauer_bound(elements: &[u64]) -> Result<Int> {
    let mut prev_d: Int = 0;
    let mut total: Int = 0;
    for &a in elements {
        let a = a as Int;
        let d = prev_d.gcd(&a);
        let term = crate::arith::mul(prev_d / d - 1, a, "Brauer bound")?;
        total = crate::arith::add(total, term, "Brauer bound")?;
        prev_d = d;
    }
    Ok(total)
}

/// A cofinite additive submonoid of ℕ.
///
/// Equality compares the Frobenius number and the membership bitset; the
/// minimal generators are derived data.
#[derive(Clone)]
pub struct NumericalSemigroup {
    frobenius: i64,
    /// Membership of `0..=frobenius + 1`.
    members: FixedBitSet,
    minimal_generators: Vec<u64>,
}

impl PartialEq for NumericalSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.frobenius == other.frobenius && self.members == other.members
    }
}

impl Eq for NumericalSemigroup {}

impl fmt::Debug for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [f={}]", self.frobenius)
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G(")?;
        for (i, g) in self.minimal_generators.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl NumericalSemigroup {
    /// The whole of ℕ, encoded with Frobenius number −1.
    pub fn naturals() -> Self {
        let mut members = FixedBitSet::with_capacity(1);
        members.insert(0);
        Self {
            frobenius: -1,
            members,
            minimal_generators: vec![1],
        }
    }

    /// Builds the semigroup whose members are exactly the `l` with
    /// `member(l)`, given that every `l > bound` is a member.
    pub fn from_predicate(bound: u64, mut member: impl FnMut(u64) -> bool) -> Result<Self> {
        let len = sieve_len(bound as u128)?;
        let mut bits = FixedBitSet::with_capacity(len);
        let mut frobenius: i64 = -1;
        for l in 0..len {
            if member(l as u64) {
                bits.insert(l);
            } else {
                frobenius = l as i64;
            }
        }
        if !bits[0] {
            return Err(Error::Inconsistent("0 is not a member".into()));
        }
        let n = (frobenius + 2) as usize;
        let mut members = FixedBitSet::with_capacity(n);
        for l in 0..n {
            if l >= len || bits[l] {
                members.insert(l);
            }
        }
        let mut s = Self {
            frobenius,
            members,
            minimal_generators: Vec::new(),
        };
        s.minimal_generators = s.compute_minimal_generators();
        s.check_closed()?;
        Ok(s)
    }

    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    pub fn is_naturals(&self) -> bool {
        self.frobenius < 0
    }

    pub fn contains(&self, n: u64) -> bool {
        if (n as i128) > self.frobenius as i128 {
            true
        } else {
            self.members[n as usize]
        }
    }

    pub fn gaps(&self) -> Vec<u64> {
        (0..=self.frobenius.max(-1))
            .filter(|&l| !self.members[l as usize])
            .map(|l| l as u64)
            .collect()
    }

    pub fn genus(&self) -> usize {
        self.gaps().len()
    }

    pub fn minimal_generators(&self) -> &[u64] {
        &self.minimal_generators
    }

    /// Smallest nonzero member.
    pub fn multiplicity(&self) -> u64 {
        self.minimal_generators[0]
    }

    /// Membership bitset over `0..=frobenius + 1`.
    pub fn members_below(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn generator_set(&self) -> GeneratorSet {
        GeneratorSet::new(self.minimal_generators.clone()).expect("minimal generators are positive")
    }

    /// Entry `r` is the least member congruent to `r` modulo `m`.
    pub fn apery_set(&self, m: u64) -> Result<Vec<u64>> {
        if m == 0 || !self.contains(m) {
            return Err(Error::NotAMember(m));
        }
        let mut out = Vec::with_capacity(m as usize);
        for r in 0..m {
            let mut x = r;
            while !self.contains(x) {
                x += m;
            }
            out.push(x);
        }
        Ok(out)
    }

    /// `x ∈ S ⟺ f − x ∉ S` for all `0 ≤ x ≤ f`; ℕ counts as symmetric.
    pub fn is_symmetric(&self) -> bool {
        let f = self.frobenius;
        (0..=f).all(|x| self.contains(x as u64) != self.contains((f - x) as u64))
    }

    /// `S/k = {l : k·l ∈ S}`.
    pub fn quotient(&self, k: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::TooSmall {
                what: "quotient divisor",
                min: 1,
                got: 0,
            });
        }
        if self.is_naturals() {
            return Ok(Self::naturals());
        }
        let bound = self.frobenius as u64 / k;
        Self::from_predicate(bound, |l| {
            l.checked_mul(k).is_none_or(|kl| self.contains(kl))
        })
    }

    /// Setwise sum `A + B`, i.e. the semigroup generated by both.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        let mut gens = self.minimal_generators.clone();
        gens.extend_from_slice(&other.minimal_generators);
        build_semigroup(&GeneratorSet::new(gens)?)
    }

    /// True if every member of `self` is a member of `other`.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        let top = self.frobenius.max(other.frobenius) + 1;
        (0..=top).all(|l| !self.contains(l as u64) || other.contains(l as u64))
    }

    fn compute_minimal_generators(&self) -> Vec<u64> {
        if self.is_naturals() {
            return vec![1];
        }
        let m = (1..).find(|&l| self.contains(l)).expect("cofinite");
        let apery = self.apery_set(m).expect("multiplicity is a member");
        let mut nonzero: Vec<u64> = apery.into_iter().filter(|&w| w != 0).collect();
        nonzero.sort_unstable();
        let mut gens = vec![m];
        for (i, &w) in nonzero.iter().enumerate() {
            if nonzero[..i].iter().all(|&v| !self.contains(w - v)) {
                gens.push(w);
            }
        }
        gens.sort_unstable();
        gens
    }

    fn check_closed(&self) -> Result<()> {
        let gens = &self.minimal_generators;
        let f = self.frobenius;
        for &g in gens {
            for l in 0..=f {
                if self.contains(l as u64) && !self.contains(l as u64 + g) {
                    return Err(Error::Inconsistent(format!(
                        "membership not closed under addition: {l} + {g}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The numerical semigroup generated by `gens`.
pub fn build_semigroup(gens: &GeneratorSet) -> Result<NumericalSemigroup> {
    gens.require_cofinite()?;
    let mut sorted = gens.elements().to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted[0] == 1 {
        return Ok(NumericalSemigroup::naturals());
    }
    let bound = brauer_bound(&sorted)?.max(0);
    let bound = u64::try_from(bound).map_err(|_| Error::Overflow("sieve bound"))?;
    let bits = sieve_members(&GeneratorSet::new(sorted)?, bound + 1)?;
    NumericalSemigroup::from_predicate(bound + 1, |l| bits[l as usize])
}

pub fn minimal_generators(gens: &GeneratorSet) -> Result<Vec<u64>> {
    Ok(build_semigroup(gens)?.minimal_generators().to_vec())
}

/// A submonoid of ℕ generated by positive integers whose gcd (the content)
/// may exceed one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Submonoid {
    generators: Vec<u64>,
    content: u64,
    reduced: NumericalSemigroup,
}

impl Submonoid {
    pub fn new(generators: Vec<u64>) -> Result<Self> {
        let set = GeneratorSet::new(generators)?;
        let content = set.gcd();
        let reduced = build_semigroup(&GeneratorSet::new(
            set.elements().iter().map(|a| a / content).collect(),
        )?)?;
        Ok(Self {
            generators: set.elements().to_vec(),
            content,
            reduced,
        })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn content(&self) -> u64 {
        self.content
    }

    pub fn reduced(&self) -> &NumericalSemigroup {
        &self.reduced
    }

    pub fn contains(&self, n: u64) -> bool {
        n.is_multiple_of(self.content) && self.reduced.contains(n / self.content)
    }
}

pub fn submonoid_contains(m: &Submonoid, n: u64) -> bool {
    m.contains(n)
}
