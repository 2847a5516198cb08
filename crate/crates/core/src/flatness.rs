//! Flatness classification of generator systems and the flat presentations
//! `G(α, s₁α̂₁, …, sₙα̂ₙ)`.
//!
//! For a generator system `a₁,…,aₙ` with gcd 1 put `qᵢ = gcd(aⱼ : j ≠ i)`,
//! `q̂ᵢ = ∏_{j≠i} qⱼ` and `ŝᵢ = aᵢ / q̂ᵢ`. The system is strongly flat when
//! every `ŝᵢ = 1`, flat when some `ŝᵢ = 1`, almost flat when some `qᵢ > 1`,
//! and non-flat otherwise. A semigroup takes the class of its minimal
//! generators.

use std::fmt;

use itertools::Itertools;
use num_integer::Integer;

use crate::arith::{self, Int};
use crate::error::{Error, Result};
use crate::semigroup::{
    brauer_bound, build_semigroup, sieve_members, GeneratorSet, NumericalSemigroup,
};

/// Largest generator count for which [`min_brauer_over_permutations`] runs.
pub const MAX_PERMUTATION_GENERATORS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdDecomposition {
    pub q: Vec<u64>,
    pub q_hat: Vec<u64>,
    pub s_hat: Vec<u64>,
}

impl GcdDecomposition {
    pub fn is_strongly_flat(&self) -> bool {
        self.s_hat.iter().all(|&s| s == 1)
    }

    pub fn is_flat(&self) -> bool {
        self.s_hat.contains(&1)
    }

    pub fn is_almost_flat(&self) -> bool {
        self.q.iter().any(|&q| q > 1)
    }

    pub fn class(&self) -> FlatnessClass {
        if self.is_strongly_flat() {
            FlatnessClass::StronglyFlat
        } else if self.is_flat() {
            FlatnessClass::Flat
        } else if self.is_almost_flat() {
            FlatnessClass::AlmostFlat
        } else {
            FlatnessClass::NonFlat
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FlatnessClass {
    StronglyFlat,
    Flat,
    AlmostFlat,
    NonFlat,
}

impl FlatnessClass {
    pub fn name(self) -> &'static str {
        match self {
            FlatnessClass::StronglyFlat => "strongly flat",
            FlatnessClass::Flat => "flat",
            FlatnessClass::AlmostFlat => "almost flat",
            FlatnessClass::NonFlat => "non-flat",
        }
    }

    /// Strongly flat semigroups are flat too.
    pub fn is_flat(self) -> bool {
        matches!(self, FlatnessClass::StronglyFlat | FlatnessClass::Flat)
    }
}

impl fmt::Display for FlatnessClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn gcd_decomposition(gens: &GeneratorSet) -> Result<GcdDecomposition> {
    let a = gens.elements();
    if a.len() < 2 {
        return Err(Error::TooSmall {
            what: "generator count for a gcd decomposition",
            min: 2,
            got: a.len() as Int,
        });
    }
    if !gens.is_cofinite() {
        return Err(Error::NotCofinite { gcd: gens.gcd() });
    }
    let q: Vec<u64> = (0..a.len())
        .map(|i| {
            a.iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(0u64, |g, (_, &x)| g.gcd(&x))
        })
        .collect();
    let mut q_hat = Vec::with_capacity(a.len());
    let mut s_hat = Vec::with_capacity(a.len());
    for (i, &ai) in a.iter().enumerate() {
        // the q_j (j != i) are pairwise coprime divisors of a_i, so their
        // product divides a_i and cannot overflow
        let qh: u64 = q
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &x)| x)
            .product();
        debug_assert_eq!(ai % qh, 0);
        q_hat.push(qh);
        s_hat.push(ai / qh);
    }
    Ok(GcdDecomposition { q, q_hat, s_hat })
}

/// Classification of the semigroup generated by `gens`, computed on its
/// minimal generators. ℕ and two-generator semigroups are strongly flat.
pub fn classify(gens: &GeneratorSet) -> Result<FlatnessClass> {
    let s = build_semigroup(gens)?;
    Ok(classify_semigroup(&s))
}

pub fn classify_semigroup(s: &NumericalSemigroup) -> FlatnessClass {
    let mins = s.minimal_generators();
    if mins.len() < 2 {
        return FlatnessClass::StronglyFlat;
    }
    gcd_decomposition(&s.generator_set())
        .expect("minimal generators of a numerical semigroup have gcd 1")
        .class()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BrauerBound {
    pub value: Int,
    /// The Brauer–Shockley criterion for `f = T` in this order.
    pub equality_holds: bool,
}

/// Brauer's bound `T = Σ (d_{i-1}/d_i − 1) aᵢ` for the order given, with
/// `d₀ = 0` and `dᵢ = gcd(a₁,…,aᵢ)`.
///
/// `equality_holds` evaluates `a_{i+1}/d_{i+1} ∈ G(a₁/dᵢ, …, aᵢ/dᵢ)` for
/// every `i` by sieving; when true the Frobenius number equals `value`.
pub fn brauer_t(gens: &GeneratorSet) -> Result<BrauerBound> {
    if !gens.is_cofinite() {
        return Err(Error::NotCofinite { gcd: gens.gcd() });
    }
    let a = gens.elements();
    let value = brauer_bound(a)?;
    let mut d = vec![a[0]];
    for &x in &a[1..] {
        d.push(d.last().unwrap().gcd(&x));
    }
    let mut equality_holds = true;
    for i in 0..a.len() - 1 {
        let target = a[i + 1] / d[i + 1];
        let prefix: Vec<u64> = a[..=i].iter().map(|&x| x / d[i]).collect();
        let bits = sieve_members(&GeneratorSet::new(prefix)?, target)?;
        if !bits[target as usize] {
            equality_holds = false;
            break;
        }
    }
    Ok(BrauerBound {
        value,
        equality_holds,
    })
}

/// Smallest Brauer bound over all orderings, for at most
/// [`MAX_PERMUTATION_GENERATORS`] generators.
pub fn min_brauer_over_permutations(gens: &GeneratorSet) -> Result<Int> {
    let a = gens.elements();
    if a.len() > MAX_PERMUTATION_GENERATORS {
        return Err(Error::TooSmall {
            what: "permutation search limit",
            min: a.len() as Int,
            got: MAX_PERMUTATION_GENERATORS as Int,
        });
    }
    let mut best = Int::MAX;
    for perm in a.iter().copied().permutations(a.len()) {
        best = best.min(brauer_bound(&perm)?);
    }
    Ok(best)
}

/// `B = (n − 1)·lcm(a) − Σ aᵢ`.
pub fn bound_b(gens: &GeneratorSet) -> Result<Int> {
    let a: Vec<Int> = gens.elements().iter().map(|&x| x as Int).collect();
    let lcm = arith::lcm_all(a.iter().copied(), "lcm of generators")?;
    let scaled = arith::mul(a.len() as Int - 1, lcm, "bound B")?;
    arith::sub(scaled, arith::sum(a, "bound B")?, "bound B")
}

/// Closed Frobenius formula `Σ (qᵢ − 1) aᵢ − ∏ qᵢ` over the minimal
/// generators of a flat semigroup.
pub fn flat_frobenius(gens: &GeneratorSet) -> Result<Int> {
    let s = build_semigroup(gens)?;
    let class = classify_semigroup(&s);
    if !class.is_flat() {
        return Err(Error::NotFlat(class));
    }
    if s.is_naturals() {
        return Ok(-1);
    }
    let dec = gcd_decomposition(&s.generator_set())?;
    let mut total: Int = 0;
    for (&q, &a) in dec.q.iter().zip(s.minimal_generators()) {
        total = arith::add(total, arith::mul(q as Int - 1, a as Int, "flat Frobenius")?, "flat Frobenius")?;
    }
    let prod = arith::product(dec.q.iter().map(|&q| q as Int), "flat Frobenius")?;
    arith::sub(total, prod, "flat Frobenius")
}

/// Presentation `G(α, s₁α̂₁, …, sₙα̂ₙ)` of a flat semigroup: pairwise coprime
/// `αᵢ ≥ 2`, `gcd(sᵢ, αᵢ) = 1`, `α = ∏ αᵢ`, `α̂ᵢ = α/αᵢ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FlatPresentation {
    alphas: Vec<Int>,
    mults: Vec<Int>,
    alpha: Int,
}

impl FlatPresentation {
    pub fn new(alphas: Vec<Int>, mults: Vec<Int>) -> Result<Self> {
        if alphas.len() != mults.len() {
            return Err(Error::Inconsistent(format!(
                "{} alphas but {} multiplicities",
                alphas.len(),
                mults.len()
            )));
        }
        for &a in &alphas {
            if a < 2 {
                return Err(Error::TooSmall {
                    what: "flat presentation alpha",
                    min: 2,
                    got: a,
                });
            }
        }
        for (&a, &s) in alphas.iter().zip(&mults) {
            if s < 1 {
                return Err(Error::TooSmall {
                    what: "flat presentation multiplicity",
                    min: 1,
                    got: s,
                });
            }
            if arith::gcd(a, s) != 1 {
                return Err(Error::MultiplicityNotCoprime { alpha: a, mult: s });
            }
        }
        if !arith::pairwise_coprime(&alphas) {
            return Err(Error::NotPairwiseCoprime(alphas));
        }
        let alpha = arith::product(alphas.iter().copied(), "flat presentation alpha")?;
        let p = Self {
            alphas,
            mults,
            alpha,
        };
        // the generators must fit as well
        p.generators()?;
        Ok(p)
    }

    pub fn alphas(&self) -> &[Int] {
        &self.alphas
    }

    pub fn mults(&self) -> &[Int] {
        &self.mults
    }

    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }

    /// `α = ∏ αᵢ`.
    pub fn alpha(&self) -> Int {
        self.alpha
    }

    /// `α̂ᵢ = α / αᵢ`.
    pub fn alpha_hat(&self, i: usize) -> Int {
        self.alpha / self.alphas[i]
    }

    /// Total leg count `d = Σ sᵢ`.
    pub fn leg_count(&self) -> Int {
        self.mults.iter().sum()
    }

    /// `[α, s₁α̂₁, …, sₙα̂ₙ]`.
    pub fn generators(&self) -> Result<Vec<Int>> {
        let mut out = vec![self.alpha];
        for i in 0..self.len() {
            out.push(arith::mul(self.mults[i], self.alpha_hat(i), "flat generator")?);
        }
        Ok(out)
    }

    pub fn generator_set(&self) -> Result<GeneratorSet> {
        GeneratorSet::from_ints(&self.generators()?)
    }

    /// The presented semigroup, built by sieving.
    pub fn semigroup(&self) -> Result<NumericalSemigroup> {
        build_semigroup(&self.generator_set()?)
    }

    /// Frobenius number `(d − 1)α − Σ sᵢα̂ᵢ`, valid for any presentation.
    pub fn frobenius(&self) -> Result<Int> {
        let d = self.leg_count();
        let mut f = arith::mul(d - 1, self.alpha, "flat Frobenius")?;
        for g in &self.generators()?[1..] {
            f = arith::sub(f, *g, "flat Frobenius")?;
        }
        Ok(f)
    }

    /// Exact membership without sieving: the residue of `n` modulo each `αᵢ`
    /// fixes the least coefficient of `sᵢα̂ᵢ`, and what remains must be a
    /// nonnegative multiple of `α`.
    pub fn contains(&self, n: Int) -> Result<bool> {
        if n < 0 {
            return Ok(false);
        }
        let mut rest = n;
        for i in 0..self.len() {
            let a = self.alphas[i];
            let g = arith::mul(self.mults[i], self.alpha_hat(i), "flat membership")?;
            let inv = arith::mod_inverse(g, a).expect("sᵢα̂ᵢ is a unit modulo αᵢ");
            let t = arith::mul(n.rem_euclid(a), inv, "flat membership")?.rem_euclid(a);
            rest = arith::sub(rest, arith::mul(t, g, "flat membership")?, "flat membership")?;
            if rest < 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for FlatPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "flat(alpha=[{}], s=[{}])",
            self.alphas.iter().join(","),
            self.mults.iter().join(",")
        )
    }
}

/// Reads a flat presentation off a generator system that is flat at `pivot`.
///
/// The pivot is moved to position 0, then `αᵢ = qᵢ` and `sᵢ = q₀·ŝᵢ` for the
/// remaining generators. Generators with `qᵢ = 1` are multiples of `α` and
/// are dropped. A two-generator system `{p, q}` yields the one-block
/// presentation `G(p, q)`; pass `{pq, p, q}` to get two blocks.
pub fn extract_flat_presentation(gens: &GeneratorSet, pivot: usize) -> Result<FlatPresentation> {
    let a = gens.elements();
    if pivot >= a.len() {
        return Err(Error::PivotOutOfRange {
            index: pivot,
            len: a.len(),
        });
    }
    let mut ordered = vec![a[pivot]];
    ordered.extend(a.iter().enumerate().filter(|&(i, _)| i != pivot).map(|(_, &x)| x));
    let dec = gcd_decomposition(&GeneratorSet::new(ordered)?)?;
    if dec.s_hat[0] != 1 {
        return Err(Error::NotFlatAtPivot {
            pivot,
            s_hat: dec.s_hat[0],
        });
    }
    let q0 = dec.q[0] as Int;
    let mut alphas = Vec::new();
    let mut mults = Vec::new();
    for i in 1..dec.q.len() {
        if dec.q[i] == 1 {
            continue;
        }
        alphas.push(dec.q[i] as Int);
        mults.push(arith::mul(q0, dec.s_hat[i] as Int, "flat multiplicity")?);
    }
    FlatPresentation::new(alphas, mults)
}

/// The three-generator system `{pq, p, q}` presenting `G(p, q)`.
pub fn expand_two_generator(p: u64, q: u64) -> Result<GeneratorSet> {
    let pq = p.checked_mul(q).ok_or(Error::Overflow("two-generator expansion"))?;
    GeneratorSet::new(vec![pq, p, q])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(v: &[u64]) -> GeneratorSet {
        GeneratorSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn decomposition_examples() {
        let d = gcd_decomposition(&g(&[6, 15, 20])).unwrap();
        assert_eq!(d.q, vec![5, 2, 3]);
        assert_eq!(d.q_hat, vec![6, 15, 10]);
        assert_eq!(d.s_hat, vec![1, 1, 2]);

        let d = gcd_decomposition(&g(&[8, 21, 35])).unwrap();
        assert_eq!(d.q, vec![7, 1, 1]);
        assert_eq!(d.s_hat, vec![8, 3, 5]);

        let d = gcd_decomposition(&g(&[7, 11])).unwrap();
        assert_eq!(d.q, vec![11, 7]);
        assert_eq!(d.s_hat, vec![1, 1]);
    }

    #[test]
    fn decomposition_preconditions() {
        assert!(matches!(
            gcd_decomposition(&g(&[5])),
            Err(Error::TooSmall { .. })
        ));
        assert_eq!(
            gcd_decomposition(&g(&[4, 6])),
            Err(Error::NotCofinite { gcd: 2 })
        );
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&g(&[6, 10, 15])).unwrap(), FlatnessClass::StronglyFlat);
        assert_eq!(classify(&g(&[8, 21, 35])).unwrap(), FlatnessClass::AlmostFlat);
        assert_eq!(classify(&g(&[4, 6, 7, 9])).unwrap(), FlatnessClass::NonFlat);
        assert_eq!(classify(&g(&[6, 15, 20])).unwrap(), FlatnessClass::Flat);
        assert_eq!(classify(&g(&[3, 5])).unwrap(), FlatnessClass::StronglyFlat);
        assert_eq!(classify(&g(&[1])).unwrap(), FlatnessClass::StronglyFlat);
    }

    #[test]
    fn classify_uses_minimal_generators() {
        // {30,15,20,6} is only flat as a system; its minimal set {6,15,20} is flat too
        assert_eq!(classify(&g(&[30, 15, 20, 6])).unwrap(), FlatnessClass::Flat);
        // 4,6,7,9 plus a redundant 11
        assert_eq!(classify(&g(&[4, 6, 7, 9, 11])).unwrap(), FlatnessClass::NonFlat);
    }

    #[test]
    fn brauer_examples() {
        let t = brauer_t(&g(&[4, 9])).unwrap();
        assert_eq!(t.value, 23);
        assert!(t.equality_holds);
        let t = brauer_t(&g(&[6, 10, 15])).unwrap();
        assert_eq!(t.value, 29);
        assert!(t.equality_holds);
        let t = brauer_t(&g(&[4, 6, 7, 9])).unwrap();
        assert_eq!(t.value, 9);
        assert!(!t.equality_holds);
    }

    #[test]
    fn bound_b_examples() {
        assert_eq!(bound_b(&g(&[6, 10, 15])).unwrap(), 29);
        assert_eq!(bound_b(&g(&[4, 6, 7, 9])).unwrap(), 730);
        assert_eq!(bound_b(&g(&[5, 8])).unwrap(), 40 - 13);
    }

    #[test]
    fn flat_frobenius_examples() {
        assert_eq!(flat_frobenius(&g(&[6, 15, 20])).unwrap(), 49);
        assert_eq!(flat_frobenius(&g(&[6, 10, 15])).unwrap(), 29);
        assert_eq!(
            flat_frobenius(&g(&[4, 6, 7, 9])),
            Err(Error::NotFlat(FlatnessClass::NonFlat))
        );
    }

    #[test]
    fn extract_examples() {
        let p = extract_flat_presentation(&g(&[6, 15, 20]), 0).unwrap();
        assert_eq!(p.alphas(), &[2, 3]);
        assert_eq!(p.mults(), &[5, 10]);

        let p = extract_flat_presentation(&g(&[6, 15, 20]), 1).unwrap();
        assert_eq!(p.alphas(), &[5, 3]);
        assert_eq!(p.mults(), &[2, 4]);

        let p = extract_flat_presentation(&g(&[30, 15, 20, 6]), 0).unwrap();
        assert_eq!(p.alphas(), &[2, 3, 5]);
        assert_eq!(p.mults(), &[1, 2, 1]);
        assert_eq!(p.to_string(), "flat(alpha=[2,3,5], s=[1,2,1])");
    }

    #[test]
    fn extract_rejects_bad_pivot() {
        assert_eq!(
            extract_flat_presentation(&g(&[6, 15, 20]), 2),
            Err(Error::NotFlatAtPivot { pivot: 2, s_hat: 2 })
        );
        assert!(matches!(
            extract_flat_presentation(&g(&[6, 15, 20]), 3),
            Err(Error::PivotOutOfRange { .. })
        ));
    }

    #[test]
    fn extract_drops_unit_blocks() {
        // 12 = 2·6 is redundant and has q = 1
        let p = extract_flat_presentation(&g(&[6, 9, 4, 12]), 0).unwrap();
        assert_eq!(p.alphas(), &[2, 3]);
        assert_eq!(p.semigroup().unwrap(), build_semigroup(&g(&[6, 9, 4])).unwrap());
    }

    #[test]
    fn two_generator_expansion() {
        let gens = expand_two_generator(3, 5).unwrap();
        let p = extract_flat_presentation(&gens, 0).unwrap();
        assert_eq!(p.alphas(), &[5, 3]);
        assert_eq!(p.mults(), &[1, 1]);
        assert_eq!(p.semigroup().unwrap(), build_semigroup(&g(&[3, 5])).unwrap());
    }

    #[test]
    fn presentation_validation() {
        assert!(matches!(
            FlatPresentation::new(vec![2, 4], vec![1, 1]),
            Err(Error::NotPairwiseCoprime(_))
        ));
        assert!(matches!(
            FlatPresentation::new(vec![2, 3], vec![2, 1]),
            Err(Error::MultiplicityNotCoprime { alpha: 2, mult: 2 })
        ));
        assert!(matches!(
            FlatPresentation::new(vec![1, 3], vec![1, 1]),
            Err(Error::TooSmall { .. })
        ));
    }

    #[test]
    fn presentation_frobenius_and_membership() {
        let p = FlatPresentation::new(vec![2, 3], vec![5, 10]).unwrap();
        assert_eq!(p.generators().unwrap(), vec![6, 15, 20]);
        assert_eq!(p.frobenius().unwrap(), 49);
        let s = p.semigroup().unwrap();
        for n in 0..120 {
            assert_eq!(p.contains(n).unwrap(), s.contains(n as u64), "n = {n}");
        }
    }
}
