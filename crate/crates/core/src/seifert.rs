//! Star-shaped resolution graphs given by Seifert data
//! `(−b0; s₁×(α₁,ω₁), …, sₙ×(αₙ,ωₙ))` and their numerical invariants.

use std::fmt;

use num_traits::Signed;

use crate::arith::{self, Int, Rational};
use crate::error::{Error, Result};
use crate::linalg;
use crate::semigroup::{sieve_len, NumericalSemigroup};

/// A block of `mult` identical legs with normalized Seifert invariant
/// `(alpha, omega)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeifertLeg {
    pub alpha: Int,
    pub omega: Int,
    pub mult: Int,
}

impl SeifertLeg {
    pub fn new(alpha: Int, omega: Int, mult: Int) -> Result<Self> {
        validate_pair(alpha, omega)?;
        if mult < 1 {
            return Err(Error::TooSmall {
                what: "leg multiplicity",
                min: 1,
                got: mult,
            });
        }
        Ok(Self { alpha, omega, mult })
    }

    pub fn single(alpha: Int, omega: Int) -> Result<Self> {
        Self::new(alpha, omega, 1)
    }

    /// `ω/α`.
    pub fn ratio(&self) -> Rational {
        arith::rat(self.omega, self.alpha)
    }

    /// `ω′` with `ωω′ ≡ 1 (mod α)`.
    pub fn omega_prime(&self) -> Int {
        omega_prime(self.alpha, self.omega).expect("validated leg")
    }
}

fn validate_pair(alpha: Int, omega: Int) -> Result<()> {
    let bad = |reason| Err(Error::InvalidLeg { alpha, omega, reason });
    if alpha < 2 {
        return bad("alpha must be at least 2");
    }
    if omega <= 0 || omega >= alpha {
        return bad("omega must satisfy 0 < omega < alpha");
    }
    if arith::gcd(alpha, omega) != 1 {
        return bad("alpha and omega must be coprime");
    }
    Ok(())
}

impl fmt::Display for SeifertLeg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mult != 1 {
            write!(f, "{}x", self.mult)?;
        }
        write!(f, "({},{})", self.alpha, self.omega)
    }
}

/// Negative definite star-shaped graph with central weight `−b0`. Legs are
/// kept sorted by `(alpha, omega)` with equal pairs merged.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SSRGraph {
    b0: Int,
    legs: Vec<SeifertLeg>,
}

impl SSRGraph {
    pub fn new(b0: Int, legs: Vec<SeifertLeg>) -> Result<Self> {
        if b0 < 1 {
            return Err(Error::InvalidCentralWeight(b0));
        }
        for l in &legs {
            SeifertLeg::new(l.alpha, l.omega, l.mult)?;
        }
        let g = Self {
            b0,
            legs: canonical_legs(legs)?,
        };
        let e = g.euler_number()?;
        if !e.is_negative() {
            return Err(Error::NotNegativeDefinite(arith::fmt_rational(&e)));
        }
        Ok(g)
    }

    /// Builds a graph from `(alpha, omega, mult)` triples.
    pub fn from_triples(b0: Int, legs: &[(Int, Int, Int)]) -> Result<Self> {
        let legs = legs
            .iter()
            .map(|&(a, w, s)| SeifertLeg::new(a, w, s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(b0, legs)
    }

    pub fn b0(&self) -> Int {
        self.b0
    }

    pub fn legs(&self) -> &[SeifertLeg] {
        &self.legs
    }

    /// Total leg count `d = Σ sᵢ`.
    pub fn leg_count(&self) -> Int {
        self.legs.iter().map(|l| l.mult).sum()
    }

    /// Legs with multiplicities expanded, in canonical order.
    pub fn expanded_legs(&self) -> impl Iterator<Item = (Int, Int)> + '_ {
        self.legs
            .iter()
            .flat_map(|l| std::iter::repeat_n((l.alpha, l.omega), l.mult as usize))
    }

    /// `e = −b0 + Σ sᵢωᵢ/αᵢ`.
    pub fn euler_number(&self) -> Result<Rational> {
        let mut e = arith::rint(-self.b0);
        for l in &self.legs {
            let t = arith::rmul(&arith::rint(l.mult), &l.ratio(), "Euler number")?;
            e = arith::radd(&e, &t, "Euler number")?;
        }
        Ok(e)
    }

    /// `α = lcm(αᵢ)`, 1 for a legless graph.
    pub fn alpha_lcm(&self) -> Result<Int> {
        arith::lcm_all(self.legs.iter().map(|l| l.alpha), "alpha lcm")
    }
}

fn canonical_legs(mut legs: Vec<SeifertLeg>) -> Result<Vec<SeifertLeg>> {
    legs.sort_by_key(|l| (l.alpha, l.omega));
    let mut out: Vec<SeifertLeg> = Vec::with_capacity(legs.len());
    for l in legs {
        match out.last_mut() {
            Some(last) if last.alpha == l.alpha && last.omega == l.omega => {
                last.mult = arith::add(last.mult, l.mult, "leg multiplicity")?;
            }
            _ => out.push(l),
        }
    }
    Ok(out)
}

impl fmt::Display for SSRGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sf({}", -self.b0)?;
        for (i, l) in self.legs.iter().enumerate() {
            f.write_str(if i == 0 { "; " } else { ", " })?;
            write!(f, "{l}")?;
        }
        f.write_str(")")
    }
}

/// Hirzebruch–Jung expansion `α/ω = b₁ − 1/(b₂ − …)` with every `bⱼ ≥ 2`.
pub fn hj_expand(alpha: Int, omega: Int) -> Result<Vec<Int>> {
    validate_pair(alpha, omega)?;
    let (mut a, mut w) = (alpha, omega);
    let mut out = Vec::new();
    while w > 0 {
        let b = arith::ceil_div(a, w);
        out.push(b);
        (a, w) = (w, b * w - a);
    }
    Ok(out)
}

/// Evaluates `[b₁, …, bν]` as an exact rational.
pub fn hj_evaluate(b: &[Int]) -> Result<Rational> {
    let mut acc: Option<Rational> = None;
    for &x in b.iter().rev() {
        let v = arith::rint(x);
        acc = Some(match acc {
            None => v,
            Some(r) => arith::rsub(&v, &arith::rdiv(&arith::rint(1), &r, "continued fraction")?, "continued fraction")?,
        });
    }
    acc.ok_or(Error::Inconsistent("empty continued fraction".into()))
}

/// `ω′` in `(0, α)` with `ωω′ ≡ 1 (mod α)`.
pub fn omega_prime(alpha: Int, omega: Int) -> Result<Int> {
    validate_pair(alpha, omega)?;
    Ok(arith::mod_inverse(omega, alpha).expect("coprime"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphInvariants {
    pub e: Rational,
    pub alpha_lcm: Int,
    /// `𝔥 = |H|`.
    pub h: Int,
    /// `𝔬`, the order of the generic orbit class.
    pub o: Int,
    pub gamma: Rational,
    pub d: Int,
}

impl GraphInvariants {
    pub fn abs_e(&self) -> Rational {
        self.e.abs()
    }
}

pub fn graph_invariants(g: &SSRGraph) -> Result<GraphInvariants> {
    let e = g.euler_number()?;
    if !e.is_negative() {
        return Err(Error::NotNegativeDefinite(arith::fmt_rational(&e)));
    }
    let abs_e = e.abs();
    let alpha = g.alpha_lcm()?;
    let mut prod: Int = 1;
    for l in g.legs() {
        let p = arith::pow(l.alpha, u32::try_from(l.mult).map_err(|_| Error::Overflow("alpha power"))?, "alpha power")?;
        prod = arith::mul(prod, p, "product of alphas")?;
    }
    let h = integral(arith::rmul(&arith::rint(prod), &abs_e, "h")?, "h is not an integer")?;
    let o = integral(arith::rmul(&arith::rint(alpha), &abs_e, "o")?, "o is not an integer")?;
    let d = g.leg_count();
    let mut num = arith::rint(d - 2);
    for l in g.legs() {
        num = arith::rsub(&num, &arith::rat(l.mult, l.alpha), "gamma")?;
    }
    let gamma = arith::rdiv(&num, &abs_e, "gamma")?;
    Ok(GraphInvariants {
        e,
        alpha_lcm: alpha,
        h,
        o,
        gamma,
        d,
    })
}

fn integral(r: Rational, msg: &str) -> Result<Int> {
    arith::as_integer(&r).ok_or_else(|| Error::Inconsistent(format!("{msg}: {}", arith::fmt_rational(&r))))
}

/// `N(ℓ) = b0·ℓ − Σ sᵢ⌈ℓωᵢ/αᵢ⌉`.
pub fn n_value(g: &SSRGraph, ell: Int) -> Result<Int> {
    let mut n = arith::mul(g.b0, ell, "N(l)")?;
    for l in g.legs() {
        let c = arith::ceil_div(arith::mul(ell, l.omega, "N(l)")?, l.alpha);
        n = arith::sub(n, arith::mul(l.mult, c, "N(l)")?, "N(l)")?;
    }
    Ok(n)
}

/// Scan bound for the semigroup of a graph: `N(ℓ) ≥ 0` for every `ℓ > α + γ`.
pub fn scan_bound(g: &SSRGraph) -> Result<Int> {
    let inv = graph_invariants(g)?;
    let top = arith::radd(&arith::rint(inv.alpha_lcm), &inv.gamma, "scan bound")?;
    Ok(arith::floor(&top).max(inv.alpha_lcm).max(0))
}

/// `S_Γ = {ℓ ≥ 0 : N(ℓ) ≥ 0}`.
pub fn semigroup_of_graph(g: &SSRGraph) -> Result<NumericalSemigroup> {
    let bound = scan_bound(g)?;
    sieve_len(bound as u128)?;
    let mut err = None;
    let s = NumericalSemigroup::from_predicate(bound as u64, |l| match n_value(g, l as Int) {
        Ok(v) => v >= 0,
        Err(e) => {
            err.get_or_insert(e);
            false
        }
    });
    match err {
        Some(e) => Err(e),
        None => s,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFrobenius {
    pub f: i64,
    /// `š = γ + 1/|e| − f`.
    pub check_s: Rational,
}

/// Frobenius number of `S_Γ` by scanning, plus the derived `š`.
///
/// For numerically Gorenstein graphs with `𝔬 = 1` the closed value `α + γ`
/// is checked against the scan.
pub fn frobenius_of_graph(g: &SSRGraph) -> Result<GraphFrobenius> {
    let inv = graph_invariants(g)?;
    let s = semigroup_of_graph(g)?;
    let f = s.frobenius();
    let inv_e = arith::rdiv(&arith::rint(1), &inv.abs_e(), "1/|e|")?;
    let check_s = arith::rsub(&arith::radd(&inv.gamma, &inv_e, "s check")?, &arith::rint(f as Int), "s check")?;
    if inv.o == 1 && is_numerically_gorenstein(g)? {
        let expected = arith::radd(&arith::rint(inv.alpha_lcm), &inv.gamma, "alpha + gamma")?;
        if expected != arith::rint(f as Int) {
            return Err(Error::Inconsistent(format!(
                "scanned Frobenius number {f} differs from alpha + gamma = {}",
                arith::fmt_rational(&expected)
            )));
        }
    }
    Ok(GraphFrobenius { f, check_s })
}

/// `γ ∈ ℤ` and `γ ≡ ω′ᵢ (mod αᵢ)` for every leg.
pub fn is_numerically_gorenstein(g: &SSRGraph) -> Result<bool> {
    let inv = graph_invariants(g)?;
    let Some(gamma) = arith::as_integer(&inv.gamma) else {
        return Ok(false);
    };
    Ok(g
        .legs()
        .iter()
        .all(|l| (gamma - l.omega_prime()).rem_euclid(l.alpha) == 0))
}

/// `Γ₁ + Γ₂`: central weights add and the leg multisets merge.
pub fn sum_graphs(a: &SSRGraph, b: &SSRGraph) -> Result<SSRGraph> {
    let mut legs = a.legs.clone();
    legs.extend_from_slice(&b.legs);
    SSRGraph::new(arith::add(a.b0, b.b0, "b0")?, legs)
}

/// `kΓ`.
pub fn scale_graph(g: &SSRGraph, k: Int) -> Result<SSRGraph> {
    if k < 1 {
        return Err(Error::TooSmall {
            what: "scale factor",
            min: 1,
            got: k,
        });
    }
    let legs = g
        .legs
        .iter()
        .map(|l| Ok(SeifertLeg { mult: arith::mul(l.mult, k, "leg multiplicity")?, ..*l }))
        .collect::<Result<Vec<_>>>()?;
    SSRGraph::new(arith::mul(g.b0, k, "b0")?, legs)
}

/// The graph `Γ^(k)` with `N^(k)(ℓ) = N(kℓ)`, so that `S_{Γ^(k)} = S_Γ/k`.
///
/// Each leg becomes `(αᵢ, rᵢ)` with `rᵢ = kωᵢ mod αᵢ`, reduced by
/// `gcd(αᵢ, rᵢ)`; legs with `rᵢ = 0` disappear and their integer parts move
/// into the central weight.
pub fn quotient_graph(g: &SSRGraph, k: Int) -> Result<SSRGraph> {
    if k < 1 {
        return Err(Error::TooSmall {
            what: "quotient divisor",
            min: 1,
            got: k,
        });
    }
    let mut b0 = arith::mul(k, g.b0, "quotient b0")?;
    let mut legs = Vec::new();
    for l in g.legs() {
        let kw = arith::mul(k, l.omega, "quotient leg")?;
        let r = kw.rem_euclid(l.alpha);
        let m = (kw - r) / l.alpha;
        b0 = arith::sub(b0, arith::mul(l.mult, m, "quotient b0")?, "quotient b0")?;
        if r != 0 {
            let gcd = arith::gcd(l.alpha, r);
            legs.push(SeifertLeg::new(l.alpha / gcd, r / gcd, l.mult)?);
        }
    }
    SSRGraph::new(b0, legs)
}

/// `(−k; k×(p,ω_p), k×(q,ω_q))` with `pq − ω_p·q − ω_q·p = 1`, representing
/// `G(p, q)`.
pub fn plane_curve_representative(p: Int, q: Int, k: Int) -> Result<SSRGraph> {
    if p.min(q) < 2 {
        return Err(Error::TooSmall {
            what: "plane curve exponent",
            min: 2,
            got: p.min(q),
        });
    }
    if arith::gcd(p, q) != 1 {
        return Err(Error::NotPairwiseCoprime(vec![p, q]));
    }
    let wp = (-arith::mod_inverse(q, p).expect("coprime")).rem_euclid(p);
    let wq = (-arith::mod_inverse(p, q).expect("coprime")).rem_euclid(q);
    debug_assert_eq!(p * q - wp * q - wq * p, 1);
    SSRGraph::from_triples(k, &[(p, wp, k), (q, wq, k)])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexLabel {
    Central,
    /// Vertex `position` (0 next to the centre) of copy `copy` of leg block
    /// `leg`.
    Chain { leg: usize, copy: usize, position: usize },
}

/// Plumbing graph: the central vertex followed by one Hirzebruch–Jung chain
/// per expanded leg, with self-intersections `−b_v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlumbingData {
    pub labels: Vec<VertexLabel>,
    /// `b_v`, so the Euler decoration is `e_v = −b_v`.
    pub weights: Vec<Int>,
    pub matrix: Vec<Vec<Int>>,
}

impl PlumbingData {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn degree(&self, v: usize) -> usize {
        (0..self.len()).filter(|&u| u != v && self.matrix[v][u] != 0).count()
    }
}

pub fn plumbing_expand(g: &SSRGraph) -> Result<PlumbingData> {
    let mut labels = vec![VertexLabel::Central];
    let mut weights = vec![g.b0];
    let mut edges = Vec::new();
    for (leg, l) in g.legs().iter().enumerate() {
        let chain = hj_expand(l.alpha, l.omega)?;
        for copy in 0..l.mult as usize {
            let mut prev = 0;
            for (position, &b) in chain.iter().enumerate() {
                let v = weights.len();
                labels.push(VertexLabel::Chain { leg, copy, position });
                weights.push(b);
                edges.push((prev, v));
                prev = v;
            }
        }
    }
    let n = weights.len();
    let mut matrix = vec![vec![0; n]; n];
    for (v, &b) in weights.iter().enumerate() {
        matrix[v][v] = -b;
    }
    for (u, v) in edges {
        matrix[u][v] = 1;
        matrix[v][u] = 1;
    }
    if !linalg::is_negative_definite(&matrix)? {
        return Err(Error::NotNegativeDefinite(
            "intersection matrix has a leading minor of the wrong sign".into(),
        ));
    }
    Ok(PlumbingData {
        labels,
        weights,
        matrix,
    })
}

/// `Z_K` from the adjunction equalities `(Z_K, E_v) = e_v + 2`.
pub fn z_k_cycle(p: &PlumbingData) -> Result<Vec<Rational>> {
    let rhs: Vec<Int> = p.weights.iter().map(|&b| 2 - b).collect();
    linalg::solve(&p.matrix, &rhs)
}

/// `Z_K` for a graph, cross-checked against `Z_K − E = Σ (δ_v − 2) E*_v`,
/// the central coordinate `γ + 1`, and numerical Gorensteinness.
pub fn graph_z_k(g: &SSRGraph) -> Result<Vec<Rational>> {
    let p = plumbing_expand(g)?;
    let z = z_k_cycle(&p)?;
    // E*_v has coordinates −I⁻¹e_v, so Z_K = E − I⁻¹(δ − 2)
    let delta: Vec<Int> = (0..p.len()).map(|v| p.degree(v) as Int - 2).collect();
    let y = linalg::solve(&p.matrix, &delta)?;
    for (zv, yv) in z.iter().zip(&y) {
        if *zv != arith::rsub(&arith::rint(1), yv, "dual cycle check")? {
            return Err(Error::Inconsistent("Z_K disagrees with the dual-cycle formula".into()));
        }
    }
    let inv = graph_invariants(g)?;
    if z[0] != arith::radd(&inv.gamma, &arith::rint(1), "gamma + 1")? {
        return Err(Error::Inconsistent("central Z_K coordinate differs from gamma + 1".into()));
    }
    let integral = z.iter().all(|r| r.is_integer());
    if integral != is_numerically_gorenstein(g)? {
        return Err(Error::Inconsistent("Z_K integrality disagrees with the Gorenstein test".into()));
    }
    Ok(z)
}

/// Continuant identities for one leg: `(det chain, det without first vertex,
/// det without last vertex)`, which equal `(α, ω, ω′)`.
pub fn leg_determinants(alpha: Int, omega: Int) -> Result<(Int, Int, Int)> {
    let b = hj_expand(alpha, omega)?;
    Ok((
        linalg::chain_determinant(&b)?,
        linalg::chain_determinant(&b[1..])?,
        linalg::chain_determinant(&b[..b.len() - 1])?,
    ))
}
