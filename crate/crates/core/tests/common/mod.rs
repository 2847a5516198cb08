//! Samplers and randomized property suites shared by the `properties` and
//! `acceptance` test targets. Every suite returns the number of cases it
//! checked, or a description of the first counterexample.

#![allow(dead_code)]

use flatsg::arith::{self, Int, Rational};
use flatsg::decomposition::{decompose, monoid_bounds, perturb_graph, PerturbationWindow};
use flatsg::flat_rep::{canonical_representative, h_group, icis_equations};
use flatsg::flatness::{
    bound_b, classify, classify_semigroup, flat_frobenius, min_brauer_over_permutations, FlatPresentation,
    FlatnessClass,
};
use flatsg::seifert::{
    graph_invariants, is_numerically_gorenstein, n_value, plane_curve_representative, quotient_graph, scale_graph,
    scan_bound, semigroup_of_graph, sum_graphs, SSRGraph, SeifertLeg,
};
use flatsg::semigroup::{build_semigroup, GeneratorSet, NumericalSemigroup};
use rand::seq::SliceRandom;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

pub const SEED: u64 = 0x5eed_f1a7;
pub const CASES: usize = 100;

/// Graphs whose scan bound exceeds this are resampled.
pub const MAX_SCAN: Int = 200_000;

pub type Outcome = Result<usize, String>;

pub fn rng(seed: u64) -> Rng {
    Rng::seed_from_u64(seed)
}

fn gcd(a: Int, b: Int) -> Int {
    arith::gcd(a, b)
}

fn fail<T>(what: impl std::fmt::Display) -> Result<T, String> {
    Err(what.to_string())
}

fn lift<T, E: std::fmt::Display>(r: Result<T, E>, ctx: impl std::fmt::Display) -> Result<T, String> {
    r.map_err(|e| format!("{ctx}: {e}"))
}

/// Random graph with `min(3, max_legs)..=max_legs` legs (counted with
/// multiplicity), `αᵢ ∈ [2, max_alpha]` and the smallest or nearly smallest
/// admissible central weight. Fewer than three legs, or a large central
/// weight, mostly give `S = ℕ`. Resamples until the scan bound is at most
/// `MAX_SCAN`.
pub fn random_graph(rng: &mut Rng, max_legs: usize, max_alpha: Int) -> SSRGraph {
    loop {
        let d = rng.gen_range(max_legs.min(3)..=max_legs);
        let mut legs = Vec::with_capacity(d);
        let mut total = Rational::from_integer(0);
        for _ in 0..d {
            let a = rng.gen_range(2..=max_alpha);
            let w = loop {
                let w = rng.gen_range(1..a);
                if gcd(a, w) == 1 {
                    break w;
                }
            };
            total += arith::rat(w, a);
            legs.push(SeifertLeg::single(a, w).unwrap());
        }
        let extra = *[0, 0, 0, 0, 1].choose(rng).unwrap();
        let b0 = arith::floor(&total) + 1 + extra;
        let g = SSRGraph::new(b0, legs).expect("sampled graph is admissible");
        if scan_bound(&g).is_ok_and(|b| b <= MAX_SCAN) {
            return g;
        }
    }
}

fn coprime_to_all(x: Int, others: &[Int]) -> bool {
    others.iter().all(|&o| gcd(x, o) == 1)
}

/// Pairwise coprime `αᵢ ∈ [2, max_alpha]`, `n ∈ [min_n, max_n]`.
pub fn random_coprime_alphas(rng: &mut Rng, min_n: usize, max_n: usize, max_alpha: Int) -> Vec<Int> {
    loop {
        let n = rng.gen_range(min_n..=max_n);
        let mut alphas: Vec<Int> = Vec::with_capacity(n);
        for _ in 0..50 {
            if alphas.len() == n {
                break;
            }
            let a = rng.gen_range(2..=max_alpha);
            if coprime_to_all(a, &alphas) {
                alphas.push(a);
            }
        }
        if alphas.len() == n {
            return alphas;
        }
    }
}

/// Random flat presentation: `n ∈ [1, max_n]`, pairwise coprime
/// `αᵢ ≤ max_alpha`, `sᵢ ∈ [1, max_s]` coprime to `αᵢ`.
pub fn random_flat(rng: &mut Rng, max_n: usize, max_alpha: Int, max_s: Int) -> FlatPresentation {
    let alphas = random_coprime_alphas(rng, 1, max_n, max_alpha);
    let mults = alphas
        .iter()
        .map(|&a| loop {
            let s = rng.gen_range(1..=max_s);
            if gcd(s, a) == 1 {
                break s;
            }
        })
        .collect();
    FlatPresentation::new(alphas, mults).expect("sampled presentation is valid")
}

/// Random cofinite generator set with 2 to 4 elements below `max`.
pub fn random_generators(rng: &mut Rng, max: u64) -> GeneratorSet {
    loop {
        let n = rng.gen_range(2..=4);
        let v: Vec<u64> = (0..n).map(|_| rng.gen_range(2..=max)).collect();
        if let Ok(g) = GeneratorSet::new(v) {
            if g.is_cofinite() {
                return g;
            }
        }
    }
}

/// Graphs that are numerically Gorenstein: canonical representatives of
/// random flat presentations, plane curve representatives, and random graphs
/// that happen to qualify.
pub fn random_ngor_graph(rng: &mut Rng) -> SSRGraph {
    loop {
        let g = match rng.gen_range(0..4) {
            0 | 1 => canonical_representative(&random_flat(rng, 3, 11, 4)).unwrap().graph,
            2 => {
                let p = rng.gen_range(2..=12);
                let q = rng.gen_range(2..=12);
                if gcd(p, q) != 1 {
                    continue;
                }
                plane_curve_representative(p, q, rng.gen_range(1..=3)).unwrap()
            }
            _ => random_graph(rng, 4, 12),
        };
        if scan_bound(&g).is_ok_and(|b| b <= MAX_SCAN) && is_numerically_gorenstein(&g).unwrap() {
            return g;
        }
    }
}

fn alpha_gamma(g: &SSRGraph) -> (Int, Rational) {
    let inv = graph_invariants(g).unwrap();
    (inv.alpha_lcm, inv.gamma)
}

fn n(g: &SSRGraph, l: Int) -> Result<Int, String> {
    lift(n_value(g, l), format!("N({l}) on {g}"))
}

/// Growth of `N`: (a) `−(α−1)|e| − d ≤ N(ℓ) − ⌈ℓ/α⌉𝔬 ≤ −1` for `α ∤ ℓ`,
/// and the difference is 0 on multiples of `α`; (c) `N(α) = 𝔬`;
/// (d) `N(ℓ + α) = N(ℓ) + 𝔬`; (e) `N(ℓ) ≥ 0` past `α + γ`.
pub fn n_function_inequalities(rng: &mut Rng, cases: usize) -> Outcome {
    for _ in 0..cases {
        let g = random_graph(rng, 6, 30);
        let inv = lift(graph_invariants(&g), &g)?;
        let alpha = inv.alpha_lcm;
        let o = inv.o;
        let d = inv.d;
        if n(&g, alpha)? != o {
            return fail(format!("(c) N(α) ≠ 𝔬 on {g}"));
        }
        let top = (3 * alpha).min(3000);
        for l in 0..=top {
            let nl = n(&g, l)?;
            let diff = nl - arith::ceil_div(l, alpha) * o;
            if l % alpha == 0 {
                if diff != 0 {
                    return fail(format!("(a) at multiple ℓ={l} of α on {g}: {diff}"));
                }
            } else {
                let low = -Rational::from_integer(alpha - 1) * inv.abs_e() - Rational::from_integer(d);
                if Rational::from_integer(diff) < low || diff > -1 {
                    return fail(format!("(a) at ℓ={l} on {g}: {diff}"));
                }
            }
            if n(&g, l + alpha)? != nl + o {
                return fail(format!("(d) at ℓ={l} on {g}"));
            }
        }
        let start = arith::floor(&(Rational::from_integer(alpha) + inv.gamma)) + 1;
        for l in start.max(0)..=start.max(0) + 2 * alpha.min(1000) {
            if n(&g, l)? < 0 {
                return fail(format!("(e) N({l}) < 0 on {g}"));
            }
        }
    }
    Ok(cases)
}

/// `N(ℓ₁ + ℓ₂) ≥ N(ℓ₁) + N(ℓ₂)` for `ℓᵢ ∈ [0, 3α]`.
pub fn superadditivity(rng: &mut Rng, cases: usize) -> Outcome {
    for _ in 0..cases {
        let g = random_graph(rng, 6, 30);
        let (alpha, _) = alpha_gamma(&g);
        for _ in 0..50 {
            let a = rng.gen_range(0..=3 * alpha);
            let b = rng.gen_range(0..=3 * alpha);
            if n(&g, a + b)? < n(&g, a)? + n(&g, b)? {
                return fail(format!("N({a}+{b}) on {g}"));
            }
        }
    }
    Ok(cases)
}

fn scan(g: &SSRGraph) -> Result<NumericalSemigroup, String> {
    lift(semigroup_of_graph(g), format!("scan of {g}"))
}

fn top_of(s: &[&NumericalSemigroup]) -> u64 {
    s.iter().map(|x| x.frobenius()).max().unwrap_or(-1).max(0) as u64 + 1
}

/// `S₁ ∩ S₂ ⊆ S_{Γ₁+Γ₂} ⊆ S₁ + S₂`.
pub fn sum_sandwich(rng: &mut Rng, cases: usize) -> Outcome {
    let mut done = 0;
    while done < cases {
        let a = random_graph(rng, 3, 20);
        let b = random_graph(rng, 3, 20);
        let sum = lift(sum_graphs(&a, &b), "sum")?;
        if !scan_bound(&sum).is_ok_and(|x| x <= MAX_SCAN) {
            continue;
        }
        let (s1, s2, s) = (scan(&a)?, scan(&b)?, scan(&sum)?);
        let plus = lift(s1.sum(&s2), "semigroup sum")?;
        for l in 0..=top_of(&[&s1, &s2, &s]) {
            if s1.contains(l) && s2.contains(l) && !s.contains(l) {
                return fail(format!("{l} in S1∩S2 but not in S of {sum}"));
            }
            if s.contains(l) && !plus.contains(l) {
                return fail(format!("{l} in S of {sum} but not in S1+S2"));
            }
        }
        done += 1;
    }
    Ok(cases)
}

/// `S_{kΓ} = S_Γ` for `k ≤ 5`.
pub fn scaling_law(rng: &mut Rng, cases: usize) -> Outcome {
    let mut done = 0;
    while done < cases {
        let g = random_graph(rng, 5, 20);
        let k = rng.gen_range(1..=5);
        let kg = lift(scale_graph(&g, k), "scale")?;
        if !scan_bound(&kg).is_ok_and(|x| x <= MAX_SCAN) {
            continue;
        }
        if scan(&kg)? != scan(&g)? {
            return fail(format!("S of {k}·{g} differs"));
        }
        done += 1;
    }
    Ok(cases)
}

/// `S_{Γ^(k)} = S_Γ / k` for `k ≤ 6`.
pub fn quotient_graph_law(rng: &mut Rng, cases: usize) -> Outcome {
    for _ in 0..cases {
        let g = random_graph(rng, 6, 30);
        let k = rng.gen_range(1..=6);
        let q = lift(quotient_graph(&g, k), format!("quotient of {g} by {k}"))?;
        let expected = lift(scan(&g)?.quotient(k as u64), "semigroup quotient")?;
        if scan(&q)? != expected {
            return fail(format!("S of {q} is not S of {g} divided by {k}"));
        }
    }
    Ok(cases)
}

/// `G(α, sᵢα₋ᵢ) ⊆ S_Γ ⊆ G(α, sᵢα*ᵢ)/𝔬`, checked through the submonoid type.
pub fn monoid_inclusions(rng: &mut Rng, cases: usize) -> Outcome {
    for _ in 0..cases {
        let g = random_graph(rng, 6, 30);
        let b = lift(monoid_bounds(&g), &g)?;
        let s = scan(&g)?;
        let (alpha, _) = alpha_gamma(&g);
        let top = (s.frobenius() as Int + alpha).max(0) as u64;
        for l in 0..=top {
            if b.lower.contains(l) && !s.contains(l) {
                return fail(format!("{l} in lower bound but not in S of {g}"));
            }
            if s.contains(l) && !b.upper.contains(l * b.divisor as u64) {
                return fail(format!("{l} in S of {g} but 𝔬ℓ not in upper bound"));
            }
        }
        if b.upper.content() == 0 || b.lower.content() == 0 {
            return fail("zero content");
        }
    }
    Ok(cases)
}

/// nGor ⟹ `N(ℓ) + N(γ − ℓ) = −2` for `ℓ ∈ [−α, 2α]`.
pub fn gorenstein_duality(rng: &mut Rng, cases: usize) -> Outcome {
    for _ in 0..cases {
        let g = random_ngor_graph(rng);
        let (alpha, gamma) = alpha_gamma(&g);
        let gamma = arith::as_integer(&gamma).ok_or("nGor graph with fractional γ")?;
        for l in -alpha..=2 * alpha {
            if n(&g, l)? + n(&g, gamma - l)? != -2 {
                return fail(format!("N({l}) + N(γ−{l}) ≠ −2 on {g}"));
            }
        }
    }
    Ok(cases)
}

/// nGor and `𝔬 = 1` ⟹ symmetric with `f = α + γ`.
pub fn gorenstein_symmetry(rng: &mut Rng, cases: usize) -> Outcome {
    let mut done = 0;
    while done < cases {
        let g = random_ngor_graph(rng);
        let inv = lift(graph_invariants(&g), &g)?;
        if inv.o != 1 {
            continue;
        }
        let s = scan(&g)?;
        if !s.is_symmetric() {
            return fail(format!("S of {g} is not symmetric"));
        }
        if Rational::from_integer(s.frobenius() as Int) != Rational::from_integer(inv.alpha_lcm) + inv.gamma {
            return fail(format!("f ≠ α + γ on {g}"));
        }
        done += 1;
    }
    Ok(cases)
}

fn generator_set_of(v: &[u64]) -> Result<GeneratorSet, String> {
    lift(GeneratorSet::new(v.to_vec()), "generator set")
}

/// Presentation → canonical representative → scanned semigroup, compared with
/// the sieve of the presentation; `f` against the closed formula, and some
/// ordering of the minimal generators attains Brauer's bound.
pub fn flat_round_trip(rng: &mut Rng, cases: usize) -> Outcome {
    for _ in 0..cases {
        let p = random_flat(rng, 4, 13, 6);
        let c = lift(canonical_representative(&p), &p)?;
        let inv = lift(graph_invariants(&c.graph), &c.graph)?;
        if inv.o != 1 || !lift(is_numerically_gorenstein(&c.graph), "nGor")? {
            return fail(format!("{} is not a canonical representative", c.graph));
        }
        let scanned = scan(&c.graph)?;
        let sieved = lift(p.semigroup(), &p)?;
        if scanned != sieved {
            return fail(format!("{p}: scan {scanned} vs sieve {sieved}"));
        }
        let gens = lift(p.generator_set(), &p)?;
        let f = sieved.frobenius() as Int;
        if lift(flat_frobenius(&gens), &p)? != f || lift(p.frobenius(), &p)? != f {
            return fail(format!("{p}: closed Frobenius formula differs from {f}"));
        }
        let minimal = generator_set_of(sieved.minimal_generators())?;
        if !sieved.is_naturals() && lift(min_brauer_over_permutations(&minimal), &p)? != f {
            return fail(format!("{p}: no ordering of {sieved} attains T = f"));
        }
    }
    Ok(cases)
}

/// Strongly flat ⟹ `f = B`, on strongly flat systems `{α̂ᵢ}` and on random
/// generator sets that classify as strongly flat.
pub fn strongly_flat_bound(rng: &mut Rng, cases: usize) -> Outcome {
    let mut done = 0;
    while done < cases {
        let gens = if done % 2 == 0 {
            let alphas = random_coprime_alphas(rng, 2, 4, 13);
            let prod: Int = alphas.iter().product();
            generator_set_of(&alphas.iter().map(|&a| (prod / a) as u64).collect::<Vec<_>>())?
        } else {
            random_generators(rng, 60)
        };
        let s = lift(build_semigroup(&gens), "sieve")?;
        if classify_semigroup(&s) != FlatnessClass::StronglyFlat || s.is_naturals() {
            continue;
        }
        let minimal = generator_set_of(s.minimal_generators())?;
        if lift(bound_b(&minimal), "B")? != s.frobenius() as Int {
            return fail(format!("{s}: f ≠ B"));
        }
        done += 1;
    }
    Ok(cases)
}

/// `decompose` certificates verify and reproduce the scanned semigroup.
pub fn decompose_round_trip(rng: &mut Rng, cases: usize) -> Outcome {
    for _ in 0..cases {
        let g = random_graph(rng, 6, 30);
        let cert = lift(decompose(&g), format!("decompose {g}"))?;
        lift(cert.verify(), format!("verify {g}"))?;
        if lift(cert.quotient_semigroup(), "quotient")? != scan(&g)? {
            return fail(format!("certificate of {g} yields a different semigroup"));
        }
    }
    Ok(cases)
}

/// Closed Frobenius formula against the sieve.
pub fn flat_frobenius_oracle(rng: &mut Rng, cases: usize) -> Outcome {
    for _ in 0..cases {
        let p = random_flat(rng, 4, 13, 6);
        let gens = lift(p.generator_set(), &p)?;
        let sieve = lift(build_semigroup(&gens), "sieve")?.frobenius() as Int;
        let closed = lift(flat_frobenius(&gens), &p)?;
        if closed != sieve {
            return fail(format!("{p}: formula {closed}, sieve {sieve}"));
        }
        if lift(classify(&gens), "classify")? == FlatnessClass::NonFlat {
            return fail(format!("{p} classified non-flat"));
        }
    }
    Ok(cases)
}

/// Perturbed graphs keep `S_Γ`, become coprime, and each perturbed ratio
/// lies in the window of the original.
pub fn perturbation_soundness(rng: &mut Rng, cases: usize) -> Outcome {
    for _ in 0..cases {
        let g = random_graph(rng, 6, 30);
        let s = scan(&g)?;
        let m = (*s.minimal_generators().last().unwrap() as Int).max(s.frobenius() as Int).max(1);
        let p = lift(perturb_graph(&g, m), format!("perturb {g}"))?;
        let blocks: Vec<Int> = p.legs().iter().map(|l| l.alpha).collect();
        if !arith::pairwise_coprime(&blocks) {
            return fail(format!("{p} is not pairwise coprime"));
        }
        for l in 0..=m {
            if n(&g, l)? != n(&p, l)? {
                return fail(format!("N({l}) differs between {g} and {p}"));
            }
        }
        for leg in g.legs() {
            let w = lift(PerturbationWindow::new(leg.alpha, leg.omega, m), "window")?;
            if !p.legs().iter().any(|q| w.contains(&q.ratio())) {
                return fail(format!("no perturbed leg of {p} lies in the window of {leg}"));
            }
        }
    }
    Ok(cases)
}

/// For canonical representatives: `|H| = 𝔥`, ICIS dimension 2, and `𝔥 = 1`
/// when all `sᵢ = 1` with `n ≥ 3`.
pub fn canonical_structure(rng: &mut Rng, cases: usize) -> Outcome {
    for _ in 0..cases {
        let p = random_flat(rng, 4, 13, 4);
        let c = lift(canonical_representative(&p), &p)?;
        let inv = lift(graph_invariants(&c.graph), &c.graph)?;
        let order: Int = lift(h_group(&c), "H")?.iter().map(|&(q, k)| q.pow(k)).product();
        if order != inv.h {
            return fail(format!("{p}: |H| = {order}, 𝔥 = {}", inv.h));
        }
        if p.mults().iter().all(|&s| s == 1) && p.len() >= 3 && inv.h != 1 {
            return fail(format!("{p}: strongly flat with 𝔥 = {}", inv.h));
        }
        if p.leg_count() >= 2 {
            let sys = lift(icis_equations(&c), &p)?;
            if sys.dimension() != 2 {
                return fail(format!("{p}: ICIS dimension {}", sys.dimension()));
            }
        }
    }
    Ok(cases)
}

/// A named suite for the acceptance runner.
pub type Suite = (&'static str, fn(&mut Rng, usize) -> Outcome);

pub const GRAPH_SUITES: &[Suite] = &[
    ("N inequalities (a,c,d,e)", n_function_inequalities),
    ("superadditivity of N", superadditivity),
    ("sum sandwich", sum_sandwich),
    ("scaling law k <= 5", scaling_law),
    ("quotient-graph law k <= 6", quotient_graph_law),
    ("monoid inclusions", monoid_inclusions),
    ("nGor duality on [-alpha, 2alpha]", gorenstein_duality),
    ("nGor and o = 1 give symmetry", gorenstein_symmetry),
    ("flat round trip", flat_round_trip),
    ("strongly flat gives f = B", strongly_flat_bound),
    ("decompose round trip", decompose_round_trip),
];
