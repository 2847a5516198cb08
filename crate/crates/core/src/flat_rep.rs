//! Canonical star-shaped representatives of flat semigroups, the group `H`,
//! numerical data of the universal abelian cover, and complete intersection
//! equations.

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::{self, Int, Rational};
use crate::error::{Error, Result};
use crate::flatness::FlatPresentation;
use crate::seifert::{self, SSRGraph, SeifertLeg};

/// Unique solution of `α(b̃0 − Σ ω̃ᵢ/αᵢ) = 1` with `0 < ω̃ᵢ < αᵢ`:
/// `ω̃ᵢ ≡ −α̂ᵢ⁻¹ (mod αᵢ)` and `b̃0 = (1 + Σ ω̃ᵢα̂ᵢ)/α`.
pub fn base_diophantine(alphas: &[Int]) -> Result<(Int, Vec<Int>)> {
    for &a in alphas {
        if a < 2 {
            return Err(Error::TooSmall {
                what: "alpha",
                min: 2,
                got: a,
            });
        }
    }
    if !arith::pairwise_coprime(alphas) {
        return Err(Error::NotPairwiseCoprime(alphas.to_vec()));
    }
    let alpha = arith::product(alphas.iter().copied(), "alpha")?;
    let mut omegas = Vec::with_capacity(alphas.len());
    let mut numerator: Int = 1;
    for &a in alphas {
        let hat = alpha / a;
        let w = (-arith::mod_inverse(hat, a).expect("coprime")).rem_euclid(a);
        numerator = arith::add(numerator, arith::mul(w, hat, "base solution")?, "base solution")?;
        omegas.push(w);
    }
    debug_assert_eq!(numerator % alpha, 0);
    Ok((numerator / alpha, omegas))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalRepresentative {
    pub graph: SSRGraph,
    pub presentation: FlatPresentation,
    /// `b̃0` of the base solution.
    pub base_b0: Int,
    /// `ω̃ᵢ`, in presentation order.
    pub base_omegas: Vec<Int>,
    /// `kᵢ ∈ [0, sᵢ)` with `kᵢαᵢ + ω̃ᵢ ≡ 0 (mod sᵢ)`.
    pub offsets: Vec<Int>,
    /// `ωᵢ = (kᵢαᵢ + ω̃ᵢ)/sᵢ`, in presentation order.
    pub omegas: Vec<Int>,
}

impl CanonicalRepresentative {
    /// Scans the semigroup of the graph and compares it with the presented
    /// semigroup.
    pub fn verify(&self) -> Result<()> {
        let s = seifert::semigroup_of_graph(&self.graph)?;
        let f = self.presentation.frobenius()?;
        if s.frobenius() as Int != f {
            return Err(Error::Inconsistent(format!(
                "graph Frobenius number {} differs from the presentation's {f}",
                s.frobenius()
            )));
        }
        for l in 0..=(f + 1).max(0) {
            if s.contains(l as u64) != self.presentation.contains(l)? {
                return Err(Error::Inconsistent(format!("membership of {l} differs")));
            }
        }
        Ok(())
    }
}

/// The canonical representative `(−b0; sᵢ×(αᵢ,ωᵢ))` of a flat presentation,
/// with `b0 = b̃0 + Σ kᵢ`.
///
/// The cheap invariants `e = −1/α`, `𝔬 = 1`, numerical Gorensteinness and
/// `f = α + γ` are checked here; [`CanonicalRepresentative::verify`] adds the
/// semigroup comparison.
pub fn canonical_representative(p: &FlatPresentation) -> Result<CanonicalRepresentative> {
    let (base_b0, base_omegas) = base_diophantine(p.alphas())?;
    let mut offsets = Vec::new();
    let mut omegas = Vec::new();
    let mut legs = Vec::new();
    let mut b0 = base_b0;
    for ((&a, &s), &wt) in p.alphas().iter().zip(p.mults()).zip(&base_omegas) {
        let k = if s == 1 {
            0
        } else {
            let inv = arith::mod_inverse(a, s).expect("gcd(alpha, s) = 1");
            arith::mul((-wt).rem_euclid(s), inv, "offset")?.rem_euclid(s)
        };
        let w = arith::add(arith::mul(k, a, "omega")?, wt, "omega")? / s;
        b0 = arith::add(b0, k, "b0")?;
        offsets.push(k);
        omegas.push(w);
        legs.push(SeifertLeg::new(a, w, s)?);
    }
    let graph = SSRGraph::new(b0, legs)?;
    let inv = seifert::graph_invariants(&graph)?;
    if inv.o != 1 || inv.e != arith::rat(-1, p.alpha()) {
        return Err(Error::Inconsistent(format!(
            "canonical representative {graph} has e = {} and o = {}",
            arith::fmt_rational(&inv.e),
            inv.o
        )));
    }
    if !seifert::is_numerically_gorenstein(&graph)? {
        return Err(Error::Inconsistent(format!("{graph} is not numerically Gorenstein")));
    }
    let top = arith::radd(&arith::rint(inv.alpha_lcm), &inv.gamma, "alpha + gamma")?;
    if top != arith::rint(p.frobenius()?) {
        return Err(Error::Inconsistent(format!(
            "alpha + gamma = {} differs from the presentation's Frobenius number",
            arith::fmt_rational(&top)
        )));
    }
    Ok(CanonicalRepresentative {
        graph,
        presentation: p.clone(),
        base_b0,
        base_omegas,
        offsets,
        omegas,
    })
}

/// `H ≅ ⊕ ℤ_{αᵢ}^{sᵢ−1}` split into prime-power cyclic factors, as
/// `(order, exponent)` pairs in increasing order. The group order is checked
/// against `𝔥`.
pub fn h_group(c: &CanonicalRepresentative) -> Result<Vec<(Int, u32)>> {
    let mut parts: BTreeMap<Int, u32> = BTreeMap::new();
    for (&a, &s) in c.presentation.alphas().iter().zip(c.presentation.mults()) {
        if s == 1 {
            continue;
        }
        let e = u32::try_from(s - 1).map_err(|_| Error::Overflow("H exponent"))?;
        for (prime, k) in arith::prime_power_factors(a) {
            *parts.entry(arith::pow(prime, k, "H factor")?).or_default() += e;
        }
    }
    let mut order: Int = 1;
    for (&q, &e) in &parts {
        order = arith::mul(order, arith::pow(q, e, "H order")?, "H order")?;
    }
    let h = seifert::graph_invariants(&c.graph)?.h;
    if order != h {
        return Err(Error::Inconsistent(format!("|H| = {order} but h = {h}")));
    }
    Ok(parts.into_iter().collect())
}

/// Renders `[(2,4),(3,9)]` as `Z2^4 + Z3^9`, and the trivial group as `0`.
pub fn fmt_h_group(parts: &[(Int, u32)]) -> String {
    if parts.is_empty() {
        return "0".into();
    }
    parts
        .iter()
        .map(|&(q, e)| if e == 1 { format!("Z{q}") } else { format!("Z{q}^{e}") })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianCoverData {
    /// `g^ab = 1 + ½ P (Σ_{sᵢ>1} sᵢ(1 − 1/αᵢ) − 2)` with `P = ∏ α_l^{s_l−1}`.
    pub genus: Rational,
    /// `e^ab = −∏ α_l^{s_l−2}`, evaluated literally.
    pub euler: Rational,
    /// Legs with `sᵢ = 1` survive as `(αᵢ, ωᵢ^ab)` with multiplicity `P`,
    /// where `ωᵢ^ab α̂ᵢ ≡ −1 (mod αᵢ)`.
    pub legs: Vec<SeifertLeg>,
}

pub fn abelian_cover_data(c: &CanonicalRepresentative) -> Result<AbelianCoverData> {
    let p = &c.presentation;
    let mut big_p: Int = 1;
    let mut euler = arith::rint(1);
    let mut sum = arith::rint(-2);
    for (&a, &s) in p.alphas().iter().zip(p.mults()) {
        let e1 = u32::try_from(s - 1).map_err(|_| Error::Overflow("cover multiplicity"))?;
        big_p = arith::mul(big_p, arith::pow(a, e1, "cover multiplicity")?, "cover multiplicity")?;
        let factor = if s >= 2 {
            let e2 = u32::try_from(s - 2).map_err(|_| Error::Overflow("cover Euler number"))?;
            arith::rint(arith::pow(a, e2, "cover Euler number")?)
        } else {
            arith::rat(1, a)
        };
        euler = arith::rmul(&euler, &factor, "cover Euler number")?;
        if s > 1 {
            let t = arith::rmul(&arith::rint(s), &arith::rat(a - 1, a), "cover genus")?;
            sum = arith::radd(&sum, &t, "cover genus")?;
        }
    }
    let half = arith::rmul(&arith::rat(big_p, 2), &sum, "cover genus")?;
    let genus = arith::radd(&arith::rint(1), &half, "cover genus")?;
    let mut legs = Vec::new();
    for i in 0..p.len() {
        if p.mults()[i] != 1 {
            continue;
        }
        let a = p.alphas()[i];
        let w = (-arith::mod_inverse(p.alpha_hat(i), a).expect("coprime")).rem_euclid(a);
        legs.push(SeifertLeg::new(a, w, big_p)?);
    }
    Ok(AbelianCoverData {
        genus,
        euler: -euler,
        legs,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IcisCase {
    /// No block has multiplicity one.
    I,
    /// Exactly one block has multiplicity one.
    II,
    /// At least two blocks have multiplicity one.
    III,
}

impl fmt::Display for IcisCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IcisCase::I => "I",
            IcisCase::II => "II",
            IcisCase::III => "III",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coefficient {
    Generic(String),
    Zero,
    One,
}

/// `var^exp`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub var: String,
    pub exp: Int,
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 1 {
            f.write_str(&self.var)
        } else {
            write!(f, "{}^{}", self.var, self.exp)
        }
    }
}

/// `c₁·m₁ + c₂·m₂`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Binomial {
    pub terms: [(Coefficient, Monomial); 2],
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: Vec<String> = self
            .terms
            .iter()
            .filter_map(|(c, m)| match c {
                Coefficient::Zero => None,
                Coefficient::One => Some(m.to_string()),
                Coefficient::Generic(name) => Some(format!("{name}*{m}")),
            })
            .collect();
        if shown.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&shown.join(" + "))
        }
    }
}

/// `lhs = ∏ factors`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IcisEquation {
    pub lhs: Monomial,
    pub factors: Vec<Binomial>,
}

impl fmt::Display for IcisEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = ", self.lhs)?;
        if self.factors.len() == 1 {
            return write!(f, "{}", self.factors[0]);
        }
        let parts: Vec<String> = self.factors.iter().map(|b| format!("({b})")).collect();
        f.write_str(&parts.join("*"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IcisSystem {
    pub case: IcisCase,
    pub variables: Vec<String>,
    pub equations: Vec<IcisEquation>,
}

impl IcisSystem {
    /// Embedding dimension minus the number of equations; 2 for a surface.
    pub fn dimension(&self) -> i64 {
        self.variables.len() as i64 - self.equations.len() as i64
    }
}

impl fmt::Display for IcisSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "case {} in variables {}", self.case, self.variables.join(", "))?;
        for e in &self.equations {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

fn mono(var: impl Into<String>, exp: Int) -> Monomial {
    Monomial { var: var.into(), exp }
}

fn generic(prefix: &str, i: usize, j: Int) -> Coefficient {
    Coefficient::Generic(format!("{prefix}_{}_{j}", i + 1))
}

/// Product `∏ⱼ (a_{j(i)} u + b_{j(i)} v)` for block `i`, with the slot
/// `pins[k].0` forced to `(a, b) = pins[k].1`.
fn block_factors(i: usize, s: Int, u: &Monomial, v: &Monomial, pins: &[(Int, (Coefficient, Coefficient))]) -> Vec<Binomial> {
    (1..=s)
        .map(|j| {
            let (a, b) = pins
                .iter()
                .find(|(slot, _)| *slot == j)
                .map(|(_, ab)| ab.clone())
                .unwrap_or_else(|| (generic("a", i, j), generic("b", i, j)));
            Binomial {
                terms: [(a, u.clone()), (b, v.clone())],
            }
        })
        .collect()
}

/// Complete intersection equations of the singularities with the canonical
/// representative's topology, selected by `K = #{i : sᵢ = 1}`.
///
/// Block `i` (1-based, presentation order) owns the variables `z_i` when
/// `sᵢ = 1` and `w_i` otherwise. Generic coefficients are named
/// `a_i_j`, `b_i_j`, `p_i`, `q_i`.
pub fn icis_equations(c: &CanonicalRepresentative) -> Result<IcisSystem> {
    let p = &c.presentation;
    if p.leg_count() < 2 {
        return Err(Error::IcisUnavailable("at least two legs are needed"));
    }
    let alphas = p.alphas();
    let mults = p.mults();
    let ones: Vec<usize> = (0..p.len()).filter(|&i| mults[i] == 1).collect();
    let many: Vec<usize> = (0..p.len()).filter(|&i| mults[i] > 1).collect();
    let w = |i: usize| format!("w_{}", i + 1);
    let pin_a = (Coefficient::One, Coefficient::Zero);
    let pin_b = (Coefficient::Zero, Coefficient::One);

    let system = match ones.len() {
        0 => {
            let (x, y) = (mono("x", 1), mono("y", 1));
            let i1 = many[0];
            let (i2, j2) = if many.len() > 1 { (many[1], 1) } else { (i1, 2) };
            let mut variables = vec!["x".to_string(), "y".to_string()];
            let mut equations = Vec::new();
            for &i in &many {
                let mut pins = Vec::new();
                if i == i1 {
                    pins.push((1, pin_a.clone()));
                }
                if i == i2 {
                    pins.push((j2, pin_b.clone()));
                }
                variables.push(w(i));
                equations.push(IcisEquation {
                    lhs: mono(w(i), alphas[i]),
                    factors: block_factors(i, mults[i], &x, &y, &pins),
                });
            }
            IcisSystem {
                case: IcisCase::I,
                variables,
                equations,
            }
        }
        1 => {
            let z = mono("z", alphas[ones[0]]);
            let x = mono("x", 1);
            let i0 = many[0];
            let mut variables = vec!["z".to_string(), "x".to_string()];
            let mut equations = Vec::new();
            for &i in &many {
                let pins = if i == i0 { vec![(1, pin_b.clone())] } else { vec![] };
                variables.push(w(i));
                equations.push(IcisEquation {
                    lhs: mono(w(i), alphas[i]),
                    factors: block_factors(i, mults[i], &z, &x, &pins),
                });
            }
            IcisSystem {
                case: IcisCase::II,
                variables,
                equations,
            }
        }
        _ => {
            let (i1, i2) = (ones[0], ones[1]);
            let x = mono("x", alphas[i1]);
            let y = mono("y", alphas[i2]);
            let mut variables = vec!["x".to_string(), "y".to_string()];
            let mut equations = Vec::new();
            for &i in &ones[2..] {
                let z = format!("z_{}", i + 1);
                variables.push(z.clone());
                equations.push(IcisEquation {
                    lhs: mono(z, alphas[i]),
                    factors: vec![Binomial {
                        terms: [
                            (Coefficient::Generic(format!("p_{}", i + 1)), x.clone()),
                            (Coefficient::Generic(format!("q_{}", i + 1)), y.clone()),
                        ],
                    }],
                });
            }
            for &i in &many {
                variables.push(w(i));
                equations.push(IcisEquation {
                    lhs: mono(w(i), alphas[i]),
                    factors: block_factors(i, mults[i], &x, &y, &[]),
                });
            }
            IcisSystem {
                case: IcisCase::III,
                variables,
                equations,
            }
        }
    };
    if system.dimension() != 2 {
        return Err(Error::Inconsistent(format!(
            "{} variables but {} equations",
            system.variables.len(),
            system.equations.len()
        )));
    }
    Ok(system)
}
