//! Every graph semigroup is a quotient of a flat semigroup: perturb the
//! Seifert invariants until the leg data is coprime without changing `N` on a
//! long enough range, then divide the canonical representative's semigroup
//! by `𝔬`.

use crate::arith::{self, Int, Rational};
use crate::error::{Error, Result};
use crate::flat_rep::canonical_representative;
use crate::flatness::FlatPresentation;
use crate::seifert::{self, SSRGraph, SeifertLeg};
use crate::semigroup::{NumericalSemigroup, Submonoid};

/// The interval `(r − 1/(αM), r]` around `r = ω/α`. Every `r′` in it has
/// `⌈r′ℓ⌉ = ⌈rℓ⌉` for `0 ≤ ℓ ≤ M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerturbationWindow {
    pub r: Rational,
    pub horizon: Int,
    pub left: Rational,
}

impl PerturbationWindow {
    pub fn new(alpha: Int, omega: Int, horizon: Int) -> Result<Self> {
        SeifertLeg::single(alpha, omega)?;
        if horizon < 1 {
            return Err(Error::TooSmall {
                what: "perturbation horizon",
                min: 1,
                got: horizon,
            });
        }
        let left_num = arith::sub(arith::mul(omega, horizon, "window")?, 1, "window")?;
        let left_den = arith::mul(alpha, horizon, "window")?;
        Ok(Self {
            r: arith::rat(omega, alpha),
            horizon,
            left: arith::rat(left_num, left_den),
        })
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.left < *x && *x <= self.r
    }

    /// Smallest integer `x` with `left·D < x ≤ r·D`.
    pub fn first_numerator(&self, d: Int) -> Result<Option<Int>> {
        let lo = arith::rmul(&self.left, &arith::rint(d), "window")?;
        let hi = arith::rmul(&self.r, &arith::rint(d), "window")?;
        let x = arith::floor(&lo) + 1;
        Ok((x <= arith::floor(&hi)).then_some(x))
    }

    /// Direct check of `⌈r′ℓ⌉ = ⌈rℓ⌉` on `[0, M]`.
    pub fn preserves_ceilings(&self, x: &Rational) -> Result<bool> {
        for l in 0..=self.horizon {
            let a = arith::ceil_div(arith::mul(*x.numer(), l, "ceiling")?, *x.denom());
            let b = arith::ceil_div(arith::mul(*self.r.numer(), l, "ceiling")?, *self.r.denom());
            if a != b {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn leg_from_fraction(x: Int, d: Int, mult: Int) -> Result<SeifertLeg> {
    let g = arith::gcd(x, d);
    SeifertLeg::new(d / g, x / g, mult)
}

/// `x/(k·D_base + 1)` with the smallest `k ≥ 1`, then the smallest `x`,
/// inside the window. The new `α′` divides `k·D_base + 1` and is therefore
/// coprime to `D_base`.
pub fn perturb_ratio(leg: &SeifertLeg, horizon: Int, d_base: Int) -> Result<SeifertLeg> {
    check_base(d_base)?;
    let w = PerturbationWindow::new(leg.alpha, leg.omega, horizon)?;
    let mut k: Int = 1;
    loop {
        let d = arith::add(arith::mul(k, d_base, "perturbed denominator")?, 1, "perturbed denominator")?;
        if let Some(x) = w.first_numerator(d)? {
            return leg_from_fraction(x, d, leg.mult);
        }
        k += 1;
    }
}

/// Smallest denominator `D ≥ 2` coprime to `D_base` whose window slice
/// contains an integer, then the smallest such numerator.
pub fn perturb_ratio_coprime(leg: &SeifertLeg, horizon: Int, d_base: Int) -> Result<SeifertLeg> {
    check_base(d_base)?;
    let w = PerturbationWindow::new(leg.alpha, leg.omega, horizon)?;
    let mut d: Int = 2;
    loop {
        if arith::gcd(d, d_base) == 1 {
            if let Some(x) = w.first_numerator(d)? {
                return leg_from_fraction(x, d, leg.mult);
            }
        }
        d = arith::add(d, 1, "perturbed denominator")?;
    }
}

fn check_base(d_base: Int) -> Result<()> {
    if d_base < 1 {
        return Err(Error::TooSmall {
            what: "perturbation base",
            min: 1,
            got: d_base,
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PerturbationPolicy {
    /// Denominators of the form `k·D_base + 1`.
    Literal,
    /// Any denominator coprime to `D_base`, smallest first.
    #[default]
    Coprime,
}

/// [`perturb_graph_with`] under the default policy.
pub fn perturb_graph(g: &SSRGraph, horizon: Int) -> Result<SSRGraph> {
    perturb_graph_with(g, horizon, PerturbationPolicy::default())
}

/// Replaces leg blocks, in canonical order, until the alphas are pairwise
/// coprime and each is coprime to its multiplicity, keeping `N(ℓ)` fixed for
/// `0 ≤ ℓ ≤ horizon`.
///
/// Block `i` is kept when `gcd(αᵢ, sᵢ·∏ α′ⱼ) = 1` over the earlier blocks;
/// otherwise it is perturbed with `D_base = sᵢ·∏ α′ⱼ`. The result is checked
/// by evaluating `N` on the whole range.
pub fn perturb_graph_with(g: &SSRGraph, horizon: Int, policy: PerturbationPolicy) -> Result<SSRGraph> {
    let mut legs = Vec::with_capacity(g.legs().len());
    let mut prefix: Int = 1;
    for leg in g.legs() {
        let base = arith::mul(prefix, leg.mult, "perturbation base")?;
        let new = if arith::gcd(leg.alpha, base) == 1 {
            *leg
        } else {
            match policy {
                PerturbationPolicy::Literal => perturb_ratio(leg, horizon, base)?,
                PerturbationPolicy::Coprime => perturb_ratio_coprime(leg, horizon, base)?,
            }
        };
        prefix = arith::mul(prefix, new.alpha, "perturbation base")?;
        legs.push(new);
    }
    let out = SSRGraph::new(g.b0(), legs)?;
    check_coprime(&out)?;
    for l in 0..=horizon {
        if seifert::n_value(&out, l)? != seifert::n_value(g, l)? {
            return Err(Error::Inconsistent(format!("perturbation changed N({l})")));
        }
    }
    Ok(out)
}

fn check_coprime(g: &SSRGraph) -> Result<()> {
    let alphas: Vec<Int> = g.legs().iter().map(|l| l.alpha).collect();
    if !arith::pairwise_coprime(&alphas) {
        return Err(Error::CoprimalityRequired(format!(
            "leg alphas {alphas:?} of {g} are not pairwise coprime"
        )));
    }
    if let Some(l) = g.legs().iter().find(|l| arith::gcd(l.alpha, l.mult) != 1) {
        return Err(Error::CoprimalityRequired(format!(
            "leg ({},{}) of {g} has multiplicity {} sharing a factor with its alpha",
            l.alpha, l.omega, l.mult
        )));
    }
    Ok(())
}

/// Evidence that `S_graph = G(α, s₁α̂₁, …, sₙα̂ₙ) / divisor`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientCertificate {
    pub graph: SSRGraph,
    /// Coprime graph with the same semigroup; equal to `graph` when no
    /// perturbation was needed.
    pub perturbed_graph: SSRGraph,
    pub flat: FlatPresentation,
    pub divisor: Int,
    /// Canonical representative of `flat`.
    pub tilde_graph: SSRGraph,
}

impl QuotientCertificate {
    /// Re-checks everything: the quotient law against a fresh scan of
    /// `graph`, and the structural relations between the parts.
    pub fn verify(&self) -> Result<()> {
        let s = seifert::semigroup_of_graph(&self.graph)?;
        verify_quotient(&self.flat, self.divisor, &s)?;
        if self.tilde_graph != canonical_representative(&self.flat)?.graph {
            return Err(Error::CertificateRejected(format!(
                "{} is not the canonical representative of {}",
                self.tilde_graph, self.flat
            )));
        }
        let inv = seifert::graph_invariants(&self.perturbed_graph)?;
        if inv.o != self.divisor {
            return Err(Error::CertificateRejected(format!(
                "perturbed graph has o = {} but the divisor is {}",
                inv.o, self.divisor
            )));
        }
        let blocks: Vec<(Int, Int)> = self.perturbed_graph.legs().iter().map(|l| (l.alpha, l.mult)).collect();
        let mut flat: Vec<(Int, Int)> = self.flat.alphas().iter().copied().zip(self.flat.mults().iter().copied()).collect();
        flat.sort();
        if blocks != flat {
            return Err(Error::CertificateRejected(
                "flat presentation does not match the perturbed graph's legs".into(),
            ));
        }
        Ok(())
    }

    pub fn quotient_semigroup(&self) -> Result<NumericalSemigroup> {
        quotient_of_flat(&self.flat, self.divisor)
    }
}

/// `F/k` for a flat presentation, without sieving `F`. Membership uses the
/// closed form, and the scan stops once `k·ℓ` passes the Frobenius number of
/// `F`.
pub fn quotient_of_flat(flat: &FlatPresentation, k: Int) -> Result<NumericalSemigroup> {
    if k < 1 {
        return Err(Error::TooSmall {
            what: "quotient divisor",
            min: 1,
            got: k,
        });
    }
    let bound = arith::floor_div(flat.frobenius()?.max(0), k);
    let mut err = None;
    let s = NumericalSemigroup::from_predicate(bound as u64, |l| {
        match arith::mul(l as Int, k, "quotient").and_then(|kl| flat.contains(kl)) {
            Ok(b) => b,
            Err(e) => {
                err.get_or_insert(e);
                false
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => s,
    }
}

/// Checks `ℓ ∈ s ⟺ kℓ ∈ F`. Agreement on `[0, f(s) + 1 + m(s)]` is enough:
/// it forces `m` consecutive members past `f(s)` into `F/k`, which is closed
/// under adding its member `m`.
pub fn verify_quotient(flat: &FlatPresentation, k: Int, s: &NumericalSemigroup) -> Result<()> {
    if k < 1 {
        return Err(Error::CertificateRejected(format!("divisor {k} is not positive")));
    }
    let top = s.frobenius() as Int + 1 + s.multiplicity() as Int;
    for l in 0..=top {
        let in_f = flat.contains(arith::mul(l, k, "quotient check")?)?;
        if in_f != s.contains(l as u64) {
            return Err(Error::CertificateRejected(format!(
                "{l} is {} the graph semigroup but {} {flat}/{k}",
                if s.contains(l as u64) { "in" } else { "not in" },
                if in_f { "in" } else { "not in" }
            )));
        }
    }
    Ok(())
}

/// Thm-5.1 construction for a coprime graph: `kᵢ ∈ [0, 𝔬)` with
/// `kᵢαᵢ + ωᵢ ≡ 0 (mod 𝔬)`, `ω̃ᵢ = (kᵢαᵢ + ωᵢ)/𝔬`, `b̃0 = (b0 + Σ sᵢkᵢ)/𝔬`.
/// The result is verified against a scan of `g`.
pub fn flat_quotient(g: &SSRGraph) -> Result<QuotientCertificate> {
    let cert = build_flat_quotient(g)?;
    verify_quotient(&cert.flat, cert.divisor, &seifert::semigroup_of_graph(g)?)?;
    Ok(cert)
}

fn build_flat_quotient(g: &SSRGraph) -> Result<QuotientCertificate> {
    check_coprime(g)?;
    let inv = seifert::graph_invariants(g)?;
    let o = inv.o;
    let mut legs = Vec::new();
    let mut b0_num = g.b0();
    for l in g.legs() {
        let inv_a = arith::mod_inverse(l.alpha, o).ok_or_else(|| {
            Error::Inconsistent(format!("gcd(alpha = {}, o = {o}) != 1 on a coprime graph", l.alpha))
        })?;
        let k = arith::mul((-l.omega).rem_euclid(o), inv_a, "flat quotient offset")?.rem_euclid(o);
        let num = arith::add(arith::mul(k, l.alpha, "flat quotient")?, l.omega, "flat quotient")?;
        debug_assert_eq!(num % o, 0);
        legs.push(SeifertLeg::new(l.alpha, num / o, l.mult)?);
        b0_num = arith::add(b0_num, arith::mul(l.mult, k, "flat quotient")?, "flat quotient")?;
    }
    if b0_num % o != 0 {
        return Err(Error::Inconsistent(format!("b0 + sum s k = {b0_num} is not divisible by o = {o}")));
    }
    let tilde = SSRGraph::new(b0_num / o, legs)?;
    let tinv = seifert::graph_invariants(&tilde)?;
    if tinv.o != 1 || tinv.e != arith::rdiv(&inv.e, &arith::rint(o), "e/o")? {
        return Err(Error::Inconsistent(format!("{tilde} does not have o = 1 and e = e/o")));
    }
    let flat = FlatPresentation::new(
        g.legs().iter().map(|l| l.alpha).collect(),
        g.legs().iter().map(|l| l.mult).collect(),
    )?;
    Ok(QuotientCertificate {
        graph: g.clone(),
        perturbed_graph: g.clone(),
        flat,
        divisor: o,
        tilde_graph: tilde,
    })
}

/// Horizon used by [`decompose`]: the largest of the biggest minimal
/// generator, the Frobenius number, and 1.
pub fn decomposition_horizon(s: &NumericalSemigroup) -> Int {
    let top = *s.minimal_generators().last().unwrap_or(&1) as Int;
    top.max(s.frobenius() as Int).max(1)
}

/// Writes `S_Γ` as a flat semigroup divided by an integer.
pub fn decompose(g: &SSRGraph) -> Result<QuotientCertificate> {
    decompose_with(g, PerturbationPolicy::default())
}

pub fn decompose_with(g: &SSRGraph, policy: PerturbationPolicy) -> Result<QuotientCertificate> {
    let s = seifert::semigroup_of_graph(g)?;
    let perturbed = perturb_graph_with(g, decomposition_horizon(&s), policy)?;
    let mut cert = build_flat_quotient(&perturbed)?;
    verify_quotient(&cert.flat, cert.divisor, &s)?;
    cert.graph = g.clone();
    Ok(cert)
}

/// `G(α, sᵢα₋ᵢ) ⊆ S_Γ ⊆ G(α, sᵢα*ᵢ)/𝔬` with `α₋ᵢ = lcm_{j≠i} αⱼ` and
/// `α*ᵢ = α/αᵢ`.
#[derive(Debug, Clone)]
pub struct MonoidBounds {
    pub lower: Submonoid,
    pub upper: Submonoid,
    pub divisor: Int,
}

impl MonoidBounds {
    pub fn upper_contains(&self, l: u64) -> bool {
        (l as u128)
            .checked_mul(self.divisor as u128)
            .and_then(|x| u64::try_from(x).ok())
            .is_some_and(|x| self.upper.contains(x))
    }

    /// Checks both inclusions for `0 ≤ ℓ ≤ f + α`.
    pub fn check(&self, s: &NumericalSemigroup, alpha: Int) -> Result<()> {
        let top = (s.frobenius() as Int + alpha).max(0) as u64;
        for l in 0..=top {
            if self.lower.contains(l) && !s.contains(l) {
                return Err(Error::Inconsistent(format!("{l} is in the lower bound but not in S")));
            }
            if s.contains(l) && !self.upper_contains(l) {
                return Err(Error::Inconsistent(format!("{l} is in S but not in the upper bound")));
            }
        }
        Ok(())
    }
}

pub fn monoid_bounds(g: &SSRGraph) -> Result<MonoidBounds> {
    let inv = seifert::graph_invariants(g)?;
    let alpha = inv.alpha_lcm;
    let legs = g.legs();
    let mut lower = vec![alpha];
    let mut upper = vec![alpha];
    for (i, l) in legs.iter().enumerate() {
        let others = arith::lcm_all(
            legs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, m)| m.alpha),
            "lcm of other alphas",
        )?;
        lower.push(arith::mul(l.mult, others, "lower bound generator")?);
        upper.push(arith::mul(l.mult, alpha / l.alpha, "upper bound generator")?);
    }
    let to_u64 = |v: Vec<Int>| -> Result<Vec<u64>> {
        v.into_iter()
            .map(|x| u64::try_from(x).map_err(|_| Error::Overflow("bound generator")))
            .collect()
    };
    let bounds = MonoidBounds {
        lower: Submonoid::new(to_u64(lower)?)?,
        upper: Submonoid::new(to_u64(upper)?)?,
        divisor: inv.o,
    };
    bounds.check(&seifert::semigroup_of_graph(g)?, alpha)?;
    Ok(bounds)
}
