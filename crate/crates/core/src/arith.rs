//! Checked 128-bit integer and rational helpers.
//!
//! Every arithmetic step that could leave the `i128` range goes through one of
//! these functions and surfaces as [`Error::Overflow`] instead of wrapping.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = i128;
pub type Rational = Ratio<i128>;

pub fn mul(a: Int, b: Int, what: &'static str) -> Result<Int> {
    a.checked_mul(b).ok_or(Error::Overflow(what))
}

pub fn add(a: Int, b: Int, what: &'static str) -> Result<Int> {
    a.checked_add(b).ok_or(Error::Overflow(what))
}

pub fn sub(a: Int, b: Int, what: &'static str) -> Result<Int> {
    a.checked_sub(b).ok_or(Error::Overflow(what))
}

pub fn pow(base: Int, exp: u32, what: &'static str) -> Result<Int> {
    base.checked_pow(exp).ok_or(Error::Overflow(what))
}

pub fn product<I: IntoIterator<Item = Int>>(items: I, what: &'static str) -> Result<Int> {
    items.into_iter().try_fold(1, |acc, x| mul(acc, x, what))
}

pub fn sum<I: IntoIterator<Item = Int>>(items: I, what: &'static str) -> Result<Int> {
    items.into_iter().try_fold(0, |acc, x| add(acc, x, what))
}

pub fn gcd(a: Int, b: Int) -> Int {
    a.gcd(&b)
}

pub fn gcd_all<I: IntoIterator<Item = Int>>(items: I) -> Int {
    items.into_iter().fold(0, gcd)
}

pub fn lcm(a: Int, b: Int, what: &'static str) -> Result<Int> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    let g = gcd(a, b);
    mul((a / g).abs(), b.abs(), what)
}

pub fn lcm_all<I: IntoIterator<Item = Int>>(items: I, what: &'static str) -> Result<Int> {
    items.into_iter().try_fold(1, |acc, x| lcm(acc, x, what))
}

/// Least `x` in `0..m` with `a * x ≡ 1 (mod m)`, if it exists.
pub fn mod_inverse(a: Int, m: Int) -> Option<Int> {
    if m <= 0 {
        return None;
    }
    if m == 1 {
        return Some(0);
    }
    let eg = a.rem_euclid(m).extended_gcd(&m);
    (eg.gcd == 1).then(|| eg.x.rem_euclid(m))
}

pub fn ceil_div(a: Int, b: Int) -> Int {
    Integer::div_ceil(&a, &b)
}

pub fn floor_div(a: Int, b: Int) -> Int {
    Integer::div_floor(&a, &b)
}

pub fn pairwise_coprime(values: &[Int]) -> bool {
    values
        .iter()
        .enumerate()
        .all(|(i, &a)| values[i + 1..].iter().all(|&b| gcd(a, b) == 1))
}

/// Prime-power factorization by trial division, ascending primes.
pub fn prime_power_factors(mut n: Int) -> Vec<(Int, u32)> {
    let mut out = Vec::new();
    let mut p: Int = 2;
    while p.checked_mul(p).is_some_and(|pp| pp <= n) {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn rat(num: Int, den: Int) -> Rational {
    Rational::new(num, den)
}

pub fn rint(n: Int) -> Rational {
    Rational::from_integer(n)
}

pub fn radd(a: &Rational, b: &Rational, what: &'static str) -> Result<Rational> {
    a.checked_add(b).ok_or(Error::Overflow(what))
}

pub fn rsub(a: &Rational, b: &Rational, what: &'static str) -> Result<Rational> {
    a.checked_sub(b).ok_or(Error::Overflow(what))
}

pub fn rmul(a: &Rational, b: &Rational, what: &'static str) -> Result<Rational> {
    a.checked_mul(b).ok_or(Error::Overflow(what))
}

pub fn rdiv(a: &Rational, b: &Rational, what: &'static str) -> Result<Rational> {
    if b.is_zero() {
        return Err(Error::Overflow(what));
    }
    a.checked_div(b).ok_or(Error::Overflow(what))
}

pub fn rabs(a: &Rational) -> Rational {
    a.abs()
}

/// Integer value of a rational, when it has denominator one.
pub fn as_integer(r: &Rational) -> Option<Int> {
    r.denom().is_one().then(|| *r.numer())
}

pub fn floor(r: &Rational) -> Int {
    floor_div(*r.numer(), *r.denom())
}

/// Renders `n` or `n/d` without spaces.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
