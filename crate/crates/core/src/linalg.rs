//! Fraction-free (Bareiss) elimination over checked `i128`.

use crate::arith::{self, Int, Rational};
use crate::error::{Error, Result};

/// Leading principal minors `D₁, …, Dₙ` of a square matrix.
///
/// Elimination runs without row exchanges, so it stops at the first zero
/// minor; the returned vector is then shorter than `n`.
pub fn leading_minors(matrix: &[Vec<Int>]) -> Result<Vec<Int>> {
    let mut a = matrix.to_vec();
    let n = a.len();
    let mut minors = Vec::with_capacity(n);
    let mut prev: Int = 1;
    for k in 0..n {
        let pivot = a[k][k];
        minors.push(pivot);
        if pivot == 0 {
            break;
        }
        eliminate(&mut a, k, prev, n)?;
        prev = pivot;
    }
    Ok(minors)
}

/// True when every leading principal minor `Dₖ` has sign `(−1)ᵏ`.
pub fn is_negative_definite(matrix: &[Vec<Int>]) -> Result<bool> {
    let minors = leading_minors(matrix)?;
    if minors.len() < matrix.len() {
        return Ok(false);
    }
    Ok(minors
        .iter()
        .enumerate()
        .all(|(k, &m)| if k % 2 == 0 { m < 0 } else { m > 0 }))
}

/// Exact solution of `A x = b` for a matrix whose leading principal minors
/// are all nonzero (any definite matrix qualifies).
pub fn solve(matrix: &[Vec<Int>], rhs: &[Int]) -> Result<Vec<Rational>> {
    let n = matrix.len();
    let mut a: Vec<Vec<Int>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, &b)| {
            let mut r = row.clone();
            r.push(b);
            r
        })
        .collect();
    let mut prev: Int = 1;
    for k in 0..n {
        if a[k][k] == 0 {
            return Err(Error::SingularMatrix);
        }
        eliminate(&mut a, k, prev, n + 1)?;
        prev = a[k][k];
    }
    let mut x = vec![Rational::from_integer(0); n];
    for i in (0..n).rev() {
        let mut acc = arith::rint(a[i][n]);
        for j in i + 1..n {
            let t = arith::rmul(&arith::rint(a[i][j]), &x[j], "back substitution")?;
            acc = arith::rsub(&acc, &t, "back substitution")?;
        }
        x[i] = arith::rdiv(&acc, &arith::rint(a[i][i]), "back substitution")?;
    }
    Ok(x)
}

/// One Bareiss step on rows and columns below/right of pivot `k`; the
/// division by the previous pivot is exact.
fn eliminate(a: &mut [Vec<Int>], k: usize, prev: Int, cols: usize) -> Result<()> {
    let n = a.len();
    for i in k + 1..n {
        for j in k + 1..cols {
            let lhs = arith::mul(a[k][k], a[i][j], "Bareiss elimination")?;
            let rhs = arith::mul(a[i][k], a[k][j], "Bareiss elimination")?;
            a[i][j] = arith::sub(lhs, rhs, "Bareiss elimination")? / prev;
        }
        a[i][k] = 0;
    }
    Ok(())
}

/// Determinant of the tridiagonal chain matrix with diagonal `b` and `−1`
/// off the diagonal (the continuant). The empty chain has determinant 1.
pub fn chain_determinant(b: &[Int]) -> Result<Int> {
    let (mut prev, mut cur): (Int, Int) = (0, 1);
    for &x in b.iter().rev() {
        let next = arith::sub(arith::mul(x, cur, "chain determinant")?, prev, "chain determinant")?;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}
