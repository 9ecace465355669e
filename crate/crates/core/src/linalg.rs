//! Dense exact linear algebra over the rationals.
//!
//! Elimination is fraction-free (Bareiss) on integer-scaled rows; rational
//! values only appear in the final back-substitution.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rational::{common_denominator, primitive_integer_vector, Q};

pub type Matrix = Vec<Vec<Q>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Q::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Q::one();
    }
    m
}

pub fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Matrix {
    let cols = b.first().map_or(0, Vec::len);
    let mut out = zeros(a.len(), cols);
    for (i, row) in a.iter().enumerate() {
        for (k, x) in row.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b[k].iter().enumerate() {
                if !y.is_zero() {
                    out[i][j] += x * y;
                }
            }
        }
    }
    out
}

pub fn mat_vec(a: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(Q::zero(), |acc, (x, y)| acc + x * y))
        .collect()
}

pub fn transpose(a: &[Vec<Q>]) -> Matrix {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

fn integer_row(row: &[Q]) -> Vec<BigInt> {
    let den = common_denominator(row.iter());
    row.iter()
        .map(|x| (x * Q::from_integer(den.clone())).to_integer())
        .collect()
}

/// Fraction-free row echelon form. Returns the nonzero echelon rows and pivot columns.
fn bareiss_echelon(m: &[Vec<Q>], ncols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut rows: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| integer_row(r))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(p, r);
        let (head, tail) = rows.split_at_mut(r + 1);
        let piv_row = &head[r];
        let piv = piv_row[col].clone();
        for row in tail.iter_mut() {
            let factor = row[col].clone();
            for j in col + 1..ncols {
                let v = (&piv * &row[j] - &factor * &piv_row[j]) / &prev;
                row[j] = v;
            }
            row[col] = BigInt::zero();
        }
        prev = piv;
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Reduced row echelon form over the rationals: `(rows, pivot columns)`.
pub fn rref(m: &[Vec<Q>], ncols: usize) -> (Matrix, Vec<usize>) {
    let (ech, pivots) = bareiss_echelon(m, ncols);
    let mut rows: Matrix = ech
        .iter()
        .zip(&pivots)
        .map(|(row, &p)| {
            let inv = Q::from_integer(row[p].clone()).recip();
            row.iter().map(|x| Q::from_integer(x.clone()) * &inv).collect()
        })
        .collect();
    for i in (0..rows.len()).rev() {
        let p = pivots[i];
        for k in 0..i {
            let f = rows[k][p].clone();
            if f.is_zero() {
                continue;
            }
            for j in p..ncols {
                let v = &rows[i][j] * &f;
                rows[k][j] -= v;
            }
        }
    }
    (rows, pivots)
}

pub fn rank(m: &[Vec<Q>]) -> usize {
    let ncols = m.first().map_or(0, Vec::len);
    bareiss_echelon(m, ncols).1.len()
}

/// Basis of `{v : m v = 0}` as primitive integer vectors, one per free column in
/// increasing column order.
pub fn nullspace(m: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let (rows, pivots) = rref(m, ncols);
    let mut is_pivot = vec![None; ncols];
    for (i, &p) in pivots.iter().enumerate() {
        is_pivot[p] = Some(i);
    }
    (0..ncols)
        .filter(|&f| is_pivot[f].is_none())
        .map(|f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -rows[i][f].clone();
            }
            primitive_integer_vector(&v)
        })
        .collect()
}

/// One solution of `m x = b`, if any.
pub fn solve(m: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let ncols = m.first().map_or(0, Vec::len);
    let aug: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, y)| {
            let mut r = row.clone();
            r.push(y.clone());
            r
        })
        .collect();
    let (rows, pivots) = rref(&aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Q::zero(); ncols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = rows[i][ncols].clone();
    }
    Some(x)
}

pub fn determinant(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a: Matrix = m.to_vec();
    let mut det = Q::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !a[i][col].is_zero()) else {
            return Q::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let piv = a[col][col].clone();
        det *= &piv;
        for i in col + 1..n {
            let f = &a[i][col] / &piv;
            if f.is_zero() {
                continue;
            }
            for j in col..n {
                let v = &a[col][j] * &f;
                a[i][j] -= v;
            }
        }
    }
    det
}

pub fn inverse(m: &[Vec<Q>]) -> Option<Matrix> {
    let n = m.len();
    let aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let (rows, pivots) = rref(&aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(rows.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Coefficients of `det(t I - m)`, constant term first (Faddeev-LeVerrier).
pub fn characteristic_polynomial(m: &[Vec<Q>]) -> Vec<Q> {
    let n = m.len();
    let mut coeffs = vec![Q::zero(); n + 1];
    coeffs[n] = Q::one();
    let mut mk = zeros(n, n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = mat_mul(m, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        mk = next;
        let am = mat_mul(m, &mk);
        let tr = (0..n).fold(Q::zero(), |acc, i| acc + &am[i][i]);
        coeffs[n - k] = -tr / Q::from_integer(BigInt::from(k));
    }
    coeffs
}

/// Evaluates a coefficient list (constant term first) at `x`.
pub fn horner(coeffs: &[Q], x: &Q) -> Q {
    coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn nullspace_and_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        let ns = nullspace(&a, 3);
        assert_eq!(ns, vec![vec![q(1), q(1), q(-1)]]);
        assert!(mat_vec(&a, &ns[0]).iter().all(Zero::is_zero));
        assert_eq!(nullspace(&[], 3).len(), 3);
    }

    #[test]
    fn determinant_inverse_solve() {
        let a = m(&[&[2, 1], &[1, 1]]);
        assert_eq!(determinant(&a), q(1));
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(2));
        assert_eq!(solve(&a, &[q(3), q(2)]).unwrap(), vec![q(1), q(1)]);
        assert!(solve(&m(&[&[1, 1], &[1, 1]]), &[q(1), q(2)]).is_none());
        assert!(inverse(&m(&[&[1, 1], &[1, 1]])).is_none());
    }

    #[test]
    fn charpoly() {
        let a = m(&[&[2, 1], &[1, 2]]);
        // t^2 - 4t + 3
        assert_eq!(characteristic_polynomial(&a), vec![q(3), q(-4), q(1)]);
        assert_eq!(horner(&[q(3), q(-4), q(1)], &q(1)), q(0));
    }
}
