//! Arbitrary-precision rationals and the textual `p/q` format.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

/// Returns `Some(n)` when `x` is an integer that fits in an `i64`.
pub fn to_i64(x: &Q) -> Option<i64> {
    if is_integer(x) {
        x.numer().to_i64()
    } else {
        None
    }
}

pub fn to_nonneg_usize(x: &Q) -> Option<usize> {
    if is_integer(x) && !x.is_negative() {
        x.numer().to_usize()
    } else {
        None
    }
}

/// Parses `"3"`, `"-1/2"`, `" 5/10 "` into a reduced rational.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn fmt_q(x: &Q) -> String {
    if is_integer(x) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Least common multiple of denominators; multiplying by it makes every entry integral.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Scales a rational vector to a primitive integer vector whose first nonzero entry is positive.
pub fn primitive_integer_vector(v: &[Q]) -> Vec<Q> {
    let den = common_denominator(v.iter());
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter().map(|x| Q::from_integer(x / &g * &sign)).collect()
}

/// Exact square root of a nonnegative rational when it exists.
pub fn exact_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Q::new(n, d))
    } else {
        None
    }
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("5/10").unwrap(), qf(1, 2));
        assert_eq!(fmt_q(&parse_q(" -6/4").unwrap()), "-3/2");
        assert_eq!(fmt_q(&q(7)), "7");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn primitive_vectors() {
        let v = primitive_integer_vector(&[qf(-1, 2), q(0), qf(3, 4)]);
        assert_eq!(v, vec![q(2), q(0), q(-3)]);
    }

    #[test]
    fn sqrt_and_binomials() {
        assert_eq!(exact_sqrt(&qf(9, 4)), Some(qf(3, 2)));
        assert_eq!(exact_sqrt(&q(2)), None);
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(factorial(5), BigInt::from(120));
    }
}
