//! Truncated power series in one variable `t`, coefficients indexed from `t^0`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::rational::{fmt_q, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    pub coeffs: Vec<Q>,
}

impl Series {
    /// Zero series known through `t^n`.
    pub fn zero(n: usize) -> Self {
        Series { coeffs: vec![Q::zero(); n + 1] }
    }

    pub fn one(n: usize) -> Self {
        let mut s = Self::zero(n);
        s.coeffs[0] = Q::one();
        s
    }

    /// Truncates (or zero-pads) a polynomial coefficient list to precision `n`.
    pub fn from_poly(coeffs: &[Q], n: usize) -> Self {
        let mut s = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate().take(n + 1) {
            s.coeffs[i] = c.clone();
        }
        s
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn add(&self, other: &Series) -> Series {
        Series { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, c: &Q) -> Series {
        Series { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &Series) -> Series {
        let n = self.precision().min(other.precision());
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Option<Series> {
        let c0 = self.coeffs[0].clone();
        if c0.is_zero() {
            return None;
        }
        let inv0 = c0.recip();
        let n = self.precision();
        let mut out = Self::zero(n);
        out.coeffs[0] = inv0.clone();
        for k in 1..=n {
            let mut acc = Q::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &out.coeffs[k - j];
            }
            out.coeffs[k] = -acc * &inv0;
        }
        Some(out)
    }

    /// Multiplies by `t^k`, keeping the precision.
    pub fn shift(&self, k: usize) -> Series {
        let n = self.precision();
        let mut out = Self::zero(n);
        for i in 0..=n {
            if i >= k {
                out.coeffs[i] = self.coeffs[i - k].clone();
            }
        }
        out
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(fmt_q).collect()
    }
}

impl Serialize for Series {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

/// `prod 1/(1 - t^{d_i})` to precision `n`.
pub fn inverse_product(degrees: &[usize], n: usize) -> Series {
    let mut s = Series::one(n);
    for &d in degrees {
        let mut f = Series::zero(n);
        let mut k = 0;
        while k <= n {
            f.coeffs[k] = Q::one();
            k += d;
        }
        s = s.mul(&f);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn inverse_of_geometric() {
        let s = Series::from_poly(&[q(1), q(-1)], 5);
        assert_eq!(s.inverse().unwrap().coeffs, vec![q(1); 6]);
        let p = inverse_product(&[2, 3], 7);
        let v: Vec<Q> = [1, 0, 1, 1, 1, 1, 2, 1].iter().map(|&x| q(x)).collect();
        assert_eq!(p.coeffs, v);
        assert_eq!(p.mul(&p.inverse().unwrap()), Series::one(7));
        assert_eq!(Series::one(3).shift(2).coeffs, vec![q(0), q(0), q(1), q(0)]);
    }
}
