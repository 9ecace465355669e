//! Rational functions whose denominators are products of positive roots.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::poly::Polynomial;
use crate::rational::Q;

/// The positive roots as linear forms, padded to the working variable count.
#[derive(Clone, Debug)]
pub struct RootForms {
    pub nvars: usize,
    pub coeffs: Vec<Vec<Q>>,
    pub forms: Vec<Polynomial>,
}

impl RootForms {
    pub fn new(roots: &[Vec<Q>], nvars: usize) -> Self {
        let coeffs: Vec<Vec<Q>> = roots
            .iter()
            .map(|a| {
                let mut v = a.clone();
                v.resize(nvars, Q::zero());
                v
            })
            .collect();
        let forms = coeffs.iter().map(|a| Polynomial::linear(a)).collect();
        RootForms { nvars, coeffs, forms }
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    /// `prod alpha_i^{e_i}`.
    pub fn product(&self, exps: &[u32]) -> Polynomial {
        let mut p = Polynomial::one(self.nvars);
        for (i, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                p = &p * &self.forms[i];
            }
        }
        p
    }
}

/// `numerator / prod_i alpha_i^{den[i]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootFraction {
    pub num: Polynomial,
    pub den: Vec<u32>,
}

impl RootFraction {
    pub fn zero(forms: &RootForms) -> Self {
        RootFraction { num: Polynomial::zero(forms.nvars), den: vec![0; forms.len()] }
    }

    pub fn one(forms: &RootForms) -> Self {
        Self::from_poly(Polynomial::one(forms.nvars), forms)
    }

    pub fn constant(c: Q, forms: &RootForms) -> Self {
        Self::from_poly(Polynomial::constant(forms.nvars, c), forms)
    }

    pub fn from_poly(num: Polynomial, forms: &RootForms) -> Self {
        RootFraction { num, den: vec![0; forms.len()] }
    }

    /// `c / alpha_i`.
    pub fn inverse_root(i: usize, c: Q, forms: &RootForms) -> Self {
        let mut den = vec![0; forms.len()];
        den[i] = 1;
        RootFraction { num: Polynomial::constant(forms.nvars, c), den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.iter().all(|&e| e == 0)
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn den_degree(&self) -> usize {
        self.den.iter().map(|&e| e as usize).sum()
    }

    /// Numerator degree minus denominator degree, i.e. the degree of a homogeneous fraction.
    pub fn degree(&self) -> Option<i64> {
        self.num.degree().map(|d| d as i64 - self.den_degree() as i64)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.num.is_homogeneous()
    }

    /// Cancels root factors common to numerator and denominator.
    pub fn normalize(mut self, forms: &RootForms) -> Self {
        if self.num.is_zero() {
            self.den.iter_mut().for_each(|e| *e = 0);
            return self;
        }
        for i in 0..self.den.len() {
            while self.den[i] > 0 {
                let (q, r) = self.num.div_rem_linear(&forms.coeffs[i]);
                if !r.is_zero() {
                    break;
                }
                self.num = q;
                self.den[i] -= 1;
            }
        }
        self
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return RootFraction { num: Polynomial::zero(self.num.nvars()), den: vec![0; self.den.len()] };
        }
        RootFraction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Q::one())
    }

    /// Product without cancellation.
    pub fn mul_raw(&self, other: &RootFraction) -> Self {
        RootFraction {
            num: &self.num * &other.num,
            den: self.den.iter().zip(&other.den).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn mul(&self, other: &RootFraction, forms: &RootForms) -> Self {
        self.mul_raw(other).normalize(forms)
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        RootFraction { num: &self.num * p, den: self.den.clone() }
    }

    pub fn add(&self, other: &RootFraction, forms: &RootForms) -> Self {
        Self::sum([self.clone(), other.clone()], forms)
    }

    pub fn sub(&self, other: &RootFraction, forms: &RootForms) -> Self {
        Self::sum([self.clone(), other.neg()], forms)
    }

    /// Sums over a common denominator, then normalizes once.
    pub fn sum(items: impl IntoIterator<Item = RootFraction>, forms: &RootForms) -> Self {
        let mut by_den: BTreeMap<Vec<u32>, Polynomial> = BTreeMap::new();
        for f in items {
            if f.is_zero() {
                continue;
            }
            match by_den.get_mut(&f.den) {
                Some(p) => *p += &f.num,
                None => {
                    by_den.insert(f.den, f.num);
                }
            }
        }
        by_den.retain(|_, p| !p.is_zero());
        if by_den.is_empty() {
            return Self::zero(forms);
        }
        let mut common = vec![0u32; forms.len()];
        for den in by_den.keys() {
            for (c, &e) in common.iter_mut().zip(den) {
                *c = (*c).max(e);
            }
        }
        let mut num = Polynomial::zero(forms.nvars);
        for (den, p) in by_den {
            let diff: Vec<u32> = common.iter().zip(&den).map(|(c, e)| c - e).collect();
            num += &(&p * &forms.product(&diff));
        }
        RootFraction { num, den: common }.normalize(forms)
    }

    /// Partial derivative in variable `i`.
    pub fn derivative(&self, i: usize, forms: &RootForms) -> Self {
        let mut terms = vec![RootFraction { num: self.num.derivative(i), den: self.den.clone() }];
        for (k, &e) in self.den.iter().enumerate() {
            let a = &forms.coeffs[k][i];
            if e == 0 || a.is_zero() {
                continue;
            }
            let mut den = self.den.clone();
            den[k] += 1;
            terms.push(RootFraction { num: self.num.scale(&(-a * Q::from_integer(e.into()))), den });
        }
        Self::sum(terms, forms)
    }

    /// Group action given the substitution `x -> w^{-1} x` and the root permutation of `w`.
    pub fn act(&self, subst: &[Polynomial], perm: &[(usize, bool)]) -> Self {
        let mut num = self.num.substitute(subst);
        let mut den = vec![0; self.den.len()];
        let mut negate = false;
        for (i, &e) in self.den.iter().enumerate() {
            let (j, positive) = perm[i];
            den[j] += e;
            if !positive && e % 2 == 1 {
                negate = !negate;
            }
        }
        if negate {
            num = -&num;
        }
        RootFraction { num, den }
    }

    pub fn eval_numerator_at_zero(&self) -> Q {
        self.num.constant_term()
    }

    pub fn to_text(&self, names: &[String], forms: &RootForms) -> String {
        let num = self.num.to_text(names);
        if self.is_polynomial() {
            return num;
        }
        let mut factors = Vec::new();
        for (i, &e) in self.den.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let f = forms.forms[i].to_text(names);
            let f = if forms.forms[i].len() > 1 { format!("({f})") } else { f };
            factors.push(if e == 1 { f } else { format!("{f}^{e}") });
        }
        let fractional_constant = self.num.is_constant() && !num.chars().all(|c| c.is_ascii_digit() || c == '-');
        let num = if self.num.len() > 1 || fractional_constant { format!("({num})") } else { num };
        if factors.len() == 1 {
            format!("{num}/{}", factors[0])
        } else {
            format!("{num}/({})", factors.join("*"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn forms() -> RootForms {
        // x1, x2, x1 + x2
        RootForms::new(&[vec![q(1), q(0)], vec![q(0), q(1)], vec![q(1), q(1)]], 2)
    }

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, &Polynomial::default_names(2)).unwrap()
    }

    #[test]
    fn normalization_cancels() {
        let f = forms();
        let r = RootFraction { num: p("x1^2 + x1*x2"), den: vec![1, 0, 2] }.normalize(&f);
        assert_eq!(r.num, p("1"));
        assert_eq!(r.den, vec![0, 0, 1]);
        assert_eq!(r.degree(), Some(-1));
    }

    #[test]
    fn sum_and_derivative() {
        let f = forms();
        let a = RootFraction::inverse_root(0, q(1), &f);
        let b = RootFraction::inverse_root(1, q(1), &f);
        // 1/x1 + 1/x2 = (x1 + x2)/(x1 x2)
        let s = a.add(&b, &f);
        assert_eq!(s.num, p("x1 + x2"));
        assert_eq!(s.den, vec![1, 1, 0]);
        // d/dx1 (1/x1) = -1/x1^2
        let d = a.derivative(0, &f);
        assert_eq!(d.num, p("-1"));
        assert_eq!(d.den, vec![2, 0, 0]);
        // d/dx1 (x1/(x1+x2)) = x2/(x1+x2)^2
        let g = RootFraction { num: p("x1"), den: vec![0, 0, 1] };
        let dg = g.derivative(0, &f);
        assert_eq!(dg.num, p("x2"));
        assert_eq!(dg.den, vec![0, 0, 2]);
        assert_eq!(a.sub(&a, &f), RootFraction::zero(&f));
    }

    #[test]
    fn text_form() {
        let f = forms();
        let g = RootFraction { num: p("-2"), den: vec![1, 0, 2] };
        assert_eq!(g.to_text(&Polynomial::default_names(2), &f), "-2/(x1*(x1 + x2)^2)");
    }
}
