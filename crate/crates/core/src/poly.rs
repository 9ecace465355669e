//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded-lexicographic. The canonical text form lists terms from the largest
//! monomial down, e.g. `3*x1^2*x2 - 1/2*x2^3`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, parse_q, Q};

/// Exponent vector. Ordered by total degree, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent vectors of total degree `d` in `nvars` variables, largest first.
pub fn monomials_of_degree(nvars: usize, d: usize) -> Vec<Monomial> {
    fn rec(i: usize, left: usize, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left as u16;
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u16;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if nvars == 0 {
        return if d == 0 { vec![Monomial(vec![])] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(0, d, &mut vec![0; nvars], &mut out);
    out
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Q>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::one())
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Monomial::var(nvars, i), Q::one())
    }

    pub fn term(m: Monomial, c: Q) -> Self {
        let mut p = Self::zero(m.nvars());
        p.add_term(m, c);
        p
    }

    /// The linear form `sum_i coeffs[i] * x_i`.
    pub fn linear(coeffs: &[Q]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(n, i), c.clone());
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Q)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&Monomial::one(self.nvars))
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.min_degree()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn homogeneous_component(&self, d: usize) -> Self {
        Self::from_terms(
            self.nvars,
            self.terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// Leading (largest) term in the graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut n = m.clone();
            n.0[i] -= 1;
            out.add_term(n, c * Q::from_integer(e.into()));
        }
        out
    }

    /// Applies `prod_i d_i^{beta_i}`.
    pub fn derivative_multi(&self, beta: &Monomial) -> Self {
        let mut out = Self::zero(self.nvars);
        'terms: for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut n = m.clone();
            for (i, &b) in beta.0.iter().enumerate() {
                if b > n.0[i] {
                    continue 'terms;
                }
                for k in 0..b {
                    coef *= Q::from_integer((n.0[i] - k).into());
                }
                n.0[i] -= b;
            }
            out.add_term(n, coef);
        }
        out
    }

    /// Substitutes `x_i -> forms[i]`. All forms must share one variable count.
    pub fn substitute(&self, forms: &[Polynomial]) -> Self {
        assert_eq!(forms.len(), self.nvars, "substitution arity");
        let target = forms.first().map_or(0, Polynomial::nvars);
        let mut powers: Vec<Vec<Polynomial>> = forms.iter().map(|f| vec![Polynomial::one(f.nvars)]).collect();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut acc = Polynomial::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = &mut powers[i];
                while pw.len() <= e as usize {
                    let next = pw.last().unwrap() * &forms[i];
                    pw.push(next);
                }
                acc = &acc * &pw[e as usize];
            }
            out += &acc;
        }
        out
    }

    /// Substitutes a linear change of variables `x_i -> sum_j m[i][j] x_j`.
    pub fn substitute_matrix(&self, m: &[Vec<Q>]) -> Self {
        let forms: Vec<Polynomial> = m.iter().map(|row| Polynomial::linear(row)).collect();
        self.substitute(&forms)
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Re-indexes variables: variable `i` of `self` becomes variable `map[i]` of the result.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Self {
        Self::from_terms(
            nvars,
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0u16; nvars];
                for (i, &k) in m.0.iter().enumerate() {
                    e[map[i]] += k;
                }
                (Monomial(e), c.clone())
            }),
        )
    }

    /// Embeds into `nvars >= self.nvars` variables, new variables appended.
    pub fn extend_vars(&self, nvars: usize) -> Self {
        let map: Vec<usize> = (0..self.nvars).collect();
        self.remap(nvars, &map)
    }

    /// Division with remainder by a nonzero linear form `sum a_i x_i`.
    ///
    /// The pivot is the first variable with nonzero coefficient; the remainder
    /// does not involve that variable and equals the restriction of `self` to the
    /// hyperplane `form = 0` written in the remaining coordinates.
    pub fn div_rem_linear(&self, form: &[Q]) -> (Polynomial, Polynomial) {
        let p = form
            .iter()
            .position(|a| !a.is_zero())
            .expect("division by the zero form");
        let ap = form[p].clone();
        let mut rest_coeffs = form.to_vec();
        rest_coeffs[p] = Q::zero();
        let rest = Polynomial::linear(&rest_coeffs);
        // f = sum_j f_j x_p^j
        let mut slices: Vec<Polynomial> = Vec::new();
        for (m, c) in &self.terms {
            let j = m.0[p] as usize;
            if slices.len() <= j {
                slices.resize(j + 1, Polynomial::zero(self.nvars));
            }
            let mut n = m.clone();
            n.0[p] = 0;
            slices[j].add_term(n, c.clone());
        }
        if slices.is_empty() {
            return (Self::zero(self.nvars), Self::zero(self.nvars));
        }
        let top = slices.len() - 1;
        let inv = ap.recip();
        let mut quot = vec![Polynomial::zero(self.nvars); top.max(1)];
        let mut carry = Polynomial::zero(self.nvars);
        for j in (1..=top).rev() {
            let qj = (&slices[j] - &(&rest * &carry)).scale(&inv);
            quot[j - 1] = qj.clone();
            carry = qj;
        }
        let rem = &slices[0] - &(&rest * &carry);
        let mut q = Polynomial::zero(self.nvars);
        for (j, qj) in quot.into_iter().enumerate() {
            let mut mono = Monomial::one(self.nvars);
            mono.0[p] = j as u16;
            q += &qj.mul_monomial(&mono, &Q::one());
        }
        if top == 0 {
            q = Polynomial::zero(self.nvars);
        }
        (q, rem)
    }

    /// Dense coefficient vector over the given monomial list.
    pub fn coefficients_in(&self, basis: &[Monomial]) -> Vec<Q> {
        basis.iter().map(|m| self.coeff(m)).collect()
    }

    pub fn from_coefficients(nvars: usize, basis: &[Monomial], coeffs: &[Q]) -> Self {
        Self::from_terms(nvars, basis.iter().cloned().zip(coeffs.iter().cloned()))
    }

    pub fn default_names(nvars: usize) -> Vec<String> {
        (1..=nvars).map(|i| format!("x{i}")).collect()
    }

    /// Variable names `x1..xr, k1..kr` for polynomials on `h x h*`.
    pub fn xk_names(rank: usize) -> Vec<String> {
        (1..=rank)
            .map(|i| format!("x{i}"))
            .chain((1..=rank).map(|i| format!("k{i}")))
            .collect()
    }

    /// Canonical text: terms from the largest graded-lex monomial down.
    pub fn to_text(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = monomial_text(m, names);
            if mono.is_empty() {
                out.push_str(&fmt_q(&abs));
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&fmt_q(&abs));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }

    /// Parses the canonical text form (any term order is accepted).
    pub fn parse(text: &str, names: &[String]) -> Result<Self> {
        let nvars = names.len();
        let mut p = Polynomial::zero(nvars);
        for (sign, term) in split_signed_terms(text)? {
            let (m, c) = parse_term(term, names)?;
            p.add_term(m, if sign { -c } else { c });
        }
        Ok(p)
    }
}

fn monomial_text(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    parts.join("*")
}

/// Splits at top-level `+`/`-`; returns `(negative, term)` pairs.
pub(crate) fn split_signed_terms(text: &str) -> Result<Vec<(bool, &str)>> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut start = 0;
    let mut neg = false;
    let mut i = 0;
    let mut depth = 0i32;
    // leading sign
    if bytes[0] == b'-' || bytes[0] == b'+' {
        neg = bytes[0] == b'-';
        start = 1;
        i = 1;
    }
    while i < bytes.len() {
        match bytes[i] {
            b'(' | b'[' => depth += 1,
            b')' | b']' => depth -= 1,
            b'+' | b'-' if depth == 0 && i > start => {
                out.push((neg, text[start..i].trim()));
                neg = bytes[i] == b'-';
                start = i + 1;
            }
            _ => {}
        }
        i += 1;
    }
    out.push((neg, text[start..].trim()));
    if out.iter().any(|(_, t)| t.is_empty()) {
        return Err(Error::Parse(format!("malformed expression {text:?}")));
    }
    Ok(out)
}

fn parse_term(term: &str, names: &[String]) -> Result<(Monomial, Q)> {
    let mut coef = Q::one();
    let mut m = Monomial::one(names.len());
    for factor in term.split('*') {
        let factor = factor.trim();
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in {term:?}")));
        }
        if factor.chars().next().is_some_and(|c| c.is_ascii_digit()) {
            coef *= parse_q(factor)?;
            continue;
        }
        let (name, exp) = match factor.split_once('^') {
            Some((n, e)) => (
                n.trim(),
                e.trim()
                    .parse::<u16>()
                    .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?,
            ),
            None => (factor, 1),
        };
        let idx = names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
        m.0[idx] += exp;
    }
    Ok((m, coef))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(&Self::default_names(self.nvars)))
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Q::one())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    fn names(n: usize) -> Vec<String> {
        Polynomial::default_names(n)
    }

    #[test]
    fn canonical_text_roundtrip() {
        let p = Polynomial::parse("-1/2*x2^3 + 3*x1^2*x2", &names(2)).unwrap();
        assert_eq!(p.to_text(&names(2)), "3*x1^2*x2 - 1/2*x2^3");
        assert_eq!(Polynomial::parse(&p.to_text(&names(2)), &names(2)).unwrap(), p);
        assert_eq!(Polynomial::zero(2).to_text(&names(2)), "0");
        let c = Polynomial::parse("-x1 + 5", &names(1)).unwrap();
        assert_eq!(c.to_text(&names(1)), "-x1 + 5");
    }

    #[test]
    fn monomial_enumeration_is_descending() {
        let ms = monomials_of_degree(2, 2);
        let texts: Vec<String> = ms.iter().map(|m| Polynomial::term(m.clone(), q(1)).to_string()).collect();
        assert_eq!(texts, ["x1^2", "x1*x2", "x2^2"]);
        assert_eq!(monomials_of_degree(3, 4).len(), 15);
        assert!(ms.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn derivatives_and_substitution() {
        let n = names(2);
        let p = Polynomial::parse("x1^3*x2 + 2*x2^2", &n).unwrap();
        assert_eq!(p.derivative(0).to_text(&n), "3*x1^2*x2");
        assert_eq!(p.derivative_multi(&Monomial(vec![2, 1])).to_text(&n), "6*x1");
        // x1 -> x1 + x2, x2 -> x2
        let s = p.substitute_matrix(&[vec![q(1), q(1)], vec![q(0), q(1)]]);
        assert_eq!(s.eval(&[q(1), q(2)]), p.eval(&[q(3), q(2)]));
    }

    #[test]
    fn linear_division() {
        let n = names(2);
        let f = Polynomial::parse("x1^2 - x2^2", &n).unwrap();
        let (qt, r) = f.div_rem_linear(&[q(1), q(-1)]);
        assert!(r.is_zero());
        assert_eq!(qt.to_text(&n), "x1 + x2");
        let g = Polynomial::parse("x1^2 + x2^2", &n).unwrap();
        let (qt, r) = g.div_rem_linear(&[q(1), q(0)]);
        assert_eq!(r.to_text(&n), "x2^2");
        assert_eq!(&(&qt * &Polynomial::var(2, 0)) + &r, g);
        let h = Polynomial::parse("3*x1 + 1/2", &names(1)).unwrap();
        let (qt, r) = h.div_rem_linear(&[qf(1, 2)]);
        assert_eq!(qt.to_text(&names(1)), "6");
        assert_eq!(r.to_text(&names(1)), "1/2");
    }
}
