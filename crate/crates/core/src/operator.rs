//! Operators in `D(h_reg) # W`, kept in the normal form
//! `sum coefficient * d^beta * [w]` with root-fraction coefficients.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::coxeter::{GroupData, RootSystem};
use crate::fraction::{RootForms, RootFraction};
use crate::linalg::Matrix;
use crate::poly::{Monomial, Polynomial};
use crate::rational::{binomial, Q};

/// Root system, group and cached data shared by operator arithmetic.
///
/// Coefficients live in `nvars` variables: the `rank` coordinates of `h`,
/// optionally followed by `rank` spectral variables `k` that operators treat
/// as constants.
#[derive(Clone, Debug)]
pub struct AlgebraContext {
    pub rs: RootSystem,
    pub gd: GroupData,
    pub nvars: usize,
    pub forms: RootForms,
    subst: Vec<Vec<Polynomial>>,
    matrices: Vec<Matrix>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Operator {
    pub terms: BTreeMap<(Monomial, usize), RootFraction>,
}

/// Result of applying an operator to a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Applied {
    pub value: RootFraction,
    pub polynomial: bool,
}

impl Applied {
    pub fn into_polynomial(self) -> Option<Polynomial> {
        self.polynomial.then_some(self.value.num)
    }
}

fn sub_indices(beta: &Monomial) -> Vec<Monomial> {
    let mut out = vec![Monomial(Vec::new())];
    for &b in &beta.0 {
        out = out
            .into_iter()
            .flat_map(|m| {
                (0..=b).map(move |e| {
                    let mut v = m.0.clone();
                    v.push(e);
                    Monomial(v)
                })
            })
            .collect();
    }
    out
}

fn multi_binomial(beta: &Monomial, mu: &Monomial) -> Q {
    beta.0
        .iter()
        .zip(&mu.0)
        .fold(Q::one(), |acc, (&b, &m)| acc * Q::from_integer(binomial(b as usize, m as usize)))
}

impl AlgebraContext {
    pub fn new(rs: &RootSystem, gd: &GroupData) -> Self {
        Self::with_vars(rs, gd, rs.rank)
    }

    /// Context whose coefficients may also involve spectral variables `k_1..k_r`.
    pub fn spectral(rs: &RootSystem, gd: &GroupData) -> Self {
        Self::with_vars(rs, gd, 2 * rs.rank)
    }

    fn with_vars(rs: &RootSystem, gd: &GroupData, nvars: usize) -> Self {
        let r = rs.rank;
        let forms = RootForms::new(&rs.positive_roots, nvars);
        let matrices: Vec<Matrix> = (0..gd.order()).map(|w| gd.matrix(w)).collect();
        let subst = (0..gd.order())
            .map(|w| {
                let inv = &matrices[gd.inverse[w]];
                (0..nvars)
                    .map(|i| {
                        if i < r {
                            let mut row = inv[i].clone();
                            row.resize(nvars, Q::zero());
                            Polynomial::linear(&row)
                        } else {
                            Polynomial::var(nvars, i)
                        }
                    })
                    .collect()
            })
            .collect();
        AlgebraContext { rs: rs.clone(), gd: gd.clone(), nvars, forms, subst, matrices }
    }

    pub fn rank(&self) -> usize {
        self.rs.rank
    }

    pub fn names(&self) -> Vec<String> {
        if self.nvars == self.rank() {
            Polynomial::default_names(self.nvars)
        } else {
            Polynomial::xk_names(self.rank())
        }
    }

    pub fn frac(&self, p: Polynomial) -> RootFraction {
        RootFraction::from_poly(p, &self.forms)
    }

    pub fn act_poly(&self, w: usize, p: &Polynomial) -> Polynomial {
        p.substitute(&self.subst[w])
    }

    pub fn act_frac(&self, w: usize, f: &RootFraction) -> RootFraction {
        if w == 0 {
            return f.clone();
        }
        f.act(&self.subst[w], &self.gd.root_perm[w])
    }

    // ---- constructors ----

    pub fn zero(&self) -> Operator {
        Operator::default()
    }

    pub fn identity(&self) -> Operator {
        self.group_element(0)
    }

    pub fn group_element(&self, w: usize) -> Operator {
        let mut u = Operator::default();
        u.terms.insert((Monomial::one(self.rank()), w), RootFraction::one(&self.forms));
        u
    }

    pub fn multiplication(&self, f: RootFraction) -> Operator {
        let mut u = Operator::default();
        if !f.is_zero() {
            u.terms.insert((Monomial::one(self.rank()), 0), f);
        }
        u
    }

    pub fn poly_multiplication(&self, p: &Polynomial) -> Operator {
        self.multiplication(self.frac(p.extend_vars(self.nvars)))
    }

    /// `d_y = sum_i y_i d_i`.
    pub fn directional(&self, y: &[Q]) -> Operator {
        let mut u = Operator::default();
        for (i, c) in y.iter().enumerate() {
            if !c.is_zero() {
                u.terms.insert((Monomial::var(self.rank(), i), 0), RootFraction::constant(c.clone(), &self.forms));
            }
        }
        u
    }

    pub fn partial(&self, i: usize) -> Operator {
        let mut y = vec![Q::zero(); self.rank()];
        y[i] = Q::one();
        self.directional(&y)
    }

    /// Constant-coefficient operator `p(d)` from a polynomial in `rank` variables.
    pub fn constant_coefficient(&self, p: &Polynomial) -> Operator {
        let mut u = Operator::default();
        for (m, c) in p.terms() {
            u.terms.insert((m.clone(), 0), RootFraction::constant(c.clone(), &self.forms));
        }
        u
    }

    // ---- linear structure ----

    pub fn add(&self, u: &Operator, v: &Operator) -> Operator {
        let mut out = u.clone();
        for (k, f) in &v.terms {
            self.add_term(&mut out, k.clone(), f.clone());
        }
        out
    }

    pub fn sub(&self, u: &Operator, v: &Operator) -> Operator {
        self.add(u, &self.scale(v, &-Q::one()))
    }

    pub fn scale(&self, u: &Operator, c: &Q) -> Operator {
        if c.is_zero() {
            return Operator::default();
        }
        Operator { terms: u.terms.iter().map(|(k, f)| (k.clone(), f.scale(c))).collect() }
    }

    fn add_term(&self, u: &mut Operator, key: (Monomial, usize), f: RootFraction) {
        if f.is_zero() {
            return;
        }
        let merged = match u.terms.remove(&key) {
            Some(g) => g.add(&f, &self.forms),
            None => f,
        };
        if !merged.is_zero() {
            u.terms.insert(key, merged);
        }
    }

    fn collect(&self, acc: HashMap<(Monomial, usize), Vec<RootFraction>>) -> Operator {
        let mut out = Operator::default();
        for (key, fs) in acc {
            let f = RootFraction::sum(fs, &self.forms);
            if !f.is_zero() {
                out.terms.insert(key, f);
            }
        }
        out
    }

    // ---- products ----

    /// `w d^gamma w^{-1}` as a constant-coefficient polynomial in the partials.
    fn conjugated_derivative(&self, w: usize, gamma: &Monomial) -> Polynomial {
        let r = self.rank();
        if w == 0 {
            return Polynomial::term(gamma.clone(), Q::one());
        }
        // w d_i w^{-1} = d_{w e_i} = sum_j W_ji d_j
        let m = &self.matrices[w];
        let forms: Vec<Polynomial> = (0..r)
            .map(|i| Polynomial::linear(&(0..r).map(|j| m[j][i].clone()).collect::<Vec<_>>()))
            .collect();
        Polynomial::term(gamma.clone(), Q::one()).substitute(&forms)
    }

    pub fn compose(&self, u: &Operator, v: &Operator) -> Operator {
        let mut acc: HashMap<(Monomial, usize), Vec<RootFraction>> = HashMap::new();
        let mut moved: HashMap<(usize, &Monomial, usize), RootFraction> = HashMap::new();
        let mut derivs: HashMap<(usize, &Monomial, usize, Monomial), RootFraction> = HashMap::new();
        let mut conj: HashMap<(usize, &Monomial), Polynomial> = HashMap::new();
        for ((beta, w), f) in &u.terms {
            let mus = sub_indices(beta);
            for ((gamma, v2), g) in &v.terms {
                let wg = moved
                    .entry((*w, gamma, *v2))
                    .or_insert_with(|| self.act_frac(*w, g))
                    .clone();
                let dpoly = conj
                    .entry((*w, gamma))
                    .or_insert_with(|| self.conjugated_derivative(*w, gamma))
                    .clone();
                let wv = self.gd.mul(*w, *v2);
                for mu in &mus {
                    let h = self.multi_derivative_cached(&mut derivs, (*w, gamma, *v2), &wg, mu);
                    if h.is_zero() {
                        continue;
                    }
                    let coef = f.mul_raw(&h).scale(&multi_binomial(beta, mu));
                    let rest = beta.checked_div(mu).unwrap();
                    for (delta, d) in dpoly.terms() {
                        acc.entry((rest.mul(delta), wv)).or_default().push(coef.scale(d));
                    }
                }
            }
        }
        self.collect(acc)
    }

    fn multi_derivative_cached<'a>(
        &self,
        cache: &mut HashMap<(usize, &'a Monomial, usize, Monomial), RootFraction>,
        key: (usize, &'a Monomial, usize),
        base: &RootFraction,
        mu: &Monomial,
    ) -> RootFraction {
        let full = (key.0, key.1, key.2, mu.clone());
        if let Some(f) = cache.get(&full) {
            return f.clone();
        }
        let result = match mu.0.iter().position(|&e| e > 0) {
            None => base.clone(),
            Some(i) => {
                let mut lower = mu.clone();
                lower.0[i] -= 1;
                let prev = self.multi_derivative_cached(cache, key, base, &lower);
                prev.derivative(i, &self.forms)
            }
        };
        cache.insert(full, result.clone());
        result
    }

    pub fn commutator(&self, u: &Operator, v: &Operator) -> Operator {
        self.sub(&self.compose(u, v), &self.compose(v, u))
    }

    pub fn power(&self, u: &Operator, k: usize) -> Operator {
        let mut acc = self.identity();
        for _ in 0..k {
            acc = self.compose(&acc, u);
        }
        acc
    }

    // ---- application ----

    pub fn apply(&self, u: &Operator, p: &Polynomial) -> Applied {
        let p = p.extend_vars(self.nvars);
        let mut moved: HashMap<usize, Polynomial> = HashMap::new();
        let mut items = Vec::with_capacity(u.terms.len());
        for ((beta, w), f) in &u.terms {
            let wp = moved.entry(*w).or_insert_with(|| self.act_poly(*w, &p));
            let mut ext = beta.0.clone();
            ext.resize(self.nvars, 0);
            let d = wp.derivative_multi(&Monomial(ext));
            if !d.is_zero() {
                items.push(f.mul_poly(&d));
            }
        }
        let value = RootFraction::sum(items, &self.forms);
        let polynomial = value.is_polynomial();
        Applied { value, polynomial }
    }

    /// Applies `u` to a rational function (reflections act by substitution).
    pub fn apply_frac(&self, u: &Operator, g: &RootFraction) -> RootFraction {
        let mut items = Vec::with_capacity(u.terms.len());
        for ((beta, w), f) in &u.terms {
            let mut h = self.act_frac(*w, g);
            for (i, &e) in beta.0.iter().enumerate() {
                for _ in 0..e {
                    h = h.derivative(i, &self.forms);
                }
            }
            items.push(f.mul_raw(&h));
        }
        RootFraction::sum(items, &self.forms)
    }

    /// For a pure differential operator `u` and `R`, the prefactor of `u(R e^{(x,k)})`,
    /// using `d_i (R e) = (d_i R + k_i R) e`. Requires a spectral context.
    pub fn apply_exp(&self, u: &Operator, g: &RootFraction) -> Option<RootFraction> {
        if self.nvars != 2 * self.rank() || !u.is_pure_differential() {
            return None;
        }
        let r = self.rank();
        let mut cache: HashMap<Monomial, RootFraction> = HashMap::new();
        cache.insert(Monomial::one(r), g.clone());
        let mut items = Vec::with_capacity(u.terms.len());
        for ((beta, _), f) in &u.terms {
            let h = self.exp_derivative(&mut cache, beta);
            items.push(f.mul_raw(&h));
        }
        Some(RootFraction::sum(items, &self.forms))
    }

    fn exp_derivative(&self, cache: &mut HashMap<Monomial, RootFraction>, beta: &Monomial) -> RootFraction {
        if let Some(f) = cache.get(beta) {
            return f.clone();
        }
        let i = beta.0.iter().position(|&e| e > 0).unwrap();
        let mut lower = beta.clone();
        lower.0[i] -= 1;
        let prev = self.exp_derivative(cache, &lower);
        let k = Polynomial::var(self.nvars, self.rank() + i);
        let next = RootFraction::sum([prev.derivative(i, &self.forms), prev.mul_poly(&k)], &self.forms);
        cache.insert(beta.clone(), next.clone());
        next
    }

    /// Re-expresses an operator from another context with the same root system.
    pub fn import(&self, u: &Operator) -> Operator {
        Operator {
            terms: u
                .terms
                .iter()
                .map(|(k, f)| {
                    (k.clone(), RootFraction { num: f.num.extend_vars(self.nvars), den: f.den.clone() })
                })
                .collect(),
        }
    }

    // ---- symbols and gradings ----

    /// `sum over top-order terms of coefficient(x) * xi^beta`, in variables `(x, xi)`.
    /// Returns `None` when reflection terms are present.
    pub fn principal_symbol(&self, u: &Operator) -> Option<RootFraction> {
        if !u.is_pure_differential() || self.nvars != self.rank() {
            return None;
        }
        let r = self.rank();
        let big = RootForms::new(&self.rs.positive_roots, 2 * r);
        let ord = u.order();
        let items = u.terms.iter().filter(|((beta, _), _)| beta.degree() == ord).map(|((beta, _), f)| {
            let mut e = vec![0u16; 2 * r];
            e[r..].copy_from_slice(&beta.0);
            RootFraction { num: f.num.extend_vars(2 * r).mul_monomial(&Monomial(e), &Q::one()), den: f.den.clone() }
        });
        Some(RootFraction::sum(items.collect::<Vec<_>>(), &big))
    }

    pub fn to_text(&self, u: &Operator) -> String {
        operator_text(u, &self.names(), &self.forms)
    }
}

impl Operator {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_pure_differential(&self) -> bool {
        self.terms.keys().all(|(_, w)| *w == 0)
    }

    pub fn order(&self) -> usize {
        self.terms.keys().map(|(b, _)| b.degree()).max().unwrap_or(0)
    }

    /// `deg(coefficient) - |beta|` when it is the same for every term.
    pub fn weight(&self) -> Option<i64> {
        let mut weights = self.terms.iter().map(|((b, _), f)| {
            if f.is_homogeneous() { f.degree().map(|d| d - b.degree() as i64) } else { None }
        });
        let first = weights.next()??;
        for w in weights {
            if w? != first {
                return None;
            }
        }
        Some(first)
    }

    /// Maximum coefficient degree over terms; `None` with reflection terms present
    /// or for the zero operator.
    pub fn flat_degree(&self) -> Option<i64> {
        if !self.is_pure_differential() {
            return None;
        }
        self.terms.values().filter_map(RootFraction::degree).max()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

fn derivative_text(beta: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in beta.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("d{}", i + 1)),
            _ => parts.push(format!("d{}^{}", i + 1, e)),
        }
    }
    parts.join("*")
}

/// Canonical text: terms ordered by decreasing derivative monomial, then group element.
pub fn operator_text(u: &Operator, names: &[String], forms: &RootForms) -> String {
    if u.is_zero() {
        return "0".into();
    }
    let mut keys: Vec<&(Monomial, usize)> = u.terms.keys().collect();
    keys.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut out = String::new();
    for (idx, key) in keys.into_iter().enumerate() {
        let f = &u.terms[key];
        let deriv = derivative_text(&key.0);
        let group = if key.1 == 0 { String::new() } else { format!("[w{}]", key.1) };
        let (neg, coef) = coefficient_text(f, names, forms);
        let body = match (coef.as_str(), deriv.is_empty()) {
            ("1", true) if group.is_empty() => "1".to_string(),
            ("1", true) => group.clone(),
            ("1", false) => format!("{deriv}{group}"),
            (c, true) => format!("{c}{group}"),
            (c, false) => format!("{c}*{deriv}{group}"),
        };
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

/// Coefficient text with its sign split off when it is a single signed term.
fn coefficient_text(f: &RootFraction, names: &[String], forms: &RootForms) -> (bool, String) {
    let single = f.num.len() == 1;
    let neg = single && f.num.terms().next().is_some_and(|(_, c)| c < &Q::zero());
    let g = if neg { f.neg() } else { f.clone() };
    let text = g.to_text(names, forms);
    if !single && f.is_polynomial() {
        return (false, format!("({text})"));
    }
    (neg, text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CartanType;
    use crate::rational::q;

    fn a1() -> AlgebraContext {
        let rs = RootSystem::new(CartanType::A, 1).unwrap();
        let gd = GroupData::new(&rs).unwrap();
        AlgebraContext::new(&rs, &gd)
    }

    #[test]
    fn weyl_relation() {
        let ctx = a1();
        let d = ctx.partial(0);
        let x = ctx.poly_multiplication(&Polynomial::var(1, 0));
        assert_eq!(ctx.commutator(&d, &x), ctx.identity());
    }

    #[test]
    fn reflection_conjugation() {
        let ctx = a1();
        let s = ctx.group_element(1);
        let x = ctx.poly_multiplication(&Polynomial::var(1, 0));
        let conj = ctx.compose(&ctx.compose(&s, &x), &s);
        assert_eq!(conj, ctx.scale(&x, &q(-1)));
        let d = ctx.partial(0);
        assert_eq!(ctx.compose(&ctx.compose(&s, &d), &s), ctx.scale(&d, &q(-1)));
    }

    #[test]
    fn text_and_grading() {
        let ctx = a1();
        let x = ctx.poly_multiplication(&Polynomial::var(1, 0));
        let u = ctx.sub(&ctx.compose(&x, &ctx.partial(0)), &ctx.identity());
        assert_eq!(ctx.to_text(&u), "x1*d1 - 1");
        assert_eq!(u.order(), 1);
        assert_eq!(u.weight(), Some(0));
        assert_eq!(u.flat_degree(), Some(1));
        let inv = ctx.multiplication(RootFraction::inverse_root(0, q(-2), &ctx.forms));
        let l = ctx.add(&ctx.power(&ctx.partial(0), 2), &ctx.compose(&inv, &ctx.partial(0)));
        assert_eq!(ctx.to_text(&l), "d1^2 - 2/x1*d1");
        assert_eq!(l.weight(), Some(-2));
        assert_eq!(l.flat_degree(), Some(0));
    }

    #[test]
    fn apply_and_compose_agree() {
        let ctx = a1();
        let inv = ctx.multiplication(RootFraction::inverse_root(0, q(1), &ctx.forms));
        let u = ctx.add(&ctx.partial(0), &ctx.compose(&inv, &ctx.group_element(1)));
        let v = ctx.compose(&u, &u);
        let f = Polynomial::parse("x1^3 + 2*x1^2 + 1", &ctx.names()).unwrap();
        let once = ctx.apply(&u, &f).value;
        let twice = ctx.apply_frac(&u, &once);
        assert_eq!(ctx.apply_frac(&v, &ctx.frac(f)), twice);
    }
}
