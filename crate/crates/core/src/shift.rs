//! The shift operator `S_c = ad(L_c, L_0)^d [delta_c^2] / (2^d d!)` and the
//! Baker-Akhiezer kernel `psi_c = S_c[e^{(x,k)}] = Phi e^{(x,k)}`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::json;

use crate::coxeter::{discriminant, DiscriminantVariant, GroupData, Multiplicity, RootSystem};
use crate::dunkl::calogero_moser;
use crate::error::{Error, Result};
use crate::fraction::RootFraction;
use crate::operator::{AlgebraContext, Operator};
use crate::poly::{Monomial, Polynomial};
use crate::rational::{factorial, fmt_q, Q};
use crate::report::CheckResult;

#[derive(Clone, Debug)]
pub struct ShiftOperator {
    pub ctx: AlgebraContext,
    pub c: Multiplicity,
    pub d: usize,
    pub delta_c: Polynomial,
    pub operator: Operator,
    pub l_c: Operator,
    pub l_0: Operator,
}

pub fn shift_operator(rs: &RootSystem, gd: &GroupData, c: &Multiplicity) -> Result<ShiftOperator> {
    let ints = c.integral()?;
    let d: usize = (0..rs.num_positive_roots()).map(|i| ints[rs.orbit[i]]).sum();
    let delta_c = discriminant(rs, c, &DiscriminantVariant::CWeighted)?;
    let ctx = AlgebraContext::new(rs, gd);
    let l_c = calogero_moser(&ctx, c);
    let l_0 = calogero_moser(&ctx, &Multiplicity::zero(rs));
    let mut u = ctx.poly_multiplication(&(&delta_c * &delta_c));
    for _ in 0..d {
        u = ctx.sub(&ctx.compose(&l_c, &u), &ctx.compose(&u, &l_0));
    }
    let norm = Q::from_integer(BigInt::from(2).pow(d as u32) * factorial(d)).recip();
    let operator = ctx.scale(&u, &norm);
    Ok(ShiftOperator { ctx, c: c.clone(), d, delta_c, operator, l_c, l_0 })
}

impl ShiftOperator {
    pub fn text(&self) -> String {
        self.ctx.to_text(&self.operator)
    }

    /// `S_c[1]`.
    pub fn value_at_one(&self) -> Option<Q> {
        let v = self.ctx.apply(&self.operator, &Polynomial::one(self.ctx.rank())).into_polynomial()?;
        v.is_constant().then(|| v.constant_term())
    }

    /// Ratio of the principal symbol to `delta_c(x) delta_c(B xi)`, when constant.
    pub fn symbol_ratio(&self) -> Option<Q> {
        let r = self.ctx.rank();
        let symbol = self.ctx.principal_symbol(&self.operator)?;
        let xi_forms: Vec<Polynomial> = (0..r)
            .map(|i| {
                let mut row = vec![Q::zero(); r];
                row.extend(self.ctx.rs.dual_form[i].iter().cloned());
                Polynomial::linear(&row)
            })
            .collect();
        let target = &self.delta_c.extend_vars(2 * r) * &self.delta_c.substitute(&xi_forms);
        let sym = symbol.as_polynomial()?;
        let (m, t) = target.leading_term()?;
        let ratio = sym.coeff(m) / t;
        (*sym == target.scale(&ratio) && !ratio.is_zero()).then_some(ratio)
    }

    pub fn checks(&self) -> Vec<CheckResult> {
        let mut inter = CheckResult::new("L_c S_c = S_c L_0");
        let lhs = self.ctx.compose(&self.l_c, &self.operator);
        let rhs = self.ctx.compose(&self.operator, &self.l_0);
        let diff = self.ctx.sub(&lhs, &rhs);
        inter.require(diff.is_zero(), || self.ctx.to_text(&diff));
        let mut order = CheckResult::new("order S_c = d");
        order.require(self.operator.order() == self.d && self.operator.is_pure_differential(), || {
            format!("order {} vs d = {}", self.operator.order(), self.d)
        });
        let mut symbol = CheckResult::new("principal symbol = delta_c(x) delta_c(xi)");
        let ratio = self.symbol_ratio();
        symbol.require(ratio == Some(Q::one()), || format!("ratio {:?}", ratio.as_ref().map(fmt_q)));
        let mut one = CheckResult::new("S_c[1] is a nonzero constant");
        let v = self.value_at_one();
        one.require(v.as_ref().is_some_and(|v| !v.is_zero()), || format!("S_c[1] = {:?}", v.as_ref().map(fmt_q)));
        let data = json!({
            "operator": self.text(),
            "d": self.d,
            "S[1]": v.as_ref().map(fmt_q),
            "symbol_ratio": ratio.as_ref().map(fmt_q),
        });
        [inter, order, symbol, one].into_iter().map(|c| c.with_data(data.clone())).collect()
    }
}

/// `Phi(x, k)` in `2 rank` variables, `x` first.
#[derive(Clone, Debug)]
pub struct BispectralKernel {
    pub phi: Polynomial,
    /// `Phi(0, 0)`.
    pub normalization: Q,
}

impl BispectralKernel {
    pub fn text(&self, rank: usize) -> String {
        self.phi.to_text(&Polynomial::xk_names(rank))
    }
}

/// Degree in the first `rank` variables.
pub fn x_degree(p: &Polynomial, rank: usize) -> Option<usize> {
    p.terms().map(|(m, _)| m.0[..rank].iter().map(|&e| e as usize).sum()).max()
}

pub fn baker_akhiezer(shift: &ShiftOperator) -> Result<(AlgebraContext, BispectralKernel)> {
    let spec = AlgebraContext::spectral(&shift.ctx.rs, &shift.ctx.gd);
    let s = spec.import(&shift.operator);
    let r = spec.rank();
    let value = spec
        .apply_exp(&s, &RootFraction::one(&spec.forms))
        .ok_or(Error::ReflectionTerms)?;
    let phi = value
        .as_polynomial()
        .cloned()
        .ok_or_else(|| Error::NonPolynomial(value.to_text(&Polynomial::xk_names(r), &spec.forms)))?;
    let normalization = phi.constant_term();
    Ok((spec, BispectralKernel { phi, normalization }))
}

/// `K(u) = e^{-(x,k)} u(Phi e^{(x,k)})`, required to be polynomial.
pub fn kernel_of_operator(spec: &AlgebraContext, u: &Operator, kernel: &BispectralKernel) -> Result<Polynomial> {
    let u = spec.import(u);
    let value = spec
        .apply_exp(&u, &RootFraction::from_poly(kernel.phi.clone(), &spec.forms))
        .ok_or(Error::ReflectionTerms)?;
    value
        .as_polynomial()
        .cloned()
        .ok_or_else(|| Error::NonPolynomial(value.to_text(&spec.names(), &spec.forms)))
}

/// `P(B k)` as a polynomial in `(x, k)`: the eigenvalue attached to `P`.
pub fn spectral_value(rs: &RootSystem, p: &Polynomial) -> Polynomial {
    let r = rs.rank;
    let forms: Vec<Polynomial> = (0..r)
        .map(|i| {
            let mut row = vec![Q::zero(); r];
            row.extend(rs.dual_form[i].iter().cloned());
            Polynomial::linear(&row)
        })
        .collect();
    p.substitute(&forms)
}

/// `L_P (Phi e) = P(B k) Phi e`.
pub fn eigenfunction_check(spec: &AlgebraContext, kernel: &BispectralKernel, p: &Polynomial, lp: &Operator) -> CheckResult {
    let names = Polynomial::default_names(spec.rank());
    let mut res = CheckResult::new(format!("L_P psi = P(k) psi for P = {}", p.to_text(&names)));
    let expect = &spectral_value(&spec.rs, p) * &kernel.phi;
    match kernel_of_operator(spec, lp, kernel) {
        Ok(got) => res.require(got == expect, || format!("got {}", got.to_text(&spec.names()))),
        Err(e) => res.fail(e.to_string()),
    }
    res
}

fn truncated_exp(arg: &Polynomial, order: usize) -> Polynomial {
    let mut out = Polynomial::one(arg.nvars());
    let mut term = Polynomial::one(arg.nvars());
    for j in 1..=order {
        term = (&term * arg).scale(&Q::from_integer(BigInt::from(j)).recip());
        out += &term;
    }
    out
}

/// Quasi-invariance of `Phi e^{(x,k)}` in `x` and in `k`, reduced to
/// congruences modulo `alpha(x)^{2c+1}` and `<alpha^vee, k>^{2c+1}`.
pub fn double_quasiinvariance_check(rs: &RootSystem, c: &Multiplicity, kernel: &BispectralKernel) -> Result<CheckResult> {
    let ints = c.integral()?;
    let r = rs.rank;
    let n = 2 * r;
    let names = Polynomial::xk_names(r);
    let mut res = CheckResult::new("Phi e^{(x,k)} quasi-invariant in x and in k");
    for i in 0..rs.num_positive_roots() {
        let m = 2 * ints[rs.orbit[i]] + 1;
        let a = &rs.positive_roots[i];
        let cor = &rs.coroots[i];
        let mut x_form = a.clone();
        x_form.resize(n, Q::zero());
        let mut k_form = vec![Q::zero(); r];
        k_form.extend(cor.iter().cloned());
        let alpha_x = Polynomial::linear(&x_form);
        let coroot_k = Polynomial::linear(&k_form);
        let e = truncated_exp(&(&alpha_x * &coroot_k).scale(&-Q::one()), m - 1);
        // x -> s x = x - alpha(x) alpha^vee ; k -> s k = k - <alpha^vee,k> alpha
        let sx: Vec<Polynomial> = (0..n)
            .map(|j| {
                if j < r {
                    &Polynomial::var(n, j) - &alpha_x.scale(&cor[j])
                } else {
                    Polynomial::var(n, j)
                }
            })
            .collect();
        let sk: Vec<Polynomial> = (0..n)
            .map(|j| {
                if j < r {
                    Polynomial::var(n, j)
                } else {
                    &Polynomial::var(n, j) - &coroot_k.scale(&a[j - r])
                }
            })
            .collect();
        let root_text = Polynomial::linear(a).to_string();
        for (slot, subst, form) in [("x", &sx, &x_form), ("k", &sk, &k_form)] {
            let diff = &(&kernel.phi.substitute(subst) * &e) - &kernel.phi;
            let ok = matches!(
                crate::algebra::divide_by_linear_power(&diff, form, m),
                crate::algebra::Division::Quotient(_)
            );
            res.require(ok, || format!("root {root_text}, slot {slot}: {}", diff.to_text(&names)));
        }
    }
    res.require(!kernel.normalization.is_zero(), || "Phi(0,0) = 0".into());
    Ok(res.with_data(json!({ "phi(0,0)": fmt_q(&kernel.normalization) })))
}

/// `deg_x K(u) - deg_x Phi = weight(u) + order(u) >= 0`.
pub fn degree_identity_check(spec: &AlgebraContext, u: &Operator, kernel: &BispectralKernel) -> CheckResult {
    let r = spec.rank();
    let mut res = CheckResult::new("deg_x K(u) - deg_x Phi = weight + order >= 0");
    let weight = u.weight();
    match (kernel_of_operator(spec, u, kernel), weight) {
        (Ok(k), Some(w)) => {
            let jump = x_degree(&k, r).unwrap_or(0) as i64 - x_degree(&kernel.phi, r).unwrap_or(0) as i64;
            let wo = w + u.order() as i64;
            res.require(jump == wo && wo >= 0, || format!("jump {jump}, weight + order {wo}"));
            res.data = json!({ "jump": jump, "weight_plus_order": wo });
        }
        (Err(e), _) => res.fail(e.to_string()),
        (_, None) => res.fail("operator is not homogeneous".to_string()),
    }
    res
}

/// `F(x, k) -> F(B k, G x)`, exchanging the roles of `x` and `k` through the forms.
pub fn flip(rs: &RootSystem, f: &Polynomial) -> Polynomial {
    let r = rs.rank;
    let n = 2 * r;
    let mut forms = Vec::with_capacity(n);
    for i in 0..r {
        let mut row = vec![Q::zero(); r];
        row.extend(rs.dual_form[i].iter().cloned());
        forms.push(Polynomial::linear(&row));
    }
    for i in 0..r {
        let mut row = rs.invariant_form[i].clone();
        row.resize(n, Q::zero());
        forms.push(Polynomial::linear(&row));
    }
    f.substitute(&forms)
}

/// Every term of `Phi` has equal degree in `x` and in `k`.
pub fn bihomogeneity_check(rank: usize, kernel: &BispectralKernel) -> CheckResult {
    let mut res = CheckResult::new("Phi(t x, k/t) = Phi(x, k)");
    for (m, _) in kernel.phi.terms() {
        let dx: u32 = m.0[..rank].iter().map(|&e| e as u32).sum();
        let dk: u32 = m.0[rank..].iter().map(|&e| e as u32).sum();
        res.require(dx == dk, || format!("term {:?}", Monomial(m.0.clone())));
    }
    res
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CartanType;
    use crate::rational::q;
    use crate::report::all_passed;

    fn setup(t: CartanType, r: usize) -> (RootSystem, GroupData) {
        let rs = RootSystem::new(t, r).unwrap();
        let gd = GroupData::new(&rs).unwrap();
        (rs, gd)
    }

    #[test]
    fn rank_one_shift_and_kernel() {
        let (rs, gd) = setup(CartanType::A, 1);
        let s = shift_operator(&rs, &gd, &Multiplicity::constant(&rs, q(1))).unwrap();
        assert_eq!(s.text(), "x1*d1 - 1");
        assert_eq!(s.value_at_one(), Some(q(-1)));
        assert!(all_passed(&s.checks()));
        let (spec, k) = baker_akhiezer(&s).unwrap();
        assert_eq!(k.text(1), "x1*k1 - 1");
        assert_eq!(k.normalization, q(-1));
        assert!(double_quasiinvariance_check(&rs, &s.c, &k).unwrap().passed);
        assert!(eigenfunction_check(&spec, &k, &Polynomial::var(1, 0).pow(2), &s.l_c).passed);
        assert_eq!(flip(&rs, &k.phi), k.phi);
    }

    #[test]
    fn zero_multiplicity_is_identity() {
        let (rs, gd) = setup(CartanType::A, 2);
        let s = shift_operator(&rs, &gd, &Multiplicity::zero(&rs)).unwrap();
        assert_eq!(s.operator, s.ctx.identity());
        let (_, k) = baker_akhiezer(&s).unwrap();
        assert_eq!(k.phi, Polynomial::one(4));
    }

    #[test]
    fn a2_shift() {
        let (rs, gd) = setup(CartanType::A, 2);
        let s = shift_operator(&rs, &gd, &Multiplicity::constant(&rs, q(1))).unwrap();
        assert!(all_passed(&s.checks()));
        assert_eq!(s.value_at_one(), Some(crate::rational::qf(-3, 2)));
        let (_, k) = baker_akhiezer(&s).unwrap();
        assert_eq!(flip(&rs, &k.phi), k.phi);
        assert!(bihomogeneity_check(2, &k).passed);
        assert!(double_quasiinvariance_check(&rs, &s.c, &k).unwrap().passed);
    }
}
