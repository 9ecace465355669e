//! Quasi-invariant polynomials `Q_c`, their Hilbert series, the operators
//! `L_P = (ad L_c)^k (P) / (2^k k!)`, and the pairing `(f, g)_c = (L_f g)(0)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::json;

use crate::algebra::{directional_remainders, divide_by_linear_power, image_matrix, in_span, invariant_basis, Division, GradedBasis};
use crate::coxeter::{kappa_scalar, molien_series, GroupData, Multiplicity, RootSystem};
use crate::dunkl::calogero_moser;
use crate::error::{Error, Result};
use crate::fraction::RootFraction;
use crate::linalg::{self, Matrix};
use crate::operator::{AlgebraContext, Operator};
use crate::poly::{monomials_of_degree, Monomial, Polynomial};
use crate::rational::{binomial, factorial, fmt_q, q, to_nonneg_usize, Q};
use crate::report::CheckResult;
use crate::series::Series;

/// Per-root exponents `2 c_alpha + 1`; rejects non-integral or negative `c`.
fn divisibility_orders(rs: &RootSystem, c: &Multiplicity) -> Result<Vec<usize>> {
    let ints = c.integral()?;
    Ok((0..rs.num_positive_roots()).map(|i| 2 * ints[rs.orbit[i]] + 1).collect())
}

/// `s_alpha f - f` divisible by `alpha^{2c+1}` for every positive root; the first
/// failing root is returned on failure.
pub fn quasi_invariance_defect(rs: &RootSystem, gd: &GroupData, c: &Multiplicity, f: &Polynomial) -> Result<Option<usize>> {
    let orders = divisibility_orders(rs, c)?;
    for (i, &m) in orders.iter().enumerate() {
        let diff = &gd.act(gd.reflection_of_root[i], f)? - f;
        if let Division::Failure { .. } = divide_by_linear_power(&diff, &rs.positive_roots[i], m) {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

pub fn is_quasi_invariant(rs: &RootSystem, gd: &GroupData, c: &Multiplicity, f: &Polynomial) -> Result<bool> {
    Ok(quasi_invariance_defect(rs, gd, c, f)?.is_none())
}

/// Basis of the degree-`d` piece of `Q_c`.
pub fn qc_basis(rs: &RootSystem, gd: &GroupData, c: &Multiplicity, d: usize) -> Result<Vec<Polynomial>> {
    let orders = divisibility_orders(rs, c)?;
    let r = rs.rank;
    let monos = monomials_of_degree(r, d);
    let mut constraints: Vec<Matrix> = Vec::new();
    for (i, &m) in orders.iter().enumerate() {
        if m == 1 {
            // alpha | s_alpha f - f always holds.
            continue;
        }
        let s = gd.reflection_of_root[i];
        let rems: Vec<Vec<Polynomial>> = monos
            .iter()
            .map(|mono| {
                let f = Polynomial::term(mono.clone(), Q::one());
                Ok(directional_remainders(&(&gd.act(s, &f)? - &f), &rs.positive_roots[i], m))
            })
            .collect::<Result<_>>()?;
        for step in 0..m {
            let images: Vec<Polynomial> = rems.iter().map(|rem| rem[step].clone()).collect();
            constraints.push(image_matrix(&images));
        }
    }
    Ok(crate::algebra::graded_nullspace(r, d, &constraints))
}

/// `Q_c` up to degree `bound`.
#[derive(Clone, Debug)]
pub struct QuasiInvariantRing {
    pub rs: RootSystem,
    pub c: Multiplicity,
    pub bound: usize,
    pub graded: GradedBasis,
}

impl QuasiInvariantRing {
    pub fn new(rs: &RootSystem, gd: &GroupData, c: &Multiplicity, bound: usize) -> Result<Self> {
        let mut graded = GradedBasis::new(rs.rank);
        for d in 0..=bound {
            graded.insert(d, qc_basis(rs, gd, c, d)?);
        }
        Ok(QuasiInvariantRing { rs: rs.clone(), c: c.clone(), bound, graded })
    }

    pub fn dims(&self) -> Vec<usize> {
        self.graded.dims()
    }

    pub fn basis(&self, d: usize) -> &[Polynomial] {
        self.graded.get(d)
    }

    /// Membership of the listed elements, invariants inside, and products.
    pub fn structure_checks(&self, gd: &GroupData) -> Result<Vec<CheckResult>> {
        let names = Polynomial::default_names(self.rs.rank);
        let mut member = CheckResult::new("basis elements are quasi-invariant");
        let mut contains = CheckResult::new("invariants lie in Q_c");
        let mut ring = CheckResult::new("Q_c closed under products");
        member.require(self.graded.is_valid(), || "graded basis not homogeneous or not independent".into());
        for (d, f) in self.graded.iter() {
            member.require(is_quasi_invariant(&self.rs, gd, &self.c, f)?, || format!("degree {d}: {}", f.to_text(&names)));
        }
        for d in 0..=self.bound {
            for g in invariant_basis(gd, d) {
                contains.require(in_span(self.basis(d), &g), || format!("degree {d}: {}", g.to_text(&names)));
            }
        }
        for d1 in 1..=self.bound {
            for d2 in d1..=self.bound - d1 {
                for f in self.basis(d1) {
                    for g in self.basis(d2) {
                        let p = f * g;
                        ring.require(in_span(self.basis(d1 + d2), &p), || {
                            format!("({}) * ({})", f.to_text(&names), g.to_text(&names))
                        });
                    }
                }
            }
        }
        Ok(vec![member, contains, ring])
    }
}

/// `sum_tau dim tau * t^{kappa_c(tau)} * chi_tau(t)` up to `t^n`.
pub fn closed_form_hilbert_series(rs: &RootSystem, gd: &GroupData, c: &Multiplicity, n: usize) -> Result<Series> {
    c.integral()?;
    let mut total = Series::zero(n);
    for tau in 0..gd.num_classes() {
        let kappa = kappa_scalar(rs, gd, c, tau)?;
        let shift = to_nonneg_usize(&kappa)
            .ok_or_else(|| Error::Invalid(format!("kappa {} of irreducible {tau} is not a nonnegative integer", fmt_q(&kappa))))?;
        let chi = molien_series(gd, tau, n)?;
        total = total.add(&chi.shift(shift).scale(&q(gd.dim(tau) as i64)));
    }
    Ok(total)
}

pub fn hilbert_compare(ring: &QuasiInvariantRing, gd: &GroupData) -> Result<CheckResult> {
    let fv = closed_form_hilbert_series(&ring.rs, gd, &ring.c, ring.bound)?;
    let dims = ring.dims();
    let mut res = CheckResult::new("dim Q_c^d equals the closed-form series");
    for (d, dim) in dims.iter().enumerate() {
        res.require(q(*dim as i64) == fv.coeffs[d], || format!("degree {d}: {dim} vs {}", fmt_q(&fv.coeffs[d])));
    }
    Ok(res.with_data(json!({ "dims": dims, "series": fv.to_strings() })))
}

/// Numerator of the closed-form series over `prod (1 - t^{d_i})`, truncated at `t^n`.
pub fn series_numerator(series: &Series, degrees: &[usize]) -> Series {
    let n = series.precision();
    let mut num = series.clone();
    for &d in degrees {
        let mut factor = vec![Q::zero(); d + 1];
        factor[0] = Q::one();
        factor[d] = -Q::one();
        num = num.mul(&Series::from_poly(&factor, n));
    }
    num
}

fn require_polynomial(ctx: &AlgebraContext, u: &Operator, g: &Polynomial) -> Result<Polynomial> {
    let applied = ctx.apply(u, g);
    let text = applied.value.to_text(&ctx.names(), &ctx.forms);
    applied.into_polynomial().ok_or(Error::NonPolynomial(text))
}

/// Calogero-Moser operator together with the context it lives in.
#[derive(Clone, Debug)]
pub struct CvSetup {
    pub ctx: AlgebraContext,
    pub gd: GroupData,
    pub c: Multiplicity,
    pub l: Operator,
}

impl CvSetup {
    pub fn new(rs: &RootSystem, gd: &GroupData, c: &Multiplicity) -> Result<Self> {
        c.integral()?;
        let ctx = AlgebraContext::new(rs, gd);
        let l = calogero_moser(&ctx, c);
        Ok(CvSetup { ctx, gd: gd.clone(), c: c.clone(), l })
    }

    pub fn rs(&self) -> &RootSystem {
        &self.ctx.rs
    }

    pub fn check_member(&self, p: &Polynomial) -> Result<()> {
        match quasi_invariance_defect(self.rs(), &self.gd, &self.c, p)? {
            None => Ok(()),
            Some(i) => Err(Error::NotQuasiInvariant(format!(
                "{} fails at root {}",
                p,
                Polynomial::linear(&self.rs().positive_roots[i])
            ))),
        }
    }

    /// `L_c g`, required to be polynomial.
    pub fn apply_l(&self, g: &Polynomial) -> Result<Polynomial> {
        require_polynomial(&self.ctx, &self.l, g)
    }

    /// `L_P` as an operator, by iterated symbolic commutators.
    pub fn cv_operator(&self, p: &Polynomial) -> Result<Operator> {
        if !p.is_homogeneous() {
            return Err(Error::Invalid(format!("{p} is not homogeneous")));
        }
        self.check_member(p)?;
        let k = p.degree().unwrap_or(0);
        let mut u = self.ctx.poly_multiplication(p);
        for _ in 0..k {
            u = self.ctx.commutator(&self.l, &u);
        }
        let norm = Q::from_integer(BigInt::from(2).pow(k as u32) * factorial(k)).recip();
        Ok(self.ctx.scale(&u, &norm))
    }

    /// `L_P g` for `P, g` in `Q_c` by the binomial expansion of `(ad L_c)^k`,
    /// summed over the homogeneous components of `P`.
    pub fn cv_apply(&self, p: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        let r = self.rs().rank;
        let mut out = Polynomial::zero(r);
        let Some(top) = p.degree() else { return Ok(out) };
        let mut powers = vec![g.clone()];
        for _ in 0..top {
            let next = self.apply_l(powers.last().unwrap())?;
            powers.push(next);
        }
        for k in 0..=top {
            let pk = p.homogeneous_component(k);
            if pk.is_zero() {
                continue;
            }
            let mut sum = Polynomial::zero(r);
            for (j, lg) in powers.iter().enumerate().take(k + 1) {
                if lg.is_zero() {
                    continue;
                }
                let mut t = &pk * lg;
                for _ in 0..k - j {
                    t = self.apply_l(&t)?;
                }
                let sign = if j % 2 == 0 { Q::one() } else { -Q::one() };
                sum += &t.scale(&(Q::from_integer(binomial(k, j)) * sign));
            }
            let norm = Q::from_integer(BigInt::from(2).pow(k as u32) * factorial(k)).recip();
            out += &sum.scale(&norm);
        }
        Ok(out)
    }

    /// `(f, g)_c = (L_f g)(0)`.
    pub fn bilinear_form(&self, f: &Polynomial, g: &Polynomial) -> Result<Q> {
        self.check_member(f)?;
        self.check_member(g)?;
        Ok(self.cv_apply(f, g)?.constant_term())
    }

    pub fn gram_matrix(&self, basis: &[Polynomial]) -> Result<Matrix> {
        basis
            .iter()
            .map(|f| basis.iter().map(|g| self.bilinear_form(f, g)).collect())
            .collect()
    }

    /// `sigma(L_P)(xi) = P(B xi)`, the identification through the invariant form.
    pub fn symbol_target(&self, p: &Polynomial) -> Polynomial {
        let r = self.rs().rank;
        let forms: Vec<Polynomial> = (0..r)
            .map(|i| {
                let mut row: Vec<Q> = vec![Q::zero(); r];
                row.extend(self.rs().dual_form[i].iter().cloned());
                Polynomial::linear(&row)
            })
            .collect();
        p.substitute(&forms)
    }
}

/// Properties of `L_P` for one `P`: order, weight, symbol, preservation of `Q_c`.
pub fn cv_operator_checks(setup: &CvSetup, ring: &QuasiInvariantRing, p: &Polynomial, lp: &Operator) -> Result<CheckResult> {
    let names = setup.ctx.names();
    let k = p.degree().unwrap_or(0);
    let mut res = CheckResult::new(format!("L_P for P = {}", p.to_text(&names)));
    res.require(lp.is_pure_differential(), || "reflection terms".into());
    res.require(lp.order() == k, || format!("order {} != {k}", lp.order()));
    let wo = lp.weight().map(|w| w + lp.order() as i64);
    res.require(wo == Some(0), || format!("weight + order = {wo:?}"));
    let symbol = setup.ctx.principal_symbol(lp);
    let target = setup.symbol_target(p);
    let ok = symbol.as_ref().and_then(RootFraction::as_polynomial) == Some(&target);
    res.require(ok, || format!("symbol {:?} != P(B xi)", symbol.map(|s| s.num.to_string())));
    for (d, f) in ring.graded.iter() {
        match setup.ctx.apply(lp, f).into_polynomial() {
            Some(g) => {
                let member = is_quasi_invariant(setup.rs(), &setup.gd, &setup.c, &g)?;
                res.require(member, || format!("L_P({}) not quasi-invariant (degree {d})", f.to_text(&names)));
            }
            None => res.fail(format!("L_P({}) not polynomial", f.to_text(&names))),
        }
    }
    Ok(res.with_data(json!({
        "operator": setup.ctx.to_text(lp),
        "order": lp.order(),
        "weight": lp.weight(),
    })))
}

/// `L_c(Q_c) in Q_c` on every basis element.
pub fn closure_check(setup: &CvSetup, ring: &QuasiInvariantRing) -> Result<CheckResult> {
    let names = setup.ctx.names();
    let mut res = CheckResult::new("L_c preserves Q_c");
    let mut count = 0;
    for (d, f) in ring.graded.iter() {
        count += 1;
        match setup.ctx.apply(&setup.l, f).into_polynomial() {
            Some(g) => {
                let ok = is_quasi_invariant(setup.rs(), &setup.gd, &setup.c, &g)?
                    && (d < 2 || in_span(ring.basis(d - 2), &g));
                res.require(ok, || format!("L_c({}) = {} not in Q_c", f.to_text(&names), g.to_text(&names)));
            }
            None => res.fail(format!("L_c({}) not polynomial", f.to_text(&names))),
        }
    }
    Ok(res.with_data(json!({ "degree_bound": ring.bound, "elements": count })))
}

/// `[L_P, L_Q] = 0` for all pairs from the given operators.
pub fn commutativity_check(setup: &CvSetup, ops: &[(Polynomial, Operator)]) -> CheckResult {
    let names = setup.ctx.names();
    let mut res = CheckResult::new("[L_P, L_Q] = 0");
    for (a, (p, lp)) in ops.iter().enumerate() {
        for (q_, lq) in ops.iter().skip(a + 1).map(|(q_, l)| (q_, l)) {
            let comm = setup.ctx.commutator(lp, lq);
            res.require(comm.is_zero(), || format!("P = {}, Q = {}", p.to_text(&names), q_.to_text(&names)));
        }
    }
    res.with_data(json!({ "operators": ops.len() }))
}

/// Ansatz operators `N / delta^{k - |beta|} d^beta` of weight `-k`, one per
/// numerator monomial.
fn centralizer_ansatz(ctx: &AlgebraContext, k: usize) -> Vec<Operator> {
    let r = ctx.rank();
    let nroots = ctx.forms.len();
    let mut out = Vec::new();
    for order in 0..=k {
        let pole = k - order;
        let num_degree = pole * nroots - pole;
        for beta in monomials_of_degree(r, order) {
            for m in monomials_of_degree(r, num_degree) {
                let f = RootFraction { num: Polynomial::term(m, Q::one()), den: vec![pole as u32; nroots] };
                let mut u = Operator::default();
                u.terms.insert((beta.clone(), 0), f);
                out.push(u);
            }
        }
    }
    out
}

/// Linear coordinates of a family of root fractions over a common denominator.
fn common_coordinates(ctx: &AlgebraContext, values: &[RootFraction]) -> Vec<Vec<Q>> {
    let mut den = vec![0u32; ctx.forms.len()];
    for v in values {
        for (d, &e) in den.iter_mut().zip(&v.den) {
            *d = (*d).max(e);
        }
    }
    let nums: Vec<Polynomial> = values
        .iter()
        .map(|v| {
            let diff: Vec<u32> = den.iter().zip(&v.den).map(|(a, b)| a - b).collect();
            &v.num * &ctx.forms.product(&diff)
        })
        .collect();
    let monos: Vec<Monomial> = {
        let set: std::collections::BTreeSet<Monomial> = nums.iter().flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
        set.into_iter().collect()
    };
    nums.iter().map(|p| p.coefficients_in(&monos)).collect()
}

/// Bounded centralizer search: for each `k <= order_bound`, the dimension of the
/// space of ansatz operators of weight `-k` commuting with `L_c`, compared with
/// `dim Q_c^k`.
pub fn centralizer_search(setup: &CvSetup, ring: &QuasiInvariantRing, order_bound: usize) -> Result<CheckResult> {
    let ctx = &setup.ctx;
    let r = ctx.rank();
    let mut res = CheckResult::new("bounded centralizer of L_c is spanned by the L_P");
    let mut table = BTreeMap::new();
    for k in 0..=order_bound {
        let ansatz = centralizer_ansatz(ctx, k);
        let tests: Vec<Polynomial> = (0..=k + 1)
            .flat_map(|d| monomials_of_degree(r, d))
            .map(|m| Polynomial::term(m, Q::one()))
            .collect();
        // Columns: ansatz operators; rows: coordinates of [L_c, u] g over all test g.
        let mut rows: Matrix = Vec::new();
        for g in &tests {
            let lg = ctx.apply(&setup.l, g).value;
            let values: Vec<RootFraction> = ansatz
                .iter()
                .map(|u| {
                    let ug = ctx.apply(u, g).value;
                    ctx.apply_frac(&setup.l, &ug).sub(&ctx.apply_frac(u, &lg), &ctx.forms)
                })
                .collect();
            let coords = common_coordinates(ctx, &values);
            rows.extend(linalg::transpose(&coords));
        }
        let dim = ansatz.len() - linalg::rank(&rows);
        let qc = if k <= ring.bound { ring.basis(k).len() } else { qc_basis(setup.rs(), &setup.gd, &setup.c, k)?.len() };
        res.require(dim == qc, || format!("weight -{k}: centralizer dimension {dim}, dim Q_c^{k} = {qc}"));
        table.insert(k.to_string(), json!({ "centralizer": dim, "qc": qc, "ansatz": ansatz.len() }));
    }
    Ok(res.with_data(json!(table)))
}

/// Symmetry, grading and nondegeneracy of `(,)_c` up to degree `n`.
pub fn bilinear_checks(setup: &CvSetup, ring: &QuasiInvariantRing, n: usize) -> Result<Vec<CheckResult>> {
    let names = setup.ctx.names();
    let mut sym = CheckResult::new("(f,g)_c symmetric");
    let mut graded = CheckResult::new("(f,g)_c = 0 across degrees");
    let mut nondeg = CheckResult::new("Gram matrices nonsingular");
    let mut dets = Vec::new();
    for d in 0..=n.min(ring.bound) {
        let basis = ring.basis(d);
        let gram = setup.gram_matrix(basis)?;
        for i in 0..basis.len() {
            for j in 0..i {
                sym.require(gram[i][j] == gram[j][i], || {
                    format!("({}, {})", basis[i].to_text(&names), basis[j].to_text(&names))
                });
            }
        }
        let det = linalg::determinant(&gram);
        nondeg.require(basis.is_empty() || !det.is_zero(), || format!("degree {d}"));
        dets.push(fmt_q(&det));
        if d + 1 <= n.min(ring.bound) {
            for e in d + 1..=n.min(ring.bound) {
                if let (Some(f), Some(g)) = (basis.first(), ring.basis(e).first()) {
                    let a = setup.bilinear_form(f, g)?;
                    let b = setup.bilinear_form(g, f)?;
                    graded.require(a.is_zero() && b.is_zero(), || {
                        format!("({}, {})", f.to_text(&names), g.to_text(&names))
                    });
                }
            }
        }
    }
    let nondeg = nondeg.with_data(json!({ "determinants": dets }));
    Ok(vec![sym, graded, nondeg])
}

/// `(P f, g)_c = (f, L_P g)_c` for `P` of degree at most `p_bound` and
/// `deg P + deg f = deg g <= n`.
pub fn adjointness_check(setup: &CvSetup, ring: &QuasiInvariantRing, p_bound: usize, n: usize) -> Result<CheckResult> {
    let names = setup.ctx.names();
    let mut res = CheckResult::new("(P f, g)_c = (f, L_P g)_c");
    let mut count = 0;
    let top = n.min(ring.bound);
    for dp in 1..=p_bound.min(top) {
        for p in ring.basis(dp) {
            for df in 0..=top - dp {
                for f in ring.basis(df) {
                    for g in ring.basis(df + dp) {
                        let lhs = setup.bilinear_form(&(p * f), g)?;
                        let lpg = setup.cv_apply(p, g)?;
                        let rhs = setup.bilinear_form(f, &lpg)?;
                        count += 1;
                        res.require(lhs == rhs, || {
                            format!("P = {}, f = {}, g = {}", p.to_text(&names), f.to_text(&names), g.to_text(&names))
                        });
                    }
                }
            }
        }
    }
    Ok(res.with_data(json!({ "triples": count })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CartanType;
    use crate::rational::q;

    fn setup(t: CartanType, r: usize) -> (RootSystem, GroupData) {
        let rs = RootSystem::new(t, r).unwrap();
        let gd = GroupData::new(&rs).unwrap();
        (rs, gd)
    }

    fn p(s: &str, n: usize) -> Polynomial {
        Polynomial::parse(s, &Polynomial::default_names(n)).unwrap()
    }

    #[test]
    fn rank_one_dims() {
        let (rs, gd) = setup(CartanType::A, 1);
        let ring = QuasiInvariantRing::new(&rs, &gd, &Multiplicity::constant(&rs, q(1)), 6).unwrap();
        assert_eq!(ring.dims(), vec![1, 0, 1, 1, 1, 1, 1]);
        assert_eq!(ring.basis(3), &[p("x1^3", 1)]);
        assert!(hilbert_compare(&ring, &gd).unwrap().passed);
        assert!(qc_basis(&rs, &gd, &Multiplicity::constant(&rs, crate::rational::qf(1, 2)), 2).is_err());
    }

    #[test]
    fn a2_dims_and_numerator() {
        let (rs, gd) = setup(CartanType::A, 2);
        let c = Multiplicity::constant(&rs, q(1));
        let ring = QuasiInvariantRing::new(&rs, &gd, &c, 5).unwrap();
        assert_eq!(ring.dims(), vec![1, 0, 1, 1, 3, 3]);
        let fv = closed_form_hilbert_series(&rs, &gd, &c, 10).unwrap();
        let num = series_numerator(&fv, &[2, 3]);
        let expect: Vec<Q> = [1, 0, 0, 0, 2, 2, 0, 0, 0, 1, 0].iter().map(|&x| q(x)).collect();
        assert_eq!(num.coeffs, expect);
    }

    #[test]
    fn rank_one_cv_and_form() {
        let (rs, gd) = setup(CartanType::A, 1);
        let s = CvSetup::new(&rs, &gd, &Multiplicity::constant(&rs, q(1))).unwrap();
        let l2 = s.cv_operator(&p("x1^2", 1)).unwrap();
        assert_eq!(l2, s.l);
        let l3 = s.cv_operator(&p("x1^3", 1)).unwrap();
        assert_eq!(l3.order(), 3);
        assert!(s.ctx.commutator(&l2, &l3).is_zero());
        assert!(s.cv_operator(&p("x1", 1)).is_err());
        assert_eq!(s.bilinear_form(&p("1", 1), &p("1", 1)).unwrap(), q(1));
        assert_eq!(s.bilinear_form(&p("x1^2", 1), &p("x1^2", 1)).unwrap(), q(-2));
        assert_eq!(s.bilinear_form(&p("x1^2", 1), &p("x1^3", 1)).unwrap(), q(0));
        // evaluation route agrees with the symbolic operator
        let g = p("x1^5 + x1^4", 1);
        assert_eq!(s.cv_apply(&p("x1^3", 1), &g).unwrap(), s.ctx.apply(&l3, &g).into_polynomial().unwrap());
    }

    #[test]
    fn rank_one_centralizer() {
        let (rs, gd) = setup(CartanType::A, 1);
        let s = CvSetup::new(&rs, &gd, &Multiplicity::constant(&rs, q(1))).unwrap();
        let ring = QuasiInvariantRing::new(&rs, &gd, &s.c, 4).unwrap();
        let res = centralizer_search(&s, &ring, 3).unwrap();
        assert!(res.passed, "{res:?}");
    }
}
