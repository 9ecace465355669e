//! Conjugation of `y^2` by partial discriminants, and the Lefschetz maps
//! `(ad y^2)^k : C^k[h] -> C^k[h*]`.

use num_traits::{One, Zero};
use serde_json::json;

use crate::algebra::{divide_by_linear_power, invariant_basis, Division};
use crate::coxeter::{discriminant, DiscriminantVariant, GroupData, Multiplicity, RootSystem};
use crate::dunkl::{calogero_moser, DunklSystem};
use crate::error::Result;
use crate::linalg::{self, Matrix};
use crate::operator::AlgebraContext;
use crate::poly::{monomials_of_degree, Monomial, Polynomial};
use crate::rational::{binomial, fmt_q, Q};
use crate::report::CheckResult;

/// On `W`-invariants `g` of degree at most `n`:
/// `delta_eps^{-1} y_c^2 (delta_eps g) = L_{c - 1_eps} g`.
pub fn isotypic_conjugation_check(
    rs: &RootSystem,
    gd: &GroupData,
    c: &Multiplicity,
    eps: usize,
    n: usize,
) -> Result<CheckResult> {
    let negative = gd.negative_orbits(rs, eps)?;
    let delta = discriminant(rs, c, &DiscriminantVariant::Epsilon(negative.clone()))?;
    let shifted = c.minus_indicator(&negative);
    let ds = DunklSystem::new(rs, c);
    let ctx = AlgebraContext::new(rs, gd);
    let l = calogero_moser(&ctx, &shifted);
    let names = Polynomial::default_names(rs.rank);
    let roots: Vec<usize> = (0..rs.num_positive_roots()).filter(|&i| negative[rs.orbit[i]]).collect();
    let mut res = CheckResult::new("delta_eps^-1 y_c^2 delta_eps = L_{c - 1_eps} on invariants");
    let mut tested = 0;
    for d in 0..=n {
        for g in invariant_basis(gd, d) {
            tested += 1;
            let mut lhs = ds.y_squared(&(&delta * &g));
            let mut exact = true;
            for &i in &roots {
                match divide_by_linear_power(&lhs, &rs.positive_roots[i], 1) {
                    Division::Quotient(q) => lhs = q,
                    Division::Failure { .. } => {
                        exact = false;
                        break;
                    }
                }
            }
            let shown = g.to_text(&names);
            if !exact {
                res.fail(format!("y^2(delta_eps g) not divisible by delta_eps for g = {shown}"));
                continue;
            }
            match ctx.apply(&l, &g).into_polynomial() {
                Some(p) => res.require(p == lhs, || format!("g = {shown}")),
                None => res.fail(format!("L(g) not polynomial for g = {shown}")),
            }
        }
    }
    Ok(res.with_data(json!({
        "eps": eps,
        "shifted_c": shifted.values.iter().map(fmt_q).collect::<Vec<_>>(),
        "delta_eps": delta.to_text(&names),
        "invariants_tested": tested,
        "degree_bound": n,
    })))
}

/// `T^beta = prod T_i^{beta_i}` applied to `f`.
pub fn dunkl_monomial(ds: &DunklSystem, beta: &Monomial, f: &Polynomial) -> Polynomial {
    let mut out = f.clone();
    for (i, &e) in beta.0.iter().enumerate() {
        for _ in 0..e {
            out = ds.apply_basis(i, &out);
        }
    }
    out
}

/// `(ad y^2)^k (P)` applied to `g`, expanded as `sum_j C(k,j) (-1)^j Y^{k-j} P Y^j g`.
pub fn ad_power_apply(ds: &DunklSystem, k: usize, p: &Polynomial, g: &Polynomial) -> Polynomial {
    let mut ys = vec![g.clone()];
    for _ in 0..k {
        let next = ds.y_squared(ys.last().unwrap());
        ys.push(next);
    }
    let mut out = Polynomial::zero(g.nvars());
    for (j, yg) in ys.iter().enumerate() {
        if yg.is_zero() {
            continue;
        }
        let mut t = p * yg;
        for _ in 0..k - j {
            t = ds.y_squared(&t);
        }
        let coef = Q::from_integer(binomial(k, j)) * if j % 2 == 0 { Q::one() } else { -Q::one() };
        out += &t.scale(&coef);
    }
    out
}

#[derive(Clone, Debug)]
pub struct LefschetzMap {
    pub k: usize,
    /// Rows indexed by degree-`k` monomials `P` (largest first); columns by Dunkl
    /// monomials `T^beta` in the same order.
    pub matrix: Matrix,
    pub rank: usize,
    pub checks: Vec<CheckResult>,
}

/// For each degree-`k` monomial `P`, identifies `(ad y^2)^k (P)` with a
/// polynomial in the Dunkl operators on all polynomials of degree at most `n`,
/// checks it commutes with every `T_i`, and computes the rank of `P -> coefficients`.
pub fn lefschetz_check(rs: &RootSystem, c: &Multiplicity, k: usize, n: usize) -> Result<LefschetzMap> {
    if k > n {
        return Err(crate::error::Error::DegreeOutOfRange { degree: k, bound: n });
    }
    let r = rs.rank;
    let ds = DunklSystem::new(rs, c);
    let names = Polynomial::default_names(r);
    let monos = monomials_of_degree(r, k);
    let one = Q::one();
    // A[gamma][beta] = T^beta (x^gamma), a constant.
    let a: Matrix = monos
        .iter()
        .map(|gamma| {
            let f = Polynomial::term(gamma.clone(), one.clone());
            monos.iter().map(|beta| dunkl_monomial(&ds, beta, &f).constant_term()).collect()
        })
        .collect();
    let test = super::monomial_basis(r, n);
    let mut commute = CheckResult::new("(ad y^2)^k (P) commutes with Dunkl operators");
    let mut image = CheckResult::new("(ad y^2)^k (P) is a polynomial in Dunkl operators");
    let mut matrix = Vec::new();
    for pm in &monos {
        let p = Polynomial::term(pm.clone(), one.clone());
        let shown = p.to_text(&names);
        let on_degree_k: Vec<Q> = monos
            .iter()
            .map(|gamma| ad_power_apply(&ds, k, &p, &Polynomial::term(gamma.clone(), one.clone())).constant_term())
            .collect();
        let Some(coeffs) = linalg::solve(&a, &on_degree_k) else {
            image.fail(format!("no Dunkl polynomial matches on degree {k} for P = {shown}"));
            matrix.push(vec![Q::zero(); monos.len()]);
            continue;
        };
        for g in &test {
            let op_g = ad_power_apply(&ds, k, &p, g);
            let mut expect = Polynomial::zero(r);
            for (beta, q) in monos.iter().zip(&coeffs) {
                if !q.is_zero() {
                    expect += &dunkl_monomial(&ds, beta, g).scale(q);
                }
            }
            image.require(op_g == expect, || format!("P = {shown} on {}", g.to_text(&names)));
            for i in 0..r {
                let lhs = ds.apply_basis(i, &op_g);
                let rhs = ad_power_apply(&ds, k, &p, &ds.apply_basis(i, g));
                commute.require(lhs == rhs, || format!("P = {shown}, T{} on {}", i + 1, g.to_text(&names)));
            }
        }
        matrix.push(coeffs);
    }
    let rank = linalg::rank(&matrix);
    let mut full = CheckResult::new("induced map C^k[h] -> C^k[h*] has full rank");
    full.require(rank == monos.len(), || format!("rank {rank} < {}", monos.len()));
    let data = json!({ "k": k, "degree_bound": n, "rank": rank, "dimension": monos.len() });
    let checks = [commute, image, full].into_iter().map(|c| c.with_data(data.clone())).collect();
    Ok(LefschetzMap { k, matrix, rank, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CartanType;
    use crate::rational::q;
    use crate::report::all_passed;

    #[test]
    fn rank_one_isotypic() {
        let rs = RootSystem::new(CartanType::A, 1).unwrap();
        let gd = GroupData::new(&rs).unwrap();
        for c in 0..=3 {
            let r = isotypic_conjugation_check(&rs, &gd, &Multiplicity::constant(&rs, q(c)), 1, 6).unwrap();
            assert!(r.passed, "{r:?}");
        }
        assert!(isotypic_conjugation_check(&rs, &gd, &Multiplicity::constant(&rs, q(1)), 5, 4).is_err());
    }

    #[test]
    fn rank_one_lefschetz() {
        let rs = RootSystem::new(CartanType::A, 1).unwrap();
        let c = Multiplicity::constant(&rs, q(1));
        let m = lefschetz_check(&rs, &c, 2, 6).unwrap();
        assert!(all_passed(&m.checks));
        // (ad y^2)^2 (x^2) = 8 y^2
        assert_eq!(m.matrix, vec![vec![q(8)]]);
        let id = lefschetz_check(&rs, &c, 0, 3).unwrap();
        assert_eq!(id.matrix, vec![vec![q(1)]]);
    }

    #[test]
    fn a2_degree_one_rank() {
        let rs = RootSystem::new(CartanType::A, 2).unwrap();
        let m = lefschetz_check(&rs, &Multiplicity::constant(&rs, q(1)), 1, 4).unwrap();
        assert!(all_passed(&m.checks));
        assert_eq!(m.rank, 2);
    }
}
