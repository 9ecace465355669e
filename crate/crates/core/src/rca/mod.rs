//! The rational Cherednik algebra through its Dunkl representation: defining
//! relations, the sl2 triple, standard modules, and operator identities.

mod checks;
mod module;

pub use checks::{isotypic_conjugation_check, lefschetz_check, LefschetzMap};
pub use module::{module_character, singular_vectors, ModuleCharacter, StandardModule};

use num_traits::{One, Zero};
use serde_json::json;

use crate::coxeter::{kappa_scalar, GroupData, Multiplicity, RootSystem};
use crate::dunkl::DunklSystem;
use crate::error::{Error, Result};
use crate::poly::{monomials_of_degree, Polynomial};
use crate::rational::{fmt_q, q, qf, Q};
use crate::report::CheckResult;

/// All monomials of degree at most `n`, as polynomials.
pub fn monomial_basis(nvars: usize, n: usize) -> Vec<Polynomial> {
    (0..=n)
        .flat_map(|d| monomials_of_degree(nvars, d))
        .map(|m| Polynomial::term(m, Q::one()))
        .collect()
}

/// Group elements used for relation checks: all of `W` when small, otherwise the
/// simple reflections (which generate).
fn relation_elements(rs: &RootSystem, gd: &GroupData) -> Vec<usize> {
    if gd.order() <= 200 {
        (0..gd.order()).collect()
    } else {
        gd.reflection_of_root[..rs.rank].to_vec()
    }
}

/// Checks the defining relations, `[h, x] = x`, `[h, y] = -y` and the symmetric
/// form of `h`, as operators on polynomials of degree at most `n`.
pub fn verify_relations(rs: &RootSystem, gd: &GroupData, c: &Multiplicity, n: usize) -> Result<Vec<CheckResult>> {
    if n < 2 {
        return Err(Error::Invalid(format!("degree bound {n} must be at least 2")));
    }
    let r = rs.rank;
    let ds = DunklSystem::new(rs, c);
    let basis = monomial_basis(r, n);
    let names = Polynomial::default_names(r);
    let xs: Vec<Polynomial> = (0..r).map(|i| Polynomial::var(r, i)).collect();
    let elements = relation_elements(rs, gd);

    let mut wx = CheckResult::new("w x w^-1 = w(x)");
    let mut wy = CheckResult::new("w y w^-1 = w(y)");
    let mut yy = CheckResult::new("[y, y'] = 0");
    let mut yx = CheckResult::new("[y, x] = <y,x> - sum c <y,alpha><alpha^vee,x> s_alpha");
    let mut hx = CheckResult::new("h x = x (h + 1)");
    let mut hy = CheckResult::new("h y = y (h - 1)");
    let mut hsym = CheckResult::new("h = (1/2) sum (x_i y_i + y_i x_i)");

    for f in &basis {
        let tf: Vec<Polynomial> = (0..r).map(|j| ds.apply_basis(j, f)).collect();
        let hf = ds.h(f);
        let shown = f.to_text(&names);
        for &w in &elements {
            let winv = gd.inverse[w];
            let f_winv = gd.act(winv, f)?;
            let wm = gd.matrix(w);
            for i in 0..r {
                let lhs = gd.act(w, &(&xs[i] * &f_winv))?;
                let rhs = &gd.act(w, &xs[i])? * f;
                wx.require(lhs == rhs, || format!("w{w}, x{} on {shown}", i + 1));
                let lhs = gd.act(w, &ds.apply_basis(i, &f_winv))?;
                let wy_vec: Vec<Q> = (0..r).map(|k| wm[k][i].clone()).collect();
                let rhs = ds.apply(&wy_vec, f);
                wy.require(lhs == rhs, || format!("w{w}, y{} on {shown}", i + 1));
            }
        }
        for i in 0..r {
            for j in 0..i {
                let a = ds.apply_basis(i, &tf[j]);
                let b = ds.apply_basis(j, &tf[i]);
                yy.require(a == b, || format!("y{}, y{} on {shown}", i + 1, j + 1));
            }
        }
        for i in 0..r {
            let xf = &xs[i] * f;
            for j in 0..r {
                let lhs = &ds.apply_basis(j, &xf) - &(&xs[i] * &tf[j]);
                let mut rhs = if i == j { f.clone() } else { Polynomial::zero(r) };
                for k in 0..rs.num_positive_roots() {
                    let coef = c.of_root(rs, k) * &rs.positive_roots[k][j] * &rs.coroots[k][i];
                    if !coef.is_zero() {
                        rhs -= &ds.reflect(k, f).scale(&coef);
                    }
                }
                yx.require(lhs == rhs, || format!("y{}, x{} on {shown}", j + 1, i + 1));
            }
            let lhs = ds.h(&xf);
            let rhs = &xs[i] * &(&hf + f);
            hx.require(lhs == rhs, || format!("x{} on {shown}", i + 1));
            let lhs = ds.h(&tf[i]);
            let rhs = &ds.apply_basis(i, &hf) - &tf[i];
            hy.require(lhs == rhs, || format!("y{} on {shown}", i + 1));
        }
        let mut sym = Polynomial::zero(r);
        for i in 0..r {
            sym += &(&xs[i] * &tf[i]);
            sym += &ds.apply_basis(i, &(&xs[i] * f));
        }
        let sym = sym.scale(&qf(1, 2));
        hsym.require(sym == hf, || format!("on {shown}"));
    }
    let data = json!({ "degree_bound": n, "polynomials": basis.len(), "group_elements": elements.len() });
    Ok([wx, wy, yy, yx, hx, hy, hsym].into_iter().map(|r| r.with_data(data.clone())).collect())
}

/// `[T_y, T_y'] = 0` on polynomials of degree at most `n`.
pub fn dunkl_commutativity(rs: &RootSystem, c: &Multiplicity, n: usize) -> CheckResult {
    let r = rs.rank;
    let ds = DunklSystem::new(rs, c);
    let names = Polynomial::default_names(r);
    let mut res = CheckResult::new("Dunkl operators commute");
    let basis = monomial_basis(r, n);
    for f in &basis {
        let tf: Vec<Polynomial> = (0..r).map(|j| ds.apply_basis(j, f)).collect();
        for i in 0..r {
            for j in 0..i {
                let a = ds.apply_basis(i, &tf[j]);
                let b = ds.apply_basis(j, &tf[i]);
                res.require(a == b, || format!("T{} T{} on {}", i + 1, j + 1, f.to_text(&names)));
            }
        }
    }
    res.with_data(json!({ "degree_bound": n, "polynomials": basis.len() }))
}

/// The sl2 triple `E = x^2`, `H = h`, `F = y^2` in the Dunkl representation,
/// with the measured normalization `[E, F] = gamma H + beta`.
#[derive(Clone, Debug)]
pub struct Sl2Data {
    pub e: Polynomial,
    pub gamma: Q,
    pub beta: Q,
    /// Eigenvalue of `h` on constants.
    pub lowest_weight: Q,
    pub checks: Vec<CheckResult>,
}

pub fn lowest_weight(rs: &RootSystem, gd: &GroupData, c: &Multiplicity, tau: usize) -> Result<Q> {
    Ok(qf(rs.rank as i64, 2) - c.total(rs) + kappa_scalar(rs, gd, c, tau)?)
}

pub fn sl2_data(rs: &RootSystem, c: &Multiplicity, n: usize) -> Sl2Data {
    let r = rs.rank;
    let ds = DunklSystem::new(rs, c);
    let names = Polynomial::default_names(r);
    let e = rs.norm_squared();
    let bracket = |f: &Polynomial| &(&e * &ds.y_squared(f)) - &ds.y_squared(&(&e * f));
    let lambda0 = qf(r as i64, 2) - c.total(rs);
    // [E,F] acts on degree d by gamma (lambda0 + d) + beta.
    let one = Polynomial::one(r);
    let x1 = Polynomial::var(r, 0);
    let a0 = bracket(&one).constant_term();
    let a1 = bracket(&x1).coeff(&crate::poly::Monomial::var(r, 0));
    let gamma = &a1 - &a0;
    let beta = &a0 - &gamma * &lambda0;

    let mut he = CheckResult::new("[h, x^2] = 2 x^2");
    let mut hf = CheckResult::new("[h, y^2] = -2 y^2");
    let mut ef = CheckResult::new("[x^2, y^2] = gamma h + beta");
    for f in &monomial_basis(r, n) {
        let shown = f.to_text(&names);
        let ef_f = &e * f;
        let lhs = &ds.h(&ef_f) - &(&e * &ds.h(f));
        he.require(lhs == ef_f.scale(&q(2)), || format!("on {shown}"));
        let yf = ds.y_squared(f);
        let lhs = &ds.h(&yf) - &ds.y_squared(&ds.h(f));
        hf.require(lhs == yf.scale(&q(-2)), || format!("on {shown}"));
        let rhs = &ds.h(f).scale(&gamma) + &f.scale(&beta);
        ef.require(bracket(f) == rhs, || format!("on {shown}"));
    }
    let data = json!({ "degree_bound": n, "gamma": fmt_q(&gamma), "beta": fmt_q(&beta) });
    let checks = [he, hf, ef].into_iter().map(|c| c.with_data(data.clone())).collect();
    Sl2Data { e, gamma, beta, lowest_weight: lambda0, checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CartanType;
    use crate::report::all_passed;

    fn setup(t: CartanType, r: usize) -> (RootSystem, GroupData) {
        let rs = RootSystem::new(t, r).unwrap();
        let gd = GroupData::new(&rs).unwrap();
        (rs, gd)
    }

    #[test]
    fn relations_rank_one() {
        let (rs, gd) = setup(CartanType::A, 1);
        for c in [q(0), qf(1, 2), q(1)] {
            let res = verify_relations(&rs, &gd, &Multiplicity::constant(&rs, c), 5).unwrap();
            assert!(all_passed(&res), "{res:?}");
        }
        assert!(verify_relations(&rs, &gd, &Multiplicity::constant(&rs, q(1)), 1).is_err());
    }

    #[test]
    fn relations_b2_unequal() {
        let (rs, gd) = setup(CartanType::B, 2);
        let c = Multiplicity::new(&rs, vec![q(1), q(2)]).unwrap();
        let res = verify_relations(&rs, &gd, &c, 4).unwrap();
        assert!(all_passed(&res), "{res:?}");
    }

    #[test]
    fn sl2_normalization() {
        let (rs, _) = setup(CartanType::A, 1);
        let s = sl2_data(&rs, &Multiplicity::zero(&rs), 6);
        assert!(all_passed(&s.checks));
        assert_eq!((s.gamma.clone(), s.beta.clone()), (q(-4), q(0)));
        let (rs, _) = setup(CartanType::A, 2);
        let s = sl2_data(&rs, &Multiplicity::constant(&rs, q(1)), 5);
        assert!(all_passed(&s.checks), "{:?}", s.checks);
        assert_eq!((s.gamma, s.beta), (q(-4), q(0)));
    }
}
