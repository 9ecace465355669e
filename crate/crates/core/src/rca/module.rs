//! Truncated standard modules `M(tau) = C[h] (x) tau`, with `y` acting through
//! the commutation relation and `W` acting diagonally.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde_json::json;

use crate::algebra::span_basis;
use crate::coxeter::{molien_series, GroupData, Multiplicity, RootSystem};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::poly::{monomials_of_degree, Monomial, Polynomial};
use crate::rational::{binomial, fmt_q, q, qf, Q};
use crate::report::CheckResult;

#[derive(Clone, Debug)]
pub struct StandardModule {
    pub rs: RootSystem,
    pub gd: GroupData,
    pub c: Multiplicity,
    pub tau: usize,
    pub dim_tau: usize,
    pub bound: usize,
    /// Polynomials spanning a copy of `tau` inside `C[h]`.
    pub realization: Vec<Polynomial>,
    pub realization_degree: usize,
    /// `w u_a = sum_b rho[w][b][a] u_b`.
    pub rho: Vec<Matrix>,
    pub lowest_weight: Q,
    monomials: Vec<Vec<Monomial>>,
    index: Vec<HashMap<Monomial, usize>>,
    /// `y[d][j]` maps degree `d` to degree `d - 1`.
    y: Vec<Vec<Matrix>>,
}

/// A copy of `tau` in the lowest degree where it occurs exactly once.
fn realize(gd: &GroupData, tau: usize, search: usize) -> Result<(usize, Vec<Polynomial>)> {
    let molien = molien_series(gd, tau, search)?;
    let d0 = (0..=search)
        .find(|&d| molien.coeffs[d] == Q::one())
        .ok_or_else(|| Error::Invalid(format!("no multiplicity-one occurrence of irreducible {tau} up to degree {search}")))?;
    let r = gd.rank;
    let images: Vec<Polynomial> = monomials_of_degree(r, d0)
        .into_iter()
        .map(|m| {
            let f = Polynomial::term(m, Q::one());
            let mut acc = Polynomial::zero(r);
            for w in 0..gd.order() {
                let chi = gd.chi(tau, gd.inverse[w]);
                if chi != 0 {
                    acc += &gd.act(w, &f).expect("rank matches").scale(&q(chi));
                }
            }
            acc
        })
        .collect();
    let basis = span_basis(r, &images);
    if basis.len() != gd.dim(tau) {
        return Err(Error::CharacterTable(format!("isotypic component of dimension {} for irreducible {tau}", basis.len())));
    }
    Ok((d0, basis))
}

fn representation_matrices(gd: &GroupData, basis: &[Polynomial], d0: usize) -> Vec<Matrix> {
    let monos = monomials_of_degree(gd.rank, d0);
    let u: Matrix = linalg::transpose(&basis.iter().map(|p| p.coefficients_in(&monos)).collect::<Vec<_>>());
    (0..gd.order())
        .map(|w| {
            let cols: Vec<Vec<Q>> = basis
                .iter()
                .map(|p| {
                    let image = gd.act(w, p).expect("rank matches").coefficients_in(&monos);
                    linalg::solve(&u, &image).expect("isotypic component is W-stable")
                })
                .collect();
            linalg::transpose(&cols)
        })
        .collect()
}

impl StandardModule {
    pub fn new(rs: &RootSystem, gd: &GroupData, c: &Multiplicity, tau: usize, n: usize) -> Result<Self> {
        gd.check_irrep(tau)?;
        if n < 1 {
            return Err(Error::DegreeOutOfRange { degree: n, bound: 1 });
        }
        let search = 2 * rs.num_positive_roots() + 2;
        let (realization_degree, realization) = realize(gd, tau, search)?;
        let rho = representation_matrices(gd, &realization, realization_degree);
        let lowest_weight = super::lowest_weight(rs, gd, c, tau)?;
        let monomials: Vec<Vec<Monomial>> = (0..=n).map(|d| monomials_of_degree(rs.rank, d)).collect();
        let index = monomials
            .iter()
            .map(|ms| ms.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect())
            .collect();
        let mut module = StandardModule {
            rs: rs.clone(),
            gd: gd.clone(),
            c: c.clone(),
            tau,
            dim_tau: gd.dim(tau),
            bound: n,
            realization,
            realization_degree,
            rho,
            lowest_weight,
            monomials,
            index,
            y: Vec::new(),
        };
        module.build_y();
        Ok(module)
    }

    pub fn dim(&self, d: usize) -> usize {
        self.monomials[d].len() * self.dim_tau
    }

    /// Coordinates of `p (x) u` for `p` homogeneous of degree `d`, added into `out`.
    fn add_tensor(&self, d: usize, p: &Polynomial, u: &[Q], scale: &Q, out: &mut [Q]) {
        let dt = self.dim_tau;
        for (m, coef) in p.terms() {
            let mi = self.index[d][m];
            let f = coef * scale;
            for (b, ub) in u.iter().enumerate() {
                if !ub.is_zero() {
                    out[mi * dt + b] += &f * ub;
                }
            }
        }
    }

    fn rho_column(&self, w: usize, a: usize) -> Vec<Q> {
        self.rho[w].iter().map(|row| row[a].clone()).collect()
    }

    fn build_y(&mut self) {
        let r = self.rs.rank;
        let dt = self.dim_tau;
        let roots: Vec<(usize, Q)> = (0..self.rs.num_positive_roots())
            .map(|k| (k, self.c.of_root(&self.rs, k).clone()))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut y: Vec<Vec<Matrix>> = vec![Vec::new()];
        for d in 1..=self.bound {
            let mut mats = vec![linalg::zeros(self.dim(d - 1), self.dim(d)); r];
            for (mi, m) in self.monomials[d].iter().enumerate() {
                let i = m.0.iter().position(|&e| e > 0).expect("positive degree");
                let mut prime = m.clone();
                prime.0[i] -= 1;
                let pi = self.index[d - 1][&prime];
                let reflected: Vec<(usize, Q, Polynomial)> = roots
                    .iter()
                    .map(|(k, ck)| {
                        let s = self.gd.reflection_of_root[*k];
                        let img = self.gd.act(s, &Polynomial::term(prime.clone(), Q::one())).expect("rank matches");
                        (*k, ck.clone(), img)
                    })
                    .collect();
                for a in 0..dt {
                    let col = mi * dt + a;
                    for (j, mat) in mats.iter_mut().enumerate() {
                        let mut v = vec![Q::zero(); self.dim(d - 1)];
                        if d >= 2 {
                            // x_i y_j (m' (x) u_a)
                            let prev = &y[d - 1][j];
                            for (row, entry) in prev.iter().enumerate() {
                                let e = &entry[pi * dt + a];
                                if e.is_zero() {
                                    continue;
                                }
                                let (m2, b) = (row / dt, row % dt);
                                let mut up = self.monomials[d - 2][m2].clone();
                                up.0[i] += 1;
                                v[self.index[d - 1][&up] * dt + b] += e;
                            }
                        }
                        if i == j {
                            v[pi * dt + a] += Q::one();
                        }
                        for (k, ck, img) in &reflected {
                            let coef = ck * &self.rs.positive_roots[*k][j] * &self.rs.coroots[*k][i];
                            if coef.is_zero() {
                                continue;
                            }
                            let u = self.rho_column(self.gd.reflection_of_root[*k], a);
                            self.add_tensor(d - 1, img, &u, &-coef, &mut v);
                        }
                        for (row, x) in v.into_iter().enumerate() {
                            mat[row][col] = x;
                        }
                    }
                }
            }
            y.push(mats);
        }
        self.y = y;
    }

    fn check_degree(&self, d: usize) -> Result<()> {
        if d > self.bound {
            Err(Error::DegreeOutOfRange { degree: d, bound: self.bound })
        } else {
            Ok(())
        }
    }

    /// Matrix of `y_j` from degree `d` to degree `d - 1`.
    pub fn y_matrix(&self, j: usize, d: usize) -> Result<&Matrix> {
        self.check_degree(d)?;
        if d == 0 {
            return Err(Error::DegreeOutOfRange { degree: d, bound: self.bound });
        }
        Ok(&self.y[d][j])
    }

    pub fn apply_y(&self, j: usize, d: usize, v: &[Q]) -> Vec<Q> {
        if d == 0 {
            return Vec::new();
        }
        linalg::mat_vec(&self.y[d][j], v)
    }

    pub fn apply_x(&self, i: usize, d: usize, v: &[Q]) -> Vec<Q> {
        let dt = self.dim_tau;
        let mut out = vec![Q::zero(); self.dim(d + 1)];
        for (idx, e) in v.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let mut m = self.monomials[d][idx / dt].clone();
            m.0[i] += 1;
            out[self.index[d + 1][&m] * dt + idx % dt] += e;
        }
        out
    }

    pub fn apply_w(&self, w: usize, d: usize, v: &[Q]) -> Vec<Q> {
        let dt = self.dim_tau;
        let mut out = vec![Q::zero(); self.dim(d)];
        for (idx, e) in v.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let p = self.gd.act(w, &Polynomial::term(self.monomials[d][idx / dt].clone(), Q::one())).expect("rank matches");
            self.add_tensor(d, &p, &self.rho_column(w, idx % dt), e, &mut out);
        }
        out
    }

    /// `h = sum_i x_i y_i + r/2 - sum_{alpha > 0} c_alpha s_alpha`.
    pub fn apply_h(&self, d: usize, v: &[Q]) -> Vec<Q> {
        let r = self.rs.rank;
        let mut out: Vec<Q> = v.iter().map(|e| e * qf(r as i64, 2)).collect();
        if d > 0 {
            for i in 0..r {
                let t = self.apply_x(i, d - 1, &self.apply_y(i, d, v));
                add_into(&mut out, &t, &Q::one());
            }
        }
        for k in 0..self.rs.num_positive_roots() {
            let ck = self.c.of_root(&self.rs, k);
            if !ck.is_zero() {
                let t = self.apply_w(self.gd.reflection_of_root[k], d, v);
                add_into(&mut out, &t, &-ck);
            }
        }
        out
    }

    pub fn basis_vector(&self, d: usize, idx: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim(d)];
        v[idx] = Q::one();
        v
    }

    /// The components of a degree-`d` element along `u_1, ..., u_dim`.
    pub fn components(&self, d: usize, v: &[Q]) -> Vec<Polynomial> {
        let dt = self.dim_tau;
        (0..dt)
            .map(|a| {
                let coeffs: Vec<Q> = (0..self.monomials[d].len()).map(|mi| v[mi * dt + a].clone()).collect();
                Polynomial::from_coefficients(self.rs.rank, &self.monomials[d], &coeffs)
            })
            .collect()
    }

    /// Text form: the polynomial itself when `tau` is one-dimensional, otherwise
    /// `p1*u1 + p2*u2 + ...`.
    pub fn element_text(&self, d: usize, v: &[Q]) -> String {
        let names = Polynomial::default_names(self.rs.rank);
        let parts = self.components(d, v);
        if self.dim_tau == 1 {
            return parts[0].to_text(&names);
        }
        let shown: Vec<String> = parts
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(a, p)| {
                let t = p.to_text(&names);
                if p.len() > 1 { format!("({t})*u{}", a + 1) } else { format!("{t}*u{}", a + 1) }
            })
            .collect();
        if shown.is_empty() { "0".into() } else { shown.join(" + ") }
    }

    /// Relations of the algebra as matrix identities below the truncation, and the
    /// scalar action of `h` on each graded piece.
    pub fn check_relations(&self) -> Vec<CheckResult> {
        let r = self.rs.rank;
        let n = self.bound;
        let mut yx = CheckResult::new("module: [y, x] relation");
        let mut yy = CheckResult::new("module: [y, y'] = 0");
        let mut wy = CheckResult::new("module: w y w^-1 = w(y)");
        let mut h = CheckResult::new("module: h scalar on graded pieces");
        let elements = super::relation_elements(&self.rs, &self.gd);
        for d in 0..=n {
            let lambda = &self.lowest_weight + q(d as i64);
            for idx in 0..self.dim(d) {
                let v = self.basis_vector(d, idx);
                let hv = self.apply_h(d, &v);
                let expect: Vec<Q> = v.iter().map(|e| e * &lambda).collect();
                h.require(hv == expect, || format!("degree {d}: {}", self.element_text(d, &v)));
                if d < n {
                    for i in 0..r {
                        let xv = self.apply_x(i, d, &v);
                        for j in 0..r {
                            let mut lhs = self.apply_y(j, d + 1, &xv);
                            if d > 0 {
                                let t = self.apply_x(i, d - 1, &self.apply_y(j, d, &v));
                                add_into(&mut lhs, &t, &-Q::one());
                            }
                            let mut rhs = if i == j { v.clone() } else { vec![Q::zero(); v.len()] };
                            for k in 0..self.rs.num_positive_roots() {
                                let coef = self.c.of_root(&self.rs, k) * &self.rs.positive_roots[k][j] * &self.rs.coroots[k][i];
                                if !coef.is_zero() {
                                    let t = self.apply_w(self.gd.reflection_of_root[k], d, &v);
                                    add_into(&mut rhs, &t, &-coef);
                                }
                            }
                            yx.require(lhs == rhs, || format!("y{}, x{} on {}", j + 1, i + 1, self.element_text(d, &v)));
                        }
                    }
                }
                if d >= 2 {
                    for i in 0..r {
                        for j in 0..i {
                            let a = self.apply_y(i, d - 1, &self.apply_y(j, d, &v));
                            let b = self.apply_y(j, d - 1, &self.apply_y(i, d, &v));
                            yy.require(a == b, || format!("y{}, y{} on {}", i + 1, j + 1, self.element_text(d, &v)));
                        }
                    }
                }
                if d >= 1 {
                    for &w in &elements {
                        let wm = self.gd.matrix(w);
                        let winv_v = self.apply_w(self.gd.inverse[w], d, &v);
                        for j in 0..r {
                            let lhs = self.apply_w(w, d - 1, &self.apply_y(j, d, &winv_v));
                            let mut rhs = vec![Q::zero(); self.dim(d - 1)];
                            for k in 0..r {
                                if !wm[k][j].is_zero() {
                                    add_into(&mut rhs, &self.apply_y(k, d, &v), &wm[k][j]);
                                }
                            }
                            wy.require(lhs == rhs, || format!("w{w}, y{} on {}", j + 1, self.element_text(d, &v)));
                        }
                    }
                }
            }
        }
        let data = json!({ "tau": self.tau, "degree_bound": n, "lowest_weight": fmt_q(&self.lowest_weight) });
        [yx, yy, wy, h].into_iter().map(|c| c.with_data(data.clone())).collect()
    }

    /// For the trivial representation, the `y` matrices must be the matrices of the
    /// Dunkl operators on monomials.
    pub fn dunkl_cross_check(&self) -> Option<CheckResult> {
        let trivial = self.dim_tau == 1 && (0..self.gd.order()).all(|w| self.gd.chi(self.tau, w) == 1);
        if !trivial {
            return None;
        }
        let ds = crate::dunkl::DunklSystem::new(&self.rs, &self.c);
        let names = Polynomial::default_names(self.rs.rank);
        let mut res = CheckResult::new("module y-action equals Dunkl operators");
        for d in 1..=self.bound {
            for (mi, m) in self.monomials[d].iter().enumerate() {
                let f = Polynomial::term(m.clone(), Q::one());
                for j in 0..self.rs.rank {
                    let expect = ds.apply_basis(j, &f).coefficients_in(&self.monomials[d - 1]);
                    let got: Vec<Q> = self.y[d][j].iter().map(|row| row[mi].clone()).collect();
                    res.require(expect == got, || format!("y{} on {}", j + 1, f.to_text(&names)));
                }
            }
        }
        Some(res.with_data(json!({ "degree_bound": self.bound })))
    }
}

fn add_into(acc: &mut [Q], v: &[Q], scale: &Q) {
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a += b * scale;
        }
    }
}

/// Basis of the joint kernel of the `y_j` on the degree-`d` piece.
pub fn singular_vectors(module: &StandardModule, d: usize) -> Result<Vec<Vec<Q>>> {
    if d < 1 || d > module.bound {
        return Err(Error::DegreeOutOfRange { degree: d, bound: module.bound });
    }
    let stacked: Matrix = module.y[d].iter().flatten().cloned().collect();
    Ok(linalg::nullspace(&stacked, module.dim(d)))
}

#[derive(Clone, Debug)]
pub struct ModuleCharacter {
    pub lowest_weight: Q,
    /// Dimension of each graded piece `C^d[h] (x) tau`, with `h` verified to act by
    /// `lowest_weight + d` on it.
    pub dims: Vec<usize>,
    /// `dim tau * dim C^d[h]`.
    pub expected_dims: Vec<usize>,
    /// Dimension of the `W`-invariants in each graded piece.
    pub spherical: Vec<usize>,
    pub molien: Vec<Q>,
    pub checks: Vec<CheckResult>,
}

pub fn module_character(module: &StandardModule) -> ModuleCharacter {
    let r = module.rs.rank;
    let n = module.bound;
    let mut full = CheckResult::new("module character: t^lowest * dim tau * Hilbert(C[h])");
    let mut sph = CheckResult::new("spherical character: t^lowest * Molien series");
    let mut dims = Vec::new();
    let mut expected_dims = Vec::new();
    let mut spherical = Vec::new();
    let molien = molien_series(&module.gd, module.tau, n).expect("valid irreducible").coeffs;
    for d in 0..=n {
        let lambda = &module.lowest_weight + q(d as i64);
        let mut graded = true;
        for idx in 0..module.dim(d) {
            let v = module.basis_vector(d, idx);
            let expect: Vec<Q> = v.iter().map(|e| e * &lambda).collect();
            graded &= module.apply_h(d, &v) == expect;
        }
        full.require(graded, || format!("h is not {} on degree {d}", fmt_q(&lambda)));
        let expected = module.dim_tau * binomial(d + r - 1, r - 1).to_string().parse::<usize>().unwrap_or(0);
        full.require(module.dim(d) == expected, || format!("degree {d}: {} vs {expected}", module.dim(d)));
        dims.push(module.dim(d));
        expected_dims.push(expected);
        let averaged: Vec<Vec<Q>> = (0..module.dim(d))
            .map(|idx| {
                let v = module.basis_vector(d, idx);
                let mut acc = vec![Q::zero(); module.dim(d)];
                for w in 0..module.gd.order() {
                    add_into(&mut acc, &module.apply_w(w, d, &v), &Q::one());
                }
                acc
            })
            .collect();
        let inv = linalg::rank(&averaged);
        sph.require(q(inv as i64) == molien[d], || format!("degree {d}: {inv} invariants vs {}", fmt_q(&molien[d])));
        spherical.push(inv);
    }
    let data = json!({
        "tau": module.tau,
        "lowest_weight": fmt_q(&module.lowest_weight),
        "dims": dims,
        "spherical": spherical,
    });
    ModuleCharacter {
        lowest_weight: module.lowest_weight.clone(),
        dims,
        expected_dims,
        spherical,
        molien,
        checks: vec![full.with_data(data.clone()), sph.with_data(data)],
    }
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
    fn rank_one_singular_vectors() {
        let (rs, gd) = setup(CartanType::A, 1);
        let m = StandardModule::new(&rs, &gd, &Multiplicity::constant(&rs, qf(1, 2)), 0, 4).unwrap();
        let sv = singular_vectors(&m, 1).unwrap();
        assert_eq!(sv.len(), 1);
        assert_eq!(m.element_text(1, &sv[0]), "x1");
        let m = StandardModule::new(&rs, &gd, &Multiplicity::constant(&rs, qf(3, 2)), 0, 4).unwrap();
        let found: Vec<usize> = (1..=4).filter(|&d| !singular_vectors(&m, d).unwrap().is_empty()).collect();
        assert_eq!(found, vec![3]);
        let m = StandardModule::new(&rs, &gd, &Multiplicity::constant(&rs, q(1)), 0, 8).unwrap();
        assert!((1..=8).all(|d| singular_vectors(&m, d).unwrap().is_empty()));
        assert!(singular_vectors(&m, 9).is_err());
        assert!(singular_vectors(&m, 0).is_err());
    }

    #[test]
    fn a2_standard_lowest_weight() {
        let (rs, gd) = setup(CartanType::A, 2);
        let c = Multiplicity::constant(&rs, q(1));
        let m = StandardModule::new(&rs, &gd, &c, 2, 3).unwrap();
        assert_eq!(m.dim_tau, 2);
        assert_eq!(m.lowest_weight, q(1));
        assert!(all_passed(&m.check_relations()));
        let ch = module_character(&m);
        assert!(all_passed(&ch.checks), "{:?}", ch.checks);
        assert_eq!(ch.spherical, vec![0, 1, 1, 1]);
    }

    #[test]
    fn trivial_module_is_dunkl() {
        let (rs, gd) = setup(CartanType::B, 2);
        let c = Multiplicity::new(&rs, vec![q(1), q(2)]).unwrap();
        let m = StandardModule::new(&rs, &gd, &c, 0, 5).unwrap();
        assert!(m.dunkl_cross_check().unwrap().passed);
        assert_eq!(m.lowest_weight, q(1) - q(6));
        assert!(m.dunkl_cross_check().is_some());
        let sign = StandardModule::new(&rs, &gd, &c, 1, 2).unwrap();
        assert!(sign.dunkl_cross_check().is_none());
        assert!(all_passed(&sign.check_relations()));
    }
}
