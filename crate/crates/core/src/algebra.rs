//! Group actions on polynomials, divisibility by powers of linear forms, and
//! degreewise kernels of linear constraints.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::coxeter::GroupData;
use crate::error::Result;
use crate::linalg::{self, Matrix};
use crate::poly::{monomials_of_degree, Monomial, Polynomial};
use crate::rational::Q;

/// `(w.f)(x) = f(w^{-1} x)`.
pub fn act(gd: &GroupData, w: usize, f: &Polynomial) -> Result<Polynomial> {
    gd.act(w, f)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Division {
    Quotient(Polynomial),
    /// The `step`-th successive division left the nonzero `remainder`.
    Failure { step: usize, remainder: Polynomial },
}

impl Division {
    pub fn quotient(&self) -> Option<&Polynomial> {
        match self {
            Division::Quotient(q) => Some(q),
            Division::Failure { .. } => None,
        }
    }
}

/// Divides `f` by `alpha^m` through `m` successive exact divisions.
pub fn divide_by_linear_power(f: &Polynomial, alpha: &[Q], m: usize) -> Division {
    let mut cur = f.clone();
    for step in 0..m {
        let (q, r) = cur.div_rem_linear(alpha);
        if !r.is_zero() {
            return Division::Failure { step, remainder: r };
        }
        cur = q;
    }
    Division::Quotient(cur)
}

/// The `m` successive remainders of `f` in the `alpha` direction; all vanish
/// exactly when `alpha^m` divides `f`. Each remainder is linear in `f`.
pub fn directional_remainders(f: &Polynomial, alpha: &[Q], m: usize) -> Vec<Polynomial> {
    let mut cur = f.clone();
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        let (q, r) = cur.div_rem_linear(alpha);
        out.push(r);
        cur = q;
    }
    out
}

/// Matrix of a linear map given by the images of the domain basis. Rows are
/// indexed by the monomials occurring in any image.
pub fn image_matrix(images: &[Polynomial]) -> Matrix {
    let rows: BTreeSet<Monomial> = images.iter().flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
    rows.iter()
        .map(|m| images.iter().map(|p| p.coeff(m)).collect())
        .collect()
}

/// Joint kernel of the constraint matrices, all with columns indexed by the
/// degree-`d` monomials (largest first). Basis elements are primitive integer
/// polynomials, one per free monomial, in decreasing order of that monomial.
pub fn graded_nullspace(nvars: usize, d: usize, constraints: &[Matrix]) -> Vec<Polynomial> {
    let basis = monomials_of_degree(nvars, d);
    let stacked: Matrix = constraints.iter().flatten().cloned().collect();
    linalg::nullspace(&stacked, basis.len())
        .iter()
        .map(|v| Polynomial::from_coefficients(nvars, &basis, v))
        .collect()
}

/// Rank of a family of polynomials.
pub fn polynomial_rank(ps: &[Polynomial]) -> usize {
    linalg::rank(&linalg::transpose(&image_matrix(ps)))
}

/// Reduces a spanning family to a basis of its span (row echelon form, primitive rows).
pub fn span_basis(nvars: usize, ps: &[Polynomial]) -> Vec<Polynomial> {
    let monos: Vec<Monomial> = {
        let set: BTreeSet<Monomial> = ps.iter().flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
        set.into_iter().rev().collect()
    };
    let rows: Matrix = ps.iter().map(|p| p.coefficients_in(&monos)).collect();
    let (rref, _) = linalg::rref(&rows, monos.len());
    rref.iter()
        .map(|r| Polynomial::from_coefficients(nvars, &monos, &crate::rational::primitive_integer_vector(r)))
        .collect()
}

/// Whether `f` lies in the span of `basis`.
pub fn in_span(basis: &[Polynomial], f: &Polynomial) -> bool {
    if f.is_zero() {
        return true;
    }
    let mut all = basis.to_vec();
    all.push(f.clone());
    polynomial_rank(&all) == polynomial_rank(basis)
}

/// Basis of the degree-`d` invariants, from the Reynolds images of monomials.
pub fn invariant_basis(gd: &GroupData, d: usize) -> Vec<Polynomial> {
    let n = gd.rank;
    let images: Vec<Polynomial> = monomials_of_degree(n, d)
        .into_iter()
        .map(|m| {
            let f = Polynomial::term(m, Q::from_integer(1.into()));
            let mut acc = Polynomial::zero(n);
            for w in 0..gd.order() {
                acc += &gd.act(w, &f).expect("matching rank");
            }
            acc
        })
        .collect();
    span_basis(n, &images)
}

/// Degree-indexed bases of subspaces of a polynomial ring.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedBasis {
    pub nvars: usize,
    pub pieces: BTreeMap<usize, Vec<Polynomial>>,
}

impl GradedBasis {
    pub fn new(nvars: usize) -> Self {
        GradedBasis { nvars, pieces: BTreeMap::new() }
    }

    pub fn insert(&mut self, d: usize, basis: Vec<Polynomial>) {
        self.pieces.insert(d, basis);
    }

    pub fn get(&self, d: usize) -> &[Polynomial] {
        self.pieces.get(&d).map_or(&[], Vec::as_slice)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.pieces.values().map(Vec::len).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Polynomial)> {
        self.pieces.iter().flat_map(|(&d, v)| v.iter().map(move |p| (d, p)))
    }

    /// Homogeneity and linear independence of every piece.
    pub fn is_valid(&self) -> bool {
        self.pieces.iter().all(|(&d, ps)| {
            ps.iter().all(|p| !p.is_zero() && p.is_homogeneous() && p.degree() == Some(d))
                && polynomial_rank(ps) == ps.len()
        })
    }

    pub fn to_text(&self) -> BTreeMap<usize, Vec<String>> {
        self.pieces
            .iter()
            .map(|(&d, ps)| (d, ps.iter().map(ToString::to_string).collect()))
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GradedBasisRecord {
    pub degree: usize,
    pub dimension: usize,
    pub basis: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{CartanType, RootSystem};
    use crate::rational::q;

    fn p(s: &str, n: usize) -> Polynomial {
        Polynomial::parse(s, &Polynomial::default_names(n)).unwrap()
    }

    #[test]
    fn division_examples() {
        assert_eq!(divide_by_linear_power(&p("x1^3", 1), &[q(1)], 3), Division::Quotient(p("1", 1)));
        match divide_by_linear_power(&p("x1^2 + x2^2", 2), &[q(1), q(0)], 1) {
            Division::Failure { step, remainder } => {
                assert_eq!(step, 0);
                assert_eq!(remainder, p("x2^2", 2));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn a2_discriminant_square_division() {
        let rs = RootSystem::new(CartanType::A, 2).unwrap();
        let mut delta = Polynomial::one(2);
        for i in 0..3 {
            delta = &delta * &rs.root_form(i, 2);
        }
        let sq = &delta * &delta;
        let alpha = &rs.positive_roots[0];
        let quot = divide_by_linear_power(&sq, alpha, 2);
        let (d_over_a, r) = delta.div_rem_linear(alpha);
        assert!(r.is_zero());
        assert_eq!(quot, Division::Quotient(&d_over_a * &d_over_a));
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(graded_nullspace(2, 2, &[]).len(), 3);
        let rs = RootSystem::new(CartanType::A, 1).unwrap();
        let gd = GroupData::new(&rs).unwrap();
        let s = gd.reflection_of_root[0];
        let cubic = monomials_of_degree(1, 3);
        let diffs: Vec<Polynomial> = cubic
            .iter()
            .map(|m| {
                let f = Polynomial::term(m.clone(), q(1));
                &gd.act(s, &f).unwrap() - &f
            })
            .collect();
        assert!(graded_nullspace(1, 3, &[image_matrix(&diffs)]).is_empty());
        let rems: Vec<Vec<Polynomial>> = diffs.iter().map(|g| directional_remainders(g, &[q(1)], 3)).collect();
        let mats: Vec<Matrix> = (0..3)
            .map(|j| image_matrix(&rems.iter().map(|r| r[j].clone()).collect::<Vec<_>>()))
            .collect();
        assert_eq!(graded_nullspace(1, 3, &mats), vec![p("x1^3", 1)]);
    }
}
