use num_bigint::BigInt;
use num_traits::Zero;

use super::{GroupData, Multiplicity, RootSystem};
use crate::error::Result;
use crate::linalg;
use crate::poly::Polynomial;
use crate::rational::{q, Q};
use crate::series::Series;

/// Graded multiplicity of `tau` in `C[h]`: `(1/|W|) sum_w chi(w) / det(1 - t w)`.
pub fn molien_series(gd: &GroupData, tau: usize, n: usize) -> Result<Series> {
    gd.check_irrep(tau)?;
    let r = gd.rank;
    let mut total = Series::zero(n);
    for (k, class) in gd.classes.iter().enumerate() {
        let chi = gd.character_table[tau][k];
        if chi == 0 {
            continue;
        }
        let cp = linalg::characteristic_polynomial(&gd.matrix(class[0]));
        // det(1 - t w) = t^r det(1/t - w)
        let det: Vec<Q> = (0..=r).map(|j| cp[r - j].clone()).collect();
        let inv = Series::from_poly(&det, n).inverse().expect("det(1 - t w) has constant term 1");
        total = total.add(&inv.scale(&q(chi * class.len() as i64)));
    }
    Ok(total.scale(&Q::from_integer(BigInt::from(gd.order())).recip()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiscriminantVariant {
    /// `prod over positive roots of alpha`.
    Plain,
    /// `prod alpha^{c_alpha}`; needs nonnegative integer `c`.
    CWeighted,
    /// `prod` over the roots whose orbit is flagged, i.e. where `eps(s_alpha) = -1`.
    Epsilon(Vec<bool>),
}

pub fn discriminant(rs: &RootSystem, c: &Multiplicity, variant: &DiscriminantVariant) -> Result<Polynomial> {
    let exps: Vec<usize> = match variant {
        DiscriminantVariant::Plain => vec![1; rs.num_orbits],
        DiscriminantVariant::CWeighted => c.integral()?,
        DiscriminantVariant::Epsilon(neg) => neg.iter().map(|&b| usize::from(b)).collect(),
    };
    let mut p = Polynomial::one(rs.rank);
    for i in 0..rs.num_positive_roots() {
        let e = exps[rs.orbit[i]];
        if e > 0 {
            p = &p * &rs.root_form(i, rs.rank).pow(e);
        }
    }
    Ok(p)
}

/// Scalar by which `sum over positive roots of c_alpha (1 - s_alpha)` acts on `tau`.
pub fn kappa_scalar(rs: &RootSystem, gd: &GroupData, c: &Multiplicity, tau: usize) -> Result<Q> {
    gd.check_irrep(tau)?;
    let dim = q(gd.dim(tau) as i64);
    let mut k = Q::zero();
    for (i, &s) in gd.reflection_of_root.iter().enumerate() {
        k += c.of_root(rs, i) * (q(1) - q(gd.chi(tau, s)) / &dim);
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CartanType;
    use crate::rational::qf;

    fn setup(t: CartanType, r: usize) -> (RootSystem, GroupData) {
        let rs = RootSystem::new(t, r).unwrap();
        let gd = GroupData::new(&rs).unwrap();
        (rs, gd)
    }

    fn ints(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn molien_examples() {
        let (_, a2) = setup(CartanType::A, 2);
        assert_eq!(molien_series(&a2, 0, 7).unwrap().coeffs, ints(&[1, 0, 1, 1, 1, 1, 2, 1]));
        let sign = molien_series(&a2, 1, 4).unwrap();
        assert_eq!(sign.coeffs, ints(&[0, 0, 0, 1, 0]));
        let (_, a1) = setup(CartanType::A, 1);
        assert_eq!(molien_series(&a1, 1, 4).unwrap().coeffs, ints(&[0, 1, 0, 1, 0]));
    }

    #[test]
    fn discriminants() {
        let (rs, gd) = setup(CartanType::A, 2);
        let c = Multiplicity::constant(&rs, q(1));
        let d = discriminant(&rs, &c, &DiscriminantVariant::Plain).unwrap();
        assert_eq!(d.degree(), Some(3));
        for &s in &gd.reflection_of_root {
            assert_eq!(gd.act(s, &d).unwrap(), -&d);
        }
        let (b2, _) = setup(CartanType::B, 2);
        let c = Multiplicity::constant(&b2, q(1));
        let long = discriminant(&b2, &c, &DiscriminantVariant::Epsilon(vec![true, false])).unwrap();
        assert_eq!(long.degree(), Some(2));
        assert!(discriminant(&b2, &Multiplicity::constant(&b2, qf(1, 2)), &DiscriminantVariant::CWeighted).is_err());
    }

    #[test]
    fn kappa_examples() {
        let (rs, gd) = setup(CartanType::A, 1);
        let c = Multiplicity::constant(&rs, qf(3, 7));
        assert_eq!(kappa_scalar(&rs, &gd, &c, 1).unwrap(), qf(6, 7));
        let (rs, gd) = setup(CartanType::A, 2);
        let c = Multiplicity::constant(&rs, q(1));
        assert_eq!(kappa_scalar(&rs, &gd, &c, 2).unwrap(), q(3));
        assert_eq!(kappa_scalar(&rs, &gd, &c, 0).unwrap(), q(0));
    }
}
