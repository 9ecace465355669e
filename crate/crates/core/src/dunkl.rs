//! Dunkl operators `T_y = d_y - sum_{alpha > 0} c_alpha <alpha, y>/alpha (1 - s_alpha)`
//! and the Calogero-Moser operator `L_c = Delta - sum_{alpha > 0} (2 c_alpha/alpha) d_alpha`.

use num_traits::Zero;

use crate::coxeter::{Multiplicity, RootSystem};
use crate::fraction::RootFraction;
use crate::operator::{AlgebraContext, Operator};
use crate::poly::Polynomial;
use crate::rational::{qf, Q};

/// Dunkl operators acting directly on polynomials.
#[derive(Clone, Debug)]
pub struct DunklSystem {
    pub rs: RootSystem,
    pub c: Multiplicity,
    /// `x -> s_alpha x` substitution for each positive root.
    reflect: Vec<Vec<Polynomial>>,
    c_root: Vec<Q>,
}

impl DunklSystem {
    pub fn new(rs: &RootSystem, c: &Multiplicity) -> Self {
        let reflect = rs
            .reflections
            .iter()
            .map(|m| m.iter().map(|row| Polynomial::linear(row)).collect())
            .collect();
        let c_root = (0..rs.num_positive_roots()).map(|i| c.of_root(rs, i).clone()).collect();
        DunklSystem { rs: rs.clone(), c: c.clone(), reflect, c_root }
    }

    pub fn rank(&self) -> usize {
        self.rs.rank
    }

    /// `s_alpha f`.
    pub fn reflect(&self, i: usize, f: &Polynomial) -> Polynomial {
        f.substitute(&self.reflect[i])
    }

    /// `(f - s_alpha f)/alpha`, always a polynomial.
    pub fn divided_difference(&self, i: usize, f: &Polynomial) -> Polynomial {
        let diff = f - &self.reflect(i, f);
        let (q, r) = diff.div_rem_linear(&self.rs.positive_roots[i]);
        debug_assert!(r.is_zero());
        q
    }

    pub fn apply(&self, y: &[Q], f: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(f.nvars());
        for (i, yi) in y.iter().enumerate() {
            if !yi.is_zero() {
                out += &f.derivative(i).scale(yi);
            }
        }
        for (k, c) in self.c_root.iter().enumerate() {
            let pair = self.rs.pair(k, y);
            if c.is_zero() || pair.is_zero() {
                continue;
            }
            out -= &self.divided_difference(k, f).scale(&(c * &pair));
        }
        out
    }

    /// `T_i = T_{e_i}`.
    pub fn apply_basis(&self, i: usize, f: &Polynomial) -> Polynomial {
        let mut y = vec![Q::zero(); self.rank()];
        y[i] = Q::from_integer(1.into());
        self.apply(&y, f)
    }

    /// `y^2 = sum_ij B_ij T_i T_j` with `B` the form on `h*`.
    pub fn y_squared(&self, f: &Polynomial) -> Polynomial {
        let r = self.rank();
        let first: Vec<Polynomial> = (0..r).map(|j| self.apply_basis(j, f)).collect();
        let mut out = Polynomial::zero(f.nvars());
        for i in 0..r {
            let mut y = vec![Q::zero(); r];
            let mut any = false;
            for j in 0..r {
                y[j] = self.rs.dual_form[i][j].clone();
                any |= !y[j].is_zero();
            }
            if !any {
                continue;
            }
            // sum_j B_ij T_i T_j f = T_i (sum_j B_ij T_j f)
            let mut inner = Polynomial::zero(f.nvars());
            for (j, g) in first.iter().enumerate() {
                if !y[j].is_zero() {
                    inner += &g.scale(&y[j]);
                }
            }
            out += &self.apply_basis(i, &inner);
        }
        out
    }

    /// The Euler-type element `h = sum_i x_i T_i + r/2 - sum_{alpha > 0} c_alpha s_alpha`.
    pub fn h(&self, f: &Polynomial) -> Polynomial {
        let r = self.rank();
        let mut out = f.scale(&qf(r as i64, 2));
        for i in 0..r {
            out += &(&Polynomial::var(r, i) * &self.apply_basis(i, f));
        }
        for (k, c) in self.c_root.iter().enumerate() {
            if !c.is_zero() {
                out -= &self.reflect(k, f).scale(c);
            }
        }
        out
    }
}

/// `T_y` as an element of `D(h_reg) # W`.
pub fn dunkl(ctx: &AlgebraContext, c: &Multiplicity, y: &[Q]) -> Operator {
    let mut u = ctx.directional(y);
    for k in 0..ctx.rs.num_positive_roots() {
        let coef = c.of_root(&ctx.rs, k) * ctx.rs.pair(k, y);
        if coef.is_zero() {
            continue;
        }
        let f = ctx.multiplication(RootFraction::inverse_root(k, coef, &ctx.forms));
        let s = ctx.group_element(ctx.gd.reflection_of_root[k]);
        u = ctx.sub(&u, &ctx.sub(&f, &ctx.compose(&f, &s)));
    }
    u
}

/// `Delta = sum_ij B_ij d_i d_j`.
pub fn laplacian(ctx: &AlgebraContext) -> Operator {
    let r = ctx.rank();
    let mut p = Polynomial::zero(r);
    for i in 0..r {
        for j in 0..r {
            let mut e = vec![0u16; r];
            e[i] += 1;
            e[j] += 1;
            p.add_term(crate::poly::Monomial(e), ctx.rs.dual_form[i][j].clone());
        }
    }
    ctx.constant_coefficient(&p)
}

/// `L_c = Delta - sum_{alpha > 0} (2 c_alpha / alpha) d_alpha`, where `d_alpha` is
/// the derivative along the vector metric-dual to `alpha`.
pub fn calogero_moser(ctx: &AlgebraContext, c: &Multiplicity) -> Operator {
    let mut u = laplacian(ctx);
    for k in 0..ctx.rs.num_positive_roots() {
        let ck = c.of_root(&ctx.rs, k);
        if ck.is_zero() {
            continue;
        }
        let dir = ctx.rs.dual_vector(&ctx.rs.positive_roots[k]);
        let f = ctx.multiplication(RootFraction::inverse_root(k, ck * Q::from_integer(2.into()), &ctx.forms));
        u = ctx.sub(&u, &ctx.compose(&f, &ctx.directional(&dir)));
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{CartanType, GroupData};
    use crate::rational::q;

    fn setup(t: CartanType, r: usize, c: Q) -> (AlgebraContext, Multiplicity, DunklSystem) {
        let rs = RootSystem::new(t, r).unwrap();
        let gd = GroupData::new(&rs).unwrap();
        let c = Multiplicity::constant(&rs, c);
        let ds = DunklSystem::new(&rs, &c);
        (AlgebraContext::new(&rs, &gd), c, ds)
    }

    fn p(s: &str, n: usize) -> Polynomial {
        Polynomial::parse(s, &Polynomial::default_names(n)).unwrap()
    }

    #[test]
    fn rank_one_values() {
        let (ctx, c, ds) = setup(CartanType::A, 1, qf(1, 2));
        assert_eq!(ds.apply(&[q(1)], &p("x1", 1)), Polynomial::zero(1));
        assert_eq!(ds.apply(&[q(1)], &p("x1^2", 1)), p("2*x1", 1));
        let t = dunkl(&ctx, &c, &[q(1)]);
        assert_eq!(ctx.to_text(&t), "d1 - (1/2)/x1 + (1/2)/x1[w1]");
        assert_eq!(ctx.apply(&t, &p("x1", 1)).into_polynomial().unwrap(), Polynomial::zero(1));
    }

    #[test]
    fn rank_one_commutator() {
        let (ctx, c, _) = setup(CartanType::A, 1, q(3));
        let t = dunkl(&ctx, &c, &[q(1)]);
        let x = ctx.poly_multiplication(&p("x1", 1));
        // [T, x] = 1 - 2c s
        let expect = ctx.sub(&ctx.identity(), &ctx.scale(&ctx.group_element(1), &q(6)));
        assert_eq!(ctx.commutator(&t, &x), expect);
    }

    #[test]
    fn calogero_moser_rank_one() {
        let (ctx, c, _) = setup(CartanType::A, 1, q(1));
        let l = calogero_moser(&ctx, &c);
        assert_eq!(ctx.to_text(&l), "d1^2 - 2/x1*d1");
        assert!(ctx.apply(&l, &p("x1^3", 1)).value.is_zero());
        assert_eq!(l.weight(), Some(-2));
    }

    #[test]
    fn symbolic_dunkl_commute_a2() {
        let (ctx, c, _) = setup(CartanType::A, 2, q(1));
        let t1 = dunkl(&ctx, &c, &[q(1), q(0)]);
        let t2 = dunkl(&ctx, &c, &[q(0), q(1)]);
        assert!(ctx.commutator(&t1, &t2).is_zero());
    }

    #[test]
    fn y_squared_matches_calogero_moser_on_invariants() {
        let (ctx, c, ds) = setup(CartanType::B, 2, q(2));
        let l = calogero_moser(&ctx, &c);
        let x2 = ctx.rs.norm_squared();
        for g in [x2.clone(), x2.pow(2), &x2.pow(3) + &x2] {
            assert_eq!(ctx.apply(&l, &g).into_polynomial().unwrap(), ds.y_squared(&g));
        }
    }
}
