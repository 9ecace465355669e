use cherednik::algebra::{divide_by_linear_power, Division};
use cherednik::coxeter::kappa_scalar;
use cherednik::dunkl::dunkl;
use cherednik::linalg;
use cherednik::poly::monomials_of_degree;
use cherednik::rational::{q, qf};
use cherednik::*;
use num_traits::Zero;
use proptest::prelude::*;
use std::sync::OnceLock;

fn small_q() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| qf(n, d))
}

fn poly(nvars: usize, max_deg: usize) -> impl Strategy<Value = Polynomial> {
    let monos: Vec<Monomial> = (0..=max_deg).flat_map(|d| monomials_of_degree(nvars, d)).collect();
    let len = monos.len();
    proptest::collection::vec(small_q(), len).prop_map(move |cs| {
        Polynomial::from_terms(nvars, monos.iter().cloned().zip(cs).filter(|(_, c)| !c.is_zero()))
    })
}

struct Fixture {
    rs: RootSystem,
    gd: GroupData,
}

fn b2() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| {
        let rs = RootSystem::new(CartanType::B, 2).unwrap();
        let gd = GroupData::new(&rs).unwrap();
        Fixture { rs, gd }
    })
}

fn a2_ctx() -> &'static (AlgebraContext, Multiplicity) {
    static F: OnceLock<(AlgebraContext, Multiplicity)> = OnceLock::new();
    F.get_or_init(|| {
        let rs = RootSystem::new(CartanType::A, 2).unwrap();
        let gd = GroupData::new(&rs).unwrap();
        let c = Multiplicity::constant(&rs, q(1));
        (AlgebraContext::new(&rs, &gd), c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn action_is_a_homomorphism(f in poly(2, 3), a in 0usize..8, b in 0usize..8) {
        let gd = &b2().gd;
        let lhs = gd.act(a, &gd.act(b, &f).unwrap()).unwrap();
        let rhs = gd.act(gd.mul(a, b), &f).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reflection_conjugation(w in 0usize..8, i in 0usize..4) {
        let Fixture { gd, .. } = b2();
        let s = gd.reflection_of_root[i];
        let conj = gd.mul(gd.mul(w, s), gd.inverse[w]);
        let (j, _) = gd.root_perm[w][i];
        prop_assert_eq!(conj, gd.reflection_of_root[j]);
    }

    #[test]
    fn division_round_trip(f in poly(2, 2), i in 0usize..4, m in 0usize..3) {
        let rs = &b2().rs;
        let alpha = &rs.positive_roots[i];
        let g = &f * &Polynomial::linear(alpha).pow(m);
        prop_assert_eq!(divide_by_linear_power(&g, alpha, m), Division::Quotient(f));
    }

    #[test]
    fn nullspace_is_kernel(rows in proptest::collection::vec(proptest::collection::vec(small_q(), 5), 0..5)) {
        let ns = linalg::nullspace(&rows, 5);
        prop_assert_eq!(ns.len(), 5 - linalg::rank(&rows));
        for v in &ns {
            prop_assert!(linalg::mat_vec(&rows, v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn text_round_trip(f in poly(3, 3)) {
        let names = Polynomial::default_names(3);
        prop_assert_eq!(Polynomial::parse(&f.to_text(&names), &names).unwrap(), f);
    }

    #[test]
    fn compose_then_apply(f in poly(2, 3), y1 in proptest::collection::vec(small_q(), 2), y2 in proptest::collection::vec(small_q(), 2)) {
        let (ctx, c) = a2_ctx();
        let u = dunkl(ctx, c, &y1);
        let v = ctx.compose(&ctx.poly_multiplication(&Polynomial::var(2, 0)), &dunkl(ctx, c, &y2));
        let lhs = ctx.apply(&ctx.compose(&u, &v), &f).into_polynomial().unwrap();
        let inner = ctx.apply(&v, &f).into_polynomial().unwrap();
        let rhs = ctx.apply(&u, &inner).into_polynomial().unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn symbols_multiply(p in poly(2, 2), y in proptest::collection::vec(small_q(), 2)) {
        let (ctx, _) = a2_ctx();
        prop_assume!(!y.iter().all(Zero::is_zero) && p.degree().is_some());
        let u = ctx.compose(&ctx.poly_multiplication(&p), &ctx.directional(&y));
        let v = ctx.compose(&ctx.directional(&y), &ctx.directional(&y));
        let uv = ctx.compose(&u, &v);
        prop_assume!(uv.order() == u.order() + v.order());
        let su = ctx.principal_symbol(&u).unwrap();
        let sv = ctx.principal_symbol(&v).unwrap();
        let suv = ctx.principal_symbol(&uv).unwrap();
        prop_assert_eq!(suv.num, &su.num * &sv.num);
    }

    #[test]
    fn kappa_is_linear_in_c(a in small_q(), b in small_q(), t in small_q(), tau in 0usize..5) {
        let Fixture { rs, gd } = b2();
        let c = Multiplicity::new(rs, vec![a.clone(), b.clone()]).unwrap();
        let tc = Multiplicity::new(rs, vec![&a * &t, &b * &t]).unwrap();
        let k = kappa_scalar(rs, gd, &c, tau).unwrap();
        prop_assert_eq!(kappa_scalar(rs, gd, &tc, tau).unwrap(), k * t);
    }
}
