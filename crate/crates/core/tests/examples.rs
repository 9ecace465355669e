use cherednik::coxeter::{discriminant, kappa_scalar, molien_series, DiscriminantVariant};
use cherednik::quasi::{qc_basis, CvSetup, QuasiInvariantRing};
use cherednik::rational::{q, qf};
use cherednik::rca::{lowest_weight, singular_vectors, StandardModule};
use cherednik::shift::{baker_akhiezer, kernel_of_operator, shift_operator};
use cherednik::symmetric::{
    character, lattice_restriction_character, multiplicity_vector, parse_class, s_set_constraints, trace_of_class,
    trace_of_idempotent, YoungDiagram,
};
use cherednik::*;

fn setup(t: CartanType, r: usize) -> (RootSystem, GroupData) {
    let rs = RootSystem::new(t, r).unwrap();
    let gd = GroupData::new(&rs).unwrap();
    (rs, gd)
}

fn xk(s: &str) -> Polynomial {
    Polynomial::parse(s, &Polynomial::xk_names(1)).unwrap()
}

#[test]
fn root_system_sizes() {
    for (t, r, roots, order, classes) in [
        (CartanType::A, 1, 1, 2, 2),
        (CartanType::A, 2, 3, 6, 3),
        (CartanType::B, 2, 4, 8, 5),
        (CartanType::G, 2, 6, 12, 6),
        (CartanType::A, 3, 6, 24, 5),
        (CartanType::D, 4, 12, 192, 13),
    ] {
        let (rs, gd) = setup(t, r);
        assert_eq!(rs.num_positive_roots(), roots);
        assert_eq!(gd.order(), order);
        assert_eq!(gd.num_classes(), classes);
    }
    let (_, gd) = setup(CartanType::B, 2);
    let mut dims: Vec<usize> = (0..5).map(|t| gd.dim(t)).collect();
    dims.sort();
    assert_eq!(dims, vec![1, 1, 1, 1, 2]);
}

#[test]
fn invariant_theory() {
    let (rs, gd) = setup(CartanType::A, 2);
    let triv: Vec<Q> = [1, 0, 1, 1, 1, 1, 2].iter().map(|&x| q(x)).collect();
    assert_eq!(molien_series(&gd, 0, 6).unwrap().coeffs, triv);
    let sign = molien_series(&gd, 1, 4).unwrap().coeffs;
    assert_eq!(sign[..4], [q(0), q(0), q(0), q(1)]);
    let c = Multiplicity::constant(&rs, q(1));
    let delta = discriminant(&rs, &c, &DiscriminantVariant::Plain).unwrap();
    for &s in &gd.reflection_of_root {
        assert_eq!(gd.act(s, &delta).unwrap(), -&delta);
    }
    assert_eq!(kappa_scalar(&rs, &gd, &c, 2).unwrap(), q(3));
    assert_eq!(lowest_weight(&rs, &gd, &c, 2).unwrap(), q(1));
}

#[test]
fn quasi_invariant_dimensions() {
    let (rs, gd) = setup(CartanType::A, 1);
    let ring = QuasiInvariantRing::new(&rs, &gd, &Multiplicity::constant(&rs, q(1)), 7).unwrap();
    // Q_1 = C[x^2] + x^3 C[x^2]
    assert_eq!(ring.dims(), vec![1, 0, 1, 1, 1, 1, 1, 1]);
    let (rs, gd) = setup(CartanType::B, 2);
    let zero = Multiplicity::zero(&rs);
    assert_eq!(qc_basis(&rs, &gd, &zero, 3).unwrap().len(), 4);
}

#[test]
fn rank_one_kernel_by_hand() {
    let (rs, gd) = setup(CartanType::A, 1);
    let c = Multiplicity::constant(&rs, q(1));
    let s = shift_operator(&rs, &gd, &c).unwrap();
    let (spec, kernel) = baker_akhiezer(&s).unwrap();
    // (x d - 1) e^{kx} = (kx - 1) e^{kx}
    assert_eq!(kernel.phi, xk("x1*k1 - 1"));
    let setup = CvSetup::new(&rs, &gd, &c).unwrap();
    let x2 = Polynomial::var(1, 0).pow(2);
    // F = (kx-1)e^{kx}: F'' - (2/x) F' = k^2 F
    let l = setup.cv_operator(&x2).unwrap();
    assert_eq!(kernel_of_operator(&spec, &l, &kernel).unwrap(), xk("k1^3*x1 - k1^2"));
    let mult = setup.ctx.poly_multiplication(&x2);
    assert_eq!(kernel_of_operator(&spec, &mult, &kernel).unwrap(), xk("k1*x1^3 - x1^2"));
    let trivial = shift_operator(&rs, &gd, &Multiplicity::zero(&rs)).unwrap();
    assert_eq!(baker_akhiezer(&trivial).unwrap().1.phi, Polynomial::one(2));
}

#[test]
fn rank_one_singular_vectors() {
    let (rs, gd) = setup(CartanType::A, 1);
    // T(x^k) = (k - c(1 - (-1)^k)) x^{k-1}
    let m = StandardModule::new(&rs, &gd, &Multiplicity::constant(&rs, qf(3, 2)), 0, 5).unwrap();
    let v = singular_vectors(&m, 3).unwrap();
    assert_eq!(v.len(), 1);
    assert_eq!(m.element_text(3, &v[0]), "x1^3");
    assert!(singular_vectors(&m, 1).unwrap().is_empty());
}

#[test]
fn type_a_values() {
    let yd = |p: &[usize]| YoungDiagram::new(p.to_vec()).unwrap();
    for mu in cherednik::symmetric::partitions(5) {
        assert_eq!(character(&yd(&[5]), &mu).unwrap(), 1);
        let sign = if (5 - mu.len()) % 2 == 0 { 1 } else { -1 };
        assert_eq!(character(&yd(&[1, 1, 1, 1, 1]), &mu).unwrap(), sign);
    }
    let t = trace_of_class(&parse_class(3, "(123)").unwrap());
    assert_eq!(t.at(&q(2)).unwrap(), qf(1, 36));
    assert_eq!(t.text_at(&q(1)).unwrap(), "(1/9)·Tr(1)");
    // Tr((1+s)/2) = (1 + 1/(2c))/2
    let c = qf(5, 7);
    let e = trace_of_idempotent(&yd(&[2])).at(&c).unwrap();
    assert_eq!(e, (q(1) + (q(2) * &c).recip()) / q(2));
    let m = multiplicity_vector(2, &qf(3, 2), 3, 100).unwrap();
    assert_eq!(m.entries.iter().map(|e| e.value.clone()).collect::<Vec<_>>(), ["2", "1"]);
    assert!(!s_set_constraints(3, &qf(1, 2)).shape);
    let l = lattice_restriction_character(3, 2).unwrap();
    assert_eq!(l.expected, ["4", "2", "1"]);
}
