//! The acceptance suite: twelve groups of exact checks over fixed grids of
//! root systems and parameters. Reproducibility (criterion 12) needs the
//! command-line cache and is run there.

use num_traits::Zero;
use serde::Serialize;
use serde_json::json;

use crate::algebra::invariant_basis;
use crate::coxeter::{CartanType, GroupData, Multiplicity, RootSystem};
use crate::error::Result;
use crate::flat::{default_samples, flat_filtration_check};
use crate::poly::Polynomial;
use crate::quasi::{
    adjointness_check, bilinear_checks, closure_check, commutativity_check, cv_operator_checks, closed_form_hilbert_series,
    hilbert_compare, series_numerator, CvSetup, QuasiInvariantRing,
};
use crate::rational::{fmt_q, q, qf, Q};
use crate::rca::{
    dunkl_commutativity, isotypic_conjugation_check, lefschetz_check, module_character, singular_vectors,
    verify_relations, StandardModule,
};
use crate::report::{all_passed, CheckResult};
use crate::shift::{baker_akhiezer, double_quasiinvariance_check, eigenfunction_check, shift_operator};
use crate::symmetric::{
    column_orthogonality, coxeter_table_agreement, f_polynomial, lattice_restriction_character, multiplicity_vector,
    partitions, trace_consistency,
};

pub const CRITERIA: [&str; 12] = [
    "relations",
    "Dunkl commutativity",
    "Hilbert series of Q_c",
    "L_c preserves Q_c",
    "operators L_P on Q_c",
    "shift operator",
    "Baker-Akhiezer kernel",
    "bilinear form",
    "standard modules",
    "type A traces and characters",
    "flat filtration",
    "warm-cache reproducibility",
];

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: usize,
    pub title: String,
    pub checks: Vec<CheckResult>,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        all_passed(&self.checks)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

struct Case {
    rs: RootSystem,
    gd: GroupData,
    c: Multiplicity,
}

impl Case {
    fn new(t: CartanType, rank: usize, c: &[Q]) -> Result<Self> {
        let rs = RootSystem::new(t, rank)?;
        let gd = GroupData::new(&rs)?;
        let c = if c.len() == 1 { Multiplicity::constant(&rs, c[0].clone()) } else { Multiplicity::new(&rs, c.to_vec())? };
        Ok(Case { rs, gd, c })
    }

    fn tag(&self) -> String {
        format!("{}{} c={}", self.rs.label, self.rs.rank, self.c)
    }
}

fn tagged(tag: &str, checks: impl IntoIterator<Item = CheckResult>) -> Vec<CheckResult> {
    checks
        .into_iter()
        .map(|mut c| {
            c.name = format!("{tag}: {}", c.name);
            c
        })
        .collect()
}

fn expect(name: String, ok: bool, witness: impl FnOnce() -> String) -> CheckResult {
    let mut c = CheckResult::new(name);
    c.require(ok, witness);
    c
}

fn relation_grid() -> Result<Vec<Case>> {
    let mut out = Vec::new();
    for c in [q(0), qf(1, 2), q(1), qf(3, 2), q(2)] {
        out.push(Case::new(CartanType::A, 1, &[c])?);
    }
    for c in 0..=2 {
        out.push(Case::new(CartanType::A, 2, &[q(c)])?);
    }
    out.push(Case::new(CartanType::A, 3, &[q(1)])?);
    out.push(Case::new(CartanType::B, 2, &[q(1), q(1)])?);
    out.push(Case::new(CartanType::B, 2, &[q(1), q(2)])?);
    out.push(Case::new(CartanType::G, 2, &[q(1), q(1)])?);
    Ok(out)
}

fn hilbert_grid() -> Result<Vec<Case>> {
    let mut out = Vec::new();
    for c in 0..=3 {
        out.push(Case::new(CartanType::A, 1, &[q(c)])?);
    }
    out.push(Case::new(CartanType::A, 2, &[q(1)])?);
    out.push(Case::new(CartanType::B, 2, &[q(1), q(1)])?);
    out.push(Case::new(CartanType::B, 2, &[q(1), q(2)])?);
    Ok(out)
}

pub fn criterion_1() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for case in relation_grid()? {
        out.extend(tagged(&case.tag(), verify_relations(&case.rs, &case.gd, &case.c, 5)?));
    }
    Ok(out)
}

pub fn criterion_2() -> Result<Vec<CheckResult>> {
    Ok(relation_grid()?
        .iter()
        .flat_map(|case| tagged(&case.tag(), [dunkl_commutativity(&case.rs, &case.c, 6)]))
        .collect())
}

pub fn criterion_3() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for case in hilbert_grid()? {
        let ring = QuasiInvariantRing::new(&case.rs, &case.gd, &case.c, 10)?;
        out.extend(tagged(&case.tag(), [hilbert_compare(&ring, &case.gd)?]));
    }
    let numerators = [
        (Case::new(CartanType::A, 1, &[q(1)])?, vec![2], vec![1, 0, 0, 1]),
        (Case::new(CartanType::A, 2, &[q(1)])?, vec![2, 3], vec![1, 0, 0, 0, 2, 2, 0, 0, 0, 1]),
    ];
    for (case, degrees, expected) in numerators {
        let series = closed_form_hilbert_series(&case.rs, &case.gd, &case.c, 10)?;
        let num = series_numerator(&series, &degrees);
        let mut want: Vec<Q> = expected.iter().map(|&x| q(x)).collect();
        want.resize(num.coeffs.len(), Q::zero());
        out.push(expect(format!("{}: Hilbert numerator", case.tag()), num.coeffs == want, || {
            format!("{:?}", num.to_strings())
        }));
    }
    Ok(out)
}

pub fn criterion_4() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for case in hilbert_grid()? {
        let setup = CvSetup::new(&case.rs, &case.gd, &case.c)?;
        let ring = QuasiInvariantRing::new(&case.rs, &case.gd, &case.c, 8)?;
        out.extend(tagged(&case.tag(), [closure_check(&setup, &ring)?]));
    }
    Ok(out)
}

pub fn criterion_5() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for (t, r) in [(CartanType::A, 1), (CartanType::A, 2)] {
        let case = Case::new(t, r, &[q(1)])?;
        let setup = CvSetup::new(&case.rs, &case.gd, &case.c)?;
        let ring = QuasiInvariantRing::new(&case.rs, &case.gd, &case.c, 6)?;
        let mut ops = Vec::new();
        for d in 1..=4 {
            for p in ring.basis(d) {
                let lp = setup.cv_operator(p)?;
                out.extend(tagged(&case.tag(), [cv_operator_checks(&setup, &ring, p, &lp)?]));
                ops.push((p.clone(), lp));
            }
        }
        out.extend(tagged(&case.tag(), [commutativity_check(&setup, &ops)]));
        if r == 1 {
            let lx2 = setup.cv_operator(&Polynomial::var(1, 0).pow(2))?;
            out.push(expect(format!("{}: L_(x^2) = L_c", case.tag()), lx2 == setup.l, || setup.ctx.to_text(&lx2)));
        }
    }
    Ok(out)
}

pub fn criterion_6() -> Result<Vec<CheckResult>> {
    let mut cases = Vec::new();
    for c in 0..=3 {
        cases.push(Case::new(CartanType::A, 1, &[q(c)])?);
    }
    cases.push(Case::new(CartanType::A, 2, &[q(1)])?);
    cases.push(Case::new(CartanType::B, 2, &[q(1), q(1)])?);
    let mut out = Vec::new();
    for case in cases {
        let s = shift_operator(&case.rs, &case.gd, &case.c)?;
        out.extend(tagged(&case.tag(), s.checks()));
        if case.rs.rank == 1 && case.c.values[0] == q(1) {
            let text = s.text();
            let one = s.value_at_one();
            out.push(expect(
                format!("{}: S = x1*d1 - 1, S[1] = -1", case.tag()),
                text == "x1*d1 - 1" && one == Some(q(-1)),
                || format!("{text}, S[1] = {:?}", one.as_ref().map(fmt_q)),
            ));
        }
    }
    Ok(out)
}

pub fn criterion_7() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for (t, r) in [(CartanType::A, 1), (CartanType::A, 2)] {
        let case = Case::new(t, r, &[q(1)])?;
        let tag = case.tag();
        let s = shift_operator(&case.rs, &case.gd, &case.c)?;
        let (spec, kernel) = match baker_akhiezer(&s) {
            Ok(k) => k,
            Err(e) => {
                let mut c = CheckResult::new(format!("{tag}: Phi is polynomial"));
                c.fail(e.to_string());
                out.push(c);
                continue;
            }
        };
        out.push(CheckResult::new(format!("{tag}: Phi is polynomial")).with_data(json!({ "phi": kernel.text(r) })));
        out.extend(tagged(&tag, [double_quasiinvariance_check(&case.rs, &case.c, &kernel)?]));
        let setup = CvSetup::new(&case.rs, &case.gd, &case.c)?;
        for d in 1..=3 {
            for p in invariant_basis(&case.gd, d) {
                let lp = setup.cv_operator(&p)?;
                out.extend(tagged(&tag, [eigenfunction_check(&spec, &kernel, &p, &lp)]));
            }
        }
        if r == 1 {
            let text = kernel.text(1);
            out.push(expect(format!("{tag}: Phi = x1*k1 - 1"), text == "x1*k1 - 1", || text.clone()));
        }
    }
    Ok(out)
}

pub fn criterion_8() -> Result<Vec<CheckResult>> {
    let mut cases = Vec::new();
    for c in 0..=2 {
        cases.push(Case::new(CartanType::A, 1, &[q(c)])?);
    }
    cases.push(Case::new(CartanType::A, 2, &[q(1)])?);
    let mut out = Vec::new();
    for case in cases {
        let setup = CvSetup::new(&case.rs, &case.gd, &case.c)?;
        let ring = QuasiInvariantRing::new(&case.rs, &case.gd, &case.c, 6)?;
        out.extend(tagged(&case.tag(), bilinear_checks(&setup, &ring, 6)?));
        out.extend(tagged(&case.tag(), [adjointness_check(&setup, &ring, 3, 6)?]));
        if case.rs.rank == 1 && case.c.values[0] == q(1) {
            let one = Polynomial::one(1);
            let x2 = Polynomial::var(1, 0).pow(2);
            let a = setup.bilinear_form(&one, &one)?;
            let b = setup.bilinear_form(&x2, &x2)?;
            out.push(expect(format!("{}: (1,1) = 1, (x^2,x^2) = -2", case.tag()), a == q(1) && b == q(-2), || {
                format!("{}, {}", fmt_q(&a), fmt_q(&b))
            }));
        }
    }
    Ok(out)
}

pub fn criterion_9() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let chars = [
        Case::new(CartanType::A, 1, &[q(1)])?,
        Case::new(CartanType::A, 2, &[q(1)])?,
        Case::new(CartanType::B, 2, &[q(1), q(1)])?,
    ];
    for case in &chars {
        for tau in 0..case.gd.num_classes() {
            let m = StandardModule::new(&case.rs, &case.gd, &case.c, tau, 8)?;
            out.extend(tagged(&format!("{} tau={tau}", case.tag()), module_character(&m).checks));
        }
    }
    for (num, den) in [(1, 2), (3, 2), (5, 2), (1, 1), (2, 1), (3, 1)] {
        let case = Case::new(CartanType::A, 1, &[qf(num, den)])?;
        let taus: Vec<usize> = if den == 2 { vec![0] } else { (0..case.gd.num_classes()).collect() };
        for tau in taus {
            let m = StandardModule::new(&case.rs, &case.gd, &case.c, tau, 8)?;
            let mut found = Vec::new();
            for d in 1..=8 {
                if !singular_vectors(&m, d)?.is_empty() {
                    found.push(d);
                }
            }
            let want: Vec<usize> = if den == 2 { vec![num as usize] } else { Vec::new() };
            out.push(expect(
                format!("{} tau={tau}: singular vector degrees {want:?}", case.tag()),
                found == want,
                || format!("found {found:?}"),
            ));
        }
    }
    let mut iso = Vec::new();
    for c in [q(0), qf(1, 2), q(1), qf(3, 2), q(2), qf(5, 2), q(3)] {
        iso.push(Case::new(CartanType::A, 1, &[c])?);
    }
    iso.push(Case::new(CartanType::B, 2, &[q(1), q(1)])?);
    iso.push(Case::new(CartanType::B, 2, &[q(1), q(2)])?);
    for case in &iso {
        for eps in case.gd.linear_characters() {
            let check = isotypic_conjugation_check(&case.rs, &case.gd, &case.c, eps, 6)?;
            out.extend(tagged(&format!("{} eps={eps}", case.tag()), [check]));
        }
    }
    for (t, r) in [(CartanType::A, 1), (CartanType::A, 2)] {
        let case = Case::new(t, r, &[q(1)])?;
        for k in 1..=3 {
            let m = lefschetz_check(&case.rs, &case.c, k, k + 2)?;
            out.extend(tagged(&format!("{} k={k}", case.tag()), m.checks));
        }
    }
    Ok(out)
}

pub fn criterion_10() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for n in 1..=6 {
        out.push(column_orthogonality(n));
        for tau in partitions(n) {
            out.extend(f_polynomial(&tau).checks);
        }
    }
    for n in 2..=5 {
        out.push(coxeter_table_agreement(n)?);
    }
    for n in 1..=5 {
        for tau in partitions(n) {
            out.push(trace_consistency(&tau));
        }
    }
    let m = multiplicity_vector(2, &qf(3, 2), 3, 1000)?;
    let values: Vec<&str> = m.entries.iter().map(|e| e.value.as_str()).collect();
    let lattice = lattice_restriction_character(2, 3)?;
    out.push(expect(
        "n=2 c=3/2 dim V=3: multiplicities (2,1) = decomposition of h_Z/3h_Z".into(),
        values == ["2", "1"] && m.completeness && lattice.decomposition == ["2", "1"],
        || format!("multiplicities {values:?}, lattice {:?}", lattice.decomposition),
    ));
    for n in 1..=4 {
        for r in 1..=4 {
            let l = lattice_restriction_character(n, r)?;
            let mut c = CheckResult::new(format!("h_Z/{r}h_Z for S_{n}: character = (nc)^cycl / r at c = r/n"));
            c.require(l.proportional, || format!("character {:?} vs {:?}", l.character, l.expected));
            c.require(l.decomposition_integral, || format!("decomposition {:?}", l.decomposition));
            out.push(c.with_data(json!({
                "character": l.character,
                "expected": l.expected,
                "decomposition": l.decomposition,
                "gcd(n, r) = 1": num_integer::gcd(n, r) == 1,
            })));
        }
    }
    Ok(out)
}

pub fn criterion_11() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for (case, sample_degree) in [
        (Case::new(CartanType::A, 1, &[q(1)])?, 4),
        (Case::new(CartanType::A, 1, &[q(2)])?, 4),
        (Case::new(CartanType::A, 2, &[q(1)])?, 3),
        (Case::new(CartanType::B, 2, &[q(1), q(1)])?, 4),
    ] {
        let setup = CvSetup::new(&case.rs, &case.gd, &case.c)?;
        let ring = QuasiInvariantRing::new(&case.rs, &case.gd, &case.c, 6)?;
        let samples = default_samples(&setup, &ring, sample_degree)?;
        let report = flat_filtration_check(&setup, &ring, &samples)?;
        out.extend(tagged(&case.tag(), report.checks));
    }
    Ok(out)
}

/// Runs criterion `id` in `1..=11`.
pub fn run_criterion(id: usize) -> Result<CriterionReport> {
    let checks = match id {
        1 => criterion_1()?,
        2 => criterion_2()?,
        3 => criterion_3()?,
        4 => criterion_4()?,
        5 => criterion_5()?,
        6 => criterion_6()?,
        7 => criterion_7()?,
        8 => criterion_8()?,
        9 => criterion_9()?,
        10 => criterion_10()?,
        11 => criterion_11()?,
        _ => return Err(crate::error::Error::Invalid(format!("no in-process criterion {id}"))),
    };
    Ok(CriterionReport { id, title: CRITERIA[id - 1].to_string(), checks })
}
