//! The filtration of differential operators by `weight + order`, and its
//! degree-zero part on quasi-invariants.

use serde::Serialize;
use serde_json::json;

use crate::error::Result;
use crate::fraction::RootFraction;
use crate::operator::Operator;
use crate::poly::Polynomial;
use crate::quasi::{quasi_invariance_defect, CvSetup, QuasiInvariantRing};
use crate::report::CheckResult;

#[derive(Clone, Debug)]
pub struct FlatSample {
    pub id: String,
    pub operator: Operator,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlatEntry {
    pub id: String,
    pub flat_degree: Option<i64>,
    pub weight: Option<i64>,
    pub order: usize,
    pub preserves: bool,
    /// `flat_degree([u, v])` for each degree-zero sample `v`.
    pub brackets: Vec<(String, Option<i64>)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlatFiltrationReport {
    pub entries: Vec<FlatEntry>,
    pub checks: Vec<CheckResult>,
}

/// Identity, `L_c`, the Euler operator, `L_P` and multiplication by `P` for
/// `P` in the computed `Q_c` basis of degree `1..=max_degree`.
pub fn default_samples(setup: &CvSetup, ring: &QuasiInvariantRing, max_degree: usize) -> Result<Vec<FlatSample>> {
    let ctx = &setup.ctx;
    let r = ctx.rank();
    let names = ctx.names();
    let mut euler = ctx.zero();
    for i in 0..r {
        euler = ctx.add(&euler, &ctx.compose(&ctx.poly_multiplication(&Polynomial::var(r, i)), &ctx.partial(i)));
    }
    let mut out = vec![
        FlatSample { id: "1".into(), operator: ctx.identity() },
        FlatSample { id: "L_c".into(), operator: setup.l.clone() },
        FlatSample { id: "E".into(), operator: euler },
    ];
    for d in 1..=max_degree.min(ring.bound) {
        for p in ring.basis(d) {
            let text = p.to_text(&names);
            out.push(FlatSample { id: format!("L[{text}]"), operator: setup.cv_operator(p)? });
            out.push(FlatSample { id: format!("mult[{text}]"), operator: ctx.poly_multiplication(p) });
        }
    }
    Ok(out)
}

fn preserves(setup: &CvSetup, ring: &QuasiInvariantRing, u: &Operator) -> Result<bool> {
    for (_, f) in ring.graded.iter() {
        let Some(g) = setup.ctx.apply(u, f).into_polynomial() else { return Ok(false) };
        if quasi_invariance_defect(setup.rs(), &setup.gd, &setup.c, &g)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of brackets with `u` needed to reach zero, if the flat degree drops
/// strictly at every step and zero is reached within `limit` steps.
pub fn ad_nilpotency_steps(setup: &CvSetup, u: &Operator, v: &Operator, limit: usize) -> std::result::Result<usize, String> {
    let mut cur = v.clone();
    let mut deg = cur.flat_degree();
    for step in 0..=limit {
        if cur.is_zero() {
            return Ok(step);
        }
        if step == limit {
            break;
        }
        let next = setup.ctx.commutator(u, &cur);
        let nd = next.flat_degree();
        if !next.is_zero() && !matches!((nd, deg), (Some(a), Some(b)) if a < b) {
            return Err(format!("step {}: flat degree {nd:?} after {deg:?}", step + 1));
        }
        cur = next;
        deg = nd;
    }
    Err(format!("nonzero after {limit} steps"))
}

pub fn flat_filtration_check(setup: &CvSetup, ring: &QuasiInvariantRing, samples: &[FlatSample]) -> Result<FlatFiltrationReport> {
    let ctx = &setup.ctx;
    let mut entries = Vec::with_capacity(samples.len());
    for s in samples {
        let u = &s.operator;
        entries.push(FlatEntry {
            id: s.id.clone(),
            flat_degree: u.flat_degree(),
            weight: u.weight(),
            order: u.order(),
            preserves: u.is_pure_differential() && preserves(setup, ring, u)?,
            brackets: Vec::new(),
        });
    }
    let degree_zero: Vec<usize> = (0..samples.len())
        .filter(|&i| entries[i].preserves && entries[i].flat_degree.is_some_and(|d| d <= 0))
        .collect();

    let mut nonneg = CheckResult::new("weight + order >= 0 on Q_c-preserving samples");
    let mut symbols = CheckResult::new("principal symbols of Q_c-preserving samples are polynomial");
    for e in entries.iter().filter(|e| e.preserves) {
        if let Some(w) = e.weight {
            let wo = w + e.order as i64;
            nonneg.require(wo >= 0, || format!("{}: weight + order = {wo}", e.id));
            nonneg.require(e.flat_degree == Some(wo), || format!("{}: flat degree {:?} != {wo}", e.id, e.flat_degree));
        }
    }
    for (s, e) in samples.iter().zip(&entries).filter(|(_, e)| e.preserves) {
        let sym = ctx.principal_symbol(&s.operator);
        symbols.require(sym.as_ref().is_some_and(RootFraction::is_polynomial), || format!("{}: symbol not polynomial", e.id));
    }

    let mut commute = CheckResult::new("flat-degree-0 samples commute pairwise");
    for (a, &i) in degree_zero.iter().enumerate() {
        for &j in &degree_zero[a + 1..] {
            let ok = ctx.commutator(&samples[i].operator, &samples[j].operator).is_zero();
            commute.require(ok, || format!("[{}, {}] != 0", samples[i].id, samples[j].id));
        }
    }

    let mut nilpotent = CheckResult::new("ad-nilpotency within flat_degree + 1 steps");
    let mut steps_table = Vec::new();
    for &i in &degree_zero {
        for (j, e) in entries.iter().enumerate().filter(|(_, e)| e.preserves) {
            let Some(d) = e.flat_degree else { continue };
            let limit = (d.max(0) + 1) as usize;
            match ad_nilpotency_steps(setup, &samples[i].operator, &samples[j].operator, limit) {
                Ok(k) => steps_table.push(json!({ "u": samples[i].id, "v": e.id, "steps": k, "bound": limit })),
                Err(w) => nilpotent.fail(format!("ad({}) on {}: {w}", samples[i].id, e.id)),
            }
        }
    }
    let nilpotent = nilpotent.with_data(json!(steps_table));

    let mut subadditive = CheckResult::new("flat degree subadditive under composition");
    for (i, a) in samples.iter().enumerate() {
        for (j, b) in samples.iter().enumerate() {
            let (Some(da), Some(db)) = (entries[i].flat_degree, entries[j].flat_degree) else { continue };
            let comp = ctx.compose(&a.operator, &b.operator);
            if let Some(dc) = comp.flat_degree() {
                subadditive.require(dc <= da + db, || format!("{} o {}: {dc} > {da} + {db}", a.id, b.id));
            }
        }
    }

    for (i, e) in entries.iter_mut().enumerate() {
        e.brackets = degree_zero
            .iter()
            .map(|&j| (samples[j].id.clone(), ctx.commutator(&samples[i].operator, &samples[j].operator).flat_degree()))
            .collect();
    }
    Ok(FlatFiltrationReport { entries, checks: vec![nonneg, symbols, commute, nilpotent, subadditive] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{CartanType, GroupData, Multiplicity, RootSystem};
    use crate::rational::q;
    use crate::report::all_passed;

    #[test]
    fn rank_one() {
        let rs = RootSystem::new(CartanType::A, 1).unwrap();
        let gd = GroupData::new(&rs).unwrap();
        let c = Multiplicity::constant(&rs, q(1));
        let setup = CvSetup::new(&rs, &gd, &c).unwrap();
        let ring = QuasiInvariantRing::new(&rs, &gd, &c, 6).unwrap();
        let samples = default_samples(&setup, &ring, 3).unwrap();
        let report = flat_filtration_check(&setup, &ring, &samples).unwrap();
        assert!(all_passed(&report.checks), "{:?}", report.checks);
        let by_id = |id: &str| report.entries.iter().find(|e| e.id == id).unwrap();
        assert_eq!(by_id("L_c").flat_degree, Some(0));
        assert_eq!(by_id("E").flat_degree, Some(1));
        assert_eq!(by_id("mult[x1^3]").flat_degree, Some(3));
        assert!(by_id("mult[x1^3]").preserves);
        // d/dx does not preserve Q_1
        let d = FlatSample { id: "d1".into(), operator: setup.ctx.partial(0) };
        let report = flat_filtration_check(&setup, &ring, &[d]).unwrap();
        assert!(!report.entries[0].preserves);
    }
}
