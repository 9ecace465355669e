//! Type-A combinatorics: Young diagrams, Murnaghan-Nakayama characters, the
//! content polynomials `F_tau`, trace values, multiplicities of finite-dimensional
//! modules, and permutation characters of `h_Z / r h_Z`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::rational::{factorial, fmt_q, is_integer, q, Q};
use crate::report::CheckResult;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct YoungDiagram {
    pub parts: Vec<usize>,
}

impl YoungDiagram {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        parts.retain(|&p| p > 0);
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!("partition {parts:?} is not weakly decreasing")));
        }
        Ok(YoungDiagram { parts })
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> YoungDiagram {
        let cols = self.parts.first().copied().unwrap_or(0);
        YoungDiagram { parts: (0..cols).map(|j| self.parts.iter().filter(|&&p| p > j).count()).collect() }
    }

    /// `j - i` over cells `(i, j)`.
    pub fn contents(&self) -> Vec<i64> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (0..p).map(move |j| j as i64 - i as i64))
            .collect()
    }

    pub fn hooks(&self) -> Vec<usize> {
        let conj = self.conjugate();
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| {
                let conj = &conj;
                (0..p).map(move |j| (p - j - 1) + (conj.parts[j] - i - 1) + 1)
            })
            .collect()
    }

    pub fn hook_product(&self) -> BigInt {
        self.hooks().iter().map(|&h| BigInt::from(h)).product()
    }

    pub fn dim(&self) -> BigInt {
        factorial(self.n()) / self.hook_product()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = if t.contains(',') {
            t.split(',').map(|s| s.trim().parse::<usize>()).collect::<std::result::Result<Vec<_>, _>>()
        } else {
            t.chars().filter(|c| !c.is_whitespace()).map(|c| c.to_string().parse::<usize>()).collect()
        }
        .map_err(|_| Error::Parse(format!("partition {text:?}")))?;
        Self::new(parts)
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Partitions of `n`, largest first in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<YoungDiagram> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<YoungDiagram>) {
        if n == 0 {
            out.push(YoungDiagram { parts: prefix.clone() });
            return;
        }
        for p in (1..=n.min(max)).rev() {
            prefix.push(p);
            go(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// `z_mu = prod i^{m_i} m_i!`, the centralizer order.
pub fn z_mu(mu: &YoungDiagram) -> BigInt {
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for &p in &mu.parts {
        *counts.entry(p).or_default() += 1;
    }
    counts
        .iter()
        .map(|(&i, &m)| BigInt::from(i).pow(m as u32) * factorial(m))
        .product()
}

pub fn class_size(mu: &YoungDiagram) -> BigInt {
    factorial(mu.n()) / z_mu(mu)
}

/// Character value by the Murnaghan-Nakayama rule, using beta-numbers.
pub fn character(tau: &YoungDiagram, mu: &YoungDiagram) -> Result<i64> {
    if tau.n() != mu.n() {
        return Err(Error::SizeMismatch { partition: tau.n(), class: mu.n() });
    }
    let l = tau.len();
    let beta: Vec<usize> = tau.parts.iter().enumerate().map(|(i, &p)| p + (l - 1 - i)).collect();
    let mut memo = HashMap::new();
    Ok(mn(beta, &mu.parts, &mut memo))
}

fn mn(beta: Vec<usize>, mu: &[usize], memo: &mut HashMap<(Vec<usize>, usize), i64>) -> i64 {
    let Some((&k, rest)) = mu.split_first() else { return 1 };
    let key = (beta.clone(), mu.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut total = 0;
    for (idx, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > b - k && x < b).count();
        let mut next = beta.clone();
        next[idx] = b - k;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * mn(next, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// Full character table, rows and columns both in `partitions(n)` order.
pub fn character_table(n: usize) -> Vec<Vec<i64>> {
    let ps = partitions(n);
    ps.iter().map(|t| ps.iter().map(|m| character(t, m).expect("same n")).collect()).collect()
}

/// Column orthogonality `sum_tau chi_tau(mu) chi_tau(nu) = z_mu [mu = nu]`.
pub fn column_orthogonality(n: usize) -> CheckResult {
    let ps = partitions(n);
    let table = character_table(n);
    let mut res = CheckResult::new(format!("column orthogonality for S_{n}"));
    for (a, mu) in ps.iter().enumerate() {
        for (b, nu) in ps.iter().enumerate() {
            let s: i64 = table.iter().map(|row| row[a] * row[b]).sum();
            let expect = if a == b { z_mu(mu).to_i64().unwrap_or(0) } else { 0 };
            res.require(s == expect, || format!("{mu} vs {nu}: {s}"));
        }
    }
    res
}

/// Cycle type of a permutation of `0..n`.
pub fn cycle_type(perm: &[usize]) -> YoungDiagram {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut parts = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        parts.push(len);
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    YoungDiagram { parts }
}

/// A class given in cycle notation like `(123)(45)` (points `1..=n`), or as a
/// comma-separated cycle type like `3,2`.
pub fn parse_class(n: usize, text: &str) -> Result<YoungDiagram> {
    let t = text.trim();
    if t.contains('(') {
        let mut perm: Vec<usize> = (0..n).collect();
        for cycle in t.split(')').map(|s| s.trim().trim_start_matches('(')).filter(|s| !s.is_empty()) {
            let pts: Vec<usize> = if cycle.contains(',') || cycle.contains(' ') {
                cycle.split([',', ' ']).filter(|s| !s.is_empty()).map(|s| s.parse::<usize>()).collect::<std::result::Result<_, _>>()
            } else {
                cycle.chars().map(|c| c.to_string().parse::<usize>()).collect::<std::result::Result<_, _>>()
            }
            .map_err(|_| Error::Parse(format!("cycle {cycle:?}")))?;
            if pts.iter().any(|&p| p == 0 || p > n) {
                return Err(Error::Parse(format!("cycle {cycle:?} has points outside 1..={n}")));
            }
            for w in 0..pts.len() {
                perm[pts[w] - 1] = pts[(w + 1) % pts.len()] - 1;
            }
        }
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        if sorted != (0..n).collect::<Vec<_>>() {
            return Err(Error::Parse(format!("{text:?} is not a product of disjoint cycles")));
        }
        Ok(cycle_type(&perm))
    } else {
        let mu = YoungDiagram::parse(t)?;
        let mut parts = mu.parts;
        let total: usize = parts.iter().sum();
        if total > n {
            return Err(Error::SizeMismatch { partition: n, class: total });
        }
        parts.extend(std::iter::repeat(1).take(n - total));
        YoungDiagram::new(parts)
    }
}

/// Compares the Murnaghan-Nakayama table with the character table computed for
/// the Coxeter group `A_{n-1}`. Classes are matched through the characteristic
/// polynomial `prod (t^l - 1) / (t - 1)` of the reflection representation.
pub fn coxeter_table_agreement(n: usize) -> Result<CheckResult> {
    use crate::coxeter::{CartanType, GroupData, RootSystem};
    if n < 2 {
        return Err(Error::Invalid("need n >= 2".into()));
    }
    let rs = RootSystem::new(CartanType::A, n - 1)?;
    let gd = GroupData::new(&rs)?;
    let ps = partitions(n);
    let reflection_charpoly = |mu: &YoungDiagram| -> UPoly {
        let mut p = vec![Q::one()];
        for &l in &mu.parts {
            // (t^l - 1)/(t - 1) = 1 + t + ... + t^{l-1}
            p = poly_mul(&p, &vec![Q::one(); l]);
        }
        for _ in 1..mu.len() {
            p = poly_mul(&p, &[-Q::one(), Q::one()]);
        }
        p
    };
    let targets: Vec<UPoly> = ps.iter().map(reflection_charpoly).collect();
    let mut res = CheckResult::new(format!("Murnaghan-Nakayama vs Coxeter table for A{}", n - 1));
    let mut class_to_mu = Vec::new();
    for cls in &gd.classes {
        let cp = crate::linalg::characteristic_polynomial(&gd.matrix(cls[0]));
        match targets.iter().position(|t| *t == cp) {
            Some(k) => class_to_mu.push(k),
            None => {
                res.fail(format!("class of size {} has no cycle type", cls.len()));
                return Ok(res);
            }
        }
    }
    let mn = character_table(n);
    let mut mn_rows: Vec<Vec<i64>> = mn.iter().map(|row| class_to_mu.iter().map(|&k| row[k]).collect()).collect();
    let mut cox_rows = gd.character_table.clone();
    mn_rows.sort();
    cox_rows.sort();
    res.require(mn_rows == cox_rows, || "character tables differ".into());
    Ok(res)
}

/// Polynomial in one variable, constant term first.
pub type UPoly = Vec<Q>;

fn poly_mul(a: &[Q], b: &[Q]) -> UPoly {
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn trim(mut p: UPoly) -> UPoly {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub fn poly_eval(p: &[Q], z: &Q) -> Q {
    crate::linalg::horner(p, z)
}

pub fn poly_text(p: &[Q], var: &str) -> String {
    let mut out = String::new();
    for (i, c) in p.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let body = match (i, mag.is_one()) {
            (0, _) => fmt_q(&mag),
            (1, true) => var.to_string(),
            (1, false) => format!("{}*{var}", fmt_q(&mag)),
            (_, true) => format!("{var}^{i}"),
            (_, false) => format!("{}*{var}^{i}", fmt_q(&mag)),
        };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() { "0".into() } else { out }
}

/// `F_tau(z) = prod over cells (1 + cont(u) z)`.
pub fn f_polynomial_contents(tau: &YoungDiagram) -> UPoly {
    let mut p = vec![Q::one()];
    for c in tau.contents() {
        p = poly_mul(&p, &[Q::one(), q(c)]);
    }
    trim(p)
}

/// `h(tau) s_tau(1, z, ..., z^{n-1})` through the power-sum expansion
/// `s_tau = sum_mu chi_tau(mu) p_mu / z_mu` at `p_j = z^{j-1}`.
pub fn f_polynomial_power_sums(tau: &YoungDiagram) -> UPoly {
    let n = tau.n();
    let mut p = vec![Q::zero(); n + 1];
    for mu in partitions(n) {
        let chi = character(tau, &mu).expect("same n");
        p[n - mu.len()] += q(chi) / Q::from_integer(z_mu(&mu));
    }
    let h = Q::from_integer(tau.hook_product());
    trim(p.into_iter().map(|c| c * &h).collect())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, a, out);
            if k % 2 == 0 { a.swap(i, k - 1) } else { a.swap(0, k - 1) }
        }
    }
    heap(n, &mut cur, &mut out);
    out
}

/// `sum_{g in S_n} chi_tau(g^{-1}) z^{n - cycl(g)}` by enumerating the group.
pub fn stanley_sum(tau: &YoungDiagram) -> UPoly {
    let n = tau.n();
    let mut p = vec![Q::zero(); n + 1];
    let mut cache: HashMap<YoungDiagram, i64> = HashMap::new();
    for g in permutations(n) {
        // g and g^{-1} share a cycle type
        let mu = cycle_type(&g);
        let chi = *cache.entry(mu.clone()).or_insert_with(|| character(tau, &mu).expect("same n"));
        p[n - mu.len()] += q(chi);
    }
    trim(p)
}

#[derive(Clone, Debug, Serialize)]
pub struct FPolynomial {
    pub tau: YoungDiagram,
    pub contents: Vec<String>,
    pub power_sums: Vec<String>,
    pub text: String,
    pub checks: Vec<CheckResult>,
}

pub fn f_polynomial(tau: &YoungDiagram) -> FPolynomial {
    let a = f_polynomial_contents(tau);
    let b = f_polynomial_power_sums(tau);
    let mut routes = CheckResult::new(format!("F_{tau}: content product = power-sum specialization"));
    routes.require(a == b, || format!("{} vs {}", poly_text(&a, "z"), poly_text(&b, "z")));
    let mut stanley = CheckResult::new(format!("F_{tau}: sum_g chi(g^-1) z^(n-cycl g) = dim * F"));
    let s = stanley_sum(tau);
    let dim = Q::from_integer(tau.dim());
    let scaled: UPoly = a.iter().map(|c| c * &dim).collect();
    stanley.require(s == scaled, || format!("{} vs {}", poly_text(&s, "z"), poly_text(&scaled, "z")));
    FPolynomial {
        tau: tau.clone(),
        contents: a.iter().map(fmt_q).collect(),
        power_sums: b.iter().map(fmt_q).collect(),
        text: poly_text(&a, "z"),
        checks: vec![routes, stanley],
    }
}

/// A multiple of `Tr(1)`, polynomial in `u = 1/(nc)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceValue {
    pub n: usize,
    pub coeffs: UPoly,
}

impl TraceValue {
    pub fn at(&self, c: &Q) -> Result<Q> {
        if c.is_zero() {
            return Err(Error::ZeroParameter);
        }
        Ok(poly_eval(&self.coeffs, &(q(self.n as i64) * c).recip()))
    }

    pub fn symbolic_text(&self) -> String {
        format!("({})·Tr(1)", poly_text(&self.coeffs, "u"))
    }

    pub fn text_at(&self, c: &Q) -> Result<String> {
        Ok(format!("({})·Tr(1)", fmt_q(&self.at(c)?)))
    }
}

/// `Tr(g) = u^{n - cycl(g)} Tr(1)`.
pub fn trace_of_class(mu: &YoungDiagram) -> TraceValue {
    let n = mu.n();
    let mut coeffs = vec![Q::zero(); n - mu.len() + 1];
    coeffs[n - mu.len()] = Q::one();
    TraceValue { n, coeffs }
}

/// `Tr(e_tau) = (dim tau)^2 / n! * F_tau(u) Tr(1)`.
pub fn trace_of_idempotent(tau: &YoungDiagram) -> TraceValue {
    let n = tau.n();
    let s = Q::from_integer(tau.dim().pow(2)) / Q::from_integer(factorial(n));
    TraceValue { n, coeffs: f_polynomial_contents(tau).into_iter().map(|c| c * &s).collect() }
}

/// Expands `e_tau = dim tau / n! * sum_g chi_tau(g^{-1}) g` through `Tr(g)` and
/// compares with `Tr(e_tau)`.
pub fn trace_consistency(tau: &YoungDiagram) -> CheckResult {
    let n = tau.n();
    let mut acc = vec![Q::zero(); n + 1];
    for mu in partitions(n) {
        let chi = character(tau, &mu).expect("same n");
        let weight = q(chi) * Q::from_integer(class_size(&mu));
        for (i, c) in trace_of_class(&mu).coeffs.iter().enumerate() {
            acc[i] += c * &weight;
        }
    }
    let s = Q::from_integer(tau.dim()) / Q::from_integer(factorial(n));
    let expanded = trim(acc.into_iter().map(|c| c * &s).collect());
    let direct = trace_of_idempotent(tau);
    let mut res = CheckResult::new(format!("Tr(e_{tau}) from Tr(g) expansion"));
    res.require(expanded == direct.coeffs, || {
        format!("{} vs {}", poly_text(&expanded, "u"), poly_text(&direct.coeffs, "u"))
    });
    res.with_data(json!({ "value": direct.symbolic_text() }))
}

#[derive(Clone, Debug, Serialize)]
pub struct MultiplicityEntry {
    pub tau: YoungDiagram,
    pub value: String,
    pub nonnegative: bool,
    pub integral: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MultiplicityVector {
    pub n: usize,
    pub c: String,
    pub dim_v: u64,
    pub entries: Vec<MultiplicityEntry>,
    /// Smallest `dim V > 0` giving nonnegative integer multiplicities, if any
    /// exists within the search bound.
    pub minimal_dim_v: Option<u64>,
    pub completeness: bool,
}

/// `[tau : V] = dim V dim tau / n! * F_tau(1/(nc))` for every `tau`.
pub fn multiplicity_vector(n: usize, c: &Q, dim_v: u64, search_bound: u64) -> Result<MultiplicityVector> {
    if c.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let u = (q(n as i64) * c).recip();
    let nf = Q::from_integer(factorial(n));
    let per_unit: Vec<(YoungDiagram, Q)> = partitions(n)
        .into_iter()
        .map(|t| {
            let v = Q::from_integer(t.dim()) / &nf * poly_eval(&f_polynomial_contents(&t), &u);
            (t, v)
        })
        .collect();
    let dv = Q::from_integer(BigInt::from(dim_v));
    let entries: Vec<MultiplicityEntry> = per_unit
        .iter()
        .map(|(t, v)| {
            let x = v * &dv;
            MultiplicityEntry { tau: t.clone(), value: fmt_q(&x), nonnegative: !x.is_negative(), integral: is_integer(&x) }
        })
        .collect();
    let minimal_dim_v = if per_unit.iter().all(|(_, v)| !v.is_negative()) {
        let l = per_unit.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
        l.to_u64().filter(|&m| m <= search_bound)
    } else {
        None
    };
    let total = per_unit.iter().fold(Q::zero(), |acc, (t, v)| acc + Q::from_integer(t.dim()) * v * &dv);
    Ok(MultiplicityVector { n, c: fmt_q(c), dim_v, entries, minimal_dim_v, completeness: total == dv })
}

#[derive(Clone, Debug, Serialize)]
pub struct SSetVerdict {
    pub n: usize,
    pub c: String,
    /// `nc` is an integer not divisible by `n`.
    pub shape: bool,
    /// Every `F_tau(1/(nc))` is nonnegative.
    pub nonnegative: bool,
    /// `c = p/n`, or `|c| > 1 - 1/n`.
    pub claim_one: bool,
    /// `gcd(nc, n) = 1`; reported only.
    pub coprime: Option<bool>,
}

pub fn s_set_constraints(n: usize, c: &Q) -> SSetVerdict {
    let nc = q(n as i64) * c;
    let nc_int = is_integer(&nc).then(|| nc.to_integer());
    let shape = nc_int.as_ref().is_some_and(|r| !(r % BigInt::from(n)).is_zero());
    let nonnegative = !c.is_zero()
        && partitions(n).iter().all(|t| !poly_eval(&f_polynomial_contents(t), &nc.recip()).is_negative());
    let claim_one = nc_int.is_some() || c.abs() > q(1) - Q::new(1.into(), BigInt::from(n));
    let coprime = nc_int.as_ref().map(|r| r.gcd(&BigInt::from(n)).is_one());
    SSetVerdict { n, c: fmt_q(c), shape, nonnegative, claim_one, coprime }
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeCharacter {
    pub n: usize,
    pub r: usize,
    pub classes: Vec<String>,
    pub character: Vec<u64>,
    /// `r^{cycl(g)} / r`.
    pub expected: Vec<String>,
    pub proportional: bool,
    /// Multiplicity of each irreducible, `partitions(n)` order.
    pub decomposition: Vec<String>,
    pub decomposition_integral: bool,
}

/// Permutation character of `S_n` on `h_Z / r h_Z`, realized as the sum-zero
/// tuples in `(Z/r)^n`. Classes run from the identity upward; the
/// decomposition follows `partitions(n)`.
pub fn lattice_restriction_character(n: usize, r: usize) -> Result<LatticeCharacter> {
    if r == 0 {
        return Err(Error::Invalid("r must be positive".into()));
    }
    let total = (r as u128).checked_pow(n as u32).filter(|&t| t <= 1_000_000);
    let Some(total) = total else {
        return Err(Error::BoundExceeded(format!("{r}^{n} lattice points")));
    };
    let points: Vec<Vec<usize>> = (0..total as usize)
        .map(|mut idx| {
            (0..n)
                .map(|_| {
                    let d = idx % r;
                    idx /= r;
                    d
                })
                .collect::<Vec<_>>()
        })
        .filter(|p| p.iter().sum::<usize>() % r == 0)
        .collect();
    let mut classes = partitions(n);
    classes.reverse();
    let fixed: Vec<u64> = classes
        .iter()
        .map(|mu| {
            // standard representative: consecutive cycles
            let mut perm = vec![0; n];
            let mut start = 0;
            for &len in &mu.parts {
                for i in 0..len {
                    perm[start + i] = start + (i + 1) % len;
                }
                start += len;
            }
            points
                .iter()
                .filter(|p| (0..n).all(|i| p[perm[i]] == p[i]))
                .count() as u64
        })
        .collect();
    let rq = q(r as i64);
    let expected: Vec<Q> = classes.iter().map(|mu| num_traits::pow(rq.clone(), mu.len()) / &rq).collect();
    let proportional = fixed.iter().zip(&expected).all(|(a, b)| q(*a as i64) == *b);
    let nf = Q::from_integer(factorial(n));
    let decomposition: Vec<Q> = partitions(n)
        .iter()
        .map(|tau| {
            classes
                .iter()
                .zip(&fixed)
                .fold(Q::zero(), |acc, (mu, &ch)| {
                    acc + Q::from_integer(class_size(mu)) * q(character(tau, mu).expect("same n")) * q(ch as i64)
                })
                / &nf
        })
        .collect();
    let decomposition_integral = decomposition.iter().all(|x| is_integer(x) && !x.is_negative());
    Ok(LatticeCharacter {
        n,
        r,
        classes: classes.iter().map(ToString::to_string).collect(),
        character: fixed,
        expected: expected.iter().map(fmt_q).collect(),
        proportional,
        decomposition: decomposition.iter().map(fmt_q).collect(),
        decomposition_integral,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    fn yd(p: &[usize]) -> YoungDiagram {
        YoungDiagram::new(p.to_vec()).unwrap()
    }

    #[test]
    fn mn_values() {
        assert_eq!(character(&yd(&[2, 1]), &yd(&[3])).unwrap(), -1);
        assert_eq!(character(&yd(&[3]), &yd(&[2, 1])).unwrap(), 1);
        assert_eq!(character(&yd(&[1, 1, 1]), &yd(&[2, 1])).unwrap(), -1);
        assert_eq!(character(&yd(&[2, 1]), &yd(&[1, 1, 1])).unwrap(), 2);
        assert!(character(&yd(&[2]), &yd(&[1, 1, 1])).is_err());
        for n in 1..=6 {
            assert!(column_orthogonality(n).passed);
        }
    }

    #[test]
    fn f_examples() {
        assert_eq!(f_polynomial(&yd(&[3])).text, "1 + 3*z + 2*z^2");
        assert_eq!(f_polynomial(&yd(&[2, 1])).text, "1 - z^2");
        assert_eq!(f_polynomial(&yd(&[2])).text, "1 + z");
    }

    #[test]
    fn traces() {
        let t = trace_of_class(&parse_class(3, "(123)").unwrap());
        assert_eq!(t.text_at(&q(1)).unwrap(), "(1/9)·Tr(1)");
        let t = trace_of_class(&parse_class(2, "(12)").unwrap());
        assert_eq!(t.at(&q(1)).unwrap(), qf(1, 2));
        let e = trace_of_idempotent(&yd(&[2]));
        assert_eq!(e.coeffs, vec![qf(1, 2), qf(1, 2)]);
        assert!(trace_of_class(&yd(&[1])).at(&q(0)).is_err());
    }

    #[test]
    fn multiplicities() {
        let m = multiplicity_vector(2, &qf(3, 2), 3, 1000).unwrap();
        let v: Vec<&str> = m.entries.iter().map(|e| e.value.as_str()).collect();
        assert_eq!(v, vec!["2", "1"]);
        assert!(m.completeness);
        let m = multiplicity_vector(2, &qf(1, 2), 1, 1000).unwrap();
        let v: Vec<&str> = m.entries.iter().map(|e| e.value.as_str()).collect();
        assert_eq!(v, vec!["1", "0"]);
        assert_eq!(m.minimal_dim_v, Some(1));
    }

    #[test]
    fn s_set() {
        let v = s_set_constraints(3, &qf(1, 3));
        assert!(v.shape && v.nonnegative);
        assert!(!s_set_constraints(3, &qf(1, 2)).shape);
        let v = s_set_constraints(4, &qf(1, 2));
        assert!(v.shape);
        assert_eq!(v.coprime, Some(false));
    }

    #[test]
    fn lattice() {
        let l = lattice_restriction_character(2, 3).unwrap();
        assert_eq!(l.character, vec![3, 1]);
        assert_eq!(l.decomposition, vec!["2", "1"]);
        assert!(l.proportional);
        let l = lattice_restriction_character(3, 2).unwrap();
        assert_eq!(l.character, vec![4, 2, 1]);
        assert!(l.proportional);
        let l = lattice_restriction_character(2, 1).unwrap();
        assert_eq!(l.decomposition, vec!["1", "0"]);
        assert!(!lattice_restriction_character(2, 2).unwrap().proportional);
    }

    #[test]
    fn matches_coxeter_tables() {
        for n in 2..=5 {
            assert!(coxeter_table_agreement(n).unwrap().passed);
        }
    }
}
