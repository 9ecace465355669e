//! Rationally realized root systems, their Weyl groups and character tables.
//!
//! Coordinates on `h` are the values of the simple roots, `x_i = alpha_i(v)`.
//! A root is stored as its integer expansion in simple roots, which is then
//! also its coefficient vector as a linear form in `x`. The bilinear form on
//! `h*` is half the ambient Euclidean form, so the single root of `A_1` is
//! `alpha(x) = x` with invariant form `x^2`.

mod group;
mod invariants;

pub use group::{GroupData, DEFAULT_GROUP_BOUND};
pub use invariants::{discriminant, kappa_scalar, molien_series, DiscriminantVariant};

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::poly::Polynomial;
use crate::rational::{fmt_q, parse_q, q, qf, to_nonneg_usize, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CartanType {
    A,
    B,
    D,
    G,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CartanType::A => "A",
            CartanType::B => "B",
            CartanType::D => "D",
            CartanType::G => "G",
        };
        f.write_str(s)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(CartanType::A),
            "B" => Ok(CartanType::B),
            "D" => Ok(CartanType::D),
            "G" => Ok(CartanType::G),
            "H" | "I" | "E" | "F" | "C" => Err(Error::UnsupportedType(format!(
                "type {s} is outside the supported set A_n, B_n, D_n, G_2"
            ))),
            _ => Err(Error::Parse(format!("unknown Cartan label {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub label: CartanType,
    pub rank: usize,
    /// Simple roots in the ambient Euclidean space.
    pub ambient_simple_roots: Vec<Vec<Q>>,
    /// `cartan[i][j] = <alpha_i, alpha_j^vee>`.
    pub cartan: Vec<Vec<i64>>,
    /// Invariant form on `h*` in the simple-root basis.
    pub dual_form: Matrix,
    /// Invariant form on `h` in the coordinates `x_i`; inverse of `dual_form`.
    pub invariant_form: Matrix,
    /// Positive roots as linear forms in `x`.
    pub positive_roots: Vec<Vec<Q>>,
    /// Coroots as vectors of `h`, in the coordinates `x_i`.
    pub coroots: Vec<Vec<Q>>,
    /// Reflection matrices acting on coordinate vectors of `h`.
    pub reflections: Vec<Matrix>,
    /// Orbit index of each positive root; long roots come first.
    pub orbit: Vec<usize>,
    pub num_orbits: usize,
}

fn ambient_simple_roots(label: CartanType, n: usize) -> Vec<Vec<Q>> {
    let unit = |dim: usize, i: usize, j: Option<usize>, sign: i64| {
        let mut v = vec![q(0); dim];
        v[i] = q(1);
        if let Some(j) = j {
            v[j] = q(sign);
        }
        v
    };
    match label {
        CartanType::A => (0..n).map(|i| unit(n + 1, i, Some(i + 1), -1)).collect(),
        CartanType::B => (0..n)
            .map(|i| if i + 1 < n { unit(n, i, Some(i + 1), -1) } else { unit(n, i, None, 0) })
            .collect(),
        CartanType::D => (0..n)
            .map(|i| {
                if i + 1 < n {
                    unit(n, i, Some(i + 1), -1)
                } else {
                    unit(n, n - 2, Some(n - 1), 1)
                }
            })
            .collect(),
        CartanType::G => vec![vec![q(1), q(-1), q(0)], vec![q(-2), q(1), q(1)]],
    }
}

impl RootSystem {
    pub fn new(label: CartanType, rank: usize) -> Result<Self> {
        let ok = match label {
            CartanType::A => rank >= 1,
            CartanType::B => rank >= 2,
            CartanType::D => rank >= 4,
            CartanType::G => rank == 2,
        };
        if !ok {
            return Err(Error::InvalidRank { label: label.to_string(), rank });
        }
        let simple = ambient_simple_roots(label, rank);
        let dual_form: Matrix = simple
            .iter()
            .map(|a| simple.iter().map(|b| linalg::dot(a, b) * qf(1, 2)).collect())
            .collect();
        let invariant_form = linalg::inverse(&dual_form).expect("simple roots are independent");
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| {
                        let v = q(2) * &dual_form[i][j] / &dual_form[j][j];
                        crate::rational::to_i64(&v).expect("integral Cartan matrix")
                    })
                    .collect()
            })
            .collect();

        // Close the simple roots under simple reflections acting on covectors.
        let reflect = |a: &[i64], j: usize| -> Vec<i64> {
            let pairing: i64 = (0..rank).map(|i| a[i] * cartan[i][j]).sum();
            let mut b = a.to_vec();
            b[j] -= pairing;
            b
        };
        let mut seen: BTreeMap<Vec<i64>, ()> = BTreeMap::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..rank {
            let mut e = vec![0; rank];
            e[i] = 1;
            seen.insert(e.clone(), ());
            queue.push_back(e);
        }
        while let Some(a) = queue.pop_front() {
            for j in 0..rank {
                let b = reflect(&a, j);
                if !seen.contains_key(&b) {
                    seen.insert(b.clone(), ());
                    queue.push_back(b);
                }
            }
        }
        let mut positive: Vec<Vec<i64>> =
            seen.into_keys().filter(|a| a.iter().all(|&x| x >= 0)).collect();
        positive.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });

        let positive_roots: Vec<Vec<Q>> =
            positive.iter().map(|a| a.iter().map(|&x| q(x)).collect()).collect();
        let norms: Vec<Q> = positive_roots
            .iter()
            .map(|a| linalg::dot(a, &linalg::mat_vec(&dual_form, a)))
            .collect();
        let coroots: Vec<Vec<Q>> = positive_roots
            .iter()
            .zip(&norms)
            .map(|(a, n)| linalg::mat_vec(&dual_form, a).into_iter().map(|x| q(2) * x / n).collect())
            .collect();
        let reflections: Vec<Matrix> = positive_roots
            .iter()
            .zip(&coroots)
            .map(|(a, v)| {
                (0..rank)
                    .map(|i| {
                        (0..rank)
                            .map(|j| {
                                let id = if i == j { q(1) } else { q(0) };
                                id - &v[i] * &a[j]
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();

        // Orbits of a Weyl group on roots are exactly the root-length classes.
        let mut lengths: Vec<Q> = norms.clone();
        lengths.sort();
        lengths.dedup();
        lengths.reverse();
        let orbit: Vec<usize> = norms
            .iter()
            .map(|n| lengths.iter().position(|l| l == n).unwrap())
            .collect();

        Ok(RootSystem {
            label,
            rank,
            ambient_simple_roots: simple,
            cartan,
            dual_form,
            invariant_form,
            positive_roots,
            coroots,
            reflections,
            orbit,
            num_orbits: lengths.len(),
        })
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.label, self.rank)
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// The positive root `i` as a linear polynomial in `nvars >= rank` variables.
    pub fn root_form(&self, i: usize, nvars: usize) -> Polynomial {
        Polynomial::linear(&self.positive_roots[i]).extend_vars(nvars)
    }

    /// `<alpha_i, y>` for a vector `y` of `h`.
    pub fn pair(&self, i: usize, y: &[Q]) -> Q {
        linalg::dot(&self.positive_roots[i], y)
    }

    /// Vector of `h` metric-dual to the covector `a`.
    pub fn dual_vector(&self, a: &[Q]) -> Vec<Q> {
        linalg::mat_vec(&self.dual_form, a)
    }

    /// Squared norm of the root `i` under the form on `h*`.
    pub fn root_norm(&self, i: usize) -> Q {
        let a = &self.positive_roots[i];
        linalg::dot(a, &self.dual_vector(a))
    }

    /// Simple reflection matrices on `h`, indexed like the simple roots.
    pub fn simple_reflections(&self) -> Vec<Matrix> {
        (0..self.rank).map(|i| self.reflections[i].clone()).collect()
    }

    /// Squared norm `x^2 = sum G_ij x_i x_j` on `h`.
    pub fn norm_squared(&self) -> Polynomial {
        let r = self.rank;
        let mut p = Polynomial::zero(r);
        for i in 0..r {
            for j in 0..r {
                let mut e = vec![0u16; r];
                e[i] += 1;
                e[j] += 1;
                p.add_term(crate::poly::Monomial(e), self.invariant_form[i][j].clone());
            }
        }
        p
    }

    /// Normalization data recorded next to every cached or reported quantity.
    pub fn normalization_header(&self) -> NormalizationHeader {
        NormalizationHeader {
            label: self.label.to_string(),
            rank: self.rank,
            coordinates: "x_i = alpha_i(v), simple-root values".into(),
            dual_form: self.dual_form.iter().map(|r| r.iter().map(fmt_q).collect()).collect(),
            positive_roots: self
                .positive_roots
                .iter()
                .map(|a| Polynomial::linear(a).to_string())
                .collect(),
            orbits: self.orbit.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct NormalizationHeader {
    pub label: String,
    pub rank: usize,
    pub coordinates: String,
    pub dual_form: Vec<Vec<String>>,
    pub positive_roots: Vec<String>,
    pub orbits: Vec<usize>,
}

/// A `W`-invariant multiplicity function, one value per root orbit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multiplicity {
    pub values: Vec<Q>,
}

impl Multiplicity {
    pub fn new(rs: &RootSystem, values: Vec<Q>) -> Result<Self> {
        if values.len() != rs.num_orbits {
            return Err(Error::MultiplicityArity { expected: rs.num_orbits, got: values.len() });
        }
        Ok(Multiplicity { values })
    }

    /// Same value on every orbit.
    pub fn constant(rs: &RootSystem, c: Q) -> Self {
        Multiplicity { values: vec![c; rs.num_orbits] }
    }

    pub fn zero(rs: &RootSystem) -> Self {
        Self::constant(rs, Q::zero())
    }

    /// Parses `"1"`, `"1/2"` or `"1,2"`; a single value is used on every orbit.
    pub fn parse(rs: &RootSystem, text: &str) -> Result<Self> {
        let values = text.split(',').map(parse_q).collect::<Result<Vec<_>>>()?;
        if values.len() == 1 {
            return Ok(Self::constant(rs, values[0].clone()));
        }
        Self::new(rs, values)
    }

    pub fn of_root(&self, rs: &RootSystem, i: usize) -> &Q {
        &self.values[rs.orbit[i]]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// Values as nonnegative integers, required by quasi-invariants and shift operators.
    pub fn integral(&self) -> Result<Vec<usize>> {
        self.values
            .iter()
            .map(|v| to_nonneg_usize(v).ok_or_else(|| Error::NonIntegralMultiplicity(self.to_string())))
            .collect()
    }

    /// `d = sum over positive roots of c_alpha`.
    pub fn total(&self, rs: &RootSystem) -> Q {
        (0..rs.num_positive_roots()).map(|i| self.of_root(rs, i).clone()).sum()
    }

    /// `c - 1_eps` where `eps_neg[o]` says whether the linear character is `-1` on orbit `o`.
    pub fn minus_indicator(&self, eps_neg: &[bool]) -> Multiplicity {
        Multiplicity {
            values: self
                .values
                .iter()
                .zip(eps_neg)
                .map(|(v, &neg)| if neg { v - q(1) } else { v.clone() })
                .collect(),
        }
    }

    pub fn has_negative(&self) -> bool {
        self.values.iter().any(Signed::is_negative)
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(fmt_q).collect();
        f.write_str(&parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts() {
        let cases = [
            (CartanType::A, 1, 1, 1),
            (CartanType::A, 2, 3, 1),
            (CartanType::A, 3, 6, 1),
            (CartanType::B, 2, 4, 2),
            (CartanType::B, 3, 9, 2),
            (CartanType::D, 4, 12, 1),
            (CartanType::G, 2, 6, 2),
        ];
        for (t, r, np, orbits) in cases {
            let rs = RootSystem::new(t, r).unwrap();
            assert_eq!(rs.num_positive_roots(), np, "{t}{r}");
            assert_eq!(rs.num_orbits, orbits, "{t}{r}");
        }
    }

    #[test]
    fn coroot_pairing_and_reflection() {
        for (t, r) in [(CartanType::A, 3), (CartanType::B, 3), (CartanType::G, 2), (CartanType::D, 4)] {
            let rs = RootSystem::new(t, r).unwrap();
            for i in 0..rs.num_positive_roots() {
                assert_eq!(rs.pair(i, &rs.coroots[i]), q(2));
                let image = linalg::mat_vec(&rs.reflections[i], &rs.coroots[i]);
                let neg: Vec<Q> = rs.coroots[i].iter().map(|x| -x.clone()).collect();
                assert_eq!(image, neg);
                assert!(rs.reflections[i].iter().flatten().all(crate::rational::is_integer));
            }
        }
    }

    #[test]
    fn rank_one_normalization() {
        let rs = RootSystem::new(CartanType::A, 1).unwrap();
        assert_eq!(rs.positive_roots, vec![vec![q(1)]]);
        assert_eq!(rs.invariant_form, vec![vec![q(1)]]);
        assert_eq!(rs.norm_squared().to_string(), "x1^2");
    }

    #[test]
    fn b2_orbits_long_first() {
        let rs = RootSystem::new(CartanType::B, 2).unwrap();
        let long: Vec<usize> = (0..4).filter(|&i| rs.orbit[i] == 0).collect();
        assert_eq!(long.len(), 2);
        assert!(long.iter().all(|&i| rs.root_norm(i) == q(1)));
    }

    #[test]
    fn unsupported_labels() {
        assert!(matches!("H".parse::<CartanType>(), Err(Error::UnsupportedType(_))));
        assert!(matches!("E".parse::<CartanType>(), Err(Error::UnsupportedType(_))));
        assert!(RootSystem::new(CartanType::D, 3).is_err());
        assert!(RootSystem::new(CartanType::G, 3).is_err());
    }
}
