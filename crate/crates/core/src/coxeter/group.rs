use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::RootSystem;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::poly::Polynomial;
use crate::rational::{exact_sqrt, q, Q};

pub const DEFAULT_GROUP_BOUND: usize = 10_000;

type IntMat = Vec<i64>;

/// The Weyl group as explicit integer matrices on `h`, with classes and characters.
#[derive(Clone, Debug)]
pub struct GroupData {
    pub rank: usize,
    pub elements: Vec<IntMat>,
    index: HashMap<IntMat, usize>,
    pub inverse: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    pub class_orders: Vec<usize>,
    /// Rows are irreducible characters, columns are classes.
    pub character_table: Vec<Vec<i64>>,
    /// Element index of the reflection in each positive root.
    pub reflection_of_root: Vec<usize>,
    /// `root_perm[w][i] = (j, sign)` with `w(alpha_i) = sign * alpha_j`.
    pub root_perm: Vec<Vec<(usize, bool)>>,
}

fn int_mul(a: &[i64], b: &[i64], r: usize) -> IntMat {
    let mut out = vec![0; r * r];
    for i in 0..r {
        for k in 0..r {
            let x = a[i * r + k];
            if x == 0 {
                continue;
            }
            for j in 0..r {
                out[i * r + j] += x * b[k * r + j];
            }
        }
    }
    out
}

fn to_int(m: &Matrix) -> IntMat {
    m.iter()
        .flatten()
        .map(|x| crate::rational::to_i64(x).expect("Weyl group matrices are integral"))
        .collect()
}

impl GroupData {
    pub fn new(rs: &RootSystem) -> Result<Self> {
        Self::with_options(rs, DEFAULT_GROUP_BOUND, 0)
    }

    /// Enumerates the group (failing beyond `bound` elements) and splits the
    /// class algebra with random class-sum combinations drawn from `seed`.
    pub fn with_options(rs: &RootSystem, bound: usize, seed: u64) -> Result<Self> {
        let r = rs.rank;
        let gens: Vec<IntMat> = rs.simple_reflections().iter().map(to_int).collect();
        let mut id = vec![0; r * r];
        for i in 0..r {
            id[i * r + i] = 1;
        }
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(w) = queue.pop_front() {
            for g in &gens {
                let p = int_mul(&elements[w], g, r);
                if !index.contains_key(&p) {
                    if elements.len() >= bound {
                        return Err(Error::GroupTooLarge { order: elements.len() + 1, bound });
                    }
                    index.insert(p.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(p);
                }
            }
        }
        let n = elements.len();
        let inverse: Vec<usize> = elements
            .iter()
            .map(|e| {
                let m: Matrix = (0..r).map(|i| (0..r).map(|j| q(e[i * r + j])).collect()).collect();
                let inv = linalg::inverse(&m).expect("group elements are invertible");
                index[&to_int(&inv)]
            })
            .collect();

        let mut gd = GroupData {
            rank: r,
            elements,
            index,
            inverse,
            classes: Vec::new(),
            class_of: vec![usize::MAX; n],
            class_orders: Vec::new(),
            character_table: Vec::new(),
            reflection_of_root: Vec::new(),
            root_perm: Vec::new(),
        };
        gd.reflection_of_root = rs.reflections.iter().map(|m| gd.index[&to_int(m)]).collect();
        gd.build_root_perm(rs);
        gd.build_classes(rs);
        gd.character_table = gd.split_class_algebra(seed)?;
        gd.verify_orthogonality()?;
        Ok(gd)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&int_mul(&self.elements[a], &self.elements[b], self.rank)]
    }

    pub fn index_of(&self, m: &Matrix) -> Option<usize> {
        self.index.get(&to_int(m)).copied()
    }

    pub fn matrix(&self, w: usize) -> Matrix {
        let r = self.rank;
        let e = &self.elements[w];
        (0..r).map(|i| (0..r).map(|j| q(e[i * r + j])).collect()).collect()
    }

    pub fn element_order(&self, w: usize) -> usize {
        let mut k = 1;
        let mut p = w;
        while p != 0 {
            p = self.mul(p, w);
            k += 1;
        }
        k
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn dim(&self, tau: usize) -> usize {
        self.character_table[tau][0] as usize
    }

    pub fn chi(&self, tau: usize, w: usize) -> i64 {
        self.character_table[tau][self.class_of[w]]
    }

    pub fn check_irrep(&self, tau: usize) -> Result<()> {
        if tau < self.character_table.len() {
            Ok(())
        } else {
            Err(Error::InvalidIrrep(tau))
        }
    }

    /// Indices of the one-dimensional characters.
    pub fn linear_characters(&self) -> Vec<usize> {
        (0..self.character_table.len()).filter(|&t| self.dim(t) == 1).collect()
    }

    /// For a linear character, which orbits it sends to `-1`.
    pub fn negative_orbits(&self, rs: &RootSystem, eps: usize) -> Result<Vec<bool>> {
        self.check_irrep(eps)?;
        if self.dim(eps) != 1 {
            return Err(Error::InvalidCharacter(format!("irreducible {eps} has dimension {}", self.dim(eps))));
        }
        let mut out = vec![false; rs.num_orbits];
        for (i, &s) in self.reflection_of_root.iter().enumerate() {
            out[rs.orbit[i]] = self.chi(eps, s) == -1;
        }
        Ok(out)
    }

    /// The linear character taking value `-1` exactly on the flagged orbits.
    pub fn linear_character_from_signs(&self, rs: &RootSystem, negative: &[bool]) -> Result<usize> {
        for eps in self.linear_characters() {
            if self.negative_orbits(rs, eps)? == negative {
                return Ok(eps);
            }
        }
        Err(Error::InvalidCharacter(format!("no linear character with sign pattern {negative:?}")))
    }

    /// `(w.f)(x) = f(w^{-1} x)`.
    pub fn act(&self, w: usize, f: &Polynomial) -> Result<Polynomial> {
        if f.nvars() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: f.nvars() });
        }
        Ok(f.substitute_matrix(&self.matrix(self.inverse[w])))
    }

    fn build_root_perm(&mut self, rs: &RootSystem) {
        let r = self.rank;
        let roots: HashMap<Vec<i64>, usize> = rs
            .positive_roots
            .iter()
            .enumerate()
            .map(|(i, a)| (a.iter().map(|x| crate::rational::to_i64(x).unwrap()).collect(), i))
            .collect();
        let int_roots: Vec<Vec<i64>> = rs
            .positive_roots
            .iter()
            .map(|a| a.iter().map(|x| crate::rational::to_i64(x).unwrap()).collect())
            .collect();
        self.root_perm = (0..self.order())
            .map(|w| {
                let winv = &self.elements[self.inverse[w]];
                int_roots
                    .iter()
                    .map(|a| {
                        // (w.alpha)(v) = alpha(w^{-1} v): row vector a * W^{-1}
                        let b: Vec<i64> = (0..r).map(|j| (0..r).map(|i| a[i] * winv[i * r + j]).sum()).collect();
                        if let Some(&k) = roots.get(&b) {
                            (k, true)
                        } else {
                            let nb: Vec<i64> = b.iter().map(|x| -x).collect();
                            (roots[&nb], false)
                        }
                    })
                    .collect()
            })
            .collect();
    }

    fn build_classes(&mut self, rs: &RootSystem) {
        let n = self.order();
        let gens: Vec<usize> = (0..rs.rank).map(|i| self.reflection_of_root[i]).collect();
        let mut raw: Vec<Vec<usize>> = Vec::new();
        let mut class_of = vec![usize::MAX; n];
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let c = raw.len();
            let mut members = vec![start];
            class_of[start] = c;
            let mut i = 0;
            while i < members.len() {
                let w = members[i];
                for &s in &gens {
                    let v = self.mul(self.mul(s, w), s);
                    if class_of[v] == usize::MAX {
                        class_of[v] = c;
                        members.push(v);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            raw.push(members);
        }
        let orders: Vec<usize> = raw.iter().map(|c| self.element_order(c[0])).collect();
        let mut perm: Vec<usize> = (0..raw.len()).collect();
        perm.sort_by_key(|&c| (orders[c], raw[c].len(), raw[c][0]));
        self.classes = perm.iter().map(|&c| raw[c].clone()).collect();
        self.class_orders = perm.iter().map(|&c| orders[c]).collect();
        for (k, class) in self.classes.iter().enumerate() {
            for &w in class {
                self.class_of[w] = k;
            }
        }
    }

    /// Class-multiplication matrices `M_j[k][i] = #{x in C_j : x^{-1} g_k in C_i}`.
    fn class_matrices(&self) -> Vec<Matrix> {
        let k = self.num_classes();
        let reps: Vec<usize> = self.classes.iter().map(|c| c[0]).collect();
        (0..k)
            .map(|j| {
                let mut m = linalg::zeros(k, k);
                for &x in &self.classes[j] {
                    let xinv = self.inverse[x];
                    for (row, &g) in reps.iter().enumerate() {
                        let i = self.class_of[self.mul(xinv, g)];
                        m[row][i] += q(1);
                    }
                }
                m
            })
            .collect()
    }

    /// Splits the center of the group algebra into common eigenlines of class sums.
    fn split_class_algebra(&self, seed: u64) -> Result<Vec<Vec<i64>>> {
        let k = self.num_classes();
        let mats = self.class_matrices();
        let sizes: Vec<usize> = self.classes.iter().map(Vec::len).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // Each subspace is a list of basis columns.
        let mut spaces: Vec<Vec<Vec<Q>>> = vec![(0..k)
            .map(|i| (0..k).map(|j| if i == j { q(1) } else { q(0) }).collect())
            .collect()];
        let mut rounds = 0;
        while spaces.iter().any(|s| s.len() > 1) {
            rounds += 1;
            if rounds > 64 {
                return Err(Error::CharacterTable("eigenspace splitting did not terminate".into()));
            }
            let coeffs: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=4)).collect();
            let mut m = linalg::zeros(k, k);
            for (j, cj) in coeffs.iter().enumerate() {
                for a in 0..k {
                    for b in 0..k {
                        if !mats[j][a][b].is_zero() {
                            m[a][b] += &mats[j][a][b] * q(*cj);
                        }
                    }
                }
            }
            let bound: i64 = coeffs.iter().zip(&sizes).map(|(c, s)| c * *s as i64).sum();
            let mut next = Vec::new();
            for space in spaces {
                if space.len() == 1 {
                    next.push(space);
                    continue;
                }
                next.extend(split_space(&m, &space, bound)?);
            }
            spaces = next;
        }
        if spaces.len() != k {
            return Err(Error::CharacterTable("wrong number of eigenlines".into()));
        }
        let order = Q::from_integer(BigInt::from(self.order()));
        let mut table = Vec::with_capacity(k);
        for space in spaces {
            let v = &space[0];
            let v0 = v[0].clone();
            if v0.is_zero() {
                return Err(Error::CharacterTable("eigenvector vanishes at the identity".into()));
            }
            let v: Vec<Q> = v.iter().map(|x| x / &v0).collect();
            let norm: Q = v.iter().zip(&sizes).map(|(x, &s)| x * x * q(s as i64)).sum();
            let dim = exact_sqrt(&(&order / &norm))
                .ok_or_else(|| Error::CharacterTable("degree is not an integer".into()))?;
            let row: Option<Vec<i64>> = v
                .iter()
                .map(|x| {
                    let y = x * &dim;
                    if y.denom().is_one() { y.numer().to_i64() } else { None }
                })
                .collect();
            table.push(row.ok_or_else(|| Error::CharacterTable("non-integral character value".into()))?);
        }
        table.sort_by(|a, b| a[0].cmp(&b[0]).then_with(|| b.cmp(a)));
        Ok(table)
    }

    fn verify_orthogonality(&self) -> Result<()> {
        let n = self.order() as i64;
        let sizes: Vec<i64> = self.classes.iter().map(|c| c.len() as i64).collect();
        let t = &self.character_table;
        for a in 0..t.len() {
            for b in 0..t.len() {
                let s: i64 = (0..sizes.len()).map(|c| sizes[c] * t[a][c] * t[b][c]).sum();
                if s != if a == b { n } else { 0 } {
                    return Err(Error::CharacterTable(format!("row orthogonality fails for ({a}, {b})")));
                }
            }
        }
        for c in 0..sizes.len() {
            for d in 0..sizes.len() {
                let s: i64 = t.iter().map(|row| row[c] * row[d]).sum();
                let expect = if c == d { n / sizes[c] } else { 0 };
                if s != expect {
                    return Err(Error::CharacterTable(format!("column orthogonality fails for ({c}, {d})")));
                }
            }
        }
        Ok(())
    }
}

/// Splits `span(space)` into eigenspaces of `m`, which must preserve it and have
/// integral eigenvalues of absolute value at most `bound`.
fn split_space(m: &Matrix, space: &[Vec<Q>], bound: i64) -> Result<Vec<Vec<Vec<Q>>>> {
    let dim = space.len();
    // Coordinates of m u_j in the basis u: solve U c = m u_j.
    let u_cols = linalg::transpose(&space.to_vec());
    let images: Vec<Vec<Q>> = space.iter().map(|u| linalg::mat_vec(m, u)).collect();
    let mut restricted = linalg::zeros(dim, dim);
    for (j, img) in images.iter().enumerate() {
        let c = linalg::solve(&u_cols, img)
            .ok_or_else(|| Error::CharacterTable("subspace is not invariant".into()))?;
        for i in 0..dim {
            restricted[i][j] = c[i].clone();
        }
    }
    let cp = linalg::characteristic_polynomial(&restricted);
    let mut out = Vec::new();
    let mut found = 0;
    for lam in -bound..=bound {
        let l = q(lam);
        if !linalg::horner(&cp, &l).is_zero() {
            continue;
        }
        let mut shifted = restricted.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] -= &l;
        }
        let ns = linalg::nullspace(&shifted, dim);
        found += ns.len();
        out.push(
            ns.iter()
                .map(|c| {
                    let mut v = vec![q(0); space[0].len()];
                    for (ci, u) in c.iter().zip(space) {
                        for (vk, uk) in v.iter_mut().zip(u) {
                            *vk += ci * uk;
                        }
                    }
                    v
                })
                .collect(),
        );
    }
    if found != dim {
        return Err(Error::CharacterTable("class-sum operator is not diagonalizable over the integers".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CartanType;

    fn table(t: CartanType, r: usize) -> GroupData {
        GroupData::new(&RootSystem::new(t, r).unwrap()).unwrap()
    }

    #[test]
    fn orders_and_tables() {
        let a1 = table(CartanType::A, 1);
        assert_eq!(a1.character_table, vec![vec![1, 1], vec![1, -1]]);
        let a2 = table(CartanType::A, 2);
        assert_eq!(a2.order(), 6);
        assert_eq!(a2.num_classes(), 3);
        let dims: Vec<usize> = (0..3).map(|t| a2.dim(t)).collect();
        assert_eq!(dims, vec![1, 1, 2]);
        let b2 = table(CartanType::B, 2);
        assert_eq!(b2.order(), 8);
        let dims: Vec<usize> = (0..5).map(|t| b2.dim(t)).collect();
        assert_eq!(dims, vec![1, 1, 1, 1, 2]);
        assert_eq!(table(CartanType::G, 2).order(), 12);
        assert_eq!(table(CartanType::A, 3).order(), 24);
        assert_eq!(table(CartanType::B, 3).order(), 48);
        assert_eq!(table(CartanType::D, 4).order(), 192);
    }

    #[test]
    fn group_bound_is_enforced() {
        let rs = RootSystem::new(CartanType::A, 3).unwrap();
        assert!(matches!(GroupData::with_options(&rs, 10, 0), Err(Error::GroupTooLarge { .. })));
    }

    #[test]
    fn table_independent_of_seed() {
        let rs = RootSystem::new(CartanType::B, 3).unwrap();
        let a = GroupData::with_options(&rs, DEFAULT_GROUP_BOUND, 1).unwrap();
        let b = GroupData::with_options(&rs, DEFAULT_GROUP_BOUND, 99).unwrap();
        assert_eq!(a.character_table, b.character_table);
    }

    #[test]
    fn reflections_conjugate_to_reflections() {
        let rs = RootSystem::new(CartanType::G, 2).unwrap();
        let gd = GroupData::new(&rs).unwrap();
        for w in 0..gd.order() {
            for (i, &s) in gd.reflection_of_root.iter().enumerate() {
                let conj = gd.mul(gd.mul(w, s), gd.inverse[w]);
                let (j, _) = gd.root_perm[w][i];
                assert_eq!(conj, gd.reflection_of_root[j]);
            }
        }
    }
}
