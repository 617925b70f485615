//! Finite matrix groups enumerated by closure, with structural queries.

mod lattice;
mod subgroup;

use std::collections::HashMap;

use num_integer::Integer;
use thiserror::Error;

use crate::cyclotomic::{CycMatrix, CyclotomicError};

pub use subgroup::{ConjugacyClassSet, Subgroup};

/// Default ceiling for closure enumeration.
pub const DEFAULT_MAX_ORDER: usize = 2048;

/// Largest subgroup whose full subgroup lattice is enumerated.
pub const MAX_LATTICE_ORDER: usize = 4096;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("no generators supplied")]
    NoGenerators,
    #[error("generator {0} is not a square matrix of the common size")]
    BadShape(usize),
    #[error("generator {0} is not unitary")]
    NotUnitary(usize),
    #[error("closure exceeded {0} elements")]
    TooLarge(usize),
    #[error("subgroup of order {order} exceeds the lattice bound {bound}")]
    LatticeTooLarge { order: usize, bound: usize },
    #[error(transparent)]
    Cyclotomic(#[from] CyclotomicError),
}

/// A finite group of unitary cyclotomic matrices with its Cayley table.
///
/// Elements are numbered breadth-first from the identity (index 0), each new
/// element being `parent · generator` with generators tried in input order.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    elements: Vec<CycMatrix>,
    index: HashMap<CycMatrix, usize>,
    mul: Vec<u32>,
    inv: Vec<usize>,
    /// `(parent, generator)` for every non-identity element.
    parent: Vec<Option<(usize, usize)>>,
    generators: Vec<usize>,
    exponent: u64,
    degree: usize,
}

impl FiniteGroup {
    /// Multiplicative closure of `gens`.
    ///
    /// Matrices are re-expressed over the lcm of their entry order and the
    /// group exponent once the closure is known.
    pub fn close_generators(gens: &[CycMatrix], max_order: usize) -> Result<Self, GroupError> {
        let first = gens.first().ok_or(GroupError::NoGenerators)?;
        let d = first.rows();
        let order = gens.iter().fold(1u32, |acc, g| acc.lcm(&g.order()));
        let mut embedded = Vec::with_capacity(gens.len());
        for (i, g) in gens.iter().enumerate() {
            if !g.is_square() || g.rows() != d {
                return Err(GroupError::BadShape(i));
            }
            let g = g.embed(order)?;
            if !g.is_unitary() {
                return Err(GroupError::NotUnitary(i));
            }
            embedded.push(g);
        }

        let k = embedded.len();
        let identity = CycMatrix::identity(d, order);
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::from([(identity, 0usize)]);
        let mut parent = vec![None];
        let mut rmul: Vec<usize> = Vec::new();
        let mut next = 0;
        while next < elements.len() {
            for (s, g) in embedded.iter().enumerate() {
                let prod = &elements[next] * g;
                let idx = match index.get(&prod) {
                    Some(&i) => i,
                    None => {
                        let i = elements.len();
                        if i >= max_order {
                            return Err(GroupError::TooLarge(max_order));
                        }
                        index.insert(prod.clone(), i);
                        elements.push(prod);
                        parent.push(Some((next, s)));
                        i
                    }
                };
                rmul.push(idx);
            }
            next += 1;
        }

        let n = elements.len();
        // g·h = (g·parent(h))·s, filled in breadth-first order of h.
        let mut mul = vec![0u32; n * n];
        for g in 0..n {
            mul[g * n] = g as u32;
        }
        for h in 1..n {
            let (ph, s) = parent[h].expect("non-identity has a parent");
            for g in 0..n {
                let gp = mul[g * n + ph] as usize;
                mul[g * n + h] = rmul[gp * k + s] as u32;
            }
        }
        let mut inv = vec![0usize; n];
        for g in 0..n {
            inv[g] = (0..n)
                .find(|&h| mul[g * n + h] == 0)
                .expect("finite closure has inverses");
        }
        let generators = (0..k).map(|s| rmul[s]).collect();

        let mut group = FiniteGroup {
            elements,
            index,
            mul,
            inv,
            parent,
            generators,
            exponent: 1,
            degree: d,
        };
        group.exponent = (0..n).fold(1u64, |acc, g| acc.lcm(&group.element_order(g)));
        let ambient = (order as u64).lcm(&group.exponent) as u32;
        if ambient != order {
            group.elements = group
                .elements
                .iter()
                .map(|m| m.embed(ambient))
                .collect::<Result<_, _>>()?;
            group.index = group
                .elements
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, m)| (m, i))
                .collect();
        }
        Ok(group)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Matrix size.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Cyclotomic order shared by every element matrix.
    pub fn cyclotomic_order(&self) -> u32 {
        self.elements[0].order()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `g · x · g⁻¹`.
    #[inline]
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, g: usize, k: u64) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, g);
        }
        acc
    }

    pub fn element(&self, g: usize) -> &CycMatrix {
        &self.elements[g]
    }

    pub fn elements(&self) -> &[CycMatrix] {
        &self.elements
    }

    pub fn index_of(&self, m: &CycMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn element_order(&self, g: usize) -> u64 {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Generator word of `g` as generator positions, left to right.
    pub fn word(&self, g: usize) -> Vec<usize> {
        let mut word = Vec::new();
        let mut x = g;
        while let Some((p, s)) = self.parent[x] {
            word.push(s);
            x = p;
        }
        word.reverse();
        word
    }

    /// Word rendered as `g1*g2*...`; the identity is `1`.
    pub fn word_string(&self, g: usize) -> String {
        let w = self.word(g);
        if w.is_empty() {
            return "1".to_string();
        }
        w.iter()
            .map(|s| format!("g{}", s + 1))
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted((0..self.order()).collect())
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup::from_sorted(vec![0])
    }

    pub fn center(&self) -> Subgroup {
        let n = self.order();
        let members = (0..n)
            .filter(|&z| {
                self.generators
                    .iter()
                    .all(|&g| self.mul(z, g) == self.mul(g, z))
            })
            .collect();
        Subgroup::from_sorted(members)
    }

    /// Smallest subgroup containing `seed`.
    pub fn subgroup_generated(&self, seed: &[usize]) -> Subgroup {
        let n = self.order();
        let mut mask = vec![false; n];
        mask[0] = true;
        let mut list = vec![0usize];
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for &s in seed {
                let y = self.mul(x, s);
                if !mask[y] {
                    mask[y] = true;
                    list.push(y);
                }
            }
            i += 1;
        }
        list.sort_unstable();
        Subgroup::from_sorted(list)
    }

    /// Smallest normal subgroup containing `seed`.
    pub fn normal_closure(&self, seed: &[usize]) -> Subgroup {
        let mut conjugates: Vec<usize> = seed
            .iter()
            .flat_map(|&x| (0..self.order()).map(move |g| (g, x)))
            .map(|(g, x)| self.conjugate(g, x))
            .collect();
        conjugates.sort_unstable();
        conjugates.dedup();
        self.subgroup_generated(&conjugates)
    }

    /// `⟨a ∪ b⟩`.
    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut seed = self.generating_set(a);
        seed.extend(self.generating_set(b));
        self.subgroup_generated(&seed)
    }

    /// A small generating set, chosen greedily in element-index order.
    pub fn generating_set(&self, h: &Subgroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = self.trivial();
        for &x in h.members() {
            if current.order() == h.order() {
                break;
            }
            if !current.contains(x) {
                gens.push(x);
                current = self.subgroup_generated(&gens);
            }
        }
        gens
    }

    pub fn is_subgroup(&self, members: &[usize]) -> bool {
        let set: std::collections::HashSet<usize> = members.iter().copied().collect();
        set.contains(&0)
            && members
                .iter()
                .all(|&a| set.contains(&self.inv(a)) && members.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.generators
            .iter()
            .all(|&g| h.members().iter().all(|&x| h.contains(self.conjugate(g, x))))
    }

    pub fn is_abelian(&self, h: &Subgroup) -> bool {
        let m = h.members();
        m.iter()
            .enumerate()
            .all(|(i, &a)| m[i + 1..].iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Least common multiple of element orders in `h`.
    pub fn subgroup_exponent(&self, h: &Subgroup) -> u64 {
        h.members()
            .iter()
            .fold(1u64, |acc, &x| acc.lcm(&self.element_order(x)))
    }

    pub fn is_cyclic(&self, h: &Subgroup) -> bool {
        h.members()
            .iter()
            .any(|&x| self.element_order(x) as usize == h.order())
    }

    /// Orbits of `h` acting on itself by conjugation.
    pub fn conjugacy_classes(&self, h: &Subgroup) -> ConjugacyClassSet {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for &x in h.members() {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut class: Vec<usize> = h
                .members()
                .iter()
                .map(|&g| self.conjugate(g, x))
                .collect();
            class.sort_unstable();
            class.dedup();
            for &y in &class {
                class_of[y] = id;
            }
            classes.push(class);
        }
        ConjugacyClassSet::new(classes, class_of)
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        Subgroup::from_sorted(
            a.members()
                .iter()
                .copied()
                .filter(|&x| b.contains(x))
                .collect(),
        )
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::cyclotomic::Cyclotomic;

    pub fn mat(order: u32, rows: &[&[(i64, i64)]]) -> CycMatrix {
        // (sign, power) pairs; sign 0 means a zero entry.
        CycMatrix::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&(s, p)| {
                            if s == 0 {
                                Cyclotomic::zero(order)
                            } else {
                                let x = Cyclotomic::root_of_unity(order, p);
                                if s < 0 {
                                    -x
                                } else {
                                    x
                                }
                            }
                        })
                        .collect()
                })
                .collect(),
        )
        .unwrap()
    }

    pub fn pauli_x() -> CycMatrix {
        mat(4, &[&[(0, 0), (1, 0)], &[(1, 0), (0, 0)]])
    }

    pub fn pauli_z() -> CycMatrix {
        mat(4, &[&[(1, 0), (0, 0)], &[(0, 0), (-1, 0)]])
    }

    /// ⟨iX, iZ⟩ ≅ Q8.
    pub fn quaternion_gens() -> Vec<CycMatrix> {
        let i = Cyclotomic::root_of_unity(4, 1);
        vec![pauli_x().scale(&i), pauli_z().scale(&i)]
    }

    pub fn cyclic(n: u32) -> FiniteGroup {
        let g = CycMatrix::diagonal(&[Cyclotomic::root_of_unity(n, 1)]).unwrap();
        FiniteGroup::close_generators(&[g], 64).unwrap()
    }

    /// S3 as 3x3 permutation matrices.
    pub fn symmetric3() -> FiniteGroup {
        let a = mat(1, &[&[(0, 0), (1, 0), (0, 0)], &[(0, 0), (0, 0), (1, 0)], &[(1, 0), (0, 0), (0, 0)]]);
        let b = mat(1, &[&[(0, 0), (1, 0), (0, 0)], &[(1, 0), (0, 0), (0, 0)], &[(0, 0), (0, 0), (1, 0)]]);
        FiniteGroup::close_generators(&[a, b], 64).unwrap()
    }

    #[test]
    fn trivial_closure() {
        let g = FiniteGroup::close_generators(&[CycMatrix::identity(3, 1)], 10).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.center().order(), 1);
    }

    #[test]
    fn closure_errors() {
        assert!(matches!(
            FiniteGroup::close_generators(&[], 10),
            Err(GroupError::NoGenerators)
        ));
        let two = CycMatrix::scalar(2, &Cyclotomic::from_int(1, 2));
        assert!(matches!(
            FiniteGroup::close_generators(&[two], 10),
            Err(GroupError::NotUnitary(0))
        ));
        let z = CycMatrix::diagonal(&[Cyclotomic::root_of_unity(12, 1)]).unwrap();
        assert!(matches!(
            FiniteGroup::close_generators(&[z], 5),
            Err(GroupError::TooLarge(5))
        ));
        assert!(matches!(
            FiniteGroup::close_generators(&[pauli_x(), CycMatrix::identity(3, 4)], 10),
            Err(GroupError::BadShape(1))
        ));
    }

    #[test]
    fn cayley_table_is_a_group_law() {
        for g in [symmetric3(), cyclic(6), FiniteGroup::close_generators(&quaternion_gens(), 64).unwrap()] {
            let n = g.order();
            for a in 0..n {
                let mut row: Vec<usize> = (0..n).map(|b| g.mul(a, b)).collect();
                let mut col: Vec<usize> = (0..n).map(|b| g.mul(b, a)).collect();
                row.sort_unstable();
                col.sort_unstable();
                assert_eq!(row, (0..n).collect::<Vec<_>>());
                assert_eq!(col, (0..n).collect::<Vec<_>>());
                assert_eq!(g.inv(g.inv(a)), a);
                assert_eq!(g.mul(a, 0), a);
                for b in 0..n {
                    assert_eq!(g.element(g.mul(a, b)), &(g.element(a) * g.element(b)));
                    for c in 0..n {
                        assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn words_evaluate_to_elements() {
        let g = symmetric3();
        for x in 0..g.order() {
            let value = g
                .word(x)
                .iter()
                .fold(0, |acc, &s| g.mul(acc, g.generators()[s]));
            assert_eq!(value, x);
        }
        assert_eq!(g.word_string(0), "1");
    }

    #[test]
    fn structure_queries() {
        let s3 = symmetric3();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.center().order(), 1);
        assert_eq!(s3.conjugacy_classes(&s3.whole()).len(), 3);
        assert_eq!(s3.exponent(), 6);
        assert!(!s3.is_abelian(&s3.whole()));

        let c6 = cyclic(6);
        assert_eq!(c6.center().order(), 6);
        assert_eq!(c6.conjugacy_classes(&c6.whole()).len(), 6);
        assert!(c6.is_cyclic(&c6.whole()));

        let q8 = FiniteGroup::close_generators(&quaternion_gens(), 64).unwrap();
        assert_eq!(q8.order(), 8);
        assert_eq!(q8.center().order(), 2);
        assert!(q8.is_normal(&q8.center()));
        assert!(q8.is_abelian(&q8.center()));
        assert_eq!(q8.subgroup_exponent(&q8.whole()), 4);
    }

    #[test]
    fn generated_subgroups() {
        let s3 = symmetric3();
        assert_eq!(s3.subgroup_generated(&[0]).order(), 1);
        let gens = s3.generating_set(&s3.whole());
        assert!(gens.len() <= 2);
        assert_eq!(s3.subgroup_generated(&gens), s3.whole());
        let a3 = s3.subgroup_generated(&[s3.generators()[0]]);
        assert_eq!(a3.order(), 3);
        assert!(s3.is_normal(&a3));
        let b = s3.subgroup_generated(&[s3.generators()[1]]);
        assert!(!s3.is_normal(&b));
        assert_eq!(s3.normal_closure(&[s3.generators()[1]]), s3.whole());
    }
}
