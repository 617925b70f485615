use std::collections::{HashSet, VecDeque};

use super::{FiniteGroup, GroupError, Subgroup, MAX_LATTICE_ORDER};

impl FiniteGroup {
    /// Every normal subgroup, sorted by order then member set.
    ///
    /// Each normal subgroup is a product of normal closures of conjugacy
    /// classes, so the join-closure of those closures is complete.
    pub fn normal_subgroups(&self) -> Vec<Subgroup> {
        let classes = self.conjugacy_classes(&self.whole());
        let mut atoms: Vec<Subgroup> = classes
            .classes()
            .iter()
            .skip(1)
            .map(|c| self.subgroup_generated(c))
            .collect();
        atoms.sort();
        atoms.dedup();
        join_closure(self, &atoms)
    }

    /// Every subgroup of `h`, built by joining cyclic subgroups.
    pub fn subgroups_within(&self, h: &Subgroup) -> Result<Vec<Subgroup>, GroupError> {
        if h.order() > MAX_LATTICE_ORDER {
            return Err(GroupError::LatticeTooLarge {
                order: h.order(),
                bound: MAX_LATTICE_ORDER,
            });
        }
        let mut cyclic: Vec<Subgroup> = h
            .members()
            .iter()
            .skip(1)
            .map(|&x| self.subgroup_generated(&[x]))
            .collect();
        cyclic.sort();
        cyclic.dedup();
        Ok(join_closure(self, &cyclic))
    }
}

fn join_closure(group: &FiniteGroup, atoms: &[Subgroup]) -> Vec<Subgroup> {
    let atom_gens: Vec<Vec<usize>> = atoms.iter().map(|a| group.generating_set(a)).collect();
    let trivial = group.trivial();
    let mut seen: HashSet<Subgroup> = HashSet::from([trivial.clone()]);
    let mut out = vec![trivial.clone()];
    let mut queue: VecDeque<(Subgroup, Vec<usize>)> = VecDeque::from([(trivial, Vec::new())]);
    while let Some((current, gens)) = queue.pop_front() {
        for (atom, agens) in atoms.iter().zip(&atom_gens) {
            if atom.is_subset_of(&current) {
                continue;
            }
            let mut seed = gens.clone();
            seed.extend(agens.iter().copied().filter(|&x| !current.contains(x)));
            let joined = group.subgroup_generated(&seed);
            if seen.insert(joined.clone()) {
                out.push(joined.clone());
                queue.push_back((joined, seed));
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::super::tests::{cyclic, mat, pauli_x, pauli_z, quaternion_gens, symmetric3};
    use super::*;
    use crate::cyclotomic::{CycMatrix, Cyclotomic};

    /// All subgroups by subset enumeration; only viable for tiny groups.
    fn brute_force_subgroups(g: &FiniteGroup, require_normal: bool) -> Vec<Subgroup> {
        let n = g.order();
        assert!(n <= 24);
        let mut out = Vec::new();
        if require_normal {
            // Normal subgroups are unions of classes containing the identity class.
            let classes = g.conjugacy_classes(&g.whole());
            let k = classes.len();
            for mask in 0u64..(1 << (k - 1)) {
                let mut members: Vec<usize> = classes.class(0).to_vec();
                for c in 1..k {
                    if mask >> (c - 1) & 1 == 1 {
                        members.extend_from_slice(classes.class(c));
                    }
                }
                members.sort_unstable();
                if g.is_subgroup(&members) {
                    out.push(Subgroup::from_sorted(members));
                }
            }
        } else {
            assert!(n <= 16);
            for mask in 0u64..(1 << (n - 1)) {
                let members: Vec<usize> = std::iter::once(0)
                    .chain((1..n).filter(|&x| mask >> (x - 1) & 1 == 1))
                    .collect();
                if g.is_subgroup(&members) {
                    out.push(Subgroup::from_sorted(members));
                }
            }
        }
        out.sort();
        out
    }

    fn z4_by_z4() -> FiniteGroup {
        let i = |k| Cyclotomic::root_of_unity(4, k);
        let a = CycMatrix::diagonal(&[i(1), i(0)]).unwrap();
        let b = CycMatrix::diagonal(&[i(0), i(1)]).unwrap();
        FiniteGroup::close_generators(&[a, b], 64).unwrap()
    }

    fn dihedral(n: u32) -> FiniteGroup {
        let r = CycMatrix::diagonal(&[
            Cyclotomic::root_of_unity(n, 1),
            Cyclotomic::root_of_unity(n, -1),
        ])
        .unwrap();
        let s = mat(1, &[&[(0, 0), (1, 0)], &[(1, 0), (0, 0)]]);
        FiniteGroup::close_generators(&[r, s], 64).unwrap()
    }

    #[test]
    fn abelian_groups_all_subgroups_normal() {
        for g in [cyclic(12), z4_by_z4()] {
            let normal = g.normal_subgroups();
            assert_eq!(normal, brute_force_subgroups(&g, false));
            assert_eq!(g.subgroups_within(&g.whole()).unwrap(), normal);
        }
        assert_eq!(z4_by_z4().normal_subgroups().len(), 15);
    }

    #[test]
    fn quaternion_and_dihedral_order_8() {
        let q8 = FiniteGroup::close_generators(&quaternion_gens(), 64).unwrap();
        let d4 = FiniteGroup::close_generators(&[pauli_x(), pauli_z()], 64).unwrap();
        for g in [q8, d4] {
            let normal = g.normal_subgroups();
            assert_eq!(normal.len(), 6);
            assert_eq!(normal, brute_force_subgroups(&g, true));
        }
    }

    #[test]
    fn small_nonabelian_lattices_match_brute_force() {
        for g in [symmetric3(), dihedral(6), dihedral(12)] {
            let normal = g.normal_subgroups();
            assert_eq!(normal, brute_force_subgroups(&g, true));
            for h in &normal {
                assert_eq!(g.order() % h.order(), 0);
                assert!(g.is_normal(h));
            }
        }
        let s3 = symmetric3();
        assert_eq!(s3.subgroups_within(&s3.whole()).unwrap().len(), 6);
        let d6 = dihedral(6);
        assert_eq!(d6.subgroups_within(&d6.whole()).unwrap(), brute_force_subgroups(&d6, false));
    }

    #[test]
    fn klein_and_cyclic_lattices() {
        let i = |k| Cyclotomic::root_of_unity(2, k);
        let a = CycMatrix::diagonal(&[i(1), i(0)]).unwrap();
        let b = CycMatrix::diagonal(&[i(0), i(1)]).unwrap();
        let v4 = FiniteGroup::close_generators(&[a, b], 8).unwrap();
        let subs = v4.subgroups_within(&v4.whole()).unwrap();
        assert_eq!(subs.iter().map(Subgroup::order).collect::<Vec<_>>(), vec![1, 2, 2, 2, 4]);
        let c6 = cyclic(6);
        let orders: Vec<usize> = c6.subgroups_within(&c6.whole()).unwrap().iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 2, 3, 6]);
    }
}
