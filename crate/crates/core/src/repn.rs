//! The defining representation of a matrix error group and its character.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::chartab::inner_product;
use crate::cyclotomic::{CycMatrix, Cyclotomic};
use crate::group::{ConjugacyClassSet, FiniteGroup, Subgroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepnError {
    #[error("central element {0} does not act as a scalar")]
    NonScalarCenter(usize),
    #[error("central character is not multiplicative at ({0}, {1})")]
    NotMultiplicative(usize, usize),
}

/// A unitary representation ρ of a finite matrix group, with character φ.
///
/// Normally ρ is the defining representation `g ↦ g`; [`UnitaryRep::with_images`]
/// allows any other assignment of matrices to the elements.
#[derive(Debug, Clone)]
pub struct UnitaryRep {
    group: FiniteGroup,
    images: Option<Vec<CycMatrix>>,
    classes: ConjugacyClassSet,
    center: Subgroup,
    character: Vec<Cyclotomic>,
}

impl UnitaryRep {
    pub fn new(group: FiniteGroup) -> Self {
        let character = group.elements().iter().map(CycMatrix::trace).collect();
        Self::build(group, None, character)
    }

    /// ρ given by one image matrix per element, in element order.
    pub fn with_images(group: FiniteGroup, images: Vec<CycMatrix>) -> Self {
        assert_eq!(images.len(), group.order(), "one image per element");
        let character = images.iter().map(CycMatrix::trace).collect();
        Self::build(group, Some(images), character)
    }

    fn build(group: FiniteGroup, images: Option<Vec<CycMatrix>>, character: Vec<Cyclotomic>) -> Self {
        let classes = group.conjugacy_classes(&group.whole());
        let center = group.center();
        UnitaryRep {
            group,
            images,
            classes,
            center,
            character,
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.matrix(0).rows()
    }

    pub fn matrix(&self, g: usize) -> &CycMatrix {
        match &self.images {
            Some(images) => &images[g],
            None => self.group.element(g),
        }
    }

    /// φ(g) = trace ρ(g).
    pub fn phi(&self, g: usize) -> &Cyclotomic {
        &self.character[g]
    }

    /// φ on every element, indexed by element.
    pub fn character_of(&self) -> &[Cyclotomic] {
        &self.character
    }

    pub fn classes(&self) -> &ConjugacyClassSet {
        &self.classes
    }

    pub fn center(&self) -> &Subgroup {
        &self.center
    }

    /// φ on the class representatives of G.
    pub fn class_values(&self) -> Vec<Cyclotomic> {
        self.restrict(&self.classes)
    }

    /// φ restricted to a subgroup, one value per class of `classes`.
    pub fn restrict(&self, classes: &ConjugacyClassSet) -> Vec<Cyclotomic> {
        classes
            .representatives()
            .iter()
            .map(|&g| self.character[g].clone())
            .collect()
    }

    /// `ρ(s·g) = ρ(s)·ρ(g)` for every generator `s` and element `g`.
    pub fn is_homomorphism(&self) -> bool {
        let g = &self.group;
        g.generators().iter().all(|&s| {
            (0..g.order()).all(|x| self.matrix(g.mul(s, x)) == &(self.matrix(s) * self.matrix(x)))
        })
    }

    pub fn verify_error_group(&self) -> ErrorGroupCert {
        let d = self.degree() as u64;
        let identities = (0..self.group.order())
            .filter(|&g| self.matrix(g).is_identity())
            .count();
        let phi = self.class_values();
        let norm = inner_product(&self.classes, &phi, &phi);
        let center_order = self.center.order() as u64;
        let index = self.group.order() as u64 / center_order;
        ErrorGroupCert {
            degree: d,
            group_order: self.group.order() as u64,
            center_order,
            index,
            faithful: identities == 1,
            irreducible: norm.is_one(),
            degree_squared_equals_index: d * d == index,
        }
    }

    /// α with `ρ(z) = α(z)·I` on the center.
    pub fn central_character(&self) -> Result<CentralCharacter, RepnError> {
        let mut values = BTreeMap::new();
        for &z in self.center.members() {
            let alpha = self
                .matrix(z)
                .as_scalar()
                .ok_or(RepnError::NonScalarCenter(z))?;
            values.insert(z, alpha);
        }
        for &a in self.center.members() {
            for &b in self.center.members() {
                let ab = self.group.mul(a, b);
                if values[&ab] != &values[&a] * &values[&b] {
                    return Err(RepnError::NotMultiplicative(a, b));
                }
            }
        }
        Ok(CentralCharacter { values })
    }
}

/// Outcome of checking the error-group axioms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrorGroupCert {
    pub degree: u64,
    pub group_order: u64,
    pub center_order: u64,
    pub index: u64,
    pub faithful: bool,
    pub irreducible: bool,
    pub degree_squared_equals_index: bool,
}

impl ErrorGroupCert {
    pub fn is_valid(&self) -> bool {
        self.faithful && self.irreducible && self.degree_squared_equals_index
    }
}

/// The scalars by which central elements act.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralCharacter {
    values: BTreeMap<usize, Cyclotomic>,
}

impl CentralCharacter {
    pub fn alpha(&self, z: usize) -> Option<&Cyclotomic> {
        self.values.get(&z)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Cyclotomic)> {
        self.values.iter().map(|(&z, a)| (z, a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::tests::{cyclic, pauli_x, pauli_z};

    #[test]
    fn pauli_group_is_an_error_group() {
        let g = FiniteGroup::close_generators(&[pauli_x(), pauli_z()], 16).unwrap();
        let rep = UnitaryRep::new(g);
        let cert = rep.verify_error_group();
        assert!(cert.is_valid(), "{cert:?}");
        assert_eq!((cert.degree, cert.center_order, cert.index), (2, 2, 4));
        assert!(rep.is_homomorphism());
        let alpha = rep.central_character().unwrap();
        assert!(alpha.alpha(0).unwrap().is_one());
        for (_, a) in alpha.iter() {
            assert!(a.abs_squared().is_one());
        }
        assert_eq!(rep.class_values()[0].to_i64(), Some(2));
    }

    #[test]
    fn trivial_rep_of_c2_fails() {
        let c2 = cyclic(2);
        let images = vec![CycMatrix::identity(1, 2); 2];
        let rep = UnitaryRep::with_images(c2, images);
        assert!(rep.is_homomorphism());
        let cert = rep.verify_error_group();
        assert!(!cert.faithful);
        assert!(cert.irreducible);
        // C2 is abelian, so [G:Z(G)] = 1 = d² holds; faithfulness alone fails.
        assert!(cert.degree_squared_equals_index);
        assert!(!cert.is_valid());
    }

    #[test]
    fn identity_group_of_degree_two_is_reducible() {
        let g = FiniteGroup::close_generators(&[CycMatrix::identity(2, 1)], 4).unwrap();
        let cert = UnitaryRep::new(g).verify_error_group();
        assert!(cert.faithful);
        assert!(!cert.irreducible);
        assert!(!cert.degree_squared_equals_index);
    }

    #[test]
    fn restriction_to_trivial_subgroup() {
        let g = FiniteGroup::close_generators(&[pauli_x(), pauli_z()], 16).unwrap();
        let rep = UnitaryRep::new(g);
        let triv = rep.group().trivial();
        let classes = rep.group().conjugacy_classes(&triv);
        assert_eq!(rep.restrict(&classes), vec![Cyclotomic::from_int(4, 2)]);
        assert_eq!(rep.restrict(rep.classes()), rep.class_values());
    }
}
