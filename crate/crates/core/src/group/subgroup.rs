use std::cmp::Ordering;

/// A subgroup, as a sorted set of element indices of its parent group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    pub(crate) fn from_sorted(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Subgroup { members }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.order() <= other.order() && self.members.iter().all(|&x| other.contains(x))
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }
}

/// Orders by size first, then by member list.
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.members.cmp(&other.members))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Conjugacy classes of a subgroup acting on itself.
///
/// Classes are listed by increasing least element, so the identity class is
/// always class 0; each representative is the least index in its class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClassSet {
    classes: Vec<Vec<usize>>,
    representatives: Vec<usize>,
    class_of: Vec<usize>,
}

impl ConjugacyClassSet {
    pub(crate) fn new(classes: Vec<Vec<usize>>, class_of: Vec<usize>) -> Self {
        let representatives = classes.iter().map(|c| c[0]).collect();
        ConjugacyClassSet {
            classes,
            representatives,
            class_of,
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &[usize] {
        &self.classes[i]
    }

    pub fn size(&self, i: usize) -> usize {
        self.classes[i].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn representative(&self, i: usize) -> usize {
        self.representatives[i]
    }

    /// Class index of `g`, or `None` when `g` is outside the subgroup.
    pub fn class_of(&self, g: usize) -> Option<usize> {
        self.class_of.get(g).copied().filter(|&c| c != usize::MAX)
    }

    /// Order of the subgroup the classes partition.
    pub fn group_order(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }
}
