use serde::{Deserialize, Serialize};

/// Index of an element in its group's enumeration order.
pub type ElemId = u32;

/// An explicit subgroup (or raw element set): sorted, deduplicated member
/// ids plus the generators it was closed from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subgroup {
    pub members: Vec<ElemId>,
    pub generators: Vec<ElemId>,
}

impl Subgroup {
    pub fn trivial() -> Self {
        Subgroup { members: vec![0], generators: Vec::new() }
    }

    /// Wraps an arbitrary id list as a set; sorts and deduplicates.
    pub fn from_members(mut members: Vec<ElemId>, generators: Vec<ElemId>) -> Self {
        members.sort_unstable();
        members.dedup();
        Subgroup { members, generators }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: ElemId) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        is_sorted_subset(&self.members, &other.members)
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() <= 1
    }

    /// First member of `self` missing from `other`.
    pub fn first_outside(&self, other: &Subgroup) -> Option<ElemId> {
        self.members.iter().copied().find(|&x| !other.contains(x))
    }

    pub fn same_members(&self, other: &Subgroup) -> bool {
        self.members == other.members
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let members: Vec<ElemId> = self.members.iter().copied().filter(|&x| other.contains(x)).collect();
        Subgroup { members, generators: Vec::new() }
    }
}

pub(crate) fn is_sorted_subset(small: &[ElemId], big: &[ElemId]) -> bool {
    let mut it = big.iter();
    'outer: for x in small {
        for y in it.by_ref() {
            if y == x {
                continue 'outer;
            }
            if y > x {
                return false;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_and_outside() {
        let a = Subgroup::from_members(vec![4, 0, 2, 2], vec![]);
        let b = Subgroup::from_members(vec![0, 1, 2, 3, 4], vec![]);
        assert_eq!(a.members, vec![0, 2, 4]);
        assert!(a.is_subset_of(&b));
        assert!(!b.is_subset_of(&a));
        assert_eq!(b.first_outside(&a), Some(1));
        assert_eq!(a.intersection(&Subgroup::from_members(vec![0, 4, 5], vec![])).members, vec![0, 4]);
    }
}
