use std::collections::VecDeque;

use num_integer::Integer;
use serde::Serialize;

use super::{GroupError, PermGroup, Permutation};

#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    pub representative: Permutation,
    pub size: usize,
    pub element_order: u64,
    pub ind: u32,
}

/// Conjugacy classes of a group, optionally fused into `k`-classes.
#[derive(Clone, Debug)]
pub struct ClassTable {
    classes: Vec<ConjugacyClass>,
    /// Class index of every element, in the group's element order.
    class_of: Vec<usize>,
    /// `merge_map[c]` is the fused class id of class `c`.
    merge_map: Option<Vec<usize>>,
}

impl ClassTable {
    pub(crate) fn conjugacy_classes(group: &PermGroup) -> Self {
        let elements = group.elements();
        let gens = group.generators();
        let mut class_of = vec![usize::MAX; elements.len()];
        let mut classes = Vec::new();
        for start in 0..elements.len() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_of[start] = id;
            let mut size = 1;
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for s in gens {
                    let c = elements[i].conjugate_by(s);
                    let j = group.index_of(&c).expect("group closed under conjugation");
                    if class_of[j] == usize::MAX {
                        class_of[j] = id;
                        size += 1;
                        queue.push_back(j);
                    }
                }
            }
            let rep = elements[start].clone();
            classes.push(ConjugacyClass {
                element_order: rep.order(),
                ind: rep.ind(),
                representative: rep,
                size,
            });
        }
        Self {
            classes,
            class_of,
            merge_map: None,
        }
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of_element(&self, element_index: usize) -> usize {
        self.class_of[element_index]
    }

    pub fn merge_map(&self) -> Option<&[usize]> {
        self.merge_map.as_deref()
    }

    /// Number of fused classes (plain classes when no merge map is set).
    pub fn merged_count(&self) -> usize {
        match &self.merge_map {
            Some(m) => m.iter().max().map_or(0, |&x| x + 1),
            None => self.classes.len(),
        }
    }
}

/// A subgroup `U` of `(Z/NZ)*` acting on classes through `g -> g^a`.
///
/// `U = (Z/NZ)*` models the base field `Q`; `U = {1}` models a base field
/// containing the `N`-th roots of unity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclotomicAction {
    modulus: u64,
    units: Vec<u64>,
}

impl CyclotomicAction {
    pub fn new(modulus: u64, mut units: Vec<u64>) -> Result<Self, GroupError> {
        if modulus == 0 {
            return Err(GroupError::InvalidAction("modulus must be positive".into()));
        }
        for u in units.iter_mut() {
            *u %= modulus;
        }
        units.sort_unstable();
        units.dedup();
        let one = 1 % modulus;
        if !units.contains(&one) {
            return Err(GroupError::InvalidAction(
                "unit subgroup must contain 1".into(),
            ));
        }
        for &u in &units {
            if u.gcd(&modulus) != 1 {
                return Err(GroupError::InvalidAction(format!(
                    "{u} is not a unit modulo {modulus}"
                )));
            }
            for &v in &units {
                if units.binary_search(&(u * v % modulus)).is_err() {
                    return Err(GroupError::InvalidAction(
                        "unit set is not closed under multiplication".into(),
                    ));
                }
            }
        }
        Ok(Self { modulus, units })
    }

    /// All of `(Z/NZ)*`: the rational base field.
    pub fn rationals(modulus: u64) -> Self {
        let units = (0..modulus.max(1))
            .filter(|a| a.gcd(&modulus) == 1)
            .collect::<Vec<_>>();
        Self::new(modulus, units).expect("full unit group is a subgroup")
    }

    /// `U = {1}`: base field containing the `N`-th roots of unity.
    pub fn with_roots_of_unity(modulus: u64) -> Self {
        Self::new(modulus, vec![1]).expect("trivial subgroup")
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn units(&self) -> &[u64] {
        &self.units
    }
}

impl PermGroup {
    /// Fuses conjugacy classes under the power maps of `act`.
    pub fn k_classes(&self, act: &CyclotomicAction) -> Result<ClassTable, GroupError> {
        let exponent = self.exponent();
        if !act.modulus().is_multiple_of(exponent) {
            return Err(GroupError::ModulusNotMultipleOfExponent {
                modulus: act.modulus(),
                exponent,
            });
        }
        let table = self.classes();
        let mut parent: Vec<usize> = (0..table.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (c, class) in table.classes().iter().enumerate() {
            for &a in act.units() {
                let power = class.representative.pow(a);
                let idx = self.index_of(&power).expect("powers stay in the group");
                let other = table.class_of_element(idx);
                let (ra, rb) = (find(&mut parent, c), find(&mut parent, other));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
        let mut label = vec![usize::MAX; table.len()];
        let mut merge = Vec::with_capacity(table.len());
        let mut next = 0;
        for c in 0..table.len() {
            let r = find(&mut parent, c);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            merge.push(label[r]);
        }
        let mut fused = table.clone();
        fused.merge_map = Some(merge);
        Ok(fused)
    }

    /// Number of `k`-classes of minimal index.
    pub fn b_invariant(&self, act: &CyclotomicAction) -> Result<usize, GroupError> {
        let ind = self.ind()?;
        let fused = self.k_classes(act)?;
        let merge = fused.merge_map().expect("k_classes sets the merge map");
        let mut ids: Vec<usize> = fused
            .classes()
            .iter()
            .enumerate()
            .filter(|(_, c)| c.ind == ind)
            .map(|(i, _)| merge[i])
            .collect();
        ids.sort_unstable();
        ids.dedup();
        Ok(ids.len())
    }

    /// `b(Q, G)`, using the group exponent as modulus.
    pub fn b_rational(&self) -> Result<usize, GroupError> {
        self.b_invariant(&CyclotomicAction::rationals(self.exponent()))
    }
}

#[cfg(test)]
mod tests {
    use super::super::DEFAULT_ORDER_CAP;
    use super::*;

    fn group(degree: usize, gens: &str) -> PermGroup {
        PermGroup::from_cycle_strings(degree, gens, DEFAULT_ORDER_CAP).unwrap()
    }

    fn sizes(g: &PermGroup) -> Vec<usize> {
        let mut s: Vec<usize> = g.classes().classes().iter().map(|c| c.size).collect();
        s.sort_unstable();
        s
    }

    #[test]
    fn class_examples() {
        assert_eq!(sizes(&group(3, "(1,2);(1,2,3)")), vec![1, 2, 3]);
        assert_eq!(sizes(&group(4, "(1,2,3,4)")), vec![1, 1, 1, 1]);
        // D4 in S4: {e}, {(13)(24)}, two reflections classes, the 4-cycles
        assert_eq!(sizes(&group(4, "(1,2,3,4);(1,3)")), vec![1, 1, 2, 2, 2]);
    }

    #[test]
    fn k_class_examples() {
        let c3 = group(3, "(1,2,3)");
        assert_eq!(
            c3.k_classes(&CyclotomicAction::rationals(3))
                .unwrap()
                .merged_count(),
            2
        );
        assert_eq!(
            c3.k_classes(&CyclotomicAction::with_roots_of_unity(3))
                .unwrap()
                .merged_count(),
            3
        );
        let c4 = group(4, "(1,2,3,4)");
        assert_eq!(
            c4.k_classes(&CyclotomicAction::rationals(4))
                .unwrap()
                .merged_count(),
            3
        );
    }

    #[test]
    fn b_examples() {
        let c3 = group(3, "(1,2,3)");
        assert_eq!(c3.b_invariant(&CyclotomicAction::rationals(3)).unwrap(), 1);
        assert_eq!(
            c3.b_invariant(&CyclotomicAction::with_roots_of_unity(3))
                .unwrap(),
            2
        );
        let v4 = group(4, "(1,2)(3,4);(1,3)(2,4)");
        assert_eq!(v4.b_rational().unwrap(), 3);
        assert_eq!(group(4, "(1,2);(1,2,3,4)").b_rational().unwrap(), 1);
    }

    #[test]
    fn modulus_must_be_multiple_of_exponent() {
        let c4 = group(4, "(1,2,3,4)");
        assert!(matches!(
            c4.k_classes(&CyclotomicAction::rationals(6)),
            Err(GroupError::ModulusNotMultipleOfExponent { .. })
        ));
        // a multiple works and gives the same fusion
        assert_eq!(
            c4.k_classes(&CyclotomicAction::rationals(8))
                .unwrap()
                .merged_count(),
            3
        );
    }

    #[test]
    fn invalid_actions() {
        assert!(CyclotomicAction::new(6, vec![5]).is_err());
        assert!(CyclotomicAction::new(6, vec![1, 2]).is_err());
        assert!(CyclotomicAction::new(8, vec![1, 3]).is_ok());
        assert!(CyclotomicAction::new(7, vec![1, 2]).is_err());
    }
}
