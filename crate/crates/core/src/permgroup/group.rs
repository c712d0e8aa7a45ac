use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use num_integer::Integer;
use num_rational::Ratio;

use super::classes::ClassTable;
use super::{GroupError, Permutation};

/// Largest group order we are willing to enumerate by default.
pub const DEFAULT_ORDER_CAP: usize = 1_000_000;

/// A finitely generated permutation group with its full element list.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    transitive: bool,
    classes: OnceLock<ClassTable>,
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermGroup {
    /// Enumerates the group generated by `gens` on `degree` points.
    ///
    /// Fails with [`GroupError::TooLarge`] as soon as the closure exceeds
    /// `order_cap` elements.
    pub fn generate(
        degree: usize,
        gens: Vec<Permutation>,
        order_cap: usize,
    ) -> Result<Self, GroupError> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
        let gens: Vec<Permutation> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        let id = Permutation::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0usize);
        let mut next = 0;
        while next < elements.len() {
            let current = elements[next].clone();
            next += 1;
            for g in &gens {
                let p = current.then(g);
                if !index.contains_key(&p) {
                    if elements.len() >= order_cap {
                        return Err(GroupError::TooLarge { cap: order_cap });
                    }
                    index.insert(p.clone(), elements.len());
                    elements.push(p);
                }
            }
        }
        let transitive = orbit_of(degree, &gens, 0).len() == degree;
        Ok(Self {
            degree,
            generators: gens,
            elements,
            index,
            transitive,
            classes: OnceLock::new(),
        })
    }

    /// Parses semicolon-separated cycle strings, e.g. `"(1,2);(1,2,3,4)"`.
    pub fn from_cycle_strings(
        degree: usize,
        gens: &str,
        order_cap: usize,
    ) -> Result<Self, GroupError> {
        let gens = gens
            .split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| Permutation::parse(s, degree))
            .collect::<Result<Vec<_>, _>>()?;
        Self::generate(degree, gens, order_cap)
    }

    /// The trivial group acting on `degree` points.
    pub fn trivial(degree: usize) -> Self {
        Self::generate(degree, Vec::new(), 1).expect("trivial group fits any cap")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn is_transitive(&self) -> bool {
        self.transitive
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        orbit_of(self.degree, &self.generators, point)
    }

    /// Lcm of the element orders.
    pub fn exponent(&self) -> u64 {
        self.classes()
            .classes()
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&c.element_order))
    }

    /// Minimal index over nontrivial elements.
    pub fn ind(&self) -> Result<u32, GroupError> {
        self.classes()
            .classes()
            .iter()
            .filter(|c| c.ind > 0)
            .map(|c| c.ind)
            .min()
            .ok_or(GroupError::TrivialGroup)
    }

    /// `a(G) = 1 / ind(G)` as an exact fraction.
    pub fn a_invariant(&self) -> Result<Ratio<u32>, GroupError> {
        Ok(Ratio::new(1, self.ind()?))
    }

    pub fn transpositions(&self) -> impl Iterator<Item = &Permutation> {
        self.elements.iter().filter(|p| p.is_transposition())
    }

    pub fn contains_transposition(&self) -> bool {
        self.transpositions().next().is_some()
    }

    /// Conjugacy classes, computed once and cached.
    pub fn classes(&self) -> &ClassTable {
        self.classes
            .get_or_init(|| ClassTable::conjugacy_classes(self))
    }

    /// Same element set, possibly different generators.
    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.degree == other.degree
            && self.order() == other.order()
            && other.elements.iter().all(|p| self.contains(p))
    }
}

pub(crate) fn orbit_of(degree: usize, gens: &[Permutation], point: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    let mut orbit = vec![point];
    seen[point] = true;
    let mut queue = VecDeque::from([point]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = g.image(p);
            if !seen[q] {
                seen[q] = true;
                orbit.push(q);
                queue.push_back(q);
            }
        }
    }
    orbit.sort_unstable();
    orbit
}
