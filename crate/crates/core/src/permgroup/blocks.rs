use std::fmt;

use super::{GroupError, PermGroup};

/// A `G`-invariant partition of the points into cells of equal size.
///
/// Blocks are kept sorted internally and ordered by their smallest point.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockSystem {
    blocks: Vec<Vec<usize>>,
}

impl BlockSystem {
    fn from_labels(labels: &[usize]) -> Self {
        let n = labels.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (p, &r) in labels.iter().enumerate() {
            by_root[r].push(p);
        }
        let mut blocks: Vec<Vec<usize>> = by_root.into_iter().filter(|b| !b.is_empty()).collect();
        blocks.sort_unstable_by_key(|b| b[0]);
        Self { blocks }
    }

    pub(crate) fn single(n: usize) -> Self {
        Self {
            blocks: vec![(0..n).collect()],
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_size(&self) -> usize {
        self.blocks[0].len()
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Index of the block containing each point.
    pub fn block_index(&self) -> Vec<usize> {
        let n: usize = self.blocks.iter().map(Vec::len).sum();
        let mut idx = vec![0; n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &p in block {
                idx[p] = b;
            }
        }
        idx
    }

    pub fn is_trivial(&self) -> bool {
        self.block_size() == 1 || self.block_count() == 1
    }

    /// Checks that every generator maps blocks onto blocks.
    pub fn is_invariant_under(&self, group: &PermGroup) -> bool {
        let idx = self.block_index();
        group.generators().iter().all(|g| {
            self.blocks.iter().all(|block| {
                let target = idx[g.image(block[0])];
                block.iter().all(|&p| idx[g.image(p)] == target)
            })
        })
    }

    pub fn blocks_one_based(&self) -> Vec<Vec<usize>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|p| p + 1).collect())
            .collect()
    }
}

impl fmt::Debug for BlockSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.blocks_one_based())
    }
}

/// Minimal nontrivial block systems of a transitive group.
#[derive(Clone, Debug)]
pub struct BlockAnalysis {
    pub systems: Vec<BlockSystem>,
    pub primitive: bool,
}

impl PermGroup {
    /// Finest block system in which `a` and `b` share a block.
    pub fn finest_block_system(&self, a: usize, b: usize) -> BlockSystem {
        let n = self.degree();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut pending = vec![(a, b)];
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
        while let Some((x, y)) = pending.pop() {
            for g in self.generators() {
                let u = find(&mut parent, g.image(x));
                let v = find(&mut parent, g.image(y));
                if u != v {
                    parent[u.max(v)] = u.min(v);
                    pending.push((u, v));
                }
            }
        }
        let labels: Vec<usize> = (0..n).map(|p| find(&mut parent, p)).collect();
        BlockSystem::from_labels(&labels)
    }

    /// All minimal nontrivial block systems, sorted by block size and then
    /// lexicographically; the group is primitive iff the list is empty.
    pub fn block_systems(&self) -> Result<BlockAnalysis, GroupError> {
        if !self.is_transitive() {
            return Err(GroupError::NotTransitive);
        }
        let n = self.degree();
        let mut candidates: Vec<BlockSystem> = (1..n)
            .map(|w| self.finest_block_system(0, w))
            .filter(|s| s.block_count() > 1)
            .collect();
        candidates.sort();
        candidates.dedup();
        // a system is minimal when no other candidate block through 0 is a
        // proper subset of its block through 0
        let minimal: Vec<BlockSystem> = candidates
            .iter()
            .filter(|s| {
                let mine = &s.blocks[0];
                !candidates.iter().any(|t| {
                    let theirs = &t.blocks[0];
                    theirs.len() < mine.len()
                        && theirs.iter().all(|p| mine.binary_search(p).is_ok())
                })
            })
            .cloned()
            .collect();
        let mut systems = minimal;
        systems.sort_by(|x, y| x.block_size().cmp(&y.block_size()).then_with(|| x.cmp(y)));
        Ok(BlockAnalysis {
            primitive: systems.is_empty(),
            systems,
        })
    }

    pub fn is_primitive(&self) -> Result<bool, GroupError> {
        Ok(self.block_systems()?.primitive)
    }
}
