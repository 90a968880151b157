use std::collections::{BTreeMap, BTreeSet};

use super::CanonicalSolution;

/// Position of a canonical solution: `solutions[equation][index]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SolutionRef {
    pub equation: usize,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    members: Vec<SolutionRef>,
    support: BTreeSet<u64>,
}

impl Block {
    pub fn members(&self) -> &[SolutionRef] {
        &self.members
    }

    /// Union of the members' supports.
    pub fn support(&self) -> &BTreeSet<u64> {
        &self.support
    }

    /// `Σ_{x ∈ block} Π_{k ∈ S(x)} C(counts[k], o_k(x))`.
    pub fn exponent(&self, solutions: &[Vec<CanonicalSolution>], counts: &[usize]) -> u64 {
        self.members
            .iter()
            .map(|r| solutions[r.equation][r.index].weight(counts))
            .sum()
    }
}

/// Partition of all canonical solutions into blocks with pairwise disjoint
/// residue supports, each block connected through shared residues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicePartition {
    blocks: Vec<Block>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Connected components of solutions under "shares a residue", via
/// union-find over the residues `0..q`. Blocks are ordered by their
/// smallest residue.
pub fn indice_partition(solutions: &[Vec<CanonicalSolution>], q: u64) -> IndicePartition {
    let mut parent: Vec<usize> = (0..q as usize).collect();
    for sol in solutions.iter().flatten() {
        let mut support = sol.support();
        let Some(first) = support.next() else { continue };
        for k in support {
            let (a, b) = (find(&mut parent, first as usize), find(&mut parent, k as usize));
            parent[a] = b;
        }
    }
    let mut blocks: BTreeMap<usize, Block> = BTreeMap::new();
    for (e, sols) in solutions.iter().enumerate() {
        for (i, sol) in sols.iter().enumerate() {
            let root = find(&mut parent, sol.support().next().expect("solutions are nonempty") as usize);
            let block = blocks.entry(root).or_insert_with(|| Block {
                members: Vec::new(),
                support: BTreeSet::new(),
            });
            block.members.push(SolutionRef { equation: e, index: i });
            block.support.extend(sol.support());
        }
    }
    let mut blocks: Vec<Block> = blocks.into_values().collect();
    blocks.sort_by_key(|b| *b.support.first().expect("blocks are nonempty"));
    IndicePartition { blocks }
}

impl IndicePartition {
    /// The finest grouping: one block per solution. Supports may overlap, so
    /// this is not an indice partition; it only regroups the exponent sum.
    pub fn singletons(solutions: &[Vec<CanonicalSolution>]) -> Self {
        let blocks = solutions
            .iter()
            .enumerate()
            .flat_map(|(e, sols)| {
                sols.iter().enumerate().map(move |(i, sol)| Block {
                    members: vec![SolutionRef { equation: e, index: i }],
                    support: sol.support().collect(),
                })
            })
            .collect();
        IndicePartition { blocks }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Total exponent of `t` for the residue counts `counts[k] = a_k`.
    pub fn exponent(&self, solutions: &[Vec<CanonicalSolution>], counts: &[usize]) -> u64 {
        self.blocks
            .iter()
            .map(|b| b.exponent(solutions, counts))
            .sum()
    }

    /// Residues in `0..q` that no solution uses.
    pub fn free_residues(&self, q: u64) -> Vec<u64> {
        let used: BTreeSet<u64> = self.blocks.iter().flat_map(|b| b.support.iter().copied()).collect();
        (0..q).filter(|k| !used.contains(k)).collect()
    }

    /// Supports pairwise disjoint, and every solution in exactly one block.
    pub fn is_sound(&self, solutions: &[Vec<CanonicalSolution>]) -> bool {
        let mut seen_residues = BTreeSet::new();
        for b in &self.blocks {
            if !b.support.iter().all(|k| seen_residues.insert(*k)) {
                return false;
            }
        }
        let members: Vec<SolutionRef> = self.blocks.iter().flat_map(|b| b.members.iter().copied()).collect();
        let distinct: BTreeSet<SolutionRef> = members.iter().copied().collect();
        let total: usize = solutions.iter().map(Vec::len).sum();
        members.len() == total && distinct.len() == total
    }
}
