//! Blocks of a bounded lattice and decompositions into independent blocks.
//!
//! A block is a proper sublattice `K` with at least one element other than
//! the bounds, such that every non-bound member drags in everything it is
//! comparable to (bounds excepted). A block is *complete* when it holds both
//! bounds and *minimal* when it contains no smaller block.
//!
//! Block membership spreads along comparability, so the smallest block
//! containing an element `k` is the closure of `{k}` under "add comparable
//! non-bound elements" and "add meets and joins". That closure is always a
//! minimal block (or the whole lattice, in which case no block exists at
//! all), and the minimal blocks partition the non-bound elements.

use std::collections::VecDeque;

use thiserror::Error;

use crate::lattice::{BoundedLattice, ElementSet, LatticeError, MIN_BLOCK_LATTICE_SIZE};
use crate::partitions::set_partitions;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BlockError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("block must be a proper subset of the lattice")]
    NotProper,
    #[error("block must contain an element other than the bounds")]
    OnlyBounds,
    #[error("not a sublattice: {op} of `{left}` and `{right}` is `{result}`, which is missing")]
    NotSublattice {
        left: String,
        right: String,
        op: &'static str,
        result: String,
    },
    #[error("`{missing}` is comparable to member `{member}` but is missing")]
    NotConvex { member: String, missing: String },
    #[error("`{0}` is a bound of the lattice")]
    BoundElement(String),
    #[error("the smallest block around `{0}` would be the whole lattice")]
    WholeLattice(String),
    #[error("lattice has no blocks: every block candidate around `{0}` is the whole lattice")]
    NoBlocks(String),
    #[error("blocks belong to different lattices")]
    DifferentCarrier,
    #[error("empty block family")]
    EmptyFamily,
    #[error("no complete block in the family")]
    NoCompleteBlock,
    #[error("union of the family is the whole lattice")]
    UnionIsWholeLattice,
    #[error("everything outside the block is a bound")]
    ComplementTrivial,
    #[error("a decomposition needs at least two blocks, got {0}")]
    TooFewBlocks(usize),
    #[error("blocks {first} and {second} share the non-bound element `{shared}`")]
    NotIndependent {
        first: usize,
        second: usize,
        shared: String,
    },
    #[error("element `{0}` is in no block of the family")]
    Uncovered(String),
}

/// A certified block of a lattice.
#[derive(Debug, Clone)]
pub struct Block<'a> {
    lattice: &'a BoundedLattice,
    members: ElementSet,
    minimal: bool,
    complete: bool,
}

impl PartialEq for Block<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.lattice, other.lattice) && self.members == other.members
    }
}

impl Eq for Block<'_> {}

impl<'a> Block<'a> {
    /// Checks every block condition and computes the minimal/complete flags.
    pub fn certify(lattice: &'a BoundedLattice, members: ElementSet) -> Result<Self, BlockError> {
        check_block(lattice, &members)?;
        let complete = members.contains(&lattice.bottom()) && members.contains(&lattice.top());
        let seed = members
            .iter()
            .copied()
            .find(|&k| !lattice.is_bound(k))
            .expect("checked: block has a non-bound element");
        let minimal = block_closure(lattice, [seed]) == members;
        Ok(Self {
            lattice,
            members,
            minimal,
            complete,
        })
    }

    pub fn lattice(&self) -> &'a BoundedLattice {
        self.lattice
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn into_members(self) -> ElementSet {
        self.members
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(&x)
    }

    /// Members other than the bounds.
    pub fn inner(&self) -> impl Iterator<Item = usize> + '_ {
        self.members
            .iter()
            .copied()
            .filter(|&x| !self.lattice.is_bound(x))
    }

    pub fn labels(&self) -> Vec<String> {
        self.lattice.labels_of(&self.members)
    }
}

/// A family of at least two pairwise independent blocks covering the lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition<'a> {
    blocks: Vec<Block<'a>>,
}

impl<'a> BlockDecomposition<'a> {
    /// Certifies each set as a block and the family as a decomposition.
    /// Blocks are stored in canonical (sorted member list) order.
    pub fn certify(lattice: &'a BoundedLattice, sets: Vec<ElementSet>) -> Result<Self, BlockError> {
        if sets.len() < 2 {
            return Err(BlockError::TooFewBlocks(sets.len()));
        }
        let mut blocks = sets
            .into_iter()
            .map(|s| Block::certify(lattice, s))
            .collect::<Result<Vec<_>, _>>()?;
        blocks.sort_by(|a, b| a.members.iter().cmp(b.members.iter()));
        for i in 0..blocks.len() {
            for j in i + 1..blocks.len() {
                if let Some(shared) = blocks[i]
                    .members
                    .intersection(&blocks[j].members)
                    .find(|&&x| !lattice.is_bound(x))
                {
                    return Err(BlockError::NotIndependent {
                        first: i,
                        second: j,
                        shared: lattice.label(*shared).to_owned(),
                    });
                }
            }
        }
        for x in 0..lattice.len() {
            if !blocks.iter().any(|b| b.contains(x)) {
                return Err(BlockError::Uncovered(lattice.label(x).to_owned()));
            }
        }
        Ok(Self { blocks })
    }

    pub fn blocks(&self) -> &[Block<'a>] {
        &self.blocks
    }

    pub fn member_sets(&self) -> Vec<ElementSet> {
        self.blocks.iter().map(|b| b.members.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// Outcome of [`classify_pair`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairRelation<'a> {
    Independent,
    Intersection(Block<'a>),
}

fn ensure_size(lattice: &BoundedLattice) -> Result<(), BlockError> {
    if lattice.len() < MIN_BLOCK_LATTICE_SIZE {
        return Err(LatticeError::TooSmall(lattice.len()).into());
    }
    Ok(())
}

/// Checks the block conditions in a fixed order: proper subset, non-bound
/// member, sublattice, closure under comparable elements. The first failure
/// is reported with a witness.
pub fn check_block(lattice: &BoundedLattice, members: &ElementSet) -> Result<(), BlockError> {
    ensure_size(lattice)?;
    for &x in members {
        lattice.check(x)?;
    }
    if members.len() == lattice.len() {
        return Err(BlockError::NotProper);
    }
    if members.iter().all(|&x| lattice.is_bound(x)) {
        return Err(BlockError::OnlyBounds);
    }
    for &x in members {
        for &y in members.range(x..) {
            for (op, result) in [("meet", lattice.meet(x, y)), ("join", lattice.join(x, y))] {
                if !members.contains(&result) {
                    return Err(BlockError::NotSublattice {
                        left: lattice.label(x).to_owned(),
                        right: lattice.label(y).to_owned(),
                        op,
                        result: lattice.label(result).to_owned(),
                    });
                }
            }
        }
    }
    for &k in members.iter().filter(|&&k| !lattice.is_bound(k)) {
        if let Some(missing) = lattice
            .up_set(k)
            .chain(lattice.down_set(k))
            .find(|x| !lattice.is_bound(*x) && !members.contains(x))
        {
            return Err(BlockError::NotConvex {
                member: lattice.label(k).to_owned(),
                missing: lattice.label(missing).to_owned(),
            });
        }
    }
    Ok(())
}

/// Whether `members` is a block of `lattice`.
pub fn is_block(lattice: &BoundedLattice, members: &ElementSet) -> Result<bool, LatticeError> {
    match check_block(lattice, members) {
        Ok(()) => Ok(true),
        Err(BlockError::Lattice(e)) => Err(e),
        Err(_) => Ok(false),
    }
}

/// Least superset of `seed` closed under comparable non-bound elements and
/// pairwise meets and joins. Bounds enter only as meets or joins.
pub(crate) fn block_closure<I: IntoIterator<Item = usize>>(
    lattice: &BoundedLattice,
    seed: I,
) -> ElementSet {
    let mut present = vec![false; lattice.len()];
    let mut members = Vec::new();
    let mut queue = VecDeque::new();
    let mut push = |x: usize, members: &mut Vec<usize>, queue: &mut VecDeque<usize>| {
        if !present[x] {
            present[x] = true;
            members.push(x);
            queue.push_back(x);
        }
    };
    for x in seed {
        push(x, &mut members, &mut queue);
    }
    while let Some(e) = queue.pop_front() {
        if !lattice.is_bound(e) {
            let comparable: Vec<usize> = lattice
                .up_set(e)
                .chain(lattice.down_set(e))
                .filter(|&x| !lattice.is_bound(x))
                .collect();
            for x in comparable {
                push(x, &mut members, &mut queue);
            }
        }
        let mut i = 0;
        while i < members.len() {
            let m = members[i];
            let (meet, join) = (lattice.meet(e, m), lattice.join(e, m));
            push(meet, &mut members, &mut queue);
            push(join, &mut members, &mut queue);
            i += 1;
        }
    }
    members.into_iter().collect()
}

/// The smallest block containing `k`.
pub fn minimal_block_of(lattice: &BoundedLattice, k: usize) -> Result<Block<'_>, BlockError> {
    ensure_size(lattice)?;
    lattice.check(k)?;
    if lattice.is_bound(k) {
        return Err(BlockError::BoundElement(lattice.label(k).to_owned()));
    }
    let members = block_closure(lattice, [k]);
    if members.len() == lattice.len() {
        return Err(BlockError::WholeLattice(lattice.label(k).to_owned()));
    }
    Block::certify(lattice, members)
}

/// All minimal blocks, in order of their smallest non-bound member.
///
/// Fails with [`BlockError::NoBlocks`] when the lattice has no block at all;
/// in that case every closure is the whole lattice.
pub fn enumerate_minimal_blocks(lattice: &BoundedLattice) -> Result<Vec<Block<'_>>, BlockError> {
    ensure_size(lattice)?;
    let mut assigned = vec![false; lattice.len()];
    let mut blocks = Vec::new();
    for k in 0..lattice.len() {
        if lattice.is_bound(k) || assigned[k] {
            continue;
        }
        let block = match minimal_block_of(lattice, k) {
            Ok(b) => b,
            Err(BlockError::WholeLattice(label)) => return Err(BlockError::NoBlocks(label)),
            Err(e) => return Err(e),
        };
        for x in block.inner() {
            assigned[x] = true;
        }
        blocks.push(block);
    }
    Ok(blocks)
}

/// Two blocks are either independent or meet in a block.
pub fn classify_pair<'a>(
    first: &Block<'a>,
    second: &Block<'a>,
) -> Result<PairRelation<'a>, BlockError> {
    if !std::ptr::eq(first.lattice, second.lattice) {
        return Err(BlockError::DifferentCarrier);
    }
    let lattice = first.lattice;
    let common: ElementSet = first
        .members
        .intersection(&second.members)
        .copied()
        .collect();
    if common.iter().all(|&x| lattice.is_bound(x)) {
        return Ok(PairRelation::Independent);
    }
    Ok(PairRelation::Intersection(Block::certify(lattice, common)?))
}

/// Union of a family containing a complete block; the result is complete.
pub fn union_blocks<'a>(blocks: &[Block<'a>]) -> Result<Block<'a>, BlockError> {
    let first = blocks.first().ok_or(BlockError::EmptyFamily)?;
    let lattice = first.lattice;
    if blocks.iter().any(|b| !std::ptr::eq(b.lattice, lattice)) {
        return Err(BlockError::DifferentCarrier);
    }
    if !blocks.iter().any(Block::is_complete) {
        return Err(BlockError::NoCompleteBlock);
    }
    let union: ElementSet = blocks
        .iter()
        .flat_map(|b| b.members.iter().copied())
        .collect();
    if union.len() == lattice.len() {
        return Err(BlockError::UnionIsWholeLattice);
    }
    Block::certify(lattice, union)
}

/// `(L \ K) ∪ {⊥, ⊤}`, certified as a complete block that together with `K`
/// decomposes the lattice.
pub fn complement_block<'a>(
    lattice: &'a BoundedLattice,
    block: &Block<'a>,
) -> Result<Block<'a>, BlockError> {
    if !std::ptr::eq(lattice, block.lattice) {
        return Err(BlockError::DifferentCarrier);
    }
    let mut rest: ElementSet = (0..lattice.len()).filter(|x| !block.contains(*x)).collect();
    if rest.iter().all(|&x| lattice.is_bound(x)) {
        return Err(BlockError::ComplementTrivial);
    }
    rest.insert(lattice.bottom());
    rest.insert(lattice.top());
    let complement = Block::certify(lattice, rest)?;
    BlockDecomposition::certify(
        lattice,
        vec![block.members.clone(), complement.members.clone()],
    )?;
    Ok(complement)
}

/// Every decomposition into independent complete blocks.
///
/// Each decomposition groups the minimal blocks into at least two groups and
/// attaches both bounds to every group. Lattices without blocks yield an
/// empty list. Output is sorted by number of blocks, then by member lists.
pub fn enumerate_block_decompositions(lattice: &BoundedLattice) -> Vec<BlockDecomposition<'_>> {
    let minimal = match enumerate_minimal_blocks(lattice) {
        Ok(m) => m,
        Err(_) => return Vec::new(),
    };
    let mut out: Vec<BlockDecomposition<'_>> = set_partitions(minimal.len())
        .into_iter()
        .filter(|groups| groups.len() >= 2)
        .map(|groups| {
            let sets = groups
                .iter()
                .map(|group| {
                    let mut set: ElementSet =
                        group.iter().flat_map(|&g| minimal[g].inner()).collect();
                    set.insert(lattice.bottom());
                    set.insert(lattice.top());
                    set
                })
                .collect();
            // Unions of distinct minimal blocks only meet at the bounds.
            BlockDecomposition::certify(lattice, sets)
                .expect("groups of minimal blocks are independent blocks")
        })
        .collect();
    out.sort_by(|a, b| {
        a.len().cmp(&b.len()).then_with(|| {
            a.blocks
                .iter()
                .map(|k| k.members.iter().collect::<Vec<_>>())
                .cmp(
                    b.blocks
                        .iter()
                        .map(|k| k.members.iter().collect::<Vec<_>>()),
                )
        })
    });
    out
}
