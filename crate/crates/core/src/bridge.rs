//! The correspondence between decompositions of a context into independent
//! subcontexts and decompositions of its concept lattice into independent
//! blocks.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::blocks::{enumerate_block_decompositions, Block, BlockDecomposition, BlockError};
use crate::concepts::{enumerate_concepts, ConceptLattice};
use crate::context::{
    ContextError, DecompositionViolation, IndexSet, MultiAdjointContext, Subcontext,
    SubcontextDecomposition,
};
use crate::lattice::ElementSet;
use crate::residuation::Grade;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Attribute,
    Object,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Attribute => "attribute",
            Side::Object => "object",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BridgeError {
    #[error("input is not a decomposition into independent subcontexts: {0}")]
    InvalidDecomposition(DecompositionViolation),
    #[error("input is not a decomposition into independent blocks: {0}")]
    NotADecomposition(BlockError),
    #[error("blocks belong to a different lattice than the concept lattice")]
    ForeignBlocks,
    #[error("{side} `{label}` lands in {count} blocks")]
    PartitionFailure {
        side: Side,
        label: String,
        count: usize,
    },
    #[error("block {block} yields no {side}")]
    EmptyPart { side: Side, block: usize },
    #[error("constructed blocks fail certification: {0}")]
    BlockCertificationFailure(BlockError),
    #[error("constructed subcontexts fail certification: {0}")]
    SubcontextCertificationFailure(DecompositionViolation),
}

/// `K_λ = {c | c = ⋀M_c^{A_λ}} ∪ {⊤, ⊥}` for one part, certified as a block.
pub fn block_of_part<'a>(
    lat: &'a ConceptLattice,
    part: &Subcontext,
) -> Result<Block<'a>, BridgeError> {
    let lattice = lat.lattice();
    let mut members: ElementSet = (0..lat.len())
        .filter(|&c| {
            let (_, m_c) = lat
                .irreducible_index_sets(&part.attributes, c)
                .expect("indices come from the lattice and a certified part");
            lattice.meet_all(m_c) == c
        })
        .collect();
    members.insert(lattice.bottom());
    members.insert(lattice.top());
    Block::certify(lattice, members).map_err(BridgeError::BlockCertificationFailure)
}

/// One complete block per part, certified as a decomposition of the concept
/// lattice into independent blocks. Blocks come back in canonical order.
pub fn blocks_from_decomposition<'a>(
    ctx: &MultiAdjointContext,
    lat: &'a ConceptLattice,
    dec: &SubcontextDecomposition,
) -> Result<BlockDecomposition<'a>, BridgeError> {
    ctx.check_decomposition(dec.parts())
        .map_err(BridgeError::InvalidDecomposition)?;
    let sets = dec
        .parts()
        .iter()
        .map(|p| block_of_part(lat, p).map(Block::into_members))
        .collect::<Result<Vec<_>, _>>()?;
    BlockDecomposition::certify(lat.lattice(), sets).map_err(BridgeError::BlockCertificationFailure)
}

/// Certifies raw element sets as a decomposition of the concept lattice.
pub fn certify_block_sets(
    lat: &ConceptLattice,
    sets: Vec<ElementSet>,
) -> Result<BlockDecomposition<'_>, BridgeError> {
    BlockDecomposition::certify(lat.lattice(), sets).map_err(BridgeError::NotADecomposition)
}

/// `A_μ` and `B_μ` for each block, in block order: the attributes (objects)
/// whose fuzzy-attribute (fuzzy-object) concepts fall strictly inside `K_μ`.
pub fn partition_from_blocks(
    ctx: &MultiAdjointContext,
    lat: &ConceptLattice,
    blocks: &BlockDecomposition<'_>,
) -> Result<(Vec<IndexSet>, Vec<IndexSet>), BridgeError> {
    if blocks
        .blocks()
        .first()
        .is_some_and(|b| !std::ptr::eq(b.lattice(), lat.lattice()))
    {
        return Err(BridgeError::ForeignBlocks);
    }
    let lattice = lat.lattice();
    let inside = |k: &Block<'_>, c: usize| k.contains(c) && !lattice.is_bound(c);
    let grades: Vec<Grade> = lat.chain().grades().collect();

    let assign =
        |side: Side, count: usize, labels: &[String], concept: &dyn Fn(usize, Grade) -> usize| {
            let mut parts = vec![IndexSet::new(); blocks.len()];
            for (i, label) in labels.iter().enumerate().take(count) {
                let homes: Vec<usize> = blocks
                    .blocks()
                    .iter()
                    .enumerate()
                    .filter(|(_, k)| grades.iter().any(|&x| inside(k, concept(i, x))))
                    .map(|(m, _)| m)
                    .collect();
                if homes.len() != 1 {
                    return Err(BridgeError::PartitionFailure {
                        side,
                        label: label.clone(),
                        count: homes.len(),
                    });
                }
                parts[homes[0]].insert(i);
            }
            if let Some(block) = parts.iter().position(IndexSet::is_empty) {
                return Err(BridgeError::EmptyPart { side, block });
            }
            Ok(parts)
        };

    let attributes = assign(
        Side::Attribute,
        ctx.n_attributes(),
        ctx.attributes(),
        &|a, x| lat.attribute_concept(a, x).expect("attribute in range"),
    )?;
    let objects = assign(Side::Object, ctx.n_objects(), ctx.objects(), &|b, y| {
        lat.object_concept(b, y).expect("object in range")
    })?;
    Ok((attributes, objects))
}

/// The partition from [`partition_from_blocks`], certified as a
/// decomposition into independent subcontexts.
pub fn subcontexts_from_blocks(
    ctx: &MultiAdjointContext,
    lat: &ConceptLattice,
    blocks: &BlockDecomposition<'_>,
) -> Result<SubcontextDecomposition, BridgeError> {
    let (attributes, objects) = partition_from_blocks(ctx, lat, blocks)?;
    let parts: Vec<Subcontext> = attributes
        .into_iter()
        .zip(objects)
        .map(|(attributes, objects)| Subcontext {
            attributes,
            objects,
        })
        .collect();
    ctx.check_decomposition(&parts)
        .map_err(BridgeError::SubcontextCertificationFailure)
}

/// A non-bound concept whose irreducible decomposition does not live in
/// exactly one part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingleHomeViolation {
    pub concept: usize,
    /// Parts `λ` with `M_c^{A_λ} ≠ ∅`.
    pub homes: Vec<usize>,
    /// Whether `⋀M_c^{A_λ} = c` for the single home, when there is one.
    pub recovered: bool,
}

/// Checks that every non-bound concept has exactly one part `λ` with
/// `M_c^{A_λ} ≠ ∅`, and that `⋀M_c^{A_λ} = c` there.
pub fn check_single_home(
    lat: &ConceptLattice,
    dec: &SubcontextDecomposition,
) -> Result<(), SingleHomeViolation> {
    let lattice = lat.lattice();
    for c in (0..lat.len()).filter(|&c| !lattice.is_bound(c)) {
        let sets: Vec<ElementSet> = dec
            .parts()
            .iter()
            .map(|p| {
                lat.irreducible_index_sets(&p.attributes, c)
                    .expect("valid indices")
                    .1
            })
            .collect();
        let homes: Vec<usize> = (0..sets.len()).filter(|&l| !sets[l].is_empty()).collect();
        let recovered = homes.len() == 1 && lattice.meet_all(sets[homes[0]].iter().copied()) == c;
        if !recovered {
            return Err(SingleHomeViolation {
                concept: c,
                homes,
                recovered,
            });
        }
    }
    Ok(())
}

/// One named check of an [`EquivalenceReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// A context-side decomposition and the lattice-side decomposition it maps
/// to, by position in the two canonical enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MatchedPair {
    pub context: usize,
    pub lattice: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub concepts: usize,
    pub context_decompositions: usize,
    pub lattice_decompositions: usize,
    pub matched: Vec<MatchedPair>,
    pub checks: Vec<CheckResult>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

struct Checks(Vec<CheckResult>);

impl Checks {
    fn record(&mut self, name: &'static str, outcome: Result<(), String>) {
        self.0.push(CheckResult {
            name,
            passed: outcome.is_ok(),
            witness: outcome.err(),
        });
    }
}

fn first_error<T>(items: impl IntoIterator<Item = Result<(), T>>) -> Result<(), T> {
    items.into_iter().collect()
}

/// Enumerates decompositions on both sides independently and checks that
/// they correspond.
///
/// Checks: both sides agree on existence; the forward map lands in the
/// lattice-side enumeration and the backward map in the context-side one;
/// both maps are mutually inverse on the finest decompositions and on
/// every decomposition; the forward map is a bijection; forward blocks are
/// complete; every non-bound concept has a single home; fuzzy-attribute
/// extents vanish outside their part.
pub fn verify_equivalence(ctx: &MultiAdjointContext) -> Result<EquivalenceReport, ContextError> {
    let context_side = ctx.enumerate_decompositions()?;
    let lat = enumerate_concepts(ctx);
    Ok(verify_with(ctx, &lat, &context_side))
}

/// [`verify_equivalence`] over an already computed lattice and context-side
/// enumeration.
pub fn verify_with(
    ctx: &MultiAdjointContext,
    lat: &ConceptLattice,
    context_side: &[SubcontextDecomposition],
) -> EquivalenceReport {
    let lattice_side = enumerate_block_decompositions(lat.lattice());
    let lattice_sets: Vec<Vec<ElementSet>> = lattice_side
        .iter()
        .map(BlockDecomposition::member_sets)
        .collect();
    let mut checks = Checks(Vec::new());

    checks.record(
        "existence-agrees",
        if context_side.is_empty() == lattice_side.is_empty() {
            Ok(())
        } else {
            Err(format!(
                "{} context-side vs {} lattice-side decompositions",
                context_side.len(),
                lattice_side.len()
            ))
        },
    );

    let forward: Vec<Result<BlockDecomposition<'_>, BridgeError>> = context_side
        .iter()
        .map(|d| blocks_from_decomposition(ctx, lat, d))
        .collect();
    let backward: Vec<Result<SubcontextDecomposition, BridgeError>> = lattice_side
        .iter()
        .map(|k| subcontexts_from_blocks(ctx, lat, k))
        .collect();

    let mut matched = Vec::new();
    checks.record(
        "forward-lands-in-lattice-side",
        first_error(forward.iter().enumerate().map(|(i, f)| {
            let blocks = f.as_ref().map_err(|e| format!("decomposition {i}: {e}"))?;
            let j = lattice_sets
                .iter()
                .position(|s| *s == blocks.member_sets())
                .ok_or_else(|| {
                    format!("decomposition {i} maps outside the lattice-side enumeration")
                })?;
            matched.push(MatchedPair {
                context: i,
                lattice: j,
            });
            Ok(())
        })),
    );
    checks.record(
        "backward-lands-in-context-side",
        first_error(backward.iter().enumerate().map(|(j, b)| {
            let dec = b
                .as_ref()
                .map_err(|e| format!("block decomposition {j}: {e}"))?;
            if context_side.contains(dec) {
                Ok(())
            } else {
                Err(format!(
                    "block decomposition {j} maps outside the context-side enumeration"
                ))
            }
        })),
    );

    let roundtrip = |i: usize| -> Result<(), String> {
        let blocks = forward[i].as_ref().map_err(|e| e.to_string())?;
        let back = subcontexts_from_blocks(ctx, lat, blocks).map_err(|e| e.to_string())?;
        if back == context_side[i] {
            Ok(())
        } else {
            Err(format!("decomposition {i} does not survive the round trip"))
        }
    };
    let reverse_trip = |j: usize| -> Result<(), String> {
        let dec = backward[j].as_ref().map_err(|e| e.to_string())?;
        let again = blocks_from_decomposition(ctx, lat, dec).map_err(|e| e.to_string())?;
        if again.member_sets() == lattice_sets[j] {
            Ok(())
        } else {
            Err(format!(
                "block decomposition {j} does not survive the round trip"
            ))
        }
    };
    let finest = |sizes: &mut dyn Iterator<Item = usize>| sizes.max().unwrap_or(0);
    let finest_context = finest(&mut context_side.iter().map(SubcontextDecomposition::len));
    let finest_lattice = finest(&mut lattice_side.iter().map(BlockDecomposition::len));
    checks.record(
        "finest-mutually-inverse",
        first_error(
            (0..context_side.len())
                .filter(|&i| context_side[i].len() == finest_context)
                .map(roundtrip)
                .chain(
                    (0..lattice_side.len())
                        .filter(|&j| lattice_side[j].len() == finest_lattice)
                        .map(reverse_trip),
                ),
        ),
    );
    checks.record(
        "roundtrip-identity",
        first_error((0..context_side.len()).map(roundtrip)),
    );
    checks.record(
        "reverse-roundtrip-identity",
        first_error((0..lattice_side.len()).map(reverse_trip)),
    );

    let images: BTreeSet<usize> = matched.iter().map(|m| m.lattice).collect();
    checks.record(
        "bijection",
        if images.len() == context_side.len() && context_side.len() == lattice_side.len() {
            Ok(())
        } else {
            Err(format!(
                "{} context-side decompositions reach {} of {} lattice-side ones",
                context_side.len(),
                images.len(),
                lattice_side.len()
            ))
        },
    );

    checks.record(
        "forward-blocks-complete",
        first_error(forward.iter().flatten().enumerate().map(|(i, k)| {
            if k.blocks().iter().all(Block::is_complete) {
                Ok(())
            } else {
                Err(format!("decomposition {i} yields an incomplete block"))
            }
        })),
    );
    checks.record(
        "single-home",
        first_error(context_side.iter().enumerate().map(|(i, d)| {
            check_single_home(lat, d).map_err(|v| {
                format!(
                    "decomposition {i}: concept C{} has homes {:?} (recovered: {})",
                    v.concept, v.homes, v.recovered
                )
            })
        })),
    );
    checks.record(
        "extent-support",
        first_error(
            context_side
                .iter()
                .enumerate()
                .map(|(i, d)| extent_support(ctx, lat, d, i)),
        ),
    );

    EquivalenceReport {
        concepts: lat.len(),
        context_decompositions: context_side.len(),
        lattice_decompositions: lattice_side.len(),
        matched,
        checks: checks.0,
    }
}

/// `φ_{a,x}↓(b) = ⊥` for `a ∈ A_λ`, `x ≠ ⊥`, `b ∉ B_λ`.
fn extent_support(
    ctx: &MultiAdjointContext,
    lat: &ConceptLattice,
    dec: &SubcontextDecomposition,
    i: usize,
) -> Result<(), String> {
    for part in dec.parts() {
        for &a in &part.attributes {
            for x in lat.chain().grades().skip(1) {
                let c = lat.attribute_concept(a, x).expect("attribute in range");
                let extent = &lat.concepts()[c].extent;
                if let Some(b) = (0..ctx.n_objects())
                    .find(|b| !part.objects.contains(b) && extent.get(*b) != Grade::BOTTOM)
                {
                    return Err(format!(
                        "decomposition {i}: extent of ({}, {}) is nonzero at {}",
                        ctx.attributes()[a],
                        lat.chain().render(x),
                        ctx.objects()[b]
                    ));
                }
            }
        }
    }
    Ok(())
}
