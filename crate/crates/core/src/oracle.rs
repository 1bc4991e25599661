//! Brute-force reference implementations.
//!
//! Everything here works straight from the definitions by exhaustive scan
//! and deliberately shares no logic with the enumeration code paths: meets,
//! residua, partitions and zero-divisors are all recomputed locally.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::concepts::{FormalConcept, FuzzySet};
use crate::context::{IndexSet, MultiAdjointContext, Subcontext};
use crate::lattice::{BoundedLattice, ElementSet};
use crate::residuation::Grade;

pub const MAX_BRUTE_LATTICE: usize = 16;
pub const MAX_BRUTE_FUZZY_SETS: u64 = 1_000_000;
pub const MAX_BRUTE_SIDE: usize = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{what} of size {size} exceeds the oracle limit {limit}")]
pub struct TooLarge {
    pub what: &'static str,
    pub size: u64,
    pub limit: u64,
}

fn greatest_lower_bound(l: &BoundedLattice, items: &[usize]) -> Option<usize> {
    let lower: Vec<usize> = (0..l.len())
        .filter(|&z| items.iter().all(|&i| l.leq(z, i)))
        .collect();
    lower
        .iter()
        .copied()
        .find(|&z| lower.iter().all(|&w| l.leq(w, z)))
}

fn least_upper_bound(l: &BoundedLattice, items: &[usize]) -> Option<usize> {
    let upper: Vec<usize> = (0..l.len())
        .filter(|&z| items.iter().all(|&i| l.leq(i, z)))
        .collect();
    upper
        .iter()
        .copied()
        .find(|&z| upper.iter().all(|&w| l.leq(z, w)))
}

fn is_bound(l: &BoundedLattice, x: usize) -> bool {
    (0..l.len()).all(|y| l.leq(x, y)) || (0..l.len()).all(|y| l.leq(y, x))
}

/// Every subset satisfying the raw block conditions.
pub fn brute_blocks(l: &BoundedLattice) -> Result<Vec<ElementSet>, TooLarge> {
    let n = l.len();
    if n > MAX_BRUTE_LATTICE {
        return Err(TooLarge {
            what: "lattice",
            size: n as u64,
            limit: MAX_BRUTE_LATTICE as u64,
        });
    }
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << n) - 1 {
        let k: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let has = |x: usize| mask >> x & 1 == 1;
        if k.iter().all(|&x| is_bound(l, x)) {
            continue;
        }
        let sublattice = k.iter().all(|&x| {
            k.iter().all(|&y| {
                greatest_lower_bound(l, &[x, y]).is_some_and(has)
                    && least_upper_bound(l, &[x, y]).is_some_and(has)
            })
        });
        if !sublattice {
            continue;
        }
        let closed = k.iter().filter(|&&x| !is_bound(l, x)).all(|&x| {
            (0..n)
                .filter(|&y| l.leq(x, y) || l.leq(y, x))
                .all(|y| is_bound(l, y) || has(y))
        });
        if closed {
            out.push(k.into_iter().collect());
        }
    }
    out.sort();
    Ok(out)
}

/// Inclusion-minimal members of [`brute_blocks`].
pub fn brute_minimal_blocks(l: &BoundedLattice) -> Result<Vec<ElementSet>, TooLarge> {
    let all = brute_blocks(l)?;
    Ok(all
        .iter()
        .filter(|k| !all.iter().any(|j| j != *k && j.is_subset(k)))
        .cloned()
        .collect())
}

/// Non-top elements that are not the meet of the elements strictly above.
pub fn brute_meet_irreducibles(l: &BoundedLattice) -> ElementSet {
    (0..l.len())
        .filter(|&x| {
            let above: Vec<usize> = (0..l.len()).filter(|&y| y != x && l.leq(x, y)).collect();
            !above.is_empty() && greatest_lower_bound(l, &above) != Some(x)
        })
        .collect()
}

fn max_grade_where(top: u16, ok: impl Fn(Grade) -> bool) -> Grade {
    (0..=top)
        .rev()
        .map(Grade)
        .find(|&g| ok(g))
        .unwrap_or(Grade(0))
}

/// `g↑(a) = max{x | x & g(b) ⪯ R(a, b) for all b}`.
fn up(ctx: &MultiAdjointContext, g: &[Grade]) -> Vec<Grade> {
    let top = ctx.chain().granularity();
    (0..ctx.n_attributes())
        .map(|a| {
            max_grade_where(top, |x| {
                (0..ctx.n_objects()).all(|b| ctx.triple(a, b).conj(x, g[b]) <= ctx.relation(a, b))
            })
        })
        .collect()
}

/// `f↓(b) = max{y | f(a) & y ⪯ R(a, b) for all a}`.
fn down(ctx: &MultiAdjointContext, f: &[Grade]) -> Vec<Grade> {
    let top = ctx.chain().granularity();
    (0..ctx.n_objects())
        .map(|b| {
            max_grade_where(top, |y| {
                (0..ctx.n_attributes())
                    .all(|a| ctx.triple(a, b).conj(f[a], y) <= ctx.relation(a, b))
            })
        })
        .collect()
}

/// All `⟨g, g↑⟩` with `g↑↓ = g`, by scanning every fuzzy set of objects.
/// Sorted by extent.
pub fn brute_concepts(ctx: &MultiAdjointContext) -> Result<Vec<FormalConcept>, TooLarge> {
    let base = ctx.chain().size() as u64;
    let nb = ctx.n_objects();
    let total = (0..nb)
        .try_fold(1u64, |acc, _| acc.checked_mul(base))
        .filter(|&t| t <= MAX_BRUTE_FUZZY_SETS);
    let Some(total) = total else {
        return Err(TooLarge {
            what: "fuzzy object sets",
            size: base.saturating_pow(nb as u32),
            limit: MAX_BRUTE_FUZZY_SETS,
        });
    };
    let mut out = Vec::new();
    for code in 0..total {
        let mut rest = code;
        let g: Vec<Grade> = (0..nb)
            .map(|_| {
                let digit = (rest % base) as u16;
                rest /= base;
                Grade(digit)
            })
            .rev()
            .collect();
        let f = up(ctx, &g);
        if down(ctx, &f) == g {
            out.push(FormalConcept {
                extent: FuzzySet::new(g),
                intent: FuzzySet::new(f),
            });
        }
    }
    out.sort();
    Ok(out)
}

fn partitions(items: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let Some((&first, rest)) = items.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    for p in partitions(rest) {
        for i in 0..p.len() {
            let mut q = p.clone();
            q[i].insert(0, first);
            out.push(q);
        }
        let mut q = p;
        q.insert(0, vec![first]);
        out.push(q);
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn zero_divisor_conjunctor(ctx: &MultiAdjointContext, a: usize, b: usize) -> bool {
    let t = ctx.triple(a, b);
    let n = ctx.chain().granularity();
    (1..=n).any(|x| (1..=n).any(|y| t.conj(Grade(x), Grade(y)) == Grade(0)))
}

fn separable(ctx: &MultiAdjointContext, y: &IndexSet, x: &IndexSet) -> bool {
    let (na, nb) = (ctx.n_attributes(), ctx.n_objects());
    let nz = |a: usize, b: usize| ctx.relation(a, b) != Grade(0);
    !y.is_empty()
        && !x.is_empty()
        && y.len() < na
        && x.len() < nb
        && y.iter().any(|&a| x.iter().any(|&b| nz(a, b)))
        && (0..na).all(|a| (0..nb).all(|b| y.contains(&a) == x.contains(&b) || !nz(a, b)))
}

/// Every decomposition into independent subcontexts, by scanning all pairs
/// of attribute and object partitions with the same number of blocks and
/// every matching between them. Each result lists its parts sorted; the
/// list is sorted by part count, then parts.
pub fn brute_decompositions(ctx: &MultiAdjointContext) -> Result<Vec<Vec<Subcontext>>, TooLarge> {
    let (na, nb) = (ctx.n_attributes(), ctx.n_objects());
    if na.max(nb) > MAX_BRUTE_SIDE {
        return Err(TooLarge {
            what: "context side",
            size: na.max(nb) as u64,
            limit: MAX_BRUTE_SIDE as u64,
        });
    }
    let attribute_partitions = partitions(&(0..na).collect::<Vec<_>>());
    let object_partitions = partitions(&(0..nb).collect::<Vec<_>>());
    let mut found = BTreeSet::new();
    for pa in attribute_partitions.iter().filter(|p| p.len() >= 2) {
        for pb in object_partitions.iter().filter(|p| p.len() == pa.len()) {
            for perm in permutations(pa.len()) {
                let mut parts: Vec<Subcontext> = pa
                    .iter()
                    .zip(&perm)
                    .map(|(ys, &j)| Subcontext {
                        attributes: ys.iter().copied().collect(),
                        objects: pb[j].iter().copied().collect(),
                    })
                    .collect();
                let all_separable = parts
                    .iter()
                    .all(|p| separable(ctx, &p.attributes, &p.objects));
                let independent = parts.iter().all(|p| {
                    (0..na).all(|a| {
                        (0..nb).all(|b| {
                            p.attributes.contains(&a) == p.objects.contains(&b)
                                || !zero_divisor_conjunctor(ctx, a, b)
                        })
                    })
                });
                if all_separable && independent {
                    parts.sort();
                    found.insert((parts.len(), parts));
                }
            }
        }
    }
    Ok(found.into_iter().map(|(_, p)| p).collect())
}
