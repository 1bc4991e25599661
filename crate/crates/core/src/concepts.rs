//! Derivation operators, fuzzy attributes and objects, and the
//! multi-adjoint concept lattice of a context.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::context::{IndexSet, MultiAdjointContext};
use crate::lattice::{BoundedLattice, ElementSet};
use crate::residuation::{Grade, GradeChain};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConceptError {
    #[error("attribute index {0} is out of range")]
    UnknownAttribute(usize),
    #[error("object index {0} is out of range")]
    UnknownObject(usize),
    #[error("concept index {0} is out of range")]
    UnknownConcept(usize),
    #[error("grade {0:?} is not on the chain")]
    OffGrid(Grade),
    #[error("fuzzy set has {found} entries, expected {expected}")]
    Length { expected: usize, found: usize },
    #[error("more than {limit} concepts")]
    TooMany { limit: usize },
}

/// A fuzzy subset of attributes or objects, one grade per element.
///
/// Comparison with [`FuzzySet::le`] is pointwise; the derived `Ord` is the
/// lexicographic order used for canonical numbering.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FuzzySet(Vec<Grade>);

impl FuzzySet {
    pub fn new(values: Vec<Grade>) -> Self {
        Self(values)
    }

    /// Everything at `⊥`.
    pub fn bottom(len: usize) -> Self {
        Self(vec![Grade::BOTTOM; len])
    }

    /// Everything at `⊤`.
    pub fn top(len: usize, chain: GradeChain) -> Self {
        Self(vec![chain.top(); len])
    }

    /// `x` at `i`, `⊥` elsewhere.
    pub fn singleton(len: usize, i: usize, x: Grade) -> Self {
        let mut values = vec![Grade::BOTTOM; len];
        values[i] = x;
        Self(values)
    }

    pub fn values(&self) -> &[Grade] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Grade {
        self.0[i]
    }

    pub fn le(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(x, y)| x <= y)
    }

    pub fn meet(&self, other: &Self) -> Self {
        Self(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(x, y)| *x.min(y))
                .collect(),
        )
    }

    /// Indices with a non-bottom grade.
    pub fn support(&self) -> IndexSet {
        (0..self.0.len())
            .filter(|&i| self.0[i] != Grade::BOTTOM)
            .collect()
    }

    /// `{b3/0.2, b4/1}`, omitting bottom entries.
    pub fn display<'a>(
        &'a self,
        labels: &'a [String],
        chain: GradeChain,
    ) -> impl fmt::Display + 'a {
        DisplayFuzzy {
            set: self,
            labels,
            chain,
        }
    }

    fn check(&self, len: usize, chain: GradeChain) -> Result<(), ConceptError> {
        if self.0.len() != len {
            return Err(ConceptError::Length {
                expected: len,
                found: self.0.len(),
            });
        }
        match self.0.iter().find(|g| !chain.contains(**g)) {
            Some(g) => Err(ConceptError::OffGrid(*g)),
            None => Ok(()),
        }
    }
}

struct DisplayFuzzy<'a> {
    set: &'a FuzzySet,
    labels: &'a [String],
    chain: GradeChain,
}

impl fmt::Display for DisplayFuzzy<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        let mut first = true;
        for (label, g) in self.labels.iter().zip(self.set.values()) {
            if *g == Grade::BOTTOM {
                continue;
            }
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "{label}/{}", self.chain.render_decimal(*g))?;
        }
        f.write_str("}")
    }
}

/// A pair `⟨g, f⟩` with `g↑ = f` and `f↓ = g`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormalConcept {
    pub extent: FuzzySet,
    pub intent: FuzzySet,
}

/// `g↑(a) = min_b R(a, b) ↙σ(a,b) g(b)`.
pub fn derive_up(ctx: &MultiAdjointContext, g: &FuzzySet) -> FuzzySet {
    let top = ctx.chain().top();
    FuzzySet(
        (0..ctx.n_attributes())
            .map(|a| {
                (0..ctx.n_objects())
                    .map(|b| ctx.triple(a, b).res_left(ctx.relation(a, b), g.get(b)))
                    .min()
                    .unwrap_or(top)
            })
            .collect(),
    )
}

/// `f↓(b) = min_a R(a, b) ↖σ(a,b) f(a)`.
pub fn derive_down(ctx: &MultiAdjointContext, f: &FuzzySet) -> FuzzySet {
    let top = ctx.chain().top();
    FuzzySet(
        (0..ctx.n_objects())
            .map(|b| {
                (0..ctx.n_attributes())
                    .map(|a| ctx.triple(a, b).res_right(ctx.relation(a, b), f.get(a)))
                    .min()
                    .unwrap_or(top)
            })
            .collect(),
    )
}

/// Checked variant of [`derive_up`].
pub fn try_derive_up(ctx: &MultiAdjointContext, g: &FuzzySet) -> Result<FuzzySet, ConceptError> {
    g.check(ctx.n_objects(), ctx.chain())?;
    Ok(derive_up(ctx, g))
}

/// Checked variant of [`derive_down`].
pub fn try_derive_down(ctx: &MultiAdjointContext, f: &FuzzySet) -> Result<FuzzySet, ConceptError> {
    f.check(ctx.n_attributes(), ctx.chain())?;
    Ok(derive_down(ctx, f))
}

/// Extent of the fuzzy attribute `φ_{a,x}`: `b ↦ R(a, b) ↖σ(a,b) x`.
fn attribute_extent(ctx: &MultiAdjointContext, a: usize, x: Grade) -> FuzzySet {
    FuzzySet(
        (0..ctx.n_objects())
            .map(|b| {
                // Every other attribute contributes `z ↖ ⊥ = ⊤` to the minimum.
                ctx.triple(a, b).res_right(ctx.relation(a, b), x)
            })
            .collect(),
    )
}

fn check_grade(ctx: &MultiAdjointContext, x: Grade) -> Result<(), ConceptError> {
    if ctx.chain().contains(x) {
        Ok(())
    } else {
        Err(ConceptError::OffGrid(x))
    }
}

/// `⟨φ_{a,x}↓, φ_{a,x}↓↑⟩`.
pub fn fuzzy_attribute_concept(
    ctx: &MultiAdjointContext,
    a: usize,
    x: Grade,
) -> Result<FormalConcept, ConceptError> {
    if a >= ctx.n_attributes() {
        return Err(ConceptError::UnknownAttribute(a));
    }
    check_grade(ctx, x)?;
    let extent = attribute_extent(ctx, a, x);
    let intent = derive_up(ctx, &extent);
    Ok(FormalConcept { extent, intent })
}

/// `⟨φ_{b,y}↑↓, φ_{b,y}↑⟩`.
pub fn fuzzy_object_concept(
    ctx: &MultiAdjointContext,
    b: usize,
    y: Grade,
) -> Result<FormalConcept, ConceptError> {
    if b >= ctx.n_objects() {
        return Err(ConceptError::UnknownObject(b));
    }
    check_grade(ctx, y)?;
    let intent = derive_up(ctx, &FuzzySet::singleton(ctx.n_objects(), b, y));
    let extent = derive_down(ctx, &intent);
    Ok(FormalConcept { extent, intent })
}

/// Both sides of `⟨φ_{b,y}↑↓, φ_{b,y}↑⟩ ⪯ ⟨φ_{a,x}↓, φ_{a,x}↓↑⟩ ⇔ x &σ(a,b) y ⪯ R(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RepresentationCheck {
    pub concepts_ordered: bool,
    pub conjunction_below: bool,
}

impl RepresentationCheck {
    pub fn holds(self) -> bool {
        self.concepts_ordered == self.conjunction_below
    }
}

pub fn check_representation(
    ctx: &MultiAdjointContext,
    a: usize,
    x: Grade,
    b: usize,
    y: Grade,
) -> Result<RepresentationCheck, ConceptError> {
    let attribute = fuzzy_attribute_concept(ctx, a, x)?;
    let object = fuzzy_object_concept(ctx, b, y)?;
    Ok(RepresentationCheck {
        concepts_ordered: object.extent.le(&attribute.extent),
        conjunction_below: ctx.triple(a, b).conj(x, y) <= ctx.relation(a, b),
    })
}

/// A meet-irreducible concept with every fuzzy attribute `(a, x)` that
/// generates it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibleConcept {
    pub concept: usize,
    pub generators: Vec<(usize, Grade)>,
}

/// All concepts of a context, numbered `C0..` in lexicographic order of
/// their extents, with the concept order as a [`BoundedLattice`].
#[derive(Debug, Clone)]
pub struct ConceptLattice {
    chain: GradeChain,
    n_attributes: usize,
    n_objects: usize,
    concepts: Vec<FormalConcept>,
    lattice: BoundedLattice,
    by_extent: HashMap<FuzzySet, usize>,
    /// Concept of `φ_{a,x}`, at `a * (n + 1) + x`.
    attribute_concepts: Vec<usize>,
    /// Concept of `φ_{b,y}`, at `b * (n + 1) + y`.
    object_concepts: Vec<usize>,
    irreducible: Vec<bool>,
}

impl ConceptLattice {
    fn build(ctx: &MultiAdjointContext, extents: BTreeSet<FuzzySet>) -> Self {
        let chain = ctx.chain();
        let extents: Vec<FuzzySet> = extents.into_iter().collect();
        let by_extent: HashMap<FuzzySet, usize> = extents
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        let leq: Vec<Vec<bool>> = extents
            .iter()
            .map(|x| extents.iter().map(|y| x.le(y)).collect())
            .collect();
        let labels = (0..extents.len()).map(|i| format!("C{i}")).collect();
        let lattice = BoundedLattice::from_leq(labels, &leq)
            .expect("extents closed under meets form a lattice");

        let mut attribute_concepts = Vec::with_capacity(ctx.n_attributes() * chain.size());
        for a in 0..ctx.n_attributes() {
            for x in chain.grades() {
                attribute_concepts.push(by_extent[&attribute_extent(ctx, a, x)]);
            }
        }
        let mut object_concepts = Vec::with_capacity(ctx.n_objects() * chain.size());
        for b in 0..ctx.n_objects() {
            for y in chain.grades() {
                let g = derive_down(
                    ctx,
                    &derive_up(ctx, &FuzzySet::singleton(ctx.n_objects(), b, y)),
                );
                object_concepts.push(by_extent[&g]);
            }
        }

        let concepts: Vec<FormalConcept> = extents
            .into_iter()
            .map(|extent| FormalConcept {
                intent: derive_up(ctx, &extent),
                extent,
            })
            .collect();

        // A generated extent is irreducible iff it is neither the top nor the
        // meet of the generated extents strictly above it.
        let generated: BTreeSet<usize> = attribute_concepts.iter().copied().collect();
        let top_extent = FuzzySet::top(ctx.n_objects(), chain);
        let irreducible = (0..concepts.len())
            .map(|c| {
                let e = &concepts[c].extent;
                if !generated.contains(&c) || *e == top_extent {
                    return false;
                }
                let above = generated
                    .iter()
                    .map(|&d| &concepts[d].extent)
                    .filter(|d| e.le(d) && *d != e)
                    .fold(top_extent.clone(), |acc, d| acc.meet(d));
                above != *e
            })
            .collect();

        Self {
            chain,
            n_attributes: ctx.n_attributes(),
            n_objects: ctx.n_objects(),
            concepts,
            lattice,
            by_extent,
            attribute_concepts,
            object_concepts,
            irreducible,
        }
    }

    pub fn chain(&self) -> GradeChain {
        self.chain
    }

    pub fn concepts(&self) -> &[FormalConcept] {
        &self.concepts
    }

    pub fn concept(&self, c: usize) -> Result<&FormalConcept, ConceptError> {
        self.concepts.get(c).ok_or(ConceptError::UnknownConcept(c))
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    /// The concept order as an abstract lattice over indices `0..len()`.
    pub fn lattice(&self) -> &BoundedLattice {
        &self.lattice
    }

    pub fn top(&self) -> usize {
        self.lattice.top()
    }

    pub fn bottom(&self) -> usize {
        self.lattice.bottom()
    }

    pub fn index_of_extent(&self, extent: &FuzzySet) -> Option<usize> {
        self.by_extent.get(extent).copied()
    }

    /// Index of `⟨φ_{a,x}↓, φ_{a,x}↓↑⟩`.
    pub fn attribute_concept(&self, a: usize, x: Grade) -> Result<usize, ConceptError> {
        if a >= self.n_attributes {
            return Err(ConceptError::UnknownAttribute(a));
        }
        if !self.chain.contains(x) {
            return Err(ConceptError::OffGrid(x));
        }
        Ok(self.attribute_concepts[a * self.chain.size() + x.index()])
    }

    /// Index of `⟨φ_{b,y}↑↓, φ_{b,y}↑⟩`.
    pub fn object_concept(&self, b: usize, y: Grade) -> Result<usize, ConceptError> {
        if b >= self.n_objects {
            return Err(ConceptError::UnknownObject(b));
        }
        if !self.chain.contains(y) {
            return Err(ConceptError::OffGrid(y));
        }
        Ok(self.object_concepts[b * self.chain.size() + y.index()])
    }

    /// All `(a, x)` with `x ≠ ⊥` generating concept `c`.
    pub fn attribute_generators(&self, c: usize) -> Vec<(usize, Grade)> {
        self.generators(&self.attribute_concepts, c)
    }

    /// All `(b, y)` with `y ≠ ⊥` generating concept `c`.
    pub fn object_generators(&self, c: usize) -> Vec<(usize, Grade)> {
        self.generators(&self.object_concepts, c)
    }

    fn generators(&self, table: &[usize], c: usize) -> Vec<(usize, Grade)> {
        let s = self.chain.size();
        table
            .iter()
            .enumerate()
            .filter(|&(i, &d)| d == c && i % s != 0)
            .map(|(i, _)| (i / s, Grade((i % s) as u16)))
            .collect()
    }

    pub fn is_meet_irreducible(&self, c: usize) -> bool {
        self.irreducible.get(c).copied().unwrap_or(false)
    }

    /// The meet-irreducible concepts, characterized through fuzzy-attribute
    /// extents, each with its generators.
    pub fn meet_irreducible_concepts(&self) -> Vec<IrreducibleConcept> {
        (0..self.len())
            .filter(|&c| self.irreducible[c])
            .map(|c| IrreducibleConcept {
                concept: c,
                generators: self.attribute_generators(c),
            })
            .collect()
    }

    /// `(M_F^{A′}, M_c^{A′})`: irreducibles generated by an attribute in
    /// `A′`, and those among them above `c`.
    pub fn irreducible_index_sets(
        &self,
        attributes: &IndexSet,
        c: usize,
    ) -> Result<(ElementSet, ElementSet), ConceptError> {
        if c >= self.len() {
            return Err(ConceptError::UnknownConcept(c));
        }
        if let Some(&a) = attributes.iter().find(|&&a| a >= self.n_attributes) {
            return Err(ConceptError::UnknownAttribute(a));
        }
        let s = self.chain.size();
        let m_f: ElementSet = attributes
            .iter()
            .flat_map(|&a| (1..s).map(move |x| self.attribute_concepts[a * s + x]))
            .filter(|&d| self.irreducible[d])
            .collect();
        let m_c = m_f
            .iter()
            .copied()
            .filter(|&d| self.lattice.leq(c, d))
            .collect();
        Ok((m_f, m_c))
    }
}

/// The concept lattice, by meet-closure of the fuzzy-attribute extents
/// seeded with `g_⊤`.
pub fn enumerate_concepts(ctx: &MultiAdjointContext) -> ConceptLattice {
    enumerate_concepts_limited(ctx, usize::MAX).expect("no limit")
}

/// As [`enumerate_concepts`], failing once more than `limit` extents appear.
pub fn enumerate_concepts_limited(
    ctx: &MultiAdjointContext,
    limit: usize,
) -> Result<ConceptLattice, ConceptError> {
    let chain = ctx.chain();
    let mut extents: BTreeSet<FuzzySet> = BTreeSet::new();
    extents.insert(FuzzySet::top(ctx.n_objects(), chain));
    let mut seen = BTreeSet::new();
    for a in 0..ctx.n_attributes() {
        for x in chain.grades().skip(1) {
            let phi = attribute_extent(ctx, a, x);
            if extents.contains(&phi) || !seen.insert(phi.clone()) {
                continue;
            }
            let fresh: Vec<FuzzySet> = extents.iter().map(|e| e.meet(&phi)).collect();
            extents.extend(fresh);
            if extents.len() > limit {
                return Err(ConceptError::TooMany { limit });
            }
        }
    }
    Ok(ConceptLattice::build(ctx, extents))
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// Parses `"b3/0.2, b4/1"` over the given labels.
    pub(crate) fn fuzzy(labels: &[String], chain: GradeChain, text: &str) -> FuzzySet {
        let mut set = FuzzySet::bottom(labels.len());
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (label, grade) = item.split_once('/').unwrap();
            let i = labels.iter().position(|l| l == label).unwrap();
            set.0[i] = chain.parse_str(grade).unwrap();
        }
        set
    }

    /// The fifteen concepts of the running example with `σ′`, in the
    /// reference numbering, as `(extent, intent)`.
    pub(crate) const SIGMA_PRIME_CONCEPTS: [(&str, &str); 15] = [
        ("", "a1/1, a2/1, a3/1"),
        ("b1/0.6, b2/0.8", "a1/1"),
        ("b3/0.2", "a2/1, a3/0.8"),
        ("b4/1", "a3/1"),
        ("b1/0.6, b2/1", "a1/0.8"),
        ("b1/1, b2/1", "a1/0.6"),
        ("b1/1, b2/1, b3/1, b4/1", ""),
        ("b3/0.4", "a2/1, a3/0.6"),
        ("b3/0.2, b4/1", "a3/0.8"),
        ("b3/0.6", "a2/0.4, a3/0.4"),
        ("b3/0.4, b4/1", "a3/0.6"),
        ("b3/0.8", "a2/0.4, a3/0.2"),
        ("b3/0.6, b4/1", "a3/0.4"),
        ("b3/1", "a2/0.4"),
        ("b3/0.8, b4/1", "a3/0.2"),
    ];

    /// Maps reference concept numbers to canonical indices.
    pub(crate) fn sigma_prime_numbering(
        ctx: &MultiAdjointContext,
        lat: &ConceptLattice,
    ) -> Vec<usize> {
        SIGMA_PRIME_CONCEPTS
            .iter()
            .map(|(e, _)| {
                lat.index_of_extent(&fuzzy(ctx.objects(), ctx.chain(), e))
                    .unwrap()
            })
            .collect()
    }

    /// Extents of the eight concepts of the running example with `σ`, in
    /// the reference numbering.
    pub(crate) const SIGMA_EXTENTS: [&str; 8] = [
        "",
        "b1/0.6, b2/0.8",
        "b3/0.4",
        "b4/1",
        "b1/0.6, b2/1",
        "b1/1, b2/1",
        "b1/1, b2/1, b3/1, b4/1",
        "b3/1",
    ];
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::context::fixtures::{set, sigma, sigma_prime};
    use crate::residuation::{builtin_triple, BuiltinKind, Frame};

    fn g(ctx: &MultiAdjointContext, text: &str) -> FuzzySet {
        fuzzy(ctx.objects(), ctx.chain(), text)
    }

    fn f(ctx: &MultiAdjointContext, text: &str) -> FuzzySet {
        fuzzy(ctx.attributes(), ctx.chain(), text)
    }

    #[test]
    fn derivations_on_running_example() {
        let ctx = sigma_prime();
        assert_eq!(derive_up(&ctx, &g(&ctx, "b3/0.4")), f(&ctx, "a2/1, a3/0.6"));
        assert_eq!(
            derive_up(&ctx, &FuzzySet::bottom(4)),
            FuzzySet::top(3, ctx.chain())
        );
        assert_eq!(
            derive_up(&ctx, &FuzzySet::top(4, ctx.chain())),
            FuzzySet::bottom(3)
        );
        assert_eq!(
            derive_down(&ctx, &FuzzySet::bottom(3)),
            FuzzySet::top(4, ctx.chain())
        );
        assert_eq!(
            derive_down(&ctx, &f(&ctx, "a3/0.8")),
            g(&ctx, "b3/0.2, b4/1")
        );
        let ctx = sigma();
        assert_eq!(
            derive_down(&ctx, &f(&ctx, "a1/1")),
            g(&ctx, "b1/0.6, b2/0.8")
        );
    }

    #[test]
    fn fuzzy_attribute_concepts() {
        let ctx = sigma_prime();
        let c13 = fuzzy_attribute_concept(&ctx, 1, Grade(2)).unwrap();
        assert_eq!(c13.extent, g(&ctx, "b3/1"));
        assert_eq!(c13.intent, f(&ctx, "a2/0.4"));
        assert_eq!(fuzzy_attribute_concept(&ctx, 1, Grade(1)).unwrap(), c13);
        let top = fuzzy_attribute_concept(&ctx, 0, Grade(0)).unwrap();
        assert_eq!(top.extent, FuzzySet::top(4, ctx.chain()));
        assert_eq!(
            fuzzy_attribute_concept(&ctx, 3, Grade(1)),
            Err(ConceptError::UnknownAttribute(3))
        );
        assert_eq!(
            fuzzy_attribute_concept(&ctx, 0, Grade(6)),
            Err(ConceptError::OffGrid(Grade(6)))
        );
        let obj = fuzzy_object_concept(&ctx, 3, Grade(5)).unwrap();
        assert_eq!(obj.extent, g(&ctx, "b4/1"));
    }

    #[test]
    fn sigma_prime_has_fifteen_concepts() {
        let ctx = sigma_prime();
        let lat = enumerate_concepts(&ctx);
        assert_eq!(lat.len(), 15);
        let numbering = sigma_prime_numbering(&ctx, &lat);
        for (i, (_, intent)) in SIGMA_PRIME_CONCEPTS.iter().enumerate() {
            assert_eq!(lat.concepts()[numbering[i]].intent, f(&ctx, intent), "C{i}");
        }
        assert_eq!(numbering[0], lat.bottom());
        assert_eq!(numbering[6], lat.top());
        let shown = lat.concepts()[numbering[2]]
            .extent
            .display(ctx.objects(), ctx.chain())
            .to_string();
        assert_eq!(shown, "{b3/0.2}");
    }

    #[test]
    fn sigma_has_eight_concepts() {
        let ctx = sigma();
        let lat = enumerate_concepts(&ctx);
        assert_eq!(lat.len(), 8);
        let n: Vec<usize> = SIGMA_EXTENTS
            .iter()
            .map(|e| lat.index_of_extent(&g(&ctx, e)).unwrap())
            .collect();
        let expected_covers = [
            (0, 1),
            (1, 4),
            (4, 5),
            (5, 6),
            (0, 2),
            (2, 7),
            (7, 6),
            (3, 6),
            (0, 3),
        ];
        let expected: BTreeSet<(usize, usize)> =
            expected_covers.iter().map(|&(x, y)| (n[x], n[y])).collect();
        assert_eq!(lat.lattice().covers().collect::<BTreeSet<_>>(), expected);
    }

    #[test]
    fn irreducibles_of_sigma_prime() {
        let ctx = sigma_prime();
        let lat = enumerate_concepts(&ctx);
        let n = sigma_prime_numbering(&ctx, &lat);
        assert!(lat.is_meet_irreducible(n[13]));
        assert!(lat.is_meet_irreducible(n[8]));
        assert!(!lat.is_meet_irreducible(n[2]));
        assert_eq!(lat.lattice().meet(n[13], n[8]), n[2]);
        let c13 = lat
            .meet_irreducible_concepts()
            .into_iter()
            .find(|m| m.concept == n[13])
            .unwrap();
        assert!(c13.generators.contains(&(1, Grade(2))));
        assert!(c13.generators.contains(&(1, Grade(1))));

        let structural = lat.lattice().meet_irreducibles();
        let characterized: ElementSet = lat
            .meet_irreducible_concepts()
            .iter()
            .map(|m| m.concept)
            .collect();
        assert_eq!(structural, characterized);
    }

    #[test]
    fn index_sets() {
        let ctx = sigma_prime();
        let lat = enumerate_concepts(&ctx);
        let n = sigma_prime_numbering(&ctx, &lat);
        let (_, m_c) = lat.irreducible_index_sets(&set(&[1, 2]), n[2]).unwrap();
        assert!(m_c.contains(&n[13]) && m_c.contains(&n[8]));
        assert_eq!(lat.lattice().meet_all(m_c.iter().copied()), n[2]);
        let (_, m_c) = lat.irreducible_index_sets(&set(&[0]), n[2]).unwrap();
        assert!(m_c.is_empty());
        for a in [set(&[0]), set(&[1, 2]), set(&[0, 1, 2])] {
            let (_, m_top) = lat.irreducible_index_sets(&a, lat.top()).unwrap();
            assert!(m_top.is_empty());
        }
        assert_eq!(
            lat.irreducible_index_sets(&set(&[0]), 99),
            Err(ConceptError::UnknownConcept(99))
        );
    }

    #[test]
    fn representation_examples() {
        let ctx = sigma();
        let r = check_representation(&ctx, 0, Grade(5), 0, Grade(3)).unwrap();
        assert!(r.concepts_ordered && r.conjunction_below);
        let r = check_representation(&ctx, 0, Grade(5), 2, Grade(5)).unwrap();
        assert!(!r.concepts_ordered && !r.conjunction_below);
        let r = check_representation(&ctx, 2, Grade(0), 1, Grade(4)).unwrap();
        assert!(r.concepts_ordered && r.conjunction_below);
    }

    #[test]
    fn one_by_one_godel() {
        let chain = GradeChain::new(1).unwrap();
        let frame = Frame::new(chain, vec![builtin_triple(chain, BuiltinKind::Godel)]).unwrap();
        let ctx = MultiAdjointContext::new(
            frame,
            vec!["a".into()],
            vec!["b".into()],
            vec![vec![Grade(1)]],
            vec![vec![0]],
        )
        .unwrap();
        let lat = enumerate_concepts(&ctx);
        assert_eq!(lat.len(), 1);
        assert_eq!(
            lat.concepts()[0],
            FormalConcept {
                extent: FuzzySet::new(vec![Grade(1)]),
                intent: FuzzySet::new(vec![Grade(1)]),
            }
        );
    }

    #[test]
    fn limit_is_enforced() {
        assert_eq!(
            enumerate_concepts_limited(&sigma_prime(), 10).unwrap_err(),
            ConceptError::TooMany { limit: 10 }
        );
    }
}
