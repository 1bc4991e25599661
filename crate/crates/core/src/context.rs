//! Multi-adjoint contexts `(A, B, R, σ)` over a single grade chain,
//! separable subcontexts and decompositions into independent subcontexts.

use std::collections::BTreeSet;
use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::partitions::set_partitions;
use crate::residuation::{
    AdjointTriple, ConjunctorRegistry, Frame, FrameSpec, Grade, GradeChain, GradeError,
    ResiduationError,
};

/// Largest number of units handed to the set-partition enumeration
/// (Bell(12) ≈ 4.2 million decompositions).
pub const MAX_DECOMPOSITION_UNITS: usize = 12;

/// Largest number of components for separable-subcontext enumeration.
pub const MAX_COMPONENTS: usize = 20;

pub type IndexSet = BTreeSet<usize>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ContextError {
    #[error(transparent)]
    Frame(#[from] ResiduationError),
    #[error("relation entry ({attribute}, {object}): {source}")]
    Grade {
        attribute: String,
        object: String,
        source: GradeError,
    },
    #[error("{what} has {found} entries, expected {expected}")]
    Dimension {
        what: String,
        expected: usize,
        found: usize,
    },
    #[error("σ({attribute}, {object}) names `{name}`, which is not a frame conjunctor")]
    UnknownConjunctor {
        attribute: String,
        object: String,
        name: String,
    },
    #[error("conjunctor `{0}` violates the boundary condition x & 1 = 1 & x = x")]
    Boundary(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("context needs at least one attribute and one object")]
    Empty,
    #[error("context is not normalized: {0}")]
    NotNormalized(NormalizationViolation),
    #[error("{count} {what} exceed the enumeration limit of {limit}")]
    TooLarge {
        what: &'static str,
        count: usize,
        limit: usize,
    },
}

/// JSON form of a context.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContextSpec {
    pub frame: FrameSpec,
    pub attributes: Vec<String>,
    pub objects: Vec<String>,
    pub relation: Vec<Vec<Value>>,
    pub sigma: Vec<Vec<String>>,
}

/// Why a context fails to be normalized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalizationViolation {
    AttributeAllZero(String),
    AttributeNoZero(String),
    ObjectAllZero(String),
    ObjectNoZero(String),
}

impl fmt::Display for NormalizationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::AttributeAllZero(a) => write!(f, "attribute `{a}` has no nonzero entry"),
            Self::AttributeNoZero(a) => write!(f, "attribute `{a}` has no zero entry"),
            Self::ObjectAllZero(b) => write!(f, "object `{b}` has no nonzero entry"),
            Self::ObjectNoZero(b) => write!(f, "object `{b}` has no zero entry"),
        }
    }
}

/// Why `(Y, X)` is not a separable subcontext.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeparabilityViolation {
    UnknownAttribute(usize),
    UnknownObject(usize),
    NoAttributes,
    NoObjects,
    AllAttributes,
    AllObjects,
    /// `R` vanishes on `Y × X`.
    EmptyInside,
    /// `R(a, b) ≠ ⊥` with `a ∈ Y`, `b ∉ X`.
    LeaksObject {
        attribute: usize,
        object: usize,
    },
    /// `R(a, b) ≠ ⊥` with `a ∉ Y`, `b ∈ X`.
    LeaksAttribute {
        attribute: usize,
        object: usize,
    },
}

impl fmt::Display for SeparabilityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::UnknownAttribute(a) => write!(f, "attribute index {a} is out of range"),
            Self::UnknownObject(b) => write!(f, "object index {b} is out of range"),
            Self::NoAttributes => f.write_str("attribute subset is empty"),
            Self::NoObjects => f.write_str("object subset is empty"),
            Self::AllAttributes => f.write_str("attribute subset is not proper"),
            Self::AllObjects => f.write_str("object subset is not proper"),
            Self::EmptyInside => f.write_str("relation is zero on the whole rectangle"),
            Self::LeaksObject { attribute, object } => {
                write!(f, "R(a{attribute}, b{object}) ≠ 0 with the object outside")
            }
            Self::LeaksAttribute { attribute, object } => {
                write!(
                    f,
                    "R(a{attribute}, b{object}) ≠ 0 with the attribute outside"
                )
            }
        }
    }
}

/// Why a family of parts is not a decomposition into independent subcontexts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecompositionViolation {
    TooFewParts(usize),
    AttributeCoverage {
        attribute: usize,
        count: usize,
    },
    ObjectCoverage {
        object: usize,
        count: usize,
    },
    NotSeparable {
        part: usize,
        violation: SeparabilityViolation,
    },
    /// `σ(a, b)` has zero-divisors across the boundary of `part`.
    ZeroDivisor {
        part: usize,
        attribute: usize,
        object: usize,
    },
}

impl fmt::Display for DecompositionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::TooFewParts(n) => write!(f, "a decomposition needs at least two parts, got {n}"),
            Self::AttributeCoverage { attribute, count } => {
                write!(f, "attribute a{attribute} lies in {count} parts")
            }
            Self::ObjectCoverage { object, count } => write!(f, "object b{object} lies in {count} parts"),
            Self::NotSeparable { part, violation } => write!(f, "part {part} is not separable: {violation}"),
            Self::ZeroDivisor { part, attribute, object } => write!(
                f,
                "σ(a{attribute}, b{object}) has zero-divisors but crosses the boundary of part {part}"
            ),
        }
    }
}

/// A rectangle `(Y, X)` of attribute and object indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Subcontext {
    pub attributes: IndexSet,
    pub objects: IndexSet,
}

/// A certified decomposition into independent subcontexts, parts sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubcontextDecomposition {
    parts: Vec<Subcontext>,
}

impl SubcontextDecomposition {
    pub fn parts(&self) -> &[Subcontext] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn attribute_partition(&self) -> Vec<IndexSet> {
        self.parts.iter().map(|p| p.attributes.clone()).collect()
    }

    pub fn object_partition(&self) -> Vec<IndexSet> {
        self.parts.iter().map(|p| p.objects.clone()).collect()
    }

    /// Index of the part containing attribute `a`.
    pub fn part_of_attribute(&self, a: usize) -> Option<usize> {
        self.parts.iter().position(|p| p.attributes.contains(&a))
    }

    pub fn part_of_object(&self, b: usize) -> Option<usize> {
        self.parts.iter().position(|p| p.objects.contains(&b))
    }
}

/// A context `(A, B, R, σ)`. `R` and `σ` are stored row-major over `A × B`,
/// `σ` as positions in the frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiAdjointContext {
    frame: Frame,
    attributes: Vec<String>,
    objects: Vec<String>,
    relation: Vec<Grade>,
    sigma: Vec<usize>,
}

impl MultiAdjointContext {
    pub fn new(
        frame: Frame,
        attributes: Vec<String>,
        objects: Vec<String>,
        relation: Vec<Vec<Grade>>,
        sigma: Vec<Vec<usize>>,
    ) -> Result<Self, ContextError> {
        if attributes.is_empty() || objects.is_empty() {
            return Err(ContextError::Empty);
        }
        for labels in [&attributes, &objects] {
            for (i, l) in labels.iter().enumerate() {
                if labels[..i].contains(l) {
                    return Err(ContextError::DuplicateLabel(l.clone()));
                }
            }
        }
        if let Some(t) = frame.triples().iter().find(|t| !t.satisfies_boundary()) {
            return Err(ContextError::Boundary(t.name().to_owned()));
        }
        let (na, nb) = (attributes.len(), objects.len());
        check_shape("relation", &relation, na, nb)?;
        check_shape("sigma", &sigma, na, nb)?;
        let chain = frame.chain();
        for (a, row) in relation.iter().enumerate() {
            for (b, g) in row.iter().enumerate() {
                if !chain.contains(*g) {
                    return Err(ContextError::Grade {
                        attribute: attributes[a].clone(),
                        object: objects[b].clone(),
                        source: GradeError::OffGrid {
                            value: g.0.to_string(),
                            n: chain.granularity(),
                        },
                    });
                }
            }
        }
        for (a, row) in sigma.iter().enumerate() {
            for (b, &t) in row.iter().enumerate() {
                if t >= frame.triples().len() {
                    return Err(ContextError::UnknownConjunctor {
                        attribute: attributes[a].clone(),
                        object: objects[b].clone(),
                        name: format!("#{t}"),
                    });
                }
            }
        }
        Ok(Self {
            frame,
            attributes,
            objects,
            relation: relation.into_iter().flatten().collect(),
            sigma: sigma.into_iter().flatten().collect(),
        })
    }

    pub fn from_spec(
        spec: &ContextSpec,
        registry: &ConjunctorRegistry,
    ) -> Result<Self, ContextError> {
        let frame = Frame::from_spec(&spec.frame, registry)?;
        let chain = frame.chain();
        let (na, nb) = (spec.attributes.len(), spec.objects.len());
        check_shape("relation", &spec.relation, na, nb)?;
        check_shape("sigma", &spec.sigma, na, nb)?;
        let relation = spec
            .relation
            .iter()
            .enumerate()
            .map(|(a, row)| {
                row.iter()
                    .enumerate()
                    .map(|(b, v)| {
                        chain.parse_value(v).map_err(|source| ContextError::Grade {
                            attribute: spec.attributes[a].clone(),
                            object: spec.objects[b].clone(),
                            source,
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let sigma = spec
            .sigma
            .iter()
            .enumerate()
            .map(|(a, row)| {
                row.iter()
                    .enumerate()
                    .map(|(b, name)| {
                        frame
                            .position(name)
                            .ok_or_else(|| ContextError::UnknownConjunctor {
                                attribute: spec.attributes[a].clone(),
                                object: spec.objects[b].clone(),
                                name: name.clone(),
                            })
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(
            frame,
            spec.attributes.clone(),
            spec.objects.clone(),
            relation,
            sigma,
        )
    }

    pub fn from_json(text: &str, registry: &ConjunctorRegistry) -> Result<Self, ContextLoadError> {
        let spec: ContextSpec = serde_json::from_str(text)?;
        Ok(Self::from_spec(&spec, registry)?)
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn chain(&self) -> GradeChain {
        self.frame.chain()
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn n_attributes(&self) -> usize {
        self.attributes.len()
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn attribute_index(&self, label: &str) -> Option<usize> {
        self.attributes.iter().position(|l| l == label)
    }

    pub fn object_index(&self, label: &str) -> Option<usize> {
        self.objects.iter().position(|l| l == label)
    }

    #[inline]
    pub fn relation(&self, a: usize, b: usize) -> Grade {
        self.relation[a * self.objects.len() + b]
    }

    /// Frame position of `σ(a, b)`.
    #[inline]
    pub fn sigma(&self, a: usize, b: usize) -> usize {
        self.sigma[a * self.objects.len() + b]
    }

    #[inline]
    pub fn triple(&self, a: usize, b: usize) -> &AdjointTriple {
        self.frame.triple(self.sigma(a, b))
    }

    fn nonzero(&self, a: usize, b: usize) -> bool {
        self.relation(a, b) != Grade::BOTTOM
    }

    /// First failure of "every row and column has a zero and a nonzero entry".
    pub fn normalization_violation(&self) -> Option<NormalizationViolation> {
        let (na, nb) = (self.n_attributes(), self.n_objects());
        for a in 0..na {
            if !(0..nb).any(|b| self.nonzero(a, b)) {
                return Some(NormalizationViolation::AttributeAllZero(
                    self.attributes[a].clone(),
                ));
            }
            if (0..nb).all(|b| self.nonzero(a, b)) {
                return Some(NormalizationViolation::AttributeNoZero(
                    self.attributes[a].clone(),
                ));
            }
        }
        for b in 0..nb {
            if !(0..na).any(|a| self.nonzero(a, b)) {
                return Some(NormalizationViolation::ObjectAllZero(
                    self.objects[b].clone(),
                ));
            }
            if (0..na).all(|a| self.nonzero(a, b)) {
                return Some(NormalizationViolation::ObjectNoZero(
                    self.objects[b].clone(),
                ));
            }
        }
        None
    }

    pub fn is_normalized(&self) -> bool {
        self.normalization_violation().is_none()
    }

    pub fn require_normalized(&self) -> Result<(), ContextError> {
        match self.normalization_violation() {
            Some(v) => Err(ContextError::NotNormalized(v)),
            None => Ok(()),
        }
    }

    pub fn separability_violation(
        &self,
        y: &IndexSet,
        x: &IndexSet,
    ) -> Option<SeparabilityViolation> {
        let (na, nb) = (self.n_attributes(), self.n_objects());
        if let Some(&a) = y.iter().find(|&&a| a >= na) {
            return Some(SeparabilityViolation::UnknownAttribute(a));
        }
        if let Some(&b) = x.iter().find(|&&b| b >= nb) {
            return Some(SeparabilityViolation::UnknownObject(b));
        }
        if y.is_empty() {
            return Some(SeparabilityViolation::NoAttributes);
        }
        if x.is_empty() {
            return Some(SeparabilityViolation::NoObjects);
        }
        if y.len() == na {
            return Some(SeparabilityViolation::AllAttributes);
        }
        if x.len() == nb {
            return Some(SeparabilityViolation::AllObjects);
        }
        if !y.iter().any(|&a| x.iter().any(|&b| self.nonzero(a, b))) {
            return Some(SeparabilityViolation::EmptyInside);
        }
        for &a in y {
            if let Some(b) = (0..nb).find(|b| !x.contains(b) && self.nonzero(a, *b)) {
                return Some(SeparabilityViolation::LeaksObject {
                    attribute: a,
                    object: b,
                });
            }
        }
        for &b in x {
            if let Some(a) = (0..na).find(|a| !y.contains(a) && self.nonzero(*a, b)) {
                return Some(SeparabilityViolation::LeaksAttribute {
                    attribute: a,
                    object: b,
                });
            }
        }
        None
    }

    pub fn is_separable_subcontext(&self, y: &IndexSet, x: &IndexSet) -> bool {
        self.separability_violation(y, x).is_none()
    }

    /// Certifies `parts` as a decomposition into independent subcontexts and
    /// returns it in canonical order.
    pub fn check_decomposition(
        &self,
        parts: &[Subcontext],
    ) -> Result<SubcontextDecomposition, DecompositionViolation> {
        if parts.len() < 2 {
            return Err(DecompositionViolation::TooFewParts(parts.len()));
        }
        for a in 0..self.n_attributes() {
            let count = parts.iter().filter(|p| p.attributes.contains(&a)).count();
            if count != 1 {
                return Err(DecompositionViolation::AttributeCoverage {
                    attribute: a,
                    count,
                });
            }
        }
        for b in 0..self.n_objects() {
            let count = parts.iter().filter(|p| p.objects.contains(&b)).count();
            if count != 1 {
                return Err(DecompositionViolation::ObjectCoverage { object: b, count });
            }
        }
        for (i, p) in parts.iter().enumerate() {
            if let Some(violation) = self.separability_violation(&p.attributes, &p.objects) {
                return Err(DecompositionViolation::NotSeparable { part: i, violation });
            }
            for a in 0..self.n_attributes() {
                for b in 0..self.n_objects() {
                    let crosses = p.attributes.contains(&a) != p.objects.contains(&b);
                    if crosses && self.triple(a, b).has_zero_divisors() {
                        return Err(DecompositionViolation::ZeroDivisor {
                            part: i,
                            attribute: a,
                            object: b,
                        });
                    }
                }
            }
        }
        let mut parts = parts.to_vec();
        parts.sort();
        Ok(SubcontextDecomposition { parts })
    }

    /// Connected components of the bipartite graph on `A ∪ B` with an edge
    /// wherever `R ≠ ⊥`, plus extra edges from `merge`. Components are
    /// numbered by first appearance; attributes are nodes `0..|A|`, objects
    /// follow.
    fn components(&self, merge: impl Fn(usize, usize) -> bool) -> (usize, Vec<usize>) {
        let (na, nb) = (self.n_attributes(), self.n_objects());
        let mut uf = UnionFind::<usize>::new(na + nb);
        for a in 0..na {
            for b in 0..nb {
                if self.nonzero(a, b) || merge(a, b) {
                    uf.union(a, na + b);
                }
            }
        }
        let roots = uf.into_labeling();
        let mut ids: Vec<Option<usize>> = vec![None; na + nb];
        let mut labels = Vec::with_capacity(na + nb);
        let mut count = 0;
        for r in roots {
            let id = *ids[r].get_or_insert_with(|| {
                count += 1;
                count - 1
            });
            labels.push(id);
        }
        (count, labels)
    }

    fn group_subcontext(&self, labels: &[usize], groups: &IndexSet) -> Subcontext {
        let na = self.n_attributes();
        Subcontext {
            attributes: (0..na).filter(|&a| groups.contains(&labels[a])).collect(),
            objects: (0..self.n_objects())
                .filter(|&b| groups.contains(&labels[na + b]))
                .collect(),
        }
    }

    /// All separable subcontexts: the non-trivial unions of connected
    /// components of the nonzero graph, sorted.
    pub fn enumerate_separable_subcontexts(&self) -> Result<Vec<Subcontext>, ContextError> {
        self.require_normalized()?;
        let (count, labels) = self.components(|_, _| false);
        if count > MAX_COMPONENTS {
            return Err(ContextError::TooLarge {
                what: "components",
                count,
                limit: MAX_COMPONENTS,
            });
        }
        let mut out: Vec<Subcontext> = (1..(1usize << count) - 1)
            .map(|mask| {
                let groups: IndexSet = (0..count).filter(|i| mask >> i & 1 == 1).collect();
                self.group_subcontext(&labels, &groups)
            })
            .collect();
        out.sort();
        Ok(out)
    }

    /// All decompositions into independent subcontexts, sorted by part count
    /// and then by parts.
    ///
    /// Components of the nonzero graph are merged across every pair whose
    /// conjunctor has zero-divisors; each set partition of the resulting
    /// units into at least two groups is a decomposition.
    pub fn enumerate_decompositions(&self) -> Result<Vec<SubcontextDecomposition>, ContextError> {
        self.require_normalized()?;
        let (count, labels) = self.components(|a, b| self.triple(a, b).has_zero_divisors());
        if count > MAX_DECOMPOSITION_UNITS {
            return Err(ContextError::TooLarge {
                what: "independent units",
                count,
                limit: MAX_DECOMPOSITION_UNITS,
            });
        }
        let mut out = Vec::new();
        for partition in set_partitions(count).into_iter().filter(|p| p.len() >= 2) {
            let parts: Vec<Subcontext> = partition
                .iter()
                .map(|g| self.group_subcontext(&labels, &g.iter().copied().collect()))
                .collect();
            let dec = self
                .check_decomposition(&parts)
                .expect("unions of independent units form a decomposition");
            out.push(dec);
        }
        out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
        Ok(out)
    }

    /// Labels of an index set of attributes.
    pub fn attribute_labels(&self, set: &IndexSet) -> Vec<&str> {
        set.iter().map(|&a| self.attributes[a].as_str()).collect()
    }

    pub fn object_labels(&self, set: &IndexSet) -> Vec<&str> {
        set.iter().map(|&b| self.objects[b].as_str()).collect()
    }
}

fn check_shape<T>(what: &str, rows: &[Vec<T>], na: usize, nb: usize) -> Result<(), ContextError> {
    if rows.len() != na {
        return Err(ContextError::Dimension {
            what: what.to_owned(),
            expected: na,
            found: rows.len(),
        });
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != nb {
            return Err(ContextError::Dimension {
                what: format!("{what} row {i}"),
                expected: nb,
                found: row.len(),
            });
        }
    }
    Ok(())
}

/// Failure to read a context from JSON text.
#[derive(Debug, Error)]
pub enum ContextLoadError {
    #[error("{0}")]
    Parse(#[from] serde_json::Error),
    #[error(transparent)]
    Context(#[from] ContextError),
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::residuation::{builtin_triple, BuiltinKind};

    fn tiny(relation: Vec<Vec<u16>>) -> MultiAdjointContext {
        let chain = GradeChain::new(2).unwrap();
        let frame = Frame::new(chain, vec![builtin_triple(chain, BuiltinKind::Godel)]).unwrap();
        let (na, nb) = (relation.len(), relation[0].len());
        MultiAdjointContext::new(
            frame,
            (0..na).map(|i| format!("a{}", i + 1)).collect(),
            (0..nb).map(|i| format!("b{}", i + 1)).collect(),
            relation
                .into_iter()
                .map(|r| r.into_iter().map(Grade).collect())
                .collect(),
            vec![vec![0; nb]; na],
        )
        .unwrap()
    }

    #[test]
    fn running_example_loads() {
        let ctx = sigma_prime();
        assert_eq!(ctx.relation(0, 0), Grade(3));
        assert_eq!(ctx.relation(2, 3), Grade(5));
        assert_eq!(ctx.triple(2, 2).kind(), "lukasiewicz");
        assert_eq!(ctx.triple(2, 1).kind(), "godel");
    }

    #[test]
    fn load_errors() {
        let mut spec: ContextSpec = serde_json::from_value(serde_json::json!({
            "frame": {"grades": 5, "conjunctors": [{"name": "G", "kind": "godel"}]},
            "attributes": ["a1"],
            "objects": ["b1", "b2"],
            "relation": [["0.3", "0"]],
            "sigma": [["G", "G"]],
        }))
        .unwrap();
        let reg = ConjunctorRegistry::with_builtins();
        assert!(matches!(
            MultiAdjointContext::from_spec(&spec, &reg),
            Err(ContextError::Grade { ref object, source: GradeError::OffGrid { .. }, .. }) if object == "b1"
        ));
        spec.relation[0][0] = serde_json::json!("2/5");
        spec.sigma[0][1] = "L".into();
        assert!(matches!(
            MultiAdjointContext::from_spec(&spec, &reg),
            Err(ContextError::UnknownConjunctor { ref name, .. }) if name == "L"
        ));
        spec.sigma[0].pop();
        assert!(matches!(
            MultiAdjointContext::from_spec(&spec, &reg),
            Err(ContextError::Dimension { .. })
        ));
        let err = MultiAdjointContext::from_json("{\"frame\": ", &reg).unwrap_err();
        assert!(err.to_string().contains("line 1 column 10"), "{err}");
    }

    #[test]
    fn boundary_condition_enforced() {
        let chain = GradeChain::new(1).unwrap();
        let zero = AdjointTriple::from_tables(
            "Z",
            "table",
            chain,
            vec![Grade(0); 4],
            vec![Grade(1); 4],
            vec![Grade(1); 4],
        )
        .unwrap();
        let frame = Frame::new(chain, vec![zero]).unwrap();
        let err = MultiAdjointContext::new(
            frame,
            vec!["a".into()],
            vec!["b".into()],
            vec![vec![Grade(1)]],
            vec![vec![0]],
        );
        assert_eq!(err, Err(ContextError::Boundary("Z".into())));
    }

    #[test]
    fn normalization() {
        assert!(sigma().is_normalized());
        assert_eq!(
            tiny(vec![vec![1, 0], vec![0, 0]]).normalization_violation(),
            Some(NormalizationViolation::AttributeAllZero("a2".into()))
        );
        assert_eq!(
            tiny(vec![vec![1, 0], vec![1, 0]]).normalization_violation(),
            Some(NormalizationViolation::ObjectNoZero("b1".into()))
        );
        assert_eq!(
            tiny(vec![vec![1, 0], vec![1, 2]]).normalization_violation(),
            Some(NormalizationViolation::AttributeNoZero("a2".into()))
        );
    }

    #[test]
    fn separability() {
        let ctx = sigma();
        assert!(ctx.is_separable_subcontext(&set(&[0]), &set(&[0, 1])));
        assert_eq!(
            ctx.separability_violation(&set(&[0, 1, 2]), &set(&[0, 1, 2, 3])),
            Some(SeparabilityViolation::AllAttributes)
        );
        assert_eq!(
            ctx.separability_violation(&set(&[0]), &set(&[0, 1, 2])),
            Some(SeparabilityViolation::LeaksAttribute {
                attribute: 1,
                object: 2
            })
        );
        assert_eq!(
            ctx.separability_violation(&set(&[0]), &set(&[0])),
            Some(SeparabilityViolation::LeaksObject {
                attribute: 0,
                object: 1
            })
        );
        assert_eq!(
            ctx.separability_violation(&set(&[1]), &set(&[3])),
            Some(SeparabilityViolation::EmptyInside)
        );
    }

    #[test]
    fn six_separable_subcontexts() {
        let expected: BTreeSet<Subcontext> = numbered()[1..].iter().cloned().collect();
        for ctx in [sigma(), sigma_prime()] {
            let found = ctx.enumerate_separable_subcontexts().unwrap();
            assert_eq!(found.len(), 6);
            assert_eq!(found.iter().cloned().collect::<BTreeSet<_>>(), expected);
            let na: IndexSet = (0..3).collect();
            let nb: IndexSet = (0..4).collect();
            for s in &found {
                let complement = Subcontext {
                    attributes: na.difference(&s.attributes).copied().collect(),
                    objects: nb.difference(&s.objects).copied().collect(),
                };
                assert!(found.contains(&complement));
            }
        }
    }

    #[test]
    fn decompositions_of_running_example() {
        let n = numbered();
        let parts =
            |ids: &[usize]| -> BTreeSet<Subcontext> { ids.iter().map(|&i| n[i].clone()).collect() };
        let found: BTreeSet<BTreeSet<Subcontext>> = sigma()
            .enumerate_decompositions()
            .unwrap()
            .into_iter()
            .map(|d| d.parts().iter().cloned().collect())
            .collect();
        let expected: BTreeSet<_> = [
            parts(&[1, 2, 3]),
            parts(&[1, 6]),
            parts(&[2, 5]),
            parts(&[3, 4]),
        ]
        .into();
        assert_eq!(found, expected);

        let prime = sigma_prime().enumerate_decompositions().unwrap();
        assert_eq!(prime.len(), 1);
        assert_eq!(
            prime[0].parts().iter().cloned().collect::<BTreeSet<_>>(),
            parts(&[1, 6])
        );
    }

    #[test]
    fn zero_divisor_blocks_separation() {
        let ctx = sigma_prime();
        let n = numbered();
        assert_eq!(
            ctx.check_decomposition(&[n[1].clone(), n[2].clone(), n[3].clone()]),
            Err(DecompositionViolation::ZeroDivisor {
                part: 1,
                attribute: 2,
                object: 2
            })
        );
        assert_eq!(
            ctx.check_decomposition(&[n[6].clone()]),
            Err(DecompositionViolation::TooFewParts(1))
        );
        assert_eq!(
            ctx.check_decomposition(&[n[1].clone(), n[4].clone()]),
            Err(DecompositionViolation::AttributeCoverage {
                attribute: 0,
                count: 2
            })
        );
    }

    #[test]
    fn one_component_has_nothing() {
        let ctx = tiny(vec![vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 1]]);
        assert!(ctx.is_normalized());
        assert!(ctx.enumerate_separable_subcontexts().unwrap().is_empty());
        assert!(ctx.enumerate_decompositions().unwrap().is_empty());
    }

    #[test]
    fn non_normalized_rejected_for_decomposition() {
        let ctx = tiny(vec![vec![1, 0], vec![0, 0]]);
        assert!(matches!(
            ctx.enumerate_decompositions(),
            Err(ContextError::NotNormalized(
                NormalizationViolation::AttributeAllZero(_)
            ))
        ));
    }
}
