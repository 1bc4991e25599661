//! Finite bounded lattices stored as precomputed order, meet and join tables.
//!
//! Elements are addressed by index; labels are kept only for lookup and
//! reporting. Every table is filled at construction, so order queries and
//! meet/join are constant time afterwards.

use std::collections::{BTreeSet, HashMap};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A set of lattice elements, by index.
pub type ElementSet = BTreeSet<usize>;

/// Smallest lattice the block machinery accepts.
pub const MIN_BLOCK_LATTICE_SIZE: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("unknown element index {0}")]
    UnknownElement(usize),
    #[error("cover relation has a cycle through `{0}`")]
    CyclicCovers(String),
    #[error("order relation is not {0}")]
    NotAnOrder(&'static str),
    #[error("lattice has no unique {0} element")]
    NotBounded(&'static str),
    #[error("`{left}` and `{right}` have no unique {op}")]
    NotALattice {
        left: String,
        right: String,
        op: &'static str,
    },
    #[error("lattice has {0} element(s); at least 3 are required")]
    TooSmall(usize),
    #[error("lattice has no elements")]
    Empty,
}

/// JSON form of a lattice: element labels plus (lower, upper) pairs.
///
/// The pairs only need to generate the order; they are not required to be
/// the cover relation itself.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

/// Result of [`BoundedLattice::order_ops`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderQuery {
    pub leq: bool,
    pub meet: usize,
    pub join: usize,
}

/// A finite bounded lattice.
///
/// Immutable after construction. Lattices built from user input through
/// [`BoundedLattice::build`] must have at least three elements; lattices built
/// from an order matrix (for example concept lattices) may be smaller, and
/// the block operations reject those with [`LatticeError::TooSmall`].
#[derive(Debug, Clone)]
pub struct BoundedLattice {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    meet: Vec<usize>,
    join: Vec<usize>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
}

impl BoundedLattice {
    /// Builds and validates a lattice from labels and generating pairs.
    pub fn build<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Self, LatticeError> {
        let labels: Vec<String> = elements.iter().map(|s| s.as_ref().to_owned()).collect();
        let index = label_index(&labels)?;
        let n = labels.len();
        if n < MIN_BLOCK_LATTICE_SIZE {
            return Err(LatticeError::TooSmall(n));
        }

        let mut up: Vec<FixedBitSet> = (0..n)
            .map(|i| {
                let mut row = FixedBitSet::with_capacity(n);
                row.insert(i);
                row
            })
            .collect();
        for (lo, hi) in covers {
            let lo = lookup(&index, lo.as_ref())?;
            let hi = lookup(&index, hi.as_ref())?;
            if lo == hi {
                return Err(LatticeError::CyclicCovers(labels[lo].clone()));
            }
            up[lo].insert(hi);
        }
        // Warshall on bit rows.
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        for i in 0..n {
            for j in up[i].ones() {
                if j != i && up[j].contains(i) {
                    return Err(LatticeError::CyclicCovers(labels[i].clone()));
                }
            }
        }
        Self::from_closed_order(labels, index, up)
    }

    /// Builds a lattice from a JSON-level spec.
    pub fn from_spec(spec: &LatticeSpec) -> Result<Self, LatticeError> {
        let covers: Vec<(&str, &str)> = spec
            .covers
            .iter()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect();
        let elements: Vec<&str> = spec.elements.iter().map(String::as_str).collect();
        Self::build(&elements, &covers)
    }

    /// Serializes the lattice with its computed cover relation.
    pub fn to_spec(&self) -> LatticeSpec {
        LatticeSpec {
            elements: self.labels.clone(),
            covers: self
                .covers()
                .map(|(lo, hi)| (self.labels[lo].clone(), self.labels[hi].clone()))
                .collect(),
        }
    }

    /// Builds a lattice from a full order matrix, `leq[i][j]` meaning `i ⪯ j`.
    ///
    /// Reflexivity, antisymmetry and transitivity are checked. No minimum size
    /// is enforced.
    pub fn from_leq(labels: Vec<String>, leq: &[Vec<bool>]) -> Result<Self, LatticeError> {
        let index = label_index(&labels)?;
        let n = labels.len();
        if leq.len() != n || leq.iter().any(|row| row.len() != n) {
            return Err(LatticeError::NotAnOrder("square over the elements"));
        }
        let up: Vec<FixedBitSet> = leq
            .iter()
            .map(|row| {
                let mut bits = FixedBitSet::with_capacity(n);
                for (j, &le) in row.iter().enumerate() {
                    bits.set(j, le);
                }
                bits
            })
            .collect();
        for i in 0..n {
            if !up[i].contains(i) {
                return Err(LatticeError::NotAnOrder("reflexive"));
            }
            for j in up[i].ones() {
                if j != i && up[j].contains(i) {
                    return Err(LatticeError::NotAnOrder("antisymmetric"));
                }
                if !up[j].is_subset(&up[i]) {
                    return Err(LatticeError::NotAnOrder("transitive"));
                }
            }
        }
        Self::from_closed_order(labels, index, up)
    }

    fn from_closed_order(
        labels: Vec<String>,
        index: HashMap<String, usize>,
        up: Vec<FixedBitSet>,
    ) -> Result<Self, LatticeError> {
        let n = labels.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let mut down: Vec<FixedBitSet> = (0..n).map(|_| FixedBitSet::with_capacity(n)).collect();
        for (i, row) in up.iter().enumerate() {
            for j in row.ones() {
                down[j].insert(i);
            }
        }

        let bottom =
            unique(n, |i| up[i].count_ones(..) == n).ok_or(LatticeError::NotBounded("bottom"))?;
        let top =
            unique(n, |i| down[i].count_ones(..) == n).ok_or(LatticeError::NotBounded("top"))?;

        let by_down: HashMap<&FixedBitSet, usize> =
            down.iter().enumerate().map(|(i, d)| (d, i)).collect();
        let by_up: HashMap<&FixedBitSet, usize> =
            up.iter().enumerate().map(|(i, u)| (u, i)).collect();
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for x in 0..n {
            for y in x..n {
                // The meet is the lower bound whose down-set is exactly the
                // set of common lower bounds.
                let mut common = down[x].clone();
                common.intersect_with(&down[y]);
                let m = *by_down
                    .get(&common)
                    .ok_or_else(|| LatticeError::NotALattice {
                        left: labels[x].clone(),
                        right: labels[y].clone(),
                        op: "meet",
                    })?;
                let mut common = up[x].clone();
                common.intersect_with(&up[y]);
                let j = *by_up
                    .get(&common)
                    .ok_or_else(|| LatticeError::NotALattice {
                        left: labels[x].clone(),
                        right: labels[y].clone(),
                        op: "join",
                    })?;
                meet[x * n + y] = m;
                meet[y * n + x] = m;
                join[x * n + y] = j;
                join[y * n + x] = j;
            }
        }

        let mut upper_covers = vec![Vec::new(); n];
        let mut lower_covers = vec![Vec::new(); n];
        for x in 0..n {
            let mut strict = up[x].clone();
            strict.set(x, false);
            for y in strict.ones() {
                let mut between = down[y].clone();
                between.intersect_with(&strict);
                if between.count_ones(..) == 1 {
                    upper_covers[x].push(y);
                    lower_covers[y].push(x);
                }
            }
        }

        Ok(Self {
            labels,
            index,
            up,
            down,
            meet,
            join,
            upper_covers,
            lower_covers,
            bottom,
            top,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn is_bound(&self, x: usize) -> bool {
        x == self.bottom || x == self.top
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, LatticeError> {
        lookup(&self.index, label)
    }

    /// Resolves a list of labels into an element set.
    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<ElementSet, LatticeError> {
        labels.iter().map(|l| self.index_of(l.as_ref())).collect()
    }

    /// Renders an element set as sorted labels (sorted by element index).
    pub fn labels_of(&self, set: &ElementSet) -> Vec<String> {
        set.iter().map(|&x| self.labels[x].clone()).collect()
    }

    pub fn all(&self) -> ElementSet {
        (0..self.len()).collect()
    }

    pub fn check(&self, x: usize) -> Result<usize, LatticeError> {
        if x < self.len() {
            Ok(x)
        } else {
            Err(LatticeError::UnknownElement(x))
        }
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.len() + y]
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len() + y]
    }

    /// Order relation, meet and join of two elements, with index checking.
    pub fn order_ops(&self, x: usize, y: usize) -> Result<OrderQuery, LatticeError> {
        self.check(x)?;
        self.check(y)?;
        Ok(OrderQuery {
            leq: self.leq(x, y),
            meet: self.meet(x, y),
            join: self.join(x, y),
        })
    }

    /// `↑x`, including `x`.
    pub fn up_set(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.up[x].ones()
    }

    /// `↓x`, including `x`.
    pub fn down_set(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.down[x].ones()
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper_covers[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower_covers[x]
    }

    /// The cover relation as (lower, upper) pairs in index order.
    pub fn covers(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.upper_covers
            .iter()
            .enumerate()
            .flat_map(|(lo, his)| his.iter().map(move |&hi| (lo, hi)))
    }

    /// Meet of a set of elements; the empty meet is the top.
    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Join of a set of elements; the empty join is the bottom.
    pub fn join_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items
            .into_iter()
            .fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Meet-irreducible elements: the non-top elements with exactly one
    /// upper cover.
    pub fn meet_irreducibles(&self) -> ElementSet {
        (0..self.len())
            .filter(|&x| x != self.top && self.upper_covers[x].len() == 1)
            .collect()
    }

    /// The meet-irreducibles above `x`; their meet is `x`.
    pub fn irreducible_decomposition(&self, x: usize) -> Result<ElementSet, LatticeError> {
        self.check(x)?;
        Ok(self
            .meet_irreducibles()
            .into_iter()
            .filter(|&m| self.leq(x, m))
            .collect())
    }
}

fn label_index(labels: &[String]) -> Result<HashMap<String, usize>, LatticeError> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(LatticeError::DuplicateLabel(l.clone()));
        }
    }
    Ok(index)
}

fn lookup(index: &HashMap<String, usize>, label: &str) -> Result<usize, LatticeError> {
    index
        .get(label)
        .copied()
        .ok_or_else(|| LatticeError::UnknownLabel(label.to_owned()))
}

fn unique(n: usize, pred: impl Fn(usize) -> bool) -> Option<usize> {
    let mut found = (0..n).filter(|&i| pred(i));
    let first = found.next()?;
    found.next().is_none().then_some(first)
}
