#![allow(dead_code)]

use std::path::PathBuf;

use fca_blocks::concepts::{ConceptLattice, FuzzySet};
use fca_blocks::context::MultiAdjointContext;
use fca_blocks::residuation::{
    builtin_triple, BuiltinKind, ConjunctorRegistry, Frame, Grade, GradeChain,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

pub fn load(name: &str) -> MultiAdjointContext {
    let text = std::fs::read_to_string(data(name)).unwrap();
    MultiAdjointContext::from_json(&text, &ConjunctorRegistry::with_builtins()).unwrap()
}

/// Parses `"b3/0.2, b4/1"` over the given labels.
pub fn fuzzy(labels: &[String], chain: GradeChain, text: &str) -> FuzzySet {
    let mut values = vec![Grade::BOTTOM; labels.len()];
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (label, grade) = item.split_once('/').unwrap();
        let i = labels.iter().position(|l| l == label).unwrap();
        values[i] = chain.parse_str(grade).unwrap();
    }
    FuzzySet::new(values)
}

/// `(extent, intent)` of the fifteen concepts of `sigma_prime.json`, in the
/// reference numbering.
pub const SIGMA_PRIME_CONCEPTS: [(&str, &str); 15] = [
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

/// `(extent, intent)` of the eight concepts of `sigma.json`, in the
/// reference numbering.
pub const SIGMA_CONCEPTS: [(&str, &str); 8] = [
    ("", "a1/1, a2/1, a3/1"),
    ("b1/0.6, b2/0.8", "a1/1"),
    ("b3/0.4", "a2/1"),
    ("b4/1", "a3/1"),
    ("b1/0.6, b2/1", "a1/0.8"),
    ("b1/1, b2/1", "a1/0.6"),
    ("b1/1, b2/1, b3/1, b4/1", ""),
    ("b3/1", "a2/0.4"),
];

/// Cover pairs of the `sigma.json` lattice, in the reference numbering.
pub const SIGMA_COVERS: [(usize, usize); 9] = [
    (0, 1),
    (1, 4),
    (4, 5),
    (5, 6),
    (0, 2),
    (2, 7),
    (7, 6),
    (0, 3),
    (3, 6),
];

/// Canonical index of each reference concept number.
pub fn numbering(
    ctx: &MultiAdjointContext,
    lat: &ConceptLattice,
    table: &[(&str, &str)],
) -> Vec<usize> {
    table
        .iter()
        .map(|(e, _)| {
            lat.index_of_extent(&fuzzy(ctx.objects(), ctx.chain(), e))
                .unwrap_or_else(|| panic!("no concept with extent {{{e}}}"))
        })
        .collect()
}

/// A random normalized context with at most `max_side` attributes and
/// objects, at most `max_n` grade steps, and `σ` over Gödel and Łukasiewicz.
pub fn random_context(seed: u64, max_side: usize, max_n: u16) -> MultiAdjointContext {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let n = rng.gen_range(1..=max_n);
        let na = rng.gen_range(2..=max_side);
        let nb = rng.gen_range(2..=max_side);
        let density = rng.gen_range(0.2..0.7);
        let relation: Vec<Vec<Grade>> = (0..na)
            .map(|_| {
                (0..nb)
                    .map(|_| {
                        if rng.gen_bool(density) {
                            Grade(rng.gen_range(1..=n))
                        } else {
                            Grade::BOTTOM
                        }
                    })
                    .collect()
            })
            .collect();
        let sigma: Vec<Vec<usize>> = (0..na)
            .map(|_| (0..nb).map(|_| rng.gen_range(0..2)).collect())
            .collect();
        let chain = GradeChain::new(n).unwrap();
        let frame = Frame::new(
            chain,
            vec![
                builtin_triple(chain, BuiltinKind::Godel),
                builtin_triple(chain, BuiltinKind::Lukasiewicz),
            ],
        )
        .unwrap();
        let ctx = MultiAdjointContext::new(
            frame,
            (1..=na).map(|i| format!("a{i}")).collect(),
            (1..=nb).map(|i| format!("b{i}")).collect(),
            relation,
            sigma,
        )
        .unwrap();
        if ctx.is_normalized() {
            return ctx;
        }
    }
}
