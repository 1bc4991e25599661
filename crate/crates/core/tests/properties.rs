mod common;

use common::random_context;
use fca_blocks::blocks::{
    check_block, classify_pair, complement_block, enumerate_block_decompositions,
    enumerate_minimal_blocks, union_blocks, PairRelation,
};
use fca_blocks::bridge::{
    blocks_from_decomposition, check_single_home, subcontexts_from_blocks, verify_equivalence,
};
use fca_blocks::concepts::{
    check_representation, derive_down, derive_up, enumerate_concepts, FuzzySet,
};
use fca_blocks::lattice::MIN_BLOCK_LATTICE_SIZE;
use fca_blocks::oracle;
use fca_blocks::residuation::{builtin_triple, BuiltinKind, Grade, GradeChain};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_fuzzy(rng: &mut ChaCha8Rng, len: usize, n: u16) -> FuzzySet {
    FuzzySet::new((0..len).map(|_| Grade(rng.gen_range(0..=n))).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn galois_connection_laws(seed in any::<u64>()) {
        let ctx = random_context(seed, 4, 5);
        let n = ctx.chain().granularity();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        for _ in 0..20 {
            let g = random_fuzzy(&mut rng, ctx.n_objects(), n);
            let g2 = g.meet(&random_fuzzy(&mut rng, ctx.n_objects(), n));
            let f = random_fuzzy(&mut rng, ctx.n_attributes(), n);
            // antitone
            prop_assert!(derive_up(&ctx, &g).le(&derive_up(&ctx, &g2)));
            // g ≤ f↓ iff f ≤ g↑
            prop_assert_eq!(g.le(&derive_down(&ctx, &f)), f.le(&derive_up(&ctx, &g)));
            // extensive, and ↑↓↑ = ↑
            let up = derive_up(&ctx, &g);
            prop_assert!(g.le(&derive_down(&ctx, &up)));
            prop_assert_eq!(derive_up(&ctx, &derive_down(&ctx, &up)), up);
        }
    }

    #[test]
    fn concepts_match_brute_force(seed in any::<u64>()) {
        let ctx = random_context(seed, 4, 4);
        let lat = enumerate_concepts(&ctx);
        let brute = oracle::brute_concepts(&ctx).unwrap();
        prop_assert_eq!(lat.concepts(), brute.as_slice());
        for c in lat.concepts() {
            prop_assert_eq!(&derive_up(&ctx, &c.extent), &c.intent);
            prop_assert_eq!(&derive_down(&ctx, &c.intent), &c.extent);
        }
    }

    #[test]
    fn decompositions_match_brute_force(seed in any::<u64>()) {
        let ctx = random_context(seed, 4, 5);
        let fast: Vec<_> = ctx.enumerate_decompositions().unwrap().iter().map(|d| d.parts().to_vec()).collect();
        prop_assert_eq!(fast, oracle::brute_decompositions(&ctx).unwrap());
    }

    #[test]
    fn representation_equivalence(seed in any::<u64>()) {
        let ctx = random_context(seed, 4, 5);
        for a in 0..ctx.n_attributes() {
            for b in 0..ctx.n_objects() {
                for x in ctx.chain().grades() {
                    for y in ctx.chain().grades() {
                        prop_assert!(check_representation(&ctx, a, x, b, y).unwrap().holds());
                    }
                }
            }
        }
    }

    #[test]
    fn fuzzy_attribute_concepts_generate(seed in any::<u64>()) {
        let ctx = random_context(seed, 4, 5);
        let lat = enumerate_concepts(&ctx);
        let lattice = lat.lattice();
        let s = ctx.chain().size();
        for c in 0..lat.len() {
            let above = (0..ctx.n_attributes())
                .flat_map(|a| (0..s).map(move |x| (a, x)))
                .map(|(a, x)| lat.attribute_concept(a, Grade(x as u16)).unwrap())
                .filter(|&d| lattice.leq(c, d));
            prop_assert_eq!(lattice.meet_all(above), c);
            let irr = lattice.irreducible_decomposition(c).unwrap();
            prop_assert_eq!(lattice.meet_all(irr.iter().copied()), c);
            let m_all: std::collections::BTreeSet<usize> = (0..ctx.n_attributes()).collect();
            let (_, m_c) = lat.irreducible_index_sets(&m_all, c).unwrap();
            prop_assert_eq!(lattice.meet_all(m_c), c);
        }
        let characterized: std::collections::BTreeSet<usize> = lat.meet_irreducible_concepts().iter().map(|m| m.concept).collect();
        prop_assert_eq!(characterized, lattice.meet_irreducibles());
    }

    #[test]
    fn block_invariants(seed in any::<u64>()) {
        let ctx = random_context(seed, 4, 3);
        let lat = enumerate_concepts(&ctx);
        let lattice = lat.lattice();
        prop_assume!(lattice.len() >= MIN_BLOCK_LATTICE_SIZE && lattice.len() <= oracle::MAX_BRUTE_LATTICE);
        let brute = oracle::brute_minimal_blocks(lattice).unwrap();
        let minimal = enumerate_minimal_blocks(lattice).unwrap_or_default();
        let mut sets: Vec<_> = minimal.iter().map(|b| b.members().clone()).collect();
        sets.sort();
        prop_assert_eq!(&sets, &brute);
        let all_blocks = oracle::brute_blocks(lattice).unwrap();
        for b in &minimal {
            prop_assert!(check_block(lattice, b.members()).is_ok());
            prop_assert!(all_blocks.contains(b.members()));
        }
        for (i, p) in minimal.iter().enumerate() {
            for q in &minimal[i + 1..] {
                prop_assert!(matches!(classify_pair(p, q).unwrap(), PairRelation::Independent));
            }
        }
        for b in &all_blocks {
            prop_assert!(check_block(lattice, b).is_ok());
        }
    }

    #[test]
    fn complement_closure(seed in any::<u64>()) {
        let ctx = random_context(seed, 4, 3);
        let lat = enumerate_concepts(&ctx);
        let lattice = lat.lattice();
        prop_assume!(lattice.len() >= MIN_BLOCK_LATTICE_SIZE);
        let Ok(minimal) = enumerate_minimal_blocks(lattice) else { return Ok(()); };
        for dec in enumerate_block_decompositions(lattice) {
            for block in dec.blocks() {
                prop_assert!(block.is_complete());
                let complement = complement_block(lattice, block).unwrap();
                let others: Vec<_> = dec.blocks().iter().filter(|b| b.members() != block.members()).cloned().collect();
                let union = if others.len() == 1 { others[0].clone() } else { union_blocks(&others).unwrap() };
                prop_assert_eq!(complement.members(), union.members());
            }
        }
        if minimal.len() >= 2 {
            prop_assert_eq!(enumerate_block_decompositions(lattice).len() + 1, bell(minimal.len()));
        }
    }

    #[test]
    fn bridge_roundtrip_and_single_home(seed in any::<u64>()) {
        let ctx = random_context(seed, 4, 5);
        let lat = enumerate_concepts(&ctx);
        for dec in ctx.enumerate_decompositions().unwrap() {
            prop_assert!(check_single_home(&lat, &dec).is_ok());
            let blocks = blocks_from_decomposition(&ctx, &lat, &dec).unwrap();
            prop_assert_eq!(subcontexts_from_blocks(&ctx, &lat, &blocks).unwrap(), dec);
        }
        let report = verify_equivalence(&ctx).unwrap();
        prop_assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
    }
}

fn bell(m: usize) -> usize {
    let mut row = vec![1usize];
    for _ in 0..m {
        let mut next = vec![*row.last().unwrap()];
        for v in &row {
            next.push(next.last().unwrap() + v);
        }
        row = next;
    }
    row[0]
}

#[test]
fn adjoint_properties_on_all_chains() {
    for n in 1..=10 {
        let chain = GradeChain::new(n).unwrap();
        for kind in BuiltinKind::ALL {
            let t = builtin_triple(chain, kind);
            assert_eq!(t.verify_adjoint(), Ok(()), "{} at n={n}", kind.name());
            assert_eq!(t.check_properties(), Ok(()), "{} at n={n}", kind.name());
        }
    }
}

#[test]
fn bell_numbers() {
    assert_eq!((1..=5).map(bell).collect::<Vec<_>>(), [1, 2, 5, 15, 52]);
}
