use std::sync::OnceLock;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use shape_forge::enumerate::{
    assemble, enumerate_shapes, express_in_basis, replay_provenance, EnumerationConfig, GenMonomial, ModuleVector,
    SymPoly,
};
use shape_forge::multipoly::{antisymmetrize, MPoly, SlaterIndex};
use shape_forge::shiftops::{apply_symword, Letter, SymWord, Word};

fn shapes_3_3() -> &'static Vec<MPoly> {
    static SHAPES: OnceLock<Vec<MPoly>> = OnceLock::new();
    SHAPES.get_or_init(|| enumerate_shapes(3, 3, &EnumerationConfig::default()).unwrap().polys())
}

fn random_word(rng: &mut ChaCha8Rng, d: usize) -> SymWord {
    let len = rng.gen_range(1..=4);
    let letters = (0..len)
        .map(|_| {
            let c = rng.gen_range(0..d);
            let amount = rng.gen_range(1..=3);
            if rng.gen_bool(0.4) {
                Letter::up(c, amount)
            } else {
                Letter::down(c, amount)
            }
        })
        .collect();
    SymWord::new(Word::new(letters))
}

/// A random integer combination of Slater determinants.
fn random_antisymmetric(rng: &mut ChaCha8Rng, n: usize, d: usize) -> MPoly {
    let mut acc = MPoly::zero(n, d);
    for _ in 0..rng.gen_range(1..=3) {
        let mut rows = Vec::new();
        while rows.len() < n {
            let row: smallvec::SmallVec<[u32; 8]> = (0..d).map(|_| rng.gen_range(0..4)).collect();
            if !rows.contains(&row) {
                rows.push(row);
            }
        }
        let det = antisymmetrize(&SlaterIndex::new(rows).unwrap(), d);
        acc = acc.add(&det.scale(&BigInt::from(rng.gen_range(-3i64..=3)))).unwrap();
    }
    acc
}

/// A random symmetric polynomial of weight `w` in the generators.
fn random_sym(rng: &mut ChaCha8Rng, n: usize, d: usize, w: usize) -> SymPoly {
    let mut out = SymPoly::new();
    for _ in 0..rng.gen_range(0..=2) {
        let mut gen = GenMonomial::one(n, d);
        let mut left = w;
        while left > 0 {
            let slots: Vec<usize> = (0..n * d).filter(|s| s % n < left).collect();
            let &slot = slots.choose(rng).expect("weight one is always available");
            gen.0[slot] += 1;
            left -= slot % n + 1;
        }
        let c = BigInt::from(rng.gen_range(-4i64..=4));
        *out.entry(gen).or_default() += c;
    }
    out.retain(|_, c| *c != BigInt::from(0));
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn symmetrized_words_preserve_antisymmetry(seed in any::<u64>(), n in 1usize..=3, d in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let word = random_word(&mut rng, d);
        let psi = random_antisymmetric(&mut rng, n, d);
        prop_assert!(psi.is_antisymmetric());
        let image = apply_symword(&word, &psi);
        prop_assert!(image.is_antisymmetric(), "{word} broke antisymmetry");
        if let (Some(g), false) = (psi.homogeneous_grade(), image.is_zero()) {
            prop_assert_eq!(image.homogeneous_grade(), Some((g as i64 + word.net_grade()) as usize));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn express_inverts_assemble(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shapes = shapes_3_3();
        let grade = rng.gen_range(2..=6usize);
        let mut vector = ModuleVector::zero(shapes.len());
        for (i, s) in shapes.iter().enumerate() {
            let g = s.homogeneous_grade().unwrap();
            if g <= grade && rng.gen_bool(0.3) {
                vector.components[i] = random_sym(&mut rng, 3, 3, grade - g);
            }
        }
        let psi = assemble(&vector, shapes).unwrap();
        let recovered = express_in_basis(&psi, shapes, 9).unwrap();
        if psi.is_zero() {
            prop_assert!(recovered.support().is_empty());
        } else {
            prop_assert_eq!(&recovered, &vector);
        }
    }
}

#[test]
fn replay_small_runs() {
    for (n, d) in [(1, 1), (1, 3), (2, 1), (2, 3), (3, 1), (2, 5), (3, 3)] {
        let e = enumerate_shapes(n, d, &EnumerationConfig::default()).unwrap();
        replay_provenance(&e.shapes).unwrap();
        assert_eq!(e.tree.edges.len(), e.shapes.len() - 1);
    }
}
