mod common;

use std::collections::HashMap;

use blc::ancestry::{ancestries, count_table, dimension_census, preancestries, verify_identities, Ancestry, WordCtx};
use blc::clifford::{CliffElem, Quat};
use blc::cw::{build_complex, euler_by_formula, BuildOptions};
use blc::matrix_lab::{ancestry_of, l_of, q_of, random_sample, sample_stratum, LowerTriangular};
use blc::perm::{all_permutations, canonical_word, reduced_words, Permutation, Word};
use common::{mat_mul, rep};
use proptest::prelude::*;
use rand::SeedableRng;

fn perm(points: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=points).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_oneline(&v).unwrap())
}

/// A random reduced word of `σ`, built by random descents.
fn random_word(sigma: &Permutation, picks: &[usize]) -> Word {
    let mut p = *sigma;
    let mut rev = Vec::new();
    let mut t = 0;
    while !p.is_identity() {
        let ds: Vec<usize> = (1..=p.n()).filter(|&i| !p.is_ascent(i)).collect();
        let i = ds[picks[t % picks.len()] % ds.len()];
        t += 1;
        rev.push(i);
        p = p.mul_gen(i);
    }
    rev.reverse();
    Word::new(sigma.n(), &rev).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inversions_and_inverse(p in perm(6)) {
        prop_assert_eq!(p.inv(), p.inversions().len());
        prop_assert_eq!(p.inverse().inv(), p.inv());
        prop_assert!(p.then(&p.inverse()).is_identity());
        let w = canonical_word(&p);
        prop_assert_eq!(w.len(), p.inv());
        prop_assert_eq!(w.product(), p);
        prop_assert!(Permutation::identity(6).bruhat_leq(&p));
    }

    #[test]
    fn random_words_are_reduced(p in perm(6), picks in prop::collection::vec(0usize..6, 1..20)) {
        let w = random_word(&p, &picks);
        prop_assert!(w.is_reduced());
        prop_assert_eq!(w.product(), p);
    }

    #[test]
    fn preancestry_census_is_word_independent(p in perm(5), picks in prop::collection::vec(0usize..6, 1..20)) {
        let a = WordCtx::new(canonical_word(&p)).unwrap();
        let b = WordCtx::new(random_word(&p, &picks)).unwrap();
        prop_assert_eq!(dimension_census(&preancestries(&a)), dimension_census(&preancestries(&b)));
    }

    #[test]
    fn counts_are_word_independent(p in perm(5), picks in prop::collection::vec(0usize..6, 1..20)) {
        let a = WordCtx::new(canonical_word(&p)).unwrap();
        let b = WordCtx::new(random_word(&p, &picks)).unwrap();
        let (ta, tb) = (count_table(&a), count_table(&b));
        for r in a.coset() {
            prop_assert_eq!(ta.cells_by_dim(r), tb.cells_by_dim(r));
        }
        prop_assert!(verify_identities(&b, &tb).passed());
    }

    /// Sign vectors: `P(ε)` from the count path agrees with the matrix product of `(1 ± â_i)/√2`.
    #[test]
    fn sign_vectors_match_matrix_products(p in perm(4), mask in any::<u64>()) {
        let ctx = WordCtx::new(canonical_word(&p)).unwrap();
        let mask = mask & ((1u64 << ctx.len()) - 1);
        let a = Ancestry::from_sign_mask(&ctx, mask).unwrap();
        let n = ctx.n();
        let mut m = rep(&CliffElem::one(n));
        for k in 0..ctx.len() {
            let i = ctx.letter(k + 1);
            let g = if mask >> k & 1 == 1 { CliffElem::grave_gen(n, i) } else { CliffElem::acute_gen(n, i) };
            m = mat_mul(&m, &rep(&g));
        }
        prop_assert_eq!(rep(&a.p(&ctx).to_cliff()), m);
    }

    #[test]
    fn l_of_inverts_q_of(entries in prop::collection::vec(-3.0f64..3.0, 10)) {
        let l = LowerTriangular::from_entries(4, &entries).unwrap();
        let q = q_of(&l);
        let qtq = q.transpose() * &q;
        prop_assert!((qtq - nalgebra::DMatrix::<f64>::identity(5, 5)).amax() < 1e-10);
        prop_assert!((q.determinant() - 1.0).abs() < 1e-10);
        let back = l_of(&q).unwrap();
        prop_assert!((back.matrix() - l.matrix()).amax() < 1e-8);
    }

    #[test]
    fn sign_action_flips_sample_signs(p in perm(4), e in 0u32..8, seed in any::<u64>()) {
        let w = canonical_word(&p);
        prop_assume!(!w.is_empty());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let signs: Vec<i8> = (0..w.len()).map(|k| if seed >> k & 1 == 1 { -1 } else { 1 }).collect();
        let l = random_sample(&w, &signs, &mut rng).unwrap();
        let le = l.act_e(e);
        let ctx = WordCtx::new(w.clone()).unwrap();
        let want: Vec<i8> = signs
            .iter()
            .enumerate()
            .map(|(k, &s)| if e >> (w.letter(k + 1) - 1) & 1 == 1 { -s } else { s })
            .collect();
        let got = ancestry_of(&ctx, &le).unwrap();
        prop_assert_eq!(got.ancestry.eps(), want.as_slice());
    }
}

#[test]
fn preancestry_census_all_s4_words() {
    for p in all_permutations(4) {
        let words = reduced_words(&p);
        let want = dimension_census(&preancestries(&WordCtx::new(words[0].clone()).unwrap()));
        for w in &words[1..] {
            assert_eq!(dimension_census(&preancestries(&WordCtx::new(w.clone()).unwrap())), want, "{w}");
        }
    }
}

#[test]
fn euler_matches_formula_and_edges_match_order() {
    for p in all_permutations(5) {
        let ctx = WordCtx::canonical(&p).unwrap();
        let table = count_table(&ctx);
        for r in ctx.coset() {
            let cx = build_complex(&ctx, r, BuildOptions { faces: false, check_edges: true }).unwrap();
            assert_eq!(cx.euler(), euler_by_formula(&table, r), "{p} {}", ctx.z(r));
        }
    }
}

#[test]
fn enumerated_ancestries_match_table() {
    for w in ["a1 a2 a1 a3 a2 a1", "a2 a1 a3 a2", "a1 a2 a3 a2 a1"] {
        let ctx = WordCtx::new(Word::parse(w, Some(3)).unwrap()).unwrap();
        let table = count_table(&ctx);
        let mut by_r: HashMap<(Quat, usize), u64> = HashMap::new();
        for a in ancestries(&ctx) {
            *by_r.entry((a.r(), a.dim())).or_default() += 1;
        }
        for r in ctx.coset() {
            let cells = table.cells_by_dim(r);
            for (d, &c) in cells.iter().enumerate() {
                assert_eq!(by_r.get(&(r, d)).copied().unwrap_or(0), c);
            }
        }
    }
}

#[test]
fn every_dim0_stratum_has_its_samples() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let w = Word::parse("a2 a1 a3 a2", Some(3)).unwrap();
    let ctx = WordCtx::new(w.clone()).unwrap();
    for a in ancestries(&ctx).into_iter().filter(|a| a.dim() == 0) {
        let l = random_sample(&w, a.eps(), &mut rng).unwrap();
        let c = ancestry_of(&ctx, &l).unwrap();
        assert_eq!(c.ancestry, a);
        assert!(c.component_consistent);
    }
    assert!(sample_stratum(&w, &[1.0; 3]).is_err());
}
