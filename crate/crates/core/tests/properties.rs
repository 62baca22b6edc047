mod common;

use hp2::atlas;
use hp2::complex::{Complex, Simplex};
use hp2::flips;
use hp2::iso;
use hp2::search::{self, SearchOptions, SearchProblem};
use hp2::symmetry::{PermGroup, Permutation};
use proptest::prelude::*;

fn check(r: common::Check) {
    if let Err(why) = r {
        panic!("{why}");
    }
}

#[test]
fn boundary_of_boundary() {
    check(common::boundary_squares_to_zero(200));
}

#[test]
fn integral_and_prime_homology_agree() {
    check(common::snf_against_fp(200));
}

#[test]
fn canonical_keys_ignore_labels() {
    check(common::canonical_key_invariance(1000));
}

#[test]
fn cp2_flips_round_trip() {
    check(common::flip_roundtrips(&[atlas::cp2_9()]));
}

#[test]
fn small_searches_match_brute_force() {
    check(common::search_matches_brute_force());
}

fn conjugated(p: &SearchProblem, h: &Permutation) -> SearchProblem {
    let gens = p.group.generators().iter().map(|g| h.conjugate(g)).collect();
    let mut q = p.clone();
    q.group = PermGroup::from_generators(p.n, gens).unwrap();
    q.mandatory = p.mandatory.iter().map(|&s| h.apply_simplex(s)).collect();
    q
}

#[test]
fn search_counts_survive_conjugation() {
    let mut r = common::rng(5);
    let p = SearchProblem::new(3, 10, 1, atlas::c5_on_ten()).with_star(false);
    let base = search::collect(&p).unwrap();
    for _ in 0..3 {
        let h = common::random_permutation(&mut r, 10);
        let q = conjugated(&p, &h);
        let mut moved: Vec<Complex> = base.iter().map(|k| h.apply_complex(k)).collect();
        moved.sort();
        let mut got = search::collect(&q).unwrap();
        got.sort();
        assert_eq!(got, moved);
    }
    let a5 = SearchProblem::new(8, 15, 490, atlas::named_group("A5").unwrap());
    let h = common::random_permutation(&mut r, 15);
    assert_eq!(search::collect(&conjugated(&a5, &h)).unwrap().len(), 6);
}

#[test]
fn node_count_does_not_depend_on_split() {
    let p = SearchProblem::new(3, 10, 1, atlas::c5_on_ten()).with_star(false);
    let stats: Vec<_> = [0, 1, 2]
        .into_iter()
        .map(|depth| {
            let opts = SearchOptions {
                split_depth: depth,
                ..Default::default()
            };
            search::enumerate_with(&p, &opts, |_| {}).unwrap()
        })
        .collect();
    for s in &stats[1..] {
        assert_eq!(s.nodes, stats[0].nodes);
        assert_eq!(s.solutions, stats[0].solutions);
    }
}

#[test]
fn a5_flips_preserve_shape() {
    let p = SearchProblem::new(8, 15, 490, atlas::named_group("A5").unwrap());
    let k = search::collect(&p).unwrap().remove(0);
    let triples = flips::distinguished_triples(&k).unwrap();
    assert_eq!(triples.len(), 5);
    let a41 = common::table5_row("A4,1");
    for t in &triples {
        let f = flips::apply_triple_flip(&k, t).unwrap();
        let c = iso::certificate(&f).unwrap();
        assert_eq!(c.m.0, a41.0);
    }
    check(common::flip_roundtrips(&[k]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relabeled_complexes_are_isomorphic(seed in any::<u64>(), n in 4usize..9) {
        let mut r = common::rng(seed);
        let k = common::random_complex(&mut r, n);
        let h = common::random_permutation(&mut r, n);
        let image = h.apply_complex(&k);
        let f = iso::find_isomorphism(&k, &image).expect("isomorphic");
        prop_assert_eq!(f.apply_complex(&k), image);
    }

    #[test]
    fn permutation_inverse(images in Just((0..12usize).collect::<Vec<_>>()).prop_shuffle()) {
        let p = Permutation::from_images(&images).unwrap();
        prop_assert!(p.compose(&p.inverse()).is_identity());
        let s = Simplex::from_vertices([0, 3, 7]);
        prop_assert_eq!(p.inverse().apply_simplex(p.apply_simplex(s)), s);
    }

    #[test]
    fn complementarity_implies_star(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let k = common::random_complex(&mut r, 6);
        if k.check_complementarity().is_ok() {
            prop_assert!(k.check_condition_star().is_ok());
        }
    }
}
