#![allow(dead_code)]

use std::collections::BTreeMap;

use hp2::atlas;
use hp2::complex::{Complex, Simplex};
use hp2::flips::{self, FlipGraph};
use hp2::homology::{self, ChainBoundary, Coefficients};
use hp2::iso;
use hp2::search::{self, SearchProblem};
use hp2::symmetry::{PermGroup, Permutation};
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

pub type Check = Result<String, String>;

pub fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

pub fn rng(seed: u64) -> Xoshiro256StarStar {
    Xoshiro256StarStar::seed_from_u64(seed)
}

/// Facets drawn at random on `n` slots, with sizes 1..=4.
pub fn random_complex(r: &mut impl Rng, n: usize) -> Complex {
    let count = r.gen_range(1..=8);
    let facets: Vec<Simplex> = (0..count)
        .map(|_| {
            let size = r.gen_range(1..=4.min(n));
            let mut v: Vec<usize> = (0..n).collect();
            v.shuffle(r);
            Simplex::from_vertices(v.into_iter().take(size))
        })
        .collect();
    Complex::from_facets(n, facets).expect("random facets fit")
}

pub fn random_permutation(r: &mut impl Rng, n: usize) -> Permutation {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(r);
    Permutation::from_images(&v).expect("a permutation")
}

pub fn boundary_squares_to_zero(samples: usize) -> Check {
    let mut r = rng(11);
    let mut list: Vec<Complex> = atlas::atlas_names()
        .iter()
        .map(|n| atlas::atlas_complex(n).expect("atlas entry"))
        .collect();
    for _ in 0..samples {
        let n = r.gen_range(3..=9);
        list.push(random_complex(&mut r, n));
    }
    for (i, k) in list.iter().enumerate() {
        ensure(
            ChainBoundary::new(k).boundary_squares_to_zero(),
            format!("boundary of boundary nonzero on complex {i}"),
        )?;
    }
    Ok(format!("{} complexes", list.len()))
}

/// Universal coefficients: dim H_k(F_p) = b_k + t_k(p) + t_{k-1}(p).
pub fn snf_against_fp(samples: usize) -> Check {
    let mut r = rng(23);
    let mut torsion_seen = 0;
    let mut list = vec![atlas::rp2_6(), atlas::atlas_complex("L1star").expect("atlas")];
    while list.len() < samples {
        let n = r.gen_range(4..=8);
        list.push(random_complex(&mut r, n));
    }
    for (i, k) in list.iter().enumerate() {
        let z = homology::homology(k, Coefficients::Integers);
        if z.torsion.iter().any(|t| !t.is_empty()) {
            torsion_seen += 1;
        }
        for p in [2u64, 3, 5] {
            let fp = homology::homology(k, Coefficients::Prime(p));
            let t = |dim: usize| -> usize {
                z.torsion
                    .get(dim)
                    .map(|ts| {
                        ts.iter()
                            .filter(|x| (*x % p).to_u64() == Some(0))
                            .count()
                    })
                    .unwrap_or(0)
            };
            for dim in 0..z.betti.len().max(fp.betti.len()) {
                let expected = z.betti.get(dim).copied().unwrap_or(0)
                    + t(dim)
                    + if dim > 0 { t(dim - 1) } else { 0 };
                let got = fp.betti.get(dim).copied().unwrap_or(0);
                ensure(
                    expected == got,
                    format!("complex {i}, F{p}, H{dim}: integral gives {expected}, rank gives {got}"),
                )?;
            }
        }
    }
    Ok(format!("{} complexes, {torsion_seen} with torsion", list.len()))
}

pub fn canonical_key_invariance(relabelings: usize) -> Check {
    let mut r = rng(37);
    let names = atlas::atlas_names();
    for name in &names {
        let k = atlas::atlas_complex(name).expect("atlas entry");
        let key = iso::canonical_key(&k);
        for _ in 0..relabelings {
            let p = random_permutation(&mut r, k.n());
            let image = p.apply_complex(&k);
            ensure(
                iso::canonical_key(&image) == key,
                format!("{name}: key changed under {p}"),
            )?;
        }
    }
    Ok(format!("{} entries x {relabelings}", names.len()))
}

/// Every flip of every triple: f-vector kept, inverse flip restores the complex.
pub fn flip_roundtrips(list: &[Complex]) -> Check {
    let mut flips_done = 0;
    for (i, k) in list.iter().enumerate() {
        let d = k.dim();
        for t in flips::distinguished_triples(k).map_err(|e| e.to_string())? {
            let flipped = flips::apply_triple_flip(k, &t).map_err(|e| e.to_string())?;
            ensure(
                flipped.f_vector() == k.f_vector(),
                format!("complex {i}: f-vector changed by {t}"),
            )?;
            ensure(
                flipped.is_weak_pseudomanifold(d),
                format!("complex {i}: {t} broke the pseudomanifold property"),
            )?;
            let back = flips::apply_triple_flip(&flipped, &t.inverse()).map_err(|e| e.to_string())?;
            ensure(back == *k, format!("complex {i}: {t} is not undone"))?;
            flips_done += 1;
        }
    }
    Ok(format!("{flips_done} flips"))
}

fn small_groups(n: usize) -> Vec<(String, PermGroup)> {
    let rotation: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    let mut swap: Vec<usize> = (0..n).collect();
    swap.swap(0, 1);
    let mut out = vec![("trivial".to_string(), PermGroup::trivial(n))];
    for (name, gens) in [
        ("cyclic", vec![rotation.clone()]),
        ("dihedral", vec![rotation, reflection]),
        ("swap", vec![swap]),
    ] {
        let gens = gens
            .iter()
            .map(|g| Permutation::from_images(g).expect("permutation"))
            .collect();
        out.push((name.to_string(), PermGroup::from_generators(n, gens).expect("group")));
    }
    out
}

/// Every problem in a small family whose orbit count stays under 20,
/// compared with exhaustive enumeration.
pub fn search_matches_brute_force() -> Check {
    let mut problems = 0;
    let mut solutions = 0;
    for n in 3..=7 {
        for d in 1..=2usize {
            if d + 1 >= n {
                continue;
            }
            for (gname, g) in small_groups(n) {
                if g.orbits_on_ksubsets(d + 1).len() >= 20 {
                    continue;
                }
                for star in [false, true] {
                    for relaxed in [false, true] {
                        for min_facets in [0, 4] {
                            let mut p = SearchProblem::new(d, n, min_facets, g.clone()).with_star(star);
                            p.require_two_per_ridge_exact = !relaxed;
                            let mut fast = search::collect(&p).map_err(|e| e.to_string())?;
                            fast.sort();
                            let slow = search::brute_force(&p).map_err(|e| e.to_string())?;
                            ensure(
                                fast == slow,
                                format!(
                                    "n={n} d={d} {gname} star={star} relaxed={relaxed} N={min_facets}: search {} vs brute force {}",
                                    fast.len(),
                                    slow.len()
                                ),
                            )?;
                            problems += 1;
                            solutions += slow.len();
                        }
                    }
                }
            }
        }
    }
    // The micro search itself has exactly 20 candidates.
    let p = SearchProblem::new(2, 6, 10, PermGroup::trivial(6));
    let mut fast = search::collect(&p).map_err(|e| e.to_string())?;
    fast.sort();
    ensure(fast == search::brute_force(&p).map_err(|e| e.to_string())?, "RP2 micro search differs")?;
    Ok(format!("{problems} problems, {solutions} solutions"))
}

pub const FIG1_NAMES: [&str; 22] = [
    "A5", "A4,1", "C3,1", "S3,1", "C2,1", "C1,1", "C3,2", "C1,2", "C2,5", "C2,2", "C2,4", "C3,3",
    "A4,2", "C1,7", "C1,6", "C1,5", "C1,3", "C2,3", "C2,7", "C2,6", "C1,4", "S3,2",
];

pub const FIG1_EDGES: [(usize, usize); 40] = [
    (1, 2), (2, 3), (2, 4), (3, 5), (3, 6), (4, 6), (5, 7), (5, 8), (6, 9), (6, 10),
    (6, 11), (7, 12), (7, 13), (8, 10), (8, 12), (8, 14), (8, 15), (8, 16), (9, 11), (9, 14),
    (9, 16), (10, 14), (10, 15), (11, 15), (11, 16), (12, 17), (14, 15), (14, 17), (14, 18), (14, 19),
    (15, 17), (15, 18), (15, 20), (16, 17), (16, 19), (16, 20), (18, 21), (19, 21), (20, 21), (21, 22),
];

pub const FIG1_DOUBLE: [(usize, usize); 2] = [(6, 8), (17, 21)];
pub const FIG1_SELF_INVERSE: [usize; 2] = [4, 18];
pub const FIG1_NON_SELF_INVERSE: [usize; 1] = [6];

/// Table rows (m3..m8, t) of the members of the A5 component.
pub const TABLE5_G0: [(&str, [u64; 6], usize); 22] = [
    ("A5", [1170, 1740, 870, 360, 60, 30], 5),
    ("A4,1", [1206, 1668, 894, 384, 48, 30], 9),
    ("A4,2", [1080, 1896, 822, 348, 54, 30], 4),
    ("S3,1", [1224, 1632, 906, 396, 42, 30], 11),
    ("S3,2", [1047, 1968, 780, 348, 57, 30], 6),
    ("C3,1", [1161, 1746, 876, 366, 51, 30], 7),
    ("C3,2", [1101, 1851, 849, 345, 54, 30], 5),
    ("C3,3", [1119, 1815, 861, 357, 48, 30], 7),
    ("C2,1", [1127, 1804, 864, 352, 53, 30], 6),
    ("C2,2", [1145, 1768, 876, 364, 47, 30], 8),
    ("C2,3", [1088, 1874, 840, 346, 52, 30], 7),
    ("C2,4", [1134, 1793, 861, 363, 49, 30], 7),
    ("C2,5", [1134, 1793, 861, 363, 49, 30], 7),
    ("C2,6", [1077, 1899, 825, 345, 54, 30], 6),
    ("C2,7", [1077, 1899, 825, 345, 54, 30], 6),
    ("C1,1", [1179, 1710, 888, 378, 45, 30], 9),
    ("C1,2", [1145, 1768, 876, 364, 47, 30], 8),
    ("C1,3", [1085, 1883, 831, 349, 52, 30], 6),
    ("C1,4", [1062, 1931, 807, 345, 55, 30], 6),
    ("C1,5", [1100, 1856, 840, 352, 52, 30], 6),
    ("C1,6", [1111, 1831, 855, 353, 50, 30], 7),
    ("C1,7", [1111, 1831, 855, 353, 50, 30], 7),
];

pub fn table5_row(name: &str) -> ([u64; 6], usize) {
    let row = TABLE5_G0
        .iter()
        .find(|r| r.0 == name)
        .expect("name in the table");
    (row.1, row.2)
}

fn group_of(name: &str) -> &str {
    name.split(',').next().expect("nonempty")
}

/// Bijection from figure nodes (1-based) to graph nodes preserving group, m, t,
/// edge multiplicities and loop types, if one exists.
pub fn match_figure(g: &FlipGraph) -> Option<Vec<usize>> {
    let count = FIG1_NAMES.len();
    if g.nodes.len() != count {
        return None;
    }
    let mut fig = vec![vec![0usize; count]; count];
    for &(a, b) in &FIG1_EDGES {
        fig[a - 1][b - 1] += 1;
        fig[b - 1][a - 1] += 1;
    }
    for &(a, b) in &FIG1_DOUBLE {
        fig[a - 1][b - 1] += 2;
        fig[b - 1][a - 1] += 2;
    }
    let fig_loops = |i: usize| {
        (
            usize::from(FIG1_SELF_INVERSE.contains(&(i + 1))),
            usize::from(FIG1_NON_SELF_INVERSE.contains(&(i + 1))),
        )
    };
    let candidates: Vec<Vec<usize>> = FIG1_NAMES
        .iter()
        .enumerate()
        .map(|(i, name)| {
            let (m, t) = table5_row(name);
            (0..count)
                .filter(|&j| {
                    let node = &g.nodes[j];
                    node.group == group_of(name)
                        && node.certificate.map(|c| c.m.0) == Some(m)
                        && node.triples == t
                        && (g.loops[j].self_inverse, g.loops[j].non_self_inverse) == fig_loops(i)
                })
                .collect()
        })
        .collect();
    let mut assign = vec![usize::MAX; count];
    let mut used = vec![false; count];
    fn extend(
        i: usize,
        g: &FlipGraph,
        fig: &[Vec<usize>],
        candidates: &[Vec<usize>],
        assign: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if i == assign.len() {
            return true;
        }
        for &j in &candidates[i] {
            if used[j] || (0..i).any(|h| g.multiplicity(assign[h], j) != fig[h][i]) {
                continue;
            }
            assign[i] = j;
            used[j] = true;
            if extend(i + 1, g, fig, candidates, assign, used) {
                return true;
            }
            used[j] = false;
        }
        false
    }
    extend(0, g, &fig, &candidates, &mut assign, &mut used).then_some(assign)
}

pub fn census(g: &FlipGraph) -> BTreeMap<String, usize> {
    g.census()
}
