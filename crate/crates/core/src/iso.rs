//! Canonical forms, isomorphisms, automorphism groups and degree certificates.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{Complex, Simplex};
use crate::symmetry::{PermGroup, Permutation, SymmetryError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsoError {
    #[error("complex is not invariant under the group")]
    NotInvariant,
    #[error("a codimension-two face lies in {0} facets, outside 3..=8")]
    DegreeOutOfRange(u32),
    #[error("certificates need a pure 8-dimensional complex on 15 vertices")]
    ShapeMismatch,
    #[error(transparent)]
    Group(#[from] SymmetryError),
}

/// Exact isomorphism invariant: the facet list under a canonical labeling.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalKey {
    occupied: u8,
    facets: Vec<u32>,
}

impl CanonicalKey {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(1 + 4 * self.facets.len());
        out.push(self.occupied);
        for f in &self.facets {
            out.extend_from_slice(&f.to_le_bytes());
        }
        out
    }
}

/// Result of the canonical labeling search.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub key: CanonicalKey,
    /// Sends each slot to its canonical position.
    pub labeling: Permutation,
    /// Automorphisms met during the search; they generate the full group.
    pub automorphisms: Vec<Permutation>,
}

impl Canonical {
    pub fn complex(&self, n: usize) -> Complex {
        Complex::from_facets(n, self.key.facets.iter().map(|&m| Simplex(m)))
            .expect("canonical facets fit")
    }
}

pub fn canonical_form(k: &Complex) -> Canonical {
    CanonSearch::new(k).run()
}

pub fn canonical_key(k: &Complex) -> CanonicalKey {
    canonical_form(k).key
}

struct CanonSearch<'a> {
    k: &'a Complex,
    /// Occupied vertices in increasing order.
    verts: Vec<usize>,
    /// Facets as lists of indices into `verts`.
    facets: Vec<Vec<usize>>,
    /// Facets containing each vertex index.
    incidence: Vec<Vec<usize>>,
    first: Option<(Vec<u32>, Vec<usize>)>,
    best: Option<(Vec<u32>, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

impl<'a> CanonSearch<'a> {
    fn new(k: &'a Complex) -> Self {
        let verts: Vec<usize> = k.vertex_set().vertices().collect();
        let mut pos = vec![usize::MAX; k.n()];
        for (i, &v) in verts.iter().enumerate() {
            pos[v] = i;
        }
        let facets: Vec<Vec<usize>> = k
            .facets()
            .iter()
            .map(|f| f.vertices().map(|v| pos[v]).collect())
            .collect();
        let mut incidence = vec![Vec::new(); verts.len()];
        for (i, f) in facets.iter().enumerate() {
            for &v in f {
                incidence[v].push(i);
            }
        }
        CanonSearch {
            k,
            verts,
            facets,
            incidence,
            first: None,
            best: None,
            autos: Vec::new(),
        }
    }

    fn run(mut self) -> Canonical {
        let m = self.verts.len();
        // Initial colour: number of facets of each size through the vertex.
        let sigs: Vec<Vec<usize>> = (0..m)
            .map(|v| {
                let mut counts = vec![0usize; 33];
                for &f in &self.incidence[v] {
                    counts[self.facets[f].len()] += 1;
                }
                counts
            })
            .collect();
        let colors = rank(&sigs);
        if m > 0 {
            self.search(colors, &mut Vec::new());
        }
        let n = self.k.n();
        let (key_facets, lab) = self.best.clone().unwrap_or((Vec::new(), Vec::new()));
        let labeling = self.slot_permutation(&lab);
        let automorphisms = self
            .autos
            .iter()
            .map(|a| self.slot_automorphism(a))
            .collect();
        debug_assert_eq!(labeling.n(), n);
        Canonical {
            key: CanonicalKey {
                occupied: m as u8,
                facets: key_facets,
            },
            labeling,
            automorphisms,
        }
    }

    /// Extends a labeling of occupied vertices to all slots.
    fn slot_permutation(&self, lab: &[usize]) -> Permutation {
        let n = self.k.n();
        let mut image = vec![usize::MAX; n];
        for (i, &v) in self.verts.iter().enumerate() {
            image[v] = lab[i];
        }
        let mut next = self.verts.len();
        for slot in image.iter_mut() {
            if *slot == usize::MAX {
                *slot = next;
                next += 1;
            }
        }
        Permutation::from_images(&image).expect("labeling is a bijection")
    }

    fn slot_automorphism(&self, a: &[usize]) -> Permutation {
        let n = self.k.n();
        let mut image: Vec<usize> = (0..n).collect();
        for (i, &v) in self.verts.iter().enumerate() {
            image[v] = self.verts[a[i]];
        }
        Permutation::from_images(&image).expect("automorphism is a bijection")
    }

    fn refine(&self, mut colors: Vec<u32>) -> Vec<u32> {
        let mut classes = count_classes(&colors);
        loop {
            let fsigs: Vec<Vec<u32>> = self
                .facets
                .iter()
                .map(|f| {
                    let mut s: Vec<u32> = f.iter().map(|&v| colors[v]).collect();
                    s.sort_unstable();
                    s
                })
                .collect();
            let fcol = rank(&fsigs);
            let vsigs: Vec<(u32, Vec<u32>)> = (0..colors.len())
                .map(|v| {
                    let mut s: Vec<u32> = self.incidence[v].iter().map(|&f| fcol[f]).collect();
                    s.sort_unstable();
                    (colors[v], s)
                })
                .collect();
            colors = rank(&vsigs);
            let c = count_classes(&colors);
            if c == classes {
                return colors;
            }
            classes = c;
        }
    }

    fn search(&mut self, colors: Vec<u32>, prefix: &mut Vec<usize>) {
        let colors = self.refine(colors);
        let m = colors.len();
        if count_classes(&colors) == m {
            self.leaf(colors.iter().map(|&c| c as usize).collect());
            return;
        }
        let cell = target_cell(&colors);
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cell {
            if !explored.is_empty() && self.pruned(v, &explored, prefix) {
                continue;
            }
            explored.push(v);
            let cv = colors[v];
            let split: Vec<(u32, u32)> = colors
                .iter()
                .enumerate()
                .map(|(w, &c)| (c, u32::from(c == cv && w != v)))
                .collect();
            prefix.push(v);
            self.search(rank(&split), prefix);
            prefix.pop();
        }
    }

    /// Whether `v` lies in the orbit of an explored vertex under the found
    /// automorphisms that fix the prefix pointwise.
    fn pruned(&self, v: usize, explored: &[usize], prefix: &[usize]) -> bool {
        let gens: Vec<&Vec<usize>> = self
            .autos
            .iter()
            .filter(|a| prefix.iter().all(|&p| a[p] == p))
            .collect();
        if gens.is_empty() {
            return false;
        }
        let m = self.verts.len();
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for a in gens {
            for x in 0..m {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, a[x]));
                if rx != ry {
                    parent[rx] = ry;
                }
            }
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&u| find(&mut parent, u) == rv)
    }

    fn leaf(&mut self, lab: Vec<usize>) {
        let mut key: Vec<u32> = self
            .facets
            .iter()
            .map(|f| f.iter().fold(0u32, |a, &v| a | 1 << lab[v]))
            .collect();
        key.sort_unstable();
        if let Some((fk, fl)) = &self.first {
            if *fk == key {
                let a = automorphism_between(fl, &lab);
                self.autos.push(a);
                return;
            }
        } else {
            self.first = Some((key.clone(), lab.clone()));
        }
        match &self.best {
            Some((bk, bl)) if *bk == key => {
                let a = automorphism_between(bl, &lab);
                self.autos.push(a);
            }
            Some((bk, _)) if *bk < key => {}
            _ => self.best = Some((key, lab)),
        }
    }
}

/// The vertex map sending `lab2`-positions onto the same `lab1`-positions.
fn automorphism_between(lab1: &[usize], lab2: &[usize]) -> Vec<usize> {
    let mut inv1 = vec![0; lab1.len()];
    for (v, &p) in lab1.iter().enumerate() {
        inv1[p] = v;
    }
    lab2.iter().map(|&p| inv1[p]).collect()
}

fn rank<T: Ord + Clone>(sigs: &[T]) -> Vec<u32> {
    let mut sorted: Vec<&T> = sigs.iter().collect();
    sorted.sort();
    sorted.dedup();
    sigs.iter()
        .map(|s| sorted.binary_search(&s).expect("present") as u32)
        .collect()
}

fn count_classes(colors: &[u32]) -> usize {
    colors.iter().map(|&c| c as usize + 1).max().unwrap_or(0)
}

/// First smallest non-singleton colour class, vertices in increasing order.
fn target_cell(colors: &[u32]) -> Vec<usize> {
    let k = count_classes(colors);
    let mut sizes = vec![0usize; k];
    for &c in colors {
        sizes[c as usize] += 1;
    }
    let best = (0..k)
        .filter(|&c| sizes[c] > 1)
        .min_by_key(|&c| (sizes[c], c))
        .expect("non-discrete colouring");
    (0..colors.len())
        .filter(|&v| colors[v] as usize == best)
        .collect()
}

/// A slot bijection carrying the facets of `k1` onto those of `k2`.
pub fn find_isomorphism(k1: &Complex, k2: &Complex) -> Option<Permutation> {
    if k1.n() != k2.n() || k1.num_facets() != k2.num_facets() {
        return None;
    }
    if k1.vertex_set().len() != k2.vertex_set().len() {
        return None;
    }
    let c1 = canonical_form(k1);
    let c2 = canonical_form(k2);
    isomorphism_from_forms(&c1, &c2)
}

pub fn isomorphism_from_forms(c1: &Canonical, c2: &Canonical) -> Option<Permutation> {
    (c1.key == c2.key).then(|| c2.labeling.inverse().compose(&c1.labeling))
}

pub fn symmetry_group(k: &Complex) -> Result<PermGroup, IsoError> {
    let c = canonical_form(k);
    Ok(PermGroup::from_generators(k.n(), c.automorphisms)?)
}

pub fn is_isomorphic(k1: &Complex, k2: &Complex) -> bool {
    find_isomorphism(k1, k2).is_some()
}

/// Number of codimension-two faces by the number of facets containing them.
pub fn codim2_degrees(k: &Complex) -> BTreeMap<u32, u64> {
    let mut deg: HashMap<u32, u32> = HashMap::new();
    for f in k.facets() {
        let vs: Vec<usize> = f.vertices().collect();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                *deg.entry(f.without(vs[i]).without(vs[j]).0).or_insert(0) += 1;
            }
        }
    }
    let mut out = BTreeMap::new();
    for &d in deg.values() {
        *out.entry(d).or_insert(0) += 1;
    }
    out
}

/// Counts `(m_3, ..., m_8)` of 6-faces by facet degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MDistribution(pub [u64; 6]);

impl MDistribution {
    pub fn m(&self, s: usize) -> u64 {
        self.0[s - 3]
    }

    /// `m_4 + 2^12 m_5 + 2^24 m_6 + 2^36 m_7 + 2^48 m_8`.
    pub fn pack(&self) -> u128 {
        debug_assert!(
            (4..8).all(|s| self.m(s) < 1 << 12),
            "certificate field overflow: {:?}",
            self.0
        );
        (4..=8).fold(0u128, |acc, s| acc + ((self.m(s) as u128) << (12 * (s - 4))))
    }
}

impl fmt::Display for MDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn m_distribution(k: &Complex) -> Result<MDistribution, IsoError> {
    if k.vertex_set().len() != 15 || k.is_void() || !k.is_pure(8) {
        return Err(IsoError::ShapeMismatch);
    }
    let mut m = [0u64; 6];
    for (d, c) in codim2_degrees(k) {
        if !(3..=8).contains(&d) {
            return Err(IsoError::DegreeOutOfRange(d));
        }
        m[d as usize - 3] = c;
    }
    Ok(MDistribution(m))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Certificate {
    pub m: MDistribution,
    pub cert: u128,
}

pub fn certificate(k: &Complex) -> Result<Certificate, IsoError> {
    let m = m_distribution(k)?;
    Ok(Certificate { m, cert: m.pack() })
}

/// An isomorphism intertwining two actions of the same group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakIsomorphism {
    pub map: Permutation,
    /// `phi[i]` is the index of `map ∘ g_i ∘ map⁻¹` in the group's element list.
    pub phi: Vec<usize>,
}

/// Weak `G`-isomorphism: an isomorphism normalizing `G`.
pub fn find_weak_g_isomorphism(
    k1: &Complex,
    k2: &Complex,
    g: &PermGroup,
) -> Result<Option<WeakIsomorphism>, IsoError> {
    if !g.is_invariant(k1) || !g.is_invariant(k2) {
        return Err(IsoError::NotInvariant);
    }
    let c1 = canonical_form(k1);
    let c2 = canonical_form(k2);
    let Some(f0) = isomorphism_from_forms(&c1, &c2) else {
        return Ok(None);
    };
    let aut = PermGroup::from_generators(k1.n(), c1.automorphisms)?;
    Ok(weak_iso_in_coset(&f0, &aut, g))
}

/// First element of `f0 ∘ aut` normalizing `g`, with its induced automorphism.
pub fn weak_iso_in_coset(
    f0: &Permutation,
    aut: &PermGroup,
    g: &PermGroup,
) -> Option<WeakIsomorphism> {
    aut.elements().iter().find_map(|a| {
        let f = f0.compose(a);
        if !g.is_normalized_by(&f) {
            return None;
        }
        let phi = g
            .elements()
            .iter()
            .map(|x| g.index_of(&f.conjugate(x)).expect("normalizes"))
            .collect();
        Some(WeakIsomorphism { map: f, phi })
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoClass {
    pub representative: usize,
    pub members: Vec<usize>,
}

/// Partitions complexes into isomorphism classes in order of first occurrence.
pub fn group_by_isomorphism(list: &[Complex]) -> Vec<IsoClass> {
    let keys: Vec<(usize, CanonicalKey)> = list
        .par_iter()
        .map(|k| (k.n(), canonical_key(k)))
        .collect();
    let mut classes: Vec<IsoClass> = Vec::new();
    let mut by_key: HashMap<&(usize, CanonicalKey), usize> = HashMap::new();
    for (i, key) in keys.iter().enumerate() {
        match by_key.get(key) {
            Some(&c) => classes[c].members.push(i),
            None => {
                by_key.insert(key, classes.len());
                classes.push(IsoClass {
                    representative: i,
                    members: vec![i],
                });
            }
        }
    }
    classes
}
