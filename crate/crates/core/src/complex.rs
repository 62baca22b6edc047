//! Abstract simplicial complexes on at most 32 vertex slots.
//!
//! Vertices are 0-based internally (bit `i` is vertex `i + 1` in text output).

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const MAX_VERTICES: usize = 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("vertex slot {slot} is outside the {n}-slot universe")]
    InvalidVertex { slot: usize, n: usize },
    #[error("{0} is not a simplex of the complex")]
    NotASimplex(Simplex),
    #[error("vertex supports overlap on {0}")]
    OverlappingSupports(Simplex),
    #[error("complex is not pure of dimension {0}")]
    NotPure(i32),
    #[error("vertex count {0} exceeds the 32-slot limit")]
    TooManyVertices(usize),
}

/// A simplex as a vertex bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Simplex(pub u32);

impl Simplex {
    pub const EMPTY: Simplex = Simplex(0);

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Simplex {
        let mut m = 0u32;
        for v in vertices {
            assert!(v < MAX_VERTICES, "vertex {v} out of range");
            m |= 1 << v;
        }
        Simplex(m)
    }

    /// Builds a simplex from 1-based vertex labels.
    pub fn from_labels(labels: &[usize]) -> Simplex {
        Simplex::from_vertices(labels.iter().map(|&l| {
            assert!(l >= 1, "vertex labels are 1-based");
            l - 1
        }))
    }

    /// The full simplex on slots `0..n`.
    pub fn full(n: usize) -> Simplex {
        if n >= 32 {
            Simplex(u32::MAX)
        } else {
            Simplex((1u32 << n) - 1)
        }
    }

    #[inline]
    pub fn mask(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn dim(self) -> i32 {
        self.0.count_ones() as i32 - 1
    }

    #[inline]
    pub fn contains_vertex(self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn is_subset_of(self, other: Simplex) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn union(self, other: Simplex) -> Simplex {
        Simplex(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Simplex) -> Simplex {
        Simplex(self.0 & other.0)
    }

    #[inline]
    pub fn minus(self, other: Simplex) -> Simplex {
        Simplex(self.0 & !other.0)
    }

    #[inline]
    pub fn without(self, v: usize) -> Simplex {
        Simplex(self.0 & !(1 << v))
    }

    #[inline]
    pub fn with(self, v: usize) -> Simplex {
        Simplex(self.0 | (1 << v))
    }

    /// Complement inside the slot universe `0..n`.
    #[inline]
    pub fn complement(self, n: usize) -> Simplex {
        Simplex(!self.0 & Simplex::full(n).0)
    }

    pub fn min_vertex(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn max_vertex(self) -> Option<usize> {
        (self.0 != 0).then(|| 31 - self.0.leading_zeros() as usize)
    }

    /// Vertices in increasing order.
    pub fn vertices(self) -> Vertices {
        Vertices(self.0)
    }

    /// 1-based labels in increasing order.
    pub fn labels(self) -> Vec<usize> {
        self.vertices().map(|v| v + 1).collect()
    }

    /// All subsets of this simplex, including the empty one and itself.
    pub fn subsets(self) -> Subsets {
        Subsets {
            full: self.0,
            cur: 0,
            done: false,
        }
    }

    /// Codimension-one faces, obtained by dropping each vertex in turn.
    pub fn boundary_faces(self) -> impl Iterator<Item = Simplex> {
        self.vertices().map(move |v| self.without(v))
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.vertices().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        f.write_str("}")
    }
}

pub struct Vertices(u32);

impl Iterator for Vertices {
    type Item = usize;
    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

pub struct Subsets {
    full: u32,
    cur: u32,
    done: bool,
}

impl Iterator for Subsets {
    type Item = Simplex;
    #[inline]
    fn next(&mut self) -> Option<Simplex> {
        if self.done {
            return None;
        }
        let out = self.cur;
        if self.cur == self.full {
            self.done = true;
        } else {
            self.cur = (self.cur.wrapping_sub(self.full)) & self.full;
        }
        Some(Simplex(out))
    }
}

/// Iterates all `k`-element masks over slots `0..n` in increasing numeric order.
pub fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = Simplex> {
    let limit: u64 = 1u64 << n;
    let mut cur: u64 = if k == 0 {
        0
    } else if k > n {
        limit
    } else {
        (1u64 << k) - 1
    };
    let mut first_empty = k == 0;
    std::iter::from_fn(move || {
        if first_empty {
            first_empty = false;
            return Some(Simplex(0));
        }
        if k == 0 || cur >= limit {
            return None;
        }
        let out = cur;
        let c = cur & cur.wrapping_neg();
        let r = cur + c;
        cur = (((r ^ cur) >> 2) / c) | r;
        Some(Simplex(out as u32))
    })
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r = 1u64;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Face counts `f_0, f_1, ...` (index = dimension).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FVector(pub Vec<u64>);

impl FVector {
    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(k, &f)| if k % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    pub fn get(&self, k: usize) -> u64 {
        self.0.get(k).copied().unwrap_or(0)
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// A simplicial complex given by its facets, stored in increasing mask order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Complex {
    n: usize,
    facets: Vec<Simplex>,
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex(n={}, {:?})", self.n, self.facets)
    }
}

/// Outcome of the subset-pair conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairCheck {
    Ok,
    Violation(Simplex),
}

impl PairCheck {
    pub fn is_ok(self) -> bool {
        matches!(self, PairCheck::Ok)
    }
}

impl Complex {
    pub fn from_facets<I>(n: usize, simplices: I) -> Result<Complex, ComplexError>
    where
        I: IntoIterator<Item = Simplex>,
    {
        if n > MAX_VERTICES {
            return Err(ComplexError::TooManyVertices(n));
        }
        let full = Simplex::full(n);
        let mut list: Vec<Simplex> = Vec::new();
        for s in simplices {
            if !s.is_subset_of(full) {
                let slot = s.minus(full).min_vertex().unwrap_or(0);
                return Err(ComplexError::InvalidVertex { slot, n });
            }
            list.push(s);
        }
        Ok(Complex {
            n,
            facets: maximal_only(list),
        })
    }

    /// Wraps an already maximal, sorted facet list.
    pub(crate) fn from_sorted_maximal(n: usize, facets: Vec<Simplex>) -> Complex {
        debug_assert!(facets.windows(2).all(|w| w[0] < w[1]));
        Complex { n, facets }
    }

    /// The complex with no simplices at all.
    pub fn void(n: usize) -> Complex {
        Complex { n, facets: vec![] }
    }

    pub fn simplex(n: usize, s: Simplex) -> Result<Complex, ComplexError> {
        Complex::from_facets(n, [s])
    }

    /// Boundary of the simplex `s`.
    pub fn boundary_of(n: usize, s: Simplex) -> Result<Complex, ComplexError> {
        Complex::from_facets(n, s.boundary_faces())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn dim(&self) -> i32 {
        self.facets.iter().map(|f| f.dim()).max().unwrap_or(-1)
    }

    pub fn is_pure(&self, d: i32) -> bool {
        self.facets.iter().all(|f| f.dim() == d)
    }

    /// Union of all facets.
    pub fn vertex_set(&self) -> Simplex {
        Simplex(self.facets.iter().fold(0, |a, f| a | f.0))
    }

    pub fn contains(&self, s: Simplex) -> bool {
        self.facets.iter().any(|f| s.is_subset_of(*f))
    }

    pub fn is_facet(&self, s: Simplex) -> bool {
        self.facets.binary_search(&s).is_ok()
    }

    /// Same facets on a different number of slots.
    pub fn with_slots(&self, n: usize) -> Result<Complex, ComplexError> {
        Complex::from_facets(n, self.facets.iter().copied())
    }

    /// All faces (including the empty face when the complex is nonvoid), grouped by size.
    pub fn faces_by_size(&self) -> Vec<Vec<Simplex>> {
        let top = self.facets.iter().map(|f| f.len()).max().unwrap_or(0);
        let mut sets: Vec<HashSet<u32>> = vec![HashSet::new(); top + 1];
        for f in &self.facets {
            for s in f.subsets() {
                sets[s.len()].insert(s.0);
            }
        }
        sets.into_iter()
            .map(|s| {
                let mut v: Vec<Simplex> = s.into_iter().map(Simplex).collect();
                v.sort_unstable();
                v
            })
            .collect()
    }

    /// Nonempty faces of dimension `k` in increasing mask order.
    pub fn faces_of_dim(&self, k: usize) -> Vec<Simplex> {
        let mut set: HashSet<u32> = HashSet::new();
        for f in &self.facets {
            if f.len() > k {
                for s in f.subsets() {
                    if s.len() == k + 1 {
                        set.insert(s.0);
                    }
                }
            }
        }
        let mut v: Vec<Simplex> = set.into_iter().map(Simplex).collect();
        v.sort_unstable();
        v
    }

    pub fn f_vector(&self) -> FVector {
        let by_size = self.faces_by_size();
        FVector(by_size.iter().skip(1).map(|v| v.len() as u64).collect())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().euler_characteristic()
    }

    /// Faces disjoint from `s` whose union with `s` lies in the complex.
    pub fn link(&self, s: Simplex) -> Result<Complex, ComplexError> {
        let cofaces: Vec<Simplex> = self
            .facets
            .iter()
            .filter(|f| s.is_subset_of(**f))
            .map(|f| f.minus(s))
            .collect();
        if cofaces.is_empty() {
            return Err(ComplexError::NotASimplex(s));
        }
        Ok(Complex {
            n: self.n,
            facets: maximal_only(cofaces),
        })
    }

    /// Closed star of `s`: all facets containing it.
    pub fn star(&self, s: Simplex) -> Result<Complex, ComplexError> {
        let f: Vec<Simplex> = self
            .facets
            .iter()
            .copied()
            .filter(|f| s.is_subset_of(*f))
            .collect();
        if f.is_empty() {
            return Err(ComplexError::NotASimplex(s));
        }
        Ok(Complex::from_sorted_maximal(self.n, f))
    }

    pub fn join(&self, other: &Complex) -> Result<Complex, ComplexError> {
        let overlap = self.vertex_set().intersection(other.vertex_set());
        if !overlap.is_empty() {
            return Err(ComplexError::OverlappingSupports(overlap));
        }
        let n = self.n.max(other.n);
        if self.is_void() {
            return other.with_slots(n);
        }
        if other.is_void() {
            return self.with_slots(n);
        }
        let mut out = Vec::with_capacity(self.facets.len() * other.facets.len());
        for a in &self.facets {
            for b in &other.facets {
                out.push(a.union(*b));
            }
        }
        Complex::from_facets(n, out)
    }

    /// Union of two complexes on a common slot universe.
    pub fn union(&self, other: &Complex) -> Result<Complex, ComplexError> {
        let n = self.n.max(other.n);
        Complex::from_facets(n, self.facets.iter().chain(other.facets.iter()).copied())
    }

    /// Degree of every `(d-1)`-face in a pure `d`-complex.
    pub fn ridge_degrees(&self, d: i32) -> Result<HashMap<Simplex, u32>, ComplexError> {
        if !self.is_pure(d) {
            return Err(ComplexError::NotPure(d));
        }
        let mut deg: HashMap<Simplex, u32> = HashMap::new();
        for f in &self.facets {
            for r in f.boundary_faces() {
                *deg.entry(r).or_insert(0) += 1;
            }
        }
        Ok(deg)
    }

    pub fn is_weak_pseudomanifold(&self, d: i32) -> bool {
        if d < 0 || self.is_void() || !self.is_pure(d) {
            return false;
        }
        if d == 0 {
            return true;
        }
        match self.ridge_degrees(d) {
            Ok(deg) => deg.values().all(|&c| c == 2),
            Err(_) => false,
        }
    }

    pub fn is_strongly_connected(&self, d: i32) -> Result<bool, ComplexError> {
        if !self.is_pure(d) {
            return Err(ComplexError::NotPure(d));
        }
        if self.facets.len() <= 1 {
            return Ok(true);
        }
        let adj = self.facet_adjacency();
        let mut seen = vec![false; self.facets.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(i) = queue.pop_front() {
            for &(j, _) in &adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    count += 1;
                    queue.push_back(j);
                }
            }
        }
        Ok(count == self.facets.len())
    }

    /// For each facet, the facets sharing a codimension-one face with it, with that face.
    pub fn facet_adjacency(&self) -> Vec<Vec<(usize, Simplex)>> {
        let mut by_ridge: HashMap<Simplex, Vec<usize>> = HashMap::new();
        for (i, f) in self.facets.iter().enumerate() {
            for r in f.boundary_faces() {
                by_ridge.entry(r).or_default().push(i);
            }
        }
        let mut adj = vec![Vec::new(); self.facets.len()];
        let mut ridges: Vec<(&Simplex, &Vec<usize>)> = by_ridge.iter().collect();
        ridges.sort_unstable_by_key(|(r, _)| **r);
        for (r, fs) in ridges {
            for &a in fs {
                for &b in fs {
                    if a != b {
                        adj[a].push((b, *r));
                    }
                }
            }
        }
        adj
    }

    /// Checks that no subset of the slot universe is a face together with its complement.
    ///
    /// Both `s` and `V \ s` are faces exactly when two facets cover `V`, so the scan runs
    /// over facet pairs.
    pub fn check_condition_star(&self) -> PairCheck {
        let full = Simplex::full(self.n);
        for (i, a) in self.facets.iter().enumerate() {
            for b in &self.facets[i..] {
                if a.union(*b) == full {
                    return PairCheck::Violation(b.complement(self.n));
                }
            }
        }
        PairCheck::Ok
    }

    /// Checks that exactly one of every subset and its complement is a face.
    pub fn check_complementarity(&self) -> PairCheck {
        if let PairCheck::Violation(s) = self.check_condition_star() {
            return PairCheck::Violation(s);
        }
        let n = self.n;
        if n == 0 {
            return if self.is_void() {
                PairCheck::Violation(Simplex::EMPTY)
            } else {
                PairCheck::Ok
            };
        }
        if n <= 20 {
            let mut is_face = vec![false; 1usize << n];
            for f in &self.facets {
                for s in f.subsets() {
                    is_face[s.0 as usize] = true;
                }
            }
            let full = Simplex::full(n).0;
            // Pairs {s, V\s} are visited once: s ranges over masks without the top slot.
            for s in 0..(1u32 << (n - 1)) {
                if !is_face[s as usize] && !is_face[(full ^ s) as usize] {
                    return PairCheck::Violation(Simplex(s));
                }
            }
            return PairCheck::Ok;
        }
        // Under condition (*), complementarity means exactly 2^(n-1) faces.
        let faces = self.faces_by_size();
        let mut face_set: HashSet<u32> = HashSet::new();
        for layer in &faces {
            face_set.extend(layer.iter().map(|s| s.0));
        }
        if face_set.len() as u64 == 1u64 << (n - 1) {
            return PairCheck::Ok;
        }
        let full = Simplex::full(n).0;
        for k in 0..=n / 2 {
            for s in k_subsets(n, k) {
                if !face_set.contains(&s.0) && !face_set.contains(&(full ^ s.0)) {
                    return PairCheck::Violation(s);
                }
            }
        }
        unreachable!("face count mismatch without a witness")
    }

    /// Largest `k` such that every `k`-subset of the occupied vertices is a face.
    pub fn neighborliness(&self) -> usize {
        let occupied = self.vertex_set().len() as u64;
        let f = self.f_vector();
        let mut k = 0;
        while (k as u64) < occupied && f.get(k) == binomial(occupied, k as u64 + 1) {
            k += 1;
        }
        k
    }

    /// Applies a vertex relabeling given as an image table.
    pub fn relabel(&self, image: &[usize]) -> Complex {
        let facets = self.facets.iter().map(|f| map_simplex(*f, image));
        let mut v: Vec<Simplex> = facets.collect();
        v.sort_unstable();
        Complex { n: self.n, facets: v }
    }
}

#[inline]
pub fn map_simplex(s: Simplex, image: &[usize]) -> Simplex {
    let mut m = 0u32;
    for v in s.vertices() {
        m |= 1 << image[v];
    }
    Simplex(m)
}

/// Sorts, dedups and removes simplices contained in others.
fn maximal_only(mut list: Vec<Simplex>) -> Vec<Simplex> {
    list.sort_unstable();
    list.dedup();
    if list.len() <= 1 {
        return list;
    }
    let first_len = list[0].len();
    if list.iter().all(|s| s.len() == first_len) {
        return list;
    }
    let mut by_size: Vec<Simplex> = list.clone();
    by_size.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    let mut kept: Vec<Simplex> = Vec::with_capacity(by_size.len());
    for s in by_size {
        if !kept.iter().any(|k| s.is_subset_of(*k)) {
            kept.push(s);
        }
    }
    kept.sort_unstable();
    kept
}
