//! Simplicial homology over Z (Smith normal form) and F_p (Gaussian rank),
//! homology-manifold predicates, orientability and a bistellar sphere recognizer.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{Complex, Simplex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("complex is not a strongly connected weak {0}-pseudomanifold")]
    NotAPseudomanifold(i32),
}

/// Coefficient ring for homology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Coefficients {
    Integers,
    Prime(u64),
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => f.write_str("Z"),
            Coefficients::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// Sparse integer matrix stored by columns; each column is sorted by row.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    pub rows: usize,
    pub columns: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0i64; self.columns.len()]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                d[r as usize][c] = v;
            }
        }
        d
    }
}

/// Boundary maps of a complex with faces in increasing mask order.
#[derive(Debug, Clone)]
pub struct ChainBoundary {
    /// `faces[k]` lists the `k`-dimensional faces.
    pub faces: Vec<Vec<Simplex>>,
    /// `maps[k]` is the boundary from dimension `k` to `k-1` (`maps[0]` is empty).
    pub maps: Vec<SparseMatrix>,
}

impl ChainBoundary {
    pub fn new(k: &Complex) -> ChainBoundary {
        let by_size = k.faces_by_size();
        let faces: Vec<Vec<Simplex>> = by_size.into_iter().skip(1).collect();
        let mut maps = Vec::with_capacity(faces.len());
        maps.push(SparseMatrix {
            rows: 0,
            columns: vec![Vec::new(); faces.first().map_or(0, |f| f.len())],
        });
        for dim in 1..faces.len() {
            let index: HashMap<u32, u32> = faces[dim - 1]
                .iter()
                .enumerate()
                .map(|(i, s)| (s.0, i as u32))
                .collect();
            let columns = faces[dim]
                .iter()
                .map(|s| {
                    let mut col: Vec<(u32, i64)> = s
                        .vertices()
                        .enumerate()
                        .map(|(i, v)| {
                            let sign = if i % 2 == 0 { 1 } else { -1 };
                            (index[&s.without(v).0], sign)
                        })
                        .collect();
                    col.sort_unstable();
                    col
                })
                .collect();
            maps.push(SparseMatrix {
                rows: faces[dim - 1].len(),
                columns,
            });
        }
        let cb = ChainBoundary { faces, maps };
        assert!(cb.boundary_squares_to_zero(), "boundary of boundary is nonzero");
        cb
    }

    pub fn boundary_squares_to_zero(&self) -> bool {
        for k in 2..self.maps.len() {
            let lower = &self.maps[k - 1];
            for col in &self.maps[k].columns {
                let mut acc: HashMap<u32, i64> = HashMap::new();
                for &(r, v) in col {
                    for &(r2, w) in &lower.columns[r as usize] {
                        *acc.entry(r2).or_insert(0) += v * w;
                    }
                }
                if acc.values().any(|&x| x != 0) {
                    return false;
                }
            }
        }
        true
    }
}

/// Betti numbers and torsion coefficients per dimension (unreduced).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyProfile {
    pub coefficients: Coefficients,
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<BigUint>>,
}

impl HomologyProfile {
    /// Profile of the `d`-sphere.
    pub fn sphere(d: usize, coefficients: Coefficients) -> HomologyProfile {
        let mut betti = vec![0; d + 1];
        betti[0] += 1;
        betti[d] += 1;
        HomologyProfile {
            coefficients,
            betti,
            torsion: vec![Vec::new(); d + 1],
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    /// Drops trailing trivial dimensions.
    pub fn trimmed(mut self) -> HomologyProfile {
        while self.betti.len() > 1
            && *self.betti.last().unwrap() == 0
            && self.torsion.last().map_or(true, |t| t.is_empty())
        {
            self.betti.pop();
            self.torsion.pop();
        }
        self
    }

    pub fn is_sphere(&self, d: usize) -> bool {
        self.clone().trimmed() == HomologyProfile::sphere(d, self.coefficients)
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = self.coefficients.to_string();
        for (k, b) in self.betti.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "H{k}=")?;
            let mut parts: Vec<String> = Vec::new();
            if *b == 1 {
                parts.push(ring.clone());
            } else if *b > 1 {
                parts.push(format!("{ring}^{b}"));
            }
            for t in &self.torsion[k] {
                parts.push(format!("Z/{t}"));
            }
            if parts.is_empty() {
                f.write_str("0")?;
            } else {
                f.write_str(&parts.join("+"))?;
            }
        }
        Ok(())
    }
}

/// Invariant factors `d_1 | d_2 | ... | d_r` of an integer matrix.
pub fn smith_normal_form(m: &[Vec<i64>]) -> Vec<BigInt> {
    let dense: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    dense_invariant_factors(dense)
}

/// Invariant factors of a sparse matrix: unit pivots are eliminated in machine
/// integers, whatever remains goes through the dense big-integer routine.
pub fn sparse_invariant_factors(m: &SparseMatrix) -> Vec<BigInt> {
    match eliminate_unit_pivots(m) {
        Some((ones, rest)) => {
            let mut out = vec![BigInt::one(); ones];
            out.extend(dense_invariant_factors(rest));
            out
        }
        None => dense_invariant_factors(
            m.to_dense()
                .into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect(),
        ),
    }
}

/// Returns the number of unit pivots removed and the remaining dense block,
/// or `None` if machine arithmetic overflowed.
fn eliminate_unit_pivots(m: &SparseMatrix) -> Option<(usize, Vec<Vec<BigInt>>)> {
    let mut cols: Vec<Vec<(u32, i64)>> = m.columns.clone();
    let mut row_cols: Vec<Vec<u32>> = vec![Vec::new(); m.rows];
    for (c, col) in cols.iter().enumerate() {
        for &(r, _) in col {
            row_cols[r as usize].push(c as u32);
        }
    }
    let mut col_alive = vec![true; cols.len()];
    let mut ones = 0usize;
    let mut order: Vec<usize> = (0..cols.len()).collect();
    loop {
        order.sort_by_key(|&c| cols[c].len());
        let mut progress = false;
        for &c in &order {
            if !col_alive[c] {
                continue;
            }
            if cols[c].is_empty() {
                col_alive[c] = false;
                continue;
            }
            let pivot = cols[c]
                .iter()
                .filter(|(_, v)| v.abs() == 1)
                .min_by_key(|(r, _)| row_cols[*r as usize].len())
                .copied();
            let Some((r, v)) = pivot else { continue };
            let pivot_col = std::mem::take(&mut cols[c]);
            col_alive[c] = false;
            let mut others = std::mem::take(&mut row_cols[r as usize]);
            others.sort_unstable();
            others.dedup();
            for &c2 in &others {
                let c2 = c2 as usize;
                if c2 == c || !col_alive[c2] {
                    continue;
                }
                let a = match cols[c2].binary_search_by_key(&r, |e| e.0) {
                    Ok(i) => cols[c2][i].1,
                    Err(_) => continue,
                };
                let factor = a.checked_mul(v)?;
                let merged = axpy(&cols[c2], &pivot_col, factor)?;
                for &(r2, _) in &merged {
                    if cols[c2].binary_search_by_key(&r2, |e| e.0).is_err() {
                        row_cols[r2 as usize].push(c2 as u32);
                    }
                }
                cols[c2] = merged;
            }
            ones += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let rest_cols: Vec<usize> = (0..cols.len())
        .filter(|&c| col_alive[c] && !cols[c].is_empty())
        .collect();
    let mut rest_rows: Vec<u32> = rest_cols
        .iter()
        .flat_map(|&c| cols[c].iter().map(|e| e.0))
        .collect();
    rest_rows.sort_unstable();
    rest_rows.dedup();
    let row_pos: HashMap<u32, usize> = rest_rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let mut dense = vec![vec![BigInt::zero(); rest_cols.len()]; rest_rows.len()];
    for (j, &c) in rest_cols.iter().enumerate() {
        for &(r, v) in &cols[c] {
            dense[row_pos[&r]][j] = BigInt::from(v);
        }
    }
    Some((ones, dense))
}

/// `x - factor * y` on sorted sparse columns.
fn axpy(x: &[(u32, i64)], y: &[(u32, i64)], factor: i64) -> Option<Vec<(u32, i64)>> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i]);
            i += 1;
        } else if take_y {
            let v = factor.checked_mul(y[j].1)?.checked_neg()?;
            out.push((y[j].0, v));
            j += 1;
        } else {
            let v = x[i].1.checked_sub(factor.checked_mul(y[j].1)?)?;
            if v != 0 {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

/// Dense Smith normal form with minimal-absolute-value pivoting.
fn dense_invariant_factors(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if !x.is_zero() && best.map_or(true, |(bi, bj)| x.abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&p);
                for j in t..cols {
                    let v = &a[t][j] * &q;
                    a[i][j] -= v;
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&p);
                for row in a.iter_mut().skip(t) {
                    let v = &row[t] * &q;
                    row[j] -= v;
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !(&a[i][j] % &p).is_zero());
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            let v = a[i][j].clone();
                            a[t][j] += v;
                        }
                        continue;
                    }
                }
            }
            // Bring the smallest remaining entry of row/column t into the pivot.
            let mut best = (t, t);
            for i in t..rows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// Rank of a sparse matrix over F_p.
pub fn rank_mod_p(m: &SparseMatrix, p: u64) -> usize {
    if p == 2 {
        return rank_f2(m);
    }
    let modp = |v: i64| -> u64 { v.rem_euclid(p as i64) as u64 };
    let mut cols: Vec<Vec<(u32, u64)>> = m
        .columns
        .iter()
        .map(|c| {
            c.iter()
                .map(|&(r, v)| (r, modp(v)))
                .filter(|&(_, v)| v != 0)
                .collect()
        })
        .collect();
    let mut pivot_of_row: HashMap<u32, usize> = HashMap::new();
    let mut reduced: Vec<Vec<(u32, u64)>> = Vec::new();
    let mut rank = 0;
    for c in cols.iter_mut() {
        // Reduce by existing pivots (keyed by leading row) until a new leading row appears.
        let mut col = std::mem::take(c);
        loop {
            let Some(&(lead, lv)) = col.last() else { break };
            match pivot_of_row.get(&lead) {
                None => {
                    pivot_of_row.insert(lead, reduced.len());
                    let inv = mod_pow(lv, p - 2, p);
                    let normalized: Vec<(u32, u64)> =
                        col.iter().map(|&(r, v)| (r, v * inv % p)).collect();
                    reduced.push(normalized);
                    rank += 1;
                    break;
                }
                Some(&k) => {
                    let piv = &reduced[k];
                    col = sub_scaled_mod(&col, piv, lv, p);
                }
            }
        }
    }
    rank
}

fn sub_scaled_mod(x: &[(u32, u64)], y: &[(u32, u64)], f: u64, p: u64) -> Vec<(u32, u64)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        if j >= y.len() || (i < x.len() && x[i].0 < y[j].0) {
            out.push(x[i]);
            i += 1;
        } else if i >= x.len() || y[j].0 < x[i].0 {
            out.push((y[j].0, (p - f * y[j].1 % p) % p));
            j += 1;
        } else {
            let v = (x[i].1 + p - f * y[j].1 % p) % p;
            if v != 0 {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    r
}

/// Bit-packed Gaussian elimination over F_2.
fn rank_f2(m: &SparseMatrix) -> usize {
    let words = m.rows.div_ceil(64);
    let mut pivots: HashMap<usize, Vec<u64>> = HashMap::new();
    let mut rank = 0;
    for col in &m.columns {
        let mut bits = vec![0u64; words];
        for &(r, v) in col {
            if v % 2 != 0 {
                bits[r as usize / 64] ^= 1 << (r % 64);
            }
        }
        loop {
            let Some(lead) = highest_bit(&bits) else { break };
            match pivots.get(&lead) {
                Some(p) => {
                    for (b, q) in bits.iter_mut().zip(p) {
                        *b ^= q;
                    }
                }
                None => {
                    pivots.insert(lead, bits);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn highest_bit(bits: &[u64]) -> Option<usize> {
    bits.iter()
        .enumerate()
        .rev()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * 64 + 63 - w.leading_zeros() as usize)
}

/// Unreduced homology of a nonempty complex.
pub fn homology(k: &Complex, coeff: Coefficients) -> HomologyProfile {
    let cb = ChainBoundary::new(k);
    homology_of_chain(&cb, coeff)
}

pub fn homology_of_chain(cb: &ChainBoundary, coeff: Coefficients) -> HomologyProfile {
    let top = cb.faces.len();
    let mut ranks = vec![0usize; top + 1];
    let mut factors: Vec<Vec<BigInt>> = vec![Vec::new(); top + 1];
    for dim in 1..top {
        match coeff {
            Coefficients::Integers => {
                let f = sparse_invariant_factors(&cb.maps[dim]);
                ranks[dim] = f.len();
                factors[dim] = f;
            }
            Coefficients::Prime(p) => ranks[dim] = rank_mod_p(&cb.maps[dim], p),
        }
    }
    let mut betti = Vec::with_capacity(top);
    let mut torsion = Vec::with_capacity(top);
    for dim in 0..top {
        let cycles = cb.faces[dim].len() - ranks[dim];
        betti.push(cycles - ranks[dim + 1]);
        let t: Vec<BigUint> = factors[dim + 1]
            .iter()
            .filter(|x| !x.is_one())
            .map(|x| x.to_biguint().expect("invariant factors are positive"))
            .collect();
        torsion.push(t);
    }
    if betti.is_empty() {
        betti.push(0);
        torsion.push(Vec::new());
    }
    HomologyProfile {
        coefficients: coeff,
        betti,
        torsion,
    }
}

/// Sphere test for a link known to be pure of dimension `e`.
fn link_is_sphere(link: &Complex, e: i32, coeff: Coefficients) -> bool {
    if !link.is_pure(e) {
        return false;
    }
    match e {
        0 => link.num_facets() == 2,
        1 => {
            // A connected graph with every vertex of degree two is a cycle.
            let mut deg: HashMap<usize, u32> = HashMap::new();
            for f in link.facets() {
                for v in f.vertices() {
                    *deg.entry(v).or_insert(0) += 1;
                }
            }
            deg.values().all(|&d| d == 2) && link.is_strongly_connected(1).unwrap_or(false)
        }
        _ => homology(link, coeff).is_sphere(e as usize),
    }
}

/// Pure `d`-complex whose proper face links have the homology of spheres.
pub fn is_homology_manifold(k: &Complex, d: i32, coeff: Coefficients) -> bool {
    if k.is_void() || !k.is_pure(d) {
        return false;
    }
    let faces: Vec<Simplex> = k
        .faces_by_size()
        .into_iter()
        .skip(1)
        .take(d.max(0) as usize)
        .flatten()
        .collect();
    faces.par_iter().all(|&s| {
        let link = k.link(s).expect("face of the complex");
        link_is_sphere(&link, d - s.dim() - 1, coeff)
    })
}

pub fn is_homology_sphere(k: &Complex, d: i32, coeff: Coefficients) -> bool {
    d >= 0
        && is_homology_manifold(k, d, coeff)
        && homology(k, coeff).is_sphere(d as usize)
}

/// Orientability of a strongly connected weak pseudomanifold.
pub fn is_orientable(k: &Complex, d: i32) -> Result<bool, HomologyError> {
    if !k.is_weak_pseudomanifold(d) || !k.is_strongly_connected(d).unwrap_or(false) {
        return Err(HomologyError::NotAPseudomanifold(d));
    }
    let facets = k.facets();
    let adj = k.facet_adjacency();
    // Induced sign of a facet on the face missing its vertex `v`.
    let induced = |f: Simplex, ridge: Simplex| -> i8 {
        let v = f.minus(ridge).min_vertex().expect("ridge is a proper face");
        let pos = Simplex(f.0 & ((1u32 << v) - 1)).len();
        if pos % 2 == 0 {
            1
        } else {
            -1
        }
    };
    let mut sign = vec![0i8; facets.len()];
    sign[0] = 1;
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for &(j, ridge) in &adj[i] {
            let want = -sign[i] * induced(facets[i], ridge) * induced(facets[j], ridge);
            if sign[j] == 0 {
                sign[j] = want;
                queue.push_back(j);
            } else if sign[j] != want {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Outcome of the bistellar sphere recognizer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SphereVerdict {
    /// A move sequence of the given length reaches the boundary of a simplex.
    Certified { moves: usize },
    NotSphere,
    Unknown,
}

pub const BISTELLAR_SEED: u64 = 0x5eed_b157_e11a;

pub fn certify_sphere_bistellar(k: &Complex, d: i32, budget: usize) -> SphereVerdict {
    certify_sphere_bistellar_seeded(k, d, budget, BISTELLAR_SEED)
}

/// Greedy reduction of `(f_d, f_{d-1})` by bistellar moves, with random
/// heating phases when no reducing move exists.
pub fn certify_sphere_bistellar_seeded(
    k: &Complex,
    d: i32,
    budget: usize,
    seed: u64,
) -> SphereVerdict {
    if d < 1 || !k.is_weak_pseudomanifold(d) {
        return SphereVerdict::NotSphere;
    }
    if !homology(k, Coefficients::Integers).is_sphere(d as usize) {
        return SphereVerdict::NotSphere;
    }
    let du = d as usize;
    let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
    let mut facets: HashSet<u32> = k.facets().iter().map(|f| f.0).collect();
    let mut moves = 0usize;
    let mut heat = 0usize;
    loop {
        if facets.len() == du + 2 {
            let verts = facets.iter().fold(0u32, |a, f| a | f);
            if verts.count_ones() as usize == du + 2 {
                return SphereVerdict::Certified { moves };
            }
        }
        if moves >= budget {
            return SphereVerdict::Unknown;
        }
        let candidates = bistellar_moves(&facets, du);
        if candidates.is_empty() {
            return SphereVerdict::Unknown;
        }
        let reducing: Vec<&BistellarMove> =
            candidates.iter().filter(|m| m.facet_delta() < 0).collect();
        let chosen = if heat == 0 && !reducing.is_empty() {
            let best_delta = reducing.iter().map(|m| m.facet_delta()).min().unwrap();
            let top: Vec<&&BistellarMove> = reducing
                .iter()
                .filter(|m| m.facet_delta() == best_delta)
                .collect();
            (**top[rng.gen_range(0..top.len())]).clone()
        } else {
            if heat == 0 {
                heat = 1 + rng.gen_range(0..=(moves / 8).min(6 * du));
            }
            heat -= 1;
            let pool: Vec<&BistellarMove> = candidates
                .iter()
                .filter(|m| m.facet_delta() >= 0)
                .collect();
            match pool.choose(&mut rng) {
                Some(m) => (*m).clone(),
                None => (*reducing[0]).clone(),
            }
        };
        chosen.apply(&mut facets);
        moves += 1;
    }
}

#[derive(Debug, Clone)]
struct BistellarMove {
    sigma: Simplex,
    tau: Simplex,
}

impl BistellarMove {
    /// Change in facet count: `|sigma| - |tau|`.
    fn facet_delta(&self) -> i64 {
        self.sigma.len() as i64 - self.tau.len() as i64
    }

    fn apply(&self, facets: &mut HashSet<u32>) {
        for v in self.tau.vertices() {
            facets.remove(&(self.sigma.0 | self.tau.without(v).0));
        }
        for v in self.sigma.vertices() {
            facets.insert(self.sigma.without(v).0 | self.tau.0);
        }
    }
}

/// Moves `sigma * ∂tau -> ∂sigma * tau` that do not introduce new vertices.
fn bistellar_moves(facets: &HashSet<u32>, d: usize) -> Vec<BistellarMove> {
    let mut star: HashMap<u32, (u32, u32)> = HashMap::new();
    for &f in facets {
        for s in Simplex(f).subsets() {
            if s.is_empty() || s.len() == d + 1 {
                continue;
            }
            let e = star.entry(s.0).or_insert((0, 0));
            e.0 += 1;
            e.1 |= f;
        }
    }
    let mut out = Vec::new();
    let mut keys: Vec<&u32> = star.keys().collect();
    keys.sort_unstable();
    for &s in keys {
        let (count, union) = star[&s];
        let sigma = Simplex(s);
        let tau = Simplex(union).minus(sigma);
        let i = d + 1 - sigma.len();
        if tau.len() != i + 1 || count as usize != i + 1 {
            continue;
        }
        if facets.iter().any(|&f| tau.is_subset_of(Simplex(f))) {
            continue;
        }
        out.push(BistellarMove { sigma, tau });
    }
    out
}
