//! Permutation groups acting on vertex slots.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{k_subsets, Complex, Simplex, MAX_VERTICES};

pub const GROUP_ORDER_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymmetryError {
    #[error("cannot parse permutation {text:?}: {reason}")]
    Parse { text: String, reason: String },
    #[error("permutation acts on {found} slots, expected {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("group closure exceeds {0} elements")]
    GroupTooLarge(usize),
    #[error("complex is not invariant under the group")]
    NotInvariant,
}

/// A bijection of `0..n`, stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    image: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation {
            image: (0..n as u8).collect(),
        }
    }

    pub fn from_images(image: &[usize]) -> Result<Permutation, SymmetryError> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &i in image {
            if i >= n || seen[i] {
                return Err(SymmetryError::Parse {
                    text: format!("{image:?}"),
                    reason: "not a bijection".into(),
                });
            }
            seen[i] = true;
        }
        Ok(Permutation {
            image: image.iter().map(|&i| i as u8).collect(),
        })
    }

    /// Builds a permutation of `n` slots from 1-based cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Permutation, SymmetryError> {
        let mut image: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cyc in cycles {
            for &p in cyc.iter() {
                if p == 0 || p > n {
                    return Err(SymmetryError::Parse {
                        text: format!("{cycles:?}"),
                        reason: format!("point {p} outside 1..{n}"),
                    });
                }
                if used[p - 1] {
                    return Err(SymmetryError::Parse {
                        text: format!("{cycles:?}"),
                        reason: format!("point {p} repeated"),
                    });
                }
                used[p - 1] = true;
            }
            for (i, &p) in cyc.iter().enumerate() {
                image[p - 1] = cyc[(i + 1) % cyc.len()] - 1;
            }
        }
        Permutation::from_images(&image)
    }

    /// Parses cycle notation such as `(1 2 3)(4,5)`; `()` or empty text is the identity.
    pub fn parse(n: usize, text: &str) -> Result<Permutation, SymmetryError> {
        let err = |reason: &str| SymmetryError::Parse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(err("expected '('"));
            }
            let close = rest.find(')').ok_or_else(|| err("unbalanced parenthesis"))?;
            let body = &rest[1..close];
            let mut cyc = Vec::new();
            for tok in body.split(|c: char| c == ',' || c.is_whitespace()) {
                if tok.is_empty() {
                    continue;
                }
                let p: usize = tok.parse().map_err(|_| err("bad point"))?;
                cyc.push(p);
            }
            if !cyc.is_empty() {
                cycles.push(cyc);
            }
            rest = rest[close + 1..].trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Permutation::from_cycles(n, &refs).map_err(|e| match e {
            SymmetryError::Parse { reason, .. } => err(&reason),
            other => other,
        })
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.image[v] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.image.iter().map(|&i| i as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            image: other.image.iter().map(|&i| self.image[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.image.len()];
        for (i, &j) in self.image.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Permutation { image: inv }
    }

    pub fn order(&self) -> usize {
        let mut lcm = 1usize;
        for c in self.cycles() {
            lcm = num_integer::lcm(lcm, c.len());
        }
        lcm
    }

    #[inline]
    pub fn apply_simplex(&self, s: Simplex) -> Simplex {
        let mut m = 0u32;
        for v in s.vertices() {
            m |= 1 << self.image[v];
        }
        Simplex(m)
    }

    pub fn apply_complex(&self, k: &Complex) -> Complex {
        k.relabel(&self.images())
    }

    /// Nontrivial cycles (0-based), each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.image.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut x = self.apply(s);
            while x != s {
                seen[x] = true;
                c.push(x);
                x = self.apply(x);
            }
            if c.len() > 1 {
                out.push(c);
            }
        }
        out
    }

    /// Conjugate `self ∘ g ∘ self⁻¹`.
    pub fn conjugate(&self, g: &Permutation) -> Permutation {
        self.compose(g).compose(&self.inverse())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, v) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", v + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Permutation {
    type Err = SymmetryError;
    /// Parses cycle notation; the slot count is the largest point mentioned.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let max = s
            .split(|c: char| !c.is_ascii_digit())
            .filter_map(|t| t.parse::<usize>().ok())
            .max()
            .unwrap_or(0);
        Permutation::parse(max, s)
    }
}

/// A permutation group with all elements enumerated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    n: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl PermGroup {
    pub fn trivial(n: usize) -> PermGroup {
        PermGroup::from_generators(n, vec![]).expect("trivial group")
    }

    /// Closure of the generators by breadth-first multiplication.
    pub fn from_generators(n: usize, gens: Vec<Permutation>) -> Result<PermGroup, SymmetryError> {
        PermGroup::with_cap(n, gens, GROUP_ORDER_CAP)
    }

    pub fn with_cap(
        n: usize,
        gens: Vec<Permutation>,
        cap: usize,
    ) -> Result<PermGroup, SymmetryError> {
        assert!(n <= MAX_VERTICES);
        for g in &gens {
            if g.n() != n {
                return Err(SymmetryError::SizeMismatch {
                    expected: n,
                    found: g.n(),
                });
            }
        }
        let id = Permutation::identity(n);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let mut fresh: Vec<Permutation> = gens
                .iter()
                .map(|g| g.compose(&elements[i]))
                .filter(|p| !index.contains_key(p))
                .collect();
            fresh.sort();
            fresh.dedup();
            for p in fresh {
                if elements.len() >= cap {
                    return Err(SymmetryError::GroupTooLarge(cap));
                }
                index.insert(p.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(p);
            }
        }
        Ok(PermGroup {
            n,
            generators: gens,
            elements,
            index,
        })
    }

    /// Parses generators in cycle notation.
    pub fn parse(n: usize, gens: &[&str]) -> Result<PermGroup, SymmetryError> {
        let perms = gens
            .iter()
            .map(|g| Permutation::parse(n, g))
            .collect::<Result<Vec<_>, _>>()?;
        PermGroup::from_generators(n, perms)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|a| {
            self.generators
                .iter()
                .all(|b| a.compose(b) == b.compose(a))
        })
    }

    /// Whether `p` conjugates the group onto itself.
    pub fn is_normalized_by(&self, p: &Permutation) -> bool {
        self.generators.iter().all(|g| self.contains(&p.conjugate(g)))
    }

    /// Subgroup of elements satisfying a predicate, generated by those elements.
    pub fn subgroup_where<F: Fn(&Permutation) -> bool>(&self, pred: F) -> PermGroup {
        let gens: Vec<Permutation> = self
            .elements
            .iter()
            .filter(|p| !p.is_identity() && pred(p))
            .cloned()
            .collect();
        let gens = reduce_generators(self.n, gens);
        PermGroup::from_generators(self.n, gens).expect("subgroup of a finite group")
    }

    /// Orbit of a simplex, in increasing mask order.
    pub fn orbit_of(&self, s: Simplex) -> Vec<Simplex> {
        let mut v: Vec<Simplex> = self.elements.iter().map(|g| g.apply_simplex(s)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn closure_of(&self, simplices: &[Simplex]) -> Vec<Simplex> {
        let mut v: Vec<Simplex> = simplices
            .iter()
            .flat_map(|s| self.elements.iter().map(move |g| g.apply_simplex(*s)))
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Orbits on the vertex slots, each as a mask, sorted by smallest element.
    pub fn vertex_orbits(&self) -> Vec<Simplex> {
        let mut seen = 0u32;
        let mut out = Vec::new();
        for v in 0..self.n {
            if seen >> v & 1 == 1 {
                continue;
            }
            let mut m = 0u32;
            for g in &self.elements {
                m |= 1 << g.apply(v);
            }
            seen |= m;
            out.push(Simplex(m));
        }
        out
    }

    /// Partition of all `k`-subsets into orbits, ordered by representative.
    pub fn orbits_on_ksubsets(&self, k: usize) -> Vec<Orbit> {
        let mut seen: HashSet<u32> = HashSet::new();
        let mut out = Vec::new();
        for s in k_subsets(self.n, k) {
            if seen.contains(&s.0) {
                continue;
            }
            let members = self.orbit_of(s);
            seen.extend(members.iter().map(|m| m.0));
            out.push(Orbit {
                representative: members[0],
                members,
            });
        }
        out
    }

    /// Number of elements fixing `s` setwise.
    pub fn stabilizer_order(&self, s: Simplex) -> usize {
        self.elements
            .iter()
            .filter(|g| g.apply_simplex(s) == s)
            .count()
    }

    /// Short structural name such as `A5`, `C6xC2`, `S3`.
    pub fn descriptor(&self) -> String {
        let order = self.order();
        let abelian = self
            .elements
            .iter()
            .all(|a| self.generators.iter().all(|b| a.compose(b) == b.compose(a)));
        let max_order = self.elements.iter().map(|g| g.order()).max().unwrap_or(1);
        let involutions = self.elements.iter().filter(|g| g.order() == 2).count();
        if max_order == order {
            return format!("C{order}");
        }
        match (order, abelian) {
            (4, true) => "C2xC2".into(),
            (6, false) => "S3".into(),
            (8, true) if max_order == 4 => "C4xC2".into(),
            (8, true) => "C2xC2xC2".into(),
            (8, false) if involutions == 1 => "Q8".into(),
            (8, false) => "D4".into(),
            (12, true) => "C6xC2".into(),
            (12, false) if max_order == 3 => "A4".into(),
            (12, false) if max_order == 6 => "D6".into(),
            (12, false) => "Dic3".into(),
            (24, false) if max_order == 4 && involutions == 9 => "S4".into(),
            (60, false) if max_order == 5 => "A5".into(),
            (120, false) if max_order == 6 && involutions == 25 => "S5".into(),
            _ => format!("G{order}"),
        }
    }

    pub fn is_invariant(&self, k: &Complex) -> bool {
        self.generators.iter().all(|g| {
            let facets = k.facets();
            facets
                .iter()
                .all(|f| facets.binary_search(&g.apply_simplex(*f)).is_ok())
        })
    }

    /// The fixed-point complex: vertices are the vertex orbits that are simplices.
    pub fn fixed_point_complex(&self, k: &Complex) -> Result<FixedPointComplex, SymmetryError> {
        if !self.is_invariant(k) {
            return Err(SymmetryError::NotInvariant);
        }
        let labeling: Vec<Simplex> = self
            .vertex_orbits()
            .into_iter()
            .filter(|o| k.contains(*o))
            .collect();
        let mut facets = Vec::new();
        for f in k.facets() {
            let mut m = 0u32;
            for (i, o) in labeling.iter().enumerate() {
                if o.is_subset_of(*f) {
                    m |= 1 << i;
                }
            }
            if m != 0 {
                facets.push(Simplex(m));
            }
        }
        let complex = Complex::from_facets(labeling.len(), facets)
            .expect("quotient fits in the orbit count");
        Ok(FixedPointComplex { complex, labeling })
    }
}

/// Drops generators already produced by earlier ones.
fn reduce_generators(n: usize, gens: Vec<Permutation>) -> Vec<Permutation> {
    let mut kept: Vec<Permutation> = Vec::new();
    let mut current = PermGroup::trivial(n);
    for g in gens {
        if current.contains(&g) {
            continue;
        }
        kept.push(g);
        current = PermGroup::from_generators(n, kept.clone()).expect("finite subgroup");
    }
    kept
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub representative: Simplex,
    pub members: Vec<Simplex>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointComplex {
    pub complex: Complex,
    /// Quotient vertex `i` stands for the orbit `labeling[i]`.
    pub labeling: Vec<Simplex>,
}
