//! Distinguished triples, triple flips and flip graphs.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::complex::{Complex, Simplex};
use crate::iso::{
    canonical_form, certificate, isomorphism_from_forms, weak_iso_in_coset, Canonical,
    CanonicalKey, Certificate, IsoError,
};
use crate::symmetry::{PermGroup, Permutation, SymmetryError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlipError {
    #[error("complex must be pure of even dimension d on 3(d/2+1) vertices")]
    ShapeMismatch,
    #[error("{0} is not a distinguished triple of the complex")]
    NotDistinguished(DistinguishedTriple),
    #[error("orbit of distinguished subcomplexes is not admissible")]
    NotAdmissible,
    #[error("complex is not invariant under the group")]
    NotInvariant,
    #[error(transparent)]
    Iso(#[from] IsoError),
    #[error(transparent)]
    Group(#[from] SymmetryError),
}

/// `(Δ1, Δ2, Δ3)` up to cyclic rotation; `Δ1` holds the smallest vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DistinguishedTriple {
    pub deltas: [Simplex; 3],
}

impl DistinguishedTriple {
    pub fn new(a: Simplex, b: Simplex, c: Simplex) -> DistinguishedTriple {
        let m = |s: Simplex| s.min_vertex().unwrap_or(usize::MAX);
        let deltas = if m(a) <= m(b) && m(a) <= m(c) {
            [a, b, c]
        } else if m(b) <= m(c) {
            [b, c, a]
        } else {
            [c, a, b]
        };
        DistinguishedTriple { deltas }
    }

    /// The triple of the flipped complex that undoes this flip.
    pub fn inverse(&self) -> DistinguishedTriple {
        let [a, b, c] = self.deltas;
        DistinguishedTriple::new(a, c, b)
    }

    /// Facets of `(Δ1*∂Δ2) ∪ (Δ2*∂Δ3) ∪ (Δ3*∂Δ1)`.
    pub fn subcomplex_facets(&self) -> Vec<Simplex> {
        let [a, b, c] = self.deltas;
        join_boundary(&[(a, b), (b, c), (c, a)])
    }

    /// Facets of `(∂Δ1*Δ2) ∪ (∂Δ2*Δ3) ∪ (∂Δ3*Δ1)`.
    pub fn replacement_facets(&self) -> Vec<Simplex> {
        let [a, b, c] = self.deltas;
        join_boundary(&[(b, a), (c, b), (a, c)])
    }

    /// The unordered vertex sets, used to compare triples across isomorphisms.
    pub fn parts(&self) -> [Simplex; 3] {
        let mut p = self.deltas;
        p.sort_unstable();
        p
    }

    pub fn apply(&self, p: &Permutation) -> DistinguishedTriple {
        let [a, b, c] = self.deltas;
        DistinguishedTriple::new(p.apply_simplex(a), p.apply_simplex(b), p.apply_simplex(c))
    }
}

impl std::fmt::Display for DistinguishedTriple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [a, b, c] = self.deltas;
        write!(f, "({a}, {b}, {c})")
    }
}

/// Facets `x ∪ (y ∖ v)` for every pair `(x, y)` and `v ∈ y`.
fn join_boundary(pairs: &[(Simplex, Simplex)]) -> Vec<Simplex> {
    let mut out: Vec<Simplex> = pairs
        .iter()
        .flat_map(|&(x, y)| y.vertices().map(move |v| x.union(y.without(v))))
        .collect();
    out.sort_unstable();
    out
}

/// Half-dimension plus one, after checking the shape precondition.
fn simplex_size(k: &Complex) -> Result<usize, FlipError> {
    let d = k.dim();
    if d < 0 || d % 2 != 0 || !k.is_pure(d) {
        return Err(FlipError::ShapeMismatch);
    }
    let h = d as usize / 2 + 1;
    if k.vertex_set().len() != 3 * h {
        return Err(FlipError::ShapeMismatch);
    }
    Ok(h)
}

pub fn distinguished_triples(k: &Complex) -> Result<Vec<DistinguishedTriple>, FlipError> {
    let h = simplex_size(k)?;
    let mut star: HashMap<u32, (usize, u32)> = HashMap::new();
    for f in k.facets() {
        for s in f.subsets().filter(|s| s.len() == h) {
            let e = star.entry(s.0).or_insert((0, 0));
            e.0 += 1;
            e.1 |= f.0;
        }
    }
    let partner = |s: Simplex| -> Option<Simplex> {
        let &(count, union) = star.get(&s.0)?;
        let p = Simplex(union).minus(s);
        (count == h && p.len() == h).then_some(p)
    };
    let mut out = BTreeSet::new();
    for &s in star.keys() {
        let a = Simplex(s);
        let Some(b) = partner(a) else { continue };
        let Some(c) = partner(b) else { continue };
        if c.intersection(a).is_empty() && partner(c) == Some(a) {
            out.insert(DistinguishedTriple::new(a, b, c));
        }
    }
    Ok(out.into_iter().collect())
}

fn flip_unchecked(k: &Complex, t: &DistinguishedTriple) -> Result<Complex, FlipError> {
    let old = t.subcomplex_facets();
    let new = t.replacement_facets();
    if old.iter().any(|f| !k.is_facet(*f)) || new.iter().any(|f| k.is_facet(*f)) {
        return Err(FlipError::NotDistinguished(*t));
    }
    let facets = k
        .facets()
        .iter()
        .filter(|f| old.binary_search(f).is_err())
        .chain(new.iter())
        .copied();
    Ok(Complex::from_facets(k.n(), facets).expect("facets fit the slots"))
}

/// Replaces the distinguished subcomplex of `t` by its flipped counterpart.
pub fn apply_triple_flip(k: &Complex, t: &DistinguishedTriple) -> Result<Complex, FlipError> {
    let h = simplex_size(k)?;
    if t.deltas.iter().any(|s| s.len() != h)
        || !distinguished_triples(k)?.contains(t)
    {
        return Err(FlipError::NotDistinguished(*t));
    }
    let out = flip_unchecked(k, t)?;
    debug_assert_eq!(out.f_vector(), k.f_vector(), "flip changed the f-vector");
    debug_assert!(out.is_weak_pseudomanifold(out.dim()));
    debug_assert_eq!(
        flip_unchecked(&out, &t.inverse()).as_ref(),
        Ok(k),
        "flip is not an involution"
    );
    Ok(out)
}

/// Orbits of `triples` under `group`, each sorted, in order of smallest member.
fn triple_orbits(triples: &[DistinguishedTriple], group: &PermGroup) -> Vec<Vec<DistinguishedTriple>> {
    let mut seen: BTreeSet<DistinguishedTriple> = BTreeSet::new();
    let mut out = Vec::new();
    for t in triples {
        if seen.contains(t) {
            continue;
        }
        let orbit: BTreeSet<DistinguishedTriple> =
            group.elements().iter().map(|g| t.apply(g)).collect();
        seen.extend(orbit.iter().copied());
        out.push(orbit.into_iter().collect());
    }
    out
}

/// A G-orbit of distinguished triples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleOrbit {
    pub members: Vec<DistinguishedTriple>,
    /// Distinct members share no facet of their distinguished subcomplexes.
    pub admissible: bool,
}

impl TripleOrbit {
    fn signature(&self) -> BTreeSet<[Simplex; 3]> {
        self.members.iter().map(|t| t.parts()).collect()
    }
}

pub fn admissible_orbits(k: &Complex, g: &PermGroup) -> Result<Vec<TripleOrbit>, FlipError> {
    if !g.is_invariant(k) {
        return Err(FlipError::NotInvariant);
    }
    let triples = distinguished_triples(k)?;
    Ok(triple_orbits(&triples, g)
        .into_iter()
        .map(|members| {
            let mut seen = BTreeSet::new();
            let admissible = members
                .iter()
                .all(|t| t.subcomplex_facets().into_iter().all(|f| seen.insert(f)));
            TripleOrbit { members, admissible }
        })
        .collect())
}

/// Performs every flip of an admissible orbit.
pub fn apply_equivariant_flip(
    k: &Complex,
    g: &PermGroup,
    orbit: &TripleOrbit,
) -> Result<Complex, FlipError> {
    if !orbit.admissible {
        return Err(FlipError::NotAdmissible);
    }
    if !g.is_invariant(k) {
        return Err(FlipError::NotInvariant);
    }
    let mut out = k.clone();
    for t in &orbit.members {
        out = flip_unchecked(&out, t)?;
    }
    debug_assert_eq!(
        orbit
            .members
            .iter()
            .rev()
            .try_fold(k.clone(), |acc, t| flip_unchecked(&acc, t))
            .as_ref(),
        Ok(&out),
        "equivariant flips depend on order"
    );
    debug_assert!(g.is_invariant(&out));
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct FlipNode {
    /// `<group>,<index>`, the index counting discovery order within the group name.
    pub label: String,
    pub group: String,
    pub sym_order: usize,
    #[serde(skip)]
    pub key: CanonicalKey,
    #[serde(serialize_with = "serialize_complex")]
    pub complex: Complex,
    pub certificate: Option<Certificate>,
    pub triples: usize,
    /// Number of inequivalent moves, which equals the degree.
    pub moves: usize,
    pub expanded: bool,
}

fn serialize_complex<S: serde::Serializer>(k: &Complex, s: S) -> Result<S::Ok, S::Error> {
    crate::atlas::JsonComplex::from(k).serialize(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlipEdge {
    pub a: usize,
    pub b: usize,
    pub multiplicity: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Loops {
    pub self_inverse: usize,
    pub non_self_inverse: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlipGraph {
    /// Descriptor of the acting group for equivariant graphs.
    pub group: Option<String>,
    pub nodes: Vec<FlipNode>,
    pub edges: Vec<FlipEdge>,
    pub loops: Vec<Loops>,
    pub truncated: bool,
}

impl FlipGraph {
    /// Degree with self-inverse loops counted once and other loops twice.
    pub fn degree(&self, i: usize) -> usize {
        let e: usize = self
            .edges
            .iter()
            .filter(|e| e.a == i || e.b == i)
            .map(|e| e.multiplicity)
            .sum();
        e + self.loops[i].self_inverse + 2 * self.loops[i].non_self_inverse
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(|e| e.multiplicity).sum()
    }

    pub fn multiplicity(&self, a: usize, b: usize) -> usize {
        let (a, b) = (a.min(b), a.max(b));
        self.edges
            .iter()
            .find(|e| e.a == a && e.b == b)
            .map_or(0, |e| e.multiplicity)
    }

    pub fn census(&self) -> BTreeMap<String, usize> {
        let mut c = BTreeMap::new();
        for n in &self.nodes {
            *c.entry(n.group.clone()).or_insert(0) += 1;
        }
        c
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph flips {\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let _ = writeln!(s, "  n{i} [label=\"{}\"];", n.label);
        }
        for e in &self.edges {
            for _ in 0..e.multiplicity {
                let _ = writeln!(s, "  n{} -- n{};", e.a, e.b);
            }
        }
        for (i, l) in self.loops.iter().enumerate() {
            for _ in 0..l.self_inverse {
                let _ = writeln!(s, "  n{i} -- n{i} [style=dashed];");
            }
            for _ in 0..l.non_self_inverse {
                let _ = writeln!(s, "  n{i} -- n{i};");
            }
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_nodes: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_nodes: 10_000 }
    }
}

/// Per-node data kept during exploration.
struct Entry {
    canon: Canonical,
    /// Sym(K) for plain graphs, its normalizer part for equivariant ones.
    moving: PermGroup,
}

struct Move {
    orbit: TripleOrbit,
    result: Complex,
    canon: Canonical,
}

#[derive(Default)]
struct Registry {
    nodes: Vec<FlipNode>,
    entries: Vec<Entry>,
    by_bucket: HashMap<(Option<u128>, CanonicalKey), Vec<usize>>,
    per_group: BTreeMap<String, usize>,
    loops: Vec<Loops>,
}

impl Registry {
    fn add(&mut self, k: Complex, canon: Canonical, g: Option<&PermGroup>) -> Result<usize, FlipError> {
        let sym = PermGroup::from_generators(k.n(), canon.automorphisms.clone())?;
        let sym_order = sym.order();
        let group = sym.descriptor();
        let moving = match g {
            Some(g) => sym.subgroup_where(|p| g.is_normalized_by(p)),
            None => sym,
        };
        let idx = self.per_group.entry(group.clone()).or_insert(0);
        *idx += 1;
        let cert = certificate(&k).ok();
        let id = self.nodes.len();
        self.by_bucket
            .entry((cert.map(|c| c.cert), canon.key.clone()))
            .or_default()
            .push(id);
        self.nodes.push(FlipNode {
            label: format!("{group},{idx}"),
            group,
            sym_order,
            key: canon.key.clone(),
            complex: k,
            certificate: cert,
            triples: 0,
            moves: 0,
            expanded: false,
        });
        self.entries.push(Entry { canon, moving });
        self.loops.push(Loops::default());
        Ok(id)
    }
}

/// Breadth-first exploration shared by the plain and equivariant graphs.
fn explore(seed: &Complex, g: Option<&PermGroup>, caps: Caps) -> Result<FlipGraph, FlipError> {
    simplex_size(seed)?;
    if let Some(g) = g {
        if !g.is_invariant(seed) {
            return Err(FlipError::NotInvariant);
        }
    }
    let mut reg = Registry::default();
    let mut directed: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut truncated = false;

    let seed_canon = canonical_form(seed);
    reg.add(seed.clone(), seed_canon, g)?;
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let (nodes, entries) = (&reg.nodes, &reg.entries);
        let expansions: Vec<Result<(usize, Vec<Move>), FlipError>> = frontier
            .par_iter()
            .map(|&u| {
                let k = &nodes[u].complex;
                let triples = distinguished_triples(k)?;
                let orbits: Vec<TripleOrbit> = match g {
                    Some(g) => admissible_orbits(k, g)?
                        .into_iter()
                        .filter(|o| o.admissible)
                        .collect(),
                    None => triple_orbits(&triples, &PermGroup::trivial(k.n()))
                        .into_iter()
                        .map(|members| TripleOrbit {
                            members,
                            admissible: true,
                        })
                        .collect(),
                };
                // Moves up to the symmetries that preserve the setting.
                let moving = &entries[u].moving;
                let mut seen: BTreeSet<BTreeSet<[Simplex; 3]>> = BTreeSet::new();
                let mut reps = Vec::new();
                for o in orbits {
                    let sig = o.signature();
                    if seen.contains(&sig) {
                        continue;
                    }
                    for a in moving.elements() {
                        seen.insert(sig.iter().map(|p| map_parts(a, p)).collect());
                    }
                    reps.push(o);
                }
                let moves = reps
                    .into_iter()
                    .map(|orbit| {
                        let result = match g {
                            Some(g) => apply_equivariant_flip(k, g, &orbit)?,
                            None => apply_triple_flip(k, &orbit.members[0])?,
                        };
                        let canon = canonical_form(&result);
                        Ok(Move {
                            orbit,
                            result,
                            canon,
                        })
                    })
                    .collect::<Result<Vec<Move>, FlipError>>()?;
                Ok((triples.len(), moves))
            })
            .collect();
        let mut next = Vec::new();
        for (&u, exp) in frontier.iter().zip(expansions) {
            let (t, moves) = exp?;
            reg.nodes[u].triples = t;
            reg.nodes[u].moves = moves.len();
            reg.nodes[u].expanded = true;
            for mv in moves {
                let bucket = (certificate(&mv.result).ok().map(|c| c.cert), mv.canon.key.clone());
                let mut target: Option<(usize, Permutation)> = None;
                for &v in reg.by_bucket.get(&bucket).into_iter().flatten() {
                    let f0 = isomorphism_from_forms(&reg.entries[v].canon, &mv.canon)
                        .expect("equal canonical keys");
                    let psi = match g {
                        None => Some(f0),
                        Some(g) => {
                            let aut = PermGroup::from_generators(
                                reg.nodes[v].complex.n(),
                                reg.entries[v].canon.automorphisms.clone(),
                            )?;
                            weak_iso_in_coset(&f0, &aut, g).map(|w| w.map)
                        }
                    };
                    if let Some(psi) = psi {
                        target = Some((v, psi));
                        break;
                    }
                }
                match target {
                    Some((v, psi)) if v == u => {
                        let sig = mv.orbit.signature();
                        let self_inverse = reg.entries[u].moving.elements().iter().any(|a| {
                            let m = psi.compose(a);
                            sig.iter().map(|p| map_parts(&m, p)).collect::<BTreeSet<_>>() == sig
                        });
                        if self_inverse {
                            reg.loops[u].self_inverse += 1;
                        } else {
                            reg.loops[u].non_self_inverse += 1;
                        }
                    }
                    Some((v, _)) => *directed.entry((u, v)).or_insert(0) += 1,
                    None => {
                        if reg.nodes.len() >= caps.max_nodes {
                            truncated = true;
                            continue;
                        }
                        let v = reg.add(mv.result, mv.canon, g)?;
                        *directed.entry((u, v)).or_insert(0) += 1;
                        next.push(v);
                    }
                }
            }
        }
        frontier = next;
    }
    let mut pairs: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (&(u, v), &c) in &directed {
        let key = (u.min(v), u.max(v));
        let back = directed.get(&(v, u)).copied();
        if let Some(b) = back {
            debug_assert_eq!(b, c, "asymmetric edge count between {u} and {v}");
        }
        let e = pairs.entry(key).or_insert(0);
        *e = (*e).max(c);
    }
    let Registry { nodes, mut loops, .. } = reg;
    for l in &mut loops {
        debug_assert!(l.non_self_inverse % 2 == 0 || truncated);
        l.non_self_inverse /= 2;
    }
    Ok(FlipGraph {
        group: g.map(|g| g.descriptor()),
        nodes,
        edges: pairs
            .into_iter()
            .map(|((a, b), multiplicity)| FlipEdge { a, b, multiplicity })
            .collect(),
        loops,
        truncated,
    })
}

fn map_parts(p: &Permutation, parts: &[Simplex; 3]) -> [Simplex; 3] {
    let mut out = parts.map(|s| p.apply_simplex(s));
    out.sort_unstable();
    out
}

/// Connected component of `seed` in the graph of isomorphism classes and triple flips.
pub fn flip_graph_component(seed: &Complex, caps: Caps) -> Result<FlipGraph, FlipError> {
    explore(seed, None, caps)
}

/// Component of `seed` among weak G-isomorphism classes joined by equivariant flips.
pub fn equivariant_component(
    seed: &Complex,
    g: &PermGroup,
    caps: Caps,
) -> Result<FlipGraph, FlipError> {
    explore(seed, Some(g), caps)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WalkStats {
    pub rng_seed: u64,
    pub steps: usize,
    pub halted_no_moves: bool,
    /// Keyed by `<|Sym|>:<group>`; certificates as decimal strings.
    pub certificates: BTreeMap<String, BTreeSet<String>>,
}

impl WalkStats {
    pub fn distinct(&self) -> usize {
        self.certificates.values().map(|s| s.len()).sum()
    }
}

/// Certificate of a 15-vertex 8-complex, or a digest of the canonical key otherwise.
fn walk_certificate(k: &Complex, canon: &Canonical) -> String {
    match certificate(k) {
        Ok(c) => c.cert.to_string(),
        Err(_) => {
            use sha2::{Digest, Sha256};
            format!("{:x}", Sha256::digest(canon.key.to_bytes()))
        }
    }
}

/// Random walk flipping a uniformly chosen distinguished triple at each step.
pub fn random_walk(seed: &Complex, steps: usize, rng_seed: u64) -> Result<WalkStats, FlipError> {
    simplex_size(seed)?;
    let mut rng = Xoshiro256StarStar::seed_from_u64(rng_seed);
    let mut stats = WalkStats {
        rng_seed,
        steps: 0,
        halted_no_moves: false,
        certificates: BTreeMap::new(),
    };
    let record = |k: &Complex, stats: &mut WalkStats| -> Result<(), FlipError> {
        let canon = canonical_form(k);
        let sym = PermGroup::from_generators(k.n(), canon.automorphisms.clone())?;
        stats
            .certificates
            .entry(format!("{}:{}", sym.order(), sym.descriptor()))
            .or_default()
            .insert(walk_certificate(k, &canon));
        Ok(())
    };
    let mut current = seed.clone();
    record(&current, &mut stats)?;
    for _ in 0..steps {
        let triples = distinguished_triples(&current)?;
        if triples.is_empty() {
            stats.halted_no_moves = true;
            break;
        }
        let t = triples[rng.gen_range(0..triples.len())];
        current = apply_triple_flip(&current, &t)?;
        stats.steps += 1;
        record(&current, &mut stats)?;
    }
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::{cp2_9, special_lines};
    use crate::iso::is_isomorphic;

    /// Naive scan: every pair of disjoint 2-simplices whose links chain cyclically.
    fn triples_by_links(k: &Complex) -> Vec<DistinguishedTriple> {
        let h = 3;
        let mut partner = HashMap::new();
        for s in crate::complex::k_subsets(k.n(), h) {
            let link = k.link(s).unwrap();
            let rest = Simplex::full(k.n()).minus(s);
            for t in crate::complex::k_subsets(k.n(), h).filter(|t| t.is_subset_of(rest)) {
                if link == Complex::boundary_of(k.n(), t).unwrap() {
                    partner.insert(s, t);
                }
            }
        }
        let mut out = BTreeSet::new();
        for (&a, &b) in &partner {
            if let Some(&c) = partner.get(&b) {
                if partner.get(&c) == Some(&a) {
                    out.insert(DistinguishedTriple::new(a, b, c));
                }
            }
        }
        out.into_iter().collect()
    }

    #[test]
    fn cp2_triples() {
        let k = cp2_9();
        let ts = distinguished_triples(&k).unwrap();
        assert_eq!(ts, triples_by_links(&k));
        assert_eq!(ts.len(), 7);
        let [l0, l1, l2] = special_lines();
        let special = DistinguishedTriple::new(l0, l1, l2);
        assert!(ts.contains(&special));
        for t in &ts {
            let flipped = apply_triple_flip(&k, t).unwrap();
            assert!(is_isomorphic(&flipped, &k));
            assert_eq!(apply_triple_flip(&flipped, &t.inverse()).unwrap(), k);
        }
        assert!(matches!(
            apply_triple_flip(&k, &special.inverse()),
            Err(FlipError::NotDistinguished(_))
        ));
    }

    #[test]
    fn cp2_component() {
        let g = flip_graph_component(&cp2_9(), Caps::default()).unwrap();
        assert_eq!(g.nodes.len(), 1);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.nodes[0].triples, 7);
        assert_eq!(g.degree(0), g.nodes[0].moves);
        assert!(g.to_dot().contains("n0 -- n0"));
    }

    #[test]
    fn walk_is_reproducible() {
        let a = random_walk(&cp2_9(), 5, 7).unwrap();
        assert_eq!(a, random_walk(&cp2_9(), 5, 7).unwrap());
        assert_eq!(random_walk(&cp2_9(), 0, 7).unwrap().distinct(), 1);
    }

    #[test]
    fn rotation() {
        let a = Simplex::from_labels(&[4, 5]);
        let b = Simplex::from_labels(&[1, 6]);
        let c = Simplex::from_labels(&[2, 3]);
        let t = DistinguishedTriple::new(a, b, c);
        assert_eq!(t.deltas, [b, c, a]);
        assert_eq!(t.inverse().deltas, [b, a, c]);
    }
}
