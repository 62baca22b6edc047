//! Named complexes, groups and forced facet sets, plus the `.dat` and JSON formats.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{Complex, ComplexError, Simplex};
use crate::symmetry::{PermGroup, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AtlasError {
    #[error("unknown atlas entry {0:?}")]
    UnknownEntry(String),
    #[error("line {line}: {reason}")]
    ParseError { line: usize, reason: String },
    #[error("invalid JSON complex: {0}")]
    Json(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

fn simplices(n: usize, rows: &[&[usize]]) -> Vec<Simplex> {
    rows.iter()
        .map(|r| {
            debug_assert!(r.iter().all(|&v| v >= 1 && v <= n));
            Simplex::from_labels(r)
        })
        .collect()
}

/// Six-vertex real projective plane.
pub fn rp2_6() -> Complex {
    let rows: &[&[usize]] = &[
        &[1, 2, 3],
        &[1, 3, 4],
        &[1, 4, 5],
        &[1, 5, 6],
        &[1, 2, 6],
        &[2, 3, 5],
        &[3, 4, 6],
        &[2, 4, 5],
        &[3, 5, 6],
        &[2, 4, 6],
    ];
    Complex::from_facets(6, simplices(6, rows)).expect("valid facets")
}

/// Slot of the point `(x, y)` of the affine plane over F_3.
pub fn plane_slot(x: usize, y: usize) -> usize {
    3 * (y % 3) + (x % 3)
}

/// All twelve lines of the affine plane over F_3 as masks.
pub fn plane_lines() -> Vec<Simplex> {
    let mut lines = Vec::new();
    // Lines y = c
    for c in 0..3 {
        lines.push(Simplex::from_vertices((0..3).map(|x| plane_slot(x, c))));
    }
    // Lines x = c
    for c in 0..3 {
        lines.push(Simplex::from_vertices((0..3).map(|y| plane_slot(c, y))));
    }
    // Lines y = x + c and y = 2x + c
    for slope in 1..3 {
        for c in 0..3 {
            lines.push(Simplex::from_vertices(
                (0..3).map(|x| plane_slot(x, (slope * x + c) % 3)),
            ));
        }
    }
    lines
}

/// The special lines `y = 0, 1, 2` in their cyclic order.
pub fn special_lines() -> [Simplex; 3] {
    let l = plane_lines();
    [l[0], l[1], l[2]]
}

pub fn non_special_lines() -> Vec<Simplex> {
    plane_lines().into_iter().skip(3).collect()
}

/// Nine-vertex complex projective plane on the affine plane over F_3.
pub fn cp2_9() -> Complex {
    let mut facets = Vec::new();
    let ns = non_special_lines();
    for (i, a) in ns.iter().enumerate() {
        for b in &ns[i + 1..] {
            if a.intersection(*b).len() == 1 {
                facets.push(a.union(*b));
            }
        }
    }
    let sp = special_lines();
    for t in 0..3 {
        let next = sp[(t + 1) % 3];
        for v in next.vertices() {
            facets.push(sp[t].union(next.without(v)));
        }
    }
    Complex::from_facets(9, facets).expect("valid facets")
}

pub const TABLE_SPHERES: [&str; 15] = [
    "L1", "L2", "L3", "L4", "L5", "L6", "L7", "L8", "L9", "M1", "M2", "M3", "M4", "L1star",
    "L2star",
];

fn sphere_representatives(name: &str) -> Option<&'static [&'static [usize]]> {
    let reps: &'static [&'static [usize]] = match name {
        "L1" => &[&[1, 2, 3, 6], &[1, 2, 4, 6], &[1, 3, 4, 6], &[2, 3, 4, 6]],
        "L2" => &[
            &[1, 2, 6, 7],
            &[2, 3, 6, 7],
            &[3, 4, 6, 7],
            &[4, 5, 6, 7],
            &[1, 5, 6, 7],
        ],
        "L3" => &[
            &[1, 3, 6, 7],
            &[3, 5, 6, 7],
            &[2, 5, 6, 7],
            &[2, 4, 6, 7],
            &[1, 4, 6, 7],
        ],
        "L4" => &[
            &[1, 2, 6, 7],
            &[2, 3, 6, 7],
            &[1, 3, 6, 7],
            &[1, 3, 5, 6],
            &[2, 3, 5, 6],
        ],
        "L5" => &[
            &[1, 2, 6, 7],
            &[2, 3, 6, 7],
            &[3, 4, 6, 7],
            &[1, 4, 6, 7],
            &[1, 3, 4, 6],
            &[1, 3, 5, 6],
        ],
        "L6" => &[
            &[1, 2, 6, 7],
            &[2, 3, 6, 7],
            &[3, 4, 6, 7],
            &[1, 4, 6, 7],
            &[1, 4, 5, 6],
            &[3, 4, 5, 6],
        ],
        "L7" => &[
            &[1, 3, 6, 7],
            &[2, 3, 6, 7],
            &[2, 4, 6, 7],
            &[1, 4, 6, 7],
            &[1, 2, 4, 6],
            &[2, 3, 5, 6],
        ],
        "L8" => &[
            &[1, 2, 6, 7],
            &[2, 3, 6, 7],
            &[1, 3, 6, 7],
            &[2, 3, 6, 8],
            &[3, 5, 6, 8],
            &[2, 5, 6, 8],
        ],
        "L9" => &[
            &[1, 2, 6, 7],
            &[2, 3, 6, 7],
            &[3, 4, 6, 7],
            &[1, 4, 6, 7],
            &[1, 3, 6, 8],
            &[3, 5, 6, 8],
            &[1, 5, 6, 8],
        ],
        "M1" => &[
            &[1, 2, 3, 6],
            &[1, 2, 5, 6],
            &[1, 3, 6, 7],
            &[2, 3, 6, 8],
            &[1, 6, 7, 9],
            &[3, 6, 7, 9],
        ],
        "M2" => &[
            &[1, 2, 3, 6],
            &[1, 2, 5, 6],
            &[2, 4, 6, 7],
            &[2, 3, 6, 8],
            &[2, 4, 6, 8],
            &[3, 6, 7, 9],
            &[5, 6, 7, 9],
        ],
        "M3" => &[
            &[1, 2, 3, 6],
            &[1, 2, 5, 6],
            &[1, 3, 6, 7],
            &[1, 5, 6, 7],
            &[4, 5, 6, 8],
            &[4, 6, 7, 8],
            &[5, 6, 7, 8],
        ],
        "M4" => &[
            &[1, 2, 3, 6],
            &[1, 4, 5, 6],
            &[1, 2, 6, 7],
            &[1, 3, 6, 8],
            &[4, 5, 6, 8],
            &[1, 6, 7, 9],
            &[2, 6, 7, 9],
        ],
        "L1star" => &[
            &[1, 2, 6, 7],
            &[2, 4, 6, 7],
            &[3, 4, 6, 7],
            &[1, 3, 6, 7],
            &[1, 2, 5, 6],
            &[2, 3, 4, 6],
        ],
        "L2star" => &[
            &[1, 2, 6, 7],
            &[2, 4, 6, 7],
            &[3, 4, 6, 7],
            &[1, 3, 6, 7],
            &[2, 3, 6, 8],
            &[3, 4, 6, 8],
            &[2, 4, 6, 8],
        ],
        _ => return None,
    };
    Some(reps)
}

/// The cyclic group generated by `(1 2 3 4 5)(6 7 8 9 10)` on ten slots.
pub fn c5_on_ten() -> PermGroup {
    PermGroup::parse(10, &["(1 2 3 4 5)(6 7 8 9 10)"]).expect("valid generator")
}

/// Orbit representatives of a ten-vertex sphere, closed under `c5_on_ten`.
pub fn table_sphere(name: &str) -> Result<Complex, AtlasError> {
    let reps = sphere_representatives(name).ok_or_else(|| AtlasError::UnknownEntry(name.into()))?;
    let g = c5_on_ten();
    let closed = g.closure_of(&simplices(10, reps));
    Ok(Complex::from_facets(10, closed)?)
}

/// Search configurations with forced facets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MandatoryCase {
    S3,
    C6,
    C2xC2,
    C5Fixed5,
}

impl MandatoryCase {
    pub const ALL: [MandatoryCase; 4] = [
        MandatoryCase::S3,
        MandatoryCase::C6,
        MandatoryCase::C2xC2,
        MandatoryCase::C5Fixed5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MandatoryCase::S3 => "S3",
            MandatoryCase::C6 => "C6",
            MandatoryCase::C2xC2 => "C2xC2",
            MandatoryCase::C5Fixed5 => "C5_fixed5",
        }
    }

    pub fn from_name(s: &str) -> Result<MandatoryCase, AtlasError> {
        MandatoryCase::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| AtlasError::UnknownEntry(s.into()))
    }
}

/// Generators and forced 8-simplices of a 15-vertex search case.
pub fn mandatory_subcomplex(case: MandatoryCase) -> (PermGroup, Vec<Simplex>) {
    let (gens, rows): (&[&str], Vec<Simplex>) = match case {
        MandatoryCase::S3 => (
            &[
                "(1 2 3)(4 5 6)(7 8 9)(10 11 12)(13 14 15)",
                "(1 4)(2 6)(3 5)(7 8)(10 11)(13 14)",
            ],
            simplices(
                15,
                &[
                    &[1, 2, 3, 4, 5, 6, 7, 8, 9],
                    &[1, 2, 3, 4, 5, 6, 10, 11, 12],
                    &[1, 2, 3, 7, 8, 9, 10, 11, 12],
                    &[4, 5, 6, 7, 8, 9, 10, 11, 12],
                ],
            ),
        ),
        MandatoryCase::C6 => (
            &["(1 2 3 4 5 6)(7 8 9 10 11 12)(13 14 15)"],
            simplices(
                15,
                &[
                    &[1, 2, 3, 4, 5, 6, 7, 9, 11],
                    &[1, 2, 3, 4, 5, 6, 8, 10, 12],
                    &[1, 3, 5, 7, 8, 9, 10, 11, 12],
                    &[2, 4, 6, 7, 8, 9, 10, 11, 12],
                    &[1, 2, 4, 5, 7, 8, 10, 11, 13],
                    &[2, 3, 5, 6, 8, 9, 11, 12, 13],
                    &[1, 2, 3, 4, 5, 6, 8, 11, 13],
                    &[1, 2, 3, 4, 5, 6, 9, 12, 13],
                    &[2, 5, 7, 8, 9, 10, 11, 12, 13],
                    &[3, 6, 7, 8, 9, 10, 11, 12, 13],
                ],
            ),
        ),
        MandatoryCase::C2xC2 => (
            &[
                "(1 2)(3 4)(5 6)(7 8)(9 10)(11 12)",
                "(1 3)(2 4)(5 7)(6 8)(9 11)(10 12)",
            ],
            simplices(
                15,
                &[
                    &[1, 2, 3, 4, 5, 6, 7, 8, 15],
                    &[1, 2, 3, 4, 5, 6, 7, 8, 13],
                    &[5, 6, 7, 8, 9, 10, 11, 12, 13],
                    &[5, 6, 7, 8, 9, 10, 11, 12, 14],
                    &[1, 2, 3, 4, 9, 10, 11, 12, 14],
                    &[1, 2, 3, 4, 9, 10, 11, 12, 15],
                    &[1, 2, 3, 4, 5, 6, 9, 10, 14],
                    &[1, 2, 3, 4, 5, 6, 9, 10, 15],
                    &[1, 2, 5, 6, 7, 8, 9, 10, 15],
                    &[1, 2, 5, 6, 7, 8, 9, 10, 13],
                    &[1, 2, 5, 6, 9, 10, 11, 12, 13],
                    &[1, 2, 5, 6, 9, 10, 11, 12, 14],
                ],
            ),
        ),
        MandatoryCase::C5Fixed5 => {
            let d1 = Simplex::from_labels(&[1, 2, 3, 4, 5]);
            let d2 = Simplex::from_labels(&[6, 7, 8, 9, 10]);
            let d3 = Simplex::from_labels(&[11, 12, 13, 14, 15]);
            let mut rows = Vec::new();
            for (a, b) in [(d1, d2), (d2, d3), (d3, d1)] {
                for v in b.vertices() {
                    rows.push(a.union(b.without(v)));
                }
            }
            rows.push(Simplex::from_labels(&[1, 2, 3, 4, 6, 7, 8, 9, 11]));
            (&["(1 2 3 4 5)(6 7 8 9 10)"], rows)
        }
    };
    let g = PermGroup::parse(15, gens).expect("valid generators");
    (g, rows)
}

/// Named groups acting on vertex slots.
pub const NAMED_GROUPS: [&str; 9] = [
    "A5", "A4", "C6xC2", "C7", "S3", "C6", "C2xC2", "C5_fixed5", "C5_free",
];

pub fn named_group(name: &str) -> Result<PermGroup, AtlasError> {
    let n = 15;
    let parse = |gens: &[&str]| PermGroup::parse(n, gens).expect("valid generators");
    Ok(match name {
        "A5" => a5_on_involutions(),
        "A4" => a4_on_involutions(),
        "C6xC2" => parse(&[
            "(1 2 3 4 5 6)(7 8 9 10 11 12)(13 14 15)",
            "(1 7)(2 8)(3 9)(4 10)(5 11)(6 12)",
        ]),
        "C7" => parse(&["(1 2 3 4 5 6 7)(8 9 10 11 12 13 14)"]),
        "S3" => mandatory_subcomplex(MandatoryCase::S3).0,
        "C6" => mandatory_subcomplex(MandatoryCase::C6).0,
        "C2xC2" => mandatory_subcomplex(MandatoryCase::C2xC2).0,
        "C5_fixed5" => mandatory_subcomplex(MandatoryCase::C5Fixed5).0,
        "C5_free" => parse(&["(1 2 3 4 5)(6 7 8 9 10)(11 12 13 14 15)"]),
        _ => return Err(AtlasError::UnknownEntry(name.into())),
    })
}

/// The fifteen double transpositions of five points, in lexicographic order of
/// their image tables; slot `i` stands for the `i`-th one.
fn involutions_of_five() -> Vec<Permutation> {
    let mut out = Vec::new();
    for a in 0..5 {
        for b in a + 1..5 {
            for c in a + 1..5 {
                for d in c + 1..5 {
                    if [c, d].contains(&b) {
                        continue;
                    }
                    let mut img: Vec<usize> = (0..5).collect();
                    img.swap(a, b);
                    img.swap(c, d);
                    out.push(Permutation::from_images(&img).expect("involution"));
                }
            }
        }
    }
    out.sort();
    out.dedup();
    debug_assert_eq!(out.len(), 15);
    out
}

/// Conjugation action of permutations of five points on the fifteen involutions.
fn conjugation_action(gens: &[&str]) -> PermGroup {
    let inv = involutions_of_five();
    let perms: Vec<Permutation> = gens
        .iter()
        .map(|g| {
            let p = Permutation::parse(5, g).expect("valid generator");
            let image: Vec<usize> = inv
                .iter()
                .map(|x| {
                    let y = p.conjugate(x);
                    inv.iter().position(|z| *z == y).expect("closed under conjugation")
                })
                .collect();
            Permutation::from_images(&image).expect("bijection")
        })
        .collect();
    PermGroup::from_generators(15, perms).expect("small group")
}

/// A5 acting transitively on 15 points (conjugation on its involutions).
pub fn a5_on_involutions() -> PermGroup {
    conjugation_action(&["(1 2 3 4 5)", "(1 2 3)"])
}

/// The point stabilizer A4 inside `a5_on_involutions`, with orbits of lengths 12 and 3.
pub fn a4_on_involutions() -> PermGroup {
    conjugation_action(&["(1 2 3)", "(1 2)(3 4)"])
}

/// Names accepted by [`atlas_complex`].
pub fn atlas_names() -> Vec<String> {
    let mut v: Vec<String> = vec!["rp2_6".into(), "cp2_9".into()];
    v.extend(TABLE_SPHERES.iter().map(|s| s.to_string()));
    v
}

pub fn atlas_complex(name: &str) -> Result<Complex, AtlasError> {
    match name {
        "rp2_6" => Ok(rp2_6()),
        "cp2_9" => Ok(cp2_9()),
        other => table_sphere(other),
    }
}

/// Parses the 0/1 row format; blank lines separate complexes and a line
/// `n=<k>` fixes the row length for what follows.
pub fn load_dat(text: &str) -> Result<Vec<Complex>, AtlasError> {
    let mut out = Vec::new();
    let mut declared: Option<usize> = None;
    let mut width: Option<usize> = None;
    let mut rows: Vec<Simplex> = Vec::new();
    let flush = |rows: &mut Vec<Simplex>, width: Option<usize>, out: &mut Vec<Complex>| {
        if !rows.is_empty() {
            let n = width.expect("width set with rows");
            out.push(Complex::from_facets(n, rows.drain(..)).expect("rows fit"));
        }
    };
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = i + 1;
        if line.is_empty() {
            flush(&mut rows, width, &mut out);
            width = declared;
            continue;
        }
        if let Some(rest) = line.strip_prefix("n=") {
            flush(&mut rows, width, &mut out);
            let n: usize = rest.trim().parse().map_err(|_| AtlasError::ParseError {
                line: lineno,
                reason: format!("bad header {line:?}"),
            })?;
            if n == 0 || n > 32 {
                return Err(AtlasError::ParseError {
                    line: lineno,
                    reason: format!("vertex count {n} outside 1..=32"),
                });
            }
            declared = Some(n);
            width = declared;
            continue;
        }
        if let Some(c) = line.chars().find(|c| *c != '0' && *c != '1') {
            return Err(AtlasError::ParseError {
                line: lineno,
                reason: format!("unexpected character {c:?}"),
            });
        }
        let len = line.len();
        match width {
            None => {
                if len > 32 {
                    return Err(AtlasError::ParseError {
                        line: lineno,
                        reason: format!("row length {len} exceeds 32"),
                    });
                }
                width = Some(len);
            }
            Some(w) if w != len => {
                return Err(AtlasError::ParseError {
                    line: lineno,
                    reason: format!("row length {len}, expected {w}"),
                });
            }
            _ => {}
        }
        let mask = line
            .bytes()
            .enumerate()
            .fold(0u32, |m, (j, b)| if b == b'1' { m | 1 << j } else { m });
        rows.push(Simplex(mask));
    }
    flush(&mut rows, width, &mut out);
    Ok(out)
}

/// Writes complexes in the row format, facets in increasing mask order.
pub fn save_dat(list: &[Complex]) -> String {
    let mut s = String::new();
    let mut current: Option<usize> = None;
    for (i, k) in list.iter().enumerate() {
        if i > 0 {
            s.push('\n');
        }
        if k.n() != 15 && current != Some(k.n()) {
            let _ = writeln!(s, "n={}", k.n());
            current = Some(k.n());
        }
        for f in k.facets() {
            for v in 0..k.n() {
                s.push(if f.contains_vertex(v) { '1' } else { '0' });
            }
            s.push('\n');
        }
    }
    s
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct JsonComplex {
    pub n: usize,
    pub facets: Vec<Vec<usize>>,
}

impl From<&Complex> for JsonComplex {
    fn from(k: &Complex) -> Self {
        JsonComplex {
            n: k.n(),
            facets: k.facets().iter().map(|f| f.labels()).collect(),
        }
    }
}

impl TryFrom<&JsonComplex> for Complex {
    type Error = AtlasError;
    fn try_from(j: &JsonComplex) -> Result<Complex, AtlasError> {
        let mut facets = Vec::new();
        for f in &j.facets {
            if f.iter().any(|&v| v == 0 || v > j.n) {
                return Err(AtlasError::Json(format!("vertex outside 1..={}", j.n)));
            }
            facets.push(Simplex::from_labels(f));
        }
        Ok(Complex::from_facets(j.n, facets)?)
    }
}

pub fn to_json(list: &[Complex]) -> String {
    let v: Vec<JsonComplex> = list.iter().map(JsonComplex::from).collect();
    serde_json::to_string_pretty(&v).expect("serializable")
}

/// Accepts either one complex object or an array of them.
pub fn from_json(text: &str) -> Result<Vec<Complex>, AtlasError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| AtlasError::Json(e.to_string()))?;
    let items: Vec<JsonComplex> = if value.is_array() {
        serde_json::from_value(value).map_err(|e| AtlasError::Json(e.to_string()))?
    } else {
        vec![serde_json::from_value(value).map_err(|e| AtlasError::Json(e.to_string()))?]
    };
    items.iter().map(Complex::try_from).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dat_round_trip() {
        let ks = load_dat("111111111000000\n").unwrap();
        assert_eq!(ks.len(), 1);
        assert_eq!(ks[0].facets(), &[Simplex::from_vertices(0..9)]);
        assert!(load_dat("").unwrap().is_empty());
        let list = vec![rp2_6(), cp2_9(), table_sphere("L3").unwrap()];
        let text = save_dat(&list);
        assert_eq!(load_dat(&text).unwrap(), list);
        let err = load_dat("0101\n01x1\n").unwrap_err();
        assert_eq!(
            err,
            AtlasError::ParseError {
                line: 2,
                reason: "unexpected character 'x'".into()
            }
        );
        assert!(matches!(
            load_dat("n=5\n0101\n"),
            Err(AtlasError::ParseError { line: 2, .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let list = vec![rp2_6(), cp2_9()];
        assert_eq!(from_json(&to_json(&list)).unwrap(), list);
        let one = from_json(r#"{"n":4,"facets":[[1,2],[2,3,4]]}"#).unwrap();
        assert_eq!(one[0].num_facets(), 2);
    }

    #[test]
    fn named_group_orders() {
        let a5 = named_group("A5").unwrap();
        assert_eq!(a5.order(), 60);
        assert_eq!(a5.vertex_orbits().len(), 1);
        assert_eq!(a5.descriptor(), "A5");
        let a4 = named_group("A4").unwrap();
        assert_eq!(a4.order(), 12);
        assert!(a4.elements().iter().all(|g| a5.contains(g)));
        let mut lens: Vec<usize> = a4.vertex_orbits().iter().map(|o| o.len()).collect();
        lens.sort();
        assert_eq!(lens, vec![3, 12]);
        let c = named_group("C6xC2").unwrap();
        assert_eq!(c.order(), 12);
        assert_eq!(c.descriptor(), "C6xC2");
        let lens: Vec<usize> = named_group("C7")
            .unwrap()
            .vertex_orbits()
            .iter()
            .map(|o| o.len())
            .collect();
        assert_eq!(lens, vec![7, 7, 1]);
        assert!(named_group("B7").is_err());
    }

    #[test]
    fn mandatory_sets() {
        let (g, s3) = mandatory_subcomplex(MandatoryCase::S3);
        assert_eq!((g.order(), s3.len()), (6, 4));
        let (g, c6) = mandatory_subcomplex(MandatoryCase::C6);
        assert_eq!((g.order(), c6.len()), (6, 10));
        let (g, c22) = mandatory_subcomplex(MandatoryCase::C2xC2);
        assert_eq!((g.order(), c22.len()), (4, 12));
        let (g, c5) = mandatory_subcomplex(MandatoryCase::C5Fixed5);
        assert_eq!((g.order(), c5.len()), (5, 16));
        assert!(c5.iter().all(|s| s.len() == 9));
    }
}
