//! Enumeration of G-invariant weak pseudomanifolds by backtracking over
//! G-orbits of candidate facets.

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::complex::{Complex, PairCheck, Simplex};
use crate::symmetry::PermGroup;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("infeasible mandatory facets: {0}")]
    InfeasibleMandatory(String),
    #[error("invalid search problem: {0}")]
    InvalidProblem(String),
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error("too many orbits for brute force: {0}")]
    TooLarge(usize),
}

#[derive(Debug, Clone)]
pub struct SearchProblem {
    pub d: usize,
    pub n: usize,
    pub min_facets: usize,
    pub group: PermGroup,
    pub mandatory: Vec<Simplex>,
    pub enforce_star: bool,
    pub require_two_per_ridge_exact: bool,
}

impl SearchProblem {
    pub fn new(d: usize, n: usize, min_facets: usize, group: PermGroup) -> SearchProblem {
        SearchProblem {
            d,
            n,
            min_facets,
            group,
            mandatory: Vec::new(),
            enforce_star: true,
            require_two_per_ridge_exact: true,
        }
    }

    pub fn with_mandatory(mut self, mandatory: Vec<Simplex>) -> SearchProblem {
        self.mandatory = mandatory;
        self
    }

    pub fn with_star(mut self, on: bool) -> SearchProblem {
        self.enforce_star = on;
        self
    }

    fn validate(&self) -> Result<(), SearchError> {
        if self.n == 0 || self.n > 32 {
            return Err(SearchError::InvalidProblem(format!("n = {} outside 1..=32", self.n)));
        }
        if self.d + 1 > self.n {
            return Err(SearchError::InvalidProblem(format!(
                "dimension {} needs more than {} vertices",
                self.d, self.n
            )));
        }
        if self.group.n() != self.n {
            return Err(SearchError::InvalidProblem(format!(
                "group acts on {} slots, expected {}",
                self.group.n(),
                self.n
            )));
        }
        let full = Simplex::full(self.n);
        for s in &self.mandatory {
            if s.len() != self.d + 1 || !s.is_subset_of(full) {
                return Err(SearchError::InfeasibleMandatory(format!(
                    "{s} is not a {}-simplex on {} vertices",
                    self.d, self.n
                )));
            }
        }
        Ok(())
    }

    /// Stable digest of the problem, used to match checkpoints.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!(
            "d={};n={};N={};star={};exact={};",
            self.d, self.n, self.min_facets, self.enforce_star, self.require_two_per_ridge_exact
        ));
        for g in self.group.generators() {
            h.update(format!("g{g};"));
        }
        let mut m: Vec<u32> = self.mandatory.iter().map(|s| s.0).collect();
        m.sort_unstable();
        for s in m {
            h.update(format!("m{s};"));
        }
        format!("{:x}", h.finalize())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    WrongVertexCount { found: usize, expected: usize },
    NotPure,
    NotInvariant,
    RidgeDegree { ridge: Simplex, degree: u32 },
    TooFewFacets { found: usize, required: usize },
    ConditionStar(Simplex),
    MissingMandatory(Simplex),
    Empty,
}

/// Re-checks a complex against the problem using only complex-level predicates.
pub fn verify_solution(problem: &SearchProblem, k: &Complex) -> Result<(), Vec<Violation>> {
    let mut v = Vec::new();
    if k.n() != problem.n {
        v.push(Violation::WrongVertexCount {
            found: k.n(),
            expected: problem.n,
        });
    }
    let d = problem.d as i32;
    if k.is_void() {
        v.push(Violation::Empty);
    } else if !k.is_pure(d) {
        v.push(Violation::NotPure);
    } else if let Ok(deg) = k.ridge_degrees(d) {
        let mut bad: Vec<(Simplex, u32)> = deg
            .into_iter()
            .filter(|&(_, c)| {
                if problem.require_two_per_ridge_exact {
                    c != 2
                } else {
                    c > 2
                }
            })
            .collect();
        bad.sort_unstable();
        v.extend(
            bad.into_iter()
                .map(|(ridge, degree)| Violation::RidgeDegree { ridge, degree }),
        );
    }
    if k.n() == problem.n && !problem.group.is_invariant(k) {
        v.push(Violation::NotInvariant);
    }
    if k.num_facets() < problem.min_facets {
        v.push(Violation::TooFewFacets {
            found: k.num_facets(),
            required: problem.min_facets,
        });
    }
    if problem.enforce_star {
        if let PairCheck::Violation(s) = k.check_condition_star() {
            v.push(Violation::ConditionStar(s));
        }
    }
    for s in &problem.mandatory {
        if !k.is_facet(*s) {
            v.push(Violation::MissingMandatory(*s));
        }
    }
    if v.is_empty() {
        Ok(())
    } else {
        Err(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Decision {
    Undecided,
    Included,
    Excluded,
}

/// Orbit tables shared by all search states of one problem.
#[derive(Debug)]
struct Tables {
    n: usize,
    min_facets: usize,
    exact: bool,
    orbits: Vec<Vec<Simplex>>,
    /// Ridge-orbit incidences of each facet orbit: (ridge orbit, multiplicity at its representative).
    orbit_ridges: Vec<Vec<(u32, u8)>>,
    ridge_cands: Vec<Vec<(u32, u8)>>,
    conflicts: Vec<Vec<u32>>,
    pre_excluded: Vec<bool>,
    mandatory_orbits: Vec<u32>,
}

impl Tables {
    fn build(p: &SearchProblem) -> Result<Tables, SearchError> {
        p.validate()?;
        let full = Simplex::full(p.n).0;
        let orbits: Vec<Vec<Simplex>> = p
            .group
            .orbits_on_ksubsets(p.d + 1)
            .into_iter()
            .map(|o| o.members)
            .collect();
        let ridge_orbits = p.group.orbits_on_ksubsets(p.d);
        let mut ridge_id: HashMap<u32, u32> = HashMap::new();
        for (i, o) in ridge_orbits.iter().enumerate() {
            ridge_id.insert(o.representative.0, i as u32);
        }
        let mut orbit_ridges = Vec::with_capacity(orbits.len());
        let mut ridge_cands: Vec<Vec<(u32, u8)>> = vec![Vec::new(); ridge_orbits.len()];
        let mut pre_excluded = vec![false; orbits.len()];
        for (oi, members) in orbits.iter().enumerate() {
            let mut mult: BTreeMap<u32, u32> = BTreeMap::new();
            for f in members {
                for r in f.boundary_faces() {
                    if let Some(&id) = ridge_id.get(&r.0) {
                        *mult.entry(id).or_insert(0) += 1;
                    }
                }
            }
            if mult.values().any(|&m| m > 2) {
                pre_excluded[oi] = true;
            }
            if p.enforce_star
                && members
                    .iter()
                    .any(|a| members.iter().any(|b| a.0 | b.0 == full))
            {
                pre_excluded[oi] = true;
            }
            let list: Vec<(u32, u8)> = mult
                .into_iter()
                .map(|(r, m)| (r, m.min(255) as u8))
                .collect();
            for &(r, m) in &list {
                ridge_cands[r as usize].push((oi as u32, m));
            }
            orbit_ridges.push(list);
        }
        let conflicts: Vec<Vec<u32>> = if p.enforce_star {
            orbits
                .par_iter()
                .map(|a| {
                    let rep = a[0].0;
                    orbits
                        .iter()
                        .enumerate()
                        .filter(|(_, b)| b.iter().any(|s| s.0 | rep == full))
                        .map(|(j, _)| j as u32)
                        .collect()
                })
                .collect()
        } else {
            vec![Vec::new(); orbits.len()]
        };
        let mut lookup: HashMap<u32, u32> = HashMap::new();
        for (i, o) in orbits.iter().enumerate() {
            for s in o {
                lookup.insert(s.0, i as u32);
            }
        }
        let mut mandatory_orbits: Vec<u32> =
            p.mandatory.iter().map(|s| lookup[&s.0]).collect();
        mandatory_orbits.sort_unstable();
        mandatory_orbits.dedup();
        for &o in &mandatory_orbits {
            if pre_excluded[o as usize] {
                return Err(SearchError::InfeasibleMandatory(format!(
                    "orbit of {} violates the ridge or (*) constraint by itself",
                    orbits[o as usize][0]
                )));
            }
        }
        let mut deg = vec![0u32; ridge_orbits.len()];
        for &o in &mandatory_orbits {
            for &(r, m) in &orbit_ridges[o as usize] {
                deg[r as usize] += m as u32;
                if deg[r as usize] > 2 {
                    return Err(SearchError::InfeasibleMandatory(format!(
                        "ridge {} lies in more than two forced facets",
                        ridge_orbits[r as usize].representative
                    )));
                }
            }
            if p.enforce_star {
                for &q in &mandatory_orbits {
                    if conflicts[o as usize].contains(&q) {
                        return Err(SearchError::InfeasibleMandatory(format!(
                            "forced facets {} and {} violate (*)",
                            orbits[o as usize][0], orbits[q as usize][0]
                        )));
                    }
                }
            }
        }
        Ok(Tables {
            n: p.n,
            min_facets: p.min_facets,
            exact: p.require_two_per_ridge_exact,
            orbits,
            orbit_ridges,
            ridge_cands,
            conflicts,
            pre_excluded,
            mandatory_orbits,
        })
    }
}

/// Mutable decision state with an undo trail.
#[derive(Debug, Clone)]
pub struct SearchState<'a> {
    t: &'a Tables,
    status: Vec<Decision>,
    deg: Vec<u8>,
    included_facets: usize,
    undecided_facets: usize,
    trail: Vec<u32>,
    queue: Vec<u32>,
}

/// What to do at a node after propagation.
struct Expansion {
    emit: bool,
    cands: Vec<u32>,
    explore_rest: bool,
}

impl<'a> SearchState<'a> {
    fn root(t: &'a Tables) -> Option<SearchState<'a>> {
        let mut s = SearchState {
            t,
            status: vec![Decision::Undecided; t.orbits.len()],
            deg: vec![0; t.ridge_cands.len()],
            included_facets: 0,
            undecided_facets: t.orbits.iter().map(|o| o.len()).sum(),
            trail: Vec::new(),
            queue: Vec::new(),
        };
        for o in 0..t.orbits.len() {
            if t.pre_excluded[o] {
                s.exclude(o as u32);
            }
        }
        let mut ok = true;
        for &o in &t.mandatory_orbits {
            if s.status[o as usize] == Decision::Undecided {
                ok &= s.include(o);
            } else if s.status[o as usize] == Decision::Excluded {
                ok = false;
            }
        }
        if ok && s.propagate() {
            s.trail.clear();
            Some(s)
        } else {
            None
        }
    }

    pub fn decisions(&self) -> &[Decision] {
        &self.status
    }

    fn include(&mut self, o: u32) -> bool {
        let oi = o as usize;
        debug_assert_eq!(self.status[oi], Decision::Undecided);
        self.status[oi] = Decision::Included;
        self.trail.push(o);
        let size = self.t.orbits[oi].len();
        self.included_facets += size;
        self.undecided_facets -= size;
        let mut ok = true;
        for &(r, m) in &self.t.orbit_ridges[oi] {
            let d = &mut self.deg[r as usize];
            *d += m;
            ok &= *d <= 2;
            self.queue.push(r);
        }
        for &q in &self.t.conflicts[oi] {
            match self.status[q as usize] {
                Decision::Included => ok = false,
                Decision::Undecided => self.exclude(q),
                Decision::Excluded => {}
            }
        }
        ok
    }

    fn exclude(&mut self, o: u32) {
        let oi = o as usize;
        debug_assert_eq!(self.status[oi], Decision::Undecided);
        self.status[oi] = Decision::Excluded;
        self.trail.push(o);
        self.undecided_facets -= self.t.orbits[oi].len();
        for &(r, _) in &self.t.orbit_ridges[oi] {
            self.queue.push(r);
        }
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let o = self.trail.pop().expect("nonempty trail") as usize;
            let size = self.t.orbits[o].len();
            if self.status[o] == Decision::Included {
                for &(r, m) in &self.t.orbit_ridges[o] {
                    self.deg[r as usize] -= m;
                }
                self.included_facets -= size;
            }
            self.status[o] = Decision::Undecided;
            self.undecided_facets += size;
        }
        self.queue.clear();
    }

    fn bound_ok(&self) -> bool {
        self.included_facets + self.undecided_facets >= self.t.min_facets
    }

    fn propagate(&mut self) -> bool {
        while let Some(r) = self.queue.pop() {
            if !self.bound_ok() {
                self.queue.clear();
                return false;
            }
            let deg = self.deg[r as usize];
            if deg > 2 {
                self.queue.clear();
                return false;
            }
            let room = 2 - deg;
            let mut single: Option<(u32, u8)> = None;
            let mut count = 0;
            for &(o, m) in &self.t.ridge_cands[r as usize] {
                if self.status[o as usize] != Decision::Undecided {
                    continue;
                }
                if m > room {
                    self.exclude(o);
                } else {
                    count += 1;
                    single = Some((o, m));
                }
            }
            if !self.t.exact {
                continue;
            }
            match (deg, count) {
                (1, 0) => {
                    self.queue.clear();
                    return false;
                }
                (1, 1) => {
                    let (o, _) = single.expect("one candidate");
                    if !self.include(o) {
                        self.queue.clear();
                        return false;
                    }
                }
                (0, 1) if single.map(|(_, m)| m) == Some(1) => {
                    self.exclude(single.expect("one candidate").0);
                }
                _ => {}
            }
        }
        if !self.bound_ok() {
            return false;
        }
        true
    }

    fn expansion(&self) -> Expansion {
        let undecided = || {
            (0..self.status.len() as u32)
                .filter(|&o| self.status[o as usize] == Decision::Undecided)
                .collect::<Vec<u32>>()
        };
        let can_emit = self.included_facets >= self.t.min_facets && self.included_facets > 0;
        if !self.t.exact {
            return match (0..self.status.len() as u32)
                .find(|&o| self.status[o as usize] == Decision::Undecided)
            {
                Some(o) => Expansion {
                    emit: false,
                    cands: vec![o],
                    explore_rest: true,
                },
                None => Expansion {
                    emit: can_emit,
                    cands: Vec::new(),
                    explore_rest: false,
                },
            };
        }
        let mut best: Option<(usize, u32)> = None;
        for (r, &d) in self.deg.iter().enumerate() {
            if d != 1 {
                continue;
            }
            let c = self.t.ridge_cands[r]
                .iter()
                .filter(|(o, _)| self.status[*o as usize] == Decision::Undecided)
                .count();
            if best.map_or(true, |(bc, _)| c < bc) {
                best = Some((c, r as u32));
            }
        }
        match best {
            Some((_, r)) => Expansion {
                emit: false,
                cands: self.t.ridge_cands[r as usize]
                    .iter()
                    .filter(|(o, _)| self.status[*o as usize] == Decision::Undecided)
                    .map(|&(o, _)| o)
                    .collect(),
                explore_rest: false,
            },
            None => Expansion {
                emit: can_emit,
                cands: undecided(),
                explore_rest: false,
            },
        }
    }

    fn solution(&self) -> Complex {
        let facets = self
            .status
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == Decision::Included)
            .flat_map(|(o, _)| self.t.orbits[o].iter().copied());
        Complex::from_facets(self.t.n, facets).expect("facets fit the slots")
    }

    /// Moves to child `k` of the current node; false if that child is dead or absent.
    fn descend(&mut self, k: usize) -> bool {
        let e = self.expansion();
        for (i, &c) in e.cands.iter().enumerate() {
            match self.status[c as usize] {
                Decision::Excluded if i == k => return false,
                Decision::Excluded => continue,
                Decision::Included => return i == k,
                Decision::Undecided => {}
            }
            if i == k {
                return self.include(c) && self.propagate();
            }
            self.exclude(c);
            if !self.propagate() {
                return false;
            }
        }
        e.explore_rest && k == e.cands.len()
    }
}

/// Progress snapshot handed to the progress callback.
#[derive(Debug, Clone, Serialize)]
pub struct Progress {
    pub nodes: u64,
    pub tasks_done: usize,
    pub tasks_total: usize,
    pub solutions: u64,
    pub elapsed_secs: f64,
    pub depth_histogram: Vec<u64>,
}

pub type ProgressFn = Arc<dyn Fn(&Progress) + Send + Sync>;

#[derive(Clone)]
pub struct SearchOptions {
    /// Worker count; `None` uses rayon's default pool.
    pub threads: Option<usize>,
    /// Number of top decision levels split into independent tasks (at most 2).
    pub split_depth: usize,
    pub checkpoint: Option<PathBuf>,
    pub progress_interval: Duration,
    pub progress: Option<ProgressFn>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            threads: None,
            split_depth: 2,
            checkpoint: None,
            progress_interval: Duration::from_secs(10),
            progress: None,
        }
    }
}

impl std::fmt::Debug for SearchOptions {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SearchOptions")
            .field("threads", &self.threads)
            .field("split_depth", &self.split_depth)
            .field("checkpoint", &self.checkpoint)
            .field("progress_interval", &self.progress_interval)
            .finish()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub solutions: u64,
    pub nodes: u64,
    pub tasks: usize,
    pub resumed_tasks: usize,
    pub candidate_orbits: usize,
    pub pre_excluded_orbits: usize,
    pub ridge_orbits: usize,
}

const CHECKPOINT_VERSION: u32 = 1;
const DEPTH_BUCKETS: usize = 64;

#[derive(Debug, Serialize, Deserialize)]
struct CheckpointFile {
    version: u32,
    digest: String,
    split_depth: usize,
    tasks: usize,
    finished: BTreeMap<usize, Vec<Vec<u32>>>,
}

enum Item {
    Emit(Complex),
    Task(Vec<usize>),
}

struct Monitor {
    nodes: AtomicU64,
    solutions: AtomicU64,
    tasks_done: AtomicU64,
    tasks_total: usize,
    depth: Vec<AtomicU64>,
    start: Instant,
    last: Mutex<Instant>,
    interval: Duration,
    callback: Option<ProgressFn>,
}

impl Monitor {
    fn visit(&self, depth: usize) {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed);
        self.depth[depth.min(DEPTH_BUCKETS - 1)].fetch_add(1, Ordering::Relaxed);
        if n % 4096 == 0 {
            self.maybe_report(false);
        }
    }

    fn snapshot(&self) -> Progress {
        Progress {
            nodes: self.nodes.load(Ordering::Relaxed),
            tasks_done: self.tasks_done.load(Ordering::Relaxed) as usize,
            tasks_total: self.tasks_total,
            solutions: self.solutions.load(Ordering::Relaxed),
            elapsed_secs: self.start.elapsed().as_secs_f64(),
            depth_histogram: {
                let mut h: Vec<u64> = self.depth.iter().map(|a| a.load(Ordering::Relaxed)).collect();
                while h.last() == Some(&0) {
                    h.pop();
                }
                h
            },
        }
    }

    fn maybe_report(&self, force: bool) {
        let Some(cb) = &self.callback else { return };
        let due = {
            let mut last = self.last.lock().expect("progress lock");
            if force || last.elapsed() >= self.interval {
                *last = Instant::now();
                true
            } else {
                false
            }
        };
        if due {
            cb(&self.snapshot());
        }
    }
}

fn explore(s: &mut SearchState, depth: usize, mon: &Monitor, out: &mut Vec<Complex>) {
    mon.visit(depth);
    let e = s.expansion();
    if e.emit {
        out.push(s.solution());
        mon.solutions.fetch_add(1, Ordering::Relaxed);
    }
    let mark = s.trail.len();
    let mut alive = true;
    for &c in &e.cands {
        match s.status[c as usize] {
            Decision::Excluded => continue,
            Decision::Included => {
                explore(s, depth + 1, mon, out);
                alive = false;
                break;
            }
            Decision::Undecided => {}
        }
        let m = s.trail.len();
        if s.include(c) && s.propagate() {
            explore(s, depth + 1, mon, out);
        }
        s.undo(m);
        s.exclude(c);
        if !s.propagate() {
            alive = false;
            break;
        }
    }
    if alive && e.explore_rest {
        explore(s, depth + 1, mon, out);
    }
    s.undo(mark);
}

/// Top levels of the tree, as emissions and subtree tasks in DFS order.
fn split(
    s: &mut SearchState,
    path: &mut Vec<usize>,
    depth: usize,
    items: &mut Vec<Item>,
    nodes: &mut u64,
) {
    if depth == 0 {
        items.push(Item::Task(path.clone()));
        return;
    }
    *nodes += 1;
    let e = s.expansion();
    if e.emit {
        items.push(Item::Emit(s.solution()));
    }
    let mark = s.trail.len();
    let mut alive = true;
    for (i, &c) in e.cands.iter().enumerate() {
        match s.status[c as usize] {
            Decision::Excluded => continue,
            Decision::Included => {
                path.push(i);
                split(s, path, depth - 1, items, nodes);
                path.pop();
                alive = false;
                break;
            }
            Decision::Undecided => {}
        }
        let m = s.trail.len();
        if s.include(c) && s.propagate() {
            path.push(i);
            split(s, path, depth - 1, items, nodes);
            path.pop();
        }
        s.undo(m);
        s.exclude(c);
        if !s.propagate() {
            alive = false;
            break;
        }
    }
    if alive && e.explore_rest {
        path.push(e.cands.len());
        split(s, path, depth - 1, items, nodes);
        path.pop();
    }
    s.undo(mark);
}

fn load_checkpoint(
    path: &PathBuf,
    digest: &str,
    split_depth: usize,
    tasks: usize,
) -> Result<BTreeMap<usize, Vec<Vec<u32>>>, SearchError> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(BTreeMap::new()),
        Err(e) => return Err(SearchError::Checkpoint(e.to_string())),
    };
    let cp: CheckpointFile =
        serde_json::from_str(&text).map_err(|e| SearchError::Checkpoint(e.to_string()))?;
    if cp.version != CHECKPOINT_VERSION
        || cp.digest != digest
        || cp.split_depth != split_depth
        || cp.tasks != tasks
    {
        return Err(SearchError::Checkpoint(format!(
            "{} belongs to a different problem",
            path.display()
        )));
    }
    Ok(cp.finished)
}

fn save_checkpoint(path: &PathBuf, cp: &CheckpointFile) -> Result<(), SearchError> {
    let tmp = path.with_extension("tmp");
    let text = serde_json::to_string(cp).map_err(|e| SearchError::Checkpoint(e.to_string()))?;
    std::fs::write(&tmp, text).map_err(|e| SearchError::Checkpoint(e.to_string()))?;
    std::fs::rename(&tmp, path).map_err(|e| SearchError::Checkpoint(e.to_string()))
}

/// Runs the search with default options, calling `sink` once per solution in a fixed order.
pub fn enumerate<F: FnMut(&Complex)>(problem: &SearchProblem, sink: F) -> Result<u64, SearchError> {
    enumerate_with(problem, &SearchOptions::default(), sink).map(|s| s.solutions)
}

/// All solutions as a vector.
pub fn collect(problem: &SearchProblem) -> Result<Vec<Complex>, SearchError> {
    let mut v = Vec::new();
    enumerate(problem, |k| v.push(k.clone()))?;
    Ok(v)
}

pub fn enumerate_with<F: FnMut(&Complex)>(
    problem: &SearchProblem,
    options: &SearchOptions,
    mut sink: F,
) -> Result<SearchStats, SearchError> {
    let tables = Tables::build(problem)?;
    let mut stats = SearchStats {
        candidate_orbits: tables.orbits.len(),
        pre_excluded_orbits: tables.pre_excluded.iter().filter(|&&b| b).count(),
        ridge_orbits: tables.ridge_cands.len(),
        ..SearchStats::default()
    };
    let Some(mut root) = SearchState::root(&tables) else {
        return Ok(stats);
    };
    let split_depth = options.split_depth.min(2);
    let mut items = Vec::new();
    let mut split_nodes = 0;
    split(&mut root, &mut Vec::new(), split_depth, &mut items, &mut split_nodes);
    let task_paths: Vec<&Vec<usize>> = items
        .iter()
        .filter_map(|i| match i {
            Item::Task(p) => Some(p),
            Item::Emit(_) => None,
        })
        .collect();
    stats.tasks = task_paths.len();

    let digest = problem.digest();
    let finished = match &options.checkpoint {
        Some(p) => load_checkpoint(p, &digest, split_depth, task_paths.len())?,
        None => BTreeMap::new(),
    };
    stats.resumed_tasks = finished.len();
    let monitor = Monitor {
        nodes: AtomicU64::new(0),
        solutions: AtomicU64::new(0),
        tasks_done: AtomicU64::new(finished.len() as u64),
        tasks_total: task_paths.len(),
        depth: (0..DEPTH_BUCKETS).map(|_| AtomicU64::new(0)).collect(),
        start: Instant::now(),
        last: Mutex::new(Instant::now()),
        interval: options.progress_interval,
        callback: options.progress.clone(),
    };
    let shared = Mutex::new(CheckpointFile {
        version: CHECKPOINT_VERSION,
        digest,
        split_depth,
        tasks: task_paths.len(),
        finished: finished.clone(),
    });
    let save_error: Mutex<Option<SearchError>> = Mutex::new(None);

    let run_task = |id: usize, path: &Vec<usize>| -> Vec<Complex> {
        if let Some(done) = finished.get(&id) {
            return done
                .iter()
                .map(|fs| {
                    Complex::from_facets(problem.n, fs.iter().map(|&m| Simplex(m)))
                        .expect("checkpointed facets fit")
                })
                .collect();
        }
        let mut s = root.clone();
        let mut out = Vec::new();
        if path.iter().all(|&k| s.descend(k)) {
            explore(&mut s, path.len(), &monitor, &mut out);
        }
        monitor.tasks_done.fetch_add(1, Ordering::Relaxed);
        if let Some(p) = &options.checkpoint {
            let mut cp = shared.lock().expect("checkpoint lock");
            cp.finished.insert(
                id,
                out.iter()
                    .map(|k| k.facets().iter().map(|f| f.0).collect())
                    .collect(),
            );
            if let Err(e) = save_checkpoint(p, &cp) {
                *save_error.lock().expect("error lock") = Some(e);
            }
        }
        monitor.maybe_report(false);
        out
    };
    let results: Vec<Vec<Complex>> = match options.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| SearchError::InvalidProblem(e.to_string()))?
            .install(|| {
                task_paths
                    .par_iter()
                    .enumerate()
                    .map(|(i, p)| run_task(i, p))
                    .collect()
            }),
        None => task_paths
            .par_iter()
            .enumerate()
            .map(|(i, p)| run_task(i, p))
            .collect(),
    };
    if let Some(e) = save_error.into_inner().expect("error lock") {
        return Err(e);
    }
    monitor.maybe_report(true);

    let mut results = results.into_iter();
    for item in &items {
        match item {
            Item::Emit(k) => {
                sink(k);
                stats.solutions += 1;
            }
            Item::Task(_) => {
                for k in results.next().expect("one result per task") {
                    sink(&k);
                    stats.solutions += 1;
                }
            }
        }
    }
    stats.nodes = monitor.nodes.load(Ordering::Relaxed) + split_nodes;
    Ok(stats)
}

/// Exhaustive reference: every subset of G-orbits, filtered by `verify_solution`.
pub fn brute_force(problem: &SearchProblem) -> Result<Vec<Complex>, SearchError> {
    problem.validate()?;
    let orbits = problem.group.orbits_on_ksubsets(problem.d + 1);
    let m = orbits.len();
    if m > 24 {
        return Err(SearchError::TooLarge(m));
    }
    let mut out = Vec::new();
    for bits in 1u64..(1u64 << m) {
        let facets = (0..m)
            .filter(|i| bits >> i & 1 == 1)
            .flat_map(|i| orbits[i].members.iter().copied());
        let k = Complex::from_facets(problem.n, facets).expect("facets fit the slots");
        if verify_solution(problem, &k).is_ok() {
            out.push(k);
        }
    }
    out.sort();
    Ok(out)
}
