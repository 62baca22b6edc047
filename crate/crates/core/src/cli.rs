//! Command-line front end. Every command prints a JSON report on stdout and a
//! short summary on stderr.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::atlas::{self, MandatoryCase};
use crate::complex::{Complex, PairCheck, Simplex};
use crate::flips::{self, Caps};
use crate::homology::{self, Coefficients, SphereVerdict};
use crate::iso;
use crate::search::{self, Progress, SearchOptions, SearchProblem};
use crate::symmetry::PermGroup;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Atlas(#[from] atlas::AtlasError),
    #[error(transparent)]
    Search(#[from] search::SearchError),
    #[error(transparent)]
    Flip(#[from] flips::FlipError),
    #[error(transparent)]
    Iso(#[from] iso::IsoError),
    #[error(transparent)]
    Group(#[from] crate::symmetry::SymmetryError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Parser, Debug)]
#[command(name = "hp2", version, about = "Tools for small triangulations and their triple flips")]
pub struct Cli {
    /// Worker threads for searches and graph exploration.
    #[arg(long, global = true, env = "HP2_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
struct GroupArgs {
    /// Generator in cycle notation, e.g. "(1 2 3)(4 5 6)"; repeatable.
    #[arg(long = "gen")]
    gens: Vec<String>,
    /// Named group (A5, A4, C6xC2, C7, S3, C6, C2xC2, C5_fixed5, C5_free), or
    /// generators in cycle notation separated by ";".
    #[arg(long)]
    group: Option<String>,
}

impl GroupArgs {
    fn build(&self, n: usize) -> Result<PermGroup, CliError> {
        if let Some(text) = self.group.as_deref().filter(|t| t.trim_start().starts_with('(')) {
            let gens: Vec<&str> = text
                .split(';')
                .chain(self.gens.iter().map(String::as_str))
                .filter(|s| !s.trim().is_empty())
                .collect();
            return Ok(PermGroup::parse(n, &gens)?);
        }
        if let Some(name) = &self.group {
            let g = atlas::named_group(name)?;
            if g.n() != n {
                return Err(CliError::Input(format!(
                    "group {name} acts on {} slots, expected {n}",
                    g.n()
                )));
            }
            if !self.gens.is_empty() {
                let mut all: Vec<_> = g.generators().to_vec();
                for s in &self.gens {
                    all.push(crate::symmetry::Permutation::parse(n, s)?);
                }
                return Ok(PermGroup::from_generators(n, all)?);
            }
            return Ok(g);
        }
        let gens: Vec<&str> = self.gens.iter().map(String::as_str).collect();
        Ok(PermGroup::parse(n, &gens)?)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Pseudomanifold, homology-manifold and complementarity checks.
    Check {
        input: String,
        #[arg(long)]
        dim: Option<i32>,
        /// Coefficients: Z or a prime p.
        #[arg(long, default_value = "Z")]
        coeff: String,
        /// Also try to certify a sphere with bistellar moves, with this move budget.
        #[arg(long)]
        bistellar: Option<usize>,
    },
    /// f-vector and Euler characteristic.
    Fvect { input: String },
    /// Full symmetry group.
    Symm { input: String },
    /// Decide isomorphism of two complexes.
    Iso { first: String, second: String },
    /// Partition complexes into isomorphism classes.
    IsoGroup {
        input: String,
        /// Write one representative per class here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate G-invariant weak pseudomanifolds.
    Find {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        nverts: usize,
        #[arg(long, default_value_t = 0)]
        min_facets: usize,
        #[command(flatten)]
        group: GroupArgs,
        /// Forced facets: a case name (S3, C6, C2xC2, C5_fixed5) or a file.
        #[arg(long)]
        mandatory: Option<String>,
        /// Enforce condition (*).
        #[arg(long, conflicts_with = "no_star")]
        star: bool,
        #[arg(long)]
        no_star: bool,
        /// Only require ridge degrees at most two.
        #[arg(long)]
        relaxed: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Seconds between progress lines.
        #[arg(long, default_value_t = 30.0)]
        progress_interval: f64,
        #[arg(long, default_value_t = 2)]
        split_depth: usize,
    },
    /// Fixed-point complex of a group action.
    Fixed {
        input: String,
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Connected component in the triple flip graph.
    FlipGraph {
        input: String,
        #[arg(long, default_value_t = 10_000)]
        max_nodes: usize,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Connected component in the G-equivariant triple flip graph.
    EqFlipGraph {
        input: String,
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 10_000)]
        max_nodes: usize,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Random walk by triple flips, recording certificates.
    RandomWalk {
        input: String,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Distribution vector, certificate and number of distinguished triples.
    Cert { input: String },
    /// List atlas entries, or write one.
    Atlas {
        name: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check complexes against search constraints.
    Verify {
        input: String,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        min_facets: usize,
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        mandatory: Option<String>,
        #[arg(long)]
        star: bool,
        #[arg(long)]
        relaxed: bool,
    },
    /// Convert between .dat and .json by file extension.
    Convert { input: String, output: PathBuf },
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub inputs_digest: String,
    pub verdicts: BTreeMap<String, Value>,
    pub counters: BTreeMap<String, Value>,
    pub artifacts: Vec<String>,
    pub result: Value,
    pub timing: Value,
}

/// Exit code, report and human summary of one invocation.
#[derive(Debug)]
pub struct RunOutcome {
    pub code: i32,
    pub report: Option<RunReport>,
    pub summary: String,
}

struct Ctx {
    digest: Sha256,
    report: RunReport,
    summary: Vec<String>,
    failed: bool,
    threads: Option<usize>,
}

impl Ctx {
    fn verdict(&mut self, name: &str, v: impl Into<Value>) {
        self.report.verdicts.insert(name.to_string(), v.into());
    }

    fn counter(&mut self, name: &str, v: impl Into<Value>) {
        self.report.counters.insert(name.to_string(), v.into());
    }

    fn say(&mut self, line: String) {
        self.summary.push(line);
    }

    fn read(&mut self, path: &Path) -> Result<String, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        self.digest.update(text.as_bytes());
        Ok(text)
    }

    fn write(&mut self, path: &Path, text: &str) -> Result<(), CliError> {
        std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        self.report.artifacts.push(path.display().to_string());
        Ok(())
    }

    /// An atlas name or a `.dat`/`.json` file holding one or more complexes.
    fn load(&mut self, input: &str) -> Result<Vec<Complex>, CliError> {
        let path = Path::new(input);
        if !path.exists() {
            if let Ok(k) = atlas::atlas_complex(input) {
                self.digest.update(input.as_bytes());
                return Ok(vec![k]);
            }
            return Err(CliError::Input(format!(
                "{input} is neither a file nor an atlas entry"
            )));
        }
        let text = self.read(path)?;
        let list = if path.extension().is_some_and(|e| e == "json") {
            atlas::from_json(&text)?
        } else {
            atlas::load_dat(&text)?
        };
        if list.is_empty() {
            return Err(CliError::Input(format!("{input} holds no complexes")));
        }
        Ok(list)
    }

    fn load_one(&mut self, input: &str) -> Result<Complex, CliError> {
        let mut list = self.load(input)?;
        if list.len() != 1 {
            return Err(CliError::Input(format!(
                "{input} holds {} complexes, expected one",
                list.len()
            )));
        }
        Ok(list.remove(0))
    }

    fn mandatory(
        &mut self,
        spec: Option<&str>,
        n: usize,
        group: &GroupArgs,
    ) -> Result<(PermGroup, Vec<Simplex>), CliError> {
        let Some(spec) = spec else {
            return Ok((group.build(n)?, Vec::new()));
        };
        if let Ok(case) = MandatoryCase::from_name(spec) {
            let (g, facets) = atlas::mandatory_subcomplex(case);
            let g = if group.gens.is_empty() && group.group.is_none() {
                g
            } else {
                group.build(n)?
            };
            return Ok((g, facets));
        }
        let list = self.load(spec)?;
        let facets = list.iter().flat_map(|k| k.facets().to_vec()).collect();
        Ok((group.build(n)?, facets))
    }
}

fn coefficients(s: &str) -> Result<Coefficients, CliError> {
    if s.eq_ignore_ascii_case("z") {
        return Ok(Coefficients::Integers);
    }
    let p: u64 = s
        .trim_start_matches(['F', 'f'])
        .parse()
        .map_err(|_| CliError::Input(format!("bad coefficients {s:?}")))?;
    if p < 2 || (2..p).take_while(|q| q * q <= p).any(|q| p % q == 0) {
        return Err(CliError::Input(format!("{p} is not a prime")));
    }
    Ok(Coefficients::Prime(p))
}

fn facets_json(k: &Complex) -> Value {
    serde_json::to_value(atlas::JsonComplex::from(k)).expect("serializable")
}

fn pair_check(c: PairCheck) -> Value {
    match c {
        PairCheck::Ok => json!("ok"),
        PairCheck::Violation(s) => json!({ "violation": s.to_string() }),
    }
}

fn run_check(
    ctx: &mut Ctx,
    input: &str,
    dim: Option<i32>,
    coeff: &str,
    bistellar: Option<usize>,
) -> Result<Value, CliError> {
    let coeff = coefficients(coeff)?;
    let list = ctx.load(input)?;
    let mut out = Vec::new();
    for (i, k) in list.iter().enumerate() {
        let d = dim.unwrap_or(k.dim());
        let weak = k.is_weak_pseudomanifold(d);
        let strong = k.is_strongly_connected(d).unwrap_or(false);
        let manifold = homology::is_homology_manifold(k, d, coeff);
        let complementarity = k.check_complementarity();
        let star = k.check_condition_star();
        let profile = homology::homology(k, coeff);
        let orientable = homology::is_orientable(k, d).ok();
        let sphere = bistellar.map(|b| homology::certify_sphere_bistellar(k, d, b));
        if !(weak && strong && manifold && complementarity.is_ok()) {
            ctx.failed = true;
        }
        ctx.say(format!(
            "complex {i}: weak pseudomanifold {weak}, strongly connected {strong}, {coeff}-homology manifold {manifold}, complementarity {}, chi = {}",
            complementarity.is_ok(),
            k.euler_characteristic()
        ));
        out.push(json!({
            "dimension": d,
            "weak_pseudomanifold": weak,
            "strongly_connected": strong,
            "homology_manifold": manifold,
            "complementarity": pair_check(complementarity),
            "condition_star": pair_check(star),
            "orientable": orientable,
            "euler_characteristic": k.euler_characteristic(),
            "f_vector": k.f_vector().0,
            "homology": profile.to_string(),
            "bistellar": sphere.map(|v| match v {
                SphereVerdict::Certified { moves } => json!({ "certified": moves }),
                SphereVerdict::NotSphere => json!("not_sphere"),
                SphereVerdict::Unknown => json!("unknown"),
            }),
        }));
    }
    ctx.verdict("all_passed", !ctx.failed);
    Ok(json!(out))
}

fn run_find(ctx: &mut Ctx, cmd: &Command) -> Result<Value, CliError> {
    let Command::Find {
        dim,
        nverts,
        min_facets,
        group,
        mandatory,
        star,
        no_star,
        relaxed,
        out,
        checkpoint,
        progress_interval,
        split_depth,
    } = cmd
    else {
        unreachable!()
    };
    let (g, facets) = ctx.mandatory(mandatory.as_deref(), *nverts, group)?;
    let problem = SearchProblem {
        d: *dim,
        n: *nverts,
        min_facets: *min_facets,
        group: g,
        mandatory: facets,
        enforce_star: *star || !*no_star,
        require_two_per_ridge_exact: !*relaxed,
    };
    ctx.digest.update(problem.digest().as_bytes());
    let callback: search::ProgressFn = Arc::new(|p: &Progress| {
        let rate = if p.elapsed_secs > 0.0 {
            p.nodes as f64 / p.elapsed_secs
        } else {
            0.0
        };
        eprintln!(
            "progress: nodes={} nodes/s={:.0} tasks={}/{} solutions={} depths={:?}",
            p.nodes, rate, p.tasks_done, p.tasks_total, p.solutions, p.depth_histogram
        );
    });
    let options = SearchOptions {
        threads: ctx.threads,
        split_depth: *split_depth,
        checkpoint: checkpoint.clone(),
        progress_interval: Duration::from_secs_f64(progress_interval.max(0.01)),
        progress: Some(callback),
    };
    let mut solutions = Vec::new();
    let stats = search::enumerate_with(&problem, &options, |k| solutions.push(k.clone()))?;
    for (i, k) in solutions.iter().enumerate() {
        if let Err(v) = search::verify_solution(&problem, k) {
            return Err(CliError::Input(format!(
                "solution {i} failed re-verification: {v:?}"
            )));
        }
    }
    let classes = iso::group_by_isomorphism(&solutions);
    ctx.counter("solutions", stats.solutions);
    ctx.counter("nodes", stats.nodes);
    ctx.counter("tasks", stats.tasks);
    ctx.counter("resumed_tasks", stats.resumed_tasks);
    ctx.counter("candidate_orbits", stats.candidate_orbits);
    ctx.counter("pre_excluded_orbits", stats.pre_excluded_orbits);
    ctx.counter("iso_classes", classes.len());
    if let Some(path) = out {
        ctx.write(path, &atlas::save_dat(&solutions))?;
    }
    ctx.say(format!(
        "{} solutions in {} isomorphism classes",
        solutions.len(),
        classes.len()
    ));
    let class_info: Vec<Value> = classes
        .iter()
        .map(|c| {
            let sym = iso::symmetry_group(&solutions[c.representative]).ok();
            json!({
                "representative": c.representative,
                "size": c.members.len(),
                "sym_order": sym.as_ref().map(|s| s.order()),
                "sym_group": sym.as_ref().map(|s| s.descriptor()),
            })
        })
        .collect();
    Ok(json!({ "classes": class_info }))
}

fn graph_outputs(
    ctx: &mut Ctx,
    g: &flips::FlipGraph,
    dot: &Option<PathBuf>,
    json_path: &Option<PathBuf>,
) -> Result<Value, CliError> {
    if let Some(p) = dot {
        ctx.write(p, &g.to_dot())?;
    }
    if let Some(p) = json_path {
        ctx.write(p, &g.to_json())?;
    }
    ctx.counter("nodes", g.nodes.len());
    ctx.counter("edges", g.edge_count());
    ctx.verdict("truncated", g.truncated);
    ctx.say(format!(
        "{} nodes, {} edges, census {:?}{}",
        g.nodes.len(),
        g.edge_count(),
        g.census(),
        if g.truncated { " (truncated)" } else { "" }
    ));
    let nodes: Vec<Value> = g
        .nodes
        .iter()
        .enumerate()
        .map(|(i, n)| {
            json!({
                "label": n.label,
                "sym_order": n.sym_order,
                "m": n.certificate.map(|c| c.m.0),
                "certificate": n.certificate.map(|c| c.cert.to_string()),
                "triples": n.triples,
                "degree": g.degree(i),
                "self_inverse_loops": g.loops[i].self_inverse,
                "non_self_inverse_loops": g.loops[i].non_self_inverse,
            })
        })
        .collect();
    let edges: Vec<Value> = g
        .edges
        .iter()
        .map(|e| json!([g.nodes[e.a].label, g.nodes[e.b].label, e.multiplicity]))
        .collect();
    Ok(json!({ "nodes": nodes, "edges": edges, "census": g.census() }))
}

fn dispatch(ctx: &mut Ctx, cmd: &Command) -> Result<Value, CliError> {
    match cmd {
        Command::Check {
            input,
            dim,
            coeff,
            bistellar,
        } => run_check(ctx, input, *dim, coeff, *bistellar),
        Command::Fvect { input } => {
            let list = ctx.load(input)?;
            let rows: Vec<Value> = list
                .iter()
                .map(|k| json!({ "f_vector": k.f_vector().0, "euler_characteristic": k.euler_characteristic() }))
                .collect();
            for k in &list {
                ctx.say(format!("f = {:?}, chi = {}", k.f_vector().0, k.euler_characteristic()));
            }
            Ok(json!(rows))
        }
        Command::Symm { input } => {
            let k = ctx.load_one(input)?;
            let g = iso::symmetry_group(&k)?;
            ctx.say(format!("|Sym| = {} ({})", g.order(), g.descriptor()));
            Ok(json!({
                "order": g.order(),
                "group": g.descriptor(),
                "generators": g.generators().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "vertex_orbits": g.vertex_orbits().iter().map(|o| o.labels()).collect::<Vec<_>>(),
            }))
        }
        Command::Iso { first, second } => {
            let a = ctx.load_one(first)?;
            let b = ctx.load_one(second)?;
            let map = iso::find_isomorphism(&a, &b);
            ctx.verdict("isomorphic", map.is_some());
            ctx.failed = map.is_none();
            ctx.say(format!("isomorphic: {}", map.is_some()));
            Ok(json!({ "map": map.map(|p| p.to_string()) }))
        }
        Command::IsoGroup { input, out } => {
            let list = ctx.load(input)?;
            let classes = iso::group_by_isomorphism(&list);
            if let Some(p) = out {
                let reps: Vec<Complex> =
                    classes.iter().map(|c| list[c.representative].clone()).collect();
                ctx.write(p, &atlas::save_dat(&reps))?;
            }
            ctx.counter("complexes", list.len());
            ctx.counter("classes", classes.len());
            ctx.say(format!("{} complexes in {} classes", list.len(), classes.len()));
            Ok(serde_json::to_value(&classes).expect("serializable"))
        }
        Command::Find { .. } => run_find(ctx, cmd),
        Command::Fixed { input, group } => {
            let k = ctx.load_one(input)?;
            let g = group.build(k.n())?;
            let fp = g.fixed_point_complex(&k)?;
            ctx.say(format!(
                "fixed-point complex: {} facets, f = {:?}",
                fp.complex.num_facets(),
                fp.complex.f_vector().0
            ));
            Ok(json!({
                "complex": facets_json(&fp.complex),
                "vertex_orbits": fp.labeling.iter().map(|s| s.labels()).collect::<Vec<_>>(),
            }))
        }
        Command::FlipGraph {
            input,
            max_nodes,
            dot,
            json: json_path,
        } => {
            let k = ctx.load_one(input)?;
            let g = flips::flip_graph_component(&k, Caps { max_nodes: *max_nodes })?;
            graph_outputs(ctx, &g, dot, json_path)
        }
        Command::EqFlipGraph {
            input,
            group,
            max_nodes,
            dot,
            json: json_path,
        } => {
            let k = ctx.load_one(input)?;
            let g = group.build(k.n())?;
            let graph = flips::equivariant_component(&k, &g, Caps { max_nodes: *max_nodes })?;
            graph_outputs(ctx, &graph, dot, json_path)
        }
        Command::RandomWalk { input, steps, seed } => {
            let k = ctx.load_one(input)?;
            let stats = flips::random_walk(&k, *steps, *seed)?;
            ctx.counter("steps", stats.steps);
            ctx.counter("distinct_certificates", stats.distinct());
            ctx.verdict("halted_no_moves", stats.halted_no_moves);
            ctx.say(format!(
                "{} steps, {} distinct certificates",
                stats.steps,
                stats.distinct()
            ));
            Ok(serde_json::to_value(&stats).expect("serializable"))
        }
        Command::Cert { input } => {
            let list = ctx.load(input)?;
            let mut rows = Vec::new();
            for k in &list {
                let c = iso::certificate(k)?;
                let t = flips::distinguished_triples(k)?.len();
                ctx.say(format!("m = {}, t = {t}, certificate = {}", c.m, c.cert));
                rows.push(json!({ "m": c.m.0, "t": t, "certificate": c.cert.to_string() }));
            }
            Ok(json!(rows))
        }
        Command::Atlas { name, out } => match name {
            None => Ok(json!({
                "complexes": atlas::atlas_names(),
                "groups": atlas::NAMED_GROUPS,
                "mandatory": MandatoryCase::ALL.iter().map(|c| c.name()).collect::<Vec<_>>(),
            })),
            Some(name) => {
                let k = atlas::atlas_complex(name)?;
                if let Some(p) = out {
                    let text = if p.extension().is_some_and(|e| e == "json") {
                        atlas::to_json(&[k.clone()])
                    } else {
                        atlas::save_dat(&[k.clone()])
                    };
                    ctx.write(p, &text)?;
                }
                ctx.say(format!("{name}: {} facets on {} slots", k.num_facets(), k.n()));
                Ok(facets_json(&k))
            }
        },
        Command::Verify {
            input,
            dim,
            min_facets,
            group,
            mandatory,
            star,
            relaxed,
        } => {
            let list = ctx.load(input)?;
            let n = list[0].n();
            let (g, facets) = ctx.mandatory(mandatory.as_deref(), n, group)?;
            let problem = SearchProblem {
                d: *dim,
                n,
                min_facets: *min_facets,
                group: g,
                mandatory: facets,
                enforce_star: *star,
                require_two_per_ridge_exact: !*relaxed,
            };
            let mut rows = Vec::new();
            for k in &list {
                match search::verify_solution(&problem, k) {
                    Ok(()) => rows.push(json!("ok")),
                    Err(v) => {
                        ctx.failed = true;
                        rows.push(serde_json::to_value(&v).expect("serializable"));
                    }
                }
            }
            ctx.verdict("all_passed", !ctx.failed);
            ctx.say(format!(
                "{} complexes, all pass: {}",
                list.len(),
                !ctx.failed
            ));
            Ok(json!(rows))
        }
        Command::Convert { input, output } => {
            let list = ctx.load(input)?;
            let text = if output.extension().is_some_and(|e| e == "json") {
                atlas::to_json(&list)
            } else {
                atlas::save_dat(&list)
            };
            ctx.write(output, &text)?;
            ctx.say(format!("wrote {} complexes", list.len()));
            Ok(json!({ "complexes": list.len() }))
        }
    }
}

pub fn run<I, T>(argv: I) -> RunOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return RunOutcome {
                code,
                report: None,
                summary: e.render().to_string(),
            };
        }
    };
    let command: Vec<String> = argv
        .iter()
        .skip(1)
        .map(|s| s.to_string_lossy().into_owned())
        .collect();
    let mut digest = Sha256::new();
    digest.update(command.join("\u{0}").as_bytes());
    let mut ctx = Ctx {
        digest,
        report: RunReport {
            command,
            inputs_digest: String::new(),
            verdicts: BTreeMap::new(),
            counters: BTreeMap::new(),
            artifacts: Vec::new(),
            result: Value::Null,
            timing: Value::Null,
        },
        summary: Vec::new(),
        failed: false,
        threads: cli.threads,
    };
    if let Some(t) = cli.threads {
        // The global pool can only be set once per process.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    let start = Instant::now();
    match dispatch(&mut ctx, &cli.command) {
        Ok(result) => {
            ctx.report.result = result;
            ctx.report.inputs_digest = format!("{:x}", ctx.digest.clone().finalize());
            ctx.report.timing = json!({ "wall_secs": start.elapsed().as_secs_f64() });
            RunOutcome {
                code: i32::from(ctx.failed),
                report: Some(ctx.report),
                summary: ctx.summary.join("\n"),
            }
        }
        Err(e) => RunOutcome {
            code: 2,
            report: None,
            summary: format!("error: {e}"),
        },
    }
}

pub fn main_entry() -> i32 {
    let outcome = run(std::env::args_os());
    if let Some(report) = &outcome.report {
        println!(
            "{}",
            serde_json::to_string_pretty(report).expect("serializable")
        );
    }
    if !outcome.summary.is_empty() {
        eprintln!("{}", outcome.summary.trim_end());
    }
    outcome.code
}
