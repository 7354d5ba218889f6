use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use dijoin_core::arborescence::{
    pack_in_arborescences, pack_out_arborescences, validate_arborescence, Direction,
};
use dijoin_core::cuts::mixed::{check_mixed_orientation, explore_mixed, MixedMode};
use dijoin_core::cuts::{edge_connectivity, is_k_cut_balanced_exhaustive, min_dicut, min_directed_cut, Balance};
use dijoin_core::dijoin::{pack_dijoins, verify_packing, DijoinPacking};
use dijoin_core::flows::{
    balanced_orientation_search, jaeger_flow_from_orientation, six_flow, verify_flow, FlowFile,
    JaegerOutcome,
};
use dijoin_core::graph::generate::{gen_instance, Instance, InstanceSpec};
use dijoin_core::graph::io::{
    graph_json, parse_biweights, parse_graph, parse_mixed, write_biweights, write_dot, write_graph,
    write_mixed, BiWeights, GraphFile,
};
use dijoin_core::sco::decompose::verify_decomposition;
use dijoin_core::sco::fixtures::{check_fixture, fixture, schrijver_mixed, NAMES};
use dijoin_core::sco::{
    decompose_scd, decompose_sco, member_rational, sco_to_gadget_digraph, Budget,
    DecompositionStatus, PolytopeFamily, PolytopeSpec,
};
use dijoin_core::{ArcSet, ArcWeightVector, Digraph, Error, FlowRatio, UndirGraph};

use crate::report::Outcome;
use crate::{Global, Verb};

/// What a verb hands back to `main`: the report fields plus an optional
/// artifact printed on stdout in text mode.
pub struct Done {
    pub outcome: Outcome,
    pub summary: String,
    pub result: Value,
    pub text: Option<String>,
}

impl Done {
    fn ok(summary: impl Into<String>, result: Value) -> Self {
        Done {
            outcome: Outcome::Success,
            summary: summary.into(),
            result,
            text: None,
        }
    }

    fn negative(summary: impl Into<String>, result: Value) -> Self {
        Done {
            outcome: Outcome::Negative,
            ..Done::ok(summary, result)
        }
    }

    fn with_text(mut self, text: String) -> Self {
        self.text = Some(text);
        self
    }
}

pub fn input_error(msg: impl std::fmt::Display) -> Done {
    Done {
        outcome: Outcome::InputError,
        summary: msg.to_string(),
        result: Value::Null,
        text: None,
    }
}

fn internal(msg: impl std::fmt::Display) -> Done {
    Done {
        outcome: Outcome::InternalError,
        summary: msg.to_string(),
        result: Value::Null,
        text: None,
    }
}

impl From<Error> for Done {
    fn from(e: Error) -> Self {
        let summary = e.to_string();
        match e {
            Error::Guard(_) => Done {
                outcome: Outcome::Limit,
                ..input_error(summary)
            },
            Error::NoDicut | Error::TauTooSmall(_) => Done::negative(summary, Value::Null),
            Error::InsufficientConnectivity {
                root,
                requested,
                value,
                witness,
            } => Done::negative(
                summary,
                json!({ "root": root, "requested": requested, "value": value, "witness": witness }),
            ),
            Error::NotBridgeless { edge, side } => {
                Done::negative(summary, json!({ "bridge": edge, "side": side }))
            }
            Error::NonMember { family, reason } => {
                Done::negative(summary, json!({ "family": family, "reason": reason }))
            }
            Error::Internal(_) => internal(summary),
            _ => input_error(summary),
        }
    }
}

type Run = Result<Done, Done>;

fn to_json<T: Serialize>(v: &T) -> Result<Value, Done> {
    serde_json::to_value(v).map_err(internal)
}

#[derive(Args, Debug, Serialize)]
pub struct Input {
    /// Graph file.
    #[serde(skip)]
    pub input: PathBuf,
}

#[derive(Args, Debug, Serialize)]
pub struct CheckDijoin {
    #[command(flatten)]
    #[serde(skip)]
    pub input: Input,
    /// Comma-separated arc ids.
    #[arg(long, value_delimiter = ',')]
    pub arcs: Vec<usize>,
    /// Every dicut must contain at least this many of the arcs.
    #[arg(long, default_value_t = 1)]
    pub tau: i64,
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyFlow {
    #[command(flatten)]
    #[serde(skip)]
    pub input: Input,
    /// Flow file (JSON, as written by `six-flow`).
    #[arg(long)]
    #[serde(skip)]
    pub flow: PathBuf,
}

#[derive(Args, Debug, Serialize)]
pub struct Balanced {
    #[command(flatten)]
    #[serde(skip)]
    pub input: Input,
    /// Flow ratio `a` or `a/b`, at least 2.
    #[arg(long)]
    pub k: String,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Dir {
    Out,
    In,
}

#[derive(Args, Debug, Serialize)]
pub struct PackArb {
    #[command(flatten)]
    #[serde(skip)]
    pub input: Input,
    #[arg(long, default_value_t = 0)]
    pub root: usize,
    #[arg(long)]
    pub count: i64,
    #[arg(long, value_enum, default_value_t = Dir::Out)]
    pub direction: Dir,
}

#[derive(Args, Debug, Serialize)]
pub struct PackDijoins {
    #[command(flatten)]
    #[serde(skip)]
    pub input: Input,
    /// Flow on the underlying graph; a 6-flow is computed when absent.
    #[arg(long)]
    #[serde(skip)]
    pub flow: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct Member {
    #[command(flatten)]
    #[serde(skip)]
    pub input: Input,
    /// P0, P1, Q0 or Q1.
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub tau: i64,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DecomposeKind {
    Sco,
    Scd,
}

#[derive(Args, Debug, Serialize)]
pub struct Decompose {
    #[command(flatten)]
    #[serde(skip)]
    pub input: Input,
    #[arg(long, value_enum)]
    pub family: DecomposeKind,
    #[arg(long)]
    pub tau: i64,
}

#[derive(Args, Debug, Serialize)]
pub struct Gadget {
    #[command(flatten)]
    #[serde(skip)]
    pub input: Input,
    #[arg(long)]
    pub tau: i64,
}

#[derive(Args, Debug, Serialize)]
pub struct Fixtures {
    /// Run one fixture; all are checked when absent.
    #[arg(long)]
    pub name: Option<String>,
    /// Print the fixture's file instead of its report artifact.
    #[arg(long)]
    pub emit: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Weak,
    Ratio,
}

#[derive(Args, Debug, Serialize)]
pub struct ExploreMixed {
    #[command(flatten)]
    #[serde(skip)]
    pub input: Input,
    #[arg(long, value_enum, default_value_t = Mode::Weak)]
    pub mode: Mode,
    /// Ratio for `--mode ratio`.
    #[arg(long)]
    pub k: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GenKind {
    RandomDigraph,
    Random2ecGraph,
    ParallelBundle,
    K4Family,
    DicutDigraph,
    RootedDigraph,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Args, Debug, Serialize)]
pub struct Gen {
    #[arg(value_enum)]
    pub kind: GenKind,
    #[arg(long, default_value_t = 6)]
    pub n: usize,
    #[arg(long, default_value_t = 10)]
    pub m: usize,
    #[arg(long, default_value_t = 2)]
    pub mult: usize,
    #[arg(long, default_value_t = 0)]
    pub back: usize,
    #[arg(long, default_value_t = 2)]
    pub tau: usize,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

fn ratio(s: &str) -> Result<FlowRatio, Done> {
    s.parse().map_err(|e: Error| input_error(e))
}

fn budget(g: &Global) -> Result<Budget, Done> {
    match g.budget {
        None => Ok(Budget::unlimited()),
        Some(s) if s.is_finite() && s >= 0.0 => Ok(Budget::seconds(s)),
        Some(s) => Err(input_error(format!("--budget {s} is not a duration"))),
    }
}

fn digraph(text: &str) -> Result<(Digraph, Option<ArcWeightVector>), Done> {
    let file = parse_graph(text)?;
    let w = file.arc_weights()?;
    match file {
        GraphFile::Digraph { graph, .. } => Ok((graph, w)),
        GraphFile::Graph { .. } => Err(input_error("expected a digraph, got an undirected graph")),
    }
}

/// Undirected input; a digraph is read as its underlying graph.
fn graph(text: &str) -> Result<UndirGraph, Done> {
    Ok(match parse_graph(text)? {
        GraphFile::Graph { graph, .. } => graph,
        GraphFile::Digraph { graph, .. } => graph.underlying(),
    })
}

fn read_flow(path: &PathBuf, g: &UndirGraph) -> Result<dijoin_core::flows::FlowAssignment, Done> {
    let text = std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    let file: FlowFile = serde_json::from_str(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    Ok(file.into_assignment(&g.bidirect())?)
}

fn flow_json(g: &UndirGraph, fa: &dijoin_core::flows::FlowAssignment) -> Result<(Value, String), Done> {
    let file = fa.to_file(&g.bidirect())?;
    let v = to_json(&file)?;
    let text = serde_json::to_string_pretty(&v).map_err(internal)? + "\n";
    Ok((v, text))
}

pub fn run(verb: &Verb, text: &str, g: &Global) -> Run {
    match verb {
        Verb::MinDicut(_) => min_dicut_verb(text),
        Verb::CheckDijoin(a) => check_dijoin(text, a),
        Verb::EdgeConnectivity(_) => edge_conn(text),
        Verb::SixFlow(_) => six_flow_verb(text),
        Verb::VerifyFlow(a) => verify_flow_verb(text, a),
        Verb::BalancedOrientation(a) => balanced(text, a),
        Verb::PackArborescences(a) => pack_arb(text, a),
        Verb::PackDijoins(a) => pack_dijoins_verb(text, a),
        Verb::Member(a) => member_verb(text, a),
        Verb::Decompose(a) => decompose(text, a, g),
        Verb::Gadget(a) => gadget(text, a),
        Verb::Fixtures(a) => fixtures(a, g),
        Verb::ExploreMixed(a) => explore(text, a),
        Verb::Gen(a) => generate(a, g),
    }
}

fn min_dicut_verb(text: &str) -> Run {
    let (d, w) = digraph(text)?;
    let Some(c) = min_dicut(&d, w.as_ref())? else {
        return Ok(Error::NoDicut.into());
    };
    if !c.is_dicut() || !c.validate(&d, w.as_ref(), None) {
        return Err(internal("dicut certificate failed validation"));
    }
    Ok(Done::ok(format!("minimum dicut {} leaving {:?}", c.value, c.vertices()), to_json(&c)?))
}

fn check_dijoin(text: &str, a: &CheckDijoin) -> Run {
    let (d, _) = digraph(text)?;
    let j = ArcSet::from_ids(&d, a.arcs.iter().copied())?;
    if a.tau < 1 {
        return Err(input_error("--tau must be at least 1"));
    }
    let ind = ArcWeightVector::indicator(&d, &j)?;
    let Some(c) = min_dicut(&d, Some(&ind))? else {
        return Ok(Done::ok("no dicut: every arc set qualifies", json!({ "dijoin": true, "witness": null })));
    };
    if !c.validate(&d, Some(&ind), None) {
        return Err(internal("dicut certificate failed validation"));
    }
    if c.value >= a.tau {
        Ok(Done::ok(
            format!("every dicut contains at least {} of the arcs", c.value),
            json!({ "dijoin": true, "min_hits": c.value }),
        ))
    } else {
        Ok(Done::negative(
            format!("the dicut leaving {:?} contains only {} of the arcs", c.vertices(), c.value),
            json!({ "dijoin": false, "min_hits": c.value, "witness": c }),
        ))
    }
}

fn edge_conn(text: &str) -> Run {
    let g = graph(text)?;
    let lambda = edge_connectivity(&g)?;
    // Independent check: minimum directed cut of the bidirected graph.
    let check = min_directed_cut(g.bidirect().digraph(), None)?.map_or(i64::MAX, |c| c.value);
    if check != lambda {
        return Err(internal(format!("edge connectivity {lambda} but directed cut {check}")));
    }
    Ok(Done::ok(format!("edge connectivity {lambda}"), json!({ "lambda": lambda })))
}

fn six_flow_verb(text: &str) -> Run {
    let g = graph(text)?;
    let fa = six_flow(&g)?;
    verify_flow(&g.bidirect(), &fa).map_err(|v| internal(format!("six-flow failed its check: {v}")))?;
    let (v, t) = flow_json(&g, &fa)?;
    Ok(Done::ok(format!("nowhere-zero 6-flow on {} edges", g.m()), v).with_text(t))
}

fn verify_flow_verb(text: &str, a: &VerifyFlow) -> Run {
    let g = graph(text)?;
    let fa = read_flow(&a.flow, &g)?;
    match verify_flow(&g.bidirect(), &fa) {
        Ok(()) => Ok(Done::ok(format!("valid flow with values in {}..={}", fa.bounds.p(), fa.bounds.q()), json!({ "valid": true }))),
        Err(v) => Ok(Done::negative(format!("invalid flow: {v}"), json!({ "valid": false, "violation": v }))),
    }
}

fn balanced(text: &str, a: &Balanced) -> Run {
    let g = graph(text)?;
    let k = ratio(&a.k)?;
    let b = g.bidirect();
    let Some(o) = balanced_orientation_search(&b, k)? else {
        return Ok(Done::negative(format!("no {k}-cut-balanced orientation exists"), json!({ "found": false })));
    };
    if is_k_cut_balanced_exhaustive(&b, &o, k)? != Balance::Balanced {
        return Err(internal("orientation fails the exhaustive balance check"));
    }
    let fa = match jaeger_flow_from_orientation(&b, &o, k)? {
        JaegerOutcome::Flow(fa) => fa,
        JaegerOutcome::Unbalanced(_) => return Err(internal("balanced orientation carries no flow")),
    };
    let (v, t) = flow_json(&g, &fa)?;
    Ok(Done::ok(format!("{k}-cut-balanced orientation with its flow"), json!({ "found": true, "flow": v })).with_text(t))
}

fn pack_arb(text: &str, a: &PackArb) -> Run {
    let (d, w) = digraph(text)?;
    let (p, dir) = match a.direction {
        Dir::Out => (pack_out_arborescences(&d, a.root, a.count, w.as_ref())?, Direction::Out),
        Dir::In => (pack_in_arborescences(&d, a.root, a.count, w.as_ref())?, Direction::In),
    };
    let mut used = vec![0i64; d.m()];
    for (i, t) in p.trees.iter().enumerate() {
        validate_arborescence(&d, t, a.root, dir).map_err(|v| internal(format!("tree {i}: {v:?}")))?;
        for arc in t.iter() {
            used[arc] += 1;
        }
    }
    if let Some(arc) = (0..d.m()).find(|&x| used[x] > w.as_ref().map_or(1, |w| w.get(x))) {
        return Err(internal(format!("arc {arc} used {} times, over capacity", used[arc])));
    }
    Ok(Done::ok(format!("{} arborescences at root {}", p.trees.len(), a.root), to_json(&p)?))
}

fn pack_dijoins_verb(text: &str, a: &PackDijoins) -> Run {
    let (d, _) = digraph(text)?;
    let flow = match &a.flow {
        Some(path) => Some(read_flow(path, &d.underlying())?),
        None => None,
    };
    let out = pack_dijoins(&d, flow.as_ref())?;
    verify_packing(&DijoinPacking::unit(&d, out.dijoins.dijoins.clone())?)
        .map_err(|v| internal(format!("packing failed its check: {v}")))?;
    let summary = match &out.advisory {
        Some(adv) => format!("tau {}, no dijoins packed: {adv}", out.tau),
        None => format!(
            "{} disjoint dijoins (tau {}, k {}, guarantee {})",
            out.dijoins.dijoins.len(),
            out.tau,
            out.k,
            out.guarantee
        ),
    };
    Ok(Done::ok(summary, to_json(&out)?))
}

fn member_verb(text: &str, a: &Member) -> Run {
    let w = parse_biweights(text)?;
    let family: PolytopeFamily = a.family.parse()?;
    let spec = PolytopeSpec::new(family, a.tau, w.graph.clone())?;
    let m = member_rational(&spec, &w)?;
    let v = to_json(&m)?;
    Ok(if m.is_member() {
        Done::ok(format!("member of {family}^{}", a.tau), v)
    } else {
        Done::negative(format!("not a member of {family}^{}", a.tau), v)
    })
}

fn integral(text: &str) -> Result<(BiWeights, ArcWeightVector), Done> {
    let w = parse_biweights(text)?;
    let x = w.integral()?;
    Ok((w, x))
}

fn decompose(text: &str, a: &Decompose, g: &Global) -> Run {
    let (w, x) = integral(text)?;
    let b = &w.graph;
    let budget = budget(g)?;
    let (r, sco) = match a.family {
        DecomposeKind::Sco => (decompose_sco(b, &x, a.tau, &budget)?, true),
        DecomposeKind::Scd => (decompose_scd(b, &x, a.tau, &budget)?, false),
    };
    let v = to_json(&r)?;
    let what = if sco { "SCOs" } else { "SCDs" };
    Ok(match r.status {
        DecompositionStatus::Found => {
            verify_decomposition(b, &x, &r.parts, sco)?;
            Done::ok(format!("decomposed into {} {what}", r.parts.len()), v)
        }
        DecompositionStatus::ProvenAbsent => {
            Done::negative(format!("no decomposition into {} {what} exists", a.tau), v)
        }
        DecompositionStatus::Timeout => Done {
            outcome: Outcome::Limit,
            ..Done::ok(
                format!("search stopped: {}", r.note.as_deref().unwrap_or("budget exhausted")),
                v,
            )
        },
    })
}

fn gadget(text: &str, a: &Gadget) -> Run {
    let (w, x) = integral(text)?;
    let gd = sco_to_gadget_digraph(&w.graph, &x, a.tau)?;
    let got = min_dicut(&gd.digraph, Some(&gd.weights))?.map(|c| c.value);
    if got != Some(a.tau) {
        return Err(internal(format!("gadget minimum dicut {got:?}, expected {}", a.tau)));
    }
    let file = GraphFile::Digraph {
        graph: gd.digraph.clone(),
        weights: Some(gd.weights.values()),
    };
    Ok(Done::ok(
        format!("gadget digraph on {} vertices with minimum dicut {}", gd.digraph.n(), a.tau),
        to_json(&gd)?,
    )
    .with_text(write_graph(&file)))
}

fn fixtures(a: &Fixtures, g: &Global) -> Run {
    let budget = budget(g)?;
    let names: Vec<&str> = match &a.name {
        Some(n) => vec![n.as_str()],
        None => NAMES.to_vec(),
    };
    let mut checks = Vec::new();
    let mut emitted = String::new();
    for name in names {
        if name == "schrijver_mixed" {
            let mg = schrijver_mixed()?;
            let mut gates = Vec::new();
            for (label, mode) in [
                ("weak cover", MixedMode::WeakCover),
                ("ratio 2", MixedMode::StrongRatio(FlowRatio::from_k(2, 1)?)),
            ] {
                let none = explore_mixed(&mg, mode)?.is_none();
                gates.push(json!({ "check": format!("no orientation passes {label}"), "passed": none }));
            }
            let valid = gates.iter().all(|g| g["passed"] == true);
            checks.push(json!({ "name": name, "valid": valid, "gates": gates }));
            emitted += &write_mixed(&mg);
            continue;
        }
        let f = fixture(name)?;
        let c = check_fixture(&f, &budget)?;
        emitted += &write_biweights(&f.weights);
        let mut v = to_json(&c)?;
        v["family"] = json!(f.family);
        v["tau"] = json!(f.tau);
        v["expect"] = json!(f.expect);
        checks.push(v);
    }
    let bad: Vec<&Value> = checks.iter().filter(|c| c["valid"] != true).collect();
    let done = if bad.is_empty() {
        Done::ok(format!("{} fixture(s) valid", checks.len()), json!(checks))
    } else {
        let names: Vec<&Value> = bad.iter().map(|c| &c["name"]).collect();
        Done::negative(format!("invalid fixture(s): {names:?}"), json!(checks))
    };
    Ok(if a.emit { done.with_text(emitted) } else { done })
}

fn explore(text: &str, a: &ExploreMixed) -> Run {
    let mg = parse_mixed(text)?;
    let mode = match (a.mode, &a.k) {
        (Mode::Weak, _) => MixedMode::WeakCover,
        (Mode::Ratio, Some(k)) => MixedMode::StrongRatio(ratio(k)?),
        (Mode::Ratio, None) => return Err(input_error("--mode ratio needs --k")),
    };
    match explore_mixed(&mg, mode)? {
        Some(o) => {
            if let Some(u) = check_mixed_orientation(&mg, mode, &o)? {
                return Err(internal(format!("orientation fails the pseudo-dicut leaving {u:?}")));
            }
            let orient: Vec<&str> = o.iter().map(|&p| if p { "+" } else { "-" }).collect();
            Ok(Done::ok("orientation found", json!({ "found": true, "orient": orient })))
        }
        None => Ok(Done::negative("no orientation satisfies every pseudo-dicut", json!({ "found": false }))),
    }
}

fn generate(a: &Gen, g: &Global) -> Run {
    let spec = match a.kind {
        GenKind::RandomDigraph => InstanceSpec::RandomDigraph { n: a.n, m: a.m },
        GenKind::Random2ecGraph => InstanceSpec::Random2ecGraph { n: a.n, m: a.m },
        GenKind::ParallelBundle => InstanceSpec::ParallelBundle { n: a.n, mult: a.mult },
        GenKind::K4Family => InstanceSpec::K4Family { mult: a.mult },
        GenKind::DicutDigraph => InstanceSpec::DicutDigraph {
            n: a.n,
            m: a.m,
            back: a.back,
            tau: a.tau,
        },
        GenKind::RootedDigraph => InstanceSpec::RootedDigraph { n: a.n, m: a.m, k: a.k },
    };
    let file = match gen_instance(&spec, g.seed)? {
        Instance::Digraph(graph) => GraphFile::Digraph { graph, weights: None },
        Instance::Graph(graph) => GraphFile::Graph { graph, weights: None },
    };
    let text = match a.format {
        Format::Text => write_graph(&file),
        Format::Json => serde_json::to_string_pretty(&graph_json(&file)).map_err(internal)? + "\n",
        Format::Dot => write_dot(&file),
    };
    Ok(Done::ok(format!("generated {}", file.kind()), graph_json(&file)).with_text(text))
}
