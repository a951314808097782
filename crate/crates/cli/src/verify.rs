use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};
use starlike_core::affine::{regular_analysis, AffineError};
use starlike_core::catalog::Instance;
use starlike_core::graphs::{
    intersection_arrays_with, is_starlike, local_distance_transitivity, orbit_quotient, parity_identities,
    predicted_arrays, r2_analysis, theorem_main_check, theorem_properties_check, ArrayMode, GraphError,
};
use starlike_core::incidence::{is_nicely_affine, is_pairwise_transitive};
use starlike_core::{BipartiteGraph, PermGroup, REPORT_SCHEMA_VERSION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Check {
    NicelyAffine,
    PairwiseTransitive,
    Starlike,
    LocalDt,
    TheoremMain,
    TheoremProperties,
    Arrays,
    RegularAnalysis,
    R2Analysis,
}

impl Check {
    pub const ALL: [Check; 9] = [
        Check::NicelyAffine,
        Check::PairwiseTransitive,
        Check::Starlike,
        Check::LocalDt,
        Check::TheoremMain,
        Check::TheoremProperties,
        Check::Arrays,
        Check::RegularAnalysis,
        Check::R2Analysis,
    ];

    fn name(self) -> String {
        self.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub check: Check,
    pub status: Status,
    pub summary: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub details: Value,
}

impl CheckResult {
    fn new(check: Check, status: Status, summary: impl Into<String>) -> Self {
        CheckResult {
            check,
            status,
            summary: summary.into(),
            witness: None,
            details: Value::Null,
        }
    }

    fn pass(check: Check, summary: impl Into<String>) -> Self {
        Self::new(check, Status::Pass, summary)
    }

    fn fail(check: Check, summary: impl Into<String>) -> Self {
        Self::new(check, Status::Fail, summary)
    }

    fn not_applicable(check: Check, summary: impl Into<String>) -> Self {
        Self::new(check, Status::NotApplicable, summary)
    }

    fn status_if(check: Check, ok: bool, summary: impl Into<String>) -> Self {
        Self::new(check, if ok { Status::Pass } else { Status::Fail }, summary)
    }

    fn witness(mut self, w: impl Serialize) -> Self {
        self.witness = Some(to_value(w));
        self
    }

    fn details(mut self, d: impl Serialize) -> Self {
        self.details = to_value(d);
        self
    }
}

fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).unwrap_or_else(|e| Value::String(format!("unserialisable: {e}")))
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupSummary {
    pub order: u128,
    pub generators: usize,
    /// Element count by enumeration, when `order <= max_enumeration`.
    pub enumerated: Option<usize>,
    pub agrees: Option<bool>,
}

impl GroupSummary {
    fn of(g: &PermGroup, cap: usize) -> Self {
        let order = g.order();
        let enumerated = if order <= cap as u128 { g.enumeration_order(cap) } else { None };
        GroupSummary {
            order,
            generators: g.generators().len(),
            enumerated,
            agrees: enumerated.map(|e| e as u128 == order),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceReport {
    pub dir: PathBuf,
    pub name: String,
    pub points: usize,
    pub blocks: usize,
    pub g: GroupSummary,
    pub n: GroupSummary,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub seed: u64,
    pub max_enumeration: usize,
    pub instances: Vec<InstanceReport>,
    pub passed: bool,
}

impl Report {
    pub fn summary(&self) -> String {
        let mut out = String::new();
        let mut counts = [0usize; 3];
        for inst in &self.instances {
            let _ = writeln!(
                out,
                "{} ({}): {} points, {} blocks, |G| = {}, |N| = {}",
                inst.name,
                inst.dir.display(),
                inst.points,
                inst.blocks,
                inst.g.order,
                inst.n.order
            );
            for (label, grp) in [("G", &inst.g), ("N", &inst.n)] {
                if grp.agrees == Some(false) {
                    let _ = writeln!(out, "  {label}: enumeration gives {:?}, BSGS gives {}", grp.enumerated, grp.order);
                }
            }
            for c in &inst.checks {
                let (tag, i) = match c.status {
                    Status::Pass => ("PASS", 0),
                    Status::Fail => ("FAIL", 1),
                    Status::NotApplicable => ("N/A ", 2),
                };
                counts[i] += 1;
                let _ = writeln!(out, "  {:<20} {tag}  {}", c.check.name(), c.summary);
            }
        }
        let _ = writeln!(
            out,
            "verify: {} instance(s), {} passed, {} failed, {} not applicable",
            self.instances.len(),
            counts[0],
            counts[1],
            counts[2]
        );
        out
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub s: Option<usize>,
    pub seed: u64,
    pub max_enumeration: usize,
}

/// Replaces `G` or `N` by groups given in cycle notation, checked against the design.
pub fn override_groups(inst: &mut Instance, g_gens: &[String], n_gens: &[String]) -> Result<()> {
    let degree = inst.design.vertex_count();
    for (label, gens, slot) in [("G", g_gens, &mut inst.g), ("N", n_gens, &mut inst.n)] {
        if gens.is_empty() {
            continue;
        }
        let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
        let grp = PermGroup::from_cycle_strings(degree, &refs).with_context(|| format!("generators of {label}"))?;
        inst.design.check_automorphisms(&grp).with_context(|| format!("group {label}"))?;
        *slot = grp;
    }
    Ok(())
}

pub fn run(instances: &[(PathBuf, Instance)], checks: &[Check], opts: &VerifyOptions) -> Report {
    let reports: Vec<InstanceReport> = instances.iter().map(|(dir, inst)| verify_instance(dir, inst, checks, opts)).collect();
    Report {
        schema_version: REPORT_SCHEMA_VERSION,
        seed: opts.seed,
        max_enumeration: opts.max_enumeration,
        passed: reports.iter().all(|r| r.passed),
        instances: reports,
    }
}

fn verify_instance(dir: &std::path::Path, inst: &Instance, checks: &[Check], opts: &VerifyOptions) -> InstanceReport {
    let graph = inst.graph();
    let results: Vec<CheckResult> = checks.iter().map(|&c| run_check(c, inst, &graph, opts)).collect();
    let g = GroupSummary::of(&inst.g, opts.max_enumeration);
    let n = GroupSummary::of(&inst.n, opts.max_enumeration);
    let passed =
        results.iter().all(|r| r.status != Status::Fail) && g.agrees != Some(false) && n.agrees != Some(false);
    InstanceReport {
        dir: dir.to_path_buf(),
        name: inst.name.clone(),
        points: inst.design.v(),
        blocks: inst.design.b(),
        g,
        n,
        checks: results,
        passed,
    }
}

fn run_check(check: Check, inst: &Instance, graph: &BipartiteGraph, opts: &VerifyOptions) -> CheckResult {
    let result = match check {
        Check::NicelyAffine => nicely_affine(inst),
        Check::PairwiseTransitive => pairwise(inst),
        Check::Starlike => starlike(inst, graph),
        Check::LocalDt => local_dt(inst, graph, opts),
        Check::TheoremMain => Ok(theorem_main(inst, graph)),
        Check::TheoremProperties => theorem_properties(inst, graph),
        Check::Arrays => arrays(inst, graph, opts),
        Check::RegularAnalysis => Ok(regular(inst)),
        Check::R2Analysis => r2(inst, graph, opts),
    };
    result.unwrap_or_else(|e| CheckResult::fail(check, format!("error: {e:#}")).witness(format!("{e:#}")))
}

fn nicely_affine(inst: &Instance) -> Result<CheckResult> {
    let c = Check::NicelyAffine;
    Ok(match is_nicely_affine(&inst.design, &inst.n) {
        Ok(na) => CheckResult::pass(c, format!("mu = {}, {} parallel classes", na.mu, na.classes.len())).details(na),
        Err(e) => CheckResult::fail(c, e.to_string()).witness(e),
    })
}

fn pairwise(inst: &Instance) -> Result<CheckResult> {
    let rep = is_pairwise_transitive(&inst.design, &inst.g)?;
    let failing: Vec<&str> = rep.verdicts().iter().filter(|(_, v)| !v.transitive).map(|(name, _)| *name).collect();
    let summary = if rep.overall {
        "G is transitive on each of the six pair classes".to_string()
    } else {
        format!("not transitive on {}", failing.join(", "))
    };
    let res = CheckResult::status_if(Check::PairwiseTransitive, rep.overall, summary);
    let res = if rep.overall { res } else { res.witness(&failing) };
    Ok(res.details(&rep))
}

fn starlike(inst: &Instance, graph: &BipartiteGraph) -> Result<CheckResult> {
    let c = Check::Starlike;
    Ok(match is_starlike(graph, &inst.n)? {
        Some(r) => CheckResult::pass(c, format!("N-quotient is K_1,{r}")).details(json!({ "r": r })),
        None => {
            let q = orbit_quotient(graph.graph(), &inst.n)?;
            let edges = q.graph.edges();
            CheckResult::fail(c, format!("N-quotient has {} vertices and {} edges, not a star", q.orbits.len(), edges.len()))
                .witness(json!({ "orbits": q.orbits, "quotient_edges": edges }))
        }
    })
}

fn default_s(graph: &BipartiteGraph, opts: &VerifyOptions) -> usize {
    opts.s.unwrap_or_else(|| graph.max_distance().max(1))
}

fn local_dt(inst: &Instance, graph: &BipartiteGraph, opts: &VerifyOptions) -> Result<CheckResult> {
    let s = default_s(graph, opts);
    let rep = local_distance_transitivity(graph.graph(), &inst.g, s)?;
    let res = if rep.holds {
        CheckResult::pass(Check::LocalDt, format!("locally ({s})-distance transitive"))
    } else if let Some(f) = rep.failure {
        CheckResult::fail(
            Check::LocalDt,
            format!("stabilisers of the orbit of {} are not transitive at distance {}", f.orbit_rep, f.distance),
        )
        .witness(f)
    } else {
        CheckResult::fail(Check::LocalDt, format!("s = {s} exceeds the diameter {}", rep.diameter))
            .witness(json!({ "s": s, "diameter": rep.diameter }))
    };
    Ok(res.details(rep))
}

fn theorem_main(inst: &Instance, graph: &BipartiteGraph) -> CheckResult {
    let c = Check::TheoremMain;
    let main = theorem_main_check(graph, &inst.g, &inst.n);
    let h = &main.hypotheses;
    let res = if main.passes() {
        CheckResult::pass(c, format!("r = {}, conditions (a) and (b) both hold", h.r.unwrap_or(0)))
    } else if !h.holds {
        let mut failed = Vec::new();
        for (ok, what) in [
            (h.connected, "graph is disconnected".to_string()),
            (h.g_automorphisms, "G does not act on the graph".to_string()),
            (h.n_bipart_preserving, "N does not preserve the biparts".to_string()),
            (h.n_nontrivial, "N is trivial".to_string()),
            (h.n_normal, "N is not normal in G".to_string()),
            (h.r_at_least_3, match h.r {
                Some(r) => format!("r = {r}, need r >= 3"),
                None => "N-orbits on blocks are undefined".to_string(),
            }),
        ] {
            if !ok {
                failed.push(what);
            }
        }
        CheckResult::fail(c, format!("hypothesis failure: {}", failed.join("; "))).witness(json!({
            "hypotheses": h,
            "failed": failed,
        }))
    } else {
        CheckResult::fail(c, format!("condition (a) = {}, condition (b) = {}", main.cond_a, main.cond_b)).witness(json!({
            "cond_a": main.cond_a,
            "cond_b": main.cond_b,
            "starlike": main.starlike,
            "local_dt_failure": main.local_dt.as_ref().and_then(|d| d.failure),
            "not_nicely_affine": main.not_nicely_affine,
            "notes": main.notes,
        }))
    };
    res.details(&main)
}

fn theorem_properties(inst: &Instance, graph: &BipartiteGraph) -> Result<CheckResult> {
    let c = Check::TheoremProperties;
    Ok(match theorem_properties_check(graph, &inst.g, &inst.n) {
        Ok(rep) => {
            let summary = format!(
                "rank {} on points, rank {} on blocks, faithful on both sides",
                rep.rank_on_b, rep.rank_on_bp
            );
            let res = CheckResult::status_if(c, rep.holds, summary);
            let res = if rep.holds { res } else { res.witness(&rep) };
            res.details(&rep)
        }
        Err(GraphError::Precondition(reason)) => CheckResult::not_applicable(c, reason),
        Err(e) => return Err(e.into()),
    })
}

fn arrays(inst: &Instance, graph: &BipartiteGraph, opts: &VerifyOptions) -> Result<CheckResult> {
    let c = Check::Arrays;
    let pair = match intersection_arrays_with(graph, ArrayMode::auto(graph.order(), opts.seed)) {
        Ok(pair) => pair,
        Err(GraphError::NotDistanceBiregular(w)) => {
            return Ok(CheckResult::fail(c, "not distance-biregular").witness(&*w));
        }
        Err(GraphError::Disconnected) => return Ok(CheckResult::fail(c, "graph is disconnected")),
        Err(e) => return Err(e.into()),
    };
    let parity: Vec<_> = parity_identities(&pair.iota, &pair.iota_prime).into_iter().filter(|p| !p.holds).collect();
    // Predictions apply once the equivalence holds.
    let main = theorem_main_check(graph, &inst.g, &inst.n);
    let predicted = match (main.passes(), &main.nicely_affine, main.hypotheses.r) {
        (true, Some(na), Some(r)) => {
            let k = graph.degree(graph.n_b());
            Some(predicted_arrays(k, k / na.mu, r)?)
        }
        _ => None,
    };
    let matches = predicted.as_ref().map(|p| p.iota.as_ref() == Some(&pair.iota) && p.iota_prime.as_ref() == Some(&pair.iota_prime));
    let ok = parity.is_empty() && matches != Some(false);
    let mut summary = format!("iota = {}, iota' = {}", pair.iota, pair.iota_prime);
    match matches {
        Some(true) => summary.push_str(", as predicted"),
        Some(false) => summary.push_str(", differs from the prediction"),
        None => {}
    }
    if !parity.is_empty() {
        let _ = write!(summary, ", {} parity identities fail", parity.len());
    }
    let res = CheckResult::status_if(c, ok, summary);
    let res = if ok { res } else { res.witness(json!({ "parity_failures": parity, "predicted": predicted })) };
    Ok(res.details(json!({
        "iota": pair.iota,
        "iota_prime": pair.iota_prime,
        "predicted": predicted,
    })))
}

fn regular(inst: &Instance) -> CheckResult {
    let c = Check::RegularAnalysis;
    match regular_analysis(&inst.design, &inst.g, &inst.n) {
        Ok(rep) => {
            let ok = rep.round_trip_ok();
            let summary = if ok {
                format!(
                    "N regular and elementary abelian of order {}, {} subgroups, reconstruction reproduces the orbit",
                    rep.n_order,
                    rep.subgroups.len()
                )
            } else if !rep.regular {
                format!("N is not regular on points (point stabiliser of order {})", rep.stabilizer_order)
            } else {
                "reconstruction does not reproduce the design".to_string()
            };
            let res = CheckResult::status_if(c, ok, summary);
            let res = if ok {
                res
            } else {
                res.witness(json!({
                    "regular": rep.regular,
                    "subgroups_closed": rep.subgroups_closed,
                    "exponent_p": rep.exponent_p,
                    "order_bound": rep.order_bound,
                    "abelian": rep.abelian,
                    "elementary_abelian": rep.elementary_abelian,
                    "orbit_matches": rep.orbit_matches,
                }))
            };
            res.details(&rep)
        }
        Err(AffineError::Precondition(reason)) => CheckResult::not_applicable(c, reason),
        Err(e) => CheckResult::fail(c, e.to_string()).witness(e.to_string()),
    }
}

fn r2(inst: &Instance, graph: &BipartiteGraph, opts: &VerifyOptions) -> Result<CheckResult> {
    let c = Check::R2Analysis;
    match is_starlike(graph, &inst.n)? {
        Some(2) => {}
        other => {
            let why = match other {
                Some(r) => format!("N-quotient is K_1,{r}, not K_1,2"),
                None => "not starlike".to_string(),
            };
            return Ok(CheckResult::not_applicable(c, why));
        }
    }
    let Some(diameter) = graph.diameter() else {
        return Ok(CheckResult::not_applicable(c, "graph is disconnected"));
    };
    let s = match opts.s {
        Some(s) => Some(s),
        None => (2..=diameter)
            .rev()
            .find(|&s| local_distance_transitivity(graph.graph(), &inst.g, s).is_ok_and(|d| d.holds)),
    };
    let Some(s) = s else {
        return Ok(CheckResult::not_applicable(c, "not locally (G,2)-distance transitive"));
    };
    Ok(match r2_analysis(graph, &inst.g, &inst.n, s) {
        Ok(rep) => {
            let res = CheckResult::status_if(c, rep.consistent, format!("s = {s}: {}", serde_json::to_string(&rep.shape)?));
            let res = if rep.consistent { res } else { res.witness(&rep) };
            res.details(&rep)
        }
        Err(GraphError::Precondition(reason)) => CheckResult::not_applicable(c, reason),
        Err(e) => return Err(e.into()),
    })
}
