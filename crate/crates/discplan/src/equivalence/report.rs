use super::{abstract_reachable, build_network, terminal_states, ContractKind, ContractNetwork, NetworkError};
use crate::cspace::lemmas::{check_and, check_connectors, check_or, CheckParams, Finding};
use crate::layout::{is_k4, CellPlan};
use crate::ncl::{decide, first_valid_state, is_protected_safe, is_valid_state, reachable_set, ConstraintGraph, NclQuery, NclState};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;

/// Full networks with at most this many variables are also searched
/// without collapsing connectors.
const TRANSPARENCY_VARS: usize = 48;

#[derive(Clone, Debug)]
pub struct ReportOptions {
    pub trials: usize,
    pub seed: u64,
    pub budget: usize,
    /// Also run the geometric gadget checks backing each contract kind.
    pub certify: bool,
    /// Arc approximation applied to the geometry of those checks.
    pub epsilon: Option<f64>,
    /// Start state; the first valid one when absent.
    pub initial: Option<NclState>,
    /// Break the AND contracts before comparing (for mutation tests).
    pub corrupt_and: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { trials: 200, seed: 0, budget: 2_000_000, certify: false, epsilon: None, initial: None, corrupt_and: false }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct EquivalenceReport {
    pub findings: Vec<Finding>,
}

impl EquivalenceReport {
    pub fn pass(&self) -> bool {
        self.findings.iter().all(|f| f.pass)
    }
}

impl fmt::Display for EquivalenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in &self.findings {
            writeln!(f, "{x}")?;
        }
        Ok(())
    }
}

fn structure(g: &ConstraintGraph, net: &ContractNetwork) -> Finding {
    let mut bad = Vec::new();
    for e in &g.edges {
        match net.chains.get(&e.id) {
            None => bad.push(format!("edge {} has no chain", e.id)),
            Some(c) if c.is_empty() => bad.push(format!("edge {} has an empty chain", e.id)),
            _ => {}
        }
    }
    for (v, var) in net.vars.iter().enumerate() {
        let users = net.contracts.iter().filter(|c| c.ports.contains(&v)).count();
        if users != 2 || var.cells[0] == var.cells[1] {
            bad.push(format!("variable {v} of edge {} is shared by {users} cells", var.edge));
        }
    }
    for c in &net.contracts {
        let want = if c.kind == ContractKind::Connector { 2 } else { 3 };
        if c.ports.len() != want {
            bad.push(format!("cell {:?} has {} ports", c.cell, c.ports.len()));
        }
    }
    let detail = if bad.is_empty() {
        format!("{} cells, {} edge robots, {} edges", net.contracts.len(), net.vars.len(), net.chains.len())
    } else {
        bad.join("; ")
    };
    Finding::new("structure", bad.is_empty(), detail)
}

fn random_valid(g: &ConstraintGraph, rng: &mut ChaCha8Rng, fallback: &[NclState]) -> NclState {
    for _ in 0..1000 {
        let mut s = NclState::default();
        for e in &g.edges {
            s.orient(&e.id, if rng.gen() { &e.a } else { &e.b });
        }
        if is_valid_state(g, &s) == Ok(true) && is_protected_safe(g, &s) == Ok(true) {
            return s;
        }
    }
    fallback.choose(rng).expect("reachable set is never empty").clone()
}

/// Every valid, protected-safe orientation of a small graph.
fn all_valid(g: &ConstraintGraph) -> Vec<NclState> {
    (0..1u32 << g.edges.len())
        .map(|m| {
            let mut s = NclState::default();
            for (i, e) in g.edges.iter().enumerate() {
                s.orient(&e.id, if m >> i & 1 == 1 { &e.b } else { &e.a });
            }
            s
        })
        .filter(|s| is_valid_state(g, s) == Ok(true) && is_protected_safe(g, s) == Ok(true))
        .collect()
}

/// Compare the NCL machine with the contract network built from `plan`.
pub fn equivalence_report(g: &ConstraintGraph, plan: &CellPlan, opts: &ReportOptions) -> Result<EquivalenceReport, NetworkError> {
    let mut findings = Vec::new();
    if g.edges.is_empty() {
        return Ok(EquivalenceReport { findings });
    }
    let mut full = build_network(g, plan)?;
    if opts.corrupt_and {
        full.corrupt_and_out();
    }
    findings.push(structure(g, &full));
    let net = full.collapsed();
    let Some(init) = opts.initial.clone().or(first_valid_state(g)?) else {
        findings.push(Finding::new("bisimulation", false, "graph has no valid state".into()));
        return Ok(EquivalenceReport { findings });
    };
    let ncl_set = {
        let mut s = reachable_set(g, &init)?;
        s.sort();
        s
    };
    let abs_set = terminal_states(g, &net, net.encode(g, &init)?, opts.budget)?;

    if full.vars.len() <= TRANSPARENCY_VARS {
        let wide = terminal_states(g, &full, full.encode(g, &init)?, opts.budget)?;
        let ok = wide == abs_set;
        findings.push(Finding::new(
            "transparency",
            ok,
            format!("{} terminal states with connectors, {} without", wide.len(), abs_set.len()),
        ));
    }

    let extra: Vec<_> = abs_set.iter().filter(|s| ncl_set.binary_search(s).is_err()).collect();
    let missing = ncl_set.iter().filter(|s| abs_set.binary_search(s).is_err()).count();
    findings.push(Finding::new(
        "bisimulation",
        extra.is_empty() && missing == 0,
        format!("{} NCL states, {} network states, {} extra, {missing} missing", ncl_set.len(), abs_set.len(), extra.len()),
    ));

    // queries run on the full network so connectors take part
    let mut pairs = Vec::new();
    let exhaustive = is_k4(g);
    if exhaustive {
        let all = all_valid(g);
        for s in &all {
            for t in &all {
                pairs.push((s.clone(), t.clone()));
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        for _ in 0..opts.trials {
            let s = ncl_set.choose(&mut rng).expect("nonempty").clone();
            let t = if rng.gen_bool(0.5) { ncl_set.choose(&mut rng).expect("nonempty").clone() } else { random_valid(g, &mut rng, &ncl_set) };
            pairs.push((s, t));
        }
    }
    let mut disagree = 0;
    let mut yes = 0;
    let mut first = None;
    for (s, t) in &pairs {
        let (want, _) = decide(g, &NclQuery::StateToState { from: s.clone(), to: t.clone() })?;
        let goal = full.encode(g, t)?;
        let (got, _) = abstract_reachable(&full, full.encode(g, s)?, |a| a == goal, opts.budget)?;
        yes += usize::from(want);
        if want != got {
            disagree += 1;
            first.get_or_insert_with(|| format!("; first: NCL says {want}, network says {got}"));
        }
    }
    findings.push(Finding::new(
        "queries",
        disagree == 0,
        format!(
            "{} {} queries ({yes} reachable), {disagree} disagree{}",
            pairs.len(),
            if exhaustive { "exhaustive" } else { "random" },
            first.unwrap_or_default()
        ),
    ));

    if opts.certify {
        let close = CheckParams { epsilon: opts.epsilon, ..CheckParams::closeup() };
        let comp = CheckParams { epsilon: opts.epsilon, ..CheckParams::component() };
        let has = |k: ContractKind| full.contracts.iter().any(|c| c.kind == k);
        let mut kinds: Vec<(&str, Vec<Finding>)> = Vec::new();
        if has(ContractKind::And) {
            kinds.push(("certify.and", check_and(&close)?));
        }
        if has(ContractKind::ProtectedOr) {
            kinds.push(("certify.or", check_or(&close)?));
        }
        if has(ContractKind::Connector) {
            kinds.push(("certify.connector", check_connectors(&comp)?));
        }
        for (id, fs) in kinds {
            let failed: Vec<&str> = fs.iter().filter(|f| !f.pass).map(|f| f.id.as_str()).collect();
            let detail = if failed.is_empty() { format!("{} gadget checks", fs.len()) } else { format!("failed: {}", failed.join(", ")) };
            findings.push(Finding::new(id, failed.is_empty(), detail));
        }
    }
    Ok(EquivalenceReport { findings })
}
