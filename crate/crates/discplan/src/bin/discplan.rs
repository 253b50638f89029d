use clap::{Parser, Subcommand, ValueEnum};
use discplan::compiler::{approximate_arcs, compile, read_instance, render_svg, write_instance, ArcApproxParams, Payload, Variant};
use discplan::cspace::lemmas::{self, CheckParams, Finding};
use discplan::cspace::{radii, read_schedule, validate_schedule, CspaceError};
use discplan::equivalence::{equivalence_report, NetworkError, ReportOptions};
use discplan::layout::{cell_plan, embed, read_layout, write_layout, CellPlan};
use discplan::ncl::{decide, first_valid_state, read_graph, validate_graph, write_graph, ConstraintGraph, NclQuery, NclState};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "discplan", about = "NCL to disc-robot motion planning compiler and gadget checker")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Worker threads; searches are single threaded, so only 1 is used.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a constraint graph (and its orientation, if given).
    Validate { graph: PathBuf },
    /// Draw a graph on the grid.
    Embed {
        graph: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build a motion planning instance from a graph with an orientation.
    Compile {
        graph: PathBuf,
        /// Layout file; embedded with `--seed` when absent.
        #[arg(long)]
        layout: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "multi-to-multi")]
        variant: String,
        /// File of `orient` lines giving the goal (multi-to-multi).
        #[arg(long)]
        goal: Option<PathBuf>,
        /// Edge whose robot must flip (single-target variants).
        #[arg(long)]
        edge: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Draw an instance as SVG.
    Render {
        instance: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Replace circular arcs by polygonal chains.
    Approximate {
        instance: PathBuf,
        #[arg(long, default_value_t = 1e-3)]
        epsilon: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Certify a gadget contract.
    VerifyGadget {
        kind: GadgetArg,
        /// Lattice step; 0.05 for AND and OR, 0.02 for connectors.
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// Certify a component threshold.
    VerifyComponent {
        kind: ComponentArg,
        #[arg(long, default_value_t = lemmas::COMPONENT_DELTA)]
        delta: f64,
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// Decide an NCL reachability query.
    SolveNcl {
        graph: PathBuf,
        #[arg(long, value_enum)]
        query: QueryArg,
        /// Start state file (`orient` lines); defaults to the graph's own.
        #[arg(long)]
        from: Option<PathBuf>,
        /// Goal state file (`orient` lines).
        #[arg(long)]
        to: Option<PathBuf>,
        /// Source edge as `edge:node`.
        #[arg(long)]
        from_edge: Option<String>,
        /// Goal edge as `edge:node`.
        #[arg(long)]
        to_edge: Option<String>,
    },
    /// Cross-check the contract network against the NCL search.
    CheckEquivalence {
        graph: PathBuf,
        #[arg(long)]
        layout: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Also run the gadget checks backing each contract.
        #[arg(long)]
        certify: bool,
        /// Run those checks on arcs approximated to this tolerance.
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// Check a schedule against an instance.
    ValidateSchedule {
        instance: PathBuf,
        schedule: PathBuf,
        #[arg(long, default_value_t = lemmas::SCHEDULE_DT)]
        dt: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GadgetArg {
    And,
    Or,
    Connector,
}

#[derive(Clone, Copy, ValueEnum)]
enum ComponentArg {
    Perpendicular,
    Parallel,
    Chain,
}

#[derive(Clone, Copy, ValueEnum)]
enum QueryArg {
    StateToState,
    StateToEdge,
    EdgeToEdge,
    EdgeToState,
}

/// Exit status: 2 for bad input, 3 for an exhausted budget.
enum Fail {
    Input(String),
    Budget(String),
}

impl From<CspaceError> for Fail {
    fn from(e: CspaceError) -> Self {
        match e {
            CspaceError::Budget(_) => Fail::Budget(e.to_string()),
            _ => Fail::Input(e.to_string()),
        }
    }
}

impl From<NetworkError> for Fail {
    fn from(e: NetworkError) -> Self {
        match e {
            NetworkError::Budget(_) | NetworkError::Gadget(CspaceError::Budget(_)) => Fail::Budget(e.to_string()),
            _ => Fail::Input(e.to_string()),
        }
    }
}

fn input<E: std::fmt::Display>(what: &str) -> impl FnOnce(E) -> Fail + '_ {
    move |e| Fail::Input(format!("{what}: {e}"))
}

fn read(p: &Path) -> Result<String, Fail> {
    std::fs::read_to_string(p).map_err(input(&p.display().to_string()))
}

/// Write through a sibling temp file so readers never see half a file.
fn emit(out: Option<&Path>, text: &str) -> Result<(), Fail> {
    let Some(p) = out else {
        print!("{text}");
        return Ok(());
    };
    let tmp = p.with_extension("tmp~");
    std::fs::write(&tmp, text).and_then(|_| std::fs::rename(&tmp, p)).map_err(input(&p.display().to_string()))
}

fn load_graph(p: &Path) -> Result<(ConstraintGraph, Option<NclState>), Fail> {
    let (g, s) = read_graph(&read(p)?).map_err(input(&p.display().to_string()))?;
    let v = validate_graph(&g);
    if !v.is_empty() {
        let names: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        return Err(Fail::Input(format!("{}: {}", p.display(), names.join("; "))));
    }
    Ok((g, s))
}

fn load_state(p: &Path) -> Result<NclState, Fail> {
    let (_, s) = read_graph(&read(p)?).map_err(input(&p.display().to_string()))?;
    s.ok_or_else(|| Fail::Input(format!("{}: no `orient` lines", p.display())))
}

fn edge_arg(s: Option<&str>, flag: &str) -> Result<(String, String), Fail> {
    let s = s.ok_or_else(|| Fail::Input(format!("{flag} is required")))?;
    s.split_once(':').map(|(a, b)| (a.to_string(), b.to_string())).ok_or_else(|| Fail::Input(format!("{flag} must be `edge:node`")))
}

fn plan_for(g: &ConstraintGraph, layout: Option<&Path>, seed: u64) -> Result<CellPlan, Fail> {
    let l = match layout {
        Some(p) => read_layout(&read(p)?).map_err(input(&p.display().to_string()))?,
        None => embed(g, seed).map_err(input("embed"))?,
    };
    cell_plan(g, &l).map_err(|v| Fail::Input(format!("layout: {}", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; "))))
}

fn positive(x: f64, flag: &str) -> Result<f64, Fail> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(Fail::Input(format!("{flag} must be positive, got {x}")))
    }
}

fn params(base: CheckParams, delta: f64, epsilon: Option<f64>) -> Result<CheckParams, Fail> {
    let epsilon = epsilon.map(|e| positive(e, "--epsilon")).transpose()?;
    Ok(CheckParams { delta: positive(delta, "--delta")?, epsilon, ..base })
}

fn findings(fs: &[Finding]) -> bool {
    for f in fs {
        println!("{f}");
    }
    fs.iter().all(|f| f.pass)
}

fn run(cli: Cli) -> Result<bool, Fail> {
    if cli.threads == 0 {
        return Err(Fail::Input("--threads must be at least 1".into()));
    }
    match cli.cmd {
        Cmd::Validate { graph } => {
            let (g, s) = read_graph(&read(&graph)?).map_err(input(&graph.display().to_string()))?;
            let mut bad: Vec<String> = validate_graph(&g).iter().map(|v| v.to_string()).collect();
            if let Some(s) = &s {
                match (discplan::ncl::is_valid_state(&g, s), discplan::ncl::is_protected_safe(&g, s)) {
                    (Ok(true), Ok(true)) => {}
                    (Err(e), _) | (_, Err(e)) => bad.push(e.to_string()),
                    _ => bad.push("orientation is not valid and protected-safe".into()),
                }
            }
            for b in &bad {
                println!("{b}");
            }
            Ok(bad.is_empty())
        }
        Cmd::Embed { graph, seed, output } => {
            let (g, _) = load_graph(&graph)?;
            let l = embed(&g, seed).map_err(input("embed"))?;
            emit(output.as_deref(), &write_layout(&l))?;
            Ok(true)
        }
        Cmd::Compile { graph, layout, seed, variant, goal, edge, output } => {
            let (g, s) = load_graph(&graph)?;
            let variant = Variant::parse(&variant).ok_or_else(|| Fail::Input(format!("unknown variant `{variant}`")))?;
            let init = match s {
                Some(s) => s,
                None => first_valid_state(&g).map_err(input("graph"))?.ok_or_else(|| Fail::Input("graph has no valid state".into()))?,
            };
            let plan = plan_for(&g, layout.as_deref(), seed)?;
            let payload = match (variant, goal, edge) {
                (Variant::MultiToMulti, Some(p), _) => Payload::Goal(load_state(&p)?),
                (Variant::MultiToMulti, None, _) => Payload::Goal(init.clone()),
                (_, _, Some(e)) => Payload::Edge(e),
                _ => return Err(Fail::Input("single-target variants need --edge".into())),
            };
            let c = compile(&g, &plan, &init, variant, &payload).map_err(input("compile"))?;
            emit(output.as_deref(), &write_instance(&c.instance))?;
            Ok(true)
        }
        Cmd::Render { instance, output } => {
            let inst = read_instance(&read(&instance)?).map_err(input(&instance.display().to_string()))?;
            emit(output.as_deref(), &render_svg(&inst))?;
            Ok(true)
        }
        Cmd::Approximate { instance, epsilon, output } => {
            let inst = read_instance(&read(&instance)?).map_err(input(&instance.display().to_string()))?;
            let a = approximate_arcs(&inst, ArcApproxParams { epsilon }).map_err(input("approximate"))?;
            emit(output.as_deref(), &write_instance(&a))?;
            Ok(true)
        }
        Cmd::VerifyGadget { kind, delta, epsilon } => {
            let base = if matches!(kind, GadgetArg::Connector) { CheckParams::component() } else { CheckParams::closeup() };
            let p = params(base, delta.unwrap_or(base.delta), epsilon)?;
            let fs = match kind {
                GadgetArg::And => lemmas::check_and(&p)?,
                GadgetArg::Or => lemmas::check_or(&p)?,
                GadgetArg::Connector => lemmas::check_connectors(&p)?,
            };
            Ok(findings(&fs))
        }
        Cmd::VerifyComponent { kind, delta, epsilon } => {
            let p = params(CheckParams::component(), delta, epsilon)?;
            let t = lemmas::tangency_thresholds(p.epsilon).map_err(input("tangency"))?;
            let fs = match kind {
                ComponentArg::Perpendicular => {
                    println!("threshold {:.10} closed {:.10}", t.perpendicular, t.perpendicular_closed);
                    lemmas::check_perpendicular(&p)?
                }
                ComponentArg::Parallel => {
                    println!("threshold {:.10} closed {:.10}", t.parallel, t.parallel_closed);
                    lemmas::check_parallel(&p)?
                }
                ComponentArg::Chain => lemmas::check_chain(&p)?,
            };
            Ok(findings(&fs))
        }
        Cmd::SolveNcl { graph, query, from, to, from_edge, to_edge } => {
            let (g, s) = load_graph(&graph)?;
            let start = || -> Result<NclState, Fail> {
                match &from {
                    Some(p) => load_state(p),
                    None => s.clone().ok_or_else(|| Fail::Input("no start state: pass --from or add `orient` lines".into())),
                }
            };
            let goal = || to.as_deref().map(load_state).unwrap_or_else(|| Err(Fail::Input("--to is required".into())));
            let q = match query {
                QueryArg::StateToState => NclQuery::StateToState { from: start()?, to: goal()? },
                QueryArg::StateToEdge => {
                    let (edge, toward) = edge_arg(to_edge.as_deref(), "--to-edge")?;
                    NclQuery::StateToEdge { from: start()?, edge, toward }
                }
                QueryArg::EdgeToEdge => NclQuery::EdgeToEdge {
                    from: edge_arg(from_edge.as_deref(), "--from-edge")?,
                    to: edge_arg(to_edge.as_deref(), "--to-edge")?,
                },
                QueryArg::EdgeToState => NclQuery::EdgeToState { from: edge_arg(from_edge.as_deref(), "--from-edge")?, to: goal()? },
            };
            let (found, w) = decide(&g, &q).map_err(input("query"))?;
            println!("{}", if found { "reachable" } else { "unreachable" });
            if let Some(w) = w {
                print!("{}", write_graph(&ConstraintGraph::default(), Some(&w.start)).replace("orient", "start"));
                for f in &w.flips {
                    println!("flip {f}");
                }
            }
            Ok(found)
        }
        Cmd::CheckEquivalence { graph, layout, seed, trials, certify, epsilon } => {
            let (g, s) = load_graph(&graph)?;
            let plan = plan_for(&g, layout.as_deref(), seed)?;
            let epsilon = epsilon.map(|e| positive(e, "--epsilon")).transpose()?;
            let opts = ReportOptions { trials, seed, certify, epsilon, initial: s, ..Default::default() };
            let r = equivalence_report(&g, &plan, &opts)?;
            print!("{r}");
            Ok(r.pass())
        }
        Cmd::ValidateSchedule { instance, schedule, dt } => {
            let inst = read_instance(&read(&instance)?).map_err(input(&instance.display().to_string()))?;
            let s = read_schedule(&read(&schedule)?).map_err(input(&schedule.display().to_string()))?;
            match validate_schedule(&inst.domain, &radii(&inst), &s, positive(dt, "--dt")?, 0.0) {
                Ok(r) => {
                    println!("valid samples {} certified {}", r.samples, r.certified);
                    Ok(true)
                }
                Err(e @ discplan::cspace::ScheduleError::Malformed(_)) => Err(Fail::Input(e.to_string())),
                Err(e) => {
                    println!("invalid {e}");
                    Ok(false)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Fail::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Fail::Budget(m)) => {
            eprintln!("budget: {m}");
            ExitCode::from(3)
        }
    }
}
