//! Command-line surface for the transframe library.
//!
//! Verdict-bearing output is JSON on stdout (byte-stable for fixed inputs,
//! seeds, and budgets); human-oriented summaries and timings go to stderr.
//! Exit codes: 0 verdict-pass, 1 verdict-fail, 2 input error, 3 operation
//! needs a rooted frame, 4 budget exhausted.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use transframe::budget::Budget;
use transframe::dot::frame_to_dot;
use transframe::families::{
    generate_corpus, make_h, verify_h_properties, CorpusSpec, FamiliesError, FormulaVerdict,
};
use transframe::formula::{
    frame_valid, mk_b, mk_wid, mk_wid_bullet, mk_wid_plus, parse as parse_formula, point_valid,
    FormulaError, FrameFormulaSpec, ModalFormula, Validity,
};
use transframe::frame::{Frame, FrameError};
use transframe::json::{FrameDoc, ManifestDoc, ReductionDoc, TreeDoc};
use transframe::reduction::{
    audit_sequence, find_reduction, AuditMode, AuditVerdict, ReductionError,
};
use transframe::tree::{rt, srt, tree_embed, OmegaTree, TreeError};

#[derive(Parser)]
#[command(
    name = "transframe",
    about = "Analyze finite transitive frames: conditions, formulas, reductions, trees",
    version
)]
struct Cli {
    /// Cap the worker thread count for parallel checks.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report structural measures of a frame.
    Analyze(AnalyzeArgs),
    /// Check a formula's validity in a frame.
    Check(CheckArgs),
    /// Print the frame formula of a rooted frame.
    FrameFormula(FrameFormulaArgs),
    /// Search for a reduction of one frame onto another.
    Reduce(ReduceArgs),
    /// Audit a corpus manifest for (backward) irreducibility.
    Audit(AuditArgs),
    /// Decide tree embedding between two frames (via rt/srt) or tree files.
    Embed(EmbedArgs),
    /// Write the n-th member of the H family as frame JSON.
    GenH(GenHArgs),
    /// Generate a random corpus directory from a spec file.
    GenCorpus(GenCorpusArgs),
    /// Export a frame as Graphviz DOT.
    Dot(DotArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Frame JSON file.
    frame: PathBuf,
    /// Close the relation transitively instead of validating it.
    #[arg(long)]
    close: bool,
}

#[derive(Args)]
struct CheckArgs {
    /// Frame JSON file.
    frame: PathBuf,
    /// Formula text (exactly one of this and the family flags).
    formula: Option<String>,
    /// Check the depth formula B_n.
    #[arg(long, value_name = "N", conflicts_with_all = ["wid", "widplus", "widbullet", "formula"])]
    b: Option<u32>,
    /// Check the width formula Wid_n.
    #[arg(long, value_name = "N", conflicts_with_all = ["widplus", "widbullet", "formula"])]
    wid: Option<u32>,
    /// Check the weak-width formula Wid_n⁺.
    #[arg(long, value_name = "N", conflicts_with_all = ["widbullet", "formula"])]
    widplus: Option<u32>,
    /// Check the irreflexive-antichain formula Wid_n•.
    #[arg(long, value_name = "N", conflicts_with = "formula")]
    widbullet: Option<u32>,
    /// Check at this point only instead of at every point.
    #[arg(long, value_name = "POINT")]
    point: Option<String>,
    /// Close the relation transitively instead of validating it.
    #[arg(long)]
    close: bool,
}

#[derive(Args)]
struct FrameFormulaArgs {
    /// Frame JSON file (must be rooted).
    frame: PathBuf,
    /// Close the relation transitively instead of validating it.
    #[arg(long)]
    close: bool,
}

#[derive(Args)]
struct ReduceArgs {
    /// Source frame JSON file (the frame being mapped).
    source: PathBuf,
    /// Target frame JSON file (the intended image).
    target: PathBuf,
    /// Close the relations transitively instead of validating them.
    #[arg(long)]
    close: bool,
}

#[derive(Args)]
struct AuditArgs {
    /// Corpus manifest JSON file (frame files resolve next to it).
    manifest: PathBuf,
    /// backward: only later-onto-earlier pairs; full: all ordered pairs.
    #[arg(long, value_parser = ["backward", "full"], default_value = "backward")]
    mode: String,
}

#[derive(Args)]
struct EmbedArgs {
    /// First frame or tree file (the candidate smaller object).
    a: PathBuf,
    /// Second frame or tree file (the candidate larger object).
    b: PathBuf,
    /// Inputs are frames; compare their representing trees rt(F).
    #[arg(long, conflicts_with = "srt")]
    rt: bool,
    /// Inputs are frames; compare their rooted representing trees srt(F).
    #[arg(long)]
    srt: bool,
    /// Close the relations transitively instead of validating them.
    #[arg(long)]
    close: bool,
}

#[derive(Args)]
struct GenHArgs {
    /// Family index n.
    n: u32,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also verify and report the family properties on stderr.
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct GenCorpusArgs {
    /// Corpus spec JSON file.
    spec: PathBuf,
    /// Directory for the frame files and manifest.
    #[arg(long, value_name = "DIR")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct DotArgs {
    /// Frame JSON file.
    frame: PathBuf,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Close the relation transitively instead of validating it.
    #[arg(long)]
    close: bool,
}

/// CLI failure with its exit code already decided.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Failure {
        Failure { code: 2, message: message.into() }
    }
}

impl From<FrameError> for Failure {
    fn from(e: FrameError) -> Failure {
        let code = if e == FrameError::NotRooted { 3 } else { 2 };
        Failure { code, message: e.to_string() }
    }
}

impl From<FormulaError> for Failure {
    fn from(e: FormulaError) -> Failure {
        let code = match e {
            FormulaError::BudgetExceeded { .. } => 4,
            FormulaError::NotRooted => 3,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<TreeError> for Failure {
    fn from(e: TreeError) -> Failure {
        let code = if e == TreeError::NotRooted { 3 } else { 2 };
        Failure { code, message: e.to_string() }
    }
}

impl From<ReductionError> for Failure {
    fn from(e: ReductionError) -> Failure {
        match e {
            ReductionError::BudgetExceeded { limit } => Failure {
                code: 4,
                message: format!("search budget of {limit} node expansions exhausted"),
            },
            ReductionError::Frame(e) => e.into(),
            ReductionError::Formula(e) => e.into(),
            other => Failure::input(other.to_string()),
        }
    }
}

impl From<FamiliesError> for Failure {
    fn from(e: FamiliesError) -> Failure {
        match e {
            FamiliesError::RejectionBudgetExceeded { .. } => {
                Failure { code: 4, message: e.to_string() }
            }
            FamiliesError::Frame(e) => e.into(),
            FamiliesError::Formula(e) => e.into(),
        }
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))
}

fn read_frame(path: &Path, close: bool) -> Result<Frame, Failure> {
    let text = read_text(path)?;
    let doc: FrameDoc = serde_json::from_str(&text)
        .map_err(|e| Failure::input(format!("{} is not frame JSON: {e}", path.display())))?;
    Ok(doc.to_frame(close)?)
}

fn write_artifact(out: &Option<PathBuf>, content: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{}", content.trim_end_matches('\n'));
            Ok(())
        }
    }
}

fn emit<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("output types serialize"));
}

#[derive(Serialize)]
struct BudgetEcho {
    enumeration: u64,
    search_nodes: u64,
}

impl BudgetEcho {
    fn of(b: &Budget) -> BudgetEcho {
        BudgetEcho { enumeration: b.enumeration, search_nodes: b.search_nodes }
    }
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct ClusterCensus {
    total: usize,
    degenerate: usize,
    nondegenerate: usize,
    max_size: u32,
}

#[derive(Serialize)]
struct AnalyzeOut {
    command: &'static str,
    points: usize,
    rank: u32,
    roots: Vec<String>,
    /// Maximum antichain size; null when the frame has no root.
    width: Option<u32>,
    /// Weak width at each root.
    weak_width_at_roots: BTreeMap<String, u32>,
    irr_antichain_max: u32,
    clusters: ClusterCensus,
    /// Is the inverse of the skeleton's reflexive closure a tree?
    skeleton_inverse_tree: bool,
    /// Bracket text of rt when defined.
    rt: Option<String>,
    /// Bracket text of srt when defined.
    srt: Option<String>,
}

fn cmd_analyze(args: &AnalyzeArgs) -> Result<u8, Failure> {
    let frame = read_frame(&args.frame, args.close)?;
    let sk = frame.skeleton();
    let roots = frame.roots();
    let degenerate = sk.clusters.iter().filter(|c| c.degenerate).count();
    let out = AnalyzeOut {
        command: "analyze",
        points: frame.len(),
        rank: frame.rank(),
        roots: frame.names_of(&roots),
        width: (!roots.is_empty()).then(|| frame.width()),
        weak_width_at_roots: roots
            .iter()
            .map(|&r| (frame.name(r).to_string(), frame.weak_width_at(r)))
            .collect(),
        irr_antichain_max: frame.irr_antichain_max(),
        clusters: ClusterCensus {
            total: sk.len(),
            degenerate,
            nondegenerate: sk.len() - degenerate,
            max_size: sk.clusters.iter().map(|c| c.size()).max().unwrap_or(0),
        },
        skeleton_inverse_tree: rt(&frame).is_ok(),
        rt: rt(&frame).ok().map(|t| t.to_string()),
        srt: srt(&frame).ok().map(|t| t.to_string()),
    };
    emit(&out);
    eprintln!(
        "analyze {}: {} points, rank {}, {} roots",
        args.frame.display(),
        out.points,
        out.rank,
        out.roots.len()
    );
    Ok(0)
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct CountermodelOut {
    point: String,
    valuation: BTreeMap<String, Vec<String>>,
}

#[derive(Serialize)]
struct CheckOut {
    command: &'static str,
    formula: String,
    at: Option<String>,
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    countermodel: Option<CountermodelOut>,
    budget: BudgetEcho,
}

fn chosen_formula(args: &CheckArgs) -> Result<ModalFormula, Failure> {
    let picks = [&args.b, &args.wid, &args.widplus, &args.widbullet];
    let flags = picks.iter().filter(|p| p.is_some()).count();
    if flags + args.formula.iter().count() != 1 {
        return Err(Failure::input(
            "give exactly one formula: text, --b N, --wid N, --widplus N, or --widbullet N",
        ));
    }
    Ok(match (&args.formula, args.b, args.wid, args.widplus, args.widbullet) {
        (Some(text), ..) => parse_formula(text)?,
        (_, Some(n), ..) => mk_b(n)?,
        (_, _, Some(n), ..) => mk_wid(n)?,
        (_, _, _, Some(n), _) => mk_wid_plus(n)?,
        (_, _, _, _, Some(n)) => mk_wid_bullet(n)?,
        _ => unreachable!("count checked above"),
    })
}

fn cmd_check(args: &CheckArgs, budget: &Budget) -> Result<u8, Failure> {
    let frame = read_frame(&args.frame, args.close)?;
    let formula = chosen_formula(args)?;
    let validity = match &args.point {
        Some(name) => point_valid(&frame, frame.point(name)?, &formula, budget)?,
        None => frame_valid(&frame, &formula, budget)?,
    };
    let countermodel = match &validity {
        Validity::Valid => None,
        Validity::Invalid(cm) => Some(CountermodelOut {
            point: frame.name(cm.point).to_string(),
            valuation: cm.valuation.to_names(&frame),
        }),
    };
    let out = CheckOut {
        command: "check",
        formula: formula.to_string(),
        at: args.point.clone(),
        valid: validity.is_valid(),
        countermodel,
        budget: BudgetEcho::of(budget),
    };
    emit(&out);
    eprintln!(
        "check {}: {} is {}",
        args.frame.display(),
        out.formula,
        if out.valid { "valid" } else { "invalid" }
    );
    Ok(if out.valid { 0 } else { 1 })
}

// ---------------------------------------------------------------------------
// frame-formula
// ---------------------------------------------------------------------------

fn cmd_frame_formula(args: &FrameFormulaArgs) -> Result<u8, Failure> {
    let frame = read_frame(&args.frame, args.close)?;
    let spec = FrameFormulaSpec::canonical(frame)?;
    println!("{}", spec.formula());
    eprintln!(
        "frame-formula {}: ordering {:?}",
        args.frame.display(),
        spec.frame().names_of(spec.ordering())
    );
    Ok(0)
}

// ---------------------------------------------------------------------------
// reduce
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct ReduceOut {
    command: &'static str,
    source: String,
    target: String,
    reduction: Option<ReductionDoc>,
    budget: BudgetEcho,
}

fn cmd_reduce(args: &ReduceArgs, budget: &Budget) -> Result<u8, Failure> {
    let source = read_frame(&args.source, args.close)?;
    let target = read_frame(&args.target, args.close)?;
    let found = find_reduction(&source, &target, budget)?;
    let out = ReduceOut {
        command: "reduce",
        source: args.source.display().to_string(),
        target: args.target.display().to_string(),
        reduction: found.as_ref().map(ReductionDoc::from_map),
        budget: BudgetEcho::of(budget),
    };
    emit(&out);
    match &out.reduction {
        Some(_) => {
            eprintln!("reduce: reduction found");
            Ok(0)
        }
        None => {
            eprintln!("reduce: no reduction");
            Ok(1)
        }
    }
}

// ---------------------------------------------------------------------------
// audit
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct AuditOut {
    command: &'static str,
    mode: String,
    frames: usize,
    verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<ReductionDoc>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    inconclusive: Vec<(usize, usize)>,
    budget: BudgetEcho,
}

fn cmd_audit(args: &AuditArgs, budget: &Budget) -> Result<u8, Failure> {
    let text = read_text(&args.manifest)?;
    let manifest: ManifestDoc = serde_json::from_str(&text)
        .map_err(|e| Failure::input(format!("{} is not manifest JSON: {e}", args.manifest.display())))?;
    let dir = args.manifest.parent().unwrap_or(Path::new("."));
    let frames: Vec<Frame> = manifest
        .frames
        .iter()
        .map(|entry| read_frame(&dir.join(&entry.file), false))
        .collect::<Result<_, _>>()?;
    let mode = if args.mode == "full" { AuditMode::Full } else { AuditMode::Backward };
    let audit = audit_sequence(&frames, mode, budget);
    let (verdict, witness, code) = match &audit.verdict {
        AuditVerdict::Pass => ("pass".to_string(), None, 0),
        AuditVerdict::Unknown => ("unknown".to_string(), None, 4),
        AuditVerdict::Fail(w) => {
            let doc = ReductionDoc::from_map(&w.map).with_context(
                w.i,
                w.j,
                Some(frames[w.j].name(w.generator).to_string()),
            );
            ("fail".to_string(), Some(doc), 1)
        }
    };
    let out = AuditOut {
        command: "audit",
        mode: args.mode.clone(),
        frames: frames.len(),
        verdict,
        witness,
        inconclusive: audit.inconclusive,
        budget: BudgetEcho::of(budget),
    };
    emit(&out);
    eprintln!("audit {}: {} ({} frames)", args.manifest.display(), out.verdict, out.frames);
    Ok(code)
}

// ---------------------------------------------------------------------------
// embed
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct EmbedOut {
    command: &'static str,
    repr: &'static str,
    a: String,
    b: String,
    a_embeds_in_b: bool,
    b_embeds_in_a: bool,
}

/// A tree file is either tree JSON or bracket text.
fn read_tree(path: &Path) -> Result<OmegaTree, Failure> {
    let text = read_text(path)?;
    if let Ok(doc) = serde_json::from_str::<TreeDoc>(&text) {
        return Ok(doc.to_tree());
    }
    text.trim().parse::<OmegaTree>().map_err(|e| {
        Failure::input(format!("{} is neither tree JSON nor bracket text: {e}", path.display()))
    })
}

fn cmd_embed(args: &EmbedArgs) -> Result<u8, Failure> {
    let (repr, a, b): (&'static str, OmegaTree, OmegaTree) = if args.rt {
        (
            "rt",
            rt(&read_frame(&args.a, args.close)?)?,
            rt(&read_frame(&args.b, args.close)?)?,
        )
    } else if args.srt {
        (
            "srt",
            srt(&read_frame(&args.a, args.close)?)?,
            srt(&read_frame(&args.b, args.close)?)?,
        )
    } else {
        ("tree", read_tree(&args.a)?, read_tree(&args.b)?)
    };
    let out = EmbedOut {
        command: "embed",
        repr,
        a: a.to_string(),
        b: b.to_string(),
        a_embeds_in_b: tree_embed(&a, &b),
        b_embeds_in_a: tree_embed(&b, &a),
    };
    emit(&out);
    eprintln!(
        "embed ({repr}): {} {} {}",
        out.a,
        if out.a_embeds_in_b { "⊑" } else { "⋢" },
        out.b
    );
    Ok(if out.a_embeds_in_b { 0 } else { 1 })
}

// ---------------------------------------------------------------------------
// gen-h / gen-corpus / dot
// ---------------------------------------------------------------------------

fn cmd_gen_h(args: &GenHArgs, budget: &Budget) -> Result<u8, Failure> {
    let frame = make_h(args.n)?;
    let doc = FrameDoc::from_frame(&frame);
    let text = serde_json::to_string_pretty(&doc).expect("frame docs serialize");
    write_artifact(&args.out, &text)?;
    eprintln!("gen-h {}: {} points", args.n, frame.len());
    if args.verify {
        let report = verify_h_properties(args.n, budget)?;
        let show = |v: FormulaVerdict| match v {
            FormulaVerdict::Valid => "valid",
            FormulaVerdict::Invalid => "invalid",
            FormulaVerdict::BudgetExceeded => "budget exceeded",
        };
        eprintln!(
            "verify: strict partial order {}, rank {}, weak width at root {}, \
             irreflexive antichain max {}, B_3 {}, Wid_2+ {}, Wid_1+ {}",
            report.strict_partial_order,
            report.rank,
            report.weak_width_at_root,
            report.irr_antichain_max,
            show(report.b3),
            show(report.wid2_plus),
            show(report.wid1_plus),
        );
    }
    Ok(0)
}

fn cmd_gen_corpus(args: &GenCorpusArgs) -> Result<u8, Failure> {
    let text = read_text(&args.spec)?;
    let spec: CorpusSpec = serde_json::from_str(&text)
        .map_err(|e| Failure::input(format!("{} is not corpus-spec JSON: {e}", args.spec.display())))?;
    let frames = generate_corpus(&spec)?;
    let manifest = ManifestDoc::describe(&spec, &frames);
    fs::create_dir_all(&args.out_dir)
        .map_err(|e| Failure::input(format!("cannot create {}: {e}", args.out_dir.display())))?;
    for (entry, frame) in manifest.frames.iter().zip(&frames) {
        let doc = FrameDoc::from_frame(frame);
        let path = args.out_dir.join(&entry.file);
        fs::write(&path, serde_json::to_string_pretty(&doc).expect("frame docs serialize"))
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?;
    }
    let manifest_text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    fs::write(args.out_dir.join("manifest.json"), &manifest_text)
        .map_err(|e| Failure::input(format!("cannot write manifest: {e}")))?;
    println!("{manifest_text}");
    eprintln!(
        "gen-corpus: {} frames in {}",
        frames.len(),
        args.out_dir.display()
    );
    Ok(0)
}

fn cmd_dot(args: &DotArgs) -> Result<u8, Failure> {
    let frame = read_frame(&args.frame, args.close)?;
    write_artifact(&args.out, &frame_to_dot(&frame))?;
    eprintln!("dot {}: {} points", args.frame.display(), frame.len());
    Ok(0)
}

fn run(cli: &Cli, budget: &Budget) -> Result<u8, Failure> {
    match &cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Check(args) => cmd_check(args, budget),
        Command::FrameFormula(args) => cmd_frame_formula(args),
        Command::Reduce(args) => cmd_reduce(args, budget),
        Command::Audit(args) => cmd_audit(args, budget),
        Command::Embed(args) => cmd_embed(args),
        Command::GenH(args) => cmd_gen_h(args, budget),
        Command::GenCorpus(args) => cmd_gen_corpus(args),
        Command::Dot(args) => cmd_dot(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        // A second initialization (e.g. in tests) is harmless to ignore.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    let budget = Budget::from_env();
    let start = Instant::now();
    match run(&cli, &budget) {
        Ok(code) => {
            eprintln!("done in {:?}", start.elapsed());
            ExitCode::from(code)
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
