use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use firefighter::adversaries::AdversarySpec;
use firefighter::analysis::{bounded_minimax, certify, MinimaxVerdict, SearchLimits};
use firefighter::config::{parse_config, RunConfig};
use firefighter::engine::Outcome;
use firefighter::lattice::Cell;
use firefighter::render::{render_ascii, render_svg, Bounds};
use firefighter::strategies::StrategySpec;
use firefighter::trace::Trace;

#[derive(Parser)]
#[command(name = "firefighter", version, about = "Online firefighter game on the square lattice")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one configured game and write its trace.
    Simulate(SimulateArgs),
    /// Play every strategy against every adversary and print a summary table.
    Duel(DuelArgs),
    /// Check a trace and decide containment (exit 0 verified, 1 refuted, 2 inconclusive).
    Certify(CertifyArgs),
    /// Draw a trace as ASCII or SVG.
    Render(RenderArgs),
    /// Exhaustive search against an adversary inside a diamond of candidate cells.
    Search(SearchArgs),
}

#[derive(Args)]
struct Outputs {
    /// Trace (or table) output path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// SVG rendering of the trace.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// ASCII rendering of the trace.
    #[arg(long)]
    ascii: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    /// TOML run configuration.
    config: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    horizon: Option<u32>,
    #[arg(long)]
    clip: Option<u32>,
    #[command(flatten)]
    outputs: Outputs,
}

#[derive(Args)]
struct DuelArgs {
    /// Strategy id; repeat for several.
    #[arg(short = 's', long = "strategy", required = true)]
    strategies: Vec<String>,
    /// Adversary id; repeat for several.
    #[arg(short = 'a', long = "adversary", required = true)]
    adversaries: Vec<String>,
    #[arg(long, default_value_t = 30)]
    horizon: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Table output path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CertifyArgs {
    trace: PathBuf,
    /// Clip radius for barrier diagnostics; raised to clear the trace when needed.
    #[arg(long, default_value_t = 8)]
    clip: u32,
}

#[derive(Args)]
struct RenderArgs {
    trace: PathBuf,
    /// Side of one cell in the SVG, in pixels.
    #[arg(long, default_value_t = 24)]
    cell_px: u32,
    /// Render a box with this margin around the touched cells.
    #[arg(long, default_value_t = 0)]
    margin: i32,
    #[arg(long)]
    svg: Option<PathBuf>,
    /// ASCII output path; stdout when neither output is given.
    #[arg(long)]
    ascii: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(short = 'a', long, default_value = "thm1")]
    adversary: String,
    /// Player 1 may only protect cells within this distance of the ignition.
    #[arg(long, default_value_t = 6)]
    radius: u32,
    #[arg(long, default_value_t = 5)]
    horizon: u32,
    #[arg(long, default_value_t = SearchLimits::default().max_nodes)]
    max_nodes: u64,
    #[arg(long, default_value_t = SearchLimits::default().max_moves)]
    max_moves: u64,
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_renders(trace: &Trace, svg: Option<&Path>, ascii: Option<&Path>, cell_px: u32, margin: i32) -> Result<()> {
    let mut b = Bounds::covering(trace);
    b.min_x -= margin;
    b.max_x += margin;
    b.min_y -= margin;
    b.max_y += margin;
    if let Some(p) = svg {
        fs::write(p, render_svg(trace, &b, cell_px)?).with_context(|| format!("writing {}", p.display()))?;
    }
    if let Some(p) = ascii {
        fs::write(p, render_ascii(trace, &b)?).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn simulate(args: SimulateArgs) -> Result<ExitCode> {
    let text = fs::read_to_string(&args.config).with_context(|| format!("reading {}", args.config.display()))?;
    let mut cfg = parse_config(&text).map_err(|e| anyhow::anyhow!("invalid config {}:\n{e}", args.config.display()))?;
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(h) = args.horizon {
        if h == 0 {
            bail!("--horizon must be at least 1");
        }
        cfg.horizon = h;
    }
    if let Some(c) = args.clip {
        if c < 4 {
            bail!("--clip must be at least 4");
        }
        cfg.clip_radius = c;
    }
    let (_, trace) = cfg.run()?;
    let out = args.outputs.out.or(cfg.trace_out.clone());
    write_or_print(out.as_deref(), &trace.to_string())?;
    let svg = args.outputs.svg.or(cfg.svg_out.clone());
    let ascii = args.outputs.ascii.or(cfg.ascii_out.clone());
    write_renders(&trace, svg.as_deref(), ascii.as_deref(), 24, 1)?;
    eprintln!("{} vs {}: {}", trace.strategy, trace.adversary, trace.outcome);
    Ok(ExitCode::SUCCESS)
}

struct DuelRow {
    strategy: String,
    adversary: String,
    outcome: String,
    turn: String,
    burned: String,
    placed: String,
}

fn duel(args: DuelArgs) -> Result<ExitCode> {
    let strategies: Vec<StrategySpec> = args.strategies.iter().map(|s| s.parse()).collect::<Result<_, _>>()?;
    let adversaries: Vec<AdversarySpec> = args.adversaries.iter().map(|a| a.parse()).collect::<Result<_, _>>()?;
    let pairs: Vec<(&StrategySpec, &AdversarySpec)> =
        strategies.iter().flat_map(|s| adversaries.iter().map(move |a| (s, a))).collect();
    let rows: Vec<DuelRow> = pairs
        .par_iter()
        .map(|&(s, a)| {
            let mut cfg = RunConfig::new(s.clone(), a.clone(), args.horizon);
            cfg.seed = args.seed;
            let blank = |outcome: String| DuelRow {
                strategy: s.to_string(),
                adversary: a.to_string(),
                outcome,
                turn: "-".into(),
                burned: "-".into(),
                placed: "-".into(),
            };
            match cfg.run() {
                Err(e) => blank(format!("error: {e}")),
                Ok((run, _)) => {
                    let placed = run.final_state.protected().len().to_string();
                    let burned = run.final_state.burning().len().to_string();
                    let (outcome, turn) = match &run.outcome {
                        Outcome::Contained { turn, .. } => ("Contained", turn.to_string()),
                        Outcome::Escaped { turn, .. } => ("Escaped", turn.to_string()),
                        Outcome::Undecided { horizon } => ("Undecided", horizon.to_string()),
                    };
                    DuelRow { outcome: outcome.into(), turn, burned, placed, ..blank(String::new()) }
                }
            }
        })
        .collect();

    let header = ["strategy", "adversary", "outcome", "turn", "burned", "placed"];
    let cols = |r: &DuelRow| [r.strategy.clone(), r.adversary.clone(), r.outcome.clone(), r.turn.clone(), r.burned.clone(), r.placed.clone()];
    let mut width = header.map(str::len);
    for r in &rows {
        for (w, c) in width.iter_mut().zip(cols(r)) {
            *w = (*w).max(c.len());
        }
    }
    let mut table = String::new();
    let line = |cells: [String; 6]| {
        let parts: Vec<String> = cells.iter().zip(width).map(|(c, w)| format!("{c:<w$}")).collect();
        parts.join("  ").trim_end().to_string()
    };
    writeln!(table, "{}", line(header.map(String::from)))?;
    for r in &rows {
        writeln!(table, "{}", line(cols(r)))?;
    }
    write_or_print(args.out.as_deref(), &table)?;
    Ok(ExitCode::SUCCESS)
}

fn read_trace(path: &Path) -> Result<Trace> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    text.parse().with_context(|| format!("parsing {}", path.display()))
}

fn certify_cmd(args: CertifyArgs) -> Result<ExitCode> {
    let trace = read_trace(&args.trace)?;
    let c = certify(&trace, args.clip);
    println!("{c}");
    Ok(ExitCode::from(c.exit_code() as u8))
}

fn render(args: RenderArgs) -> Result<ExitCode> {
    let trace = read_trace(&args.trace)?;
    if args.svg.is_none() && args.ascii.is_none() {
        let mut b = Bounds::covering(&trace);
        b.min_x -= args.margin;
        b.max_x += args.margin;
        b.min_y -= args.margin;
        b.max_y += args.margin;
        print!("{}", render_ascii(&trace, &b)?);
        return Ok(ExitCode::SUCCESS);
    }
    write_renders(&trace, args.svg.as_deref(), args.ascii.as_deref(), args.cell_px, args.margin)?;
    Ok(ExitCode::SUCCESS)
}

fn search(args: SearchArgs) -> Result<ExitCode> {
    let spec: AdversarySpec = args.adversary.parse()?;
    let adversary = spec.build()?;
    let limits = SearchLimits { max_nodes: args.max_nodes, max_moves: args.max_moves };
    let report = bounded_minimax(Cell::ORIGIN, adversary.as_ref(), args.radius, args.horizon, limits);
    println!("{report}");
    Ok(match report.verdict {
        MinimaxVerdict::Inconclusive { .. } => ExitCode::from(2),
        _ => ExitCode::SUCCESS,
    })
}

/// Exit status for usage and runtime errors, kept apart from the verdict codes.
const ERROR_EXIT: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(ERROR_EXIT);
        }
        Err(e) => e.exit(),
    };
    let result = match cli.command {
        Command::Simulate(a) => simulate(a),
        Command::Duel(a) => duel(a),
        Command::Certify(a) => certify_cmd(a),
        Command::Render(a) => render(a),
        Command::Search(a) => search(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(ERROR_EXIT)
        }
    }
}
