//! Command-line front end for the sliding-robot clearing engine.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use slidepursuit::engine::{run, EndChoice, RunReport, Verdict};
use slidepursuit::io::gen::{gen_guard_cover, gen_staircase};
use slidepursuit::io::instance::{parse_instance, write_instance, InstanceFile};
use slidepursuit::io::svg::render_svg;
use slidepursuit::io::tracefile::{read_trace, write_trace};
use slidepursuit::oracle::{replay, OracleVerdict, Point2};
use slidepursuit::visibility::{coverage_complete, Coverage};

#[derive(Parser, Debug)]
#[command(name = "slidepursuit", version, about = "Clear orthogonal polygons with sliding robots")]
struct Cli {
    /// Print diagnostics to stderr.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum End {
    Low,
    High,
}

impl From<End> for EndChoice {
    fn from(e: End) -> Self {
        match e {
            End::Low => EndChoice::Low,
            End::High => EndChoice::High,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that the segments' sliding visibility covers the polygon.
    CheckCover {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Run the clearing protocol and write its trace.
    Simulate {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = 0)]
        start_robot: usize,
        #[arg(long, value_enum, default_value = "low")]
        start_end: End,
        /// Trace output (line-delimited JSON).
        #[arg(long)]
        trace: Option<PathBuf>,
        /// SVG still of the state after `--frame` (default: the last record).
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        frame: Option<usize>,
        /// Record budget before the run is declared stalled.
        #[arg(long)]
        budget: Option<usize>,
        /// Run every starting robot from both endpoints.
        #[arg(long)]
        all_starts: bool,
    },
    /// Replay a trace against an arbitrarily fast evader.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        trace: PathBuf,
        /// Grid cells per polygon unit.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(i64).range(1..=16))]
        scale: i64,
    },
    /// Generate a staircase instance with a greedy vertical cover.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=200))]
        steps: u64,
        /// Output path (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw an instance, optionally at a trace frame.
    Render {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long, requires = "trace")]
        frame: Option<usize>,
        #[arg(long)]
        svg: PathBuf,
    },
}

/// Failure that maps to exit code 2.
struct InputError(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.into())
    }
}

fn load_instance(path: &Path) -> Result<InstanceFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_instance(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn fmt_point(p: &Point2) -> String {
    format!("{} {}", p.x, p.y)
}

fn verdict_line(r: &RunReport) -> String {
    match &r.verdict {
        Verdict::Cleared => format!("verdict=Cleared robots={} events={}", r.robots_used(), r.events()),
        Verdict::Stalled { reason } => {
            format!("verdict=Stalled robots={} events={} reason={reason}", r.robots_used(), r.events())
        }
    }
}

fn cmd_check_cover(instance: &Path) -> Result<u8, InputError> {
    let f = load_instance(instance)?;
    match coverage_complete(&f.polygon, &f.segments) {
        Coverage::Complete => {
            println!("COMPLETE");
            Ok(0)
        }
        Coverage::Witness(w) => {
            println!("INCOMPLETE witness {} {}", w.x, w.y);
            Ok(1)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_simulate(
    instance: &Path,
    start: usize,
    end: EndChoice,
    trace: Option<&Path>,
    svg: Option<&Path>,
    frame: Option<usize>,
    budget: Option<usize>,
    verbose: u8,
) -> Result<u8, InputError> {
    let f = load_instance(instance)?;
    if start >= f.segments.len() {
        return Err(anyhow!("start robot {start} does not exist ({} segments)", f.segments.len()).into());
    }
    let report = run(&f.polygon, &f.segments, start, end, budget)?;
    if verbose > 0 {
        for r in &report.trace.records {
            eprintln!(
                "{:>4} r{} {:?} {} -> {} {}",
                r.step,
                r.robot,
                r.kind,
                fmt_lattice(r.from),
                fmt_lattice(r.to),
                r.case
            );
        }
    }
    if let Some(path) = trace {
        write(path, &write_trace(&report.trace))?;
    }
    if let Some(path) = svg {
        let last = report.trace.records.len().saturating_sub(1);
        let doc = render_svg(&f.polygon, &f.segments, Some((&report.trace, frame.unwrap_or(last))))?;
        write(path, &doc)?;
    }
    println!("{}", verdict_line(&report));
    Ok(if report.verdict == Verdict::Cleared { 0 } else { 1 })
}

fn fmt_lattice(p: slidepursuit::Point) -> String {
    format!("({},{})", p.x, p.y)
}

fn cmd_all_starts(instance: &Path, budget: Option<usize>) -> Result<u8, InputError> {
    let f = load_instance(instance)?;
    let mut failures = 0;
    for start in 0..f.segments.len() {
        for end in [EndChoice::Low, EndChoice::High] {
            let report = run(&f.polygon, &f.segments, start, end, budget)?;
            if report.verdict != Verdict::Cleared {
                failures += 1;
            }
            let end = if end == EndChoice::Low { "low" } else { "high" };
            println!("start={start} end={end} {}", verdict_line(&report));
        }
    }
    println!("runs={} failures={failures}", 2 * f.segments.len());
    Ok(if failures == 0 { 0 } else { 1 })
}

fn cmd_verify(instance: &Path, trace: &Path, scale: i64) -> Result<u8, InputError> {
    let f = load_instance(instance)?;
    let text = fs::read_to_string(trace).with_context(|| format!("reading {}", trace.display()))?;
    let t = read_trace(&text)?;
    match replay(&t, &f.polygon, &f.segments, scale) {
        Ok(OracleVerdict::Cleared) => {
            println!("verdict=Cleared");
            Ok(0)
        }
        Ok(OracleVerdict::Contaminated { witnesses, count }) => {
            let w: Vec<String> = witnesses.iter().map(fmt_point).collect();
            println!("verdict=Contaminated cells={count} witness={}", w.join(","));
            Ok(1)
        }
        Ok(OracleVerdict::ProtocolViolation { step, at }) => {
            println!("verdict=ProtocolViolation step={step} at={}", fmt_point(&at));
            Ok(1)
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_gen(seed: u64, steps: u64, out: Option<&Path>) -> Result<u8, InputError> {
    let polygon = gen_staircase(seed, steps as usize);
    let segments = gen_guard_cover(&polygon, seed);
    let text = format!("# staircase seed={seed} steps={steps}\n{}", write_instance(&polygon, &segments));
    match out {
        Some(path) => write(path, &text)?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn cmd_render(instance: &Path, trace: Option<&Path>, frame: Option<usize>, svg: &Path) -> Result<u8, InputError> {
    let f = load_instance(instance)?;
    let doc = match trace {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let t = read_trace(&text)?;
            if t.records.is_empty() {
                return Err(anyhow!("trace has no records").into());
            }
            let k = frame.unwrap_or(t.records.len() - 1);
            render_svg(&f.polygon, &f.segments, Some((&t, k)))?
        }
        None => render_svg(&f.polygon, &f.segments, None)?,
    };
    write(svg, &doc)?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::CheckCover { instance } => cmd_check_cover(&instance),
        Command::Simulate { instance, all_starts: true, budget, .. } => cmd_all_starts(&instance, budget),
        Command::Simulate { instance, start_robot, start_end, trace, svg, frame, budget, .. } => cmd_simulate(
            &instance,
            start_robot,
            start_end.into(),
            trace.as_deref(),
            svg.as_deref(),
            frame,
            budget,
            cli.verbose,
        ),
        Command::Verify { instance, trace, scale } => cmd_verify(&instance, &trace, scale),
        Command::Gen { seed, steps, out } => cmd_gen(seed, steps, out.as_deref()),
        Command::Render { instance, trace, frame, svg } => cmd_render(&instance, trace.as_deref(), frame, &svg),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(InputError(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
