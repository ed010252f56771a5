//! `tiltgather`: generate instances, solve, verify, benchmark, run oracles, render.
//!
//! Exit codes: 0 ok, 1 I/O, 2 parse or validation, 3 limit (not gathered,
//! step limit hit, oracle state cap hit).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};

use tiltgather::bench::{self, BenchConfig, CSV_HEADER};
use tiltgather::generators::{
    assignment_sequence, gen_chimney, gen_dsp_adversarial, gen_hardness, gen_random_config, gen_random_polyomino,
    CnfFormula, HardnessMeta,
};
use tiltgather::oracle::{self, ConfigSearch};
use tiltgather::render;
use tiltgather::sim::{apply, format_sequence, parse_sequence};
use tiltgather::strategies::{gather, PairPolicy, QuadrantChoice, Strategy, StrategyConfig};
use tiltgather::{parse_instance, Cell, Configuration, Instance, Quadrant};

struct Failure {
    code: u8,
    err: anyhow::Error,
}

type CliResult<T = ()> = Result<T, Failure>;

fn io_fail(err: impl Into<anyhow::Error>) -> Failure {
    Failure { code: 1, err: err.into() }
}

fn invalid(err: impl Into<anyhow::Error>) -> Failure {
    Failure { code: 2, err: err.into() }
}

fn limit(msg: String) -> Failure {
    Failure { code: 3, err: anyhow!(msg) }
}

#[derive(Parser)]
#[command(name = "tiltgather", version, about = "Gather particle swarms with global tilt commands")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write an instance file
    #[command(subcommand)]
    Generate(Family),
    /// Certificate sequence of a truth assignment for a hardness instance
    Certificate {
        instance: PathBuf,
        /// One character per variable: T/1 for true, F/0 for false
        assignment: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a gathering strategy
    Solve {
        instance: PathBuf,
        #[command(flatten)]
        strategy: StrategyArgs,
        /// Sequence file to write (default: print the sequence)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay a sequence and report the final configuration
    Verify {
        instance: PathBuf,
        sequence: PathBuf,
        /// Start from full occupancy instead of the instance's particles
        #[arg(long)]
        oblivious: bool,
        /// Accept if every particle is within this distance of one extreme pixel
        #[arg(long)]
        radius: Option<u32>,
        /// Also require the final cell to be this one ("x,y")
        #[arg(long, value_parser = parse_cell)]
        target: Option<Cell>,
    },
    /// Run a benchmark config and print CSV
    Bench {
        config: PathBuf,
        /// Directory for per-run particle-count traces
        #[arg(long)]
        trace_dir: Option<PathBuf>,
    },
    /// Exact minimum gathering length
    Oracle {
        instance: PathBuf,
        /// State cap for many-particle search
        #[arg(long, default_value_t = oracle::DEFAULT_STATE_CAP)]
        cap: usize,
        /// Use brute-force enumeration up to this length instead
        #[arg(long)]
        exhaustive: Option<usize>,
        #[arg(long)]
        oblivious: bool,
    },
    /// Write PGM frames of a run
    Render {
        instance: PathBuf,
        sequence: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        every: usize,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long)]
        oblivious: bool,
    },
}

#[derive(Subcommand)]
enum Family {
    /// 3SAT reduction from a DIMACS file
    Hardness {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Chimney lower-bound instance (odd h)
    Chimney {
        #[arg(long)]
        h: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maze where DSP is far from optimal
    DspAdversarial {
        #[arg(long)]
        holes: u32,
        #[arg(long)]
        hole_width: u32,
        #[arg(long)]
        hole_height: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded random maze with random particles
    Random {
        #[arg(long)]
        width: u32,
        #[arg(long)]
        height: u32,
        #[arg(long, default_value_t = 0.5)]
        fill: f64,
        #[arg(long)]
        holes: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Particle count, or "full"
        #[arg(long, default_value = "2")]
        particles: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct StrategyArgs {
    #[arg(long, default_value = "mste", value_parser = parse_strategy)]
    strategy: Strategy,
    #[arg(long, default_value = "random", value_parser = parse_pair)]
    pair: PairPolicy,
    #[arg(long)]
    preprocess: bool,
    /// NE, NW, SE, SW or auto
    #[arg(long, default_value = "auto", value_parser = parse_quadrant)]
    quadrant: QuadrantChoice,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    limit: Option<usize>,
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    Strategy::parse(s).ok_or_else(|| format!("unknown strategy {s:?} (ssp, dsp, mte, mste)"))
}

fn parse_pair(s: &str) -> Result<PairPolicy, String> {
    PairPolicy::parse(s).ok_or_else(|| format!("unknown pair policy {s:?} (random, distant)"))
}

fn parse_quadrant(s: &str) -> Result<QuadrantChoice, String> {
    if s.eq_ignore_ascii_case("auto") {
        return Ok(QuadrantChoice::Auto);
    }
    Quadrant::parse(s).map(QuadrantChoice::Fixed).ok_or_else(|| format!("unknown quadrant {s:?}"))
}

fn parse_cell(s: &str) -> Result<Cell, String> {
    let (x, y) = s.split_once(',').ok_or("expected x,y")?;
    let x = x.trim().parse().map_err(|_| format!("bad x in {s:?}"))?;
    let y = y.trim().parse().map_err(|_| format!("bad y in {s:?}"))?;
    Ok(Cell::new(x, y))
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(io_fail)
}

fn write(path: &Path, text: &str) -> CliResult {
    fs::write(path, text).with_context(|| format!("writing {}", path.display())).map_err(io_fail)
}

fn emit(out: Option<&Path>, text: &str) -> CliResult {
    match out {
        Some(p) => write(p, text),
        None => std::io::stdout().write_all(text.as_bytes()).context("writing stdout").map_err(io_fail),
    }
}

fn load(path: &Path) -> CliResult<Instance> {
    parse_instance(&read(path)?).with_context(|| format!("parsing {}", path.display())).map_err(invalid)
}

fn load_sequence(path: &Path) -> CliResult<Vec<tiltgather::Command>> {
    parse_sequence(&read(path)?).with_context(|| format!("parsing {}", path.display())).map_err(invalid)
}

fn start_config(inst: &Instance, oblivious: bool) -> Configuration {
    if oblivious {
        Configuration::full(&inst.polyomino)
    } else {
        inst.particles.clone()
    }
}

/// Prints a line, ignoring a closed stdout (e.g. piped into `head`).
fn say(line: impl std::fmt::Display) {
    let _ = writeln!(std::io::stdout(), "{line}");
}

fn cells_text(cells: &[Cell]) -> String {
    cells.iter().map(Cell::to_string).collect::<Vec<_>>().join(" ")
}

fn generate(family: Family) -> CliResult {
    let (inst, out) = match family {
        Family::Hardness { cnf, out } => {
            let f = CnfFormula::parse_dimacs(&read(&cnf)?).map_err(invalid)?;
            (gen_hardness(&f).map_err(invalid)?.0, out)
        }
        Family::Chimney { h, out } => (gen_chimney(h).map_err(invalid)?.0, out),
        Family::DspAdversarial { holes, hole_width, hole_height, out } => {
            (gen_dsp_adversarial(holes, hole_width, hole_height).map_err(invalid)?.0, out)
        }
        Family::Random { width, height, fill, holes, seed, particles, out } => {
            let mut inst = gen_random_polyomino(width, height, fill, holes, seed).map_err(invalid)?;
            inst.particles = if particles == "full" {
                Configuration::full(&inst.polyomino)
            } else {
                let n = particles.parse().map_err(|_| invalid(anyhow!("--particles: expected a count or \"full\"")))?;
                gen_random_config(&inst.polyomino, n, seed)
            };
            (inst, out)
        }
    };
    emit(out.as_deref(), &inst.to_json())
}

fn certificate(instance: &Path, assignment: &str, out: Option<&Path>) -> CliResult {
    let inst = load(instance)?;
    let meta = HardnessMeta::from_meta(&inst.meta).map_err(invalid)?;
    let values = assignment
        .chars()
        .filter(|c| !c.is_whitespace() && *c != ',')
        .map(|c| match c.to_ascii_uppercase() {
            'T' | '1' => Ok(true),
            'F' | '0' => Ok(false),
            _ => Err(invalid(anyhow!("assignment character {c:?} is not T/F/1/0"))),
        })
        .collect::<CliResult<Vec<_>>>()?;
    let seq = assignment_sequence(&meta, &values).map_err(invalid)?;
    emit(out, &(format_sequence(&seq) + "\n"))
}

fn solve(instance: &Path, args: StrategyArgs, out: Option<&Path>) -> CliResult {
    let inst = load(instance)?;
    if args.limit == Some(0) {
        return Err(invalid(anyhow!("--limit must be positive")));
    }
    let cfg = StrategyConfig {
        strategy: args.strategy,
        pair: args.pair,
        preprocess: args.preprocess,
        quadrant: args.quadrant,
        seed: args.seed,
        step_limit: args.limit,
    };
    let r = gather(&inst.polyomino, &inst.particles, &cfg).map_err(invalid)?;
    let seq = format_sequence(&r.sequence);
    let summary = format!(
        "strategy={} length={} gathered={} ms={:.3}",
        cfg.strategy.name(),
        r.length,
        r.gathered,
        r.wall_time_ms
    );
    match out {
        Some(p) => {
            write(p, &(seq + "\n"))?;
            say(&summary);
        }
        None => {
            say(&seq);
            eprintln!("{summary}");
        }
    }
    if r.gathered {
        Ok(())
    } else {
        Err(limit(format!("not gathered within {} commands", r.length)))
    }
}

fn verify(instance: &Path, sequence: &Path, oblivious: bool, radius: Option<u32>, target: Option<Cell>) -> CliResult {
    let inst = load(instance)?;
    let seq = load_sequence(sequence)?;
    let p = &inst.polyomino;
    if let Some(t) = target {
        if !p.is_free(t) {
            return Err(invalid(anyhow!("target {t} is not a free cell")));
        }
    }
    let start = start_config(&inst, oblivious);
    if start.is_empty() {
        return Err(invalid(anyhow!("instance has no particles (use --oblivious)")));
    }
    let (end, _) = apply(p, &start, &seq, false);
    let cells = end.cells(p);
    let gathered = end.is_gathered();
    say(format!("length={} particles={} gathered={} final={}", seq.len(), end.len(), gathered, cells_text(&cells)));
    let mut ok = gathered;
    if let Some(r) = radius {
        // min over extreme pixels e of the max particle distance to e.
        let (best, q) = Quadrant::ALL
            .into_iter()
            .map(|q| {
                let dm = p.distance_map(&[p.extreme_pixel(q)]).expect("extreme pixel is free");
                (end.indices().iter().map(|&i| dm.dist[i as usize]).max().unwrap_or(0), q)
            })
            .min_by_key(|&(d, _)| d)
            .unwrap();
        let within = best <= r;
        say(format!("radius={r} extreme={} max_distance={best} within_radius={within}", q.name()));
        ok = within;
    }
    if let Some(t) = target {
        let hit = cells == [t];
        say(format!("target={t} reached={hit}"));
        ok &= hit;
    }
    if ok {
        Ok(())
    } else {
        Err(limit("sequence does not meet the requested condition".into()))
    }
}

fn run_bench(config: &Path, trace_dir: Option<&Path>) -> CliResult {
    let cfg = BenchConfig::parse(&read(config)?).map_err(invalid)?;
    let base = config.parent().unwrap_or(Path::new("."));
    let rows = bench::run_bench(&cfg, base, bench::threads_from_env()).map_err(|e| match e {
        bench::BenchError::Read { .. } => io_fail(e),
        _ => invalid(e),
    })?;
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in &rows {
        out += &row.csv();
        out.push('\n');
    }
    emit(None, &out)?;
    if let Some(dir) = trace_dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display())).map_err(io_fail)?;
        for (i, row) in rows.iter().enumerate() {
            let mut t = String::from("step,count\n");
            for (s, c) in row.trace.iter().enumerate() {
                t += &format!("{s},{c}\n");
            }
            write(&dir.join(format!("trace_{i:05}.csv")), &t)?;
        }
    }
    Ok(())
}

fn run_oracle(instance: &Path, cap: usize, exhaustive: Option<usize>, oblivious: bool) -> CliResult {
    let inst = load(instance)?;
    let p = &inst.polyomino;
    let start = start_config(&inst, oblivious);
    let found = if let Some(max_len) = exhaustive {
        oracle::exhaustive(p, &start, max_len).map_err(invalid)?
    } else if start.len() == 2 {
        Some(oracle::optimal_pair(p, &start).map_err(invalid)?.1)
    } else {
        match oracle::optimal_config(p, &start, cap).map_err(invalid)? {
            ConfigSearch::Found(seq) => Some(seq),
            ConfigSearch::Unknown { explored } => {
                say(format!("unknown explored={explored}"));
                return Err(limit(format!("state cap {cap} reached")));
            }
        }
    };
    match found {
        Some(seq) => {
            say(format!("length={}", seq.len()));
            say(format_sequence(&seq));
            Ok(())
        }
        None => {
            say("none");
            Err(limit("no gathering sequence within the length bound".into()))
        }
    }
}

fn run_render(instance: &Path, sequence: Option<&Path>, every: usize, out: &Path, oblivious: bool) -> CliResult {
    if every == 0 {
        return Err(invalid(anyhow!("--every must be positive")));
    }
    let inst = load(instance)?;
    let seq = match sequence {
        Some(s) => load_sequence(s)?,
        None => Vec::new(),
    };
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display())).map_err(io_fail)?;
    let frames = render::frames(&inst.polyomino, &start_config(&inst, oblivious), &seq, every);
    for (i, f) in frames.iter().enumerate() {
        write(&out.join(render::frame_name(i)), f)?;
    }
    say(format!("frames={}", frames.len()));
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Generate(f) => generate(f),
        Cmd::Certificate { instance, assignment, out } => certificate(&instance, &assignment, out.as_deref()),
        Cmd::Solve { instance, strategy, out } => solve(&instance, strategy, out.as_deref()),
        Cmd::Verify { instance, sequence, oblivious, radius, target } => {
            verify(&instance, &sequence, oblivious, radius, target)
        }
        Cmd::Bench { config, trace_dir } => run_bench(&config, trace_dir.as_deref()),
        Cmd::Oracle { instance, cap, exhaustive, oblivious } => run_oracle(&instance, cap, exhaustive, oblivious),
        Cmd::Render { instance, sequence, every, out, oblivious } => {
            run_render(&instance, sequence.as_deref(), every, &out, oblivious)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}
