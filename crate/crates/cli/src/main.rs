use std::cell::RefCell;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use thomas::algthomas::algebraic_decompose;
use thomas::control::{self, QueryReport, SearchMode, Verdict};
use thomas::diffthomas::{differential_decompose, eliminate, member_radical};
use thomas::janet::format_admissible;
use thomas::sysfile::{self, format_poly, SystemFile};
use thomas::system::{Decomposition, Options};
use thomas::Error;

thread_local! {
    static OUT: RefCell<String> = const { RefCell::new(String::new()) };
}

// Output is collected and written once, so a closed pipe ends the run quietly.
macro_rules! out {
    ($($t:tt)*) => { OUT.with(|o| write!(o.borrow_mut(), $($t)*).unwrap()) };
}

macro_rules! outln {
    ($($t:tt)*) => { OUT.with(|o| writeln!(o.borrow_mut(), $($t)*).unwrap()) };
}

fn flush() {
    let text = OUT.with(|o| std::mem::take(&mut *o.borrow_mut()));
    let mut stdout = io::stdout().lock();
    match stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => eprintln!("error: {}", e),
        _ => {}
    }
}

#[derive(Parser)]
#[command(name = "thomas", version, about = "Thomas decomposition of algebraic and differential systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a system into simple systems.
    Decompose(Common),
    /// Equations of each simple system free of the higher blocks.
    Eliminate {
        #[command(flatten)]
        common: Common,
        /// 1-based index of the first block to keep.
        #[arg(long)]
        block_index: usize,
    },
    /// Whether a polynomial vanishes on all solutions.
    Member {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        poly: String,
    },
    /// Observability of one indeterminate with respect to outputs.
    Observe {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        x: String,
        #[arg(long, value_delimiter = ',')]
        y: Vec<String>,
    },
    /// Flat-output test.
    Flat {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',')]
        y: Vec<String>,
    },
    /// Express the indeterminates in `--z` through those in `--y`.
    Invert {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',')]
        y: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        z: Vec<String>,
        /// Retry outputs the one-shot search misses under their own ranking.
        #[arg(long)]
        per_z: bool,
    },
}

#[derive(Args)]
struct Common {
    file: String,
    /// Single-block ranking, highest first: `x,y,t`.
    #[arg(long, value_delimiter = ',')]
    order: Option<Vec<String>>,
    /// Block ranking: blocks separated by `;`, names by `,`.
    #[arg(long)]
    blocks: Option<String>,
    #[arg(long, overrides_with = "no_factor")]
    factor: bool,
    #[arg(long)]
    no_factor: bool,
    #[arg(long, value_enum, default_value = "pretty")]
    format: Format,
    #[arg(long, default_value_t = 1)]
    parallel: usize,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Pretty,
    Json,
}

enum Failure {
    Usage(String),
    Inconsistent,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

fn load(c: &Common) -> Result<SystemFile, Failure> {
    let text = fs::read_to_string(&c.file).map_err(|e| Failure::Usage(format!("{}: {}", c.file, e)))?;
    let mut f = sysfile::parse(&text)?;
    if let Some(order) = &c.order {
        f.set_order(order.clone());
    }
    if let Some(b) = &c.blocks {
        let blocks = b
            .split(';')
            .map(|blk| blk.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect())
            .collect();
        f.set_blocks(blocks);
    }
    Ok(f)
}

fn options(c: &Common) -> Options {
    Options { factorize: c.factor && !c.no_factor, threads: c.parallel.max(1), ..Options::default() }
}

fn decompose(c: &Common, f: &SystemFile) -> Result<Decomposition, Failure> {
    let sys = f.system()?;
    let opts = options(c);
    let d = if f.is_differential() { differential_decompose(&sys, &opts)? } else { algebraic_decompose(&sys, &opts)? };
    Ok(d)
}

fn indices(d: &Decomposition, names: &[String]) -> Result<Vec<usize>, Failure> {
    names
        .iter()
        .map(|n| d.ring.indet_index(n).ok_or_else(|| Failure::Usage(format!("unknown indeterminate '{}'", n))))
        .collect()
}

fn decomposition_json(d: &Decomposition) -> Value {
    let ring = &d.ring;
    let systems: Vec<Value> = d
        .systems
        .iter()
        .map(|s| {
            let eqs: Vec<Value> = s
                .equations
                .iter()
                .map(|e| {
                    let adm: Vec<&str> =
                        e.admissible.iter().zip(&ring.indeps).filter(|(a, _)| **a).map(|(_, n)| n.as_str()).collect();
                    json!({"poly": format_poly(ring, &e.poly, None), "leader": ring.var_name(e.leader), "admissible": adm})
                })
                .collect();
            let ineqs: Vec<Value> = s
                .inequations
                .iter()
                .map(|q| json!({"poly": format_poly(ring, &q.poly, None), "leader": ring.var_name(q.leader)}))
                .collect();
            json!({"equations": eqs, "inequations": ineqs})
        })
        .collect();
    let g = &d.diagnostics;
    json!({
        "systems": systems,
        "diagnostics": {
            "inconsistent_branches": g.inconsistent_branches,
            "steps": g.steps,
            "elapsed_ms": g.elapsed_ms as u64,
        }
    })
}

fn print_decomposition(d: &Decomposition, format: Format) {
    match format {
        Format::Json => outln!("{}", serde_json::to_string_pretty(&decomposition_json(d)).unwrap()),
        Format::Pretty => {
            out!("{}", sysfile::format_declarations(&d.ring));
            for (i, s) in d.systems.iter().enumerate() {
                outln!("\n# system {} of {}", i + 1, d.systems.len());
                out!("{}", sysfile::format_system(&d.ring, s));
            }
        }
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::Fails => "fails",
        Verdict::Vacuous => "vacuous",
    }
}

fn mode_name(m: SearchMode) -> &'static str {
    match m {
        SearchMode::OneShot => "one-shot",
        SearchMode::PerZ => "per-z",
    }
}

fn print_report(d: &Decomposition, rep: &QueryReport, holds: &str, fails: &str, format: Format) {
    let ring = &d.ring;
    match format {
        Format::Json => {
            let systems: Vec<Value> = rep
                .systems
                .iter()
                .map(|s| {
                    let w: Vec<Value> = s
                        .witnesses
                        .iter()
                        .map(|w| json!({
                            "indeterminate": ring.indets[w.indet],
                            "poly": format_poly(ring, &w.poly, None),
                            "mode": mode_name(w.mode),
                        }))
                        .collect();
                    json!({"verdict": verdict_name(s.verdict), "witnesses": w, "reasons": s.reasons})
                })
                .collect();
            outln!("{}", serde_json::to_string_pretty(&json!({ "systems": systems })).unwrap());
        }
        Format::Pretty => {
            for (i, s) in rep.systems.iter().enumerate() {
                let word = match s.verdict {
                    Verdict::Holds => holds,
                    Verdict::Fails => fails,
                    Verdict::Vacuous => "vacuous",
                };
                outln!("system {}: {}", i + 1, word);
                for w in &s.witnesses {
                    let tag = if w.mode == SearchMode::PerZ { " (per-z)" } else { "" };
                    outln!("  {}: {} = 0{}", ring.indets[w.indet], format_poly(ring, &w.poly, None), tag);
                }
                for r in &s.reasons {
                    outln!("  {}", r);
                }
            }
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Decompose(c) => {
            let f = load(c)?;
            let d = decompose(c, &f)?;
            print_decomposition(&d, c.format);
            if d.is_empty() {
                return Err(Failure::Inconsistent);
            }
        }
        Command::Eliminate { common: c, block_index } => {
            let f = load(c)?;
            let d = decompose(c, &f)?;
            let mut per_system = Vec::new();
            for s in &d.systems {
                per_system.push(eliminate(&d.ring, s, *block_index)?);
            }
            match c.format {
                Format::Json => {
                    let v: Vec<Vec<String>> =
                        per_system.iter().map(|es| es.iter().map(|e| format_poly(&d.ring, &e.poly, None)).collect()).collect();
                    outln!("{}", serde_json::to_string_pretty(&json!({ "systems": v })).unwrap());
                }
                Format::Pretty => {
                    for (i, es) in per_system.iter().enumerate() {
                        outln!("# system {} of {}", i + 1, per_system.len());
                        for e in es {
                            out!("eq {};", format_poly(&d.ring, &e.poly, Some(e.leader)));
                            if !e.admissible.is_empty() {
                                out!("  # {}", format_admissible(&e.admissible, &d.ring.indeps));
                            }
                            outln!("");
                        }
                    }
                }
            }
            if d.is_empty() {
                return Err(Failure::Inconsistent);
            }
        }
        Command::Member { common: c, poly } => {
            let f = load(c)?;
            let d = decompose(c, &f)?;
            let p = f.parse_poly(&d.ring, poly)?;
            let yes = member_radical(&d, &p);
            match c.format {
                Format::Json => outln!("{}", json!({ "member": yes })),
                Format::Pretty => outln!("{}", yes),
            }
        }
        Command::Observe { common: c, x, y } => {
            let f = load(c)?;
            let d = decompose(c, &f)?;
            let xi = indices(&d, std::slice::from_ref(x))?[0];
            let rep = control::observable_report(&d, xi, &indices(&d, y)?, &indices(&d, &f.constants)?)?;
            print_report(&d, &rep, "observable", "not observable", c.format);
        }
        Command::Flat { common: c, y } => {
            let f = load(c)?;
            let y = if y.is_empty() { f.roles.outputs.clone() } else { y.clone() };
            let d = decompose(c, &f)?;
            let rep = control::flat_report(&d, &indices(&d, &y)?, &indices(&d, &f.constants)?)?;
            print_report(&d, &rep, "flat", "not flat", c.format);
        }
        Command::Invert { common: c, y, z, per_z } => {
            let f = load(c)?;
            let y = if y.is_empty() { f.roles.outputs.clone() } else { y.clone() };
            let z = if z.is_empty() { f.roles.inputs.clone() } else { z.clone() };
            let d = decompose(c, &f)?;
            let (y, z, consts) = (indices(&d, &y)?, indices(&d, &z)?, indices(&d, &f.constants)?);
            let rep = if *per_z {
                control::invert_per_z(&d, &y, &z, &consts, &options(c))?
            } else {
                control::invert(&d, &y, &z, &consts)?
            };
            print_report(&d, &rep, "invertible", "not invertible", c.format);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli);
    flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Inconsistent) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}
