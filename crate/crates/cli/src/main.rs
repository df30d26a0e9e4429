//! `welded`: command line access to w-graphs, Gauss diagrams and their
//! invariants. Data goes to stdout, diagnostics to stderr.

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use welded_core::convert::{psi_link, psi_stringlink, xi_link, xi_stringlink};
use welded_core::format::{parse_gauss, parse_move, render_gauss, render_move, WGraphFile};
use welded_core::fuzz::{self, Suite};
use welded_core::gauss::Kind;
use welded_core::milnor::{forests_sv_equivalent, milnor_invariants, MilnorError};
use welded_core::peripheral::{canonical_basing, chen_milnor_normal_form};
use welded_core::wirtinger::Presentation;
use welded_core::Gen;

#[derive(Parser)]
#[command(name = "welded", version, about = "Welded graphs, Gauss diagrams and Milnor invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a `wgraph` or `gauss` file.
    Check { file: String },
    /// The w-graph of a Gauss diagram.
    Psi { file: String },
    /// A Gauss diagram of a linear or cyclic w-graph.
    Xi {
        file: String,
        /// Orientation of a cyclic component, as `<component>:+|-`.
        #[arg(long = "orient", value_parser = parse_orient)]
        orient: Vec<(usize, bool)>,
    },
    /// The non-repeated Milnor invariants of a welded forest.
    Milnor { file: String },
    /// The sv-equivalent normal form, with the moves reaching it.
    NormalForm { file: String },
    /// The Wirtinger presentation of a w-graph.
    Wirtinger { file: String },
    /// Decide sv-equivalence of two welded forests.
    Equiv { a: String, b: String },
    /// Apply moves given as descriptors, in order.
    Apply {
        file: String,
        #[arg(long = "move", required = true)]
        moves: Vec<String>,
    },
    /// Run the randomized property suites.
    Fuzz {
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long)]
        suite: Option<Suite>,
    },
}

fn parse_orient(s: &str) -> Result<(usize, bool), String> {
    let (c, o) = s.split_once(':').ok_or("expected <component>:+|-")?;
    let c: usize = c.parse().map_err(|_| format!("bad component `{c}`"))?;
    if c == 0 {
        return Err("components are numbered from 1".into());
    }
    match o {
        "+" => Ok((c - 1, true)),
        "-" => Ok((c - 1, false)),
        _ => Err(format!("bad orientation `{o}`")),
    }
}

/// A failure reported on stderr with the given exit code.
struct Fail(u8, String);

impl<E: std::fmt::Display> From<E> for Fail {
    fn from(e: E) -> Fail {
        Fail(2, e.to_string())
    }
}

fn read(path: &str) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| Fail(2, format!("{path}: {e}")))
}

fn read_wgraph(path: &str) -> Result<WGraphFile, Fail> {
    WGraphFile::parse(&read(path)?).map_err(|e| Fail(2, format!("{path}: {e}")))
}

fn run(cli: Cli) -> Result<u8, Fail> {
    match cli.command {
        Command::Check { file } => {
            let text = read(&file)?;
            let header = text
                .lines()
                .map(|l| l.split('#').next().unwrap_or("").trim())
                .find(|l| !l.is_empty())
                .unwrap_or("");
            if header.starts_with("gauss") {
                let d = parse_gauss(&text).map_err(|e| Fail(2, format!("{file}: {e}")))?;
                println!("ok: gauss diagram, {} components, {} arrows", d.num_components(), d.num_arrows());
            } else {
                let f = WGraphFile::parse(&text).map_err(|e| Fail(2, format!("{file}: {e}")))?;
                let ty: Vec<String> = f.graph.graph_type().iter().map(|(m, b)| format!("({m},{b})")).collect();
                println!("ok: wgraph, type {}", ty.join(" "));
            }
        }
        Command::Psi { file } => {
            let d = parse_gauss(&read(&file)?)?;
            let g = match d.kind() {
                Kind::StringLink => psi_stringlink(&d)?,
                Kind::Link => psi_link(&d)?,
            };
            print!("{}", WGraphFile::new(g).render());
        }
        Command::Xi { file, orient } => {
            let f = read_wgraph(&file)?;
            let g = &f.graph;
            let ty = g.graph_type();
            let d = if ty.iter().all(|t| *t == (0, 1)) && !ty.is_empty() {
                let mut o = vec![true; g.num_components()];
                for (c, dir) in orient {
                    *o.get_mut(c).ok_or_else(|| Fail(2, format!("no component {}", c + 1)))? = dir;
                }
                xi_link(g, &o)?
            } else {
                if !orient.is_empty() {
                    return Err(Fail(2, "--orient applies to cyclic graphs only".into()));
                }
                xi_stringlink(g)?
            };
            print!("{}", render_gauss(&d));
        }
        Command::Milnor { file } => {
            let f = read_wgraph(&file)?;
            print!("{}", milnor_invariants(&f.graph)?);
        }
        Command::NormalForm { file } => {
            let f = read_wgraph(&file)?;
            let nf = chen_milnor_normal_form(&f.graph, &canonical_basing(&f.graph))?;
            let mut cur = f.clone();
            let mut witness = Vec::new();
            for m in &nf.trace {
                witness.push(render_move(m, &|g: Gen| cur.names.name(g)));
                let next = cur.graph.apply(m)?;
                cur = cur.with_graph(next);
            }
            print!("{}", cur.with_graph(nf.graph).render());
            for w in witness {
                println!("w: {w}");
            }
        }
        Command::Wirtinger { file } => {
            let f = read_wgraph(&file)?;
            let p = Presentation::from_wgraph(&f.graph);
            print!("{}", p.render(&|g| f.names.name(g)));
        }
        Command::Equiv { a, b } => {
            let (fa, fb) = (read_wgraph(&a)?, read_wgraph(&b)?);
            return match forests_sv_equivalent(&fa.graph, &fb.graph) {
                Ok(true) => {
                    println!("equivalent");
                    Ok(0)
                }
                Ok(false) => {
                    println!("not equivalent");
                    Ok(1)
                }
                Err(e @ MilnorError::TypeMismatch(..)) => {
                    eprintln!("{e}");
                    println!("not equivalent");
                    Ok(1)
                }
                Err(e) => Err(Fail(2, e.to_string())),
            };
        }
        Command::Apply { file, moves } => {
            let mut f = read_wgraph(&file)?;
            for desc in &moves {
                let m = parse_move(desc, &f.names)?;
                let g = f.graph.apply(&m).map_err(|e| Fail(2, format!("`{desc}`: {e}")))?;
                f = f.with_graph(g);
            }
            print!("{}", f.render());
        }
        Command::Fuzz { seed, cases, suite } => {
            let seed = match std::env::var("WELDED_SEED") {
                Ok(s) => s.trim().parse().map_err(|_| Fail(2, format!("WELDED_SEED: bad seed `{s}`")))?,
                Err(_) => seed.ok_or_else(|| Fail(2, "--seed or WELDED_SEED is required".into()))?,
            };
            let suites = suite.map_or(Suite::ALL.to_vec(), |s| vec![s]);
            let mut ok = true;
            for s in suites {
                let report = fuzz::run(s, seed, cases);
                println!("{s}: {} of {cases} cases passed (seed {seed})", cases - report.failures.len());
                if let Some(f) = report.failures.first() {
                    print!("{f}");
                    ok = false;
                }
            }
            return Ok(if ok { 0 } else { 1 });
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
