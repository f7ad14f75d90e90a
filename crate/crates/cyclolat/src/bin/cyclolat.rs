//! Command-line front end over the cyclolat pipelines.
//!
//! Exit codes: 0 on success, 1 when a verification reports a mismatch,
//! 2 on invalid input, 3 when a resource budget would be exceeded.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use cyclolat::budget::Budget;
use cyclolat::builder::{build, euler_phi, squarefree_decompose};
use cyclolat::closed_forms::{coordinator_with, ClosedFormResult, Strategy};
use cyclolat::growth::bfs_shells_with;
use cyclolat::hull::enumerate_facets_with;
use cyclolat::transport::{enumerate_vertices_2d_with, verify_duality_with};
use cyclolat::tu::{verdict_for_modulus, TuWitness};
use cyclolat::verify::{run_with, Scope};
use cyclolat::{Error, Result};

#[derive(Parser)]
#[command(name = "cyclolat", version, about = "Cyclotomic polytopes and the growth of cyclotomic lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format; each command has a natural default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Point budget for BFS, face, dilate and tree enumerations.
    /// Overrides the CYCLOLAT_BUDGET environment variable.
    #[arg(long, global = true)]
    budget_points: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the vertex matrix A_m of the cyclotomic polytope C_m.
    Build {
        #[arg(long)]
        m: u64,
    },
    /// Enumerate the facets of C_m.
    Facets {
        #[arg(long)]
        m: u64,
    },
    /// Coordinator polynomial of the cyclotomic lattice of order m.
    Hvector {
        #[arg(long)]
        m: u64,
        #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
        strategy: StrategyArg,
    },
    /// Count lattice points by word length under the m vertex generators.
    Growth {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        max_n: usize,
    },
    /// Total unimodularity verdict for A_m, with a witness on failure.
    Tu {
        #[arg(long)]
        m: u64,
    },
    /// Check the transportation-polytope description of the facets of C_pq.
    Dual {
        #[arg(long)]
        m: u64,
    },
    /// Replay the verification suite against the stored values.
    Verify {
        #[arg(long, value_enum, default_value_t = ScopeArg::Fast)]
        scope: ScopeArg,
    },
    /// Closed-form coordinator polynomial, when one applies.
    ClosedForm {
        #[arg(long)]
        m: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Closed,
    Triangulation,
    Bfs,
    Auto,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::Closed => Strategy::Closed,
            StrategyArg::Triangulation => Strategy::Triangulation,
            StrategyArg::Bfs => Strategy::Bfs,
            StrategyArg::Auto => Strategy::Auto,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScopeArg {
    Fast,
    Full,
}

fn main() -> ExitCode {
    // Die quietly on a closed pipe (e.g. `cyclolat facets --m 30 | head`)
    // instead of panicking on the failed write.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let budget = match cli.budget_points {
        Some(points) => Budget::with_points(points),
        None => Budget::from_env(),
    };
    match dispatch(cli.command, cli.format, &budget) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{e}");
            match e {
                Error::InvalidInput(_) => ExitCode::from(2),
                Error::BudgetExceeded(_) => ExitCode::from(3),
            }
        }
    }
}

/// Runs one command. `Ok(false)` means the command ran but a verification
/// found a mismatch.
fn dispatch(command: Command, format: Option<Format>, budget: &Budget) -> Result<bool> {
    match command {
        Command::Build { m } => cmd_build(m, format.unwrap_or(Format::Text)),
        Command::Facets { m } => cmd_facets(m, format.unwrap_or(Format::Text), budget),
        Command::Hvector { m, strategy } => {
            cmd_polynomial(m, strategy.into(), format.unwrap_or(Format::Json), budget)
        }
        Command::Growth { m, max_n } => {
            cmd_growth(m, max_n, format.unwrap_or(Format::Csv), budget)
        }
        Command::Tu { m } => cmd_tu(m, format.unwrap_or(Format::Json), budget),
        Command::Dual { m } => cmd_dual(m, format.unwrap_or(Format::Json), budget),
        Command::Verify { scope } => cmd_verify(scope, format.unwrap_or(Format::Text), budget),
        Command::ClosedForm { m } => {
            cmd_polynomial(m, Strategy::Closed, format.unwrap_or(Format::Json), budget)
        }
    }
}

fn cmd_build(m: u64, format: Format) -> Result<bool> {
    let v = build(m)?;
    match format {
        Format::Text => print!("{}", v.matrix.to_text()),
        Format::Csv => {
            let header: Vec<String> =
                (0..v.dim()).map(|r| format!("x{r}")).collect();
            println!("label,{}", header.join(","));
            for j in 0..v.vertex_count() {
                let coords: Vec<String> =
                    v.vertex(j).iter().map(|e| e.to_string()).collect();
                println!("{},{}", v.labels[j], coords.join(","));
            }
        }
        Format::Json => {
            let entries = v
                .matrix
                .to_i64()
                .ok_or_else(|| Error::invalid("vertex coordinates exceed machine integers"))?;
            let n = v.vertex_count();
            let rows: Vec<&[i64]> = entries.chunks(n).collect();
            println!(
                "{}",
                json!({
                    "m": m,
                    "dim": v.dim(),
                    "vertex_count": n,
                    "labels": v.labels,
                    "rows": rows,
                })
            );
        }
    }
    Ok(true)
}

fn cmd_facets(m: u64, format: Format, budget: &Budget) -> Result<bool> {
    let v = build(m)?;
    let facets = enumerate_facets_with(&v, budget)?;
    match format {
        Format::Text => {
            for f in &facets {
                println!("{}", f.to_text());
            }
        }
        Format::Csv => {
            println!("denominator,normal,incident");
            for f in &facets {
                let nums: Vec<String> =
                    f.normal.numerators().iter().map(|x| x.to_string()).collect();
                let inc: Vec<String> = f.incident.iter().map(|i| i.to_string()).collect();
                println!("{},{},{}", f.normal.denominator(), nums.join(" "), inc.join(" "));
            }
        }
        Format::Json => {
            let items: Vec<_> = facets
                .iter()
                .map(|f| {
                    json!({
                        "denominator": f.normal.denominator().to_string(),
                        "normal": f.normal.numerators().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                        "incident": f.incident,
                    })
                })
                .collect();
            println!(
                "{}",
                json!({ "m": m, "dim": v.dim(), "count": facets.len(), "facets": items })
            );
        }
    }
    Ok(true)
}

fn cmd_polynomial(m: u64, strategy: Strategy, format: Format, budget: &Budget) -> Result<bool> {
    let res = coordinator_with(m, strategy, budget)?;
    emit_polynomial(&res, format)?;
    Ok(true)
}

fn emit_polynomial(res: &ClosedFormResult, format: Format) -> Result<()> {
    let m = res.m;
    match format {
        Format::Json => {
            let h = res
                .h
                .as_ref()
                .map(|h| h.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>());
            println!(
                "{}",
                json!({
                    "m": m,
                    "phi": euler_phi(m),
                    "h": h,
                    "provenance": res.provenance.as_str(),
                    "palindromic": res.h.as_ref().map(|h| h.is_palindromic()),
                    "note": res.note,
                })
            );
        }
        Format::Text => {
            println!("m = {m}");
            println!("phi = {}", euler_phi(m));
            println!("provenance = {}", res.provenance.as_str());
            match &res.h {
                Some(h) => {
                    println!("h = {:?}", h.coeffs());
                    println!("palindromic = {}", h.is_palindromic());
                }
                None => println!("h = unavailable"),
            }
            if let Some(note) = &res.note {
                println!("note = {note}");
            }
        }
        Format::Csv => match &res.h {
            Some(h) => {
                println!("j,coefficient");
                for (j, c) in h.coeffs().iter().enumerate() {
                    println!("{j},{c}");
                }
            }
            None => {
                return Err(Error::invalid(format!(
                    "no polynomial to tabulate for m = {m}: {}",
                    res.note.as_deref().unwrap_or("unavailable")
                )))
            }
        },
    }
    Ok(())
}

fn cmd_growth(m: u64, max_n: usize, format: Format, budget: &Budget) -> Result<bool> {
    let v = build(m)?;
    let shells = bfs_shells_with(&v, max_n, budget)?;
    match format {
        Format::Csv => print!("{}", shells.to_csv()),
        Format::Text => {
            for (n, c) in shells.counts.iter().enumerate() {
                println!("{n} {c}");
            }
        }
        Format::Json => {
            println!("{}", json!({ "m": m, "max_n": max_n, "counts": shells.counts }));
        }
    }
    Ok(true)
}

fn cmd_tu(m: u64, format: Format, budget: &Budget) -> Result<bool> {
    let verdict = verdict_for_modulus(m, budget)?;
    match format {
        Format::Json => {
            let witness = verdict.witness.as_ref().map(|w| match w {
                TuWitness::Submatrix { rows, cols, det } => {
                    json!({ "kind": "submatrix", "rows": rows, "cols": cols, "det": det })
                }
                TuWitness::ColumnSplit { cols } => {
                    json!({ "kind": "column_split", "cols": cols })
                }
            });
            println!("{}", json!({ "m": m, "is_tu": verdict.is_tu, "witness": witness }));
        }
        Format::Text => match &verdict.witness {
            None => println!("A_{m} is totally unimodular"),
            Some(TuWitness::Submatrix { rows, cols, det }) => println!(
                "A_{m} is not totally unimodular: submatrix rows {rows:?} cols {cols:?} \
                 has determinant {det}"
            ),
            Some(TuWitness::ColumnSplit { cols }) => println!(
                "A_{m} is not totally unimodular: columns {cols:?} admit no equitable signing"
            ),
        },
        Format::Csv => {
            return Err(Error::invalid("csv output is not defined for the tu command"))
        }
    }
    Ok(true)
}

fn cmd_dual(m: u64, format: Format, budget: &Budget) -> Result<bool> {
    let dec = squarefree_decompose(m)?;
    if dec.power != 1 || dec.prime_factors.len() != 2 {
        return Err(Error::invalid(format!(
            "dual requires m to be a product of two distinct primes, got {m}"
        )));
    }
    let (p, q) = (dec.prime_factors[0].0, dec.prime_factors[1].0);
    let e = enumerate_vertices_2d_with(p, q, budget)?;
    let matched = verify_duality_with(p, q, budget)?;
    match format {
        Format::Json => {
            println!(
                "{}",
                json!({
                    "m": m,
                    "p": p,
                    "q": q,
                    "vertices": e.vertices.len(),
                    "trees": e.tree_count,
                    "matched": matched,
                })
            );
        }
        Format::Text => {
            println!("P({p},{q}): {} vertices from {} spanning trees", e.vertices.len(), e.tree_count);
            println!(
                "facet correspondence with C_{m}: {}",
                if matched { "ok" } else { "MISMATCH" }
            );
        }
        Format::Csv => {
            let header: Vec<String> = (0..p as usize)
                .flat_map(|i| (0..q as usize).map(move |j| format!("e{i}_{j}")))
                .collect();
            println!("{}", header.join(","));
            for v in &e.vertices {
                println!("{}", v.to_csv_row());
            }
        }
    }
    Ok(matched)
}

fn cmd_verify(scope: ScopeArg, format: Format, budget: &Budget) -> Result<bool> {
    let scope = match scope {
        ScopeArg::Fast => Scope::Fast,
        ScopeArg::Full => Scope::Full,
    };
    let report = run_with(scope, budget.clone());
    match format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string(&report).map_err(|e| Error::invalid(e.to_string()))?
            );
        }
        Format::Csv => {
            println!("id,m,status,elapsed_ms");
            for r in &report.records {
                let m = r.m.map_or(String::new(), |m| m.to_string());
                let status = if r.status == cyclolat::verify::CheckStatus::Pass {
                    "pass"
                } else {
                    "fail"
                };
                println!("{},{},{},{}", r.id, m, status, r.elapsed_ms);
            }
        }
    }
    Ok(report.pass)
}
