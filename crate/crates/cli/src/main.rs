//! `integra`: bounds, decisions and reductions for integrals of finite groups.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use integra::abelian::format_factors;
use integra::enumeration::{EnumerationConfig, DEFAULT_ORDER_CAP};
use integra::format::{load_group, write_table};
use integra::integrability::{bound_parts, lemma_suite, verify_thm21, ClauseStatus, LemmaReport};
use integra::iso::{isomorphic, DEFAULT_AUT_CAP};
use integra::{decide, reduce_integral, Enumerator, Error, Fingerprint, GroupTable};

const EXIT_ERROR: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "integra", version, about = "Integrals of finite groups: H with [H,H] ≅ G")]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
struct RunConfig {
    /// Largest order `decide` scans (it never goes past the bound or 63).
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Stop listing automorphisms past this many.
    #[arg(long, global = true, default_value_t = DEFAULT_AUT_CAP, value_parser = positive)]
    aut_cap: usize,
    /// Directory holding `<n>.grp` catalog files.
    #[arg(long, global = true, env = "INTEGRA_CATALOG")]
    catalog: Option<PathBuf>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_parser = positive)]
    jobs: Option<usize>,
    /// Include Cayley tables of result groups in the output.
    #[arg(long, global = true)]
    emit_table: bool,
    /// Admit order 60 by adding A5 to the enumeration.
    #[arg(long, global = true)]
    a5: bool,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print (|Aut G| |Z(G)|^(2 mu(G)))^(d(Z(G)) + 1) and its ingredients.
    Bound { file: PathBuf },
    /// Decide integrability. Exit 0 integrable, 1 not integrable, 2 inconclusive.
    Decide { file: PathBuf },
    /// Reduce an integral H to a bounded one with the same derived subgroup.
    Reduce { file: PathBuf },
    /// Check the structural lemma clauses on H.
    Check { file: PathBuf },
    /// List all groups of one order.
    Enumerate {
        #[arg(long)]
        order: usize,
    },
    /// Test two groups for isomorphism. Exit 0 isomorphic, 1 not.
    Iso { first: PathBuf, second: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.run.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_ERROR);
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn load(path: &Path) -> Result<GroupTable, String> {
    load_group(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn enumerator(run: &RunConfig) -> Enumerator {
    Enumerator::new(EnumerationConfig {
        order_cap: DEFAULT_ORDER_CAP,
        include_a5: run.a5,
        aut_cap: run.aut_cap,
        catalog_dir: run.catalog.clone(),
    })
}

fn envelope(run: &RunConfig, command: &str, body: Value) -> Value {
    json!({
        "tool": "integra",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "config": run,
        "result": body,
    })
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn run(cli: &Cli) -> Result<u8, String> {
    let run = &cli.run;
    let err = |e: Error| e.to_string();
    match &cli.command {
        Command::Bound { file } => {
            let g = load(file)?;
            let p = bound_parts(&g);
            if run.json {
                print_json(&envelope(run, "bound", json!({ "order": g.order(), "parts": p })));
            } else {
                println!(
                    "bound = {} (aut={}, z={}, mu={}, d={})",
                    p.bound, p.aut_order, p.center_order, p.mu, p.center_rank
                );
            }
            Ok(0)
        }
        Command::Decide { file } => {
            let g = load(file)?;
            let mut e = enumerator(run);
            let start = Instant::now();
            let out = decide(&g, run.cap, &mut e).map_err(err)?;
            let secs = start.elapsed().as_secs_f64();
            let w = out.witness.as_ref();
            if run.json {
                let body = json!({
                    "verdict": out.verdict,
                    "bound": out.bound.to_string(),
                    "witness_order": w.map(|w| w.group.order()),
                    "witness_catalog_index": w.map(|w| w.catalog_index),
                    "witness_table": w.filter(|_| run.emit_table).map(|w| write_table(&w.group)),
                    "searched_orders": out.searched_orders,
                    "cap_applied": out.cap_applied.as_ref().map(|c| c.to_string()),
                    "reason": out.reason,
                    "timings": { "total_seconds": secs },
                });
                print_json(&envelope(run, "decide", body));
            } else {
                println!("verdict: {:?}", out.verdict);
                println!("bound = {}", out.bound);
                let orders: Vec<String> = out.searched_orders.iter().map(usize::to_string).collect();
                println!("searched orders: {}", if orders.is_empty() { "none".into() } else { orders.join(", ") });
                if let Some(w) = w {
                    println!("witness: order {} (catalog position {})", w.group.order(), w.catalog_index);
                    if run.emit_table {
                        print!("{}", write_table(&w.group));
                    }
                }
                if let Some(c) = &out.cap_applied {
                    println!("stopped at order {c}: {}", out.reason.as_deref().unwrap_or("cap"));
                }
                println!("time: {secs:.3}s");
            }
            Ok(out.verdict.exit_code() as u8)
        }
        Command::Reduce { file } => {
            let h = load(file)?;
            let r = reduce_integral(&h).map_err(err)?;
            let rep = &r.report;
            if run.json {
                let mut body = serde_json::to_value(rep).expect("serializable");
                if run.emit_table {
                    body["table"] = Value::String(write_table(&r.group));
                }
                print_json(&envelope(run, "reduce", body));
            } else {
                println!("input: order {}, derived {}", rep.input_order, rep.input_derived);
                println!("centre: {} (order {}), alpha = |H/Z(H)| = {}", format_factors(&rep.center_factors), rep.center_order, rep.alpha);
                println!("enlarged kernel X: {}", format_factors(&rep.x_factors));
                println!("Omega_alpha(X): order {}", rep.omega_order);
                println!("Q: order {}, derived {}", rep.output_order, rep.output_derived);
                println!(
                    "|Q| <= |H/Z(H)|^(d(Z(H))+1) = {}: {}",
                    rep.size_bound,
                    if rep.bound_holds { "holds" } else { "VIOLATED" }
                );
                if run.emit_table {
                    print!("{}", write_table(&r.group));
                }
            }
            Ok(0)
        }
        Command::Check { file } => {
            let h = load(file)?;
            let lemmas = lemma_suite(&h, run.aut_cap).map_err(err)?;
            let (g, _) = h.subgroup_table(&h.commutator_subgroup());
            let thm = verify_thm21(&h, &g).map_err(err)?;
            let failed = lemmas.failures().count();
            if run.json {
                print_json(&envelope(run, "check", json!({ "lemmas": lemmas, "theorem21_diagnostic": thm })));
            } else {
                print_report(&lemmas);
                println!("-- diagnostic: the guaranteed properties of some integral (may fail for this one)");
                print_report(&thm);
            }
            Ok(if failed == 0 { 0 } else { 1 })
        }
        Command::Enumerate { order } => {
            let mut e = enumerator(run);
            let entries = e.groups_of_order(*order).map_err(err)?;
            if run.json {
                let list: Vec<Value> = entries
                    .iter()
                    .enumerate()
                    .map(|(i, c)| {
                        let mut v = json!({
                            "index": i,
                            "provenance": c.provenance,
                            "fingerprint": c.fingerprint,
                        });
                        if run.emit_table {
                            v["table"] = Value::String(write_table(&c.group));
                        }
                        v
                    })
                    .collect();
                print_json(&envelope(run, "enumerate", json!({ "order": order, "count": list.len(), "entries": list })));
            } else {
                println!("{} groups of order {order}", entries.len());
                for (i, c) in entries.iter().enumerate() {
                    let f = &c.fingerprint;
                    println!(
                        "{i:3}  {:<16}  abelian={:<5}  |Z|={:<3}  derived series {:?}  exponent {}",
                        c.provenance.tag(),
                        f.abelian,
                        f.center_order,
                        f.derived_series,
                        f.exponent
                    );
                    if run.emit_table {
                        print!("{}", write_table(&c.group));
                    }
                }
            }
            Ok(0)
        }
        Command::Iso { first, second } => {
            let a = load(first)?;
            let b = load(second)?;
            let (fa, fb) = (Fingerprint::of(&a), Fingerprint::of(&b));
            let verdict = match fa.first_difference(&fb) {
                Some(why) => Err(why.to_string()),
                None => isomorphic(&a, &b).ok_or_else(|| "no isomorphism exists".to_string()),
            };
            if run.json {
                let body = match &verdict {
                    Ok(h) => json!({ "isomorphic": true, "map": h.image() }),
                    Err(why) => json!({ "isomorphic": false, "reason": why }),
                };
                print_json(&envelope(run, "iso", body));
            } else {
                match &verdict {
                    Ok(h) => {
                        println!("isomorphic");
                        let pairs: Vec<String> = h.image().iter().enumerate().map(|(x, y)| format!("{x}->{y}")).collect();
                        println!("map: {}", pairs.join(" "));
                    }
                    Err(why) => println!("non-isomorphic ({why})"),
                }
            }
            Ok(if verdict.is_ok() { 0 } else { 1 })
        }
    }
}

fn print_report(r: &LemmaReport) {
    for c in &r.clauses {
        let tag = match c.status {
            ClauseStatus::Pass => "PASS",
            ClauseStatus::Fail => "FAIL",
            ClauseStatus::Skipped => "SKIP",
        };
        println!("{tag} {:<11} {}", c.name, c.detail);
    }
}
