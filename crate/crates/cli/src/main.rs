//! Verification harness CLI: reproduce the catalog tables, run the check
//! suite, and render reports.
//!
//! Exit codes: 0 = all requested checks pass, 1 = at least one check
//! failed, 2 = usage or internal error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use minrep_core::decomp::{self, Depth};
use minrep_core::gk;
use minrep_core::parabolic::{self, lookup_pair, triple_catalog};
use minrep_core::report::{render_json, render_markdown, CheckResult};
use minrep_core::suite::{self, SuiteConfig};
use minrep_core::zexpr::ZetaModel;
use minrep_core::{fmt_rat, rat, Rat};
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "minrep",
    about = "Exact verification of root-system, intertwining-factor, and residue identities for degenerate Eisenstein series over function fields",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: GlobalOpts,
}

#[derive(Args)]
struct GlobalOpts {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Md)]
    format: Format,
    /// Zeta model, e.g. `q=2,g=1,num=1,0,2`.
    #[arg(long, global = true)]
    zeta: Option<String>,
    /// Only run checks whose id matches this substring/glob.
    #[arg(long, global = true)]
    filter: Option<String>,
    /// Enumeration budget (group elements / weight-orbit nodes).
    #[arg(long, global = true, default_value_t = 10_000_000)]
    budget: u64,
    /// Read the zeta model from a config file with the same `key=value`
    /// syntax as --zeta.
    #[arg(long, global = true)]
    config: Option<String>,
    /// Include per-check wall-clock timings (off by default so reports are
    /// byte-deterministic).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Subcommand)]
enum Command {
    /// Run check sections (or everything).
    Verify {
        /// all | table | gk | v-words | cv1 | relevant | transition | d3 |
        /// expand | sl2 | audit | model
        section: String,
    },
    /// Display catalog data.
    Show {
        #[command(subcommand)]
        what: ShowCmd,
    },
    /// Gindikin-Karpelevich factor computations.
    Gk {
        #[command(subcommand)]
        what: GkCmd,
    },
    /// Constant-term audit of a catalog triple.
    Ct {
        #[command(subcommand)]
        what: CtCmd,
    },
    /// Expansions of the automorphic functionals.
    Decomp {
        #[command(subcommand)]
        what: DecompCmd,
    },
}

#[derive(Subcommand)]
enum ShowCmd {
    /// Positive roots of a system, e.g. `show roots E6`.
    Roots { system: String },
    /// Classification data of a pair, e.g. `show pair E6:D5`.
    Pair { name: String },
    /// Full catalog row of a triple, e.g. `show triple E7:E6`.
    Triple { name: String },
    /// The whole triple catalog as JSON.
    Catalog,
}

#[derive(Subcommand)]
enum GkCmd {
    /// The v0 or v1 factor of a pair: `gk factor E7:E6 v0 [--at 5]`.
    Factor {
        name: String,
        which: String,
        /// Evaluate (or take the residue, at a pole) at this rational s.
        #[arg(long)]
        at: Option<String>,
    },
}

#[derive(Subcommand)]
enum CtCmd {
    /// Audit the constant term of a triple: `ct audit E7:E6`.
    Audit { name: String },
}

#[derive(Subcommand)]
enum DecompCmd {
    /// Expand a functional: `decomp expand D5:D4 --depth full`.
    Expand {
        name: String,
        #[arg(long, default_value = "1")]
        depth: String,
        /// Rewrite boundary legs through transition maps.
        #[arg(long)]
        transitioned: bool,
    },
}

fn parse_rat(s: &str) -> Result<Rat, String> {
    if let Some((n, d)) = s.split_once('/') {
        let n = i64::from_str(n.trim()).map_err(|e| e.to_string())?;
        let d = i64::from_str(d.trim()).map_err(|e| e.to_string())?;
        Ok(Rat::new(n, d))
    } else {
        i64::from_str(s.trim())
            .map(Rat::from_integer)
            .map_err(|e| e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(all_pass) => {
            if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn build_config(opts: &GlobalOpts) -> Result<SuiteConfig, String> {
    let mut cfg = SuiteConfig::default();
    let spec = if let Some(path) = &opts.config {
        let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
        Some(
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .collect::<Vec<_>>()
                .join(","),
        )
    } else {
        opts.zeta.clone()
    };
    if let Some(spec) = spec {
        cfg.model = ZetaModel::parse(&spec).map_err(|e| e.to_string())?;
    }
    cfg.filter = opts.filter.clone();
    cfg.budget = opts.budget;
    Ok(cfg)
}

fn emit_checks(checks: &mut [CheckResult], opts: &GlobalOpts, elapsed_ms: u64) -> bool {
    if opts.timings {
        // One aggregate timing entry keeps per-check output stable.
        if let Some(first) = checks.first_mut() {
            first.duration_ms = Some(elapsed_ms);
        }
    }
    match opts.format {
        Format::Json => print!("{}", render_json(checks)),
        Format::Md => print!("{}", render_markdown(checks)),
    }
    checks.iter().all(|c| c.passed())
}

fn run(cli: Cli) -> Result<bool, String> {
    let opts = &cli.opts;
    match cli.command {
        Command::Verify { section } => {
            let cfg = build_config(opts)?;
            let t0 = Instant::now();
            let mut checks = if section == "all" {
                suite::run_all(&cfg).map_err(|e| e.to_string())?
            } else {
                suite::run_section(&section, &cfg).map_err(|e| e.to_string())?
            };
            let ms = t0.elapsed().as_millis() as u64;
            Ok(emit_checks(&mut checks, opts, ms))
        }
        Command::Show { what } => {
            run_show(what, opts)?;
            Ok(true)
        }
        Command::Gk { what } => run_gk(what, opts),
        Command::Ct { what } => run_ct(what, opts),
        Command::Decomp { what } => {
            run_decomp(what, opts)?;
            Ok(true)
        }
    }
}

fn parse_system(s: &str) -> Result<minrep_core::rootsys::RootSystem, String> {
    use minrep_core::rootsys::{Family, RootSystem};
    let (f, r) = s.split_at(1);
    let family = match f {
        "A" | "a" => Family::A,
        "D" | "d" => Family::D,
        "E" | "e" => Family::E,
        _ => return Err(format!("unknown family {f:?}")),
    };
    let rank: usize = r.parse().map_err(|e| format!("bad rank: {e}"))?;
    RootSystem::build(family, rank).map_err(|e| e.to_string())
}

fn run_show(what: ShowCmd, opts: &GlobalOpts) -> Result<(), String> {
    match what {
        ShowCmd::Roots { system } => {
            let rs = parse_system(&system)?;
            if opts.format == Format::Json {
                let rows: Vec<serde_json::Value> = rs
                    .positive_roots
                    .iter()
                    .map(|r| {
                        serde_json::json!({
                            "coeffs": r.coeffs,
                            "height": r.height(),
                        })
                    })
                    .collect();
                println!("{}", serde_json::to_string_pretty(&rows).unwrap());
            } else {
                println!("| root | height |");
                println!("|---|---|");
                for r in &rs.positive_roots {
                    println!("| {r} | {} |", r.height());
                }
            }
        }
        ShowCmd::Pair { name } => {
            let (rs, beta0, params) = lookup_pair(&name).map_err(|e| e.to_string())?;
            let p = parabolic::classify_pair(&rs, beta0);
            let tb = parabolic::tilde_beta(&p).map_err(|e| e.to_string())?;
            let body = serde_json::json!({
                "pair": name,
                "beta0": beta0,
                "type": format!("{:?}", p.pair_type),
                "dim_v": p.dim_v,
                "heisenberg_n": p.heis_n,
                "grading": p.grading,
                "rho_pairing": fmt_rat(p.rho_pairing),
                "s0": fmt_rat(params.s),
                "d0": fmt_rat(params.d),
                "tilde_beta": tb.root.to_string(),
                "tilde_beta_height": tb.root.height(),
            });
            println!("{}", serde_json::to_string_pretty(&body).unwrap());
        }
        ShowCmd::Triple { name } => {
            let t = triple_catalog(8)
                .into_iter()
                .find(|t| t.name() == name)
                .ok_or_else(|| format!("{name} is not a catalog triple"))?;
            let body = serde_json::json!({
                "triple": format!("{}:{}:{}", t.g_name, t.l_name, t.m_name),
                "beta0": t.beta0,
                "beta1": t.beta1,
                "s0": fmt_rat(t.params0.s),
                "d0": fmt_rat(t.params0.d),
                "s1": fmt_rat(t.params1.s),
                "d1": fmt_rat(t.params1.d),
                "rho_p": fmt_rat(t.rho_p),
                "rho_q": fmt_rat(t.rho_q),
                "v1_word": t.v1_word,
            });
            println!("{}", serde_json::to_string_pretty(&body).unwrap());
        }
        ShowCmd::Catalog => {
            println!(
                "{}",
                serde_json::to_string_pretty(&parabolic::catalog_json(8)).unwrap()
            );
        }
    }
    Ok(())
}

fn run_gk(what: GkCmd, _opts: &GlobalOpts) -> Result<bool, String> {
    match what {
        GkCmd::Factor { name, which, at } => {
            let (rs, beta0, params) = lookup_pair(&name).map_err(|e| e.to_string())?;
            let expr = match which.as_str() {
                "v0" => gk::c_v0_factor(&rs, beta0).map_err(|e| e.to_string())?,
                "v1" => {
                    let t = triple_catalog(8)
                        .into_iter()
                        .find(|t| t.name() == name)
                        .ok_or_else(|| format!("{name} has no v1 data (not a triple)"))?;
                    let d = parabolic::distinguished_elements(&t).map_err(|e| e.to_string())?;
                    let chi = gk::chi_series(&t.rs, &t.levi_l_prime(), t.beta0_prime());
                    gk::gk_factor(&t.rs, &d.v1, &chi)
                }
                other => return Err(format!("expected v0 or v1, got {other:?}")),
            };
            println!("c_{which}(s) = {expr}");
            if let Some(at) = at {
                let s0 = parse_rat(&at)?;
                let info = expr.pole_order(s0);
                println!("order at s={}: {}", fmt_rat(s0), info.order);
                match info.order {
                    0 => println!(
                        "value: {}",
                        expr.eval_at(s0).map_err(|e| e.to_string())?
                    ),
                    -1 => println!(
                        "residue: {}",
                        expr.residue_const(s0).map_err(|e| e.to_string())?
                    ),
                    _ => {
                        let series = expr.laurent(s0).map_err(|e| e.to_string())?;
                        println!("laurent: {series}");
                    }
                }
            } else if params.s > rat(0) {
                println!("pole order at s0={}: {}", fmt_rat(params.s), expr.pole_order(params.s).order);
            }
            Ok(true)
        }
    }
}

fn run_ct(what: CtCmd, opts: &GlobalOpts) -> Result<bool, String> {
    match what {
        CtCmd::Audit { name } => {
            let t = triple_catalog(8)
                .into_iter()
                .find(|t| t.name() == name)
                .ok_or_else(|| format!("{name} is not a catalog triple"))?;
            let reports = gk::ct_audit(&t, opts.budget).map_err(|e| e.to_string())?;
            if opts.format == Format::Json {
                let rows: Vec<serde_json::Value> = reports
                    .iter()
                    .map(|r| {
                        serde_json::json!({
                            "w": r.w.to_string(),
                            "length": r.w.length(),
                            "class": r.class,
                            "q_levi": r.q_levi,
                            "c_w": r.c_w.to_string(),
                            "pole_order_at_s0": r.pole_order_at_s0,
                            "shift_at_s0": r.s_shift.as_ref().map(|a| fmt_rat(a.value_at(t.params0.s))),
                        })
                    })
                    .collect();
                println!("{}", serde_json::to_string_pretty(&rows).unwrap());
            } else {
                println!("| w | len | class | c_w | order | shift(s0) |");
                println!("|---|---|---|---|---|---|");
                for r in &reports {
                    println!(
                        "| {} | {} | {:?} | {} | {} | {} |",
                        r.w,
                        r.w.length(),
                        r.class,
                        r.c_w,
                        r.pole_order_at_s0,
                        r.s_shift
                            .as_ref()
                            .map(|a| fmt_rat(a.value_at(t.params0.s)))
                            .unwrap_or_else(|| "-".into()),
                    );
                }
            }
            Ok(true)
        }
    }
}

fn run_decomp(what: DecompCmd, opts: &GlobalOpts) -> Result<(), String> {
    match what {
        DecompCmd::Expand {
            name,
            depth,
            transitioned,
        } => {
            let d = if depth == "full" {
                Depth::Full
            } else {
                Depth::Levels(depth.parse().map_err(|e| format!("bad depth: {e}"))?)
            };
            let tree =
                decomp::expand_theta(&name, d, transitioned).map_err(|e| e.to_string())?;
            if opts.format == Format::Json {
                println!("{}", serde_json::to_string_pretty(&tree.to_json()).unwrap());
            } else {
                println!("{}", tree.render());
            }
            Ok(())
        }
    }
}
