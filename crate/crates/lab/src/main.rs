//! pcat-lab: build p-subgroup categories, compute their exact Euler data
//! and truncated nerve homology, run the spectral-sequence computations,
//! and orchestrate the verification suites.

use std::process::ExitCode;

use anyhow::{anyhow, Result};
use clap::{Args, Parser, Subcommand};
use pcat_core::flavors::{Flavor, ObjectFilter, SubgroupContext};
use pcat_core::nerve::FieldSpec;
use pcat_core::spectral::e1_e2_pages;
use serde_json::json;

use pcat_lab::checks::{euler_report_json, homology_report_json};
use pcat_lab::config::SuiteConfig;
use pcat_lab::report::{emit, EmitFormat, SuiteReport};
use pcat_lab::{catalog, suite};

#[derive(Parser)]
#[command(name = "pcat-lab", version, about = "p-subgroup category laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in groups.
    Catalog {
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Exact weighting, coweighting, and Euler characteristic of one
    /// category.
    Euler(CategoryArgs),
    /// Truncated nerve homology of one category.
    Homology {
        #[command(flatten)]
        category: CategoryArgs,
        #[arg(long)]
        dmax: Option<usize>,
        /// Comma-separated fields, e.g. `q,f2`.
        #[arg(long, default_value = "q,f2")]
        fields: String,
    },
    /// Flag-complex pages for an elementary abelian group.
    Spectral {
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, default_value_t = 2)]
        prime: u8,
        #[arg(long, default_value_t = 4)]
        tmax: usize,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Run the verification suites.
    Suite {
        /// JSON configuration file; defaults cover the whole catalog.
        #[arg(long)]
        config: Option<String>,
        #[arg(long, default_value = "text")]
        format: String,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<String>,
        /// Include wall-clock timings in the report.
        #[arg(long, default_value_t = false)]
        timing: bool,
    },
}

#[derive(Args)]
struct CategoryArgs {
    /// Catalog name or group file path.
    #[arg(long)]
    group: String,
    #[arg(long)]
    prime: usize,
    /// One of s|t|l|f|o|ftilde.
    #[arg(long, default_value = "s")]
    flavor: String,
    /// One of all|star|star-eab|sfc|sfc-rad|rad|star-rad|interval:[1,P)|interval:(1,P).
    #[arg(long, default_value = "star")]
    filter: String,
    #[arg(long, default_value = "json")]
    format: String,
}

fn parse_filter(s: &str, ctx: &SubgroupContext) -> Result<ObjectFilter> {
    Ok(match s.to_ascii_lowercase().as_str() {
        "all" => ObjectFilter::All,
        "star" => ObjectFilter::Star,
        "star-eab" => ObjectFilter::StarEab,
        "sfc" => ObjectFilter::Sfc,
        "sfc-rad" => ObjectFilter::SfcRad,
        "rad" => ObjectFilter::Rad,
        "star-rad" => ObjectFilter::StarRad,
        "interval:[1,p)" => ctx.proper_interval(true)?,
        "interval:(1,p)" => ctx.proper_interval(false)?,
        other => return Err(anyhow!("unknown filter: {other}")),
    })
}

fn build_category(args: &CategoryArgs, cfg: &SuiteConfig) -> Result<(SubgroupContext, pcat_core::flavors::BuiltCategory)> {
    let group = catalog::resolve(&args.group, cfg.element_cap)?;
    let ctx = SubgroupContext::with_cap(&group, args.prime, cfg.subgroup_cap)?;
    let flavor = Flavor::parse(&args.flavor).ok_or_else(|| anyhow!("unknown flavor: {}", args.flavor))?;
    let filter = parse_filter(&args.filter, &ctx)?;
    let built = ctx.build(flavor, &filter)?;
    Ok((ctx, built))
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run() -> Result<ExitCode> {
    let cli = Cli::parse();
    let mut cfg = SuiteConfig::default();
    cfg.apply_env();
    match cli.command {
        Command::Catalog { format } => {
            if format == "json" {
                let entries: Vec<serde_json::Value> = catalog::CATALOG
                    .iter()
                    .map(|e| {
                        json!({
                            "name": e.name,
                            "description": e.description,
                            "degree": e.degree,
                            "order": e.order,
                            "generators": e.generators,
                            "primes": e.primes,
                        })
                    })
                    .collect();
                println!("{}", serde_json::to_string_pretty(&json!(entries))?);
            } else {
                for e in catalog::CATALOG {
                    println!(
                        "{:<8} order {:<4} degree {:<3} {}",
                        e.name, e.order, e.degree, e.description
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Euler(args) => {
            let (_ctx, built) = build_category(&args, &cfg)?;
            let report = euler_report_json(&built)?;
            if args.format == "text" {
                println!("category: {}", report["category"].as_str().unwrap_or("?"));
                println!("zeta: {}", report["zeta"]);
                println!("weighting: {}", report["weighting"]);
                println!("coweighting: {}", report["coweighting"]);
                println!("chi: {}  chi_reduced: {}", report["chi"], report["chi_reduced"]);
            } else {
                println!("{}", serde_json::to_string_pretty(&report)?);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Homology { category, dmax, fields } => {
            let (_ctx, built) = build_category(&category, &cfg)?;
            let fields: Vec<FieldSpec> = fields
                .split(',')
                .map(|s| FieldSpec::parse(s).ok_or_else(|| anyhow!("unknown field: {s}")))
                .collect::<Result<_>>()?;
            let dmax = dmax.unwrap_or_else(|| default_dmax(built.flavor, built.cat.object_count()));
            let report = homology_report_json(&built, dmax, &fields, cfg.chain_budget)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Spectral { rank, prime, tmax, format } => {
            let pages = e1_e2_pages(rank, prime, tmax, cfg.bar_budget)?;
            if format == "csv" {
                println!("page,s,t,dim");
                for s in 0..=pages.smax {
                    for t in 0..=tmax {
                        println!("e1,{s},{t},{}", pages.e1[s][t]);
                    }
                }
                for s in 0..=pages.smax {
                    for t in 0..=tmax {
                        println!("e2,{s},{t},{}", pages.e2[s][t]);
                    }
                }
            } else {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "rank": rank,
                        "prime": prime,
                        "tmax": tmax,
                        "flags_per_length": pages.flags.iter().map(|f| f.len()).collect::<Vec<_>>(),
                        "e1": pages.e1,
                        "e2": pages.e2,
                    }))?
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Suite { config, format, out, timing } => {
            let mut cfg = match config {
                Some(path) => SuiteConfig::from_json(&std::fs::read_to_string(path)?)?,
                None => {
                    let mut c = SuiteConfig::default();
                    c.apply_env();
                    c
                }
            };
            cfg.timing = cfg.timing || timing;
            let format = EmitFormat::parse(&format).ok_or_else(|| anyhow!("unknown format: {format}"))?;
            let report: SuiteReport = suite::run_suite(&cfg);
            let text = emit(&report, format, cfg.timing);
            match out {
                Some(path) => std::fs::write(path, text)?,
                None => print!("{text}"),
            }
            Ok(if report.any_failure() {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            })
        }
    }
}

fn default_dmax(flavor: Flavor, object_count: usize) -> usize {
    match flavor {
        Flavor::S => 4,
        Flavor::F | Flavor::O | Flavor::FTilde => 3,
        // transporter/linking nerves grow fastest; back off on big inputs
        Flavor::T | Flavor::L => {
            if object_count > 6 {
                2
            } else {
                3
            }
        }
    }
}
