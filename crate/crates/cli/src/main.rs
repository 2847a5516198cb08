use std::fmt::Write as _;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use flatsg::arith::{fmt_rational, Int};
use flatsg::decomposition::{self, QuotientCertificate};
use flatsg::flat_rep::{self, CanonicalRepresentative};
use flatsg::flatness::{self, FlatPresentation};
use flatsg::format::{self, CertificateRecord, GraphRecord};
use flatsg::seifert;
use flatsg::semigroup::{build_semigroup, GeneratorSet, NumericalSemigroup};

#[derive(Parser)]
#[command(name = "flatsg", version, about = "Numerical semigroups of Seifert star-shaped graphs")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Suppress log output on stderr.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Frobenius number, gaps, symmetry and flatness of G(GENS).
    Semigroup {
        /// Generators as integers or a single `G(a,b,...)`.
        #[arg(required = true)]
        gens: Vec<String>,
    },
    /// Flatness class of G(GENS).
    Classify {
        #[arg(required = true)]
        gens: Vec<String>,
    },
    /// Graph invariants.
    Graph {
        #[command(subcommand)]
        what: GraphCommand,
    },
    /// Canonical representative of a flat presentation.
    Represent {
        /// Pairwise coprime alphas, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// Multiplicities, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
    /// Write S of a graph as a flat semigroup divided by an integer.
    Decompose {
        /// `sf(...)` text, or a file holding it or a JSON graph record.
        graph: String,
    },
    /// The quotient G(GENS)/K.
    Quotient {
        #[arg(required = true)]
        gens: Vec<String>,
        #[arg(long)]
        by: u64,
    },
    /// Re-check a certificate file written by `decompose --format json`.
    Verify { certfile: std::path::PathBuf },
}

#[derive(Subcommand)]
enum GraphCommand {
    /// e, alpha, h, o, gamma, Gorenstein flag and Z_K.
    Info { graph: String },
    /// The semigroup S of the graph.
    Semigroup { graph: String },
    /// Frobenius number of S and the derived s-check value.
    Frobenius { graph: String },
    /// The anti-canonical cycle Z_K.
    Zk { graph: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut logger = env_logger::Builder::new();
    logger.filter_level(log::LevelFilter::Warn).parse_env("FLATSG_LOG").format_timestamp(None);
    if cli.quiet {
        logger.filter_level(log::LevelFilter::Off);
    }
    logger.init();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            let parse = err
                .downcast_ref::<flatsg::Error>()
                .is_some_and(flatsg::Error::is_parse_error);
            ExitCode::from(if parse { 2 } else { 1 })
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<String> {
    let json = cli.format == Format::Json;
    let out = match &cli.command {
        Command::Semigroup { gens } => semigroup_report(&semigroup_arg(gens)?, json)?,
        Command::Classify { gens } => {
            let class = flatness::classify(&generators_arg(gens)?)?;
            if json {
                render_json(&json!({ "class": class.name() }))
            } else {
                format!("{class}\n")
            }
        }
        Command::Graph { what } => graph_command(what, json)?,
        Command::Represent { alpha, s } => {
            let p = FlatPresentation::new(format::parse_int_list(alpha)?, format::parse_int_list(s)?)?;
            represent_report(&p, json)?
        }
        Command::Decompose { graph } => {
            let g = graph_arg(graph)?;
            let cert = decomposition::decompose(&g)?;
            log::info!("decomposed {g} with divisor {}", cert.divisor);
            certificate_report(&cert, json)?
        }
        Command::Quotient { gens, by } => {
            let q = semigroup_arg(gens)?.quotient(*by)?;
            if json {
                render_json(&json!({ "generators": q.minimal_generators() }))
            } else {
                format!("{q}\n")
            }
        }
        Command::Verify { certfile } => {
            let text = std::fs::read_to_string(certfile)
                .with_context(|| format!("reading {}", certfile.display()))?;
            let cert = format::parse_certificate(&text)?.to_certificate()?;
            cert.verify()?;
            if json {
                render_json(&CertificateRecord::from_certificate(&cert, true))
            } else {
                format!("verified: {} = {}/{}\n", quotient_text(&cert)?, cert.flat, cert.divisor)
            }
        }
    };
    Ok(out)
}

fn generators_arg(args: &[String]) -> flatsg::Result<GeneratorSet> {
    if let [one] = args {
        if one.trim_start().starts_with('G') {
            return format::parse_semigroup(one);
        }
    }
    let mut values = Vec::with_capacity(args.len());
    for a in args {
        values.extend(format::parse_int_list(a)?);
    }
    GeneratorSet::from_ints(&values)
}

/// A graph given inline or as a path to a text or JSON record file.
fn graph_arg(arg: &str) -> anyhow::Result<flatsg::SSRGraph> {
    let path = std::path::Path::new(arg);
    if !arg.trim_start().starts_with("sf(") && path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        return Ok(format::parse_graph(&text)?);
    }
    Ok(format::parse_graph(arg)?)
}

fn semigroup_arg(args: &[String]) -> flatsg::Result<NumericalSemigroup> {
    build_semigroup(&generators_arg(args)?)
}

fn render_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("records serialize");
    s.push('\n');
    s
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn semigroup_report(s: &NumericalSemigroup, json: bool) -> anyhow::Result<String> {
    let class = flatness::classify_semigroup(s);
    if json {
        return Ok(render_json(&json!({
            "generators": s.minimal_generators(),
            "frobenius": s.frobenius(),
            "genus": s.genus(),
            "gaps": s.gaps(),
            "symmetric": s.is_symmetric(),
            "class": class.name(),
        })));
    }
    let mut out = String::new();
    writeln!(out, "{s}")?;
    writeln!(out, "frobenius: {}", s.frobenius())?;
    writeln!(out, "genus: {}", s.genus())?;
    writeln!(out, "gaps: {}", join(s.gaps(), ","))?;
    writeln!(out, "symmetric: {}", s.is_symmetric())?;
    writeln!(out, "class: {class}")?;
    Ok(out)
}

fn rationals(v: &[flatsg::arith::Rational]) -> Vec<String> {
    v.iter().map(fmt_rational).collect()
}

fn graph_command(what: &GraphCommand, json: bool) -> anyhow::Result<String> {
    let (GraphCommand::Info { graph }
    | GraphCommand::Semigroup { graph }
    | GraphCommand::Frobenius { graph }
    | GraphCommand::Zk { graph }) = what;
    let g = graph_arg(graph)?;
    Ok(match what {
        GraphCommand::Info { .. } => {
            let inv = seifert::graph_invariants(&g)?;
            let gor = seifert::is_numerically_gorenstein(&g)?;
            let zk = rationals(&seifert::graph_z_k(&g)?);
            if json {
                render_json(&json!({
                    "graph": GraphRecord::from_graph(&g),
                    "e": fmt_rational(&inv.e),
                    "alpha": inv.alpha_lcm,
                    "h": inv.h,
                    "o": inv.o,
                    "gamma": fmt_rational(&inv.gamma),
                    "legs": inv.d,
                    "numerically_gorenstein": gor,
                    "z_k": zk,
                }))
            } else {
                let mut out = String::new();
                writeln!(out, "graph: {g}")?;
                writeln!(out, "e: {}", fmt_rational(&inv.e))?;
                writeln!(out, "alpha: {}", inv.alpha_lcm)?;
                writeln!(out, "h: {}", inv.h)?;
                writeln!(out, "o: {}", inv.o)?;
                writeln!(out, "gamma: {}", fmt_rational(&inv.gamma))?;
                writeln!(out, "legs: {}", inv.d)?;
                writeln!(out, "numerically Gorenstein: {gor}")?;
                writeln!(out, "Z_K: ({})", zk.join(","))?;
                out
            }
        }
        GraphCommand::Semigroup { .. } => {
            let s = seifert::semigroup_of_graph(&g)?;
            let class = flatness::classify_semigroup(&s);
            if json {
                render_json(&json!({
                    "generators": s.minimal_generators(),
                    "frobenius": s.frobenius(),
                    "symmetric": s.is_symmetric(),
                    "class": class.name(),
                }))
            } else {
                let sym = if s.is_symmetric() { "symmetric" } else { "not symmetric" };
                format!("{s}, {sym}, {class}\n")
            }
        }
        GraphCommand::Frobenius { .. } => {
            let r = seifert::frobenius_of_graph(&g)?;
            if json {
                render_json(&json!({ "frobenius": r.f, "check_s": fmt_rational(&r.check_s) }))
            } else {
                format!("frobenius: {}\ncheck_s: {}\n", r.f, fmt_rational(&r.check_s))
            }
        }
        GraphCommand::Zk { .. } => {
            let zk = rationals(&seifert::graph_z_k(&g)?);
            if json {
                render_json(&json!({ "z_k": zk }))
            } else {
                format!("({})\n", zk.join(","))
            }
        }
    })
}

fn represent_report(p: &FlatPresentation, json: bool) -> anyhow::Result<String> {
    let c: CanonicalRepresentative = flat_rep::canonical_representative(p)?;
    c.verify()?;
    let s = p.semigroup()?;
    let h = flat_rep::h_group(&c)?;
    let cover = flat_rep::abelian_cover_data(&c)?;
    let icis = flat_rep::icis_equations(&c);
    if json {
        let equations = match &icis {
            Ok(sys) => json!({
                "case": sys.case.to_string(),
                "variables": sys.variables,
                "equations": sys.equations.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            }),
            Err(e) => Value::String(e.to_string()),
        };
        return Ok(render_json(&json!({
            "presentation": format::FlatRecord::from_presentation(p),
            "semigroup": s.minimal_generators(),
            "graph": GraphRecord::from_graph(&c.graph),
            "frobenius": s.frobenius(),
            "h_group": h,
            "cover": {
                "genus": fmt_rational(&cover.genus),
                "euler": fmt_rational(&cover.euler),
                "legs": cover.legs.iter().map(|l| json!({"alpha": l.alpha, "omega": l.omega, "mult": l.mult})).collect::<Vec<_>>(),
            },
            "icis": equations,
        })));
    }
    let mut out = String::new();
    writeln!(out, "presentation: {p}")?;
    writeln!(out, "semigroup: {s}")?;
    writeln!(out, "graph: {}", c.graph)?;
    writeln!(out, "frobenius: {}", s.frobenius())?;
    writeln!(out, "H: {}", flat_rep::fmt_h_group(&h))?;
    writeln!(out, "cover genus: {}", fmt_rational(&cover.genus))?;
    writeln!(out, "cover euler number: {}", fmt_rational(&cover.euler))?;
    writeln!(out, "cover legs: {}", if cover.legs.is_empty() { "none".into() } else { join(&cover.legs, ", ") })?;
    match icis {
        Ok(sys) => write!(out, "equations: {sys}")?,
        Err(e) => writeln!(out, "equations: {e}")?,
    }
    Ok(out)
}

fn quotient_text(cert: &QuotientCertificate) -> anyhow::Result<String> {
    Ok(cert.quotient_semigroup()?.to_string())
}

fn certificate_report(cert: &QuotientCertificate, json: bool) -> anyhow::Result<String> {
    if json {
        return Ok(render_json(&CertificateRecord::from_certificate(cert, true)));
    }
    let gens: Vec<Int> = cert.flat.generators()?;
    let mut out = String::new();
    writeln!(out, "graph: {}", cert.graph)?;
    writeln!(out, "semigroup: {}", quotient_text(cert)?)?;
    writeln!(out, "perturbed graph: {}", cert.perturbed_graph)?;
    writeln!(out, "flat: {} = G({})", cert.flat, join(gens, ","))?;
    writeln!(out, "divisor: {}", cert.divisor)?;
    writeln!(out, "canonical graph: {}", cert.tilde_graph)?;
    Ok(out)
}
