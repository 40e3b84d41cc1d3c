//! The `evoalg` command line.
//!
//! Exit codes: 0 success, 1 input error, 2 unclassifiable, 3 verification
//! failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::cea::verify::verify_ck_sampled;
use crate::cea::{property_diagram, CeaConfig, CellLabel};
use crate::classify::{classify_with_options, AlgebraClass, ClassifyError, IsoOptions, Tag};
use crate::matrix::StructureMatrix;
use crate::rb::Weight;
use crate::rotabaxter::exclusions::control;
use crate::rotabaxter::verify::verify_alternate;
use crate::rotabaxter::{
    annotate, catalog, derive_system, points_to_csv, reports_to_csv, search, table, verify_all,
    verify_exclusions, RboFamily, SearchOptions, SymbolicAlgebra, VerifyOptions,
};
use crate::scalar::{format_scalar, Field};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_UNCLASSIFIABLE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "evoalg",
    version,
    about = "Evolution algebras: classification, chains, Rota-Baxter operators"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Seed for every random choice.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Pass/fail or convergence tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Samples per check.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Starts for multi-start searches.
    #[arg(long, global = true)]
    starts: Option<usize>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Output file (a path prefix for `cea diagram`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a 2-dimensional algebra given as a matrix file.
    Classify {
        file: PathBuf,
        #[arg(long, default_value = "complex")]
        field: Field,
    },
    /// Chains of evolution algebras.
    #[command(subcommand)]
    Cea(CeaCommand),
    /// Rota-Baxter operators.
    #[command(subcommand)]
    Rbo(RboCommand),
}

#[derive(Debug, Subcommand)]
enum CeaCommand {
    /// Sampled Chapman-Kolmogorov check.
    Verify { config: PathBuf },
    /// Property diagram as CSV and SVG.
    Diagram {
        config: PathBuf,
        #[arg(long)]
        resolution: Option<usize>,
    },
}

#[derive(Debug, Args)]
struct AlgebraArg {
    /// `E2`, `E5(0,0.25)`, `E6(0)`, `E0`, ...
    #[arg(long)]
    algebra: Option<String>,
    /// Matrix file instead of `--algebra`.
    #[arg(long, conflicts_with = "algebra")]
    matrix: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum RboCommand {
    /// Verify table families by sampling.
    Verify {
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long)]
        weight: Option<Weight>,
    },
    /// Multi-start numeric search for operators.
    Search {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long)]
        weight: Weight,
    },
    /// Print the polynomial system for an algebra.
    Systems {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long)]
        weight: Weight,
    },
    /// List table families.
    Catalog {
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long)]
        weight: Option<Weight>,
    },
    /// Re-check candidates rejected by the case analysis.
    Exclusions,
}

struct Failure {
    code: i32,
    msg: String,
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure {
        code: EXIT_INPUT,
        msg: e.to_string(),
    }
}

type Outcome = Result<i32, Failure>;

/// Entry point for the binary.
pub fn main_exit_code() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Runs one command line, writing reports to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let pool = match cli.common.jobs {
        Some(0) => {
            let _ = writeln!(err, "error: --jobs must be at least 1");
            return EXIT_INPUT;
        }
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    };
    let pool = match pool {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INPUT;
        }
    };
    let mut buf: Vec<u8> = Vec::new();
    let result = pool.install(|| dispatch(&cli, &mut buf));
    let _ = out.write_all(&buf);
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let c = &cli.common;
    if let Some(tol) = c.tol {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(input(format!("--tol must be positive, got {tol}")));
        }
    }
    match &cli.command {
        Command::Classify { file, field } => cmd_classify(c, file, *field, out),
        Command::Cea(CeaCommand::Verify { config }) => cmd_cea_verify(c, config, out),
        Command::Cea(CeaCommand::Diagram { config, resolution }) => {
            cmd_cea_diagram(c, config, *resolution, out)
        }
        Command::Rbo(RboCommand::Verify { algebra, weight }) => {
            cmd_rbo_verify(c, algebra.as_deref(), *weight, out)
        }
        Command::Rbo(RboCommand::Search { algebra, weight }) => {
            cmd_rbo_search(c, algebra, *weight, out)
        }
        Command::Rbo(RboCommand::Systems { algebra, weight }) => {
            cmd_rbo_systems(c, algebra, *weight, out)
        }
        Command::Rbo(RboCommand::Catalog { algebra, weight }) => {
            cmd_rbo_catalog(algebra.as_deref(), *weight, out)
        }
        Command::Rbo(RboCommand::Exclusions) => cmd_rbo_exclusions(out),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn say(out: &mut dyn Write, text: std::fmt::Arguments<'_>) -> Result<(), Failure> {
    out.write_fmt(text)
        .and_then(|_| out.write_all(b"\n"))
        .map_err(input)
}

macro_rules! say {
    ($out:expr, $($arg:tt)*) => { say($out, format_args!($($arg)*))? };
}

fn cmd_classify(c: &Common, file: &Path, field: Field, out: &mut dyn Write) -> Outcome {
    let a = StructureMatrix::parse(&read(file)?).map_err(input)?;
    let mut opts = IsoOptions::new(field);
    opts.seed = c.seed.unwrap_or(0);
    if let Some(s) = c.starts {
        opts.starts = s;
    }
    match classify_with_options(&a, &opts) {
        Ok(res) => {
            say!(out, "{}", res.class);
            if res.numeric {
                say!(out, "witness (numeric):\n{}", res.witness.matrix());
            }
            if let Some(path) = &c.out {
                let t: Vec<String> = res
                    .witness
                    .matrix()
                    .as_slice()
                    .iter()
                    .map(|z| format_scalar(*z))
                    .collect();
                write_file(
                    path,
                    &format!(
                        "class,numeric,t11,t12,t21,t22\n\"{}\",{},{}\n",
                        res.class,
                        res.numeric,
                        t.join(",")
                    ),
                )?;
            }
            Ok(EXIT_OK)
        }
        Err(ClassifyError::Unclassifiable) => Err(Failure {
            code: EXIT_UNCLASSIFIABLE,
            msg: "unclassifiable: no isomorphism to a canonical form was found".into(),
        }),
        Err(e) => Err(input(e)),
    }
}

fn load_config(path: &Path) -> Result<CeaConfig, Failure> {
    CeaConfig::parse(&read(path)?).map_err(input)
}

fn cmd_cea_verify(c: &Common, path: &Path, out: &mut dyn Write) -> Outcome {
    let cfg = load_config(path)?;
    let samples = c.samples.unwrap_or(cfg.verify.samples);
    let seed = c.seed.unwrap_or(cfg.verify.seed);
    let tol = c.tol.unwrap_or(cfg.verify.tol);
    let rep =
        verify_ck_sampled(&cfg.spec, samples, seed, tol, cfg.verify.sampling).map_err(input)?;
    say!(out, "{rep}");
    if let Some(p) = &c.out {
        let worst = rep
            .worst
            .map_or(",,".to_string(), |(s, tau, t)| format!("{s},{tau},{t}"));
        write_file(
            p,
            &format!(
                "family,samples,tol,max_violation,worst_s,worst_tau,worst_t,pass\n{},{},{:e},{:e},{},{}\n",
                cfg.spec.id(),
                rep.samples,
                rep.tol,
                rep.max_violation,
                worst,
                rep.pass
            ),
        )?;
    }
    Ok(if rep.pass { EXIT_OK } else { EXIT_VERIFY })
}

fn cmd_cea_diagram(
    c: &Common,
    path: &Path,
    resolution: Option<usize>,
    out: &mut dyn Write,
) -> Outcome {
    let cfg = load_config(path)?;
    let d = &cfg.diagram;
    let res = resolution.unwrap_or(d.resolution);
    let diagram = property_diagram(&cfg.spec, d.property, d.window, res, d.field).map_err(input)?;
    let prefix = c.out.clone().unwrap_or_else(|| PathBuf::from("diagram"));
    let csv = prefix.with_extension("csv");
    let svg = prefix.with_extension("svg");
    write_file(&csv, &diagram.to_csv())?;
    write_file(&svg, &diagram.to_svg(d.cell_px))?;
    say!(
        out,
        "{} cells: {} in, {} out, {} outside domain, {} errors; wrote {} and {}",
        diagram.cells.len(),
        diagram.count(CellLabel::InP),
        diagram.count(CellLabel::NotInP),
        diagram.count(CellLabel::OutOfDomain),
        diagram.count(CellLabel::Error),
        csv.display(),
        svg.display()
    );
    Ok(EXIT_OK)
}

enum AlgebraSpec {
    Tag(Tag),
    Class(AlgebraClass),
}

fn parse_algebra(text: &str) -> Result<AlgebraSpec, Failure> {
    if let Ok(tag) = text.trim().parse::<Tag>() {
        if tag.param_count(Field::Complex) == 0 || !text.contains('(') {
            return Ok(AlgebraSpec::Tag(tag));
        }
    }
    AlgebraClass::parse(text, Field::Complex)
        .map(AlgebraSpec::Class)
        .map_err(input)
}

fn families_for(algebra: Option<&str>, weight: Weight) -> Result<Vec<RboFamily>, Failure> {
    match algebra {
        None => Ok(table(weight)),
        Some(text) => match parse_algebra(text)? {
            AlgebraSpec::Tag(tag) => catalog(tag, weight).map_err(input),
            AlgebraSpec::Class(class) => {
                crate::rotabaxter::catalog_for(&class, weight).map_err(input)
            }
        },
    }
}

fn weights(w: Option<Weight>) -> Vec<Weight> {
    match w {
        Some(w) => vec![w],
        None => vec![Weight::Zero, Weight::One],
    }
}

fn cmd_rbo_verify(
    c: &Common,
    algebra: Option<&str>,
    weight: Option<Weight>,
    out: &mut dyn Write,
) -> Outcome {
    let opts = VerifyOptions {
        samples: c.samples.unwrap_or(200),
        seed: c.seed.unwrap_or(0),
        tol: c.tol.unwrap_or(1e-9),
        ..VerifyOptions::default()
    };
    let mut all = Vec::new();
    for w in weights(weight) {
        let fams = families_for(algebra, w)?;
        let reports = verify_all(&fams, &opts);
        for (f, rep) in fams.iter().zip(&reports) {
            say!(out, "{rep}");
            if let Some(alt) = verify_alternate(f, &opts) {
                let kind = match f.alternate.as_ref().map(|a| a.kind) {
                    Some(crate::rotabaxter::catalog::AlternateKind::Erratum) => "printed form",
                    _ => "equivalent form",
                };
                say!(
                    out,
                    "  {kind} {}: worst residual {:e}: {}",
                    alt.template,
                    alt.worst_residual,
                    if alt.pass { "PASS" } else { "FAIL" }
                );
            }
        }
        all.extend(reports);
    }
    let failed = all.iter().filter(|r| !r.pass).count();
    say!(out, "{} families, {} failed", all.len(), failed);
    if let Some(p) = &c.out {
        write_file(p, &reports_to_csv(&all))?;
    }
    Ok(if failed == 0 { EXIT_OK } else { EXIT_VERIFY })
}

fn resolve_matrix(arg: &AlgebraArg) -> Result<(StructureMatrix, Option<Tag>), Failure> {
    match (&arg.algebra, &arg.matrix) {
        (_, Some(path)) => Ok((StructureMatrix::parse(&read(path)?).map_err(input)?, None)),
        (Some(text), None) => match parse_algebra(text)? {
            AlgebraSpec::Tag(tag) if tag.param_count(Field::Complex) == 0 => Ok((
                AlgebraClass::simple(Field::Complex, tag).canonical_matrix(),
                Some(tag),
            )),
            AlgebraSpec::Tag(tag) => {
                Err(input(format!("{tag} needs parameters, e.g. {tag}(0,0.25)")))
            }
            AlgebraSpec::Class(class) => Ok((class.canonical_matrix(), Some(class.tag))),
        },
        (None, None) => Err(input("one of --algebra or --matrix is required")),
    }
}

fn cmd_rbo_search(c: &Common, arg: &AlgebraArg, weight: Weight, out: &mut dyn Write) -> Outcome {
    let (a, tag) = resolve_matrix(arg)?;
    let opts = SearchOptions {
        starts: c.starts.unwrap_or(500),
        seed: c.seed.unwrap_or(0),
        tol: c.tol.unwrap_or(1e-9),
        ..SearchOptions::default()
    };
    let mut points = search(&a, weight, &opts).map_err(input)?;
    let families = match tag {
        Some(t) => catalog(t, weight).unwrap_or_default(),
        None => table(weight),
    };
    annotate(&a, &mut points, &families, 1e-6);
    let converged: usize = points.iter().map(|p| p.hits).sum();
    say!(
        out,
        "{} of {} starts converged, {} distinct points",
        converged,
        opts.starts,
        points.len()
    );
    for (i, p) in points.iter().enumerate() {
        say!(
            out,
            "{i}: [[{}, {}], [{}, {}]] residual {:e} hits {} {}",
            format_scalar(p.operator[(0, 0)]),
            format_scalar(p.operator[(0, 1)]),
            format_scalar(p.operator[(1, 0)]),
            format_scalar(p.operator[(1, 1)]),
            p.residual,
            p.hits,
            p.family.as_deref().unwrap_or("")
        );
    }
    if let Some(path) = &c.out {
        write_file(path, &points_to_csv(&points))?;
    }
    Ok(EXIT_OK)
}

fn cmd_rbo_systems(c: &Common, arg: &AlgebraArg, weight: Weight, out: &mut dyn Write) -> Outcome {
    let alg = match (&arg.algebra, &arg.matrix) {
        (Some(text), None) => match parse_algebra(text)? {
            AlgebraSpec::Tag(tag) => SymbolicAlgebra::canonical(tag),
            AlgebraSpec::Class(class) => SymbolicAlgebra::from_matrix(&class.canonical_matrix()),
        },
        _ => SymbolicAlgebra::from_matrix(&resolve_matrix(arg)?.0),
    };
    let sys = derive_system(&alg, weight);
    say!(out, "{}", sys.render(", "));
    for t in &sys.tautologies {
        log::info!("dropped tautology {t}");
    }
    if let Some(path) = &c.out {
        let mut text = String::new();
        for e in &sys.equations {
            text.push_str(&e.render_ascii(&sys.names));
            text.push_str(" = 0\n");
        }
        write_file(path, &text)?;
    }
    Ok(EXIT_OK)
}

fn cmd_rbo_catalog(algebra: Option<&str>, weight: Option<Weight>, out: &mut dyn Write) -> Outcome {
    for w in weights(weight) {
        for f in families_for(algebra, w)? {
            let free = if f.free.is_empty() {
                "-".to_string()
            } else {
                f.free.join(",")
            };
            say!(
                out,
                "{}\tweight {}\trow {}\t{}\t{}\tfree: {}\t{}",
                f.id,
                w,
                f.row,
                f.algebra,
                f.template,
                free,
                if f.conditions.is_empty() {
                    "-"
                } else {
                    f.conditions
                }
            );
        }
    }
    Ok(EXIT_OK)
}

fn cmd_rbo_exclusions(out: &mut dyn Write) -> Outcome {
    let checks = verify_exclusions();
    for chk in &checks {
        say!(out, "{chk}");
    }
    let ctl = control();
    say!(out, "{ctl}");
    let ok = checks.iter().all(|c| c.excluded) && !ctl.excluded;
    Ok(if ok { EXIT_OK } else { EXIT_VERIFY })
}
