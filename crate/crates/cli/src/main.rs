//! `nilalg`: check algebras given by structure constants and compute their
//! centers, derivations, centroids and inner derivations.
//!
//! Exit codes: 0 success, 1 semantic failure, 2 input or parse failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nilalg_core::catalog::{self, CatalogEntry};
use nilalg_core::report::{self, Analysis};
use nilalg_core::{render, text, StructureConstants};

#[derive(Parser)]
#[command(name = "nilalg", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

#[derive(Subcommand)]
enum Command {
    /// Check associativity and nilpotency.
    Check { file: PathBuf },
    /// Center, derivations, centroid and inner derivations of one algebra.
    Invariants {
        file: PathBuf,
        /// Substitute this value for the parameter `a`.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, value_enum, default_value = "markdown")]
        format: Format,
    },
    /// Audit the whole catalog against its printed values.
    Report {
        #[arg(long, value_enum, default_value = "markdown")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

const CATALOG_ENV: &str = "NILALG_CATALOG_DIR";

struct Failure {
    code: u8,
    message: String,
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn semantic_error(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

fn load(path: &Path) -> Result<StructureConstants, Failure> {
    let src = fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    StructureConstants::parse(&src).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn check(path: &Path) -> Result<(), Failure> {
    let alg = load(path)?;
    let violations = alg.check_associative();
    let nilindex = alg.nilindex();
    if violations.is_empty() {
        if let Some(k) = nilindex {
            println!("associative, nilindex {k}");
            return Ok(());
        }
    }
    for v in &violations {
        let (i, j, k) = (v.i + 1, v.j + 1, v.k + 1);
        println!("associator ({i},{j},{k}): (e{i} e{j}) e{k} - e{i} (e{j} e{k}) = {}", v.associator);
    }
    let mut problems = Vec::new();
    if !violations.is_empty() {
        problems.push(format!("not associative ({} violating triples)", violations.len()));
    }
    match nilindex {
        Some(k) => println!("nilindex {k}"),
        None => problems.push("not nilpotent".to_string()),
    }
    Err(semantic_error(problems.join(", ")))
}

fn invariants(path: &Path, alpha: Option<&str>, format: Format) -> Result<(), Failure> {
    let alg = load(path)?;
    let (target, alpha_text) = match alpha {
        None => (alg, None),
        Some(raw) => {
            let t = text::parse_constant(raw).map_err(|e| input_error(format!("--alpha: {e}")))?;
            if !alg.is_parametric() {
                return Err(input_error(format!(
                    "--alpha given but {} does not declare `param a`",
                    path.display()
                )));
            }
            let special = alg
                .specialize(&t)
                .map_err(|_| semantic_error(format!("exceptional parameter value a = {t}: pole of a structure constant")))?;
            let locus = Analysis::run(&alg).locus();
            if let Some(p) = locus.polys().find(|p| p.eval(&t) == Default::default()) {
                return Err(semantic_error(format!(
                    "exceptional parameter value a = {t}: root of {p}"
                )));
            }
            (special, Some(t.to_string()))
        }
    };
    let analysis = Analysis::run(&target);
    if !analysis.violations.is_empty() {
        eprintln!(
            "warning: not associative ({} violating triples); results describe the table as given",
            analysis.violations.len()
        );
    }
    let entry = report::describe(&analysis, None);
    match format {
        Format::Markdown => {
            let mut md = render::entry_markdown(&entry);
            if let Some(a) = &alpha_text {
                md.push_str(&format!("\nSpecialized at a = {a}.\n"));
            }
            print!("{md}");
        }
        Format::Json => {
            let mut v = serde_json::to_value(&entry).expect("report serializes");
            v["alpha"] = alpha_text.map_or(serde_json::Value::Null, serde_json::Value::String);
            print!("{}", render::json(&v));
        }
    }
    Ok(())
}

fn load_catalog() -> Result<Vec<CatalogEntry>, Failure> {
    match std::env::var_os(CATALOG_ENV) {
        Some(dir) => catalog::load_catalog_dir(Path::new(&dir)).map_err(|e| input_error(e.to_string())),
        None => Ok(catalog::load_catalog()),
    }
}

fn report(format: Format, out: Option<&Path>) -> Result<(), Failure> {
    let cat = load_catalog()?;
    let rep = report::run_report(&cat);
    let body = match format {
        Format::Json => rep.to_json(),
        Format::Markdown => rep.to_markdown(),
    };
    match out {
        Some(p) => fs::write(p, body).map_err(|e| input_error(format!("{}: {e}", p.display())))?,
        None => print!("{body}"),
    }
    let s = &rep.summary;
    eprintln!(
        "{} entries, printed dims matched {} of {}, chain holds for {} of {}",
        s.entries, s.dims_matched, s.dims_expected, s.chain.holds, s.entries
    );
    if s.hard_invariants_hold {
        Ok(())
    } else {
        Err(semantic_error(format!(
            "hard invariants fail: {}",
            s.hard_failures.join(", ")
        )))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check { file } => check(file),
        Command::Invariants { file, alpha, format } => invariants(file, alpha.as_deref(), *format),
        Command::Report { format, out } => report(*format, out.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
