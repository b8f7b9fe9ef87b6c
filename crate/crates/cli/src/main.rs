mod corpus;
mod render;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use psw_core::analysis::{AnalysisError, Classification, InvariantBundle, Manifold};
use psw_core::classify::{
    classify_3manifold_fiber, classify_codim1, parse_class, realizable, ClassifyError, Hypothesis,
};
use psw_core::complex::{
    boundary_of_simplex, parse_complex, projective_space, staircase_product, SimplicialComplex,
};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "psw", version, about = "Invariants of triangulated manifolds and maps into spheres")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Homology, Wu and Stiefel-Whitney classes, intersection form.
    Invariants {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Also print the generating cycles of integral homology.
        #[arg(long)]
        generators: bool,
    },
    /// Count maps to the sphere of one dimension less, or (dimension 3) the fiber over a class.
    Classify {
        file: PathBuf,
        /// Class of H_1 as "c1,c2,...;t1,..." (free coordinates, then torsion residues).
        #[arg(long, allow_hyphen_values = true)]
        class: Option<String>,
    },
    /// Whether a class of H_2 is the degree of a framed surface.
    Realizable {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        class: String,
    },
    /// Recompute the bundled corpus and compare against the golden files.
    Corpus {
        /// Compare against goldens (the default).
        #[arg(long)]
        check: bool,
        /// Rewrite the golden files instead of comparing.
        #[arg(long, conflicts_with = "check")]
        bless: bool,
        #[arg(long)]
        dir: Option<PathBuf>,
    },
    /// Write a generated triangulation.
    Build {
        #[command(subcommand)]
        what: Build,
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Build {
    /// Boundary of the (k+1)-simplex.
    Sphere { k: usize },
    /// Staircase product of two complexes read from files.
    Product { a: PathBuf, b: PathBuf },
    /// Antipodal quotient of the subdivided cross-polytope boundary.
    Projective { n: usize },
}

/// Failure with its process exit code.
#[derive(Debug)]
pub enum Failure {
    Mismatch(String),
    Input(anyhow::Error),
    Hypothesis(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Mismatch(_) => 1,
            Failure::Input(_) => 2,
            Failure::Hypothesis(_) => 3,
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::Hypothesis(h) => Failure::Hypothesis(h.to_string()),
            other => Failure::Input(other.into()),
        }
    }
}

impl From<AnalysisError> for Failure {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::Hypothesis(h) => Failure::Hypothesis(h.to_string()),
            AnalysisError::Classify(c) => c.into(),
            other => Failure::Input(other.into()),
        }
    }
}

pub fn load(path: &Path) -> anyhow::Result<SimplicialComplex> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let k = parse_complex(&text).with_context(|| format!("parsing {}", path.display()))?;
    if k.name().is_empty() {
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("complex").to_string();
        return Ok(k.with_name(stem));
    }
    Ok(k)
}

fn to_json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Invariants {
            file,
            format,
            generators,
        } => {
            let man = Manifold::new(load(&file)?);
            let bundle = InvariantBundle::compute(&man)?;
            let mut value = serde_json::to_value(&bundle).map_err(anyhow::Error::from)?;
            if generators {
                let gens = render::generators(&man).map_err(|e| Failure::Input(e.into()))?;
                value["generators"] = gens;
            }
            match format {
                Format::Json => println!("{}", to_json(&value)?),
                Format::Text => print!("{}", render::text(&value)),
            }
        }
        Command::Classify { file, class } => {
            let man = Manifold::new(load(&file)?);
            let dim = man.complex().dimension();
            let out = if dim == 3 {
                psw_core::classify::check_hypotheses(&man).map_err(ClassifyError::from)?;
                let h1 = man.integral().map_err(ClassifyError::from)?.group(1);
                match class {
                    Some(spec) => to_json(&classify_3manifold_fiber(&man, &parse_class(&spec, h1)?)?)?,
                    None => to_json(&Classification::three_manifold(h1))?,
                }
            } else {
                if class.is_some() && dim >= 4 {
                    return Err(Failure::Input(anyhow!(
                        "--class applies to 3-dimensional complexes only (this one has dimension {dim})"
                    )));
                }
                to_json(&classify_codim1(&man)?)?
            };
            println!("{out}");
        }
        Command::Realizable { file, class } => {
            let man = Manifold::new(load(&file)?);
            psw_core::classify::check_hypotheses(&man).map_err(ClassifyError::from)?;
            let dim = man.complex().dimension();
            if dim < 4 {
                return Err(Failure::Hypothesis(
                    Hypothesis::Dimension {
                        found: dim,
                        expected: "at least 4",
                    }
                    .to_string(),
                ));
            }
            let h2 = man.integral().map_err(ClassifyError::from)?.group(2);
            let alpha = parse_class(&class, h2)?;
            println!("{}", to_json(&realizable(&man, &alpha)?)?);
        }
        Command::Corpus { check: _, bless, dir } => {
            let dir = match dir {
                Some(d) => d,
                None => corpus::default_dir(),
            };
            if bless {
                corpus::bless(&dir)?;
            } else {
                corpus::check(&dir)?;
            }
        }
        Command::Build { what, output } => {
            let k = match what {
                Build::Sphere { k } => boundary_of_simplex(k).map_err(anyhow::Error::from)?,
                Build::Product { a, b } => {
                    let (a, b) = (load(&a)?, load(&b)?);
                    staircase_product(&a, &b)
                }
                Build::Projective { n } => projective_space(n).map_err(anyhow::Error::from)?,
            };
            let text = serde_json::to_string(&k.to_document()).map_err(anyhow::Error::from)? + "\n";
            match output {
                Some(path) => std::fs::write(&path, text)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Mismatch(msg) => eprintln!("{msg}"),
                Failure::Input(e) => eprintln!("error: {e:#}"),
                Failure::Hypothesis(msg) => eprintln!("error: {msg}"),
            }
            ExitCode::from(f.code())
        }
    }
}
