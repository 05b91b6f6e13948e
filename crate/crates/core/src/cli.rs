//! The `homat` command-line tool.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;

use crate::category::GradedCategory;
use crate::complex::betti_euler;
use crate::error::Error;
use crate::format::{
    from_json, to_json, CategoryDoc, CobordismDoc, ComplexDoc, MatrixDoc, ModuleDoc, ModuleVectorDoc, MorphismDoc, SymMatrixDoc,
    SymVectorDoc,
};
use crate::homatrix::CobordismElement;
use crate::laws;
use crate::operad::{operad_compose, IntervalConfig};
use crate::representation::{hg_act, Representation};
use crate::sympower::{schur_include, sym_act, sym_product, Convention, HgAlgebra, HgModule, SymOptions, DEFAULT_MAX_ARITY};

#[derive(Parser, Debug)]
#[command(name = "homat", version, about = "Exact computations with homological matrices, Schur algebras and little intervals")]
struct Cli {
    /// Directory holding category.json and modules/*.json.
    #[arg(long, global = true, default_value = ".")]
    workspace: PathBuf,
    #[arg(long, global = true, value_enum, default_value_t = ConventionArg::Averaged)]
    convention: ConventionArg,
    /// Reject odd object dimensions and odd degrees in symmetric powers.
    #[arg(long, global = true)]
    even_mode: bool,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ARITY)]
    max_sym_arity: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConventionArg {
    Averaged,
    OrbitSum,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a category, complex, configuration or the workspace modules.
    #[command(subcommand)]
    Validate(ValidateCmd),
    /// Compose morphisms: G after F.
    Compose { g: PathBuf, f: PathBuf },
    #[command(subcommand)]
    Hg(HgCmd),
    #[command(subcommand)]
    Cob(CobCmd),
    #[command(subcommand)]
    Sym(SymCmd),
    #[command(subcommand)]
    Schur(SchurCmd),
    #[command(subcommand)]
    Operad(OperadCmd),
    /// Betti numbers and Euler characteristic of a chain complex.
    Betti { complex: PathBuf },
    /// Randomized check of every algebraic law.
    Axioms(AxiomsArgs),
}

#[derive(Subcommand, Debug)]
enum ValidateCmd {
    /// Defaults to the workspace category.
    Category { file: Option<PathBuf> },
    Complex { file: PathBuf },
    Config { file: PathBuf },
    Modules,
}

#[derive(Subcommand, Debug)]
enum HgCmd {
    /// Matrix product A·B.
    Mul { a: PathBuf, b: PathBuf },
    /// Action A·v on a module vector.
    Act { a: PathBuf, v: PathBuf },
}

#[derive(Subcommand, Debug)]
enum CobCmd {
    /// SECOND ∘ FIRST.
    Compose { second: PathBuf, first: PathBuf },
    /// Generalized permutation matrix of an element.
    Embed { element: PathBuf },
}

#[derive(Subcommand, Debug)]
enum SymCmd {
    Mul { a: PathBuf, b: PathBuf },
    Act { a: PathBuf, v: PathBuf },
}

#[derive(Subcommand, Debug)]
enum SchurCmd {
    /// Image of a cobordism element in the Schur algebra.
    Include {
        element: PathBuf,
        /// Defaults to the length of the element's index map.
        #[arg(long)]
        m: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum OperadCmd {
    Compose {
        outer: PathBuf,
        #[arg(required = true)]
        inners: Vec<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct AxiomsArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    trials: usize,
}

/// Exit status and the text destined for stdout and stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    /// Unreadable input or a schema error.
    Input(String),
    /// A well-formed input that violates a mathematical condition.
    Math(serde_json::Value),
}

type Step<T> = std::result::Result<T, Failure>;

fn math(e: Error) -> Failure {
    Failure::Math(json!({ "error": e.to_string() }))
}

/// Errors met while loading inputs: reference and shape problems are schema
/// errors, violated laws are mathematical failures.
fn load(e: Error) -> Failure {
    match e {
        Error::InvalidModule(_) | Error::ComplexInvalid(_) | Error::ConfigInvalid(_) | Error::ParityViolation(_) => math(e),
        other => Failure::Input(other.to_string()),
    }
}

fn read<T: DeserializeOwned>(path: &Path) -> Step<T> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    from_json(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

struct Workspace {
    dir: PathBuf,
    opts: SymOptions,
}

impl Workspace {
    fn category(&self) -> Step<GradedCategory> {
        read::<CategoryDoc>(&self.dir.join("category.json"))?.build().map_err(load)
    }

    fn module_docs(&self) -> Step<Vec<ModuleDoc>> {
        let dir = self.dir.join("modules");
        let mut paths: Vec<PathBuf> = match fs::read_dir(&dir) {
            Ok(entries) => entries.filter_map(|e| e.ok().map(|e| e.path())).filter(|p| p.extension().is_some_and(|x| x == "json")).collect(),
            Err(_) => Vec::new(),
        };
        paths.sort();
        paths.iter().map(|p| read(p)).collect()
    }

    fn representation(&self, c: &GradedCategory) -> Step<Representation> {
        let docs = self.module_docs()?;
        Representation::new(c, docs.iter().map(ModuleDoc::to_module)).map_err(load)
    }
}

#[derive(Serialize)]
struct BettiDoc {
    betti: BTreeMap<i64, usize>,
    euler: i64,
}

fn emit<T: Serialize>(doc: &T) -> Step<String> {
    Ok(to_json(doc))
}

fn report(valid: bool, violations: Vec<String>) -> Step<String> {
    if valid {
        emit(&json!({ "valid": true }))
    } else {
        Err(Failure::Math(json!({ "valid": false, "violations": violations })))
    }
}

fn execute(cli: &Cli) -> Step<String> {
    let convention = match cli.convention {
        ConventionArg::Averaged => Convention::Averaged,
        ConventionArg::OrbitSum => Convention::OrbitSum,
    };
    let ws = Workspace {
        dir: cli.workspace.clone(),
        opts: SymOptions { convention, max_arity: cli.max_sym_arity, even_mode: cli.even_mode },
    };
    match &cli.command {
        Command::Validate(v) => match v {
            ValidateCmd::Category { file } => {
                let path = file.clone().unwrap_or_else(|| ws.dir.join("category.json"));
                let c = read::<CategoryDoc>(&path)?.build().map_err(load)?;
                match c.validate() {
                    Ok(()) => report(true, vec![]),
                    Err(v) => report(false, vec![format!("{v:?}")]),
                }
            }
            ValidateCmd::Complex { file } => {
                let c = read::<ComplexDoc>(file)?.build().map_err(load)?;
                match c.validate() {
                    Ok(()) => report(true, vec![]),
                    Err(v) => report(false, vec![v.to_string()]),
                }
            }
            ValidateCmd::Config { file } => {
                let c: IntervalConfig = read(file)?;
                let violations: Vec<String> = c.validate().iter().map(ToString::to_string).collect();
                report(violations.is_empty(), violations)
            }
            ValidateCmd::Modules => {
                let c = ws.category()?;
                let docs = ws.module_docs()?;
                match Representation::new(&c, docs.iter().map(ModuleDoc::to_module)) {
                    Ok(_) => report(true, vec![]),
                    Err(e @ Error::InvalidModule(_)) => report(false, vec![e.to_string()]),
                    Err(e) => Err(load(e)),
                }
            }
        },
        Command::Compose { g, f } => {
            let c = ws.category()?;
            let (g, f) = (read::<MorphismDoc>(g)?.build(&c).map_err(load)?, read::<MorphismDoc>(f)?.build(&c).map_err(load)?);
            emit(&MorphismDoc::from_morphism(&c.compose(&g, &f).map_err(math)?))
        }
        Command::Hg(HgCmd::Mul { a, b }) => {
            let c = ws.category()?;
            let (a, b) = (read::<MatrixDoc>(a)?.build(&c).map_err(load)?, read::<MatrixDoc>(b)?.build(&c).map_err(load)?);
            emit(&MatrixDoc::from_matrix(&a.product(&c, &b).map_err(math)?))
        }
        Command::Hg(HgCmd::Act { a, v }) => {
            let c = ws.category()?;
            let rep = ws.representation(&c)?;
            let a = read::<MatrixDoc>(a)?.build(&c).map_err(load)?;
            let v = read::<ModuleVectorDoc>(v)?.build(&c, &rep).map_err(load)?;
            emit(&ModuleVectorDoc::from_vector(&hg_act(&rep, &a, &v).map_err(math)?))
        }
        Command::Cob(CobCmd::Compose { second, first }) => {
            let c = ws.category()?;
            let s = read::<CobordismDoc>(second)?.build(&c).map_err(load)?;
            let f = read::<CobordismDoc>(first)?.build(&c).map_err(load)?;
            emit(&CobordismDoc::from_element(&CobordismElement::compose(&c, &s, &f).map_err(math)?))
        }
        Command::Cob(CobCmd::Embed { element }) => {
            let c = ws.category()?;
            let e = read::<CobordismDoc>(element)?.build(&c).map_err(load)?;
            emit(&MatrixDoc::from_matrix(&e.to_matrix(&c).map_err(math)?))
        }
        Command::Sym(SymCmd::Mul { a, b }) => {
            let c = ws.category()?;
            let (da, db): (SymMatrixDoc, SymMatrixDoc) = (read(a)?, read(b)?);
            let index = da.index_map(&c).map_err(load)?;
            let alg = HgAlgebra::new(&c, &index);
            let (a, b) = (da.build(&alg, convention).map_err(load)?, db.build(&alg, convention).map_err(load)?);
            emit(&SymMatrixDoc::from_element(&index, &sym_product(&alg, &a, &b, &ws.opts).map_err(math)?))
        }
        Command::Sym(SymCmd::Act { a, v }) => {
            let c = ws.category()?;
            let rep = ws.representation(&c)?;
            let (da, dv): (SymMatrixDoc, SymVectorDoc) = (read(a)?, read(v)?);
            let index = da.index_map(&c).map_err(load)?;
            let (alg, module) = (HgAlgebra::new(&c, &index), HgModule::new(&c, &rep, &index));
            let (a, v) = (da.build(&alg, convention).map_err(load)?, dv.build(&module, convention).map_err(load)?);
            emit(&SymVectorDoc::from_element(&index, &sym_act(&alg, &module, &a, &v, &ws.opts).map_err(math)?))
        }
        Command::Schur(SchurCmd::Include { element, m }) => {
            let c = ws.category()?;
            let e = read::<CobordismDoc>(element)?.build(&c).map_err(load)?;
            let m = m.unwrap_or(e.index().len());
            emit(&SymMatrixDoc::from_element(e.index(), &schur_include(&c, &e, m, convention).map_err(math)?))
        }
        Command::Operad(OperadCmd::Compose { outer, inners }) => {
            let outer: IntervalConfig = read(outer)?;
            let inners = inners.iter().map(|p| read(p)).collect::<Step<Vec<IntervalConfig>>>()?;
            emit(&operad_compose(&outer, &inners).map_err(math)?)
        }
        Command::Betti { complex } => {
            let c = read::<ComplexDoc>(complex)?.build().map_err(load)?;
            if let Err(v) = c.validate() {
                return report(false, vec![v.to_string()]);
            }
            let betti = c.homology_betti().map_err(math)?;
            emit(&BettiDoc { euler: betti_euler(&betti), betti })
        }
        Command::Axioms(AxiomsArgs { seed, trials }) => {
            let reports = laws::run_all(*seed, *trials);
            let passed = reports.iter().all(laws::LawReport::passed);
            let doc = json!({ "seed": seed, "trials": trials, "passed": passed, "laws": reports });
            if passed {
                emit(&doc)
            } else {
                Err(Failure::Math(doc))
            }
        }
    }
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(Failure::Math(doc)) => Outcome { code: 1, stdout: to_json(&doc), stderr: String::new() },
        Err(Failure::Input(msg)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}
