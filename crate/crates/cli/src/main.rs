use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use rulealg::RewritingType;
use rulealg_cli::commands::{self, Output, EXIT_INPUT};
use rulealg_cli::eval::{self, Env};

#[derive(Parser)]
#[command(name = "rulealg", version, about = "Exact rule diagram and rule algebra computations")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Definitions file whose names become available to the operands.
    #[arg(long, short, global = true)]
    file: Option<PathBuf>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum TypeArg {
    Dpo,
    Spoa,
    Spob,
    Spoab,
}

impl From<TypeArg> for RewritingType {
    fn from(t: TypeArg) -> RewritingType {
        match t {
            TypeArg::Dpo => RewritingType::Dpo,
            TypeArg::Spoa => RewritingType::SpoA,
            TypeArg::Spob => RewritingType::SpoB,
            TypeArg::Spoab => RewritingType::SpoAb,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TypesArg {
    Dpo,
    Spoa,
    Spob,
    Spoab,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum NormalForm {
    Hw,
    Vertex,
    Pbw,
}

#[derive(Subcommand)]
enum Cmd {
    /// Product `x * y`; with --type, the rule-algebra product.
    Compose {
        x: String,
        y: String,
        #[arg(long = "type", value_enum)]
        ty: Option<TypeArg>,
        /// Leave out the superposition term (`x ⊛ y`).
        #[arg(long)]
        nontrivial: bool,
    },
    /// Reduce an element into the rule algebra of the given type.
    Reduce {
        #[arg(long = "type", value_enum)]
        ty: TypeArg,
        x: String,
    },
    /// `[x, y]`; with --type, in the rule algebra.
    Commutator {
        x: String,
        y: String,
        #[arg(long = "type", value_enum)]
        ty: Option<TypeArg>,
    },
    Coproduct {
        x: String,
    },
    Antipode {
        x: String,
    },
    Dagger {
        x: String,
    },
    /// Rewrite an element in a normal-ordered basis.
    NormalOrder {
        #[arg(value_enum)]
        form: NormalForm,
        x: String,
    },
    /// Recompute a verification suite cell by cell.
    Verify {
        suite: String,
        #[arg(long = "type", value_enum, default_value = "dpo")]
        ty: TypesArg,
    },
    /// Graphviz output for a named graph, rule or diagram, or for the terms of an expression.
    ExportDot {
        target: String,
    },
    /// Load a document and evaluate its `print` lines.
    Run {
        path: PathBuf,
    },
}

fn load_env(path: Option<&PathBuf>) -> Result<Env, String> {
    let Some(path) = path else { return Ok(Env::with_builtins()) };
    let src = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    eval::load(&src).map_err(|d| format!("{}: {d}", path.display()))
}

fn dispatch(cli: &Cli) -> Result<Output, String> {
    let env = match &cli.cmd {
        Cmd::Run { path } => load_env(Some(path))?,
        _ => load_env(cli.file.as_ref())?,
    };
    let res = match &cli.cmd {
        Cmd::Compose { x, y, ty, nontrivial } => commands::compose(&env, x, y, ty.map(Into::into), *nontrivial),
        Cmd::Reduce { ty, x } => commands::reduce_cmd(&env, x, (*ty).into()),
        Cmd::Commutator { x, y, ty } => commands::commutator_cmd(&env, x, y, ty.map(Into::into)),
        Cmd::Coproduct { x } => commands::coproduct_cmd(&env, x),
        Cmd::Antipode { x } => commands::antipode_cmd(&env, x),
        Cmd::Dagger { x } => commands::dagger_cmd(&env, x),
        Cmd::NormalOrder { form, x } => {
            let f = match form {
                NormalForm::Hw => "hw",
                NormalForm::Vertex => "vertex",
                NormalForm::Pbw => "pbw",
            };
            commands::normal_order(&env, f, x)
        }
        Cmd::Verify { suite, ty } => {
            let types: Vec<RewritingType> = match ty {
                TypesArg::All => RewritingType::ALL.to_vec(),
                TypesArg::Dpo => vec![RewritingType::Dpo],
                TypesArg::Spoa => vec![RewritingType::SpoA],
                TypesArg::Spob => vec![RewritingType::SpoB],
                TypesArg::Spoab => vec![RewritingType::SpoAb],
            };
            commands::verify_cmd(suite, &types)
        }
        Cmd::ExportDot { target } => commands::export_dot(&env, target),
        Cmd::Run { .. } => commands::run(&env),
    };
    res.map_err(|d| d.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(out) => {
            let body = if cli.json {
                serde_json::to_string_pretty(&out.json).expect("JSON values serialize")
            } else {
                out.text
            };
            // A closed pipe (`| head`) is not an error worth reporting.
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            ExitCode::from(out.code as u8)
        }
        Err(msg) => {
            eprintln!("{msg}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
