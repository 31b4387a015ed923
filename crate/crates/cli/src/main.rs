use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use cohcat::report::{inputs_digest, RunParams};
use cohcat::{CatError, Verdict};

mod run;

pub const SYNOPSIS: &str = "\
usage: cohcat [--cap N] [--depth N] [--seed N] [--report PATH] <command> <inputs...>
  check category|coherent|disjoint CAT
  limits CAT
  slice delta|fa|roundtrip CAT FUN [--object X]
  diagram build|gamma|eta|homeq CAT FUN
  diagram extend CAT NAT
  sheaf atoms ALG
  sheaf gamma|psi CAT SHEAF
  sheaf lurie CAT FUN
  elem check CAT NAT
  elem conservative|unit ADJ
  elem decompose CAT FUN [--experiment]   (alias: decompose CAT FUN)
  elem complete LAT [--object X --lower V --upper U]
exit: 0 pass, 1 fail, 2 unknown, 3 usage or input error";

#[derive(Parser, Debug)]
#[command(name = "cohcat", about = "Finite-scale coherent category workbench", override_usage = SYNOPSIS)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Window cap for skeletal finite sets (overrides the document).
    #[arg(long, global = true)]
    pub cap: Option<i64>,
    /// Expansion depth for hom comparisons in diagram categories.
    #[arg(long, global = true, default_value_t = cohcat::diagram::DEFAULT_DEPTH)]
    pub depth: usize,
    /// Seed for randomized relabelings.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    #[command(subcommand)]
    Check(CheckCmd),
    Limits { cat: PathBuf },
    #[command(subcommand)]
    Slice(SliceCmd),
    #[command(subcommand)]
    Diagram(DiagramCmd),
    #[command(subcommand)]
    Sheaf(SheafCmd),
    #[command(subcommand)]
    Elem(ElemCmd),
    Decompose(DecomposeArgs),
}

#[derive(Subcommand, Debug)]
pub enum CheckCmd {
    Category { cat: PathBuf },
    Coherent { cat: PathBuf },
    Disjoint { cat: PathBuf },
}

#[derive(Args, Debug)]
pub struct ModelArgs {
    pub cat: PathBuf,
    pub fun: PathBuf,
}

#[derive(Args, Debug)]
pub struct SliceArgs {
    pub cat: PathBuf,
    pub fun: PathBuf,
    /// Object label; every object in the window when omitted.
    #[arg(long)]
    pub object: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum SliceCmd {
    Delta(SliceArgs),
    Fa(SliceArgs),
    Roundtrip(SliceArgs),
}

#[derive(Subcommand, Debug)]
pub enum DiagramCmd {
    Build(ModelArgs),
    Gamma(ModelArgs),
    Eta(ModelArgs),
    Homeq(ModelArgs),
    Extend { cat: PathBuf, nat: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum SheafCmd {
    Atoms { alg: PathBuf },
    Gamma { cat: PathBuf, sheaf: PathBuf },
    Psi { cat: PathBuf, sheaf: PathBuf },
    Lurie(ModelArgs),
}

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    pub cat: PathBuf,
    pub fun: PathBuf,
    /// Skip the base checks and run the atoms route regardless.
    #[arg(long)]
    pub experiment: bool,
}

#[derive(Subcommand, Debug)]
pub enum ElemCmd {
    Check { cat: PathBuf, nat: PathBuf },
    Conservative { adj: PathBuf },
    Unit { adj: PathBuf },
    Decompose(DecomposeArgs),
    Complete {
        lat: PathBuf,
        #[arg(long, requires_all = ["lower", "upper"])]
        object: Option<String>,
        #[arg(long, requires = "object")]
        lower: Option<String>,
        #[arg(long, requires = "object")]
        upper: Option<String>,
    },
}

fn exit_code(v: Verdict) -> u8 {
    match v {
        Verdict::Pass => 0,
        Verdict::Fail => 1,
        Verdict::Unknown => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprintln!("{}", e.kind());
            eprintln!("{SYNOPSIS}");
            return ExitCode::from(3);
        }
    };
    let start = Instant::now();
    let outcome = run::dispatch(&cli);
    let (report, inputs) = match outcome {
        Ok(x) => x,
        Err(e) => {
            eprintln!("cohcat: {e}");
            if matches!(e, CatError::Parse(_)) {
                eprintln!("{SYNOPSIS}");
            }
            return ExitCode::from(3);
        }
    };
    let params = RunParams {
        cap: cli.global.cap,
        depth: cli.global.depth,
        seed: cli.global.seed,
    };
    let text = report.render(&inputs_digest(&inputs), &params, start.elapsed().as_millis());
    print!("{text}");
    if let Some(path) = &cli.global.report {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("cohcat: cannot write {}: {e}", path.display());
            return ExitCode::from(3);
        }
    }
    ExitCode::from(exit_code(report.verdict()))
}
