//! The `skelsig` command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or precondition,
//! 3 input or catalog error.

mod render;
mod verify;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use render::{atlas_csv, GridRendering, CSV_HEADER};
pub use verify::{Failure, Report, Target, VerifyParams};

use crate::atlas::{build_atlas, lower_bound_actions, AtlasOptions, KAtlas};
use crate::genvec::DEFAULT_BUDGET;
use crate::group_kernel::Catalog;
use crate::regions::k_sigma;
use crate::signatures::Genus;

pub const CACHE_DIR_VAR: &str = "SKELSIG_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Failed = 1,
    Usage = 2,
    Input = 3,
}

impl From<Exit> for ExitCode {
    fn from(e: Exit) -> Self {
        ExitCode::from(e as u8)
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "skelsig",
    version,
    about = "Skeletal signatures of group actions on Riemann surfaces"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Group catalog file; the built-in catalog when omitted.
    #[arg(long, global = true)]
    pub catalog: Option<PathBuf>,
    /// Transition budget per generating-vector search.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Worker threads for sweeps.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Seed for randomized sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// k_σ, the lower bound on distinct actions and |S_σ|.
    Bound {
        #[arg(long)]
        genus: u32,
    },
    /// Build (or load from cache) the atlas of realized skeletal points.
    Atlas {
        #[arg(long)]
        genus: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Largest group order swept; the Hurwitz bound when omitted.
        #[arg(long)]
        max_order: Option<usize>,
    },
    /// Run a check suite.
    Verify {
        #[arg(value_enum)]
        target: Target,
        #[arg(long)]
        max_genus: Option<u32>,
        /// Prime p for the (1,1) exclusion at genus p+1; repeatable.
        #[arg(long = "prime")]
        primes: Vec<u32>,
        /// Random samples beyond the exhaustive window.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Ascii,
}

#[derive(Debug)]
struct Failed {
    exit: Exit,
    message: String,
}

fn fail(exit: Exit, message: impl Into<String>) -> Failed {
    Failed {
        exit,
        message: message.into(),
    }
}

pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code().clamp(0, 255) as u8);
        }
    };
    match run(&cli) {
        Ok(exit) => exit.into(),
        Err(f) => {
            eprintln!("skelsig: {}", f.message);
            f.exit.into()
        }
    }
}

fn run(cli: &Cli) -> Result<Exit, Failed> {
    if let Some(jobs) = cli.common.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(|e| fail(Exit::Usage, e.to_string()))?;
    }
    match &cli.command {
        Command::Bound { genus } => {
            let genus = *genus;
            if genus < 6 {
                return Err(fail(
                    Exit::Usage,
                    format!("bound needs genus ≥ 6, got {genus}"),
                ));
            }
            let (bound, count) = lower_bound_actions(Genus::new(genus).expect("genus ≥ 6"));
            emit(
                &cli.common,
                &format!("k={} paper_bound={bound} s_count={count}\n", k_sigma(genus)),
            )?;
            Ok(Exit::Ok)
        }
        Command::Atlas {
            genus,
            format,
            max_order,
        } => {
            let genus = Genus::new(*genus).map_err(|e| fail(Exit::Usage, e.to_string()))?;
            let catalog = load_catalog(&cli.common)?;
            let options = AtlasOptions {
                budget: cli.common.budget,
                max_order: *max_order,
            };
            let atlas = cached_atlas(genus, &catalog, &options)?;
            for task in &atlas.scope.unresolved {
                eprintln!("budget exhausted: {} {}", task.group, task.signature);
            }
            let text = match format {
                Format::Json => atlas.to_json() + "\n",
                Format::Csv => atlas_csv(&atlas),
                Format::Ascii => GridRendering::new(&atlas).render(),
            };
            emit(&cli.common, &text)?;
            Ok(Exit::Ok)
        }
        Command::Verify {
            target,
            max_genus,
            primes,
            samples,
        } => {
            let catalog = load_catalog(&cli.common)?;
            let params = VerifyParams {
                max_genus: *max_genus,
                primes: if primes.is_empty() {
                    vec![5, 7]
                } else {
                    primes.clone()
                },
                seed: cli.common.seed,
                samples: *samples,
                budget: cli.common.budget,
            };
            let report = verify::run(*target, &params, &catalog);
            let mut text = String::new();
            for note in &report.notes {
                text.push_str(note);
                text.push('\n');
            }
            for f in &report.failures {
                text.push_str(&serde_json::to_string(f).expect("failure serializes"));
                text.push('\n');
            }
            text.push_str(&format!(
                "verify {}: {} checks, {} failures\n",
                target.to_possible_value().expect("not skipped").get_name(),
                report.checks,
                report.failures.len()
            ));
            emit(&cli.common, &text)?;
            Ok(if report.passed() {
                Exit::Ok
            } else {
                Exit::Failed
            })
        }
    }
}

fn load_catalog(common: &Common) -> Result<Catalog, Failed> {
    match &common.catalog {
        Some(path) => Catalog::from_file(path),
        None => Catalog::load_default(),
    }
    .map_err(|e| fail(Exit::Input, format!("catalog: {e}")))
}

fn emit(common: &Common, text: &str) -> Result<(), Failed> {
    match &common.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
    .map_err(|e| fail(Exit::Input, format!("writing output: {e}")))
}

fn cache_path(dir: &Path, genus: Genus) -> PathBuf {
    dir.join(format!("atlas-g{}.json", genus.get()))
}

/// Reuses a cached atlas only when it loads, re-verifies, and was built
/// with the same budget, order bound and catalog.
fn cached_atlas(genus: Genus, catalog: &Catalog, options: &AtlasOptions) -> Result<KAtlas, Failed> {
    let build =
        || build_atlas(genus, catalog, options).map_err(|e| fail(Exit::Input, e.to_string()));
    let Some(dir) = std::env::var_os(CACHE_DIR_VAR).map(PathBuf::from) else {
        return build();
    };
    let path = cache_path(&dir, genus);
    if let Ok(cached) = KAtlas::load(&path, catalog) {
        let scope = &cached.scope;
        if scope.budget == options.budget
            && scope.catalog_digest == catalog.digest()
            && Some(scope.max_order)
                == options
                    .max_order
                    .or(Some(crate::atlas::hurwitz_bound(genus)))
            && cached.genus == genus
        {
            return Ok(cached);
        }
    }
    let atlas = build()?;
    std::fs::create_dir_all(&dir)
        .and_then(|()| std::fs::write(&path, atlas.to_json() + "\n"))
        .map_err(|e| fail(Exit::Input, format!("cache {}: {e}", path.display())))?;
    Ok(atlas)
}
