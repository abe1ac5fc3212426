//! Command-line front end: build module files, run verification suites, and
//! compute or render Ext charts. All output is deterministic; identical flags
//! produce identical bytes. Exit codes: 0 success, 1 verification failure,
//! 2 usage or configuration error.

use clap::{Parser, Subcommand};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use a1ext_core::chart::{ext_chart, ExtChart};
use a1ext_core::module::GradedModule;
use a1ext_core::render::{render_ascii, render_cell_diagram, render_svg, RenderSpec};
use a1ext_core::spectra::{
    bo_brown_gitler, brown_gitler, moore_smash_bg1, omega_model, ring_homology, weight_component,
    Ring,
};
use a1ext_core::steenrod::subalgebra_operators;
use a1ext_core::textio::{serialize_chart, serialize_module};
use a1ext_core::verify;
use a1ext_core::Error;

#[derive(Parser)]
#[command(name = "a1ext", version, about = "Exact Ext charts over A(1)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a module and emit it in the MODULE v1 text format.
    Build {
        #[arg(help = "tmf | bo | hz | bg:<j> | bobg:<i> | omega | moore-bg1 | n:<ring>:<k>")]
        construction: String,
        #[arg(long, default_value_t = 48)]
        max_degree: i32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite and print PASS/FAIL lines.
    Verify {
        /// weights | splitting | davis | chart-census | cofiber | ring | engine | all
        suite: String,
        #[arg(long, default_value_t = 48)]
        max_degree: i32,
        /// Case selector: a Davis tuple like `2` or `1,1`, or a cofiber index.
        #[arg(long)]
        case: Option<String>,
    },
    /// Compute an Ext chart and emit it in the CHART v1 text format.
    Ext {
        construction: String,
        #[arg(long, default_value_t = 32)]
        stem_max: i32,
        #[arg(long, default_value_t = 16)]
        s_max: i32,
        /// Degree bound; defaults to max(48, stem_max + s_max + 6).
        #[arg(long)]
        max_degree: Option<i32>,
        /// Suspend the construction before resolving.
        #[arg(long, default_value_t = 0)]
        suspend: i32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render an Ext chart (txt or svg), or a module cell diagram.
    Chart {
        construction: String,
        #[arg(long, default_value = "txt")]
        format: String,
        #[arg(long, default_value_t = 32)]
        stem_max: i32,
        #[arg(long, default_value_t = 16)]
        s_max: i32,
        #[arg(long)]
        max_degree: Option<i32>,
        #[arg(long, default_value_t = 0)]
        suspend: i32,
        /// Render the module's cell diagram instead of its Ext chart.
        #[arg(long)]
        cells: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn build_module(construction: &str, bound: i32) -> Result<GradedModule, Error> {
    if bound < 0 {
        return Err(Error::Parse("the degree bound must be nonnegative".into()));
    }
    match construction {
        "tmf" => Ok(ring_homology(Ring::Tmf, bound)?.module),
        "bo" => Ok(ring_homology(Ring::Bo, bound)?.module),
        "hz" => Ok(ring_homology(Ring::Hz, bound)?.module),
        "omega" => omega_model(bound),
        "moore-bg1" => moore_smash_bg1(),
        other => {
            if let Some(j) = other.strip_prefix("bg:") {
                let j: u32 = j
                    .parse()
                    .map_err(|_| Error::UnknownConstruction(other.to_string()))?;
                return brown_gitler(j);
            }
            if let Some(i) = other.strip_prefix("bobg:") {
                let i: u32 = i
                    .parse()
                    .map_err(|_| Error::UnknownConstruction(other.to_string()))?;
                return bo_brown_gitler(i);
            }
            if let Some(rest) = other.strip_prefix("n:") {
                let (ring, k) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::UnknownConstruction(other.to_string()))?;
                let ring = match ring {
                    "tmf" => Ring::Tmf,
                    "bo" => Ring::Bo,
                    "hz" => Ring::Hz,
                    _ => return Err(Error::UnknownConstruction(other.to_string())),
                };
                let k: u32 =
                    k.parse().map_err(|_| Error::UnknownConstruction(other.to_string()))?;
                return weight_component(&ring_homology(ring, bound)?, k);
            }
            Err(Error::UnknownConstruction(other.to_string()))
        }
    }
}

/// Write atomically: temp file in the target directory, then rename.
fn emit(out: &Option<PathBuf>, content: &str) -> std::io::Result<()> {
    match out {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => {
            let dir = path.parent().unwrap_or(Path::new("."));
            let tmp = dir.join(format!(
                ".{}.tmp",
                path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
            ));
            {
                let mut f = std::fs::File::create(&tmp)?;
                f.write_all(content.as_bytes())?;
                f.sync_all()?;
            }
            std::fs::rename(&tmp, path)
        }
    }
}

fn chart_for(
    construction: &str,
    stem_max: i32,
    s_max: i32,
    max_degree: Option<i32>,
    suspend: i32,
) -> Result<ExtChart, Error> {
    let required = stem_max + s_max + 6;
    let bound = max_degree.unwrap_or_else(|| required.max(48));
    if bound < required {
        return Err(Error::WindowTooSmall { required_bound: required, given: bound });
    }
    let module = build_module(construction, bound)?.suspend(suspend);
    let alg = subalgebra_operators(1, 12)?;
    ext_chart(&module, &alg, stem_max, s_max)
}

fn run() -> Result<i32, (i32, String)> {
    let cli = Cli::parse();
    match cli.command {
        Command::Build { construction, max_degree, out } => {
            let module =
                build_module(&construction, max_degree).map_err(|e| (2, e.to_string()))?;
            let text = serialize_module(&module);
            emit(&out, &text).map_err(|e| (2, e.to_string()))?;
            Ok(0)
        }
        Command::Verify { suite, max_degree, case } => {
            let checks = match (suite.as_str(), &case) {
                ("davis", Some(c)) => verify::davis_suite(Some(c)),
                ("cofiber", Some(c)) => {
                    let i: u32 =
                        c.parse().map_err(|_| (2, format!("bad cofiber case `{c}`")))?;
                    verify::cofiber_suite(Some(i))
                }
                _ => verify::run_suite(&suite, max_degree),
            }
            .map_err(|e| (2, e.to_string()))?;
            let mut failed = 0;
            for c in &checks {
                if c.pass {
                    println!("PASS {}", c.id);
                } else {
                    println!("FAIL {}: {}", c.id, c.detail);
                    failed += 1;
                }
            }
            println!(
                "# {} checks, {} failed (bound {})",
                checks.len(),
                failed,
                max_degree
            );
            Ok(if failed > 0 { 1 } else { 0 })
        }
        Command::Ext { construction, stem_max, s_max, max_degree, suspend, out } => {
            let chart = chart_for(&construction, stem_max, s_max, max_degree, suspend)
                .map_err(|e| (2, e.to_string()))?;
            emit(&out, &serialize_chart(&chart)).map_err(|e| (2, e.to_string()))?;
            Ok(0)
        }
        Command::Chart { construction, format, stem_max, s_max, max_degree, suspend, cells, out } => {
            let content = if cells {
                let bound = max_degree.unwrap_or(48);
                let module = build_module(&construction, bound)
                    .map_err(|e| (2, e.to_string()))?
                    .suspend(suspend);
                if format != "svg" {
                    return Err((2, "cell diagrams render as svg only".into()));
                }
                render_cell_diagram(&module, 24, 512)
            } else {
                let chart = chart_for(&construction, stem_max, s_max, max_degree, suspend)
                    .map_err(|e| (2, e.to_string()))?;
                let spec = RenderSpec::for_chart(&chart);
                match format.as_str() {
                    "txt" => render_ascii(&chart, &spec),
                    "svg" => render_svg(&chart, &spec),
                    other => return Err((2, format!("unknown format `{other}`"))),
                }
            };
            emit(&out, &content).map_err(|e| (2, e.to_string()))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(0) => ExitCode::SUCCESS,
        Ok(code) => ExitCode::from(code as u8),
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code as u8)
        }
    }
}
