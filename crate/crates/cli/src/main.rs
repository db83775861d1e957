use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::anyhow;
use clap::{Args, Parser, Subcommand};
use kappa_core::bounds::{
    delta_surface, kappa_certificate, lower_bound_free_product, GroupProfile,
};
use kappa_core::homology::{cup_pairing_on_h1, has_property_a, homology_summary};
use kappa_core::io::{self, NamedComplex};
use kappa_core::reduce::{simplify_pipeline, PreservationSpec, ReduceError};
use kappa_core::report::{run_report, ReportOptions};
use kappa_core::surfaces::{
    catalog, classify, desk_search, homeosurf_hypotheses, parity_obstruction_search,
    SearchProgress, SurfaceError,
};
use kappa_core::{Complex2, SurfaceId};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "kappa",
    version,
    about = "Simplicial complexity toolkit for 2-complexes"
)]
struct Cli {
    /// Per-stage Betti snapshots in traces and reports.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Preserve {
    /// Keep this many H2 classes (the first ones of the coordinate basis).
    #[arg(long, conflicts_with = "preserve")]
    target_rank: Option<usize>,
    /// JSON list of 2-cochains, each a list of triangles, to keep surjective.
    #[arg(long)]
    preserve: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced F2 Betti numbers and (co)cycle representatives.
    Homology { file: PathBuf },
    /// Cup product form on H1 with values in H2.
    CupForm { file: PathBuf },
    /// Property (A) with a radical witness when it fails.
    PropertyA { file: PathBuf },
    /// Closed-surface recognition and classification.
    Classify {
        file: PathBuf,
        /// Also check the recognition hypotheses against this surface.
        #[arg(long)]
        surface: Option<SurfaceId>,
    },
    /// Simplify to a complex whose edges all lie in two or more triangles.
    Reduce {
        file: PathBuf,
        #[command(flatten)]
        preserve: Preserve,
        /// Where to write the simplified complex (default: standard output).
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
        /// Where to write the trace (default: standard output when -o is given).
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Parse and re-emit a complex in canonical form.
    Canon {
        file: PathBuf,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Lower bound for a surface group or a group profile.
    Bounds {
        #[arg(long, required_unless_present = "profile", conflicts_with = "profile")]
        surface: Option<SurfaceId>,
        /// JSON group profile: name, h1, h2, property_a, presentation_note.
        #[arg(long)]
        profile: Option<PathBuf>,
    },
    /// Write a validated triangulation of a surface.
    Catalog {
        surface: SurfaceId,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Exhaustive search for small closed surfaces.
    Search {
        #[arg(long)]
        max_vertices: usize,
        #[arg(long, required_unless_present = "parity")]
        target: Option<SurfaceId>,
        /// Search for a single edge of degree 3 with all others of degree 2.
        #[arg(long, conflicts_with = "target")]
        parity: bool,
    },
    /// Full certificate: simplify, check floors, classify, bound.
    Report {
        file: PathBuf,
        /// Expected surface type of the simplified complex.
        #[arg(long)]
        surface: Option<SurfaceId>,
        #[command(flatten)]
        preserve: Preserve,
        /// JSON instead of text.
        #[arg(long)]
        json: bool,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
}

/// Failure classes with distinct exit codes.
enum Failure {
    Parse(anyhow::Error),
    Precondition(anyhow::Error),
    Certification(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 3,
            Failure::Precondition(_) => 4,
            Failure::Certification(_) => 5,
        }
    }
}

impl From<ReduceError> for Failure {
    fn from(e: ReduceError) -> Self {
        Failure::Precondition(e.into())
    }
}

impl From<SurfaceError> for Failure {
    fn from(e: SurfaceError) -> Self {
        Failure::Precondition(e.into())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Precondition(e.into())
    }
}

type Outcome = Result<(), Failure>;

fn load(path: &Path) -> Result<NamedComplex, Failure> {
    io::parse_complex(path).map_err(|e| Failure::Parse(e.into()))
}

fn load_spec(p: &Preserve, k: &Complex2) -> Result<PreservationSpec, Failure> {
    match (&p.preserve, p.target_rank) {
        (Some(path), _) => io::parse_preservation(path).map_err(|e| Failure::Parse(e.into())),
        (None, Some(r)) => Ok(PreservationSpec::first_h2_classes(k, r)?),
        (None, None) => Ok(PreservationSpec::default()),
    }
}

fn write_to(path: Option<&Path>, text: &str) -> Outcome {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Failure::Precondition(anyhow!("cannot write {}: {e}", p.display()))),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn print_json(v: &impl serde::Serialize) -> Outcome {
    let text = serde_json::to_string_pretty(v).expect("serializable");
    write_to(None, &(text + "\n"))
}

fn labels_of_edges(k: &Complex2, cochain: &kappa_core::Gf2Vector) -> Vec<Value> {
    cochain
        .ones()
        .map(|i| json!(k.edge_labels(k.edges()[i])))
        .collect()
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Homology { file } => {
            let nc = load(&file)?;
            let k = &nc.complex;
            let s = homology_summary(k);
            let cycles: Vec<Vec<Value>> = s.cycle_bases[1]
                .iter()
                .map(|z| labels_of_edges(k, &z.coefficients))
                .collect();
            print_json(&json!({
                "name": nc.name,
                "counts": k.counts(),
                "euler_characteristic": k.euler_characteristic(),
                "betti": s.betti,
                "h1_cycles": cycles,
            }))
        }
        Command::CupForm { file } => {
            let nc = load(&file)?;
            let p = cup_pairing_on_h1(&nc.complex);
            let values: Vec<Vec<Vec<usize>>> = p
                .values
                .iter()
                .map(|row| row.iter().map(|v| v.ones().collect()).collect())
                .collect();
            print_json(&json!({
                "name": nc.name,
                "b1": p.b1,
                "b2": p.b2,
                "rank": p.rank(),
                "radical_dimension": p.b1 - p.rank(),
                "scalar_matrix": p.scalar_matrix(),
                "values": values,
            }))
        }
        Command::PropertyA { file } => {
            let nc = load(&file)?;
            let a = has_property_a(&nc.complex);
            print_json(&json!({
                "name": nc.name,
                "property_a": a.holds,
                "witness_edges": a.witness.as_ref().map(|w| labels_of_edges(&nc.complex, &w.coefficients)),
            }))
        }
        Command::Classify { file, surface } => {
            let nc = load(&file)?;
            let c = classify(&nc.complex);
            let hyp = surface.map(|s| homeosurf_hypotheses(&nc.complex, s));
            print_json(&json!({ "name": nc.name, "classification": c, "hypotheses": hyp }))?;
            match surface {
                Some(s) if c.surface != Some(s) => Err(Failure::Certification(format!(
                    "classified as {}, expected {s}",
                    c.surface
                        .map_or("no closed surface".to_owned(), |x| x.to_string())
                ))),
                _ => Ok(()),
            }
        }
        Command::Reduce {
            file,
            preserve,
            output,
            trace,
        } => {
            let nc = load(&file)?;
            let spec = load_spec(&preserve, &nc.complex)?;
            let (l, tr) = simplify_pipeline(&nc.complex, &spec, cli.verbose)?;
            if tr.output_trivial {
                eprintln!("note: simplified complex has no triangles");
            }
            let name = if nc.name.is_empty() {
                "L".to_owned()
            } else {
                format!("{} reduced", nc.name)
            };
            write_to(output.as_deref(), &io::emit_complex(&name, &l))?;
            let trace_text = serde_json::to_string_pretty(&tr).expect("serializable") + "\n";
            match (trace, output) {
                (Some(t), _) => write_to(Some(&t), &trace_text),
                (None, Some(_)) => write_to(None, &trace_text),
                (None, None) => Ok(()),
            }
        }
        Command::Canon { file, output } => {
            let nc = load(&file)?;
            write_to(output.as_deref(), &io::emit_complex(&nc.name, &nc.complex))
        }
        Command::Bounds { surface, profile } => match (surface, profile) {
            (Some(s), _) => {
                let bound = lower_bound_free_product(&GroupProfile::surface(s));
                let cert = kappa_certificate(s).ok();
                print_json(&json!({
                    "bound": bound,
                    "delta": delta_surface(s),
                    "kappa_certificate": cert,
                }))
            }
            (None, Some(path)) => {
                let g = io::parse_profile(&path).map_err(|e| Failure::Parse(e.into()))?;
                print_json(&json!({ "bound": lower_bound_free_product(&g) }))
            }
            (None, None) => Err(Failure::Precondition(anyhow!(
                "need --surface or --profile"
            ))),
        },
        Command::Catalog { surface, output } => {
            let entry = catalog(surface)?;
            eprintln!(
                "{surface}: {} triangles ({})",
                entry.complex.num_triangles(),
                entry.source
            );
            write_to(
                output.as_deref(),
                &io::emit_complex(&surface.to_string(), &entry.complex),
            )
        }
        Command::Search {
            max_vertices,
            target,
            parity,
        } => {
            let progress = |p: SearchProgress| eprintln!("{} {}/{}", p.phase, p.done, p.total);
            if parity {
                let r = parity_obstruction_search(max_vertices, Some(&progress))?;
                print_json(&r)?;
                return match r.found.len() {
                    0 => Ok(()),
                    n => Err(Failure::Certification(format!(
                        "{n} complexes violate the parity obstruction"
                    ))),
                };
            }
            let target = target.expect("clap requires --target");
            let r = desk_search(max_vertices, target, Some(&progress))?;
            print_json(&r)
        }
        Command::Report {
            file,
            surface,
            preserve,
            json,
            output,
        } => {
            let nc = load(&file)?;
            let spec = match (&preserve.preserve, preserve.target_rank) {
                (None, None) => None,
                _ => Some(load_spec(&preserve, &nc.complex)?),
            };
            let opts = ReportOptions {
                surface,
                spec,
                target_rank: None,
                verbose: cli.verbose,
            };
            let r = run_report(&nc.name, &nc.complex, &opts)?;
            let text = if json {
                serde_json::to_string_pretty(&r).expect("serializable") + "\n"
            } else {
                r.to_text()
            };
            write_to(output.as_deref(), &text)?;
            if r.success {
                Ok(())
            } else {
                Err(Failure::Certification(
                    "requested certification failed".to_owned(),
                ))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Parse(e) | Failure::Precondition(e) => eprintln!("error: {e}"),
                Failure::Certification(m) => eprintln!("not certified: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}
