mod args;
mod cache;
mod input;
mod pipeline;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use gbsiso::combinatorics::orbits;
use gbsiso::gbs::encode;
use gbsiso::graphs::Graph;
use gbsiso::GbsEncoding;
use serde::Serialize;

use args::{Cli, Command, OutputFormat, RunArgs};
use cache::Cache;
use pipeline::{certify_all, certify_orbit, compare_lazy, refine_family, FamilyReport, OrbitOutcome, PairOutcome};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}: {1}")]
    Io(String, #[source] std::io::Error),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] gbsiso::Error),
}

/// Exit status: 0 complete, 2 some orbits skipped, 1 error.
enum Completion {
    Complete,
    Partial,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(Completion::Complete) => ExitCode::SUCCESS,
        Ok(Completion::Partial) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<Completion, CliError> {
    match cli.command {
        Command::Certify { inputs, out_dir, run } => cmd_certify(&inputs, &out_dir, &run),
        Command::Compare { a, b, run } => cmd_compare(&a, b.as_deref(), &run),
        Command::Family { input, run } => cmd_family(&input, &run),
        Command::Probabilities { input, run } => cmd_probabilities(&input, &run),
        Command::Orbits { total, modes, output } => cmd_orbits(total, modes, output.unwrap_or(OutputFormat::Text)),
    }
}

fn setup(run: &RunArgs) -> Result<Cache, CliError> {
    if let Some(w) = run.workers {
        if w == 0 {
            return Err(CliError::Input("--workers must be positive".into()));
        }
        // Fails only if a pool already exists, which is harmless.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(w).build_global();
    }
    Cache::new(run.cache_dir.as_deref())
}

fn encode_all(graphs: &[Graph], run: &RunArgs) -> Result<Vec<GbsEncoding>, CliError> {
    let (c, k) = input::scaling(run, graphs)?;
    graphs.iter().map(|g| Ok(encode(g, c.clone(), k.clone())?)).collect()
}

fn same_order(graphs: &[Graph]) -> Result<usize, CliError> {
    let m = graphs[0].order();
    if graphs.iter().any(|g| g.order() != m) {
        return Err(CliError::Input("all graphs must have the same order".into()));
    }
    Ok(m)
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn completion(partial: bool) -> Completion {
    if partial {
        Completion::Partial
    } else {
        Completion::Complete
    }
}

fn file_name(label: &str, index: Option<usize>) -> String {
    let clean: String = label
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.') {
                c
            } else {
                '_'
            }
        })
        .collect();
    match index {
        Some(i) => format!("{clean}-{i}.cert.json"),
        None => format!("{clean}.cert.json"),
    }
}

fn write_atomic(path: &Path, text: &str) -> Result<(), CliError> {
    let io = |e| CliError::Io(path.display().to_string(), e);
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(text.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

#[derive(Serialize)]
struct CertifiedFile {
    label: String,
    path: PathBuf,
    orbits: usize,
    skipped: usize,
}

fn cmd_certify(inputs: &[PathBuf], out_dir: &Path, run: &RunArgs) -> Result<Completion, CliError> {
    let cache = setup(run)?;
    let mut graphs = Vec::new();
    for path in inputs {
        graphs.extend(input::read_graphs(path, run.format)?);
    }
    let encodings = encode_all(&graphs, run)?;
    std::fs::create_dir_all(out_dir).map_err(|e| CliError::Io(out_dir.display().to_string(), e))?;
    let mut written = Vec::new();
    let mut taken = std::collections::HashSet::new();
    let mut partial = false;
    for (i, e) in encodings.iter().enumerate() {
        let schedule = input::schedule(run, e.modes())?;
        let cert = certify_all(e, &schedule, run.budget, &cache)?;
        let label = cert.label.clone().unwrap_or_default();
        let mut name = file_name(&label, None);
        if !taken.insert(name.clone()) {
            name = file_name(&label, Some(i));
            taken.insert(name.clone());
        }
        let path = out_dir.join(name);
        write_atomic(&path, &cert.to_json())?;
        partial |= !cert.is_complete();
        written.push(CertifiedFile {
            label,
            path,
            orbits: cert.records.len(),
            skipped: cert.skipped.len(),
        });
    }
    match run.output.unwrap_or(OutputFormat::Text) {
        OutputFormat::Json => print_json(&written),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(std::io::stdout());
            for f in &written {
                w.serialize(f).map_err(|e| CliError::Input(e.to_string()))?;
            }
            w.flush().map_err(|e| CliError::Io("stdout".into(), e))?;
        }
        OutputFormat::Text => {
            for f in &written {
                println!(
                    "{}: {} orbits, {} skipped -> {}",
                    f.label,
                    f.orbits,
                    f.skipped,
                    f.path.display()
                );
            }
        }
    }
    Ok(completion(partial))
}

fn cmd_compare(a: &Path, b: Option<&Path>, run: &RunArgs) -> Result<Completion, CliError> {
    let cache = setup(run)?;
    let mut graphs = input::read_graphs(a, run.format)?;
    match b {
        Some(b) => {
            if graphs.len() != 1 {
                return Err(CliError::Input(format!("{}: expected one graph", a.display())));
            }
            let other = input::read_graphs(b, run.format)?;
            if other.len() != 1 {
                return Err(CliError::Input(format!("{}: expected one graph", b.display())));
            }
            graphs.extend(other);
        }
        None if graphs.len() != 2 => {
            return Err(CliError::Input(format!("{}: expected exactly two graphs", a.display())));
        }
        None => {}
    }
    let modes = same_order(&graphs)?;
    let encodings = encode_all(&graphs, run)?;
    let schedule = input::schedule(run, modes)?;
    let outcome = compare_lazy(&encodings[0], &encodings[1], &schedule, run.budget, &cache)?;
    print_compare(&outcome, &graphs, run.output.unwrap_or(OutputFormat::Text))?;
    Ok(completion(!outcome.skipped.is_empty()))
}

fn print_compare(o: &PairOutcome, graphs: &[Graph], fmt: OutputFormat) -> Result<(), CliError> {
    let r = &o.report;
    match fmt {
        OutputFormat::Json => print_json(o),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(std::io::stdout());
            let orbit = r
                .threshold_orbit
                .as_ref()
                .map(|t| t.representative().compressed())
                .unwrap_or_default();
            let crit = r.separating_criterion.map(|c| c.to_string()).unwrap_or_default();
            let rows = [
                [
                    "verdict",
                    "threshold_orbit",
                    "separating_criterion",
                    "max_total_examined",
                ]
                .map(String::from),
                [r.verdict.to_string(), orbit, crit, o.max_total_examined.to_string()],
            ];
            for row in rows {
                w.write_record(&row).map_err(|e| CliError::Input(e.to_string()))?;
            }
            w.flush().map_err(|e| CliError::Io("stdout".into(), e))?;
        }
        OutputFormat::Text => {
            let label = |i: usize| graphs[i].label().unwrap_or("?").to_owned();
            println!("{} vs {}: {}", label(0), label(1), r.verdict);
            match (&r.threshold_orbit, r.separating_criterion) {
                (Some(t), Some(c)) => println!(
                    "threshold orbit {t} ({}), criterion {c}",
                    t.representative().compressed()
                ),
                _ => println!("no separation up to |n| = {}", o.max_total_examined),
            }
            for s in &o.skipped {
                println!("skipped {}: {}", s.orbit, s.reason);
            }
        }
    }
    Ok(())
}

fn cmd_family(path: &Path, run: &RunArgs) -> Result<Completion, CliError> {
    let cache = setup(run)?;
    let graphs = input::read_graphs(path, run.format)?;
    let modes = same_order(&graphs)?;
    let encodings = encode_all(&graphs, run)?;
    let schedule = input::schedule(run, modes)?;
    let report = refine_family(&encodings, &schedule, run.budget, &cache)?;
    print_family(&report, run.output.unwrap_or(OutputFormat::Text))?;
    Ok(completion(!report.skipped.is_empty()))
}

fn print_family(r: &FamilyReport, fmt: OutputFormat) -> Result<(), CliError> {
    match fmt {
        OutputFormat::Json => print_json(r),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(std::io::stdout());
            w.write_record(["orbit", "classes_after", "newly_distinguished"])
                .map_err(|e| CliError::Input(e.to_string()))?;
            for s in &r.steps {
                w.write_record([
                    s.orbit.representative().compressed(),
                    s.classes_after.to_string(),
                    s.newly_distinguished.to_string(),
                ])
                .map_err(|e| CliError::Input(e.to_string()))?;
            }
            w.flush().map_err(|e| CliError::Io("stdout".into(), e))?;
        }
        OutputFormat::Text => {
            println!("{} graphs, {} classes", r.labels.len(), r.classes.len());
            for s in &r.steps {
                println!(
                    "{:<24} classes {:>5}  newly distinguished {:>5}",
                    s.orbit.representative().compressed(),
                    s.classes_after,
                    s.newly_distinguished
                );
            }
            for (i, class) in r.classes.iter().enumerate() {
                let names: Vec<&str> = class.iter().map(|&m| r.labels[m].as_str()).collect();
                println!("class {i}: {}", names.join(" "));
            }
            for s in &r.skipped {
                println!("skipped {}: {}", s.orbit, s.reason);
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct ProbabilityRow {
    total_photons: u64,
    orbit_representative: String,
    orbit_size: String,
    orbit_probability: f64,
}

fn cmd_probabilities(path: &Path, run: &RunArgs) -> Result<Completion, CliError> {
    let cache = setup(run)?;
    let graphs = input::read_graphs(path, run.format)?;
    if graphs.len() != 1 {
        return Err(CliError::Input(format!("{}: expected one graph", path.display())));
    }
    let e = &encode_all(&graphs, run)?[0];
    let mut rows = Vec::new();
    let mut partial = false;
    for o in input::schedule(run, e.modes())? {
        match certify_orbit(e, &o, run.budget, &cache)? {
            OrbitOutcome::Done(r) if r.probability > 0.0 => rows.push(ProbabilityRow {
                total_photons: o.total(),
                orbit_representative: o.representative().compressed(),
                orbit_size: o.size().to_string(),
                orbit_probability: r.probability,
            }),
            OrbitOutcome::Done(_) => {}
            OrbitOutcome::Skipped(_) => partial = true,
        }
    }
    match run.output.unwrap_or(OutputFormat::Csv) {
        OutputFormat::Json => print_json(&rows),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(std::io::stdout());
            for r in &rows {
                w.serialize(r).map_err(|e| CliError::Input(e.to_string()))?;
            }
            w.flush().map_err(|e| CliError::Io("stdout".into(), e))?;
        }
        OutputFormat::Text => {
            println!("c = {}, k = {}, prefactor = {:.12e}", e.c(), e.k(), e.prefactor());
            for r in &rows {
                println!(
                    "{:>3}  {:<24} {:>12}  {:.12e}",
                    r.total_photons, r.orbit_representative, r.orbit_size, r.orbit_probability
                );
            }
        }
    }
    Ok(completion(partial))
}

#[derive(Serialize)]
struct OrbitRow {
    representative: String,
    size: String,
    zero_probability: bool,
}

fn cmd_orbits(total: u64, modes: usize, fmt: OutputFormat) -> Result<Completion, CliError> {
    let rows: Vec<OrbitRow> = orbits(total, modes)?
        .iter()
        .map(|o| OrbitRow {
            representative: o.representative().compressed(),
            size: o.size().to_string(),
            zero_probability: o.is_forced_zero(),
        })
        .collect();
    match fmt {
        OutputFormat::Json => print_json(&rows),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(std::io::stdout());
            for r in &rows {
                w.serialize(r).map_err(|e| CliError::Input(e.to_string()))?;
            }
            w.flush().map_err(|e| CliError::Io("stdout".into(), e))?;
        }
        OutputFormat::Text => {
            for r in &rows {
                let flag = if r.zero_probability { "  zero" } else { "" };
                println!("{:<24} {:>12}{flag}", r.representative, r.size);
            }
        }
    }
    Ok(Completion::Complete)
}
