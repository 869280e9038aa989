use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use cnecc::convcode::{builtin_code, GeneratorMatrix};
use cnecc::design::{
    bound_report, instantaneous_comparison, render_kv, render_text, CneccDesign, DesignOptions,
    ErrorPatternSet,
};
use cnecc::errorsim::{ber_sweep, SimConfig};
use cnecc::galois::Field;
use cnecc::netgraph::{builtin_network, load_network, min_cut, random_network_code};
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Parser, Debug)]
#[command(name = "cnecc", version, about = "Design, analyze and simulate convolutional network-error-correcting codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the design report for a network, error patterns and input code.
    Analyze(AnalyzeArgs),
    /// Run a BER sweep over a grid of error probabilities and write CSV.
    Simulate(SimulateArgs),
}

#[derive(Args, Debug)]
struct NetworkArgs {
    /// Network file, or `builtin:butterfly` / `builtin:4c2`.
    #[arg(long)]
    network: String,
    /// Pattern file, or the shorthand `all-single` / `all-double`.
    #[arg(long, default_value = "all-single")]
    patterns: String,
    /// Draw random local kernels (seeded by --seed) instead of the file's kernels.
    #[arg(long)]
    random_code: bool,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[command(flatten)]
    net: NetworkArgs,
    /// Input code: builtin name (c1, c2, c3, c4c2), code file, or inline rows like "1+z^2, 1+z+z^2".
    #[arg(long)]
    code: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here (plus a `.manifest.json` sidecar) instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Exit with status 2 when the design violates a constraint.
    #[arg(long)]
    strict: bool,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[command(flatten)]
    net: NetworkArgs,
    /// Input codes to compare; each is a builtin name, code file or inline rows.
    #[arg(long, num_args = 1.., required = true)]
    codes: Vec<String>,
    /// Comma-separated list of edge error probabilities.
    #[arg(long, value_delimiter = ',', default_values_t = [0.05, 0.1, 0.15, 0.2, 0.25, 0.3])]
    p_grid: Vec<f64>,
    #[arg(long, default_value_t = 1000)]
    frames: u64,
    /// Information blocks per frame.
    #[arg(long, default_value_t = 200)]
    frame_len: usize,
    /// Decode every sink on the input-code trellis.
    #[arg(long)]
    force_input_trellis: bool,
    /// CSV output path; the manifest goes to `<out>.manifest.json`.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Text,
    Kv,
}

enum Failure {
    Invalid(anyhow::Error),
    Violation(Vec<String>),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Invalid(e)
    }
}

#[derive(Serialize)]
struct InputRecord {
    source: String,
    sha256: String,
}

#[derive(Serialize)]
struct CodeRecord {
    name: String,
    field: String,
    generator: String,
}

#[derive(Serialize)]
struct RunManifest<C: Serialize> {
    command: &'static str,
    version: &'static str,
    timestamp_unix: u64,
    network: InputRecord,
    patterns: InputRecord,
    random_code: bool,
    seed: u64,
    codes: Vec<CodeRecord>,
    config: C,
}

struct Loaded {
    design: CneccDesign,
    network: InputRecord,
    patterns: InputRecord,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn read_source(spec: &str) -> Result<String> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return builtin_network(name)
            .map(str::to_owned)
            .ok_or_else(|| anyhow!("unknown builtin network {name:?}"));
    }
    fs::read_to_string(spec).with_context(|| format!("reading {spec}"))
}

fn load(args: &NetworkArgs) -> Result<Loaded> {
    let text = read_source(&args.network)?;
    let net = load_network(&text).with_context(|| format!("parsing network {}", args.network))?;
    let code = match (net.code, args.random_code) {
        (Some(c), false) => c,
        (_, true) => {
            let n = min_cut(&net.graph)?.n;
            random_network_code(&net.graph, n, &net.field, args.seed, 100_000)?
        }
        (None, false) => bail!("network has no local kernels; pass --random-code to generate them"),
    };
    let (patterns, pattern_text) = match ErrorPatternSet::shorthand(&net.graph, &args.patterns) {
        Some(p) => (p, args.patterns.clone()),
        None => {
            let t = fs::read_to_string(&args.patterns).with_context(|| format!("reading {}", args.patterns))?;
            (ErrorPatternSet::parse(&net.graph, &t)?, t)
        }
    };
    let design = CneccDesign::build(&net.graph, &code, &patterns, None, &DesignOptions::default())?;
    Ok(Loaded {
        design,
        network: InputRecord { source: args.network.clone(), sha256: sha256_hex(text.as_bytes()) },
        patterns: InputRecord { source: args.patterns.clone(), sha256: sha256_hex(pattern_text.as_bytes()) },
    })
}

/// Resolves a code argument to a display name and generator over `field`.
fn resolve_code(spec: &str, field: &Field, index: usize) -> Result<(String, GeneratorMatrix)> {
    if let Some((q, text)) = builtin_code(spec) {
        if q != field.order() {
            bail!("code {spec} is over F_{q} but the network is over {field}");
        }
        return Ok((spec.to_owned(), GeneratorMatrix::parse(field, text)?));
    }
    let path = Path::new(spec);
    if path.is_file() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {spec}"))?;
        let name = path.file_stem().map_or_else(|| format!("code{index}"), |s| s.to_string_lossy().into_owned());
        let g = GeneratorMatrix::parse(field, &text).with_context(|| format!("parsing code file {spec}"))?;
        return Ok((name, g));
    }
    let g = GeneratorMatrix::parse(field, spec).with_context(|| format!("parsing code {spec:?}"))?;
    Ok((format!("code{index}"), g))
}

fn code_record(name: &str, g: &GeneratorMatrix) -> CodeRecord {
    CodeRecord { name: name.to_owned(), field: g.field().to_string(), generator: g.to_string() }
}

fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

fn write_manifest<C: Serialize>(out: &Path, manifest: &RunManifest<C>) -> Result<()> {
    let path = manifest_path(out);
    let json = serde_json::to_string_pretty(manifest)?;
    fs::write(&path, json + "\n").with_context(|| format!("writing {}", path.display()))
}

fn now_unix() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

fn violations(design: &CneccDesign) -> Vec<String> {
    let mut v = Vec::new();
    if let Some(i) = &design.input {
        if !i.valid {
            v.push(format!(
                "input code d_free {} is below 2 t_s + 1 = {}",
                i.profile.d_free,
                2 * design.t_s + 1
            ));
        }
        if i.profile.catastrophic {
            v.push("input code is catastrophic".into());
        }
    }
    let b = bound_report(design);
    if !b.error_weight_holds {
        v.push(format!("t_s = {} exceeds the bound {}", design.t_s, b.error_weight_bound));
    }
    if let Some(c) = &b.input {
        if !c.t_dfree_holds {
            v.push(format!("T_dfree {} exceeds the bound {}", c.t_dfree, c.t_dfree_bound));
        }
        if !c.singleton_holds {
            v.push(format!("d_free {} exceeds the Singleton bound {}", c.d_free, c.singleton_bound));
        }
    }
    v
}

fn analyze(args: &AnalyzeArgs) -> Result<(), Failure> {
    let loaded = load(&args.net)?;
    let mut design = loaded.design;
    let mut codes = Vec::new();
    if let Some(spec) = &args.code {
        let (name, g) = resolve_code(spec, &design.field, 1)?;
        design = design.with_input(&g).map_err(anyhow::Error::from)?;
        codes.push(code_record(&name, &g));
    }
    let bounds = bound_report(&design);
    let inst = instantaneous_comparison(&design);
    let report = match args.format {
        Format::Text => render_text(&design, &bounds, &inst),
        Format::Kv => render_kv(&design, &bounds, &inst),
    };
    match &args.out {
        Some(out) => {
            fs::write(out, &report).with_context(|| format!("writing {}", out.display()))?;
            #[derive(Serialize)]
            struct Config {
                format: Format,
            }
            write_manifest(
                out,
                &RunManifest {
                    command: "analyze",
                    version: env!("CARGO_PKG_VERSION"),
                    timestamp_unix: now_unix(),
                    network: loaded.network,
                    patterns: loaded.patterns,
                    random_code: args.net.random_code,
                    seed: args.net.seed,
                    codes,
                    config: Config { format: args.format },
                },
            )?;
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(report.as_bytes()).context("writing report")?;
        }
    }
    let problems = violations(&design);
    if problems.is_empty() {
        Ok(())
    } else if args.strict {
        Err(Failure::Violation(problems))
    } else {
        for p in &problems {
            eprintln!("warning: {p}");
        }
        Ok(())
    }
}

fn simulate(args: &SimulateArgs) -> Result<(), Failure> {
    let loaded = load(&args.net)?;
    let design = loaded.design;
    let codes = args
        .codes
        .iter()
        .enumerate()
        .map(|(i, s)| resolve_code(s, &design.field, i + 1))
        .collect::<Result<Vec<_>>>()?;
    for (name, g) in &codes {
        let d = design.with_input(g).map_err(anyhow::Error::from)?;
        for p in violations(&d) {
            eprintln!("warning: {name}: {p}");
        }
    }
    let cfg = SimConfig {
        frames: args.frames,
        frame_len: args.frame_len,
        seed: args.net.seed,
        p_grid: args.p_grid.clone(),
        force_input_trellis: args.force_input_trellis,
    };
    let result = ber_sweep(&design, &codes, &cfg).map_err(anyhow::Error::from)?;
    let file = fs::File::create(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    result.write_csv(std::io::BufWriter::new(file)).map_err(anyhow::Error::from)?;
    #[derive(Serialize)]
    struct Config<'a> {
        frames: u64,
        frame_len: usize,
        p_grid: &'a [f64],
        force_input_trellis: bool,
    }
    write_manifest(
        &args.out,
        &RunManifest {
            command: "simulate",
            version: env!("CARGO_PKG_VERSION"),
            timestamp_unix: now_unix(),
            network: loaded.network,
            patterns: loaded.patterns,
            random_code: args.net.random_code,
            seed: args.net.seed,
            codes: codes.iter().map(|(n, g)| code_record(n, g)).collect(),
            config: Config {
                frames: args.frames,
                frame_len: args.frame_len,
                p_grid: &args.p_grid,
                force_input_trellis: args.force_input_trellis,
            },
        },
    )?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = match &cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Simulate(s) => simulate(s),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Violation(problems)) => {
            for p in problems {
                eprintln!("design violation: {p}");
            }
            ExitCode::from(2)
        }
    }
}
