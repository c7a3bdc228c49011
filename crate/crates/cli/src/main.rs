use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use qmodels::cyclic::{
    build_cyclic_model, semidirect_stationarity, verify_half_liberation, verify_k_symmetry, CyclicModelData,
};
use qmodels::exact::{Cyc, DEFAULT_TOL};
use qmodels::group::{PermGroup, DEFAULT_CAP};
use qmodels::io::{read_json, write_json, AutoFile, GeneratorsFile, GroupFile, RepFile, SplitFile};
use qmodels::magic::words::DEFAULT_WORD_LEN;
use qmodels::magic::{
    bichon_build, stationarity_check, verify_magic, DualPresentation, MagicModel, OrbitStructure, Reference,
};
use qmodels::quasiflat::{
    classical_model_from_family, latin_family_search, quasiflat_dual_check, uniform_check, LatinSearchResult,
};
use qmodels::report::{Mode, Report, RunConfig, Status, DEFAULT_SEED};
use qmodels::suite::run_suite;
use qmodels::thoma::{check_stationarity, FiniteData, DEFAULT_MAX_WORD_LEN};
use qmodels::{Error, Result};

#[derive(Parser)]
#[command(name = "qmodels", version, about = "Exact matrix models for finite quantum permutation groups")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Exact cyclotomic arithmetic (default)
    #[arg(long, global = true, conflicts_with = "float")]
    exact: bool,
    /// Double-precision arithmetic with tolerance --tol
    #[arg(long, global = true)]
    float: bool,
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, global = true)]
    max_word_len: Option<usize>,
    /// Maximum number of group elements to enumerate
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Also write the JSON output here (the built model for build commands)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Stationarity of the induced-representation model of a virtually abelian group
    ThomaCheck {
        #[arg(long, requires = "lambda", conflicts_with = "split")]
        group: Option<PathBuf>,
        /// Abelian normal subgroup, as generators in the same degree
        #[arg(long)]
        lambda: Option<PathBuf>,
        /// Split extension Λ ⋊ Φ
        #[arg(long)]
        split: Option<PathBuf>,
    },
    /// Check that a model is a magic unitary in every fiber
    MagicVerify {
        #[arg(long)]
        model: PathBuf,
    },
    /// Orbit structure of a group, a dual presentation, or a model
    Orbits {
        #[arg(long, conflicts_with_all = ["sizes", "model"])]
        group: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', conflicts_with = "model")]
        sizes: Option<Vec<usize>>,
        #[arg(long)]
        model: Option<PathBuf>,
    },
    /// Compare a model's state with the Haar state on words
    Stationarity {
        /// Classical reference group
        #[arg(long, conflicts_with = "dual_reference")]
        reference: Option<PathBuf>,
        /// Group dual, presented by the listed generators
        #[arg(long)]
        dual_reference: Option<PathBuf>,
        #[arg(long)]
        model: PathBuf,
    },
    /// Block model from finite-order unitaries
    DualBuild {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long)]
        rep: PathBuf,
    },
    /// Cyclic model from a representation and an automorphism
    CyclicBuild {
        #[command(flatten)]
        data: CyclicInput,
    },
    /// Half-liberation, K-symmetry and, given the data, semidirect stationarity
    CyclicVerify {
        #[arg(long, conflicts_with = "group")]
        model: Option<PathBuf>,
        #[command(flatten)]
        data: OptionalCyclicInput,
    },
    /// Search for a Latin family and certify the resulting model
    LatinSearch {
        #[arg(long)]
        group: PathBuf,
        /// Family size; defaults to the common orbit size
        #[arg(long)]
        k: Option<usize>,
    },
    /// Uniformity of a generating tuple
    UniformCheck {
        #[arg(long)]
        group: PathBuf,
        /// Generating tuple; defaults to the group's own generators
        #[arg(long)]
        gens: Option<PathBuf>,
    },
    /// Quasi-flatness of a model of a group dual via spectral multiplicities
    DualFlatCheck {
        /// One file per point of the model
        #[arg(long, required = true)]
        rep: Vec<PathBuf>,
        #[arg(long)]
        k: usize,
    },
    /// Run the acceptance suite
    Suite,
}

#[derive(Args)]
struct CyclicInput {
    #[arg(long)]
    group: PathBuf,
    #[arg(long)]
    rep: PathBuf,
    #[arg(long)]
    auto: PathBuf,
    #[arg(long)]
    k: usize,
}

#[derive(Args)]
struct OptionalCyclicInput {
    #[arg(long, requires_all = ["rep", "auto", "k"])]
    group: Option<PathBuf>,
    #[arg(long)]
    rep: Option<PathBuf>,
    #[arg(long)]
    auto: Option<PathBuf>,
    #[arg(long)]
    k: Option<usize>,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::ThomaCheck { .. } => "thoma-check",
            Command::MagicVerify { .. } => "magic-verify",
            Command::Orbits { .. } => "orbits",
            Command::Stationarity { .. } => "stationarity",
            Command::DualBuild { .. } => "dual-build",
            Command::CyclicBuild { .. } => "cyclic-build",
            Command::CyclicVerify { .. } => "cyclic-verify",
            Command::LatinSearch { .. } => "latin-search",
            Command::UniformCheck { .. } => "uniform-check",
            Command::DualFlatCheck { .. } => "dual-flat-check",
            Command::Suite => "suite",
        }
    }

    fn inputs(&self) -> Vec<String> {
        let paths: Vec<&PathBuf> = match self {
            Command::ThomaCheck { group, lambda, split } => [group, lambda, split].into_iter().flatten().collect(),
            Command::MagicVerify { model } => vec![model],
            Command::Orbits { group, model, .. } => [group, model].into_iter().flatten().collect(),
            Command::Stationarity { reference, dual_reference, model } => {
                [reference, dual_reference].into_iter().flatten().chain([model]).collect()
            }
            Command::DualBuild { rep, .. } => vec![rep],
            Command::CyclicBuild { data } => vec![&data.group, &data.rep, &data.auto],
            Command::CyclicVerify { model, data } => {
                [model, &data.group, &data.rep, &data.auto].into_iter().flatten().collect()
            }
            Command::LatinSearch { group, .. } => vec![group],
            Command::UniformCheck { group, gens } => [Some(group), gens.as_ref()].into_iter().flatten().collect(),
            Command::DualFlatCheck { rep, .. } => rep.iter().collect(),
            Command::Suite => vec![],
        };
        paths.into_iter().map(|p| p.display().to_string()).collect()
    }
}

fn config(g: &Global, command: &Command) -> RunConfig {
    RunConfig {
        mode: if g.float { Mode::Float } else { Mode::Exact },
        tol: g.tol,
        max_word_len: g.max_word_len,
        cap: g.cap,
        seed: g.seed,
        inputs: command.inputs(),
        out: g.out.as_ref().map(|p| p.display().to_string()),
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn read_model(path: &PathBuf) -> Result<MagicModel<Cyc>> {
    read_json(path)
}

fn read_group(path: &PathBuf, cfg: &RunConfig) -> Result<PermGroup> {
    read_json::<GroupFile>(path)?.to_group(cfg.cap)
}

fn read_cyclic(
    group: &PathBuf,
    rep: &PathBuf,
    auto: &PathBuf,
    k: usize,
    cfg: &RunConfig,
) -> Result<CyclicModelData<Cyc>> {
    let l = read_group(group, cfg)?;
    let images = read_json::<RepFile>(rep)?.images;
    let sigma = read_json::<AutoFile>(auto)?.images;
    CyclicModelData::new(&l, &images, &sigma, k, 0.0)
}

/// Outcome of a command before it is wrapped in a report; `artifact` is
/// what `--out` writes for build commands.
struct Outcome {
    status: Status,
    witnesses: Vec<Value>,
    result: Value,
    artifact: Option<Value>,
}

impl Outcome {
    fn new(pass: bool, witnesses: Vec<Value>, result: Value) -> Self {
        let status = if pass { Status::Pass } else { Status::Fail };
        Outcome { status, witnesses, result, artifact: None }
    }
}

/// Runs `f` on the exact model or its float image, depending on the mode.
macro_rules! with_mode {
    ($cfg:expr, $model:expr, |$m:ident, $tol:ident| $body:expr) => {
        match $cfg.mode {
            Mode::Exact => {
                let $m = &$model;
                let $tol = 0.0;
                $body
            }
            Mode::Float => {
                let $m = &$model.to_float();
                let $tol = $cfg.tol;
                $body
            }
        }
    };
}

fn run(command: &Command, cfg: &RunConfig) -> Result<Outcome> {
    match command {
        Command::ThomaCheck { group, lambda, split } => {
            let len = cfg.word_len_or(DEFAULT_MAX_WORD_LEN);
            let cert = match (group, lambda, split) {
                (Some(g), Some(l), None) => {
                    let gamma = read_group(g, cfg)?;
                    let lam = read_json::<GroupFile>(l)?.to_group(cfg.cap)?;
                    check_stationarity(&FiniteData::new(gamma, lam)?, len)?
                }
                (None, None, Some(s)) => check_stationarity(&read_json::<SplitFile>(s)?.to_data(cfg.cap)?, len)?,
                _ => return Err(Error::Parse("give either --group with --lambda, or --split".into())),
            };
            let witnesses = cert.first_failure.iter().map(to_value).collect();
            Ok(Outcome::new(cert.stationary, witnesses, to_value(&cert)))
        }
        Command::MagicVerify { model } => {
            let model = read_model(model)?;
            let report = with_mode!(cfg, model, |m, tol| verify_magic(m, tol));
            Ok(Outcome::new(report.pass, report.violations.iter().map(to_value).collect(), to_value(&report)))
        }
        Command::Orbits { group, sizes, model } => {
            let orbits = match (group, sizes, model) {
                (Some(g), None, None) => OrbitStructure::classical(&read_group(g, cfg)?),
                (None, Some(s), None) => OrbitStructure::dual(s),
                (None, None, Some(m)) => {
                    let model = read_model(m)?;
                    with_mode!(cfg, model, |m, tol| OrbitStructure::from_model(m, tol))
                }
                _ => return Err(Error::Parse("give exactly one of --group, --sizes, --model".into())),
            };
            Ok(Outcome::new(true, vec![], to_value(&orbits)))
        }
        Command::Stationarity { reference, dual_reference, model } => {
            let reference = match (reference, dual_reference) {
                (Some(g), None) => Reference::Classical(read_group(g, cfg)?),
                (None, Some(g)) => {
                    let file = read_json::<GroupFile>(g)?;
                    let gamma = file.to_group(cfg.cap)?;
                    Reference::Dual(DualPresentation::new(&gamma, &file.generators)?)
                }
                _ => return Err(Error::Parse("give one of --reference or --dual-reference".into())),
            };
            let model = read_model(model)?;
            let len = cfg.word_len_or(DEFAULT_WORD_LEN);
            let cert = with_mode!(cfg, model, |m, tol| stationarity_check(&reference, m, len, tol))?;
            let witnesses = cert.first_mismatch.iter().map(to_value).collect();
            Ok(Outcome::new(cert.stationary, witnesses, to_value(&cert)))
        }
        Command::DualBuild { sizes, rep } => {
            let images = read_json::<RepFile>(rep)?.images;
            let model = bichon_build(sizes, &images, 0.0)?;
            let magic = verify_magic(&model, 0.0);
            let model_json = to_value(&model);
            Ok(Outcome {
                artifact: Some(model_json.clone()),
                ..Outcome::new(magic.pass, vec![], json!({ "magic": magic, "model": model_json }))
            })
        }
        Command::CyclicBuild { data } => {
            let data = read_cyclic(&data.group, &data.rep, &data.auto, data.k, cfg)?;
            let model = build_cyclic_model(&data)?;
            let model_json = to_value(&model);
            Ok(Outcome {
                artifact: Some(model_json.clone()),
                ..Outcome::new(true, vec![], json!({ "model": model_json }))
            })
        }
        Command::CyclicVerify { model, data } => {
            let (model, semidirect) = match (model, &data.group) {
                (Some(m), None) => (read_model(m)?, None),
                (None, Some(g)) => {
                    let (rep, auto, k) =
                        (data.rep.as_ref().expect("clap"), data.auto.as_ref().expect("clap"), data.k.expect("clap"));
                    let d = read_cyclic(g, rep, auto, k, cfg)?;
                    let cert = semidirect_stationarity(d.group(), d.sigma(), d.k())?;
                    (build_cyclic_model(&d)?, Some(cert))
                }
                _ => return Err(Error::Parse("give --model, or --group with --rep, --auto and --k".into())),
            };
            let (half, ksym) =
                with_mode!(cfg, model, |m, tol| (verify_half_liberation(m, tol), verify_k_symmetry(m, tol)));
            let mut witnesses: Vec<Value> = half.witnesses.iter().map(to_value).collect();
            witnesses
                .extend(ksym.witnesses.iter().map(|(x, i, j)| json!({ "k_symmetry": { "point": x, "i": i, "j": j } })));
            if let Some(f) = semidirect.as_ref().and_then(|c| c.first_failure.as_ref()) {
                witnesses.push(to_value(f));
            }
            let pass = half.pass && ksym.pass && semidirect.as_ref().is_none_or(|c| c.stationary);
            let result = json!({ "half_liberation": half, "k_symmetry": ksym, "semidirect": semidirect });
            Ok(Outcome::new(pass, witnesses, result))
        }
        Command::LatinSearch { group, k } => {
            let g = read_group(group, cfg)?;
            let k = match k {
                Some(k) => *k,
                None => OrbitStructure::classical(&g).common_size.ok_or(Error::NotQuasiTransitive)?,
            };
            let search = latin_family_search(&g, k)?;
            match &search {
                LatinSearchResult::Found { family, .. } => {
                    let cert = classical_model_from_family(&g, family, cfg.word_len_or(DEFAULT_WORD_LEN))?;
                    let pass = cert.all_pass();
                    let model_json = to_value(&cert.model);
                    Ok(Outcome {
                        artifact: Some(model_json),
                        ..Outcome::new(pass, vec![], json!({ "search": search, "certificate": cert }))
                    })
                }
                LatinSearchResult::NoFamily { .. } => Ok(Outcome {
                    status: Status::NoFamily,
                    witnesses: vec![to_value(&search)],
                    result: json!({ "search": search }),
                    artifact: None,
                }),
            }
        }
        Command::UniformCheck { group, gens } => {
            let gamma = read_group(group, cfg)?;
            let generators = match gens {
                Some(p) => read_json::<GeneratorsFile>(p)?.generators,
                None => gamma.generators().to_vec(),
            };
            let cert = uniform_check(&gamma, &generators)?;
            let witnesses = cert.failing_conditions.iter().map(|c| json!({ "condition": c })).collect();
            Ok(Outcome::new(cert.uniform, witnesses, to_value(&cert)))
        }
        Command::DualFlatCheck { rep, k } => {
            let fibers = rep.iter().map(|p| Ok(read_json::<RepFile>(p)?.images)).collect::<Result<Vec<_>>>()?;
            let cert = match cfg.mode {
                Mode::Exact => quasiflat_dual_check(&fibers, *k, 0.0)?,
                Mode::Float => {
                    let float: Vec<Vec<_>> = fibers.iter().map(|f| f.iter().map(|m| m.to_float()).collect()).collect();
                    quasiflat_dual_check(&float, *k, cfg.tol)?
                }
            };
            let witnesses = cert.witnesses.iter().map(|(g, x)| json!({ "generator": g, "point": x })).collect();
            Ok(Outcome::new(cert.pass, witnesses, to_value(&cert)))
        }
        Command::Suite => {
            let r = run_suite(cfg);
            Ok(Outcome { status: r.status, witnesses: r.witnesses, result: r.result, artifact: None })
        }
    }
}

fn summary(report: &Report) -> String {
    let status = serde_json::to_value(report.status).expect("status");
    let mut s = format!("{}: {}", report.command, status.as_str().unwrap_or_default());
    if let Some(w) = report.witnesses.first() {
        let text = w.to_string();
        let short: String = text.chars().take(200).collect();
        s.push_str(&format!("\n  witness: {short}{}", if short.len() < text.len() { " …" } else { "" }));
        if report.witnesses.len() > 1 {
            s.push_str(&format!("\n  ({} witnesses in total)", report.witnesses.len()));
        }
    }
    if let Some(ms) = report.timing_ms {
        s.push_str(&format!("\n  {ms:.1} ms"));
    }
    s
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = config(&cli.global, &cli.command);
    let name = cli.command.name();
    let start = Instant::now();
    let outcome = cfg.validate().and_then(|_| run(&cli.command, &cfg));
    let (report, artifact) = match outcome {
        Ok(o) => (Report::with_status(name, &cfg, o.status, o.witnesses, o.result), o.artifact),
        Err(e) => (Report::error(name, &cfg, &e), None),
    };
    let report = report.timed(start.elapsed().as_secs_f64() * 1e3);
    let mut code = report.status.exit_code();
    if let Some(path) = &cli.global.out {
        let written = match &artifact {
            Some(a) => write_json(path, a),
            None => write_json(path, &report),
        };
        if let Err(e) = written {
            eprintln!("{e}");
            code = Status::Error.exit_code();
        }
    }
    println!("{}", report.to_json_string());
    eprintln!("{}", summary(&report));
    ExitCode::from(code as u8)
}
