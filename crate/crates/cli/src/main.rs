use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use isoconv::actions::{apply_action, invert_action, ActionKind, ActionSpec};
use isoconv::analysis::{
    build_windows, column_bound, free_distance_estimate, is_gdp, is_mdp_minors, is_output_observable,
    singleton_bound, window_length, DEFAULT_ENUM_BUDGET,
};
use isoconv::erasure::{channel_erase, decode_stream, random_codeword_stream, ChannelModel, DecodeOptions};
use isoconv::json::{
    matrix_entries_to_json, matrix_from_json, poly_matrix_from_json, poly_matrix_to_json, stream_to_jsonl,
    system_from_json, system_to_json, system_to_string,
};
use isoconv::matrix::{MinorIndex, DEFAULT_MINOR_BUDGET};
use isoconv::search::{are_equivalent, conjecture_probe, random_systems, Flag, SearchCriteria, Witness};
use isoconv::{CodeHandle, Error, FieldSpec, IsoSystem};

/// Overrides every enumeration budget (minors, erasure subsets, input
/// sequences).
const BUDGET_ENV: &str = "ISOCONV_BUDGET";

#[derive(Parser)]
#[command(name = "isoconv", version, about = "Convolutional codes from I/S/O representations")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the primary output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct WindowArg {
    /// Window parameter L; defaults to floor(delta/k) + floor(delta/(n-k)).
    #[arg(long = "window-L")]
    window_l: Option<usize>,
}

impl WindowArg {
    fn resolve(&self, sys: &IsoSystem) -> usize {
        self.window_l
            .unwrap_or_else(|| window_length(sys.n(), sys.k(), sys.delta()))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Structural flags of a system file.
    Check {
        system: PathBuf,
        #[command(flatten)]
        window: WindowArg,
    },
    /// Minimal encoder G(z) of the code.
    Encoder { system: PathBuf },
    /// Encode a k-row polynomial vector (JSON) into a codeword.
    Encode {
        system: PathBuf,
        #[arg(long)]
        input: String,
    },
    /// Apply a group action to a system.
    Transform {
        system: PathBuf,
        #[arg(long)]
        action: String,
        /// Matrix file of the action.
        #[arg(long)]
        matrix: PathBuf,
        /// Apply the inverse action.
        #[arg(long)]
        inverse: bool,
    },
    /// Ranks, flags, bounds, distances and witnesses.
    Analyze {
        system: PathBuf,
        #[command(flatten)]
        window: WindowArg,
        /// Input length horizon for distance enumeration (default: L).
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Send a random codeword stream through an erasure channel and decode.
    Simulate {
        #[arg(long)]
        system: PathBuf,
        /// Number of blocks.
        #[arg(long)]
        length: usize,
        #[arg(long, default_value_t = 0.05)]
        erasure_prob: f64,
        #[arg(long, value_enum, default_value_t = Model::Iid)]
        model: Model,
        #[arg(long, default_value_t = 2)]
        burst_len: usize,
        #[arg(long, default_value_t = 10)]
        burst_gap: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        window: WindowArg,
        /// Advance L+1 blocks after a recovered window.
        #[arg(long)]
        jump: bool,
        /// Report file (default: the primary output).
        #[arg(long)]
        report: Option<PathBuf>,
        /// Also write the received stream as JSON lines.
        #[arg(long)]
        stream_out: Option<PathBuf>,
    },
    /// Random search for systems with the requested flags.
    Search {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        delta: usize,
        /// Comma separated: reachable, observable, output_observable, gdp,
        /// gdp_restricted, mdp_minors, superregular_tl.
        #[arg(long, value_delimiter = ',', default_value = "reachable,observable")]
        flags: Vec<String>,
        /// Number of candidates drawn.
        #[arg(long, default_value_t = 1000)]
        budget: usize,
        /// Stop after this many hits.
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        window: WindowArg,
    },
    /// Permutation equivalence of two codes.
    Equiv { first: PathBuf, second: PathBuf },
    /// Sample non-diagonal actions on an MDP system.
    ProbeConjecture {
        system: PathBuf,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        window: WindowArg,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    Iid,
    Burst,
}

/// Domain failure, reported as JSON on stderr with exit code 1.
struct Failure {
    kind: String,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure {
            kind: e.kind().to_string(),
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        kind: "io".into(),
        message: format!("{}: {e}", path.display()),
    }
}

type Out<T> = std::result::Result<T, Failure>;

fn budget() -> Out<u64> {
    match std::env::var(BUDGET_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| Failure {
            kind: "invalid_argument".into(),
            message: format!("{BUDGET_ENV} must be a non-negative integer, got {s:?}"),
        }),
        Err(_) => Ok(DEFAULT_ENUM_BUDGET.max(DEFAULT_MINOR_BUDGET)),
    }
}

fn read_json(path: &Path) -> Out<Value> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    Ok(serde_json::from_str(&text).map_err(Error::from)?)
}

fn load_system(path: &Path) -> Out<IsoSystem> {
    Ok(system_from_json(&read_json(path)?)?)
}

fn write_file(path: &Path, text: &str) -> Out<()> {
    fs::write(path, text).map_err(|e| io_failure(path, e))
}

fn seed_or_random(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(rand::random)
}

fn minor_json(m: &Option<MinorIndex>) -> Value {
    match m {
        Some(m) => json!({"rows": m.rows, "cols": m.cols}),
        None => Value::Null,
    }
}

/// Pretty JSON with objects spread over lines and object-free arrays kept
/// on one line.
fn to_pretty(v: &Value) -> String {
    let mut out = String::new();
    pretty_into(&mut out, v, 0);
    out.push('\n');
    out
}

fn contains_object(v: &Value) -> bool {
    match v {
        Value::Object(_) => true,
        Value::Array(xs) => xs.iter().any(contains_object),
        _ => false,
    }
}

fn pretty_into(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent + 1);
    match v {
        Value::Object(m) if !m.is_empty() => {
            out.push_str("{\n");
            for (i, (k, x)) in m.iter().enumerate() {
                out.push_str(&format!("{pad}{}: ", Value::String(k.clone())));
                pretty_into(out, x, indent + 1);
                out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
        Value::Array(xs) if contains_object(v) => {
            out.push_str("[\n");
            for (i, x) in xs.iter().enumerate() {
                out.push_str(&pad);
                pretty_into(out, x, indent + 1);
                out.push_str(if i + 1 < xs.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}

/// Rendering of a JSON value for `--format text`.
fn render_text(v: &Value) -> String {
    let mut out = String::new();
    render_into(&mut out, v, 0);
    out
}

fn is_scalar_row(v: &Value) -> bool {
    match v {
        Value::Array(xs) => xs.iter().all(|x| !x.is_object() && !x.is_array() || is_scalar_row(x)),
        _ => !v.is_object(),
    }
}

fn render_into(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if x.is_object() || (x.is_array() && !is_scalar_row(x)) {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render_into(out, x, indent + 1);
                } else if let Some(rows) = matrix_rows(x) {
                    out.push_str(&format!("{pad}{k}:\n"));
                    for r in rows {
                        out.push_str(&format!("{pad}  {r}\n"));
                    }
                } else {
                    out.push_str(&format!("{pad}{k}: {}\n", scalar_text(x)));
                }
            }
        }
        Value::Array(xs) => {
            for x in xs {
                if x.is_object() || x.is_array() {
                    out.push_str(&format!("{pad}-\n"));
                    render_into(out, x, indent + 1);
                } else {
                    out.push_str(&format!("{pad}- {}\n", scalar_text(x)));
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar_text(v))),
    }
}

/// Rows of a rectangular array of arrays, one line each.
fn matrix_rows(v: &Value) -> Option<Vec<String>> {
    let Value::Array(rows) = v else { return None };
    if rows.is_empty() || !rows.iter().all(Value::is_array) {
        return None;
    }
    Some(
        rows.iter()
            .map(|r| {
                r.as_array()
                    .expect("checked")
                    .iter()
                    .map(scalar_text)
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect(),
    )
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

struct Emitter {
    format: Format,
    output: Option<PathBuf>,
}

impl Emitter {
    fn emit(&self, v: &Value) -> Out<()> {
        let text = match self.format {
            Format::Json => to_pretty(v),
            Format::Text => render_text(v),
        };
        self.raw(&text)
    }

    fn raw(&self, text: &str) -> Out<()> {
        match &self.output {
            Some(p) => write_file(p, text),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn run(cli: Cli) -> Out<()> {
    let em = Emitter {
        format: cli.format,
        output: cli.output,
    };
    match cli.command {
        Command::Check { system, window } => {
            let sys = load_system(&system)?;
            let l = window.resolve(&sys);
            let budget = budget()?;
            let w = build_windows(&sys, l);
            let gdp = match is_gdp(&sys, l, false, budget) {
                Ok(r) => json!(r.gdp),
                Err(Error::WindowTooShort(_) | Error::BudgetExceeded(_)) => Value::Null,
                Err(e) => return Err(e.into()),
            };
            let mdp = match is_mdp_minors(&sys, l, budget) {
                Ok(r) => json!(r.superregular),
                Err(_) if sys.d().is_zero() => json!(false),
                Err(Error::BudgetExceeded(_)) => Value::Null,
                Err(e) => return Err(e.into()),
            };
            em.emit(&json!({
                "reachable": sys.is_reachable(),
                "observable": sys.is_observable(),
                "output_observable": is_output_observable(&sys, l),
                "gdp": gdp,
                "mdp_minors": mdp,
                "f_full_rank": w.f.has_full_rank(),
                "window_L": l,
                "alpha": w.alpha,
            }))
        }
        Command::Encoder { system } => {
            let sys = load_system(&system)?;
            let g = sys.extract_encoder()?;
            let degs: Vec<Value> = g.column_degrees().into_iter().map(|d| json!(d)).collect();
            em.emit(&json!({
                "encoder": poly_matrix_to_json(&g),
                "column_degrees": degs,
                "external_degree": g.external_degree()?,
            }))
        }
        Command::Encode { system, input } => {
            let sys = load_system(&system)?;
            let v: Value = serde_json::from_str(&input).map_err(Error::from)?;
            let u = poly_matrix_from_json(sys.spec(), &v)?;
            let word = sys.encode(&u)?;
            em.emit(&json!({
                "codeword": poly_matrix_to_json(&word),
                "member": sys.contains(&word)?,
            }))
        }
        Command::Transform {
            system,
            action,
            matrix,
            inverse,
        } => {
            let sys = load_system(&system)?;
            let kind = ActionKind::parse(&action)?;
            let m = matrix_from_json(sys.spec(), &read_json(&matrix)?)?;
            let mut act = ActionSpec::new(kind, m)?;
            if inverse {
                act = invert_action(&act);
            }
            let out = apply_action(&sys, &act)?;
            match em.format {
                Format::Json => em.raw(&system_to_string(&out)),
                Format::Text => em.emit(&system_to_json(&out)),
            }
        }
        Command::Analyze {
            system,
            window,
            horizon,
        } => {
            let sys = load_system(&system)?;
            let l = window.resolve(&sys);
            em.emit(&analyze(&sys, l, horizon.unwrap_or(l), budget()?)?)
        }
        Command::Simulate {
            system,
            length,
            erasure_prob,
            model,
            burst_len,
            burst_gap,
            seed,
            window,
            jump,
            report,
            stream_out,
        } => {
            let sys = load_system(&system)?;
            let l = window.resolve(&sys);
            let seed = seed_or_random(seed);
            let model = match model {
                Model::Iid => {
                    if !(0.0..=1.0).contains(&erasure_prob) {
                        return Err(Error::InvalidArgument("erasure probability must lie in [0, 1]".into()).into());
                    }
                    ChannelModel::Iid { eps: erasure_prob }
                }
                Model::Burst => ChannelModel::Burst {
                    len: burst_len,
                    gap: burst_gap,
                },
            };
            let sent = random_codeword_stream(&sys, length, seed)?;
            let received = channel_erase(&sent, sys.n(), model, seed.wrapping_add(1))?;
            let rep = decode_stream(&sys, l, &received, DecodeOptions { jump })?;
            let exact = rep
                .recovered
                .iter()
                .zip(&sent)
                .all(|(r, s)| r.as_ref().is_none_or(|r| r == s));
            let model_json = match model {
                ChannelModel::Iid { eps } => json!({"kind": "iid", "erasure_prob": eps}),
                ChannelModel::Burst { len, gap } => json!({"kind": "burst", "len": len, "gap": gap}),
            };
            let v = json!({
                "seed": seed,
                "blocks": length,
                "n": sys.n(),
                "window_L": l,
                "jump": jump,
                "model": model_json,
                "erasures": rep.stats.erasures,
                "recovered": rep.stats.recovered,
                "unresolved": rep.stats.unresolved,
                "windows_processed": rep.stats.windows_processed,
                "failures": rep.failures,
                "reanchors": rep.reanchors,
                "exact": exact,
            });
            if let Some(p) = stream_out {
                write_file(&p, &stream_to_jsonl(&received))?;
            }
            match report {
                Some(p) => write_file(&p, &to_pretty(&v))
                    .and_then(|_| if em.output.is_some() { em.emit(&v) } else { Ok(()) }),
                None => em.emit(&v),
            }
        }
        Command::Search {
            p,
            r,
            n,
            k,
            delta,
            flags,
            budget,
            limit,
            seed,
            window,
        } => {
            let field = FieldSpec::new(p, r, None)?;
            let flags = flags.iter().map(|f| Flag::parse(f.trim())).collect::<Result<Vec<_>, _>>()?;
            let seed = seed_or_random(seed);
            let criteria = SearchCriteria {
                field,
                n,
                k,
                delta,
                flags,
                budget,
                seed,
                window_l: window.window_l,
            };
            let mut text = String::new();
            for cand in random_systems(criteria)?.take(limit.unwrap_or(usize::MAX)) {
                let line = json!({"seed": seed, "index": cand.index, "system": system_to_json(&cand.system)});
                text.push_str(&line.to_string());
                text.push('\n');
            }
            em.raw(&text)
        }
        Command::Equiv { first, second } => {
            let c1 = CodeHandle::new(load_system(&first)?);
            let c2 = CodeHandle::new(load_system(&second)?);
            let verdict = are_equivalent(&c1, &c2)?;
            let witness = match &verdict.witness {
                Witness::Permutation(p) => json!({"permutation": p}),
                Witness::SeparatingWord { word, in_first } => json!({
                    "separating_word": poly_matrix_to_json(word),
                    "in": if *in_first { "first" } else { "second" },
                }),
                Witness::PerPermutation(f) => json!({
                    "failures": f.iter().map(|(p, from_first, col)| json!({
                        "permutation": p,
                        "generator_of": if *from_first { "first" } else { "second" },
                        "column": col,
                    })).collect::<Vec<_>>(),
                }),
            };
            em.emit(&json!({"equivalent": verdict.equivalent, "witness": witness}))
        }
        Command::ProbeConjecture {
            system,
            trials,
            seed,
            window,
        } => {
            let sys = load_system(&system)?;
            let l = window.resolve(&sys);
            let seed = seed_or_random(seed);
            let rep = conjecture_probe(&sys, trials, seed, l)?;
            let sample_json = |s: &isoconv::search::ProbeSample| {
                json!({
                    "kind": s.kind.name(),
                    "matrix": matrix_entries_to_json(&s.matrix),
                    "survives": s.survives,
                    "cyclic_closure": s.cyclic_closure,
                })
            };
            em.emit(&json!({
                "label": rep.label,
                "seed": rep.seed,
                "window_L": rep.l,
                "non_diagonal": {
                    "sampled": rep.samples.len(),
                    "survivors": rep.survivors(),
                    "samples": rep.samples.iter().map(sample_json).collect::<Vec<_>>(),
                },
                "diagonal_control": {
                    "sampled": rep.control.len(),
                    "survivors": rep.control_survival(),
                },
                "candidates": rep.candidates().into_iter().map(sample_json).collect::<Vec<_>>(),
            }))
        }
    }
}

fn analyze(sys: &IsoSystem, l: usize, horizon: usize, budget: u64) -> Out<Value> {
    let (n, k, delta) = (sys.n(), sys.k(), sys.delta());
    let w = build_windows(sys, l);
    let (gdp, gdp_failing) = match is_gdp(sys, l, false, budget) {
        Ok(r) => (json!(r.gdp), json!(r.failing)),
        Err(Error::WindowTooShort(_) | Error::BudgetExceeded(_)) => (Value::Null, Value::Null),
        Err(e) => return Err(e.into()),
    };
    let (mdp_minors, minor_witness) = match is_mdp_minors(sys, l, budget) {
        Ok(r) => (json!(r.superregular), minor_json(&r.witness)),
        Err(_) if sys.d().is_zero() => (json!(false), Value::Null),
        Err(Error::BudgetExceeded(_)) => (Value::Null, Value::Null),
        Err(e) => return Err(e.into()),
    };
    let bounds_col: Vec<usize> = (0..=l).map(|j| column_bound(n, k, j)).collect();
    let singleton = singleton_bound(n, k, delta);
    let (distances, mdp_distances, mds) = match free_distance_estimate(sys, horizon.max(l), budget) {
        Ok(fd) => {
            let col = fd.column_distances[..=l].to_vec();
            let mdp = col.iter().zip(&bounds_col).all(|(d, b)| d == b);
            let mds = if fd.converged { json!(fd.value == singleton) } else { Value::Null };
            (
                json!({
                    "column": col,
                    "free_estimate": fd.value,
                    "free_converged": fd.converged,
                    "horizon": fd.horizon,
                }),
                json!(mdp),
                mds,
            )
        }
        Err(Error::BudgetExceeded(msg)) => (json!({"skipped": msg}), Value::Null, Value::Null),
        Err(e) => return Err(e.into()),
    };
    let mut out = Map::new();
    out.insert("n".into(), json!(n));
    out.insert("k".into(), json!(k));
    out.insert("delta".into(), json!(delta));
    out.insert("window_L".into(), json!(l));
    out.insert("alpha".into(), json!(w.alpha));
    out.insert(
        "ranks".into(),
        json!({
            "controllability": sys.controllability().rank(),
            "observability": sys.observability().rank(),
            "omega": w.omega.rank(),
            "F_L": w.f.rank(),
            "T_L": w.t.rank(),
        }),
    );
    out.insert(
        "flags".into(),
        json!({
            "reachable": sys.is_reachable(),
            "observable": sys.is_observable(),
            "output_observable": is_output_observable(sys, l),
            "gdp": gdp,
            "mdp_minors": mdp_minors,
            "mdp_distances": mdp_distances,
            "mds": mds,
        }),
    );
    out.insert("bounds".into(), json!({"singleton": singleton, "column": bounds_col}));
    out.insert("distances".into(), distances);
    out.insert(
        "witnesses".into(),
        json!({"gdp_failing_columns": gdp_failing, "vanishing_minor": minor_witness}),
    );
    Ok(Value::Object(out))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", json!({"error": f.kind, "message": f.message}));
            ExitCode::from(1)
        }
    }
}
