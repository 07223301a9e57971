//! The `sgp` command line: reads `.sgp` tables, runs constructions and
//! theorem checks from `sgp-core`, and renders text or JSON reports.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use sgp_core::analysis::{check_property, StructuralProperty};
use sgp_core::catalog::{enumerate_semigroups, EnumerationMode};
use sgp_core::format::{join, parse_index_list, parse_table, render_table};
use sgp_core::morphisms::{find_isomorphism, kappa, Morphism, MorphismKind};
use sgp_core::rees::{rees, SandwichVector};
use sgp_core::relations::{quotient, theta_tower, Congruence};
use sgp_core::theorems::{
    phi_experiment, sandwich_sweep, verify_embedding, verify_equalizer, verify_hereditary, verify_sequence,
    verify_tower_heredity, Report, Status,
};
use sgp_core::Semigroup;

/// Environment variable holding the seed for sampled sandwich vectors.
pub const SEED_VAR: &str = "SGP_SEED";

#[derive(Parser, Debug)]
#[command(name = "sgp", version, about = "Finite semigroups, congruence towers and Rees matrix semigroups")]
struct Cli {
    /// Emit a machine-readable JSON report instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for verification sweeps (0 = all cores)
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a table file is a semigroup
    Validate { file: PathBuf },
    /// Print the structural properties of a semigroup
    Props { file: PathBuf },
    /// Print the theta tower θ, θ^(1), … as partitions
    Theta {
        file: PathBuf,
        /// Last level to print; defaults to the stabilization level
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Build a quotient semigroup
    Quotient {
        file: PathBuf,
        /// Partition as class labels, e.g. "0 1 1"
        #[arg(long, conflicts_with = "level")]
        congruence: Option<String>,
        /// Use θ^(level) (default 0, i.e. θ itself)
        #[arg(long)]
        level: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the Rees matrix semigroup M(S; Λ; P)
    Rees {
        file: PathBuf,
        /// Sandwich vector P as comma-separated element indices
        #[arg(long)]
        sandwich: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for an isomorphism between two semigroups
    Iso { first: PathBuf, second: PathBuf },
    /// Verify a theorem: sequence, hereditary:<property>, equalizer, embedding,
    /// kappa, tower-heredity or phi-experiment
    Verify {
        theorem: String,
        files: Vec<PathBuf>,
        #[arg(long)]
        depth: Option<usize>,
        /// Sandwich vector; hereditary and embedding sweep a default family when omitted
        #[arg(long)]
        sandwich: Option<String>,
        /// Embedding τ as image indices (embedding only)
        #[arg(long)]
        tau: Option<String>,
        /// Run over every isomorphism class of this order instead of files
        #[arg(long)]
        corpus: Option<usize>,
    },
    /// Enumerate all semigroups of a given order
    Enumerate {
        #[arg(long)]
        order: usize,
        #[arg(long, default_value = "iso")]
        mode: String,
        /// Write one .sgp file per semigroup into this directory
        #[arg(long)]
        dump: Option<PathBuf>,
        /// Lift the order cap from 4 to 5
        #[arg(long)]
        allow_order_5: bool,
    },
}

/// The result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

impl From<sgp_core::Error> for Failure {
    fn from(e: sgp_core::Error) -> Self {
        usage(e.to_string())
    }
}

/// What a command produced: text lines, a JSON payload and a pass/fail verdict.
struct Rendered {
    status: Status,
    text: String,
    inputs: Value,
    data: Value,
    witness: Option<String>,
}

impl Rendered {
    fn ok(text: String, inputs: Value, data: Value) -> Self {
        Rendered { status: Status::Pass, text, inputs, data, witness: None }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
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
    let name = command_name(&cli.command);
    let json = cli.json;
    let result = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
        .map_err(|e| usage(e.to_string()))
        .and_then(|pool| pool.install(|| execute(cli.command)));
    match result {
        Ok(r) => {
            let code = if r.status == Status::Fail { 1 } else { 0 };
            let stdout = if json {
                let doc = json!({
                    "command": name,
                    "inputs": r.inputs,
                    "status": r.status,
                    "data": r.data,
                    "witness": r.witness,
                });
                format!("{}\n", serde_json::to_string_pretty(&doc).expect("values serialize"))
            } else {
                r.text
            };
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(f) => Outcome { code: f.code, stdout: String::new(), stderr: format!("sgp: {}\n", f.message) },
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Props { .. } => "props",
        Command::Theta { .. } => "theta",
        Command::Quotient { .. } => "quotient",
        Command::Rees { .. } => "rees",
        Command::Iso { .. } => "iso",
        Command::Verify { .. } => "verify",
        Command::Enumerate { .. } => "enumerate",
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Semigroup, Failure> {
    parse_table(&read_text(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn seed() -> Result<u64, Failure> {
    match std::env::var(SEED_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| usage(format!("{SEED_VAR} must be an unsigned integer"))),
        Err(_) => Ok(0),
    }
}

fn execute(command: Command) -> Result<Rendered, Failure> {
    match command {
        Command::Validate { file } => {
            let text = read_text(&file)?;
            let inputs = json!({ "file": file.display().to_string() });
            Ok(match parse_table(&text) {
                Ok(s) => Rendered::ok(
                    format!("valid semigroup of order {}\n", s.order()),
                    inputs,
                    json!({ "order": s.order() }),
                ),
                Err(e @ sgp_core::Error::ParseError { .. }) => {
                    return Err(usage(format!("{}: {e}", file.display())))
                }
                Err(e) => Rendered {
                    status: Status::Fail,
                    text: format!("invalid: {e}\n"),
                    inputs,
                    data: Value::Null,
                    witness: Some(e.to_string()),
                },
            })
        }
        Command::Props { file } => {
            let s = load(&file)?;
            let mut text = format!("order: {}\nidempotents: {}\n", s.order(), join(&s.idempotents(), " "));
            let mut props = serde_json::Map::new();
            for p in StructuralProperty::ALL {
                let v = check_property(&s, p);
                text.push_str(&format!("{p}: {v}\n"));
                props.insert(p.to_string(), json!(v));
            }
            Ok(Rendered::ok(
                text,
                json!({ "file": file.display().to_string() }),
                json!({ "order": s.order(), "idempotents": s.idempotents(), "properties": props }),
            ))
        }
        Command::Theta { file, depth } => {
            let s = load(&file)?;
            let probe = theta_tower(&s, 0)?;
            let stable = probe.stabilization_index();
            let shown = depth.unwrap_or(stable).min(stable);
            let tower = theta_tower(&s, depth.unwrap_or(stable))?;
            let levels: Vec<String> = tower.levels()[..=shown].iter().map(ToString::to_string).collect();
            let mut text: String = levels.iter().map(|l| format!("{l}\n")).collect();
            match depth {
                Some(d) if d < stable => text.push_str(&format!("not stabilized by level {d} (stabilizes at level {stable})\n")),
                _ => text.push_str(&format!("stabilized at level {stable}\n")),
            }
            Ok(Rendered::ok(
                text,
                json!({ "file": file.display().to_string(), "depth": depth }),
                json!({ "levels": levels, "stabilization_index": stable }),
            ))
        }
        Command::Quotient { file, congruence, level, out } => {
            let s = load(&file)?;
            let alpha = match congruence {
                Some(text) => {
                    let labels = parse_index_list(&text)?;
                    if labels.len() != s.order() {
                        return Err(usage(format!("partition has {} labels, expected {}", labels.len(), s.order())));
                    }
                    Congruence::from_labels(&labels)?
                }
                None => {
                    let l = level.unwrap_or(0);
                    theta_tower(&s, l)?.level(l).clone()
                }
            };
            let (q, _) = quotient(&s, &alpha)?;
            let table = render_table(&q);
            let text = emit_table(&table, out.as_deref(), &format!("# quotient by classes {alpha}\n"))?;
            Ok(Rendered::ok(
                text,
                json!({ "file": file.display().to_string(), "congruence": alpha.to_string() }),
                json!({ "order": q.order(), "table": q.rows() }),
            ))
        }
        Command::Rees { file, sandwich, out } => {
            let s = load(&file)?;
            let p = SandwichVector::new(&s, parse_index_list(&sandwich)?)?;
            let m = rees(&s, &p)?;
            let table = render_table(m.semigroup());
            let header = format!("# M(S; Λ; P) with P=({p}); (s,λ) is encoded as s*{}+λ\n", p.lambda_size());
            let text = emit_table(&table, out.as_deref(), &header)?;
            Ok(Rendered::ok(
                text,
                json!({ "file": file.display().to_string(), "sandwich": p.entries() }),
                json!({ "order": m.semigroup().order(), "lambda_size": p.lambda_size(), "table": m.semigroup().rows() }),
            ))
        }
        Command::Iso { first, second } => {
            let (s, t) = (load(&first)?, load(&second)?);
            let inputs = json!({ "first": first.display().to_string(), "second": second.display().to_string() });
            Ok(match find_isomorphism(&s, &t) {
                Some(f) => Rendered::ok(format!("isomorphic: {f}\n"), inputs, json!({ "map": f.map() })),
                None => Rendered {
                    status: Status::Fail,
                    text: "not isomorphic\n".into(),
                    inputs,
                    data: json!({ "map": Value::Null }),
                    witness: Some("no isomorphism exists".into()),
                },
            })
        }
        Command::Verify { theorem, files, depth, sandwich, tau, corpus } => {
            verify(&theorem, &files, depth, sandwich.as_deref(), tau.as_deref(), corpus)
        }
        Command::Enumerate { order, mode, dump, allow_order_5 } => {
            let parsed: EnumerationMode = mode.parse().map_err(usage)?;
            let all = enumerate_semigroups(order, parsed, allow_order_5)?;
            if let Some(dir) = &dump {
                fs::create_dir_all(dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
                for (i, s) in all.iter().enumerate() {
                    write_file(&dir.join(format!("order{order}_{i:04}.sgp")), &render_table(s))?;
                }
            }
            Ok(Rendered::ok(
                format!("order {order} {mode}: {} semigroups\n", all.len()),
                json!({ "order": order, "mode": mode, "dump": dump.map(|d| d.display().to_string()) }),
                json!({ "count": all.len() }),
            ))
        }
    }
}

fn emit_table(table: &str, out: Option<&Path>, header: &str) -> Result<String, Failure> {
    match out {
        Some(path) => {
            write_file(path, table)?;
            Ok(format!("wrote {}\n", path.display()))
        }
        None => Ok(format!("{header}{table}")),
    }
}

/// A labelled semigroup to run a theorem on.
struct Subject {
    label: String,
    semigroup: Semigroup,
}

fn subjects(files: &[PathBuf], corpus: Option<usize>) -> Result<Vec<Subject>, Failure> {
    match corpus {
        Some(n) => {
            if !files.is_empty() {
                return Err(usage("give either files or --corpus, not both"));
            }
            Ok(enumerate_semigroups(n, EnumerationMode::UpToIso, false)?
                .into_iter()
                .enumerate()
                .map(|(i, s)| Subject { label: format!("order{n}#{i}"), semigroup: s })
                .collect())
        }
        None => {
            if files.is_empty() {
                return Err(usage("no input files"));
            }
            files
                .iter()
                .map(|f| Ok(Subject { label: f.display().to_string(), semigroup: load(f)? }))
                .collect()
        }
    }
}

fn sandwich_or_sweep(s: &Semigroup, sandwich: Option<&str>, seed: u64) -> Result<Vec<SandwichVector>, Failure> {
    Ok(match sandwich {
        Some(text) => vec![SandwichVector::new(s, parse_index_list(text)?)?],
        None => sandwich_sweep(s, seed),
    })
}

fn verify(
    theorem: &str,
    files: &[PathBuf],
    depth: Option<usize>,
    sandwich: Option<&str>,
    tau: Option<&str>,
    corpus: Option<usize>,
) -> Result<Rendered, Failure> {
    let seed = seed()?;
    let mut experiment = false;
    let reports: Vec<(String, Report)> = if theorem == "embedding" {
        if corpus.is_some() || files.len() != 2 {
            return Err(usage("embedding takes exactly two files: S and T"));
        }
        let (s, t) = (load(&files[0])?, load(&files[1])?);
        let tau = tau.ok_or_else(|| usage("embedding needs --tau"))?;
        let tau = Morphism::new(parse_index_list(tau)?, t.order(), MorphismKind::Hom)?;
        let label = format!("{} -> {}", files[0].display(), files[1].display());
        let mut combined = Report::new("embedding", format!("τ=({tau})"));
        for p in sandwich_or_sweep(&s, sandwich, seed)? {
            combined.absorb(&format!("P=({p})"), verify_embedding(&s, &t, &tau, &p)?);
        }
        vec![(label, combined)]
    } else {
        let subjects = subjects(files, corpus)?;
        let run_one = |subject: &Subject| -> Result<(String, Report), Failure> {
            let s = &subject.semigroup;
            let report = match theorem {
                "sequence" => verify_sequence(s, depth.unwrap_or(2)),
                "equalizer" => verify_equalizer(s),
                "tower-heredity" => verify_tower_heredity(s, depth.unwrap_or(3)),
                "kappa" => {
                    let d = depth.unwrap_or(2);
                    let mut r = Report::new("kappa", format!("order {}, 0 <= i, j <= {d}", s.order()));
                    for i in 0..=d {
                        for j in 0..=d {
                            r.absorb(&format!("i={i},j={j}"), kappa(s, i, j)?.1);
                        }
                    }
                    r
                }
                "phi-experiment" => {
                    let text = sandwich.ok_or_else(|| usage("phi-experiment needs --sandwich"))?;
                    phi_experiment(s, &SandwichVector::new(s, parse_index_list(text)?)?)?
                }
                other => match other.strip_prefix("hereditary:") {
                    Some(prop) => {
                        let p: StructuralProperty = prop.parse().map_err(usage)?;
                        let mut r = Report::new(format!("hereditary:{p}"), format!("order {}", s.order()));
                        for v in sandwich_or_sweep(s, sandwich, seed)? {
                            r.absorb(&format!("P=({v})"), verify_hereditary(p, s, &v)?);
                        }
                        r
                    }
                    None => return Err(usage(format!("unknown theorem `{other}`"))),
                },
            };
            Ok((subject.label.clone(), report))
        };
        experiment = theorem == "phi-experiment";
        subjects.par_iter().map(run_one).collect::<Result<Vec<_>, _>>()?
    };

    let failed = reports.iter().find(|(_, r)| r.status() == Status::Fail);
    let status = if experiment {
        Status::Pass
    } else if failed.is_some() {
        Status::Fail
    } else if reports.iter().all(|(_, r)| r.status() == Status::SkippedPrecondition) {
        Status::SkippedPrecondition
    } else {
        Status::Pass
    };
    let witness = failed.and_then(|(label, r)| r.witness().map(|w| format!("{label}: {w}")));
    let mut text = String::new();
    for (label, r) in &reports {
        text.push_str(&format!("{} {} [{label}: {}]\n", r.status(), r.theorem_id(), r.inputs_summary()));
        if let Some(w) = r.witness() {
            text.push_str(&format!("  witness: {w}\n"));
        }
    }
    if experiment {
        text.push_str("(experiment: outside the proven range, status is observational)\n");
    }
    let data: Vec<Value> = reports
        .iter()
        .map(|(label, r)| json!({ "subject": label, "report": r }))
        .collect();
    Ok(Rendered {
        status,
        text,
        inputs: json!({
            "theorem": theorem,
            "files": files.iter().map(|f| f.display().to_string()).collect::<Vec<_>>(),
            "corpus": corpus,
            "depth": depth,
            "sandwich": sandwich,
            "tau": tau,
            "seed": seed,
        }),
        data: json!({ "reports": data }),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn help_is_not_an_error() {
        let o = run(["sgp", "--help"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("enumerate"));
    }

    #[test]
    fn missing_arguments_exit_two() {
        assert_eq!(run(["sgp", "rees"]).code, 2);
        assert_eq!(run(["sgp", "verify", "sequence"]).code, 2);
    }

    #[test]
    fn enumerate_json_payload() {
        let o = run(["sgp", "--json", "enumerate", "--order", "3", "--mode", "iso-anti"]);
        let doc: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(doc["data"]["count"], 18);
        assert_eq!(doc["command"], "enumerate");
        assert_eq!(doc["witness"], Value::Null);
    }

    #[test]
    fn unknown_mode_is_a_usage_error() {
        let o = run(["sgp", "enumerate", "--order", "2", "--mode", "all"]);
        assert_eq!(o.code, 2);
        assert!(o.stderr.contains("unknown mode"));
    }
}
