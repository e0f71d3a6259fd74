//! Command-line front end. Every command prints one JSON [`ReportEnvelope`].
//!
//! Exit codes: `0` pass, `1` verified failure, `2` usage or format error.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::drum::segre_drum;
use crate::exact::LatticeVector;
use crate::polyhedral::{dual_cone, Cone, Fan, FanJson};
use crate::quadric::mukai_witness;
use crate::rooftop::{verify_atiyah_with_cap, DEFAULT_CAP};
use crate::toric_git::{QuotientData, WeightedAction};
use crate::Error;

pub const TOOL: &str = "cstar-flips";
pub const QUADRIC_CAP: usize = 8;

#[derive(Debug, Parser)]
#[command(
    name = "cstar-flips",
    version,
    about = "Exact checks for C*-actions, toric quotients, drums and rooftop flips"
)]
pub struct Cli {
    /// Override the default size cap (m, l ≤ 6; n ≤ 8).
    #[arg(long, global = true)]
    pub max_size: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify the Atiyah flip modeled by P^m x P^l.
    Atiyah {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        l: usize,
        /// Directory for fan_minus.json, fan_plus.json and blowup.json.
        #[arg(long)]
        emit_fans: Option<PathBuf>,
    },
    /// Drum certificates.
    Drum {
        #[command(subcommand)]
        kind: DrumCommand,
    },
    /// Operations on fan files.
    Fan {
        #[command(subcommand)]
        op: FanCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum DrumCommand {
    /// The drum over (P^m x P^l, O(1,0), O(0,1)).
    Segre {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        l: usize,
    },
    /// The quadric Q^{2n} and its Mukai-flop witness.
    Quadric {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum FanCommand {
    /// Validate a fan and describe its maximal cones.
    Check { file: PathBuf },
    /// Dual of every maximal cone.
    Dual { file: PathBuf },
    /// Star subdivision at a primitive ray.
    Subdivide {
        file: PathBuf,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        ray: Vec<i64>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub tool: String,
    pub version: String,
    pub command: Vec<String>,
    pub parameters: Value,
    pub results: Value,
    /// `pass`, `fail` or `error`.
    pub verdict: String,
    pub reason: Option<String>,
}

enum Failure {
    Usage(String),
    Verified(String, Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invalid(_)
            | Error::Dimension(_)
            | Error::CapExceeded(_)
            | Error::Unsupported(_) => Failure::Usage(e.to_string()),
            other => Failure::Verified(other.to_string(), Value::Null),
        }
    }
}

struct Outcome {
    parameters: Value,
    results: Value,
    pass: bool,
    reason: Option<String>,
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code with the text destined for stdout.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let echo: Vec<String> = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return (0, e.to_string());
            }
            let env = envelope(
                echo,
                Value::Null,
                Value::Null,
                "error",
                Some(e.to_string().trim_end().to_string()),
            );
            return (2, render(&env));
        }
    };
    let (code, env) = match dispatch(&cli) {
        Ok(o) => {
            let verdict = if o.pass { "pass" } else { "fail" };
            (
                if o.pass { 0 } else { 1 },
                envelope(echo, o.parameters, o.results, verdict, o.reason),
            )
        }
        Err(Failure::Usage(r)) => (
            2,
            envelope(echo, parameters_of(&cli), Value::Null, "error", Some(r)),
        ),
        Err(Failure::Verified(r, results)) => (
            1,
            envelope(echo, parameters_of(&cli), results, "fail", Some(r)),
        ),
    };
    let text = render(&env);
    match &cli.out {
        Some(path) => match fs::write(path, &text) {
            Ok(()) => (code, String::new()),
            Err(e) => {
                let env = envelope(
                    env.command,
                    env.parameters,
                    Value::Null,
                    "error",
                    Some(format!("{}: {e}", path.display())),
                );
                (2, render(&env))
            }
        },
        None => (code, text),
    }
}

fn envelope(
    command: Vec<String>,
    parameters: Value,
    results: Value,
    verdict: &str,
    reason: Option<String>,
) -> ReportEnvelope {
    ReportEnvelope {
        tool: TOOL.into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command,
        parameters,
        results,
        verdict: verdict.into(),
        reason,
    }
}

fn render(env: &ReportEnvelope) -> String {
    let mut s = serde_json::to_string_pretty(env).expect("envelope serializes");
    s.push('\n');
    s
}

fn parameters_of(cli: &Cli) -> Value {
    let mut p = match &cli.command {
        Command::Atiyah { m, l, emit_fans } => {
            json!({ "m": m, "l": l, "emit_fans": emit_fans.as_ref().map(|p| p.display().to_string()) })
        }
        Command::Drum {
            kind: DrumCommand::Segre { m, l },
        } => json!({ "kind": "segre", "m": m, "l": l }),
        Command::Drum {
            kind: DrumCommand::Quadric { n, samples, seed },
        } => {
            json!({ "kind": "quadric", "n": n, "samples": samples, "seed": seed })
        }
        Command::Fan {
            op: FanCommand::Check { file },
        } => json!({ "op": "check", "file": file.display().to_string() }),
        Command::Fan {
            op: FanCommand::Dual { file },
        } => json!({ "op": "dual", "file": file.display().to_string() }),
        Command::Fan {
            op: FanCommand::Subdivide { file, ray },
        } => {
            json!({ "op": "subdivide", "file": file.display().to_string(), "ray": ray })
        }
    };
    p["max_size"] = json!(cli.max_size);
    p
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    let parameters = parameters_of(cli);
    match &cli.command {
        Command::Atiyah { m, l, emit_fans } => {
            let cap = cli.max_size.unwrap_or(DEFAULT_CAP);
            let report = verify_atiyah_with_cap(*m, *l, cap)?;
            if let Some(dir) = emit_fans {
                emit(dir, *m, *l)?;
            }
            let reason = failing_reason(&report);
            Ok(Outcome {
                parameters,
                results: to_value(&report),
                pass: report.pass,
                reason,
            })
        }
        Command::Drum {
            kind: DrumCommand::Segre { m, l },
        } => {
            let cap = cli.max_size.unwrap_or(DEFAULT_CAP);
            if *m > cap || *l > cap {
                return Err(Failure::Usage(format!(
                    "m = {m}, l = {l} exceeds the cap {cap}"
                )));
            }
            let cert = segre_drum(*m, *l)?;
            let reason = (!cert.pass).then(|| "Segre drum certificate failed".to_string());
            Ok(Outcome {
                parameters,
                results: to_value(&cert),
                pass: cert.pass,
                reason,
            })
        }
        Command::Drum {
            kind: DrumCommand::Quadric { n, samples, seed },
        } => {
            let cap = cli.max_size.unwrap_or(QUADRIC_CAP);
            if *n > cap {
                return Err(Failure::Usage(format!("n = {n} exceeds the cap {cap}")));
            }
            let cert = mukai_witness(*n, *samples, *seed)?;
            let reason = (!cert.pass).then(|| "quadric witness failed".to_string());
            Ok(Outcome {
                parameters,
                results: to_value(&cert),
                pass: cert.pass,
                reason,
            })
        }
        Command::Fan { op } => fan_command(op, parameters),
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report serializes")
}

fn failing_reason(r: &crate::rooftop::FlipReport) -> Option<String> {
    if r.pass {
        return None;
    }
    [
        (&r.condition1, "condition 1"),
        (&r.condition2, "condition 2"),
        (&r.condition3, "condition 3"),
    ]
    .into_iter()
    .find(|(c, _)| !c.pass)
    .map(|(c, name)| format!("{name}: {}", c.reason.clone().unwrap_or_default()))
}

fn emit(dir: &Path, m: usize, l: usize) -> Result<(), Failure> {
    let q = QuotientData::new(&WeightedAction::cobordism(m, l))?;
    fs::create_dir_all(dir).map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?;
    for (name, fan) in [
        ("fan_minus.json", &q.fan_minus),
        ("fan_plus.json", &q.fan_plus),
        ("blowup.json", &q.blowup_fan),
    ] {
        let mut text = serde_json::to_string_pretty(&fan.to_json()?).expect("fan serializes");
        text.push('\n');
        let path = dir.join(name);
        fs::write(&path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

/// Reads a fan file. Malformed JSON is reported with its line and column.
pub fn read_fan(path: &Path) -> Result<Fan, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_fan(&text).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn parse_fan(text: &str) -> Result<Fan, String> {
    let json: FanJson = serde_json::from_str(text).map_err(|e| {
        format!(
            "malformed fan JSON at line {}, column {}: {e}",
            e.line(),
            e.column()
        )
    })?;
    Fan::from_json(&json).map_err(|e| e.to_string())
}

fn rays_i64(vs: &[LatticeVector]) -> Vec<Vec<i64>> {
    vs.iter()
        .map(|v| v.to_i64().expect("coordinates fit in i64"))
        .collect()
}

fn cone_summary(fan: &Fan, i: usize) -> Result<Value, Error> {
    let c = fan.cone(i);
    Ok(json!({
        "index": i,
        "ray_indices": fan.maximal_cones()[i],
        "rays": rays_i64(c.rays()),
        "dimension": c.dim(),
        "simplicial": c.is_simplicial()?,
        "smooth": c.is_smooth()?,
    }))
}

fn fan_command(op: &FanCommand, parameters: Value) -> Result<Outcome, Failure> {
    let file = match op {
        FanCommand::Check { file }
        | FanCommand::Dual { file }
        | FanCommand::Subdivide { file, .. } => file,
    };
    let fan = read_fan(file).map_err(Failure::Usage)?;
    if let Err(e) = fan.validate() {
        return Err(Failure::Verified(e.to_string(), json!({ "valid": false })));
    }
    match op {
        FanCommand::Check { .. } => {
            let cones = (0..fan.maximal_cones().len())
                .map(|i| cone_summary(&fan, i))
                .collect::<Result<Vec<_>, _>>()?;
            let non_smooth: Vec<usize> = (0..cones.len())
                .filter(|&i| cones[i]["smooth"] != json!(true))
                .collect();
            let results = json!({
                "fan": fan.to_json()?,
                "valid": true,
                "smooth": fan.is_smooth(),
                "simplicial": fan.is_simplicial(),
                "cones": cones,
                "non_smooth_cones": non_smooth,
            });
            Ok(Outcome {
                parameters,
                results,
                pass: true,
                reason: None,
            })
        }
        FanCommand::Dual { .. } => {
            let mut cones = Vec::new();
            let mut all_self_dual = true;
            for i in 0..fan.maximal_cones().len() {
                let c = fan.cone(i);
                let d = dual_cone(&c);
                let self_dual = is_self_dual(&c, &d);
                all_self_dual &= self_dual;
                cones.push(json!({
                    "index": i,
                    "rays": rays_i64(c.rays()),
                    "dual_rays": rays_i64(d.rays()),
                    "dual_lineality": rays_i64(d.lineality()),
                    "self_dual": self_dual,
                }));
            }
            let results = json!({ "cones": cones, "self_dual": all_self_dual });
            Ok(Outcome {
                parameters,
                results,
                pass: true,
                reason: None,
            })
        }
        FanCommand::Subdivide { ray, .. } => {
            let r = LatticeVector::from_i64(ray);
            let sub = fan.star_subdivision(&r)?;
            let results = json!({
                "ray": ray,
                "fan": sub.to_json()?,
                "maximal_cones": sub.maximal_cones().len(),
                "smooth": sub.is_smooth(),
                "refines_input": sub.refines(&fan)?,
            });
            Ok(Outcome {
                parameters,
                results,
                pass: true,
                reason: None,
            })
        }
    }
}

fn is_self_dual(c: &Cone, d: &Cone) -> bool {
    let mut a = c.rays().to_vec();
    let mut b = d.rays().to_vec();
    a.sort();
    b.sort();
    c.lineality().is_empty() && d.lineality().is_empty() && a == b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, ReportEnvelope) {
        let mut v = vec!["cstar-flips"];
        v.extend_from_slice(args);
        let (code, text) = run(v);
        (code, serde_json::from_str(&text).unwrap())
    }

    #[test]
    fn atiyah_conifold() {
        let (code, env) = call(&["atiyah", "--m", "1", "--l", "1"]);
        assert_eq!(code, 0);
        assert_eq!(env.verdict, "pass");
        assert_eq!(env.results["model"], "P^1 x P^1");
    }

    #[test]
    fn usage_errors_exit_two() {
        for args in [
            &["atiyah", "--m", "0", "--l", "1"][..],
            &["atiyah", "--m", "7", "--l", "1"][..],
            &["drum", "quadric", "--n", "0"][..],
            &["drum", "segre", "--m", "-1", "--l", "1"][..],
            &["frobnicate"][..],
        ] {
            let (code, env) = call(args);
            assert_eq!(code, 2, "{args:?}");
            assert_eq!(env.verdict, "error");
            assert!(env.reason.is_some());
        }
    }

    #[test]
    fn max_size_overrides_cap() {
        let (code, _) = call(&["drum", "segre", "--m", "7", "--l", "1"]);
        assert_eq!(code, 2);
        let (code, env) = call(&["--max-size", "7", "drum", "segre", "--m", "7", "--l", "1"]);
        assert_eq!(code, 0);
        assert_eq!(env.results["projective_dimension"], 9);
    }

    #[test]
    fn malformed_fan_has_location() {
        let e = parse_fan("{\n  \"lattice_rank\": 2,\n  \"rays\": [[1, 0],\n}").unwrap_err();
        assert!(e.contains("line 4"), "{e}");
        assert!(
            parse_fan("{\"lattice_rank\": 2, \"rays\": [[2, 0]], \"maximal_cones\": [[0]]}")
                .is_err()
        );
    }
}
