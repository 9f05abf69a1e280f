//! Command-line front end. Every subcommand validates its flags, calls one
//! or two library operations and hands the record to [`crate::emit`].
//!
//! Exit codes: 0 success, 2 validation error, 3 failed mathematical
//! precondition, 4 golden-table mismatch.

use std::collections::BTreeMap;
use std::ffi::OsString;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use crate::admissible::{build_profile, params_for_ray, sasaki_lift_check, ProfileParams};
use crate::cone::{classify, h1_signed, positivity_range, whole_cone_rules, WholeConeReport};
use crate::emit::{emit, to_json, Format, Record};
use crate::error::Error;
use crate::quotient::{orb_c1_report, orb_fano_predicate, quotient_data, OrbC1Report, QuotientData};
use crate::rational::Rational;
use crate::replay::replay_tables;
use crate::topology::{
    bouquet_label, bouquet_level_set, g_map, invariant_report, BouquetLabel, InvariantReport,
};
use crate::types::{validate_join, validate_join_relaxed, BaseManifold, JoinParams, ReebRay};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "sascone",
    version,
    about = "Positivity in the w-Sasaki cone of weighted S^3 joins"
)]
pub struct Cli {
    /// Output format: json, csv or text.
    #[arg(long, global = true, default_value = "json")]
    pub format: String,

    /// Run a JSON batch of commands instead of a single subcommand.
    #[arg(long)]
    pub config: Option<std::path::PathBuf>,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Contact c1, spin, torsion order, bouquet labels and B.
    Invariants(JoinArgs),
    /// Log pair data of a quasi-regular ray and orbifold Fano test.
    Quotient {
        #[command(flatten)]
        join: JoinArgs,
        #[command(flatten)]
        ray: RayArgs,
    },
    /// Positive or indefinite, with distance to the range boundary.
    Classify {
        #[command(flatten)]
        join: JoinArgs,
        #[command(flatten)]
        ray: RayArgs,
        /// Declared distance between an irregular ray and its approximant.
        #[arg(long, default_value = "0")]
        boundary_tol: String,
    },
    /// Exact positivity range in the slope v1/v2.
    Range(JoinArgs),
    /// Level sets of g(j) = gcd(l, 2(k - j)), or the labels of a join.
    Bouquet(BouquetArgs),
    /// Admissible profile with positive Ricci form from raw parameters.
    Metric(MetricArgs),
    /// Admissible profile of the log pair of a ray.
    MetricFromRay {
        #[command(flatten)]
        join: JoinArgs,
        #[command(flatten)]
        ray: RayArgs,
        #[arg(long)]
        r: Option<f64>,
        #[arg(long, default_value_t = 101)]
        grid: usize,
        /// Where the samples go: csv (stdout, report on stderr) or json.
        #[arg(long, default_value = "csv")]
        out: String,
    },
    /// Check that m Θ is independent of m along several rays.
    Lift {
        #[command(flatten)]
        join: JoinArgs,
        /// Comma separated slopes, e.g. "3/2,4/3".
        #[arg(long)]
        rays: String,
        #[arg(long)]
        r: Option<f64>,
        #[arg(long, default_value_t = 101)]
        grid: usize,
    },
    /// Signed Einstein–Hilbert functional from total scalar curvature and volume.
    H1 {
        #[arg(long, allow_hyphen_values = true)]
        s: f64,
        #[arg(long)]
        v: f64,
        /// Half of (dimension - 1).
        #[arg(long)]
        n_half: u32,
    },
    /// Recompute the published tables; exit 4 on any mismatch.
    ReplayTables,
}

#[derive(Debug, Clone, Args)]
pub struct JoinArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub l1: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub l2: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub w1: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub w2: i64,
    /// cp<p>, sigma<g> or custom:<dim>:<c1>.
    #[arg(long, default_value = "cp1")]
    pub base: String,
    /// Accept joins with gcd(l2, l1*w1*w2) != 1.
    #[arg(long)]
    pub allow_singular: bool,
}

#[derive(Debug, Clone, Args)]
pub struct RayArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub v1: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub v2: Option<i64>,
    /// The slope as "a/b", instead of --v1/--v2.
    #[arg(long)]
    pub ratio: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct BouquetArgs {
    #[arg(long)]
    pub k: Option<u64>,
    #[arg(long)]
    pub l: Option<u64>,
    #[arg(long)]
    pub i: Option<u64>,
    /// With --l2, --w1 and --w2: report the labels of this join instead.
    #[arg(long)]
    pub l1: Option<i64>,
    #[arg(long)]
    pub l2: Option<i64>,
    #[arg(long)]
    pub w1: Option<i64>,
    #[arg(long)]
    pub w2: Option<i64>,
    #[arg(long, default_value = "cp1")]
    pub base: String,
}

impl BouquetArgs {
    fn join(&self) -> Option<JoinArgs> {
        Some(JoinArgs {
            l1: self.l1?,
            l2: self.l2?,
            w1: self.w1?,
            w2: self.w2?,
            base: self.base.clone(),
            allow_singular: false,
        })
    }
}

#[derive(Debug, Clone, Args)]
pub struct MetricArgs {
    #[arg(long)]
    pub m1: u64,
    #[arg(long)]
    pub m2: u64,
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<f64>,
    #[arg(long = "dN", alias = "dn")]
    pub d_n: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub fano_index: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub n: i64,
    #[arg(long, default_value_t = 101)]
    pub grid: usize,
    #[arg(long, default_value = "csv")]
    pub out: String,
}

/// What a command printed and how it exited.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(e: &Error) -> Self {
        Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

impl JoinArgs {
    fn build(&self, notes: &mut Vec<String>) -> Result<JoinParams, Error> {
        let base: BaseManifold = self.base.parse()?;
        let join = if self.allow_singular {
            validate_join_relaxed(self.l1, self.l2, self.w1, self.w2, base)?
        } else {
            validate_join(self.l1, self.l2, self.w1, self.w2, base)?
        };
        if self.w1 < self.w2 {
            notes.push(format!(
                "note: w given as ({}, {}), using ({}, {})",
                self.w1,
                self.w2,
                join.w1(),
                join.w2()
            ));
        }
        Ok(join)
    }
}

impl RayArgs {
    fn ratio(&self) -> Result<Rational, Error> {
        match (&self.ratio, self.v1, self.v2) {
            (Some(text), None, None) => {
                let r: Rational = text.parse()?;
                if r.signum() <= 0 {
                    return Err(Error::Parse {
                        what: "positive ratio v1/v2",
                        input: text.clone(),
                    });
                }
                Ok(r)
            }
            (None, Some(v1), Some(v2)) => Ok(ReebRay::new(v1, v2)?.ratio()),
            _ => Err(Error::Parse {
                what: "ray (give --v1 and --v2, or --ratio)",
                input: format!("{self:?}"),
            }),
        }
    }

    fn ray(&self) -> Result<ReebRay, Error> {
        ReebRay::from_ratio(self.ratio()?)
    }
}

#[derive(Serialize)]
struct InvariantsOutput {
    invariants: InvariantReport,
    whole_cone: Option<WholeConeReport>,
}
impl Record for InvariantsOutput {}

#[derive(Serialize)]
struct QuotientOutput {
    ray: ReebRay,
    quotient: QuotientData,
    orb_c1: OrbC1Report,
    orb_fano: bool,
}
impl Record for QuotientOutput {}

#[derive(Serialize)]
#[serde(untagged)]
enum BouquetOutput {
    Label(BouquetLabel),
    LevelSets {
        k: u64,
        l: u64,
        level_sets: BTreeMap<u64, Vec<u64>>,
    },
}
impl Record for BouquetOutput {}

#[derive(Serialize)]
struct H1Output {
    h1: f64,
}
impl Record for H1Output {}

fn parse_format(text: &str) -> Result<Format, Error> {
    text.parse()
}

fn profile_outcome(
    profile: &crate::admissible::MetricProfile,
    out: &str,
    notes: Vec<String>,
) -> Result<Outcome, Error> {
    let mut stderr: String = notes.iter().map(|n| format!("{n}\n")).collect();
    match parse_format(out)? {
        Format::Csv => {
            stderr.push_str(&to_json(&profile.report));
            Ok(Outcome {
                code: EXIT_OK,
                stdout: profile.to_csv(),
                stderr,
            })
        }
        format => Ok(Outcome {
            code: EXIT_OK,
            stdout: emit(profile, format),
            stderr,
        }),
    }
}

fn dispatch(command: &Command, format: Format) -> Result<Outcome, Error> {
    let mut notes = Vec::new();
    let outcome = match command {
        Command::Invariants(args) => {
            let join = args.build(&mut notes)?;
            let base = join.base();
            let whole_cone = base
                .is_projective_space(base.dim_c)
                .then(|| whole_cone_rules(base.dim_c, &join))
                .transpose()?;
            let record = InvariantsOutput {
                invariants: invariant_report(&join),
                whole_cone,
            };
            Outcome::ok(emit(&record, format))
        }
        Command::Quotient { join, ray } => {
            let join = join.build(&mut notes)?;
            let v = ray.ray()?;
            let quotient = quotient_data(&join, &v)?;
            let record = QuotientOutput {
                ray: v,
                orb_c1: orb_c1_report(&join, &v, &quotient)?,
                orb_fano: orb_fano_predicate(&join, &v),
                quotient,
            };
            Outcome::ok(emit(&record, format))
        }
        Command::Classify {
            join,
            ray,
            boundary_tol,
        } => {
            let join = join.build(&mut notes)?;
            let tolerance: Rational = boundary_tol.parse()?;
            let record = classify(&join, ray.ratio()?, tolerance);
            if record.on_boundary {
                notes.push("warning: ray lies on the boundary of the positivity range".into());
            } else if record.near_boundary {
                notes.push("warning: verdict undecided within the declared tolerance".into());
            }
            Outcome::ok(emit(&record, format))
        }
        Command::Range(args) => {
            let join = args.build(&mut notes)?;
            Outcome::ok(emit(&positivity_range(&join), format))
        }
        Command::Bouquet(args) => {
            let record = match (args.join(), args.k, args.l) {
                (Some(join), _, _) => {
                    let join = join.build(&mut notes)?;
                    if !join.base().is_projective_space(1) {
                        notes.push("bouquet labels not applicable (base is not CP^1)".into());
                    }
                    BouquetOutput::Label(bouquet_label(&join)?)
                }
                (None, Some(k), Some(l)) => {
                    let values: Vec<u64> = match args.i {
                        Some(i) => vec![i],
                        None => (1..=k).map(|j| g_map(k, j, l)).collect(),
                    };
                    let level_sets = values
                        .into_iter()
                        .map(|i| (i, bouquet_level_set(k, l, i).into_iter().collect()))
                        .collect();
                    BouquetOutput::LevelSets { k, l, level_sets }
                }
                _ => {
                    return Err(Error::Parse {
                        what: "bouquet arguments (give --k and --l, or a join)",
                        input: String::new(),
                    })
                }
            };
            Outcome::ok(emit(&record, format))
        }
        Command::Metric(args) => {
            let params = match args.r {
                Some(r) => ProfileParams::new(args.m1, args.m2, args.d_n, r, args.n, args.fano_index)?,
                None => ProfileParams::with_default_r(args.m1, args.m2, args.d_n, args.n, args.fano_index)?,
            };
            let profile = build_profile(&params, args.grid)?;
            profile_outcome(&profile, &args.out, std::mem::take(&mut notes))?
        }
        Command::MetricFromRay {
            join,
            ray,
            r,
            grid,
            out,
        } => {
            let join = join.build(&mut notes)?;
            let (_, params) = params_for_ray(&join, &ray.ray()?, *r)?;
            if !crate::admissible::ricci_box_check(&params) {
                notes.push("warning: c1^orb is not positive for this ray; Ricci form is not positive".into());
            }
            let profile = build_profile(&params, *grid)?;
            profile_outcome(&profile, out, std::mem::take(&mut notes))?
        }
        Command::Lift { join, rays, r, grid } => {
            let join = join.build(&mut notes)?;
            let rays = rays
                .split(',')
                .map(|s| s.parse::<Rational>().and_then(ReebRay::from_ratio))
                .collect::<Result<Vec<_>, _>>()?;
            let report = sasaki_lift_check(&join, &rays, *r, *grid)?;
            Outcome::ok(emit(&report, format))
        }
        Command::H1 { s, v, n_half } => Outcome::ok(emit(
            &H1Output {
                h1: h1_signed(*s, *v, *n_half)?,
            },
            format,
        )),
        Command::ReplayTables => {
            let report = replay_tables();
            let mut outcome = Outcome::ok(emit(&report, format));
            if !report.all_passed() {
                outcome.code = EXIT_MISMATCH;
                outcome.stderr = report.diff();
            }
            outcome
        }
    };
    let mut outcome = outcome;
    let prefix: String = notes.iter().map(|n| format!("{n}\n")).collect();
    outcome.stderr = prefix + &outcome.stderr;
    Ok(outcome)
}

/// Turns one batch entry into an argument vector. Objects become
/// `command --key value ...` with keys in sorted order; `true` becomes a
/// bare flag.
fn batch_entry_args(entry: &Value) -> Result<Vec<String>, Error> {
    let bad = || Error::Parse {
        what: "batch entry",
        input: entry.to_string(),
    };
    match entry {
        Value::Array(items) => items
            .iter()
            .map(|v| match v {
                Value::String(s) => Ok(s.clone()),
                Value::Number(n) => Ok(n.to_string()),
                _ => Err(bad()),
            })
            .collect(),
        Value::Object(map) => {
            let command = map.get("command").and_then(Value::as_str).ok_or_else(bad)?;
            let mut args = vec![command.to_string()];
            for (key, value) in map.iter().filter(|(k, _)| k.as_str() != "command") {
                let flag = format!("--{}", key.replace('_', "-"));
                match value {
                    Value::Bool(true) => args.push(flag),
                    Value::Bool(false) | Value::Null => {}
                    Value::String(s) => args.extend([flag, s.clone()]),
                    Value::Number(n) => args.extend([flag, n.to_string()]),
                    _ => return Err(bad()),
                }
            }
            Ok(args)
        }
        _ => Err(bad()),
    }
}

fn run_batch(path: &std::path::Path, format: &str) -> Outcome {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            return Outcome {
                code: EXIT_VALIDATION,
                stdout: String::new(),
                stderr: format!("error: cannot read {}: {e}\n", path.display()),
            }
        }
    };
    let entries: Vec<Value> = match serde_json::from_str::<Value>(&text) {
        Ok(Value::Array(items)) => items,
        Ok(Value::Object(mut map)) => match map.remove("commands") {
            Some(Value::Array(items)) => items,
            _ => {
                return Outcome::error(&Error::Parse {
                    what: "batch file",
                    input: text,
                })
            }
        },
        _ => {
            return Outcome::error(&Error::Parse {
                what: "batch file",
                input: text,
            })
        }
    };
    let mut total = Outcome::default();
    for entry in &entries {
        let outcome = match batch_entry_args(entry) {
            Ok(mut args) => {
                args.extend(["--format".to_string(), format.to_string()]);
                run(std::iter::once("sascone".to_string()).chain(args))
            }
            Err(e) => Outcome::error(&e),
        };
        total.code = total.code.max(outcome.code);
        total.stdout.push_str(&outcome.stdout);
        total.stderr.push_str(&outcome.stderr);
    }
    total
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    if let Some(path) = &cli.config {
        return run_batch(path, &cli.format);
    }
    let Some(command) = &cli.command else {
        return Outcome {
            code: EXIT_VALIDATION,
            stdout: String::new(),
            stderr: "error: a subcommand or --config is required\n".into(),
        };
    };
    let format = match parse_format(&cli.format) {
        Ok(f) => f,
        Err(e) => return Outcome::error(&e),
    };
    match dispatch(command, format) {
        Ok(outcome) => outcome,
        Err(e) => Outcome::error(&e),
    }
}
