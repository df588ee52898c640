//! Command-line front end. `run` never touches the process: it returns the
//! text for stdout and stderr together with the exit code, so the binary and
//! the tests share one code path.
//!
//! Exit codes: 0 success, 2 invalid input, 3 invariant violation.

pub mod json;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::rat;
use crate::algebra::{ProjSymPoint, QMatrix, Rat};
use crate::blowup::{self, AmbientData, IntersectionInputs, Preset, SegreData};
use crate::error::{Error, Result};
use crate::picard::{
    cones_of_models, fano_threshold, fano_type, gkz_decomposition, Basis, ChamberFan, DivClass,
    Space,
};
use crate::reproduce;
use crate::schubert::{self, chern_tangent, lg_degree, lg_dimension, moduli_dimension, ring_tables};
use crate::symplectic::{
    classify_point, normal_form, orbit_equations, rank_gap_sampling, ruling_check,
    secant_deg, secant_dim, secant_mult, tangent_cone, verify_x4_pluecker,
};

pub const SCHEMA_VERSION: &str = "1";

/// Environment variable holding the worker-thread count.
pub const WORKERS_ENV: &str = "SYMQUAD_WORKERS";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Svg,
}

#[derive(Debug, Parser)]
#[command(name = "symquad", version, about = "Exact computations on complete symplectic quadrics")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Also write the JSON result to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct RArg {
    #[arg(long)]
    r: usize,
}

#[derive(Debug, Args)]
struct PointArgs {
    #[arg(long)]
    r: usize,
    /// Symmetric matrix as a JSON array of rows; entries are integers or
    /// "p/q" strings.
    #[arg(long)]
    matrix: String,
}

#[derive(Debug, Args)]
struct SpaceArgs {
    /// S4, S6 or K<r>.
    #[arg(long)]
    space: Option<String>,
    /// Explicit generators, e.g. "1,0;2,-1;0,1" (rows separated by ';').
    #[arg(long, allow_hyphen_values = true)]
    gens: Option<String>,
    /// Basis of explicit generators: S2r or K.
    #[arg(long, default_value = "S2r")]
    basis: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Quadratic equations of X_{2r}.
    Equations(RArg),
    /// Stratum of a point.
    Classify(PointArgs),
    /// Symplectic normal form of a point with its witness.
    NormalForm(PointArgs),
    /// Tangent cone of X_{2r} at the standard point of rank k.
    TangentCone {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
    },
    /// Dimension, degree and multiplicity of secant varieties of the Veronese.
    Secant {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Seeded orbit samples and their rank distribution.
    Sample {
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Identification of X_4 with G(1,4) via Plücker relations.
    VerifyX4,
    /// Checks on the two rulings of a quadric surface.
    Rulings,
    /// Chamber decomposition of an effective cone.
    Chambers(SpaceArgs),
    /// Effective, nef and movable cones with labelled chambers.
    Cones {
        #[arg(long)]
        space: String,
    },
    /// Positivity of the anticanonical class.
    Fano(RArg),
    /// Products in the cohomology ring of LG(r, 2r).
    Schubert {
        #[arg(long)]
        r: usize,
        /// Expression such as "s1*s1*s2" or "s[2,1] - 2*s3".
        #[arg(long, allow_hyphen_values = true)]
        product: Option<String>,
    },
    /// First two Chern classes of the tangent bundle of LG(r, 2r).
    Chern(RArg),
    /// Dimension of the space of conics in LG(r, 2r).
    ModuliDim(RArg),
    /// Top self-intersection (aH - bE)^n on a blow-up.
    Intersect {
        /// nine-lines, six-lines-symplectic or chasles.
        #[arg(long)]
        preset: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<i64>,
        #[arg(long)]
        n: Option<usize>,
        /// Segre classes s_0, s_1, ... separated by commas.
        #[arg(long, allow_hyphen_values = true)]
        segre: Option<String>,
        #[arg(long)]
        htop: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        m: Option<i64>,
    },
    /// Recompute the reference numbers.
    Reproduce {
        #[arg(long, conflicts_with = "anchor")]
        all: bool,
        #[arg(long)]
        anchor: Option<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Equations(_) => "equations",
            Command::Classify(_) => "classify",
            Command::NormalForm(_) => "normal-form",
            Command::TangentCone { .. } => "tangent-cone",
            Command::Secant { .. } => "secant",
            Command::Sample { .. } => "sample",
            Command::VerifyX4 => "verify-x4",
            Command::Rulings => "rulings",
            Command::Chambers(_) => "chambers",
            Command::Cones { .. } => "cones",
            Command::Fano(_) => "fano",
            Command::Schubert { .. } => "schubert",
            Command::Chern(_) => "chern",
            Command::ModuliDim(_) => "moduli-dim",
            Command::Intersect { .. } => "intersect",
            Command::Reproduce { .. } => "reproduce",
        }
    }
}

/// What a command produced, before formatting.
struct Output {
    text: String,
    json: Value,
    svg: Option<String>,
    /// Set when a check inside the command failed; the output is still
    /// printed but the exit code becomes 3.
    failed: Option<String>,
}

impl Output {
    fn new(text: String, value: impl Serialize) -> Result<Output> {
        let json = serde_json::to_value(value)
            .map_err(|e| Error::invariant("result does not serialize", e.to_string()))?;
        Ok(Output {
            text,
            json,
            svg: None,
            failed: None,
        })
    }
}

pub fn run(args: &[String]) -> Outcome {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    stdout: rendered,
                    stderr: String::new(),
                    code: 0,
                },
                _ => Outcome {
                    stdout: String::new(),
                    stderr: rendered,
                    code: 2,
                },
            };
        }
    };
    let workers = match std::env::var(WORKERS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Some(n),
            _ => return failure(&Error::InvalidArgument(format!("{WORKERS_ENV}={v:?} is not a positive integer"))),
        },
        Err(_) => None,
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = workers {
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => return failure(&Error::Unsupported(format!("thread pool: {e}"))),
    };
    let name = cli.command.name();
    let result = pool.install(|| dispatch(&cli.command));
    match result {
        Ok(out) => render(name, cli.format, cli.out.as_ref(), out),
        Err(e) => failure(&e),
    }
}

fn failure(e: &Error) -> Outcome {
    let mut stderr = format!("error: {e}\n");
    let code = match e {
        Error::Invariant { witness, .. } => {
            stderr.push_str(&format!("witness: {witness}\n"));
            3
        }
        _ => 2,
    };
    Outcome {
        stdout: String::new(),
        stderr,
        code,
    }
}

fn render(name: &str, format: Format, out: Option<&PathBuf>, o: Output) -> Outcome {
    let envelope = json!({
        "schema": SCHEMA_VERSION,
        "command": name,
        "result": o.json,
    });
    let json_text = match serde_json::to_string_pretty(&envelope) {
        Ok(s) => s + "\n",
        Err(e) => return failure(&Error::invariant("output does not serialize", e.to_string())),
    };
    if let Some(path) = out {
        if let Err(e) = std::fs::write(path, &json_text) {
            return failure(&Error::InvalidArgument(format!(
                "cannot write {}: {e}",
                path.display()
            )));
        }
    }
    let stdout = match format {
        Format::Text => o.text,
        Format::Json => json_text,
        Format::Svg => match o.svg {
            Some(s) => s,
            None => {
                return failure(&Error::InvalidArgument(format!(
                    "{name} has no SVG output"
                )))
            }
        },
    };
    match o.failed {
        Some(msg) => Outcome {
            stdout,
            stderr: format!("error: {msg}\n"),
            code: 3,
        },
        None => Outcome {
            stdout,
            stderr: String::new(),
            code: 0,
        },
    }
}

fn parse_matrix(s: &str) -> Result<QMatrix> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(format!("matrix: {e}")))?;
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
    let parsed = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::Parse("matrix rows must be arrays".into()))?
                .iter()
                .map(|x| match x {
                    Value::String(s) => rat::parse(s),
                    Value::Number(n) => rat::parse(&n.to_string()),
                    other => Err(Error::Parse(format!("bad matrix entry {other}"))),
                })
                .collect::<Result<Vec<Rat>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    QMatrix::from_rows(parsed)
}

fn parse_point(r: usize, s: &str) -> Result<ProjSymPoint> {
    let m = parse_matrix(s)?;
    if m.rows() != 2 * r {
        return Err(Error::DimensionMismatch(format!(
            "expected a {n}x{n} matrix for r = {r}",
            n = 2 * r
        )));
    }
    ProjSymPoint::new(&m)
}

fn parse_rats(s: &str) -> Result<Vec<Rat>> {
    s.split(',').map(|x| rat::parse(x.trim())).collect()
}

fn fan_output(fan: &ChamberFan, names: &[(String, Vec<num_bigint::BigInt>)], value: impl Serialize) -> Result<Output> {
    let mut o = Output::new(fan.render_text(), value)?;
    o.svg = Some(fan.render_svg(names));
    Ok(o)
}

fn dispatch(cmd: &Command) -> Result<Output> {
    match cmd {
        Command::Equations(RArg { r }) => {
            let eqs = orbit_equations(*r)?;
            let strs: Vec<String> = eqs.iter().map(ToString::to_string).collect();
            let mut text = format!("{} equations\n", strs.len());
            for e in &strs {
                text.push_str(e);
                text.push('\n');
            }
            Output::new(text, json!({ "r": r, "count": strs.len(), "equations": strs }))
        }
        Command::Classify(PointArgs { r, matrix }) => {
            let p = parse_point(*r, matrix)?;
            let label = classify_point(*r, &p)?;
            Output::new(format!("{label}\n"), json!({ "r": r, "label": label.to_string() }))
        }
        Command::NormalForm(PointArgs { r, matrix }) => {
            let p = parse_point(*r, matrix)?;
            let nf = normal_form(*r, &p)?;
            let witness = serde_json::to_value(&nf)
                .map_err(|e| Error::invariant("normal form does not serialize", e.to_string()))?;
            let text = format!(
                "label: {}\nmode: {}\ntarget: {}\nwitness: {}\nscale: {}\ncertificate: {:e}\n",
                nf.label,
                nf.mode(),
                nf.target,
                witness["witness"],
                witness["scale"],
                nf.certificate
            );
            Output::new(text, &nf)
        }
        Command::TangentCone { r, k } => {
            let rep = tangent_cone(&orbit_equations(*r)?, *r, *k)?;
            let mut text = format!(
                "vertex dimension: {}\nbase: {}\nlinear rank: {} (predicted {})\nreduced forms: {}\nbase span matches: {}\n",
                rep.predicted_vertex_dim,
                rep.predicted_base,
                rep.linear_rank,
                rep.predicted_linear_rank,
                rep.reduced_forms.len(),
                rep.base_span_matches
            );
            for f in &rep.reduced_forms {
                text.push_str(&format!("  {f}\n"));
            }
            let mut o = Output::new(text, json!({ "report": &rep, "consistent": rep.consistent() }))?;
            if !rep.consistent() {
                o.failed = Some("tangent cone disagrees with the predicted structure".into());
            }
            Ok(o)
        }
        Command::Secant { n, h, k } => {
            let dim = secant_dim(*n, *h)?;
            let deg = secant_deg(*n, *h)?;
            let mult = k.map(|k| secant_mult(*n, *h, k)).transpose()?;
            let mut text = format!("dim: {dim}\ndeg: {deg}\n");
            if let Some(m) = &mult {
                text.push_str(&format!("mult: {m}\n"));
            }
            Output::new(
                text,
                json!({
                    "n": n, "h": h, "k": k,
                    "dim": dim,
                    "deg": deg.to_string(),
                    "mult": mult.map(|m| m.to_string()),
                }),
            )
        }
        Command::Sample { r, trials, seed } => {
            let rep = rank_gap_sampling(*r, *trials, *seed)?;
            let mut text = format!("r = {r}, trials = {trials}, seed = {seed}\n");
            for (label, count) in &rep.counts {
                text.push_str(&format!("  {label}: {count}\n"));
            }
            text.push_str(&format!("violations: {}\n", rep.violations));
            Output::new(text, &rep)
        }
        Command::VerifyX4 => {
            let rep = verify_x4_pluecker()?;
            let text = format!(
                "transformed rank: {}\nPlücker rank: {}\njoint rank: {}\nsame span: {}\n",
                rep.transformed_rank, rep.pluecker_rank, rep.joint_rank, rep.same_span
            );
            let mut o = Output::new(text, &rep)?;
            if !rep.same_span {
                o.failed = Some("the two quadric families differ".into());
            }
            Ok(o)
        }
        Command::Rulings => {
            let rep = ruling_check()?;
            let text = format!(
                "first ruling: {}\nsecond ruling: {}\nfirst lagrangian: {}\nfirst in hyperplane: {}\nsecond off hyperplane: {} ({})\nM^t Omega M = -Omega: {}\n",
                rep.first_curve.join(", "),
                rep.second_curve.join(", "),
                rep.first_lagrangian,
                rep.first_in_hyperplane,
                rep.second_not_in_hyperplane,
                rep.second_hyperplane_value,
                rep.quadric_antisymplectic
            );
            let mut o = Output::new(text, json!({ "report": &rep, "all_pass": rep.all_pass() }))?;
            if !rep.all_pass() {
                o.failed = Some("ruling checks failed".into());
            }
            Ok(o)
        }
        Command::Chambers(args) => chambers(args),
        Command::Cones { space } => {
            let space: Space = space.parse()?;
            let m = cones_of_models(space)?;
            let mut text = format!(
                "space: {space}\neffective: {}\nnef: {}\nmovable: {}\n",
                m.eff, m.nef, m.mov
            );
            for w in &m.walls {
                text.push_str(&format!("wall {}: {}\n", w.name, w.label));
            }
            text.push_str(&m.fan.render_text());
            let mut o = fan_output(&m.fan, &m.named_rays(), &m)?;
            o.text = text;
            Ok(o)
        }
        Command::Fano(RArg { r }) => {
            let t = fano_type(*r)?;
            let expected = fano_threshold(*r);
            let mut o = Output::new(
                format!("{t}\n"),
                json!({ "r": r, "type": t, "threshold": expected }),
            )?;
            if t != expected {
                o.failed = Some(format!("cone membership gives {t}, thresholds give {expected}"));
            }
            Ok(o)
        }
        Command::Schubert { r, product } => {
            let table = if *r <= schubert::MAX_VERIFIED_RANK {
                ring_tables(*r)?
            } else {
                return Err(Error::OutOfRange(format!(
                    "ring tables are available for r <= {}",
                    schubert::MAX_VERIFIED_RANK
                )));
            };
            match product {
                Some(expr) => {
                    let e = table.evaluate(expr)?;
                    let integral = match e.weight() {
                        Some(w) if w == table.top_weight() => Some(table.integrate(&e)?),
                        _ => None,
                    };
                    let mut text = format!("{e}\n");
                    if let Some(d) = &integral {
                        text.push_str(&format!("degree: {}\n", rat::to_string(d)));
                    }
                    Output::new(
                        text,
                        json!({
                            "r": r,
                            "expression": expr,
                            "value": e,
                            "degree": integral.map(|d| rat::to_string(&d)),
                        }),
                    )
                }
                None => {
                    let dims = table.graded_dimensions();
                    let basis: Vec<Vec<String>> = (0..=table.top_weight())
                        .map(|d| table.basis(d).iter().map(ToString::to_string).collect())
                        .collect();
                    let deg = lg_degree(*r)?;
                    let text = format!(
                        "dimension: {}\ngraded dimensions: {dims:?}\ndegree: {deg}\n",
                        lg_dimension(*r)
                    );
                    Output::new(
                        text,
                        json!({
                            "r": r,
                            "dimension": lg_dimension(*r),
                            "graded_dimensions": dims,
                            "basis": basis,
                            "degree": deg.to_string(),
                        }),
                    )
                }
            }
        }
        Command::Chern(RArg { r }) => {
            let c = chern_tangent(*r)?;
            let text = format!(
                "c(Sym^2 S^v) = 1 + {} c1 + {} c1^2 + {} c2 + ...\nc1(T) = {}\nc2(T) = {}\n",
                rat::to_string(&c.c1_coefficient),
                rat::to_string(&c.c1_squared_coefficient),
                rat::to_string(&c.c2_coefficient),
                c.c1,
                c.c2
            );
            Output::new(text, &c)
        }
        Command::ModuliDim(RArg { r }) => {
            let m = moduli_dimension(*r)?;
            let text = format!(
                "dimension: {}\nvia stable maps: {}\nvia fibration: {}\n",
                m.dimension, m.via_stable_maps, m.via_fibration
            );
            Output::new(text, &m)
        }
        Command::Intersect {
            preset,
            a,
            b,
            n,
            segre,
            htop,
            m,
        } => {
            let res = match preset {
                Some(p) => {
                    if a.is_some() || b.is_some() || n.is_some() || segre.is_some() || htop.is_some() || m.is_some() {
                        return Err(Error::InvalidArgument(
                            "--preset cannot be combined with explicit inputs".into(),
                        ));
                    }
                    blowup::run_preset(p.parse::<Preset>()?)?
                }
                None => {
                    let missing = || Error::InvalidArgument(
                        "either --preset or all of --a --b --n --segre --htop --m".into(),
                    );
                    let n = n.ok_or_else(missing)?;
                    let segre = parse_rats(segre.as_deref().ok_or_else(missing)?)?;
                    let center_dim = segre.len() - 1;
                    if center_dim >= n {
                        return Err(Error::DimensionMismatch(format!(
                            "a center of dimension {center_dim} in dimension {n}"
                        )));
                    }
                    IntersectionInputs {
                        a: a.ok_or_else(missing)?,
                        b: b.ok_or_else(missing)?,
                        n,
                        ambient: AmbientData::new(n, htop.ok_or_else(missing)?)?,
                        segre: SegreData::new(center_dim, n - center_dim, m.ok_or_else(missing)?, segre)?,
                    }
                    .evaluate()?
                }
            };
            let mut text = format!("{}\n", res.value);
            if let Some(rep) = &res.restriction {
                text.push_str(&format!(
                    "restriction: sigma_11 -> {} h^2, sigma_2 -> {} h^2, sigma_1 -> {} h\n",
                    rep.sigma11, rep.sigma2, rep.line_degree
                ));
            }
            Output::new(text, &res)
        }
        Command::Reproduce { all, anchor } => {
            let results = match (all, anchor) {
                (true, _) => reproduce::run_all(),
                (false, Some(a)) => vec![reproduce::run_anchor(a)?],
                (false, None) => {
                    return Err(Error::InvalidArgument("pass --all or --anchor NAME".into()))
                }
            };
            let width = results.iter().map(|r| r.anchor.len()).max().unwrap_or(0);
            let mut text = String::new();
            for r in &results {
                text.push_str(&format!(
                    "{:<width$}  {}  expected {}  observed {}\n",
                    r.anchor,
                    if r.pass { "pass" } else { "FAIL" },
                    r.expected,
                    r.observed
                ));
            }
            let failed: Vec<&str> = results.iter().filter(|r| !r.pass).map(|r| r.anchor.as_str()).collect();
            let mut o = Output::new(text, json!({ "anchors": &results, "all_pass": failed.is_empty() }))?;
            if !failed.is_empty() {
                o.failed = Some(format!("anchors failed: {}", failed.join(", ")));
            }
            Ok(o)
        }
    }
}

fn chambers(args: &SpaceArgs) -> Result<Output> {
    match (&args.space, &args.gens) {
        (Some(space), None) => {
            let m = cones_of_models(space.parse()?)?;
            fan_output(&m.fan, &m.named_rays(), &m.fan)
        }
        (None, Some(gens)) => {
            let basis = match args.basis.as_str() {
                "S2r" => Basis::S2r,
                "K" => Basis::K,
                other => return Err(Error::Parse(format!("unknown basis {other:?}"))),
            };
            let classes = gens
                .split(';')
                .map(|row| DivClass::new(basis, parse_rats(row)?))
                .collect::<Result<Vec<_>>>()?;
            let fan = gkz_decomposition(&classes)?;
            fan_output(&fan, &[], &fan)
        }
        _ => Err(Error::InvalidArgument("pass exactly one of --space or --gens".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> Outcome {
        let mut v = vec!["symquad".to_string()];
        v.extend(args.iter().map(|s| s.to_string()));
        run(&v)
    }

    #[test]
    fn unknown_subcommand() {
        let o = call(&["frobnicate"]);
        assert_eq!(o.code, 2);
        assert!(o.stderr.contains("Usage"));
    }

    #[test]
    fn equations_json() {
        let o = call(&["equations", "--r", "2", "--format", "json"]);
        assert_eq!(o.code, 0);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["schema"], "1");
        assert_eq!(v["result"]["equations"].as_array().unwrap().len(), 5);
    }

    #[test]
    fn svg_only_for_fans() {
        assert_eq!(call(&["fano", "--r", "3", "--format", "svg"]).code, 2);
        let o = call(&["chambers", "--space", "S6", "--format", "svg"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.starts_with("<svg"));
    }

    #[test]
    fn point_outside_the_orbit_closure() {
        let m = "[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,0]]";
        let o = call(&["classify", "--r", "2", "--matrix", m]);
        assert_eq!((o.code, o.stdout.as_str()), (0, "outside-X\n"));
        let o = call(&["normal-form", "--r", "2", "--matrix", m]);
        assert_eq!(o.code, 2, "{o:?}");
        assert_eq!(call(&["classify", "--r", "2", "--matrix", "[[1,0],[0,1]]"]).code, 2);
    }
}
