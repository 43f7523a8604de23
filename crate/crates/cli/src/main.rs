use std::io::{self, Write as _};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use forge_core::algebra::parse::{parse_fe, parse_poly, parse_ratfunc};
use forge_core::algebra::fmt_rational;
use forge_core::bench::{emit_report, run_all, run_example, ReportFormat};
use forge_core::error::BenchError;
use forge_core::lattice::{
    discriminant_group, is_primitive, orthogonal_complement, overlattice, parse_lattice_expr, roots,
    LatticeEmbedding,
};
use forge_core::mw::{height, height_pairing, Section};
use forge_core::surface::{CoordinateMap, Surface, WeierstrassModel};
use forge_core::twist::{enriques_check, twist, QuadraticBaseChange, TwistPackage};

#[derive(Parser)]
#[command(name = "forge", version, about = "Exact computations on elliptic surfaces and even lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Singular fibres, Euler number and trivial lattice of a Weierstrass model.
    Classify {
        model: String,
        /// Fibre and base variable names, e.g. `x,w,t`.
        #[arg(long)]
        vars: Option<String>,
    },
    /// Heights of sections written as `(x(t), y(t))`, and their pairings.
    Height {
        model: String,
        #[arg(required = true)]
        sections: Vec<String>,
        #[arg(long)]
        vars: Option<String>,
    },
    /// Pull back along a degree-2 map of the base.
    Basechange {
        model: String,
        #[arg(long)]
        f: String,
        #[arg(long)]
        vars: Option<String>,
    },
    /// Quadratic twist by a polynomial in the base variable.
    Twist {
        model: String,
        #[arg(long)]
        d: String,
        #[arg(long)]
        vars: Option<String>,
    },
    /// Check whether the deck involution composed with translation by a section is free.
    Enriques {
        model: String,
        /// Involution written as `(x', y', t')`.
        #[arg(long)]
        deck: String,
        #[arg(long)]
        section: String,
        #[arg(long)]
        vars: Option<String>,
    },
    /// Invariants of a lattice such as `U + 2E8(-1) + <-4>`.
    Lattice {
        expr: String,
        #[arg(value_enum, default_value = "disc")]
        query: LatticeQuery,
        /// Vectors spanning a sublattice, `1,0,0;0,1,0`, for `complement`.
        #[arg(long)]
        images: Option<String>,
        /// Rational glue vector, `1/2,0,1/2`, for `overlattice`.
        #[arg(long)]
        glue: Option<String>,
    },
    /// Run registered examples and report every assertion.
    Verify {
        #[arg(required_unless_present = "all", conflicts_with = "all")]
        id: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LatticeQuery {
    Disc,
    Dgroup,
    Complement,
    Roots,
    Overlattice,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Failures of input or computation; exit code 2.
type Outcome = Result<ExitCode, String>;

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn surface(model: &str, vars: Option<&str>) -> Result<Surface, String> {
    let m = match vars {
        None => WeierstrassModel::parse(model),
        Some(v) => {
            let names: Vec<&str> = v.split(',').map(str::trim).collect();
            let [x, y, t] = names[..] else {
                return Err("--vars takes three names, e.g. x,y,t".into());
            };
            WeierstrassModel::parse_with(model, x, y, Some(t))
        }
    }
    .map_err(fail)?;
    Surface::new(m).map_err(fail)
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = io::stdout().lock().write_all(text.as_bytes());
}

fn print(v: &Value) -> ExitCode {
    emit(&format!("{}\n", serde_json::to_string_pretty(v).expect("json values serialize")));
    ExitCode::SUCCESS
}

fn classify(model: &str, vars: Option<&str>) -> Outcome {
    let s = surface(model, vars)?;
    let sum = s.summary().map_err(fail)?;
    let mut out = sum.to_json();
    out["model"] = json!(s.model.display());
    out["trivial_lattice"] = json!(forge_core::mw::trivial_lattice(&sum).name);
    Ok(print(&out))
}

fn heights(model: &str, sections: &[String], vars: Option<&str>) -> Outcome {
    let s = surface(model, vars)?;
    let var = s.base_var().to_string();
    let ps: Vec<Section> = sections.iter().map(|p| Section::parse(p, &s)).collect::<Result<_, _>>().map_err(fail)?;
    let mut reports = Vec::new();
    for p in &ps {
        reports.push(height(&s, p).map_err(fail)?.to_json(&var));
    }
    let mut gram = Vec::new();
    for p in &ps {
        let mut row = Vec::new();
        for q in &ps {
            row.push(fmt_rational(&height_pairing(&s, p, q).map_err(fail)?));
        }
        gram.push(row);
    }
    Ok(print(&json!({"sections": reports, "pairing": gram})))
}

fn basechange(model: &str, f: &str, vars: Option<&str>) -> Outcome {
    let s = surface(model, vars)?;
    let map = parse_ratfunc(f).map_err(fail)?;
    let bc = QuadraticBaseChange::new(map, s.radicand()).map_err(fail)?;
    let pkg = TwistPackage::new(s, bc).map_err(fail)?;
    let cover = pkg.cover.summary().map_err(fail)?;
    let mut out = pkg.to_json();
    out["cover_fibres"] = cover.to_json();
    Ok(print(&out))
}

fn twist_cmd(model: &str, d: &str, vars: Option<&str>) -> Outcome {
    let s = surface(model, vars)?;
    let d = parse_poly(d).map_err(fail)?;
    let t = twist(&s, &d).map_err(fail)?;
    let mut out = t.summary().map_err(fail)?.to_json();
    out["model"] = json!(t.model.display());
    Ok(print(&out))
}

fn enriques(model: &str, deck: &str, section: &str, vars: Option<&str>) -> Outcome {
    let s = surface(model, vars)?;
    let map = CoordinateMap::parse(deck, &s.model.vars).map_err(fail)?;
    let p = Section::parse(section, &s).map_err(fail)?;
    let report = enriques_check(&s, &map, &p).map_err(fail)?;
    Ok(print(&report.to_json(s.base_var())))
}

fn parse_vectors<T>(s: &str, entry: impl Fn(&str) -> Result<T, String>) -> Result<Vec<Vec<T>>, String> {
    s.split(';').map(|v| v.split(',').map(|e| entry(e.trim())).collect()).collect()
}

fn lattice(expr: &str, query: LatticeQuery, images: Option<&str>, glue: Option<&str>) -> Outcome {
    let l = parse_lattice_expr(expr).map_err(fail)?;
    let out = match query {
        LatticeQuery::Disc => {
            let (disc, (pos, neg)) = l.disc_and_signature().map_err(fail)?;
            json!({"rank": l.rank(), "even": l.is_even(), "disc": disc.to_string(), "signature": [pos, neg]})
        }
        LatticeQuery::Dgroup => serde_json::to_value(discriminant_group(&l).map_err(fail)?).map_err(fail)?,
        LatticeQuery::Roots => {
            let rs = roots(&l).map_err(fail)?;
            json!({"count": rs.len(), "roots": rs})
        }
        LatticeQuery::Complement => {
            let images = images.ok_or("complement needs --images")?;
            let vectors = parse_vectors(images, |e| e.parse::<i64>().map_err(fail))?;
            let columns: Vec<Vec<_>> = (0..l.rank())
                .map(|i| vectors.iter().map(|v| v.get(i).copied().unwrap_or(0).into()).collect())
                .collect();
            let emb = LatticeEmbedding::from_images(&l, columns).map_err(fail)?;
            let (comp, _) = orthogonal_complement(&emb).map_err(fail)?;
            json!({
                "primitive": format!("{:?}", is_primitive(&emb)),
                "complement_gram": comp.gram(),
                "complement_disc": comp.disc().map_err(fail)?.to_string(),
            })
        }
        LatticeQuery::Overlattice => {
            let glue = glue.ok_or("overlattice needs --glue")?;
            let v = parse_vectors(glue, |e| parse_fe(e).map_err(fail)?.to_rational().ok_or_else(|| "glue must be rational".to_string()))?;
            let o = overlattice(&l, &v.concat()).map_err(fail)?;
            json!({
                "index": o.index.to_string(),
                "gram": o.lattice.gram(),
                "even": o.lattice.is_even(),
                "disc": o.lattice.disc().map_err(fail)?.to_string(),
            })
        }
    };
    Ok(print(&out))
}

fn verify(id: Option<&str>, all: bool, format: Format) -> Outcome {
    let format = match format {
        Format::Text => ReportFormat::Text,
        Format::Json => ReportFormat::Json,
    };
    let reports = if all {
        run_all()
    } else {
        let id = id.expect("clap requires an id without --all");
        vec![run_example(id).map_err(|e: BenchError| e.to_string())?]
    };
    match format {
        ReportFormat::Json if all => {
            let vs: Vec<Value> =
                reports.iter().map(|r| serde_json::from_str(&emit_report(r, format)).expect("valid json")).collect();
            emit(&format!("{}\n", serde_json::to_string_pretty(&vs).expect("json values serialize")));
        }
        _ => reports.iter().for_each(|r| emit(&emit_report(r, format))),
    }
    let pass = reports.iter().all(|r| r.pass());
    Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Classify { model, vars } => classify(model, vars.as_deref()),
        Command::Height { model, sections, vars } => heights(model, sections, vars.as_deref()),
        Command::Basechange { model, f, vars } => basechange(model, f, vars.as_deref()),
        Command::Twist { model, d, vars } => twist_cmd(model, d, vars.as_deref()),
        Command::Enriques { model, deck, section, vars } => enriques(model, deck, section, vars.as_deref()),
        Command::Lattice { expr, query, images, glue } => lattice(expr, *query, images.as_deref(), glue.as_deref()),
        Command::Verify { id, all, format } => verify(id.as_deref(), *all, *format),
    };
    outcome.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })
}
