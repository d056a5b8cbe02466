use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lamkit::canonical::{canonical_lam_rotational_with, canonical_quadratic, CanonicalOptions};
use lamkit::circle::orbit_info;
use lamkit::cubioid::{
    corollary_check, is_cubioid_member_with, main_theorem_witness, project_lamination, tune, CertifiedSlice,
    CubioidOptions,
};
use lamkit::quad_gaps::{
    build_quad_gap, caterpillar_edges, classify_critical_chord, vassal, wings, CriticalChord, QuadGap, Side,
};
use lamkit::render::{render_svg, GeodesicStyle, RenderSpec};
use lamkit::rotational::{classify_rotational, rotational_set_from_vertices, rotational_sets};
use lamkit::{Angle, Chord, Error, LaminationSlice};
use num_rational::BigRational;

#[derive(Parser)]
#[command(name = "lamkit", version, about = "Exact invariant laminations of angle tripling and doubling")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Pullback depth
    #[arg(long, global = true, default_value_t = 4)]
    depth: usize,
    /// Largest period scanned by the cubioid checks
    #[arg(long, global = true)]
    period_bound: Option<usize>,
    /// Also write the resulting slice as SVG
    #[arg(long, global = true)]
    svg: Option<PathBuf>,
    #[command(flatten)]
    render: RenderArgs,
}

#[derive(Args)]
struct RenderArgs {
    /// Image size in pixels
    #[arg(long, global = true, default_value_t = 600)]
    size: u32,
    #[arg(long, global = true, default_value_t = 0.6)]
    stroke_width: f64,
    /// Straight chords instead of hyperbolic geodesics
    #[arg(long, global = true)]
    straight: bool,
    /// Shade finite gaps
    #[arg(long, global = true)]
    fill_gaps: bool,
    /// Gap labels to shade
    #[arg(long, global = true, value_delimiter = ',')]
    highlight: Vec<String>,
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct GapArgs {
    /// Critical chord `x-y` of length 1/3
    #[arg(long)]
    critical: Option<Chord>,
    /// Major `a-b` with hole (a, b), in that order
    #[arg(long)]
    major: Option<String>,
    #[arg(long, value_enum)]
    special: Option<Special>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Special {
    Fa,
    Fb,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    A,
    B,
}

#[derive(Subcommand)]
enum Cmd {
    /// Preperiod, period and orbit of an angle
    Orbit {
        #[arg(long, default_value_t = 3)]
        degree: u32,
        #[arg(long)]
        angle: Angle,
    },
    /// Invariant quadratic gap and its edges
    Gap {
        #[command(flatten)]
        gap: GapArgs,
    },
    /// Vassal gap of a periodic-type gap
    Vassal {
        #[command(flatten)]
        gap: GapArgs,
    },
    /// Caterpillar gap attached to one side of a periodic-type gap
    Caterpillar {
        #[command(flatten)]
        gap: GapArgs,
        #[arg(long, value_enum)]
        side: SideArg,
    },
    #[command(subcommand)]
    Rotational(RotCmd),
    #[command(subcommand)]
    Canonical(CanonCmd),
    /// Tune a quadratic gap by a canonical quadratic lamination
    Tune {
        #[command(flatten)]
        gap: GapArgs,
        /// Rotation number of the quadratic lamination; omit for the empty one
        #[arg(long)]
        rotation: Option<BigRational>,
    },
    /// Project a slice through the coding of a gap
    Project {
        #[command(flatten)]
        gap: GapArgs,
        /// Slice JSON, `-` for stdin
        #[arg(long)]
        input: PathBuf,
    },
    #[command(subcommand)]
    Cubioid(CubCmd),
    /// Render a slice JSON to SVG
    Render {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum RotCmd {
    /// All rotational sets up to a period
    List {
        #[arg(long, default_value_t = 3)]
        degree: u32,
        #[arg(long, default_value_t = 3)]
        max_period: usize,
    },
    /// Type, rotation number and majors of a rotational set
    Classify {
        #[arg(long, default_value_t = 3)]
        degree: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        vertices: Vec<Angle>,
    },
}

#[derive(Subcommand)]
enum CanonCmd {
    Quadgap {
        #[command(flatten)]
        gap: GapArgs,
    },
    Rotational {
        #[arg(long, default_value_t = 3)]
        degree: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        vertices: Vec<Angle>,
        /// Admit pullbacks sharing a vertex with the rotational gap
        #[arg(long)]
        permissive: bool,
    },
    Quadratic {
        #[arg(long)]
        rotation: Option<BigRational>,
    },
}

#[derive(Subcommand)]
enum CubCmd {
    /// Membership test and per-leaf check
    Check {
        #[arg(long)]
        input: PathBuf,
    },
    /// Quadratic gap realising the classification
    Witness {
        #[arg(long)]
        input: PathBuf,
    },
}

enum Failure {
    Domain(String),
    Inconclusive(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::DepthInsufficient(_) | Error::BoundExceeded(_) => Failure::Inconclusive(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

type Out = Result<(Value, Option<LaminationSlice>), Failure>;

fn split_major(s: &str) -> Result<(Angle, Angle), Failure> {
    let (a, b) = s.split_once('-').ok_or_else(|| Failure::Domain(format!("major {s:?} is not of the form a-b")))?;
    Ok((a.trim().parse()?, b.trim().parse()?))
}

fn quad_gap(g: &GapArgs) -> Result<QuadGap, Failure> {
    if let Some(c) = &g.critical {
        return Ok(build_quad_gap(&CriticalChord::new(c.clone())?)?);
    }
    if let Some(m) = &g.major {
        let (a, b) = split_major(m)?;
        return Ok(QuadGap::from_major(a, b)?);
    }
    Ok(match g.special {
        Some(Special::Fa) => QuadGap::fa(),
        _ => QuadGap::fb(),
    })
}

fn read_json(path: &PathBuf) -> Result<Value, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Domain(e.to_string()))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

fn certified(v: CertifiedSlice) -> Out {
    Ok((v.to_json(), Some(v.slice)))
}

fn run(cli: &Cli) -> Out {
    let depth = cli.depth;
    match &cli.cmd {
        Cmd::Orbit { degree, angle } => {
            let info = orbit_info(*degree, angle);
            Ok((json!({ "angle": angle, "preperiod": info.preperiod, "period": info.period, "orbit": info.orbit }), None))
        }
        Cmd::Gap { gap } => {
            let u = quad_gap(gap)?;
            let mut v = u.to_json(depth);
            if let Some(c) = u.seed() {
                v["critical"] = json!(c.chord());
                v["class"] = json!(classify_critical_chord(c));
            }
            v["wings"] = json!(wings(&u));
            Ok((v, None))
        }
        Cmd::Vassal { gap } => Ok((vassal(&quad_gap(gap)?, depth)?.to_json(), None)),
        Cmd::Caterpillar { gap, side } => {
            let side = match side {
                SideArg::A => Side::A,
                SideArg::B => Side::B,
            };
            Ok((json!(caterpillar_edges(&quad_gap(gap)?, side, depth)?), None))
        }
        Cmd::Rotational(RotCmd::List { degree, max_period }) => {
            let list: Vec<Value> = rotational_sets(*degree, *max_period).iter().map(|g| g.to_json()).collect();
            Ok((Value::Array(list), None))
        }
        Cmd::Rotational(RotCmd::Classify { degree, vertices }) => {
            let g = rotational_set_from_vertices(*degree, vertices)?;
            let mut v = g.to_json();
            v["type"] = json!(classify_rotational(&g).to_string());
            Ok((v, None))
        }
        Cmd::Canonical(CanonCmd::Quadgap { gap }) => certified(CertifiedSlice::canonical_quadgap(&quad_gap(gap)?, depth)?),
        Cmd::Canonical(CanonCmd::Rotational { degree, vertices, permissive }) => {
            let g = rotational_set_from_vertices(*degree, vertices)?;
            if *permissive {
                let s = canonical_lam_rotational_with(&g, depth, CanonicalOptions { permissive_shared_vertex: true })?;
                return Ok((s.to_json(), Some(s)));
            }
            certified(CertifiedSlice::canonical_rotational(&g, depth)?)
        }
        Cmd::Canonical(CanonCmd::Quadratic { rotation }) => {
            let s = canonical_quadratic(rotation.as_ref(), depth)?;
            Ok((s.to_json(), Some(s)))
        }
        Cmd::Tune { gap, rotation } => {
            let q = canonical_quadratic(rotation.as_ref(), depth)?;
            certified(tune(&quad_gap(gap)?, &q, depth)?)
        }
        Cmd::Project { gap, input } => {
            let s = CertifiedSlice::from_json(&read_json(input)?)?;
            let p = project_lamination(&quad_gap(gap)?, &s)?;
            Ok((p.to_json(), Some(p)))
        }
        Cmd::Cubioid(CubCmd::Check { input }) => {
            let s = CertifiedSlice::from_json(&read_json(input)?)?;
            let opts = CubioidOptions { period_bound: cli.period_bound };
            let verdict = is_cubioid_member_with(&s, opts)?;
            let mut v = json!(verdict);
            v["corollary"] = json!(corollary_check(&s)?);
            Ok((v, None))
        }
        Cmd::Cubioid(CubCmd::Witness { input }) => {
            let s = CertifiedSlice::from_json(&read_json(input)?)?;
            let w = main_theorem_witness(&s)?;
            Ok((w.to_json(), Some(w.projected)))
        }
        Cmd::Render { input } => {
            let s = LaminationSlice::from_json(&read_json(input)?)?;
            let svg = render_svg(&s, &render_spec(cli));
            match &cli.svg {
                Some(_) => Ok((json!({ "leaves": s.leaves().len() }), Some(s))),
                None => {
                    let _ = std::io::stdout().lock().write_all(svg.as_bytes());
                    Ok((Value::Null, None))
                }
            }
        }
    }
}

fn render_spec(cli: &Cli) -> RenderSpec {
    let r = &cli.render;
    RenderSpec {
        size: r.size,
        stroke_width: r.stroke_width,
        style: if r.straight { GeodesicStyle::Straight } else { GeodesicStyle::Hyperbolic },
        highlight: r.highlight.clone(),
        fill_gaps: r.fill_gaps,
        background: true,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok((value, slice)) => {
            if let (Some(path), Some(s)) = (&cli.svg, &slice) {
                if let Err(e) = fs::write(path, render_svg(s, &render_spec(&cli))) {
                    eprintln!("lamkit: {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            }
            if !value.is_null() {
                let text = serde_json::to_string_pretty(&value).expect("serialisable");
                let _ = writeln!(std::io::stdout().lock(), "{text}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(m)) => {
            eprintln!("lamkit: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Inconclusive(m)) => {
            eprintln!("lamkit: inconclusive: {m}");
            ExitCode::from(2)
        }
    }
}
