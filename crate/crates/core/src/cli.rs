//! The `binormal` command line: `normals`, `construct`, `analyze`, `verify`
//! and `export`.
//!
//! Reports are single JSON documents wrapped in a [`ReportEnvelope`], written
//! to stdout or to `--out`. Exit codes: 0 success, 1 verification failure,
//! 2 input error, 3 parameter error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::analysis::{
    box_dimension_chords, box_dimension_estimate, classify_maximizing, default_ladder, holder_verify, spectrum,
    MaxClassification, PackingReport, DEFAULT_ALPHA,
};
use crate::constructions::{
    acute_check_d2, arc_ladder_d1_at, cone_sharpen, rectangle_graft, scan_acute_threshold,
    sphere_ladder_d2, spherical_cap_graft, DEFAULT_SAMPLES_PER_RADIAN,
};
use crate::directions;
use crate::error::{Error, Result};
use crate::geometry::{Chord, Point, DEFAULT_TOL};
use crate::inventory::NormalInventory;
use crate::io::{self, PolytopeFile, ReportEnvelope};
use crate::polytope::{build_hull, enumerate_double_normals, Polytope};
use crate::smooth::{
    chord_length_gradient, default_starts, find_double_normals_seeded, tangential_residual,
    SupportBody,
};

/// Environment variable capping worker threads.
pub const THREADS_ENV: &str = "BINORMAL_THREADS";

#[derive(Debug, Parser, Serialize)]
#[command(name = "binormal", version, about = "Double normals of convex bodies")]
pub struct Cli {
    /// Absolute tolerance after scaling to unit diameter.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Seed of every direction net.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Report destination (stdout when absent); figure path for `export`.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Geometry format for `construct`, figure format for `export`.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Off,
    Svg,
    Mesh,
}

#[derive(Debug, Args, Serialize)]
pub struct Input {
    /// Polytope file (JSON or OFF).
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Smooth body spec such as `ellipsoid:2,1.5,1`.
    #[arg(long)]
    pub body: Option<String>,
}

#[derive(Debug, Subcommand, Serialize)]
pub enum Command {
    /// Enumerate or search the double normals of a body.
    Normals {
        #[command(flatten)]
        input: Input,
        /// Multistart count for smooth bodies.
        #[arg(long)]
        starts: Option<usize>,
    },
    /// Build one of the explicit constructions.
    Construct {
        #[command(subcommand)]
        generator: Generator,
        /// Geometry file to write.
        #[arg(long, global = true)]
        geometry: Option<PathBuf>,
    },
    /// Spectrum, Hölder and packing analysis of an inventory.
    Analyze {
        /// A report carrying an inventory.
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        input: Input,
        /// Isolated chord indices to classify, comma separated.
        #[arg(long, value_delimiter = ',')]
        classify: Vec<usize>,
    },
    /// Re-check the chords of a report against a body.
    Verify {
        #[arg(long)]
        report: PathBuf,
        #[command(flatten)]
        input: Input,
    },
    /// Write a planar SVG figure or a 3D mesh with chord sidecar.
    Export {
        #[command(flatten)]
        input: Input,
        /// Report whose chords are drawn; computed when absent.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand, Serialize)]
pub enum Generator {
    /// Planar arc ladder.
    Ladder1 {
        #[arg(long = "R", default_value_t = 1.0)]
        r: f64,
        #[arg(long = "Theta", default_value_t = 0.5)]
        theta: f64,
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// Centre `x,y`.
        #[arg(long, value_delimiter = ',', num_args = 2)]
        center: Option<Vec<f64>>,
        /// Base direction `x,y`.
        #[arg(long, value_delimiter = ',', num_args = 2)]
        base: Option<Vec<f64>>,
    },
    /// Spherical-patch ladder in R³.
    Ladder2 {
        #[arg(long = "R", default_value_t = 1.0)]
        r: f64,
        #[arg(long = "A", default_value_t = 0.1)]
        a: f64,
        #[arg(long = "T", default_value_t = 0.4)]
        t: f64,
        #[arg(long, default_value_t = 3)]
        m: usize,
        /// Also scan the acuteness threshold up to this size.
        #[arg(long)]
        scan: Option<usize>,
    },
    /// Graft two spherical caps onto a polytope along a double normal.
    Capgraft {
        #[arg(long = "in")]
        input: PathBuf,
        /// Isolated chord index in the enumeration (default: longest).
        #[arg(long)]
        chord: Option<usize>,
        #[arg(long = "R")]
        r: f64,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = DEFAULT_SAMPLES_PER_RADIAN)]
        resolution: f64,
    },
    /// Graft a thin rectangle along a double normal.
    Rectgraft {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        chord: Option<usize>,
        #[arg(long)]
        extra: f64,
        #[arg(long)]
        width: f64,
    },
    /// Cut a point hull with half-cones at chord feet.
    Conesharpen {
        #[arg(long = "in")]
        input: PathBuf,
        /// Vertex index pairs `i:j`, comma separated.
        #[arg(long, value_delimiter = ',')]
        pairs: Vec<String>,
        #[arg(long, default_value_t = 10)]
        p: u32,
        #[arg(long, default_value_t = DEFAULT_SAMPLES_PER_RADIAN)]
        resolution: f64,
    },
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::KuiperViolation { .. } | Error::NonConvergence { .. } => 1,
        Error::Parse(_)
        | Error::Io(_)
        | Error::Json(_)
        | Error::EmptyInput(_)
        | Error::DimensionMismatch { .. }
        | Error::DimensionDeficiency { .. }
        | Error::UnsupportedDimension(_) => 2,
        _ => 3,
    }
}

enum Body {
    Poly(Polytope),
    Smooth(SupportBody),
}

impl Body {
    fn load(input: &Input, tol: f64) -> Result<Body> {
        match (&input.input, &input.body) {
            (Some(p), None) => Ok(Body::Poly(io::read_polytope(p, tol)?.0)),
            (None, Some(s)) => Ok(Body::Smooth(SupportBody::parse(s)?)),
            (Some(_), Some(_)) => Err(Error::Parse("give either --in or --body, not both".into())),
            (None, None) => Err(Error::Parse("missing --in or --body".into())),
        }
    }

    fn dim(&self) -> usize {
        match self {
            Body::Poly(p) => p.dim(),
            Body::Smooth(b) => b.dim(),
        }
    }

    fn normals(&self, cli: &Cli, starts: Option<usize>) -> Result<NormalInventory> {
        match self {
            Body::Poly(p) => enumerate_double_normals(p, cli.tol),
            Body::Smooth(b) => match b.polygon() {
                Some(p) => enumerate_double_normals(p, cli.tol),
                None => find_double_normals_seeded(
                    b,
                    starts.unwrap_or_else(|| default_starts(b.dim())),
                    cli.tol,
                    cli.seed,
                ),
            },
        }
    }

    fn classify(&self, c: &Chord, tol: f64) -> Result<MaxClassification> {
        match self {
            Body::Poly(p) => classify_maximizing(p, c, 0.1 * p.diameter(), DEFAULT_ALPHA, tol),
            Body::Smooth(b) => classify_maximizing(b, c, 0.1 * b.diameter(), DEFAULT_ALPHA, tol),
        }
    }
}

/// Parse `args` and run one command, writing the report to `stdout` unless
/// `--out` is given. Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 {
                write!(stdout, "{e}")
            } else {
                write!(stderr, "{e}")
            };
            return code;
        }
    };
    configure_threads();
    let start = Instant::now();
    match dispatch(&cli) {
        Ok((payload, code)) => {
            let config = serde_json::to_value(&cli).unwrap_or(Value::Null);
            let env = ReportEnvelope::new(config, start.elapsed().as_secs_f64() * 1e3, payload);
            let text = serde_json::to_string_pretty(&env).expect("serializable") + "\n";
            let written = match (&cli.out, &cli.command) {
                (Some(p), c) if !matches!(c, Command::Export { .. }) => std::fs::write(p, &text),
                _ => stdout.write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return 2;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn dispatch(cli: &Cli) -> Result<(Value, i32)> {
    match &cli.command {
        Command::Normals { input, starts } => {
            let body = Body::load(input, cli.tol)?;
            let inv = body.normals(cli, *starts)?;
            let code = if inv.kuiper.satisfied { 0 } else { 1 };
            Ok((serde_json::to_value(&inv)?, code))
        }
        Command::Construct { generator, geometry } => construct(cli, generator, geometry.as_deref()),
        Command::Analyze {
            report,
            input,
            classify,
        } => analyze(cli, report.as_deref(), input, classify),
        Command::Verify { report, input } => verify(cli, report, input),
        Command::Export { input, report } => export(cli, input, report.as_deref()),
    }
}

fn write_geometry(cli: &Cli, path: Option<&Path>, points: &[Point], name: &str) -> Result<Value> {
    let Some(path) = path else {
        return Ok(serde_json::to_value(PolytopeFile::from_points(points, Some(name)))?);
    };
    let text = match cli.format.unwrap_or(Format::Json) {
        Format::Json => serde_json::to_string_pretty(&PolytopeFile::from_points(points, Some(name)))?,
        Format::Off => io::write_off(&build_hull(points, cli.tol)?),
        f => {
            return Err(Error::Parameter(format!(
                "geometry format must be json or off, got {f:?}"
            )))
        }
    };
    std::fs::write(path, text)?;
    Ok(json!(path.display().to_string()))
}

fn pick_chord(p: &Polytope, index: Option<usize>, tol: f64) -> Result<Chord> {
    let inv = enumerate_double_normals(p, tol)?;
    match index {
        Some(i) => inv
            .isolated
            .get(i)
            .map(|n| n.chord.clone())
            .ok_or_else(|| Error::Parameter(format!("chord index {i} out of range"))),
        None => inv
            .isolated
            .iter()
            .max_by(|a, b| a.length.total_cmp(&b.length))
            .map(|n| n.chord.clone())
            .ok_or_else(|| Error::Parameter("polytope has no isolated double normal".into())),
    }
}

fn classify_all(p: &Polytope, chords: &[Chord], tol: f64) -> Result<Value> {
    let mut strict = 0;
    let mut min_margin = f64::INFINITY;
    let mut list = Vec::new();
    for c in chords {
        let r = classify_maximizing(p, c, 0.1 * p.diameter(), DEFAULT_ALPHA, tol)?;
        strict += usize::from(r.is_strict());
        min_margin = min_margin.min(r.margin);
        list.push(r);
    }
    Ok(json!({
        "checked": chords.len(),
        "strict_max": strict,
        "all_strict": strict == chords.len(),
        "min_margin": min_margin,
        "classifications": list,
    }))
}

fn construct(cli: &Cli, g: &Generator, geometry: Option<&Path>) -> Result<(Value, i32)> {
    let tol = cli.tol;
    let payload = match g {
        Generator::Ladder1 {
            r,
            theta,
            n,
            center,
            base,
        } => {
            let o = center.clone().map_or(Point::zeros(2), Point::new);
            let e = base.clone().map_or(Point::from([1.0, 0.0]), Point::new);
            let l = arc_ladder_d1_at(*r, *theta, *n, &o, &e)?;
            let acute = l.acute_check();
            let hull = l.hull(tol)?;
            let strict = classify_all(&hull, &l.rung_chords(), tol)?;
            let mut pts = l.points.clone();
            pts.extend(l.antipodes.iter().cloned());
            let pass = acute.pass && strict["all_strict"] == json!(true);
            json!({
                "generator": "ladder1",
                "delta": l.delta,
                "radii": l.radii(),
                "point_count": pts.len(),
                "dimension_ratio": l.dimension_ratio(),
                "ratio_target": 0.5,
                "acute": acute,
                "strict_max": strict,
                "pass": pass,
                "inventory": l.inventory(),
                "geometry": write_geometry(cli, geometry, &pts, "ladder1")?,
            })
        }
        Generator::Ladder2 { r, a, t, m, scan } => {
            let l = sphere_ladder_d2(*r, *a, *t, *m)?;
            let acute = acute_check_d2(&l);
            let strict = if *m >= 2 {
                classify_all(&l.hull(tol)?, &l.chords(), tol)?
            } else {
                Value::Null
            };
            let scan = scan.map(|s| scan_acute_threshold(*r, *a, *t, s)).transpose()?;
            let chords = l.chords();
            let isolated = chords
                .iter()
                .map(|c| crate::inventory::IsolatedNormal {
                    length: c.length(),
                    chord: c.clone(),
                    tail_face: None,
                    head_face: None,
                    interior: true,
                    certificate: crate::inventory::Certificate {
                        tail_support: acute.min_margin.max(0.0),
                        head_support: acute.min_margin.max(0.0),
                        membership: 0.0,
                        tangential_residual: None,
                    },
                })
                .collect();
            json!({
                "generator": "ladder2",
                "delta": l.delta,
                "point_count": l.points.len(),
                "dimension_ratio": l.dimension_ratio(),
                "ratio_target": 0.75,
                "acute": acute,
                "threshold_scan": scan,
                "strict_max": strict,
                "pass": acute.pass,
                "inventory": NormalInventory::new(3, isolated, vec![], false),
                "geometry": write_geometry(cli, geometry, &l.cloud(), "ladder2")?,
            })
        }
        Generator::Capgraft {
            input,
            chord,
            r,
            eps,
            resolution,
        } => {
            let (p, _) = io::read_polytope(input, tol)?;
            let b = pick_chord(&p, *chord, tol)?;
            let g = spherical_cap_graft(&p, &b, *r, *eps, *resolution, tol)?;
            json!({
                "generator": "capgraft",
                "chord": b,
                "radius": g.radius,
                "epsilon": eps,
                "hausdorff": g.hausdorff,
                "cap_chords": g.cap_chords.len(),
                "cap_chord_length": 2.0 * g.radius,
                "pass": !g.cap_chords.is_empty(),
                "inventory": enumerate_double_normals(&g.polytope, tol)?,
                "geometry": write_geometry(cli, geometry, g.polytope.vertices(), "capgraft")?,
            })
        }
        Generator::Rectgraft {
            input,
            chord,
            extra,
            width,
        } => {
            let (p, _) = io::read_polytope(input, tol)?;
            let b = pick_chord(&p, *chord, tol)?;
            let g = rectangle_graft(&p, &b, *extra, *width, None, tol)?;
            let strict = classify_all(&g.polytope, &g.diagonals, tol)?;
            json!({
                "generator": "rectgraft",
                "chord": b,
                "diagonals": g.diagonals,
                "separations": g.separations,
                "hausdorff": g.hausdorff,
                "pass": strict["all_strict"] == json!(true),
                "strict_max": strict,
                "inventory": enumerate_double_normals(&g.polytope, tol)?,
                "geometry": write_geometry(cli, geometry, g.polytope.vertices(), "rectgraft")?,
            })
        }
        Generator::Conesharpen {
            input,
            pairs,
            p,
            resolution,
        } => {
            let text = std::fs::read_to_string(input)?;
            let pts = if text.trim_start().starts_with('{') {
                io::parse_polytope_json(&text)?.points()?
            } else {
                io::parse_off(&text)?
            };
            let pairs: Vec<(usize, usize)> = pairs
                .iter()
                .map(|s| {
                    let (a, b) = s
                        .split_once(':')
                        .ok_or_else(|| Error::Parse(format!("pair {s:?} is not i:j")))?;
                    let num = |x: &str| {
                        x.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad index in {s:?}")))
                    };
                    Ok((num(a)?, num(b)?))
                })
                .collect::<Result<_>>()?;
            let s = cone_sharpen(&pts, &pairs, *p, *resolution, tol)?;
            let chords: Vec<Chord> = s
                .apexes
                .iter()
                .map(|(u, v)| Chord::new(u.clone(), v.clone()))
                .collect();
            let strict = classify_all(&s.hull, &chords, tol)?;
            json!({
                "generator": "conesharpen",
                "half_angle": s.half_angle,
                "pass": strict["all_strict"] == json!(true),
                "strict_max": strict,
                "geometry": write_geometry(cli, geometry, s.hull.vertices(), "conesharpen")?,
            })
        }
    };
    let code = if payload["pass"] == json!(false) { 1 } else { 0 };
    Ok((payload, code))
}

/// The inventory inside a report: the payload itself or its `inventory` field.
pub fn report_inventory(report: &Value) -> Result<NormalInventory> {
    let payload = report.get("payload").unwrap_or(report);
    let inv = payload.get("inventory").unwrap_or(payload);
    serde_json::from_value(inv.clone()).map_err(|e| Error::Parse(format!("no inventory in report: {e}")))
}

fn read_report(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("report {}: {e}", path.display())))
}

fn packing(points: &[Point]) -> Result<PackingReport> {
    let mut diam: f64 = 0.0;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            diam = diam.max(p.dist(q));
        }
    }
    box_dimension_estimate(points, &default_ladder(if diam > 0.0 { diam } else { 1.0 }))
}

fn analyze(cli: &Cli, report: Option<&Path>, input: &Input, classify: &[usize]) -> Result<(Value, i32)> {
    let body = if input.input.is_some() || input.body.is_some() {
        Some(Body::load(input, cli.tol)?)
    } else {
        None
    };
    let (inv, extra) = match (report, &body) {
        (Some(r), _) => {
            let v = read_report(r)?;
            let payload = v.get("payload").cloned().unwrap_or(Value::Null);
            (report_inventory(&v)?, payload)
        }
        (None, Some(b)) => (b.normals(cli, None)?, Value::Null),
        (None, None) => return Err(Error::Parse("missing inventory: give --report or --in/--body".into())),
    };
    let spec = spectrum(&inv, cli.tol)?;
    let holder = match holder_verify(&inv, cli.tol) {
        Ok(h) => serde_json::to_value(h)?,
        Err(e) => json!({ "error": e.to_string() }),
    };
    let feet: Vec<Point> = inv
        .chords()
        .flat_map(|c| [c.tail.clone(), c.head.clone()])
        .collect();
    let lengths: Vec<Point> = spec.lengths.iter().map(|l| Point::from([*l])).collect();
    let chords: Vec<Chord> = inv.chords().cloned().collect();
    let chord_packing = {
        let mut diam: f64 = 0.0;
        for (i, a) in chords.iter().enumerate() {
            for b in &chords[i + 1..] {
                diam = diam.max(a.distance(b));
            }
        }
        let ladder = default_ladder(if diam > 0.0 { diam } else { 1.0 });
        box_dimension_chords(&chords, &ladder)
    };
    let opt = |r: Result<PackingReport>| match r {
        Ok(p) => serde_json::to_value(p).unwrap_or(Value::Null),
        Err(e) => json!({ "error": e.to_string() }),
    };
    let mut classifications = Vec::new();
    if !classify.is_empty() {
        let b = body
            .as_ref()
            .ok_or_else(|| Error::Parse("--classify needs --in or --body".into()))?;
        for &i in classify {
            let n = inv
                .isolated
                .get(i)
                .ok_or_else(|| Error::Parameter(format!("chord index {i} out of range")))?;
            classifications.push(json!({ "index": i, "result": b.classify(&n.chord, cli.tol)? }));
        }
    }
    let mut payload = json!({
        "spectrum": spec,
        "holder": holder,
        "packing": {
            "feet": opt(packing(&feet)),
            "chords": opt(chord_packing),
            "spectrum": opt(packing(&lengths)),
        },
        "classifications": classifications,
        "kuiper": inv.kuiper,
    });
    for key in ["generator", "dimension_ratio", "ratio_target", "delta"] {
        if let Some(v) = extra.get(key) {
            payload[key] = v.clone();
        }
    }
    Ok((payload, 0))
}

fn verify(cli: &Cli, report: &Path, input: &Input) -> Result<(Value, i32)> {
    let inv = report_inventory(&read_report(report)?)?;
    let body = Body::load(input, cli.tol)?;
    if body.dim() != inv.dim {
        return Err(Error::DimensionMismatch {
            expected: body.dim(),
            found: inv.dim,
        });
    }
    let tol = cli.tol;
    let mut failures = Vec::new();
    let chords: Vec<&Chord> = inv
        .chords()
        .chain(inv.families.iter().map(|f| &f.representative))
        .collect();
    for (i, c) in chords.iter().enumerate() {
        let ok = match &body {
            Body::Poly(p) => {
                let p = p.clone().with_tol(tol);
                let e = c.direction().ok_or_else(|| Error::Parse("degenerate chord".into()))?;
                p.support_check(&c.tail, &e).unwrap_or(false)
                    && p.support_check(&c.head, &-&e).unwrap_or(false)
            }
            Body::Smooth(b) if b.polygon().is_some() => {
                let p = b.polygon().expect("polygon").clone().with_tol(tol);
                let e = c.direction().ok_or_else(|| Error::Parse("degenerate chord".into()))?;
                p.support_check(&c.tail, &e).unwrap_or(false)
                    && p.support_check(&c.head, &-&e).unwrap_or(false)
            }
            Body::Smooth(b) => {
                let grad = chord_length_gradient(b, c, tol).map(|g| g.norm);
                let res = c.direction().map(|u| tangential_residual(b, &u).norm());
                matches!(grad, Ok(g) if g <= 10.0 * tol)
                    && res.is_some_and(|r| r <= 10.0 * tol * b.diameter())
            }
        };
        if !ok {
            failures.push(i);
        }
    }
    let pass = failures.is_empty() && inv.kuiper.satisfied;
    Ok((
        json!({
            "checked": chords.len(),
            "failures": failures,
            "kuiper": inv.kuiper,
            "pass": pass,
        }),
        if pass { 0 } else { 1 },
    ))
}

fn export(cli: &Cli, input: &Input, report: Option<&Path>) -> Result<(Value, i32)> {
    let body = Body::load(input, cli.tol)?;
    let out = cli
        .out
        .as_ref()
        .ok_or_else(|| Error::Parameter("export needs --out".into()))?;
    let inv = match report {
        Some(r) => report_inventory(&read_report(r)?)?,
        None => body.normals(cli, None)?,
    };
    let mut chords: Vec<Chord> = inv.chords().cloned().collect();
    chords.extend(inv.families.iter().map(|f| f.representative.clone()));
    let format = cli
        .format
        .unwrap_or(if body.dim() == 2 { Format::Svg } else { Format::Mesh });
    match format {
        Format::Svg => {
            if body.dim() != 2 {
                return Err(Error::DimensionMismatch {
                    expected: 2,
                    found: body.dim(),
                });
            }
            let outline: Vec<Point> = match &body {
                Body::Poly(p) => io::polygon_order(p).iter().map(|&i| p.vertex(i).clone()).collect(),
                Body::Smooth(b) => match b.polygon() {
                    Some(p) => io::polygon_order(p).iter().map(|&i| p.vertex(i).clone()).collect(),
                    None => b.boundary_samples(720),
                },
            };
            std::fs::write(out, io::write_svg(&outline, &chords)?)?;
            Ok((
                json!({ "figure": out.display().to_string(), "chords": chords.len() }),
                0,
            ))
        }
        Format::Mesh | Format::Off => {
            if body.dim() != 3 {
                return Err(Error::DimensionMismatch {
                    expected: 3,
                    found: body.dim(),
                });
            }
            let poly = match &body {
                Body::Poly(p) => p.clone(),
                Body::Smooth(b) => {
                    let pts: Vec<Point> = directions::sphere_net(3, 2000, cli.seed)
                        .iter()
                        .map(|u| b.touching(u))
                        .collect();
                    build_hull(&pts, cli.tol)?
                }
            };
            std::fs::write(out, io::write_mesh(&poly)?)?;
            let sidecar = out.with_extension("chords.json");
            let ann = io::annotations(&chords);
            std::fs::write(&sidecar, serde_json::to_string_pretty(&json!({ "chords": ann }))?)?;
            Ok((
                json!({
                    "mesh": out.display().to_string(),
                    "sidecar": sidecar.display().to_string(),
                    "chords": ann.len(),
                }),
                0,
            ))
        }
        Format::Json => Err(Error::Parameter("export format must be svg or mesh".into())),
    }
}
