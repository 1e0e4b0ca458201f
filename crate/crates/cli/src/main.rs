mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use midset::campaign::{run_campaign, Suite};
use midset::convexity::{
    is_convexity_point_char, is_convexity_point_direct, middle_intercept_profile, theorem_points,
    witness_nonconvexity,
};
use midset::decompose::decompose;
use midset::format::{
    emit_body, format_point, is_smooth_document, parse_body, parse_point_arg, parse_smooth_body,
};
use midset::generate::{generate_indexed, GenOptions, GENERATOR_ID};
use midset::geom::{affine_dim, reflect, Body, Point};
use midset::middle::{a_body, antipodal_events, has_parallel_edges, is_centrally_symmetric};
use midset::smooth::{
    a_body_approx, boundary_polygon, fd_residuals, numeric_union_defect, symmetry_residual,
    z_curve, SmoothBody,
};
use midset::{GeomError, TOLERANCES};

use render::{float_point, float_ring, Figure};

#[derive(Parser)]
#[command(
    name = "midset",
    version,
    about = "Convexity points of planar convex bodies"
)]
struct Cli {
    /// Seed for generators and campaigns.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Acceptance tolerance for numeric (smooth-body) checks.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Subcommand)]
enum Command {
    /// Random polygon: hull of N lattice points in [-1000, 1000]^2.
    Gen {
        n: usize,
        #[arg(long)]
        no_parallel: bool,
        #[arg(long)]
        symmetric: bool,
        /// Minkowski-add K random centred segments.
        #[arg(long, value_name = "K", default_value_t = 0)]
        with_summands: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Summary of a body or smooth-body file.
    Info { input: PathBuf },
    /// Convexity points with certificates.
    Points { input: PathBuf },
    /// Tests whether Z is a convexity point.
    Verify {
        input: PathBuf,
        /// Candidate point "x,y"; coordinates are integers or p/q.
        #[arg(allow_hyphen_values = true)]
        z: String,
    },
    /// The hull of all middle sets.
    ABody {
        input: PathBuf,
        /// Remove parallel-edge summands first and use the core.
        #[arg(long)]
        core: bool,
        /// Angles sampled over [0, pi) for smooth bodies.
        #[arg(long, default_value_t = 360)]
        samples: usize,
    },
    /// Splits off centred segment summands.
    Decompose { input: PathBuf },
    /// Middle-line intercept profile at exposed points of A_K, or a
    /// derivative sweep for smooth bodies.
    Profile {
        input: PathBuf,
        /// Only this exposed point.
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
        #[arg(long, default_value_t = 999)]
        samples: usize,
        /// Finite-difference step for smooth bodies.
        #[arg(long, default_value_t = 1e-4)]
        step: f64,
    },
    /// Runs a property suite over seeded inputs.
    Campaign { count: u64, suite: String },
    /// SVG figure of a body, reflections and A_K.
    Render {
        input: PathBuf,
        /// Reflection centre "x,y"; repeatable.
        #[arg(long, allow_hyphen_values = true)]
        z: Vec<String>,
        #[arg(long)]
        a_body: bool,
        /// Mark the convexity points found by `points`.
        #[arg(long)]
        points: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Input errors exit with 2, property violations with 1.
enum Failure {
    Input(anyhow::Error),
    Violation(anyhow::Error),
}

impl From<GeomError> for Failure {
    fn from(e: GeomError) -> Self {
        match e {
            GeomError::Internal(_) => Failure::Violation(e.into()),
            _ => Failure::Input(e.into()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

type Outcome = Result<Report, Failure>;

struct Report {
    command: &'static str,
    digest: Option<String>,
    text: String,
    outputs: Value,
    passed: u64,
    failed: u64,
}

impl Report {
    fn new(command: &'static str, digest: Option<String>, text: String, outputs: Value) -> Self {
        Report {
            command,
            digest,
            text,
            outputs,
            passed: 1,
            failed: 0,
        }
    }

    fn counts(mut self, passed: u64, failed: u64) -> Self {
        self.passed = passed;
        self.failed = failed;
        self
    }
}

struct Input {
    text: String,
    digest: String,
}

fn read_input(path: &Path) -> Result<Input, Failure> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let digest = hex::encode(Sha256::digest(&bytes));
    let text =
        String::from_utf8(bytes).with_context(|| format!("{} is not UTF-8", path.display()))?;
    Ok(Input { text, digest })
}

fn read_body(path: &Path) -> Result<(Body, String), Failure> {
    let input = read_input(path)?;
    let body = parse_body(&input.text).map_err(|e| anyhow!("{}: {e}", path.display()))?;
    Ok((body, input.digest))
}

enum AnyBody {
    Exact(Body),
    Smooth(SmoothBody),
}

fn read_any(path: &Path) -> Result<(AnyBody, String), Failure> {
    let input = read_input(path)?;
    let body = if is_smooth_document(&input.text) {
        AnyBody::Smooth(
            parse_smooth_body(&input.text).map_err(|e| anyhow!("{}: {e}", path.display()))?,
        )
    } else {
        AnyBody::Exact(parse_body(&input.text).map_err(|e| anyhow!("{}: {e}", path.display()))?)
    };
    Ok((body, input.digest))
}

fn point_arg(s: &str) -> Result<Point, Failure> {
    parse_point_arg(s).map_err(|e| Failure::Input(anyhow!("{e}")))
}

fn float_pair(s: &str) -> Result<[f64; 2], Failure> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| anyhow!("expected \"x,y\", got {s:?}"))?;
    let parse = |t: &str| -> Result<f64, Failure> {
        t.trim()
            .parse::<f64>()
            .map_err(|e| Failure::Input(anyhow!("bad coordinate {t:?}: {e}")))
    };
    Ok([parse(x)?, parse(y)?])
}

fn write_or_print(output: &Option<PathBuf>, content: &str) -> Result<String, Failure> {
    match output {
        Some(path) => {
            fs::write(path, content).with_context(|| format!("writing {}", path.display()))?;
            Ok(format!("wrote {}\n", path.display()))
        }
        None => Ok(content.to_string()),
    }
}

fn cmd_gen(
    seed: u64,
    n: usize,
    no_parallel: bool,
    symmetric: bool,
    summands: usize,
    output: &Option<PathBuf>,
) -> Outcome {
    let opts = GenOptions {
        n,
        no_parallel,
        symmetric,
        summands,
    };
    let g = generate_indexed(&opts, seed, 0)?;
    let doc = emit_body(&g.body);
    let text = write_or_print(output, &doc)?;
    let outputs = json!({
        "body": g.body,
        "center": g.center,
        "generator": GENERATOR_ID,
        "seed": seed,
    });
    Ok(Report::new("gen", None, text, outputs))
}

fn cmd_info(path: &Path) -> Outcome {
    let (body, digest) = read_any(path)?;
    let body = match body {
        AnyBody::Smooth(sb) => {
            let res = symmetry_residual(&sb);
            let text = format!(
                "type: smooth\nharmonics: {}\nmin h + h'': {}\nsymmetry residual: {res:e}\n",
                sb.harmonics().len(),
                sb.min_curvature
            );
            let outputs = json!({
                "type": "smooth",
                "harmonics": sb.harmonics(),
                "min_curvature": sb.min_curvature,
                "symmetry_residual": res,
            });
            return Ok(Report::new("info", Some(digest), text, outputs));
        }
        AnyBody::Exact(b) => b,
    };
    let mut text = format!(
        "type: {}\nvertices: {}\n",
        body.kind().name(),
        body.vertices().len()
    );
    let sym = is_centrally_symmetric(&body);
    let mut outputs = json!({
        "type": body.kind().name(),
        "vertices": body.vertices().len(),
        "centrally_symmetric": sym.symmetric,
        "center": sym.center,
    });
    match &sym.center {
        Some(c) => text.push_str(&format!(
            "centrally symmetric: true, center {}\n",
            format_point(c)
        )),
        None => text.push_str("centrally symmetric: false\n"),
    }
    if body.is_polygon() {
        let pair = has_parallel_edges(&body)?;
        match &pair {
            Some(pp) => text.push_str(&format!("parallel edges: normal {}\n", pp.normal)),
            None => text.push_str("parallel edges: none\n"),
        }
        outputs["parallel_edges"] = json!(pair.as_ref().map(|pp| &pp.normal));
        if pair.is_none() {
            let events = antipodal_events(&body)?;
            let critical = events.iter().filter(|e| e.is_critical()).count();
            let a = a_body(&body)?;
            text.push_str(&format!(
                "antipodal events: {} ({critical} critical)\na_body: {}",
                events.len(),
                emit_body(&a)
            ));
            outputs["antipodal_events"] = json!(events);
            outputs["a_body"] = json!(a);
        }
    }
    Ok(Report::new("info", Some(digest), text, outputs))
}

fn cmd_points(path: &Path) -> Outcome {
    let (body, digest) = read_body(path)?;
    let certs = theorem_points(&body)?;
    let zs: Vec<Point> = certs.iter().map(|c| c.z.clone()).collect();
    let independent = affine_dim(&zs)? == 2;
    let mut text = String::new();
    for c in &certs {
        let ws: Vec<String> = c.witnesses.iter().map(|w| w.to_string()).collect();
        text.push_str(&format!(
            "{} {}{} witnesses [{}]\n",
            format_point(&c.z),
            c.method.name(),
            if c.degenerate {
                " (degenerate case)"
            } else {
                ""
            },
            ws.join(", ")
        ));
    }
    text.push_str(&format!("affinely independent: {independent}\n"));
    let outputs = json!({ "certificates": certs, "affinely_independent": independent });
    let n = certs.len() as u64;
    Ok(Report::new("points", Some(digest), text, outputs).counts(n, 0))
}

fn cmd_verify(path: &Path, z: &str, tolerance: Option<f64>) -> Outcome {
    let (body, digest) = read_any(path)?;
    let body = match body {
        AnyBody::Smooth(sb) => {
            let z = float_pair(z)?;
            let tol = tolerance.unwrap_or(TOLERANCES.cover);
            let defect = numeric_union_defect(&sb, z, 720);
            let ok = defect <= tol;
            let text = format!(
                "numeric direct: {ok} (uncovered distance {defect:e}, tolerance {tol:e})\n"
            );
            let outputs = json!({ "z": z, "direct": ok, "defect": defect, "tolerance": tol });
            let f = u64::from(!ok);
            return Ok(Report::new("verify", Some(digest), text, outputs).counts(1 - f, f));
        }
        AnyBody::Exact(b) => b,
    };
    let z = point_arg(z)?;
    let direct = is_convexity_point_direct(&body, &z);
    let mut text = format!("direct: {direct}\n");
    let mut outputs = json!({ "z": z, "direct": direct });
    let ch = if body.is_polygon() {
        match is_convexity_point_char(&body, &z) {
            Ok(ch) => Some(ch),
            Err(GeomError::ParallelEdges(_)) => None,
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };
    match &ch {
        Some(ch) => {
            let ws: Vec<String> = ch.witnesses.iter().map(|w| w.to_string()).collect();
            let vs: Vec<String> = ch.violations.iter().map(|w| w.to_string()).collect();
            text.push_str(&format!(
                "characterization: {}\nwitness directions: [{}]\nviolating directions: [{}]\n",
                ch.convex,
                ws.join(", "),
                vs.join(", ")
            ));
            outputs["characterization"] = json!(ch);
        }
        None => {
            text.push_str("characterization: n/a: parallel edges\n");
            outputs["characterization"] = Value::Null;
        }
    }
    if !direct {
        if let Some(w) = witness_nonconvexity(&body, &reflect(&body, &z)) {
            text.push_str(&format!("nonconvexity witness: {}\n", format_point(&w)));
            outputs["nonconvexity_witness"] = json!(w);
        }
    }
    // disagreement between the two tests is a property violation
    let agree = ch.as_ref().map_or(true, |c| c.convex == direct);
    Ok(Report::new("verify", Some(digest), text, outputs)
        .counts(u64::from(agree), u64::from(!agree)))
}

fn cmd_a_body(path: &Path, core: bool, samples: usize) -> Outcome {
    let (body, digest) = read_any(path)?;
    let body = match body {
        AnyBody::Smooth(sb) => {
            let a = a_body_approx(&sb, samples)?;
            let doc = serde_json::to_string(&a).map_err(anyhow::Error::from)? + "\n";
            return Ok(Report::new("a-body", Some(digest), doc, json!(a)));
        }
        AnyBody::Exact(b) => b,
    };
    let target = if core { decompose(&body)?.core } else { body };
    let a = if target.is_polygon() {
        a_body(&target)?
    } else {
        // lower-dimensional cores are centrally symmetric about their centroid
        Body::point(target.vertex_centroid())
    };
    Ok(Report::new("a-body", Some(digest), emit_body(&a), json!(a)))
}

fn cmd_decompose(path: &Path) -> Outcome {
    let (body, digest) = read_body(path)?;
    let dec = decompose(&body)?;
    let mut text = format!("core: {}", emit_body(&dec.core));
    for s in &dec.summands {
        text.push_str(&format!("summand: {}", emit_body(s)));
    }
    for st in &dec.trace {
        text.push_str(&format!(
            "step: direction {} vector {}\n",
            st.direction,
            format_point(&st.vector)
        ));
    }
    Ok(Report::new("decompose", Some(digest), text, json!(dec)))
}

fn cmd_profile(
    path: &Path,
    at: &Option<String>,
    samples: usize,
    step: f64,
    tolerance: Option<f64>,
) -> Outcome {
    let (body, digest) = read_any(path)?;
    let body = match body {
        AnyBody::Smooth(sb) => return smooth_sweep(&sb, digest, samples, step, tolerance),
        AnyBody::Exact(b) => b,
    };
    let a = a_body(&body)?;
    let points: Vec<Point> = match at {
        Some(s) => vec![point_arg(s)?],
        None => a.vertices().to_vec(),
    };
    let mut text = String::new();
    let mut profiles = Vec::new();
    let (mut passed, mut failed) = (0, 0);
    for z in &points {
        let prof = middle_intercept_profile(&body, z, samples)?;
        let exposes = prof.frame.exposes(&a);
        let ok = exposes && prof.monotone_violations == 0;
        if ok {
            passed += 1;
        } else {
            failed += 1;
        }
        let zc = prof
            .zero_component
            .map_or("none".to_string(), |(s, e)| format!("[{s:.6}, {e:.6}]"));
        text.push_str(&format!(
            "{}: frame e1 {} e2 {} exposes {exposes}; zero component {zc} ({} runs); violations {}\n",
            format_point(z),
            prof.frame.e1,
            prof.frame.e2,
            prof.zero_runs,
            prof.monotone_violations
        ));
        profiles.push(json!({
            "frame": prof.frame,
            "samples": prof.samples,
            "zero_component": prof.zero_component,
            "violations": prof.monotone_violations,
        }));
    }
    Ok(Report::new("profile", Some(digest), text, json!(profiles)).counts(passed, failed))
}

fn smooth_sweep(
    sb: &SmoothBody,
    digest: String,
    samples: usize,
    step: f64,
    tolerance: Option<f64>,
) -> Outcome {
    let tol = tolerance.unwrap_or(TOLERANCES.derivative);
    let mut text = String::from("phi\tp\tp'\tresidual\n");
    let mut rows = Vec::with_capacity(samples);
    let mut failed = 0;
    for i in 0..samples {
        let phi = 2.0 * std::f64::consts::PI * i as f64 / samples as f64;
        let z = z_curve(sb, phi);
        let r = fd_residuals(sb, phi, step)?.max();
        if r >= tol {
            failed += 1;
        }
        text.push_str(&format!("{phi}\t{}\t{}\t{r:e}\n", z.p, z.p_prime));
        rows.push(json!({ "phi": phi, "p": z.p, "p_prime": z.p_prime, "residual": r }));
    }
    let n = samples as u64;
    Ok(Report::new("profile", Some(digest), text, json!(rows)).counts(n - failed, failed))
}

fn cmd_campaign(seed: u64, count: u64, suite: &str) -> Outcome {
    let suite: Suite = suite.parse()?;
    let r = run_campaign(suite, count, seed);
    let mut text = format!(
        "suite {} count {} seed {}: {} passed, {} failed, {} checks, {:.2} s\ngenerator: {}\n",
        r.suite, r.count, r.seed, r.passed, r.failed, r.checks, r.wall_time_s, r.generator
    );
    for f in &r.failures {
        text.push_str(&format!("  input {}: {}\n", f.index, f.message));
    }
    let (p, f) = (r.passed, r.failed);
    Ok(Report::new("campaign", None, text, json!(r)).counts(p, f))
}

fn cmd_render(
    path: &Path,
    zs: &[String],
    with_a_body: bool,
    with_points: bool,
    output: &Option<PathBuf>,
) -> Outcome {
    let (body, digest) = read_any(path)?;
    let mut fig = Figure::default();
    match body {
        AnyBody::Smooth(sb) => {
            fig.body = boundary_polygon(&sb, 720).vertices;
            for z in zs {
                let z = float_pair(z)?;
                fig.reflections.push(
                    fig.body
                        .iter()
                        .map(|v| [2.0 * z[0] - v[0], 2.0 * z[1] - v[1]])
                        .collect(),
                );
                fig.markers.push(z);
            }
            if with_a_body {
                fig.a_body = Some(a_body_approx(&sb, 360)?.vertices);
            }
        }
        AnyBody::Exact(b) => {
            fig.body = float_ring(&b);
            for z in zs {
                let z = point_arg(z)?;
                fig.reflections.push(float_ring(&reflect(&b, &z)));
                fig.markers.push(float_point(&z));
            }
            if with_a_body {
                let core = decompose(&b)?.core;
                let a = if core.is_polygon() {
                    a_body(&core)?
                } else {
                    Body::point(core.vertex_centroid())
                };
                fig.a_body = Some(float_ring(&a));
            }
            if with_points {
                for c in theorem_points(&b)? {
                    fig.markers.push(float_point(&c.z));
                }
            }
        }
    }
    let svg = fig.to_svg();
    let text = write_or_print(output, &svg)?;
    Ok(Report::new(
        "render",
        Some(digest),
        text,
        json!({ "bytes": svg.len() }),
    ))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Gen {
            n,
            no_parallel,
            symmetric,
            with_summands,
            output,
        } => cmd_gen(
            cli.seed,
            *n,
            *no_parallel,
            *symmetric,
            *with_summands,
            output,
        ),
        Command::Info { input } => cmd_info(input),
        Command::Points { input } => cmd_points(input),
        Command::Verify { input, z } => cmd_verify(input, z, cli.tolerance),
        Command::ABody {
            input,
            core,
            samples,
        } => cmd_a_body(input, *core, *samples),
        Command::Decompose { input } => cmd_decompose(input),
        Command::Profile {
            input,
            at,
            samples,
            step,
        } => cmd_profile(input, at, *samples, *step, cli.tolerance),
        Command::Campaign { count, suite } => cmd_campaign(cli.seed, *count, suite),
        Command::Render {
            input,
            z,
            a_body,
            points,
            output,
        } => cmd_render(input, z, *a_body, *points, output),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Text => print!("{}", report.text),
                Format::Records => {
                    let rec = json!({
                        "command": report.command,
                        "input_digest": report.digest,
                        "outputs": report.outputs,
                        "passed": report.passed,
                        "failed": report.failed,
                        "wall_time_s": start.elapsed().as_secs_f64(),
                    });
                    println!("{rec}");
                }
            }
            if report.failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Violation(e)) => {
            eprintln!("violation: {e:#}");
            ExitCode::from(1)
        }
    }
}
