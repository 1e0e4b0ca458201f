//! Seeded property campaigns over generated corpora.
//!
//! Each input is generated from its own stream and checked independently;
//! results are collected in input order regardless of scheduling.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::convexity::{
    is_convexity_point_char, is_convexity_point_direct, middle_intercept_profile, theorem_points,
    Method,
};
use crate::decompose::{
    decompose, decompose_with, equal_up_to_translation, verify_decomposition, ExtractionOrder,
};
use crate::error::GeomError;
use crate::generate::{generate_indexed, random_smooth_body, rng_for, GenOptions, GENERATOR_ID};
use crate::geom::{affine_dim, ratio, Body, Point, Rat};
use crate::middle::{a_body, is_centrally_symmetric, MiddleStructure};
use crate::smooth::{fd_check_lemma4, make_smooth_body_with_margin, symmetry_residual, Harmonic};
use crate::tolerance::TOLERANCES;

pub const PROFILE_SAMPLES: usize = 999;
pub const GRID: usize = 21;
pub const LEMMA4_ANGLES: usize = 1000;
pub const LEMMA4_SPOT_ANGLES: usize = 50;
pub const LEMMA4_STEP: f64 = 1e-4;
pub const LEMMA4_SWEEP: [f64; 3] = [1e-3, 1e-4, 1e-5];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Lemma6,
    Theorem,
    Lemma2Agreement,
    DecomposeRoundtrip,
    Symmetric,
    Lemma4,
    Lemma5,
    Profile,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Lemma6,
        Suite::Theorem,
        Suite::Lemma2Agreement,
        Suite::DecomposeRoundtrip,
        Suite::Symmetric,
        Suite::Lemma4,
        Suite::Lemma5,
        Suite::Profile,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma6 => "lemma6",
            Suite::Theorem => "theorem",
            Suite::Lemma2Agreement => "lemma2-agreement",
            Suite::DecomposeRoundtrip => "decompose-roundtrip",
            Suite::Symmetric => "symmetric",
            Suite::Lemma4 => "lemma4",
            Suite::Lemma5 => "lemma5",
            Suite::Profile => "profile",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self, GeomError> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
                GeomError::InvalidArgument(format!(
                    "unknown suite {s:?}; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseFailure {
    pub index: u64,
    pub message: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CampaignReport {
    pub suite: Suite,
    pub count: u64,
    pub seed: u64,
    pub generator: &'static str,
    pub passed: u64,
    pub failed: u64,
    /// Individual assertions evaluated over all inputs.
    pub checks: u64,
    pub failures: Vec<CaseFailure>,
    pub wall_time_s: f64,
}

impl CampaignReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

type CaseResult = Result<u64, String>;

/// Point count for input `index`: cycles through `3..=40`.
pub fn corpus_n(index: u64) -> usize {
    3 + (index % 38) as usize
}

fn no_parallel(index: u64) -> GenOptions {
    GenOptions {
        no_parallel: true,
        ..GenOptions::new(corpus_n(index))
    }
}

fn polygon(seed: u64, index: u64) -> Result<Body, String> {
    generate_indexed(&no_parallel(index), seed, index)
        .map(|g| g.body)
        .map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lemma6_case(seed: u64, index: u64) -> CaseResult {
    let p = polygon(seed, index)?;
    let a = a_body(&p).map_err(|e| e.to_string())?;
    for v in a.vertices() {
        ensure(is_convexity_point_direct(&p, v), || {
            format!("vertex {v} of the middle-set body is not a convexity point")
        })?;
    }
    Ok(a.vertices().len() as u64)
}

fn theorem_case(seed: u64, index: u64) -> CaseResult {
    let p = polygon(seed, index)?;
    ensure(!is_centrally_symmetric(&p).symmetric, || {
        "parallel-edge-free polygon reported symmetric".into()
    })?;
    let certs = theorem_points(&p).map_err(|e| e.to_string())?;
    let zs: Vec<Point> = certs.iter().map(|c| c.z.clone()).collect();
    ensure(zs.len() >= 3, || format!("only {} certificates", zs.len()))?;
    let dim = affine_dim(&zs).map_err(|e| e.to_string())?;
    ensure(dim == 2, || format!("certificates span dimension {dim}"))?;
    for z in &zs {
        ensure(is_convexity_point_direct(&p, z), || {
            format!("{z} fails the direct test")
        })?;
    }
    Ok(zs.len() as u64)
}

/// `GRID × GRID` rational grid over the bounding box.
pub fn bounding_grid(body: &Body) -> Vec<Point> {
    let vs = body.vertices();
    let min_x = vs.iter().map(|v| &v.x).min().unwrap();
    let max_x = vs.iter().map(|v| &v.x).max().unwrap();
    let min_y = vs.iter().map(|v| &v.y).min().unwrap();
    let max_y = vs.iter().map(|v| &v.y).max().unwrap();
    let steps = (GRID - 1) as i64;
    let at = |lo: &Rat, hi: &Rat, j: usize| lo + (hi - lo) * ratio(j as i64, steps);
    let mut pts = Vec::with_capacity(GRID * GRID);
    for i in 0..GRID {
        for j in 0..GRID {
            pts.push(Point::new(at(min_x, max_x, i), at(min_y, max_y, j)));
        }
    }
    pts
}

fn lemma2_case(seed: u64, index: u64) -> CaseResult {
    let p = polygon(seed, index)?;
    let ms = MiddleStructure::new(&p).map_err(|e| e.to_string())?;
    let grid = bounding_grid(&p);
    for z in &grid {
        let ch = ms.characterize(z).convex;
        let direct = is_convexity_point_direct(&p, z);
        ensure(ch == direct, || {
            format!("at {z}: characterization {ch}, direct {direct}")
        })?;
    }
    Ok(grid.len() as u64)
}

fn roundtrip_case(seed: u64, index: u64) -> CaseResult {
    let opts = GenOptions {
        summands: (index % 4) as usize,
        ..no_parallel(index)
    };
    let g = generate_indexed(&opts, seed, index).map_err(|e| e.to_string())?;
    let k = &g.body;
    let dec = decompose(k).map_err(|e| e.to_string())?;
    ensure(verify_decomposition(k, &dec), || {
        "decomposition does not verify".into()
    })?;
    ensure(equal_up_to_translation(&dec.core, &g.base), || {
        "core is not a translate of the generating polygon".into()
    })?;
    let rev = decompose_with(k, ExtractionOrder::Reverse).map_err(|e| e.to_string())?;
    ensure(equal_up_to_translation(&dec.core, &rev.core), || {
        "extraction order changes the core".into()
    })?;
    let certs = theorem_points(&dec.core).map_err(|e| e.to_string())?;
    for c in &certs {
        ensure(is_convexity_point_direct(k, &c.z), || {
            format!("core certificate {} does not transfer", c.z)
        })?;
    }
    Ok(1 + certs.len() as u64)
}

fn symmetric_case(seed: u64, index: u64) -> CaseResult {
    let opts = GenOptions {
        symmetric: true,
        ..GenOptions::new(corpus_n(index))
    };
    let g = generate_indexed(&opts, seed, index).map_err(|e| e.to_string())?;
    let center = g.center.expect("symmetric construction has a centre");
    let certs = theorem_points(&g.body).map_err(|e| e.to_string())?;
    ensure(certs.len() == 1, || format!("{} certificates", certs.len()))?;
    let c = &certs[0];
    ensure(c.method == Method::SymmetricCenter, || {
        format!("method {}", c.method.name())
    })?;
    ensure(c.z == center, || {
        format!("centre {} expected {center}", c.z)
    })?;
    ensure(is_convexity_point_direct(&g.body, &c.z), || {
        "centre fails the direct test".into()
    })?;
    Ok(1)
}

fn lemma4_case(seed: u64, index: u64) -> CaseResult {
    let mut rng = rng_for(seed, index);
    let k_max = 3 + (index % 5) as u32;
    let body = random_smooth_body(&mut rng, k_max, 0.05);
    for _ in 0..LEMMA4_ANGLES {
        let phi = rng.gen_range(0.0..2.0 * PI);
        let r = fd_check_lemma4(&body, phi, LEMMA4_STEP).map_err(|e| e.to_string())?;
        ensure(r < TOLERANCES.derivative, || {
            format!("residual {r:e} at φ = {phi}")
        })?;
    }
    for _ in 0..LEMMA4_SPOT_ANGLES {
        let phi = rng.gen_range(0.0..2.0 * PI);
        let rs: Vec<f64> = LEMMA4_SWEEP
            .iter()
            .map(|&s| fd_check_lemma4(&body, phi, s))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        for w in rs.windows(2) {
            // at the rounding floor the sequence is noise, not growth
            ensure(w[1] <= 1.1 * w[0] || w[1] <= TOLERANCES.identity, || {
                format!("residual grows at φ = {phi}: {rs:?}")
            })?;
        }
    }
    Ok((LEMMA4_ANGLES + LEMMA4_SPOT_ANGLES) as u64)
}

fn lemma5_case(seed: u64, index: u64) -> CaseResult {
    let mut rng = rng_for(seed, index);
    // first harmonic plus even harmonics: symmetric up to translation
    let mut hs = vec![Harmonic::new(
        1,
        rng.gen_range(-5.0..5.0),
        rng.gen_range(-5.0..5.0),
    )];
    let mut a0 = 0.2;
    for k in [2u32, 4, 6] {
        let (a, b) = (rng.gen_range(-0.05..0.05), rng.gen_range(-0.05..0.05));
        a0 += ((k * k) as f64 - 1.0) * (f64::abs(a) + f64::abs(b));
        hs.push(Harmonic::new(k, a, b));
    }
    hs.push(Harmonic::new(0, a0, 0.0));
    let sym = make_smooth_body_with_margin(&hs, 0.1).map_err(|e| e.to_string())?;
    let r = symmetry_residual(&sym);
    ensure(r <= TOLERANCES.identity, || {
        format!("symmetric body residual {r:e}")
    })?;

    // an odd harmonic of order ≥ 3 with a coefficient of size ≥ 0.05
    let k = [3u32, 5, 7][rng.gen_range(0..3)];
    let mag = rng.gen_range(0.05..0.1) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let other = rng.gen_range(-0.1..0.1);
    let (a, b) = if rng.gen_bool(0.5) {
        (mag, other)
    } else {
        (other, mag)
    };
    hs.push(Harmonic::new(k, a, b));
    hs.push(Harmonic::new(
        0,
        ((k * k) as f64 - 1.0) * (f64::abs(a) + f64::abs(b)),
        0.0,
    ));
    let asym = make_smooth_body_with_margin(&hs, 0.1).map_err(|e| e.to_string())?;
    let r = symmetry_residual(&asym);
    ensure(r >= 0.1, || {
        format!("odd harmonic k = {k} gives residual only {r}")
    })?;
    Ok(2)
}

fn profile_case(seed: u64, index: u64) -> CaseResult {
    let p = polygon(seed, index)?;
    let a = a_body(&p).map_err(|e| e.to_string())?;
    for v in a.vertices() {
        let prof = middle_intercept_profile(&p, v, PROFILE_SAMPLES).map_err(|e| e.to_string())?;
        ensure(prof.frame.exposes(&a), || {
            format!("frame at {v} does not expose it")
        })?;
        ensure(prof.monotone_violations == 0, || {
            format!(
                "{} monotonicity violations at {v}",
                prof.monotone_violations
            )
        })?;
    }
    Ok(a.vertices().len() as u64)
}

pub fn run_case(suite: Suite, seed: u64, index: u64) -> CaseResult {
    match suite {
        Suite::Lemma6 => lemma6_case(seed, index),
        Suite::Theorem => theorem_case(seed, index),
        Suite::Lemma2Agreement => lemma2_case(seed, index),
        Suite::DecomposeRoundtrip => roundtrip_case(seed, index),
        Suite::Symmetric => symmetric_case(seed, index),
        Suite::Lemma4 => lemma4_case(seed, index),
        Suite::Lemma5 => lemma5_case(seed, index),
        Suite::Profile => profile_case(seed, index),
    }
}

pub fn run_campaign(suite: Suite, count: u64, seed: u64) -> CampaignReport {
    let start = Instant::now();
    let results: Vec<CaseResult> = (0..count)
        .into_par_iter()
        .map(|i| run_case(suite, seed, i))
        .collect();
    let mut checks = 0;
    let mut failures = Vec::new();
    for (index, r) in results.into_iter().enumerate() {
        match r {
            Ok(c) => checks += c,
            Err(message) => failures.push(CaseFailure {
                index: index as u64,
                message,
            }),
        }
    }
    let failed = failures.len() as u64;
    CampaignReport {
        suite,
        count,
        seed,
        generator: GENERATOR_ID,
        passed: count - failed,
        failed,
        checks,
        failures,
        wall_time_s: start.elapsed().as_secs_f64(),
    }
}

/// Exact Lemma 2 verdict and the direct verdict at `z`, for reporting.
pub fn both_verdicts(p: &Body, z: &Point) -> (bool, Option<bool>) {
    let direct = is_convexity_point_direct(p, z);
    (direct, is_convexity_point_char(p, z).ok().map(|c| c.convex))
}
