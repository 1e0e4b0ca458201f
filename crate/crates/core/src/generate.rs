//! Seeded random test bodies.
//!
//! Every stream is `ChaCha8Rng::seed_from_u64(seed)` with the ChaCha stream
//! number set to the input index, so input `i` of a corpus does not depend on
//! how many draws earlier inputs consumed.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{GeomError, Result};
use crate::geom::{hull, minkowski_sum, Body, Point};
use crate::middle::has_parallel_edges;
use crate::smooth::{make_smooth_body_with_margin, Harmonic, SmoothBody};

/// Recorded in reports so corpora can be regenerated elsewhere.
pub const GENERATOR_ID: &str = "chacha8/seed_from_u64/stream=index; lattice-hull [-1000,1000]^2 v1";

pub const COORD_RANGE: i64 = 1000;
pub const SUMMAND_RANGE: i64 = 200;
const MAX_ATTEMPTS: usize = 10_000;

pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GenOptions {
    /// Number of lattice points whose hull is taken.
    pub n: usize,
    pub no_parallel: bool,
    pub symmetric: bool,
    /// Number of random centred segments Minkowski-added at the end.
    pub summands: usize,
}

impl GenOptions {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generated {
    pub body: Body,
    /// Polygon before summands were added.
    pub base: Body,
    pub summands: Vec<Body>,
    /// Construction centre for `symmetric`.
    pub center: Option<Point>,
}

fn lattice_point(rng: &mut ChaCha8Rng, r: i64) -> Point {
    Point::from_ints(rng.gen_range(-r..=r), rng.gen_range(-r..=r))
}

fn random_polygon(rng: &mut ChaCha8Rng, n: usize, no_parallel: bool) -> Result<Body> {
    for _ in 0..MAX_ATTEMPTS {
        let pts: Vec<Point> = (0..n).map(|_| lattice_point(rng, COORD_RANGE)).collect();
        let body = hull(&pts)?;
        if !body.is_polygon() {
            continue;
        }
        if no_parallel && has_parallel_edges(&body)?.is_some() {
            continue;
        }
        return Ok(body);
    }
    Err(GeomError::InvalidArgument(format!(
        "no admissible polygon after {MAX_ATTEMPTS} attempts"
    )))
}

pub fn random_centred_segment(rng: &mut ChaCha8Rng) -> Body {
    loop {
        let v = lattice_point(rng, SUMMAND_RANGE);
        if !v.is_origin() {
            return Body::segment(-&v, v).expect("v ≠ 0");
        }
    }
}

pub fn generate(opts: &GenOptions, rng: &mut ChaCha8Rng) -> Result<Generated> {
    if opts.n < 3 {
        return Err(GeomError::InvalidArgument(format!(
            "need at least 3 points, got {}",
            opts.n
        )));
    }
    if opts.symmetric && opts.no_parallel {
        return Err(GeomError::InvalidArgument(
            "a centrally symmetric polygon always has parallel edges".into(),
        ));
    }
    let (base, center) = if opts.symmetric {
        let p = random_polygon(rng, opts.n, false)?;
        let mut pts: Vec<Point> = p.vertices().to_vec();
        pts.extend(p.vertices().iter().map(|v| -v));
        let c = lattice_point(rng, COORD_RANGE);
        (hull(&pts)?.translate(&c), Some(c))
    } else {
        (random_polygon(rng, opts.n, opts.no_parallel)?, None)
    };
    let summands: Vec<Body> = (0..opts.summands)
        .map(|_| random_centred_segment(rng))
        .collect();
    let body = summands
        .iter()
        .fold(base.clone(), |acc, s| minkowski_sum(&acc, s));
    Ok(Generated {
        body,
        base,
        summands,
        center,
    })
}

/// Generates input `index` of the corpus for `seed`.
pub fn generate_indexed(opts: &GenOptions, seed: u64, index: u64) -> Result<Generated> {
    generate(opts, &mut rng_for(seed, index))
}

/// Random harmonic body with orders up to `k_max`, coefficients in
/// `[−amp, amp]`, and a constant term large enough that
/// `h + h″ ≥ 0.2` holds analytically.
pub fn random_smooth_body(rng: &mut ChaCha8Rng, k_max: u32, amp: f64) -> SmoothBody {
    let mut hs = Vec::new();
    let mut a0 = 0.2;
    for k in 1..=k_max {
        let a = rng.gen_range(-amp..=amp);
        let b = rng.gen_range(-amp..=amp);
        a0 += ((k * k) as f64 - 1.0) * (a.abs() + b.abs());
        hs.push(Harmonic::new(k, a, b));
    }
    hs.insert(0, Harmonic::new(0, a0, 0.0));
    make_smooth_body_with_margin(&hs, 0.1).expect("constant term dominates")
}
