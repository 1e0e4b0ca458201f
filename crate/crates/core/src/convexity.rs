//! Convexity points: `z` is one when `K ∪ (2z − K)` is convex.
//!
//! Two independent tests are provided. The direct test builds the reflected
//! body and checks the union; the characterization works on the middle-set
//! structure and only applies to polygons without parallel edges: `z` is a
//! convexity point iff every middle line through `z` has its middle set
//! through `z` as well.

use num_traits::Zero;
use serde::Serialize;

use crate::decompose::decompose;
use crate::error::{GeomError, Result};
use crate::geom::{
    cross, is_convex_union, rat_to_f64, reflect, support, uncovered_hull_point, Body, BodyKind,
    Direction, Point, Rat,
};
use crate::middle::{exposed_points, MiddleStructure};
use crate::tolerance::TOLERANCES;

pub fn is_convexity_point_direct(body: &Body, z: &Point) -> bool {
    is_convex_union(body, &reflect(body, z))
}

/// A point of `bd conv(B1 ∪ B2)` outside both bodies, if the union is not
/// convex.
pub fn witness_nonconvexity(b1: &Body, b2: &Body) -> Option<Point> {
    uncovered_hull_point(b1, b2)
}

/// Outcome of the middle-set characterization.
///
/// `witnesses` are the directions `u` with `z ∈ M_K(u)` and `z ∈ Z_K(u)`;
/// `violations` those with `z ∈ M_K(u)` but `z ∉ Z_K(u)`. Directions are
/// reported once per antipodal class. When `z` is the middle point of a whole
/// open arc, the arc's interior representative stands for all of it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Characterization {
    pub convex: bool,
    pub witnesses: Vec<Direction>,
    pub violations: Vec<Direction>,
}

impl MiddleStructure {
    pub fn characterize(&self, z: &Point) -> Characterization {
        let mut witnesses = Vec::new();
        let mut violations = Vec::new();
        for em in &self.events {
            let ev = &em.event;
            if ev.is_critical() {
                if em.middle.carrier.contains(z) {
                    if em.middle.contains(z) {
                        witnesses.push(ev.arc.0.clone());
                    } else {
                        violations.push(ev.arc.0.clone());
                    }
                }
                continue;
            }
            // On an open arc Z = {m} and every middle line passes through m,
            // so z ∈ M(n) iff ⟨z − m, n⟩ = 0.
            let m = &em.middle.s;
            if z == m {
                witnesses.push(ev.representative());
                continue;
            }
            let normal = (z - m).rot();
            for cand in [normal.clone(), -&normal] {
                let n = Direction::from_vector(&cand).expect("z ≠ m");
                if ev.arc.0.strictly_between(&n, &ev.arc.1) {
                    violations.push(n);
                }
            }
        }
        Characterization {
            convex: violations.is_empty(),
            witnesses,
            violations,
        }
    }
}

/// Middle-set characterization for a polygon without parallel edges.
pub fn is_convexity_point_char(poly: &Body, z: &Point) -> Result<Characterization> {
    Ok(MiddleStructure::new(poly)?.characterize(z))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Direct,
    Characterization,
    SymmetricCenter,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Characterization => "characterization",
            Method::SymmetricCenter => "symmetric-center",
        }
    }
}

/// A convexity point that has passed the direct test.
///
/// `degenerate` marks the point/segment inputs, whose certificate (the point
/// itself, the segment midpoint) is a convention for total behaviour.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvexityCertificate {
    pub z: Point,
    pub method: Method,
    pub witnesses: Vec<Direction>,
    pub degenerate: bool,
}

fn certify(
    body: &Body,
    z: Point,
    method: Method,
    witnesses: Vec<Direction>,
) -> Result<ConvexityCertificate> {
    if !is_convexity_point_direct(body, &z) {
        return Err(GeomError::Internal(format!(
            "{} certificate {z} failed the direct test",
            method.name()
        )));
    }
    Ok(ConvexityCertificate {
        z,
        method,
        witnesses,
        degenerate: body.dim() < 2,
    })
}

/// Convexity points of `body`.
///
/// The body is split as `C + T` with `T` a sum of centred segments. If the
/// core `C` is lower dimensional the body is centrally symmetric and its
/// centre is returned; otherwise every vertex of `A_C` is a convexity point of
/// `C`, and hence of the body. Every certificate is re-checked with the direct
/// test before it is returned.
pub fn theorem_points(body: &Body) -> Result<Vec<ConvexityCertificate>> {
    match body.kind() {
        BodyKind::Point | BodyKind::Segment => {
            let z = body.vertex_centroid();
            return Ok(vec![certify(body, z, Method::SymmetricCenter, Vec::new())?]);
        }
        BodyKind::Polygon => {}
    }
    let dec = decompose(body)?;
    if dec.core.dim() < 2 {
        let z = dec.core.vertex_centroid();
        return Ok(vec![certify(body, z, Method::SymmetricCenter, Vec::new())?]);
    }
    let ms = MiddleStructure::new(&dec.core)?;
    let a = ms.a_body();
    exposed_points(&a)
        .into_iter()
        .map(|z| {
            let ch = ms.characterize(&z);
            if !ch.convex {
                return Err(GeomError::Internal(format!(
                    "vertex {z} of the middle-set body fails the characterization"
                )));
            }
            certify(body, z, Method::Characterization, ch.witnesses)
        })
        .collect()
}

/// Orthogonal frame at an exposed point of `A_K`: `e2` is an inner normal of
/// a line meeting `A_K` only at `origin`, and `(e1, e2)` is positively
/// oriented. The two directions have equal length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Frame {
    pub origin: Point,
    pub e1: Direction,
    pub e2: Direction,
}

impl Frame {
    /// `⟨x − origin, e2⟩ > 0` for every vertex `x ≠ origin` of `a`.
    pub fn exposes(&self, a: &Body) -> bool {
        a.vertices()
            .iter()
            .filter(|x| *x != &self.origin)
            .all(|x| (x - &self.origin).dot_dir(&self.e2) > Rat::zero())
    }
}

/// Sampled intercept `f(φ) = p(φ)/cos φ` of the middle lines with the line
/// through the frame origin spanned by `e1`.
#[derive(Clone, Debug, Serialize)]
pub struct InterceptProfile {
    pub frame: Frame,
    pub samples: Vec<(f64, f64)>,
    /// First maximal run of samples with `|f| ≤ tol`, as `[φ_start, φ_end]`.
    pub zero_component: Option<(f64, f64)>,
    pub zero_runs: usize,
    pub monotone_violations: usize,
}

fn exposing_frame(a: &Body, z: &Point) -> Result<Frame> {
    let vs = a.vertices();
    let i = vs
        .iter()
        .position(|v| v == z)
        .ok_or_else(|| GeomError::NotExposed(z.clone()))?;
    let inner = match a.kind() {
        BodyKind::Point => Point::from_ints(0, 1),
        BodyKind::Segment => &vs[1 - i] - z,
        BodyKind::Polygon => {
            let prev = &vs[(i + vs.len() - 1) % vs.len()];
            let next = &vs[(i + 1) % vs.len()];
            let n1 = Body::edge_normal(prev, z)?.as_vector();
            let n2 = Body::edge_normal(z, next)?.as_vector();
            -&(&n1 + &n2)
        }
    };
    let e2 = Direction::from_vector(&inner)?;
    let e1 = e2.rot().opposite();
    Ok(Frame {
        origin: z.clone(),
        e1,
        e2,
    })
}

pub fn middle_intercept_profile(
    poly: &Body,
    exposed: &Point,
    n_samples: usize,
) -> Result<InterceptProfile> {
    middle_intercept_profile_with(poly, exposed, n_samples, TOLERANCES.profile)
}

pub fn middle_intercept_profile_with(
    poly: &Body,
    exposed: &Point,
    n_samples: usize,
    tol: f64,
) -> Result<InterceptProfile> {
    if n_samples < 2 {
        return Err(GeomError::InvalidArgument(
            "profile needs at least 2 samples".into(),
        ));
    }
    let ms = MiddleStructure::new(poly)?;
    let a = ms.a_body();
    let frame = exposing_frame(&a, exposed)?;

    let unit = |d: &Direction| {
        let [x, y] = d.to_f64();
        let r = x.hypot(y);
        [x / r, y / r]
    };
    let e1 = unit(&frame.e1);
    let e2 = unit(&frame.e2);
    let shifted: Vec<[f64; 2]> = poly
        .vertices()
        .iter()
        .map(|v| {
            let w = v - exposed;
            [rat_to_f64(&w.x), rat_to_f64(&w.y)]
        })
        .collect();
    let h = |u: [f64; 2]| {
        shifted
            .iter()
            .map(|v| v[0] * u[0] + v[1] * u[1])
            .fold(f64::NEG_INFINITY, f64::max)
    };

    let lim = std::f64::consts::FRAC_PI_2 - TOLERANCES.pole_clamp;
    let samples: Vec<(f64, f64)> = (0..n_samples)
        .map(|i| {
            let phi = -lim + 2.0 * lim * i as f64 / (n_samples - 1) as f64;
            let (s, c) = phi.sin_cos();
            let u = [c * e1[0] + s * e2[0], c * e1[1] + s * e2[1]];
            let p = 0.5 * (h(u) - h([-u[0], -u[1]]));
            (phi, p / c)
        })
        .collect();

    let is_zero: Vec<bool> = samples.iter().map(|(_, f)| f.abs() <= tol).collect();
    let mut zero_component = None;
    let mut zero_runs = 0;
    let mut i = 0;
    while i < samples.len() {
        if is_zero[i] {
            let start = i;
            while i + 1 < samples.len() && is_zero[i + 1] {
                i += 1;
            }
            zero_runs += 1;
            zero_component.get_or_insert((samples[start].0, samples[i].0));
        }
        i += 1;
    }
    let monotone_violations = samples
        .windows(2)
        .zip(is_zero.windows(2))
        .filter(|(w, z)| !(z[0] && z[1]) && w[1].1 < w[0].1 - tol)
        .count();

    Ok(InterceptProfile {
        frame,
        samples,
        zero_component,
        zero_runs,
        monotone_violations,
    })
}

/// Support of the reflected body, `h_{2z−K}(n) = 2⟨z, n⟩ + h_K(−n)`.
pub fn reflected_support(body: &Body, z: &Point, n: &Direction) -> Rat {
    Rat::from_integer(2.into()) * z.dot_dir(n) + support(body, &n.opposite())
}

/// True iff the three points are affinely independent.
pub fn affinely_independent(a: &Point, b: &Point, c: &Point) -> bool {
    !cross(&(b - a), &(c - a)).is_zero()
}
