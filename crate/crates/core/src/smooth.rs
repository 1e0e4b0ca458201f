//! Numeric mode: bodies given by a trigonometric-polynomial support function
//! `h(φ) = a₀ + Σ aₖ cos kφ + bₖ sin kφ`.
//!
//! `p`, `p′`, `p″` have closed forms (only odd harmonics survive in
//! `p(φ) = ½(h(φ) − h(φ + π))`). Finite differences are used purely on the
//! checking side.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::tolerance::TOLERANCES;

/// Samples used to certify `h + h″ > margin`.
pub const VALIDATION_SAMPLES: usize = 4096;
/// Samples used by [`symmetry_residual`].
pub const SYMMETRY_SAMPLES: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Harmonic {
    pub k: u32,
    pub a: f64,
    pub b: f64,
}

impl Harmonic {
    pub fn new(k: u32, a: f64, b: f64) -> Self {
        Self { k, a, b }
    }

    fn at(&self, phi: f64) -> (f64, f64) {
        (self.k as f64 * phi).sin_cos()
    }

    fn is_odd(&self) -> bool {
        self.k % 2 == 1
    }
}

/// A validated smooth strictly convex body.
#[derive(Clone, Debug, PartialEq)]
pub struct SmoothBody {
    harmonics: Vec<Harmonic>,
    /// Smallest sampled value of `h + h″`.
    pub min_curvature: f64,
    pub margin: f64,
}

pub fn make_smooth_body(coeffs: &[Harmonic]) -> Result<SmoothBody> {
    make_smooth_body_with_margin(coeffs, TOLERANCES.curvature_margin)
}

/// Merges repeated orders, then checks `h + h″ > margin` at
/// [`VALIDATION_SAMPLES`] angles.
pub fn make_smooth_body_with_margin(coeffs: &[Harmonic], margin: f64) -> Result<SmoothBody> {
    let mut harmonics: Vec<Harmonic> = Vec::new();
    for c in coeffs {
        if !(c.a.is_finite() && c.b.is_finite()) {
            return Err(GeomError::InvalidArgument(format!(
                "non-finite coefficient for k = {}",
                c.k
            )));
        }
        if c.k == 0 && c.b != 0.0 {
            return Err(GeomError::InvalidArgument(
                "the constant term has no sine part".into(),
            ));
        }
        match harmonics.iter_mut().find(|h| h.k == c.k) {
            Some(h) => {
                h.a += c.a;
                h.b += c.b;
            }
            None => harmonics.push(*c),
        }
    }
    harmonics.sort_by_key(|h| h.k);
    let mut body = SmoothBody {
        harmonics,
        min_curvature: f64::INFINITY,
        margin,
    };
    for i in 0..VALIDATION_SAMPLES {
        let phi = 2.0 * PI * i as f64 / VALIDATION_SAMPLES as f64;
        let value = body.h(phi) + body.h_second(phi);
        if value <= margin {
            return Err(GeomError::NotStrictlyConvex { phi, value, margin });
        }
        body.min_curvature = body.min_curvature.min(value);
    }
    Ok(body)
}

impl SmoothBody {
    pub fn harmonics(&self) -> &[Harmonic] {
        &self.harmonics
    }

    pub fn h(&self, phi: f64) -> f64 {
        self.harmonics
            .iter()
            .map(|c| {
                let (s, co) = c.at(phi);
                c.a * co + c.b * s
            })
            .sum()
    }

    pub fn h_prime(&self, phi: f64) -> f64 {
        self.harmonics
            .iter()
            .map(|c| {
                let (s, co) = c.at(phi);
                c.k as f64 * (c.b * co - c.a * s)
            })
            .sum()
    }

    pub fn h_second(&self, phi: f64) -> f64 {
        self.harmonics
            .iter()
            .map(|c| {
                let (s, co) = c.at(phi);
                -((c.k * c.k) as f64) * (c.a * co + c.b * s)
            })
            .sum()
    }

    fn odd(&self) -> impl Iterator<Item = &Harmonic> {
        self.harmonics.iter().filter(|c| c.is_odd())
    }

    pub fn p(&self, phi: f64) -> f64 {
        self.odd()
            .map(|c| {
                let (s, co) = c.at(phi);
                c.a * co + c.b * s
            })
            .sum()
    }

    pub fn p_prime(&self, phi: f64) -> f64 {
        self.odd()
            .map(|c| {
                let (s, co) = c.at(phi);
                c.k as f64 * (c.b * co - c.a * s)
            })
            .sum()
    }

    pub fn p_second(&self, phi: f64) -> f64 {
        self.odd()
            .map(|c| {
                let (s, co) = c.at(phi);
                -((c.k * c.k) as f64) * (c.a * co + c.b * s)
            })
            .sum()
    }

    /// `p(φ + δ) − p(φ)` through product-to-sum identities, which avoids the
    /// cancellation of subtracting two nearly equal values.
    pub fn p_increment(&self, phi: f64, delta: f64) -> f64 {
        self.odd()
            .map(|c| {
                let k = c.k as f64;
                let (sm, cm) = (k * (phi + 0.5 * delta)).sin_cos();
                2.0 * (0.5 * k * delta).sin() * (c.b * cm - c.a * sm)
            })
            .sum()
    }

    /// Boundary point `x(φ) = h u(φ) + h′ u′(φ)`, the unique point of the
    /// face with outer normal `u(φ)`.
    pub fn boundary_point(&self, phi: f64) -> [f64; 2] {
        let (s, c) = phi.sin_cos();
        let (h, hp) = (self.h(phi), self.h_prime(phi));
        [h * c - hp * s, h * s + hp * c]
    }

    /// The same body rotated counterclockwise by `alpha`.
    pub fn rotated(&self, alpha: f64) -> SmoothBody {
        let harmonics = self
            .harmonics
            .iter()
            .map(|c| {
                let (s, co) = (c.k as f64 * alpha).sin_cos();
                Harmonic::new(c.k, c.a * co - c.b * s, c.a * s + c.b * co)
            })
            .collect();
        SmoothBody {
            harmonics,
            ..self.clone()
        }
    }
}

/// One point of the middle-set curve.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ZCurveSample {
    pub phi: f64,
    pub z: [f64; 2],
    pub p: f64,
    pub p_prime: f64,
}

/// `z(φ) = p(φ) u(φ) + p′(φ) u′(φ)`, the single point of `Z_K(u(φ))`.
pub fn z_curve(body: &SmoothBody, phi: f64) -> ZCurveSample {
    let (s, c) = phi.sin_cos();
    let p = body.p(phi);
    let pp = body.p_prime(phi);
    ZCurveSample {
        phi,
        z: [p * c - pp * s, p * s + pp * c],
        p,
        p_prime: pp,
    }
}

/// Right and left finite-difference residuals against `⟨z(φ), u′(φ)⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Lemma4Residual {
    pub right: f64,
    pub left: f64,
}

impl Lemma4Residual {
    pub fn max(&self) -> f64 {
        self.right.max(self.left)
    }
}

/// One-sided second-order difference quotient of `p` at `φ` with signed step
/// `δ`: uses `p(φ)`, `p(φ + δ)`, `p(φ + 2δ)` only.
fn one_sided_slope(body: &SmoothBody, phi: f64, delta: f64) -> f64 {
    (4.0 * body.p_increment(phi, delta) - body.p_increment(phi, 2.0 * delta)) / (2.0 * delta)
}

pub fn fd_residuals(body: &SmoothBody, phi: f64, step: f64) -> Result<Lemma4Residual> {
    if !(1e-6..=1e-3).contains(&step) {
        return Err(GeomError::InvalidArgument(format!(
            "finite-difference step {step} outside [1e-6, 1e-3]"
        )));
    }
    let z = z_curve(body, phi).z;
    let (s, c) = phi.sin_cos();
    let tangential = -z[0] * s + z[1] * c;
    Ok(Lemma4Residual {
        right: (one_sided_slope(body, phi, step) - tangential).abs(),
        left: (one_sided_slope(body, phi, -step) - tangential).abs(),
    })
}

/// `max(|right − ⟨z, u′⟩|, |left − ⟨z, u′⟩|)`.
pub fn fd_check_lemma4(body: &SmoothBody, phi: f64, step: f64) -> Result<f64> {
    Ok(fd_residuals(body, phi, step)?.max())
}

/// `max |p + p″|` over [`SYMMETRY_SAMPLES`] angles; zero exactly when `p` is a
/// first harmonic, i.e. the body is a translate of a centrally symmetric one.
pub fn symmetry_residual(body: &SmoothBody) -> f64 {
    (0..SYMMETRY_SAMPLES)
        .map(|i| {
            let phi = 2.0 * PI * i as f64 / SYMMETRY_SAMPLES as f64;
            body.odd()
                .filter(|c| c.k != 1)
                .map(|c| {
                    let (s, co) = c.at(phi);
                    (1.0 - (c.k * c.k) as f64) * (c.a * co + c.b * s)
                })
                .sum::<f64>()
                .abs()
        })
        .fold(0.0, f64::max)
}

/// Convex polygon with floating-point vertices, counterclockwise.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FloatPolygon {
    pub vertices: Vec<[f64; 2]>,
}

fn fcross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

impl FloatPolygon {
    /// Monotone-chain hull; points closer than `merge` in both coordinates
    /// are merged.
    pub fn hull(points: &[[f64; 2]], merge: f64) -> FloatPolygon {
        let mut pts = points.to_vec();
        pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
        pts.dedup_by(|a, b| (a[0] - b[0]).abs() <= merge && (a[1] - b[1]).abs() <= merge);
        if pts.len() < 3 {
            return FloatPolygon { vertices: pts };
        }
        let mut chain: Vec<[f64; 2]> = Vec::with_capacity(2 * pts.len());
        for pass in 0..2 {
            let start = chain.len();
            let iter: Box<dyn Iterator<Item = &[f64; 2]>> = if pass == 0 {
                Box::new(pts.iter())
            } else {
                Box::new(pts.iter().rev())
            };
            for &p in iter {
                while chain.len() >= start + 2
                    && fcross(chain[chain.len() - 2], chain[chain.len() - 1], p) <= 0.0
                {
                    chain.pop();
                }
                chain.push(p);
            }
            chain.pop();
        }
        FloatPolygon { vertices: chain }
    }

    pub fn support(&self, u: [f64; 2]) -> f64 {
        self.vertices
            .iter()
            .map(|v| v[0] * u[0] + v[1] * u[1])
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn reflect(&self, z: [f64; 2]) -> FloatPolygon {
        FloatPolygon {
            vertices: self
                .vertices
                .iter()
                .map(|v| [2.0 * z[0] - v[0], 2.0 * z[1] - v[1]])
                .collect(),
        }
    }

    /// Euclidean distance from `q` to the polygon (zero inside).
    pub fn distance(&self, q: [f64; 2]) -> f64 {
        let n = self.vertices.len();
        match n {
            0 => f64::INFINITY,
            1 => (q[0] - self.vertices[0][0]).hypot(q[1] - self.vertices[0][1]),
            _ => {
                let inside = n >= 3
                    && (0..n)
                        .all(|i| fcross(self.vertices[i], self.vertices[(i + 1) % n], q) >= 0.0);
                if inside {
                    return 0.0;
                }
                (0..n)
                    .map(|i| segment_distance(self.vertices[i], self.vertices[(i + 1) % n], q))
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }
}

fn segment_distance(a: [f64; 2], b: [f64; 2], q: [f64; 2]) -> f64 {
    let d = [b[0] - a[0], b[1] - a[1]];
    let len2 = d[0] * d[0] + d[1] * d[1];
    let t = if len2 > 0.0 {
        (((q[0] - a[0]) * d[0] + (q[1] - a[1]) * d[1]) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    (q[0] - a[0] - t * d[0]).hypot(q[1] - a[1] - t * d[1])
}

/// Hull of the middle-set curve sampled at `m` angles over `[0, π)`; the
/// curve satisfies `z(φ + π) = z(φ)`.
pub fn a_body_approx(body: &SmoothBody, m: usize) -> Result<FloatPolygon> {
    if m < 16 {
        return Err(GeomError::InvalidArgument(format!(
            "need at least 16 samples, got {m}"
        )));
    }
    let pts: Vec<[f64; 2]> = (0..m)
        .map(|i| z_curve(body, PI * i as f64 / m as f64).z)
        .collect();
    Ok(FloatPolygon::hull(&pts, TOLERANCES.identity))
}

/// Inscribed polygon through `samples` boundary points.
pub fn boundary_polygon(body: &SmoothBody, samples: usize) -> FloatPolygon {
    let pts: Vec<[f64; 2]> = (0..samples)
        .map(|i| body.boundary_point(2.0 * PI * i as f64 / samples as f64))
        .collect();
    FloatPolygon::hull(&pts, 0.0)
}

/// Largest distance from the boundary of `conv(K ∪ (2z − K))` to the union,
/// with `K` replaced by its inscribed polygon on `samples` boundary points and
/// each hull edge probed at 64 evenly spaced points.
pub fn numeric_union_defect(body: &SmoothBody, z: [f64; 2], samples: usize) -> f64 {
    let k = boundary_polygon(body, samples);
    let l = k.reflect(z);
    let mut all = k.vertices.clone();
    all.extend(l.vertices.iter().copied());
    let h = FloatPolygon::hull(&all, 0.0);
    let n = h.vertices.len();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        let (a, b) = (h.vertices[i], h.vertices[(i + 1) % n]);
        for j in 0..=64 {
            let t = j as f64 / 64.0;
            let q = [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];
            worst = worst.max(k.distance(q).min(l.distance(q)));
        }
    }
    worst
}
