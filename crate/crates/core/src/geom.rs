//! Exact rational planar primitives.
//!
//! Everything here works over arbitrary-precision rationals with zero
//! tolerance. Directions are rays with rational representatives and are never
//! normalized to unit length; the support function and every quantity derived
//! from it are positively homogeneous, so formulas stated for unit vectors are
//! evaluated on ray representatives directly.
//!
//! The quarter turn `u ↦ u′` is the counterclockwise rotation
//! `(dx, dy) ↦ (−dy, dx)`, so `(u, u′)` is a positively oriented frame.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{GeomError, Result};

/// Exact scalar. Always in lowest terms with a positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn half() -> Rat {
    ratio(1, 2)
}

/// `"n"` for integers, `"p/q"` otherwise.
pub fn format_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"n"` or `"p/q"`; the fraction must already be in lowest terms with
/// a positive denominator.
pub fn parse_rat(s: &str) -> std::result::Result<Rat, String> {
    let s = s.trim();
    match s.split_once('/') {
        None => s
            .parse::<BigInt>()
            .map(Rat::from_integer)
            .map_err(|e| format!("bad integer {s:?}: {e}")),
        Some((p, q)) => {
            let p: BigInt = p
                .parse()
                .map_err(|e| format!("bad numerator in {s:?}: {e}"))?;
            let q: BigInt = q
                .parse()
                .map_err(|e| format!("bad denominator in {s:?}: {e}"))?;
            if !q.is_positive() {
                return Err(format!("denominator must be positive in {s:?}"));
            }
            if !p.gcd(&q).is_one() {
                return Err(format!("fraction {s:?} is not in lowest terms"));
            }
            Ok(Rat::new_raw(p, q))
        }
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

/// A point of the plane, also used as a free vector.
///
/// The derived order is lexicographic (`x` first, then `y`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rat,
    pub y: Rat,
}

impl Point {
    pub fn new(x: Rat, y: Rat) -> Self {
        Self { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Self::new(rat(x), rat(y))
    }

    pub fn origin() -> Self {
        Self::new(Rat::zero(), Rat::zero())
    }

    pub fn is_origin(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn scale(&self, k: &Rat) -> Point {
        Point::new(&self.x * k, &self.y * k)
    }

    pub fn dot(&self, other: &Point) -> Rat {
        &self.x * &other.x + &self.y * &other.y
    }

    /// `⟨self, n⟩` for a direction representative.
    pub fn dot_dir(&self, n: &Direction) -> Rat {
        &self.x * &n.dx + &self.y * &n.dy
    }

    pub fn midpoint(a: &Point, b: &Point) -> Point {
        (a + b).scale(&half())
    }

    /// Point reflection `2z − self`.
    pub fn reflect_in(&self, z: &Point) -> Point {
        let two = rat(2);
        Point::new(&two * &z.x - &self.x, &two * &z.y - &self.y)
    }

    /// Counterclockwise quarter turn.
    pub fn rot(&self) -> Point {
        Point::new(-&self.y, self.x.clone())
    }

    pub fn to_f64(&self) -> [f64; 2] {
        [rat_to_f64(&self.x), rat_to_f64(&self.y)]
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rat(&self.x), format_rat(&self.y))
    }
}

impl<'a> Add<&'a Point> for &'a Point {
    type Output = Point;
    fn add(self, rhs: &'a Point) -> Point {
        Point::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl<'a> Sub<&'a Point> for &'a Point {
    type Output = Point;
    fn sub(self, rhs: &'a Point) -> Point {
        Point::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Neg for &Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-&self.x, -&self.y)
    }
}

/// `cross(a, b) = a.x·b.y − a.y·b.x`.
pub fn cross(a: &Point, b: &Point) -> Rat {
    &a.x * &b.y - &a.y * &b.x
}

/// Sign of the turn `a → b → c`: `Greater` for a left (counterclockwise) turn.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Ordering {
    cross(&(b - a), &(c - a)).cmp(&Rat::zero())
}

/// A ray direction, stored as its primitive integer representative.
///
/// Two directions compare equal iff they are positive multiples of each other.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Direction {
    dx: Rat,
    dy: Rat,
}

/// Scales a nonzero rational vector to a primitive integer vector by a
/// positive factor; returns the vector and the factor.
fn primitive(x: &Rat, y: &Rat) -> (BigInt, BigInt, Rat) {
    let l = x.denom().lcm(y.denom());
    let xi = x.numer() * (&l / x.denom());
    let yi = y.numer() * (&l / y.denom());
    let g = xi.gcd(&yi);
    let factor = Rat::new(l, g.clone());
    (xi / &g, yi / &g, factor)
}

impl Direction {
    pub fn new(dx: Rat, dy: Rat) -> Result<Self> {
        if dx.is_zero() && dy.is_zero() {
            return Err(GeomError::ZeroDirection);
        }
        let (x, y, _) = primitive(&dx, &dy);
        Ok(Self {
            dx: Rat::from_integer(x),
            dy: Rat::from_integer(y),
        })
    }

    pub fn from_ints(dx: i64, dy: i64) -> Result<Self> {
        Self::new(rat(dx), rat(dy))
    }

    pub fn from_vector(v: &Point) -> Result<Self> {
        Self::new(v.x.clone(), v.y.clone())
    }

    pub fn dx(&self) -> &Rat {
        &self.dx
    }

    pub fn dy(&self) -> &Rat {
        &self.dy
    }

    pub fn as_vector(&self) -> Point {
        Point::new(self.dx.clone(), self.dy.clone())
    }

    /// `u′`, the counterclockwise quarter turn.
    pub fn rot(&self) -> Direction {
        Direction {
            dx: -&self.dy,
            dy: self.dx.clone(),
        }
    }

    pub fn opposite(&self) -> Direction {
        Direction {
            dx: -&self.dx,
            dy: -&self.dy,
        }
    }

    /// True for directions with angle in `[0, π)`.
    pub fn in_upper_half(&self) -> bool {
        self.dy.is_positive() || (self.dy.is_zero() && self.dx.is_positive())
    }

    /// Representative of `{self, −self}` with angle in `[0, π)`.
    pub fn upper_half(&self) -> Direction {
        if self.in_upper_half() {
            self.clone()
        } else {
            self.opposite()
        }
    }

    /// True iff `n` lies strictly inside the counterclockwise arc from `self`
    /// to `to`, which must span less than a half turn.
    pub fn strictly_between(&self, n: &Direction, to: &Direction) -> bool {
        let a = self.as_vector();
        let b = to.as_vector();
        let v = n.as_vector();
        cross(&a, &v).is_positive() && cross(&v, &b).is_positive()
    }

    pub fn to_f64(&self) -> [f64; 2] {
        [rat_to_f64(&self.dx), rat_to_f64(&self.dy)]
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rat(&self.dx), format_rat(&self.dy))
    }
}

/// Counterclockwise angular order on directions, starting at angle 0.
pub fn angle_cmp(a: &Direction, b: &Direction) -> Ordering {
    let ha = !a.in_upper_half();
    let hb = !b.in_upper_half();
    ha.cmp(&hb)
        .then_with(|| Rat::zero().cmp(&cross(&a.as_vector(), &b.as_vector())))
}

/// The line `{x : ⟨x, normal⟩ = offset}`.
///
/// Canonical form: primitive integer normal whose leading nonzero coordinate
/// is positive, so a line has exactly one representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Line {
    normal: Direction,
    offset: Rat,
}

impl Line {
    pub fn new(normal: &Point, offset: Rat) -> Result<Self> {
        if normal.is_origin() {
            return Err(GeomError::ZeroDirection);
        }
        let (mut x, mut y, factor) = primitive(&normal.x, &normal.y);
        let mut offset = offset * factor;
        if x.is_negative() || (x.is_zero() && y.is_negative()) {
            x = -x;
            y = -y;
            offset = -offset;
        }
        Ok(Self {
            normal: Direction {
                dx: Rat::from_integer(x),
                dy: Rat::from_integer(y),
            },
            offset,
        })
    }

    pub fn normal(&self) -> &Direction {
        &self.normal
    }

    pub fn offset(&self) -> &Rat {
        &self.offset
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.dot_dir(&self.normal) == self.offset
    }
}

/// Combinatorial type of a body.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BodyKind {
    Point,
    Segment,
    Polygon,
}

impl BodyKind {
    pub fn name(self) -> &'static str {
        match self {
            BodyKind::Point => "point",
            BodyKind::Segment => "segment",
            BodyKind::Polygon => "polygon",
        }
    }

    pub fn dim(self) -> usize {
        match self {
            BodyKind::Point => 0,
            BodyKind::Segment => 1,
            BodyKind::Polygon => 2,
        }
    }
}

/// A planar convex body with exact vertices in canonical form.
///
/// One vertex is a point, two distinct vertices a segment, three or more a
/// strictly convex polygon. Vertices run counterclockwise starting at the
/// lexicographically smallest one (for a segment: smaller endpoint first).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Body {
    vertices: Vec<Point>,
}

impl Body {
    pub fn point(p: Point) -> Body {
        Body { vertices: vec![p] }
    }

    pub fn segment(a: Point, b: Point) -> Result<Body> {
        if a == b {
            return Err(GeomError::NotConvex("segment endpoints coincide".into()));
        }
        Ok(if a < b {
            Body {
                vertices: vec![a, b],
            }
        } else {
            Body {
                vertices: vec![b, a],
            }
        })
    }

    /// Strict constructor: the vertices must already form a strictly convex
    /// polygon in either orientation, any rotation, with no collinear triples.
    pub fn polygon(vertices: Vec<Point>) -> Result<Body> {
        if vertices.len() < 3 {
            return Err(GeomError::NotConvex(format!(
                "polygon needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        let h = hull(&vertices)?;
        if h.vertices.len() != vertices.len() {
            return Err(GeomError::NotConvex(
                "repeated, collinear or interior vertices".into(),
            ));
        }
        let ring = Body::from_ring(vertices.clone());
        let reversed = Body::from_ring(vertices.into_iter().rev().collect());
        if ring == h || reversed == h {
            Ok(h)
        } else {
            Err(GeomError::NotConvex(
                "vertex order is not a convex ring".into(),
            ))
        }
    }

    /// Builds a body from `vertices` (1, 2, or ≥ 3 for a polygon); collinear
    /// or interior points are either rejected or removed by `normalize`.
    pub fn from_vertices(vertices: Vec<Point>, normalize: bool) -> Result<Body> {
        if normalize {
            return hull(&vertices);
        }
        match vertices.len() {
            0 => Err(GeomError::Empty),
            1 => Ok(Body::point(vertices.into_iter().next().unwrap())),
            2 => {
                let mut it = vertices.into_iter();
                Body::segment(it.next().unwrap(), it.next().unwrap())
            }
            _ => Body::polygon(vertices),
        }
    }

    /// Rotates a counterclockwise ring so the smallest vertex comes first.
    fn from_ring(mut vertices: Vec<Point>) -> Body {
        let start = vertices
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.cmp(b.1))
            .map(|(i, _)| i)
            .unwrap_or(0);
        vertices.rotate_left(start);
        Body { vertices }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn kind(&self) -> BodyKind {
        match self.vertices.len() {
            1 => BodyKind::Point,
            2 => BodyKind::Segment,
            _ => BodyKind::Polygon,
        }
    }

    pub fn dim(&self) -> usize {
        self.kind().dim()
    }

    pub fn is_polygon(&self) -> bool {
        self.kind() == BodyKind::Polygon
    }

    /// Edges `(v_i, v_{i+1})` in counterclockwise order; a segment yields its
    /// two sides, a point none.
    pub fn edges(&self) -> impl Iterator<Item = (&Point, &Point)> + '_ {
        let n = self.vertices.len();
        let count = if n < 2 { 0 } else { n };
        (0..count).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    /// Outward normal of the edge `a → b` of a counterclockwise ring.
    pub fn edge_normal(a: &Point, b: &Point) -> Result<Direction> {
        let e = b - a;
        Direction::new(e.y.clone(), -e.x)
    }

    pub fn translate(&self, t: &Point) -> Body {
        Body {
            vertices: self.vertices.iter().map(|v| v + t).collect(),
        }
    }

    /// Dilation by a positive factor.
    pub fn scale(&self, k: &Rat) -> Result<Body> {
        if !k.is_positive() {
            return Err(GeomError::InvalidArgument(
                "scale factor must be positive".into(),
            ));
        }
        Ok(Body {
            vertices: self.vertices.iter().map(|v| v.scale(k)).collect(),
        })
    }

    /// Average of the vertices; the center whenever the body is centrally
    /// symmetric.
    pub fn vertex_centroid(&self) -> Point {
        let n = Rat::from_integer(BigInt::from(self.vertices.len()));
        let mut sum = Point::origin();
        for v in &self.vertices {
            sum = &sum + v;
        }
        sum.scale(&n.recip())
    }

    pub fn to_f64(&self) -> Vec<[f64; 2]> {
        self.vertices.iter().map(Point::to_f64).collect()
    }
}

/// Convex hull in canonical form (monotone chain, collinear points dropped).
pub fn hull(points: &[Point]) -> Result<Body> {
    if points.is_empty() {
        return Err(GeomError::Empty);
    }
    let mut pts: Vec<&Point> = points.iter().collect();
    pts.sort();
    pts.dedup();
    if pts.len() == 1 {
        return Ok(Body::point(pts[0].clone()));
    }
    let mut lower: Vec<&Point> = Vec::with_capacity(pts.len());
    for p in &pts {
        while lower.len() >= 2
            && orient(lower[lower.len() - 2], lower[lower.len() - 1], p) != Ordering::Greater
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<&Point> = Vec::with_capacity(pts.len());
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && orient(upper[upper.len() - 2], upper[upper.len() - 1], p) != Ordering::Greater
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    Ok(Body {
        vertices: lower.into_iter().cloned().collect(),
    })
}

/// Support function `h_B(n) = max ⟨v, n⟩`, positively homogeneous in `n`.
pub fn support(body: &Body, n: &Direction) -> Rat {
    body.vertices
        .iter()
        .map(|v| v.dot_dir(n))
        .max()
        .expect("bodies are nonempty")
}

/// `F(B, n)`: a vertex, or a segment `[a, b]` with `b − a` a positive multiple
/// of `n′`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Face {
    Point(Point),
    Segment { a: Point, b: Point },
}

impl Face {
    /// `(a, b)`; both equal the vertex for a one-point face.
    pub fn endpoints(&self) -> (&Point, &Point) {
        match self {
            Face::Point(p) => (p, p),
            Face::Segment { a, b } => (a, b),
        }
    }

    pub fn is_segment(&self) -> bool {
        matches!(self, Face::Segment { .. })
    }

    pub fn contains(&self, p: &Point) -> bool {
        match self {
            Face::Point(q) => p == q,
            Face::Segment { a, b } => on_segment(a, b, p),
        }
    }
}

pub fn face(body: &Body, n: &Direction) -> Face {
    let h = support(body, n);
    let mut maximizers = body.vertices.iter().filter(|v| v.dot_dir(n) == h);
    let first = maximizers.next().expect("support is attained");
    let Some(second) = maximizers.next() else {
        return Face::Point(first.clone());
    };
    // A line meets a strictly convex ring in at most two vertices.
    let along = n.rot();
    if second.dot_dir(&along) > first.dot_dir(&along) {
        Face::Segment {
            a: first.clone(),
            b: second.clone(),
        }
    } else {
        Face::Segment {
            a: second.clone(),
            b: first.clone(),
        }
    }
}

/// Closed-segment membership.
pub fn on_segment(a: &Point, b: &Point, p: &Point) -> bool {
    let ab = b - a;
    let ap = p - a;
    if !cross(&ab, &ap).is_zero() {
        return false;
    }
    let t = ab.dot(&ap);
    !t.is_negative() && t <= ab.dot(&ab)
}

/// Angular class used to merge edge sequences that start at the
/// lexicographically smallest vertex: edge angles then run through
/// `(−π/2, 3π/2]`.
fn edge_class(e: &Point) -> u8 {
    if e.x.is_positive() || (e.x.is_zero() && e.y.is_positive()) {
        0
    } else {
        1
    }
}

fn edge_vectors(body: &Body) -> Vec<Point> {
    body.edges().map(|(a, b)| b - a).collect()
}

/// Exact Minkowski sum, merging the two edge sequences by angle.
pub fn minkowski_sum(b1: &Body, b2: &Body) -> Body {
    let e1 = edge_vectors(b1);
    let e2 = edge_vectors(b2);
    let mut current = &b1.vertices[0] + &b2.vertices[0];
    let mut ring = Vec::with_capacity(e1.len() + e2.len() + 1);
    let (mut i, mut j) = (0, 0);
    while i < e1.len() || j < e2.len() {
        let take_first = if i == e1.len() {
            false
        } else if j == e2.len() {
            true
        } else {
            let (c1, c2) = (edge_class(&e1[i]), edge_class(&e2[j]));
            c1 < c2 || (c1 == c2 && !cross(&e1[i], &e2[j]).is_negative())
        };
        ring.push(current.clone());
        if take_first {
            current = &current + &e1[i];
            i += 1;
        } else {
            current = &current + &e2[j];
            j += 1;
        }
    }
    if ring.is_empty() {
        ring.push(current);
    }
    hull(&ring).expect("nonempty ring")
}

/// The point reflection `2z − B`.
pub fn reflect(body: &Body, z: &Point) -> Body {
    let vs = body.vertices.iter().map(|v| v.reflect_in(z)).collect();
    // A point reflection is a half turn and keeps the ring counterclockwise.
    Body::from_ring(vs)
}

/// Closed-set membership.
pub fn contains(body: &Body, p: &Point) -> bool {
    match body.kind() {
        BodyKind::Point => &body.vertices[0] == p,
        BodyKind::Segment => on_segment(&body.vertices[0], &body.vertices[1], p),
        BodyKind::Polygon => body.edges().all(|(a, b)| orient(a, b, p) != Ordering::Less),
    }
}

/// Dimension of the affine hull of a nonempty point list.
pub fn affine_dim(points: &[Point]) -> Result<usize> {
    Ok(hull(points)?.dim())
}

/// Parameter interval `[lo, hi]` on the line through `origin` with direction
/// `d`, using `t(x) = ⟨x − origin, d⟩`.
fn project_interval(points: &[&Point], origin: &Point, d: &Point) -> (Rat, Rat) {
    let ts: Vec<Rat> = points.iter().map(|p| (*p - origin).dot(d)).collect();
    let lo = ts.iter().min().cloned().expect("nonempty");
    let hi = ts.iter().max().cloned().expect("nonempty");
    (lo, hi)
}

/// First point of `[0, len]` not covered by the closed intervals, as the
/// midpoint of the first uncovered gap.
fn first_gap(mut intervals: Vec<(Rat, Rat)>, len: &Rat) -> Option<Rat> {
    intervals.sort();
    let mut reached = Rat::zero();
    for (lo, hi) in intervals {
        if lo > reached {
            return Some((reached + lo) * half());
        }
        if hi > reached {
            reached = hi;
        }
    }
    if &reached < len {
        Some((reached + len) * half())
    } else {
        None
    }
}

/// A point of `bd conv(B1 ∪ B2)` lying in neither body, if one exists.
///
/// Each hull edge lies on a common supporting line, so a body meets it exactly
/// in its face (or not at all); the edge is covered iff the two face intervals
/// cover its parameter range.
pub fn uncovered_hull_point(b1: &Body, b2: &Body) -> Option<Point> {
    let mut all: Vec<Point> = b1.vertices.clone();
    all.extend(b2.vertices.iter().cloned());
    let h = hull(&all).expect("nonempty");
    match h.kind() {
        BodyKind::Point => None,
        BodyKind::Segment => {
            let (p, q) = (&h.vertices[0], &h.vertices[1]);
            let d = q - p;
            let len = d.dot(&d);
            let intervals = [b1, b2]
                .iter()
                .map(|b| project_interval(&b.vertices.iter().collect::<Vec<_>>(), p, &d))
                .collect();
            first_gap(intervals, &len).map(|t| p + &d.scale(&(t / len)))
        }
        BodyKind::Polygon => {
            for (p, q) in h.edges() {
                let n = Body::edge_normal(p, q).expect("hull edges are nondegenerate");
                let level = p.dot_dir(&n);
                let d = q - p;
                let len = d.dot(&d);
                let mut intervals = Vec::with_capacity(2);
                for b in [b1, b2] {
                    if support(b, &n) == level {
                        let f = face(b, &n);
                        let (a, e) = f.endpoints();
                        intervals.push(project_interval(&[a, e], p, &d));
                    }
                }
                if let Some(t) = first_gap(intervals, &len) {
                    return Some(p + &d.scale(&(t / len)));
                }
            }
            None
        }
    }
}

/// `B1 ∪ B2` is convex iff the boundary of its hull is covered by the union.
pub fn is_convex_union(b1: &Body, b2: &Body) -> bool {
    uncovered_hull_point(b1, b2).is_none()
}
