//! Middle lines, middle sets and the middle-set body `A_K`.
//!
//! For a polygon the direction circle splits into finitely many pieces on
//! which the antipodal face pair `(F(K,n), F(K,−n))` is constant: the
//! critical directions (edge normals up to sign) and the open arcs between
//! them. Middle sets are constant on each open arc, so `A_K` is the hull of
//! finitely many middle-set endpoints.

use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::geom::{
    angle_cmp, face, half, hull, support, Body, BodyKind, Direction, Face, Line, Point, Rat,
};

/// `½(h(n) − h(−n))`, positively homogeneous in `n`.
pub fn p_value(body: &Body, n: &Direction) -> Rat {
    (support(body, n) - support(body, &n.opposite())) * half()
}

/// `M_K(n) = {x : ⟨x, n⟩ = p(n)}`, in canonical line form.
pub fn middle_line(body: &Body, n: &Direction) -> Line {
    Line::new(&n.as_vector(), p_value(body, n)).expect("directions are nonzero")
}

/// `Z_K(n) = [s, t]` together with its carrier `M_K(n)`.
///
/// `s` and `t` follow the endpoint labelling of the face pair: when `F(K,n)`
/// is the segment, `t − s` is a nonnegative multiple of `n′`; when `F(K,−n)`
/// is the segment, a nonpositive one. Either way `⟨t, n′⟩` is the right and
/// `⟨s, n′⟩` the left derivative of `p` in the rotation direction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MiddleSegment {
    pub carrier: Line,
    pub s: Point,
    pub t: Point,
}

impl MiddleSegment {
    pub fn is_point(&self) -> bool {
        self.s == self.t
    }

    pub fn contains(&self, p: &Point) -> bool {
        crate::geom::on_segment(&self.s, &self.t, p)
    }
}

/// Endpoints `(s, t)` of `½(F(n) + F(−n))` when at most one face is a segment.
fn middle_endpoints(pos: &Face, neg: &Face) -> Option<(Point, Point)> {
    match (pos, neg) {
        (Face::Segment { .. }, Face::Segment { .. }) => None,
        (Face::Segment { a, b }, Face::Point(x)) => {
            Some((Point::midpoint(a, x), Point::midpoint(b, x)))
        }
        // F(K,−n) = [c, d] is ordered along (−n)′ = −n′.
        (Face::Point(x), Face::Segment { a: c, b: d }) => {
            Some((Point::midpoint(c, x), Point::midpoint(d, x)))
        }
        (Face::Point(x), Face::Point(y)) => {
            let m = Point::midpoint(x, y);
            Some((m.clone(), m))
        }
    }
}

pub fn middle_set(body: &Body, n: &Direction) -> Result<MiddleSegment> {
    if body.dim() < 2 {
        return Err(GeomError::Dimension {
            required: 2,
            found: body.dim(),
        });
    }
    let pos = face(body, n);
    let neg = face(body, &n.opposite());
    let (s, t) = middle_endpoints(&pos, &neg).ok_or_else(|| GeomError::ParallelEdges(n.clone()))?;
    Ok(MiddleSegment {
        carrier: middle_line(body, n),
        s,
        t,
    })
}

/// One piece of the direction stratification of a polygon.
///
/// `arc` is a closed counterclockwise arc; a critical direction is the
/// degenerate arc `[c, c]`. On the open interior of a proper arc (or at the
/// critical direction) the face pair is `(face_pos, face_neg)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AntipodalEvent {
    pub arc: (Direction, Direction),
    pub face_pos: Face,
    pub face_neg: Face,
}

impl AntipodalEvent {
    pub fn is_critical(&self) -> bool {
        self.arc.0 == self.arc.1
    }

    /// A direction in the relative interior of the arc (the direction itself
    /// for a critical event).
    pub fn representative(&self) -> Direction {
        if self.is_critical() {
            self.arc.0.clone()
        } else {
            Direction::from_vector(&(&self.arc.0.as_vector() + &self.arc.1.as_vector()))
                .expect("arcs span less than a half turn")
        }
    }

    /// True iff `n` belongs to the piece: equal to the critical direction, or
    /// strictly inside the open arc.
    pub fn covers(&self, n: &Direction) -> bool {
        if self.is_critical() {
            &self.arc.0 == n
        } else {
            self.arc.0.strictly_between(n, &self.arc.1)
        }
    }
}

/// Critical directions of a polygon: outward edge normals folded into the
/// half circle `[0, π)`, sorted counterclockwise.
pub fn critical_directions(poly: &Body) -> Vec<Direction> {
    let mut dirs: Vec<Direction> = poly
        .edges()
        .map(|(a, b)| {
            Body::edge_normal(a, b)
                .expect("edges are nondegenerate")
                .upper_half()
        })
        .collect();
    dirs.sort_by(angle_cmp);
    dirs.dedup();
    dirs
}

/// Rotating-calipers stratification of the half circle `[c₀, −c₀]`, starting
/// at the first critical direction `c₀`. Critical directions and open arcs
/// alternate; the other half circle is covered by the same events with the
/// roles of `face_pos` and `face_neg` swapped.
pub fn antipodal_events(poly: &Body) -> Result<Vec<AntipodalEvent>> {
    if !poly.is_polygon() {
        return Err(GeomError::NotPolygon);
    }
    let crit = critical_directions(poly);
    let mut events = Vec::with_capacity(2 * crit.len());
    for (i, c) in crit.iter().enumerate() {
        events.push(AntipodalEvent {
            arc: (c.clone(), c.clone()),
            face_pos: face(poly, c),
            face_neg: face(poly, &c.opposite()),
        });
        let next = crit
            .get(i + 1)
            .cloned()
            .unwrap_or_else(|| crit[0].opposite());
        let mut arc = AntipodalEvent {
            arc: (c.clone(), next),
            face_pos: Face::Point(Point::origin()),
            face_neg: Face::Point(Point::origin()),
        };
        let r = arc.representative();
        arc.face_pos = face(poly, &r);
        arc.face_neg = face(poly, &r.opposite());
        events.push(arc);
    }
    Ok(events)
}

/// An antipodal event with its (constant) middle set.
#[derive(Clone, Debug)]
pub struct EventMiddle {
    pub event: AntipodalEvent,
    pub middle: MiddleSegment,
}

/// Precomputed middle-set structure of a polygon without parallel edges.
#[derive(Clone, Debug)]
pub struct MiddleStructure {
    pub body: Body,
    pub events: Vec<EventMiddle>,
}

impl MiddleStructure {
    pub fn new(poly: &Body) -> Result<Self> {
        if !poly.is_polygon() {
            return Err(GeomError::Dimension {
                required: 2,
                found: poly.dim(),
            });
        }
        if let Some(pair) = has_parallel_edges(poly)? {
            return Err(GeomError::ParallelEdges(pair.normal));
        }
        let events = antipodal_events(poly)?
            .into_iter()
            .map(|event| {
                let r = event.representative();
                let (s, t) = middle_endpoints(&event.face_pos, &event.face_neg)
                    .expect("no parallel edge pair");
                EventMiddle {
                    middle: MiddleSegment {
                        carrier: middle_line(poly, &r),
                        s,
                        t,
                    },
                    event,
                }
            })
            .collect();
        Ok(Self {
            body: poly.clone(),
            events,
        })
    }

    pub fn a_body(&self) -> Body {
        let pts: Vec<Point> = self
            .events
            .iter()
            .flat_map(|e| [e.middle.s.clone(), e.middle.t.clone()])
            .collect();
        hull(&pts).expect("polygons have events")
    }
}

/// `A_K = conv ⋃ Z_K(u)` for a polygon without parallel edges.
pub fn a_body(poly: &Body) -> Result<Body> {
    Ok(MiddleStructure::new(poly)?.a_body())
}

/// Exposed points of a polytope are its vertices.
pub fn exposed_points(body: &Body) -> Vec<Point> {
    body.vertices().to_vec()
}

/// Two antiparallel edges of a polygon.
///
/// `direction` is the common edge direction folded into `[0, π)`; `normal`
/// is its counterclockwise quarter turn, and `edge`/`opposite` are the faces
/// `F(P, normal)` and `F(P, −normal)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParallelPair {
    pub direction: Direction,
    pub normal: Direction,
    pub edge: (Point, Point),
    pub opposite: (Point, Point),
}

/// All parallel edge pairs, ordered counterclockwise by edge direction.
pub fn parallel_pairs(poly: &Body) -> Result<Vec<ParallelPair>> {
    if !poly.is_polygon() {
        return Err(GeomError::NotPolygon);
    }
    let mut dirs: Vec<Direction> = poly
        .edges()
        .map(|(a, b)| {
            Direction::from_vector(&(b - a))
                .expect("edges are nondegenerate")
                .upper_half()
        })
        .collect();
    dirs.sort_by(angle_cmp);
    let mut pairs = Vec::new();
    for w in dirs.windows(2) {
        if w[0] == w[1] {
            let normal = w[0].rot();
            let (Face::Segment { a, b }, Face::Segment { a: c, b: d }) =
                (face(poly, &normal), face(poly, &normal.opposite()))
            else {
                return Err(GeomError::Internal(
                    "antiparallel edges without segment faces".into(),
                ));
            };
            pairs.push(ParallelPair {
                direction: w[0].clone(),
                normal,
                edge: (a, b),
                opposite: (c, d),
            });
        }
    }
    Ok(pairs)
}

/// The first parallel edge pair in counterclockwise edge-direction order.
pub fn has_parallel_edges(poly: &Body) -> Result<Option<ParallelPair>> {
    Ok(parallel_pairs(poly)?.into_iter().next())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryResult {
    pub symmetric: bool,
    pub center: Option<Point>,
}

pub fn is_centrally_symmetric(body: &Body) -> SymmetryResult {
    let vs = body.vertices();
    let symmetric = match body.kind() {
        BodyKind::Point | BodyKind::Segment => true,
        BodyKind::Polygon => {
            let n = vs.len();
            n % 2 == 0 && {
                let k = n / 2;
                let sum = &vs[0] + &vs[k];
                (1..k).all(|i| &vs[i] + &vs[i + k] == sum)
            }
        }
    };
    SymmetryResult {
        symmetric,
        center: symmetric.then(|| body.vertex_centroid()),
    }
}
