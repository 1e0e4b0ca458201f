//! Parallel-edge summand extraction.
//!
//! A polygon with a pair of antiparallel edges has the centred copy of the
//! shorter edge as a Minkowski summand. Repeating the extraction ends with
//! `K = C + S₁ + … + S_m` where the core `C` has no parallel edge pair or has
//! collapsed to a point. A segment counts as a degenerate pair of antiparallel
//! sides, so fully symmetric inputs reduce to their centre.

use num_traits::Signed;
use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::geom::{half, hull, minkowski_sum, support, Body, BodyKind, Direction, Point};
use crate::middle::parallel_pairs;

/// One extraction: the summand `[−vector/2, vector/2]` along `direction`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtractionStep {
    pub direction: Direction,
    pub vector: Point,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub core: Body,
    pub summands: Vec<Body>,
    pub trace: Vec<ExtractionStep>,
}

/// Which parallel pair to extract first: counterclockwise edge-direction
/// order starting at angle 0, or the reverse.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ExtractionOrder {
    #[default]
    Forward,
    Reverse,
}

fn centred_segment(w: &Point) -> Body {
    let h = w.scale(&half());
    Body::segment(-&h, h).expect("nonzero summand")
}

/// Orients `w` so its direction lies in the half circle `[0, π)`.
fn upper(w: &Point) -> Point {
    match Direction::from_vector(w) {
        Ok(d) if !d.in_upper_half() => -w,
        _ => w.clone(),
    }
}

/// Removes the vector `w` (parallel to the edge) from an edge vector.
fn shorten(e: &Point, w: &Point) -> Point {
    if e.dot(w).is_positive() {
        e - w
    } else {
        e + w
    }
}

/// Extracts one centred segment summand, returning `(S, C, step)` with
/// `C + S = body`, or `None` when no parallel pair is left.
pub fn extract_with(
    body: &Body,
    order: ExtractionOrder,
) -> Result<Option<(Body, Body, ExtractionStep)>> {
    let (summand_vec, core) = match body.kind() {
        BodyKind::Point => return Ok(None),
        BodyKind::Segment => {
            let [a, b] = body.vertices() else {
                unreachable!()
            };
            (upper(&(b - a)), Body::point(Point::midpoint(a, b)))
        }
        BodyKind::Polygon => {
            let pairs = parallel_pairs(body)?;
            let pair = match order {
                ExtractionOrder::Forward => pairs.into_iter().next(),
                ExtractionOrder::Reverse => pairs.into_iter().last(),
            };
            let Some(pair) = pair else { return Ok(None) };
            let e1 = &pair.edge.1 - &pair.edge.0;
            let e2 = &pair.opposite.1 - &pair.opposite.0;
            // antiparallel, so comparing squared lengths picks the shorter
            let w = upper(if e1.dot(&e1) <= e2.dot(&e2) { &e1 } else { &e2 });
            let s = centred_segment(&w);

            let vs = body.vertices();
            let n = vs.len();
            let mut ring = Vec::with_capacity(n);
            let mut cur = &vs[0] - &s.vertices()[0];
            for i in 0..n {
                let (a, b) = (&vs[i], &vs[(i + 1) % n]);
                let mut e = b - a;
                if *a == pair.edge.0 || *a == pair.opposite.0 {
                    e = shorten(&e, &w);
                }
                if !e.is_origin() {
                    ring.push(cur.clone());
                    cur = &cur + &e;
                }
            }
            if ring.is_empty() {
                ring.push(cur);
            }
            (w, hull(&ring)?)
        }
    };
    let s = centred_segment(&summand_vec);
    check_summand(body, &core, &s)?;
    let step = ExtractionStep {
        direction: Direction::from_vector(&summand_vec)?,
        vector: summand_vec,
    };
    Ok(Some((s, core, step)))
}

/// Both routes must agree: support subtraction at every edge normal and the
/// Minkowski recomposition.
fn check_summand(body: &Body, core: &Body, s: &Body) -> Result<()> {
    let normals = body
        .edges()
        .chain(core.edges())
        .chain(s.edges())
        .filter_map(|(a, b)| Body::edge_normal(a, b).ok());
    for n in normals {
        if support(core, &n) != support(body, &n) - support(s, &n) {
            return Err(GeomError::Internal(format!(
                "summand support mismatch at normal {n}"
            )));
        }
    }
    if &minkowski_sum(core, s) != body {
        return Err(GeomError::Internal("summand recomposition mismatch".into()));
    }
    Ok(())
}

/// `(S, C)` for the first parallel pair in canonical order.
pub fn extract_parallel_summand(body: &Body) -> Result<Option<(Body, Body)>> {
    Ok(extract_with(body, ExtractionOrder::Forward)?.map(|(s, c, _)| (s, c)))
}

pub fn decompose(body: &Body) -> Result<Decomposition> {
    decompose_with(body, ExtractionOrder::Forward)
}

pub fn decompose_with(body: &Body, order: ExtractionOrder) -> Result<Decomposition> {
    let mut core = body.clone();
    let mut trace = Vec::new();
    // summand half-vectors, merged per direction
    let mut parts: Vec<(Direction, Point)> = Vec::new();
    let limit = body.vertices().len() + 1;
    while let Some((_, c, step)) = extract_with(&core, order)? {
        if trace.len() == limit {
            return Err(GeomError::Internal(
                "parallel-edge extraction did not terminate".into(),
            ));
        }
        core = c;
        let key = step.direction.upper_half();
        match parts.iter_mut().find(|(d, _)| *d == key) {
            Some((_, v)) => *v = &*v + &step.vector,
            None => parts.push((key, step.vector.clone())),
        }
        trace.push(step);
    }
    Ok(Decomposition {
        core,
        summands: parts.iter().map(|(_, v)| centred_segment(v)).collect(),
        trace,
    })
}

/// Re-checks `body = core + Σ summands`, centred summands, and that the core
/// has no parallel edge pair (or dimension below 2).
pub fn verify_decomposition(body: &Body, dec: &Decomposition) -> bool {
    let mut acc = dec.core.clone();
    for s in &dec.summands {
        let vs = s.vertices();
        if s.kind() != BodyKind::Segment || !(&vs[0] + &vs[1]).is_origin() {
            return false;
        }
        acc = minkowski_sum(&acc, s);
    }
    let core_free = dec.core.dim() < 2
        || parallel_pairs(&dec.core)
            .map(|p| p.is_empty())
            .unwrap_or(false);
    acc == *body && core_free
}

/// Equality up to translation, comparing canonical vertex rings.
pub fn equal_up_to_translation(a: &Body, b: &Body) -> bool {
    let t = &b.vertices()[0] - &a.vertices()[0];
    a.translate(&t) == *b
}

impl Decomposition {
    /// Sum of the summands (the origin when there are none).
    pub fn symmetric_part(&self) -> Body {
        self.summands
            .iter()
            .fold(Body::point(Point::origin()), |acc, s| {
                minkowski_sum(&acc, s)
            })
    }

    pub fn is_trivial(&self) -> bool {
        self.summands.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{rat, ratio};

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }
    fn t0() -> Body {
        Body::polygon(vec![p(0, 0), p(4, 0), p(0, 4)]).unwrap()
    }
    fn unit_square() -> Body {
        Body::polygon(vec![p(0, 0), p(1, 0), p(1, 1), p(0, 1)]).unwrap()
    }
    fn hexagon() -> Body {
        hull(&[p(2, 0), p(-2, 0), p(1, 2), p(-1, -2), p(-1, 2), p(1, -2)]).unwrap()
    }

    #[test]
    fn extract_square() {
        let (s, c) = extract_parallel_summand(&unit_square()).unwrap().unwrap();
        let h = ratio(1, 2);
        assert_eq!(
            s,
            Body::segment(
                Point::new(-h.clone(), rat(0)),
                Point::new(h.clone(), rat(0))
            )
            .unwrap()
        );
        assert_eq!(
            c,
            Body::segment(Point::new(h.clone(), rat(0)), Point::new(h, rat(1))).unwrap()
        );
        assert_eq!(minkowski_sum(&c, &s), unit_square());
    }

    #[test]
    fn extract_none_and_hexagon() {
        assert!(extract_parallel_summand(&t0()).unwrap().is_none());
        let (s, c) = extract_parallel_summand(&hexagon()).unwrap().unwrap();
        // horizontal pair first
        assert_eq!(s, Body::segment(p(-1, 0), p(1, 0)).unwrap());
        assert_eq!(minkowski_sum(&c, &s), hexagon());
    }

    #[test]
    fn extract_unequal_edges() {
        // trapezoid: bottom 6, top 2
        let trap = Body::polygon(vec![p(0, 0), p(6, 0), p(4, 2), p(2, 2)]).unwrap();
        let (s, c) = extract_parallel_summand(&trap).unwrap().unwrap();
        assert_eq!(s, Body::segment(p(-1, 0), p(1, 0)).unwrap());
        assert_eq!(c, Body::polygon(vec![p(1, 0), p(5, 0), p(3, 2)]).unwrap());
    }

    #[test]
    fn decompose_examples() {
        let d = decompose(&unit_square()).unwrap();
        assert_eq!(d.core, Body::point(Point::new(ratio(1, 2), ratio(1, 2))));
        assert_eq!(d.summands.len(), 2);
        assert!(verify_decomposition(&unit_square(), &d));

        let d = decompose(&t0()).unwrap();
        assert_eq!(d.core, t0());
        assert!(d.summands.is_empty());

        let seg = Body::segment(p(-1, 0), p(1, 0)).unwrap();
        let k = minkowski_sum(&t0(), &seg);
        let d = decompose(&k).unwrap();
        assert_eq!(d.core, t0());
        assert_eq!(d.summands, vec![seg]);
        assert!(verify_decomposition(&k, &d));
    }

    #[test]
    fn verify_rejects_broken_decompositions() {
        let mut d = decompose(&unit_square()).unwrap();
        d.summands.pop();
        assert!(!verify_decomposition(&unit_square(), &d));
        let off_centre = Decomposition {
            core: Body::point(p(0, 0)),
            summands: vec![Body::segment(p(0, 0), p(1, 0)).unwrap()],
            trace: vec![],
        };
        assert!(!verify_decomposition(
            &Body::segment(p(0, 0), p(1, 0)).unwrap(),
            &off_centre
        ));
        let not_free = Decomposition {
            core: unit_square(),
            summands: vec![],
            trace: vec![],
        };
        assert!(!verify_decomposition(&unit_square(), &not_free));
    }

    #[test]
    fn reverse_order_same_core() {
        let k = minkowski_sum(
            &minkowski_sum(&t0(), &Body::segment(p(-1, -2), p(1, 2)).unwrap()),
            &Body::segment(p(-3, 1), p(3, -1)).unwrap(),
        );
        let f = decompose_with(&k, ExtractionOrder::Forward).unwrap();
        let r = decompose_with(&k, ExtractionOrder::Reverse).unwrap();
        assert!(verify_decomposition(&k, &f));
        assert!(verify_decomposition(&k, &r));
        assert!(equal_up_to_translation(&f.core, &r.core));
        assert!(equal_up_to_translation(&f.core, &t0()));
    }

    #[test]
    fn hexagon_reduces_to_centre() {
        let d = decompose(&hexagon()).unwrap();
        assert_eq!(d.core, Body::point(p(0, 0)));
        assert_eq!(d.summands.len(), 3);
        assert_eq!(d.symmetric_part(), hexagon());
    }
}
