//! Brute-force oracles written independently of the library algorithms.
//! They only use the library's data types and its exact scalar.

#![allow(dead_code)]

use midset::geom::{Body, Direction, Point, Rat};
use num_traits::{Signed, Zero};

pub fn p(x: i64, y: i64) -> Point {
    Point::from_ints(x, y)
}

pub fn t0() -> Body {
    Body::polygon(vec![p(0, 0), p(4, 0), p(0, 4)]).unwrap()
}

pub fn p5() -> Body {
    Body::polygon(vec![p(0, 0), p(3, 0), p(4, 2), p(2, 4), p(0, 3)]).unwrap()
}

pub fn unit_square() -> Body {
    Body::polygon(vec![p(0, 0), p(1, 0), p(1, 1), p(0, 1)]).unwrap()
}

fn cross3(o: &Point, a: &Point, b: &Point) -> Rat {
    (&a.x - &o.x) * (&b.y - &o.y) - (&a.y - &o.y) * (&b.x - &o.x)
}

/// Twice the signed area of a ring (shoelace).
pub fn area2(ring: &[Point]) -> Rat {
    let n = ring.len();
    if n < 3 {
        return Rat::zero();
    }
    (0..n)
        .map(|i| {
            let (a, b) = (&ring[i], &ring[(i + 1) % n]);
            &a.x * &b.y - &a.y * &b.x
        })
        .fold(Rat::zero(), |s, t| s + t)
}

/// Gift-wrapping hull of a point set, counterclockwise, extreme points only.
/// Deliberately a different algorithm from the library's monotone chain.
pub fn wrap_hull(points: &[Point]) -> Vec<Point> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let start = pts[0].clone();
    let mut ring = vec![start.clone()];
    let mut cur = start.clone();
    loop {
        let mut cand = if pts[0] == cur {
            pts[1].clone()
        } else {
            pts[0].clone()
        };
        for q in &pts {
            if *q == cur {
                continue;
            }
            let c = cross3(&cur, &cand, q);
            let farther = {
                let dq = q - &cur;
                let dc = &cand - &cur;
                dq.dot(&dq) > dc.dot(&dc)
            };
            // q is clockwise of cand, or collinear and farther
            if c.is_negative() || (c.is_zero() && farther) {
                cand = q.clone();
            }
        }
        if cand == start {
            break;
        }
        ring.push(cand.clone());
        cur = cand;
        if ring.len() > pts.len() {
            panic!("gift wrapping did not close");
        }
    }
    ring
}

/// Clips a counterclockwise convex ring by the half-plane left of `a → b`.
fn clip(ring: &[Point], a: &Point, b: &Point) -> Vec<Point> {
    let n = ring.len();
    let mut out = Vec::new();
    for i in 0..n {
        let (cur, nxt) = (&ring[i], &ring[(i + 1) % n]);
        let (sc, sn) = (cross3(a, b, cur), cross3(a, b, nxt));
        if !sc.is_negative() {
            out.push(cur.clone());
        }
        if (sc.is_positive() && sn.is_negative()) || (sc.is_negative() && sn.is_positive()) {
            let t = &sc / (&sc - &sn);
            out.push(cur + &(nxt - cur).scale(&t));
        }
    }
    out
}

/// Intersection of two counterclockwise convex rings.
pub fn intersect(k: &[Point], l: &[Point]) -> Vec<Point> {
    let mut ring = k.to_vec();
    let n = l.len();
    for i in 0..n {
        if ring.is_empty() {
            break;
        }
        ring = clip(&ring, &l[i], &l[(i + 1) % n]);
    }
    ring
}

/// Two-dimensional bodies only: the union is convex iff
/// `area(conv(K ∪ L)) = area(K) + area(L) − area(K ∩ L)`.
pub fn union_convex_by_area(k: &Body, l: &Body) -> bool {
    assert!(k.is_polygon() && l.is_polygon());
    let mut all = k.vertices().to_vec();
    all.extend(l.vertices().iter().cloned());
    let h = area2(&wrap_hull(&all));
    let i = area2(&intersect(k.vertices(), l.vertices()));
    h == area2(k.vertices()) + area2(l.vertices()) - i
}

pub fn reflect_vertices(k: &Body, z: &Point) -> Body {
    let vs: Vec<Point> = k.vertices().iter().map(|v| v.reflect_in(z)).collect();
    Body::from_vertices(vs, true).unwrap()
}

/// Area-based convexity-point oracle for polygons.
pub fn convexity_point_by_area(k: &Body, z: &Point) -> bool {
    union_convex_by_area(k, &reflect_vertices(k, z))
}

/// `max ⟨v, u⟩` by scanning all vertices.
pub fn brute_support(vs: &[Point], u: &Point) -> Rat {
    vs.iter().map(|v| v.dot(u)).max().unwrap()
}

/// All vertices attaining the maximum of `⟨·, u⟩`.
pub fn brute_face(vs: &[Point], u: &Point) -> Vec<Point> {
    let h = brute_support(vs, u);
    vs.iter().filter(|v| v.dot(u) == h).cloned().collect()
}

/// Middle set endpoints by brute force: all sums `½(a + b)` of face points.
pub fn brute_middle_points(vs: &[Point], u: &Point) -> Vec<Point> {
    let f = brute_face(vs, u);
    let g = brute_face(vs, &-u);
    let mut out = Vec::new();
    for a in &f {
        for b in &g {
            out.push(Point::midpoint(a, b));
        }
    }
    out
}

/// Hull of the middle sets at every edge normal and at one direction strictly
/// inside each arc between consecutive normals (the sum of the neighbours),
/// plus a fine integer sweep of `rays` extra directions.
pub fn sweep_a_body(k: &Body, rays: usize) -> Vec<Point> {
    let vs = k.vertices();
    let n = vs.len();
    let mut dirs: Vec<Point> = (0..n)
        .map(|i| {
            let e = &vs[(i + 1) % n] - &vs[i];
            Point::new(e.y.clone(), -e.x.clone())
        })
        .collect();
    for i in 0..n {
        let s = &dirs[i] + &dirs[(i + 1) % n];
        if !s.is_origin() {
            dirs.push(s);
        }
    }
    for j in 0..rays {
        let ang = 2.0 * std::f64::consts::PI * j as f64 / rays as f64;
        let u = p(
            (1e6 * ang.cos()).round() as i64,
            (1e6 * ang.sin()).round() as i64,
        );
        dirs.push(u);
    }
    let mut pts = Vec::new();
    for u in &dirs {
        pts.extend(brute_middle_points(vs, u));
    }
    wrap_hull(&pts)
}

/// Independent Minkowski sum: hull of all pairwise vertex sums.
pub fn pairwise_sum(a: &Body, b: &Body) -> Vec<Point> {
    let mut pts = Vec::new();
    for x in a.vertices() {
        for y in b.vertices() {
            pts.push(x + y);
        }
    }
    wrap_hull(&pts)
}

/// Canonical ring: counterclockwise from the lexicographic minimum.
pub fn canonical(mut ring: Vec<Point>) -> Vec<Point> {
    if ring.len() >= 3 && area2(&ring).is_negative() {
        ring.reverse();
    }
    if let Some(i) = ring
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.cmp(b.1))
        .map(|x| x.0)
    {
        ring.rotate_left(i);
    }
    ring
}

pub fn dir(x: i64, y: i64) -> Direction {
    Direction::from_ints(x, y).unwrap()
}
