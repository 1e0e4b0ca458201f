//! Randomized invariants checked against the brute-force oracles in `common`.

mod common;

use common::*;
use midset::convexity::{
    is_convexity_point_char, is_convexity_point_direct, middle_intercept_profile,
    reflected_support, theorem_points, witness_nonconvexity, Method,
};
use midset::decompose::{
    decompose, decompose_with, equal_up_to_translation, verify_decomposition, ExtractionOrder,
};
use midset::format::{emit_body, parse_body};
use midset::geom::{
    affine_dim, contains, face, hull, is_convex_union, minkowski_sum, on_segment, ratio, reflect,
    support, Body, Direction, Point, Rat,
};
use midset::middle::{
    a_body, antipodal_events, has_parallel_edges, is_centrally_symmetric, middle_line, middle_set,
    p_value,
};
use midset::smooth::{
    a_body_approx, make_smooth_body_with_margin, symmetry_residual, z_curve, Harmonic,
};
use num_bigint::BigInt;
use proptest::prelude::*;

const R: i64 = 30;

fn lattice(r: i64) -> impl Strategy<Value = Point> {
    (-r..=r, -r..=r).prop_map(|(x, y)| Point::from_ints(x, y))
}

fn polygon() -> impl Strategy<Value = Body> {
    prop::collection::vec(lattice(R), 3..14).prop_filter_map("degenerate hull", |pts| {
        hull(&pts).ok().filter(|b| b.is_polygon())
    })
}

fn free_polygon() -> impl Strategy<Value = Body> {
    polygon().prop_filter("parallel edges", |b| {
        has_parallel_edges(b).unwrap().is_none()
    })
}

fn body() -> impl Strategy<Value = Body> {
    prop::collection::vec(lattice(R), 1..10).prop_map(|pts| hull(&pts).unwrap())
}

fn direction() -> impl Strategy<Value = Direction> {
    (-40i64..=40, -40i64..=40)
        .prop_filter("zero", |(x, y)| (*x, *y) != (0, 0))
        .prop_map(|(x, y)| Direction::from_ints(x, y).unwrap())
}

fn rational_point() -> impl Strategy<Value = Point> {
    (-60i64..=60, -60i64..=60, 1i64..=4).prop_map(|(x, y, d)| Point::new(ratio(x, d), ratio(y, d)))
}

/// Sixteen fixed directions: the axes, diagonals and their half-way rays.
fn sixteen() -> Vec<Direction> {
    let base = [
        (1, 0),
        (2, 1),
        (1, 1),
        (1, 2),
        (0, 1),
        (-1, 2),
        (-1, 1),
        (-2, 1),
    ];
    base.iter()
        .flat_map(|&(x, y)| [dir(x, y), dir(-x, -y)])
        .collect()
}

fn segment() -> impl Strategy<Value = Body> {
    lattice(12)
        .prop_filter("zero", |v| !v.is_origin())
        .prop_map(|v| Body::segment(-&v, v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn minkowski_support_additive(a in body(), b in body()) {
        let s = minkowski_sum(&a, &b);
        for n in sixteen() {
            prop_assert_eq!(support(&s, &n), support(&a, &n) + support(&b, &n));
        }
        prop_assert_eq!(canonical(s.vertices().to_vec()), pairwise_sum(&a, &b));
    }

    #[test]
    fn face_additive(a in polygon(), b in polygon()) {
        let s = minkowski_sum(&a, &b);
        let normals: Vec<Direction> = a.edges().chain(b.edges())
            .map(|(p, q)| Body::edge_normal(p, q).unwrap())
            .collect();
        for n in normals {
            let (fa, fb, fs) = (face(&a, &n), face(&b, &n), face(&s, &n));
            let (a0, a1) = fa.endpoints();
            let (b0, b1) = fb.endpoints();
            let (s0, s1) = fs.endpoints();
            prop_assert_eq!(s0, &(a0 + b0));
            prop_assert_eq!(s1, &(a1 + b1));
            let mut brute = brute_face(s.vertices(), &n.as_vector());
            brute.sort();
            let mut got = vec![s0.clone(), s1.clone()];
            got.sort();
            got.dedup();
            prop_assert_eq!(brute, got);
        }
    }

    #[test]
    fn reflection_identities(k in body(), z in rational_point()) {
        let r = reflect(&k, &z);
        prop_assert_eq!(reflect(&r, &z), k.clone());
        for n in sixteen() {
            prop_assert_eq!(support(&r, &n), reflected_support(&k, &z, &n));
            let two: Rat = ratio(2, 1);
            prop_assert_eq!(support(&r, &n), two * z.dot_dir(&n) + support(&k, &n.opposite()));
        }
    }

    #[test]
    fn hull_canonical_and_roundtrip(pts in prop::collection::vec(lattice(R), 1..20)) {
        let h = hull(&pts).unwrap();
        prop_assert_eq!(hull(h.vertices()).unwrap(), h.clone());
        prop_assert_eq!(h.vertices().to_vec(), canonical(wrap_hull(&pts)));
        let text = emit_body(&h);
        let back = parse_body(&text).unwrap();
        prop_assert_eq!(&back, &h);
        prop_assert_eq!(emit_body(&back), text);
    }

    #[test]
    fn union_test_matches_area_oracle(k in polygon(), l in polygon(), seed in any::<u64>()) {
        let convex = is_convex_union(&k, &l);
        prop_assert_eq!(convex, union_convex_by_area(&k, &l));
        match witness_nonconvexity(&k, &l) {
            Some(w) => {
                prop_assert!(!convex);
                prop_assert!(!contains(&k, &w) && !contains(&l, &w));
                let mut all = k.vertices().to_vec();
                all.extend(l.vertices().iter().cloned());
                let h = hull(&all).unwrap();
                let on_boundary = h.edges().any(|(a, b)| on_segment(a, b, &w));
                prop_assert!(on_boundary);
            }
            None => {
                prop_assert!(convex);
                // midpoints of cross pairs lie in the union
                let (kv, lv) = (k.vertices(), l.vertices());
                let mut s = seed;
                for _ in 0..50 {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    let i = (s >> 33) as usize;
                    let j = (s >> 17) as usize;
                    let a = Point::midpoint(&kv[i % kv.len()], &kv[(i / 7) % kv.len()]);
                    let b = Point::midpoint(&lv[j % lv.len()], &lv[(j / 7) % lv.len()]);
                    let m = Point::midpoint(&a, &b);
                    prop_assert!(contains(&k, &m) || contains(&l, &m));
                }
            }
        }
    }

    #[test]
    fn middle_sets_lie_on_middle_lines(k in free_polygon(), n in direction()) {
        let z = middle_set(&k, &n).unwrap();
        prop_assert!(z.carrier.contains(&z.s) && z.carrier.contains(&z.t));
        prop_assert_eq!(z.s.dot_dir(&n), p_value(&k, &n));
        prop_assert_eq!(middle_line(&k, &n), middle_line(&k, &n.opposite()));
        let zo = middle_set(&k, &n.opposite()).unwrap();
        let mut a = vec![z.s.clone(), z.t.clone()];
        let mut b = vec![zo.s, zo.t];
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
        let mut brute = brute_middle_points(k.vertices(), &n.as_vector());
        brute.sort();
        brute.dedup();
        let mut ends = vec![z.s, z.t];
        ends.sort();
        ends.dedup();
        prop_assert_eq!(brute, ends);
    }

    #[test]
    fn events_partition_the_half_circle(k in free_polygon()) {
        let events = antipodal_events(&k).unwrap();
        prop_assert_eq!(events.len(), 2 * events.iter().filter(|e| e.is_critical()).count());
        for e in &events {
            let u = e.representative();
            let z = middle_set(&k, &u).unwrap();
            prop_assert!(z.carrier.contains(&z.s));
            prop_assert_eq!(&face(&k, &u), &e.face_pos);
            prop_assert_eq!(&face(&k, &u.opposite()), &e.face_neg);
        }
        // the events tile a half circle, so exactly one of ±n is covered once
        for j in 0..720 {
            let ang = std::f64::consts::PI * j as f64 / 360.0;
            let n = Direction::from_ints(
                (1e6 * ang.cos()).round() as i64,
                (1e6 * ang.sin()).round() as i64,
            ).unwrap();
            let m = n.opposite();
            let hits = events.iter().filter(|e| e.covers(&n)).count()
                + events.iter().filter(|e| e.covers(&m)).count();
            prop_assert_eq!(hits, 1);
        }
        for e in events.iter().filter(|e| e.is_critical()) {
            prop_assert_eq!(events.iter().filter(|f| f.covers(&e.arc.0)).count(), 1);
        }
    }

    #[test]
    fn a_body_matches_sweep(k in free_polygon()) {
        let a = a_body(&k).unwrap();
        prop_assert_eq!(a.vertices().to_vec(), canonical(sweep_a_body(&k, 720)));
        prop_assert_eq!(affine_dim(a.vertices()).unwrap(), 2);
    }

    #[test]
    fn a_body_equivariance(
        k in free_polygon(),
        t in lattice(50),
        z in rational_point(),
        num in 1i64..7,
        den in 1i64..7,
    ) {
        let a = a_body(&k).unwrap();
        prop_assert_eq!(a_body(&k.translate(&t)).unwrap(), a.translate(&t));
        prop_assert_eq!(a_body(&reflect(&k, &z)).unwrap(), reflect(&a, &z));
        let lam = ratio(num, den);
        prop_assert_eq!(a_body(&k.scale(&lam).unwrap()).unwrap(), a.scale(&lam).unwrap());
    }

    #[test]
    fn one_sided_derivatives_are_exact(k in free_polygon(), n in direction()) {
        // u + εu′ stays inside the arc next to u for lattice data of this size
        let eps = Rat::new(BigInt::from(1), BigInt::from(1u64 << 40));
        let u = n.as_vector();
        let up = n.rot().as_vector();
        let z = middle_set(&k, &n).unwrap();
        let p0 = p_value(&k, &n);
        let right = Direction::from_vector(&(&u + &up.scale(&eps))).unwrap();
        let left = Direction::from_vector(&(&u - &up.scale(&eps))).unwrap();
        // undo the primitive rescaling of the perturbed rays
        let scale_of = |d: &Direction, v: &Point| -> Rat {
            if v.x != Rat::from_integer(0.into()) { d.dx() / &v.x } else { d.dy() / &v.y }
        };
        let vr = &u + &up.scale(&eps);
        let vl = &u - &up.scale(&eps);
        let pr = p_value(&k, &right) / scale_of(&right, &vr);
        let pl = p_value(&k, &left) / scale_of(&left, &vl);
        prop_assert_eq!((pr - &p0) / &eps, z.t.dot(&up));
        prop_assert_eq!((p0 - pl) / &eps, z.s.dot(&up));
    }

    #[test]
    fn characterization_matches_area_oracle(k in free_polygon(), zs in prop::collection::vec(rational_point(), 8)) {
        let a = a_body(&k).unwrap();
        let mut cands = zs;
        cands.extend(a.vertices().iter().cloned());
        for z in &cands {
            let ch = is_convexity_point_char(&k, z).unwrap().convex;
            prop_assert_eq!(ch, convexity_point_by_area(&k, z));
            prop_assert_eq!(ch, is_convexity_point_direct(&k, z));
        }
    }

    #[test]
    fn exposed_points_are_convexity_points(k in free_polygon()) {
        let a = a_body(&k).unwrap();
        for v in a.vertices() {
            prop_assert!(convexity_point_by_area(&k, v));
            let prof = middle_intercept_profile(&k, v, 199).unwrap();
            prop_assert!(prof.frame.exposes(&a));
            prop_assert_eq!(prof.monotone_violations, 0);
        }
        let certs = theorem_points(&k).unwrap();
        let zs: Vec<Point> = certs.iter().map(|c| c.z.clone()).collect();
        prop_assert!(zs.len() >= 3);
        prop_assert_eq!(affine_dim(&zs).unwrap(), 2);
    }

    #[test]
    fn decomposition_roundtrip(
        base in free_polygon(),
        segs in prop::collection::vec(segment(), 0..4),
    ) {
        let k = segs.iter().fold(base.clone(), |acc, s| minkowski_sum(&acc, s));
        let d = decompose(&k).unwrap();
        prop_assert!(verify_decomposition(&k, &d));
        prop_assert!(equal_up_to_translation(&d.core, &base));
        let r = decompose_with(&k, ExtractionOrder::Reverse).unwrap();
        prop_assert!(verify_decomposition(&k, &r));
        prop_assert!(equal_up_to_translation(&d.core, &r.core));
        for c in theorem_points(&d.core).unwrap() {
            prop_assert!(is_convexity_point_direct(&k, &c.z));
            prop_assert!(convexity_point_by_area(&k, &c.z));
        }
    }

    #[test]
    fn symmetry_preserved(k in polygon(), segs in prop::collection::vec(segment(), 0..3)) {
        // symmetrize half of the cases: K + (−K) is always centrally symmetric
        let k = if segs.len() % 2 == 0 {
            minkowski_sum(&k, &reflect(&k, &Point::origin()))
        } else {
            k
        };
        let k = segs.iter().fold(k, |acc, s| minkowski_sum(&acc, s));
        let sym = is_centrally_symmetric(&k).symmetric;
        let d = decompose(&k).unwrap();
        prop_assert_eq!(sym, d.core.dim() == 0);
        let certs = theorem_points(&k).unwrap();
        prop_assert_eq!(sym, certs.len() == 1 && certs[0].method == Method::SymmetricCenter);
        if sym {
            prop_assert_eq!(Some(certs[0].z.clone()), is_centrally_symmetric(&k).center);
            // the centre is the fixed point of a vertex pairing
            let c = &certs[0].z;
            prop_assert_eq!(reflect(&k, c), k.clone());
        }
    }
}

fn harmonics() -> impl Strategy<Value = (Vec<Harmonic>, bool)> {
    (
        prop::collection::vec((-0.05f64..0.05, -0.05f64..0.05), 7),
        prop::collection::vec(any::<bool>(), 7),
    )
        .prop_map(|(coeffs, keep)| {
            let mut hs = Vec::new();
            let mut a0 = 0.2;
            let mut odd_high = false;
            for (i, ((a, b), k)) in coeffs.into_iter().zip(keep).enumerate() {
                let order = i as u32 + 1;
                // odd orders ≥ 3 are dropped unless kept
                if order >= 3 && order % 2 == 1 && !k {
                    continue;
                }
                if order >= 3 && order % 2 == 1 && (a != 0.0 || b != 0.0) {
                    odd_high = true;
                }
                a0 += ((order * order) as f64 - 1.0) * (a.abs() + b.abs());
                hs.push(Harmonic::new(order, a, b));
            }
            hs.push(Harmonic::new(0, a0, 0.0));
            (hs, odd_high)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn symmetry_residual_detects_odd_harmonics((hs, odd_high) in harmonics()) {
        let b = make_smooth_body_with_margin(&hs, 0.1).unwrap();
        let r = symmetry_residual(&b);
        prop_assert_eq!(r <= 1e-12, !odd_high, "residual {}", r);
    }

    #[test]
    fn z_curve_antipodal((hs, _) in harmonics(), phi in 0.0f64..6.3) {
        let b = make_smooth_body_with_margin(&hs, 0.1).unwrap();
        let (z0, z1) = (z_curve(&b, phi).z, z_curve(&b, phi + std::f64::consts::PI).z);
        prop_assert!((z0[0] - z1[0]).abs() <= 1e-12 && (z0[1] - z1[1]).abs() <= 1e-12);
    }

    #[test]
    fn a_body_approx_rotates((hs, _) in harmonics(), j in 0usize..360) {
        let m = 180;
        let b = make_smooth_body_with_margin(&hs, 0.1).unwrap();
        let alpha = std::f64::consts::PI * j as f64 / m as f64;
        let a = a_body_approx(&b, m).unwrap();
        let ra = a_body_approx(&b.rotated(alpha), m).unwrap();
        let (s, c) = alpha.sin_cos();
        for i in 0..48 {
            let th = 2.0 * std::f64::consts::PI * i as f64 / 48.0;
            let u = [th.cos(), th.sin()];
            let back = [c * u[0] + s * u[1], -s * u[0] + c * u[1]];
            prop_assert!((ra.support(u) - a.support(back)).abs() <= 1e-9);
        }
    }
}
