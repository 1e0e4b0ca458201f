//! Text formats.
//!
//! Body files are a single object `{"type": ..., "vertices": [[x, y], ...]}`.
//! A coordinate is a JSON integer or a string `"n"` / `"p/q"` in lowest terms.
//! Emission is canonical: integers that fit in `i64` are numbers, everything
//! else is a string.

use std::fmt;

use num_traits::ToPrimitive;
use serde::de::{self, Deserializer, Visitor};
use serde::ser::{SerializeMap, SerializeSeq, SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::geom::{format_rat, parse_rat, Body, Direction, Face, Line, Point, Rat};
use crate::smooth::{make_smooth_body, Harmonic, SmoothBody};

/// Serializable view of a rational.
pub struct RatRepr<'a>(pub &'a Rat);

impl Serialize for RatRepr<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self
            .0
            .is_integer()
            .then(|| self.0.numer().to_i64())
            .flatten()
        {
            Some(n) => s.serialize_i64(n),
            None => s.serialize_str(&format_rat(self.0)),
        }
    }
}

fn rat_text(r: &Rat) -> String {
    match r.is_integer().then(|| r.numer().to_i64()).flatten() {
        Some(n) => n.to_string(),
        None => format!("\"{}\"", format_rat(r)),
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&RatRepr(&self.x))?;
        t.serialize_element(&RatRepr(&self.y))?;
        t.end()
    }
}

impl Serialize for Direction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&RatRepr(self.dx()))?;
        t.serialize_element(&RatRepr(self.dy()))?;
        t.end()
    }
}

impl Serialize for Line {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("normal", self.normal())?;
        m.serialize_entry("offset", &RatRepr(self.offset()))?;
        m.end()
    }
}

struct Vertices<'a>(&'a [&'a Point]);

impl Serialize for Vertices<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for p in self.0 {
            seq.serialize_element(p)?;
        }
        seq.end()
    }
}

impl Serialize for Face {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (kind, vs): (&str, Vec<&Point>) = match self {
            Face::Point(p) => ("point", vec![p]),
            Face::Segment { a, b } => ("segment", vec![a, b]),
        };
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("type", kind)?;
        m.serialize_entry("vertices", &Vertices(&vs))?;
        m.end()
    }
}

impl Serialize for Body {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let vs: Vec<&Point> = self.vertices().iter().collect();
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("type", self.kind().name())?;
        m.serialize_entry("vertices", &Vertices(&vs))?;
        m.end()
    }
}

/// A coordinate as read from a file.
struct Coord(Rat);

impl<'de> Deserialize<'de> for Coord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Coord;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a \"p/q\" string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Coord, E> {
                Ok(Coord(Rat::from_integer(v.into())))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Coord, E> {
                Ok(Coord(Rat::from_integer(v.into())))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Coord, E> {
                parse_rat(v).map(Coord).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBody {
    #[serde(rename = "type")]
    kind: String,
    vertices: Vec<(Coord, Coord)>,
}

fn parse_error(location: impl Into<String>, message: impl fmt::Display) -> GeomError {
    GeomError::Parse {
        location: location.into(),
        message: message.to_string(),
    }
}

fn json_error(e: &serde_json::Error) -> GeomError {
    parse_error(format!("line {}, column {}", e.line(), e.column()), e)
}

/// Parses and validates a body file. The vertex list must already describe a
/// strictly convex polygon (either orientation), a segment, or a point, and
/// must agree with `"type"`.
pub fn parse_body(text: &str) -> Result<Body> {
    let raw: RawBody = serde_json::from_str(text).map_err(|e| json_error(&e))?;
    let expected = match raw.kind.as_str() {
        "point" => Some(1),
        "segment" => Some(2),
        "polygon" => None,
        other => {
            return Err(parse_error(
                "type",
                format!("unknown body type {other:?}; expected point, segment or polygon"),
            ))
        }
    };
    let n = raw.vertices.len();
    match expected {
        Some(k) if k != n => {
            return Err(parse_error(
                "vertices",
                format!("a {} has {k} vertices, found {n}", raw.kind),
            ))
        }
        None if n < 3 => {
            return Err(parse_error(
                "vertices",
                format!("a polygon has at least 3 vertices, found {n}"),
            ))
        }
        _ => {}
    }
    let vs: Vec<Point> = raw
        .vertices
        .into_iter()
        .map(|(x, y)| Point::new(x.0, y.0))
        .collect();
    Body::from_vertices(vs, false).map_err(|e| parse_error("vertices", e))
}

/// Canonical one-line body document with a trailing newline.
pub fn emit_body(body: &Body) -> String {
    let vs: Vec<String> = body
        .vertices()
        .iter()
        .map(|p| format!("[{}, {}]", rat_text(&p.x), rat_text(&p.y)))
        .collect();
    format!(
        "{{\"type\": \"{}\", \"vertices\": [{}]}}\n",
        body.kind().name(),
        vs.join(", ")
    )
}

/// Parses `"x,y"` where each part is `n` or `p/q`.
pub fn parse_point_arg(s: &str) -> Result<Point> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| parse_error("point", format!("expected \"x,y\", got {s:?}")))?;
    let x = parse_rat(x).map_err(|e| parse_error("point x", e))?;
    let y = parse_rat(y).map_err(|e| parse_error("point y", e))?;
    Ok(Point::new(x, y))
}

pub fn format_point(p: &Point) -> String {
    format!("({}, {})", format_rat(&p.x), format_rat(&p.y))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSmooth {
    harmonics: Vec<(u32, f64, f64)>,
}

/// Parses `{"harmonics": [[k, a_k, b_k], ...]}` and validates the body.
pub fn parse_smooth_body(text: &str) -> Result<SmoothBody> {
    let raw: RawSmooth = serde_json::from_str(text).map_err(|e| json_error(&e))?;
    let hs: Vec<Harmonic> = raw
        .harmonics
        .into_iter()
        .map(|(k, a, b)| Harmonic::new(k, a, b))
        .collect();
    make_smooth_body(&hs)
}

pub fn emit_smooth_body(body: &SmoothBody) -> String {
    let raw = RawSmooth {
        harmonics: body.harmonics().iter().map(|h| (h.k, h.a, h.b)).collect(),
    };
    let mut s = serde_json::to_string(&raw).expect("finite floats serialize");
    s.push('\n');
    s
}

/// Whether the text looks like a smooth-body document rather than a polygon.
pub fn is_smooth_document(text: &str) -> bool {
    serde_json::from_str::<serde_json::Value>(text)
        .map(|v| v.get("harmonics").is_some())
        .unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{hull, ratio};

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    #[test]
    fn emit_is_canonical() {
        let t0 = Body::polygon(vec![p(0, 4), p(4, 0), p(0, 0)]).unwrap();
        assert_eq!(
            emit_body(&t0),
            "{\"type\": \"polygon\", \"vertices\": [[0, 0], [4, 0], [0, 4]]}\n"
        );
        let pt = Body::point(Point::new(ratio(1, 2), ratio(-3, 1)));
        assert_eq!(
            emit_body(&pt),
            "{\"type\": \"point\", \"vertices\": [[\"1/2\", -3]]}\n"
        );
    }

    #[test]
    fn parse_accepts_clockwise_and_strings() {
        let b = parse_body(r#"{"type":"polygon","vertices":[[0,4],[4,0],["0","0/1"]]}"#);
        // "0/1" is in lowest terms (gcd 1)
        assert_eq!(b.unwrap(), hull(&[p(0, 0), p(4, 0), p(0, 4)]).unwrap());
    }

    #[test]
    fn parse_errors_have_locations() {
        let bad = [
            "{\"type\":\"polygon\",\n\"vertices\":[[0,0],[1,0],[1.5,1]]}",
            r#"{"type":"polygon","vertices":[[0,0],[2,2],[2,0],[0,2]]}"#,
            r#"{"type":"segment","vertices":[[0,0]]}"#,
            r#"{"type":"blob","vertices":[[0,0]]}"#,
            r#"{"type":"point","vertices":[["2/4",0]]}"#,
            r#"{"type":"polygon","vertices":[[0,0],[1,0],[2,0]]}"#,
            "{",
        ];
        for text in bad {
            match parse_body(text) {
                Err(GeomError::Parse { location, .. }) => assert!(!location.is_empty()),
                other => panic!("{text}: {other:?}"),
            }
        }
        match parse_body("{\"type\":\"polygon\",\n\"vertices\":[[0,0],[1,0],[1.5,1]]}") {
            Err(GeomError::Parse { location, .. }) => assert!(location.starts_with("line 2")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn roundtrip_big_and_fractional() {
        let big = Rat::from_integer("123456789012345678901234567890".parse().unwrap());
        let b = Body::segment(
            Point::new(big, ratio(1, 3)),
            Point::new(ratio(-7, 2), ratio(0, 1)),
        )
        .unwrap();
        let text = emit_body(&b);
        assert!(text.contains("\"123456789012345678901234567890\""));
        assert_eq!(parse_body(&text).unwrap(), b);
    }

    #[test]
    fn serde_views_match_emitter() {
        let t0 = Body::polygon(vec![p(0, 0), p(4, 0), p(0, 4)]).unwrap();
        assert_eq!(
            serde_json::to_string(&t0).unwrap(),
            r#"{"type":"polygon","vertices":[[0,0],[4,0],[0,4]]}"#
        );
        let l = Line::new(&p(0, -2), ratio(-3, 1)).unwrap();
        assert_eq!(
            serde_json::to_string(&l).unwrap(),
            r#"{"normal":[0,1],"offset":"3/2"}"#
        );
    }

    #[test]
    fn point_args() {
        assert_eq!(
            parse_point_arg("4/3,4/3").unwrap(),
            Point::new(ratio(4, 3), ratio(4, 3))
        );
        assert_eq!(parse_point_arg(" 2 , -1").unwrap(), p(2, -1));
        assert!(parse_point_arg("2").is_err());
        assert!(parse_point_arg("2/0,1").is_err());
        assert!(parse_point_arg("x,1").is_err());
    }

    #[test]
    fn smooth_roundtrip() {
        let text = "{\"harmonics\":[[0,1.0,0.0],[3,0.1,0.0]]}\n";
        assert!(is_smooth_document(text));
        let b = parse_smooth_body(text).unwrap();
        assert_eq!(parse_smooth_body(&emit_smooth_body(&b)).unwrap(), b);
        assert!(parse_smooth_body("{\"harmonics\":[[0,1.0,0.0],[3,0.2,0.0]]}").is_err());
    }
}
