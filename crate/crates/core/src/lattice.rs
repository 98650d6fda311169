//! Lattice points, triangles and convex lattice polygons.
//!
//! Coordinates are `i64`; every polygon handled here is tiny and all derived
//! quantities (twice areas, determinants) stay far below overflow.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Pt {
    pub x: i64,
    pub y: i64,
}

pub const fn pt(x: i64, y: i64) -> Pt {
    Pt { x, y }
}

impl Pt {
    pub fn sub(self, o: Pt) -> Pt {
        pt(self.x - o.x, self.y - o.y)
    }
    pub fn add(self, o: Pt) -> Pt {
        pt(self.x + o.x, self.y + o.y)
    }
    pub fn scale(self, k: i64) -> Pt {
        pt(self.x * k, self.y * k)
    }
    pub fn neg(self) -> Pt {
        pt(-self.x, -self.y)
    }
    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }
    /// Primitive vector in the same direction; zero stays zero.
    pub fn primitive(self) -> Pt {
        let g = lattice_length(self);
        if g == 0 {
            self
        } else {
            pt(self.x / g, self.y / g)
        }
    }
    /// Rotation by -90 degrees.
    pub fn rot_cw(self) -> Pt {
        pt(self.y, -self.x)
    }
    /// Rotation by +90 degrees.
    pub fn rot_ccw(self) -> Pt {
        pt(-self.y, self.x)
    }
}

impl fmt::Display for Pt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

pub fn cross(a: Pt, b: Pt) -> i64 {
    a.x * b.y - a.y * b.x
}

pub fn dot(a: Pt, b: Pt) -> i64 {
    a.x * b.x + a.y * b.y
}

/// gcd of the absolute coordinates.
pub fn lattice_length(v: Pt) -> i64 {
    v.x.abs().gcd(&v.y.abs())
}

/// Twice the signed area of `abc`; positive when counterclockwise.
pub fn orient(a: Pt, b: Pt, c: Pt) -> i64 {
    cross(b.sub(a), c.sub(a))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LatticeTriangle(pub [Pt; 3]);

impl LatticeTriangle {
    pub fn new(a: Pt, b: Pt, c: Pt) -> Self {
        Self([a, b, c])
    }

    pub fn twice_area(&self) -> i64 {
        let [a, b, c] = self.0;
        orient(a, b, c).abs()
    }

    pub fn boundary_points(&self) -> i64 {
        let [a, b, c] = self.0;
        lattice_length(b.sub(a)) + lattice_length(c.sub(b)) + lattice_length(a.sub(c))
    }
}

/// `|det|` of two edge vectors, the Mikhalkin multiplicity of the dual vertex.
pub fn triangle_multiplicity(t: &LatticeTriangle) -> Result<i64> {
    match t.twice_area() {
        0 => Err(Error::DegenerateTriangle),
        m => Ok(m),
    }
}

/// Lattice points strictly inside `t`, via Pick's formula.
pub fn interior_points(t: &LatticeTriangle) -> Result<i64> {
    let a2 = triangle_multiplicity(t)?;
    Ok((a2 - t.boundary_points() + 2) / 2)
}

/// Convex lattice polygon: counterclockwise, no collinear triples, smallest
/// vertex (lexicographically) first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePolygon {
    vertices: Vec<Pt>,
}

impl LatticePolygon {
    /// Convex hull of the given points in canonical form.
    pub fn hull(points: &[Pt]) -> Result<Self> {
        let mut ps = points.to_vec();
        ps.sort();
        ps.dedup();
        if ps.len() < 3 {
            return Err(Error::DegeneratePolygon);
        }
        let mut lower: Vec<Pt> = Vec::new();
        for &p in &ps {
            while lower.len() >= 2 && orient(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0
            {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<Pt> = Vec::new();
        for &p in ps.iter().rev() {
            while upper.len() >= 2 && orient(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0
            {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        if lower.len() < 3 {
            return Err(Error::DegeneratePolygon);
        }
        Ok(Self { vertices: lower })
    }

    /// Polygon from a vertex list that must already be convex (any rotation or
    /// orientation is accepted).
    pub fn from_vertices(vs: &[Pt]) -> Result<Self> {
        let p = Self::hull(vs)?;
        let mut sorted = vs.to_vec();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != p.vertices.len() {
            return Err(Error::PolygonParse(
                "vertices are not in convex position".into(),
            ));
        }
        Ok(p)
    }

    /// `conv{(0,0), (d,0), (0,d)}`.
    pub fn triangle(d: i64) -> Result<Self> {
        Self::hull(&[pt(0, 0), pt(d, 0), pt(0, d)])
    }

    pub fn vertices(&self) -> &[Pt] {
        &self.vertices
    }

    /// Edges as `(start, end)` in counterclockwise order.
    pub fn edges(&self) -> impl Iterator<Item = (Pt, Pt)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn twice_area(&self) -> i64 {
        self.edges().map(|(a, b)| cross(a, b)).sum()
    }

    /// True if `p` lies in the closed polygon.
    pub fn contains(&self, p: Pt) -> bool {
        self.edges().all(|(a, b)| orient(a, b, p) >= 0)
    }

    /// True if `p` lies on the boundary.
    pub fn on_boundary(&self, p: Pt) -> bool {
        self.contains(p) && self.edges().any(|(a, b)| orient(a, b, p) == 0)
    }

    /// The polygon edge containing the segment `[a, b]`, if any.
    pub fn edge_containing(&self, a: Pt, b: Pt) -> Option<(Pt, Pt)> {
        self.edges()
            .find(|&(u, v)| orient(u, v, a) == 0 && orient(u, v, b) == 0)
            .filter(|_| self.contains(a) && self.contains(b))
    }

    pub fn bounding_box(&self) -> (Pt, Pt) {
        let xs = self.vertices.iter().map(|p| p.x);
        let ys = self.vertices.iter().map(|p| p.y);
        (
            pt(xs.clone().min().unwrap(), ys.clone().min().unwrap()),
            pt(xs.max().unwrap(), ys.max().unwrap()),
        )
    }

    /// Largest coordinate span of the bounding box.
    pub fn span(&self) -> i64 {
        let (lo, hi) = self.bounding_box();
        (hi.x - lo.x).max(hi.y - lo.y)
    }

    /// All lattice points of the closed polygon in lexicographic order.
    pub fn lattice_points(&self) -> Vec<Pt> {
        let (lo, hi) = self.bounding_box();
        let mut out = Vec::new();
        for x in lo.x..=hi.x {
            for y in lo.y..=hi.y {
                let p = pt(x, y);
                if self.contains(p) {
                    out.push(p);
                }
            }
        }
        out
    }

    pub fn interior_point_count(&self) -> i64 {
        (self.twice_area() - boundary_points(self).unwrap_or(0) + 2) / 2
    }

    pub fn translate(&self, by: Pt) -> Self {
        Self {
            vertices: self.vertices.iter().map(|p| p.add(by)).collect(),
        }
    }
}

/// `|∂P|`: number of boundary lattice points, the sum of edge lattice lengths.
pub fn boundary_points(p: &LatticePolygon) -> Result<i64> {
    if p.twice_area() == 0 {
        return Err(Error::DegeneratePolygon);
    }
    Ok(p.edges().map(|(a, b)| lattice_length(b.sub(a))).sum())
}

impl fmt::Display for LatticePolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let [a, b, c] = self.vertices[..] {
            if a == pt(0, 0) && b.y == 0 && b.x > 0 && c == pt(0, b.x) {
                return write!(f, "triangle:{}", b.x);
            }
        }
        write!(f, "poly:")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for LatticePolygon {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(d) = s.strip_prefix("triangle:") {
            let d: i64 = d
                .trim()
                .parse()
                .map_err(|_| Error::PolygonParse(format!("bad degree {d:?}")))?;
            if d < 1 {
                return Err(Error::PolygonParse("degree must be positive".into()));
            }
            return Self::triangle(d);
        }
        let body = s.strip_prefix("poly:").ok_or_else(|| {
            Error::PolygonParse(format!("expected triangle:d or poly:..., got {s:?}"))
        })?;
        let mut vs = Vec::new();
        for tok in body.split(';') {
            let inner = tok
                .trim()
                .strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(|| Error::PolygonParse(format!("bad vertex {tok:?}")))?;
            let (x, y) = inner
                .split_once(',')
                .ok_or_else(|| Error::PolygonParse(format!("bad vertex {tok:?}")))?;
            let parse = |v: &str| {
                v.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::PolygonParse(format!("bad coordinate {v:?}")))
            };
            vs.push(pt(parse(x)?, parse(y)?));
        }
        Self::from_vertices(&vs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> LatticeTriangle {
        LatticeTriangle::new(pt(a.0, a.1), pt(b.0, b.1), pt(c.0, c.1))
    }

    #[test]
    fn lengths() {
        assert_eq!(lattice_length(pt(2, 4)), 2);
        assert_eq!(lattice_length(pt(1, 0)), 1);
        assert_eq!(lattice_length(pt(0, 0)), 0);
        assert_eq!(lattice_length(pt(-3, 6)), 3);
    }

    #[test]
    fn boundary_counts() {
        for (d, want) in [(3, 9), (1, 3), (4, 12)] {
            assert_eq!(
                boundary_points(&LatticePolygon::triangle(d).unwrap()).unwrap(),
                want
            );
        }
    }

    #[test]
    fn triangle_counts() {
        assert_eq!(interior_points(&tri((0, 0), (1, 0), (0, 1))).unwrap(), 0);
        assert_eq!(interior_points(&tri((1, 0), (0, 1), (2, 2))).unwrap(), 1);
        assert_eq!(interior_points(&tri((0, 0), (1, 0), (0, 3))).unwrap(), 0);
        assert_eq!(
            triangle_multiplicity(&tri((0, 0), (1, 0), (0, 1))).unwrap(),
            1
        );
        assert_eq!(
            triangle_multiplicity(&tri((0, 0), (2, 0), (0, 2))).unwrap(),
            4
        );
        assert_eq!(
            triangle_multiplicity(&tri((1, 0), (0, 1), (2, 2))).unwrap(),
            3
        );
        assert!(interior_points(&tri((0, 0), (1, 1), (2, 2))).is_err());
    }

    #[test]
    fn canonical_polygon() {
        let p: LatticePolygon = "poly:(2,0);(0,2);(0,0)".parse().unwrap();
        assert_eq!(p.vertices(), &[pt(0, 0), pt(2, 0), pt(0, 2)]);
        assert_eq!(p.to_string(), "triangle:2");
        let sq: LatticePolygon = "poly:(1,1);(0,1);(0,0);(1,0)".parse().unwrap();
        assert_eq!(sq.to_string(), "poly:(0,0);(1,0);(1,1);(0,1)");
        assert_eq!(sq.to_string().parse::<LatticePolygon>().unwrap(), sq);
        assert!("poly:(0,0);(1,1);(2,2)".parse::<LatticePolygon>().is_err());
        assert!("poly:(0,0);(2,0);(1,0);(0,2)"
            .parse::<LatticePolygon>()
            .is_err());
        assert!("triangle:0".parse::<LatticePolygon>().is_err());
        assert!("square:3".parse::<LatticePolygon>().is_err());
    }

    #[test]
    fn triangle_points() {
        let p = LatticePolygon::triangle(3).unwrap();
        assert_eq!(p.lattice_points().len(), 10);
        assert_eq!(p.interior_point_count(), 1);
        assert!(p.on_boundary(pt(1, 2)));
        assert!(!p.on_boundary(pt(1, 1)));
        assert_eq!(
            p.edge_containing(pt(1, 0), pt(3, 0)),
            Some((pt(0, 0), pt(3, 0)))
        );
        assert_eq!(p.edge_containing(pt(1, 0), pt(0, 1)), None);
    }
}
