//! Typed point conditions and their text form.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{boundary_points, pt, LatticePolygon, Pt};

/// A side of the polygon, named by its outward normal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Bottom,
    Left,
    Diag,
}

impl Side {
    pub const ALL: [Side; 3] = [Side::Bottom, Side::Left, Side::Diag];

    /// Primitive outward normal; also the direction of an end dual to this side.
    pub fn normal(self) -> Pt {
        match self {
            Side::Bottom => pt(0, -1),
            Side::Left => pt(-1, 0),
            Side::Diag => pt(1, 1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::Bottom => "bottom",
            Side::Left => "left",
            Side::Diag => "diag",
        }
    }

    pub fn parse(s: &str) -> Option<Side> {
        Side::ALL.into_iter().find(|side| side.name() == s)
    }

    /// The side of `p` with this outward normal, as `(start, end)` counterclockwise.
    pub fn edge_of(self, p: &LatticePolygon) -> Option<(Pt, Pt)> {
        let n = self.normal();
        p.edges().find(|&(a, b)| {
            let out = b.sub(a).rot_cw().primitive();
            out == n
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Condition {
    InteriorSimple,
    /// A conjugate pair of interior points, reduced to one double point.
    InteriorPair,
    /// Tangency of order `order` to the boundary divisor of `side` at a fixed point.
    BoundaryTangency {
        side: Side,
        order: u64,
    },
    /// A conjugate pair of points on the boundary divisor of `side`.
    BoundaryPair {
        side: Side,
    },
}

impl Condition {
    /// Contribution to the dimension count.
    pub fn dimension(&self) -> i64 {
        match *self {
            Condition::InteriorSimple => 1,
            Condition::InteriorPair => 2,
            Condition::BoundaryTangency { order, .. } => order as i64,
            Condition::BoundaryPair { .. } => 2,
        }
    }

    /// Weight and side of the fixed end realizing a boundary condition.
    pub fn fixed_end(&self) -> Option<(Side, u64)> {
        match *self {
            Condition::BoundaryTangency { side, order } => Some((side, order)),
            Condition::BoundaryPair { side } => Some((side, 2)),
            _ => None,
        }
    }

    pub fn is_interior(&self) -> bool {
        matches!(self, Condition::InteriorSimple | Condition::InteriorPair)
    }

    /// Multiplicity of the reduced point (2 for conjugate pairs).
    pub fn multiplicity(&self) -> u8 {
        match self {
            Condition::InteriorPair | Condition::BoundaryPair { .. } => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::InteriorSimple => write!(f, "int"),
            Condition::InteriorPair => write!(f, "pair"),
            Condition::BoundaryTangency { side, order } => write!(f, "bnd:{}:{order}", side.name()),
            Condition::BoundaryPair { side } => write!(f, "pairbnd:{}", side.name()),
        }
    }
}

/// Ordered list of reduced conditions; the order is the order of the reduced
/// points along the configuration line.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PointConditionType(pub Vec<Condition>);

impl PointConditionType {
    pub fn interior(n: usize) -> Self {
        Self(vec![Condition::InteriorSimple; n])
    }

    /// `n - 1` simple points with a pair inserted at 1-based position `pos`.
    pub fn with_pair_at(n: usize, pos: usize) -> Self {
        let mut v = vec![Condition::InteriorSimple; n - 1];
        v.insert(pos - 1, Condition::InteriorPair);
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dimension(&self) -> i64 {
        self.0.iter().map(Condition::dimension).sum()
    }

    /// Checks `sum of dimensions = |∂P| + g - 1` and that named sides exist.
    pub fn check_balance(&self, p: &LatticePolygon, g: i64) -> Result<()> {
        let expected = boundary_points(p)? + g - 1;
        let got = self.dimension();
        if expected != got {
            return Err(Error::DimensionMismatch { expected, got });
        }
        for c in &self.0 {
            if let Some((side, w)) = c.fixed_end() {
                let (a, b) = side.edge_of(p).ok_or_else(|| {
                    Error::Invalid(format!("polygon has no {} side", side.name()))
                })?;
                if crate::lattice::lattice_length(b.sub(a)) < w as i64 {
                    return Err(Error::Invalid(format!(
                        "{} side too short for a fixed end of weight {w}",
                        side.name()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Parses the comma-separated grammar `int*K`, `int`, `pair@P`,
    /// `bnd:SIDE:M`, `pairbnd:SIDE`. Pair positions are 1-based positions in the
    /// final list; the remaining tokens fill the other slots left to right.
    pub fn parse(text: &str) -> Result<Self> {
        let mut seq = Vec::new();
        let mut pinned: Vec<(usize, Condition)> = Vec::new();
        let mut offset = 0;
        for tok in text.split(',') {
            let at = offset;
            offset += tok.len() + 1;
            let t = tok.trim();
            let err =
                |msg: &str| Error::Invalid(format!("parse error at position {at}: {msg} in {t:?}"));
            if t.is_empty() {
                return Err(err("empty token"));
            }
            if t == "int" {
                seq.push(Condition::InteriorSimple);
            } else if let Some(k) = t.strip_prefix("int*") {
                let k: usize = k.parse().map_err(|_| err("bad count"))?;
                seq.extend(std::iter::repeat_n(Condition::InteriorSimple, k));
            } else if let Some(p) = t.strip_prefix("pair@") {
                let p: usize = p.parse().map_err(|_| err("bad position"))?;
                if p == 0 {
                    return Err(err("positions are 1-based"));
                }
                pinned.push((p, Condition::InteriorPair));
            } else if t == "pair" {
                seq.push(Condition::InteriorPair);
            } else if let Some(rest) = t.strip_prefix("bnd:") {
                let (side, m) = rest
                    .split_once(':')
                    .ok_or_else(|| err("expected bnd:SIDE:M"))?;
                let side = Side::parse(side).ok_or_else(|| err("unknown side"))?;
                let order: u64 = m.parse().map_err(|_| err("bad order"))?;
                if order == 0 {
                    return Err(err("order must be positive"));
                }
                seq.push(Condition::BoundaryTangency { side, order });
            } else if let Some(side) = t.strip_prefix("pairbnd:") {
                let side = Side::parse(side).ok_or_else(|| err("unknown side"))?;
                seq.push(Condition::BoundaryPair { side });
            } else {
                return Err(err("unknown token"));
            }
        }
        pinned.sort_by_key(|&(p, _)| p);
        let total = seq.len() + pinned.len();
        let mut out = Vec::with_capacity(total);
        let mut rest = seq.into_iter();
        let mut pins = pinned.into_iter().peekable();
        for pos in 1..=total {
            if pins.peek().map(|&(p, _)| p) == Some(pos) {
                out.push(pins.next().unwrap().1);
                if pins.peek().map(|&(p, _)| p) == Some(pos) {
                    return Err(Error::Invalid(format!(
                        "two pairs pinned at position {pos}"
                    )));
                }
            } else if let Some(c) = rest.next() {
                out.push(c);
            } else {
                break;
            }
        }
        if let Some((p, _)) = pins.next() {
            return Err(Error::Invalid(format!(
                "pair position {p} exceeds the number of conditions {total}"
            )));
        }
        Ok(Self(out))
    }
}

impl fmt::Display for PointConditionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}
