//! Floor diagrams for the degree-d triangle with tangency to the left side.
//!
//! Floors are numbered in their order. Edges point from a smaller floor to a
//! larger one; ends point into a sink that comes after every floor. Marks are
//! numbered in the same direction, so the conditions of a
//! [`PointConditionType`] are read from the last to the first: slot `j` of a
//! diagram with `n` marks carries condition `n - 1 - j`. Boundary conditions,
//! which come first in the condition order, land on ends.

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::conditions::{Condition, PointConditionType, Side};
use crate::error::{Error, Result};
use crate::qpoly::{qint, QPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FloorEdge {
    pub src: usize,
    pub dst: usize,
    pub weight: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FloorEnd {
    pub floor: usize,
    pub weight: u64,
    /// Index of the boundary condition fixing this end.
    pub fixed: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FloorDiagram {
    pub floors: usize,
    pub edges: Vec<FloorEdge>,
    pub ends: Vec<FloorEnd>,
}

impl FloorDiagram {
    /// Outgoing weight (edges and ends) minus incoming weight.
    pub fn divergence(&self, f: usize) -> i64 {
        let out: u64 = self
            .edges
            .iter()
            .filter(|e| e.src == f)
            .map(|e| e.weight)
            .sum::<u64>()
            + self
                .ends
                .iter()
                .filter(|e| e.floor == f)
                .map(|e| e.weight)
                .sum::<u64>();
        let inc: u64 = self
            .edges
            .iter()
            .filter(|e| e.dst == f)
            .map(|e| e.weight)
            .sum();
        out as i64 - inc as i64
    }

    /// First Betti number of the floors and bounded edges.
    pub fn genus(&self) -> i64 {
        self.edges.len() as i64 - self.floors as i64 + 1
    }

    pub fn is_connected(&self) -> bool {
        let mut comp: Vec<usize> = (0..self.floors).collect();
        fn root(c: &mut [usize], mut x: usize) -> usize {
            while c[x] != x {
                c[x] = c[c[x]];
                x = c[x];
            }
            x
        }
        for e in &self.edges {
            let (a, b) = (root(&mut comp, e.src), root(&mut comp, e.dst));
            comp[a] = b;
        }
        let r = root(&mut comp, 0);
        (0..self.floors).all(|f| root(&mut comp, f) == r)
    }

    pub fn degree(&self) -> u64 {
        self.ends.iter().map(|e| e.weight).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "lowercase")]
pub enum Mark {
    Floor(usize),
    Edge(usize),
    End(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MarkedFloorDiagram {
    pub diagram: FloorDiagram,
    /// Object carrying each mark, in slot order.
    pub marks: Vec<Mark>,
}

impl MarkedFloorDiagram {
    pub fn to_json(&self) -> Value {
        json!({
            "floors": self.diagram.floors,
            "edges": self.diagram.edges.iter().map(|e| json!([e.src, e.dst, e.weight])).collect::<Vec<_>>(),
            "ends": self.diagram.ends.iter().map(|e| json!({"floor": e.floor, "weight": e.weight, "fixed": e.fixed})).collect::<Vec<_>>(),
            "marks": self.marks,
        })
    }
}

/// Tangency orders of the fixed ends, by condition index.
fn profile(d: u64, g: i64, conds: &PointConditionType) -> Result<Vec<Option<u64>>> {
    let mut out = Vec::with_capacity(conds.len());
    for c in &conds.0 {
        out.push(match *c {
            Condition::InteriorSimple => None,
            Condition::BoundaryTangency {
                side: Side::Left,
                order,
            } => Some(order),
            other => {
                return Err(Error::ProfileMismatch(format!(
                    "floor diagrams take interior points and left tangencies only, got {other}"
                )))
            }
        });
    }
    let total: i64 = conds.dimension();
    let expected = 3 * d as i64 + g - 1;
    if total != expected {
        return Err(Error::ProfileMismatch(format!(
            "conditions have dimension {total}, expected {expected}"
        )));
    }
    let fixed: u64 = out.iter().flatten().sum();
    if fixed > d {
        return Err(Error::ProfileMismatch(format!(
            "tangency orders sum to {fixed} > {d}"
        )));
    }
    if g < 0 {
        return Err(Error::ProfileMismatch("negative genus".into()));
    }
    Ok(out)
}

/// All marked floor diagrams of degree `d` and genus `g` for the condition
/// sequence `conds`.
pub fn enumerate_floor_diagrams(
    d: u64,
    g: i64,
    conds: &PointConditionType,
) -> Result<Vec<MarkedFloorDiagram>> {
    if d == 0 {
        return Err(Error::ProfileMismatch("degree must be positive".into()));
    }
    let prof = profile(d, g, conds)?;
    let n = prof.len();
    let slots: Vec<Option<(usize, u64)>> = (0..n)
        .map(|j| prof[n - 1 - j].map(|w| (n - 1 - j, w)))
        .collect();
    let fixed_weight: u64 = prof.iter().flatten().sum();
    let mut st = Fd {
        d,
        slots,
        floors_left: d as usize,
        edges_left: (d as i64 - 1 + g) as usize,
        free_ends_left: (d - fixed_weight) as usize,
        inw: Vec::new(),
        outw: Vec::new(),
        diagram: FloorDiagram {
            floors: 0,
            edges: Vec::new(),
            ends: Vec::new(),
        },
        open: Vec::new(),
        marks: Vec::new(),
        out: Vec::new(),
    };
    if st.edges_left + d as usize + st.free_ends_left + prof.iter().flatten().count() != n {
        return Err(Error::ProfileMismatch(
            "number of marks does not match the number of conditions".into(),
        ));
    }
    st.rec(0);
    Ok(st.out)
}

struct Fd {
    d: u64,
    slots: Vec<Option<(usize, u64)>>,
    floors_left: usize,
    edges_left: usize,
    free_ends_left: usize,
    inw: Vec<u64>,
    outw: Vec<u64>,
    diagram: FloorDiagram,
    /// Edges whose target floor is not placed yet.
    open: Vec<usize>,
    marks: Vec<Mark>,
    out: Vec<MarkedFloorDiagram>,
}

impl Fd {
    fn room(&self, f: usize, w: u64) -> bool {
        self.outw[f] + w <= self.inw[f] + 1
    }

    fn rec(&mut self, j: usize) {
        if j == self.slots.len() {
            let dia = &self.diagram;
            if self.open.is_empty()
                && (0..dia.floors).all(|f| self.outw[f] == self.inw[f] + 1)
                && dia.is_connected()
            {
                self.out.push(MarkedFloorDiagram {
                    diagram: dia.clone(),
                    marks: self.marks.clone(),
                });
            }
            return;
        }
        if !self.open.is_empty() && self.floors_left == 0 {
            return;
        }
        if let Some((cond, w)) = self.slots[j] {
            for f in 0..self.diagram.floors {
                if self.room(f, w) {
                    self.end(j, f, w, Some(cond));
                }
            }
            return;
        }
        if self.floors_left > 0 {
            let k = self.open.len();
            for mask in 0u64..(1 << k) {
                self.floor(j, mask);
            }
        }
        if self.edges_left > 0 {
            for f in 0..self.diagram.floors {
                for w in 1..=self.d {
                    if !self.room(f, w) {
                        break;
                    }
                    let e = self.diagram.edges.len();
                    self.diagram.edges.push(FloorEdge {
                        src: f,
                        dst: usize::MAX,
                        weight: w,
                    });
                    self.outw[f] += w;
                    self.open.push(e);
                    self.marks.push(Mark::Edge(e));
                    self.edges_left -= 1;
                    self.rec(j + 1);
                    self.edges_left += 1;
                    self.marks.pop();
                    self.open.pop();
                    self.outw[f] -= w;
                    self.diagram.edges.pop();
                }
            }
        }
        if self.free_ends_left > 0 {
            for f in 0..self.diagram.floors {
                if self.room(f, 1) {
                    self.free_ends_left -= 1;
                    self.end(j, f, 1, None);
                    self.free_ends_left += 1;
                }
            }
        }
    }

    fn end(&mut self, j: usize, f: usize, w: u64, fixed: Option<usize>) {
        let e = self.diagram.ends.len();
        self.diagram.ends.push(FloorEnd {
            floor: f,
            weight: w,
            fixed,
        });
        self.outw[f] += w;
        self.marks.push(Mark::End(e));
        self.rec(j + 1);
        self.marks.pop();
        self.outw[f] -= w;
        self.diagram.ends.pop();
    }

    fn floor(&mut self, j: usize, mask: u64) {
        let f = self.diagram.floors;
        let taken: Vec<usize> = (0..self.open.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.open[i])
            .collect();
        let kept: Vec<usize> = (0..self.open.len())
            .filter(|i| mask >> i & 1 == 0)
            .map(|i| self.open[i])
            .collect();
        let inw: u64 = taken.iter().map(|&e| self.diagram.edges[e].weight).sum();
        for &e in &taken {
            self.diagram.edges[e].dst = f;
        }
        let saved = std::mem::replace(&mut self.open, kept);
        self.diagram.floors += 1;
        self.inw.push(inw);
        self.outw.push(0);
        self.floors_left -= 1;
        self.marks.push(Mark::Floor(f));
        self.rec(j + 1);
        self.marks.pop();
        self.floors_left += 1;
        self.outw.pop();
        self.inw.pop();
        self.diagram.floors -= 1;
        self.open = saved;
        for &e in &taken {
            self.diagram.edges[e].dst = usize::MAX;
        }
    }
}

/// Product of `[w]^2` over bounded edges.
pub fn fd_refined_multiplicity(m: &MarkedFloorDiagram) -> QPoly {
    let mut p = QPoly::one();
    for e in &m.diagram.edges {
        let w = qint(e.weight as i64).expect("edge weights are positive");
        p = &p * &(&w * &w);
    }
    p
}

/// Classical multiplicity: product of squared weights.
pub fn fd_multiplicity(m: &MarkedFloorDiagram) -> BigInt {
    m.diagram
        .edges
        .iter()
        .map(|e| BigInt::from(e.weight * e.weight))
        .product()
}

/// Relative refined invariant of the degree-`d` triangle as a sum over
/// marked floor diagrams, with the number of diagrams.
pub fn relative_refined_fd(d: u64, g: i64, conds: &PointConditionType) -> Result<(QPoly, usize)> {
    let all = enumerate_floor_diagrams(d, g, conds)?;
    let mut total = QPoly::zero();
    for m in &all {
        total += &fd_refined_multiplicity(m);
    }
    Ok((total, all.len()))
}
