//! Turning a subdivision into the dual curve.

use std::collections::{BTreeMap, BTreeSet};

use crate::conditions::Condition;
use crate::lattice::{lattice_length, LatticePolygon, Pt};
use crate::tropcurve::{
    canonical_subdivision, BoundedEdge, Cell, EdgeRef, End, MarkLocation, Marking,
    PlaneTropicalCurve,
};

/// Unordered lattice segment.
pub type Seg = (Pt, Pt);

pub fn seg(a: Pt, b: Pt) -> Seg {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Where a condition sits on the subdivision side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Anchor {
    /// The curve edge dual to this segment.
    Segment(Pt, Pt),
    /// The vertex dual to this triangle (given by its vertices).
    Triangle(Pt, Pt, Pt),
}

/// Builds the dual curve of a subdivision of `p`. Returns `None` when the
/// curve is disconnected.
pub fn assemble(
    p: &LatticePolygon,
    cells: Vec<Cell>,
    anchors: &[(usize, Condition, Anchor)],
) -> Option<PlaneTropicalCurve> {
    assemble_with_map(p, cells, anchors).map(|(c, _)| c)
}

/// As [`assemble`], also returning the curve edge dual to every segment.
pub fn assemble_with_map(
    p: &LatticePolygon,
    cells: Vec<Cell>,
    anchors: &[(usize, Condition, Anchor)],
) -> Option<(PlaneTropicalCurve, BTreeMap<Seg, EdgeRef>)> {
    debug_assert_eq!(
        cells.iter().map(Cell::twice_area).sum::<i64>(),
        p.twice_area(),
        "cells do not tile the polygon"
    );
    let mut cells = cells;
    cells.sort();
    let mut by_seg: BTreeMap<Seg, Vec<usize>> = BTreeMap::new();
    for (i, c) in cells.iter().enumerate() {
        for (a, b) in c.sides() {
            by_seg.entry(seg(a, b)).or_default().push(i);
        }
    }
    let n_tri = cells
        .iter()
        .take_while(|c| matches!(c, Cell::Triangle(_)))
        .count();

    let mut edges: Vec<BoundedEdge> = Vec::new();
    let mut ends: Vec<End> = Vec::new();
    let mut seg_edge: BTreeMap<Seg, EdgeRef> = BTreeMap::new();
    let mut seen_bounded: BTreeSet<Vec<Seg>> = BTreeSet::new();

    for v in 0..n_tri {
        for (a, b) in cells[v].sides() {
            let dir_vec = b.sub(a).rot_cw();
            let weight = lattice_length(dir_vec) as u64;
            let direction = dir_vec.primitive();
            let mut chain = vec![seg(a, b)];
            let mut cur_cell = v;
            let mut cur = seg(a, b);
            let target = loop {
                let other = by_seg[&cur].iter().copied().find(|&c| c != cur_cell);
                match other {
                    None => break None,
                    Some(c) if c < n_tri => break Some(c),
                    Some(c) => {
                        let opp = opposite_side(&cells[c], cur);
                        chain.push(opp);
                        cur_cell = c;
                        cur = opp;
                    }
                }
            };
            match target {
                None => {
                    debug_assert!(p.edge_containing(cur.0, cur.1).is_some());
                    let r = EdgeRef::End(ends.len());
                    ends.push(End {
                        vertex: v,
                        weight,
                        direction,
                    });
                    for s in chain {
                        seg_edge.insert(s, r);
                    }
                }
                Some(w) => {
                    let mut key = chain.clone();
                    key.sort();
                    if seen_bounded.insert(key) {
                        let r = EdgeRef::Bounded(edges.len());
                        edges.push(BoundedEdge {
                            ends: [v, w],
                            weight,
                            direction,
                        });
                        for s in chain {
                            seg_edge.insert(s, r);
                        }
                    }
                }
            }
        }
    }
    // Every boundary segment must be reached from a triangle; otherwise a
    // straight line component runs through parallelograms only.
    let boundary_segs = by_seg.iter().filter(|(_, cs)| cs.len() == 1).count();
    if boundary_segs != ends.len() {
        return None;
    }

    let tri_index: BTreeMap<Vec<Pt>, usize> = cells[..n_tri]
        .iter()
        .enumerate()
        .map(|(i, c)| (c.vertices().to_vec(), i))
        .collect();
    let mut markings = Vec::with_capacity(anchors.len());
    for &(condition, kind, anchor) in anchors {
        let location = match anchor {
            Anchor::Segment(a, b) => {
                let r = *seg_edge.get(&seg(a, b))?;
                match (kind.fixed_end(), r) {
                    (Some(_), EdgeRef::End(e)) => MarkLocation::FixedEnd(e),
                    _ => MarkLocation::Edge {
                        edge: r,
                        point: None,
                    },
                }
            }
            Anchor::Triangle(a, b, c) => {
                let t = Cell::triangle(a, b, c);
                MarkLocation::Vertex(*tri_index.get(t.vertices())?)
            }
        };
        markings.push(Marking {
            condition,
            kind,
            location,
        });
    }

    let curve = PlaneTropicalCurve {
        positions: vec![None; n_tri],
        edges,
        ends,
        markings,
        subdivision: Some(canonical_subdivision(p.clone(), cells)),
    };
    curve.is_connected().then_some((curve, seg_edge))
}

fn opposite_side(c: &Cell, s: Seg) -> Seg {
    let sides = c.sides();
    let i = sides.iter().position(|&(a, b)| seg(a, b) == s).unwrap();
    let (a, b) = sides[(i + 2) % 4];
    seg(a, b)
}
