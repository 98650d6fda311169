//! Combinatorial plane tropical curves and the per-curve weight formulas.
//!
//! Vertices are indexed `0..n`. A bounded edge stores the primitive direction
//! pointing from `ends[0]` to `ends[1]`; an end stores its outgoing primitive
//! direction. Positions are optional: every weight formula here is purely
//! combinatorial.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::conditions::Condition;
use crate::error::{Error, Result};
use crate::lattice::{cross, lattice_length, orient, pt, LatticePolygon, LatticeTriangle, Pt};
use crate::qpoly::QProduct;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QPoint {
    pub x: BigRational,
    pub y: BigRational,
}

impl QPoint {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        Self { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Self::new(
            BigRational::from_integer(x.into()),
            BigRational::from_integer(y.into()),
        )
    }

    pub fn to_json(&self) -> Value {
        json!([self.x.to_string(), self.y.to_string()])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum EdgeRef {
    Bounded(usize),
    End(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundedEdge {
    pub ends: [usize; 2],
    pub weight: u64,
    /// Primitive direction from `ends[0]` to `ends[1]`.
    pub direction: Pt,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct End {
    pub vertex: usize,
    pub weight: u64,
    /// Primitive outgoing direction.
    pub direction: Pt,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MarkLocation {
    /// Interior point of an edge or end.
    Edge {
        edge: EdgeRef,
        point: Option<QPoint>,
    },
    /// A vertex (only for double points).
    Vertex(usize),
    /// A fixed end; the condition sits at its point at infinity.
    FixedEnd(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Marking {
    pub condition: usize,
    pub kind: Condition,
    pub location: MarkLocation,
}

/// A 2-cell of a dual subdivision, vertices counterclockwise starting from the
/// smallest.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cell {
    Triangle([Pt; 3]),
    Parallelogram([Pt; 4]),
}

fn rotate_min_first(vs: &mut [Pt]) {
    let i = (0..vs.len()).min_by_key(|&i| vs[i]).unwrap();
    vs.rotate_left(i);
}

impl Cell {
    pub fn triangle(a: Pt, b: Pt, c: Pt) -> Self {
        let mut vs = if orient(a, b, c) > 0 {
            [a, b, c]
        } else {
            [a, c, b]
        };
        rotate_min_first(&mut vs);
        Cell::Triangle(vs)
    }

    /// Parallelogram with consecutive vertices `a, b, c` (fourth is `a + c - b`).
    pub fn parallelogram(a: Pt, b: Pt, c: Pt) -> Self {
        let d = a.add(c).sub(b);
        let mut vs = if orient(a, b, c) > 0 {
            [a, b, c, d]
        } else {
            [d, c, b, a]
        };
        rotate_min_first(&mut vs);
        Cell::Parallelogram(vs)
    }

    pub fn vertices(&self) -> &[Pt] {
        match self {
            Cell::Triangle(v) => v,
            Cell::Parallelogram(v) => v,
        }
    }

    pub fn twice_area(&self) -> i64 {
        let v = self.vertices();
        (0..v.len())
            .map(|i| cross(v[i], v[(i + 1) % v.len()]))
            .sum()
    }

    /// Sides as counterclockwise `(start, end)` pairs.
    pub fn sides(&self) -> Vec<(Pt, Pt)> {
        let v = self.vertices();
        (0..v.len()).map(|i| (v[i], v[(i + 1) % v.len()])).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DualSubdivision {
    pub polygon: LatticePolygon,
    /// Sorted cells.
    pub cells: Vec<Cell>,
    /// Curve vertex index -> index into `cells`.
    pub vertex_cell: Vec<usize>,
}

impl DualSubdivision {
    pub fn to_json(&self) -> Value {
        json!({
            "polygon": self.polygon.to_string(),
            "cells": self.cells.iter().map(|c| {
                let kind = match c { Cell::Triangle(_) => "triangle", Cell::Parallelogram(_) => "parallelogram" };
                json!({"kind": kind, "vertices": c.vertices().iter().map(|p| [p.x, p.y]).collect::<Vec<_>>()})
            }).collect::<Vec<_>>(),
            "vertex_cell": self.vertex_cell,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PlaneTropicalCurve {
    pub positions: Vec<Option<QPoint>>,
    pub edges: Vec<BoundedEdge>,
    pub ends: Vec<End>,
    pub markings: Vec<Marking>,
    pub subdivision: Option<DualSubdivision>,
}

/// One incidence of an edge at a vertex: the edge, its primitive outgoing
/// direction and its weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Flag {
    pub edge: EdgeRef,
    pub direction: Pt,
    pub weight: u64,
}

impl Flag {
    pub fn vector(&self) -> Pt {
        self.direction.scale(self.weight as i64)
    }
}

/// Regular orientation: the outgoing edge of every unmarked vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    pub out_edge: Vec<Option<EdgeRef>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub balanced: bool,
    pub trivalent: bool,
    pub regular: bool,
    pub orientation: Option<Orientation>,
    pub problems: Vec<String>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.balanced && self.trivalent && self.regular
    }
}

/// A connected component of the even part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImComponent {
    pub vertices: Vec<usize>,
    pub bounded: Vec<usize>,
    pub ends: Vec<usize>,
    /// Euler characteristic of the closure of the component: each end
    /// contributes its point at infinity as a vertex.
    pub euler: i64,
    /// Number of finite vertices shared with the odd part.
    pub contacts: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParitySplit {
    pub re_vertices: BTreeSet<usize>,
    pub im_vertices: BTreeSet<usize>,
    pub components: Vec<ImComponent>,
    pub has_odd_edge: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingCheck {
    pub ok: bool,
    /// `(condition number 1..=5, description)` for each failure.
    pub reasons: Vec<(u8, String)>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }
    fn find(&mut self, a: usize) -> usize {
        let mut r = a;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = a;
        while self.0[c] != r {
            let n = self.0[c];
            self.0[c] = r;
            c = n;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

impl PlaneTropicalCurve {
    pub fn vertex_count(&self) -> usize {
        self.positions.len()
    }

    /// Incidence lists per vertex, in the order bounded edges then ends.
    pub fn flags(&self) -> Vec<Vec<Flag>> {
        let mut out = vec![Vec::new(); self.vertex_count()];
        for (i, e) in self.edges.iter().enumerate() {
            out[e.ends[0]].push(Flag {
                edge: EdgeRef::Bounded(i),
                direction: e.direction,
                weight: e.weight,
            });
            out[e.ends[1]].push(Flag {
                edge: EdgeRef::Bounded(i),
                direction: e.direction.neg(),
                weight: e.weight,
            });
        }
        for (i, e) in self.ends.iter().enumerate() {
            out[e.vertex].push(Flag {
                edge: EdgeRef::End(i),
                direction: e.direction,
                weight: e.weight,
            });
        }
        out
    }

    pub fn weight(&self, e: EdgeRef) -> u64 {
        match e {
            EdgeRef::Bounded(i) => self.edges[i].weight,
            EdgeRef::End(i) => self.ends[i].weight,
        }
    }

    /// Degree: multiset of weighted end directions, sorted.
    pub fn degree(&self) -> Vec<Pt> {
        let mut d: Vec<Pt> = self
            .ends
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.direction, e.weight as usize))
            .collect();
        d.sort();
        d
    }

    /// Number of connected components of the graph of finite vertices.
    pub fn component_count(&self) -> usize {
        let n = self.vertex_count();
        let mut uf = UnionFind::new(n);
        for e in &self.edges {
            uf.union(e.ends[0], e.ends[1]);
        }
        (0..n).filter(|&v| uf.find(v) == v).count()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// First Betti number.
    pub fn genus(&self) -> i64 {
        self.edges.len() as i64 - self.vertex_count() as i64 + self.component_count() as i64
    }

    pub fn is_trivalent(&self) -> bool {
        self.flags().iter().all(|f| f.len() == 3)
    }

    fn trivalent_flags(&self) -> Result<Vec<Vec<Flag>>> {
        let flags = self.flags();
        if flags.iter().any(|f| f.len() != 3) {
            return Err(Error::NotTrivalent);
        }
        Ok(flags)
    }

    /// Dual triangle of a trivalent vertex, anchored at the origin.
    pub fn vertex_triangle(&self, v: usize) -> Result<LatticeTriangle> {
        let flags = self.flags();
        let f = &flags[v];
        if f.len() != 3 {
            return Err(Error::NotTrivalent);
        }
        let a = pt(0, 0);
        let b = f[0].vector().rot_ccw();
        let c = b.add(f[1].vector().rot_ccw());
        let t = LatticeTriangle::new(a, b, c);
        if t.twice_area() == 0 {
            return Err(Error::FlatVertex);
        }
        Ok(t)
    }

    /// Mikhalkin multiplicity `|w1 a1 ∧ w2 a2|`.
    pub fn vertex_multiplicity(&self, v: usize) -> Result<u64> {
        Ok(self.vertex_triangle(v)?.twice_area() as u64)
    }

    /// Lattice points strictly inside the dual triangle.
    pub fn vertex_interior_points(&self, v: usize) -> Result<i64> {
        crate::lattice::interior_points(&self.vertex_triangle(v)?)
    }

    /// Which conditions are fixed ends, by end index.
    pub fn fixed_ends(&self) -> BTreeSet<usize> {
        self.markings
            .iter()
            .filter_map(|m| match m.location {
                MarkLocation::FixedEnd(e) => Some(e),
                _ => None,
            })
            .collect()
    }

    pub fn marked_vertices(&self) -> BTreeSet<usize> {
        self.markings
            .iter()
            .filter_map(|m| match m.location {
                MarkLocation::Vertex(v) => Some(v),
                _ => None,
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let pos = |p: &Option<QPoint>| p.as_ref().map(QPoint::to_json).unwrap_or(Value::Null);
        json!({
            "vertices": self.positions.iter().enumerate().map(|(i, p)| json!({"id": i, "position": pos(p)})).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| json!({"ends": e.ends, "weight": e.weight, "direction": [e.direction.x, e.direction.y]})).collect::<Vec<_>>(),
            "ends": self.ends.iter().map(|e| json!({"vertex": e.vertex, "weight": e.weight, "direction": [e.direction.x, e.direction.y]})).collect::<Vec<_>>(),
            "markings": self.markings.iter().map(|m| {
                let loc = match &m.location {
                    MarkLocation::Edge { edge, point } => json!({"edge": format!("{edge:?}"), "point": pos(point)}),
                    MarkLocation::Vertex(v) => json!({"vertex": v}),
                    MarkLocation::FixedEnd(e) => json!({"fixed_end": e}),
                };
                json!({"condition": m.condition, "kind": m.kind.to_string(), "location": loc})
            }).collect::<Vec<_>>(),
        })
    }
}

/// Balancing, trivalence, regularity and the regular orientation.
pub fn validate(curve: &PlaneTropicalCurve) -> ValidationReport {
    let flags = curve.flags();
    let mut problems = Vec::new();
    let mut balanced = true;
    for (v, fs) in flags.iter().enumerate() {
        let s = fs.iter().fold(pt(0, 0), |acc, f| acc.add(f.vector()));
        if !s.is_zero() {
            balanced = false;
            problems.push(format!("vertex {v} is unbalanced (sum {s})"));
        }
    }
    for (i, e) in curve.edges.iter().enumerate() {
        if e.ends[0] == e.ends[1] || lattice_length(e.direction) != 1 || e.weight == 0 {
            problems.push(format!("bounded edge {i} is malformed"));
            balanced = false;
        }
    }
    for (i, e) in curve.ends.iter().enumerate() {
        if lattice_length(e.direction) != 1 || e.weight == 0 {
            problems.push(format!("end {i} is malformed"));
            balanced = false;
        }
    }
    let trivalent = flags.iter().all(|f| f.len() == 3);
    if !trivalent {
        problems.push("curve is not trivalent".into());
    }
    let orientation = regular_orientation(curve, &flags);
    if let Err(msg) = &orientation {
        problems.push(msg.clone());
    }
    ValidationReport {
        balanced,
        trivalent,
        regular: orientation.is_ok(),
        orientation: orientation.ok(),
        problems,
    }
}

/// Cuts the closed curve at all markings; every piece must be a tree with
/// exactly one unmarked end. Orients edges towards that end.
fn regular_orientation(
    curve: &PlaneTropicalCurve,
    flags: &[Vec<Flag>],
) -> std::result::Result<Orientation, String> {
    let nv = curve.vertex_count();
    let ne = curve.ends.len();
    // Nodes: finite vertices, then the point at infinity of every end.
    let mut node_alive = vec![true; nv + ne];
    let mut cut = BTreeSet::new();
    for m in &curve.markings {
        match &m.location {
            MarkLocation::Edge { edge, .. } => {
                if !cut.insert(*edge) {
                    return Err(format!("two markings on {edge:?}"));
                }
            }
            MarkLocation::Vertex(v) => node_alive[*v] = false,
            MarkLocation::FixedEnd(e) => node_alive[nv + *e] = false,
        }
    }
    let mut links: Vec<(usize, usize, EdgeRef)> = Vec::new();
    for (i, e) in curve.edges.iter().enumerate() {
        links.push((e.ends[0], e.ends[1], EdgeRef::Bounded(i)));
    }
    for (i, e) in curve.ends.iter().enumerate() {
        links.push((e.vertex, nv + i, EdgeRef::End(i)));
    }
    let mut adj: Vec<Vec<(usize, EdgeRef)>> = vec![Vec::new(); nv + ne];
    let mut uf = UnionFind::new(nv + ne);
    for &(a, b, r) in &links {
        if cut.contains(&r) || !node_alive[a] || !node_alive[b] {
            continue;
        }
        adj[a].push((b, r));
        adj[b].push((a, r));
        uf.union(a, b);
    }
    let mut comp: BTreeMap<usize, (usize, usize, Vec<usize>)> = BTreeMap::new();
    for n in (0..nv + ne).filter(|&n| node_alive[n]) {
        let c = comp.entry(uf.find(n)).or_default();
        c.0 += 1;
        c.1 += adj[n].len();
        if n >= nv {
            c.2.push(n);
        }
    }
    let mut out_edge = vec![None; nv];
    for (_, (nodes, twice_edges, infs)) in comp {
        if twice_edges / 2 + 1 != nodes {
            return Err("a component of the cut curve is not simply connected".into());
        }
        if infs.len() != 1 {
            return Err(format!(
                "a component of the cut curve has {} unmarked ends",
                infs.len()
            ));
        }
        let mut stack = vec![infs[0]];
        let mut seen = BTreeSet::from([infs[0]]);
        while let Some(n) = stack.pop() {
            for &(m, r) in &adj[n] {
                if seen.insert(m) {
                    out_edge[m] = Some(r);
                    stack.push(m);
                }
            }
        }
    }
    let marked = curve.marked_vertices();
    for v in 0..nv {
        if !marked.contains(&v) && flags[v].len() == 3 && out_edge[v].is_none() {
            return Err(format!("vertex {v} has no outgoing edge"));
        }
    }
    Ok(Orientation { out_edge })
}

/// Dimension of the space of curves of degree `Δ` and genus `g` with the
/// given boundary conditions: `|Δ| + g - 1 + #interior conditions`.
pub fn moduli_dim(degree_size: i64, g: i64, conditions: &[Condition]) -> i64 {
    degree_size + g - 1 + conditions.iter().filter(|c| c.is_interior()).count() as i64
}

/// `∏_V μ(V) / ∏_ends wt(E)`.
pub fn complex_weight(curve: &PlaneTropicalCurve) -> Result<BigRational> {
    curve.trivalent_flags()?;
    let mut num = BigInt::one();
    for v in 0..curve.vertex_count() {
        num *= curve.vertex_multiplicity(v)?;
    }
    let den: BigInt = curve.ends.iter().map(|e| BigInt::from(e.weight)).product();
    Ok(BigRational::new(num, den))
}

fn raw_refined_product(curve: &PlaneTropicalCurve) -> Result<QProduct> {
    curve.trivalent_flags()?;
    let mut num = Vec::with_capacity(curve.vertex_count());
    for v in 0..curve.vertex_count() {
        num.push(curve.vertex_multiplicity(v)?);
    }
    QProduct::new(num, curve.ends.iter().map(|e| e.weight).collect())
}

/// `∏_V [μ(V)] / ∏_ends [wt(E)]`.
pub fn refined_weight(curve: &PlaneTropicalCurve) -> Result<QProduct> {
    let fixed = curve.fixed_ends();
    if let Some((_, e)) = curve
        .ends
        .iter()
        .enumerate()
        .find(|(i, e)| e.weight > 1 && !fixed.contains(i))
    {
        return Err(Error::UnfixedEndWeight(e.weight));
    }
    raw_refined_product(curve)
}

pub fn parity_split(curve: &PlaneTropicalCurve) -> ParitySplit {
    let nv = curve.vertex_count();
    let ne = curve.ends.len();
    let mut re_vertices = BTreeSet::new();
    let mut im_vertices = BTreeSet::new();
    let mut has_odd_edge = false;
    let mut uf = UnionFind::new(nv + ne);
    for e in &curve.edges {
        let set = if e.weight % 2 == 1 {
            has_odd_edge = true;
            &mut re_vertices
        } else {
            uf.union(e.ends[0], e.ends[1]);
            &mut im_vertices
        };
        set.insert(e.ends[0]);
        set.insert(e.ends[1]);
    }
    for (i, e) in curve.ends.iter().enumerate() {
        if e.weight % 2 == 1 {
            has_odd_edge = true;
            re_vertices.insert(e.vertex);
        } else {
            im_vertices.insert(e.vertex);
            uf.union(e.vertex, nv + i);
        }
    }
    let mut comps: BTreeMap<usize, ImComponent> = BTreeMap::new();
    let blank = || ImComponent {
        vertices: vec![],
        bounded: vec![],
        ends: vec![],
        euler: 0,
        contacts: 0,
    };
    for &v in &im_vertices {
        let c = comps.entry(uf.find(v)).or_insert_with(blank);
        c.vertices.push(v);
        c.euler += 1;
        if re_vertices.contains(&v) {
            c.contacts += 1;
        }
    }
    for (i, e) in curve.edges.iter().enumerate() {
        if e.weight % 2 == 0 {
            let c = comps.get_mut(&uf.find(e.ends[0])).unwrap();
            c.bounded.push(i);
            c.euler -= 1;
        }
    }
    for (i, e) in curve.ends.iter().enumerate() {
        if e.weight % 2 == 0 {
            let c = comps.get_mut(&uf.find(e.vertex)).unwrap();
            c.ends.push(i);
            // point at infinity (+1) and the end itself (-1)
        }
    }
    ParitySplit {
        re_vertices,
        im_vertices,
        components: comps.into_values().collect(),
        has_odd_edge,
    }
}

fn sign(odd: bool) -> BigRational {
    if odd {
        -BigRational::one()
    } else {
        BigRational::one()
    }
}

/// Shared product `∏_{re}(-1)^{Int(V)} · ∏_{im} μ(V)/2 · ∏_{im∖re}(-1)^{μ(V)/4}`.
fn signed_core(curve: &PlaneTropicalCurve, split: &ParitySplit) -> Result<BigRational> {
    let mut v_acc = BigRational::one();
    for &v in &split.re_vertices {
        v_acc *= sign(curve.vertex_interior_points(v)? % 2 != 0);
    }
    for &v in &split.im_vertices {
        let mu = curve.vertex_multiplicity(v)?;
        v_acc *= BigRational::new(BigInt::from(mu), BigInt::from(2));
        if !split.re_vertices.contains(&v) {
            v_acc *= sign((mu / 4) % 2 == 1);
        }
    }
    Ok(v_acc)
}

/// Signed real count of one curve; zero unless every even component `K` has
/// `χ(K) = 1` and touches the odd part at most once.
pub fn real_signed_weight(curve: &PlaneTropicalCurve, split: &ParitySplit) -> Result<BigRational> {
    curve.trivalent_flags()?;
    if !split.has_odd_edge {
        return Err(Error::EmptyRealPart);
    }
    if split
        .components
        .iter()
        .any(|k| k.euler < 1 || k.contacts > 1)
    {
        return Ok(BigRational::zero());
    }
    signed_core(curve, split)
}

/// Compares the `y -> -1` limit of the refined weight with the signed weight.
pub fn yneg1_limit_matches_signed(curve: &PlaneTropicalCurve, split: &ParitySplit) -> Result<bool> {
    if let Some(e) = curve.ends.iter().find(|e| e.weight > 2) {
        return Err(Error::Invalid(format!("end of weight {} > 2", e.weight)));
    }
    let lim = crate::qpoly::limit_yneg1(&raw_refined_product(curve)?)?;
    Ok(lim == real_signed_weight(curve, split)?)
}

/// Signed weight of a curve through simple points and interior double points,
/// with an extra `μ(V)` for each double point sitting at a vertex.
pub fn mixed_marked_weight(
    curve: &PlaneTropicalCurve,
    split: &ParitySplit,
    g: i64,
) -> Result<BigRational> {
    let check = check_vanishing_conditions(curve, split, g);
    if !check.ok {
        let why: Vec<String> = check
            .reasons
            .iter()
            .map(|(n, s)| format!("({n}) {s}"))
            .collect();
        return Err(Error::VanishingConditionsUnmet(why.join("; ")));
    }
    let mut acc = signed_core(curve, split)?;
    for v in curve.marked_vertices() {
        if split.re_vertices.contains(&v) {
            acc *= BigRational::from_integer(curve.vertex_multiplicity(v)?.into());
        }
    }
    Ok(acc)
}

/// The five nonvanishing conditions for curves through simple points and
/// interior double points.
pub fn check_vanishing_conditions(
    curve: &PlaneTropicalCurve,
    split: &ParitySplit,
    g: i64,
) -> VanishingCheck {
    let mut reasons = Vec::new();

    let excess: i64 = split
        .components
        .iter()
        .map(|k| k.contacts as i64 - k.euler)
        .sum();
    let total = curve.genus() + excess;
    if total != g {
        reasons.push((
            1,
            format!(
                "genus {} plus even excess {excess} is not {g}",
                curve.genus()
            ),
        ));
    }

    for m in &curve.markings {
        let odd = |e: &EdgeRef| curve.weight(*e) % 2 == 1;
        match (&m.kind, &m.location) {
            (Condition::InteriorSimple, MarkLocation::Edge { edge, .. }) if odd(edge) => {}
            (Condition::InteriorSimple, _) => reasons.push((
                2,
                format!("simple point {} is not inside an odd edge", m.condition),
            )),
            (Condition::InteriorPair, MarkLocation::Edge { edge, .. }) if !odd(edge) => {}
            (Condition::InteriorPair, MarkLocation::Vertex(v))
                if split.re_vertices.contains(v) && !split.im_vertices.contains(v) => {}
            (Condition::InteriorPair, _) => reasons.push((
                3,
                format!(
                    "double point {} is neither inside an even edge nor at an odd vertex",
                    m.condition
                ),
            )),
            _ => {}
        }
    }

    if let Some(e) = curve.ends.iter().find(|e| e.weight > 2) {
        reasons.push((4, format!("end of weight {}", e.weight)));
    }

    let report = validate(curve);
    if !report.trivalent {
        reasons.push((5, "not trivalent".into()));
    }
    if !report.regular {
        reasons.push((5, "not regular".into()));
    }
    let flags = curve.flags();
    for (v, fs) in flags.iter().enumerate() {
        let even = fs.iter().filter(|f| f.weight % 2 == 0).count();
        if even == 2 {
            reasons.push((5, format!("vertex {v} has exactly two even edges")));
        }
    }
    if let Some(o) = &report.orientation {
        for (v, fs) in flags.iter().enumerate() {
            let Some(out) = o.out_edge[v] else { continue };
            let incoming_odd = fs
                .iter()
                .filter(|f| f.edge != out && f.weight % 2 == 1)
                .count();
            if incoming_odd == 2 && curve.weight(out).is_multiple_of(2) {
                reasons.push((
                    5,
                    format!("vertex {v} has two incoming odd edges and an outgoing even edge"),
                ));
            }
        }
    }
    VanishingCheck {
        ok: reasons.is_empty(),
        reasons,
    }
}

/// The dual subdivision. Curves produced by the engines carry theirs; for a
/// hand-built curve the triangles are glued along bounded edges, which is
/// exact when no two edges cross.
pub fn dual_subdivision(curve: &PlaneTropicalCurve) -> Result<DualSubdivision> {
    if let Some(s) = &curve.subdivision {
        return Ok(s.clone());
    }
    let flags = curve.trivalent_flags()?;
    let nv = curve.vertex_count();
    if nv == 0 {
        return Err(Error::Invalid("curve has no vertices".into()));
    }
    // Per vertex: sides of the dual triangle, dual to each flag, relative to an offset.
    let mut local: Vec<Vec<(EdgeRef, Pt, Pt)>> = Vec::with_capacity(nv);
    for fs in &flags {
        let mut fs = fs.clone();
        fs.sort_by(|a, b| angle_cmp(a.direction, b.direction));
        let mut cur = pt(0, 0);
        let mut sides = Vec::new();
        for f in &fs {
            let nxt = cur.add(f.vector().rot_ccw());
            sides.push((f.edge, cur, nxt));
            cur = nxt;
        }
        if cross(sides[0].2.sub(sides[0].1), sides[1].2.sub(sides[1].1)) == 0 {
            return Err(Error::FlatVertex);
        }
        local.push(sides);
    }
    let mut offset: Vec<Option<Pt>> = vec![None; nv];
    for root in 0..nv {
        if offset[root].is_some() {
            continue;
        }
        offset[root] = Some(pt(0, 0));
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            let ov = offset[v].unwrap();
            for &(edge, a, b) in &local[v] {
                let EdgeRef::Bounded(i) = edge else { continue };
                let e = &curve.edges[i];
                let w = if e.ends[0] == v { e.ends[1] } else { e.ends[0] };
                if offset[w].is_some() {
                    continue;
                }
                let &(_, wa, _) = local[w].iter().find(|s| s.0 == edge).unwrap();
                // w's side is the reverse of v's side: wa + ow = b + ov.
                offset[w] = Some(b.add(ov).sub(wa));
                let _ = a;
                stack.push(w);
            }
        }
    }
    let mut cells_raw: Vec<Cell> = Vec::with_capacity(nv);
    for v in 0..nv {
        let o = offset[v].unwrap();
        let ps: Vec<Pt> = local[v].iter().map(|s| s.1.add(o)).collect();
        cells_raw.push(Cell::triangle(ps[0], ps[1], ps[2]));
    }
    let all: Vec<Pt> = cells_raw
        .iter()
        .flat_map(|c| c.vertices().to_vec())
        .collect();
    let minx = all.iter().map(|p| p.x).min().unwrap();
    let miny = all.iter().map(|p| p.y).min().unwrap();
    let shift = pt(-minx, -miny);
    let shifted: Vec<Cell> = cells_raw
        .iter()
        .map(|c| {
            let v = c.vertices();
            Cell::triangle(v[0].add(shift), v[1].add(shift), v[2].add(shift))
        })
        .collect();
    let pts: Vec<Pt> = shifted.iter().flat_map(|c| c.vertices().to_vec()).collect();
    let polygon = LatticePolygon::hull(&pts)?;
    Ok(canonical_subdivision(polygon, shifted))
}

/// Sorts cells and builds the vertex map for a list of cells in which the
/// triangles appear in curve-vertex order.
pub fn canonical_subdivision(
    polygon: LatticePolygon,
    cells_in_vertex_order: Vec<Cell>,
) -> DualSubdivision {
    let mut idx: Vec<usize> = (0..cells_in_vertex_order.len()).collect();
    idx.sort_by(|&a, &b| cells_in_vertex_order[a].cmp(&cells_in_vertex_order[b]));
    let mut pos = vec![0; idx.len()];
    for (new, &old) in idx.iter().enumerate() {
        pos[old] = new;
    }
    let n_tri = cells_in_vertex_order
        .iter()
        .filter(|c| matches!(c, Cell::Triangle(_)))
        .count();
    let vertex_cell = (0..n_tri).map(|v| pos[v]).collect();
    let mut cells = cells_in_vertex_order;
    cells.sort();
    DualSubdivision {
        polygon,
        cells,
        vertex_cell,
    }
}

/// Orders directions by angle in `[0, 2π)`.
pub fn angle_cmp(a: Pt, b: Pt) -> std::cmp::Ordering {
    let half = |p: Pt| {
        if p.y > 0 || (p.y == 0 && p.x > 0) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&cross(a, b)))
}

/// Newton polygon induced by a degree: consecutive rotated end vectors.
pub fn newton_polygon(curve: &PlaneTropicalCurve) -> Result<LatticePolygon> {
    let mut vs: Vec<Pt> = curve
        .ends
        .iter()
        .map(|e| e.direction.scale(e.weight as i64))
        .collect();
    vs.sort_by(|a, b| angle_cmp(*a, *b));
    let mut cur = pt(0, 0);
    let mut pts = vec![cur];
    for v in vs {
        cur = cur.add(v.rot_ccw());
        pts.push(cur);
    }
    if !cur.is_zero() {
        return Err(Error::Invalid("degree is not balanced".into()));
    }
    let p = LatticePolygon::hull(&pts)?;
    let (lo, _) = p.bounding_box();
    Ok(p.translate(lo.neg()))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn line(marks: &[EdgeRef]) -> PlaneTropicalCurve {
        PlaneTropicalCurve {
            positions: vec![Some(QPoint::int(0, 0))],
            edges: vec![],
            ends: vec![
                End {
                    vertex: 0,
                    weight: 1,
                    direction: pt(-1, 0),
                },
                End {
                    vertex: 0,
                    weight: 1,
                    direction: pt(0, -1),
                },
                End {
                    vertex: 0,
                    weight: 1,
                    direction: pt(1, 1),
                },
            ],
            markings: marks
                .iter()
                .enumerate()
                .map(|(i, e)| Marking {
                    condition: i,
                    kind: Condition::InteriorSimple,
                    location: MarkLocation::Edge {
                        edge: *e,
                        point: None,
                    },
                })
                .collect(),
            subdivision: None,
        }
    }

    /// Two vertices joined by a bounded edge of weight `w`, four ends of weight `w`.
    fn dumbbell(w: u64) -> PlaneTropicalCurve {
        PlaneTropicalCurve {
            positions: vec![None, None],
            edges: vec![BoundedEdge {
                ends: [0, 1],
                weight: w,
                direction: pt(1, 0),
            }],
            ends: vec![
                End {
                    vertex: 0,
                    weight: w,
                    direction: pt(0, -1),
                },
                End {
                    vertex: 0,
                    weight: w,
                    direction: pt(-1, 1),
                },
                End {
                    vertex: 1,
                    weight: w,
                    direction: pt(0, 1),
                },
                End {
                    vertex: 1,
                    weight: w,
                    direction: pt(1, -1),
                },
            ],
            markings: vec![],
            subdivision: None,
        }
    }

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn line_validation() {
        let c = line(&[EdgeRef::End(0), EdgeRef::End(1)]);
        let rep = validate(&c);
        assert!(rep.ok(), "{:?}", rep.problems);
        assert_eq!(rep.orientation.unwrap().out_edge[0], Some(EdgeRef::End(2)));

        let mut c2 = line(&[EdgeRef::End(0)]);
        c2.markings.push(c2.markings[0].clone());
        assert!(!validate(&c2).regular);

        let mut bad = line(&[]);
        bad.ends[2].direction = pt(1, 0);
        assert!(!validate(&bad).balanced);
    }

    #[test]
    fn weights_of_line() {
        let c = line(&[]);
        assert_eq!(complex_weight(&c).unwrap(), r(1));
        assert_eq!(refined_weight(&c).unwrap(), QProduct::one());
        let s = parity_split(&c);
        assert!(s.components.is_empty());
        assert_eq!(real_signed_weight(&c, &s).unwrap(), r(1));
        assert!(yneg1_limit_matches_signed(&c, &s).unwrap());
        let t = dual_subdivision(&c).unwrap();
        assert_eq!(t.polygon, LatticePolygon::triangle(1).unwrap());
        assert_eq!(t.cells.len(), 1);
    }

    #[test]
    fn weight_two_end() {
        // Vertex dual to (0,0),(2,0),(0,1): ends (0,-1) wt 2, (-1,0) wt 1, (1,2) wt 1.
        let c = PlaneTropicalCurve {
            positions: vec![None],
            ends: vec![
                End {
                    vertex: 0,
                    weight: 2,
                    direction: pt(0, -1),
                },
                End {
                    vertex: 0,
                    weight: 1,
                    direction: pt(-1, 0),
                },
                End {
                    vertex: 0,
                    weight: 1,
                    direction: pt(1, 2),
                },
            ],
            ..Default::default()
        };
        assert!(validate(&c).balanced);
        assert_eq!(c.vertex_multiplicity(0).unwrap(), 2);
        assert_eq!(complex_weight(&c).unwrap(), r(1));
        assert!(matches!(
            refined_weight(&c),
            Err(Error::UnfixedEndWeight(2))
        ));
        let s = parity_split(&c);
        assert_eq!(s.components.len(), 1);
        assert_eq!(s.components[0].euler, 1);
        assert!(yneg1_limit_matches_signed(&c, &s).unwrap());
        let sub = dual_subdivision(&c).unwrap();
        assert_eq!(sub.cells[0].twice_area(), 2);
    }

    #[test]
    fn even_bounded_edge_vanishes() {
        let c = dumbbell(2);
        assert!(validate(&c).balanced);
        let s = parity_split(&c);
        // All edges even: no real part.
        assert!(matches!(
            real_signed_weight(&c, &s),
            Err(Error::EmptyRealPart)
        ));
    }

    #[test]
    fn isolated_even_vertex() {
        // Vertex with three even edges of weight 2 (μ = 4) plus context via a lone vertex.
        let c = PlaneTropicalCurve {
            positions: vec![None, None],
            edges: vec![BoundedEdge {
                ends: [0, 1],
                weight: 2,
                direction: pt(1, 1),
            }],
            ends: vec![
                End {
                    vertex: 0,
                    weight: 2,
                    direction: pt(-1, 0),
                },
                End {
                    vertex: 0,
                    weight: 2,
                    direction: pt(0, -1),
                },
                End {
                    vertex: 1,
                    weight: 1,
                    direction: pt(1, 0),
                },
                End {
                    vertex: 1,
                    weight: 1,
                    direction: pt(1, 2),
                },
            ],
            ..Default::default()
        };
        assert!(validate(&c).balanced);
        let s = parity_split(&c);
        assert_eq!(c.vertex_multiplicity(0).unwrap(), 4);
        assert!(s.im_vertices.contains(&0) && !s.re_vertices.contains(&0));
        assert_eq!(s.components.len(), 1);
        assert_eq!(s.components[0].contacts, 1);
        assert_eq!(s.components[0].euler, 1);
        // vertex 0: (4/2)·(-1)^1 = -2; vertex 1: μ = |(-2,-2)∧(1,0)| = 2 -> 2/2 = 1, sign (-1)^Int.
        let w = real_signed_weight(&c, &s).unwrap();
        let int1 = c.vertex_interior_points(1).unwrap();
        assert_eq!(w, r(-2) * sign(int1 % 2 != 0));
        assert!(yneg1_limit_matches_signed(&c, &s).unwrap());
    }

    #[test]
    fn vanishing_reasons() {
        let mut c = line(&[EdgeRef::End(0), EdgeRef::End(1)]);
        let s = parity_split(&c);
        let chk = check_vanishing_conditions(&c, &s, 0);
        assert!(chk.ok, "{:?}", chk.reasons);
        c.ends[0].weight = 3;
        c.ends[2].direction = pt(3, 1);
        let chk = check_vanishing_conditions(&c, &parity_split(&c), 0);
        assert!(chk.reasons.iter().any(|r| r.0 == 4));
    }

    #[test]
    fn two_even_edges_at_vertex() {
        // Balancing forbids this, so the vertex is deliberately unbalanced.
        let c = PlaneTropicalCurve {
            positions: vec![None],
            ends: vec![
                End {
                    vertex: 0,
                    weight: 2,
                    direction: pt(-1, 0),
                },
                End {
                    vertex: 0,
                    weight: 2,
                    direction: pt(0, -1),
                },
                End {
                    vertex: 0,
                    weight: 1,
                    direction: pt(1, 1),
                },
            ],
            ..Default::default()
        };
        assert!(!validate(&c).balanced);
        let chk = check_vanishing_conditions(&c, &parity_split(&c), 0);
        assert!(chk
            .reasons
            .iter()
            .any(|r| r.0 == 5 && r.1.contains("exactly two")));
    }

    #[test]
    fn moduli_dimension() {
        assert_eq!(moduli_dim(9, 0, &[Condition::InteriorSimple; 8]), 16);
        assert_eq!(moduli_dim(3, 0, &[Condition::InteriorSimple; 2]), 4);
        assert_eq!(moduli_dim(12, 1, &[Condition::InteriorSimple; 12]), 24);
    }

    #[test]
    fn two_vertex_product() {
        // μ = 4 at vertex 0, μ = 2 at vertex 1, joined by an edge of weight 2.
        let c = PlaneTropicalCurve {
            positions: vec![None, None],
            edges: vec![BoundedEdge {
                ends: [0, 1],
                weight: 2,
                direction: pt(-1, 1),
            }],
            ends: vec![
                End {
                    vertex: 0,
                    weight: 1,
                    direction: pt(-1, -1),
                },
                End {
                    vertex: 0,
                    weight: 1,
                    direction: pt(3, -1),
                },
                End {
                    vertex: 1,
                    weight: 1,
                    direction: pt(-1, 0),
                },
                End {
                    vertex: 1,
                    weight: 1,
                    direction: pt(-1, 2),
                },
            ],
            ..Default::default()
        };
        assert!(validate(&c).balanced);
        assert_eq!(c.vertex_multiplicity(0).unwrap(), 4);
        assert_eq!(c.vertex_multiplicity(1).unwrap(), 2);
        assert_eq!(complex_weight(&c).unwrap(), r(8));
        // One even bounded edge touching the odd part twice: vanishes.
        let s = parity_split(&c);
        assert_eq!(s.components.len(), 1);
        assert_eq!(s.components[0].contacts, 2);
        assert_eq!(real_signed_weight(&c, &s).unwrap(), r(0));
        assert!(yneg1_limit_matches_signed(&c, &s).unwrap());
        let rw = refined_weight(&c).unwrap();
        assert_eq!(crate::qpoly::eval_y1(&rw), r(8));
    }
}
