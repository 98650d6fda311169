//! Exhaustive oracle for small polygons, independent of lattice paths.
//!
//! Enumerates every subdivision of the polygon into lattice triangles and
//! parallelograms, keeps the dual curves of the right genus and degree, tries
//! every regular orientation and every assignment of points to cut edges,
//! and solves for vertex positions exactly.

use std::collections::{BTreeMap, BTreeSet};

use crate::conditions::{Condition, PointConditionType, Side};
use crate::engines::assemble::{assemble_with_map, seg, Seg};
use crate::engines::realize::{edge_index, intersect_params, Line, Skeleton};
use crate::error::{Error, Result};
use crate::lattice::{dot, lattice_length, orient, LatticePolygon, Pt};
use crate::tropcurve::{Cell, EdgeRef, MarkLocation, Marking, PlaneTropicalCurve, QPoint};

/// Conditions with explicit positions. For a boundary condition the point
/// fixes the line, parallel to the side's normal, carrying the fixed end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteConfig {
    pub conditions: PointConditionType,
    pub points: Vec<QPoint>,
}

/// Largest polygon (twice the area) the oracle accepts.
pub const MAX_TWICE_AREA: i64 = 9;

pub fn brute_enumerate(
    p: &LatticePolygon,
    g: i64,
    cfg: &BruteConfig,
) -> Result<Vec<PlaneTropicalCurve>> {
    if p.twice_area() > MAX_TWICE_AREA {
        return Err(Error::Unsupported(
            "brute-force oracle is limited to area at most that of the cubic triangle".into(),
        ));
    }
    let conds = &cfg.conditions.0;
    if conds.len() != cfg.points.len() {
        return Err(Error::Invalid("one point per condition is required".into()));
    }
    if conds.contains(&Condition::InteriorPair) {
        return Err(Error::Unsupported(
            "brute-force oracle does not handle interior pairs".into(),
        ));
    }
    cfg.conditions.check_balance(p, g)?;

    let fixed: Vec<(usize, Side, u64)> = conds
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.fixed_end().map(|(s, w)| (i, s, w)))
        .collect();
    let interior: Vec<usize> = (0..conds.len())
        .filter(|&i| conds[i].is_interior())
        .collect();
    let long_ok: BTreeSet<(Side, u64)> = fixed.iter().map(|&(_, s, w)| (s, w)).collect();

    let mut found: BTreeMap<String, (PlaneTropicalCurve, bool)> = BTreeMap::new();
    for cells in enumerate_subdivisions(p, &|side, len| {
        len == 1 || side.is_some_and(|s| long_ok.contains(&(s, len)))
    }) {
        let Some((curve, seg_edge)) = assemble_with_map(p, cells, &[]) else {
            continue;
        };
        if curve.genus() != g {
            continue;
        }
        let end_side: Vec<Option<Side>> = curve
            .ends
            .iter()
            .map(|e| Side::ALL.into_iter().find(|s| s.normal() == e.direction))
            .collect();
        if curve.ends.iter().enumerate().any(|(i, e)| {
            e.weight > 1 && !end_side[i].is_some_and(|s| long_ok.contains(&(s, e.weight)))
        }) {
            continue;
        }
        let crossings = parallelogram_pairs(&curve, &seg_edge);
        for assignment in fixed_assignments(&curve, &end_side, &fixed) {
            // Every end of weight > 1 must carry a fixed condition.
            if curve
                .ends
                .iter()
                .enumerate()
                .any(|(i, e)| e.weight > 1 && !assignment.contains_key(&i))
            {
                continue;
            }
            let fixed_lines: BTreeMap<usize, Line> = assignment
                .iter()
                .map(|(&end, &cond)| {
                    let d = curve.ends[end].direction;
                    (
                        end,
                        Line {
                            p: cfg.points[cond].clone(),
                            d,
                        },
                    )
                })
                .collect();
            for (out_edge, cut) in orientations(&curve, &fixed_lines, interior.len()) {
                let pinned = BTreeMap::new();
                let sk = Skeleton {
                    curve: &curve,
                    out_edge: &out_edge,
                    cut: &cut,
                    fixed_lines: &fixed_lines,
                    pinned: &pinned,
                };
                let mut sols = Vec::new();
                for labels in sk.candidate_labels(&cfg.points, &interior) {
                    sols.extend(sk.solve(&cfg.points, labels, &[])?);
                }
                for sol in sols {
                    let mut c = curve.clone();
                    c.positions = sol.positions.into_iter().map(Some).collect();
                    let mut marks = Vec::new();
                    for (idx, l) in sol.labels.iter().enumerate() {
                        let Some(l) = *l else { continue };
                        let edge = if idx < c.edges.len() {
                            EdgeRef::Bounded(idx)
                        } else {
                            EdgeRef::End(idx - c.edges.len())
                        };
                        marks.push(Marking {
                            condition: l,
                            kind: conds[l],
                            location: MarkLocation::Edge {
                                edge,
                                point: Some(cfg.points[l].clone()),
                            },
                        });
                    }
                    for (&end, &cond) in &assignment {
                        marks.push(Marking {
                            condition: cond,
                            kind: conds[cond],
                            location: MarkLocation::FixedEnd(end),
                        });
                    }
                    marks.sort_by_key(|m| m.condition);
                    c.markings = marks;
                    let honest = geometric_crossings(&c)? == crossings;
                    let key = geometric_key(&c);
                    match found.get(&key) {
                        Some((_, true)) => {}
                        Some((_, false)) if !honest => {}
                        _ => {
                            found.insert(key, (c, honest));
                        }
                    }
                }
            }
        }
    }
    if let Some((_, (c, _))) = found.iter().find(|(_, (_, honest))| !honest) {
        return Err(Error::DegenerateConfiguration(format!(
            "no subdivision matches the crossings of a solution with {} vertices",
            c.vertex_count()
        )));
    }
    Ok(found.into_values().map(|(c, _)| c).collect())
}

/// Injective assignments of fixed conditions to ends on their side with their weight.
fn fixed_assignments(
    curve: &PlaneTropicalCurve,
    end_side: &[Option<Side>],
    fixed: &[(usize, Side, u64)],
) -> Vec<BTreeMap<usize, usize>> {
    let mut out = Vec::new();
    fn go(
        k: usize,
        curve: &PlaneTropicalCurve,
        end_side: &[Option<Side>],
        fixed: &[(usize, Side, u64)],
        cur: &mut BTreeMap<usize, usize>,
        out: &mut Vec<BTreeMap<usize, usize>>,
    ) {
        if k == fixed.len() {
            out.push(cur.clone());
            return;
        }
        let (cond, side, w) = fixed[k];
        for (i, e) in curve.ends.iter().enumerate() {
            if end_side[i] == Some(side) && e.weight == w && !cur.contains_key(&i) {
                cur.insert(i, cond);
                go(k + 1, curve, end_side, fixed, cur, out);
                cur.remove(&i);
            }
        }
    }
    go(0, curve, end_side, fixed, &mut BTreeMap::new(), &mut out);
    out
}

/// Regular orientations: each vertex picks one outgoing edge (never a fixed
/// end), no edge is picked from both sides, and there is no directed cycle.
/// Edges picked by nobody are cut by interior points; exactly `n_cut` of them.
fn orientations(
    curve: &PlaneTropicalCurve,
    fixed_lines: &BTreeMap<usize, Line>,
    n_cut: usize,
) -> Vec<(Vec<Option<EdgeRef>>, Vec<bool>)> {
    let flags = curve.flags();
    let nv = curve.vertex_count();
    let ne = curve.edges.len() + curve.ends.len();
    let mut out = Vec::new();
    let mut choice: Vec<Option<EdgeRef>> = vec![None; nv];
    let mut taken = vec![false; ne];
    fn go(
        v: usize,
        curve: &PlaneTropicalCurve,
        flags: &[Vec<crate::tropcurve::Flag>],
        fixed_lines: &BTreeMap<usize, Line>,
        n_cut: usize,
        choice: &mut Vec<Option<EdgeRef>>,
        taken: &mut Vec<bool>,
        out: &mut Vec<(Vec<Option<EdgeRef>>, Vec<bool>)>,
    ) {
        let nv = choice.len();
        if v == nv {
            let mut cut = taken.iter().map(|t| !t).collect::<Vec<bool>>();
            for &e in fixed_lines.keys() {
                cut[curve.edges.len() + e] = false;
            }
            if cut.iter().filter(|&&c| c).count() != n_cut {
                return;
            }
            out.push((choice.clone(), cut));
            return;
        }
        for f in &flags[v] {
            if let EdgeRef::End(e) = f.edge {
                if fixed_lines.contains_key(&e) {
                    continue;
                }
            }
            let idx = edge_index(curve, f.edge);
            if taken[idx] || closes_cycle(curve, choice, v, f.edge) {
                continue;
            }
            taken[idx] = true;
            choice[v] = Some(f.edge);
            go(v + 1, curve, flags, fixed_lines, n_cut, choice, taken, out);
            choice[v] = None;
            taken[idx] = false;
        }
    }
    go(
        0,
        curve,
        &flags,
        fixed_lines,
        n_cut,
        &mut choice,
        &mut taken,
        &mut out,
    );
    out
}

/// Whether `v` choosing `e` closes a directed cycle through earlier choices.
fn closes_cycle(
    curve: &PlaneTropicalCurve,
    choice: &[Option<EdgeRef>],
    v: usize,
    e: EdgeRef,
) -> bool {
    let other = |x: usize, e: EdgeRef| match e {
        EdgeRef::Bounded(i) => {
            let b = &curve.edges[i];
            Some(if b.ends[0] == x { b.ends[1] } else { b.ends[0] })
        }
        EdgeRef::End(_) => None,
    };
    let mut w = other(v, e);
    while let Some(x) = w {
        if x == v {
            return true;
        }
        w = choice[x].and_then(|e| other(x, e));
    }
    false
}

/// Pairs of curve edges meeting in a parallelogram of the subdivision.
fn parallelogram_pairs(
    curve: &PlaneTropicalCurve,
    seg_edge: &BTreeMap<Seg, EdgeRef>,
) -> BTreeSet<(EdgeRef, EdgeRef)> {
    let mut out = BTreeSet::new();
    for c in &curve.subdivision.as_ref().unwrap().cells {
        if let Cell::Parallelogram(v) = c {
            let a = seg_edge[&seg(v[0], v[1])];
            let b = seg_edge[&seg(v[1], v[2])];
            out.insert((a.min(b), a.max(b)));
        }
    }
    out
}

/// Pairs of curve edges whose relative interiors cross.
fn geometric_crossings(c: &PlaneTropicalCurve) -> Result<BTreeSet<(EdgeRef, EdgeRef)>> {
    use num_rational::BigRational;
    use num_traits::{One, Signed, Zero};
    let pos = |v: usize| c.positions[v].clone().unwrap();
    // (start, direction vector, bounded?) with points start + t*dir, t in (0,1) or (0,inf).
    let mut segs: Vec<(EdgeRef, QPoint, (BigRational, BigRational), bool)> = Vec::new();
    for (i, e) in c.edges.iter().enumerate() {
        let a = pos(e.ends[0]);
        let b = pos(e.ends[1]);
        let d = (&b.x - &a.x, &b.y - &a.y);
        segs.push((EdgeRef::Bounded(i), a, d, true));
    }
    for (i, e) in c.ends.iter().enumerate() {
        let d = (
            BigRational::from_integer(e.direction.x.into()),
            BigRational::from_integer(e.direction.y.into()),
        );
        segs.push((EdgeRef::End(i), pos(e.vertex), d, false));
    }
    let mut out = BTreeSet::new();
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            let (ea, pa, da, ba) = &segs[i];
            let (eb, pb, db, bb) = &segs[j];
            let Some((t, s)) = intersect_params(pa, da, pb, db) else {
                continue;
            };
            let inside = |t: &BigRational, bounded: bool| {
                t.is_positive() && (!bounded || *t < BigRational::one())
            };
            if inside(&t, *ba) && inside(&s, *bb) {
                out.insert(((*ea).min(*eb), (*ea).max(*eb)));
            } else if (t.is_zero() || (*ba && t == BigRational::one())) && inside(&s, *bb)
                || (s.is_zero() || (*bb && s == BigRational::one())) && inside(&t, *ba)
            {
                return Err(Error::DegenerateConfiguration(
                    "a vertex lies on another edge".into(),
                ));
            }
        }
    }
    Ok(out)
}

/// Canonical description of a placed curve, independent of indexing.
fn geometric_key(c: &PlaneTropicalCurve) -> String {
    let p = |v: usize| {
        let q = c.positions[v].as_ref().unwrap();
        format!("({},{})", q.x, q.y)
    };
    let mut parts: Vec<String> = Vec::new();
    for e in &c.edges {
        let (a, b) = (p(e.ends[0]), p(e.ends[1]));
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        parts.push(format!("E{a}{b}w{}", e.weight));
    }
    for e in &c.ends {
        parts.push(format!("R{}{}w{}", p(e.vertex), e.direction, e.weight));
    }
    for m in &c.markings {
        let at = match &m.location {
            MarkLocation::Edge {
                edge: EdgeRef::Bounded(i),
                ..
            } => {
                let e = &c.edges[*i];
                let (a, b) = (p(e.ends[0]), p(e.ends[1]));
                if a <= b {
                    format!("{a}{b}")
                } else {
                    format!("{b}{a}")
                }
            }
            MarkLocation::Edge {
                edge: EdgeRef::End(i),
                ..
            }
            | MarkLocation::FixedEnd(i) => {
                format!("{}{}", p(c.ends[*i].vertex), c.ends[*i].direction)
            }
            MarkLocation::Vertex(v) => p(*v),
        };
        parts.push(format!("M{}@{at}", m.condition));
    }
    parts.sort();
    parts.join(";")
}

/// All subdivisions of `p` into lattice triangles and parallelograms meeting
/// face to face. `boundary_ok(side, length)` filters cell sides lying on the
/// boundary (`side` is `None` for sides other than bottom, left and diag).
pub fn enumerate_subdivisions(
    p: &LatticePolygon,
    boundary_ok: &dyn Fn(Option<Side>, u64) -> bool,
) -> Vec<Vec<Cell>> {
    let mut front: BTreeSet<(Pt, Pt)> = BTreeSet::new();
    for (a, b) in p.edges() {
        let n = lattice_length(b.sub(a));
        let s = b.sub(a).primitive();
        for k in 0..n {
            front.insert((a.add(s.scale(k)), a.add(s.scale(k + 1))));
        }
    }
    let mut e = SubdivisionSearch {
        p,
        points: p.lattice_points(),
        boundary_ok,
        cells: Vec::new(),
        out: Vec::new(),
    };
    e.rec(front);
    e.out
}

struct SubdivisionSearch<'a> {
    p: &'a LatticePolygon,
    points: Vec<Pt>,
    boundary_ok: &'a dyn Fn(Option<Side>, u64) -> bool,
    cells: Vec<Cell>,
    out: Vec<Vec<Cell>>,
}

impl SubdivisionSearch<'_> {
    fn on_boundary(&self, a: Pt, b: Pt) -> bool {
        self.p.edge_containing(a, b).is_some()
    }

    fn rec(&mut self, front: BTreeSet<(Pt, Pt)>) {
        let Some(&(a, b)) = front
            .iter()
            .find(|&&(a, b)| !self.on_boundary(a, b))
            .or_else(|| {
                front.iter().find(|&&(a, b)| {
                    let s = b.sub(a);
                    let prev = (a.sub(s), a);
                    self.p.vertices().contains(&a) || !front.contains(&prev)
                })
            })
        else {
            if front.is_empty() {
                self.out.push(self.cells.clone());
            }
            return;
        };
        let mut sides: Vec<(Pt, Pt)> = vec![(a, b)];
        if self.on_boundary(a, b) {
            // The cell side may extend along the boundary through uncovered segments.
            let s = b.sub(a);
            let mut end = b;
            while front.contains(&(end, end.add(s))) {
                end = end.add(s);
                sides.push((a, end));
            }
        }
        for (a, b) in sides {
            for c in self.candidates(a, b) {
                if let Some(next) = self.place(&front, &c) {
                    self.cells.push(c);
                    self.rec(next);
                    self.cells.pop();
                }
            }
        }
    }

    fn candidates(&self, a: Pt, b: Pt) -> Vec<Cell> {
        let mut out = Vec::new();
        for &c in &self.points {
            if orient(a, b, c) > 0 {
                out.push(Cell::triangle(a, b, c));
            }
        }
        for &c in &self.points {
            if orient(a, b, c) > 0 {
                let d = a.add(c).sub(b);
                if self.p.contains(d) {
                    out.push(Cell::parallelogram(a, b, c));
                }
            }
        }
        out
    }

    /// Front after adding `cell`, or `None` if it does not fit.
    fn place(&self, front: &BTreeSet<(Pt, Pt)>, cell: &Cell) -> Option<BTreeSet<(Pt, Pt)>> {
        for other in &self.cells {
            if interiors_overlap(cell, other) || !face_to_face(cell, other) {
                return None;
            }
        }
        let mut next = front.clone();
        for (u, v) in cell.sides() {
            if self.on_boundary(u, v) {
                let len = lattice_length(v.sub(u)) as u64;
                let side = Side::ALL.into_iter().find(|s| {
                    s.edge_of(self.p)
                        .is_some_and(|(x, y)| orient(x, y, u) == 0 && orient(x, y, v) == 0)
                });
                if !(self.boundary_ok)(side, len) {
                    return None;
                }
                let s = v.sub(u).primitive();
                for k in 0..len as i64 {
                    if !next.remove(&(u.add(s.scale(k)), u.add(s.scale(k + 1)))) {
                        return None;
                    }
                }
            } else if !next.remove(&(u, v)) {
                next.insert((v, u));
            }
        }
        Some(next)
    }
}

fn interiors_overlap(a: &Cell, b: &Cell) -> bool {
    let axes = a
        .sides()
        .into_iter()
        .chain(b.sides())
        .map(|(u, v)| v.sub(u).rot_ccw());
    for n in axes {
        let pa: Vec<i64> = a.vertices().iter().map(|&p| dot(p, n)).collect();
        let pb: Vec<i64> = b.vertices().iter().map(|&p| dot(p, n)).collect();
        let (amin, amax) = (*pa.iter().min().unwrap(), *pa.iter().max().unwrap());
        let (bmin, bmax) = (*pb.iter().min().unwrap(), *pb.iter().max().unwrap());
        if amax <= bmin || bmax <= amin {
            return false;
        }
    }
    true
}

/// No vertex of one cell lies in the relative interior of a side of the other.
fn face_to_face(a: &Cell, b: &Cell) -> bool {
    let strictly_inside = |p: Pt, (u, v): (Pt, Pt)| {
        orient(u, v, p) == 0 && dot(p.sub(u), v.sub(u)) > 0 && dot(p.sub(v), u.sub(v)) > 0
    };
    for (x, y) in [(a, b), (b, a)] {
        for &p in x.vertices() {
            if y.sides().into_iter().any(|s| strictly_inside(p, s)) {
                return false;
            }
        }
    }
    true
}

/// Pseudo-random points with large coprime-ish coordinates; generic with
/// overwhelming probability. Deterministic in `seed`.
pub fn random_points(n: usize, seed: u64) -> Vec<QPoint> {
    use num_rational::BigRational;
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let r = |rng: &mut rand_chacha::ChaCha8Rng| {
        let num: i64 = rng.gen_range(-1_000_000..=1_000_000);
        let den: i64 = rng.gen_range(1..=997);
        BigRational::new(num.into(), den.into())
    };
    (0..n)
        .map(|_| QPoint::new(r(&mut rng), r(&mut rng)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tropcurve::{complex_weight, validate};
    use num_rational::BigRational;
    use num_traits::Zero;

    fn total(d: i64, g: i64, seed: u64) -> (usize, BigRational) {
        let p = LatticePolygon::triangle(d).unwrap();
        let n = (3 * d + g - 1) as usize;
        let cfg = BruteConfig {
            conditions: PointConditionType::interior(n),
            points: random_points(n, seed),
        };
        let cs = brute_enumerate(&p, g, &cfg).unwrap();
        let mut s = BigRational::zero();
        for c in &cs {
            assert!(validate(c).ok(), "{:?}", validate(c));
            s += complex_weight(c).unwrap();
        }
        (cs.len(), s)
    }

    #[test]
    fn lines_and_conics() {
        assert_eq!(total(1, 0, 1).1, BigRational::from_integer(1.into()));
        assert_eq!(total(2, 0, 2).1, BigRational::from_integer(1.into()));
    }

    #[test]
    fn subdivisions_of_small_triangles() {
        let all = |_: Option<Side>, l: u64| l == 1;
        assert_eq!(
            enumerate_subdivisions(&LatticePolygon::triangle(1).unwrap(), &all).len(),
            1
        );
        // Four triangulations of the conic triangle and three with a parallelogram.
        assert_eq!(
            enumerate_subdivisions(&LatticePolygon::triangle(2).unwrap(), &all).len(),
            7
        );
    }
}
