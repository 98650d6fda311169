//! Exact placement of a combinatorial curve through given points.
//!
//! With a regular orientation every unmarked vertex has two incoming edges,
//! each of which lies on a known line (through a marked point, along a fixed
//! end's line, or through an already placed vertex). Vertices are placed in
//! topological order by intersecting these lines; every edge length must come
//! out strictly positive.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{cross, Pt};
use crate::tropcurve::{EdgeRef, Flag, PlaneTropicalCurve, QPoint};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub p: QPoint,
    pub d: Pt,
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Intersection point; `Ok(None)` for distinct parallel lines.
pub fn intersect(a: &Line, b: &Line) -> Result<Option<QPoint>> {
    let den = cross(a.d, b.d);
    if den == 0 {
        let dx = &b.p.x - &a.p.x;
        let dy = &b.p.y - &a.p.y;
        if (dx * q(a.d.y) - dy * q(a.d.x)).is_zero() {
            return Err(Error::DegenerateConfiguration(
                "two constraint lines coincide".into(),
            ));
        }
        return Ok(None);
    }
    let dx = &b.p.x - &a.p.x;
    let dy = &b.p.y - &a.p.y;
    let t = (dx * q(b.d.y) - dy * q(b.d.x)) / q(den);
    Ok(Some(QPoint::new(
        &a.p.x + &t * q(a.d.x),
        &a.p.y + &t * q(a.d.y),
    )))
}

/// `<to - from, d>`.
pub fn dot_dir(from: &QPoint, to: &QPoint, d: Pt) -> BigRational {
    (&to.x - &from.x) * q(d.x) + (&to.y - &from.y) * q(d.y)
}

/// Sign of `<to - from, d>`; zero is a degenerate configuration.
fn ahead(from: &QPoint, to: &QPoint, d: Pt) -> Result<bool> {
    let v = dot_dir(from, to, d);
    if v.is_zero() {
        return Err(Error::DegenerateConfiguration(
            "an edge has zero length".into(),
        ));
    }
    Ok(v.is_positive())
}

/// Combinatorial input for placement.
pub struct Skeleton<'a> {
    pub curve: &'a PlaneTropicalCurve,
    /// Outgoing edge of every unmarked vertex.
    pub out_edge: &'a [Option<EdgeRef>],
    /// Edges cut by an interior point.
    pub cut: &'a [bool],
    /// Lines carrying fixed ends.
    pub fixed_lines: &'a BTreeMap<usize, Line>,
    /// Vertices pinned at a point.
    pub pinned: &'a BTreeMap<usize, QPoint>,
}

#[derive(Clone, Debug)]
pub struct Placement {
    pub positions: Vec<QPoint>,
    /// Point index carried by each cut edge (bounded edges first, then ends).
    pub labels: Vec<Option<usize>>,
}

pub fn edge_index(curve: &PlaneTropicalCurve, e: EdgeRef) -> usize {
    match e {
        EdgeRef::Bounded(i) => i,
        EdgeRef::End(i) => curve.edges.len() + i,
    }
}

impl Skeleton<'_> {
    /// Topological order of vertices, or `None` if the orientation has a cycle.
    fn order(&self, flags: &[Vec<Flag>]) -> Option<Vec<usize>> {
        let c = self.curve;
        let n = c.vertex_count();
        let mut indeg = vec![0usize; n];
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (v, fs) in flags.iter().enumerate() {
            for f in fs {
                let EdgeRef::Bounded(i) = f.edge else {
                    continue;
                };
                if self.cut[i] || self.out_edge[v] == Some(f.edge) {
                    continue;
                }
                let e = &c.edges[i];
                let y = if e.ends[0] == v { e.ends[1] } else { e.ends[0] };
                // v's incoming edge from y: y must come first.
                if self.pinned.contains_key(&y) || self.out_edge[y] == Some(f.edge) {
                    indeg[v] += 1;
                    succ[y].push(v);
                }
            }
        }
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).rev().collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            order.push(v);
            for &w in &succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.push(w);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// All placements; cut edges with a preset label use it, the others try
    /// every unused point of `free`.
    pub fn solve(
        &self,
        points: &[QPoint],
        preset: Vec<Option<usize>>,
        free: &[usize],
    ) -> Result<Vec<Placement>> {
        let flags = self.curve.flags();
        let Some(order) = self.order(&flags) else {
            return Ok(vec![]);
        };
        let mut used = vec![false; points.len()];
        for l in preset.iter().flatten() {
            used[*l] = true;
        }
        let mut st = Search {
            sk: self,
            flags: &flags,
            order: &order,
            points,
            free,
            positions: vec![None; self.curve.vertex_count()],
            labels: preset,
            used,
            out: Vec::new(),
        };
        st.rec(0)?;
        Ok(st.out)
    }
}

struct Search<'s, 'a> {
    sk: &'s Skeleton<'a>,
    flags: &'s [Vec<Flag>],
    order: &'s [usize],
    points: &'s [QPoint],
    free: &'s [usize],
    positions: Vec<Option<QPoint>>,
    labels: Vec<Option<usize>>,
    used: Vec<bool>,
    out: Vec<Placement>,
}

enum Source {
    Known(Line, Check),
    NeedsLabel(usize, Pt),
}

enum Check {
    /// The point must lie ahead of the vertex along the flag.
    Ahead(QPoint, Pt),
    None,
}

impl Search<'_, '_> {
    fn rec(&mut self, k: usize) -> Result<()> {
        if k == self.order.len() {
            self.out.push(Placement {
                positions: self.positions.iter().map(|p| p.clone().unwrap()).collect(),
                labels: self.labels.clone(),
            });
            return Ok(());
        }
        let x = self.order[k];
        if let Some(p) = self.sk.pinned.get(&x) {
            self.positions[x] = Some(p.clone());
            self.rec(k + 1)?;
            self.positions[x] = None;
            return Ok(());
        }
        let out = self.sk.out_edge[x];
        let incoming: Vec<Flag> = self.flags[x]
            .iter()
            .copied()
            .filter(|f| Some(f.edge) != out)
            .collect();
        if incoming.len() != 2 {
            return Ok(());
        }
        let mut sources = Vec::with_capacity(2);
        for f in &incoming {
            sources.push(self.source(x, f));
        }
        self.branch(k, x, &sources, 0, &mut Vec::new())
    }

    fn source(&self, x: usize, f: &Flag) -> Source {
        let c = self.sk.curve;
        let idx = edge_index(c, f.edge);
        if let EdgeRef::End(e) = f.edge {
            if let Some(l) = self.sk.fixed_lines.get(&e) {
                return Source::Known(l.clone(), Check::None);
            }
        }
        if self.sk.cut[idx] {
            return match self.labels[idx] {
                Some(l) => {
                    let p = self.points[l].clone();
                    Source::Known(
                        Line {
                            p: p.clone(),
                            d: f.direction,
                        },
                        Check::Ahead(p, f.direction),
                    )
                }
                None => Source::NeedsLabel(idx, f.direction),
            };
        }
        let EdgeRef::Bounded(i) = f.edge else {
            unreachable!("an unmarked end cannot be incoming")
        };
        let e = &c.edges[i];
        let y = if e.ends[0] == x { e.ends[1] } else { e.ends[0] };
        let py = self.positions[y].clone().expect("predecessor placed");
        Source::Known(
            Line {
                p: py.clone(),
                d: f.direction,
            },
            Check::Ahead(py, f.direction),
        )
    }

    fn branch(
        &mut self,
        k: usize,
        x: usize,
        sources: &[Source],
        i: usize,
        acc: &mut Vec<(Line, Check)>,
    ) -> Result<()> {
        if i == sources.len() {
            let Some(px) = intersect(&acc[0].0, &acc[1].0)? else {
                return Ok(());
            };
            for (_, chk) in acc.iter() {
                if let Check::Ahead(p, d) = chk {
                    if !ahead(&px, p, *d)? {
                        return Ok(());
                    }
                }
            }
            self.positions[x] = Some(px);
            self.rec(k + 1)?;
            self.positions[x] = None;
            return Ok(());
        }
        match &sources[i] {
            Source::Known(l, chk) => {
                let chk = match chk {
                    Check::Ahead(p, d) => Check::Ahead(p.clone(), *d),
                    Check::None => Check::None,
                };
                acc.push((l.clone(), chk));
                self.branch(k, x, sources, i + 1, acc)?;
                acc.pop();
            }
            Source::NeedsLabel(idx, d) => {
                for &l in self.free {
                    if self.used[l] {
                        continue;
                    }
                    self.used[l] = true;
                    self.labels[*idx] = Some(l);
                    let p = self.points[l].clone();
                    acc.push((
                        Line {
                            p: p.clone(),
                            d: *d,
                        },
                        Check::Ahead(p, *d),
                    ));
                    self.branch(k, x, sources, i + 1, acc)?;
                    acc.pop();
                    self.labels[*idx] = None;
                    self.used[l] = false;
                }
            }
        }
        Ok(())
    }
}

/// Parameters `(t, s)` with `a + t*da = b + s*db`; `None` when parallel.
pub fn intersect_params(
    a: &QPoint,
    da: &(BigRational, BigRational),
    b: &QPoint,
    db: &(BigRational, BigRational),
) -> Option<(BigRational, BigRational)> {
    let den = &da.0 * &db.1 - &da.1 * &db.0;
    if den.is_zero() {
        return None;
    }
    let dx = &b.x - &a.x;
    let dy = &b.y - &a.y;
    let t = (&dx * &db.1 - &dy * &db.0) / &den;
    let s = (&dx * &da.1 - &dy * &da.0) / &den;
    Some((t, s))
}

type F2 = (f64, f64);

impl Skeleton<'_> {
    /// Label assignments that survive a floating-point version of [`Skeleton::solve`]
    /// with lenient sign tests. Each must still be confirmed exactly.
    pub fn candidate_labels(&self, points: &[QPoint], free: &[usize]) -> Vec<Vec<Option<usize>>> {
        use num_traits::ToPrimitive;
        let flags = self.curve.flags();
        let Some(order) = self.order(&flags) else {
            return vec![];
        };
        let pts: Vec<F2> = points
            .iter()
            .map(|p| (p.x.to_f64().unwrap(), p.y.to_f64().unwrap()))
            .collect();
        let scale = pts
            .iter()
            .fold(1.0f64, |m, p| m.max(p.0.abs()).max(p.1.abs()));
        let f = |p: &QPoint| (p.x.to_f64().unwrap(), p.y.to_f64().unwrap());
        let mut st = Fast {
            sk: self,
            flags: &flags,
            order: &order,
            pts: &pts,
            fixed: self
                .fixed_lines
                .iter()
                .map(|(&e, l)| (e, (f(&l.p), l.d)))
                .collect(),
            pinned: self.pinned.iter().map(|(&v, p)| (v, f(p))).collect(),
            free,
            tol: scale * 1e-7,
            positions: vec![(0.0, 0.0); self.curve.vertex_count()],
            labels: vec![None; self.cut.len()],
            used: vec![false; points.len()],
            out: Vec::new(),
        };
        st.rec(0);
        st.out
    }
}

struct Fast<'s, 'a> {
    sk: &'s Skeleton<'a>,
    flags: &'s [Vec<Flag>],
    order: &'s [usize],
    pts: &'s [F2],
    fixed: BTreeMap<usize, (F2, Pt)>,
    pinned: BTreeMap<usize, F2>,
    free: &'s [usize],
    tol: f64,
    positions: Vec<F2>,
    labels: Vec<Option<usize>>,
    used: Vec<bool>,
    out: Vec<Vec<Option<usize>>>,
}

/// Line through a point, and whether that point must lie ahead of the vertex.
type FLine = (F2, Pt, bool);

impl Fast<'_, '_> {
    fn rec(&mut self, k: usize) {
        if k == self.order.len() {
            self.out.push(self.labels.clone());
            return;
        }
        let x = self.order[k];
        if let Some(&p) = self.pinned.get(&x) {
            self.positions[x] = p;
            self.rec(k + 1);
            return;
        }
        let out = self.sk.out_edge[x];
        let incoming: Vec<Flag> = self.flags[x]
            .iter()
            .copied()
            .filter(|f| Some(f.edge) != out)
            .collect();
        if incoming.len() != 2 {
            return;
        }
        self.branch(k, x, &incoming, 0, &mut Vec::with_capacity(2));
    }

    fn branch(&mut self, k: usize, x: usize, incoming: &[Flag], i: usize, acc: &mut Vec<FLine>) {
        if i == incoming.len() {
            let ((a, da, _), (b, db, _)) = (acc[0], acc[1]);
            let den = (da.x * db.y - da.y * db.x) as f64;
            if den == 0.0 {
                return;
            }
            let (dx, dy) = (b.0 - a.0, b.1 - a.1);
            let t = (dx * db.y as f64 - dy * db.x as f64) / den;
            let px = (a.0 + t * da.x as f64, a.1 + t * da.y as f64);
            for &(p, d, check) in acc.iter() {
                if check && (p.0 - px.0) * d.x as f64 + (p.1 - px.1) * d.y as f64 <= -self.tol {
                    return;
                }
            }
            self.positions[x] = px;
            self.rec(k + 1);
            return;
        }
        let f = incoming[i];
        let c = self.sk.curve;
        let idx = edge_index(c, f.edge);
        if let EdgeRef::End(e) = f.edge {
            if let Some(&(p, _)) = self.fixed.get(&e) {
                acc.push((p, f.direction, false));
                self.branch(k, x, incoming, i + 1, acc);
                acc.pop();
                return;
            }
        }
        if self.sk.cut[idx] {
            if let Some(l) = self.labels[idx] {
                acc.push((self.pts[l], f.direction, true));
                self.branch(k, x, incoming, i + 1, acc);
                acc.pop();
                return;
            }
            for j in 0..self.free.len() {
                let l = self.free[j];
                if self.used[l] {
                    continue;
                }
                self.used[l] = true;
                self.labels[idx] = Some(l);
                acc.push((self.pts[l], f.direction, true));
                self.branch(k, x, incoming, i + 1, acc);
                acc.pop();
                self.labels[idx] = None;
                self.used[l] = false;
            }
            return;
        }
        let EdgeRef::Bounded(b) = f.edge else {
            return;
        };
        let e = &c.edges[b];
        let y = if e.ends[0] == x { e.ends[1] } else { e.ends[0] };
        acc.push((self.positions[y], f.direction, true));
        self.branch(k, x, incoming, i + 1, acc);
        acc.pop();
    }
}
