//! Mikhalkin's lattice-path algorithm.
//!
//! Points on a line in Mikhalkin position are ordered by the functional
//! `λ(x, y) = x - εy`. For `ε` below `1 / span(P)` the induced order on lattice
//! points is the lexicographic order of `(x, -y)`, which is what the engine
//! uses; `ε` itself is kept as an exact rational for reporting.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::conditions::{Condition, PointConditionType, Side};
use crate::engines::assemble::{assemble, Anchor};
use crate::error::{Error, Result};
use crate::lattice::{cross, lattice_length, LatticePolygon, Pt};
use crate::tropcurve::{
    canonical_subdivision, check_vanishing_conditions, parity_split, Cell, DualSubdivision,
    PlaneTropicalCurve,
};

pub type LatticePath = Vec<Pt>;

/// Sort key equivalent to `λ` for every admissible `ε`.
pub fn lambda_key(p: Pt) -> (i64, i64) {
    (p.x, -p.y)
}

/// `λ(x, y) = x - εy`, exactly.
pub fn lambda(p: Pt, epsilon: &BigRational) -> BigRational {
    BigRational::from_integer(BigInt::from(p.x)) - epsilon * BigInt::from(p.y)
}

/// Ordered reduced conditions on a line in Mikhalkin position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MikhalkinConfig {
    pub epsilon: BigRational,
    pub conditions: PointConditionType,
}

impl MikhalkinConfig {
    /// Uses `ε = 1 / (2·D² + 1)` with `D` the coordinate span of `p`.
    pub fn new(p: &LatticePolygon, conditions: PointConditionType) -> Self {
        let d = p.span();
        Self {
            epsilon: BigRational::new(BigInt::from(1), BigInt::from(2 * d * d + 1)),
            conditions,
        }
    }
}

/// Lattice points sorted by `λ` and the two boundary chains from the
/// `λ`-minimal vertex to the `λ`-maximal one.
#[derive(Clone, Debug)]
pub struct PathGeometry {
    pub polygon: LatticePolygon,
    pub points: Vec<Pt>,
    /// Chain with the polygon on its right (above paths).
    pub upper: Vec<Pt>,
    /// Chain with the polygon on its left (below paths).
    pub lower: Vec<Pt>,
}

impl PathGeometry {
    pub fn new(p: &LatticePolygon) -> Result<Self> {
        let mut points = p.lattice_points();
        points.sort_by_key(|&q| lambda_key(q));
        let first = points[0];
        let last = *points.last().unwrap();
        let vs = p.vertices();
        let n = vs.len();
        let i0 = vs.iter().position(|&v| v == first);
        let i1 = vs.iter().position(|&v| v == last);
        let (Some(i0), Some(i1)) = (i0, i1) else {
            return Err(Error::Unsupported(
                "the λ-extremal lattice points of the polygon must be vertices".into(),
            ));
        };
        let mut lower = vec![vs[i0]];
        let mut i = i0;
        while i != i1 {
            i = (i + 1) % n;
            lower.push(vs[i]);
        }
        let mut upper = vec![vs[i0]];
        let mut i = i0;
        while i != i1 {
            i = (i + n - 1) % n;
            upper.push(vs[i]);
        }
        Ok(Self {
            polygon: p.clone(),
            points,
            upper,
            lower,
        })
    }

    fn chain(&self, half: Half) -> &[Pt] {
        match half {
            Half::Upper => &self.upper,
            Half::Lower => &self.lower,
        }
    }

    /// True if every step of `path` runs along the chain.
    fn on_chain(&self, path: &[Pt], half: Half) -> bool {
        let chain = self.chain(half);
        path.windows(2).all(|w| {
            chain.windows(2).any(|c| {
                let (a, b) = (c[0], c[1]);
                crate::lattice::orient(a, b, w[0]) == 0
                    && crate::lattice::orient(a, b, w[1]) == 0
                    && between(a, b, w[0])
                    && between(a, b, w[1])
            })
        })
    }
}

fn between(a: Pt, b: Pt, x: Pt) -> bool {
    x.x >= a.x.min(b.x) && x.x <= a.x.max(b.x) && x.y >= a.y.min(b.y) && x.y <= a.y.max(b.y)
}

/// All `λ`-increasing lattice paths with `steps` steps from the `λ`-minimal
/// to the `λ`-maximal vertex, in lexicographic order of the chosen points.
pub fn enumerate_paths(
    p: &LatticePolygon,
    steps: usize,
) -> Result<impl Iterator<Item = LatticePath>> {
    let geo = PathGeometry::new(p)?;
    Ok(PathIter::new(geo.points, steps))
}

struct PathIter {
    points: Vec<Pt>,
    comb: Vec<usize>,
    done: bool,
}

impl PathIter {
    fn new(points: Vec<Pt>, steps: usize) -> Self {
        let inner = points.len().saturating_sub(2);
        let k = steps.saturating_sub(1);
        let done = steps == 0 || k > inner;
        Self {
            comb: (1..=k).collect(),
            points,
            done,
        }
    }
}

impl Iterator for PathIter {
    type Item = LatticePath;

    fn next(&mut self) -> Option<LatticePath> {
        if self.done {
            return None;
        }
        let n = self.points.len();
        let mut path = Vec::with_capacity(self.comb.len() + 2);
        path.push(self.points[0]);
        path.extend(self.comb.iter().map(|&i| self.points[i]));
        path.push(self.points[n - 1]);
        // Advance to the next combination of inner indices 1..n-2.
        let k = self.comb.len();
        let hi = n - 2;
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.comb[i] < hi - (k - 1 - i) {
                self.comb[i] += 1;
                for j in i + 1..k {
                    self.comb[j] = self.comb[j - 1] + 1;
                }
                break;
            }
        }
        Some(path)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Half {
    Upper,
    Lower,
}

type Leaves = Arc<Vec<Vec<Cell>>>;

/// Memoized one-sided compression of paths.
pub struct Divider<'a> {
    geo: &'a PathGeometry,
    memo: HashMap<(Vec<Pt>, Half), Leaves>,
}

impl<'a> Divider<'a> {
    pub fn new(geo: &'a PathGeometry) -> Self {
        Self {
            geo,
            memo: HashMap::new(),
        }
    }

    /// All cell sets filling the region between `path` and the chain of `half`.
    pub fn divide(&mut self, path: &[Pt], half: Half) -> Leaves {
        if let Some(r) = self.memo.get(&(path.to_vec(), half)) {
            return r.clone();
        }
        let r = Arc::new(self.compute(path, half));
        self.memo.insert((path.to_vec(), half), r.clone());
        r
    }

    fn compute(&mut self, path: &[Pt], half: Half) -> Vec<Vec<Cell>> {
        if self.geo.on_chain(path, half) {
            return vec![vec![]];
        }
        let turn = |j: usize| cross(path[j].sub(path[j - 1]), path[j + 1].sub(path[j]));
        let concave = (1..path.len() - 1).find(|&j| match half {
            Half::Upper => turn(j) > 0,
            Half::Lower => turn(j) < 0,
        });
        let Some(j) = concave else {
            return vec![];
        };
        let (a, b, c) = (path[j - 1], path[j], path[j + 1]);
        let mut out = Vec::new();

        let mut cut = path.to_vec();
        cut.remove(j);
        for leaf in self.divide(&cut, half).iter() {
            let mut cells = leaf.clone();
            cells.push(Cell::triangle(a, b, c));
            out.push(cells);
        }

        let r = a.add(c).sub(b);
        if self.geo.polygon.contains(r)
            && lambda_key(a) < lambda_key(r)
            && lambda_key(r) < lambda_key(c)
        {
            let mut moved = path.to_vec();
            moved[j] = r;
            for leaf in self.divide(&moved, half).iter() {
                let mut cells = leaf.clone();
                cells.push(Cell::parallelogram(a, b, c));
                out.push(cells);
            }
        }
        out
    }
}

/// All subdivisions obtained by dividing the regions above and below `path`.
pub fn divide_path(p: &LatticePolygon, path: &[Pt]) -> Result<Vec<DualSubdivision>> {
    let geo = PathGeometry::new(p)?;
    let mut div = Divider::new(&geo);
    let upper = div.divide(path, Half::Upper);
    let lower = div.divide(path, Half::Lower);
    let mut out = Vec::with_capacity(upper.len() * lower.len());
    for u in upper.iter() {
        for l in lower.iter() {
            let mut cells = u.clone();
            cells.extend(l.iter().cloned());
            out.push(canonical_subdivision(p.clone(), cells));
        }
    }
    Ok(out)
}

/// Options for path enumeration.
#[derive(Clone, Debug, Default)]
pub struct PathOptions {
    /// Enumerate curves for the signed count with conjugate pairs: simple
    /// points on odd edges, double points inside even edges or at vertices,
    /// and only curves meeting the nonvanishing conditions.
    pub mixed: bool,
    /// Worker threads; 0 means the rayon default.
    pub jobs: usize,
}

/// How a double point is realized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PairMode {
    /// Inside an even edge.
    Edge,
    /// At a vertex with odd edges.
    Vertex,
}

#[derive(Clone, Debug)]
pub struct PathCurve {
    pub curve: PlaneTropicalCurve,
    pub path: LatticePath,
    pub pair_modes: Vec<PairMode>,
}

fn side_of_step(p: &LatticePolygon, side: Side, a: Pt, b: Pt) -> bool {
    match side.edge_of(p) {
        Some((u, v)) => {
            crate::lattice::orient(u, v, a) == 0
                && crate::lattice::orient(u, v, b) == 0
                && p.contains(a)
                && p.contains(b)
        }
        None => false,
    }
}

/// Fixed-end conditions sit on the left side, ahead of every interior point.
fn check_fixed_positions(conds: &[Condition]) -> Result<()> {
    let prefix = conds.iter().take_while(|c| c.fixed_end().is_some()).count();
    for (i, c) in conds.iter().enumerate() {
        let Some((side, _)) = c.fixed_end() else {
            continue;
        };
        if side != Side::Left || i >= prefix {
            return Err(Error::Unsupported(format!(
                "boundary condition {c} at position {} is not a leading left condition",
                i + 1
            )));
        }
    }
    Ok(())
}

/// Unimodular affine map carrying a side's outward normal to `(-1, 0)`.
#[derive(Clone, Copy, Debug)]
struct SideMap {
    /// Rows of the linear part.
    a: [[i64; 2]; 2],
    shift: Pt,
}

impl SideMap {
    fn new(side: Side, p: &LatticePolygon) -> Self {
        let a = match side {
            Side::Left => [[1, 0], [0, 1]],
            Side::Bottom => [[0, 1], [1, 0]],
            Side::Diag => [[-1, -1], [0, -1]],
        };
        let mut m = SideMap {
            a,
            shift: Pt::default(),
        };
        let img: Vec<Pt> = p.vertices().iter().map(|&v| m.linear(v)).collect();
        let minx = img.iter().map(|v| v.x).min().unwrap();
        let miny = img.iter().map(|v| v.y).min().unwrap();
        m.shift = Pt { x: -minx, y: -miny };
        m
    }

    fn det(&self) -> i64 {
        self.a[0][0] * self.a[1][1] - self.a[0][1] * self.a[1][0]
    }

    fn linear(&self, v: Pt) -> Pt {
        Pt {
            x: self.a[0][0] * v.x + self.a[0][1] * v.y,
            y: self.a[1][0] * v.x + self.a[1][1] * v.y,
        }
    }

    fn linear_inv(&self, v: Pt) -> Pt {
        let d = self.det();
        Pt {
            x: d * (self.a[1][1] * v.x - self.a[0][1] * v.y),
            y: d * (-self.a[1][0] * v.x + self.a[0][0] * v.y),
        }
    }

    fn apply(&self, v: Pt) -> Pt {
        self.linear(v).add(self.shift)
    }

    fn unapply(&self, v: Pt) -> Pt {
        self.linear_inv(v.sub(self.shift))
    }

    /// Curve direction in the original plane for a direction in the image.
    fn direction_back(&self, u: Pt) -> Pt {
        self.linear_inv(u.rot_ccw()).rot_cw().scale(self.det())
    }

    fn curve_back(&self, p: &LatticePolygon, c: &mut PlaneTropicalCurve) {
        for e in &mut c.edges {
            e.direction = self.direction_back(e.direction);
        }
        for e in &mut c.ends {
            e.direction = self.direction_back(e.direction);
        }
        if let Some(sub) = c.subdivision.take() {
            let back = |cell: &Cell| {
                let v: Vec<Pt> = cell.vertices().iter().map(|&x| self.unapply(x)).collect();
                match cell {
                    Cell::Triangle(_) => Cell::triangle(v[0], v[1], v[2]),
                    Cell::Parallelogram(_) => Cell::parallelogram(v[0], v[1], v[2]),
                }
            };
            let mut cells: Vec<Cell> = sub
                .vertex_cell
                .iter()
                .map(|&i| back(&sub.cells[i]))
                .collect();
            for (i, cell) in sub.cells.iter().enumerate() {
                if !sub.vertex_cell.contains(&i) {
                    cells.push(back(cell));
                }
            }
            c.subdivision = Some(canonical_subdivision(p.clone(), cells));
        }
    }
}

/// Per-step admissibility for condition `c`.
fn step_ok(p: &LatticePolygon, c: &Condition, a: Pt, b: Pt, mixed: bool) -> bool {
    let len = lattice_length(b.sub(a)) as u64;
    match *c {
        Condition::InteriorSimple => !mixed || len % 2 == 1,
        Condition::InteriorPair => len.is_multiple_of(2),
        Condition::BoundaryTangency { side, order } => len == order && side_of_step(p, side, a, b),
        Condition::BoundaryPair { side } => len == 2 && side_of_step(p, side, a, b),
    }
}

/// Enumerates curves through the configuration via lattice paths.
///
/// Boundary conditions must all lie on one side. They are realized first in
/// the order, ahead of the interior points; a side other than the left one is
/// first carried to the left by a unimodular map of the polygon.
pub fn enumerate_path_curves(
    p: &LatticePolygon,
    g: i64,
    config: &MikhalkinConfig,
    opts: &PathOptions,
) -> Result<Vec<PathCurve>> {
    let conds = &config.conditions.0;
    config.conditions.check_balance(p, g)?;
    let mut sides: Vec<Side> = conds
        .iter()
        .filter_map(|c| c.fixed_end().map(|(s, _)| s))
        .collect();
    sides.dedup();
    if sides.len() > 1 {
        return Err(Error::Unsupported(
            "boundary conditions on more than one side".into(),
        ));
    }
    let perm: Vec<usize> = (0..conds.len())
        .filter(|&i| conds[i].fixed_end().is_some())
        .chain((0..conds.len()).filter(|&i| conds[i].fixed_end().is_none()))
        .collect();
    let Some(&side) = sides.first().filter(|&&s| s != Side::Left) else {
        if perm.iter().enumerate().all(|(i, &j)| i == j) {
            return enumerate_normalized(p, g, config, opts);
        }
        let cfg = MikhalkinConfig {
            conditions: PointConditionType(perm.iter().map(|&i| conds[i]).collect()),
            ..config.clone()
        };
        let mut found = enumerate_normalized(p, g, &cfg, opts)?;
        for c in &mut found {
            for m in &mut c.curve.markings {
                m.condition = perm[m.condition];
            }
        }
        return Ok(found);
    };
    let map = SideMap::new(side, p);
    let image = LatticePolygon::hull(
        &p.vertices()
            .iter()
            .map(|&v| map.apply(v))
            .collect::<Vec<_>>(),
    )?;
    let to_left = |c: Condition| match c {
        Condition::BoundaryTangency { order, .. } => Condition::BoundaryTangency {
            side: Side::Left,
            order,
        },
        Condition::BoundaryPair { .. } => Condition::BoundaryPair { side: Side::Left },
        c => c,
    };
    let cfg = MikhalkinConfig {
        conditions: PointConditionType(perm.iter().map(|&i| to_left(conds[i])).collect()),
        ..config.clone()
    };
    let mut found = enumerate_normalized(&image, g, &cfg, opts)?;
    for c in &mut found {
        map.curve_back(p, &mut c.curve);
        for m in &mut c.curve.markings {
            m.condition = perm[m.condition];
            m.kind = conds[m.condition];
        }
        c.path = c.path.iter().map(|&v| map.unapply(v)).collect();
    }
    Ok(found)
}

fn enumerate_normalized(
    p: &LatticePolygon,
    g: i64,
    config: &MikhalkinConfig,
    opts: &PathOptions,
) -> Result<Vec<PathCurve>> {
    let conds = &config.conditions.0;
    config.conditions.check_balance(p, g)?;
    check_fixed_positions(conds)?;
    let has_pair = conds.contains(&Condition::InteriorPair);
    if has_pair && !opts.mixed {
        return Err(Error::Unsupported(
            "interior conjugate pairs are only supported by the mixed scheme".into(),
        ));
    }
    let geo = PathGeometry::new(p)?;
    let pair_idx: Vec<usize> = (0..conds.len())
        .filter(|&i| conds[i] == Condition::InteriorPair)
        .collect();

    let mut jobs: Vec<(Vec<PairMode>, LatticePath)> = Vec::new();
    for mask in 0..(1u32 << pair_idx.len()) {
        let modes: Vec<PairMode> = (0..pair_idx.len())
            .map(|i| {
                if mask >> i & 1 == 1 {
                    PairMode::Vertex
                } else {
                    PairMode::Edge
                }
            })
            .collect();
        let steps = conds.len() + modes.iter().filter(|&&m| m == PairMode::Vertex).count();
        for path in PathIter::new(geo.points.clone(), steps) {
            jobs.push((modes.clone(), path));
        }
    }

    let run = || -> Vec<PathCurve> {
        jobs.par_iter()
            .map_init(
                || Divider::new(&geo),
                |div, (modes, path)| {
                    curves_for_path(div, p, g, conds, &pair_idx, modes, path, opts.mixed)
                },
            )
            .flatten()
            .collect()
    };
    let mut found = if opts.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::Invalid(e.to_string()))?
            .install(run)
    } else {
        run()
    };

    let mut unique: BTreeMap<String, PathCurve> = BTreeMap::new();
    for c in found.drain(..) {
        let key = format!(
            "{:?}|{:?}",
            c.curve.subdivision.as_ref().map(|s| &s.cells),
            c.curve.markings
        );
        unique.entry(key).or_insert(c);
    }
    Ok(unique.into_values().collect())
}

#[allow(clippy::too_many_arguments)]
fn curves_for_path(
    div: &mut Divider<'_>,
    p: &LatticePolygon,
    g: i64,
    conds: &[Condition],
    pair_idx: &[usize],
    modes: &[PairMode],
    path: &LatticePath,
    mixed: bool,
) -> Vec<PathCurve> {
    // Map conditions to steps; vertex-mode pairs take two steps around an apex.
    let mut anchors = Vec::with_capacity(conds.len());
    let mut apexes: Vec<usize> = Vec::new();
    let mut step = 0;
    for (i, c) in conds.iter().enumerate() {
        let mode = pair_idx.iter().position(|&k| k == i).map(|m| modes[m]);
        if mode == Some(PairMode::Vertex) {
            let (a, apex, b) = (path[step], path[step + 1], path[step + 2]);
            let turn = cross(apex.sub(a), b.sub(apex));
            if turn == 0 {
                return vec![];
            }
            apexes.push(step + 1);
            anchors.push((i, *c, Anchor::Triangle(a, apex, b)));
            step += 2;
        } else {
            let (a, b) = (path[step], path[step + 1]);
            if !step_ok(p, c, a, b, mixed) {
                return vec![];
            }
            anchors.push((i, *c, Anchor::Segment(a, b)));
            step += 1;
        }
    }

    // Apexes bulging upwards (right turns) stay on the upper path; the rest on the lower one.
    let mut upper = Vec::with_capacity(path.len());
    let mut lower = Vec::with_capacity(path.len());
    let mut triangles = Vec::new();
    for (j, &q) in path.iter().enumerate() {
        if apexes.contains(&j) {
            let turn = cross(q.sub(path[j - 1]), path[j + 1].sub(q));
            if turn < 0 {
                upper.push(q);
            } else {
                lower.push(q);
            }
            triangles.push(Cell::triangle(path[j - 1], q, path[j + 1]));
        } else {
            upper.push(q);
            lower.push(q);
        }
    }
    let ups = div.divide(&upper, Half::Upper);
    if ups.is_empty() {
        return vec![];
    }
    let lows = div.divide(&lower, Half::Lower);
    let mut out = Vec::new();
    for u in ups.iter() {
        for l in lows.iter() {
            let mut cells = Vec::with_capacity(u.len() + l.len() + triangles.len());
            cells.extend_from_slice(u);
            cells.extend_from_slice(l);
            cells.extend_from_slice(&triangles);
            cells.sort();
            let Some(curve) = assemble(p, cells, &anchors) else {
                continue;
            };
            if mixed {
                let split = parity_split(&curve);
                if !check_vanishing_conditions(&curve, &split, g).ok {
                    continue;
                }
            } else if curve.genus() != g {
                continue;
            }
            out.push(PathCurve {
                curve,
                path: path.clone(),
                pair_modes: modes.to_vec(),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::pt;

    fn brute_paths(p: &LatticePolygon, steps: usize) -> Vec<LatticePath> {
        // Independent DFS over lattice points.
        let geo = PathGeometry::new(p).unwrap();
        let start = geo.points[0];
        let end = *geo.points.last().unwrap();
        let mut out = Vec::new();
        fn go(cur: &mut Vec<Pt>, pts: &[Pt], end: Pt, steps: usize, out: &mut Vec<LatticePath>) {
            let last = *cur.last().unwrap();
            if cur.len() == steps + 1 {
                if last == end {
                    out.push(cur.clone());
                }
                return;
            }
            for &q in pts {
                if lambda_key(q) > lambda_key(last) {
                    cur.push(q);
                    go(cur, pts, end, steps, out);
                    cur.pop();
                }
            }
        }
        go(&mut vec![start], &geo.points, end, steps, &mut out);
        out
    }

    #[test]
    fn paths_match_dfs() {
        for d in 1..=3 {
            let p = LatticePolygon::triangle(d).unwrap();
            let n = p.lattice_points().len();
            for steps in 1..n {
                let mut a: Vec<_> = enumerate_paths(&p, steps).unwrap().collect();
                let mut b = brute_paths(&p, steps);
                a.sort();
                b.sort();
                assert_eq!(a, b, "d={d} steps={steps}");
            }
        }
    }

    #[test]
    fn epsilon_order_is_lexicographic() {
        for d in 1..=5 {
            let p = LatticePolygon::triangle(d).unwrap();
            let cfg = MikhalkinConfig::new(&p, PointConditionType::interior(0));
            let pts = p.lattice_points();
            let mut by_key = pts.clone();
            by_key.sort_by_key(|&q| lambda_key(q));
            let mut by_lambda = pts.clone();
            by_lambda.sort_by_key(|&q| lambda(q, &cfg.epsilon));
            assert_eq!(by_key, by_lambda);
            let mut vals: Vec<_> = pts.iter().map(|&q| lambda(q, &cfg.epsilon)).collect();
            vals.sort();
            vals.dedup();
            assert_eq!(vals.len(), pts.len());
        }
    }

    #[test]
    fn chains_of_triangle() {
        let geo = PathGeometry::new(&LatticePolygon::triangle(3).unwrap()).unwrap();
        assert_eq!(geo.upper, vec![pt(0, 3), pt(3, 0)]);
        assert_eq!(geo.lower, vec![pt(0, 3), pt(0, 0), pt(3, 0)]);
    }

    #[test]
    fn tropical_line() {
        let p = LatticePolygon::triangle(1).unwrap();
        let cfg = MikhalkinConfig::new(&p, PointConditionType::interior(2));
        let cs = enumerate_path_curves(&p, 0, &cfg, &PathOptions::default()).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].curve.vertex_count(), 1);
    }

    #[test]
    fn fixed_positions() {
        use Condition::*;
        let bl = BoundaryTangency {
            side: Side::Left,
            order: 1,
        };
        let bb = BoundaryTangency {
            side: Side::Bottom,
            order: 1,
        };
        // Checked after normalization: a leading run of left conditions.
        assert!(check_fixed_positions(&[bl, bl, InteriorSimple]).is_ok());
        assert!(check_fixed_positions(&[bl, InteriorSimple, bb]).is_err());
        assert!(check_fixed_positions(&[bb, InteriorSimple]).is_err());
        assert!(check_fixed_positions(&[InteriorSimple, bl]).is_err());
    }
}
