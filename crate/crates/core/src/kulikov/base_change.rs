//! Order-`k` base change followed by the standard resolution.
//!
//! Type III: each triangle of the dual complex is cut into `k²` triangles.
//! The original components survive unchanged; every new vertex is a toric
//! component whose boundary cycle is read off the subdivision. A vertex in
//! the interior of a triangle has six `(−1)`-curves. A vertex on an edge
//! `V_a — V_b` with `D_ab² = n` on `V_a` has the curve towards `V_b` of
//! square `n`, the curve towards `V_a` of square `−2 − n`, and four
//! `(−1)`-curves pointing into the two adjacent triangles.
//!
//! Type II: each double curve becomes a chain of `k − 1` elliptic ruled
//! components.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::lattice::{IntegerLattice, LatticeVector};
use crate::toric::{pair_from_fan, OrderedToricModel, ToricPairFan};

use super::config::{Edge, KulikovConfig, KulikovType, Orientation, ResolvedTriangle};
use super::pair::{BoundaryKind, PairData};
use super::validate::validate;

pub fn base_change_resolution(cfg: &KulikovConfig, k: usize) -> Result<KulikovConfig> {
    if k == 0 {
        return Err(Error::InvalidArgument("base change order must be at least 1".into()));
    }
    let rep = validate(cfg)?;
    if let Some(f) = rep.failures.first() {
        return Err(Error::Validation(format!("base change of an invalid configuration: {}: {}", f.location, f.message)));
    }
    if k == 1 {
        return Ok(cfg.clone());
    }
    match cfg.kind {
        KulikovType::I => Err(Error::InvalidArgument("base change of a Type I stand-in".into())),
        KulikovType::II => Ok(type_ii(cfg, k)),
        KulikovType::III => {
            let tris = cfg.resolve_triangles().map_err(Error::Validation)?;
            type_iii(cfg, &tris, k)
        }
    }
}

/// `P_E(O ⊕ L)` with `deg L = e`: basis `(σ₀, φ)`, boundary `σ₀` (square
/// `−e`) and `σ∞ = σ₀ + eφ` (square `e`).
pub fn elliptic_ruled(e: i64) -> PairData {
    let h2 = IntegerLattice::from_i64(&[&[-e, 1], &[1, 0]]).expect("symmetric");
    let boundary = vec![LatticeVector::from_i64(&[1, 0]), LatticeVector::from_i64(&[1, e])];
    PairData::new(h2, boundary, BoundaryKind::TwoElliptic, 0).expect("small integers")
}

fn type_ii(cfg: &KulikovConfig, k: usize) -> KulikovConfig {
    let mut out = cfg.clone();
    out.edges.clear();
    for (idx, e) in cfg.edges.iter().enumerate() {
        // The curve glued to D_ij has square −D_ij², so every ruled
        // component in the chain has e = D_ij².
        let n = cfg.components[e.i].self_ints[e.bi];
        let first = out.components.len();
        for t in 1..k {
            out.components.push(elliptic_ruled(n).with_label(format!("W{idx}.{t}")));
        }
        let last = out.components.len() - 1;
        out.edges.push(Edge::new(e.i, first, e.bi, 0, e.genus));
        for c in first..last {
            out.edges.push(Edge::new(c, c + 1, 1, 0, e.genus));
        }
        out.edges.push(Edge::new(last, e.j, 1, e.bj, e.genus));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Point {
    Orig(usize),
    /// Subdivision point `t` (from the `i` end) on an edge.
    OnEdge(usize, usize),
    Inner(usize, [usize; 3]),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Seg {
    /// Piece `t` of an edge, between its subdivision points `t` and `t + 1`.
    Along(usize, usize),
    Inside(usize, [usize; 3], [usize; 3]),
}

struct Subdivision<'a> {
    cfg: &'a KulikovConfig,
    k: usize,
}

impl Subdivision<'_> {
    fn point(&self, t: usize, tri: &ResolvedTriangle, c: [usize; 3]) -> Point {
        let k = self.k;
        for s in 0..3 {
            if c[s] == k {
                return Point::Orig(tri.vertices[s]);
            }
        }
        for s in 0..3 {
            if c[(s + 2) % 3] == 0 {
                let m = c[(s + 1) % 3];
                let (e, end) = tri.sides[s];
                return Point::OnEdge(e, if end == 0 { m } else { k - m });
            }
        }
        Point::Inner(t, c)
    }

    fn seg(&self, t: usize, tri: &ResolvedTriangle, c: [usize; 3], d: [usize; 3]) -> Seg {
        for s in 0..3 {
            let z = (s + 2) % 3;
            if c[z] == 0 && d[z] == 0 {
                let m = c[(s + 1) % 3].min(d[(s + 1) % 3]);
                let (e, end) = tri.sides[s];
                return Seg::Along(e, if end == 0 { m } else { self.k - m - 1 });
            }
        }
        Seg::Inside(t, c.min(d), c.max(d))
    }

    fn along_ends(&self, e: usize, t: usize) -> (Point, Point) {
        let edge = &self.cfg.edges[e];
        let p = if t == 0 { Point::Orig(edge.i) } else { Point::OnEdge(e, t) };
        let q = if t + 1 == self.k { Point::Orig(edge.j) } else { Point::OnEdge(e, t + 1) };
        (p, q)
    }
}

fn small_triangles(k: usize) -> Vec<[[usize; 3]; 3]> {
    let mut out = Vec::with_capacity(k * k);
    for a in 0..k {
        for b in 0..k - a {
            let c = k - 1 - a - b;
            out.push([[a + 1, b, c], [a, b + 1, c], [a, b, c + 1]]);
        }
    }
    for a in 0..k.saturating_sub(1) {
        for b in 0..k - 1 - a {
            let c = k - 2 - a - b;
            out.push([[a + 1, b + 1, c], [a, b + 1, c + 1], [a + 1, b, c + 1]]);
        }
    }
    out
}

fn type_iii(cfg: &KulikovConfig, tris: &[ResolvedTriangle], k: usize) -> Result<KulikovConfig> {
    let sub = Subdivision { cfg, k };
    let mut index: HashMap<Point, usize> = HashMap::new();
    let mut points: Vec<Point> = Vec::new();
    for v in 0..cfg.components.len() {
        index.insert(Point::Orig(v), v);
        points.push(Point::Orig(v));
    }
    for e in 0..cfg.edges.len() {
        for t in 1..k {
            index.insert(Point::OnEdge(e, t), points.len());
            points.push(Point::OnEdge(e, t));
        }
    }

    let mut ends: BTreeMap<Seg, (Point, Point)> = BTreeMap::new();
    let mut incident: HashMap<Point, Vec<Seg>> = HashMap::new();
    let mut succ: HashMap<(Point, Seg), Seg> = HashMap::new();
    let mut faces: Vec<[Point; 3]> = Vec::with_capacity(tris.len() * k * k);

    for (t, tri) in tris.iter().enumerate() {
        for small in small_triangles(k) {
            let p: Vec<Point> = small.iter().map(|&c| sub.point(t, tri, c)).collect();
            for &q in &p {
                if let Point::Inner(..) = q {
                    index.entry(q).or_insert_with(|| {
                        points.push(q);
                        points.len() - 1
                    });
                }
            }
            let g: Vec<Seg> = (0..3).map(|s| sub.seg(t, tri, small[s], small[(s + 1) % 3])).collect();
            for s in 0..3 {
                let seg = g[s];
                if let std::collections::btree_map::Entry::Vacant(slot) = ends.entry(seg) {
                    let e = match seg {
                        Seg::Along(e, i) => sub.along_ends(e, i),
                        Seg::Inside(..) => (p[s], p[(s + 1) % 3]),
                    };
                    slot.insert(e);
                    incident.entry(e.0).or_default().push(seg);
                    incident.entry(e.1).or_default().push(seg);
                }
                let (out, inn) = (g[s], g[(s + 2) % 3]);
                let key = match cfg.orientation {
                    Orientation::Ccw => ((p[s], out), inn),
                    Orientation::Cw => ((p[s], inn), out),
                };
                succ.insert(key.0, key.1);
            }
            faces.push([p[0], p[1], p[2]]);
        }
    }

    // Boundary index of each segment at each of its ends.
    let mut bidx: HashMap<(Point, Seg), usize> = HashMap::new();
    let mut components = cfg.components.clone();
    for &p in &points[cfg.components.len()..] {
        let segs = incident.get(&p).cloned().unwrap_or_default();
        let start = match p {
            Point::OnEdge(e, t) => Seg::Along(e, t),
            _ => *segs.iter().min().ok_or_else(|| Error::Validation(format!("isolated subdivision point {p:?}")))?,
        };
        let mut cycle = vec![start];
        let mut cur = start;
        loop {
            cur = *succ
                .get(&(p, cur))
                .ok_or_else(|| Error::Validation(format!("open boundary cycle at subdivision point {p:?}")))?;
            if cur == start {
                break;
            }
            if cycle.len() > segs.len() {
                return Err(Error::Validation(format!("boundary cycle at {p:?} does not close")));
            }
            cycle.push(cur);
        }
        if cycle.len() != segs.len() {
            return Err(Error::Validation(format!("subdivision point {p:?} has a disconnected link")));
        }
        let self_ints: Vec<i64> = cycle
            .iter()
            .map(|seg| match (p, *seg) {
                (Point::OnEdge(e, t), Seg::Along(e2, t2)) if e == e2 => {
                    let edge = &cfg.edges[e];
                    let n = cfg.components[edge.i].self_ints[edge.bi];
                    if t2 == t {
                        n
                    } else {
                        -2 - n
                    }
                }
                _ => -1,
            })
            .collect();
        for (b, seg) in cycle.iter().enumerate() {
            bidx.insert((p, *seg), b);
        }
        let fan = ToricPairFan::from_self_intersections(&self_ints)?;
        let label = match p {
            Point::OnEdge(e, t) => format!("e{e}.{t}"),
            Point::Inner(t, c) => format!("t{t}.{}.{}.{}", c[0], c[1], c[2]),
            Point::Orig(v) => format!("v{v}"),
        };
        let fan = fan.with_label(label.clone());
        let mut pair = pair_from_fan(&fan)?.with_label(label);
        pair.toric_model = Some(OrderedToricModel::new(fan, Vec::new())?);
        components.push(pair);
    }

    let mut edges = Vec::with_capacity(ends.len());
    for (seg, (p, q)) in &ends {
        let end_index = |pt: Point, at_source: bool| -> usize {
            match (pt, *seg) {
                (Point::Orig(_), Seg::Along(e, _)) => {
                    let edge = &cfg.edges[e];
                    if at_source {
                        edge.bi
                    } else {
                        edge.bj
                    }
                }
                _ => bidx[&(pt, *seg)],
            }
        };
        let genus = 0;
        edges.push(Edge::new(index[p], index[q], end_index(*p, true), end_index(*q, false), genus));
    }
    let triangles = faces.iter().map(|f| [index[&f[0]], index[&f[1]], index[&f[2]]]).collect();
    Ok(KulikovConfig { kind: KulikovType::III, components, edges, triangles, orientation: cfg.orientation })
}
